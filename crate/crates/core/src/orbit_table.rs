//! Hardcoded transcription of the nine nonunimodular free cyclic
//! submodules of the left module, one column per generator, one row per
//! scalar α, and the cell-by-cell check against computed orbits.
//!
//! Two cells of the source table lack their opening parenthesis (`11,11)` in the
//! R(8,11) column and `11,0)` in the R(8,3) column, both at α = 11); they
//! are transcribed as (11,11) and (11,0).

use serde::Serialize;

use crate::free_module::{cyclic_submodule, ModVector, Side};
use crate::ring::FiniteRing;

const fn v(a: u8, b: u8) -> ModVector {
    ModVector::new(a, b)
}

pub const COLUMNS: usize = 9;
pub const ROWS: usize = 16;

pub const GOLDEN_HEADERS: [ModVector; COLUMNS] = [
    v(3, 8),
    v(5, 8),
    v(6, 8),
    v(8, 11),
    v(8, 13),
    v(8, 14),
    v(8, 6),
    v(8, 5),
    v(8, 3),
];

#[rustfmt::skip]
pub const GOLDEN_CELLS: [[ModVector; COLUMNS]; ROWS] = [
    [v(0,0),  v(0,0),  v(0,0),  v(0,0),   v(0,0),   v(0,0),   v(0,0),  v(0,0),  v(0,0)],
    [v(3,8),  v(5,8),  v(6,8),  v(8,11),  v(8,13),  v(8,14),  v(8,6),  v(8,5),  v(8,3)],
    [v(3,11), v(5,11), v(6,11), v(11,8),  v(11,14), v(11,13), v(11,6), v(11,5), v(11,3)],
    [v(0,3),  v(0,3),  v(0,3),  v(3,3),   v(3,3),   v(3,3),   v(3,0),  v(3,0),  v(3,0)],
    [v(3,13), v(5,13), v(6,13), v(13,14), v(13,8),  v(13,11), v(13,6), v(13,5), v(13,3)],
    [v(0,5),  v(0,5),  v(0,5),  v(5,5),   v(5,5),   v(5,5),   v(5,0),  v(5,0),  v(5,0)],
    [v(0,6),  v(0,6),  v(0,6),  v(6,6),   v(6,6),   v(6,6),   v(6,0),  v(6,0),  v(6,0)],
    [v(3,14), v(5,14), v(6,14), v(14,13), v(14,11), v(14,8),  v(14,6), v(14,5), v(14,3)],
    [v(0,8),  v(0,8),  v(0,8),  v(8,8),   v(8,8),   v(8,8),   v(8,0),  v(8,0),  v(8,0)],
    [v(3,0),  v(5,0),  v(6,0),  v(0,3),   v(0,5),   v(0,6),   v(0,6),  v(0,5),  v(0,3)],
    [v(3,3),  v(5,3),  v(6,3),  v(3,0),   v(3,6),   v(3,5),   v(3,6),  v(3,5),  v(3,3)],
    [v(0,11), v(0,11), v(0,11), v(11,11), v(11,11), v(11,11), v(11,0), v(11,0), v(11,0)],
    [v(3,5),  v(5,5),  v(6,5),  v(5,6),   v(5,0),   v(5,3),   v(5,6),  v(5,5),  v(5,3)],
    [v(0,13), v(0,13), v(0,13), v(13,13), v(13,13), v(13,13), v(13,0), v(13,0), v(13,0)],
    [v(0,14), v(0,14), v(0,14), v(14,14), v(14,14), v(14,14), v(14,0), v(14,0), v(14,0)],
    [v(3,6),  v(5,6),  v(6,6),  v(6,5),   v(6,3),   v(6,0),   v(6,6),  v(6,5),  v(6,3)],
];

/// An α-indexed orbit grid: column headers are generators, `cells[α][j]` is
/// `α·headers[j]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubmoduleTable {
    pub headers: Vec<ModVector>,
    pub cells: Vec<Vec<ModVector>>,
}

impl SubmoduleTable {
    pub fn golden() -> Self {
        Self {
            headers: GOLDEN_HEADERS.to_vec(),
            cells: GOLDEN_CELLS.iter().map(|row| row.to_vec()).collect(),
        }
    }

    /// Computed orbits of `headers`, α-indexed.
    pub fn computed(ring: &FiniteRing, headers: &[ModVector], side: Side) -> Self {
        let columns: Vec<Vec<ModVector>> = headers
            .iter()
            .map(|&g| cyclic_submodule(ring, g, side).vectors)
            .collect();
        let cells = (0..ring.order())
            .map(|alpha| columns.iter().map(|col| col[alpha]).collect())
            .collect();
        Self {
            headers: headers.to_vec(),
            cells,
        }
    }

    pub fn column(&self, j: usize) -> Vec<ModVector> {
        self.cells.iter().map(|row| row[j]).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CellMismatch {
    pub column: ModVector,
    pub alpha: u8,
    pub expected: ModVector,
    pub computed: ModVector,
}

#[derive(Clone, Debug, Serialize)]
pub struct OrbitTableReport {
    pub cells_checked: usize,
    pub mismatches: Vec<CellMismatch>,
}

impl OrbitTableReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty() && self.cells_checked == COLUMNS * ROWS
    }
}

/// Compares every cell of `golden` with the left-module orbit of its
/// column header.
pub fn orbit_table_check_against(ring: &FiniteRing, golden: &SubmoduleTable) -> OrbitTableReport {
    let computed = SubmoduleTable::computed(ring, &golden.headers, Side::Left);
    let mut mismatches = Vec::new();
    let mut cells_checked = 0;
    for (alpha, (want_row, got_row)) in golden.cells.iter().zip(&computed.cells).enumerate() {
        for (j, (&expected, &got)) in want_row.iter().zip(got_row).enumerate() {
            cells_checked += 1;
            if expected != got {
                mismatches.push(CellMismatch {
                    column: golden.headers[j],
                    alpha: alpha as u8,
                    expected,
                    computed: got,
                });
            }
        }
    }
    OrbitTableReport {
        cells_checked,
        mismatches,
    }
}

pub fn orbit_table_golden_check(ring: &FiniteRing) -> OrbitTableReport {
    orbit_table_check_against(ring, &SubmoduleTable::golden())
}

/// The column index of each header in the golden table, if any submodule
/// in `generators` matches.
pub fn golden_column_of(generators: &std::collections::BTreeSet<ModVector>) -> Option<usize> {
    GOLDEN_HEADERS.iter().position(|h| generators.contains(h))
}
