use proptest::prelude::*;

use doily::export::{parse_submodule_table, submodule_table_csv};
use std::sync::LazyLock;

use doily::free_module::{act, annihilator, census, cyclic_submodule, Census, ModVector, Side};
use doily::incidence::{build_doily, find_isomorphism, verify_isomorphism, IncidenceStructure, PointLabel};
use doily::orbit_table::SubmoduleTable;
use doily::ring::{build_ring16, mat_add, mat_mul, FiniteRing, Gf2Matrix3, Label};
use doily::structure::LabelSet;

static RING: LazyLock<FiniteRing> = LazyLock::new(|| build_ring16().unwrap());
static CENSUS: LazyLock<[Census; 2]> =
    LazyLock::new(|| [census(&RING, Side::Left).unwrap(), census(&RING, Side::Right).unwrap()]);

fn matrix() -> impl Strategy<Value = Gf2Matrix3> {
    (0u16..512).prop_map(Gf2Matrix3::from_bits)
}

fn label() -> impl Strategy<Value = Label> {
    (0u8..16).prop_map(Label)
}

fn vector() -> impl Strategy<Value = ModVector> {
    (0u8..16, 0u8..16).prop_map(|(a, b)| ModVector::new(a, b))
}

fn side() -> impl Strategy<Value = Side> {
    prop_oneof![Just(Side::Left), Just(Side::Right)]
}

proptest! {
    #[test]
    fn full_matrix_algebra_is_associative_and_distributive(x in matrix(), y in matrix(), z in matrix()) {
        prop_assert_eq!(mat_mul(mat_mul(x, y), z), mat_mul(x, mat_mul(y, z)));
        prop_assert_eq!(mat_mul(x, mat_add(y, z)), mat_add(mat_mul(x, y), mat_mul(x, z)));
        prop_assert_eq!(mat_mul(mat_add(x, y), z), mat_add(mat_mul(x, z), mat_mul(y, z)));
    }

    #[test]
    fn scalar_action_composes(v in vector(), alpha in label(), beta in label()) {
        let ring = &*RING;
        prop_assert_eq!(
            act(ring, beta, act(ring, alpha, v, Side::Left), Side::Left),
            act(ring, ring.mul(beta, alpha), v, Side::Left)
        );
        prop_assert_eq!(
            act(ring, beta, act(ring, alpha, v, Side::Right), Side::Right),
            act(ring, ring.mul(alpha, beta), v, Side::Right)
        );
    }

    #[test]
    fn free_iff_trivial_annihilator(v in vector(), side in side()) {
        let ring = &*RING;
        let sub = cyclic_submodule(ring, v, side);
        prop_assert_eq!(sub.is_free, annihilator(ring, v, side) == LabelSet::from_raw(&[0]));
        prop_assert_eq!(sub.vectors[0], ModVector::new(0, 0));
        prop_assert_eq!(sub.vectors[1], v);
    }

    #[test]
    fn census_merges_exactly_equal_orbits(u in vector(), v in vector(), side in side()) {
        let ring = &*RING;
        let c = &CENSUS[side as usize];
        let same_set = cyclic_submodule(ring, u, side).distinct_vectors == cyclic_submodule(ring, v, side).distinct_vectors;
        if let (Some(cu), Some(cv)) = (c.class_generated_by(u), c.class_generated_by(v)) {
            prop_assert_eq!(same_set, cu.canonical_generator() == cv.canonical_generator());
        }
    }

    #[test]
    fn orbit_table_csv_round_trips(headers in prop::collection::vec(vector(), 1..10), side in side()) {
        let ring = &*RING;
        let table = SubmoduleTable::computed(ring, &headers, side);
        let parsed = parse_submodule_table(&submodule_table_csv(&table).unwrap()).unwrap();
        prop_assert_eq!(parsed, table);
    }

    #[test]
    fn shuffled_doily_is_recognised(perm in Just((0..15usize).collect::<Vec<_>>()).prop_shuffle()) {
        let d = build_doily();
        let lines = d.lines().iter().map(|l| l.iter().map(|&p| perm[p]).collect());
        let shuffled = IncidenceStructure::new((0..15).map(PointLabel::Unlabeled).collect(), lines).unwrap();
        let map = find_isomorphism(&shuffled, &d).expect("relabelled doily is isomorphic");
        prop_assert!(verify_isomorphism(&shuffled, &d, &map));
    }
}
