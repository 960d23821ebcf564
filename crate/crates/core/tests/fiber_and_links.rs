use num_bigint::BigInt;
use num_traits::{One, Signed};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use toruscalc::linalg::transvection::product;
use toruscalc::mapping_torus::{
    circle_surgery_group, cs_condition, cs_search, realize_by_surgeries, replay, surgery_multiply,
};
use toruscalc::three_manifold::{build_Y, cancel_pair, handle_slide, link_h1, FramedLink};
use toruscalc::{AbelianInvariants, IntMatrix, MappingTorus, SmallMatrix, Transvection};

#[test]
fn circle_surgery_trivial_iff_cs() {
    let mut checked = 0;
    for code in 0..5usize.pow(9) {
        let entries: Vec<i64> = (0..9).map(|k| (code / 5usize.pow(k)) as i64 % 5 - 2).collect();
        let small = SmallMatrix::new(3, 3, entries).unwrap();
        if small.determinant().unwrap() != 1 {
            continue;
        }
        checked += 1;
        let shifted = &small - &SmallMatrix::identity(3);
        let trivial = AbelianInvariants::cokernel(&shifted).is_trivial();
        assert_eq!(trivial, shifted.determinant().unwrap().abs() == 1, "{small}");
    }
    assert!(checked > 0);
}

#[test]
fn search_results_are_cs() {
    let found = cs_search(2).unwrap();
    assert!(!found.is_empty());
    for w in found.windows(2) {
        assert!(w[0].entries() < w[1].entries());
    }
    for phi in &found {
        assert!(cs_condition(phi).unwrap().abs().is_one());
        assert!(circle_surgery_group(&MappingTorus::new(phi.clone(), None).unwrap()).is_trivial());
    }
}

fn random_product(rng: &mut ChaCha8Rng) -> IntMatrix {
    let len = rng.gen_range(0..=10);
    let factors: Vec<Transvection> = (0..len)
        .map(|_| {
            let i = rng.gen_range(1..=3);
            let j = (i + rng.gen_range(0..2)) % 3 + 1;
            Transvection::new(i, j, if rng.gen() { 1 } else { -1 }).unwrap()
        })
        .collect();
    product(&factors, 3)
}

#[test]
fn replayed_surgeries_reproduce_monodromy() {
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    for _ in 0..200 {
        let phi = random_product(&mut rng);
        let factors = realize_by_surgeries(&phi).unwrap();
        assert!(factors.iter().all(|t| t.k.abs() == 1));
        let mt = replay(&factors);
        assert_eq!(mt.monodromy(), &phi);
        assert!(mt.monodromy().determinant().unwrap().is_one());
    }
}

#[test]
fn surgery_preserves_determinant() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut mt = MappingTorus::identity();
    for _ in 0..100 {
        let i = rng.gen_range(1..=3);
        let j = i % 3 + 1;
        mt = surgery_multiply(&mt, Transvection::new(i, j, rng.gen_range(-3..=3)).unwrap());
        assert_eq!(mt.monodromy().determinant().unwrap(), BigInt::one());
    }
}

fn symmetric(entries: &[i64]) -> IntMatrix {
    let mut m = IntMatrix::zeros(5, 5);
    let mut k = 0;
    for i in 0..5 {
        for j in i..5 {
            m[(i, j)] = BigInt::from(entries[k]);
            m[(j, i)] = BigInt::from(entries[k]);
            k += 1;
        }
    }
    m
}

proptest! {
    #[test]
    fn link_moves_preserve_homology(
        entries in prop::collection::vec(-3i64..=3, 15),
        moves in prop::collection::vec((0usize..5, 0usize..5, prop::bool::ANY), 1..20),
    ) {
        let start = FramedLink::unlabelled(symmetric(&entries)).unwrap();
        let h1 = link_h1(&start);
        let mut l = start;
        for (i, j, positive) in moves {
            let n = l.len();
            if n < 2 {
                break;
            }
            let (i, j) = (i % n, j % n);
            if i == j {
                prop_assert!(handle_slide(&l, i, j, 1).is_err());
                continue;
            }
            if let Ok(smaller) = cancel_pair(&l, i, j) {
                l = smaller;
            } else {
                l = handle_slide(&l, i, j, if positive { 1 } else { -1 }).unwrap();
            }
            prop_assert!(l.lk().is_symmetric());
            prop_assert_eq!(link_h1(&l), h1.clone());
        }
    }
}

#[test]
fn meridian_only_cases_give_s2_times_s1() {
    let unknot = FramedLink::unlabelled(IntMatrix::zeros(1, 1)).unwrap();
    for m in -5..=5 {
        assert_eq!(link_h1(&build_Y(m, 0)), link_h1(&unknot));
    }
}
