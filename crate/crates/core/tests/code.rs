mod common;

use common::*;
use lcdcodes::format::{parse_gen1, write_gen1};
use lcdcodes::{CoordinateSet, Engine, LinearCode, Parity};
use proptest::prelude::*;

fn coords(n: usize, picks: &[usize]) -> CoordinateSet {
    CoordinateSet::new(n, picks.iter().map(|p| p % n)).unwrap()
}

proptest! {
    #[test]
    fn hull_dimension_matches_intersection(code in arb_code(1..=12, 8)) {
        prop_assert_eq!(code.hull_dimension(), hull_dim_by_intersection(&code));
        prop_assert_eq!(code.hull().k(), code.hull_dimension());
    }

    #[test]
    fn dual_is_the_orthogonal_complement(code in arb_code(1..=12, 8)) {
        let dual = code.dual();
        prop_assert_eq!(dual.k(), code.n() - code.k());
        if dual.k() > 0 {
            prop_assert_eq!(words_of(&dual), dual_words(&code));
        }
    }

    #[test]
    fn engines_agree_with_brute_force(code in arb_code(1..=18, 10)) {
        let brute = brute_min_distance(&code);
        prop_assert_eq!(code.min_distance_with(Engine::Full).unwrap(), brute);
        match code.min_distance_with(Engine::LowWeight) {
            Ok(d) => prop_assert_eq!(d, brute),
            Err(lcdcodes::Error::DistanceBudget { at_least }) => prop_assert!(brute >= at_least),
            Err(e) => prop_assert!(false, "unexpected error {e}"),
        }
    }

    #[test]
    fn shorten_is_dual_of_puncture_of_dual(code in arb_code(4..=12, 8), picks in prop::collection::vec(0usize..64, 1..=3)) {
        let t = coords(code.n(), &picks);
        prop_assume!(code.k() < code.n());
        let lhs = code.shorten(&t);
        let rhs = code.dual().puncture(&t).map(|p| p.dual());
        match (lhs, rhs) {
            (Ok(a), Ok(b)) => {
                if a.k() == 0 || b.k() == 0 {
                    prop_assert_eq!(a.k(), b.k());
                } else {
                    prop_assert_eq!(words_of(&a), words_of(&b));
                }
            }
            (Err(_), _) | (_, Err(_)) => {}
        }
    }

    #[test]
    fn dual_parity_is_parity_of_dual(code in arb_code(2..=12, 8)) {
        prop_assume!(code.k() < code.n());
        let pc = code.parity_class();
        prop_assert_eq!(pc.dual_parity, code.dual().parity_class().self_parity);
        let odd = codewords(&code).into_iter().any(parity);
        prop_assert_eq!(pc.self_parity == Parity::OddLike, odd);
    }

    #[test]
    fn puncturing_costs_at_most_one(code in arb_code(3..=14, 8), i in 0usize..64) {
        let t = coords(code.n(), &[i]);
        if let Ok(p) = code.puncture(&t) {
            if p.k() == code.k() {
                prop_assert!(p.min_distance().unwrap() + 1 >= code.min_distance().unwrap());
            }
        }
    }

    #[test]
    fn gen1_round_trips(code in arb_code(1..=40, 12)) {
        let back = parse_gen1(&write_gen1(&code)).unwrap();
        prop_assert_eq!(back.generator(), code.generator());
    }

    #[test]
    fn equality_is_row_space_equality(code in arb_code(2..=12, 6), seed in any::<u64>()) {
        let mut rng = seeded(seed);
        let rows = code.rows();
        let mixed: Vec<_> = (0..rows.len()).map(|i| {
            let mut r = rows[i].clone();
            for (j, other) in rows.iter().enumerate() {
                if j > i && rand::Rng::gen::<bool>(&mut rng) {
                    r.xor_assign(other);
                }
            }
            r
        }).collect();
        let other = LinearCode::new(lcdcodes::BitMatrix::from_rows(code.n(), &mixed)).unwrap();
        prop_assert_eq!(&other, &code);
    }
}

#[test]
fn engines_agree_on_larger_codes() {
    let mut rng = seeded(11);
    for _ in 0..40 {
        let n = rand::Rng::gen_range(&mut rng, 16..=30);
        let code = random_code(&mut rng, n, 16);
        let full = code.min_distance_with(Engine::Full).unwrap();
        match code.min_distance_with(Engine::LowWeight) {
            Ok(d) => assert_eq!(d, full),
            Err(lcdcodes::Error::DistanceBudget { at_least }) => assert!(full >= at_least),
            Err(e) => panic!("{e}"),
        }
    }
}

#[test]
fn small_examples() {
    let c = LinearCode::from_strs(&["111000", "000111"]).unwrap();
    assert_eq!(c.params().unwrap(), (6, 2, 3));
    assert_eq!(c.parity_class().label(), "LCD_oe");
    let r = LinearCode::from_strs(&["11"]).unwrap();
    assert_eq!(r.hull_dimension(), 1);
    assert_eq!(r.parity_class().label(), "NotLCD");
    assert!(LinearCode::from_strs(&["110", "011", "101"]).is_err());
}
