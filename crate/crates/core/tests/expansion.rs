mod common;

use common::*;
use lcdcodes::expansion::{expand_code, expand_vector, expansion_bound, find_self_dual_basis, Element, ExtField, ExtFieldCode};
use proptest::prelude::*;
use rand::Rng;

/// `F_4 = {0, 1, w, w^2}` encoded as `0, 1, 2, 3`, with `w^2 = w + 1`.
const F4_MUL: [[Element; 4]; 4] = [[0, 0, 0, 0], [0, 1, 2, 3], [0, 2, 3, 1], [0, 3, 1, 2]];
/// `Tr(x) = x + x^2`.
const F4_TRACE: [bool; 4] = [false, false, true, true];

fn f4() -> ExtField {
    ExtField::new(2).unwrap()
}

fn random_ext_code(rng: &mut impl Rng, f: ExtField, n: usize, k_max: usize) -> ExtFieldCode {
    loop {
        let k = rng.gen_range(1..=k_max.min(n));
        let rows: Vec<Vec<Element>> = (0..k).map(|_| (0..n).map(|_| rng.gen_range(0..f.order())).collect()).collect();
        if let Ok(c) = ExtFieldCode::new(f, n, rows) {
            return c;
        }
    }
}

#[test]
fn f4_arithmetic_matches_tables() {
    let f = f4();
    for a in 0..4 {
        assert_eq!(f.trace(a), F4_TRACE[a as usize]);
        for b in 0..4 {
            assert_eq!(f.mul(a, b), F4_MUL[a as usize][b as usize]);
        }
    }
}

#[test]
fn field_axioms_for_all_supported_degrees() {
    for m in 1..=4 {
        let f = ExtField::new(m).unwrap();
        let els: Vec<Element> = f.elements().collect();
        assert_eq!(els.len(), 1 << m);
        for &a in &els {
            if a != 0 {
                assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
            }
            assert_eq!(f.pow(a, 1 << m), a);
            for &b in &els {
                assert_eq!(f.trace(a ^ b), f.trace(a) ^ f.trace(b));
                for &c in &els {
                    assert_eq!(f.mul(a, f.mul(b, c)), f.mul(f.mul(a, b), c));
                    assert_eq!(f.mul(a, b ^ c), f.mul(a, b) ^ f.mul(a, c));
                }
            }
        }
        let basis = find_self_dual_basis(&f).unwrap();
        basis.verify().unwrap();
    }
    assert_eq!(find_self_dual_basis(&f4()).unwrap().alphas, vec![2, 3]);
    assert!(ExtField::new(5).is_err());
}

proptest! {
    #[test]
    fn inner_products_map_to_traces(m in 1usize..=4, n in 1usize..12, seed in any::<u64>()) {
        let f = ExtField::new(m).unwrap();
        let basis = find_self_dual_basis(&f).unwrap();
        let mut rng = seeded(seed);
        let x: Vec<Element> = (0..n).map(|_| rng.gen_range(0..f.order())).collect();
        let y: Vec<Element> = (0..n).map(|_| rng.gen_range(0..f.order())).collect();
        let lhs = expand_vector(&basis, &x).dot(&expand_vector(&basis, &y));
        prop_assert_eq!(lhs, f.trace(f.dot(&x, &y)));
    }
}

#[test]
fn expansion_properties_over_random_f4_codes() {
    let f = f4();
    let basis = find_self_dual_basis(&f).unwrap();
    let mut rng = seeded(41);
    let mut lcd_seen = 0;
    for _ in 0..300 {
        let n = rng.gen_range(1..=8);
        let c = random_ext_code(&mut rng, f, n, 4);
        let image = expand_code(&c, &basis).unwrap();
        assert_eq!((image.n(), image.k()), (2 * n, 2 * c.k()));
        assert!(brute_min_distance(&image) >= c.min_distance().unwrap());
        assert_eq!(image.is_lcd(), c.is_lcd());
        assert_eq!(is_lcd_by_intersection(&image), c.is_lcd());
        let hull_dim = c.hull_dimension();
        assert_eq!(hull_dim_by_intersection(&image), 2 * hull_dim);
        if hull_dim > 0 {
            let expanded_hull = expand_code(&c.hull(), &basis).unwrap();
            assert_eq!(words_of(&expanded_hull), words_of(&image.hull()));
        }
        if c.is_lcd() {
            lcd_seen += 1;
        }
    }
    assert!(lcd_seen > 50);
}

#[test]
fn self_orthogonal_and_self_dual_transfer() {
    let f = f4();
    let basis = find_self_dual_basis(&f).unwrap();
    let mut rng = seeded(8);
    for _ in 0..100 {
        let n = rng.gen_range(2..=8);
        let c = random_ext_code(&mut rng, f, n, 4);
        if c.hull_dimension() == 0 {
            continue;
        }
        let h = c.hull();
        assert!(h.is_self_orthogonal());
        let image = expand_code(&h, &basis).unwrap();
        assert_eq!(image.hull_dimension(), image.k());
    }
    // Direct sums of span{(1, 1)} are self-dual.
    for r in 1..=4 {
        let n = 2 * r;
        let rows: Vec<Vec<Element>> = (0..r)
            .map(|i| (0..n).map(|j| Element::from(j / 2 == i)).collect())
            .collect();
        let c = ExtFieldCode::new(f, n, rows).unwrap();
        assert!(c.is_self_orthogonal() && 2 * c.k() == n);
        let image = expand_code(&c, &basis).unwrap();
        assert_eq!(image.hull_dimension(), image.k());
        assert_eq!(2 * image.k(), image.n());
    }
}

#[test]
fn bound_index_mapping() {
    let b = expansion_bound(42, 30, 2, 5).unwrap();
    assert_eq!((b.n_ext, b.k_ext, b.bound), (21, 15, 5));
    let b = expansion_bound(43, 31, 2, 5).unwrap();
    assert_eq!((b.n_ext, b.k_ext), (21, 16));
    assert!(expansion_bound(4, 5, 2, 1).is_err());
}
