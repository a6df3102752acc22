mod common;

use common::*;
use lcdcodes::conjecture::{certify_step_down, column_append_even, good_puncture_pairs, min_weight_span_punctured};
use lcdcodes::harness::search::{search, CodeClass, SearchRequest};
use lcdcodes::harness::table::lcd_oe_corpus;
use lcdcodes::{BitVector, CoordinateSet, LinearCode};
use rand::Rng;

fn check_certificate(code: &LinearCode) {
    let (n1, k, d) = code.params().unwrap();
    let cert = certify_step_down(code).unwrap_or_else(|e| panic!("{:?}: {e}", code.rows()));
    cert.verify().unwrap();
    let out = &cert.output;
    assert_eq!((out.n(), out.k()), (n1 - 1, k));
    assert!(is_lcd_by_intersection(out));
    assert!(brute_min_distance(out) + 1 >= d);
    let lines = cert.to_json_lines();
    for line in lines.lines() {
        serde_json::from_str::<serde_json::Value>(line).unwrap();
    }
}

#[test]
fn certifies_the_small_corpus() {
    let corpus = lcd_oe_corpus(10).unwrap();
    assert!(corpus.len() > 30);
    for code in &corpus {
        check_certificate(code);
    }
}

#[test]
fn certifies_random_larger_codes() {
    let mut rng = seeded(5);
    let mut done = 0;
    let mut seed = 0;
    while done < 25 {
        let n1 = rng.gen_range(12..=20);
        let k = rng.gen_range(2..=6);
        let mut req = SearchRequest::new(n1, k, 3);
        req.class = CodeClass::LcdOe;
        req.seed = seed;
        req.iterations = 2_000;
        seed += 1;
        if let Some(code) = search(&req).unwrap() {
            assert!(code.is_lcd_oe());
            check_certificate(&code);
            done += 1;
        }
    }
}

#[test]
fn good_pairs_meet_the_count_bound() {
    for code in lcd_oe_corpus(10).unwrap() {
        let d = code.min_distance().unwrap();
        for u in 0..code.n() {
            let pairs = good_puncture_pairs(&code, u).unwrap();
            assert!(pairs.len() + 1 >= d, "u = {u}: {} pairs, d = {d}", pairs.len());
            for w in &pairs {
                assert!(w.lcd);
                let t = CoordinateSet::new(code.n(), [w.u, w.v]).unwrap();
                assert!(is_lcd_by_intersection(&code.puncture(&t).unwrap()));
            }
        }
    }
}

#[test]
fn all_one_lifts_and_split_words_leave_the_span() {
    for code in lcd_oe_corpus(10).unwrap() {
        let n1 = code.n();
        let d = code.min_distance().unwrap();
        let words = codewords(&code);
        for w in good_puncture_pairs(&code, 0).unwrap() {
            let lifted = w.lift(&code, &BitVector::ones(n1 - 2)).unwrap();
            assert!(lifted.is_all_one());
            let span = min_weight_span_punctured(&w, d).unwrap();
            for &c in &words {
                if (c >> w.u & 1) != (c >> w.v & 1) {
                    let p = from_mask(n1, c).remove_coordinates(&[w.u.min(w.v), w.u.max(w.v)]);
                    assert!(!span.contains(&p));
                }
            }
        }
    }
}

#[test]
fn every_column_keeps_even_like_codes_lcd() {
    let mut rng = seeded(23);
    let mut done = 0;
    while done < 40 {
        let n = rng.gen_range(4..=14);
        let code = random_lcd(&mut rng, n, 8);
        if !code.is_even_like() || code.dual().is_even_like() {
            continue;
        }
        for m in 0u64..1 << code.k() {
            let out = column_append_even(&code, &from_mask(code.k(), m)).unwrap();
            assert!(is_lcd_by_intersection(&out));
        }
        done += 1;
    }
}

#[test]
fn rejects_inputs_outside_lcd_oe() {
    let even = LinearCode::from_strs(&["1100", "0011"]).unwrap();
    let e = certify_step_down(&even).unwrap_err().to_string();
    assert!(e.contains("LCD_oe") || e.contains("LCD"), "{e}");
    let small_d = LinearCode::from_strs(&["100", "010"]).unwrap();
    assert!(certify_step_down(&small_d).is_err());
    let k1 = LinearCode::from_strs(&["11111"]).unwrap();
    assert!(certify_step_down(&k1).unwrap_err().to_string().contains("below 2"));
}
