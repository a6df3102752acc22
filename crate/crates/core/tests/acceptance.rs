//! Acceptance checks, one line per criterion. Runs as a plain binary so the
//! lines show up in `cargo test` output; exits nonzero if any criterion fails.

mod common;

use std::collections::BTreeSet;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::*;
use lcdcodes::conjecture::certify_step_down;
use lcdcodes::constructions::{extend_systematic, extend_two_multi};
use lcdcodes::expansion::{expand_code, find_self_dual_basis, Element, ExtField, ExtFieldCode};
use lcdcodes::harness::bounds::BoundsLedger;
use lcdcodes::harness::ledger::{read_ledger, LedgerRunner, Verdict};
use lcdcodes::harness::search::{search, SearchRequest};
use lcdcodes::harness::table::{enumerate_systematic, lcd_oe_corpus, DlcdTable, EnumerationSpec};
use lcdcodes::normal_form::hull_normal_basis;
use lcdcodes::{BitMatrix, BitVector, Engine, Error, LinearCode};
use rand::Rng;

struct Outcome {
    pass: bool,
    detail: String,
}

fn run(id: usize, name: &str, limit: Option<Duration>, check: impl FnOnce() -> Outcome) -> bool {
    let start = Instant::now();
    let mut out = check();
    let elapsed = start.elapsed();
    if let Some(limit) = limit {
        if elapsed > limit {
            out.pass = false;
            out.detail.push_str(&format!("; over the {} s limit", limit.as_secs()));
        }
    }
    println!(
        "criterion {id} [{}] {name}: {} ({:.2} s)",
        if out.pass { "PASS" } else { "FAIL" },
        out.detail,
        elapsed.as_secs_f64()
    );
    out.pass
}

fn hull_oracle() -> Outcome {
    let mut rng = seeded(1);
    let total = 1000;
    let mut agree = 0;
    for _ in 0..total {
        let n = rng.gen_range(1..=14);
        let code = random_code(&mut rng, n, n.min(10));
        if code.hull_dimension() == hull_dim_by_intersection(&code) {
            agree += 1;
        }
    }
    Outcome {
        pass: agree == total,
        detail: format!("{agree}/{total} random codes agree"),
    }
}

fn engine_totality() -> Outcome {
    let corpus = match lcd_oe_corpus(12) {
        Ok(c) => c,
        Err(e) => {
            return Outcome {
                pass: false,
                detail: format!("corpus enumeration failed: {e}"),
            }
        }
    };
    let mut failures = Vec::new();
    let mut fallbacks = 0;
    let mut flagged = 0;
    for code in &corpus {
        let d = code.min_distance().expect("corpus distance");
        let ok = match certify_step_down(code) {
            Ok(cert) => {
                fallbacks += usize::from(cert.fallback_used);
                flagged += usize::from(cert.depth_flagged());
                let out = &cert.output;
                cert.verify().is_ok()
                    && out.n() + 1 == code.n()
                    && out.k() == code.k()
                    && out.is_lcd()
                    && out.min_distance_with(Engine::Full).map_or(false, |d2| d2 + 1 >= d)
            }
            Err(_) => false,
        };
        if !ok {
            failures.push(format!("{:?}", code.params().ok()));
        }
    }
    Outcome {
        pass: failures.is_empty() && !corpus.is_empty(),
        detail: format!(
            "{} LCD_oe codes of length <= 12, {} failures, {} lexicographic fallbacks, {} deep descents{}",
            corpus.len(),
            failures.len(),
            fallbacks,
            flagged,
            failures.first().map(|f| format!(", first failure {f}")).unwrap_or_default()
        ),
    }
}

fn step_property() -> Outcome {
    let table = match DlcdTable::compute(12) {
        Ok(t) => t,
        Err(e) => {
            return Outcome {
                pass: false,
                detail: format!("table failed: {e}"),
            }
        }
    };
    let mut problems = table.closed_form_violations();
    for n in 1..=11 {
        for k in 2..=n {
            let (a, b) = (table.get(n, k).unwrap(), table.get(n + 1, k).unwrap());
            if b < a || b > a + 1 {
                problems.push(format!("d({},{k}) = {b}, d({n},{k}) = {a}", n + 1));
            }
        }
    }
    Outcome {
        pass: problems.is_empty(),
        detail: format!(
            "{} exact values for n <= 12, {} exceptions{}",
            table.entries().count(),
            problems.len(),
            problems.first().map(|p| format!(", first {p}")).unwrap_or_default()
        ),
    }
}

fn random_f4_code(rng: &mut impl Rng, f: ExtField, i: usize) -> ExtFieldCode {
    let n = rng.gen_range(1..=10);
    match i % 5 {
        // Hulls of random codes are self-orthogonal.
        3 => loop {
            let m = rng.gen_range(2..=10);
            let c = random_f4_plain(rng, f, m);
            if c.hull_dimension() > 0 {
                return c.hull();
            }
        },
        // Permuted direct sums of span{(1, 1)} are self-dual.
        4 => {
            let r = rng.gen_range(1..=5);
            let mut cols: Vec<usize> = (0..2 * r).collect();
            for j in (1..cols.len()).rev() {
                cols.swap(j, rng.gen_range(0..=j));
            }
            let rows: Vec<Vec<Element>> = (0..r)
                .map(|b| cols.iter().map(|&c| Element::from(c / 2 == b)).collect())
                .collect();
            ExtFieldCode::new(f, 2 * r, rows).expect("independent rows")
        }
        _ => random_f4_plain(rng, f, n),
    }
}

fn random_f4_plain(rng: &mut impl Rng, f: ExtField, n: usize) -> ExtFieldCode {
    loop {
        let k = rng.gen_range(1..=n.min(5));
        let rows: Vec<Vec<Element>> = (0..k).map(|_| (0..n).map(|_| rng.gen_range(0..4)).collect()).collect();
        if let Ok(c) = ExtFieldCode::new(f, n, rows) {
            return c;
        }
    }
}

fn expansion_theorem() -> Outcome {
    let f = ExtField::new(2).expect("F_4");
    let basis = find_self_dual_basis(&f).expect("self-dual basis");
    let mut rng = seeded(4);
    let total = 500;
    let mut good = 0;
    let (mut so_seen, mut sd_seen) = (0, 0);
    let mut first_bad = None;
    for i in 0..total {
        let c = random_f4_code(&mut rng, f, i);
        let image = expand_code(&c, &basis).expect("expansion");
        let params = image.n() == 2 * c.n()
            && image.k() == 2 * c.k()
            && image.min_distance_with(Engine::Full).expect("distance") >= c.min_distance().expect("distance");
        let hull_commutes = if c.hull_dimension() == 0 {
            image.hull_dimension() == 0
        } else {
            words_of(&expand_code(&c.hull(), &basis).expect("expansion")) == words_of(&image.hull())
        };
        let lcd = image.is_lcd() == c.is_lcd();
        let image_so = image.hull_dimension() == image.k();
        let so = image_so == c.is_self_orthogonal();
        let sd = (image_so && 2 * image.k() == image.n()) == (c.is_self_orthogonal() && 2 * c.k() == c.n());
        so_seen += usize::from(c.is_self_orthogonal());
        sd_seen += usize::from(c.is_self_orthogonal() && 2 * c.k() == c.n());
        if params && hull_commutes && lcd && so && sd {
            good += 1;
        } else if first_bad.is_none() {
            first_bad = Some(format!("{:?}", c.generator()));
        }
    }
    Outcome {
        pass: good == total && so_seen > 0 && sd_seen > 0,
        detail: format!(
            "{good}/{total} F_4 codes satisfy all five clauses ({so_seen} self-orthogonal, {sd_seen} self-dual){}",
            first_bad.map(|b| format!(", first failure {b}")).unwrap_or_default()
        ),
    }
}

/// LCD codes from the systematic enumeration plus searched codes reaching
/// redundancy 10.
fn lcd_corpus_with_redundancy() -> Vec<LinearCode> {
    let mut out = Vec::new();
    for n in 2..=8 {
        for k in 1..n {
            enumerate_systematic(EnumerationSpec::new(n, k, 2), &mut |c| {
                if c.lcd {
                    out.push(c.code());
                }
                true
            })
            .expect("enumeration");
        }
    }
    for (n, k, d) in [(12, 2, 7), (13, 3, 6), (14, 4, 5), (14, 4, 3), (12, 3, 5), (11, 1, 11)] {
        if let Some(c) = search(&SearchRequest::new(n, k, d)).expect("search") {
            out.push(c);
        }
    }
    out
}

fn systematic_iff() -> Outcome {
    let mut checked = 0u64;
    let mut mismatches = 0u64;
    let mut codes = 0;
    let mut max_r = 0;
    for code in lcd_corpus_with_redundancy() {
        let code = LinearCode::new(hull_normal_basis(&code).basis).expect("basis");
        if !code.leading_columns_independent() {
            continue;
        }
        codes += 1;
        let (n, k) = (code.n(), code.k());
        let r = n - k;
        max_r = max_r.max(r);
        for m in 0u64..1 << r {
            let x = from_mask(r, m);
            let verdict = extend_systematic(&code, &x).expect("normalized input").is_lcd;
            let head = BitVector::unit(1, 0).concat(&BitVector::zeros(k)).concat(&x);
            let mut rows = vec![head];
            rows.extend(code.rows().iter().map(|row| BitVector::zeros(1).concat(row)));
            let g = BitMatrix::from_rows(n + 1, &rows);
            let nonsingular = g.gram().rank() == k + 1;
            if verdict != nonsingular {
                mismatches += 1;
            }
            checked += 1;
        }
    }
    Outcome {
        pass: mismatches == 0 && max_r == 10,
        detail: format!("{checked} (code, x) pairs over {codes} codes with n - k <= {max_r}, {mismatches} mismatches"),
    }
}

fn two_column_count() -> Outcome {
    let mut codes = 0;
    let mut bad = Vec::new();
    for n in 3..=11 {
        for k in (1..=7).step_by(2).filter(|&k| k < n) {
            enumerate_systematic(EnumerationSpec::new(n, k, 3), &mut |c| {
                if !c.lcd || c.distance % 2 == 0 {
                    return true;
                }
                let code = c.code();
                let d = c.distance;
                codes += 1;
                let ok = match extend_two_multi(&code) {
                    Ok(outs) => {
                        let distinct: BTreeSet<_> = outs.iter().map(|o| words_of(&o.code)).collect();
                        outs.len() == 1 << (k - 1)
                            && distinct.len() == outs.len()
                            && outs.iter().all(|o| {
                                o.code.is_lcd() && o.code.min_distance_with(Engine::Full).map_or(false, |d2| d2 > d)
                            })
                    }
                    Err(_) => false,
                };
                if !ok {
                    bad.push(format!("[{n},{k},{d}]"));
                }
                true
            })
            .expect("enumeration");
        }
    }
    Outcome {
        pass: bad.is_empty() && codes > 0,
        detail: format!(
            "{codes} codes with k, d odd and n <= 11, {} failures{}",
            bad.len(),
            bad.first().map(|b| format!(", first {b}")).unwrap_or_default()
        ),
    }
}

fn engine_agreement() -> Outcome {
    let mut rng = seeded(7);
    let target = 1000;
    let (mut in_budget, mut agree, mut drawn) = (0, 0, 0);
    while in_budget < target && drawn < 20 * target {
        drawn += 1;
        let n = rng.gen_range(2..=30);
        let code = random_code(&mut rng, n, n.min(16));
        let a = code.min_distance_with(Engine::Full);
        let b = code.min_distance_with(Engine::LowWeight);
        match (a, b) {
            (Ok(a), Ok(b)) => {
                in_budget += 1;
                agree += usize::from(a == b);
            }
            (Ok(a), Err(Error::DistanceBudget { at_least })) => {
                if a < at_least {
                    in_budget += 1;
                }
            }
            _ => {}
        }
    }
    Outcome {
        pass: in_budget == target && agree == target,
        detail: format!("{agree}/{in_budget} in-budget random codes agree"),
    }
}

fn ledger() -> Outcome {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../ledger/tables.jsonl");
    let records = match read_ledger(&path) {
        Ok(r) => r,
        Err(e) => {
            return Outcome {
                pass: false,
                detail: format!("ledger unreadable: {e}"),
            }
        }
    };
    let outcomes = LedgerRunner::new(None).run_all(&records);
    let (mut builtin_pass, mut builtin, mut skipped, mut external) = (0, 0, 0, 0);
    let mut bad = Vec::new();
    for (rec, out) in records.iter().zip(&outcomes) {
        if rec.status == "external" {
            external += 1;
            if matches!(out.verdict, Verdict::SkippedMissingSeed(_)) {
                skipped += 1;
            } else {
                bad.push(rec.id.clone());
            }
        } else {
            builtin += 1;
            if out.verdict == Verdict::Pass {
                builtin_pass += 1;
            } else {
                bad.push(rec.id.clone());
            }
        }
    }
    let bounds = BoundsLedger::published();
    let violations = bounds.consistency_violations();
    Outcome {
        pass: bad.is_empty() && violations.is_empty() && builtin > 0,
        detail: format!(
            "{builtin_pass}/{builtin} built-in rows PASS, {skipped}/{external} external rows SKIPPED-MISSING-SEED, \
             {} bound entries with {} consistency violations{}",
            bounds.len(),
            violations.len(),
            bad.first().map(|b| format!(", first bad row {b}")).unwrap_or_default()
        ),
    }
}

fn main() -> ExitCode {
    let results = [
        run(1, "hull oracle equivalence", Some(Duration::from_secs(5)), hull_oracle),
        run(2, "step-down engine totality", Some(Duration::from_secs(600)), engine_totality),
        run(3, "step property on exact table", None, step_property),
        run(4, "expansion theorem", Some(Duration::from_secs(60)), expansion_theorem),
        run(5, "systematic extension iff", None, systematic_iff),
        run(6, "two-column extension count", None, two_column_count),
        run(7, "distance engine agreement", None, engine_agreement),
        run(8, "ledger and bound consistency", None, ledger),
    ];
    let passed = results.iter().filter(|&&p| p).count();
    println!("acceptance: {passed}/{} criteria pass", results.len());
    if passed == results.len() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
