//! Randomized hill-climbing for binary codes with a prescribed class and
//! minimum distance. Deterministic for a given seed and iteration budget.

use std::str::FromStr;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::code::LinearCode;
use crate::distance::{for_each_codeword, K_FULL};
use crate::error::{Error, Result};
use crate::gf2::{BitMatrix, BitVector};
use crate::harness::table::griesmer_max_distance;

pub const DEFAULT_SEED: u64 = 0x1CD_C0DE;
pub const DEFAULT_ITERATIONS: usize = 20_000;
/// Non-improving steps before a restart.
const STALL: usize = 1_500;
/// Random draws allowed when looking for a starting code of the class.
const START_TRIES: usize = 2_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CodeClass {
    Any,
    Lcd,
    LcdOddLike,
    LcdEvenLike,
    LcdOe,
    /// Hull of exactly this dimension.
    Hull(usize),
}

impl CodeClass {
    pub fn admits(&self, code: &LinearCode) -> bool {
        match self {
            CodeClass::Any => true,
            CodeClass::Lcd => code.is_lcd(),
            CodeClass::LcdOddLike => code.is_lcd() && !code.is_even_like(),
            CodeClass::LcdEvenLike => code.is_lcd() && code.is_even_like(),
            CodeClass::LcdOe => code.is_lcd_oe(),
            CodeClass::Hull(s) => code.hull_dimension() == *s,
        }
    }

    fn needs_all_one(&self) -> bool {
        matches!(self, CodeClass::LcdOe)
    }
}

impl FromStr for CodeClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let lower = s.trim().to_ascii_lowercase();
        Ok(match lower.as_str() {
            "any" => CodeClass::Any,
            "lcd" => CodeClass::Lcd,
            "lcd-odd" | "lcd_odd" => CodeClass::LcdOddLike,
            "lcd-even" | "lcd_even" => CodeClass::LcdEvenLike,
            "lcd-oe" | "lcd_oe" => CodeClass::LcdOe,
            other => match other.strip_prefix("hull") {
                Some(s) => CodeClass::Hull(
                    s.trim_start_matches([':', '=']).parse().map_err(|_| Error::pre(format!("bad code class '{other}'")))?,
                ),
                None => return Err(Error::pre(format!("unknown code class '{other}'"))),
            },
        })
    }
}

#[derive(Clone, Debug)]
pub struct SearchRequest {
    pub n: usize,
    pub k: usize,
    pub d_target: usize,
    pub class: CodeClass,
    pub seed: u64,
    pub iterations: usize,
    /// Optional wall-clock cap; the search is reproducible only when the
    /// iteration budget runs out first.
    pub deadline: Option<Instant>,
}

impl SearchRequest {
    pub fn new(n: usize, k: usize, d_target: usize) -> Self {
        Self {
            n,
            k,
            d_target,
            class: CodeClass::Lcd,
            seed: DEFAULT_SEED,
            iterations: DEFAULT_ITERATIONS,
            deadline: None,
        }
    }
}

/// `(minimum distance, number of codewords of that weight)`.
fn profile(code: &LinearCode) -> Result<(usize, u64)> {
    if code.k() <= 20 {
        let mut best = usize::MAX;
        let mut count = 0;
        for_each_codeword(code.generator(), |c| {
            let w = c.weight();
            if w > 0 {
                if w < best {
                    best = w;
                    count = 0;
                }
                if w == best {
                    count += 1;
                }
            }
            true
        });
        Ok((best, count))
    } else {
        Ok((code.min_distance()?, 0))
    }
}

fn better(a: (usize, u64), b: (usize, u64)) -> bool {
    a.0 > b.0 || (a.0 == b.0 && a.1 <= b.1)
}

struct State {
    red: Vec<BitVector>,
    code: LinearCode,
    score: (usize, u64),
}

fn build(k: usize, red: &[BitVector]) -> LinearCode {
    let rows: Vec<BitVector> = red
        .iter()
        .enumerate()
        .map(|(i, a)| BitVector::unit(k, i).concat(a))
        .collect();
    let n = k + red.first().map_or(0, BitVector::len);
    LinearCode::new(BitMatrix::from_rows(n, &rows)).expect("systematic generator has full rank")
}

fn random_start(req: &SearchRequest, rng: &mut ChaCha8Rng) -> Result<Option<State>> {
    let r = req.n - req.k;
    for _ in 0..START_TRIES {
        let mut red: Vec<BitVector> = (0..req.k)
            .map(|_| BitVector::from_bools((0..r).map(|_| rng.gen::<bool>())))
            .collect();
        if req.class.needs_all_one() {
            // Odd column parities in the redundancy put 1 in the code.
            let mut last = BitVector::ones(r);
            for row in &red[..req.k - 1] {
                last.xor_assign(row);
            }
            red[req.k - 1] = last;
        }
        let code = build(req.k, &red);
        if req.class.admits(&code) {
            let score = profile(&code)?;
            return Ok(Some(State { red, code, score }));
        }
    }
    Ok(None)
}

/// Flips one bit of the redundancy part, or two bits sharing a row or a
/// column so that row or column parities can be preserved.
fn mutate(red: &mut [BitVector], keep_columns: bool, rng: &mut ChaCha8Rng) {
    let k = red.len();
    let r = red[0].len();
    let i = rng.gen_range(0..k);
    let j = rng.gen_range(0..r);
    red[i].flip(j);
    let kind = if keep_columns { 2 } else { rng.gen_range(0..3) };
    match kind {
        0 => {}
        1 if r > 1 => {
            let j2 = (j + rng.gen_range(1..r)) % r;
            red[i].flip(j2);
        }
        2 if k > 1 => {
            let i2 = (i + rng.gen_range(1..k)) % k;
            red[i2].flip(j);
        }
        _ => {}
    }
}

/// A code of the requested class with `n`, `k` and minimum distance at least
/// `d_target`, or `None` when the budget runs out or the Griesmer bound rules
/// the parameters out.
pub fn search(req: &SearchRequest) -> Result<Option<LinearCode>> {
    let (n, k) = (req.n, req.k);
    if k == 0 || k > n {
        return Err(Error::pre(format!("need 1 <= k <= n, got n = {n}, k = {k}")));
    }
    if k > K_FULL {
        return Err(Error::pre(format!("dimension {k} exceeds the search limit {K_FULL}")));
    }
    if req.d_target > griesmer_max_distance(n, k) {
        return Ok(None);
    }
    if n == k {
        let code = LinearCode::full(n);
        return Ok((req.class.admits(&code) && req.d_target <= 1).then_some(code));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(req.seed);
    let mut used = 0;
    loop {
        let Some(mut state) = random_start(req, &mut rng)? else {
            return Ok(None);
        };
        let mut stall = 0;
        loop {
            if state.score.0 >= req.d_target {
                return Ok(Some(state.code));
            }
            if used >= req.iterations || stall >= STALL {
                break;
            }
            if req.deadline.is_some_and(|t| Instant::now() >= t) {
                return Ok(None);
            }
            used += 1;
            let mut red = state.red.clone();
            mutate(&mut red, req.class.needs_all_one(), &mut rng);
            let code = build(k, &red);
            if !req.class.admits(&code) {
                stall += 1;
                continue;
            }
            let score = profile(&code)?;
            if better(score, state.score) {
                if score.0 > state.score.0 || score.1 < state.score.1 {
                    stall = 0;
                } else {
                    stall += 1;
                }
                state = State { red, code, score };
            } else {
                stall += 1;
            }
        }
        if used >= req.iterations {
            return Ok(None);
        }
    }
}
