//! Information-set decoding against a McEliece public generator matrix.
//!
//! Each iteration draws a uniformly random information set: size-`k` column
//! subsets are sampled until one gives an invertible submatrix. The public
//! matrix is then brought to identity form on that set and candidate error
//! patterns inside it are checked against the residual weight.

use std::collections::HashMap;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::codes::hamming_weight;
use crate::combin::for_each_weight_vector;
use crate::error::{Error, Result};
use crate::linalg::DenseMatrix;

/// Outcome of a single iteration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IterationResult {
    /// A plaintext whose residual `c - pt · G` has weight at most `t`.
    Hit {
        plaintext: Vec<u16>,
        error: Vec<u16>,
    },
    Miss,
}

/// Result of a bounded attack run; exhausting the budget is not an error.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AttackOutcome {
    Success { plaintext: Vec<u16>, error: Vec<u16>, iterations: usize },
    Failure { iterations: usize },
}

impl AttackOutcome {
    pub fn is_success(&self) -> bool {
        matches!(self, AttackOutcome::Success { .. })
    }
}

/// Generator reduced to identity form on an information set.
struct Reduced {
    /// Information-set positions; `info[r]` carries the identity in row `r`.
    info: Vec<usize>,
    /// `G_I⁻¹ · G`.
    systematic: DenseMatrix,
    /// `G_I⁻¹`.
    inv: DenseMatrix,
}

/// Singular subsets drawn before an iteration gives up.
pub const MAX_SUBSET_DRAWS: usize = 1 << 20;

/// Uniform `k`-subset whose columns are independent, or `None` if the draw hit a dependency.
///
/// Columns are taken one at a time in uniform order and eliminated against the
/// earlier ones, so a doomed draw is abandoned at its first dependent column.
fn draw_information_set<R: Rng + ?Sized>(g: &DenseMatrix, rng: &mut R) -> Option<Vec<usize>> {
    let (k, n) = (g.rows(), g.cols());
    let f = g.field();
    let mut pool: Vec<usize> = (0..n).collect();
    let mut basis: Vec<(usize, Vec<u16>)> = Vec::with_capacity(k);
    for i in 0..k {
        let pick = rng.gen_range(i..n);
        pool.swap(i, pick);
        let mut v = g.column(pool[i]);
        for (pivot, b) in &basis {
            let coef = v[*pivot];
            if coef != 0 {
                for (x, &y) in v.iter_mut().zip(b) {
                    *x ^= f.mul(coef, y);
                }
            }
        }
        let pivot = v.iter().position(|&x| x != 0)?;
        let scale = f.inv(v[pivot]).ok()?;
        for x in v.iter_mut() {
            *x = f.mul(scale, *x);
        }
        basis.push((pivot, v));
    }
    let mut info = pool[..k].to_vec();
    info.sort_unstable();
    Some(info)
}

fn reduce<R: Rng + ?Sized>(g: &DenseMatrix, rng: &mut R) -> Result<Reduced> {
    let k = g.rows();
    for _ in 0..MAX_SUBSET_DRAWS {
        if let Some(info) = draw_information_set(g, rng) {
            let inv = g.select_columns(&info).inverse()?;
            let systematic = inv.mul(g)?;
            return Ok(Reduced { info, systematic, inv });
        }
    }
    Err(Error::Retry(format!("no invertible {k}-column subset in {MAX_SUBSET_DRAWS} draws")))
}

fn check_inputs(g: &DenseMatrix, c: &[u16]) -> Result<()> {
    if c.len() != g.cols() {
        return Err(Error::DimensionMismatch(format!("ciphertext of length {}, expected {}", c.len(), g.cols())));
    }
    if g.rows() == 0 || g.rows() > g.cols() {
        return Err(Error::InvalidParameter(format!("{}x{} is not a generator matrix", g.rows(), g.cols())));
    }
    let rank = g.rank();
    if rank < g.rows() {
        return Err(Error::RankDeficient { rank, expected: g.rows() });
    }
    Ok(())
}

/// `residual += Σ_r e_r · row_r` over the rows selected by `e`.
fn add_rows(residual: &mut [u16], sys: &DenseMatrix, e: &[u16]) {
    let f = sys.field();
    for (r, &v) in e.iter().enumerate() {
        if v != 0 {
            for (x, &a) in residual.iter_mut().zip(sys.row(r)) {
                *x ^= f.mul(v, a);
            }
        }
    }
}

/// `c - (c_I) · G_I⁻¹ · G`, which vanishes on the information set.
fn base_residual(red: &Reduced, c: &[u16]) -> (Vec<u16>, Vec<u16>) {
    let c_info: Vec<u16> = red.info.iter().map(|&i| c[i]).collect();
    let mut residual = c.to_vec();
    add_rows(&mut residual, &red.systematic, &c_info);
    (c_info, residual)
}

fn hit(red: &Reduced, c_info: &[u16], e_info: &[u16], residual: Vec<u16>) -> IterationResult {
    let word: Vec<u16> = c_info.iter().zip(e_info).map(|(a, b)| a ^ b).collect();
    let plaintext = red.inv.vec_mul(&word).expect("k symbols");
    IterationResult::Hit { plaintext, error: residual }
}

/// One Lee–Brickell iteration: try every pattern of weight at most `j` on
/// the information set, lightest first.
pub fn lee_brickell_iteration<R: Rng + ?Sized>(
    g: &DenseMatrix,
    c: &[u16],
    t: usize,
    j: usize,
    rng: &mut R,
) -> Result<IterationResult> {
    check_inputs(g, c)?;
    let red = reduce(g, rng)?;
    let (c_info, base) = base_residual(&red, c);
    let q = g.field().size();
    let k = g.rows();
    let mut found = None;
    for w in 0..=j.min(k) {
        for_each_weight_vector(k, w, q, |e| {
            if found.is_some() {
                return;
            }
            let mut residual = base.clone();
            add_rows(&mut residual, &red.systematic, e);
            if hamming_weight(&residual) <= t {
                found = Some(hit(&red, &c_info, e, residual));
            }
        });
        if let Some(r) = found {
            return Ok(r);
        }
    }
    Ok(IterationResult::Miss)
}

/// Repeat [`lee_brickell_iteration`] until a hit or `max_iters` iterations.
pub fn lee_brickell_attack<R: Rng + ?Sized>(
    g: &DenseMatrix,
    c: &[u16],
    t: usize,
    j: usize,
    rng: &mut R,
    max_iters: usize,
) -> Result<AttackOutcome> {
    for it in 1..=max_iters {
        if let IterationResult::Hit { plaintext, error } = lee_brickell_iteration(g, c, t, j, rng)? {
            return Ok(AttackOutcome::Success { plaintext, error, iterations: it });
        }
    }
    Ok(AttackOutcome::Failure { iterations: max_iters })
}

/// Parameters of the collision search.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SternParams {
    /// Largest error weight tried on each half of the information set.
    pub half_weight: usize,
    /// Number of redundancy positions on which the two halves must collide.
    pub window: usize,
}

/// One Stern-style iteration: split the information set in two halves,
/// match partial patterns on a window of redundancy positions, and check the
/// full residual weight of every colliding pair.
pub fn stern_iteration<R: Rng + ?Sized>(
    g: &DenseMatrix,
    c: &[u16],
    t: usize,
    params: SternParams,
    rng: &mut R,
) -> Result<IterationResult> {
    check_inputs(g, c)?;
    let (k, n) = (g.rows(), g.cols());
    if params.window > n - k {
        return Err(Error::InvalidParameter(format!("window {} exceeds the redundancy {}", params.window, n - k)));
    }
    let red = reduce(g, rng)?;
    let (c_info, base) = base_residual(&red, c);
    let mut rest: Vec<usize> = (0..n).filter(|i| !red.info.contains(i)).collect();
    rest.shuffle(rng);
    let window = &rest[..params.window];
    let q = g.field().size();
    let (left, right) = (k / 2, k - k / 2);

    let sys = &red.systematic;
    let f = g.field();
    let project = |e: &[u16], offset: usize, start: &[u16]| -> Vec<u16> {
        let mut out = start.to_vec();
        for (r, &v) in e.iter().enumerate() {
            if v != 0 {
                for (o, &pos) in out.iter_mut().zip(window) {
                    *o ^= f.mul(v, sys.get(offset + r, pos));
                }
            }
        }
        out
    };

    let start: Vec<u16> = window.iter().map(|&p| base[p]).collect();
    let zero = vec![0u16; window.len()];
    let mut table: HashMap<Vec<u16>, Vec<Vec<u16>>> = HashMap::new();
    for w in 0..=params.half_weight.min(right) {
        for_each_weight_vector(right, w, q, |e| {
            table.entry(project(e, left, &zero)).or_default().push(e.to_vec());
        });
    }

    let mut found = None;
    for w in 0..=params.half_weight.min(left) {
        for_each_weight_vector(left, w, q, |e| {
            if found.is_some() {
                return;
            }
            let key = project(e, 0, &start);
            let Some(partners) = table.get(&key) else { return };
            for other in partners {
                let mut full = e.to_vec();
                full.extend_from_slice(other);
                let mut residual = base.clone();
                add_rows(&mut residual, sys, &full);
                if hamming_weight(&residual) <= t {
                    found = Some(hit(&red, &c_info, &full, residual));
                    return;
                }
            }
        });
        if let Some(r) = found {
            return Ok(r);
        }
    }
    Ok(IterationResult::Miss)
}

pub fn stern_attack<R: Rng + ?Sized>(
    g: &DenseMatrix,
    c: &[u16],
    t: usize,
    params: SternParams,
    rng: &mut R,
    max_iters: usize,
) -> Result<AttackOutcome> {
    for it in 1..=max_iters {
        if let IterationResult::Hit { plaintext, error } = stern_iteration(g, c, t, params, rng)? {
            return Ok(AttackOutcome::Success { plaintext, error, iterations: it });
        }
    }
    Ok(AttackOutcome::Failure { iterations: max_iters })
}
