//! Exact Lee–Brickell work factor.
//!
//! With `Q_i = C(t, i) · C(n-t, k-i) / C(n, k)`, `T_j = 1 / Σ_{i<=j} Q_i` and
//! `N_j = Σ_{i<=j} C(k, i)`, the cost is `W_j = T_j · (α k³ + N_j β k)`.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::combin::binomial;
use crate::error::{Error, Result};

/// `log2` of a positive big integer, accurate to double precision.
pub fn log2_biguint(x: &BigUint) -> f64 {
    let bits = x.bits();
    if bits == 0 {
        return f64::NEG_INFINITY;
    }
    let shift = bits.saturating_sub(64);
    let top = (x >> shift).to_u64().expect("fits in 64 bits") as f64;
    top.log2() + shift as f64
}

/// `log2` of a positive rational.
pub fn log2_rational(x: &BigRational) -> f64 {
    let num = x.numer().magnitude();
    let den = x.denom().magnitude();
    log2_biguint(num) - log2_biguint(den)
}

fn ratio(num: BigUint, den: BigUint) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

fn int(x: BigUint) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

#[derive(Debug, Clone, PartialEq)]
pub struct WorkFactorReport {
    pub n: u64,
    pub k: u64,
    pub t: u64,
    pub j: u64,
    pub alpha: BigRational,
    pub beta: BigRational,
    /// `Q_0 … Q_j`.
    pub q: Vec<BigRational>,
    pub t_j: BigRational,
    pub n_j: BigUint,
    pub w_j: BigRational,
    pub log2_w: f64,
}

impl WorkFactorReport {
    /// Success probability of one iteration, `1 / T_j`.
    pub fn success_probability(&self) -> BigRational {
        self.q.iter().fold(BigRational::zero(), |acc, q| acc + q)
    }
}

/// Cost constants of one unit each.
pub fn unit_costs() -> (BigRational, BigRational) {
    (BigRational::one(), BigRational::one())
}

pub fn lee_brickell_workfactor(
    n: u64,
    k: u64,
    t: u64,
    j: u64,
    alpha: &BigRational,
    beta: &BigRational,
) -> Result<WorkFactorReport> {
    if j > t || t > n || k > n {
        return Err(Error::InvalidParameter(format!("need j <= t <= n and k <= n, got n = {n}, k = {k}, t = {t}, j = {j}")));
    }
    let total = binomial(n, k);
    let q: Vec<BigRational> = (0..=j)
        .map(|i| {
            let hits = if i > k { BigUint::zero() } else { binomial(t, i) * binomial(n - t, k - i) };
            ratio(hits, total.clone())
        })
        .collect();
    let p_success = q.iter().fold(BigRational::zero(), |acc, x| acc + x);
    if p_success.is_zero() {
        return Err(Error::InvalidParameter(format!("no information set avoids more than {j} of {t} errors")));
    }
    let t_j = p_success.recip();
    let n_j: BigUint = (0..=j).map(|i| binomial(k, i)).sum();
    let kr = int(BigUint::from(k));
    let per_iteration = alpha * &kr * &kr * &kr + int(n_j.clone()) * beta * &kr;
    let w_j = &t_j * per_iteration;
    let log2_w = log2_rational(&w_j);
    Ok(WorkFactorReport { n, k, t, j, alpha: alpha.clone(), beta: beta.clone(), q, t_j, n_j, w_j, log2_w })
}

/// `W_2` for the `[mp, (m-1)p]` code with unit costs (`W_t` when `t < 2`).
pub fn quasi_cyclic_w2(p: u64, m: u64, t: u64) -> Result<WorkFactorReport> {
    let (a, b) = unit_costs();
    lee_brickell_workfactor(m * p, (m - 1) * p, t, t.min(2), &a, &b)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// `log2 W_j` in floating point: `Q_0` as a product of `t` ratios, then
    /// `Q_i / Q_(i-1) = (t-i+1)(k-i+1) / (i (n-t-k+i))`.
    fn float_oracle(n: u64, k: u64, t: u64, j: u64) -> f64 {
        let (nf, kf, tf) = (n as f64, k as f64, t as f64);
        let mut q = (0..t).map(|i| (nf - kf - i as f64) / (nf - i as f64)).product::<f64>();
        let mut p = q;
        for i in 1..=j {
            let i = i as f64;
            q *= (tf - i + 1.0) * (kf - i + 1.0) / (i * (nf - tf - kf + i));
            p += q;
        }
        let nj: f64 = 1.0 + kf + kf * (kf - 1.0) / 2.0;
        assert_eq!(j, 2);
        (kf.powi(3) + nj * kf).log2() - p.log2()
    }

    #[test]
    fn n2_formula() {
        let (a, b) = unit_costs();
        let r = lee_brickell_workfactor(10, 4, 2, 2, &a, &b).unwrap();
        assert_eq!(r.n_j, BigUint::from(11u32));
    }

    #[test]
    fn j_zero_collapses() {
        let (a, b) = unit_costs();
        let r = lee_brickell_workfactor(30, 12, 3, 0, &a, &b).unwrap();
        let t0 = ratio(binomial(30, 12), binomial(27, 12));
        assert_eq!(r.t_j, t0);
        assert_eq!(r.w_j, t0 * int(BigUint::from(12u32 * 12 * 12 + 12)));
    }

    #[test]
    fn small_exact_case() {
        // n = 26, k = 13, t = 1: Q0 = Q1 = 1/2
        let (a, b) = unit_costs();
        let r = lee_brickell_workfactor(26, 13, 1, 1, &a, &b).unwrap();
        let half = BigRational::new(BigInt::from(1), BigInt::from(2));
        assert_eq!(r.q, vec![half.clone(), half]);
        assert_eq!(r.t_j, BigRational::one());
        assert_eq!(r.w_j, int(BigUint::from(13u32 * 13 * 13 + 14 * 13)));
    }

    #[test]
    fn float_agreement_at_scale() {
        for &(p, t) in &[(101u64, 15u64), (101, 20), (211, 35), (211, 40)] {
            for m in [3u64, 9, 17, 35, 62] {
                let r = quasi_cyclic_w2(p, m, t).unwrap();
                let f = float_oracle(m * p, (m - 1) * p, t, 2);
                // relative error of W itself
                assert!(((r.log2_w - f).exp2() - 1.0).abs() < 1e-9, "p={p} m={m}: {} vs {f}", r.log2_w);
            }
        }
    }

    #[test]
    fn rejects_bad_ranges() {
        let (a, b) = unit_costs();
        assert!(lee_brickell_workfactor(10, 4, 2, 3, &a, &b).is_err());
        assert!(lee_brickell_workfactor(10, 11, 2, 1, &a, &b).is_err());
        assert!(lee_brickell_workfactor(4, 3, 4, 0, &a, &b).is_err());
    }

    #[test]
    fn log2_helpers() {
        assert_eq!(log2_biguint(&BigUint::from(1024u32)), 10.0);
        let big = BigUint::from(3u8).pow(500);
        assert!((log2_biguint(&big) - 500.0 * 3f64.log2()).abs() < 1e-9);
        assert!((log2_rational(&ratio(BigUint::from(1u8), BigUint::from(8u8))) + 3.0).abs() < 1e-12);
    }
}
