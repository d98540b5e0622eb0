//! Binomials and enumeration of fixed-weight vectors.

use num_bigint::BigUint;
use num_traits::One;

/// `C(n, k)` as a big integer (0 when `k > n`).
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::default();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// `C(n, k)` saturating at `u128::MAX`.
pub fn binomial_u128(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k as u128 {
        // acc * (n - i) / (i + 1) is always an integer
        match acc.checked_mul(n as u128 - i) {
            Some(v) => acc = v / (i + 1),
            None => return u128::MAX,
        }
    }
    acc
}

/// Number of vectors of length `n` over an alphabet of size `q` with weight at most `t`.
pub fn ball_size(n: usize, t: usize, q: usize) -> u128 {
    let mut total: u128 = 0;
    for w in 0..=t.min(n) {
        let mut term = binomial_u128(n as u64, w as u64);
        for _ in 0..w {
            term = term.saturating_mul(q as u128 - 1);
        }
        total = total.saturating_add(term);
    }
    total
}

/// `k`-subsets of `0..n` in lexicographic order.
pub struct Combinations {
    n: usize,
    current: Option<Vec<usize>>,
}

impl Combinations {
    pub fn new(n: usize, k: usize) -> Self {
        let current = (k <= n).then(|| (0..k).collect());
        Combinations { n, current }
    }
}

impl Iterator for Combinations {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let out = self.current.clone()?;
        let cur = self.current.as_mut().expect("checked above");
        let k = cur.len();
        let mut i = k;
        loop {
            if i == 0 {
                self.current = None;
                break;
            }
            i -= 1;
            if cur[i] < self.n - k + i {
                cur[i] += 1;
                for j in i + 1..k {
                    cur[j] = cur[j - 1] + 1;
                }
                break;
            }
        }
        Some(out)
    }
}

/// Calls `f` on every length-`n` vector of weight exactly `w` with entries in
/// `1..q` on its support. Supports come in lexicographic order; within a
/// support the values count up with the first position most significant.
pub fn for_each_weight_vector(n: usize, w: usize, q: usize, mut f: impl FnMut(&[u16])) {
    let mut v = vec![0u16; n];
    for support in Combinations::new(n, w) {
        for &s in &support {
            v[s] = 1;
        }
        loop {
            f(&v);
            // odometer over nonzero values, last position least significant
            let mut i = w;
            let mut carried_out = true;
            while i > 0 {
                i -= 1;
                let pos = support[i];
                if (v[pos] as usize) < q - 1 {
                    v[pos] += 1;
                    carried_out = false;
                    break;
                }
                v[pos] = 1;
            }
            if carried_out {
                break;
            }
        }
        for &s in &support {
            v[s] = 0;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomials() {
        assert_eq!(binomial(6, 2), BigUint::from(15u32));
        assert_eq!(binomial(3, 5), BigUint::default());
        assert_eq!(binomial_u128(52, 5), 2_598_960);
        for n in 0..40u64 {
            for k in 0..=n {
                assert_eq!(BigUint::from(binomial_u128(n, k)), binomial(n, k));
            }
        }
    }

    #[test]
    fn combinations_are_lexicographic_and_complete() {
        let all: Vec<_> = Combinations::new(4, 2).collect();
        assert_eq!(all, vec![vec![0, 1], vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3], vec![2, 3]]);
        assert_eq!(Combinations::new(3, 0).count(), 1);
        assert_eq!(Combinations::new(2, 3).count(), 0);
        assert_eq!(Combinations::new(10, 4).count(), 210);
    }

    #[test]
    fn weight_vectors_count() {
        let mut seen = std::collections::HashSet::new();
        for_each_weight_vector(6, 2, 4, |v| {
            assert_eq!(v.iter().filter(|&&x| x != 0).count(), 2);
            assert!(seen.insert(v.to_vec()));
        });
        assert_eq!(seen.len(), 15 * 9);
        assert_eq!(ball_size(6, 2, 4), 1 + 18 + 135);
    }
}
