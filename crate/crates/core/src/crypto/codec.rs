//! Bijection between integers and exact-weight vectors over GF(2^l), and the
//! byte framing built on it.
//!
//! An index is split as `support_rank · (q-1)^t + value_rank`. Supports
//! `c_1 < … < c_t` are ranked by the combinadic `Σ C(c_i, i)`. Values on the
//! support are read as base-`(q-1)` digits `value - 1`, first position most
//! significant.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::codes::hamming_weight;
use crate::combin::binomial;
use crate::error::{Error, Result};
use crate::field::Field;

/// `C(n, t) · (2^l - 1)^t`.
pub fn codeword_count(n: usize, t: usize, l: u8) -> Result<BigUint> {
    let f = Field::get(l)?;
    Ok(binomial(n as u64, t as u64) * BigUint::from(f.order()).pow(t as u32))
}

/// The `index`-th vector of length `n` and weight exactly `t`.
pub fn cw_unrank(index: &BigUint, n: usize, t: usize, l: u8) -> Result<Vec<u16>> {
    let total = codeword_count(n, t, l)?;
    if index >= &total {
        return Err(Error::InvalidParameter(format!("index {index} out of range 0..{total}")));
    }
    let radix = BigUint::from(Field::get(l)?.order());
    let (mut support_rank, mut value_rank) = index.div_rem(&radix.pow(t as u32));

    let mut support = vec![0usize; t];
    let mut upper = n;
    for i in (1..=t).rev() {
        // largest c < upper with C(c, i) <= support_rank
        let (mut lo, mut hi) = (i - 1, upper - 1);
        while lo < hi {
            let mid = (lo + hi).div_ceil(2);
            if binomial(mid as u64, i as u64) <= support_rank {
                lo = mid;
            } else {
                hi = mid - 1;
            }
        }
        support_rank -= binomial(lo as u64, i as u64);
        support[i - 1] = lo;
        upper = lo;
    }

    let mut v = vec![0u16; n];
    for &pos in support.iter().rev() {
        let (q, r) = value_rank.div_rem(&radix);
        v[pos] = 1 + r.to_u16().expect("digit below 2^16");
        value_rank = q;
    }
    Ok(v)
}

/// Inverse of [`cw_unrank`]; `v` must have weight exactly `t`.
pub fn cw_rank(v: &[u16], t: usize, l: u8) -> Result<BigUint> {
    let f = Field::get(l)?;
    let w = hamming_weight(v);
    if w != t {
        return Err(Error::InvalidParameter(format!("vector has weight {w}, expected {t}")));
    }
    if let Some(&bad) = v.iter().find(|&&x| !f.contains(x)) {
        return Err(Error::InvalidParameter(format!("{bad:#x} not in GF(2^{l})")));
    }
    let radix = BigUint::from(f.order());
    let mut support_rank = BigUint::zero();
    let mut value_rank = BigUint::zero();
    for (i, (pos, &x)) in v.iter().enumerate().filter(|(_, &x)| x != 0).enumerate() {
        support_rank += binomial(pos as u64, (i + 1) as u64);
        value_rank = value_rank * &radix + BigUint::from(x - 1);
    }
    Ok(support_rank * radix.pow(t as u32) + value_rank)
}

/// Smallest `k` with `base^k >= 256^nbytes`.
pub fn blocks_needed(nbytes: usize, base: &BigUint) -> Result<usize> {
    if base < &BigUint::from(2u8) {
        return Err(Error::InvalidParameter(format!("block capacity {base} is below 2")));
    }
    let target = BigUint::one() << (8 * nbytes);
    let mut k = 0;
    let mut acc = BigUint::one();
    while acc < target {
        acc *= base;
        k += 1;
    }
    Ok(k)
}

/// Read `bytes` as a big-endian integer and write it in base `base`,
/// most significant digit first, using exactly [`blocks_needed`] digits.
pub fn split_message(bytes: &[u8], base: &BigUint) -> Result<Vec<BigUint>> {
    let k = blocks_needed(bytes.len(), base)?;
    let mut value = BigUint::from_bytes_be(bytes);
    let mut digits = vec![BigUint::zero(); k];
    for d in digits.iter_mut().rev() {
        let (q, r) = value.div_rem(base);
        *d = r;
        value = q;
    }
    Ok(digits)
}

/// Inverse of [`split_message`].
pub fn join_message(digits: &[BigUint], base: &BigUint, nbytes: usize) -> Result<Vec<u8>> {
    if digits.len() != blocks_needed(nbytes, base)? {
        return Err(Error::InvalidCiphertext(format!("{} blocks for a {nbytes}-byte message", digits.len())));
    }
    let mut value = BigUint::zero();
    for d in digits {
        if d >= base {
            return Err(Error::InvalidCiphertext("block value exceeds its range".into()));
        }
        value = value * base + d;
    }
    let bytes = value.to_bytes_be();
    if nbytes == 0 {
        return if value.is_zero() {
            Ok(Vec::new())
        } else {
            Err(Error::InvalidCiphertext("message longer than declared".into()))
        };
    }
    if bytes.len() > nbytes {
        return Err(Error::InvalidCiphertext("message longer than declared".into()));
    }
    let mut out = vec![0u8; nbytes - bytes.len()];
    out.extend(bytes);
    Ok(out)
}

/// Vector of `len` symbols over GF(2^l) from an integer below `2^(l·len)`,
/// first symbol most significant.
pub fn symbols_from_index(index: &BigUint, len: usize, l: u8) -> Result<Vec<u16>> {
    let q = BigUint::from(Field::get(l)?.size());
    if index >= &q.pow(len as u32) {
        return Err(Error::InvalidParameter(format!("index {index} does not fit {len} symbols")));
    }
    let mut value = index.clone();
    let mut out = vec![0u16; len];
    for x in out.iter_mut().rev() {
        let (d, r) = value.div_rem(&q);
        *x = r.to_u16().expect("digit below 2^16");
        value = d;
    }
    Ok(out)
}

pub fn index_from_symbols(v: &[u16], l: u8) -> Result<BigUint> {
    let f = Field::get(l)?;
    let q = BigUint::from(f.size());
    let mut acc = BigUint::zero();
    for &x in v {
        if !f.contains(x) {
            return Err(Error::InvalidParameter(format!("{x:#x} not in GF(2^{l})")));
        }
        acc = acc * &q + BigUint::from(x);
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combin::for_each_weight_vector;
    use proptest::prelude::*;

    #[test]
    fn first_index() {
        assert_eq!(cw_unrank(&BigUint::zero(), 4, 1, 1).unwrap(), vec![1, 0, 0, 0]);
        assert_eq!(cw_unrank(&BigUint::from(3u8), 4, 1, 1).unwrap(), vec![0, 0, 0, 1]);
        assert!(cw_unrank(&BigUint::from(4u8), 4, 1, 1).is_err());
        assert_eq!(cw_unrank(&BigUint::zero(), 3, 0, 2).unwrap(), vec![0, 0, 0]);
    }

    #[test]
    fn exhaustive_bijection() {
        let (n, t, l) = (6, 2, 2);
        let total = codeword_count(n, t, l).unwrap();
        assert_eq!(total, BigUint::from(135u32));
        let mut seen = std::collections::HashSet::new();
        for i in 0..135u32 {
            let v = cw_unrank(&BigUint::from(i), n, t, l).unwrap();
            assert_eq!(hamming_weight(&v), t);
            assert_eq!(cw_rank(&v, t, l).unwrap(), BigUint::from(i));
            assert!(seen.insert(v));
        }
        let mut count = 0;
        for_each_weight_vector(n, t, 4, |v| {
            assert!(seen.contains(v));
            count += 1;
        });
        assert_eq!(count, 135);
    }

    #[test]
    fn rank_rejects_wrong_weight() {
        assert!(cw_rank(&[1, 1, 0], 1, 1).is_err());
        assert!(cw_rank(&[2, 0, 0], 1, 1).is_err());
    }

    #[test]
    fn framing_examples() {
        let base = BigUint::from(10u8);
        assert_eq!(blocks_needed(0, &base).unwrap(), 0);
        assert_eq!(blocks_needed(1, &base).unwrap(), 3);
        assert_eq!(blocks_needed(2, &BigUint::from(256u32)).unwrap(), 2);
        assert!(blocks_needed(1, &BigUint::one()).is_err());
        let digits = split_message(&[0x01, 0x00], &base).unwrap();
        assert_eq!(digits.iter().map(|d| d.to_u32().unwrap()).collect::<Vec<_>>(), vec![0, 0, 2, 5, 6]);
        assert_eq!(join_message(&digits, &base, 2).unwrap(), vec![1, 0]);
        assert!(join_message(&digits[1..], &base, 2).is_err());
        let too_big = vec![BigUint::from(9u8); 5];
        assert!(join_message(&too_big, &base, 2).is_err());
    }

    proptest! {
        #[test]
        fn unrank_rank_roundtrip(n in 1usize..40, t in 0usize..5, l in 1u8..5, seed in any::<u64>()) {
            prop_assume!(t <= n);
            let total = codeword_count(n, t, l).unwrap();
            let idx = BigUint::from(seed) % &total;
            let v = cw_unrank(&idx, n, t, l).unwrap();
            prop_assert_eq!(hamming_weight(&v), t);
            prop_assert_eq!(cw_rank(&v, t, l).unwrap(), idx);
        }

        #[test]
        fn message_roundtrip(bytes in proptest::collection::vec(any::<u8>(), 0..40), base in 2u64..1_000_000) {
            let base = BigUint::from(base);
            let digits = split_message(&bytes, &base).unwrap();
            prop_assert!(digits.iter().all(|d| d < &base));
            prop_assert_eq!(join_message(&digits, &base, bytes.len()).unwrap(), bytes);
        }

        #[test]
        fn symbols_roundtrip(len in 1usize..12, l in 1u8..5, seed in any::<u64>()) {
            let q = BigUint::from(1u32 << l).pow(len as u32);
            let idx = BigUint::from(seed) % &q;
            let v = symbols_from_index(&idx, len, l).unwrap();
            prop_assert_eq!(index_from_symbols(&v, l).unwrap(), idx);
        }
    }
}
