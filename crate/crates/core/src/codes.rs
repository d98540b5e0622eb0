//! Linear-code primitives: weights, duals, minimum distance, reference
//! constructions and an exhaustive syndrome-table decoder.

use std::collections::HashMap;

use crate::combin::{ball_size, for_each_weight_vector};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::DenseMatrix;

/// Default cap on the number of codewords enumerated by [`min_distance_bruteforce`].
pub const DEFAULT_ENUMERATION_BOUND: u128 = 1 << 20;

/// Default cap on the number of stored error patterns in a [`SyndromeDecoder`].
pub const DEFAULT_TABLE_BOUND: u128 = 1 << 22;

pub fn hamming_weight(v: &[u16]) -> usize {
    v.iter().filter(|&&x| x != 0).count()
}

pub fn hamming_distance(x: &[u16], y: &[u16]) -> Result<usize> {
    if x.len() != y.len() {
        return Err(Error::DimensionMismatch(format!("vectors of length {} and {}", x.len(), y.len())));
    }
    Ok(x.iter().zip(y).filter(|(a, b)| a != b).count())
}

/// Largest `t` with `2t + 1 <= d`.
pub fn error_capacity(d: usize) -> usize {
    d.saturating_sub(1) / 2
}

/// A full-rank `(n - k) × n` matrix `H` with `G · H^T = 0`.
///
/// Applied to a parity-check matrix it returns a generator of the same code,
/// since the dual of the dual is the code itself.
pub fn parity_from_generator(g: &DenseMatrix) -> Result<DenseMatrix> {
    let (k, n) = (g.rows(), g.cols());
    let (sys, perm) = g.systematic_form()?;
    // sys = T·G·P = [I | A]  =>  [A^T | I] annihilates sys, and H = [A^T | I]·P^-1
    let a = sys.select_columns(&(k..n).collect::<Vec<_>>());
    let h_sys = a.transpose().hstack(&DenseMatrix::identity(n - k, g.degree())?)?;
    h_sys.permute_columns(&perm.inverse())
}

/// Alias of [`parity_from_generator`] read in the other direction.
pub fn generator_from_parity(h: &DenseMatrix) -> Result<DenseMatrix> {
    parity_from_generator(h)
}

/// An `[n, k]` code over GF(2^l) with generator and/or parity-check matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearCode {
    generator: Option<DenseMatrix>,
    parity: Option<DenseMatrix>,
    n: usize,
    k: usize,
    degree: u8,
}

impl LinearCode {
    pub fn from_generator(g: DenseMatrix) -> Result<Self> {
        let h = parity_from_generator(&g)?;
        Ok(LinearCode { n: g.cols(), k: g.rows(), degree: g.degree(), generator: Some(g), parity: Some(h) })
    }

    pub fn from_parity(h: DenseMatrix) -> Result<Self> {
        let g = generator_from_parity(&h)?;
        Ok(LinearCode { n: h.cols(), k: g.rows(), degree: h.degree(), generator: Some(g), parity: Some(h) })
    }

    /// Both matrices supplied; checks rank and `G · H^T = 0`.
    pub fn new(g: DenseMatrix, h: DenseMatrix) -> Result<Self> {
        if g.cols() != h.cols() {
            return Err(Error::DimensionMismatch("generator and parity lengths differ".into()));
        }
        let (k, n) = (g.rows(), g.cols());
        if g.rank() != k {
            return Err(Error::RankDeficient { rank: g.rank(), expected: k });
        }
        if h.rank() != h.rows() || h.rows() != n - k {
            return Err(Error::RankDeficient { rank: h.rank(), expected: n - k });
        }
        if !g.mul(&h.transpose())?.is_zero() {
            return Err(Error::Structure("G · H^T is not zero".into()));
        }
        Ok(LinearCode { n, k, degree: g.degree(), generator: Some(g), parity: Some(h) })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn degree(&self) -> u8 {
        self.degree
    }

    pub fn generator(&self) -> Option<&DenseMatrix> {
        self.generator.as_ref()
    }

    pub fn parity(&self) -> Option<&DenseMatrix> {
        self.parity.as_ref()
    }

    /// The dual code: generator and parity swap roles.
    pub fn dual(&self) -> LinearCode {
        LinearCode {
            generator: self.parity.clone(),
            parity: self.generator.clone(),
            n: self.n,
            k: self.n - self.k,
            degree: self.degree,
        }
    }
}

/// Exact minimum distance by enumerating all nonzero messages `m` and the codewords `m · G`.
pub fn min_distance_bruteforce(code: &LinearCode) -> Result<usize> {
    min_distance_bounded(code, DEFAULT_ENUMERATION_BOUND)
}

pub fn min_distance_bounded(code: &LinearCode, bound: u128) -> Result<usize> {
    let g = code.generator().ok_or_else(|| Error::InvalidParameter("code has no generator matrix".into()))?;
    let (k, n) = (g.rows(), g.cols());
    if k == 0 {
        return Err(Error::InvalidParameter("the zero code has no minimum distance".into()));
    }
    let f = g.field();
    let q = f.size() as u128;
    let total = q.checked_pow(k as u32).unwrap_or(u128::MAX);
    if total > bound {
        return Err(Error::TooLarge { what: "codeword enumeration", size: total, bound });
    }
    // Odometer over messages; each step only touches the rows whose digit changed.
    let mut msg = vec![0u16; k];
    let mut word = vec![0u16; n];
    let mut best = usize::MAX;
    'outer: loop {
        let mut i = k;
        loop {
            if i == 0 {
                break 'outer;
            }
            i -= 1;
            let old = msg[i];
            let new = if (old as usize) + 1 < f.size() { old + 1 } else { 0 };
            msg[i] = new;
            let delta = old ^ new;
            for (w, &gv) in word.iter_mut().zip(g.row(i)) {
                *w ^= f.mul(delta, gv);
            }
            if new != 0 {
                break;
            }
        }
        best = best.min(hamming_weight(&word));
        if best == 1 {
            break;
        }
    }
    Ok(best)
}

/// Generator of the `[2^r, r, 2^(r-1)]` Hadamard-type code: column `i` is `i`
/// in binary, most significant bit in row 0.
pub fn hadamard_generator(r: usize) -> Result<DenseMatrix> {
    if r == 0 || r >= usize::BITS as usize {
        return Err(Error::InvalidParameter(format!("unsupported r = {r}")));
    }
    DenseMatrix::from_fn(r, 1 << r, 1, |row, col| ((col >> (r - 1 - row)) & 1) as u16)
}

/// Evaluate a polynomial given by low-to-high coefficients.
pub fn poly_eval(field: &Field, coeffs: &[u16], x: u16) -> u16 {
    coeffs.iter().rev().fold(0, |acc, &c| field.mul(acc, x) ^ c)
}

/// `H = V · D` with `V[j][i] = p_i^j` for `j < deg g` and `D = diag(1 / g(p_i))`.
pub fn goppa_parity(goppa: &[u16], points: &[u16], degree: u8) -> Result<DenseMatrix> {
    let f = Field::get(degree)?;
    let t = goppa.iter().rposition(|&c| c != 0).ok_or_else(|| Error::InvalidParameter("Goppa polynomial is zero".into()))?;
    if t == 0 {
        return Err(Error::InvalidParameter("Goppa polynomial must have degree at least 1".into()));
    }
    let mut seen = vec![false; f.size()];
    let mut scale = Vec::with_capacity(points.len());
    for &p in points {
        if !f.contains(p) {
            return Err(Error::InvalidParameter(format!("{p:#x} not in GF(2^{degree})")));
        }
        if std::mem::replace(&mut seen[p as usize], true) {
            return Err(Error::DuplicatePoint(p));
        }
        let gp = poly_eval(f, goppa, p);
        if gp == 0 {
            return Err(Error::InvalidPoint(p));
        }
        scale.push(f.inv(gp)?);
    }
    DenseMatrix::from_fn(t, points.len(), degree, |j, i| f.mul(f.pow(points[i], j as u64), scale[i]))
}

/// Bounded-distance decoder backed by a table from syndrome to the
/// lowest-weight error pattern that produces it.
///
/// Ties between equal-weight patterns keep the lexicographically smaller
/// vector. If any two patterns of weight `<= t` share a syndrome the table
/// is still usable, but [`SyndromeDecoder::is_unique`] reports `false`:
/// `t` then exceeds the code's error-correction capacity.
#[derive(Debug, Clone)]
pub struct SyndromeDecoder {
    parity: DenseMatrix,
    capacity: usize,
    table: HashMap<Vec<u16>, Vec<u16>>,
    collisions: usize,
}

impl SyndromeDecoder {
    pub fn build(h: &DenseMatrix, t: usize) -> Result<Self> {
        Self::build_bounded(h, t, DEFAULT_TABLE_BOUND)
    }

    pub fn build_bounded(h: &DenseMatrix, t: usize, bound: u128) -> Result<Self> {
        let n = h.cols();
        let q = h.field().size();
        let size = ball_size(n, t, q);
        if size > bound {
            return Err(Error::TooLarge { what: "syndrome table", size, bound });
        }
        let mut table: HashMap<Vec<u16>, Vec<u16>> = HashMap::with_capacity(size as usize);
        let mut collisions = 0;
        for w in 0..=t.min(n) {
            for_each_weight_vector(n, w, q, |e| {
                let s = h.mul_vec(e).expect("length matches");
                match table.get_mut(&s) {
                    None => {
                        table.insert(s, e.to_vec());
                    }
                    Some(existing) => {
                        collisions += 1;
                        if hamming_weight(existing) == w && e < existing.as_slice() {
                            *existing = e.to_vec();
                        }
                    }
                }
            });
        }
        Ok(SyndromeDecoder { parity: h.clone(), capacity: t, table, collisions })
    }

    pub fn parity(&self) -> &DenseMatrix {
        &self.parity
    }

    pub fn capacity(&self) -> usize {
        self.capacity
    }

    pub fn table_len(&self) -> usize {
        self.table.len()
    }

    /// Error patterns of weight `<= t` whose syndrome was already taken.
    pub fn collisions(&self) -> usize {
        self.collisions
    }

    /// Whether every pattern of weight `<= t` has its own syndrome.
    pub fn is_unique(&self) -> bool {
        self.collisions == 0
    }

    pub fn lookup(&self, syndrome: &[u16]) -> Option<&[u16]> {
        self.table.get(syndrome).map(Vec::as_slice)
    }

    /// Error pattern for a syndrome.
    pub fn decode_syndrome(&self, syndrome: &[u16]) -> Result<Vec<u16>> {
        if syndrome.len() != self.parity.rows() {
            return Err(Error::DimensionMismatch(format!(
                "syndrome of length {}, expected {}",
                syndrome.len(),
                self.parity.rows()
            )));
        }
        self.lookup(syndrome).map(<[u16]>::to_vec).ok_or(Error::DecodingFailure)
    }

    /// Returns `(codeword, error)` with `received = codeword + error`.
    pub fn decode(&self, received: &[u16]) -> Result<(Vec<u16>, Vec<u16>)> {
        let s = self.parity.mul_vec(received)?;
        let e = self.decode_syndrome(&s)?;
        let c = received.iter().zip(&e).map(|(x, y)| x ^ y).collect();
        Ok((c, e))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha20Rng;

    fn m(rows: &[&[u16]], l: u8) -> DenseMatrix {
        DenseMatrix::from_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>(), l).unwrap()
    }

    /// Plain enumeration of every message, independent of the odometer.
    fn oracle_min_distance(g: &DenseMatrix) -> usize {
        let q = g.field().size();
        let k = g.rows();
        let mut best = usize::MAX;
        for idx in 1..q.pow(k as u32) {
            let msg: Vec<u16> = (0..k).map(|i| ((idx / q.pow(i as u32)) % q) as u16).collect();
            best = best.min(hamming_weight(&g.vec_mul(&msg).unwrap()));
        }
        best
    }

    #[test]
    fn weights_and_distances() {
        assert_eq!(hamming_weight(&[0, 0, 0]), 0);
        assert_eq!(hamming_weight(&[1, 0, 1, 1]), 3);
        assert_eq!(hamming_distance(&[1, 2, 3], &[1, 2, 3]).unwrap(), 0);
        assert_eq!(hamming_distance(&[1, 2, 3], &[1, 0, 2]).unwrap(), 2);
        assert!(hamming_distance(&[1], &[1, 2]).is_err());
    }

    #[test]
    fn capacity_formula() {
        assert_eq!(error_capacity(1), 0);
        assert_eq!(error_capacity(5), 2);
        for t in 0..20 {
            assert_eq!(error_capacity(2 * t + 1), t);
        }
    }

    #[test]
    fn hadamard_matches_displayed_matrix() {
        let g = hadamard_generator(3).unwrap();
        assert_eq!(g.to_rows(), vec![vec![0, 0, 0, 0, 1, 1, 1, 1], vec![0, 0, 1, 1, 0, 0, 1, 1], vec![0, 1, 0, 1, 0, 1, 0, 1],]);
        assert_eq!(hadamard_generator(1).unwrap().to_rows(), vec![vec![0, 1]]);
        let g5 = hadamard_generator(5).unwrap();
        let cols: std::collections::HashSet<_> = (0..32).map(|c| g5.column(c)).collect();
        assert_eq!(cols.len(), 32);
    }

    #[test]
    fn min_distance_examples() {
        for r in 1..=6 {
            let code = LinearCode::from_generator(hadamard_generator(r).unwrap()).unwrap();
            assert_eq!(min_distance_bruteforce(&code).unwrap(), 1 << (r - 1));
        }
        let rep = LinearCode::from_generator(m(&[&[1, 1, 1]], 1)).unwrap();
        assert_eq!(min_distance_bruteforce(&rep).unwrap(), 3);

        let mut rng = ChaCha20Rng::seed_from_u64(21);
        let mut done = 0;
        while done < 10 {
            let g = DenseMatrix::from_fn(2, 6, 2, |_, _| rng.gen_range(0..4)).unwrap();
            if g.rank() < 2 {
                continue;
            }
            let code = LinearCode::from_generator(g.clone()).unwrap();
            assert_eq!(min_distance_bruteforce(&code).unwrap(), oracle_min_distance(&g));
            done += 1;
        }

        let big = LinearCode::from_generator(DenseMatrix::identity(21, 1).unwrap()).unwrap();
        assert!(matches!(min_distance_bruteforce(&big), Err(Error::TooLarge { .. })));
    }

    #[test]
    fn parity_examples() {
        let g = m(&[&[1, 0, 1], &[0, 1, 1]], 1);
        assert_eq!(parity_from_generator(&g).unwrap(), m(&[&[1, 1, 1]], 1));

        let mut rng = ChaCha20Rng::seed_from_u64(4);
        for l in 1..=3 {
            for _ in 0..20 {
                let g = DenseMatrix::from_fn(3, 7, l, |_, _| rng.gen_range(0..(1 << l))).unwrap();
                if g.rank() < 3 {
                    assert!(parity_from_generator(&g).is_err());
                    continue;
                }
                let h = parity_from_generator(&g).unwrap();
                assert_eq!((h.rows(), h.rank()), (4, 4));
                assert!(g.mul(&h.transpose()).unwrap().is_zero());
                let gg = parity_from_generator(&h).unwrap();
                assert_eq!(gg.vstack(&g).unwrap().rank(), 3);
                let code = LinearCode::new(g.clone(), h.clone()).unwrap();
                assert_eq!(code.dual().k(), 4);
            }
        }
    }

    #[test]
    fn goppa_examples() {
        let f = Field::get(3).unwrap();
        let g = [1u16, 1]; // x + 1
        let points: Vec<u16> = (0..8).filter(|&x| x != 1).collect();
        let h = goppa_parity(&g, &points, 3).unwrap();
        assert_eq!(h.rows(), 1);
        for (i, &p) in points.iter().enumerate() {
            assert_eq!(h.get(0, i), f.inv(p ^ 1).unwrap());
        }
        assert_eq!(goppa_parity(&g, &[0, 1, 2], 3), Err(Error::InvalidPoint(1)));
        assert_eq!(goppa_parity(&g, &[0, 2, 2], 3), Err(Error::DuplicatePoint(2)));

        // x^2 + x + α over GF(16), evaluated away from its roots
        let g2 = [2u16, 1, 1];
        let f4 = Field::get(4).unwrap();
        let pts: Vec<u16> = f4.elements().filter(|&x| poly_eval(f4, &g2, x) != 0).collect();
        let h = goppa_parity(&g2, &pts, 4).unwrap();
        for (i, &p) in pts.iter().enumerate() {
            let scale = f4.inv(poly_eval(f4, &g2, p)).unwrap();
            assert_eq!(h.get(0, i), scale);
            assert_eq!(h.get(1, i), f4.mul(p, scale));
        }
        assert_eq!(h.rank(), 2);
        let gen = generator_from_parity(&h).unwrap();
        assert!(gen.mul(&h.transpose()).unwrap().is_zero());
    }

    #[test]
    fn decoder_examples() {
        // [7,4] Hamming code
        let h = m(&[&[1, 0, 1, 0, 1, 0, 1], &[0, 1, 1, 0, 0, 1, 1], &[0, 0, 0, 1, 1, 1, 1]], 1);
        let dec = SyndromeDecoder::build(&h, 1).unwrap();
        assert!(dec.is_unique());
        let g = generator_from_parity(&h).unwrap();
        let c = g.vec_mul(&[1, 0, 1, 1]).unwrap();
        assert_eq!(dec.decode(&c).unwrap(), (c.clone(), vec![0; 7]));
        for i in 0..7 {
            let mut x = c.clone();
            x[i] ^= 1;
            let (cc, e) = dec.decode(&x).unwrap();
            assert_eq!(cc, c);
            assert_eq!(hamming_weight(&e), 1);
        }
        // a perfect code leaves no syndrome unreached, so use a longer code for failures
        let h = m(&[&[1, 1, 0, 1, 0, 0], &[0, 1, 1, 0, 1, 0], &[1, 0, 1, 0, 0, 1]], 1);
        let dec = SyndromeDecoder::build(&h, 1).unwrap();
        assert!(dec.is_unique());
        let mut failures = 0;
        for_each_weight_vector(6, 2, 2, |e| {
            let s = h.mul_vec(e).unwrap();
            if dec.lookup(&s).is_none() {
                failures += 1;
                assert_eq!(dec.decode(e), Err(Error::DecodingFailure));
            }
        });
        assert!(failures > 0);
    }

    #[test]
    fn decoder_recovers_all_errors_within_capacity() {
        let mut rng = ChaCha20Rng::seed_from_u64(77);
        let mut checked = 0;
        while checked < 6 {
            let l = 1 + (checked % 2) as u8;
            let n = 10;
            let k = if l == 1 { 3 } else { 4 };
            let g = DenseMatrix::from_fn(k, n, l, |_, _| rng.gen_range(0..(1 << l))).unwrap();
            if g.rank() < k {
                continue;
            }
            let code = LinearCode::from_generator(g.clone()).unwrap();
            let d = min_distance_bruteforce(&code).unwrap();
            let t = error_capacity(d).min(2);
            if t == 0 {
                continue;
            }
            let dec = SyndromeDecoder::build(code.parity().unwrap(), t).unwrap();
            assert!(dec.is_unique());
            let q = 1usize << l;
            for _ in 0..5 {
                let msg: Vec<u16> = (0..k).map(|_| rng.gen_range(0..q) as u16).collect();
                let c = g.vec_mul(&msg).unwrap();
                for w in 0..=t {
                    for_each_weight_vector(n, w, q, |e| {
                        let x: Vec<u16> = c.iter().zip(e).map(|(a, b)| a ^ b).collect();
                        assert_eq!(dec.decode(&x).unwrap(), (c.clone(), e.to_vec()));
                    });
                }
            }
            checked += 1;
        }
    }

    #[test]
    fn decoder_detects_overcapacity_and_bounds() {
        // repetition code [1 1] has d = 2, so t = 1 is ambiguous
        let h = m(&[&[1, 1]], 1);
        let dec = SyndromeDecoder::build(&h, 1).unwrap();
        assert!(!dec.is_unique());
        // tie broken towards the lexicographically smaller vector
        assert_eq!(dec.decode_syndrome(&[1]).unwrap(), vec![0, 1]);
        let wide = DenseMatrix::zeros(4, 64, 3).unwrap();
        assert!(matches!(SyndromeDecoder::build(&wide, 4), Err(Error::TooLarge { .. })));
    }
}
