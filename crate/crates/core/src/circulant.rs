//! Circulant matrices over GF(2^l), stored by their first row.
//!
//! Row `i` of the expansion is the first row cyclically shifted right by `i`
//! places, so a circulant with first row `c` equals `sum_j c_j mu^j` where
//! `mu` is the shift matrix with first row `e_1`. Multiplying circulants is
//! therefore multiplication in GF(2^l)[x] / (x^p - 1).

use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::DenseMatrix;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Circulant {
    first_row: Vec<u16>,
    degree: u8,
}

impl Circulant {
    pub fn new(first_row: Vec<u16>, degree: u8) -> Result<Self> {
        let field = Field::get(degree)?;
        if first_row.is_empty() {
            return Err(Error::InvalidParameter("circulant size must be at least 1".into()));
        }
        if let Some(&bad) = first_row.iter().find(|&&x| !field.contains(x)) {
            return Err(Error::InvalidParameter(format!("{bad:#x} is not an element of GF(2^{degree})")));
        }
        Ok(Circulant { first_row, degree })
    }

    /// Circulant whose first column is `col`.
    pub fn from_first_column(col: &[u16], degree: u8) -> Result<Self> {
        let p = col.len();
        // M[i][0] = c[(0 - i) mod p]
        let row = (0..p).map(|j| col[(p - j) % p]).collect();
        Self::new(row, degree)
    }

    /// Weight-`|support|` binary circulant with ones in `support` of its first column.
    pub fn binary_from_column_support(p: usize, support: &[usize]) -> Result<Self> {
        let mut col = vec![0u16; p];
        for &s in support {
            if s >= p {
                return Err(Error::InvalidParameter(format!("support index {s} >= {p}")));
            }
            col[s] = 1;
        }
        Self::from_first_column(&col, 1)
    }

    pub fn identity(p: usize, degree: u8) -> Result<Self> {
        let mut row = vec![0u16; p.max(1)];
        row[0] = 1;
        Self::new(row, degree)
    }

    /// The shift matrix `mu` (first row `e_1`).
    pub fn shift(p: usize, degree: u8) -> Result<Self> {
        let mut row = vec![0u16; p.max(1)];
        row[1 % p.max(1)] = 1;
        Self::new(row, degree)
    }

    pub fn size(&self) -> usize {
        self.first_row.len()
    }

    pub fn degree(&self) -> u8 {
        self.degree
    }

    pub fn first_row(&self) -> &[u16] {
        &self.first_row
    }

    pub fn first_column(&self) -> Vec<u16> {
        let p = self.size();
        (0..p).map(|i| self.first_row[(p - i) % p]).collect()
    }

    /// Entry at row `r`, column `c`.
    #[inline]
    pub fn entry(&self, r: usize, c: usize) -> u16 {
        let p = self.size();
        self.first_row[(c + p - r % p) % p]
    }

    /// Row weight (equal to column weight).
    pub fn weight(&self) -> usize {
        self.first_row.iter().filter(|&&x| x != 0).count()
    }

    pub fn expand(&self) -> DenseMatrix {
        let p = self.size();
        DenseMatrix::from_fn(p, p, self.degree, |r, c| self.entry(r, c)).expect("degree validated on construction")
    }

    fn check(&self, other: &Circulant) -> Result<()> {
        if self.degree != other.degree {
            return Err(Error::DegreeMismatch(self.degree, other.degree));
        }
        if self.size() != other.size() {
            return Err(Error::DimensionMismatch(format!("circulants of size {} and {}", self.size(), other.size())));
        }
        Ok(())
    }

    pub fn add(&self, other: &Circulant) -> Result<Circulant> {
        self.check(other)?;
        let row = self.first_row.iter().zip(&other.first_row).map(|(a, b)| a ^ b).collect();
        Ok(Circulant { first_row: row, degree: self.degree })
    }

    /// Product as polynomials modulo `x^p - 1`.
    pub fn mul(&self, other: &Circulant) -> Result<Circulant> {
        self.check(other)?;
        let f = Field::get(self.degree)?;
        let p = self.size();
        let mut row = vec![0u16; p];
        for (i, &a) in self.first_row.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.first_row.iter().enumerate() {
                row[(i + j) % p] ^= f.mul(a, b);
            }
        }
        Ok(Circulant { first_row: row, degree: self.degree })
    }

    /// Whether the expansion has full rank.
    ///
    /// Over GF(2) with `p` prime and 2 a primitive root mod `p`, the ring
    /// splits as GF(2) x GF(2)[x]/Phi_p(x), both fields, and the check reduces to
    /// odd weight plus "not the all-ones row". Everything else uses dense rank.
    pub fn is_invertible(&self) -> bool {
        let p = self.size();
        if self.degree == 1 && p > 2 && is_prime(p as u64) && is_primitive_root(2, p as u64).unwrap_or(false) {
            return self.is_invertible_crt();
        }
        self.is_invertible_dense()
    }

    pub fn is_invertible_dense(&self) -> bool {
        self.expand().rank() == self.size()
    }

    /// Fast path; only meaningful for binary circulants with 2 primitive mod p.
    pub fn is_invertible_crt(&self) -> bool {
        let w = self.weight();
        // image in GF(2)[x]/(x - 1) is the parity of the weight; a degree < p
        // polynomial is a multiple of Phi_p only if it is 0 or Phi_p itself
        w % 2 == 1 && w != self.size()
    }

    pub fn to_text(&self) -> String {
        let f = Field::get(self.degree).expect("validated degree");
        let row: Vec<String> = self.first_row.iter().map(|&x| f.format(x)).collect();
        format!("{} {}\n{}\n", self.size(), self.degree, row.join(" "))
    }

    pub fn read_text<'a>(lines: &mut impl Iterator<Item = &'a str>) -> Result<Circulant> {
        let header = lines.next().ok_or_else(|| Error::Parse("missing circulant header".into()))?;
        let parts: Vec<&str> = header.split_whitespace().collect();
        let [p, l] = parts[..] else {
            return Err(Error::Parse(format!("circulant header {header:?} must be `p l`")));
        };
        let p: usize = p.parse().map_err(|e| Error::Parse(format!("bad p: {e}")))?;
        let l: u8 = l.parse().map_err(|e| Error::Parse(format!("bad l: {e}")))?;
        let f = Field::get(l)?;
        let line = lines.next().ok_or_else(|| Error::Parse("missing circulant row".into()))?;
        let row: Vec<u16> = line.split(' ').map(|t| f.parse(t)).collect::<Result<_>>()?;
        if row.len() != p {
            return Err(Error::Parse(format!("circulant row has {} entries, expected {p}", row.len())));
        }
        Circulant::new(row, l)
    }

    pub fn from_text(s: &str) -> Result<Circulant> {
        Self::read_text(&mut s.lines())
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = (acc as u128 * b as u128 % m as u128) as u64;
        }
        b = (b as u128 * b as u128 % m as u128) as u64;
        e >>= 1;
    }
    acc
}

/// Multiplicative order of `g` modulo `p`.
pub fn multiplicative_order(g: u64, p: u64) -> Option<u64> {
    if p < 2 || g.is_multiple_of(p) {
        return None;
    }
    let mut x = g % p;
    for k in 1..p {
        if x == 1 {
            return Some(k);
        }
        x = x * (g % p) % p;
    }
    None
}

/// Whether `g` generates the multiplicative group mod the prime `p`.
pub fn is_primitive_root(g: u64, p: u64) -> Result<bool> {
    if !is_prime(p) {
        return Err(Error::InvalidParameter(format!("{p} is not prime")));
    }
    if g == 0 || g >= p {
        return Err(Error::InvalidParameter(format!("{g} is not in 1..{p}")));
    }
    let n = p - 1;
    // g is primitive iff g^(n/q) != 1 for every prime q | n
    let mut rest = n;
    let mut q = 2;
    while q * q <= rest {
        if rest.is_multiple_of(q) {
            if pow_mod(g, n / q, p) == 1 {
                return Ok(false);
            }
            while rest.is_multiple_of(q) {
                rest /= q;
            }
        }
        q += 1;
    }
    if rest > 1 && pow_mod(g, n / rest, p) == 1 {
        return Ok(false);
    }
    Ok(p == 2 || n > 0 && pow_mod(g, n, p) == 1)
}

/// Search bound for [`find_special_prime`].
pub const SPECIAL_PRIME_SEARCH_LIMIT: u64 = 1 << 24;

/// Smallest prime `p >= min` with `(p - 1) / 4` also prime; 2 is then a
/// primitive root modulo `p`.
pub fn find_special_prime(min: u64) -> Result<u64> {
    if min < 5 {
        return Err(Error::InvalidParameter(format!("minimum {min} must be at least 5")));
    }
    let start = min + (4 - (min - 1) % 4) % 4; // first candidate with p = 1 mod 4
    let mut p = start;
    while p <= SPECIAL_PRIME_SEARCH_LIMIT {
        if is_prime(p) && is_prime((p - 1) / 4) {
            return Ok(p);
        }
        p += 4;
    }
    Err(Error::NotFound(format!("no p = 4q + 1 with p, q prime in [{min}, {SPECIAL_PRIME_SEARCH_LIMIT}]")))
}
