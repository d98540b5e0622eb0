//! Arithmetic in GF(2^l) for 1 <= l <= 16.
//!
//! Every degree has one fixed reduction polynomial (see [`MODULI`]), so an
//! element's bit pattern means the same thing in every serialized key.
//! Bit `i` of an element is the coefficient of `x^i`.
//!
//! Field contexts are built lazily, once per degree, and then shared as
//! `&'static Field`. They hold log/antilog tables so that multiplication and
//! inversion are table lookups.

use std::fmt;
use std::sync::OnceLock;

use crate::error::{Error, Result};

pub const MAX_DEGREE: u8 = 16;

/// Reduction polynomial for each degree `l`, indexed by `l`, bit `i` = coefficient of `x^i`.
pub const MODULI: [u32; 17] = [
    0,
    0b11,        // x + 1 (GF(2) itself)
    0b111,       // x^2 + x + 1
    0b1011,      // x^3 + x + 1
    0b1_0011,    // x^4 + x + 1
    0b10_0101,   // x^5 + x^2 + 1
    0b100_0011,  // x^6 + x + 1
    0b1000_0011, // x^7 + x + 1
    0x11b,       // x^8 + x^4 + x^3 + x + 1
    0x211,       // x^9 + x^4 + 1
    0x409,       // x^10 + x^3 + 1
    0x805,       // x^11 + x^2 + 1
    0x1053,      // x^12 + x^6 + x^4 + x + 1
    0x201b,      // x^13 + x^4 + x^3 + x + 1
    0x4443,      // x^14 + x^10 + x^6 + x + 1
    0x8003,      // x^15 + x + 1
    0x1100b,     // x^16 + x^12 + x^3 + x + 1
];

static FIELDS: [OnceLock<Field>; 17] = [const { OnceLock::new() }; 17];

/// Context for GF(2^l): modulus plus log/antilog tables.
pub struct Field {
    degree: u8,
    modulus: u32,
    generator: u16,
    /// `exp[i] = g^i`, stored twice over so `log a + log b` never needs a reduction.
    exp: Vec<u16>,
    /// `log[a]` for `a != 0`; `log[0]` is unused.
    log: Vec<u16>,
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Field")
            .field("degree", &self.degree)
            .field("modulus", &format_args!("{:#x}", self.modulus))
            .field("generator", &self.generator)
            .finish()
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.degree == other.degree
    }
}

impl Eq for Field {}

/// Carry-less multiply of two field elements followed by reduction.
fn mul_reduce(a: u16, b: u16, degree: u8, modulus: u32) -> u16 {
    let (mut a, mut b) = (a as u32, b as u32);
    let top = 1u32 << degree;
    let mut acc = 0u32;
    while b != 0 {
        if b & 1 == 1 {
            acc ^= a;
        }
        b >>= 1;
        a <<= 1;
        if a & top != 0 {
            a ^= modulus;
        }
    }
    acc as u16
}

impl Field {
    /// Shared context for GF(2^l).
    pub fn get(degree: u8) -> Result<&'static Field> {
        if degree == 0 || degree > MAX_DEGREE {
            return Err(Error::UnsupportedDegree(degree));
        }
        Ok(FIELDS[degree as usize].get_or_init(|| Field::build(degree)))
    }

    fn build(degree: u8) -> Field {
        let modulus = MODULI[degree as usize];
        let order = (1usize << degree) - 1;
        // Search for a multiplicative generator. For primitive moduli this is 2 (= x).
        for g in 1..=order as u16 {
            let mut exp = Vec::with_capacity(2 * order);
            let mut log = vec![0u16; order + 1];
            let mut seen = vec![false; order + 1];
            let mut x = 1u16;
            let mut full = true;
            for i in 0..order {
                if seen[x as usize] {
                    full = false;
                    break;
                }
                seen[x as usize] = true;
                exp.push(x);
                log[x as usize] = i as u16;
                x = mul_reduce(x, g, degree, modulus);
            }
            if full && x == 1 {
                exp.extend_from_within(..);
                return Field { degree, modulus, generator: g, exp, log };
            }
        }
        panic!("modulus {modulus:#x} for degree {degree} is not irreducible");
    }

    pub fn degree(&self) -> u8 {
        self.degree
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    /// The generator used to build the log tables.
    pub fn generator(&self) -> u16 {
        self.generator
    }

    /// Number of elements, `2^l`.
    pub fn size(&self) -> usize {
        1usize << self.degree
    }

    /// Order of the multiplicative group, `2^l - 1`.
    pub fn order(&self) -> usize {
        self.size() - 1
    }

    /// Number of hex digits used to print one element.
    pub fn hex_width(&self) -> usize {
        (self.degree as usize).div_ceil(4)
    }

    pub fn contains(&self, x: u16) -> bool {
        (x as usize) < self.size()
    }

    /// Iterator over all field elements in numeric order.
    pub fn elements(&self) -> impl Iterator<Item = u16> {
        0..self.size() as u16
    }

    #[inline]
    pub fn add(&self, a: u16, b: u16) -> u16 {
        a ^ b
    }

    #[inline]
    pub fn mul(&self, a: u16, b: u16) -> u16 {
        if a == 0 || b == 0 {
            return 0;
        }
        self.exp[self.log[a as usize] as usize + self.log[b as usize] as usize]
    }

    pub fn inv(&self, a: u16) -> Result<u16> {
        if a == 0 {
            return Err(Error::DivisionByZero);
        }
        let l = self.log[a as usize] as usize;
        Ok(self.exp[(self.order() - l) % self.order()])
    }

    pub fn div(&self, a: u16, b: u16) -> Result<u16> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: u16, e: u64) -> u16 {
        if e == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let l = self.log[a as usize] as u64;
        self.exp[((l * (e % self.order() as u64)) % self.order() as u64) as usize]
    }

    /// Multiplication without the tables; used to cross-check them.
    pub fn mul_schoolbook(&self, a: u16, b: u16) -> u16 {
        mul_reduce(a, b, self.degree, self.modulus)
    }

    /// True when `x` lies in the prime subfield GF(2) = {0, 1}.
    pub fn in_prime_subfield(&self, x: u16) -> bool {
        x <= 1
    }

    pub fn format(&self, x: u16) -> String {
        format!("{:0width$x}", x, width = self.hex_width())
    }

    pub fn parse(&self, s: &str) -> Result<u16> {
        let v = u32::from_str_radix(s, 16).map_err(|e| Error::Parse(format!("bad field element {s:?}: {e}")))?;
        if v as usize >= self.size() {
            return Err(Error::Parse(format!("element {s:?} out of range for GF(2^{})", self.degree)));
        }
        Ok(v as u16)
    }
}

/// A standalone element of GF(2^l) that carries its degree.
///
/// Matrices store raw `u16` values next to a shared [`Field`]; this type is the
/// checked, self-describing form used at API boundaries.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FieldElement {
    bits: u16,
    degree: u8,
}

impl FieldElement {
    pub fn new(bits: u16, degree: u8) -> Result<Self> {
        let field = Field::get(degree)?;
        if !field.contains(bits) {
            return Err(Error::InvalidParameter(format!("{bits:#x} is not an element of GF(2^{degree})")));
        }
        Ok(FieldElement { bits, degree })
    }

    pub fn zero(degree: u8) -> Result<Self> {
        Self::new(0, degree)
    }

    pub fn one(degree: u8) -> Result<Self> {
        Self::new(1, degree)
    }

    pub fn bits(self) -> u16 {
        self.bits
    }

    pub fn degree(self) -> u8 {
        self.degree
    }

    pub fn is_zero(self) -> bool {
        self.bits == 0
    }

    fn field(self) -> &'static Field {
        // Construction already validated the degree.
        Field::get(self.degree).expect("validated degree")
    }

    fn check(self, other: Self) -> Result<()> {
        if self.degree != other.degree {
            return Err(Error::DegreeMismatch(self.degree, other.degree));
        }
        Ok(())
    }

    #[allow(clippy::should_implement_trait)]
    pub fn add(self, other: Self) -> Result<Self> {
        self.check(other)?;
        Ok(FieldElement { bits: self.bits ^ other.bits, degree: self.degree })
    }

    #[allow(clippy::should_implement_trait)]
    pub fn mul(self, other: Self) -> Result<Self> {
        self.check(other)?;
        Ok(FieldElement { bits: self.field().mul(self.bits, other.bits), degree: self.degree })
    }

    pub fn inv(self) -> Result<Self> {
        Ok(FieldElement { bits: self.field().inv(self.bits)?, degree: self.degree })
    }

    pub fn pow(self, e: u64) -> Self {
        FieldElement { bits: self.field().pow(self.bits, e), degree: self.degree }
    }

    pub fn to_hex(self) -> String {
        self.field().format(self.bits)
    }

    pub fn from_hex(s: &str, degree: u8) -> Result<Self> {
        let bits = Field::get(degree)?.parse(s)?;
        Ok(FieldElement { bits, degree })
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_hex())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha20Rng;

    /// Full polynomial product, then long division by the modulus.
    fn oracle_mul(a: u16, b: u16, degree: u8) -> u16 {
        let mut prod = 0u64;
        for i in 0..16 {
            if (b >> i) & 1 == 1 {
                prod ^= (a as u64) << i;
            }
        }
        let m = MODULI[degree as usize] as u64;
        for bit in (degree as u32..32).rev() {
            if (prod >> bit) & 1 == 1 {
                prod ^= m << (bit - degree as u32);
            }
        }
        prod as u16
    }

    fn fe(bits: u16, l: u8) -> FieldElement {
        FieldElement::new(bits, l).unwrap()
    }

    #[test]
    fn add_examples() {
        assert_eq!(fe(0b011, 3).add(fe(0b101, 3)).unwrap(), fe(0b110, 3));
        assert_eq!(fe(0b011, 3).add(fe(0, 3)).unwrap(), fe(0b011, 3));
        assert_eq!(fe(1, 1).add(fe(1, 1)).unwrap(), fe(0, 1));
    }

    #[test]
    fn mismatched_degrees_rejected() {
        assert_eq!(fe(1, 3).add(fe(1, 4)), Err(Error::DegreeMismatch(3, 4)));
        assert_eq!(fe(1, 3).mul(fe(1, 2)), Err(Error::DegreeMismatch(3, 2)));
    }

    #[test]
    fn mul_examples() {
        assert_eq!(oracle_mul(0b010, 0b011, 3), 0b110);
        assert_eq!(oracle_mul(0b010, 0b101, 3), 0b001);
        assert_eq!(fe(0b010, 3).mul(fe(0b011, 3)).unwrap(), fe(0b110, 3));
        assert_eq!(fe(0b010, 3).mul(fe(0b101, 3)).unwrap(), fe(0b001, 3));
        for l in 1..=16 {
            let f = Field::get(l).unwrap();
            for a in [0u16, 1, (f.size() - 1) as u16] {
                assert_eq!(f.mul(a, 1), a);
            }
        }
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(fe(0b010, 3).inv().unwrap(), fe(0b101, 3));
        assert_eq!(fe(0b10, 2).inv().unwrap(), fe(0b11, 2));
        for l in 1..=16 {
            assert_eq!(fe(1, l).inv().unwrap(), fe(1, l));
            assert_eq!(fe(0, l).inv(), Err(Error::DivisionByZero));
        }
        // exhaustive-search oracle over GF(8) and GF(4)
        for (l, a, expect) in [(3u8, 0b010u16, 0b101u16), (2, 0b10, 0b11)] {
            let found: Vec<u16> = (1..1u16 << l).filter(|&x| oracle_mul(a, x, l) == 1).collect();
            assert_eq!(found, vec![expect]);
        }
    }

    #[test]
    fn every_modulus_yields_a_field() {
        for l in 1..=16 {
            let f = Field::get(l).unwrap();
            assert_eq!(f.degree(), l);
            assert_eq!(f.pow(f.generator(), f.order() as u64), 1);
        }
        assert!(Field::get(0).is_err());
        assert!(Field::get(17).is_err());
    }

    #[test]
    fn field_axioms_exhaustive_small() {
        for l in 1..=4u8 {
            let f = Field::get(l).unwrap();
            let els: Vec<u16> = f.elements().collect();
            for &a in &els {
                for &b in &els {
                    assert_eq!(f.mul(a, b), oracle_mul(a, b, l));
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    for &c in &els {
                        assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                        assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                    }
                }
                if a != 0 {
                    assert_eq!(f.pow(a, f.order() as u64), 1);
                    // Lagrange via repeated multiplication rather than the log table
                    let mut acc = 1;
                    for _ in 0..f.order() {
                        acc = oracle_mul(acc, a, l);
                    }
                    assert_eq!(acc, 1);
                    assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
                }
            }
        }
    }

    #[test]
    fn tables_agree_with_oracle_on_random_pairs() {
        let mut rng = ChaCha20Rng::seed_from_u64(0x5eed);
        for l in [8u8, 16] {
            let f = Field::get(l).unwrap();
            for _ in 0..10_000 {
                let a = rng.gen_range(0..f.size()) as u16;
                let b = rng.gen_range(0..f.size()) as u16;
                assert_eq!(f.mul(a, b), oracle_mul(a, b, l));
                assert_eq!(f.mul(a, b), f.mul_schoolbook(a, b));
            }
        }
    }

    #[test]
    fn hex_is_fixed_width_lowercase() {
        assert_eq!(fe(0xa, 4).to_hex(), "a");
        assert_eq!(fe(0x3, 5).to_hex(), "03");
        assert_eq!(fe(0xbeef, 16).to_hex(), "beef");
        assert_eq!(FieldElement::from_hex("0b", 8).unwrap(), fe(0x0b, 8));
        assert!(FieldElement::from_hex("8", 3).is_err());
    }
}
