//! McEliece cryptosystem over a structured generator matrix.

use rand::seq::index::sample;
use rand::Rng;

use super::niederreiter::build_decoder;
use super::{parse_params, read_line, Params};
use crate::codes::{parity_from_generator, SyndromeDecoder};
use crate::error::{Error, Result};
use crate::linalg::{sample_permutation, sample_scrambler, DenseMatrix, Permutation};
use crate::qcgen::StackSpec;

pub const PRIVATE_HEADER: &str = "QCME v1";
pub const PUBLIC_HEADER: &str = "QCME-PUB v1";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct McEliecePublicKey {
    /// `t` is the error budget added on encryption.
    pub params: Params,
    /// `M' = S · M · P`.
    pub matrix: DenseMatrix,
}

impl McEliecePublicKey {
    pub fn k(&self) -> usize {
        self.matrix.rows()
    }

    pub fn n(&self) -> usize {
        self.matrix.cols()
    }

    pub fn errors(&self) -> usize {
        self.params.t
    }

    /// `c = pt · M' + e` with `e` of weight exactly the error budget.
    pub fn encrypt<R: Rng + ?Sized>(&self, pt: &[u16], rng: &mut R) -> Result<Vec<u16>> {
        let e = random_error(self.n(), self.errors(), self.matrix.field().size(), rng);
        self.encrypt_with_error(pt, &e)
    }

    /// `c = pt · M' + e` for a caller-chosen error.
    pub fn encrypt_with_error(&self, pt: &[u16], e: &[u16]) -> Result<Vec<u16>> {
        if pt.len() != self.k() || e.len() != self.n() {
            return Err(Error::DimensionMismatch(format!(
                "plaintext of length {} and error of length {} for a {}x{} key",
                pt.len(),
                e.len(),
                self.k(),
                self.n()
            )));
        }
        let mut c = self.matrix.vec_mul(pt)?;
        for (x, &y) in c.iter_mut().zip(e) {
            *x ^= y;
        }
        Ok(c)
    }

    pub fn to_text(&self) -> String {
        format!("{PUBLIC_HEADER}\n{}\n{}", self.params, self.matrix.to_text())
    }

    pub fn from_text(s: &str) -> Result<Self> {
        let mut lines = s.lines();
        let header = read_line(&mut lines, "header")?;
        if header == PRIVATE_HEADER {
            return Ok(McElieceKeyPair::read_body(&mut lines)?.public);
        }
        if header != PUBLIC_HEADER {
            return Err(Error::Parse(format!("expected {PUBLIC_HEADER:?}, found {header:?}")));
        }
        let params = parse_params(read_line(&mut lines, "parameters")?)?;
        let matrix = DenseMatrix::read_text(&mut lines)?;
        Ok(McEliecePublicKey { params, matrix })
    }
}

/// Uniform vector of length `n` and weight exactly `w` with nonzero entries below `q`.
pub fn random_error<R: Rng + ?Sized>(n: usize, w: usize, q: usize, rng: &mut R) -> Vec<u16> {
    let mut e = vec![0u16; n];
    for i in sample(rng, n, w.min(n)) {
        e[i] = rng.gen_range(1..q) as u16;
    }
    e
}

#[derive(Debug, Clone)]
pub struct McElieceKeyPair {
    pub scrambler: DenseMatrix,
    scrambler_inv: DenseMatrix,
    pub generator: DenseMatrix,
    generator_t: DenseMatrix,
    pub permutation: Permutation,
    decoder: SyndromeDecoder,
    pub public: McEliecePublicKey,
}

impl McElieceKeyPair {
    pub fn generate<R: Rng + ?Sized>(spec: &StackSpec, errors: usize, rng: &mut R) -> Result<Self> {
        let g = spec.generator();
        let s = sample_scrambler(g.rows(), 1, rng)?;
        let p = sample_permutation(g.cols(), rng)?;
        Self::from_parts(Params { p: spec.p(), m: spec.m(), l: 1, t: errors }, g, s, p)
    }

    /// Assemble a key pair from explicit parts; `S = I, P = I` gives `M' = M`.
    ///
    /// Fails with [`Error::Capacity`] unless the code of `g` separates every
    /// error pattern of weight at most `params.t`.
    pub fn from_parts(params: Params, g: DenseMatrix, s: DenseMatrix, perm: Permutation) -> Result<Self> {
        if s.rows() != g.rows() || perm.len() != g.cols() {
            return Err(Error::DimensionMismatch(format!(
                "S is {}x{}, P has {} points, M is {}x{}",
                s.rows(),
                s.cols(),
                perm.len(),
                g.rows(),
                g.cols()
            )));
        }
        let h = parity_from_generator(&g)?;
        let scrambler_inv = s.inverse()?;
        let decoder = build_decoder(&h, params.t)?;
        let matrix = s.mul(&g)?.permute_columns(&perm)?;
        Ok(McElieceKeyPair {
            scrambler: s,
            scrambler_inv,
            generator_t: g.transpose(),
            generator: g,
            permutation: perm,
            decoder,
            public: McEliecePublicKey { params, matrix },
        })
    }

    pub fn decoder(&self) -> &SyndromeDecoder {
        &self.decoder
    }

    /// Recover `pt` from `c = pt · S · M · P + e`.
    pub fn decrypt(&self, c: &[u16]) -> Result<Vec<u16>> {
        if c.len() != self.generator.cols() {
            return Err(Error::InvalidCiphertext(format!(
                "ciphertext of length {}, expected {}",
                c.len(),
                self.generator.cols()
            )));
        }
        // c · P^-1 = (pt · S) · M + e · P^-1
        let unpermuted = self.permutation.inverse().permute_vector(c);
        let (codeword, _) = self
            .decoder
            .decode(&unpermuted)
            .map_err(|_| Error::InvalidCiphertext("syndrome has no error pattern within the budget".into()))?;
        let scrambled = self
            .generator_t
            .solve_right(&codeword)
            .map_err(|_| Error::InvalidCiphertext("decoded word is not a codeword".into()))?;
        self.scrambler_inv.vec_mul(&scrambled)
    }

    pub fn to_text(&self) -> String {
        format!(
            "{PRIVATE_HEADER}\n{}\n{}{}{}\n{}",
            self.public.params,
            self.scrambler.to_text(),
            self.generator.to_text(),
            self.permutation.to_text(),
            self.public.matrix.to_text()
        )
    }

    pub fn from_text(s: &str) -> Result<Self> {
        let mut lines = s.lines();
        let header = read_line(&mut lines, "header")?;
        if header != PRIVATE_HEADER {
            return Err(Error::Parse(format!("expected {PRIVATE_HEADER:?}, found {header:?}")));
        }
        Self::read_body(&mut lines)
    }

    fn read_body<'a>(lines: &mut impl Iterator<Item = &'a str>) -> Result<Self> {
        let params = parse_params(read_line(lines, "parameters")?)?;
        let s = DenseMatrix::read_text(lines)?;
        let g = DenseMatrix::read_text(lines)?;
        let perm = Permutation::from_text(read_line(lines, "permutation")?)?;
        let public = DenseMatrix::read_text(lines)?;
        let kp = Self::from_parts(params, g, s, perm)?;
        if kp.public.matrix != public {
            return Err(Error::Parse("public matrix does not equal S · M · P".into()));
        }
        Ok(kp)
    }
}
