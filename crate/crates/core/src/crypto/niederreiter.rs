//! Niederreiter cryptosystem over a structured parity-check matrix.

use rand::Rng;

use super::{parse_params, read_line, Params};
use crate::codes::{hamming_weight, SyndromeDecoder, DEFAULT_TABLE_BOUND};
use crate::error::{Error, Result};
use crate::linalg::{sample_permutation, sample_scrambler, DenseMatrix, Permutation};
use crate::qcgen::ArraySpec;

pub const PRIVATE_HEADER: &str = "QCNR v1";
pub const PUBLIC_HEADER: &str = "QCNR-PUB v1";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NiederreiterPublicKey {
    pub params: Params,
    /// `H' = S · H · P`.
    pub matrix: DenseMatrix,
}

impl NiederreiterPublicKey {
    pub fn n(&self) -> usize {
        self.matrix.cols()
    }

    /// Ciphertext length `n - k`.
    pub fn redundancy(&self) -> usize {
        self.matrix.rows()
    }

    /// `c = H' · pt^T` for a plaintext of weight at most `t`.
    pub fn encrypt(&self, pt: &[u16]) -> Result<Vec<u16>> {
        if pt.len() != self.n() {
            return Err(Error::DimensionMismatch(format!("plaintext of length {}, expected {}", pt.len(), self.n())));
        }
        let w = hamming_weight(pt);
        if w > self.params.t {
            return Err(Error::WeightExceeded { weight: w, max: self.params.t });
        }
        self.matrix.mul_vec(pt)
    }

    pub fn to_text(&self) -> String {
        format!("{PUBLIC_HEADER}\n{}\n{}", self.params, self.matrix.to_text())
    }

    pub fn from_text(s: &str) -> Result<Self> {
        let mut lines = s.lines();
        let header = read_line(&mut lines, "header")?;
        if header == PRIVATE_HEADER {
            return Ok(NiederreiterKeyPair::read_body(&mut lines)?.public);
        }
        if header != PUBLIC_HEADER {
            return Err(Error::Parse(format!("expected {PUBLIC_HEADER:?}, found {header:?}")));
        }
        let params = parse_params(read_line(&mut lines, "parameters")?)?;
        let matrix = DenseMatrix::read_text(&mut lines)?;
        Ok(NiederreiterPublicKey { params, matrix })
    }
}

/// Private scrambler, structured parity matrix, permutation and decoder, plus the public key.
#[derive(Debug, Clone)]
pub struct NiederreiterKeyPair {
    pub scrambler: DenseMatrix,
    scrambler_inv: DenseMatrix,
    pub parity: DenseMatrix,
    pub permutation: Permutation,
    decoder: SyndromeDecoder,
    pub public: NiederreiterPublicKey,
}

impl NiederreiterKeyPair {
    /// Sample `S` and `P` for the parity matrix of `spec`.
    pub fn generate<R: Rng + ?Sized>(spec: &ArraySpec, t: usize, rng: &mut R) -> Result<Self> {
        let h = spec.parity();
        let s = sample_scrambler(h.rows(), spec.l(), rng)?;
        let p = sample_permutation(h.cols(), rng)?;
        Self::from_parts(Params { p: spec.p(), m: spec.m(), l: spec.l(), t }, h, s, p)
    }

    /// Assemble a key pair from explicit parts; `S = I, P = I` gives `H' = H`.
    ///
    /// Fails with [`Error::Capacity`] unless every error pattern of weight
    /// at most `t` has its own syndrome under `h`.
    pub fn from_parts(params: Params, h: DenseMatrix, s: DenseMatrix, perm: Permutation) -> Result<Self> {
        if s.rows() != h.rows() || perm.len() != h.cols() {
            return Err(Error::DimensionMismatch(format!(
                "S is {}x{}, P has {} points, H is {}x{}",
                s.rows(),
                s.cols(),
                perm.len(),
                h.rows(),
                h.cols()
            )));
        }
        if h.rank() != h.rows() {
            return Err(Error::RankDeficient { rank: h.rank(), expected: h.rows() });
        }
        let scrambler_inv = s.inverse()?;
        let decoder = build_decoder(&h, params.t)?;
        let matrix = s.mul(&h)?.permute_columns(&perm)?;
        Ok(NiederreiterKeyPair {
            scrambler: s,
            scrambler_inv,
            parity: h,
            permutation: perm,
            decoder,
            public: NiederreiterPublicKey { params, matrix },
        })
    }

    pub fn decoder(&self) -> &SyndromeDecoder {
        &self.decoder
    }

    /// Recover the plaintext from `c = S · H · P · pt^T`.
    pub fn decrypt(&self, c: &[u16]) -> Result<Vec<u16>> {
        if c.len() != self.parity.rows() {
            return Err(Error::InvalidCiphertext(format!("ciphertext of length {}, expected {}", c.len(), self.parity.rows())));
        }
        let y = self.scrambler_inv.mul_vec(c)?;
        let z = self.parity.solve_right(&y)?;
        // z and P · pt^T differ by a codeword, so decoding z yields P · pt^T
        let (_, e) = self
            .decoder
            .decode(&z)
            .map_err(|_| Error::InvalidCiphertext("syndrome has no error pattern of weight <= t".into()))?;
        let mut pt = vec![0u16; e.len()];
        for (i, &v) in e.iter().enumerate() {
            pt[self.permutation.apply(i)] = v;
        }
        Ok(pt)
    }

    pub fn to_text(&self) -> String {
        format!(
            "{PRIVATE_HEADER}\n{}\n{}{}{}\n{}",
            self.public.params,
            self.scrambler.to_text(),
            self.parity.to_text(),
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
        let h = DenseMatrix::read_text(lines)?;
        let perm = Permutation::from_text(read_line(lines, "permutation")?)?;
        let public = DenseMatrix::read_text(lines)?;
        let kp = Self::from_parts(params, h, s, perm)?;
        if kp.public.matrix != public {
            return Err(Error::Parse("public matrix does not equal S · H · P".into()));
        }
        Ok(kp)
    }
}

pub(crate) fn build_decoder(h: &DenseMatrix, t: usize) -> Result<SyndromeDecoder> {
    let decoder = SyndromeDecoder::build_bounded(h, t, DEFAULT_TABLE_BOUND).map_err(|e| match e {
        Error::TooLarge { size, bound, .. } => {
            Error::Capacity { requested: t, detail: format!("syndrome table of {size} entries exceeds the bound {bound}") }
        }
        other => other,
    })?;
    if !decoder.is_unique() {
        return Err(Error::Capacity {
            requested: t,
            detail: format!("{} error patterns of weight <= {t} share a syndrome", decoder.collisions()),
        });
    }
    Ok(decoder)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combin::for_each_weight_vector;
    use crate::qcgen::generate_h;
    use rand::SeedableRng;
    use rand_chacha::ChaCha20Rng;

    fn keypair(p: usize, m: usize, l: u8, seed: u64) -> NiederreiterKeyPair {
        let mut rng = ChaCha20Rng::seed_from_u64(seed);
        let spec = generate_h(p, m, l, &mut rng).unwrap();
        NiederreiterKeyPair::generate(&spec, 1, &mut rng).unwrap()
    }

    #[test]
    fn public_key_is_triple_product() {
        let kp = keypair(5, 2, 3, 9);
        assert_eq!((kp.public.matrix.rows(), kp.public.matrix.cols()), (5, 10));
        let triple = kp.scrambler.mul(&kp.parity).unwrap().mul(&kp.permutation.to_matrix(3).unwrap()).unwrap();
        assert_eq!(kp.public.matrix, triple);
        assert_eq!(kp.public.matrix.rank(), 5);
    }

    #[test]
    fn degenerate_parts() {
        let spec = generate_h(5, 2, 3, &mut ChaCha20Rng::seed_from_u64(1)).unwrap();
        let h = spec.parity();
        let kp = NiederreiterKeyPair::from_parts(
            Params { p: 5, m: 2, l: 3, t: 1 },
            h.clone(),
            DenseMatrix::identity(5, 3).unwrap(),
            Permutation::identity(10),
        )
        .unwrap();
        assert_eq!(kp.public.matrix, h);
    }

    #[test]
    fn encrypt_examples() {
        let kp = keypair(5, 2, 3, 2);
        let pk = &kp.public;
        assert_eq!(pk.encrypt(&[0; 10]).unwrap(), vec![0; 5]);
        for i in 0..10 {
            let mut e = vec![0u16; 10];
            e[i] = 1;
            assert_eq!(pk.encrypt(&e).unwrap(), pk.matrix.column(i));
        }
        let mut heavy = vec![0u16; 10];
        heavy[0] = 1;
        heavy[1] = 1;
        assert_eq!(pk.encrypt(&heavy), Err(Error::WeightExceeded { weight: 2, max: 1 }));
        assert!(pk.encrypt(&[0; 9]).is_err());
    }

    #[test]
    fn exhaustive_weight_one_roundtrip() {
        let kp = keypair(5, 2, 3, 4);
        assert_eq!(kp.decrypt(&kp.public.encrypt(&[0; 10]).unwrap()).unwrap(), vec![0; 10]);
        for_each_weight_vector(10, 1, 8, |pt| {
            let c = kp.public.encrypt(pt).unwrap();
            assert_eq!(kp.decrypt(&c).unwrap(), pt);
        });
    }

    #[test]
    fn unreachable_syndrome_is_rejected() {
        let kp = keypair(5, 2, 2, 6);
        // 1 + 10·3 = 31 reachable syndromes out of 4^5 = 1024
        let mut rejected = 0;
        for x in 0..1024u32 {
            let y: Vec<u16> = (0..5).map(|i| ((x >> (2 * i)) & 3) as u16).collect();
            let c = kp.scrambler.mul_vec(&y).unwrap();
            if kp.decoder().lookup(&y).is_none() {
                assert!(matches!(kp.decrypt(&c), Err(Error::InvalidCiphertext(_))));
                rejected += 1;
            }
        }
        assert_eq!(rejected, 1024 - 31);
        assert!(matches!(kp.decrypt(&[0; 4]), Err(Error::InvalidCiphertext(_))));
    }

    #[test]
    fn overcapacity_is_refused() {
        let spec = generate_h(5, 2, 3, &mut ChaCha20Rng::seed_from_u64(1)).unwrap();
        let r = NiederreiterKeyPair::generate(&spec, 3, &mut ChaCha20Rng::seed_from_u64(1));
        assert!(matches!(r, Err(Error::Capacity { requested: 3, .. })));
    }

    #[test]
    fn key_files_roundtrip() {
        let kp = keypair(7, 3, 2, 8);
        let text = kp.to_text();
        assert!(text.starts_with("QCNR v1\n7 3 2 1\n"));
        let back = NiederreiterKeyPair::from_text(&text).unwrap();
        assert_eq!(back.public, kp.public);
        assert_eq!(back.permutation, kp.permutation);
        let pub_text = kp.public.to_text();
        assert_eq!(NiederreiterPublicKey::from_text(&pub_text).unwrap(), kp.public);
        assert_eq!(NiederreiterPublicKey::from_text(&text).unwrap(), kp.public);
        let tampered = text.replacen("QCNR v1", "QCME v1", 1);
        assert!(NiederreiterKeyPair::from_text(&tampered).is_err());
    }
}
