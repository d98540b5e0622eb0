//! McEliece and Niederreiter cryptosystems, the constant-weight codec and
//! byte-level message framing.
//!
//! Messages are read as big-endian integers and cut into blocks: base
//! `C(n, t) · (2^l - 1)^t` for Niederreiter (each block is an exact-weight
//! plaintext) and base `2^(l·k)` for McEliece (each block is a plaintext
//! vector of `k` symbols). A ciphertext file holds the line
//! `p m l t nbytes` and then one hex vector per block.

pub mod codec;
pub mod mceliece;
pub mod niederreiter;

use std::fmt;

use num_bigint::BigUint;
use rand::Rng;

pub use codec::{cw_rank, cw_unrank};
pub use mceliece::{McElieceKeyPair, McEliecePublicKey};
pub use niederreiter::{NiederreiterKeyPair, NiederreiterPublicKey};

use crate::error::{Error, Result};
use crate::field::Field;

/// The `p m l t` line shared by key and ciphertext files.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Params {
    pub p: usize,
    pub m: usize,
    pub l: u8,
    /// Plaintext weight (Niederreiter) or error budget (McEliece).
    pub t: usize,
}

impl fmt::Display for Params {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {} {}", self.p, self.m, self.l, self.t)
    }
}

pub(crate) fn read_line<'a>(lines: &mut impl Iterator<Item = &'a str>, what: &str) -> Result<&'a str> {
    lines.next().map(str::trim_end).ok_or_else(|| Error::Parse(format!("missing {what} line")))
}

fn parse_numbers(line: &str, expected: usize) -> Result<Vec<usize>> {
    let nums = line
        .split_whitespace()
        .map(str::parse::<usize>)
        .collect::<std::result::Result<Vec<_>, _>>()
        .map_err(|e| Error::Parse(format!("bad number in {line:?}: {e}")))?;
    if nums.len() != expected {
        return Err(Error::Parse(format!("expected {expected} numbers, found {line:?}")));
    }
    Ok(nums)
}

pub(crate) fn parse_params(line: &str) -> Result<Params> {
    let v = parse_numbers(line, 4)?;
    let l = u8::try_from(v[2]).map_err(|_| Error::Parse(format!("bad field degree {}", v[2])))?;
    Ok(Params { p: v[0], m: v[1], l, t: v[3] })
}

/// Encrypted message: parameter echo, plaintext length and one vector per block.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CiphertextFile {
    pub params: Params,
    pub nbytes: usize,
    pub blocks: Vec<Vec<u16>>,
}

impl CiphertextFile {
    pub fn to_text(&self) -> String {
        let f = Field::get(self.params.l).expect("validated degree");
        let mut out = format!("{} {}\n", self.params, self.nbytes);
        for block in &self.blocks {
            let parts: Vec<String> = block.iter().map(|&x| f.format(x)).collect();
            out.push_str(&parts.join(" "));
            out.push('\n');
        }
        out
    }

    pub fn from_text(s: &str) -> Result<Self> {
        let mut lines = s.lines();
        let head = parse_numbers(read_line(&mut lines, "parameter")?, 5)?;
        let l = u8::try_from(head[2]).map_err(|_| Error::Parse(format!("bad field degree {}", head[2])))?;
        let params = Params { p: head[0], m: head[1], l, t: head[3] };
        let f = Field::get(l)?;
        let blocks = lines
            .filter(|line| !line.trim().is_empty())
            .map(|line| line.split_whitespace().map(|tok| f.parse(tok)).collect::<Result<Vec<u16>>>())
            .collect::<Result<Vec<_>>>()?;
        Ok(CiphertextFile { params, nbytes: head[4], blocks })
    }

    fn check_params(&self, expected: &Params) -> Result<()> {
        if &self.params != expected {
            return Err(Error::InvalidCiphertext(format!(
                "ciphertext parameters `{}` do not match the key `{expected}`",
                self.params
            )));
        }
        Ok(())
    }
}

impl NiederreiterPublicKey {
    /// Number of distinct plaintext blocks.
    pub fn block_capacity(&self) -> Result<BigUint> {
        codec::codeword_count(self.n(), self.params.t, self.params.l)
    }

    pub fn encrypt_message(&self, bytes: &[u8]) -> Result<CiphertextFile> {
        let base = self.block_capacity()?;
        let blocks = codec::split_message(bytes, &base)?
            .iter()
            .map(|d| self.encrypt(&cw_unrank(d, self.n(), self.params.t, self.params.l)?))
            .collect::<Result<Vec<_>>>()?;
        Ok(CiphertextFile { params: self.params, nbytes: bytes.len(), blocks })
    }
}

impl NiederreiterKeyPair {
    pub fn decrypt_message(&self, file: &CiphertextFile) -> Result<Vec<u8>> {
        let params = self.public.params;
        file.check_params(&params)?;
        let digits = file
            .blocks
            .iter()
            .map(|c| {
                let pt = self.decrypt(c)?;
                cw_rank(&pt, params.t, params.l)
                    .map_err(|_| Error::InvalidCiphertext("block does not decode to a weight-t plaintext".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        codec::join_message(&digits, &self.public.block_capacity()?, file.nbytes)
    }
}

impl McEliecePublicKey {
    pub fn block_capacity(&self) -> BigUint {
        BigUint::from(self.matrix.field().size()).pow(self.k() as u32)
    }

    pub fn encrypt_message<R: Rng + ?Sized>(&self, bytes: &[u8], rng: &mut R) -> Result<CiphertextFile> {
        let blocks = codec::split_message(bytes, &self.block_capacity())?
            .iter()
            .map(|d| self.encrypt(&codec::symbols_from_index(d, self.k(), self.params.l)?, rng))
            .collect::<Result<Vec<_>>>()?;
        Ok(CiphertextFile { params: self.params, nbytes: bytes.len(), blocks })
    }
}

impl McElieceKeyPair {
    pub fn decrypt_message(&self, file: &CiphertextFile) -> Result<Vec<u8>> {
        let params = self.public.params;
        file.check_params(&params)?;
        let digits =
            file.blocks.iter().map(|c| codec::index_from_symbols(&self.decrypt(c)?, params.l)).collect::<Result<Vec<_>>>()?;
        codec::join_message(&digits, &self.public.block_capacity(), file.nbytes)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qcgen::{generate_c, generate_h};
    use rand::SeedableRng;
    use rand_chacha::ChaCha20Rng;

    #[test]
    fn niederreiter_message_roundtrip() {
        let mut rng = ChaCha20Rng::seed_from_u64(1);
        let spec = generate_h(7, 2, 3, &mut rng).unwrap();
        let kp = NiederreiterKeyPair::generate(&spec, 1, &mut rng).unwrap();
        for msg in [&b""[..], b"\x00", b"hello, world", &[0xff; 33]] {
            let file = kp.public.encrypt_message(msg).unwrap();
            let text = file.to_text();
            let back = CiphertextFile::from_text(&text).unwrap();
            assert_eq!(back, file);
            assert_eq!(kp.decrypt_message(&back).unwrap(), msg);
        }
    }

    #[test]
    fn mceliece_message_roundtrip() {
        let mut rng = ChaCha20Rng::seed_from_u64(2);
        let spec = generate_c(29, 2, 3, &mut rng).unwrap();
        let kp = McElieceKeyPair::generate(&spec, 1, &mut rng).unwrap();
        let msg = b"quasi-cyclic";
        let file = kp.public.encrypt_message(msg, &mut rng).unwrap();
        assert_eq!(kp.decrypt_message(&CiphertextFile::from_text(&file.to_text()).unwrap()).unwrap(), msg);
    }

    #[test]
    fn mismatched_or_corrupt_ciphertexts() {
        let mut rng = ChaCha20Rng::seed_from_u64(3);
        let spec = generate_h(5, 2, 3, &mut rng).unwrap();
        let kp = NiederreiterKeyPair::generate(&spec, 1, &mut rng).unwrap();
        let mut file = kp.public.encrypt_message(b"abc").unwrap();
        file.params.t = 2;
        assert!(matches!(kp.decrypt_message(&file), Err(Error::InvalidCiphertext(_))));
        file.params.t = 1;
        file.blocks[0] = vec![0; 5];
        assert!(matches!(kp.decrypt_message(&file), Err(Error::InvalidCiphertext(_))));
        assert!(CiphertextFile::from_text("5 2 3 1\n").is_err());
    }
}
