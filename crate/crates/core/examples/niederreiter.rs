//! Niederreiter over GF(2^3): key generation, single-vector encryption and
//! a byte message pushed through the constant-weight codec.

use qc_crypto::crypto::{cw_rank, cw_unrank, CiphertextFile, NiederreiterKeyPair};
use qc_crypto::qcgen::generate_h;
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;

fn main() -> qc_crypto::Result<()> {
    let mut rng = ChaCha20Rng::seed_from_u64(9);
    let spec = generate_h(5, 2, 3, &mut rng)?;
    let kp = NiederreiterKeyPair::generate(&spec, 1, &mut rng)?;
    let h = &kp.public.matrix;
    println!("public parity {}x{}:\n{}", h.rows(), h.cols(), h.to_text());

    let pt = cw_unrank(&42u32.into(), 10, 1, 3)?;
    let c = kp.public.encrypt(&pt)?;
    let back = kp.decrypt(&c)?;
    println!("plaintext #42 = {pt:?}\nciphertext    = {c:?}\nrecovered     = {back:?} (rank {})", cw_rank(&back, 1, 3)?);

    let msg = b"attack at dawn";
    let file = kp.public.encrypt_message(msg)?;
    println!("\n{} bytes -> {} blocks of capacity {}", msg.len(), file.blocks.len(), kp.public.block_capacity()?);
    let parsed = CiphertextFile::from_text(&file.to_text())?;
    let out = kp.decrypt_message(&parsed)?;
    println!("decrypted: {}", String::from_utf8_lossy(&out));
    Ok(())
}
