//! McEliece over a binary circulant stack with one corrected error.

use qc_crypto::codes::{hamming_weight, min_distance_bruteforce, LinearCode};
use qc_crypto::crypto::McElieceKeyPair;
use qc_crypto::qcgen::generate_c;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;

fn main() -> qc_crypto::Result<()> {
    let mut rng = ChaCha20Rng::seed_from_u64(2);
    let spec = generate_c(29, 2, 3, &mut rng)?;
    let g = spec.generator();
    println!("[{}, {}] code, generator rows of weight {}", g.cols(), g.rows(), hamming_weight(g.row(0)));

    let kp = McElieceKeyPair::generate(&spec, 1, &mut rng)?;
    let pt: Vec<u16> = (0..29).map(|_| rng.gen_range(0..2)).collect();
    let c = kp.public.encrypt(&pt, &mut rng)?;
    let noise: Vec<u16> = c.iter().zip(kp.public.matrix.vec_mul(&pt)?).map(|(a, b)| a ^ b).collect();
    println!("error weight {}", hamming_weight(&noise));
    assert_eq!(kp.decrypt(&c)?, pt);
    println!("decrypted plaintext matches");

    // the shortest stack has only weight-one circulants and cannot correct anything
    let thin = generate_c(13, 2, 1, &mut rng)?;
    let code = LinearCode::from_generator(thin.generator())?;
    println!("\n[26, 13] stack: d = {}", min_distance_bruteforce(&code)?);
    match McElieceKeyPair::generate(&thin, 1, &mut rng) {
        Ok(_) => println!("accepted one error"),
        Err(e) => println!("refused: {e}"),
    }

    let file = kp.public.encrypt_message(b"circulant", &mut rng)?;
    println!("\nmessage decrypts to {:?}", String::from_utf8_lossy(&kp.decrypt_message(&file)?));
    Ok(())
}
