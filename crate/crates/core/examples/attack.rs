//! Lee-Brickell and Stern information-set decoding on planted instances,
//! compared with the exact per-iteration success probability.

use num_traits::ToPrimitive;
use qc_crypto::codes::hamming_weight;
use qc_crypto::cryptanalysis::isd::{
    lee_brickell_attack, lee_brickell_iteration, stern_attack, AttackOutcome, IterationResult, SternParams,
};
use qc_crypto::cryptanalysis::workfactor::{lee_brickell_workfactor, unit_costs};
use qc_crypto::crypto::mceliece::random_error;
use qc_crypto::crypto::McElieceKeyPair;
use qc_crypto::qcgen::generate_c;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;

fn main() -> qc_crypto::Result<()> {
    let mut rng = ChaCha20Rng::seed_from_u64(7);
    let spec = generate_c(29, 3, 3, &mut rng)?;
    let kp = McElieceKeyPair::generate(&spec, 0, &mut rng)?;
    let g = &kp.public.matrix;
    let (k, n, t) = (g.rows(), g.cols(), 3);

    let pt: Vec<u16> = (0..k).map(|_| rng.gen_range(0..2)).collect();
    let e = random_error(n, t, 2, &mut rng);
    let c = kp.public.encrypt_with_error(&pt, &e)?;

    for j in 0..=2 {
        let (a, b) = unit_costs();
        let wf = lee_brickell_workfactor(n as u64, k as u64, t as u64, j as u64, &a, &b)?;
        let expected = wf.success_probability().to_f64().unwrap();
        let trials = 2000;
        let (mut hits, mut planted) = (0, 0);
        for _ in 0..trials {
            if let IterationResult::Hit { plaintext, .. } = lee_brickell_iteration(g, &c, t, j, &mut rng)? {
                hits += 1;
                planted += (plaintext == pt) as usize;
            }
        }
        // low-weight codewords let some iterations verify a different plaintext
        println!(
            "j={j}: planted recovered {:.4}, any hit {:.4}, exact 1/T_j {:.4}, log2 W = {:.2}",
            planted as f64 / trials as f64,
            hits as f64 / trials as f64,
            expected,
            wf.log2_w
        );
    }

    match lee_brickell_attack(g, &c, t, 2, &mut rng, 10_000)? {
        AttackOutcome::Success { plaintext, error, iterations } => println!(
            "lee-brickell: {iterations} iterations, residual weight {}, planted plaintext {}",
            hamming_weight(&error),
            if plaintext == pt { "recovered" } else { "not recovered" }
        ),
        AttackOutcome::Failure { iterations } => println!("lee-brickell: gave up after {iterations} iterations"),
    }
    let st = stern_attack(g, &c, t, SternParams { half_weight: 1, window: 6 }, &mut rng, 10_000)?;
    println!("stern success: {}", st.is_success());
    Ok(())
}
