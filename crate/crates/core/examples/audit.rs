//! Exhaustive automorphism audit of small parity arrays and the numeric
//! premise of the quantum indistinguishability argument.

use qc_crypto::autgroup::{enumerate_t_group, quantum_premise};
use qc_crypto::qcgen::{generate_h, QcSpec};
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;

fn main() -> qc_crypto::Result<()> {
    for p in [5, 7] {
        let spec = QcSpec::from(generate_h(p, 2, 3, &mut ChaCha20Rng::seed_from_u64(1))?);
        let report = enumerate_t_group(&spec)?;
        println!("== p = {p}");
        print!("{}", report.to_text());
        for g in report.t_group.iter().take(3) {
            println!("  T element {:?}", g.images());
        }
    }

    println!("\n== deployment sizes");
    for (p, m) in [(101, 35), (101, 34), (211, 62)] {
        let q = quantum_premise(p, m, 3, 0.5)?;
        println!("p={p} m={m}: margin {:.2}, holds {}, required a {:.4}", q.margin, q.block_bound_holds, q.required_a);
    }
    Ok(())
}
