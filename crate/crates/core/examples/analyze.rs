//! Parameter sizing: block counts against ISD and quantum Fourier sampling,
//! information rate, and McEliece key sizes.

use qc_crypto::cryptanalysis::params::{
    compare_reference, comparison_report, mceliece_keysize_bits, param_report, to_csv, REFERENCE_L,
};
use qc_crypto::cryptanalysis::workfactor::quasi_cyclic_w2;

fn main() -> qc_crypto::Result<()> {
    print!("{}", comparison_report(&compare_reference(REFERENCE_L)?));

    println!("\nwork factor growth at p = 101, t = 15:");
    for m in [5, 10, 17, 35] {
        println!("  m = {m:>2}: log2 W_2 = {:.2}", quasi_cyclic_w2(101, m, 15)?.log2_w);
    }

    println!("\ncustom rows:");
    print!("{}", to_csv(&param_report(&[(64, 53, 10, 3), (80, 5, 1, 2)])?));

    for (n, k) in [(1632, 1269), (2048, 1751), (2960, 2288)] {
        println!("[{n}, {k}] McEliece key: {} bits", mceliece_keysize_bits(n, k)?);
    }
    Ok(())
}
