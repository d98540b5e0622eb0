//! Build a binary circulant stack and a parity-check array over GF(2^l),
//! then check each against its construction conditions.

use qc_crypto::qcgen::{check_array_conditions, check_stack_conditions, generate_c, generate_h, QcSpec};
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;

fn main() -> qc_crypto::Result<()> {
    let mut rng = ChaCha20Rng::seed_from_u64(1);

    let stack = generate_c(29, 3, 3, &mut rng)?;
    println!("stack p=29 m=3 t_r=3, column supports:");
    for (i, s) in stack.column_supports().iter().enumerate() {
        println!("  block {}: {s:?}", i + 1);
    }
    print!("{}", check_stack_conditions(&stack).to_text());

    let array = generate_h(7, 3, 3, &mut rng)?;
    let (a, b) = array.marked_pair();
    println!("\narray p=7 m=3 l=3, marked pair ({a}, {b})");
    print!("{}", check_array_conditions(&array).to_text());

    println!("\nserialized:");
    print!("{}", QcSpec::from(array).to_text());
    Ok(())
}
