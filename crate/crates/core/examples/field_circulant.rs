//! Arithmetic in GF(2^3) and in the ring of 7x7 circulants over it.

use qc_crypto::circulant::{is_primitive_root, Circulant};
use qc_crypto::field::Field;

fn main() -> qc_crypto::Result<()> {
    let f = Field::get(3)?;
    println!("GF(2^3), modulus {:#b}, generator {}", f.modulus(), f.format(f.generator()));
    for a in f.elements().skip(1) {
        println!("  {} * {} = {}, inverse {}", f.format(a), f.format(5), f.format(f.mul(a, 5)), f.format(f.inv(a)?));
    }

    let a = Circulant::new(vec![1, 2, 0, 0, 0, 0, 3], 3)?;
    let b = Circulant::new(vec![0, 1, 0, 4, 0, 0, 0], 3)?;
    let ab = a.mul(&b)?;
    println!("\na * b first row: {:?}", ab.first_row());
    assert_eq!(ab.expand(), a.expand().mul(&b.expand())?);
    assert_eq!(ab, b.mul(&a)?);
    println!("dense product agrees, product commutes");
    println!("a invertible: {}", a.is_invertible());

    // over GF(2), primitivity of 2 gives a cheap invertibility test
    for p in [7u64, 11, 13] {
        println!("2 primitive mod {p}: {}", is_primitive_root(2, p)?);
    }
    let c = Circulant::binary_from_column_support(13, &[0, 3, 4])?;
    println!("weight-3 circulant on 13 points: crt {} dense {}", c.is_invertible_crt(), c.is_invertible_dense());
    Ok(())
}
