//! Fibonacci polynomials, their supporting sets and the cyclic variant.

use std::collections::BTreeMap;

use narrow_abp::fibonacci::{cyclic_fib_poly, fib_closed_form, fib_poly, supporting_sets};
use narrow_abp::ring::int;

fn main() {
    for n in 0..=5 {
        println!("F_{n} = {}", fib_poly(n));
    }
    let sets = supporting_sets(5, 100).unwrap();
    let idx: Vec<Vec<usize>> = sets.iter().map(|s| s.indices()).collect();
    println!("supporting sets of F_5: {idx:?}");
    println!("closed form agrees: {}", fib_closed_form(8).unwrap() == fib_poly(8));
    let ones: BTreeMap<u32, _> = (1..=10).map(|i| (i, int(1))).collect();
    println!("F_10(1, ..., 1) = {}", fib_poly(10).substitute_rat(&ones));
    println!("C_4 = {}", cyclic_fib_poly(4));
}
