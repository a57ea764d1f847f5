//! A width-3 program rewritten as a sum over Boolean bits of a product of
//! affine forms, optionally with at most two variables per factor.

use narrow_abp::formula::parse_formula;
use narrow_abp::hypercube::{hypercube_eval_elimination, max_vars_per_factor, verify_f4_identity, width3_to_vnp1};
use narrow_abp::width3::{boc_compile, width3_value};

fn main() {
    let p = boc_compile(&parse_formula("x1 + 2*x2").unwrap());
    for two in [false, true] {
        let (h, layout) = width3_to_vnp1(&p, two).unwrap();
        println!(
            "two_variable={two}: {} path bits, {} trick bits, {} factors, max vars/factor {}",
            layout.path_bit_count(),
            layout.trick_bits,
            h.factor_count(),
            max_vars_per_factor(&h)
        );
        println!("  value {} (program value {})", hypercube_eval_elimination(&h), width3_value(&p));
    }
    println!("GF(4) identity holds: {}", verify_f4_identity());
}
