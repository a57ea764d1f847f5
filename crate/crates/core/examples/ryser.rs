//! The permanent as a hypercube sum, stage by stage.

use narrow_abp::hypercube::{
    hypercube_eval, hypercube_eval_elimination, max_vars_per_factor, permanent, ryser_hypercube_permanent,
    unary_a_matrix, RyserStage,
};

fn main() {
    for (n, stage) in [(3, RyserStage::Ryser), (3, RyserStage::Unary), (2, RyserStage::Affine), (3, RyserStage::Affine)] {
        let h = ryser_hypercube_permanent(n, stage).unwrap();
        let v = if h.bits.len() <= 24 { hypercube_eval(&h).unwrap() } else { hypercube_eval_elimination(&h) };
        println!(
            "n={n} {stage:?}: {} bits, {} factors, affine {}, max vars/factor {}, equals per_{n}: {}",
            h.bits.len(),
            h.factor_count(),
            h.is_affine(),
            max_vars_per_factor(&h),
            v == permanent(n)
        );
    }
    println!("{}", ryser_hypercube_permanent(2, RyserStage::Unary).unwrap().render());
    for row in unary_a_matrix(4, &[4, 3, 1, 4]) {
        println!("{row:?}");
    }
}
