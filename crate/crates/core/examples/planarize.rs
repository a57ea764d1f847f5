//! Planar width-2 ABPs from Q-programs, ladders for affine forms, and
//! concatenation of ABPs.

use narrow_abp::abp::{abp_concat, abp_value, is_planar_layer, linear_ladder, planarize};
use narrow_abp::ring::{AffineForm, EpsScalar, Symbols};
use narrow_abp::width2::{program_value, QProgram};

fn main() {
    let forms = ["x1", "eps + x2", "x3"].map(|s| AffineForm::parse(s).unwrap());
    let q = QProgram::from_forms(forms.to_vec());
    let e1 = [EpsScalar::one(), EpsScalar::zero()];
    let a = planarize(&q, e1.clone(), e1).unwrap();
    println!("{} layers, all planar: {}", a.layers(), a.matrices.iter().all(is_planar_layer));
    println!("ABP value     {}", abp_value(&a).unwrap());
    println!("program (1,1) {}", program_value(&q).get(0, 0));

    let l = AffineForm::parse("1 + 2*x1 - 3*x2").unwrap();
    let ladder = linear_ladder(&l).unwrap();
    print!("{}", ladder.render(&Symbols::new()));
    let sq = abp_concat(&ladder, &ladder).unwrap();
    println!("square: {}", abp_value(&sq).unwrap());
}
