//! Exact recovery of a compiled polynomial by interpolation in eps, and the
//! program read as a Fibonacci degeneration.

use narrow_abp::fibonacci::fib_of_forms;
use narrow_abp::formula::parse_formula;
use narrow_abp::ring::rat;
use narrow_abp::width2::{compile_width2, error_degree_of, fib_degeneration, interpolate_exact};

fn main() {
    let f = parse_formula("x1 + 3*x2").unwrap();
    let alpha = rat(2, 3);
    let q = compile_width2(&f, &alpha);
    let e = error_degree_of(&q).degree;
    let p = interpolate_exact(&q, e).unwrap();
    println!("alpha * f = {}", f.eval().scale_rat(&alpha));
    println!("recovered from {} evaluations: {p}", e + 1);

    let g = parse_formula("x1*x2").unwrap();
    let d = fib_degeneration(&compile_width2(&g, &rat(1, 1))).unwrap();
    println!("x1*x2 is a degeneration of F_{}", d.m);
    println!("limit of F_m(l_1, ..., l_m): {}", fib_of_forms(&d.forms).eps_limit().unwrap());
}
