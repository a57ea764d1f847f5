//! Compile a formula to a width-2 program and check its certificate and bounds.
//!
//! cargo run --example compile_width2 -- "(x1 + 2)*x3 + x2"

use narrow_abp::formula::parse_formula;
use narrow_abp::ring::int;
use narrow_abp::width2::{
    check_det, compile_width2, error_bound, error_degree_of, length_bound, verify_claim, QProgramJson,
};

fn main() {
    let text = std::env::args().nth(1).unwrap_or_else(|| "x1*x2 + x3".into());
    let f = parse_formula(&text).expect("formula");
    let q = compile_width2(&f, &int(1));
    let d = f.depth();
    println!("formula {f} (depth {d})");
    println!("length {} (bound {}), DAG nodes {}", q.len(), length_bound(d), q.dag_size());
    let e = error_degree_of(&q);
    let kind = if e.exact { "exact" } else { "max-plus bound" };
    println!("error degree {} ({kind}; bound {})", e.degree, error_bound(d));
    match verify_claim(&q) {
        Ok(c) => println!("certificate ok: value in Q({}) + O(eps^{})", c.target, c.order),
        Err(e) => println!("certificate failed: {e}"),
    }
    let det = check_det(&q, 2);
    println!("det = (-1)^m: {} via {:?}", det.holds, det.method);
    if q.len() < 200 {
        println!("{}", serde_json::to_string_pretty(&QProgramJson::from_program(&q, true)).unwrap());
    }
}
