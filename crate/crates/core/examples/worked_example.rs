//! The four-matrix approximation of Q(x1*x2) and its 8-block chain.

use narrow_abp::ring::{MPoly, Symbols};
use narrow_abp::width2::q_matrix;
use narrow_abp::width2::worked_example::{block, chain, chain_below, factors};

fn main() {
    let syms = Symbols::new();
    for (i, m) in factors(1, 2).iter().enumerate() {
        println!("factor {}:", i + 1);
        for r in 0..2 {
            println!("  [{}, {}]", m.get(r, 0).render(&syms), m.get(r, 1).render(&syms));
        }
    }
    let f = block(1, 2);
    let target = q_matrix(&MPoly::parse("x1*x2").unwrap());
    println!("product:");
    for r in 0..2 {
        let row: Vec<String> = (0..2).map(|c| f.get(r, c).render(&syms)).collect();
        println!("  [{}]", row.join(", "));
    }
    let err: Vec<i64> = f.entries().zip(target.entries()).filter_map(|((_, _, a), (_, _, b))| (a - b).min_eps_exp()).collect();
    println!("eps-orders of F - Q(x1*x2): {err:?}");

    let two = chain(2);
    println!("two blocks: {} terms, error degree {}", two.len(), two.error_degree().unwrap());
    println!("eight blocks at eps = 0: {}", chain_below(8, 1).unwrap());
}
