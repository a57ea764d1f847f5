//! Width-3 programs: compile, evaluate, and emit a weakest-label ABP.

use narrow_abp::abp::{abp_to_formula, abp_validate, abp_value};
use narrow_abp::formula::parse_formula;
use narrow_abp::ring::LabelClass;
use narrow_abp::width3::{boc_compile, boc_length, to_weakest_abp, width3_value, Width3Json};

fn main() {
    let f = parse_formula("x1*x2 + x3*x4").unwrap();
    let p = boc_compile(&f);
    println!("{} primitives (recurrence gives {})", p.len(), boc_length(&f));
    println!("value {}", width3_value(&p));
    let a = to_weakest_abp(&p).unwrap();
    println!("ABP: width {}, {} layers, {} edges", a.width, a.layers(), a.edge_count());
    println!("weakest labels: {}", abp_validate(&a, LabelClass::Weakest).is_valid());
    println!("ABP value {}", abp_value(&a).unwrap());
    println!("back to a formula of size {}", abp_to_formula(&a).unwrap().size());
    let small = boc_compile(&parse_formula("x1 + 2").unwrap());
    println!("{}", serde_json::to_string_pretty(&Width3Json::from_program(&small)).unwrap());
}
