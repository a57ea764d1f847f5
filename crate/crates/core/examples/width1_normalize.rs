//! Width-1 ABPs over eps: moving eps-powers onto the last factor.

use narrow_abp::abp::width1_normalize;
use narrow_abp::ring::AffineForm;

fn main() {
    for case in [&["eps*x1", "eps^-1*x2"][..], &["x1 + eps", "eps^2 + x2"], &["eps^-1*x1"], &["eps^2*x1 + eps", "eps^-1*x2"]] {
        let fs: Vec<AffineForm> = case.iter().map(|s| AffineForm::parse(s).unwrap()).collect();
        match width1_normalize(&fs) {
            Ok(out) => println!("{case:?} -> {:?}", out.iter().map(|l| l.to_string()).collect::<Vec<_>>()),
            Err(e) => println!("{case:?} -> {e}"),
        }
    }
}
