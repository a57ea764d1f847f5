//! Logarithmic-depth rebalancing by the heavy-path separator argument.
//!
//! For a formula `F` of size `s`, walk down the heavier child until the
//! current subtree `g` has size at most `2s/3` (so at least `s/3`). Viewing
//! `g` as a fresh variable, `F` is affine in it: `F = A*g + B` where `A` is
//! the product of the off-path children of the multiplication gates above
//! `g`, and `B` is `F` with `g` replaced by `0`. All three pieces are smaller
//! than `2s/3 + 1` and are reduced recursively, giving depth at most about
//! `2*log_{3/2}(s)`.

use super::{Formula, Node};

/// Rebalances `f` to logarithmic depth without changing its value.
///
/// The result is never deeper than the input.
pub fn brent_reduce(f: &Formula) -> Formula {
    if f.depth() <= 2 {
        return f.clone();
    }
    let s = f.size();
    let mut path: Vec<(Formula, bool)> = Vec::new();
    let mut cur = f.clone();
    while 3 * cur.size() > 2 * s {
        let (l, r) = match cur.node() {
            Node::Add(l, r) | Node::Mul(l, r) => (l.clone(), r.clone()),
            _ => break,
        };
        let go_left = l.size() >= r.size();
        path.push((cur.clone(), go_left));
        cur = if go_left { l } else { r };
    }
    let g = cur;

    let mut factors = Vec::new();
    for (node, left) in &path {
        if let Node::Mul(l, r) = node.node() {
            factors.push(if *left { r.clone() } else { l.clone() });
        }
    }
    let a = Formula::product(factors);
    let b = replace_with_zero(&path);

    let g_r = brent_reduce(&g);
    let head = if a.is_one_const() { g_r } else { Formula::mul(brent_reduce(&a), g_r) };
    let out = if b.is_zero_const() { head } else { Formula::add(head, brent_reduce(&b)) };
    if out.depth() < f.depth() {
        out
    } else {
        f.clone()
    }
}

/// Rebuilds the root of `path` with its endpoint replaced by `0`, folding
/// `0 + h = h` and `0 * h = 0` on the way up.
fn replace_with_zero(path: &[(Formula, bool)]) -> Formula {
    let mut acc = Formula::int(0);
    for (node, left) in path.iter().rev() {
        let (l, r, is_add) = match node.node() {
            Node::Add(l, r) => (l, r, true),
            Node::Mul(l, r) => (l, r, false),
            _ => unreachable!("path nodes are gates"),
        };
        let sibling = if *left { r } else { l };
        acc = if acc.is_zero_const() {
            if is_add {
                sibling.clone()
            } else {
                Formula::int(0)
            }
        } else {
            match (is_add, left) {
                (true, true) => Formula::add(acc, sibling.clone()),
                (true, false) => Formula::add(sibling.clone(), acc),
                (false, true) => Formula::mul(acc, sibling.clone()),
                (false, false) => Formula::mul(sibling.clone(), acc),
            }
        };
    }
    acc
}
