mod common;

use std::collections::BTreeMap;

use common::p;
use narrow_abp::formula::parse_formula;
use narrow_abp::hypercube::*;
use narrow_abp::ring::{int, rat, MPoly, Monomial, Rat};
use narrow_abp::width3::{boc_compile, width3_value};
use narrow_abp::Error;

const C: u32 = 500;

fn at(q: &MPoly, pts: &[(u32, i64)]) -> Rat {
    let m: BTreeMap<u32, Rat> = pts.iter().map(|&(v, x)| (v, int(x))).collect();
    q.substitute_rat(&m).as_rational().unwrap()
}

#[test]
fn pair_trick_is_one_plus_product() {
    let h = trick_pair(&p("x1"), &p("x2"), C);
    assert_eq!(h.bits, vec![C]);
    assert_eq!(h.prefactor, rat(1, 2));
    assert!(h.is_affine());
    assert_eq!(hypercube_eval(&h).unwrap(), p("1 + x1*x2"));
    // u = 0 collapses to 1 whatever v is.
    assert_eq!(hypercube_eval(&trick_pair(&p("0"), &p("x2*x3 + 4"), C)).unwrap(), p("1"));
    let mixed = trick_pair(&p("x1 - 1"), &p("x2 - x3"), C);
    assert_eq!(hypercube_eval(&mixed).unwrap(), &p("1") + &(&p("x1 - 1") * &p("x2 - x3")));
}

#[test]
fn triple_trick() {
    let h = trick_triple(&p("x1"), &p("x2"), &p("x3"), C);
    assert_eq!(hypercube_eval(&h).unwrap(), p("x1 + x2 + x3 + x1*x2*x3"));
    // On bits with at most one set, the cubic term vanishes.
    let s = trick_triple(&p("x1"), &p("x2"), &p("0"), C);
    assert_eq!(hypercube_eval(&s).unwrap(), p("x1 + x2"));
}

#[test]
fn equality_factors_on_bits() {
    let [f, g] = eq_factors(&p("x1"), &p("x2"));
    for a in 0..=1 {
        for b in 0..=1 {
            let v = at(&(&f * &g), &[(1, a), (2, b)]);
            assert_eq!(v, int(i64::from(a == b)), "a = {a}, b = {b}");
        }
    }
}

#[test]
fn brute_force_and_elimination_agree() {
    let mut b = Builder::new(100, Default::default());
    let c1 = b.bit("c1");
    let c2 = b.bit("c2");
    b.factor(&p("x1") + &MPoly::var(c1));
    b.factor(&(&p("x2") - &MPoly::var(c2)) + &MPoly::var(c1));
    b.pair(&MPoly::var(c2), &p("x3"), "d");
    let h = b.finish();
    assert_eq!(hypercube_eval(&h).unwrap(), hypercube_eval_elimination(&h));
    assert!(matches!(hypercube_eval_capped(&h, 2), Err(Error::CapExceeded { needed: 3, cap: 2 })));
}

#[test]
fn sum_of_products_is_not_always_a_product() {
    // sum_b (x1 + b)(x2 + b) = 2 x1 x2 + x1 + x2 + 1, and a x1 x2 + b x1 + c x2 + d
    // factors into affine forms only when a d = b c.
    let mut h = HypercubeSum::product(vec![&p("x1") + &MPoly::var(C), &p("x2") + &MPoly::var(C)]);
    h.bits.push(C);
    let v = hypercube_eval(&h).unwrap();
    assert_eq!(v, p("2*x1*x2 + x1 + x2 + 1"));
    let coeff = |m: Monomial| v.coeff(&m).as_rational().unwrap();
    let (a, b, c, d) = (
        coeff(Monomial::from_pows([(1, 1), (2, 1)])),
        coeff(Monomial::var(1)),
        coeff(Monomial::var(2)),
        coeff(Monomial::one()),
    );
    assert_ne!(&a * &d, &b * &c);
}

#[test]
fn ryser_stages_give_the_permanent() {
    for n in 1..=3 {
        let per = permanent(n);
        for stage in [RyserStage::Ryser, RyserStage::Unary, RyserStage::Affine] {
            let h = ryser_hypercube_permanent(n, stage).unwrap();
            if h.bits.len() <= DEFAULT_BIT_CAP {
                assert_eq!(hypercube_eval(&h).unwrap(), per, "n = {n}, {stage:?}");
            }
            assert_eq!(hypercube_eval_elimination(&h), per, "n = {n}, {stage:?}");
        }
        assert!(ryser_hypercube_permanent(n, RyserStage::Affine).unwrap().is_affine());
    }
    assert_eq!(permanent(2), p("x11*x22 + x12*x21"));
    assert!(ryser_hypercube_permanent(0, RyserStage::Ryser).is_err());
}

#[test]
fn unary_matrix_example() {
    let a = unary_a_matrix(4, &[4, 3, 1, 4]);
    let expect: Vec<Vec<u8>> =
        vec![vec![1, 1, 1, 1], vec![1, 1, 0, 1], vec![1, 1, 0, 1], vec![1, 0, 0, 1], vec![0, 0, 0, 0]];
    assert_eq!(a, expect);
}

#[test]
fn width3_programs_as_hypercube_sums() {
    for s in ["x1", "x1 + x2", "2*x1 + 1"] {
        let prog = boc_compile(&parse_formula(s).unwrap());
        let target = width3_value(&prog);
        for two in [false, true] {
            let (h, layout) = width3_to_vnp1(&prog, two).unwrap();
            assert!(h.is_affine(), "{s}");
            assert_eq!(layout.path_bits.len(), prog.len() + 2);
            assert_eq!(h.bits.len(), layout.path_bit_count() + layout.trick_bits);
            assert_eq!(hypercube_eval_elimination(&h), target, "{s}, two_variable = {two}");
            if h.bits.len() <= 20 {
                assert_eq!(hypercube_eval(&h).unwrap(), target, "{s}, two_variable = {two}");
            }
            if two {
                assert!(max_vars_per_factor(&h) <= 2, "{s}: {}", max_vars_per_factor(&h));
            } else {
                assert!(max_vars_per_factor(&h) >= 3);
            }
        }
    }
}

#[test]
fn max_vars_counts_bits_and_inputs() {
    assert_eq!(max_vars_per_factor(&HypercubeSum::product(vec![p("x1 + x2 + 3"), p("x4")])), 2);
    assert_eq!(max_vars_per_factor(&trick_triple(&p("x1"), &p("x2"), &p("x3"), C)), 2);
    assert_eq!(max_vars_per_factor(&HypercubeSum::product(vec![])), 0);
}

fn gf4_mul_oracle(a: u8, b: u8) -> u8 {
    // Carry-less product reduced by z^2 = z + 1.
    let mut r = 0u8;
    for i in 0..2 {
        if b >> i & 1 == 1 {
            r ^= a << i;
        }
    }
    if r & 4 != 0 {
        r ^= 0b111;
    }
    r
}

#[test]
fn gf4_table_matches_polynomial_multiplication() {
    for (i, &x) in Gf4::ALL.iter().enumerate() {
        for (j, &y) in Gf4::ALL.iter().enumerate() {
            assert_eq!(x * y, Gf4::ALL[gf4_mul_oracle(i as u8, j as u8) as usize]);
            assert_eq!(x + y, Gf4::ALL[i ^ j]);
        }
    }
    assert_eq!(Gf4::Z.pow(3), Gf4::ONE);
    assert_eq!(Gf4::Z * Gf4::Z, Gf4::Z1);
    assert!(verify_f4_identity());
}

#[test]
fn json_round_trip() {
    let h = ryser_hypercube_permanent(2, RyserStage::Unary).unwrap();
    let j = HypercubeJson::from_sum(&h);
    let back = HypercubeJson::parse(&serde_json::to_string(&j).unwrap()).unwrap();
    assert_eq!(back, j);
    assert_eq!(back.to_sum().unwrap(), h);
}
