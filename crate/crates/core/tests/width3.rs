mod common;

use common::p;
use narrow_abp::abp::{abp_to_formula, abp_validate, abp_value};
use narrow_abp::corpus::{corpus, CorpusSpec};
use narrow_abp::formula::{parse_formula, Formula};
use narrow_abp::ring::{int, LabelClass, Matrix};
use narrow_abp::width3::*;

/// Dense product of the primitive matrices, independent of the column-operation evaluator.
fn dense_product(prog: &Width3Program) -> Matrix {
    prog.primitives.iter().fold(Matrix::identity(3), |acc, a| &acc * &a.matrix())
}

fn f(s: &str) -> Formula {
    parse_formula(s).unwrap()
}

#[test]
fn leaf_is_one_primitive() {
    let prog = boc_compile(&f("x1"));
    assert_eq!(prog.primitives, vec![Primitive3::M(narrow_abp::ring::AffineForm::var(1))]);
    assert_eq!(width3_value(&prog), p("x1"));
}

#[test]
fn sums_and_products() {
    assert_eq!(width3_matrix(&boc_compile(&f("x1 + x2"))), m_matrix(&p("x1 + x2")));
    let prod = boc_compile(&f("x1*x2"));
    assert_eq!(prod.len(), 12);
    assert_eq!(dense_product(&prod), m_matrix(&p("x1*x2")));
    assert_eq!(width3_value(&boc_compile(&f("x1*x2 + x3*x4"))), p("x1*x2 + x3*x4"));
}

#[test]
fn conjugation_identity_for_symbolic_factors() {
    let (mf, mg) = (m_matrix(&p("x1")), m_matrix(&p("x2")));
    let pm = |q: Perm3| Primitive3::Perm(q).matrix();
    let d = Primitive3::Diag([int(1), int(-1), int(1)]).matrix();
    let block = &(&(&(&d * &pm(P123)) * &mg) * &pm(P132)) * &mf;
    let whole = &(&(&pm(P23) * &block) * &block) * &pm(P23);
    assert_eq!(whole, m_matrix(&p("x1*x2")));
}

#[test]
fn permutation_matrices() {
    assert_eq!(Primitive3::Perm(P23).matrix(), Matrix::from_ints(&[&[1, 0, 0], &[0, 0, 1], &[0, 1, 0]]));
    assert_eq!(&Primitive3::Perm(P123).matrix() * &Primitive3::Perm(P132).matrix(), Matrix::identity(3));
    for q in [P23, P123, P132] {
        assert_eq!(cycle_to_perm(&perm_to_cycle(&q)).unwrap(), q);
    }
}

#[test]
fn random_formulas() {
    let spec = CorpusSpec { max_depth: 4, vars: 6, ..CorpusSpec::default() };
    for g in corpus(77, 50, &spec) {
        let prog = boc_compile(&g);
        let target = g.eval();
        assert_eq!(width3_matrix(&prog), m_matrix(&target), "{g}");
        assert_eq!(width3_value(&prog), target);
        assert_eq!(prog.len(), boc_length(&g));
        let a = to_weakest_abp(&prog).unwrap();
        assert!(abp_validate(&a, LabelClass::Weakest).is_valid());
        assert_eq!(abp_value(&a).unwrap(), target);
    }
}

#[test]
fn small_dense_agreement() {
    for g in corpus(78, 10, &CorpusSpec { max_depth: 3, vars: 4, ..CorpusSpec::default() }) {
        let prog = boc_compile(&g);
        assert_eq!(dense_product(&prog), width3_matrix(&prog));
    }
}

#[test]
fn abp_formula_round_trip() {
    for s in ["x1 + x2", "x1*x2", "(x1 + 2)*x3 + x2"] {
        let a = to_weakest_abp(&boc_compile(&f(s))).unwrap();
        assert_eq!(abp_to_formula(&a).unwrap().eval(), f(s).eval());
    }
}

#[test]
fn json_round_trip() {
    let prog = boc_compile(&f("x1*(x2 + 1/2)"));
    let j = Width3Json::from_program(&prog);
    let back = Width3Json::parse(&serde_json::to_string(&j).unwrap()).unwrap();
    assert_eq!(back, j);
    assert_eq!(back.to_program().unwrap(), prog);
    assert_eq!(j.length, prog.len());
}
