mod common;

use std::collections::BTreeMap;

use common::*;
use narrow_abp::corpus::{corpus, CorpusSpec};
use narrow_abp::formula::{brent_reduce, parse_formula};
use narrow_abp::ring::{int, rat, AffineForm, MPoly, Matrix, Rat};
use narrow_abp::width2::*;
use narrow_abp::Error;
use proptest::prelude::*;

fn prog(forms: &[&str]) -> QProgram {
    QProgram::from_forms(forms.iter().map(|s| l(s)).collect())
}

fn product(forms: &[AffineForm]) -> Matrix {
    let mut acc = Matrix::identity(2);
    for f in forms {
        acc = &q_matrix(&f.to_mpoly()) * &acc;
    }
    acc
}

fn m(rows: [[&str; 2]; 2]) -> Matrix {
    Matrix::from_rows(rows.iter().map(|r| r.iter().map(|s| p(s)).collect()).collect())
}

fn with_claim(q: QProgram, target: &str, order: i64) -> QProgram {
    q.with_claim(Claim { target: p(target), order: Some(order) })
}

#[test]
fn values_of_short_programs() {
    assert_eq!(program_value(&prog(&["x1"])), m([["x1", "1"], ["1", "0"]]));
    assert_eq!(program_value(&prog(&["x1", "x2"])), m([["x1*x2 + 1", "x2"], ["x1", "1"]]));
    assert_eq!(program_value(&prog(&[])), Matrix::identity(2));
}

#[test]
fn gadget_matrices_match_their_closed_forms() {
    assert_eq!(product(&gadget_a()), m([["-eps^-1", "0"], ["0", "eps"]]));
    assert_eq!(product(&gadget_b(false)), m([["eps^2", "1"], ["-1", "0"]]));
    assert_eq!(product(&gadget_b(true)), m([["-eps^2", "1"], ["-1", "0"]]));
    assert_eq!(product(&gadget_c()), m([["eps^-1", "0"], ["0", "eps"]]));
}

#[test]
fn multiplication_identity_is_symbolic() {
    // f and g stand for arbitrary polynomials: use fresh variables.
    let (f, g) = (p("x1"), p("x2"));
    let half = f.scale_rat(&rat(1, 2));
    let lhs = &(&(-&half.pow(2)) - &g.pow(2)) + &(&half + &g).pow(2);
    assert_eq!(lhs, &f * &g);
}

#[test]
fn membership_of_single_primitives() {
    let q = prog(&["x1"]);
    let c = check_q_membership(&q, &p("x1"), 5).unwrap();
    assert!(c.residual.unwrap().is_zero());
    assert!(matches!(check_q_membership(&q, &p("x2"), 1), Err(Error::NotMember { row: 1, col: 1, .. })));
}

#[test]
fn addition_gadget() {
    let s = q_add(&QProgram::primitive(l("x1")), &QProgram::primitive(l("x2"))).unwrap();
    assert_eq!(s.len(), 3);
    assert_eq!(program_value(&s), q_matrix(&p("x1 + x2")));
    let four = |v: &str| with_claim(prog(&[v, "0", "1", v]), v, 1);
    assert_eq!(q_add(&four("x1"), &four("x2")).unwrap().len(), 9);
}

#[test]
fn squaring_gadget_on_a_variable() {
    let x = QProgram::primitive(l("x1"));
    let neg = q_square(&x, false).unwrap();
    assert_eq!(neg.len(), 13);
    check_q_membership(&neg, &p("-x1^2"), 1).unwrap();
    let pos = q_square(&x, true).unwrap();
    check_q_membership(&pos, &p("x1^2"), 1).unwrap();
    let low = with_claim(prog(&["x1"]), "x1", 1);
    assert!(matches!(q_square(&low, false), Err(Error::OrderTooLow { need: 3, .. })));
}

#[test]
fn multiplication_gadget_on_variables() {
    let h = q_mul(&QProgram::primitive(l("1/2*x1")), &QProgram::primitive(l("x2"))).unwrap();
    assert_eq!(h.len(), 45);
    check_q_membership(&h, &p("x1*x2"), 1).unwrap();
    assert_eq!(h.claim().unwrap().target, p("x1*x2"));
}

#[test]
fn gadget_error_degrees_stay_within_their_bounds() {
    let fs = corpus(21, 12, &CorpusSpec { max_depth: 1, vars: 3, ..CorpusSpec::default() });
    for pair in fs.chunks(2) {
        let a = compile_width2(&pair[0], &rat(1, 2)).eps_substitute_power(3);
        let b = compile_width2(&pair[1], &int(1)).eps_substitute_power(3);
        let (ea, eb) = (program_value(&a).error_degree().unwrap(), program_value(&b).error_degree().unwrap());
        let sum = program_value(&q_add(&a, &b).unwrap()).error_degree().unwrap();
        assert!(sum <= ea + eb);
        let sq = program_value(&q_square(&a, false).unwrap()).error_degree().unwrap();
        assert!(sq <= 2 * ea + 4);
    }
    let x = QProgram::primitive(l("1/2*x1")).eps_substitute_power(3);
    let y = QProgram::primitive(l("x2")).eps_substitute_power(3);
    let h = q_mul(&x, &y).unwrap();
    assert!(program_value(&h).error_degree().unwrap() <= 12);
}

#[test]
fn compile_leaf_and_small_formulas() {
    let x1 = parse_formula("x1").unwrap();
    let q = compile_width2(&x1, &int(1));
    assert!(q.len() <= 45);
    verify_claim(&q).unwrap();
    assert_eq!(q.claim().unwrap().target, p("x1"));

    let f = parse_formula("x1*x2 + x3*x4").unwrap();
    let q = compile_width2(&f, &int(1));
    assert_eq!(q.claim().unwrap().target, f.eval());
    assert!(q.len() as u128 <= length_bound(f.depth()));
    verify_claim(&q).unwrap();

    let z = compile_width2(&x1, &int(0));
    assert!(z.claim().unwrap().target.is_zero());
    verify_claim(&z).unwrap();
}

#[test]
fn compile_the_witness_family() {
    let text = (0..8).map(|i| format!("x{}*x{}", 2 * i + 1, 2 * i + 2)).collect::<Vec<_>>().join(" + ");
    let f = parse_formula(&text).unwrap();
    let (g, q) = compile_width2_family(&f);
    assert!(q.len() as u128 <= length_bound(g.depth()));
    assert_eq!(q.claim().unwrap().target, f.eval());
    verify_claim(&q).unwrap();
    assert_eq!(g.depth(), brent_reduce(&f).depth());
}

#[test]
fn checked_compilation_verifies_every_gadget() {
    let f = parse_formula("(x1 + 2)*x2 + x3").unwrap();
    let mut c = Compiler::new(true);
    let q = c.compile(&f, &int(1)).unwrap();
    assert_eq!(q.claim().unwrap().target, f.eval());
    assert!(c.stats.claims_verified >= c.stats.multiplications + c.stats.additions);
}

#[test]
fn windows_agree_with_full_expansion() {
    for f in corpus(5, 10, &CorpusSpec { max_depth: 1, vars: 3, ..CorpusSpec::default() }) {
        let q = compile_width2(&f, &int(1));
        let v = program_value(&q);
        for k in [1, 3, 7] {
            let w = low_window(&q, k);
            assert_eq!(w.to_matrix().map(|e| e.truncate_below(k)), v.map(|e| e.truncate_below(k)));
        }
        let e = v.error_degree().unwrap();
        let bound = error_degree_bound(&q);
        assert!(bound >= e);
        let top = eval_window(&q, Some(-e + 3), true, None).unwrap();
        assert_eq!(top.to_matrix().map(|x| x.truncate_below(-e + 3)), v.eps_reflect().map(|x| x.truncate_below(-e + 3)));
        if let Some(found) = error_degree_from_top(&q, 8, TOP_BUDGET) {
            assert_eq!(found, e);
        }
        assert_eq!(error_degree_of(&q), ErrorDegree { degree: e, exact: true });
    }
}

#[test]
fn det_checks() {
    for f in corpus(8, 6, &CorpusSpec { max_depth: 2, vars: 3, ..CorpusSpec::default() }) {
        let q = compile_width2(&f, &int(1));
        let d = check_det(&q, 2);
        assert!(d.holds, "{f}");
        let vars: Vec<u32> = f.vars().into_iter().collect();
        assert!(det_at_random_points(&q, &vars, 4, 1));
    }
}

#[test]
fn modular_values_of_short_programs() {
    let q = prog(&["x1", "x2", "x1 + x2"]);
    assert!(det_at_random_points(&q, &[1, 2], 3, 9));
    let two = prog(&["x1", "x2"]);
    let x = BTreeMap::from([(1, 5u64), (2, 7u64)]);
    let v = value_mod_p(&two, &x, 3).unwrap();
    assert_eq!(v, [[36, 7], [5, 1]]);
}

#[test]
fn interpolation_recovers_targets() {
    let f = parse_formula("x1*x2").unwrap();
    let q = compile_width2(&f, &int(1));
    let e = error_degree_of(&q).degree;
    assert_eq!(interpolate_exact(&q, e).unwrap(), p("x1*x2"));
    assert!(matches!(interpolate_exact(&q, e - 1), Err(Error::InsufficientDegree { .. })));
    let x = QProgram::primitive(l("x1"));
    assert_eq!(interpolate_exact(&x, 0).unwrap(), p("x1"));
}

#[test]
fn fib_degeneration_of_a_product() {
    let q = compile_width2(&parse_formula("x1*x2").unwrap(), &int(1));
    let d = fib_degeneration(&q).unwrap();
    assert_eq!(d.m, q.len());
    let fm = narrow_abp::fibonacci::fib_of_forms(&d.forms);
    assert_eq!(fm.eps_limit().unwrap(), p("x1*x2"));
    assert_eq!(d.m % 2, 1);
    let one = fib_degeneration(&QProgram::primitive(l("x1"))).unwrap();
    assert_eq!(narrow_abp::fibonacci::fib_of_forms(&one.forms), p("x1"));
}

#[test]
fn program_json_round_trip() {
    let q = compile_width2(&parse_formula("x1 + 3*x2").unwrap(), &rat(1, 3));
    let j = QProgramJson::from_program(&q, true);
    let text = serde_json::to_string(&j).unwrap();
    let back = QProgramJson::parse(&text).unwrap();
    assert_eq!(back, j);
    let q2 = back.to_program().unwrap();
    assert_eq!(q2.forms(), q.forms());
    assert_eq!(q2.claim(), q.claim());
}

fn point_value(v: &Matrix, x: &BTreeMap<u32, Rat>, eps: &Rat) -> [[u64; 2]; 2] {
    let mut out = [[0; 2]; 2];
    for (i, j, e) in v.entries() {
        let r = e.eval_eps(eps).unwrap().substitute_rat(x).as_rational().unwrap();
        out[i][j] = narrow_abp::width2::reduce(&r).unwrap();
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn lagrange_weights_reproduce_constant_terms(coeffs in prop::collection::vec(small_rat(), 1..7)) {
        let pts: Vec<Rat> = (1..=coeffs.len() as i64).map(int).collect();
        let g = |t: &Rat| coeffs.iter().rev().fold(Rat::from_integer(0.into()), |acc, c| acc * t + c);
        let w = lagrange_weights_at_zero(&pts);
        let s = w.iter().zip(&pts).fold(Rat::from_integer(0.into()), |acc, (b, a)| acc + b * g(a));
        prop_assert_eq!(s, coeffs[0].clone());
    }

    #[test]
    fn det_of_random_programs(forms in prop::collection::vec(affine_in(-1, 2), 0..7), t in 1u32..3) {
        let q = QProgram::from_forms(forms).eps_substitute_power(t);
        let sign = if q.len() % 2 == 0 { MPoly::one() } else { -MPoly::one() };
        prop_assert_eq!(program_value(&q).det(), sign);
        prop_assert!(check_det(&q, 2).holds);
    }

    #[test]
    fn dag_value_matches_flat_product(a in prop::collection::vec(affine_in(-1, 1), 1..4), b in prop::collection::vec(affine_in(-1, 1), 1..4), t in 1u32..3) {
        let qa = QProgram::from_forms(a).with_claim(Claim::exact(MPoly::zero())).eps_substitute_power(t);
        let qb = QProgram::from_forms(b).with_claim(Claim::exact(MPoly::zero()));
        let s = q_add(&qa, &qb).unwrap();
        prop_assert_eq!(program_value(&s), product(&s.forms()));
        prop_assert!(error_degree_bound(&s) >= program_value(&s).max_eps_exp_or_zero());
    }

    #[test]
    fn modular_values_match_exact_values(forms in prop::collection::vec(affine_in(-1, 2), 1..6), xs in prop::collection::vec(1i64..50, 4), e in 2i64..40) {
        let q = QProgram::from_forms(forms);
        let x: BTreeMap<u32, Rat> = xs.iter().enumerate().map(|(i, v)| (i as u32 + 1, int(*v))).collect();
        let xm: BTreeMap<u32, u64> = xs.iter().enumerate().map(|(i, v)| (i as u32 + 1, *v as u64)).collect();
        let exact = point_value(&program_value(&q), &x, &int(e));
        prop_assert_eq!(value_mod_p(&q, &xm, e as u64).unwrap(), exact);
    }
}

trait MaxEps {
    fn max_eps_exp_or_zero(&self) -> i64;
}

impl MaxEps for Matrix {
    fn max_eps_exp_or_zero(&self) -> i64 {
        self.entries().filter_map(|(_, _, e)| e.max_eps_exp()).max().unwrap_or(0)
    }
}
