mod common;

use common::*;
use narrow_abp::abp::*;
use narrow_abp::fibonacci::fib_poly;
use narrow_abp::formula::parse_formula;
use narrow_abp::ring::{AffineForm, EpsScalar, LabelClass, MPoly};
use narrow_abp::width2::{program_value, QProgram};
use narrow_abp::width3::{boc_compile, to_weakest_abp};
use narrow_abp::Error;
use proptest::prelude::*;

fn layer(rows: &[&[&str]]) -> LayerMatrix {
    LayerMatrix::from_rows(rows.iter().map(|r| r.iter().map(|s| l(s)).collect()).collect()).unwrap()
}

fn ones(n: usize) -> Vec<EpsScalar> {
    vec![EpsScalar::one(); n]
}

fn e1() -> [EpsScalar; 2] {
    [EpsScalar::one(), EpsScalar::zero()]
}

fn q_layer(x: &str) -> LayerMatrix {
    layer(&[&[x, "1"], &["1", "0"]])
}

#[test]
fn single_edge() {
    let a = Abp::new(vec![layer(&[&["x1"]])], ones(1), ones(1), LabelClass::Weakest).unwrap();
    assert_eq!(abp_value(&a).unwrap(), p("x1"));
    assert_eq!((a.width, a.layers(), a.edge_count()), (1, 1, 1));
}

#[test]
fn two_layers_of_ones_count_paths() {
    let m = layer(&[&["1", "0"], &["0", "1"]]);
    let a = Abp::new(vec![m.clone(), m], ones(2), ones(2), LabelClass::Weakest).unwrap();
    assert_eq!(abp_value(&a).unwrap(), p("2"));
}

#[test]
fn dimension_mismatch_is_reported() {
    let r = Abp::new(vec![layer(&[&["1", "1"]])], ones(2), ones(2), LabelClass::Weakest);
    assert!(matches!(r, Err(Error::DimensionMismatch(_))));
}

#[test]
fn validation() {
    let bad = Abp::new(vec![layer(&[&["x1 + x2"]])], ones(1), ones(1), LabelClass::Weak).unwrap();
    let rep = abp_validate(&bad, LabelClass::Weak);
    assert!(!rep.is_valid());
    assert_eq!(rep.violations.len(), 1);
    assert_eq!(rep.violations[0].class, LabelClass::WeakPlus);
    let consts = Abp::new(vec![layer(&[&["2", "0"], &["3", "1"]])], ones(2), ones(2), LabelClass::Weakest).unwrap();
    for c in [LabelClass::Weakest, LabelClass::Weak, LabelClass::WeakPlus, LabelClass::General] {
        assert!(abp_validate(&consts, c).is_valid());
    }
}

#[test]
fn ladders() {
    for s in ["3 + 2*x1", "1 + 2*x1 + 3*x2", "5", "x4 - 1/2*x2", "0"] {
        let f = l(s);
        let a = linear_ladder(&f).unwrap();
        assert!(abp_validate(&a, LabelClass::Weakest).is_valid(), "{s}");
        assert_eq!(abp_value(&a).unwrap(), f.to_mpoly(), "{s}");
        assert!(a.width <= 2);
    }
    assert!(matches!(linear_ladder(&l("eps*x1")), Err(Error::BadLabel(_))));
}

#[test]
fn ladders_concatenate_to_products_of_forms() {
    // (x1 + x2)^2 needs general width-1 labels but has a weakest width-2 ABP.
    let f = l("x1 + x2");
    let a = linear_ladder(&f).unwrap();
    let sq = abp_concat(&a, &a).unwrap();
    assert_eq!(abp_value(&sq).unwrap(), p("x1^2 + 2*x1*x2 + x2^2"));
    assert!(abp_validate(&sq, LabelClass::Weakest).is_valid());
    let w1 = Abp::new(vec![layer(&[&["x1 + x2"]]), layer(&[&["x1 + x2"]])], ones(1), ones(1), LabelClass::General)
        .unwrap();
    assert_eq!(abp_value(&w1).unwrap(), abp_value(&sq).unwrap());
    assert!(!abp_validate(&w1, LabelClass::Weak).is_valid());
}

#[test]
fn width_two_weakest_abp_for_two_products() {
    let a = Abp::new(
        vec![layer(&[&["x2", "0"], &["0", "x4"]]), layer(&[&["x1", "0"], &["0", "x3"]])],
        ones(2),
        ones(2),
        LabelClass::Weakest,
    )
    .unwrap();
    assert_eq!(abp_value(&a).unwrap(), p("x1*x2 + x3*x4"));
}

#[test]
fn width1_normalize_examples() {
    assert_eq!(width1_normalize(&[l("eps*x1"), l("eps^-1*x2")]).unwrap(), vec![l("x1"), l("x2")]);
    assert_eq!(width1_normalize(&[l("x1 + eps"), l("x2 + eps^2")]).unwrap(), vec![l("x1"), l("x2")]);
    assert!(matches!(width1_normalize(&[l("eps^-1*x1")]), Err(Error::NegativeLimit(-1))));
    assert_eq!(width1_normalize(&[l("0"), l("eps^-2*x1")]).unwrap(), vec![l("0"), l("x1")]);
}

#[test]
fn planarize_small_programs() {
    for forms in [vec!["x1", "x2", "x3"], vec!["x1"], vec!["x1", "eps + x2"], vec![]] {
        let q = QProgram::from_forms(forms.iter().map(|s| l(s)).collect());
        let a = planarize(&q, e1(), e1()).unwrap();
        assert!(a.matrices.iter().all(is_planar_layer));
        assert_eq!(abp_value(&a).unwrap(), program_value(&q).get(0, 0).clone(), "{forms:?}");
    }
    assert!(!is_planar_layer(&q_layer("x1")));
}

#[test]
fn q_chain_formula_is_fibonacci() {
    let mats: Vec<LayerMatrix> = (1..=8).map(|i| q_layer(&format!("x{i}"))).collect();
    let a = Abp::new(mats, e1().to_vec(), e1().to_vec(), LabelClass::Weakest).unwrap();
    assert_eq!(abp_value(&a).unwrap(), fib_poly(8));
    let f = abp_to_formula(&a).unwrap();
    assert_eq!(f.eval(), fib_poly(8));
}

#[test]
fn formulas_from_narrow_abps() {
    let w1 = Abp::new(vec![layer(&[&["x1 + 1"]]), layer(&[&["2*x2"]]), layer(&[&["x3"]])], ones(1), ones(1), LabelClass::Weak)
        .unwrap();
    assert_eq!(abp_to_formula(&w1).unwrap().eval(), p("2*x1*x2*x3 + 2*x2*x3"));
    let f = parse_formula("x1 + x2").unwrap();
    let a = to_weakest_abp(&boc_compile(&f)).unwrap();
    assert_eq!(abp_to_formula(&a).unwrap().eval(), f.eval());
    let parts = abp_to_formula_parts(&a).unwrap();
    assert!(parts.total_nodes > 0);
    assert_eq!(formula_template_cost(3), 9 * 5);
    let wide = Abp::new(vec![LayerMatrix::zeros(9, 9)], ones(9), ones(9), LabelClass::Weakest).unwrap();
    assert!(matches!(abp_to_formula(&wide), Err(Error::WidthTooLarge { width: 9, cap: WIDTH_CAP })));
    let eps = Abp::new(vec![layer(&[&["eps*x1"]])], ones(1), ones(1), LabelClass::General).unwrap();
    assert!(matches!(abp_to_formula(&eps), Err(Error::BadLabel(_))));
}

#[test]
fn json_round_trip() {
    let a = linear_ladder(&l("1 + 2*x1 + 3*x2")).unwrap();
    let j = AbpJson::from_abp(&a);
    let back = AbpJson::parse(&serde_json::to_string(&j).unwrap()).unwrap();
    assert_eq!(back, j);
    assert_eq!(back.to_abp().unwrap(), a);
}

fn simple_label() -> impl Strategy<Value = AffineForm> {
    prop_oneof![
        small_rat().prop_map(AffineForm::rat),
        (1u32..=3).prop_map(AffineForm::var),
        Just(AffineForm::zero()),
    ]
}

fn random_abp() -> impl Strategy<Value = Abp> {
    (1usize..=3, 1usize..=12).prop_flat_map(|(w, len)| {
        prop::collection::vec(prop::collection::vec(simple_label(), w * w), len).prop_map(move |layers| {
            let mats = layers
                .into_iter()
                .map(|e| LayerMatrix::from_rows(e.chunks(w).map(|r| r.to_vec()).collect()).unwrap())
                .collect();
            Abp::new(mats, ones(w), ones(w), LabelClass::Weak).unwrap()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn formula_round_trip(a in random_abp()) {
        prop_assert_eq!(abp_to_formula(&a).unwrap().eval(), abp_value(&a).unwrap());
    }

    #[test]
    fn concatenation_multiplies(a in random_abp(), b in random_abp()) {
        let c = abp_concat(&a, &b).unwrap();
        prop_assert_eq!(abp_value(&c).unwrap(), &abp_value(&a).unwrap() * &abp_value(&b).unwrap());
    }

    #[test]
    fn ladder_values(f in rational_affine()) {
        let a = linear_ladder(&f).unwrap();
        prop_assert!(abp_validate(&a, LabelClass::Weakest).is_valid());
        prop_assert_eq!(abp_value(&a).unwrap(), f.to_mpoly());
    }

    #[test]
    fn planarize_preserves_values(forms in prop::collection::vec(affine_in(0, 1), 0..7)) {
        let q = QProgram::from_forms(forms);
        let (s, t) = ([EpsScalar::from_int(2), EpsScalar::eps_pow(1)], [EpsScalar::one(), EpsScalar::from_int(-1)]);
        let a = planarize(&q, s.clone(), t.clone()).unwrap();
        prop_assert!(a.matrices.iter().all(is_planar_layer));
        let v = program_value(&q);
        let mut expect = MPoly::zero();
        for i in 0..2 {
            for j in 0..2 {
                let c = s[i].mul_truncated(&t[j], None);
                expect = &expect + &v.get(i, j).scale(&c);
            }
        }
        prop_assert_eq!(abp_value(&a).unwrap(), expect);
    }
}
