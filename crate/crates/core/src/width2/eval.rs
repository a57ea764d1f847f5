//! Evaluation of [`QProgram`] values over the construction DAG.
//!
//! Besides exact expansion this module offers *windowed* evaluation: every
//! entry is a [`Series`] that is exact for all eps-exponents below a tracked
//! precision. A precision demand is pushed down the DAG; since each gadget
//! needs its inputs only modulo a small power of eps, and `eps -> eps^3`
//! divides the demand by three, deep programs whose full expansion is out of
//! reach can still be checked exactly near `eps = 0`.

use std::collections::HashMap;
use std::rc::Rc;
use std::sync::Arc;

use super::program::{ProgNode, QProgram};
use crate::error::{Error, Result};
use crate::ring::{rat_pow, AffineForm, MPoly, Matrix, Rat};

/// A Laurent series in eps with polynomial coefficients, known exactly below
/// `prec` (`None`: known exactly everywhere).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Series {
    pub poly: MPoly,
    pub prec: Option<i64>,
}

fn min_opt(a: Option<i64>, b: Option<i64>) -> Option<i64> {
    match (a, b) {
        (None, x) | (x, None) => x,
        (Some(x), Some(y)) => Some(x.min(y)),
    }
}

impl Series {
    pub fn exact(poly: MPoly) -> Series {
        Series { poly, prec: None }
    }

    pub fn zero() -> Series {
        Series::exact(MPoly::zero())
    }

    pub fn one() -> Series {
        Series::exact(MPoly::one())
    }

    pub fn is_exact(&self) -> bool {
        self.prec.is_none()
    }

    /// Lower bound for the valuation; `None` for the exact zero.
    pub fn val_lower_bound(&self) -> Option<i64> {
        match self.poly.min_eps_exp() {
            Some(v) => Some(v),
            None => self.prec,
        }
    }

    /// The valuation when it is determined by the known terms.
    pub fn valuation(&self) -> Option<i64> {
        self.poly.min_eps_exp()
    }

    pub fn mul(&self, other: &Series) -> Series {
        let (Some(va), Some(vb)) = (self.val_lower_bound(), other.val_lower_bound()) else {
            return Series::zero();
        };
        let cap = min_opt(self.prec.map(|p| p + vb), other.prec.map(|p| p + va));
        let poly = if self.poly.is_one() && cap.is_none() {
            other.poly.clone()
        } else if other.poly.is_one() && cap.is_none() {
            self.poly.clone()
        } else {
            self.poly.mul_truncated(&other.poly, cap)
        };
        Series { poly, prec: cap }
    }

    pub fn add(&self, other: &Series) -> Series {
        let prec = min_opt(self.prec, other.prec);
        let mut poly = &self.poly + &other.poly;
        if let Some(p) = prec {
            poly = poly.truncate_below(p);
        }
        Series { poly, prec }
    }

    /// Drops every exponent `>= cap`.
    pub fn truncate(&self, cap: i64) -> Series {
        if self.prec.is_some_and(|p| p <= cap) {
            return self.clone();
        }
        Series { poly: self.poly.truncate_below(cap), prec: Some(cap) }
    }

    fn subst(&self, t: u32) -> Series {
        Series { poly: self.poly.eps_substitute_power(t), prec: self.prec.map(|p| p * t as i64) }
    }

    fn size(&self) -> usize {
        self.poly.size()
    }
}

/// A 2x2 matrix of [`Series`], row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Window {
    pub e: [Series; 4],
}

impl Window {
    pub fn identity() -> Window {
        Window { e: [Series::one(), Series::zero(), Series::zero(), Series::one()] }
    }

    pub fn get(&self, i: usize, j: usize) -> &Series {
        &self.e[2 * i + j]
    }

    /// Smallest precision over the entries (`None` if all exact).
    pub fn prec(&self) -> Option<i64> {
        self.e.iter().fold(None, |acc, s| min_opt(acc, s.prec))
    }

    pub fn is_exact(&self) -> bool {
        self.e.iter().all(|s| s.is_exact())
    }

    pub fn to_matrix(&self) -> Matrix {
        Matrix::from_rows(vec![
            vec![self.e[0].poly.clone(), self.e[1].poly.clone()],
            vec![self.e[2].poly.clone(), self.e[3].poly.clone()],
        ])
    }

    fn mul(&self, rhs: &Window) -> Window {
        let entry = |i: usize, j: usize| self.get(i, 0).mul(rhs.get(0, j)).add(&self.get(i, 1).mul(rhs.get(1, j)));
        Window { e: [entry(0, 0), entry(0, 1), entry(1, 0), entry(1, 1)] }
    }

    /// `Q(l) * self`.
    fn apply_q(&self, l: &Series) -> Window {
        let top0 = l.mul(&self.e[0]).add(&self.e[2]);
        let top1 = l.mul(&self.e[1]).add(&self.e[3]);
        Window { e: [top0, top1, self.e[0].clone(), self.e[1].clone()] }
    }

    /// Drops every exponent `>= cap`.
    pub fn truncate(&self, cap: i64) -> Window {
        Window { e: self.e.clone().map(|s| s.truncate(cap)) }
    }

    /// Smallest known eps-exponent over the entries.
    pub fn valuation(&self) -> Option<i64> {
        self.e.iter().filter_map(|s| s.valuation()).min()
    }

    fn subst(&self, t: u32) -> Window {
        Window { e: [self.e[0].subst(t), self.e[1].subst(t), self.e[2].subst(t), self.e[3].subst(t)] }
    }

    fn size(&self) -> usize {
        self.e.iter().map(|s| s.size()).sum()
    }

    /// `det = e00*e11 - e01*e10`, with precision tracking.
    pub fn det(&self) -> Series {
        let a = self.e[0].mul(&self.e[3]);
        let b = self.e[1].mul(&self.e[2]);
        let nb = Series { poly: -&b.poly, prec: b.prec };
        a.add(&nb)
    }
}

struct DemandEval {
    reflect: bool,
    budget: Option<usize>,
    memo: HashMap<usize, (Option<i64>, Rc<Window>)>,
    degrees: HashMap<usize, DegreeMatrix>,
}

fn covers(have: Option<i64>, want: Option<i64>) -> bool {
    match (have, want) {
        (None, _) => true,
        (Some(_), None) => false,
        (Some(h), Some(w)) => h >= w,
    }
}

impl DemandEval {
    fn leaf(&self, l: &AffineForm) -> Series {
        let l = if self.reflect { l.eps_reflect() } else { l.clone() };
        Series::exact(l.to_mpoly())
    }

    fn check(&self, w: &Window) -> Result<()> {
        match self.budget {
            Some(b) if w.size() > b => Err(Error::CapExceeded { needed: w.size(), cap: b }),
            _ => Ok(()),
        }
    }

    /// Window of `node` exact for every exponent below `need` (`None`: exact).
    fn eval(&mut self, node: &Arc<ProgNode>, need: Option<i64>) -> Result<Rc<Window>> {
        let id = ProgNode::id(node);
        if let Some((have, w)) = self.memo.get(&id) {
            if covers(*have, need) {
                return Ok(w.clone());
            }
        }
        let w = match &**node {
            ProgNode::Form(l) => Window::identity().apply_q(&self.leaf(l)),
            ProgNode::Subst(c, t) => {
                let t64 = *t as i64;
                self.eval(c, need.map(|n| n.div_euclid(t64) + i64::from(n.rem_euclid(t64) != 0)))?.subst(*t)
            }
            ProgNode::Seq(cs) => self.eval_seq(cs, need)?,
        };
        let w = match need {
            Some(n) => w.truncate(n),
            None => w,
        };
        let w = Rc::new(w);
        let have = w.prec();
        self.memo.insert(id, (have, w.clone()));
        Ok(w)
    }

    fn eval_seq(&mut self, cs: &[Arc<ProgNode>], need: Option<i64>) -> Result<Window> {
        // Consecutive primitives are multiplied out exactly.
        enum Part<'a> {
            Run(Window),
            Node(&'a Arc<ProgNode>),
        }
        let mut parts = Vec::new();
        let mut run: Option<Window> = None;
        for c in cs {
            match &**c {
                ProgNode::Form(l) => {
                    let l = self.leaf(l);
                    run = Some(run.unwrap_or_else(Window::identity).apply_q(&l));
                }
                _ => {
                    if let Some(r) = run.take() {
                        parts.push(Part::Run(r));
                    }
                    parts.push(Part::Node(c));
                }
            }
        }
        if let Some(r) = run.take() {
            parts.push(Part::Run(r));
        }
        let Some(need) = need else {
            let mut acc = Window::identity();
            for p in &parts {
                acc = match p {
                    Part::Run(r) => r.mul(&acc),
                    Part::Node(c) => self.eval(c, None)?.mul(&acc),
                };
                self.check(&acc)?;
            }
            return Ok(acc);
        };
        // Each part gets a valuation lower bound: exact for runs; for
        // sub-programs 0 (their claims), or minus the max-plus degree bound
        // after reflection. A shortfall raises every demand and retries.
        let lbs: Vec<i64> = parts
            .iter()
            .map(|p| match p {
                Part::Run(r) => r.valuation().unwrap_or(0),
                Part::Node(c) => self.lower_bound(c),
            })
            .collect();
        let total: i64 = lbs.iter().sum();
        let mut suffix = vec![0i64; parts.len() + 1];
        for i in (0..parts.len()).rev() {
            suffix[i] = suffix[i + 1] + lbs[i];
        }
        let mut extra = 0;
        loop {
            let mut acc = Window::identity();
            for (i, p) in parts.iter().enumerate() {
                acc = match p {
                    Part::Run(r) => r.mul(&acc),
                    Part::Node(c) => self.eval(c, Some(need - total + lbs[i] + extra))?.mul(&acc),
                };
                acc = acc.truncate(need - suffix[i + 1] + extra);
                self.check(&acc)?;
            }
            match acc.prec() {
                Some(p) if p < need => extra += need - p,
                _ => return Ok(acc),
            }
        }
    }

    fn lower_bound(&mut self, node: &Arc<ProgNode>) -> i64 {
        if !self.reflect {
            return 0;
        }
        let d = degree_node(node, &mut self.degrees);
        -d.iter().flatten().filter_map(|x| *x).max().unwrap_or(0)
    }
}

/// Window of the program value exact for every eps-exponent below `need`
/// (everything when `None`); with `reflect`, of the value at `eps -> 1/eps`.
pub fn eval_window(q: &QProgram, need: Option<i64>, reflect: bool, budget: Option<usize>) -> Result<Window> {
    let mut ev = DemandEval { reflect, budget, memo: HashMap::new(), degrees: HashMap::new() };
    let w = ev.eval(q.root(), need)?;
    Ok((*w).clone())
}

/// The exact 2x2 product `Q(l_m) ... Q(l_1)`; the identity for an empty program.
pub fn program_value(q: &QProgram) -> Matrix {
    eval_window(q, None, false, None).expect("no budget given").to_matrix()
}

/// Exact value, giving up once an intermediate matrix exceeds `budget` terms.
pub fn program_value_within(q: &QProgram, budget: usize) -> Result<Matrix> {
    Ok(eval_window(q, None, false, Some(budget))?.to_matrix())
}

/// Low-order window exact for every eps-exponent below `k`.
pub fn low_window(q: &QProgram, k: i64) -> Window {
    eval_window(q, Some(k), false, None).expect("no budget given")
}

/// Entrywise upper bounds on the largest eps-exponent, by max-plus
/// propagation over the DAG (`None` marks an entry known to be zero).
/// Runs of consecutive primitives are multiplied out exactly first.
pub fn degree_bounds(q: &QProgram) -> DegreeMatrix {
    let mut memo = HashMap::new();
    degree_node(q.root(), &mut memo)
}

/// Upper bound on the error degree of the program value.
pub fn error_degree_bound(q: &QProgram) -> i64 {
    degree_bounds(q).iter().flatten().filter_map(|d| *d).max().unwrap_or(0)
}

/// Exact error degree, found from the top coefficients: the value at
/// `eps -> 1/eps` is evaluated below `-bound + s` for growing `s`, where
/// `bound` is [`error_degree_bound`]. `None` if nothing shows up by
/// `s = max_gap` or an intermediate window exceeds `budget` terms.
pub fn error_degree_from_top(q: &QProgram, max_gap: i64, budget: usize) -> Option<i64> {
    let bound = error_degree_bound(q);
    let mut s = 1;
    loop {
        let w = eval_window(q, Some(-bound + s), true, Some(budget)).ok()?;
        if let Some(v) = w.valuation() {
            return Some(-v.min(0));
        }
        if s >= max_gap {
            return None;
        }
        s = (2 * s).min(max_gap);
    }
}

/// Max-plus 2x2 matrix; `None` is minus infinity.
pub type DegreeMatrix = [[Option<i64>; 2]; 2];

fn max_plus(a: &DegreeMatrix, b: &DegreeMatrix) -> DegreeMatrix {
    let mut out = [[None; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                if let (Some(x), Some(y)) = (a[i][k], b[k][j]) {
                    out[i][j] = Some(out[i][j].map_or(x + y, |o: i64| o.max(x + y)));
                }
            }
        }
    }
    out
}

fn degrees_of(w: &Window) -> DegreeMatrix {
    let d = |s: &Series| s.poly.max_eps_exp();
    [[d(&w.e[0]), d(&w.e[1])], [d(&w.e[2]), d(&w.e[3])]]
}

fn degree_node(node: &Arc<ProgNode>, memo: &mut HashMap<usize, DegreeMatrix>) -> DegreeMatrix {
    let id = ProgNode::id(node);
    if let Some(d) = memo.get(&id) {
        return *d;
    }
    let d = match &**node {
        ProgNode::Form(l) => degrees_of(&Window::identity().apply_q(&Series::exact(l.to_mpoly()))),
        ProgNode::Subst(c, t) => {
            let inner = degree_node(c, memo);
            inner.map(|row| row.map(|e| e.map(|x| x * *t as i64)))
        }
        ProgNode::Seq(cs) => {
            let id_m: DegreeMatrix = [[Some(0), None], [None, Some(0)]];
            let mut acc = id_m;
            let mut run: Option<Window> = None;
            for c in cs {
                match &**c {
                    ProgNode::Form(l) => {
                        let l = Series::exact(l.to_mpoly());
                        run = Some(run.unwrap_or_else(Window::identity).apply_q(&l));
                    }
                    _ => {
                        if let Some(r) = run.take() {
                            acc = max_plus(&degrees_of(&r), &acc);
                        }
                        acc = max_plus(&degree_node(c, memo), &acc);
                    }
                }
            }
            if let Some(r) = run.take() {
                acc = max_plus(&degrees_of(&r), &acc);
            }
            acc
        }
    };
    memo.insert(id, d);
    d
}

/// The exact value at `eps = x`, evaluated over the DAG.
pub fn value_at(q: &QProgram, x: &Rat) -> Result<Matrix> {
    let mut memo: HashMap<(usize, u64), Rc<Matrix>> = HashMap::new();
    let m = value_at_node(q.root(), x, 1, &mut memo)?;
    Ok((*m).clone())
}

fn value_at_node(
    node: &Arc<ProgNode>,
    x: &Rat,
    t: u64,
    memo: &mut HashMap<(usize, u64), Rc<Matrix>>,
) -> Result<Rc<Matrix>> {
    let key = (ProgNode::id(node), t);
    if let Some(m) = memo.get(&key) {
        return Ok(m.clone());
    }
    let point = || rat_pow(x, t as i64);
    let leaf = |l: &AffineForm| -> Result<MPoly> { Ok(l.eval_eps(&point())?.to_mpoly()) };
    let m = match &**node {
        ProgNode::Form(l) => super::program::q_matrix(&leaf(l)?),
        ProgNode::Subst(c, s) => (*value_at_node(c, x, t * *s as u64, memo)?).clone(),
        ProgNode::Seq(cs) => {
            let mut acc = Matrix::identity(2);
            for c in cs {
                acc = match &**c {
                    ProgNode::Form(l) => {
                        let l = leaf(l)?;
                        let top0 = &(&l * acc.get(0, 0)) + acc.get(1, 0);
                        let top1 = &(&l * acc.get(0, 1)) + acc.get(1, 1);
                        Matrix::from_rows(vec![vec![top0, top1], vec![acc.get(0, 0).clone(), acc.get(0, 1).clone()]])
                    }
                    _ => &*value_at_node(c, x, t, memo)? * &acc,
                };
            }
            acc
        }
    };
    let m = Rc::new(m);
    memo.insert(key, m.clone());
    Ok(m)
}
