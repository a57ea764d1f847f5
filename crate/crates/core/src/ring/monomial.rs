use std::cmp::Ordering;

/// Variable identifier. Display names live in [`super::Symbols`].
pub type Var = u32;

/// A power product of variables, stored as `(var, exponent)` pairs sorted by var
/// with every exponent positive.
///
/// Ordering is graded lexicographic: higher total degree is larger; ties are
/// broken by comparing exponents variable by variable starting from the
/// smallest id, the larger exponent winning.
#[derive(Clone, PartialEq, Eq, Hash, Default, Debug)]
pub struct Monomial {
    pows: Vec<(Var, u32)>,
}

impl Monomial {
    pub fn one() -> Self {
        Monomial { pows: Vec::new() }
    }

    pub fn var(v: Var) -> Self {
        Monomial { pows: vec![(v, 1)] }
    }

    pub fn from_pows<I: IntoIterator<Item = (Var, u32)>>(it: I) -> Self {
        let mut v: Vec<(Var, u32)> = it.into_iter().filter(|p| p.1 > 0).collect();
        v.sort_by_key(|p| p.0);
        let mut out: Vec<(Var, u32)> = Vec::with_capacity(v.len());
        for (x, e) in v {
            match out.last_mut() {
                Some(last) if last.0 == x => last.1 += e,
                _ => out.push((x, e)),
            }
        }
        Monomial { pows: out }
    }

    pub fn pows(&self) -> &[(Var, u32)] {
        &self.pows
    }

    pub fn is_one(&self) -> bool {
        self.pows.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.pows.iter().map(|p| p.1).sum()
    }

    pub fn exponent(&self, v: Var) -> u32 {
        match self.pows.binary_search_by_key(&v, |p| p.0) {
            Ok(i) => self.pows[i].1,
            Err(_) => 0,
        }
    }

    pub fn vars(&self) -> impl Iterator<Item = Var> + '_ {
        self.pows.iter().map(|p| p.0)
    }

    /// The single variable when this monomial is exactly `x_v`.
    pub fn as_var(&self) -> Option<Var> {
        match self.pows.as_slice() {
            [(v, 1)] => Some(*v),
            _ => None,
        }
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let (a, b) = (&self.pows, &other.pows);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((a[i].0, a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial { pows: out }
    }

    /// Removes variable `v`, returning its exponent and the remaining monomial.
    pub fn split_off(&self, v: Var) -> (u32, Monomial) {
        let e = self.exponent(v);
        let rest = Monomial {
            pows: self.pows.iter().copied().filter(|p| p.0 != v).collect(),
        };
        (e, rest)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.degree().cmp(&other.degree()) {
            Ordering::Equal => {}
            o => return o,
        }
        let (a, b) = (&self.pows, &other.pows);
        let (mut i, mut j) = (0, 0);
        loop {
            match (a.get(i), b.get(j)) {
                (None, None) => return Ordering::Equal,
                (Some(_), None) => return Ordering::Greater,
                (None, Some(_)) => return Ordering::Less,
                (Some(&(va, ea)), Some(&(vb, eb))) => {
                    if va < vb {
                        return Ordering::Greater;
                    }
                    if vb < va {
                        return Ordering::Less;
                    }
                    if ea != eb {
                        return ea.cmp(&eb);
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
