//! Sparse multivariate polynomials.
//!
//! Exponent vectors are dense `Vec<u32>` of a fixed arity; variable names are
//! shared behind an `Arc` and only matter for rendering, which is descending
//! graded-lex in the declared variable order.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::scalar::Scalar;

pub type ExpVec = Vec<u32>;

/// Ordered variable names shared by the polynomials of one ring.
pub type VarList = Arc<Vec<String>>;

pub fn varlist<S: Into<String>>(names: Vec<S>) -> VarList {
    Arc::new(names.into_iter().map(Into::into).collect())
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MultiPoly<C: Scalar> {
    vars: VarList,
    terms: BTreeMap<ExpVec, C>,
}

pub fn exp_mul(a: &[u32], b: &[u32]) -> ExpVec {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn exp_divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

pub fn exp_div(a: &[u32], b: &[u32]) -> ExpVec {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn exp_lcm(a: &[u32], b: &[u32]) -> ExpVec {
    a.iter().zip(b).map(|(x, y)| *x.max(y)).collect()
}

pub fn total_degree(e: &[u32]) -> u32 {
    e.iter().sum()
}

impl<C: Scalar> MultiPoly<C> {
    pub fn zero(vars: VarList) -> Self {
        MultiPoly { vars, terms: BTreeMap::new() }
    }

    pub fn constant(vars: VarList, c: C) -> Self {
        let n = vars.len();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(vec![0; n], c);
        }
        MultiPoly { vars, terms }
    }

    pub fn one(vars: VarList) -> Self {
        Self::constant(vars.clone(), C::one())
    }

    /// The i-th variable.
    pub fn var(vars: VarList, i: usize) -> Self {
        let n = vars.len();
        assert!(i < n);
        let mut e = vec![0; n];
        e[i] = 1;
        let mut terms = BTreeMap::new();
        terms.insert(e, C::one());
        MultiPoly { vars, terms }
    }

    pub fn monomial(vars: VarList, e: ExpVec, c: C) -> Self {
        assert_eq!(e.len(), vars.len());
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e, c);
        }
        MultiPoly { vars, terms }
    }

    pub fn vars(&self) -> &VarList {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ExpVec, &C)> {
        self.terms.iter()
    }

    pub fn insert_add(&mut self, e: ExpVec, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.remove(&e) {
            None => {
                self.terms.insert(e, c);
            }
            Some(old) => {
                let s = old + c;
                if !s.is_zero() {
                    self.terms.insert(e, s);
                }
            }
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.insert_add(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.insert_add(e.clone(), -c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        MultiPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c.clone())).collect(),
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let mut out = Self::zero(self.vars.clone());
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                out.insert_add(exp_mul(e1, e2), c1.clone() * c2.clone());
            }
        }
        out
    }

    /// Multiplies by the single term `c·x^e`.
    pub fn mul_term(&self, e: &[u32], c: &C) -> Self {
        let mut out = Self::zero(self.vars.clone());
        for (e1, c1) in &self.terms {
            out.insert_add(exp_mul(e1, e), c1.clone() * c.clone());
        }
        out
    }

    pub fn scale(&self, c: &C) -> Self {
        let mut out = Self::zero(self.vars.clone());
        for (e1, c1) in &self.terms {
            out.insert_add(e1.clone(), c1.clone() * c.clone());
        }
        out
    }

    /// Terms sorted descending graded-lex in declared variable order.
    fn sorted_terms(&self) -> Vec<(&ExpVec, &C)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|(a, _), (b, _)| {
            total_degree(b)
                .cmp(&total_degree(a))
                .then_with(|| b.cmp(a))
        });
        v
    }

    pub fn render(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (e, c)) in self.sorted_terms().into_iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else if neg {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            let mono = self.render_exp(e);
            if mono.is_empty() {
                out.push_str(&format!("{}", abs));
            } else if abs.is_one() {
                out.push_str(&mono);
            } else {
                out.push_str(&format!("{}*{}", abs, mono));
            }
        }
        out
    }

    fn render_exp(&self, e: &[u32]) -> String {
        let mut parts = Vec::new();
        for (i, &x) in e.iter().enumerate() {
            match x {
                0 => {}
                1 => parts.push(self.vars[i].clone()),
                _ => parts.push(format!("{}^{}", self.vars[i], x)),
            }
        }
        parts.join("*")
    }
}

impl<C: Scalar> fmt::Display for MultiPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

impl<C: Scalar> fmt::Debug for MultiPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MultiPoly({})", self.render())
    }
}
