//! Buchberger's algorithm over ℚ: reduced Gröbner bases, normal forms,
//! ideal membership and Krull dimension via independent sets of the initial
//! ideal.
//!
//! Reduced bases are unique for a fixed term order, so the output does not
//! depend on the generator order; S-pairs are processed smallest
//! leading-term lcm first, ties broken by input index.

use std::cmp::Ordering;

use num::traits::One;

use crate::multipoly::{exp_div, exp_divides, exp_lcm, total_degree, ExpVec, MultiPoly, VarList};
use crate::Rat;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OrderKind {
    GradedReverseLex,
    Lex,
}

/// A monomial well-order: kind plus a significance permutation of the
/// variables (most significant first).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TermOrder {
    pub kind: OrderKind,
    pub var_order: Vec<usize>,
}

impl TermOrder {
    pub fn grevlex(nvars: usize) -> Self {
        TermOrder { kind: OrderKind::GradedReverseLex, var_order: (0..nvars).collect() }
    }

    pub fn lex(nvars: usize) -> Self {
        TermOrder { kind: OrderKind::Lex, var_order: (0..nvars).collect() }
    }

    pub fn compare(&self, a: &[u32], b: &[u32]) -> Ordering {
        match self.kind {
            OrderKind::Lex => {
                for &v in &self.var_order {
                    match a[v].cmp(&b[v]) {
                        Ordering::Equal => continue,
                        ord => return ord,
                    }
                }
                Ordering::Equal
            }
            OrderKind::GradedReverseLex => {
                match total_degree(a).cmp(&total_degree(b)) {
                    Ordering::Equal => {}
                    ord => return ord,
                }
                // a > b when the least significant differing exponent is
                // smaller in a.
                for &v in self.var_order.iter().rev() {
                    match a[v].cmp(&b[v]) {
                        Ordering::Equal => continue,
                        Ordering::Less => return Ordering::Greater,
                        Ordering::Greater => return Ordering::Less,
                    }
                }
                Ordering::Equal
            }
        }
    }
}

#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    pub vars: VarList,
    pub generators: Vec<MultiPoly<Rat>>,
    pub order: TermOrder,
    pub reduced: bool,
}

fn leading_term<'a>(f: &'a MultiPoly<Rat>, order: &TermOrder) -> Option<(&'a ExpVec, &'a Rat)> {
    f.terms()
        .max_by(|(a, _), (b, _)| order.compare(a, b))
}

/// Fully reduces `f` modulo `basis`: no term of the result is divisible by
/// any basis leading term.
pub fn normal_form(f: &MultiPoly<Rat>, basis: &[MultiPoly<Rat>], order: &TermOrder) -> MultiPoly<Rat> {
    let lts: Vec<(ExpVec, Rat)> = basis
        .iter()
        .map(|g| {
            let (e, c) = leading_term(g, order).expect("basis elements are nonzero");
            (e.clone(), c.clone())
        })
        .collect();
    let mut rem = f.clone();
    'outer: loop {
        // Reduce the order-largest reducible term.
        let mut terms: Vec<(ExpVec, Rat)> =
            rem.terms().map(|(e, c)| (e.clone(), c.clone())).collect();
        terms.sort_by(|(a, _), (b, _)| order.compare(b, a));
        for (e, c) in terms {
            for (k, (ge, gc)) in lts.iter().enumerate() {
                if exp_divides(ge, &e) {
                    let factor = c.clone() / gc.clone();
                    let shift = exp_div(&e, ge);
                    rem = rem.sub(&basis[k].mul_term(&shift, &factor));
                    continue 'outer;
                }
            }
        }
        return rem;
    }
}

fn make_monic(f: &MultiPoly<Rat>, order: &TermOrder) -> MultiPoly<Rat> {
    match leading_term(f, order) {
        None => f.clone(),
        Some((_, c)) => {
            let inv = Rat::one() / c.clone();
            f.scale(&inv)
        }
    }
}

/// Reduced Gröbner basis of the ideal generated by `gens`.
pub fn buchberger(vars: VarList, gens: &[MultiPoly<Rat>], order: TermOrder) -> GroebnerBasis {
    let mut basis: Vec<MultiPoly<Rat>> = Vec::new();
    for g in gens {
        if !g.is_zero() {
            basis.push(make_monic(g, &order));
        }
    }

    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for i in 0..basis.len() {
        for j in (i + 1)..basis.len() {
            pairs.push((i, j));
        }
    }

    while !pairs.is_empty() {
        // Normal selection: smallest lcm of leading terms, ties by index.
        pairs.sort_by(|&(i1, j1), &(i2, j2)| {
            let l1 = pair_lcm(&basis, i1, j1, &order);
            let l2 = pair_lcm(&basis, i2, j2, &order);
            order.compare(&l1, &l2).then((i1, j1).cmp(&(i2, j2)))
        });
        let (i, j) = pairs.remove(0);

        let (ei, _) = leading_term(&basis[i], &order).unwrap();
        let (ej, _) = leading_term(&basis[j], &order).unwrap();
        let lcm = exp_lcm(ei, ej);
        // Buchberger's first criterion: coprime leading terms reduce to zero.
        if total_degree(&lcm) == total_degree(ei) + total_degree(ej) {
            continue;
        }
        let si = exp_div(&lcm, ei);
        let sj = exp_div(&lcm, ej);
        let spoly = basis[i]
            .mul_term(&si, &Rat::one())
            .sub(&basis[j].mul_term(&sj, &Rat::one()));
        let nf = normal_form(&spoly, &basis, &order);
        if !nf.is_zero() {
            let new = make_monic(&nf, &order);
            basis.push(new);
            let k = basis.len() - 1;
            for i in 0..k {
                pairs.push((i, k));
            }
        }
    }

    // Interreduce to the unique reduced basis.
    let mut reduced: Vec<MultiPoly<Rat>> = Vec::new();
    let mut changed = true;
    while changed {
        changed = false;
        reduced.clear();
        for i in 0..basis.len() {
            let others: Vec<MultiPoly<Rat>> = basis
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, g)| g.clone())
                .collect();
            let nf = if others.is_empty() {
                basis[i].clone()
            } else {
                normal_form(&basis[i], &others, &order)
            };
            if nf.is_zero() {
                basis.remove(i);
                changed = true;
                break;
            }
            reduced.push(make_monic(&nf, &order));
        }
        if !changed {
            basis = reduced.clone();
            // One more sweep in case a tail reduction unlocked another.
            let again = basis.iter().enumerate().any(|(i, f)| {
                let others: Vec<_> = basis
                    .iter()
                    .enumerate()
                    .filter(|&(j, _)| j != i)
                    .map(|(_, g)| g.clone())
                    .collect();
                !others.is_empty() && &normal_form(f, &others, &order) != f
            });
            if again {
                changed = true;
            }
        }
    }

    basis.sort_by(|a, b| {
        let (ea, _) = leading_term(a, &order).unwrap();
        let (eb, _) = leading_term(b, &order).unwrap();
        order.compare(ea, eb)
    });
    GroebnerBasis { vars, generators: basis, order, reduced: true }
}

fn pair_lcm(basis: &[MultiPoly<Rat>], i: usize, j: usize, order: &TermOrder) -> ExpVec {
    let (ei, _) = leading_term(&basis[i], order).unwrap();
    let (ej, _) = leading_term(&basis[j], order).unwrap();
    exp_lcm(ei, ej)
}

/// True iff the normal form of `f` modulo `basis` is zero.
pub fn ideal_member_poly(f: &MultiPoly<Rat>, basis: &GroebnerBasis) -> bool {
    if f.is_zero() {
        return true;
    }
    if basis.generators.is_empty() {
        return false;
    }
    normal_form(f, &basis.generators, &basis.order).is_zero()
}

/// Mutual-membership equality of two ideals over the same variables.
pub fn ideal_equal(a: &GroebnerBasis, b: &GroebnerBasis) -> bool {
    a.generators.iter().all(|f| ideal_member_poly(f, b))
        && b.generators.iter().all(|f| ideal_member_poly(f, a))
}

/// Krull dimension of the quotient ring, read off the initial ideal: the
/// largest set of variables that supports no leading monomial entirely.
/// Returns −1 for the unit ideal.
pub fn krull_dimension(basis: &GroebnerBasis) -> i64 {
    krull_dimension_n(basis, basis.vars.len())
}

fn krull_dimension_n(basis: &GroebnerBasis, nvars: usize) -> i64 {
    // Unit ideal: some generator has a constant leading term.
    for g in &basis.generators {
        if let Some((e, _)) = leading_term(g, &basis.order) {
            if total_degree(e) == 0 {
                return -1;
            }
        }
    }
    let supports: Vec<Vec<usize>> = basis
        .generators
        .iter()
        .map(|g| {
            let (e, _) = leading_term(g, &basis.order).unwrap();
            (0..nvars).filter(|&i| e[i] > 0).collect()
        })
        .collect();
    let mut best: i64 = 0;
    for mask in 0u64..(1u64 << nvars) {
        let size = mask.count_ones() as i64;
        if size <= best {
            continue;
        }
        let independent = supports.iter().all(|sup| {
            !sup.iter().all(|&i| mask & (1 << i) != 0)
        });
        if independent {
            best = size;
        }
    }
    best
}
