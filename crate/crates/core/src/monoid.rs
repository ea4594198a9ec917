//! Finitely presented commutative pointed monoids (monoids with zero).
//!
//! A presentation lists generators, relation pairs between monomials (either
//! side may be the absorbing zero) and an optional subset of generators that
//! are declared invertible. The word problem is decided through the
//! correspondence between monoid congruences and pure-difference binomial
//! ideals: words u, v are congruent iff X^u − X^v lies in the ideal spanned
//! by the relation binomials over ℚ, with one auxiliary inverse variable per
//! inverted generator. An independent breadth-first closure oracle lives in
//! [`crate::wordcheck`].

use std::collections::{BTreeMap, BTreeSet, HashSet, VecDeque};
use std::fmt;

use num::traits::One;
use thiserror::Error;

use crate::groebner::{buchberger, normal_form, GroebnerBasis, TermOrder};
use crate::matrix::{smith_form, IntegerMatrix};
use crate::multipoly::{varlist, ExpVec, MultiPoly, VarList};
use crate::{Int, Rat};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MonoidError {
    #[error("inverting zero collapses the monoid to the trivial one")]
    LocalizedZero { trivial: MonoidPresentation },
    #[error("search budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("malformed monomial: {0}")]
    Malformed(String),
}

/// An element of a presented monoid: the absorbing zero or an exponent word.
/// Exponents of generators declared invertible may be negative.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Monomial {
    Zero,
    Word(Vec<i64>),
}

impl Monomial {
    pub fn one(n: usize) -> Self {
        Monomial::Word(vec![0; n])
    }

    pub fn gen(n: usize, i: usize) -> Self {
        let mut e = vec![0; n];
        e[i] = 1;
        Monomial::Word(e)
    }

    pub fn word(e: Vec<i64>) -> Self {
        Monomial::Word(e)
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Monomial::Zero)
    }

    pub fn is_one(&self) -> bool {
        matches!(self, Monomial::Word(e) if e.iter().all(|&x| x == 0))
    }

    pub fn exponents(&self) -> Option<&[i64]> {
        match self {
            Monomial::Zero => None,
            Monomial::Word(e) => Some(e),
        }
    }

    /// Product in the free pointed monoid; zero absorbs.
    pub fn mul(&self, other: &Monomial) -> Monomial {
        match (self, other) {
            (Monomial::Zero, _) | (_, Monomial::Zero) => Monomial::Zero,
            (Monomial::Word(a), Monomial::Word(b)) => {
                Monomial::Word(a.iter().zip(b).map(|(x, y)| x + y).collect())
            }
        }
    }

    pub fn pow(&self, k: u32) -> Monomial {
        match self {
            Monomial::Zero => Monomial::Zero,
            Monomial::Word(e) => Monomial::Word(e.iter().map(|x| x * k as i64).collect()),
        }
    }

    pub fn total_degree(&self) -> u64 {
        match self {
            Monomial::Zero => 0,
            Monomial::Word(e) => e.iter().map(|x| x.unsigned_abs()).sum(),
        }
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Monomial::Zero => write!(f, "0"),
            Monomial::Word(e) => write!(f, "X{:?}", e),
        }
    }
}

/// A monoid ideal given by generating monomials; zero is always contained.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonoidIdeal {
    pub generators: Vec<Monomial>,
}

/// A prime ideal, canonically the inclusion-minimal generating subset of the
/// presentation's generators.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PrimeIdeal {
    pub generators: BTreeSet<usize>,
}

impl PrimeIdeal {
    pub fn new<I: IntoIterator<Item = usize>>(gens: I) -> Self {
        PrimeIdeal { generators: gens.into_iter().collect() }
    }

    /// Stable id such as `p_T1_T4`; the zero ideal renders as `p_`.
    pub fn id(&self, pres: &MonoidPresentation) -> String {
        let names: Vec<&str> = self
            .generators
            .iter()
            .map(|&i| pres.generators[i].as_str())
            .collect();
        format!("p_{}", names.join("_"))
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct MonoidPresentation {
    pub generators: Vec<String>,
    pub relations: Vec<(Monomial, Monomial)>,
    /// Indices of generators declared invertible.
    pub inverted: BTreeSet<usize>,
}

impl fmt::Debug for MonoidPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MonoidPresentation(gens: {:?})", self.generators)
    }
}

impl MonoidPresentation {
    /// The free pointed monoid on the named generators.
    pub fn free<S: Into<String>>(gens: Vec<S>) -> Self {
        MonoidPresentation {
            generators: gens.into_iter().map(Into::into).collect(),
            relations: Vec::new(),
            inverted: BTreeSet::new(),
        }
    }

    /// The two-element monoid {0, 1}.
    pub fn point() -> Self {
        Self::free(Vec::<String>::new())
    }

    /// The trivial monoid 0 = 1.
    pub fn trivial() -> Self {
        let mut p = Self::point();
        p.relations.push((Monomial::one(0), Monomial::Zero));
        p
    }

    pub fn ngens(&self) -> usize {
        self.generators.len()
    }

    pub fn with_relation(mut self, lhs: Monomial, rhs: Monomial) -> Self {
        self.relations.push((lhs, rhs));
        self
    }

    pub fn with_inverted(mut self, idx: usize) -> Self {
        self.inverted.insert(idx);
        self
    }

    pub fn gen_index(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g == name)
    }

    /// Checks arity and that only inverted generators carry negative
    /// exponents.
    pub fn validate_monomial(&self, m: &Monomial) -> Result<(), MonoidError> {
        if let Monomial::Word(e) = m {
            if e.len() != self.ngens() {
                return Err(MonoidError::Malformed(format!(
                    "expected {} exponents, got {}",
                    self.ngens(),
                    e.len()
                )));
            }
            for (i, &x) in e.iter().enumerate() {
                if x < 0 && !self.inverted.contains(&i) {
                    return Err(MonoidError::Malformed(format!(
                        "negative exponent on non-invertible generator {}",
                        self.generators[i]
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn format_monomial(&self, m: &Monomial) -> String {
        match m {
            Monomial::Zero => "0".to_string(),
            Monomial::Word(e) => {
                let mut parts = Vec::new();
                for (i, &x) in e.iter().enumerate() {
                    match x {
                        0 => {}
                        1 => parts.push(self.generators[i].clone()),
                        _ => parts.push(format!("{}^{}", self.generators[i], x)),
                    }
                }
                if parts.is_empty() {
                    "1".to_string()
                } else {
                    parts.join("*")
                }
            }
        }
    }
}

/// Decision engine for one presentation: the binomial-ideal encoding with a
/// cached reduced Gröbner basis. Immutable once built.
pub struct MonoidEngine {
    pres: MonoidPresentation,
    vars: VarList,
    aux: BTreeMap<usize, usize>,
    relation_polys: Vec<MultiPoly<Rat>>,
    basis: GroebnerBasis,
}

impl MonoidEngine {
    pub fn new(pres: &MonoidPresentation) -> Self {
        let n = pres.ngens();
        let mut names: Vec<String> = pres.generators.clone();
        let mut aux = BTreeMap::new();
        for &i in &pres.inverted {
            aux.insert(i, names.len());
            names.push(format!("{}_inv", pres.generators[i]));
        }
        let vars = varlist(names);

        let mut polys: Vec<MultiPoly<Rat>> = Vec::new();
        for (a, b) in &pres.relations {
            let pa = encode_monomial(&vars, &aux, n, a);
            let pb = encode_monomial(&vars, &aux, n, b);
            let diff = pa.sub(&pb);
            if !diff.is_zero() {
                polys.push(diff);
            }
        }
        for (&g, &u) in &aux {
            let prod = MultiPoly::var(vars.clone(), g).mul(&MultiPoly::var(vars.clone(), u));
            polys.push(prod.sub(&MultiPoly::one(vars.clone())));
        }
        let order = TermOrder::grevlex(vars.len());
        let basis = buchberger(vars.clone(), &polys, order);
        MonoidEngine { pres: pres.clone(), vars, aux, relation_polys: polys, basis }
    }

    pub fn presentation(&self) -> &MonoidPresentation {
        &self.pres
    }

    pub fn vars(&self) -> &VarList {
        &self.vars
    }

    pub fn relation_polys(&self) -> &[MultiPoly<Rat>] {
        &self.relation_polys
    }

    pub fn basis(&self) -> &GroebnerBasis {
        &self.basis
    }

    pub fn encode(&self, m: &Monomial) -> MultiPoly<Rat> {
        encode_monomial(&self.vars, &self.aux, self.pres.ngens(), m)
    }

    fn decode(&self, e: &ExpVec) -> Monomial {
        let n = self.pres.ngens();
        let mut out = vec![0i64; n];
        for (i, slot) in out.iter_mut().enumerate() {
            *slot = e[i] as i64;
        }
        for (&g, &u) in &self.aux {
            out[g] -= e[u] as i64;
        }
        Monomial::Word(out)
    }

    /// Canonical representative of the congruence class of `m`.
    pub fn normalize(&self, m: &Monomial) -> Monomial {
        if m.is_zero() {
            return Monomial::Zero;
        }
        let p = self.encode(m);
        let nf = if self.basis.generators.is_empty() {
            p
        } else {
            normal_form(&p, &self.basis.generators, &self.basis.order)
        };
        if nf.is_zero() {
            return Monomial::Zero;
        }
        debug_assert_eq!(nf.num_terms(), 1, "binomial normal form must be a term");
        let (e, _) = nf.terms().next().unwrap();
        self.decode(e)
    }

    /// True iff u ≡ v in the congruence generated by the relations.
    pub fn word_equal(&self, u: &Monomial, v: &Monomial) -> bool {
        self.normalize(u) == self.normalize(v)
    }

    /// Monoid product followed by normalization.
    pub fn mul(&self, u: &Monomial, v: &Monomial) -> Monomial {
        self.normalize(&u.mul(v))
    }

    /// Gröbner view of a monoid ideal, for repeated membership queries.
    pub fn ideal(&self, gens: &[Monomial]) -> IdealView<'_> {
        let mut polys = self.relation_polys.clone();
        for m in gens {
            if m.is_zero() {
                continue;
            }
            polys.push(self.encode(m));
        }
        let basis = buchberger(self.vars.clone(), &polys, TermOrder::grevlex(self.vars.len()));
        IdealView { engine: self, basis }
    }

    /// Congruence classes reachable as products of the given generators, by
    /// breadth-first multiplication up to a word-length bound. The second
    /// return is true when the enumeration closed before the bound.
    pub fn classes_from(&self, gen_indices: &[usize], max_length: u64) -> (Vec<Monomial>, bool) {
        let n = self.pres.ngens();
        let mut seen: HashSet<Monomial> = HashSet::new();
        let mut out = Vec::new();
        let one = self.normalize(&Monomial::one(n));
        let mut queue: VecDeque<(Monomial, u64)> = VecDeque::new();
        seen.insert(one.clone());
        out.push(one.clone());
        queue.push_back((one, 0));
        let mut exhausted = true;
        while let Some((m, len)) = queue.pop_front() {
            if len >= max_length {
                exhausted = false;
                continue;
            }
            for &i in gen_indices {
                let steps: &[i64] =
                    if self.pres.inverted.contains(&i) { &[1, -1] } else { &[1] };
                for &s in steps {
                    let mut e = vec![0i64; n];
                    e[i] = s;
                    let next = self.mul(&m, &Monomial::Word(e));
                    if next.is_zero() {
                        continue;
                    }
                    if seen.insert(next.clone()) {
                        out.push(next.clone());
                        queue.push_back((next, len + 1));
                    }
                }
            }
        }
        (out, exhausted)
    }

    /// All congruence classes of words up to the given length.
    pub fn classes_up_to(&self, max_length: u64) -> (Vec<Monomial>, bool) {
        let all: Vec<usize> = (0..self.pres.ngens()).collect();
        self.classes_from(&all, max_length)
    }
}

fn encode_monomial(
    vars: &VarList,
    aux: &BTreeMap<usize, usize>,
    ngens: usize,
    m: &Monomial,
) -> MultiPoly<Rat> {
    match m {
        Monomial::Zero => MultiPoly::zero(vars.clone()),
        Monomial::Word(e) => {
            assert_eq!(e.len(), ngens, "arity mismatch");
            let mut exp = vec![0u32; vars.len()];
            for (i, &x) in e.iter().enumerate() {
                if x >= 0 {
                    exp[i] = x as u32;
                } else {
                    let u = *aux
                        .get(&i)
                        .unwrap_or_else(|| panic!("negative exponent on non-inverted generator"));
                    exp[u] = (-x) as u32;
                }
            }
            MultiPoly::monomial(vars.clone(), exp, Rat::one())
        }
    }
}

/// Membership oracle for one monoid ideal.
pub struct IdealView<'a> {
    engine: &'a MonoidEngine,
    basis: GroebnerBasis,
}

impl IdealView<'_> {
    pub fn contains(&self, m: &Monomial) -> bool {
        if m.is_zero() {
            return true;
        }
        if self.basis.generators.is_empty() {
            return false;
        }
        let p = self.engine.encode(m);
        normal_form(&p, &self.basis.generators, &self.basis.order).is_zero()
    }

    pub fn contains_one(&self) -> bool {
        self.contains(&Monomial::one(self.engine.pres.ngens()))
    }
}

/// True iff u ≡ v over the presentation.
pub fn word_equal(pres: &MonoidPresentation, u: &Monomial, v: &Monomial) -> bool {
    MonoidEngine::new(pres).word_equal(u, v)
}

/// True iff m lies in the ideal generated by `ideal` (zero always does).
pub fn ideal_member(pres: &MonoidPresentation, m: &Monomial, ideal: &MonoidIdeal) -> bool {
    MonoidEngine::new(pres).ideal(&ideal.generators).contains(m)
}

/// Result of the unit-group analysis.
#[derive(Clone, Debug)]
pub struct UnitLattice {
    /// Free rank of ℤⁿ modulo the relation lattice.
    pub rank: usize,
    /// True iff every generator has a verified inverse.
    pub is_group_with_zero: bool,
    /// Invariant factors > 1 of the relation lattice quotient.
    pub torsion: Vec<Int>,
    /// A representative word per torsion factor, when one exists with
    /// admissible exponents.
    pub torsion_reps: Vec<Option<Monomial>>,
    /// True when the inverse search enumerated the full class space.
    pub search_exhausted: bool,
}

/// Detects whether the nonzero classes form a group and computes the rank of
/// ℤⁿ modulo the exponent-difference lattice of the relations.
pub fn unit_lattice(pres: &MonoidPresentation, search_length: u64) -> UnitLattice {
    let engine = MonoidEngine::new(pres);
    unit_lattice_with(&engine, search_length)
}

pub fn unit_lattice_with(engine: &MonoidEngine, search_length: u64) -> UnitLattice {
    let pres = engine.presentation();
    let n = pres.ngens();
    let (classes, exhausted) = engine.classes_up_to(search_length);
    let one = engine.normalize(&Monomial::one(n));
    let mut is_group = true;
    for i in 0..n {
        let g = Monomial::gen(n, i);
        let has_inverse = pres.inverted.contains(&i)
            || classes.iter().any(|c| engine.mul(&g, c) == one);
        if !has_inverse {
            is_group = false;
            break;
        }
    }

    let rows: Vec<Vec<i64>> = pres
        .relations
        .iter()
        .filter_map(|(a, b)| match (a, b) {
            (Monomial::Word(ea), Monomial::Word(eb)) => {
                Some(ea.iter().zip(eb).map(|(x, y)| x - y).collect())
            }
            _ => None,
        })
        .collect();
    if rows.is_empty() {
        return UnitLattice {
            rank: n,
            is_group_with_zero: is_group,
            torsion: Vec::new(),
            torsion_reps: Vec::new(),
            search_exhausted: exhausted,
        };
    }
    let mat = IntegerMatrix::new(
        rows.len(),
        n,
        rows.iter().flatten().map(|&x| Int::from(x)).collect(),
    );
    let form = smith_form(&mat);
    let rank = n - form.invariant_factors.len();
    let mut torsion = Vec::new();
    let mut torsion_reps = Vec::new();
    for (i, d) in form.invariant_factors.iter().enumerate() {
        if d > &Int::one() {
            torsion.push(d.clone());
            let rep: Vec<i64> = (0..n)
                .map(|j| int_to_i64(&form.col_transform_inv[(i, j)]))
                .collect();
            torsion_reps.push(admissible_rep(pres, &rows, rep));
        }
    }
    UnitLattice {
        rank,
        is_group_with_zero: is_group,
        torsion,
        torsion_reps,
        search_exhausted: exhausted,
    }
}

fn int_to_i64(x: &Int) -> i64 {
    use num::ToPrimitive;
    x.to_i64().expect("lattice coordinates fit in i64")
}

/// Searches small lattice translates of `rep` for a word whose non-inverted
/// exponents are nonnegative.
fn admissible_rep(
    pres: &MonoidPresentation,
    lattice_rows: &[Vec<i64>],
    rep: Vec<i64>,
) -> Option<Monomial> {
    let ok = |v: &[i64]| {
        v.iter()
            .enumerate()
            .all(|(i, &x)| x >= 0 || pres.inverted.contains(&i))
    };
    if ok(&rep) {
        return Some(Monomial::Word(rep));
    }
    let k = lattice_rows.len().min(3);
    if k == 0 {
        return None;
    }
    let span = 4i64;
    let mut coeffs = vec![-span; k];
    loop {
        let mut cand = rep.clone();
        for (ci, row) in coeffs.iter().zip(lattice_rows) {
            for (c, r) in cand.iter_mut().zip(row) {
                *c += ci * r;
            }
        }
        if ok(&cand) {
            return Some(Monomial::Word(cand));
        }
        let mut pos = 0;
        loop {
            if pos == k {
                return None;
            }
            coeffs[pos] += 1;
            if coeffs[pos] <= span {
                break;
            }
            coeffs[pos] = -span;
            pos += 1;
        }
    }
}

/// Budgets for the prime-enumeration closure checks.
#[derive(Clone, Debug)]
pub struct PrimeBudget {
    /// Bound on the total degree of products of outside generators; the
    /// default is 2 × generator count.
    pub max_product_degree: Option<u64>,
    /// Hard cap on normal-form computations.
    pub max_ops: u64,
}

impl Default for PrimeBudget {
    fn default() -> Self {
        PrimeBudget { max_product_degree: None, max_ops: 20_000_000 }
    }
}

/// Enumerates all prime ideals, each given by its inclusion-minimal
/// generator subset. Candidates are subsets of the generators; one qualifies
/// when 1 stays outside the generated ideal and no product of outside
/// generators, up to the degree budget, falls into it.
pub fn enumerate_primes(
    pres: &MonoidPresentation,
    budget: &PrimeBudget,
) -> Result<Vec<PrimeIdeal>, MonoidError> {
    let engine = MonoidEngine::new(pres);
    enumerate_primes_with(&engine, budget)
}

pub fn enumerate_primes_with(
    engine: &MonoidEngine,
    budget: &PrimeBudget,
) -> Result<Vec<PrimeIdeal>, MonoidError> {
    let pres = engine.presentation();
    let n = pres.ngens();
    assert!(n <= 20, "prime enumeration is for desk-scale presentations");
    let bound = budget.max_product_degree.unwrap_or(2 * n as u64);
    let mut ops: u64 = 0;

    let mut survivors: Vec<(PrimeIdeal, IdealView<'_>)> = Vec::new();
    let mut masks: Vec<u32> = (0..(1u32 << n)).collect();
    masks.sort_by_key(|m| (m.count_ones(), *m));

    'cand: for mask in masks {
        let subset: Vec<usize> = (0..n).filter(|i| mask & (1 << i) != 0).collect();
        let gens: Vec<Monomial> = subset.iter().map(|&i| Monomial::gen(n, i)).collect();
        let view = engine.ideal(&gens);
        ops += 1;
        if view.contains_one() {
            continue;
        }
        // Multiplicative closure of the complement: walk products of the
        // outside generators and require that none lands in the ideal.
        let outside: Vec<usize> = (0..n).filter(|i| !subset.contains(i)).collect();
        let mut seen: HashSet<Monomial> = HashSet::new();
        let mut queue: VecDeque<(Monomial, u64)> = VecDeque::new();
        let one = engine.normalize(&Monomial::one(n));
        seen.insert(one.clone());
        queue.push_back((one, 0));
        while let Some((m, d)) = queue.pop_front() {
            if d >= bound {
                continue;
            }
            for &i in &outside {
                let next = engine.mul(&m, &Monomial::gen(n, i));
                ops += 1;
                if ops > budget.max_ops {
                    return Err(MonoidError::BudgetExceeded(format!(
                        "{} normal forms during prime enumeration",
                        ops
                    )));
                }
                if view.contains(&next) {
                    continue 'cand;
                }
                if seen.insert(next.clone()) {
                    queue.push_back((next, d + 1));
                }
            }
        }
        survivors.push((PrimeIdeal::new(subset), view));
    }

    // Canonical form: drop generators already generated by the rest, then
    // merge subsets presenting the same ideal.
    let minimized: Vec<(PrimeIdeal, &IdealView<'_>)> = survivors
        .iter()
        .map(|(p, view)| {
            let mut subset: Vec<usize> = p.generators.iter().copied().collect();
            let mut i = subset.len();
            while i > 0 {
                i -= 1;
                let without: Vec<Monomial> = subset
                    .iter()
                    .enumerate()
                    .filter(|&(j, _)| j != i)
                    .map(|(_, &g)| Monomial::gen(n, g))
                    .collect();
                if engine.ideal(&without).contains(&Monomial::gen(n, subset[i])) {
                    subset.remove(i);
                }
            }
            (PrimeIdeal::new(subset), view)
        })
        .collect();
    let mut result: Vec<PrimeIdeal> = Vec::new();
    let mut taken: Vec<(PrimeIdeal, &IdealView<'_>)> = Vec::new();
    for (p, view) in minimized {
        let mut duplicate = false;
        for (q, qview) in &taken {
            let p_in_q = p
                .generators
                .iter()
                .all(|&i| qview.contains(&Monomial::gen(n, i)));
            let q_in_p = q
                .generators
                .iter()
                .all(|&i| view.contains(&Monomial::gen(n, i)));
            if p_in_q && q_in_p {
                duplicate = true;
                break;
            }
        }
        if !duplicate {
            taken.push((p.clone(), view));
            result.push(p);
        }
    }
    result.sort_by_key(|p| {
        (p.generators.len(), p.generators.iter().copied().collect::<Vec<_>>())
    });
    Ok(result)
}

/// Presentation of S⁻¹A: one fresh inverse generator with relation
/// m·inv = 1 per monomial of S. The localization map on the original
/// generators is the identity embedding.
pub fn localize(
    pres: &MonoidPresentation,
    s: &[Monomial],
) -> Result<MonoidPresentation, MonoidError> {
    if s.iter().any(|m| m.is_zero()) {
        return Err(MonoidError::LocalizedZero { trivial: MonoidPresentation::trivial() });
    }
    let mut out = pres.clone();
    let n0 = pres.ngens();
    let added = s.len();
    let widen = |m: &Monomial| -> Monomial {
        match m {
            Monomial::Zero => Monomial::Zero,
            Monomial::Word(e) => {
                let mut w = e.clone();
                w.resize(e.len() + added, 0);
                Monomial::Word(w)
            }
        }
    };
    out.relations = out.relations.iter().map(|(a, b)| (widen(a), widen(b))).collect();
    let mut name_idx = 1usize;
    for (k, m) in s.iter().enumerate() {
        pres.validate_monomial(m)?;
        let mut name = format!("U{}", name_idx);
        while out.generators.contains(&name) {
            name_idx += 1;
            name = format!("U{}", name_idx);
        }
        name_idx += 1;
        out.generators.push(name);
        let total = n0 + added;
        let mut lhs = match widen(m) {
            Monomial::Word(e) => e,
            Monomial::Zero => unreachable!(),
        };
        lhs[n0 + k] += 1;
        out.relations.push((Monomial::Word(lhs), Monomial::one(total)));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn free(names: &[&str]) -> MonoidPresentation {
        MonoidPresentation::free(names.to_vec())
    }

    /// F1[T0,T1]/(T0·T1 = 1)
    fn gm_pair() -> MonoidPresentation {
        free(&["T0", "T1"]).with_relation(Monomial::word(vec![1, 1]), Monomial::one(2))
    }

    /// F1[T^{±1}] via the inverted marker.
    fn gm() -> MonoidPresentation {
        free(&["T"]).with_inverted(0)
    }

    #[test]
    fn laurent_word_problem() {
        let a = gm();
        let t = Monomial::word(vec![1]);
        let tinv = Monomial::word(vec![-1]);
        assert!(word_equal(&a, &t.mul(&tinv), &Monomial::one(1)));
        assert!(!word_equal(&a, &t, &Monomial::one(1)));
    }

    #[test]
    fn gm_pair_word_problem() {
        // T0²·T1 ≡ T0
        let a = gm_pair();
        let u = Monomial::word(vec![2, 1]);
        let v = Monomial::word(vec![1, 0]);
        assert!(word_equal(&a, &u, &v));
    }

    #[test]
    fn free_monoid_words_stay_distinct() {
        let a = free(&["T"]);
        assert!(!word_equal(&a, &Monomial::word(vec![2]), &Monomial::word(vec![3])));
    }

    #[test]
    fn divisibility_membership() {
        let a = free(&["T1", "T2"]);
        let ideal = MonoidIdeal { generators: vec![Monomial::gen(2, 1)] };
        assert!(ideal_member(&a, &Monomial::word(vec![1, 3]), &ideal));
        assert!(!ideal_member(&a, &Monomial::word(vec![2, 0]), &ideal));
    }

    #[test]
    fn membership_through_the_congruence() {
        // In F1[T0,T1]/(T0T1=1), T0 lies in (T1) since T0 ≡ T0²T1.
        let a = gm_pair();
        let ideal = MonoidIdeal { generators: vec![Monomial::gen(2, 1)] };
        assert!(ideal_member(&a, &Monomial::gen(2, 0), &ideal));
    }

    #[test]
    fn primes_of_the_point() {
        let primes =
            enumerate_primes(&MonoidPresentation::point(), &PrimeBudget::default()).unwrap();
        assert_eq!(primes, vec![PrimeIdeal::new([])]);
    }

    #[test]
    fn primes_of_the_affine_plane() {
        let primes = enumerate_primes(&free(&["T1", "T2"]), &PrimeBudget::default()).unwrap();
        assert_eq!(primes.len(), 4);
        assert!(primes.contains(&PrimeIdeal::new([])));
        assert!(primes.contains(&PrimeIdeal::new([0])));
        assert!(primes.contains(&PrimeIdeal::new([1])));
        assert!(primes.contains(&PrimeIdeal::new([0, 1])));
    }

    #[test]
    fn laurent_monoid_has_one_prime() {
        let primes = enumerate_primes(&gm(), &PrimeBudget::default()).unwrap();
        assert_eq!(primes, vec![PrimeIdeal::new([])]);
    }

    #[test]
    fn localizing_at_a_generator() {
        let a = free(&["T"]);
        let loc = localize(&a, &[Monomial::gen(1, 0)]).unwrap();
        let primes = enumerate_primes(&loc, &PrimeBudget::default()).unwrap();
        assert_eq!(primes, vec![PrimeIdeal::new([])]);
    }

    #[test]
    fn localizing_at_a_unit_keeps_primes() {
        let a = free(&["T1", "T2"]);
        let loc = localize(&a, &[Monomial::one(2)]).unwrap();
        let primes = enumerate_primes(&loc, &PrimeBudget::default()).unwrap();
        assert_eq!(primes.len(), 4);
    }

    #[test]
    fn localizing_kills_primes_meeting_s() {
        let a = free(&["T1", "T2"]);
        let loc = localize(&a, &[Monomial::gen(2, 0)]).unwrap();
        let primes = enumerate_primes(&loc, &PrimeBudget::default()).unwrap();
        assert_eq!(primes.len(), 2);
        assert!(primes.contains(&PrimeIdeal::new([])));
        assert!(primes.contains(&PrimeIdeal::new([1])));
    }

    #[test]
    fn congruent_generators_merge_to_one_prime() {
        // a = b identifies the two generator ideals; the merged spectrum is
        // the two-point chain with the inclusion-minimal subset kept.
        let a = free(&["a", "b"]).with_relation(Monomial::gen(2, 0), Monomial::gen(2, 1));
        let primes = enumerate_primes(&a, &PrimeBudget::default()).unwrap();
        assert_eq!(primes, vec![PrimeIdeal::new([]), PrimeIdeal::new([0])]);
    }

    #[test]
    fn exhausted_budget_is_reported() {
        let a = free(&["T1", "T2", "T3"]);
        let budget = PrimeBudget { max_product_degree: None, max_ops: 10 };
        match enumerate_primes(&a, &budget) {
            Err(MonoidError::BudgetExceeded(_)) => {}
            other => panic!("expected a budget report, got {:?}", other),
        }
    }

    #[test]
    fn localizing_at_zero_is_flagged() {
        let a = free(&["T"]);
        match localize(&a, &[Monomial::Zero]) {
            Err(MonoidError::LocalizedZero { trivial }) => {
                assert!(word_equal(&trivial, &Monomial::one(0), &Monomial::Zero));
            }
            other => panic!("expected the trivial monoid, got {:?}", other),
        }
    }

    #[test]
    fn unit_lattice_of_laurent() {
        let u = unit_lattice(&gm(), 8);
        assert!(u.is_group_with_zero);
        assert_eq!(u.rank, 1);
        assert!(u.torsion.is_empty());
    }

    #[test]
    fn unit_lattice_of_gm_pair() {
        let u = unit_lattice(&gm_pair(), 8);
        assert!(u.is_group_with_zero);
        assert_eq!(u.rank, 1);
    }

    #[test]
    fn unit_lattice_of_free_is_not_a_group() {
        let u = unit_lattice(&free(&["T"]), 8);
        assert!(!u.is_group_with_zero);
        assert_eq!(u.rank, 1);
    }

    #[test]
    fn order_two_torsion_detected() {
        // F1[S]/(S² = 1): rank 0 with a single order-2 class represented by S.
        let a = free(&["S"]).with_relation(Monomial::word(vec![2]), Monomial::one(1));
        let u = unit_lattice(&a, 8);
        assert!(u.is_group_with_zero);
        assert_eq!(u.rank, 0);
        assert_eq!(u.torsion, vec![Int::from(2)]);
        assert_eq!(u.torsion_reps[0], Some(Monomial::word(vec![1])));
    }
}
