//! Blueprints: a pointed monoid together with additive congruence
//! generators, presenting the semiring ℕ[A]/⟨relations⟩.
//!
//! Congruence of formal sums is semidecidable; [`sum_equal`] explores
//! derivation chains breadth-first under explicit budgets, refutes through
//! separating semiring homomorphisms into ℚ≥0 or the Boolean semifield, and
//! otherwise answers `Unknown`. Downstream consumers surface `Unknown`
//! rather than guess.

use std::collections::{BTreeMap, BTreeSet, HashSet, VecDeque};
use std::fmt;
use std::sync::Arc;

use num::traits::{One, Signed, Zero};
use thiserror::Error;

use crate::groebner::{buchberger, normal_form, GroebnerBasis, TermOrder};
use crate::monoid::{
    enumerate_primes_with, MonoidEngine, MonoidError, MonoidPresentation, Monomial, PrimeBudget,
    PrimeIdeal,
};
use crate::multipoly::{varlist, MultiPoly};
use crate::poly::cyclotomic_polynomial;
use crate::{Int, Rat};

/// Prime k-ideals share the canonical generator-subset representation.
pub type KPrimeIdeal = PrimeIdeal;

#[derive(Debug, Error)]
pub enum BlueprintError {
    #[error(transparent)]
    Monoid(#[from] MonoidError),
    #[error("generator name collision after tensor renaming: {0}")]
    TensorCollision(String),
    #[error("morphism image missing for generator {0}")]
    MissingImage(String),
    #[error("{0}")]
    Unsupported(String),
}

/// Exhausted-budget report attached to `Unknown` verdicts.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct BudgetDiagnostics {
    pub states_explored: usize,
    pub frontier_truncated: bool,
    pub notes: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ThreeValued {
    Yes,
    No,
    Unknown(BudgetDiagnostics),
}

impl ThreeValued {
    pub fn is_yes(&self) -> bool {
        matches!(self, ThreeValued::Yes)
    }
}

/// Search budget for congruence chains.
#[derive(Clone, Debug)]
pub struct Budget {
    pub max_chain: usize,
    pub max_terms: u64,
    pub max_degree: u64,
    pub max_states: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { max_chain: 64, max_terms: 16, max_degree: 12, max_states: 20_000 }
    }
}

/// ℕ-linear combination of nonzero monoid classes; the empty sum is the
/// semiring zero.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct FormalSum {
    terms: BTreeMap<Monomial, u32>,
}

impl FormalSum {
    pub fn zero() -> Self {
        FormalSum::default()
    }

    pub fn from_monomial(m: Monomial) -> Self {
        let mut s = FormalSum::zero();
        s.add_term(m, 1);
        s
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, u32)>>(terms: I) -> Self {
        let mut s = FormalSum::zero();
        for (m, k) in terms {
            s.add_term(m, k);
        }
        s
    }

    pub fn add_term(&mut self, m: Monomial, k: u32) {
        if m.is_zero() || k == 0 {
            return;
        }
        *self.terms.entry(m).or_insert(0) += k;
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total multiplicity.
    pub fn size(&self) -> u64 {
        self.terms.values().map(|&k| k as u64).sum()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &u32)> {
        self.terms.iter()
    }

    pub fn add(&self, other: &FormalSum) -> FormalSum {
        let mut out = self.clone();
        for (m, &k) in &other.terms {
            out.add_term(m.clone(), k);
        }
        out
    }

    /// Multiset difference; `other` must be contained in `self`.
    fn sub(&self, other: &FormalSum) -> FormalSum {
        let mut out = self.clone();
        for (m, &k) in &other.terms {
            match out.terms.get_mut(m) {
                Some(v) if *v > k => *v -= k,
                Some(v) if *v == k => {
                    out.terms.remove(m);
                }
                _ => panic!("subtrahend not contained in sum"),
            }
        }
        out
    }

    fn contains(&self, other: &FormalSum) -> bool {
        other
            .terms
            .iter()
            .all(|(m, &k)| self.terms.get(m).is_some_and(|&v| v >= k))
    }

    pub fn max_degree(&self) -> u64 {
        self.terms.keys().map(|m| m.total_degree()).max().unwrap_or(0)
    }
}

impl fmt::Debug for FormalSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(m, k)| if *k == 1 { format!("{:?}", m) } else { format!("{}*{:?}", k, m) })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// A pointed monoid presentation plus additive congruence generators.
#[derive(Clone)]
pub struct Blueprint {
    monoid: MonoidPresentation,
    add_relations: Vec<(FormalSum, FormalSum)>,
    engine: Arc<MonoidEngine>,
}

impl Blueprint {
    pub fn new(monoid: MonoidPresentation, add_relations: Vec<(FormalSum, FormalSum)>) -> Self {
        let engine = Arc::new(MonoidEngine::new(&monoid));
        let add_relations = add_relations
            .into_iter()
            .map(|(l, r)| (normalize_sum_with(&engine, &l), normalize_sum_with(&engine, &r)))
            .collect();
        Blueprint { monoid, add_relations, engine }
    }

    /// A plain monoid viewed as a blueprint.
    pub fn from_monoid(monoid: MonoidPresentation) -> Self {
        Self::new(monoid, Vec::new())
    }

    /// The initial blueprint {0, 1}.
    pub fn f1() -> Self {
        Self::from_monoid(MonoidPresentation::point())
    }

    pub fn monoid(&self) -> &MonoidPresentation {
        &self.monoid
    }

    pub fn add_relations(&self) -> &[(FormalSum, FormalSum)] {
        &self.add_relations
    }

    pub fn engine(&self) -> &MonoidEngine {
        &self.engine
    }

    pub fn ngens(&self) -> usize {
        self.monoid.ngens()
    }

    pub fn normalize_sum(&self, s: &FormalSum) -> FormalSum {
        normalize_sum_with(&self.engine, s)
    }

    pub fn format_sum(&self, s: &FormalSum) -> String {
        if s.is_empty() {
            return "0".to_string();
        }
        let mut parts = Vec::new();
        for (m, &k) in s.terms() {
            let mono = self.monoid.format_monomial(m);
            if k == 1 {
                parts.push(mono);
            } else {
                parts.push(format!("{}*{}", k, mono));
            }
        }
        parts.join(" + ")
    }
}

impl fmt::Debug for Blueprint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Blueprint(gens: {:?}, {} monoid relations, {} additive relations)",
            self.monoid.generators,
            self.monoid.relations.len(),
            self.add_relations.len()
        )
    }
}

fn normalize_sum_with(engine: &MonoidEngine, s: &FormalSum) -> FormalSum {
    let mut out = FormalSum::zero();
    for (m, &k) in s.terms() {
        out.add_term(engine.normalize(m), k);
    }
    out
}

/// The standard SL(2) model: free monoid on T1..T4 with T1·T4 ≡ T2·T3 + 1.
pub fn sl2() -> Blueprint {
    let monoid = MonoidPresentation::free(vec!["T1", "T2", "T3", "T4"]);
    let lhs = FormalSum::from_monomial(Monomial::word(vec![1, 0, 0, 1]));
    let rhs = FormalSum::from_terms(vec![
        (Monomial::word(vec![0, 1, 1, 0]), 1),
        (Monomial::one(4), 1),
    ]);
    Blueprint::new(monoid, vec![(lhs, rhs)])
}

/// GL(2) with an inverted determinant generator d: T1·T4 ≡ T2·T3 + d.
pub fn gl2() -> Blueprint {
    let monoid = MonoidPresentation::free(vec!["T1", "T2", "T3", "T4", "d"]).with_inverted(4);
    let lhs = FormalSum::from_monomial(Monomial::word(vec![1, 0, 0, 1, 0]));
    let rhs = FormalSum::from_terms(vec![
        (Monomial::word(vec![0, 1, 1, 0, 0]), 1),
        (Monomial::word(vec![0, 0, 0, 0, 1]), 1),
    ]);
    Blueprint::new(monoid, vec![(lhs, rhs)])
}

/// Cyclotomic extension: monoid F1[z]/(zⁿ = 1) with the cyclotomic relation
/// rearranged into a subtraction-free congruence pair.
pub fn cyclotomic_extension(n: u32) -> Result<Blueprint, BlueprintError> {
    if n < 2 {
        return Err(BlueprintError::Unsupported(
            "cyclotomic extensions need n >= 2".to_string(),
        ));
    }
    let monoid = MonoidPresentation::free(vec!["z"])
        .with_relation(Monomial::word(vec![n as i64]), Monomial::one(1));
    let phi = cyclotomic_polynomial(n);
    let mut pos = FormalSum::zero();
    let mut neg = FormalSum::zero();
    for (&e, c) in phi.iter() {
        let m = Monomial::word(vec![e as i64]);
        let k = c.abs();
        let k: u32 = k.try_into().expect("cyclotomic coefficients are small");
        if c.is_positive() {
            pos.add_term(m, k);
        } else {
            neg.add_term(m, k);
        }
    }
    Ok(Blueprint::new(monoid, vec![(pos, neg)]))
}

// ---------------------------------------------------------------------------
// Congruence decision
// ---------------------------------------------------------------------------

/// Decides s ≡ t in the congruence generated by the additive relations,
/// monoid rewriting and the semiring axioms. `Yes` comes from an explicit
/// derivation chain, `No` from a separating homomorphism, `Unknown` from an
/// exhausted budget.
pub fn sum_equal(b: &Blueprint, s: &FormalSum, t: &FormalSum, budget: &Budget) -> ThreeValued {
    let s = b.normalize_sum(s);
    let t = b.normalize_sum(t);
    if s == t {
        return ThreeValued::Yes;
    }
    if separating_hom_exists(b, &s, &t) {
        return ThreeValued::No;
    }

    let mut seen: HashSet<FormalSum> = HashSet::new();
    let mut queue: VecDeque<(FormalSum, usize)> = VecDeque::new();
    seen.insert(s.clone());
    queue.push_back((s, 0));
    let mut truncated = false;

    while let Some((state, depth)) = queue.pop_front() {
        if depth >= budget.max_chain {
            truncated = true;
            continue;
        }
        for next in successors(b, &state, &t, budget) {
            if next == t {
                return ThreeValued::Yes;
            }
            if seen.len() >= budget.max_states {
                truncated = true;
                break;
            }
            if seen.insert(next.clone()) {
                queue.push_back((next, depth + 1));
            }
        }
        if truncated && seen.len() >= budget.max_states {
            break;
        }
    }
    ThreeValued::Unknown(BudgetDiagnostics {
        states_explored: seen.len(),
        frontier_truncated: truncated,
        notes: vec![format!(
            "chain<= {}, terms<= {}, degree<= {}",
            budget.max_chain, budget.max_terms, budget.max_degree
        )],
    })
}

/// One-step rewrites: replace a multiplied instance of one relation side by
/// the other, in either direction. Multipliers are read off term quotients
/// against the current state and the target.
fn successors(b: &Blueprint, state: &FormalSum, target: &FormalSum, budget: &Budget) -> Vec<FormalSum> {
    let mut out = Vec::new();
    for (l, r) in &b.add_relations {
        for (from, to) in [(l, r), (r, l)] {
            let mut multipliers: BTreeSet<Monomial> = BTreeSet::new();
            if from.is_empty() {
                // Inserting m·to costs nothing since to ≡ 0; aim the
                // multiplier at terms we hold or want.
                multipliers.insert(Monomial::one(b.ngens()));
                for (u, _) in state.terms().chain(target.terms()) {
                    for (a, _) in to.terms() {
                        if let Some(m) = quotient(b, u, a) {
                            multipliers.insert(m);
                        }
                    }
                }
            } else {
                for (u, _) in state.terms() {
                    for (a, _) in from.terms() {
                        if let Some(m) = quotient(b, u, a) {
                            multipliers.insert(m);
                        }
                    }
                }
            }
            for m in multipliers {
                let from_m = mul_sum_monomial(b, from, &m);
                if !state.contains(&from_m) {
                    continue;
                }
                let to_m = mul_sum_monomial(b, to, &m);
                let next = state.sub(&from_m).add(&to_m);
                if next.size() > budget.max_terms || next.max_degree() > budget.max_degree {
                    continue;
                }
                out.push(next);
            }
        }
    }
    out
}

/// m with m·denom = num in the free monoid, when the exponent difference is
/// admissible.
fn quotient(b: &Blueprint, num: &Monomial, denom: &Monomial) -> Option<Monomial> {
    let (Monomial::Word(ne), Monomial::Word(de)) = (num, denom) else {
        return None;
    };
    let mut out = Vec::with_capacity(ne.len());
    for (i, (&n, &d)) in ne.iter().zip(de).enumerate() {
        let diff = n - d;
        if diff < 0 && !b.monoid.inverted.contains(&i) {
            return None;
        }
        out.push(diff);
    }
    Some(Monomial::Word(out))
}

fn mul_sum_monomial(b: &Blueprint, s: &FormalSum, m: &Monomial) -> FormalSum {
    let mut out = FormalSum::zero();
    for (u, &k) in s.terms() {
        out.add_term(b.engine.mul(u, m), k);
    }
    out
}

/// Searches semiring homomorphisms to ℚ≥0 (generator values on a small
/// grid) and to the Boolean semifield that satisfy all relations; any such
/// map separating s from t soundly refutes the congruence.
fn separating_hom_exists(b: &Blueprint, s: &FormalSum, t: &FormalSum) -> bool {
    let n = b.ngens();
    // Boolean side first: 2^n assignments.
    if n <= 16 {
        let mut assign = vec![0u8; n];
        loop {
            if bool_assignment_valid(b, &assign)
                && eval_sum_bool(&assign, s) != eval_sum_bool(&assign, t)
            {
                return true;
            }
            if !next_assignment(&mut assign, 1) {
                break;
            }
        }
    }
    // ℚ grids: a nonnegative one for magnitude separations and a signed
    // one for presentations whose relations rule out positive points.
    if n <= 8 && rat_grid_separates(b, s, t, &[0, 1, 2, 3]) {
        return true;
    }
    if n <= 10 && rat_grid_separates(b, s, t, &[0, 1, -1]) {
        return true;
    }
    false
}

fn rat_grid_separates(b: &Blueprint, s: &FormalSum, t: &FormalSum, values: &[i64]) -> bool {
    let n = b.ngens();
    let mut idx = vec![0usize; n];
    loop {
        let assign: Vec<i64> = idx.iter().map(|&i| values[i]).collect();
        if rat_assignment_valid(b, &assign) {
            let vs = eval_sum_rat(&assign, s);
            let vt = eval_sum_rat(&assign, t);
            if let (Some(vs), Some(vt)) = (vs, vt) {
                if vs != vt {
                    return true;
                }
            }
        }
        let mut pos = 0;
        loop {
            if pos == n {
                return false;
            }
            idx[pos] += 1;
            if idx[pos] < values.len() {
                break;
            }
            idx[pos] = 0;
            pos += 1;
        }
        if n == 0 {
            return false;
        }
    }
}

fn next_assignment(assign: &mut [u8], max: u8) -> bool {
    for slot in assign.iter_mut() {
        if *slot < max {
            *slot += 1;
            return true;
        }
        *slot = 0;
    }
    false
}

fn eval_monomial_rat(assign: &[i64], m: &Monomial) -> Option<Rat> {
    match m {
        Monomial::Zero => Some(Rat::zero()),
        Monomial::Word(e) => {
            let mut acc = Rat::one();
            for (i, &x) in e.iter().enumerate() {
                let v = Rat::from_integer(Int::from(assign[i]));
                if x >= 0 {
                    for _ in 0..x {
                        acc *= v.clone();
                    }
                } else {
                    if v.is_zero() {
                        return None;
                    }
                    for _ in 0..(-x) {
                        acc /= v.clone();
                    }
                }
            }
            Some(acc)
        }
    }
}

fn eval_sum_rat(assign: &[i64], s: &FormalSum) -> Option<Rat> {
    let mut acc = Rat::zero();
    for (m, &k) in s.terms() {
        let v = eval_monomial_rat(assign, m)?;
        acc += v * Rat::from_integer(Int::from(k as i64));
    }
    Some(acc)
}

fn rat_assignment_valid(b: &Blueprint, assign: &[i64]) -> bool {
    for &i in &b.monoid.inverted {
        if assign[i] == 0 {
            return false;
        }
    }
    for (a, c) in &b.monoid.relations {
        match (eval_monomial_rat(assign, a), eval_monomial_rat(assign, c)) {
            (Some(x), Some(y)) if x == y => {}
            _ => return false,
        }
    }
    for (l, r) in &b.add_relations {
        match (eval_sum_rat(assign, l), eval_sum_rat(assign, r)) {
            (Some(x), Some(y)) if x == y => {}
            _ => return false,
        }
    }
    true
}

fn eval_monomial_bool(assign: &[u8], m: &Monomial) -> Option<u8> {
    match m {
        Monomial::Zero => Some(0),
        Monomial::Word(e) => {
            let mut acc = 1u8;
            for (i, &x) in e.iter().enumerate() {
                if x > 0 {
                    acc = acc.min(assign[i]);
                } else if x < 0
                    && assign[i] == 0 {
                        return None;
                    }
                    // inverse of 1 is 1
            }
            Some(acc)
        }
    }
}

fn eval_sum_bool(assign: &[u8], s: &FormalSum) -> u8 {
    s.terms()
        .filter_map(|(m, _)| eval_monomial_bool(assign, m))
        .max()
        .unwrap_or(0)
}

fn bool_assignment_valid(b: &Blueprint, assign: &[u8]) -> bool {
    for &i in &b.monoid.inverted {
        if assign[i] == 0 {
            return false;
        }
    }
    for (a, c) in &b.monoid.relations {
        match (eval_monomial_bool(assign, a), eval_monomial_bool(assign, c)) {
            (Some(x), Some(y)) if x == y => {}
            _ => return false,
        }
    }
    for (l, r) in &b.add_relations {
        if eval_sum_bool(assign, l) != eval_sum_bool(assign, r) {
            return false;
        }
    }
    true
}

// ---------------------------------------------------------------------------
// Spectrum
// ---------------------------------------------------------------------------

/// Prime k-ideals: the monoid primes that survive additive saturation.
/// A relation whose one side vanishes (all terms in the ideal) and whose
/// other side reduces to a single monomial forces that monomial into the
/// ideal; a candidate grows out of itself or swallows 1, it is discarded.
pub fn prime_k_ideals(b: &Blueprint) -> Result<Vec<KPrimeIdeal>, BlueprintError> {
    let n = b.ngens();
    let mono_primes = enumerate_primes_with(&b.engine, &PrimeBudget::default())?;
    let mut out = Vec::new();
    'cand: for p in mono_primes {
        let gens: Vec<Monomial> = p.generators.iter().map(|&i| Monomial::gen(n, i)).collect();
        let view = b.engine.ideal(&gens);
        for (l, r) in &b.add_relations {
            for (from, to) in [(l, r), (r, l)] {
                let from_dead = from.terms().all(|(m, _)| view.contains(m));
                if !from_dead {
                    continue;
                }
                let to_alive: Vec<(&Monomial, u32)> = to
                    .terms()
                    .filter(|(m, _)| !view.contains(m))
                    .map(|(m, &k)| (m, k))
                    .collect();
                // A single surviving monomial is forced into the ideal, so
                // the candidate is not additively closed; the enlarged set
                // appears as its own candidate if it is a prime at all.
                if to_alive.len() == 1 && to_alive[0].1 == 1 {
                    continue 'cand;
                }
            }
        }
        out.push(p);
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Tensor product and morphisms
// ---------------------------------------------------------------------------

/// Coproduct of presentations: disjoint union of generators (primed /
/// double-primed) and of relations, no cross relations.
pub fn tensor(b1: &Blueprint, b2: &Blueprint) -> Blueprint {
    let n1 = b1.ngens();
    let n2 = b2.ngens();
    let mut gens: Vec<String> = Vec::with_capacity(n1 + n2);
    for g in &b1.monoid.generators {
        gens.push(format!("{}'", g));
    }
    for g in &b2.monoid.generators {
        gens.push(format!("{}''", g));
    }
    {
        let mut set = BTreeSet::new();
        for g in &gens {
            assert!(set.insert(g.clone()), "tensor renaming collided on {}", g);
        }
    }
    let mut monoid = MonoidPresentation::free(gens);
    for &i in &b1.monoid.inverted {
        monoid.inverted.insert(i);
    }
    for &i in &b2.monoid.inverted {
        monoid.inverted.insert(n1 + i);
    }
    let left = |m: &Monomial| embed(m, n1 + n2, 0);
    let right = |m: &Monomial| embed(m, n1 + n2, n1);
    for (a, c) in &b1.monoid.relations {
        monoid.relations.push((left(a), left(c)));
    }
    for (a, c) in &b2.monoid.relations {
        monoid.relations.push((right(a), right(c)));
    }
    let mut adds = Vec::new();
    for (l, r) in &b1.add_relations {
        adds.push((map_sum(l, &left), map_sum(r, &left)));
    }
    for (l, r) in &b2.add_relations {
        adds.push((map_sum(l, &right), map_sum(r, &right)));
    }
    Blueprint::new(monoid, adds)
}

fn embed(m: &Monomial, total: usize, offset: usize) -> Monomial {
    match m {
        Monomial::Zero => Monomial::Zero,
        Monomial::Word(e) => {
            let mut w = vec![0i64; total];
            w[offset..offset + e.len()].copy_from_slice(e);
            Monomial::Word(w)
        }
    }
}

fn map_sum(s: &FormalSum, f: &dyn Fn(&Monomial) -> Monomial) -> FormalSum {
    FormalSum::from_terms(s.terms().map(|(m, &k)| (f(m), k)))
}

/// A semiring map presented by generator images; the image of an inverted
/// generator must be a single monomial.
#[derive(Clone, Debug)]
pub struct Morphism {
    pub images: Vec<FormalSum>,
}

impl Morphism {
    pub fn new(images: Vec<FormalSum>) -> Self {
        Morphism { images }
    }

    /// Applies multiplicatively to a monomial; inverse images come from a
    /// bounded class search in the target.
    pub fn apply_monomial(&self, target: &Blueprint, m: &Monomial) -> Option<FormalSum> {
        match m {
            Monomial::Zero => Some(FormalSum::zero()),
            Monomial::Word(e) => {
                let n = target.ngens();
                let mut acc = FormalSum::from_monomial(Monomial::one(n));
                for (i, &x) in e.iter().enumerate() {
                    if x == 0 {
                        continue;
                    }
                    let img = &self.images[i];
                    if x > 0 {
                        for _ in 0..x {
                            acc = mul_sums(target, &acc, img);
                        }
                    } else {
                        let inv = self.monomial_inverse(target, img)?;
                        let inv_sum = FormalSum::from_monomial(inv);
                        for _ in 0..(-x) {
                            acc = mul_sums(target, &acc, &inv_sum);
                        }
                    }
                }
                Some(acc)
            }
        }
    }

    fn monomial_inverse(&self, target: &Blueprint, img: &FormalSum) -> Option<Monomial> {
        let terms: Vec<_> = img.terms().collect();
        if terms.len() != 1 || *terms[0].1 != 1 {
            return None;
        }
        let m = terms[0].0.clone();
        let one = target.engine.normalize(&Monomial::one(target.ngens()));
        let (classes, _) = target.engine.classes_up_to(8);
        classes.into_iter().find(|c| target.engine.mul(&m, c) == one)
    }

    pub fn apply_sum(&self, target: &Blueprint, s: &FormalSum) -> Option<FormalSum> {
        let mut acc = FormalSum::zero();
        for (m, &k) in s.terms() {
            let img = self.apply_monomial(target, m)?;
            for _ in 0..k {
                acc = acc.add(&img);
            }
        }
        Some(acc)
    }
}

fn mul_sums(b: &Blueprint, s: &FormalSum, t: &FormalSum) -> FormalSum {
    let mut out = FormalSum::zero();
    for (m, &k) in s.terms() {
        for (u, &l) in t.terms() {
            out.add_term(b.engine.mul(m, u), k * l);
        }
    }
    out
}

/// Verifies that the generator images define a blueprint morphism: every
/// monoid relation and every additive relation must map to a congruence the
/// target confirms.
pub fn check_morphism(
    source: &Blueprint,
    target: &Blueprint,
    f: &Morphism,
    strict: bool,
    budget: &Budget,
) -> Result<ThreeValued, BlueprintError> {
    if f.images.len() != source.ngens() {
        return Err(BlueprintError::MissingImage(format!(
            "expected {} images, got {}",
            source.ngens(),
            f.images.len()
        )));
    }
    if strict {
        for (i, img) in f.images.iter().enumerate() {
            let single = img.terms.len() == 1 && img.terms().all(|(_, &k)| k == 1);
            if !(single || img.is_empty()) {
                return Err(BlueprintError::Unsupported(format!(
                    "strict mode: image of {} is not a monomial",
                    source.monoid.generators[i]
                )));
            }
        }
    }
    let mut diagnostics = BudgetDiagnostics::default();
    let mut all_yes = true;
    let check = |lhs: Option<FormalSum>, rhs: Option<FormalSum>, name: String| match (lhs, rhs)
    {
        (Some(l), Some(r)) => match sum_equal(target, &l, &r, budget) {
            ThreeValued::Yes => ThreeValued::Yes,
            ThreeValued::No => ThreeValued::No,
            ThreeValued::Unknown(d) => {
                let mut d = d;
                d.notes.push(format!("relation {} undecided", name));
                ThreeValued::Unknown(d)
            }
        },
        _ => {
            let mut d = BudgetDiagnostics::default();
            d.notes.push(format!("no inverse image found for relation {}", name));
            ThreeValued::Unknown(d)
        }
    };

    for (idx, (a, c)) in source.monoid.relations.iter().enumerate() {
        let l = f.apply_monomial(target, a);
        let r = f.apply_monomial(target, c);
        match check(l, r, format!("monoid#{}", idx)) {
            ThreeValued::Yes => {}
            ThreeValued::No => return Ok(ThreeValued::No),
            ThreeValued::Unknown(d) => {
                all_yes = false;
                diagnostics.notes.extend(d.notes);
            }
        }
    }
    for (idx, (l, r)) in source.add_relations.iter().enumerate() {
        let li = f.apply_sum(target, l);
        let ri = f.apply_sum(target, r);
        match check(li, ri, format!("additive#{}", idx)) {
            ThreeValued::Yes => {}
            ThreeValued::No => return Ok(ThreeValued::No),
            ThreeValued::Unknown(d) => {
                all_yes = false;
                diagnostics.notes.extend(d.notes);
            }
        }
    }
    // Inverted generators must land on invertible monomials.
    for &i in &source.monoid.inverted {
        if f.monomial_inverse(target, &f.images[i]).is_none() {
            all_yes = false;
            diagnostics
                .notes
                .push(format!("no inverse found for image of {}", source.monoid.generators[i]));
        }
    }
    Ok(if all_yes { ThreeValued::Yes } else { ThreeValued::Unknown(diagnostics) })
}

// ---------------------------------------------------------------------------
// Base extension
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BaseRing {
    N,
    Z,
    Q,
}

/// Output of base extension: a polynomial presentation over ℤ/ℚ, or the
/// semiring presentation itself over ℕ (relation pairs, no subtraction).
#[derive(Clone, Debug)]
pub struct PresentedAlgebra {
    pub ring: BaseRing,
    pub vars: Vec<String>,
    /// lhs − rhs polynomials, for Z/Q.
    pub polynomials: Vec<MultiPoly<Int>>,
    /// Relation pairs, for N.
    pub pairs: Vec<(MultiPoly<Int>, MultiPoly<Int>)>,
}

impl PresentedAlgebra {
    pub fn render(&self) -> String {
        let ring = match self.ring {
            BaseRing::N => "N",
            BaseRing::Z => "Z",
            BaseRing::Q => "Q",
        };
        let head = if self.vars.is_empty() {
            ring.to_string()
        } else {
            format!("{}[{}]", ring, self.vars.join(","))
        };
        match self.ring {
            BaseRing::N => {
                if self.pairs.is_empty() {
                    head
                } else {
                    let rels: Vec<String> = self
                        .pairs
                        .iter()
                        .map(|(l, r)| format!("{} ~ {}", l.render(), r.render()))
                        .collect();
                    format!("{} // ({})", head, rels.join(", "))
                }
            }
            _ => {
                if self.polynomials.is_empty() {
                    head
                } else {
                    let rels: Vec<String> =
                        self.polynomials.iter().map(|p| p.render()).collect();
                    format!("{} / ({})", head, rels.join(", "))
                }
            }
        }
    }

    /// Rational Gröbner basis of the relation ideal (Z/Q presentations).
    pub fn groebner(&self) -> GroebnerBasis {
        let vars = varlist(self.vars.clone());
        let polys: Vec<MultiPoly<Rat>> =
            self.polynomials.iter().map(to_rational_poly).collect();
        buchberger(vars.clone(), &polys, TermOrder::grevlex(vars.len()))
    }
}

pub fn to_rational_poly(p: &MultiPoly<Int>) -> MultiPoly<Rat> {
    let vars = p.vars().clone();
    let mut out = MultiPoly::zero(vars);
    for (e, c) in p.terms() {
        out.insert_add(e.clone(), Rat::from_integer(c.clone()));
    }
    out
}

/// Base extension along ℕ → ℤ → ℚ: one variable per generator plus an
/// auxiliary inverse variable (with g·g_inv − 1) per inverted generator;
/// every relation becomes lhs − rhs, a monoid zero-relation becomes the
/// bare monomial.
pub fn base_extend(b: &Blueprint, ring: BaseRing) -> PresentedAlgebra {
    let mut vars: Vec<String> = b.monoid.generators.clone();
    let mut aux: BTreeMap<usize, usize> = BTreeMap::new();
    for &i in &b.monoid.inverted {
        aux.insert(i, vars.len());
        vars.push(format!("{}_inv", b.monoid.generators[i]));
    }
    let vl = varlist(vars.clone());
    let enc_mono = |m: &Monomial| -> MultiPoly<Int> {
        match m {
            Monomial::Zero => MultiPoly::zero(vl.clone()),
            Monomial::Word(e) => {
                let mut exp = vec![0u32; vl.len()];
                for (i, &x) in e.iter().enumerate() {
                    if x >= 0 {
                        exp[i] = x as u32;
                    } else {
                        exp[aux[&i]] = (-x) as u32;
                    }
                }
                MultiPoly::monomial(vl.clone(), exp, Int::one())
            }
        }
    };
    let enc_sum = |s: &FormalSum| -> MultiPoly<Int> {
        let mut acc = MultiPoly::zero(vl.clone());
        for (m, &k) in s.terms() {
            let t = enc_mono(m);
            acc = acc.add(&t.scale(&Int::from(k as i64)));
        }
        acc
    };

    let mut pairs: Vec<(MultiPoly<Int>, MultiPoly<Int>)> = Vec::new();
    for (a, c) in &b.monoid.relations {
        pairs.push((enc_mono(a), enc_mono(c)));
    }
    for (l, r) in &b.add_relations {
        pairs.push((enc_sum(l), enc_sum(r)));
    }
    for (&g, &u) in &aux {
        let prod = MultiPoly::var(vl.clone(), g).mul(&MultiPoly::var(vl.clone(), u));
        pairs.push((prod, MultiPoly::one(vl.clone())));
    }
    match ring {
        BaseRing::N => PresentedAlgebra { ring, vars, polynomials: Vec::new(), pairs },
        _ => {
            let polynomials = pairs
                .iter()
                .map(|(l, r)| l.sub(r))
                .filter(|p| !p.is_zero())
                .collect();
            PresentedAlgebra { ring, vars, polynomials, pairs: Vec::new() }
        }
    }
}

// ---------------------------------------------------------------------------
// Cancellativity
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Cancellativity {
    /// No violation among classes up to the degree bound.
    YesUpTo(u64),
    /// Distinct classes that collapse in the ring extension.
    No { witness: (Monomial, Monomial) },
}

/// Bounded cancellativity test: distinct monoid classes up to the degree
/// bound must stay distinct in the ℚ-algebra. Gröbner collisions that the
/// blueprint congruence itself confirms (sum_equal = Yes) are not
/// violations.
pub fn is_cancellative(b: &Blueprint, degree_bound: u64) -> Cancellativity {
    let (classes, _) = b.engine.classes_up_to(degree_bound);
    let algebra = base_extend(b, BaseRing::Q);
    let basis = algebra.groebner();
    let vl = varlist(algebra.vars.clone());
    let aux_offset = b.ngens();
    let mut aux: BTreeMap<usize, usize> = BTreeMap::new();
    for (k, &i) in b.monoid.inverted.iter().enumerate() {
        aux.insert(i, aux_offset + k);
    }
    let enc = |m: &Monomial| -> MultiPoly<Rat> {
        match m {
            Monomial::Zero => MultiPoly::zero(vl.clone()),
            Monomial::Word(e) => {
                let mut exp = vec![0u32; vl.len()];
                for (i, &x) in e.iter().enumerate() {
                    if x >= 0 {
                        exp[i] = x as u32;
                    } else {
                        exp[aux[&i]] = (-x) as u32;
                    }
                }
                MultiPoly::monomial(vl.clone(), exp, Rat::one())
            }
        }
    };

    let budget = Budget::default();
    let mut buckets: BTreeMap<MultiPoly<Rat>, Vec<&Monomial>> = BTreeMap::new();
    for m in &classes {
        let nf = if basis.generators.is_empty() {
            enc(m)
        } else {
            normal_form(&enc(m), &basis.generators, &basis.order)
        };
        if nf.is_zero() {
            let zero = FormalSum::zero();
            let as_sum = FormalSum::from_monomial(m.clone());
            if sum_equal(b, &as_sum, &zero, &budget) != ThreeValued::Yes {
                return Cancellativity::No { witness: (m.clone(), Monomial::Zero) };
            }
            continue;
        }
        buckets.entry(nf).or_default().push(m);
    }
    for (_, bucket) in buckets {
        if bucket.len() < 2 {
            continue;
        }
        for i in 0..bucket.len() {
            for j in (i + 1)..bucket.len() {
                let u = FormalSum::from_monomial(bucket[i].clone());
                let v = FormalSum::from_monomial(bucket[j].clone());
                if sum_equal(b, &u, &v, &budget) != ThreeValued::Yes {
                    return Cancellativity::No {
                        witness: (bucket[i].clone(), bucket[j].clone()),
                    };
                }
            }
        }
    }
    Cancellativity::YesUpTo(degree_bound)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sum(terms: Vec<(Vec<i64>, u32)>) -> FormalSum {
        FormalSum::from_terms(terms.into_iter().map(|(e, k)| (Monomial::word(e), k)))
    }

    #[test]
    fn sl2_defining_relation_is_yes() {
        let b = sl2();
        let s = sum(vec![(vec![1, 0, 0, 1], 1)]);
        let t = sum(vec![(vec![0, 1, 1, 0], 1), (vec![0, 0, 0, 0], 1)]);
        assert_eq!(sum_equal(&b, &s, &t, &Budget::default()), ThreeValued::Yes);
    }

    #[test]
    fn reflexivity_is_immediate() {
        let b = sl2();
        let s = sum(vec![(vec![2, 1, 0, 0], 3)]);
        assert_eq!(sum_equal(&b, &s, &s, &Budget::default()), ThreeValued::Yes);
    }

    #[test]
    fn squared_product_reaches_one_in_the_sign_extension() {
        // F1[T2,T3] with T2·T3 + 1 ≡ 0: then (T2·T3)² ≡ 1.
        let monoid = MonoidPresentation::free(vec!["T2", "T3"]);
        let rel = (
            FormalSum::from_terms(vec![
                (Monomial::word(vec![1, 1]), 1),
                (Monomial::one(2), 1),
            ]),
            FormalSum::zero(),
        );
        let b = Blueprint::new(monoid, vec![rel]);
        let s = sum(vec![(vec![2, 2], 1)]);
        let t = sum(vec![(vec![0, 0], 1)]);
        assert_eq!(sum_equal(&b, &s, &t, &Budget::default()), ThreeValued::Yes);
    }

    #[test]
    fn distinct_free_words_are_refuted() {
        let b = Blueprint::from_monoid(MonoidPresentation::free(vec!["T"]));
        let s = sum(vec![(vec![2], 1)]);
        let t = sum(vec![(vec![3], 1)]);
        assert_eq!(sum_equal(&b, &s, &t, &Budget::default()), ThreeValued::No);
    }

    #[test]
    fn sl2_spectrum_has_seven_points() {
        let primes = prime_k_ideals(&sl2()).unwrap();
        let sets: Vec<Vec<usize>> = primes
            .iter()
            .map(|p| p.generators.iter().copied().collect())
            .collect();
        assert_eq!(
            sets,
            vec![
                vec![],
                vec![0],
                vec![1],
                vec![2],
                vec![3],
                vec![0, 3],
                vec![1, 2],
            ]
        );
    }

    #[test]
    fn monoid_only_blueprint_keeps_the_monoid_spectrum() {
        let b = Blueprint::from_monoid(MonoidPresentation::free(vec!["T1", "T2"]));
        let primes = prime_k_ideals(&b).unwrap();
        assert_eq!(primes.len(), 4);
    }

    #[test]
    fn mixed_candidates_are_rejected_by_forced_one() {
        let primes = prime_k_ideals(&sl2()).unwrap();
        assert!(!primes.contains(&PrimeIdeal::new([0, 1])));
        assert!(!primes.contains(&PrimeIdeal::new([0, 1, 2, 3])));
    }

    #[test]
    fn gl2_spectrum_has_the_same_seven_points() {
        // The inverted determinant generator never enters a prime, and the
        // relation rejects the mixed candidates exactly as without it.
        let primes = prime_k_ideals(&gl2()).unwrap();
        let sets: Vec<Vec<usize>> = primes
            .iter()
            .map(|p| p.generators.iter().copied().collect())
            .collect();
        assert_eq!(
            sets,
            vec![
                vec![],
                vec![0],
                vec![1],
                vec![2],
                vec![3],
                vec![0, 3],
                vec![1, 2],
            ]
        );
    }

    #[test]
    fn strict_morphisms_reject_sum_images() {
        let b = sl2();
        let t = tensor(&b, &b);
        let m = |p: usize, q: usize| {
            let mut e = vec![0i64; 8];
            e[p] = 1;
            e[4 + q] = 1;
            Monomial::word(e)
        };
        let delta = Morphism::new(vec![
            FormalSum::from_terms(vec![(m(0, 0), 1), (m(1, 2), 1)]),
            FormalSum::from_terms(vec![(m(0, 1), 1), (m(1, 3), 1)]),
            FormalSum::from_terms(vec![(m(2, 0), 1), (m(3, 2), 1)]),
            FormalSum::from_terms(vec![(m(2, 1), 1), (m(3, 3), 1)]),
        ]);
        assert!(check_morphism(&b, &t, &delta, true, &Budget::default()).is_err());
    }

    #[test]
    fn tensor_with_f1_preserves_the_spectrum() {
        let b = sl2();
        let t = tensor(&b, &Blueprint::f1());
        assert_eq!(t.ngens(), 4);
        assert_eq!(prime_k_ideals(&t).unwrap().len(), 7);
    }

    #[test]
    fn tensor_of_free_monoids_is_free() {
        let b1 = Blueprint::from_monoid(MonoidPresentation::free(vec!["T"]));
        let b2 = Blueprint::from_monoid(MonoidPresentation::free(vec!["S"]));
        let t = tensor(&b1, &b2);
        assert_eq!(t.monoid().generators, vec!["T'", "S''"]);
        assert_eq!(prime_k_ideals(&t).unwrap().len(), 4);
    }

    #[test]
    fn sl2_tensor_square_shape() {
        let b = sl2();
        let t = tensor(&b, &b);
        assert_eq!(t.ngens(), 8);
        assert_eq!(t.add_relations().len(), 2);
    }

    #[test]
    fn counit_is_a_morphism() {
        // T1, T4 ↦ 1 and T2, T3 ↦ 0 into F1: the relation becomes 1 ≡ 0 + 1.
        let b = sl2();
        let eps = Morphism::new(vec![
            FormalSum::from_monomial(Monomial::one(0)),
            FormalSum::zero(),
            FormalSum::zero(),
            FormalSum::from_monomial(Monomial::one(0)),
        ]);
        let v = check_morphism(&b, &Blueprint::f1(), &eps, true, &Budget::default()).unwrap();
        assert_eq!(v, ThreeValued::Yes);
    }

    #[test]
    fn identity_is_a_morphism() {
        let b = sl2();
        let id = Morphism::new(
            (0..4).map(|i| FormalSum::from_monomial(Monomial::gen(4, i))).collect(),
        );
        let v = check_morphism(&b, &b, &id, true, &Budget::default()).unwrap();
        assert_eq!(v, ThreeValued::Yes);
    }

    #[test]
    fn comultiplication_is_a_morphism() {
        let b = sl2();
        let t = tensor(&b, &b);
        // Matrix-product pattern: T1 ↦ T1'T1'' + T2'T3'' and so on.
        let m = |p: usize, q: usize| {
            let mut e = vec![0i64; 8];
            e[p] = 1;
            e[4 + q] = 1;
            Monomial::word(e)
        };
        let delta = Morphism::new(vec![
            FormalSum::from_terms(vec![(m(0, 0), 1), (m(1, 2), 1)]),
            FormalSum::from_terms(vec![(m(0, 1), 1), (m(1, 3), 1)]),
            FormalSum::from_terms(vec![(m(2, 0), 1), (m(3, 2), 1)]),
            FormalSum::from_terms(vec![(m(2, 1), 1), (m(3, 3), 1)]),
        ]);
        let v = check_morphism(&b, &t, &delta, false, &Budget::default()).unwrap();
        assert_eq!(v, ThreeValued::Yes);
    }

    #[test]
    fn base_extension_of_f1_is_z() {
        let alg = base_extend(&Blueprint::f1(), BaseRing::Z);
        assert_eq!(alg.render(), "Z");
    }

    #[test]
    fn base_extension_of_laurent_monoid() {
        let gm = Blueprint::from_monoid(
            MonoidPresentation::free(vec!["T"]).with_inverted(0),
        );
        let alg = base_extend(&gm, BaseRing::Z);
        assert_eq!(alg.render(), "Z[T,T_inv] / (T*T_inv - 1)");
    }

    #[test]
    fn base_extension_of_sl2() {
        let alg = base_extend(&sl2(), BaseRing::Z);
        assert_eq!(alg.render(), "Z[T1,T2,T3,T4] / (T1*T4 - T2*T3 - 1)");
    }

    #[test]
    fn sl2_is_cancellative_up_to_degree_four() {
        assert_eq!(is_cancellative(&sl2(), 4), Cancellativity::YesUpTo(4));
    }

    #[test]
    fn free_monoid_is_cancellative() {
        let b = Blueprint::from_monoid(MonoidPresentation::free(vec!["T"]));
        assert_eq!(is_cancellative(&b, 6), Cancellativity::YesUpTo(6));
    }

    #[test]
    fn sign_extension_is_cancellative() {
        // F1[T2,T3] with T2T3 + 1 ≡ 0 embeds into Z[T^{±1}].
        let monoid = MonoidPresentation::free(vec!["T2", "T3"]);
        let rel = (
            FormalSum::from_terms(vec![
                (Monomial::word(vec![1, 1]), 1),
                (Monomial::one(2), 1),
            ]),
            FormalSum::zero(),
        );
        let b = Blueprint::new(monoid, vec![rel]);
        assert_eq!(is_cancellative(&b, 4), Cancellativity::YesUpTo(4));
    }

    #[test]
    fn truncation_monoid_is_cancellative_on_classes() {
        // T² = T³ merges the high powers already in the monoid, so the
        // collapsed pairs are congruent and no witness remains.
        let m = MonoidPresentation::free(vec!["T"])
            .with_relation(Monomial::word(vec![2]), Monomial::word(vec![3]));
        let b = Blueprint::from_monoid(m);
        assert_eq!(is_cancellative(&b, 4), Cancellativity::YesUpTo(4));
    }

    #[test]
    fn additive_absorption_is_not_cancellative() {
        // x·y = 0 with x + y ≡ x: y dies in the ring but not in the
        // blueprint.
        let monoid = MonoidPresentation::free(vec!["x", "y"])
            .with_relation(Monomial::word(vec![1, 1]), Monomial::Zero);
        let rel = (
            FormalSum::from_terms(vec![
                (Monomial::word(vec![1, 0]), 1),
                (Monomial::word(vec![0, 1]), 1),
            ]),
            FormalSum::from_monomial(Monomial::word(vec![1, 0])),
        );
        let b = Blueprint::new(monoid, vec![rel]);
        match is_cancellative(&b, 4) {
            Cancellativity::No { witness } => {
                assert_eq!(witness, (Monomial::word(vec![0, 1]), Monomial::Zero));
            }
            other => panic!("expected a violation, got {:?}", other),
        }
    }

    #[test]
    fn cyclotomic_degree_two() {
        let b = cyclotomic_extension(2).unwrap();
        // z² = 1 and 1 + z ≡ 0.
        assert_eq!(b.monoid().relations.len(), 1);
        let (l, r) = &b.add_relations()[0];
        assert_eq!(l.size() + r.size(), 2);
        let s = FormalSum::from_terms(vec![
            (Monomial::one(1), 1),
            (Monomial::word(vec![1]), 1),
        ]);
        assert_eq!(
            sum_equal(&b, &s, &FormalSum::zero(), &Budget::default()),
            ThreeValued::Yes
        );
    }

    #[test]
    fn cyclotomic_degree_six_moves_the_negative_term() {
        let b = cyclotomic_extension(6).unwrap();
        let (l, r) = &b.add_relations()[0];
        // z² + 1 ≡ z, in either orientation.
        let two_side = if l.size() == 2 { (l, r) } else { (r, l) };
        assert_eq!(two_side.0.size(), 2);
        assert_eq!(two_side.1.size(), 1);
    }

    #[test]
    fn cyclotomic_rejects_n_below_two() {
        assert!(cyclotomic_extension(1).is_err());
    }
}
