//! Point ranks, rank spaces and Weyl extensions.
//!
//! The rank of a point is the Krull dimension over ℚ of its closure; the
//! rank space collects the minimal-rank points, each of whose closures must
//! be a split torus either with or without a sign (order-two) class. The
//! finite point set of the rank space carries a group structure induced by
//! a comultiplication, computed here through the support-kill rule with the
//! congruence decision as a fallback.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::blueprint::{
    base_extend, is_cancellative, prime_k_ideals, sum_equal, BaseRing, Blueprint, BlueprintError,
    Budget, BudgetDiagnostics, Cancellativity, FormalSum, KPrimeIdeal, Morphism, ThreeValued,
};
use crate::groebner::krull_dimension;
use crate::monoid::{unit_lattice, MonoidPresentation, Monomial};
use crate::scheme::{spec, SchemeError};
use crate::Int;

#[derive(Debug, Error)]
pub enum TitsWeylError {
    #[error(transparent)]
    Blueprint(#[from] BlueprintError),
    #[error(transparent)]
    Scheme(#[from] SchemeError),
    #[error("closure of {0:?} is empty (unit ideal after substitution)")]
    EmptyClosure(KPrimeIdeal),
    #[error("congruence undecided: {0:?}")]
    Undecided(BudgetDiagnostics),
    #[error("product landed outside the rank space: {0:?}")]
    NotRankPoint(BTreeSet<usize>),
    #[error("rank-space component {0} is not a torus: {1}")]
    NotTorus(String, String),
    #[error("multiplication table is not a group: {0}")]
    NotAGroup(String),
}

/// A point with its rank and closure presentation.
#[derive(Clone, Debug)]
pub struct RankedPoint {
    pub point: KPrimeIdeal,
    pub rank: i64,
    pub closure: Blueprint,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TorusType {
    F1Torus(usize),
    F1SquaredTorus(usize),
    Other(String),
}

impl TorusType {
    pub fn is_torus(&self) -> bool {
        !matches!(self, TorusType::Other(_))
    }

    pub fn label(&self) -> String {
        match self {
            TorusType::F1Torus(r) => format!("F1-torus({})", r),
            TorusType::F1SquaredTorus(r) => format!("F1squared-torus({})", r),
            TorusType::Other(why) => format!("other({})", why),
        }
    }
}

#[derive(Clone, Debug)]
pub struct RankSpaceComponent {
    pub id: String,
    pub point: KPrimeIdeal,
    pub torus_type: TorusType,
    pub closure: Blueprint,
}

/// Closure of a point: the blueprint with the point's generators forced to
/// zero. Killed generators are removed, additive terms containing them are
/// deleted, and additive relations that shrink to a pair of single
/// monomials are absorbed as monoid relations. The second return maps old
/// generator indices to surviving ones.
pub fn closure_blueprint(b: &Blueprint, kill: &BTreeSet<usize>) -> (Blueprint, Vec<Option<usize>>) {
    let n = b.ngens();
    let mut map: Vec<Option<usize>> = vec![None; n];
    let mut gens = Vec::new();
    for (i, slot) in map.iter_mut().enumerate() {
        if !kill.contains(&i) {
            *slot = Some(gens.len());
            gens.push(b.monoid().generators[i].clone());
        }
    }
    let project = |m: &Monomial| -> Monomial {
        match m {
            Monomial::Zero => Monomial::Zero,
            Monomial::Word(e) => {
                if e.iter().enumerate().any(|(i, &x)| x != 0 && kill.contains(&i)) {
                    return Monomial::Zero;
                }
                Monomial::Word(
                    e.iter()
                        .enumerate()
                        .filter(|(i, _)| !kill.contains(i))
                        .map(|(_, &x)| x)
                        .collect(),
                )
            }
        }
    };

    let mut pres = MonoidPresentation::free(gens);
    for &old in &b.monoid().inverted {
        if let Some(ni) = map[old] {
            pres.inverted.insert(ni);
        }
    }
    for (a, c) in &b.monoid().relations {
        let pa = project(a);
        let pc = project(c);
        if pa.is_zero() && pc.is_zero() {
            continue;
        }
        pres.relations.push((pa, pc));
    }

    let project_sum = |s: &FormalSum| -> FormalSum {
        FormalSum::from_terms(s.terms().map(|(m, &k)| (project(m), k)))
    };
    let mut adds = Vec::new();
    for (l, r) in b.add_relations() {
        let pl = project_sum(l);
        let pr = project_sum(r);
        match (pl.size(), pr.size()) {
            (0, 0) => {}
            (1, 1) => {
                let lm = pl.terms().next().unwrap().0.clone();
                let rm = pr.terms().next().unwrap().0.clone();
                pres.relations.push((lm, rm));
            }
            (1, 0) => {
                let lm = pl.terms().next().unwrap().0.clone();
                pres.relations.push((lm, Monomial::Zero));
            }
            (0, 1) => {
                let rm = pr.terms().next().unwrap().0.clone();
                pres.relations.push((rm, Monomial::Zero));
            }
            _ => adds.push((pl, pr)),
        }
    }
    (Blueprint::new(pres, adds), map)
}

/// Rank of a point: Krull dimension over ℚ of its closure.
pub fn point_rank(b: &Blueprint, p: &KPrimeIdeal) -> Result<RankedPoint, TitsWeylError> {
    let (closure, _) = closure_blueprint(b, &p.generators);
    let algebra = base_extend(&closure, BaseRing::Q);
    let basis = algebra.groebner();
    let rank = krull_dimension(&basis);
    if rank < 0 {
        return Err(TitsWeylError::EmptyClosure(p.clone()));
    }
    Ok(RankedPoint { point: p.clone(), rank, closure })
}

/// Ranks of every point of the spectrum.
pub fn ranked_points(b: &Blueprint) -> Result<Vec<RankedPoint>, TitsWeylError> {
    let primes = prime_k_ideals(b)?;
    primes.iter().map(|p| point_rank(b, p)).collect()
}

/// The rank space: minimal-rank points with their torus classification.
pub fn rank_space(b: &Blueprint) -> Result<Vec<RankSpaceComponent>, TitsWeylError> {
    let ranked = ranked_points(b)?;
    let r = ranked.iter().map(|rp| rp.rank).min().unwrap_or(0);
    let mut out = Vec::new();
    for rp in ranked.into_iter().filter(|rp| rp.rank == r) {
        let torus_type = classify_torus(&rp.closure, r as usize);
        out.push(RankSpaceComponent {
            id: rp.point.id(b.monoid()),
            point: rp.point,
            torus_type,
            closure: rp.closure,
        });
    }
    out.sort_by(|a, c| a.id.cmp(&c.id));
    Ok(out)
}

const INVERSE_SEARCH_LENGTH: u64 = 8;

/// Classification of a closure against the two torus shapes. A plain torus
/// has a group of nonzero classes of the right rank and no additive
/// relations left. A sign torus additionally carries relations a + b ≡ 0
/// whose derived monomial congruences (a² ≡ b²) leave exactly one order-two
/// class m with m + 1 ≡ 0 confirmed.
fn classify_torus(closure: &Blueprint, r: usize) -> TorusType {
    if closure.add_relations().is_empty() {
        let u = unit_lattice(closure.monoid(), INVERSE_SEARCH_LENGTH);
        if !u.is_group_with_zero {
            return TorusType::Other("not a group with zero".to_string());
        }
        if !u.torsion.is_empty() {
            return TorusType::Other(format!("torsion {:?}", u.torsion));
        }
        if u.rank != r {
            return TorusType::Other(format!("unit rank {} instead of {}", u.rank, r));
        }
        return TorusType::F1Torus(r);
    }

    // Sign-torus route: every additive relation must be a two-term zero sum.
    let mut sign_pairs: Vec<(Monomial, Monomial)> = Vec::new();
    for (l, rr) in closure.add_relations() {
        let (sum, other) = if rr.is_empty() { (l, rr) } else { (rr, l) };
        if !other.is_empty() || sum.size() != 2 {
            return TorusType::Other("additive relation is not a two-term zero sum".to_string());
        }
        let terms: Vec<_> = sum.terms().collect();
        if terms.len() != 2 {
            return TorusType::Other("doubled term in a zero sum".to_string());
        }
        sign_pairs.push((terms[0].0.clone(), terms[1].0.clone()));
    }

    // Augment with a² = b², justified once a or b is invertible.
    let mut aug = closure.monoid().clone();
    let mut added = vec![false; sign_pairs.len()];
    loop {
        let mut changed = false;
        let engine = crate::monoid::MonoidEngine::new(&aug);
        let (classes, _) = engine.classes_up_to(INVERSE_SEARCH_LENGTH);
        let one = engine.normalize(&Monomial::one(aug.ngens()));
        let invertible = |m: &Monomial| classes.iter().any(|c| engine.mul(m, c) == one);
        for (k, (a, bm)) in sign_pairs.iter().enumerate() {
            if added[k] {
                continue;
            }
            if invertible(a) || invertible(bm) {
                aug.relations.push((a.pow(2), bm.pow(2)));
                added[k] = true;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    if added.iter().any(|&x| !x) {
        return TorusType::Other("sign relation without an invertible side".to_string());
    }

    let u = unit_lattice(&aug, INVERSE_SEARCH_LENGTH);
    if !u.is_group_with_zero {
        return TorusType::Other("not a group with zero".to_string());
    }
    if u.rank != r {
        return TorusType::Other(format!("unit rank {} instead of {}", u.rank, r));
    }
    if u.torsion != vec![Int::from(2)] {
        return TorusType::Other(format!("torsion {:?} instead of a single order-2 class", u.torsion));
    }
    let Some(Some(m)) = u.torsion_reps.first().cloned() else {
        return TorusType::Other("no admissible order-2 representative".to_string());
    };
    let s = FormalSum::from_terms(vec![(m, 1), (Monomial::one(closure.ngens()), 1)]);
    match sum_equal(closure, &s, &FormalSum::zero(), &Budget::default()) {
        ThreeValued::Yes => TorusType::F1SquaredTorus(r),
        _ => TorusType::Other("m + 1 ≡ 0 not confirmed".to_string()),
    }
}

/// The three verdicts behind the torus hypothesis: connectedness,
/// cancellativity and torus-shaped minimal components.
#[derive(Debug)]
pub struct HypothesisReport {
    pub connected: bool,
    pub cancellative: Cancellativity,
    pub components: Vec<RankSpaceComponent>,
}

impl HypothesisReport {
    pub fn holds(&self) -> bool {
        self.connected
            && matches!(self.cancellative, Cancellativity::YesUpTo(_))
            && self.components.iter().all(|c| c.torus_type.is_torus())
    }
}

pub fn check_hypothesis(b: &Blueprint, cancel_bound: u64) -> Result<HypothesisReport, TitsWeylError> {
    let poset = spec(b, "X")?;
    Ok(HypothesisReport {
        connected: poset.connected(),
        cancellative: is_cancellative(b, cancel_bound),
        components: rank_space(b)?,
    })
}

/// Product of two rank-space points under a comultiplication: a generator
/// survives the product iff some term of its image avoids both kill sets;
/// when a surviving sum may still be congruent to zero, the congruence
/// decision settles it.
pub fn component_product(
    g: &Blueprint,
    tensor_square: &Blueprint,
    delta: &Morphism,
    p: &KPrimeIdeal,
    q: &KPrimeIdeal,
    rank_points: &[KPrimeIdeal],
    budget: &Budget,
) -> Result<KPrimeIdeal, TitsWeylError> {
    let n = g.ngens();
    let mut kill: BTreeSet<usize> = BTreeSet::new();
    for &i in &p.generators {
        kill.insert(i);
    }
    for &i in &q.generators {
        kill.insert(n + i);
    }
    let (closure, map) = closure_blueprint(tensor_square, &kill);
    let mut dead_gens: BTreeSet<usize> = BTreeSet::new();
    for c in 0..n {
        let image = &delta.images[c];
        let mut survivors = FormalSum::zero();
        for (m, &k) in image.terms() {
            let touched = m
                .exponents()
                .map(|e| e.iter().enumerate().any(|(i, &x)| x != 0 && kill.contains(&i)))
                .unwrap_or(true);
            if !touched {
                let projected = project_into(m, &map, closure.ngens());
                survivors.add_term(projected, k);
            }
        }
        if survivors.is_empty() {
            dead_gens.insert(c);
            continue;
        }
        // Fallback: a surviving sum may still collapse to zero. Anything
        // short of a confirmed collapse leaves the generator alive, which is
        // the support-kill verdict.
        let fallback = Budget {
            max_chain: budget.max_chain.min(16),
            max_states: budget.max_states.min(4000),
            ..budget.clone()
        };
        if sum_equal(&closure, &survivors, &FormalSum::zero(), &fallback) == ThreeValued::Yes {
            dead_gens.insert(c);
        }
    }
    rank_points
        .iter()
        .find(|rp| rp.generators == dead_gens)
        .cloned()
        .ok_or(TitsWeylError::NotRankPoint(dead_gens))
}

fn project_into(m: &Monomial, map: &[Option<usize>], total: usize) -> Monomial {
    match m {
        Monomial::Zero => Monomial::Zero,
        Monomial::Word(e) => {
            let mut w = vec![0i64; total];
            for (i, &x) in e.iter().enumerate() {
                if x != 0 {
                    let ni = map[i].expect("surviving term touches a killed generator");
                    w[ni] = x;
                }
            }
            Monomial::Word(w)
        }
    }
}

/// Full multiplication table of the rank-space points under the
/// comultiplication, with the group axioms asserted.
#[derive(Debug)]
pub struct WeylGroup {
    pub component_ids: Vec<String>,
    pub components: Vec<RankSpaceComponent>,
    pub table: Vec<Vec<usize>>,
    pub identity: usize,
    pub label: String,
}

pub fn weyl_group(
    g: &Blueprint,
    delta: &Morphism,
    epsilon: &Morphism,
    budget: &Budget,
) -> Result<WeylGroup, TitsWeylError> {
    let comps = rank_space(g)?;
    for c in &comps {
        if !c.torus_type.is_torus() {
            return Err(TitsWeylError::NotTorus(c.id.clone(), c.torus_type.label()));
        }
    }
    let tensor_square = crate::blueprint::tensor(g, g);
    let points: Vec<KPrimeIdeal> = comps.iter().map(|c| c.point.clone()).collect();

    let w = comps.len();
    let mut table = vec![vec![0usize; w]; w];
    for (i, p) in points.iter().enumerate() {
        for (j, q) in points.iter().enumerate() {
            let r = component_product(g, &tensor_square, delta, p, q, &points, budget)?;
            table[i][j] = points.iter().position(|x| x == &r).unwrap();
        }
    }

    // The identity is the component whose generators the counit kills.
    let kernel: BTreeSet<usize> = (0..g.ngens())
        .filter(|&i| epsilon.images[i].is_empty())
        .collect();
    let identity = points
        .iter()
        .position(|p| p.generators == kernel)
        .ok_or_else(|| TitsWeylError::NotAGroup("counit kernel is not a rank point".into()))?;

    // Group axioms.
    for i in 0..w {
        if table[identity][i] != i || table[i][identity] != i {
            return Err(TitsWeylError::NotAGroup(format!(
                "identity fails on component {}",
                comps[i].id
            )));
        }
    }
    for i in 0..w {
        for j in 0..w {
            for k in 0..w {
                if table[table[i][j]][k] != table[i][table[j][k]] {
                    return Err(TitsWeylError::NotAGroup(format!(
                        "associativity fails at ({}, {}, {})",
                        i, j, k
                    )));
                }
            }
        }
    }
    for i in 0..w {
        if !(0..w).any(|j| table[i][j] == identity && table[j][i] == identity) {
            return Err(TitsWeylError::NotAGroup(format!(
                "no inverse for component {}",
                comps[i].id
            )));
        }
    }

    let label = group_label(&table, identity);
    Ok(WeylGroup {
        component_ids: comps.iter().map(|c| c.id.clone()).collect(),
        components: comps,
        table,
        identity,
        label,
    })
}

fn group_label(table: &[Vec<usize>], identity: usize) -> String {
    let n = table.len();
    match n {
        1 => "trivial".to_string(),
        _ => {
            // Cyclic iff some element generates everything.
            let cyclic = (0..n).any(|g| {
                let mut seen = BTreeSet::new();
                let mut x = identity;
                for _ in 0..n {
                    x = table[x][g];
                    seen.insert(x);
                }
                seen.len() == n
            });
            if cyclic {
                format!("Z/{}", n)
            } else {
                format!("order {}", n)
            }
        }
    }
}

/// Matrix-product comultiplication for a k×k matrix blueprint whose
/// generators are laid out row-major, with an optional inverted determinant
/// generator mapped to its own product.
pub fn matrix_comultiplication(g: &Blueprint, k: usize, det: Option<usize>) -> Morphism {
    let n = g.ngens();
    let total = 2 * n;
    let mut images = Vec::with_capacity(n);
    for idx in 0..n {
        if Some(idx) == det {
            let mut e = vec![0i64; total];
            e[idx] = 1;
            e[n + idx] = 1;
            images.push(FormalSum::from_monomial(Monomial::word(e)));
            continue;
        }
        let (i, j) = (idx / k, idx % k);
        let mut sum = FormalSum::zero();
        for l in 0..k {
            let mut e = vec![0i64; total];
            e[i * k + l] = 1;
            e[n + l * k + j] = 1;
            sum.add_term(Monomial::word(e), 1);
        }
        images.push(sum);
    }
    Morphism::new(images)
}

/// Counit of the matrix pattern: identity matrix entries, determinant to 1.
pub fn matrix_counit(g: &Blueprint, k: usize, det: Option<usize>) -> Morphism {
    let n = g.ngens();
    let mut images = Vec::with_capacity(n);
    for idx in 0..n {
        if Some(idx) == det {
            images.push(FormalSum::from_monomial(Monomial::one(0)));
            continue;
        }
        let (i, j) = (idx / k, idx % k);
        if i == j {
            images.push(FormalSum::from_monomial(Monomial::one(0)));
        } else {
            images.push(FormalSum::zero());
        }
    }
    Morphism::new(images)
}

/// Diagonal comultiplication g ↦ g'·g'' for torus-like blueprints.
pub fn torus_comultiplication(g: &Blueprint) -> Morphism {
    let n = g.ngens();
    let images = (0..n)
        .map(|i| {
            let mut e = vec![0i64; 2 * n];
            e[i] = 1;
            e[n + i] = 1;
            FormalSum::from_monomial(Monomial::word(e))
        })
        .collect();
    Morphism::new(images)
}

pub fn torus_counit(g: &Blueprint) -> Morphism {
    Morphism::new(vec![FormalSum::from_monomial(Monomial::one(0)); g.ngens()])
}
