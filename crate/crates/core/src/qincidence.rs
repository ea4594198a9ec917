//! Counting in the parameter q and its limit at 1: Gauss numbers,
//! factorials and binomials, the order of GL(n, F_q), subspace enumeration
//! over prime fields with their incidence geometries and the subset limit
//! geometry, absolute values, and the zeta rational function of F_q(T).

use std::collections::{BTreeMap, BTreeSet};

use num::traits::{One, Signed, Zero};
use thiserror::Error;

use crate::fp::{is_prime, monic_irreducibles, FpPoly};
use crate::poly::Poly;
use crate::ratfun::RationalFunction;
use crate::{Int, QPolynomial, Rat};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum QIncidenceError {
    #[error("k = {k} outside 0..={n}")]
    BinomialRange { n: u32, k: u32 },
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("(q-1)^{0} does not divide exactly")]
    NonExactTorusDivision(u32),
    #[error("q must be at least 2")]
    QTooSmall,
    #[error("operand does not match the place")]
    PlaceMismatch,
}

/// [n]_q = 1 + q + … + q^{n−1}.
pub fn gauss_number(n: u32) -> QPolynomial {
    Poly::from_coeffs(vec![Int::one(); n as usize])
}

/// [n]_q! = ∏ [i]_q.
pub fn gauss_factorial(n: u32) -> QPolynomial {
    let mut acc = Poly::one();
    for i in 1..=n {
        acc = &acc * &gauss_number(i);
    }
    acc
}

/// The Gauss binomial [n k]_q = [n]_q! / ([k]_q! [n−k]_q!); the division is
/// exact.
pub fn gauss(n: u32, k: u32) -> Result<QPolynomial, QIncidenceError> {
    if k > n {
        return Err(QIncidenceError::BinomialRange { n, k });
    }
    let num = gauss_factorial(n);
    let den = &gauss_factorial(k) * &gauss_factorial(n - k);
    num.exact_div(&den)
        .map_err(|_| QIncidenceError::BinomialRange { n, k })
}

/// #GL(n, F_q) = (q−1)ⁿ q^{n(n−1)/2} [n]_q!.
pub fn count_gl(n: u32) -> QPolynomial {
    let qm1 = Poly::from_coeffs(vec![-Int::one(), Int::one()]);
    let torus = qm1.pow(n);
    let unipotent = Poly::monomial(n * (n - 1) / 2, Int::one());
    &(&torus * &unipotent) * &gauss_factorial(n)
}

pub fn eval_at(f: &QPolynomial, q: u64) -> Int {
    f.eval(&Int::from(q))
}

/// Value at q = 1 of f / (q−1)ⁿ; the division must be exact.
pub fn limit_q1(f: &QPolynomial, torus_exponent: u32) -> Result<Int, QIncidenceError> {
    let qm1 = Poly::from_coeffs(vec![-Int::one(), Int::one()]);
    let divided = f
        .exact_div(&qm1.pow(torus_exponent))
        .map_err(|_| QIncidenceError::NonExactTorusDivision(torus_exponent))?;
    Ok(divided.eval(&Int::one()))
}

/// The same limit for a reduced rational function.
pub fn limit_q1_rational(
    f: &RationalFunction,
    torus_exponent: u32,
) -> Result<Rat, QIncidenceError> {
    let qm1 = Poly::from_coeffs(vec![-Int::one(), Int::one()]);
    let scaled = RationalFunction::new(
        f.numerator().clone(),
        f.denominator() * &qm1.pow(torus_exponent),
    )
    .map_err(|_| QIncidenceError::NonExactTorusDivision(torus_exponent))?;
    scaled
        .eval(&Rat::one())
        .map_err(|_| QIncidenceError::NonExactTorusDivision(torus_exponent))
}

// ---------------------------------------------------------------------------
// Subspaces over prime fields
// ---------------------------------------------------------------------------

/// A k-dimensional subspace of F_pⁿ in reduced row echelon form; the RREF
/// basis is the canonical representative.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Subspace {
    pub p: u64,
    pub ambient: usize,
    pub rows: Vec<Vec<u64>>,
}

impl Subspace {
    pub fn dimension(&self) -> usize {
        self.rows.len()
    }

    /// Row-major serialization, rows joined by dots: `100.010`.
    pub fn id(&self) -> String {
        self.rows
            .iter()
            .map(|r| r.iter().map(|c| c.to_string()).collect::<String>())
            .collect::<Vec<_>>()
            .join(".")
    }

    /// Membership of a vector in the row space, by elimination against the
    /// RREF basis.
    pub fn contains_vector(&self, v: &[u64]) -> bool {
        let p = self.p;
        let mut v = v.to_vec();
        for row in &self.rows {
            let pivot = row.iter().position(|&c| c == 1).unwrap();
            let c = v[pivot] % p;
            if c != 0 {
                for (i, &r) in row.iter().enumerate() {
                    v[i] = (v[i] + p - c * r % p) % p;
                }
            }
        }
        v.iter().all(|&c| c % p == 0)
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.rows.iter().all(|r| self.contains_vector(r))
    }
}

/// All k-dimensional subspaces of F_pⁿ, one RREF matrix each, sorted by id.
pub fn grassmannian(n: usize, k: usize, p: u64) -> Result<Vec<Subspace>, QIncidenceError> {
    if !is_prime(p) {
        return Err(QIncidenceError::NotPrime(p));
    }
    assert!(n <= 6 && p <= 7, "subspace enumeration is desk-scale");
    if k > n {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    // Choose pivot columns, then run through the free entries: position
    // (i, j) is free when j exceeds pivot i and is not itself a pivot.
    let pivot_sets = combinations(n, k);
    for pivots in pivot_sets {
        let mut free: Vec<(usize, usize)> = Vec::new();
        for (i, &pi) in pivots.iter().enumerate() {
            for j in (pi + 1)..n {
                if !pivots.contains(&j) {
                    free.push((i, j));
                }
            }
        }
        let total = (p as u128).pow(free.len() as u32);
        for code in 0..total {
            let mut rows = vec![vec![0u64; n]; k];
            for (i, &pi) in pivots.iter().enumerate() {
                rows[i][pi] = 1;
            }
            let mut c = code;
            for &(i, j) in &free {
                rows[i][j] = (c % p as u128) as u64;
                c /= p as u128;
            }
            out.push(Subspace { p, ambient: n, rows });
        }
    }
    out.sort();
    Ok(out)
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// Layered elements with containment incidences between distinct layers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IncidenceGeometry {
    /// layer index → sorted element ids
    pub layers: BTreeMap<usize, Vec<String>>,
    /// (element of the lower layer, element of the higher layer)
    pub incidences: BTreeSet<(String, String)>,
}

impl IncidenceGeometry {
    pub fn valence(&self, id: &str) -> usize {
        self.incidences
            .iter()
            .filter(|(a, b)| a == id || b == id)
            .count()
    }

    /// Undirected DOT graph with one rank per layer.
    pub fn render_dot(&self) -> String {
        let mut out = String::from("graph {\n");
        for (layer, elems) in &self.layers {
            out.push_str(&format!("  subgraph cluster_{} {{\n    label=\"k={}\";\n", layer, layer));
            for e in elems {
                out.push_str(&format!("    \"{}\";\n", e));
            }
            out.push_str("  }\n");
        }
        for (a, b) in &self.incidences {
            out.push_str(&format!("  \"{}\" -- \"{}\";\n", a, b));
        }
        out.push_str("}\n");
        out
    }
}

/// Subspace geometry of F_pⁿ: layers 1..n−1 with containment incidences.
pub fn incidence_geometry(n: usize, p: u64) -> Result<IncidenceGeometry, QIncidenceError> {
    let mut layers = BTreeMap::new();
    let mut spaces: BTreeMap<usize, Vec<Subspace>> = BTreeMap::new();
    for k in 1..n {
        let g = grassmannian(n, k, p)?;
        layers.insert(k, g.iter().map(|s| s.id()).collect());
        spaces.insert(k, g);
    }
    let mut incidences = BTreeSet::new();
    for (&k1, lower) in &spaces {
        for (&k2, upper) in &spaces {
            if k1 >= k2 {
                continue;
            }
            for small in lower {
                for big in upper {
                    if big.contains_subspace(small) {
                        incidences.insert((small.id(), big.id()));
                    }
                }
            }
        }
    }
    Ok(IncidenceGeometry { layers, incidences })
}

fn subset_id(s: &[usize]) -> String {
    format!(
        "{{{}}}",
        s.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
    )
}

/// The q → 1 limit geometry: k-subsets of {1..n} with containment.
pub fn limit_geometry(n: usize) -> IncidenceGeometry {
    let mut layers = BTreeMap::new();
    let mut subsets: BTreeMap<usize, Vec<Vec<usize>>> = BTreeMap::new();
    for k in 1..n {
        let mut sets: Vec<Vec<usize>> = combinations(n, k)
            .into_iter()
            .map(|c| c.into_iter().map(|x| x + 1).collect())
            .collect();
        sets.sort();
        layers.insert(k, sets.iter().map(|s| subset_id(s)).collect());
        subsets.insert(k, sets);
    }
    let mut incidences = BTreeSet::new();
    for (&k1, lower) in &subsets {
        for (&k2, upper) in &subsets {
            if k1 >= k2 {
                continue;
            }
            for small in lower {
                for big in upper {
                    if small.iter().all(|x| big.contains(x)) {
                        incidences.insert((subset_id(small), subset_id(big)));
                    }
                }
            }
        }
    }
    IncidenceGeometry { layers, incidences }
}

/// Checks that the symmetric group acts transitively on every layer of the
/// limit geometry and that the layer sizes are the binomial coefficients.
pub fn sn_action_check(n: usize) -> bool {
    assert!(n <= 7);
    let geometry = limit_geometry(n);
    let perms = permutations(n);
    for (&k, layer) in &geometry.layers {
        let expected = binomial(n, k);
        if layer.len() != expected {
            return false;
        }
        // Each permutation maps the layer onto itself, and the orbit of the
        // first element is the whole layer.
        let base: Vec<usize> = (1..=k).collect();
        let mut orbit: BTreeSet<String> = BTreeSet::new();
        for perm in &perms {
            let mut image: Vec<usize> = base.iter().map(|&x| perm[x - 1]).collect();
            image.sort_unstable();
            orbit.insert(subset_id(&image));
        }
        if orbit.len() != layer.len() || !layer.iter().all(|id| orbit.contains(id)) {
            return false;
        }
    }
    true
}

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let mut acc = 1usize;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut items: Vec<usize> = (1..=n).collect();
    let mut out = Vec::new();
    heap_permute(&mut items, n, &mut out);
    out
}

fn heap_permute(items: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
    if k == 1 {
        out.push(items.clone());
        return;
    }
    for i in 0..k {
        heap_permute(items, k - 1, out);
        if k.is_multiple_of(2) {
            items.swap(i, k - 1);
        } else {
            items.swap(0, k - 1);
        }
    }
}

// ---------------------------------------------------------------------------
// Places and absolute values
// ---------------------------------------------------------------------------

/// Places of ℚ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum QPlace {
    Archimedean,
    Padic(u64),
}

/// |x| at the archimedean place, p^{−i} at v_p; v(0) = 0.
pub fn absolute_value_q(x: &Rat, place: &QPlace) -> Result<Rat, QIncidenceError> {
    if x.is_zero() {
        return Ok(Rat::zero());
    }
    match place {
        QPlace::Archimedean => Ok(x.abs()),
        QPlace::Padic(p) => {
            if !is_prime(*p) {
                return Err(QIncidenceError::NotPrime(*p));
            }
            let p_int = Int::from(*p);
            let mut num = x.numer().clone();
            let mut den = x.denom().clone();
            let mut i: i64 = 0;
            while (num.clone() % p_int.clone()).is_zero() {
                num /= p_int.clone();
                i += 1;
            }
            while (den.clone() % p_int.clone()).is_zero() {
                den /= p_int.clone();
                i -= 1;
            }
            Ok(power_rat(*p, -i))
        }
    }
}

fn power_rat(base: u64, e: i64) -> Rat {
    let b = Int::from(base);
    if e >= 0 {
        Rat::from_integer(num::pow::pow(b, e as usize))
    } else {
        Rat::new(Int::one(), num::pow::pow(b, (-e) as usize))
    }
}

/// A nonzero element g/h of F_p(T).
#[derive(Clone, Debug)]
pub struct FpRational {
    pub num: FpPoly,
    pub den: FpPoly,
}

/// Places of F_p(T): the place at infinity or a monic irreducible.
#[derive(Clone, Debug)]
pub enum FPlace {
    Infinity,
    Finite(FpPoly),
}

impl FPlace {
    pub fn finite(f: FpPoly) -> Result<Self, QIncidenceError> {
        if !f.is_monic() || !f.is_irreducible() {
            return Err(QIncidenceError::PlaceMismatch);
        }
        Ok(FPlace::Finite(f))
    }

    /// Degree of the residue field over F_p.
    pub fn degree(&self) -> usize {
        match self {
            FPlace::Infinity => 1,
            FPlace::Finite(f) => f.degree().unwrap(),
        }
    }
}

/// v_f(fⁱ·g/h) = q^{−d·i} and v_∞(g/h) = q^{deg h − deg g}; v(0) = 0.
pub fn absolute_value_fq(x: &FpRational, place: &FPlace) -> Result<Rat, QIncidenceError> {
    if x.num.is_zero() {
        return Ok(Rat::zero());
    }
    if x.den.is_zero() {
        return Err(QIncidenceError::PlaceMismatch);
    }
    let q = x.num.p;
    match place {
        FPlace::Infinity => {
            let dg = x.num.degree().unwrap() as i64;
            let dh = x.den.degree().unwrap() as i64;
            Ok(power_rat(q, dh - dg))
        }
        FPlace::Finite(f) => {
            if f.p != q {
                return Err(QIncidenceError::PlaceMismatch);
            }
            let d = f.degree().unwrap() as i64;
            let (mn, _) = x.num.multiplicity_of(f);
            let (md, _) = x.den.multiplicity_of(f);
            Ok(power_rat(q, -d * (mn - md)))
        }
    }
}

// ---------------------------------------------------------------------------
// Zeta of the rational function field
// ---------------------------------------------------------------------------

/// Z(T) = 1 / ((1 − T)(1 − qT)).
pub fn zeta_function_field(q: u64) -> Result<RationalFunction, QIncidenceError> {
    if q < 2 {
        return Err(QIncidenceError::QTooSmall);
    }
    let one_minus_t = Poly::from_coeffs(vec![Int::one(), -Int::one()]);
    let one_minus_qt = Poly::from_coeffs(vec![Int::one(), -Int::from(q)]);
    Ok(RationalFunction::new(Poly::one(), &one_minus_t * &one_minus_qt).unwrap())
}

/// Number of degree-d places of F_q(T): monic irreducibles of degree d by
/// the Möbius necklace count, plus the place at infinity in degree 1.
pub fn place_count(q: u64, d: u32) -> Result<u64, QIncidenceError> {
    if q < 2 {
        return Err(QIncidenceError::QTooSmall);
    }
    let mut sum: i128 = 0;
    for e in 1..=d {
        if d.is_multiple_of(e) {
            let m = moebius(e) as i128;
            sum += m * (q as i128).pow(d / e);
        }
    }
    let irr = (sum / d as i128) as u64;
    Ok(irr + if d == 1 { 1 } else { 0 })
}

fn moebius(n: u32) -> i32 {
    let mut n = n;
    let mut count = 0;
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            n /= d;
            if n.is_multiple_of(d) {
                return 0;
            }
            count += 1;
        }
        d += 1;
    }
    if n > 1 {
        count += 1;
    }
    if count % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Degree-d places with q prime, by enumeration (the cross-check route).
pub fn place_count_by_enumeration(p: u64, d: u32) -> Result<u64, QIncidenceError> {
    if !is_prime(p) {
        return Err(QIncidenceError::NotPrime(p));
    }
    let irr = monic_irreducibles(p, d as usize).len() as u64;
    Ok(irr + if d == 1 { 1 } else { 0 })
}

/// Coefficients (up to degree dmax) of the Euler product
/// ∏_d (1 − T^d)^{−c_d} over the place counts c_d.
pub fn euler_product_coeffs(q: u64, dmax: u32) -> Result<Vec<Int>, QIncidenceError> {
    let n = dmax as usize;
    let mut acc = vec![Int::zero(); n + 1];
    acc[0] = Int::one();
    for d in 1..=dmax {
        let c = place_count(q, d)?;
        for _ in 0..c {
            // Multiply by 1/(1 − T^d) = Σ_j T^{dj}, truncated.
            let mut next = vec![Int::zero(); n + 1];
            for (i, v) in acc.iter().enumerate() {
                let mut j = i;
                while j <= n {
                    next[j] += v.clone();
                    j += d as usize;
                }
            }
            acc = next;
        }
    }
    Ok(acc)
}
