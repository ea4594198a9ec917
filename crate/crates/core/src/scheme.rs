//! Spectra as finite specialization posets, schemes as charts glued along
//! verified isomorphisms of principal-open localizations, and the standard
//! objects: affine space, tori and projective space.
//!
//! The structure sheaf is exposed only through localization presentations on
//! principal opens; nothing is claimed on other opens.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::blueprint::{
    base_extend, check_morphism, prime_k_ideals, sum_equal, BaseRing, Blueprint, BlueprintError,
    Budget, FormalSum, Morphism, PresentedAlgebra, ThreeValued,
};
use crate::monoid::{localize, MonoidPresentation, Monomial, PrimeIdeal};

#[derive(Debug, Error)]
pub enum SchemeError {
    #[error(transparent)]
    Blueprint(#[from] BlueprintError),
    #[error(transparent)]
    Monoid(#[from] crate::monoid::MonoidError),
    #[error("gluing between charts {0} and {1} is not an isomorphism: {2}")]
    BadGluing(usize, usize, String),
}

/// One point of a spectrum: its prime, a stable id and the localization of
/// the monoid at the complement.
#[derive(Clone, Debug)]
pub struct SpecPoint {
    pub id: String,
    pub prime: PrimeIdeal,
    pub generator_names: Vec<String>,
    pub localization: MonoidPresentation,
}

/// A finite specialization poset with Hasse-reduced cover relations
/// (`(a, b)` meaning the prime of `a` is contained in the prime of `b`).
#[derive(Clone, Debug)]
pub struct SpecPoset {
    pub object: String,
    pub points: Vec<SpecPoint>,
    pub hasse: Vec<(usize, usize)>,
    /// Full containment order, as index pairs (a ⊆ b, a ≠ b).
    pub order: Vec<(usize, usize)>,
}

impl SpecPoset {
    pub fn point_index(&self, id: &str) -> Option<usize> {
        self.points.iter().position(|p| p.id == id)
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        a == b || self.order.contains(&(a, b))
    }

    /// Connectivity of the comparability graph.
    pub fn connected(&self) -> bool {
        let n = self.points.len();
        if n <= 1 {
            return true;
        }
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut Vec<usize>, x: usize) -> usize {
            if parent[x] != x {
                let r = find(parent, parent[x]);
                parent[x] = r;
            }
            parent[x]
        }
        for &(a, b) in &self.hasse {
            let ra = find(&mut parent, a);
            let rb = find(&mut parent, b);
            parent[ra] = rb;
        }
        let r0 = find(&mut parent, 0);
        (1..n).all(|i| find(&mut parent, i) == r0)
    }
}

/// Specialization poset of the prime k-ideals of a blueprint, ordered by
/// ideal inclusion, with per-point localizations of the monoid at the
/// complement generators.
pub fn spec(b: &Blueprint, name: &str) -> Result<SpecPoset, SchemeError> {
    let primes = prime_k_ideals(b)?;
    build_poset(b, name, primes)
}

fn build_poset(
    b: &Blueprint,
    name: &str,
    primes: Vec<PrimeIdeal>,
) -> Result<SpecPoset, SchemeError> {
    let n = b.ngens();
    let pres = b.monoid();
    let mut points: Vec<SpecPoint> = Vec::new();
    for p in &primes {
        let complement: Vec<Monomial> = (0..n)
            .filter(|i| !p.generators.contains(i))
            .map(|i| Monomial::gen(n, i))
            .collect();
        let localization = localize(pres, &complement)?;
        points.push(SpecPoint {
            id: p.id(pres),
            prime: p.clone(),
            generator_names: p.generators.iter().map(|&i| pres.generators[i].clone()).collect(),
            localization,
        });
    }
    let mut idx: Vec<usize> = (0..points.len()).collect();
    idx.sort_by(|&a, &b| points[a].id.cmp(&points[b].id));
    let points: Vec<SpecPoint> = idx.into_iter().map(|i| points[i].clone()).collect();

    // Containment of generated ideals, decided through membership.
    let views: Vec<_> = points
        .iter()
        .map(|pt| {
            let gens: Vec<Monomial> =
                pt.prime.generators.iter().map(|&i| Monomial::gen(n, i)).collect();
            b.engine().ideal(&gens)
        })
        .collect();
    let mut order = Vec::new();
    for a in 0..points.len() {
        for bb in 0..points.len() {
            if a == bb {
                continue;
            }
            let contained = points[a]
                .prime
                .generators
                .iter()
                .all(|&i| views[bb].contains(&Monomial::gen(n, i)));
            let equal = contained
                && points[bb]
                    .prime
                    .generators
                    .iter()
                    .all(|&i| views[a].contains(&Monomial::gen(n, i)));
            if contained && !equal {
                order.push((a, bb));
            }
        }
    }
    let hasse = hasse_reduce(points.len(), &order);
    Ok(SpecPoset { object: name.to_string(), points, hasse, order })
}

fn hasse_reduce(n: usize, order: &[(usize, usize)]) -> Vec<(usize, usize)> {
    let set: BTreeSet<(usize, usize)> = order.iter().copied().collect();
    let mut hasse = Vec::new();
    for &(a, b) in order {
        let via = (0..n).any(|c| c != a && c != b && set.contains(&(a, c)) && set.contains(&(c, b)));
        if !via {
            hasse.push((a, b));
        }
    }
    hasse.sort_unstable();
    hasse
}

// ---------------------------------------------------------------------------
// Glued schemes
// ---------------------------------------------------------------------------

#[derive(Clone, Debug)]
pub struct Chart {
    pub name: String,
    pub blueprint: Blueprint,
}

/// Gluing of two charts along principal opens, with the generator
/// correspondence between the two localizations in both directions.
#[derive(Clone, Debug)]
pub struct Gluing {
    pub chart_a: usize,
    pub chart_b: usize,
    pub open_a: Monomial,
    pub open_b: Monomial,
    pub fwd: Morphism,
    pub bwd: Morphism,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SchemeKind {
    Affine(usize),
    Torus(usize),
    Projective(usize),
    Custom,
}

#[derive(Clone, Debug)]
pub struct GluedScheme {
    pub name: String,
    pub kind: SchemeKind,
    pub charts: Vec<Chart>,
    pub gluings: Vec<Gluing>,
}

/// Localization of a blueprint at one monomial: the monoid gains an inverse
/// generator, the additive relations are carried over unchanged.
pub fn localize_blueprint(b: &Blueprint, m: &Monomial) -> Result<Blueprint, SchemeError> {
    let loc = localize(b.monoid(), std::slice::from_ref(m))?;
    let total = loc.ngens();
    let widen = |mm: &Monomial| -> Monomial {
        match mm {
            Monomial::Zero => Monomial::Zero,
            Monomial::Word(e) => {
                let mut w = e.clone();
                w.resize(total, 0);
                Monomial::Word(w)
            }
        }
    };
    let adds = b
        .add_relations()
        .iter()
        .map(|(l, r)| {
            let wl = FormalSum::from_terms(l.terms().map(|(mm, &k)| (widen(mm), k)));
            let wr = FormalSum::from_terms(r.terms().map(|(mm, &k)| (widen(mm), k)));
            (wl, wr)
        })
        .collect();
    Ok(Blueprint::new(loc, adds))
}

/// Verifies every gluing: both directions must be morphisms and their
/// composites the identity on generators.
pub fn verify_gluings(x: &GluedScheme, budget: &Budget) -> Result<(), SchemeError> {
    for g in &x.gluings {
        let loc_a = localize_blueprint(&x.charts[g.chart_a].blueprint, &g.open_a)?;
        let loc_b = localize_blueprint(&x.charts[g.chart_b].blueprint, &g.open_b)?;
        let fwd_ok = check_morphism(&loc_a, &loc_b, &g.fwd, true, budget)?;
        let bwd_ok = check_morphism(&loc_b, &loc_a, &g.bwd, true, budget)?;
        if fwd_ok != ThreeValued::Yes || bwd_ok != ThreeValued::Yes {
            return Err(SchemeError::BadGluing(
                g.chart_a,
                g.chart_b,
                "direction maps are not confirmed morphisms".to_string(),
            ));
        }
        for i in 0..loc_a.ngens() {
            let gen = FormalSum::from_monomial(Monomial::gen(loc_a.ngens(), i));
            let img = &g.fwd.images[i];
            let back = g.bwd.apply_sum(&loc_a, img).ok_or_else(|| {
                SchemeError::BadGluing(g.chart_a, g.chart_b, "no inverse image".to_string())
            })?;
            if sum_equal(&loc_a, &gen, &back, budget) != ThreeValued::Yes {
                return Err(SchemeError::BadGluing(
                    g.chart_a,
                    g.chart_b,
                    format!("composite is not the identity on generator {}", i),
                ));
            }
        }
    }
    Ok(())
}

/// Affine n-space, the rank-r torus, or projective n-space.
pub fn standard_scheme(kind: SchemeKind) -> GluedScheme {
    match kind {
        SchemeKind::Affine(n) => {
            let gens: Vec<String> = (1..=n).map(|i| format!("T{}", i)).collect();
            GluedScheme {
                name: format!("A{}", n),
                kind,
                charts: vec![Chart {
                    name: "A".to_string(),
                    blueprint: Blueprint::from_monoid(MonoidPresentation::free(gens)),
                }],
                gluings: Vec::new(),
            }
        }
        SchemeKind::Torus(r) => {
            let gens: Vec<String> = if r == 1 {
                vec!["T".to_string()]
            } else {
                (1..=r).map(|i| format!("T{}", i)).collect()
            };
            let mut pres = MonoidPresentation::free(gens);
            for i in 0..r {
                pres.inverted.insert(i);
            }
            GluedScheme {
                name: format!("Gm{}", r),
                kind,
                charts: vec![Chart { name: "T".to_string(), blueprint: Blueprint::from_monoid(pres) }],
                gluings: Vec::new(),
            }
        }
        SchemeKind::Projective(n) => projective_scheme(n),
        SchemeKind::Custom => panic!("custom schemes are built from explicit charts"),
    }
}

/// Chart i of projective n-space has the generators Tj/Ti for j ≠ i; charts
/// glue along the inverses of the cross ratios.
fn projective_scheme(n: usize) -> GluedScheme {
    let mut charts = Vec::new();
    // chart_gens[i][k] = coordinate index of the k-th generator of chart i
    let mut chart_coords: Vec<Vec<usize>> = Vec::new();
    for i in 0..=n {
        let coords: Vec<usize> = (0..=n).filter(|&j| j != i).collect();
        let gens: Vec<String> = coords.iter().map(|&j| format!("T{}/T{}", j, i)).collect();
        chart_coords.push(coords);
        charts.push(Chart {
            name: format!("U{}", i),
            blueprint: Blueprint::from_monoid(MonoidPresentation::free(gens)),
        });
    }
    let mut gluings = Vec::new();
    for i in 0..=n {
        for j in (i + 1)..=n {
            // Localize chart i at Tj/Ti, chart j at Ti/Tj.
            let pos_j_in_i = chart_coords[i].iter().position(|&c| c == j).unwrap();
            let pos_i_in_j = chart_coords[j].iter().position(|&c| c == i).unwrap();
            let open_a = Monomial::gen(n, pos_j_in_i);
            let open_b = Monomial::gen(n, pos_i_in_j);
            // Generators of loc_a: the n chart gens followed by the inverse
            // U of Tj/Ti. In loc_b the image of Tk/Ti is (Tk/Tj)·(Ti/Tj)⁻¹.
            let total = n + 1;
            let img_of = |coord: usize| -> Monomial {
                // image (in loc_b) of loc_a generator #k with coordinate
                // semantics Tcoord/Ti
                let mut e = vec![0i64; total];
                if coord == j {
                    // Tj/Ti = (Ti/Tj)⁻¹ = U_b
                    e[n] = 1;
                } else {
                    let pos = chart_coords[j].iter().position(|&c| c == coord).unwrap();
                    e[pos] = 1;
                    e[n] = 1;
                }
                Monomial::Word(e)
            };
            let mut fwd_images: Vec<FormalSum> = Vec::new();
            for &coord in &chart_coords[i] {
                fwd_images.push(FormalSum::from_monomial(img_of(coord)));
            }
            // The added inverse generator U_a = (Tj/Ti)⁻¹ maps to Ti/Tj.
            fwd_images.push(FormalSum::from_monomial(Monomial::gen(total, pos_i_in_j)));

            let img_back = |coord: usize| -> Monomial {
                let mut e = vec![0i64; total];
                if coord == i {
                    e[n] = 1;
                } else {
                    let pos = chart_coords[i].iter().position(|&c| c == coord).unwrap();
                    e[pos] = 1;
                    e[n] = 1;
                }
                Monomial::Word(e)
            };
            let mut bwd_images: Vec<FormalSum> = Vec::new();
            for &coord in &chart_coords[j] {
                bwd_images.push(FormalSum::from_monomial(img_back(coord)));
            }
            bwd_images.push(FormalSum::from_monomial(Monomial::gen(total, pos_j_in_i)));

            gluings.push(Gluing {
                chart_a: i,
                chart_b: j,
                open_a,
                open_b,
                fwd: Morphism::new(fwd_images),
                bwd: Morphism::new(bwd_images),
            });
        }
    }
    GluedScheme { name: format!("P{}", n), kind: SchemeKind::Projective(n), charts, gluings }
}

/// Points of the glued scheme: chart points identified along the gluing
/// bijections on localized spectra. Projective points are labelled by their
/// homogeneous 0/1 support pattern.
pub fn scheme_points(x: &GluedScheme) -> Result<SpecPoset, SchemeError> {
    verify_gluings(x, &Budget::default())?;

    // Per-chart spectra.
    let mut chart_posets: Vec<SpecPoset> = Vec::new();
    for (ci, chart) in x.charts.iter().enumerate() {
        chart_posets.push(spec(&chart.blueprint, &format!("{}#{}", x.name, ci))?);
    }
    let offsets: Vec<usize> = chart_posets
        .iter()
        .scan(0usize, |acc, p| {
            let o = *acc;
            *acc += p.points.len();
            Some(o)
        })
        .collect();
    let total: usize = chart_posets.iter().map(|p| p.points.len()).sum();

    let mut parent: Vec<usize> = (0..total).collect();
    fn find(parent: &mut Vec<usize>, a: usize) -> usize {
        if parent[a] != a {
            let r = find(parent, parent[a]);
            parent[a] = r;
        }
        parent[a]
    }
    let union = |parent: &mut Vec<usize>, a: usize, b: usize| {
        let ra = find(parent, a);
        let rb = find(parent, b);
        if ra != rb {
            parent[ra.max(rb)] = ra.min(rb);
        }
    };

    for g in &x.gluings {
        let ba = &x.charts[g.chart_a].blueprint;
        let bb = &x.charts[g.chart_b].blueprint;
        let loc_a = localize_blueprint(ba, &g.open_a)?;
        let na = ba.ngens();
        let nb = bb.ngens();
        for (pa_idx, pa) in chart_posets[g.chart_a].points.iter().enumerate() {
            // Only points on the open part glue.
            let gens_a: Vec<Monomial> =
                pa.prime.generators.iter().map(|&i| Monomial::gen(na, i)).collect();
            let view_a = ba.engine().ideal(&gens_a);
            if view_a.contains(&g.open_a) {
                continue;
            }
            // Transport the prime: a generator h of chart b lies in the image
            // ideal iff its forward... the preimage of the prime under bwd.
            let gens_loc_a: Vec<Monomial> = pa
                .prime
                .generators
                .iter()
                .map(|&i| widen_monomial(&Monomial::gen(na, i), loc_a.ngens()))
                .collect();
            let view_loc_a = loc_a.engine().ideal(&gens_loc_a);
            let mut q: BTreeSet<usize> = BTreeSet::new();
            for k in 0..nb {
                let img = &g.bwd.images[k];
                let terms: Vec<_> = img.terms().collect();
                if terms.len() != 1 {
                    return Err(SchemeError::BadGluing(
                        g.chart_a,
                        g.chart_b,
                        "gluing images must be monomials".to_string(),
                    ));
                }
                if view_loc_a.contains(terms[0].0) {
                    q.insert(k);
                }
            }
            // Find the chart-b prime generating the same ideal.
            let gens_q: Vec<Monomial> = q.iter().map(|&k| Monomial::gen(nb, k)).collect();
            let view_q = bb.engine().ideal(&gens_q);
            let mut matched = None;
            for (pb_idx, pb) in chart_posets[g.chart_b].points.iter().enumerate() {
                let gens_b: Vec<Monomial> =
                    pb.prime.generators.iter().map(|&i| Monomial::gen(nb, i)).collect();
                let view_b = bb.engine().ideal(&gens_b);
                let sub = pb.prime.generators.iter().all(|&i| view_q.contains(&Monomial::gen(nb, i)));
                let sup = q.iter().all(|&k| view_b.contains(&Monomial::gen(nb, k)));
                if sub && sup && !view_b.contains(&g.open_b) {
                    matched = Some(pb_idx);
                    break;
                }
            }
            let Some(pb_idx) = matched else {
                return Err(SchemeError::BadGluing(
                    g.chart_a,
                    g.chart_b,
                    format!("no matching prime for {}", pa.id),
                ));
            };
            union(&mut parent, offsets[g.chart_a] + pa_idx, offsets[g.chart_b] + pb_idx);
        }
    }

    // Collect classes.
    let mut class_of: BTreeMap<usize, Vec<(usize, usize)>> = BTreeMap::new();
    for ci in 0..x.charts.len() {
        for pi in 0..chart_posets[ci].points.len() {
            let root = find(&mut parent, offsets[ci] + pi);
            class_of.entry(root).or_default().push((ci, pi));
        }
    }

    // Ids and representative data.
    let mut points: Vec<SpecPoint> = Vec::new();
    let mut class_index: BTreeMap<usize, usize> = BTreeMap::new();
    for (k, (root, members)) in class_of.iter().enumerate() {
        let &(ci, pi) = &members[0];
        let rep = &chart_posets[ci].points[pi];
        let (id, names) = match x.kind {
            SchemeKind::Projective(n) => {
                let support = projective_support(x, ci, pi, &chart_posets, n)?;
                let id: Vec<String> = (0..=n)
                    .map(|j| if support.contains(&j) { "1".into() } else { "0".into() })
                    .collect();
                let zeros: Vec<String> = (0..=n)
                    .filter(|j| !support.contains(j))
                    .map(|j| format!("T{}", j))
                    .collect();
                (format!("[{}]", id.join(":")), zeros)
            }
            _ => (rep.id.clone(), rep.generator_names.clone()),
        };
        points.push(SpecPoint {
            id,
            prime: rep.prime.clone(),
            generator_names: names,
            localization: rep.localization.clone(),
        });
        class_index.insert(*root, k);
    }

    // Order: generated by chart-level containment between merged classes.
    let mut order_set: BTreeSet<(usize, usize)> = BTreeSet::new();
    for ci in 0..x.charts.len() {
        let poset = &chart_posets[ci];
        for &(a, b) in &poset.order {
            let ra = class_index[&find(&mut parent, offsets[ci] + a)];
            let rb = class_index[&find(&mut parent, offsets[ci] + b)];
            if ra != rb {
                order_set.insert((ra, rb));
            }
        }
    }
    // Transitive closure.
    let nclasses = points.len();
    let mut changed = true;
    while changed {
        changed = false;
        let pairs: Vec<(usize, usize)> = order_set.iter().copied().collect();
        for &(a, b) in &pairs {
            for &(c, d) in &pairs {
                if b == c && a != d && order_set.insert((a, d)) {
                    changed = true;
                }
            }
        }
    }

    // Re-sort points by id and remap.
    let mut idx: Vec<usize> = (0..nclasses).collect();
    idx.sort_by(|&a, &b| points[a].id.cmp(&points[b].id));
    let remap: BTreeMap<usize, usize> =
        idx.iter().enumerate().map(|(new, &old)| (old, new)).collect();
    let points: Vec<SpecPoint> = idx.iter().map(|&i| points[i].clone()).collect();
    let order: Vec<(usize, usize)> =
        order_set.iter().map(|&(a, b)| (remap[&a], remap[&b])).collect();
    let hasse = hasse_reduce(nclasses, &order);
    Ok(SpecPoset { object: x.name.clone(), points, hasse, order })
}

fn widen_monomial(m: &Monomial, total: usize) -> Monomial {
    match m {
        Monomial::Zero => Monomial::Zero,
        Monomial::Word(e) => {
            let mut w = e.clone();
            w.resize(total, 0);
            Monomial::Word(w)
        }
    }
}

/// Homogeneous support of a chart point: the chart's own coordinate plus
/// every coordinate whose ratio generator stays outside the prime.
fn projective_support(
    x: &GluedScheme,
    ci: usize,
    pi: usize,
    chart_posets: &[SpecPoset],
    n: usize,
) -> Result<BTreeSet<usize>, SchemeError> {
    let chart = &x.charts[ci].blueprint;
    let pt = &chart_posets[ci].points[pi];
    let na = chart.ngens();
    let gens: Vec<Monomial> = pt.prime.generators.iter().map(|&i| Monomial::gen(na, i)).collect();
    let view = chart.engine().ideal(&gens);
    let coords: Vec<usize> = (0..=n).filter(|&j| j != ci).collect();
    let mut support: BTreeSet<usize> = BTreeSet::new();
    support.insert(ci);
    for (k, &j) in coords.iter().enumerate() {
        if !view.contains(&Monomial::gen(na, k)) {
            support.insert(j);
        }
    }
    Ok(support)
}

/// Chartwise base extension to ℤ, with the localized gluing algebras.
pub struct SchemeAlgebra {
    pub charts: Vec<PresentedAlgebra>,
    pub gluing_algebras: Vec<(usize, usize, PresentedAlgebra)>,
}

pub fn base_extend_scheme(x: &GluedScheme) -> Result<SchemeAlgebra, SchemeError> {
    let charts = x.charts.iter().map(|c| base_extend(&c.blueprint, BaseRing::Z)).collect();
    let mut gluing_algebras = Vec::new();
    for g in &x.gluings {
        let loc = localize_blueprint(&x.charts[g.chart_a].blueprint, &g.open_a)?;
        gluing_algebras.push((g.chart_a, g.chart_b, base_extend(&loc, BaseRing::Z)));
    }
    Ok(SchemeAlgebra { charts, gluing_algebras })
}

// ---------------------------------------------------------------------------
// Rendering
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RenderFormat {
    Dot,
    Json,
}

/// Deterministic rendering: nodes sorted by id, edges bottom-to-top.
pub fn render(p: &SpecPoset, format: RenderFormat) -> String {
    match format {
        RenderFormat::Dot => {
            let mut out = String::new();
            out.push_str("digraph {\n");
            out.push_str("  rankdir=BT;\n");
            for pt in &p.points {
                out.push_str(&format!("  \"{}\";\n", pt.id));
            }
            let mut edges: Vec<(String, String)> = p
                .hasse
                .iter()
                .map(|&(a, b)| (p.points[a].id.clone(), p.points[b].id.clone()))
                .collect();
            edges.sort();
            for (a, b) in edges {
                out.push_str(&format!("  \"{}\" -> \"{}\";\n", a, b));
            }
            out.push_str("}\n");
            out
        }
        RenderFormat::Json => {
            let mut out = String::new();
            out.push_str("{\n");
            out.push_str(&format!("  \"object\": \"{}\",\n", p.object));
            out.push_str("  \"points\": [\n");
            for (i, pt) in p.points.iter().enumerate() {
                let gens: Vec<String> =
                    pt.generator_names.iter().map(|g| format!("\"{}\"", g)).collect();
                out.push_str(&format!(
                    "    {{ \"id\": \"{}\", \"generators\": [{}] }}{}\n",
                    pt.id,
                    gens.join(", "),
                    if i + 1 < p.points.len() { "," } else { "" }
                ));
            }
            out.push_str("  ],\n");
            let mut edges: Vec<(String, String)> = p
                .hasse
                .iter()
                .map(|&(a, b)| (p.points[a].id.clone(), p.points[b].id.clone()))
                .collect();
            edges.sort();
            out.push_str("  \"hasse\": [\n");
            for (i, (a, b)) in edges.iter().enumerate() {
                out.push_str(&format!(
                    "    [\"{}\", \"{}\"]{}\n",
                    a,
                    b,
                    if i + 1 < edges.len() { "," } else { "" }
                ));
            }
            out.push_str("  ]\n}\n");
            out
        }
    }
}
