//! Subcommand implementations over the kernel.
//!
//! Exit codes: 0 success, 1 mathematical rejection (an unbalanced curve, a
//! refuted morphism, a failed self-check), 2 undecided verdicts or
//! exhausted budgets, 3 input errors.

use std::fmt::Write as _;

use f1_core::blueprint::{
    base_extend, check_morphism, BaseRing, Blueprint, Budget, Cancellativity, ThreeValued,
};
use f1_core::qincidence::{
    self, eval_at, euler_product_coeffs, gauss, grassmannian, incidence_geometry, limit_geometry,
    limit_q1, place_count, zeta_function_field,
};
use f1_core::scheme::{render, scheme_points, spec, standard_scheme, RenderFormat, SchemeKind};
use f1_core::titsweyl::{
    matrix_comultiplication, matrix_counit, rank_space, ranked_points, torus_comultiplication,
    torus_counit, weyl_group,
};
use f1_core::tropical::check_balancing;

use crate::dsl::{parse, Definition, DslDocument};

pub const EXIT_OK: u8 = 0;
pub const EXIT_REJECTED: u8 = 1;
pub const EXIT_UNDECIDED: u8 = 2;
pub const EXIT_INPUT: u8 = 3;

pub struct Outcome {
    pub code: u8,
    pub output: String,
}

impl Outcome {
    fn ok(output: String) -> Self {
        Outcome { code: EXIT_OK, output }
    }

    fn with(code: u8, output: String) -> Self {
        Outcome { code, output }
    }

    fn input_error(msg: impl Into<String>) -> Self {
        Outcome { code: EXIT_INPUT, output: format!("error: {}\n", msg.into()) }
    }
}

fn load(text: &str) -> Result<DslDocument, Outcome> {
    parse(text).map_err(|e| Outcome::input_error(e.to_string()))
}

fn pick<'a>(
    doc: &'a DslDocument,
    name: Option<&str>,
) -> Result<(&'a String, &'a Definition), Outcome> {
    match name {
        Some(n) => doc
            .definitions
            .iter()
            .find(|(dn, _)| dn == n)
            .map(|(dn, d)| (dn, d))
            .ok_or_else(|| Outcome::input_error(format!("no definition named {}", n))),
        None => doc
            .definitions
            .first()
            .map(|(dn, d)| (dn, d))
            .ok_or_else(|| Outcome::input_error("empty document")),
    }
}

fn pick_blueprint(
    doc: &DslDocument,
    name: Option<&str>,
) -> Result<(String, Blueprint), Outcome> {
    let (dn, def) = pick(doc, name)?;
    def.as_blueprint()
        .map(|b| (dn.clone(), b))
        .ok_or_else(|| Outcome::input_error(format!("{} is not a monoid or blueprint", dn)))
}

// ---------------------------------------------------------------------------
// spec / render
// ---------------------------------------------------------------------------

/// Built-in glued schemes addressable by name: `A<n>` affine space,
/// `P<n>` projective space, `Gm<r>` the rank-r torus.
pub fn builtin_scheme(name: &str) -> Option<f1_core::scheme::GluedScheme> {
    let parse_suffix = |prefix: &str| -> Option<usize> {
        name.strip_prefix(prefix).and_then(|rest| rest.parse().ok())
    };
    if let Some(r) = parse_suffix("Gm") {
        return Some(standard_scheme(SchemeKind::Torus(r)));
    }
    if let Some(n) = parse_suffix("P") {
        if n <= 6 {
            return Some(standard_scheme(SchemeKind::Projective(n)));
        }
        return None;
    }
    if let Some(n) = parse_suffix("A") {
        return Some(standard_scheme(SchemeKind::Affine(n)));
    }
    None
}

pub fn cmd_spec_builtin(name: &str, format: &str) -> Outcome {
    let Some(scheme) = builtin_scheme(name) else {
        return Outcome::input_error(format!("unknown builtin object {}", name));
    };
    let poset = match scheme_points(&scheme) {
        Ok(p) => p,
        Err(e) => return Outcome::with(EXIT_UNDECIDED, format!("error: {}
", e)),
    };
    match format {
        "json" => Outcome::ok(render(&poset, RenderFormat::Json)),
        "dot" => Outcome::ok(render(&poset, RenderFormat::Dot)),
        "text" => {
            let mut out = format!("{}: {} points\n", name, poset.points.len());
            for pt in &poset.points {
                let _ = writeln!(out, "point {}", pt.id);
            }
            for &(a, b) in &poset.hasse {
                let _ = writeln!(out, "cover {} < {}", poset.points[a].id, poset.points[b].id);
            }
            Outcome::ok(out)
        }
        other => Outcome::input_error(format!("unknown format {}", other)),
    }
}

pub fn cmd_spec(text: &str, name: Option<&str>, format: &str) -> Outcome {
    let doc = match load(text) {
        Ok(d) => d,
        Err(o) => return o,
    };
    let (dn, b) = match pick_blueprint(&doc, name) {
        Ok(x) => x,
        Err(o) => return o,
    };
    let poset = match spec(&b, &dn) {
        Ok(p) => p,
        Err(e) => return Outcome::with(EXIT_UNDECIDED, format!("error: {}\n", e)),
    };
    match format {
        "json" => Outcome::ok(render(&poset, RenderFormat::Json)),
        "dot" => Outcome::ok(render(&poset, RenderFormat::Dot)),
        "text" => {
            let mut out = format!("{}: {} points\n", dn, poset.points.len());
            for pt in &poset.points {
                let _ = writeln!(out, "point {} [{}]", pt.id, pt.generator_names.join(", "));
            }
            for &(a, b) in &poset.hasse {
                let _ = writeln!(out, "cover {} < {}", poset.points[a].id, poset.points[b].id);
            }
            Outcome::ok(out)
        }
        other => Outcome::input_error(format!("unknown format {}", other)),
    }
}

pub fn cmd_render(text: &str, name: Option<&str>, format: &str) -> Outcome {
    cmd_spec(text, name, format)
}

// ---------------------------------------------------------------------------
// rank
// ---------------------------------------------------------------------------

pub fn cmd_rank(text: &str, name: Option<&str>) -> Outcome {
    let doc = match load(text) {
        Ok(d) => d,
        Err(o) => return o,
    };
    let (dn, b) = match pick_blueprint(&doc, name) {
        Ok(x) => x,
        Err(o) => return o,
    };
    let ranked = match ranked_points(&b) {
        Ok(r) => r,
        Err(e) => return Outcome::with(EXIT_UNDECIDED, format!("error: {}\n", e)),
    };
    let comps = match rank_space(&b) {
        Ok(c) => c,
        Err(e) => return Outcome::with(EXIT_UNDECIDED, format!("error: {}\n", e)),
    };
    let min_rank = ranked.iter().map(|r| r.rank).min().unwrap_or(0);
    let mut out = String::new();
    let _ = writeln!(out, "{{");
    let _ = writeln!(out, "  \"object\": \"{}\",", dn);
    let _ = writeln!(out, "  \"rank\": {},", min_rank);
    let _ = writeln!(out, "  \"points\": [");
    let mut rows: Vec<(String, i64)> = ranked
        .iter()
        .map(|r| (r.point.id(b.monoid()), r.rank))
        .collect();
    rows.sort();
    for (i, (id, rank)) in rows.iter().enumerate() {
        let _ = writeln!(
            out,
            "    {{ \"id\": \"{}\", \"rank\": {} }}{}",
            id,
            rank,
            if i + 1 < rows.len() { "," } else { "" }
        );
    }
    let _ = writeln!(out, "  ],");
    let _ = writeln!(out, "  \"rank_space\": [");
    for (i, c) in comps.iter().enumerate() {
        let _ = writeln!(
            out,
            "    {{ \"id\": \"{}\", \"type\": \"{}\" }}{}",
            c.id,
            c.torus_type.label(),
            if i + 1 < comps.len() { "," } else { "" }
        );
    }
    let _ = writeln!(out, "  ]");
    let _ = writeln!(out, "}}");
    Outcome::ok(out)
}

// ---------------------------------------------------------------------------
// weyl
// ---------------------------------------------------------------------------

/// Recognized group presentations for the built-in comultiplication: a k×k
/// matrix layout (generators row-major, optionally followed by an inverted
/// determinant generator) or a torus with every generator inverted.
fn recognize_group(b: &Blueprint) -> Option<(f1_core::blueprint::Morphism, f1_core::blueprint::Morphism)> {
    let n = b.ngens();
    if n > 0 && b.monoid().inverted.len() == n {
        return Some((torus_comultiplication(b), torus_counit(b)));
    }
    let square = |m: usize| (1..=m).find(|k| k * k == m);
    if b.monoid().inverted.is_empty() {
        if let Some(k) = square(n) {
            return Some((matrix_comultiplication(b, k, None), matrix_counit(b, k, None)));
        }
    }
    if b.monoid().inverted.len() == 1 {
        let det = *b.monoid().inverted.iter().next().unwrap();
        if det == n - 1 {
            if let Some(k) = square(n - 1) {
                return Some((
                    matrix_comultiplication(b, k, Some(det)),
                    matrix_counit(b, k, Some(det)),
                ));
            }
        }
    }
    None
}

pub fn cmd_weyl(text: &str, name: Option<&str>, budget: &Budget) -> Outcome {
    let doc = match load(text) {
        Ok(d) => d,
        Err(o) => return o,
    };
    let (dn, b) = match pick_blueprint(&doc, name) {
        Ok(x) => x,
        Err(o) => return o,
    };
    let Some((delta, eps)) = recognize_group(&b) else {
        return Outcome::input_error(format!(
            "{} does not match a recognized group pattern (k x k matrix entries, optionally an inverted determinant generator, or a torus)",
            dn
        ));
    };
    // The comultiplication must be confirmed before any product is taken.
    let tensor_square = f1_core::blueprint::tensor(&b, &b);
    match check_morphism(&b, &tensor_square, &delta, false, budget) {
        Ok(ThreeValued::Yes) => {}
        Ok(ThreeValued::No) => {
            return Outcome::with(
                EXIT_REJECTED,
                "error: comultiplication is not a morphism\n".to_string(),
            )
        }
        Ok(ThreeValued::Unknown(d)) => {
            return Outcome::with(
                EXIT_UNDECIDED,
                format!("error: comultiplication undecided within budget: {:?}\n", d.notes),
            )
        }
        Err(e) => return Outcome::input_error(e.to_string()),
    }
    match check_morphism(&b, &Blueprint::f1(), &eps, false, budget) {
        Ok(ThreeValued::Yes) => {}
        Ok(ThreeValued::No) => {
            return Outcome::with(EXIT_REJECTED, "error: counit is not a morphism\n".to_string())
        }
        Ok(ThreeValued::Unknown(d)) => {
            return Outcome::with(
                EXIT_UNDECIDED,
                format!("error: counit undecided within budget: {:?}\n", d.notes),
            )
        }
        Err(e) => return Outcome::input_error(e.to_string()),
    }
    let w = match weyl_group(&b, &delta, &eps, budget) {
        Ok(w) => w,
        Err(e) => return Outcome::with(EXIT_REJECTED, format!("error: {}\n", e)),
    };
    let mut out = String::new();
    let _ = writeln!(out, "{{");
    let _ = writeln!(out, "  \"object\": \"{}\",", dn);
    let _ = writeln!(out, "  \"components\": [");
    for (i, c) in w.components.iter().enumerate() {
        let _ = writeln!(
            out,
            "    {{ \"id\": \"{}\", \"type\": \"{}\" }}{}",
            c.id,
            c.torus_type.label(),
            if i + 1 < w.components.len() { "," } else { "" }
        );
    }
    let _ = writeln!(out, "  ],");
    let _ = writeln!(out, "  \"identity\": \"{}\",", w.component_ids[w.identity]);
    let _ = writeln!(out, "  \"table\": [");
    for (i, row) in w.table.iter().enumerate() {
        let cells: Vec<String> = row
            .iter()
            .map(|&j| format!("\"{}\"", w.component_ids[j]))
            .collect();
        let _ = writeln!(
            out,
            "    [{}]{}",
            cells.join(", "),
            if i + 1 < w.table.len() { "," } else { "" }
        );
    }
    let _ = writeln!(out, "  ],");
    let _ = writeln!(out, "  \"group\": \"{}\"", w.label);
    let _ = writeln!(out, "}}");
    Outcome::ok(out)
}

// ---------------------------------------------------------------------------
// basechange
// ---------------------------------------------------------------------------

pub fn cmd_basechange(text: &str, name: Option<&str>, target: &str) -> Outcome {
    let doc = match load(text) {
        Ok(d) => d,
        Err(o) => return o,
    };
    let (_, b) = match pick_blueprint(&doc, name) {
        Ok(x) => x,
        Err(o) => return o,
    };
    let ring = match target.to_ascii_lowercase().as_str() {
        "n" => BaseRing::N,
        "z" => BaseRing::Z,
        "q" => BaseRing::Q,
        other => return Outcome::input_error(format!("unknown target ring {}", other)),
    };
    let algebra = base_extend(&b, ring);
    Outcome::ok(format!("{}\n", algebra.render()))
}

// ---------------------------------------------------------------------------
// qcount
// ---------------------------------------------------------------------------

pub struct QCountArgs {
    pub gauss: Option<(u32, u32)>,
    pub gl: Option<u32>,
    pub limit_gl: Option<u32>,
    pub grassmannian: Option<(usize, usize, u64)>,
    pub geometry: Option<(usize, u64)>,
    pub limit_geometry: Option<usize>,
    pub q: Option<u64>,
    pub format: String,
}

pub fn cmd_qcount(args: &QCountArgs) -> Outcome {
    if let Some((n, k)) = args.gauss {
        let g = match gauss(n, k) {
            Ok(g) => g,
            Err(e) => return Outcome::input_error(e.to_string()),
        };
        return match (args.q, args.format.as_str()) {
            (Some(q), "tsv") => Outcome::ok(format!("{}\t{}\t{}\t{}\n", n, k, g, eval_at(&g, q))),
            (Some(q), _) => Outcome::ok(format!("{}\n", eval_at(&g, q))),
            (None, "tsv") => Outcome::ok(format!("{}\t{}\t{}\n", n, k, g)),
            (None, _) => Outcome::ok(format!("{}\n", g)),
        };
    }
    if let Some(n) = args.gl {
        if n == 0 {
            return Outcome::input_error("--gl needs n >= 1");
        }
        let g = qincidence::count_gl(n);
        return match (args.q, args.format.as_str()) {
            (Some(q), "tsv") => Outcome::ok(format!("{}\t{}\t{}\n", n, g, eval_at(&g, q))),
            (Some(q), _) => Outcome::ok(format!("{}\n", eval_at(&g, q))),
            (None, "tsv") => Outcome::ok(format!("{}\t{}\n", n, g)),
            (None, _) => Outcome::ok(format!("{}\n", g)),
        };
    }
    if let Some(n) = args.limit_gl {
        if n == 0 {
            return Outcome::input_error("--limit-gl needs n >= 1");
        }
        return match limit_q1(&qincidence::count_gl(n), n) {
            Ok(v) => Outcome::ok(format!("{}\n", v)),
            Err(e) => Outcome::input_error(e.to_string()),
        };
    }
    if let Some((n, k, p)) = args.grassmannian {
        let spaces = match grassmannian(n, k, p) {
            Ok(s) => s,
            Err(e) => return Outcome::input_error(e.to_string()),
        };
        if args.format == "tsv" {
            let mut out = String::new();
            for s in &spaces {
                let _ = writeln!(out, "{}", s.id());
            }
            return Outcome::ok(out);
        }
        return Outcome::ok(format!("{}\n", spaces.len()));
    }
    if let Some((n, p)) = args.geometry {
        let geom = match incidence_geometry(n, p) {
            Ok(g) => g,
            Err(e) => return Outcome::input_error(e.to_string()),
        };
        return Outcome::ok(render_geometry(&geom, &args.format));
    }
    if let Some(n) = args.limit_geometry {
        if !(2..=7).contains(&n) {
            return Outcome::input_error("--limit-geometry needs 2 <= n <= 7");
        }
        let geom = limit_geometry(n);
        return Outcome::ok(render_geometry(&geom, &args.format));
    }
    Outcome::input_error("qcount needs one of --gauss, --gl, --limit-gl, --grassmannian, --geometry, --limit-geometry")
}

fn render_geometry(geom: &f1_core::qincidence::IncidenceGeometry, format: &str) -> String {
    if format == "dot" {
        return geom.render_dot();
    }
    let mut out = String::new();
    for (layer, elems) in &geom.layers {
        for e in elems {
            let _ = writeln!(out, "element\t{}\t{}", layer, e);
        }
    }
    for (a, b) in &geom.incidences {
        let _ = writeln!(out, "incidence\t{}\t{}", a, b);
    }
    out
}

// ---------------------------------------------------------------------------
// zeta
// ---------------------------------------------------------------------------

pub fn cmd_zeta(q: u64, series: Option<u32>, places: Option<u32>) -> Outcome {
    let z = match zeta_function_field(q) {
        Ok(z) => z,
        Err(e) => return Outcome::input_error(e.to_string()),
    };
    let mut out = String::new();
    let _ = writeln!(out, "Z(T) = {}", z.render("T"));
    if let Some(n) = series {
        let coeffs = z.series_coefficients(n).expect("unit constant term");
        let euler = euler_product_coeffs(q, n).expect("q >= 2");
        for (i, c) in coeffs.iter().enumerate() {
            let _ = writeln!(out, "T^{}\t{}\t{}", i, c, euler[i]);
        }
    }
    if let Some(d) = places {
        for deg in 1..=d {
            let _ = writeln!(out, "places\t{}\t{}", deg, place_count(q, deg).unwrap());
        }
    }
    Outcome::ok(out)
}

// ---------------------------------------------------------------------------
// balance
// ---------------------------------------------------------------------------

pub fn cmd_balance(text: &str, name: Option<&str>) -> Outcome {
    let doc = match load(text) {
        Ok(d) => d,
        Err(o) => return o,
    };
    let (dn, def) = match pick(&doc, name) {
        Ok(x) => x,
        Err(o) => return o,
    };
    let Definition::Curve(curve) = def else {
        return Outcome::input_error(format!("{} is not a curve", dn));
    };
    match check_balancing(curve) {
        Ok(report) if report.balanced => Outcome::ok("balanced\n".to_string()),
        Ok(report) => {
            let mut out = String::from("unbalanced\n");
            for (v, defect) in &report.violations {
                let coords: Vec<String> = defect.iter().map(|x| x.to_string()).collect();
                let _ = writeln!(out, "vertex {}: defect ({})", v, coords.join(", "));
            }
            Outcome::with(EXIT_REJECTED, out)
        }
        Err(e) => Outcome::input_error(e.to_string()),
    }
}

// ---------------------------------------------------------------------------
// selftest
// ---------------------------------------------------------------------------

pub fn cmd_selftest() -> Outcome {
    let mut out = String::new();
    let mut all_ok = true;
    let mut check = |name: &str, ok: bool, out: &mut String| {
        let _ = writeln!(out, "{} {}", if ok { "ok  " } else { "FAIL" }, name);
        all_ok &= ok;
    };

    {
        let b = f1_core::blueprint::sl2();
        let poset = spec(&b, "SL2");
        check(
            "sl2 spectrum has 7 points and 8 covers",
            poset.as_ref().map(|p| p.points.len() == 7 && p.hasse.len() == 8).unwrap_or(false),
            &mut out,
        );
        let ranked = ranked_points(&b);
        check(
            "sl2 ranks are 3/2/1 along the poset",
            ranked
                .as_ref()
                .map(|rs| {
                    rs.iter().all(|r| match r.point.generators.len() {
                        0 => r.rank == 3,
                        1 => r.rank == 2,
                        _ => r.rank == 1,
                    })
                })
                .unwrap_or(false),
            &mut out,
        );
        let delta = matrix_comultiplication(&b, 2, None);
        let eps = matrix_counit(&b, 2, None);
        let w = weyl_group(&b, &delta, &eps, &Budget::default());
        check(
            "sl2 component group is Z/2 with identity p_T2_T3",
            w.as_ref()
                .map(|w| w.label == "Z/2" && w.component_ids[w.identity] == "p_T2_T3")
                .unwrap_or(false),
            &mut out,
        );
        check(
            "sl2 is cancellative up to degree 4",
            matches!(
                f1_core::blueprint::is_cancellative(&b, 4),
                Cancellativity::YesUpTo(4)
            ),
            &mut out,
        );
    }
    {
        let p2 = scheme_points(&standard_scheme(SchemeKind::Projective(2)));
        check(
            "projective plane has 7 points",
            p2.as_ref().map(|p| p.points.len() == 7).unwrap_or(false),
            &mut out,
        );
    }
    {
        let g = gauss(3, 1).map(|g| eval_at(&g, 2));
        check("gauss(3,1) at q=2 is 7", g.map(|v| v == 7.into()).unwrap_or(false), &mut out);
        let gl3 = eval_at(&qincidence::count_gl(3), 2);
        check("#GL(3, F_2) = 168", gl3 == 168.into(), &mut out);
        let lim = limit_q1(&qincidence::count_gl(3), 3);
        check("limit of #GL(3)/(q-1)^3 is 6", lim.map(|v| v == 6.into()).unwrap_or(false), &mut out);
    }
    {
        let balanced = check_balancing(&f1_core::tropical::three_vertex_curve())
            .map(|r| r.balanced)
            .unwrap_or(false);
        check("three-vertex curve balances", balanced, &mut out);
    }
    {
        let ok = f1_core::tropical::group_completion(f1_core::tropical::Carrier::B)
            == f1_core::tropical::Completion::Trivial;
        check("boolean completion is trivial", ok, &mut out);
    }

    if all_ok {
        Outcome::ok(out)
    } else {
        Outcome::with(EXIT_REJECTED, out)
    }
}
