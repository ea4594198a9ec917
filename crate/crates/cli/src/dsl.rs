//! Hand-written recursive-descent parser for the object-definition DSL.
//!
//! ```text
//! doc      := def+
//! def      := ("monoid" | "blueprint" | "curve") NAME "{" body "}"
//! body     := "gens:" NAME ("," NAME)* ";" ["inv:" NAME ("," NAME)* ";"]
//!             ("rel:" sum "=" sum ";")*
//! sum      := term ("+" term)* | "0"
//! term     := [INT "*"] monomial
//! monomial := factor ("*" factor)* | "1"
//! factor   := NAME ["^" INT]
//! ```
//!
//! Curve bodies hold `vertex v (1/2, 9/2);`, `edge v w weight 1;` and
//! `ray v dir (0,1) weight 1;` statements. Diagnostics carry 1-based
//! line:column positions.

use std::fmt;

use f1_core::blueprint::{Blueprint, FormalSum};
use f1_core::monoid::{MonoidPresentation, Monomial};
use f1_core::tropical::{Edge, TropicalCurve};
use f1_core::{Int, Rat};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

#[derive(Debug)]
pub struct ParseError {
    pub message: String,
    pub pos: Pos,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} at {}", self.message, self.pos)
    }
}

impl std::error::Error for ParseError {}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Ident(String),
    Int(i64),
    LBrace,
    RBrace,
    LParen,
    RParen,
    Comma,
    Semi,
    Colon,
    Star,
    Caret,
    Plus,
    Eq,
    Slash,
    Minus,
}

struct Lexer {
    toks: Vec<(Tok, Pos)>,
    idx: usize,
    end: Pos,
}

fn lex(text: &str) -> Result<Lexer, ParseError> {
    let mut toks = Vec::new();
    let mut line = 1usize;
    let mut col = 1usize;
    let mut chars = text.chars().peekable();
    while let Some(&c) = chars.peek() {
        let pos = Pos { line, col };
        match c {
            '\n' => {
                chars.next();
                line += 1;
                col = 1;
            }
            c if c.is_whitespace() => {
                chars.next();
                col += 1;
            }
            '#' => {
                // comment to end of line
                while let Some(&c) = chars.peek() {
                    if c == '\n' {
                        break;
                    }
                    chars.next();
                    col += 1;
                }
            }
            '{' | '}' | '(' | ')' | ',' | ';' | ':' | '*' | '^' | '+' | '=' | '/' | '-' => {
                chars.next();
                col += 1;
                let t = match c {
                    '{' => Tok::LBrace,
                    '}' => Tok::RBrace,
                    '(' => Tok::LParen,
                    ')' => Tok::RParen,
                    ',' => Tok::Comma,
                    ';' => Tok::Semi,
                    ':' => Tok::Colon,
                    '*' => Tok::Star,
                    '^' => Tok::Caret,
                    '+' => Tok::Plus,
                    '=' => Tok::Eq,
                    '/' => Tok::Slash,
                    _ => Tok::Minus,
                };
                toks.push((t, pos));
            }
            c if c.is_ascii_digit() => {
                let mut n: i64 = 0;
                while let Some(&d) = chars.peek() {
                    if let Some(v) = d.to_digit(10) {
                        n = n * 10 + v as i64;
                        chars.next();
                        col += 1;
                    } else {
                        break;
                    }
                }
                toks.push((Tok::Int(n), pos));
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let mut s = String::new();
                while let Some(&d) = chars.peek() {
                    if d.is_ascii_alphanumeric() || d == '_' {
                        s.push(d);
                        chars.next();
                        col += 1;
                    } else {
                        break;
                    }
                }
                toks.push((Tok::Ident(s), pos));
            }
            other => {
                return Err(ParseError {
                    message: format!("unexpected character '{}'", other),
                    pos,
                })
            }
        }
    }
    Ok(Lexer { toks, idx: 0, end: Pos { line, col } })
}

impl Lexer {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.idx).map(|(t, _)| t)
    }

    fn peek2(&self) -> Option<&Tok> {
        self.toks.get(self.idx + 1).map(|(t, _)| t)
    }

    fn pos(&self) -> Pos {
        self.toks
            .get(self.idx)
            .map(|(_, p)| p.clone())
            .unwrap_or_else(|| self.end.clone())
    }

    fn next(&mut self) -> Option<(Tok, Pos)> {
        let t = self.toks.get(self.idx).cloned();
        if t.is_some() {
            self.idx += 1;
        }
        t
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<Pos, ParseError> {
        let pos = self.pos();
        match self.next() {
            Some((t, p)) if t == tok => Ok(p),
            Some((t, p)) => Err(ParseError {
                message: format!("expected {}, found {:?}", what, t),
                pos: p,
            }),
            None => Err(ParseError { message: format!("expected {}", what), pos }),
        }
    }

    fn ident(&mut self, what: &str) -> Result<(String, Pos), ParseError> {
        let pos = self.pos();
        match self.next() {
            Some((Tok::Ident(s), p)) => Ok((s, p)),
            Some((t, p)) => Err(ParseError {
                message: format!("expected {}, found {:?}", what, t),
                pos: p,
            }),
            None => Err(ParseError { message: format!("expected {}", what), pos }),
        }
    }

    fn int(&mut self, what: &str) -> Result<(i64, Pos), ParseError> {
        let pos = self.pos();
        let negative = matches!(self.peek(), Some(Tok::Minus));
        if negative {
            self.next();
        }
        match self.next() {
            Some((Tok::Int(n), p)) => Ok((if negative { -n } else { n }, p)),
            Some((t, p)) => Err(ParseError {
                message: format!("expected {}, found {:?}", what, t),
                pos: p,
            }),
            None => Err(ParseError { message: format!("expected {}", what), pos }),
        }
    }
}

/// A parsed definition, already validated and built into kernel objects.
#[derive(Debug)]
pub enum Definition {
    Monoid(MonoidPresentation),
    Blueprint(Blueprint),
    Curve(TropicalCurve),
}

impl Definition {
    /// The underlying blueprint view, for commands that accept both monoid
    /// and blueprint definitions.
    pub fn as_blueprint(&self) -> Option<Blueprint> {
        match self {
            Definition::Monoid(m) => Some(Blueprint::from_monoid(m.clone())),
            Definition::Blueprint(b) => Some(b.clone()),
            Definition::Curve(_) => None,
        }
    }
}

#[derive(Debug)]
pub struct DslDocument {
    pub definitions: Vec<(String, Definition)>,
}

impl DslDocument {
    pub fn find(&self, name: &str) -> Option<&Definition> {
        self.definitions
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, d)| d)
    }
}

/// One parsed factor: generator name, exponent and its position.
type RawFactor = (String, i64, Pos);
/// One parsed term: coefficient and its factors.
type RawTerm = (u32, Vec<RawFactor>);

/// Raw relation data kept in parse order.
struct RawSum {
    /// empty = the literal 0
    terms: Vec<RawTerm>,
}

pub fn parse(text: &str) -> Result<DslDocument, ParseError> {
    let mut lx = lex(text)?;
    let mut definitions: Vec<(String, Definition)> = Vec::new();
    while lx.peek().is_some() {
        let (kw, kw_pos) = lx.ident("definition keyword")?;
        let (name, name_pos) = lx.ident("definition name")?;
        if definitions.iter().any(|(n, _)| n == &name) {
            return Err(ParseError {
                message: format!("duplicate definition name {}", name),
                pos: name_pos,
            });
        }
        lx.expect(Tok::LBrace, "'{'")?;
        let def = match kw.as_str() {
            "monoid" => parse_algebra(&mut lx, false)?,
            "blueprint" => parse_algebra(&mut lx, true)?,
            "curve" => parse_curve(&mut lx)?,
            other => {
                return Err(ParseError {
                    message: format!("unknown definition keyword {}", other),
                    pos: kw_pos,
                })
            }
        };
        lx.expect(Tok::RBrace, "'}'")?;
        definitions.push((name, def));
    }
    if definitions.is_empty() {
        return Err(ParseError {
            message: "empty document".to_string(),
            pos: Pos { line: 1, col: 1 },
        });
    }
    Ok(DslDocument { definitions })
}

fn parse_algebra(lx: &mut Lexer, allow_additive: bool) -> Result<Definition, ParseError> {
    // gens: A, B, C;
    let (kw, kw_pos) = lx.ident("'gens'")?;
    if kw != "gens" {
        return Err(ParseError { message: "expected 'gens'".to_string(), pos: kw_pos });
    }
    lx.expect(Tok::Colon, "':'")?;
    let mut gens: Vec<String> = Vec::new();
    loop {
        let (g, p) = lx.ident("generator name")?;
        if gens.contains(&g) {
            return Err(ParseError { message: format!("duplicate generator {}", g), pos: p });
        }
        gens.push(g);
        match lx.peek() {
            Some(Tok::Comma) => {
                lx.next();
            }
            _ => break,
        }
    }
    lx.expect(Tok::Semi, "';'")?;

    let mut pres = MonoidPresentation::free(gens);

    // inv: A, B;
    if let Some(Tok::Ident(s)) = lx.peek() {
        if s == "inv" {
            lx.next();
            lx.expect(Tok::Colon, "':'")?;
            loop {
                let (g, p) = lx.ident("generator name")?;
                let Some(idx) = pres.gen_index(&g) else {
                    return Err(ParseError {
                        message: format!("unknown generator {}", g),
                        pos: p,
                    });
                };
                pres.inverted.insert(idx);
                match lx.peek() {
                    Some(Tok::Comma) => {
                        lx.next();
                    }
                    _ => break,
                }
            }
            lx.expect(Tok::Semi, "';'")?;
        }
    }

    // rel: sum = sum;
    let mut monoid_rels: Vec<(Monomial, Monomial)> = Vec::new();
    let mut additive: Vec<(FormalSum, FormalSum)> = Vec::new();
    while let Some(Tok::Ident(s)) = lx.peek() {
        if s != "rel" {
            break;
        }
        let (_, rel_pos) = lx.ident("'rel'")?;
        lx.expect(Tok::Colon, "':'")?;
        let lhs = parse_sum(lx)?;
        lx.expect(Tok::Eq, "'='")?;
        let rhs = parse_sum(lx)?;
        lx.expect(Tok::Semi, "';'")?;

        let l = build_sum(&pres, &lhs)?;
        let r = build_sum(&pres, &rhs)?;
        let single = |s: &FormalSum| -> Option<Monomial> {
            let mut it = s.terms();
            match (it.next(), it.next()) {
                (Some((m, &1)), None) => Some(m.clone()),
                _ => None,
            }
        };
        match (single(&l), single(&r), l.is_empty(), r.is_empty()) {
            (Some(a), Some(b), _, _) => monoid_rels.push((a, b)),
            (Some(a), _, _, true) => monoid_rels.push((a, Monomial::Zero)),
            (_, Some(b), true, _) => monoid_rels.push((b, Monomial::Zero)),
            (_, _, true, true) => {}
            _ => {
                if !allow_additive {
                    return Err(ParseError {
                        message: "additive relation in a monoid definition".to_string(),
                        pos: rel_pos,
                    });
                }
                additive.push((l, r));
            }
        }
    }
    pres.relations = monoid_rels;
    if allow_additive {
        Ok(Definition::Blueprint(Blueprint::new(pres, additive)))
    } else {
        Ok(Definition::Monoid(pres))
    }
}

fn parse_sum(lx: &mut Lexer) -> Result<RawSum, ParseError> {
    // the literal 0, unless it opens a coefficient term like 0*T
    if let (Some(Tok::Int(0)), peek2) = (lx.peek(), lx.peek2()) {
        if peek2 != Some(&Tok::Star) {
            lx.next();
            return Ok(RawSum { terms: Vec::new() });
        }
    }
    let mut terms = Vec::new();
    loop {
        terms.push(parse_term(lx)?);
        match lx.peek() {
            Some(Tok::Plus) => {
                lx.next();
            }
            _ => break,
        }
    }
    Ok(RawSum { terms })
}

fn parse_term(lx: &mut Lexer) -> Result<RawTerm, ParseError> {
    let mut coeff: u32 = 1;
    if let Some(Tok::Int(n)) = lx.peek() {
        let n = *n;
        let pos = lx.pos();
        lx.next();
        if n <= 0 {
            return Err(ParseError {
                message: format!("non-positive coefficient {}", n),
                pos,
            });
        }
        coeff = n as u32;
        // `INT * monomial` or the bare constant INT (= INT * 1)
        if let Some(Tok::Star) = lx.peek() {
            lx.next();
        } else {
            return Ok((coeff, Vec::new()));
        }
    }
    let factors = parse_monomial(lx)?;
    Ok((coeff, factors))
}

fn parse_monomial(lx: &mut Lexer) -> Result<Vec<RawFactor>, ParseError> {
    // the literal 1
    if let Some(Tok::Int(1)) = lx.peek() {
        lx.next();
        return Ok(Vec::new());
    }
    let mut factors = Vec::new();
    loop {
        let (name, pos) = lx.ident("generator name")?;
        let mut exp: i64 = 1;
        if let Some(Tok::Caret) = lx.peek() {
            lx.next();
            let (e, _) = lx.int("exponent")?;
            exp = e;
        }
        factors.push((name, exp, pos));
        match lx.peek() {
            Some(Tok::Star) => {
                lx.next();
                // a trailing literal 1 is allowed, e.g. `T*1`
                if let Some(Tok::Int(1)) = lx.peek() {
                    lx.next();
                    break;
                }
            }
            _ => break,
        }
    }
    Ok(factors)
}

fn build_sum(pres: &MonoidPresentation, raw: &RawSum) -> Result<FormalSum, ParseError> {
    let n = pres.ngens();
    let mut sum = FormalSum::zero();
    for (coeff, factors) in &raw.terms {
        let mut e = vec![0i64; n];
        for (name, exp, pos) in factors {
            let Some(idx) = pres.gen_index(name) else {
                return Err(ParseError {
                    message: format!("unknown generator {}", name),
                    pos: pos.clone(),
                });
            };
            e[idx] += exp;
        }
        let m = Monomial::word(e);
        if let Err(err) = pres.validate_monomial(&m) {
            let pos = factors
                .first()
                .map(|(_, _, p)| p.clone())
                .unwrap_or(Pos { line: 1, col: 1 });
            return Err(ParseError { message: err.to_string(), pos });
        }
        sum.add_term(m, *coeff);
    }
    Ok(sum)
}

fn parse_curve(lx: &mut Lexer) -> Result<Definition, ParseError> {
    let mut curve: Option<TropicalCurve> = None;
    loop {
        match lx.peek() {
            Some(Tok::RBrace) | None => break,
            Some(Tok::Semi) => {
                lx.next();
            }
            _ => {}
        }
        let Some(Tok::Ident(_)) = lx.peek() else {
            match lx.peek() {
                Some(Tok::RBrace) | None => break,
                _ => {
                    return Err(ParseError {
                        message: "expected a curve statement".to_string(),
                        pos: lx.pos(),
                    })
                }
            }
        };
        let (kw, kw_pos) = lx.ident("curve statement")?;
        match kw.as_str() {
            "vertex" => {
                let (name, npos) = lx.ident("vertex name")?;
                let coords = parse_tuple(lx)?;
                let c = curve.get_or_insert_with(|| TropicalCurve::new(coords.len()));
                c.add_vertex(&name, coords).map_err(|e| ParseError {
                    message: e.to_string(),
                    pos: npos,
                })?;
            }
            "edge" => {
                let (a, apos) = lx.ident("vertex name")?;
                let (b, bpos) = lx.ident("vertex name")?;
                let weight = parse_weight(lx)?;
                let c = curve.as_mut().ok_or_else(|| ParseError {
                    message: "edge before any vertex".to_string(),
                    pos: apos.clone(),
                })?;
                let ia = c.vertex(&a).map_err(|e| ParseError {
                    message: e.to_string(),
                    pos: apos,
                })?;
                let ib = c.vertex(&b).map_err(|e| ParseError {
                    message: e.to_string(),
                    pos: bpos,
                })?;
                c.edges.push(Edge::Bounded { a: ia, b: ib, weight });
            }
            "ray" => {
                let (a, apos) = lx.ident("vertex name")?;
                let (kw2, kw2pos) = lx.ident("'dir'")?;
                if kw2 != "dir" {
                    return Err(ParseError {
                        message: "expected 'dir'".to_string(),
                        pos: kw2pos,
                    });
                }
                let dir = parse_tuple(lx)?;
                let weight = parse_weight(lx)?;
                let c = curve.as_mut().ok_or_else(|| ParseError {
                    message: "ray before any vertex".to_string(),
                    pos: apos.clone(),
                })?;
                let ia = c.vertex(&a).map_err(|e| ParseError {
                    message: e.to_string(),
                    pos: apos,
                })?;
                c.edges.push(Edge::Ray { a: ia, direction: dir, weight });
            }
            other => {
                return Err(ParseError {
                    message: format!("unknown curve statement {}", other),
                    pos: kw_pos,
                })
            }
        }
        if let Some(Tok::Semi) = lx.peek() {
            lx.next();
        }
    }
    let curve = curve.ok_or_else(|| ParseError {
        message: "curve without vertices".to_string(),
        pos: lx.pos(),
    })?;
    Ok(Definition::Curve(curve))
}

fn parse_tuple(lx: &mut Lexer) -> Result<Vec<Rat>, ParseError> {
    lx.expect(Tok::LParen, "'('")?;
    let mut out = Vec::new();
    loop {
        out.push(parse_rational(lx)?);
        match lx.peek() {
            Some(Tok::Comma) => {
                lx.next();
            }
            _ => break,
        }
    }
    lx.expect(Tok::RParen, "')'")?;
    Ok(out)
}

fn parse_rational(lx: &mut Lexer) -> Result<Rat, ParseError> {
    let (num, pos) = lx.int("number")?;
    if let Some(Tok::Slash) = lx.peek() {
        lx.next();
        let (den, dpos) = lx.int("denominator")?;
        if den == 0 {
            return Err(ParseError { message: "zero denominator".to_string(), pos: dpos });
        }
        let _ = pos;
        Ok(Rat::new(Int::from(num), Int::from(den)))
    } else {
        Ok(Rat::from_integer(Int::from(num)))
    }
}

fn parse_weight(lx: &mut Lexer) -> Result<u32, ParseError> {
    let (kw, kw_pos) = lx.ident("'weight'")?;
    if kw != "weight" {
        return Err(ParseError { message: "expected 'weight'".to_string(), pos: kw_pos });
    }
    let (w, wpos) = lx.int("weight")?;
    if w <= 0 {
        return Err(ParseError { message: format!("non-positive weight {}", w), pos: wpos });
    }
    Ok(w as u32)
}

// ---------------------------------------------------------------------------
// Canonical printing
// ---------------------------------------------------------------------------

pub fn print_document(doc: &DslDocument) -> String {
    let mut out = String::new();
    for (name, def) in &doc.definitions {
        match def {
            Definition::Monoid(p) => out.push_str(&print_algebra("monoid", name, p, &[])),
            Definition::Blueprint(b) => {
                out.push_str(&print_algebra("blueprint", name, b.monoid(), b.add_relations()))
            }
            Definition::Curve(c) => out.push_str(&print_curve(name, c)),
        }
    }
    out
}

fn print_algebra(
    kind: &str,
    name: &str,
    pres: &MonoidPresentation,
    adds: &[(FormalSum, FormalSum)],
) -> String {
    let mut out = format!("{} {} {{\n", kind, name);
    out.push_str(&format!("  gens: {};\n", pres.generators.join(", ")));
    if !pres.inverted.is_empty() {
        let names: Vec<&str> = pres
            .inverted
            .iter()
            .map(|&i| pres.generators[i].as_str())
            .collect();
        out.push_str(&format!("  inv: {};\n", names.join(", ")));
    }
    for (a, b) in &pres.relations {
        out.push_str(&format!(
            "  rel: {} = {};\n",
            pres.format_monomial(a),
            pres.format_monomial(b)
        ));
    }
    let b_view = Blueprint::from_monoid(pres.clone());
    for (l, r) in adds {
        out.push_str(&format!(
            "  rel: {} = {};\n",
            b_view.format_sum(l),
            b_view.format_sum(r)
        ));
    }
    out.push_str("}\n");
    out
}

fn print_curve(name: &str, c: &TropicalCurve) -> String {
    let mut out = format!("curve {} {{\n", name);
    for (i, v) in c.vertices.iter().enumerate() {
        let coords: Vec<String> = v.iter().map(|x| x.to_string()).collect();
        out.push_str(&format!(
            "  vertex {} ({});\n",
            c.vertex_names[i],
            coords.join(", ")
        ));
    }
    for e in &c.edges {
        match e {
            Edge::Bounded { a, b, weight } => out.push_str(&format!(
                "  edge {} {} weight {};\n",
                c.vertex_names[*a], c.vertex_names[*b], weight
            )),
            Edge::Ray { a, direction, weight } => {
                let coords: Vec<String> = direction.iter().map(|x| x.to_string()).collect();
                out.push_str(&format!(
                    "  ray {} dir ({}) weight {};\n",
                    c.vertex_names[*a],
                    coords.join(", "),
                    weight
                ));
            }
        }
    }
    out.push_str("}\n");
    out
}
