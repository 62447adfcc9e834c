//! Homology coalgebras with Steenrod action for the input spaces.
//!
//! Text format (one directive per line, `#` starts a comment):
//!
//! ```text
//! space RP^inf/RP^2
//! family rp
//! characteristic 2
//! connectivity 2
//! generator e_3 3
//! generator e_6 6
//! coproduct e_6 = 1 e_3 e_3
//! steenrod 2 e_5 = 1 e_3
//! ```
//!
//! `coproduct X = c A B` adds c * A (x) B to the reduced coproduct of X;
//! `steenrod k X = c Y` records Sq^k X = c Y (P^k at odd p) on homology.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use thiserror::Error;

use crate::exactlin::{FieldSpec, Scalar};
use crate::freepn::binomial_mod;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SpaceError {
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("validation failed at generator {label}: {msg}")]
    Invalid { label: String, msg: String },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    Rp,
    Cp,
    Sphere,
    File,
}

impl Family {
    pub fn tag(&self) -> &'static str {
        match self {
            Family::Rp => "rp",
            Family::Cp => "cp",
            Family::Sphere => "sphere",
            Family::File => "file",
        }
    }

    pub fn parse(s: &str) -> Option<Family> {
        Some(match s {
            "rp" => Family::Rp,
            "cp" => Family::Cp,
            "sphere" => Family::Sphere,
            "file" => Family::File,
            _ => return None,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpaceGenerator {
    pub label: String,
    pub degree: u32,
    /// Family index: i for e_i / c_i, 0 for spheres and file generators.
    pub index: u32,
}

/// Sq^op (p = 2) or P^op (odd p) sends `source` to coeff * `target`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SteenrodEntry {
    pub op: u32,
    pub source: usize,
    pub target: usize,
    pub coeff: Scalar,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpacePresentation {
    pub family: Family,
    pub name: String,
    pub field: FieldSpec,
    pub generators: Vec<SpaceGenerator>,
    /// Reduced coproduct per generator: ordered pairs (left, right, coeff).
    pub coproduct: Vec<Vec<(usize, usize, Scalar)>>,
    pub steenrod: Vec<SteenrodEntry>,
    pub connectivity: u32,
    /// Truncation index n for rp/cp.
    pub trunc: u32,
    /// Generators are materialized up to this degree.
    pub max_degree: u32,
}

impl SpacePresentation {
    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.generators.iter().position(|g| g.label == label)
    }

    pub fn degree(&self, i: usize) -> u32 {
        self.generators[i].degree
    }

    /// Amount by which the stored operation lowers degree.
    pub fn op_drop(&self, op: u32) -> u32 {
        let p = self.field.characteristic() as u32;
        if p == 2 {
            op
        } else {
            2 * op * (p - 1)
        }
    }

    /// The same presentation restricted to generators of degree <= d.
    pub fn restricted(&self, d: u32) -> SpacePresentation {
        let keep: Vec<usize> = (0..self.generators.len()).filter(|i| self.degree(*i) <= d).collect();
        let remap: BTreeMap<usize, usize> = keep.iter().enumerate().map(|(a, b)| (*b, a)).collect();
        SpacePresentation {
            generators: keep.iter().map(|i| self.generators[*i].clone()).collect(),
            coproduct: keep
                .iter()
                .map(|i| self.coproduct[*i].iter().map(|(a, b, c)| (remap[a], remap[b], c.clone())).collect())
                .collect(),
            steenrod: self
                .steenrod
                .iter()
                .filter(|s| remap.contains_key(&s.source))
                .map(|s| SteenrodEntry { source: remap[&s.source], target: remap[&s.target], ..s.clone() })
                .collect(),
            max_degree: d.min(self.max_degree),
            ..self.clone()
        }
    }
}

/// Builds a stunted projective presentation from its index structure:
/// generator index i has degree `step * i`; coproduct sums over splits.
fn projective(
    family: Family,
    n: u32,
    f: FieldSpec,
    max_degree: u32,
    step: u32,
    name: String,
    connectivity: u32,
) -> SpacePresentation {
    let indices: Vec<u32> = (n + 1..).take_while(|i| step * i <= max_degree).collect();
    let pos = |i: u32| -> Option<usize> { (i > n && step * i <= max_degree).then(|| (i - n - 1) as usize) };
    let letter = if family == Family::Rp { "e" } else { "c" };
    let generators: Vec<SpaceGenerator> = indices
        .iter()
        .map(|i| SpaceGenerator { label: format!("{letter}_{i}"), degree: step * i, index: *i })
        .collect();
    let coproduct =
        indices.iter().map(|i| (1..*i).filter_map(|j| Some((pos(j)?, pos(i - j)?, f.one()))).collect()).collect();
    let p = f.characteristic() as i64;
    let mut steenrod = Vec::new();
    for (src, i) in indices.iter().enumerate() {
        let i = *i as i64;
        for j in 1..=i {
            // index drop and coefficient of the family's formula
            let (drop, coeff, op) = match (family, p) {
                (Family::Rp, _) => (j, binomial_mod(i - j, j, f), j),
                (_, 2) => (j, binomial_mod(i - j, j, f), 2 * j),
                (_, 0) => break,
                _ => ((p - 1) * j, binomial_mod(i - (p - 1) * j, j, f), j),
            };
            if drop >= i {
                break;
            }
            let Some(target) = pos((i - drop) as u32) else { continue };
            if !f.is_zero(&coeff) {
                steenrod.push(SteenrodEntry { op: op as u32, source: src, target, coeff });
            }
        }
    }
    SpacePresentation { family, name, field: f, generators, coproduct, steenrod, connectivity, trunc: n, max_degree }
}

/// RP^inf/RP^n over Z/2, generators e_i (i > n) of degree i.
pub fn rp_quotient(n: u32, f: FieldSpec, max_degree: u32) -> Result<SpacePresentation, SpaceError> {
    if f.characteristic() != 2 {
        return Err(SpaceError::Unsupported("RP quotients are only supported over Z/2".into()));
    }
    if n < 1 {
        return Err(SpaceError::Unsupported("truncation n must be at least 1".into()));
    }
    Ok(projective(Family::Rp, n, f, max_degree, 1, format!("RP^inf/RP^{n}"), n))
}

/// CP^inf/CP^n, generators c_i (i > n) of degree 2i.
pub fn cp_quotient(n: u32, f: FieldSpec, max_degree: u32) -> Result<SpacePresentation, SpaceError> {
    if n < 1 {
        return Err(SpaceError::Unsupported("truncation n must be at least 1".into()));
    }
    Ok(projective(Family::Cp, n, f, max_degree, 2, format!("CP^inf/CP^{n}"), 2 * n + 1))
}

/// The d-sphere: one generator, trivial structure.
pub fn sphere(d: u32, f: FieldSpec) -> Result<SpacePresentation, SpaceError> {
    if d < 2 {
        return Err(SpaceError::Unsupported("sphere dimension must be at least 2".into()));
    }
    Ok(SpacePresentation {
        family: Family::Sphere,
        name: format!("S^{d}"),
        field: f,
        generators: vec![SpaceGenerator { label: "x".into(), degree: d, index: 0 }],
        coproduct: vec![Vec::new()],
        steenrod: Vec::new(),
        connectivity: d - 1,
        trunc: 0,
        max_degree: u32::MAX,
    })
}

type Triple = BTreeMap<(usize, usize, usize), Scalar>;

fn add_triple(t: &mut Triple, k: (usize, usize, usize), c: &Scalar, f: FieldSpec) {
    let e = t.entry(k).or_insert_with(|| f.zero());
    *e = f.add(e, c);
    if f.is_zero(e) {
        t.remove(&k);
    }
}

/// Checks coassociativity, cocommutativity and Steenrod degree bookkeeping
/// up to `max_deg`; for rp/cp also the closed Steenrod formulas.
pub fn validate(sp: &SpacePresentation, max_deg: u32) -> Result<(), SpaceError> {
    let f = sp.field;
    let fail = |i: usize, msg: &str| SpaceError::Invalid { label: sp.generators[i].label.clone(), msg: msg.into() };
    for (i, g) in sp.generators.iter().enumerate() {
        if g.degree > max_deg {
            continue;
        }
        let pairs = &sp.coproduct[i];
        let mut table: BTreeMap<(usize, usize), Scalar> = BTreeMap::new();
        for (a, b, c) in pairs {
            if sp.degree(*a) + sp.degree(*b) != g.degree {
                return Err(fail(i, "coproduct term has the wrong degree"));
            }
            table.insert((*a, *b), c.clone());
        }
        for ((a, b), c) in &table {
            let other = table.get(&(*b, *a)).cloned().unwrap_or_else(|| f.zero());
            let s = f.sign(f.characteristic() != 2 && sp.degree(*a) * sp.degree(*b) % 2 == 1);
            if other != f.mul(&s, c) {
                return Err(fail(i, "coproduct is not cocommutative"));
            }
        }
        // (D x 1) D = (1 x D) D on the reduced part
        let mut left = Triple::new();
        let mut right = Triple::new();
        for (a, b, c) in pairs {
            for (a1, a2, c1) in &sp.coproduct[*a] {
                add_triple(&mut left, (*a1, *a2, *b), &f.mul(c, c1), f);
            }
            for (b1, b2, c2) in &sp.coproduct[*b] {
                add_triple(&mut right, (*a, *b1, *b2), &f.mul(c, c2), f);
            }
        }
        if left != right {
            return Err(fail(i, "coproduct is not coassociative"));
        }
    }
    for s in &sp.steenrod {
        if sp.degree(s.source) > max_deg {
            continue;
        }
        if sp.degree(s.source) != sp.degree(s.target) + sp.op_drop(s.op) {
            return Err(fail(s.source, "Steenrod operation has the wrong degree"));
        }
        if sp.family == Family::Rp || sp.family == Family::Cp {
            let (i, t) = (sp.generators[s.source].index as i64, sp.generators[s.target].index as i64);
            let p = f.characteristic() as i64;
            let expect = match (sp.family, p) {
                (Family::Rp, _) => binomial_mod(i - s.op as i64, s.op as i64, f),
                (_, 2) => binomial_mod(i - s.op as i64 / 2, s.op as i64 / 2, f),
                _ => binomial_mod(i - (p - 1) * s.op as i64, s.op as i64, f),
            };
            let op = s.op as i64;
            let drop = match (sp.family, p) {
                (Family::Rp, _) => op,
                (_, 2) => op / 2,
                _ => (p - 1) * op,
            };
            if expect != s.coeff || i - drop != t {
                return Err(fail(s.source, "Steenrod coefficient disagrees with the closed formula"));
            }
        }
    }
    Ok(())
}

/// Serializes a presentation in the text format.
pub fn dump(sp: &SpacePresentation) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "space {}", sp.name);
    let _ = writeln!(out, "family {}", sp.family.tag());
    let _ = writeln!(out, "characteristic {}", sp.field.characteristic());
    let _ = writeln!(out, "connectivity {}", sp.connectivity);
    if sp.trunc > 0 {
        let _ = writeln!(out, "trunc {}", sp.trunc);
    }
    for g in &sp.generators {
        let _ = writeln!(out, "generator {} {}", g.label, g.degree);
    }
    for (i, pairs) in sp.coproduct.iter().enumerate() {
        for (a, b, c) in pairs {
            let _ = writeln!(
                out,
                "coproduct {} = {} {} {}",
                sp.generators[i].label, c, sp.generators[*a].label, sp.generators[*b].label
            );
        }
    }
    for s in &sp.steenrod {
        let _ = writeln!(
            out,
            "steenrod {} {} = {} {}",
            s.op, sp.generators[s.source].label, s.coeff, sp.generators[s.target].label
        );
    }
    out
}

fn parse_scalar(s: &str, f: FieldSpec) -> Option<Scalar> {
    if let Some((n, d)) = s.split_once('/') {
        let (n, d): (i64, i64) = (n.parse().ok()?, d.parse().ok()?);
        if d == 0 || (!f.is_rational() && d % f.characteristic() as i64 == 0) {
            return None;
        }
        return Some(f.from_ratio(n, d));
    }
    Some(f.from_i64(s.parse().ok()?))
}

/// Parses the text format. Family tags rp/cp keep their generator indices
/// (parsed from labels of the form x_i); anything else loads as `file`.
pub fn load(text: &str) -> Result<SpacePresentation, SpaceError> {
    let mut name = String::from("custom");
    let mut family = Family::File;
    let mut field = None;
    let mut connectivity = None;
    let mut trunc = 0;
    let mut generators: Vec<SpaceGenerator> = Vec::new();
    let mut coproduct: Vec<(usize, String, Vec<String>)> = Vec::new();
    let mut steenrod: Vec<(usize, Vec<String>)> = Vec::new();
    for (ln, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap().trim();
        if line.is_empty() {
            continue;
        }
        let err = |msg: &str| SpaceError::Parse { line: ln + 1, msg: msg.into() };
        let (key, rest) = line.split_once(char::is_whitespace).ok_or_else(|| err("missing value"))?;
        let rest = rest.trim();
        match key {
            "space" => name = rest.to_string(),
            "family" => family = Family::parse(rest).ok_or_else(|| err("unknown family"))?,
            "characteristic" => {
                let c: u64 = rest.parse().map_err(|_| err("bad characteristic"))?;
                field = Some(FieldSpec::new(c).map_err(|e| err(&e.to_string()))?);
            }
            "connectivity" => connectivity = Some(rest.parse().map_err(|_| err("bad connectivity"))?),
            "trunc" => trunc = rest.parse().map_err(|_| err("bad trunc"))?,
            "generator" => {
                let parts: Vec<&str> = rest.split_whitespace().collect();
                if parts.len() != 2 {
                    return Err(err("expected: generator LABEL DEGREE"));
                }
                let degree: u32 = parts[1].parse().map_err(|_| err("bad degree"))?;
                if generators.iter().any(|g| g.label == parts[0]) {
                    return Err(err("duplicate generator"));
                }
                let index = parts[0].rsplit_once('_').and_then(|(_, i)| i.parse().ok()).unwrap_or(0);
                generators.push(SpaceGenerator { label: parts[0].into(), degree, index });
            }
            "coproduct" => {
                let (lhs, rhs) = rest.split_once('=').ok_or_else(|| err("expected '='"))?;
                coproduct.push((ln + 1, lhs.trim().into(), rhs.split_whitespace().map(String::from).collect()));
            }
            "steenrod" => {
                let (lhs, rhs) = rest.split_once('=').ok_or_else(|| err("expected '='"))?;
                let mut parts: Vec<String> = lhs.split_whitespace().map(String::from).collect();
                parts.extend(rhs.split_whitespace().map(String::from));
                steenrod.push((ln + 1, parts));
            }
            _ => return Err(err("unknown directive")),
        }
    }
    let field = field.ok_or(SpaceError::Parse { line: 0, msg: "missing characteristic".into() })?;
    let find = |line: usize, l: &str| -> Result<usize, SpaceError> {
        generators
            .iter()
            .position(|g| g.label == l)
            .ok_or(SpaceError::Parse { line, msg: format!("unknown generator {l}") })
    };
    let mut cop = vec![Vec::new(); generators.len()];
    for (line, lhs, rhs) in coproduct {
        let x = find(line, &lhs)?;
        if rhs.len() != 3 {
            return Err(SpaceError::Parse { line, msg: "expected: coproduct X = COEFF A B".into() });
        }
        let c = parse_scalar(&rhs[0], field).ok_or(SpaceError::Parse { line, msg: "bad coefficient".into() })?;
        cop[x].push((find(line, &rhs[1])?, find(line, &rhs[2])?, c));
    }
    let mut st = Vec::new();
    for (line, parts) in steenrod {
        if parts.len() != 4 {
            return Err(SpaceError::Parse { line, msg: "expected: steenrod K X = COEFF Y".into() });
        }
        let op = parts[0].parse().map_err(|_| SpaceError::Parse { line, msg: "bad operation index".into() })?;
        let coeff = parse_scalar(&parts[2], field).ok_or(SpaceError::Parse { line, msg: "bad coefficient".into() })?;
        st.push(SteenrodEntry { op, source: find(line, &parts[1])?, target: find(line, &parts[3])?, coeff });
    }
    let min_deg = generators.iter().map(|g| g.degree).min().unwrap_or(2);
    let max_degree = generators.iter().map(|g| g.degree).max().unwrap_or(0);
    Ok(SpacePresentation {
        family,
        name,
        field,
        generators,
        coproduct: cop,
        steenrod: st,
        connectivity: connectivity.unwrap_or(min_deg.saturating_sub(1)),
        trunc,
        max_degree,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z2() -> FieldSpec {
        FieldSpec::new(2).unwrap()
    }

    fn labels(sp: &SpacePresentation, i: usize) -> Vec<(String, String)> {
        sp.coproduct[i]
            .iter()
            .map(|(a, b, _)| (sp.generators[*a].label.clone(), sp.generators[*b].label.clone()))
            .collect()
    }

    #[test]
    fn rp_coproduct_and_steenrod() {
        let sp = rp_quotient(2, z2(), 12).unwrap();
        let e6 = sp.index_of("e_6").unwrap();
        assert_eq!(labels(&sp, e6), vec![("e_3".into(), "e_3".into())]);
        assert!(labels(&sp, sp.index_of("e_5").unwrap()).is_empty());
        let e5 = sp.index_of("e_5").unwrap();
        let e3 = sp.index_of("e_3").unwrap();
        assert!(sp.steenrod.iter().any(|s| s.op == 2 && s.source == e5 && s.target == e3));
        assert!(validate(&sp, 12).is_ok());
        assert!(rp_quotient(2, FieldSpec::new(3).unwrap(), 12).is_err());
    }

    #[test]
    fn cp_mod_3() {
        let f = FieldSpec::new(3).unwrap();
        let sp = cp_quotient(2, f, 24).unwrap();
        assert!(validate(&sp, 24).is_ok());
        // P^1(c_4) = 2 c_2 is truncated away for n = 2
        let c4 = sp.index_of("c_4").unwrap();
        assert!(sp.steenrod.iter().all(|s| s.source != c4 || s.op != 1));
        let c6 = sp.index_of("c_6").unwrap();
        assert_eq!(labels(&sp, c6), vec![("c_3".into(), "c_3".into())]);
        let q = cp_quotient(2, FieldSpec::rationals(), 24).unwrap();
        assert!(q.steenrod.is_empty());
    }

    #[test]
    fn corrupted_coproduct_fails() {
        let mut sp = rp_quotient(2, z2(), 12).unwrap();
        let e9 = sp.index_of("e_9").unwrap();
        sp.coproduct[e9].pop();
        assert!(validate(&sp, 12).is_err());
    }

    #[test]
    fn sphere_is_trivial() {
        let sp = sphere(3, z2()).unwrap();
        assert_eq!(sp.generators.len(), 1);
        assert!(validate(&sp, 100).is_ok());
        assert!(sphere(1, z2()).is_err());
    }

    #[test]
    fn text_round_trip() {
        let sp = rp_quotient(2, z2(), 9).unwrap();
        let back = load(&dump(&sp)).unwrap();
        assert_eq!(back.generators, sp.generators);
        assert_eq!(back.coproduct, sp.coproduct);
        assert_eq!(back.steenrod, sp.steenrod);
        assert_eq!(back.family, Family::Rp);
    }
}
