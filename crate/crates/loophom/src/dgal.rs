//! The E^1 page as a differential P_{m-1}-algebra and its homology E^2.
//!
//! The differential is given on generators by the family formulas (or read
//! off a presentation generically) and extended to the whole basis:
//! * as a derivation of the product and of the bracket;
//! * through operations by commuting with upper-indexed Q^j, which in lower
//!   indices reads d(e_i y) = e_{i+1}(dy) for i < n, and
//!   d(e_n y) = [y, dy] mod 2, ad(y)^{p-1}(dy) mod p for the top operation.
//!
//! Every assembled window is checked for d^2 = 0.

use std::collections::{BTreeMap, HashMap};

use thiserror::Error;

use crate::cobar;
use crate::exactlin::{FieldSpec, Scalar, SparseMatrix, SparseVec};
use crate::freepn::{
    binomial_mod, AlgebraElement, AlgebraError, Atom, GeneratorSet, Letter, LieMonomial, PMonomial, PnAlgebra,
};
use crate::graded::{DGWindow, GradedBasis, GradedError};
use crate::par;
use crate::spaces::{Family, SpaceError, SpacePresentation};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DgalError {
    #[error("unsupported configuration: {0}")]
    Unsupported(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Space(#[from] SpaceError),
    #[error(transparent)]
    Graded(#[from] GradedError),
    #[error(transparent)]
    Cobar(#[from] cobar::CobarError),
    #[error("d^2 != 0 on {monomial} (degree {degree}); homology is only defined below degree {}", .degree - 1)]
    DSquaredNonzero { degree: usize, monomial: String },
    #[error("differential of {0} left the basis at {1}")]
    OutsideBasis(String, String),
}

type Res<T> = Result<T, DgalError>;

/// The free P_{m-1}-algebra on S^{-m} of the reduced homology of a space.
pub struct E1Page {
    pub space: SpacePresentation,
    pub loops: u32,
    pub max_degree: u32,
    pub alg: PnAlgebra,
    /// Space generator index behind each algebra generator.
    pub source: Vec<usize>,
}

fn loop_label(sp: &SpacePresentation, i: usize, m: u32) -> String {
    let g = &sp.generators[i];
    match sp.family {
        Family::Rp => format!("u_{}", g.index - m),
        Family::Cp => format!("v_{}", g.index - m.div_ceil(2)),
        Family::Sphere => format!("x_{}", g.degree - m),
        Family::File => format!("s{}", g.label),
    }
}

impl E1Page {
    /// Page for Ω^m of the space with generators up to `max_degree`.
    pub fn new(space: &SpacePresentation, m: u32, max_degree: u32) -> Res<E1Page> {
        if m < 1 {
            return Err(DgalError::Unsupported("loop count must be at least 1".into()));
        }
        match space.family {
            Family::Rp if m > space.trunc => {
                return Err(DgalError::Unsupported(format!("RP quotients need m <= n (m = {m}, n = {})", space.trunc)))
            }
            Family::Cp if m > 2 * space.trunc + 1 => {
                return Err(DgalError::Unsupported(format!(
                    "CP quotients need m <= 2n+1 (m = {m}, n = {})",
                    space.trunc
                )))
            }
            _ => {}
        }
        if space.connectivity < m || space.generators.iter().any(|g| g.degree <= m) {
            return Err(DgalError::Unsupported(format!("space must be at least {m}-connected")));
        }
        if space.max_degree < max_degree + m && space.family != Family::Sphere && space.family != Family::File {
            return Err(DgalError::Unsupported("presentation not materialized far enough".into()));
        }
        let source: Vec<usize> = (0..space.generators.len()).filter(|i| space.degree(*i) - m <= max_degree).collect();
        let gens = source.iter().map(|i| (loop_label(space, *i, m), space.degree(*i) - m)).collect();
        let gs = GeneratorSet::new(gens, space.field, m - 1)?;
        Ok(E1Page { space: space.clone(), loops: m, max_degree, alg: PnAlgebra::new(gs), source })
    }

    pub fn field(&self) -> FieldSpec {
        self.space.field
    }

    fn gen_of_space(&self, i: usize) -> Option<usize> {
        self.source.iter().position(|s| *s == i)
    }

    /// Algebra generator for family index t (e_t or c_t), if present.
    fn gen_of_index(&self, t: i64) -> Option<usize> {
        if t <= self.space.trunc as i64 {
            return None;
        }
        let i = self.space.generators.iter().position(|g| g.index as i64 == t)?;
        self.gen_of_space(i)
    }

    fn letter_on_gen(&self, l: Letter, g: usize) -> Res<AlgebraElement> {
        Ok(self.alg.apply_letter(l, &self.alg.generator(g))?)
    }
}

/// d on generators, indexed like the page's generator set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorDifferential {
    pub images: Vec<AlgebraElement>,
}

fn accumulate(acc: &mut AlgebraElement, x: &AlgebraElement, c: &Scalar, f: FieldSpec) {
    acc.add_scaled(x, c, f);
}

/// Family formula for RP^inf/RP^n (Z/2).
pub fn dphi_rp(page: &E1Page) -> Res<GeneratorDifferential> {
    let sp = &page.space;
    if sp.family != Family::Rp {
        return Err(DgalError::Unsupported("dphi_rp needs an RP presentation".into()));
    }
    let f = page.field();
    let m = page.loops as i64;
    let alg = &page.alg;
    let mut images = Vec::new();
    for src in &page.source {
        let i = sp.generators[*src].index as i64;
        let mut d = AlgebraElement::zero();
        for j in 1..i {
            if 2 * j >= i {
                break;
            }
            if let (Some(a), Some(b)) = (page.gen_of_index(j), page.gen_of_index(i - j)) {
                accumulate(&mut d, &alg.bracket(&alg.generator(a), &alg.generator(b))?, &f.one(), f);
            }
        }
        for j in 0..=i / 2 {
            let idx = 2 * j - i + m - 1;
            let c = binomial_mod(i - j, j, f);
            if idx < 0 || idx > m - 1 || f.is_zero(&c) {
                continue;
            }
            if let Some(g) = page.gen_of_index(i - j) {
                accumulate(&mut d, &page.letter_on_gen(Letter::e(idx as u32), g)?, &c, f);
            }
        }
        images.push(d);
    }
    Ok(GeneratorDifferential { images })
}

/// Family formulas for CP^inf/CP^n over Z/2, Z/p and Q.
pub fn dphi_cp(page: &E1Page) -> Res<GeneratorDifferential> {
    let sp = &page.space;
    if sp.family != Family::Cp {
        return Err(DgalError::Unsupported("dphi_cp needs a CP presentation".into()));
    }
    let f = page.field();
    let p = f.characteristic() as i64;
    let m = page.loops as i64;
    let alg = &page.alg;
    let mut images = Vec::new();
    for src in &page.source {
        let i = sp.generators[*src].index as i64;
        let mut d = AlgebraElement::zero();
        for j in 1..i {
            // mod 2 sums over 2j < i; otherwise 2j <= i (self-brackets included)
            if 2 * j > i || (p == 2 && 2 * j == i) {
                break;
            }
            if let (Some(a), Some(b)) = (page.gen_of_index(j), page.gen_of_index(i - j)) {
                let mut s = f.sign(p != 2 && (m * 2 * j) % 2 == 1);
                if 2 * j == i {
                    // x' (x) x' occurs once in the coproduct: [a,a] = 2 a.a
                    s = f.mul(&s, &f.from_ratio(1, 2));
                }
                accumulate(&mut d, &alg.bracket(&alg.generator(a), &alg.generator(b))?, &s, f);
            }
        }
        match p {
            0 => {}
            2 => {
                for j in 0..=i / 2 {
                    let idx = 2 * (2 * j - i) + m - 1;
                    let c = binomial_mod(i - j, j, f);
                    if idx < 0 || idx > m - 1 || f.is_zero(&c) {
                        continue;
                    }
                    if let Some(g) = page.gen_of_index(i - j) {
                        accumulate(&mut d, &page.letter_on_gen(Letter::e(idx as u32), g)?, &c, f);
                    }
                }
            }
            _ => {
                for j in 1.. {
                    if p * j >= i {
                        break;
                    }
                    let idx = 2 * (p * j - i) + m;
                    let c = binomial_mod(i - (p - 1) * j, j, f);
                    if idx < 0 || idx > m - 1 || f.is_zero(&c) {
                        continue;
                    }
                    if let Some(g) = page.gen_of_index(i - (p - 1) * j) {
                        accumulate(&mut d, &page.letter_on_gen(Letter::be(idx as u32), g)?, &c, f);
                    }
                }
            }
        }
        images.push(d);
    }
    Ok(GeneratorDifferential { images })
}

/// Generic formula: brackets from the reduced coproduct plus operations
/// translated from the Steenrod data by degree.
pub fn dphi_generic(page: &E1Page) -> Res<GeneratorDifferential> {
    let sp = &page.space;
    let f = page.field();
    let p = f.characteristic() as i64;
    let m = page.loops as i64;
    let alg = &page.alg;
    let mut images = Vec::new();
    for src in &page.source {
        let mut d = AlgebraElement::zero();
        for (a, b, c) in &sp.coproduct[*src] {
            if a > b || (p == 2 && a == b) {
                continue;
            }
            let (Some(ga), Some(gb)) = (page.gen_of_space(*a), page.gen_of_space(*b)) else { continue };
            let mut s = f.sign(p != 2 && (m * sp.degree(*a) as i64) % 2 == 1);
            if a == b {
                s = f.mul(&s, &f.from_ratio(1, 2));
            }
            accumulate(&mut d, &alg.bracket(&alg.generator(ga), &alg.generator(gb))?, &f.mul(&s, c), f);
        }
        let x = sp.degree(*src) as i64;
        for st in sp.steenrod.iter().filter(|s| s.source == *src) {
            let y = sp.degree(st.target) as i64;
            let letter = match p {
                0 => break,
                2 => Letter::e_checked(x - 1 + m - 2 * y, m),
                _ => {
                    let num = x - p * y;
                    if num % (p - 1) != 0 {
                        return Err(DgalError::Unsupported(format!(
                            "P^{} on {} has no matching Bockstein operation",
                            st.op, sp.generators[*src].label
                        )));
                    }
                    Letter::be_checked(num / (p - 1) + m, m)
                }
            };
            let Some(l) = letter else { continue };
            if let Some(g) = page.gen_of_space(st.target) {
                accumulate(&mut d, &page.letter_on_gen(l, g)?, &st.coeff, f);
            }
        }
        images.push(d);
    }
    Ok(GeneratorDifferential { images })
}

trait CheckedLetter {
    fn e_checked(idx: i64, m: i64) -> Option<Letter>;
    fn be_checked(idx: i64, m: i64) -> Option<Letter>;
}

impl CheckedLetter for Letter {
    fn e_checked(idx: i64, m: i64) -> Option<Letter> {
        (0..m).contains(&idx).then(|| Letter::e(idx as u32))
    }

    fn be_checked(idx: i64, m: i64) -> Option<Letter> {
        (0..m).contains(&idx).then(|| Letter::be(idx as u32))
    }
}

/// Per-family authoritative formula; generic for spheres and custom spaces.
pub fn dphi_default(page: &E1Page) -> Res<GeneratorDifferential> {
    match page.space.family {
        Family::Rp => dphi_rp(page),
        Family::Cp => dphi_cp(page),
        _ => dphi_generic(page),
    }
}

/// The derivation extending a generator differential.
pub struct Differential<'a> {
    alg: &'a PnAlgebra,
    gd: &'a GeneratorDifferential,
}

impl<'a> Differential<'a> {
    pub fn new(alg: &'a PnAlgebra, gd: &'a GeneratorDifferential) -> Self {
        Differential { alg, gd }
    }

    pub fn apply(&self, e: &AlgebraElement) -> Result<AlgebraElement, AlgebraError> {
        let f = self.alg.field();
        let mut out = AlgebraElement::zero();
        for (m, c) in e.terms() {
            out.add_scaled(&self.monomial(m)?, c, f);
        }
        Ok(out)
    }

    pub fn monomial(&self, m: &PMonomial) -> Result<AlgebraElement, AlgebraError> {
        let alg = self.alg;
        let f = alg.field();
        let copies = alg.atom_copies(m);
        let mut out = AlgebraElement::zero();
        let mut prefix_degree = 0u32;
        for t in 0..copies.len() {
            let da = self.atom(copies[t])?;
            if !da.is_zero() {
                let left = AlgebraElement::monomial(alg.monomial_of_copies(&copies[..t]), f);
                let right = AlgebraElement::monomial(alg.monomial_of_copies(&copies[t + 1..]), f);
                let term = alg.mul(&alg.mul(&left, &da), &right);
                out.add_scaled(&term, &f.sign(!f.is_two() && prefix_degree % 2 == 1), f);
            }
            prefix_degree += copies[t].degree;
        }
        Ok(out)
    }

    fn atom(&self, a: &Atom) -> Result<AlgebraElement, AlgebraError> {
        let alg = self.alg;
        let f = alg.field();
        let n = alg.shift();
        let Some(l) = a.eword.first() else { return self.lie(&a.lie) };
        let y = alg.inner_atom(a);
        let dy = self.atom(&y)?;
        if dy.is_zero() {
            return Ok(dy);
        }
        let ye = alg.atom_elem(y);
        if l.index < n {
            let next = Letter { beta: l.beta, index: l.index + 1 };
            return Ok(alg.apply_letter(next, &dy)?.scaled(&f.sign(l.beta), f));
        }
        if f.is_two() {
            return alg.bracket(&ye, &dy);
        }
        if l.beta {
            return Err(AlgebraError::Unsupported(format!("d of a Bockstein top operation on {}", alg.render(&ye))));
        }
        let mut t = dy;
        for _ in 1..f.characteristic() {
            t = alg.bracket(&ye, &t)?;
        }
        Ok(t)
    }

    fn lie(&self, m: &LieMonomial) -> Result<AlgebraElement, AlgebraError> {
        let alg = self.alg;
        let f = alg.field();
        if m.is_generator() {
            return Ok(self.gd.images[m.word[0] as usize].clone());
        }
        let (u, v) = alg.lie_factors(m);
        let du = self.lie(&u.lie)?;
        let dv = self.lie(&v.lie)?;
        let ue = alg.atom_elem(u.clone());
        let ve = alg.atom_elem(v);
        let mut out = alg.bracket(&du, &ve)?;
        let s = f.sign(!f.is_two() && (u.degree + alg.shift()) % 2 == 1);
        out.add_scaled(&alg.bracket(&ue, &dv)?, &s, f);
        Ok(out)
    }
}

/// An assembled E^1 window together with its monomial basis.
pub struct Assembled {
    pub window: DGWindow,
    pub basis: GradedBasis<PMonomial>,
    index: Vec<HashMap<PMonomial, usize>>,
}

impl Assembled {
    /// Coordinates of a homogeneous element in the basis of its degree.
    pub fn coordinates(&self, e: &AlgebraElement) -> Option<(usize, SparseVec)> {
        let degs = e.degrees();
        if degs.len() > 1 {
            return None;
        }
        let d = *degs.first()? as usize;
        let idx = self.index.get(d)?;
        let mut v: SparseVec = e.terms().map(|(m, c)| idx.get(m).map(|i| (*i, c.clone()))).collect::<Option<_>>()?;
        v.sort_by_key(|x| x.0);
        Some((d, v))
    }
}

/// Extends gd over the basis up to max_deg and assembles the matrices.
pub fn extend_and_assemble(page: &E1Page, gd: &GeneratorDifferential, max_deg: u32) -> Res<Assembled> {
    let alg = &page.alg;
    let f = alg.field();
    let basis = crate::freepn::pn_basis(alg.gens(), max_deg);
    let index: Vec<HashMap<PMonomial, usize>> = (0..=max_deg as usize)
        .map(|d| basis.get(d).iter().enumerate().map(|(i, m)| (m.clone(), i)).collect())
        .collect();
    let diff = Differential::new(alg, gd);
    let mut d = BTreeMap::new();
    for k in 1..=max_deg as usize {
        let cols = par::map(basis.get(k), |m| -> Res<SparseVec> {
            let img = diff.monomial(m)?;
            let mut v = SparseVec::new();
            for (t, c) in img.terms() {
                let i = index[k - 1]
                    .get(t)
                    .ok_or_else(|| DgalError::OutsideBasis(alg.render_monomial(m), alg.render_monomial(t)))?;
                v.push((*i, c.clone()));
            }
            v.sort_by_key(|x| x.0);
            Ok(v)
        });
        let cols = cols.into_iter().collect::<Res<Vec<_>>>()?;
        d.insert(k, SparseMatrix::from_columns(basis.dim(k - 1), &cols));
    }
    let labels = basis.map(|m| alg.render_monomial(m));
    let window = DGWindow::new(labels, f, d, max_deg as usize);
    if let Some((k, c)) = window.verify_composition_zero()? {
        return Err(DgalError::DSquaredNonzero { degree: k, monomial: window.basis.get(k)[c].clone() });
    }
    Ok(Assembled { window, basis, index })
}

/// One row of an E^2 table with rendered representatives.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableRow {
    pub degree: usize,
    pub dim: usize,
    pub rank: usize,
    pub generators: Vec<String>,
}

/// Renders a coordinate vector as a combination of basis labels.
pub fn render_vector(labels: &[String], v: &SparseVec, f: FieldSpec) -> String {
    if v.is_empty() {
        return "0".into();
    }
    v.iter()
        .map(|(i, c)| if f.is_one(c) { labels[*i].clone() } else { format!("{c}*{}", labels[*i]) })
        .collect::<Vec<_>>()
        .join(" + ")
}

/// Homology table of a window on lo..=hi.
pub fn window_table(w: &DGWindow, lo: usize, hi: usize) -> Res<Vec<TableRow>> {
    Ok(w.homology_table(lo, hi)?
        .into_iter()
        .map(|r| TableRow {
            degree: r.degree,
            dim: r.dim,
            rank: r.rank,
            generators: r.generators.iter().map(|v| render_vector(w.basis.get(r.degree), v, w.field)).collect(),
        })
        .collect())
}

/// Assembles the default window for Ω^m of a space, large enough for hi.
pub fn assemble_for(space: &SpacePresentation, m: u32, hi: u32) -> Res<(E1Page, Assembled)> {
    let page = E1Page::new(space, m, hi + 1)?;
    let gd = dphi_default(&page)?;
    let asm = extend_and_assemble(&page, &gd, hi + 1)?;
    Ok((page, asm))
}

/// E^2 = H_*(Ω^m X) on lo..=hi with representative labels.
pub fn e2_homology(space: &SpacePresentation, m: u32, lo: u32, hi: u32) -> Res<Vec<TableRow>> {
    let (_, asm) = assemble_for(space, m, hi)?;
    window_table(&asm.window, lo as usize, hi as usize)
}

/// Whether a listed label is a cycle and, jointly with the labels before
/// it in the same degree, independent modulo boundaries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabelCheck {
    pub label: String,
    pub degree: usize,
    pub cycle: bool,
    pub independent: bool,
}

/// Checks a list of labels (one degree at a time, in order).
pub fn check_labels(page: &E1Page, asm: &Assembled, labels: &[&str]) -> Res<Vec<LabelCheck>> {
    let mut seen: BTreeMap<usize, Vec<SparseVec>> = BTreeMap::new();
    let mut out = Vec::new();
    for l in labels {
        let e = crate::freepn::normalize(&crate::freepn::parse_expr(l)?, &page.alg)?;
        let (d, v) = asm
            .coordinates(&e)
            .ok_or_else(|| DgalError::Unsupported(format!("label {l} is not homogeneous inside the window")))?;
        let cycle = asm.window.is_cycle(d, &v);
        let prev = seen.entry(d).or_default();
        prev.push(v);
        let independent = cycle && asm.window.independent_mod_boundaries(d, prev);
        out.push(LabelCheck { label: l.to_string(), degree: d, cycle, independent });
    }
    Ok(out)
}

/// The single-loop presentation: generators, quadratic relations and the
/// word-count series.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct M1Presentation {
    pub generators: Vec<(String, u32)>,
    pub relations: Vec<String>,
    pub series: BTreeMap<usize, usize>,
}

pub fn m1_presentation(family: Family, n: u32, max_deg: u32) -> Res<M1Presentation> {
    let (letter, deg): (&str, Box<dyn Fn(u32) -> u32>) = match family {
        Family::Rp => ("u", Box::new(|i| i)),
        Family::Cp => ("v", Box::new(|i| 2 * i + 1)),
        _ => return Err(DgalError::Unsupported("m = 1 presentations exist for rp and cp only".into())),
    };
    let name = |i: u32| format!("{letter}_{i}");
    let generators = (n..=2 * n).map(|i| (name(i), deg(i))).collect();
    let relations = (0..=n)
        .map(|t| (n..=n + t).map(|a| format!("{}*{}", name(a), name(2 * n + t - a))).collect::<Vec<_>>().join(" + "))
        .collect();
    // tail[r]: words of degree r in letters n < i <= 2n (empty word included)
    let max = max_deg as usize;
    let mut tail = vec![0usize; max + 1];
    tail[0] = 1;
    for r in 1..=max {
        tail[r] = (n + 1..=2 * n).map(|i| deg(i) as usize).filter(|d| *d <= r).map(|d| tail[r - d]).sum();
    }
    let series = (1..=max)
        .map(|k| (k, (n..=2 * n).map(|i| deg(i) as usize).filter(|d| *d <= k).map(|d| tail[k - d]).sum()))
        .collect();
    Ok(M1Presentation { generators, relations, series })
}

/// Outcome of the m = 1 three-way comparison.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompareReport {
    pub e2: BTreeMap<usize, usize>,
    pub words: BTreeMap<usize, usize>,
    pub cobar: BTreeMap<usize, usize>,
    pub first_disagreement: Option<usize>,
}

impl CompareReport {
    pub fn agree(&self) -> bool {
        self.first_disagreement.is_none()
    }
}

/// Compares E^2 (m = 1), the word-count series and the cobar homology on
/// degrees 1..=hi. `corrupt` zeroes the first nonzero generator differential
/// (a negative control).
pub fn compare_m1(space: &SpacePresentation, hi: u32, corrupt: bool) -> Res<CompareReport> {
    let page = E1Page::new(space, 1, hi + 1)?;
    let mut gd = dphi_default(&page)?;
    if corrupt {
        if let Some(img) = gd.images.iter_mut().find(|d| !d.is_zero()) {
            *img = AlgebraElement::zero();
        }
    }
    let asm = extend_and_assemble(&page, &gd, hi + 1)?;
    let e2 = asm.window.homology_dimensions(1, hi as usize)?;
    let words = m1_presentation(space.family, space.trunc, hi)?.series;
    let cw = cobar::cobar_window(&cobar::CoalgebraPresentation::from_space(space)?, hi + 1)?;
    let cobar = cw.homology_dimensions(1, hi as usize)?;
    let first_disagreement = (1..=hi as usize).find(|k| e2.get(k) != words.get(k) || e2.get(k) != cobar.get(k));
    Ok(CompareReport { e2, words, cobar, first_disagreement })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spaces::{cp_quotient, rp_quotient};

    fn z(p: u64) -> FieldSpec {
        FieldSpec::new(p).unwrap()
    }

    fn d_of(page: &E1Page, gd: &GeneratorDifferential, name: &str) -> String {
        let i = page.alg.gens().index_of(name).unwrap();
        page.alg.render(&gd.images[i])
    }

    #[test]
    fn rp_small_differentials() {
        let sp = rp_quotient(2, z(2), 12).unwrap();
        let page = E1Page::new(&sp, 2, 8).unwrap();
        let gd = dphi_rp(&page).unwrap();
        assert_eq!(d_of(&page, &gd, "u_1"), "0");
        assert_eq!(d_of(&page, &gd, "u_3"), "e_0(u_1)");
        assert_eq!(d_of(&page, &gd, "u_4"), "e_1(u_1)");
        assert_eq!(d_of(&page, &gd, "u_5"), "[u_1,u_2]");
        assert_eq!(d_of(&page, &gd, "u_7"), "[u_1,u_4] + [u_2,u_3] + e_0(u_3)");
    }

    #[test]
    fn cp_small_differentials() {
        let sp = cp_quotient(2, z(2), 40).unwrap();
        let page = E1Page::new(&sp, 4, 14).unwrap();
        let gd = dphi_cp(&page).unwrap();
        assert_eq!(d_of(&page, &gd, "v_3"), "e_1(v_1)");
        assert_eq!(d_of(&page, &gd, "v_6"), "[v_1,v_3] + e_3(v_2)");
        let sp = cp_quotient(2, z(3), 40).unwrap();
        let page = E1Page::new(&sp, 4, 12).unwrap();
        let gd = dphi_cp(&page).unwrap();
        // self-brackets carry 1/2 = 2 mod 3
        assert_eq!(d_of(&page, &gd, "v_4"), "2*[v_1,v_1]");
        assert_eq!(d_of(&page, &gd, "v_5"), "[v_1,v_2]");
    }

    #[test]
    fn unsupported_configurations() {
        let sp = rp_quotient(2, z(2), 12).unwrap();
        assert!(E1Page::new(&sp, 3, 3).is_err());
        let sp = cp_quotient(1, z(2), 20).unwrap();
        assert!(E1Page::new(&sp, 4, 3).is_err());
    }

    #[test]
    fn leibniz_examples() {
        let sp = rp_quotient(2, z(2), 12).unwrap();
        let page = E1Page::new(&sp, 2, 8).unwrap();
        let gd = dphi_rp(&page).unwrap();
        let d = Differential::new(&page.alg, &gd);
        let parse = |s: &str| crate::freepn::normalize(&crate::freepn::parse_expr(s).unwrap(), &page.alg).unwrap();
        assert_eq!(page.alg.render(&d.apply(&parse("u_1*u_3")).unwrap()), "u_1*e_0(u_1)");
        assert!(d.apply(&parse("e_1(u_3)")).unwrap().is_zero());
        let du7 = gd.images[page.alg.gens().index_of("u_7").unwrap()].clone();
        assert!(d.apply(&du7).unwrap().is_zero());
    }

    #[test]
    fn m1_word_counts() {
        let p = m1_presentation(Family::Rp, 2, 7).unwrap();
        let dims: Vec<usize> = (2..=7).map(|k| p.series[&k]).collect();
        assert_eq!(dims, vec![1, 1, 1, 1, 2, 2]);
        assert_eq!(p.relations, vec!["u_2*u_2", "u_2*u_3 + u_3*u_2", "u_2*u_4 + u_3*u_3 + u_4*u_2"]);
    }
}
