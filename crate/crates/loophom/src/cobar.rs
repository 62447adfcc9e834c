//! Adams cobar construction of a simply connected homology coalgebra.
//!
//! Words [x_1|...|x_k] have degree sum(|x_i|) - k. On generators
//! d[x] = -[dx] + sum (-1)^{|x'|} [x'|x''] over the reduced coproduct,
//! extended as a derivation of concatenation.

use std::collections::{BTreeMap, HashMap};

use thiserror::Error;

use crate::exactlin::{FieldSpec, Scalar, SparseMatrix, SparseVec};
use crate::graded::{DGWindow, GradedBasis, GradedError};
use crate::par;
use crate::spaces::{self, SpaceError, SpacePresentation};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CobarError {
    #[error("generator {0} has degree 1; the cobar construction needs a simply connected coalgebra")]
    NotSimplyConnected(String),
    #[error(transparent)]
    Space(#[from] SpaceError),
    #[error(transparent)]
    Graded(#[from] GradedError),
    #[error("d^2 != 0 on {0}")]
    DSquaredNonzero(String),
}

/// Generators, reduced coproduct and (optionally) an internal differential.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoalgebraPresentation {
    pub names: Vec<String>,
    pub degrees: Vec<u32>,
    pub field: FieldSpec,
    /// Ordered reduced coproduct: coproduct[x] lists (x', x'', c).
    pub coproduct: Vec<Vec<(usize, usize, Scalar)>>,
    /// Internal differential dx = sum c y; empty for homology coalgebras.
    pub internal: Vec<Vec<(usize, Scalar)>>,
}

impl CoalgebraPresentation {
    pub fn new(
        names: Vec<String>,
        degrees: Vec<u32>,
        field: FieldSpec,
        coproduct: Vec<Vec<(usize, usize, Scalar)>>,
    ) -> Result<Self, CobarError> {
        if let Some(i) = degrees.iter().position(|d| *d < 2) {
            return Err(CobarError::NotSimplyConnected(names[i].clone()));
        }
        let internal = vec![Vec::new(); names.len()];
        Ok(CoalgebraPresentation { names, degrees, field, coproduct, internal })
    }

    /// The homology coalgebra of a presentation (validated first).
    pub fn from_space(sp: &SpacePresentation) -> Result<Self, CobarError> {
        spaces::validate(sp, sp.max_degree)?;
        CoalgebraPresentation::new(
            sp.generators.iter().map(|g| g.label.clone()).collect(),
            sp.generators.iter().map(|g| g.degree).collect(),
            sp.field,
            sp.coproduct.clone(),
        )
    }
}

/// A cobar word, by generator index.
pub type CobarWord = Vec<usize>;

pub fn word_degree(c: &CoalgebraPresentation, w: &[usize]) -> u32 {
    w.iter().map(|x| c.degrees[*x] - 1).sum()
}

pub fn render_word(c: &CoalgebraPresentation, w: &[usize]) -> String {
    if w.is_empty() {
        return "[]".into();
    }
    format!("[{}]", w.iter().map(|x| c.names[*x].as_str()).collect::<Vec<_>>().join("|"))
}

/// Words by degree 0..=max_deg, in lexicographic order of generator indices.
pub fn cobar_words(c: &CoalgebraPresentation, max_deg: u32) -> GradedBasis<CobarWord> {
    let mut out = GradedBasis::new();
    for d in 0..=max_deg as usize {
        out.set(d, Vec::new());
    }
    fn rec(c: &CoalgebraPresentation, w: &mut CobarWord, deg: u32, max: u32, out: &mut GradedBasis<CobarWord>) {
        out.push(deg as usize, w.clone());
        for x in 0..c.names.len() {
            let nd = deg + c.degrees[x] - 1;
            if nd <= max {
                w.push(x);
                rec(c, w, nd, max, out);
                w.pop();
            }
        }
    }
    rec(c, &mut Vec::new(), 0, max_deg, &mut out);
    out
}

/// d of a single word, as (word, coefficient) terms (not collected).
pub fn d_word(c: &CoalgebraPresentation, w: &[usize]) -> Vec<(CobarWord, Scalar)> {
    let f = c.field;
    let mut out = Vec::new();
    let mut before = 0u32;
    for t in 0..w.len() {
        let x = w[t];
        let outer = f.sign(before % 2 == 1);
        let splice = |mid: &[usize]| -> CobarWord {
            let mut v = w[..t].to_vec();
            v.extend_from_slice(mid);
            v.extend_from_slice(&w[t + 1..]);
            v
        };
        for (y, k) in &c.internal[x] {
            out.push((splice(&[*y]), f.neg(&f.mul(&outer, k))));
        }
        for (a, b, k) in &c.coproduct[x] {
            let s = f.sign(c.degrees[*a] % 2 == 1);
            out.push((splice(&[*a, *b]), f.mul(&outer, &f.mul(&s, k))));
        }
        before += c.degrees[x] - 1;
    }
    out
}

/// The cobar complex through max_deg, checked for d^2 = 0.
pub fn cobar_window(c: &CoalgebraPresentation, max_deg: u32) -> Result<DGWindow, CobarError> {
    let f = c.field;
    let words = cobar_words(c, max_deg);
    let index: Vec<HashMap<&CobarWord, usize>> =
        (0..=max_deg as usize).map(|d| words.get(d).iter().enumerate().map(|(i, w)| (w, i)).collect()).collect();
    let mut d = BTreeMap::new();
    for k in 1..=max_deg as usize {
        let cols = par::map(words.get(k), |w| {
            let mut acc: BTreeMap<usize, Scalar> = BTreeMap::new();
            for (t, s) in d_word(c, w) {
                let i = index[k - 1][&t];
                let e = acc.entry(i).or_insert_with(|| f.zero());
                *e = f.add(e, &s);
            }
            acc.into_iter().filter(|(_, s)| !f.is_zero(s)).collect::<SparseVec>()
        });
        d.insert(k, SparseMatrix::from_columns(words.dim(k - 1), &cols));
    }
    let labels = words.map(|w| render_word(c, w));
    let window = DGWindow::new(labels, f, d, max_deg as usize);
    if let Some((k, col)) = window.verify_composition_zero()? {
        return Err(CobarError::DSquaredNonzero(window.basis.get(k)[col].clone()));
    }
    Ok(window)
}

/// H_*(FK) on lo..=hi.
pub fn cobar_homology(c: &CoalgebraPresentation, lo: u32, hi: u32) -> Result<BTreeMap<usize, usize>, CobarError> {
    let w = cobar_window(c, hi + 1)?;
    Ok(w.homology_dimensions(lo as usize, hi as usize)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spaces::{rp_quotient, sphere};

    fn z(p: u64) -> FieldSpec {
        FieldSpec::new(p).unwrap()
    }

    #[test]
    fn sphere_is_polynomial() {
        let c = CoalgebraPresentation::from_space(&sphere(3, z(2)).unwrap()).unwrap();
        let h = cobar_homology(&c, 2, 4).unwrap();
        assert_eq!(h.values().copied().collect::<Vec<_>>(), vec![1, 0, 1]);
    }

    #[test]
    fn rp_generator_differentials() {
        let c = CoalgebraPresentation::from_space(&rp_quotient(2, z(2), 12).unwrap()).unwrap();
        let e6 = c.names.iter().position(|n| n == "e_6").unwrap();
        let e5 = c.names.iter().position(|n| n == "e_5").unwrap();
        let d6: Vec<String> = d_word(&c, &[e6]).iter().map(|(w, _)| render_word(&c, w)).collect();
        assert_eq!(d6, vec!["[e_3|e_3]"]);
        assert!(d_word(&c, &[e5]).is_empty());
    }

    #[test]
    fn rejects_degree_one() {
        let r = CoalgebraPresentation::new(vec!["a".into()], vec![1], z(2), vec![vec![]]);
        assert!(matches!(r, Err(CobarError::NotSimplyConnected(_))));
    }
}
