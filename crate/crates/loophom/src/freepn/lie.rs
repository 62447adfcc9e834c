//! Free graded n-Lie algebra: Lyndon basis embedded in the tensor algebra.
//!
//! A Lie monomial is the standard bracketing P_w of a Lyndon word w, or the
//! self-bracket [P_w, P_w] of an odd Lyndon word (characteristic not 2).
//! Elements are expanded into the tensor algebra with
//! [a, b] = ab - (-1)^{|a||b|} ba (Lie parity |a| = degree + n), and decomposed
//! back by leading-word triangularity: P_w = w + (larger words) and
//! [P_w, P_w] = 2ww + (larger words).

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex};

use crate::exactlin::{FieldSpec, Scalar};

use super::AlgebraError;

pub type Word = Vec<u16>;
pub type WordPoly = BTreeMap<Word, Scalar>;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LieMonomial {
    pub word: Word,
    pub square: bool,
}

impl LieMonomial {
    pub fn generator(i: usize) -> Self {
        LieMonomial { word: vec![i as u16], square: false }
    }

    pub fn is_generator(&self) -> bool {
        self.word.len() == 1 && !self.square
    }
}

pub fn is_lyndon(w: &[u16]) -> bool {
    !w.is_empty() && (1..w.len()).all(|i| w < &w[i..])
}

/// w = uv with v the longest proper Lyndon suffix.
pub fn standard_factorization(w: &[u16]) -> Option<(&[u16], &[u16])> {
    (1..w.len()).find(|i| is_lyndon(&w[*i..])).map(|i| (&w[..i], &w[i..]))
}

/// Degree/parity data plus an expansion cache.
pub(crate) struct LieCtx {
    degrees: Vec<u32>,
    shift: u32,
    field: FieldSpec,
    cache: Mutex<HashMap<LieMonomial, Arc<WordPoly>>>,
}

impl LieCtx {
    pub fn new(degrees: Vec<u32>, shift: u32, field: FieldSpec) -> Self {
        LieCtx { degrees, shift, field, cache: Mutex::new(HashMap::new()) }
    }

    pub fn word_degree(&self, w: &[u16]) -> u32 {
        w.iter().map(|c| self.degrees[*c as usize]).sum::<u32>() + (w.len() as u32 - 1) * self.shift
    }

    pub fn degree(&self, m: &LieMonomial) -> u32 {
        let d = self.word_degree(&m.word);
        if m.square {
            2 * d + self.shift
        } else {
            d
        }
    }

    /// Lie parity of a word: sum of (degree + n) over letters, mod 2.
    pub fn word_parity(&self, w: &[u16]) -> bool {
        w.iter().map(|c| self.degrees[*c as usize] + self.shift).sum::<u32>() % 2 == 1
    }

    pub fn expand(&self, m: &LieMonomial) -> Arc<WordPoly> {
        if let Some(p) = self.cache.lock().unwrap().get(m) {
            return p.clone();
        }
        let poly = if m.square {
            let base = self.expand(&LieMonomial { word: m.word.clone(), square: false });
            self.bracket_poly(&base, &base)
        } else if m.word.len() == 1 {
            BTreeMap::from([(m.word.clone(), self.field.one())])
        } else {
            let (u, v) = standard_factorization(&m.word).expect("Lyndon word of length >= 2 factors");
            let pu = self.expand(&LieMonomial { word: u.to_vec(), square: false });
            let pv = self.expand(&LieMonomial { word: v.to_vec(), square: false });
            self.bracket_poly(&pu, &pv)
        };
        let poly = Arc::new(poly);
        self.cache.lock().unwrap().insert(m.clone(), poly.clone());
        poly
    }

    fn poly_parity(&self, p: &WordPoly) -> bool {
        p.keys().next().map(|w| self.word_parity(w)).unwrap_or(false)
    }

    fn mul_poly(&self, a: &WordPoly, b: &WordPoly, scale: &Scalar, acc: &mut WordPoly) {
        let f = self.field;
        for (wa, ca) in a {
            for (wb, cb) in b {
                let mut w = wa.clone();
                w.extend_from_slice(wb);
                let c = f.mul(&f.mul(ca, cb), scale);
                add_term(acc, w, &c, f);
            }
        }
    }

    /// Super-commutator ab - (-1)^{p(a)p(b)} ba.
    pub fn bracket_poly(&self, a: &WordPoly, b: &WordPoly) -> WordPoly {
        let f = self.field;
        let mut acc = WordPoly::new();
        if a.is_empty() || b.is_empty() {
            return acc;
        }
        self.mul_poly(a, b, &f.one(), &mut acc);
        let odd = self.poly_parity(a) && self.poly_parity(b);
        self.mul_poly(b, a, &f.neg(&f.sign(odd)), &mut acc);
        acc
    }

    /// Expresses a Lie element of the tensor algebra in the monomial basis.
    pub fn decompose(&self, mut poly: WordPoly) -> Result<Vec<(LieMonomial, Scalar)>, AlgebraError> {
        let f = self.field;
        let mut out = Vec::new();
        while let Some((w, c)) = poly.iter().next().map(|(w, c)| (w.clone(), c.clone())) {
            let (mono, lead) = if is_lyndon(&w) {
                (LieMonomial { word: w.clone(), square: false }, f.one())
            } else if let Some(u) = self.odd_square_root(&w) {
                (LieMonomial { word: u, square: true }, f.from_i64(2))
            } else {
                return Err(AlgebraError::NotLie(format!("{w:?}")));
            };
            let coef = f.div(&c, &lead);
            let e = self.expand(&mono);
            for (wk, ck) in e.iter() {
                add_term(&mut poly, wk.clone(), &f.neg(&f.mul(&coef, ck)), f);
            }
            debug_assert!(!poly.contains_key(&w));
            out.push((mono, coef));
        }
        Ok(out)
    }

    fn odd_square_root(&self, w: &[u16]) -> Option<Word> {
        if self.field.is_two() || w.len() % 2 == 1 {
            return None;
        }
        let (u, v) = w.split_at(w.len() / 2);
        (u == v && is_lyndon(u) && self.word_parity(u)).then(|| u.to_vec())
    }

    /// Whether [w, w] is a basis element in this field.
    pub fn square_allowed(&self, w: &[u16]) -> bool {
        !self.field.is_two() && self.word_parity(w)
    }
}

pub(crate) fn add_term(p: &mut WordPoly, w: Word, c: &Scalar, f: FieldSpec) {
    if f.is_zero(c) {
        return;
    }
    match p.get_mut(&w) {
        Some(x) => {
            *x = f.add(x, c);
            if f.is_zero(x) {
                p.remove(&w);
            }
        }
        None => {
            p.insert(w, c.clone());
        }
    }
}
