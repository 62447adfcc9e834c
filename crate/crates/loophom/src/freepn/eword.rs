//! Lower-indexed Dyer-Lashof words e_{i1}...e_{ik} and their Q-forms.

use std::fmt;

use crate::exactlin::FieldSpec;

use super::{AlgebraError, GeneratorSet};

/// One operation letter; `beta` marks a Bockstein prefix (odd p only).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub beta: bool,
    pub index: u32,
}

impl Letter {
    pub fn e(index: u32) -> Self {
        Letter { beta: false, index }
    }

    pub fn be(index: u32) -> Self {
        Letter { beta: true, index }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.beta {
            write!(f, "b.")?;
        }
        write!(f, "e_{}", self.index)
    }
}

/// Letters listed outermost first.
pub type EWord = Vec<Letter>;

/// Degree of the letter applied to an element of degree y, if defined.
pub fn letter_degree(l: Letter, y: u32, f: FieldSpec) -> Option<u32> {
    let p = f.characteristic() as u32;
    match p {
        0 => None,
        2 => (!l.beta).then_some(l.index + 2 * y),
        _ => {
            if l.index % 2 != y % 2 || (l.beta && l.index == 0) {
                return None;
            }
            Some(p * y + (p - 1) * l.index - l.beta as u32)
        }
    }
}

/// All e-words applicable to an element of degree `atom_degree` whose result
/// has degree at most `max_deg`, paired with that degree. Includes the empty
/// word. Sorted by (degree, word).
pub fn eword_enumerate(atom_degree: u32, g: &GeneratorSet, max_deg: u32) -> Vec<(EWord, u32)> {
    let mut out = Vec::new();
    if atom_degree > max_deg {
        return out;
    }
    out.push((Vec::new(), atom_degree));
    let f = g.field();
    if f.is_rational() {
        return out;
    }
    let n = g.shift();
    // grow words outward: a new outermost letter needs index <= current outermost
    let mut stack = vec![(Vec::<Letter>::new(), atom_degree)];
    while let Some((w, d)) = stack.pop() {
        let bound = w.first().map(|l| l.index).unwrap_or(n);
        for index in 0..=bound {
            for beta in [false, true] {
                let l = Letter { beta, index };
                if let Some(nd) = letter_degree(l, d, f) {
                    if nd <= max_deg {
                        let mut nw = vec![l];
                        nw.extend_from_slice(&w);
                        out.push((nw.clone(), nd));
                        stack.push((nw, nd));
                    }
                }
            }
        }
    }
    out.sort_by(|a, b| (a.1, &a.0).cmp(&(b.1, &b.0)));
    out
}

/// Upper-indexed form: (beta, Q-index) pairs, outermost first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DlWord {
    pub letters: Vec<(bool, u32)>,
}

impl fmt::Display for DlWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (b, j) in &self.letters {
            if *b {
                write!(f, "b")?;
            }
            write!(f, "Q^{j}")?;
        }
        Ok(())
    }
}

/// Converts an e-word on an element of degree `x_degree` into admissible
/// Q-form (j = i + deg y mod 2, 2s = i + deg y mod p). `n` is the top index.
pub fn eword_to_dl(w: &[Letter], x_degree: u32, n: u32, f: FieldSpec) -> Result<DlWord, AlgebraError> {
    let bad = |msg: &str| AlgebraError::InvalidEWord(format!("{}: {msg}", render_word(w)));
    if f.is_rational() {
        return if w.is_empty() {
            Ok(DlWord { letters: Vec::new() })
        } else {
            Err(bad("no operations in characteristic 0"))
        };
    }
    let p = f.characteristic() as u32;
    let mut y = x_degree;
    let mut rev = Vec::new();
    for (k, l) in w.iter().enumerate().rev() {
        if l.index > n {
            return Err(bad("index above the top operation"));
        }
        if k + 1 < w.len() && l.index > w[k + 1].index {
            return Err(bad("indices must be non-decreasing inward"));
        }
        let nd = letter_degree(*l, y, f).ok_or_else(|| bad("letter undefined on this degree"))?;
        let j = if p == 2 { l.index + y } else { (l.index + y) / 2 };
        rev.push((l.beta, j));
        y = nd;
    }
    rev.reverse();
    let dl = DlWord { letters: rev };
    // admissibility of consecutive letters (outer t, inner t+1)
    for t in 0..dl.letters.len().saturating_sub(1) {
        let (_, jo) = dl.letters[t];
        let (bi, ji) = dl.letters[t + 1];
        let ok = if p == 2 { jo <= 2 * ji } else { jo + bi as u32 <= p * ji };
        if !ok {
            return Err(bad("result not admissible"));
        }
    }
    Ok(dl)
}

pub(crate) fn render_word(w: &[Letter]) -> String {
    w.iter().map(|l| l.to_string()).collect()
}
