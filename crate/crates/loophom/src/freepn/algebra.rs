//! Basis monomials and the algebra operations on them.
//!
//! Rewriting rules:
//! * products are sorted with Koszul signs; a repeated atom carries into an
//!   e_0-atom (x*x = e_0 x mod 2, x^p = e_0 x mod p);
//! * brackets expand by the Poisson rule down to atoms; two pure Lie atoms
//!   bracket in the tensor algebra and decompose into the Lyndon basis;
//! * a bracket with an atom whose outer letter is not the top operation is 0;
//!   with the top operation it is [x, e_n z] = [z, [z, x]] mod 2 and
//!   ad(z)^p(x) mod p (0 under a Bockstein);
//! * letters distribute over products by the Cartan formula and over sums
//!   additively, except the mod-2 top operation which picks up cross brackets;
//! * inadmissible mod-2 composites are rewritten with the Adem relation and
//!   out-of-range operations vanish.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use crate::exactlin::{FieldSpec, Scalar};

use super::eword::{letter_degree, render_word, EWord, Letter};
use super::lie::{standard_factorization, LieCtx, LieMonomial};
use super::{AlgebraError, GeneratorSet};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Atom {
    pub degree: u32,
    pub eword: EWord,
    pub lie: LieMonomial,
}

/// A product of atoms with multiplicities, sorted by atom.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PMonomial {
    pub degree: u32,
    pub factors: Vec<(Atom, u32)>,
}

impl PMonomial {
    pub fn unit() -> Self {
        PMonomial { degree: 0, factors: Vec::new() }
    }

    pub fn from_atom(a: Atom) -> Self {
        PMonomial { degree: a.degree, factors: vec![(a, 1)] }
    }

    pub fn is_unit(&self) -> bool {
        self.factors.is_empty()
    }

    /// Number of atoms counted with multiplicity.
    pub fn count(&self) -> u32 {
        self.factors.iter().map(|f| f.1).sum()
    }

    /// Splits off one copy of the smallest atom: self = a * rest, no sign.
    fn split_first(&self) -> (Atom, PMonomial) {
        let (a, k) = &self.factors[0];
        let mut rest = self.factors.clone();
        if *k == 1 {
            rest.remove(0);
        } else {
            rest[0].1 -= 1;
        }
        (a.clone(), PMonomial { degree: self.degree - a.degree, factors: rest })
    }

    fn copies(&self) -> Vec<&Atom> {
        self.factors.iter().flat_map(|(a, k)| std::iter::repeat_n(a, *k as usize)).collect()
    }
}

impl Ord for PMonomial {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.degree, self.count(), &self.factors).cmp(&(other.degree, other.count(), &other.factors))
    }
}

impl PartialOrd for PMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Formal combination of monomials with nonzero coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct AlgebraElement {
    terms: BTreeMap<PMonomial, Scalar>,
}

impl AlgebraElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&PMonomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &PMonomial) -> Option<&Scalar> {
        self.terms.get(m)
    }

    /// Degrees of all terms (a homogeneous element has at most one).
    pub fn degrees(&self) -> Vec<u32> {
        let mut d: Vec<u32> = self.terms.keys().map(|m| m.degree).collect();
        d.dedup();
        d
    }

    pub fn add_term(&mut self, m: PMonomial, c: &Scalar, f: FieldSpec) {
        if f.is_zero(c) {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(x) => {
                *x = f.add(x, c);
                if f.is_zero(x) {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c.clone());
            }
        }
    }

    pub fn add_scaled(&mut self, other: &AlgebraElement, c: &Scalar, f: FieldSpec) {
        for (m, x) in &other.terms {
            self.add_term(m.clone(), &f.mul(x, c), f);
        }
    }

    pub fn scaled(&self, c: &Scalar, f: FieldSpec) -> AlgebraElement {
        let mut out = AlgebraElement::zero();
        out.add_scaled(self, c, f);
        out
    }

    pub fn monomial(m: PMonomial, f: FieldSpec) -> Self {
        let mut e = Self::zero();
        e.add_term(m, &f.one(), f);
        e
    }
}

/// Binomial coefficient C(a, b) reduced into the field (Lucas for p > 0).
pub fn binomial_mod(a: i64, b: i64, f: FieldSpec) -> Scalar {
    if a < 0 || b < 0 || b > a {
        return f.zero();
    }
    if f.is_rational() {
        let mut r = num::BigInt::from(1);
        for k in 0..b {
            r = r * (a - k) / (k + 1);
        }
        return Scalar::Rat(num::rational::BigRational::from_integer(r));
    }
    let p = f.characteristic() as i64;
    let (mut a, mut b) = (a, b);
    let mut acc = f.one();
    while a > 0 || b > 0 {
        let (ai, bi) = (a % p, b % p);
        if bi > ai {
            return f.zero();
        }
        let mut c: i64 = 1;
        for k in 0..bi {
            c = c * (ai - k) / (k + 1);
        }
        acc = f.mul(&acc, &f.from_i64(c));
        a /= p;
        b /= p;
    }
    acc
}

/// The free P_n-algebra on a generator set.
pub struct PnAlgebra {
    gens: GeneratorSet,
    lie: LieCtx,
}

type Res<T> = Result<T, AlgebraError>;

impl PnAlgebra {
    pub fn new(gens: GeneratorSet) -> Self {
        let lie = LieCtx::new(gens.degrees().to_vec(), gens.shift(), gens.field());
        PnAlgebra { gens, lie }
    }

    pub fn gens(&self) -> &GeneratorSet {
        &self.gens
    }

    pub fn field(&self) -> FieldSpec {
        self.gens.field()
    }

    pub fn shift(&self) -> u32 {
        self.gens.shift()
    }

    pub(crate) fn lie_ctx(&self) -> &LieCtx {
        &self.lie
    }

    pub fn lie_degree(&self, m: &LieMonomial) -> u32 {
        self.lie.degree(m)
    }

    /// Builds an atom, checking every letter is defined on its argument.
    pub fn make_atom(&self, eword: EWord, lie: LieMonomial) -> Res<Atom> {
        let mut y = self.lie.degree(&lie);
        for l in eword.iter().rev() {
            y = letter_degree(*l, y, self.field()).ok_or_else(|| AlgebraError::InvalidLetter(l.to_string(), y))?;
        }
        Ok(Atom { degree: y, eword, lie })
    }

    pub fn lie_atom(&self, lie: LieMonomial) -> Atom {
        let degree = self.lie.degree(&lie);
        Atom { degree, eword: Vec::new(), lie }
    }

    fn strip(&self, a: &Atom) -> Atom {
        self.make_atom(a.eword[1..].to_vec(), a.lie.clone()).expect("suffix of a valid e-word is valid")
    }

    fn prepend(&self, l: Letter, a: &Atom) -> Atom {
        let degree = letter_degree(l, a.degree, self.field()).expect("letter checked by caller");
        let mut eword = vec![l];
        eword.extend_from_slice(&a.eword);
        Atom { degree, eword, lie: a.lie.clone() }
    }

    pub fn generator(&self, i: usize) -> AlgebraElement {
        self.atom_elem(self.lie_atom(LieMonomial::generator(i)))
    }

    pub fn unit(&self) -> AlgebraElement {
        AlgebraElement::monomial(PMonomial::unit(), self.field())
    }

    pub fn atom_elem(&self, a: Atom) -> AlgebraElement {
        AlgebraElement::monomial(PMonomial::from_atom(a), self.field())
    }

    fn mono_elem(&self, m: PMonomial) -> AlgebraElement {
        AlgebraElement::monomial(m, self.field())
    }

    pub fn add(&self, a: &AlgebraElement, b: &AlgebraElement) -> AlgebraElement {
        let mut out = a.clone();
        out.add_scaled(b, &self.field().one(), self.field());
        out
    }

    pub fn sub(&self, a: &AlgebraElement, b: &AlgebraElement) -> AlgebraElement {
        let mut out = a.clone();
        out.add_scaled(b, &self.field().from_i64(-1), self.field());
        out
    }

    fn odd(&self, d: u32) -> bool {
        !self.field().is_two() && d % 2 == 1
    }

    /// Product of two monomials: at most one monomial with a sign.
    pub fn mul_monomials(&self, a: &PMonomial, b: &PMonomial) -> Option<(Scalar, PMonomial)> {
        let f = self.field();
        let mut swaps = 0u64;
        if !f.is_two() {
            for (x, kx) in &a.factors {
                if x.degree % 2 == 1 {
                    for (y, ky) in &b.factors {
                        if y.degree % 2 == 1 && y < x {
                            swaps += (*kx as u64) * (*ky as u64);
                        }
                    }
                }
            }
        }
        let mut counts: BTreeMap<Atom, u32> = BTreeMap::new();
        for (x, k) in a.factors.iter().chain(b.factors.iter()) {
            *counts.entry(x.clone()).or_insert(0) += k;
        }
        let p = f.characteristic() as u32;
        loop {
            let mut carry = None;
            for (x, k) in &counts {
                if x.degree % 2 == 1 && p != 2 && *k >= 2 {
                    return None;
                }
                let limit = if p == 0 { u32::MAX } else { p };
                if *k >= limit {
                    carry = Some(x.clone());
                    break;
                }
            }
            let Some(x) = carry else { break };
            let k = counts.get_mut(&x).unwrap();
            *k -= p;
            if *k == 0 {
                counts.remove(&x);
            }
            *counts.entry(self.prepend(Letter::e(0), &x)).or_insert(0) += 1;
        }
        let degree = a.degree + b.degree;
        let m = PMonomial { degree, factors: counts.into_iter().collect() };
        Some((f.sign(swaps % 2 == 1), m))
    }

    pub fn mul(&self, a: &AlgebraElement, b: &AlgebraElement) -> AlgebraElement {
        let f = self.field();
        let mut out = AlgebraElement::zero();
        for (ma, ca) in a.terms() {
            for (mb, cb) in b.terms() {
                if let Some((s, m)) = self.mul_monomials(ma, mb) {
                    out.add_term(m, &f.mul(&s, &f.mul(ca, cb)), f);
                }
            }
        }
        out
    }

    pub fn bracket(&self, a: &AlgebraElement, b: &AlgebraElement) -> Res<AlgebraElement> {
        let f = self.field();
        let mut out = AlgebraElement::zero();
        for (ma, ca) in a.terms() {
            for (mb, cb) in b.terms() {
                let t = self.bracket_monomials(ma, mb)?;
                out.add_scaled(&t, &f.mul(ca, cb), f);
            }
        }
        Ok(out)
    }

    fn bracket_monomials(&self, x: &PMonomial, y: &PMonomial) -> Res<AlgebraElement> {
        let f = self.field();
        let n = self.shift();
        if x.is_unit() || y.is_unit() {
            return Ok(AlgebraElement::zero());
        }
        if y.count() >= 2 {
            // [x, a z] = [x, a] z + (-1)^{(|x|+n)|a|} a [x, z]
            let (a, z) = y.split_first();
            let am = PMonomial::from_atom(a.clone());
            let mut out = self.mul(&self.bracket_monomials(x, &am)?, &self.mono_elem(z.clone()));
            let s = f.sign(self.odd((x.degree + n) * a.degree));
            let t = self.mul(&self.mono_elem(am), &self.bracket_monomials(x, &z)?);
            out.add_scaled(&t, &s, f);
            return Ok(out);
        }
        if x.count() >= 2 {
            // [a w, z] = a [w, z] + (-1)^{|w|(|z|+n)} [a, z] w
            let (a, w) = x.split_first();
            let am = PMonomial::from_atom(a);
            let mut out = self.mul(&self.mono_elem(am.clone()), &self.bracket_monomials(&w, y)?);
            let s = f.sign(self.odd(w.degree * (y.degree + n)));
            let t = self.mul(&self.bracket_monomials(&am, y)?, &self.mono_elem(w));
            out.add_scaled(&t, &s, f);
            return Ok(out);
        }
        self.bracket_atoms(&x.factors[0].0, &y.factors[0].0)
    }

    fn is_top(&self, l: &Letter) -> bool {
        l.index == self.shift()
    }

    fn bracket_atoms(&self, a: &Atom, b: &Atom) -> Res<AlgebraElement> {
        let f = self.field();
        let n = self.shift();
        if let Some(l) = b.eword.first() {
            if !self.is_top(l) {
                return Ok(AlgebraElement::zero());
            }
            let z = self.atom_elem(self.strip(b));
            let mut t = self.atom_elem(a.clone());
            if f.is_two() {
                t = self.bracket(&z, &t)?;
                return self.bracket(&z, &t);
            }
            if l.beta {
                return Ok(AlgebraElement::zero());
            }
            for _ in 0..f.characteristic() {
                t = self.bracket(&z, &t)?;
            }
            return Ok(t);
        }
        if !a.eword.is_empty() {
            // [a, b] = -(-1)^{(|a|+n)(|b|+n)} [b, a]
            let s = f.neg(&f.sign(self.odd((a.degree + n) * (b.degree + n))));
            return Ok(self.bracket_atoms(b, a)?.scaled(&s, f));
        }
        let pa = self.lie.expand(&a.lie);
        let pb = self.lie.expand(&b.lie);
        let mut out = AlgebraElement::zero();
        for (m, c) in self.lie.decompose(self.lie.bracket_poly(&pa, &pb))? {
            out.add_term(PMonomial::from_atom(self.lie_atom(m)), &c, f);
        }
        Ok(out)
    }

    /// Applies one operation letter to an element.
    pub fn apply_letter(&self, l: Letter, x: &AlgebraElement) -> Res<AlgebraElement> {
        let f = self.field();
        if f.is_rational() {
            return Err(AlgebraError::NoOperations);
        }
        if l.index > self.shift() {
            return Ok(AlgebraElement::zero());
        }
        let terms: Vec<(&PMonomial, &Scalar)> = x.terms().collect();
        let mut out = AlgebraElement::zero();
        if self.is_top(&l) && terms.len() > 1 {
            if !f.is_two() {
                return Err(AlgebraError::Unsupported(format!("{l} applied to a sum at odd p")));
            }
            for i in 0..terms.len() {
                for j in i + 1..terms.len() {
                    let c = self.bracket_monomials(terms[i].0, terms[j].0)?;
                    out.add_scaled(&c, &f.one(), f);
                }
            }
        }
        for (m, c) in terms {
            let t = self.apply_letter_monomial(l, m)?;
            out.add_scaled(&t, c, f);
        }
        Ok(out)
    }

    fn apply_letter_monomial(&self, l: Letter, m: &PMonomial) -> Res<AlgebraElement> {
        let f = self.field();
        if m.is_unit() {
            return Ok(AlgebraElement::zero());
        }
        if m.count() == 1 {
            return self.apply_letter_atom(l, &m.factors[0].0);
        }
        let (a, rest) = m.split_first();
        let ae = self.atom_elem(a.clone());
        let re = self.mono_elem(rest.clone());
        let mut out = AlgebraElement::zero();
        if f.is_two() {
            for ia in 0..=l.index {
                let x = self.apply_letter_atom(Letter::e(ia), &a)?;
                if x.is_zero() {
                    continue;
                }
                let y = self.apply_letter_monomial(Letter::e(l.index - ia), &rest)?;
                out.add_scaled(&self.mul(&x, &y), &f.one(), f);
            }
            if self.is_top(&l) {
                let br = self.bracket(&ae, &re)?;
                out.add_scaled(&self.mul(&self.mul(&ae, &br), &re), &f.one(), f);
            }
            return Ok(out);
        }
        if self.is_top(&l) {
            return Err(AlgebraError::Unsupported(format!("{l} applied to a product at odd p")));
        }
        if l.index % 2 != m.degree % 2 {
            return Err(AlgebraError::InvalidLetter(l.to_string(), m.degree));
        }
        for ia in (0..=l.index).filter(|i| i % 2 == a.degree % 2) {
            let ib = l.index - ia;
            let qa = self.apply_letter_atom(Letter::e(ia), &a)?;
            let qb = self.apply_letter_monomial(Letter::e(ib), &rest)?;
            if !l.beta {
                out.add_scaled(&self.mul(&qa, &qb), &f.one(), f);
                continue;
            }
            // beta(Q^a x * Q^b y) = bQ^a x * Q^b y + (-1)^{|x|} Q^a x * bQ^b y
            let bqa = self.apply_letter_atom(Letter::be(ia), &a)?;
            out.add_scaled(&self.mul(&bqa, &qb), &f.one(), f);
            let bqb = self.apply_letter_monomial(Letter::be(ib), &rest)?;
            out.add_scaled(&self.mul(&qa, &bqb), &f.sign(a.degree % 2 == 1), f);
        }
        Ok(out)
    }

    fn apply_letter_atom(&self, l: Letter, a: &Atom) -> Res<AlgebraElement> {
        let f = self.field();
        if l.index > self.shift() {
            return Ok(AlgebraElement::zero());
        }
        if f.is_two() {
            return Ok(self.q_apply(l.index + a.degree, a));
        }
        if l.index % 2 != a.degree % 2 {
            return Err(AlgebraError::InvalidLetter(l.to_string(), a.degree));
        }
        if l.beta && l.index == 0 {
            return Ok(AlgebraElement::zero());
        }
        if let Some(inner) = a.eword.first() {
            if l.index > inner.index {
                let mut w = vec![l];
                w.extend_from_slice(&a.eword);
                return Err(AlgebraError::NeedsModPAdem(render_word(&w)));
            }
        }
        Ok(self.atom_elem(self.prepend(l, a)))
    }

    /// Mod 2: Q^r applied to an atom, rewriting inadmissible composites.
    fn q_apply(&self, r: u32, a: &Atom) -> AlgebraElement {
        let f = self.field();
        if r < a.degree || r - a.degree > self.shift() {
            return AlgebraElement::zero();
        }
        let i = r - a.degree;
        match a.eword.first() {
            None => return self.atom_elem(self.prepend(Letter::e(i), a)),
            Some(l) if i <= l.index => return self.atom_elem(self.prepend(Letter::e(i), a)),
            _ => {}
        }
        // a = Q^s z with r > 2s:  Q^r Q^s = sum_t C(t-s-1, 2t-r) Q^{r+s-t} Q^t
        let z = self.strip(a);
        let s = a.eword[0].index + z.degree;
        let mut out = AlgebraElement::zero();
        for t in r.div_ceil(2)..r.saturating_sub(s) {
            let c = binomial_mod(t as i64 - s as i64 - 1, 2 * t as i64 - r as i64, f);
            if f.is_zero(&c) {
                continue;
            }
            let inner = self.q_apply(t, &z);
            for (m, _) in inner.terms() {
                let atom = &m.factors[0].0;
                out.add_scaled(&self.q_apply(r + s - t, atom), &f.one(), f);
            }
        }
        out
    }

    // ------------------------------------------------------------------
    // Rendering
    // ------------------------------------------------------------------

    fn render_word_bracket(&self, w: &[u16]) -> String {
        if w.len() == 1 {
            return self.gens.name(w[0] as usize).to_string();
        }
        let (u, v) = standard_factorization(w).expect("Lyndon word");
        format!("[{},{}]", self.render_word_bracket(u), self.render_word_bracket(v))
    }

    pub fn render_lie(&self, m: &LieMonomial) -> String {
        let r = self.render_word_bracket(&m.word);
        if m.square {
            format!("[{r},{r}]")
        } else {
            r
        }
    }

    pub fn render_atom(&self, a: &Atom) -> String {
        if a.eword.is_empty() {
            self.render_lie(&a.lie)
        } else {
            format!("{}({})", render_word(&a.eword), self.render_lie(&a.lie))
        }
    }

    pub fn render_monomial(&self, m: &PMonomial) -> String {
        if m.is_unit() {
            return "1".into();
        }
        m.factors
            .iter()
            .map(|(a, k)| if *k == 1 { self.render_atom(a) } else { format!("{}^{k}", self.render_atom(a)) })
            .collect::<Vec<_>>()
            .join("*")
    }

    pub fn render(&self, e: &AlgebraElement) -> String {
        if e.is_zero() {
            return "0".into();
        }
        let f = self.field();
        e.terms()
            .map(
                |(m, c)| {
                    if f.is_one(c) {
                        self.render_monomial(m)
                    } else {
                        format!("{c}*{}", self.render_monomial(m))
                    }
                },
            )
            .collect::<Vec<_>>()
            .join(" + ")
    }

    /// Degree of every atom copy in a monomial, in order.
    pub fn copy_degrees(&self, m: &PMonomial) -> Vec<u32> {
        m.copies().iter().map(|a| a.degree).collect()
    }

    /// Atom copies of a monomial in canonical order.
    pub fn atom_copies<'a>(&self, m: &'a PMonomial) -> Vec<&'a Atom> {
        m.copies()
    }

    /// Monomial of a sorted run of atom copies (no carries needed).
    pub fn monomial_of_copies(&self, copies: &[&Atom]) -> PMonomial {
        let mut factors: Vec<(Atom, u32)> = Vec::new();
        for a in copies {
            match factors.last_mut() {
                Some((b, k)) if b == *a => *k += 1,
                _ => factors.push(((*a).clone(), 1)),
            }
        }
        PMonomial { degree: copies.iter().map(|a| a.degree).sum(), factors }
    }

    /// Strips the outermost letter of an atom.
    pub fn inner_atom(&self, a: &Atom) -> Atom {
        self.strip(a)
    }

    /// Standard factorization of a non-generator Lie monomial into two Lie
    /// atoms (for a square [w,w], both halves are w).
    pub fn lie_factors(&self, m: &LieMonomial) -> (Atom, Atom) {
        if m.square {
            let w = self.lie_atom(LieMonomial { word: m.word.clone(), square: false });
            return (w.clone(), w);
        }
        let (u, v) = standard_factorization(&m.word).expect("non-generator Lie monomial");
        (
            self.lie_atom(LieMonomial { word: u.to_vec(), square: false }),
            self.lie_atom(LieMonomial { word: v.to_vec(), square: false }),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn alg(degs: &[u32], n: u32, p: u64) -> PnAlgebra {
        let gens = degs.iter().enumerate().map(|(i, d)| (format!("u_{}", i + 1), *d)).collect();
        PnAlgebra::new(GeneratorSet::new(gens, FieldSpec::new(p).unwrap(), n).unwrap())
    }

    #[test]
    fn lucas() {
        let z2 = FieldSpec::new(2).unwrap();
        assert_eq!(binomial_mod(3, 2, z2), z2.one());
        assert_eq!(binomial_mod(4, 2, z2), z2.zero());
        let z3 = FieldSpec::new(3).unwrap();
        assert_eq!(binomial_mod(3, 2, z3), z3.zero());
        assert_eq!(binomial_mod(5, 1, z3), z3.from_i64(2));
        assert_eq!(binomial_mod(5, 2, FieldSpec::rationals()), FieldSpec::rationals().from_i64(10));
    }

    #[test]
    fn squares_carry_mod_2() {
        let a = alg(&[1, 2], 1, 2);
        let u1 = a.generator(0);
        assert_eq!(a.render(&a.mul(&u1, &u1)), "e_0(u_1)");
        let sq = a.mul(&u1, &u1);
        assert_eq!(a.render(&a.mul(&sq, &sq)), "e_0e_0(u_1)");
        assert_eq!(a.render(&a.mul(&u1, &sq)), "u_1*e_0(u_1)");
    }

    #[test]
    fn spec_normalize_examples() {
        let a = alg(&[1, 2, 3, 4, 5], 1, 2);
        let (u1, u2, u5) = (a.generator(0), a.generator(1), a.generator(4));
        assert!(a.bracket(&a.mul(&u1, &u1), &u2).unwrap().is_zero());
        assert!(a.apply_letter(Letter::e(1), &a.mul(&u1, &u1)).unwrap().is_zero());
        // non-top letters are central; the top letter brackets as [z,[z,x]]
        let e0u1 = a.apply_letter(Letter::e(0), &u1).unwrap();
        assert!(a.bracket(&e0u1, &u5).unwrap().is_zero());
        let e1u1 = a.apply_letter(Letter::e(1), &u1).unwrap();
        let want = a.bracket(&u1, &a.bracket(&u1, &u5).unwrap()).unwrap();
        assert_eq!(a.bracket(&e1u1, &u5).unwrap(), want);
        assert!(!want.is_zero());
        assert_eq!(a.render(&a.bracket(&u2, &u1).unwrap()), "[u_1,u_2]");
    }

    #[test]
    fn adem_mod_2() {
        // Q^3 Q^1 on a degree-1 class vanishes; Q^8 Q^3 = Q^7 Q^4 on degree 1
        let a = alg(&[1], 3, 2);
        let u = a.generator(0);
        let sq = a.mul(&u, &u);
        assert!(a.apply_letter(Letter::e(1), &sq).unwrap().is_zero());
        let e1 = a.apply_letter(Letter::e(1), &u).unwrap();
        let r = a.apply_letter(Letter::e(3), &e1).unwrap();
        assert_eq!(a.render(&r), "e_1e_2(u_1)");
    }

    #[test]
    fn odd_atoms_square_to_zero() {
        let a = alg(&[1, 2], 1, 3);
        let u1 = a.generator(0);
        assert!(a.mul(&u1, &u1).is_zero());
        let u2 = a.generator(1);
        let cube = a.mul(&a.mul(&u2, &u2), &u2);
        assert_eq!(a.render(&cube), "e_0(u_2)");
    }

    #[test]
    fn inadmissible_mod_p_errors() {
        let a = alg(&[2], 3, 3);
        let v = a.generator(0);
        let e0 = a.apply_letter(Letter::e(0), &v).unwrap();
        assert!(matches!(a.apply_letter(Letter::e(2), &e0), Err(AlgebraError::NeedsModPAdem(_))));
    }
}
