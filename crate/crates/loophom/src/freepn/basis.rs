//! Basis enumeration for L_n, R_n L_n and T_s R_n L_n up to a degree bound.

use crate::graded::GradedBasis;
use crate::par;

use super::algebra::{Atom, PMonomial, PnAlgebra};
use super::eword::eword_enumerate;
use super::lie::{is_lyndon, LieMonomial};
use super::GeneratorSet;

/// Lyndon monomials (plus admissible self-brackets) by degree, 1..=max_deg.
pub fn lie_basis(g: &GeneratorSet, max_deg: u32) -> GradedBasis<LieMonomial> {
    let alg = PnAlgebra::new(g.clone());
    let ctx = alg.lie_ctx();
    let n = g.shift();
    // a word's Lie degree is sum(deg + n) - n
    let weight = |c: usize| g.degree(c) + n;
    let budget = max_deg + n;
    let mut out = GradedBasis::new();
    let mut found: Vec<(u32, LieMonomial)> = Vec::new();
    let mut stack: Vec<(Vec<u16>, u32)> =
        (0..g.len()).filter(|c| weight(*c) <= budget).map(|c| (vec![c as u16], weight(c))).collect();
    while let Some((w, wt)) = stack.pop() {
        if is_lyndon(&w) {
            let d = wt - n;
            found.push((d, LieMonomial { word: w.clone(), square: false }));
            if ctx.square_allowed(&w) && 2 * d + n <= max_deg {
                found.push((2 * d + n, LieMonomial { word: w.clone(), square: true }));
            }
        }
        for c in 0..g.len() {
            let nw = wt + weight(c);
            if nw <= budget {
                let mut next = w.clone();
                next.push(c as u16);
                stack.push((next, nw));
            }
        }
    }
    found.sort();
    for (d, m) in found {
        out.push(d as usize, m);
    }
    out
}

/// All atoms (e-word applied to a Lie monomial) of degree <= max_deg, sorted.
pub fn atoms_up_to(alg: &PnAlgebra, max_deg: u32) -> Vec<Atom> {
    let g = alg.gens();
    let lies: Vec<LieMonomial> = lie_basis(g, max_deg).iter().flat_map(|(_, v)| v.clone()).collect();
    let mut atoms: Vec<Atom> = par::map(&lies, |m| {
        let d = alg.lie_degree(m);
        eword_enumerate(d, g, max_deg)
            .into_iter()
            .map(|(w, _)| alg.make_atom(w, m.clone()).expect("enumerated e-words are valid"))
            .collect::<Vec<_>>()
    })
    .into_iter()
    .flatten()
    .collect();
    atoms.sort();
    atoms
}

/// Basis of T_s R_n L_n by degree 0..=max_deg (degree 0 holds the unit).
pub fn pn_basis(g: &GeneratorSet, max_deg: u32) -> GradedBasis<PMonomial> {
    let alg = PnAlgebra::new(g.clone());
    pn_basis_with(&alg, max_deg)
}

pub(crate) fn pn_basis_with(alg: &PnAlgebra, max_deg: u32) -> GradedBasis<PMonomial> {
    let f = alg.field();
    let p = f.characteristic() as u32;
    let atoms = atoms_up_to(alg, max_deg);
    let max_mult = |a: &Atom| -> u32 {
        if a.degree % 2 == 1 || p == 2 {
            1
        } else if p == 0 {
            max_deg / a.degree
        } else {
            p - 1
        }
    };
    let mut found: Vec<PMonomial> = Vec::new();
    let mut current: Vec<(Atom, u32)> = Vec::new();
    fn rec(
        atoms: &[Atom],
        start: usize,
        deg: u32,
        max_deg: u32,
        max_mult: &dyn Fn(&Atom) -> u32,
        current: &mut Vec<(Atom, u32)>,
        found: &mut Vec<PMonomial>,
    ) {
        found.push(PMonomial { degree: deg, factors: current.clone() });
        for i in start..atoms.len() {
            let a = &atoms[i];
            if deg + a.degree > max_deg {
                continue;
            }
            for k in 1..=max_mult(a) {
                let nd = deg + k * a.degree;
                if nd > max_deg {
                    break;
                }
                current.push((a.clone(), k));
                rec(atoms, i + 1, nd, max_deg, max_mult, current, found);
                current.pop();
            }
        }
    }
    rec(&atoms, 0, 0, max_deg, &max_mult, &mut current, &mut found);
    found.sort();
    let mut out = GradedBasis::new();
    for d in 0..=max_deg as usize {
        out.set(d, Vec::new());
    }
    for m in found {
        out.push(m.degree as usize, m);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::FieldSpec;

    fn gens(degs: &[u32], n: u32, p: u64) -> GeneratorSet {
        let g = degs.iter().enumerate().map(|(i, d)| (format!("u_{}", i + 1), *d)).collect();
        GeneratorSet::new(g, FieldSpec::new(p).unwrap(), n).unwrap()
    }

    #[test]
    fn lie_basis_examples() {
        let b = lie_basis(&gens(&[1], 1, 2), 4);
        assert_eq!(b.dim(1), 1);
        assert_eq!((2..=4).map(|d| b.dim(d)).sum::<usize>(), 0);
        let g = gens(&[1, 2, 3, 4, 5], 1, 2);
        let alg = PnAlgebra::new(g.clone());
        let b = lie_basis(&g, 4);
        let names: Vec<String> = b.get(4).iter().map(|m| alg.render_lie(m)).collect();
        assert!(names.contains(&"[u_1,u_2]".to_string()));
        assert!(names.contains(&"u_4".to_string()));
        let g = GeneratorSet::new(vec![("v_1".into(), 2)], FieldSpec::new(3).unwrap(), 3).unwrap();
        let alg = PnAlgebra::new(g.clone());
        let names: Vec<String> = lie_basis(&g, 7).get(7).iter().map(|m| alg.render_lie(m)).collect();
        assert_eq!(names, vec!["[v_1,v_1]".to_string()]);
    }

    #[test]
    fn pn_basis_degree_three() {
        let g = gens(&[1, 2, 3], 1, 2);
        let alg = PnAlgebra::new(g.clone());
        let b = pn_basis(&g, 3);
        let mut names: Vec<String> = b.get(3).iter().map(|m| alg.render_monomial(m)).collect();
        names.sort();
        assert_eq!(names, vec!["e_1(u_1)", "u_1*e_0(u_1)", "u_1*u_2", "u_3"]);
        let g = gens(&[1, 2, 3], 2, 2);
        assert_eq!(pn_basis(&g, 3).dim(3), 4);
    }
}
