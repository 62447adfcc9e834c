//! Slow, independent counts used to cross-check the fast enumerators.
//!
//! None of this shares code with `freepn`: Lie dimensions come from the free
//! magma modulo the closure of the graded Lie relations, operation counts from
//! upper-indexed admissible sequences, and products from a generating function.

use std::collections::HashMap;

use crate::exactlin::{Echelon, FieldSpec, SparseVec};

#[derive(Clone, Copy, Debug)]
enum Node {
    Leaf,
    Pair(usize, usize),
}

struct Magma {
    nodes: Vec<Node>,
    degree: Vec<u32>,
    by_degree: Vec<Vec<usize>>,
    pos: Vec<usize>,
    pair: HashMap<(usize, usize), usize>,
}

impl Magma {
    fn build(degs: &[u32], n: u32, max_deg: u32) -> Magma {
        let mut m = Magma {
            nodes: vec![],
            degree: vec![],
            by_degree: vec![vec![]; max_deg as usize + 1],
            pos: vec![],
            pair: HashMap::new(),
        };
        for d in degs {
            if *d <= max_deg {
                m.add(Node::Leaf, *d);
            }
        }
        for d in 1..=max_deg {
            for d1 in 1..d {
                if d1 + n >= d {
                    break;
                }
                let d2 = d - d1 - n;
                let (la, lb) = (m.by_degree[d1 as usize].clone(), m.by_degree[d2 as usize].clone());
                for a in &la {
                    for b in &lb {
                        let id = m.add(Node::Pair(*a, *b), d);
                        m.pair.insert((*a, *b), id);
                    }
                }
            }
        }
        m
    }

    fn add(&mut self, node: Node, d: u32) -> usize {
        let id = self.nodes.len();
        self.nodes.push(node);
        self.degree.push(d);
        self.pos.push(self.by_degree[d as usize].len());
        self.by_degree[d as usize].push(id);
        id
    }
}

fn push(v: &mut Vec<(usize, i64)>, i: usize, c: i64) {
    v.push((i, c));
}

fn to_field(v: Vec<(usize, i64)>, f: FieldSpec) -> SparseVec {
    let mut acc: HashMap<usize, i64> = HashMap::new();
    for (i, c) in v {
        *acc.entry(i).or_insert(0) += c;
    }
    let mut out: SparseVec = acc.into_iter().map(|(i, c)| (i, f.from_i64(c))).filter(|(_, s)| !f.is_zero(s)).collect();
    out.sort_by_key(|e| e.0);
    out
}

/// Dimensions of the free graded n-Lie algebra by degree 1..=max_deg, as
/// (magma trees) minus (rank of the relation ideal).
pub fn lie_dimensions(degs: &[u32], n: u32, f: FieldSpec, max_deg: u32) -> Vec<usize> {
    let m = Magma::build(degs, n, max_deg);
    let par = |t: usize| (m.degree[t] + n) % 2 == 1;
    let sgn = |odd: bool| if odd { -1i64 } else { 1 };
    let p = f.characteristic();
    let br = |a: usize, b: usize| m.pair.get(&(a, b)).copied();
    let mut rel_basis: Vec<Vec<SparseVec>> = vec![vec![]; max_deg as usize + 1];
    let mut dims = vec![0; max_deg as usize + 1];
    for d in 1..=max_deg as usize {
        let mut ech = Echelon::new(f);
        let mut add = |v: Vec<(usize, i64)>, basis: &mut Vec<SparseVec>| {
            let v = to_field(v, f);
            if !v.is_empty() && ech.insert(&v, 0).is_ok() {
                basis.push(v);
            }
        };
        let mut basis = Vec::new();
        let trees = &m.by_degree[d];
        for &t in trees {
            let Node::Pair(a, b) = m.nodes[t] else { continue };
            // graded antisymmetry
            let mut v = vec![(m.pos[t], 1)];
            let s = -sgn(par(a) && par(b));
            push(&mut v, m.pos[br(b, a).unwrap()], -s);
            add(v, &mut basis);
            if a == b && (p == 2 || !par(a)) {
                add(vec![(m.pos[t], 1)], &mut basis);
            }
            // Jacobi on [a,[b,c]]
            if let Node::Pair(b1, c1) = m.nodes[b] {
                let (x, y, z) = (a, b1, c1);
                let mut v = Vec::new();
                for (u, w, r, s) in
                    [(x, y, z, par(x) && par(z)), (y, z, x, par(y) && par(x)), (z, x, y, par(z) && par(y))]
                {
                    if let Some(inner) = br(w, r) {
                        if let Some(outer) = br(u, inner) {
                            push(&mut v, m.pos[outer], sgn(s));
                        }
                    }
                }
                add(v, &mut basis);
                if p == 3 && x == y && y == z {
                    add(vec![(m.pos[t], 1)], &mut basis);
                }
            }
        }
        // ideal closure: bracket lower relations with trees on either side
        #[allow(clippy::needless_range_loop)]
        for d1 in 1..d {
            if d1 as u32 + n >= d as u32 {
                break;
            }
            let d2 = d - d1 - n as usize;
            for r in rel_basis[d1].clone() {
                for &t in &m.by_degree[d2] {
                    let left: Vec<(usize, i64)> =
                        r.iter().map(|(i, c)| (m.pos[br(m.by_degree[d1][*i], t).unwrap()], scalar_i64(c, f))).collect();
                    let right: Vec<(usize, i64)> =
                        r.iter().map(|(i, c)| (m.pos[br(t, m.by_degree[d1][*i]).unwrap()], scalar_i64(c, f))).collect();
                    add(left, &mut basis);
                    add(right, &mut basis);
                }
            }
        }
        dims[d] = trees.len() - basis.len();
        rel_basis[d] = basis;
    }
    dims[1..].to_vec()
}

fn scalar_i64(c: &crate::exactlin::Scalar, f: FieldSpec) -> i64 {
    match c {
        crate::exactlin::Scalar::Mod(x) => *x as i64,
        crate::exactlin::Scalar::Rat(r) => {
            assert!(f.is_rational() && r.is_integer(), "oracle relations have integer coefficients");
            r.to_integer().try_into().expect("small coefficient")
        }
    }
}

/// Counts of admissible operation sequences applied to a class of degree y,
/// by resulting degree up to max_deg (index 0 = the empty sequence at y).
///
/// Mod 2: Q^{j_1}...Q^{j_k} with y_t <= j <= y_t + n and j_out <= 2 j_in.
/// Mod p: b^e Q^s with y_t <= 2s <= y_t + n, 2s - y_t even, no b on the
/// bottom operation (2s = y_t), and s_out <= p s_in - e_in.
pub fn operation_counts(y: u32, n: u32, f: FieldSpec, max_deg: u32) -> Vec<usize> {
    let mut out = vec![0usize; max_deg as usize + 1];
    let p = f.characteristic() as u32;
    if y <= max_deg {
        out[y as usize] += 1;
    }
    if p == 0 {
        return out;
    }
    // (current degree, last upper index, last bockstein)
    let mut stack: Vec<(u32, Option<(u32, bool)>)> = vec![(y, None)];
    while let Some((d, last)) = stack.pop() {
        if p == 2 {
            for j in d..=d + n {
                let nd = j + d;
                if nd > max_deg || last.is_some_and(|(s, _)| j > 2 * s) {
                    continue;
                }
                out[nd as usize] += 1;
                stack.push((nd, Some((j, false))));
            }
        } else {
            for twice in d..=d + n {
                if twice % 2 == 1 {
                    continue;
                }
                let s = twice / 2;
                for e in [false, true] {
                    if e && twice == d {
                        continue;
                    }
                    let Some(nd) = (2 * s * (p - 1) + d).checked_sub(e as u32) else { continue };
                    if nd > max_deg || last.is_some_and(|(si, ei)| s + ei as u32 > p * si) {
                        continue;
                    }
                    out[nd as usize] += 1;
                    stack.push((nd, Some((s, e))));
                }
            }
        }
    }
    out
}

/// Truncated power series product.
fn mul_series(a: &[u128], b: &[u128]) -> Vec<u128> {
    let mut out = vec![0u128; a.len()];
    for (i, x) in a.iter().enumerate() {
        if *x == 0 {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if i + j >= out.len() {
                break;
            }
            out[i + j] += x * y;
        }
    }
    out
}

/// Dimensions of the free algebra (products of operations on Lie classes)
/// by degree 0..=max_deg, from the Lie dimensions and operation counts.
pub fn pn_dimensions(degs: &[u32], n: u32, f: FieldSpec, max_deg: u32) -> Vec<usize> {
    let lie = lie_dimensions(degs, n, f, max_deg);
    let p = f.characteristic() as usize;
    let len = max_deg as usize + 1;
    let mut atoms = vec![0usize; len];
    for (i, l) in lie.iter().enumerate() {
        let ops = operation_counts(i as u32 + 1, n, f, max_deg);
        for (d, c) in ops.iter().enumerate() {
            atoms[d] += l * c;
        }
    }
    let mut series = vec![0u128; len];
    series[0] = 1;
    for d in 1..len {
        // factor contributed by one atom of degree d
        let mut factor = vec![0u128; len];
        let max_mult = if d % 2 == 1 || p == 2 {
            1
        } else if p == 0 {
            len
        } else {
            p - 1
        };
        for k in 0..=max_mult {
            if k * d < len {
                factor[k * d] = 1;
            }
        }
        for _ in 0..atoms[d] {
            series = mul_series(&series, &factor);
        }
    }
    series.into_iter().map(|x| x as usize).collect()
}

/// Witt's necklace count: dimension of the ungraded free Lie algebra on r
/// generators in word length k.
pub fn witt(r: u64, k: u64) -> u64 {
    let mobius = |mut d: u64| -> i64 {
        let mut res = 1;
        let mut q = 2;
        while q * q <= d {
            if d.is_multiple_of(q) {
                d /= q;
                if d.is_multiple_of(q) {
                    return 0;
                }
                res = -res;
            }
            q += 1;
        }
        if d > 1 {
            -res
        } else {
            res
        }
    };
    let s: i64 = (1..=k).filter(|d| k.is_multiple_of(*d)).map(|d| mobius(d) * r.pow((k / d) as u32) as i64).sum();
    (s / k as i64) as u64
}

/// Number of cobar words by degree: w(0) = 1, w(k) = sum_g w(k - (|g| - 1)).
pub fn cobar_word_counts(degs: &[u32], max_deg: u32) -> Vec<usize> {
    let mut w = vec![0usize; max_deg as usize + 1];
    w[0] = 1;
    for k in 1..=max_deg as usize {
        w[k] = degs.iter().map(|d| (*d - 1) as usize).filter(|s| *s <= k).map(|s| w[k - s]).sum();
    }
    w
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn witt_values() {
        assert_eq!((1..=6).map(|k| witt(2, k)).collect::<Vec<_>>(), vec![2, 1, 2, 3, 6, 9]);
    }

    #[test]
    fn magma_quotient_small() {
        // two even-parity generators of degree 1 with n = 1: Witt numbers
        let q = FieldSpec::rationals();
        let dims = lie_dimensions(&[1, 1], 1, q, 7);
        assert_eq!(dims, vec![2, 0, 1, 0, 2, 0, 3]);
        // one odd-parity generator in char 0: x and [x,x]
        let dims = lie_dimensions(&[1], 0, q, 4);
        assert_eq!(dims, vec![1, 1, 0, 0]);
    }

    #[test]
    fn operation_counts_small() {
        let f = FieldSpec::new(2).unwrap();
        // degree-1 class, n = 1: Q^1 (deg 2), Q^2 (deg 3), then on those
        let c = operation_counts(1, 1, f, 6);
        assert_eq!(c, vec![0, 1, 1, 1, 1, 0, 1]);
    }
}
