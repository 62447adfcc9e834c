//! Degree-indexed bases, truncated chain complexes and their homology.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::exactlin::{kernel_basis, rank, Echelon, FieldSpec, SparseMatrix, SparseVec};
use crate::par;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GradedError {
    #[error("differential d[{degree}] is {rows}x{cols} but the bases need {want_rows}x{want_cols}")]
    Shape { degree: usize, rows: usize, cols: usize, want_rows: usize, want_cols: usize },
    #[error("degree {hi} needs the differential out of degree {need}, but the window stops at {max}")]
    Truncation { hi: usize, need: usize, max: usize },
}

/// Per-degree ordered lists of basis labels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedBasis<L> {
    labels: BTreeMap<usize, Vec<L>>,
}

impl<L> Default for GradedBasis<L> {
    fn default() -> Self {
        GradedBasis { labels: BTreeMap::new() }
    }
}

impl<L> GradedBasis<L> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_map(labels: BTreeMap<usize, Vec<L>>) -> Self {
        GradedBasis { labels }
    }

    pub fn set(&mut self, degree: usize, items: Vec<L>) {
        self.labels.insert(degree, items);
    }

    pub fn push(&mut self, degree: usize, item: L) {
        self.labels.entry(degree).or_default().push(item);
    }

    pub fn get(&self, degree: usize) -> &[L] {
        self.labels.get(&degree).map(|v| v.as_slice()).unwrap_or(&[])
    }

    pub fn dim(&self, degree: usize) -> usize {
        self.get(degree).len()
    }

    pub fn degrees(&self) -> impl Iterator<Item = usize> + '_ {
        self.labels.keys().copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &Vec<L>)> {
        self.labels.iter().map(|(d, v)| (*d, v))
    }

    pub fn map<M>(&self, f: impl Fn(&L) -> M) -> GradedBasis<M> {
        GradedBasis { labels: self.labels.iter().map(|(d, v)| (*d, v.iter().map(&f).collect())).collect() }
    }
}

/// A degree-truncated chain complex with d lowering degree by one.
#[derive(Clone, Debug)]
pub struct DGWindow {
    pub basis: GradedBasis<String>,
    pub field: FieldSpec,
    pub d: BTreeMap<usize, SparseMatrix>,
    pub max_degree: usize,
}

/// One row of a homology table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyRow {
    pub degree: usize,
    pub dim: usize,
    /// Rank of the differential into this degree (dimension of the boundaries).
    pub rank: usize,
    pub generators: Vec<SparseVec>,
}

impl DGWindow {
    pub fn new(
        basis: GradedBasis<String>,
        field: FieldSpec,
        d: BTreeMap<usize, SparseMatrix>,
        max_degree: usize,
    ) -> Self {
        DGWindow { basis, field, d, max_degree }
    }

    /// d[k]; an absent entry is the zero map of the right shape.
    pub fn differential(&self, k: usize) -> SparseMatrix {
        match self.d.get(&k) {
            Some(m) => m.clone(),
            None => {
                let rows = if k == 0 { 0 } else { self.basis.dim(k - 1) };
                SparseMatrix::zero(rows, self.basis.dim(k))
            }
        }
    }

    pub fn check_shapes(&self) -> Result<(), GradedError> {
        for (k, m) in &self.d {
            let want_rows = if *k == 0 { 0 } else { self.basis.dim(k - 1) };
            let want_cols = self.basis.dim(*k);
            if m.rows() != want_rows || m.cols() != want_cols {
                return Err(GradedError::Shape { degree: *k, rows: m.rows(), cols: m.cols(), want_rows, want_cols });
            }
        }
        Ok(())
    }

    fn check_range(&self, hi: usize) -> Result<(), GradedError> {
        if hi + 1 > self.max_degree {
            return Err(GradedError::Truncation { hi, need: hi + 1, max: self.max_degree });
        }
        Ok(())
    }

    /// Boundary rank into degree k.
    fn boundary_rank(&self, k: usize) -> usize {
        rank(&self.differential(k + 1), self.field)
    }

    pub fn homology_dimensions(&self, lo: usize, hi: usize) -> Result<BTreeMap<usize, usize>, GradedError> {
        self.check_shapes()?;
        self.check_range(hi)?;
        let degrees: Vec<usize> = (lo..=hi).collect();
        let dims = par::map(&degrees, |k| {
            let out = self.differential(*k);
            let cycles = out.cols() - rank(&out, self.field);
            cycles - self.boundary_rank(*k)
        });
        Ok(degrees.into_iter().zip(dims).collect())
    }

    /// Cycles spanning a complement of the boundaries in degree k.
    ///
    /// Basis vectors that are cycles are preferred, in basis order; remaining
    /// classes come from a kernel basis. Deterministic for a fixed basis order.
    pub fn homology_representatives(&self, k: usize) -> Result<HomologyRow, GradedError> {
        self.check_shapes()?;
        self.check_range(k)?;
        let f = self.field;
        let out = self.differential(k);
        let incoming = self.differential(k + 1);
        let mut ech = Echelon::new(f);
        for col in incoming.columns() {
            let _ = ech.insert(&col, 0);
        }
        let boundary_rank = ech.rank();
        let kernel = kernel_basis(&out, f);
        let dim = kernel.len() - boundary_rank;
        let mut reps = Vec::new();
        let out_cols = out.columns();
        let unit_cycles = (0..out.cols()).filter(|c| out_cols[*c].is_empty()).map(|c| vec![(c, f.one())]);
        for cand in unit_cycles.chain(kernel) {
            if reps.len() == dim {
                break;
            }
            if ech.insert(&cand, 0).is_ok() {
                reps.push(cand);
            }
        }
        debug_assert_eq!(reps.len(), dim);
        Ok(HomologyRow { degree: k, dim, rank: boundary_rank, generators: reps })
    }

    /// Homology table for lo..=hi, computed per degree in parallel.
    pub fn homology_table(&self, lo: usize, hi: usize) -> Result<Vec<HomologyRow>, GradedError> {
        self.check_range(hi)?;
        let degrees: Vec<usize> = (lo..=hi).collect();
        par::map(&degrees, |k| self.homology_representatives(*k)).into_iter().collect()
    }

    /// Whether v (a vector in degree k) is a cycle.
    pub fn is_cycle(&self, k: usize, v: &SparseVec) -> bool {
        self.differential(k).apply(v, self.field).is_empty()
    }

    /// Whether the given degree-k cycles are independent modulo boundaries.
    pub fn independent_mod_boundaries(&self, k: usize, vs: &[SparseVec]) -> bool {
        let mut ech = Echelon::new(self.field);
        for col in self.differential(k + 1).columns() {
            let _ = ech.insert(&col, 0);
        }
        vs.iter().all(|v| ech.insert(v, 0).is_ok())
    }

    /// Checks d[k-1] * d[k] = 0 for 2 <= k <= max_degree. On failure returns the
    /// first offending (degree, column).
    pub fn verify_composition_zero(&self) -> Result<Option<(usize, usize)>, GradedError> {
        self.check_shapes()?;
        let degrees: Vec<usize> = (2..=self.max_degree).collect();
        let bad = par::map(&degrees, |k| {
            let prod = self.differential(k - 1).mul(&self.differential(*k), self.field);
            prod.entries().iter().map(|e| e.1).min().map(|c| (*k, c))
        });
        Ok(bad.into_iter().flatten().next())
    }

    /// Euler characteristic of the chain groups on lo..=hi.
    pub fn chain_euler(&self, lo: usize, hi: usize) -> i64 {
        (lo..=hi).map(|k| sign(k) * self.basis.dim(k) as i64).sum()
    }

    /// Permutes each degree's basis, conjugating the differentials.
    pub fn permuted(&self, perms: &BTreeMap<usize, Vec<usize>>) -> DGWindow {
        let ident = |k: usize| -> Vec<usize> { (0..self.basis.dim(k)).collect() };
        let perm = |k: usize| perms.get(&k).cloned().unwrap_or_else(|| ident(k));
        let mut basis = GradedBasis::new();
        for (k, labels) in self.basis.iter() {
            let p = perm(k);
            let mut new = labels.clone();
            for (i, l) in labels.iter().enumerate() {
                new[p[i]] = l.clone();
            }
            basis.set(k, new);
        }
        let d = self
            .d
            .iter()
            .map(|(k, m)| {
                let rp = if *k == 0 { Vec::new() } else { perm(k - 1) };
                (*k, m.permuted(&rp, &perm(*k)))
            })
            .collect();
        DGWindow { basis, field: self.field, d, max_degree: self.max_degree }
    }
}

fn sign(k: usize) -> i64 {
    if k.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn window(sizes: &[(usize, usize)], f: FieldSpec, max: usize) -> DGWindow {
        let mut b = GradedBasis::new();
        for (k, n) in sizes {
            b.set(*k, (0..*n).map(|i| format!("b{k}_{i}")).collect());
        }
        DGWindow::new(b, f, BTreeMap::new(), max)
    }

    #[test]
    fn zero_differential() {
        let f = FieldSpec::new(2).unwrap();
        let w = window(&[(1, 1), (2, 2), (3, 3)], f, 4);
        let h = w.homology_dimensions(1, 3).unwrap();
        assert_eq!(h, BTreeMap::from([(1, 1), (2, 2), (3, 3)]));
        assert_eq!(w.verify_composition_zero().unwrap(), None);
        let reps = w.homology_representatives(2).unwrap();
        assert_eq!(reps.generators, vec![vec![(0, f.one())], vec![(1, f.one())]]);
    }

    #[test]
    fn nonzero_composite_detected() {
        let f = FieldSpec::new(2).unwrap();
        let mut w = window(&[(1, 1), (2, 1), (3, 1)], f, 3);
        w.d.insert(2, SparseMatrix::identity(1, f));
        w.d.insert(3, SparseMatrix::identity(1, f));
        assert_eq!(w.verify_composition_zero().unwrap(), Some((3, 0)));
    }

    #[test]
    fn truncation_error() {
        let f = FieldSpec::new(2).unwrap();
        let w = window(&[(1, 1)], f, 3);
        assert!(matches!(w.homology_dimensions(1, 3), Err(GradedError::Truncation { .. })));
    }

    #[test]
    fn shape_error() {
        let f = FieldSpec::new(2).unwrap();
        let mut w = window(&[(1, 1), (2, 2)], f, 3);
        w.d.insert(2, SparseMatrix::identity(1, f));
        assert!(matches!(w.homology_dimensions(1, 2), Err(GradedError::Shape { .. })));
    }
}
