//! Exact scalars over Z/p and Q, and sparse rank / kernel computation.
//!
//! Elimination over Z/p works on `u64` residues; over Q it is fraction-free on
//! primitive integer rows. Pivots are chosen by minimal global column fill.

use std::collections::HashMap;
use std::fmt;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{Integer, One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinError {
    #[error("characteristic {0} is neither 0 nor a prime")]
    NotPrime(u64),
    #[error("entry ({0}, {1}) lies outside a {2}x{3} matrix")]
    OutOfBounds(usize, usize, usize, usize),
    #[error("duplicate entry at ({0}, {1})")]
    Duplicate(usize, usize),
    #[error("stored zero at ({0}, {1})")]
    StoredZero(usize, usize),
    #[error("scalar {0} is not valid for characteristic {1}")]
    ForeignScalar(String, u64),
}

/// Coefficient field: Z/p for a prime p, or Q when the characteristic is 0.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FieldSpec {
    characteristic: u64,
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Scalar {
    Mod(u64),
    Rat(BigRational),
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Mod(v) => write!(f, "{v}"),
            Scalar::Rat(r) => write!(f, "{r}"),
        }
    }
}

impl FieldSpec {
    pub fn new(characteristic: u64) -> Result<Self, LinError> {
        if characteristic == 0 || is_prime(characteristic) {
            Ok(FieldSpec { characteristic })
        } else {
            Err(LinError::NotPrime(characteristic))
        }
    }

    pub fn rationals() -> Self {
        FieldSpec { characteristic: 0 }
    }

    pub fn characteristic(&self) -> u64 {
        self.characteristic
    }

    pub fn is_rational(&self) -> bool {
        self.characteristic == 0
    }

    pub fn is_two(&self) -> bool {
        self.characteristic == 2
    }

    pub fn is_odd_prime(&self) -> bool {
        self.characteristic > 2
    }

    pub fn zero(&self) -> Scalar {
        if self.is_rational() {
            Scalar::Rat(BigRational::zero())
        } else {
            Scalar::Mod(0)
        }
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, v: i64) -> Scalar {
        if self.is_rational() {
            Scalar::Rat(BigRational::from_integer(BigInt::from(v)))
        } else {
            let p = self.characteristic as i128;
            Scalar::Mod((v as i128).rem_euclid(p) as u64)
        }
    }

    pub fn from_ratio(&self, num: i64, den: i64) -> Scalar {
        assert!(den != 0, "zero denominator");
        if self.is_rational() {
            Scalar::Rat(BigRational::new(BigInt::from(num), BigInt::from(den)))
        } else {
            self.mul(&self.from_i64(num), &self.inv(&self.from_i64(den)))
        }
    }

    /// Sign (-1)^e as a scalar.
    pub fn sign(&self, odd: bool) -> Scalar {
        if odd {
            self.from_i64(-1)
        } else {
            self.one()
        }
    }

    pub fn is_valid(&self, s: &Scalar) -> bool {
        match s {
            Scalar::Mod(v) => !self.is_rational() && *v < self.characteristic,
            Scalar::Rat(_) => self.is_rational(),
        }
    }

    pub fn is_zero(&self, s: &Scalar) -> bool {
        match s {
            Scalar::Mod(v) => *v == 0,
            Scalar::Rat(r) => r.is_zero(),
        }
    }

    pub fn is_one(&self, s: &Scalar) -> bool {
        match s {
            Scalar::Mod(v) => *v == 1,
            Scalar::Rat(r) => r.is_one(),
        }
    }

    pub fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (a, b) {
            (Scalar::Mod(x), Scalar::Mod(y)) => Scalar::Mod((x + y) % self.characteristic),
            (Scalar::Rat(x), Scalar::Rat(y)) => Scalar::Rat(x + y),
            _ => panic!("mixed scalar kinds"),
        }
    }

    pub fn neg(&self, a: &Scalar) -> Scalar {
        match a {
            Scalar::Mod(x) => Scalar::Mod((self.characteristic - x) % self.characteristic),
            Scalar::Rat(x) => Scalar::Rat(-x),
        }
    }

    pub fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (a, b) {
            (Scalar::Mod(x), Scalar::Mod(y)) => Scalar::Mod(x * y % self.characteristic),
            (Scalar::Rat(x), Scalar::Rat(y)) => Scalar::Rat(x * y),
            _ => panic!("mixed scalar kinds"),
        }
    }

    /// Multiplicative inverse; panics on zero.
    pub fn inv(&self, a: &Scalar) -> Scalar {
        match a {
            Scalar::Mod(x) => {
                assert!(*x != 0, "inverse of zero");
                Scalar::Mod(pow_mod(*x, self.characteristic - 2, self.characteristic))
            }
            Scalar::Rat(x) => {
                assert!(!x.is_zero(), "inverse of zero");
                Scalar::Rat(x.recip())
            }
        }
    }

    pub fn div(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.mul(a, &self.inv(b))
    }
}

pub fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

/// Sparse vector: strictly increasing indices, nonzero values.
pub type SparseVec = Vec<(usize, Scalar)>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<(usize, usize, Scalar)>,
}

impl SparseMatrix {
    pub fn new(
        rows: usize,
        cols: usize,
        mut entries: Vec<(usize, usize, Scalar)>,
        f: FieldSpec,
    ) -> Result<Self, LinError> {
        entries.sort_by_key(|a| (a.1, a.0));
        for (k, (r, c, v)) in entries.iter().enumerate() {
            if *r >= rows || *c >= cols {
                return Err(LinError::OutOfBounds(*r, *c, rows, cols));
            }
            if !f.is_valid(v) {
                return Err(LinError::ForeignScalar(v.to_string(), f.characteristic()));
            }
            if f.is_zero(v) {
                return Err(LinError::StoredZero(*r, *c));
            }
            if k > 0 && entries[k - 1].0 == *r && entries[k - 1].1 == *c {
                return Err(LinError::Duplicate(*r, *c));
            }
        }
        Ok(SparseMatrix { rows, cols, entries })
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        SparseMatrix { rows, cols, entries: Vec::new() }
    }

    /// Builds a matrix from column vectors (each a sorted sparse vector).
    pub fn from_columns(rows: usize, columns: &[SparseVec]) -> Self {
        let mut entries = Vec::new();
        for (c, col) in columns.iter().enumerate() {
            for (r, v) in col {
                assert!(*r < rows, "column entry out of range");
                entries.push((*r, c, v.clone()));
            }
        }
        SparseMatrix { rows, cols: columns.len(), entries }
    }

    pub fn identity(n: usize, f: FieldSpec) -> Self {
        let entries = (0..n).map(|i| (i, i, f.one())).collect();
        SparseMatrix { rows: n, cols: n, entries }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[(usize, usize, Scalar)] {
        &self.entries
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn columns(&self) -> Vec<SparseVec> {
        let mut cols: Vec<SparseVec> = vec![Vec::new(); self.cols];
        for (r, c, v) in &self.entries {
            cols[*c].push((*r, v.clone()));
        }
        for col in &mut cols {
            col.sort_by_key(|e| e.0);
        }
        cols
    }

    pub fn column(&self, c: usize) -> SparseVec {
        let mut col: SparseVec = self.entries.iter().filter(|e| e.1 == c).map(|e| (e.0, e.2.clone())).collect();
        col.sort_by_key(|e| e.0);
        col
    }

    pub fn transpose(&self) -> Self {
        let mut entries: Vec<_> = self.entries.iter().map(|(r, c, v)| (*c, *r, v.clone())).collect();
        entries.sort_by_key(|a| (a.1, a.0));
        SparseMatrix { rows: self.cols, cols: self.rows, entries }
    }

    /// Applies the matrix to a sparse vector.
    pub fn apply(&self, v: &SparseVec, f: FieldSpec) -> SparseVec {
        let cols = self.columns();
        let mut acc: HashMap<usize, Scalar> = HashMap::new();
        for (j, x) in v {
            for (i, a) in &cols[*j] {
                let e = acc.entry(*i).or_insert_with(|| f.zero());
                *e = f.add(e, &f.mul(a, x));
            }
        }
        let mut out: SparseVec = acc.into_iter().filter(|(_, s)| !f.is_zero(s)).collect();
        out.sort_by_key(|e| e.0);
        out
    }

    /// Matrix product self * other.
    pub fn mul(&self, other: &SparseMatrix, f: FieldSpec) -> SparseMatrix {
        assert_eq!(self.cols, other.rows, "shape mismatch in product");
        let cols: Vec<SparseVec> = other.columns().iter().map(|c| self.apply(c, f)).collect();
        SparseMatrix::from_columns(self.rows, &cols)
    }

    /// Permutes rows and columns: entry (r, c) moves to (rp[r], cp[c]).
    pub fn permuted(&self, rp: &[usize], cp: &[usize]) -> Self {
        let mut entries: Vec<_> = self.entries.iter().map(|(r, c, v)| (rp[*r], cp[*c], v.clone())).collect();
        entries.sort_by_key(|a| (a.1, a.0));
        SparseMatrix { rows: self.rows, cols: self.cols, entries }
    }
}

// ---------------------------------------------------------------------------
// Elimination engine
// ---------------------------------------------------------------------------

#[derive(Clone, Debug)]
enum Row {
    Modp(Vec<(usize, u64)>),
    Int(Vec<(usize, BigInt)>),
}

/// Incremental fully-reduced echelon basis of a subspace of F^dim.
///
/// Every stored row vanishes at the pivot columns of all other stored rows,
/// so reduction of a new vector never reintroduces an eliminated pivot.
/// Optional tags record each stored row as a combination of inserted vectors.
#[derive(Clone, Debug)]
pub struct Echelon {
    field: FieldSpec,
    fill: Option<Vec<usize>>,
    rows: Vec<Row>,
    tags: Vec<Row>,
    pivot_of: HashMap<usize, usize>,
    track: bool,
    // rational inserts are stored rescaled; tags are read back through this
    scales: HashMap<usize, BigRational>,
}

fn to_modp(v: &SparseVec) -> Vec<(usize, u64)> {
    v.iter()
        .map(|(i, s)| match s {
            Scalar::Mod(x) => (*i, *x),
            _ => panic!("rational scalar in modular elimination"),
        })
        .collect()
}

/// Clears denominators and content, returning a primitive integer row.
fn to_int(v: &SparseVec) -> Vec<(usize, BigInt)> {
    to_int_scaled(v).0
}

/// As to_int, also returning the factor s with row = s * v.
fn to_int_scaled(v: &SparseVec) -> (Vec<(usize, BigInt)>, BigRational) {
    let mut den = BigInt::one();
    for (_, s) in v {
        if let Scalar::Rat(r) = s {
            den = den.lcm(r.denom());
        } else {
            panic!("modular scalar in rational elimination");
        }
    }
    let mut row: Vec<(usize, BigInt)> = v
        .iter()
        .map(|(i, s)| match s {
            Scalar::Rat(r) => (*i, r.numer() * (&den / r.denom())),
            _ => unreachable!(),
        })
        .collect();
    let g = content(&row);
    for (_, x) in row.iter_mut() {
        *x = &*x / &g;
    }
    (row, BigRational::new(den, g))
}

fn make_primitive(row: &mut [(usize, BigInt)]) {
    let mut g = BigInt::zero();
    for (_, x) in row.iter() {
        g = g.gcd(x);
        if g.is_one() {
            return;
        }
    }
    if g.is_zero() || g.is_one() {
        return;
    }
    for (_, x) in row.iter_mut() {
        *x = &*x / &g;
    }
}

fn lookup_modp(row: &[(usize, u64)], c: usize) -> Option<u64> {
    row.binary_search_by_key(&c, |e| e.0).ok().map(|k| row[k].1)
}

fn lookup_int(row: &[(usize, BigInt)], c: usize) -> Option<&BigInt> {
    row.binary_search_by_key(&c, |e| e.0).ok().map(|k| &row[k].1)
}

/// a*x + b*y over Z/p.
fn axpy_modp(a: u64, x: &[(usize, u64)], b: u64, y: &[(usize, u64)], p: u64) -> Vec<(usize, u64)> {
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    while i < x.len() || j < y.len() {
        let (idx, v) = if j >= y.len() || (i < x.len() && x[i].0 < y[j].0) {
            i += 1;
            (x[i - 1].0, a * x[i - 1].1 % p)
        } else if i >= x.len() || y[j].0 < x[i].0 {
            j += 1;
            (y[j - 1].0, b * y[j - 1].1 % p)
        } else {
            i += 1;
            j += 1;
            (x[i - 1].0, (a * x[i - 1].1 + b * y[j - 1].1) % p)
        };
        if v != 0 {
            out.push((idx, v));
        }
    }
    out
}

fn axpy_int(a: &BigInt, x: &[(usize, BigInt)], b: &BigInt, y: &[(usize, BigInt)]) -> Vec<(usize, BigInt)> {
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    while i < x.len() || j < y.len() {
        let (idx, v) = if j >= y.len() || (i < x.len() && x[i].0 < y[j].0) {
            i += 1;
            (x[i - 1].0, a * &x[i - 1].1)
        } else if i >= x.len() || y[j].0 < x[i].0 {
            j += 1;
            (y[j - 1].0, b * &y[j - 1].1)
        } else {
            i += 1;
            j += 1;
            (x[i - 1].0, a * &x[i - 1].1 + b * &y[j - 1].1)
        };
        if !v.is_zero() {
            out.push((idx, v));
        }
    }
    out
}

impl Echelon {
    pub fn new(field: FieldSpec) -> Self {
        Echelon {
            field,
            fill: None,
            rows: Vec::new(),
            tags: Vec::new(),
            pivot_of: HashMap::new(),
            track: false,
            scales: HashMap::new(),
        }
    }

    /// Echelon that records, for each stored row, its combination of inserts.
    pub fn tracking(field: FieldSpec) -> Self {
        Echelon { track: true, ..Echelon::new(field) }
    }

    /// Supplies global column counts used to prefer sparse pivot columns.
    pub fn with_fill(mut self, fill: Vec<usize>) -> Self {
        self.fill = Some(fill);
        self
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    fn choose_pivot(&self, indices: impl Iterator<Item = usize>) -> usize {
        match &self.fill {
            Some(fill) => indices.min_by_key(|i| (fill.get(*i).copied().unwrap_or(0), *i)).unwrap(),
            None => indices.min().unwrap(),
        }
    }

    /// Reduces a row (and optionally its tag) against the stored basis.
    fn reduce_row(&self, row: &mut Row, mut tag: Option<&mut Row>) {
        match row {
            Row::Modp(v) => {
                let p = self.field.characteristic();
                loop {
                    let hit = v.iter().find_map(|(c, x)| self.pivot_of.get(c).map(|r| (*c, *x, *r)));
                    let Some((c, x, r)) = hit else { break };
                    let Row::Modp(prow) = &self.rows[r] else { unreachable!() };
                    let pv = lookup_modp(prow, c).unwrap();
                    // v <- v - (x/pv) * prow
                    let f = (p - x) * pow_mod(pv, p - 2, p) % p;
                    *v = axpy_modp(1, v, f, prow, p);
                    if let Some(Row::Modp(t)) = tag.as_deref_mut() {
                        let Row::Modp(pt) = &self.tags[r] else { unreachable!() };
                        *t = axpy_modp(1, t, f, pt, p);
                    }
                }
            }
            Row::Int(v) => loop {
                let hit = v.iter().find_map(|(c, x)| self.pivot_of.get(c).map(|r| (*c, x.clone(), *r)));
                let Some((c, x, r)) = hit else { break };
                let Row::Int(prow) = &self.rows[r] else { unreachable!() };
                let pv = lookup_int(prow, c).unwrap();
                // v <- a*v + b*prow with a*x + b*pv = 0, then divide out the content
                let g = pv.gcd(&x);
                let a = pv / &g;
                let b = -(&x / &g);
                *v = axpy_int(&a, v, &b, prow);
                match tag.as_deref_mut() {
                    Some(Row::Int(t)) => {
                        let Row::Int(pt) = &self.tags[r] else { unreachable!() };
                        *t = axpy_int(&a, t, &b, pt);
                        let g = content(v).gcd(&content(t));
                        if !g.is_one() {
                            for (_, x) in v.iter_mut().chain(t.iter_mut()) {
                                *x = &*x / &g;
                            }
                        }
                    }
                    _ => make_primitive(v),
                }
            },
        }
    }

    fn convert(&self, v: &SparseVec) -> Row {
        if self.field.is_rational() {
            Row::Int(to_int(v))
        } else {
            Row::Modp(to_modp(v))
        }
    }

    fn unit_tag(&self, id: usize) -> Row {
        if self.field.is_rational() {
            Row::Int(vec![(id, BigInt::one())])
        } else {
            Row::Modp(vec![(id, 1)])
        }
    }

    fn empty_row(&self) -> Row {
        if self.field.is_rational() {
            Row::Int(Vec::new())
        } else {
            Row::Modp(Vec::new())
        }
    }

    /// True when v lies in the stored span.
    pub fn contains(&self, v: &SparseVec) -> bool {
        let mut row = self.convert(v);
        self.reduce_row(&mut row, None);
        row_is_empty(&row)
    }

    /// Residue of v after reduction against the stored span.
    pub fn residue(&self, v: &SparseVec) -> SparseVec {
        let mut row = self.convert(v);
        self.reduce_row(&mut row, None);
        self.row_to_vec(&row)
    }

    /// Inserts v (identified by `id` for tag tracking). Returns Ok(pivot) if
    /// the span grew, or Err(dependency) where the dependency is a combination
    /// of inserted ids summing to zero (empty unless tracking).
    pub fn insert(&mut self, v: &SparseVec, id: usize) -> Result<usize, SparseVec> {
        let mut row = if self.field.is_rational() && self.track {
            let (r, s) = to_int_scaled(v);
            self.scales.insert(id, s);
            Row::Int(r)
        } else {
            self.convert(v)
        };
        let mut tag = if self.track { self.unit_tag(id) } else { self.empty_row() };
        self.reduce_row(&mut row, if self.track { Some(&mut tag) } else { None });
        if row_is_empty(&row) {
            return Err(self.tag_to_vec(&tag));
        }
        let pivot = match &row {
            Row::Modp(r) => self.choose_pivot(r.iter().map(|e| e.0)),
            Row::Int(r) => self.choose_pivot(r.iter().map(|e| e.0)),
        };
        // back-substitute the new pivot out of existing rows
        let idx = self.rows.len();
        for k in 0..self.rows.len() {
            let has = match &self.rows[k] {
                Row::Modp(r) => lookup_modp(r, pivot).is_some(),
                Row::Int(r) => lookup_int(r, pivot).is_some(),
            };
            if !has {
                continue;
            }
            let single = Echelon {
                field: self.field,
                fill: None,
                rows: vec![row.clone()],
                tags: vec![tag.clone()],
                pivot_of: HashMap::from([(pivot, 0)]),
                track: self.track,
                scales: HashMap::new(),
            };
            let mut r = self.rows[k].clone();
            if self.track {
                let mut t = self.tags[k].clone();
                single.reduce_row(&mut r, Some(&mut t));
                self.tags[k] = t;
            } else {
                single.reduce_row(&mut r, None);
            }
            self.rows[k] = r;
        }
        self.rows.push(row);
        if self.track {
            self.tags.push(tag);
        }
        self.pivot_of.insert(pivot, idx);
        Ok(pivot)
    }

    fn tag_to_vec(&self, t: &Row) -> SparseVec {
        match t {
            Row::Int(v) => v
                .iter()
                .map(|(i, x)| (*i, Scalar::Rat(BigRational::from_integer(x.clone()) * &self.scales[i])))
                .collect(),
            _ => self.row_to_vec(t),
        }
    }

    fn row_to_vec(&self, r: &Row) -> SparseVec {
        match r {
            Row::Modp(v) => v.iter().map(|(i, x)| (*i, Scalar::Mod(*x))).collect(),
            Row::Int(v) => v.iter().map(|(i, x)| (*i, Scalar::Rat(BigRational::from_integer(x.clone())))).collect(),
        }
    }
}

fn content(row: &[(usize, BigInt)]) -> BigInt {
    let mut g = BigInt::zero();
    for (_, x) in row {
        g = g.gcd(x);
    }
    if g.is_zero() {
        BigInt::one()
    } else {
        g.abs()
    }
}

fn row_is_empty(r: &Row) -> bool {
    match r {
        Row::Modp(v) => v.is_empty(),
        Row::Int(v) => v.is_empty(),
    }
}

fn column_fill(m: &SparseMatrix) -> Vec<usize> {
    // rows of the matrix are the coordinates of the column vectors we insert
    let mut fill = vec![0usize; m.rows()];
    for (r, _, _) in m.entries() {
        fill[*r] += 1;
    }
    fill
}

/// Exact rank of `m` over `f`. The input is not modified.
pub fn rank(m: &SparseMatrix, f: FieldSpec) -> usize {
    let mut ech = Echelon::new(f).with_fill(column_fill(m));
    let mut cols = m.columns();
    // short columns first keeps fill-in low
    let mut order: Vec<usize> = (0..cols.len()).collect();
    order.sort_by_key(|c| (cols[*c].len(), *c));
    for c in order {
        let v = std::mem::take(&mut cols[c]);
        let _ = ech.insert(&v, c);
    }
    ech.rank()
}

/// Basis of the kernel of `m` (vectors in F^cols).
pub fn kernel_basis(m: &SparseMatrix, f: FieldSpec) -> Vec<SparseVec> {
    let mut ech = Echelon::tracking(f).with_fill(column_fill(m));
    let mut out = Vec::new();
    for (c, col) in m.columns().into_iter().enumerate() {
        if let Err(dep) = ech.insert(&col, c) {
            out.push(normalize_vec(dep, f));
        }
    }
    #[cfg(debug_assertions)]
    {
        assert_eq!(out.len() + ech.rank(), m.cols(), "rank-nullity violated");
        for v in &out {
            assert!(m.apply(v, f).is_empty(), "kernel vector is not in the kernel");
        }
    }
    out
}

/// Scales a vector so its last entry is 1 (over Q: smallest integer multiple
/// with positive last entry is not needed; we keep exact rationals).
pub fn normalize_vec(v: SparseVec, f: FieldSpec) -> SparseVec {
    let Some((_, last)) = v.last() else { return v };
    let s = f.inv(last);
    v.into_iter().map(|(i, x)| (i, f.mul(&x, &s))).collect()
}

/// cols(m) - rank(m).
pub fn kernel_dimension(m: &SparseMatrix, f: FieldSpec) -> usize {
    let r = rank(m, f);
    let k = m.cols() - r;
    #[cfg(debug_assertions)]
    {
        assert_eq!(kernel_basis(m, f).len(), k, "rank-nullity violated");
    }
    k
}

/// Reduces a rational scalar to the given prime field (numerator times
/// inverse denominator). Panics if the denominator is divisible by p.
pub fn specialize(s: &Scalar, f: FieldSpec) -> Scalar {
    match s {
        Scalar::Rat(r) => {
            let p = BigInt::from(f.characteristic());
            let n = r.numer().mod_floor(&p).to_i64().unwrap();
            let d = r.denom().mod_floor(&p).to_i64().unwrap();
            f.div(&f.from_i64(n), &f.from_i64(d))
        }
        Scalar::Mod(_) => s.clone(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z2() -> FieldSpec {
        FieldSpec::new(2).unwrap()
    }

    fn mat(rows: usize, cols: usize, dense: &[i64], f: FieldSpec) -> SparseMatrix {
        let mut e = Vec::new();
        for r in 0..rows {
            for c in 0..cols {
                let s = f.from_i64(dense[r * cols + c]);
                if !f.is_zero(&s) {
                    e.push((r, c, s));
                }
            }
        }
        SparseMatrix::new(rows, cols, e, f).unwrap()
    }

    #[test]
    fn field_construction() {
        assert!(FieldSpec::new(4).is_err());
        assert!(FieldSpec::new(1).is_err());
        assert!(FieldSpec::new(0).unwrap().is_rational());
        assert_eq!(FieldSpec::new(7).unwrap().characteristic(), 7);
    }

    #[test]
    fn spec_examples() {
        let f = z2();
        assert_eq!(rank(&SparseMatrix::zero(0, 0), f), 0);
        assert_eq!(rank(&SparseMatrix::identity(2, f), f), 2);
        let ones = mat(2, 2, &[1, 1, 1, 1], f);
        assert_eq!(rank(&ones, f), 1);
        assert_eq!(kernel_dimension(&SparseMatrix::zero(0, 3), f), 3);
        assert_eq!(kernel_dimension(&ones, f), 1);
        assert_eq!(kernel_dimension(&mat(1, 1, &[2], f), f), 1);
        let q = FieldSpec::rationals();
        assert_eq!(kernel_dimension(&mat(1, 1, &[2], q), q), 0);
    }

    #[test]
    fn invalid_entries_rejected() {
        let f = z2();
        assert!(SparseMatrix::new(1, 1, vec![(0, 0, Scalar::Mod(0))], f).is_err());
        assert!(SparseMatrix::new(1, 1, vec![(0, 0, f.one()), (0, 0, f.one())], f).is_err());
        assert!(SparseMatrix::new(1, 1, vec![(1, 0, f.one())], f).is_err());
    }

    #[test]
    fn rational_rank_with_fractions() {
        let q = FieldSpec::rationals();
        let e = vec![
            (0, 0, q.from_ratio(1, 2)),
            (0, 1, q.from_ratio(1, 3)),
            (1, 0, q.from_ratio(3, 1)),
            (1, 1, q.from_ratio(2, 1)),
            (2, 2, q.from_ratio(-5, 7)),
        ];
        let m = SparseMatrix::new(3, 3, e, q).unwrap();
        // second row is 6x the first
        assert_eq!(rank(&m, q), 2);
        let k = kernel_basis(&m, q);
        assert_eq!(k.len(), 1);
    }

    #[test]
    fn kernel_vectors_over_z3() {
        let f = FieldSpec::new(3).unwrap();
        let m = mat(2, 4, &[1, 2, 0, 1, 0, 1, 1, 1], f);
        let k = kernel_basis(&m, f);
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(m.apply(v, f).is_empty());
        }
    }
}
