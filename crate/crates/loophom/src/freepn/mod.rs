//! The free Poisson algebra with Dyer-Lashof operations, T_s R_n L_n M.
//!
//! Basis elements are products of atoms; an atom is an e-word applied to a
//! Lyndon-basis Lie monomial. `PnAlgebra` multiplies, brackets and applies
//! operations, always returning canonical combinations of basis monomials.

mod algebra;
mod basis;
mod eword;
mod expr;
mod lie;

pub use algebra::{binomial_mod, AlgebraElement, Atom, PMonomial, PnAlgebra};
pub use basis::{atoms_up_to, lie_basis, pn_basis};
pub use eword::{eword_enumerate, eword_to_dl, letter_degree, DlWord, EWord, Letter};
pub use expr::{normalize, parse_expr, Expr};
pub use lie::{is_lyndon, standard_factorization, LieMonomial};

use thiserror::Error;

use crate::exactlin::FieldSpec;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("needs mod-p Adem relation: {0}")]
    NeedsModPAdem(String),
    #[error("letter {0} cannot act on an element of degree {1}")]
    InvalidLetter(String, u32),
    #[error("no Dyer-Lashof operations in characteristic 0")]
    NoOperations,
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("not a Lie element: leading word {0}")]
    NotLie(String),
    #[error("unknown generator {0}")]
    UnknownGenerator(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("expression is not degree-homogeneous")]
    Inhomogeneous,
    #[error("invalid generator set: {0}")]
    InvalidGenerators(String),
    #[error("invalid e-word: {0}")]
    InvalidEWord(String),
}

/// Named generators with positive degrees, a field and the bracket shift n.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorSet {
    names: Vec<String>,
    degrees: Vec<u32>,
    field: FieldSpec,
    shift: u32,
}

impl GeneratorSet {
    pub fn new(gens: Vec<(String, u32)>, field: FieldSpec, shift: u32) -> Result<Self, AlgebraError> {
        let mut seen = std::collections::HashSet::new();
        for (name, deg) in &gens {
            if *deg == 0 {
                return Err(AlgebraError::InvalidGenerators(format!("{name} has degree 0")));
            }
            if !seen.insert(name.clone()) {
                return Err(AlgebraError::InvalidGenerators(format!("duplicate name {name}")));
            }
        }
        if gens.len() > u16::MAX as usize {
            return Err(AlgebraError::InvalidGenerators("too many generators".into()));
        }
        let (names, degrees) = gens.into_iter().unzip();
        Ok(GeneratorSet { names, degrees, field, shift })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn degree(&self, i: usize) -> u32 {
        self.degrees[i]
    }

    pub fn degrees(&self) -> &[u32] {
        &self.degrees
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn shift(&self) -> u32 {
        self.shift
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }
}
