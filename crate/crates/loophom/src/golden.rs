//! Reference tables shipped with the crate and their checker.

use serde::{Deserialize, Serialize};

use crate::dgal::{self, DgalError, LabelCheck};
use crate::exactlin::FieldSpec;
use crate::spaces::{self, Family, SpacePresentation};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GoldenDegree {
    pub degree: usize,
    pub dim: usize,
    pub generators: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GoldenTable {
    #[serde(default)]
    pub note: String,
    pub space: String,
    pub trunc: u32,
    pub loops: u32,
    pub characteristic: u64,
    pub degrees: Vec<GoldenDegree>,
}

impl GoldenTable {
    pub fn family(&self) -> Family {
        if self.space.starts_with("CP") {
            Family::Cp
        } else {
            Family::Rp
        }
    }

    pub fn hi(&self) -> u32 {
        self.degrees.iter().map(|d| d.degree).max().unwrap_or(0) as u32
    }

    pub fn dims(&self) -> Vec<usize> {
        self.degrees.iter().map(|d| d.dim).collect()
    }

    pub fn presentation(&self) -> Result<SpacePresentation, DgalError> {
        let f = FieldSpec::new(self.characteristic).map_err(|e| DgalError::Unsupported(e.to_string()))?;
        let top = self.hi() + self.loops + 2;
        Ok(match self.family() {
            Family::Cp => spaces::cp_quotient(self.trunc, f, top)?,
            _ => spaces::rp_quotient(self.trunc, f, top)?,
        })
    }
}

const CORPUS: [(&str, &str); 5] = [
    ("rp2_m2_p2", include_str!("../golden/rp2_m2_p2.json")),
    ("rp3_m3_p2", include_str!("../golden/rp3_m3_p2.json")),
    ("rp4_m4_p2", include_str!("../golden/rp4_m4_p2.json")),
    ("cp2_m4_p2", include_str!("../golden/cp2_m4_p2.json")),
    ("cp2_m4_p3", include_str!("../golden/cp2_m4_p3.json")),
];

/// All shipped tables, by name.
pub fn corpus() -> Vec<(&'static str, GoldenTable)> {
    CORPUS.iter().map(|(n, s)| (*n, serde_json::from_str(s).expect("shipped golden tables parse"))).collect()
}

pub fn table(name: &str) -> Option<GoldenTable> {
    corpus().into_iter().find(|(n, _)| *n == name).map(|(_, t)| t)
}

/// Outcome of checking one table against the computation.
#[derive(Clone, Debug)]
pub struct GoldenReport {
    pub name: String,
    pub expected: Vec<usize>,
    pub computed: Vec<usize>,
    pub labels: Vec<LabelCheck>,
}

impl GoldenReport {
    pub fn dims_match(&self) -> bool {
        self.expected == self.computed
    }

    pub fn labels_ok(&self) -> bool {
        self.labels.iter().all(|l| l.cycle && l.independent)
    }

    pub fn passed(&self) -> bool {
        self.dims_match() && self.labels_ok()
    }

    /// Degrees where the dimensions differ, as (degree, expected, computed).
    pub fn mismatches(&self) -> Vec<(usize, usize, usize)> {
        (0..self.expected.len())
            .filter(|i| self.expected[*i] != self.computed[*i])
            .map(|i| (i + 1, self.expected[i], self.computed[i]))
            .collect()
    }
}

pub fn check(name: &str, t: &GoldenTable) -> Result<GoldenReport, DgalError> {
    let sp = t.presentation()?;
    let hi = t.hi();
    let (page, asm) = dgal::assemble_for(&sp, t.loops, hi)?;
    let dims = asm.window.homology_dimensions(1, hi as usize)?;
    let labels: Vec<&str> = t.degrees.iter().flat_map(|d| d.generators.iter().map(String::as_str)).collect();
    Ok(GoldenReport {
        name: name.to_string(),
        expected: t.dims(),
        computed: dims.values().copied().collect(),
        labels: dgal::check_labels(&page, &asm, &labels)?,
    })
}
