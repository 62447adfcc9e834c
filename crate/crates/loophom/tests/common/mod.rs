//! Shared generators for the integration tests.
#![allow(dead_code)]

use loophom::dgal::{self, DgalError, E1Page};
use loophom::freepn::{AlgebraError, GeneratorSet, PnAlgebra};
use loophom::spaces::{Family, SpaceGenerator, SpacePresentation};
use loophom::FieldSpec;
use rand::Rng;

pub struct SphereProduct {
    pub dims: Vec<u32>,
    pub space: SpacePresentation,
    pub loops: u32,
    pub hi: u32,
}

impl SphereProduct {
    pub fn describe(&self) -> String {
        format!(
            "{} over char {} with m={} to degree {}",
            self.space.name,
            self.space.field.characteristic(),
            self.loops,
            self.hi
        )
    }
}

/// Homology coalgebra of S^{d_1} x ... x S^{d_k}: one class per nonempty
/// subset, with the Koszul-signed reduced coproduct.
pub fn sphere_product(dims: &[u32], f: FieldSpec) -> SpacePresentation {
    let k = dims.len();
    let subsets: Vec<u32> = (1..(1u32 << k)).collect();
    let deg = |s: u32| (0..k).filter(|i| s & (1 << i) != 0).map(|i| dims[i]).sum::<u32>();
    let label = |s: u32| {
        let digits: String = (0..k).filter(|i| s & (1 << i) != 0).map(|i| char::from(b'1' + i as u8)).collect();
        format!("x_{digits}")
    };
    let pos = |s: u32| subsets.iter().position(|t| *t == s).unwrap();
    let generators = subsets
        .iter()
        .enumerate()
        .map(|(i, s)| SpaceGenerator { label: label(*s), degree: deg(*s), index: i as u32 })
        .collect();
    let coproduct = subsets
        .iter()
        .map(|s| {
            let mut terms = Vec::new();
            let mut a = (s - 1) & s;
            while a != 0 {
                let b = s & !a;
                // moving each a-factor left past the smaller b-factors
                let mut odd = false;
                for i in (0..k).filter(|i| a & (1 << i) != 0) {
                    for j in (0..i).filter(|j| b & (1 << j) != 0) {
                        odd ^= dims[i] * dims[j] % 2 == 1;
                    }
                }
                terms.push((pos(a), pos(b), f.sign(odd)));
                a = (a - 1) & s;
            }
            terms.sort_by_key(|t| (t.0, t.1));
            terms
        })
        .collect();
    SpacePresentation {
        family: Family::File,
        name: dims.iter().map(|d| format!("S^{d}")).collect::<Vec<_>>().join("x"),
        field: f,
        generators,
        coproduct,
        steenrod: Vec::new(),
        connectivity: dims.iter().min().unwrap() - 1,
        trunc: 0,
        max_degree: dims.iter().sum(),
    }
}

pub fn random_field(rng: &mut impl Rng) -> FieldSpec {
    FieldSpec::new([2u64, 3, 0][rng.gen_range(0..3)]).unwrap()
}

pub fn random_sphere_product(rng: &mut impl Rng) -> SphereProduct {
    let k = rng.gen_range(2..=3);
    let dims: Vec<u32> = (0..k).map(|_| rng.gen_range(2..=5)).collect();
    let f = random_field(rng);
    let m = rng.gen_range(1..*dims.iter().min().unwrap());
    let space = sphere_product(&dims, f);
    SphereProduct { dims, space, loops: m, hi: rng.gen_range(5..=8) }
}

pub enum Skip {
    Unsupported,
    Failed(DgalError),
}

/// Builds and assembles the generic differential (d^2 = 0 is checked inside).
pub fn assemble_generic(c: &SphereProduct) -> Result<(), Skip> {
    let classify = |e: DgalError| match e {
        DgalError::Algebra(AlgebraError::Unsupported(_)) | DgalError::Algebra(AlgebraError::NeedsModPAdem(..)) => {
            Skip::Unsupported
        }
        other => Skip::Failed(other),
    };
    let page = E1Page::new(&c.space, c.loops, c.hi + 1).map_err(classify)?;
    let gd = dgal::dphi_generic(&page).map_err(classify)?;
    dgal::extend_and_assemble(&page, &gd, c.hi + 1).map_err(classify)?;
    Ok(())
}

/// A random algebra on one or two generators and a homogeneous expression
/// over it in the input syntax.
pub fn random_expression(rng: &mut impl Rng) -> (PnAlgebra, String) {
    let f = random_field(rng);
    let n = rng.gen_range(0..=3);
    let k = rng.gen_range(1..=2);
    let gens: Vec<(String, u32)> = (0..k).map(|i| (format!("u_{}", i + 1), rng.gen_range(1..=3))).collect();
    let alg = PnAlgebra::new(GeneratorSet::new(gens.clone(), f, n).unwrap());
    fn expr(rng: &mut impl Rng, gens: &[(String, u32)], n: u32, depth: u32) -> String {
        if depth == 0 || rng.gen_bool(0.3) {
            return gens[rng.gen_range(0..gens.len())].0.clone();
        }
        match rng.gen_range(0..4) {
            0 => format!("{}*{}", expr(rng, gens, n, depth - 1), expr(rng, gens, n, depth - 1)),
            1 => format!("[{},{}]", expr(rng, gens, n, depth - 1), expr(rng, gens, n, depth - 1)),
            2 => format!("e_{}({})", rng.gen_range(0..=n), expr(rng, gens, n, depth - 1)),
            _ => format!("({})^{}", expr(rng, gens, n, depth - 1), rng.gen_range(2..=3)),
        }
    }
    let text = expr(rng, &gens, n, 3);
    (alg, text)
}
