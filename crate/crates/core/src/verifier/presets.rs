//! Presentations of the built-in instances by a few generators each.

use num_bigint::BigUint;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{Generator, Presentation};
use crate::action::OreAction;
use crate::error::Result;
use crate::instances::{
    AffineLattice, AffineLatticeMap, DyadicStepMap, DyadicSteps, LatticePoint, PowerAffine,
    PowerAffineMap, StepFunction, Tower, TowerConfig, TowerMap, TowerPoint,
};
use crate::sampling::RandomSample;

/// Seed for the randomly drawn sample points of the dyadic preset.
pub const DYADIC_SAMPLE_SEED: u64 = 0x5eed_d7ad;

/// Generators named by their own expression text.
fn element_generators<A>(action: &A, elements: Vec<A::Element>) -> Vec<Generator<A::Point>>
where
    A: OreAction + Clone + Send + Sync + 'static,
    A::Element: std::fmt::Display + Send + Sync + 'static,
{
    elements
        .into_iter()
        .map(|e| {
            let a = action.clone();
            Generator::total(e.to_string(), move |x: &A::Point| a.apply(&e, x))
        })
        .collect()
}

/// `2*x`, `3*x`, `x^2` on the integers 1 to 6.
pub fn power_affine(max_depth: usize) -> Result<Presentation<BigUint>> {
    let gens = vec![
        PowerAffineMap::new(2u32, 1)?,
        PowerAffineMap::new(3u32, 1)?,
        PowerAffineMap::new(1u32, 2)?,
    ];
    let samples = (1u32..=6).map(BigUint::from).collect();
    Presentation::new(
        "power-affine",
        element_generators(&PowerAffine, gens),
        samples,
        max_depth,
    )
}

/// Dimension 1: `2x`, `x+1`, `-x`. Dimension 2: a dilation, a shear and a translation.
pub fn affine_lattice(dim: usize, max_depth: usize) -> Result<Presentation<LatticePoint>> {
    let instance = AffineLattice::new(dim)?;
    let (gens, samples) = match dim {
        1 => (
            vec![
                AffineLatticeMap::from_i64(&[&[2]], &[0])?,
                AffineLatticeMap::from_i64(&[&[1]], &[1])?,
                AffineLatticeMap::from_i64(&[&[-1]], &[0])?,
            ],
            (-3..=3).map(|v| LatticePoint::from(vec![v])).collect(),
        ),
        2 => (
            vec![
                AffineLatticeMap::from_i64(&[&[2, 0], &[0, 1]], &[0, 0])?,
                AffineLatticeMap::from_i64(&[&[1, 1], &[0, 1]], &[0, 0])?,
                AffineLatticeMap::from_i64(&[&[1, 0], &[0, 1]], &[1, 0])?,
            ],
            [[0, 0], [1, 0], [0, 1], [2, -1], [-3, 5]]
                .iter()
                .map(|v| LatticePoint::from(v.to_vec()))
                .collect(),
        ),
        _ => {
            return Err(crate::error::Error::Usage(
                "affine-lattice preset exists for dimensions 1 and 2".into(),
            ))
        }
    };
    Presentation::new(
        format!("affine-lattice-{dim}"),
        element_generators(&instance, gens),
        samples,
        max_depth,
    )
}

/// `d` (dilation) and `t` (translation) on five seeded random step functions.
pub fn dyadic(max_depth: usize) -> Result<Presentation<StepFunction>> {
    let mut rng = ChaCha8Rng::seed_from_u64(DYADIC_SAMPLE_SEED);
    let mut samples = Vec::new();
    while samples.len() < 5 {
        let x = DyadicSteps.random_point(&mut rng);
        if !x.is_zero() && !samples.contains(&x) {
            samples.push(x);
        }
    }
    let gens = vec![
        Generator::total("d", |x: &StepFunction| {
            DyadicSteps.apply(&DyadicStepMap::DELTA, x)
        }),
        Generator::total("t", |x: &StepFunction| {
            DyadicSteps.apply(&DyadicStepMap::TAU, x)
        }),
    ];
    Presentation::new("dyadic-steps", gens, samples, max_depth)
}

/// `F` and `P1..P3` on points of levels 1 to 3.
pub fn tower(config: TowerConfig, max_depth: usize) -> Result<Presentation<TowerPoint>> {
    let instance = Tower::new(config)?;
    let mut gens = Vec::new();
    let phi = instance.clone();
    gens.push(Generator::total("F", move |x: &TowerPoint| {
        phi.apply(&TowerMap::phi_power(1), x)
    }));
    for j in 1..=3 {
        let t = instance.clone();
        let psi = TowerMap::psi_power(j, 1)?;
        gens.push(Generator::total(format!("P{j}"), move |x: &TowerPoint| {
            t.apply(&psi, x)
        }));
    }
    let mut samples = Vec::new();
    for level in 1..=3 {
        for payload in [-2i64, 3, 7] {
            samples.push(TowerPoint::new(payload, level)?);
        }
    }
    Presentation::new("tower", gens, samples, max_depth)
}
