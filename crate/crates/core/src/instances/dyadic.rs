//! The semigroup generated by `δ` (dilation by 2, halving the height) and `τ` (unit
//! translation) acting on finitely supported step functions on `[0, ∞)`.
//!
//! Every element has the unique normal form `τᵐδⁿ`; the relation `δτ = τ²δ` generalizes to
//! `δᵏτᵐ = τ^{2ᵏm}δᵏ`. Pseudoquotients become step functions on the dyadic grid `2⁻ⁿℤ`.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;

use crate::action::{OreAction, OreWitness, Pseudoquotient};
use crate::sampling::RandomSample;

/// `τᵐδⁿ`: apply `δⁿ` first, then `τᵐ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct DyadicStepMap {
    pub shift: u64,
    pub dilation: u32,
}

impl DyadicStepMap {
    pub const IDENTITY: DyadicStepMap = DyadicStepMap {
        shift: 0,
        dilation: 0,
    };
    pub const TAU: DyadicStepMap = DyadicStepMap {
        shift: 1,
        dilation: 0,
    };
    pub const DELTA: DyadicStepMap = DyadicStepMap {
        shift: 0,
        dilation: 1,
    };

    pub fn new(shift: u64, dilation: u32) -> Self {
        Self { shift, dilation }
    }
}

impl fmt::Display for DyadicStepMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "t^{} d^{}", self.shift, self.dilation)
    }
}

/// `Σ λₖ χ_{[k, k+1)}` with rational coefficients, trailing zeros trimmed.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct StepFunction {
    coefficients: Vec<BigRational>,
}

impl StepFunction {
    pub fn new(mut coefficients: Vec<BigRational>) -> Self {
        while coefficients.last().is_some_and(Zero::is_zero) {
            coefficients.pop();
        }
        Self { coefficients }
    }

    pub fn from_integers(values: &[i64]) -> Self {
        Self::new(
            values
                .iter()
                .map(|&v| BigRational::from_integer(v.into()))
                .collect(),
        )
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn coefficients(&self) -> &[BigRational] {
        &self.coefficients
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.is_empty()
    }

    /// `δ`: `λₖχ_{[k,k+1)} ↦ (λₖ/2)χ_{[2k,2k+2)}`.
    pub fn dilate(&self) -> Self {
        self.dilate_by(1)
    }

    pub fn dilate_by(&self, times: u32) -> Self {
        if times == 0 {
            return self.clone();
        }
        let copies = 1usize << times;
        let factor = BigRational::from_integer(BigInt::one() << times);
        let coefficients = self
            .coefficients
            .iter()
            .flat_map(|c| std::iter::repeat_n(c / &factor, copies))
            .collect();
        Self { coefficients }
    }

    /// `τ`: shift right by one unit.
    pub fn translate(&self) -> Self {
        self.translate_by(1)
    }

    pub fn translate_by(&self, steps: u64) -> Self {
        if self.is_zero() || steps == 0 {
            return self.clone();
        }
        let steps = usize::try_from(steps).expect("translation too large to materialize");
        let mut coefficients = vec![BigRational::zero(); steps];
        coefficients.extend(self.coefficients.iter().cloned());
        Self { coefficients }
    }

    pub fn integral(&self) -> BigRational {
        self.coefficients
            .iter()
            .fold(BigRational::zero(), |acc, c| acc + c)
    }

    pub fn l1_norm(&self) -> BigRational {
        self.coefficients
            .iter()
            .fold(BigRational::zero(), |acc, c| acc + c.abs())
    }
}

impl fmt::Display for StepFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, c) in self.coefficients.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str("]")
    }
}

/// A step function on the grid `2^{-scale}ℤ`, taking `values[j]` on
/// `[(start+j)·2^{-scale}, (start+j+1)·2^{-scale})` and zero elsewhere.
///
/// Equality compares both functions on their common refinement.
#[derive(Debug, Clone)]
pub struct DyadicStepValue {
    pub scale: u32,
    pub start: i64,
    pub values: Vec<BigRational>,
}

impl DyadicStepValue {
    /// The same function on the finer grid `2^{-target}ℤ`.
    pub fn refine(&self, target: u32) -> DyadicStepValue {
        assert!(target >= self.scale, "cannot refine to a coarser grid");
        let k = target - self.scale;
        let copies = 1usize << k;
        DyadicStepValue {
            scale: target,
            start: self.start << k,
            values: self
                .values
                .iter()
                .flat_map(|v| std::iter::repeat_n(v.clone(), copies))
                .collect(),
        }
    }

    fn trimmed(mut self) -> DyadicStepValue {
        while self.values.last().is_some_and(Zero::is_zero) {
            self.values.pop();
        }
        let leading = self.values.iter().take_while(|v| v.is_zero()).count();
        if leading == self.values.len() {
            return DyadicStepValue {
                scale: 0,
                start: 0,
                values: Vec::new(),
            };
        }
        self.values.drain(..leading);
        self.start += leading as i64;
        self
    }

    /// The coarsest grid representation with no zero padding. Unique per function.
    pub fn normalized(&self) -> DyadicStepValue {
        let mut v = self.clone().trimmed();
        while v.scale > 0 && !v.values.is_empty() {
            let mut values = v.values.clone();
            let mut start = v.start;
            if start.rem_euclid(2) == 1 {
                values.insert(0, BigRational::zero());
                start -= 1;
            }
            if values.len() % 2 == 1 {
                values.push(BigRational::zero());
            }
            if values.chunks(2).any(|pair| pair[0] != pair[1]) {
                break;
            }
            v = DyadicStepValue {
                scale: v.scale - 1,
                start: start.div_euclid(2),
                values: values.chunks(2).map(|pair| pair[0].clone()).collect(),
            }
            .trimmed();
        }
        v
    }

    pub fn integral(&self) -> BigRational {
        let width = BigRational::new(BigInt::one(), BigInt::one() << self.scale);
        self.values
            .iter()
            .fold(BigRational::zero(), |acc, v| acc + v)
            * width
    }

    pub fn l1_norm(&self) -> BigRational {
        let width = BigRational::new(BigInt::one(), BigInt::one() << self.scale);
        self.values
            .iter()
            .fold(BigRational::zero(), |acc, v| acc + v.abs())
            * width
    }

    /// Value at a dyadic rational point `t`.
    pub fn value_at(&self, t: &BigRational) -> BigRational {
        let scaled = t * BigRational::from_integer(BigInt::one() << self.scale);
        let cell = scaled.floor().to_integer() - BigInt::from(self.start);
        if cell < BigInt::zero() {
            return BigRational::zero();
        }
        usize::try_from(cell)
            .ok()
            .and_then(|i| self.values.get(i).cloned())
            .unwrap_or_else(BigRational::zero)
    }
}

impl PartialEq for DyadicStepValue {
    fn eq(&self, other: &Self) -> bool {
        let scale = self.scale.max(other.scale);
        let a = self.refine(scale).trimmed();
        let b = other.refine(scale).trimmed();
        a.start == b.start && a.values == b.values
    }
}

impl Eq for DyadicStepValue {}

/// `S = {τᵐδⁿ}` acting on [`StepFunction`]s.
#[derive(Debug, Clone, Copy, Default)]
pub struct DyadicSteps;

impl OreAction for DyadicSteps {
    type Point = StepFunction;
    type Element = DyadicStepMap;
    type Canonical = DyadicStepValue;

    fn name(&self) -> &'static str {
        "dyadic-steps"
    }

    fn designated(&self) -> DyadicStepMap {
        DyadicStepMap::IDENTITY
    }

    /// `τ^{m₁}δ^{n₁}τ^{m₂}δ^{n₂} = τ^{m₁ + 2^{n₁}m₂}δ^{n₁+n₂}`.
    fn compose(&self, f: &DyadicStepMap, g: &DyadicStepMap) -> DyadicStepMap {
        let moved = 1u64
            .checked_shl(f.dilation)
            .and_then(|p| p.checked_mul(g.shift))
            .and_then(|s| s.checked_add(f.shift))
            .expect("dyadic translation exponent overflows u64");
        DyadicStepMap {
            shift: moved,
            dilation: f.dilation + g.dilation,
        }
    }

    fn apply(&self, f: &DyadicStepMap, x: &StepFunction) -> StepFunction {
        x.dilate_by(f.dilation).translate_by(f.shift)
    }

    /// For `n₁ ≤ n₂`: `f' = τ^{2^{n₂−n₁}m₁}`, `g' = τ^{m₂}δ^{n₂−n₁}`; mirrored otherwise.
    /// Both composites equal `τ^{2^{n₂−n₁}m₁ + m₂}δ^{n₂}`.
    fn ore_complete(&self, f: &DyadicStepMap, g: &DyadicStepMap) -> OreWitness<DyadicStepMap> {
        let lift = |m: u64, d: u32| {
            1u64.checked_shl(d)
                .and_then(|p| p.checked_mul(m))
                .expect("dyadic translation exponent overflows u64")
        };
        if f.dilation <= g.dilation {
            let d = g.dilation - f.dilation;
            OreWitness::new(
                DyadicStepMap::new(lift(f.shift, d), 0),
                DyadicStepMap::new(g.shift, d),
            )
        } else {
            let d = f.dilation - g.dilation;
            OreWitness::new(
                DyadicStepMap::new(f.shift, d),
                DyadicStepMap::new(lift(g.shift, d), 0),
            )
        }
    }

    /// `x/(τᵐδⁿ)` is `ξ(t) = 2ⁿ·x(2ⁿt + m)`.
    fn canonical(&self, p: &Pseudoquotient<StepFunction, DyadicStepMap>) -> DyadicStepValue {
        let n = p.denominator.dilation;
        let factor = BigRational::from_integer(BigInt::one() << n);
        DyadicStepValue {
            scale: n,
            start: -i64::try_from(p.denominator.shift).expect("translation exceeds i64"),
            values: p
                .numerator
                .coefficients()
                .iter()
                .map(|c| c * &factor)
                .collect(),
        }
    }
}

impl DyadicSteps {
    pub fn integral(&self, p: &Pseudoquotient<StepFunction, DyadicStepMap>) -> BigRational {
        self.canonical(p).integral()
    }

    pub fn l1_norm(&self, p: &Pseudoquotient<StepFunction, DyadicStepMap>) -> BigRational {
        self.canonical(p).l1_norm()
    }
}

impl RandomSample for DyadicSteps {
    fn random_element<R: Rng + ?Sized>(&self, rng: &mut R) -> DyadicStepMap {
        DyadicStepMap::new(rng.gen_range(0..=3), rng.gen_range(0..=2))
    }

    /// Up to four coefficients `p/q` with `|p| ≤ 5`, `q ≤ 3`.
    fn random_point<R: Rng + ?Sized>(&self, rng: &mut R) -> StepFunction {
        let len = rng.gen_range(1..=4);
        StepFunction::new(
            (0..len)
                .map(|_| {
                    BigRational::new(
                        BigInt::from(rng.gen_range(-5i64..=5)),
                        BigInt::from(rng.gen_range(1i64..=3)),
                    )
                })
                .collect(),
        )
    }
}
