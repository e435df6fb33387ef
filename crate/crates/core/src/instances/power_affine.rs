//! Maps `x ↦ m·xⁿ` acting on the positive integers.
//!
//! Pseudoquotient classes are identified with positive real roots `ⁿ√(k/m)`.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;

use num_rational::BigRational;
use num_traits::{One, Pow, Signed, Zero};
use rand::Rng;

use crate::action::{OreAction, OreWitness, Pseudoquotient};
use crate::error::{Error, Result};
use crate::sampling::RandomSample;

/// `x ↦ m·xⁿ` with `m ≥ 1`, `n ≥ 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PowerAffineMap {
    multiplier: BigUint,
    exponent: u32,
}

impl PowerAffineMap {
    pub fn new(multiplier: impl Into<BigUint>, exponent: u32) -> Result<Self> {
        let multiplier = multiplier.into();
        if multiplier.is_zero() {
            return Err(Error::Domain("multiplier must be at least 1".into()));
        }
        if exponent == 0 {
            return Err(Error::Domain("exponent must be at least 1".into()));
        }
        Ok(Self {
            multiplier,
            exponent,
        })
    }

    pub fn identity() -> Self {
        Self {
            multiplier: BigUint::one(),
            exponent: 1,
        }
    }

    pub fn multiplier(&self) -> &BigUint {
        &self.multiplier
    }

    pub fn exponent(&self) -> u32 {
        self.exponent
    }

    pub fn eval(&self, x: &BigUint) -> BigUint {
        &self.multiplier * x.pow(self.exponent)
    }
}

impl fmt::Display for PowerAffineMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}*x^{}", self.multiplier, self.exponent)
    }
}

/// `ⁿ√q` for a positive rational `q`.
///
/// Equality is the cross-power rule `q₁^{n₂} = q₂^{n₁}`.
#[derive(Debug, Clone)]
pub struct RootValue {
    radicand: BigRational,
    index: u32,
}

impl RootValue {
    pub fn new(radicand: BigRational, index: u32) -> Result<Self> {
        if !radicand.is_positive() {
            return Err(Error::Domain("radicand must be positive".into()));
        }
        if index == 0 {
            return Err(Error::Domain("root index must be at least 1".into()));
        }
        Ok(Self { radicand, index })
    }

    pub fn radicand(&self) -> &BigRational {
        &self.radicand
    }

    pub fn index(&self) -> u32 {
        self.index
    }

    /// The same number with the smallest possible index.
    pub fn reduced(&self) -> RootValue {
        let mut radicand = self.radicand.clone();
        let mut index = self.index;
        for p in prime_factors(self.index) {
            while index.is_multiple_of(p) {
                match exact_root(&radicand, p) {
                    Some(r) => {
                        radicand = r;
                        index /= p;
                    }
                    None => break,
                }
            }
        }
        RootValue { radicand, index }
    }
}

impl PartialEq for RootValue {
    fn eq(&self, other: &Self) -> bool {
        // Both sides are positive reals, so the common g-th root can be taken first.
        let g = self.index.gcd(&other.index);
        let lhs = Pow::pow(&self.radicand, other.index / g);
        let rhs = Pow::pow(&other.radicand, self.index / g);
        lhs == rhs
    }
}

impl Eq for RootValue {}

impl fmt::Display for RootValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.index == 1 {
            write!(f, "{}", self.radicand)
        } else {
            write!(f, "root{}({})", self.index, self.radicand)
        }
    }
}

fn prime_factors(mut n: u32) -> Vec<u32> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn exact_root(q: &BigRational, p: u32) -> Option<BigRational> {
    let root_of = |v: &BigInt| -> Option<BigInt> {
        let r = v.nth_root(p);
        (Pow::pow(&r, p) == *v).then_some(r)
    };
    let num = root_of(q.numer())?;
    let den = root_of(q.denom())?;
    Some(BigRational::new(num, den))
}

/// The semigroup of maps `x ↦ m·xⁿ` on `{1, 2, 3, …}`.
#[derive(Debug, Clone, Copy, Default)]
pub struct PowerAffine;

impl OreAction for PowerAffine {
    type Point = BigUint;
    type Element = PowerAffineMap;
    type Canonical = RootValue;

    fn name(&self) -> &'static str {
        "power-affine"
    }

    fn designated(&self) -> PowerAffineMap {
        PowerAffineMap::identity()
    }

    /// `(m₁,n₁)∘(m₂,n₂) = (m₁·m₂^{n₁}, n₁·n₂)`.
    fn compose(&self, f: &PowerAffineMap, g: &PowerAffineMap) -> PowerAffineMap {
        PowerAffineMap {
            multiplier: &f.multiplier * Pow::pow(&g.multiplier, f.exponent),
            exponent: f
                .exponent
                .checked_mul(g.exponent)
                .expect("power-affine exponent overflows u32"),
        }
    }

    fn apply(&self, f: &PowerAffineMap, x: &BigUint) -> BigUint {
        f.eval(x)
    }

    /// For `f = (a,p)`, `g = (b,q)`: `f' = (a^q, p)`, `g' = (b^p, q)`, both composites
    /// equal to `(a^q·b^p, p·q)`.
    fn ore_complete(&self, f: &PowerAffineMap, g: &PowerAffineMap) -> OreWitness<PowerAffineMap> {
        OreWitness::new(
            PowerAffineMap {
                multiplier: Pow::pow(&f.multiplier, g.exponent),
                exponent: f.exponent,
            },
            PowerAffineMap {
                multiplier: Pow::pow(&g.multiplier, f.exponent),
                exponent: g.exponent,
            },
        )
    }

    /// `x/(m,n) ↦ ⁿ√(x/m)`, the positive solution of `m·ξⁿ = x`.
    fn canonical(&self, p: &Pseudoquotient<BigUint, PowerAffineMap>) -> RootValue {
        let radicand = BigRational::new(
            BigInt::from(p.numerator.clone()),
            BigInt::from(p.denominator.multiplier.clone()),
        );
        RootValue {
            radicand,
            index: p.denominator.exponent,
        }
    }

    fn check_point(&self, x: &BigUint) -> Result<()> {
        if x.is_zero() {
            Err(Error::Domain("power-affine points are positive integers".into()))
        } else {
            Ok(())
        }
    }
}

impl RandomSample for PowerAffine {
    fn random_element<R: Rng + ?Sized>(&self, rng: &mut R) -> PowerAffineMap {
        PowerAffineMap {
            multiplier: BigUint::from(rng.gen_range(1u32..=4)),
            exponent: rng.gen_range(1..=2),
        }
    }

    fn random_point<R: Rng + ?Sized>(&self, rng: &mut R) -> BigUint {
        BigUint::from(rng.gen_range(1u32..=20))
    }
}
