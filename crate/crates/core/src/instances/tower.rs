//! A tower of levels `X₁, X₂, …` (each a copy of `ℤ`) with level bijections `φₙ: Xₙ → Xₙ₊₁`
//! and per-level injections `ψₙ: Xₙ → Xₙ` such that `φₙψₙ = ψₙ₊₁φₙ`.
//!
//! `Φ` moves every point one level up through `φ`; `Ψⱼ` applies `ψⱼ` on level `j` and fixes
//! every other level. Elements are the normal forms `Ψ₁^{k₁}⋯Ψₘ^{kₘ}Φⁿ` of the semigroup
//! presented by `ΦΨⱼ = Ψⱼ₊₁Φ` and commuting `Ψ`s.
//!
//! Note that on positive levels `Ψⱼ` with `j ≤ n` never meets the image of `Φⁿ`, so e.g.
//! `Ψ₁Φ` and `Φ` act identically. Element equality is equality of normal forms, which is the
//! semigroup in which right cancellation holds; extensional checks over sampled points at
//! positive levels can therefore report cancellation failures for this instance.
//!
//! Canonical values live on the two-sided tower: integer levels, rational payloads, where
//! every map becomes a bijection and `x/f` is simply `f⁻¹(x)`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::action::{OreAction, OreWitness, Pseudoquotient};
use crate::error::{Error, Result};
use crate::sampling::RandomSample;

/// Affine level rules `ψₙ(x) = s·x + c₀ + c₁n` and `φₙ(x) = x + t₀ + t₁n`.
///
/// The default is `ψₙ(x) = 2x − n`, `φₙ(x) = x + 1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct TowerConfig {
    pub psi_scale: i64,
    pub psi_offset: i64,
    pub psi_offset_slope: i64,
    pub phi_shift: i64,
    pub phi_shift_slope: i64,
    /// Commuting squares are re-checked on sampled points at levels `1..=levels`.
    pub levels: u32,
}

impl Default for TowerConfig {
    fn default() -> Self {
        Self {
            psi_scale: 2,
            psi_offset: 0,
            psi_offset_slope: -1,
            phi_shift: 1,
            phi_shift_slope: 0,
            levels: 6,
        }
    }
}

impl TowerConfig {
    fn psi_constant(&self, level: i64) -> BigInt {
        BigInt::from(self.psi_offset) + BigInt::from(self.psi_offset_slope) * level
    }

    fn phi_constant(&self, level: i64) -> BigInt {
        BigInt::from(self.phi_shift) + BigInt::from(self.phi_shift_slope) * level
    }

    /// `ψₙ` on `Xₙ`.
    pub fn psi(&self, level: i64, x: &BigInt) -> BigInt {
        BigInt::from(self.psi_scale) * x + self.psi_constant(level)
    }

    /// `φₙ: Xₙ → Xₙ₊₁`.
    pub fn phi(&self, level: i64, x: &BigInt) -> BigInt {
        x + self.phi_constant(level)
    }

    pub fn psi_rational(&self, level: i64, y: &BigRational) -> BigRational {
        y * BigRational::from_integer(self.psi_scale.into())
            + BigRational::from_integer(self.psi_constant(level))
    }

    pub fn psi_inverse_rational(&self, level: i64, y: &BigRational) -> BigRational {
        (y - BigRational::from_integer(self.psi_constant(level)))
            / BigRational::from_integer(self.psi_scale.into())
    }

    pub fn phi_rational(&self, level: i64, y: &BigRational) -> BigRational {
        y + BigRational::from_integer(self.phi_constant(level))
    }

    /// Inverse of `φₙ`, taking a payload on level `n + 1` back to level `n`.
    pub fn phi_inverse_rational(&self, level: i64, y: &BigRational) -> BigRational {
        y - BigRational::from_integer(self.phi_constant(level))
    }

    /// Checks `φₙ(ψₙ(x)) = ψₙ₊₁(φₙ(x))` for every listed level and payload and returns the
    /// first failing `(level, payload)`.
    pub fn check_commuting_squares(
        &self,
        levels: impl IntoIterator<Item = u32>,
        payloads: &[BigInt],
    ) -> std::result::Result<(), (u32, BigInt)> {
        for level in levels {
            let n = i64::from(level);
            for x in payloads {
                let across_then_up = self.phi(n, &self.psi(n, x));
                let up_then_across = self.psi(n + 1, &self.phi(n, x));
                if across_then_up != up_then_across {
                    return Err((level, x.clone()));
                }
            }
        }
        Ok(())
    }

    /// Rejects rules that are not injective, whose squares do not commute, or whose `ψ` has
    /// finite order (which would make distinct normal forms act identically).
    pub fn validate(&self) -> Result<()> {
        let s = i128::from(self.psi_scale);
        if s == 0 {
            return Err(Error::Config("psi_scale = 0 makes psi non-injective".into()));
        }
        if s == -1 || (s == 1 && self.psi_offset == 0 && self.psi_offset_slope == 0) {
            return Err(Error::Config(
                "psi has finite order, so normal forms would not be faithful".into(),
            ));
        }
        // φψ = ψφ at level n reads c(n+1) − c(n) = (1 − s)·t(n) for every n.
        let c1 = i128::from(self.psi_offset_slope);
        let t0 = i128::from(self.phi_shift);
        let t1 = i128::from(self.phi_shift_slope);
        if c1 != (1 - s) * t0 || (1 - s) * t1 != 0 {
            return Err(Error::Config(
                "level maps do not commute: need psi_offset_slope = (1 - psi_scale)*phi_shift \
                 and (1 - psi_scale)*phi_shift_slope = 0"
                    .into(),
            ));
        }
        let payloads: Vec<BigInt> = (-5i64..=5).map(BigInt::from).collect();
        self.check_commuting_squares(1..=self.levels.max(1), &payloads)
            .map_err(|(level, x)| {
                Error::Config(format!("commuting square fails at level {level}, payload {x}"))
            })
    }
}

/// A point `(x, n)` of `Xₙ`, `n ≥ 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TowerPoint {
    pub payload: BigInt,
    pub level: u32,
}

impl TowerPoint {
    pub fn new(payload: impl Into<BigInt>, level: u32) -> Result<Self> {
        if level == 0 {
            return Err(Error::Domain("tower levels start at 1".into()));
        }
        Ok(Self {
            payload: payload.into(),
            level,
        })
    }
}

impl fmt::Display for TowerPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.payload, self.level)
    }
}

/// A point of the two-sided rational tower.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TowerValue {
    pub level: i64,
    pub payload: BigRational,
}

impl From<&TowerPoint> for TowerValue {
    fn from(p: &TowerPoint) -> Self {
        TowerValue {
            level: i64::from(p.level),
            payload: BigRational::from_integer(p.payload.clone()),
        }
    }
}

/// `Ψ₁^{k₁}⋯Ψₘ^{kₘ}Φⁿ`: apply `Φⁿ` first, then the commuting `Ψ` powers.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct TowerMap {
    psi: BTreeMap<u32, u32>,
    phi: u32,
}

impl TowerMap {
    pub fn identity() -> Self {
        Self::default()
    }

    pub fn phi_power(n: u32) -> Self {
        Self {
            psi: BTreeMap::new(),
            phi: n,
        }
    }

    pub fn psi_power(level: u32, exponent: u32) -> Result<Self> {
        Self::from_parts([(level, exponent)], 0)
    }

    pub fn from_parts(psi: impl IntoIterator<Item = (u32, u32)>, phi: u32) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (level, exponent) in psi {
            if level == 0 {
                return Err(Error::Domain("Psi generators are indexed from 1".into()));
            }
            if exponent > 0 {
                *map.entry(level).or_insert(0) += exponent;
            }
        }
        Ok(Self { psi: map, phi })
    }

    pub fn psi_exponents(&self) -> &BTreeMap<u32, u32> {
        &self.psi
    }

    pub fn phi_exponent(&self) -> u32 {
        self.phi
    }

    /// The `Ψ` part moved past `Φᵃ`: `ΦᵃΨⱼ = Ψⱼ₊ₐΦᵃ`.
    fn shifted_psi(&self, by: u32) -> BTreeMap<u32, u32> {
        self.psi.iter().map(|(&j, &k)| (j + by, k)).collect()
    }
}

impl fmt::Display for TowerMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (level, exponent) in &self.psi {
            write!(f, "P{level}^{exponent} ")?;
        }
        write!(f, "F^{}", self.phi)
    }
}

fn merge(mut a: BTreeMap<u32, u32>, b: BTreeMap<u32, u32>) -> BTreeMap<u32, u32> {
    for (level, exponent) in b {
        *a.entry(level).or_insert(0) += exponent;
    }
    a
}

/// The tower semigroup for one validated [`TowerConfig`].
#[derive(Debug, Clone)]
#[derive(Default)]
pub struct Tower {
    config: TowerConfig,
}


impl Tower {
    pub fn new(config: TowerConfig) -> Result<Self> {
        config.validate()?;
        Ok(Self { config })
    }

    pub fn config(&self) -> &TowerConfig {
        &self.config
    }

    /// `Φ` on a single point.
    pub fn phi(&self, x: &TowerPoint) -> TowerPoint {
        TowerPoint {
            payload: self.config.phi(i64::from(x.level), &x.payload),
            level: x.level + 1,
        }
    }

    /// `Ψⱼ` on a single point.
    pub fn psi(&self, j: u32, x: &TowerPoint) -> TowerPoint {
        if x.level == j {
            TowerPoint {
                payload: self.config.psi(i64::from(j), &x.payload),
                level: j,
            }
        } else {
            x.clone()
        }
    }

    /// The action of `f` on the two-sided rational tower.
    pub fn apply_extended(&self, f: &TowerMap, v: &TowerValue) -> TowerValue {
        let mut level = v.level;
        let mut payload = v.payload.clone();
        for _ in 0..f.phi {
            payload = self.config.phi_rational(level, &payload);
            level += 1;
        }
        if let Ok(l) = u32::try_from(level) {
            if let Some(&k) = f.psi.get(&l) {
                for _ in 0..k {
                    payload = self.config.psi_rational(level, &payload);
                }
            }
        }
        TowerValue { level, payload }
    }
}

impl OreAction for Tower {
    type Point = TowerPoint;
    type Element = TowerMap;
    type Canonical = TowerValue;

    fn name(&self) -> &'static str {
        "tower"
    }

    fn designated(&self) -> TowerMap {
        TowerMap::identity()
    }

    /// `(P₁,n₁)∘(P₂,n₂) = (P₁·shift(P₂,n₁), n₁+n₂)`.
    fn compose(&self, f: &TowerMap, g: &TowerMap) -> TowerMap {
        TowerMap {
            psi: merge(f.psi.clone(), g.shifted_psi(f.phi)),
            phi: f.phi + g.phi,
        }
    }

    fn apply(&self, f: &TowerMap, x: &TowerPoint) -> TowerPoint {
        let mut y = x.clone();
        for _ in 0..f.phi {
            y = self.phi(&y);
        }
        if let Some(&k) = f.psi.get(&y.level) {
            for _ in 0..k {
                y.payload = self.config.psi(i64::from(y.level), &y.payload);
            }
        }
        y
    }

    /// `f' = (shift(P₁,n₂), n₁)`, `g' = (shift(P₂,n₁), n₂)`.
    fn ore_complete(&self, f: &TowerMap, g: &TowerMap) -> OreWitness<TowerMap> {
        OreWitness::new(
            TowerMap {
                psi: f.shifted_psi(g.phi),
                phi: f.phi,
            },
            TowerMap {
                psi: g.shifted_psi(f.phi),
                phi: g.phi,
            },
        )
    }

    /// `x/f ↦ f⁻¹(x)` on the two-sided rational tower.
    fn canonical(&self, p: &Pseudoquotient<TowerPoint, TowerMap>) -> TowerValue {
        let mut level = i64::from(p.numerator.level);
        let mut payload = BigRational::from_integer(p.numerator.payload.clone());
        if let Some(&k) = p.denominator.psi.get(&p.numerator.level) {
            for _ in 0..k {
                payload = self.config.psi_inverse_rational(level, &payload);
            }
        }
        for _ in 0..p.denominator.phi {
            level -= 1;
            payload = self.config.phi_inverse_rational(level, &payload);
        }
        TowerValue { level, payload }
    }

    fn check_point(&self, x: &TowerPoint) -> Result<()> {
        if x.level == 0 {
            Err(Error::Domain("tower levels start at 1".into()))
        } else {
            Ok(())
        }
    }
}

impl RandomSample for Tower {
    fn random_element<R: Rng + ?Sized>(&self, rng: &mut R) -> TowerMap {
        let entries = rng.gen_range(0..=2);
        let psi: Vec<(u32, u32)> = (0..entries)
            .map(|_| (rng.gen_range(1..=4), rng.gen_range(1..=2)))
            .collect();
        TowerMap::from_parts(psi, rng.gen_range(0..=2)).expect("levels start at 1")
    }

    fn random_point<R: Rng + ?Sized>(&self, rng: &mut R) -> TowerPoint {
        TowerPoint {
            payload: BigInt::from(rng.gen_range(-10i64..=10)),
            level: rng.gen_range(1..=4),
        }
    }
}

impl TowerValue {
    pub fn is_integral_point(&self) -> bool {
        self.level >= 1 && self.payload.denom().is_one()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::calculus::Calculus;

    fn psi(pairs: &[(u32, u32)], phi: u32) -> TowerMap {
        TowerMap::from_parts(pairs.iter().copied(), phi).unwrap()
    }

    #[test]
    fn default_config_is_valid() {
        TowerConfig::default().validate().unwrap();
        let payloads: Vec<BigInt> = (-20i64..=20).map(BigInt::from).collect();
        assert!(TowerConfig::default()
            .check_commuting_squares(1..=6, &payloads)
            .is_ok());
    }

    #[test]
    fn invalid_configs_rejected() {
        let bad_square = TowerConfig {
            psi_offset_slope: 0,
            ..TowerConfig::default()
        };
        assert!(matches!(bad_square.validate(), Err(Error::Config(_))));
        let payloads = vec![BigInt::from(3)];
        assert_eq!(
            bad_square.check_commuting_squares(1..=2, &payloads),
            Err((1, BigInt::from(3)))
        );
        let constant = TowerConfig {
            psi_scale: 0,
            ..TowerConfig::default()
        };
        assert!(Tower::new(constant).is_err());
        let involution = TowerConfig {
            psi_scale: -1,
            psi_offset_slope: 2,
            ..TowerConfig::default()
        };
        assert!(Tower::new(involution).is_err());
    }

    #[test]
    fn alternative_config_with_translation_psi() {
        let cfg = TowerConfig {
            psi_scale: 1,
            psi_offset: 3,
            psi_offset_slope: 0,
            phi_shift: 7,
            phi_shift_slope: 0,
            levels: 4,
        };
        let tower = Tower::new(cfg).unwrap();
        let x = TowerPoint::new(2, 1).unwrap();
        let f = psi(&[(2, 1)], 1);
        assert_eq!(tower.apply(&f, &x), TowerPoint::new(12, 2).unwrap());
    }

    #[test]
    fn phi_psi_rewriting() {
        let t = Tower::default();
        let lhs = t.compose(&TowerMap::phi_power(1), &TowerMap::psi_power(2, 1).unwrap());
        assert_eq!(lhs, psi(&[(3, 1)], 1));
    }

    #[test]
    fn ore_witness_examples() {
        let t = Tower::default();
        let f = psi(&[(1, 1)], 1);
        let g = psi(&[(2, 1)], 0);
        let w = t.ore_complete(&f, &g);
        assert_eq!(w.f_prime, psi(&[(1, 1)], 1));
        assert_eq!(w.g_prime, psi(&[(3, 1)], 0));
        let both = psi(&[(1, 1), (3, 1)], 1);
        assert_eq!(t.compose(&w.f_prime, &g), both);
        assert_eq!(t.compose(&w.g_prime, &f), both);

        let w = t.ore_complete(&f, &f);
        assert_eq!(w.f_prime, w.g_prime);

        let w = t.ore_complete(&TowerMap::phi_power(2), &TowerMap::phi_power(5));
        assert_eq!(w.f_prime, TowerMap::phi_power(2));
        assert_eq!(w.g_prime, TowerMap::phi_power(5));
        assert_eq!(t.compose(&w.f_prime, &TowerMap::phi_power(5)), TowerMap::phi_power(7));
    }

    #[test]
    fn apply_default_rules() {
        let t = Tower::default();
        let x = TowerPoint::new(5, 1).unwrap();
        // Φ: (5,1) -> (6,2); Ψ₂: 2·6 − 2 = 10.
        let f = psi(&[(2, 1)], 1);
        assert_eq!(t.apply(&f, &x), TowerPoint::new(10, 2).unwrap());
        // Ψ₁ is not reached after Φ.
        let g = psi(&[(1, 3)], 1);
        assert_eq!(t.apply(&g, &x), TowerPoint::new(6, 2).unwrap());
    }

    #[test]
    fn canonical_inverts_denominator() {
        let t = Tower::default();
        let f = psi(&[(2, 1)], 1);
        let x = TowerPoint::new(5, 1).unwrap();
        let p = Pseudoquotient::new(t.apply(&f, &x), f.clone());
        assert_eq!(t.canonical(&p), TowerValue::from(&x));

        // (5,1)/Φ sits at level 0 with payload φ₀⁻¹(5) = 4.
        let q = Pseudoquotient::new(x.clone(), TowerMap::phi_power(1));
        let v = t.canonical(&q);
        assert_eq!(v.level, 0);
        assert_eq!(v.payload, BigRational::from_integer(4.into()));
        assert!(!v.is_integral_point());
    }

    #[test]
    fn zero_level_points_rejected() {
        assert!(TowerPoint::new(1, 0).is_err());
        assert!(TowerMap::psi_power(0, 1).is_err());
    }

    #[test]
    fn embed_is_identity_denominator() {
        let t = Tower::default();
        let x = TowerPoint::new(-4, 3).unwrap();
        let p = t.embed(&x);
        assert_eq!(p.denominator, TowerMap::identity());
        assert_eq!(t.canonical(&p), TowerValue::from(&x));
    }
}
