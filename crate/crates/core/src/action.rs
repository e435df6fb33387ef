//! The abstract action interface.
//!
//! An instance supplies a set `X` of points and a semigroup `S` of injective maps on `X`,
//! together with a closed-form Ore completion and a canonical value deciding equality of
//! pseudoquotient classes. Everything else is derived generically in [`crate::calculus`].

use std::fmt::Debug;

use crate::error::Result;

/// A representative `x/f` of a pseudoquotient class: a point and a semigroup element.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Pseudoquotient<P, E> {
    pub numerator: P,
    pub denominator: E,
}

impl<P, E> Pseudoquotient<P, E> {
    pub fn new(numerator: P, denominator: E) -> Self {
        Self {
            numerator,
            denominator,
        }
    }
}

/// A pair `(f', g')` with `f'g = g'f` for some declared `(f, g)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct OreWitness<E> {
    pub f_prime: E,
    pub g_prime: E,
}

impl<E> OreWitness<E> {
    pub fn new(f_prime: E, g_prime: E) -> Self {
        Self { f_prime, g_prime }
    }

    /// Checks `f'g = g'f` exactly.
    pub fn validates<A>(&self, action: &A, f: &E, g: &E) -> bool
    where
        A: OreAction<Element = E> + ?Sized,
        E: Clone + PartialEq + Debug,
    {
        action.compose(&self.f_prime, g) == action.compose(&self.g_prime, f)
    }
}

/// The left fraction `den~⁻¹ ∘ num~`, an element of the group of bijections generated by
/// the extended maps.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GroupFraction<E> {
    pub den: E,
    pub num: E,
}

impl<E> GroupFraction<E> {
    pub fn new(den: E, num: E) -> Self {
        Self { den, num }
    }
}

/// A semigroup acting injectively on a set of points, with the Ore condition and right
/// cancellation available in closed form.
///
/// Implementors guarantee:
/// * `apply(f, ·)` is injective for every element `f`;
/// * `compose(f, g)` denotes `x ↦ f(g(x))` and `==` on elements is equality in the semigroup;
/// * `ore_complete(f, g)` returns `(f', g')` with `f'g = g'f`;
/// * right cancellation holds: `f₁g = f₂g` implies `f₁ = f₂`;
/// * `canonical(p) == canonical(q)` exactly when `p` and `q` are equivalent.
pub trait OreAction {
    type Point: Clone + PartialEq + Debug;
    type Element: Clone + PartialEq + Debug;
    type Canonical: PartialEq + Debug;

    /// Instance identifier as used on the command line.
    fn name(&self) -> &'static str;

    /// Element used to embed points, `x ↦ e(x)/e`. The identity where the instance has one.
    fn designated(&self) -> Self::Element;

    fn compose(&self, f: &Self::Element, g: &Self::Element) -> Self::Element;

    fn apply(&self, f: &Self::Element, x: &Self::Point) -> Self::Point;

    /// Returns `(f', g')` with `f' ∘ g = g' ∘ f`. Deterministic.
    fn ore_complete(&self, f: &Self::Element, g: &Self::Element) -> OreWitness<Self::Element>;

    fn canonical(&self, p: &Pseudoquotient<Self::Point, Self::Element>) -> Self::Canonical;

    /// Rejects elements that cannot be used with this instance (wrong dimension, ...).
    fn check_element(&self, _f: &Self::Element) -> Result<()> {
        Ok(())
    }

    /// Rejects points outside `X` for this instance.
    fn check_point(&self, _x: &Self::Point) -> Result<()> {
        Ok(())
    }

    /// `compose` with both operands checked against the instance first.
    fn try_compose(&self, f: &Self::Element, g: &Self::Element) -> Result<Self::Element> {
        self.check_element(f)?;
        self.check_element(g)?;
        Ok(self.compose(f, g))
    }

    /// `apply` with both operands checked against the instance first.
    fn try_apply(&self, f: &Self::Element, x: &Self::Point) -> Result<Self::Point> {
        self.check_element(f)?;
        self.check_point(x)?;
        Ok(self.apply(f, x))
    }

    fn check_pseudoquotient(&self, p: &Pseudoquotient<Self::Point, Self::Element>) -> Result<()> {
        self.check_point(&p.numerator)?;
        self.check_element(&p.denominator)
    }
}
