//! Pseudoquotient and group-of-fractions operations, generic over any [`OreAction`].
//!
//! Equivalence is decided with the single witness returned by `ore_complete`. This is
//! exact because right cancellation makes the test `f'y = g'x` independent of the witness.

use crate::action::{GroupFraction, OreAction, OreWitness, Pseudoquotient};

pub type Pq<A> = Pseudoquotient<<A as OreAction>::Point, <A as OreAction>::Element>;
pub type Frac<A> = GroupFraction<<A as OreAction>::Element>;

/// Operations on pseudoquotients `x/f` and left fractions `f~⁻¹ g~`.
///
/// Blanket-implemented for every [`OreAction`]; all methods are pure.
pub trait Calculus: OreAction {
    /// Decides `(x, f) ∼ (y, g)`.
    ///
    /// Returns the witness `(f', g')` with `f'g = g'f` that was used, and whether
    /// `f'y = g'x` holds for it.
    fn pq_equivalent_with_witness(
        &self,
        p: &Pq<Self>,
        q: &Pq<Self>,
    ) -> (bool, OreWitness<Self::Element>) {
        let witness = self.ore_complete(&p.denominator, &q.denominator);
        if p == q {
            return (true, witness);
        }
        let lhs = self.apply(&witness.f_prime, &q.numerator);
        let rhs = self.apply(&witness.g_prime, &p.numerator);
        (lhs == rhs, witness)
    }

    fn pq_equivalent(&self, p: &Pq<Self>, q: &Pq<Self>) -> bool {
        if p == q {
            return true;
        }
        self.pq_equivalent_with_witness(p, q).0
    }

    /// `x/f ↦ gx/gf`, which stays in the same class.
    fn pq_left_multiply(&self, p: &Pq<Self>, g: &Self::Element) -> Pq<Self> {
        Pseudoquotient::new(
            self.apply(g, &p.numerator),
            self.compose(g, &p.denominator),
        )
    }

    /// `x ↦ ex/e` for the designated element `e`.
    fn embed(&self, x: &Self::Point) -> Pq<Self> {
        let e = self.designated();
        Pseudoquotient::new(self.apply(&e, x), e)
    }

    /// `g~(x/f) = g'x/f'` where `f'g = g'f`.
    fn extend_apply(&self, g: &Self::Element, p: &Pq<Self>) -> Pq<Self> {
        // ore_complete(g, f) = (a, b) with a∘f = b∘g, so f' = b and g' = a.
        let w = self.ore_complete(g, &p.denominator);
        Pseudoquotient::new(self.apply(&w.f_prime, &p.numerator), w.g_prime)
    }

    /// Same as [`Calculus::extend_apply`] but with a caller-supplied witness `(f', g')`
    /// satisfying `f'g = g'f` for `f = p.denominator`.
    fn extend_apply_with(
        &self,
        p: &Pq<Self>,
        witness: &OreWitness<Self::Element>,
    ) -> Pq<Self> {
        Pseudoquotient::new(
            self.apply(&witness.g_prime, &p.numerator),
            witness.f_prime.clone(),
        )
    }

    /// `g~⁻¹(x/f) = x/fg`.
    fn extend_inverse_apply(&self, g: &Self::Element, p: &Pq<Self>) -> Pq<Self> {
        Pseudoquotient::new(p.numerator.clone(), self.compose(&p.denominator, g))
    }

    /// The unique `ξ` with `f~(ξ) = ι(x)`, namely `x/f`.
    fn solve(&self, f: &Self::Element, x: &Self::Point) -> Pq<Self> {
        Pseudoquotient::new(x.clone(), f.clone())
    }

    /// `g` as the fraction `e~⁻¹ (eg)~`.
    fn frac_from_element(&self, g: &Self::Element) -> Frac<Self> {
        let e = self.designated();
        let num = self.compose(&e, g);
        GroupFraction::new(e, num)
    }

    fn frac_identity(&self) -> Frac<Self> {
        let e = self.designated();
        GroupFraction::new(e.clone(), e)
    }

    fn frac_apply(&self, fraction: &Frac<Self>, p: &Pq<Self>) -> Pq<Self> {
        let forward = self.extend_apply(&fraction.num, p);
        self.extend_inverse_apply(&fraction.den, &forward)
    }

    /// `(f₁⁻¹g₁)(f₂⁻¹g₂) = (hf₁)⁻¹(kg₂)` where `hg₁ = kf₂`.
    fn frac_compose(&self, first: &Frac<Self>, second: &Frac<Self>) -> Frac<Self> {
        // (a, b) with a∘g₁ = b∘f₂, so h = a and k = b.
        let w = self.ore_complete(&second.den, &first.num);
        GroupFraction::new(
            self.compose(&w.f_prime, &first.den),
            self.compose(&w.g_prime, &second.num),
        )
    }

    fn frac_inverse(&self, fraction: &Frac<Self>) -> Frac<Self> {
        GroupFraction::new(fraction.num.clone(), fraction.den.clone())
    }

    /// Decides whether two fractions denote the same bijection.
    ///
    /// Brings both to a common denominator `u f₁ = v f₂` and compares `u g₁` with `v g₂`.
    fn frac_equal(&self, a: &Frac<Self>, b: &Frac<Self>) -> bool {
        if a == b {
            return true;
        }
        // (a, b) with a∘f₂ = b∘f₁, so u = b and v = a.
        let w = self.ore_complete(&a.den, &b.den);
        self.compose(&w.g_prime, &a.num) == self.compose(&w.f_prime, &b.num)
    }
}

impl<A: OreAction + ?Sized> Calculus for A {}
