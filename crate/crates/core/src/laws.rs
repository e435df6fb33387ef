//! Randomized checks of the construction's laws, usable with any instance that can sample
//! its own elements and points.
//!
//! Each check returns one [`LawReport`] per law with the number of failing trials and a
//! description of the first failure. Related pseudoquotients are produced by left
//! multiplication chains from a common base, so equivalences hold for non-trivial reasons.

use std::fmt::Debug;

use rand::Rng;

use crate::action::{GroupFraction, OreWitness};
use crate::calculus::{Calculus, Frac, Pq};
use crate::sampling::RandomSample;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LawReport {
    pub law: &'static str,
    pub trials: usize,
    pub failures: usize,
    pub first_failure: Option<String>,
}

impl LawReport {
    pub fn new(law: &'static str) -> Self {
        Self {
            law,
            trials: 0,
            failures: 0,
            first_failure: None,
        }
    }

    /// Counts one trial; `detail` is only rendered for the first failure.
    pub fn record(&mut self, ok: bool, detail: impl FnOnce() -> String) {
        self.trials += 1;
        if !ok {
            self.failures += 1;
            if self.first_failure.is_none() {
                self.first_failure = Some(detail());
            }
        }
    }

    pub fn passed(&self) -> bool {
        self.failures == 0 && self.trials > 0
    }
}

/// `p` left-multiplied by one or two random elements: always equivalent to `p`.
pub fn related<A, R>(a: &A, rng: &mut R, p: &Pq<A>) -> Pq<A>
where
    A: RandomSample,
    R: Rng + ?Sized,
{
    let mut q = a.pq_left_multiply(p, &a.random_element(rng));
    if rng.gen_bool(0.5) {
        q = a.pq_left_multiply(&q, &a.random_element(rng));
    }
    q
}

pub fn random_pq<A, R>(a: &A, rng: &mut R) -> Pq<A>
where
    A: RandomSample,
    R: Rng + ?Sized,
{
    crate::action::Pseudoquotient::new(a.random_point(rng), a.random_element(rng))
}

/// Either a chain from `base` or, with probability 1/5, an unrelated pseudoquotient.
fn chained_or_fresh<A, R>(a: &A, rng: &mut R, base: &Pq<A>) -> Pq<A>
where
    A: RandomSample,
    R: Rng + ?Sized,
{
    if rng.gen_bool(0.8) {
        related(a, rng, base)
    } else {
        random_pq(a, rng)
    }
}

pub fn random_fraction<A, R>(a: &A, rng: &mut R) -> Frac<A>
where
    A: RandomSample,
    R: Rng + ?Sized,
{
    GroupFraction::new(a.random_element(rng), a.random_element(rng))
}

/// Reflexivity, symmetry and transitivity of `pq_equivalent`.
pub fn equivalence_relation<A, R>(a: &A, rng: &mut R, trials: usize) -> Vec<LawReport>
where
    A: RandomSample,
    R: Rng + ?Sized,
{
    let mut refl = LawReport::new("reflexivity");
    let mut sym = LawReport::new("symmetry");
    let mut trans = LawReport::new("transitivity");
    for _ in 0..trials {
        let base = random_pq(a, rng);
        let p = chained_or_fresh(a, rng, &base);
        let q = chained_or_fresh(a, rng, &base);
        let r = chained_or_fresh(a, rng, &base);
        refl.record(a.pq_equivalent(&p, &p), || format!("{p:?}"));
        let pq = a.pq_equivalent(&p, &q);
        sym.record(pq == a.pq_equivalent(&q, &p), || format!("{p:?} vs {q:?}"));
        let qr = a.pq_equivalent(&q, &r);
        trans.record(!(pq && qr) || a.pq_equivalent(&p, &r), || {
            format!("{p:?} ~ {q:?} ~ {r:?}")
        });
    }
    vec![refl, sym, trans]
}

/// The lemmas behind the construction: embedding independence and injectivity,
/// left-multiplication invariance, witness independence and well-definedness of the
/// extension.
pub fn lemmas<A, R>(a: &A, rng: &mut R, trials: usize) -> Vec<LawReport>
where
    A: RandomSample,
    R: Rng + ?Sized,
{
    let mut l1a = LawReport::new("embedding-independent-of-element");
    let mut l1b = LawReport::new("embedded-class-determines-numerator");
    let mut l1c = LawReport::new("embedding-injective");
    let mut l2a = LawReport::new("equivalence-stable-under-left-multiplication");
    let mut l2b = LawReport::new("left-multiplication-preserves-class");
    let mut wit = LawReport::new("witness-independence");
    let mut well = LawReport::new("extension-well-defined");
    for _ in 0..trials {
        let f = a.random_element(rng);
        let g = a.random_element(rng);
        let h = a.random_element(rng);
        let x = a.random_point(rng);

        let fx = crate::action::Pseudoquotient::new(a.apply(&f, &x), f.clone());
        let gx = crate::action::Pseudoquotient::new(a.apply(&g, &x), g.clone());
        l1a.record(a.pq_equivalent(&fx, &gx), || format!("{fx:?} vs {gx:?}"));

        // Both with y = g(x), where equivalence must hold, and with an unrelated y.
        let y = if rng.gen_bool(0.5) {
            a.apply(&g, &x)
        } else {
            a.random_point(rng)
        };
        let other = crate::action::Pseudoquotient::new(y.clone(), g.clone());
        let eq = a.pq_equivalent(&fx, &other);
        let expected = y == a.apply(&g, &x);
        l1b.record(eq == expected, || format!("{fx:?} vs {other:?}"));

        let x2 = if rng.gen_bool(0.5) {
            x.clone()
        } else {
            a.random_point(rng)
        };
        let emb = a.pq_equivalent(&a.embed(&x), &a.embed(&x2));
        l1c.record(emb == (x == x2), || format!("{x:?} vs {x2:?}"));

        let base = random_pq(a, rng);
        let p = chained_or_fresh(a, rng, &base);
        let q = chained_or_fresh(a, rng, &base);
        let hq = a.pq_left_multiply(&q, &h);
        l2a.record(!a.pq_equivalent(&p, &q) || a.pq_equivalent(&p, &hq), || {
            format!("{p:?} ~ {q:?} but not {hq:?}")
        });
        let hp = a.pq_left_multiply(&p, &h);
        l2b.record(a.pq_equivalent(&p, &hp), || format!("{p:?} vs {hp:?}"));

        // Two witnesses of (f, g): the returned one and a left multiple of it.
        let w = a.ore_complete(&p.denominator, &q.denominator);
        let w2 = OreWitness::new(a.compose(&h, &w.f_prime), a.compose(&h, &w.g_prime));
        let verdict = |w: &OreWitness<A::Element>| {
            a.apply(&w.f_prime, &q.numerator) == a.apply(&w.g_prime, &p.numerator)
        };
        let valid = w.validates(a, &p.denominator, &q.denominator)
            && w2.validates(a, &p.denominator, &q.denominator);
        wit.record(valid && verdict(&w) == verdict(&w2), || {
            format!("{p:?} vs {q:?} with {w:?} and {w2:?}")
        });

        // extend_apply with a second witness and with another representative.
        let k = a.random_element(rng);
        let direct = a.extend_apply(&k, &p);
        let base_w = a.ore_complete(&k, &p.denominator);
        let second = OreWitness::new(
            a.compose(&h, &base_w.g_prime),
            a.compose(&h, &base_w.f_prime),
        );
        let via_witness = a.extend_apply_with(&p, &second);
        let rep = related(a, rng, &p);
        let via_rep = a.extend_apply(&k, &rep);
        well.record(
            a.pq_equivalent(&direct, &via_witness) && a.pq_equivalent(&direct, &via_rep),
            || format!("extend_apply({k:?}, {p:?})"),
        );
    }
    vec![l1a, l1b, l1c, l2a, l2b, wit, well]
}

/// The extension of `S` to bijections of the pseudoquotient space.
pub fn extension<A, R>(a: &A, rng: &mut R, trials: usize) -> Vec<LawReport>
where
    A: RandomSample,
    R: Rng + ?Sized,
{
    let mut ext = LawReport::new("extension-agrees-on-embedded-points");
    let mut left = LawReport::new("inverse-after-forward");
    let mut right = LawReport::new("forward-after-inverse");
    let mut solve = LawReport::new("solve");
    for _ in 0..trials {
        let g = a.random_element(rng);
        let x = a.random_point(rng);
        let lhs = a.extend_apply(&g, &a.embed(&x));
        let rhs = a.embed(&a.apply(&g, &x));
        ext.record(a.pq_equivalent(&lhs, &rhs), || format!("{g:?} on {x:?}"));

        let p = random_pq(a, rng);
        let back = a.extend_inverse_apply(&g, &a.extend_apply(&g, &p));
        left.record(a.pq_equivalent(&back, &p), || format!("{g:?} on {p:?}"));
        let forth = a.extend_apply(&g, &a.extend_inverse_apply(&g, &p));
        right.record(a.pq_equivalent(&forth, &p), || format!("{g:?} on {p:?}"));

        let xi = a.solve(&g, &x);
        solve.record(a.pq_equivalent(&a.extend_apply(&g, &xi), &a.embed(&x)), || {
            format!("{g:?} xi = {x:?}")
        });
    }
    vec![ext, left, right, solve]
}

fn acts_equally<A>(a: &A, f: &Frac<A>, g: &Frac<A>, samples: &[Pq<A>]) -> bool
where
    A: RandomSample,
{
    samples
        .iter()
        .all(|p| a.pq_equivalent(&a.frac_apply(f, p), &a.frac_apply(g, p)))
}

/// Group laws for left fractions, and agreement of `frac_equal` with the action on
/// `samples` sampled pseudoquotients.
pub fn group<A, R>(a: &A, rng: &mut R, trials: usize, samples: usize) -> Vec<LawReport>
where
    A: RandomSample,
    A::Element: Debug,
    R: Rng + ?Sized,
{
    let mut assoc = LawReport::new("associativity");
    let mut ident = LawReport::new("identity");
    let mut inv = LawReport::new("inverse");
    let mut seq = LawReport::new("composition-acts-sequentially");
    let mut agree = LawReport::new("frac-equal-agrees-with-action");
    let id = a.frac_identity();
    for _ in 0..trials {
        let f = random_fraction(a, rng);
        let g = random_fraction(a, rng);
        let h = random_fraction(a, rng);
        let fg_h = a.frac_compose(&a.frac_compose(&f, &g), &h);
        let f_gh = a.frac_compose(&f, &a.frac_compose(&g, &h));
        assoc.record(a.frac_equal(&fg_h, &f_gh), || format!("{f:?} {g:?} {h:?}"));

        ident.record(
            a.frac_equal(&a.frac_compose(&f, &id), &f) && a.frac_equal(&a.frac_compose(&id, &f), &f),
            || format!("{f:?}"),
        );
        let finv = a.frac_inverse(&f);
        inv.record(
            a.frac_equal(&a.frac_compose(&f, &finv), &id)
                && a.frac_equal(&a.frac_compose(&finv, &f), &id),
            || format!("{f:?}"),
        );

        let points: Vec<Pq<A>> = (0..samples).map(|_| random_pq(a, rng)).collect();
        let fg = a.frac_compose(&f, &g);
        seq.record(
            points.iter().take(5).all(|p| {
                a.pq_equivalent(&a.frac_apply(&fg, p), &a.frac_apply(&f, &a.frac_apply(&g, p)))
            }),
            || format!("{f:?} after {g:?}"),
        );

        // An equal fraction written differently, or an unrelated one.
        let other = match rng.gen_range(0..3) {
            0 => {
                let k = a.random_element(rng);
                GroupFraction::new(a.compose(&k, &f.den), a.compose(&k, &f.num))
            }
            1 => a.frac_compose(&a.frac_compose(&f, &h), &a.frac_inverse(&h)),
            _ => g.clone(),
        };
        let decided = a.frac_equal(&f, &other);
        let observed = acts_equally(a, &f, &other, &points);
        agree.record(decided == observed, || {
            format!("{f:?} vs {other:?}: frac_equal {decided}, sampled {observed}")
        });
    }
    vec![assoc, ident, inv, seq, agree]
}

/// `ore_complete(f, g) = (f', g')` satisfies `f'g = g'f` exactly.
pub fn ore_witnesses<A, R>(a: &A, rng: &mut R, trials: usize) -> LawReport
where
    A: RandomSample,
    R: Rng + ?Sized,
{
    let mut report = LawReport::new("ore-witness-valid");
    for _ in 0..trials {
        let f = a.random_element(rng);
        let g = a.random_element(rng);
        let w = a.ore_complete(&f, &g);
        report.record(w.validates(a, &f, &g), || format!("{f:?}, {g:?} -> {w:?}"));
    }
    report
}
