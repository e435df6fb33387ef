//! Integer affine maps `x ↦ Mx + b` on `ℤⁿ` with `det M ≠ 0`.
//!
//! Pseudoquotient classes are identified with `ℚⁿ` via `x/f ↦ M⁻¹(x − b)`.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rand::Rng;

use crate::action::{OreAction, OreWitness, Pseudoquotient};
use crate::error::{Error, Result};
use crate::linalg::{self, IntMatrix};
use crate::sampling::RandomSample;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LatticePoint(pub Vec<BigInt>);

impl LatticePoint {
    pub fn dim(&self) -> usize {
        self.0.len()
    }
}

impl From<Vec<i64>> for LatticePoint {
    fn from(v: Vec<i64>) -> Self {
        LatticePoint(v.into_iter().map(BigInt::from).collect())
    }
}

impl fmt::Display for LatticePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_list(f, &self.0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RationalVector(pub Vec<BigRational>);

impl From<&LatticePoint> for RationalVector {
    fn from(p: &LatticePoint) -> Self {
        RationalVector(p.0.iter().cloned().map(BigRational::from_integer).collect())
    }
}

impl fmt::Display for RationalVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_list(f, &self.0)
    }
}

fn write_list<T: fmt::Display>(f: &mut fmt::Formatter<'_>, items: &[T]) -> fmt::Result {
    f.write_str("[")?;
    for (i, v) in items.iter().enumerate() {
        if i > 0 {
            f.write_str(",")?;
        }
        write!(f, "{v}")?;
    }
    f.write_str("]")
}

/// `x ↦ Mx + b` with `M` square, integral and nonsingular.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AffineLatticeMap {
    matrix: IntMatrix,
    offset: Vec<BigInt>,
}

impl AffineLatticeMap {
    pub fn new(matrix: IntMatrix, offset: Vec<BigInt>) -> Result<Self> {
        if matrix.is_empty() {
            return Err(Error::Domain("matrix must be at least 1x1".into()));
        }
        if !linalg::is_square(&matrix) {
            return Err(Error::Domain("matrix must be square".into()));
        }
        if offset.len() != matrix.len() {
            return Err(Error::Domain(format!(
                "offset has length {}, matrix is {}x{}",
                offset.len(),
                matrix.len(),
                matrix.len()
            )));
        }
        if linalg::determinant(&matrix).is_zero() {
            return Err(Error::Domain("matrix must have full rank (det M = 0)".into()));
        }
        Ok(Self { matrix, offset })
    }

    pub fn from_i64(matrix: &[&[i64]], offset: &[i64]) -> Result<Self> {
        Self::new(
            matrix
                .iter()
                .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
                .collect(),
            offset.iter().map(|&v| BigInt::from(v)).collect(),
        )
    }

    pub fn identity(dim: usize) -> Self {
        Self {
            matrix: linalg::identity(dim),
            offset: vec![BigInt::zero(); dim],
        }
    }

    pub fn dim(&self) -> usize {
        self.matrix.len()
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn offset(&self) -> &[BigInt] {
        &self.offset
    }

    pub fn determinant(&self) -> BigInt {
        linalg::determinant(&self.matrix)
    }

    pub fn eval(&self, x: &[BigInt]) -> Vec<BigInt> {
        linalg::add_vec(&linalg::mul_vec(&self.matrix, x), &self.offset)
    }

    /// The same map acting on `ℚⁿ`.
    pub fn eval_rational(&self, x: &[BigRational]) -> Vec<BigRational> {
        self.matrix
            .iter()
            .zip(&self.offset)
            .map(|(row, b)| {
                row.iter()
                    .zip(x)
                    .map(|(m, v)| v * BigRational::from_integer(m.clone()))
                    .fold(BigRational::from_integer(b.clone()), |acc, t| acc + t)
            })
            .collect()
    }

    /// `M⁻¹(y − b)` over the rationals, computed as `adj(M)(y − b) / det M`.
    pub fn solve_rational(&self, y: &[BigInt]) -> Vec<BigRational> {
        let shifted: Vec<BigInt> = y.iter().zip(&self.offset).map(|(a, b)| a - b).collect();
        let det = self.determinant();
        linalg::mul_vec(&linalg::adjugate(&self.matrix), &shifted)
            .into_iter()
            .map(|v| BigRational::new(v, det.clone()))
            .collect()
    }
}

impl fmt::Display for AffineLatticeMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("aff([")?;
        for (i, row) in self.matrix.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write_list(f, row)?;
        }
        f.write_str("],")?;
        write_list(f, &self.offset)?;
        f.write_str(")")
    }
}

/// Affine maps on `ℤⁿ` for a fixed dimension `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AffineLattice {
    dim: usize,
}

impl AffineLattice {
    pub fn new(dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::Domain("dimension must be at least 1".into()));
        }
        Ok(Self { dim })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }
}

impl OreAction for AffineLattice {
    type Point = LatticePoint;
    type Element = AffineLatticeMap;
    type Canonical = RationalVector;

    fn name(&self) -> &'static str {
        "affine-lattice"
    }

    fn designated(&self) -> AffineLatticeMap {
        AffineLatticeMap::identity(self.dim)
    }

    /// `(M₁,b₁)∘(M₂,b₂) = (M₁M₂, M₁b₂ + b₁)`.
    fn compose(&self, f: &AffineLatticeMap, g: &AffineLatticeMap) -> AffineLatticeMap {
        AffineLatticeMap {
            matrix: linalg::mul(&f.matrix, &g.matrix),
            offset: f.eval(&g.offset),
        }
    }

    fn apply(&self, f: &AffineLatticeMap, x: &LatticePoint) -> LatticePoint {
        LatticePoint(f.eval(&x.0))
    }

    /// With `mᵢ = det Mᵢ` and `mᵢMᵢ⁻¹ = adj(Mᵢ)`:
    /// `f'(x) = m₁adj(M₂)x + m₂adj(M₁)b₁` and `g'(x) = m₂adj(M₁)x + m₁adj(M₂)b₂`.
    fn ore_complete(
        &self,
        f: &AffineLatticeMap,
        g: &AffineLatticeMap,
    ) -> OreWitness<AffineLatticeMap> {
        let m1 = f.determinant();
        let m2 = g.determinant();
        let adj1 = linalg::adjugate(&f.matrix);
        let adj2 = linalg::adjugate(&g.matrix);
        let m1_adj2 = linalg::scale(&adj2, &m1);
        let m2_adj1 = linalg::scale(&adj1, &m2);
        let f_prime = AffineLatticeMap {
            offset: linalg::mul_vec(&m2_adj1, &f.offset),
            matrix: m1_adj2.clone(),
        };
        let g_prime = AffineLatticeMap {
            offset: linalg::mul_vec(&m1_adj2, &g.offset),
            matrix: m2_adj1,
        };
        OreWitness::new(f_prime, g_prime)
    }

    fn canonical(&self, p: &Pseudoquotient<LatticePoint, AffineLatticeMap>) -> RationalVector {
        RationalVector(p.denominator.solve_rational(&p.numerator.0))
    }

    fn check_element(&self, f: &AffineLatticeMap) -> Result<()> {
        if f.dim() != self.dim {
            return Err(Error::Usage(format!(
                "affine map of dimension {} used with dimension {}",
                f.dim(),
                self.dim
            )));
        }
        Ok(())
    }

    fn check_point(&self, x: &LatticePoint) -> Result<()> {
        if x.dim() != self.dim {
            return Err(Error::Usage(format!(
                "point of dimension {} used with dimension {}",
                x.dim(),
                self.dim
            )));
        }
        Ok(())
    }
}

impl RandomSample for AffineLattice {
    /// Entries of `M` and `b` in `[-5, 5]`, resampled until `det M ≠ 0`.
    fn random_element<R: Rng + ?Sized>(&self, rng: &mut R) -> AffineLatticeMap {
        loop {
            let matrix: IntMatrix = (0..self.dim)
                .map(|_| {
                    (0..self.dim)
                        .map(|_| BigInt::from(rng.gen_range(-5i64..=5)))
                        .collect()
                })
                .collect();
            if linalg::determinant(&matrix).is_zero() {
                continue;
            }
            let offset = (0..self.dim)
                .map(|_| BigInt::from(rng.gen_range(-5i64..=5)))
                .collect();
            return AffineLatticeMap { matrix, offset };
        }
    }

    fn random_point<R: Rng + ?Sized>(&self, rng: &mut R) -> LatticePoint {
        LatticePoint(
            (0..self.dim)
                .map(|_| BigInt::from(rng.gen_range(-10i64..=10)))
                .collect(),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::calculus::Calculus;

    fn aff(m: &[&[i64]], b: &[i64]) -> AffineLatticeMap {
        AffineLatticeMap::from_i64(m, b).unwrap()
    }

    fn q(v: i64) -> BigRational {
        BigRational::from_integer(v.into())
    }

    #[test]
    fn apply_example() {
        let one = AffineLattice::new(1).unwrap();
        let x = one.apply(&aff(&[&[2]], &[1]), &LatticePoint::from(vec![5]));
        assert_eq!(x, LatticePoint::from(vec![11]));
    }

    #[test]
    fn ore_witness_dim_one_matches_formula() {
        let one = AffineLattice::new(1).unwrap();
        let f = aff(&[&[2]], &[1]);
        let g = aff(&[&[3]], &[0]);
        let w = one.ore_complete(&f, &g);
        assert_eq!(w.f_prime, aff(&[&[2]], &[3]));
        assert_eq!(w.g_prime, aff(&[&[3]], &[0]));
        let composite = aff(&[&[6]], &[3]);
        assert_eq!(one.compose(&w.f_prime, &g), composite);
        assert_eq!(one.compose(&w.g_prime, &f), composite);
    }

    #[test]
    fn ore_witness_symmetric() {
        let two = AffineLattice::new(2).unwrap();
        let f = aff(&[&[1, 2], &[3, -1]], &[4, -2]);
        let w = two.ore_complete(&f, &f);
        assert_eq!(w.f_prime, w.g_prime);
        assert!(w.validates(&two, &f, &f));
    }

    #[test]
    fn ore_witness_dim_two() {
        let two = AffineLattice::new(2).unwrap();
        let f = aff(&[&[1, 1], &[0, 1]], &[0, 0]);
        let g = aff(&[&[2, 0], &[0, 1]], &[1, 0]);
        let w = two.ore_complete(&f, &g);
        assert!(w.validates(&two, &f, &g));
        // Direct evaluation on a few lattice points, independent of matrix products.
        for x in [vec![0, 0], vec![1, 0], vec![0, 1], vec![-3, 7]] {
            let x: Vec<BigInt> = x.into_iter().map(BigInt::from).collect();
            assert_eq!(w.f_prime.eval(&g.eval(&x)), w.g_prime.eval(&f.eval(&x)));
        }
    }

    #[test]
    fn singular_and_malformed_matrices_rejected() {
        assert!(matches!(
            AffineLatticeMap::from_i64(&[&[1, 0], &[0, 0]], &[0, 0]),
            Err(Error::Domain(_))
        ));
        assert!(AffineLatticeMap::from_i64(&[&[1, 0]], &[0]).is_err());
        assert!(AffineLatticeMap::from_i64(&[&[1]], &[0, 0]).is_err());
    }

    #[test]
    fn mixed_dimensions_are_usage_errors() {
        let one = AffineLattice::new(1).unwrap();
        let f2 = AffineLatticeMap::identity(2);
        assert!(matches!(
            one.try_compose(&f2, &AffineLatticeMap::identity(1)),
            Err(Error::Usage(_))
        ));
        assert!(matches!(
            one.try_apply(&AffineLatticeMap::identity(1), &LatticePoint::from(vec![1, 2])),
            Err(Error::Usage(_))
        ));
    }

    #[test]
    fn canonical_examples() {
        let one = AffineLattice::new(1).unwrap();
        let p = Pseudoquotient::new(LatticePoint::from(vec![5]), aff(&[&[2]], &[1]));
        let r = Pseudoquotient::new(LatticePoint::from(vec![7]), aff(&[&[3]], &[1]));
        assert_eq!(one.canonical(&p), RationalVector(vec![q(2)]));
        assert_eq!(one.canonical(&r), RationalVector(vec![q(2)]));
        assert!(one.pq_equivalent(&p, &r));

        let two = AffineLattice::new(2).unwrap();
        let f = aff(&[&[2, 1], &[1, 3]], &[4, -1]);
        let p = Pseudoquotient::new(LatticePoint::from(vec![4, -1]), f);
        assert_eq!(two.canonical(&p), RationalVector(vec![q(0), q(0)]));
    }

    #[test]
    fn inverse_fraction_solves_affine_equation() {
        let one = AffineLattice::new(1).unwrap();
        let g = aff(&[&[2]], &[1]);
        let inv = one.frac_inverse(&one.frac_from_element(&g));
        let out = one.frac_apply(&inv, &one.embed(&LatticePoint::from(vec![5])));
        assert_eq!(one.canonical(&out), RationalVector(vec![q(2)]));
    }

    #[test]
    fn extend_apply_on_own_denominator_solves() {
        // g~(x/g) = ι(x); here x = g(3) so the class is ι(g(3)) and its value is g(3).
        let one = AffineLattice::new(1).unwrap();
        let g = aff(&[&[-2]], &[5]);
        let x = LatticePoint::from(vec![3]);
        let p = Pseudoquotient::new(x.clone(), g.clone());
        let out = one.extend_apply(&g, &p);
        assert!(one.pq_equivalent(&out, &one.embed(&x)));
        // x/g alone has value (3 - 5)/(-2) = 1.
        assert_eq!(one.canonical(&p), RationalVector(vec![q(1)]));
    }
}
