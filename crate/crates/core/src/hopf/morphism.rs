use std::fmt;

use num_traits::Zero;

use super::{BaseChange, FiniteFlatHopf};
use crate::dvr::{Location, Matrix};
use crate::error::{Error, Result};

/// A Hopf algebra map `source → target`; column `j` of `matrix` is the image of
/// the source basis vector `e_j`.
///
/// For group schemes the arrow is reversed: a map of group schemes `X → Y` is
/// a `HopfMorphism` from the algebra of `Y` to the algebra of `X`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HopfMorphism {
    pub source: FiniteFlatHopf,
    pub target: FiniteFlatHopf,
    pub matrix: Matrix,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MorphismReport {
    pub algebra_map: Option<(usize, usize)>,
    pub unit: bool,
    pub coalgebra_map: Option<usize>,
    pub counit: Option<usize>,
    pub entries_in_ring: bool,
}

impl MorphismReport {
    pub fn passed(&self) -> bool {
        self.algebra_map.is_none()
            && self.unit
            && self.coalgebra_map.is_none()
            && self.counit.is_none()
            && self.entries_in_ring
    }

    pub fn into_result(self) -> Result<()> {
        if self.passed() {
            Ok(())
        } else {
            Err(Error::NotAMorphism(self.failure_summary()))
        }
    }

    fn failure_summary(&self) -> String {
        let mut parts = Vec::new();
        if let Some((i, j)) = self.algebra_map {
            parts.push(format!("algebra-map fails at ({i}, {j})"));
        }
        if !self.unit {
            parts.push("unit is not preserved".to_string());
        }
        if let Some(i) = self.coalgebra_map {
            parts.push(format!("coalgebra-map fails at {i}"));
        }
        if let Some(i) = self.counit {
            parts.push(format!("counit fails at {i}"));
        }
        if !self.entries_in_ring {
            parts.push("matrix entries leave the ring".to_string());
        }
        parts.join("; ")
    }
}

impl fmt::Display for MorphismReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = |ok: bool| if ok { "pass" } else { "FAIL" };
        match self.algebra_map {
            None => writeln!(f, "algebra-map: pass")?,
            Some(idx) => writeln!(f, "algebra-map: FAIL at {idx:?}")?,
        }
        writeln!(f, "unit: {}", verdict(self.unit))?;
        match self.coalgebra_map {
            None => writeln!(f, "coalgebra-map: pass")?,
            Some(i) => writeln!(f, "coalgebra-map: FAIL at {i}")?,
        }
        match self.counit {
            None => writeln!(f, "counit: pass")?,
            Some(i) => writeln!(f, "counit: FAIL at {i}")?,
        }
        write!(f, "entries-in-ring: {}", verdict(self.entries_in_ring))
    }
}

impl HopfMorphism {
    /// Builds a morphism and rejects it unless every identity holds.
    pub fn new(source: FiniteFlatHopf, target: FiniteFlatHopf, matrix: Matrix) -> Result<Self> {
        let m = Self::shaped(source, target, matrix)?;
        m.check().into_result()?;
        Ok(m)
    }

    /// Checks shapes and locations only.
    pub fn shaped(source: FiniteFlatHopf, target: FiniteFlatHopf, matrix: Matrix) -> Result<Self> {
        if matrix.rows() != target.rank() || matrix.cols() != source.rank() {
            return Err(Error::Shape(format!(
                "morphism matrix is {}x{}, expected {}x{}",
                matrix.rows(),
                matrix.cols(),
                target.rank(),
                source.rank()
            )));
        }
        if source.location() != target.location() || source.ring() != target.ring() {
            return Err(Error::LocationMismatch(format!(
                "source over {} and target over {}",
                source.location(),
                target.location()
            )));
        }
        Ok(HopfMorphism { source, target, matrix })
    }

    pub(crate) fn new_unchecked(source: FiniteFlatHopf, target: FiniteFlatHopf, matrix: Matrix) -> Self {
        HopfMorphism { source, target, matrix }
    }

    pub fn identity(h: &FiniteFlatHopf) -> Self {
        HopfMorphism::new_unchecked(h.clone(), h.clone(), Matrix::identity(h.rank()))
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &HopfMorphism) -> Result<HopfMorphism> {
        if other.source.rank() != self.target.rank() {
            return Err(Error::Shape("composition of incompatible morphisms".into()));
        }
        Ok(HopfMorphism::new_unchecked(
            self.source.clone(),
            other.target.clone(),
            other.matrix.mul(&self.matrix),
        ))
    }

    pub fn check(&self) -> MorphismReport {
        let (src, tgt, t) = (&self.source, &self.target, &self.matrix);
        let eq = |a: &crate::dvr::Scalar, b: &crate::dvr::Scalar| tgt.algebra.eq_scalar(a, b);
        let ring = tgt.ring();
        let n = src.rank();
        let images = t.to_cols();

        let mut algebra_map = None;
        'outer: for i in 0..n {
            for j in 0..n {
                let lhs = t.mul_vec(&src.mul(&src.algebra.basis_vector(i), &src.algebra.basis_vector(j)));
                let rhs = tgt.mul(&images[i], &images[j]);
                if lhs.iter().zip(&rhs).any(|(a, b)| !eq(a, b)) {
                    algebra_map = Some((i, j));
                    break 'outer;
                }
            }
        }
        let unit_image = t.mul_vec(src.unit());
        let unit = unit_image.iter().zip(tgt.unit()).all(|(a, b)| eq(a, b));

        let tt = t.transpose();
        let mut coalgebra_map = None;
        for (i, image) in images.iter().enumerate() {
            let lhs = t.mul(&src.comul(&src.algebra.basis_vector(i))).mul(&tt);
            let rhs = tgt.comul(image);
            if lhs.entries().zip(rhs.entries()).any(|(a, b)| !eq(a, b)) {
                coalgebra_map = Some(i);
                break;
            }
        }
        let counit = (0..n).find(|&i| !eq(&tgt.counit_of(&images[i]), &src.counit[i]));
        let entries_in_ring = t.entries().all(|x| tgt.location().contains(&ring, x));
        MorphismReport {
            algebra_map,
            unit,
            coalgebra_map,
            counit,
            entries_in_ring,
        }
    }

    /// Ranks agree and the matrix is invertible over `K`.
    pub fn is_model_map(&self) -> bool {
        self.source.rank() == self.target.rank() && !self.matrix.determinant().is_zero()
    }

    /// The same matrix between the base changes to `K`.
    pub fn generic(&self) -> GenericHopfMorphism {
        GenericHopfMorphism {
            source: self.source.clone(),
            target: self.target.clone(),
            matrix: self.matrix.clone(),
        }
    }
}

/// A Hopf algebra map between the base changes to `K` of two objects.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenericHopfMorphism {
    pub source: FiniteFlatHopf,
    pub target: FiniteFlatHopf,
    pub matrix: Matrix,
}

impl GenericHopfMorphism {
    pub fn new(source: FiniteFlatHopf, target: FiniteFlatHopf, matrix: Matrix) -> Result<Self> {
        let g = GenericHopfMorphism { source, target, matrix };
        g.check()?.into_result()?;
        Ok(g)
    }

    pub fn over_k(&self) -> Result<HopfMorphism> {
        HopfMorphism::shaped(
            self.source.base_change(BaseChange::FractionField)?,
            self.target.base_change(BaseChange::FractionField)?,
            self.matrix.clone(),
        )
    }

    pub fn check(&self) -> Result<MorphismReport> {
        Ok(self.over_k()?.check())
    }

    /// The morphism over `R`, if the matrix is integral and both ends live over `R`.
    pub fn integral(&self) -> Option<HopfMorphism> {
        let ring = self.source.ring();
        (self.source.location() == Location::Integral
            && self.target.location() == Location::Integral
            && self.matrix.is_integral(&ring))
        .then(|| HopfMorphism::new_unchecked(self.source.clone(), self.target.clone(), self.matrix.clone()))
    }

    pub fn inverse(&self) -> Option<GenericHopfMorphism> {
        Some(GenericHopfMorphism {
            source: self.target.clone(),
            target: self.source.clone(),
            matrix: self.matrix.inverse()?,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dvr::RingSpec;
    use crate::hopf::fixtures::{constant_cyclic, mu};

    fn r2() -> RingSpec {
        RingSpec::new(2).unwrap()
    }

    #[test]
    fn identity_is_a_morphism() {
        assert!(HopfMorphism::identity(&mu(r2(), 2)).check().passed());
    }

    #[test]
    fn model_map_from_constant_to_mu() {
        // on coordinate rings: mu2-alg → constant(Z/2)-alg, t ↦ f0 − f1
        let m = HopfMorphism::new(mu(r2(), 2), constant_cyclic(r2(), 2), Matrix::from_i64(&[&[1, 1], &[1, -1]])).unwrap();
        assert!(m.is_model_map());
        assert_eq!(r2().valuation(&m.matrix.determinant()), crate::dvr::Valuation::Finite(1));
    }

    #[test]
    fn non_grouplike_image_fails_coalgebra_check() {
        // t ↦ f0
        let m = HopfMorphism::shaped(mu(r2(), 2), constant_cyclic(r2(), 2), Matrix::from_i64(&[&[1, 1], &[1, 0]])).unwrap();
        let report = m.check();
        assert!(report.coalgebra_map.is_some());
        assert!(HopfMorphism::new(m.source, m.target, m.matrix).is_err());
    }

    #[test]
    fn counit_collapse_is_not_a_model_map() {
        let mu2 = mu(r2(), 2);
        let trivial = FiniteFlatHopf::trivial(r2(), Location::Integral);
        let m = HopfMorphism::new(mu2, trivial, Matrix::from_i64(&[&[1, 1]])).unwrap();
        assert!(!m.is_model_map());
    }

    #[test]
    fn generic_inverse_is_not_integral() {
        let m = HopfMorphism::new(mu(r2(), 2), constant_cyclic(r2(), 2), Matrix::from_i64(&[&[1, 1], &[1, -1]])).unwrap();
        let inv = m.generic().inverse().unwrap();
        assert!(inv.check().unwrap().passed());
        assert!(inv.integral().is_none());
    }
}
