//! Finite flat Hopf algebras as structure constants: axioms, morphisms,
//! duality, tensor products, base change and a small fixture catalog.

mod axioms;
mod canonical;
mod characters;
mod enumerate;
pub mod fixtures;
mod group;
mod morphism;

pub use axioms::{Axiom, AxiomReport, Verdict};
pub use canonical::{canonical_form, canonical_lattice, CanonicalForm};
pub use characters::{characters, grouplike_basis, grouplikes, idempotent_basis, Character};
pub use enumerate::enumerate_hopf_morphisms;
pub use group::GroupTable;
pub use morphism::{GenericHopfMorphism, HopfMorphism, MorphismReport};

use num_traits::{One, Zero};

use crate::dvr::{int, Location, Matrix, RingSpec, Scalar};
use crate::error::{Error, Result};

/// An `n × n × n` array of scalars indexed `[i][j][k]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Tensor3 {
    n: usize,
    data: Vec<Scalar>,
}

impl Tensor3 {
    pub fn zeros(n: usize) -> Self {
        Tensor3 {
            n,
            data: vec![Scalar::zero(); n * n * n],
        }
    }

    pub fn from_nested(nested: Vec<Vec<Vec<Scalar>>>) -> Result<Self> {
        let n = nested.len();
        let mut t = Tensor3::zeros(n);
        for (i, plane) in nested.into_iter().enumerate() {
            if plane.len() != n {
                return Err(Error::Shape(format!("tensor plane {i} has {} rows, expected {n}", plane.len())));
            }
            for (j, row) in plane.into_iter().enumerate() {
                if row.len() != n {
                    return Err(Error::Shape(format!("tensor row [{i}][{j}] has length {}, expected {n}", row.len())));
                }
                for (k, x) in row.into_iter().enumerate() {
                    t.set(i, j, k, x);
                }
            }
        }
        Ok(t)
    }

    pub fn to_nested(&self) -> Vec<Vec<Vec<Scalar>>> {
        let n = self.n;
        (0..n)
            .map(|i| (0..n).map(|j| (0..n).map(|k| self.get(i, j, k).clone()).collect()).collect())
            .collect()
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> &Scalar {
        &self.data[(i * self.n + j) * self.n + k]
    }

    pub fn set(&mut self, i: usize, j: usize, k: usize, x: Scalar) {
        self.data[(i * self.n + j) * self.n + k] = x;
    }

    /// Plane `[i]` as an `n × n` matrix.
    pub fn plane(&self, i: usize) -> Matrix {
        let n = self.n;
        let mut m = Matrix::zeros(n, n);
        for j in 0..n {
            for k in 0..n {
                m[(j, k)] = self.get(i, j, k).clone();
            }
        }
        m
    }

    pub fn entries(&self) -> impl Iterator<Item = &Scalar> {
        self.data.iter()
    }

    fn map(&self, f: impl Fn(&Scalar) -> Scalar) -> Tensor3 {
        Tensor3 {
            n: self.n,
            data: self.data.iter().map(f).collect(),
        }
    }
}

/// A free algebra of finite rank given by structure constants:
/// `e_i · e_j = Σ_k mult[i][j][k] e_k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FiniteAlgebra {
    pub ring: RingSpec,
    pub location: Location,
    pub mult: Tensor3,
    pub unit: Vec<Scalar>,
}

impl FiniteAlgebra {
    pub fn new(ring: RingSpec, location: Location, mult: Tensor3, unit: Vec<Scalar>) -> Result<Self> {
        if unit.len() != mult.dim() {
            return Err(Error::Shape(format!("unit has length {}, rank is {}", unit.len(), mult.dim())));
        }
        Ok(FiniteAlgebra {
            ring,
            location,
            mult,
            unit,
        })
    }

    pub fn rank(&self) -> usize {
        self.mult.dim()
    }

    pub fn mul(&self, a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
        let n = self.rank();
        let mut out = vec![Scalar::zero(); n];
        for (i, x) in a.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            for (j, y) in b.iter().enumerate().filter(|(_, y)| !y.is_zero()) {
                let xy = x * y;
                for (k, o) in out.iter_mut().enumerate() {
                    let c = self.mult.get(i, j, k);
                    if !c.is_zero() {
                        *o += &xy * c;
                    }
                }
            }
        }
        self.normalize(out)
    }

    pub fn basis_vector(&self, i: usize) -> Vec<Scalar> {
        unit_vector(self.rank(), i)
    }

    /// Matrix of `x ↦ a · x`.
    pub fn left_mult(&self, a: &[Scalar]) -> Matrix {
        let cols: Vec<_> = (0..self.rank()).map(|j| self.mul(a, &self.basis_vector(j))).collect();
        Matrix::from_cols(self.rank(), &cols)
    }

    pub fn is_commutative(&self) -> bool {
        let n = self.rank();
        (0..n).all(|i| (0..n).all(|j| (0..n).all(|k| self.eq_scalar(self.mult.get(i, j, k), self.mult.get(j, i, k)))))
    }

    pub(crate) fn eq_scalar(&self, a: &Scalar, b: &Scalar) -> bool {
        self.location.is_zero(&self.ring, &(a - b))
    }

    pub(crate) fn normalize(&self, v: Vec<Scalar>) -> Vec<Scalar> {
        match self.location {
            Location::Residue => v.iter().map(|x| self.location.normalize(&self.ring, x)).collect(),
            _ => v,
        }
    }

    /// Structure constants in the basis given by the columns of `w`, which must
    /// span a subalgebra containing 1.
    pub fn transport(&self, w: &Matrix, location: Location) -> Result<FiniteAlgebra> {
        let m = w.cols();
        let cols = w.to_cols();
        let mut products = Vec::with_capacity(m * m);
        for a in &cols {
            for b in &cols {
                products.push(self.mul(a, b));
            }
        }
        let rhs = Matrix::from_cols(self.rank(), &products);
        let coords = w
            .solve(&rhs)
            .ok_or_else(|| Error::Shape("basis does not span a subalgebra".into()))?;
        let mut mult = Tensor3::zeros(m);
        for a in 0..m {
            for b in 0..m {
                for c in 0..m {
                    mult.set(a, b, c, coords[(c, a * m + b)].clone());
                }
            }
        }
        let unit = w
            .solve(&Matrix::from_cols(self.rank(), std::slice::from_ref(&self.unit)))
            .ok_or_else(|| Error::Shape("unit outside the span".into()))?
            .col(0);
        let alg = FiniteAlgebra::new(self.ring, location, mult, unit)?;
        alg.check_location()?;
        Ok(alg)
    }

    pub(crate) fn check_location(&self) -> Result<()> {
        for x in self.mult.entries().chain(&self.unit) {
            if !self.location.contains(&self.ring, x) {
                return Err(Error::Location {
                    value: x.to_string(),
                    location: self.location,
                });
            }
        }
        Ok(())
    }
}

/// A Hopf algebra that is free of finite rank over its location.
///
/// `Δe_i = Σ_{j,k} comult[i][j][k] e_j ⊗ e_k`; column `i` of `antipode` is `S(e_i)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FiniteFlatHopf {
    pub algebra: FiniteAlgebra,
    pub comult: Tensor3,
    pub counit: Vec<Scalar>,
    pub antipode: Matrix,
}

/// Target of a base change from `R`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BaseChange {
    FractionField,
    ResidueField,
}

impl FiniteFlatHopf {
    /// Assembles a Hopf algebra after checking shapes only; use
    /// [`FiniteFlatHopf::check_axioms`] for the algebraic identities.
    pub fn new(
        ring: RingSpec,
        location: Location,
        mult: Tensor3,
        unit: Vec<Scalar>,
        comult: Tensor3,
        counit: Vec<Scalar>,
        antipode: Matrix,
    ) -> Result<Self> {
        let n = mult.dim();
        if comult.dim() != n || counit.len() != n || antipode.rows() != n || antipode.cols() != n {
            return Err(Error::Shape(format!(
                "inconsistent ranks: mult {n}, comult {}, counit {}, antipode {}x{}",
                comult.dim(),
                counit.len(),
                antipode.rows(),
                antipode.cols()
            )));
        }
        Ok(FiniteFlatHopf {
            algebra: FiniteAlgebra::new(ring, location, mult, unit)?,
            comult,
            counit,
            antipode,
        })
    }

    /// Like [`FiniteFlatHopf::new`] but rejects anything failing an axiom.
    pub fn validated(
        ring: RingSpec,
        location: Location,
        mult: Tensor3,
        unit: Vec<Scalar>,
        comult: Tensor3,
        counit: Vec<Scalar>,
        antipode: Matrix,
    ) -> Result<Self> {
        let h = FiniteFlatHopf::new(ring, location, mult, unit, comult, counit, antipode)?;
        h.check_axioms().into_result()?;
        Ok(h)
    }

    pub fn ring(&self) -> RingSpec {
        self.algebra.ring
    }

    pub fn location(&self) -> Location {
        self.algebra.location
    }

    pub fn rank(&self) -> usize {
        self.algebra.rank()
    }

    pub fn mult(&self) -> &Tensor3 {
        &self.algebra.mult
    }

    pub fn unit(&self) -> &[Scalar] {
        &self.algebra.unit
    }

    pub fn mul(&self, a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
        self.algebra.mul(a, b)
    }

    /// `Δ(a)` as an `n × n` matrix of coefficients of `e_j ⊗ e_k`.
    pub fn comul(&self, a: &[Scalar]) -> Matrix {
        let n = self.rank();
        let mut out = Matrix::zeros(n, n);
        for (i, x) in a.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            for j in 0..n {
                for k in 0..n {
                    let c = self.comult.get(i, j, k);
                    if !c.is_zero() {
                        out[(j, k)] += x * c;
                    }
                }
            }
        }
        out
    }

    pub fn counit_of(&self, a: &[Scalar]) -> Scalar {
        a.iter().zip(&self.counit).fold(Scalar::zero(), |acc, (x, y)| acc + x * y)
    }

    pub fn is_commutative(&self) -> bool {
        self.algebra.is_commutative()
    }

    pub fn is_cocommutative(&self) -> bool {
        let n = self.rank();
        (0..n).all(|i| {
            (0..n).all(|j| (0..n).all(|k| self.algebra.eq_scalar(self.comult.get(i, j, k), self.comult.get(i, k, j))))
        })
    }

    pub fn check_axioms(&self) -> AxiomReport {
        axioms::check(self)
    }

    /// Cartier dual: multiplication and comultiplication trade places.
    pub fn dualize(&self) -> FiniteFlatHopf {
        let n = self.rank();
        let mut mult = Tensor3::zeros(n);
        let mut comult = Tensor3::zeros(n);
        for i in 0..n {
            for a in 0..n {
                for b in 0..n {
                    mult.set(a, b, i, self.comult.get(i, a, b).clone());
                    comult.set(i, a, b, self.mult().get(a, b, i).clone());
                }
            }
        }
        FiniteFlatHopf {
            algebra: FiniteAlgebra {
                ring: self.ring(),
                location: self.location(),
                mult,
                unit: self.counit.clone(),
            },
            comult,
            counit: self.unit().to_vec(),
            antipode: self.antipode.transpose(),
        }
    }

    pub fn base_change(&self, target: BaseChange) -> Result<FiniteFlatHopf> {
        match target {
            BaseChange::FractionField => {
                if self.location() == Location::Residue {
                    return Err(Error::LocationMismatch("cannot lift from the residue field to K".into()));
                }
                let mut h = self.clone();
                h.algebra.location = Location::Fraction;
                Ok(h)
            }
            BaseChange::ResidueField => {
                if self.location() != Location::Integral {
                    return Err(Error::LocationMismatch(format!(
                        "reduction mod p needs entries in R, object lives over {}",
                        self.location()
                    )));
                }
                let ring = self.ring();
                let red = |x: &Scalar| ring.reduce(x);
                let reduce_vec = |v: &[Scalar]| v.iter().map(red).collect::<Result<Vec<_>>>();
                let reduce_tensor = |t: &Tensor3| -> Result<Tensor3> {
                    for x in t.entries() {
                        red(x)?;
                    }
                    Ok(t.map(|x| ring.reduce(x).expect("checked")))
                };
                let mut antipode = Matrix::zeros(self.rank(), self.rank());
                for i in 0..self.rank() {
                    for j in 0..self.rank() {
                        antipode[(i, j)] = red(&self.antipode[(i, j)])?;
                    }
                }
                Ok(FiniteFlatHopf {
                    algebra: FiniteAlgebra {
                        ring,
                        location: Location::Residue,
                        mult: reduce_tensor(self.mult())?,
                        unit: reduce_vec(self.unit())?,
                    },
                    comult: reduce_tensor(&self.comult)?,
                    counit: reduce_vec(&self.counit)?,
                    antipode,
                })
            }
        }
    }

    /// Same structure constants, declared to live over `R`; fails if an entry
    /// is not integral.
    pub fn as_integral(&self) -> Result<FiniteFlatHopf> {
        let mut h = self.clone();
        h.algebra.location = Location::Integral;
        h.check_location()?;
        Ok(h)
    }

    pub(crate) fn check_location(&self) -> Result<()> {
        self.algebra.check_location()?;
        let loc = self.location();
        let ring = self.ring();
        for x in self.comult.entries().chain(&self.counit).chain(self.antipode.entries()) {
            if !loc.contains(&ring, x) {
                return Err(Error::Location {
                    value: x.to_string(),
                    location: loc,
                });
            }
        }
        Ok(())
    }

    /// Tensor product `B ⊗ C` together with `ρ_B: b ↦ b ⊗ 1` and `ρ_C: c ↦ 1 ⊗ c`.
    /// The basis vector `b_i ⊗ c_k` has index `i · rank(C) + k`.
    pub fn tensor(&self, other: &FiniteFlatHopf) -> Result<(FiniteFlatHopf, HopfMorphism, HopfMorphism)> {
        if self.location() != other.location() || self.ring() != other.ring() {
            return Err(Error::LocationMismatch("tensor factors live over different rings".into()));
        }
        let (nb, nc) = (self.rank(), other.rank());
        let n = nb * nc;
        let idx = |i: usize, k: usize| i * nc + k;
        let mut mult = Tensor3::zeros(n);
        let mut comult = Tensor3::zeros(n);
        for i in 0..nb {
            for k in 0..nc {
                for j in 0..nb {
                    for l in 0..nc {
                        for a in 0..nb {
                            let x = self.mult().get(i, j, a);
                            if x.is_zero() {
                                continue;
                            }
                            for b in 0..nc {
                                let y = other.mult().get(k, l, b);
                                if !y.is_zero() {
                                    mult.set(idx(i, k), idx(j, l), idx(a, b), x * y);
                                }
                            }
                        }
                    }
                }
                for a in 0..nb {
                    for a2 in 0..nb {
                        let x = self.comult.get(i, a, a2);
                        if x.is_zero() {
                            continue;
                        }
                        for b in 0..nc {
                            for b2 in 0..nc {
                                let y = other.comult.get(k, b, b2);
                                if !y.is_zero() {
                                    comult.set(idx(i, k), idx(a, b), idx(a2, b2), x * y);
                                }
                            }
                        }
                    }
                }
            }
        }
        let kron = |x: &[Scalar], y: &[Scalar]| -> Vec<Scalar> {
            x.iter().flat_map(|a| y.iter().map(move |b| a * b)).collect()
        };
        let t = FiniteFlatHopf {
            algebra: FiniteAlgebra {
                ring: self.ring(),
                location: self.location(),
                mult,
                unit: kron(self.unit(), other.unit()),
            },
            comult,
            counit: kron(&self.counit, &other.counit),
            antipode: self.antipode.kron(&other.antipode),
        };
        let rho_b_cols: Vec<_> = (0..nb).map(|i| kron(&unit_vector(nb, i), other.unit())).collect();
        let rho_c_cols: Vec<_> = (0..nc).map(|k| kron(self.unit(), &unit_vector(nc, k))).collect();
        let rho_b = HopfMorphism::new_unchecked(self.clone(), t.clone(), Matrix::from_cols(n, &rho_b_cols));
        let rho_c = HopfMorphism::new_unchecked(other.clone(), t.clone(), Matrix::from_cols(n, &rho_c_cols));
        Ok((t, rho_b, rho_c))
    }

    /// Structure constants in the basis given by the columns of `w`, whose span
    /// must be a sub-Hopf algebra (over `K`). Entries are checked against
    /// `location`.
    pub fn transport(&self, w: &Matrix, location: Location) -> Result<FiniteFlatHopf> {
        let algebra = self.algebra.transport(w, location)?;
        let m = w.cols();
        let cols = w.to_cols();
        let mut comult = Tensor3::zeros(m);
        for (a, col) in cols.iter().enumerate() {
            // Δ(w_a) = W X W^T, solved in two steps
            let delta = self.comul(col);
            let y = w
                .solve(&delta)
                .ok_or_else(|| Error::Shape("basis does not span a subcoalgebra".into()))?;
            let xt = w
                .solve(&y.transpose())
                .ok_or_else(|| Error::Shape("basis does not span a subcoalgebra".into()))?;
            for b in 0..m {
                for c in 0..m {
                    comult.set(a, b, c, xt[(c, b)].clone());
                }
            }
        }
        let counit = cols.iter().map(|c| self.counit_of(c)).collect();
        let antipode = w
            .solve(&self.antipode.mul(w))
            .ok_or_else(|| Error::Shape("basis is not stable under the antipode".into()))?;
        let h = FiniteFlatHopf {
            algebra,
            comult,
            counit,
            antipode,
        };
        h.check_location()?;
        Ok(h)
    }

    /// Structure induced on a quotient `H → H / I` given by a surjective
    /// `projection` (`r × n`) and a section (`n × r`) with `projection · section = 1`.
    /// The kernel must be a Hopf ideal; this is not checked here.
    pub fn quotient_structure(&self, projection: &Matrix, section: &Matrix, location: Location) -> Result<FiniteFlatHopf> {
        let r = projection.rows();
        let lifts = section.to_cols();
        let mut mult = Tensor3::zeros(r);
        let mut comult = Tensor3::zeros(r);
        for (a, la) in lifts.iter().enumerate() {
            for (b, lb) in lifts.iter().enumerate() {
                let prod = projection.mul_vec(&self.mul(la, lb));
                for (c, x) in prod.into_iter().enumerate() {
                    mult.set(a, b, c, x);
                }
            }
            let d = projection.mul(&self.comul(la)).mul(&projection.transpose());
            for b in 0..r {
                for c in 0..r {
                    comult.set(a, b, c, d[(b, c)].clone());
                }
            }
        }
        let h = FiniteFlatHopf {
            algebra: FiniteAlgebra {
                ring: self.ring(),
                location,
                mult,
                unit: projection.mul_vec(self.unit()),
            },
            comult,
            counit: lifts.iter().map(|l| self.counit_of(l)).collect(),
            antipode: projection.mul(&self.antipode).mul(section),
        };
        h.check_location()?;
        Ok(h)
    }

    /// The rank-1 Hopf algebra `R`.
    pub fn trivial(ring: RingSpec, location: Location) -> FiniteFlatHopf {
        let mut t = Tensor3::zeros(1);
        t.set(0, 0, 0, int(1));
        FiniteFlatHopf {
            algebra: FiniteAlgebra {
                ring,
                location,
                mult: t.clone(),
                unit: vec![int(1)],
            },
            comult: t,
            counit: vec![int(1)],
            antipode: Matrix::identity(1),
        }
    }
}

pub(crate) fn unit_vector(n: usize, i: usize) -> Vec<Scalar> {
    let mut v = vec![Scalar::zero(); n];
    v[i] = Scalar::one();
    v
}

#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;

    fn ring(p: u64) -> RingSpec {
        RingSpec::new(p).unwrap()
    }

    #[test]
    fn dual_of_constant_is_mu() {
        for (n, p) in [(2, 2), (3, 3), (4, 2)] {
            assert_eq!(constant_cyclic(ring(p), n).dualize(), mu(ring(p), n));
        }
    }

    #[test]
    fn dualize_is_an_involution() {
        let h = mu(ring(2), 4);
        assert_eq!(h.dualize().dualize(), h);
        let s3 = constant(ring(3), &GroupTable::s3());
        assert_eq!(s3.dualize().dualize(), s3);
    }

    #[test]
    fn tensor_of_mu2() {
        let (t, rho_b, rho_c) = mu(ring(2), 2).tensor(&mu(ring(2), 2)).unwrap();
        assert_eq!(t.rank(), 4);
        assert!(t.check_axioms().passed());
        assert!(rho_b.check().passed());
        assert!(rho_c.check().passed());
        for i in 0..2 {
            for k in 0..2 {
                let b = rho_b.matrix.col(i);
                let c = rho_c.matrix.col(k);
                assert_eq!(t.mul(&b, &c), t.mul(&c, &b));
            }
        }
    }

    #[test]
    fn tensor_with_trivial_is_identity() {
        let h = mu(ring(3), 3);
        let (t, _, _) = h.tensor(&FiniteFlatHopf::trivial(ring(3), Location::Integral)).unwrap();
        assert_eq!(t, h);
    }

    #[test]
    fn tensor_of_constants_is_constant_of_product() {
        let r = ring(2);
        let z2 = GroupTable::cyclic(2);
        let (t, _, _) = constant(r, &z2).tensor(&constant(r, &z2)).unwrap();
        assert_eq!(t, constant(r, &z2.product(&z2)));
    }

    #[test]
    fn dual_commutes_with_tensor() {
        let r = ring(2);
        let (b, c) = (mu(r, 2), constant_cyclic(r, 4));
        let (t, _, _) = b.tensor(&c).unwrap();
        let (td, _, _) = b.dualize().tensor(&c.dualize()).unwrap();
        assert_eq!(t.dualize(), td);
    }

    #[test]
    fn base_change_to_residue_field() {
        let h = mu(ring(2), 2).base_change(BaseChange::ResidueField).unwrap();
        assert_eq!(h.location(), Location::Residue);
        assert!(h.check_axioms().passed());
        let t = constant_cyclic(ring(3), 3).base_change(BaseChange::ResidueField).unwrap();
        assert!(t.check_axioms().passed());
        let k = mu(ring(5), 5).base_change(BaseChange::FractionField).unwrap();
        assert!(k.check_axioms().passed());
        assert!(k.base_change(BaseChange::ResidueField).is_err());
    }

    #[test]
    fn transport_to_same_lattice_is_identity() {
        let h = mu(ring(2), 4);
        let t = h.transport(&Matrix::identity(4), Location::Integral).unwrap();
        assert_eq!(t, h);
    }
}
