//! Star products, Hopf ideals and their flat quotients, cokernels and
//! quotients `G/H` of finite flat group schemes.
//!
//! Cokernels are built on the dual side: for a group map `H → G` given as
//! `f: G-alg → H-alg`, the Cartier duals form `f^∨: H^∨ → G^∨`, and the
//! cokernel is the dual of the flat quotient of `G^∨ ⋆_{H^∨} R`.
//!
//! The ideal of `G^∨` is generated by `f^∨(α) − α(1_H)`, i.e. by the rows of
//! `f` minus `unit_H[α]·ε_G`. Over `Z_(2)` this gives:
//! - `μ2 ↪ μ4`: in functions on `Z/4` (pointwise), the span of `δ_1, δ_3`;
//!   the quotient is functions on `Z/2`, so the cokernel is `μ2`.
//! - `Z/2 ↪ Z/4`: in `R[Z/4] = R[x]/(x⁴ − 1)`, the ideal `(x² − 1)`, spanned by
//!   `x² − 1, x³ − x`; the cokernel is `Z/2`.
//! - the model map `Z/2 → μ2`: in functions on `Z/2`, the span of `2·δ_1`,
//!   which is not saturated; its saturation is the augmentation ideal and the
//!   cokernel is trivial.

use std::fmt;

use num_traits::Zero;

use crate::dvr::{flat_quotient, Lattice, Location, Matrix, Scalar};
use crate::error::{Error, Result};
use crate::hopf::{FiniteFlatHopf, HopfMorphism};
use crate::pushout::DEFAULT_MAX_ITERATIONS;

/// Smallest `R`-submodule containing `generators` and stable under left and
/// right multiplication by the basis of `h`.
pub fn two_sided_ideal_closure(h: &FiniteFlatHopf, generators: &[Vec<Scalar>], max_iterations: usize) -> Result<Lattice> {
    let n = h.rank();
    if let Some(g) = generators.iter().find(|g| g.len() != n) {
        return Err(Error::Shape(format!("ideal generator of length {}, rank {n}", g.len())));
    }
    let ring = h.ring();
    let basis: Vec<_> = (0..n).map(|i| h.algebra.basis_vector(i)).collect();
    let mut ideal = Lattice::hermite(&ring, n, generators);
    for _ in 0..max_iterations {
        let mut gens = ideal.basis().to_vec();
        for x in ideal.basis() {
            for e in &basis {
                gens.push(h.mul(e, x));
                gens.push(h.mul(x, e));
            }
        }
        let next = Lattice::hermite(&ring, n, &gens);
        if next == ideal {
            return Ok(ideal);
        }
        ideal = next;
    }
    Err(Error::NonTerminating(max_iterations))
}

/// A Hopf algebra together with a two-sided ideal of it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PresentedHopfQuotient {
    pub ambient: FiniteFlatHopf,
    pub ideal: Lattice,
    pub saturated: bool,
}

impl PresentedHopfQuotient {
    pub fn new(ambient: FiniteFlatHopf, ideal: Lattice) -> Result<Self> {
        let ring = ambient.ring();
        let saturated = crate::dvr::saturate(&ring, ambient.rank(), ideal.basis()) == ideal;
        let q = PresentedHopfQuotient {
            ambient,
            ideal,
            saturated,
        };
        if !q.is_two_sided_ideal() {
            return Err(Error::Shape("submodule is not a two-sided ideal".into()));
        }
        Ok(q)
    }

    pub fn is_two_sided_ideal(&self) -> bool {
        let ring = self.ambient.ring();
        let n = self.ambient.rank();
        self.ideal.basis().iter().all(|x| {
            (0..n).all(|i| {
                let e = self.ambient.algebra.basis_vector(i);
                self.ideal.contains(&ring, &self.ambient.mul(&e, x)) && self.ideal.contains(&ring, &self.ambient.mul(x, &e))
            })
        })
    }

    /// `Δ(I) ⊆ I ⊗ H + H ⊗ I`, `ε(I) = 0` and `S(I) ⊆ I`.
    pub fn is_hopf_ideal(&self) -> bool {
        let h = &self.ambient;
        let ring = h.ring();
        let n = h.rank();
        let mut gens = Vec::new();
        for x in self.ideal.basis() {
            for k in 0..n {
                let e = h.algebra.basis_vector(k);
                gens.push(kron(x, &e));
                gens.push(kron(&e, x));
            }
        }
        let coideal = Lattice::hermite(&ring, n * n, &gens);
        self.ideal.basis().iter().all(|x| {
            let delta = h.comul(x);
            let flat: Vec<Scalar> = delta.entries().cloned().collect();
            coideal.contains(&ring, &flat)
                && h.counit_of(x).is_zero()
                && self.ideal.contains(&ring, &h.antipode.mul_vec(x))
        })
    }
}

fn kron(x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
    x.iter().flat_map(|a| y.iter().map(move |b| a * b)).collect()
}

/// `B ⋆_A C`: the tensor product `B ⊗ C` modulo the ideal generated by
/// `f(a) ⊗ 1 − 1 ⊗ g(a)`.
pub fn star_product(f: &HopfMorphism, g: &HopfMorphism) -> Result<PresentedHopfQuotient> {
    if f.source != g.source {
        return Err(Error::Shape("the two maps need a common source".into()));
    }
    for (leg, name) in [(f, "f"), (g, "g")] {
        leg.check()
            .into_result()
            .map_err(|e| Error::NotAMorphism(format!("{name}: {e}")))?;
    }
    let (ambient, rho_b, rho_c) = f.target.tensor(&g.target)?;
    let left = rho_b.matrix.mul(&f.matrix);
    let right = rho_c.matrix.mul(&g.matrix);
    let gens = left.sub(&right).to_cols();
    let ideal = two_sided_ideal_closure(&ambient, &gens, DEFAULT_MAX_ITERATIONS)?;
    let q = PresentedHopfQuotient::new(ambient, ideal)?;
    if !q.is_hopf_ideal() {
        return Err(Error::InternalContradiction("star product ideal is not a Hopf ideal".into()));
    }
    Ok(q)
}

/// `F(H / I)`: the quotient by the saturation of the ideal, with its
/// projection.
pub fn hopf_flat_quotient(q: &PresentedHopfQuotient) -> Result<(FiniteFlatHopf, HopfMorphism)> {
    let h = &q.ambient;
    let ring = h.ring();
    let fq = flat_quotient(&ring, h.rank(), q.ideal.basis());
    if fq.saturated.contains(&ring, h.unit()) {
        return Err(Error::UnitInIdeal);
    }
    let quotient = h.quotient_structure(&fq.projection, &fq.section, Location::Integral)?;
    let report = quotient.check_axioms();
    if !report.passed() {
        return Err(Error::InternalContradiction(format!("flat quotient is not a Hopf algebra: {report}")));
    }
    let projection = HopfMorphism::shaped(h.clone(), quotient.clone(), fq.projection)?;
    let check = projection.check();
    if !check.passed() {
        return Err(Error::InternalContradiction(format!("quotient projection is not a Hopf morphism: {check}")));
    }
    Ok((quotient, projection))
}

/// Cokernel of a group map `H → G` with its projection `G → C`, the latter
/// given on coordinate rings as `C-alg → G-alg`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cokernel {
    pub hopf: FiniteFlatHopf,
    pub proj: HopfMorphism,
    /// The input map `G-alg → H-alg`.
    pub map: HopfMorphism,
    /// The star product on the dual side.
    pub presented: PresentedHopfQuotient,
}

fn require_commutative(h: &FiniteFlatHopf, name: &str) -> Result<()> {
    if h.is_commutative() {
        Ok(())
    } else {
        Err(Error::NonCommutative(name.to_string()))
    }
}

/// The composite `H → G → Q` is trivial: `f · v = 1_H ⊗ ε_Q`.
fn kills(f: &HopfMorphism, v: &Matrix, counit: &[Scalar]) -> bool {
    let composite = f.matrix.mul(v);
    let unit = f.target.unit();
    (0..composite.rows()).all(|i| (0..composite.cols()).all(|j| composite[(i, j)] == &unit[i] * &counit[j]))
}

/// Cokernel of the group map whose coordinate-ring map is `f: G-alg → H-alg`.
pub fn cokernel(f: &HopfMorphism) -> Result<Cokernel> {
    let (g_alg, h_alg) = (&f.source, &f.target);
    require_commutative(g_alg, "G")?;
    require_commutative(h_alg, "H")?;
    f.check().into_result().map_err(|e| Error::NotAMorphism(format!("f: {e}")))?;
    let (g_dual, h_dual) = (g_alg.dualize(), h_alg.dualize());
    let f_dual = HopfMorphism::new_unchecked(h_dual.clone(), g_dual, f.matrix.transpose());
    // α ↦ α(1_H)
    let trivial = FiniteFlatHopf::trivial(h_alg.ring(), Location::Integral);
    let counit_side = HopfMorphism::new_unchecked(h_dual, trivial, Matrix::from_rows(vec![h_alg.unit().to_vec()]));
    let presented = star_product(&f_dual, &counit_side)?;
    let (quotient, projection) = hopf_flat_quotient(&presented)?;
    let hopf = quotient.dualize();
    let proj = HopfMorphism::shaped(hopf.clone(), g_alg.clone(), projection.matrix.transpose())?;
    let check = proj.check();
    if !check.passed() {
        return Err(Error::InternalContradiction(format!("cokernel projection is not a Hopf morphism: {check}")));
    }
    if !kills(f, &proj.matrix, &hopf.counit) {
        return Err(Error::InternalContradiction("cokernel projection does not kill the image".into()));
    }
    Ok(Cokernel {
        hopf,
        proj,
        map: f.clone(),
        presented,
    })
}

/// The unique `C → Q` through which `v: G → Q` factors, given `v` on
/// coordinate rings as `Q-alg → G-alg`.
pub fn cokernel_induced(cok: &Cokernel, v: &HopfMorphism) -> Result<HopfMorphism> {
    if v.target != cok.map.source {
        return Err(Error::Shape("v must start from the target of the cokernel's map".into()));
    }
    v.check().into_result().map_err(|e| Error::NotAMorphism(format!("v: {e}")))?;
    if !kills(&cok.map, &v.matrix, &v.source.counit) {
        return Err(Error::SquareDoesNotCommute("v does not kill the image of H".into()));
    }
    // proj* is injective, so a solution is unique
    let z = cok
        .proj
        .matrix
        .solve(&v.matrix)
        .ok_or_else(|| Error::InternalContradiction("v does not factor through the cokernel".into()))?;
    let p = HopfMorphism::shaped(v.source.clone(), cok.hopf.clone(), z)?;
    let check = p.check();
    if !check.passed() {
        return Err(Error::InternalContradiction(format!("induced map is not a Hopf morphism over R: {check}")));
    }
    Ok(p)
}

/// Comparison of `rank(G)` with `rank(H) · rank(G/H)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankAdvisory {
    pub g: usize,
    pub h: usize,
    pub q: usize,
}

impl RankAdvisory {
    pub fn multiplicative(&self) -> bool {
        self.g == self.h * self.q
    }
}

impl fmt::Display for RankAdvisory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.multiplicative() { "holds" } else { "fails" };
        write!(f, "rank(G) = {}, rank(H) * rank(G/H) = {} * {}: multiplicativity {verdict}", self.g, self.h, self.q)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quotient {
    pub cokernel: Cokernel,
    pub advisory: RankAdvisory,
}

/// A surjective map of free modules: its columns span the whole target
/// lattice, so it stays surjective over `K` and over `k`.
pub fn is_closed_immersion(incl: &HopfMorphism) -> bool {
    let n = incl.matrix.rows();
    Lattice::hermite(&incl.source.ring(), n, &incl.matrix.to_cols()) == Lattice::standard(n)
}

/// `G/H` for a closed immersion `H ↪ G`, given as `incl: G-alg → H-alg`.
pub fn quotient(g: &FiniteFlatHopf, h: &FiniteFlatHopf, incl: &HopfMorphism) -> Result<Quotient> {
    if incl.source != *g || incl.target != *h {
        return Err(Error::Shape("the inclusion must map the algebra of G to the algebra of H".into()));
    }
    if !is_closed_immersion(incl) {
        return Err(Error::NotAClosedImmersion("the coordinate map is not surjective over R".into()));
    }
    let cokernel = cokernel(incl)?;
    let advisory = RankAdvisory {
        g: g.rank(),
        h: h.rank(),
        q: cokernel.hopf.rank(),
    };
    Ok(Quotient { cokernel, advisory })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dvr::{int, RingSpec};
    use crate::hopf::fixtures::{constant_cyclic, mu};
    use crate::hopf::{canonical_form, enumerate_hopf_morphisms};

    fn r2() -> RingSpec {
        RingSpec::new(2).unwrap()
    }

    /// `mu4-alg → mu2-alg`, `t ↦ s`.
    fn mu_inclusion() -> HopfMorphism {
        let cols: Vec<_> = (0..4).map(|i| crate::hopf::unit_vector(2, i % 2)).collect();
        HopfMorphism::new(mu(r2(), 4), mu(r2(), 2), Matrix::from_cols(2, &cols)).unwrap()
    }

    /// Restriction of functions along `Z/2 ↪ Z/4`, `1 ↦ 2`.
    fn constant_inclusion() -> HopfMorphism {
        let m = Matrix::from_i64(&[&[1, 0, 0, 0], &[0, 0, 1, 0]]);
        HopfMorphism::new(constant_cyclic(r2(), 4), constant_cyclic(r2(), 2), m).unwrap()
    }

    fn model_map() -> HopfMorphism {
        HopfMorphism::new(mu(r2(), 2), constant_cyclic(r2(), 2), Matrix::from_i64(&[&[1, 1], &[1, -1]])).unwrap()
    }

    fn lattice(rows: &[&[i64]]) -> Lattice {
        let n = rows[0].len();
        Lattice::hermite(&r2(), n, &Matrix::from_i64(rows).to_rows())
    }

    #[test]
    fn ideal_closure_in_group_algebra() {
        let h = mu(r2(), 4);
        let ideal = two_sided_ideal_closure(&h, &[vec![int(-1), int(0), int(1), int(0)]], 64).unwrap();
        assert_eq!(ideal, lattice(&[&[-1, 0, 1, 0], &[0, -1, 0, 1]]));
        assert_eq!(two_sided_ideal_closure(&h, &[vec![int(0); 4]], 64).unwrap().rank(), 0);
        assert_eq!(two_sided_ideal_closure(&h, &[h.unit().to_vec()], 64).unwrap(), Lattice::standard(4));
    }

    #[test]
    fn star_product_over_trivial_is_tensor() {
        let t = FiniteFlatHopf::trivial(r2(), Location::Integral);
        let (b, c) = (mu(r2(), 2), constant_cyclic(r2(), 2));
        let f = HopfMorphism::new(t.clone(), b.clone(), Matrix::from_cols(2, &[b.unit().to_vec()])).unwrap();
        let g = HopfMorphism::new(t, c.clone(), Matrix::from_cols(2, &[c.unit().to_vec()])).unwrap();
        let q = star_product(&f, &g).unwrap();
        assert_eq!(q.ideal.rank(), 0);
        let (quot, proj) = hopf_flat_quotient(&q).unwrap();
        assert_eq!(quot.rank(), 4);
        assert_eq!(proj.matrix, Matrix::identity(4));
    }

    #[test]
    fn star_product_of_identities_is_the_algebra() {
        let a = mu(r2(), 4);
        let id = HopfMorphism::identity(&a);
        let (quot, _) = hopf_flat_quotient(&star_product(&id, &id).unwrap()).unwrap();
        assert_eq!(quot.rank(), 4);
        assert_eq!(canonical_form(&quot), canonical_form(&a));
    }

    #[test]
    fn unit_in_ideal_is_rejected() {
        let h = mu(r2(), 2);
        let q = PresentedHopfQuotient::new(h.clone(), Lattice::standard(2)).unwrap();
        assert!(matches!(hopf_flat_quotient(&q), Err(Error::UnitInIdeal)));
    }

    #[test]
    fn cokernel_of_mu2_in_mu4() {
        let cok = cokernel(&mu_inclusion()).unwrap();
        // dual side: functions on Z/4 modulo the indicators of 1 and 3
        assert_eq!(cok.presented.ideal, lattice(&[&[0, 1, 0, 0], &[0, 0, 0, 1]]));
        assert_eq!(canonical_form(&cok.hopf), canonical_form(&mu(r2(), 2)));
    }

    #[test]
    fn cokernel_of_constant_inclusion() {
        let cok = cokernel(&constant_inclusion()).unwrap();
        // dual side: R[x]/(x⁴ − 1) modulo x² − 1
        assert_eq!(cok.presented.ideal, lattice(&[&[-1, 0, 1, 0], &[0, -1, 0, 1]]));
        assert_eq!(canonical_form(&cok.hopf), canonical_form(&constant_cyclic(r2(), 2)));
        let mu_side = cokernel(&mu_inclusion()).unwrap();
        assert_eq!(canonical_form(&cok.hopf.dualize()), canonical_form(&mu_side.hopf));
    }

    #[test]
    fn cokernel_of_model_map_is_trivial() {
        let cok = cokernel(&model_map()).unwrap();
        assert_eq!(cok.presented.ideal, lattice(&[&[0, 2]]));
        assert!(!cok.presented.saturated);
        assert_eq!(cok.hopf, FiniteFlatHopf::trivial(r2(), Location::Integral));
    }

    #[test]
    fn cokernel_universal_property() {
        let cok = cokernel(&mu_inclusion()).unwrap();
        let mut factored = 0;
        for q in [mu(r2(), 2), mu(r2(), 4), constant_cyclic(r2(), 2)] {
            for v in enumerate_hopf_morphisms(&q, &cok.map.source).unwrap() {
                match cokernel_induced(&cok, &v) {
                    Ok(p) => {
                        assert_eq!(cok.proj.matrix.mul(&p.matrix), v.matrix);
                        factored += 1;
                    }
                    Err(Error::SquareDoesNotCommute(_)) => {}
                    Err(e) => panic!("{e}"),
                }
            }
        }
        assert!(factored >= 3);
    }

    #[test]
    fn quotients() {
        let q = quotient(&mu(r2(), 4), &mu(r2(), 2), &mu_inclusion()).unwrap();
        assert!(q.advisory.multiplicative());
        let g = mu(r2(), 4);
        let t = FiniteFlatHopf::trivial(r2(), Location::Integral);
        let to_trivial = HopfMorphism::new(g.clone(), t.clone(), Matrix::from_rows(vec![g.counit.clone()])).unwrap();
        let q = quotient(&g, &t, &to_trivial).unwrap();
        assert_eq!(canonical_form(&q.cokernel.hopf), canonical_form(&g));
        let q = quotient(&g, &g, &HopfMorphism::identity(&g)).unwrap();
        assert_eq!(q.cokernel.hopf, t);
        assert!(matches!(
            quotient(&mu(r2(), 2), &constant_cyclic(r2(), 2), &model_map()),
            Err(Error::NotAClosedImmersion(_))
        ));
    }
}
