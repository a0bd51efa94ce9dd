//! Quasi-finite flat group schemes stored as a generic fibre, a finite part
//! and the restriction map between them, and their pushouts.
//!
//! A `QuasiFiniteGS` with generic algebra `A_K` (rank `t + s`) and finite part
//! `F` (rank `s`) carries `glue: A_K → F ⊗ K`, the restriction of functions to
//! the open and closed subgroup `F_K ⊆ G_K`.

use std::fmt;

use num_traits::Zero;

use crate::dvr::{Lattice, Location, Matrix, Scalar};
use crate::error::{Error, Result};
use crate::hopf::{grouplike_basis, idempotent_basis, BaseChange, FiniteFlatHopf, GenericHopfMorphism, HopfMorphism};
use crate::pushout::{lower_bound, multiplicative_closure, PushoutResult};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuasiFiniteGS {
    /// Over `K`.
    pub generic: FiniteFlatHopf,
    /// Over `R`.
    pub finite_part: FiniteFlatHopf,
    /// `rank(finite_part) × rank(generic)`, over `K`.
    pub glue: Matrix,
}

/// Verdicts of `validate_qf`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QfReport {
    /// Rank of the part of the generic fibre away from the finite part.
    pub t: usize,
    pub s: usize,
    pub checks: Vec<(&'static str, bool)>,
}

impl QfReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|(_, ok)| *ok)
    }

    pub fn check(&self, name: &str) -> Option<bool> {
        self.checks.iter().find(|(n, _)| *n == name).map(|(_, ok)| *ok)
    }

    fn first_failure(&self) -> Option<&'static str> {
        self.checks.iter().find(|(_, ok)| !ok).map(|(n, _)| *n)
    }
}

impl fmt::Display for QfReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "t = {}, s = {}", self.t, self.s)?;
        for (i, (name, ok)) in self.checks.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{name}: {}", if *ok { "pass" } else { "FAIL" })?;
        }
        Ok(())
    }
}

impl QuasiFiniteGS {
    pub fn new(generic: FiniteFlatHopf, finite_part: FiniteFlatHopf, glue: Matrix) -> Result<Self> {
        let g = QuasiFiniteGS {
            generic,
            finite_part,
            glue,
        };
        let report = validate_qf(&g);
        match report.first_failure() {
            None => Ok(g),
            Some(name) => Err(Error::QuasiFinite(format!("{name} check failed\n{report}"))),
        }
    }

    /// A finite flat group scheme seen as quasi-finite: `t = 0`, glue the identity.
    pub fn purely_finite(h: &FiniteFlatHopf) -> Result<Self> {
        let generic = h.base_change(BaseChange::FractionField)?;
        QuasiFiniteGS::new(generic, h.clone(), Matrix::identity(h.rank()))
    }

    /// Generic fibre `generic` whose finite part is the unit section alone.
    pub fn with_trivial_finite_part(generic: &FiniteFlatHopf) -> Result<Self> {
        let generic = generic.base_change(BaseChange::FractionField)?;
        let finite = FiniteFlatHopf::trivial(generic.ring(), Location::Integral);
        let glue = Matrix::from_rows(vec![generic.counit.clone()]);
        QuasiFiniteGS::new(generic, finite, glue)
    }

    /// `(t, s)` with `A ≅ K^t ⊕ R^s` as modules.
    pub fn shape(&self) -> (usize, usize) {
        let s = self.finite_part.rank();
        (self.generic.rank().saturating_sub(s), s)
    }

    fn glue_morphism(&self) -> Result<HopfMorphism> {
        let target = self.finite_part.base_change(BaseChange::FractionField)?;
        HopfMorphism::shaped(self.generic.clone(), target, self.glue.clone())
    }

    /// The idempotent `e` with `glue(e) = 1` and `ker(glue) = (1 − e)·A_K`.
    pub fn idempotent(&self) -> Option<Vec<Scalar>> {
        let alg = &self.generic.algebra;
        let n = alg.rank();
        let kernel = self.glue.kernel();
        let t = kernel.len();
        let mut e = alg.unit.clone();
        if t > 0 {
            // e = 1 + Σ c_k i_k with e·i_j = 0 for every kernel vector i_j
            let cols: Vec<Vec<Scalar>> = kernel
                .iter()
                .map(|ik| kernel.iter().flat_map(|ij| alg.mul(ik, ij)).collect())
                .collect();
            let system = Matrix::from_cols(n * t, &cols);
            let rhs: Vec<Scalar> = kernel.iter().flat_map(|ij| ij.iter().map(|x| -x)).collect();
            let c = system.solve(&Matrix::from_cols(n * t, &[rhs]))?;
            for (k, ik) in kernel.iter().enumerate() {
                for (x, y) in e.iter_mut().zip(ik) {
                    *x += &c[(k, 0)] * y;
                }
            }
        }
        if alg.mul(&e, &e) != e || self.glue.mul_vec(&e) != self.finite_part.unit() {
            return None;
        }
        let one_minus_e: Vec<Scalar> = alg.unit.iter().zip(&e).map(|(a, b)| a - b).collect();
        let span: Vec<Vec<Scalar>> = (0..n).map(|i| alg.mul(&one_minus_e, &alg.basis_vector(i))).collect();
        let in_kernel = span.iter().all(|v| self.glue.mul_vec(v).iter().all(Zero::is_zero));
        let rank = if n == 0 { 0 } else { Matrix::from_cols(n, &span).rank() };
        (in_kernel && rank == t).then_some(e)
    }
}

pub fn validate_qf(g: &QuasiFiniteGS) -> QfReport {
    let (t, s) = g.shape();
    let mut checks = vec![
        ("generic-over-K", g.generic.location() == Location::Fraction),
        ("finite-part-over-R", g.finite_part.location() == Location::Integral),
        ("same-ring", g.generic.ring() == g.finite_part.ring()),
        ("generic-axioms", g.generic.check_axioms().passed()),
        ("finite-part-axioms", g.finite_part.check_axioms().passed()),
    ];
    let shaped = g.glue.rows() == s && g.glue.cols() == g.generic.rank() && checks[2].1;
    let morphism = shaped && g.glue_morphism().map(|m| m.check().passed()).unwrap_or(false);
    checks.push(("glue-morphism", morphism));
    checks.push(("glue-surjective", shaped && g.glue.rank() == s));
    checks.push(("idempotent-kernel", morphism && g.idempotent().is_some()));
    QfReport { t, s, checks }
}

pub fn finite_part(g: &QuasiFiniteGS) -> Result<FiniteFlatHopf> {
    let report = validate_qf(g);
    if let Some(name) = report.first_failure() {
        return Err(Error::QuasiFinite(format!("{name} check failed")));
    }
    if g.finite_part.dualize().dualize() != g.finite_part {
        return Err(Error::InternalContradiction("double dual of the finite part differs".into()));
    }
    Ok(g.finite_part.clone())
}

/// A morphism of quasi-finite group schemes, given on coordinate rings:
/// `generic: source.generic → target.generic` over `K` and
/// `finite: source.finite_part → target.finite_part` over `R`, compatible with
/// the glue maps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QFMorphism {
    pub source: QuasiFiniteGS,
    pub target: QuasiFiniteGS,
    pub generic: Matrix,
    pub finite: HopfMorphism,
}

impl QFMorphism {
    pub fn new(source: QuasiFiniteGS, target: QuasiFiniteGS, generic: Matrix, finite: Matrix) -> Result<Self> {
        let g = HopfMorphism::shaped(source.generic.clone(), target.generic.clone(), generic.clone())?;
        g.check()
            .into_result()
            .map_err(|e| Error::NotAMorphism(format!("generic map: {e}")))?;
        let finite = HopfMorphism::new(source.finite_part.clone(), target.finite_part.clone(), finite)
            .map_err(|e| Error::NotAMorphism(format!("finite part map: {e}")))?;
        if target.glue.mul(&generic) != finite.matrix.mul(&source.glue) {
            return Err(Error::SquareDoesNotCommute(
                "generic and finite part maps disagree on the finite part".into(),
            ));
        }
        Ok(QFMorphism {
            source,
            target,
            generic,
            finite,
        })
    }

    pub fn identity(g: &QuasiFiniteGS) -> Self {
        QFMorphism {
            source: g.clone(),
            target: g.clone(),
            generic: Matrix::identity(g.generic.rank()),
            finite: HopfMorphism::identity(&g.finite_part),
        }
    }

    /// Model map on generic fibres.
    pub fn is_generic_iso(&self) -> bool {
        self.generic.rows() == self.generic.cols() && !self.generic.determinant().is_zero()
    }
}

/// Pushout `P` of `m: U → M` and `n: U → N` with its legs `M → P`, `N → P`
/// (as coordinate-ring maps out of `P`), and the finite flat bounds used.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QfPushout {
    pub p: QuasiFiniteGS,
    pub alpha: QFMorphism,
    pub beta: QFMorphism,
    /// Basis of `E = P_f^∨` as columns in the coordinates of `N′^∨ ⊗ K`.
    pub witness: Matrix,
    pub l1: PushoutResult,
    pub l2: PushoutResult,
    pub l: PushoutResult,
}

fn generic_map(source: &FiniteFlatHopf, target: &FiniteFlatHopf, matrix: Matrix) -> Result<GenericHopfMorphism> {
    GenericHopfMorphism::new(source.clone(), target.clone(), matrix)
}

/// Pushout of `m: U → M` (generically an isomorphism) and `n: U → N`, given
/// on coordinate rings as `m: M → U` and `n: N → U`, using a finite flat model
/// `nprime` of `N_K` with `witness: N′ ⊗ K ≅ N.generic` (coordinate rings).
pub fn qf_pushout(
    m: &QFMorphism,
    n: &QFMorphism,
    nprime: &FiniteFlatHopf,
    witness: &Matrix,
    max_iterations: usize,
) -> Result<QfPushout> {
    if m.target != n.target {
        return Err(Error::Shape("m and n must start from the same U".into()));
    }
    if !m.is_generic_iso() {
        return Err(Error::NotAModelMap("m: U -> M must be an isomorphism on generic fibres".into()));
    }
    let (mm, nn) = (&m.source, &n.source);
    let nprime_k = nprime.base_change(BaseChange::FractionField)?;
    let w = HopfMorphism::shaped(nprime_k, nn.generic.clone(), witness.clone())?;
    w.check()
        .into_result()
        .map_err(|e| Error::NotAMorphism(format!("witness: {e}")))?;
    let w_inv = witness
        .inverse()
        .ok_or_else(|| Error::NotAModelMap("witness is not an isomorphism".into()))?;

    // generic maps N′ → M_f and N′ → N_f on coordinate rings
    let m_inv = m.generic.inverse().expect("checked invertible");
    let to_m_generic = m_inv.mul(&n.generic);
    let psi1 = mm.glue.mul(&to_m_generic).mul(witness);
    let psi2 = nn.glue.mul(witness);
    let l1 = lower_bound(&mm.finite_part, nprime, &generic_map(nprime, &mm.finite_part, psi1.clone())?, max_iterations)?;
    let l2 = lower_bound(&nn.finite_part, nprime, &generic_map(nprime, &nn.finite_part, psi2.clone())?, max_iterations)?;
    let b1_inv = l1.beta.matrix.inverse().expect("model map");
    let psi = b1_inv.mul(&l2.beta.matrix);
    let l = lower_bound(&l1.p, &l2.p, &generic_map(&l2.p, &l1.p, psi)?, max_iterations)?;

    // E: generated by the images of M_f^∨ and N_f^∨ in N′^∨ ⊗ K
    let dual_k = nprime.dualize().base_change(BaseChange::FractionField)?;
    let mut seeds = psi2.transpose().to_cols();
    seeds.extend(psi1.transpose().to_cols());
    let e = multiplicative_closure(&dual_k.algebra, &seeds, max_iterations)?;
    let to_nprime = l2.beta.matrix.mul(&l.beta.matrix);
    let l_dual = Lattice::hermite(
        &nprime.ring(),
        nprime.rank(),
        &to_nprime.transpose().inverse().expect("model map").to_cols(),
    );
    if !l_dual.contains_lattice(&nprime.ring(), &e) {
        return Err(Error::InternalContradiction("E is not contained in the dual of the lower bound".into()));
    }
    let e_witness = e.matrix();
    let e_hopf = dual_k
        .transport(&e_witness, Location::Integral)
        .map_err(|err| Error::InternalContradiction(format!("E is not a Hopf order: {err}")))?;
    let finite = e_hopf.dualize();
    let glue = e_witness.transpose().mul(&w_inv);
    let p = QuasiFiniteGS {
        generic: nn.generic.clone(),
        finite_part: finite,
        glue,
    };
    let report = validate_qf(&p);
    if !report.passed() {
        return Err(Error::GluingObstruction(format!("glued object is not quasi-finite\n{report}")));
    }
    let coords = |psi: &Matrix| {
        e_witness
            .solve(&psi.transpose())
            .map(|c| c.transpose())
            .ok_or_else(|| Error::InternalContradiction("a generator of E lies outside E".into()))
    };
    let alpha_finite = coords(&psi1)?;
    let beta_finite = coords(&psi2)?;
    let gluing = |err: Error| Error::GluingObstruction(err.to_string());
    let alpha = QFMorphism::new(p.clone(), mm.clone(), to_m_generic, alpha_finite).map_err(gluing)?;
    let beta = QFMorphism::new(p.clone(), nn.clone(), Matrix::identity(nn.generic.rank()), beta_finite).map_err(gluing)?;
    if m.generic.mul(&alpha.generic) != n.generic.mul(&beta.generic) {
        return Err(Error::InternalContradiction("pushout square does not commute".into()));
    }
    Ok(QfPushout {
        p,
        alpha,
        beta,
        witness: e_witness,
        l1,
        l2,
        l,
    })
}

/// `qf_pushout` when `N.generic` is the function algebra of a finite group
/// `Γ` over `K`, with the constant model `Γ_R`.
pub fn qf_pushout_constant(m: &QFMorphism, n: &QFMorphism, max_iterations: usize) -> Result<QfPushout> {
    let generic = &n.source.generic;
    if idempotent_basis(&generic.algebra).is_none() {
        return Err(Error::NotSplit("the generic fibre of N is not a product of copies of K".into()));
    }
    let (g, group) = grouplike_basis(&generic.dualize())
        .ok_or_else(|| Error::NotSplit("the points of the generic fibre of N do not form a group over K".into()))?;
    let nprime = crate::hopf::fixtures::constant(generic.ring(), &group);
    let witness = g
        .transpose()
        .inverse()
        .ok_or_else(|| Error::InternalContradiction("grouplikes are not a basis".into()))?;
    qf_pushout(m, n, &nprime, &witness, max_iterations)
}

/// Generic fibre `(Z/2 × Z/2)_K` with finite part `μ_2` sitting over the
/// first factor; `p = 2`.
pub fn z2xz2_over_mu2(ring: crate::dvr::RingSpec) -> Result<QuasiFiniteGS> {
    use crate::dvr::frac;
    use crate::hopf::fixtures::{constant, mu};
    use crate::hopf::GroupTable;
    if ring.p() != 2 {
        return Err(Error::Unsupported(format!("this fixture needs p = 2, got {}", ring.p())));
    }
    let c2 = GroupTable::cyclic(2);
    let generic = constant(ring, &c2.product(&c2)).base_change(BaseChange::FractionField)?;
    // element (a, b) has index 2a + b; restrict to b = 0, then f_a ↦ (1 ± t)/2
    let half = frac(1, 2);
    let mut glue = Matrix::zeros(2, 4);
    for (a, sign) in [(0usize, 1i64), (1, -1)] {
        glue[(0, 2 * a)] = half.clone();
        glue[(1, 2 * a)] = &half * Scalar::from_integer(sign.into());
    }
    QuasiFiniteGS::new(generic, mu(ring, 2), glue)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dvr::{int, RingSpec};
    use crate::hopf::canonical_form;
    use crate::hopf::fixtures::{constant, constant_cyclic, mu};
    use crate::hopf::GroupTable;
    use crate::pushout::{group_pushout, upper_bound, DEFAULT_MAX_ITERATIONS};

    fn r2() -> RingSpec {
        RingSpec::new(2).unwrap()
    }

    #[test]
    fn purely_finite_validates() {
        let g = QuasiFiniteGS::purely_finite(&mu(r2(), 2)).unwrap();
        let report = validate_qf(&g);
        assert!(report.passed());
        assert_eq!((report.t, report.s), (0, 2));
        assert_eq!(finite_part(&g).unwrap(), mu(r2(), 2));
    }

    #[test]
    fn split_fixture_validates() {
        let g = z2xz2_over_mu2(r2()).unwrap();
        let report = validate_qf(&g);
        assert!(report.passed(), "{report}");
        assert_eq!((report.t, report.s), (2, 2));
        // indicator of the subgroup {(0,0), (1,0)}
        assert_eq!(g.idempotent().unwrap(), vec![int(1), int(0), int(1), int(0)]);
        assert_eq!(finite_part(&g).unwrap(), mu(r2(), 2));
    }

    #[test]
    fn non_surjective_glue_fails() {
        let mut g = z2xz2_over_mu2(r2()).unwrap();
        g.glue = Matrix::zeros(2, 4);
        let report = validate_qf(&g);
        assert_eq!(report.check("glue-surjective"), Some(false));
        assert!(finite_part(&g).is_err());
    }

    #[test]
    fn trivial_finite_part_of_a_non_split_fibre() {
        let g = QuasiFiniteGS::with_trivial_finite_part(&mu(r2(), 3)).unwrap();
        assert_eq!(g.shape(), (2, 1));
        assert_eq!(finite_part(&g).unwrap(), FiniteFlatHopf::trivial(r2(), Location::Integral));
    }

    #[test]
    fn degenerates_to_the_finite_pushout() {
        let psi = GenericHopfMorphism::new(
            constant_cyclic(r2(), 2),
            mu(r2(), 2),
            Matrix::from_rows(vec![vec![crate::dvr::frac(1, 2), crate::dvr::frac(1, 2)], vec![
                crate::dvr::frac(1, 2),
                crate::dvr::frac(-1, 2),
            ]]),
        )
        .unwrap();
        let ub = upper_bound(&mu(r2(), 2), &constant_cyclic(r2(), 2), &psi).unwrap();
        let finite = group_pushout(&ub.m, &ub.n, DEFAULT_MAX_ITERATIONS).unwrap();
        let u = QuasiFiniteGS::purely_finite(&ub.u).unwrap();
        let mq = QuasiFiniteGS::purely_finite(&ub.m.source).unwrap();
        let nq = QuasiFiniteGS::purely_finite(&ub.n.source).unwrap();
        let m = QFMorphism::new(mq, u.clone(), ub.m.matrix.clone(), ub.m.matrix.clone()).unwrap();
        let n = QFMorphism::new(nq, u, ub.n.matrix.clone(), ub.n.matrix.clone()).unwrap();
        let res = qf_pushout(&m, &n, &ub.n.source, &Matrix::identity(2), DEFAULT_MAX_ITERATIONS).unwrap();
        assert_eq!(res.p.finite_part, finite.p);
        assert_eq!(res.alpha.finite.matrix, finite.alpha.matrix);
        assert_eq!(res.beta.finite.matrix, finite.beta.matrix);
        assert_eq!(res.witness, finite.witness);
    }

    /// `U = M = μ_2`, `N` the split fixture, `n` the inclusion of `μ_2` as the
    /// finite part.
    fn inclusion_instance() -> (QFMorphism, QFMorphism) {
        let nq = z2xz2_over_mu2(r2()).unwrap();
        let u = QuasiFiniteGS::purely_finite(&mu(r2(), 2)).unwrap();
        let n = QFMorphism::new(nq.clone(), u.clone(), nq.glue.clone(), Matrix::identity(2)).unwrap();
        (QFMorphism::identity(&u), n)
    }

    #[test]
    fn pushout_along_identity_is_n_for_any_model() {
        let (m, n) = inclusion_instance();
        let c2 = GroupTable::cyclic(2);
        let constant_model = constant(r2(), &c2.product(&c2));
        let a = qf_pushout(&m, &n, &constant_model, &Matrix::identity(4), DEFAULT_MAX_ITERATIONS).unwrap();
        assert_eq!(canonical_form(&a.p.finite_part), canonical_form(&mu(r2(), 2)));
        assert_eq!(a.p.generic, n.source.generic);
        let b = qf_pushout_constant(&m, &n, DEFAULT_MAX_ITERATIONS).unwrap();
        assert_eq!(canonical_form(&b.p.finite_part), canonical_form(&a.p.finite_part));

        // μ_2 × μ_2 as a second model; its function algebra is identified with
        // functions on Z/2 × Z/2 by the character table
        let (mu_sq, _, _) = mu(r2(), 2).tensor(&mu(r2(), 2)).unwrap();
        let chi = Matrix::from_i64(&[&[1, 1, 1, 1], &[1, -1, 1, -1], &[1, 1, -1, -1], &[1, -1, -1, 1]]).transpose();
        let c = qf_pushout(&m, &n, &mu_sq, &chi, DEFAULT_MAX_ITERATIONS).unwrap();
        assert_eq!(canonical_form(&c.p.finite_part), canonical_form(&a.p.finite_part));
    }

    #[test]
    fn non_split_generic_fibre_is_rejected() {
        let nq = QuasiFiniteGS::with_trivial_finite_part(&mu(r2(), 3)).unwrap();
        let u = QuasiFiniteGS::purely_finite(&FiniteFlatHopf::trivial(r2(), Location::Integral)).unwrap();
        let n = QFMorphism::new(nq.clone(), u.clone(), Matrix::from_rows(vec![nq.generic.counit.clone()]), Matrix::identity(1)).unwrap();
        let m = QFMorphism::identity(&u);
        assert!(matches!(qf_pushout_constant(&m, &n, DEFAULT_MAX_ITERATIONS), Err(Error::NotSplit(_))));
    }

    #[test]
    fn trivial_finite_part_survives() {
        let nq = QuasiFiniteGS::with_trivial_finite_part(&constant_cyclic(r2(), 2)).unwrap();
        let u = QuasiFiniteGS::purely_finite(&FiniteFlatHopf::trivial(r2(), Location::Integral)).unwrap();
        let n = QFMorphism::new(nq.clone(), u.clone(), Matrix::from_rows(vec![nq.generic.counit.clone()]), Matrix::identity(1)).unwrap();
        let m = QFMorphism::identity(&u);
        let a = qf_pushout_constant(&m, &n, DEFAULT_MAX_ITERATIONS).unwrap();
        assert_eq!(a.p.finite_part, FiniteFlatHopf::trivial(r2(), Location::Integral));
        let iso = Matrix::from_i64(&[&[1, 1], &[1, -1]]);
        let b = qf_pushout(&m, &n, &mu(r2(), 2), &iso, DEFAULT_MAX_ITERATIONS).unwrap();
        assert_eq!(b.p, a.p);
    }
}
