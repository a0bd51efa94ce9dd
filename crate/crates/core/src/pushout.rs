//! Pushouts of finite flat group schemes along model maps, computed on the
//! dual side as saturated subalgebras of a generic fibre.
//!
//! Conventions: a group-scheme map `X → Y` is handled as its coordinate-ring
//! map `Y-alg → X-alg`. In `group_pushout` the square is
//!
//! ```text
//!   U --m--> M
//!   |        |
//!   n      alpha
//!   v        v
//!   N --beta-> P
//! ```
//!
//! with `m` a model map; `P` is a model of `N_K` and `beta` is a model map.

use num_traits::Zero;

use crate::dvr::{Lattice, Location, Matrix, Scalar};
use crate::error::{Error, Result};
use crate::hopf::{BaseChange, FiniteAlgebra, FiniteFlatHopf, GenericHopfMorphism, HopfMorphism};

pub const DEFAULT_MAX_ITERATIONS: usize = 64;

/// Smallest lattice containing `seeds` and the unit that is closed under
/// multiplication, by alternating products and Hermite reduction.
pub fn multiplicative_closure(alg: &FiniteAlgebra, seeds: &[Vec<Scalar>], max_iterations: usize) -> Result<Lattice> {
    let ring = alg.ring;
    let n = alg.rank();
    let mut gens = seeds.to_vec();
    gens.push(alg.unit.clone());
    let mut lattice = Lattice::hermite(&ring, n, &gens);
    for _ in 0..max_iterations {
        let basis = lattice.basis();
        let mut gens = basis.to_vec();
        for (i, a) in basis.iter().enumerate() {
            for b in &basis[i..] {
                gens.push(alg.mul(a, b));
                gens.push(alg.mul(b, a));
            }
        }
        let next = Lattice::hermite(&ring, n, &gens);
        if next == lattice {
            return Ok(lattice);
        }
        lattice = next;
    }
    Err(Error::NonTerminating(max_iterations))
}

/// `F(B ∗_A C)` with its two structure maps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlatPushout {
    pub hopf: FiniteFlatHopf,
    pub u: HopfMorphism,
    pub v: HopfMorphism,
    /// Basis of the pushout, as columns in the coordinates of `B ⊗ K`.
    pub witness: Matrix,
}

/// Pushout of `f: A → B` and `g: A → C` among finite flat Hopf algebras, for
/// `g` generically an isomorphism: the subalgebra of `B_K` generated by `B`
/// and `f_K g_K^{-1}(C)`.
pub fn flat_hopf_pushout(f: &HopfMorphism, g: &HopfMorphism, max_iterations: usize) -> Result<FlatPushout> {
    if f.source != g.source {
        return Err(Error::Shape("the two legs of a pushout need a common source".into()));
    }
    if !g.is_model_map() {
        return Err(Error::NotAModelMap("the second leg is not generically an isomorphism".into()));
    }
    for (leg, name) in [(f, "f"), (g, "g")] {
        leg.check()
            .into_result()
            .map_err(|e| Error::NotAMorphism(format!("leg {name}: {e}")))?;
    }
    let (b, c) = (&f.target, &g.target);
    let g_inv = g.matrix.inverse().expect("model map is invertible");
    let phi = f.matrix.mul(&g_inv);
    let mut seeds: Vec<Vec<Scalar>> = (0..b.rank()).map(|i| b.algebra.basis_vector(i)).collect();
    seeds.extend(phi.to_cols());
    let b_k = b.base_change(BaseChange::FractionField)?;
    let lattice = multiplicative_closure(&b_k.algebra, &seeds, max_iterations)?;
    let witness = lattice.matrix();
    let hopf = b_k
        .transport(&witness, Location::Integral)
        .map_err(|e| Error::InternalContradiction(format!("saturated pushout lattice is not a Hopf order: {e}")))?;
    let w_inv = witness
        .inverse()
        .ok_or_else(|| Error::InternalContradiction("pushout lattice has the wrong rank".into()))?;
    let u = integral_morphism(b.clone(), hopf.clone(), w_inv.clone(), "u")?;
    let v = integral_morphism(c.clone(), hopf.clone(), w_inv.mul(&phi), "v")?;
    if u.matrix.mul(&f.matrix) != v.matrix.mul(&g.matrix) {
        return Err(Error::InternalContradiction("pushout square does not commute".into()));
    }
    Ok(FlatPushout { hopf, u, v, witness })
}

fn integral_morphism(source: FiniteFlatHopf, target: FiniteFlatHopf, matrix: Matrix, name: &str) -> Result<HopfMorphism> {
    let m = HopfMorphism::shaped(source, target, matrix)?;
    let report = m.check();
    if !report.passed() {
        return Err(Error::InternalContradiction(format!("structure map {name} is not a Hopf morphism over R: {report}")));
    }
    Ok(m)
}

/// A pushout of group schemes with its legs. `alpha` and `beta` are the
/// coordinate-ring maps `P-alg → M-alg` and `P-alg → N-alg`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PushoutResult {
    pub p: FiniteFlatHopf,
    pub alpha: HopfMorphism,
    pub beta: HopfMorphism,
    /// Basis of the dual of `P`, as columns in the coordinates of `N^∨ ⊗ K`.
    pub witness: Matrix,
    pub u: FiniteFlatHopf,
    pub m: HopfMorphism,
    pub n: HopfMorphism,
}

impl PushoutResult {
    pub fn m_object(&self) -> &FiniteFlatHopf {
        &self.m.source
    }

    pub fn n_object(&self) -> &FiniteFlatHopf {
        &self.n.source
    }
}

fn require_commutative(h: &FiniteFlatHopf, name: &str) -> Result<()> {
    if h.is_commutative() {
        Ok(())
    } else {
        Err(Error::NonCommutative(name.to_string()))
    }
}

fn transpose_morphism(m: &HopfMorphism) -> HopfMorphism {
    HopfMorphism::new_unchecked(m.target.dualize(), m.source.dualize(), m.matrix.transpose())
}

/// Pushout of `m: U → M` (a model map) and `n: U → N`, given on coordinate
/// rings as `m: M-alg → U-alg` and `n: N-alg → U-alg`.
pub fn group_pushout(m: &HopfMorphism, n: &HopfMorphism, max_iterations: usize) -> Result<PushoutResult> {
    let u = &m.target;
    if n.target != *u {
        return Err(Error::Shape("m and n must start from the same group scheme U".into()));
    }
    require_commutative(u, "U")?;
    require_commutative(&m.source, "M")?;
    require_commutative(&n.source, "N")?;
    m.check().into_result().map_err(|e| Error::NotAMorphism(format!("m: {e}")))?;
    n.check().into_result().map_err(|e| Error::NotAMorphism(format!("n: {e}")))?;
    if !m.is_model_map() {
        return Err(Error::NotAModelMap(
            "m: U -> M must be generically an isomorphism (the model map belongs on the M leg)".into(),
        ));
    }
    let f = transpose_morphism(n);
    let g = transpose_morphism(m);
    let flat = flat_hopf_pushout(&f, &g, max_iterations)?;
    let p = flat.hopf.dualize();
    let beta = HopfMorphism::new_unchecked(p.clone(), n.source.clone(), flat.u.matrix.transpose());
    let alpha = HopfMorphism::new_unchecked(p.clone(), m.source.clone(), flat.v.matrix.transpose());
    Ok(PushoutResult {
        p,
        alpha,
        beta,
        witness: flat.witness,
        u: u.clone(),
        m: m.clone(),
        n: n.clone(),
    })
}

/// An upper bound `U` with its model map to `M` and its map to `N`, given on
/// coordinate rings.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UpperBound {
    pub u: FiniteFlatHopf,
    pub m: HopfMorphism,
    pub n: HopfMorphism,
    /// Basis of `U`, as columns in the coordinates of `M ⊗ K`.
    pub witness: Matrix,
}

fn check_generic(psi: &GenericHopfMorphism, m: &FiniteFlatHopf, n: &FiniteFlatHopf) -> Result<()> {
    if psi.source != *n || psi.target != *m {
        return Err(Error::Shape("psi must map the algebra of N to the algebra of M".into()));
    }
    require_commutative(m, "M")?;
    require_commutative(n, "N")?;
    psi.check()?
        .into_result()
        .map_err(|e| Error::NotAMorphism(format!("psi over K: {e}")))
}

/// Schematic closure of the graph of `ψ: M_K → N_K` in `M × N`: the image of
/// `M-alg ⊗ N-alg → M-alg ⊗ K`, `b ⊗ c ↦ b·ψ(c)`.
pub fn upper_bound(m: &FiniteFlatHopf, n: &FiniteFlatHopf, psi: &GenericHopfMorphism) -> Result<UpperBound> {
    check_generic(psi, m, n)?;
    let images = psi.matrix.to_cols();
    let mut seeds = Vec::with_capacity(m.rank() * n.rank());
    for i in 0..m.rank() {
        let b = m.algebra.basis_vector(i);
        for c in &images {
            seeds.push(m.mul(&b, c));
        }
    }
    let lattice = Lattice::hermite(&m.ring(), m.rank(), &seeds);
    UpperBound::from_lattice(m, n, psi, &lattice)
}

impl UpperBound {
    /// Upper bound carried by a given lattice in `M ⊗ K`, which must be a Hopf
    /// order containing `M` and `ψ(N)`.
    pub fn from_lattice(m: &FiniteFlatHopf, n: &FiniteFlatHopf, psi: &GenericHopfMorphism, lattice: &Lattice) -> Result<UpperBound> {
        check_generic(psi, m, n)?;
        if lattice.rank() != m.rank() {
            return Err(Error::NotAModelMap("candidate lattice does not have full rank".into()));
        }
        let witness = lattice.matrix();
        let m_k = m.base_change(BaseChange::FractionField)?;
        let u = m_k
            .transport(&witness, Location::Integral)
            .map_err(|e| Error::NotAMorphism(format!("candidate lattice is not a Hopf order: {e}")))?;
        u.check_axioms().into_result()?;
        let w_inv = witness.inverse().expect("full rank");
        let ring = m.ring();
        let m_map = HopfMorphism::shaped(m.clone(), u.clone(), w_inv.clone())?;
        let n_map = HopfMorphism::shaped(n.clone(), u.clone(), w_inv.mul(&psi.matrix))?;
        if !m_map.matrix.is_integral(&ring) {
            return Err(Error::NotAMorphism("candidate lattice does not contain M".into()));
        }
        if !n_map.matrix.is_integral(&ring) {
            return Err(Error::NotAMorphism("candidate lattice does not contain the image of N".into()));
        }
        m_map.check().into_result()?;
        n_map.check().into_result()?;
        Ok(UpperBound {
            u,
            m: m_map,
            n: n_map,
            witness,
        })
    }
}

/// Lower bound of `M` and `N` over `ψ`: the pushout of the upper bound.
/// `alpha` agrees with `ψ ∘ beta` over `K`.
pub fn lower_bound(m: &FiniteFlatHopf, n: &FiniteFlatHopf, psi: &GenericHopfMorphism, max_iterations: usize) -> Result<PushoutResult> {
    let ub = upper_bound(m, n, psi)?;
    lower_bound_over(&ub, psi, max_iterations)
}

/// Lower bound computed from a chosen upper bound.
pub fn lower_bound_over(ub: &UpperBound, psi: &GenericHopfMorphism, max_iterations: usize) -> Result<PushoutResult> {
    let res = group_pushout(&ub.m, &ub.n, max_iterations)?;
    if res.alpha.matrix != psi.matrix.mul(&res.beta.matrix) {
        return Err(Error::InternalContradiction("alpha does not restrict to psi on generic fibres".into()));
    }
    Ok(res)
}

/// The unique `p: P → Q` with `p ∘ alpha = u′` and `p ∘ beta = v′`, given on
/// coordinate rings: `u′: Q-alg → M-alg`, `v′: Q-alg → N-alg`, result
/// `Q-alg → P-alg`.
pub fn induced_morphism(res: &PushoutResult, u_prime: &HopfMorphism, v_prime: &HopfMorphism) -> Result<HopfMorphism> {
    let q = &u_prime.source;
    if v_prime.source != *q {
        return Err(Error::Shape("u' and v' must start from the same Q".into()));
    }
    if u_prime.target != *res.m_object() || v_prime.target != *res.n_object() {
        return Err(Error::Shape("u' must land in M and v' in N".into()));
    }
    if !q.is_commutative() {
        return Err(Error::NonCommutative("Q".into()));
    }
    u_prime.check().into_result()?;
    v_prime.check().into_result()?;
    if res.m.matrix.mul(&u_prime.matrix) != res.n.matrix.mul(&v_prime.matrix) {
        return Err(Error::SquareDoesNotCommute("u' m != v' n".into()));
    }
    let stacked = res.alpha.matrix.vstack(&res.beta.matrix);
    if stacked.rank() != res.p.rank() {
        return Err(Error::InternalContradiction("pushout legs are not jointly injective".into()));
    }
    let rhs = u_prime.matrix.vstack(&v_prime.matrix);
    let z = stacked
        .solve(&rhs)
        .ok_or_else(|| Error::InternalContradiction("no factorization through the pushout".into()))?;
    if !z.is_integral(&q.ring()) {
        return Err(Error::InternalContradiction("the factorization through the pushout is not integral".into()));
    }
    integral_morphism(q.clone(), res.p.clone(), z, "p")
}

/// `det` of the generic identification `P_K ≅ N_K` given by `beta`.
pub fn witness_determinant(res: &PushoutResult) -> Scalar {
    let d = res.beta.matrix.determinant();
    debug_assert!(!d.is_zero());
    d
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dvr::{frac, int, RingSpec, Valuation};
    use crate::hopf::canonical_form;
    use crate::hopf::fixtures::{constant_cyclic, mu};

    fn r2() -> RingSpec {
        RingSpec::new(2).unwrap()
    }

    /// `mu2-alg → Z/2-alg`, `t ↦ f0 − f1`: the model map `Z/2 → μ_2`.
    fn model_map() -> HopfMorphism {
        HopfMorphism::new(mu(r2(), 2), constant_cyclic(r2(), 2), Matrix::from_i64(&[&[1, 1], &[1, -1]])).unwrap()
    }

    /// `Z/2-alg_K → mu2-alg_K`, the inverse of the model map.
    fn generic_iso() -> GenericHopfMorphism {
        GenericHopfMorphism::new(
            constant_cyclic(r2(), 2),
            mu(r2(), 2),
            Matrix::from_rows(vec![vec![frac(1, 2), frac(1, 2)], vec![frac(1, 2), frac(-1, 2)]]),
        )
        .unwrap()
    }

    #[test]
    fn upper_bound_of_mu2_and_z2() {
        let ub = upper_bound(&mu(r2(), 2), &constant_cyclic(r2(), 2), &generic_iso()).unwrap();
        // columns (1 + t)/2 and t
        assert_eq!(ub.witness, Matrix::from_cols(2, &[vec![frac(1, 2), frac(1, 2)], vec![int(0), int(1)]]));
        assert_eq!(canonical_form(&ub.u), canonical_form(&constant_cyclic(r2(), 2)));
        assert!(ub.m.is_model_map());
    }

    #[test]
    fn upper_bound_with_trivial_or_identity() {
        let m = mu(r2(), 4);
        let trivial = FiniteFlatHopf::trivial(r2(), Location::Integral);
        let psi = GenericHopfMorphism::new(trivial.clone(), m.clone(), Matrix::from_cols(4, &[m.unit().to_vec()])).unwrap();
        let ub = upper_bound(&m, &trivial, &psi).unwrap();
        assert_eq!(ub.u, m);
        let ub = upper_bound(&m, &m, &HopfMorphism::identity(&m).generic()).unwrap();
        assert_eq!(ub.m.matrix, Matrix::identity(4));
        assert_eq!(ub.n.matrix, Matrix::identity(4));
    }

    #[test]
    fn lower_bound_of_mu2_and_z2_is_mu2() {
        let res = lower_bound(&mu(r2(), 2), &constant_cyclic(r2(), 2), &generic_iso(), DEFAULT_MAX_ITERATIONS).unwrap();
        assert_eq!(canonical_form(&res.p), canonical_form(&mu(r2(), 2)));
        assert!(res.beta.is_model_map());
        assert_eq!(r2().valuation(&witness_determinant(&res)), Valuation::Finite(1));
        assert!(res.alpha.check().passed() && res.beta.check().passed());
    }

    #[test]
    fn swapped_lower_bound_is_mu2() {
        let psi = model_map().generic();
        let res = lower_bound(&constant_cyclic(r2(), 2), &mu(r2(), 2), &psi, DEFAULT_MAX_ITERATIONS).unwrap();
        assert_eq!(canonical_form(&res.p), canonical_form(&mu(r2(), 2)));
    }

    #[test]
    fn pushout_along_identity() {
        let n = model_map();
        let u = n.target.clone();
        let res = group_pushout(&HopfMorphism::identity(&u), &n, DEFAULT_MAX_ITERATIONS).unwrap();
        assert_eq!(canonical_form(&res.p), canonical_form(&n.source));
    }

    #[test]
    fn model_map_on_wrong_leg_is_rejected() {
        let m = model_map();
        let trivial = FiniteFlatHopf::trivial(r2(), Location::Integral);
        let collapse = HopfMorphism::new(trivial, m.target.clone(), Matrix::from_cols(2, &[m.target.unit().to_vec()])).unwrap();
        assert!(matches!(group_pushout(&collapse, &m, 64), Err(Error::NotAModelMap(_))));
    }

    #[test]
    fn induced_morphism_to_the_pushout_itself_is_identity() {
        let res = lower_bound(&mu(r2(), 2), &constant_cyclic(r2(), 2), &generic_iso(), DEFAULT_MAX_ITERATIONS).unwrap();
        let p = induced_morphism(&res, &res.alpha, &res.beta).unwrap();
        assert_eq!(p.matrix, Matrix::identity(res.p.rank()));
    }

    #[test]
    fn closure_of_idempotent_and_runaway_seed() {
        let m = mu(r2(), 2).base_change(BaseChange::FractionField).unwrap();
        let idempotent = vec![frac(1, 2), frac(1, 2)];
        let closed = multiplicative_closure(&m.algebra, std::slice::from_ref(&idempotent), 64).unwrap();
        assert_eq!(closed.rank(), 2);
        assert!(closed.contains(&r2(), &idempotent));
        // t/2 squares to 1/4, then 1/16, ...
        let runaway = vec![int(0), frac(1, 2)];
        assert!(matches!(multiplicative_closure(&m.algebra, &[runaway], 3), Err(Error::NonTerminating(3))));
    }
}
