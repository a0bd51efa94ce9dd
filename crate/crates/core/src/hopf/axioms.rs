use std::fmt;

use num_traits::Zero;

use super::FiniteFlatHopf;
use crate::dvr::{Matrix, Scalar};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Axiom {
    Associativity,
    Coassociativity,
    Unit,
    Counit,
    Bialgebra,
    AntipodeLeft,
    AntipodeRight,
    EntriesInRing,
}

impl Axiom {
    pub const ALL: [Axiom; 8] = [
        Axiom::Associativity,
        Axiom::Coassociativity,
        Axiom::Unit,
        Axiom::Counit,
        Axiom::Bialgebra,
        Axiom::AntipodeLeft,
        Axiom::AntipodeRight,
        Axiom::EntriesInRing,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Axiom::Associativity => "assoc",
            Axiom::Coassociativity => "coassoc",
            Axiom::Unit => "unit",
            Axiom::Counit => "counit",
            Axiom::Bialgebra => "bialgebra",
            Axiom::AntipodeLeft => "antipode-left",
            Axiom::AntipodeRight => "antipode-right",
            Axiom::EntriesInRing => "entries-in-ring",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    /// First failing index tuple.
    Fail(Vec<usize>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomReport {
    pub verdicts: Vec<(Axiom, Verdict)>,
    pub commutative: bool,
    pub cocommutative: bool,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.verdicts.iter().all(|(_, v)| *v == Verdict::Pass)
    }

    pub fn verdict(&self, axiom: Axiom) -> &Verdict {
        &self.verdicts.iter().find(|(a, _)| *a == axiom).expect("every axiom is reported").1
    }

    pub fn into_result(self) -> Result<()> {
        match self.verdicts.into_iter().find(|(_, v)| *v != Verdict::Pass) {
            None => Ok(()),
            Some((axiom, Verdict::Fail(idx))) => Err(Error::axiom(axiom.name(), idx)),
            Some(_) => unreachable!(),
        }
    }
}

impl fmt::Display for AxiomReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (axiom, verdict) in &self.verdicts {
            match verdict {
                Verdict::Pass => writeln!(f, "{}: pass", axiom.name())?,
                Verdict::Fail(idx) => writeln!(f, "{}: FAIL at {:?}", axiom.name(), idx)?,
            }
        }
        writeln!(f, "commutative: {}", self.commutative)?;
        write!(f, "cocommutative: {}", self.cocommutative)
    }
}

pub(super) fn check(h: &FiniteFlatHopf) -> AxiomReport {
    let verdicts = vec![
        (Axiom::Associativity, associativity(h)),
        (Axiom::Coassociativity, coassociativity(h)),
        (Axiom::Unit, unit_law(h)),
        (Axiom::Counit, counit_law(h)),
        (Axiom::Bialgebra, bialgebra(h)),
        (Axiom::AntipodeLeft, antipode(h, true)),
        (Axiom::AntipodeRight, antipode(h, false)),
        (Axiom::EntriesInRing, entries_in_ring(h)),
    ];
    AxiomReport {
        verdicts,
        commutative: h.is_commutative(),
        cocommutative: h.is_cocommutative(),
    }
}

fn first_diff(h: &FiniteFlatHopf, a: &[Scalar], b: &[Scalar]) -> Option<usize> {
    a.iter().zip(b).position(|(x, y)| !h.algebra.eq_scalar(x, y))
}

fn first_diff_matrix(h: &FiniteFlatHopf, a: &Matrix, b: &Matrix) -> Option<(usize, usize)> {
    for i in 0..a.rows() {
        for j in 0..a.cols() {
            if !h.algebra.eq_scalar(&a[(i, j)], &b[(i, j)]) {
                return Some((i, j));
            }
        }
    }
    None
}

fn associativity(h: &FiniteFlatHopf) -> Verdict {
    let n = h.rank();
    let basis: Vec<_> = (0..n).map(|i| h.algebra.basis_vector(i)).collect();
    for i in 0..n {
        for j in 0..n {
            let ij = h.mul(&basis[i], &basis[j]);
            for k in 0..n {
                let left = h.mul(&ij, &basis[k]);
                let right = h.mul(&basis[i], &h.mul(&basis[j], &basis[k]));
                if first_diff(h, &left, &right).is_some() {
                    return Verdict::Fail(vec![i, j, k]);
                }
            }
        }
    }
    Verdict::Pass
}

fn coassociativity(h: &FiniteFlatHopf) -> Verdict {
    let n = h.rank();
    let c = &h.comult;
    for i in 0..n {
        for a in 0..n {
            for b in 0..n {
                for d in 0..n {
                    let mut left = Scalar::zero();
                    let mut right = Scalar::zero();
                    for j in 0..n {
                        let x = c.get(i, j, d);
                        if !x.is_zero() {
                            left += x * c.get(j, a, b);
                        }
                        let y = c.get(i, a, j);
                        if !y.is_zero() {
                            right += y * c.get(j, b, d);
                        }
                    }
                    if !h.algebra.eq_scalar(&left, &right) {
                        return Verdict::Fail(vec![i, a, b, d]);
                    }
                }
            }
        }
    }
    Verdict::Pass
}

fn unit_law(h: &FiniteFlatHopf) -> Verdict {
    for i in 0..h.rank() {
        let e = h.algebra.basis_vector(i);
        if let Some(k) = first_diff(h, &h.mul(h.unit(), &e), &e) {
            return Verdict::Fail(vec![i, k]);
        }
        if let Some(k) = first_diff(h, &h.mul(&e, h.unit()), &e) {
            return Verdict::Fail(vec![i, k]);
        }
    }
    Verdict::Pass
}

fn counit_law(h: &FiniteFlatHopf) -> Verdict {
    let n = h.rank();
    for i in 0..n {
        let d = h.comul(&h.algebra.basis_vector(i));
        let e = h.algebra.basis_vector(i);
        // (ε ⊗ id)Δ and (id ⊗ ε)Δ
        let left: Vec<Scalar> = (0..n)
            .map(|k| (0..n).fold(Scalar::zero(), |acc, j| acc + &h.counit[j] * &d[(j, k)]))
            .collect();
        let right: Vec<Scalar> = (0..n)
            .map(|j| (0..n).fold(Scalar::zero(), |acc, k| acc + &d[(j, k)] * &h.counit[k]))
            .collect();
        if let Some(k) = first_diff(h, &left, &e).or_else(|| first_diff(h, &right, &e)) {
            return Verdict::Fail(vec![i, k]);
        }
    }
    Verdict::Pass
}

/// Product in `H ⊗ H` of two elements given as coefficient matrices.
fn tensor_square_mul(h: &FiniteFlatHopf, x: &Matrix, y: &Matrix) -> Matrix {
    let n = h.rank();
    // W[e][d][b] = Σ_f y[e][f] mult[d][f][b], then Σ_{c,d,e} x[c][d] mult[c][e][a] W[e][d][b]
    let mut w = vec![Matrix::zeros(n, n); n];
    for (e, we) in w.iter_mut().enumerate() {
        for f in 0..n {
            let yef = &y[(e, f)];
            if yef.is_zero() {
                continue;
            }
            for d in 0..n {
                for b in 0..n {
                    let m = h.mult().get(d, f, b);
                    if !m.is_zero() {
                        we[(d, b)] += yef * m;
                    }
                }
            }
        }
    }
    let mut out = Matrix::zeros(n, n);
    for c in 0..n {
        for d in 0..n {
            let xcd = &x[(c, d)];
            if xcd.is_zero() {
                continue;
            }
            for (e, we) in w.iter().enumerate() {
                for a in 0..n {
                    let m = h.mult().get(c, e, a);
                    if m.is_zero() {
                        continue;
                    }
                    let coeff = xcd * m;
                    for b in 0..n {
                        let t = &we[(d, b)];
                        if !t.is_zero() {
                            out[(a, b)] += &coeff * t;
                        }
                    }
                }
            }
        }
    }
    out
}

fn bialgebra(h: &FiniteFlatHopf) -> Verdict {
    let n = h.rank();
    let deltas: Vec<Matrix> = (0..n).map(|i| h.comul(&h.algebra.basis_vector(i))).collect();
    for i in 0..n {
        for j in 0..n {
            let ij = h.mul(&h.algebra.basis_vector(i), &h.algebra.basis_vector(j));
            if first_diff_matrix(h, &h.comul(&ij), &tensor_square_mul(h, &deltas[i], &deltas[j])).is_some() {
                return Verdict::Fail(vec![i, j]);
            }
            let lhs = h.counit_of(&ij);
            let rhs = &h.counit[i] * &h.counit[j];
            if !h.algebra.eq_scalar(&lhs, &rhs) {
                return Verdict::Fail(vec![i, j]);
            }
        }
    }
    let unit_delta = h.comul(h.unit());
    let mut one_one = Matrix::zeros(n, n);
    for a in 0..n {
        for b in 0..n {
            one_one[(a, b)] = &h.unit()[a] * &h.unit()[b];
        }
    }
    if let Some((a, b)) = first_diff_matrix(h, &unit_delta, &one_one) {
        return Verdict::Fail(vec![n, a, b]);
    }
    if !h.algebra.eq_scalar(&h.counit_of(h.unit()), &Scalar::from_integer(1.into())) {
        return Verdict::Fail(vec![n]);
    }
    Verdict::Pass
}

fn antipode(h: &FiniteFlatHopf, left: bool) -> Verdict {
    let n = h.rank();
    let s_cols = h.antipode.to_cols();
    for i in 0..n {
        let d = h.comul(&h.algebra.basis_vector(i));
        let mut total = vec![Scalar::zero(); n];
        for j in 0..n {
            // Σ_k d[j][k] e_k (resp. Σ_k d[k][j] e_k), multiplied by S(e_j) on the matching side
            let partner: Vec<Scalar> = (0..n).map(|k| if left { d[(j, k)].clone() } else { d[(k, j)].clone() }).collect();
            if partner.iter().all(Zero::is_zero) {
                continue;
            }
            let prod = if left { h.mul(&s_cols[j], &partner) } else { h.mul(&partner, &s_cols[j]) };
            for (t, x) in total.iter_mut().zip(prod) {
                *t += x;
            }
        }
        let eps = &h.counit[i];
        let expected: Vec<Scalar> = h.unit().iter().map(|u| u * eps).collect();
        if let Some(k) = first_diff(h, &total, &expected) {
            return Verdict::Fail(vec![i, k]);
        }
    }
    Verdict::Pass
}

fn entries_in_ring(h: &FiniteFlatHopf) -> Verdict {
    let loc = h.location();
    let ring = h.ring();
    let n = h.rank();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                if !loc.contains(&ring, h.mult().get(i, j, k)) || !loc.contains(&ring, h.comult.get(i, j, k)) {
                    return Verdict::Fail(vec![i, j, k]);
                }
            }
            if !loc.contains(&ring, &h.antipode[(i, j)]) {
                return Verdict::Fail(vec![i, j]);
            }
        }
        if !loc.contains(&ring, &h.unit()[i]) || !loc.contains(&ring, &h.counit[i]) {
            return Verdict::Fail(vec![i]);
        }
    }
    Verdict::Pass
}
