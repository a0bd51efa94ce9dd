//! Built-in Hopf algebras used as test corpus and CLI examples.

use super::{FiniteAlgebra, FiniteFlatHopf, GroupTable, Tensor3};
use crate::dvr::{int, Location, Matrix, RingSpec, Scalar};
use crate::error::{Error, Result};

/// Coordinate ring of `μ_n`: basis `t^0..t^{n-1}` of grouplikes.
pub fn mu(ring: RingSpec, n: usize) -> FiniteFlatHopf {
    let mut mult = Tensor3::zeros(n);
    let mut comult = Tensor3::zeros(n);
    let mut antipode = Matrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            mult.set(i, j, (i + j) % n, int(1));
        }
        comult.set(i, i, i, int(1));
        antipode[((n - i) % n, i)] = int(1);
    }
    let mut unit = vec![int(0); n];
    unit[0] = int(1);
    FiniteFlatHopf {
        algebra: FiniteAlgebra {
            ring,
            location: Location::Integral,
            mult,
            unit,
        },
        comult,
        counit: vec![int(1); n],
        antipode,
    }
}

/// Functions on a finite group, in the basis of point indicators `e_γ`.
pub fn constant(ring: RingSpec, group: &GroupTable) -> FiniteFlatHopf {
    let n = group.order();
    let mut mult = Tensor3::zeros(n);
    let mut comult = Tensor3::zeros(n);
    let mut antipode = Matrix::zeros(n, n);
    for g in 0..n {
        mult.set(g, g, g, int(1));
        antipode[(group.inverse(g), g)] = int(1);
        for a in 0..n {
            for b in 0..n {
                if group.op(a, b) == g {
                    comult.set(g, a, b, int(1));
                }
            }
        }
    }
    let mut counit = vec![int(0); n];
    counit[group.identity()] = int(1);
    FiniteFlatHopf {
        algebra: FiniteAlgebra {
            ring,
            location: Location::Integral,
            mult,
            unit: vec![int(1); n],
        },
        comult,
        counit,
        antipode,
    }
}

pub fn constant_cyclic(ring: RingSpec, n: usize) -> FiniteFlatHopf {
    constant(ring, &GroupTable::cyclic(n))
}

/// The order-2 Oort–Tate family over `Z_(2)`: `x² = a x`,
/// `Δx = x⊗1 + 1⊗x − (2/a) x⊗x`. `a = 1` is the constant group, `a = 2` is `μ_2`.
pub fn oort_tate_order2(ring: RingSpec, a: i64) -> Result<FiniteFlatHopf> {
    if ring.p() != 2 {
        return Err(Error::Unsupported(format!("the order-2 Oort-Tate family needs p = 2, got {}", ring.p())));
    }
    if a != 1 && a != 2 {
        return Err(Error::Unsupported(format!("Oort-Tate parameter must be 1 or 2, got {a}")));
    }
    let mut mult = Tensor3::zeros(2);
    mult.set(0, 0, 0, int(1));
    mult.set(0, 1, 1, int(1));
    mult.set(1, 0, 1, int(1));
    mult.set(1, 1, 1, int(a));
    let mut comult = Tensor3::zeros(2);
    comult.set(0, 0, 0, int(1));
    comult.set(1, 1, 0, int(1));
    comult.set(1, 0, 1, int(1));
    comult.set(1, 1, 1, int(-2 / a));
    Ok(FiniteFlatHopf {
        algebra: FiniteAlgebra {
            ring,
            location: Location::Integral,
            mult,
            unit: vec![int(1), int(0)],
        },
        comult,
        counit: vec![int(1), int(0)],
        antipode: Matrix::identity(2),
    })
}

/// `R[z]/(z^n)` in the basis `1, z, .., z^{n-1}`.
pub fn truncated_polynomial(ring: RingSpec, n: usize) -> FiniteAlgebra {
    let mut mult = Tensor3::zeros(n);
    for i in 0..n {
        for j in 0..n - i {
            mult.set(i, j, i + j, int(1));
        }
    }
    let mut unit = vec![Scalar::from_integer(0.into()); n];
    unit[0] = int(1);
    FiniteAlgebra {
        ring,
        location: Location::Integral,
        mult,
        unit,
    }
}

pub const NAMES: &[&str] = &[
    "trivial",
    "mu2",
    "mu3",
    "mu4",
    "constant-z2",
    "constant-z3",
    "constant-z4",
    "constant-z2xz2",
    "constant-s3",
    "oort-tate-1",
    "oort-tate-2",
];

/// Looks up a fixture by name: `trivial`, `mu<n>`, `constant-z<n>`,
/// `constant-z2xz2`, `constant-s3`, `oort-tate-1`, `oort-tate-2`.
pub fn by_name(ring: RingSpec, name: &str) -> Result<FiniteFlatHopf> {
    let unknown = || Error::UnknownFixture(name.to_string());
    let positive = |s: &str| s.parse::<usize>().ok().filter(|&n| n > 0);
    match name {
        "trivial" => Ok(FiniteFlatHopf::trivial(ring, Location::Integral)),
        "constant-s3" => Ok(constant(ring, &GroupTable::s3())),
        "constant-z2xz2" => {
            let z2 = GroupTable::cyclic(2);
            Ok(constant(ring, &z2.product(&z2)))
        }
        "oort-tate-1" => oort_tate_order2(ring, 1),
        "oort-tate-2" => oort_tate_order2(ring, 2),
        _ => {
            if let Some(n) = name.strip_prefix("mu").and_then(positive) {
                Ok(mu(ring, n))
            } else if let Some(n) = name.strip_prefix("constant-z").and_then(positive) {
                Ok(constant_cyclic(ring, n))
            } else {
                Err(unknown())
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hopf::HopfMorphism;

    fn r2() -> RingSpec {
        RingSpec::new(2).unwrap()
    }

    #[test]
    fn catalog_passes_axioms() {
        for name in NAMES {
            let h = by_name(r2(), name).unwrap();
            assert!(h.check_axioms().passed(), "{name}");
        }
        assert!(by_name(r2(), "mu0").is_err());
        assert!(by_name(r2(), "nope").is_err());
        assert!(oort_tate_order2(RingSpec::new(3).unwrap(), 1).is_err());
    }

    #[test]
    fn oort_tate_two_is_mu2() {
        // t ↦ 1 − x identifies mu2 with the a = 2 member
        let m = HopfMorphism::new(
            mu(r2(), 2),
            oort_tate_order2(r2(), 2).unwrap(),
            Matrix::from_i64(&[&[1, 1], &[0, -1]]),
        )
        .unwrap();
        assert!(m.is_model_map());
        assert!(m.matrix.inverse().unwrap().is_integral(&r2()));
    }

    #[test]
    fn oort_tate_one_is_constant() {
        // f0 ↦ 1 − x, f1 ↦ x
        let m = HopfMorphism::new(
            constant_cyclic(r2(), 2),
            oort_tate_order2(r2(), 1).unwrap(),
            Matrix::from_i64(&[&[1, 0], &[-1, 1]]),
        )
        .unwrap();
        assert!(m.matrix.inverse().unwrap().is_integral(&r2()));
    }

    #[test]
    fn s3_is_not_cocommutative() {
        let h = by_name(RingSpec::new(3).unwrap(), "constant-s3").unwrap();
        assert_eq!(h.rank(), 6);
        assert!(h.is_commutative());
        assert!(!h.is_cocommutative());
    }
}
