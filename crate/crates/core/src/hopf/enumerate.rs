use num_traits::Zero;

use super::characters::{group_algebra_idempotents, grouplike_basis, idempotent_basis};
use super::{FiniteFlatHopf, HopfMorphism};
use crate::dvr::{Matrix, Scalar};
use crate::error::{Error, Result};

/// All Hopf algebra maps `source → target` over `R`, sorted by matrix.
///
/// Works when the source is a group algebra generically (grouplikes go to
/// grouplikes), when it is a split function algebra and the target's dual is
/// a group algebra (by transposition), or when the source is split and the
/// target a commutative group algebra (primitive idempotents are distributed
/// over the points of the source).
pub fn enumerate_hopf_morphisms(source: &FiniteFlatHopf, target: &FiniteFlatHopf) -> Result<Vec<HopfMorphism>> {
    let candidates = if let Some(found) = from_grouplikes(source, target) {
        found
    } else if let Some(found) = from_grouplikes(&target.dualize(), &source.dualize()) {
        found.into_iter().map(|m| m.transpose()).collect()
    } else if let Some(found) = from_idempotents(source, target) {
        found
    } else {
        return Err(Error::Unsupported(
            "morphism enumeration needs a group algebra or split function algebra on the generic fibre".into(),
        ));
    };
    let ring = source.ring();
    let mut out: Vec<HopfMorphism> = Vec::new();
    for m in candidates {
        if !m.is_integral(&ring) {
            continue;
        }
        let morph = HopfMorphism::shaped(source.clone(), target.clone(), m)?;
        if morph.check().passed() && !out.iter().any(|o| o.matrix == morph.matrix) {
            out.push(morph);
        }
    }
    out.sort_by_key(|a| a.matrix.to_rows());
    Ok(out)
}

fn from_grouplikes(source: &FiniteFlatHopf, target: &FiniteFlatHopf) -> Option<Vec<Matrix>> {
    let (gs, group_s) = grouplike_basis(source)?;
    let gs_inv = gs.inverse()?;
    let targets = super::grouplikes(target);
    if targets.is_empty() {
        return Some(Vec::new());
    }
    let n = target.rank();
    let mut table = vec![vec![0; targets.len()]; targets.len()];
    for (a, x) in targets.iter().enumerate() {
        for (b, y) in targets.iter().enumerate() {
            table[a][b] = targets.iter().position(|z| *z == target.mul(x, y))?;
        }
    }
    let group_t = super::GroupTable::new(table).ok()?;
    let maps = group_s.homomorphisms(&group_t);
    Some(
        maps.into_iter()
            .map(|map| {
                let cols: Vec<Vec<Scalar>> = map.iter().map(|&t| targets[t].clone()).collect();
                Matrix::from_cols(n, &cols).mul(&gs_inv)
            })
            .collect(),
    )
}

fn from_idempotents(source: &FiniteFlatHopf, target: &FiniteFlatHopf) -> Option<Vec<Matrix>> {
    let points = idempotent_basis(&source.algebra)?;
    let (gt, group_t) = grouplike_basis(target)?;
    if !group_t.is_abelian() {
        return None;
    }
    let idempotents: Vec<Vec<Scalar>> = group_algebra_idempotents(&group_t)
        .into_iter()
        .map(|e| gt.mul_vec(&e))
        .collect();
    let n = target.rank();
    let p = Matrix::from_cols(source.rank(), &points);
    let p_inv = p.inverse()?;
    let mut out = Vec::new();
    let mut assignment = vec![0usize; idempotents.len()];
    loop {
        let mut cols = vec![vec![Scalar::zero(); n]; points.len()];
        for (e, &pt) in idempotents.iter().zip(&assignment) {
            for (c, x) in cols[pt].iter_mut().zip(e) {
                *c += x;
            }
        }
        out.push(Matrix::from_cols(n, &cols).mul(&p_inv));
        // next assignment in lexicographic order
        let mut k = 0;
        while k < assignment.len() {
            assignment[k] += 1;
            if assignment[k] < points.len() {
                break;
            }
            assignment[k] = 0;
            k += 1;
        }
        if k == assignment.len() {
            break;
        }
    }
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dvr::{Location, RingSpec};
    use crate::hopf::fixtures::{constant_cyclic, mu};

    fn r2() -> RingSpec {
        RingSpec::new(2).unwrap()
    }

    #[test]
    fn morphisms_between_order_two_objects() {
        let (m, c) = (mu(r2(), 2), constant_cyclic(r2(), 2));
        // mu2-alg → mu2-alg: trivial and identity
        assert_eq!(enumerate_hopf_morphisms(&m, &m).unwrap().len(), 2);
        // mu2-alg → Z/2-alg: trivial and t ↦ f0 − f1
        assert_eq!(enumerate_hopf_morphisms(&m, &c).unwrap().len(), 2);
        // Z/2-alg → mu2-alg: only the trivial map is integral
        assert_eq!(enumerate_hopf_morphisms(&c, &m).unwrap().len(), 1);
        assert_eq!(enumerate_hopf_morphisms(&c, &c).unwrap().len(), 2);
    }

    #[test]
    fn morphisms_into_and_out_of_order_four() {
        let r = r2();
        let trivial = FiniteFlatHopf::trivial(r, Location::Integral);
        assert_eq!(enumerate_hopf_morphisms(&mu(r, 4), &mu(r, 2)).unwrap().len(), 2);
        assert_eq!(enumerate_hopf_morphisms(&mu(r, 2), &mu(r, 4)).unwrap().len(), 2);
        assert_eq!(enumerate_hopf_morphisms(&constant_cyclic(r, 4), &constant_cyclic(r, 2)).unwrap().len(), 2);
        assert_eq!(enumerate_hopf_morphisms(&constant_cyclic(r, 4), &trivial).unwrap().len(), 1);
        assert_eq!(enumerate_hopf_morphisms(&trivial, &mu(r, 4)).unwrap().len(), 1);
    }
}
