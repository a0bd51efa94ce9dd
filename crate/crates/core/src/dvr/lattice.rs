use num_traits::Zero;

use super::{smith_form, Matrix, RingSpec, Scalar, Valuation};

/// A finitely generated `R`-submodule of `K^n`, stored by its Hermite basis.
///
/// Basis vector `b_k` has its first nonzero coordinate at `pivots[k]`, equal to
/// `p^{v_k}`; coordinates of other basis vectors at that column are reduced
/// representatives modulo `p^{v_k} R`. This basis is unique for the lattice, so
/// lattices compare by equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Lattice {
    ambient: usize,
    basis: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
}

impl Lattice {
    pub fn zero(ambient: usize) -> Self {
        Lattice {
            ambient,
            basis: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn standard(ambient: usize) -> Self {
        let basis = (0..ambient)
            .map(|i| {
                let mut v = vec![Scalar::zero(); ambient];
                v[i] = super::int(1);
                v
            })
            .collect();
        Lattice {
            ambient,
            basis,
            pivots: (0..ambient).collect(),
        }
    }

    /// Hermite basis of the `R`-span of `generators`.
    pub fn hermite(ring: &RingSpec, ambient: usize, generators: &[Vec<Scalar>]) -> Self {
        let mut pool: Vec<Vec<Scalar>> = generators
            .iter()
            .inspect(|g| assert_eq!(g.len(), ambient, "generator of wrong length"))
            .filter(|g| g.iter().any(|x| !x.is_zero()))
            .cloned()
            .collect();
        let mut basis = Vec::new();
        let mut pivots = Vec::new();
        let mut pivot_vals = Vec::new();

        for c in 0..ambient {
            let mut best: Option<(Valuation, usize)> = None;
            for (i, g) in pool.iter().enumerate() {
                let val = ring.valuation(&g[c]);
                if val != Valuation::Infinity && best.is_none_or(|(b, _)| val < b) {
                    best = Some((val, i));
                }
            }
            let Some((val, idx)) = best else { continue };
            let val = val.finite().expect("finite pivot");
            let mut pivot = pool.swap_remove(idx);
            let scale = ring.pow(val) / &pivot[c];
            for x in pivot.iter_mut() {
                *x *= &scale;
            }
            for g in pool.iter_mut() {
                if g[c].is_zero() {
                    continue;
                }
                let factor = &g[c] / &pivot[c];
                for (x, y) in g.iter_mut().zip(&pivot) {
                    *x -= &factor * y;
                }
            }
            pool.retain(|g| g.iter().any(|x| !x.is_zero()));
            basis.push(pivot);
            pivots.push(c);
            pivot_vals.push(val);
        }

        for k in 1..basis.len() {
            let c = pivots[k];
            for i in 0..k {
                let x = basis[i][c].clone();
                let rep = ring.residue_rep(&x, pivot_vals[k]);
                if rep == x {
                    continue;
                }
                let factor = (&x - &rep) / &basis[k][c];
                let (head, tail) = basis.split_at_mut(k);
                for (a, b) in head[i].iter_mut().zip(&tail[0]) {
                    *a -= &factor * b;
                }
            }
        }
        Lattice {
            ambient,
            basis,
            pivots,
        }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<Scalar>] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// `ambient × rank` matrix whose columns are the basis vectors.
    pub fn matrix(&self) -> Matrix {
        Matrix::from_cols(self.ambient, &self.basis)
    }

    pub fn is_integral(&self, ring: &RingSpec) -> bool {
        self.basis.iter().flatten().all(|x| ring.is_integral(x))
    }

    /// Coordinates of `v` in the basis, if `v` lies in the `K`-span.
    pub fn coordinates(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        let mut rest = v.to_vec();
        let mut coords = Vec::with_capacity(self.rank());
        for (b, &c) in self.basis.iter().zip(&self.pivots) {
            let a = &rest[c] / &b[c];
            if !a.is_zero() {
                for (x, y) in rest.iter_mut().zip(b) {
                    *x -= &a * y;
                }
            }
            coords.push(a);
        }
        rest.iter().all(Zero::is_zero).then_some(coords)
    }

    pub fn contains(&self, ring: &RingSpec, v: &[Scalar]) -> bool {
        self.coordinates(v)
            .is_some_and(|c| c.iter().all(|x| ring.is_integral(x)))
    }

    pub fn contains_lattice(&self, ring: &RingSpec, other: &Lattice) -> bool {
        other.basis.iter().all(|b| self.contains(ring, b))
    }

    pub fn sum(&self, ring: &RingSpec, other: &Lattice) -> Lattice {
        let gens: Vec<_> = self.basis.iter().chain(&other.basis).cloned().collect();
        Lattice::hermite(ring, self.ambient, &gens)
    }
}

/// Saturation `(I ⊗ K) ∩ R^n` of the span of integral generators.
pub fn saturate(ring: &RingSpec, ambient: usize, generators: &[Vec<Scalar>]) -> Lattice {
    if generators.is_empty() {
        return Lattice::zero(ambient);
    }
    let s = smith_form(&Matrix::from_rows(generators.to_vec()), ring);
    let vinv = s.v.inverse().expect("Smith transform is invertible");
    Lattice::hermite(ring, ambient, &vinv.to_rows()[..s.rank()])
}

/// The free quotient `R^n / saturate(I)` with a projection and an `R`-linear
/// section.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlatQuotient {
    pub rank: usize,
    /// `rank × n`, surjective onto `R^rank`, killing the saturated relations.
    pub projection: Matrix,
    /// `n × rank` with `projection · section = 1`.
    pub section: Matrix,
    pub saturated: Lattice,
}

pub fn flat_quotient(ring: &RingSpec, ambient: usize, relations: &[Vec<Scalar>]) -> FlatQuotient {
    let relation_matrix = if relations.is_empty() {
        Matrix::zeros(0, ambient)
    } else {
        Matrix::from_rows(relations.to_vec())
    };
    let s = smith_form(&relation_matrix, ring);
    let r = s.rank();
    let vinv = s.v.inverse().expect("Smith transform is invertible");
    let saturated = Lattice::hermite(ring, ambient, &vinv.to_rows()[..r]);

    let proj_rows: Vec<Vec<Scalar>> = (r..ambient).map(|j| s.v.col(j)).collect();
    let canonical = Lattice::hermite(ring, ambient, &proj_rows);
    let projection = Matrix::from_rows(canonical.basis().to_vec()).padded_rows(ambient);
    let section_raw = vinv.select_rows(r..ambient).transpose();
    // projection = G · raw with raw · section_raw = 1, so section = section_raw · G^{-1}
    let g = projection.mul(&section_raw);
    let section = section_raw.mul(&g.inverse().expect("change of basis is invertible"));
    FlatQuotient {
        rank: ambient - r,
        projection,
        section,
        saturated,
    }
}

impl Matrix {
    fn padded_rows(self, cols: usize) -> Matrix {
        if self.rows() == 0 {
            Matrix::zeros(0, cols)
        } else {
            self
        }
    }
}

/// `(dim_K M ⊗ K, dim_k M ⊗ k)` for a lattice `M`.
pub fn kaplansky_ranks(ring: &RingSpec, lattice: &Lattice) -> (usize, usize) {
    let r = lattice.matrix().rank();
    let s = if lattice.rank() == 0 {
        0
    } else {
        smith_form(&lattice.matrix(), ring).rank()
    };
    (r, s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dvr::{frac, int};

    fn v(xs: &[i64]) -> Vec<Scalar> {
        xs.iter().map(|&x| int(x)).collect()
    }

    fn ring(p: u64) -> RingSpec {
        RingSpec::new(p).unwrap()
    }

    #[test]
    fn hermite_examples() {
        let r = ring(2);
        let l = Lattice::hermite(&r, 2, &[v(&[1, 1]), v(&[1, -1])]);
        assert_eq!(l.basis(), &[v(&[1, 1]), v(&[0, 2])]);

        let l = Lattice::hermite(&r, 3, &[v(&[0, 1, 0]), v(&[1, 0, 0]), v(&[0, 0, 1])]);
        assert_eq!(l, Lattice::standard(3));

        let l = Lattice::hermite(
            &r,
            2,
            &[vec![frac(1, 2), frac(1, 2)], v(&[1, 0])],
        );
        assert_eq!(l.basis(), &[vec![frac(1, 2), frac(1, 2)], v(&[0, 1])]);
        assert!(Lattice::hermite(&r, 2, &[]).basis().is_empty());
    }

    #[test]
    fn membership() {
        let r = ring(2);
        let l = Lattice::hermite(&r, 2, &[v(&[1, 1]), v(&[0, 2])]);
        assert!(l.contains(&r, &v(&[3, 1])));
        assert!(!l.contains(&r, &v(&[1, 0])));
        assert!(l.contains(&r, &[frac(1, 3), frac(1, 3)]));
    }

    #[test]
    fn saturation_examples() {
        let r = ring(2);
        assert_eq!(saturate(&r, 2, &[v(&[2, 4])]).basis(), &[v(&[1, 2])]);
        assert_eq!(saturate(&r, 2, &[v(&[1, 0])]).basis(), &[v(&[1, 0])]);
        assert_eq!(saturate(&r, 2, &[v(&[2, 2]), v(&[0, 4])]), Lattice::standard(2));
    }

    #[test]
    fn flat_quotient_examples() {
        let r = ring(2);
        let q = flat_quotient(&r, 2, &[v(&[0, 2])]);
        assert_eq!(q.rank, 1);
        assert_eq!(q.projection, Matrix::from_i64(&[&[1, 0]]));

        let q = flat_quotient(&r, 2, &[]);
        assert_eq!(q.projection, Matrix::identity(2));
        assert_eq!(q.section, Matrix::identity(2));

        let q = flat_quotient(&r, 2, &[v(&[2, 2])]);
        assert_eq!(q.rank, 1);
        assert_eq!(q.saturated.basis(), &[v(&[1, 1])]);
        assert!(q.projection.mul_vec(&v(&[1, 1])).iter().all(Zero::is_zero));
        assert_eq!(q.projection.mul(&q.section), Matrix::identity(1));
    }

    #[test]
    fn kaplansky_examples() {
        let r = ring(2);
        assert_eq!(kaplansky_ranks(&r, &Lattice::standard(2)), (2, 2));
        let l = Lattice::hermite(&r, 2, &[vec![frac(1, 2), int(0)], v(&[0, 1])]);
        assert_eq!(kaplansky_ranks(&r, &l), (2, 2));
        assert_eq!(kaplansky_ranks(&r, &Lattice::zero(3)), (0, 0));
    }
}
