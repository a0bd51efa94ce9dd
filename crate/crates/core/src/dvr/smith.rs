use num_traits::{One, Zero};

use super::{Matrix, RingSpec, Scalar, Valuation};

/// `U · M · V = D` with `U`, `V` invertible over `R` and `D` diagonal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    pub u: Matrix,
    pub d: Matrix,
    pub v: Matrix,
    /// Valuations of the nonzero diagonal entries, nondecreasing.
    pub invariants: Vec<i64>,
}

impl SmithForm {
    pub fn rank(&self) -> usize {
        self.invariants.len()
    }
}

/// Smith normal form over `R`. Entries of `M` may lie in `K`; the diagonal
/// entries are then `p^d` with `d` possibly negative.
pub fn smith_form(m: &Matrix, ring: &RingSpec) -> SmithForm {
    let (rows, cols) = (m.rows(), m.cols());
    let mut d = m.clone();
    let mut u = Matrix::identity(rows);
    let mut v = Matrix::identity(cols);
    let mut invariants = Vec::new();

    for t in 0..rows.min(cols) {
        let mut best: Option<(Valuation, usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                let val = ring.valuation(&d[(i, j)]);
                if val != Valuation::Infinity && best.is_none_or(|(b, _, _)| val < b) {
                    best = Some((val, i, j));
                }
            }
        }
        let Some((val, pi, pj)) = best else { break };
        let val = val.finite().expect("finite pivot");
        d.swap_rows(t, pi);
        u.swap_rows(t, pi);
        d.swap_cols(t, pj);
        v.swap_cols(t, pj);

        let scale = ring.pow(val) / &d[(t, t)];
        scale_row(&mut d, t, &scale);
        scale_row(&mut u, t, &scale);

        for i in t + 1..rows {
            let factor = d[(i, t)].clone() / ring.pow(val);
            if factor.is_zero() {
                continue;
            }
            add_row_multiple(&mut d, i, t, &factor);
            add_row_multiple(&mut u, i, t, &factor);
        }
        for j in t + 1..cols {
            let factor = d[(t, j)].clone() / ring.pow(val);
            if factor.is_zero() {
                continue;
            }
            add_col_multiple(&mut d, j, t, &factor);
            add_col_multiple(&mut v, j, t, &factor);
        }
        invariants.push(val);
    }
    SmithForm { u, d, v, invariants }
}

fn scale_row(m: &mut Matrix, r: usize, c: &Scalar) {
    if c.is_one() {
        return;
    }
    for j in 0..m.cols() {
        let x = &m[(r, j)] * c;
        m[(r, j)] = x;
    }
}

// row[target] -= factor * row[source]
fn add_row_multiple(m: &mut Matrix, target: usize, source: usize, factor: &Scalar) {
    for j in 0..m.cols() {
        let x = &m[(source, j)] * factor;
        m[(target, j)] -= x;
    }
}

// col[target] -= factor * col[source]
fn add_col_multiple(m: &mut Matrix, target: usize, source: usize, factor: &Scalar) {
    for i in 0..m.rows() {
        let x = &m[(i, source)] * factor;
        m[(i, target)] -= x;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dvr::{int, Matrix};

    fn check(m: &Matrix, ring: &RingSpec) -> SmithForm {
        let s = smith_form(m, ring);
        assert_eq!(s.u.mul(m).mul(&s.v), s.d);
        assert!(s.u.is_integral(ring) && s.v.is_integral(ring));
        assert!(ring.is_unit(&s.u.determinant()));
        assert!(ring.is_unit(&s.v.determinant()));
        s
    }

    #[test]
    fn diagonal_input_is_fixed() {
        let r = RingSpec::new(2).unwrap();
        let m = Matrix::from_i64(&[&[2, 0], &[0, 4]]);
        let s = check(&m, &r);
        assert_eq!(s.d, m);
        assert_eq!(s.u, Matrix::identity(2));
        assert_eq!(s.v, Matrix::identity(2));
    }

    #[test]
    fn elementary_divisors_of_small_matrix() {
        let r = RingSpec::new(2).unwrap();
        let s = check(&Matrix::from_i64(&[&[2, 2], &[2, 6]]), &r);
        assert_eq!(s.d, Matrix::from_i64(&[&[2, 0], &[0, 4]]));
        assert_eq!(s.invariants, vec![1, 2]);
    }

    #[test]
    fn zero_matrix() {
        let r = RingSpec::new(5).unwrap();
        let s = check(&Matrix::zeros(2, 3), &r);
        assert!(s.d.is_zero());
        assert_eq!(s.rank(), 0);
    }

    #[test]
    fn valuation_of_determinant_is_sum_of_invariants() {
        let r = RingSpec::new(3).unwrap();
        let m = Matrix::from_i64(&[&[3, 6, 1], &[9, 0, 3], &[2, 1, 27]]);
        let s = check(&m, &r);
        let total: i64 = s.invariants.iter().sum();
        assert_eq!(r.valuation(&m.determinant()), Valuation::Finite(total));
        assert_eq!(s.d[(0, 0)], int(1));
    }
}
