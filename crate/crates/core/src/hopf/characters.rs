use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{FiniteAlgebra, FiniteFlatHopf, GroupTable};
use crate::dvr::{Matrix, Scalar};

/// A `K`-valued algebra homomorphism, as its values on the basis.
pub type Character = Vec<Scalar>;

/// All `K`-points of a commutative algebra (entries read in `K`), sorted.
///
/// Characters are the joint left eigenvectors of the multiplication operators,
/// normalized to take the value 1 on the unit.
pub fn characters(alg: &FiniteAlgebra) -> Vec<Character> {
    let n = alg.rank();
    let mut spaces: Vec<Vec<Vec<Scalar>>> = vec![(0..n).map(|i| alg.basis_vector(i)).collect()];
    for i in 0..n {
        let l = alg.left_mult(&alg.basis_vector(i));
        let lt = l.transpose();
        let mut next = Vec::new();
        for lambda in rational_roots(&char_poly(&l)) {
            let shifted = lt.sub(&Matrix::identity(n).scale(&lambda));
            let eigen = shifted.kernel();
            for space in &spaces {
                let meet = intersect(space, &eigen);
                if !meet.is_empty() {
                    next.push(meet);
                }
            }
        }
        spaces = next;
        if spaces.is_empty() {
            return Vec::new();
        }
    }
    let mut out: Vec<Character> = spaces
        .into_iter()
        .map(|space| {
            let w = &space[0];
            let at_one: Scalar = w.iter().zip(&alg.unit).fold(Scalar::zero(), |acc, (a, b)| acc + a * b);
            w.iter().map(|x| x / &at_one).collect()
        })
        .collect();
    out.sort();
    out.dedup();
    out
}

/// Grouplike elements `Δg = g ⊗ g`, `ε(g) = 1` of `H ⊗ K`, in `H`'s coordinates.
pub fn grouplikes(h: &FiniteFlatHopf) -> Vec<Vec<Scalar>> {
    characters(&h.dualize().algebra)
}

/// Primitive idempotents of `A ⊗ K` when it is a product of copies of `K`,
/// ordered to match [`characters`].
pub fn idempotent_basis(alg: &FiniteAlgebra) -> Option<Vec<Vec<Scalar>>> {
    let chars = characters(alg);
    if chars.len() != alg.rank() {
        return None;
    }
    let x = Matrix::from_rows(chars);
    Some(x.inverse()?.to_cols())
}

/// Group of grouplikes with their multiplication table, when they span `H ⊗ K`.
/// Returns the grouplikes as columns in `H` coordinates.
pub fn grouplike_basis(h: &FiniteFlatHopf) -> Option<(Matrix, GroupTable)> {
    let g = grouplikes(h);
    if g.len() != h.rank() {
        return None;
    }
    let n = g.len();
    let mut table = vec![vec![0; n]; n];
    for a in 0..n {
        for b in 0..n {
            let prod = h.mul(&g[a], &g[b]);
            table[a][b] = g.iter().position(|x| *x == prod)?;
        }
    }
    let group = GroupTable::new(table).ok()?;
    Some((Matrix::from_cols(h.rank(), &g), group))
}

/// Primitive idempotents of `Q[Γ]` for abelian `Γ`, in group-element coordinates.
/// One idempotent per subgroup `H` with cyclic quotient: `ε_H Π (1 − ε_M)` over
/// the minimal subgroups `M ⊋ H`, where `ε_H` averages over `H`.
pub(crate) fn group_algebra_idempotents(group: &GroupTable) -> Vec<Vec<Scalar>> {
    let n = group.order();
    let subgroups = group.subgroups();
    let mul = |a: &[Scalar], b: &[Scalar]| -> Vec<Scalar> {
        let mut out = vec![Scalar::zero(); n];
        for (i, x) in a.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            for (j, y) in b.iter().enumerate().filter(|(_, y)| !y.is_zero()) {
                out[group.op(i, j)] += x * y;
            }
        }
        out
    };
    let average = |h: &std::collections::BTreeSet<usize>| -> Vec<Scalar> {
        let mut v = vec![Scalar::zero(); n];
        let w = Scalar::new(BigInt::one(), BigInt::from(h.len()));
        for &x in h {
            v[x] = w.clone();
        }
        v
    };
    let mut one = vec![Scalar::zero(); n];
    one[group.identity()] = Scalar::one();
    let mut out = Vec::new();
    for h in &subgroups {
        let mut e = average(h);
        let overs: Vec<_> = subgroups
            .iter()
            .filter(|m| m.len() > h.len() && m.is_superset(h))
            .collect();
        let minimal = overs
            .iter()
            .filter(|m| !overs.iter().any(|k| k.len() < m.len() && m.is_superset(k)));
        for m in minimal {
            let complement: Vec<Scalar> = one.iter().zip(average(m)).map(|(a, b)| a - b).collect();
            e = mul(&e, &complement);
        }
        if e.iter().any(|x| !x.is_zero()) {
            out.push(e);
        }
    }
    out
}

/// Coefficients `c_0..c_n` of `det(x I − A)`, by Faddeev–LeVerrier.
pub(crate) fn char_poly(a: &Matrix) -> Vec<Scalar> {
    let n = a.rows();
    let mut coeffs = vec![Scalar::zero(); n + 1];
    coeffs[n] = Scalar::one();
    let mut m = Matrix::zeros(n, n);
    for k in 1..=n {
        let mut next = a.mul(&m);
        for i in 0..n {
            next[(i, i)] += &coeffs[n - k + 1];
        }
        m = next;
        let am = a.mul(&m);
        let trace = (0..n).fold(Scalar::zero(), |acc, i| acc + &am[(i, i)]);
        coeffs[n - k] = -trace / Scalar::from_integer(BigInt::from(k));
    }
    coeffs
}

/// Distinct rational roots of a polynomial given by ascending coefficients.
pub(crate) fn rational_roots(coeffs: &[Scalar]) -> Vec<Scalar> {
    let lcm = coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let mut ints: Vec<BigInt> = coeffs.iter().map(|c| (c * Scalar::from_integer(lcm.clone())).to_integer()).collect();
    while ints.last().is_some_and(Zero::is_zero) {
        ints.pop();
    }
    let mut roots = Vec::new();
    if ints.len() <= 1 {
        return roots;
    }
    if ints[0].is_zero() {
        roots.push(Scalar::zero());
        while ints.first().is_some_and(Zero::is_zero) {
            ints.remove(0);
        }
    }
    if ints.len() > 1 {
        let lead = ints.last().expect("nonempty").clone();
        for p in divisors(&ints[0]) {
            for q in divisors(&lead) {
                for sign in [1, -1] {
                    let cand = Scalar::new(p.clone() * sign, q.clone());
                    if !roots.contains(&cand) && eval(&ints, &cand).is_zero() {
                        roots.push(cand);
                    }
                }
            }
        }
    }
    roots.sort();
    roots
}

fn eval(ints: &[BigInt], x: &Scalar) -> Scalar {
    ints.iter().rev().fold(Scalar::zero(), |acc, c| acc * x + Scalar::from_integer(c.clone()))
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs();
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = BigInt::one();
    while &d * &d <= n {
        if (&n % &d).is_zero() {
            let q = &n / &d;
            if q != d {
                large.push(q);
            }
            small.push(d.clone());
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// Intersection of the row span of `a` with the span of `b`.
fn intersect(a: &[Vec<Scalar>], b: &[Vec<Scalar>]) -> Vec<Vec<Scalar>> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let n = a[0].len();
    let cols: Vec<Vec<Scalar>> = a
        .iter()
        .cloned()
        .chain(b.iter().map(|v| v.iter().map(|x| -x).collect()))
        .collect();
    let m = Matrix::from_cols(n, &cols);
    let mut out: Vec<Vec<Scalar>> = m
        .kernel()
        .into_iter()
        .map(|c| {
            let mut v = vec![Scalar::zero(); n];
            for (coef, basis) in c.iter().zip(a) {
                for (x, y) in v.iter_mut().zip(basis) {
                    *x += coef * y;
                }
            }
            v
        })
        .collect();
    out.retain(|v| v.iter().any(|x| !x.is_zero()));
    let (red, pivots) = Matrix::from_rows(if out.is_empty() { vec![vec![Scalar::zero(); n]] } else { out }).rref();
    (0..pivots.len()).map(|i| red.row(i).to_vec()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dvr::{frac, int, RingSpec};
    use crate::hopf::fixtures::{constant, constant_cyclic, mu, truncated_polynomial};

    #[test]
    fn roots_of_small_polynomials() {
        // (x − 1)(x + 1)(x − 1/2) = x³ − (1/2)x² − x + 1/2
        let p = vec![frac(1, 2), int(-1), frac(-1, 2), int(1)];
        assert_eq!(rational_roots(&p), vec![int(-1), frac(1, 2), int(1)]);
        // x² + 1 has none
        assert!(rational_roots(&[int(1), int(0), int(1)]).is_empty());
        assert_eq!(rational_roots(&[int(0), int(0), int(1)]), vec![int(0)]);
    }

    #[test]
    fn characters_of_split_and_non_split_algebras() {
        let r = RingSpec::new(3).unwrap();
        assert_eq!(characters(&constant_cyclic(r, 3).algebra).len(), 3);
        // Q[Z/3] = Q × Q(ζ_3) has one rational point
        assert_eq!(characters(&mu(r, 3).algebra).len(), 1);
        assert_eq!(characters(&truncated_polynomial(r, 3)).len(), 1);
        assert!(idempotent_basis(&mu(r, 3).algebra).is_none());
    }

    #[test]
    fn grouplikes_of_group_algebra() {
        let r = RingSpec::new(2).unwrap();
        let (g, group) = grouplike_basis(&mu(r, 4)).unwrap();
        assert_eq!(group.order(), 4);
        assert_eq!(g.rank(), 4);
        assert!(grouplike_basis(&constant_cyclic(r, 4)).is_none());
        assert!(grouplike_basis(&constant(r, &GroupTable::cyclic(2).product(&GroupTable::cyclic(2)))).is_some());
    }

    #[test]
    fn primitive_idempotents_of_cyclic_group_algebras() {
        for n in [2, 3, 4, 6] {
            let group = GroupTable::cyclic(n);
            let ids = group_algebra_idempotents(&group);
            let divisors = (1..=n).filter(|d| n % d == 0).count();
            assert_eq!(ids.len(), divisors);
            let sum = ids.iter().fold(vec![Scalar::zero(); n], |acc, e| acc.iter().zip(e).map(|(a, b)| a + b).collect());
            let mut one = vec![Scalar::zero(); n];
            one[0] = int(1);
            assert_eq!(sum, one);
        }
    }
}
