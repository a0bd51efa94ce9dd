use ffgs::dvr::{flat_quotient, frac, int, saturate, smith_form, Lattice, Location, Matrix, RingSpec, Scalar};
use ffgs::hopf::{canonical_form, fixtures, FiniteFlatHopf};
use ffgs::presentation::{NCPoly, Word};
use proptest::prelude::*;

const PRIMES: [u64; 3] = [2, 3, 5];

fn ring() -> impl Strategy<Value = RingSpec> {
    prop::sample::select(PRIMES.to_vec()).prop_map(|p| RingSpec::new(p).unwrap())
}

fn scalar() -> impl Strategy<Value = Scalar> {
    (-12i64..=12, prop::sample::select(vec![1i64, 1, 1, 2, 3, 4, 5])).prop_map(|(n, d)| frac(n, d))
}

fn integer() -> impl Strategy<Value = Scalar> {
    (-9i64..=9).prop_map(int)
}

fn rows(n: usize, max_rows: usize, entry: impl Strategy<Value = Scalar>) -> impl Strategy<Value = Vec<Vec<Scalar>>> {
    prop::collection::vec(prop::collection::vec(entry, n), 0..=max_rows)
}

fn fixture() -> impl Strategy<Value = FiniteFlatHopf> {
    (ring(), prop::sample::select(vec!["mu2", "mu3", "mu4", "constant-z2", "constant-z3", "constant-z4", "oort-tate-1"]))
        .prop_filter_map("fixture undefined for this prime", |(r, name)| fixtures::by_name(r, name).ok())
}

/// Unimodular `n × n` integer matrix: a permutation followed by elementary
/// row additions.
fn unimodular(n: usize) -> impl Strategy<Value = Matrix> {
    (
        Just((0..n).collect::<Vec<_>>()).prop_shuffle(),
        prop::collection::vec((0..n, 0..n, -3i64..=3), 0..5),
    )
        .prop_map(move |(perm, ops)| {
            let mut m = vec![vec![int(0); n]; n];
            for (i, &j) in perm.iter().enumerate() {
                m[i][j] = int(1);
            }
            for (a, b, c) in ops {
                if a != b {
                    let add: Vec<Scalar> = m[b].iter().map(|x| x * int(c)).collect();
                    for (x, y) in m[a].iter_mut().zip(add) {
                        *x += y;
                    }
                }
            }
            Matrix::from_rows(m)
        })
}

fn poly() -> impl Strategy<Value = NCPoly> {
    prop::collection::vec((integer(), prop::collection::vec(0usize..3, 0..3)), 0..4)
        .prop_map(|terms| NCPoly::from_terms(terms.into_iter().map(|(c, w)| (c, Word(w)))))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn hermite_form_is_canonical(r in ring(), gens in rows(3, 4, scalar()), (a, b, c) in (0usize..4, 0usize..4, -4i64..=4)) {
        let l = Lattice::hermite(&r, 3, &gens);
        prop_assert_eq!(&Lattice::hermite(&r, 3, l.basis()), &l);

        let mut more = gens.clone();
        more.reverse();
        if !gens.is_empty() {
            let (a, b) = (a % gens.len(), b % gens.len());
            more.push(gens[a].iter().zip(&gens[b]).map(|(x, y)| x + y * int(c)).collect());
        }
        prop_assert_eq!(Lattice::hermite(&r, 3, &more), l.clone());
        for g in &gens {
            prop_assert!(l.contains(&r, g));
        }
    }

    #[test]
    fn smith_form_diagonalises(r in ring(), m in rows(3, 4, scalar())) {
        let m = if m.is_empty() { Matrix::zeros(0, 3) } else { Matrix::from_rows(m) };
        let s = smith_form(&m, &r);
        prop_assert_eq!(s.u.mul(&m).mul(&s.v), s.d.clone());
        prop_assert!(r.is_unit(&s.u.determinant()) || s.u.rows() == 0);
        prop_assert!(r.is_unit(&s.v.determinant()));
        prop_assert!(s.u.is_integral(&r) && s.v.is_integral(&r));
        prop_assert!(s.invariants.windows(2).all(|w| w[0] <= w[1]));
        prop_assert_eq!(s.rank(), m.rank());
        for i in 0..s.d.rows() {
            for j in 0..s.d.cols() {
                if i != j {
                    prop_assert_eq!(&s.d[(i, j)], &int(0));
                }
            }
        }
    }

    #[test]
    fn saturation_is_idempotent_and_flat(r in ring(), gens in rows(3, 3, integer())) {
        let sat = saturate(&r, 3, &gens);
        prop_assert_eq!(saturate(&r, 3, sat.basis()), sat.clone());
        for g in &gens {
            prop_assert!(sat.contains(&r, g));
        }
        let q = flat_quotient(&r, 3, &gens);
        prop_assert_eq!(q.rank + sat.rank(), 3);
        prop_assert_eq!(q.projection.mul(&q.section), Matrix::identity(q.rank));
        prop_assert!(q.projection.is_integral(&r) && q.section.is_integral(&r));
        for b in sat.basis() {
            prop_assert!(q.projection.mul_vec(b).iter().all(|x| *x == int(0)));
        }
        prop_assert_eq!(q.saturated, sat);
    }

    #[test]
    fn dual_is_an_involution(h in fixture()) {
        let d = h.dualize();
        prop_assert!(d.check_axioms().passed());
        prop_assert_eq!(d.dualize(), h);
    }

    #[test]
    fn canonical_form_ignores_basis((h, w) in fixture().prop_flat_map(|h| { let n = h.rank(); (Just(h), unimodular(n)) })) {
        let moved = h.transport(&w, Location::Integral).unwrap();
        prop_assert!(moved.check_axioms().passed());
        let (a, b) = (canonical_form(&h), canonical_form(&moved));
        prop_assert!(a.is_some());
        prop_assert_eq!(a.map(|c| c.hopf), b.map(|c| c.hopf));
    }

    #[test]
    fn noncommutative_polynomials_form_a_ring(a in poly(), b in poly(), c in poly()) {
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert_eq!(a.add(&b).mul(&c), a.mul(&c).add(&b.mul(&c)));
        prop_assert_eq!(a.add(&b), b.add(&a));
        prop_assert!(a.sub(&a).is_zero());
        prop_assert_eq!(a.mul(&NCPoly::constant(int(1))), a.clone());
        prop_assert!(a.mul(&NCPoly::zero()).is_zero());
    }
}
