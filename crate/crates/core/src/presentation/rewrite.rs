use std::fmt;

use num_traits::{One, Zero};

use super::{NCPoly, Presentation, Word};
use crate::dvr::{Lattice, Location, Scalar};
use crate::error::{Error, Result};
use crate::hopf::FiniteAlgebra;

struct Rule {
    lead: Word,
    /// `lead ↦ replacement`
    replacement: NCPoly,
}

/// Rewriting rules from the relations whose leading coefficient is a unit;
/// the flag reports whether some nonzero relation had to be skipped.
fn rules(p: &Presentation) -> (Vec<Rule>, bool) {
    let mut out = Vec::new();
    let mut skipped = false;
    for rel in &p.relations {
        let Some((lead, c)) = rel.leading() else { continue };
        if !p.location.is_unit(&p.ring, c) {
            skipped = true;
            continue;
        }
        let inv = p.location.divide(&p.ring, &Scalar::one(), c);
        let mut rest = rel.clone();
        rest.add_term(lead.clone(), -c.clone());
        out.push(Rule {
            lead: lead.clone(),
            replacement: normalize(&rest.scale(&-inv), p),
        });
    }
    (out, skipped)
}

fn normalize(q: &NCPoly, p: &Presentation) -> NCPoly {
    match p.location {
        Location::Residue => NCPoly::from_terms(q.terms().map(|(w, c)| (p.location.normalize(&p.ring, c), w.clone()))),
        _ => q.clone(),
    }
}

/// Reduces `q` by the unit-led relations of `p`, never creating words longer
/// than `degree_cap`.
///
/// `complete` is false when a relation with a non-unit leading coefficient
/// exists or a rewrite was refused for exceeding the cap; the output is then
/// only trustworthy as evidence that something reduces to zero.
pub fn normal_form(q: &NCPoly, p: &Presentation, degree_cap: usize) -> (NCPoly, bool) {
    let (rules, skipped) = rules(p);
    let mut complete = !skipped && q.degree() <= degree_cap;
    let mut work = normalize(q, p);
    let mut done = NCPoly::zero();
    while let Some((w, c)) = work.leading().map(|(w, c)| (w.clone(), c.clone())) {
        let hit = rules.iter().find_map(|r| w.find(&r.lead).map(|pos| (r, pos)));
        let term_poly = NCPoly::term(c.clone(), w.clone());
        match hit {
            Some((rule, pos)) => {
                let prefix = NCPoly::term(Scalar::one(), Word(w.0[..pos].to_vec()));
                let suffix = NCPoly::term(Scalar::one(), Word(w.0[pos + rule.lead.degree()..].to_vec()));
                let image = prefix.mul(&rule.replacement).mul(&suffix).scale(&c);
                if image.degree() > degree_cap {
                    complete = false;
                    done.add_term(w.clone(), c.clone());
                } else {
                    work = normalize(&work.add(&image), p);
                }
            }
            None => done.add_term(w, c),
        }
        work = normalize(&work.sub(&term_poly), p);
    }
    (normalize(&done, p), complete)
}

/// Outcome of comparing a presentation with a structure-constant model.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MapReport {
    /// First relation that does not vanish on the images.
    pub failing_relation: Option<usize>,
    /// Rank of the lattice spanned by the images of words of degree ≤ cap.
    pub generated_rank: usize,
    /// That lattice is the whole model (index 1).
    pub unimodular: bool,
    /// Number of words avoiding every unit-led leading word, when all such
    /// words have degree below the cap.
    pub irreducible_words: Option<usize>,
    pub rank: usize,
}

impl MapReport {
    pub fn surjective(&self) -> bool {
        self.failing_relation.is_none() && self.unimodular
    }

    /// A surjection from an algebra spanned by `rank` words onto a free module
    /// of that rank is an isomorphism.
    pub fn isomorphism(&self) -> bool {
        self.surjective() && self.irreducible_words == Some(self.rank)
    }
}

impl fmt::Display for MapReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.failing_relation {
            None => writeln!(f, "relations: pass")?,
            Some(i) => writeln!(f, "relations: FAIL at {i}")?,
        }
        writeln!(f, "generated rank: {} of {}", self.generated_rank, self.rank)?;
        writeln!(f, "unimodular: {}", self.unimodular)?;
        match self.irreducible_words {
            Some(k) => writeln!(f, "irreducible words: {k}")?,
            None => writeln!(f, "irreducible words: unbounded below cap")?,
        }
        write!(f, "surjective algebra map: {}", self.surjective())
    }
}

/// Checks that `generator ↦ images[generator]` defines an algebra map from the
/// presented algebra onto `model`: every relation vanishes, and the images
/// together with 1 generate the model as a module (using words up to the cap).
pub fn verify_map_to_model(
    p: &Presentation,
    model: &FiniteAlgebra,
    images: &[Vec<Scalar>],
    degree_cap: usize,
) -> Result<MapReport> {
    let n = model.rank();
    if images.len() != p.generators.len() {
        return Err(Error::Presentation(format!(
            "{} images for {} generators",
            images.len(),
            p.generators.len()
        )));
    }
    for img in images {
        if img.len() != n {
            return Err(Error::Shape(format!("image of length {}, model rank {n}", img.len())));
        }
        if let Some(x) = img.iter().find(|x| !model.location.contains(&model.ring, x)) {
            return Err(Error::Location {
                value: x.to_string(),
                location: model.location,
            });
        }
    }
    let eval_word = |w: &Word| w.0.iter().fold(model.unit.clone(), |acc, &g| model.mul(&acc, &images[g]));
    let failing_relation = p.relations.iter().position(|rel| {
        let mut total = vec![Scalar::zero(); n];
        for (w, c) in rel.terms() {
            for (t, x) in total.iter_mut().zip(eval_word(w)) {
                *t += c * x;
            }
        }
        total.iter().any(|x| !model.location.is_zero(&model.ring, x))
    });

    let ring = model.ring;
    let mut lattice = Lattice::hermite(&ring, n, std::slice::from_ref(&model.unit));
    for _ in 0..degree_cap {
        let mut gens: Vec<Vec<Scalar>> = lattice.basis().to_vec();
        for b in lattice.basis() {
            for img in images {
                gens.push(model.mul(b, img));
            }
        }
        let next = Lattice::hermite(&ring, n, &gens);
        if next == lattice {
            break;
        }
        lattice = next;
    }
    let unimodular = match model.location {
        Location::Integral => lattice == Lattice::standard(n),
        _ => lattice.rank() == n,
    };
    Ok(MapReport {
        failing_relation,
        generated_rank: lattice.rank(),
        unimodular,
        irreducible_words: count_irreducible_words(p, degree_cap),
        rank: n,
    })
}

/// Number of words avoiding every unit-led leading word, or `None` when such
/// words exist in every degree up to the cap.
pub fn count_irreducible_words(p: &Presentation, degree_cap: usize) -> Option<usize> {
    let (rules, _) = rules(p);
    let leads: Vec<Word> = rules.into_iter().map(|r| r.lead).collect();
    let reducible = |w: &Word| leads.iter().any(|l| w.find(l).is_some());
    let mut layer = vec![Word::empty()];
    let mut count = 1;
    for _ in 0..degree_cap {
        let mut next = Vec::new();
        for w in &layer {
            for g in 0..p.generators.len() {
                let mut v = w.0.clone();
                v.push(g);
                let v = Word(v);
                if !reducible(&v) {
                    next.push(v);
                }
            }
        }
        if next.is_empty() {
            return Some(count);
        }
        count += next.len();
        layer = next;
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dvr::{int, RingSpec};
    use crate::hopf::fixtures::{mu, truncated_polynomial};

    fn pres(p: u64, gens: &[&str], rels: Vec<NCPoly>) -> Presentation {
        Presentation::new(
            RingSpec::new(p).unwrap(),
            Location::Integral,
            gens.iter().map(|s| s.to_string()).collect(),
            rels,
        )
        .unwrap()
    }

    #[test]
    fn normal_form_examples() {
        let z = NCPoly::generator(0);
        let p = pres(3, &["z"], vec![z.pow(3)]);
        assert_eq!(normal_form(&z.pow(3), &p, 3), (NCPoly::zero(), true));

        let (y, z) = (NCPoly::generator(0), NCPoly::generator(1));
        let p = pres(2, &["y", "z"], vec![z.scale(&int(2)).sub(&y)]);
        assert_eq!(normal_form(&y, &p, 1), (z.scale(&int(2)), true));

        let p = pres(2, &["y", "z"], vec![z.scale(&int(4)).sub(&y.scale(&int(2)))]);
        assert_eq!(normal_form(&y, &p, 1), (y.clone(), false));
    }

    #[test]
    fn normal_form_is_idempotent() {
        let (y, z) = (NCPoly::generator(0), NCPoly::generator(1));
        let p = pres(3, &["y", "z"], vec![y.pow(3), z.pow(3), z.scale(&int(3)).sub(&y)]);
        let q = y.mul(&z).add(&z.pow(2)).add(&y.pow(2));
        let (nf, complete) = normal_form(&q, &p, 6);
        assert!(complete);
        assert_eq!(normal_form(&nf, &p, 6), (nf.clone(), true));
        // y z + z² + y² = 3z² + z² + 9z² = 13 z²
        assert_eq!(nf, z.pow(2).scale(&int(13)));
    }

    #[test]
    fn degree_overflow_is_reported() {
        let t = NCPoly::generator(0);
        let p = pres(2, &["t"], vec![t.sub(&t.pow(3))]);
        let (nf, complete) = normal_form(&t.pow(3), &p, 2);
        assert!(!complete);
        assert_eq!(nf, t);
    }

    #[test]
    fn grouplike_presentation_of_mu2() {
        let t = NCPoly::generator(0);
        let p = pres(2, &["t"], vec![t.pow(2).sub(&NCPoly::constant(int(1)))]);
        let h = mu(p.ring, 2);
        let report = verify_map_to_model(&p, &h.algebra, &[vec![int(0), int(1)]], 2).unwrap();
        assert!(report.isomorphism());
        let zero = verify_map_to_model(&p, &h.algebra, &[vec![int(0), int(0)]], 2).unwrap();
        assert!(!zero.unimodular);
        assert_eq!(zero.generated_rank, 1);
    }

    #[test]
    fn truncated_polynomial_model() {
        let z = NCPoly::generator(0);
        let p = pres(5, &["z"], vec![z.pow(2)]);
        let model = truncated_polynomial(p.ring, 2);
        let report = verify_map_to_model(&p, &model, &[vec![int(0), int(1)]], 4).unwrap();
        assert!(report.isomorphism());
        let scaled = verify_map_to_model(&p, &model, &[vec![int(0), int(5)]], 4).unwrap();
        assert!(scaled.failing_relation.is_none());
        assert!(!scaled.surjective());
    }
}
