//! Finitely presented associative algebras `R⟨X; S⟩` and the constructions on
//! them: free products, pushouts, tensor presentations, base change, torsion
//! division of linear relations, and bounded-degree rewriting.

mod rewrite;

pub use rewrite::{count_irreducible_words, normal_form, verify_map_to_model, MapReport};

use std::cmp::Ordering;
use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::dvr::{Location, RingSpec, Scalar, Valuation};
use crate::error::{Error, Result};

/// A word in the generators, by index.
///
/// Words are ordered degree-lexicographically, and a generator with a smaller
/// index counts as larger, so the first-declared generators are eliminated
/// first by rewriting.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Word(pub Vec<usize>);

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    /// First position at which `pattern` occurs as a contiguous subword.
    pub fn find(&self, pattern: &Word) -> Option<usize> {
        if pattern.0.len() > self.0.len() {
            return None;
        }
        (0..=self.0.len() - pattern.0.len()).find(|&i| self.0[i..i + pattern.0.len()] == pattern.0[..])
    }
}

/// A noncommutative polynomial: finitely many words with nonzero coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct NCPoly {
    terms: BTreeMap<Word, Scalar>,
}

impl NCPoly {
    pub fn zero() -> Self {
        NCPoly::default()
    }

    pub fn constant(c: Scalar) -> Self {
        NCPoly::term(c, Word::empty())
    }

    pub fn generator(i: usize) -> Self {
        NCPoly::term(Scalar::one(), Word(vec![i]))
    }

    pub fn term(c: Scalar, w: Word) -> Self {
        let mut p = NCPoly::zero();
        p.add_term(w, c);
        p
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Scalar, Word)>) -> Self {
        let mut p = NCPoly::zero();
        for (c, w) in terms {
            p.add_term(w, c);
        }
        p
    }

    pub fn add_term(&mut self, w: Word, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(w.clone()).or_insert_with(Scalar::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&w);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending word order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Word, &Scalar)> {
        self.terms.iter()
    }

    pub fn leading(&self) -> Option<(&Word, &Scalar)> {
        self.terms.iter().next_back()
    }

    pub fn degree(&self) -> usize {
        self.leading().map_or(0, |(w, _)| w.degree())
    }

    pub fn add(&self, other: &NCPoly) -> NCPoly {
        let mut p = self.clone();
        for (w, c) in &other.terms {
            p.add_term(w.clone(), c.clone());
        }
        p
    }

    pub fn sub(&self, other: &NCPoly) -> NCPoly {
        self.add(&other.scale(&-Scalar::one()))
    }

    pub fn scale(&self, c: &Scalar) -> NCPoly {
        NCPoly::from_terms(self.terms.iter().map(|(w, x)| (x * c, w.clone())))
    }

    pub fn mul(&self, other: &NCPoly) -> NCPoly {
        let mut p = NCPoly::zero();
        for (w1, c1) in &self.terms {
            for (w2, c2) in &other.terms {
                p.add_term(w1.concat(w2), c1 * c2);
            }
        }
        p
    }

    pub fn pow(&self, k: usize) -> NCPoly {
        (0..k).fold(NCPoly::constant(Scalar::one()), |acc, _| acc.mul(self))
    }

    /// Substitutes generator `i` by generator `map[i]`.
    pub fn reindex(&self, map: &[usize]) -> NCPoly {
        NCPoly::from_terms(
            self.terms
                .iter()
                .map(|(w, c)| (c.clone(), Word(w.0.iter().map(|&g| map[g]).collect()))),
        )
    }

    pub fn max_generator(&self) -> Option<usize> {
        self.terms.keys().flat_map(|w| w.0.iter().copied()).max()
    }

    /// `Σ c · w` written with generator names, largest word first, e.g.
    /// `3*z - 1*y` or `(1/2)*y.z`.
    pub fn display(&self, names: &[String]) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, (w, c)) in self.terms.iter().rev().enumerate() {
            let negative = c < &Scalar::zero();
            let magnitude = if negative { -c.clone() } else { c.clone() };
            match (k, negative) {
                (0, true) => out.push('-'),
                (0, false) => {}
                (_, true) => out.push_str(" - "),
                (_, false) => out.push_str(" + "),
            }
            let coeff = if magnitude.is_integer() {
                magnitude.to_string()
            } else {
                format!("({magnitude})")
            };
            out.push_str(&coeff);
            if w.degree() > 0 {
                let word: Vec<&str> = w.0.iter().map(|&g| names[g].as_str()).collect();
                out.push('*');
                out.push_str(&word.join("."));
            }
        }
        out
    }
}

/// `R⟨X; S⟩` over a ring location; each relation `s` means `s = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    pub ring: RingSpec,
    pub location: Location,
    pub generators: Vec<String>,
    pub relations: Vec<NCPoly>,
}

/// Target of a base change of a presentation.
pub use crate::hopf::BaseChange;

impl Presentation {
    pub fn new(ring: RingSpec, location: Location, generators: Vec<String>, relations: Vec<NCPoly>) -> Result<Self> {
        let p = Presentation {
            ring,
            location,
            generators,
            relations,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn empty(ring: RingSpec) -> Self {
        Presentation {
            ring,
            location: Location::Integral,
            generators: Vec::new(),
            relations: Vec::new(),
        }
    }

    fn validate(&self) -> Result<()> {
        let n = self.generators.len();
        for (i, r) in self.relations.iter().enumerate() {
            if r.max_generator().is_some_and(|g| g >= n) {
                return Err(Error::Presentation(format!("relation {i} mentions an undeclared generator")));
            }
            if let Some((_, c)) = r.terms().find(|(_, c)| !self.location.contains(&self.ring, c)) {
                return Err(Error::Location {
                    value: c.to_string(),
                    location: self.location,
                });
            }
        }
        let mut names = self.generators.clone();
        names.sort();
        names.dedup();
        if names.len() != n {
            return Err(Error::Presentation("duplicate generator names".into()));
        }
        Ok(())
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g == name)
    }

    pub fn display_relations(&self) -> Vec<String> {
        self.relations.iter().map(|r| r.display(&self.generators)).collect()
    }

    /// Equality up to renaming generators (positionally) and reordering relations.
    pub fn alpha_eq(&self, other: &Presentation) -> bool {
        if self.generators.len() != other.generators.len() || self.location != other.location {
            return false;
        }
        let key = |p: &Presentation| {
            let mut rels: Vec<Vec<(Word, Scalar)>> = p
                .relations
                .iter()
                .map(|r| r.terms().map(|(w, c)| (w.clone(), c.clone())).collect())
                .collect();
            rels.sort();
            rels
        };
        key(self) == key(other)
    }
}

/// Result of a free product: the presentation and where each side's
/// generators went.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeProduct {
    pub presentation: Presentation,
    pub left: Vec<usize>,
    pub right: Vec<usize>,
}

/// `B ∗_R C`: disjoint union of generators and relations. Clashing names on
/// the right are primed until unique.
pub fn free_product(p1: &Presentation, p2: &Presentation) -> Result<FreeProduct> {
    if p1.ring != p2.ring || p1.location != p2.location {
        return Err(Error::LocationMismatch("free product of presentations over different rings".into()));
    }
    let mut generators = p1.generators.clone();
    let left: Vec<usize> = (0..p1.generators.len()).collect();
    let mut right = Vec::with_capacity(p2.generators.len());
    for name in &p2.generators {
        let mut fresh = name.clone();
        while generators.contains(&fresh) || (p2.generators.contains(&fresh) && &fresh != name) {
            fresh.push('\'');
        }
        right.push(generators.len());
        generators.push(fresh);
    }
    let relations = p1
        .relations
        .iter()
        .cloned()
        .chain(p2.relations.iter().map(|r| r.reindex(&right)))
        .collect();
    Ok(FreeProduct {
        presentation: Presentation::new(p1.ring, p1.location, generators, relations)?,
        left,
        right,
    })
}

/// Pushout `B ∗_A C` of presentations: the free product of `p1` and `p2` plus
/// one relation `v g(x) − u f(x)` per generator `x` of `p0`. Relations that
/// cancel to zero are dropped; their number is returned alongside.
pub fn pushout_presentation(
    p0: &Presentation,
    p1: &Presentation,
    p2: &Presentation,
    f: &[NCPoly],
    g: &[NCPoly],
) -> Result<(Presentation, usize)> {
    let n0 = p0.generators.len();
    if f.len() != n0 || g.len() != n0 {
        return Err(Error::Presentation(format!(
            "expected {n0} generator images, got {} and {}",
            f.len(),
            g.len()
        )));
    }
    for (img, target, side) in f.iter().map(|x| (x, p1, "f")).chain(g.iter().map(|x| (x, p2, "g"))) {
        if img.max_generator().is_some_and(|m| m >= target.generators.len()) {
            return Err(Error::Presentation(format!("image under {side} mentions an unknown generator")));
        }
    }
    let fp = free_product(p1, p2)?;
    let mut pres = fp.presentation;
    let mut dropped = 0;
    for (fx, gx) in f.iter().zip(g) {
        let rel = gx.reindex(&fp.right).sub(&fx.reindex(&fp.left));
        if rel.is_zero() {
            dropped += 1;
        } else {
            pres.relations.push(rel);
        }
    }
    Ok((pres, dropped))
}

/// Free product plus the commutators `zy − yz` for `z ∈ X_1`, `y ∈ X_2`.
pub fn tensor_presentation(p1: &Presentation, p2: &Presentation) -> Result<Presentation> {
    let fp = free_product(p1, p2)?;
    let mut pres = fp.presentation;
    for &z in &fp.left {
        for &y in &fp.right {
            let zy = NCPoly::generator(z).mul(&NCPoly::generator(y));
            let yz = NCPoly::generator(y).mul(&NCPoly::generator(z));
            pres.relations.push(zy.sub(&yz));
        }
    }
    Ok(pres)
}

pub fn base_change_poly(p: &NCPoly, ring: &RingSpec, target: BaseChange) -> Result<NCPoly> {
    match target {
        BaseChange::FractionField => Ok(p.clone()),
        BaseChange::ResidueField => {
            let mut out = NCPoly::zero();
            for (w, c) in p.terms() {
                out.add_term(w.clone(), ring.reduce(c)?);
            }
            Ok(out)
        }
    }
}

/// Coefficients pushed along `R → K` or `R → k`; relations that become zero
/// are dropped.
pub fn base_change_presentation(p: &Presentation, target: BaseChange) -> Result<Presentation> {
    if p.location != Location::Integral {
        return Err(Error::LocationMismatch(format!("base change needs a presentation over R, got {}", p.location)));
    }
    let location = match target {
        BaseChange::FractionField => Location::Fraction,
        BaseChange::ResidueField => Location::Residue,
    };
    let relations = p
        .relations
        .iter()
        .map(|r| base_change_poly(r, &p.ring, target))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .filter(|r| !r.is_zero())
        .collect();
    Presentation::new(p.ring, location, p.generators.clone(), relations)
}

/// Divides each linear relation `s` by `p^v`, `v` the least valuation of its
/// coefficients, so that some coefficient becomes a unit. Zero relations are
/// dropped; their number is returned alongside.
pub fn s4_relations(ring: &RingSpec, relations: &[NCPoly]) -> Result<(Vec<NCPoly>, usize)> {
    let mut out = Vec::new();
    let mut dropped = 0;
    for (i, s) in relations.iter().enumerate() {
        if s.degree() > 1 {
            return Err(Error::Presentation(format!("relation {i} is not linear in the generators")));
        }
        let v = s
            .terms()
            .map(|(_, c)| ring.valuation(c))
            .min()
            .unwrap_or(Valuation::Infinity);
        match v {
            Valuation::Infinity => dropped += 1,
            Valuation::Finite(v) => out.push(s.scale(&ring.pow(-v))),
        }
    }
    Ok((out, dropped))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dvr::{frac, int};

    fn ring(p: u64) -> RingSpec {
        RingSpec::new(p).unwrap()
    }

    fn one_var(r: RingSpec, name: &str, power: usize) -> Presentation {
        let rels = if power > 0 { vec![NCPoly::generator(0).pow(power)] } else { vec![] };
        Presentation::new(r, Location::Integral, vec![name.to_string()], rels).unwrap()
    }

    #[test]
    fn word_order_prefers_early_generators() {
        let y = Word(vec![0]);
        let z = Word(vec![1]);
        assert!(y > z);
        assert!(Word(vec![1, 1]) > y);
        assert!(Word::empty() < z);
    }

    #[test]
    fn display_format() {
        let names = vec!["y".to_string(), "z".to_string()];
        let p = NCPoly::from_terms([(int(3), Word(vec![1])), (int(-1), Word(vec![0]))]);
        assert_eq!(p.display(&names), "-1*y + 3*z");
        let q = NCPoly::term(frac(1, 2), Word(vec![0, 1]));
        assert_eq!(q.display(&names), "(1/2)*y.z");
        assert_eq!(NCPoly::constant(int(-2)).display(&names), "-2");
    }

    #[test]
    fn free_product_renames_apart() {
        let r = ring(2);
        let fp = free_product(&one_var(r, "y", 2), &one_var(r, "y", 2)).unwrap();
        assert_eq!(fp.presentation.generators, vec!["y", "y'"]);
        assert_eq!(fp.presentation.display_relations(), vec!["1*y.y", "1*y'.y'"]);
        let unit = free_product(&one_var(r, "y", 2), &Presentation::empty(r)).unwrap();
        assert_eq!(unit.presentation, one_var(r, "y", 2));
    }

    #[test]
    fn pushout_of_truncated_polynomial_rings() {
        let r = ring(2);
        let (n, m) = (1, 2);
        let p0 = one_var(r, "x", 2);
        let (p1, p2) = (one_var(r, "y", 2), one_var(r, "z", 2));
        let f = vec![NCPoly::generator(0).scale(&r.pow(n))];
        let g = vec![NCPoly::generator(0).scale(&r.pow(m))];
        let (pres, dropped) = pushout_presentation(&p0, &p1, &p2, &f, &g).unwrap();
        assert_eq!(dropped, 0);
        assert_eq!(pres.display_relations(), vec!["1*y.y", "1*z.z", "-2*y + 4*z"]);

        let zero = vec![NCPoly::zero()];
        let (pres, dropped) = pushout_presentation(&p0, &p1, &p2, &zero, &zero).unwrap();
        assert_eq!(dropped, 1);
        assert_eq!(pres.relations.len(), 2);
    }

    #[test]
    fn tensor_presentation_adds_commutators() {
        let r = ring(3);
        let t = tensor_presentation(&one_var(r, "y", 0), &one_var(r, "z", 0)).unwrap();
        assert_eq!(t.display_relations(), vec!["1*y.z - 1*z.y"]);
        let t = tensor_presentation(&one_var(r, "y", 0), &Presentation::empty(r)).unwrap();
        assert_eq!(t, one_var(r, "y", 0));
    }

    #[test]
    fn s4_divides_by_valuation() {
        let y = NCPoly::generator(0);
        let z = NCPoly::generator(1);
        let r2 = ring(2);
        let (out, _) = s4_relations(&r2, &[z.scale(&int(4)).sub(&y.scale(&int(2)))]).unwrap();
        assert_eq!(out, vec![z.scale(&int(2)).sub(&y)]);
        let (out, _) = s4_relations(&r2, &[z.sub(&y)]).unwrap();
        assert_eq!(out, vec![z.sub(&y)]);
        let rel = z.scale(&int(6)).sub(&y.scale(&int(2)));
        let (out, dropped) = s4_relations(&ring(3), &[rel.clone(), NCPoly::zero()]).unwrap();
        assert_eq!(out, vec![rel]);
        assert_eq!(dropped, 1);
        assert!(s4_relations(&r2, &[y.mul(&y)]).is_err());
    }

    #[test]
    fn residue_base_change_kills_divisible_relations() {
        let r = ring(2);
        let rel = NCPoly::generator(1).scale(&int(4)).sub(&NCPoly::generator(0).scale(&int(2)));
        let p = Presentation::new(r, Location::Integral, vec!["y".into(), "z".into()], vec![rel]).unwrap();
        let k = base_change_presentation(&p, BaseChange::ResidueField).unwrap();
        assert!(k.relations.is_empty());
        let q = base_change_presentation(&p, BaseChange::FractionField).unwrap();
        assert_eq!(q.relations, p.relations);
    }
}
