//! JSON documents: a versioned envelope around one domain value. Rationals
//! are strings `"a"` or `"a/b"`; tensors are nested `[i][j][k]`; matrices
//! are lists of rows.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::dvr::{parse_scalar, Location, Matrix, RingSpec, Scalar};
use crate::error::Error;
use crate::hopf::{FiniteFlatHopf, GenericHopfMorphism, HopfMorphism, Tensor3};
use crate::presentation::{NCPoly, Presentation, Word};
use crate::quasifinite::{QFMorphism, QuasiFiniteGS};

pub const FORMAT_VERSION: u32 = 1;

/// Failure to read or write a document.
#[derive(Debug, thiserror::Error)]
pub enum DocError {
    #[error("{0}")]
    Io(String),
    #[error("parse error: {0}")]
    Parse(String),
    /// Well-formed but rejected by a domain check.
    #[error(transparent)]
    Invalid(#[from] Error),
}

type DocResult<T> = std::result::Result<T, DocError>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Kind {
    Hopf,
    Morphism,
    GenericMorphism,
    Presentation,
    Quasifinite,
    QfMorphism,
    Result,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Envelope {
    format_version: u32,
    ring: RingDoc,
    kind: Kind,
    payload: Value,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RingDoc {
    p: u64,
}

#[derive(Clone, Debug, PartialEq)]
#[allow(clippy::large_enum_variant)]
pub enum Document {
    Hopf(FiniteFlatHopf),
    Morphism(HopfMorphism),
    GenericMorphism(GenericHopfMorphism),
    Presentation(Presentation),
    QuasiFinite(QuasiFiniteGS),
    QfMorphism(QFMorphism),
    /// Free-form report; `ring` is carried separately.
    Result(RingSpec, Value),
}

impl Document {
    pub fn kind(&self) -> Kind {
        match self {
            Document::Hopf(_) => Kind::Hopf,
            Document::Morphism(_) => Kind::Morphism,
            Document::GenericMorphism(_) => Kind::GenericMorphism,
            Document::Presentation(_) => Kind::Presentation,
            Document::QuasiFinite(_) => Kind::Quasifinite,
            Document::QfMorphism(_) => Kind::QfMorphism,
            Document::Result(..) => Kind::Result,
        }
    }

    pub fn ring(&self) -> RingSpec {
        match self {
            Document::Hopf(h) => h.ring(),
            Document::Morphism(m) => m.source.ring(),
            Document::GenericMorphism(m) => m.source.ring(),
            Document::Presentation(p) => p.ring,
            Document::QuasiFinite(g) => g.generic.ring(),
            Document::QfMorphism(m) => m.source.generic.ring(),
            Document::Result(r, _) => *r,
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct HopfDoc {
    location: Location,
    mult: Vec<Vec<Vec<String>>>,
    unit: Vec<String>,
    comult: Vec<Vec<Vec<String>>>,
    counit: Vec<String>,
    /// Column `i` is `S(e_i)`; stored as rows like every matrix.
    antipode: Vec<Vec<String>>,
    /// Written for readers; ignored on input.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    metadata: Option<HopfMeta>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct HopfMeta {
    rank: usize,
    commutative: bool,
    cocommutative: bool,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MorphismDoc {
    source: HopfDoc,
    target: HopfDoc,
    matrix: Vec<Vec<String>>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TermDoc {
    coeff: String,
    word: Vec<String>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PresentationDoc {
    location: Location,
    generators: Vec<String>,
    relations: Vec<Vec<TermDoc>>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct QuasiFiniteDoc {
    generic: HopfDoc,
    finite_part: HopfDoc,
    glue: Vec<Vec<String>>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct QfMorphismDoc {
    source: QuasiFiniteDoc,
    target: QuasiFiniteDoc,
    generic: Vec<Vec<String>>,
    finite: Vec<Vec<String>>,
}

fn s(x: &Scalar) -> String {
    x.to_string()
}

fn scalar(x: &str) -> DocResult<Scalar> {
    parse_scalar(x).map_err(DocError::Parse)
}

fn vector(v: &[String]) -> DocResult<Vec<Scalar>> {
    v.iter().map(|x| scalar(x)).collect()
}

fn matrix_doc(m: &Matrix) -> Vec<Vec<String>> {
    m.to_rows().iter().map(|r| r.iter().map(s).collect()).collect()
}

fn matrix(rows: &[Vec<String>], shape: (usize, usize), what: &str) -> DocResult<Matrix> {
    if rows.len() != shape.0 || rows.iter().any(|r| r.len() != shape.1) {
        return Err(Error::Shape(format!("{what} must be {}x{}", shape.0, shape.1)).into());
    }
    if shape.0 == 0 {
        return Ok(Matrix::zeros(0, shape.1));
    }
    Ok(Matrix::from_rows(rows.iter().map(|r| vector(r)).collect::<DocResult<_>>()?))
}

fn tensor_doc(t: &Tensor3) -> Vec<Vec<Vec<String>>> {
    t.to_nested()
        .iter()
        .map(|a| a.iter().map(|b| b.iter().map(s).collect()).collect())
        .collect()
}

fn tensor(t: &[Vec<Vec<String>>]) -> DocResult<Tensor3> {
    let nested = t
        .iter()
        .map(|a| a.iter().map(|b| vector(b)).collect::<DocResult<Vec<_>>>())
        .collect::<DocResult<Vec<_>>>()?;
    Ok(Tensor3::from_nested(nested)?)
}

fn hopf_doc(h: &FiniteFlatHopf) -> HopfDoc {
    HopfDoc {
        location: h.location(),
        mult: tensor_doc(h.mult()),
        unit: h.unit().iter().map(s).collect(),
        comult: tensor_doc(&h.comult),
        counit: h.counit.iter().map(s).collect(),
        antipode: matrix_doc(&h.antipode),
        metadata: Some(HopfMeta {
            rank: h.rank(),
            commutative: h.is_commutative(),
            cocommutative: h.is_cocommutative(),
        }),
    }
}

fn hopf(ring: RingSpec, d: &HopfDoc) -> DocResult<FiniteFlatHopf> {
    let mult = tensor(&d.mult)?;
    let n = mult.dim();
    let h = FiniteFlatHopf::new(
        ring,
        d.location,
        mult,
        vector(&d.unit)?,
        tensor(&d.comult)?,
        vector(&d.counit)?,
        matrix(&d.antipode, (n, n), "antipode")?,
    )?;
    h.check_location()?;
    Ok(h)
}

fn qf_doc(g: &QuasiFiniteGS) -> QuasiFiniteDoc {
    QuasiFiniteDoc {
        generic: hopf_doc(&g.generic),
        finite_part: hopf_doc(&g.finite_part),
        glue: matrix_doc(&g.glue),
    }
}

fn qf(ring: RingSpec, d: &QuasiFiniteDoc) -> DocResult<QuasiFiniteGS> {
    let generic = hopf(ring, &d.generic)?;
    let finite_part = hopf(ring, &d.finite_part)?;
    let glue = matrix(&d.glue, (finite_part.rank(), generic.rank()), "glue")?;
    Ok(QuasiFiniteGS {
        generic,
        finite_part,
        glue,
    })
}

fn presentation_doc(p: &Presentation) -> PresentationDoc {
    PresentationDoc {
        location: p.location,
        generators: p.generators.clone(),
        relations: p
            .relations
            .iter()
            .map(|rel| {
                rel.terms()
                    .rev()
                    .map(|(w, c)| TermDoc {
                        coeff: s(c),
                        word: w.0.iter().map(|&g| p.generators[g].clone()).collect(),
                    })
                    .collect()
            })
            .collect(),
    }
}

fn presentation(ring: RingSpec, d: &PresentationDoc) -> DocResult<Presentation> {
    let index = |name: &str| {
        d.generators
            .iter()
            .position(|g| g == name)
            .ok_or_else(|| DocError::Parse(format!("unknown generator `{name}` in a relation")))
    };
    let mut relations = Vec::with_capacity(d.relations.len());
    for rel in &d.relations {
        let mut poly = NCPoly::zero();
        for term in rel {
            let word = Word(term.word.iter().map(|n| index(n)).collect::<DocResult<_>>()?);
            poly.add_term(word, scalar(&term.coeff)?);
        }
        relations.push(poly);
    }
    Ok(Presentation::new(ring, d.location, d.generators.clone(), relations)?)
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("documents serialize")
}

fn from_value<T: for<'de> Deserialize<'de>>(v: Value) -> DocResult<T> {
    serde_json::from_value(v).map_err(|e| DocError::Parse(e.to_string()))
}

/// Pretty-printed JSON with a trailing newline.
pub fn to_json(doc: &Document) -> String {
    let payload = match doc {
        Document::Hopf(h) => to_value(&hopf_doc(h)),
        Document::Morphism(m) => to_value(&MorphismDoc {
            source: hopf_doc(&m.source),
            target: hopf_doc(&m.target),
            matrix: matrix_doc(&m.matrix),
        }),
        Document::GenericMorphism(m) => to_value(&MorphismDoc {
            source: hopf_doc(&m.source),
            target: hopf_doc(&m.target),
            matrix: matrix_doc(&m.matrix),
        }),
        Document::Presentation(p) => to_value(&presentation_doc(p)),
        Document::QuasiFinite(g) => to_value(&qf_doc(g)),
        Document::QfMorphism(m) => to_value(&QfMorphismDoc {
            source: qf_doc(&m.source),
            target: qf_doc(&m.target),
            generic: matrix_doc(&m.generic),
            finite: matrix_doc(&m.finite.matrix),
        }),
        Document::Result(_, v) => v.clone(),
    };
    let env = Envelope {
        format_version: FORMAT_VERSION,
        ring: RingDoc { p: doc.ring().p() },
        kind: doc.kind(),
        payload,
    };
    let mut out = serde_json::to_string_pretty(&env).expect("documents serialize");
    out.push('\n');
    out
}

/// Parses a document and checks shapes and locations; algebraic identities
/// are left to the caller.
pub fn from_json(text: &str) -> DocResult<Document> {
    let env: Envelope = serde_json::from_str(text).map_err(|e| DocError::Parse(e.to_string()))?;
    if env.format_version != FORMAT_VERSION {
        return Err(DocError::Parse(format!(
            "unsupported format_version {}, expected {FORMAT_VERSION}",
            env.format_version
        )));
    }
    let ring = RingSpec::new(env.ring.p)?;
    Ok(match env.kind {
        Kind::Hopf => Document::Hopf(hopf(ring, &from_value(env.payload)?)?),
        Kind::Morphism | Kind::GenericMorphism => {
            let d: MorphismDoc = from_value(env.payload)?;
            let source = hopf(ring, &d.source)?;
            let target = hopf(ring, &d.target)?;
            let m = matrix(&d.matrix, (target.rank(), source.rank()), "morphism matrix")?;
            if env.kind == Kind::Morphism {
                Document::Morphism(HopfMorphism::shaped(source, target, m)?)
            } else {
                Document::GenericMorphism(GenericHopfMorphism {
                    source,
                    target,
                    matrix: m,
                })
            }
        }
        Kind::Presentation => Document::Presentation(presentation(ring, &from_value(env.payload)?)?),
        Kind::Quasifinite => Document::QuasiFinite(qf(ring, &from_value(env.payload)?)?),
        Kind::QfMorphism => {
            let d: QfMorphismDoc = from_value(env.payload)?;
            let source = qf(ring, &d.source)?;
            let target = qf(ring, &d.target)?;
            let generic = matrix(&d.generic, (target.generic.rank(), source.generic.rank()), "generic map")?;
            let finite = matrix(&d.finite, (target.finite_part.rank(), source.finite_part.rank()), "finite part map")?;
            let finite = HopfMorphism::shaped(source.finite_part.clone(), target.finite_part.clone(), finite)?;
            Document::QfMorphism(QFMorphism {
                source,
                target,
                generic,
                finite,
            })
        }
        Kind::Result => Document::Result(ring, env.payload),
    })
}

pub fn read_document(path: &Path) -> DocResult<Document> {
    let text = fs::read_to_string(path).map_err(|e| DocError::Io(format!("{}: {e}", path.display())))?;
    from_json(&text)
}

/// Writes every file or none: all contents go to temporary siblings first and
/// are renamed into place afterwards.
pub fn write_all(dir: &Path, files: &[(String, String)]) -> DocResult<()> {
    let io = |e: std::io::Error| DocError::Io(format!("{}: {e}", dir.display()));
    fs::create_dir_all(dir).map_err(io)?;
    let mut staged = Vec::with_capacity(files.len());
    for (name, contents) in files {
        let tmp = dir.join(format!(".{name}.{}.tmp", std::process::id()));
        if let Err(e) = fs::write(&tmp, contents) {
            for (t, _) in &staged {
                let _ = fs::remove_file(t);
            }
            let _ = fs::remove_file(&tmp);
            return Err(io(e));
        }
        staged.push((tmp, dir.join(name)));
    }
    for (tmp, dest) in &staged {
        fs::rename(tmp, dest).map_err(io)?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hopf::fixtures::{self, mu};

    #[test]
    fn fixtures_round_trip() {
        let ring = RingSpec::new(2).unwrap();
        for name in fixtures::NAMES {
            let h = fixtures::by_name(ring, name).unwrap();
            let text = to_json(&Document::Hopf(h.clone()));
            assert_eq!(from_json(&text).unwrap(), Document::Hopf(h));
        }
    }

    #[test]
    fn morphism_round_trip() {
        let ring = RingSpec::new(2).unwrap();
        let m = HopfMorphism::identity(&mu(ring, 2));
        let text = to_json(&Document::Morphism(m.clone()));
        assert!(text.contains("\"kind\": \"morphism\""));
        assert_eq!(from_json(&text).unwrap(), Document::Morphism(m));
    }

    #[test]
    fn bad_rational_is_a_parse_error() {
        let ring = RingSpec::new(2).unwrap();
        let text = to_json(&Document::Hopf(mu(ring, 2))).replacen("\"1\"", "\"1/0\"", 1);
        assert!(matches!(from_json(&text), Err(DocError::Parse(_))));
        let text = to_json(&Document::Hopf(mu(ring, 2))).replace("\"format_version\": 1", "\"format_version\": 7");
        assert!(matches!(from_json(&text), Err(DocError::Parse(_))));
    }
}
