//! The `ffgs` command line. Exit codes: 0 success, 1 validation or
//! precondition failure, 2 a saturation guard tripped, 3 I/O or parse error.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};

use crate::cokernel::{cokernel, quotient};
use crate::dvr::{frac, Matrix, RingSpec};
use crate::error::Error;
use crate::hopf::fixtures::{self, constant_cyclic, mu};
use crate::hopf::{FiniteFlatHopf, GenericHopfMorphism, HopfMorphism};
use crate::io::{read_document, to_json, write_all, DocError, Document};
use crate::presentation::count_irreducible_words;
use crate::pushout::{group_pushout, lower_bound, upper_bound, witness_determinant, PushoutResult};
use crate::quasifinite::{qf_pushout, qf_pushout_constant, validate_qf, z2xz2_over_mu2, QFMorphism, QuasiFiniteGS};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_GUARD: i32 = 2;
pub const EXIT_IO: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "ffgs", version, about = "Pushouts, cokernels and quotients of finite flat group schemes over Z_(p)")]
struct Cli {
    /// Prime for `example`; for other commands, inputs must be over this prime.
    #[arg(long, global = true)]
    ring_p: Option<u64>,
    #[arg(long, global = true, default_value_t = 64)]
    max_saturation_iters: usize,
    /// Largest word degree explored for presentations (default: twice the
    /// largest relation degree).
    #[arg(long, global = true)]
    degree_cap: Option<usize>,
    /// Output directory.
    #[arg(long, global = true, default_value = ".")]
    out: PathBuf,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check a document: Hopf axioms, morphism identities, quasi-finite data.
    Verify { file: PathBuf },
    /// Write the Cartier dual of a Hopf algebra.
    Dual { file: PathBuf },
    /// Pushout of m: U → M (model map) and n: U → N, from coordinate-ring maps
    /// M → U and N → U.
    Pushout {
        u: PathBuf,
        m_object: PathBuf,
        n_object: PathBuf,
        m: PathBuf,
        n: PathBuf,
    },
    /// Schematic closure of the graph of psi (a generic map from the algebra of N to that of M).
    UpperBound { m: PathBuf, n: PathBuf, psi: PathBuf },
    /// Pushout of the upper bound.
    LowerBound { m: PathBuf, n: PathBuf, psi: PathBuf },
    /// Cokernel of a group map H → G given as a map from the algebra of G to that of H.
    Cokernel { f: PathBuf },
    /// G/H for a closed immersion H ↪ G.
    Quotient { g: PathBuf, h: PathBuf, incl: PathBuf },
    /// Pushout of quasi-finite group schemes; without --witness the generic
    /// fibre of N must be constant.
    QfPushout {
        m: PathBuf,
        n: PathBuf,
        /// Generic isomorphism from a finite flat model N′ to the generic fibre of N.
        #[arg(long)]
        witness: Option<PathBuf>,
    },
    /// Write a built-in document; without a name, list them.
    Example { name: Option<String> },
}

/// Names accepted by `example` besides the Hopf algebra fixtures.
pub const EXTRA_EXAMPLES: &[&str] = &[
    "incl-mu2-mu4",
    "incl-z2-z4",
    "model-z2-mu2",
    "generic-z2-mu2",
    "qf-z2xz2-over-mu2",
];

struct Ctx<'a> {
    ring_p: Option<u64>,
    max: usize,
    degree_cap: Option<usize>,
    out: PathBuf,
    stdout: &'a mut dyn Write,
}

type CmdResult = Result<(), DocError>;

/// Runs the command line and returns the exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_IO } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                stderr.write_all(text.as_bytes())
            } else {
                stdout.write_all(text.as_bytes())
            };
            return code;
        }
    };
    let mut ctx = Ctx {
        ring_p: cli.ring_p,
        max: cli.max_saturation_iters,
        degree_cap: cli.degree_cap,
        out: cli.out,
        stdout,
    };
    match dispatch(&mut ctx, cli.command) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            exit_code(&e)
        }
    }
}

pub fn exit_code(e: &DocError) -> i32 {
    match e {
        DocError::Io(_) | DocError::Parse(_) => EXIT_IO,
        DocError::Invalid(Error::NonTerminating(_)) => EXIT_GUARD,
        DocError::Invalid(_) => EXIT_INVALID,
    }
}

fn dispatch(ctx: &mut Ctx, command: Command) -> Result<i32, DocError> {
    match command {
        Command::Verify { file } => verify(ctx, &file),
        Command::Dual { file } => dual(ctx, &file).map(|_| EXIT_OK),
        Command::Pushout {
            u,
            m_object,
            n_object,
            m,
            n,
        } => pushout(ctx, &u, &m_object, &n_object, &m, &n).map(|_| EXIT_OK),
        Command::UpperBound { m, n, psi } => cmd_upper_bound(ctx, &m, &n, &psi).map(|_| EXIT_OK),
        Command::LowerBound { m, n, psi } => cmd_lower_bound(ctx, &m, &n, &psi).map(|_| EXIT_OK),
        Command::Cokernel { f } => cmd_cokernel(ctx, &f).map(|_| EXIT_OK),
        Command::Quotient { g, h, incl } => cmd_quotient(ctx, &g, &h, &incl).map(|_| EXIT_OK),
        Command::QfPushout { m, n, witness } => cmd_qf_pushout(ctx, &m, &n, witness.as_deref()).map(|_| EXIT_OK),
        Command::Example { name } => example(ctx, name.as_deref()).map(|_| EXIT_OK),
    }
}

fn out(ctx: &mut Ctx, text: impl std::fmt::Display) -> CmdResult {
    writeln!(ctx.stdout, "{text}").map_err(|e| DocError::Io(e.to_string()))
}

fn load(ctx: &Ctx, path: &Path) -> Result<Document, DocError> {
    let doc = read_document(path)?;
    if let Some(p) = ctx.ring_p {
        if doc.ring().p() != p {
            return Err(Error::LocationMismatch(format!(
                "{} is over p = {}, --ring-p is {p}",
                path.display(),
                doc.ring().p()
            ))
            .into());
        }
    }
    Ok(doc)
}

fn wrong_kind(path: &Path, expected: &str, doc: &Document) -> DocError {
    DocError::Parse(format!("{}: expected a {expected} document, found {:?}", path.display(), doc.kind()))
}

fn load_hopf(ctx: &Ctx, path: &Path) -> Result<FiniteFlatHopf, DocError> {
    match load(ctx, path)? {
        Document::Hopf(h) => {
            h.check_axioms().into_result()?;
            Ok(h)
        }
        other => Err(wrong_kind(path, "hopf", &other)),
    }
}

fn load_morphism(ctx: &Ctx, path: &Path) -> Result<HopfMorphism, DocError> {
    match load(ctx, path)? {
        Document::Morphism(m) => {
            m.source.check_axioms().into_result()?;
            m.target.check_axioms().into_result()?;
            m.check().into_result()?;
            Ok(m)
        }
        other => Err(wrong_kind(path, "morphism", &other)),
    }
}

fn load_generic(ctx: &Ctx, path: &Path) -> Result<GenericHopfMorphism, DocError> {
    match load(ctx, path)? {
        Document::GenericMorphism(m) => {
            m.source.check_axioms().into_result()?;
            m.target.check_axioms().into_result()?;
            m.check()?.into_result()?;
            Ok(m)
        }
        other => Err(wrong_kind(path, "generic_morphism", &other)),
    }
}

fn load_qf_morphism(ctx: &Ctx, path: &Path) -> Result<QFMorphism, DocError> {
    match load(ctx, path)? {
        Document::QfMorphism(m) => {
            for g in [&m.source, &m.target] {
                qf_valid(g)?;
            }
            Ok(QFMorphism::new(m.source, m.target, m.generic, m.finite.matrix)?)
        }
        other => Err(wrong_kind(path, "qf_morphism", &other)),
    }
}

fn qf_valid(g: &QuasiFiniteGS) -> Result<(), Error> {
    let report = validate_qf(g);
    if report.passed() {
        Ok(())
    } else {
        Err(Error::QuasiFinite(report.to_string()))
    }
}

fn same(a: &FiniteFlatHopf, b: &FiniteFlatHopf, what: &str) -> Result<(), Error> {
    if a == b {
        Ok(())
    } else {
        Err(Error::Shape(format!("{what} does not match the given object")))
    }
}

fn verify(ctx: &mut Ctx, path: &Path) -> Result<i32, DocError> {
    let doc = load(ctx, path)?;
    let (report, ok) = match &doc {
        Document::Hopf(h) => {
            let r = h.check_axioms();
            (format!("kind: hopf\nrank: {}\n{r}", h.rank()), r.passed())
        }
        Document::Morphism(m) => {
            let (rs, rt, r) = (m.source.check_axioms(), m.target.check_axioms(), m.check());
            let ok = rs.passed() && rt.passed() && r.passed();
            let text = format!(
                "kind: morphism\nsource axioms: {}\ntarget axioms: {}\n{r}",
                verdict(rs.passed()),
                verdict(rt.passed())
            );
            (text, ok)
        }
        Document::GenericMorphism(m) => {
            let r = m.check()?;
            let ok = r.passed() && m.source.check_axioms().passed() && m.target.check_axioms().passed();
            (format!("kind: generic_morphism\n{r}"), ok)
        }
        Document::Presentation(p) => {
            let max_degree = p.relations.iter().map(|r| r.degree()).max().unwrap_or(0);
            let cap = ctx.degree_cap.unwrap_or(2 * max_degree.max(1));
            let mut text = format!("kind: presentation\ngenerators: {}\n", p.generators.join(", "));
            for rel in p.display_relations() {
                text.push_str(&format!("relation: {rel} = 0\n"));
            }
            match count_irreducible_words(p, cap) {
                Some(k) => text.push_str(&format!("irreducible words: {k}")),
                None => text.push_str(&format!("irreducible words: unbounded below degree {cap}")),
            }
            (text, true)
        }
        Document::QuasiFinite(g) => {
            let r = validate_qf(g);
            (format!("kind: quasifinite\n{r}"), r.passed())
        }
        Document::QfMorphism(m) => {
            let checked = QFMorphism::new(m.source.clone(), m.target.clone(), m.generic.clone(), m.finite.matrix.clone());
            let (rs, rt) = (validate_qf(&m.source), validate_qf(&m.target));
            let ok = checked.is_ok() && rs.passed() && rt.passed();
            let text = format!(
                "kind: qf_morphism\nsource: {}\ntarget: {}\nmorphism: {}",
                verdict(rs.passed()),
                verdict(rt.passed()),
                match checked {
                    Ok(_) => "pass".to_string(),
                    Err(e) => format!("FAIL ({e})"),
                }
            );
            (text, ok)
        }
        Document::Result(..) => ("kind: result\nnothing to verify".to_string(), true),
    };
    out(ctx, report)?;
    Ok(if ok { EXIT_OK } else { EXIT_INVALID })
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "pass"
    } else {
        "FAIL"
    }
}

fn dual(ctx: &mut Ctx, path: &Path) -> CmdResult {
    let h = load_hopf(ctx, path)?;
    write_all(&ctx.out, &[("dual.json".into(), to_json(&Document::Hopf(h.dualize())))])?;
    out(ctx, format!("rank: {}", h.rank()))
}

fn write_pushout(ctx: &mut Ctx, res: &PushoutResult) -> CmdResult {
    write_all(
        &ctx.out,
        &[
            ("P.json".into(), to_json(&Document::Hopf(res.p.clone()))),
            ("alpha.json".into(), to_json(&Document::Morphism(res.alpha.clone()))),
            ("beta.json".into(), to_json(&Document::Morphism(res.beta.clone()))),
        ],
    )?;
    let v = res.p.ring().valuation(&witness_determinant(res));
    out(ctx, format!("rank: {}\nwitness determinant valuation: {v}", res.p.rank()))
}

fn pushout(ctx: &mut Ctx, u: &Path, mo: &Path, no: &Path, m: &Path, n: &Path) -> CmdResult {
    let (u, mo, no) = (load_hopf(ctx, u)?, load_hopf(ctx, mo)?, load_hopf(ctx, no)?);
    let (m, n) = (load_morphism(ctx, m)?, load_morphism(ctx, n)?);
    same(&m.target, &u, "target of m")?;
    same(&n.target, &u, "target of n")?;
    same(&m.source, &mo, "source of m")?;
    same(&n.source, &no, "source of n")?;
    let res = group_pushout(&m, &n, ctx.max)?;
    write_pushout(ctx, &res)
}

fn bound_inputs(ctx: &Ctx, m: &Path, n: &Path, psi: &Path) -> Result<(FiniteFlatHopf, FiniteFlatHopf, GenericHopfMorphism), DocError> {
    let (m, n, psi) = (load_hopf(ctx, m)?, load_hopf(ctx, n)?, load_generic(ctx, psi)?);
    same(&psi.source, &n, "source of psi")?;
    same(&psi.target, &m, "target of psi")?;
    Ok((m, n, psi))
}

fn cmd_upper_bound(ctx: &mut Ctx, m: &Path, n: &Path, psi: &Path) -> CmdResult {
    let (m, n, psi) = bound_inputs(ctx, m, n, psi)?;
    let ub = upper_bound(&m, &n, &psi)?;
    write_all(
        &ctx.out,
        &[
            ("U.json".into(), to_json(&Document::Hopf(ub.u.clone()))),
            ("m.json".into(), to_json(&Document::Morphism(ub.m.clone()))),
            ("n.json".into(), to_json(&Document::Morphism(ub.n.clone()))),
        ],
    )?;
    out(ctx, format!("rank: {}", ub.u.rank()))
}

fn cmd_lower_bound(ctx: &mut Ctx, m: &Path, n: &Path, psi: &Path) -> CmdResult {
    let (m, n, psi) = bound_inputs(ctx, m, n, psi)?;
    let res = lower_bound(&m, &n, &psi, ctx.max)?;
    write_pushout(ctx, &res)
}

fn cmd_cokernel(ctx: &mut Ctx, f: &Path) -> CmdResult {
    let f = load_morphism(ctx, f)?;
    let cok = cokernel(&f)?;
    write_all(
        &ctx.out,
        &[
            ("C.json".into(), to_json(&Document::Hopf(cok.hopf.clone()))),
            ("proj.json".into(), to_json(&Document::Morphism(cok.proj.clone()))),
        ],
    )?;
    out(ctx, format!("rank: {}", cok.hopf.rank()))
}

fn cmd_quotient(ctx: &mut Ctx, g: &Path, h: &Path, incl: &Path) -> CmdResult {
    let (g, h, incl) = (load_hopf(ctx, g)?, load_hopf(ctx, h)?, load_morphism(ctx, incl)?);
    let q = quotient(&g, &h, &incl)?;
    write_all(
        &ctx.out,
        &[
            ("Q.json".into(), to_json(&Document::Hopf(q.cokernel.hopf.clone()))),
            ("proj.json".into(), to_json(&Document::Morphism(q.cokernel.proj.clone()))),
        ],
    )?;
    out(ctx, format!("rank: {}\nadvisory: {}", q.cokernel.hopf.rank(), q.advisory))
}

fn cmd_qf_pushout(ctx: &mut Ctx, m: &Path, n: &Path, witness: Option<&Path>) -> CmdResult {
    let (m, n) = (load_qf_morphism(ctx, m)?, load_qf_morphism(ctx, n)?);
    let res = match witness {
        None => qf_pushout_constant(&m, &n, ctx.max)?,
        Some(w) => {
            let w = match load(ctx, w)? {
                Document::GenericMorphism(w) => w,
                other => return Err(wrong_kind(w, "generic_morphism", &other)),
            };
            w.source.check_axioms().into_result()?;
            same(&w.target, &n.source.generic, "target of the witness")?;
            qf_pushout(&m, &n, &w.source, &w.matrix, ctx.max)?
        }
    };
    write_all(
        &ctx.out,
        &[
            ("P.json".into(), to_json(&Document::QuasiFinite(res.p.clone()))),
            ("alpha.json".into(), to_json(&Document::QfMorphism(res.alpha.clone()))),
            ("beta.json".into(), to_json(&Document::QfMorphism(res.beta.clone()))),
        ],
    )?;
    let (t, s) = res.p.shape();
    out(ctx, format!("t: {t}\ns: {s}"))
}

/// The built-in documents by name.
pub fn example_document(ring: RingSpec, name: &str) -> Result<Document, Error> {
    let matrix = |rows: &[&[i64]]| Matrix::from_i64(rows);
    Ok(match name {
        "incl-mu2-mu4" => Document::Morphism(HopfMorphism::new(
            mu(ring, 4),
            mu(ring, 2),
            matrix(&[&[1, 0, 1, 0], &[0, 1, 0, 1]]),
        )?),
        "incl-z2-z4" => Document::Morphism(HopfMorphism::new(
            constant_cyclic(ring, 4),
            constant_cyclic(ring, 2),
            matrix(&[&[1, 0, 0, 0], &[0, 0, 1, 0]]),
        )?),
        "model-z2-mu2" => Document::Morphism(HopfMorphism::new(
            mu(ring, 2),
            constant_cyclic(ring, 2),
            matrix(&[&[1, 1], &[1, -1]]),
        )?),
        "generic-z2-mu2" => Document::GenericMorphism(GenericHopfMorphism::new(
            constant_cyclic(ring, 2),
            mu(ring, 2),
            Matrix::from_rows(vec![vec![frac(1, 2), frac(1, 2)], vec![frac(1, 2), frac(-1, 2)]]),
        )?),
        "qf-z2xz2-over-mu2" => Document::QuasiFinite(z2xz2_over_mu2(ring)?),
        _ => Document::Hopf(fixtures::by_name(ring, name)?),
    })
}

fn example(ctx: &mut Ctx, name: Option<&str>) -> CmdResult {
    let Some(name) = name else {
        let names: Vec<&str> = fixtures::NAMES.iter().chain(EXTRA_EXAMPLES).copied().collect();
        return out(ctx, names.join("\n"));
    };
    let ring = RingSpec::new(ctx.ring_p.unwrap_or(2))?;
    let doc = example_document(ring, name)?;
    let file = format!("{name}.json");
    write_all(&ctx.out, &[(file.clone(), to_json(&doc))])?;
    out(ctx, ctx.out.join(file).display().to_string())
}
