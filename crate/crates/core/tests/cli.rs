use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use ffgs::dvr::RingSpec;
use ffgs::hopf::{canonical_form, fixtures};
use ffgs::io::{from_json, Document};
use tempfile::TempDir;

fn ffgs(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ffgs"))
        .current_dir(dir)
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn workspace(names: &[&str]) -> TempDir {
    let dir = tempfile::tempdir().unwrap();
    for name in names {
        let out = ffgs(dir.path(), &["--ring-p", "2", "example", name]);
        assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    }
    dir
}

fn read(dir: &Path, file: &str) -> Document {
    from_json(&fs::read_to_string(dir.join(file)).unwrap()).unwrap()
}

#[test]
fn exit_codes_by_failure_class() {
    let dir = workspace(&["mu2", "constant-z2", "generic-z2-mu2", "model-z2-mu2"]);
    let d = dir.path();

    assert_eq!(code(&ffgs(d, &["verify", "mu2.json"])), 0);

    fs::write(d.join("broken.json"), r#"{"format_version": 1, "ring": {"p": 2}, "kind": "hopf", "payload": {"#).unwrap();
    assert_eq!(code(&ffgs(d, &["verify", "broken.json"])), 3);
    assert_eq!(code(&ffgs(d, &["verify", "missing.json"])), 3);
    assert_eq!(code(&ffgs(d, &["no-such-command"])), 3);

    // the model map read the wrong way round is not a pushout input
    let swapped = ffgs(d, &["pushout", "constant-z2.json", "constant-z2.json", "mu2.json", "model-z2-mu2.json", "model-z2-mu2.json"]);
    assert_eq!(code(&swapped), 1);

    let guard = ffgs(d, &["--max-saturation-iters", "0", "lower-bound", "mu2.json", "constant-z2.json", "generic-z2-mu2.json"]);
    assert_eq!(code(&guard), 2);

    let wrong_prime = ffgs(d, &["--ring-p", "3", "verify", "mu2.json"]);
    assert_eq!(code(&wrong_prime), 1);
}

#[test]
fn pushout_outputs_are_deterministic_and_parse() {
    let dir = workspace(&["mu2", "constant-z2", "model-z2-mu2"]);
    let d = dir.path();
    let args = ["pushout", "constant-z2.json", "mu2.json", "mu2.json", "model-z2-mu2.json", "model-z2-mu2.json"];

    let first = ffgs(d, &args);
    assert_eq!(code(&first), 0, "{}", String::from_utf8_lossy(&first.stderr));
    assert!(stdout(&first).contains("rank: 2"));
    let snapshot: Vec<String> = ["P.json", "alpha.json", "beta.json"]
        .iter()
        .map(|f| fs::read_to_string(d.join(f)).unwrap())
        .collect();

    let second = ffgs(d, &args);
    assert_eq!(stdout(&first), stdout(&second));
    for (f, before) in ["P.json", "alpha.json", "beta.json"].iter().zip(&snapshot) {
        assert_eq!(&fs::read_to_string(d.join(f)).unwrap(), before);
        assert_eq!(code(&ffgs(d, &["verify", f])), 0);
    }

    // pushing mu2 out along its own model map gives mu2 back
    let Document::Hopf(p) = read(d, "P.json") else { panic!("P.json is not a hopf document") };
    let mu2 = fixtures::mu(RingSpec::new(2).unwrap(), 2);
    assert_eq!(canonical_form(&p).map(|c| c.hopf), canonical_form(&mu2).map(|c| c.hopf));
}

#[test]
fn dual_round_trips_through_files() {
    let dir = workspace(&["constant-s3"]);
    let d = dir.path();
    let out_dir = d.join("once");
    assert_eq!(code(&ffgs(d, &["--out", "once", "dual", "constant-s3.json"])), 0);
    assert_eq!(code(&ffgs(d, &["--out", "twice", "dual", "once/dual.json"])), 0);
    assert!(out_dir.join("dual.json").exists());
    let (Document::Hopf(a), Document::Hopf(b)) = (read(d, "constant-s3.json"), read(d, "twice/dual.json")) else {
        panic!("expected hopf documents")
    };
    assert_eq!(a, b);
}

#[test]
fn cokernel_of_identity_is_trivial() {
    let dir = workspace(&["mu4"]);
    let d = dir.path();
    let Document::Hopf(mu4) = read(d, "mu4.json") else { panic!() };
    let id = ffgs::hopf::HopfMorphism::identity(&mu4);
    fs::write(d.join("id.json"), ffgs::io::to_json(&Document::Morphism(id))).unwrap();

    let out = ffgs(d, &["cokernel", "id.json"]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let Document::Hopf(c) = read(d, "C.json") else { panic!() };
    assert_eq!(c.rank(), 1);
}

#[test]
fn quotient_reports_rank_advisory() {
    let dir = workspace(&["mu2", "mu4", "incl-mu2-mu4", "constant-z2", "model-z2-mu2"]);
    let d = dir.path();
    let out = ffgs(d, &["quotient", "mu4.json", "mu2.json", "incl-mu2-mu4.json"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("rank(G) = 4, rank(H) * rank(G/H) = 2 * 2: multiplicativity holds"));

    // the model map is a generic isomorphism, not a closed immersion
    let out = ffgs(d, &["quotient", "mu2.json", "constant-z2.json", "model-z2-mu2.json"]);
    assert_eq!(code(&out), 1);
    assert!(String::from_utf8_lossy(&out.stderr).contains("not a closed immersion"));
}

#[test]
fn example_listing_includes_extras() {
    let dir = tempfile::tempdir().unwrap();
    let out = ffgs(dir.path(), &["example"]);
    assert_eq!(code(&out), 0);
    let listing = stdout(&out);
    for name in ffgs::cli::EXTRA_EXAMPLES.iter().chain(fixtures::NAMES) {
        assert!(listing.contains(name), "{name} missing");
    }
}
