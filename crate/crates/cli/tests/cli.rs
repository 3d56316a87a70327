use std::path::{Path, PathBuf};
use std::process::Command;

use waring_cli::{DecompositionDocument, FormDocument, NumericBlock, TermDoc};
use waring_core::decompose::symbolic_lambda;
use waring_core::numeric::BallDoc;
use waring_core::{BinaryForm, BivariatePoly, Field, Rationals};

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

fn waring<I, S>(args: I) -> Run
where
    I: IntoIterator<Item = S>,
    S: AsRef<std::ffi::OsStr>,
{
    waring_env(args, None)
}

fn waring_env<I, S>(args: I, cap: Option<&str>) -> Run
where
    I: IntoIterator<Item = S>,
    S: AsRef<std::ffi::OsStr>,
{
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_waring"));
    cmd.args(args).env_remove("WARING_MAX_PRECISION_BITS");
    if let Some(c) = cap {
        cmd.env("WARING_MAX_PRECISION_BITS", c);
    }
    let out = cmd.output().unwrap();
    Run {
        code: out.status.code().unwrap(),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn form_file(dir: &Path, name: &str, a: &[i64]) -> PathBuf {
    let doc = FormDocument { degree: a.len() - 1, coeffs: None, normalized: Some(a.iter().map(|x| x.to_string()).collect()) };
    write(dir, name, &serde_json::to_string(&doc).unwrap())
}

fn read_doc(p: &Path) -> DecompositionDocument {
    serde_json::from_str(&std::fs::read_to_string(p).unwrap()).unwrap()
}

fn exact_ball(s: &str) -> BallDoc {
    BallDoc { re: s.into(), im: "0".into(), rad: "0".into() }
}

/// The worked example with its four rational terms written out exactly.
fn worked_example_document() -> DecompositionDocument {
    let f = Rationals;
    let form = BinaryForm::from_normalized_i64(&f, &[1, 2, 3, 4, 5]).unwrap();
    let q = [(5, -11), (1, -2), (1, 2), (1, 1)]
        .iter()
        .map(|&(a, b)| BivariatePoly::from_i64s(&f, &[b, a]))
        .reduce(|p, l| p.mul(&f, &l))
        .unwrap();
    let mut sd = symbolic_lambda(&f, &form, &q).unwrap();
    sd.border_rank = 2;
    let mut doc = DecompositionDocument::symbolic(&f, "rational", &sd);
    doc.n1 = Some(1);
    doc.n2 = Some(3);
    let terms = [("-625/336", "11/5"), ("3", "2"), ("1/21", "-2"), ("-3/16", "-1")];
    doc.numeric = Some(NumericBlock {
        requested_bits: 256,
        residual_bound: "0".into(),
        residual_bound_normalized: None,
        working_precision: None,
        terms: terms.iter().map(|(l, a)| TermDoc { lambda: exact_ball(l), alpha: exact_ball(a), at_infinity: false }).collect(),
    });
    doc
}

#[test]
fn rank_of_worked_example_and_pure_power() {
    let dir = tempfile::tempdir().unwrap();
    let p = form_file(dir.path(), "p.json", &[1, 2, 3, 4, 5]);
    let r = waring(["rank".as_ref(), p.as_os_str()]);
    assert_eq!(r.code, 0);
    assert_eq!(r.stdout.trim(), "rank=4 border_rank=2 unique=false N1=1 N2=3");
    let x5 = form_file(dir.path(), "x5.json", &[0, 0, 0, 0, 0, 1]);
    let r = waring(["rank".as_ref(), x5.as_os_str()]);
    assert!(r.stdout.starts_with("rank=1 border_rank=1 unique=true"), "{}", r.stdout);
    let z = form_file(dir.path(), "z.json", &[0, 0, 0]);
    assert_eq!(waring(["rank".as_ref(), z.as_os_str()]).code, 2);
}

#[test]
fn decompose_symbolic_worked_example() {
    let dir = tempfile::tempdir().unwrap();
    let p = form_file(dir.path(), "p.json", &[1, 2, 3, 4, 5]);
    let out = dir.path().join("d.json");
    let r = waring(["decompose".as_ref(), p.as_os_str(), "--symbolic-only".as_ref(), "-o".as_ref(), out.as_os_str()]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let d = read_doc(&out);
    assert_eq!((d.rank, d.border_rank, d.unique), (4, 2, false));
    assert!(d.numeric.is_none());
    let plain = waring(["decompose".as_ref(), p.as_os_str(), "--plain".as_ref()]);
    assert!(plain.stdout.starts_with("rank 4 (border rank 2, not unique)"), "{}", plain.stdout);
}

#[test]
fn usage_and_input_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let p = form_file(dir.path(), "p.json", &[1, 2, 3, 4, 5]);
    let r = waring(["decompose".as_ref(), p.as_os_str(), "--field".as_ref(), "prime:2147483647".as_ref(), "--bits".as_ref(), "64".as_ref()]);
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("numeric approximation requires rational field"));
    assert_eq!(waring(["decompose", "--no-such-flag"]).code, 2);
    assert_eq!(waring(["decompose".as_ref(), p.as_os_str(), "--bits".as_ref(), "8".as_ref(), "--symbolic-only".as_ref()]).code, 2);
    let bad = write(dir.path(), "bad.json", r#"{"degree": 3, "coeffs": ["1", "2"]}"#);
    assert_eq!(waring(["decompose".as_ref(), bad.as_os_str()]).code, 2);
    let missing = dir.path().join("missing.json");
    assert_eq!(waring(["rank".as_ref(), missing.as_os_str()]).code, 2);
    assert_eq!(waring(["decompose".as_ref(), p.as_os_str(), "--field".as_ref(), "prime:15".as_ref()]).code, 2);
}

#[test]
fn prime_field_symbolic_decomposition() {
    let dir = tempfile::tempdir().unwrap();
    let p = form_file(dir.path(), "p.json", &[1, 2, 3, 4, 5]);
    let out = dir.path().join("d.json");
    let args = ["decompose".as_ref(), p.as_os_str(), "--field".as_ref(), "prime:2147483647".as_ref(), "-o".as_ref(), out.as_os_str()];
    assert_eq!(waring(args).code, 0);
    let d = read_doc(&out);
    assert_eq!(d.field.as_deref(), Some("prime:2147483647"));
    assert_eq!(d.rank, 4);
    assert_eq!(waring(["verify".as_ref(), p.as_os_str(), out.as_os_str()]).code, 0);
}

#[test]
fn cube_of_linear_form_has_one_term() {
    let dir = tempfile::tempdir().unwrap();
    let p = write(dir.path(), "c.json", r#"{"degree": 3, "coeffs": ["1", "3", "3", "1"]}"#);
    let out = dir.path().join("d.json");
    let r = waring(["decompose".as_ref(), p.as_os_str(), "--bits".as_ref(), "64".as_ref(), "-o".as_ref(), out.as_os_str()]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let n = read_doc(&out).numeric.unwrap();
    assert_eq!(n.terms.len(), 1);
    let bound = waring_core::field::parse_rational(&n.residual_bound).unwrap();
    assert!(bound * num_traits::pow(waring_core::BigRational::from_integer(2.into()), 64) <= waring_core::BigRational::from_integer(1.into()));
    assert_eq!(waring(["verify".as_ref(), p.as_os_str(), out.as_os_str(), "--bits".as_ref(), "64".as_ref()]).code, 0);
}

#[test]
fn verify_exact_perturbed_and_deficient_documents() {
    let dir = tempfile::tempdir().unwrap();
    let p = form_file(dir.path(), "p.json", &[1, 2, 3, 4, 5]);
    let exact = worked_example_document();
    let e = write(dir.path(), "exact.json", &serde_json::to_string(&exact).unwrap());
    for bits in ["1", "64", "256", "4096"] {
        let r = waring(["verify".as_ref(), p.as_os_str(), e.as_os_str(), "--bits".as_ref(), bits.as_ref()]);
        assert_eq!(r.code, 0, "bits {bits}: {}", r.stderr);
    }

    let mut perturbed = exact.clone();
    perturbed.numeric.as_mut().unwrap().terms[1].lambda.re = "3.0009765625".into();
    let pp = write(dir.path(), "perturbed.json", &serde_json::to_string(&perturbed).unwrap());
    let r = waring(["verify".as_ref(), p.as_os_str(), pp.as_os_str(), "--bits".as_ref(), "20".as_ref()]);
    assert_eq!(r.code, 1);
    assert!(r.stderr.contains("exceeds 2^-20"), "{}", r.stderr);

    let mut deficient = exact.clone();
    deficient.numeric.as_mut().unwrap().terms.pop();
    let dp = write(dir.path(), "deficient.json", &serde_json::to_string(&deficient).unwrap());
    let r = waring(["verify".as_ref(), p.as_os_str(), dp.as_os_str(), "--bits".as_ref(), "20".as_ref()]);
    assert_eq!(r.code, 1);
    assert!(r.stderr.contains("3 terms but the rank is 4"), "{}", r.stderr);

    let mut wrong_rank = exact.clone();
    wrong_rank.unique = true;
    let wp = write(dir.path(), "wrong.json", &serde_json::to_string(&wrong_rank).unwrap());
    assert_eq!(waring(["verify".as_ref(), p.as_os_str(), wp.as_os_str()]).code, 1);

    let mut wrong_t = exact;
    wrong_t.t[0] = "7".into();
    let tp = write(dir.path(), "wrong_t.json", &serde_json::to_string(&wrong_t).unwrap());
    assert_eq!(waring(["verify".as_ref(), p.as_os_str(), tp.as_os_str()]).code, 1);
}

#[test]
fn every_generator_round_trips_through_decompose_and_verify() {
    let dir = tempfile::tempdir().unwrap();
    let cases: Vec<Vec<&str>> = vec![
        vec!["--mode", "rational-roots", "--rank", "3", "--degree", "7", "--seed", "5"],
        vec!["--mode", "rational-roots", "--rank", "5", "--degree", "8", "--seed", "6"],
        vec!["--mode", "kernel-pair", "--pv", "1,0,0,0", "--pw", "0,0,0,1"],
        vec!["--mode", "kernel-pair", "--pv", "1,0,1", "--pw", "1,0,0,0,1"],
        vec!["--mode", "generic", "--degree", "9", "--seed", "2"],
        vec!["--mode", "generic", "--degree", "10", "--seed", "3"],
    ];
    for (i, case) in cases.iter().enumerate() {
        let form = dir.path().join(format!("g{i}.json"));
        let mut args: Vec<&std::ffi::OsStr> = vec!["gen".as_ref()];
        args.extend(case.iter().map(|s| s.as_ref() as &std::ffi::OsStr));
        args.extend(["-o".as_ref(), form.as_os_str()]);
        let r = waring(&args);
        assert_eq!(r.code, 0, "{case:?}: {}", r.stderr);
        let truth: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(dir.path().join(format!("g{i}.truth.json"))).unwrap()).unwrap();
        let dec = dir.path().join(format!("g{i}.dec.json"));
        let r = waring(["decompose".as_ref(), form.as_os_str(), "--bits".as_ref(), "64".as_ref(), "-o".as_ref(), dec.as_os_str()]);
        assert_eq!(r.code, 0, "{case:?}: {}", r.stderr);
        assert_eq!(read_doc(&dec).rank as u64, truth["expected_rank"].as_u64().unwrap(), "{case:?}");
        let r = waring(["verify".as_ref(), form.as_os_str(), dec.as_os_str()]);
        assert_eq!(r.code, 0, "{case:?}: {}", r.stderr);
    }
}

#[test]
fn kernel_pair_generator_reproduces_6x2y2() {
    let r = waring(["gen", "--mode", "kernel-pair", "--pv", "1,0,0,0", "--pw", "0,0,0,1"]);
    let doc: FormDocument = serde_json::from_str(&r.stdout).unwrap();
    let a = doc.normalized.unwrap();
    assert_eq!(doc.degree, 4);
    assert!(a.iter().enumerate().all(|(i, c)| (i == 2) == (c != "0")), "{a:?}");
}

#[test]
fn batch_mode_index_is_lexicographic_and_isolated() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("in");
    std::fs::create_dir(&input).unwrap();
    form_file(&input, "b.json", &[1, 2, 3, 4, 5]);
    form_file(&input, "a.json", &[1, 1, 1, 2]);
    write(&input, "c.json", "{ not json");
    form_file(&input, "d.json", &[0, 0, 1, 0, 0]);
    let out = dir.path().join("out");
    let args = ["decompose".as_ref(), "--batch".as_ref(), input.as_os_str(), "--strategy".as_ref(), "interp".as_ref(), "--seed".as_ref(), "9".as_ref(), "-o".as_ref(), out.as_os_str()];
    let r = waring(args);
    assert_eq!(r.code, 2, "{}", r.stderr);
    let index: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(out.join("index.json")).unwrap()).unwrap();
    let files: Vec<&str> = index.as_array().unwrap().iter().map(|e| e["file"].as_str().unwrap()).collect();
    assert_eq!(files, ["a.json", "b.json", "c.json", "d.json"]);
    let codes: Vec<i64> = index.as_array().unwrap().iter().map(|e| e["exit_code"].as_i64().unwrap()).collect();
    assert_eq!(codes, [0, 0, 2, 0]);
    assert_eq!(index[0]["seed"].as_u64().unwrap(), 9 ^ waring_cli::decompose::name_hash("a.json"));
    assert_eq!(read_doc(&out.join("b.decomposition.json")).rank, 4);
    assert_eq!(read_doc(&out.join("d.decomposition.json")).rank, 3);
    let again = waring(args);
    assert_eq!(again.stdout, r.stdout);
}

#[test]
fn precision_cap_from_environment_exits_3() {
    let dir = tempfile::tempdir().unwrap();
    let p = form_file(dir.path(), "p.json", &[1, 2, 3, 4, 5]);
    let args = ["decompose".as_ref(), p.as_os_str(), "--bits".as_ref(), "200".as_ref()];
    let r = waring_env(args, Some("80"));
    assert_eq!(r.code, 3, "{}", r.stderr);
    assert_eq!(waring_env(args, Some("4096")).code, 0);
    assert_eq!(waring_env(args, Some("not-a-number")).code, 2);
}

#[test]
fn bench_writes_csv() {
    let r = waring(["bench", "--degrees", "16,32", "--repeat", "1", "--csv"]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert_eq!(r.stdout.lines().count(), 3);
    let r = waring(["bench", "--field", "rational", "--degrees", "8,16", "--repeat", "3"]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert!(r.stdout.lines().next().unwrap().contains("kernel_pair"));
    assert_eq!(waring(["bench", "--field", "prime:13", "--degrees", "16"]).code, 2);
}

#[test]
fn form_accepts_monomial_coefficients() {
    let dir = tempfile::tempdir().unwrap();
    let f = Rationals;
    let form = BinaryForm::from_normalized_i64(&f, &[1, 2, 3, 4, 5]).unwrap();
    let doc = FormDocument::coeffs(&f, &form);
    assert_eq!(doc.coeffs.as_ref().unwrap(), &form.coeffs(&f).iter().map(|c| f.format(c)).collect::<Vec<_>>());
    let p = write(dir.path(), "c.json", &serde_json::to_string(&doc).unwrap());
    let r = waring(["rank".as_ref(), p.as_os_str()]);
    assert_eq!(r.stdout.trim(), "rank=4 border_rank=2 unique=false N1=1 N2=3");
}
