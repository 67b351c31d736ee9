use std::path::Path;
use std::process::{Command, Output};
use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rankguard::codes::LinearCode;
use rankguard::config::{self, CodeJson, SchemeJson};
use rankguard::rank_metrics::{rdip, rgrw_direct};
use rankguard::FieldCtx;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_rankguard"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn text(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

/// Seeded [3, 2] code over F_8 and a [3, 1] subcode spanned by its first generator row.
fn seeded_pair() -> (LinearCode, LinearCode) {
    let ctx = Arc::new(FieldCtx::binary(3).unwrap());
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let c1 = LinearCode::random(ctx.clone(), 3, 2, &mut rng);
    let c2 = LinearCode::from_generator(ctx, 3, &c1.generator().select_rows(&[0])).unwrap();
    (c1, c2)
}

fn write_json<T: serde::Serialize>(dir: &Path, name: &str, v: &T) -> String {
    let p = dir.join(name);
    std::fs::write(&p, config::to_json_pretty(v)).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn rgrw_table_matches_golden_file() {
    let dir = tempfile::tempdir().unwrap();
    let (c1, c2) = seeded_pair();
    let a = write_json(dir.path(), "c1.json", &CodeJson::from_code(&c1));
    let b = write_json(dir.path(), "c2.json", &CodeJson::from_code(&c2));
    let o = run(&["rgrw", "--code", &a, "--subcode", &b]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let golden = std::fs::read_to_string(Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden/rgrw_pair.csv")).unwrap();
    assert_eq!(text(&o), golden);

    // The golden values agree with the direct-minimisation path.
    let direct = rgrw_direct(&c1, &c2).unwrap();
    let p = rdip(&c1, &c2).unwrap();
    assert_eq!(golden, config::profile_csv(Some(&p), Some(&direct)));
    // And with a scan of C1 \ C2 for its lightest word.
    let ctx = c1.ctx();
    let lightest = c1
        .codewords()
        .filter(|w| !c2.contains_vector(w))
        .map(|w| ctx.rank_weight(&w))
        .min()
        .unwrap();
    assert!(golden.ends_with(&format!("rgrw,1,{lightest}\n")));
}

#[test]
fn build_scheme_roundtrips_and_reports_are_stable() {
    let dir = tempfile::tempdir().unwrap();
    let s = dir.path().join("s.json");
    let s = s.to_str().unwrap();
    let o = run(&["build-scheme", "--q", "2", "--m", "4", "--l", "1", "--n", "3", "--k", "2", "--out", s]);
    assert!(o.status.success());
    let j: SchemeJson = serde_json::from_str(&std::fs::read_to_string(s).unwrap()).unwrap();
    assert_eq!((j.version, j.n, j.l, j.k), (1, 3, 1, 2));
    j.to_scheme().unwrap();

    let r1 = run(&["equivocation", "--scheme", s, "--mu", "2", "--dist", "uniform"]);
    let r2 = run(&["equivocation", "--scheme", s, "--mu", "2", "--dist", "uniform"]);
    assert!(r1.status.success());
    assert_eq!(r1.stdout, r2.stdout);
    let v: serde_json::Value = serde_json::from_slice(&r1.stdout).unwrap();
    assert_eq!(v["predicted"], 1);

    let st: serde_json::Value = serde_json::from_slice(&run(&["strength", "--scheme", s]).stdout).unwrap();
    assert_eq!(st["omega"]["omega"], 1);
    assert_eq!(st["check"]["silent_at_omega"], true);

    let cap = run(&["verify-capability", "--scheme", s, "--t", "0", "--rho", "1", "--mode", "exhaustive"]);
    assert!(cap.status.success());
    let cap: serde_json::Value = serde_json::from_slice(&cap.stdout).unwrap();
    assert_eq!(cap["verified"], true);
    let bad = run(&["verify-capability", "--scheme", s, "--t", "1", "--rho", "0"]);
    assert_eq!(bad.status.code(), Some(1));
}

#[test]
fn simulate_is_byte_identical_across_runs() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("cfg.json");
    std::fs::write(
        &cfg,
        r#"{"version":1,"seed":7,"scheme":{"q":2,"m":5,"l":1,"n":4,"k":1},
           "scenario":{"t":1,"rho_max":1,"trials":40,"mode":"sampled"}}"#,
    )
    .unwrap();
    let cfg = cfg.to_str().unwrap();
    let a = run(&["simulate", "--config", cfg]);
    let b = run(&["simulate", "--config", cfg]);
    assert!(a.status.success(), "{}", String::from_utf8_lossy(&a.stderr));
    assert_eq!(a.stdout, b.stdout);
    let out = text(&a);
    assert_eq!(out.lines().count(), 41);
    assert!(out.lines().skip(1).all(|l| l.ends_with(",true")));
}

#[test]
fn exit_codes_follow_error_class() {
    let o = run(&["build-scheme", "--m", "3", "--l", "1", "--n", "3", "--k", "2"]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("`m`") && err.contains("l + n"), "{err}");

    assert_eq!(run(&["acceptance", "no-such-suite"]).status.code(), Some(2));

    // 2^16 codewords of C1 per coset exceed the decoder's cap.
    let dir = tempfile::tempdir().unwrap();
    let s = dir.path().join("big.json");
    let s = s.to_str().unwrap();
    assert!(run(&["build-scheme", "--m", "16", "--l", "1", "--n", "3", "--k", "3", "--out", s]).status.success());
    let o = run(&["verify-capability", "--scheme", s, "--t", "0", "--rho", "0"]);
    assert_eq!(o.status.code(), Some(3), "{}", String::from_utf8_lossy(&o.stderr));

    let cfg = dir.path().join("cfg.json");
    std::fs::write(&cfg, r#"{"version":1,"scheme":{"q":2,"m":4,"l":1,"n":3,"k":2},"scenario":{"rho_max":5}}"#).unwrap();
    let o = run(&["simulate", "--config", cfg.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("scenario.rho_max"));
}

#[test]
fn acceptance_suite_runs_from_the_cli() {
    let o = run(&["acceptance", "strength"]);
    assert!(o.status.success());
    assert!(text(&o).starts_with("PASS [ 7]"));
}
