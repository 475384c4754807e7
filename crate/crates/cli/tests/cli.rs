mod common;

use std::fs;

use common::{fixture, golden_path, scripts, transcript};

fn run(args: &[&str]) -> (i32, String, String) {
    let argv = std::iter::once("kplat").chain(args.iter().copied());
    let (mut so, mut se) = (Vec::new(), Vec::new());
    let code = kplat_cli::run(argv, &mut so, &mut se);
    (code, String::from_utf8(so).unwrap(), String::from_utf8(se).unwrap())
}

#[test]
fn golden_transcripts() {
    let bless = std::env::var_os("KPLAT_BLESS").is_some();
    for (file, golden, cmds) in scripts() {
        let got = transcript(file, &cmds);
        let path = golden_path(golden);
        if bless {
            fs::write(&path, &got).unwrap();
        }
        let want = fs::read_to_string(&path).unwrap_or_else(|_| panic!("missing {}", path.display()));
        assert_eq!(got, want, "transcript for {file} differs from {}", path.display());
    }
}

#[test]
fn documented_examples() {
    let g1 = fixture("g1.kg");
    assert_eq!(run(&["regular", &g1, "--set", "b"]), (0, "not regular; double-perp = {a,b}\n".into(), String::new()));
    assert_eq!(
        run(&["condition-b", &g1]),
        (0, "a: satisfied; b: VIOLATED (exit-less cycle f)\n".into(), String::new())
    );
}

#[test]
fn broken_document_reports_line() {
    let dir = std::env::temp_dir().join(format!("kplat-cli-{}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("broken.kg");
    fs::write(&bad, "kgraph 1 k=1\nvertex a\nedge e a b 1\n").unwrap();
    let (code, out, err) = run(&["validate", bad.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(out.is_empty());
    assert!(err.contains("line 3"), "{err}");
    fs::write(&bad, "kgraph 1 k=1\nvertex a\nedge e a a 1\nsquare e e e q\n").unwrap();
    let (code, _, err) = run(&["validate", bad.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(err.contains("line 4"), "{err}");
}

#[test]
fn exit_codes() {
    let g1 = fixture("g1.kg");
    assert_eq!(run(&["perp"]).0, 2);
    assert_eq!(run(&["perp", &g1, "--set", "nope"]).0, 2);
    // {a} is not hereditary
    assert_eq!(run(&["perp", &g1, "--set", "a"]).0, 2);
    assert_eq!(run(&["kp-eval", &g1, "--expr", "s(f.e)"]).0, 2);
    assert_eq!(run(&["kp-eval", &g1, "--expr", "s(zz)"]).0, 2);
    assert_eq!(run(&["verify", &g1, "--theorem", "quotient", "--set", "b"]).0, 2);
    assert_eq!(run(&["verify", &g1, "--theorem", "31"]).0, 3);
    assert_eq!(run(&["verify", &g1, "--theorem", "3"]).0, 0);
    assert_eq!(run(&["--help"]).0, 0);
}

#[test]
fn unknown_condition_b_exits_3() {
    let dir = std::env::temp_dir().join(format!("kplat-cli-b-{}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    let g2 = kplat::fixtures::g2();
    let loop1 = kplat::io::parse_kgraph("kgraph 1 k=1\nvertex u\nedge z u u 1\n").unwrap();
    let prod = kplat::cartesian_product(&g2, &loop1).unwrap();
    let file = dir.join("g2xloop.kg");
    fs::write(&file, kplat::io::serialize_kgraph(&prod)).unwrap();
    let (code, out, _) = run(&["condition-b", file.to_str().unwrap(), "--depth", "3"]);
    assert_eq!(code, 3);
    assert_eq!(out, "v:u: unknown (depth 3)\n");
}

#[test]
fn gen_and_quotient_write_documents() {
    let (code, doc, _) = run(&["gen", "--k", "2", "--vertices", "4", "--density", "0.5", "--seed", "3"]);
    assert_eq!(code, 0);
    let g = kplat::io::parse_kgraph(&doc).unwrap();
    assert_eq!(g.k(), 2);
    assert_eq!(run(&["gen", "--k", "2", "--vertices", "4", "--density", "0.5", "--seed", "3"]).1, doc);
    assert_eq!(run(&["gen", "--k", "0", "--vertices", "4", "--density", "0.5", "--seed", "3"]).0, 2);

    let dir = std::env::temp_dir().join(format!("kplat-cli-q-{}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    let out = dir.join("q.kg");
    let (code, stdout, _) = run(&["quotient", &fixture("g5.kg"), "--set", "v", "--out", out.to_str().unwrap()]);
    assert_eq!((code, stdout.as_str()), (0, ""));
    let q = kplat::io::parse_kgraph(&fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(q.vertex_count(), 1);
}

#[test]
fn random_golden_graph() {
    let (_, doc, _) = run(&["gen", "--k", "1", "--vertices", "8", "--density", "0.3", "--seed", "7"]);
    let path = golden_path("random_k1_n8_d0.3_s7.kg");
    if std::env::var_os("KPLAT_BLESS").is_some() {
        fs::write(&path, &doc).unwrap();
    }
    assert_eq!(doc, fs::read_to_string(&path).unwrap());
}
