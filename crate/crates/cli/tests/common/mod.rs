//! Golden CLI transcripts for the fixture graphs.

use std::path::PathBuf;

pub fn fixture(name: &str) -> String {
    let p = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/fixtures").join(name);
    p.to_str().unwrap().to_owned()
}

pub fn golden_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name)
}

/// `(fixture file, golden file, argument lists with FILE as placeholder)`.
pub fn scripts() -> Vec<(&'static str, &'static str, Vec<&'static str>)> {
    vec![
        (
            "g1.kg",
            "g1.txt",
            vec![
                "validate FILE",
                "lattice FILE --dot -",
                "perp FILE --set b",
                "doubleperp FILE --set b",
                "regular FILE --set b",
                "regular FILE",
                "quotient FILE --set b",
                "condition-b FILE",
                "condition-b FILE --vertex a",
                "kp-eval FILE --expr sstar(g)*s(g)-p(a) --is-zero",
                "kp-eval FILE --expr p(a) --graded",
                "kp-eval FILE --expr s(e.f)",
                "kp-eval FILE --expr p(a)-s(g)*sstar(g) --in-ideal b",
                "kp-eval FILE --expr p(a) --in-ideal b",
                "verify FILE --theorem 1",
                "verify FILE --theorem 3",
                "verify FILE --theorem 5",
                "verify FILE --theorem 31",
                "perp FILE --set a",
            ],
        ),
        (
            "g2.kg",
            "g2.txt",
            vec![
                "validate FILE",
                "lattice FILE --dot -",
                "regular FILE",
                "condition-b FILE",
                "condition-b FILE --vertex v",
                "kp-eval FILE --expr sstar(x)*s(y) --is-zero",
                "kp-eval FILE --expr s(x)*sstar(x)+s(y)*sstar(y)-p(v) --is-zero",
                "kp-eval FILE --expr sstar(x)*s(x.y) --graded",
                "verify FILE --theorem 1",
                "verify FILE --theorem 3",
                "verify FILE --theorem 5",
                "verify FILE --theorem 33",
            ],
        ),
        (
            "omega_2_11.kg",
            "omega_2_11.txt",
            vec![
                "validate FILE",
                "lattice FILE --dot -",
                "regular FILE",
                "condition-b FILE",
                "quotient FILE --set",
                "kp-eval FILE --expr p(v0_0)*p(v0_0)-p(v0_0) --is-zero",
                "verify FILE --theorem 1",
                "verify FILE --theorem 3",
                "verify FILE --theorem 5",
                "verify FILE --theorem 31",
                "verify FILE --theorem quotient --set",
            ],
        ),
    ]
}

/// Every command of a script with its stdout, stderr and exit code.
pub fn transcript(file: &str, commands: &[&str]) -> String {
    let path = fixture(file);
    let mut out = String::new();
    for cmd in commands {
        let args: Vec<String> = std::iter::once("kplat".to_owned())
            .chain(cmd.split(' ').map(|a| if a == "FILE" { path.clone() } else { a.to_owned() }))
            .collect();
        let (mut so, mut se) = (Vec::new(), Vec::new());
        let code = kplat_cli::run(args, &mut so, &mut se);
        out += &format!("$ kplat {}\n", cmd.replace("FILE", file));
        out += &String::from_utf8(so).unwrap();
        for line in String::from_utf8(se).unwrap().lines() {
            out += &format!("stderr: {line}\n");
        }
        out += &format!("exit {code}\n\n");
    }
    out
}
