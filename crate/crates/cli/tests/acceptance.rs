//! One line per acceptance criterion. Criterion 4 is reported but not
//! asserted; every other criterion fails the target when it fails.

use std::path::Path;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use crational::{gq_rat, q};
use serde_json::Value;
use tempfile::TempDir;
use weierstrass::{assemble_vectors, solve_tau, target_lambdas};

const CASES: [(usize, usize); 3] = [(0, 4), (1, 4), (2, 7)];

struct Ran {
    code: i32,
    report: Value,
    elapsed: Duration,
}

fn wsurf(dir: &Path, args: &[&str]) -> (i32, Duration) {
    let t = Instant::now();
    let out = Command::new(env!("CARGO_BIN_EXE_wsurf"))
        .current_dir(dir)
        .args(args)
        .output()
        .expect("spawn wsurf");
    (out.status.code().unwrap_or(-1), t.elapsed())
}

fn analyse(dir: &Path, args: &[&str]) -> Ran {
    let mut full: Vec<&str> = args.to_vec();
    full.extend(["--report", "report.json"]);
    let (code, elapsed) = wsurf(dir, &full);
    let report = std::fs::read_to_string(dir.join("report.json"))
        .ok()
        .and_then(|s| serde_json::from_str(&s).ok())
        .unwrap_or(Value::Null);
    let _ = std::fs::remove_file(dir.join("report.json"));
    Ran {
        code,
        report,
        elapsed,
    }
}

fn generated(dir: &Path, k: usize, m: usize) -> String {
    let name = format!("g{k}{m}.json");
    if !dir.join(&name).exists() {
        let (code, _) = wsurf(
            dir,
            &[
                "generate",
                "--k",
                &k.to_string(),
                "--m",
                &m.to_string(),
                "-o",
                &name,
            ],
        );
        assert_eq!(code, 0, "generate({k},{m})");
    }
    name
}

fn check<'a>(r: &'a Value, name: &str) -> &'a Value {
    r["checks"]
        .as_array()
        .and_then(|cs| cs.iter().find(|c| c["name"] == name))
        .unwrap_or(&Value::Null)
}

fn passed(r: &Value, name: &str) -> bool {
    check(r, name)["status"] == "pass"
}

fn max(r: &Value, name: &str) -> f64 {
    check(r, name)["stats"]["max"].as_f64().unwrap_or(f64::NAN)
}

fn all_pass(r: &Value, names: &[&str]) -> bool {
    names.iter().all(|n| passed(r, n))
}

struct Line {
    n: usize,
    pass: bool,
    detail: String,
}

fn criterion_1_to_3(dir: &Path) -> Vec<Line> {
    let mut c1 = (true, Vec::new());
    let mut c2 = (true, Vec::new());
    let mut c3 = (true, Vec::new());
    for (k, m) in CASES {
        let f = generated(dir, k, m);
        let r = analyse(dir, &["verify", &f]);
        let secs = r.elapsed.as_secs_f64();
        let rep = &r.report;
        c1.0 &= passed(rep, "conformal") && secs < 10.0;
        c1.1.push(format!("({k},{m}) exact zero, {secs:.1}s"));
        let order = check(rep, "isotropy-order")["value"]
            .as_str()
            .unwrap_or("?")
            .to_string();
        c2.0 &= passed(rep, "isotropy-order") && order == k.to_string();
        c2.1.push(format!("({k},{m}) order {order}"));
        let ends = &check(rep, "planar-ends")["value"];
        c3.0 &= all_pass(rep, &["planar-ends", "contour-residues"])
            && ends["planarEnds"] == 2 * m + 2
            && secs < 20.0;
        c3.1.push(format!(
            "({k},{m}) {}/{} ends, residue {:.1e}, contour {:.1e}",
            ends["planarEnds"],
            2 * m + 2,
            max(rep, "planar-ends"),
            max(rep, "contour-residues")
        ));
        c1.0 &= r.code == 0;
    }
    vec![
        Line {
            n: 1,
            pass: c1.0,
            detail: c1.1.join("; "),
        },
        Line {
            n: 2,
            pass: c2.0,
            detail: c2.1.join("; "),
        },
        Line {
            n: 3,
            pass: c3.0,
            detail: c3.1.join("; "),
        },
    ]
}

fn criterion_4() -> Line {
    let t = solve_tau(0, 4, Some(q(8)), 0).expect("tau system");
    let w = assemble_vectors(&t, None).expect("vectors");
    let target = target_lambdas(&t);
    let real = w.lambda_table();
    let (l, n) = (5, 9);
    let keys = [(l, l), (0, 2 * l), (n, 2 * l), (2 * l, 2 * n)];
    let exact = keys
        .iter()
        .all(|&(a, b)| real.get(a, b) == target.get(a, b));
    let scale = w.provenance.lambda_scale.clone().expect("scale");
    let scaled = keys
        .iter()
        .all(|&(a, b)| real.get(a, b) == gq_rat(scale.clone()) * target.get(a, b));
    assert!(
        scaled,
        "realized table must be a uniform multiple of the target"
    );
    let show = |t: &weierstrass::LambdaTable| {
        keys.iter()
            .map(|&(a, b)| t.get(a, b).re.to_string())
            .collect::<Vec<_>>()
            .join(", ")
    };
    Line {
        n: 4,
        pass: exact,
        detail: format!(
            "target [{}], realized [{}] = {scale} x target; 8 is not a square in Q(i), so no Gaussian-rational datum has lambda_(l,l) = 8",
            show(&target),
            show(&real)
        ),
    }
}

fn criterion_5_to_7(dir: &Path) -> Vec<Line> {
    let mut c5 = (true, Vec::new());
    let mut c6 = (true, Vec::new());
    let mut c7 = (true, Vec::new());
    for (k, m) in CASES {
        let f = generated(dir, k, m);
        let r = analyse(dir, &["invariants", &f, "--samples", "50"]);
        let rep = &r.report;
        let used = check(rep, "willmore")["samples"]["used"]
            .as_u64()
            .unwrap_or(0);
        c5.0 &= passed(rep, "willmore") && used >= 50;
        c5.1.push(format!("({k},{m}) {:.1e} at {used}", max(rep, "willmore")));
        c6.0 &= all_pass(rep, &["gauss", "codazzi", "ricci"]);
        c6.1.push(format!(
            "({k},{m}) {:.1e}/{:.1e}/{:.1e}",
            max(rep, "gauss"),
            max(rep, "codazzi"),
            max(rep, "ricci")
        ));
        c7.0 &= all_pass(rep, &["chi0", "theta0-identity"]);
        c7.1.push(format!(
            "({k},{m}) chi0 {:.1e}, theta0 {:.1e}",
            max(rep, "chi0"),
            max(rep, "theta0-identity")
        ));
    }
    vec![
        Line {
            n: 5,
            pass: c5.0,
            detail: format!("willmore < 1e-6: {}", c5.1.join("; ")),
        },
        Line {
            n: 6,
            pass: c6.0,
            detail: format!("gauss/codazzi/ricci < 1e-6: {}", c6.1.join("; ")),
        },
        Line {
            n: 7,
            pass: c7.0,
            detail: c7.1.join("; "),
        },
    ]
}

fn criterion_8(dir: &Path) -> Line {
    let mut pass = true;
    let mut parts = Vec::new();
    for (k, m) in CASES {
        let f = generated(dir, k, m);
        let r = analyse(dir, &["adjoint", &f, "--mode", "dual"]);
        pass &= passed(&r.report, "dual-rho");
        parts.push(format!(
            "({k},{m}) |rho| {:.1e}",
            max(&r.report, "dual-rho")
        ));
    }
    Line {
        n: 8,
        pass,
        detail: parts.join("; "),
    }
}

fn criterion_9_10(dir: &Path) -> Vec<Line> {
    let f = generated(dir, 1, 4);
    let r = analyse(dir, &["adjoint", &f, "--mode", "riccati", "--grid", "41"]);
    let rep = &r.report;
    let secs = r.elapsed.as_secs_f64();
    let names = ["theta", "yhat-null", "yhat-conformal", "metric-identity"];
    vec![
        Line {
            n: 9,
            pass: all_pass(rep, &names) && secs < 60.0,
            detail: format!(
                "41x41, theta {:.1e}, <Y,Y> {:.1e}, <Y_z,Y_z> {:.1e}, metric incl. 4<eta,eta-bar> {:.1e}, {secs:.1}s",
                max(rep, "theta"),
                max(rep, "yhat-null"),
                max(rep, "yhat-conformal"),
                max(rep, "metric-identity")
            ),
        },
        Line {
            n: 10,
            pass: passed(rep, "adjoint-willmore"),
            detail: format!("adjoint willmore {:.1e} < 1e-3", max(rep, "adjoint-willmore")),
        },
    ]
}

fn criterion_11_12(dir: &Path) -> Vec<Line> {
    let f = generated(dir, 1, 4);
    let r = analyse(dir, &["harmonic", &f]);
    let rep = &r.report;
    let dfkk = &check(rep, "rank-dfkk")["value"];
    let q = &check(rep, "q-isotropy")["value"];
    vec![
        Line {
            n: 11,
            pass: all_pass(
                rep,
                &[
                    "pi0-isotropy",
                    "pi0-holomorphicity",
                    "rank-dfkk",
                    "frenet",
                    "rank-dh0",
                    "phi-pairing",
                ],
            ),
            detail: format!(
                "pi0 {:.1e}/{:.1e}, rank dfkk {dfkk}, frenet {:.1e}, rank dh0 {}, phi {:.1e}",
                max(rep, "pi0-isotropy"),
                max(rep, "pi0-holomorphicity"),
                max(rep, "frenet"),
                check(rep, "rank-dh0")["value"],
                max(rep, "phi-pairing")
            ),
        },
        Line {
            n: 12,
            pass: passed(rep, "q-isotropy"),
            detail: format!(
                "max <Q_j,Q_j> {:.1e}, terminal step {}",
                max(rep, "q-isotropy"),
                q["terminalSteps"]
            ),
        },
    ]
}

fn criterion_13(dir: &Path) -> Line {
    let (code, _) = wsurf(
        dir,
        &[
            "generate",
            "--example",
            "totally-isotropic",
            "-o",
            "ti.json",
        ],
    );
    assert_eq!(code, 0);
    let r = analyse(dir, &["twistor", "ti.json"]);
    let rep = &r.report;
    let names = [
        "conformal",
        "totally-isotropic",
        "j-holomorphic",
        "normal-horizontal",
        "transfer-bound",
    ];
    Line {
        n: 13,
        pass: all_pass(rep, &names) && check(rep, "totally-isotropic")["value"] == "total",
        detail: format!(
            "isotropy {}, J-holomorphic {:.1e}, normal-horizontal {:.1e}, transfer ratio {:.2}",
            check(rep, "totally-isotropic")["value"],
            max(rep, "j-holomorphic"),
            max(rep, "normal-horizontal"),
            check(rep, "transfer-bound")["value"]["ratio"]
                .as_f64()
                .unwrap_or(f64::NAN)
        ),
    }
}

fn criterion_14(dir: &Path) -> Line {
    let mut pass = true;
    let mut parts = Vec::new();
    for (k, m) in [(0, 4), (1, 4)] {
        let f = generated(dir, k, m);
        let r = analyse(dir, &["invariants", &f, "--samples", "1", "--energy"]);
        let v = &check(&r.report, "energy-quantization")["value"];
        let secs = r.elapsed.as_secs_f64();
        pass &= passed(&r.report, "energy-quantization") && secs < 120.0;
        parts.push(format!(
            "({k},{m}) W/4pi {:.6} -> {}, {secs:.0}s",
            v["wOver4pi"].as_f64().unwrap_or(f64::NAN),
            v["integer"]
        ));
    }
    Line {
        n: 14,
        pass,
        detail: parts.join("; "),
    }
}

fn pipeline(dir: &Path) -> Vec<(String, Vec<u8>)> {
    let steps: [&[&str]; 8] = [
        &[
            "generate", "--k", "1", "--m", "4", "--seed", "5", "-o", "s.json",
        ],
        &["verify", "s.json", "--report", "verify.json"],
        &["invariants", "s.json", "--report", "invariants.json"],
        &[
            "adjoint",
            "s.json",
            "--mode",
            "dual",
            "--report",
            "dual.json",
        ],
        &[
            "adjoint",
            "s.json",
            "--mode",
            "riccati",
            "--grid",
            "21",
            "--report",
            "riccati.json",
        ],
        &["harmonic", "s.json", "--report", "harmonic.json"],
        &["twistor", "s.json", "--report", "twistor.json"],
        &[
            "export",
            "s.json",
            "--csv",
            "s.csv",
            "--chart",
            "north",
            "--grid",
            "32",
            "--report",
            "export.json",
        ],
    ];
    for s in steps {
        wsurf(dir, s);
    }
    let mut files: Vec<(String, Vec<u8>)> = std::fs::read_dir(dir)
        .unwrap()
        .map(|e| {
            let e = e.unwrap();
            (
                e.file_name().to_string_lossy().into_owned(),
                std::fs::read(e.path()).unwrap(),
            )
        })
        .collect();
    files.sort();
    files
}

fn criterion_15() -> Line {
    let (a, b) = (TempDir::new().unwrap(), TempDir::new().unwrap());
    let (fa, fb) = (pipeline(a.path()), pipeline(b.path()));
    let names: Vec<&str> = fa.iter().map(|(n, _)| n.as_str()).collect();
    let same = fa == fb;
    Line {
        n: 15,
        pass: same && fa.len() == 9,
        detail: format!("{} files compared: {}", fa.len(), names.join(" ")),
    }
}

fn main() -> ExitCode {
    let dir = TempDir::new().unwrap();
    let d = dir.path();
    let mut lines = criterion_1_to_3(d);
    lines.push(criterion_4());
    lines.extend(criterion_5_to_7(d));
    lines.push(criterion_8(d));
    lines.extend(criterion_9_10(d));
    lines.extend(criterion_11_12(d));
    lines.push(criterion_13(d));
    lines.push(criterion_14(d));
    lines.push(criterion_15());
    let mut ok = true;
    for l in &lines {
        println!(
            "criterion {}: {} {}",
            l.n,
            if l.pass { "PASS" } else { "FAIL" },
            l.detail
        );
        if l.n != 4 {
            ok &= l.pass;
        }
    }
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
