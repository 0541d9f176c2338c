use std::path::PathBuf;
use std::process::Command as Proc;

use charsheaf::cli::*;
use charsheaf::groupkit::Family;

fn configs() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../configs")
}

fn run(text: &str, command: Option<&str>) -> Outcome {
    let inv = Invocation { command: command.map(String::from), ..Default::default() };
    execute_text(text, &inv)
}

const TORUS: &str = "[group]\nfamily = split-torus\np = 2\n";

#[test]
fn minimal_torus_config() {
    let c = parse_config(TORUS).unwrap();
    assert_eq!(c.spec.family, Family::SplitTorus(1));
    assert_eq!((c.spec.p, c.spec.k, c.seed, c.cap), (2, 1, 0, charsheaf::groupkit::DEFAULT_CAP));
    assert_eq!(c.pairs.len(), 1);
    assert!(c.commands.is_empty() && c.m_max.is_none());
}

#[test]
fn unknown_family_lists_the_families() {
    let e = parse_config("# comment\n[group]\nfamily = borel\np = 2\n").unwrap_err();
    assert_eq!(e.line, 3);
    for name in Family::NAMES {
        assert!(e.msg.contains(name), "{}", e.msg);
    }
}

#[test]
fn golden_borel_config_is_valid() {
    let text = std::fs::read_to_string(configs().join("borel-q4.cfg")).unwrap();
    let c = parse_config(&text).unwrap();
    assert_eq!(c.spec.q(), 4);
    let names: Vec<&str> = c.pairs.iter().map(|p| p.name.as_str()).collect();
    assert_eq!(names, ["case1", "case2", "case3", "case4", "case5"]);
    assert_eq!(c.commands, vec![Command::VerifyAll]);
}

#[test]
fn rejections_carry_line_numbers() {
    let cases = [
        ("[group]\nfamily = split-torus\np = 2\nq = 4\n", 4, "unknown key"),
        ("[group]\nfamily = split-torus\np = 2\np = 3\n", 4, "repeated"),
        ("[group]\nfamily = split-torus\np = 4\n", 3, "not prime"),
        ("[grp]\n", 1, "unknown section"),
        ("[group]\nfamily split-torus\n", 2, "key = value"),
        ("[group]\nfamily = borel-sl3\np = 2\n[pairs]\npair = case9\n", 5, "unknown pair"),
        ("[group]\nfamily = borel-sl3\np = 2\nrank = 2\n", 4, "split-torus only"),
        ("[group]\nfamily = split-torus\np = 2\n[commands]\nrun = tables\n", 5, "unknown command"),
        ("[group]\nfamily = split-torus\np = 2\n[commands]\nm = 3..1\n", 5, "range"),
        ("[group]\nfamily = split-torus\np = 2\n[frobenius]\ntwist = unitary\n", 5, "unsupported Frobenius"),
        ("[group]\np = 2\n", 0, "needs a family"),
    ];
    for (text, line, needle) in cases {
        let e = parse_config(text).unwrap_err();
        assert_eq!(e.line, line, "{text}: {e}");
        assert!(e.msg.contains(needle), "{text}: {e}");
    }
}

#[test]
fn lists_and_run_keys() {
    let text = "seed = 7\n[run]\nthreads = 2\n[group]\nfamily = borel-sl3\np = 2\n[pairs]\npair = case4\npair = case5\n\
                [commands]\nrun = blocks\nrun = packets\nm = 1..2\nm_max = 3\n[output]\nmachine = out.txt\n";
    // top-level keys belong to [run]
    let c = parse_config(text).unwrap();
    assert_eq!(c.seed, 7);
    assert!(parse_config(&format!("{text}[run]\nseed = 8\n")).unwrap_err().msg.contains("repeated"));
    assert_eq!((c.seed, c.threads, c.degrees, c.m_max), (7, Some(2), (1, 2), Some(3)));
    assert_eq!(c.commands, vec![Command::Blocks, Command::Packets]);
    assert_eq!(c.pairs.len(), 2);
    assert_eq!(c.machine, Some(PathBuf::from("out.txt")));
}

#[test]
fn chartable_on_b_f2_has_five_rows() {
    let o = run("[group]\nfamily = borel-sl3\np = 2\n", Some("chartable"));
    assert_eq!(o.exit, EXIT_PASS, "{:?}", o.diagnostics);
    let r = o.report.unwrap();
    let degrees = r.values.iter().find(|(k, _)| k == "chartable.m1.form0.degrees").unwrap();
    assert_eq!(degrees.1, "1,1,1,1,2");
    assert_eq!(r.values.iter().filter(|(k, _)| k.contains(".row[")).count(), 5);
}

#[test]
fn smatrix_on_case4_at_q4_is_nine_by_nine() {
    let text = "[group]\nfamily = borel-sl3\np = 2\nk = 2\n[pairs]\npair = shipped\n";
    let o = run(text, Some("smatrix"));
    assert_eq!(o.exit, EXIT_PASS, "{:?}", o.diagnostics);
    let r = o.report.unwrap();
    for m in ["St", "S"] {
        let n = r.values.iter().filter(|(k, _)| k.starts_with(&format!("packet.case4.{m}["))).count();
        assert_eq!(n, 81, "{m}");
    }
    let machine = r.machine();
    assert!(machine.lines().any(|l| l == "CHECK packet.case4.smatrix.unitary PASS"));
    assert!(machine.lines().any(|l| l.starts_with("VALUE packet.case4.S[0][1] = (")));
}

#[test]
fn incomplete_pairs_fail_with_exit_one() {
    let text = "[group]\nfamily = borel-sl3\np = 2\n[pairs]\npair = case1\npair = case2\n";
    let o = run(text, Some("blocks"));
    assert_eq!(o.exit, EXIT_CHECK_FAILED);
    let r = o.report.unwrap();
    assert!(r.machine().contains("CHECK blocks.completed FAIL"));
}

#[test]
fn limits_exit_two() {
    let o = run("[group]\nfamily = borel-sl3\np = 2\n[commands]\ncap = 5\n", Some("blocks"));
    assert_eq!(o.exit, EXIT_CONFIG);
    assert!(o.diagnostics[0].contains("cap"), "{:?}", o.diagnostics);
    let o = run("[group]\nfamily = heisenberg-u3\np = 2\n", Some("shintani"));
    assert_eq!(o.exit, EXIT_CONFIG);
    let o = run(TORUS, Some("tables"));
    assert_eq!(o.exit, EXIT_CONFIG);
}

#[test]
fn modular_command_is_seeded() {
    let a = run(TORUS, Some("modular")).report.unwrap();
    let b = run(TORUS, Some("modular")).report.unwrap();
    assert_eq!(a.machine(), b.machine());
    assert_eq!(a.values.iter().filter(|(k, _)| k.starts_with("modular.pointed") && k.ends_with(".rank")).count(), 20);
    let c = run(&format!("[run]\nseed = 5\n{TORUS}"), Some("modular")).report.unwrap();
    assert!(a.all_pass() && c.all_pass());
}

#[test]
fn binary_writes_report_and_exit_code() {
    let dir = std::env::temp_dir().join(format!("charsheaf-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let cfg = dir.join("torus.cfg");
    std::fs::write(&cfg, format!("{TORUS}[commands]\nrun = packets\n[output]\nmachine = machine.txt\n")).unwrap();
    let out = dir.join("report.txt");
    let status = Proc::new(env!("CARGO_BIN_EXE_charsheaf"))
        .args(["--config", cfg.to_str().unwrap(), "--out", out.to_str().unwrap(), "--threads", "1"])
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(0));
    let report = std::fs::read_to_string(&out).unwrap();
    let machine = std::fs::read_to_string(dir.join("machine.txt")).unwrap();
    assert!(report.ends_with(&machine));
    assert!(machine.lines().all(|l| l.starts_with("VALUE ") || l.starts_with("CHECK ")));

    let bad = dir.join("bad.cfg");
    std::fs::write(&bad, "[group]\nfamily = torus\n").unwrap();
    let o = Proc::new(env!("CARGO_BIN_EXE_charsheaf")).args(["--config", bad.to_str().unwrap()]).output().unwrap();
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("config line 2"));
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn golden_borel_verify_all_exits_zero() {
    let inv = Invocation { config: configs().join("borel-q4.cfg"), ..Default::default() };
    let o = execute(&inv);
    assert_eq!(o.exit, EXIT_PASS, "{:?}", o.diagnostics);
}
