//! One verdict line per acceptance criterion. Run with `--nocapture` to see
//! the lines; the test fails if any criterion fails.

use std::path::PathBuf;
use std::process::Command as Proc;
use std::time::{Duration, Instant};

use charsheaf::groupkit::{build_group, norm_map, Family, GroupSpec, DEFAULT_CAP};
use charsheaf::lpacket::*;
use charsheaf::metricmod::*;
use charsheaf::report::Report;
use charsheaf::sheafdict::*;
use charsheaf::shintani::shintani_report;
use charsheaf::{Cyclo, Rational};
use rand::SeedableRng;

struct Verdict {
    pass: bool,
    notes: Vec<String>,
}

impl Verdict {
    fn new() -> Self {
        Verdict { pass: true, notes: Vec::new() }
    }

    fn expect(&mut self, ok: bool, what: impl Into<String>) {
        if !ok {
            self.pass = false;
            self.notes.push(what.into());
        }
    }

    fn report(&mut self, r: &Report, ctx: &str) {
        for c in r.failures().take(5) {
            self.expect(false, format!("{ctx}: {} ({})", c.name, c.detail));
        }
    }

    fn within(&mut self, t: Instant, limit: Duration, what: &str) -> Duration {
        let e = t.elapsed();
        self.expect(e <= limit, format!("{what} took {e:.1?}, limit {limit:?}"));
        e
    }
}

fn setting(family: Family, p: u32, k: u32) -> Setting {
    Setting::new(GroupSpec::new(family, p, k), 1, DEFAULT_CAP).unwrap()
}

fn degrees(st: &Setting, ws: &[IrrepId]) -> Vec<u64> {
    ws.iter().map(|&w| degree(st, w)).collect()
}

fn golden_counts() -> Verdict {
    let mut v = Verdict::new();
    for (p, k) in [(2, 1), (3, 1), (2, 2), (5, 1)] {
        let t = Instant::now();
        let st = setting(Family::BorelSl3, p, k);
        let q = st.qm();
        let part = match partition_blocks(&st, &borel_pairs()) {
            Ok(x) => x,
            Err(e) => {
                v.expect(false, format!("q = {q}: {e}"));
                continue;
            }
        };
        let total: usize = part.blocks.iter().map(|b| b.members.len()).sum();
        v.expect(total == all_irreps(&st).len(), format!("q = {q}: blocks cover {total} irreducibles"));
        let order: u64 = (0..st.num_forms()).map(|t| st.group(t).order() as u64).sum();
        let squares: u64 = part.blocks.iter().flat_map(|b| degrees(&st, &b.members)).map(|d| d * d).sum();
        v.expect(squares == order, format!("q = {q}: Σ deg² = {squares}, |B| = {order}"));
        v.report(&block_report(&st, &part), &format!("q = {q}"));

        // (block size, degree, packet sizes) per case
        let r = q - 1;
        let case4 = if p == 3 {
            (1, r * r, vec![1])
        } else if q % 3 == 1 {
            (9, r * r / 3, vec![9])
        } else {
            (1, r * r, vec![1])
        };
        let want: [(u64, u64, Vec<u64>); 5] = [
            (r * r, 1, vec![1; (r * r) as usize]),
            (r, r, vec![1; r as usize]),
            (r, r, vec![1; r as usize]),
            case4,
            (r, q * r, vec![1; r as usize]),
        ];
        for (b, (size, deg, shape)) in part.blocks.iter().zip(want) {
            let ds = degrees(&st, &b.members);
            v.expect(
                ds.len() as u64 == size && ds.iter().all(|&d| d == deg),
                format!("q = {q} {}: degrees {ds:?}, expected {size} of degree {deg}", b.pair.name),
            );
            match partition_packets(&st, b) {
                Ok(ps) => {
                    let got: Vec<u64> = ps.iter().map(|p| p.members.len() as u64).collect();
                    v.expect(got == shape, format!("q = {q} {}: packet sizes {got:?}, expected {shape:?}", b.pair.name));
                }
                Err(e) => v.expect(false, format!("q = {q} {}: {e}", b.pair.name)),
            }
        }
        if q == 5 {
            v.within(t, Duration::from_secs(60), "q = 5");
        }
    }
    v
}

fn dimension_formula() -> Verdict {
    let mut v = Verdict::new();
    for (p, k) in [(2, 1), (3, 1), (2, 2)] {
        let st = setting(Family::BorelSl3, p, k);
        match analyze(&st, &borel_pairs(), false) {
            Ok(r) => {
                let n = r.checks.iter().filter(|c| c.name.contains(".dim.")).count();
                v.expect(n > 0, format!("borel q = {}: no dimension checks", st.qm()));
                v.report(&r, &format!("borel q = {}", st.qm()));
            }
            Err(e) => v.expect(false, format!("borel q = {}: {e}", st.qm())),
        }
        let st = setting(Family::HeisenbergU3, p, k);
        let pairs = shipped_pairs(Family::HeisenbergU3, st.qm());
        match analyze(&st, &pairs, false) {
            Ok(r) => {
                let n = r.checks.iter().filter(|c| c.name.starts_with("block.") && c.name.ends_with(".sum_squares")).count();
                v.expect(n == pairs.len(), format!("heisenberg q = {}: {n} sum-of-squares checks", st.qm()));
                v.report(&r, &format!("heisenberg q = {}", st.qm()));
            }
            Err(e) => v.expect(false, format!("heisenberg q = {}: {e}", st.qm())),
        }
    }
    v
}

fn crossed_s_matrix() -> Verdict {
    let mut v = Verdict::new();
    let t = Instant::now();
    let st = setting(Family::BorelSl3, 2, 2);
    let part = partition_blocks(&st, &borel_pairs()).unwrap();
    let a = analyze_block(&st, &part.blocks[3]).unwrap();
    v.expect(a.reports.len() == 1, format!("{} case-4 packets", a.reports.len()));
    let rep = &a.reports[0];
    v.expect(rep.dim_m == 9, format!("dim M = {}", rep.dim_m));
    // S̃ unitary and S⁺·S̄⁺ᵀ = 9·I, recomputed here
    let gram = |m: &[Vec<Cyclo>], scale: i64| {
        m.iter().enumerate().all(|(i, r)| {
            m.iter().enumerate().all(|(j, s)| {
                let x = r.iter().zip(s).fold(Cyclo::zero(), |acc, (a, b)| acc.add_ref(&a.mul_ref(&b.conj())));
                x == if i == j { Cyclo::from_int(scale) } else { Cyclo::zero() }
            })
        })
    };
    v.expect(gram(&rep.s_tilde, 1), "S̃ is not unitary");
    v.expect(gram(&rep.s_plus, 9), "S⁺·S̄⁺ᵀ ≠ 9·I");
    let three = Cyclo::from_int(3);
    let rescaled = rep.s_tilde.iter().flatten().zip(rep.s_plus.iter().flatten()).all(|(a, b)| a.mul_ref(&three) == *b);
    v.expect(rescaled, "S⁺ ≠ √dim M · S̃ with the trace-function normalization");
    v.expect(rep.s_plus.iter().flatten().all(|x| x.is_algebraic_integer()), "S⁺ has non-integral entries");
    for name in ["unitary", "crossed_norm", "integral", "modular_match"] {
        let ok = rep.checks.iter().any(|c| c.name.ends_with(&format!("smatrix.{name}")) && c.pass);
        v.expect(ok, format!("smatrix.{name} did not pass"));
    }
    v.within(t, Duration::from_secs(60), "case-4 S-matrix");
    v
}

fn modular_data() -> Verdict {
    let mut v = Verdict::new();
    let t = Instant::now();
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0);
    for i in 0..20 {
        let m = random_metric_group::<Rational>(&mut rng, 16);
        v.expect(m.group.order() <= 16, format!("sample {i}: |K| = {}", m.group.order()));
        match pointed_modular(&m).map_err(|e| e.to_string()).and_then(|d| verify_modular(&d).map_err(|e| e.to_string())) {
            Ok(_) => {}
            Err(e) => v.expect(false, format!("pointed sample {i}: {e}")),
        }
    }
    for orders in [vec![], vec![2], vec![3], vec![4], vec![2, 2]] {
        let d = double_abelian::<Rational>(&FiniteAbelianGroup::new(orders.clone()));
        v.expect(d.square_dim, format!("D({orders:?}) not flagged as packet data"));
        if let Err(e) = verify_modular(&d) {
            v.expect(false, format!("D({orders:?}): {e}"));
        }
    }
    // Frobenius on D(μ_3): inversion at q = 2, identity at q = 4
    for (k, want) in [(1, 1), (2, 9)] {
        let st = setting(Family::BorelSl3, 2, k);
        let part = partition_blocks(&st, &borel_pairs()).unwrap();
        let b = &part.blocks[3];
        let packets = partition_packets(&st, b).unwrap();
        let datum = packet_datum(&st, &b.pair, &packets[0].param).unwrap();
        v.expect(
            datum.fixed.len() == want && packets[0].members.len() == want,
            format!("q = {}: {} fixed labels, packet of {}", st.qm(), datum.fixed.len(), packets[0].members.len()),
        );
    }
    v.within(t, Duration::from_secs(30), "modular data");
    v
}

fn counting_formula() -> Verdict {
    let mut v = Verdict::new();
    for p in [3, 5] {
        let st = setting(Family::TorusZ2, p, 1);
        let pair = AdmissiblePairSpec::trivial(Family::TorusZ2);
        let part = partition_blocks(&st, std::slice::from_ref(&pair)).unwrap();
        let n = partition_packets(&st, &part.blocks[0]).unwrap().len() as u64;
        let forms: Vec<u64> = (0..st.num_forms()).map(|t| st.group(t).order() as u64 / 2).collect();
        let half = forms.iter().sum::<u64>() / 2;
        v.expect(n == p as u64 && n == half, format!("q = {p}: {n} packets, (|T^F| + |T^tF|)/2 = {half}"));
    }
    v
}

fn shintani_runs() -> (Verdict, Vec<Report>) {
    let mut v = Verdict::new();
    let t = Instant::now();
    let mut reports = Vec::new();
    let runs = [(Family::SplitTorus(1), 2, 6), (Family::SplitTorus(1), 3, 6), (Family::BorelSl3, 2, 3)];
    for (family, p, m_max) in runs {
        let st = setting(family, p, 1);
        let ctx = format!("{} q = {p}", family.name());
        match shintani_report(&st, &shipped_pairs(family, st.qm()), m_max, DEFAULT_CAP) {
            Ok(r) => {
                for kind in ["orthonormal", "packet_compatible", "unitary"] {
                    let n = r.checks.iter().filter(|c| c.name.ends_with(kind)).count();
                    v.expect(n > 0, format!("{ctx}: no {kind} checks"));
                }
                for (k, val) in r.values.iter().filter(|(k, _)| k.ends_with(".m0")) {
                    v.expect(val != "inconclusive", format!("{ctx}: {k} inconclusive"));
                }
                v.expect(r.checks.iter().any(|c| c.name.starts_with("almost.")), format!("{ctx}: no comparisons"));
                v.report(&r, &ctx);
                reports.push(r);
            }
            Err(e) => v.expect(false, format!("{ctx}: {e}")),
        }
    }
    v.within(t, Duration::from_secs(300), "Shintani runs");
    (v, reports)
}

fn machine_section(path: &PathBuf) -> String {
    let text = std::fs::read_to_string(path).unwrap_or_default();
    text.lines().filter(|l| l.starts_with("VALUE ") || l.starts_with("CHECK ")).collect::<Vec<_>>().join("\n")
}

fn properties(shintani: &[Report]) -> Verdict {
    let mut v = Verdict::new();
    // norm maps on every shipped (G, F, m)
    let mut shipped = vec![];
    for (family, p) in [(Family::SplitTorus(1), 2), (Family::SplitTorus(1), 3)] {
        shipped.extend((2..=6).map(|m| (family, p, m)));
    }
    shipped.extend([(Family::BorelSl3, 2, 2), (Family::BorelSl3, 2, 3), (Family::HeisenbergU3, 2, 2), (Family::HeisenbergU3, 3, 2)]);
    for (family, p, m) in shipped {
        let spec = GroupSpec::new(family, p, 1);
        let g1 = build_group(&spec, 1, DEFAULT_CAP).unwrap();
        let gm = build_group(&spec, m, DEFAULT_CAP).unwrap();
        match norm_map(&spec, &gm, &g1, m) {
            Ok(n) => v.expect(n.is_bijective() && n.well_defined, format!("{} q = {p} m = {m}: norm map", family.name())),
            Err(e) => v.expect(false, format!("{} q = {p} m = {m}: {e}", family.name())),
        }
    }
    let kernels = shintani.iter().flat_map(|r| &r.checks).filter(|c| c.name.ends_with("torus_kernel"));
    let mut n = 0;
    for c in kernels {
        n += 1;
        v.expect(c.pass, format!("{}: {}", c.name, c.detail));
    }
    v.expect(n > 0, "no torus kernel checks");

    // both block oracles, irreducible by irreducible
    let groups = [
        (Family::BorelSl3, 2, 1),
        (Family::BorelSl3, 3, 1),
        (Family::BorelSl3, 2, 2),
        (Family::HeisenbergU3, 2, 1),
        (Family::HeisenbergU3, 3, 1),
        (Family::Mu3U3, 7, 1),
        (Family::TorusZ2, 3, 1),
        (Family::TorusZ2, 5, 1),
        (Family::SplitTorus(1), 5, 1),
    ];
    for (family, p, k) in groups {
        let st = setting(family, p, k);
        let part = partition_blocks(&st, &shipped_pairs(family, st.qm())).unwrap();
        let agree = part.blocks.iter().zip(&part.induced).all(|(b, alt)| &b.members == alt);
        v.expect(agree, format!("{} q = {}: block oracles disagree", family.name(), st.qm()));
    }

    // determinism of the machine section across runs and thread counts
    let root = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../configs");
    let dir = std::env::temp_dir().join(format!("charsheaf-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    for cfg in ["borel-q4.cfg", "borel-q2-shintani.cfg", "torus-z2.cfg"] {
        let mut sections = Vec::new();
        for threads in ["1", "2"] {
            let out = dir.join(format!("{cfg}.{threads}.txt"));
            let status = Proc::new(env!("CARGO_BIN_EXE_charsheaf"))
                .args(["--config", root.join(cfg).to_str().unwrap(), "--out", out.to_str().unwrap(), "--threads", threads])
                .status()
                .unwrap();
            v.expect(status.code() == Some(0), format!("{cfg}: exit {:?}", status.code()));
            sections.push(machine_section(&out));
        }
        v.expect(!sections[0].is_empty() && sections[0] == sections[1], format!("{cfg}: machine sections differ"));
    }
    let _ = std::fs::remove_dir_all(&dir);
    v
}

#[test]
fn acceptance() {
    let mut lines = Vec::new();
    let mut all = true;
    let mut record = |n: u32, title: &str, v: Verdict, t: Instant| {
        all &= v.pass;
        let status = if v.pass { "PASS" } else { "FAIL" };
        let mut line = format!("criterion {n} {status} {title} ({:.1?})", t.elapsed());
        if !v.notes.is_empty() {
            line.push_str(&format!(": {}", v.notes.join("; ")));
        }
        println!("{line}");
        lines.push(line);
    };
    let t = Instant::now();
    record(1, "golden block and packet counts", golden_counts(), t);
    let t = Instant::now();
    record(2, "dimension formula", dimension_formula(), t);
    let t = Instant::now();
    record(3, "crossed S-matrix", crossed_s_matrix(), t);
    let t = Instant::now();
    record(4, "modular data", modular_data(), t);
    let t = Instant::now();
    record(5, "counting formula", counting_formula(), t);
    let t = Instant::now();
    let (v6, reports) = shintani_runs();
    record(6, "Shintani pipeline", v6, t);
    let t = Instant::now();
    record(7, "property suites", properties(&reports), t);
    assert!(all, "{}", lines.join("\n"));
}
