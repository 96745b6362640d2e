//! Acceptance suite: one test per acceptance criterion, each printing a
//! single pass/fail line (run with `--nocapture` to see them). Every bound —
//! verification order, witness count, modulus, and wall-clock budget — is
//! pinned here.

use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::{Duration, Instant};

use qwb_core::appell::{a_jp, phi_mock};
use qwb_core::dissect::{extract, reconstruct};
use qwb_core::dsl::{self, MemoCache, RunOptions, Statement, Verdict};
use qwb_core::ring::Monomial;
use qwb_core::series::Series;
use qwb_core::theta::{f_prod, f_sum};
use qwb_core::Ring;

fn corpus_path() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../corpus/paper.qid")
}

fn load_corpus() -> Vec<Statement> {
    let text = std::fs::read_to_string(corpus_path()).expect("corpus file");
    dsl::parse_statements(&text).expect("corpus parses")
}

fn statements_with_labels(labels: &[&str]) -> Vec<Statement> {
    let all = load_corpus();
    labels
        .iter()
        .map(|l| {
            all.iter()
                .find(|s| s.label == *l)
                .unwrap_or_else(|| panic!("label {l} missing from corpus"))
                .clone()
        })
        .collect()
}

struct Criterion {
    name: &'static str,
    budget: Duration,
    started: Instant,
}

impl Criterion {
    fn start(name: &'static str, budget_secs: u64) -> Criterion {
        Criterion {
            name,
            budget: Duration::from_secs(budget_secs),
            started: Instant::now(),
        }
    }

    fn finish(self, ok: bool, detail: &str) {
        let elapsed = self.started.elapsed();
        let verdict = if ok && elapsed <= self.budget {
            "PASS"
        } else {
            "FAIL"
        };
        println!(
            "acceptance {}: {verdict} ({:.2}s of {}s budget) — {detail}",
            self.name,
            elapsed.as_secs_f64(),
            self.budget.as_secs()
        );
        assert!(ok, "{} failed: {detail}", self.name);
        assert!(
            elapsed <= self.budget,
            "{} exceeded its {}s budget: {:.2}s",
            self.name,
            self.budget.as_secs(),
            elapsed.as_secs_f64()
        );
    }
}

/// Criterion 1: the a(10n+9) generating function identity at order 300 over
/// exact integers, within 10 seconds.
#[test]
fn criterion_1_generating_function_order_300() {
    let c = Criterion::start("criterion 1 (a(10n+9) generating function, order 300)", 10);
    let stmts = statements_with_labels(&["gen-a10n9"]);
    assert_eq!(stmts[0].order, Some(300), "corpus must pin order 300");
    let reports = dsl::run(&stmts, &RunOptions::default(), &MemoCache::new());
    let ok = reports[0].verdict == Verdict::Pass && reports[0].order == 300;
    c.finish(ok, &format!("{:?}", reports[0].verdict));
}

/// Criterion 2: a(50n+19), a(50n+39), a(50n+49) vanish mod 25 for at least
/// 49 witnesses each (indices through 2449), computed over Z/25, within 30 s.
#[test]
fn criterion_2_mod25_congruences() {
    let c = Criterion::start("criterion 2 (mod-25 congruences, 49 witnesses)", 30);
    let labels = ["cong-50n19-mod25", "cong-50n39-mod25", "cong-50n49-mod25"];
    let stmts = statements_with_labels(&labels);
    for s in &stmts {
        match &s.kind {
            dsl::StatementKind::VerifyCong {
                witnesses, modulus, ..
            } => {
                assert!(*witnesses >= 49, "need at least 49 witnesses");
                assert_eq!(*modulus, 25);
            }
            other => panic!("expected congruence, got {other:?}"),
        }
    }
    let cache = MemoCache::new();
    let reports = dsl::run(&stmts, &RunOptions::default(), &cache);
    let ok = reports
        .iter()
        .all(|r| r.verdict == Verdict::Pass && r.ring == "mod:25");
    let detail = reports
        .iter()
        .map(|r| format!("{} {:?} ({})", r.label, r.verdict, r.ring))
        .collect::<Vec<_>>()
        .join("; ");
    c.finish(ok, &detail);
}

/// Criterion 3: the mod-125 family a(1250n + 250r + 219) for r in {1,3,4}
/// and n in {0..3} (indices through 4969), computed over Z/125, within 60 s.
#[test]
fn criterion_3_mod125_congruences() {
    let c = Criterion::start("criterion 3 (mod-125 congruences to index 4969)", 60);
    let labels = [
        "cong-1250n469-mod125",
        "cong-1250n969-mod125",
        "cong-1250n1219-mod125",
    ];
    let stmts = statements_with_labels(&labels);
    for s in &stmts {
        match &s.kind {
            dsl::StatementKind::VerifyCong {
                witnesses,
                modulus,
                step,
                ..
            } => {
                assert!(*witnesses >= 4);
                assert_eq!(*modulus, 125);
                assert_eq!(*step, 1250);
            }
            other => panic!("expected congruence, got {other:?}"),
        }
    }
    let cache = MemoCache::new();
    let reports = dsl::run(&stmts, &RunOptions::default(), &cache);
    let ok = reports
        .iter()
        .all(|r| r.verdict == Verdict::Pass && r.ring == "mod:125");
    // the largest statement must actually reach index 4969
    let max_order = reports.iter().map(|r| r.order).max().unwrap();
    let detail = format!("max evaluation order {max_order}");
    c.finish(ok && max_order >= 4970, &detail);
}

/// Criterion 4: a_{1,10}(10n+5) and a_{3,10}(10n+5) vanish mod 5 for
/// n <= 30 (coefficients through 305, exact-rational accumulation with the
/// integrality gate), within 30 s.
#[test]
fn criterion_4_family_mod5_congruences() {
    let c = Criterion::start("criterion 4 (a_{1,10}, a_{3,10} mod 5)", 30);
    let labels = ["cong-a110-10n5-mod5", "cong-a310-10n5-mod5"];
    let stmts = statements_with_labels(&labels);
    for s in &stmts {
        match &s.kind {
            dsl::StatementKind::VerifyCong { witnesses, .. } => {
                assert!(*witnesses >= 31, "need n <= 30, i.e. 31 witnesses");
            }
            other => panic!("expected congruence, got {other:?}"),
        }
    }
    let (ok, detail) = {
        let cache = MemoCache::new();
        let reports = dsl::run(&stmts, &RunOptions::default(), &cache);
        (
            reports.iter().all(|r| r.verdict == Verdict::Pass),
            reports
                .iter()
                .map(|r| format!("{} {:?}", r.label, r.verdict))
                .collect::<Vec<_>>()
                .join("; "),
        )
    };
    c.finish(ok, &detail);
}

/// Criterion 5: the entire shipped corpus passes — identities at their
/// pinned orders (Lemma 2.4 at >= 80, the cube identities and the mod-5
/// binomial collapse at 200) and every congruence — within 120 s.
#[test]
fn criterion_5_full_corpus() {
    let c = Criterion::start("criterion 5 (full corpus)", 120);
    let stmts = load_corpus();
    // spot-check the pinned orders the criterion calls out
    let order_of = |label: &str| {
        stmts
            .iter()
            .find(|s| s.label == label)
            .unwrap_or_else(|| panic!("{label} missing"))
            .order
    };
    for label in ["id-tk-1", "id-tk-2", "id-tk-3", "id-tk-4"] {
        assert!(order_of(label).unwrap_or(120) >= 80, "{label} order");
    }
    for label in ["id-euler-cube", "id-cube-analog", "id-binomial-mod5"] {
        assert_eq!(order_of(label), Some(200), "{label} order");
    }
    let cache = MemoCache::new();
    let reports = dsl::run(&stmts, &RunOptions::default(), &cache);
    let failing: Vec<String> = reports
        .iter()
        .filter(|r| r.verdict != Verdict::Pass)
        .map(|r| format!("{} {:?}", r.label, r.verdict))
        .collect();
    let ok = failing.is_empty();
    let detail = if ok {
        format!("{} statements pass", reports.len())
    } else {
        failing.join("; ")
    };
    c.finish(ok && reports.len() >= 80, &detail);
}

/// Criterion 6: the property suites — ring axioms on 200 random triples at
/// order 64, triple product vs bilateral sum on 20 random pairs at order 150,
/// dissection round trip for m in {2,5,10}, 2a(n) = a_{1,2}(n) below 400,
/// and reduction commuting with multiplication mod {5,25,125}.
#[test]
fn criterion_6_property_suites() {
    let c = Criterion::start("criterion 6 (property suites)", 120);

    struct Rng(u64);
    impl Rng {
        fn next(&mut self) -> u64 {
            self.0 ^= self.0 << 13;
            self.0 ^= self.0 >> 7;
            self.0 ^= self.0 << 17;
            self.0
        }
        fn series(&mut self, ring: &Ring) -> Series {
            let val = (self.next() % 7) as i64 - 3;
            let len = (self.next() % 12) as usize;
            let coeffs: Vec<i64> = (0..len).map(|_| (self.next() % 19) as i64 - 9).collect();
            Series::from_integers(ring.clone(), val, val + len as i64 + 2, &coeffs)
        }
    }
    let mut rng = Rng(0x1234_5678_9abc_def1);

    // ring axioms: 200 random triples, order 64
    let rings = [
        Ring::Int,
        Ring::Rat,
        Ring::modular_u64(5),
        Ring::modular_u64(25),
        Ring::modular_u64(125),
    ];
    for trial in 0..200 {
        let ring = &rings[(rng.next() % rings.len() as u64) as usize];
        let f = rng.series(ring);
        let g = rng.series(ring);
        let h = rng.series(ring);
        let n = 64;
        let comm_add = f
            .add(&g)
            .unwrap()
            .eq_to_order(&g.add(&f).unwrap(), n)
            .unwrap();
        let comm_mul = f
            .mul(&g)
            .unwrap()
            .eq_to_order(&g.mul(&f).unwrap(), n)
            .unwrap();
        let assoc_mul = f
            .mul(&g)
            .unwrap()
            .mul(&h)
            .unwrap()
            .eq_to_order(&f.mul(&g.mul(&h).unwrap()).unwrap(), n)
            .unwrap();
        let distrib = f
            .mul(&g.add(&h).unwrap())
            .unwrap()
            .eq_to_order(&f.mul(&g).unwrap().add(&f.mul(&h).unwrap()).unwrap(), n)
            .unwrap();
        assert!(
            comm_add && comm_mul && assoc_mul && distrib,
            "ring axiom failed on trial {trial} over {ring}"
        );
    }

    // triple product vs sum: 20 random pairs at order 150
    for _ in 0..20 {
        let a = Monomial::new(
            if rng.next().is_multiple_of(2) { 1 } else { -1 },
            (rng.next() % 9) as i64 + 1,
        );
        let b = Monomial::new(
            if rng.next().is_multiple_of(2) { 1 } else { -1 },
            (rng.next() % 9) as i64 + 1,
        );
        let s = f_sum(a, b, 150).unwrap();
        let p = f_prod(a, b, 150).unwrap();
        assert!(s.eq_to_order(&p, 150).unwrap(), "f({a}, {b})");
    }

    // dissection round trip on random series, m in {2, 5, 10}
    for m in [2i64, 5, 10] {
        for _ in 0..10 {
            let f = rng.series(&Ring::Int).shift(3); // keep valuations >= 0
            let parts: Vec<Series> = (0..m).map(|r| extract(&f, m, r).unwrap()).collect();
            let back = reconstruct(&parts).unwrap();
            let window = back.precision().min(f.precision());
            assert!(back.eq_to_order(&f, window).unwrap(), "m = {m}");
        }
    }

    // 2 a(n) = a_{1,2}(n) for n < 400
    let twice = phi_mock(&Ring::Int, 400).unwrap().scale_i64(2);
    let family = a_jp(1, 2, 400).unwrap();
    assert!(twice.eq_to_order(&family, 400).unwrap());

    // reduction homomorphism commutes with multiplication, mod {5, 25, 125}
    for m in [5u64, 25, 125] {
        let target = Ring::modular_u64(m);
        for _ in 0..20 {
            let f = rng.series(&Ring::Int);
            let g = rng.series(&Ring::Int);
            let lhs = f.mul(&g).unwrap().to_ring(&target).unwrap();
            let rhs = f
                .to_ring(&target)
                .unwrap()
                .mul(&g.to_ring(&target).unwrap())
                .unwrap();
            assert!(lhs.eq_to_order(&rhs, lhs.precision()).unwrap(), "mod {m}");
        }
    }

    c.finish(
        true,
        "ring axioms, theta forms, dissection, family, reduction",
    );
}

/// Criterion 7: discovery and corruption detection through the CLI — the
/// scans report exactly the known progressions, and ten seeded corpus
/// corruptions each yield a fail verdict naming the corrupted label.
#[test]
fn criterion_7_discovery_and_mutation() {
    let c = Criterion::start("criterion 7 (scan discovery + corruption detection)", 120);
    let qwb = env!("CARGO_BIN_EXE_qwb");

    let scan = |expr: &str, max_a: &str, count: &str| -> Vec<String> {
        let out = Command::new(qwb)
            .args([
                "scan",
                expr,
                "--maxA",
                max_a,
                "--moduli",
                "5",
                "--min-witnesses",
                "25",
                "--count",
                count,
            ])
            .output()
            .unwrap();
        assert!(out.status.success());
        String::from_utf8_lossy(&out.stdout)
            .lines()
            .map(|l| l.trim().to_string())
            .collect()
    };
    let phi_hits = scan("phiMock", "10", "500");
    assert_eq!(phi_hits, vec!["A=10 B=9 M=5 witnesses=50"], "phiMock scan");
    let partition_hits = scan("1/E[1]", "7", "500");
    assert_eq!(
        partition_hits,
        vec!["A=5 B=4 M=5 witnesses=100"],
        "1/E_1 scan"
    );

    // ten seeded corruptions, each caught and named
    let mutations: [(&str, &str, &str); 10] = [
        ("id-p5n4", "5*E[5]^5", "4*E[5]^5"),
        ("id-phi-eta", "E[2]^5", "E[2]^4"),
        ("id-psi-eta", "E[2]^2/E[1]", "E[2]^2/E[1]^2"),
        ("id-t-fifth-power", "11*q", "10*q"),
        ("id-eta-split-1", "4*q*E[10]^2", "3*q*E[10]^2"),
        ("id-eta-split-3", "5*q*E[10]^2", "6*q*E[10]^2"),
        ("id-e1-dissect", "- q -", "+ q -"),
        ("cong-10n9-mod5", "10n+9", "10n+8"),
        ("id-theta-2dissect-eta", "E[4]*E[20] + q", "E[4]*E[20] - q"),
        ("id-rho-phi", "2*q^-1", "3*q^-1"),
    ];
    let original = std::fs::read_to_string(corpus_path()).unwrap();
    for (i, (label, find, replace)) in mutations.iter().enumerate() {
        let needle = format!("[{label}]");
        let mutated: String = original
            .lines()
            .map(|line| {
                if line.contains(&needle) {
                    line.replace(find, replace)
                } else {
                    line.to_string()
                }
            })
            .collect::<Vec<_>>()
            .join("\n");
        assert_ne!(mutated, original, "mutation {label} must change the corpus");
        let mut path = std::env::temp_dir();
        path.push(format!("qwb-acceptance-{}-{i}.qid", std::process::id()));
        std::fs::write(&path, mutated).unwrap();
        let out = Command::new(qwb)
            .arg("verify")
            .arg(&path)
            .args(["--filter", label])
            .output()
            .unwrap();
        let report = String::from_utf8_lossy(&out.stdout).into_owned();
        assert_eq!(out.status.code(), Some(1), "mutation {label} not caught");
        assert!(
            report.contains(label) && report.contains("FAIL"),
            "fail verdict must name {label}:\n{report}"
        );
        std::fs::remove_file(&path).ok();
    }

    c.finish(true, "scans exact; 10/10 corruptions caught");
}
