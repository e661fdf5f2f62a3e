//! Acceptance suite: one verdict line per criterion, nonzero exit if any fails.

use std::collections::BTreeSet;
use std::fs;
use std::process::{Command, ExitCode};
use std::time::Instant;

use concept_cli::format::{parse_context, write_context, Format};
use concept_core::verify::{verify_equivalences, Report, VerifyConfig};
use concept_core::{BitSet, Classification, ConceptLattice, Relation};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

// Pointwise oracles, written independently of the bitset kernels.

fn compose(r: &Relation, s: &Relation) -> Relation {
    Relation::from_fn(r.rows(), s.cols(), |a, c| (0..r.cols()).any(|b| r.get(a, b) && s.get(b, c)))
}

fn subset(r: &Relation, s: &Relation) -> bool {
    (0..r.rows()).all(|i| (0..r.cols()).all(|j| !r.get(i, j) || s.get(i, j)))
}

fn left_oracle(r: &Relation, t: &Relation) -> Relation {
    Relation::from_fn(r.cols(), t.cols(), |b, c| (0..r.rows()).all(|a| !r.get(a, b) || t.get(a, c)))
}

fn right_oracle(t: &Relation, s: &Relation) -> Relation {
    Relation::from_fn(t.rows(), s.rows(), |a, b| (0..s.cols()).all(|c| !s.get(b, c) || t.get(a, c)))
}

fn from_code(rows: usize, cols: usize, code: u64) -> Relation {
    Relation::from_fn(rows, cols, |i, j| code >> (i * cols + j) & 1 == 1)
}

fn random_relation(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> Relation {
    let density = rng.gen_range(0.1..0.9);
    Relation::from_fn(rows, cols, |_, _| rng.gen_bool(density))
}

fn adjoint_at(r: &Relation, s: &Relation, t: &Relation) -> Result<(), String> {
    let lhs = subset(&compose(r, s), t);
    let left = r.left_residual(t).map_err(|e| e.to_string())?;
    let right = t.right_residual(s).map_err(|e| e.to_string())?;
    if left != left_oracle(r, t) || right != right_oracle(t, s) {
        return Err(format!("residual differs from its definition at r={r:?} s={s:?} t={t:?}"));
    }
    if lhs != subset(s, &left) || lhs != subset(r, &right) {
        return Err(format!("adjointness fails at r={r:?} s={s:?} t={t:?}"));
    }
    Ok(())
}

fn residuation_adjointness() -> Outcome {
    let mut exhaustive = 0;
    for (a, b, c) in (1..=2).flat_map(|a| (1..=2).flat_map(move |b| (1..=2).map(move |c| (a, b, c)))) {
        let mut family = 0;
        for rc in 0..1u64 << (a * b) {
            for sc in 0..1u64 << (b * c) {
                for tc in 0..1u64 << (a * c) {
                    adjoint_at(&from_code(a, b, rc), &from_code(b, c, sc), &from_code(a, c, tc))?;
                    family += 1;
                }
            }
        }
        if (a, b, c) == (2, 2, 2) && family != 4096 {
            return Err(format!("2x2x2 family has {family} triples"));
        }
        exhaustive += family;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..1000 {
        let (a, b, c) = (rng.gen_range(1..=6), rng.gen_range(1..=6), rng.gen_range(1..=6));
        let (r, s, t) = (random_relation(&mut rng, a, b), random_relation(&mut rng, b, c), random_relation(&mut rng, a, c));
        adjoint_at(&r, &s, &t)?;
    }
    Ok(format!("{exhaustive} exhaustive triples over 8 shape families, 1000 random triples"))
}

fn law(name: &str, mut case: impl FnMut(&mut ChaCha8Rng) -> Option<String>, seed: u64) -> Result<(), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for i in 0..1000 {
        if let Some(w) = case(&mut rng) {
            return Err(format!("{name} fails on input {i}: {w}"));
        }
    }
    Ok(())
}

fn dims<const N: usize>(rng: &mut ChaCha8Rng) -> [usize; N] {
    std::array::from_fn(|_| rng.gen_range(1..=6))
}

fn derived_laws() -> Outcome {
    let rel = random_relation;
    law(
        "left residuation preserves composition",
        |g| {
            let [a, b, c, d] = dims(g);
            let (r1, r2, t) = (rel(g, a, b), rel(g, b, c), rel(g, a, d));
            let whole = compose(&r1, &r2).left_residual(&t).unwrap();
            let parts = r2.left_residual(&r1.left_residual(&t).unwrap()).unwrap();
            (whole != parts).then(|| format!("r1={r1:?} r2={r2:?} t={t:?}"))
        },
        2,
    )?;
    law(
        "right residuation preserves composition",
        |g| {
            let [a, b, c, d] = dims(g);
            let (s1, s2, t) = (rel(g, a, b), rel(g, b, c), rel(g, d, c));
            let whole = t.right_residual(&compose(&s1, &s2)).unwrap();
            let parts = t.right_residual(&s2).unwrap().right_residual(&s1).unwrap();
            (whole != parts).then(|| format!("s1={s1:?} s2={s2:?} t={t:?}"))
        },
        3,
    )?;
    law(
        "residuation preserves identity",
        |g| {
            let [a, b] = dims(g);
            let t = rel(g, a, b);
            let left = Relation::identity(a).left_residual(&t).unwrap();
            let right = t.right_residual(&Relation::identity(b)).unwrap();
            (left != t || right != t).then(|| format!("t={t:?}"))
        },
        4,
    )?;
    law(
        "transpose dualizes residuation",
        |g| {
            let [a, b, c] = dims(g);
            let (r, t, s) = (rel(g, a, b), rel(g, a, c), rel(g, b, c));
            let left = r.left_residual(&t).unwrap().transpose() == t.transpose().right_residual(&r.transpose()).unwrap();
            let right = t.right_residual(&s).unwrap().transpose() == s.transpose().left_residual(&t.transpose()).unwrap();
            (!left || !right).then(|| format!("r={r:?} s={s:?} t={t:?}"))
        },
        5,
    )?;
    law(
        "unconstrained associative law",
        |g| {
            let [a, b, c, d] = dims(g);
            let (t, r, s) = (rel(g, a, b), rel(g, a, c), rel(g, d, b));
            let lhs = r.left_residual(&t).unwrap().right_residual(&s).unwrap();
            let rhs = r.left_residual(&t.right_residual(&s).unwrap()).unwrap();
            (lhs != rhs).then(|| format!("r={r:?} s={s:?} t={t:?}"))
        },
        6,
    )?;
    Ok("5 laws x 1000 random inputs, bit-exact".into())
}

fn mask(set: &BitSet) -> u32 {
    set.iter().fold(0, |m, i| m | 1 << i)
}

fn lattice_case(n: usize, m: usize, code: u64) -> Result<usize, String> {
    let rel = from_code(n, m, code);
    let k = Classification::unlabelled(rel.clone());
    let l = ConceptLattice::build(&k).map_err(|e| e.to_string())?;
    let row = |i: usize| (0..m).filter(|&j| rel.get(i, j)).fold(0u32, |x, j| x | 1 << j);
    let full_types = (1u32 << m) - 1;
    let mut oracle = BTreeSet::new();
    for sub in 0u32..1 << n {
        let intent = (0..n).filter(|i| sub >> i & 1 == 1).fold(full_types, |acc, i| acc & row(i));
        let extent = (0..n).filter(|&i| row(i) & intent == intent).fold(0u32, |x, i| x | 1 << i);
        oracle.insert((extent, intent));
    }
    let built: BTreeSet<(u32, u32)> = l.concepts().iter().map(|c| (mask(&c.extent), mask(&c.intent))).collect();
    let witness = || format!("{n}x{m} context #{code}");
    if built != oracle || built.len() != l.len() {
        return Err(format!("concepts differ from brute force on {}", witness()));
    }
    let lat = l.lattice();
    for x in 0..l.len() {
        for y in 0..l.len() {
            let inclusion = mask(&l.concept(x).extent) & !mask(&l.concept(y).extent) == 0;
            if lat.leq(x, y) != inclusion {
                return Err(format!("order is not extent inclusion on {}", witness()));
            }
        }
    }
    for x in 0..l.len() {
        let c = l.concept(x);
        if lat.join_of(c.extent.iter().map(|a| l.iota().apply(a))) != x {
            return Err(format!("join-density fails at concept {x} on {}", witness()));
        }
        if lat.meet_of(c.intent.iter().map(|t| l.tau().apply(t))) != x {
            return Err(format!("meet-density fails at concept {x} on {}", witness()));
        }
    }
    let decomposed = compose(&compose(&l.iota().to_relation(), lat.order()), &l.tau().to_relation().transpose());
    if decomposed != rel {
        return Err(format!("decomposition fails on {}", witness()));
    }
    Ok(l.len())
}

fn lattice_oracle() -> Outcome {
    let mut contexts = 0usize;
    let mut concepts = 0usize;
    for n in 0..=4 {
        for m in 0..=4 {
            for code in 0..1u64 << (n * m) {
                concepts += lattice_case(n, m, code)?;
                contexts += 1;
            }
        }
    }
    Ok(format!("{contexts} contexts up to 4x4 ({concepts} concepts), brute force, density and decomposition"))
}

fn named_scales() -> Outcome {
    for n in 1..=8 {
        let l = ConceptLattice::build(&Classification::chain(n)).map_err(|e| e.to_string())?;
        if l.len() != n {
            return Err(format!("{n}-chain has {} concepts", l.len()));
        }
        // Each concept is (down-set, up-set) of one element.
        for c in l.concepts() {
            let x = c.extent.iter().max().ok_or("chain concept with empty extent")?;
            if c.extent.to_vec() != (0..=x).collect::<Vec<_>>() || c.intent.to_vec() != (x..n).collect::<Vec<_>>() {
                return Err(format!("{n}-chain concept is not principal"));
            }
        }
    }
    for n in 1..=10 {
        let k = Classification::contranominal(n);
        let l = ConceptLattice::build(&k).map_err(|e| e.to_string())?;
        if l.len() != 1 << n {
            return Err(format!("contranominal-{n} has {} concepts", l.len()));
        }
        if n <= 4 {
            let code = (0..n * n).filter(|&p| p / n != p % n).fold(0u64, |c, p| c | 1 << p);
            if lattice_case(n, n, code)? != 1 << n {
                return Err(format!("brute force disagrees on contranominal-{n}"));
            }
        }
    }
    Ok("chains 1..=8 have n concepts, contranominal 1..=10 have 2^n".into())
}

fn checks_pass(report: &Report, names: &[&str]) -> Outcome {
    let summary = report.summary();
    let mut total = 0;
    for name in names {
        let s = summary.iter().find(|s| s.check == *name).ok_or(format!("check {name:?} did not run"))?;
        if s.failed > 0 {
            let w = report.failures().find(|e| e.check == *name).map(|e| format!("{}: {}", e.item, e.witness.as_deref().unwrap_or("")));
            return Err(format!("{name}: {} failures, first {}", s.failed, w.unwrap_or_default()));
        }
        if s.passed == 0 {
            return Err(format!("{name}: no coverage"));
        }
        total += s.passed;
    }
    Ok(format!("{total} checks over {} families", names.len()))
}

fn colimit_transport(report: &Report) -> Outcome {
    let ok = checks_pass(report, &["sum transport", "apposition transport"])?;
    let cfg = VerifyConfig { inject_bug: true, ..VerifyConfig::default() };
    let buggy = verify_equivalences(&cfg).map_err(|e| e.to_string())?;
    let caught = buggy
        .failures()
        .filter(|e| e.check.ends_with("transport"))
        .find(|e| e.witness.as_deref().is_some_and(|w| !w.is_empty()))
        .ok_or("bug injection went undetected by the transport check")?;
    Ok(format!("{ok}; injected bug caught on {} with witness", caught.item))
}

fn random_label(rng: &mut ChaCha8Rng, used: &mut BTreeSet<String>) -> String {
    const ALPHABET: &[char] = &['a', 'b', 'Z', '0', '7', ' ', ',', '"', '\'', ';', '{', '}', 'é', '∧', '_', '-'];
    loop {
        let len = rng.gen_range(1..=6);
        let s: String = (0..len).map(|_| ALPHABET[rng.gen_range(0..ALPHABET.len())]).collect();
        if used.insert(s.clone()) {
            return s;
        }
    }
}

fn cli_round_trips() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let bin = env!("CARGO_BIN_EXE_concept");
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let formats = [(Format::Cxt, "cxt"), (Format::Csv, "csv"), (Format::Json, "json")];
    let mut files = 0;
    for i in 0..150 {
        let (n, m) = (rng.gen_range(0..=7), rng.gen_range(0..=7));
        let mut used = BTreeSet::new();
        let instances: Vec<String> = (0..n).map(|_| random_label(&mut rng, &mut used)).collect();
        let types: Vec<String> = (0..m).map(|_| random_label(&mut rng, &mut used)).collect();
        let incidence = random_relation(&mut rng, n, m);
        let k = Classification::new(instances, types, incidence).map_err(|e| e.to_string())?;
        let (format, ext) = formats[i % 3];
        let path = dir.path().join(format!("ctx{i}.{ext}"));
        let path = path.to_str().unwrap();
        let text = write_context(&k, format);
        fs::write(path, &text).map_err(|e| e.to_string())?;
        let parsed = parse_context(&fs::read_to_string(path).unwrap(), path).map_err(|e| format!("{path}: {e}"))?;
        if parsed.classification != k || parsed.format != format {
            return Err(format!("{path} does not round-trip"));
        }
        if write_context(&parsed.classification, format) != text {
            return Err(format!("{path} reserializes differently"));
        }
        // Through the binary: dual twice returns the original.
        let once = Command::new(bin).args(["dual", path, "--format", ext]).output().map_err(|e| e.to_string())?;
        let dual_path = dir.path().join(format!("dual{i}.{ext}"));
        fs::write(&dual_path, &once.stdout).map_err(|e| e.to_string())?;
        let twice = Command::new(bin)
            .args(["dual", dual_path.to_str().unwrap(), "--format", ext])
            .output()
            .map_err(|e| e.to_string())?;
        if !once.status.success() || twice.stdout != text.as_bytes() {
            return Err(format!("{path}: dual(dual) through the CLI differs"));
        }
        files += 1;
    }
    let run = |json: bool| {
        let mut args = vec!["verify-equivalences", "--seed", "17"];
        if json {
            args.push("--json");
        }
        Command::new(bin).args(&args).output().map_err(|e| e.to_string())
    };
    for json in [false, true] {
        let (a, b) = (run(json)?, run(json)?);
        if !a.status.success() || a.stdout != b.stdout || a.stdout.is_empty() {
            return Err(format!("verify-equivalences (json={json}) is not byte-identical across runs"));
        }
    }
    Ok(format!("{files} files (50 per format), verify-equivalences text and JSON byte-identical"))
}

fn main() -> ExitCode {
    let started = Instant::now();
    let report = verify_equivalences(&VerifyConfig::default());
    let report = match report {
        Ok(r) => r,
        Err(e) => {
            println!("verification corpus failed to build: {e}");
            return ExitCode::FAILURE;
        }
    };
    let criteria: Vec<Criterion> = vec![
        ("residuation adjointness", Box::new(residuation_adjointness)),
        ("derived residuation laws", Box::new(derived_laws)),
        ("lattice oracle", Box::new(lattice_oracle)),
        ("named-scale concept counts", Box::new(named_scales)),
        (
            "classification / concept lattice equivalence",
            Box::new(|| {
                checks_pass(
                    &report,
                    &[
                        "C(L(A)) == A",
                        "L(C(L)) ≅ L witness",
                        "L(C) naturality",
                        "C(L(m)) == m",
                        "L preserves identities",
                        "L preserves composition",
                    ],
                )
            }),
        ),
        (
            "bond / complete adjoint equivalence",
            Box::new(|| {
                checks_pass(
                    &report,
                    &[
                        "A preserves identities",
                        "A preserves composition",
                        "B preserves identities",
                        "B preserves composition",
                        "A(B(p)) ≅ p",
                        "B(A(F)) naturality",
                        "A factors through L(F)",
                    ],
                )
            }),
        ),
        (
            "bonding pair / complete lattice equivalence",
            Box::new(|| {
                checks_pass(
                    &report,
                    &["ψ_F == φ_G", "A2(B2(h)) ≅ h", "B2(A2(p)) ≅ p", "embedding bonds inverse", "A2 preserves composition"],
                )
            }),
        ),
        ("colimit transport", Box::new(|| colimit_transport(&report))),
        ("CLI round trips and determinism", Box::new(cli_round_trips)),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let outcome = run();
        let secs = t.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {} {name}: PASS ({detail}) [{secs:.2}s]", i + 1),
            Err(w) => {
                failed += 1;
                println!("criterion {} {name}: FAIL ({w}) [{secs:.2}s]", i + 1)
            }
        }
    }
    println!("acceptance: {} of {} criteria passed in {:.1}s", criteria.len() - failed, criteria.len(), started.elapsed().as_secs_f64());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
