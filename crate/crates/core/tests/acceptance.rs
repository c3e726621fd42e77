//! Acceptance criteria. Runs without the libtest harness so that every
//! criterion prints exactly one PASS/FAIL line, and the process fails if
//! any criterion does.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use morsecraft::cli::{replay, run};
use morsecraft::construct::{cone, fresh_labels, suspension};
use morsecraft::corpus::{self, sha256_hex};
use morsecraft::homology::{betti_mod2, homology_integral, is_homology_manifold};
use morsecraft::morse::{cone_gradient, dualize, morse_inequalities, morse_vector, verify_gradient, MorseVector};
use morsecraft::poset::OppositePoset;
use morsecraft::recognition::heegaard_upper_bound;
use morsecraft::record::RunRecord;
use morsecraft::search::{
    collapses_onto, decide_collapsibility_exhaustively, is_collapsible, optimal_morse_bruteforce, single_attempt,
    BruteForceConfig, SearchConfig, Strategy, Verdict,
};
use morsecraft::subdivision::derived_neighborhood;
use morsecraft::SimplicialComplex;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn load(name: &str) -> SimplicialComplex {
    corpus::load(name).unwrap_or_else(|e| panic!("{name}: {e}"))
}

fn morse_inequalities_hold() -> Outcome {
    let names = corpus::list();
    let complexes: Vec<_> = names.iter().map(|n| load(n)).collect();
    let mut checked = 0;
    for seed in 0..1000u64 {
        let i = seed as usize % complexes.len();
        let c = &complexes[i];
        let run = single_attempt(c, Strategy::Uniform, seed);
        ensure(verify_gradient(c, &run.gradient).unwrap().is_valid(), || format!("invalid gradient on {}", names[i]))?;
        let r = morse_inequalities(c, &run.gradient).unwrap();
        ensure(r.holds(), || format!("{}: seed {seed} vector {} violates {:?}", names[i], r.vector, r.violations))?;
        checked += 1;
    }
    Ok(format!("{checked} gradients over {} corpus entries, 0 violations", names.len()))
}

fn duality_reverses() -> Outcome {
    let closed = [
        ("boundary-simplex-3", load("boundary-simplex-3")),
        ("boundary-simplex-4", load("boundary-simplex-4")),
        ("boundary-simplex-5", load("boundary-simplex-5")),
        ("rp2-6", load("rp2-6")),
        ("suspension(cycle-3)", suspension(&load("cycle-3")).unwrap()),
    ];
    let mut ok = 0;
    for seed in 0..200u64 {
        let (name, c) = &closed[seed as usize % closed.len()];
        let run = single_attempt(c, Strategy::Uniform, 10_000 + seed);
        let dual = dualize(c, &run.gradient).unwrap();
        let v = morse_vector(&OppositePoset::new(c), &dual).unwrap();
        ensure(v == run.vector.reversed(), || format!("{name}: {} dualized to {v}", run.vector))?;
        ok += 1;
    }
    Ok(format!("{ok}/200 reversals"))
}

fn sphere_optimum() -> Outcome {
    let s3 = load("boundary-simplex-3");
    let opt = optimal_morse_bruteforce(&s3, &BruteForceConfig::default()).unwrap();
    ensure(opt.vector == MorseVector(vec![1, 0, 1]), || format!("brute force gave {}", opt.vector))?;
    let hits = |c: &SimplicialComplex, target: MorseVector| {
        (0..100u64).filter(|&s| single_attempt(c, Strategy::Uniform, s).vector == target).count()
    };
    let h3 = hits(&s3, MorseVector::sphere(2));
    let h5 = hits(&load("boundary-simplex-5"), MorseVector::sphere(4));
    ensure(h3 >= 95, || format!("∂Δ³ optimum in {h3}/100 runs"))?;
    ensure(h5 >= 90, || format!("∂Δ⁵ optimum in {h5}/100 runs"))?;
    Ok(format!("brute force (1,0,1); heuristic {h3}/100 on ∂Δ³, {h5}/100 on ∂Δ⁵"))
}

fn dunce_hat() -> Outcome {
    let hat = load("dunce-hat-8");
    let opt = optimal_morse_bruteforce(&hat, &BruteForceConfig::default()).unwrap();
    ensure(opt.vector == MorseVector(vec![1, 1, 1]), || format!("brute force gave {}", opt.vector))?;
    ensure(morse_vector(&hat, &opt.gradient).unwrap() == opt.vector, || "witness mismatch".into())?;
    let cfg = SearchConfig::new(0, 200);
    ensure(is_collapsible(&hat, &cfg).unwrap() == Verdict::Unknown, || "a collapse was reported".into())?;
    let exact = decide_collapsibility_exhaustively(&hat, &BruteForceConfig::default()).unwrap();
    ensure(exact == Verdict::CertifiedNot, || format!("exhaustive verdict {exact:?}"))?;
    Ok(format!("optimum (1,1,1) in {} states; 200/200 attempts Unknown; certified not collapsible", opt.states))
}

fn cones_collapse() -> Outcome {
    let names = corpus::list();
    for name in &names {
        let x = load(name);
        let apex = fresh_labels(&x, 1).remove(0);
        let k = cone(&x, apex.clone()).unwrap();
        let v = cone_gradient(&k, &apex).unwrap();
        ensure(verify_gradient(&k, &v).unwrap().is_valid(), || format!("cone over {name}: invalid gradient"))?;
        let mut expected = vec![0; k.dim().unwrap() + 1];
        expected[0] = 1;
        let got = morse_vector(&k, &v).unwrap();
        ensure(got == MorseVector(expected), || format!("cone over {name}: {got}"))?;
    }
    Ok(format!("{}/{} cones give (1,0,…,0)", names.len(), names.len()))
}

fn whitehead_neighborhoods() -> Outcome {
    let m2 = load("simplex-2");
    let m3 = load("boundary-simplex-3");
    let vertex = SimplicialComplex::from_int_facets(&[&[1]]).unwrap();
    let edge = SimplicialComplex::from_int_facets(&[&[1, 2]]).unwrap();
    let mut notes = Vec::new();
    for (mname, m) in [("Δ²", &m2), ("∂Δ³", &m3)] {
        for (dname, d) in [("vertex", &vertex), ("edge", &edge)] {
            let n = derived_neighborhood(d, m, 2).unwrap();
            let v = collapses_onto(&n.neighborhood, &n.core, &SearchConfig::new(0, 50)).unwrap();
            let Verdict::Certified(cert) = v else {
                return Err(format!("N²({dname}, {mname}) did not collapse in 50 attempts"));
            };
            ensure(cert.trace.replays_to(&n.neighborhood, &n.core), || format!("{dname} in {mname}: bad trace"))?;
            ensure(cert.trace.critical_count() == 0, || "critical removal in a collapse".into())?;
            notes.push(format!("{dname}⊂{mname} at attempt {}", cert.attempt.map_or("cone".into(), |a| a.to_string())));
        }
    }
    Ok(notes.join(", "))
}

fn heegaard() -> Outcome {
    let s3 = load("boundary-simplex-4");
    let c = heegaard_upper_bound(&s3, &SearchConfig::new(0, 100)).unwrap();
    ensure(c.genus == Some(0), || format!("∂Δ⁴ genus {:?}", c.genus))?;
    ensure(c.verify(&s3).unwrap(), || "∂Δ⁴ certificate fails verification".into())?;
    let t3 = load("torus3-27");
    ensure(betti_mod2(&t3) == vec![1, 3, 3, 1], || "unexpected torus homology".into())?;
    let c = heegaard_upper_bound(&t3, &SearchConfig::new(0, 10_000)).unwrap();
    ensure(c.genus == Some(3), || format!("torus genus {:?} after {} attempts", c.genus, c.attempts))?;
    ensure(c.verify(&t3).unwrap(), || "torus certificate fails verification".into())?;
    Ok(format!("∂Δ⁴ g = 0; 3-torus g = 3 after {} attempts", c.attempts))
}

fn double_suspension() -> Outcome {
    let h = load("poincare-16");
    ensure(h.labels().len() == 16 && h.facets().len() == 90, || "unexpected Poincaré input".into())?;
    let s2 = suspension(&suspension(&h).unwrap()).unwrap();
    ensure(s2.labels().len() == 20, || format!("{} vertices", s2.labels().len()))?;
    ensure(s2.facets().len() == 360, || format!("{} facets", s2.facets().len()))?;
    let m = is_homology_manifold(&s2).unwrap();
    ensure(m.is_homology_manifold, || format!("link of {:?} fails", m.witness))?;
    let hom = homology_integral(&s2);
    ensure(hom.is_sphere_of_dim(5), || format!("homology {hom:?}"))?;
    let mut min_c1 = usize::MAX;
    for seed in 0..500u64 {
        let v = single_attempt(&h, Strategy::Uniform, seed).vector;
        ensure(v.get(1) >= 2, || format!("seed {seed} gave {v} on the Poincaré sphere"))?;
        min_c1 = min_c1.min(v.get(1));
    }
    Ok(format!("Σ²H: 20 vertices, 360 facets, homology manifold with H(S⁵); min c₁ on H over 500 runs = {min_c1}"))
}

/// SHA-256 of the compact result payloads, frozen from a reference run.
const GOLDEN: &[(&str, &str)] = &[
    (
        "morse random corpus:boundary-simplex-4 --attempts 100 --seed 7",
        "323ef81d7104dccf95679823f26b35209d549f40b5c5bfc5056734eda39a55ba",
    ),
    (
        "heegaard corpus:torus3-27 --attempts 300 --seed 3",
        "f48b8e09c9a4cf37c99b9fa92b9b8b2d34da1517d8cd9cedc61cc008873001fa",
    ),
    (
        "morse random corpus:dunce-hat-8 --attempts 64 --seed 11 --strategy lex-min",
        "e28fcfa76779eb17e289a3c39bf66cadb71747bead07476b4760c3ff5547d111",
    ),
];

fn determinism() -> Outcome {
    let dir = tempfile::tempdir().unwrap();
    for (i, (cmd, golden)) in GOLDEN.iter().enumerate() {
        let log = dir.path().join(format!("run{i}.jsonl"));
        let mut payloads = Vec::new();
        for extra in [&[][..], &["--sequential"][..], &[][..]] {
            let mut args: Vec<String> = cmd.split_whitespace().map(String::from).collect();
            args.extend(extra.iter().map(|s| s.to_string()));
            args.extend(["--log".to_string(), log.display().to_string()]);
            let (mut out, mut err) = (Vec::new(), Vec::new());
            let code = run(args, &mut std::io::empty(), &mut out, &mut err);
            ensure(code == 0, || format!("{cmd}: exit {code}: {}", String::from_utf8_lossy(&err)))?;
        }
        let records = RunRecord::read_log(&log).unwrap();
        for r in &records {
            payloads.push(r.payload_bytes());
            let again = replay(r, &mut std::io::empty()).unwrap();
            ensure(serde_json::to_vec(&again).unwrap() == r.payload_bytes(), || format!("{cmd}: replay differs"))?;
        }
        ensure(payloads.windows(2).all(|w| w[0] == w[1]), || format!("{cmd}: payloads differ between runs"))?;
        let digest = sha256_hex(&payloads[0]);
        ensure(digest == *golden, || format!("{cmd}: payload digest {digest}, golden {golden}"))?;
    }
    Ok(format!(
        "{} commands: repeated, sequential and replayed payloads identical and match golden digests",
        GOLDEN.len()
    ))
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("morse inequalities", morse_inequalities_hold),
        ("duality reversal", duality_reverses),
        ("sphere optimum", sphere_optimum),
        ("dunce hat", dunce_hat),
        ("cone collapsibility", cones_collapse),
        ("whitehead neighborhoods", whitehead_neighborhoods),
        ("heegaard genus", heegaard),
        ("double suspension", double_suspension),
        ("determinism", determinism),
    ];
    let filter: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        if !filter.is_empty() && !filter.iter().any(|p| name.contains(p.as_str())) {
            continue;
        }
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let secs = Duration::as_secs_f64(&start.elapsed());
        match result {
            Ok(detail) => println!("criterion {} ({name}): PASS [{secs:.1}s] {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {} ({name}): FAIL [{secs:.1}s] {detail}", i + 1);
            }
        }
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
