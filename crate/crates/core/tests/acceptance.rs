//! End-to-end acceptance run. Prints one PASS/FAIL line per criterion and
//! exits non-zero if any criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use dn_core::bi_group::{transitivity_report, vertex_genset};
use dn_core::coloring::{is_distinguishing, preserving_witness_with};
use dn_core::constructions::{claimed_dn, construct, partition_lemma_check};
use dn_core::solver::{distinguishing_number, SolveOptions};
use dn_core::verifier::{
    conjugacy_probes, verify_classification, verify_diag_conjugacy, verify_remark,
};
use dn_core::{BiElement, CaseId, Engine, Evidence, GroupCase, Partition, Perm, Vertex};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Exact distinguishing numbers must match with zero tolerance.
const VALUE_TOLERANCE: usize = 0;
/// Wall-clock limits per instance or per criterion, in seconds.
const LIMIT_TABLE_ROW: u64 = 60;
const LIMIT_TWISTED: u64 = 120;
const LIMIT_SPORADIC: u64 = 10;
const LIMIT_CERTIFICATE: u64 = 5;
const LIMIT_LEMMA_SWEEP: u64 = 5;
const LIMIT_CONJUGACY: u64 = 30;
const LIMIT_REMARK: u64 = 30;
const LIMIT_CLASSIFICATION: u64 = 60;
const LIMIT_ENGINES: u64 = 120;
const RANDOM_PARTITIONS_PER_CASE: usize = 200;
const SEED: u64 = 0x5EED_0001;

type Outcome = std::result::Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn case(c: CaseId, line: u8, n: usize) -> GroupCase {
    GroupCase::new(c, line, n).unwrap()
}

fn within(start: Instant, secs: u64, what: &str) -> std::result::Result<(), String> {
    let t = start.elapsed();
    if t > Duration::from_secs(secs) {
        Err(format!(
            "{what} took {:.1}s, limit {secs}s",
            t.as_secs_f64()
        ))
    } else {
        Ok(())
    }
}

fn exact(c: &GroupCase, limit: u64) -> std::result::Result<usize, String> {
    let start = Instant::now();
    let r = distinguishing_number(c, &SolveOptions::default());
    within(start, limit, &c.to_string())?;
    if r.evidence != Evidence::Exhaustive {
        return Err(format!("{c}: evidence {:?}", r.evidence));
    }
    if !is_distinguishing(c, &r.certificate) {
        return Err(format!("{c}: certificate does not distinguish"));
    }
    r.value().ok_or_else(|| format!("{c}: no exact value"))
}

fn expect_exact(c: &GroupCase, want: usize, limit: u64) -> std::result::Result<(), String> {
    let got = exact(c, limit)?;
    if got.abs_diff(want) > VALUE_TOLERANCE {
        return Err(format!("{c}: got {got}, want {want}"));
    }
    Ok(())
}

fn complete_bipartite_rows() -> Outcome {
    let mut count = 0;
    for n in 3..=5 {
        expect_exact(&case(CaseId::B, 1, n), n - 1, LIMIT_TABLE_ROW)?;
        expect_exact(&case(CaseId::C, 1, n), n, LIMIT_TABLE_ROW)?;
        expect_exact(&case(CaseId::C, 2, n), n, LIMIT_TABLE_ROW)?;
        expect_exact(&case(CaseId::A, 1, n), n + 1, LIMIT_TABLE_ROW)?;
        count += 4;
    }
    Ok(format!("{count} rows exact"))
}

fn crown_rows() -> Outcome {
    let d = [2, 3, 3, 3, 3];
    let e = [2, 2, 2, 3, 3];
    for (i, n) in (3..=7).enumerate() {
        expect_exact(&case(CaseId::D, 1, n), d[i], LIMIT_TABLE_ROW)?;
        for line in [1, 2] {
            expect_exact(&case(CaseId::E, line, n), e[i], LIMIT_TABLE_ROW)?;
        }
    }
    Ok("d = 2,3,3,3,3 and e = 2,2,2,3,3 for n = 3..7".into())
}

fn twisted_rows() -> Outcome {
    for (c, l) in [(CaseId::F, 1), (CaseId::G, 1), (CaseId::G, 2)] {
        expect_exact(&case(c, l, 6), 3, LIMIT_TWISTED)?;
    }
    Ok("f, g (both lines) at n = 6 give 3".into())
}

fn sporadic_rows() -> Outcome {
    for (c, l) in [(CaseId::H, 1), (CaseId::I, 1), (CaseId::I, 2)] {
        let gc = case(c, l, 4);
        expect_exact(&gc, 3, LIMIT_SPORADIC)?;
        let explicit = Partition::from_classes(
            4,
            &[
                vec![Vertex::v(1), Vertex::v(2), Vertex::u(1)],
                vec![Vertex::v(3), Vertex::u(2), Vertex::u(3)],
                vec![Vertex::v(4), Vertex::u(4)],
            ],
        )
        .unwrap();
        if !is_distinguishing(&gc, &explicit) {
            return Err(format!("{gc}: explicit partition is preserved"));
        }
    }
    Ok("h, i at n = 4 give 3; explicit partition distinguishes".into())
}

fn certificates_at_scale() -> Outcome {
    let mut count = 0;
    let mut slowest = Duration::ZERO;
    let mut cases: Vec<GroupCase> = (2..=30).flat_map(GroupCase::all_at).collect();
    cases.sort();
    for c in cases {
        let start = Instant::now();
        let p = construct(&c).map_err(|e| format!("{c}: {e}"))?;
        if p.num_colors() != claimed_dn(&c) {
            return Err(format!(
                "{c}: {} classes, want {}",
                p.num_colors(),
                claimed_dn(&c)
            ));
        }
        if preserving_witness_with(&c, &p, Engine::Backtrack)
            .map_err(|e| e.to_string())?
            .is_some()
        {
            return Err(format!("{c}: certificate is preserved"));
        }
        within(start, LIMIT_CERTIFICATE, &c.to_string())?;
        slowest = slowest.max(start.elapsed());
        count += 1;
    }
    Ok(format!(
        "{count} instances, slowest {:.2}s",
        slowest.as_secs_f64()
    ))
}

fn lemma_sweep() -> Outcome {
    let start = Instant::now();
    let mut count = 0;
    for n in 1..=100 {
        for q in 1..=n {
            if !partition_lemma_check(n, q) {
                return Err(format!("n={n} q={q}"));
            }
            count += 1;
        }
    }
    within(start, LIMIT_LEMMA_SWEEP, "sweep")?;
    Ok(format!("{count} (n, q) pairs"))
}

fn diagonal_conjugacy() -> Outcome {
    let start = Instant::now();
    let mut probes: Vec<(usize, Perm)> = conjugacy_probes().into_iter().map(|h| (6, h)).collect();
    probes.push((5, Perm::cycle(5, &[1, 2]).unwrap()));
    for (n, h) in &probes {
        let r = verify_diag_conjugacy(*n, h);
        if !r.pass {
            return Err(format!("n={n} h={h}: {}", r.computed));
        }
    }
    within(start, LIMIT_CONJUGACY, "conjugacy")?;
    Ok(format!("{} choices of h", probes.len()))
}

fn remark() -> Outcome {
    let start = Instant::now();
    for (c, n) in [
        (CaseId::E, 4),
        (CaseId::E, 5),
        (CaseId::G, 6),
        (CaseId::I, 4),
    ] {
        let r = verify_remark(&case(c, 2, n));
        if !r.pass {
            return Err(format!("{c} n={n}: {}", r.computed));
        }
    }
    within(start, LIMIT_REMARK, "remark")?;
    Ok("e (n=4,5), g (n=6), i (n=4)".into())
}

fn forward_classification() -> Outcome {
    let start = Instant::now();
    let mut count = 0;
    let mut excluded = Vec::new();
    for n in 2..=6 {
        for c in GroupCase::all_at(n) {
            let r = verify_classification(&c);
            if !r.pass {
                return Err(format!("{c}: {}", r.computed));
            }
            if !c.is_edge_transitive_pair() {
                excluded.push(c.to_string());
            }
            count += 1;
        }
    }
    within(start, LIMIT_CLASSIFICATION, "classification")?;
    Ok(format!(
        "{count} pairs; not edge-transitive as expected: {}",
        excluded.join(", ")
    ))
}

fn random_partition(rng: &mut ChaCha8Rng, n: usize) -> Partition {
    let k = rng.gen_range(1..=n + 1) as u8;
    let raw: Vec<u8> = (0..2 * n).map(|_| rng.gen_range(0..k)).collect();
    Partition::canonicalize(n, &raw).unwrap()
}

fn engine_equivalence() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut cases: Vec<GroupCase> = (2..=4).flat_map(GroupCase::all_at).collect();
    cases.extend([
        case(CaseId::F, 1, 6),
        case(CaseId::G, 1, 6),
        case(CaseId::G, 2, 6),
    ]);
    let mut preserved = 0;
    for c in &cases {
        for _ in 0..RANDOM_PARTITIONS_PER_CASE {
            let p = random_partition(&mut rng, c.n());
            let a = preserving_witness_with(c, &p, Engine::Enumerate).map_err(|e| e.to_string())?;
            let b = preserving_witness_with(c, &p, Engine::Backtrack).map_err(|e| e.to_string())?;
            if a.is_some() != b.is_some() {
                return Err(format!("{c} {}: engines disagree", p.rgs_string()));
            }
            preserved += a.is_some() as usize;
        }
    }
    within(start, LIMIT_ENGINES, "engines")?;
    Ok(format!(
        "{} cases x {RANDOM_PARTITIONS_PER_CASE}, {preserved} preserved",
        cases.len()
    ))
}

fn random_bi(rng: &mut ChaCha8Rng, n: usize) -> BiElement {
    let mut a: Vec<usize> = (1..=n).collect();
    let mut b = a.clone();
    a.shuffle(rng);
    b.shuffle(rng);
    BiElement::new(
        Perm::from_images(&a).unwrap(),
        Perm::from_images(&b).unwrap(),
        rng.gen(),
    )
    .unwrap()
}

fn property_suites() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for _ in 0..500 {
        let n = rng.gen_range(2..=7);
        let [x, y, z] = [(); 3].map(|_| random_bi(&mut rng, n));
        let (a, b, c) = (&x.g, &y.g, &z.gprime);
        if &(a * b) * c != a * &(b * c) || !(a * &a.inverse()).is_identity() {
            return Err(format!("perm axioms fail for {a} {b} {c}"));
        }
        if x.multiply(&y).multiply(&z) != x.multiply(&y.multiply(&z))
            || !x.multiply(&x.inverse()).is_identity()
        {
            return Err(format!("bi-element axioms fail for {x} {y} {z}"));
        }
        let xy = x.multiply(&y);
        for k in 0..2 * n {
            let v = Vertex::from_position(n, k);
            if y.act(x.act(v)) != xy.act(v) {
                return Err(format!("action incompatible for {x} {y}"));
            }
        }
        let p = random_partition(&mut rng, n);
        if Partition::canonicalize(n, p.colors()).unwrap() != p {
            return Err(format!("canonicalize not idempotent on {}", p.rgs_string()));
        }
    }
    let mut chain = Vec::new();
    for n in 3..=5 {
        let b = exact(&case(CaseId::B, 1, n), LIMIT_TABLE_ROW)?;
        let c = exact(&case(CaseId::C, 1, n), LIMIT_TABLE_ROW)?;
        let a = exact(&case(CaseId::A, 1, n), LIMIT_TABLE_ROW)?;
        if !(b <= c && c <= a) {
            return Err(format!("n={n}: D(b)={b} D(c)={c} D(a)={a}"));
        }
        chain.push(format!("{b}<={c}<={a}"));
    }
    let gens = case(CaseId::A, 1, 5).build().generators();
    if vertex_genset(5, &gens).order() != 28_800 {
        return Err("order of Sym(5) wr Sym(2)".into());
    }
    let report = transitivity_report(&case(CaseId::A, 1, 5).graph(), &gens);
    if !report.all_true() {
        return Err("transitivity of the full wreath product".into());
    }
    Ok(format!(
        "axioms, action, canonical form; D chain {}",
        chain.join(" ")
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        (
            "complete bipartite rows exact for n = 3..5",
            complete_bipartite_rows,
        ),
        ("crown rows exact for n = 3..7", crown_rows),
        ("twisted diagonal cases at n = 6", twisted_rows),
        ("Klein cases at n = 4", sporadic_rows),
        (
            "construction certificates up to n = 30",
            certificates_at_scale,
        ),
        ("block partition sweep up to n = 100", lemma_sweep),
        ("diagonal conjugacy", diagonal_conjugacy),
        ("second-line conjugation into Alt(n) wr Sym(2)", remark),
        ("forward classification for n <= 6", forward_classification),
        (
            "engine equivalence on random partitions",
            engine_equivalence,
        ),
        ("property suites and monotonicity", property_suites),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let out = run();
        let secs = start.elapsed().as_secs_f64();
        match out {
            Ok(detail) => println!("PASS {:>2} {name} ({detail}; {secs:.2}s)", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name} ({why}; {secs:.2}s)", i + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
