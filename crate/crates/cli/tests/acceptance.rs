//! Acceptance suite. Runs every criterion in sequence, prints one PASS or
//! FAIL line each with its runtime, and exits nonzero if any failed or ran
//! over its time budget.

use std::collections::BTreeSet;
use std::io::Write;
use std::process::{Command, Stdio};
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use polycomm::basis::{
    coxeter_group, enumerate_generators, generator_count, generator_words, per_length_counts,
};
use polycomm::cube::{basis_certificate, build, homology_splitting_check, word_to_loop, H1Coordinates};
use polycomm::group::random_word;
use polycomm::{
    smith_normal_form, CommutatorExpr, Graph, GroupSpec, HomologyGroup, IntegerMatrix, Order, SimplicialComplex,
    VertexSet,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SEED: u64 = 0xacce_97ed;

type Verdict = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// All complexes on `{1..m}` containing every vertex, by deciding each
/// subset of size at least 2 in order of size.
fn all_complexes(m: usize) -> Vec<SimplicialComplex> {
    let mut candidates: Vec<u32> = (0u32..1 << m).filter(|s| s.count_ones() >= 2).collect();
    candidates.sort_by_key(|&s| (s.count_ones(), s));
    let mut chosen = vec![false; 1 << m];
    chosen[0] = true;
    for v in 0..m {
        chosen[1 << v] = true;
    }
    fn rec(idx: usize, chosen: &mut Vec<bool>, cands: &[u32], m: usize, out: &mut Vec<SimplicialComplex>) {
        if idx == cands.len() {
            let faces: Vec<VertexSet> =
                (0..chosen.len()).filter(|&s| chosen[s]).map(|s| VertexSet::from_mask(s as u32)).collect();
            out.push(SimplicialComplex::from_faces(m, &faces).unwrap());
            return;
        }
        let s = cands[idx];
        rec(idx + 1, chosen, cands, m, out);
        if (0..m).filter(|b| s >> b & 1 == 1).all(|b| chosen[(s & !(1 << b)) as usize]) {
            chosen[s as usize] = true;
            rec(idx + 1, chosen, cands, m, out);
            chosen[s as usize] = false;
        }
    }
    let mut out = Vec::new();
    rec(0, &mut chosen, &candidates, m, &mut out);
    out
}

fn random_complex<R: Rng>(rng: &mut R, m: usize) -> SimplicialComplex {
    let faces: Vec<Vec<usize>> = (0..rng.gen_range(1..=m + 3))
        .map(|_| {
            let size = rng.gen_range(2..=m.min(5));
            let mut f: Vec<usize> = (1..=m).collect();
            for i in (1..f.len()).rev() {
                f.swap(i, rng.gen_range(0..=i));
            }
            f.truncate(size);
            f
        })
        .collect();
    SimplicialComplex::from_maximal_faces(m, &faces).unwrap()
}

fn random_graph<R: Rng>(rng: &mut R, m: usize, p: f64) -> Graph {
    let mut g = Graph::empty(m).unwrap();
    for a in 1..=m {
        for b in a + 1..=m {
            if rng.gen_bool(p) {
                g.add_edge(a, b).unwrap();
            }
        }
    }
    g
}

fn genus(m: usize) -> usize {
    (m - 4) * (1 << (m - 3)) + 1
}

fn example_one() -> SimplicialComplex {
    SimplicialComplex::from_maximal_faces(4, &[vec![1, 2], vec![2, 3], vec![4]]).unwrap()
}

fn gens_via_cli() -> Verdict {
    let mut child = Command::new(env!("CARGO_BIN_EXE_polycomm"))
        .args(["gens", "--json"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .map_err(|e| e.to_string())?;
    child
        .stdin
        .take()
        .unwrap()
        .write_all(br#"{"m": 4, "maximal_faces": [[1, 2], [2, 3], [4]]}"#)
        .map_err(|e| e.to_string())?;
    let out = child.wait_with_output().map_err(|e| e.to_string())?;
    ensure!(out.status.success(), "gens exited with {:?}", out.status.code());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).map_err(|e| e.to_string())?;
    let got: BTreeSet<String> =
        v["generators"].as_array().ok_or("no generators field")?.iter().map(|g| g.to_string()).collect();
    let want: BTreeSet<String> = [
        "[3,1]",
        "[4,1]",
        "[4,2]",
        "[4,3]",
        "[2,[4,1]]",
        "[3,[4,1]]",
        "[1,[4,3]]",
        "[3,[4,2]]",
        "[2,[3,[4,1]]]",
    ]
    .into_iter()
    .map(String::from)
    .collect();
    ensure!(got == want, "got {got:?}");
    ensure!(v["count"] == 9, "count {}", v["count"]);
    Ok("9 generators, equal as a set".into())
}

fn free_product_counts() -> Verdict {
    for m in 3..=8 {
        let k = SimplicialComplex::discrete(m).unwrap();
        let gens = enumerate_generators(&k);
        let total = (m - 2) * (1 << (m - 1)) + 1;
        ensure!(gens.len() == total, "m={m}: {} generators, expected {total}", gens.len());
        ensure!(generator_count(&k) == total, "m={m}: component count disagrees");
        let per = per_length_counts(&gens);
        for l in 2..=m {
            let want = (l - 1) * binomial(m, l);
            let got = per.get(&l).copied().unwrap_or(0);
            ensure!(got == want, "m={m} length {l}: {got}, expected {want}");
        }
        ensure!(per.keys().all(|l| (2..=m).contains(l)), "m={m}: unexpected lengths");
    }
    Ok("m = 3..8".into())
}

fn splitting(pool: &mut Vec<SimplicialComplex>) -> Verdict {
    let mut exhaustive = 0;
    for m in 1..=5 {
        for k in all_complexes(m) {
            let rep = homology_splitting_check(&k).map_err(|e| e.to_string())?;
            ensure!(rep.holds(), "fails for {k:?}");
            pool.push(k);
            exhaustive += 1;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 3);
    let mut random = 0;
    for m in [6, 7] {
        for _ in 0..120 {
            let k = random_complex(&mut rng, m);
            let rep = homology_splitting_check(&k).map_err(|e| e.to_string())?;
            ensure!(rep.holds(), "fails for {k:?}");
            pool.push(k);
            random += 1;
        }
    }
    Ok(format!("{exhaustive} exhaustive (m <= 5), {random} random (m = 6, 7)"))
}

fn surfaces(pool: &mut Vec<SimplicialComplex>) -> Verdict {
    let mut notes = Vec::new();
    for m in 4..=6 {
        let k = SimplicialComplex::cycle(m).unwrap();
        let r = build(&k).map_err(|e| e.to_string())?;
        let h = r.homology().map_err(|e| e.to_string())?;
        let g = genus(m);
        let want = vec![HomologyGroup::free(1), HomologyGroup::free(2 * g), HomologyGroup::free(1)];
        ensure!(h == want, "m={m}: {h:?}");
        ensure!(r.euler_characteristic() == 2 - 2 * g as i64, "m={m}: chi {}", r.euler_characteristic());
        notes.push(format!("m={m} genus {g}"));
        pool.push(k);
    }
    Ok(notes.join(", "))
}

fn wedge_signature(pool: &mut Vec<SimplicialComplex>) -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 5);
    let (mut chordal, mut other) = (0, 0);
    let mut attempts = 0;
    while chordal < 120 || other < 60 {
        attempts += 1;
        ensure!(attempts < 100_000, "could not sample enough complexes");
        let m = rng.gen_range(3..=7);
        let p = rng.gen_range(0.25..0.75);
        let k = SimplicialComplex::clique_complex(&random_graph(&mut rng, m, p));
        let is_chordal = k.one_skeleton().is_chordal();
        if (is_chordal && chordal >= 120) || (!is_chordal && other >= 60) {
            continue;
        }
        let r = build(&k).map_err(|e| e.to_string())?;
        let h = r.homology().map_err(|e| e.to_string())?;
        let betti = |d: usize| h.get(d).map_or(0, |g| g.betti);
        let chi = r.euler_characteristic();
        if is_chordal {
            ensure!(h.iter().skip(2).all(HomologyGroup::is_trivial), "{k:?}: higher homology");
            ensure!(h.iter().all(|g| g.torsion.is_empty()), "{k:?}: torsion");
            let n = generator_count(&k);
            ensure!(betti(1) == n && 1 - chi == n as i64, "{k:?}: b1 {} count {n} chi {chi}", betti(1));
            chordal += 1;
        } else {
            ensure!(betti(2) > 0 || betti(1) as i64 != 1 - chi, "{k:?}: looks like a wedge of circles");
            other += 1;
        }
        pool.push(k);
    }
    Ok(format!("{chordal} chordal, {other} non-chordal"))
}

fn kernel_and_basis(pool: &[SimplicialComplex]) -> Verdict {
    let mut words = 0;
    for k in pool {
        let spec = coxeter_group(k);
        for w in generator_words(k) {
            ensure!(spec.abelianization(&w).unwrap().iter().all(Zero::is_zero), "{k:?}: {w} not in kernel");
            ensure!(!spec.is_identity(&w).unwrap(), "{k:?}: {w} trivial");
            ensure!(!spec.geometric_representation(&w).unwrap().is_identity(), "{k:?}: {w} trivial matrix");
            words += 1;
        }
        let cert = basis_certificate(k).map_err(|e| e.to_string())?;
        ensure!(cert.holds(), "{k:?}: {cert:?}");
        ensure!(cert.generator_count == enumerate_generators(k).len(), "{k:?}: count");
    }
    Ok(format!("{} complexes, {words} generator words", pool.len()))
}

fn random_spec<R: Rng>(rng: &mut R, family: usize) -> GroupSpec {
    let m = rng.gen_range(2..=6);
    let orders = (0..m)
        .map(|_| match family {
            0 => Order::Finite(2),
            1 => Order::Infinite,
            _ => match rng.gen_range(0..4u32) {
                0 => Order::Infinite,
                k => Order::Finite(k + 1),
            },
        })
        .collect();
    GroupSpec::new(random_graph(rng, m, 0.4), orders).unwrap()
}

fn identities() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 7);
    let triples = 10_500;
    for n in 0..triples {
        let spec = random_spec(&mut rng, n % 3);
        let [a, b, c] = [0; 3].map(|_| {
            let len = rng.gen_range(0..=4);
            random_word(&mut rng, &spec, len)
        });
        ensure!(spec.verify_hall(&a, &b, &c).unwrap(), "hall fails: {a} | {b} | {c}");
        let (p, q) = (rng.gen_range(1..=spec.rank()), rng.gen_range(1..=spec.rank()));
        ensure!(spec.verify_swap(p, q, &a).unwrap(), "swap fails: p={p} q={q} x={a}");
    }
    let words = 10_500;
    let mut trivial = 0;
    for _ in 0..words {
        let spec = random_spec(&mut rng, 0);
        let len = rng.gen_range(0..=12);
        let w = random_word(&mut rng, &spec, len);
        let id = spec.is_identity(&w).unwrap();
        ensure!(id == spec.geometric_representation(&w).unwrap().is_identity(), "{w}: oracles disagree");
        trivial += usize::from(id);
    }
    Ok(format!("{triples} triples, {words} words ({trivial} trivial), seed {SEED:#x}"))
}

fn torus() -> Verdict {
    let k = SimplicialComplex::cycle(4).unwrap();
    let spec = coxeter_group(&k);
    let g = CommutatorExpr::generator;
    let a = spec.evaluate(&CommutatorExpr::commutator(g(3), g(1)).unwrap()).unwrap();
    let b = spec.evaluate(&CommutatorExpr::commutator(g(4), g(2)).unwrap()).unwrap();
    ensure!(spec.commutator(&a, &b).unwrap().is_empty(), "((g3,g1),(g4,g2)) is not trivial");
    let r = build(&k).map_err(|e| e.to_string())?;
    let coords = H1Coordinates::new(&r).map_err(|e| e.to_string())?;
    ensure!(coords.rank() == 2, "H1 rank {}", coords.rank());
    let mut entries = Vec::new();
    for w in [&a, &b] {
        entries.extend(coords.loop_class(&word_to_loop(&r, w).map_err(|e| e.to_string())?));
    }
    let classes = IntegerMatrix::from_entries(2, 2, entries).unwrap();
    let det = &classes[(0, 0)] * &classes[(1, 1)] - &classes[(0, 1)] * &classes[(1, 0)];
    ensure!(det.clone() * &det == BigInt::one(), "determinant {det}");
    ensure!(smith_normal_form(&classes) == vec![BigInt::one(), BigInt::one()], "not a basis");
    Ok(format!("classes {:?}, determinant {det}", classes.entries()))
}

fn main() {
    println!("acceptance seed {SEED:#x}");
    let mut pool: Vec<SimplicialComplex> = vec![example_one()];
    pool.extend((3..=8).map(|m| SimplicialComplex::discrete(m).unwrap()));
    let mut failed = 0;
    let mut record = |n: usize, name: &str, budget: Duration, f: &mut dyn FnMut() -> Verdict| {
        let start = Instant::now();
        let verdict = f();
        let elapsed = start.elapsed();
        let (ok, detail) = match verdict {
            Ok(d) if elapsed <= budget => (true, d),
            Ok(d) => (false, format!("{d}; over budget of {budget:?}")),
            Err(e) => (false, e),
        };
        failed += usize::from(!ok);
        println!("{} criterion {n} {name} [{elapsed:.2?}]: {detail}", if ok { "PASS" } else { "FAIL" });
    };
    record(1, "example generators", Duration::from_secs(1), &mut gens_via_cli);
    record(2, "free product counts", Duration::from_secs(5), &mut free_product_counts);
    record(3, "homology splitting", Duration::from_secs(600), &mut || splitting(&mut pool));
    record(4, "cycle surfaces", Duration::from_secs(60), &mut || surfaces(&mut pool));
    record(5, "chordal wedge signature", Duration::from_secs(300), &mut || wedge_signature(&mut pool));
    record(6, "kernel and basis", Duration::from_secs(300), &mut || kernel_and_basis(&pool));
    record(7, "identity suite", Duration::from_secs(120), &mut identities);
    record(8, "torus relation", Duration::from_secs(1), &mut torus);
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
