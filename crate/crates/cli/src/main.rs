mod selftest;

use std::fs;
use std::io::{self, Read};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use polycomm::basis::{
    commutator_subgroup_is_free, coxeter_group, enumerate_generators, generator_words, per_length_counts, BasisError,
};
use polycomm::cube::{
    basis_certificate, build, fundamental_group_presentation, homology_splitting_check, MAX_CUBE_VERTICES,
    MAX_SPLITTING_VERTICES,
};
use polycomm::document::ComplexDocument;
use polycomm::{Chordality, HomologyGroup, SimplicialComplex};
use serde_json::{json, Map, Value};

#[derive(Parser)]
#[command(name = "polycomm", version, about = "Flag complexes, right-angled Coxeter groups and real moment-angle complexes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Input {
    /// Complex document; standard input when absent or "-".
    path: Option<PathBuf>,
    /// Structured output.
    #[arg(long)]
    json: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Whether the complex is flag, with a missing face otherwise.
    Flag(Input),
    /// Whether the 1-skeleton is chordal, with an elimination ordering or a chordless cycle.
    Chordal(Input),
    /// Nested-commutator generators of the commutator subgroup.
    Gens {
        #[command(flatten)]
        input: Input,
        /// Also print each generator as a normalized word.
        #[arg(long)]
        words: bool,
    },
    /// Whether the commutator subgroup is free (flag complexes only).
    Free(Input),
    /// Integral homology of the real moment-angle complex.
    Homology(Input),
    /// Euler characteristic of the real moment-angle complex.
    Euler(Input),
    /// Compare the homology with the sum over full subcomplexes.
    CheckSplitting(Input),
    /// Check that the generators are nontrivial kernel elements forming a basis of H1.
    Certify(Input),
    /// Size of the raw fundamental group presentation.
    Pi1(Input),
    /// Randomized identity and oracle checks of the word problem solver.
    Selftest {
        #[arg(long, default_value_t = 0x5eed_2024)]
        seed: u64,
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
        #[arg(long)]
        json: bool,
    },
}

struct Failure(String);

type Outcome = Result<(bool, Value, String), Failure>;

fn big(n: &BigInt) -> Value {
    n.to_i64().map_or_else(|| Value::String(n.to_string()), Value::from)
}

fn bigs(ns: &[BigInt]) -> Value {
    Value::Array(ns.iter().map(big).collect())
}

fn group_json(g: &HomologyGroup) -> Value {
    json!({ "betti": g.betti, "torsion": bigs(&g.torsion) })
}

fn read_document(input: &Input, max_vertices: usize) -> Result<(ComplexDocument, SimplicialComplex), Failure> {
    let text = match &input.path {
        Some(p) if p.as_os_str() != "-" => {
            fs::read_to_string(p).map_err(|e| Failure(format!("{}: {e}", p.display())))?
        }
        _ => {
            let mut s = String::new();
            io::stdin().read_to_string(&mut s).map_err(|e| Failure(format!("stdin: {e}")))?;
            s
        }
    };
    let doc = ComplexDocument::parse(&text).map_err(|e| Failure(e.to_string()))?;
    let k = doc.to_complex_bounded(max_vertices).map_err(|e| Failure(e.to_string()))?;
    Ok((ComplexDocument::from_complex(&k), k))
}

/// Output object starting with the normalized document.
fn report(doc: &ComplexDocument, fields: Value) -> Value {
    let mut out = Map::new();
    out.insert("m".into(), json!(doc.m));
    out.insert("maximal_faces".into(), json!(doc.maximal_faces));
    if let Value::Object(extra) = fields {
        out.extend(extra);
    }
    Value::Object(out)
}

fn vertex_list(vs: &[usize]) -> String {
    let parts: Vec<String> = vs.iter().map(usize::to_string).collect();
    parts.join(" ")
}

fn flag(input: &Input) -> Outcome {
    let (doc, k) = read_document(input, polycomm::MAX_VERTICES)?;
    let witness = k.flag_witness();
    let text = match witness {
        None => "flag".to_string(),
        Some(w) => format!("not flag: missing face {w}"),
    };
    let value = report(&doc, json!({ "verdict": witness.is_none(), "witness": witness.map(|w| w.to_vec()) }));
    Ok((witness.is_none(), value, text))
}

fn chordal(input: &Input) -> Outcome {
    let (doc, k) = read_document(input, polycomm::MAX_VERTICES)?;
    Ok(match k.one_skeleton().chordality() {
        Chordality::Chordal { ordering } => {
            let text = format!("chordal\nperfect elimination ordering: {}", vertex_list(&ordering));
            (true, report(&doc, json!({ "verdict": true, "ordering": ordering, "witness": null })), text)
        }
        Chordality::NotChordal { cycle } => {
            let text = format!("not chordal\nchordless cycle: {}", vertex_list(&cycle));
            (false, report(&doc, json!({ "verdict": false, "witness": cycle })), text)
        }
    })
}

fn gens(input: &Input, with_words: bool) -> Outcome {
    let (doc, k) = read_document(input, polycomm::MAX_VERTICES)?;
    let generators = enumerate_generators(&k);
    let per_length = per_length_counts(&generators);
    let mut text = format!("{} generators\n", generators.len());
    for (l, n) in &per_length {
        text += &format!("  length {l}: {n}\n");
    }
    let words = with_words.then(|| generator_words(&k));
    for (n, g) in generators.iter().enumerate() {
        text += &g.to_string();
        if let Some(ws) = &words {
            text += &format!("  =  {}", ws[n]);
        }
        text += "\n";
    }
    let mut fields = json!({
        "generators": generators.iter().map(|g| g.to_json()).collect::<Vec<_>>(),
        "count": generators.len(),
        "per_length": per_length.iter().map(|(l, n)| (l.to_string(), json!(n))).collect::<Map<_, _>>(),
    });
    if let Some(ws) = words {
        fields["words"] = Value::Array(ws.iter().map(|w| w.to_json()).collect());
    }
    Ok((true, report(&doc, fields), text.trim_end().to_string()))
}

fn free(input: &Input) -> Outcome {
    let (doc, k) = read_document(input, polycomm::MAX_VERTICES)?;
    match commutator_subgroup_is_free(&k) {
        Ok(verdict) => {
            let text = if verdict { "free" } else { "not free" };
            Ok((verdict, report(&doc, json!({ "verdict": verdict })), text.to_string()))
        }
        Err(BasisError::NotFlag { witness }) => {
            if input.json {
                let value = report(&doc, json!({ "error": "not flag", "witness": witness.to_vec() }));
                println!("{value}");
            }
            Err(Failure(format!("complex is not flag: missing face {witness}")))
        }
    }
}

fn cube_of(input: &Input) -> Result<(ComplexDocument, SimplicialComplex, polycomm::cube::CubeComplex), Failure> {
    let (doc, k) = read_document(input, MAX_CUBE_VERTICES)?;
    let r = build(&k).map_err(|e| Failure(e.to_string()))?;
    Ok((doc, k, r))
}

fn homology(input: &Input) -> Outcome {
    let (doc, _, r) = cube_of(input)?;
    let h = r.homology().map_err(|e| Failure(e.to_string()))?;
    let mut text = String::from("degree  group\n");
    for (d, g) in h.iter().enumerate() {
        text += &format!("{d:>6}  {g}\n");
    }
    let value = report(
        &doc,
        json!({
            "betti": h.iter().map(|g| g.betti).collect::<Vec<_>>(),
            "torsion": h.iter().map(|g| bigs(&g.torsion)).collect::<Vec<_>>(),
        }),
    );
    Ok((true, value, text.trim_end().to_string()))
}

fn euler(input: &Input) -> Outcome {
    let (doc, _, r) = cube_of(input)?;
    let chi = r.euler_characteristic();
    Ok((true, report(&doc, json!({ "euler": chi })), chi.to_string()))
}

fn check_splitting(input: &Input) -> Outcome {
    let (doc, k) = read_document(input, MAX_SPLITTING_VERTICES)?;
    let rep = homology_splitting_check(&k).map_err(|e| Failure(e.to_string()))?;
    let mut text = String::new();
    let mut degrees = Vec::new();
    for d in &rep.degrees {
        let mark = if d.cellular == d.summed { "ok" } else { "MISMATCH" };
        text += &format!("H{}: {} vs {}  {mark}\n", d.degree, d.cellular, d.summed);
        for (j, g) in &d.contributions {
            text += &format!("    J = {j}: {g}\n");
        }
        degrees.push(json!({
            "degree": d.degree,
            "cellular": group_json(&d.cellular),
            "summed": group_json(&d.summed),
            "contributions": d.contributions.iter().map(|(j, g)| {
                json!({ "subset": j.to_vec(), "betti": g.betti, "torsion": bigs(&g.torsion) })
            }).collect::<Vec<_>>(),
        }));
    }
    text += if rep.holds() { "splitting holds" } else { "splitting FAILS" };
    Ok((rep.holds(), report(&doc, json!({ "verdict": rep.holds(), "degrees": degrees })), text))
}

fn certify(input: &Input) -> Outcome {
    let (doc, k) = read_document(input, MAX_SPLITTING_VERTICES)?;
    let cert = basis_certificate(&k).map_err(|e| Failure(e.to_string()))?;
    let spec = coxeter_group(&k);
    let words = generator_words(&k);
    let fail = |e: polycomm::GroupError| Failure(e.to_string());
    let mut kernel = true;
    let mut nontrivial = true;
    for w in &words {
        kernel &= spec.abelianization(w).map_err(fail)?.iter().all(Zero::is_zero);
        nontrivial &= !spec.is_identity(w).map_err(fail)?;
        nontrivial &= !spec.geometric_representation(w).map_err(fail)?.is_identity();
    }
    let verdict = cert.holds() && kernel && nontrivial;
    let text = format!(
        "{} generators, H1 rank {}\ninvariant factors all one: {}\nkernel of abelianization: {kernel}\nnontrivial: {nontrivial}\n{}",
        cert.generator_count,
        cert.h1_rank,
        cert.holds(),
        if verdict { "certified" } else { "NOT certified" }
    );
    let value = report(
        &doc,
        json!({
            "verdict": verdict,
            "count": cert.generator_count,
            "h1_rank": cert.h1_rank,
            "invariant_factors": bigs(&cert.invariant_factors),
            "kernel": kernel,
            "nontrivial": nontrivial,
        }),
    );
    Ok((verdict, value, text))
}

fn pi1(input: &Input) -> Outcome {
    let (doc, _, r) = cube_of(input)?;
    let p = fundamental_group_presentation(&r).map_err(|e| Failure(e.to_string()))?;
    let ab = p.abelianization();
    let text = format!(
        "{} generators, {} relators\nabelianization: {ab}",
        p.generator_count(),
        p.relator_count()
    );
    let value = report(
        &doc,
        json!({
            "generator_count": p.generator_count(),
            "relator_count": p.relator_count(),
            "abelianized_rank": ab.betti,
            "torsion": bigs(&ab.torsion),
        }),
    );
    Ok((true, value, text))
}

fn selftest(seed: u64, samples: usize) -> Outcome {
    let rep = selftest::run(seed, samples);
    let tally = |t: &selftest::Tally| json!({ "samples": t.samples, "failures": t.failures });
    let line = |name: &str, t: &selftest::Tally| format!("{name}: {}/{} passed\n", t.samples - t.failures, t.samples);
    let text = format!(
        "seed {seed:#x}\n{}{}{}{}",
        line("hall identities", &rep.hall),
        line("swap identity", &rep.swap),
        line("matrix oracle agreement", &rep.oracle),
        if rep.passed() { "all passed" } else { "FAILURES" }
    );
    let value = json!({
        "verdict": rep.passed(),
        "seed": seed,
        "hall": tally(&rep.hall),
        "swap": tally(&rep.swap),
        "oracle": tally(&rep.oracle),
    });
    Ok((rep.passed(), value, text))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (outcome, as_json) = match &cli.command {
        Command::Flag(i) => (flag(i), i.json),
        Command::Chordal(i) => (chordal(i), i.json),
        Command::Gens { input, words } => (gens(input, *words), input.json),
        Command::Free(i) => (free(i), i.json),
        Command::Homology(i) => (homology(i), i.json),
        Command::Euler(i) => (euler(i), i.json),
        Command::CheckSplitting(i) => (check_splitting(i), i.json),
        Command::Certify(i) => (certify(i), i.json),
        Command::Pi1(i) => (pi1(i), i.json),
        Command::Selftest { seed, samples, json } => (selftest(*seed, *samples), *json),
    };
    match outcome {
        Ok((verdict, value, text)) => {
            if as_json {
                println!("{value}");
            } else {
                println!("{text}");
            }
            if verdict {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}
