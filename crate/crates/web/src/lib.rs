//! Browser bindings. Each export takes a complex document as JSON text and
//! returns a JSON report; errors come back as strings.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use polycomm::basis::{coxeter_group, enumerate_generators, generator_words, per_length_counts};
use polycomm::cube::{build, homology_splitting_check, MAX_CUBE_VERTICES, MAX_SPLITTING_VERTICES};
use polycomm::document::ComplexDocument;
use polycomm::{SimplicialComplex, Word};
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

/// Largest complex the page will enumerate generators for; the list has
/// about `m·2^m` entries.
pub const MAX_DEMO_VERTICES: usize = 12;

fn complex(doc: &str, max: usize) -> Result<(ComplexDocument, SimplicialComplex), String> {
    let doc = ComplexDocument::parse(doc).map_err(|e| e.to_string())?;
    let k = doc.to_complex_bounded(max).map_err(|e| e.to_string())?;
    Ok((ComplexDocument::from_complex(&k), k))
}

fn integers(ns: &[BigInt]) -> Value {
    Value::Array(ns.iter().map(|n| n.to_i64().map_or_else(|| json!(n.to_string()), Value::from)).collect())
}

pub fn generators_report(doc: &str) -> Result<String, String> {
    let (doc, k) = complex(doc, MAX_DEMO_VERTICES)?;
    let gens = enumerate_generators(&k);
    let words = generator_words(&k);
    let list: Vec<Value> = gens
        .iter()
        .zip(&words)
        .map(|(g, w)| json!({ "generator": g.to_json(), "text": g.to_string(), "word": w.to_string() }))
        .collect();
    let per_length: serde_json::Map<String, Value> =
        per_length_counts(&gens).into_iter().map(|(l, n)| (l.to_string(), json!(n))).collect();
    Ok(json!({
        "m": doc.m,
        "maximal_faces": doc.maximal_faces,
        "count": gens.len(),
        "per_length": per_length,
        "generators": list,
        "flag": k.is_flag(),
        "chordal": k.one_skeleton().is_chordal(),
    })
    .to_string())
}

pub fn homology_report(doc: &str) -> Result<String, String> {
    let (doc, k) = complex(doc, MAX_CUBE_VERTICES)?;
    let r = build(&k).map_err(|e| e.to_string())?;
    let h = r.homology().map_err(|e| e.to_string())?;
    let splitting = if doc.m <= MAX_SPLITTING_VERTICES {
        Some(homology_splitting_check(&k).map_err(|e| e.to_string())?.holds())
    } else {
        None
    };
    Ok(json!({
        "m": doc.m,
        "maximal_faces": doc.maximal_faces,
        "cells": r.cell_counts(),
        "betti": h.iter().map(|g| g.betti).collect::<Vec<_>>(),
        "torsion": h.iter().map(|g| integers(&g.torsion)).collect::<Vec<_>>(),
        "groups": h.iter().map(|g| g.to_string()).collect::<Vec<_>>(),
        "euler": r.euler_characteristic(),
        "splitting": splitting,
    })
    .to_string())
}

/// Reads `g1 g3^-1 2 ...`: each token is a vertex, optionally prefixed
/// with `g` and followed by `^exponent`.
pub fn parse_word(text: &str) -> Result<Word, String> {
    let mut pairs = Vec::new();
    for token in text.split(|c: char| c.is_whitespace() || c == ',' || c == '*' || c == '.').filter(|t| !t.is_empty()) {
        let body = token.strip_prefix('g').unwrap_or(token);
        let (v, e) = body.split_once('^').unwrap_or((body, "1"));
        let v: usize = v.parse().map_err(|_| format!("bad generator {token:?}"))?;
        let e: i64 = e.parse().map_err(|_| format!("bad exponent in {token:?}"))?;
        pairs.push((v, e));
    }
    Ok(Word::from_pairs(&pairs))
}

/// Normal form of `word` in the right-angled Coxeter group of the complex.
pub fn normal_form_report(doc: &str, word: &str) -> Result<String, String> {
    let (doc, k) = complex(doc, polycomm::MAX_VERTICES)?;
    let spec = coxeter_group(&k);
    let w = parse_word(word)?;
    let nf = spec.normal_form(&w).map_err(|e| e.to_string())?;
    let ab = spec.abelianization(&w).map_err(|e| e.to_string())?;
    Ok(json!({
        "m": doc.m,
        "maximal_faces": doc.maximal_faces,
        "input": w.to_string(),
        "normal_form": nf.to_string(),
        "letters": nf.to_json(),
        "length": nf.len(),
        "identity": nf.is_empty(),
        "abelianization": integers(&ab),
    })
    .to_string())
}

#[wasm_bindgen]
pub fn generators(doc: &str) -> Result<String, JsValue> {
    generators_report(doc).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn homology(doc: &str) -> Result<String, JsValue> {
    homology_report(doc).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn normal_form(doc: &str, word: &str) -> Result<String, JsValue> {
    normal_form_report(doc, word).map_err(|e| JsValue::from_str(&e))
}
