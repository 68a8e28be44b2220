//! Canonical text form of a knowledge base.
//!
//! The canonical form is deterministic: fixed section order (tnorm, worlds,
//! sim, props, evidence, partitions, tables), named declarations sorted by
//! name, similarity entries restricted to those differing from the defaults
//! (diagonal 1, off-diagonal 0) with the upper triangle only, and numbers
//! printed with up to 9 fractional digits and trailing zeros trimmed.
//! `parse(serialize(kb))` reproduces `kb` exactly for any parsed input.

use std::fmt::Write;

use super::KnowledgeBase;

/// Formats a degree with up to 9 fractional digits, trailing zeros trimmed
/// (`0.600000000` renders as `0.6`, `1.0` as `1`).
pub fn format_degree(value: f64) -> String {
    let mut s = format!("{value:.9}");
    while s.ends_with('0') {
        s.pop();
    }
    if s.ends_with('.') {
        s.pop();
    }
    s
}

/// Serializes a knowledge base into its canonical text form.
pub fn serialize_kb(kb: &KnowledgeBase) -> String {
    let mut out = String::new();
    let universe = kb.universe();

    writeln!(out, "tnorm {}", kb.norm()).unwrap();

    match universe.atoms() {
        None => {
            writeln!(out, "worlds {}", universe.labels().join(" ")).unwrap();
        }
        Some(table) => {
            writeln!(out, "atoms {}", table.names().join(" ")).unwrap();
            for (w, label) in universe.labels().iter().enumerate() {
                let assigns: Vec<String> = table
                    .names()
                    .iter()
                    .zip(table.assignment(w))
                    .map(|(atom, &truth)| format!("{atom}: {truth}"))
                    .collect();
                writeln!(out, "world {label} {{ {} }}", assigns.join(", ")).unwrap();
            }
        }
    }

    let n = universe.size();
    let matrix = kb.similarity_matrix();
    let mut entries = Vec::new();
    for i in 0..n {
        for j in i..n {
            let value = matrix.get(i, j).get();
            let default = if i == j { 1.0 } else { 0.0 };
            if value != default {
                entries.push(format!(
                    "  {} {} {}",
                    universe.label(i),
                    universe.label(j),
                    format_degree(value)
                ));
            }
        }
    }
    if !entries.is_empty() {
        writeln!(out, "sim {{").unwrap();
        for entry in entries {
            writeln!(out, "{entry}").unwrap();
        }
        writeln!(out, "}}").unwrap();
    }

    for (name, prop) in kb.propositions() {
        let labels: Vec<&str> = prop.indices().map(|i| universe.label(i)).collect();
        if labels.is_empty() {
            writeln!(out, "prop {name} = {{ }}").unwrap();
        } else {
            writeln!(out, "prop {name} = {{ {} }}", labels.join(", ")).unwrap();
        }
    }

    let evidence: Vec<&str> = kb.evidence().indices().map(|i| universe.label(i)).collect();
    writeln!(out, "evidence = {{ {} }}", evidence.join(", ")).unwrap();

    for (name, blocks) in kb.partitions() {
        writeln!(out, "partition {name} = [ {} ]", blocks.join(", ")).unwrap();
    }

    for ((kind, name), table) in kb.tables() {
        writeln!(out, "{} {name} {{", kind.keyword()).unwrap();
        for (key, value) in table.entries() {
            match &key.antecedent {
                Some(antecedent) => writeln!(
                    out,
                    "  {} | {} {}",
                    key.consequent,
                    antecedent,
                    format_degree(value.get())
                )
                .unwrap(),
                None => {
                    writeln!(out, "  {} {}", key.consequent, format_degree(value.get())).unwrap()
                }
            }
        }
        writeln!(out, "}}").unwrap();
    }

    out
}
