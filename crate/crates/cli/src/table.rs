use std::fmt::Write as _;

use tsvf::{AmplitudeValue, Category, Labeling, Outcome, QueryRecord, ScenarioReport};

use crate::format::{annotated_complex, annotated_real, sig};

fn category(c: Category) -> &'static str {
    match c {
        Category::Presence => "presence",
        Category::Transition => "transition",
        Category::Predicate => "predicate",
    }
}

fn amplitude(a: &AmplitudeValue) -> String {
    let mut s = annotated_complex(a.value);
    if a.vanishing {
        s.push_str("  [vanishing]");
    }
    s
}

fn kets(names: &[String]) -> String {
    names.iter().map(|n| format!("|{n}⟩")).collect()
}

fn labeling(l: Labeling) -> &'static str {
    match l {
        Labeling::Box => "box",
        Labeling::Spin => "spin",
    }
}

/// Main result line plus indented detail lines for one record.
fn outcome_lines(record: &QueryRecord) -> (String, Vec<String>) {
    match &record.outcome {
        Outcome::Amplitude { amplitude: a } | Outcome::Transition { amplitude: a } => (amplitude(a), vec![]),
        Outcome::Probabilities { entries, normalization } => {
            let details = entries
                .iter()
                .map(|e| {
                    format!(
                        "P({}) = {}   amplitude {}",
                        e.label,
                        annotated_real(e.probability),
                        amplitude(&e.amplitude)
                    )
                })
                .collect();
            (format!("normalization {}", annotated_real(*normalization)), details)
        }
        Outcome::WeakValue { weak_value, numerator } => (
            amplitude(weak_value),
            vec![format!("numerator ⟨f|Π|in⟩ = {}", amplitude(numerator))],
        ),
        Outcome::WeakValueSum {
            termwise,
            summed_operator,
            terms,
        } => {
            let mut details: Vec<String> = terms
                .iter()
                .map(|t| format!("({})_w = {}", t.label, amplitude(&t.amplitude)))
                .collect();
            details.push(format!(
                "weak value of summed operator = {}",
                amplitude(summed_operator)
            ));
            (amplitude(termwise), details)
        }
        Outcome::DetailedVsGlobal {
            detailed,
            global,
            terms,
        } => {
            let details = terms
                .iter()
                .map(|t| format!("⟨f|{}|in⟩ = {}", t.label, amplitude(&t.amplitude)))
                .collect();
            (
                format!(
                    "detailed {}   global {}",
                    annotated_real(*detailed),
                    annotated_real(*global)
                ),
                details,
            )
        }
        Outcome::Predicate { verdict, measures } => {
            let details = measures.iter().map(|(k, v)| format!("{k} = {}", sig(*v, 6))).collect();
            (verdict.to_string(), details)
        }
        Outcome::Error { message } => (format!("ERROR: {message}"), vec![]),
    }
}

pub fn render_report(report: &ScenarioReport) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "scenario: {} ({} particles, {} labels, tolerance {})",
        report.scenario,
        report.particles,
        labeling(report.labeling),
        sig(report.tolerance, 6)
    );
    let _ = writeln!(out, "pre:  {}", kets(&report.pre));
    let _ = writeln!(out, "post: {}", kets(&report.post));
    for note in &report.notes {
        let _ = writeln!(out, "note: {note}");
    }
    let _ = writeln!(out);
    let rows: Vec<(String, &str, String, String, Vec<String>)> = report
        .records
        .iter()
        .map(|r| {
            let (main, mut details) = outcome_lines(r);
            if let Some(note) = &r.query.note {
                details.insert(0, format!("note: {note}"));
            }
            (
                r.index.to_string(),
                category(r.category),
                r.label.clone(),
                main,
                details,
            )
        })
        .collect();
    let width = rows.iter().map(|r| r.2.chars().count()).max().unwrap_or(0);
    for (index, cat, label, main, details) in rows {
        let pad = width - label.chars().count();
        let _ = writeln!(out, "{index:>3}  {cat:<10}  {label}{}  {main}", " ".repeat(pad));
        for d in details {
            let _ = writeln!(out, "{:>17}{d}", "");
        }
    }
    out
}
