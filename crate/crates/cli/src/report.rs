use clap::ValueEnum;
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde_json::{json, Value};

use toric_gkm::retraction::RetractionSequence;
use toric_gkm::{FiniteAbelianGroup, SimplePolytope};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Table,
}

/// A report document together with its tabular rendering.
pub struct Report {
    json: Value,
    header: Vec<String>,
    rows: Vec<Vec<String>>,
}

impl Report {
    pub fn new(json: Value, header: &[&str], rows: Vec<Vec<String>>) -> Self {
        Report {
            json,
            header: header.iter().map(|s| s.to_string()).collect(),
            rows,
        }
    }

    /// Newline-terminated output; JSON objects have sorted keys.
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.json).expect("report serializes");
                s.push('\n');
                s
            }
            Format::Table => table(&self.header, &self.rows),
        }
    }
}

fn table(header: &[String], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let line = |cells: &[String]| {
        let padded: Vec<String> = cells
            .iter()
            .zip(&widths)
            .map(|(c, &w)| format!("{c}{}", " ".repeat(w - c.chars().count())))
            .collect();
        format!("{}\n", padded.join("  ").trim_end())
    };
    let mut out = line(header);
    let rule: Vec<String> = widths.iter().map(|&w| "-".repeat(w)).collect();
    out.push_str(&line(&rule));
    for row in rows {
        out.push_str(&line(row));
    }
    out
}

/// Integers that fit in 64 bits as numbers, larger ones as decimal strings.
pub fn int_json(n: &BigInt) -> Value {
    match n.to_i64() {
        Some(i) => json!(i),
        None => json!(n.to_string()),
    }
}

pub fn group_json(g: &FiniteAbelianGroup) -> Value {
    json!({
        "invariant_factors": g.invariant_factors().iter().map(int_json).collect::<Vec<_>>(),
        "order": int_json(&g.order()),
    })
}

pub fn poly_json<R: HasTerms>(p: &R) -> Value {
    Value::Array(
        p.term_list()
            .into_iter()
            .map(|(e, c)| json!({ "exp": e, "coef": int_json(&c) }))
            .collect(),
    )
}

pub trait HasTerms {
    fn term_list(&self) -> Vec<(Vec<i64>, BigInt)>;
}

impl HasTerms for toric_gkm::gkm::LaurentPolynomial {
    fn term_list(&self) -> Vec<(Vec<i64>, BigInt)> {
        self.terms().map(|(e, c)| (e.clone(), c.clone())).collect()
    }
}

impl HasTerms for toric_gkm::gkm::GradedPolynomial {
    fn term_list(&self) -> Vec<(Vec<i64>, BigInt)> {
        self.terms().map(|(e, c)| (e.clone(), c.clone())).collect()
    }
}

pub fn sequence_json(p: &SimplePolytope, seq: &RetractionSequence, groups: Option<&[FiniteAbelianGroup]>) -> Value {
    let steps: Vec<Value> = seq
        .steps()
        .iter()
        .enumerate()
        .map(|(l, s)| {
            let mut step = json!({
                "step": l + 1,
                "face": p.face_name(s.face),
                "vertex": p.vertex_names()[s.vertex],
                "dim": p.face_dim(s.face),
            });
            if let Some(gs) = groups {
                step["local_group"] = group_json(&gs[l]);
            }
            step
        })
        .collect();
    json!(steps)
}
