//! Human-readable and JSON renderings of asymptotic results.

use num_traits::Signed;
use serde::Serialize;
use serde_json::{json, Value};

use crate::asymptotics::{
    format_significant, AsymptoticExpansion, ExpansionTerm, MinimalPoint, MinimalPointJson,
    SurdConstant,
};
use crate::stepset::StepSet;

pub const DEFAULT_DIGITS: usize = 12;

/// `1`, `3/2`, `2`.
fn half_power(twice: u32) -> String {
    if twice.is_multiple_of(2) {
        (twice / 2).to_string()
    } else {
        format!("{twice}/2")
    }
}

/// Coefficient of one term, with the parity factor written out.
pub fn term_coefficient(t: &ExpansionTerm) -> String {
    match (t.even.is_zero(), t.odd.is_zero()) {
        (true, true) => "0".into(),
        (false, true) => t.even.to_string(),
        (true, false) => format!("(-1)^n·{}", t.odd),
        (false, false) => {
            let (op, odd) = signed_parts(&t.odd);
            format!("({} {op} (-1)^n·{})", t.even, odd)
        }
    }
}

/// `("+", s)` or `("-", −s)`, so the magnitude is printed after the sign.
fn signed_parts(s: &SurdConstant) -> (&'static str, SurdConstant) {
    if s.coefficient().is_negative() {
        ("-", s.neg())
    } else {
        ("+", s.clone())
    }
}

/// `4/π · n^{-1} · 4^n`.
pub fn term_text(exp: &AsymptoticExpansion, t: &ExpansionTerm) -> String {
    format!(
        "{} · n^{{-{}}} · {}^n",
        term_coefficient(t),
        half_power(exp.dim as u32 + t.l),
        exp.base
    )
}

/// One line per nonzero term, with decimal values of the coefficients.
pub fn render_text(exp: &AsymptoticExpansion, digits: usize) -> String {
    let mut out = String::new();
    let name = match exp.kind {
        crate::diagonal::SeriesKind::Walks => "s_n",
        crate::diagonal::SeriesKind::Excursions => "e_n",
    };
    out.push_str(&format!("{name} ~ sum of the terms below\n"));
    for t in exp.terms.iter().filter(|t| !t.is_zero()) {
        let dec = match (t.even.is_zero(), t.odd.is_zero()) {
            (_, true) => t.even.decimal(digits),
            (true, false) => format!("(-1)^n·{}", t.odd.decimal(digits)),
            (false, false) => {
                let (op, odd) = signed_parts(&t.odd);
                format!("{} {op} (-1)^n·{}", t.even.decimal(digits), odd.decimal(digits))
            }
        };
        out.push_str(&format!("  l={}: {}    [{}]\n", t.l, term_text(exp, t), dec));
    }
    out
}

#[derive(Serialize)]
struct TermJson<'a> {
    l: u32,
    even: &'a SurdConstant,
    odd: &'a SurdConstant,
    decimal: Value,
}

fn terms_json(exp: &AsymptoticExpansion, digits: usize) -> Value {
    let terms: Vec<TermJson> = exp
        .terms
        .iter()
        .map(|t| TermJson {
            l: t.l,
            even: &t.even,
            odd: &t.odd,
            decimal: json!({
                "even": format_significant(t.even.to_f64(), digits),
                "odd": format_significant(t.odd.to_f64(), digits),
            }),
        })
        .collect();
    serde_json::to_value(terms).expect("serializable")
}

/// `{model, |S|, forward_counts, minimal_points, walk_terms,
/// excursion_terms}`; absent expansions are `null`.
pub fn json_report(
    steps: &StepSet,
    points: &[MinimalPoint],
    walks: Option<&AsymptoticExpansion>,
    excursions: Option<&AsymptoticExpansion>,
    digits: usize,
) -> Value {
    let pts: Vec<MinimalPointJson> = points.iter().map(MinimalPointJson::from).collect();
    json!({
        "model": steps.to_spec_string(),
        "|S|": steps.len(),
        "forward_counts": steps.forward_counts(),
        "minimal_points": pts,
        "walk_terms": walks.map(|e| terms_json(e, digits)),
        "excursion_terms": excursions.map(|e| terms_json(e, digits)),
    })
}
