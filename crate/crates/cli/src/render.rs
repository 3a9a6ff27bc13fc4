//! Text, JSON and CSV output, and the JSON form of `K0` elements.

use acdual_core::{
    build_root_system, make_character, BasisKind, CharacterPoint, K0Element, Label, RootFamily,
    Subset,
};
use serde::{Deserialize, Serialize};

use crate::config::{CliError, CliResult, Format};

/// Left-aligned columns separated by two spaces, with a rule under the header.
pub fn table(headers: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = headers.iter().map(|h| h.chars().count()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let line = |cells: Vec<&str>| {
        let padded: Vec<String> = cells
            .iter()
            .zip(&widths)
            .map(|(c, &w)| format!("{c:<w$}"))
            .collect();
        padded.join("  ").trim_end().to_string()
    };
    let mut out = line(headers.to_vec());
    out.push('\n');
    let rule: Vec<String> = widths.iter().map(|&w| "-".repeat(w)).collect();
    out.push_str(&line(rule.iter().map(String::as_str).collect()));
    out.push('\n');
    for row in rows {
        out.push_str(&line(row.iter().map(String::as_str).collect()));
        out.push('\n');
    }
    out
}

pub fn csv(headers: &[&str], rows: &[Vec<String>]) -> String {
    let mut w = ::csv::Writer::from_writer(Vec::new());
    w.write_record(headers).expect("writing to memory");
    for row in rows {
        w.write_record(row).expect("writing to memory");
    }
    String::from_utf8(w.into_inner().expect("flushing memory")).expect("csv output is UTF-8")
}

pub fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable report");
    s.push('\n');
    s
}

/// Rows in the requested format; `json_value` supplies the JSON rendering.
pub fn tabular<T: Serialize>(
    format: Format,
    headers: &[&str],
    rows: &[Vec<String>],
    json_value: &T,
) -> String {
    match format {
        Format::Table => table(headers, rows),
        Format::Csv => csv(headers, rows),
        Format::Json => json(json_value),
    }
}

pub fn subset_list(s: Subset) -> Vec<usize> {
    s.to_vec()
}

pub fn word(w: &[usize]) -> String {
    if w.is_empty() {
        "e".into()
    } else {
        w.iter().map(|i| format!("s{i}")).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub kind: String,
    pub theta: Vec<u32>,
    #[serde(rename = "J")]
    pub j: Vec<usize>,
    pub coeff: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElementJson {
    #[serde(rename = "type")]
    pub type_string: String,
    pub context: Vec<usize>,
    pub modulus: u32,
    pub terms: Vec<TermJson>,
}

/// Coordinates of `x` in the `kind` basis, terms in canonical key order.
pub fn element_json(x: &K0Element, kind: BasisKind) -> ElementJson {
    ElementJson {
        type_string: x.family().to_string(),
        context: subset_list(x.context()),
        modulus: x.modulus(),
        terms: x
            .coordinates_in(kind)
            .into_iter()
            .map(|(key, coeff)| TermJson {
                kind: kind.name().into(),
                theta: key.label.theta.residues().to_vec(),
                j: subset_list(key.label.j),
                coeff,
            })
            .collect(),
    }
}

pub fn render_element(x: &K0Element, kind: BasisKind, format: Format) -> String {
    let doc = element_json(x, kind);
    let rows: Vec<Vec<String>> = x
        .coordinates_in(kind)
        .into_iter()
        .map(|(key, c)| {
            vec![
                kind.name().into(),
                key.label.theta.to_string(),
                key.label.j.to_string(),
                c.to_string(),
            ]
        })
        .collect();
    tabular(format, &["kind", "theta", "J", "coeff"], &rows, &doc)
}

fn parse_kind(s: &str) -> CliResult<BasisKind> {
    match s {
        "E" => Ok(BasisKind::E),
        "Delta" => Ok(BasisKind::Delta),
        "Nabla" => Ok(BasisKind::Nabla),
        _ => Err(CliError::Usage(format!("unknown basis kind {s:?}"))),
    }
}

/// Inverse of [`element_json`]; terms of different kinds are summed.
pub fn parse_element(text: &str) -> CliResult<K0Element> {
    let doc: ElementJson =
        serde_json::from_str(text).map_err(|e| CliError::Usage(format!("invalid JSON: {e}")))?;
    let family: RootFamily = doc.type_string.parse()?;
    let rs = build_root_system(family);
    if let Some(bad) = doc.context.iter().find(|&&i| i == 0 || i > family.rank()) {
        return Err(CliError::Usage(format!(
            "context index {bad} outside 1..={}",
            family.rank()
        )));
    }
    let context = Subset::from_indices(doc.context.iter().copied());
    let mut out = K0Element::zero(family, doc.modulus, context)?;
    for term in &doc.terms {
        let residues: Vec<i64> = term.theta.iter().map(|&r| r as i64).collect();
        let theta: CharacterPoint = make_character(&rs, doc.modulus as i64, &residues)?;
        if let Some(bad) = term.j.iter().find(|&&i| i == 0 || i > family.rank()) {
            return Err(CliError::Usage(format!(
                "J index {bad} outside 1..={}",
                family.rank()
            )));
        }
        let j = Subset::from_indices(term.j.iter().copied());
        let single = K0Element::from_coordinates(
            parse_kind(&term.kind)?,
            family,
            doc.modulus,
            context,
            [(Label::new(theta, j), term.coeff)],
        )?;
        out.add_scaled(1, &single)?;
    }
    Ok(out)
}
