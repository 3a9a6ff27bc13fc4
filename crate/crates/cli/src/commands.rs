//! The reporting commands `rootsys`, `duality` and `mackey`.

use acdual_core::{
    basis_element, enumerate_characters, mackey_summands, restrict, BasisKind, CharacterPoint,
    ClosedForms, DiagramInvolution, Subset, WeylGroup,
};
use serde::Serialize;

use crate::config::{BasisChoice, CliResult, Format, RunConfig, SubsetSpec};
use crate::render::{self, element_json, subset_list, word, ElementJson};

/// Cycle notation of a permutation of `1..=n`, fixed points omitted; `id` if trivial.
pub fn cycle_notation(sigma: &DiagramInvolution) -> String {
    let images = sigma.images();
    let mut seen = vec![false; images.len()];
    let mut out = String::new();
    for start in 1..=images.len() {
        if seen[start - 1] || images[start - 1] == start {
            continue;
        }
        let mut cycle = vec![start];
        seen[start - 1] = true;
        let mut i = images[start - 1];
        while !seen[i - 1] {
            seen[i - 1] = true;
            cycle.push(i);
            i = images[i - 1];
        }
        let parts: Vec<String> = cycle.iter().map(|i| i.to_string()).collect();
        out.push_str(&format!("({})", parts.join(" ")));
    }
    if out.is_empty() {
        "id".into()
    } else {
        out
    }
}

#[derive(Serialize)]
struct RootsysJson {
    #[serde(rename = "type")]
    type_string: String,
    rank: usize,
    cartan: Vec<Vec<i64>>,
    positive_roots: usize,
    order: usize,
    longest_length: usize,
    sigma: Vec<usize>,
}

pub fn rootsys(cfg: &RunConfig) -> CliResult<String> {
    let g = cfg.group(cfg.family())?;
    let rs = g.root_system();
    let sigma = g.diagram_involution();
    let doc = RootsysJson {
        type_string: rs.family().to_string(),
        rank: rs.rank(),
        cartan: rs.cartan().to_vec(),
        positive_roots: rs.positive_count(),
        order: g.order(),
        longest_length: g.element(g.longest()).length(),
        sigma: sigma.images().to_vec(),
    };
    let cartan_rows: Vec<String> = doc
        .cartan
        .iter()
        .map(|row| row.iter().map(|c| format!("{c:>3}")).collect::<String>())
        .collect();
    let pairs = vec![
        ("type", doc.type_string.clone()),
        ("rank", doc.rank.to_string()),
        ("positive roots", doc.positive_roots.to_string()),
        ("|W|", doc.order.to_string()),
        ("length of w0", doc.longest_length.to_string()),
        ("sigma", cycle_notation(&sigma)),
    ];
    Ok(match cfg.format {
        Format::Json => render::json(&doc),
        Format::Csv => {
            let mut rows: Vec<Vec<String>> =
                pairs.into_iter().map(|(k, v)| vec![k.into(), v]).collect();
            rows.push(vec![
                "cartan".into(),
                cartan_rows
                    .iter()
                    .map(|r| r.trim())
                    .collect::<Vec<_>>()
                    .join("; "),
            ]);
            render::csv(&["key", "value"], &rows)
        }
        Format::Table => {
            let mut out = String::new();
            for (k, v) in pairs {
                out.push_str(&format!("{k:<15} {v}\n"));
            }
            out.push_str("Cartan matrix:\n");
            for row in cartan_rows {
                out.push_str(&format!(" {row}\n"));
            }
            out
        }
    })
}

/// Characters selected by `--theta`, or all of them.
fn selected_characters(
    cfg: &RunConfig,
    g: &WeylGroup,
    modulus: u32,
) -> CliResult<Vec<CharacterPoint>> {
    match cfg.theta {
        Some(_) => Ok(vec![cfg.character(g, modulus)?]),
        None => Ok(enumerate_characters(
            g.root_system(),
            modulus as i64,
            cfg.max_characters,
        )?),
    }
}

#[derive(Serialize)]
struct DualityRowJson {
    basis: &'static str,
    theta: Vec<u32>,
    #[serde(rename = "J")]
    j: Vec<usize>,
    image: ElementJson,
}

#[derive(Serialize)]
struct DualityJson {
    #[serde(rename = "type")]
    type_string: String,
    modulus: u32,
    rows: Vec<DualityRowJson>,
}

pub fn duality(cfg: &RunConfig) -> CliResult<String> {
    let g = cfg.group(cfg.family())?;
    let m = cfg.modulus();
    let full = g.index_set();
    let cf = ClosedForms::with_sigma(&g, cfg.sigma(&g)?)?;
    let chars = selected_characters(cfg, &g, m)?;
    let only_j = cfg
        .j
        .as_ref()
        .map(|s| s.resolve(g.rank(), "J"))
        .transpose()?;
    let kinds: &[(BasisKind, BasisKind)] = match cfg.basis {
        BasisChoice::E => &[(BasisKind::E, BasisKind::E)],
        BasisChoice::Delta => &[(BasisKind::Delta, BasisKind::Nabla)],
        BasisChoice::All => &[
            (BasisKind::E, BasisKind::E),
            (BasisKind::Delta, BasisKind::Nabla),
        ],
    };
    let mut rows = Vec::new();
    let mut json_rows = Vec::new();
    for &(source, target) in kinds {
        for theta in &chars {
            let subsets: Vec<Subset> = match only_j {
                Some(j) if cfg.theta.is_some() => vec![j],
                Some(j) => theta
                    .triviality_set()
                    .subsets()
                    .filter(|&s| s == j)
                    .collect(),
                None => theta.triviality_set().subsets().collect(),
            };
            for j in subsets {
                let (tw, d) = cf.dual_index(theta, j)?;
                rows.push(vec![
                    source.name().into(),
                    theta.to_string(),
                    j.to_string(),
                    target.name().into(),
                    tw.to_string(),
                    d.to_string(),
                ]);
                let image = basis_element(target, &tw, d, full)?;
                json_rows.push(DualityRowJson {
                    basis: source.name(),
                    theta: theta.residues().to_vec(),
                    j: subset_list(j),
                    image: element_json(&image, target),
                });
            }
        }
    }
    let doc = DualityJson {
        type_string: g.root_system().family().to_string(),
        modulus: m,
        rows: json_rows,
    };
    Ok(render::tabular(
        cfg.format,
        &[
            "basis",
            "theta",
            "J",
            "image basis",
            "image theta",
            "image J",
        ],
        &rows,
        &doc,
    ))
}

#[derive(Serialize)]
struct SummandJson {
    rep: String,
    twisted_theta: Vec<u32>,
    #[serde(rename = "L")]
    l: Vec<usize>,
}

#[derive(Serialize)]
struct MackeyJson {
    #[serde(rename = "type")]
    type_string: String,
    modulus: u32,
    theta: Vec<u32>,
    #[serde(rename = "J")]
    j: Vec<usize>,
    #[serde(rename = "K")]
    k: Vec<usize>,
    summands: Vec<SummandJson>,
    restriction: ElementJson,
}

pub fn mackey(cfg: &RunConfig) -> CliResult<String> {
    let g = cfg.group(cfg.family())?;
    let m = cfg.modulus();
    let theta = cfg.character(&g, m)?;
    let empty = SubsetSpec::Indices(Vec::new());
    let j = cfg.j.as_ref().unwrap_or(&empty).resolve(g.rank(), "J")?;
    let k = cfg.k.as_ref().unwrap_or(&empty).resolve(g.rank(), "K")?;
    let summands = mackey_summands(&g, &theta, k, j)?;
    let delta = basis_element(BasisKind::Delta, &theta, k, g.index_set())?;
    let restriction = restrict(&g, &delta, j)?;
    let rows: Vec<Vec<String>> = summands
        .iter()
        .map(|s| {
            vec![
                word(&g.reduced_word(s.rep)),
                s.twisted_theta.to_string(),
                s.l.to_string(),
            ]
        })
        .collect();
    let doc = MackeyJson {
        type_string: g.root_system().family().to_string(),
        modulus: m,
        theta: theta.residues().to_vec(),
        j: subset_list(j),
        k: subset_list(k),
        summands: summands
            .iter()
            .map(|s| SummandJson {
                rep: word(&g.reduced_word(s.rep)),
                twisted_theta: s.twisted_theta.residues().to_vec(),
                l: subset_list(s.l),
            })
            .collect(),
        restriction: element_json(&restriction, BasisKind::Delta),
    };
    let body = render::tabular(cfg.format, &["w", "theta^w", "L"], &rows, &doc);
    Ok(match cfg.format {
        Format::Table => format!(
            "R_{j} Delta({theta})_{k} in {} mod {m}: {} summands\n{body}",
            g.root_system().family(),
            rows.len()
        ),
        _ => body,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cycles() {
        let sigma = |v: Vec<usize>| DiagramInvolution::from_images(v).unwrap();
        assert_eq!(cycle_notation(&sigma(vec![1, 2, 3])), "id");
        assert_eq!(cycle_notation(&sigma(vec![2, 1])), "(1 2)");
        assert_eq!(cycle_notation(&sigma(vec![6, 2, 5, 4, 3, 1])), "(1 6)(3 5)");
    }
}
