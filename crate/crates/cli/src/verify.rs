//! Verification suites. Each suite walks every configuration of the run in a fixed order and
//! reports the first counterexample it meets.

use std::collections::BTreeSet;
use std::sync::Arc;

use acdual_core::{
    basis_element, coset_contribution, duality_by_definition, enumerate_characters, BasisKind,
    CharacterPoint, ClosedForms, DiagramInvolution, K0Element, Subset, Transition,
    TransitionMatrix, WeylGroup,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::config::{CliResult, Format, RunConfig, Suite};
use crate::render::{self, word};

/// One (type, modulus) pair with everything the suites need precomputed.
struct Case {
    group: Arc<WeylGroup>,
    modulus: u32,
    characters: Vec<CharacterPoint>,
    sigma: DiagramInvolution,
}

impl Case {
    fn tag(&self) -> String {
        format!("{} mod {}", self.group.root_system().family(), self.modulus)
    }

    fn labels(&self) -> Vec<(CharacterPoint, Subset)> {
        self.characters
            .iter()
            .flat_map(|t| t.triviality_set().subsets().map(move |j| (t.clone(), j)))
            .collect()
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub suite: &'static str,
    pub configurations: usize,
    pub checks: usize,
    pub passed: bool,
    pub counterexample: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub passed: bool,
    pub suites: Vec<SuiteReport>,
}

type Check = Result<usize, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn core<T>(r: acdual_core::Result<T>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

/// Runs `check` on every item, possibly in parallel, and keeps the first failure in item order.
fn run_all<T: Sync>(items: &[T], check: impl Fn(&T) -> Check + Sync + Send) -> Check {
    let results: Vec<Check> = items.par_iter().map(check).collect();
    let mut total = 0;
    for r in results {
        total += r?;
    }
    Ok(total)
}

fn coxeter(case: &Case) -> Check {
    let g = &case.group;
    let tag = case.tag();
    let family = g.root_system().family();
    let mut checks = 0;
    ensure(g.order() as u64 == family.expected_group_order(), || {
        format!(
            "{tag}: |W| = {}, expected {}",
            g.order(),
            family.expected_group_order()
        )
    })?;
    let top = g.element(g.longest()).length();
    for w in 0..g.order() {
        let lw = g.element(g.multiply(g.longest(), w)).length();
        ensure(lw + g.element(w).length() == top, || {
            format!("{tag}: length of w0·{} is {lw}", word(&g.reduced_word(w)))
        })?;
    }
    checks += 1 + g.order();
    let subsets: Vec<Subset> = g.index_set().subsets().collect();
    checks += run_all(&subsets, |&k| {
        let special = g.multiply(g.longest(), g.longest_element(k));
        let mut n = 0;
        for w in g.min_coset_reps(k) {
            let name = word(&g.reduced_word(w));
            let image = g.simple_image(w, k);
            let ascents = g.left_ascents(w);
            ensure(image.is_subset_of(ascents), || {
                format!("{tag}: K={k} w={name}: w(K) = {image} ⊄ H(w) = {ascents}")
            })?;
            ensure((image == ascents) == (w == special), || {
                format!("{tag}: K={k} w={name}: w(K) = H(w) iff w = w0 w_K fails")
            })?;
            for j in g.index_set().subsets() {
                let in_d = g.min_double_coset_reps(j, k).contains(&w);
                ensure(in_d == j.is_subset_of(ascents), || {
                    format!("{tag}: K={k} w={name} J={j}: w ∈ D_JK is {in_d}, J ⊆ H(w) is not")
                })?;
            }
            n += 2 + (1 << g.rank());
            if image.is_proper_subset_of(ascents) {
                for theta in case
                    .characters
                    .iter()
                    .filter(|t| k.is_subset_of(t.triviality_set()))
                {
                    let sum = core(coset_contribution(g, theta, k, w))?;
                    ensure(sum.is_zero(), || {
                        format!("{tag}: theta={theta} K={k} w={name}: coset sum is {sum}, not 0")
                    })?;
                    n += 1;
                }
            }
        }
        Ok(n)
    })?;
    Ok(checks)
}

fn product_is_identity(x: &TransitionMatrix, y: &TransitionMatrix) -> Result<bool, String> {
    let p = core(x.product(y))?;
    let n = p.nrows();
    Ok(p.ncols() == n && (0..n).all(|i| (0..n).all(|j| p[(i, j)] == i64::from(i == j))))
}

fn matrices(case: &Case) -> Check {
    let tag = case.tag();
    let grounds: BTreeSet<Subset> = case.characters.iter().map(|t| t.triviality_set()).collect();
    let mut checks = 0;
    for ground in grounds {
        let a = TransitionMatrix::new(Transition::A, ground);
        let b = TransitionMatrix::new(Transition::B, ground);
        let c = TransitionMatrix::new(Transition::C, ground);
        let d = TransitionMatrix::new(Transition::D, ground);
        ensure(product_is_identity(&a, &b)?, || {
            format!("{tag}: A·B ≠ I on {ground}")
        })?;
        ensure(product_is_identity(&c, &d)?, || {
            format!("{tag}: C·D ≠ I on {ground}")
        })?;
        checks += 2;
    }
    let full = case.group.index_set();
    let labels = case.labels();
    checks += run_all(&labels, |(theta, j)| {
        for kind in [BasisKind::E, BasisKind::Delta, BasisKind::Nabla] {
            let x = core(basis_element(kind, theta, *j, full))?;
            let coords = x.coordinates_in(kind);
            let single = coords.len() == 1
                && coords
                    .iter()
                    .all(|(key, &v)| v == 1 && key.label.j == *j && &key.label.theta == theta);
            ensure(single, || {
                format!("{tag}: {kind}({theta})_{j} has coordinates {coords:?} in its own basis")
            })?;
        }
        Ok(3)
    })?;
    Ok(checks)
}

fn characters(case: &Case) -> Check {
    let g = &case.group;
    let tag = case.tag();
    run_all(&case.characters, |theta| {
        ensure(core(theta.act(g, g.identity()))? == *theta, || {
            format!("{tag}: theta={theta}: identity acts nontrivially")
        })?;
        for w in 0..g.order() {
            let tw = core(theta.act(g, w))?;
            ensure(core(tw.act(g, g.inverse(w)))? == *theta, || {
                format!(
                    "{tag}: theta={theta} w={}: inverse does not undo",
                    word(&g.reduced_word(w))
                )
            })?;
        }
        let tw0 = core(theta.act(g, g.longest()))?;
        let lhs = tw0.triviality_set();
        let rhs = case.sigma.apply(theta.triviality_set());
        ensure(lhs == rhs, || {
            format!("{tag}: theta={theta}: I(theta^w0) = {lhs} but sigma(I(theta)) = {rhs}")
        })?;
        Ok(2 + g.order())
    })
}

fn mackey(case: &Case) -> Check {
    let g = &case.group;
    let rs = g.root_system();
    let tag = case.tag();
    let pairs: Vec<(Subset, Subset)> = g
        .index_set()
        .subsets()
        .flat_map(|j| g.index_set().subsets().map(move |k| (j, k)))
        .collect();
    run_all(&pairs, |&(j, k)| {
        let mut n = 0;
        let mut total = 0;
        for &w in g.min_double_coset_reps(j, k) {
            let name = word(&g.reduced_word(w));
            let l = core(g.twisted_intersection(w, j, k))?;
            ensure(
                rs.parabolic_positive_roots(l) == g.twisted_root_intersection(w, j, k),
                || {
                    format!(
                        "{tag}: J={j} K={k} w={name}: positive roots of W_L differ from J ∩ w(K)"
                    )
                },
            )?;
            total += g.levi(j).order() * g.levi(k).order() / g.levi(l).order();
            for theta in case
                .characters
                .iter()
                .filter(|t| k.is_subset_of(t.triviality_set()))
            {
                let tw = core(theta.act(g, w))?;
                ensure(l.is_subset_of(j.intersection(tw.triviality_set())), || {
                    format!("{tag}: theta={theta} J={j} K={k} w={name}: L={l} ⊄ J ∩ I({tw})")
                })?;
                n += 1;
            }
            n += 1;
        }
        ensure(total == g.order(), || {
            format!(
                "{tag}: J={j} K={k}: double coset sizes sum to {total}, not |W| = {}",
                g.order()
            )
        })?;
        Ok(n + 1)
    })
}

fn closed_forms(case: &Case) -> Check {
    let g = &case.group;
    let tag = case.tag();
    let full = g.index_set();
    let cf = core(ClosedForms::with_sigma(g, case.sigma.clone()))?;
    let labels = case.labels();
    run_all(&labels, |(theta, j)| {
        let x = core(basis_element(BasisKind::E, theta, *j, full))?;
        let by_def = core(duality_by_definition(g, &x))?;
        let closed = cf
            .duality(&x)
            .map_err(|e| format!("{tag}: theta={theta} J={j}: {e}"))?;
        ensure(by_def == closed, || {
            format!(
                "{tag}: theta={theta} J={j}: definition gives {by_def}, closed form gives {closed}"
            )
        })?;
        let delta = core(basis_element(BasisKind::Delta, theta, *j, full))?;
        let delta_def = core(duality_by_definition(g, &delta))?;
        let delta_closed = cf
            .duality_of_delta(theta, *j)
            .map_err(|e| format!("{tag}: theta={theta} K={j}: {e}"))?;
        let (tw, d) = core(cf.dual_index(theta, *j))?;
        let nabla = core(basis_element(BasisKind::Nabla, &tw, d, full))?;
        ensure(delta_def == delta_closed && delta_closed == nabla, || {
            format!(
                "{tag}: theta={theta} K={j}: D(Delta) is {delta_def} by definition, \
                 {delta_closed} by the alternating sum, {nabla} as Nabla"
            )
        })?;
        Ok(3)
    })
}

/// Seed for one configuration, independent of which other configurations run.
fn case_seed(seed: u64, case: &Case) -> u64 {
    let family = case.group.root_system().family();
    let letter = family.to_string().as_bytes()[0] as u64;
    seed ^ (letter << 48) ^ ((family.rank() as u64) << 40) ^ case.modulus as u64
}

fn random_element(
    case: &Case,
    labels: &[(CharacterPoint, Subset)],
    rng: &mut ChaCha8Rng,
) -> K0Element {
    let (t0, _) = &labels[0];
    let full = case.group.index_set();
    let mut x = K0Element::zero(t0.family(), t0.modulus(), full).expect("valid context");
    let kinds = [BasisKind::E, BasisKind::Delta, BasisKind::Nabla];
    for _ in 0..rng.gen_range(1..=5) {
        let (theta, j) = &labels[rng.gen_range(0..labels.len())];
        let kind = kinds[rng.gen_range(0..kinds.len())];
        let b = basis_element(kind, theta, *j, full).expect("label from I(theta)");
        x.add_scaled(rng.gen_range(-5..=5), &b)
            .expect("same context");
    }
    x
}

fn involution(case: &Case, sample: usize, seed: u64) -> Check {
    let g = &case.group;
    let tag = case.tag();
    let labels = case.labels();
    let mut rng = ChaCha8Rng::seed_from_u64(case_seed(seed, case));
    let elements: Vec<K0Element> = (0..sample)
        .map(|_| random_element(case, &labels, &mut rng))
        .collect();
    run_all(&elements, |x| {
        let once = core(duality_by_definition(g, x))?;
        let twice = core(duality_by_definition(g, &once))?;
        ensure(twice == *x, || format!("{tag}: D(D({x})) = {twice}"))?;
        Ok(1)
    })
}

fn build_cases(cfg: &RunConfig) -> CliResult<Vec<Case>> {
    let mut cases = Vec::new();
    for &family in &cfg.families {
        let group = Arc::new(cfg.group(family)?);
        for &m in &cfg.moduli {
            let characters = match cfg.theta {
                Some(_) => vec![cfg.character(&group, m)?],
                None => enumerate_characters(group.root_system(), m as i64, cfg.max_characters)?,
            };
            let sigma = cfg.sigma(&group)?;
            cases.push(Case {
                group: group.clone(),
                modulus: m,
                characters,
                sigma,
            });
        }
    }
    Ok(cases)
}

/// Runs the selected suites. Configuration problems surface as errors before any check runs.
pub fn verify(cfg: &RunConfig) -> CliResult<VerifyReport> {
    let cases = build_cases(cfg)?;
    let mut suites = Vec::new();
    for suite in cfg.suites() {
        let mut checks = 0;
        let mut counterexample = None;
        for case in &cases {
            let result = match suite {
                Suite::Coxeter => coxeter(case),
                Suite::Matrices => matrices(case),
                Suite::Characters => characters(case),
                Suite::Mackey => mackey(case),
                Suite::ClosedForms => closed_forms(case),
                Suite::Involution => involution(case, cfg.sample, cfg.seed),
                Suite::All => unreachable!("expanded by RunConfig::suites"),
            };
            match result {
                Ok(n) => checks += n,
                Err(msg) => {
                    counterexample = Some(msg);
                    break;
                }
            }
        }
        suites.push(SuiteReport {
            suite: suite.name(),
            configurations: cases.len(),
            checks,
            passed: counterexample.is_none(),
            counterexample,
        });
    }
    Ok(VerifyReport {
        passed: suites.iter().all(|s| s.passed),
        suites,
    })
}

pub fn render_report(report: &VerifyReport, format: Format) -> String {
    let rows: Vec<Vec<String>> = report
        .suites
        .iter()
        .map(|s| {
            vec![
                s.suite.into(),
                s.configurations.to_string(),
                s.checks.to_string(),
                if s.passed { "pass" } else { "FAIL" }.into(),
                s.counterexample.clone().unwrap_or_default(),
            ]
        })
        .collect();
    match format {
        Format::Json => render::json(report),
        Format::Csv => render::csv(
            &[
                "suite",
                "configurations",
                "checks",
                "status",
                "counterexample",
            ],
            &rows,
        ),
        Format::Table => {
            let short: Vec<Vec<String>> = rows.iter().map(|r| r[..4].to_vec()).collect();
            let mut out = render::table(&["suite", "configurations", "checks", "status"], &short);
            for s in report.suites.iter().filter(|s| !s.passed) {
                out.push_str(&format!(
                    "counterexample [{}]: {}\n",
                    s.suite,
                    s.counterexample.as_deref().unwrap_or("")
                ));
            }
            out.push_str(if report.passed {
                "result: pass\n"
            } else {
                "result: FAIL\n"
            });
            out
        }
    }
}

/// Rendered report and whether every suite passed.
pub fn run(cfg: &RunConfig) -> CliResult<(String, bool)> {
    let report = verify(cfg)?;
    Ok((render_report(&report, cfg.format), report.passed))
}
