//! The four commands, generic over an instance's [`Grammar`].

use std::fmt::Display;
use std::hash::Hash;
use std::path::Path;

use serde_json::{json, Value};

use pseudoquotient::calculus::Pq;
use pseudoquotient::instances::{AffineLattice, DyadicSteps, PowerAffine, Tower, TowerConfig};
use pseudoquotient::verifier::config::{scalar_label, table_presentation, PresentationConfig};
use pseudoquotient::verifier::{presets, Generator, Presentation, VerifyReport};
use pseudoquotient::Calculus;

use crate::error::CliError;
use crate::grammar::{self, Grammar, Operator};
use crate::InstanceKind;

/// What a command produced: a JSON document, a plain-text rendering and an exit code.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub json: Value,
    pub text: String,
    pub exit_code: i32,
}

impl Outcome {
    fn ok(json: Value, text: String) -> Self {
        Self {
            json,
            text,
            exit_code: 0,
        }
    }
}

/// Settings shared by every command.
#[derive(Debug, Clone, Default)]
pub struct Context {
    pub tower: Option<TowerConfig>,
    pub depth: Option<usize>,
}

/// Builds an instance once the first expression has been parsed.
pub trait Instance: Grammar + Sized {
    fn instantiate(ctx: &Context, dim: Option<usize>) -> Result<Self, CliError>;
}

impl Instance for PowerAffine {
    fn instantiate(_: &Context, _: Option<usize>) -> Result<Self, CliError> {
        Ok(PowerAffine)
    }
}

impl Instance for AffineLattice {
    fn instantiate(_: &Context, dim: Option<usize>) -> Result<Self, CliError> {
        Ok(AffineLattice::new(dim.unwrap_or(1))?)
    }
}

impl Instance for DyadicSteps {
    fn instantiate(_: &Context, _: Option<usize>) -> Result<Self, CliError> {
        Ok(DyadicSteps)
    }
}

impl Instance for Tower {
    fn instantiate(ctx: &Context, _: Option<usize>) -> Result<Self, CliError> {
        Ok(Tower::new(ctx.tower.clone().unwrap_or_default())?)
    }
}

macro_rules! on_instance {
    ($kind:expr, $f:ident($($arg:expr),* $(,)?)) => {
        match $kind {
            InstanceKind::PowerAffine => $f::<PowerAffine>($($arg),*),
            InstanceKind::AffineLattice => $f::<AffineLattice>($($arg),*),
            InstanceKind::DyadicSteps => $f::<DyadicSteps>($($arg),*),
            InstanceKind::Tower => $f::<Tower>($($arg),*),
        }
    };
}

pub fn normalize(kind: InstanceKind, ctx: &Context, expr: &str) -> Result<Outcome, CliError> {
    on_instance!(kind, normalize_with(ctx, expr))
}

pub fn equiv(kind: InstanceKind, ctx: &Context, left: &str, right: &str) -> Result<Outcome, CliError> {
    on_instance!(kind, equiv_with(ctx, left, right))
}

pub fn apply(
    kind: InstanceKind,
    ctx: &Context,
    operator: &str,
    target: &str,
    inverse: bool,
) -> Result<Outcome, CliError> {
    on_instance!(kind, apply_with(ctx, operator, target, inverse))
}

fn checked_pq<A: Instance>(a: &A, p: &Pq<A>) -> Result<(), CliError> {
    Ok(a.check_pseudoquotient(p)?)
}

fn normalize_with<A: Instance>(ctx: &Context, expr: &str) -> Result<Outcome, CliError> {
    let p = grammar::parse_pq::<A>(expr)?;
    let a = A::instantiate(ctx, A::point_dim(&p.numerator))?;
    checked_pq(&a, &p)?;
    let canonical = a.canonical(&p);
    Ok(Outcome::ok(
        json!({ "instance": a.name(), "canonical": A::canonical_json(&canonical) }),
        A::canonical_text(&canonical),
    ))
}

fn equiv_with<A: Instance>(ctx: &Context, left: &str, right: &str) -> Result<Outcome, CliError> {
    let p = grammar::parse_pq::<A>(left)?;
    let q = grammar::parse_pq::<A>(right)?;
    let a = A::instantiate(ctx, A::point_dim(&p.numerator))?;
    checked_pq(&a, &p)?;
    checked_pq(&a, &q)?;
    let (equivalent, w) = a.pq_equivalent_with_witness(&p, &q);
    let f_prime = A::print_element(&w.f_prime);
    let g_prime = A::print_element(&w.g_prime);
    let text = format!(
        "{} (witness f' = {f_prime}, g' = {g_prime})",
        if equivalent { "equivalent" } else { "not equivalent" }
    );
    Ok(Outcome::ok(
        json!({
            "instance": a.name(),
            "equivalent": equivalent,
            "witness": { "f_prime": f_prime, "g_prime": g_prime },
        }),
        text,
    ))
}

fn apply_with<A: Instance>(
    ctx: &Context,
    operator: &str,
    target: &str,
    inverse: bool,
) -> Result<Outcome, CliError> {
    let op = grammar::parse_operator::<A>(operator)?;
    let p = grammar::parse_pq::<A>(target)?;
    let a = A::instantiate(ctx, A::point_dim(&p.numerator))?;
    checked_pq(&a, &p)?;
    let result = match op {
        Operator::Element(g) => {
            a.check_element(&g)?;
            if inverse {
                a.extend_inverse_apply(&g, &p)
            } else {
                a.extend_apply(&g, &p)
            }
        }
        Operator::Fraction(f) => {
            a.check_element(&f.den)?;
            a.check_element(&f.num)?;
            let f = if inverse { a.frac_inverse(&f) } else { f };
            a.frac_apply(&f, &p)
        }
    };
    let canonical = a.canonical(&result);
    let printed = grammar::print_pq::<A>(&result);
    let text = format!("{printed}  = {}", A::canonical_text(&canonical));
    Ok(Outcome::ok(
        json!({
            "instance": a.name(),
            "pseudoquotient": printed,
            "canonical": A::canonical_json(&canonical),
        }),
        text,
    ))
}

/// Runs a built-in preset for an instance.
pub fn verify_preset(kind: InstanceKind, ctx: &Context, dim: usize) -> Result<Outcome, CliError> {
    let depth = ctx.depth.unwrap_or(pseudoquotient::verifier::DEFAULT_MAX_DEPTH);
    let report = match kind {
        InstanceKind::PowerAffine => presets::power_affine(depth)?.verify()?,
        InstanceKind::AffineLattice => presets::affine_lattice(dim, depth)?.verify()?,
        InstanceKind::DyadicSteps => presets::dyadic(depth)?.verify()?,
        InstanceKind::Tower => presets::tower(ctx.tower.clone().unwrap_or_default(), depth)?.verify()?,
    };
    report_outcome(&report)
}

/// Runs a presentation read from a JSON document.
pub fn verify_config(ctx: &Context, path: &Path) -> Result<Outcome, CliError> {
    let mut config: PresentationConfig = serde_json::from_str(&read_file(path)?)?;
    if let Some(depth) = ctx.depth {
        config.max_depth = Some(depth);
    }
    let report = match config.instance.as_deref() {
        None => table_presentation(&config)?.verify()?,
        Some(name) => {
            let kind = InstanceKind::from_name(name)
                .ok_or_else(|| CliError::Usage(format!("unknown instance `{name}`")))?;
            let ctx = Context {
                tower: config.tower.clone().or_else(|| ctx.tower.clone()),
                depth: ctx.depth,
            };
            on_instance!(kind, expr_report(&ctx, &config))?
        }
    };
    report_outcome(&report)
}

fn expr_report<A>(ctx: &Context, config: &PresentationConfig) -> Result<VerifyReport, CliError>
where
    A: Instance + Clone + Send + Sync + 'static,
    A::Point: Eq + Hash + Display + Send + Sync + 'static,
    A::Element: Send + Sync + 'static,
{
    let samples = config
        .samples
        .iter()
        .map(|v| grammar::parse_point::<A>(&scalar_label(v)?))
        .collect::<Result<Vec<_>, CliError>>()?;
    let elements = config
        .generators
        .iter()
        .map(|g| {
            if g.table.is_some() {
                return Err(CliError::Usage(format!(
                    "generator `{}`: tables cannot be mixed with an instance",
                    g.name
                )));
            }
            let expr = g
                .expr
                .as_deref()
                .ok_or_else(|| CliError::Usage(format!("generator `{}` has no expr", g.name)))?;
            Ok((g.name.clone(), grammar::parse_element::<A>(expr)?))
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    let dim = samples
        .first()
        .and_then(A::point_dim)
        .or_else(|| elements.first().and_then(|(_, e)| A::element_dim(e)));
    let a = A::instantiate(ctx, dim)?;
    for x in &samples {
        a.check_point(x)?;
    }
    let generators = elements
        .into_iter()
        .map(|(name, e)| {
            a.check_element(&e)?;
            let a = a.clone();
            Ok(Generator::total(name, move |x: &A::Point| a.apply(&e, x)))
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    let presentation = Presentation::new(config.display_name(), generators, samples, config.depth())?;
    Ok(presentation.verify()?)
}

fn report_outcome(report: &VerifyReport) -> Result<Outcome, CliError> {
    let json = serde_json::to_value(report).expect("reports serialize");
    Ok(Outcome {
        json,
        text: report_text(report),
        exit_code: if report.has_counterexample() { 3 } else { 0 },
    })
}

fn report_text(report: &VerifyReport) -> String {
    use pseudoquotient::verifier::{CancellationResult, InjectivityResult, OreSearch};
    let mut lines = vec![format!(
        "{}: {} generators, {} samples, depth {} ({})",
        report.presentation,
        report.generators.len(),
        report.samples.len(),
        report.depth_used,
        report.scope
    )];
    lines.push(match &report.injectivity {
        InjectivityResult::Pass { depth } => format!("injectivity: pass up to depth {depth}"),
        InjectivityResult::Fail { word, x, y, image, .. } => format!(
            "injectivity: FAIL, {} sends {x} and {y} to {image}",
            word.join(" ")
        ),
    });
    for pair in &report.ore {
        let head = format!("ore ({}, {})", pair.f.join(" "), pair.g.join(" "));
        lines.push(match &pair.result {
            OreSearch::Found { w1, w2, depth, .. } => format!(
                "{head}: {} . {} = {} . {} (depth {depth})",
                w1.join(" "),
                pair.g.join(" "),
                w2.join(" "),
                pair.f.join(" ")
            ),
            OreSearch::NotFoundWithinDepth { depth } => {
                format!("{head}: no witness within depth {depth}")
            }
        });
    }
    lines.push(match &report.cancellation {
        CancellationResult::Pass { depth } => format!("cancellation: pass up to depth {depth}"),
        CancellationResult::Fail {
            f1,
            f2,
            g,
            witness_point,
            ..
        } => format!(
            "cancellation: FAIL, ({}) . ({g}) = ({}) . ({g}) but they differ at {witness_point}",
            f1.join(" "),
            f2.join(" "),
            g = g.join(" ")
        ),
    });
    lines.join("\n")
}

pub fn read_file(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })
}

/// A tower config file is either a bare level-rule object or a presentation with a `tower` field.
pub fn load_tower_config(path: &Path) -> Result<TowerConfig, CliError> {
    let value: Value = serde_json::from_str(&read_file(path)?)?;
    let rules = match value.get("tower") {
        Some(inner) => inner.clone(),
        None => value,
    };
    let config: TowerConfig = serde_json::from_value(rules)?;
    config.validate()?;
    Ok(config)
}
