use std::collections::BTreeMap;
use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use tcp_core::morse::{
    check_admissible, check_field, check_star_condition, morse_reduction, DiscreteVectorField,
    EmlField,
};
use tcp_core::pipeline::{self, Equipment, Method, Options, PipelineResult, Side};
use tcp_core::reductions::{check_reduction_on, Guard, Reduction, ReductionReport};
use tcp_core::simplicial::{
    all_cells, all_simplices, CellPermutationAction, GroupAction, RightMultiplication, Simplex,
    SimplicialSet, TrivialAction,
};
use tcp_core::twisted::{check_twisting, twisted_ez, Tcp, TwistingOperator};
use tcp_core::zchain::{Basis, Gen};
use tcp_core::Error;

use crate::args::{Format, TcpArgs, TransportArgs};
use crate::error::{CliError, CliResult};
use crate::formats::{load_action, load_field, load_group, load_space, load_twist, LoadedSpace};

/// What a command prints and whether it counts as a failure.
pub struct Outcome {
    pub text: String,
    pub failure: Option<CliError>,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Outcome {
            text,
            failure: None,
        }
    }
}

struct Setup {
    tcp: Tcp,
    equipment: Equipment,
    opts: Options,
    base: LoadedSpace,
    base_field: Option<Arc<dyn DiscreteVectorField>>,
}

fn options(a: &TcpArgs) -> Options {
    Options {
        max_dim: a.max_dim,
        guard: a.guard,
        seed: a.seed,
        ..Options::default()
    }
}

fn required<'a>(v: &'a Option<String>, flag: &str) -> CliResult<&'a str> {
    v.as_deref()
        .ok_or_else(|| CliError::invalid(format!("--{flag} is required without --builtin")))
}

fn setup(a: &TcpArgs) -> CliResult<Setup> {
    let opts = options(a);
    if let Some(name) = &a.builtin {
        let (tcp, equipment) = pipeline::builtin(name, &opts)?;
        let base_field = equipment.base.morse.as_ref().map(|m| m.field.clone());
        let base = LoadedSpace {
            set: tcp.base().clone(),
            names: None,
        };
        return Ok(Setup {
            tcp,
            equipment,
            opts,
            base,
            base_field,
        });
    }
    let cap = a.max_dim + 1;
    let base = load_space(required(&a.base, "base")?, cap)?;
    let group_spec = required(&a.group, "group")?;
    let group = load_group(group_spec, cap)?;
    let g = group.group();
    let (fiber, fiber_names): (Arc<dyn SimplicialSet>, _) = match a.fiber.as_deref() {
        None => (g.clone(), group.names().cloned()),
        Some(f) if f == group_spec => (g.clone(), group.names().cloned()),
        Some(f) => {
            let l = load_space(f, cap)?;
            (l.set, l.names)
        }
    };
    let fiber_is_group = a.fiber.as_deref().is_none_or(|f| f == group_spec);
    let action: Arc<dyn GroupAction> = match a.action.as_deref() {
        None | Some("right") if fiber_is_group => Arc::new(RightMultiplication(g.clone())),
        None | Some("right") => {
            return Err(CliError::invalid(
                "--action right needs the fiber to be the group",
            ))
        }
        Some("trivial") => Arc::new(TrivialAction),
        Some("flip") => Arc::new(CellPermutationAction::flip()),
        Some(path) => {
            let (Some(f), Some(n)) = (&fiber_names, group.names()) else {
                return Err(CliError::invalid(
                    "action files need a finite fiber and group",
                ));
            };
            Arc::new(load_action(path, f, n)?)
        }
    };
    let tau = match a.twist.as_deref() {
        None | Some("trivial") => TwistingOperator::trivial(base.set.clone(), g.clone()),
        Some(path) => {
            let names = base
                .names
                .as_ref()
                .ok_or_else(|| CliError::invalid("twist files need a finite base"))?;
            let map = load_twist(path, names, &group)?;
            TwistingOperator::new(base.set.clone(), g.clone(), move |b| {
                map.get(b)
                    .cloned()
                    .ok_or_else(|| Error::Invalid(format!("τ is not given on {b}")))
            })
        }
    };
    let tcp = Tcp::new(fiber.clone(), action, tau);
    let is_kz1 = |s: &Option<String>| s.as_deref().map(str::trim) == Some("kz1");
    let fiber_side = if is_kz1(&a.fiber) || (a.fiber.is_none() && group_spec.trim() == "kz1") {
        Side::morse(&tcp.fiber, Arc::new(EmlField), None)
    } else {
        Side::trivial(&tcp.fiber)
    };
    let base_field: Option<Arc<dyn DiscreteVectorField>> = match a.field.as_deref() {
        Some("eml") => Some(Arc::new(EmlField)),
        Some(path) => {
            let names = base
                .names
                .as_ref()
                .ok_or_else(|| CliError::invalid("field files need a finite base"))?;
            Some(Arc::new(load_field(path, base.set.as_ref(), names)?))
        }
        None if is_kz1(&a.base) => Some(Arc::new(EmlField)),
        None => None,
    };
    let base_side = match &base_field {
        Some(v) => Side::morse(tcp.base(), v.clone(), None),
        None => Side::trivial(tcp.base()),
    };
    Ok(Setup {
        tcp,
        equipment: Equipment {
            fiber: fiber_side,
            base: base_side,
        },
        opts,
        base,
        base_field,
    })
}

fn method(a: &TcpArgs) -> CliResult<Method> {
    Ok(a.method.parse::<Method>()?)
}

fn homology_json(r: &PipelineResult) -> Value {
    let groups: BTreeMap<String, String> = r
        .homology
        .iter()
        .enumerate()
        .map(|(n, h)| (n.to_string(), h.to_string()))
        .collect();
    let d = &r.diagnostics;
    json!({
        "homology": groups,
        "route": r.route.name(),
        "diagnostics": {
            "twisted_series": d.twisted_series,
            "transfer_series": d.transfer_series,
            "series_evaluated": d.series_evaluated,
            "transfer_terms_longest": d.transfer_terms_longest,
            "hd0_max": d.hd0_max,
            "notes": d.notes,
        }
    })
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("JSON values serialize")
}

pub fn homology(a: &TcpArgs) -> CliResult<Outcome> {
    let s = setup(a)?;
    let r = pipeline::run(&s.tcp, &s.equipment, method(a)?, &s.opts)?;
    Ok(Outcome::ok(match a.format {
        Format::Json => pretty(&homology_json(&r)),
        Format::Text => r
            .homology
            .iter()
            .enumerate()
            .map(|(n, h)| format!("H_{n}={h}"))
            .collect::<Vec<_>>()
            .join(" "),
    }))
}

/// Every cell through `top` if the space is finite there, seeded samples
/// otherwise.
fn cells_or_samples(x: &dyn SimplicialSet, top: usize, per_dim: usize, seed: u64) -> Vec<Gen> {
    if let Ok(cells) = all_cells(x, top) {
        return cells;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    for n in 0..=top {
        if let Basis::Finite(v) = x.cells(n) {
            out.extend(v.iter().cloned());
            continue;
        }
        out.extend((0..per_dim).filter_map(|_| x.sample_cell(n, &mut rng)));
    }
    out
}

fn report(
    format: Format,
    valid: bool,
    fields: Value,
    text: String,
    why: Option<String>,
) -> Outcome {
    let text = match format {
        Format::Json => {
            let mut v = fields;
            v["valid"] = json!(valid);
            if let Some(w) = &why {
                v["reason"] = json!(w);
            }
            pretty(&v)
        }
        Format::Text => match &why {
            Some(w) => format!("{text}: {w}"),
            None => text,
        },
    };
    Outcome {
        text,
        failure: why.map(CliError::Validation),
    }
}

pub fn check_twist(a: &TcpArgs) -> CliResult<Outcome> {
    let s = setup(a)?;
    let base = s.tcp.base();
    let top = a.max_dim.max(1);
    let simplices: Vec<Simplex> = match (0..=top)
        .map(|n| all_simplices(base.as_ref(), n))
        .collect::<Result<Vec<_>, _>>()
    {
        Ok(v) => v.into_iter().flatten().collect(),
        Err(_) => cells_or_samples(base.as_ref(), top, 200, a.seed)
            .into_iter()
            .flat_map(|g| {
                let s = Simplex::nondegenerate(g);
                let n = s.dim() as u32;
                [s.clone(), s.degenerate(0), s.degenerate(n)]
            })
            .collect(),
    };
    let verdict = check_twisting(&s.tcp.tau, &simplices)?;
    let valid = verdict.is_none();
    let text = if valid {
        format!("twisting operator valid on {} simplices", simplices.len())
    } else {
        "twisting operator invalid".into()
    };
    Ok(report(
        a.format,
        valid,
        json!({ "checked": simplices.len() }),
        text,
        verdict,
    ))
}

fn tensor_samples(f: &[Gen], b: &[Gen], top: usize) -> Vec<Gen> {
    let mut out = Vec::new();
    for x in f {
        for y in b {
            if x.degree() + y.degree() <= top {
                out.push(Gen::tensor(x.clone(), y.clone()));
            }
        }
    }
    out
}

fn bottom_gens(r: &Reduction, top: usize, fallback: &[Gen]) -> Vec<Gen> {
    let mut out = Vec::new();
    for n in 0..=top {
        match r.bottom.finite_basis(n) {
            Ok(v) => out.extend(v.iter().cloned()),
            Err(_) => return fallback.to_vec(),
        }
    }
    out
}

pub fn check_reduction(a: &TcpArgs) -> CliResult<Outcome> {
    let s = setup(a)?;
    let top = a.max_dim;
    let per_dim = 40;
    let f = cells_or_samples(s.tcp.fiber.as_ref(), top, per_dim, a.seed);
    let b = cells_or_samples(s.tcp.base().as_ref(), top, per_dim, a.seed + 1);
    let e = cells_or_samples(s.tcp.untwisted.as_ref(), top, per_dim, a.seed + 2);
    let tw = twisted_ez(&s.tcp, Guard::Fixed(a.guard));
    let mut reports: Vec<(String, ReductionReport)> = Vec::new();
    reports.push((
        "twisted Eilenberg–Zilber".into(),
        check_reduction_on(tw.reduction(), &e, &tensor_samples(&f, &b, top))?,
    ));
    for (name, side, gens) in [
        ("fiber", &s.equipment.fiber, &f),
        ("base", &s.equipment.base, &b),
    ] {
        if let Some(r) = side.as_reduction() {
            let bottom = bottom_gens(r, top, gens);
            reports.push((
                format!("{name} reduction"),
                check_reduction_on(r, gens, &bottom)?,
            ));
        }
    }
    let mut lines = Vec::new();
    let mut entries = Vec::new();
    let mut why = None;
    for (name, r) in &reports {
        let status = match r.first_failure() {
            None => "ok".to_string(),
            Some(fail) => {
                let m = format!(
                    "{name}: {} fails on {}: {} ≠ {}",
                    fail.identity, fail.generator, fail.lhs, fail.rhs
                );
                why.get_or_insert(m.clone());
                m
            }
        };
        lines.push(format!(
            "{name}: {} top and {} bottom generators, {status}",
            r.top_checked, r.bottom_checked
        ));
        entries.push(json!({
            "reduction": name,
            "top_checked": r.top_checked,
            "bottom_checked": r.bottom_checked,
            "ok": r.is_ok(),
        }));
    }
    let valid = why.is_none();
    Ok(report(
        a.format,
        valid,
        json!({ "reductions": entries }),
        lines.join("\n"),
        why,
    ))
}

pub fn vf_check_star(a: &TcpArgs) -> CliResult<Outcome> {
    let (base, field) = if a.builtin.is_some() {
        let s = setup(a)?;
        let field = s
            .base_field
            .ok_or_else(|| CliError::invalid("this builtin has no vector field on its base"))?;
        (s.base.set, field)
    } else {
        let base = load_space(required(&a.base, "base")?, a.max_dim + 1)?;
        let field: Arc<dyn DiscreteVectorField> = match required(&a.field, "field")? {
            "eml" => Arc::new(EmlField),
            path => {
                let names = base
                    .names
                    .as_ref()
                    .ok_or_else(|| CliError::invalid("field files need a finite base"))?;
                Arc::new(load_field(path, base.set.as_ref(), names)?)
            }
        };
        (base.set, field)
    };
    let samples = cells_or_samples(base.as_ref(), a.max_dim, 1000 / a.max_dim.max(1), a.seed);
    let why = match check_field(base.as_ref(), field.as_ref(), &samples)? {
        Some(m) => Some(format!("the pairing is not a vector field: {m}")),
        None => check_star_condition(base.as_ref(), field.as_ref(), &samples)?
            .map(|g| format!("d0 {g} is a source but {g} is not")),
    };
    if why.is_none() {
        let m = morse_reduction(base.clone(), field.clone(), None);
        check_admissible(&m, &samples)?;
    }
    let valid = why.is_none();
    let text = if valid {
        format!("condition (*) holds on {} simplices", samples.len())
    } else {
        "condition (*) fails".into()
    };
    Ok(report(
        a.format,
        valid,
        json!({ "checked": samples.len() }),
        text,
        why,
    ))
}

pub fn transport(a: &TransportArgs) -> CliResult<Outcome> {
    let s = setup(&a.tcp)?;
    let r = pipeline::run(&s.tcp, &s.equipment, method(&a.tcp)?, &s.opts)?;
    let n = a.degree;
    let group = r
        .homology
        .get(n)
        .ok_or_else(|| CliError::invalid(format!("degree {n} is above --max-dim")))?;
    let cycles: Vec<String> = r
        .transported_cycles(n)?
        .iter()
        .map(|z| z.to_string())
        .collect();
    Ok(Outcome::ok(match a.tcp.format {
        Format::Json => pretty(&json!({
            "degree": n,
            "homology": group.to_string(),
            "route": r.route.name(),
            "cycles": cycles,
        })),
        Format::Text => {
            let mut lines = vec![format!("H_{n}={group}")];
            lines.extend(
                cycles
                    .iter()
                    .enumerate()
                    .map(|(i, z)| format!("z{i} = {z}")),
            );
            lines.join("\n")
        }
    }))
}
