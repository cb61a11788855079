use std::time::Instant;

use invgal::braid::braid_orbits;
use invgal::cohomology::{bogomolov_report, cayley_from_permgroup, verify_certificate, DEFAULT_COHOMOLOGY_BOUND};
use invgal::monodromy::{
    parity_obstruction, realize_datum, RamificationDatum, Realization, RealizeLimits, Target, DEFAULT_MAX_DEGREE,
    DEFAULT_REALIZE_BUDGET,
};
use invgal::nielsen::{
    enumerate_ni, enumerate_nielsen_with_budget, rigidity_certificate_with_budget, DEFAULT_SEARCH_BUDGET,
};
use invgal::noether::{lenstra_condition, plans_condition, Verdict, DEFAULT_COEFF_BOUND, DEFAULT_NORM_BUDGET};
use invgal::{ClassVector, Limits, NielsenTuple, PermGroup};
use serde_json::{json, Value};

use crate::report::{envelope, Report, Status, Tsv};
use crate::spec::parse_group_spec;
use crate::{Cli, CliError, Command, Format, Outcome, TargetArg};

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Classes => "classes",
        Command::RationalClasses => "rational-classes",
        Command::Nielsen => "nielsen",
        Command::Rigid => "rigid",
        Command::Certify => "certify",
        Command::BraidOrbits => "braid-orbits",
        Command::Monodromy { .. } => "monodromy",
        Command::Bogomolov => "bogomolov",
        Command::NoetherCyclic { .. } => "noether-cyclic",
    }
}

fn supports_tsv(c: &Command) -> bool {
    matches!(
        c,
        Command::Classes
            | Command::RationalClasses
            | Command::Nielsen
            | Command::BraidOrbits
            | Command::NoetherCyclic { .. }
    )
}

fn budget(cli: &Cli) -> u128 {
    cli.budget.unwrap_or(match cli.command {
        Command::Monodromy { .. } => DEFAULT_REALIZE_BUDGET,
        Command::NoetherCyclic { .. } => DEFAULT_NORM_BUDGET,
        _ => DEFAULT_SEARCH_BUDGET,
    })
}

fn limits(cli: &Cli) -> Limits {
    let default = Limits::default();
    Limits {
        enumeration_bound: cli.enumeration_bound.unwrap_or(default.enumeration_bound),
        ..default
    }
}

fn class_labels(cli: &Cli) -> Option<Vec<String>> {
    cli.classes
        .as_ref()
        .map(|c| c.split(',').map(|s| s.trim().to_string()).collect())
}

fn config_json(cli: &Cli) -> Value {
    json!({
        "group": cli.group,
        "degree": cli.degree,
        "classes": class_labels(cli),
        "r": cli.r,
        "coeff_bound": cli.bound.unwrap_or(DEFAULT_COEFF_BOUND),
        "budget": u64::try_from(budget(cli)).unwrap_or(u64::MAX),
        "enumeration_bound": limits(cli).enumeration_bound,
        "cohomology_bound": DEFAULT_COHOMOLOGY_BOUND,
        "max_degree": DEFAULT_MAX_DEGREE,
        "format": match cli.format { Format::Json => "json", Format::Tsv => "tsv" },
    })
}

pub(crate) fn dispatch(cli: &Cli) -> Outcome {
    if cli.threads == Some(0) {
        return Outcome::failure("error: --threads must be at least 1\n".into());
    }
    let name = command_name(&cli.command);
    if cli.format == Format::Tsv && !supports_tsv(&cli.command) {
        return Outcome::failure(format!("error: {name} has no tabular output; use --format json\n"));
    }
    let report = match execute(cli) {
        Ok(r) => r,
        Err(e) if e.is_exhaustion() => Report {
            status: Status::Unknown,
            result: json!({ "reason": e.to_string() }),
            tsv: {
                let mut t = Tsv::new(&["status", "reason"]);
                t.row(["unknown".to_string(), e.to_string()]);
                Some(t)
            },
        },
        Err(e) => return Outcome::failure(format!("error: {e}\n")),
    };
    let stdout = match (cli.format, &report.tsv) {
        (Format::Tsv, Some(t)) => t.render(),
        _ => envelope(name, config_json(cli), report.status, report.result),
    };
    Outcome {
        code: report.status.exit_code(),
        stdout,
        stderr: String::new(),
    }
}

fn execute(cli: &Cli) -> Result<Report, CliError> {
    match &cli.command {
        Command::Classes => classes(cli, false),
        Command::RationalClasses => classes(cli, true),
        Command::Nielsen => nielsen(cli),
        Command::Rigid => rigid(cli, false),
        Command::Certify => rigid(cli, true),
        Command::BraidOrbits => braid(cli),
        Command::Monodromy { types, target } => monodromy(cli, types, *target),
        Command::Bogomolov => bogomolov(cli),
        Command::NoetherCyclic { n } => noether(cli, n),
    }
}

fn group(cli: &Cli) -> Result<(PermGroup, Value), CliError> {
    let text = cli
        .group
        .as_deref()
        .ok_or_else(|| CliError::Usage("--group is required".into()))?;
    let g = parse_group_spec(text, cli.degree)?.resolve(limits(cli))?;
    let info = json!({
        "spec": text,
        "degree": g.degree(),
        "order": g.order(),
        "generators": g.generators().iter().map(|p| p.to_cycle_string()).collect::<Vec<_>>(),
    });
    Ok((g, info))
}

fn class_vector(cli: &Cli, g: &PermGroup) -> Result<Option<ClassVector>, CliError> {
    class_labels(cli)
        .map(|labels| ClassVector::new(g, &labels))
        .transpose()
        .map_err(Into::into)
}

fn tuple_json(t: &NielsenTuple) -> Value {
    json!(t.entries().iter().map(|p| p.to_cycle_string()).collect::<Vec<_>>())
}

fn classes(cli: &Cli, rational_only: bool) -> Result<Report, CliError> {
    let (g, info) = group(cli)?;
    let all = g.conjugacy_classes()?;
    let mut tsv = Tsv::new(&[
        "label",
        "size",
        "element_order",
        "cycle_type",
        "rational",
        "representative",
    ]);
    let chosen: Vec<_> = all.iter().filter(|c| !rational_only || c.rational).collect();
    for c in &chosen {
        tsv.row([
            c.label.clone(),
            c.size.to_string(),
            c.element_order.to_string(),
            c.cycle_type.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","),
            c.rational.to_string(),
            c.representative.to_cycle_string(),
        ]);
    }
    let result = if rational_only {
        json!({
            "group": info,
            "all_rational": all.iter().all(|c| c.rational),
            "irrational": all.iter().filter(|c| !c.rational).map(|c| c.label.clone()).collect::<Vec<_>>(),
            "class_count": chosen.len(),
            "classes": chosen,
        })
    } else {
        json!({ "group": info, "class_count": all.len(), "classes": all })
    };
    Ok(Report::ok(result).with_tsv(tsv))
}

fn tuples_tsv(tuples: &[NielsenTuple]) -> Tsv {
    let r = tuples.first().map_or(0, |t| t.len());
    let header: Vec<String> = std::iter::once("index".to_string())
        .chain((1..=r).map(|i| format!("g{i}")))
        .collect();
    let header: Vec<&str> = header.iter().map(String::as_str).collect();
    let mut tsv = Tsv::new(&header);
    for (k, t) in tuples.iter().enumerate() {
        tsv.row(std::iter::once(k.to_string()).chain(t.entries().iter().map(|p| p.to_cycle_string())));
    }
    tsv
}

fn nielsen(cli: &Cli) -> Result<Report, CliError> {
    let (g, info) = group(cli)?;
    let b = budget(cli);
    let (tuples, scope) = match (class_vector(cli, &g)?, cli.r) {
        (Some(cv), _) => {
            let t = enumerate_nielsen_with_budget(&g, &cv, b)?;
            (t, json!({ "class_vector": cv.labels() }))
        }
        (None, Some(r)) => (enumerate_ni(&g, r, b)?, json!({ "r": r })),
        (None, None) => return Err(CliError::Usage("nielsen needs --classes or --r".into())),
    };
    let tsv = tuples_tsv(&tuples);
    let result = json!({
        "group": info,
        "scope": scope,
        "count": tuples.len(),
        "tuples": tuples.iter().map(tuple_json).collect::<Vec<_>>(),
    });
    Ok(Report::ok(result).with_tsv(tsv))
}

fn rigid(cli: &Cli, full: bool) -> Result<Report, CliError> {
    let (g, info) = group(cli)?;
    let cv = class_vector(cli, &g)?.ok_or_else(|| CliError::Usage("--classes is required".into()))?;
    let cert = rigidity_certificate_with_budget(&g, &cv, budget(cli))?;
    let result = if full {
        json!({
            "group": info,
            "verdict": if cert.hypotheses_satisfied { "positive" } else { "negative" },
            "certificate": {
                "class_vector": cert.class_vector,
                "count": cert.count,
                "rigid": cert.rigid,
                "rational_flags": cert.rational_flags,
                "all_rational": cert.all_rational,
                "all_nontrivial": cert.all_nontrivial,
                "centre_trivial": cert.centre_trivial,
                "witness": cert.witness.as_ref().map(tuple_json),
            },
        })
    } else {
        json!({ "group": info, "class_vector": cert.class_vector, "count": cert.count, "rigid": cert.rigid })
    };
    Ok(Report::ok(result))
}

fn braid(cli: &Cli) -> Result<Report, CliError> {
    let (g, info) = group(cli)?;
    let labels = class_labels(cli);
    let r = cli
        .r
        .or(labels.as_ref().map(Vec::len))
        .ok_or_else(|| CliError::Usage("braid-orbits needs --r or --classes".into()))?;
    let rep = braid_orbits(&g, r, labels.as_deref(), budget(cli))?;
    let mut tsv = Tsv::new(&["orbit", "size", "class_multiset", "representative"]);
    for (k, o) in rep.orbits.iter().enumerate() {
        tsv.row([
            k.to_string(),
            o.size.to_string(),
            o.class_multiset.join(","),
            o.representative
                .entries()
                .iter()
                .map(|p| p.to_cycle_string())
                .collect::<Vec<_>>()
                .join(" "),
        ]);
    }
    let orbits: Vec<Value> = rep
        .orbits
        .iter()
        .map(|o| {
            json!({
                "size": o.size,
                "class_multiset": o.class_multiset,
                "representative": tuple_json(&o.representative),
            })
        })
        .collect();
    let result = json!({
        "group": info,
        "r": rep.r,
        "restricted_to": labels,
        "total": rep.total,
        "orbit_count": rep.orbit_count,
        "orbits": orbits,
    });
    Ok(Report::ok(result).with_tsv(tsv))
}

fn parse_types(text: &str, degree: Option<usize>) -> Result<(usize, Vec<Vec<usize>>), CliError> {
    let mut types = Vec::new();
    for part in text.split(';') {
        let t = part
            .split(',')
            .map(|x| {
                x.trim()
                    .parse::<usize>()
                    .map_err(|_| CliError::Usage(format!("bad cycle type {part:?}")))
            })
            .collect::<Result<Vec<usize>, _>>()?;
        types.push(t);
    }
    let n = match degree {
        Some(n) => n,
        None => types.first().map(|t| t.iter().sum()).unwrap_or(0),
    };
    Ok((n, types))
}

fn monodromy(cli: &Cli, types: &str, target: TargetArg) -> Result<Report, CliError> {
    let (n, types) = parse_types(types, cli.degree)?;
    let datum = RamificationDatum::new(n, types)?;
    let target = match target {
        TargetArg::Any => Target::Any,
        TargetArg::Symmetric => Target::FullSymmetric,
        TargetArg::Alternating => Target::Alternating,
    };
    let limits = RealizeLimits {
        max_degree: DEFAULT_MAX_DEGREE,
        budget: budget(cli),
    };
    let realization = realize_datum(&datum, target, limits)?;
    let status = match realization {
        Realization::Unknown { .. } => Status::Unknown,
        _ => Status::Ok,
    };
    let realization = match &realization {
        Realization::Witness { tuple, group_order } => {
            json!({ "status": "witness", "tuple": tuple_json(tuple), "group_order": group_order })
        }
        Realization::NoneExists => json!({ "status": "none_exists" }),
        Realization::Unknown { reason } => json!({ "status": "unknown", "reason": reason }),
    };
    let result = json!({
        "datum": {
            "degree": datum.degree(),
            "types": datum.types(),
            "ramification": datum.ramification(),
            "genus": datum.genus(),
        },
        "parity_ok": parity_obstruction(&datum),
        "target": target,
        "realization": realization,
    });
    Ok(Report {
        status,
        result,
        tsv: None,
    })
}

fn bogomolov(cli: &Cli) -> Result<Report, CliError> {
    let start = Instant::now();
    let (g, info) = group(cli)?;
    let cayley = cayley_from_permgroup(&g)?;
    let rep = bogomolov_report(&cayley)?;
    let certificates: Vec<Value> = rep
        .certificates
        .iter()
        .map(|c| {
            let mut v = serde_json::to_value(c).expect("certificates serialize");
            v["verified"] = json!(verify_certificate(&cayley, c));
            v
        })
        .collect();
    let elapsed = cli.timing.then(|| start.elapsed().as_millis() as u64);
    let result = json!({
        "group": info,
        "order": rep.order,
        "h2_invariants": rep.h2.invariant_factors,
        "b0_invariants": rep.b0.invariant_factors,
        "bicyclic_count": rep.bicyclic_count,
        "maximal_bicyclic_count": rep.maximal_bicyclic_count,
        "certificates": certificates,
        "elapsed_ms": elapsed,
    });
    Ok(Report::ok(result))
}

fn parse_range(text: &str) -> Result<(u64, u64), CliError> {
    let bad = || CliError::Usage(format!("expected a positive integer or a range a..b, found {text:?}"));
    let num = |s: &str| s.trim().parse::<u64>().ok().filter(|&v| v > 0).ok_or_else(bad);
    let (a, b) = match text.split_once("..") {
        Some((a, b)) => (num(a)?, num(b)?),
        None => {
            let v = num(text)?;
            (v, v)
        }
    };
    if a > b {
        return Err(bad());
    }
    Ok((a, b))
}

fn noether(cli: &Cli, n: &str) -> Result<Report, CliError> {
    let (a, b) = parse_range(n)?;
    let coeff_bound = cli.bound.unwrap_or(DEFAULT_COEFF_BOUND);
    if coeff_bound == 0 {
        return Err(CliError::Usage("--bound must be positive".into()));
    }
    let mut rows = Vec::new();
    let mut tsv = Tsv::new(&["n", "plans", "lenstra", "witnesses", "reasons"]);
    let mut status = Status::Ok;
    for n in a..=b {
        let plans = plans_condition(n);
        let v = lenstra_condition(n, coeff_bound, budget(cli))?;
        if v.verdict == Verdict::Unknown {
            status = Status::Unknown;
        }
        let verdict = serde_json::to_value(v.verdict).expect("verdicts serialize");
        let witnesses: Vec<Value> = v
            .witnesses
            .iter()
            .map(|w| json!({ "p": w.p, "conductor": w.conductor, "coefficients": w.element.coefficients, "norm": w.norm }))
            .collect();
        tsv.row([
            n.to_string(),
            plans.to_string(),
            verdict.as_str().unwrap_or_default().to_string(),
            v.witnesses
                .iter()
                .map(|w| {
                    let c: Vec<String> = w.element.coefficients.iter().map(|x| x.to_string()).collect();
                    format!("{}:{}:[{}]:{}", w.p, w.conductor, c.join(","), w.norm)
                })
                .collect::<Vec<_>>()
                .join(";"),
            v.reasons.join("; "),
        ]);
        rows.push(json!({
            "n": n,
            "plans": plans,
            "lenstra_verdict": verdict,
            "witnesses": witnesses,
            "reasons": v.reasons,
        }));
    }
    let result = if a == b {
        rows.pop().unwrap()
    } else {
        json!({ "from": a, "to": b, "rows": rows })
    };
    Ok(Report {
        status,
        result,
        tsv: Some(tsv),
    })
}
