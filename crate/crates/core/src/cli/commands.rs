use crate::applications::{cycle_count_sums, permanent_master, permanent_weighted, polykay, repeated_matrix, CycleWeights, PolykaySample};
use crate::budget::{self, Budget};
use crate::combinatorics::{format_word, necklaces_of_kind, CyclePermutation};
use crate::error::{Error, Result};
use crate::mc::{
    distribution_identity_check, estimate_joint_moment, estimate_trace_cumulants, haar_compression,
    principal_submatrix_sample, Accumulator, RngStream, MIN_SAMPLES, RNG_ALGORITHM,
};
use crate::model::Convention;
use crate::multivariate::{
    a_product_moment, assignment_moment, central_product_moment, generalized_moment, generalized_moment_expansion,
    joint_cumulant, joint_moment,
};
use crate::numeric::{relative_error, C64};
use crate::univariate::{noncentral_cumulant, noncentral_moment, MomentSequence};

use super::input::InputDocument;
use super::output::{Object, Table, Value};
use super::{Command, GeneralizedArgs, Invocation, JointArgs, McArgs, NecklaceArgs, OrderArgs, PermanentArgs, PolykayArgs, Report};

pub(super) fn name(command: &Command) -> &'static str {
    match command {
        Command::Moments(_) => "moments",
        Command::Cumulants(_) => "cumulants",
        Command::JointMoments(_) => "joint-moments",
        Command::JointCumulants(_) => "joint-cumulants",
        Command::Generalized(_) => "generalized",
        Command::Permanent(_) => "permanent",
        Command::Polykay(_) => "polykay",
        Command::Necklaces(_) => "necklaces",
        Command::McVerify(_) => "mc-verify",
    }
}

pub(super) fn dispatch(command: &Command, inv: &mut Invocation<'_>) -> Result<Report> {
    match command {
        Command::Moments(args) => univariate(args, inv, false),
        Command::Cumulants(args) => univariate(args, inv, true),
        Command::JointMoments(args) => joint(args, inv, false),
        Command::JointCumulants(args) => joint(args, inv, true),
        Command::Generalized(args) => generalized(args, inv),
        Command::Permanent(args) => permanent(args, inv),
        Command::Polykay(args) => polykays(args, inv),
        Command::Necklaces(args) => necklaces(args, inv),
        Command::McVerify(args) => mc_verify(args, inv),
    }
}

fn load(inv: &mut Invocation<'_>, path: &str) -> Result<(InputDocument, Convention)> {
    let flag = inv.convention_flag;
    let doc = InputDocument::parse(inv.read_input(path)?)?;
    let convention = doc.convention(flag)?;
    Ok((doc, convention))
}

fn index_text(i: &[usize]) -> String {
    i.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
}

fn require_index(doc: &InputDocument, flag: Option<&[usize]>) -> Result<Vec<usize>> {
    doc.index(flag).ok_or_else(|| Error::InvalidParameter("index: required (in the file or via --index)".into()))
}

fn univariate(args: &OrderArgs, inv: &mut Invocation<'_>, cumulants: bool) -> Result<Report> {
    let (doc, convention) = load(inv, &args.params_file)?;
    let params = doc.params(convention)?;
    if args.order == 0 {
        return Err(Error::InvalidParameter("order: must be at least 1".into()));
    }
    let mut table = Table::new(&["order", "value"]);
    for i in 1..=args.order {
        let value = if cumulants { noncentral_cumulant(&params, i)? } else { noncentral_moment(&params, i)? };
        table.push(vec![i.into(), value.into()]);
    }
    Ok(Report {
        convention,
        options: Object::new().with("order", args.order),
        results: table.to_records(),
        table,
        warnings: params.warnings(),
    })
}

fn joint(args: &JointArgs, inv: &mut Invocation<'_>, cumulant: bool) -> Result<Report> {
    let (doc, convention) = load(inv, &args.params_file)?;
    let params = doc.params(convention)?;
    let h = doc.directions()?;
    let i = require_index(&doc, args.index.as_deref())?;
    let value = if cumulant { joint_cumulant(&params, &h, &i)? } else { joint_moment(&params, &h, &i)? };
    let mut table = Table::new(&["index", "value"]);
    table.push(vec![index_text(&i).into(), value.into()]);
    Ok(Report {
        convention,
        options: Object::new().with("index", i.clone()),
        results: Object::new().with("index", i).with("value", value).into(),
        table,
        warnings: params.warnings(),
    })
}

/// Parse 1-based cycle notation such as `(1 3)(2)`.
fn parse_cycles(text: &str, k: usize) -> Result<CyclePermutation> {
    let bad = || Error::InvalidParameter(format!("cycles: cannot parse {text:?}, expected e.g. (1 2)(3)"));
    let mut cycles = Vec::new();
    let mut rest = text.trim();
    while !rest.is_empty() {
        let body = rest.strip_prefix('(').ok_or_else(bad)?;
        let close = body.find(')').ok_or_else(bad)?;
        let cycle = body[..close]
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|t| !t.is_empty())
            .map(|t| t.parse::<usize>().ok().filter(|&v| v >= 1).map(|v| v - 1).ok_or_else(bad))
            .collect::<Result<Vec<_>>>()?;
        if cycle.is_empty() {
            return Err(bad());
        }
        cycles.push(cycle);
        rest = body[close + 1..].trim_start();
    }
    CyclePermutation::from_cycles(k, &cycles).map_err(|e| Error::InvalidParameter(format!("cycles: {e}")))
}

fn generalized(args: &GeneralizedArgs, inv: &mut Invocation<'_>) -> Result<Report> {
    let (doc, convention) = load(inv, &args.params_file)?;
    let params = doc.params(convention)?;
    let h = doc.directions()?;
    let sigma_perm = match &args.cycles {
        Some(text) => parse_cycles(text, h.len())?,
        None => CyclePermutation::identity(h.len()),
    };
    let moment = generalized_moment(&params, &h, &sigma_perm)?;
    let central = central_product_moment(&params, &h, &sigma_perm)?;
    let formal = a_product_moment(&params, &h, &sigma_perm)?;
    let expansion = generalized_moment_expansion(&params, &h, &sigma_perm)?;

    let mut table = Table::new(&["assignment", "term", "symbolic", "value", "mixed_value"]);
    let mut terms = Vec::new();
    for term in &expansion.terms {
        let assignment: String = term.assignment.iter().map(|b| b.symbol()).collect();
        // Mixed terms stay symbolic in the expansion; their expectation is
        // still available from the joint law of the two components.
        let mixed_value = if term.is_symbolic() {
            Some(assignment_moment(&params, &h, &sigma_perm, &term.assignment)?)
        } else {
            None
        };
        let factors: Vec<Value> = term
            .factors
            .iter()
            .map(|f| Object::new().with("trace", f.to_string()).with("value", f.value).into())
            .collect();
        terms.push(Value::from(
            Object::new()
                .with("assignment", assignment.as_str())
                .with("factors", Value::List(factors))
                .with("mixed_value", mixed_value)
                .with("symbolic", term.is_symbolic())
                .with("term", term.to_string())
                .with("value", term.value),
        ));
        table.push(vec![
            assignment.into(),
            term.to_string().into(),
            term.is_symbolic().into(),
            term.value.into(),
            mixed_value.into(),
        ]);
    }
    table.push(vec!["total".into(), "".into(), false.into(), moment.into(), Value::Null]);
    let results = Object::new()
        .with("central_part", central)
        .with("evaluated_sum", expansion.evaluated_sum())
        .with("formal_part", formal)
        .with("fully_evaluated", expansion.is_fully_evaluated())
        .with("moment", moment)
        .with("permutation", sigma_perm.to_string())
        .with("symbolic_factors", expansion.symbolic_factor_count())
        .with("terms", Value::List(terms));
    Ok(Report {
        convention,
        options: Object::new().with("cycles", sigma_perm.to_string()),
        results: results.into(),
        table,
        warnings: params.warnings(),
    })
}

fn permanent(args: &PermanentArgs, inv: &mut Invocation<'_>) -> Result<Report> {
    let (doc, convention) = load(inv, &args.params_file)?;
    let y = doc.sigma()?;
    let (weights, weight_desc) = match (&args.alpha, args.d) {
        (Some(alpha), _) => {
            let a = MomentSequence::from_moments(alpha).map_err(|e| Error::InvalidParameter(format!("alpha: {e}")))?;
            (CycleWeights::Moments(a), Value::from(alpha.clone()))
        }
        (None, d) => {
            let d = d.unwrap_or(C64::new(1.0, 0.0));
            (CycleWeights::Power(d), Value::from(d))
        }
    };
    let brute = permanent_weighted(&y, &weights)?;
    let sums = cycle_count_sums(&y)?;
    let mut table = Table::new(&["route", "index", "value"]);
    table.push(vec!["brute-force".into(), "".into(), brute.into()]);
    let mut results = Object::new()
        .with("brute_force", brute)
        .with("cycle_count_sums", sums);
    let mut options = Object::new().with("weights", weight_desc);
    if let Some(i) = doc.index(args.index.as_deref()) {
        let master = permanent_master(&y, &i, &weights)?;
        let repeated = permanent_weighted(&repeated_matrix(&y, &i)?, &weights)?;
        table.push(vec!["master-theorem".into(), index_text(&i).into(), master.into()]);
        table.push(vec!["brute-force-repeated".into(), index_text(&i).into(), repeated.into()]);
        results.insert(
            "master",
            Object::new()
                .with("brute_force_repeated", repeated)
                .with("index", i.clone())
                .with("relative_deviation", relative_error(master, repeated))
                .with("value", master),
        );
        options.insert("index", i);
    }
    Ok(Report { convention, options, results: results.into(), table, warnings: Vec::new() })
}

fn polykays(args: &PolykayArgs, inv: &mut Invocation<'_>) -> Result<Report> {
    let (doc, convention) = load(inv, &args.params_file)?;
    let x = doc.sigma()?;
    if !(1..=4).contains(&args.order) {
        return Err(Error::InvalidParameter(format!("order: must be in 1..=4, got {}", args.order)));
    }
    let sample = PolykaySample::from_hermitian(&x).map_err(|e| match e {
        Error::NotHermitian { .. } => Error::InvalidParameter(format!("sigma: {e}")),
        other => other,
    })?;
    let values = (1..=args.order).map(|k| polykay(&sample, k)).collect::<Result<Vec<f64>>>()?;
    let mut options = Object::new().with("order", args.order);
    let mut haar = vec![Accumulator::new(); args.order];
    let mut principal = vec![Accumulator::new(); args.order];
    if let Some(m) = args.compress {
        if args.samples < 2 {
            return Err(Error::InvalidParameter("samples: at least 2 are required".into()));
        }
        let mut rng = RngStream::new(args.seed, 0);
        for _ in 0..args.samples {
            let h = haar_compression(&x, m, &mut rng)?;
            let s = principal_submatrix_sample(&x, m, &mut rng)?;
            for k in 0..args.order {
                haar[k].push(C64::new(polykay(&h, k + 1)?, 0.0));
                principal[k].push(C64::new(polykay(&s, k + 1)?, 0.0));
            }
        }
        options = options
            .with("compress", m)
            .with("rng", RNG_ALGORITHM)
            .with("samples", args.samples)
            .with("seed", args.seed);
    }
    let mut table = Table::new(&["order", "value", "haar_mean", "haar_std_error", "principal_mean", "principal_std_error"]);
    let mut records = Vec::new();
    for (k, &value) in values.iter().enumerate() {
        let (hm, hs, pm, ps) = if args.compress.is_some() {
            let (h, p) = (haar[k].estimate(), principal[k].estimate());
            (Some(h.mean.re), Some(h.std_error), Some(p.mean.re), Some(p.std_error))
        } else {
            (None, None, None, None)
        };
        table.push(vec![(k + 1).into(), value.into(), hm.into(), hs.into(), pm.into(), ps.into()]);
        records.push(Value::from(
            Object::new()
                .with("haar_mean", hm)
                .with("haar_std_error", hs)
                .with("order", k + 1)
                .with("principal_mean", pm)
                .with("principal_std_error", ps)
                .with("value", value),
        ));
    }
    let results = Object::new()
        .with("eigenvalues", sample.eigenvalues().to_vec())
        .with("polykays", Value::List(records));
    Ok(Report { convention, options, results: results.into(), table, warnings: Vec::new() })
}

fn necklaces(args: &NecklaceArgs, inv: &mut Invocation<'_>) -> Result<Report> {
    let total: usize = args.kind.iter().sum();
    if total == 0 {
        return Err(Error::InvalidParameter("kind: at least one symbol is required".into()));
    }
    Budget::check("necklace length", total, budget::current().joint_order)?;
    let list = necklaces_of_kind(&args.kind);
    let mut table = Table::new(&["representative", "lyndon", "repetitions", "rotations"]);
    for a in &list {
        table.push(vec![
            format_word(a.representative()).into(),
            a.is_lyndon().into(),
            a.repetitions().into(),
            a.block_length().into(),
        ]);
    }
    let results = Object::new()
        .with("count", list.len())
        .with("kind", args.kind.clone())
        .with("necklaces", table.to_records());
    Ok(Report {
        convention: inv.convention_flag.unwrap_or_default(),
        options: Object::new().with("kind", args.kind.clone()),
        results: results.into(),
        table,
        warnings: Vec::new(),
    })
}

const CUMULANT_BATCHES: usize = 100;

fn mc_verify(args: &McArgs, inv: &mut Invocation<'_>) -> Result<Report> {
    let (doc, convention) = load(inv, &args.params_file)?;
    let params = doc.params(Convention::Standard)?;
    let mut warnings = params.warnings();
    if convention != Convention::Standard {
        warnings.push(format!(
            "closed forms are evaluated in the standard convention, the one Monte Carlo samples (input asked for {convention})"
        ));
    }
    if args.samples < MIN_SAMPLES {
        return Err(Error::InvalidParameter(format!("samples: at least {MIN_SAMPLES} are required")));
    }
    let mut rng = RngStream::new(args.seed, 0);
    let mut table = Table::new(&["quantity", "exact", "estimate", "std_error", "z_score"]);
    let push = |table: &mut Table, name: String, exact: C64, est: crate::mc::Estimate| {
        table.push(vec![name.into(), exact.into(), est.mean.into(), est.std_error.into(), est.z_score(exact).into()]);
    };
    let cumulants = estimate_trace_cumulants(&params, None, 3, args.samples, CUMULANT_BATCHES, &mut rng)?;
    for (k, est) in cumulants.into_iter().enumerate() {
        push(&mut table, format!("cumulant_{}", k + 1), noncentral_cumulant(&params, k + 1)?, est);
    }
    if let Some(i) = doc.index(args.index.as_deref()) {
        let h = doc.directions()?;
        let est = estimate_joint_moment(&params, &h, &i, args.samples, &mut rng)?;
        push(&mut table, format!("joint_moment_{}", index_text(&i)), joint_moment(&params, &h, &i)?, est);
    }
    let mut options = Object::new()
        .with("rng", RNG_ALGORITHM)
        .with("samples", args.samples)
        .with("seed", args.seed)
        .with("stream_id", 0usize);
    if let Some(identity) = args.identity {
        let report = distribution_identity_check(&params, &params, identity, args.samples, &mut rng)?;
        for row in &report.rows {
            table.push(vec![
                format!("{}_order_{}", identity.as_str(), row.order).into(),
                row.right.mean.into(),
                row.left.mean.into(),
                (row.left.std_error.hypot(row.right.std_error)).into(),
                row.z_score.into(),
            ]);
        }
        options.insert("identity", identity.as_str());
    }
    Ok(Report {
        convention: Convention::Standard,
        options,
        results: table.to_records(),
        table,
        warnings,
    })
}
