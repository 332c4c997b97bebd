use std::fmt::Write as _;
use std::path::Path;
use std::sync::Arc;

use contraction_core::{
    classify_all, fixtures, line_sample_space, parse_document, parse_instance,
    picard_solve_with_lambda, random_search, theorem_check, write_instance, ClassReport,
    ContractionClass, Error, Rational, SelfMap, SeparationPredicate, Terminus,
};
use serde_json::json;
use sha2::{Digest, Sha256};

use crate::report::{to_value, RunReport, EXIT_NEGATIVE, EXIT_OK, EXIT_USAGE};
use crate::{Generator, InputArgs};

fn digest(bytes: &[u8]) -> String {
    format!("sha256:{}", hex::encode(Sha256::digest(bytes)))
}

fn read_file(command: &str, path: &Path) -> Result<(Vec<u8>, String), RunReport> {
    let bytes = std::fs::read(path).map_err(|e| {
        RunReport::new(command, String::new())
            .error(EXIT_USAGE, format!("cannot read {}: {e}", path.display()))
    })?;
    let text = String::from_utf8(bytes.clone()).map_err(|_| {
        RunReport::new(command, digest(&bytes))
            .error(EXIT_USAGE, format!("{} is not UTF-8", path.display()))
    })?;
    Ok((bytes, text))
}

fn invalid_metric(mut report: RunReport, err: Error) -> RunReport {
    match err {
        Error::InvalidMetric(violations) => {
            let mut text = String::from("invalid metric:\n");
            for v in &violations {
                writeln!(text, "  {v}").unwrap();
            }
            report.text = text;
            report.results = json!({ "violations": to_value(&violations) });
            report.exit_code = EXIT_NEGATIVE;
            report
        }
        other => report.error(EXIT_USAGE, other.to_string()),
    }
}

fn parse_list(spec: &str) -> Result<Vec<Rational>, String> {
    spec.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| s.parse::<Rational>().map_err(|e| e.to_string()))
        .collect()
}

fn build_generated(input: &InputArgs, generator: Generator) -> Result<SelfMap, String> {
    let grid = parse_list(&input.grid.replace(':', ","))?;
    let [start, stop, step] = <[Rational; 3]>::try_from(grid)
        .map_err(|_| format!("grid {:?} is not start:stop:step", input.grid))?;
    let extra = parse_list(&input.extra)?;
    match generator {
        Generator::Step2 => {
            let space =
                line_sample_space(&start, &stop, &step, &extra).map_err(|e| e.to_string())?;
            fixtures::step2(Arc::new(space)).map_err(|e| e.to_string())
        }
    }
}

/// Reads the map from the file or generator. The error variant is a
/// finished report.
fn load_map(command: &str, input: &InputArgs) -> Result<(SelfMap, String), RunReport> {
    if let Some(generator) = input.generator {
        let descr = format!("generator step2 grid={} extra={}", input.grid, input.extra);
        let digest = digest(descr.as_bytes());
        let map = build_generated(input, generator)
            .map_err(|e| RunReport::new(command, digest.clone()).error(EXIT_USAGE, e))?;
        return Ok((map, digest));
    }
    let path = input
        .file
        .as_deref()
        .expect("clap requires a file without a generator");
    let (bytes, text) = read_file(command, path)?;
    let digest = digest(&bytes);
    let report = || RunReport::new(command, digest.clone());
    let instance = parse_instance(&text).map_err(|e| invalid_metric(report(), e))?;
    let map = instance.map.ok_or_else(|| {
        report().error(EXIT_USAGE, format!("{} has no map stanza", path.display()))
    })?;
    Ok((map, digest))
}

pub fn validate(path: &Path) -> RunReport {
    let (bytes, text) = match read_file("validate", path) {
        Ok(x) => x,
        Err(report) => return report,
    };
    let mut report = RunReport::new("validate", digest(&bytes));
    let doc = match parse_document(&text) {
        Ok(doc) => doc,
        Err(e) => return report.error(EXIT_USAGE, e.to_string()),
    };
    let violations = doc.violations();
    if violations.is_empty() {
        report.text = format!("valid metric space with {} points\n", doc.points.len());
    } else {
        report.text = format!("{} violation(s):\n", violations.len());
        for v in &violations {
            writeln!(report.text, "  {v}").unwrap();
        }
        report.exit_code = EXIT_NEGATIVE;
    }
    report.results = json!({ "points": doc.points.len(), "violations": to_value(&violations) });
    report
}

fn parse_classes(spec: &str) -> Result<Vec<ContractionClass>, String> {
    if spec.trim() == "all" {
        return Ok(ContractionClass::ALL.to_vec());
    }
    let mut out = Vec::new();
    for name in spec.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let class = name
            .parse::<ContractionClass>()
            .map_err(|e| e.to_string())?;
        if !out.contains(&class) {
            out.push(class);
        }
    }
    Ok(out)
}

fn class_line(r: &ClassReport) -> String {
    let witness = r
        .witness
        .as_ref()
        .map_or("-".to_string(), |w| w.to_string());
    let mut line = format!(
        "{:<23} lambda*={:<10} bound={:<4} member={:<5} witness={}",
        r.class.name(),
        r.lambda_star.to_string(),
        r.bound.to_string(),
        r.member,
        witness
    );
    if r.degenerate {
        line.push_str(" degenerate");
    }
    if r.sampled {
        line.push_str(" sampled");
    }
    line
}

pub fn classify(input: &InputArgs, classes: &str) -> RunReport {
    let (map, digest) = match load_map("classify", input) {
        Ok(x) => x,
        Err(report) => return report,
    };
    let mut report = RunReport::new("classify", digest);
    let classes = match parse_classes(classes) {
        Ok(c) if !c.is_empty() => c,
        Ok(_) => return report.error(EXIT_USAGE, "no classes given"),
        Err(e) => return report.error(EXIT_USAGE, e),
    };
    let mut reports = Vec::new();
    for class in classes {
        match contraction_core::classify(&map, class) {
            Ok(r) => reports.push(r),
            Err(e) => return report.error(EXIT_USAGE, e.to_string()),
        }
    }
    for r in &reports {
        writeln!(report.text, "{}", class_line(r)).unwrap();
    }
    report.exit_code = if reports.iter().all(|r| r.member) {
        EXIT_OK
    } else {
        EXIT_NEGATIVE
    };
    report.results = to_value(&reports);
    report
}

pub fn solve(
    input: &InputArgs,
    start: &str,
    max_steps: Option<usize>,
    lambda: Option<&str>,
) -> RunReport {
    let (map, digest) = match load_map("solve", input) {
        Ok(x) => x,
        Err(report) => return report,
    };
    let mut report = RunReport::new("solve", digest);
    let lambda = match lambda.map(str::parse::<Rational>).transpose() {
        Ok(l) => l,
        Err(e) => return report.error(EXIT_USAGE, e.to_string()),
    };
    let steps = max_steps.unwrap_or(map.space().len() + 1);
    let (orbit, cert) = match picard_solve_with_lambda(&map, start, steps, lambda) {
        Ok(x) => x,
        Err(e) => return report.error(EXIT_USAGE, e.to_string()),
    };
    let space = map.space();
    let mut names: Vec<&str> = orbit
        .sequence
        .iter()
        .map(|&i| space.point(i).as_str())
        .collect();
    if matches!(orbit.terminus, Terminus::ReachedFixedPoint { .. }) {
        names.pop();
    }
    let text = &mut report.text;
    writeln!(text, "orbit: {}", names.join(" → ")).unwrap();
    match &orbit.terminus {
        Terminus::ReachedFixedPoint { point, steps } => {
            writeln!(text, "terminus: fixed point {point} in {steps} step(s)").unwrap()
        }
        Terminus::EnteredCycle { cycle, entry } => {
            let c: Vec<&str> = cycle.iter().map(|p| p.as_str()).collect();
            writeln!(
                text,
                "terminus: entered cycle [{}] at index {entry}",
                c.join(", ")
            )
            .unwrap()
        }
        Terminus::Truncated { max_steps } => {
            writeln!(text, "terminus: truncated after {max_steps} step(s)").unwrap()
        }
    }
    writeln!(text, "lambda: {}", cert.lambda).unwrap();
    let alpha = cert
        .alpha
        .as_ref()
        .map_or("undefined".to_string(), |a| a.to_string());
    let range_note = if cert.in_range {
        ""
    } else {
        " (lambda >= 1/2: certificate not meaningful)"
    };
    writeln!(text, "alpha: {alpha}{range_note}").unwrap();
    writeln!(text, "n\td_n\tapplicable\talpha*d_(n-1)").unwrap();
    for s in &cert.d_sequence {
        let bound = s.bound.as_ref().map_or("-".to_string(), |b| b.to_string());
        let applicable = if s.applicable { "yes" } else { "no" };
        writeln!(text, "{}\t{}\t{}\t{}", s.index, s.d, applicable, bound).unwrap();
    }
    if cert.violations.is_empty() {
        writeln!(text, "violations: none").unwrap();
    } else {
        let v: Vec<String> = cert.violations.iter().map(|n| n.to_string()).collect();
        writeln!(text, "violations: {}", v.join(", ")).unwrap();
    }
    let reached = matches!(orbit.terminus, Terminus::ReachedFixedPoint { .. });
    report.exit_code = if reached && cert.violations.is_empty() {
        EXIT_OK
    } else {
        EXIT_NEGATIVE
    };
    let orbit_names: Vec<&str> = orbit
        .sequence
        .iter()
        .map(|&i| space.point(i).as_str())
        .collect();
    report.results = json!({
        "orbit": orbit_names,
        "terminus": to_value(&orbit.terminus),
        "certificate": to_value(&cert),
    });
    report
}

pub fn check_theorem(input: &InputArgs) -> RunReport {
    let (map, digest) = match load_map("check-theorem", input) {
        Ok(x) => x,
        Err(report) => return report,
    };
    let mut report = RunReport::new("check-theorem", digest);
    let verdict = match theorem_check(&map) {
        Ok(v) => v,
        Err(e) => return report.error(EXIT_USAGE, e.to_string()),
    };
    let fixed: Vec<&str> = verdict.fixed_point_set.iter().map(|p| p.as_str()).collect();
    let text = &mut report.text;
    writeln!(
        text,
        "hypothesis (i) no period-2 points: {}",
        verdict.hypothesis_i
    )
    .unwrap();
    writeln!(
        text,
        "hypothesis (ii) generalized Chatterjea: {}",
        verdict.hypothesis_ii
    )
    .unwrap();
    writeln!(text, "fixed points: {{{}}}", fixed.join(", ")).unwrap();
    let status = if !verdict.hypotheses_hold() {
        "not asserted (hypotheses fail)"
    } else if verdict.conclusion_holds {
        "holds"
    } else {
        "FALSIFIED"
    };
    writeln!(text, "conclusion: {status}").unwrap();
    if let Some(c) = &verdict.counterexample {
        writeln!(text, "counterexample: {c}").unwrap();
    }
    report.exit_code = if verdict.falsified() {
        EXIT_NEGATIVE
    } else {
        EXIT_OK
    };
    report.results = to_value(&verdict);
    report
}

pub struct SearchOpts<'a> {
    pub points: usize,
    pub trials: u64,
    pub seed: u64,
    pub require: &'a str,
    pub exclude: &'a str,
    pub hypothesis_i: Option<bool>,
    pub out: Option<&'a Path>,
}

pub fn search(opts: &SearchOpts<'_>) -> RunReport {
    let descr = format!(
        "search points={} trials={} seed={} require={} exclude={} hypothesis_i={:?}",
        opts.points, opts.trials, opts.seed, opts.require, opts.exclude, opts.hypothesis_i
    );
    let mut report = RunReport::new("search", digest(descr.as_bytes()));
    let parse = |s: &str| {
        if s.trim().is_empty() {
            Ok(Vec::new())
        } else {
            parse_classes(s)
        }
    };
    let (require, exclude) = match (parse(opts.require), parse(opts.exclude)) {
        (Ok(r), Ok(e)) => (r, e),
        (Err(e), _) | (_, Err(e)) => return report.error(EXIT_USAGE, e),
    };
    let predicate = match SeparationPredicate::new(require, exclude, opts.hypothesis_i) {
        Ok(p) => p,
        Err(e) => return report.error(EXIT_USAGE, e.to_string()),
    };
    let result = match random_search(opts.points, opts.trials, opts.seed, &predicate) {
        Ok(r) => r,
        Err(e) => return report.error(EXIT_USAGE, e.to_string()),
    };
    let Some(found) = result.found else {
        report.text = format!(
            "no instance found in {} trial(s), seed {}\n",
            result.trials_used, result.seed
        );
        report.results =
            json!({ "found": false, "trials_used": result.trials_used, "seed": result.seed });
        report.exit_code = EXIT_NEGATIVE;
        return report;
    };

    let instance = write_instance(&found.map);
    let reverified = parse_instance(&instance)
        .ok()
        .and_then(|i| i.map)
        .and_then(|m| classify_all(&m).ok())
        .is_some_and(|r| r == found.reports);

    let text = &mut report.text;
    writeln!(
        text,
        "found at trial {} (seed {})",
        found.trial, result.seed
    )
    .unwrap();
    for r in &found.reports {
        writeln!(text, "{}", class_line(r)).unwrap();
    }
    writeln!(text, "re-verified after round-trip: {reverified}").unwrap();
    match opts.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &instance) {
                return report.error(EXIT_USAGE, format!("cannot write {}: {e}", path.display()));
            }
            writeln!(report.text, "instance written to {}", path.display()).unwrap();
        }
        None => report.text.push_str(&instance),
    }
    report.results = json!({
        "found": true,
        "trial": found.trial,
        "trials_used": result.trials_used,
        "seed": result.seed,
        "reports": to_value(&found.reports),
        "verdict": to_value(&found.verdict),
        "reverified": reverified,
        "instance": instance,
    });
    report.exit_code = if reverified { EXIT_OK } else { EXIT_NEGATIVE };
    report
}
