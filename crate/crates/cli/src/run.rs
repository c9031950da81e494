//! Subcommand dispatch: each handler turns one parsed job document into a
//! [`Report`]. Input problems come back as `Err(CliError)` and exit 3;
//! mathematical outcomes are always a report (PASS, FAIL, or INCONCLUSIVE).

use num_complex::Complex64;
use serde::Deserialize;
use serde_json::json;

use dmu_corona::{
    check_identities, default_degree_cap, dmu_norm_sq, local_dirichlet,
    local_dirichlet_quadrature, mult_norm, solve, verify_certificate, verify_witness, Budget,
    CaseTag, CoronaCertificate, CoronaError, CoronaProblem, DirichletError, StableRankError,
    UnimodularPair, UnitCirclePoint,
};

use crate::export;
use crate::input::{
    self, CliError, Config, Envelope, ErrorCode, MeasureInput, PolyInput, TupleInput,
};
use crate::report::{poly_json, tuple_json, Report, ReportBuilder};
use crate::suite;

/// Parse the job text and dispatch to the named subcommand.
pub fn run(command: &str, text: &str) -> Result<Report, CliError> {
    let envelope = input::parse_envelope(text, command)?;
    let config = input::resolve(&envelope.params)?;
    match command {
        "norm" => norm(&envelope, &config),
        "ldi" => ldi(&envelope, &config),
        "multnorm" => multnorm(&envelope, &config),
        "corona" => corona(&envelope, &config),
        "koszul-check" => koszul_check(&envelope),
        "reduce" => reduce(&envelope, &config),
        "verify-suite" => suite::verify_suite(&config),
        "grid-export" => grid_export(&envelope, &config),
        other => Err(CliError::new(
            ErrorCode::InvalidParam,
            format!("unknown command {other:?}"),
        )),
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct NormInputs {
    poly: PolyInput,
    measure: MeasureInput,
}

fn norm(envelope: &Envelope, _config: &Config) -> Result<Report, CliError> {
    let inputs: NormInputs = input::parse_inputs(envelope)?;
    let p = inputs.poly.to_polynomial()?;
    let mu = inputs.measure.to_measure()?;

    let value = dmu_norm_sq(&p, &mu);
    let mut b = ReportBuilder::new("norm");
    b.check("dmu_norm_sq", value, value.is_finite());
    b.info("h2_norm_sq", p.h2_norm_sq());
    for (i, atom) in mu.atoms().iter().enumerate() {
        b.info(
            &format!("local_dirichlet_atom_{}", i + 1),
            local_dirichlet(&p, &atom.zeta),
        );
    }
    Ok(b.finish())
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct LdiInputs {
    poly: PolyInput,
    zeta: [f64; 2],
}

fn ldi(envelope: &Envelope, config: &Config) -> Result<Report, CliError> {
    let inputs: LdiInputs = input::parse_inputs(envelope)?;
    let p = inputs.poly.to_polynomial()?;
    let zeta = input::to_circle_point(inputs.zeta)?;

    let exact = local_dirichlet(&p, &zeta);
    let tol_target = (1e-3 * exact).max(1e-4);
    let quad_tol = config.quad_tol.unwrap_or(tol_target / 2.0);

    let mut b = ReportBuilder::new("ldi");
    b.info("local_dirichlet", exact);
    match local_dirichlet_quadrature(&p, &zeta, quad_tol) {
        Ok(quadrature) => {
            let deviation = (quadrature - exact).abs();
            b.info("quadrature", quadrature);
            b.check("deviation", deviation, deviation <= tol_target);
        }
        Err(DirichletError::QuadratureCap {
            best_estimate,
            error_estimate,
        }) => {
            b.info("best_estimate", best_estimate);
            b.info("error_estimate", error_estimate);
            b.inconclusive();
        }
    }
    Ok(b.finish())
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct MultnormInputs {
    tuple: TupleInput,
    measure: MeasureInput,
}

fn multnorm(envelope: &Envelope, config: &Config) -> Result<Report, CliError> {
    let inputs: MultnormInputs = input::parse_inputs(envelope)?;
    let tuple = inputs.tuple.to_tuple()?;
    let mu = inputs.measure.to_measure()?;

    let est = mult_norm(&tuple, &mu, config.trial_degree);
    let mut b = ReportBuilder::new("multnorm");
    b.check("mult_norm_lower", est.lower, est.lower <= est.upper + 1e-9);
    b.check("mult_norm_upper", est.upper, est.upper.is_finite());
    b.info("trial_degree", est.trial_degree as f64);
    if let Some(detail) = &est.detail {
        b.artifact(
            "detail",
            json!({
                "s_inf": { "lower": detail.s_inf.lower, "upper": detail.s_inf.upper },
                "t_per_atom": detail.t_per_atom,
            }),
        );
    }
    Ok(b.finish())
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct CoronaInputs {
    tuple: TupleInput,
    measure: MeasureInput,
}

fn corona(envelope: &Envelope, config: &Config) -> Result<Report, CliError> {
    let inputs: CoronaInputs = input::parse_inputs(envelope)?;
    let tuple = inputs.tuple.to_tuple()?;
    let mu = inputs.measure.to_measure()?;

    let mut b = ReportBuilder::new("corona");
    let problem = match CoronaProblem::new(tuple, mu) {
        Ok(p) => p,
        Err(e) => return Ok(corona_failure(b, &e)),
    };
    let degree_cap = config
        .degree_cap
        .unwrap_or_else(|| default_degree_cap(&problem.tuple));

    let cert = match solve(&problem, degree_cap) {
        Ok(cert) => cert,
        Err(
            e @ (CoronaError::DegreeCapExceeded { .. }
            | CoronaError::NotABezoutSolution { .. }
            | CoronaError::LinearSolve(_)),
        ) => {
            // The search gave out without disproving solvability.
            b.inconclusive();
            b.info("degree_cap", degree_cap as f64);
            b.artifact("error", json!(e.to_string()));
            return Ok(b.finish());
        }
        Err(e) => return Ok(corona_failure(b, &e)),
    };

    let report = verify_certificate(&problem, &cert);
    b.check(
        "residual_max_coeff",
        report.residual_max_coeff,
        report.residual_ok,
    );
    b.check("min_atom_value", report.min_atom_value, report.atom_condition_ok);
    let chain_excess = cert
        .chain
        .iter()
        .map(|r| r.b_norm_lower - r.bound_value)
        .fold(f64::NEG_INFINITY, f64::max);
    b.check("chain_excess", chain_excess, report.chain_ok);
    b.info("eps_sq_lower", cert.epsilon.eps_sq_lower);
    b.info("scaled_eps_sq_lower", cert.scaled_eps_sq_lower);
    b.info("scaling", cert.scaling);
    b.artifact("solution", tuple_json(&cert.solution));
    b.artifact("chain", chain_json(&cert));
    b.artifact("mode", mode_json(&cert));
    if cert.scaled_eps_sq_lower <= 0.0 {
        // Solution in hand, but no certified corona bound to control norms.
        b.inconclusive();
    }
    Ok(b.finish())
}

/// Definite negative outcomes: the problem itself rules out a solution (a
/// common zero, a zero tuple) or the certificate chain hit a vanishing
/// point. Reported as FAIL, not as an input error.
fn corona_failure(mut b: ReportBuilder, error: &CoronaError) -> Report {
    let value = match error {
        CoronaError::VanishesAtLiftPoint { value_sq } => *value_sq,
        _ => 0.0,
    };
    b.check("solvable", value, false);
    b.artifact("error", json!(error.to_string()));
    if let CoronaError::CommonRootInDisk { root } = error {
        b.artifact("common_root", json!([root.re, root.im]));
    }
    b.finish()
}

fn chain_json(cert: &CoronaCertificate) -> serde_json::Value {
    let records: Vec<serde_json::Value> = cert
        .chain
        .iter()
        .map(|r| {
            json!({
                "zeta": [r.atom.zeta.value().re, r.atom.zeta.value().im],
                "weight": r.atom.weight,
                "phi_at_atom_sq": r.phi_at_atom_sq,
                "e_norm_upper": r.e_norm_upper,
                "b_norm_lower": r.b_norm_lower,
                "bound_value": r.bound_value,
            })
        })
        .collect();
    json!(records)
}

fn mode_json(cert: &CoronaCertificate) -> serde_json::Value {
    match &cert.mode {
        dmu_corona::BezoutMode::Exact => json!({ "mode": "exact" }),
        dmu_corona::BezoutMode::Approx { boundary_residual } => json!({
            "mode": "approx",
            "boundary_residual": {
                "lower": boundary_residual.lower,
                "upper": boundary_residual.upper,
            },
        }),
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct KoszulInputs {
    a: Vec<[f64; 2]>,
    d: Vec<[f64; 2]>,
}

fn koszul_check(envelope: &Envelope) -> Result<Report, CliError> {
    let inputs: KoszulInputs = input::parse_inputs(envelope)?;
    let a: Vec<Complex64> = inputs.a.iter().map(|&[re, im]| Complex64::new(re, im)).collect();
    let d: Vec<Complex64> = inputs.d.iter().map(|&[re, im]| Complex64::new(re, im)).collect();

    let deviations = check_identities(&a, &d)
        .map_err(|e| CliError::new(ErrorCode::InvalidParam, e.to_string()))?;

    let amax = a.iter().map(|c| c.norm()).fold(0.0f64, f64::max);
    let dmax = d.iter().map(|c| c.norm()).fold(0.0f64, f64::max);
    let scale = a.len() as f64 * (1.0 + amax) * (1.0 + amax + dmax);
    let tol = 1e-12 * scale;

    let mut b = ReportBuilder::new("koszul-check");
    b.check("kernel_deviation", deviations.kernel, deviations.kernel <= tol);
    b.check("gram_deviation", deviations.gram, deviations.gram <= tol);
    b.check("mixed_deviation", deviations.mixed, deviations.mixed <= tol);
    b.info("tolerance", tol);
    Ok(b.finish())
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ReduceInputs {
    f: PolyInput,
    h: PolyInput,
    measure: MeasureInput,
}

fn reduce(envelope: &Envelope, config: &Config) -> Result<Report, CliError> {
    let inputs: ReduceInputs = input::parse_inputs(envelope)?;
    let f = inputs.f.to_polynomial()?;
    let h = inputs.h.to_polynomial()?;
    let mu = inputs.measure.to_measure()?;

    let mut b = ReportBuilder::new("reduce");
    let pair = match UnimodularPair::new(f, h, mu) {
        Ok(pair) => pair,
        Err(StableRankError::EtaNotCertified { lower }) => {
            b.info("eta_lower", lower);
            b.inconclusive();
            b.artifact("error", json!("eta lower bound not certified positive"));
            return Ok(b.finish());
        }
        Err(e) => return Err(CliError::new(ErrorCode::InvalidParam, e.to_string())),
    };
    let budget = Budget {
        max_degree: config.max_degree,
        max_iters: config.max_iters,
        seed: config.seed,
        margin: config.root_margin,
    };

    b.info("eta_lower", pair.eta_lower.lower);
    match pair.reduce(&budget) {
        Ok(Some(witness)) => {
            let wr = verify_witness(&pair.f, &pair.h, &witness);
            b.check("identity_distance", wr.identity_distance, wr.identity_ok);
            b.check(
                "root_margin",
                witness.root_margin,
                wr.margin_ok && wr.margin_positive,
            );
            b.artifact(
                "witness",
                json!({
                    "y": poly_json(&witness.y),
                    "u": poly_json(&witness.u),
                    "root_margin": witness.root_margin,
                    "case_trace": trace_json(&witness.case_trace),
                }),
            );
        }
        Ok(None) => {
            b.inconclusive();
            b.artifact("error", json!("no reducer found within the search budget"));
        }
        Err(StableRankError::InvalidBudget(message)) => {
            return Err(CliError::new(ErrorCode::InvalidParam, message));
        }
        Err(e) => {
            b.inconclusive();
            b.artifact("error", json!(e.to_string()));
        }
    }
    Ok(b.finish())
}

fn trace_json(trace: &[CaseTag]) -> serde_json::Value {
    let entries: Vec<serde_json::Value> = trace
        .iter()
        .map(|tag| {
            let (case, zeta): (u8, &UnitCirclePoint) = match tag {
                CaseTag::Case1 { zeta } => (1, zeta),
                CaseTag::Case2 { zeta } => (2, zeta),
            };
            json!({ "case": case, "zeta": [zeta.value().re, zeta.value().im] })
        })
        .collect();
    json!(entries)
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct GridInputs {
    tuple: TupleInput,
    #[serde(default)]
    solution: Option<TupleInput>,
}

fn grid_export(envelope: &Envelope, config: &Config) -> Result<Report, CliError> {
    let inputs: GridInputs = input::parse_inputs(envelope)?;
    let tuple = inputs.tuple.to_tuple()?;

    let csv = export::sum_sq_csv(&tuple, config.resolution, config.angles);
    let mut b = ReportBuilder::new("grid-export");
    b.info("resolution", config.resolution as f64);
    b.info("angles", config.angles as f64);
    b.info("rows", (config.resolution * config.angles) as f64);
    match &config.out {
        Some(path) => {
            std::fs::write(path, &csv).map_err(|e| {
                CliError::new(ErrorCode::IoError, format!("writing {path}: {e}"))
            })?;
            b.artifact("csv_path", json!(path));
        }
        None => {
            b.artifact("csv", json!(csv));
        }
    }
    if let Some(solution) = &inputs.solution {
        let solution = solution.to_tuple()?;
        let csv = export::solution_csv(&solution, config.resolution, config.angles);
        b.artifact("solution_csv", json!(csv));
    }
    Ok(b.finish())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn worked_corona_job() {
        let job = r#"{
            "command": "corona",
            "inputs": {
                "tuple": { "entries": [
                    { "coeffs": [[0,0],[1,0]] },
                    { "coeffs": [[1,0],[-1,0]] }
                ]},
                "measure": { "atoms": [ { "zeta": [1,0], "weight": 1 } ] }
            }
        }"#;
        let report = run("corona", job).unwrap();
        assert_eq!(report.exit_code(), 0);
        let solution = &report.artifacts["solution"]["entries"];
        let b1: Vec<Vec<f64>> =
            serde_json::from_value(solution[0]["coeffs"].clone()).unwrap();
        assert!((b1[0][0] - 2.0).abs() < 1e-9 && (b1[1][0] + 1.0).abs() < 1e-9);
    }

    #[test]
    fn command_mismatch_is_reported() {
        let err = run("ldi", r#"{ "command": "norm", "inputs": {} }"#).unwrap_err();
        assert_eq!(err.code, ErrorCode::CommandMismatch);
    }

    #[test]
    fn common_zero_fails_rather_than_errors() {
        let job = r#"{
            "inputs": {
                "tuple": { "entries": [
                    { "coeffs": [[0,0],[1,0]] },
                    { "coeffs": [[0,0],[0,0],[1,0]] }
                ]},
                "measure": { "atoms": [ { "zeta": [1,0], "weight": 1 } ] }
            }
        }"#;
        let report = run("corona", job).unwrap();
        assert_eq!(report.exit_code(), 1);
        assert!(report.artifacts.contains_key("common_root"));
    }
}
