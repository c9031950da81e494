//! The `verify-suite` subcommand: one seeded sweep over the library's core
//! guarantees. Items are ordered by name and every value is a deterministic
//! function of the configured seed, so reports diff cleanly across runs.

use num_complex::Complex64;

use dmu_corona::sample::{
    random_circle_point, random_coeff, random_disk_point, random_polynomial,
    random_polynomial_up_to, seeded_rng,
};
use dmu_corona::{
    check_identities, default_degree_cap, eta, local_dirichlet, min_modulus_closed_disk,
    product_rule_slacks, reduce, solve, sup_circle, verify_certificate, verify_witness,
    AtomicMeasure, Budget, CoronaProblem, FunctionTuple, Polynomial, UnitCirclePoint,
};

use crate::input::{CliError, Config, ErrorCode};
use crate::report::{Report, ReportBuilder};

pub fn verify_suite(config: &Config) -> Result<Report, CliError> {
    let mut b = ReportBuilder::new("verify-suite");
    b.info("seed", config.seed as f64);

    let worst = eta_soundness(config.seed);
    b.check("eta_soundness", worst, worst >= -1e-9);

    let worst = evaluation_bound(config.seed);
    b.check("evaluation_bound", worst, worst >= -1e-8);

    let worst = koszul_identities(config.seed);
    b.check("koszul_identities", worst, worst <= 1e-12);

    let worst = local_dirichlet_anchors();
    b.check("local_dirichlet_anchors", worst, worst <= 1e-12);

    let worst = min_modulus_soundness(config.seed);
    b.check("min_modulus_soundness", worst, worst >= -1e-9);

    let worst = product_rule(config.seed);
    b.check("product_rule_slacks", worst, worst >= -1e-10);

    let worst = sup_circle_soundness(config.seed, config.grid_n)?;
    b.check("sup_circle_soundness", worst, worst >= -1e-9);

    let (value, passed) = worked_corona();
    b.check("worked_corona", value, passed);

    let (value, passed) = worked_reduce(config);
    b.check("worked_reduce", value, passed);

    let mut report = b.finish();
    report.items.sort_by(|x, y| x.name.cmp(&y.name));
    Ok(report)
}

/// Smallest `min_samples(|f| + |h|) - eta_lower` over seeded pairs.
fn eta_soundness(seed: u64) -> f64 {
    let mut rng = seeded_rng(seed ^ 0x01);
    let mut worst = f64::INFINITY;
    for k in 0..20 {
        let f = random_polynomial_up_to(&mut rng, 1 + k % 4);
        let h = random_polynomial_up_to(&mut rng, 1 + (k / 4) % 4);
        let bound = eta(&f, &h);
        let mut sampled = f64::INFINITY;
        for _ in 0..200 {
            let z = random_disk_point(&mut rng);
            sampled = sampled.min(f.eval(z).norm() + h.eval(z).norm());
        }
        worst = worst.min(sampled - bound.lower);
    }
    worst
}

/// Smallest `2(||p||^2 + D_zeta(p)) - |p(zeta)|^2` over seeded samples.
fn evaluation_bound(seed: u64) -> f64 {
    let mut rng = seeded_rng(seed ^ 0x02);
    let mut worst = f64::INFINITY;
    for k in 0..100 {
        let p = random_polynomial_up_to(&mut rng, 1 + k % 8);
        let zeta = random_circle_point(&mut rng);
        let slack = 2.0 * (p.h2_norm_sq() + local_dirichlet(&p, &zeta))
            - p.eval(zeta.value()).norm_sqr();
        worst = worst.min(slack);
    }
    worst
}

/// Largest scale-relative deviation of the three Koszul identities over
/// dimensions 2 through 20.
fn koszul_identities(seed: u64) -> f64 {
    let mut rng = seeded_rng(seed ^ 0x03);
    let mut worst = 0.0f64;
    for n in 2..=20 {
        let a: Vec<Complex64> = (0..n).map(|_| random_coeff(&mut rng)).collect();
        let d: Vec<Complex64> = (0..n).map(|_| random_coeff(&mut rng)).collect();
        let deviations = check_identities(&a, &d).expect("matched nonvanishing data");
        let amax = a.iter().map(|c| c.norm()).fold(0.0f64, f64::max);
        let dmax = d.iter().map(|c| c.norm()).fold(0.0f64, f64::max);
        let scale = n as f64 * (1.0 + amax) * (1.0 + amax + dmax);
        let dev = deviations.kernel.max(deviations.gram).max(deviations.mixed);
        worst = worst.max(dev / scale);
    }
    worst
}

/// `D_1(z) = 1` and `D_1(z^2) = 2`, worst absolute deviation.
fn local_dirichlet_anchors() -> f64 {
    let one = UnitCirclePoint::from_angle(0.0);
    let z = Polynomial::from_real(&[0.0, 1.0]);
    let z2 = Polynomial::from_real(&[0.0, 0.0, 1.0]);
    (local_dirichlet(&z, &one) - 1.0)
        .abs()
        .max((local_dirichlet(&z2, &one) - 2.0).abs())
}

/// Smallest `|p(sample)| - min_modulus_lower` over seeded disk samples.
fn min_modulus_soundness(seed: u64) -> f64 {
    let mut rng = seeded_rng(seed ^ 0x04);
    let mut worst = f64::INFINITY;
    for k in 0..50 {
        let p = random_polynomial(&mut rng, 1 + k % 8);
        let Ok(bound) = min_modulus_closed_disk(&p) else {
            continue;
        };
        for _ in 0..200 {
            let z = random_disk_point(&mut rng);
            worst = worst.min(p.eval(z).norm() - bound.lower);
        }
    }
    worst
}

/// Smallest product-rule slack over seeded triples, with a forced vanishing
/// factor every fourth triple so the conditional inequality is exercised.
fn product_rule(seed: u64) -> f64 {
    let mut rng = seeded_rng(seed ^ 0x05);
    let mut worst = f64::INFINITY;
    for k in 0..200 {
        let phi = random_polynomial_up_to(&mut rng, 6);
        let mut f = random_polynomial_up_to(&mut rng, 5);
        let zeta = random_circle_point(&mut rng);
        if k % 4 == 0 {
            let vanish =
                Polynomial::try_new(vec![-zeta.value(), Complex64::new(1.0, 0.0)]).unwrap();
            f = &f * &vanish;
        }
        let slacks = product_rule_slacks(&phi, &f, &zeta);
        worst = worst.min(slacks.product).min(slacks.evaluation);
        if let Some(vanishing) = slacks.vanishing {
            worst = worst.min(vanishing);
        }
    }
    worst
}

/// Smallest `sup_upper - |p(sample)|` over seeded circle samples, with the
/// enclosure ordering folded in.
fn sup_circle_soundness(seed: u64, grid_n: usize) -> Result<f64, CliError> {
    let mut rng = seeded_rng(seed ^ 0x06);
    let mut worst = f64::INFINITY;
    for k in 0..50 {
        let p = random_polynomial_up_to(&mut rng, 1 + k % 8);
        let bound = sup_circle(&p, grid_n).map_err(|e| {
            CliError::new(
                ErrorCode::InvalidParam,
                format!("grid_n {grid_n} is too small for the suite: {e}"),
            )
        })?;
        worst = worst.min(bound.upper - bound.lower);
        for _ in 0..200 {
            let z = random_circle_point(&mut rng).value();
            worst = worst.min(bound.upper - p.eval(z).norm());
        }
    }
    Ok(worst)
}

/// The corona instance with a hand-checked answer: `Phi = (z, 1-z)` over a
/// unit atom at 1 solves to `B = (2-z, 1-z)`.
fn worked_corona() -> (f64, bool) {
    let tuple = FunctionTuple::new(vec![
        Polynomial::from_real(&[0.0, 1.0]),
        Polynomial::from_real(&[1.0, -1.0]),
    ]);
    let mu = AtomicMeasure::new(vec![(Complex64::new(1.0, 0.0), 1.0)]).unwrap();
    let problem = CoronaProblem::new(tuple, mu).unwrap();
    let cap = default_degree_cap(&problem.tuple);
    let Ok(cert) = solve(&problem, cap) else {
        return (f64::INFINITY, false);
    };
    let expected = [
        Polynomial::from_real(&[2.0, -1.0]),
        Polynomial::from_real(&[1.0, -1.0]),
    ];
    let distance = cert
        .solution
        .entries()
        .iter()
        .zip(&expected)
        .map(|(got, want)| got.max_coeff_distance(want))
        .fold(0.0f64, f64::max);
    let verified = verify_certificate(&problem, &cert).passed;
    (distance, distance <= 1e-9 && verified)
}

/// The reduction with a hand-checked answer: `(z, 1-z)` over a unit atom at
/// 1 reduces with `u = (z+2)^3 / 27`.
fn worked_reduce(config: &Config) -> (f64, bool) {
    let f = Polynomial::from_real(&[0.0, 1.0]);
    let h = Polynomial::from_real(&[1.0, -1.0]);
    let mu = AtomicMeasure::new(vec![(Complex64::new(1.0, 0.0), 1.0)]).unwrap();
    let budget = Budget {
        max_degree: 4,
        max_iters: 2000,
        seed: config.seed,
        margin: config.root_margin,
    };
    let Ok(Some(witness)) = reduce(&f, &h, &mu, &budget) else {
        return (f64::INFINITY, false);
    };
    let expected =
        Polynomial::from_real(&[8.0 / 27.0, 12.0 / 27.0, 6.0 / 27.0, 1.0 / 27.0]);
    let distance = witness.u.max_coeff_distance(&expected);
    let verified = verify_witness(&f, &h, &witness).passed;
    (distance, distance <= 1e-8 && verified)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::input::{resolve, Params};

    fn default_config() -> Config {
        resolve(&Params::default()).unwrap()
    }

    #[test]
    fn suite_passes_and_is_deterministic() {
        let config = default_config();
        let first = verify_suite(&config).unwrap();
        let second = verify_suite(&config).unwrap();
        assert_eq!(first.exit_code(), 0);
        assert_eq!(first.to_json_string(), second.to_json_string());
    }

    #[test]
    fn suite_items_are_name_ordered() {
        let report = verify_suite(&default_config()).unwrap();
        let names: Vec<&str> = report.items.iter().map(|i| i.name.as_str()).collect();
        let mut sorted = names.clone();
        sorted.sort_unstable();
        assert_eq!(names, sorted);
        assert!(names.contains(&"worked_corona") && names.contains(&"worked_reduce"));
    }
}
