//! Polar-grid CSV export of `sum_j |phi_j(z)|^2` and, optionally, the
//! entrywise moduli of a solution tuple, for plotting outside the tool.

use num_complex::Complex64;

use dmu_corona::FunctionTuple;

fn grid_points(resolution: usize, angles: usize) -> Vec<(f64, f64)> {
    let mut points = Vec::with_capacity(resolution * angles);
    for k in 0..resolution {
        let r = k as f64 / (resolution - 1) as f64;
        for j in 0..angles {
            let theta = -std::f64::consts::PI
                + 2.0 * std::f64::consts::PI * j as f64 / angles as f64;
            points.push((r, theta));
        }
    }
    points
}

/// Rows `r,theta,re_z,im_z,sum_sq`, r-major with radii `k/(resolution-1)`.
/// Output bytes are a pure function of the inputs.
pub fn sum_sq_csv(tuple: &FunctionTuple, resolution: usize, angles: usize) -> String {
    let mut out = String::from("r,theta,re_z,im_z,sum_sq\n");
    for (r, theta) in grid_points(resolution, angles) {
        let z = Complex64::from_polar(r, theta);
        let value = tuple.sum_abs_sq_at(z);
        out.push_str(&format!("{},{},{},{},{}\n", r, theta, z.re, z.im, value));
    }
    out
}

/// Rows `r,theta,re_z,im_z,abs_b1,...,abs_bn` over the same grid.
pub fn solution_csv(solution: &FunctionTuple, resolution: usize, angles: usize) -> String {
    let mut out = String::from("r,theta,re_z,im_z");
    for j in 1..=solution.len() {
        out.push_str(&format!(",abs_b{j}"));
    }
    out.push('\n');
    for (r, theta) in grid_points(resolution, angles) {
        let z = Complex64::from_polar(r, theta);
        out.push_str(&format!("{},{},{},{}", r, theta, z.re, z.im));
        for value in solution.eval(z) {
            out.push_str(&format!(",{}", value.norm()));
        }
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use dmu_corona::Polynomial;

    #[test]
    fn constant_tuple_exports_ones() {
        let tuple = FunctionTuple::new(vec![Polynomial::one()]);
        let csv = sum_sq_csv(&tuple, 2, 4);
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "r,theta,re_z,im_z,sum_sq");
        assert_eq!(lines.len(), 1 + 2 * 4);
        for line in &lines[1..] {
            assert!(line.ends_with(",1"), "{line}");
        }
    }

    #[test]
    fn worked_row_value() {
        let tuple = FunctionTuple::new(vec![
            Polynomial::from_real(&[0.0, 1.0]),
            Polynomial::from_real(&[1.0, -1.0]),
        ]);
        // resolution 3, angles 4: the r = 0.5, theta = 0 row is z = 0.5
        let csv = sum_sq_csv(&tuple, 3, 4);
        let row = csv
            .lines()
            .find(|l| l.starts_with("0.5,0,"))
            .expect("grid row at z = 0.5");
        let value: f64 = row.rsplit(',').next().unwrap().parse().unwrap();
        assert!((value - 0.5).abs() < 1e-12);
    }

    #[test]
    fn export_is_deterministic() {
        let tuple = FunctionTuple::new(vec![Polynomial::from_pairs(&[(0.3, -0.2), (0.0, 1.0)])]);
        assert_eq!(sum_sq_csv(&tuple, 5, 7), sum_sq_csv(&tuple, 5, 7));
        assert_eq!(solution_csv(&tuple, 5, 7), solution_csv(&tuple, 5, 7));
    }
}
