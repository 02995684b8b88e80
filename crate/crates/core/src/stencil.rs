//! Shared finite-difference stencils: second-order centered derivatives with
//! one-sided closures at the ends.

use num_complex::Complex64;

pub(crate) fn derivative(values: &[Complex64], spacing: f64) -> Vec<Complex64> {
    let n = values.len();
    let inv_2h = 1.0 / (2.0 * spacing);
    let mut out = vec![Complex64::default(); n];
    for i in 1..n - 1 {
        out[i] = (values[i + 1] - values[i - 1]) * inv_2h;
    }
    out[0] = (-3.0 * values[0] + 4.0 * values[1] - values[2]) * inv_2h;
    out[n - 1] = (3.0 * values[n - 1] - 4.0 * values[n - 2] + values[n - 3]) * inv_2h;
    out
}

pub(crate) fn derivative_real(values: &[f64], spacing: f64) -> Vec<f64> {
    let n = values.len();
    let inv_2h = 1.0 / (2.0 * spacing);
    let mut out = vec![0.0; n];
    for i in 1..n - 1 {
        out[i] = (values[i + 1] - values[i - 1]) * inv_2h;
    }
    out[0] = (-3.0 * values[0] + 4.0 * values[1] - values[2]) * inv_2h;
    out[n - 1] = (3.0 * values[n - 1] - 4.0 * values[n - 2] + values[n - 3]) * inv_2h;
    out
}
