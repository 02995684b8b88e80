//! Spin-weighted harmonic algebra for the mode reduction.
//!
//! Nothing here evaluates a harmonic pointwise. The mode decomposition only
//! needs the angular Laplacian eigenvalue, the coupling constants of the
//! angular raising/lowering operators appearing in the compacted Maxwell
//! equations, and the per-mode Poincaré gap. The coupling magnitudes are
//! pinned by compatibility with the wave equation satisfied by the middle
//! spin component: composing the two first-order transport equations for the
//! middle component must reproduce the eigenvalue -l(l+1), which forces both
//! coupling products to equal -l(l+1).
//!
//! Sign convention (fixed module-wide): the lowering-side constants are
//! positive, the raising-side constants negative,
//!
//! ```text
//! c_minus = c_prime = +sqrt(l(l+1)),   c_plus = c_dprime = -sqrt(l(l+1)).
//! ```
//!
//! Only the products are physical; all energies are built from squared
//! moduli and are insensitive to this choice.

use crate::error::{Error, Result};

/// One spherical-harmonic mode (l, n). The l = 0 sector is excluded: its
/// only finite-energy Maxwell representative is the stationary pure-charge
/// solution.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ModeIndex {
    l: u32,
    n: i32,
}

impl ModeIndex {
    pub fn new(l: u32, n: i32) -> Result<Self> {
        if l == 0 {
            return Err(Error::ExcludedMode);
        }
        if n.unsigned_abs() > l {
            return Err(Error::InvalidInput(format!(
                "mode order |n| = {} exceeds degree l = {l}",
                n.unsigned_abs()
            )));
        }
        Ok(Self { l, n })
    }

    pub fn l(&self) -> u32 {
        self.l
    }

    pub fn n(&self) -> i32 {
        self.n
    }

    /// l(l+1) as an exact integer.
    pub fn eigenvalue_magnitude(&self) -> u64 {
        u64::from(self.l) * u64::from(self.l + 1)
    }
}

/// Per-mode constants replacing the four angular operators of the compacted
/// equations.
#[derive(Debug, Clone, Copy)]
pub struct CouplingConstants {
    /// l(l+1) stored exactly; both products equal its negative.
    pub magnitude_squared: u64,
    pub c_plus: f64,
    pub c_minus: f64,
    pub c_prime: f64,
    pub c_dprime: f64,
}

impl CouplingConstants {
    /// Product c_minus * c_plus, exact by construction.
    pub fn lowering_raising_product(&self) -> f64 {
        -(self.magnitude_squared as f64)
    }
}

/// Eigenvalue of the spherical Laplacian on degree-l harmonics: -l(l+1).
pub fn laplacian_eigenvalue(l: u32) -> f64 {
    -((u64::from(l) * u64::from(l + 1)) as f64)
}

/// Coupling constants of the four compacted equations for degree l >= 1.
pub fn coupling_constants(l: u32) -> Result<CouplingConstants> {
    if l == 0 {
        return Err(Error::ExcludedMode);
    }
    let magnitude_squared = u64::from(l) * u64::from(l + 1);
    let s = (magnitude_squared as f64).sqrt();
    Ok(CouplingConstants {
        magnitude_squared,
        c_plus: -s,
        c_minus: s,
        c_prime: s,
        c_dprime: -s,
    })
}

/// Spectral gap l(l+1) in the per-mode Poincaré bound: the angular bound
/// `∫ u² ≤ ½ ∫ |∇̸u|²` holds on a single mode iff l(l+1) >= 2, true for
/// every admitted mode and saturated at l = 1.
pub fn poincare_gap(l: u32) -> Result<f64> {
    if l == 0 {
        return Err(Error::ExcludedMode);
    }
    Ok((u64::from(l) * u64::from(l + 1)) as f64)
}

/// Weight turning `E[u]` into `E[∇̸u]` on a single mode: l(l+1).
pub fn angular_gradient_weight(l: u32) -> f64 {
    (u64::from(l) * u64::from(l + 1)) as f64
}

/// Weight turning `E[u]` into `E[Δ̸u]` on a single mode: l²(l+1)².
pub fn angular_laplacian_weight(l: u32) -> f64 {
    let k = u64::from(l) * u64::from(l + 1);
    (k * k) as f64
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn laplacian_eigenvalues() {
        assert_eq!(laplacian_eigenvalue(0), 0.0);
        assert_eq!(laplacian_eigenvalue(1), -2.0);
        assert_eq!(laplacian_eigenvalue(2), -6.0);
    }

    #[test]
    fn mode_index_rejects_excluded_sector() {
        assert!(matches!(ModeIndex::new(0, 0), Err(Error::ExcludedMode)));
        assert!(ModeIndex::new(1, 2).is_err());
        let m = ModeIndex::new(3, -2).unwrap();
        assert_eq!(m.l(), 3);
        assert_eq!(m.n(), -2);
        assert_eq!(m.eigenvalue_magnitude(), 12);
    }

    #[test]
    fn coupling_products_are_exact() {
        for l in 1..=64u32 {
            let c = coupling_constants(l).unwrap();
            let expect = (u64::from(l) * u64::from(l + 1)) as f64;
            // The stored integer keeps the products exact; the float
            // products agree to rounding.
            assert_eq!(c.lowering_raising_product(), -expect);
            assert_eq!(c.magnitude_squared, u64::from(l) * u64::from(l + 1));
            assert!((c.c_minus * c.c_plus + expect).abs() <= 1e-12 * expect);
            assert!((c.c_prime * c.c_dprime + expect).abs() <= 1e-12 * expect);
            assert_eq!(c.c_minus.abs(), c.c_plus.abs());
            assert_eq!(c.c_prime.abs(), c.c_dprime.abs());
            assert!((c.c_minus - expect.sqrt()).abs() == 0.0);
        }
        assert!(coupling_constants(0).is_err());
    }

    #[test]
    fn coupling_magnitudes() {
        let c = coupling_constants(1).unwrap();
        assert!((c.c_minus - 2f64.sqrt()).abs() < 1e-15);
        let c3 = coupling_constants(3).unwrap();
        assert_eq!(c3.lowering_raising_product(), -12.0);
    }

    #[test]
    fn poincare_gap_values() {
        assert_eq!(poincare_gap(1).unwrap(), 2.0);
        assert_eq!(poincare_gap(2).unwrap(), 6.0);
        assert_eq!(poincare_gap(5).unwrap(), 30.0);
        assert!(poincare_gap(0).is_err());
        for l in 1..=64 {
            assert!(poincare_gap(l).unwrap() >= 2.0);
        }
    }

    #[test]
    fn angular_weight_ordering() {
        // 1 <= l(l+1) <= l^2(l+1)^2 is the per-mode form of the energy chain
        // E[u] <= E[∇̸u] <= E[Δ̸u].
        for l in 1..=64 {
            let g = angular_gradient_weight(l);
            let d = angular_laplacian_weight(l);
            assert!(1.0 <= g && g <= d);
            assert_eq!(d, g * g);
        }
    }
}
