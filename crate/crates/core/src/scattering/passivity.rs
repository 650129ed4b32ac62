use num_complex::Complex64;

use crate::permittivity::log_grid;

use super::{Frequency, MirrorStack};

/// Eigenvalues of 1 − SS† above this count as non-negative.
pub const PASSIVITY_TOLERANCE: f64 = -1e-10;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PassivityPoint {
    pub p: Complex64,
    /// Smallest eigenvalue of 1 − SS†.
    pub min_eigenvalue: f64,
    /// max(|r|, |r̄|).
    pub max_abs_reflection: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PassivityReport {
    pub points: Vec<PassivityPoint>,
    /// Grid points that could not be evaluated, with the reason.
    pub errors: Vec<(Complex64, String)>,
    pub passed: bool,
    pub first_violation: Option<PassivityPoint>,
    pub min_eigenvalue: f64,
    pub max_abs_reflection: f64,
}

/// p = 0 followed by 97 points spaced logarithmically over [10⁻⁶, 10⁶].
pub fn default_passivity_grid() -> Vec<Complex64> {
    std::iter::once(0.0)
        .chain(log_grid(1e-6, 1e6, 97))
        .map(|p| Complex64::new(p, 0.0))
        .collect()
}

/// Evaluates 1 − SS† at every grid point in the closed right half p-plane.
/// Passes iff every point evaluates and every eigenvalue is ≥ −10⁻¹⁰.
pub fn check_passivity(stack: &MirrorStack, grid: &[Complex64]) -> PassivityReport {
    let mut points = Vec::with_capacity(grid.len());
    let mut errors = Vec::new();
    let mut first_violation = None;
    for &p in grid {
        let s = match stack.amplitudes(Frequency::from_p(p)) {
            Ok(s) => s,
            Err(e) => {
                errors.push((p, e.to_string()));
                continue;
            }
        };
        let m = s.s_matrix();
        let loss = super::Mat2::identity() - m * m.adjoint();
        let point = PassivityPoint {
            p,
            min_eigenvalue: loss.hermitian_eigenvalues().0,
            max_abs_reflection: s.r.norm().max(s.r_bar.norm()),
        };
        if first_violation.is_none() && !(point.min_eigenvalue >= PASSIVITY_TOLERANCE) {
            first_violation = Some(point);
        }
        points.push(point);
    }
    let min_eigenvalue = points.iter().map(|x| x.min_eigenvalue).fold(f64::INFINITY, f64::min);
    let max_abs_reflection = points.iter().map(|x| x.max_abs_reflection).fold(0.0, f64::max);
    PassivityReport {
        passed: first_violation.is_none() && errors.is_empty() && !points.is_empty(),
        points,
        errors,
        first_violation,
        min_eigenvalue,
        max_abs_reflection,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scattering::{AnalyticMirror, Slab};
    use crate::PermittivityModel;

    #[test]
    fn dielectric_stack_passes() {
        let stack = MirrorStack::layers(vec![
            Slab::new(PermittivityModel::constant(4.0), 0.3).unwrap(),
            Slab::new(PermittivityModel::constant(2.0), 0.7).unwrap(),
        ])
        .unwrap();
        let mut grid = default_passivity_grid();
        grid.extend([Complex64::new(0.0, -1.0), Complex64::new(0.5, 2.0)]);
        let report = check_passivity(&stack, &grid);
        assert!(report.passed, "{report:?}");
        assert!(report.max_abs_reflection <= 1.0);
    }

    #[test]
    fn constant_half_passes() {
        let r = check_passivity(&MirrorStack::constant(0.5).unwrap(), &default_passivity_grid());
        assert!(r.passed);
        assert!((r.max_abs_reflection - 0.5).abs() < 1e-15);
    }

    #[test]
    fn gain_mirror_fails_with_location() {
        let gain = MirrorStack::Analytic(AnalyticMirror::ConstantReflectivity { eta: 1.2 });
        let grid = default_passivity_grid();
        let r = check_passivity(&gain, &grid);
        assert!(!r.passed);
        let v = r.first_violation.unwrap();
        assert_eq!(v.p, grid[0]);
        assert!((v.min_eigenvalue - (1.0 - 1.44)).abs() < 1e-12);
    }

    #[test]
    fn unevaluable_points_fail_the_check() {
        let toy = MirrorStack::narrowband(0.1).unwrap();
        let r = check_passivity(&toy, &[Complex64::new(0.0, -1.0)]);
        assert!(!r.passed);
        assert_eq!(r.errors.len(), 1);
        assert!(check_passivity(&toy, &default_passivity_grid()).passed);
    }
}
