use std::ops::{Add, Mul, Sub};

use num_complex::Complex64;

/// Dense 2×2 complex matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mat2(pub [[Complex64; 2]; 2]);

impl Mat2 {
    pub fn new(m: [[Complex64; 2]; 2]) -> Self {
        Self(m)
    }

    pub fn from_real(m: [[f64; 2]; 2]) -> Self {
        let c = |x: f64| Complex64::new(x, 0.0);
        Self([[c(m[0][0]), c(m[0][1])], [c(m[1][0]), c(m[1][1])]])
    }

    pub fn identity() -> Self {
        Self::from_real([[1.0, 0.0], [0.0, 1.0]])
    }

    pub fn zero() -> Self {
        Self::from_real([[0.0; 2]; 2])
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.0[i][j]
    }

    pub fn det(&self) -> Complex64 {
        let m = &self.0;
        m[0][0] * m[1][1] - m[0][1] * m[1][0]
    }

    pub fn adjoint(&self) -> Self {
        let m = &self.0;
        Self([
            [m[0][0].conj(), m[1][0].conj()],
            [m[0][1].conj(), m[1][1].conj()],
        ])
    }

    pub fn scale(&self, k: Complex64) -> Self {
        let m = &self.0;
        Self([[m[0][0] * k, m[0][1] * k], [m[1][0] * k, m[1][1] * k]])
    }

    /// Inverse, or `None` when |det| falls below `tiny` times the squared
    /// largest entry.
    pub fn inverse(&self, tiny: f64) -> Option<Self> {
        let det = self.det();
        let scale = self.max_abs().powi(2);
        if !(det.norm() > tiny * scale) || scale == 0.0 {
            return None;
        }
        let m = &self.0;
        Some(Self([[m[1][1], -m[0][1]], [-m[1][0], m[0][0]]]).scale(det.inv()))
    }

    pub fn max_abs(&self) -> f64 {
        self.0
            .iter()
            .flatten()
            .map(|z| z.norm())
            .fold(0.0, f64::max)
    }

    /// Eigenvalues (ascending) of the Hermitian part `(M + M†)/2`.
    pub fn hermitian_eigenvalues(&self) -> (f64, f64) {
        let m = &self.0;
        let a = m[0][0].re;
        let d = m[1][1].re;
        let b = 0.5 * (m[0][1] + m[1][0].conj());
        let mean = 0.5 * (a + d);
        let half = 0.5 * (a - d);
        let radius = half.hypot(b.norm());
        (mean - radius, mean + radius)
    }
}

impl Add for Mat2 {
    type Output = Mat2;
    fn add(self, o: Mat2) -> Mat2 {
        let (a, b) = (&self.0, &o.0);
        Mat2([
            [a[0][0] + b[0][0], a[0][1] + b[0][1]],
            [a[1][0] + b[1][0], a[1][1] + b[1][1]],
        ])
    }
}

impl Sub for Mat2 {
    type Output = Mat2;
    fn sub(self, o: Mat2) -> Mat2 {
        let (a, b) = (&self.0, &o.0);
        Mat2([
            [a[0][0] - b[0][0], a[0][1] - b[0][1]],
            [a[1][0] - b[1][0], a[1][1] - b[1][1]],
        ])
    }
}

impl Mul for Mat2 {
    type Output = Mat2;
    fn mul(self, o: Mat2) -> Mat2 {
        let (a, b) = (&self.0, &o.0);
        Mat2([
            [
                a[0][0] * b[0][0] + a[0][1] * b[1][0],
                a[0][0] * b[0][1] + a[0][1] * b[1][1],
            ],
            [
                a[1][0] * b[0][0] + a[1][1] * b[1][0],
                a[1][0] * b[0][1] + a[1][1] * b[1][1],
            ],
        ])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_roundtrip() {
        let m = Mat2::new([
            [Complex64::new(1.0, 2.0), Complex64::new(0.5, -1.0)],
            [Complex64::new(-0.3, 0.0), Complex64::new(2.0, 0.1)],
        ]);
        let p = m * m.inverse(1e-14).unwrap();
        assert!((p - Mat2::identity()).max_abs() < 1e-15);
        assert!(Mat2::from_real([[1.0, 2.0], [2.0, 4.0]]).inverse(1e-14).is_none());
    }

    #[test]
    fn hermitian_eigenvalues_of_diagonal() {
        let (lo, hi) = Mat2::from_real([[3.0, 0.0], [0.0, -1.0]]).hermitian_eigenvalues();
        assert_eq!((lo, hi), (-1.0, 3.0));
        let (lo, hi) = Mat2::from_real([[1.0, 1.0], [1.0, 1.0]]).hermitian_eigenvalues();
        assert!((lo - 0.0).abs() < 1e-15 && (hi - 2.0).abs() < 1e-15);
    }
}
