//! Finitely supported Fourier series on the circle.
//!
//! A series is a finite coefficient map `k ↦ c_k` standing for
//! `f(θ) = Σ c_k e^{ikθ}`. Three operations matter here: translation of the
//! argument (a phase twist per frequency), the pointwise product of
//! functions (Cauchy product of coefficients), and group convolution against
//! normalized Haar measure, under which the characters `e_k` are orthogonal
//! idempotents so coefficients multiply slot-by-slot.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::convolution::PRUNE_EPS;

/// Finite Fourier series, `k ↦ c_k`.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct FourierSeries {
    coeffs: BTreeMap<i64, Complex64>,
}

impl FourierSeries {
    pub fn zero() -> Self {
        FourierSeries::default()
    }

    /// The character `e_k(θ) = e^{ikθ}`.
    pub fn basis(k: i64) -> Self {
        let mut s = FourierSeries::zero();
        s.add_to(k, Complex64::new(1.0, 0.0));
        s
    }

    /// The constant function 1.
    pub fn one() -> Self {
        FourierSeries::basis(0)
    }

    pub fn from_coeffs(entries: &[(i64, Complex64)]) -> Self {
        let mut s = FourierSeries::zero();
        for &(k, c) in entries {
            s.add_to(k, c);
        }
        s.prune();
        s
    }

    pub fn coeff(&self, k: i64) -> Complex64 {
        self.coeffs.get(&k).copied().unwrap_or_default()
    }

    pub fn add_to(&mut self, k: i64, c: Complex64) {
        *self.coeffs.entry(k).or_default() += c;
    }

    pub fn support(&self) -> impl Iterator<Item = (i64, Complex64)> + '_ {
        self.coeffs.iter().map(|(&k, &c)| (k, c))
    }

    pub fn support_len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Largest frequency magnitude in the support.
    pub fn bandwidth(&self) -> i64 {
        self.coeffs.keys().map(|k| k.abs()).max().unwrap_or(0)
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in other.support() {
            out.add_to(k, c);
        }
        out.prune();
        out
    }

    pub fn scale(&self, c: Complex64) -> Self {
        let mut out = self.clone();
        for v in out.coeffs.values_mut() {
            *v *= c;
        }
        out.prune();
        out
    }

    /// Argument translation `f(θ) ↦ f(θ + α)`: multiplies `c_k` by `e^{ikα}`.
    pub fn rotate(&self, alpha: f64) -> Self {
        let mut out = self.clone();
        for (k, v) in out.coeffs.iter_mut() {
            *v *= Complex64::cis(*k as f64 * alpha);
        }
        out
    }

    /// Pointwise product of the functions: `(fg)_k = Σ_m f_m · g_{k−m}`.
    pub fn cauchy_product(&self, other: &Self) -> Self {
        let mut out = FourierSeries::zero();
        for (m, a) in self.support() {
            for (n, b) in other.support() {
                out.add_to(m + n, a * b);
            }
        }
        out.prune();
        out
    }

    /// Group convolution against normalized Haar measure:
    /// `(f*g)_k = f_k · g_k`.
    pub fn orthogonal_convolve(&self, other: &Self) -> Self {
        let mut out = FourierSeries::zero();
        for (k, a) in self.support() {
            let b = other.coeff(k);
            out.add_to(k, a * b);
        }
        out.prune();
        out
    }

    pub fn prune(&mut self) {
        self.coeffs.retain(|_, c| c.norm() > PRUNE_EPS);
    }

    /// Largest coefficient distance over the union of supports.
    pub fn sup_distance(&self, other: &Self) -> f64 {
        let keys: BTreeSet<i64> = self
            .coeffs
            .keys()
            .chain(other.coeffs.keys())
            .copied()
            .collect();
        keys.into_iter()
            .map(|k| (self.coeff(k) - other.coeff(k)).norm())
            .fold(0.0, f64::max)
    }

    pub fn equal_within(&self, other: &Self, tol: f64) -> bool {
        self.sup_distance(other) <= tol
    }

    /// Evaluates the trigonometric polynomial at `θ`.
    pub fn eval(&self, theta: f64) -> Complex64 {
        self.support()
            .map(|(k, c)| c * Complex64::cis(k as f64 * theta))
            .sum()
    }

    /// Frequencies in ascending order.
    pub fn frequencies(&self) -> Vec<i64> {
        self.coeffs.keys().copied().collect()
    }
}
