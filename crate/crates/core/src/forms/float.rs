//! Double-precision complex binary forms, their roots on P^1 and root
//! clustering.
//!
//! Distances between roots are chordal distances on P^1, which makes the
//! clustering tolerance scale-free and treats the point at infinity like any
//! other point.

use alloc::vec;
use alloc::vec::Vec;

use nalgebra::DMatrix;
use num_complex::Complex64;
use num_traits::Zero;

use super::{FormError, MultiplicityProfile};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Binary form with complex double coefficients, ordered like
/// [`BinaryForm`](super::BinaryForm).
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexForm {
    coeffs: Vec<Complex64>,
}

impl ComplexForm {
    pub fn new(coeffs: Vec<Complex64>) -> Self {
        assert!(!coeffs.is_empty(), "a binary form needs at least one coefficient");
        ComplexForm { coeffs }
    }

    pub fn from_real(coeffs: &[f64]) -> Self {
        ComplexForm::new(coeffs.iter().map(|&c| Complex64::new(c, 0.0)).collect())
    }

    pub fn zero(degree: usize) -> Self {
        ComplexForm { coeffs: vec![ZERO; degree + 1] }
    }

    pub fn one() -> Self {
        ComplexForm { coeffs: vec![ONE] }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn coeffs_mut(&mut self) -> &mut [Complex64] {
        &mut self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn is_finite(&self) -> bool {
        self.coeffs.iter().all(|c| c.re.is_finite() && c.im.is_finite())
    }

    pub fn norm(&self) -> f64 {
        libm::sqrt(self.coeffs.iter().map(|c| c.norm_sqr()).sum())
    }

    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    pub fn scale(&self, k: Complex64) -> Self {
        ComplexForm { coeffs: self.coeffs.iter().map(|c| c * k).collect() }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.degree(), other.degree(), "adding forms of different degree");
        ComplexForm { coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.degree(), other.degree(), "subtracting forms of different degree");
        ComplexForm { coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = vec![ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        ComplexForm { coeffs: out }
    }

    /// `self * y0^(extra - shift) * y1^shift`.
    pub fn shifted(&self, extra: usize, shift: usize) -> Self {
        let mut out = vec![ZERO; self.coeffs.len() + extra];
        out[shift..shift + self.coeffs.len()].copy_from_slice(&self.coeffs);
        ComplexForm { coeffs: out }
    }

    /// Substitutes `y1 -> -y1`.
    pub fn twist(&self) -> Self {
        ComplexForm {
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(i, &c)| if i % 2 == 1 { -c } else { c })
                .collect(),
        }
    }

    pub fn eval(&self, p: &P1Point) -> Complex64 {
        let d = self.degree();
        let mut acc = ZERO;
        for (i, c) in self.coeffs.iter().enumerate() {
            acc += c * p.y0.powu((d - i) as u32) * p.y1.powu(i as u32);
        }
        acc
    }

    /// All `degree` roots on P^1, with multiplicity, from companion-matrix
    /// eigenvalues followed by guarded Newton polishing.
    pub fn roots(&self) -> Result<Vec<P1Point>, FormError> {
        if self.is_zero() {
            return Err(FormError::ZeroForm);
        }
        if !self.is_finite() {
            return Err(FormError::NonFinite);
        }
        let d = self.degree();
        let lead_zeros = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        let trail_zeros = self.coeffs.iter().rev().take_while(|c| c.is_zero()).count();
        let mut roots = Vec::with_capacity(d);
        roots.extend(core::iter::repeat_n(P1Point::new(ONE, ZERO), lead_zeros));
        roots.extend(core::iter::repeat_n(P1Point::new(ZERO, ONE), trail_zeros));
        let core_coeffs = &self.coeffs[lead_zeros..=d - trail_zeros];
        let k = core_coeffs.len() - 1;
        if k == 0 {
            return Ok(roots);
        }
        // Affine polynomial a_0 + a_1 t + ... + a_k t^k in the chart where the
        // leading coefficient is the larger end coefficient.
        let first_chart = core_coeffs[0].norm() >= core_coeffs[k].norm();
        let a: Vec<Complex64> = if first_chart {
            // t = y0 / y1, f(t, 1) = sum c_i t^(k-i)
            core_coeffs.iter().rev().copied().collect()
        } else {
            // u = y1 / y0, f(1, u) = sum c_i u^i
            core_coeffs.to_vec()
        };
        let affine = affine_roots(&a)?;
        roots.extend(affine.into_iter().map(|t| {
            if first_chart {
                P1Point::new(t, ONE)
            } else {
                P1Point::new(ONE, t)
            }
        }));
        Ok(roots)
    }

    /// Multiplicity profile over C by root clustering.
    pub fn profile(&self, config: &ClusterConfig) -> Result<MultiplicityProfile, FormError> {
        let clusters = cluster_roots(&self.roots()?, config)?;
        Ok(MultiplicityProfile::new(clusters.iter().map(|c| c.multiplicity).collect()))
    }

    pub fn clusters(&self, config: &ClusterConfig) -> Result<Vec<RootCluster>, FormError> {
        cluster_roots(&self.roots()?, config)
    }
}

fn eval_affine(a: &[Complex64], t: Complex64) -> (Complex64, Complex64) {
    let mut p = ZERO;
    let mut dp = ZERO;
    for c in a.iter().rev() {
        dp = dp * t + p;
        p = p * t + c;
    }
    (p, dp)
}

/// Coefficients of `p(t + s)`, low degree first.
fn taylor_shift(a: &[Complex64], s: Complex64) -> Vec<Complex64> {
    let mut c = a.to_vec();
    if s.is_zero() {
        return c;
    }
    let k = c.len() - 1;
    for i in 0..k {
        for j in (i..k).rev() {
            let hi = c[j + 1];
            c[j] += s * hi;
        }
    }
    c
}

fn companion_eigenvalues(a: &[Complex64]) -> Option<Vec<Complex64>> {
    let k = a.len() - 1;
    let mut companion = DMatrix::<Complex64>::zeros(k, k);
    for i in 1..k {
        companion[(i, i - 1)] = ONE;
    }
    for i in 0..k {
        companion[(i, k - 1)] = -a[i] / a[k];
    }
    let (_, t) = nalgebra::linalg::Schur::try_new(companion, f64::EPSILON, 10_000)?.unpack();
    Some((0..k).map(|i| t[(i, i)]).collect())
}

fn affine_roots(a: &[Complex64]) -> Result<Vec<Complex64>, FormError> {
    let k = a.len() - 1;
    let lead = a[k];
    // Rescale t = lambda * tau so the roots have unit geometric mean.
    let lambda = if a[0].is_zero() {
        1.0
    } else {
        libm::pow(a[0].norm() / lead.norm(), 1.0 / k as f64)
    };
    let lambda = if lambda.is_finite() && lambda > 0.0 { lambda } else { 1.0 };
    let mut scaled = Vec::with_capacity(k + 1);
    let mut lp = 1.0;
    for c in a {
        scaled.push(c * lp / lead);
        lp *= lambda;
    }
    // Francis QR can stall on companion matrices with rotational symmetry
    // (e.g. t^4 + c t^2 + 1); retry on a few off-axis Taylor shifts.
    let shifts = [ZERO, Complex64::new(0.37, 0.21), Complex64::new(-0.29, 0.43), Complex64::new(0.13, -0.52)];
    let mut roots = None;
    for shift in shifts {
        let shifted = taylor_shift(&scaled, shift);
        if let Some(eigs) = companion_eigenvalues(&shifted) {
            roots = Some(eigs.into_iter().map(|tau| (tau + shift) * lambda).collect::<Vec<_>>());
            break;
        }
    }
    let mut roots = roots.ok_or(FormError::RootFinder)?;
    for r in roots.iter_mut() {
        for _ in 0..3 {
            let (p, dp) = eval_affine(a, *r);
            if dp.is_zero() {
                break;
            }
            let cand = *r - p / dp;
            let (pc, _) = eval_affine(a, cand);
            if pc.norm() < p.norm() {
                *r = cand;
            } else {
                break;
            }
        }
    }
    if roots.iter().any(|r| !(r.re.is_finite() && r.im.is_finite())) {
        return Err(FormError::RootFinder);
    }
    Ok(roots)
}

/// Point of P^1 stored as a unit-norm homogeneous pair `(y0 : y1)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct P1Point {
    pub y0: Complex64,
    pub y1: Complex64,
}

impl P1Point {
    pub fn new(y0: Complex64, y1: Complex64) -> Self {
        let n = libm::sqrt(y0.norm_sqr() + y1.norm_sqr());
        P1Point { y0: y0 / n, y1: y1 / n }
    }

    /// `(t : 1)`.
    pub fn affine(t: Complex64) -> Self {
        P1Point::new(t, ONE)
    }

    /// Chordal distance; lies in `[0, 1]`.
    pub fn chordal(&self, other: &P1Point) -> f64 {
        (self.y0 * other.y1 - self.y1 * other.y0).norm()
    }

    /// Representative with the larger coordinate scaled to one, plus a flag
    /// telling which coordinate that was (`true` for `y1`).
    fn chart(&self) -> (bool, Complex64) {
        if self.y1.norm() >= self.y0.norm() {
            (true, self.y0 / self.y1)
        } else {
            (false, self.y1 / self.y0)
        }
    }

    /// Applies `(y0 : y1) -> (y0 : -y1)`.
    pub fn twist(&self) -> Self {
        P1Point { y0: self.y0, y1: -self.y1 }
    }
}

/// Root clustering parameters. Roots closer than `tolerance` (chordal) are
/// merged; a clustering is ambiguous when two distinct clusters come within
/// `separation_factor * tolerance` of each other.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ClusterConfig {
    pub tolerance: f64,
    pub separation_factor: f64,
}

impl Default for ClusterConfig {
    fn default() -> Self {
        ClusterConfig { tolerance: 1e-6, separation_factor: 100.0 }
    }
}

impl ClusterConfig {
    pub fn with_tolerance(tolerance: f64) -> Self {
        ClusterConfig { tolerance, ..Default::default() }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RootCluster {
    pub point: P1Point,
    pub multiplicity: u32,
}

/// Single-linkage clustering of points on P^1.
pub fn cluster_roots(points: &[P1Point], config: &ClusterConfig) -> Result<Vec<RootCluster>, FormError> {
    let n = points.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut i: usize) -> usize {
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }
    for i in 0..n {
        for j in i + 1..n {
            if points[i].chordal(&points[j]) <= config.tolerance {
                let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                if ri != rj {
                    parent[ri.max(rj)] = ri.min(rj);
                }
            }
        }
    }
    let roots: Vec<usize> = (0..n).map(|i| find(&mut parent, i)).collect();
    let mut separation = f64::INFINITY;
    for i in 0..n {
        for j in i + 1..n {
            if roots[i] != roots[j] {
                separation = separation.min(points[i].chordal(&points[j]));
            }
        }
    }
    if separation <= config.separation_factor * config.tolerance {
        return Err(FormError::AmbiguousClusters { tolerance: config.tolerance, separation });
    }
    let mut clusters = Vec::new();
    for r in 0..n {
        if roots[r] != r {
            continue;
        }
        let members: Vec<&P1Point> = (0..n).filter(|&i| roots[i] == r).map(|i| &points[i]).collect();
        let (in_y1_chart, _) = members[0].chart();
        let mut sum = ZERO;
        for m in &members {
            sum += if in_y1_chart { m.y0 / m.y1 } else { m.y1 / m.y0 };
        }
        let mean = sum / members.len() as f64;
        let point = if in_y1_chart { P1Point::new(mean, ONE) } else { P1Point::new(ONE, mean) };
        clusters.push(RootCluster { point, multiplicity: members.len() as u32 });
    }
    Ok(clusters)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lin(a: f64, b: f64) -> ComplexForm {
        ComplexForm::from_real(&[a, b])
    }

    #[test]
    fn roots_include_infinity() {
        // y1 * y0^2 * (y0 - 2 y1)
        let f = lin(0.0, 1.0).mul(&lin(1.0, 0.0)).mul(&lin(1.0, 0.0)).mul(&lin(1.0, -2.0));
        let prof = f.profile(&ClusterConfig::default()).unwrap();
        assert_eq!(prof.entries(), [1, 1, 2]);
        let roots = f.roots().unwrap();
        assert_eq!(roots.len(), 4);
        assert!(roots.iter().any(|r| r.chordal(&P1Point::affine(Complex64::new(2.0, 0.0))) < 1e-12));
    }

    #[test]
    fn symmetric_companions_converge() {
        for f in [
            ComplexForm::from_real(&[2.0, 0.0, 1.0, 0.0, 2.0]),
            ComplexForm::from_real(&[1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, -1.0]),
        ] {
            let roots = f.roots().unwrap();
            assert_eq!(roots.len(), f.degree());
            for r in &roots {
                assert!(f.eval(r).norm() < 1e-12);
            }
            assert_eq!(f.profile(&ClusterConfig::default()).unwrap().len(), f.degree());
        }
    }

    #[test]
    fn complex_double_roots_cluster() {
        // (y0^2 + y1^2)^2 (y0 - 3 y1)
        let q = ComplexForm::from_real(&[1.0, 0.0, 1.0]);
        let f = q.mul(&q).mul(&lin(1.0, -3.0));
        let prof = f.profile(&ClusterConfig::default()).unwrap();
        assert_eq!(prof.entries(), [1, 2, 2]);
    }

    #[test]
    fn near_collisions_are_ambiguous() {
        let f = lin(1.0, -1.0).mul(&lin(1.0, -1.0 - 1e-5));
        let err = f.profile(&ClusterConfig::default()).unwrap_err();
        assert!(matches!(err, FormError::AmbiguousClusters { .. }));
    }

    #[test]
    fn chordal_distance_is_scale_free() {
        let a = P1Point::new(Complex64::new(2.0, 0.0), Complex64::new(4.0, 0.0));
        let b = P1Point::affine(Complex64::new(0.5, 0.0));
        assert!(a.chordal(&b) < 1e-15);
    }
}
