//! The square system `restrict(B, C) = c * q * s^2` for a curve `C` of
//! class `(1, n)`, a quadratic `q` and a form `s` of degree `2n + 1`, and a
//! damped Newton solver for it.

use alloc::vec::Vec;
use core::ops::Range;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::Rng;

use super::SeekerError;
use crate::forms::ComplexForm;
use crate::quadric::{BiForm, ComplexCurve, FloatBiForm, QuadricError};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Which coefficient of each scaled block is pinned to one.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Gauge {
    /// Index into the concatenated `(A, B)` coefficients of the curve.
    pub curve: usize,
    pub q: usize,
    pub s: usize,
}

/// Unknowns laid out as `[A (n+1), B (n+1), q (3), s (2n+2), c]`.
#[derive(Clone, Debug, PartialEq)]
pub struct SystemPoint {
    n: usize,
    z: Vec<Complex64>,
}

impl SystemPoint {
    pub fn new(curve: &ComplexCurve, q: &ComplexForm, s: &ComplexForm, c: Complex64) -> Self {
        let n = curve.n();
        assert_eq!(q.degree(), 2, "q is quadratic");
        assert_eq!(s.degree(), 2 * n + 1, "s has degree 2n+1");
        let mut z = curve.coefficient_vector();
        z.extend_from_slice(q.coeffs());
        z.extend_from_slice(s.coeffs());
        z.push(c);
        SystemPoint { n, z }
    }

    fn curve_range(&self) -> Range<usize> {
        0..2 * self.n + 2
    }

    fn q_range(&self) -> Range<usize> {
        2 * self.n + 2..2 * self.n + 5
    }

    fn s_range(&self) -> Range<usize> {
        2 * self.n + 5..4 * self.n + 7
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.z
    }

    pub fn curve(&self) -> ComplexCurve {
        ComplexCurve::from_coefficient_vector(self.n, &self.z[self.curve_range()])
            .unwrap_or_else(|_| ComplexCurve::line(ONE, ZERO))
    }

    pub fn q(&self) -> ComplexForm {
        ComplexForm::new(self.z[self.q_range()].to_vec())
    }

    pub fn s(&self) -> ComplexForm {
        ComplexForm::new(self.z[self.s_range()].to_vec())
    }

    pub fn c(&self) -> Complex64 {
        self.z[4 * self.n + 7]
    }

    /// Gauge pinning the largest coefficient of each block.
    pub fn dominant_gauge(&self) -> Gauge {
        let argmax = |r: Range<usize>| {
            let start = r.start;
            let mut best = start;
            for i in r {
                if self.z[i].norm() > self.z[best].norm() {
                    best = i;
                }
            }
            best - start
        };
        Gauge { curve: argmax(self.curve_range()), q: argmax(self.q_range()), s: argmax(self.s_range()) }
    }

    /// Rescales the blocks so the gauge coefficients equal one; `c` absorbs
    /// the factors so the residual is unchanged up to an overall scalar.
    pub fn normalize(&mut self, gauge: &Gauge) -> Result<(), SeekerError> {
        let (cr, qr, sr) = (self.curve_range(), self.q_range(), self.s_range());
        let lc = self.z[cr.start + gauge.curve];
        let lq = self.z[qr.start + gauge.q];
        let ls = self.z[sr.start + gauge.s];
        if lc.norm() == 0.0 || lq.norm() == 0.0 || ls.norm() == 0.0 {
            return Err(SeekerError::DegenerateGauge);
        }
        for v in &mut self.z[cr] {
            *v /= lc;
        }
        for v in &mut self.z[qr] {
            *v /= lq;
        }
        for v in &mut self.z[sr] {
            *v /= ls;
        }
        // restrict is quartic in the curve coefficients
        let last = self.z.len() - 1;
        self.z[last] = self.z[last] * lq * ls * ls / lc.powu(4);
        Ok(())
    }

    fn free_indices(&self, gauge: &Gauge) -> Vec<usize> {
        let pinned = [
            self.curve_range().start + gauge.curve,
            self.q_range().start + gauge.q,
            self.s_range().start + gauge.s,
        ];
        (0..self.z.len()).filter(|i| !pinned.contains(i)).collect()
    }

    fn is_finite(&self) -> bool {
        self.z.iter().all(|v| v.re.is_finite() && v.im.is_finite())
    }

    fn max_abs(&self) -> f64 {
        self.z.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }
}

/// How starting points are drawn.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum StartMode {
    /// Real and imaginary parts uniform in `[-1, 1]`.
    #[default]
    Uniform,
    /// As `Uniform`, with the curve projected to a fixed curve of the
    /// involution (`A` even, `B` odd in the powers of `y1`).
    Symmetric,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NewtonOptions {
    pub max_iterations: usize,
    /// Relative residual `|R| / |restrict|` at which to stop.
    pub tolerance: f64,
    pub polish_steps: usize,
    pub blowup: f64,
    pub start: StartMode,
}

impl Default for NewtonOptions {
    fn default() -> Self {
        NewtonOptions { max_iterations: 200, tolerance: 1e-12, polish_steps: 3, blowup: 1e6, start: StartMode::Uniform }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum NewtonStatus {
    Converged,
    MaxIterations,
    Stalled,
    Diverged,
    NonFinite,
}

#[derive(Clone, Debug, PartialEq)]
pub struct NewtonRun {
    pub status: NewtonStatus,
    pub iterations: usize,
    pub point: SystemPoint,
    pub gauge: Gauge,
    pub relative_residual: f64,
}

/// `restrict(B, C) - c q s^2` together with its partial derivatives.
#[derive(Clone, Debug)]
pub struct TangencySystem {
    branch: BiForm,
    n: usize,
    fb: FloatBiForm,
    fx0: FloatBiForm,
    fx1: FloatBiForm,
}

impl TangencySystem {
    /// Checks that `branch` is an admissible branch curve first.
    pub fn build(branch: &BiForm, n: usize) -> Result<Self, SeekerError> {
        let report = branch.check_branch_admissible()?;
        if !report.is_admissible() {
            return Err(SeekerError::Inadmissible(report));
        }
        TangencySystem::unchecked(branch, n)
    }

    /// Only the bidegree is checked; used to re-verify certificates.
    pub fn unchecked(branch: &BiForm, n: usize) -> Result<Self, SeekerError> {
        if branch.bidegree() != (4, 4) {
            let (a, b) = branch.bidegree();
            return Err(QuadricError::WrongBidegree(a, b).into());
        }
        let fb = branch.to_float();
        Ok(TangencySystem { branch: branch.clone(), n, fx0: fb.partial_x0(), fx1: fb.partial_x1(), fb })
    }

    pub fn branch(&self) -> &BiForm {
        &self.branch
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn equations(&self) -> usize {
        4 * self.n + 5
    }

    pub fn unknowns(&self) -> usize {
        4 * self.n + 8
    }

    pub fn free_unknowns(&self) -> usize {
        self.unknowns() - 3
    }

    pub fn restrict(&self, curve: &ComplexCurve) -> ComplexForm {
        self.fb.restrict(curve)
    }

    /// Residual coefficients and the norm of `restrict(B, C)`.
    pub fn residual(&self, p: &SystemPoint) -> (Vec<Complex64>, f64) {
        let r = self.restrict(&p.curve());
        let s = p.s();
        let rhs = p.q().mul(&s.mul(&s)).scale(p.c());
        let res = r.sub(&rhs);
        (res.coeffs().to_vec(), r.norm())
    }

    /// `|R| / |restrict(B, C)|`.
    pub fn relative_residual(&self, p: &SystemPoint) -> f64 {
        let (r, scale) = self.residual(p);
        norm(&r) / scale.max(f64::MIN_POSITIVE)
    }

    /// Full Jacobian, `(4n+5) x (4n+8)`.
    pub fn jacobian(&self, p: &SystemPoint) -> DMatrix<Complex64> {
        let n = self.n;
        let curve = p.curve();
        let (q, s, c) = (p.q(), p.s(), p.c());
        let gx0 = self.fx0.restrict(&curve);
        let gx1 = self.fx1.restrict(&curve).scale(-ONE);
        let s2 = s.mul(&s);
        let qs = q.mul(&s);
        let qs2 = qs.mul(&s);
        let rows = self.equations();
        let mut j = DMatrix::<Complex64>::zeros(rows, self.unknowns());
        let mut put = |col: usize, f: &ComplexForm, scale: Complex64| {
            for (row, v) in f.coeffs().iter().enumerate() {
                j[(row, col)] = v * scale;
            }
        };
        for i in 0..=n {
            put(i, &gx1.shifted(n, i), ONE);
            put(n + 1 + i, &gx0.shifted(n, i), ONE);
        }
        for i in 0..3 {
            put(2 * n + 2 + i, &s2.shifted(2, i), -c);
        }
        for i in 0..2 * n + 2 {
            put(2 * n + 5 + i, &qs.shifted(2 * n + 1, i), -c * 2.0);
        }
        put(4 * n + 7, &qs2, -ONE);
        j
    }

    /// Jacobian restricted to the free unknowns: a square matrix.
    pub fn free_jacobian(&self, p: &SystemPoint, gauge: &Gauge) -> DMatrix<Complex64> {
        let full = self.jacobian(p);
        let cols = p.free_indices(gauge);
        DMatrix::from_fn(full.nrows(), cols.len(), |r, c| full[(r, cols[c])])
    }

    /// Smallest singular value of the free Jacobian.
    pub fn jacobian_min_sv(&self, p: &SystemPoint, gauge: &Gauge) -> f64 {
        let j = self.free_jacobian(p, gauge);
        j.singular_values().iter().copied().fold(f64::INFINITY, f64::min)
    }

    /// Random start from `rng`; `c` is the least-squares fit.
    pub fn random_start<R: Rng + ?Sized>(&self, rng: &mut R, mode: StartMode) -> SystemPoint {
        let n = self.n;
        let mut draw = |k: usize| -> Vec<Complex64> {
            (0..k).map(|_| Complex64::new(rng.random_range(-1.0..=1.0), rng.random_range(-1.0..=1.0))).collect()
        };
        let mut a = draw(n + 1);
        let mut b = draw(n + 1);
        let q = draw(3);
        let s = draw(2 * n + 2);
        if mode == StartMode::Symmetric {
            for (i, v) in a.iter_mut().enumerate() {
                if i % 2 == 1 {
                    *v = ZERO;
                }
            }
            for (i, v) in b.iter_mut().enumerate() {
                if i % 2 == 0 {
                    *v = ZERO;
                }
            }
        }
        let curve = ComplexCurve::new(ComplexForm::new(a), ComplexForm::new(b)).expect("same degree");
        let (q, s) = (ComplexForm::new(q), ComplexForm::new(s));
        let c = self.fit_scalar(&curve, &q, &s);
        SystemPoint::new(&curve, &q, &s, c)
    }

    /// Least-squares `c` for `restrict = c q s^2`.
    pub fn fit_scalar(&self, curve: &ComplexCurve, q: &ComplexForm, s: &ComplexForm) -> Complex64 {
        let r = self.restrict(curve);
        let g = q.mul(&s.mul(s));
        let num: Complex64 = g.coeffs().iter().zip(r.coeffs()).map(|(a, b)| a.conj() * b).sum();
        let den: f64 = g.coeffs().iter().map(|a| a.norm_sqr()).sum();
        if den == 0.0 {
            ONE
        } else {
            num / den
        }
    }

    /// Damped Newton from `start`, gauged at its dominant coefficients.
    pub fn newton(&self, start: SystemPoint, options: &NewtonOptions) -> NewtonRun {
        let gauge = start.dominant_gauge();
        let mut p = start;
        if p.normalize(&gauge).is_err() {
            return NewtonRun { status: NewtonStatus::NonFinite, iterations: 0, point: p, gauge, relative_residual: f64::NAN };
        }
        self.newton_gauged(p, gauge, options)
    }

    /// Damped Newton with a fixed gauge; `p` must already be normalized.
    pub fn newton_gauged(&self, mut p: SystemPoint, gauge: Gauge, options: &NewtonOptions) -> NewtonRun {
        let free = p.free_indices(&gauge);
        let finish = |status, iterations, p: SystemPoint, this: &Self| {
            let relative_residual = this.relative_residual(&p);
            NewtonRun { status, iterations, point: p, gauge, relative_residual }
        };
        let (mut res, mut scale) = self.residual(&p);
        let mut rn = norm(&res);
        let mut iterations = 0;
        loop {
            if !p.is_finite() || !rn.is_finite() {
                return finish(NewtonStatus::NonFinite, iterations, p, self);
            }
            if p.max_abs() > options.blowup {
                return finish(NewtonStatus::Diverged, iterations, p, self);
            }
            if rn <= options.tolerance * scale {
                break;
            }
            if iterations >= options.max_iterations {
                return finish(NewtonStatus::MaxIterations, iterations, p, self);
            }
            iterations += 1;
            let Some(step) = self.newton_step(&p, &gauge, &res) else {
                return finish(NewtonStatus::Stalled, iterations, p, self);
            };
            let mut t = 1.0;
            let mut accepted = false;
            for _ in 0..30 {
                let mut cand = p.clone();
                for (k, &i) in free.iter().enumerate() {
                    cand.z[i] -= step[k] * t;
                }
                let (cres, cscale) = self.residual(&cand);
                let cn = norm(&cres);
                if cn.is_finite() && cn < rn {
                    p = cand;
                    res = cres;
                    scale = cscale;
                    rn = cn;
                    accepted = true;
                    break;
                }
                t *= 0.5;
            }
            if !accepted {
                return finish(NewtonStatus::Stalled, iterations, p, self);
            }
        }
        for _ in 0..options.polish_steps {
            let Some(step) = self.newton_step(&p, &gauge, &res) else { break };
            let mut cand = p.clone();
            for (k, &i) in free.iter().enumerate() {
                cand.z[i] -= step[k];
            }
            let (cres, cscale) = self.residual(&cand);
            let cn = norm(&cres);
            if !(cn < rn) {
                break;
            }
            p = cand;
            res = cres;
            scale = cscale;
            rn = cn;
        }
        let _ = scale;
        finish(NewtonStatus::Converged, iterations, p, self)
    }

    /// Solves `J d = R` on the free unknowns, by LU with an SVD fallback.
    fn newton_step(&self, p: &SystemPoint, gauge: &Gauge, res: &[Complex64]) -> Option<DVector<Complex64>> {
        let j = self.free_jacobian(p, gauge);
        let rhs = DVector::from_column_slice(res);
        if let Some(d) = j.clone().lu().solve(&rhs) {
            if d.iter().all(|v| v.re.is_finite() && v.im.is_finite()) {
                return Some(d);
            }
        }
        let d = j.svd(true, true).solve(&rhs, 1e-14).ok()?;
        d.iter().all(|v| v.re.is_finite() && v.im.is_finite()).then_some(d)
    }
}

pub(crate) fn norm(v: &[Complex64]) -> f64 {
    libm::sqrt(v.iter().map(|x| x.norm_sqr()).sum())
}
