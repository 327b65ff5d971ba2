//! Lines `x = const` meeting the branch curve in one tangency and two simple
//! points. These are the roots of the discriminant of `B(x, .)`, a form of
//! degree 24 in `x`.

use alloc::vec;
use alloc::vec::Vec;

use num_rational::BigRational;
use num_traits::Zero;

use super::certificate::{expected_profile, Certificate, Tolerances};
use super::system::{NewtonOptions, NewtonStatus, SystemPoint, TangencySystem};
use super::SeekerError;
use crate::exact::{int, to_f64};
use crate::forms::{BinaryForm, ComplexForm, FormError, MultiplicityProfile, P1Point, Poly, RootCluster};
use crate::quadric::{BiForm, ComplexCurve, GraphCurve};
use crate::severi::{membership_verify, membership_verify_numeric, SeveriSpec};

#[derive(Clone, Debug, PartialEq)]
pub struct TangentLine {
    /// `x = (x0 : x1)`.
    pub parameter: P1Point,
    /// Rational parameter, when one was recovered and checked exactly.
    pub exact: Option<(BigRational, BigRational)>,
    pub certificate: Certificate,
    /// Whether the line passes the membership test for `alpha = [1]`.
    pub member: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct TangentLines {
    /// `disc_y B(x, y)` as a form in `x`.
    pub discriminant: BinaryForm,
    pub roots: Vec<RootCluster>,
    pub lines: Vec<TangentLine>,
    /// Roots whose line has some other contact profile, or failed to certify.
    pub rejected: Vec<(P1Point, Option<MultiplicityProfile>)>,
}

/// `disc_y B(x, y)` by exact interpolation at `x = (1 : k)`, `k = 0..=4 d1 (d2 - 1)`.
pub fn line_discriminant(b: &BiForm) -> BinaryForm {
    let (d1, d2) = b.bidegree();
    let deg = 2 * d1 * (d2.max(1) - 1);
    let nodes: Vec<(BigRational, BigRational)> = (0..=deg as i64)
        .map(|k| {
            let t = int(k);
            let d = b.at_x(&int(1), &t).discriminant();
            (t, d)
        })
        .collect();
    let mut coeffs = Poly::interpolate(&nodes).into_coeffs();
    coeffs.resize(deg + 1, BigRational::zero());
    BinaryForm::new(coeffs).expect("nonempty")
}

/// Best rational approximation with denominator at most `max_den`.
fn rational_approx(x: f64, max_den: i64) -> Option<BigRational> {
    if !x.is_finite() || x.abs() > 1e12 {
        return None;
    }
    let (mut h0, mut h1) = (0i64, 1i64);
    let (mut k0, mut k1) = (1i64, 0i64);
    let mut r = x;
    for _ in 0..64 {
        let a = libm::floor(r);
        let ai = a as i64;
        let h2 = ai.checked_mul(h1)?.checked_add(h0)?;
        let k2 = ai.checked_mul(k1)?.checked_add(k0)?;
        if k2 > max_den {
            break;
        }
        (h0, h1, k0, k1) = (h1, h2, k1, k2);
        let frac = r - a;
        if frac.abs() < 1e-15 {
            break;
        }
        r = 1.0 / frac;
    }
    if k1 == 0 {
        return None;
    }
    Some(BigRational::new(h1.into(), k1.into()))
}

/// Tries to identify `p` as a rational root of `disc`.
fn reconstruct(disc: &BinaryForm, p: &P1Point) -> Option<(BigRational, BigRational)> {
    let (num, den, swap) = if p.y0.norm() >= p.y1.norm() { (p.y1, p.y0, false) } else { (p.y0, p.y1, true) };
    let t = num / den;
    if t.im.abs() > 1e-9 * (1.0 + t.re.abs()) {
        return None;
    }
    let r = rational_approx(t.re, 1_000_000)?;
    if (to_f64(&r) - t.re).abs() > 1e-8 * (1.0 + t.re.abs()) {
        return None;
    }
    let pair = if swap { (r, int(1)) } else { (int(1), r) };
    disc.eval(&pair.0, &pair.1).is_zero().then_some(pair)
}

fn linear_vanishing_at(p: &P1Point) -> ComplexForm {
    ComplexForm::new(vec![p.y1, -p.y0])
}

/// Newton-polished certificate for the line through `x`, if its contact
/// profile is `{1, 1, 2}`.
fn line_certificate(
    sys: &TangencySystem,
    x: &P1Point,
    tol: &Tolerances,
) -> Result<Result<Certificate, Option<MultiplicityProfile>>, FormError> {
    let config = tol.cluster_config();
    let curve = ComplexCurve::line(x.y0, x.y1);
    let quartic = sys.restrict(&curve);
    let Ok(clusters) = quartic.clusters(&config) else { return Ok(Err(None)) };
    let mut profile = MultiplicityProfile::new(clusters.iter().map(|c| c.multiplicity).collect());
    if profile != expected_profile(0) {
        return Ok(Err(Some(profile)));
    }
    let double = clusters.iter().find(|c| c.multiplicity == 2).expect("profile has a double root");
    let simple: Vec<_> = clusters.iter().filter(|c| c.multiplicity == 1).collect();
    let q = linear_vanishing_at(&simple[0].point).mul(&linear_vanishing_at(&simple[1].point));
    let s = linear_vanishing_at(&double.point);
    let c = sys.fit_scalar(&curve, &q, &s);
    let start = SystemPoint::new(&curve, &q, &s, c);
    let run = sys.newton(start.clone(), &NewtonOptions::default());
    let (point, gauge) = if run.status == NewtonStatus::Converged {
        (run.point, run.gauge)
    } else {
        let g = start.dominant_gauge();
        let mut p = start;
        p.normalize(&g).map_err(|_| FormError::RootFinder)?;
        (p, g)
    };
    let cert = Certificate::assemble(sys, &point, gauge, None, *tol);
    if !cert.report.passed() {
        profile = cert.report.profile.clone().unwrap_or(profile);
        return Ok(Err(Some(profile)));
    }
    Ok(Ok(cert))
}

/// All lines of class `(1, 0)` with contact profile `{1, 1, 2}`.
pub fn exact_tangent_lines(b: &BiForm, tol: &Tolerances) -> Result<TangentLines, SeekerError> {
    let sys = TangencySystem::build(b, 0)?;
    let discriminant = line_discriminant(b);
    if discriminant.is_zero() {
        return Err(SeekerError::ZeroDiscriminant);
    }
    let config = tol.cluster_config();
    let complex = discriminant.to_complex();
    let roots = match complex.clusters(&config) {
        Ok(c) => c,
        Err(FormError::AmbiguousClusters { .. }) => {
            complex.roots()?.into_iter().map(|point| RootCluster { point, multiplicity: 1 }).collect()
        }
        Err(e) => return Err(e.into()),
    };
    let spec = SeveriSpec::ladder(1);
    let mut lines = Vec::new();
    let mut rejected = Vec::new();
    for root in &roots {
        match line_certificate(&sys, &root.point, tol)? {
            Ok(certificate) => {
                let exact = reconstruct(&discriminant, &root.point);
                let member = match &exact {
                    Some((x0, x1)) => membership_verify(b, &GraphCurve::line(x0.clone(), x1.clone())?, &spec)?,
                    None => membership_verify_numeric(b, &certificate.curve, &spec, &config)?,
                };
                lines.push(TangentLine { parameter: root.point, exact, certificate, member });
            }
            Err(profile) => rejected.push((root.point, profile)),
        }
    }
    Ok(TangentLines { discriminant, roots, lines, rejected })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;
    use crate::quadric::random_admissible_branch;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    /// Sign changes of `disc(1, t)` on a grid over `[lo, hi]`.
    fn real_sign_changes(disc: &BinaryForm, lo: f64, hi: f64, steps: usize) -> usize {
        let f = disc.to_complex();
        let eval = |t: f64| f.eval(&P1Point::new(Complex64::new(1.0, 0.0), Complex64::new(t, 0.0))).re;
        let mut count = 0;
        let mut prev = eval(lo);
        for i in 1..=steps {
            let t = lo + (hi - lo) * i as f64 / steps as f64;
            let v = eval(t);
            if prev.signum() != v.signum() && prev != 0.0 {
                count += 1;
            }
            prev = v;
        }
        count
    }

    /// Discriminant of `a t^4 + b t^3 + c t^2 + d t + e`, expanded.
    fn quartic_disc(a: f64, b: f64, c: f64, d: f64, e: f64) -> f64 {
        256.0 * a * a * a * e * e * e - 192.0 * a * a * b * d * e * e - 128.0 * a * a * c * c * e * e
            + 144.0 * a * a * c * d * d * e
            - 27.0 * a * a * d * d * d * d
            + 144.0 * a * b * b * c * e * e
            - 6.0 * a * b * b * d * d * e
            - 80.0 * a * b * c * c * d * e
            + 18.0 * a * b * c * d * d * d
            + 16.0 * a * c * c * c * c * e
            - 4.0 * a * c * c * c * d * d
            - 27.0 * b * b * b * b * e * e
            + 18.0 * b * b * b * c * d * e
            - 4.0 * b * b * b * d * d * d
            - 4.0 * b * b * c * c * c * e
            + b * b * c * c * d * d
    }

    fn quartic_at(b: &BiForm, t: f64) -> [f64; 5] {
        let mut out = [0.0; 5];
        for (l, o) in out.iter_mut().enumerate() {
            for j in 0..=4 {
                *o += to_f64(b.coeff(j, l)) * libm::pow(t, j as f64);
            }
        }
        out
    }

    #[test]
    fn discriminant_matches_closed_form() {
        let b = random_admissible_branch(&mut ChaCha8Rng::seed_from_u64(11), 3);
        let d = line_discriminant(&b);
        assert_eq!(d.degree(), 24);
        let f = d.to_complex();
        for t in [-1.5, -0.25, 0.0, 0.5, 2.0, 3.0] {
            let c = quartic_at(&b, t);
            // The form's y0^(4-l) y1^l coefficient is c[l]; as a polynomial
            // in y1/y0 the leading term is c[4].
            let want = quartic_disc(c[4], c[3], c[2], c[1], c[0]);
            let got = f.eval(&P1Point { y0: Complex64::new(1.0, 0.0), y1: Complex64::new(t, 0.0) }).re;
            assert!((got - want).abs() <= 1e-9 * want.abs().max(1.0), "t={t}: {got} vs {want}");
        }
    }

    #[test]
    fn rational_approximation() {
        assert_eq!(rational_approx(0.75, 100), Some(BigRational::new(3.into(), 4.into())));
        assert_eq!(rational_approx(-2.0, 100), Some(int(-2)));
        assert_eq!(rational_approx(1.0 / 3.0, 100), Some(BigRational::new(1.into(), 3.into())));
    }

    #[test]
    fn tangent_lines_of_random_branches() {
        for seed in 0..3u64 {
            let b = random_admissible_branch(&mut ChaCha8Rng::seed_from_u64(seed), 4);
            let found = exact_tangent_lines(&b, &Tolerances::default()).unwrap();
            let total: u32 = found.roots.iter().map(|r| r.multiplicity).sum();
            assert_eq!(total, 24);
            assert!(!found.lines.is_empty());
            for line in &found.lines {
                assert!(line.member, "seed {seed}");
                assert!(line.certificate.report.passed());
                assert_eq!(line.certificate.tangency.geom_genus_pullback, 0);
            }
            // Real roots seen by a sign scan are a subset of the computed roots.
            let real = found
                .roots
                .iter()
                .filter(|r| {
                    let t = r.point.y1 / r.point.y0;
                    r.point.y0.norm() > 1e-3 && t.im.abs() < 1e-7 && t.re.abs() < 20.0
                })
                .count();
            let changes = real_sign_changes(&found.discriminant, -20.0, 20.0, 40_000);
            assert!(changes <= real, "seed {seed}: {changes} sign changes, {real} real roots");
        }
    }
}
