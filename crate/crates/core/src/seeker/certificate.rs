use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use super::system::{Gauge, SystemPoint, TangencySystem};
use super::SeekerError;
use crate::cover::TangencyReport;
use crate::forms::{ClusterConfig, ComplexForm, MultiplicityProfile};
use crate::quadric::{BiForm, ComplexCurve};

/// Thresholds used to accept a solution.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tolerances {
    /// Upper bound on `|restrict - c q s^2| / |restrict|`.
    pub residual: f64,
    /// Lower bound on the smallest singular value of the gauged Jacobian.
    pub jacobian: f64,
    /// Chordal radius for root clustering.
    pub cluster: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances { residual: 1e-10, jacobian: 1e-6, cluster: 1e-6 }
    }
}

impl Tolerances {
    pub fn cluster_config(&self) -> ClusterConfig {
        ClusterConfig::with_tolerance(self.cluster)
    }
}

/// Outcome of each certificate check, recomputed from the certificate data.
#[derive(Clone, Debug, PartialEq)]
pub struct CertifyReport {
    pub residual_norm: f64,
    pub jacobian_min_sv: f64,
    pub profile: Option<MultiplicityProfile>,
    pub residual_ok: bool,
    pub jacobian_ok: bool,
    pub profile_ok: bool,
    pub genus_zero: bool,
    pub irreducible: bool,
    pub q_squarefree: bool,
    pub q_coprime_s: bool,
    pub not_square: bool,
    pub stored_values_match: bool,
}

impl CertifyReport {
    /// Report with every check failed and no recomputed values.
    pub fn empty() -> Self {
        CertifyReport {
            residual_norm: f64::NAN,
            jacobian_min_sv: f64::NAN,
            profile: None,
            residual_ok: false,
            jacobian_ok: false,
            profile_ok: false,
            genus_zero: false,
            irreducible: false,
            q_squarefree: false,
            q_coprime_s: false,
            not_square: false,
            stored_values_match: false,
        }
    }

    pub fn passed(&self) -> bool {
        self.failures().is_empty()
    }

    /// Names of the failed checks.
    pub fn failures(&self) -> Vec<&'static str> {
        let flags = [
            ("residual", self.residual_ok),
            ("jacobian", self.jacobian_ok),
            ("profile", self.profile_ok),
            ("genus", self.genus_zero),
            ("irreducible", self.irreducible),
            ("q_squarefree", self.q_squarefree),
            ("q_coprime_s", self.q_coprime_s),
            ("not_square", self.not_square),
            ("stored_values", self.stored_values_match),
        ];
        flags.iter().filter(|(_, ok)| !ok).map(|(name, _)| *name).collect()
    }
}

/// Self-contained record of a solution `restrict(B, C) = c q s^2`.
#[derive(Clone, Debug, PartialEq)]
pub struct Certificate {
    pub m: u32,
    pub branch: BiForm,
    pub curve: ComplexCurve,
    pub q: ComplexForm,
    pub s: ComplexForm,
    pub c: Complex64,
    pub gauge: Gauge,
    pub residual_norm: f64,
    pub jacobian_min_sv: f64,
    pub profile: MultiplicityProfile,
    pub tangency: TangencyReport,
    /// Start seed; `None` for solutions from the exact line search.
    pub rng_seed: Option<u64>,
    pub tolerances: Tolerances,
    pub report: CertifyReport,
}

/// `{1, 1, 2, ..., 2}` with `2n + 1` twos.
pub fn expected_profile(n: usize) -> MultiplicityProfile {
    let mut v = vec![1, 1];
    v.extend(core::iter::repeat_n(2, 2 * n + 1));
    MultiplicityProfile::new(v)
}

impl Certificate {
    /// Evaluates all stored quantities at `point` and runs the checks.
    pub fn assemble(
        sys: &TangencySystem,
        point: &SystemPoint,
        gauge: Gauge,
        rng_seed: Option<u64>,
        tolerances: Tolerances,
    ) -> Certificate {
        let curve = point.curve();
        let config = tolerances.cluster_config();
        let profile = sys.restrict(&curve).profile(&config).unwrap_or_default();
        let mut cert = Certificate {
            m: sys.n() as u32 + 1,
            branch: sys.branch().clone(),
            tangency: TangencyReport::from_profile(curve.class(), profile.clone()),
            curve,
            q: point.q(),
            s: point.s(),
            c: point.c(),
            gauge,
            residual_norm: sys.relative_residual(point),
            jacobian_min_sv: sys.jacobian_min_sv(point, &gauge),
            profile,
            rng_seed,
            tolerances,
            report: CertifyReport::empty(),
        };
        cert.report = certify(&cert, &tolerances);
        cert
    }

    pub fn n(&self) -> usize {
        self.m as usize - 1
    }

    pub fn point(&self) -> SystemPoint {
        SystemPoint::new(&self.curve, &self.q, &self.s, self.c)
    }

    /// The image under the involution, re-gauged and re-checked. For an
    /// invariant branch curve `restrict(B, sigma C)` is the twist of
    /// `restrict(B, C)`, so `q` and `s` are twisted and `c` is kept.
    pub fn sigma_image(&self) -> Result<Certificate, SeekerError> {
        let sys = TangencySystem::unchecked(&self.branch, self.n())?;
        let mut p = SystemPoint::new(&self.curve.sigma_act(), &self.q.twist(), &self.s.twist(), self.c);
        p.normalize(&self.gauge)?;
        Ok(Certificate::assemble(&sys, &p, self.gauge, self.rng_seed, self.tolerances))
    }

    /// Unit-norm coefficient vector of the curve, for distance tests.
    pub fn curve_direction(&self) -> Vec<Complex64> {
        self.curve.coefficient_vector()
    }
}

fn close(stored: f64, recomputed: f64) -> bool {
    stored == recomputed || (stored - recomputed).abs() <= 1e-6 * stored.abs().max(recomputed.abs()) + 1e-300
}

/// Re-derives every check from the certificate's branch curve, curve, `q`,
/// `s`, `c` and gauge. Nothing stored is trusted except for the comparison
/// in `stored_values_match`.
pub fn certify(cert: &Certificate, tol: &Tolerances) -> CertifyReport {
    let mut report = CertifyReport::empty();
    if cert.m == 0 || cert.curve.n() + 1 != cert.m as usize {
        return report;
    }
    let n = cert.n();
    if cert.q.degree() != 2 || cert.s.degree() != 2 * n + 1 {
        return report;
    }
    let Ok(sys) = TangencySystem::unchecked(&cert.branch, n) else { return report };
    let point = cert.point();
    let config = tol.cluster_config();
    let gap = config.tolerance * config.separation_factor;

    report.residual_norm = sys.relative_residual(&point);
    report.jacobian_min_sv = sys.jacobian_min_sv(&point, &cert.gauge);
    report.residual_ok = report.residual_norm <= tol.residual;
    report.jacobian_ok = report.jacobian_min_sv >= tol.jacobian;

    let profile = sys.restrict(&cert.curve).profile(&config).ok();
    if let Some(p) = &profile {
        report.profile_ok = *p == expected_profile(n);
        report.not_square = p.odd_count() > 0;
        let t = TangencyReport::from_profile(cert.curve.class(), p.clone());
        report.genus_zero = t.geom_genus_pullback == 0;
    }
    report.irreducible = cert.curve.is_irreducible(&config).unwrap_or(false);
    let q_roots = cert.q.roots().unwrap_or_default();
    let s_roots = cert.s.roots().unwrap_or_default();
    report.q_squarefree = q_roots.len() == 2 && q_roots[0].chordal(&q_roots[1]) > gap;
    report.q_coprime_s = !q_roots.is_empty()
        && !s_roots.is_empty()
        && q_roots.iter().all(|a| s_roots.iter().all(|b| a.chordal(b) > gap));
    report.stored_values_match = close(cert.residual_norm, report.residual_norm)
        && close(cert.jacobian_min_sv, report.jacobian_min_sv)
        && profile.as_ref() == Some(&cert.profile)
        && cert.tangency == TangencyReport::from_profile(cert.curve.class(), cert.profile.clone());
    report.profile = profile;
    report
}

/// Human-readable one-line summary.
pub fn summary(cert: &Certificate) -> String {
    use core::fmt::Write;
    let mut s = String::new();
    let _ = write!(
        s,
        "m={} profile={} residual={:.2e} min_sv={:.2e} g={} seed={}",
        cert.m,
        cert.profile,
        cert.residual_norm,
        cert.jacobian_min_sv,
        cert.tangency.geom_genus_pullback,
        cert.rng_seed.map_or_else(|| String::from("exact"), |v| alloc::format!("{v}")),
    );
    s
}
