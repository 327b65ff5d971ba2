//! JSON file formats.
//!
//! Rationals are strings `"num/den"` or `"num"`; complex numbers are `[re, im]`.

use std::path::Path;

use enriques_core::cover::TangencyReport;
use enriques_core::exact::{format_rational, parse_rational};
use enriques_core::forms::{BinaryForm, ComplexForm, MultiplicityProfile};
use enriques_core::quadric::{BiForm, ComplexCurve, GraphCurve, QuadricError};
use enriques_core::seeker::{certify, Certificate, CertifyReport, Gauge, Tolerances};
use enriques_core::severi::AlphaSeq;
use num_complex::Complex64;
use num_rational::BigRational;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

pub const TOOL: &str = env!("CARGO_PKG_NAME");
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("bad rational {0:?}")]
    Rational(String),
    #[error("{0}")]
    Shape(String),
    #[error(transparent)]
    Quadric(#[from] QuadricError),
}

fn rational(s: &str) -> Result<BigRational, FormatError> {
    parse_rational(s).ok_or_else(|| FormatError::Rational(s.to_string()))
}

fn rationals(v: &[String]) -> Result<Vec<BigRational>, FormatError> {
    v.iter().map(|s| rational(s)).collect()
}

fn complex(v: &[[f64; 2]]) -> Vec<Complex64> {
    v.iter().map(|&[re, im]| Complex64::new(re, im)).collect()
}

fn pairs(v: &[Complex64]) -> Vec<[f64; 2]> {
    v.iter().map(|z| [z.re, z.im]).collect()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BinaryFormJson {
    pub degree: usize,
    /// From `y0^d` to `y1^d`.
    pub coeffs: Vec<String>,
}

impl BinaryFormJson {
    pub fn from_form(f: &BinaryForm) -> Self {
        BinaryFormJson { degree: f.degree(), coeffs: f.coeffs().iter().map(format_rational).collect() }
    }

    pub fn to_form(&self) -> Result<BinaryForm, FormatError> {
        if self.coeffs.len() != self.degree + 1 {
            return Err(FormatError::Shape(format!(
                "degree {} needs {} coefficients, got {}",
                self.degree,
                self.degree + 1,
                self.coeffs.len()
            )));
        }
        BinaryForm::new(rationals(&self.coeffs)?).map_err(|e| FormatError::Shape(e.to_string()))
    }
}

/// Terms `[i, j, k, l, c]` for `c * x0^i x1^j y0^k y1^l`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BiFormJson {
    pub bidegree: [usize; 2],
    pub monomials: Vec<(usize, usize, usize, usize, String)>,
}

impl BiFormJson {
    pub fn from_form(b: &BiForm) -> Self {
        let (d1, d2) = b.bidegree();
        BiFormJson {
            bidegree: [d1, d2],
            monomials: b.monomials().into_iter().map(|m| (m.i, m.j, m.k, m.l, format_rational(&m.coeff))).collect(),
        }
    }

    pub fn to_form(&self) -> Result<BiForm, FormatError> {
        let terms = self
            .monomials
            .iter()
            .map(|(i, j, k, l, c)| Ok((*i, *j, *k, *l, rational(c)?)))
            .collect::<Result<Vec<_>, FormatError>>()?;
        Ok(BiForm::from_monomials((self.bidegree[0], self.bidegree[1]), terms)?)
    }
}

/// The curve `x0 A(y) + x1 B(y) = 0`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GraphCurveJson {
    pub n: usize,
    #[serde(rename = "A")]
    pub a: Vec<String>,
    #[serde(rename = "B")]
    pub b: Vec<String>,
}

impl GraphCurveJson {
    pub fn from_curve(c: &GraphCurve) -> Self {
        GraphCurveJson {
            n: c.n(),
            a: c.a().coeffs().iter().map(format_rational).collect(),
            b: c.b().coeffs().iter().map(format_rational).collect(),
        }
    }

    pub fn to_curve(&self) -> Result<GraphCurve, FormatError> {
        if self.a.len() != self.n + 1 || self.b.len() != self.n + 1 {
            return Err(FormatError::Shape(format!("n = {} needs {} coefficients in A and B", self.n, self.n + 1)));
        }
        let a = BinaryForm::new(rationals(&self.a)?).map_err(|e| FormatError::Shape(e.to_string()))?;
        let b = BinaryForm::new(rationals(&self.b)?).map_err(|e| FormatError::Shape(e.to_string()))?;
        Ok(GraphCurve::new(a, b)?)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ComplexCurveJson {
    pub n: usize,
    #[serde(rename = "A")]
    pub a: Vec<[f64; 2]>,
    #[serde(rename = "B")]
    pub b: Vec<[f64; 2]>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GaugeJson {
    pub curve: usize,
    pub q: usize,
    pub s: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TangencyJson {
    pub class: [i64; 2],
    pub odd_points: usize,
    pub pa_pullback: i64,
    pub delta_total: i64,
    pub geom_genus_pullback: i64,
    pub splits: bool,
}

impl TangencyJson {
    pub fn from_report(t: &TangencyReport) -> Self {
        TangencyJson {
            class: [t.class.a, t.class.b],
            odd_points: t.odd_points,
            pa_pullback: t.pa_pullback,
            delta_total: t.delta_total,
            geom_genus_pullback: t.geom_genus_pullback,
            splits: t.splits,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TolerancesJson {
    pub residual: f64,
    pub jacobian: f64,
    pub cluster: f64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChecksJson {
    pub residual: bool,
    pub jacobian: bool,
    pub profile: bool,
    pub genus: bool,
    pub irreducible: bool,
    pub q_squarefree: bool,
    pub q_coprime_s: bool,
    pub not_square: bool,
    pub stored_values: bool,
}

impl ChecksJson {
    pub fn from_report(r: &CertifyReport) -> Self {
        ChecksJson {
            residual: r.residual_ok,
            jacobian: r.jacobian_ok,
            profile: r.profile_ok,
            genus: r.genus_zero,
            irreducible: r.irreducible,
            q_squarefree: r.q_squarefree,
            q_coprime_s: r.q_coprime_s,
            not_square: r.not_square,
            stored_values: r.stored_values_match,
        }
    }
}

/// Class of the curve on the Enriques surface.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnriquesJson {
    pub class: Vec<i64>,
    pub pa: i64,
    pub phi: i64,
    pub phi_witness: Vec<i64>,
    pub two_divisible: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CertificateJson {
    pub tool: String,
    pub version: String,
    pub m: u32,
    pub branch: BiFormJson,
    pub curve: ComplexCurveJson,
    /// `[x0, x1]` for lines `x = (x0 : x1)` recovered exactly.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub exact_line: Option<[String; 2]>,
    pub q: Vec<[f64; 2]>,
    pub s: Vec<[f64; 2]>,
    pub c: [f64; 2],
    pub gauge: GaugeJson,
    pub residual_norm: f64,
    pub jacobian_min_sv: f64,
    pub profile: Vec<u32>,
    pub alpha: Vec<u32>,
    pub tangency: TangencyJson,
    pub rng_seed: Option<u64>,
    pub tolerances: TolerancesJson,
    pub checks: ChecksJson,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub enriques: Option<EnriquesJson>,
}

impl CertificateJson {
    pub fn from_certificate(
        cert: &Certificate,
        exact_line: Option<&(BigRational, BigRational)>,
        enriques: Option<EnriquesJson>,
    ) -> Self {
        let t = cert.tolerances;
        CertificateJson {
            tool: TOOL.to_string(),
            version: VERSION.to_string(),
            m: cert.m,
            branch: BiFormJson::from_form(&cert.branch),
            curve: ComplexCurveJson {
                n: cert.curve.n(),
                a: pairs(cert.curve.a().coeffs()),
                b: pairs(cert.curve.b().coeffs()),
            },
            exact_line: exact_line.map(|(x0, x1)| [format_rational(x0), format_rational(x1)]),
            q: pairs(cert.q.coeffs()),
            s: pairs(cert.s.coeffs()),
            c: [cert.c.re, cert.c.im],
            gauge: GaugeJson { curve: cert.gauge.curve, q: cert.gauge.q, s: cert.gauge.s },
            residual_norm: cert.residual_norm,
            jacobian_min_sv: cert.jacobian_min_sv,
            profile: cert.profile.entries().to_vec(),
            alpha: AlphaSeq::from_profile(&cert.profile).as_slice().to_vec(),
            tangency: TangencyJson::from_report(&cert.tangency),
            rng_seed: cert.rng_seed,
            tolerances: TolerancesJson { residual: t.residual, jacobian: t.jacobian, cluster: t.cluster },
            checks: ChecksJson::from_report(&cert.report),
            enriques,
        }
    }

    pub fn tolerances(&self) -> Tolerances {
        Tolerances {
            residual: self.tolerances.residual,
            jacobian: self.tolerances.jacobian,
            cluster: self.tolerances.cluster,
        }
    }

    pub fn exact_line(&self) -> Result<Option<(BigRational, BigRational)>, FormatError> {
        self.exact_line.as_ref().map(|[a, b]| Ok((rational(a)?, rational(b)?))).transpose()
    }

    /// Rebuilds the certificate. The stored check flags are ignored; the
    /// report is recomputed with the stored tolerances.
    pub fn to_certificate(&self) -> Result<Certificate, FormatError> {
        let n = self.curve.n;
        if self.curve.a.len() != n + 1 || self.curve.b.len() != n + 1 {
            return Err(FormatError::Shape(format!("curve with n = {n} needs {} coefficients in A and B", n + 1)));
        }
        if self.m as usize != n + 1 {
            return Err(FormatError::Shape(format!("m = {} does not match curve degree n = {n}", self.m)));
        }
        if self.q.len() != 3 || self.s.len() != 2 * n + 2 {
            return Err(FormatError::Shape(format!("q needs 3 and s needs {} coefficients", 2 * n + 2)));
        }
        let g = self.gauge;
        if g.curve >= 2 * n + 2 || g.q >= 3 || g.s >= 2 * n + 2 {
            return Err(FormatError::Shape("gauge index out of range".to_string()));
        }
        let branch = self.branch.to_form()?;
        let curve = ComplexCurve::new(ComplexForm::new(complex(&self.curve.a)), ComplexForm::new(complex(&self.curve.b)))?;
        let profile = MultiplicityProfile::new(self.profile.clone());
        let tolerances = self.tolerances();
        let mut cert = Certificate {
            m: self.m,
            tangency: TangencyReport::from_profile(curve.class(), profile.clone()),
            branch,
            curve,
            q: ComplexForm::new(complex(&self.q)),
            s: ComplexForm::new(complex(&self.s)),
            c: Complex64::new(self.c[0], self.c[1]),
            gauge: Gauge { curve: g.curve, q: g.q, s: g.s },
            residual_norm: self.residual_norm,
            jacobian_min_sv: self.jacobian_min_sv,
            profile,
            rng_seed: self.rng_seed,
            tolerances,
            report: CertifyReport::empty(),
        };
        cert.report = certify(&cert, &tolerances);
        Ok(cert)
    }
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, FormatError> {
    let text = std::fs::read_to_string(path).map_err(|source| FormatError::Io { path: path.display().to_string(), source })?;
    Ok(serde_json::from_str(&text)?)
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<(), FormatError> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    std::fs::write(path, text).map_err(|source| FormatError::Io { path: path.display().to_string(), source })
}
