//! Subcommand implementations. Each returns the text to print and whether
//! the command succeeded; `main` maps the result to an exit code.

use std::collections::BTreeMap;
use std::fmt::Write;
use std::path::{Path, PathBuf};

use enriques_core::cover::{analyze, CoverError};
use enriques_core::lattice::{
    cy_report, hs_gram, phi_stable, CyReport, LatticeError, LatticeVector, DEFAULT_RADIUS, RANK,
};
use enriques_core::quadric::{BiForm, DivisorClass, FixedPoint, GraphCurve, QuadricError, Singularities};
use enriques_core::seeker::{exact_tangent_lines, Certificate, NewtonOptions, SeekOptions, SeekerError, StartMode, Tolerances};
use enriques_core::severi::{
    dedieu_dim, dedieu_side_condition, membership_verify, membership_verify_numeric, AlphaSeq, SeveriError, SeveriSpec,
};
use num_rational::BigRational;
use serde::Serialize;

use crate::formats::{read_json, write_json, BiFormJson, CertificateJson, EnriquesJson, FormatError, GraphCurveJson, TangencyJson, TOOL, VERSION};
use crate::ladder::{ladder_covers_residue_class, ladder_rows};
use crate::parallel::{par_congruence_scan, par_seek, thread_pool};

/// Exit 1 for domain failures, 2 for bad input.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Domain(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Domain(_) => 1,
            CliError::Input(_) => 2,
        }
    }
}

impl From<FormatError> for CliError {
    fn from(e: FormatError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<QuadricError> for CliError {
    fn from(e: QuadricError) -> Self {
        match e {
            QuadricError::ReducibleCurve | QuadricError::CurveInBranch => CliError::Domain(e.to_string()),
            e => CliError::Input(e.to_string()),
        }
    }
}

impl From<CoverError> for CliError {
    fn from(e: CoverError) -> Self {
        match e {
            CoverError::Quadric(q) => q.into(),
            e => CliError::Domain(e.to_string()),
        }
    }
}

impl From<SeveriError> for CliError {
    fn from(e: SeveriError) -> Self {
        CliError::Domain(e.to_string())
    }
}

impl From<SeekerError> for CliError {
    fn from(e: SeekerError) -> Self {
        match e {
            SeekerError::Quadric(q) => q.into(),
            e => CliError::Domain(e.to_string()),
        }
    }
}

impl From<LatticeError> for CliError {
    fn from(e: LatticeError) -> Self {
        CliError::Domain(e.to_string())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub text: String,
    pub ok: bool,
}

impl Outcome {
    fn new(text: String, ok: bool) -> Self {
        Outcome { text, ok }
    }
}

pub fn load_branch(path: &Path) -> Result<BiForm, CliError> {
    Ok(read_json::<BiFormJson>(path)?.to_form()?)
}

pub fn load_curve(path: &Path) -> Result<GraphCurve, CliError> {
    Ok(read_json::<GraphCurveJson>(path)?.to_curve()?)
}

/// Parses `"a,b,c"` into integers.
pub fn parse_list<T: std::str::FromStr>(s: &str) -> Result<Vec<T>, CliError> {
    s.split(',')
        .map(|p| p.trim().parse::<T>().map_err(|_| CliError::Input(format!("bad list entry {p:?} in {s:?}"))))
        .collect()
}

fn parse_class(s: &str) -> Result<DivisorClass, CliError> {
    match parse_list::<i64>(s)?[..] {
        [a, b] => Ok(DivisorClass::new(a, b)),
        _ => Err(CliError::Input(format!("expected a class a,b, got {s:?}"))),
    }
}

pub fn cmd_check(branch: &Path) -> Result<Outcome, CliError> {
    let b = load_branch(branch)?;
    let r = b.check_branch_admissible()?;
    let mut t = String::new();
    let yes = |v: bool| if v { "yes" } else { "no" };
    writeln!(t, "sigma-invariant: {}", yes(r.sigma_invariant)).unwrap();
    if r.avoids_fixed_points {
        writeln!(t, "avoids fixed points: yes").unwrap();
    } else {
        let hit: Vec<String> = r.fixed_points_hit.iter().map(FixedPoint::to_string).collect();
        writeln!(t, "avoids fixed points: no, contains {}", hit.join(" ")).unwrap();
    }
    match &r.singularities {
        Singularities::None => writeln!(t, "smooth: yes").unwrap(),
        Singularities::Degenerate => writeln!(t, "smooth: no (non-reduced or contains a ruling)").unwrap(),
        Singularities::Points(p) if p.is_empty() => writeln!(t, "smooth: yes").unwrap(),
        Singularities::Points(p) => {
            writeln!(t, "smooth: no, {} singular point(s)", p.len()).unwrap();
            for (x, y) in p {
                writeln!(t, "  x = ({:.6} : {:.6}), y = ({:.6} : {:.6})", x.y0, x.y1, y.y0, y.y1).unwrap();
            }
        }
    }
    let ok = r.is_admissible();
    writeln!(t, "admissible: {}", yes(ok)).unwrap();
    Ok(Outcome::new(t, ok))
}

pub fn cmd_tangency(branch: &Path, curve: &Path) -> Result<Outcome, CliError> {
    let b = load_branch(branch)?;
    let c = load_curve(curve)?;
    let r = analyze(&b, &c)?;
    let mut t = String::new();
    writeln!(t, "class: {}", r.class).unwrap();
    writeln!(t, "profile: {}", r.profile).unwrap();
    writeln!(t, "alpha: {}", AlphaSeq::from_profile(&r.profile)).unwrap();
    let sing: Vec<String> = r.singularities().map(|s| s.to_string()).collect();
    writeln!(t, "singularities above contacts: {}", sing.join(" ")).unwrap();
    writeln!(t, "p_a of preimage: {}", r.pa_pullback).unwrap();
    writeln!(t, "delta: {}", r.delta_total).unwrap();
    writeln!(t, "geometric genus of preimage: {}", r.geom_genus_pullback).unwrap();
    writeln!(t, "splits: {}", if r.splits { "yes" } else { "no" }).unwrap();
    Ok(Outcome::new(t, true))
}

pub fn cmd_severi_dim(k: &str, tt: &str, l: &str, gamma: i64, alpha: &str) -> Result<Outcome, CliError> {
    let k = parse_class(k)?;
    if k != DivisorClass::canonical() {
        return Err(CliError::Input(format!("only the quadric's canonical class (-2,-2) is supported, got {k}")));
    }
    let spec = SeveriSpec::new(k, parse_class(tt)?, parse_class(l)?, gamma, AlphaSeq::new(parse_list(alpha)?))?;
    let dim = dedieu_dim(&spec);
    let side = dedieu_side_condition(&spec);
    let mut t = String::new();
    writeln!(t, "L = {}, T = {}, gamma = {}, alpha = {}", spec.l(), spec.t(), spec.gamma(), spec.alpha()).unwrap();
    writeln!(t, "L.T = {}, p_a(L) = {}", spec.l().intersect(&spec.t()), spec.l().arithmetic_genus()).unwrap();
    writeln!(t, "expected dimension: {dim}").unwrap();
    writeln!(t, "side condition -K.L - sum (i-1) alpha_i: {side}").unwrap();
    writeln!(t, "dimension statement applies: {}", if side >= 1 { "yes" } else { "no" }).unwrap();
    Ok(Outcome::new(t, true))
}

/// Inputs of `seek`.
#[derive(Clone, Debug, PartialEq)]
pub struct PipelineConfig {
    pub branch: PathBuf,
    pub m: u32,
    pub seeds: usize,
    pub budget: Option<usize>,
    pub master_seed: u64,
    pub tolerances: Tolerances,
    pub symmetric_starts: bool,
    pub out: Option<PathBuf>,
}

impl PipelineConfig {
    pub fn validate(&self) -> Result<(), CliError> {
        if self.m < 1 {
            return Err(CliError::Input("m must be at least 1".into()));
        }
        let t = self.tolerances;
        if !(t.residual > 0.0 && t.jacobian > 0.0 && t.cluster > 0.0) {
            return Err(CliError::Input("tolerances must be positive".into()));
        }
        Ok(())
    }

    pub fn seek_options(&self) -> SeekOptions {
        let start = if self.symmetric_starts { StartMode::Symmetric } else { StartMode::Uniform };
        SeekOptions {
            seeds: self.seeds,
            master_seed: self.master_seed,
            budget: self.budget,
            newton: NewtonOptions { start, ..Default::default() },
            tolerances: self.tolerances,
            ..Default::default()
        }
    }
}

pub fn enriques_data(m: u32) -> Result<EnriquesJson, LatticeError> {
    let CyReport { class, pa, phi, two_divisible } = cy_report(m as i64, DEFAULT_RADIUS)?;
    Ok(EnriquesJson {
        class: class.coords().to_vec(),
        pa,
        phi: phi.value,
        phi_witness: phi.witness.coords().to_vec(),
        two_divisible,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SeekSummary {
    pub tool: String,
    pub version: String,
    pub m: u32,
    pub master_seed: u64,
    pub seeds: usize,
    pub attempted: usize,
    pub iterations: usize,
    pub budget_exhausted: bool,
    pub newton: BTreeMap<String, usize>,
    pub rejections: BTreeMap<String, usize>,
    pub certified: usize,
    pub duplicates: usize,
    pub sigma_duplicates: usize,
    pub distinct: usize,
    pub enriques: EnriquesJson,
    pub files: Vec<String>,
}

/// Runs the search and returns the certificates, the summary, and the text
/// report. Files are written when `config.out` is set.
pub fn run_seek(config: &PipelineConfig) -> Result<(Vec<CertificateJson>, SeekSummary, Outcome), CliError> {
    config.validate()?;
    let b = load_branch(&config.branch)?;
    let options = config.seek_options();
    let enriques = enriques_data(config.m)?;
    let mut certs = Vec::new();
    let mut summary = SeekSummary {
        tool: TOOL.into(),
        version: VERSION.into(),
        m: config.m,
        master_seed: config.master_seed,
        seeds: config.seeds,
        attempted: 0,
        iterations: 0,
        budget_exhausted: false,
        newton: BTreeMap::new(),
        rejections: BTreeMap::new(),
        certified: 0,
        duplicates: 0,
        sigma_duplicates: 0,
        distinct: 0,
        enriques: enriques.clone(),
        files: Vec::new(),
    };
    if config.m == 1 {
        let lines = exact_tangent_lines(&b, &config.tolerances)?;
        summary.attempted = lines.roots.len();
        summary.certified = lines.lines.len();
        for (_, profile) in &lines.rejected {
            let key = profile.as_ref().map_or_else(|| "ambiguous".to_string(), |p| format!("profile {p}"));
            *summary.rejections.entry(key).or_default() += 1;
        }
        for line in lines.lines.iter().filter(|l| l.member) {
            certs.push(CertificateJson::from_certificate(&line.certificate, line.exact.as_ref(), Some(enriques.clone())));
        }
    } else {
        let pool = thread_pool();
        let out = par_seek(&pool, &b, config.m, &options)?;
        summary.attempted = out.attempted;
        summary.iterations = out.iterations;
        summary.budget_exhausted = out.budget_exhausted;
        summary.newton = out.status_counts.iter().map(|(k, v)| (format!("{k:?}"), *v)).collect();
        summary.rejections = out.rejections.iter().map(|(k, v)| (k.to_string(), *v)).collect();
        summary.certified = out.certified;
        summary.duplicates = out.duplicates;
        summary.sigma_duplicates = out.sigma_duplicates;
        for c in &out.certificates {
            certs.push(CertificateJson::from_certificate(c, None, Some(enriques.clone())));
        }
    }
    summary.distinct = certs.len();
    if let Some(dir) = &config.out {
        std::fs::create_dir_all(dir).map_err(|e| CliError::Input(format!("{}: {e}", dir.display())))?;
        for (i, c) in certs.iter().enumerate() {
            let name = format!("cert_m{}_{i:03}.json", config.m);
            write_json(&dir.join(&name), c)?;
            summary.files.push(name);
        }
        write_json(&dir.join(format!("summary_m{}.json", config.m)), &summary)?;
    }
    let mut t = String::new();
    writeln!(t, "m = {}: {} start(s), {} certified, {} distinct", config.m, summary.attempted, summary.certified, summary.distinct)
        .unwrap();
    if summary.budget_exhausted {
        writeln!(t, "iteration budget exhausted after {} iterations", summary.iterations).unwrap();
    }
    if !summary.rejections.is_empty() {
        writeln!(t, "rejected: {:?}", summary.rejections).unwrap();
    }
    for c in &certs {
        let seed = c.rng_seed.map_or_else(|| "exact".to_string(), |s| s.to_string());
        writeln!(
            t,
            "  profile {:?} residual {:.2e} min_sv {:.2e} g {} seed {seed}",
            c.profile, c.residual_norm, c.jacobian_min_sv, c.tangency.geom_genus_pullback
        )
        .unwrap();
    }
    writeln!(
        t,
        "Enriques image: p_a = {} (4m-3 = {}), phi = {}, 2-divisible: {}",
        enriques.pa,
        4 * config.m as i64 - 3,
        enriques.phi,
        enriques.two_divisible
    )
    .unwrap();
    let ok = !certs.is_empty();
    if !ok {
        writeln!(t, "no certificate found").unwrap();
    }
    Ok((certs, summary, Outcome::new(t, ok)))
}

pub fn cmd_seek(config: &PipelineConfig) -> Result<Outcome, CliError> {
    Ok(run_seek(config)?.2)
}

/// Names of failed checks for a certificate file; empty when it verifies.
pub fn verify_certificate(file: &CertificateJson) -> Result<Vec<String>, CliError> {
    let cert: Certificate = file.to_certificate()?;
    let mut failed: Vec<String> = cert.report.failures().iter().map(|s| s.to_string()).collect();
    let config = cert.tolerances.cluster_config();
    match cert.branch.check_branch_admissible() {
        Ok(r) if r.is_admissible() => {}
        _ => failed.push("branch".into()),
    }
    let profile = cert.report.profile.clone().unwrap_or_default();
    let alpha = AlphaSeq::new(file.alpha.clone());
    if alpha != AlphaSeq::from_profile(&profile) || &alpha != SeveriSpec::ladder(cert.m).alpha() {
        failed.push("alpha".into());
    }
    let spec = SeveriSpec::new(
        DivisorClass::canonical(),
        DivisorClass::new(4, 4),
        cert.curve.class(),
        0,
        alpha,
    );
    let member = match &spec {
        Ok(spec) => membership_verify_numeric(&cert.branch, &cert.curve, spec, &config).unwrap_or(false),
        Err(_) => false,
    };
    if !member {
        failed.push("membership".into());
    }
    if let Some((x0, x1)) = file.exact_line()? {
        let exact_ok = match (&spec, GraphCurve::line(x0.clone(), x1.clone())) {
            (Ok(spec), Ok(line)) => {
                membership_verify(&cert.branch, &line, spec).unwrap_or(false) && line_matches(&cert, &x0, &x1)
            }
            _ => false,
        };
        if !exact_ok {
            failed.push("exact_line".into());
        }
    }
    let tangency = TangencyJson::from_report(&enriques_core::cover::TangencyReport::from_profile(cert.curve.class(), profile));
    if tangency != file.tangency {
        failed.push("tangency".into());
    }
    if crate::formats::ChecksJson::from_report(&cert.report) != file.checks {
        failed.push("stored_checks".into());
    }
    if let Some(e) = &file.enriques {
        if enriques_data(cert.m).ok().as_ref() != Some(e) {
            failed.push("enriques".into());
        }
    }
    Ok(failed)
}

/// The float line and the exact parameter name the same point of P^1.
fn line_matches(cert: &Certificate, x0: &BigRational, x1: &BigRational) -> bool {
    use enriques_core::exact::to_f64;
    let a = cert.curve.a().coeffs()[0];
    let b = cert.curve.b().coeffs()[0];
    // the curve is x0 A + x1 B = 0 with (A, B) = (x1, -x0) up to scale
    let (p0, p1) = (-b, a);
    let (e0, e1) = (to_f64(x0), to_f64(x1));
    let cross = (p0 * e1 - p1 * e0).norm();
    let scale = (p0.norm_sqr() + p1.norm_sqr()).sqrt() * (e0 * e0 + e1 * e1).sqrt();
    cross <= 1e-8 * scale
}

pub fn cmd_verify(path: &Path) -> Result<Outcome, CliError> {
    let file: CertificateJson = read_json(path)?;
    let failed = verify_certificate(&file)?;
    let text = if failed.is_empty() {
        format!("{}: ok\n", path.display())
    } else {
        format!("{}: FAILED {}\n", path.display(), failed.join(", "))
    };
    Ok(Outcome::new(text, failed.is_empty()))
}

pub fn parse_lattice_vector(s: &str) -> Result<LatticeVector, CliError> {
    let v: Vec<i64> = parse_list(s)?;
    let arr: [i64; RANK] =
        v.try_into().map_err(|v: Vec<i64>| CliError::Input(format!("expected {RANK} coordinates, got {}", v.len())))?;
    Ok(LatticeVector(arr))
}

pub fn cmd_phi(class: &str, radius: i64) -> Result<Outcome, CliError> {
    if radius < 1 {
        return Err(CliError::Input("radius must be positive".into()));
    }
    let h = parse_lattice_vector(class)?;
    let p = phi_stable(&h, radius)?;
    let text = format!(
        "H = {h}\nH^2 = {}\nphi = {}\nwitness = {}\nstable at radius {} and {}\n",
        h.square(),
        p.value,
        p.witness,
        radius,
        radius + 2
    );
    Ok(Outcome::new(text, true))
}

pub fn cmd_lattice_hs(m: u32) -> Result<Outcome, CliError> {
    if m < 1 {
        return Err(CliError::Input("m must be at least 1".into()));
    }
    let spec = hs_gram(m);
    let mut t = String::new();
    writeln!(t, "label: {:?}", spec.label).unwrap();
    for row in &spec.gram {
        let cells: Vec<String> = row.iter().map(|v| format!("{v:>4}")).collect();
        writeln!(t, "{}", cells.join(" ")).unwrap();
    }
    let (pos, neg, zero) = spec.signature();
    writeln!(t, "rank {}, determinant {}, signature ({pos},{neg}), nullity {zero}", spec.rank(), spec.determinant()).unwrap();
    writeln!(t, "even symmetric: {}", spec.is_even_symmetric()).unwrap();
    Ok(Outcome::new(t, true))
}

pub fn cmd_lattice_scan(radius: i64) -> Result<Outcome, CliError> {
    if !(0..=4).contains(&radius) {
        return Err(CliError::Input("scan radius must lie in 0..=4".into()));
    }
    let tally = par_congruence_scan(&thread_pool(), radius);
    let text = format!(
        "box radius {radius}: {} vectors, {} with H^2 >= 0, {} of them 2-divisible; odd squares {}, congruence failures {}\n",
        tally.vectors, tally.nonnegative, tally.two_divisible, tally.odd_square, tally.congruence_failures
    );
    Ok(Outcome::new(text, tally.passed()))
}

pub fn cmd_table(m_max: u32) -> Result<Outcome, CliError> {
    if m_max < 1 {
        return Err(CliError::Input("m_max must be at least 1".into()));
    }
    let rows = ladder_rows(m_max);
    let mut t = String::new();
    writeln!(t, "{:>6} {:>7} {:>14} {:>4} {:>5}", "m", "k", "alpha", "dim", "side").unwrap();
    let mut ok = true;
    for r in &rows {
        ok &= r.k == 4 * r.m as i64 - 3 && r.dim == 0;
        writeln!(t, "{:>6} {:>7} {:>14} {:>4} {:>5}", r.m, r.k, r.alpha.to_string(), r.dim, r.side).unwrap();
    }
    let covers = ladder_covers_residue_class(&rows);
    ok &= covers;
    writeln!(
        t,
        "k = 4m - 3 for m = 1..{m_max} covers every k = 1 mod 4 up to {}: {}",
        4 * m_max as i64 - 3,
        if covers { "yes" } else { "no" }
    )
    .unwrap();
    Ok(Outcome::new(t, ok))
}
