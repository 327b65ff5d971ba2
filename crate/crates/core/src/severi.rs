//! Tangency profiles (`alpha` sequences) and expected dimensions of
//! logarithmic Severi varieties on `P^1 x P^1`.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::cover::{self, CoverError};
use crate::forms::{ClusterConfig, FormError, MultiplicityProfile};
use crate::quadric::{BiForm, ComplexCurve, DivisorClass, GraphCurve};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SeveriError {
    #[error("alpha has weight {weight} but L.T = {expected}")]
    Incompatible { weight: u64, expected: i64 },
    #[error("gamma = {gamma} is outside [0, p_a(L) = {pa}]")]
    GammaOutOfRange { gamma: i64, pa: i64 },
    #[error("membership is only decided for gamma = 0 (curves of class (1,n) are smooth rational)")]
    UnsupportedGamma,
    #[error("curve has class {actual}, spec expects {expected}")]
    WrongClass { actual: DivisorClass, expected: DivisorClass },
    #[error("branch curve has class {actual}, spec expects {expected}")]
    WrongBranchClass { actual: DivisorClass, expected: DivisorClass },
    #[error(transparent)]
    Cover(#[from] CoverError),
    #[error(transparent)]
    Form(#[from] FormError),
}

/// `[alpha_1, alpha_2, ...]`: `alpha_i` points of contact order `i`.
/// Trailing zeros are dropped, so the derived ordering is lexicographic on
/// the normalized sequence.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AlphaSeq(Vec<u32>);

impl AlphaSeq {
    pub fn new(mut alpha: Vec<u32>) -> Self {
        while alpha.last() == Some(&0) {
            alpha.pop();
        }
        AlphaSeq(alpha)
    }

    pub fn from_profile(p: &MultiplicityProfile) -> Self {
        AlphaSeq::new(p.alpha_counts())
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    /// `|alpha| = sum alpha_i`.
    pub fn size(&self) -> u64 {
        self.0.iter().map(|&a| a as u64).sum()
    }

    /// `I alpha = sum i * alpha_i`.
    pub fn weight(&self) -> u64 {
        self.0.iter().enumerate().map(|(i, &a)| (i as u64 + 1) * a as u64).sum()
    }

    /// `sum (i - 1) alpha_i`.
    pub fn excess(&self) -> u64 {
        self.weight() - self.size()
    }

    pub fn to_profile(&self) -> MultiplicityProfile {
        MultiplicityProfile::from_alpha(&self.0)
    }
}

impl fmt::Display for AlphaSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, a) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{a}")?;
        }
        f.write_str("]")
    }
}

/// `(|alpha|, I alpha)`.
pub fn alpha_stats(a: &AlphaSeq) -> (u64, u64) {
    (a.size(), a.weight())
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SeveriSpec {
    canonical: DivisorClass,
    t: DivisorClass,
    l: DivisorClass,
    gamma: i64,
    alpha: AlphaSeq,
}

impl SeveriSpec {
    pub fn new(
        canonical: DivisorClass,
        t: DivisorClass,
        l: DivisorClass,
        gamma: i64,
        alpha: AlphaSeq,
    ) -> Result<Self, SeveriError> {
        let expected = l.intersect(&t);
        if alpha.weight() as i64 != expected {
            return Err(SeveriError::Incompatible { weight: alpha.weight(), expected });
        }
        let pa = l.arithmetic_genus();
        if gamma < 0 || gamma > pa {
            return Err(SeveriError::GammaOutOfRange { gamma, pa });
        }
        Ok(SeveriSpec { canonical, t, l, gamma, alpha })
    }

    /// The family `L = (1, m-1)`, `T = (4,4)`, `gamma = 0`,
    /// `alpha = [2, 2m-1]`.
    pub fn ladder(m: u32) -> Self {
        assert!(m >= 1, "m starts at 1");
        SeveriSpec::new(
            DivisorClass::canonical(),
            DivisorClass::new(4, 4),
            DivisorClass::new(1, m as i64 - 1),
            0,
            AlphaSeq::new(vec![2, 2 * m - 1]),
        )
        .expect("ladder specs are compatible")
    }

    pub fn canonical(&self) -> DivisorClass {
        self.canonical
    }

    pub fn t(&self) -> DivisorClass {
        self.t
    }

    pub fn l(&self) -> DivisorClass {
        self.l
    }

    pub fn gamma(&self) -> i64 {
        self.gamma
    }

    pub fn alpha(&self) -> &AlphaSeq {
        &self.alpha
    }
}

/// Expected dimension `-(K + T).L + gamma - 1 + |alpha|`. Negative values
/// are returned as is.
pub fn dedieu_dim(s: &SeveriSpec) -> i64 {
    -s.canonical.plus(&s.t).intersect(&s.l) + s.gamma - 1 + s.alpha.size() as i64
}

/// `-K.L - sum (i - 1) alpha_i`. The dimension count needs it to be at
/// least 1; the immersion statements need at least 2.
pub fn dedieu_side_condition(s: &SeveriSpec) -> i64 {
    -s.canonical.intersect(&s.l) - s.alpha.excess() as i64
}

/// All `alpha` with `I alpha = L.T` and expected dimension `target_dim`,
/// for the quadric's canonical class, in lexicographic order.
pub fn enumerate_alphas(l: DivisorClass, t: DivisorClass, gamma: i64, target_dim: i64) -> Vec<AlphaSeq> {
    let weight = l.intersect(&t);
    let parts = target_dim + DivisorClass::canonical().plus(&t).intersect(&l) - gamma + 1;
    if weight < 0 || parts < 0 || parts > weight {
        return if weight == 0 && parts == 0 { vec![AlphaSeq::default()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    let mut counts = vec![0u32; weight as usize];
    partitions(weight as u32, parts as u32, weight as u32, &mut counts, &mut out);
    out.sort();
    out
}

/// Partitions of `w` into exactly `k` parts, each at most `max`, recorded
/// as multiplicity counts.
fn partitions(w: u32, k: u32, max: u32, counts: &mut Vec<u32>, out: &mut Vec<AlphaSeq>) {
    if k == 0 {
        if w == 0 {
            out.push(AlphaSeq::new(counts.clone()));
        }
        return;
    }
    if w < k || w > k * max {
        return;
    }
    let hi = max.min(w - (k - 1));
    for part in (1..=hi).rev() {
        counts[part as usize - 1] += 1;
        partitions(w - part, k - 1, part, counts, out);
        counts[part as usize - 1] -= 1;
    }
}

fn check_classes(b: &BiForm, class: DivisorClass, s: &SeveriSpec) -> Result<(), SeveriError> {
    if s.gamma != 0 {
        return Err(SeveriError::UnsupportedGamma);
    }
    if class != s.l {
        return Err(SeveriError::WrongClass { actual: class, expected: s.l });
    }
    if b.class() != s.t {
        return Err(SeveriError::WrongBranchClass { actual: b.class(), expected: s.t });
    }
    Ok(())
}

/// Exact membership: `C` irreducible with contact profile `alpha` against `B`.
pub fn membership_verify(b: &BiForm, c: &GraphCurve, s: &SeveriSpec) -> Result<bool, SeveriError> {
    check_classes(b, c.class(), s)?;
    if !c.is_irreducible() {
        return Ok(false);
    }
    let report = cover::analyze(b, c)?;
    Ok(AlphaSeq::from_profile(&report.profile) == s.alpha)
}

/// Membership for a floating-point curve, with profiles and irreducibility
/// decided by root clustering at `config`.
pub fn membership_verify_numeric(
    b: &BiForm,
    c: &ComplexCurve,
    s: &SeveriSpec,
    config: &ClusterConfig,
) -> Result<bool, SeveriError> {
    check_classes(b, c.class(), s)?;
    if !c.is_irreducible(config)? {
        return Ok(false);
    }
    let profile = b.to_float().restrict(c).profile(config)?;
    Ok(AlphaSeq::from_profile(&profile) == s.alpha)
}
