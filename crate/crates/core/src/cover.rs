//! Bookkeeping for the double cover of the quadric branched along a
//! `(4,4)` curve: whether a curve splits in the cover, and the arithmetic and
//! geometric genus of its preimage, read off from the tangency profile.

use core::fmt;

use crate::forms::{FormError, MultiplicityProfile};
use crate::quadric::{BiForm, DivisorClass, GraphCurve, QuadricError};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum CoverError {
    #[error(transparent)]
    Quadric(#[from] QuadricError),
    #[error(transparent)]
    Form(#[from] FormError),
    #[error("multiplicity must be positive")]
    ZeroMultiplicity,
    #[error("tangency orders must be odd (got {0})")]
    EvenOrder(u32),
    #[error("class ({0},{1}) is outside the formula's range: need m = 1 or n = 1")]
    OutOfRange(i64, i64),
}

/// Local type of the preimage of a point where the curve meets the branch
/// curve with multiplicity `k`: `t^2 = x^k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SingularityType {
    Smooth,
    /// `A_k`.
    A(u32),
}

impl fmt::Display for SingularityType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SingularityType::Smooth => f.write_str("smooth"),
            SingularityType::A(k) => write!(f, "A{k}"),
        }
    }
}

/// Drop in genus caused by a contact of order `k`: `floor(k/2)`.
pub fn delta_invariant(k: u32) -> Result<u32, CoverError> {
    if k == 0 {
        return Err(CoverError::ZeroMultiplicity);
    }
    Ok(k / 2)
}

pub fn ak_type(k: u32) -> Result<SingularityType, CoverError> {
    match k {
        0 => Err(CoverError::ZeroMultiplicity),
        1 => Ok(SingularityType::Smooth),
        k => Ok(SingularityType::A(k - 1)),
    }
}

/// Arithmetic genus of the preimage of a curve of class `(m, n)`: `2mn + 1`.
pub fn pullback_pa(class: DivisorClass) -> i64 {
    2 * class.a * class.b + 1
}

/// Preimages intersect with twice the multiplicity downstairs.
pub fn pullback_square(c1: DivisorClass, c2: DivisorClass) -> i64 {
    2 * c1.intersect(&c2)
}

/// Number of extra tangency points a curve of class `(m, n)` with two odd
/// contacts of orders `k`, `k2` needs for a rational preimage:
/// `2m + 2n - (k-1)/2 - (k2-1)/2 - 1`.
pub fn required_even_count(m: i64, n: i64, k: u32, k2: u32) -> Result<i64, CoverError> {
    if m != 1 && n != 1 {
        return Err(CoverError::OutOfRange(m, n));
    }
    for order in [k, k2] {
        if order % 2 == 0 {
            return Err(CoverError::EvenOrder(order));
        }
    }
    Ok(2 * m + 2 * n - (k as i64 - 1) / 2 - (k2 as i64 - 1) / 2 - 1)
}

/// What the tangency profile says about the preimage of a curve.
///
/// `splits == false` is the computable proxy for an irreducible preimage:
/// the restriction of the branch curve is not a square. Irreducibility of the
/// preimage on a very general surface is not decided here.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TangencyReport {
    pub class: DivisorClass,
    pub profile: MultiplicityProfile,
    pub odd_points: usize,
    pub pa_pullback: i64,
    pub delta_total: i64,
    /// `pa_pullback - delta_total`; `-1` when the preimage splits into two
    /// disjoint rational components.
    pub geom_genus_pullback: i64,
    pub splits: bool,
}

impl TangencyReport {
    pub fn from_profile(class: DivisorClass, profile: MultiplicityProfile) -> Self {
        let odd_points = profile.odd_count();
        let delta_total: i64 = profile.entries().iter().map(|&k| (k / 2) as i64).sum();
        let pa = pullback_pa(class);
        TangencyReport {
            class,
            odd_points,
            pa_pullback: pa,
            delta_total,
            geom_genus_pullback: pa - delta_total,
            splits: odd_points == 0,
            profile,
        }
    }

    pub fn singularities(&self) -> impl Iterator<Item = SingularityType> + '_ {
        self.profile.entries().iter().map(|&k| ak_type(k).expect("profile entries are positive"))
    }
}

/// Exact analysis of `C` against the branch curve `B`.
pub fn analyze(b: &BiForm, c: &GraphCurve) -> Result<TangencyReport, CoverError> {
    let r = b.restrict(c)?;
    let profile = r.multiplicity_profile()?;
    let report = TangencyReport::from_profile(c.class(), profile);
    debug_assert_eq!(report.splits, r.is_square()?.is_some());
    Ok(report)
}

/// True iff every contact has even order, decided by an exact square root of
/// the restriction.
pub fn splits(b: &BiForm, c: &GraphCurve) -> Result<bool, CoverError> {
    Ok(b.restrict(c)?.is_square()?.is_some())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::int;
    use crate::forms::BinaryForm;
    use alloc::vec;
    use alloc::string::ToString;
    use proptest::prelude::*;

    fn profile(v: &[u32]) -> MultiplicityProfile {
        MultiplicityProfile::new(v.to_vec())
    }

    #[test]
    fn local_invariants() {
        assert_eq!(delta_invariant(1), Ok(0));
        assert_eq!(delta_invariant(2), Ok(1));
        assert_eq!(delta_invariant(5), Ok(2));
        assert_eq!(ak_type(2), Ok(SingularityType::A(1)));
        assert_eq!(ak_type(3), Ok(SingularityType::A(2)));
        assert_eq!(ak_type(1), Ok(SingularityType::Smooth));
        assert_eq!(ak_type(0), Err(CoverError::ZeroMultiplicity));
        assert_eq!(SingularityType::A(1).to_string(), "A1");
    }

    #[test]
    fn genus_formulas() {
        assert_eq!(pullback_pa(DivisorClass::new(1, 0)), 1);
        assert_eq!(pullback_pa(DivisorClass::new(1, 1)), 3);
        for m in 1..20 {
            assert_eq!(pullback_pa(DivisorClass::new(1, m - 1)), 2 * m - 1);
            assert_eq!(required_even_count(1, m - 1, 1, 1), Ok(2 * m - 1));
            let l = DivisorClass::new(1, m - 1);
            assert_eq!(pullback_square(l, l), 4 * m - 4);
        }
        assert_eq!(required_even_count(1, 0, 1, 1), Ok(1));
        assert_eq!(required_even_count(1, 1, 1, 1), Ok(3));
        assert_eq!(required_even_count(1, 1, 2, 1), Err(CoverError::EvenOrder(2)));
        assert_eq!(required_even_count(2, 2, 1, 1), Err(CoverError::OutOfRange(2, 2)));
        let one = DivisorClass::new(1, 1);
        assert_eq!(pullback_square(one, one), 4);
        assert_eq!(pullback_square(DivisorClass::new(1, 0), DivisorClass::new(0, 1)), 2);
    }

    #[test]
    fn reports_from_profiles() {
        let r = TangencyReport::from_profile(DivisorClass::new(1, 0), profile(&[2, 1, 1]));
        assert_eq!((r.pa_pullback, r.delta_total, r.geom_genus_pullback, r.splits), (1, 1, 0, false));
        let r = TangencyReport::from_profile(DivisorClass::new(1, 1), profile(&[2, 2, 2, 1, 1]));
        assert_eq!((r.pa_pullback, r.delta_total, r.geom_genus_pullback), (3, 3, 0));
        let r = TangencyReport::from_profile(DivisorClass::new(1, 0), profile(&[1, 1, 1, 1]));
        assert_eq!((r.pa_pullback, r.delta_total, r.geom_genus_pullback), (1, 0, 1));
        assert_eq!(r.odd_points, 4);
    }

    #[test]
    fn splitting_examples() {
        // x0^4 S(y) restricts to S on the line x = (1:1).
        let line = GraphCurve::line(int(1), int(1)).unwrap();
        let with = |f: &BinaryForm| {
            let mut b = BiForm::zero(4, 4);
            for (l, c) in f.coeffs().iter().enumerate() {
                b.set_coeff(0, l, c.clone());
            }
            b
        };
        // (y0^2 + y1^2)^2
        let b = with(&BinaryForm::from_ints(&[1, 0, 2, 0, 1]));
        assert_eq!(splits(&b, &line), Ok(true));
        // y0^4 - y1^4 - y0 y1^3: squarefree
        let b = with(&BinaryForm::from_ints(&[1, 0, 0, -1, -1]));
        assert_eq!(splits(&b, &line), Ok(false));
        // (y0^2 - 2 y1^2) (y0 + y1)^2: q s^2 with deg q = 2
        let q = BinaryForm::from_ints(&[1, 0, -2]);
        let s = BinaryForm::from_ints(&[1, 1]);
        let b = with(&q.mul(&s.pow(2)));
        assert_eq!(splits(&b, &line), Ok(false));
        let rep = analyze(&b, &line).unwrap();
        assert_eq!(rep.profile, profile(&[2, 1, 1]));
        assert_eq!(rep.geom_genus_pullback, 0);
        assert_eq!(rep.singularities().collect::<alloc::vec::Vec<_>>(), vec![
            SingularityType::Smooth,
            SingularityType::Smooth,
            SingularityType::A(1)
        ]);
    }

    #[test]
    fn square_restriction_splits() {
        let mut b = BiForm::zero(4, 2);
        b.set_coeff(0, 0, int(1));
        b.set_coeff(4, 2, int(1));
        b.set_coeff(2, 1, int(2));
        // x0^4 y0^2 + 2 x0^2 x1^2 y0 y1 + x1^4 y1^2 = (x0^2 y0 + x1^2 y1)^2
        let c = GraphCurve::new(BinaryForm::from_ints(&[1, 0]), BinaryForm::from_ints(&[0, 1])).unwrap();
        let r = b.restrict(&c).unwrap();
        assert_eq!(r.degree(), 6);
        assert!(r.is_square().unwrap().is_some());
        assert_eq!(splits(&b, &c), Ok(true));
    }

    proptest! {
        #[test]
        fn genus_is_pa_minus_delta(ks in proptest::collection::vec(1u32..7, 0..10), n in 0i64..5) {
            let p = profile(&ks);
            let r = TangencyReport::from_profile(DivisorClass::new(1, n), p.clone());
            prop_assert_eq!(r.geom_genus_pullback, 2 * n + 1 - ks.iter().map(|&k| (k / 2) as i64).sum::<i64>());
            prop_assert_eq!(r.splits, r.odd_points == 0);
            prop_assert_eq!(r.splits, p.all_even());
        }
    }
}
