//! Binary forms: homogeneous polynomials in `(y0, y1)`.
//!
//! Coefficients are ordered from `y0^d` down to `y1^d`, so index `i` holds the
//! coefficient of `y0^(d-i) * y1^i`. Exact forms work over the rationals;
//! [`ComplexForm`] is the double-precision counterpart used by the solver.
//!
//! Exact algorithms dehomogenize with `y1 = 1` (affine coordinate
//! `t = y0 / y1`) after splitting off the power of `y1`, which is exactly the
//! multiplicity of the root `(1:0)`. Nothing here ever factors over C:
//! multiplicities come from degrees of squarefree factors.

mod float;
pub(crate) mod poly;

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub use float::{cluster_roots, ClusterConfig, ComplexForm, P1Point, RootCluster};
pub use poly::Poly;

use crate::exact;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum FormError {
    #[error("operation is undefined on the zero form")]
    ZeroForm,
    #[error("a binary form needs at least one coefficient")]
    NoCoefficients,
    #[error("root clustering is ambiguous at tolerance {tolerance:e} (nearest distinct roots {separation:e} apart)")]
    AmbiguousClusters { tolerance: f64, separation: f64 },
    #[error("non-finite coefficient in floating form")]
    NonFinite,
    #[error("root finder failed to converge")]
    RootFinder,
}

/// Exact binary form of fixed degree.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BinaryForm {
    coeffs: Vec<BigRational>,
}

impl fmt::Debug for BinaryForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("BinaryForm[")?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            f.write_str(&exact::format_rational(c))?;
        }
        f.write_str("]")
    }
}

impl BinaryForm {
    /// Coefficients from `y0^d` to `y1^d`; the degree is `len - 1`.
    pub fn new(coeffs: Vec<BigRational>) -> Result<Self, FormError> {
        if coeffs.is_empty() {
            return Err(FormError::NoCoefficients);
        }
        Ok(BinaryForm { coeffs })
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        BinaryForm::new(coeffs.iter().map(|&c| exact::int(c)).collect())
            .expect("at least one coefficient")
    }

    pub fn zero(degree: usize) -> Self {
        BinaryForm { coeffs: vec![BigRational::zero(); degree + 1] }
    }

    pub fn constant(c: BigRational) -> Self {
        BinaryForm { coeffs: vec![c] }
    }

    pub fn one() -> Self {
        BinaryForm::constant(BigRational::one())
    }

    /// `y0^(d-i) * y1^i`.
    pub fn monomial(degree: usize, i: usize) -> Self {
        let mut f = BinaryForm::zero(degree);
        f.coeffs[i] = BigRational::one();
        f
    }

    /// `a*y0 + b*y1`.
    pub fn linear(a: BigRational, b: BigRational) -> Self {
        BinaryForm { coeffs: vec![a, b] }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn eval(&self, y0: &BigRational, y1: &BigRational) -> BigRational {
        let d = self.degree();
        let mut acc = BigRational::zero();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            acc += c * num_traits::pow(y0.clone(), d - i) * num_traits::pow(y1.clone(), i);
        }
        acc
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        BinaryForm { coeffs: self.coeffs.iter().map(|c| c * k).collect() }
    }

    pub fn neg(&self) -> Self {
        BinaryForm { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    /// Sum of two forms of equal degree.
    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.degree(), other.degree(), "adding forms of different degree");
        BinaryForm {
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = vec![BigRational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        BinaryForm { coeffs: out }
    }

    pub fn pow(&self, e: usize) -> Self {
        let mut acc = BinaryForm::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Substitutes `y1 -> -y1`, the action of the involution on the second
    /// ruling.
    pub fn twist(&self) -> Self {
        BinaryForm {
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| if i % 2 == 1 { -c } else { c.clone() })
                .collect(),
        }
    }

    pub fn partial_y0(&self) -> Self {
        let d = self.degree();
        if d == 0 {
            return BinaryForm::zero(0);
        }
        BinaryForm {
            coeffs: (0..d).map(|i| &self.coeffs[i] * exact::int((d - i) as i64)).collect(),
        }
    }

    pub fn partial_y1(&self) -> Self {
        let d = self.degree();
        if d == 0 {
            return BinaryForm::zero(0);
        }
        BinaryForm {
            coeffs: (0..d).map(|i| &self.coeffs[i + 1] * exact::int((i + 1) as i64)).collect(),
        }
    }

    /// Multiplicity of the root `(1:0)` and the affine polynomial
    /// `g(t) = f(t, 1) / ...` of the remaining part, in `t = y0/y1`.
    fn split_at_infinity(&self) -> (usize, Poly) {
        let d = self.degree();
        let e = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        let affine = Poly::from_coeffs((0..=d).map(|k| self.coeffs[d - k].clone()).collect());
        (e.min(d + 1), affine)
    }

    /// Inverse of `split_at_infinity`: homogenizes `p` to degree `degree`.
    fn homogenize(p: &Poly, degree: usize) -> Self {
        BinaryForm {
            coeffs: (0..=degree)
                .map(|i| p.coeff(degree - i))
                .collect(),
        }
    }

    /// Scales so that the first nonzero coefficient is one (monic in the
    /// `y1 = 1` chart). The zero form is returned unchanged.
    pub fn normalized(&self) -> Self {
        match self.coeffs.iter().find(|c| !c.is_zero()) {
            None => self.clone(),
            Some(c) => self.scale(&c.recip()),
        }
    }

    /// Greatest common divisor, normalized by [`BinaryForm::normalized`].
    /// The gcd with the zero form is the other argument (normalized).
    pub fn gcd(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.normalized();
        }
        if other.is_zero() {
            return self.normalized();
        }
        let (ef, pf) = self.split_at_infinity();
        let (eg, pg) = other.split_at_infinity();
        let g = pf.gcd(&pg);
        let e = ef.min(eg);
        BinaryForm::homogenize(&g, g.degree().unwrap_or(0) + e).normalized()
    }

    /// Exact quotient `self / divisor` if the division leaves no remainder.
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        if divisor.is_zero() || divisor.degree() > self.degree() {
            return None;
        }
        if self.is_zero() {
            return Some(BinaryForm::zero(self.degree() - divisor.degree()));
        }
        let (ef, pf) = self.split_at_infinity();
        let (eg, pg) = divisor.split_at_infinity();
        if eg > ef {
            return None;
        }
        let q = pf.div_exact(&pg)?;
        Some(BinaryForm::homogenize(&q, self.degree() - divisor.degree()))
    }

    /// Squarefree decomposition `f = c * prod g_i^i` with normalized,
    /// pairwise coprime, squarefree `g_i`, sorted by multiplicity.
    pub fn squarefree_decomposition(&self) -> Result<Vec<(BinaryForm, usize)>, FormError> {
        if self.is_zero() {
            return Err(FormError::ZeroForm);
        }
        let (e, p) = self.split_at_infinity();
        let mut parts: Vec<(BinaryForm, usize)> = p
            .squarefree()
            .into_iter()
            .map(|(i, g)| (BinaryForm::homogenize(&g, g.degree().unwrap_or(0)), i))
            .collect();
        if e > 0 {
            let y1 = BinaryForm::from_ints(&[0, 1]);
            match parts.iter_mut().find(|(_, i)| *i == e) {
                Some((g, _)) => *g = g.mul(&y1).normalized(),
                None => parts.push((y1, e)),
            }
        }
        parts.sort_by_key(|(_, i)| *i);
        Ok(parts)
    }

    /// Intersection multiplicities over C, read off factor degrees.
    pub fn multiplicity_profile(&self) -> Result<MultiplicityProfile, FormError> {
        let parts = self.squarefree_decomposition()?;
        let mut entries = Vec::new();
        for (g, i) in parts {
            entries.extend(core::iter::repeat_n(i as u32, g.degree()));
        }
        Ok(MultiplicityProfile::new(entries))
    }

    /// `Some(s)` with `self = c * s^2` when every root has even multiplicity.
    pub fn is_square(&self) -> Result<Option<BinaryForm>, FormError> {
        let parts = self.squarefree_decomposition()?;
        if parts.iter().any(|(_, i)| i % 2 == 1) {
            return Ok(None);
        }
        let s = parts
            .iter()
            .fold(BinaryForm::one(), |acc, (g, i)| acc.mul(&g.pow(i / 2)));
        Ok(Some(s))
    }

    /// Sylvester resultant of the homogeneous coefficient vectors. It vanishes
    /// exactly when the forms share a root on P^1 (including `(1:0)`).
    pub fn resultant(&self, other: &Self) -> BigRational {
        exact::determinant(sylvester(&self.coeffs, &other.coeffs))
    }

    /// Discriminant normalized so that `a y0^2 + b y0 y1 + c y1^2` gives
    /// `b^2 - 4ac`: `(-1)^(d(d-1)/2) * Res(f_y0, f_y1) / d^(d-2)`. This agrees
    /// with `(-1)^(d(d-1)/2) Res(f, f') / lead` whenever the `y0^d`
    /// coefficient is nonzero, and stays correct when it is not. Forms of
    /// degree at most one have discriminant one.
    pub fn discriminant(&self) -> BigRational {
        let d = self.degree();
        if d <= 1 {
            return BigRational::one();
        }
        let r = self.partial_y0().resultant(&self.partial_y1());
        let sign = if (d * (d - 1) / 2) % 2 == 1 { -BigRational::one() } else { BigRational::one() };
        let scale = BigRational::from_integer(num_traits::pow(BigInt::from(d), d - 2));
        sign * r / scale
    }

    pub fn to_complex(&self) -> ComplexForm {
        ComplexForm::new(
            self.coeffs.iter().map(|c| num_complex::Complex64::new(exact::to_f64(c), 0.0)).collect(),
        )
    }

    /// Largest absolute coefficient as `f64`.
    pub fn max_abs_f64(&self) -> f64 {
        self.coeffs.iter().map(|c| exact::to_f64(&c.abs())).fold(0.0, f64::max)
    }
}

/// Sylvester matrix of two coefficient vectors (leading coefficient first).
pub(crate) fn sylvester(f: &[BigRational], g: &[BigRational]) -> Vec<Vec<BigRational>> {
    let d = f.len() - 1;
    let e = g.len() - 1;
    let n = d + e;
    let mut rows = Vec::with_capacity(n);
    for r in 0..e {
        let mut row = vec![BigRational::zero(); n];
        row[r..r + d + 1].clone_from_slice(f);
        rows.push(row);
    }
    for r in 0..d {
        let mut row = vec![BigRational::zero(); n];
        row[r..r + e + 1].clone_from_slice(g);
        rows.push(row);
    }
    rows
}

/// Multiset of intersection multiplicities, kept sorted ascending.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct MultiplicityProfile {
    entries: Vec<u32>,
}

impl MultiplicityProfile {
    pub fn new(mut entries: Vec<u32>) -> Self {
        entries.retain(|&k| k > 0);
        entries.sort_unstable();
        MultiplicityProfile { entries }
    }

    /// Profile with `alpha[i-1]` entries equal to `i`.
    pub fn from_alpha(alpha: &[u32]) -> Self {
        let mut entries = Vec::new();
        for (i, &count) in alpha.iter().enumerate() {
            entries.extend(core::iter::repeat_n(i as u32 + 1, count as usize));
        }
        MultiplicityProfile::new(entries)
    }

    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    pub fn total(&self) -> u32 {
        self.entries.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// `alpha_i` = number of entries equal to `i`, trailing zeros dropped.
    pub fn alpha_counts(&self) -> Vec<u32> {
        let max = self.entries.last().copied().unwrap_or(0) as usize;
        let mut alpha = vec![0u32; max];
        for &k in &self.entries {
            alpha[k as usize - 1] += 1;
        }
        alpha
    }

    pub fn odd_count(&self) -> usize {
        self.entries.iter().filter(|&&k| k % 2 == 1).count()
    }

    pub fn all_even(&self) -> bool {
        self.odd_count() == 0
    }
}

impl fmt::Display for MultiplicityProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, k) in self.entries.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{k}")?;
        }
        f.write_str("}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat};

    fn y0() -> BinaryForm {
        BinaryForm::from_ints(&[1, 0])
    }
    fn y1() -> BinaryForm {
        BinaryForm::from_ints(&[0, 1])
    }

    #[test]
    fn gcd_of_monomials() {
        let f = y0().pow(2).mul(&y1());
        let g = y0().mul(&y1().pow(3));
        assert_eq!(f.gcd(&g), y0().mul(&y1()));
    }

    #[test]
    fn gcd_with_zero_is_other_argument() {
        let f = BinaryForm::from_ints(&[1, -3, 2]);
        assert_eq!(f.gcd(&BinaryForm::zero(4)), f);
        assert_eq!(BinaryForm::zero(1).gcd(&f), f);
    }

    #[test]
    fn gcd_of_coprime_cubics_is_one() {
        let f = BinaryForm::from_ints(&[2, -1, 0, 5]);
        let g = BinaryForm::from_ints(&[1, 1, 1, 7]);
        assert!(!f.resultant(&g).is_zero());
        assert_eq!(f.gcd(&g), BinaryForm::one());
    }

    #[test]
    fn squarefree_decomposition_examples() {
        let f = y0().pow(2).mul(&y1()).mul(&BinaryForm::from_ints(&[1, 1]).pow(3));
        let parts = f.squarefree_decomposition().unwrap();
        assert_eq!(
            parts,
            [(y1(), 1), (y0(), 2), (BinaryForm::from_ints(&[1, 1]), 3)]
        );

        let q = BinaryForm::from_ints(&[1, 0, 1]);
        assert_eq!(q.pow(2).squarefree_decomposition().unwrap(), [(q.clone(), 2)]);

        let h = BinaryForm::from_ints(&[2, 0, 1, 0, 2]);
        assert_eq!(h.gcd(&h.partial_y0()).gcd(&h.partial_y1()), BinaryForm::one());
        assert_eq!(h.squarefree_decomposition().unwrap(), [(h.normalized(), 1)]);
    }

    #[test]
    fn zero_form_is_rejected() {
        assert_eq!(BinaryForm::zero(3).squarefree_decomposition(), Err(FormError::ZeroForm));
        assert_eq!(BinaryForm::zero(3).is_square(), Err(FormError::ZeroForm));
    }

    #[test]
    fn profiles() {
        let f = y0().mul(&y1()).pow(2);
        assert_eq!(f.multiplicity_profile().unwrap().entries(), [2, 2]);
        let quartic = BinaryForm::from_ints(&[2, 0, 1, 0, 2]);
        assert_eq!(quartic.multiplicity_profile().unwrap().entries(), [1, 1, 1, 1]);

        // q = (y0 - y1)(y0 + 2 y1), s = y0 (y0 + 3 y1)(2 y0 - y1)
        let q = BinaryForm::from_ints(&[1, -1]).mul(&BinaryForm::from_ints(&[1, 2]));
        let s = y0().mul(&BinaryForm::from_ints(&[1, 3])).mul(&BinaryForm::from_ints(&[2, -1]));
        let p = q.mul(&s.pow(2)).multiplicity_profile().unwrap();
        assert_eq!(p.entries(), [1, 1, 2, 2, 2]);
        assert_eq!(p.alpha_counts(), [2, 3]);
    }

    #[test]
    fn resultant_and_discriminant() {
        assert_eq!(y0().resultant(&y1()), int(1));
        assert_eq!(y0().mul(&y1()).discriminant(), int(1));
        let h = BinaryForm::from_ints(&[3, 1, -4, 2]);
        let rep = BinaryForm::from_ints(&[1, -1]).pow(2).mul(&h);
        assert!(rep.discriminant().is_zero());
        // b^2 - 4ac on a quadratic with vanishing y0^2 coefficient
        assert_eq!(BinaryForm::from_ints(&[0, 3, 5]).discriminant(), int(9));
    }

    #[test]
    fn discriminant_matches_affine_formula() {
        // disc of t^3 + p t + q is -4p^3 - 27q^2
        let f = BinaryForm::new(vec![int(1), int(0), rat(-2, 3), int(5)]).unwrap();
        let (p, q) = (rat(-2, 3), int(5));
        let expect = int(-4) * &p * &p * &p - int(27) * &q * &q;
        assert_eq!(f.discriminant(), expect);
        // quartic x^4 + 1: 256
        assert_eq!(BinaryForm::from_ints(&[1, 0, 0, 0, 1]).discriminant(), int(256));
    }

    #[test]
    fn is_square_examples() {
        let s = BinaryForm::from_ints(&[1, 3, 0]);
        assert_eq!(s.pow(2).is_square().unwrap(), Some(s.clone()));
        assert_eq!(y0().pow(3).mul(&y1()).is_square().unwrap(), None);
        let scaled = s.pow(2).scale(&rat(-7, 2));
        assert_eq!(scaled.is_square().unwrap(), Some(s));
    }

    #[test]
    fn division() {
        let a = BinaryForm::from_ints(&[1, 2, 1]);
        let b = BinaryForm::from_ints(&[1, 1]);
        assert_eq!(a.div_exact(&b), Some(b.clone()));
        assert_eq!(b.div_exact(&y1()), None);
        assert_eq!(y1().mul(&b).div_exact(&y1()), Some(b));
    }
}
