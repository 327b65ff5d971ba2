//! Divisor classes and curves on the quadric `P^1 x P^1`, with coordinates
//! `((x0:x1), (y0:y1))`, and the involution
//! `((x0:x1),(y0:y1)) -> ((x0:-x1),(y0:-y1))`.

mod smooth;

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::Zero;
use rand::Rng;

use crate::exact;
use crate::forms::{BinaryForm, ClusterConfig, ComplexForm, FormError, P1Point};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum QuadricError {
    #[error("monomial x0^{i} x1^{j} y0^{k} y1^{l} does not have bidegree ({d1},{d2})")]
    BadMonomial { i: usize, j: usize, k: usize, l: usize, d1: usize, d2: usize },
    #[error("monomial x0^{i} x1^{j} y0^{k} y1^{l} appears twice")]
    DuplicateMonomial { i: usize, j: usize, k: usize, l: usize },
    #[error("expected a branch curve of bidegree (4,4), got ({0},{1})")]
    WrongBidegree(usize, usize),
    #[error("curve forms must have equal degree (got {0} and {1})")]
    CurveDegreeMismatch(usize, usize),
    #[error("curve forms are both zero")]
    ZeroCurve,
    #[error("curve is reducible: its defining forms share a root")]
    ReducibleCurve,
    #[error("restriction vanishes identically: the curve lies in the branch curve")]
    CurveInBranch,
}

/// Bidegree `(a, b)` class of `O(a, b)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DivisorClass {
    pub a: i64,
    pub b: i64,
}

impl DivisorClass {
    pub const fn new(a: i64, b: i64) -> Self {
        DivisorClass { a, b }
    }

    /// `K = O(-2, -2)`.
    pub const fn canonical() -> Self {
        DivisorClass::new(-2, -2)
    }

    /// `(a,b).(c,d) = ad + bc`.
    pub fn intersect(&self, other: &DivisorClass) -> i64 {
        self.a * other.b + self.b * other.a
    }

    /// Adjunction: `(a-1)(b-1)`.
    pub fn arithmetic_genus(&self) -> i64 {
        (self.a - 1) * (self.b - 1)
    }

    pub fn plus(&self, other: &DivisorClass) -> DivisorClass {
        DivisorClass::new(self.a + other.a, self.b + other.b)
    }

    pub fn times(&self, k: i64) -> DivisorClass {
        DivisorClass::new(self.a * k, self.b * k)
    }
}

impl fmt::Display for DivisorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.a, self.b)
    }
}

/// One term `coeff * x0^i x1^j y0^k y1^l`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Monomial {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub l: usize,
    pub coeff: BigRational,
}

/// Bihomogeneous form of bidegree `(d1, d2)` with rational coefficients,
/// stored densely by the exponents `(j, l)` of `x1` and `y1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BiForm {
    d1: usize,
    d2: usize,
    coeffs: Vec<BigRational>,
}

impl fmt::Debug for BiForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BiForm({},{})", self.d1, self.d2)?;
        f.debug_list()
            .entries(self.monomials().iter().map(|m| {
                (m.i, m.j, m.k, m.l, exact::format_rational(&m.coeff))
            }))
            .finish()
    }
}

impl BiForm {
    pub fn zero(d1: usize, d2: usize) -> Self {
        BiForm { d1, d2, coeffs: vec![BigRational::zero(); (d1 + 1) * (d2 + 1)] }
    }

    /// Builds a form from `(i, j, k, l, coeff)` terms; exponents must match
    /// the bidegree and may not repeat.
    pub fn from_monomials(
        bidegree: (usize, usize),
        terms: impl IntoIterator<Item = (usize, usize, usize, usize, BigRational)>,
    ) -> Result<Self, QuadricError> {
        let (d1, d2) = bidegree;
        let mut form = BiForm::zero(d1, d2);
        let mut seen = vec![false; form.coeffs.len()];
        for (i, j, k, l, c) in terms {
            if i + j != d1 || k + l != d2 {
                return Err(QuadricError::BadMonomial { i, j, k, l, d1, d2 });
            }
            let idx = form.index(j, l);
            if seen[idx] {
                return Err(QuadricError::DuplicateMonomial { i, j, k, l });
            }
            seen[idx] = true;
            form.coeffs[idx] = c;
        }
        Ok(form)
    }

    /// Convenience for integer terms given as `(i, j, k, l, c)`.
    pub fn from_int_terms(bidegree: (usize, usize), terms: &[(usize, usize, usize, usize, i64)]) -> Result<Self, QuadricError> {
        BiForm::from_monomials(bidegree, terms.iter().map(|&(i, j, k, l, c)| (i, j, k, l, exact::int(c))))
    }

    fn index(&self, j: usize, l: usize) -> usize {
        j * (self.d2 + 1) + l
    }

    pub fn bidegree(&self) -> (usize, usize) {
        (self.d1, self.d2)
    }

    pub fn class(&self) -> DivisorClass {
        DivisorClass::new(self.d1 as i64, self.d2 as i64)
    }

    /// Coefficient of `x0^(d1-j) x1^j y0^(d2-l) y1^l`.
    pub fn coeff(&self, j: usize, l: usize) -> &BigRational {
        &self.coeffs[self.index(j, l)]
    }

    pub fn set_coeff(&mut self, j: usize, l: usize, c: BigRational) {
        let idx = self.index(j, l);
        self.coeffs[idx] = c;
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Nonzero terms, ordered by `(j, l)`.
    pub fn monomials(&self) -> Vec<Monomial> {
        let mut out = Vec::new();
        for j in 0..=self.d1 {
            for l in 0..=self.d2 {
                let c = self.coeff(j, l);
                if !c.is_zero() {
                    out.push(Monomial { i: self.d1 - j, j, k: self.d2 - l, l, coeff: c.clone() });
                }
            }
        }
        out
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        BiForm { d1: self.d1, d2: self.d2, coeffs: self.coeffs.iter().map(|c| c * k).collect() }
    }

    /// Pullback under the involution: term `(i,j,k,l)` picks up `(-1)^(j+l)`.
    pub fn sigma_act(&self) -> Self {
        let mut out = self.clone();
        for j in 0..=self.d1 {
            for l in 0..=self.d2 {
                if (j + l) % 2 == 1 {
                    let idx = self.index(j, l);
                    out.coeffs[idx] = -out.coeffs[idx].clone();
                }
            }
        }
        out
    }

    pub fn is_sigma_invariant(&self) -> bool {
        self.monomials().iter().all(|m| (m.j + m.l) % 2 == 0)
    }

    pub fn partial_x0(&self) -> Self {
        let mut out = BiForm::zero(self.d1.saturating_sub(1), self.d2);
        if self.d1 == 0 {
            return out;
        }
        for j in 0..self.d1 {
            for l in 0..=self.d2 {
                let c = self.coeff(j, l) * exact::int((self.d1 - j) as i64);
                out.set_coeff(j, l, c);
            }
        }
        out
    }

    pub fn partial_x1(&self) -> Self {
        let mut out = BiForm::zero(self.d1.saturating_sub(1), self.d2);
        if self.d1 == 0 {
            return out;
        }
        for j in 0..self.d1 {
            for l in 0..=self.d2 {
                let c = self.coeff(j + 1, l) * exact::int((j + 1) as i64);
                out.set_coeff(j, l, c);
            }
        }
        out
    }

    pub fn partial_y0(&self) -> Self {
        let mut out = BiForm::zero(self.d1, self.d2.saturating_sub(1));
        if self.d2 == 0 {
            return out;
        }
        for j in 0..=self.d1 {
            for l in 0..self.d2 {
                let c = self.coeff(j, l) * exact::int((self.d2 - l) as i64);
                out.set_coeff(j, l, c);
            }
        }
        out
    }

    pub fn partial_y1(&self) -> Self {
        let mut out = BiForm::zero(self.d1, self.d2.saturating_sub(1));
        if self.d2 == 0 {
            return out;
        }
        for j in 0..=self.d1 {
            for l in 0..self.d2 {
                let c = self.coeff(j, l + 1) * exact::int((l + 1) as i64);
                out.set_coeff(j, l, c);
            }
        }
        out
    }

    /// Binary form in `y` obtained by fixing `x = (x0 : x1)`.
    pub fn at_x(&self, x0: &BigRational, x1: &BigRational) -> BinaryForm {
        let coeffs = (0..=self.d2)
            .map(|l| {
                let mut acc = BigRational::zero();
                for j in 0..=self.d1 {
                    let c = self.coeff(j, l);
                    if !c.is_zero() {
                        acc += c * num_traits::pow(x0.clone(), self.d1 - j) * num_traits::pow(x1.clone(), j);
                    }
                }
                acc
            })
            .collect();
        BinaryForm::new(coeffs).expect("nonempty")
    }

    /// Restriction along the parametrization `y -> ((B(y) : -A(y)), y)` of
    /// the curve `x0 A(y) + x1 B(y) = 0`. The result has degree
    /// `d1 * n + d2`.
    pub fn restrict(&self, curve: &GraphCurve) -> Result<BinaryForm, QuadricError> {
        if !curve.is_irreducible() {
            return Err(QuadricError::ReducibleCurve);
        }
        let out = self.substitute(curve);
        if out.is_zero() {
            return Err(QuadricError::CurveInBranch);
        }
        Ok(out)
    }

    /// Restriction without the irreducibility precondition.
    pub(crate) fn substitute(&self, curve: &GraphCurve) -> BinaryForm {
        let n = curve.n();
        let x0 = curve.b.clone();
        let x1 = curve.a.neg();
        let p0: Vec<BinaryForm> = (0..=self.d1).map(|e| x0.pow(e)).collect();
        let p1: Vec<BinaryForm> = (0..=self.d1).map(|e| x1.pow(e)).collect();
        let deg = self.d1 * n + self.d2;
        let mut out = vec![BigRational::zero(); deg + 1];
        for j in 0..=self.d1 {
            let mut x_part: Option<BinaryForm> = None;
            for l in 0..=self.d2 {
                let c = self.coeff(j, l);
                if c.is_zero() {
                    continue;
                }
                let xp = x_part.get_or_insert_with(|| p0[self.d1 - j].mul(&p1[j]));
                for (idx, v) in xp.coeffs().iter().enumerate() {
                    out[idx + l] += c * v;
                }
            }
        }
        BinaryForm::new(out).expect("nonempty")
    }

    /// Double-precision copy for the numerical solver.
    pub fn to_float(&self) -> FloatBiForm {
        FloatBiForm {
            d1: self.d1,
            d2: self.d2,
            coeffs: self.coeffs.iter().map(exact::to_f64).collect(),
        }
    }

    /// Admissibility of a branch curve: invariance, avoidance of the four
    /// fixed points of the involution, and smoothness.
    pub fn check_branch_admissible(&self) -> Result<BranchReport, QuadricError> {
        if self.bidegree() != (4, 4) {
            return Err(QuadricError::WrongBidegree(self.d1, self.d2));
        }
        let fixed_points_hit: Vec<FixedPoint> = FixedPoint::ALL
            .iter()
            .copied()
            .filter(|p| self.coeff(p.j_index(self.d1), p.l_index(self.d2)).is_zero())
            .collect();
        let singular = smooth::singular_points(self);
        Ok(BranchReport {
            sigma_invariant: self.is_sigma_invariant(),
            avoids_fixed_points: fixed_points_hit.is_empty(),
            fixed_points_hit,
            smooth: singular.is_smooth(),
            singularities: singular,
        })
    }
}

/// Double-precision bihomogeneous form, same layout as [`BiForm`].
#[derive(Clone, Debug, PartialEq)]
pub struct FloatBiForm {
    d1: usize,
    d2: usize,
    coeffs: Vec<f64>,
}

impl FloatBiForm {
    pub fn bidegree(&self) -> (usize, usize) {
        (self.d1, self.d2)
    }

    pub fn coeff(&self, j: usize, l: usize) -> f64 {
        self.coeffs[j * (self.d2 + 1) + l]
    }

    pub fn partial_x0(&self) -> Self {
        let mut coeffs = vec![0.0; self.d1 * (self.d2 + 1)];
        for j in 0..self.d1 {
            for l in 0..=self.d2 {
                coeffs[j * (self.d2 + 1) + l] = self.coeff(j, l) * (self.d1 - j) as f64;
            }
        }
        FloatBiForm { d1: self.d1 - 1, d2: self.d2, coeffs }
    }

    pub fn partial_x1(&self) -> Self {
        let mut coeffs = vec![0.0; self.d1 * (self.d2 + 1)];
        for j in 0..self.d1 {
            for l in 0..=self.d2 {
                coeffs[j * (self.d2 + 1) + l] = self.coeff(j + 1, l) * (j + 1) as f64;
            }
        }
        FloatBiForm { d1: self.d1 - 1, d2: self.d2, coeffs }
    }

    /// Restriction to a complex curve, as in [`BiForm::restrict`], without
    /// precondition checks.
    pub fn restrict(&self, curve: &ComplexCurve) -> ComplexForm {
        let x0 = curve.b.clone();
        let x1 = curve.a.scale(Complex64::new(-1.0, 0.0));
        let mut p0 = vec![ComplexForm::one()];
        let mut p1 = vec![ComplexForm::one()];
        for e in 1..=self.d1 {
            p0.push(p0[e - 1].mul(&x0));
            p1.push(p1[e - 1].mul(&x1));
        }
        let deg = self.d1 * curve.n() + self.d2;
        let mut out = ComplexForm::zero(deg);
        for j in 0..=self.d1 {
            let xp = p0[self.d1 - j].mul(&p1[j]);
            for l in 0..=self.d2 {
                let c = self.coeff(j, l);
                if c == 0.0 {
                    continue;
                }
                let slots = out.coeffs_mut();
                for (idx, v) in xp.coeffs().iter().enumerate() {
                    slots[idx + l] += v * c;
                }
            }
        }
        out
    }
}

/// Fixed point of the involution: each factor is `(1:0)` or `(0:1)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FixedPoint {
    /// `true` when the `x` factor is `(0:1)`.
    pub x_is_01: bool,
    /// `true` when the `y` factor is `(0:1)`.
    pub y_is_01: bool,
}

impl FixedPoint {
    pub const ALL: [FixedPoint; 4] = [
        FixedPoint { x_is_01: false, y_is_01: false },
        FixedPoint { x_is_01: false, y_is_01: true },
        FixedPoint { x_is_01: true, y_is_01: false },
        FixedPoint { x_is_01: true, y_is_01: true },
    ];

    fn j_index(&self, d1: usize) -> usize {
        if self.x_is_01 { d1 } else { 0 }
    }

    fn l_index(&self, d2: usize) -> usize {
        if self.y_is_01 { d2 } else { 0 }
    }
}

impl fmt::Display for FixedPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = |b: bool| if b { "(0:1)" } else { "(1:0)" };
        write!(f, "({},{})", s(self.x_is_01), s(self.y_is_01))
    }
}

/// Outcome of the exact smoothness test.
#[derive(Clone, Debug, PartialEq)]
pub enum Singularities {
    /// Elimination certified that no singular point exists.
    None,
    /// The form is non-reduced or contains a ruling line.
    Degenerate,
    /// Singular points located numerically after elimination flagged them,
    /// as `(x, y)` pairs.
    Points(Vec<(P1Point, P1Point)>),
}

impl Singularities {
    pub fn is_smooth(&self) -> bool {
        matches!(self, Singularities::None) || matches!(self, Singularities::Points(p) if p.is_empty())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct BranchReport {
    pub sigma_invariant: bool,
    pub avoids_fixed_points: bool,
    pub fixed_points_hit: Vec<FixedPoint>,
    pub smooth: bool,
    pub singularities: Singularities,
}

impl BranchReport {
    pub fn is_admissible(&self) -> bool {
        self.sigma_invariant && self.avoids_fixed_points && self.smooth
    }
}

/// A member of `|O(1, n)|`: the zero locus of `x0 * A(y) + x1 * B(y)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GraphCurve {
    a: BinaryForm,
    b: BinaryForm,
}

impl GraphCurve {
    pub fn new(a: BinaryForm, b: BinaryForm) -> Result<Self, QuadricError> {
        if a.degree() != b.degree() {
            return Err(QuadricError::CurveDegreeMismatch(a.degree(), b.degree()));
        }
        if a.is_zero() && b.is_zero() {
            return Err(QuadricError::ZeroCurve);
        }
        Ok(GraphCurve { a, b })
    }

    /// The ruling line `x = (x0 : x1)`, stored as `(A, B) = (x1, -x0)`.
    pub fn line(x0: BigRational, x1: BigRational) -> Result<Self, QuadricError> {
        GraphCurve::new(BinaryForm::constant(x1), BinaryForm::constant(-x0))
    }

    pub fn n(&self) -> usize {
        self.a.degree()
    }

    pub fn a(&self) -> &BinaryForm {
        &self.a
    }

    pub fn b(&self) -> &BinaryForm {
        &self.b
    }

    pub fn class(&self) -> DivisorClass {
        DivisorClass::new(1, self.n() as i64)
    }

    /// True when `A` and `B` share no root on P^1.
    pub fn is_irreducible(&self) -> bool {
        self.a.gcd(&self.b).degree() == 0
    }

    /// Image under the involution: `(A(y0,-y1), -B(y0,-y1))`.
    pub fn sigma_act(&self) -> Self {
        GraphCurve { a: self.a.twist(), b: self.b.twist().neg() }
    }

    pub fn to_complex(&self) -> ComplexCurve {
        ComplexCurve::new(self.a.to_complex(), self.b.to_complex()).expect("same degree")
    }
}

/// Complex double-precision member of `|O(1, n)|`.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexCurve {
    a: ComplexForm,
    b: ComplexForm,
}

impl ComplexCurve {
    pub fn new(a: ComplexForm, b: ComplexForm) -> Result<Self, QuadricError> {
        if a.degree() != b.degree() {
            return Err(QuadricError::CurveDegreeMismatch(a.degree(), b.degree()));
        }
        if a.is_zero() && b.is_zero() {
            return Err(QuadricError::ZeroCurve);
        }
        Ok(ComplexCurve { a, b })
    }

    /// The line `x = (x0 : x1)`.
    pub fn line(x0: Complex64, x1: Complex64) -> Self {
        ComplexCurve { a: ComplexForm::new(vec![x1]), b: ComplexForm::new(vec![-x0]) }
    }

    pub fn n(&self) -> usize {
        self.a.degree()
    }

    pub fn a(&self) -> &ComplexForm {
        &self.a
    }

    pub fn b(&self) -> &ComplexForm {
        &self.b
    }

    pub fn class(&self) -> DivisorClass {
        DivisorClass::new(1, self.n() as i64)
    }

    /// Coefficients of `A` followed by those of `B`.
    pub fn coefficient_vector(&self) -> Vec<Complex64> {
        let mut v = self.a.coeffs().to_vec();
        v.extend_from_slice(self.b.coeffs());
        v
    }

    pub fn from_coefficient_vector(n: usize, v: &[Complex64]) -> Result<Self, QuadricError> {
        assert_eq!(v.len(), 2 * n + 2, "curve vector length");
        ComplexCurve::new(ComplexForm::new(v[..=n].to_vec()), ComplexForm::new(v[n + 1..].to_vec()))
    }

    pub fn sigma_act(&self) -> Self {
        ComplexCurve { a: self.a.twist(), b: self.b.twist().scale(Complex64::new(-1.0, 0.0)) }
    }

    /// Numerical irreducibility: no root of `A` lies within the ambiguity
    /// radius of `config` of a root of `B`.
    pub fn is_irreducible(&self, config: &ClusterConfig) -> Result<bool, FormError> {
        if self.n() == 0 {
            return Ok(true);
        }
        if self.a.is_zero() || self.b.is_zero() {
            return Ok(false);
        }
        let ra = self.a.roots()?;
        let rb = self.b.roots()?;
        let gap = config.tolerance * config.separation_factor;
        Ok(ra.iter().all(|p| rb.iter().all(|q| p.chordal(q) > gap)))
    }

    /// The point `x = (B(y) : -A(y))` above `y`.
    pub fn x_above(&self, y: &P1Point) -> P1Point {
        P1Point::new(self.b.eval(y), -self.a.eval(y))
    }
}

/// Random invariant branch curve with integer coefficients in
/// `[-bound, bound]`, resampled until it is admissible.
pub fn random_admissible_branch<R: Rng + ?Sized>(rng: &mut R, bound: i64) -> BiForm {
    loop {
        let mut b = BiForm::zero(4, 4);
        for j in 0..=4 {
            for l in 0..=4 {
                if (j + l) % 2 == 1 {
                    continue;
                }
                let corner = (j == 0 || j == 4) && (l == 0 || l == 4);
                let c = loop {
                    let c = rng.random_range(-bound..=bound);
                    if c != 0 || !corner {
                        break c;
                    }
                };
                b.set_coeff(j, l, exact::int(c));
            }
        }
        if b.check_branch_admissible().is_ok_and(|r| r.is_admissible()) {
            return b;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::int;
    use rand::SeedableRng;

    pub(crate) fn symmetric_sample() -> BiForm {
        // x0^4y0^4 + x1^4y1^4 + x0^4y1^4 + x1^4y0^4 + x0^2x1^2y0^2y1^2
        BiForm::from_int_terms(
            (4, 4),
            &[(4, 0, 4, 0, 1), (0, 4, 0, 4, 1), (4, 0, 0, 4, 1), (0, 4, 4, 0, 1), (2, 2, 2, 2, 1)],
        )
        .unwrap()
    }

    #[test]
    fn intersections() {
        let (h, v) = (DivisorClass::new(1, 0), DivisorClass::new(0, 1));
        assert_eq!(h.intersect(&v), 1);
        for n in 0..6 {
            assert_eq!(DivisorClass::new(1, n).intersect(&DivisorClass::new(4, 4)), 4 * n + 4);
        }
        for m in 1..8 {
            let l = DivisorClass::new(1, m - 1);
            assert_eq!(l.intersect(&l), 2 * m - 2);
        }
    }

    #[test]
    fn genus_by_adjunction() {
        assert_eq!(DivisorClass::new(4, 4).arithmetic_genus(), 9);
        assert_eq!(DivisorClass::new(1, 7).arithmetic_genus(), 0);
        assert_eq!(DivisorClass::new(2, 2).arithmetic_genus(), 1);
    }

    #[test]
    fn monomial_validation() {
        assert!(matches!(
            BiForm::from_int_terms((4, 4), &[(3, 0, 4, 0, 1)]),
            Err(QuadricError::BadMonomial { .. })
        ));
        assert!(matches!(
            BiForm::from_int_terms((4, 4), &[(4, 0, 4, 0, 1), (4, 0, 4, 0, 2)]),
            Err(QuadricError::DuplicateMonomial { .. })
        ));
    }

    #[test]
    fn sigma_signs() {
        let fixed = BiForm::from_int_terms((4, 4), &[(4, 0, 4, 0, 1)]).unwrap();
        assert_eq!(fixed.sigma_act(), fixed);
        let odd = BiForm::from_int_terms((4, 4), &[(3, 1, 4, 0, 1)]).unwrap();
        assert_eq!(odd.sigma_act(), BiForm::from_int_terms((4, 4), &[(3, 1, 4, 0, -1)]).unwrap());
    }

    #[test]
    fn fixed_point_detection() {
        let b = BiForm::from_int_terms((4, 4), &[(4, 0, 4, 0, 1), (0, 4, 0, 4, 1)]).unwrap();
        let rep = b.check_branch_admissible().unwrap();
        assert!(rep.sigma_invariant);
        assert!(!rep.avoids_fixed_points);
        assert!(rep.fixed_points_hit.contains(&FixedPoint { x_is_01: false, y_is_01: true }));

        let rep = symmetric_sample().check_branch_admissible().unwrap();
        assert!(rep.sigma_invariant && rep.avoids_fixed_points);
    }

    #[test]
    fn wrong_bidegree_is_rejected() {
        assert_eq!(BiForm::zero(2, 4).check_branch_admissible(), Err(QuadricError::WrongBidegree(2, 4)));
    }

    #[test]
    fn restriction_to_a_line() {
        let b = symmetric_sample();
        let expect = BinaryForm::from_ints(&[2, 0, 1, 0, 2]);
        let line = GraphCurve::line(int(1), int(1)).unwrap();
        assert_eq!(b.restrict(&line).unwrap(), expect);
        let literal = GraphCurve::new(BinaryForm::from_ints(&[1]), BinaryForm::from_ints(&[1])).unwrap();
        assert_eq!(b.restrict(&literal).unwrap(), expect);
    }

    #[test]
    fn restriction_degree() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        let b = random_admissible_branch(&mut rng, 5);
        for n in 0..4 {
            let a: Vec<i64> = (0..=n).map(|_| rng.random_range(-4..=4)).collect();
            let c: Vec<i64> = (0..=n).map(|_| rng.random_range(-4..=4)).collect();
            let Ok(curve) = GraphCurve::new(BinaryForm::from_ints(&a), BinaryForm::from_ints(&c)) else { continue };
            if let Ok(r) = b.restrict(&curve) {
                assert_eq!(r.degree(), 4 * n + 4);
                let float = b.to_float().restrict(&curve.to_complex());
                for (x, y) in r.coeffs().iter().zip(float.coeffs()) {
                    assert!((exact::to_f64(x) - y.re).abs() <= 1e-9 * (1.0 + exact::to_f64(x).abs()));
                }
            }
        }
    }

    #[test]
    fn reducible_and_contained_curves() {
        let b = symmetric_sample();
        let y0 = BinaryForm::from_ints(&[1, 0]);
        let red = GraphCurve::new(y0.clone(), y0.scale(&int(2))).unwrap();
        assert_eq!(b.restrict(&red), Err(QuadricError::ReducibleCurve));
        // x0^4 (y0^4 - y1^4) contains the line x0 = 0 ... as (A,B) = (1,0)
        let c = BiForm::from_int_terms((4, 4), &[(3, 1, 4, 0, 1)]).unwrap();
        let line = GraphCurve::line(int(0), int(1)).unwrap();
        assert_eq!(c.restrict(&line), Err(QuadricError::CurveInBranch));
    }

    #[test]
    fn sigma_equivariance_of_restriction() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(9);
        let b = random_admissible_branch(&mut rng, 6);
        let curve = GraphCurve::new(BinaryForm::from_ints(&[1, 2, -1]), BinaryForm::from_ints(&[3, 0, 1])).unwrap();
        let r = b.restrict(&curve).unwrap();
        let rs = b.sigma_act().restrict(&curve.sigma_act()).unwrap();
        assert!(rs == r.twist() || rs == r.twist().neg());
        assert_eq!(curve.sigma_act().sigma_act(), curve);
        assert_eq!(b.sigma_act().sigma_act(), b);
    }

    #[test]
    fn random_branch_is_admissible() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
        let b = random_admissible_branch(&mut rng, 9);
        let rep = b.check_branch_admissible().unwrap();
        assert!(rep.is_admissible());
        assert_eq!(rep.singularities, Singularities::None);
        let scaled = b.scale(&crate::exact::rat(-7, 3)).check_branch_admissible().unwrap();
        assert_eq!(scaled, rep);
    }
}
