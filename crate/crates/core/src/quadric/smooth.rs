//! Exact smoothness test for bidegree forms.
//!
//! In each of the four affine charts the singular locus is cut out by
//! `f = f_u = f_v = 0`. Eliminating `v` with resultants gives polynomials in
//! `u` (computed by exact evaluation and interpolation); if their gcd is a
//! nonzero constant the chart is smooth. Otherwise the few candidate `u`
//! values are inspected numerically.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::Zero;

use super::{BiForm, Singularities};
use crate::exact;
use crate::forms::{sylvester, ComplexForm, P1Point, Poly};

/// Dense bivariate polynomial indexed `[pu][pv]`.
type Bivariate = Vec<Vec<BigRational>>;

const POINT_TOL: f64 = 1e-6;
const MERGE_TOL: f64 = 1e-6;

pub(super) fn singular_points(form: &BiForm) -> Singularities {
    let (d1, d2) = form.bidegree();
    let mut points: Vec<(P1Point, P1Point)> = Vec::new();
    for x_at_x1 in [false, true] {
        for y_at_y1 in [false, true] {
            let f = chart(form, x_at_x1, y_at_y1);
            let fu = diff_u(&f);
            let fv = diff_v(&f);
            let r1 = resultant_v(&f, d1, d2, &fu, d1.saturating_sub(1), d2);
            let r2 = resultant_v(&f, d1, d2, &fv, d1, d2.saturating_sub(1));
            if r1.is_zero() || r2.is_zero() {
                return Singularities::Degenerate;
            }
            let r3 = resultant_v(&fu, d1.saturating_sub(1), d2, &fv, d1, d2.saturating_sub(1));
            let mut g = r1.gcd(&r2);
            if !r3.is_zero() {
                g = g.gcd(&r3);
            }
            if g.is_constant() {
                continue;
            }
            // Singular points are high-multiplicity roots of g; work with the
            // squarefree part so the numerics see simple roots.
            let g = g.squarefree().into_iter().fold(Poly::one(), |acc, (_, h)| acc.mul(&h));
            for (u, v) in numeric_candidates(&f, &fu, &fv, &g) {
                let (x, y) = (lift(u, x_at_x1), lift(v, y_at_y1));
                if !points.iter().any(|(px, py)| px.chordal(&x) < MERGE_TOL && py.chordal(&y) < MERGE_TOL) {
                    points.push((x, y));
                }
            }
        }
    }
    if points.is_empty() {
        Singularities::None
    } else {
        Singularities::Points(points)
    }
}

/// Dehomogenization. With `x_at_x1` false the chart is `x0 = 1, u = x1`,
/// otherwise `x1 = 1, u = x0`; likewise for `v`.
fn chart(form: &BiForm, x_at_x1: bool, y_at_y1: bool) -> Bivariate {
    let (d1, d2) = form.bidegree();
    let mut f = vec![vec![BigRational::zero(); d2 + 1]; d1 + 1];
    for j in 0..=d1 {
        for l in 0..=d2 {
            let pu = if x_at_x1 { d1 - j } else { j };
            let pv = if y_at_y1 { d2 - l } else { l };
            f[pu][pv] = form.coeff(j, l).clone();
        }
    }
    f
}

fn lift(t: Complex64, at_second: bool) -> P1Point {
    if at_second {
        P1Point::new(t, Complex64::new(1.0, 0.0))
    } else {
        P1Point::new(Complex64::new(1.0, 0.0), t)
    }
}

fn diff_u(f: &Bivariate) -> Bivariate {
    if f.len() <= 1 {
        return vec![vec![BigRational::zero(); f[0].len()]];
    }
    (1..f.len())
        .map(|pu| f[pu].iter().map(|c| c * exact::int(pu as i64)).collect())
        .collect()
}

fn diff_v(f: &Bivariate) -> Bivariate {
    f.iter()
        .map(|row| {
            if row.len() <= 1 {
                return vec![BigRational::zero()];
            }
            (1..row.len()).map(|pv| &row[pv] * exact::int(pv as i64)).collect()
        })
        .collect()
}

/// Coefficients in `v` (highest first) after substituting `u`.
fn specialize(f: &Bivariate, u: &BigRational, dv: usize) -> Vec<BigRational> {
    (0..=dv)
        .rev()
        .map(|pv| {
            let mut acc = BigRational::zero();
            for row in f.iter().rev() {
                acc = acc * u + row.get(pv).cloned().unwrap_or_else(BigRational::zero);
            }
            acc
        })
        .collect()
}

/// `Res_v(f, g)` with formal `v`-degrees `m`, `n` and `u`-degrees `a`, `b`,
/// as a polynomial in `u`.
fn resultant_v(f: &Bivariate, a: usize, m: usize, g: &Bivariate, b: usize, n: usize) -> Poly {
    if m == 0 && n == 0 {
        return Poly::one();
    }
    let bound = n * a + m * b;
    let pts: Vec<(BigRational, BigRational)> = (0..=bound)
        .map(|k| {
            let u = exact::int(k as i64);
            let fs = specialize(f, &u, m);
            let gs = specialize(g, &u, n);
            (u, exact::determinant(sylvester(&fs, &gs)))
        })
        .collect();
    Poly::interpolate(&pts)
}

fn to_complex_affine(p: &Poly) -> ComplexForm {
    let d = p.degree().unwrap_or(0);
    let monic = p.monic();
    let scale = monic.max_abs_f64().max(1.0);
    ComplexForm::new(
        (0..=d)
            .map(|i| Complex64::new(exact::to_f64(&monic.coeff(d - i)) / scale, 0.0))
            .collect(),
    )
}

fn eval_bivariate(f: &Bivariate, u: Complex64, v: Complex64) -> (Complex64, f64) {
    let mut acc = Complex64::new(0.0, 0.0);
    let mut size = 0.0;
    let mut up = Complex64::new(1.0, 0.0);
    for row in f {
        let mut vp = Complex64::new(1.0, 0.0);
        for c in row {
            let c = exact::to_f64(c);
            let term = up * vp * c;
            acc += term;
            size += term.norm();
            vp *= v;
        }
        up *= u;
    }
    (acc, size)
}

/// Points `(u, v)` over the roots of `g` where `f`, `f_u`, `f_v` all vanish
/// to working precision.
fn numeric_candidates(f: &Bivariate, fu: &Bivariate, fv: &Bivariate, g: &Poly) -> Vec<(Complex64, Complex64)> {
    let mut out = Vec::new();
    let Ok(us) = to_complex_affine(g).roots() else { return out };
    let dv = f[0].len() - 1;
    for up in us {
        if up.y1.norm() < 1e-9 {
            continue;
        }
        let u = up.y0 / up.y1;
        let coeffs: Vec<Complex64> = (0..=dv)
            .map(|i| {
                let pv = dv - i;
                let mut acc = Complex64::new(0.0, 0.0);
                for row in f.iter().rev() {
                    acc = acc * u + exact::to_f64(&row[pv]);
                }
                acc
            })
            .collect();
        let Ok(vs) = ComplexForm::new(coeffs).roots() else { continue };
        for vp in vs {
            if vp.y1.norm() < 1e-9 {
                continue;
            }
            let v = vp.y0 / vp.y1;
            let small = |h: &Bivariate| {
                let (val, size) = eval_bivariate(h, u, v);
                val.norm() <= POINT_TOL * size.max(f64::MIN_POSITIVE)
            };
            if small(f) && small(fu) && small(fv) {
                out.push((u, v));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nodal_curve_is_located() {
        // (x0^2 y1^2 - x1^2 y0^2)^2
        let nonreduced = BiForm::from_int_terms((4, 4), &[(4, 0, 0, 4, 1), (0, 4, 4, 0, 1), (2, 2, 2, 2, -2)]).unwrap();
        assert!(!singular_points(&nonreduced).is_smooth());

        // Two (2,2) curves in even monomials only. In u^2, v^2 they are
        // bilinear with two common solutions, giving eight nodes (+-u, +-v).
        let c1 = [(2, 0, 2, 0, 1), (0, 2, 0, 2, 1), (0, 2, 2, 0, 2), (2, 0, 0, 2, 3)];
        let c2 = [(2, 0, 2, 0, 2), (0, 2, 0, 2, 1), (0, 2, 2, 0, -1), (2, 0, 0, 2, 5)];
        let mut product = BiForm::zero(4, 4);
        for &(_, j1, _, l1, a) in &c1 {
            for &(_, j2, _, l2, b) in &c2 {
                let old = product.coeff(j1 + j2, l1 + l2).clone();
                product.set_coeff(j1 + j2, l1 + l2, old + exact::int(a * b));
            }
        }
        match singular_points(&product) {
            Singularities::Points(p) => assert_eq!(p.len(), 8),
            other => panic!("expected singular points, got {other:?}"),
        }
    }

    #[test]
    fn fermat_type_curve_is_smooth() {
        let b = BiForm::from_int_terms((4, 4), &[(4, 0, 4, 0, 1), (0, 4, 0, 4, 1), (4, 0, 0, 4, 1), (0, 4, 4, 0, 2)]).unwrap();
        assert!(singular_points(&b).is_smooth());
    }
}
