//! Resultants and greatest common divisors of bivariate polynomials, both
//! computed by treating a polynomial as an element of `K[x][y]`.

use super::bivar::BivarPoly;
use super::univar::UniPoly;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// `Res_y(f, g)` as a polynomial in `x`.
///
/// Sign convention: the determinant of the Sylvester matrix whose first
/// `deg_y g` rows carry the coefficients of `f` (highest power of `y`
/// first), i.e. `Res(f, g) = lc(f)^{deg g} · Π g(α)` over the roots `α` of `f`.
/// Computed with fraction-free (Bareiss) elimination over `K[x]`.
pub fn resultant_in_y<T: Scalar>(f: &BivarPoly<T>, g: &BivarPoly<T>) -> Result<UniPoly<T>> {
    let p = f.degree_in_y().unwrap_or(0) as usize;
    let q = g.degree_in_y().unwrap_or(0) as usize;
    if f.is_zero() || g.is_zero() || p == 0 || q == 0 {
        return Err(Error::DegenerateResultant);
    }
    let fc = f.y_coefficients();
    let gc = g.y_coefficients();
    let n = p + q;
    let mut m = vec![vec![UniPoly::zero(); n]; n];
    for row in 0..q {
        for (k, c) in fc.iter().enumerate() {
            m[row][row + p - k] = c.clone();
        }
    }
    for row in 0..p {
        for (k, c) in gc.iter().enumerate() {
            m[q + row][row + q - k] = c.clone();
        }
    }
    Ok(bareiss_det(m))
}

fn bareiss_det<T: Scalar>(mut m: Vec<Vec<UniPoly<T>>>) -> UniPoly<T> {
    let n = m.len();
    let mut negate = false;
    let mut prev = UniPoly::one();
    for k in 0..n.saturating_sub(1) {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(k, i);
                    negate = !negate;
                }
                None => return UniPoly::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&m[i][j] * &m[k][k]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = num.exact_div(&prev).expect("Bareiss step divides exactly");
            }
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if negate {
        -&det
    } else {
        det
    }
}

/// Monic gcd of a list of polynomials in `x`.
fn content<T: Scalar>(coeffs: &[UniPoly<T>]) -> UniPoly<T> {
    coeffs.iter().fold(UniPoly::zero(), |acc, c| acc.gcd(c))
}

fn primitive_part<T: Scalar>(coeffs: &[UniPoly<T>]) -> Vec<UniPoly<T>> {
    let c = content(coeffs);
    coeffs
        .iter()
        .map(|u| u.exact_div(&c).expect("content divides every coefficient"))
        .collect()
}

fn trim<T: Scalar>(mut v: Vec<UniPoly<T>>) -> Vec<UniPoly<T>> {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
    v
}

/// Pseudo-remainder of `a` by `b` in `K[x][y]`.
fn pseudo_rem<T: Scalar>(a: &[UniPoly<T>], b: &[UniPoly<T>]) -> Vec<UniPoly<T>> {
    let db = b.len() - 1;
    let lb = &b[db];
    let mut r = a.to_vec();
    while r.len() > db {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        let shift = dr - db;
        let mut next: Vec<UniPoly<T>> = r.iter().map(|c| c * lb).collect();
        for (k, bc) in b.iter().enumerate() {
            next[k + shift] = &next[k + shift] - &(&lr * bc);
        }
        r = trim(next);
    }
    r
}

/// Number of values `x = a` tried before falling back to the remainder
/// sequence.
const SPECIALIZATIONS: i64 = 8;

/// Cheap certificate that `f` and `g` share no factor of positive degree in
/// `y`: some `x = a` keeps both leading coefficients nonzero and makes
/// `f(a, y)`, `g(a, y)` coprime. `false` proves nothing.
fn coprime_by_specialization<T: Scalar>(fc: &[UniPoly<T>], gc: &[UniPoly<T>]) -> bool {
    if fc.len() < 2 || gc.len() < 2 {
        return false;
    }
    let at = |cs: &[UniPoly<T>], a: &T| UniPoly::new(cs.iter().map(|c| c.eval(a)).collect());
    (0..SPECIALIZATIONS).any(|k| {
        let a = T::from_int(if k % 2 == 0 { k / 2 } else { -(k + 1) / 2 });
        let (fa, ga) = (at(fc, &a), at(gc, &a));
        fa.degree() == Some(fc.len() - 1)
            && ga.degree() == Some(gc.len() - 1)
            && fa.gcd(&ga).degree() == Some(0)
    })
}

/// Greatest common divisor in `K[x, y]`, normalized with [`BivarPoly::monic`].
///
/// Primitive polynomial remainder sequence over `K[x][y]`, with the gcd of the
/// contents handled separately.
pub fn gcd<T: Scalar>(f: &BivarPoly<T>, g: &BivarPoly<T>) -> BivarPoly<T> {
    if f.is_zero() {
        return g.monic();
    }
    if g.is_zero() {
        return f.monic();
    }
    let fc = f.y_coefficients();
    let gc = g.y_coefficients();
    let cont = content(&fc).gcd(&content(&gc));
    if coprime_by_specialization(&fc, &gc) {
        return BivarPoly::from_y_coefficients(&[cont]).monic();
    }
    let mut a = primitive_part(&fc);
    let mut b = primitive_part(&gc);
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    let prim = loop {
        if b.len() == 1 {
            // b is a nonzero primitive constant in y, hence a unit.
            break vec![UniPoly::one()];
        }
        let r = pseudo_rem(&a, &b);
        if r.is_empty() {
            break b;
        }
        a = b;
        b = primitive_part(&r);
    };
    let prim = primitive_part(&prim);
    let scaled: Vec<UniPoly<T>> = prim.iter().map(|c| c * &cont).collect();
    BivarPoly::from_y_coefficients(&scaled).monic()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyalgebra::parse_poly;
    use crate::{Poly, Rat};

    fn p(s: &str) -> Poly {
        parse_poly(s).unwrap()
    }

    fn u(cs: &[i64]) -> UniPoly<Rat> {
        UniPoly::new(cs.iter().map(|&c| Rat::from_int(c)).collect())
    }

    #[test]
    fn two_by_two_resultants() {
        // det [[1, -x^2], [1, x^2]] = 2x^2
        assert_eq!(
            resultant_in_y(&p("y - x^2"), &p("y + x^2")).unwrap(),
            u(&[0, 0, 2])
        );
        // det [[1, 0], [1, -x]] = -x
        assert_eq!(resultant_in_y(&p("y"), &p("y - x")).unwrap(), u(&[0, -1]));
    }

    #[test]
    fn common_factor_gives_zero() {
        let f = p("y^2 - x^3 + x*y");
        assert!(resultant_in_y(&f, &f).unwrap().is_zero());
    }

    #[test]
    fn degenerate_input() {
        assert_eq!(
            resultant_in_y(&p("x^2"), &p("y")).unwrap_err(),
            Error::DegenerateResultant
        );
        assert_eq!(
            resultant_in_y(&p("0"), &p("y")).unwrap_err(),
            Error::DegenerateResultant
        );
    }

    #[test]
    fn resultant_matches_substitution() {
        // g = y - h(x) has the single root h(x): Res(g, f) = f(x, h(x)).
        let f = p("y^3 - x^5 + 2*x*y");
        let g = p("y - x^2 - 3*x");
        let h = p("x^2 + 3*x");
        let sub = f.substitute(&Poly::x(), &h).as_univariate_x().unwrap();
        assert_eq!(resultant_in_y(&g, &f).unwrap(), sub);
    }

    #[test]
    fn bivariate_gcd() {
        let a = p("y - x^2");
        let b = p("y^2 + x + 1");
        let c = p("x - 3*y + 2");
        let g = gcd(&(&a * &b), &(&a * &c));
        assert_eq!(g, a.monic());
        assert_eq!(gcd(&b, &c), Poly::one());
        // content in x alone
        let g2 = gcd(&(&p("x^2") * &b), &(&p("x") * &c));
        assert_eq!(g2, p("x"));
        assert_eq!(gcd(&p("0"), &p("2*y")), p("y"));
    }
}
