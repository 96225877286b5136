//! Sylvester resultants and divided differences.

use num_traits::{One, Zero};

use super::poly::Poly;
use super::rational::Rational;
use crate::error::{Error, Result};

/// Sylvester resultant of `f` and `g` with respect to `var`.
///
/// The determinant is evaluated with fraction-free Bareiss elimination, so
/// every intermediate division is exact in the polynomial ring.
pub fn resultant(f: &Poly, g: &Poly, var: &str) -> Result<Poly> {
    let df = f.degree_in(var) as usize;
    let dg = g.degree_in(var) as usize;
    if df == 0 && dg == 0 {
        return Err(Error::NothingToEliminate(var.to_string()));
    }
    let vars: Vec<String> = {
        let mut v: Vec<String> = f.vars().to_vec();
        for w in g.vars() {
            if !v.contains(w) {
                v.push(w.clone());
            }
        }
        v
    };
    let vars: Vec<&str> = vars.iter().map(String::as_str).collect();
    let f = f.with_vars(&vars);
    let g = g.with_vars(&vars);
    if f.is_zero() || g.is_zero() {
        return Ok(Poly::zero(&vars));
    }
    let fc = f.coeffs_in(var);
    let gc = g.coeffs_in(var);
    let n = df + dg;
    let zero = Poly::zero(&vars);
    let mut m = vec![vec![zero.clone(); n]; n];
    // rows of f shifted dg times, then rows of g shifted df times;
    // column j holds the coefficient of var^(n-1-j)
    for r in 0..dg {
        for (e, c) in fc.iter().enumerate() {
            m[r][r + df - e] = c.clone();
        }
    }
    for r in 0..df {
        for (e, c) in gc.iter().enumerate() {
            m[dg + r][r + dg - e] = c.clone();
        }
    }
    Ok(bareiss_determinant(m, &vars))
}

/// Determinant of a square matrix of polynomials.
pub fn bareiss_determinant(mut m: Vec<Vec<Poly>>, vars: &[&str]) -> Poly {
    let n = m.len();
    if n == 0 {
        return Poly::constant(vars, Rational::one());
    }
    let mut sign = Rational::one();
    let mut prev = Poly::constant(vars, Rational::one());
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(k, i);
                    sign = -sign;
                }
                None => return Poly::zero(vars),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = m[k][k].mul(&m[i][j]).sub(&m[i][k].mul(&m[k][j]));
                m[i][j] = num.div_exact(&prev).expect("Bareiss division is exact");
            }
            m[i][k] = Poly::zero(vars);
        }
        prev = m[k][k].clone();
    }
    m[n - 1][n - 1].scale(&sign)
}

/// `(f(.., y, ..) - f(.., y', ..)) / (y - y')` with `y'` a fresh variable
/// named `fresh`.
///
/// Each monomial `c * rest * y^k` contributes `c * rest * sum_{i<k} y^i y'^(k-1-i)`.
pub fn divided_difference(f: &Poly, var: &str, fresh: &str) -> Poly {
    let mut vars: Vec<&str> = f.vars().iter().map(String::as_str).collect();
    if !vars.contains(&fresh) {
        vars.push(fresh);
    }
    let f = f.with_vars(&vars);
    let Some(iy) = f.index_of(var) else {
        return Poly::zero(&vars);
    };
    let iz = f.index_of(fresh).unwrap();
    let mut terms = Vec::new();
    for (m, c) in f.terms() {
        let k = m[iy];
        for i in 0..k {
            let mut nm = m.clone();
            nm[iy] = i;
            nm[iz] = k - 1 - i;
            terms.push((nm, c.clone()));
        }
    }
    Poly::from_terms(&vars, terms)
}

/// Checks `(y - y') * dd == f(y) - f(y')` exactly.
pub fn verify_divided_difference(f: &Poly, dd: &Poly, var: &str, fresh: &str) -> bool {
    let vars: Vec<&str> = dd.vars().iter().map(String::as_str).collect();
    let f = f.with_vars(&vars);
    let shifted = f.substitute(var, &Poly::var(&vars, fresh));
    let lhs = Poly::var(&vars, var).sub(&Poly::var(&vars, fresh)).mul(dd);
    lhs.sub(&f.sub(&shifted)).is_zero()
}

/// True if `p` vanishes identically.
pub fn is_identically_zero(p: &Poly) -> bool {
    p.terms().all(|(_, c)| c.is_zero())
}
