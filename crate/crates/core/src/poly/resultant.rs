use num_traits::Zero;

use super::{MultiPoly, PolyError, UniPoly};
use crate::rational::Rational;

/// Determinant by fraction-free (Bareiss) elimination; every division is
/// exact in the polynomial ring.
fn bareiss_det(mut m: Vec<Vec<MultiPoly>>, one: MultiPoly) -> Result<MultiPoly, PolyError> {
    let n = m.len();
    if n == 0 {
        return Ok(one);
    }
    let mut prev = one.clone();
    let mut sign = false;
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    sign = !sign;
                }
                None => return Ok(one.scale(&Rational::zero())),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = (&m[k][k] * &m[i][j]).try_sub(&(&m[i][k] * &m[k][j]))?;
                m[i][j] = num.divide_exact(&prev)?;
            }
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    Ok(if sign { -det } else { det })
}

/// Resultant of `p` and `q` with respect to `name`, via the Sylvester
/// matrix. Common roots of `p` and `q` project to roots of the result.
pub fn resultant(p: &MultiPoly, q: &MultiPoly, name: &str) -> Result<MultiPoly, PolyError> {
    let dp = p.degree_in(name)?.ok_or(PolyError::ZeroDenominator)? as usize;
    let dq = q.degree_in(name)?.ok_or(PolyError::ZeroDenominator)? as usize;
    let pc: Vec<MultiPoly> = (0..=dp)
        .map(|d| p.coefficient_in(name, d as u32))
        .collect::<Result<_, _>>()?;
    let qc: Vec<MultiPoly> = (0..=dq)
        .map(|d| q.coefficient_in(name, d as u32))
        .collect::<Result<_, _>>()?;
    let zero = p.scale(&Rational::zero());
    let one = MultiPoly::constant(
        &p.vars().iter().map(String::as_str).collect::<Vec<_>>(),
        crate::rational::int(1),
    );
    let n = dp + dq;
    let mut m = vec![vec![zero.clone(); n]; n];
    // rows of p shifted dq times, then rows of q shifted dp times; highest
    // coefficient first
    for r in 0..dq {
        for (d, c) in pc.iter().enumerate() {
            m[r][r + dp - d] = c.clone();
        }
    }
    for r in 0..dp {
        for (d, c) in qc.iter().enumerate() {
            m[dq + r][r + dq - d] = c.clone();
        }
    }
    bareiss_det(m, one)
}

/// Resultant of two univariate polynomials.
pub fn resultant_uni(p: &UniPoly, q: &UniPoly) -> Result<Rational, PolyError> {
    let vars = ["x"];
    let a = MultiPoly::from_univariate(&vars, "x", p)?;
    let b = MultiPoly::from_univariate(&vars, "x", q)?;
    let r = resultant(&a, &b, "x")?;
    Ok(r.coefficient(&[0]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    #[test]
    fn univariate_resultant_detects_common_root() {
        let p = UniPoly::from_ints(&[-2, 1]).mul(&UniPoly::from_ints(&[1, 1]));
        let q = UniPoly::from_ints(&[-2, 1]).mul(&UniPoly::from_ints(&[5, 0, 1]));
        assert!(resultant_uni(&p, &q).unwrap().is_zero());
        // Res(x - a, x - b) = a - b up to sign
        let r =
            resultant_uni(&UniPoly::from_ints(&[-3, 1]), &UniPoly::from_ints(&[-7, 1])).unwrap();
        assert_eq!(r, int(-4));
    }

    #[test]
    fn elimination_projects_common_roots() {
        // x^2 + y^2 - 5 and x y - 2 meet at (1, 2), (2, 1), (-1, -2), (-2, -1)
        let vars = ["x", "y"];
        let x = MultiPoly::var(&vars, "x").unwrap();
        let y = MultiPoly::var(&vars, "y").unwrap();
        let c = |v| MultiPoly::constant(&vars, int(v));
        let f = &(&x.pow(2) + &y.pow(2)) - &c(5);
        let g = &(&x * &y) - &c(2);
        let r = resultant(&f, &g, "x").unwrap();
        assert_eq!(r.degree_in("x").unwrap(), Some(0));
        let ry = r.to_univariate("y").unwrap();
        for v in [1, 2, -1, -2] {
            assert!(ry.eval(&int(v)).is_zero());
        }
        assert!(!ry.eval(&int(3)).is_zero());
    }
}
