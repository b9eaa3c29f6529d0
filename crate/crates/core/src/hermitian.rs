//! Pointwise Hermitian matrices of real (1,1)-forms and exact positivity tests.

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::form::BiForm;
use crate::scalar::Scalar;

/// A point of `C^n`; `zbar^i` evaluates to the conjugate of `z^i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Point {
    pub coords: Vec<Scalar>,
}

impl Point {
    pub fn new(coords: Vec<Scalar>) -> Self {
        Point { coords }
    }

    pub fn origin(dim: usize) -> Self {
        Point { coords: vec![Scalar::zero(); dim] }
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }
}

/// Writing `a = i Σ g_{jk} dz^j ∧ dzbar^k`, returns `g` evaluated at `p`
/// with `t = 0` and `N` replaced by `n_value` when given.
pub fn hermitian_matrix_at(a: &BiForm, p: &Point, n_value: Option<&Scalar>) -> Result<Vec<Vec<Scalar>>> {
    a.require_pure(1, 1)?;
    if p.dim() != a.dim() {
        return Err(Error::DimensionMismatch { expected: a.dim(), found: p.dim() });
    }
    let n = a.dim();
    let minus_i = -Scalar::i();
    let mut g = vec![vec![Scalar::zero(); n]; n];
    for (b, c) in a.terms() {
        let v = c
            .eval(&p.coords, n_value)
            .ok_or_else(|| Error::Evaluation("coefficient contains N but no value was supplied".into()))?;
        g[b.holo()[0] as usize][b.anti()[0] as usize] = &v * &minus_i;
    }
    Ok(g)
}

/// Leading principal minors of a square matrix, each computed exactly.
pub fn leading_principal_minors(m: &[Vec<Scalar>]) -> Vec<Scalar> {
    (1..=m.len()).map(|k| determinant(&m[..k].iter().map(|r| r[..k].to_vec()).collect::<Vec<_>>())).collect()
}

/// Exact determinant by Gaussian elimination with row pivoting.
#[allow(clippy::needless_range_loop)]
pub fn determinant(m: &[Vec<Scalar>]) -> Scalar {
    let n = m.len();
    let mut a: Vec<Vec<Scalar>> = m.to_vec();
    let mut det = Scalar::from_int(1);
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return Scalar::zero();
        };
        if piv != col {
            a.swap(piv, col);
            det = -det;
        }
        let inv = a[col][col].inv().expect("nonzero pivot");
        det = &det * &a[col][col];
        for r in col + 1..n {
            if a[r][col].is_zero() {
                continue;
            }
            let f = &a[r][col] * &inv;
            for c in col..n {
                let sub = &f * &a[col][c];
                a[r][c] -= &sub;
            }
        }
    }
    det
}

/// Sylvester's criterion on the Hermitian matrix of `a` at `p`.
pub fn is_positive_definite_at(a: &BiForm, p: &Point) -> Result<bool> {
    positive_definite_with(a, p, None)
}

/// As [`is_positive_definite_at`], with a value for `N`.
pub fn positive_definite_with(a: &BiForm, p: &Point, n_value: Option<&Scalar>) -> Result<bool> {
    a.require_pure(1, 1)?;
    if !a.is_real() {
        return Err(Error::NotReal);
    }
    let g = hermitian_matrix_at(a, p, n_value)?;
    Ok(leading_principal_minors(&g).iter().all(|d| d.is_real() && d.re.is_positive()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::form::Factor;
    use crate::poly::{Poly, Var};
    use num_traits::One;

    fn i() -> Scalar {
        Scalar::i()
    }

    fn identity(n: usize) -> Vec<Vec<Scalar>> {
        (0..n).map(|r| (0..n).map(|c| if r == c { Scalar::one() } else { Scalar::zero() }).collect()).collect()
    }

    #[test]
    fn standard_form_is_identity() {
        let w = BiForm::standard_kahler(2);
        let p = Point::new(vec![Scalar::from_int(3), Scalar::from_parts((1, 2), (1, 1))]);
        assert_eq!(hermitian_matrix_at(&w, &p, None).unwrap(), identity(2));
        assert!(is_positive_definite_at(&w, &Point::origin(2)).unwrap());
    }

    #[test]
    fn substitution_at_point() {
        let c = (Poly::one() + &Poly::var(Var::Z(0)) * &Poly::var(Var::Zb(0))).scale(&i());
        let w = BiForm::from_factors(1, &[Factor::Dz(0), Factor::Dzb(0)], c);
        let g = hermitian_matrix_at(&w, &Point::new(vec![Scalar::one()]), None).unwrap();
        assert_eq!(g, vec![vec![Scalar::from_int(2)]]);
    }

    #[test]
    fn indefinite_form() {
        let w = BiForm::from_factors(2, &[Factor::Dz(0), Factor::Dzb(0)], Poly::constant(i()))
            - BiForm::from_factors(2, &[Factor::Dz(1), Factor::Dzb(1)], Poly::constant(i()));
        let g = hermitian_matrix_at(&w, &Point::origin(2), None).unwrap();
        assert_eq!(g[1][1], Scalar::from_int(-1));
        assert!(!is_positive_definite_at(&w, &Point::origin(2)).unwrap());
    }

    #[test]
    fn rejects_non_11_and_non_real() {
        assert!(hermitian_matrix_at(&BiForm::dz(1, 0), &Point::origin(1), None).is_err());
        let w = BiForm::from_factors(1, &[Factor::Dz(0), Factor::Dzb(0)], Poly::one());
        assert_eq!(is_positive_definite_at(&w, &Point::origin(1)), Err(Error::NotReal));
    }

    #[test]
    fn determinant_with_pivoting() {
        let m = vec![
            vec![Scalar::zero(), Scalar::one()],
            vec![Scalar::one(), Scalar::zero()],
        ];
        assert_eq!(determinant(&m), -Scalar::one());
    }
}
