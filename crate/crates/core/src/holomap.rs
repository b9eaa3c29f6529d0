//! Holomorphic polynomial maps between coordinate patches and pullback of
//! forms along them.

use crate::error::{Error, Result};
use crate::form::{BiForm, Factor};
use crate::poly::{Poly, Var};

/// `f: C^m -> C^n`, `f = (f^1, ..., f^n)` with each `f^i` a polynomial in
/// the source coordinates `w^1..w^m` only.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HoloMap {
    source_dim: usize,
    components: Vec<Poly>,
}

impl HoloMap {
    pub fn new(source_dim: usize, components: Vec<Poly>) -> Result<Self> {
        for (k, c) in components.iter().enumerate() {
            for v in c.vars() {
                match v {
                    Var::Z(i) if (i as usize) < source_dim => {}
                    Var::Z(i) => {
                        return Err(Error::NotHolomorphic(format!(
                            "component {} uses w{} beyond source dimension {}",
                            k + 1,
                            i + 1,
                            source_dim
                        )))
                    }
                    other => {
                        return Err(Error::NotHolomorphic(format!("component {} contains {}", k + 1, other)));
                    }
                }
            }
        }
        Ok(HoloMap { source_dim, components })
    }

    pub fn identity(n: usize) -> Self {
        HoloMap { source_dim: n, components: (0..n).map(|i| Poly::var(Var::Z(i as u8))).collect() }
    }

    /// Standard chart of the blow-up of `C^n` along `{z^{m+1} = ... = z^n = 0}`
    /// where the line coordinate `l_j` is nonzero (`j` zero-based, `j >= m`):
    /// `z^i = w^i` for `i < m` and `i = j`, `z^s = w^j w^s` otherwise.
    /// These parametrize `z_s l_j = z_j l_s` with `l_s / l_j = w^s`.
    pub fn blowup_chart(n: usize, center_dim: usize, j: usize) -> Result<Self> {
        if center_dim >= n || j < center_dim || j >= n {
            return Err(Error::Hypothesis(format!(
                "chart index {} invalid for a blow-up of C^{} along C^{}",
                j + 1,
                n,
                center_dim
            )));
        }
        let w = |i: usize| Poly::var(Var::Z(i as u8));
        let components =
            (0..n).map(|s| if s < center_dim || s == j { w(s) } else { &w(j) * &w(s) }).collect();
        Ok(HoloMap { source_dim: n, components })
    }

    pub fn source_dim(&self) -> usize {
        self.source_dim
    }

    pub fn target_dim(&self) -> usize {
        self.components.len()
    }

    pub fn components(&self) -> &[Poly] {
        &self.components
    }

    /// `f^* dz^i = Σ_j ∂f^i/∂w^j dw^j`.
    pub fn differential(&self, i: usize) -> BiForm {
        let mut out = BiForm::zero(self.source_dim);
        for j in 0..self.source_dim {
            let c = self.components[i].derivative(Var::Z(j as u8));
            out.add_assign_ref(&BiForm::from_factors(self.source_dim, &[Factor::Dz(j as u8)], c));
        }
        out
    }

    /// Pullback of a function.
    pub fn pullback_poly(&self, p: &Poly) -> Poly {
        p.substitute(&|v| match v {
            Var::Z(i) => Some(self.components[i as usize].clone()),
            Var::Zb(i) => Some(self.components[i as usize].conj()),
            _ => None,
        })
    }

    /// Pullback of a form; a ring morphism commuting with `∂`, `∂̄` and `d`.
    pub fn pullback(&self, a: &BiForm) -> Result<BiForm> {
        a.check_dim(self.target_dim())?;
        let holo: Vec<BiForm> = (0..self.target_dim()).map(|i| self.differential(i)).collect();
        let anti: Vec<BiForm> = holo.iter().map(BiForm::conj).collect();
        let mut out = BiForm::zero(self.source_dim);
        for (b, c) in a.terms() {
            let mut acc = BiForm::function(self.source_dim, self.pullback_poly(c));
            for &i in b.holo() {
                acc = acc.wedge(&holo[i as usize]);
            }
            for &j in b.anti() {
                acc = acc.wedge(&anti[j as usize]);
            }
            out.add_assign_ref(&acc);
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Scalar;

    fn w(i: u8) -> Poly {
        Poly::var(Var::Z(i))
    }
    fn wb(i: u8) -> Poly {
        Poly::var(Var::Zb(i))
    }

    fn sigma() -> HoloMap {
        HoloMap::blowup_chart(2, 0, 0).unwrap()
    }

    #[test]
    fn chart_is_u_uv() {
        assert_eq!(sigma().components(), &[w(0), &w(0) * &w(1)]);
    }

    #[test]
    fn pullback_of_dz2() {
        let expected = BiForm::dz(2, 0).scale_poly(&w(1)) + BiForm::dz(2, 1).scale_poly(&w(0));
        assert_eq!(sigma().pullback(&BiForm::dz(2, 1)).unwrap(), expected);
    }

    #[test]
    fn pullback_of_first_kahler_term() {
        let a = BiForm::from_factors(2, &[Factor::Dz(0), Factor::Dzb(0)], Poly::constant(Scalar::i()));
        assert_eq!(sigma().pullback(&a).unwrap(), a);
    }

    #[test]
    fn pullback_of_second_kahler_term_has_four_terms() {
        let i = Poly::constant(Scalar::i());
        let a = BiForm::from_factors(2, &[Factor::Dz(1), Factor::Dzb(1)], i.clone());
        let left = BiForm::dz(2, 0).scale_poly(&w(1)) + BiForm::dz(2, 1).scale_poly(&w(0));
        let right = BiForm::dzb(2, 0).scale_poly(&wb(1)) + BiForm::dzb(2, 1).scale_poly(&wb(0));
        let expected = left.wedge(&right).scale_poly(&i);
        let got = sigma().pullback(&a).unwrap();
        assert_eq!(got, expected);
        assert_eq!(got.len(), 4);
    }

    #[test]
    fn rejects_antiholomorphic_components() {
        assert!(HoloMap::new(1, vec![wb(0)]).is_err());
        assert!(HoloMap::new(1, vec![w(1)]).is_err());
        assert!(HoloMap::new(1, vec![Poly::var(Var::T)]).is_err());
    }

    #[test]
    fn dimension_mismatch() {
        assert!(sigma().pullback(&BiForm::dz(3, 0)).is_err());
    }
}
