//! Condition checkers for Hermitian metrics given by their fundamental form.

use crate::error::{Error, Result};
use crate::form::BiForm;
use crate::hermitian::{is_positive_definite_at, Point};
use crate::poly::Poly;
use crate::scalar::Scalar;

/// A real, positive (at the sample points) (1,1)-form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MetricForm {
    omega: BiForm,
    sample_points: Vec<Point>,
}

impl MetricForm {
    pub fn new(omega: BiForm, sample_points: Vec<Point>) -> Result<Self> {
        let n = omega.dim();
        if n == 0 || n > crate::form::MAX_DIM {
            return Err(Error::DimensionCap(n));
        }
        omega.require_pure(1, 1)?;
        if !omega.is_real() {
            return Err(Error::NotReal);
        }
        for (index, p) in sample_points.iter().enumerate() {
            if !is_positive_definite_at(&omega, p)? {
                return Err(Error::NotPositive { index });
            }
        }
        Ok(MetricForm { omega, sample_points })
    }

    /// Validated at the origin only.
    pub fn at_origin(omega: BiForm) -> Result<Self> {
        let n = omega.dim();
        MetricForm::new(omega, vec![Point::origin(n)])
    }

    pub fn omega(&self) -> &BiForm {
        &self.omega
    }

    pub fn dim(&self) -> usize {
        self.omega.dim()
    }

    pub fn sample_points(&self) -> &[Point] {
        &self.sample_points
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Holds,
    /// The witness is nonzero in canonical form.
    Fails { witness: BiForm },
}

impl Verdict {
    pub fn from_witness(w: BiForm) -> Verdict {
        if w.is_zero() {
            Verdict::Holds
        } else {
            Verdict::Fails { witness: w }
        }
    }

    pub fn holds(&self) -> bool {
        matches!(self, Verdict::Holds)
    }

    pub fn witness(&self) -> Option<&BiForm> {
        match self {
            Verdict::Holds => None,
            Verdict::Fails { witness } => Some(witness),
        }
    }
}

/// `∂∂̄ a`.
pub fn ddbar(a: &BiForm) -> BiForm {
    a.delbar().del()
}

/// First `i` in `1..=k` with `∂∂̄ ω^i ≠ 0`, with that form.
pub fn first_ddbar_failure(omega: &BiForm, k: usize) -> Option<(usize, BiForm)> {
    let mut power = BiForm::one(omega.dim());
    for i in 1..=k {
        power = power.wedge(omega);
        let w = ddbar(&power);
        if !w.is_zero() {
            return Some((i, w));
        }
    }
    None
}

pub fn check_kahler(m: &MetricForm) -> Verdict {
    Verdict::from_witness(m.omega.d())
}

/// `∂∂̄ ω^i = 0` for every `i = 1..=k`.
pub fn check_k_special(m: &MetricForm, k: usize) -> Result<Verdict> {
    let n = m.dim();
    if k < 1 || k + 1 > n {
        return Err(Error::PowerOutOfRange { k, max: n.saturating_sub(1) });
    }
    Ok(k_special_verdict(&m.omega, k))
}

pub(crate) fn k_special_verdict(omega: &BiForm, k: usize) -> Verdict {
    match first_ddbar_failure(omega, k) {
        None => Verdict::Holds,
        Some((_, w)) => Verdict::Fails { witness: w },
    }
}

/// `∂∂̄ ω^k = 0` for all `k = 1..=n-1`; vacuous when `n = 1`.
pub fn check_special(m: &MetricForm) -> Verdict {
    k_special_verdict(&m.omega, m.dim().saturating_sub(1))
}

/// Pluriclosed: `∂∂̄ ω = 0`.
pub fn check_skt(m: &MetricForm) -> Verdict {
    Verdict::from_witness(ddbar(&m.omega))
}

/// `∂∂̄ ω^{n-2} = 0`, defined for `n >= 3`.
pub fn check_astheno(m: &MetricForm) -> Result<Verdict> {
    let n = m.dim();
    if n < 3 {
        return Err(Error::AsthenoDimension(n));
    }
    Ok(Verdict::from_witness(ddbar(&m.omega.power(n - 2))))
}

/// `d ω^{n-1} = 0`.
pub fn check_balanced(m: &MetricForm) -> Verdict {
    Verdict::from_witness(m.omega.power(m.dim() - 1).d())
}

/// `∂∂̄ ω^{n-1} = 0`, as a condition on the given form.
pub fn check_gauduchon(m: &MetricForm) -> Verdict {
    Verdict::from_witness(ddbar(&m.omega.power(m.dim() - 1)))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConditionReport {
    pub kahler: Verdict,
    pub skt: Verdict,
    /// `None` when `n < 3`.
    pub astheno_kahler: Option<Verdict>,
    pub balanced: Verdict,
    pub gauduchon: Verdict,
    pub special: Verdict,
    /// `(k, verdict)` for `k = 1..=n-1`.
    pub k_special: Vec<(usize, Verdict)>,
}

impl ConditionReport {
    pub fn all_hold(&self) -> bool {
        self.kahler.holds()
            && self.skt.holds()
            && self.astheno_kahler.as_ref().is_none_or(Verdict::holds)
            && self.balanced.holds()
            && self.gauduchon.holds()
            && self.special.holds()
            && self.k_special.iter().all(|(_, v)| v.holds())
    }

    /// `(name, verdict)` pairs in a fixed order.
    pub fn entries(&self) -> Vec<(String, Option<&Verdict>)> {
        let mut v = vec![
            ("kahler".to_string(), Some(&self.kahler)),
            ("skt".to_string(), Some(&self.skt)),
            ("astheno_kahler".to_string(), self.astheno_kahler.as_ref()),
            ("balanced".to_string(), Some(&self.balanced)),
            ("gauduchon".to_string(), Some(&self.gauduchon)),
            ("special".to_string(), Some(&self.special)),
        ];
        for (k, verdict) in &self.k_special {
            v.push((format!("k_special({k})"), Some(verdict)));
        }
        v
    }
}

pub fn classify(m: &MetricForm) -> ConditionReport {
    let n = m.dim();
    ConditionReport {
        kahler: check_kahler(m),
        skt: check_skt(m),
        astheno_kahler: check_astheno(m).ok(),
        balanced: check_balanced(m),
        gauduchon: check_gauduchon(m),
        special: check_special(m),
        k_special: (1..n).map(|k| (k, k_special_verdict(&m.omega, k))).collect(),
    }
}

/// Flat form plus `∂̄α + ∂ᾱ` for a (1,0)-form `α`: real, (1,1), and
/// pluriclosed by construction.
pub fn pluriclosed_perturbation(n: usize, alpha: &BiForm) -> BiForm {
    BiForm::standard_kahler(n) + alpha.delbar() + alpha.conj().del()
}

/// Enumerates `α = c · m · dz^j` over monomials `m` of degree `<= max_degree`
/// and `c ∈ {1, i}`, returning the first `ω = flat + ∂̄α + ∂ᾱ` that is special,
/// not Kähler, and positive definite at the origin.
pub fn search_special_non_kahler(n: usize, max_degree: u32) -> Option<MetricForm> {
    use crate::poly::{Monomial, Var};
    let vars: Vec<Var> = (0..n as u8).flat_map(|i| [Var::Z(i), Var::Zb(i)]).collect();
    let mut monomials = vec![Monomial::one()];
    for _ in 0..max_degree {
        let mut next = monomials.clone();
        for m in &monomials {
            for &v in &vars {
                let mm = m.mul(&Monomial::var(v));
                if !next.contains(&mm) {
                    next.push(mm);
                }
            }
        }
        monomials = next;
    }
    monomials.sort();
    for m in &monomials {
        for j in 0..n {
            for c in [Scalar::from_int(1), Scalar::i()] {
                let alpha = BiForm::dz(n, j).scale_poly(&Poly::term(c, m.clone()));
                let omega = pluriclosed_perturbation(n, &alpha);
                let Ok(metric) = MetricForm::at_origin(omega) else { continue };
                if !check_kahler(&metric).holds() && check_special(&metric).holds() {
                    return Some(metric);
                }
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::form::Factor;
    use crate::poly::Var;

    fn i() -> Poly {
        Poly::constant(Scalar::i())
    }
    fn z(k: u8) -> Poly {
        Poly::var(Var::Z(k))
    }
    fn zb(k: u8) -> Poly {
        Poly::var(Var::Zb(k))
    }

    fn flat(n: usize) -> MetricForm {
        MetricForm::at_origin(BiForm::standard_kahler(n)).unwrap()
    }

    #[test]
    fn flat_metric_satisfies_everything() {
        for n in 1..=4 {
            assert!(classify(&flat(n)).all_hold());
        }
    }

    #[test]
    fn radial_coefficient_in_own_direction_is_closed() {
        // i(1 + z1 zb1) dz1∧dzb1 + i dz2∧dzb2: both derivative terms repeat dz1 or dzb1
        let w = BiForm::from_factors(2, &[Factor::Dz(0), Factor::Dzb(0)], &i() * &(Poly::one() + &z(0) * &zb(0)))
            + BiForm::from_factors(2, &[Factor::Dz(1), Factor::Dzb(1)], i());
        let m = MetricForm::at_origin(w).unwrap();
        assert!(check_kahler(&m).holds());
    }

    #[test]
    fn transverse_coefficient_breaks_kahler() {
        // i(1 + z2 zb2) dz1∧dzb1 + i dz2∧dzb2
        let w = BiForm::from_factors(2, &[Factor::Dz(0), Factor::Dzb(0)], &i() * &(Poly::one() + &z(1) * &zb(1)))
            + BiForm::from_factors(2, &[Factor::Dz(1), Factor::Dzb(1)], i());
        let m = MetricForm::at_origin(w).unwrap();
        let expected = BiForm::from_factors(2, &[Factor::Dz(1), Factor::Dz(0), Factor::Dzb(0)], &i() * &zb(1))
            + BiForm::from_factors(2, &[Factor::Dzb(1), Factor::Dz(0), Factor::Dzb(0)], &i() * &z(1));
        assert_eq!(check_kahler(&m).witness(), Some(&expected));
    }

    #[test]
    fn ddbar_exact_perturbation_is_kahler() {
        let u = BiForm::function(2, &z(0) * &zb(0));
        let w = BiForm::standard_kahler(2) + ddbar(&u).scale(&Scalar::i());
        let m = MetricForm::at_origin(w).unwrap();
        assert!(check_kahler(&m).holds());
    }

    #[test]
    fn k_special_witness() {
        // flat + i z1 zb1 dz2∧dzb2 at k = 1
        let w = BiForm::standard_kahler(2) + BiForm::from_factors(2, &[Factor::Dz(1), Factor::Dzb(1)], &i() * &(&z(0) * &zb(0)));
        let m = MetricForm::at_origin(w).unwrap();
        let v = check_k_special(&m, 1).unwrap();
        let expected = BiForm::from_factors(2, &[Factor::Dz(0), Factor::Dzb(0), Factor::Dz(1), Factor::Dzb(1)], i());
        assert_eq!(v.witness(), Some(&expected));
        // on C^2, 1-special is SKT
        assert_eq!(v, check_skt(&m));
    }

    #[test]
    fn k_out_of_range() {
        assert!(check_k_special(&flat(3), 0).is_err());
        assert!(check_k_special(&flat(3), 3).is_err());
        assert!(check_k_special(&flat(3), 2).is_ok());
    }

    #[test]
    fn astheno_needs_three_dimensions() {
        assert_eq!(check_astheno(&flat(2)), Err(Error::AsthenoDimension(2)));
        assert!(check_astheno(&flat(3)).unwrap().holds());
    }

    #[test]
    fn metric_form_validation() {
        assert!(MetricForm::at_origin(BiForm::dz(2, 0)).is_err());
        let not_real = BiForm::from_factors(1, &[Factor::Dz(0), Factor::Dzb(0)], Poly::one());
        assert_eq!(MetricForm::at_origin(not_real), Err(Error::NotReal));
        let negative = BiForm::standard_kahler(1).scale(&Scalar::from_int(-1));
        assert_eq!(MetricForm::at_origin(negative), Err(Error::NotPositive { index: 0 }));
    }

    #[test]
    fn skt_non_kahler_by_search() {
        let m = search_special_non_kahler(2, 2).expect("a pluriclosed non-Kähler instance exists on C^2");
        let r = classify(&m);
        assert!(!r.kahler.holds());
        assert!(r.skt.holds());
        assert!(r.special.holds());
        assert!(!r.kahler.witness().unwrap().is_zero());
    }
}
