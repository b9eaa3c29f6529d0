//! Local algebra of blow-ups: the expansion of `∂∂̄(F + Nω)^k` in a formal
//! parameter `N`, chart pullbacks, sampled positivity thresholds and the
//! product of a special metric with a Kähler one.

use num_integer::binomial;

use crate::error::{Error, Result};
use crate::form::BiForm;
use crate::hermitian::{is_positive_definite_at, Point};
use crate::holomap::HoloMap;
use crate::metrics::{check_kahler, check_special, ddbar, first_ddbar_failure, MetricForm, Verdict};
use crate::poly::{Poly, Var};
use crate::scalar::Scalar;

/// `F̃ = F + Nω` with `F` a real (1,1)-form, `ω` a real (1,1)-form, and a
/// target power `k`. `F` is typically a chart pullback and so need not be
/// positive anywhere; closedness of `ω` is checked by the operations that
/// depend on it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlowupInstance {
    f: BiForm,
    omega: BiForm,
    k: usize,
}

fn require_real_11(a: &BiForm) -> Result<()> {
    a.require_pure(1, 1)?;
    if !a.is_real() {
        return Err(Error::NotReal);
    }
    Ok(())
}

impl BlowupInstance {
    pub fn new(f: BiForm, omega: BiForm, k: usize) -> Result<Self> {
        omega.check_dim(f.dim())?;
        require_real_11(&f)?;
        require_real_11(&omega)?;
        if k == 0 {
            return Err(Error::PowerOutOfRange { k, max: f.dim().saturating_sub(1) });
        }
        Ok(BlowupInstance { f, omega, k })
    }

    pub fn f(&self) -> &BiForm {
        &self.f
    }

    pub fn omega(&self) -> &BiForm {
        &self.omega
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn dim(&self) -> usize {
        self.f.dim()
    }

    /// `F + Nω` with `N` formal.
    pub fn combined(&self) -> BiForm {
        &self.f + &self.omega.scale_poly(&Poly::var(Var::N))
    }

    fn require_closed(&self) -> Result<()> {
        if self.omega.d().is_zero() {
            Ok(())
        } else {
            Err(Error::NotClosed)
        }
    }
}

/// `C(k,l) N^{k-l} ∂∂̄F^l ∧ ω^{k-l}`.
pub fn expansion_term(b: &BlowupInstance, k: usize, l: usize) -> BiForm {
    let c = Scalar::from_int(binomial(k as i64, l as i64));
    let n_power = Poly::var(Var::N).pow((k - l) as u32);
    ddbar(&b.f.power(l)).wedge(&b.omega.power(k - l)).scale_poly(&n_power.scale(&c))
}

/// `∂∂̄(F + Nω)^k - Σ_l C(k,l) N^{k-l} ∂∂̄F^l ∧ ω^{k-l}` without the
/// closedness check; nonzero in general when `dω ≠ 0`.
pub fn binomial_expansion_residual_unchecked(b: &BlowupInstance) -> BiForm {
    let mut out = ddbar(&b.combined().power(b.k));
    for l in 0..=b.k {
        out = out - expansion_term(b, b.k, l);
    }
    out
}

/// As [`binomial_expansion_residual_unchecked`], requiring `dω = 0`.
pub fn binomial_expansion_residual(b: &BlowupInstance) -> Result<BiForm> {
    b.require_closed()?;
    Ok(binomial_expansion_residual_unchecked(b))
}

/// `∂∂̄(F + Nω)^i` for `i = 1..=max_power`, each with its verdict.
pub fn power_verdicts(b: &BlowupInstance, max_power: usize) -> Vec<(usize, Verdict)> {
    let combined = b.combined();
    let mut power = BiForm::one(b.dim());
    (1..=max_power)
        .map(|i| {
            power = power.wedge(&combined);
            (i, Verdict::from_witness(ddbar(&power)))
        })
        .collect()
}

/// Checks `∂∂̄(F + Nω)^i = 0` identically in `N` for `i = 1..=k`, given
/// that `F` is `k`-special and `ω` is closed.
pub fn k_special_preserved(b: &BlowupInstance) -> Result<Verdict> {
    let n = b.dim();
    if b.k + 1 > n {
        return Err(Error::PowerOutOfRange { k: b.k, max: n.saturating_sub(1) });
    }
    b.require_closed()?;
    if let Some((i, _)) = first_ddbar_failure(&b.f, b.k) {
        return Err(Error::Hypothesis(format!("F is not {}-special: ddbar F^{i} is nonzero", b.k)));
    }
    Ok(power_verdicts(b, b.k)
        .into_iter()
        .find_map(|(_, v)| if v.holds() { None } else { Some(v) })
        .unwrap_or(Verdict::Holds))
}

/// Pullback of `F` along a blow-up chart.
pub fn blowup_chart_pullback(f: &BiForm, chart: &HoloMap) -> Result<BiForm> {
    chart.pullback(f)
}

/// Smallest `N0` in `0..=cap` with `F + N0 ω` positive definite at every
/// point, or `None` when the cap is reached.
pub fn positivity_threshold(f: &BiForm, omega: &BiForm, points: &[Point], cap: u32) -> Result<Option<u32>> {
    omega.check_dim(f.dim())?;
    require_real_11(f)?;
    require_real_11(omega)?;
    if points.is_empty() {
        return Err(Error::EmptyPointSet);
    }
    for p in points {
        if p.dim() != f.dim() {
            return Err(Error::DimensionMismatch { expected: f.dim(), found: p.dim() });
        }
    }
    for n0 in 0..=cap {
        let candidate = f + &omega.scale(&Scalar::from_int(i64::from(n0)));
        let mut ok = true;
        for p in points {
            if !is_positive_definite_at(&candidate, p)? {
                ok = false;
                break;
            }
        }
        if ok {
            return Ok(Some(n0));
        }
    }
    Ok(None)
}

/// `∂∂̄(F_A + ω_B)^i = 0` for `i = 1..=max_power`, with both forms already
/// living on the same coordinates. Their coordinate supports must be disjoint.
pub fn product_check_embedded(fa: &BiForm, ob: &BiForm, max_power: usize) -> Result<Verdict> {
    ob.check_dim(fa.dim())?;
    let shared = fa.coordinate_support().intersection(&ob.coordinate_support()).next().copied();
    if let Some(i) = shared {
        return Err(Error::OverlappingVariables(i + 1));
    }
    Ok(match first_ddbar_failure(&(fa + ob), max_power) {
        None => Verdict::Holds,
        Some((_, w)) => Verdict::Fails { witness: w },
    })
}

/// Places `F_A` on `z^1..z^a` and `ω_B` on `z^{a+1}..z^{a+b}`, then checks
/// `∂∂̄(F_A + ω_B)^i = 0` for `i = 1..=k`, where `k <= a+b-1`.
pub fn product_special_check(fa: &MetricForm, ob: &MetricForm, k: usize) -> Result<Verdict> {
    let (a, bdim) = (fa.dim(), ob.dim());
    let n = a + bdim;
    if n > crate::form::MAX_DIM {
        return Err(Error::DimensionCap(n));
    }
    if k < 1 || k + 1 > n {
        return Err(Error::PowerOutOfRange { k, max: n - 1 });
    }
    if !check_special(fa).holds() {
        return Err(Error::Hypothesis("the first factor is not special".into()));
    }
    if !check_kahler(ob).holds() {
        return Err(Error::NotClosed);
    }
    let left = fa.omega().relabel(n, &|i| i);
    let right = ob.omega().relabel(n, &|i| i + a);
    product_check_embedded(&left, &right, k)
}
