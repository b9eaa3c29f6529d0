//! Deformations of the complex structure as `t`-jets of a `(0,1)` vector
//! form `φ(t)` with `φ(0) = 0`, the deformed Dolbeault operators, and the
//! first-order obstruction to keeping `∂_t ∂̄_t ω_t^k = 0`.
//!
//! Everything is computed on truncated power series in `t`, so the `o(t)`
//! bookkeeping of the first-order analysis becomes exact truncation.

use crate::error::{Error, Result};
use crate::form::BiForm;
use crate::metrics::{ddbar, MetricForm};
use crate::poly::{Poly, EXACT};
use crate::scalar::Scalar;
use crate::vecform::{
    bracket, contract, contract_conj, endo_compose, endo_compose_conj, exp_contract_conj, extension_map,
    neumann_inverse, simultaneous_contract, CoframeSubstitution, ConjVecForm, EndoField, Side, VecForm,
};

/// `φ(t)` as a truncated jet.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeformationFamily {
    phi: VecForm,
    truncation: u32,
}

impl DeformationFamily {
    pub fn new(phi: VecForm, truncation: u32) -> Result<Self> {
        if phi.q() != 1 {
            return Err(Error::VectorDegree { expected: 1, found: phi.q() });
        }
        if truncation == EXACT {
            return Err(Error::Hypothesis("a deformation family needs a finite truncation order".into()));
        }
        let phi = phi.with_truncation(truncation);
        if !phi.t_coefficient(0).is_zero() {
            return Err(Error::NonzeroAtOrigin);
        }
        Ok(DeformationFamily { phi, truncation })
    }

    /// The trivial family `φ = 0`.
    pub fn trivial(dim: usize, truncation: u32) -> Self {
        DeformationFamily { phi: VecForm::zero(dim, 1), truncation }
    }

    pub fn phi(&self) -> &VecForm {
        &self.phi
    }

    pub fn phibar(&self) -> ConjVecForm {
        self.phi.conj()
    }

    pub fn dim(&self) -> usize {
        self.phi.dim()
    }

    pub fn truncation(&self) -> u32 {
        self.truncation
    }

    /// `φ'(0)`.
    pub fn first_order(&self) -> VecForm {
        self.phi.t_coefficient(1)
    }

    pub fn with_truncation(&self, order: u32) -> Result<Self> {
        DeformationFamily::new(self.phi.clone(), order)
    }

    /// `I - φφ̄`, acting on `dz`.
    pub fn holo_endo(&self) -> EndoField {
        EndoField::identity(self.dim(), Side::Holomorphic)
            .with_truncation(self.truncation)
            .sub(&endo_compose(&self.phi, &self.phibar()))
    }

    /// `I - φ̄φ`, acting on `dzbar`.
    pub fn anti_endo(&self) -> EndoField {
        EndoField::identity(self.dim(), Side::Antiholomorphic)
            .with_truncation(self.truncation)
            .sub(&endo_compose_conj(&self.phibar(), &self.phi))
    }
}

/// `ω(t)` with `ω(0)` the base metric; `ω_t` itself is its image under the
/// extension map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MetricFamily {
    omega_t: BiForm,
    base: MetricForm,
}

impl MetricFamily {
    pub fn new(omega_t: BiForm, base: MetricForm) -> Result<Self> {
        omega_t.check_dim(base.dim())?;
        omega_t.require_pure(1, 1)?;
        if omega_t.t_coefficient(0) != *base.omega() {
            return Err(Error::Hypothesis("omega(t) at t = 0 differs from the base metric".into()));
        }
        Ok(MetricFamily { omega_t, base })
    }

    /// The constant family `ω(t) = ω`.
    pub fn constant(base: MetricForm) -> Self {
        MetricFamily { omega_t: base.omega().clone(), base }
    }

    pub fn omega_t(&self) -> &BiForm {
        &self.omega_t
    }

    pub fn base(&self) -> &MetricForm {
        &self.base
    }
}

/// `∂̄φ - ½[φ,φ]`.
pub fn mc_residual(f: &DeformationFamily) -> VecForm {
    f.phi.delbar() - bracket(&f.phi, &f.phi).scale(&Scalar::from_ratio(1, 2))
}

/// `(∂̄ - φ ⌟ ∂) f`; zero exactly when `f` is holomorphic for the deformed structure.
pub fn holomorphy_residual(f: &DeformationFamily, func: &Poly) -> BiForm {
    let g = BiForm::function(f.dim(), func.clone().with_truncation(f.truncation));
    g.delbar() - contract(&f.phi, &g.del())
}

fn inverse(e: &EndoField) -> EndoField {
    // φ(0) = 0 puts the correction at t-order >= 2 under a finite truncation
    neumann_inverse(e).expect("I - φφ̄ is unipotent for a family with φ(0) = 0")
}

/// `∂̄_t f = e^{ι_φ̄}((I - φ̄φ)^{-1} ⌟ (∂̄ - φ⌟∂) f)` for a function `f`.
pub fn deformed_delbar_function(f: &DeformationFamily, func: &Poly) -> BiForm {
    let inner = holomorphy_residual(f, func);
    let dressed = simultaneous_contract(&inverse(&f.anti_endo()).substitution(), &inner);
    exp_contract_conj(&f.phibar(), &dressed)
}

/// The inner operand `β` of `∂_t(e^{ι_φ|ι_φ̄} α) = e^{ι_φ|ι_φ̄}(β)`:
/// `β = (I - φφ̄)^{-1} ⨝ ([∂̄, ι_φ̄] + ∂)((I - φφ̄) ⨝ α)`.
pub fn deformed_del(f: &DeformationFamily, alpha: &BiForm) -> BiForm {
    let e = f.holo_endo();
    let phibar = f.phibar();
    let a = simultaneous_contract(&e.substitution(), &alpha.with_truncation(f.truncation));
    let commutator = contract_conj(&phibar, &a).delbar() - contract_conj(&phibar, &a.delbar());
    let mid = commutator + a.del();
    simultaneous_contract(&inverse(&e).substitution(), &mid)
}

/// The inner operand of `∂̄_t(e^{ι_φ|ι_φ̄} α)`:
/// `(I - φ̄φ)^{-1} ⨝ ([∂, ι_φ] + ∂̄)((I - φ̄φ) ⨝ α)`.
pub fn deformed_delbar(f: &DeformationFamily, alpha: &BiForm) -> BiForm {
    let e = f.anti_endo();
    let a = simultaneous_contract(&e.substitution(), &alpha.with_truncation(f.truncation));
    let commutator = contract(&f.phi, &a).del() - contract(&f.phi, &a.del());
    let mid = commutator + a.delbar();
    simultaneous_contract(&inverse(&e).substitution(), &mid)
}

fn check_power(n: usize, k: usize) -> Result<()> {
    if k < 1 || k + 1 > n {
        return Err(Error::PowerOutOfRange { k, max: n.saturating_sub(1) });
    }
    Ok(())
}

fn check_shapes(base: &MetricForm, family: &DeformationFamily, mf: &MetricFamily) -> Result<()> {
    if family.dim() != base.dim() {
        return Err(Error::DimensionMismatch { expected: base.dim(), found: family.dim() });
    }
    if mf.base() != base {
        return Err(Error::Hypothesis("metric family is based at a different metric".into()));
    }
    Ok(())
}

/// `-∂(φ'(0) ⌟ ∂ω^k) + ∂̄(φ̄'(0) ⌟ ∂̄ω^k) + ∂∂̄((ω^k)')`, which vanishes when
/// every `ω_t` satisfies `∂_t ∂̄_t ω_t^k = 0`.
pub fn first_order_residual(base: &MetricForm, family: &DeformationFamily, mf: &MetricFamily, k: usize) -> Result<BiForm> {
    check_power(base.dim(), k)?;
    check_shapes(base, family, mf)?;
    let phi1 = family.first_order();
    let w0 = base.omega().power(k);
    let w1 = mf.omega_t().with_truncation(family.truncation.max(1)).power(k).t_derivative_at_zero();
    let holo = contract(&phi1, &w0.del()).del();
    let anti = contract_conj(&phi1.conj(), &w0.delbar()).delbar();
    Ok(anti - holo + ddbar(&w1))
}

/// `X(t) = D_t D̄_t ω(t)^k` where `D_t`, `D̄_t` are [`deformed_del`] and
/// [`deformed_delbar`], so that `∂_t ∂̄_t ω_t^k = e^{ι_φ|ι_φ̄}(X(t))`.
pub fn inner_ddbar_jet(family: &DeformationFamily, mf: &MetricFamily, k: usize) -> BiForm {
    let w = mf.omega_t().with_truncation(family.truncation).power(k);
    deformed_del(family, &deformed_delbar(family, &w))
}

/// The `t^1` coefficient of `X(t)`, computed through the full deformed
/// operators. Since the extension map is an isomorphism on jets,
/// `∂_t ∂̄_t ω_t^k ≡ 0` forces this coefficient to vanish.
pub fn order1_jet_oracle(base: &MetricForm, family: &DeformationFamily, mf: &MetricFamily, k: usize) -> Result<BiForm> {
    if family.truncation < 1 {
        return Err(Error::TruncationTooLow { required: 1, found: family.truncation });
    }
    check_power(base.dim(), k)?;
    check_shapes(base, family, mf)?;
    Ok(inner_ddbar_jet(family, mf, k).t_coefficient(1))
}

/// The `t^1` coefficient of `∂_t ∂̄_t ω_t^k = e^{ι_φ|ι_φ̄}(X(t))` itself.
/// It differs from [`order1_jet_oracle`] by `(φ'(0) + φ̄'(0))`-dressing of
/// `∂∂̄ω^k(0)`, which is zero when the base metric satisfies the condition.
pub fn extended_order1(base: &MetricForm, family: &DeformationFamily, mf: &MetricFamily, k: usize) -> Result<BiForm> {
    if family.truncation < 1 {
        return Err(Error::TruncationTooLow { required: 1, found: family.truncation });
    }
    check_power(base.dim(), k)?;
    check_shapes(base, family, mf)?;
    let x = inner_ddbar_jet(family, mf, k);
    Ok(extension_map(family.phi(), &x).t_coefficient(1))
}

/// `(I + φ + φ̄) ⨝` for the family, the coframe form of the extension map.
pub fn extension_substitution(family: &DeformationFamily) -> CoframeSubstitution {
    CoframeSubstitution::extension(family.phi())
}
