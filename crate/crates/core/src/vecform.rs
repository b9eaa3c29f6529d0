//! `T^{1,0}`-valued `(0,q)`-forms and the operators built from them:
//! contraction, its exponential, the extension map, simultaneous contraction,
//! the bracket, twisted Lie derivatives and coefficient endomorphisms.

use std::ops::{Add, Neg, Sub};

use crate::error::{Error, Result};
use crate::form::{Basis, BiForm, Factor};
use crate::poly::{Poly, Var};
use crate::scalar::Scalar;

/// `φ = Σ_i φ^i ⊗ ∂/∂z^i` with every `φ^i` of bidegree `(0,q)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VecForm {
    dim: usize,
    q: usize,
    components: Vec<BiForm>,
}

/// `φ̄ = Σ_k φ̄^k ⊗ ∂/∂zbar^k` with every `φ̄^k` of bidegree `(q,0)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjVecForm {
    dim: usize,
    q: usize,
    components: Vec<BiForm>,
}

fn check_components(dim: usize, components: &[BiForm], p: usize, q: usize) -> Result<()> {
    if components.len() != dim {
        return Err(Error::DimensionMismatch { expected: dim, found: components.len() });
    }
    for c in components {
        c.check_dim(dim)?;
        c.require_pure(p, q)?;
    }
    Ok(())
}

impl VecForm {
    pub fn new(dim: usize, q: usize, components: Vec<BiForm>) -> Result<Self> {
        check_components(dim, &components, 0, q)?;
        Ok(VecForm { dim, q, components })
    }

    pub fn zero(dim: usize, q: usize) -> Self {
        VecForm { dim, q, components: vec![BiForm::zero(dim); dim] }
    }

    /// `form ⊗ ∂/∂z^target`.
    pub fn single(dim: usize, q: usize, target: usize, form: BiForm) -> Result<Self> {
        let mut components = vec![BiForm::zero(dim); dim];
        components[target] = form;
        VecForm::new(dim, q, components)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn components(&self) -> &[BiForm] {
        &self.components
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(BiForm::is_zero)
    }

    /// Coefficient `φ^i_{kbar}` of `dzbar^k` in `φ^i` (for `q = 1`).
    pub fn entry(&self, i: usize, k: usize) -> Poly {
        self.components[i].coefficient(&Basis::new(vec![], vec![k as u8]).unwrap())
    }

    pub fn conj(&self) -> ConjVecForm {
        ConjVecForm { dim: self.dim, q: self.q, components: self.components.iter().map(BiForm::conj).collect() }
    }

    fn map(&self, q: usize, f: impl Fn(&BiForm) -> BiForm) -> VecForm {
        VecForm { dim: self.dim, q, components: self.components.iter().map(f).collect() }
    }

    /// Component-wise `∂̄`.
    pub fn delbar(&self) -> VecForm {
        self.map(self.q + 1, BiForm::delbar)
    }

    /// `∂_i φ`: differentiates every coefficient by `z^i`.
    pub fn partial(&self, i: usize) -> VecForm {
        self.map(self.q, |c| c.map_coefficients(|p| p.derivative(Var::Z(i as u8))))
    }

    pub fn scale(&self, c: &Scalar) -> VecForm {
        self.map(self.q, |f| f.scale(c))
    }

    pub fn scale_poly(&self, p: &Poly) -> VecForm {
        self.map(self.q, |f| f.scale_poly(p))
    }

    pub fn t_coefficient(&self, k: u32) -> VecForm {
        self.map(self.q, |f| f.t_coefficient(k))
    }

    pub fn with_truncation(&self, order: u32) -> VecForm {
        self.map(self.q, |f| f.with_truncation(order))
    }

    pub fn t_order(&self) -> Option<u32> {
        self.components.iter().filter_map(BiForm::t_order).min()
    }
}

impl ConjVecForm {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn components(&self) -> &[BiForm] {
        &self.components
    }

    /// Coefficient `φ̄^k_l` of `dz^l` in `φ̄^k` (for `q = 1`).
    pub fn entry(&self, k: usize, l: usize) -> Poly {
        self.components[k].coefficient(&Basis::new(vec![l as u8], vec![]).unwrap())
    }

    pub fn conj(&self) -> VecForm {
        VecForm { dim: self.dim, q: self.q, components: self.components.iter().map(BiForm::conj).collect() }
    }
}

impl Add for VecForm {
    type Output = VecForm;
    fn add(self, rhs: VecForm) -> VecForm {
        assert_eq!((self.dim, self.q), (rhs.dim, rhs.q), "vector form shape mismatch");
        VecForm {
            dim: self.dim,
            q: self.q,
            components: self.components.into_iter().zip(rhs.components).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for VecForm {
    type Output = VecForm;
    fn sub(self, rhs: VecForm) -> VecForm {
        self + (-rhs)
    }
}

impl Neg for VecForm {
    type Output = VecForm;
    fn neg(self) -> VecForm {
        self.map(self.q, |c| -c)
    }
}

/// Interior product of the coframe factors selected by `holomorphic`, each
/// replaced by the matching vector-form component placed in front:
/// `Σ_s (-1)^pos(s) comp[idx_s] ∧ (basis without factor s)`.
fn contract_components(dim: usize, components: &[BiForm], holomorphic: bool, a: &BiForm) -> BiForm {
    assert_eq!(dim, a.dim(), "contraction dimension mismatch");
    let mut out = BiForm::zero(dim);
    for (b, c) in a.terms() {
        let (offset, indices) = if holomorphic { (0, b.holo()) } else { (b.holo().len(), b.anti()) };
        for (s, &idx) in indices.iter().enumerate() {
            let comp = &components[idx as usize];
            if comp.is_zero() {
                continue;
            }
            let pos = offset + s;
            let rest = BiForm::term(dim, b.remove(pos), c.clone());
            let piece = comp.wedge(&rest);
            if pos % 2 == 1 {
                out.add_assign_ref(&-piece);
            } else {
                out.add_assign_ref(&piece);
            }
        }
    }
    out
}

/// `ι_φ`: maps `(p,q')` to `(p-1, q'+q)`; zero on forms without `dz` factors.
pub fn contract(phi: &VecForm, a: &BiForm) -> BiForm {
    contract_components(phi.dim, &phi.components, true, a)
}

/// `ι_φ̄`, acting on the `dzbar` factors.
pub fn contract_conj(phibar: &ConjVecForm, a: &BiForm) -> BiForm {
    contract_components(phibar.dim, &phibar.components, false, a)
}

fn factorial(k: usize) -> i64 {
    (1..=k as i64).product()
}

fn exp_with(a: &BiForm, max_steps: usize, step: impl Fn(&BiForm) -> BiForm) -> BiForm {
    let mut out = a.clone();
    let mut cur = a.clone();
    for k in 1..=max_steps {
        cur = step(&cur);
        if cur.is_zero() {
            break;
        }
        out.add_assign_ref(&cur.scale(&Scalar::from_ratio(1, factorial(k))));
    }
    out
}

fn max_holo_degree(a: &BiForm) -> usize {
    a.terms().map(|(b, _)| b.holo().len()).max().unwrap_or(0)
}

fn max_anti_degree(a: &BiForm) -> usize {
    a.terms().map(|(b, _)| b.anti().len()).max().unwrap_or(0)
}

/// `e^{ι_φ} = Σ_k ι_φ^k / k!`; the sum stops once the holomorphic degree is spent.
pub fn exp_contract(phi: &VecForm, a: &BiForm) -> BiForm {
    exp_with(a, max_holo_degree(a), |x| contract(phi, x))
}

/// `e^{ι_φ̄}`.
pub fn exp_contract_conj(phibar: &ConjVecForm, a: &BiForm) -> BiForm {
    exp_with(a, max_anti_degree(a), |x| contract_conj(phibar, x))
}

/// The extension map `e^{ι_φ | ι_φ̄}`: on `f dz^I ∧ dzbar^J` it gives
/// `f e^{ι_φ}(dz^I) ∧ e^{ι_φ̄}(dzbar^J)`.
pub fn extension_map(phi: &VecForm, a: &BiForm) -> BiForm {
    let dim = phi.dim;
    let phibar = phi.conj();
    let mut out = BiForm::zero(dim);
    for (b, c) in a.terms() {
        let holo = BiForm::term(dim, Basis::new(b.holo().to_vec(), vec![]).unwrap(), Poly::one());
        let anti = BiForm::term(dim, Basis::new(vec![], b.anti().to_vec()).unwrap(), c.clone());
        out.add_assign_ref(&exp_contract(phi, &holo).wedge(&exp_contract_conj(&phibar, &anti)));
    }
    out
}

/// Images of `dz^i` and `dzbar^j` under a multiplicative coframe substitution.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoframeSubstitution {
    dim: usize,
    holo_images: Vec<BiForm>,
    anti_images: Vec<BiForm>,
}

impl CoframeSubstitution {
    pub fn new(dim: usize, holo_images: Vec<BiForm>, anti_images: Vec<BiForm>) -> Result<Self> {
        for imgs in [&holo_images, &anti_images] {
            if imgs.len() != dim {
                return Err(Error::DimensionMismatch { expected: dim, found: imgs.len() });
            }
            for f in imgs.iter() {
                f.check_dim(dim)?;
                if f.terms().any(|(b, _)| b.degree() != 1) {
                    return Err(Error::Hypothesis("coframe images must be 1-forms".into()));
                }
            }
        }
        Ok(CoframeSubstitution { dim, holo_images, anti_images })
    }

    pub fn identity(dim: usize) -> Self {
        CoframeSubstitution {
            dim,
            holo_images: (0..dim).map(|i| BiForm::dz(dim, i)).collect(),
            anti_images: (0..dim).map(|i| BiForm::dzb(dim, i)).collect(),
        }
    }

    /// `(I + φ + φ̄)`: `dz^i ↦ dz^i + φ^i`, `dzbar^j ↦ dzbar^j + φ̄^j`.
    pub fn extension(phi: &VecForm) -> Self {
        let dim = phi.dim;
        let phibar = phi.conj();
        CoframeSubstitution {
            dim,
            holo_images: (0..dim).map(|i| BiForm::dz(dim, i) + phi.components[i].clone()).collect(),
            anti_images: (0..dim).map(|j| BiForm::dzb(dim, j) + phibar.components[j].clone()).collect(),
        }
    }

    pub fn holo_images(&self) -> &[BiForm] {
        &self.holo_images
    }

    pub fn anti_images(&self) -> &[BiForm] {
        &self.anti_images
    }

    /// Sets the image of one coframe element.
    pub fn with_image(mut self, factor: Factor, image: BiForm) -> Self {
        match factor {
            Factor::Dz(i) => self.holo_images[i as usize] = image,
            Factor::Dzb(j) => self.anti_images[j as usize] = image,
        }
        self
    }
}

/// `s ⨝ a`: every coframe factor of every term is replaced by its image.
pub fn simultaneous_contract(s: &CoframeSubstitution, a: &BiForm) -> BiForm {
    assert_eq!(s.dim, a.dim(), "substitution dimension mismatch");
    let mut out = BiForm::zero(s.dim);
    for (b, c) in a.terms() {
        let mut acc = BiForm::function(s.dim, c.clone());
        for &i in b.holo() {
            acc = acc.wedge(&s.holo_images[i as usize]);
        }
        for &j in b.anti() {
            acc = acc.wedge(&s.anti_images[j as usize]);
        }
        out.add_assign_ref(&acc);
    }
    out
}

/// `[φ, ψ] = Σ_{i,j} (φ^i ∧ ∂_i ψ^j - (-1)^{pq} ψ^i ∧ ∂_i φ^j) ⊗ ∂/∂z^j`.
pub fn bracket(phi: &VecForm, psi: &VecForm) -> VecForm {
    assert_eq!(phi.dim, psi.dim, "bracket dimension mismatch");
    let dim = phi.dim;
    let sign = if (phi.q * psi.q).is_multiple_of(2) { -Scalar::from_int(1) } else { Scalar::from_int(1) };
    let mut components = vec![BiForm::zero(dim); dim];
    for i in 0..dim {
        let d_psi = psi.partial(i);
        let d_phi = phi.partial(i);
        for (j, out) in components.iter_mut().enumerate() {
            out.add_assign_ref(&phi.components[i].wedge(&d_psi.components[j]));
            out.add_assign_ref(&psi.components[i].wedge(&d_phi.components[j]).scale(&sign));
        }
    }
    VecForm { dim, q: phi.q + psi.q, components }
}

fn parity_sign(q: usize) -> Scalar {
    if q.is_multiple_of(2) {
        Scalar::from_int(1)
    } else {
        Scalar::from_int(-1)
    }
}

/// `L_φ = (-1)^q d ∘ ι_φ + ι_φ ∘ d`.
pub fn lie_derivative(phi: &VecForm, a: &BiForm) -> BiForm {
    contract(phi, a).d().scale(&parity_sign(phi.q)) + contract(phi, &a.d())
}

/// `L^{1,0}_φ = (-1)^q ∂ ∘ ι_φ + ι_φ ∘ ∂`.
pub fn lie_derivative_10(phi: &VecForm, a: &BiForm) -> BiForm {
    contract(phi, a).del().scale(&parity_sign(phi.q)) + contract(phi, &a.del())
}

/// `L^{0,1}_φ = (-1)^q ∂̄ ∘ ι_φ + ι_φ ∘ ∂̄`.
pub fn lie_derivative_01(phi: &VecForm, a: &BiForm) -> BiForm {
    contract(phi, a).delbar().scale(&parity_sign(phi.q)) + contract(phi, &a.delbar())
}

/// `e^{-ι_φ}(d(e^{ι_φ} a)) - (d - L_φ - ι_{[φ,φ]/2})(a)`.
pub fn conjugation_residual(phi: &VecForm, a: &BiForm) -> BiForm {
    let lhs = exp_contract(&-phi.clone(), &exp_contract(phi, a).d());
    let half = bracket(phi, phi).scale(&Scalar::from_ratio(1, 2));
    let rhs = a.d() - lie_derivative(phi, a) - contract(&half, a);
    lhs - rhs
}

/// Which coframe an endomorphism acts on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    /// `E = E^i_l dz^l ⊗ ∂/∂z^i`.
    Holomorphic,
    /// `E = E^k_j dzbar^j ⊗ ∂/∂zbar^k`.
    Antiholomorphic,
}

/// Function-valued endomorphism of one coframe; `entries[r][c]` is the
/// coefficient of coframe element `c` in the image of coframe element `r`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EndoField {
    side: Side,
    entries: Vec<Vec<Poly>>,
}

impl EndoField {
    pub fn new(side: Side, entries: Vec<Vec<Poly>>) -> Result<Self> {
        let n = entries.len();
        if let Some(row) = entries.iter().find(|r| r.len() != n) {
            return Err(Error::DimensionMismatch { expected: n, found: row.len() });
        }
        Ok(EndoField { side, entries })
    }

    pub fn identity(dim: usize, side: Side) -> Self {
        let entries =
            (0..dim).map(|r| (0..dim).map(|c| if r == c { Poly::one() } else { Poly::zero() }).collect()).collect();
        EndoField { side, entries }
    }

    pub fn zero(dim: usize, side: Side) -> Self {
        EndoField { side, entries: vec![vec![Poly::zero(); dim]; dim] }
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn side(&self) -> Side {
        self.side
    }

    pub fn entries(&self) -> &[Vec<Poly>] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().flatten().all(Poly::is_zero)
    }

    fn zip(&self, other: &EndoField, f: impl Fn(&Poly, &Poly) -> Poly) -> EndoField {
        assert_eq!(self.side, other.side, "endomorphisms act on different coframes");
        EndoField {
            side: self.side,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(ra, rb)| ra.iter().zip(rb).map(|(a, b)| f(a, b)).collect())
                .collect(),
        }
    }

    pub fn add(&self, other: &EndoField) -> EndoField {
        self.zip(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &EndoField) -> EndoField {
        self.zip(other, |a, b| a - b)
    }

    /// Matrix product `self · other`.
    pub fn compose(&self, other: &EndoField) -> EndoField {
        assert_eq!(self.side, other.side, "endomorphisms act on different coframes");
        let n = self.dim();
        let mut entries = vec![vec![Poly::zero(); n]; n];
        for (r, row) in entries.iter_mut().enumerate() {
            for (c, cell) in row.iter_mut().enumerate() {
                for k in 0..n {
                    cell.add_assign_ref(&self.entries[r][k].mul_ref(&other.entries[k][c]));
                }
            }
        }
        EndoField { side: self.side, entries }
    }

    /// `E ⨝`: `dz^r ↦ Σ_c E[r][c] dz^c` on its coframe, the identity on the other.
    pub fn substitution(&self) -> CoframeSubstitution {
        let dim = self.dim();
        let images: Vec<BiForm> = (0..dim)
            .map(|r| {
                let mut img = BiForm::zero(dim);
                for c in 0..dim {
                    let unit = match self.side {
                        Side::Holomorphic => BiForm::dz(dim, c),
                        Side::Antiholomorphic => BiForm::dzb(dim, c),
                    };
                    img.add_assign_ref(&unit.scale_poly(&self.entries[r][c]));
                }
                img
            })
            .collect();
        let id = CoframeSubstitution::identity(dim);
        match self.side {
            Side::Holomorphic => CoframeSubstitution { dim, holo_images: images, anti_images: id.anti_images },
            Side::Antiholomorphic => CoframeSubstitution { dim, holo_images: id.holo_images, anti_images: images },
        }
    }

    pub fn with_truncation(&self, order: u32) -> EndoField {
        EndoField {
            side: self.side,
            entries: self.entries.iter().map(|r| r.iter().map(|p| p.clone().with_truncation(order)).collect()).collect(),
        }
    }

    fn truncation(&self) -> u32 {
        self.entries.iter().flatten().map(Poly::truncation).min().unwrap_or(crate::poly::EXACT)
    }
}

/// `φφ̄` with entries `(φφ̄)^i_l = Σ_k φ^i_{kbar} φ̄^k_l`, acting on `dz`.
pub fn endo_compose(phi: &VecForm, phibar: &ConjVecForm) -> EndoField {
    let n = phi.dim;
    let mut entries = vec![vec![Poly::zero(); n]; n];
    for (i, row) in entries.iter_mut().enumerate() {
        for (l, cell) in row.iter_mut().enumerate() {
            for k in 0..n {
                cell.add_assign_ref(&phi.entry(i, k).mul_ref(&phibar.entry(k, l)));
            }
        }
    }
    EndoField { side: Side::Holomorphic, entries }
}

/// `φ̄φ` with entries `(φ̄φ)^k_j = Σ_i φ̄^k_i φ^i_{jbar}`, acting on `dzbar`.
pub fn endo_compose_conj(phibar: &ConjVecForm, phi: &VecForm) -> EndoField {
    let n = phi.dim;
    let mut entries = vec![vec![Poly::zero(); n]; n];
    for (k, row) in entries.iter_mut().enumerate() {
        for (j, cell) in row.iter_mut().enumerate() {
            for i in 0..n {
                cell.add_assign_ref(&phibar.entry(k, i).mul_ref(&phi.entry(i, j)));
            }
        }
    }
    EndoField { side: Side::Antiholomorphic, entries }
}

/// `φ̄ ⌟ φ` computed by applying `ι_φ̄` to each component `φ^i` and reading
/// off the `dz^l` coefficients.
pub fn interior_compose(phi: &VecForm, phibar: &ConjVecForm) -> EndoField {
    let n = phi.dim;
    let entries = phi
        .components
        .iter()
        .map(|comp| {
            let img = contract_conj(phibar, comp);
            (0..n).map(|l| img.coefficient(&Basis::new(vec![l as u8], vec![]).unwrap())).collect()
        })
        .collect();
    EndoField { side: Side::Holomorphic, entries }
}

/// Inverse of `m = I - M` as the geometric series `Σ_k M^k`, exact once
/// truncation in `t` kills the powers of `M`.
pub fn neumann_inverse(m: &EndoField) -> Result<EndoField> {
    let n = m.dim();
    let id = EndoField::identity(n, m.side);
    let corr = id.sub(m);
    if corr.entries.iter().flatten().any(|p| p.t_order() == Some(0)) {
        return Err(Error::NotNilpotent);
    }
    if corr.is_zero() {
        return Ok(id);
    }
    let trunc = corr.truncation();
    if trunc == crate::poly::EXACT {
        return Err(Error::NotNilpotent);
    }
    let mut out = id.with_truncation(trunc);
    let mut power = corr.clone();
    // M^k has t-order >= k, so M^(trunc+1) vanishes
    for _ in 0..=trunc {
        if power.is_zero() {
            break;
        }
        out = out.add(&power);
        power = power.compose(&corr);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Var;

    fn z(i: u8) -> Poly {
        Poly::var(Var::Z(i))
    }
    fn zb(i: u8) -> Poly {
        Poly::var(Var::Zb(i))
    }
    fn t() -> Poly {
        Poly::var(Var::T).with_truncation(2)
    }

    /// `coeff dzbar^k ⊗ ∂/∂z^target`
    fn simple(dim: usize, k: usize, target: usize, coeff: Poly) -> VecForm {
        VecForm::single(dim, 1, target, BiForm::dzb(dim, k).scale_poly(&coeff)).unwrap()
    }

    fn ff(dim: usize, f: &[Factor]) -> BiForm {
        BiForm::from_factors(dim, f, Poly::one())
    }

    #[test]
    fn contract_replaces_dz() {
        let phi = simple(2, 0, 1, Poly::one());
        assert_eq!(contract(&phi, &BiForm::dz(2, 1)), BiForm::dzb(2, 0));
        let a = ff(2, &[Factor::Dz(1), Factor::Dzb(1)]);
        assert_eq!(contract(&phi, &a), ff(2, &[Factor::Dzb(0), Factor::Dzb(1)]));
        assert!(contract(&phi, &BiForm::dzb(2, 0)).is_zero());
    }

    #[test]
    fn exp_contract_examples() {
        let phi = simple(2, 0, 0, z(1)) + simple(2, 1, 1, zb(0));
        for i in 0..2 {
            let dz = BiForm::dz(2, i);
            assert_eq!(exp_contract(&phi, &dz), &dz + &contract(&phi, &dz));
        }
        let f = BiForm::function(2, &z(0) * &zb(1));
        assert_eq!(exp_contract(&phi, &f), f);
        let (a, b) = (BiForm::dz(2, 0), BiForm::dz(2, 1));
        let (ia, ib) = (contract(&phi, &a), contract(&phi, &b));
        let expected = a.wedge(&b) + ia.wedge(&b) + a.wedge(&ib) + ia.wedge(&ib);
        assert_eq!(exp_contract(&phi, &a.wedge(&b)), expected);
    }

    #[test]
    fn simultaneous_contract_examples() {
        let a = ff(2, &[Factor::Dz(0), Factor::Dzb(1)]).scale_poly(&z(0));
        assert_eq!(simultaneous_contract(&CoframeSubstitution::identity(2), &a), a);
        let kill = CoframeSubstitution::identity(2).with_image(Factor::Dz(0), BiForm::zero(2));
        assert!(simultaneous_contract(&kill, &ff(2, &[Factor::Dz(0), Factor::Dzb(0)])).is_zero());
    }

    #[test]
    fn extension_map_examples() {
        let w = BiForm::standard_kahler(2);
        assert_eq!(extension_map(&VecForm::zero(2, 1), &w), w);

        let phi = simple(1, 0, 0, t());
        let w1 = ff(1, &[Factor::Dz(0), Factor::Dzb(0)]).scale(&Scalar::i()).with_truncation(2);
        let left = BiForm::dz(1, 0) + BiForm::dzb(1, 0).scale_poly(&t());
        let right = BiForm::dzb(1, 0) + BiForm::dz(1, 0).scale_poly(&t());
        let expected = left.wedge(&right).scale(&Scalar::i());
        assert_eq!(extension_map(&phi, &w1), expected);
        // (1 - t^2) i dz ∧ dzb
        let direct = w1.scale_poly(&(Poly::one() - t().pow(2)));
        assert_eq!(expected, direct);
        assert_eq!(simultaneous_contract(&CoframeSubstitution::extension(&phi), &w1), expected);
    }

    #[test]
    fn bracket_examples() {
        let c1 = simple(2, 0, 1, Poly::one());
        let c2 = simple(2, 1, 0, Poly::constant(Scalar::from_int(3)));
        assert!(bracket(&c1, &c2).is_zero());

        let phi = simple(2, 0, 1, z(0));
        let psi = simple(2, 1, 0, Poly::one());
        let expected = VecForm::single(2, 2, 1, -ff(2, &[Factor::Dzb(0), Factor::Dzb(1)])).unwrap();
        assert_eq!(bracket(&phi, &psi), expected);

        let rho = simple(2, 0, 0, zb(0));
        assert!(bracket(&rho, &rho).is_zero());
    }

    #[test]
    fn lie_derivative_examples() {
        let phi = simple(2, 0, 1, Poly::constant(Scalar::from_int(2)));
        let a = ff(2, &[Factor::Dz(1), Factor::Dzb(0)]).scale(&Scalar::i());
        assert!(lie_derivative_10(&phi, &a).is_zero());

        // phi = dzb1 ⊗ ∂_{z1}, a = zb1 dz1:
        // ι_φ a = zb1 dzb1, ∂̄ of it is 0; ∂̄a = -dz1 ∧ dzb1 and ι_φ of it is -dzb1 ∧ dzb1 = 0
        let phi = simple(1, 0, 0, Poly::one());
        let a = BiForm::dz(1, 0).scale_poly(&zb(0));
        assert!(lie_derivative_01(&phi, &a).is_zero());

        // a nonzero instance: phi = z2 dzb1 ⊗ ∂_{z1}, a = zb2 dz1 in C^2
        // ι_φ a = z2 zb2 dzb1; -∂̄(ι_φ a) = -z2 dzb2 ∧ dzb1 = z2 dzb1 ∧ dzb2
        // ∂̄a = dzb2 ∧ dz1 = -dz1 ∧ dzb2; ι_φ(∂̄a) = -z2 dzb1 ∧ dzb2
        let phi = simple(2, 0, 0, z(1));
        let a = BiForm::dz(2, 0).scale_poly(&zb(1));
        assert!(lie_derivative_01(&phi, &a).is_zero());
        let l10 = lie_derivative_10(&phi, &a);
        // -∂(z2 zb2 dzb1) = -zb2 dz2 ∧ dzb1; ι_φ(∂a) = 0 since ∂a = 0
        assert_eq!(l10, ff(2, &[Factor::Dz(1), Factor::Dzb(0)]).scale_poly(&-zb(1)));
        assert_eq!(lie_derivative(&phi, &a), l10 + lie_derivative_01(&phi, &a));
    }

    #[test]
    fn endo_compose_examples() {
        let phi = simple(2, 0, 0, Poly::one());
        let e = endo_compose(&phi, &phi.conj());
        let mut expected = EndoField::zero(2, Side::Holomorphic);
        expected.entries[0][0] = Poly::one();
        assert_eq!(e, expected);
        assert_eq!(interior_compose(&phi, &phi.conj()), expected);

        let phi = simple(2, 1, 0, Poly::one());
        assert!(endo_compose(&phi, &phi.conj()).is_zero());
        assert!(endo_compose(&VecForm::zero(2, 1), &VecForm::zero(2, 1).conj()).is_zero());
    }

    #[test]
    fn neumann_examples() {
        let id = EndoField::identity(2, Side::Holomorphic);
        assert_eq!(neumann_inverse(&id).unwrap(), id);

        let mut m = EndoField::zero(2, Side::Holomorphic);
        m.entries[0][0] = t();
        let inv = neumann_inverse(&id.sub(&m)).unwrap();
        let mut expected = EndoField::identity(2, Side::Holomorphic);
        expected.entries[0][0] = Poly::one() + t() + t().pow(2);
        assert_eq!(inv, expected);
        assert_eq!(id.sub(&m).compose(&inv).with_truncation(2), id);

        let mut bad = EndoField::zero(2, Side::Holomorphic);
        bad.entries[1][0] = Poly::one();
        assert_eq!(neumann_inverse(&id.sub(&bad)), Err(Error::NotNilpotent));
    }

    #[test]
    fn neumann_of_first_order_family() {
        // φ = t φ1 gives φφ̄ = t^2 φ1φ̄1, so the inverse is I + t^2 φ1φ̄1
        let phi1 = simple(2, 0, 0, Poly::one()) + simple(2, 1, 0, z(1));
        let phi = phi1.scale_poly(&t());
        let pp = endo_compose(&phi, &phi.conj());
        let id = EndoField::identity(2, Side::Holomorphic);
        let inv = neumann_inverse(&id.sub(&pp)).unwrap();
        let p1 = endo_compose(&phi1, &phi1.conj());
        let t2 = EndoField::identity(2, Side::Holomorphic)
            .compose(&EndoField::new(Side::Holomorphic, vec![vec![t().pow(2), Poly::zero()], vec![Poly::zero(), t().pow(2)]]).unwrap());
        assert_eq!(inv, id.add(&t2.compose(&p1)));
    }

    #[test]
    fn conjugation_residual_vanishes_for_zero_phi() {
        let a = ff(2, &[Factor::Dz(0), Factor::Dzb(1)]).scale_poly(&(&z(1) * &zb(0)));
        assert!(conjugation_residual(&VecForm::zero(2, 1), &a).is_zero());
    }
}
