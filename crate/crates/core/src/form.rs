//! Bigraded exterior algebra over the polynomial ring, with the Dolbeault
//! operators acting by Wirtinger differentiation of coefficients.
//!
//! A basis monomial `dz^I ∧ dzbar^J` is stored with holomorphic factors first
//! and each index list strictly increasing; the sign of any reordering is folded
//! into the coefficient.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use crate::error::{Error, Result};
use crate::poly::{Poly, Var};
use crate::scalar::Scalar;

/// Largest supported complex dimension.
pub const MAX_DIM: usize = 6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Factor {
    Dz(u8),
    Dzb(u8),
}

/// Normalized coframe monomial `dz^I ∧ dzbar^J`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Basis {
    holo: Vec<u8>,
    anti: Vec<u8>,
}

impl Ord for Basis {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.holo.cmp(&other.holo))
            .then_with(|| self.anti.cmp(&other.anti))
    }
}

impl PartialOrd for Basis {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sign of sorting a merged index list, `None` if an index repeats.
fn merge_sorted(a: &[u8], b: &[u8]) -> Option<(Vec<u8>, bool)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let mut inversions = 0usize;
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            Ordering::Greater => {
                // b[j] jumps over the remaining a[i..]
                inversions += a.len() - i;
                out.push(b[j]);
                j += 1;
            }
            Ordering::Equal => return None,
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    Some((out, inversions % 2 == 1))
}

impl Basis {
    pub fn empty() -> Self {
        Basis::default()
    }

    /// Normalizes an arbitrary factor sequence. Returns the basis and whether
    /// the reordering is odd, or `None` if a factor repeats.
    pub fn from_factors(factors: &[Factor]) -> Option<(Basis, bool)> {
        let mut f = factors.to_vec();
        let mut odd = false;
        // insertion sort; sequences are short
        for i in 1..f.len() {
            let mut j = i;
            while j > 0 && f[j - 1] > f[j] {
                f.swap(j - 1, j);
                odd = !odd;
                j -= 1;
            }
        }
        if f.windows(2).any(|w| w[0] == w[1]) {
            return None;
        }
        let mut b = Basis::empty();
        for x in f {
            match x {
                Factor::Dz(i) => b.holo.push(i),
                Factor::Dzb(i) => b.anti.push(i),
            }
        }
        Some((b, odd))
    }

    /// Builds a basis from index lists, which must be strictly increasing.
    pub fn new(holo: Vec<u8>, anti: Vec<u8>) -> Option<Basis> {
        let ok = |v: &[u8]| v.windows(2).all(|w| w[0] < w[1]);
        (ok(&holo) && ok(&anti)).then_some(Basis { holo, anti })
    }

    pub fn holo(&self) -> &[u8] {
        &self.holo
    }

    pub fn anti(&self) -> &[u8] {
        &self.anti
    }

    pub fn bidegree(&self) -> (usize, usize) {
        (self.holo.len(), self.anti.len())
    }

    pub fn degree(&self) -> usize {
        self.holo.len() + self.anti.len()
    }

    pub fn factors(&self) -> Vec<Factor> {
        self.holo
            .iter()
            .map(|&i| Factor::Dz(i))
            .chain(self.anti.iter().map(|&j| Factor::Dzb(j)))
            .collect()
    }

    pub fn max_index(&self) -> Option<u8> {
        self.holo.iter().chain(&self.anti).copied().max()
    }

    /// `self ∧ other`, with its sign, or `None` if it vanishes.
    pub fn wedge(&self, other: &Basis) -> Option<(Basis, bool)> {
        // move other's holomorphic block across self's antiholomorphic block
        let cross = self.anti.len() * other.holo.len() % 2 == 1;
        let (holo, s1) = merge_sorted(&self.holo, &other.holo)?;
        let (anti, s2) = merge_sorted(&self.anti, &other.anti)?;
        Some((Basis { holo, anti }, cross ^ s1 ^ s2))
    }

    /// Removes the factor at `pos` in the holomorphic-first ordering.
    pub fn remove(&self, pos: usize) -> Basis {
        let mut b = self.clone();
        if pos < b.holo.len() {
            b.holo.remove(pos);
        } else {
            b.anti.remove(pos - self.holo.len());
        }
        b
    }
}

impl fmt::Display for Basis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .holo
            .iter()
            .map(|i| format!("dz{}", *i as usize + 1))
            .chain(self.anti.iter().map(|j| format!("dzb{}", *j as usize + 1)))
            .collect();
        write!(f, "{}", parts.join("^"))
    }
}

/// A (possibly mixed-degree) complex differential form on a coordinate patch
/// of `C^dim`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BiForm {
    dim: usize,
    terms: BTreeMap<Basis, Poly>,
}

fn signed(p: Poly, negative: bool) -> Poly {
    if negative {
        -p
    } else {
        p
    }
}

impl BiForm {
    pub fn zero(dim: usize) -> Self {
        BiForm { dim, terms: BTreeMap::new() }
    }

    /// The 0-form `f`.
    pub fn function(dim: usize, f: Poly) -> Self {
        BiForm::term(dim, Basis::empty(), f)
    }

    pub fn one(dim: usize) -> Self {
        BiForm::function(dim, Poly::one())
    }

    pub fn term(dim: usize, basis: Basis, coeff: Poly) -> Self {
        let mut out = BiForm::zero(dim);
        out.add_term(basis, coeff);
        out
    }

    /// `coeff * f_1 ∧ ... ∧ f_k` for an arbitrary factor sequence.
    pub fn from_factors(dim: usize, factors: &[Factor], coeff: Poly) -> Self {
        match Basis::from_factors(factors) {
            Some((b, odd)) => BiForm::term(dim, b, signed(coeff, odd)),
            None => BiForm::zero(dim),
        }
    }

    /// `dz^i`, zero-based.
    pub fn dz(dim: usize, i: usize) -> Self {
        BiForm::from_factors(dim, &[Factor::Dz(i as u8)], Poly::one())
    }

    /// `dzbar^i`, zero-based.
    pub fn dzb(dim: usize, i: usize) -> Self {
        BiForm::from_factors(dim, &[Factor::Dzb(i as u8)], Poly::one())
    }

    /// `i Σ dz^j ∧ dzbar^j`, the flat Kähler form.
    pub fn standard_kahler(dim: usize) -> Self {
        let mut out = BiForm::zero(dim);
        for j in 0..dim {
            out.add_term(Basis::new(vec![j as u8], vec![j as u8]).unwrap(), Poly::constant(Scalar::i()));
        }
        out
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Basis, &Poly)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, basis: &Basis) -> Poly {
        self.terms.get(basis).cloned().unwrap_or_else(Poly::zero)
    }

    pub fn add_term(&mut self, basis: Basis, coeff: Poly) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(basis) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                e.get_mut().add_assign_ref(&coeff);
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add_assign_ref(&mut self, other: &BiForm) {
        assert_eq!(self.dim, other.dim, "form dimension mismatch");
        for (b, c) in &other.terms {
            self.add_term(b.clone(), c.clone());
        }
    }

    pub fn check_dim(&self, dim: usize) -> Result<()> {
        if self.dim == dim {
            Ok(())
        } else {
            Err(Error::DimensionMismatch { expected: dim, found: self.dim })
        }
    }

    pub fn map_coefficients(&self, f: impl Fn(&Poly) -> Poly) -> BiForm {
        let mut out = BiForm::zero(self.dim);
        for (b, c) in &self.terms {
            out.add_term(b.clone(), f(c));
        }
        out
    }

    pub fn scale(&self, c: &Scalar) -> BiForm {
        self.map_coefficients(|p| p.scale(c))
    }

    pub fn scale_poly(&self, p: &Poly) -> BiForm {
        self.map_coefficients(|q| q.mul_ref(p))
    }

    /// Exterior product.
    ///
    /// Panics on a dimension mismatch; see [`BiForm::try_wedge`].
    pub fn wedge(&self, other: &BiForm) -> BiForm {
        self.try_wedge(other).expect("wedge of forms with different dimensions")
    }

    pub fn try_wedge(&self, other: &BiForm) -> Result<BiForm> {
        other.check_dim(self.dim)?;
        let mut out = BiForm::zero(self.dim);
        for (ba, ca) in &self.terms {
            for (bb, cb) in &other.terms {
                if let Some((b, odd)) = ba.wedge(bb) {
                    out.add_term(b, signed(ca.mul_ref(cb), odd));
                }
            }
        }
        Ok(out)
    }

    /// k-fold exterior power, `a^0 = 1`.
    pub fn power(&self, k: usize) -> BiForm {
        let mut acc = BiForm::one(self.dim);
        for _ in 0..k {
            acc = acc.wedge(self);
        }
        acc
    }

    /// `∂`: differentiates coefficients in `z^i` and prepends `dz^i`.
    pub fn del(&self) -> BiForm {
        self.dolbeault(true)
    }

    /// `∂̄`: differentiates coefficients in `zbar^i` and prepends `dzbar^i`.
    pub fn delbar(&self) -> BiForm {
        self.dolbeault(false)
    }

    pub fn d(&self) -> BiForm {
        self.del() + self.delbar()
    }

    fn dolbeault(&self, holomorphic: bool) -> BiForm {
        let mut out = BiForm::zero(self.dim);
        for (b, c) in &self.terms {
            for i in 0..self.dim {
                let (var, factor) = if holomorphic {
                    (Var::Z(i as u8), Factor::Dz(i as u8))
                } else {
                    (Var::Zb(i as u8), Factor::Dzb(i as u8))
                };
                let dc = c.derivative(var);
                if dc.is_zero() {
                    continue;
                }
                let single = Basis::from_factors(&[factor]).unwrap().0;
                if let Some((nb, odd)) = single.wedge(b) {
                    out.add_term(nb, signed(dc, odd));
                }
            }
        }
        out
    }

    /// Complex conjugation: `conj(f dz^I ∧ dzbar^J) = conj(f) dzbar^I ∧ dz^J`.
    pub fn conj(&self) -> BiForm {
        let mut out = BiForm::zero(self.dim);
        for (b, c) in &self.terms {
            let odd = b.holo.len() * b.anti.len() % 2 == 1;
            let nb = Basis { holo: b.anti.clone(), anti: b.holo.clone() };
            out.add_term(nb, signed(c.conj(), odd));
        }
        out
    }

    pub fn is_real(&self) -> bool {
        self.conj() == *self
    }

    /// Multiplies each `(p,q)` term by `i^(q-p)`.
    pub fn j_action(&self) -> BiForm {
        let mut out = BiForm::zero(self.dim);
        for (b, c) in &self.terms {
            let (p, q) = b.bidegree();
            out.add_term(b.clone(), c.scale(&Scalar::i_pow(q as i64 - p as i64)));
        }
        out
    }

    /// Distinct bidegrees present. The zero form has none.
    pub fn bidegrees(&self) -> Vec<(usize, usize)> {
        let mut v: Vec<_> = self.terms.keys().map(Basis::bidegree).collect();
        v.sort_unstable();
        v.dedup();
        v
    }

    /// True if every term has bidegree `(p,q)`; the zero form qualifies.
    pub fn is_pure(&self, p: usize, q: usize) -> bool {
        self.terms.keys().all(|b| b.bidegree() == (p, q))
    }

    pub fn require_pure(&self, p: usize, q: usize) -> Result<()> {
        if self.is_pure(p, q) {
            Ok(())
        } else {
            Err(Error::Bidegree { p, q })
        }
    }

    /// Projection onto the `(p,q)` component.
    pub fn component(&self, p: usize, q: usize) -> BiForm {
        BiForm {
            dim: self.dim,
            terms: self.terms.iter().filter(|(b, _)| b.bidegree() == (p, q)).map(|(b, c)| (b.clone(), c.clone())).collect(),
        }
    }

    pub fn t_coefficient(&self, k: u32) -> BiForm {
        self.map_coefficients(|c| c.t_coefficient(k))
    }

    /// Coefficient of `N^k`.
    pub fn n_coefficient(&self, k: u32) -> BiForm {
        self.map_coefficients(|c| c.coefficient_of(Var::N, k))
    }

    /// `∂/∂t` of every coefficient, evaluated at `t = 0`.
    pub fn t_derivative_at_zero(&self) -> BiForm {
        self.t_coefficient(1)
    }

    pub fn with_truncation(&self, order: u32) -> BiForm {
        self.map_coefficients(|c| c.clone().with_truncation(order))
    }

    /// Smallest truncation order carried by a coefficient.
    pub fn truncation(&self) -> u32 {
        self.terms.values().map(Poly::truncation).min().unwrap_or(crate::poly::EXACT)
    }

    /// Smallest `t`-exponent over all coefficients.
    pub fn t_order(&self) -> Option<u32> {
        self.terms.values().filter_map(Poly::t_order).min()
    }

    pub fn contains_var(&self, pred: impl Fn(Var) -> bool + Copy) -> bool {
        self.terms.values().any(|c| c.contains_var(pred))
    }

    /// Largest coordinate index used by a factor or a coefficient variable.
    pub fn max_coordinate(&self) -> Option<usize> {
        let from_basis = self.terms.keys().filter_map(Basis::max_index).map(usize::from);
        let from_coeffs = self.terms.values().flat_map(|c| {
            c.vars()
                .filter_map(|v| match v {
                    Var::Z(i) | Var::Zb(i) => Some(i as usize),
                    _ => None,
                })
                .collect::<Vec<_>>()
        });
        from_basis.chain(from_coeffs).max()
    }

    /// Coordinate indices touched by a factor or a coefficient variable.
    pub fn coordinate_support(&self) -> std::collections::BTreeSet<usize> {
        let mut s = std::collections::BTreeSet::new();
        for (b, c) in &self.terms {
            s.extend(b.holo.iter().chain(&b.anti).map(|&i| i as usize));
            for v in c.vars() {
                if let Var::Z(i) | Var::Zb(i) = v {
                    s.insert(i as usize);
                }
            }
        }
        s
    }

    /// Re-indexes coordinates into a space of dimension `dim`.
    pub fn relabel(&self, dim: usize, map: &dyn Fn(usize) -> usize) -> BiForm {
        let mut out = BiForm::zero(dim);
        for (b, c) in &self.terms {
            let factors: Vec<Factor> = b
                .factors()
                .into_iter()
                .map(|f| match f {
                    Factor::Dz(i) => Factor::Dz(map(i as usize) as u8),
                    Factor::Dzb(i) => Factor::Dzb(map(i as usize) as u8),
                })
                .collect();
            let nc = c.substitute(&|v| match v {
                Var::Z(i) => Some(Poly::var(Var::Z(map(i as usize) as u8))),
                Var::Zb(i) => Some(Poly::var(Var::Zb(map(i as usize) as u8))),
                _ => None,
            });
            out.add_assign_ref(&BiForm::from_factors(dim, &factors, nc));
        }
        out
    }
}

impl Add for BiForm {
    type Output = BiForm;
    fn add(mut self, rhs: BiForm) -> BiForm {
        self.add_assign_ref(&rhs);
        self
    }
}

impl<'a> Add<&'a BiForm> for &'a BiForm {
    type Output = BiForm;
    fn add(self, rhs: &BiForm) -> BiForm {
        let mut out = self.clone();
        out.add_assign_ref(rhs);
        out
    }
}

impl Sub for BiForm {
    type Output = BiForm;
    fn sub(mut self, rhs: BiForm) -> BiForm {
        self.add_assign_ref(&-rhs);
        self
    }
}

impl<'a> Sub<&'a BiForm> for &'a BiForm {
    type Output = BiForm;
    fn sub(self, rhs: &BiForm) -> BiForm {
        let mut out = self.clone();
        out.add_assign_ref(&-rhs);
        out
    }
}

impl Neg for BiForm {
    type Output = BiForm;
    fn neg(self) -> BiForm {
        -&self
    }
}

impl Neg for &BiForm {
    type Output = BiForm;
    fn neg(self) -> BiForm {
        BiForm { dim: self.dim, terms: self.terms.iter().map(|(b, c)| (b.clone(), -c)).collect() }
    }
}

/// Canonical text: terms sorted by (degree, index lists), each printed as
/// `(coefficient) basis`.
impl fmt::Display for BiForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (b, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            if b.degree() == 0 {
                write!(f, "({c})")?;
            } else if *c == Poly::one() {
                write!(f, "{b}")?;
            } else {
                write!(f, "({c}) {b}")?;
            }
        }
        Ok(())
    }
}
