//! Sparse polynomials over `Q(i)` in `z^1..z^n`, `zbar^1..zbar^n`, the
//! deformation parameter `t` and the formal parameter `N`.
//!
//! `z^i` and `zbar^i` are independent variables, so the Wirtinger derivatives
//! are plain partial derivatives. Every polynomial carries a truncation order
//! for `t`; products and sums keep the smaller of the two orders and drop every
//! term whose `t`-exponent exceeds it.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::scalar::Scalar;

/// Default truncation order for `t`.
pub const DEFAULT_TRUNCATION: u32 = 2;

/// Truncation order that never drops anything.
pub const EXACT: u32 = u32::MAX;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Var {
    /// Holomorphic coordinate, zero-based.
    Z(u8),
    /// Antiholomorphic coordinate, zero-based.
    Zb(u8),
    T,
    N,
}

impl Var {
    pub fn conj(self) -> Var {
        match self {
            Var::Z(i) => Var::Zb(i),
            Var::Zb(i) => Var::Z(i),
            v => v,
        }
    }

    /// Parses `z3`, `zb3`, `t`, `N` (indices one-based).
    pub fn parse(s: &str) -> Option<Var> {
        let idx = |rest: &str| -> Option<u8> {
            let k: u8 = rest.parse().ok()?;
            k.checked_sub(1)
        };
        match s {
            "t" => Some(Var::T),
            "N" => Some(Var::N),
            _ => {
                if let Some(rest) = s.strip_prefix("zb") {
                    idx(rest).map(Var::Zb)
                } else if let Some(rest) = s.strip_prefix('z') {
                    idx(rest).map(Var::Z)
                } else {
                    None
                }
            }
        }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Var::Z(i) => write!(f, "z{}", *i as usize + 1),
            Var::Zb(i) => write!(f, "zb{}", *i as usize + 1),
            Var::T => write!(f, "t"),
            Var::N => write!(f, "N"),
        }
    }
}

/// A power product, stored as `(var, exponent)` pairs sorted by variable
/// with positive exponents.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(Vec<(Var, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(v: Var) -> Self {
        Monomial(vec![(v, 1)])
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (Var, u32)>) -> Self {
        let mut map: BTreeMap<Var, u32> = BTreeMap::new();
        for (v, e) in pairs {
            *map.entry(v).or_insert(0) += e;
        }
        Monomial(map.into_iter().filter(|&(_, e)| e > 0).collect())
    }

    pub fn pairs(&self) -> &[(Var, u32)] {
        &self.0
    }

    pub fn exponent(&self, v: Var) -> u32 {
        self.0.iter().find(|(w, _)| *w == v).map_or(0, |&(_, e)| e)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&(_, e)| e).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            let (a, b) = (self.0[i], other.0[j]);
            match a.0.cmp(&b.0) {
                std::cmp::Ordering::Less => {
                    out.push(a);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(b);
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    out.push((a.0, a.1 + b.1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.0[i..]);
        out.extend_from_slice(&other.0[j..]);
        Monomial(out)
    }

    /// Lowers the exponent of `v` by one; returns the old exponent.
    fn lower(&self, v: Var) -> Option<(u32, Monomial)> {
        let pos = self.0.iter().position(|(w, _)| *w == v)?;
        let e = self.0[pos].1;
        let mut out = self.0.clone();
        if e == 1 {
            out.remove(pos);
        } else {
            out[pos].1 -= 1;
        }
        Some((e, Monomial(out)))
    }

    fn without(&self, v: Var) -> Monomial {
        Monomial(self.0.iter().copied().filter(|(w, _)| *w != v).collect())
    }

    fn conj(&self) -> Monomial {
        Monomial::from_pairs(self.0.iter().map(|&(v, e)| (v.conj(), e)))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, (v, e)) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, "*")?;
            }
            if *e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
pub struct Poly {
    terms: BTreeMap<Monomial, Scalar>,
    trunc: u32,
}

impl PartialEq for Poly {
    /// Equality of values; the truncation orders are not compared.
    fn eq(&self, other: &Poly) -> bool {
        self.terms == other.terms
    }
}

impl Eq for Poly {}

impl Poly {
    pub fn zero() -> Self {
        Poly { terms: BTreeMap::new(), trunc: EXACT }
    }

    pub fn one() -> Self {
        Poly::constant(Scalar::one())
    }

    pub fn constant(c: Scalar) -> Self {
        Poly::term(c, Monomial::one())
    }

    pub fn var(v: Var) -> Self {
        Poly::term(Scalar::one(), Monomial::var(v))
    }

    pub fn term(c: Scalar, m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly { terms, trunc: EXACT }
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, Scalar)>) -> Self {
        let mut p = Poly::zero();
        for (m, c) in terms {
            p.add_term(m, &c);
        }
        p
    }

    pub fn truncation(&self) -> u32 {
        self.trunc
    }

    /// Re-labels the truncation order, dropping terms above it.
    pub fn with_truncation(mut self, order: u32) -> Self {
        self.trunc = order;
        self.terms.retain(|m, _| m.exponent(Var::T) <= order);
        self
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Adds `c * m`, respecting the truncation order.
    pub fn add_term(&mut self, m: Monomial, c: &Scalar) {
        if c.is_zero() || m.exponent(Var::T) > self.trunc {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add_assign_ref(&mut self, other: &Poly) {
        self.trunc = self.trunc.min(other.trunc);
        if self.trunc != EXACT {
            let t = self.trunc;
            self.terms.retain(|m, _| m.exponent(Var::T) <= t);
        }
        for (m, c) in &other.terms {
            self.add_term(m.clone(), c);
        }
    }

    pub fn scale(&self, c: &Scalar) -> Poly {
        if c.is_zero() {
            return Poly { terms: BTreeMap::new(), trunc: self.trunc };
        }
        Poly {
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
            trunc: self.trunc,
        }
    }

    pub fn mul_ref(&self, other: &Poly) -> Poly {
        let mut out = Poly { terms: BTreeMap::new(), trunc: self.trunc.min(other.trunc) };
        for (ma, ca) in &self.terms {
            let ta = ma.exponent(Var::T);
            if ta > out.trunc {
                continue;
            }
            for (mb, cb) in &other.terms {
                if ta + mb.exponent(Var::T) > out.trunc {
                    continue;
                }
                out.add_term(ma.mul(mb), &(ca * cb));
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> Poly {
        let mut acc = Poly::one().with_truncation(self.trunc);
        for _ in 0..k {
            acc = acc.mul_ref(self);
        }
        acc
    }

    pub fn derivative(&self, v: Var) -> Poly {
        let mut out = Poly { terms: BTreeMap::new(), trunc: self.trunc };
        for (m, c) in &self.terms {
            if let Some((e, lowered)) = m.lower(v) {
                out.add_term(lowered, &c.scale_rational(&num_rational::BigRational::from_integer(e.into())));
            }
        }
        out
    }

    /// Complex conjugation: swaps `z^i` with `zbar^i` and conjugates coefficients.
    pub fn conj(&self) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(m, c)| (m.conj(), c.conj())).collect(),
            trunc: self.trunc,
        }
    }

    /// The coefficient of `t^k`, as a `t`-free polynomial.
    pub fn t_coefficient(&self, k: u32) -> Poly {
        self.coefficient_of(Var::T, k)
    }

    /// The coefficient of `v^k`, as a polynomial free of `v`.
    pub fn coefficient_of(&self, v: Var, k: u32) -> Poly {
        let mut out = Poly { terms: BTreeMap::new(), trunc: self.trunc };
        for (m, c) in &self.terms {
            if m.exponent(v) == k {
                out.add_term(m.without(v), c);
            }
        }
        out
    }

    /// Smallest `t`-exponent present, `None` for the zero polynomial.
    pub fn t_order(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.exponent(Var::T)).min()
    }

    pub fn vars(&self) -> impl Iterator<Item = Var> + '_ {
        self.terms.keys().flat_map(|m| m.0.iter().map(|&(v, _)| v))
    }

    pub fn contains_var(&self, pred: impl Fn(Var) -> bool) -> bool {
        self.vars().any(pred)
    }

    /// Substitutes polynomials for variables; variables mapped to `None` stay.
    pub fn substitute(&self, map: &dyn Fn(Var) -> Option<Poly>) -> Poly {
        let mut cache: BTreeMap<(Var, u32), Poly> = BTreeMap::new();
        let mut out = Poly { terms: BTreeMap::new(), trunc: self.trunc };
        for (m, c) in &self.terms {
            let mut acc = Poly::constant(c.clone()).with_truncation(self.trunc);
            let mut kept = Vec::new();
            for &(v, e) in &m.0 {
                match map(v) {
                    Some(img) => {
                        let p = cache.entry((v, e)).or_insert_with(|| img.pow(e)).clone();
                        acc = acc.mul_ref(&p);
                    }
                    None => kept.push((v, e)),
                }
            }
            acc = acc.mul_ref(&Poly::term(Scalar::one(), Monomial(kept)));
            out.add_assign_ref(&acc);
        }
        out
    }

    /// Evaluates at a point with `t = 0`. `N` must be given a value if present.
    pub fn eval(&self, z: &[Scalar], n_value: Option<&Scalar>) -> Option<Scalar> {
        let mut total = Scalar::zero();
        'terms: for (m, c) in &self.terms {
            let mut acc = c.clone();
            for &(v, e) in &m.0 {
                let base = match v {
                    Var::Z(i) => z.get(i as usize)?.clone(),
                    Var::Zb(i) => z.get(i as usize)?.conj(),
                    Var::T => continue 'terms,
                    Var::N => n_value?.clone(),
                };
                for _ in 0..e {
                    acc *= &base;
                }
            }
            total += &acc;
        }
        Some(total)
    }

    /// Total degree in the coordinate variables.
    pub fn coordinate_degree(&self) -> u32 {
        self.terms
            .keys()
            .map(|m| m.0.iter().filter(|(v, _)| matches!(v, Var::Z(_) | Var::Zb(_))).map(|&(_, e)| e).sum())
            .max()
            .unwrap_or(0)
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(mut self, rhs: Poly) -> Poly {
        self.add_assign_ref(&rhs);
        self
    }
}

impl<'a> Add<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        out.add_assign_ref(rhs);
        out
    }
}

impl Sub for Poly {
    type Output = Poly;
    fn sub(mut self, rhs: Poly) -> Poly {
        self.add_assign_ref(&-rhs);
        self
    }
}

impl<'a> Sub<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        out.add_assign_ref(&-rhs);
        out
    }
}

impl Mul for Poly {
    type Output = Poly;
    fn mul(self, rhs: Poly) -> Poly {
        self.mul_ref(&rhs)
    }
}

impl<'a> Mul<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        self.mul_ref(rhs)
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
            trunc: self.trunc,
        }
    }
}

impl From<Scalar> for Poly {
    fn from(c: Scalar) -> Poly {
        Poly::constant(c)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            if m.0.is_empty() {
                write!(f, "{c}")?;
            } else if *c == Scalar::one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{c}*{m}")?;
            }
        }
        Ok(())
    }
}
