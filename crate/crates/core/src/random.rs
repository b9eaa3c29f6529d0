//! Seeded generators of random polynomials, forms, vector forms, maps and
//! metric families for the property suites.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::form::{Basis, BiForm};
use crate::holomap::HoloMap;
use crate::poly::{Monomial, Poly, Var};
use crate::scalar::Scalar;
use crate::vecform::VecForm;

pub struct Gen {
    rng: ChaCha8Rng,
}

impl Gen {
    pub fn new(seed: u64) -> Self {
        Gen { rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    /// Derives an independent generator for case `case` of suite `stream`.
    pub fn for_case(seed: u64, stream: u64, case: u64) -> Self {
        let mixed = seed
            .wrapping_mul(0x9E37_79B9_7F4A_7C15)
            .wrapping_add(stream.wrapping_mul(0xC2B2_AE3D_27D4_EB4F))
            .wrapping_add(case);
        Gen::new(mixed)
    }

    pub fn range(&mut self, lo: usize, hi_inclusive: usize) -> usize {
        self.rng.gen_range(lo..=hi_inclusive)
    }

    pub fn coin(&mut self) -> bool {
        self.rng.gen_bool(0.5)
    }

    /// Small nonzero Gaussian rational.
    pub fn scalar(&mut self) -> Scalar {
        loop {
            let re: i64 = self.rng.gen_range(-3..=3);
            let im: i64 = if self.rng.gen_bool(0.5) { self.rng.gen_range(-2..=2) } else { 0 };
            let den: i64 = if self.rng.gen_bool(0.25) { 2 } else { 1 };
            let s = Scalar::from_parts((re, den), (im, 1));
            if s != Scalar::from_int(0) {
                return s;
            }
        }
    }

    /// A monomial in `z^1..z^n`, `zbar^1..zbar^n` of total degree at most `max_degree`.
    pub fn monomial(&mut self, n: usize, max_degree: u32, holomorphic_only: bool) -> Monomial {
        let degree = self.rng.gen_range(0..=max_degree);
        let mut pairs = Vec::new();
        for _ in 0..degree {
            let i = self.rng.gen_range(0..n) as u8;
            let v = if holomorphic_only || self.coin() { Var::Z(i) } else { Var::Zb(i) };
            pairs.push((v, 1));
        }
        Monomial::from_pairs(pairs)
    }

    /// Random polynomial with up to `max_terms` terms.
    pub fn poly(&mut self, n: usize, max_degree: u32, max_terms: usize) -> Poly {
        let terms = self.rng.gen_range(1..=max_terms);
        let mut p = Poly::zero();
        for _ in 0..terms {
            let m = self.monomial(n, max_degree, false);
            let c = self.scalar();
            p.add_term(m, &c);
        }
        p
    }

    pub fn holomorphic_poly(&mut self, n: usize, max_degree: u32, max_terms: usize) -> Poly {
        let terms = self.rng.gen_range(1..=max_terms);
        let mut p = Poly::zero();
        for _ in 0..terms {
            let m = self.monomial(n, max_degree, true);
            let c = self.scalar();
            p.add_term(m, &c);
        }
        p
    }

    fn subset(&mut self, n: usize, size: usize) -> Vec<u8> {
        let mut idx: Vec<u8> = (0..n as u8).collect();
        idx.shuffle(&mut self.rng);
        let mut s = idx[..size.min(n)].to_vec();
        s.sort_unstable();
        s
    }

    /// Random form of pure bidegree `(p,q)`.
    pub fn homogeneous(&mut self, n: usize, p: usize, q: usize, max_degree: u32, max_terms: usize) -> BiForm {
        let mut out = BiForm::zero(n);
        if p > n || q > n {
            return out;
        }
        let terms = self.rng.gen_range(1..=max_terms);
        for _ in 0..terms {
            let b = Basis::new(self.subset(n, p), self.subset(n, q)).unwrap();
            let c = self.poly(n, max_degree, 2);
            out.add_term(b, c);
        }
        out
    }

    /// Random form mixing a few bidegrees of total degree at most `max_form_degree`.
    pub fn form(&mut self, n: usize, max_form_degree: usize, max_degree: u32) -> BiForm {
        let pieces = self.rng.gen_range(1..=3);
        let mut out = BiForm::zero(n);
        for _ in 0..pieces {
            let deg = self.rng.gen_range(0..=max_form_degree.min(2 * n));
            let p = self.rng.gen_range(deg.saturating_sub(n)..=deg.min(n));
            out.add_assign_ref(&self.homogeneous(n, p, deg - p, max_degree, 2));
        }
        out
    }

    /// Random `T^{1,0}`-valued `(0,q)`-form.
    pub fn vecform(&mut self, n: usize, q: usize, max_degree: u32) -> VecForm {
        let components = (0..n)
            .map(|_| if self.rng.gen_bool(0.7) { self.homogeneous(n, 0, q, max_degree, 2) } else { BiForm::zero(n) })
            .collect();
        VecForm::new(n, q, components).expect("generated components are (0,q)")
    }

    /// Random vector form with constant coefficients.
    pub fn constant_vecform(&mut self, n: usize, q: usize) -> VecForm {
        self.vecform(n, q, 0)
    }

    /// Random holomorphic polynomial map `C^m -> C^n`.
    pub fn holomap(&mut self, m: usize, n: usize, max_degree: u32) -> HoloMap {
        let comps = (0..n).map(|_| self.holomorphic_poly(m, max_degree, 3)).collect();
        HoloMap::new(m, comps).expect("generated components are holomorphic")
    }

    /// `a + conj(a)` for a random (1,1)-form `a`.
    pub fn real_11(&mut self, n: usize, max_degree: u32) -> BiForm {
        let a = self.homogeneous(n, 1, 1, max_degree, 3);
        &a + &a.conj()
    }

    /// A real (1,1)-form whose coefficients vanish at the origin.
    pub fn real_11_vanishing_at_origin(&mut self, n: usize, max_degree: u32) -> BiForm {
        let a = self.real_11(n, max_degree.max(1));
        a.map_coefficients(|c| Poly::from_terms(c.terms().filter(|(m, _)| m.degree() > 0).map(|(m, s)| (m.clone(), s.clone()))))
    }

    /// Flat Kähler form plus a real perturbation vanishing at the origin:
    /// positive definite at the origin.
    pub fn metric(&mut self, n: usize, max_degree: u32) -> BiForm {
        BiForm::standard_kahler(n) + self.real_11_vanishing_at_origin(n, max_degree)
    }

    /// Real potential `u + conj(u)`.
    pub fn real_potential(&mut self, n: usize, max_degree: u32) -> Poly {
        let u = self.poly(n, max_degree, 3);
        &u + &u.conj()
    }

    /// `i ∂∂̄ u` for a real potential `u`: real, (1,1), d-closed.
    pub fn ddbar_exact(&mut self, n: usize, max_degree: u32) -> BiForm {
        let u = self.real_potential(n, max_degree);
        BiForm::function(n, u).delbar().del().scale(&Scalar::i())
    }

    /// Constant real (1,1)-form plus an `i∂∂̄`-exact term: d-closed.
    pub fn closed_real_11(&mut self, n: usize, max_degree: u32) -> BiForm {
        let c = self.real_11(n, 0);
        c + self.ddbar_exact(n, max_degree)
    }

    /// `φ(t) = t φ1 + t^2 φ2` at truncation `trunc`.
    pub fn family(&mut self, n: usize, max_degree: u32, trunc: u32) -> VecForm {
        let t = Poly::var(Var::T).with_truncation(trunc);
        let phi1 = self.vecform(n, 1, max_degree);
        let phi2 = self.vecform(n, 1, max_degree);
        (phi1.scale_poly(&t) + phi2.scale_poly(&t.pow(2))).with_truncation(trunc)
    }
}
