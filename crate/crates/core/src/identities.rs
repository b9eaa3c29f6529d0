//! Seeded property suite over the whole calculus. Every identity draws its
//! cases from [`Gen::for_case`], so a failure is reproduced from the suite
//! seed and the case index alone.
//!
//! A [`Mutation`] plants a deliberate error in one identity; the suite is
//! expected to report exactly that identity as failing.

use std::fmt;

use num_integer::binomial;

use crate::blowup::{binomial_expansion_residual, k_special_preserved, BlowupInstance};
use crate::deformation::{first_order_residual, order1_jet_oracle, DeformationFamily, MetricFamily};
use crate::form::{Basis, BiForm};
use crate::metrics::{ddbar, first_ddbar_failure, pluriclosed_perturbation, MetricForm};
use crate::poly::{Poly, Var};
use crate::random::Gen;
use crate::scalar::Scalar;
use crate::vecform::{
    bracket, conjugation_residual, contract, endo_compose, exp_contract, extension_map, interior_compose,
    lie_derivative_01, simultaneous_contract, CoframeSubstitution,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Identity {
    DolbeaultSquares,
    Leibniz,
    ConjugateOperators,
    PullbackCommutes,
    JMultiplicative,
    ExpMultiplicative,
    ExtensionSubstitution,
    InteriorComposition,
    BracketSymmetry,
    ConjugationIdentity,
    OracleEquivalence,
    ResidualReality,
    BlowupBinomial,
    BlowupPreserved,
}

impl Identity {
    pub const ALL: [Identity; 14] = [
        Identity::DolbeaultSquares,
        Identity::Leibniz,
        Identity::ConjugateOperators,
        Identity::PullbackCommutes,
        Identity::JMultiplicative,
        Identity::ExpMultiplicative,
        Identity::ExtensionSubstitution,
        Identity::InteriorComposition,
        Identity::BracketSymmetry,
        Identity::ConjugationIdentity,
        Identity::OracleEquivalence,
        Identity::ResidualReality,
        Identity::BlowupBinomial,
        Identity::BlowupPreserved,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Identity::DolbeaultSquares => "dolbeault_squares",
            Identity::Leibniz => "leibniz",
            Identity::ConjugateOperators => "conjugate_operators",
            Identity::PullbackCommutes => "pullback_commutes",
            Identity::JMultiplicative => "j_multiplicative",
            Identity::ExpMultiplicative => "exp_multiplicative",
            Identity::ExtensionSubstitution => "extension_substitution",
            Identity::InteriorComposition => "interior_composition",
            Identity::BracketSymmetry => "bracket_symmetry",
            Identity::ConjugationIdentity => "conjugation_identity",
            Identity::OracleEquivalence => "oracle_equivalence",
            Identity::ResidualReality => "residual_reality",
            Identity::BlowupBinomial => "blowup_binomial",
            Identity::BlowupPreserved => "blowup_preserved",
        }
    }

    pub fn from_name(s: &str) -> Option<Identity> {
        Identity::ALL.into_iter().find(|i| i.name() == s)
    }

    fn stream(self) -> u64 {
        self as u64 + 1
    }
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Planted errors for checking that the suite notices them.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mutation {
    /// `∂∂̄ - ∂̄∂` in place of `∂∂̄ + ∂̄∂`.
    AnticommutatorSign,
    /// `e^{ι_φ}` on both sides of `∂̄` in the conjugation identity.
    ContractSign,
    /// Drops the `(-1)^{pq}` in the graded symmetry of the bracket.
    BracketSign,
    /// `(I + φ) ⨝` without the conjugate part.
    ExtensionConjugate,
    /// Drops the `∂̄ ι_φ̄ ∂̄` term of the first-order residual.
    OracleAntiTerm,
    /// `C(k,l) + 1` for the binomial coefficients.
    BinomialCoefficient,
}

impl Mutation {
    pub const ALL: [Mutation; 6] = [
        Mutation::AnticommutatorSign,
        Mutation::ContractSign,
        Mutation::BracketSign,
        Mutation::ExtensionConjugate,
        Mutation::OracleAntiTerm,
        Mutation::BinomialCoefficient,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Mutation::AnticommutatorSign => "anticommutator-sign",
            Mutation::ContractSign => "contract-sign",
            Mutation::BracketSign => "bracket-sign",
            Mutation::ExtensionConjugate => "extension-conjugate",
            Mutation::OracleAntiTerm => "oracle-anti-term",
            Mutation::BinomialCoefficient => "binomial-coefficient",
        }
    }

    pub fn from_name(s: &str) -> Option<Mutation> {
        Mutation::ALL.into_iter().find(|m| m.name() == s)
    }

    /// The identity this mutation breaks.
    pub fn target(self) -> Identity {
        match self {
            Mutation::AnticommutatorSign => Identity::DolbeaultSquares,
            Mutation::ContractSign => Identity::ConjugationIdentity,
            Mutation::BracketSign => Identity::BracketSymmetry,
            Mutation::ExtensionConjugate => Identity::ExtensionSubstitution,
            Mutation::OracleAntiTerm => Identity::OracleEquivalence,
            Mutation::BinomialCoefficient => Identity::BlowupBinomial,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteConfig {
    pub seed: u64,
    /// Largest complex dimension drawn; clamped to `1..=4`.
    pub max_dim: usize,
    pub cases: usize,
    pub mutation: Option<Mutation>,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig { seed: 0, max_dim: 4, cases: 100, mutation: None }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Failure {
    pub case: u64,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub identity: Identity,
    /// Cases drawn.
    pub cases: usize,
    /// Cases that exercised the identity; smaller than `cases` when small
    /// dimensions leave nothing to check.
    pub checked: usize,
    pub failure: Option<Failure>,
}

impl Outcome {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

enum Case {
    Vacuous,
    Ok,
    Fail(String),
}

fn compare(lhs: &BiForm, rhs: &BiForm) -> Case {
    if lhs == rhs {
        Case::Ok
    } else {
        Case::Fail(format!("lhs - rhs = {}", lhs.clone() - rhs.clone()))
    }
}

fn zero(label: &str, a: &BiForm) -> Case {
    if a.is_zero() {
        Case::Ok
    } else {
        Case::Fail(format!("{label} = {a}"))
    }
}

fn all(cases: impl IntoIterator<Item = Case>) -> Case {
    let mut any = false;
    for c in cases {
        match c {
            Case::Fail(_) => return c,
            Case::Ok => any = true,
            Case::Vacuous => {}
        }
    }
    if any {
        Case::Ok
    } else {
        Case::Vacuous
    }
}

fn sign(odd: bool) -> Scalar {
    if odd {
        -Scalar::from_int(1)
    } else {
        Scalar::from_int(1)
    }
}

/// Pure-degree random form, so graded signs are well defined.
fn homogeneous_form(g: &mut Gen, n: usize, max_degree: u32) -> (BiForm, usize) {
    let p = g.range(0, n);
    let q = g.range(0, n);
    (g.homogeneous(n, p, q, max_degree, 3), p + q)
}

fn dolbeault_squares(g: &mut Gen, max_dim: usize, m: Option<Mutation>) -> Case {
    let n = g.range(1, max_dim);
    let a = g.form(n, 2 * n, 3);
    let anti = if m == Some(Mutation::AnticommutatorSign) {
        a.delbar().del() - a.del().delbar()
    } else {
        a.delbar().del() + a.del().delbar()
    };
    all([
        zero("d d a", &a.d().d()),
        zero("del del a", &a.del().del()),
        zero("delbar delbar a", &a.delbar().delbar()),
        zero("(del delbar + delbar del) a", &anti),
    ])
}

fn leibniz(g: &mut Gen, max_dim: usize) -> Case {
    let n = g.range(1, max_dim);
    let (a, deg) = homogeneous_form(g, n, 2);
    let (b, _) = homogeneous_form(g, n, 2);
    let s = sign(deg % 2 == 1);
    all([
        compare(&a.wedge(&b).del(), &(a.del().wedge(&b) + a.wedge(&b.del()).scale(&s))),
        compare(&a.wedge(&b).delbar(), &(a.delbar().wedge(&b) + a.wedge(&b.delbar()).scale(&s))),
    ])
}

fn conjugate_operators(g: &mut Gen, max_dim: usize) -> Case {
    let n = g.range(1, max_dim);
    let a = g.form(n, 2 * n, 3);
    all([
        compare(&a.del().conj(), &a.conj().delbar()),
        compare(&a.conj().conj(), &a),
        compare(&a.d().conj(), &a.conj().d()),
    ])
}

fn pullback_commutes(g: &mut Gen, max_dim: usize) -> Case {
    let m = g.range(1, max_dim);
    let n = g.range(1, max_dim);
    let f = g.holomap(m, n, 2);
    let a = g.form(n, 2, 2);
    let pb = |x: &BiForm| f.pullback(x).expect("dimensions match");
    all([
        compare(&pb(&a.del()), &pb(&a).del()),
        compare(&pb(&a.delbar()), &pb(&a).delbar()),
        compare(&pb(&ddbar(&a)), &ddbar(&pb(&a))),
    ])
}

fn j_multiplicative(g: &mut Gen, max_dim: usize) -> Case {
    let n = g.range(1, max_dim);
    let a = g.form(n, 3, 2);
    let b = g.form(n, 3, 2);
    all([
        compare(&a.wedge(&b).j_action(), &a.j_action().wedge(&b.j_action())),
        compare(&a.conj().j_action(), &a.j_action().conj()),
    ])
}

fn exp_multiplicative(g: &mut Gen, max_dim: usize) -> Case {
    let n = g.range(1, max_dim);
    let phi = g.vecform(n, 1, 2);
    let p = g.range(1, n.min(4));
    let mut idx: Vec<u8> = (0..n as u8).collect();
    // random p-subset, kept sorted
    while idx.len() > p {
        let r = g.range(0, idx.len() - 1);
        idx.remove(r);
    }
    let mut product = BiForm::one(n);
    let mut checks = Vec::new();
    for &i in &idx {
        let dzi = BiForm::dz(n, i as usize);
        let image = exp_contract(&phi, &dzi);
        checks.push(compare(&image, &(dzi.clone() + contract(&phi, &dzi))));
        product = product.wedge(&image);
    }
    let monomial = BiForm::term(n, Basis::new(idx, vec![]).unwrap(), Poly::one());
    checks.push(compare(&product, &exp_contract(&phi, &monomial)));
    let a = g.form(n, 3, 1);
    let b = g.form(n, 3, 1);
    checks.push(compare(&exp_contract(&phi, &a.wedge(&b)), &exp_contract(&phi, &a).wedge(&exp_contract(&phi, &b))));
    all(checks)
}

fn extension_substitution(g: &mut Gen, max_dim: usize, m: Option<Mutation>) -> Case {
    let n = g.range(1, max_dim);
    let phi = g.vecform(n, 1, 2);
    let a = g.form(n, 2 * n, 2);
    let s = if m == Some(Mutation::ExtensionConjugate) {
        let mut s = CoframeSubstitution::identity(n);
        for (i, c) in phi.components().iter().enumerate() {
            s = s.with_image(crate::form::Factor::Dz(i as u8), BiForm::dz(n, i) + c.clone());
        }
        s
    } else {
        CoframeSubstitution::extension(&phi)
    };
    compare(&simultaneous_contract(&s, &a), &extension_map(&phi, &a))
}

fn interior_composition(g: &mut Gen, max_dim: usize) -> Case {
    let n = g.range(1, max_dim);
    let phi = g.vecform(n, 1, 2);
    let lhs = interior_compose(&phi, &phi.conj());
    let rhs = endo_compose(&phi, &phi.conj());
    if lhs == rhs {
        Case::Ok
    } else {
        Case::Fail(format!("interior {:?} vs matrix {:?}", lhs.entries(), rhs.entries()))
    }
}

fn bracket_symmetry(g: &mut Gen, max_dim: usize, m: Option<Mutation>) -> Case {
    let n = g.range(1, max_dim);
    let p = g.range(0, n.min(2));
    let q = g.range(0, n.min(2));
    let phi = g.vecform(n, p, 2);
    let psi = g.vecform(n, q, 2);
    let odd = p * q % 2 == 1 && m != Some(Mutation::BracketSign);
    let lhs = bracket(&phi, &psi);
    let rhs = bracket(&psi, &phi).scale(&-sign(odd));
    let diff = lhs - rhs;
    all(diff.components().iter().map(|c| zero("[phi,psi] + (-1)^pq [psi,phi]", c)))
}

fn conjugation_identity(g: &mut Gen, max_dim: usize, m: Option<Mutation>) -> Case {
    let n = g.range(1, max_dim.min(3));
    let phi = g.vecform(n, 1, 2);
    let a = g.form(n, 3, 2);
    if m == Some(Mutation::ContractSign) {
        let lhs = exp_contract(&phi, &exp_contract(&phi, &a).delbar());
        return compare(&lhs, &(a.delbar() - lie_derivative_01(&phi, &a)));
    }
    zero("conjugation residual", &conjugation_residual(&phi, &a))
}

struct DeformationCase {
    base: MetricForm,
    family: DeformationFamily,
    mf: MetricFamily,
    k: usize,
}

fn deformation_case(g: &mut Gen, max_dim: usize) -> Option<DeformationCase> {
    if max_dim < 2 {
        return None;
    }
    let n = g.range(2, max_dim.min(3));
    let k = g.range(1, (n - 1).min(2));
    let base = MetricForm::at_origin(g.metric(n, 2)).expect("flat plus vanishing perturbation");
    let family = DeformationFamily::new(g.family(n, 2, 2), 2).expect("t-divisible family");
    let t = Poly::var(Var::T).with_truncation(2);
    let eta1 = g.real_11(n, 2);
    let eta2 = g.real_11(n, 1);
    let omega_t = base.omega().with_truncation(2) + eta1.scale_poly(&t) + eta2.scale_poly(&t.pow(2));
    let mf = MetricFamily::new(omega_t, base.clone()).expect("family starts at the base");
    Some(DeformationCase { base, family, mf, k })
}

fn oracle_equivalence(g: &mut Gen, max_dim: usize, m: Option<Mutation>) -> Case {
    let Some(c) = deformation_case(g, max_dim) else { return Case::Vacuous };
    let mut direct = first_order_residual(&c.base, &c.family, &c.mf, c.k).expect("k in range");
    if m == Some(Mutation::OracleAntiTerm) {
        let phi1 = c.family.first_order();
        let w0 = c.base.omega().power(c.k);
        direct = direct - crate::vecform::contract_conj(&phi1.conj(), &w0.delbar()).delbar();
    }
    let oracle = order1_jet_oracle(&c.base, &c.family, &c.mf, c.k).expect("truncation 2");
    compare(&direct, &oracle)
}

fn residual_reality(g: &mut Gen, max_dim: usize) -> Case {
    let Some(c) = deformation_case(g, max_dim) else { return Case::Vacuous };
    let r = first_order_residual(&c.base, &c.family, &c.mf, c.k).expect("k in range");
    let w1 = c.mf.omega_t().power(c.k).t_derivative_at_zero();
    let correction = ddbar(&w1);
    compare(&(r.clone() + r.conj()), &(correction.clone() + correction.conj()))
}

/// `F` and `ω` for the blow-up identities. Odd cases use pluriclosed or
/// Kähler `F` so that the hypotheses of the preservation check are met.
fn blowup_case(g: &mut Gen, max_dim: usize, case: u64) -> Option<(BiForm, BiForm, usize)> {
    if max_dim < 2 {
        return None;
    }
    let n = g.range(2, max_dim.min(4));
    let k = g.range(1, (n - 1).min(3));
    let f = match case % 3 {
        0 => g.real_11(n, 2),
        1 => BiForm::standard_kahler(n) + g.closed_real_11(n, 2),
        _ => {
            let alpha = g.homogeneous(n, 1, 0, 2, 2);
            pluriclosed_perturbation(n, &alpha)
        }
    };
    let omega = g.closed_real_11(n, 2);
    Some((f, omega, k))
}

fn blowup_binomial(g: &mut Gen, max_dim: usize, case: u64, m: Option<Mutation>) -> Case {
    let Some((f, omega, k)) = blowup_case(g, max_dim, case) else { return Case::Vacuous };
    let b = BlowupInstance::new(f, omega, k).expect("real (1,1) inputs");
    let residual = binomial_expansion_residual(&b).expect("omega is closed");
    let mut checks = vec![zero("binomial residual", &residual)];
    let full = ddbar(&b.combined().power(k));
    for l in 0..=k {
        let mut c = binomial(k as i64, l as i64);
        if m == Some(Mutation::BinomialCoefficient) {
            c += 1;
        }
        let expected = ddbar(&b.f().power(l)).wedge(&b.omega().power(k - l)).scale(&Scalar::from_int(c));
        checks.push(compare(&full.n_coefficient((k - l) as u32), &expected));
    }
    all(checks)
}

fn blowup_preserved(g: &mut Gen, max_dim: usize, case: u64) -> Case {
    let Some((f, omega, k)) = blowup_case(g, max_dim, case) else { return Case::Vacuous };
    if first_ddbar_failure(&f, k).is_some() {
        return Case::Vacuous;
    }
    let b = BlowupInstance::new(f, omega, k).expect("real (1,1) inputs");
    match k_special_preserved(&b) {
        Ok(v) if v.holds() => Case::Ok,
        Ok(v) => Case::Fail(format!("ddbar of the blown-up power = {}", v.witness().expect("fails"))),
        Err(e) => Case::Fail(format!("precondition: {e}")),
    }
}

fn run_case(id: Identity, g: &mut Gen, max_dim: usize, case: u64, m: Option<Mutation>) -> Case {
    match id {
        Identity::DolbeaultSquares => dolbeault_squares(g, max_dim, m),
        Identity::Leibniz => leibniz(g, max_dim),
        Identity::ConjugateOperators => conjugate_operators(g, max_dim),
        Identity::PullbackCommutes => pullback_commutes(g, max_dim),
        Identity::JMultiplicative => j_multiplicative(g, max_dim),
        Identity::ExpMultiplicative => exp_multiplicative(g, max_dim),
        Identity::ExtensionSubstitution => extension_substitution(g, max_dim, m),
        Identity::InteriorComposition => interior_composition(g, max_dim),
        Identity::BracketSymmetry => bracket_symmetry(g, max_dim, m),
        Identity::ConjugationIdentity => conjugation_identity(g, max_dim, m),
        Identity::OracleEquivalence => oracle_equivalence(g, max_dim, m),
        Identity::ResidualReality => residual_reality(g, max_dim),
        Identity::BlowupBinomial => blowup_binomial(g, max_dim, case, m),
        Identity::BlowupPreserved => blowup_preserved(g, max_dim, case),
    }
}

/// Runs one identity over `cfg.cases` cases, stopping at the first failure.
pub fn run_identity(id: Identity, cfg: &SuiteConfig) -> Outcome {
    let max_dim = cfg.max_dim.clamp(1, 4);
    let mut checked = 0;
    for case in 0..cfg.cases as u64 {
        let mut g = Gen::for_case(cfg.seed, id.stream(), case);
        match run_case(id, &mut g, max_dim, case, cfg.mutation) {
            Case::Vacuous => {}
            Case::Ok => checked += 1,
            Case::Fail(detail) => {
                return Outcome { identity: id, cases: case as usize + 1, checked: checked + 1, failure: Some(Failure { case, detail }) }
            }
        }
    }
    Outcome { identity: id, cases: cfg.cases, checked, failure: None }
}

pub fn run_suite(cfg: &SuiteConfig) -> Vec<Outcome> {
    Identity::ALL.iter().map(|&id| run_identity(id, cfg)).collect()
}

/// Reproduces a single case, for following up on a reported failure.
pub fn rerun_case(id: Identity, cfg: &SuiteConfig, case: u64) -> Option<String> {
    let mut g = Gen::for_case(cfg.seed, id.stream(), case);
    match run_case(id, &mut g, cfg.max_dim.clamp(1, 4), case, cfg.mutation) {
        Case::Fail(d) => Some(d),
        _ => None,
    }
}

