//! Acceptance run: one line per criterion, nonzero exit if any fails.

use std::path::PathBuf;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use specialherm::blowup::{blowup_chart_pullback, positivity_threshold, product_special_check};
use specialherm::deformation::{holomorphy_residual, DeformationFamily};
use specialherm::identities::{run_identity, Identity, Outcome, SuiteConfig};
use specialherm::metrics::{check_kahler, check_special, ddbar, search_special_non_kahler, MetricForm};
use specialherm::{BiForm, Factor, HoloMap, Point, Poly, Scalar, Var, VecForm};

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn suite(id: Identity, cases: usize, max_dim: usize, min_checked: usize, budget: Option<Duration>) -> Check {
    let cfg = SuiteConfig { seed: 0, max_dim, cases, mutation: None };
    let start = Instant::now();
    let out: Outcome = run_identity(id, &cfg);
    let elapsed = start.elapsed();
    if let Some(f) = &out.failure {
        return Err(format!("{} fails at seed {} case {}: {}", id, cfg.seed, f.case, f.detail));
    }
    if out.checked < min_checked {
        return Err(format!("{id}: only {} of {} cases exercised", out.checked, out.cases));
    }
    if let Some(b) = budget {
        if elapsed > b {
            return Err(format!("{id}: {elapsed:.2?} exceeds {b:?}"));
        }
    }
    Ok(format!("{id}: {} cases in {elapsed:.2?}", out.checked))
}

fn dolbeault() -> Check {
    suite(Identity::DolbeaultSquares, 200, 4, 200, Some(Duration::from_secs(10)))
}

fn exp_multiplicative() -> Check {
    suite(Identity::ExpMultiplicative, 100, 4, 100, None)
}

fn extension_substitution() -> Check {
    suite(Identity::ExtensionSubstitution, 100, 4, 100, None)
}

fn interior_composition() -> Check {
    suite(Identity::InteriorComposition, 100, 4, 100, None)
}

fn conjugation_identity() -> Check {
    suite(Identity::ConjugationIdentity, 100, 3, 100, None)
}

fn oracle() -> Check {
    suite(Identity::OracleEquivalence, 100, 3, 100, Some(Duration::from_secs(60)))
}

fn blowup_core() -> Check {
    let a = suite(Identity::BlowupBinomial, 100, 4, 100, None)?;
    let b = suite(Identity::BlowupPreserved, 100, 4, 1, None)?;
    Ok(format!("{a}; {b}"))
}

fn i() -> Scalar {
    Scalar::i()
}

fn worked_values() -> Check {
    let z1 = Poly::var(Var::Z(0));
    let eta = BiForm::from_factors(2, &[Factor::Dz(1), Factor::Dzb(1)], (&z1 * &z1.conj()).scale(&i()));
    let expected =
        BiForm::from_factors(2, &[Factor::Dz(0), Factor::Dzb(0), Factor::Dz(1), Factor::Dzb(1)], Poly::constant(i()));
    if ddbar(&eta) != expected {
        return Err(format!("ddbar witness: got {}", ddbar(&eta)));
    }

    let t = Poly::var(Var::T).with_truncation(2);
    let phi = VecForm::single(1, 1, 0, BiForm::dzb(1, 0).scale_poly(&t)).unwrap();
    let family = DeformationFamily::new(phi, 2).unwrap();
    let f = Poly::var(Var::Z(0)) + &t * &Poly::var(Var::Zb(0));
    let residual = holomorphy_residual(&family, &f);
    if !residual.is_zero() {
        return Err(format!("holomorphy residual: got {residual}"));
    }

    let flat = BiForm::standard_kahler(2);
    let pulled = blowup_chart_pullback(&flat, &HoloMap::blowup_chart(2, 0, 0).unwrap()).unwrap();
    let n0 = positivity_threshold(&pulled, &flat, &[Point::origin(2)], 16).map_err(|e| e.to_string())?;
    if n0 != Some(1) {
        return Err(format!("threshold: got {n0:?}"));
    }
    Ok(format!("{expected}; holomorphy residual 0; N0 = 1"))
}

fn product_factor() -> Check {
    let fa = search_special_non_kahler(2, 2).ok_or("no special non-Kähler instance found")?;
    if check_kahler(&fa).holds() || !check_special(&fa).holds() {
        return Err("search returned an unsuitable factor".into());
    }
    let ob = MetricForm::at_origin(BiForm::standard_kahler(1)).unwrap();
    match product_special_check(&fa, &ob, 2) {
        Ok(v) if v.holds() => Ok(format!("special non-Kähler factor {} times flat C^1", fa.omega())),
        Ok(v) => Err(format!("product fails: {:?}", v.witness().map(ToString::to_string))),
        Err(e) => Err(e.to_string()),
    }
}

fn determinism() -> Check {
    let bin = env!("CARGO_BIN_EXE_specialherm");
    let root = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../manifests");
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let runs: Vec<Vec<String>> = vec![
        vec!["check".into(), root.join("skt_not_kahler.json").display().to_string()],
        vec!["deform".into(), root.join("deform_metric_variation.json").display().to_string()],
        vec!["blowup".into(), root.join("blowup_point.json").display().to_string()],
        vec!["identities".into(), "--seed".into(), "11".into(), "--cases".into(), "10".into()],
    ];
    for args in &runs {
        let mut reports = Vec::new();
        for attempt in 0..2 {
            let path = dir.path().join(format!("{}-{attempt}.json", args[0]));
            let status = Command::new(bin)
                .arg("--quiet")
                .arg("--report")
                .arg(&path)
                .args(args)
                .status()
                .map_err(|e| e.to_string())?;
            if status.code().is_none_or(|c| c == 2 || c == 3) {
                return Err(format!("{} exited with {status}", args[0]));
            }
            reports.push(std::fs::read(&path).map_err(|e| e.to_string())?);
        }
        if reports[0] != reports[1] {
            return Err(format!("{} reports differ", args[0]));
        }
    }
    Ok(format!("{} commands, byte-identical reports", runs.len()))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("dolbeault algebra", dolbeault),
        ("exponential multiplicativity", exp_multiplicative),
        ("extension map as coframe substitution", extension_substitution),
        ("interior composition equals matrix composition", interior_composition),
        ("conjugation identity", conjugation_identity),
        ("first-order residual equals jet oracle", oracle),
        ("blow-up binomial expansion", blowup_core),
        ("worked values", worked_values),
        ("product of special and Kähler", product_factor),
        ("cli determinism", determinism),
    ];
    let mut failed = 0;
    for (k, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail}", k + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {detail}", k + 1);
            }
        }
    }
    println!("{} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
