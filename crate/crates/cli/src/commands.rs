use serde_json::json;
use specialherm::blowup::{
    binomial_expansion_residual, blowup_chart_pullback, positivity_threshold, power_verdicts, BlowupInstance,
};
use specialherm::deformation::{first_order_residual, holomorphy_residual, mc_residual, order1_jet_oracle};
use specialherm::identities::{run_identity, Identity, SuiteConfig};
use specialherm::metrics::{classify, first_ddbar_failure};
use specialherm::Error;

use crate::manifest::{InputError, Manifest};
use crate::report::{vecform_text, Entry, Report, Status};

pub fn check(m: &Manifest, report: &mut Report) {
    let r = classify(&m.metric);
    for (name, verdict) in r.entries() {
        match verdict {
            Some(v) => report.push(Entry::verdict(name, v)),
            None => report.push(Entry {
                name,
                status: Status::NotApplicable,
                witness: None,
                detail: Some("defined for dimension >= 3".into()),
            }),
        }
    }
    report.value("metric", json!(m.metric.omega().to_string()));
    report.notes.push(format!("positivity checked at {} sample point(s)", m.metric.sample_points().len()));
}

pub fn deform(m: &Manifest, report: &mut Report) -> Result<(), InputError> {
    let d = m
        .deformation
        .as_ref()
        .ok_or_else(|| InputError { path: "deformation".into(), message: "section missing".into() })?;
    if d.family.truncation() < 1 {
        let e = Error::TruncationTooLow { required: 1, found: d.family.truncation() };
        return Err(InputError { path: "truncation_order".into(), message: e.to_string() });
    }
    let mc = mc_residual(&d.family);
    if mc.is_zero() {
        report.push(Entry::holds("maurer_cartan"));
    } else {
        report.push(Entry::fails("maurer_cartan", Some(vecform_text(&mc)), None));
    }
    for (i, f) in d.functions.iter().enumerate() {
        report.push(Entry::zero_check(format!("holomorphic[{i}]"), &holomorphy_residual(&d.family, f)));
    }
    let base = &m.metric;
    for &k in &d.powers {
        let residual = first_order_residual(base, &d.family, &d.metric_family, k).expect("validated power");
        let oracle = order1_jet_oracle(base, &d.family, &d.metric_family, k).expect("validated truncation");
        let name = format!("first_order_residual({k})");
        if residual != oracle {
            report.push(Entry {
                name,
                status: Status::Mismatch,
                witness: Some(residual.to_string()),
                detail: Some(format!("oracle: {oracle}")),
            });
        } else {
            report.push(Entry::zero_check(name, &residual).with_detail("matches the jet oracle"));
        }
    }
    report.value("phi_prime", json!(vecform_text(&d.family.first_order())));
    report.value("truncation_order", json!(m.truncation_order));
    Ok(())
}

pub fn blowup(m: &Manifest, report: &mut Report) -> Result<(), InputError> {
    let b = m
        .blowup
        .as_ref()
        .ok_or_else(|| InputError { path: "blowup".into(), message: "section missing".into() })?;
    let input = |path: &str, e: Error| InputError { path: path.into(), message: e.to_string() };
    let f = match &b.chart {
        Some(chart) => {
            let pulled = blowup_chart_pullback(m.metric.omega(), chart).map_err(|e| input("blowup.chart", e))?;
            report.value("chart_pullback", json!(pulled.to_string()));
            pulled
        }
        None => m.metric.omega().clone(),
    };
    let inst = BlowupInstance::new(f.clone(), b.omega.clone(), b.k).map_err(|e| input("blowup.omega", e))?;
    let residual = binomial_expansion_residual(&inst).map_err(|e| input("blowup.omega", e))?;
    report.push(Entry::zero_check("binomial_expansion", &residual));
    match first_ddbar_failure(&f, b.k) {
        None => report.push(Entry::holds(format!("hypothesis_{}_special", b.k))),
        Some((i, w)) => report.push(Entry::fails(
            format!("hypothesis_{}_special", b.k),
            Some(w.to_string()),
            Some(format!("first failing power {i}")),
        )),
    }
    for (i, v) in power_verdicts(&inst, b.k) {
        report.push(Entry::verdict(format!("ddbar_power({i})"), &v));
    }
    let threshold = positivity_threshold(&f, &b.omega, &b.points, b.cap).map_err(|e| input("blowup.points", e))?;
    match threshold {
        Some(n0) => {
            report.push(Entry::holds("positivity").with_detail(format!("N0 = {n0}")));
            report.value("n0", json!(n0));
        }
        None => {
            report.push(Entry::fails("positivity", None, Some(format!("no N <= {} works", b.cap))));
            report.value("n0", serde_json::Value::Null);
        }
    }
    report.notes.push(format!("positivity certified at {} sampled point(s) only", b.points.len()));
    Ok(())
}

pub fn identities(cfg: &SuiteConfig, report: &mut Report) {
    for id in Identity::ALL {
        let out = run_identity(id, cfg);
        let entry = match &out.failure {
            None => Entry::holds(id.name()).with_detail(format!("{} of {} cases checked", out.checked, out.cases)),
            Some(f) => Entry::fails(
                id.name(),
                Some(f.detail.clone()),
                Some(format!("seed {} case {}", cfg.seed, f.case)),
            ),
        };
        report.push(entry);
    }
    report.value("max_dim", json!(cfg.max_dim));
    report.value("cases", json!(cfg.cases));
    if let Some(m) = cfg.mutation {
        report.value("mutation", json!(m.name()));
    }
}
