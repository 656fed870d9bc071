//! One function per subcommand; each returns a report or a failure.

use std::fmt::Write as _;
use std::str::FromStr;

use jastrow_core::algebra::{
    build_invariant, homogeneous_hamiltonian, inverse_two_m, three_body_coeff,
    verify_effective_one_body, verify_integrability, Laurent, TERM_BUDGET,
};
use jastrow_core::lattice::{
    check_projector_axioms, check_supersymmetric_lemma, discretize_hamiltonian, energy_convergence,
    grid_for, Grid, LatticeRep, StencilOrder,
};
use jastrow_core::verify::{
    cusp_check, default_min_sep, default_sampling, local_energy_report, sample_configs,
};
use jastrow_core::zoo::catalog;
use jastrow_core::{zoo_model, ModelSpec, PhysicalConstants, TermKind, ZOO};
use serde_json::json;

use crate::config::{parse_list, parse_params, RunConfig};
use crate::report::{write_atomic, Report};
use crate::Failure;

fn model(c: &RunConfig, default_n: usize) -> Result<ModelSpec, Failure> {
    let name = c
        .model
        .as_deref()
        .ok_or_else(|| Failure::invalid("--model is required"))?;
    let mut params = parse_params(c.params.as_deref())?;
    if let Some(z) = c.zeta {
        params.insert("zeta".into(), z as f64);
    }
    Ok(zoo_model(
        name,
        &params,
        c.n.unwrap_or(default_n),
        PhysicalConstants::default(),
    )?)
}

fn zeta(c: &RunConfig) -> Result<jastrow_core::Statistics, Failure> {
    Ok(jastrow_core::Statistics::from_sign(c.zeta.unwrap_or(1))?)
}

pub fn zoo_list(c: &RunConfig) -> Result<Report, Failure> {
    let n = c.n.unwrap_or(3);
    let filter = c.geometry.as_deref();
    if let Some(g) = filter {
        if g != "line" && g != "ring" {
            return Err(Failure::invalid(format!(
                "geometry must be line or ring, got '{g}'"
            )));
        }
    }
    let defaults = catalog(n, PhysicalConstants::default())?;
    let mut rows = Vec::new();
    let mut csv = String::from("name,geometry,e0_formula,e0_default,citation\n");
    let mut report_lines = Vec::new();
    for (e, d) in ZOO.iter().zip(defaults) {
        if filter.is_some_and(|g| g != e.geometry) {
            continue;
        }
        let schema: Vec<String> = e
            .params
            .iter()
            .map(|p| format!("{}={}", p.name, p.default))
            .collect();
        report_lines.push(format!(
            "{:<26} {:<5} [{}]  E0 = {}  ({})",
            e.name,
            e.geometry,
            schema.join(", "),
            e.e0,
            e.citation
        ));
        let _ = writeln!(
            csv,
            "{},{},\"{}\",{},\"{}\"",
            e.name,
            e.geometry,
            e.e0,
            d.e0.map(|v| format!("{v:e}")).unwrap_or_default(),
            e.citation
        );
        rows.push(json!({ "entry": e, "defaults": d }));
    }
    let count = rows.len();
    let mut r = Report::new("zoo list", true, json!({ "N": n, "models": rows })).with_csv(csv);
    r.summary = report_lines;
    Ok(r.line(format!("{count} models")))
}

pub fn zoo_show(c: &RunConfig) -> Result<Report, Failure> {
    let m = model(c, 3)?;
    let text = m.printout();
    let mut r = Report::new(
        "zoo show",
        true,
        json!({ "model": m.catalog_entry(), "printout": text }),
    );
    r.summary = text.lines().map(String::from).collect();
    Ok(r)
}

pub fn verify_local_energy(c: &RunConfig) -> Result<Report, Failure> {
    let mut m = model(c, 3)?;
    if let Some(t) = &c.drop_term {
        m = m.drop_term(TermKind::from_str(t)?)?;
    }
    let samples = c.samples.unwrap_or(1000);
    let seed = c.seed.unwrap_or(0);
    let configs = sample_configs(&m, samples, seed, default_min_sep(&m), default_sampling(&m))?;
    let r = local_energy_report(&m, &configs, seed)?;
    let line = format!(
        "{} N={}: mean {:.12} (E0 {}), variance {:.3e}, {} samples, seed {}",
        r.model,
        r.n,
        r.mean,
        r.e0_expected
            .map(|e| format!("{e:.12}"))
            .unwrap_or_else(|| "unknown".into()),
        r.variance,
        r.samples,
        seed
    );
    let csv = r.to_csv(&configs);
    Ok(Report::new("verify local-energy", r.pass, &r)
        .line(line)
        .with_csv(csv))
}

pub fn verify_cusp(c: &RunConfig) -> Result<Report, Failure> {
    let m = model(c, 2)?;
    let r = cusp_check(&m)?;
    let line = format!(
        "{} {} cusp: jump {} required {} (error {:.2e})",
        r.model, r.kind, r.jump, r.required, r.error
    );
    Ok(Report::new("verify cusp", r.pass, &r).line(line))
}

fn family(c: &RunConfig) -> Result<Laurent, Failure> {
    Ok(Laurent::family(c.family.as_deref().unwrap_or("rational"))?)
}

fn trap(c: &RunConfig) -> Result<Option<Laurent>, Failure> {
    match c.trap.as_deref() {
        None | Some("none") => Ok(None),
        Some("harmonic") => Ok(Some(Laurent::harmonic())),
        Some(t) => Err(Failure::invalid(format!(
            "trap must be none or harmonic, got '{t}'"
        ))),
    }
}

fn order_pairs(s: &str) -> Result<Vec<(u32, u32)>, Failure> {
    s.split(';')
        .map(|p| match parse_list::<u32>("orders", p)?.as_slice() {
            &[a, b] if a >= 1 && b >= 1 => Ok((a, b)),
            _ => Err(Failure::invalid(format!(
                "orders: expected two positive integers, got '{p}'"
            ))),
        })
        .collect()
}

pub fn algebra_commute(c: &RunConfig) -> Result<Report, Failure> {
    let v = family(c)?;
    let n = c.n.unwrap_or(3);
    let orders = order_pairs(c.orders.as_deref().unwrap_or("2,3"))?;
    let trap = trap(c)?;
    let r = verify_integrability(
        &v,
        n,
        &orders,
        trap.as_ref(),
        c.budget.unwrap_or(TERM_BUDGET),
    )?;
    let sym = if r.trapped { "h" } else { "I" };
    let mut rep = Report::new("algebra commute", r.pass, &r);
    let mut csv = String::from("family,N,trapped,a,b,terms_a,terms_b,terms_commutator,zero\n");
    for k in &r.checks {
        let (a, b) = k.orders;
        let value = if k.zero {
            "0 (exact)".to_string()
        } else {
            format!("nonzero ({} terms)", k.terms_commutator)
        };
        rep = rep.line(format!(
            "[{sym}{a},{sym}{b}] {} N={n}: {value}; |{sym}{a}| = {} terms, |{sym}{b}| = {} terms",
            r.family, k.terms_a, k.terms_b
        ));
        let _ = writeln!(
            csv,
            "{},{n},{},{a},{b},{},{},{},{}",
            r.family, r.trapped, k.terms_a, k.terms_b, k.terms_commutator, k.zero
        );
    }
    Ok(rep.with_csv(csv))
}

pub fn algebra_project_i2(c: &RunConfig) -> Result<Report, Failure> {
    let v = family(c)?;
    let n = c.n.unwrap_or(3);
    if n > 4 {
        return Err(jastrow_core::Error::BudgetExceeded {
            terms: n,
            budget: 4,
        }
        .into());
    }
    let zetas = match c.zeta {
        Some(z) => vec![zeta(c).map(|_| z as i64)?],
        None => vec![1, -1],
    };
    let i2 = build_invariant(2, &v, n, None)?;
    let mut pass = true;
    let mut out = Vec::new();
    let mut rep_lines = Vec::new();
    for z in zetas {
        let projected = i2.project(z).left_mul(&inverse_two_m(n));
        let expected = homogeneous_hamiltonian(&v, n, z);
        let matches = projected == expected;
        pass &= matches;
        rep_lines.push(format!(
            "zeta = {z:+}: P I2 P / 2m = {}",
            projected.render()
        ));
        rep_lines.push(format!("  matches the homogeneous Hamiltonian: {matches}"));
        out.push(json!({ "zeta": z, "hamiltonian": projected.to_json(), "rendered": projected.render(), "matches": matches }));
    }
    let v123 = if n >= 3 {
        Some(three_body_coeff(&v, n, 0, 1, 2).render())
    } else {
        None
    };
    if let Some(t) = &v123 {
        rep_lines.push(format!("three-body V_123 = {t}"));
    }
    let mut r = Report::new(
        "algebra project-i2",
        pass,
        json!({ "family": v.name, "N": n, "projections": out, "three_body": v123 }),
    );
    r.summary = rep_lines;
    Ok(r)
}

pub fn algebra_rules(c: &RunConfig) -> Result<Report, Failure> {
    let v = family(c)?;
    let n = c.n.unwrap_or(3);
    if n > 4 {
        return Err(jastrow_core::Error::BudgetExceeded {
            terms: n,
            budget: 4,
        }
        .into());
    }
    let checks = verify_effective_one_body(&v, n)?;
    let pass = checks.iter().all(|k| k.holds);
    let held = checks.iter().filter(|k| k.holds).count();
    Ok(Report::new(
        "algebra rules",
        pass,
        json!({ "family": v.name, "N": n, "checks": checks }),
    )
    .line(format!(
        "{} N={n}: {held}/{} exchange rules hold",
        v.name,
        checks.len()
    )))
}

fn stencil(c: &RunConfig) -> Result<StencilOrder, Failure> {
    Ok(StencilOrder::from_int(c.order.unwrap_or(2))?)
}

pub fn lattice_axioms(c: &RunConfig) -> Result<Report, Failure> {
    let sites: usize = match &c.sites {
        Some(s) => s
            .trim()
            .parse()
            .map_err(|_| Failure::invalid(format!("sites: expected one integer, got '{s}'")))?,
        None => 6,
    };
    let grid = match c.boundary.as_deref().unwrap_or("periodic") {
        "periodic" => Grid::periodic(sites, c.length.unwrap_or(3.0))?,
        "box" => Grid::boxed(sites, c.half_width.unwrap_or(1.5))?,
        b => {
            return Err(Failure::invalid(format!(
                "boundary must be periodic or box, got '{b}'"
            )))
        }
    };
    let n = c.n.unwrap_or(3);
    let rep = LatticeRep::build(grid, n, zeta(c)?, stencil(c)?)?;
    let axioms = check_projector_axioms(&rep);
    let lemma = check_supersymmetric_lemma(&rep);
    let mut r = Report::new(
        "lattice axioms",
        axioms.pass && lemma.pass,
        json!({ "axioms": axioms, "lemma": lemma }),
    );
    let mut csv = String::from("group,identity,cases,defect,tol,pass\n");
    for (group, checks) in [("axioms", &axioms.checks), ("lemma", &lemma.checks)] {
        for k in checks {
            r = r.line(format!(
                "{:<5} {:<42} {:>4} cases  defect {:.2e}",
                if k.pass { "ok" } else { "FAIL" },
                k.name,
                k.cases,
                k.defect
            ));
            let _ = writeln!(
                csv,
                "{group},\"{}\",{},{:e},{:e},{}",
                k.name, k.cases, k.defect, k.tol, k.pass
            );
        }
    }
    Ok(r.line(format!(
        "negative control ||P x_1 (1-P)|| = {:.3e}",
        axioms.negative_control
    ))
    .line(format!(
        "repeated-index tuple defect (not a lemma case) = {:.3e}",
        lemma.repeated_index_defect
    ))
    .line(format!("L_s = {sites}, N = {n}, dimension {}", rep.dim()))
    .with_csv(csv))
}

pub fn lattice_overlap(c: &RunConfig) -> Result<Report, Failure> {
    let m = model(c, 2)?;
    let sites: Vec<usize> = parse_list("sites", c.sites.as_deref().unwrap_or("24,32,48"))?;
    let half_width = c.half_width.unwrap_or(6.0);
    let order = stencil(c)?;
    let min_overlap = c.min_overlap.unwrap_or(0.999);
    let conv = energy_convergence(&m, half_width, &sites, m.statistics, order)?;
    let last = conv
        .points
        .last()
        .ok_or_else(|| Failure::invalid("sites: empty list"))?;
    let pass = last.overlap >= min_overlap;
    if let Some(path) = &c.coo {
        let grid = grid_for(&m, last.sites, half_width)?;
        let h = discretize_hamiltonian(&m, &grid, order)?;
        let mut buf = Vec::new();
        h.write_coo(&mut buf)
            .map_err(|e| Failure::io(e.to_string()))?;
        write_atomic(path, &buf)?;
    }
    let mut r = Report::new("lattice overlap", pass, &conv);
    let mut csv = String::from("sites,spacing,energy,overlap,error\n");
    for p in &conv.points {
        r = r.line(format!(
            "L_s = {:>3}  h = {:.5}  E = {:.8}  overlap = {:.6}{}",
            p.sites,
            p.spacing,
            p.energy,
            p.overlap,
            p.error
                .map(|e| format!("  E - E0 = {e:.3e}"))
                .unwrap_or_default()
        ));
        let _ = writeln!(
            csv,
            "{},{:e},{:e},{:e},{}",
            p.sites,
            p.spacing,
            p.energy,
            p.overlap,
            p.error.map(|e| format!("{e:e}")).unwrap_or_default()
        );
    }
    if let Some(k) = conv.fitted_order.filter(|k| k.is_finite()) {
        r = r.line(format!("fitted convergence order {k:.2}"));
    }
    Ok(r.line(format!(
        "{} N={}, required overlap {min_overlap}",
        m.name, m.n
    ))
    .with_csv(csv))
}
