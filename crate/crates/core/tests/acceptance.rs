//! Acceptance suite: one PASS/FAIL line per criterion.

use std::collections::BTreeMap;
use std::time::Instant;

use jastrow_core::algebra::{
    build_invariant, build_pi, homogeneous_hamiltonian, inverse_two_m, pi_commutator_closed_form,
    three_body_coeff, trapped_hamiltonian, verify_integrability, Laurent, TERM_BUDGET,
};
use jastrow_core::lattice::{
    check_projector_axioms, check_supersymmetric_lemma, energy_convergence, grid_for,
    ground_state_overlap, Grid, LatticeRep, StencilOrder,
};
use jastrow_core::verify::{
    default_min_sep, default_sampling, fd_local_energy, local_energy, sample_configs,
    verify_eigenstate,
};
use jastrow_core::{zoo_model, ModelSpec, PhysicalConstants, Statistics, TermKind, ZOO};

const SEED: u64 = 20240611;

struct Outcome {
    pass: bool,
    detail: String,
    report: String,
}

fn model(name: &str, kv: &[(&str, f64)], n: usize) -> ModelSpec {
    let p: BTreeMap<String, f64> = kv.iter().map(|(k, v)| (k.to_string(), *v)).collect();
    zoo_model(name, &p, n, PhysicalConstants::default()).unwrap()
}

fn energy_table() -> Outcome {
    let mut pass = true;
    let mut worst = String::new();
    let mut report = String::new();
    let mut rows = 0;
    for e in ZOO {
        for n in 2..=6 {
            let m = model(e.name, &[], n);
            if !m.e0_known() {
                continue;
            }
            let r = verify_eigenstate(&m, 1000, SEED).unwrap();
            rows += 1;
            report.push_str(&serde_json::to_string(&r).unwrap());
            report.push('\n');
            if !r.pass {
                pass = false;
                worst.push_str(&format!(
                    " {}(N={n}): mean {:.12} vs {:.12}, var {:.2e};",
                    e.name,
                    r.mean,
                    r.e0_expected.unwrap(),
                    r.variance
                ));
            }
        }
    }
    Outcome {
        pass,
        detail: format!("{rows} (model, N) rows{worst}"),
        report,
    }
}

fn negative_control() -> Outcome {
    let toda = model("toda-bessel-trapped", &[], 4)
        .drop_term(TermKind::ThreeBody)
        .unwrap();
    let llc = model("lieb-liniger-coulomb", &[], 4)
        .drop_term(TermKind::Cross)
        .unwrap();
    let a = verify_eigenstate(&toda, 1000, SEED).unwrap();
    let b = verify_eigenstate(&llc, 1000, SEED).unwrap();
    let pass = !a.pass && !b.pass && a.variance > 1e-6 && b.variance > 1e-6;
    Outcome {
        pass,
        detail: format!(
            "toda without three-body var {:.3e}; LLC without cross term var {:.3e}",
            a.variance, b.variance
        ),
        report: format!(
            "{}\n{}\n",
            serde_json::to_string(&a).unwrap(),
            serde_json::to_string(&b).unwrap()
        ),
    }
}

fn oracle_equivalence() -> Outcome {
    let hs = [1e-2, 5e-3, 2.5e-3];
    let mut pass = true;
    let mut detail = String::new();
    let mut report = String::new();
    for e in ZOO {
        let m = model(e.name, &[], 3);
        // keep every stencil clear of coincidences
        let min_sep = (0.3 * jastrow_core::verify::length_scale(&m)).max(default_min_sep(&m));
        let configs = sample_configs(&m, 10, SEED, min_sep, default_sampling(&m)).unwrap();
        let mut err = [0.0; 3];
        for c in &configs {
            let exact = local_energy(&m, c).unwrap();
            for (k, &h) in hs.iter().enumerate() {
                err[k] += (fd_local_energy(&m, c, h).unwrap() - exact).abs();
            }
        }
        let floor = 1e-9 * configs.len() as f64;
        let (status, ok) = if err[0] <= floor {
            ("exact".to_string(), true)
        } else {
            let order = fit_order(&hs, &err);
            (format!("{order:.2}"), (order - 4.0).abs() <= 0.5)
        };
        report.push_str(&format!(
            "{} {:e} {:e} {:e} {}\n",
            e.name, err[0], err[1], err[2], status
        ));
        if !ok {
            pass = false;
            detail.push_str(&format!(
                " {}: order {status} errs {:.2e} {:.2e} {:.2e};",
                e.name, err[0], err[1], err[2]
            ));
        }
    }
    Outcome {
        pass,
        detail: format!("13 models x 10 configs{detail}"),
        report,
    }
}

/// Least-squares slope of ln(err) against ln(h).
fn fit_order(h: &[f64], err: &[f64]) -> f64 {
    let xs: Vec<f64> = h.iter().map(|v| v.ln()).collect();
    let ys: Vec<f64> = err.iter().map(|v| v.ln()).collect();
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    sxy / sxx
}

fn cusp() -> Outcome {
    use jastrow_core::verify::cusp_check;
    let ll = cusp_check(&model("lieb-liniger", &[("g", 1.7)], 3)).unwrap();
    let tg = cusp_check(&model("tonks-girardeau-trapped", &[], 3)).unwrap();
    let pass = ll.pass && tg.pass && ll.error <= 1e-10 && tg.error <= 1e-10;
    Outcome {
        pass,
        detail: format!(
            "LL jump {} (need {}), TG jump {} (need {})",
            ll.jump, ll.required, tg.jump, tg.required
        ),
        report: format!(
            "{}\n{}\n",
            serde_json::to_string(&ll).unwrap(),
            serde_json::to_string(&tg).unwrap()
        ),
    }
}

fn integrability() -> Outcome {
    let v = Laurent::rational();
    let runs = [
        verify_integrability(&v, 3, &[(2, 3)], None, TERM_BUDGET),
        verify_integrability(&v, 4, &[(2, 3)], None, TERM_BUDGET),
        verify_integrability(&v, 3, &[(1, 2)], Some(&Laurent::harmonic()), TERM_BUDGET),
    ];
    let mut pass = true;
    let mut detail = Vec::new();
    let mut report = String::new();
    for r in runs {
        let r = r.unwrap();
        pass &= r.pass;
        let c = &r.checks[0];
        let name = if r.trapped {
            "trapped [h1,h2]"
        } else {
            "[I2,I3]"
        };
        detail.push(format!("{name} N={} -> {} terms", r.n, c.terms_commutator));
        report.push_str(&serde_json::to_string(&r).unwrap());
        report.push('\n');
    }
    let mut closed = 0;
    for fam in [Laurent::rational(), Laurent::rational_linear()] {
        for i in 0..3 {
            for j in i + 1..3 {
                let c = build_pi(i, &fam, 3)
                    .unwrap()
                    .commutator(&build_pi(j, &fam, 3).unwrap());
                let ok = c == pi_commutator_closed_form(&fam, 3, i, j);
                pass &= ok;
                closed += ok as usize;
                report.push_str(&format!(
                    "[pi_{},pi_{}] {}: {}\n",
                    i + 1,
                    j + 1,
                    fam.name,
                    c.render()
                ));
            }
        }
    }
    detail.push(format!("[pi_i,pi_j] closed form {closed}/6"));
    Outcome {
        pass,
        detail: detail.join("; "),
        report,
    }
}

fn projection() -> Outcome {
    let n = 3;
    let v = Laurent::rational();
    let w = Laurent::harmonic();
    let i2 = build_invariant(2, &v, n, None).unwrap();
    let t1 = build_invariant(1, &v, n, Some(&w)).unwrap();
    let mut pass = three_body_coeff(&v, n, 0, 1, 2).is_zero();
    let mut report = format!("V_123 = {}\n", three_body_coeff(&v, n, 0, 1, 2).render());
    for zeta in [1, -1] {
        let h0 = i2.project(zeta).left_mul(&inverse_two_m(n));
        let h = t1.project(zeta);
        pass &= h0 == homogeneous_hamiltonian(&v, n, zeta)
            && h == trapped_hamiltonian(&v, &w, n, zeta).unwrap();
        report.push_str(&format!(
            "zeta={zeta}\nH0 = {}\nH = {}\n",
            h0.render(),
            h.render()
        ));
    }
    Outcome {
        pass,
        detail: "I2/2m and trapped h-sum projections, both statistics, N=3".into(),
        report,
    }
}

fn lattice_axioms() -> Outcome {
    let mut pass = true;
    let mut detail = Vec::new();
    let mut report = String::new();
    for (l, n) in [(6, 3), (4, 4)] {
        for zeta in [Statistics::Boson, Statistics::Fermion] {
            let rep = LatticeRep::build(
                Grid::periodic(l, 3.0).unwrap(),
                n,
                zeta,
                StencilOrder::Second,
            )
            .unwrap();
            let a = check_projector_axioms(&rep);
            let lemma = check_supersymmetric_lemma(&rep);
            pass &= a.pass && lemma.pass;
            let worst = a
                .checks
                .iter()
                .chain(&lemma.checks)
                .map(|c| c.defect)
                .fold(0.0, f64::max);
            detail.push(format!(
                "({l},{n},{}) {} identities worst {worst:.1e}",
                zeta.sign(),
                a.checks.len() + lemma.checks.len()
            ));
            report.push_str(&serde_json::to_string(&a).unwrap());
            report.push('\n');
            report.push_str(&serde_json::to_string(&lemma).unwrap());
            report.push('\n');
        }
    }
    Outcome {
        pass,
        detail: detail.join("; "),
        report,
    }
}

fn lattice_eigenstate() -> Outcome {
    let qp = model("quadratic-pair", &[("g", -1.0), ("omega", 1.0)], 2);
    let conv = energy_convergence(
        &qp,
        6.0,
        &[24, 32, 48],
        Statistics::Boson,
        StencilOrder::Second,
    )
    .unwrap();
    let overlap = conv.points.last().unwrap().overlap;
    let order = conv.fitted_order.unwrap();
    let llc = model("lieb-liniger-coulomb", &[("g", 0.5), ("omega", 1.0)], 2);
    let r = ground_state_overlap(
        &llc,
        &grid_for(&llc, 64, 6.0).unwrap(),
        Statistics::Boson,
        StencilOrder::Second,
    )
    .unwrap();
    let rel = (r.energy - 0.75).abs() / 0.75;
    let pass = overlap >= 0.999 && (order - 2.0).abs() <= 0.4 && rel <= 0.02;
    Outcome {
        pass,
        detail: format!(
            "quadratic-pair overlap {overlap:.6}, order {order:.2}; LLC E = {:.5} ({:.2}%)",
            r.energy,
            100.0 * rel
        ),
        report: format!(
            "{}\n{}\n",
            serde_json::to_string(&conv).unwrap(),
            serde_json::to_string(&r).unwrap()
        ),
    }
}

type Criterion = (usize, &'static str, fn() -> Outcome, f64);

fn main() {
    let criteria: Vec<Criterion> = vec![
        (1, "ground-state energy table", energy_table, 10.0),
        (2, "negative control", negative_control, 1.0),
        (3, "finite-difference oracle", oracle_equivalence, 30.0),
        (4, "symbolic integrability", integrability, 60.0),
        (5, "projection derivation", projection, 10.0),
        (6, "lattice axioms", lattice_axioms, 20.0),
        (7, "lattice eigenstate", lattice_eigenstate, 60.0),
        (8, "cusp conditions", cusp, 1.0),
    ];
    let mut failed = 0;
    let mut reports = Vec::new();
    for &(id, name, run, budget) in &criteria {
        let t = Instant::now();
        let o = run();
        let secs = t.elapsed().as_secs_f64();
        let ok = o.pass && secs <= budget;
        if !ok {
            failed += 1;
        }
        if std::env::var_os("ACCEPTANCE_VERBOSE").is_some() {
            print!("{}", o.report);
        }
        println!(
            "criterion {id} [{}] {name}: {} ({secs:.2}s, budget {budget}s)",
            if ok { "PASS" } else { "FAIL" },
            o.detail
        );
        reports.push(o.report);
    }

    let t = Instant::now();
    let differing: Vec<usize> = criteria
        .iter()
        .zip(&reports)
        .filter(|((_, _, run, _), first)| run().report != **first)
        .map(|c| c.0 .0)
        .collect();
    let bytes: usize = reports.iter().map(String::len).sum();
    let ok = differing.is_empty();
    if !ok {
        failed += 1;
    }
    println!(
        "criterion 9 [{}] determinism: second run of criteria 1-8 {} ({bytes} report bytes, {:.2}s)",
        if ok { "PASS" } else { "FAIL" },
        if ok { "byte-identical".to_string() } else { format!("differs in {differing:?}") },
        t.elapsed().as_secs_f64()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
