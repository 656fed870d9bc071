use jastrow_core::builder::{
    assemble, pair_from_prepotential, prepotential_from_pair, reduce_three_to_two, three_body,
};
use jastrow_core::verify::{local_energy, JastrowState};
use jastrow_core::zoo::params;
use jastrow_core::{
    ConfigVector, Geometry, ModelSpec, OneBodyProfile, PairFamily, PhysicalConstants, Prepotential,
    PrepotentialShape, Statistics, ZOO,
};
use proptest::prelude::*;

fn constants() -> impl Strategy<Value = PhysicalConstants> {
    (0.5f64..2.0, 0.5f64..2.0).prop_map(|(h, m)| PhysicalConstants::new(h, m).unwrap())
}

fn statistics() -> impl Strategy<Value = Statistics> {
    prop_oneof![Just(Statistics::Boson), Just(Statistics::Fermion)]
}

fn pair_family() -> impl Strategy<Value = PairFamily> {
    let base = prop_oneof![
        (0.2f64..3.0).prop_map(PairFamily::power),
        (-2.0f64..2.0).prop_map(PairFamily::exp_abs),
        (0.2f64..3.0, 2.0f64..8.0).prop_map(|(l, p)| PairFamily::sin_power(l, p)),
        (0.2f64..3.0, 0.3f64..1.5).prop_map(|(l, a)| PairFamily::sinh_power(l, a)),
        (0.2f64..2.0, 0.5f64..2.0).prop_map(|(g, l)| PairFamily::bessel_toda(g, l)),
    ];
    (base, prop_oneof![Just(0.0), 0.1f64..1.5]).prop_map(|(f, k)| {
        if f.period().is_some() {
            f
        } else {
            f.with_gaussian(k)
        }
    })
}

fn reducible_shape() -> impl Strategy<Value = PrepotentialShape> {
    let base = prop_oneof![
        (0.2f64..3.0).prop_map(|lambda| PrepotentialShape::Rational { lambda }),
        (-2.0f64..2.0).prop_map(|g| PrepotentialShape::Sgn { g }),
        (0.2f64..3.0, 2.0f64..8.0)
            .prop_map(|(lambda, period)| PrepotentialShape::Cot { lambda, period }),
        (0.2f64..3.0, 0.3f64..1.5).prop_map(|(lambda, a)| PrepotentialShape::Coth { lambda, a }),
    ];
    (base, prop_oneof![Just(0.0), -1.0f64..1.0]).prop_map(|(s, b)| s.shifted(b))
}

/// A point of the fundamental cell that keeps clear of the singular set.
fn regular_point(f: &PairFamily, t: f64) -> f64 {
    match f.period() {
        Some(l) => l * (0.1 + 0.8 * t),
        None => 0.3 + 2.7 * t,
    }
}

fn zoo_defaults(n: usize) -> Vec<ModelSpec> {
    ZOO.iter().map(|e| zoo_model(e.name, n)).collect::<Vec<_>>()
}

fn untrapped_line_model() -> impl Strategy<Value = ModelSpec> {
    let ms: Vec<ModelSpec> = zoo_defaults(4)
        .into_iter()
        .filter(|m| m.one_body.is_zero() && m.geometry == Geometry::Line)
        .collect();
    prop::sample::select(ms)
}

fn zoo_model(name: &str, n: usize) -> ModelSpec {
    jastrow_core::zoo_model(name, &params(&[]), n, PhysicalConstants::default()).unwrap()
}

fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * (1.0 + a.abs().max(b.abs()))
}

/// Five-point first derivative.
fn d1(g: impl Fn(f64) -> f64, x: f64, h: f64) -> f64 {
    (g(x - 2.0 * h) - 8.0 * g(x - h) + 8.0 * g(x + h) - g(x + 2.0 * h)) / (12.0 * h)
}

/// Sorted positions with neighbours at least `sep` apart.
fn spread(raw: &[f64], sep: f64) -> Vec<f64> {
    let mut x = raw.to_vec();
    x.sort_by(f64::total_cmp);
    for i in 1..x.len() {
        if x[i] - x[i - 1] < sep {
            x[i] = x[i - 1] + sep;
        }
    }
    x
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn log_deriv_is_odd(f in pair_family(), t in 0.0f64..1.0) {
        let x = regular_point(&f, t);
        let (a, b) = (f.log_deriv(x), f.log_deriv(-x));
        prop_assert!(close(a, -b, 1e-12), "{} at {x}: {a} vs {b}", f.name());
        prop_assert!(close(f.log_second(x), f.log_second(-x), 1e-12));
    }

    #[test]
    fn log_deriv_matches_fourth_order_difference(f in pair_family(), t in 0.0f64..1.0) {
        let x = regular_point(&f, t);
        let exact = f.log_deriv(x);
        let ln = |y: f64| f.ln_abs(y);
        let (h, e1) = (0.04, (d1(ln, x, 0.04) - exact).abs());
        let e2 = (d1(ln, x, h / 2.0) - exact).abs();
        // below this both errors sit on the rounding floor and carry no order
        if e1 > 1e-9 {
            let order = (e1 / e2).log2();
            prop_assert!((order - 4.0).abs() < 0.5, "{}: order {order} ({e1:e}, {e2:e})", f.name());
        }
        let s = d1(|y| f.log_deriv(y), x, 1e-3) + exact * exact;
        prop_assert!(close(s, f.log_second(x), 1e-6), "{}: f''/f {s} vs {}", f.name(), f.log_second(x));
    }

    #[test]
    fn ring_families_are_periodic(l in 0.2f64..3.0, p in 2.0f64..8.0, t in 0.05f64..0.95, k in -3i32..3, w in 0.1f64..2.0) {
        let f = PairFamily::sin_power(l, p);
        let x = p * t;
        let y = x + k as f64 * p;
        prop_assert!(close(f.log_deriv(x), f.log_deriv(y), 1e-9));
        prop_assert!(close(f.log_second(x), f.log_second(y), 1e-9));
        prop_assert!(close(f.ln_abs(x), f.ln_abs(y), 1e-9));
        let trap = OneBodyProfile::trig_trap(w, p, PhysicalConstants::default());
        prop_assert!(close(trap.v_prime(x), trap.v_prime(y), 1e-9));
        prop_assert!(close(trap.u_from_v(x), trap.u_from_v(y), 1e-9));
    }

    #[test]
    fn prepotential_is_odd_and_scaled_log_deriv(f in pair_family(), z in statistics(), c in constants(), t in 0.0f64..1.0) {
        let v = prepotential_from_pair(&f, z, &c);
        let x = regular_point(&f, t);
        prop_assert!(close(v.value(x), -v.value(-x), 1e-12));
        prop_assert!(close(v.value(x), z.zeta() * c.hbar * f.log_deriv(x), 1e-12));
        // (ζħV′ + V²)/m = (ħ²/m) f″/f
        let lhs = (z.zeta() * c.hbar * v.derivative(x) + v.value(x).powi(2)) / c.mass;
        prop_assert!(close(lhs, c.hbar2_over_m() * f.log_second(x), 1e-10), "{lhs}");
    }

    #[test]
    fn pair_prepotential_round_trip(f in pair_family(), z in statistics(), c in constants()) {
        let v = prepotential_from_pair(&f, z, &c);
        let back = pair_from_prepotential(&v).unwrap();
        prop_assert_eq!(back.kind, f.kind);
    }

    #[test]
    fn w_from_v(omega in -2.0f64..2.0, p in 2.0f64..8.0, c in constants(), x in -4.0f64..4.0) {
        for ob in [OneBodyProfile::harmonic(omega, c), OneBodyProfile::trig_trap(omega, p, c)] {
            prop_assert!(close(ob.w(x), -c.hbar_over_sqrt_2m() * ob.v_prime(x), 1e-12));
            prop_assert!(close(ob.u_from_w(x), ob.u_from_v(x), 1e-10), "{}: {} vs {}", ob.name(), ob.u_from_w(x), ob.u_from_v(x));
        }
    }

    #[test]
    fn reduced_three_body_is_sum_of_q(s in reducible_shape(), z in statistics(), c in constants(), a in 0.2f64..2.0, b in 0.2f64..2.0, sa in any::<bool>(), sb in any::<bool>()) {
        let v = Prepotential::new(s, z, &c);
        let (r1, r2) = (if sa { a } else { -a }, if sb { b } else { -b });
        let r3 = -(r1 + r2);
        prop_assume!(r3.abs() > 0.1);
        if let Some(l) = v.period() {
            prop_assume!([r1, r2, r3].iter().all(|r| (r / l - (r / l).round()).abs() > 0.02));
        }
        let q = reduce_three_to_two(&v).unwrap();
        let direct = three_body(&v, r1, r2, r3).unwrap();
        let sum = q.eval(r1) + q.eval(r2) + q.eval(r3);
        prop_assert!(close(direct, sum, 1e-9), "{}: {direct} vs {sum}", v.name());
    }

    #[test]
    fn zoo_terms_have_pair_symmetry(idx in 0..ZOO.len(), a in 0.3f64..2.0, b in 0.3f64..2.0, sb in any::<bool>()) {
        let m = zoo_model(ZOO[idx].name, 3);
        let t = &m.terms;
        prop_assert!(close(t.two_body_at(a), t.two_body_at(-a), 1e-12));
        prop_assert!(close(t.reduced_at(a), t.reduced_at(-a), 1e-12));
        let b = if sb { b } else { -b };
        let c = -(a + b);
        prop_assume!(c.abs() > 0.1 && !m.pair.is_singular(c));
        let base = t.three_body_at(a, b, c);
        for (x, y, z) in [(b, c, a), (c, a, b), (b, a, c), (a, c, b), (c, b, a), (-a, -b, -c)] {
            prop_assert!(close(base, t.three_body_at(x, y, z), 1e-12), "{}", m.name);
        }
    }

    #[test]
    fn zoo_local_energy_is_constant(idx in 0..ZOO.len(), n in 2usize..6, raw in prop::collection::vec(-1.0f64..1.0, 5)) {
        let m = zoo_model(ZOO[idx].name, n);
        let scale = jastrow_core::verify::length_scale(&m);
        let x: Vec<f64> = match m.geometry {
            Geometry::Ring { circumference } => {
                let step = circumference / n as f64;
                (0..n).map(|i| step * (i as f64 + 0.5 + 0.3 * raw[i])).collect()
            }
            _ => spread(&raw[..n].iter().map(|r| 2.0 * scale * r).collect::<Vec<_>>(), 0.3 * scale),
        };
        let e = local_energy(&m, &ConfigVector::new(x)).unwrap();
        let reference = match m.e0 {
            Some(e0) => e0,
            None => {
                let y: Vec<f64> = (0..n).map(|i| scale * (i as f64 - 0.5 * n as f64)).collect();
                local_energy(&m, &ConfigVector::new(y)).unwrap()
            }
        };
        prop_assert!(close(e, reference, 1e-8), "{}: {e} vs {reference}", m.name);
    }

    #[test]
    fn trap_embedding_adds_external_and_cross(f in pair_family(), z in statistics(), omega in 0.3f64..2.0, n in 2usize..5, raw in prop::collection::vec(-1.5f64..1.5, 4)) {
        prop_assume!(f.period().is_none());
        let c = PhysicalConstants::default();
        let trap = OneBodyProfile::harmonic(omega, c);
        let trapped = assemble(&f, &trap, z, n, c, Geometry::Line).unwrap();
        let free = assemble(&f, &OneBodyProfile::zero(c), z, n, c, Geometry::Line).unwrap();
        let x = spread(&raw[..n], 0.3);
        let cfg = ConfigVector::new(x.clone());
        prop_assert!(local_energy(&trapped, &cfg).unwrap().abs() < 1e-8);
        prop_assert!(local_energy(&free, &cfg).unwrap().abs() < 1e-8);
        // homogeneous Hamiltonian acting on the trapped state
        let mut mixed = trapped.clone();
        mixed.terms = free.terms.clone();
        let mut added: f64 = x.iter().map(|&xi| trap.u_from_v(xi)).sum();
        for i in 0..n {
            for j in i + 1..n {
                added += c.hbar2_over_m() * (trap.v_prime(x[i]) - trap.v_prime(x[j])) * f.log_deriv(x[i] - x[j]);
            }
        }
        let e = local_energy(&mixed, &cfg).unwrap();
        prop_assert!(close(e + added, 0.0, 1e-8), "{e} + {added}");
    }

    #[test]
    fn untrapped_line_models_are_translation_invariant(m in untrapped_line_model(), shift in -5.0f64..5.0, raw in prop::collection::vec(-1.5f64..1.5, 4)) {
        let x = spread(&raw, 0.3);
        let y: Vec<f64> = x.iter().map(|v| v + shift).collect();
        let s = JastrowState::of(&m);
        let (cx, cy) = (ConfigVector::new(x.clone()), ConfigVector::new(y.clone()));
        prop_assert!(close(s.ln_psi(&cx), s.ln_psi(&cy), 1e-10));
        prop_assert!(close(m.terms.potential_energy(&x), m.terms.potential_energy(&y), 1e-10));
        prop_assert!(close(local_energy(&m, &cx).unwrap(), local_energy(&m, &cy).unwrap(), 1e-9));
    }
}

#[test]
fn zoo_covers_line_and_ring() {
    let ms = zoo_defaults(3);
    assert!(ms.iter().any(|m| m.geometry.is_ring()));
    assert!(ms
        .iter()
        .any(|m| m.one_body.is_zero() && !m.geometry.is_ring()));
}
