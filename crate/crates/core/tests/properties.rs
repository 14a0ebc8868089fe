use std::f64::consts::TAU;

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use semigen::extremals::{
    extreme_candidate_generator, extreme_point_gen_f, gen_f_convex_combination, gk_generator, gk_kappa,
    is_extreme_gen_f, ExtremeCandidate,
};
use semigen::generator::{FixedPointConfig, GeneratorSpec};
use semigen::herglotz::{caratheodory_extreme, AtomicHerglotz, BoundaryPoint, RationalHerglotz};
use semigen::loewner::{cp_experiment, jensen_gap, q_concavity_check, random_cp_field, CpTarget};
use semigen::sampling::{random_herglotz, random_spec, Regime};
use semigen::semiflow::{
    default_radii, integrate_flow, integrate_flow_with_derivative, integrate_trajectory, radial_julia_quotients,
    OdeSettings,
};
use semigen::value_regions::{
    extremal_hyperbolic, extremal_interior, extremal_parabolic, inequality_suite, interval_i, parabolic_region,
    region_omega, region_z, ChartedRegion,
};
use semigen::Complex64;

fn herglotz_strategy(min_atoms: usize) -> impl Strategy<Value = AtomicHerglotz> {
    (prop::collection::vec((0.0..TAU, -3.0f64..1.0), min_atoms..=5), -5.0f64..5.0).prop_map(|(atoms, g)| {
        AtomicHerglotz::new(atoms.into_iter().map(|(t, m)| (BoundaryPoint::new(t), m.exp())), g).unwrap()
    })
}

fn disk_point() -> impl Strategy<Value = Complex64> {
    (0.0f64..0.99, 0.0..TAU).prop_map(|(r, t)| Complex64::from_polar(r, t))
}

fn seeded() -> impl Strategy<Value = ChaCha8Rng> {
    any::<u64>().prop_map(ChaCha8Rng::seed_from_u64)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn herglotz_real_part_is_nonnegative(p in herglotz_strategy(0), zs in prop::collection::vec(disk_point(), 50)) {
        for z in zs {
            prop_assert!(p.eval(z).unwrap().re >= -1e-12);
        }
    }

    #[test]
    fn p_sharp_is_the_radial_quotient_limit(p in herglotz_strategy(1), theta in 0.0..TAU) {
        let s = BoundaryPoint::new(theta);
        prop_assume!(p.atoms().iter().all(|a| a.point.angular_distance(&s) > 0.05));
        // Re p(rσ)/(1 − r) at 1 − r = 10^{-k}, Richardson-extrapolated in 1 − r.
        let q: Vec<f64> = (4..=8)
            .map(|k| {
                let h = 10f64.powi(-k);
                p.eval(s.point() * (1.0 - h)).unwrap().re / h
            })
            .collect();
        let rich = (10.0 * q[4] - q[3]) / 9.0;
        let sharp = p.p_sharp(&s);
        prop_assert!((rich - sharp).abs() <= 1e-6 * sharp.max(1.0), "{rich} vs {sharp}");
    }

    #[test]
    fn p_star_is_the_radial_limit(p in herglotz_strategy(1), pick in 0usize..5, off in prop::bool::ANY) {
        let s = if off {
            BoundaryPoint::new(p.atoms()[0].point.theta() + 0.3)
        } else {
            p.atoms()[pick % p.atoms().len()].point
        };
        prop_assume!(!off || !p.has_atom_at(&s));
        let h = 1e-9;
        let z = s.point() * (1.0 - h);
        let lim = ((1.0 - s.point().conj() * z) * p.eval(z).unwrap()).re;
        prop_assert!((lim - p.p_star(&s)).abs() <= 1e-6 * (1.0 + p.total_mass()));
    }

    #[test]
    fn reciprocal_is_an_involution(p in herglotz_strategy(1), zs in prop::collection::vec(disk_point(), 100)) {
        let r = RationalHerglotz::try_from(p.clone()).unwrap();
        let q = r.reciprocal().unwrap();
        let back = q.reciprocal().unwrap().into_herglotz();
        prop_assert_eq!(back.atoms().len(), p.atoms().len());
        // Angles carry absolute error ~ε, so masses lose accuracy like ε/gap for clustered atoms.
        let atoms = p.atoms();
        let gap = (0..atoms.len())
            .flat_map(|i| (0..i).map(move |j| (i, j)))
            .map(|(i, j)| atoms[i].point.angular_distance(&atoms[j].point))
            .fold(1.0, f64::min);
        let rel = 1e-9 + 1e-14 / gap;
        for (a, b) in back.atoms().iter().zip(p.atoms()) {
            prop_assert!(a.point == b.point || a.point.angular_distance(&b.point) < 1e-9);
            prop_assert!((a.mass - b.mass).abs() < rel * (1.0 + b.mass), "{} vs {} (gap {gap})", a.mass, b.mass);
        }
        prop_assert!((back.gamma() - p.gamma()).abs() < rel * (1.0 + p.gamma().abs()));
        for z in zs {
            let prod = p.eval(z).unwrap() * q.as_herglotz().eval(z).unwrap();
            prop_assert!((prod - 1.0).norm() < 1e-9);
        }
    }

    #[test]
    fn extract_atom_then_readd(p in herglotz_strategy(1), pick in 0usize..5, zs in prop::collection::vec(disk_point(), 20)) {
        let s = p.atoms()[pick % p.atoms().len()].point;
        let (m, rest) = p.extract_atom(&s);
        prop_assert_eq!(rest.p_star(&s), 0.0);
        let readd = &rest + &caratheodory_extreme(s).scaled(m);
        for z in zs {
            let a = p.eval(z).unwrap();
            prop_assert!((a - readd.eval(z).unwrap()).norm() <= 1e-12 * a.norm().max(1.0));
        }
    }

    #[test]
    fn interior_generator_vanishes_at_tau(mut rng in seeded()) {
        let g = random_spec(&mut rng, Regime::Interior);
        let tau = g.config().tau();
        prop_assert!(g.eval(tau).unwrap().norm() < 1e-12);
        let lam = g.dw_spectral_value();
        prop_assert!((lam + g.derivative(tau).unwrap()).norm() <= 1e-9 * lam.norm().max(1.0));
    }

    #[test]
    fn derivative_matches_finite_differences(mut rng in seeded(), z in disk_point()) {
        let g = random_spec(&mut rng, Regime::Interior);
        let h = 1e-6;
        let fd = (g.eval(z + h).unwrap() - g.eval(z - h).unwrap()) / (2.0 * h);
        let d = g.derivative(z).unwrap();
        prop_assert!((fd - d).norm() <= 1e-6 * d.norm().max(1.0), "{fd} vs {d}");
    }

    #[test]
    fn brfp_radial_limit(mut rng in seeded()) {
        let cfg = semigen::sampling::random_config(&mut rng, Regime::Interior);
        let p = random_herglotz(&mut rng, &[]);
        let g = GeneratorSpec::new(cfg.clone(), p.clone());
        for (k, s) in cfg.sigmas().iter().enumerate() {
            // G(z)/(z − σ) along the radius, Richardson in 1 − r with a step far below the
            // distance to the nearest other singularity (poles of G at zeros of p + p₀ included).
            let gap = cfg.sigmas().iter().filter(|t| *t != s).chain(p.atoms().iter().map(|a| &a.point))
                .map(|t| t.angular_distance(s))
                .fold(1.0, f64::min);
            let h = 1e-8 * gap.sqrt();
            let quot = |h: f64| {
                let z = s.point() * (1.0 - h);
                g.eval(z).unwrap() / (z - s.point())
            };
            let lim = 2.0 * quot(h) - quot(2.0 * h);
            let want = -cfg.lambdas()[k];
            prop_assert!((lim - want).norm() <= 1e-5 * want.abs().max(1.0), "{lim} vs {want} (gap {gap})");
        }
    }

    #[test]
    fn brfp_bounds(mut rng in seeded()) {
        let g = random_spec(&mut rng, Regime::Interior);
        for (k, l) in g.config().lambdas().iter().enumerate() {
            let v = g.brfp_spectral_value(k).unwrap();
            prop_assert!(v < 0.0 && v >= *l);
        }
    }

    #[test]
    fn class_is_convex(mut rng in seeded(), zs in prop::collection::vec(disk_point(), 10)) {
        let g1 = random_spec(&mut rng, Regime::Interior);
        let p2 = random_herglotz(&mut rng, g1.config().sigmas());
        let g2 = GeneratorSpec::new(g1.config().clone(), p2);
        let mid = g1.convex_combination(&g2, 0.5).unwrap();
        for z in zs {
            let want = 0.5 * (g1.eval(z).unwrap() + g2.eval(z).unwrap());
            prop_assert!((mid.eval(z).unwrap() - want).norm() <= 1e-8 * want.norm().max(1.0));
        }
    }

    #[test]
    fn berkson_porta_round_trip(mut rng in seeded(), zs in prop::collection::vec(disk_point(), 10)) {
        let g = random_spec(&mut rng, Regime::Interior);
        let bp = g.to_berkson_porta().unwrap();
        prop_assert!(semigen::generator::is_generator(&bp));
        for z in zs {
            let a = g.eval(z).unwrap();
            prop_assert!((bp.eval(z).unwrap() - a).norm() <= 1e-9 * a.norm().max(1.0));
        }
    }

    #[test]
    fn extremals_are_sharp_under_perturbation(mut rng in seeded()) {
        let bump = |g: &GeneratorSpec, s: BoundaryPoint| {
            let extra = AtomicHerglotz::new([(s, 1e-3)], 0.0).unwrap();
            GeneratorSpec::new(g.config().clone(), g.p().unwrap() + &extra)
        };
        let zero = Complex64::new(0.0, 0.0);

        let cfg = semigen::sampling::random_config(&mut rng, Regime::Interior);
        let z = region_z(&cfg).unwrap();
        let zeta = z.center + Complex64::from_polar(z.radius * rng.gen_range(0.0..0.9), rng.gen_range(0.0..TAU));
        let sigma = BoundaryPoint::new(rng.gen_range(0.0..TAU));
        let g = extremal_interior(&cfg, zeta, sigma).unwrap();
        let omega = region_omega(&cfg, zeta).unwrap();
        let scale = match &omega {
            ChartedRegion::Disk { disk, .. } => (disk.center.norm() + disk.radius).max(1.0),
            _ => 1.0,
        };
        prop_assert!(omega.slack(g.dw_spectral_value()).abs() < 1e-10 * scale);
        let s2 = BoundaryPoint::new(sigma.theta() + rng.gen_range(0.2..TAU - 0.2));
        let h = bump(&g, s2);
        let zeta2 = h.eval(zero).unwrap();
        prop_assert!(region_omega(&cfg, zeta2).unwrap().slack(h.dw_spectral_value()) > 0.0);

        let cfg = semigen::sampling::random_config(&mut rng, Regime::BoundaryHyperbolic);
        let z = region_z(&cfg).unwrap();
        let zeta = z.center + Complex64::from_polar(z.radius * rng.gen_range(0.0..0.9), rng.gen_range(0.0..TAU));
        let g = extremal_hyperbolic(&cfg, zeta).unwrap();
        prop_assert!((g.dw_spectral_value().re - interval_i(&cfg, zeta).unwrap().hi).abs() < 1e-10);
        let sz = g.p().unwrap().atoms()[0].point;
        let h = bump(&g, BoundaryPoint::new(sz.theta() + rng.gen_range(0.2..TAU - 0.2)));
        prop_assert!(h.dw_spectral_value().re < interval_i(&cfg, h.eval(zero).unwrap()).unwrap().hi);

        let g = extremal_parabolic(&cfg, zeta).unwrap();
        prop_assert_eq!(g.beta().unwrap(), parabolic_region(&cfg, zeta).unwrap().hi);
        let tp = cfg.tau_point().unwrap();
        let h = bump(&g, BoundaryPoint::new(tp.theta() + rng.gen_range(0.2..TAU - 0.2)));
        prop_assert!(h.beta().unwrap() < parabolic_region(&cfg, h.eval(zero).unwrap()).unwrap().hi);
    }

    #[test]
    fn gk_dirac_reproduces_single_point_candidates(mut rng in seeded(), b in -5.0f64..5.0, z in disk_point()) {
        let cfg = loop {
            let c = semigen::sampling::random_config(&mut rng, Regime::Interior);
            if c.n() == 1 { break c; }
        };
        let (tau, sigma, lambda) = (cfg.tau(), cfg.sigmas()[0], cfg.lambdas()[0]);
        let cand = extreme_candidate_generator(&ExtremeCandidate::new(cfg, b, vec![]).unwrap());
        let kappa = gk_kappa(tau, sigma, lambda, b);
        let v = gk_generator(tau, sigma, lambda, &[(kappa, 1.0)], z).unwrap();
        let w = cand.eval(z).unwrap();
        prop_assert!((v - w).norm() <= 1e-10 * w.norm().max(1.0));
    }

    #[test]
    fn gk_spectral_value_lies_between_lambda_and_zero(
        mut rng in seeded(),
        mu in prop::collection::vec((0.0..TAU, 0.01f64..1.0), 1..4),
    ) {
        let cfg = semigen::sampling::random_config(&mut rng, Regime::Interior);
        let (tau, sigma, lambda) = (cfg.tau(), cfg.sigmas()[0], cfg.lambdas()[0]);
        let total: f64 = mu.iter().map(|m| m.1).sum();
        let mu: Vec<_> = mu.iter().map(|(t, w)| (BoundaryPoint::new(*t), w / total)).collect();
        let gap = mu.iter().map(|m| m.0.angular_distance(&sigma)).fold(1.0, f64::min);
        prop_assume!(gap > 1e-3);
        let h = 1e-8 * gap.sqrt();
        let quot = |h: f64| {
            let z = sigma.point() * (1.0 - h);
            gk_generator(tau, sigma, lambda, &mu, z).unwrap() / (z - sigma.point())
        };
        let lim = 2.0 * quot(h) - quot(2.0 * h);
        // G'(σ) = −λ'(σ) with λ ≤ λ' ≤ 0
        prop_assert!(lim.im.abs() < 1e-5 * lim.norm().max(1.0));
        prop_assert!(lim.re >= -1e-6 && lim.re <= -lambda * (1.0 + 1e-6));
    }

    #[test]
    fn extreme_candidates_satisfy_inequalities(mut rng in seeded()) {
        for regime in Regime::ALL {
            let cfg = semigen::sampling::random_config(&mut rng, regime);
            let free = (0..cfg.n() - 1)
                .map(|_| {
                    let s = if rng.gen_bool(0.3) { cfg.sigmas()[0] } else { BoundaryPoint::new(rng.gen_range(0.0..TAU)) };
                    (s, rng.gen_range(0.0..2.0))
                })
                .collect();
            let cand = ExtremeCandidate::new(cfg, rng.gen_range(-5.0..5.0), free).unwrap();
            let rep = inequality_suite(&extreme_candidate_generator(&cand)).unwrap();
            prop_assert!(rep.violations(1e-9).is_empty(), "{:?}", rep.violations(1e-9));
        }
    }

    #[test]
    fn q_concavity_holds(mut rng in seeded(), n in 2usize..=6) {
        let x: Vec<f64> = (0..n).map(|_| rng.gen_range(-3.0f64..3.0).exp()).collect();
        let rep = q_concavity_check(&x, 20, &mut rng).unwrap();
        prop_assert!(rep.passed, "{rep:?}");
    }

    #[test]
    fn cp_fields_respect_the_region(mut rng in seeded(), n in 1usize..=3, boundary in prop::bool::ANY) {
        let a = CpTarget::new((0..n).map(|_| 1.0 + rng.gen_range(0.05..5.0)).collect()).unwrap();
        let regime = if boundary { Regime::BoundaryHyperbolic } else { Regime::Interior };
        let cfg = loop {
            let c = semigen::sampling::random_config(&mut rng, regime);
            if c.n() == n { break c; }
        };
        let f = random_cp_field(&mut rng, cfg.tau(), cfg.sigmas(), &a).unwrap();
        prop_assert!(f.is_strict());
        let logs: f64 = (0..n).map(|k| f.boundary_log_derivative(k).unwrap()).sum();
        prop_assert!((logs.exp() / a.a().iter().product::<f64>() - 1.0).abs() < 1e-9);
        prop_assert!((logs - f.total_duration()).abs() < 1e-9);
        let pt = cp_experiment(&f, &a, None).unwrap();
        prop_assert!(pt.slack >= -1e-8 && pt.inside, "{pt:?}");
        if !boundary {
            prop_assert!(jensen_gap(&f, 64) <= 1e-9);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn faces_of_gen_f_are_not_extreme(mut rng in seeded(), w in 0.05f64..0.95) {
        let n = rng.gen_range(1..=3usize);
        let tau = Complex64::from_polar(rng.gen::<f64>().sqrt(), rng.gen_range(0.0..TAU));
        let sigmas: Vec<_> = (0..n).map(|k| BoundaryPoint::new(k as f64 * TAU / n as f64 + rng.gen_range(0.0..1.0))).collect();
        let draw = |rng: &mut ChaCha8Rng| {
            let e: Vec<f64> = (0..n).map(|_| rng.gen_range(0.1..1.0)).collect();
            let s: f64 = e.iter().sum();
            let l: Vec<f64> = e.iter().map(|x| -x / s).collect();
            let sum: f64 = l.iter().map(|x| x.abs()).sum();
            let mut l = l;
            l[0] -= 1.0 - sum;
            (l, rng.gen_range(-3.0f64..3.0))
        };
        let (l1, b1) = draw(&mut rng);
        let (l2, mut b2) = draw(&mut rng);
        if n == 1 && (b1 - b2).abs() < 0.1 { b2 = b1 + 1.0; }
        let g1 = extreme_point_gen_f(tau, sigmas.clone(), l1, b1).unwrap();
        let g2 = extreme_point_gen_f(tau, sigmas, l2, b2).unwrap();
        prop_assert!(is_extreme_gen_f(&g1) && is_extreme_gen_f(&g2));
        let mix = gen_f_convex_combination(&g1, &g2, w).unwrap();
        prop_assert!(!is_extreme_gen_f(&mix));
    }

    #[test]
    fn semigroup_property(mut rng in seeded(), z in disk_point(), s in 0.0f64..1.0, t in 0.0f64..1.0) {
        let g = random_spec(&mut rng, Regime::Interior);
        let set = OdeSettings::default();
        let a = integrate_flow(&g, z, s + t, &set).unwrap();
        let b = integrate_flow(&g, integrate_flow(&g, z, t, &set).unwrap(), s, &set).unwrap();
        prop_assert!((a - b).norm() < 1e-8);
    }

    #[test]
    fn trajectories_stay_in_the_disk(mut rng in seeded(), z in disk_point()) {
        for regime in Regime::ALL {
            let g = random_spec(&mut rng, regime);
            let tr = integrate_trajectory(&g, z, 1.0, 20, false, &OdeSettings::default()).unwrap();
            prop_assert!(tr.points.iter().all(|p| p.norm() < 1.0));
        }
    }

    #[test]
    fn variational_derivative_matches_finite_differences(mut rng in seeded(), z in disk_point(), t in 0.0f64..1.0) {
        let g = random_spec(&mut rng, Regime::Interior);
        let set = OdeSettings::default();
        let h = 1e-6;
        let (_, d) = integrate_flow_with_derivative(&g, z, t, &set).unwrap();
        let fd = (integrate_flow(&g, z + h, t, &set).unwrap() - integrate_flow(&g, z - h, t, &set).unwrap()) / (2.0 * h);
        prop_assert!((fd - d).norm() <= 1e-5 * d.norm().max(1e-3), "{fd} vs {d}");
    }

    #[test]
    fn julia_quotients_are_monotone(mut rng in seeded(), t in 0.1f64..1.0) {
        let g = random_spec(&mut rng, Regime::Interior);
        let set = OdeSettings::default();
        for s in g.config().sigmas() {
            let q = radial_julia_quotients(|z| integrate_flow(&g, z, t, &set), *s, &default_radii()).unwrap();
            prop_assert!(q.windows(2).all(|w| w[1] >= w[0] * (1.0 - 1e-9)), "{q:?}");
        }
    }
}

#[test]
fn random_configs_are_valid() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for regime in Regime::ALL {
        let cfg: FixedPointConfig = semigen::sampling::random_config(&mut rng, regime);
        assert!(cfg.n() >= 1 && cfg.n() <= 4);
    }
}
