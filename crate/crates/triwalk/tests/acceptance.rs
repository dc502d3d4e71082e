//! Acceptance suite: one test per criterion, one printed pass/fail line each
//! (run with `cargo test --test acceptance -- --nocapture` to see them all).
//!
//! Every tolerance is pinned in code. The numeric oracles here (golden-section
//! velocity maximization, trapezoidal quadrature of the defining integrals)
//! are written in this file, independent of the library paths they check.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::PI;
use triwalk::coins::{
    build_c1, build_unitary, classify_coin, grover_c1_params, grover_coin, sample_c1, sample_c2,
    C1Params, C2Params, CoinClass, CoinParams, CLASSIFY_TOL,
};
use triwalk::kinematics::{
    c1_dispersion_params, c1_vmax, c2_dispersion_params, c2_vmax, peak_velocity, DispersionParams,
    PeakMethod,
};
use triwalk::linalg::Complex;
use triwalk::simulator::{simulate, Initial};
use triwalk::spectrum::{spectral_scan, verify_dispersion};
use triwalk::trapping::{
    limiting_amplitudes, norm_factors, p_infinity_closed, residue_integrals, stationary_state,
    FamilyParams, NormFactors,
};

fn report(criterion: &str, pass: bool, detail: &str) {
    println!(
        "criterion {criterion}: {} — {detail}",
        if pass { "PASS" } else { "FAIL" }
    );
}

/// The five fixed C1 points (θ13, θ23) of the simulation cross-oracle.
fn c1_points() -> Vec<C1Params> {
    let g = grover_c1_params();
    [
        (g.theta13, g.theta23),
        (0.3, 0.8),
        (-0.4, 1.9),
        (1.0, 2.2),
        (0.15, -1.1),
    ]
    .iter()
    .map(|&(theta13, theta23)| C1Params {
        theta13,
        theta23,
        ..Default::default()
    })
    .collect()
}

/// The five fixed C2 points (γ1, γ2, γ4, γ5, δ, θ23).
fn c2_points() -> Vec<C2Params> {
    [
        (0.0, PI / 5.0, 0.0, 0.0, PI / 2.0 - PI / 5.0, 0.3),
        (0.2, 0.9, -0.3, 0.4, 1.2, 0.7),
        (-0.5, 0.3, 0.2, -0.1, 0.5, -0.6),
        (0.1, -0.4, 0.3, 0.8, 2.2, 1.1),
        (0.0, 0.25, 0.25, 0.5, 1.0, -0.9),
    ]
    .iter()
    .map(
        |&(gamma1, gamma2, gamma4, gamma5, delta, theta23)| C2Params {
            gamma1,
            gamma2,
            gamma4,
            gamma5,
            delta,
            theta23,
        },
    )
    .collect()
}

#[test]
fn criterion_1_grover_reduction() {
    let start = std::time::Instant::now();
    let coin = build_c1(&grover_c1_params());
    let err = coin.matrix().max_abs_diff(&grover_coin().matrix());
    let cls = classify_coin(&coin, CLASSIFY_TOL).unwrap();
    let scan = spectral_scan(&coin, 256).unwrap();
    let const_is_one = scan
        .constant_track_index
        .map(|t| (scan.track_mean(t) - Complex::new(1.0, 0.0)).norm() < 1e-10)
        .unwrap_or(false);
    let pass = err < 1e-10 && cls.class == CoinClass::Class1 && const_is_one;
    report(
        "1 (Grover reduction)",
        pass,
        &format!(
            "entrywise error {err:.2e}, class {:?}, constant eigenvalue 1: {const_is_one}, {} ms",
            cls.class,
            start.elapsed().as_millis()
        ),
    );
    assert!(start.elapsed().as_secs() < 1, "runtime budget 1 s exceeded");
    assert!(pass);
}

#[test]
fn criterion_2_measure_zero() {
    let start = std::time::Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(20);
    let mut all_no_point = true;
    let mut min_deviation = f64::INFINITY;
    for _ in 0..100 {
        let coin = build_unitary(&CoinParams {
            theta12: rng.gen_range(-PI..PI),
            theta13: rng.gen_range(-PI..PI),
            theta23: rng.gen_range(-PI..PI),
            delta: rng.gen_range(-PI..PI),
            gamma1: rng.gen_range(-PI..PI),
            gamma2: rng.gen_range(-PI..PI),
            gamma3: rng.gen_range(-PI..PI),
            gamma4: rng.gen_range(-PI..PI),
            gamma5: rng.gen_range(-PI..PI),
        });
        let cls = classify_coin(&coin, CLASSIFY_TOL).unwrap();
        if cls.class != CoinClass::NoPointSpectrum {
            all_no_point = false;
        }
        let scan = spectral_scan(&coin, 256).unwrap();
        for t in 0..3 {
            min_deviation = min_deviation.min(scan.track_phase_deviation(t));
        }
    }
    let pass = all_no_point && min_deviation >= 1e-4;
    report(
        "2 (measure zero)",
        pass,
        &format!(
            "100/100 NoPointSpectrum: {all_no_point}, smallest track deviation {min_deviation:.2e}, {} ms",
            start.elapsed().as_millis()
        ),
    );
    assert!(
        start.elapsed().as_secs() < 10,
        "runtime budget 10 s exceeded"
    );
    assert!(pass);
}

#[test]
fn criterion_3_dispersion_identity() {
    let start = std::time::Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(30);
    let mut worst = 0.0f64;
    for _ in 0..50 {
        let coin = build_c1(&sample_c1(&mut rng));
        let scan = spectral_scan(&coin, 256).unwrap();
        worst = worst.max(verify_dispersion(&coin, &scan).unwrap());
    }
    for _ in 0..50 {
        let coin = triwalk::coins::build_c2(&sample_c2(&mut rng)).unwrap();
        let scan = spectral_scan(&coin, 256).unwrap();
        worst = worst.max(verify_dispersion(&coin, &scan).unwrap());
    }
    let pass = worst < 1e-8;
    report(
        "3 (dispersion identity)",
        pass,
        &format!(
            "max |cos ω_track − (ρcos(k−γ)−μ)| = {worst:.2e} over 100 coins × 256 k, {} ms",
            start.elapsed().as_millis()
        ),
    );
    assert!(
        start.elapsed().as_secs() < 30,
        "runtime budget 30 s exceeded"
    );
    assert!(pass);
}

/// Independent maximizer of |dω/dk|: dense grid plus golden-section, written
/// directly from the derivative formula.
fn numeric_peak_velocity(rho: f64, mu: f64) -> f64 {
    let speed = |x: f64| {
        let u = rho * x.cos() - mu;
        let d = 1.0 - u * u;
        if d <= 0.0 {
            0.0
        } else {
            (rho * x.sin()).abs() / d.sqrt()
        }
    };
    let n = 8192usize;
    let mut best_i = 0usize;
    let mut best = 0.0;
    for i in 0..=n {
        let v = speed(PI * i as f64 / n as f64);
        if v > best {
            best = v;
            best_i = i;
        }
    }
    let (mut a, mut b) = (
        PI * best_i.saturating_sub(1) as f64 / n as f64,
        (PI * (best_i + 1) as f64 / n as f64).min(PI),
    );
    let gr = (5.0f64.sqrt() - 1.0) / 2.0;
    while b - a > 1e-12 {
        let c = b - gr * (b - a);
        let d = a + gr * (b - a);
        if speed(c) > speed(d) {
            b = d;
        } else {
            a = c;
        }
    }
    speed(0.5 * (a + b))
}

#[test]
fn criterion_4_peak_velocity_cross_validation() {
    let start = std::time::Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(40);
    let mut checked = 0;
    let mut worst = 0.0f64;
    while checked < 500 {
        let rho = rng.gen_range(0.02..0.98);
        let mu: f64 = rng.gen_range(-1.0f64..1.0) * (1.0 - rho);
        let p = DispersionParams::new(rho, mu, 0.0);
        if p.discriminant() <= 1e-6 {
            continue;
        }
        let closed = peak_velocity(&p);
        if closed.method != PeakMethod::ClosedForm {
            continue;
        }
        worst = worst.max((closed.v_peak - numeric_peak_velocity(rho, mu)).abs());
        checked += 1;
    }

    // Grover's degenerate discriminant goes through the fallback
    let grover = c1_dispersion_params(grover_c1_params().theta13, grover_c1_params().theta23);
    let gr = peak_velocity(&grover);
    let grover_ok =
        gr.method == PeakMethod::NumericFallback && (gr.v_peak - 1.0 / 3.0f64.sqrt()).abs() < 1e-8;

    // γ-invariance of Δ and v_peak
    let mut gamma_ok = true;
    for _ in 0..50 {
        let rho = rng.gen_range(0.05..0.95);
        let mu = rng.gen_range(-1.0f64..1.0) * (1.0 - rho);
        let base = peak_velocity(&DispersionParams::new(rho, mu, 0.0));
        for gamma in [0.5, 1.0, 2.0, 3.0] {
            let r = peak_velocity(&DispersionParams::new(rho, mu, gamma));
            if (r.v_peak - base.v_peak).abs() > 1e-12 || r.delta != base.delta {
                gamma_ok = false;
            }
        }
    }

    let pass = worst < 1e-8 && grover_ok && gamma_ok;
    report(
        "4 (peak velocity)",
        pass,
        &format!(
            "closed vs numeric worst {worst:.2e} over 500 pairs, Grover fallback {:.12} (want {:.12}), γ-invariant: {gamma_ok}, {} ms",
            gr.v_peak,
            1.0 / 3.0f64.sqrt(),
            start.elapsed().as_millis()
        ),
    );
    assert!(
        start.elapsed().as_secs() < 30,
        "runtime budget 30 s exceeded"
    );
    assert!(pass);
}

#[test]
fn criterion_5_family_maxima() {
    let start = std::time::Instant::now();
    // c1_vmax dominates a 101 × 11 (θ13, θ23) grid
    let mut c1_ok = true;
    let mut worst_gap = 0.0f64;
    for j in 0..11 {
        let theta23 = -PI / 2.0 + PI * j as f64 / 10.0;
        let vm = c1_vmax(theta23);
        for i in 0..101 {
            let theta13 = -PI / 2.0 + PI * i as f64 / 100.0;
            let v = peak_velocity(&c1_dispersion_params(theta13, theta23)).v_peak;
            if v > vm + 1e-9 {
                c1_ok = false;
                worst_gap = worst_gap.max(v - vm);
            }
        }
    }
    // c2_vmax(κ) = |cos κ| attained at θ23 = 0, δ = π/2 − κ within 1e-6
    let mut c2_ok = true;
    let mut worst_attain = 0.0f64;
    for j in 0..11 {
        let kappa = PI / 2.0 * j as f64 / 10.0;
        let at_max =
            peak_velocity(&c2_dispersion_params(PI / 2.0 - kappa, kappa, 0.0).unwrap()).v_peak;
        let err = (at_max - c2_vmax(kappa)).abs();
        worst_attain = worst_attain.max(err);
        if err > 1e-6 {
            c2_ok = false;
        }
        // and it dominates a coarse admissible grid
        for i in 0..41 {
            let delta = -PI + 2.0 * PI * i as f64 / 40.0;
            for l in 0..11 {
                let theta23 = -PI / 2.0 + PI * l as f64 / 10.0;
                if let Ok(p) = c2_dispersion_params(delta, kappa, theta23) {
                    if peak_velocity(&p).v_peak > c2_vmax(kappa) + 1e-9 {
                        c2_ok = false;
                    }
                }
            }
        }
    }
    let pass = c1_ok && c2_ok;
    report(
        "5 (family maxima)",
        pass,
        &format!(
            "c1_vmax dominates grid: {c1_ok} (worst overshoot {worst_gap:.2e}), c2 max attained within {worst_attain:.2e}: {c2_ok}, {} ms",
            start.elapsed().as_millis()
        ),
    );
    assert!(
        start.elapsed().as_secs() < 60,
        "runtime budget 60 s exceeded"
    );
    assert!(pass);
}

/// Trapezoidal quadrature of the defining integrals, independent of the
/// library's Gauss–Legendre path: Ψ[i][j] = ∫ dk/2π v_i(k) v_j*(k)/‖v(k)‖².
fn psi_trapezoid(params: &FamilyParams, n: usize) -> [[Complex; 3]; 3] {
    let mut acc = [[Complex::new(0.0, 0.0); 3]; 3];
    for s in 0..n {
        let k = -PI + 2.0 * PI * s as f64 / n as f64;
        let v = stationary_state(params, k).unwrap();
        let norm = v.norm_sqr();
        for i in 0..3 {
            for j in 0..3 {
                acc[i][j] += v.0[i] * v.0[j].conj() / Complex::new(norm * n as f64, 0.0);
            }
        }
    }
    acc
}

fn i_n_trapezoid(nf: &NormFactors, m: i32, n: usize) -> Complex {
    let mut acc = Complex::new(0.0, 0.0);
    for s in 0..n {
        let k = -PI + 2.0 * PI * s as f64 / n as f64;
        acc += Complex::from_polar(1.0, m as f64 * k) / Complex::new(nf.n(k) * n as f64, 0.0);
    }
    acc
}

#[test]
fn criterion_6_trapping_closed_vs_quadrature() {
    let start = std::time::Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(60);
    let mut worst_component = 0.0f64;
    let mut worst_i = 0.0f64;
    let mut draws = Vec::new();
    while draws.len() < 20 {
        let p = FamilyParams::C1(sample_c1(&mut rng));
        let nf = norm_factors(&p).unwrap();
        if nf.a - 2.0 * nf.b.abs() > 0.05 {
            draws.push(p);
        }
    }
    while draws.len() < 40 {
        let p = FamilyParams::C2(sample_c2(&mut rng));
        let nf = norm_factors(&p).unwrap();
        if nf.a - 2.0 * nf.b.abs() > 0.05 {
            draws.push(p);
        }
    }
    for params in &draws {
        let tr = limiting_amplitudes(params).unwrap();
        let quad = psi_trapezoid(params, 65536);
        let cols = [&tr.psi_l, &tr.psi_s, &tr.psi_r];
        for (j, col) in cols.iter().enumerate() {
            for i in 0..3 {
                worst_component = worst_component.max((col.0[i] - quad[i][j]).norm());
            }
        }
        let p_quad: f64 = quad.iter().flatten().map(|z| z.norm_sqr()).sum::<f64>() / 3.0;
        worst_component = worst_component.max((tr.p_infinity - p_quad).abs());
        worst_component = worst_component.max((p_infinity_closed(params).unwrap() - p_quad).abs());

        let nf = norm_factors(params).unwrap();
        let ri = residue_integrals(&nf).unwrap();
        worst_i = worst_i.max((i_n_trapezoid(&nf, 0, 65536) - Complex::new(ri.i0, 0.0)).norm());
        worst_i = worst_i.max((i_n_trapezoid(&nf, 1, 65536) - ri.i1).norm());
        worst_i = worst_i.max((i_n_trapezoid(&nf, -1, 65536) - ri.i_minus_1()).norm());
    }

    // γ-independence (C1) and κ-only dependence (C2) of P∞ to 1e-10
    let mut invariance_ok = true;
    let mut base: Option<f64> = None;
    for _ in 0..10 {
        let p = C1Params {
            gamma2: rng.gen_range(-PI..PI),
            gamma4: rng.gen_range(-PI..PI),
            gamma5: rng.gen_range(-PI..PI),
            theta13: 0.45,
            theta23: 2.0,
        };
        let tr = limiting_amplitudes(&FamilyParams::C1(p)).unwrap();
        match base {
            None => base = Some(tr.p_infinity),
            Some(b) => invariance_ok &= (tr.p_infinity - b).abs() < 1e-10,
        }
    }
    let kappa = 0.9;
    let mut base2: Option<f64> = None;
    for _ in 0..10 {
        let g1 = rng.gen_range(-PI..PI);
        let g2 = rng.gen_range(-PI..PI);
        let p = C2Params {
            gamma1: g1,
            gamma2: g2,
            gamma4: kappa + g1 - g2,
            gamma5: rng.gen_range(-PI..PI),
            delta: 0.8,
            theta23: 1.2,
        };
        let tr = limiting_amplitudes(&FamilyParams::C2(p)).unwrap();
        match base2 {
            None => base2 = Some(tr.p_infinity),
            Some(b) => invariance_ok &= (tr.p_infinity - b).abs() < 1e-10,
        }
    }

    let pass = worst_component < 1e-8 && worst_i < 1e-8 && invariance_ok;
    report(
        "6 (trapping closed form vs quadrature)",
        pass,
        &format!(
            "worst ψ/P∞ deviation {worst_component:.2e}, worst I_n deviation {worst_i:.2e}, γ/κ invariance: {invariance_ok}, {} ms",
            start.elapsed().as_millis()
        ),
    );
    assert!(
        start.elapsed().as_secs() < 60,
        "runtime budget 60 s exceeded"
    );
    assert!(pass);
}

#[test]
fn criterion_7_simulation_cross_oracle() {
    let start = std::time::Instant::now();
    let mut pass = true;
    let mut lines = Vec::new();
    let t = 2000;
    for (label, family) in c1_points()
        .into_iter()
        .map(|p| ("c1", FamilyParams::C1(p)))
        .chain(c2_points().into_iter().map(|p| ("c2", FamilyParams::C2(p))))
    {
        let coin = family.coin().unwrap();
        let tr = limiting_amplitudes(&family).unwrap();
        let info = triwalk::coins::extract_dispersion_params(&coin).unwrap();
        let v = peak_velocity(&DispersionParams::new(info.rho, info.mu, info.gamma)).v_peak;
        let summary = simulate(&coin, &Initial::Mixed, t).unwrap();
        let dp = (summary.tail_average_trapping - tr.p_infinity).abs();
        let dv = (summary.front_velocity_estimate - v).abs();
        if dp >= 0.02 || dv >= 0.03 {
            pass = false;
            lines.push(format!("{label}: |ΔP|={dp:.4} |Δv|={dv:.4}"));
        }
    }
    let dft = simulate(&triwalk::coins::dft3_coin(), &Initial::Mixed, t).unwrap();
    if dft.tail_average_trapping >= 0.01 {
        pass = false;
        lines.push(format!("dft3 trapping {:.4}", dft.tail_average_trapping));
    }
    report(
        "7 (simulation cross-oracle)",
        pass,
        &format!(
            "10 family points at T=2000 within |ΔP|<0.02, |Δv|<0.03; DFT3 tail {:.2e}; {}{} ms",
            dft.tail_average_trapping,
            if lines.is_empty() {
                String::new()
            } else {
                format!("violations: {}; ", lines.join(", "))
            },
            start.elapsed().as_millis()
        ),
    );
    assert!(
        start.elapsed().as_secs() < 300,
        "runtime budget 5 min exceeded"
    );
    assert!(pass);
}

#[test]
fn criterion_8_decay_law() {
    let start = std::time::Instant::now();
    let t = 4096;

    let grover = simulate(&grover_coin(), &Initial::Mixed, t).unwrap();
    let p_inf = limiting_amplitudes(&FamilyParams::C1(grover_c1_params()))
        .unwrap()
        .p_infinity;
    let grover_slope = triwalk::simulator::decay_exponent(&grover.origin_series, p_inf).unwrap();
    let grover_in_band = (-1.4..=-0.6).contains(&grover_slope);

    let dft = simulate(&triwalk::coins::dft3_coin(), &Initial::Mixed, t).unwrap();
    let dft_slope = triwalk::simulator::decay_exponent(&dft.origin_series, 0.0).unwrap();
    let dft_in_band = (-1.4..=-0.6).contains(&dft_slope);

    let pass = grover_in_band && dft_in_band;
    report(
        "8 (decay law)",
        pass,
        &format!(
            "fitted envelope slopes at T=4096: Grover {grover_slope:.3} (band [-1.4,-0.6]: {grover_in_band}), DFT3 {dft_slope:.3} (in band: {dft_in_band}), {} ms",
            start.elapsed().as_millis()
        ),
    );
    if !grover_in_band {
        println!(
            "criterion 8 note: the Grover origin-probability residual is dominated by the \
             2·Re⟨ψ∞,η(t)⟩ cross term, whose local-maxima envelope decays as t^(-1/2) \
             (measured slope ≈ -0.50 for every initial coin state); the asserted band \
             [-1.4,-0.6] presumes the ‖η‖² ~ t^(-1) term dominates instead. The envelope \
             fit and the P∞ subtraction are exactly as documented on decay_exponent."
        );
    }
    assert!(
        start.elapsed().as_secs() < 120,
        "runtime budget 2 min exceeded"
    );
    assert!(pass);
}

/// Structural features of the reference datasets: cusp spikes on the cusp
/// curve, velocity zeros at θ23 = ±π/2, and the C2 admissibility region.
#[test]
fn dataset_structure_assertions() {
    // velocity cut at θ23 = π/4: kinks of v_peak(θ13) sit exactly on the cusp
    // curve; over a full period there are two, in [-π/2, π/2] one
    let theta23 = PI / 4.0;
    let n = 2001;
    let mut vs = Vec::with_capacity(n);
    for i in 0..n {
        let theta13 = -PI + 2.0 * PI * i as f64 / (n - 1) as f64;
        vs.push((
            theta13,
            peak_velocity(&c1_dispersion_params(theta13, theta23)).v_peak,
        ));
    }
    let mut kinks = Vec::new();
    for i in 1..n - 1 {
        let d1 = (vs[i].1 - vs[i - 1].1) / (vs[i].0 - vs[i - 1].0);
        let d2 = (vs[i + 1].1 - vs[i].1) / (vs[i + 1].0 - vs[i].0);
        if (d2 - d1).abs() > 0.3 {
            kinks.push(vs[i].0);
        }
    }
    // cluster adjacent grid hits
    let mut cusps: Vec<f64> = Vec::new();
    for k in kinks {
        // velocity zeros at ±π/2 also kink; keep only interior positive-v kinks
        if peak_velocity(&c1_dispersion_params(k, theta23)).v_peak < 0.1 {
            continue;
        }
        if cusps.last().map_or(true, |&c| (k - c).abs() > 0.05) {
            cusps.push(k);
        }
    }
    let expected = [(1.0f64 / 3.0).asin(), PI - (1.0f64 / 3.0).asin()];
    assert_eq!(cusps.len(), 2, "cusps at {cusps:?}");
    for (got, want) in cusps.iter().zip(expected.iter()) {
        assert!(
            (got - want).abs() < 2.0 * PI / (n - 1) as f64 * 2.0,
            "cusp at {got}, expected {want}"
        );
    }
    let in_half_range = cusps.iter().filter(|&&c| c.abs() <= PI / 2.0).count();
    assert_eq!(in_half_range, 1);
    // the cusp locations lie on the cusp curve for this θ23
    for &c in &cusps {
        let (a, b) = triwalk::kinematics::c1_cusp_curve(c).unwrap();
        let hit = (a - theta23).abs() < 0.01 || (b - theta23).abs() < 0.01;
        assert!(hit, "cusp {c} not on the curve");
    }

    // velocity zeros at θ23 = ±π/2 for both families
    for theta13 in [-0.7, 0.0, 0.9] {
        for s in [-1.0, 1.0] {
            let v = peak_velocity(&c1_dispersion_params(theta13, s * PI / 2.0)).v_peak;
            assert!(v < 1e-8, "c1 v = {v}");
        }
    }
    let kappa = PI / 5.0;
    for s in [-1.0, 1.0] {
        let v = peak_velocity(&c2_dispersion_params(1.0, kappa, s * PI / 2.0).unwrap()).v_peak;
        assert!(v < 1e-8, "c2 v = {v}");
    }

    // C2 admissibility at κ = π/5: the inadmissible δ set is nonempty and
    // matches the condition row by row; the surface maximum is |cos κ| at
    // (θ23 = 0, δ = π/2 − κ)
    let mut admissible = 0;
    let mut inadmissible = 0;
    let mut best = 0.0f64;
    for i in 0..181 {
        let delta = -PI + 2.0 * PI * i as f64 / 180.0;
        let valid =
            (delta + kappa).sin().abs() >= kappa.sin().abs() && (delta + kappa).sin() != 0.0;
        match c2_dispersion_params(delta, kappa, 0.4) {
            Ok(p) => {
                assert!(valid, "row should be inadmissible at delta = {delta}");
                admissible += 1;
                best = best.max(peak_velocity(&p).v_peak);
            }
            Err(_) => {
                assert!(!valid, "row should be admissible at delta = {delta}");
                inadmissible += 1;
            }
        }
    }
    assert!(admissible > 0 && inadmissible > 0);
    assert!(best <= c2_vmax(kappa) + 1e-9);
    let vmax_attained =
        peak_velocity(&c2_dispersion_params(PI / 2.0 - kappa, kappa, 0.0).unwrap()).v_peak;
    assert!((vmax_attained - kappa.cos()).abs() < 1e-9);

    // trapping surfaces: P∞ stays in [0, 1] on parameter grids (skipping
    // contour-pole rows, which the scan CSV flags invalid)
    for i in 0..15 {
        let theta13 = -1.4 + 2.8 * i as f64 / 14.0;
        for j in 0..15 {
            let theta23 = -1.4 + 2.8 * j as f64 / 14.0;
            let params = FamilyParams::C1(C1Params {
                theta13,
                theta23,
                ..Default::default()
            });
            let nf = norm_factors(&params).unwrap();
            if nf.a - 2.0 * nf.b.abs() < 1e-6 {
                continue;
            }
            let p = limiting_amplitudes(&params).unwrap().p_infinity;
            assert!((0.0..=1.0 + 1e-12).contains(&p), "P∞ = {p}");
        }
    }
    for i in 0..15 {
        let delta = -PI + 2.0 * PI * i as f64 / 14.0;
        for j in 0..15 {
            let theta23 = -1.4 + 2.8 * j as f64 / 14.0;
            if let Ok(()) = (C2Params {
                gamma2: kappa,
                delta,
                theta23,
                ..Default::default()
            })
            .validate()
            {
                let params = FamilyParams::C2(C2Params {
                    gamma2: kappa,
                    delta,
                    theta23,
                    ..Default::default()
                });
                let nf = norm_factors(&params).unwrap();
                if nf.a - 2.0 * nf.b.abs() < 1e-6 {
                    continue;
                }
                let p = limiting_amplitudes(&params).unwrap().p_infinity;
                assert!((0.0..=1.0 + 1e-12).contains(&p), "P∞ = {p}");
            }
        }
    }
    report(
        "datasets (structural assertions)",
        true,
        "cusps, zeros, admissibility, P∞ bounds",
    );
}
