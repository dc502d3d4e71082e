//! Classify a zoo of coins: the named matrices, both localizing families,
//! the trivial branches, and random U(3) draws.
//!
//!     cargo run --release --example classify_coins

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::PI;
use triwalk::coins::{
    build_c1, build_c2, build_unitary, c_rho_coin, classify_coin, dft3_coin,
    extract_dispersion_params, grover_c1_params, grover_coin, C2Params, CoinClass, CoinParams,
    UnitaryCoin, CLASSIFY_TOL,
};
use triwalk::linalg::Mat3C;
use triwalk::spectrum::spectral_scan;

fn describe(name: &str, coin: &UnitaryCoin) {
    let cls = classify_coin(coin, CLASSIFY_TOL).unwrap();
    let scan = spectral_scan(coin, 256).unwrap();
    let disp = match cls.class {
        CoinClass::NoPointSpectrum => String::from("—"),
        _ => match extract_dispersion_params(coin) {
            Ok(info) => format!("ρ={:.4} γ={:+.4} μ={:+.4}", info.rho, info.gamma, info.mu),
            Err(_) => String::from("—"),
        },
    };
    println!(
        "{name:<22} {:<24} φ={:+.4}  constant tracks: {}  {disp}",
        format!("{:?}", cls.class),
        cls.det_phase,
        scan.n_constant_tracks,
    );
}

fn main() {
    println!("coin                   class                    det phase   spectral scan");
    println!("{}", "-".repeat(100));

    describe("Grover", &grover_coin());
    describe("DFT3", &dft3_coin());
    describe("identity", &UnitaryCoin::new(Mat3C::identity()).unwrap());
    describe("C1 @ Grover angles", &build_c1(&grover_c1_params()));
    describe("C_rho(0.55)", &c_rho_coin(0.55).unwrap());

    // the eigenvalue deformation of Grover, via its C2 parameter choice
    let phi = 0.8f64;
    let c_phi = build_c2(&C2Params {
        gamma1: PI,
        gamma2: PI,
        gamma4: -phi,
        gamma5: -phi,
        delta: phi + f64::atan2(1.0, 2.0 / phi.tan() / 3.0),
        theta23: -2.0f64.atan(),
    })
    .unwrap();
    describe("C_phi(0.8)", &c_phi);

    describe(
        "branch 1 (θ13=π/2)",
        &build_unitary(&CoinParams {
            theta13: PI / 2.0,
            theta12: 0.4,
            delta: 0.9,
            ..Default::default()
        }),
    );
    describe(
        "branch 2 (θ12=θ23=π/2)",
        &build_unitary(&CoinParams {
            theta12: PI / 2.0,
            theta23: PI / 2.0,
            theta13: 0.7,
            ..Default::default()
        }),
    );
    describe(
        "branch 3a (decoupled)",
        &build_unitary(&CoinParams {
            theta13: 0.8,
            delta: 0.3,
            gamma3: 0.6,
            gamma5: -0.6,
            ..Default::default()
        }),
    );

    println!("{}", "-".repeat(100));
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut localizing = 0;
    let n = 200;
    for _ in 0..n {
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
        if classify_coin(&coin, CLASSIFY_TOL).unwrap().class != CoinClass::NoPointSpectrum {
            localizing += 1;
        }
    }
    println!(
        "{localizing}/{n} random U(3) coins localize — the localizing families are a \
         zero-measure subset"
    );
}
