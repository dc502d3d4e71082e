//! Asymptotic trapping probability P∞ of the maximally mixed walker over the
//! family parameter planes, each value cross-checked against quadrature of
//! the defining integral at construction time.
//!
//!     cargo run --release --example trapping_surfaces

use std::f64::consts::PI;
use std::fmt::Write as _;
use triwalk::coins::{C1Params, C2Params};
use triwalk::trapping::{limiting_amplitudes, norm_factors, FamilyParams};

fn main() -> std::io::Result<()> {
    std::fs::create_dir_all("output")?;

    let mut c1 = String::from("theta13,theta23,P_infinity,valid\n");
    for i in 0..121 {
        let theta13 = -PI / 2.0 + PI * i as f64 / 120.0;
        for j in 0..121 {
            let theta23 = -PI / 2.0 + PI * j as f64 / 120.0;
            let params = FamilyParams::C1(C1Params {
                theta13,
                theta23,
                ..Default::default()
            });
            // the decoupled/identity corner puts the norm pole on the contour
            let computable = norm_factors(&params)
                .map(|nf| nf.a - 2.0 * nf.b.abs() > 1e-9)
                .unwrap_or(false);
            if computable {
                let tr = limiting_amplitudes(&params).unwrap();
                let _ = writeln!(c1, "{theta13},{theta23},{},1", tr.p_infinity);
            } else {
                let _ = writeln!(c1, "{theta13},{theta23},,0");
            }
        }
    }
    std::fs::write("output/c1_trapping_surface.csv", c1)?;

    let kappa = PI / 5.0;
    let mut c2 = String::from("delta,theta23,kappa,P_infinity,valid\n");
    for i in 0..121 {
        let delta = -PI + 2.0 * PI * i as f64 / 120.0;
        for j in 0..61 {
            let theta23 = -PI / 2.0 + PI * j as f64 / 60.0;
            let p = C2Params {
                gamma2: kappa,
                delta,
                theta23,
                ..Default::default()
            };
            let params = FamilyParams::C2(p);
            let computable = p.is_valid()
                && norm_factors(&params)
                    .map(|nf| nf.a - 2.0 * nf.b.abs() > 1e-9)
                    .unwrap_or(false);
            if computable {
                let tr = limiting_amplitudes(&params).unwrap();
                let _ = writeln!(c2, "{delta},{theta23},{kappa},{},1", tr.p_infinity);
            } else {
                let _ = writeln!(c2, "{delta},{theta23},{kappa},,0");
            }
        }
    }
    std::fs::write("output/c2_trapping_surface.csv", c2)?;

    let grover =
        limiting_amplitudes(&FamilyParams::C1(triwalk::coins::grover_c1_params())).unwrap();
    println!("Grover reference point: P∞ = {:.12}", grover.p_infinity);
    println!(
        "per-state trapping: L = {:.12}, S = {:.12}, R = {:.12}",
        grover.trapping_for(triwalk::linalg::CoinAxis::L),
        grover.trapping_for(triwalk::linalg::CoinAxis::S),
        grover.trapping_for(triwalk::linalg::CoinAxis::R),
    );
    println!("surfaces written to output/c1_trapping_surface.csv, output/c2_trapping_surface.csv");
    Ok(())
}
