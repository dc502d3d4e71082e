//! The C2 peak-velocity surface over (δ, θ23) at κ = π/5, with the
//! admissibility region, and the maximum |cos κ| as a function of κ.
//!
//!     cargo run --release --example c2_velocity_surface

use std::f64::consts::PI;
use std::fmt::Write as _;
use triwalk::kinematics::{c2_dispersion_params, c2_vmax, peak_velocity};

fn main() -> std::io::Result<()> {
    std::fs::create_dir_all("output")?;
    let kappa = PI / 5.0;

    let mut surface = String::from("delta,theta23,kappa,v_peak,valid\n");
    let mut admissible = 0usize;
    let mut total = 0usize;
    for i in 0..161 {
        let delta = -PI + 2.0 * PI * i as f64 / 160.0;
        for j in 0..81 {
            let theta23 = -PI / 2.0 + PI * j as f64 / 80.0;
            total += 1;
            match c2_dispersion_params(delta, kappa, theta23) {
                Ok(p) => {
                    admissible += 1;
                    let _ = writeln!(
                        surface,
                        "{delta},{theta23},{kappa},{},1",
                        peak_velocity(&p).v_peak
                    );
                }
                Err(_) => {
                    let _ = writeln!(surface, "{delta},{theta23},{kappa},,0");
                }
            }
        }
    }
    std::fs::write("output/c2_velocity_surface.csv", surface)?;
    println!(
        "κ = π/5: {admissible}/{total} grid cells admissible; \
         maximum v = |cos κ| = {:.6} at θ23 = 0, δ = π/2 − κ = {:.6}",
        c2_vmax(kappa),
        PI / 2.0 - kappa
    );

    let mut vmax = String::from("kappa,v_max,v_at_optimum\n");
    for i in 0..181 {
        let k = -PI / 2.0 + PI * i as f64 / 180.0;
        let attained = peak_velocity(&c2_dispersion_params(PI / 2.0 - k, k, 0.0).unwrap()).v_peak;
        let _ = writeln!(vmax, "{k},{},{attained}", c2_vmax(k));
    }
    std::fs::write("output/c2_vmax.csv", vmax)?;
    println!("surfaces written to output/c2_velocity_surface.csv, output/c2_vmax.csv");
    Ok(())
}
