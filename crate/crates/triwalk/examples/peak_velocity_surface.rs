//! The C1 peak-velocity surface over (θ13, θ23), its cusp curve, the
//! θ23 = π/4 cut with the derivative spike, and the per-θ23 maximum.
//!
//!     cargo run --release --example peak_velocity_surface

use std::f64::consts::PI;
use std::fmt::Write as _;
use triwalk::kinematics::{
    c1_cusp_curve, c1_dispersion_params, c1_vmax, peak_velocity, PeakMethod,
};

fn main() -> std::io::Result<()> {
    std::fs::create_dir_all("output")?;

    // full surface
    let n13 = 161;
    let n23 = 161;
    let mut surface = String::from("theta13,theta23,v_peak,method\n");
    for i in 0..n13 {
        let theta13 = -PI + 2.0 * PI * i as f64 / (n13 - 1) as f64;
        for j in 0..n23 {
            let theta23 = -PI / 2.0 + PI * j as f64 / (n23 - 1) as f64;
            let r = peak_velocity(&c1_dispersion_params(theta13, theta23));
            let _ = writeln!(
                surface,
                "{theta13},{theta23},{},{}",
                r.v_peak,
                match r.method {
                    PeakMethod::ClosedForm => "closed_form",
                    PeakMethod::NumericFallback => "numeric_fallback",
                }
            );
        }
    }
    std::fs::write("output/c1_velocity_surface.csv", surface)?;

    // the cut the spikes are visible in
    let mut cut = String::from("theta13,v_peak\n");
    for i in 0..2001 {
        let theta13 = -PI + 2.0 * PI * i as f64 / 2000.0;
        let v = peak_velocity(&c1_dispersion_params(theta13, PI / 4.0)).v_peak;
        let _ = writeln!(cut, "{theta13},{v}");
    }
    std::fs::write("output/c1_velocity_cut_theta23_pi4.csv", cut)?;
    let spike = (1.0f64 / 3.0).asin();
    println!(
        "cut at θ23 = π/4: spikes at θ13 = {spike:.6} and {:.6} (the cusp-curve roots)",
        PI - spike
    );

    // cusp curve and the maximum along it
    let mut curve = String::from("theta13,theta23_plus,theta23_minus,v_on_curve\n");
    for i in 0..401 {
        let theta13 = 1e-6 + (PI - 2e-6) * i as f64 / 400.0;
        if let Ok((plus, minus)) = c1_cusp_curve(theta13) {
            let v = peak_velocity(&c1_dispersion_params(theta13, plus)).v_peak;
            let _ = writeln!(curve, "{theta13},{plus},{minus},{v}");
        }
    }
    std::fs::write("output/c1_cusp_curve.csv", curve)?;

    let mut vmax = String::from("theta23,v_max\n");
    for j in 0..401 {
        let theta23 = -PI / 2.0 + PI * j as f64 / 400.0;
        let _ = writeln!(vmax, "{theta23},{}", c1_vmax(theta23));
    }
    std::fs::write("output/c1_vmax.csv", vmax)?;

    println!(
        "Grover sits on the cusp curve: v_max(θ23 = arccos(-1/√5)) = {}",
        { c1_vmax((-1.0 / 5.0f64.sqrt()).acos()) }
    );
    println!("surfaces written to output/c1_velocity_surface.csv and friends");
    Ok(())
}
