//! Group and peak velocities of the ballistic part of the walk.
//!
//! Both localizing families share the dispersion cos ω(k) = ρ cos(k−γ) − μ,
//! so the walk's front speed is a function of (ρ, μ) alone. The closed form
//! goes through Δ (the cosine of the inflection point); on the cusp locus
//! (ρ±μ)² = 1 the formula degenerates to 0/0 and a numeric maximizer with an
//! analytic band-edge candidate takes over.

use crate::{Error, Result};

/// Dispersion parameters with ρ kept non-negative (a signed ρ is the same
/// dispersion with γ shifted by π).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DispersionParams {
    pub rho: f64,
    pub mu: f64,
    pub gamma: f64,
}

impl DispersionParams {
    /// Folds a possibly signed ρ into the ρ ≥ 0, γ-shift convention.
    pub fn new(rho: f64, mu: f64, gamma: f64) -> Self {
        if rho < 0.0 {
            DispersionParams {
                rho: -rho,
                mu,
                gamma: crate::wrap_angle(gamma + std::f64::consts::PI),
            }
        } else {
            DispersionParams { rho, mu, gamma }
        }
    }

    /// (1−ρ²−μ²)² − 4ρ²μ² = (1−(ρ+μ)²)(1−(ρ−μ)²); zero on the cusp locus.
    pub fn discriminant(&self) -> f64 {
        let s = 1.0 - self.rho * self.rho - self.mu * self.mu;
        s * s - 4.0 * self.rho * self.rho * self.mu * self.mu
    }
}

/// How a peak velocity was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum PeakMethod {
    ClosedForm,
    NumericFallback,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PeakVelocityResult {
    /// max |dω/dk| ∈ [0, 1].
    pub v_peak: f64,
    /// Location of the maximum (inflection point of ω when closed-form).
    pub k0: f64,
    pub method: PeakMethod,
    /// Δ = cos(k₀−γ) when the closed form applied.
    pub delta: Option<f64>,
}

/// dω/dk = ρ sin(k−γ) / √(1 − (ρ cos(k−γ) − μ)²).
///
/// Returns [`Error::BandEdge`] within 1e-12 of |ρ cos(k−γ) − μ| = 1, where
/// the derivative may diverge or be one-sided.
pub fn group_velocity(p: &DispersionParams, k: f64) -> Result<f64> {
    let x = k - p.gamma;
    let u = p.rho * x.cos() - p.mu;
    if u.abs() >= 1.0 - 1e-12 {
        return Err(Error::BandEdge);
    }
    Ok(p.rho * x.sin() / (1.0 - u * u).sqrt())
}

/// |dω/dk| evaluated through the cancellation-free factorization
/// 1 ± u = (1 ∓ μ − ρ) + 2ρ{cos,sin}²(x/2); exact algebra, finite at band
/// edges whenever the limit is.
fn group_speed_stable(rho: f64, mu: f64, x: f64) -> f64 {
    let (sh, ch) = (0.5 * x).sin_cos();
    let one_plus_u = (1.0 - mu - rho) + 2.0 * rho * ch * ch;
    let one_minus_u = (1.0 + mu - rho) + 2.0 * rho * sh * sh;
    let den = (one_plus_u.max(0.0) * one_minus_u.max(0.0)).sqrt();
    let num = 2.0 * rho * (sh * ch).abs();
    if den == 0.0 {
        0.0
    } else {
        num / den
    }
}

const DISCRIMINANT_DEGENERATE: f64 = 1e-12;

/// Peak velocity max_k |dω/dk| for dispersion cos ω = ρ cos(k−γ) − μ.
///
/// Closed form via Δ when ρμ ≠ 0 and the discriminant is clear of zero;
/// μ = 0 gives v = ρ at k₀ − γ = π/2; ρ = 0 gives 0. On the degenerate locus
/// a 4096-point grid + golden-section search over the stable evaluator runs,
/// with the analytic band-edge value √ρ added as a candidate when ρ±μ = 1.
pub fn peak_velocity(p: &DispersionParams) -> PeakVelocityResult {
    let half_pi = std::f64::consts::FRAC_PI_2;
    if p.rho == 0.0 {
        return PeakVelocityResult {
            v_peak: 0.0,
            k0: p.gamma,
            method: PeakMethod::ClosedForm,
            delta: None,
        };
    }
    if p.mu == 0.0 {
        // limit of the root equation: cos k₀ = 0
        return PeakVelocityResult {
            v_peak: p.rho,
            k0: p.gamma + half_pi,
            method: PeakMethod::ClosedForm,
            delta: Some(0.0),
        };
    }
    let disc = p.discriminant();
    if disc > DISCRIMINANT_DEGENERATE {
        let delta = (p.rho * p.rho + p.mu * p.mu - 1.0 + disc.sqrt()) / (2.0 * p.rho * p.mu);
        // ρ at rounding level makes the Δ quotient pure noise; only a Δ
        // inside [−1, 1] is the genuine inflection cosine
        if delta.abs() <= 1.0 {
            let v_peak = p.rho * (1.0 - delta * delta).sqrt()
                / (1.0 - (p.mu - p.rho * delta) * (p.mu - p.rho * delta)).sqrt();
            return PeakVelocityResult {
                v_peak,
                k0: p.gamma + delta.acos(),
                method: PeakMethod::ClosedForm,
                delta: Some(delta),
            };
        }
    }

    // degenerate: maximize the stable evaluator over x ∈ [0, π]
    let n = 4096usize;
    let mut best_i = 0usize;
    let mut best_v = 0.0;
    for i in 0..=n {
        let x = std::f64::consts::PI * i as f64 / n as f64;
        let v = group_speed_stable(p.rho, p.mu, x);
        if v > best_v {
            best_v = v;
            best_i = i;
        }
    }
    let step = std::f64::consts::PI / n as f64;
    let mut a = step * best_i.saturating_sub(1) as f64;
    let mut b = (step * (best_i + 1) as f64).min(std::f64::consts::PI);
    let gr = (5.0f64.sqrt() - 1.0) / 2.0;
    let mut c = b - gr * (b - a);
    let mut d = a + gr * (b - a);
    while b - a > 1e-10 {
        if group_speed_stable(p.rho, p.mu, c) > group_speed_stable(p.rho, p.mu, d) {
            b = d;
        } else {
            a = c;
        }
        c = b - gr * (b - a);
        d = a + gr * (b - a);
    }
    let mut x_best = 0.5 * (a + b);
    let mut v_best = group_speed_stable(p.rho, p.mu, x_best);
    // supremum sits in the band-edge limit on the cusp locus
    if (p.rho + p.mu - 1.0).abs() <= 1e-9 && p.rho.sqrt() > v_best {
        v_best = p.rho.sqrt();
        x_best = std::f64::consts::PI;
    }
    if (p.rho - p.mu - 1.0).abs() <= 1e-9 && p.rho.sqrt() > v_best {
        v_best = p.rho.sqrt();
        x_best = 0.0;
    }
    PeakVelocityResult {
        v_peak: v_best,
        k0: p.gamma + x_best,
        method: PeakMethod::NumericFallback,
        delta: None,
    }
}

/// C1 dispersion parameters: ρ = |cos θ₁₃ cos θ₂₃|, μ = (1+sin θ₁₃)sin²θ₂₃/2,
/// γ ∈ {0, π} absorbing the sign of the product (γ₂+γ₄ enter only as a shift
/// of γ and never reach the velocity).
pub fn c1_dispersion_params(theta13: f64, theta23: f64) -> DispersionParams {
    let rho = theta13.cos() * theta23.cos();
    let mu = 0.5 * (1.0 + theta13.sin()) * theta23.sin() * theta23.sin();
    DispersionParams::new(rho, mu, 0.0)
}

/// C2 dispersion parameters:
/// ρ = √(sin δ sin(δ+2κ))/|sin(δ+κ)| · |cos θ₂₃|, μ = sin δ sin²θ₂₃ / (2 sin(δ+κ)).
pub fn c2_dispersion_params(delta: f64, kappa: f64, theta23: f64) -> Result<DispersionParams> {
    let sdk = (delta + kappa).sin();
    if sdk == 0.0 || kappa.sin().abs() > sdk.abs() {
        return Err(Error::InvalidC2Params);
    }
    let radicand = (delta.sin() * (delta + 2.0 * kappa).sin()).max(0.0);
    let rho = radicand.sqrt() / sdk.abs() * theta23.cos().abs();
    let mu = delta.sin() * theta23.sin() * theta23.sin() / (2.0 * sdk);
    Ok(DispersionParams::new(rho, mu, 0.0))
}

/// The two θ₂₃ branches of the cusp curve cos θ₂₃ = ±cos θ₁₃/(1+sin θ₁₃),
/// where the peak velocity has a discontinuous derivative (and its maximum).
/// Defined for θ₁₃ with |cos θ₁₃| ≤ 1 + sin θ₁₃, i.e. θ₁₃ ∈ [0, π].
pub fn c1_cusp_curve(theta13: f64) -> Result<(f64, f64)> {
    let denom = 1.0 + theta13.sin();
    if denom == 0.0 {
        return Err(Error::DomainError(theta13));
    }
    let r = theta13.cos() / denom;
    if r.abs() > 1.0 + 1e-12 {
        return Err(Error::DomainError(r));
    }
    let r = r.clamp(-1.0, 1.0);
    Ok((r.acos(), (-r).acos()))
}

/// Maximum C1 peak velocity over θ₁₃ at fixed θ₂₃ (attained on the cusp
/// curve): v = √(|cos θ₂₃|·cos(2 arctan((1−|cos θ₂₃|)/(1+|cos θ₂₃|)))).
pub fn c1_vmax(theta23: f64) -> f64 {
    let ac = theta23.cos().abs();
    if ac == 0.0 {
        return 0.0;
    }
    let t = ((1.0 - ac) / (1.0 + ac)).atan();
    (ac * (2.0 * t).cos()).max(0.0).sqrt()
}

/// Maximum C2 peak velocity over (δ, θ₂₃) at fixed κ: |cos κ|, attained at
/// θ₂₃ = 0, δ = π/2 − κ.
pub fn c2_vmax(kappa: f64) -> f64 {
    kappa.cos().abs()
}
