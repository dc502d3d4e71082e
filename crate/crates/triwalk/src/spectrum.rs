//! Momentum-space evolution operator and Brillouin-zone spectral scans.
//!
//! Ũ(k) = D(e^{−ik}, 1, e^{ik})·C. A scan samples its eigenvalues across
//! [−π, π), stitches them into continuous tracks, and flags tracks whose
//! phase never moves — the numerical oracle for point spectrum that the
//! analytic classifier is tested against.

use crate::coins::{extract_dispersion_params, UnitaryCoin};
use crate::linalg::{eigensystem, mat_mul, Complex, Mat3C};
use crate::{Error, Result};
use std::f64::consts::PI;

/// Phase-deviation threshold below which a track counts as constant.
pub const CONSTANT_TRACK_TOL: f64 = 1e-8;

/// Largest phase motion allowed between consecutive samples of one track.
const TRACK_CONTINUITY_LIMIT: f64 = PI / 8.0;

/// The evolution operator at wavenumber k: D(e^{−ik}, 1, e^{ik})·C.
pub fn evolution_at_k(coin: &UnitaryCoin, k: f64) -> Mat3C {
    let d = Mat3C::diag(
        Complex::from_polar(1.0, -k),
        Complex::new(1.0, 0.0),
        Complex::from_polar(1.0, k),
    );
    mat_mul(&d, &coin.matrix())
}

/// Eigenvalue tracks of Ũ(k) over the Brillouin zone.
#[derive(Debug, Clone)]
pub struct SpectralScan {
    /// Sample points, uniform over [−π, π).
    pub k_grid: Vec<f64>,
    /// Three continuity-matched unit-modulus tracks.
    pub tracks: [Vec<Complex>; 3],
    /// Index of the track flagged constant, if any.
    pub constant_track_index: Option<usize>,
    /// Number of tracks flagged constant (3 for purely point spectra).
    pub n_constant_tracks: usize,
}

impl SpectralScan {
    /// Phase samples ω(k) = arg λ(k) of one track.
    pub fn omega_samples(&self, track: usize) -> Vec<f64> {
        self.tracks[track].iter().map(|z| z.arg()).collect()
    }

    /// Circular mean of a track.
    pub fn track_mean(&self, track: usize) -> Complex {
        let sum: Complex = self.tracks[track].iter().sum();
        sum / Complex::new(sum.norm(), 0.0)
    }

    /// Max phase deviation of a track from its circular mean.
    pub fn track_phase_deviation(&self, track: usize) -> f64 {
        let mean = self.track_mean(track);
        self.tracks[track]
            .iter()
            .map(|z| (z / mean).arg().abs())
            .fold(0.0, f64::max)
    }

    /// The two track indices other than `skip`.
    fn others(skip: usize) -> [usize; 2] {
        match skip {
            0 => [1, 2],
            1 => [0, 2],
            _ => [0, 1],
        }
    }

    /// Indices of the non-constant (band) tracks, ordered so the first has
    /// non-negative mean phase. Falls back to the two highest-variance tracks
    /// when no constant track exists.
    pub fn band_tracks(&self) -> [usize; 2] {
        let base = match self.constant_track_index {
            Some(c) => Self::others(c),
            None => {
                let mut devs: Vec<(usize, f64)> =
                    (0..3).map(|i| (i, self.track_phase_deviation(i))).collect();
                devs.sort_by(|a, b| b.1.total_cmp(&a.1));
                [devs[0].0, devs[1].0]
            }
        };
        let mean0 = self.track_mean(base[0]).arg();
        let mean1 = self.track_mean(base[1]).arg();
        if mean0 >= mean1 {
            base
        } else {
            [base[1], base[0]]
        }
    }
}

const ASSIGNMENTS: [[usize; 3]; 6] = [
    [0, 1, 2],
    [0, 2, 1],
    [1, 0, 2],
    [1, 2, 0],
    [2, 0, 1],
    [2, 1, 0],
];

/// Scans the spectrum of Ũ(k) over `n_samples` uniform k points.
///
/// Tracks are stitched by matching each new eigenvalue triple against a
/// linear extrapolation of the tracks so far (minimum total distance over
/// all six assignments), which stays stable when a dispersive band crosses
/// the constant eigenvalue. Fails with [`Error::TrackingFailure`] if any
/// matched step moves a track's phase by more than π/8.
pub fn spectral_scan(coin: &UnitaryCoin, n_samples: usize) -> Result<SpectralScan> {
    assert!(n_samples >= 64, "spectral_scan needs at least 64 samples");
    let k_grid: Vec<f64> = (0..n_samples)
        .map(|i| -PI + 2.0 * PI * i as f64 / n_samples as f64)
        .collect();
    let mut tracks: [Vec<Complex>; 3] = [
        Vec::with_capacity(n_samples),
        Vec::with_capacity(n_samples),
        Vec::with_capacity(n_samples),
    ];
    for (step, &k) in k_grid.iter().enumerate() {
        let es = eigensystem(&evolution_at_k(coin, k))?;
        if step == 0 {
            for t in 0..3 {
                tracks[t].push(es.values[t]);
            }
            continue;
        }
        // predict each track's next value; quadratic extrapolation keeps a
        // band grazing the constant eigenvalue (a parabola in k) from
        // swapping identities with it
        let predict: Vec<Complex> = (0..3)
            .map(|t| {
                let n = tracks[t].len();
                let three = Complex::new(3.0, 0.0);
                if n >= 3 {
                    three * tracks[t][n - 1] - three * tracks[t][n - 2] + tracks[t][n - 3]
                } else if n == 2 {
                    tracks[t][n - 1] * Complex::new(2.0, 0.0) - tracks[t][n - 2]
                } else {
                    tracks[t][n - 1]
                }
            })
            .collect();
        let mut best: Option<([usize; 3], f64)> = None;
        for assign in ASSIGNMENTS {
            let cost: f64 = (0..3)
                .map(|t| (es.values[assign[t]] - predict[t]).norm())
                .sum();
            if best.map_or(true, |(_, c)| cost < c) {
                best = Some((assign, cost));
            }
        }
        let (assign, _) = best.unwrap();
        for t in 0..3 {
            let new = es.values[assign[t]];
            let prev = *tracks[t].last().unwrap();
            if (new / prev).arg().abs() > TRACK_CONTINUITY_LIMIT {
                return Err(Error::TrackingFailure);
            }
            tracks[t].push(new);
        }
    }

    let scan = SpectralScan {
        k_grid,
        tracks,
        constant_track_index: None,
        n_constant_tracks: 0,
    };
    let consts: Vec<usize> = (0..3)
        .filter(|&t| scan.track_phase_deviation(t) < CONSTANT_TRACK_TOL)
        .collect();
    Ok(SpectralScan {
        constant_track_index: consts.first().copied(),
        n_constant_tracks: consts.len(),
        ..scan
    })
}

/// ω(k) = arccos(ρ cos(k−γ) − μ). Arguments up to 1e-12 past ±1 are clamped;
/// anything further out is a [`Error::DomainError`].
pub fn dispersion_omega(rho: f64, mu: f64, gamma: f64, k: f64) -> Result<f64> {
    let u = rho * (k - gamma).cos() - mu;
    if u.abs() > 1.0 + 1e-12 {
        return Err(Error::DomainError(u));
    }
    Ok(u.clamp(-1.0, 1.0).acos())
}

/// Worst deviation over the scan between the analytic dispersion relation
/// cos ω(k) = ρ cos(k−γ) − μ (parameters read off the coin) and the two
/// numerically tracked bands. The contract for family coins is < 1e-8.
pub fn verify_dispersion(coin: &UnitaryCoin, scan: &SpectralScan) -> Result<f64> {
    let info = extract_dispersion_params(coin)?;
    if scan.constant_track_index.is_none() {
        return Err(Error::InconsistentCoin("scan has no constant track"));
    }
    let bands = scan.band_tracks();
    let mut worst = 0.0f64;
    for &t in &bands {
        for (i, z) in scan.tracks[t].iter().enumerate() {
            let predicted = info.rho * (scan.k_grid[i] - info.gamma).cos() - info.mu;
            worst = worst.max((z.re - predicted).abs());
        }
    }
    Ok(worst)
}
