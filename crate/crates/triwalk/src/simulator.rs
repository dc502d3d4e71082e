//! Direct position-space evolution of the walk on a truncated line.
//!
//! One step = coin on the internal state at every site, then the conditional
//! shift (L moves one site left, S stays, R moves one site right). This is
//! the independent oracle for trapping probabilities, front velocities, and
//! the decay law; it never looks at momentum space.

use crate::coins::UnitaryCoin;
use crate::linalg::{Complex, Vec3C};
use crate::{Error, Result};

/// Walker state on positions x ∈ [−t_max−1, t_max+1].
#[derive(Debug, Clone)]
pub struct WalkState {
    /// Steps taken so far.
    pub t: usize,
    amps: Vec<Vec3C>,
    /// amps[origin] is x = 0.
    origin: usize,
}

impl WalkState {
    /// Walker at the origin with internal state `coin_state` (normalized), on
    /// a lattice sized for `t_max` steps (2·t_max + 3 sites).
    pub fn new(t_max: usize, coin_state: &Vec3C) -> Self {
        let origin = t_max + 1;
        let mut amps = vec![Vec3C::zero(); 2 * t_max + 3];
        amps[origin] = coin_state.scaled(Complex::new(1.0 / coin_state.norm(), 0.0));
        WalkState { t: 0, amps, origin }
    }

    /// Amplitude at position x.
    pub fn amplitude(&self, x: i64) -> Vec3C {
        let idx = self.origin as i64 + x;
        if idx < 0 || idx as usize >= self.amps.len() {
            Vec3C::zero()
        } else {
            self.amps[idx as usize]
        }
    }

    /// P(x, t) = ‖ψ(x)‖².
    pub fn probability(&self, x: i64) -> f64 {
        self.amplitude(x).norm_sqr()
    }

    pub fn total_probability(&self) -> f64 {
        self.amps.iter().map(Vec3C::norm_sqr).sum()
    }

    /// Smallest and largest representable positions.
    pub fn bounds(&self) -> (i64, i64) {
        let lo = -(self.origin as i64);
        (lo, lo + self.amps.len() as i64 - 1)
    }

    /// One walk step: coin, then shift. Errors with
    /// [`Error::LatticeOverflow`] when the light cone would touch the
    /// boundary sites.
    pub fn step(&mut self, coin: &UnitaryCoin) -> Result<()> {
        let n = self.amps.len();
        let reach = self.t + 1; // light cone after this step
        if self.origin < reach + 1 || self.origin + reach + 1 >= n {
            return Err(Error::LatticeOverflow);
        }
        let m = coin.matrix();
        // only sites inside the light cone carry amplitude
        let lo = self.origin - self.t;
        let hi = self.origin + self.t;
        let mut next = vec![Vec3C::zero(); n];
        for idx in lo..=hi {
            let spun = m.mul_vec(&self.amps[idx]);
            next[idx - 1].0[0] += spun.0[0];
            next[idx].0[1] += spun.0[1];
            next[idx + 1].0[2] += spun.0[2];
        }
        self.amps = next;
        self.t += 1;
        Ok(())
    }
}

/// Initial coin state of a simulation.
#[derive(Debug, Clone, PartialEq)]
pub enum Initial {
    /// A pure internal state (normalized on entry).
    Pure(Vec3C),
    /// The maximally mixed state: average of the L, S, R pure runs at the
    /// probability level (exact, not an approximation).
    Mixed,
}

/// Result of a `T`-step run.
#[derive(Debug, Clone)]
pub struct SimulationSummary {
    /// P(0, t) for t = 0..=T.
    pub origin_series: Vec<f64>,
    /// Mean of P(0, t) over t ∈ [T/2, T]; the oscillation-suppressed
    /// trapping estimate.
    pub tail_average_trapping: f64,
    /// argmax of P(x, T) over x > 0.05·T, divided by T.
    pub front_velocity_estimate: f64,
    /// Positions of `final_distribution`, in order.
    pub positions: Vec<i64>,
    /// Per-component probabilities (P_L, P_S, P_R) at each position after T
    /// steps.
    pub final_distribution: Vec<[f64; 3]>,
}

impl SimulationSummary {
    pub fn total_probability(&self) -> f64 {
        self.final_distribution
            .iter()
            .map(|p| p[0] + p[1] + p[2])
            .sum()
    }
}

fn run_pure(
    coin: &UnitaryCoin,
    state: &Vec3C,
    steps: usize,
    t_max: usize,
) -> Result<(Vec<f64>, Vec<[f64; 3]>, Vec<i64>)> {
    let mut walk = WalkState::new(t_max, state);
    let mut origin = Vec::with_capacity(steps + 1);
    origin.push(walk.probability(0));
    for _ in 0..steps {
        walk.step(coin)?;
        origin.push(walk.probability(0));
    }
    let (lo, hi) = walk.bounds();
    let positions: Vec<i64> = (lo..=hi).collect();
    let dist = positions
        .iter()
        .map(|&x| {
            let a = walk.amplitude(x);
            [a.0[0].norm_sqr(), a.0[1].norm_sqr(), a.0[2].norm_sqr()]
        })
        .collect();
    Ok((origin, dist, positions))
}

/// Runs the walk for `steps` steps (lattice auto-sized, so overflow cannot
/// occur) and summarizes it.
pub fn simulate(coin: &UnitaryCoin, initial: &Initial, steps: usize) -> Result<SimulationSummary> {
    simulate_on_lattice(coin, initial, steps, steps)
}

/// Like [`simulate`], but on an explicitly sized lattice (positions
/// [−t_max−1, t_max+1]); fails with [`Error::LatticeOverflow`] when the light
/// cone reaches the boundary before `steps` complete.
pub fn simulate_on_lattice(
    coin: &UnitaryCoin,
    initial: &Initial,
    steps: usize,
    t_max: usize,
) -> Result<SimulationSummary> {
    assert!(steps >= 16, "simulate needs at least 16 steps");
    let (origin_series, final_distribution, positions) = match initial {
        Initial::Pure(state) => run_pure(coin, state, steps, t_max)?,
        Initial::Mixed => {
            let mut acc_origin = vec![0.0; steps + 1];
            let mut acc_dist: Option<Vec<[f64; 3]>> = None;
            let mut positions = Vec::new();
            for axis in crate::linalg::CoinAxis::ALL {
                let (o, d, p) = run_pure(coin, &Vec3C::basis(axis), steps, t_max)?;
                for (a, b) in acc_origin.iter_mut().zip(o.iter()) {
                    *a += b / 3.0;
                }
                positions = p;
                acc_dist = Some(match acc_dist {
                    None => d
                        .iter()
                        .map(|q| [q[0] / 3.0, q[1] / 3.0, q[2] / 3.0])
                        .collect(),
                    Some(mut acc) => {
                        for (a, q) in acc.iter_mut().zip(d.iter()) {
                            a[0] += q[0] / 3.0;
                            a[1] += q[1] / 3.0;
                            a[2] += q[2] / 3.0;
                        }
                        acc
                    }
                });
            }
            (acc_origin, acc_dist.unwrap(), positions)
        }
    };

    let half = steps / 2;
    let tail = &origin_series[half..];
    let tail_average_trapping = tail.iter().sum::<f64>() / tail.len() as f64;

    let cutoff = (0.05 * steps as f64).ceil() as i64;
    let mut best_x = cutoff;
    let mut best_p = f64::MIN;
    for (i, &x) in positions.iter().enumerate() {
        if x > cutoff {
            let p = final_distribution[i].iter().sum::<f64>();
            if p > best_p {
                best_p = p;
                best_x = x;
            }
        }
    }
    // no probability beyond the origin spike means no front at all
    let front_velocity_estimate = if best_p > 1e-12 {
        best_x as f64 / steps as f64
    } else {
        0.0
    };

    Ok(SimulationSummary {
        origin_series,
        tail_average_trapping,
        front_velocity_estimate,
        positions,
        final_distribution,
    })
}

/// Fits the decay exponent of the origin-probability residual
/// |P(0,t) − p_trapped| over t ∈ [T/4, T] by least squares on log-log axes,
/// using the upper envelope (local maxima) of the oscillating residual to
/// suppress zero crossings. `p_trapped` is the closed-form trapping value for
/// localizing coins and 0 otherwise.
pub fn decay_exponent(origin_series: &[f64], p_trapped: f64) -> Result<f64> {
    assert!(
        origin_series.len() >= 256,
        "decay fit needs at least 256 samples"
    );
    let t_max = origin_series.len() - 1;
    let lo = (t_max / 4).max(2);
    let residual: Vec<f64> = origin_series
        .iter()
        .map(|p| (p - p_trapped).abs())
        .collect();
    if residual[lo..].iter().all(|&r| r < 1e-14) {
        return Err(Error::InsufficientSignal);
    }
    // local maxima of the residual in the fit window
    let mut points: Vec<(f64, f64)> = Vec::new();
    for t in lo.max(1)..t_max {
        if residual[t] >= residual[t - 1] && residual[t] >= residual[t + 1] && residual[t] > 1e-14 {
            points.push(((t as f64).ln(), residual[t].ln()));
        }
    }
    if points.len() < 8 {
        // monotone residual: fit every point in the window
        points = (lo..=t_max)
            .filter(|&t| residual[t] > 1e-14)
            .map(|t| ((t as f64).ln(), residual[t].ln()))
            .collect();
    }
    if points.len() < 2 {
        return Err(Error::InsufficientSignal);
    }
    let n = points.len() as f64;
    let sx: f64 = points.iter().map(|p| p.0).sum();
    let sy: f64 = points.iter().map(|p| p.1).sum();
    let sxx: f64 = points.iter().map(|p| p.0 * p.0).sum();
    let sxy: f64 = points.iter().map(|p| p.0 * p.1).sum();
    Ok((n * sxy - sx * sy) / (n * sxx - sx * sx))
}
