//! Coin construction and classification.
//!
//! The general 3×3 unitary is built from a quark-mixing-style parametrization
//! (three Euler angles, one CP phase, five outer phases). Point spectrum of
//! the walk survives only on two families inside it:
//!
//! - `C1` (five parameters): δ = 0, γ₁ = γ₂+γ₄, γ₃ = −γ₅, θ₁₂ = θ₂₃ — its
//!   determinant is 1 and the constant eigenvalue of the walk is exactly 1;
//! - `C2` (six parameters): γ₃ = −γ₅, θ₁₂ = θ₂₃, s₁₃ = −sin κ / sin(δ+κ)
//!   with κ = γ₂+γ₄−γ₁ — well defined only when |sin κ| ≤ |sin(δ+κ)|; the
//!   constant eigenvalue is e^{iκ} = det C.
//!
//! `classify_coin` decides, from the matrix alone, whether a unitary coin
//! keeps a k-independent eigenvalue and which branch of the solution taxonomy
//! it belongs to. Classification applies to the coin as given: multiplying a
//! localizing coin by a global phase generally moves it out of the normalized
//! form the conditions assume (the same walk physics, different bookkeeping).

use crate::linalg::{Complex, Mat3C};
use crate::{wrap_angle, Error, Result};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// Unitarity tolerance guaranteed by the coin constructors.
pub const COIN_UNITARITY_TOL: f64 = 1e-12;

/// Default tolerance for classification and dispersion-parameter extraction.
pub const CLASSIFY_TOL: f64 = 1e-10;

fn phase(angle: f64) -> Complex {
    Complex::from_polar(1.0, angle)
}

/// Full nine-parameter U(3) coin: Euler angles θ₁₂, θ₁₃, θ₂₃, the phase δ,
/// and the five independent outer phases γ₁..γ₅.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct CoinParams {
    pub theta12: f64,
    pub theta13: f64,
    pub theta23: f64,
    pub delta: f64,
    pub gamma1: f64,
    pub gamma2: f64,
    pub gamma3: f64,
    pub gamma4: f64,
    pub gamma5: f64,
}

impl CoinParams {
    /// All angles wrapped into (−π, π].
    pub fn normalized(&self) -> Self {
        CoinParams {
            theta12: wrap_angle(self.theta12),
            theta13: wrap_angle(self.theta13),
            theta23: wrap_angle(self.theta23),
            delta: wrap_angle(self.delta),
            gamma1: wrap_angle(self.gamma1),
            gamma2: wrap_angle(self.gamma2),
            gamma3: wrap_angle(self.gamma3),
            gamma4: wrap_angle(self.gamma4),
            gamma5: wrap_angle(self.gamma5),
        }
    }
}

/// Parameters of the first localizing family.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct C1Params {
    pub gamma2: f64,
    pub gamma4: f64,
    pub gamma5: f64,
    pub theta13: f64,
    pub theta23: f64,
}

impl C1Params {
    pub fn normalized(&self) -> Self {
        C1Params {
            gamma2: wrap_angle(self.gamma2),
            gamma4: wrap_angle(self.gamma4),
            gamma5: wrap_angle(self.gamma5),
            theta13: wrap_angle(self.theta13),
            theta23: wrap_angle(self.theta23),
        }
    }
}

/// Parameters of the second localizing family.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct C2Params {
    pub gamma1: f64,
    pub gamma2: f64,
    pub gamma4: f64,
    pub gamma5: f64,
    pub delta: f64,
    pub theta23: f64,
}

impl C2Params {
    /// κ = γ₂ + γ₄ − γ₁, wrapped into (−π, π].
    pub fn kappa(&self) -> f64 {
        wrap_angle(self.gamma2 + self.gamma4 - self.gamma1)
    }

    /// The family is defined only where |sin κ| ≤ |sin(δ+κ)| with
    /// sin(δ+κ) ≠ 0.
    pub fn is_valid(&self) -> bool {
        let kappa = self.kappa();
        let sdk = (self.delta + kappa).sin();
        sdk != 0.0 && kappa.sin().abs() <= sdk.abs()
    }

    pub fn validate(&self) -> Result<()> {
        if self.is_valid() {
            Ok(())
        } else {
            Err(Error::InvalidC2Params)
        }
    }

    pub fn normalized(&self) -> Self {
        C2Params {
            gamma1: wrap_angle(self.gamma1),
            gamma2: wrap_angle(self.gamma2),
            gamma4: wrap_angle(self.gamma4),
            gamma5: wrap_angle(self.gamma5),
            delta: wrap_angle(self.delta),
            theta23: wrap_angle(self.theta23),
        }
    }
}

/// A 3×3 coin matrix, unitary within 1e-12.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UnitaryCoin {
    matrix: Mat3C,
}

impl UnitaryCoin {
    /// Wraps a matrix after checking unitarity.
    pub fn new(matrix: Mat3C) -> Result<Self> {
        let err = matrix.unitarity_error();
        if err <= COIN_UNITARITY_TOL {
            Ok(UnitaryCoin { matrix })
        } else {
            Err(Error::NotUnitary(err))
        }
    }

    /// Like [`UnitaryCoin::new`] with a caller-chosen tolerance.
    pub fn with_tolerance(matrix: Mat3C, tol: f64) -> Result<Self> {
        let err = matrix.unitarity_error();
        if err <= tol {
            Ok(UnitaryCoin { matrix })
        } else {
            Err(Error::NotUnitary(err))
        }
    }

    pub fn matrix(&self) -> Mat3C {
        self.matrix
    }

    /// det C as a phase: φ = arg det C.
    pub fn det_phase(&self) -> f64 {
        self.matrix.det().arg()
    }
}

/// Branch of the point-spectrum solution taxonomy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum CoinClass {
    /// Generic coin: no k-independent eigenvalue, purely ballistic walk.
    NoPointSpectrum,
    /// θ₁₃ = π/2 branch: C_LL = C_RR = 0, purely point spectrum, no dynamics.
    PurePointTheta13,
    /// θ₁₂ = θ₂₃ = π/2 branch: also purely point, no dynamics.
    PurePointTheta12Theta23,
    /// θ₂₃ = 0 branch: the S state decouples and stays at the origin.
    Decoupled,
    /// First nontrivial localizing family (det C = 1).
    Class1,
    /// Second nontrivial localizing family (det C = e^{iκ}).
    Class2,
}

/// Classifier verdict: branch plus the determinant phase.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Classification {
    pub class: CoinClass,
    /// φ = arg det C.
    pub det_phase: f64,
    /// Set on Class1 coins that also sit in the C2 family (its κ = 0 slice,
    /// which is exactly the θ₁₃ = 0 slice of C1). The two families intersect;
    /// Class1 is reported preferentially.
    pub class2_equivalent: bool,
}

/// Dispersion data read off a localizing coin's diagonal:
/// C_LL = ρe^{iγ}, C_SS = e^{iφ} − 2μ.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DispersionInfo {
    pub rho: f64,
    pub gamma: f64,
    pub mu: f64,
    pub det_phase: f64,
}

/// General U(3) coin from the nine-parameter mixing-matrix form.
pub fn build_unitary(p: &CoinParams) -> UnitaryCoin {
    let p = p.normalized();
    let (s12, c12) = p.theta12.sin_cos();
    let (s13, c13) = p.theta13.sin_cos();
    let (s23, c23) = p.theta23.sin_cos();
    let ed = phase(p.delta);
    let (g1, g2, g3, g4, g5) = (p.gamma1, p.gamma2, p.gamma3, p.gamma4, p.gamma5);
    let r = |x: f64| Complex::new(x, 0.0);
    let matrix = Mat3C::from_rows([
        [
            phase(g1) * r(c12 * c13),
            phase(g2) * r(c13 * s12),
            phase(g3 - p.delta) * r(s13),
        ],
        [
            -phase(g4) * (r(c23 * s12) + ed * r(c12 * s13 * s23)),
            phase(-(g1 - g2 - g4)) * (r(c12 * c23) - ed * r(s12 * s13 * s23)),
            phase(-(g1 - g3 - g4)) * r(c13 * s23),
        ],
        [
            phase(g5) * (r(s12 * s23) - ed * r(c12 * c23 * s13)),
            -phase(-(g1 - g2 - g5)) * (r(c12 * s23) + ed * r(c23 * s12 * s13)),
            phase(-(g1 - g3 - g5)) * r(c13 * c23),
        ],
    ]);
    UnitaryCoin { matrix }
}

/// Coin of the first localizing family.
pub fn build_c1(p: &C1Params) -> UnitaryCoin {
    let p = p.normalized();
    let (s13, c13) = p.theta13.sin_cos();
    let (s23, c23) = p.theta23.sin_cos();
    let (g2, g4, g5) = (p.gamma2, p.gamma4, p.gamma5);
    let r = |x: f64| Complex::new(x, 0.0);
    let matrix = Mat3C::from_rows([
        [
            phase(g2 + g4) * r(c13 * c23),
            phase(g2) * r(c13 * s23),
            phase(-g5) * r(s13),
        ],
        [
            -phase(g4) * r(c23 * (1.0 + s13) * s23),
            r(c23 * c23 - s13 * s23 * s23),
            phase(-(g2 + g5)) * r(c13 * s23),
        ],
        [
            phase(g5) * r(s23 * s23 - c23 * c23 * s13),
            -phase(-(g4 - g5)) * r(c23 * (1.0 + s13) * s23),
            phase(-(g2 + g4)) * r(c13 * c23),
        ],
    ]);
    UnitaryCoin { matrix }
}

/// Coin of the second localizing family. Fails with [`Error::InvalidC2Params`]
/// outside the admissible region |sin κ| ≤ |sin(δ+κ)|.
pub fn build_c2(p: &C2Params) -> Result<UnitaryCoin> {
    p.validate()?;
    let p = p.normalized();
    let kappa = p.kappa();
    let sdk = (p.delta + kappa).sin();
    let a_fac = 1.0 / sdk;
    // radicand = sin δ sin(δ+2κ) = sin²(δ+κ) − sin²κ ≥ 0 inside the region
    let radicand = (a_fac * a_fac * p.delta.sin() * (p.delta + 2.0 * kappa).sin()).max(0.0);
    let b_fac = radicand.sqrt();
    let (s23, c23) = p.theta23.sin_cos();
    let sd = p.delta.sin();
    let ed = phase(p.delta);
    let (g1, g2, g4, g5) = (p.gamma1, p.gamma2, p.gamma4, p.gamma5);
    let r = |x: f64| Complex::new(x, 0.0);
    let matrix = Mat3C::from_rows([
        [
            phase(g1) * r(c23 * b_fac),
            phase(g2) * r(b_fac * s23),
            -phase(-(p.delta + g5)) * r(a_fac * kappa.sin()),
        ],
        [
            -phase(g1 - g2) * r(a_fac * s23 * c23 * sd),
            phase(kappa) * (r(c23 * c23) + ed * r(a_fac * s23 * s23 * kappa.sin())),
            phase(-(g1 - g4 + g5)) * r(b_fac * s23),
        ],
        [
            phase(g5) * (r(s23 * s23) + ed * r(c23 * c23 * a_fac * kappa.sin())),
            -phase(-(g4 - g5)) * r(a_fac * s23 * c23 * sd),
            phase(-g1) * r(c23 * b_fac),
        ],
    ]);
    Ok(UnitaryCoin { matrix })
}

/// The Grover coin (1/3)·[[−1,2,2],[2,−1,2],[2,2,−1]], built exactly.
pub fn grover_coin() -> UnitaryCoin {
    let e = |x: f64| Complex::new(x / 3.0, 0.0);
    UnitaryCoin {
        matrix: Mat3C::from_rows([
            [e(-1.0), e(2.0), e(2.0)],
            [e(2.0), e(-1.0), e(2.0)],
            [e(2.0), e(2.0), e(-1.0)],
        ]),
    }
}

/// The symmetric deformation C_ρ of the Grover coin (Grover at ρ = 1/√3),
/// built exactly from ρ.
pub fn c_rho_coin(rho: f64) -> Result<UnitaryCoin> {
    if !(0.0..=1.0).contains(&rho) {
        return Err(Error::DomainError(rho));
    }
    let off = rho * (2.0 - 2.0 * rho * rho).sqrt();
    let r = |x: f64| Complex::new(x, 0.0);
    UnitaryCoin::new(Mat3C::from_rows([
        [r(-rho * rho), r(off), r(1.0 - rho * rho)],
        [r(off), r(-1.0 + 2.0 * rho * rho), r(off)],
        [r(1.0 - rho * rho), r(off), r(-rho * rho)],
    ]))
}

/// The normalized three-point discrete Fourier coin (1/√3)·DFT₃ — the
/// standard non-localizing reference coin.
pub fn dft3_coin() -> UnitaryCoin {
    let w = |n: f64| Complex::from_polar(1.0 / 3.0f64.sqrt(), n * std::f64::consts::TAU / 3.0);
    UnitaryCoin {
        matrix: Mat3C::from_rows([
            [w(0.0), w(0.0), w(0.0)],
            [w(0.0), w(1.0), w(2.0)],
            [w(0.0), w(2.0), w(4.0)],
        ]),
    }
}

/// The three 2×2 minors of the coin entering the λ¹ characteristic-equation
/// coefficient: m_L over (S,R), m_S over (L,R), m_R over (L,S).
pub fn compute_minors(coin: &UnitaryCoin) -> (Complex, Complex, Complex) {
    let m = coin.matrix;
    let m_l = m[(1, 1)] * m[(2, 2)] - m[(1, 2)] * m[(2, 1)];
    let m_s = m[(0, 0)] * m[(2, 2)] - m[(0, 2)] * m[(2, 0)];
    let m_r = m[(0, 0)] * m[(1, 1)] - m[(0, 1)] * m[(1, 0)];
    (m_l, m_s, m_r)
}

/// Decides whether the walk driven by `coin` has point spectrum and, if so,
/// which branch of the taxonomy produced it.
///
/// The point-spectrum conditions relate the diagonal to the 2×2 minors with
/// φ = arg det C; a coin passing them is sorted into the trivial branches
/// (purely point, decoupled) or Class1/Class2 by its determinant phase.
pub fn classify_coin(coin: &UnitaryCoin, tol: f64) -> Result<Classification> {
    let m = coin.matrix;
    let err = m.unitarity_error();
    if err > tol.max(COIN_UNITARITY_TOL) {
        return Err(Error::NotUnitary(err));
    }
    let det_phase = coin.det_phase();
    let no_point = Classification {
        class: CoinClass::NoPointSpectrum,
        det_phase,
        class2_equivalent: false,
    };

    // C_LL = C_RR = 0 forces purely point spectrum regardless of the
    // normalized-form conditions (all characteristic coefficients lose their
    // k dependence).
    let branch_tol = tol.sqrt().max(tol);
    if m[(0, 0)].norm() <= branch_tol && m[(2, 2)].norm() <= branch_tol {
        let class = if (m[(0, 2)].norm() - 1.0).abs() <= branch_tol {
            CoinClass::PurePointTheta13
        } else {
            CoinClass::PurePointTheta12Theta23
        };
        return Ok(Classification {
            class,
            det_phase,
            class2_equivalent: false,
        });
    }

    let ephi = Complex::from_polar(1.0, det_phase);
    let inv = ephi.conj();
    let a11 = m[(0, 0)] - inv * (m[(0, 0)] * m[(1, 1)] - m[(0, 1)] * m[(1, 0)]);
    let a33 = m[(2, 2)] - inv * (m[(2, 2)] * m[(1, 1)] - m[(1, 2)] * m[(2, 1)]);
    let conj_pair = m[(2, 2)] - m[(0, 0)].conj();
    let a22 = (m[(1, 1)] - ephi)
        - inv * (m[(0, 0)] * m[(2, 2)] - m[(0, 2)] * m[(2, 0)] - Complex::new(1.0, 0.0));
    let worst = a11
        .norm()
        .max(a33.norm())
        .max(conj_pair.norm())
        .max(a22.norm());
    if worst > tol {
        return Ok(no_point);
    }

    if (m[(1, 1)].norm() - 1.0).abs() <= branch_tol {
        return Ok(Classification {
            class: CoinClass::Decoupled,
            det_phase,
            class2_equivalent: false,
        });
    }

    // (a33) already pinned C_RR = C_LL*, so arg C_LL + arg C_RR ≡ 0; after
    // removing the det phase the Class1 test collapses to φ ≡ 0 (mod 3π·2/2).
    let arg_sum = m[(0, 0)].arg() + m[(2, 2)].arg();
    let residual = wrap_angle(arg_sum - 2.0 * det_phase / 3.0);
    // angle residuals inherit entry noise amplified by 1/|C_LL|
    let angle_tol = (tol / m[(0, 0)].norm()).max(1e-9);
    if residual.abs() <= angle_tol {
        let class2_equivalent = m[(0, 2)].norm() <= branch_tol;
        Ok(Classification {
            class: CoinClass::Class1,
            det_phase,
            class2_equivalent,
        })
    } else {
        Ok(Classification {
            class: CoinClass::Class2,
            det_phase,
            class2_equivalent: false,
        })
    }
}

/// Reads ρ, γ, μ, φ off a localizing coin's diagonal.
///
/// Fails with [`Error::InconsistentCoin`] when the diagonal does not have the
/// point-spectrum form (C_LL ≠ C_RR* or μ not real within 1e-10) — calling
/// this on a `NoPointSpectrum` coin is a misclassification upstream.
pub fn extract_dispersion_params(coin: &UnitaryCoin) -> Result<DispersionInfo> {
    let m = coin.matrix;
    let det_phase = coin.det_phase();
    if (m[(2, 2)] - m[(0, 0)].conj()).norm() > CLASSIFY_TOL {
        return Err(Error::InconsistentCoin("C_LL != conj(C_RR)"));
    }
    let mu = (Complex::from_polar(1.0, det_phase) - m[(1, 1)]) * Complex::new(0.5, 0.0);
    if mu.im.abs() > 1e-10 {
        return Err(Error::InconsistentCoin("mu has imaginary part"));
    }
    Ok(DispersionInfo {
        rho: m[(0, 0)].norm(),
        gamma: m[(0, 0)].arg(),
        mu: mu.re,
        det_phase,
    })
}

/// On-disk coin format: either an explicit matrix of [re, im] pairs or a
/// named parameter set. Key names are fixed.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CoinFile {
    Matrix {
        matrix: [[[f64; 2]; 3]; 3],
    },
    Params {
        class: String,
        params: BTreeMap<String, f64>,
    },
}

impl CoinFile {
    pub fn from_coin(coin: &UnitaryCoin) -> Self {
        let m = coin.matrix;
        let mut matrix = [[[0.0; 2]; 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                matrix[i][j] = [m[(i, j)].re, m[(i, j)].im];
            }
        }
        CoinFile::Matrix { matrix }
    }

    /// Realizes the stored coin. Parameter sets accept exactly the angle
    /// names of their family; missing names default to 0.
    pub fn to_coin(&self) -> Result<UnitaryCoin> {
        match self {
            CoinFile::Matrix { matrix } => {
                let mut rows = [[Complex::new(0.0, 0.0); 3]; 3];
                for i in 0..3 {
                    for j in 0..3 {
                        rows[i][j] = Complex::new(matrix[i][j][0], matrix[i][j][1]);
                    }
                }
                UnitaryCoin::with_tolerance(Mat3C::from_rows(rows), 1e-8)
            }
            CoinFile::Params { class, params } => {
                let get = |name: &str| params.get(name).copied().unwrap_or(0.0);
                match class.as_str() {
                    "c1" => Ok(build_c1(&C1Params {
                        gamma2: get("gamma2"),
                        gamma4: get("gamma4"),
                        gamma5: get("gamma5"),
                        theta13: get("theta13"),
                        theta23: get("theta23"),
                    })),
                    "c2" => build_c2(&C2Params {
                        gamma1: get("gamma1"),
                        gamma2: get("gamma2"),
                        gamma4: get("gamma4"),
                        gamma5: get("gamma5"),
                        delta: get("delta"),
                        theta23: get("theta23"),
                    }),
                    "general" => Ok(build_unitary(&CoinParams {
                        theta12: get("theta12"),
                        theta13: get("theta13"),
                        theta23: get("theta23"),
                        delta: get("delta"),
                        gamma1: get("gamma1"),
                        gamma2: get("gamma2"),
                        gamma3: get("gamma3"),
                        gamma4: get("gamma4"),
                        gamma5: get("gamma5"),
                    })),
                    _ => Err(Error::InconsistentCoin("unknown coin class name")),
                }
            }
        }
    }
}

/// Grover's C1-family angles: θ₁₃ = arcsin(2/3), θ₂₃ = arccos(−1/√5).
pub fn grover_c1_params() -> C1Params {
    C1Params {
        gamma2: 0.0,
        gamma4: 0.0,
        gamma5: 0.0,
        theta13: (2.0f64 / 3.0).asin(),
        theta23: (-1.0 / 5.0f64.sqrt()).acos(),
    }
}

/// Uniform random C1 parameters.
pub fn sample_c1<R: rand::Rng>(rng: &mut R) -> C1Params {
    use std::f64::consts::PI;
    C1Params {
        gamma2: rng.gen_range(-PI..PI),
        gamma4: rng.gen_range(-PI..PI),
        gamma5: rng.gen_range(-PI..PI),
        theta13: rng.gen_range(-PI..PI),
        theta23: rng.gen_range(-PI..PI),
    }
}

/// Uniform random valid C2 parameters (rejection sampling), with a margin
/// keeping |sin(δ+κ)| away from zero so downstream quantities stay
/// well-conditioned.
pub fn sample_c2<R: rand::Rng>(rng: &mut R) -> C2Params {
    use std::f64::consts::PI;
    loop {
        let p = C2Params {
            gamma1: rng.gen_range(-PI..PI),
            gamma2: rng.gen_range(-PI..PI),
            gamma4: rng.gen_range(-PI..PI),
            gamma5: rng.gen_range(-PI..PI),
            delta: rng.gen_range(-PI..PI),
            theta23: rng.gen_range(-PI..PI),
        };
        let kappa = p.kappa();
        let sdk = (p.delta + kappa).sin();
        if sdk.abs() >= 0.1 && kappa.sin().abs() <= sdk.abs() - 1e-9 {
            return p;
        }
    }
}
