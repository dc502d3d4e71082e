//! Minimal complex linear algebra for 3-vectors and 3×3 matrices.
//!
//! Everything here is sized for the walk's three internal states (L, S, R):
//! value types, closed-form determinants, and an eigensolver for unitary
//! matrices built on the cubic characteristic polynomial (Cardano) with
//! Newton polishing. No general n×n machinery.

use crate::{Error, Result};
use num_complex::Complex64;

pub type Complex = Complex64;

/// Internal coin state of the walker; also indexes rows/columns of a coin.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoinAxis {
    /// Step to the left.
    L,
    /// Stay at the present position.
    S,
    /// Step to the right.
    R,
}

impl CoinAxis {
    pub const ALL: [CoinAxis; 3] = [CoinAxis::L, CoinAxis::S, CoinAxis::R];

    pub fn index(self) -> usize {
        match self {
            CoinAxis::L => 0,
            CoinAxis::S => 1,
            CoinAxis::R => 2,
        }
    }
}

/// A complex 3-vector of amplitudes, ordered (L, S, R). Not necessarily unit
/// norm: stationary states are handled non-normalized.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Vec3C(pub [Complex; 3]);

impl Vec3C {
    pub fn new(l: Complex, s: Complex, r: Complex) -> Self {
        Vec3C([l, s, r])
    }

    pub fn zero() -> Self {
        Vec3C([Complex::new(0.0, 0.0); 3])
    }

    /// Basis coin state |axis⟩.
    pub fn basis(axis: CoinAxis) -> Self {
        let mut v = Self::zero();
        v.0[axis.index()] = Complex::new(1.0, 0.0);
        v
    }

    /// Hermitian inner product ⟨self, other⟩ = Σᵢ conj(selfᵢ) otherᵢ.
    pub fn dot(&self, other: &Vec3C) -> Complex {
        self.0
            .iter()
            .zip(other.0.iter())
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.0.iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    pub fn scaled(&self, c: Complex) -> Vec3C {
        Vec3C([self.0[0] * c, self.0[1] * c, self.0[2] * c])
    }

    pub fn add(&self, other: &Vec3C) -> Vec3C {
        Vec3C([
            self.0[0] + other.0[0],
            self.0[1] + other.0[1],
            self.0[2] + other.0[2],
        ])
    }

    pub fn sub(&self, other: &Vec3C) -> Vec3C {
        Vec3C([
            self.0[0] - other.0[0],
            self.0[1] - other.0[1],
            self.0[2] - other.0[2],
        ])
    }

    pub fn normalized(&self) -> Vec3C {
        let n = self.norm();
        self.scaled(Complex::new(1.0 / n, 0.0))
    }
}

impl std::ops::Index<usize> for Vec3C {
    type Output = Complex;
    fn index(&self, i: usize) -> &Complex {
        &self.0[i]
    }
}

/// A complex 3×3 matrix, row-major, rows/columns ordered (L, S, R).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mat3C(pub [[Complex; 3]; 3]);

impl Mat3C {
    pub fn from_rows(rows: [[Complex; 3]; 3]) -> Self {
        Mat3C(rows)
    }

    pub fn zero() -> Self {
        Mat3C([[Complex::new(0.0, 0.0); 3]; 3])
    }

    pub fn identity() -> Self {
        let mut m = Self::zero();
        for i in 0..3 {
            m.0[i][i] = Complex::new(1.0, 0.0);
        }
        m
    }

    pub fn diag(a: Complex, b: Complex, c: Complex) -> Self {
        let mut m = Self::zero();
        m.0[0][0] = a;
        m.0[1][1] = b;
        m.0[2][2] = c;
        m
    }

    pub fn get(&self, row: usize, col: usize) -> Complex {
        self.0[row][col]
    }

    pub fn mul_vec(&self, v: &Vec3C) -> Vec3C {
        let mut out = Vec3C::zero();
        for i in 0..3 {
            let mut acc = Complex::new(0.0, 0.0);
            for j in 0..3 {
                acc += self.0[i][j] * v.0[j];
            }
            out.0[i] = acc;
        }
        out
    }

    pub fn adjoint(&self) -> Mat3C {
        let mut out = Self::zero();
        for i in 0..3 {
            for j in 0..3 {
                out.0[i][j] = self.0[j][i].conj();
            }
        }
        out
    }

    pub fn trace(&self) -> Complex {
        self.0[0][0] + self.0[1][1] + self.0[2][2]
    }

    pub fn det(&self) -> Complex {
        let m = &self.0;
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    }

    /// Sum of the three principal 2×2 minors (the λ¹ coefficient of the
    /// characteristic polynomial, up to sign).
    pub fn principal_minor_sum(&self) -> Complex {
        let m = &self.0;
        (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            + (m[0][0] * m[2][2] - m[0][2] * m[2][0])
            + (m[0][0] * m[1][1] - m[0][1] * m[1][0])
    }

    pub fn scaled(&self, c: Complex) -> Mat3C {
        let mut out = *self;
        for row in out.0.iter_mut() {
            for x in row.iter_mut() {
                *x *= c;
            }
        }
        out
    }

    pub fn max_abs_diff(&self, other: &Mat3C) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..3 {
            for j in 0..3 {
                worst = worst.max((self.0[i][j] - other.0[i][j]).norm());
            }
        }
        worst
    }

    /// Max-entry deviation of M†M from the identity.
    pub fn unitarity_error(&self) -> f64 {
        mat_mul(&self.adjoint(), self).max_abs_diff(&Mat3C::identity())
    }
}

impl std::ops::Index<(usize, usize)> for Mat3C {
    type Output = Complex;
    fn index(&self, (i, j): (usize, usize)) -> &Complex {
        &self.0[i][j]
    }
}

/// Standard matrix product A·B.
pub fn mat_mul(a: &Mat3C, b: &Mat3C) -> Mat3C {
    let mut out = Mat3C::zero();
    for i in 0..3 {
        for j in 0..3 {
            let mut acc = Complex::new(0.0, 0.0);
            for k in 0..3 {
                acc += a.0[i][k] * b.0[k][j];
            }
            out.0[i][j] = acc;
        }
    }
    out
}

/// True iff the max-entry deviation of M†M from the identity is ≤ tol.
pub fn is_unitary(m: &Mat3C, tol: f64) -> bool {
    m.unitarity_error() <= tol
}

/// Eigenvalues and orthonormal eigenvectors of a unitary 3×3 matrix.
#[derive(Debug, Clone)]
pub struct EigenSystem {
    /// Unit-modulus eigenvalues, sorted by phase ascending.
    pub values: [Complex; 3],
    /// Unit-norm eigenvectors, `values[i]` paired with `vectors[i]`.
    pub vectors: [Vec3C; 3],
}

impl EigenSystem {
    /// Largest residual ‖M v − λ v‖ over the three pairs.
    pub fn max_residual(&self, m: &Mat3C) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..3 {
            let r = m
                .mul_vec(&self.vectors[i])
                .sub(&self.vectors[i].scaled(self.values[i]));
            worst = worst.max(r.norm());
        }
        worst
    }
}

const POLISH_TOL: f64 = 1e-13;
const POLISH_MAX_ITER: usize = 100;
// A double root polished to |p| < 1e-13 is only located to ~sqrt(1e-13), so
// the cluster threshold must sit above that.
const REPEATED_ROOT_TOL: f64 = 1e-6;

/// Roots of the monic cubic λ³ + a λ² + b λ + c over ℂ (Cardano).
fn cubic_roots(a: Complex, b: Complex, c: Complex) -> [Complex; 3] {
    let third = Complex::new(1.0 / 3.0, 0.0);
    let shift = a * third;
    // depressed cubic y^3 + p y + q, λ = y - a/3
    let p = b - a * a * third;
    let q = c + a
        * (Complex::new(2.0, 0.0) * a * a - Complex::new(9.0, 0.0) * b)
        * Complex::new(1.0 / 27.0, 0.0);
    if p.norm() < 1e-300 && q.norm() < 1e-300 {
        return [-shift; 3];
    }
    let half_q = q * Complex::new(0.5, 0.0);
    let disc = half_q * half_q + (p * third) * (p * third) * (p * third);
    let sq = disc.sqrt();
    // pick the branch with larger modulus to avoid cancellation
    let u3 = if (-half_q + sq).norm() >= (-half_q - sq).norm() {
        -half_q + sq
    } else {
        -half_q - sq
    };
    let u = u3.cbrt();
    let v = if u.norm() > 1e-300 {
        -p * third / u
    } else {
        Complex::new(0.0, 0.0)
    };
    let w = Complex::from_polar(1.0, 2.0 * std::f64::consts::PI / 3.0);
    let wc = w.conj();
    [
        u + v - shift,
        w * u + wc * v - shift,
        wc * u + w * v - shift,
    ]
}

/// Newton-polishes a root of p(λ) = λ³ + aλ² + bλ + c until |p| < 1e-13.
fn polish_root(mut x: Complex, a: Complex, b: Complex, c: Complex) -> Result<Complex> {
    for _ in 0..POLISH_MAX_ITER {
        let px = ((x + a) * x + b) * x + c;
        if px.norm() < POLISH_TOL {
            return Ok(x);
        }
        let dpx = (Complex::new(3.0, 0.0) * x + Complex::new(2.0, 0.0) * a) * x + b;
        if dpx.norm() < 1e-300 {
            // stationary point of p; nudge off it
            x += Complex::new(1e-8, 1e-8);
            continue;
        }
        x -= px / dpx;
    }
    let px = ((x + a) * x + b) * x + c;
    if px.norm() < POLISH_TOL {
        Ok(x)
    } else {
        Err(Error::NonConvergence)
    }
}

/// Bilinear cross product over ℂ (no conjugation): orthogonal to both rows
/// in the r·v = 0 sense, hence a null vector of the matrix they came from.
fn cross_rows(a: &[Complex; 3], b: &[Complex; 3]) -> Vec3C {
    Vec3C([
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ])
}

/// Null vector of (M − λI) via the best-conditioned pair of rows.
fn null_vector(m: &Mat3C, lambda: Complex) -> Option<Vec3C> {
    let mut a = *m;
    for i in 0..3 {
        a.0[i][i] -= lambda;
    }
    let candidates = [
        cross_rows(&a.0[0], &a.0[1]),
        cross_rows(&a.0[1], &a.0[2]),
        cross_rows(&a.0[2], &a.0[0]),
    ];
    let best = candidates
        .iter()
        .max_by(|x, y| x.norm_sqr().total_cmp(&y.norm_sqr()))
        .copied()
        .unwrap();
    // adjugate columns scale like the product of the other two eigenvalue
    // gaps; for a unit-scale matrix anything above rounding noise is a
    // genuine rank-2 signature
    if best.norm() > 1e-14 {
        Some(best.normalized())
    } else {
        None
    }
}

/// Two orthonormal vectors spanning the Hermitian-orthogonal complement of v.
fn orthogonal_complement(v: &Vec3C) -> [Vec3C; 2] {
    let v = v.normalized();
    let mut basis: Vec<Vec3C> = Vec::with_capacity(2);
    for axis in CoinAxis::ALL {
        if basis.len() == 2 {
            break;
        }
        let mut w = Vec3C::basis(axis);
        w = w.sub(&v.scaled(v.dot(&w)));
        for b in &basis {
            w = w.sub(&b.scaled(b.dot(&w)));
        }
        if w.norm() > 1e-6 {
            basis.push(w.normalized());
        }
    }
    [basis[0], basis[1]]
}

/// Eigenvalues and eigenvectors of a unitary 3×3 matrix.
///
/// Roots of the characteristic cubic are found in closed form and polished by
/// Newton iteration; eigenvectors come from the null space of (M − λI). Roots
/// agreeing within 1e-8 are treated as repeated and their eigenspace is built
/// by orthogonal-complement construction (valid because M is normal).
pub fn eigensystem(m: &Mat3C) -> Result<EigenSystem> {
    // diagonal matrices are exact; this also covers the λI triple-root case,
    // where Cardano + Newton would only localize roots to ~1e-13^(1/3)
    let off_diag = (0..3)
        .flat_map(|i| (0..3).filter(move |&j| j != i).map(move |j| (i, j)))
        .map(|(i, j)| m.0[i][j].norm())
        .fold(0.0, f64::max);
    if off_diag < 1e-15 {
        let mut order = [0usize, 1, 2];
        order.sort_by(|&i, &j| m.0[i][i].arg().total_cmp(&m.0[j][j].arg()));
        let mut values = [Complex::new(0.0, 0.0); 3];
        let mut vectors = [Vec3C::zero(); 3];
        for (slot, &i) in order.iter().enumerate() {
            values[slot] = m.0[i][i];
            vectors[slot] = Vec3C::basis(CoinAxis::ALL[i]);
        }
        return Ok(EigenSystem { values, vectors });
    }

    let a = -m.trace();
    let b = m.principal_minor_sum();
    let c = -m.det();
    let raw = cubic_roots(a, b, c);
    let mut values = [Complex::new(0.0, 0.0); 3];
    for (i, r) in raw.iter().enumerate() {
        values[i] = polish_root(*r, a, b, c)?;
    }
    values.sort_by(|x, y| x.arg().total_cmp(&y.arg()));

    let close = |x: Complex, y: Complex| (x - y).norm() < REPEATED_ROOT_TOL;

    // Near a double root, Newton only locates the pair to ~sqrt(POLISH_TOL).
    // Rebuild such a pair from the exact trace and determinant through the
    // well-separated third root: the pair solves λ² − sλ + p = 0 with
    // s = tr − λ₃, p = det/λ₃, whose midpoint is machine-accurate.
    let triple = close(values[0], values[1]) && close(values[1], values[2]);
    if triple {
        // exact for a true triple root; the polished values only carry
        // ~1e-13^(1/3) accuracy
        let center = m.trace() * Complex::new(1.0 / 3.0, 0.0);
        values = [center; 3];
    } else {
        let pairs = [(0usize, 1usize, 2usize), (1, 2, 0), (0, 2, 1)];
        if let Some(&(i, j, k)) = pairs
            .iter()
            .filter(|&&(i, j, _)| close(values[i], values[j]))
            .min_by(|&&(i1, j1, _), &&(i2, j2, _)| {
                (values[i1] - values[j1])
                    .norm()
                    .total_cmp(&(values[i2] - values[j2]).norm())
            })
        {
            let third = values[k];
            let s = m.trace() - third;
            let p = m.det() / third;
            let disc = s * s - Complex::new(4.0, 0.0) * p;
            // a discriminant at rounding level is an exact double root; taking
            // its square root would manufacture a ~1e-8 spurious split
            let scale = s.norm_sqr() + 4.0 * p.norm() + 1.0;
            let sq = if disc.norm() < 4e-14 * scale {
                Complex::new(0.0, 0.0)
            } else {
                disc.sqrt()
            };
            let half = Complex::new(0.5, 0.0);
            let (r1, r2) = ((s + sq) * half, (s - sq) * half);
            // keep the assignment closest to the polished values
            if (r1 - values[i]).norm() + (r2 - values[j]).norm()
                <= (r2 - values[i]).norm() + (r1 - values[j]).norm()
            {
                values[i] = r1;
                values[j] = r2;
            } else {
                values[i] = r2;
                values[j] = r1;
            }
        }
    }
    let vectors = if triple {
        // M = λI within tolerance
        [
            Vec3C::basis(CoinAxis::L),
            Vec3C::basis(CoinAxis::S),
            Vec3C::basis(CoinAxis::R),
        ]
    } else if close(values[0], values[1])
        || close(values[1], values[2])
        || close(values[0], values[2])
    {
        // one simple eigenvalue + a two-dimensional eigenspace
        let (simple, pair) = if close(values[0], values[1]) {
            (2, [0, 1])
        } else if close(values[1], values[2]) {
            (0, [1, 2])
        } else {
            (1, [0, 2])
        };
        let vs = null_vector(m, values[simple]).ok_or(Error::DegenerateEigenvector)?;
        let [w1, w2] = orthogonal_complement(&vs);
        let mut out = [Vec3C::zero(); 3];
        out[simple] = vs;
        out[pair[0]] = w1;
        out[pair[1]] = w2;
        out
    } else {
        let mut out = [Vec3C::zero(); 3];
        for i in 0..3 {
            out[i] = null_vector(m, values[i]).ok_or(Error::DegenerateEigenvector)?;
        }
        out
    };

    Ok(EigenSystem { values, vectors })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coins::grover_coin;
    use proptest::prelude::*;
    use std::f64::consts::PI;

    fn c(re: f64, im: f64) -> Complex {
        Complex::new(re, im)
    }

    #[test]
    fn mat_mul_identity_cases() {
        let i = Mat3C::identity();
        assert_eq!(mat_mul(&i, &i), i);
        let k = PI / 5.0;
        let d = Mat3C::diag(
            Complex::from_polar(1.0, -k),
            c(1.0, 0.0),
            Complex::from_polar(1.0, k),
        );
        assert_eq!(mat_mul(&d, &i), d);
    }

    #[test]
    fn grover_is_involution() {
        // direct 3x3 multiplication oracle: G*G = I for the Grover matrix
        let g = grover_coin().matrix();
        assert!(mat_mul(&g, &g).max_abs_diff(&Mat3C::identity()) < 1e-15);
    }

    #[test]
    fn unitarity_checks() {
        assert!(is_unitary(&Mat3C::identity(), 1e-12));
        assert!(is_unitary(&grover_coin().matrix(), 1e-12));
        let mut bad = grover_coin().matrix();
        bad.0[0][0] *= c(1.01, 0.0);
        assert!(!is_unitary(&bad, 1e-12));
    }

    #[test]
    fn eigensystem_identity() {
        let es = eigensystem(&Mat3C::identity()).unwrap();
        for v in es.values {
            assert!((v - c(1.0, 0.0)).norm() < 1e-12);
        }
        assert!(es.max_residual(&Mat3C::identity()) < 1e-12);
    }

    #[test]
    fn eigensystem_diagonal_phases() {
        let k = PI / 3.0;
        let d = Mat3C::diag(
            Complex::from_polar(1.0, -k),
            c(1.0, 0.0),
            Complex::from_polar(1.0, k),
        );
        let es = eigensystem(&d).unwrap();
        let mut args: Vec<f64> = es.values.iter().map(|v| v.arg()).collect();
        args.sort_by(f64::total_cmp);
        assert!((args[0] + k).abs() < 1e-12);
        assert!(args[1].abs() < 1e-12);
        assert!((args[2] - k).abs() < 1e-12);
        assert!(es.max_residual(&d) < 1e-10);
    }

    #[test]
    fn eigensystem_grover_walk_at_half_pi() {
        // Ũ(k) = D(e^{-ik},1,e^{ik})·Grover at k = π/2: one eigenvalue exactly 1,
        // two at e^{±iω} with cos ω = -2/3 (Grover dispersion at k = π/2).
        let k = PI / 2.0;
        let d = Mat3C::diag(
            Complex::from_polar(1.0, -k),
            c(1.0, 0.0),
            Complex::from_polar(1.0, k),
        );
        let u = mat_mul(&d, &grover_coin().matrix());
        let es = eigensystem(&u).unwrap();
        let omega = (-2.0f64 / 3.0).acos();
        assert!((omega - 2.300_523_983_021_863).abs() < 1e-12);
        let mut found_one = false;
        let mut band = Vec::new();
        for v in es.values {
            if (v - c(1.0, 0.0)).norm() < 1e-10 {
                found_one = true;
            } else {
                band.push(v);
            }
        }
        assert!(found_one);
        assert_eq!(band.len(), 2);
        for v in band {
            assert!((v.re - (-2.0 / 3.0)).abs() < 1e-10);
            assert!((v.arg().abs() - omega).abs() < 1e-10);
        }
        assert!(es.max_residual(&u) < 1e-10);
    }

    #[test]
    fn repeated_eigenvalue_fallback() {
        // the L<->S swap has eigenvalues {1, 1, -1}; the doubled eigenspace
        // must come out of the orthogonal-complement fallback
        let m = Mat3C::from_rows([
            [c(0.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)],
            [c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)],
            [c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)],
        ]);
        let es = eigensystem(&m).unwrap();
        let ones = es
            .values
            .iter()
            .filter(|v| (**v - c(1.0, 0.0)).norm() < 1e-10)
            .count();
        let neg = es
            .values
            .iter()
            .filter(|v| (**v + c(1.0, 0.0)).norm() < 1e-10)
            .count();
        assert_eq!((ones, neg), (2, 1));
        assert!(es.max_residual(&m) < 1e-10);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        /// Random-coin eigensystems: unit-circle eigenvalues, det identity,
        /// small residuals.
        #[test]
        fn eigensystem_unitary_properties(
            t12 in -PI..PI, t13 in -PI..PI, t23 in -PI..PI, d in -PI..PI,
            g1 in -PI..PI, g2 in -PI..PI, g3 in -PI..PI, g4 in -PI..PI, g5 in -PI..PI,
        ) {
            let coin = crate::coins::build_unitary(&crate::coins::CoinParams {
                theta12: t12, theta13: t13, theta23: t23, delta: d,
                gamma1: g1, gamma2: g2, gamma3: g3, gamma4: g4, gamma5: g5,
            });
            let m = coin.matrix();
            let es = eigensystem(&m).unwrap();
            let mut prod = c(1.0, 0.0);
            for v in es.values {
                prop_assert!((v.norm() - 1.0).abs() < 1e-10);
                prod *= v;
            }
            prop_assert!((prod - m.det()).norm() < 1e-10);
            prop_assert!(es.max_residual(&m) < 1e-10);
        }
    }
}
