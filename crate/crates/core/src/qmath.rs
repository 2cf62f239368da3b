// Copyright 2026 vsq Contributors
// SPDX-License-Identifier: Apache-2.0

//! Fixed-size complex linear algebra for the four-level register.
//!
//! Everything here is sized for the problem at hand: 2×2 matrices for
//! single-transition rotations, 4×4 matrices for operators on the full
//! register, and length-4 state vectors. Matrices are value types; no
//! operation mutates its inputs. Floating-point comparisons always go
//! through an explicit tolerance, never bit equality.
//!
//! The tensor convention places the R spin on the high-order bit, so
//! `tensor(a, b)[2i+k][2j+l] = a[i][j]·b[k][l]` and basis index `2·q_r + q_s`
//! matches the level order E₀…E₃.

use std::fmt;
use std::ops::{Add, Mul, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::numfmt::format_g;

/// Complex amplitude in double precision.
pub type Amplitude = Complex64;

/// Default tolerance for unitarity checks.
///
/// Closed-form double-precision constructions land within a few 1e-16 of
/// exact unitarity, leaving two decades of headroom below this default.
pub const DEFAULT_UNITARY_TOL: f64 = 1e-12;

fn finite(z: &Amplitude) -> bool {
    z.re.is_finite() && z.im.is_finite()
}

/// Renders one amplitude as `re+imi` with 6 significant digits.
fn render_amplitude(z: &Amplitude) -> String {
    let im = if z.im == 0.0 { 0.0 } else { z.im };
    let sign = if im < 0.0 { '-' } else { '+' };
    format!("{}{}{}i", format_g(z.re, 6), sign, format_g(im.abs(), 6))
}

/// A 2×2 complex matrix, row-major.
#[derive(Clone, Copy, Debug)]
pub struct Matrix2 {
    rows: [[Amplitude; 2]; 2],
}

/// A 4×4 complex matrix, row-major.
#[derive(Clone, Copy, Debug)]
pub struct Matrix4 {
    rows: [[Amplitude; 4]; 4],
}

/// A state vector on the four-level space, indexed by basis state 0..=3.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Vector4 {
    amps: [Amplitude; 4],
}

impl Matrix2 {
    /// Builds a matrix from rows, rejecting NaN or infinite entries.
    pub fn new(rows: [[Amplitude; 2]; 2]) -> Result<Self> {
        if rows.iter().flatten().all(finite) {
            Ok(Self { rows })
        } else {
            Err(Error::NonFinite("matrix entry"))
        }
    }

    pub(crate) fn from_rows_unchecked(rows: [[Amplitude; 2]; 2]) -> Self {
        debug_assert!(rows.iter().flatten().all(finite));
        Self { rows }
    }

    /// The 2×2 identity.
    pub fn identity() -> Self {
        let one = Amplitude::new(1.0, 0.0);
        let zero = Amplitude::new(0.0, 0.0);
        Self { rows: [[one, zero], [zero, one]] }
    }

    /// The zero matrix.
    pub fn zero() -> Self {
        Self { rows: [[Amplitude::new(0.0, 0.0); 2]; 2] }
    }

    /// Entry at `[row][col]`. Panics if either index exceeds 1.
    pub fn entry(&self, row: usize, col: usize) -> Amplitude {
        self.rows[row][col]
    }

    /// Row-major view of all entries.
    pub fn rows(&self) -> &[[Amplitude; 2]; 2] {
        &self.rows
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        let mut out = [[Amplitude::new(0.0, 0.0); 2]; 2];
        for (r, row) in self.rows.iter().enumerate() {
            for (c, z) in row.iter().enumerate() {
                out[c][r] = z.conj();
            }
        }
        Self { rows: out }
    }

    /// Every entry multiplied by `k`.
    pub fn scaled(&self, k: Amplitude) -> Self {
        let mut out = self.rows;
        for row in &mut out {
            for z in row {
                *z *= k;
            }
        }
        Self { rows: out }
    }

    /// Largest absolute entry difference against `other`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        let mut max = 0.0f64;
        for r in 0..2 {
            for c in 0..2 {
                max = max.max((self.rows[r][c] - other.rows[r][c]).norm());
            }
        }
        max
    }

    /// Largest absolute entry of `m†m − I`.
    pub fn unitarity_deviation(&self) -> f64 {
        let product = self.adjoint() * *self;
        product.max_abs_diff(&Self::identity())
    }

    /// True iff the largest absolute entry of `m†m − I` is at most `tol`.
    pub fn is_unitary(&self, tol: f64) -> bool {
        debug_assert!(tol > 0.0);
        self.unitarity_deviation() <= tol
    }
}

impl Add for Matrix2 {
    type Output = Matrix2;

    fn add(self, rhs: Matrix2) -> Matrix2 {
        let mut out = self.rows;
        for (out_row, rhs_row) in out.iter_mut().zip(&rhs.rows) {
            for (entry, term) in out_row.iter_mut().zip(rhs_row) {
                *entry += term;
            }
        }
        Matrix2 { rows: out }
    }
}

impl Sub for Matrix2 {
    type Output = Matrix2;

    fn sub(self, rhs: Matrix2) -> Matrix2 {
        let mut out = self.rows;
        for (out_row, rhs_row) in out.iter_mut().zip(&rhs.rows) {
            for (entry, term) in out_row.iter_mut().zip(rhs_row) {
                *entry -= term;
            }
        }
        Matrix2 { rows: out }
    }
}

impl Mul for Matrix2 {
    type Output = Matrix2;

    fn mul(self, rhs: Matrix2) -> Matrix2 {
        let mut out = [[Amplitude::new(0.0, 0.0); 2]; 2];
        for (r, out_row) in out.iter_mut().enumerate() {
            for (c, entry) in out_row.iter_mut().enumerate() {
                let mut acc = Amplitude::new(0.0, 0.0);
                for k in 0..2 {
                    acc += self.rows[r][k] * rhs.rows[k][c];
                }
                *entry = acc;
            }
        }
        Matrix2 { rows: out }
    }
}

impl fmt::Display for Matrix2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (r, row) in self.rows.iter().enumerate() {
            if r > 0 {
                writeln!(f)?;
            }
            let cells: Vec<String> = row.iter().map(render_amplitude).collect();
            write!(f, "{}", cells.join(" "))?;
        }
        Ok(())
    }
}

impl Matrix4 {
    /// Builds a matrix from rows, rejecting NaN or infinite entries.
    pub fn new(rows: [[Amplitude; 4]; 4]) -> Result<Self> {
        if rows.iter().flatten().all(finite) {
            Ok(Self { rows })
        } else {
            Err(Error::NonFinite("matrix entry"))
        }
    }

    pub(crate) fn from_rows_unchecked(rows: [[Amplitude; 4]; 4]) -> Self {
        debug_assert!(rows.iter().flatten().all(finite));
        Self { rows }
    }

    /// The 4×4 identity.
    pub fn identity() -> Self {
        let mut rows = [[Amplitude::new(0.0, 0.0); 4]; 4];
        for (k, row) in rows.iter_mut().enumerate() {
            row[k] = Amplitude::new(1.0, 0.0);
        }
        Self { rows }
    }

    /// The zero matrix.
    pub fn zero() -> Self {
        Self { rows: [[Amplitude::new(0.0, 0.0); 4]; 4] }
    }

    /// Entry at `[row][col]`. Panics if either index exceeds 3.
    pub fn entry(&self, row: usize, col: usize) -> Amplitude {
        self.rows[row][col]
    }

    /// Row-major view of all entries.
    pub fn rows(&self) -> &[[Amplitude; 4]; 4] {
        &self.rows
    }

    /// The `col`-th column as an array.
    pub fn column(&self, col: usize) -> [Amplitude; 4] {
        [self.rows[0][col], self.rows[1][col], self.rows[2][col], self.rows[3][col]]
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        let mut out = [[Amplitude::new(0.0, 0.0); 4]; 4];
        for (r, row) in self.rows.iter().enumerate() {
            for (c, z) in row.iter().enumerate() {
                out[c][r] = z.conj();
            }
        }
        Self { rows: out }
    }

    /// Every entry multiplied by `k`.
    pub fn scaled(&self, k: Amplitude) -> Self {
        let mut out = self.rows;
        for row in &mut out {
            for z in row {
                *z *= k;
            }
        }
        Self { rows: out }
    }

    /// Sum of diagonal entries.
    pub fn trace(&self) -> Amplitude {
        (0..4).map(|k| self.rows[k][k]).sum()
    }

    /// Largest absolute entry difference against `other`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        let mut max = 0.0f64;
        for r in 0..4 {
            for c in 0..4 {
                max = max.max((self.rows[r][c] - other.rows[r][c]).norm());
            }
        }
        max
    }

    /// Largest absolute entry of `m†m − I`.
    pub fn unitarity_deviation(&self) -> f64 {
        let product = self.adjoint() * *self;
        product.max_abs_diff(&Self::identity())
    }

    /// True iff the largest absolute entry of `m†m − I` is at most `tol`.
    pub fn is_unitary(&self, tol: f64) -> bool {
        debug_assert!(tol > 0.0);
        self.unitarity_deviation() <= tol
    }
}

impl Add for Matrix4 {
    type Output = Matrix4;

    fn add(self, rhs: Matrix4) -> Matrix4 {
        let mut out = self.rows;
        for (out_row, rhs_row) in out.iter_mut().zip(&rhs.rows) {
            for (entry, term) in out_row.iter_mut().zip(rhs_row) {
                *entry += term;
            }
        }
        Matrix4 { rows: out }
    }
}

impl Sub for Matrix4 {
    type Output = Matrix4;

    fn sub(self, rhs: Matrix4) -> Matrix4 {
        let mut out = self.rows;
        for (out_row, rhs_row) in out.iter_mut().zip(&rhs.rows) {
            for (entry, term) in out_row.iter_mut().zip(rhs_row) {
                *entry -= term;
            }
        }
        Matrix4 { rows: out }
    }
}

impl Mul for Matrix4 {
    type Output = Matrix4;

    fn mul(self, rhs: Matrix4) -> Matrix4 {
        let mut out = [[Amplitude::new(0.0, 0.0); 4]; 4];
        for (r, out_row) in out.iter_mut().enumerate() {
            for (c, entry) in out_row.iter_mut().enumerate() {
                let mut acc = Amplitude::new(0.0, 0.0);
                for k in 0..4 {
                    acc += self.rows[r][k] * rhs.rows[k][c];
                }
                *entry = acc;
            }
        }
        Matrix4 { rows: out }
    }
}

impl fmt::Display for Matrix4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (r, row) in self.rows.iter().enumerate() {
            if r > 0 {
                writeln!(f)?;
            }
            let cells: Vec<String> = row.iter().map(render_amplitude).collect();
            write!(f, "{}", cells.join(" "))?;
        }
        Ok(())
    }
}

impl Vector4 {
    /// Builds a vector from amplitudes, rejecting NaN or infinite entries.
    pub fn new(amps: [Amplitude; 4]) -> Result<Self> {
        if amps.iter().all(finite) {
            Ok(Self { amps })
        } else {
            Err(Error::NonFinite("vector amplitude"))
        }
    }

    /// The basis vector |k⟩ for `k` in 0..=3.
    pub fn basis(k: usize) -> Result<Self> {
        if k > 3 {
            return Err(Error::Index(format!("basis index {k} exceeds 3")));
        }
        let mut amps = [Amplitude::new(0.0, 0.0); 4];
        amps[k] = Amplitude::new(1.0, 0.0);
        Ok(Self { amps })
    }

    /// All four amplitudes.
    pub fn amplitudes(&self) -> &[Amplitude; 4] {
        &self.amps
    }

    /// Amplitude at basis index `k`. Panics if `k` exceeds 3.
    pub fn amplitude(&self, k: usize) -> Amplitude {
        self.amps[k]
    }

    /// Euclidean norm.
    pub fn norm(&self) -> f64 {
        self.amps.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Largest absolute amplitude difference against `other`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        let mut max = 0.0f64;
        for k in 0..4 {
            max = max.max((self.amps[k] - other.amps[k]).norm());
        }
        max
    }
}

/// Kronecker product with the left factor on the high-order bit:
/// `out[2i+k][2j+l] = a[i][j]·b[k][l]`.
pub fn tensor(a: &Matrix2, b: &Matrix2) -> Matrix4 {
    let mut rows = [[Amplitude::new(0.0, 0.0); 4]; 4];
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                for l in 0..2 {
                    rows[2 * i + k][2 * j + l] = a.entry(i, j) * b.entry(k, l);
                }
            }
        }
    }
    Matrix4 { rows }
}

/// Embeds the unitary `u` on the two-level subspace spanned by basis states
/// `i` and `j` (with `i` mapped to `u`'s first basis vector), identity
/// elsewhere.
pub fn embed_two_level(u: &Matrix2, i: usize, j: usize) -> Result<Matrix4> {
    if i >= j || j > 3 {
        return Err(Error::Index(format!("embedding pair ({i},{j}) must satisfy 0 <= i < j <= 3")));
    }
    if !u.is_unitary(DEFAULT_UNITARY_TOL) {
        return Err(Error::NotUnitary {
            deviation: u.unitarity_deviation(),
            tolerance: DEFAULT_UNITARY_TOL,
        });
    }
    let mut out = Matrix4::identity();
    out.rows[i][i] = u.entry(0, 0);
    out.rows[i][j] = u.entry(0, 1);
    out.rows[j][i] = u.entry(1, 0);
    out.rows[j][j] = u.entry(1, 1);
    Ok(out)
}

/// Tests whether `u = e^{iθ}·v` for some real θ, within `tol`.
///
/// For unitary inputs `|trace(u†v)| = 4` exactly when the two matrices agree
/// up to a global phase, so the predicate is `4 − |trace(u†v)| ≤ tol`. The
/// relation is reflexive and symmetric at fixed tolerance; chaining two
/// applications weakens the bound to `2·tol + tol²/4`.
pub fn equal_up_to_global_phase(u: &Matrix4, v: &Matrix4, tol: f64) -> Result<bool> {
    debug_assert!(tol > 0.0);
    for m in [u, v] {
        if !m.is_unitary(tol) {
            return Err(Error::NotUnitary { deviation: m.unitarity_deviation(), tolerance: tol });
        }
    }
    let overlap = (u.adjoint() * *v).trace().norm();
    Ok(4.0 - overlap <= tol)
}

/// Applies the unitary `u` to the state `v`.
pub fn apply(u: &Matrix4, v: &Vector4) -> Result<Vector4> {
    if !u.is_unitary(DEFAULT_UNITARY_TOL) {
        return Err(Error::NotUnitary {
            deviation: u.unitarity_deviation(),
            tolerance: DEFAULT_UNITARY_TOL,
        });
    }
    let mut amps = [Amplitude::new(0.0, 0.0); 4];
    for (r, row) in u.rows.iter().enumerate() {
        let mut acc = Amplitude::new(0.0, 0.0);
        for (c, z) in row.iter().enumerate() {
            acc += z * v.amps[c];
        }
        amps[r] = acc;
    }
    Ok(Vector4 { amps })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::{exp_m2, random_unitary2, Rng};
    use std::f64::consts::{FRAC_PI_4, PI};

    fn c(re: f64, im: f64) -> Amplitude {
        Amplitude::new(re, im)
    }

    fn sigma_x() -> Matrix2 {
        Matrix2::new([[c(0.0, 0.0), c(1.0, 0.0)], [c(1.0, 0.0), c(0.0, 0.0)]]).unwrap()
    }

    fn sigma_y() -> Matrix2 {
        Matrix2::new([[c(0.0, 0.0), c(0.0, -1.0)], [c(0.0, 1.0), c(0.0, 0.0)]]).unwrap()
    }

    /// Ry(φ) from the series exponential of −iφσ_y/2, the independent route.
    fn ry_series(phi: f64) -> Matrix2 {
        exp_m2(&sigma_y().scaled(c(0.0, -phi / 2.0)))
    }

    #[test]
    fn constructors_reject_non_finite_entries() {
        let bad = Matrix2::new([[c(f64::NAN, 0.0), c(0.0, 0.0)], [c(0.0, 0.0), c(1.0, 0.0)]]);
        assert!(matches!(bad, Err(Error::NonFinite(_))));
        let bad = Vector4::new([c(1.0, 0.0), c(0.0, f64::INFINITY), c(0.0, 0.0), c(0.0, 0.0)]);
        assert!(matches!(bad, Err(Error::NonFinite(_))));
    }

    #[test]
    fn tensor_of_identities_is_identity() {
        let out = tensor(&Matrix2::identity(), &Matrix2::identity());
        assert_eq!(out.max_abs_diff(&Matrix4::identity()), 0.0);
    }

    #[test]
    fn tensor_with_projector_places_block() {
        let projector =
            Matrix2::new([[c(1.0, 0.0), c(0.0, 0.0)], [c(0.0, 0.0), c(0.0, 0.0)]]).unwrap();
        let out = tensor(&projector, &sigma_y());
        for r in 0..4 {
            for col in 0..4 {
                let expected = if r < 2 && col < 2 { sigma_y().entry(r, col) } else { c(0.0, 0.0) };
                assert_eq!(out.entry(r, col), expected, "entry ({r},{col})");
            }
        }
    }

    #[test]
    fn tensor_is_bilinear() {
        let mut rng = Rng::seed(11);
        for _ in 0..50 {
            let alpha = c(rng.angle(), rng.angle());
            let a = random_unitary2(&mut rng);
            let b = random_unitary2(&mut rng);
            let m = random_unitary2(&mut rng);
            let lhs = tensor(&(a.scaled(alpha) + b), &m);
            let rhs = tensor(&a, &m).scaled(alpha) + tensor(&b, &m);
            assert!(lhs.max_abs_diff(&rhs) <= 1e-14);
        }
    }

    #[test]
    fn embed_identity_is_identity() {
        let out = embed_two_level(&Matrix2::identity(), 0, 1).unwrap();
        assert_eq!(out.max_abs_diff(&Matrix4::identity()), 0.0);
    }

    #[test]
    fn embed_sigma_x_swaps_outer_pair() {
        let out = embed_two_level(&sigma_x(), 0, 3).unwrap();
        let swapped = apply(&out, &Vector4::basis(0).unwrap()).unwrap();
        assert_eq!(swapped.max_abs_diff(&Vector4::basis(3).unwrap()), 0.0);
        let fixed = apply(&out, &Vector4::basis(1).unwrap()).unwrap();
        assert_eq!(fixed.max_abs_diff(&Vector4::basis(1).unwrap()), 0.0);
    }

    #[test]
    fn embed_pi_rotation_flips_upper_pair_with_spinor_sign() {
        let out = embed_two_level(&ry_series(PI), 2, 3).unwrap();
        let up = apply(&out, &Vector4::basis(2).unwrap()).unwrap();
        let expected = Vector4::new([c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)]).unwrap();
        assert!(up.max_abs_diff(&expected) <= 1e-12);
        let down = apply(&out, &Vector4::basis(3).unwrap()).unwrap();
        let expected = Vector4::new([c(0.0, 0.0), c(0.0, 0.0), c(-1.0, 0.0), c(0.0, 0.0)]).unwrap();
        assert!(down.max_abs_diff(&expected) <= 1e-12);
    }

    #[test]
    fn embed_rejects_bad_index_pairs() {
        for (i, j) in [(1usize, 1usize), (2, 1), (0, 4)] {
            let out = embed_two_level(&Matrix2::identity(), i, j);
            assert!(matches!(out, Err(Error::Index(_))), "pair ({i},{j})");
        }
    }

    #[test]
    fn embed_rejects_non_unitary_input() {
        let shrink =
            Matrix2::new([[c(0.5, 0.0), c(0.0, 0.0)], [c(0.0, 0.0), c(0.5, 0.0)]]).unwrap();
        assert!(matches!(embed_two_level(&shrink, 0, 1), Err(Error::NotUnitary { .. })));
    }

    #[test]
    fn unitarity_check_accepts_embeddings_and_rejects_defects() {
        assert!(Matrix4::identity().is_unitary(1e-12));
        let embedded = embed_two_level(&ry_series(0.7), 1, 3).unwrap();
        assert!(embedded.is_unitary(1e-12));
        let mut rows = *Matrix4::identity().rows();
        rows[2] = [c(0.0, 0.0); 4];
        let defective = Matrix4::new(rows).unwrap();
        assert!(!defective.is_unitary(1e-12));
    }

    #[test]
    fn embeddings_of_random_unitaries_stay_unitary() {
        let mut rng = Rng::seed(23);
        for _ in 0..40 {
            let u = random_unitary2(&mut rng);
            for i in 0..3 {
                for j in (i + 1)..4 {
                    assert!(embed_two_level(&u, i, j).unwrap().is_unitary(1e-12));
                }
            }
        }
    }

    #[test]
    fn global_phase_equivalence_accepts_phased_copies() {
        let mut rng = Rng::seed(37);
        let u = embed_two_level(&random_unitary2(&mut rng), 1, 2).unwrap();
        let phase = c(FRAC_PI_4.cos(), FRAC_PI_4.sin());
        assert!(equal_up_to_global_phase(&u, &u.scaled(phase), 1e-12).unwrap());
        assert!(equal_up_to_global_phase(&u, &u, 1e-12).unwrap());
    }

    #[test]
    fn global_phase_equivalence_rejects_relative_phase() {
        let mut rows = *Matrix4::identity().rows();
        rows[3][3] = c(-1.0, 0.0);
        let relative = Matrix4::new(rows).unwrap();
        assert!(!equal_up_to_global_phase(&Matrix4::identity(), &relative, 1e-12).unwrap());
    }

    #[test]
    fn global_phase_equivalence_absorbs_minus_i() {
        let u = embed_two_level(&ry_series(PI), 2, 3).unwrap();
        let scaled = u.scaled(c(0.0, -1.0));
        assert!(equal_up_to_global_phase(&u, &scaled, 1e-12).unwrap());
    }

    #[test]
    fn global_phase_equivalence_requires_unitary_inputs() {
        let out = equal_up_to_global_phase(&Matrix4::zero(), &Matrix4::identity(), 1e-12);
        assert!(matches!(out, Err(Error::NotUnitary { .. })));
    }

    #[test]
    fn global_phase_equivalence_is_symmetric_and_loosely_transitive() {
        let mut rng = Rng::seed(41);
        let tol = 1e-12;
        for _ in 0..20 {
            let u = embed_two_level(&random_unitary2(&mut rng), 0, 2).unwrap();
            let theta = rng.angle();
            let v = u.scaled(c(theta.cos(), theta.sin()));
            let eta = rng.angle();
            let w = v.scaled(c(eta.cos(), eta.sin()));
            assert!(equal_up_to_global_phase(&u, &v, tol).unwrap());
            assert!(equal_up_to_global_phase(&v, &u, tol).unwrap());
            assert!(equal_up_to_global_phase(&v, &w, tol).unwrap());
            assert!(equal_up_to_global_phase(&u, &w, 2.0 * tol + tol * tol / 4.0).unwrap());
        }
    }

    #[test]
    fn apply_identity_returns_input() {
        let v = Vector4::new([c(0.5, 0.0), c(0.0, 0.5), c(-0.5, 0.0), c(0.0, -0.5)]).unwrap();
        let out = apply(&Matrix4::identity(), &v).unwrap();
        assert_eq!(out.max_abs_diff(&v), 0.0);
    }

    #[test]
    fn apply_embedded_pi_rotation_moves_basis_states() {
        let u = embed_two_level(&ry_series(PI), 2, 3).unwrap();
        let out = apply(&u, &Vector4::basis(2).unwrap()).unwrap();
        assert!(out.max_abs_diff(&Vector4::basis(3).unwrap()) <= 1e-12);
        let out = apply(&u, &Vector4::basis(3).unwrap()).unwrap();
        let minus = Vector4::new([c(0.0, 0.0), c(0.0, 0.0), c(-1.0, 0.0), c(0.0, 0.0)]).unwrap();
        assert!(out.max_abs_diff(&minus) <= 1e-12);
    }

    #[test]
    fn apply_rejects_non_unitary_matrices() {
        let out = apply(&Matrix4::zero(), &Vector4::basis(0).unwrap());
        assert!(matches!(out, Err(Error::NotUnitary { .. })));
    }

    #[test]
    fn apply_preserves_norm_for_random_unitaries() {
        let mut rng = Rng::seed(53);
        for _ in 0..100 {
            let u = embed_two_level(&random_unitary2(&mut rng), 0, 3).unwrap();
            let raw = [
                c(rng.angle(), rng.angle()),
                c(rng.angle(), rng.angle()),
                c(rng.angle(), rng.angle()),
                c(rng.angle(), rng.angle()),
            ];
            let norm = raw.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            let v = Vector4::new(raw.map(|z| z / norm)).unwrap();
            let out = apply(&u, &v).unwrap();
            assert!((out.norm() - v.norm()).abs() <= 1e-12);
        }
    }

    #[test]
    fn display_renders_six_significant_digits() {
        let text = Matrix4::identity().to_string();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 4);
        assert_eq!(lines[0], "1+0i 0+0i 0+0i 0+0i");
        let phased = Matrix2::new([
            [c(0.0, 0.0), c(0.0, -1.0)],
            [c(6.123233995736766e-17, 1.0), c(0.0, 0.0)],
        ])
        .unwrap();
        assert_eq!(phased.to_string(), "0+0i 0-1i\n6.12323e-17+1i 0+0i");
    }
}
