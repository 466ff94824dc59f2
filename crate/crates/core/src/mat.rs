//! Dense 5×5 complex matrices, the invariant inner product, Lie brackets,
//! and real-linear subspaces of anti-Hermitian matrices.
//!
//! Everything downstream — algebra construction, conjugations, curvature —
//! is arithmetic over these value types. The inner product is
//! ⟨A,B⟩ = −(1/4)·Re tr(AB), the unique scaling of the bi-invariant metric
//! under which the tangent basis M_j of [`crate::lie::heintze_basis`] is
//! orthonormal.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::{Error, Result, TOL_ALGEBRAIC, TOL_PREDICATE};

/// Scale constant c in ⟨A,B⟩ = −c·Re tr(AB). Pinned by M-basis
/// orthonormality; validated by [`self_check`].
pub const INNER_SCALE: f64 = 0.25;

/// A dense 5×5 complex matrix. Value type; all operations are pure.
#[derive(Clone, Copy, Debug)]
pub struct CMat5 {
    entries: [[Complex64; 5]; 5],
}

impl CMat5 {
    /// The zero matrix.
    pub fn zero() -> Self {
        CMat5 {
            entries: [[Complex64::ZERO; 5]; 5],
        }
    }

    /// The identity matrix.
    pub fn identity() -> Self {
        let mut m = Self::zero();
        for k in 0..5 {
            m.entries[k][k] = Complex64::ONE;
        }
        m
    }

    /// Build from a closure over (row, col), 0-based.
    pub fn from_fn(f: impl Fn(usize, usize) -> Complex64) -> Self {
        let mut m = Self::zero();
        for r in 0..5 {
            for c in 0..5 {
                m.entries[r][c] = f(r, c);
            }
        }
        m
    }

    /// Diagonal matrix with the given complex entries.
    pub fn diag(d: [Complex64; 5]) -> Self {
        Self::from_fn(|r, c| if r == c { d[r] } else { Complex64::ZERO })
    }

    /// Purely imaginary diagonal matrix i·diag(d₁,…,d₅).
    pub fn imag_diag(d: [f64; 5]) -> Self {
        Self::diag(d.map(|x| Complex64::new(0.0, x)))
    }

    /// Entry at (row, col), 0-based.
    pub fn get(&self, r: usize, c: usize) -> Complex64 {
        self.entries[r][c]
    }

    /// Set entry at (row, col), 0-based.
    pub fn set(&mut self, r: usize, c: usize, v: Complex64) {
        self.entries[r][c] = v;
    }

    /// Conjugate transpose Aᴴ.
    pub fn dagger(&self) -> Self {
        Self::from_fn(|r, c| self.entries[c][r].conj())
    }

    /// Transpose Aᵀ (no conjugation).
    pub fn transpose(&self) -> Self {
        Self::from_fn(|r, c| self.entries[c][r])
    }

    /// Matrix trace.
    pub fn trace(&self) -> Complex64 {
        (0..5).map(|k| self.entries[k][k]).sum()
    }

    /// Largest entry magnitude; the max-norm used by residual checks.
    pub fn max_abs(&self) -> f64 {
        self.entries
            .iter()
            .flatten()
            .map(|z| z.norm())
            .fold(0.0, f64::max)
    }

    /// True when every entry is finite.
    pub fn is_finite(&self) -> bool {
        self.entries
            .iter()
            .flatten()
            .all(|z| z.re.is_finite() && z.im.is_finite())
    }

    /// Xᴴ = −X to tolerance `tol`.
    pub fn is_anti_hermitian(&self, tol: f64) -> bool {
        (*self + self.dagger()).max_abs() <= tol
    }

    /// tr X = 0 to tolerance `tol`.
    pub fn is_traceless(&self, tol: f64) -> bool {
        self.trace().norm() <= tol
    }

    /// U·Uᴴ = I to tolerance `tol`.
    pub fn is_unitary(&self, tol: f64) -> bool {
        (*self * self.dagger() - Self::identity()).max_abs() <= tol
    }

    /// Norm induced by [`inner`]; meaningful for anti-Hermitian matrices.
    pub fn norm(&self) -> f64 {
        inner(self, self).max(0.0).sqrt()
    }
}

impl std::ops::Add for CMat5 {
    type Output = CMat5;
    fn add(self, rhs: CMat5) -> CMat5 {
        CMat5::from_fn(|r, c| self.entries[r][c] + rhs.entries[r][c])
    }
}

impl std::ops::Sub for CMat5 {
    type Output = CMat5;
    fn sub(self, rhs: CMat5) -> CMat5 {
        CMat5::from_fn(|r, c| self.entries[r][c] - rhs.entries[r][c])
    }
}

impl std::ops::Neg for CMat5 {
    type Output = CMat5;
    fn neg(self) -> CMat5 {
        CMat5::from_fn(|r, c| -self.entries[r][c])
    }
}

impl std::ops::Mul for CMat5 {
    type Output = CMat5;
    fn mul(self, rhs: CMat5) -> CMat5 {
        let mut out = CMat5::zero();
        for r in 0..5 {
            for k in 0..5 {
                let a = self.entries[r][k];
                if a == Complex64::ZERO {
                    continue;
                }
                for c in 0..5 {
                    out.entries[r][c] += a * rhs.entries[k][c];
                }
            }
        }
        out
    }
}

impl std::ops::Mul<f64> for CMat5 {
    type Output = CMat5;
    fn mul(self, s: f64) -> CMat5 {
        CMat5::from_fn(|r, c| self.entries[r][c] * s)
    }
}

impl std::ops::Mul<Complex64> for CMat5 {
    type Output = CMat5;
    fn mul(self, s: Complex64) -> CMat5 {
        CMat5::from_fn(|r, c| self.entries[r][c] * s)
    }
}

/// Commutator [A, B] = AB − BA. Anti-Hermitian inputs give anti-Hermitian
/// output.
pub fn bracket(a: &CMat5, b: &CMat5) -> CMat5 {
    *a * *b - *b * *a
}

/// Invariant inner product ⟨A,B⟩ = −(1/4)·Re tr(AB).
///
/// Symmetric and real-bilinear; positive definite on anti-Hermitian
/// matrices, where it equals (1/4)·Re⟨A,B⟩_Frobenius.
pub fn inner(a: &CMat5, b: &CMat5) -> f64 {
    let mut tr = 0.0;
    for r in 0..5 {
        for k in 0..5 {
            // Re of (AB)_{rr} accumulated entrywise.
            let x = a.get(r, k);
            let y = b.get(k, r);
            tr += x.re * y.re - x.im * y.im;
        }
    }
    -INNER_SCALE * tr
}

/// A real-linear subspace of anti-Hermitian 5×5 matrices, stored as an
/// orthonormal basis under [`inner`].
#[derive(Clone, Debug)]
pub struct Subspace {
    basis: Vec<CMat5>,
}

impl Subspace {
    /// Wrap an already-orthonormal anti-Hermitian traceless basis.
    ///
    /// Validates the Gram matrix to 1e-10 and each predicate to 1e-12.
    pub fn from_orthonormal(basis: Vec<CMat5>) -> Result<Self> {
        let s = Self::from_orthonormal_in_u5(basis)?;
        for (i, b) in s.basis.iter().enumerate() {
            if !b.is_traceless(TOL_PREDICATE) {
                return Err(Error::Containment(format!(
                    "basis element {i} is not traceless (trace norm {:.3e})",
                    b.trace().norm()
                )));
            }
        }
        Ok(s)
    }

    /// Like [`Subspace::from_orthonormal`] but without the traceless check.
    ///
    /// The torus algebras of T¹_p and T₍₀₎ live in u(5) rather than su(5);
    /// everything else goes through the traceless constructor.
    pub fn from_orthonormal_in_u5(basis: Vec<CMat5>) -> Result<Self> {
        for (i, b) in basis.iter().enumerate() {
            if !b.is_finite() || !b.is_anti_hermitian(TOL_PREDICATE) {
                return Err(Error::Containment(format!(
                    "basis element {i} is not anti-Hermitian"
                )));
            }
        }
        for i in 0..basis.len() {
            for j in i..basis.len() {
                let g = inner(&basis[i], &basis[j]);
                let want = if i == j { 1.0 } else { 0.0 };
                if (g - want).abs() > TOL_ALGEBRAIC {
                    return Err(Error::Containment(format!(
                        "Gram({i},{j}) = {g:.3e} deviates from identity"
                    )));
                }
            }
        }
        Ok(Subspace { basis })
    }

    /// Dimension (number of basis elements).
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// The orthonormal basis, in construction order.
    pub fn basis(&self) -> &[CMat5] {
        &self.basis
    }

    /// Orthogonal projection of `x` onto this subspace. Idempotent and
    /// self-adjoint with respect to [`inner`].
    pub fn project(&self, x: &CMat5) -> CMat5 {
        let mut out = CMat5::zero();
        for b in &self.basis {
            out = out + *b * inner(x, b);
        }
        out
    }

    /// Distance from `x` to the subspace: ‖x − proj(x)‖.
    pub fn residual(&self, x: &CMat5) -> f64 {
        (*x - self.project(x)).norm()
    }

    /// Membership to tolerance `tol`.
    pub fn contains(&self, x: &CMat5, tol: f64) -> bool {
        self.residual(x) <= tol
    }
}

/// Gram–Schmidt orthonormalization preserving input order.
///
/// Fails with the offending index when a vector lies within 1e-10 of the
/// span of its predecessors.
pub fn orthonormalize(vectors: &[CMat5]) -> Result<Subspace> {
    let mut basis: Vec<CMat5> = Vec::with_capacity(vectors.len());
    for (index, v) in vectors.iter().enumerate() {
        let mut w = *v;
        // Two modified Gram-Schmidt passes for orthogonality near 1e-15.
        for _ in 0..2 {
            for b in &basis {
                w = w - *b * inner(&w, b);
            }
        }
        let n = w.norm();
        if n < TOL_ALGEBRAIC {
            return Err(Error::RankDeficient { index });
        }
        basis.push(w * (1.0 / n));
    }
    Subspace::from_orthonormal_in_u5(basis)
}

/// Orthonormalize while silently dropping dependent vectors. Used for span
/// computations (eigenspaces, complements) where rank loss is expected.
pub(crate) fn span_basis(vectors: &[CMat5]) -> Vec<CMat5> {
    let mut basis: Vec<CMat5> = Vec::new();
    for v in vectors {
        let mut w = *v;
        for _ in 0..2 {
            for b in &basis {
                w = w - *b * inner(&w, b);
            }
        }
        let n = w.norm();
        if n >= TOL_ALGEBRAIC {
            basis.push(w * (1.0 / n));
        }
    }
    basis
}

/// JSON interchange form: `{"rows": 5, "cols": 5, "data": [[re, im] × 25]}`
/// with `data` in row-major order.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MatrixJson {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<[f64; 2]>,
}

impl CMat5 {
    /// Serialize into the interchange form.
    pub fn to_json(&self) -> MatrixJson {
        let mut data = Vec::with_capacity(25);
        for r in 0..5 {
            for c in 0..5 {
                let z = self.entries[r][c];
                data.push([z.re, z.im]);
            }
        }
        MatrixJson {
            rows: 5,
            cols: 5,
            data,
        }
    }

    /// Parse from the interchange form, validating shape and finiteness.
    pub fn from_json(j: &MatrixJson) -> Result<Self> {
        if j.rows != 5 || j.cols != 5 {
            return Err(Error::Malformed {
                what: "matrix JSON",
                field: "rows/cols".into(),
                problem: format!("must be 5x5, got {}x{}", j.rows, j.cols),
            });
        }
        if j.data.len() != 25 {
            return Err(Error::Malformed {
                what: "matrix JSON",
                field: "data".into(),
                problem: format!("must hold 25 entries, got {}", j.data.len()),
            });
        }
        let m = CMat5::from_fn(|r, c| {
            let [re, im] = j.data[5 * r + c];
            Complex64::new(re, im)
        });
        if !m.is_finite() {
            return Err(Error::Malformed {
                what: "matrix JSON",
                field: "data".into(),
                problem: "contains non-finite entries".into(),
            });
        }
        Ok(m)
    }
}

/// Random anti-Hermitian matrix with O(1) entries; shared by the seeded
/// property suites.
#[cfg(test)]
pub(crate) fn random_anti_hermitian(rng: &mut rand_chacha::ChaCha8Rng) -> CMat5 {
    use rand::Rng;
    let mut m = CMat5::zero();
    for a in 0..5 {
        m.set(a, a, Complex64::new(0.0, rng.random_range(-1.0..1.0)));
        for b in (a + 1)..5 {
            let z = Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
            m.set(a, b, z);
            m.set(b, a, -z.conj());
        }
    }
    m
}

/// Startup self-check pinning the inner-product scale: M₁ = √2·Q₁₅ must be
/// a unit vector and T = i·diag(1,1,1,1,−4) must have ‖T‖² = 5.
pub fn self_check() -> Result<()> {
    let mut q15 = CMat5::zero();
    q15.set(0, 4, Complex64::ONE);
    q15.set(4, 0, -Complex64::ONE);
    let m1 = q15 * 2f64.sqrt();
    let t = CMat5::imag_diag([1.0, 1.0, 1.0, 1.0, -4.0]);
    let e1 = (inner(&m1, &m1) - 1.0).abs();
    let e2 = (inner(&t, &t) - 5.0).abs();
    if e1 > TOL_ALGEBRAIC || e2 > TOL_ALGEBRAIC {
        return Err(Error::Containment(format!(
            "inner-product scale check failed: |⟨M1,M1⟩−1| = {e1:.3e}, |⟨T,T⟩−5| = {e2:.3e}"
        )));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::{heintze_basis, q, r};
    use rand::Rng;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn sq2() -> f64 {
        2f64.sqrt()
    }

    #[test]
    fn bracket_is_antisymmetric() {
        let a = q(1, 2);
        assert_eq!(bracket(&a, &a).max_abs(), 0.0);
    }

    #[test]
    fn bracket_q12_q23_is_q13() {
        // Oracle: direct 5x5 multiplication.
        let lhs = bracket(&q(1, 2), &q(2, 3));
        assert!((lhs - q(1, 3)).max_abs() < 1e-15);
    }

    #[test]
    fn bracket_q15_r15_is_2p1() {
        let lhs = bracket(&q(1, 5), &r(1, 5));
        let p1 = CMat5::imag_diag([1.0, 0.0, 0.0, 0.0, -1.0]);
        assert!((lhs - p1 * 2.0).max_abs() < 1e-15);
    }

    #[test]
    fn inner_normalization() {
        let m1 = q(1, 5) * sq2();
        assert!((inner(&m1, &m1) - 1.0).abs() < 1e-15);
        let m2 = q(2, 5) * sq2();
        assert!(inner(&m1, &m2).abs() < 1e-15);
        let t = CMat5::imag_diag([1.0, 1.0, 1.0, 1.0, -4.0]);
        assert!((inner(&t, &t) - 5.0).abs() < 1e-15);
    }

    #[test]
    fn self_check_passes() {
        self_check().unwrap();
    }

    #[test]
    fn bracket_bilinearity_and_jacobi() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..100 {
            let a = random_anti_hermitian(&mut rng);
            let b = random_anti_hermitian(&mut rng);
            let c = random_anti_hermitian(&mut rng);
            let s = rng.random_range(-2.0..2.0);
            let bil = bracket(&(a * s + b), &c) - (bracket(&a, &c) * s + bracket(&b, &c));
            assert!(bil.max_abs() < TOL_ALGEBRAIC);
            let jac = bracket(&a, &bracket(&b, &c))
                + bracket(&b, &bracket(&c, &a))
                + bracket(&c, &bracket(&a, &b));
            assert!(jac.max_abs() < TOL_ALGEBRAIC);
            assert!(bracket(&a, &b).is_anti_hermitian(TOL_ALGEBRAIC));
        }
    }

    #[test]
    fn inner_ad_invariance() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        for _ in 0..100 {
            let z = random_anti_hermitian(&mut rng);
            let a = random_anti_hermitian(&mut rng);
            let b = random_anti_hermitian(&mut rng);
            let lhs = inner(&bracket(&z, &a), &b) + inner(&a, &bracket(&z, &b));
            assert!(lhs.abs() < TOL_ALGEBRAIC);
        }
    }

    #[test]
    fn project_is_idempotent_and_self_adjoint() {
        let ms = heintze_basis();
        let s = Subspace::from_orthonormal(vec![ms[0], ms[8], ms[12]]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for _ in 0..50 {
            let x = random_anti_hermitian(&mut rng);
            let y = random_anti_hermitian(&mut rng);
            let px = s.project(&x);
            assert!((s.project(&px) - px).max_abs() < TOL_ALGEBRAIC);
            let lhs = inner(&s.project(&x), &y);
            let rhs = inner(&x, &s.project(&y));
            assert!((lhs - rhs).abs() < TOL_ALGEBRAIC);
        }
        // Idempotence on members: project(v, S) = v for v in S.
        let v = ms[8];
        assert!((s.project(&v) - v).max_abs() < 1e-14);
    }

    #[test]
    fn project_diag_combination_onto_m() {
        // project(P1 + P3, m) = (1/2) M13: the only diagonal direction of m.
        let m = crate::lie::space_m();
        let p1 = CMat5::imag_diag([1.0, 0.0, 0.0, 0.0, -1.0]);
        let p3 = CMat5::imag_diag([0.0, 0.0, 1.0, 0.0, -1.0]);
        let want = heintze_basis()[12] * 0.5;
        assert!((m.project(&(p1 + p3)) - want).max_abs() < TOL_ALGEBRAIC);
    }

    #[test]
    fn orthonormalize_examples() {
        let ms = heintze_basis();
        // Already-orthonormal input is unchanged.
        let s = orthonormalize(&[ms[0], ms[1]]).unwrap();
        assert!((s.basis()[0] - ms[0]).max_abs() < 1e-14);
        assert!((s.basis()[1] - ms[1]).max_abs() < 1e-14);

        // Hand Gram-Schmidt with ‖Q_kl‖² = 1/2.
        let s = orthonormalize(&[q(1, 2), q(1, 2) + q(1, 3)]).unwrap();
        assert!((s.basis()[0] - q(1, 2) * sq2()).max_abs() < 1e-14);
        assert!((s.basis()[1] - q(1, 3) * sq2()).max_abs() < 1e-14);

        // Dependent input errors with the offending index.
        match orthonormalize(&[q(1, 2), q(1, 2) * 2.0]) {
            Err(Error::RankDeficient { index }) => assert_eq!(index, 1),
            other => panic!("expected rank deficiency, got {other:?}"),
        }
    }

    #[test]
    fn matrix_json_round_trip_and_validation() {
        let mut rng = ChaCha8Rng::seed_from_u64(14);
        let m = random_anti_hermitian(&mut rng);
        let j = m.to_json();
        let back = CMat5::from_json(&j).unwrap();
        assert!((m - back).max_abs() == 0.0);

        let mut bad = m.to_json();
        bad.data.pop();
        assert!(matches!(
            CMat5::from_json(&bad),
            Err(Error::Malformed { .. })
        ));
        let mut bad = m.to_json();
        bad.rows = 4;
        assert!(matches!(
            CMat5::from_json(&bad),
            Err(Error::Malformed { .. })
        ));
    }
}
