//! Construction of the subgroup Lie algebras inside su(5), the 13-vector
//! tangent basis M₁…M₁₃ of the quotient, and subspace set operations.
//!
//! Algebras defined by matrix equations (su(5), sp(2), the SU(3) block g̃,
//! the U(2) block g₁) are built by solving their real-linear defining
//! equations through a null-space computation and then orthonormalizing —
//! not by hardcoding basis matrices. The circle algebras come straight from
//! their exponent tuples. Rank decisions use a fixed singular-value
//! threshold of 1e-8.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use once_cell::sync::Lazy;

use crate::mat::{bracket, inner, orthonormalize, span_basis, CMat5, Subspace};
use crate::{Error, Result, TOL_ALGEBRAIC, TOL_RANK};

/// Generator family from the standard matrix units E_{kl}.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GeneratorKind {
    /// E_{kl}: single unit entry.
    E,
    /// Q_{kl} = E_{kl} − E_{lk} (antisymmetric real).
    Q,
    /// R_{kl} = i(E_{kl} + E_{lk}) (symmetric imaginary).
    R,
    /// P_k = i(E_{kk} − E_{55}).
    P,
}

impl std::fmt::Display for GeneratorKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let c = match self {
            GeneratorKind::E => 'E',
            GeneratorKind::Q => 'Q',
            GeneratorKind::R => 'R',
            GeneratorKind::P => 'P',
        };
        write!(f, "{c}")
    }
}

/// Index pair selecting one generator; P uses only `k`.
#[derive(Clone, Copy, Debug)]
pub struct GeneratorSpec {
    pub kind: GeneratorKind,
    pub k: usize,
    pub l: usize,
}

/// Build the literal generator matrix. Indices are 1-based and must lie in
/// 1..=5; Q and R additionally require k ≠ l.
pub fn generator(spec: GeneratorSpec) -> Result<CMat5> {
    let GeneratorSpec { kind, k, l } = spec;
    let bad = |k, l| Error::InvalidIndex {
        kind: match kind {
            GeneratorKind::E => 'E',
            GeneratorKind::Q => 'Q',
            GeneratorKind::R => 'R',
            GeneratorKind::P => 'P',
        },
        k,
        l,
    };
    let in_range = |x: usize| (1..=5).contains(&x);
    match kind {
        GeneratorKind::E => {
            if !in_range(k) || !in_range(l) {
                return Err(bad(k, l));
            }
            Ok(e(k, l))
        }
        GeneratorKind::Q => {
            if !in_range(k) || !in_range(l) || k == l {
                return Err(bad(k, l));
            }
            Ok(q(k, l))
        }
        GeneratorKind::R => {
            if !in_range(k) || !in_range(l) || k == l {
                return Err(bad(k, l));
            }
            Ok(r(k, l))
        }
        GeneratorKind::P => {
            if !in_range(k) {
                return Err(bad(k, 0));
            }
            Ok(p(k))
        }
    }
}

/// E_{kl}, 1-based, unchecked.
pub fn e(k: usize, l: usize) -> CMat5 {
    let mut m = CMat5::zero();
    m.set(k - 1, l - 1, Complex64::ONE);
    m
}

/// Q_{kl} = E_{kl} − E_{lk}, 1-based, unchecked.
pub fn q(k: usize, l: usize) -> CMat5 {
    e(k, l) - e(l, k)
}

/// R_{kl} = i(E_{kl} + E_{lk}), 1-based, unchecked.
pub fn r(k: usize, l: usize) -> CMat5 {
    (e(k, l) + e(l, k)) * Complex64::I
}

/// P_k = i(E_{kk} − E_{55}), 1-based, unchecked.
pub fn p(k: usize) -> CMat5 {
    (e(k, k) - e(5, 5)) * Complex64::I
}

/// The 13 tangent vectors M₁…M₁₃ of the quotient, in order:
/// M_j = √2·Q_{j5} and M_{j+4} = √2·R_{j5} for j = 1..4, then
/// M₉ = Q₁₂−Q₃₄, M₁₀ = Q₁₄−Q₂₃, M₁₁ = R₁₂+R₃₄, M₁₂ = R₁₄−R₂₃,
/// M₁₃ = P₁−P₂+P₃−P₄.
///
/// Orthonormal under [`inner`] and orthogonal to the isotropy algebra h.
pub fn heintze_basis() -> &'static [CMat5; 13] {
    static BASIS: Lazy<[CMat5; 13]> = Lazy::new(|| {
        let s = 2f64.sqrt();
        [
            q(1, 5) * s,
            q(2, 5) * s,
            q(3, 5) * s,
            q(4, 5) * s,
            r(1, 5) * s,
            r(2, 5) * s,
            r(3, 5) * s,
            r(4, 5) * s,
            q(1, 2) - q(3, 4),
            q(1, 4) - q(2, 3),
            r(1, 2) + r(3, 4),
            r(1, 4) - r(2, 3),
            p(1) - p(2) + p(3) - p(4),
        ]
    });
    &BASIS
}

/// Names of the constructible algebras and distinguished subspaces.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AlgebraName {
    /// su(5): anti-Hermitian traceless, dim 24.
    Su5,
    /// sp(2) ⊂ su(4) ⊂ su(5) via X·J + J·Xᵀ = 0 in the upper 4×4 block,
    /// embedded as diag(A, 1); dim 10.
    Sp2,
    /// Circle diag(z,z,z,z,z⁻⁴); dim 1.
    T1,
    /// Circle diag(z^p,z^p,z^p,z^p,z) in u(5); dim 1. Requires p ≥ 1.
    T1p(u32),
    /// Circle diag(z,z,z,z,1) in u(5); dim 1.
    T0,
    /// Circle diag(z^k,z^l,z^{−(k+l)}) inside the SU(3) block (rows/cols
    /// 3..5); dim 1. Requires (k,l) ≠ (0,0).
    Tkl(i64, i64),
    /// u(2) block inside the SU(3) block: diag(I₂, A, det A⁻¹); dim 4.
    G1,
    /// su(3) block at rows/cols 3..5 (the group G̃); dim 8.
    GTilde,
    /// Isotropy algebra sp(2) ⊕ t¹; dim 11.
    H,
    /// Orthogonal complement of h in su(5); dim 13. Not a subalgebra.
    M,
}

impl AlgebraName {
    /// Dimension mandated for each named space.
    pub fn expected_dim(&self) -> usize {
        match self {
            AlgebraName::Su5 => 24,
            AlgebraName::Sp2 => 10,
            AlgebraName::T1 | AlgebraName::T1p(_) | AlgebraName::T0 | AlgebraName::Tkl(_, _) => 1,
            AlgebraName::G1 => 4,
            AlgebraName::GTilde => 8,
            AlgebraName::H => 11,
            AlgebraName::M => 13,
        }
    }
}

impl std::fmt::Display for AlgebraName {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            AlgebraName::Su5 => write!(f, "su5"),
            AlgebraName::Sp2 => write!(f, "sp2"),
            AlgebraName::T1 => write!(f, "t1"),
            AlgebraName::T1p(p) => write!(f, "t1_p(p={p})"),
            AlgebraName::T0 => write!(f, "t0"),
            AlgebraName::Tkl(k, l) => write!(f, "t_kl(k={k},l={l})"),
            AlgebraName::G1 => write!(f, "g1"),
            AlgebraName::GTilde => write!(f, "g_tilde"),
            AlgebraName::H => write!(f, "h"),
            AlgebraName::M => write!(f, "m"),
        }
    }
}

/// A named algebra together with its orthonormal basis.
#[derive(Clone, Debug)]
pub struct NamedAlgebra {
    pub name: AlgebraName,
    pub space: Subspace,
}

// --- real-linear null-space machinery -------------------------------------

/// Real vectorization of a complex 5×5 matrix: 25 real parts then 25
/// imaginary parts, row-major. Euclidean dot of vectorizations equals
/// Re⟨A,B⟩_Frobenius = 4·inner(A,B) on anti-Hermitian matrices.
pub(crate) fn vectorize(m: &CMat5) -> DVector<f64> {
    let mut v = DVector::zeros(50);
    for row in 0..5 {
        for col in 0..5 {
            let z = m.get(row, col);
            v[5 * row + col] = z.re;
            v[25 + 5 * row + col] = z.im;
        }
    }
    v
}

fn unvectorize(v: &DVector<f64>) -> CMat5 {
    CMat5::from_fn(|row, col| Complex64::new(v[5 * row + col], v[25 + 5 * row + col]))
}

/// Canonical real basis of the 50-dimensional space of complex matrices.
fn canonical_basis() -> Vec<CMat5> {
    let mut out = Vec::with_capacity(50);
    for im in [false, true] {
        for row in 0..5 {
            for col in 0..5 {
                let mut m = CMat5::zero();
                let unit = if im { Complex64::I } else { Complex64::ONE };
                m.set(row, col, unit);
                out.push(m);
            }
        }
    }
    out
}

/// Joint null space of a family of real-linear matrix maps, returned as an
/// orthonormal basis. Works through the 50×50 normal matrix KᵀK and its
/// symmetric eigendecomposition; eigenvalues below the squared rank
/// threshold count as zero.
fn null_space(maps: &[&dyn Fn(&CMat5) -> CMat5]) -> Vec<CMat5> {
    let cb = canonical_basis();
    let mut normal = DMatrix::<f64>::zeros(50, 50);
    for map in maps {
        let mut k = DMatrix::<f64>::zeros(50, 50);
        for (j, b) in cb.iter().enumerate() {
            k.set_column(j, &vectorize(&map(b)));
        }
        normal += k.transpose() * &k;
    }
    let eig = normal.symmetric_eigen();
    let mut vectors = Vec::new();
    for (idx, &lambda) in eig.eigenvalues.iter().enumerate() {
        if lambda.abs() < TOL_RANK * TOL_RANK {
            vectors.push(unvectorize(&eig.eigenvectors.column(idx).into_owned()));
        }
    }
    span_basis(&vectors)
}

fn anti_hermitian_constraint(x: &CMat5) -> CMat5 {
    *x + x.dagger()
}

fn traceless_constraint(x: &CMat5) -> CMat5 {
    CMat5::identity() * x.trace()
}

/// Zero outside a set of allowed (row, col) positions, 0-based.
fn support_constraint(allowed: impl Fn(usize, usize) -> bool + Copy) -> impl Fn(&CMat5) -> CMat5 {
    move |x: &CMat5| CMat5::from_fn(|row, col| if allowed(row, col) { Complex64::ZERO } else { x.get(row, col) })
}

/// The symplectic form J of the 4×4 block, embedded in 5×5.
fn j_embedded() -> CMat5 {
    q(1, 3) + q(2, 4)
}

fn symplectic_constraint(x: &CMat5) -> CMat5 {
    let j = j_embedded();
    *x * j + j * x.transpose()
}

fn circle_algebra(name: AlgebraName, exponents: [f64; 5], traceless: bool) -> Result<NamedAlgebra> {
    let gen = CMat5::imag_diag(exponents);
    let basis = vec![gen * (1.0 / gen.norm())];
    let space = if traceless {
        Subspace::from_orthonormal(basis)?
    } else {
        Subspace::from_orthonormal_in_u5(basis)?
    };
    Ok(NamedAlgebra { name, space })
}

fn build_algebra(name: AlgebraName) -> Result<NamedAlgebra> {
    let ah = anti_hermitian_constraint;
    let tl = traceless_constraint;
    let space = match name {
        AlgebraName::Su5 => {
            let basis = null_space(&[&ah, &tl]);
            Subspace::from_orthonormal(basis)?
        }
        AlgebraName::Sp2 => {
            let block = support_constraint(|row, col| row < 4 && col < 4);
            let sp = symplectic_constraint;
            let basis = null_space(&[&ah, &tl, &block, &sp]);
            Subspace::from_orthonormal(basis)?
        }
        AlgebraName::GTilde => {
            let block = support_constraint(|row, col| row >= 2 && col >= 2);
            let basis = null_space(&[&ah, &tl, &block]);
            Subspace::from_orthonormal(basis)?
        }
        AlgebraName::G1 => {
            // u(2) block at rows/cols 3,4 plus the compensating (5,5) entry.
            let block = support_constraint(|row, col| {
                (row == 2 || row == 3) && (col == 2 || col == 3) || (row == 4 && col == 4)
            });
            let basis = null_space(&[&ah, &tl, &block]);
            Subspace::from_orthonormal(basis)?
        }
        AlgebraName::T1 => return circle_algebra(name, [1.0, 1.0, 1.0, 1.0, -4.0], true),
        AlgebraName::T1p(p) => {
            if p < 1 {
                return Err(Error::InvalidAlgebra("t1_p requires p >= 1".into()));
            }
            let pf = p as f64;
            return circle_algebra(name, [pf, pf, pf, pf, 1.0], false);
        }
        AlgebraName::T0 => return circle_algebra(name, [1.0, 1.0, 1.0, 1.0, 0.0], false),
        AlgebraName::Tkl(k, l) => {
            if k == 0 && l == 0 {
                return Err(Error::InvalidAlgebra("t_kl requires (k,l) != (0,0)".into()));
            }
            let (kf, lf) = (k as f64, l as f64);
            return circle_algebra(name, [0.0, 0.0, kf, lf, -(kf + lf)], true);
        }
        AlgebraName::H => {
            let sp2 = algebra(AlgebraName::Sp2)?;
            let t1 = algebra(AlgebraName::T1)?;
            let mut basis = sp2.space.basis().to_vec();
            basis.extend_from_slice(t1.space.basis());
            orthonormalize(&basis)?
        }
        AlgebraName::M => {
            let h = algebra(AlgebraName::H)?;
            let su5 = algebra(AlgebraName::Su5)?;
            orthocomplement(&h.space, &su5.space)?
        }
    };
    if space.dim() != name.expected_dim() {
        return Err(Error::InvalidAlgebra(format!(
            "{name} constructed with dim {} instead of {}",
            space.dim(),
            name.expected_dim()
        )));
    }
    Ok(NamedAlgebra { name, space })
}

static SU5: Lazy<NamedAlgebra> = Lazy::new(|| build_algebra(AlgebraName::Su5).unwrap());
static SP2: Lazy<NamedAlgebra> = Lazy::new(|| build_algebra(AlgebraName::Sp2).unwrap());
static T1: Lazy<NamedAlgebra> = Lazy::new(|| build_algebra(AlgebraName::T1).unwrap());
static T0: Lazy<NamedAlgebra> = Lazy::new(|| build_algebra(AlgebraName::T0).unwrap());
static G1: Lazy<NamedAlgebra> = Lazy::new(|| build_algebra(AlgebraName::G1).unwrap());
static GTILDE: Lazy<NamedAlgebra> = Lazy::new(|| build_algebra(AlgebraName::GTilde).unwrap());
static H: Lazy<NamedAlgebra> = Lazy::new(|| build_algebra(AlgebraName::H).unwrap());
static M: Lazy<NamedAlgebra> = Lazy::new(|| build_algebra(AlgebraName::M).unwrap());

/// Construct (or fetch) a named algebra with an orthonormal basis spanning
/// the solution set of its defining equations.
pub fn algebra(name: AlgebraName) -> Result<NamedAlgebra> {
    Ok(match name {
        AlgebraName::Su5 => SU5.clone(),
        AlgebraName::Sp2 => SP2.clone(),
        AlgebraName::T1 => T1.clone(),
        AlgebraName::T0 => T0.clone(),
        AlgebraName::G1 => G1.clone(),
        AlgebraName::GTilde => GTILDE.clone(),
        AlgebraName::H => H.clone(),
        AlgebraName::M => M.clone(),
        AlgebraName::T1p(_) | AlgebraName::Tkl(_, _) => build_algebra(name)?,
    })
}

/// The ambient algebra su(5).
pub fn space_su5() -> &'static Subspace {
    &SU5.space
}

/// The isotropy algebra h = sp(2) ⊕ t¹.
pub fn space_h() -> &'static Subspace {
    &H.space
}

/// The tangent model m = h^⊥ ∩ su(5).
pub fn space_m() -> &'static Subspace {
    &M.space
}

/// Orthonormal basis of the orthogonal complement of `inner_space` inside
/// `ambient`. Fails when `inner_space` is not contained in `ambient`.
pub fn orthocomplement(inner_space: &Subspace, ambient: &Subspace) -> Result<Subspace> {
    for (i, b) in inner_space.basis().iter().enumerate() {
        let res = ambient.residual(b);
        if res > TOL_ALGEBRAIC {
            return Err(Error::Containment(format!(
                "inner basis vector {i} lies outside the ambient space (residual {res:.3e})"
            )));
        }
    }
    let complement: Vec<CMat5> = ambient
        .basis()
        .iter()
        .map(|b| *b - inner_space.project(b))
        .collect();
    let basis = span_basis(&complement);
    if basis.len() != ambient.dim() - inner_space.dim() {
        return Err(Error::Containment(format!(
            "complement dimension {} != {} - {}",
            basis.len(),
            ambient.dim(),
            inner_space.dim()
        )));
    }
    Subspace::from_orthonormal_in_u5(basis)
}

/// Rank of a list of matrices viewed as real 50-vectors, via singular
/// values against the fixed 1e-8 threshold.
pub(crate) fn rank_of(vectors: &[CMat5]) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    let mut stack = DMatrix::<f64>::zeros(vectors.len(), 50);
    for (i, v) in vectors.iter().enumerate() {
        stack.set_row(i, &vectorize(v).transpose());
    }
    stack
        .singular_values()
        .iter()
        .filter(|s| **s > TOL_RANK)
        .count()
}

/// Dimension of A ∩ B, computed as dim A + dim B − rank(A ∪ B).
pub fn intersect_dim(a: &Subspace, b: &Subspace) -> usize {
    let mut all = a.basis().to_vec();
    all.extend_from_slice(b.basis());
    a.dim() + b.dim() - rank_of(&all)
}
