//! Sectional curvature of the normally homogeneous quotient
//! SU(5)/(Sp(2)×T¹).
//!
//! For orthonormal tangent vectors X, Y ∈ m the curvature is
//!
//! ```text
//! K(X,Y) = (1/4)·‖[X,Y]_m‖² + ‖[X,Y]_h‖²
//! ```
//!
//! with the bracket split into its m- and h-components under the invariant
//! inner product. This convention is over-determined by the two exact
//! values it must reproduce: K = 29/4 on span{(M₁+M₇)/√2, (M₃−M₅)/√2} and
//! K = 4/37 on the minimal plane with coefficients √(12/37), √(13/37).
//! [`sectional`] rejects non-orthonormal input; [`plane_curvature`] is the
//! Gram-normalized entry point used by the optimizer.

use serde::{Deserialize, Serialize};

use crate::involution::{make_map, Check, MapLabel};
use crate::lie::{heintze_basis, space_h, space_m};
use crate::mat::{bracket, inner, CMat5};
use crate::{Error, Result, TOL_ALGEBRAIC, TOL_CURVATURE};

/// Gram-determinant threshold below which a spanning pair is degenerate.
pub const TOL_GRAM_DET: f64 = 1e-12;

/// Split [X,Y] into its m- and h-components (in that order).
///
/// Inputs must lie in m (projection residual onto h below 1e-10).
pub fn bracket_parts(x: &CMat5, y: &CMat5) -> Result<(CMat5, CMat5)> {
    for v in [x, y] {
        let res = space_h().project(v).norm();
        if res > TOL_ALGEBRAIC * v.norm().max(1.0) {
            return Err(Error::NotInSubspace {
                space: "m",
                residual: res,
            });
        }
    }
    let b = bracket(x, y);
    let h_part = space_h().project(&b);
    let m_part = space_m().project(&b);
    Ok((m_part, h_part))
}

/// Sectional curvature of the plane spanned by an orthonormal pair in m.
///
/// Rejects non-orthonormal pairs; normalize through [`plane_curvature`]
/// instead of silently rescaling.
pub fn sectional(x: &CMat5, y: &CMat5) -> Result<f64> {
    let res = (inner(x, x) - 1.0)
        .abs()
        .max((inner(y, y) - 1.0).abs())
        .max(inner(x, y).abs());
    if res > TOL_ALGEBRAIC {
        return Err(Error::NotOrthonormal { residual: res });
    }
    let (m_part, h_part) = bracket_parts(x, y)?;
    Ok(0.25 * inner(&m_part, &m_part) + inner(&h_part, &h_part))
}

/// Sectional curvature of span{X, Y} for any linearly independent pair in
/// m; invariant under invertible changes of the spanning pair.
pub fn plane_curvature(x: &CMat5, y: &CMat5) -> Result<f64> {
    let (gxx, gxy, gyy) = (inner(x, x), inner(x, y), inner(y, y));
    let det = gxx * gyy - gxy * gxy;
    if det < TOL_GRAM_DET {
        return Err(Error::DegeneratePlane { det });
    }
    let (m_part, h_part) = bracket_parts(x, y)?;
    Ok((0.25 * inner(&m_part, &m_part) + inner(&h_part, &h_part)) / det)
}

/// An ordered orthonormal pair of tangent vectors in m, stored both as
/// matrices and as 13-vectors of coefficients in the M-basis.
#[derive(Clone, Debug)]
pub struct TwoPlane {
    x: CMat5,
    y: CMat5,
    coords: [[f64; 13]; 2],
}

/// Raw coordinate form of a plane, as read from or written to JSON:
/// two 13-coefficient vectors in the M-basis.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PlaneJson {
    pub x: Vec<f64>,
    pub y: Vec<f64>,
}

fn coords_to_matrix(c: &[f64; 13]) -> CMat5 {
    let ms = heintze_basis();
    let mut out = CMat5::zero();
    for (k, b) in ms.iter().enumerate() {
        out = out + *b * c[k];
    }
    out
}

fn matrix_to_coords(x: &CMat5) -> [f64; 13] {
    let ms = heintze_basis();
    std::array::from_fn(|k| inner(x, &ms[k]))
}

impl TwoPlane {
    /// Build from two coefficient vectors in the M-basis, orthonormalizing
    /// the pair. Fails on degenerate pairs.
    pub fn from_m_coords(xc: &[f64; 13], yc: &[f64; 13]) -> Result<Self> {
        let nx: f64 = xc.iter().map(|v| v * v).sum::<f64>().sqrt();
        let ny: f64 = yc.iter().map(|v| v * v).sum::<f64>().sqrt();
        let dot: f64 = xc.iter().zip(yc).map(|(a, b)| a * b).sum();
        let det = nx * nx * ny * ny - dot * dot;
        if det < TOL_GRAM_DET || nx == 0.0 {
            return Err(Error::DegeneratePlane { det });
        }
        let a: [f64; 13] = std::array::from_fn(|k| xc[k] / nx);
        let mut b: [f64; 13] = std::array::from_fn(|k| yc[k] - dot / nx * a[k]);
        let nb: f64 = b.iter().map(|v| v * v).sum::<f64>().sqrt();
        for v in &mut b {
            *v /= nb;
        }
        Ok(TwoPlane {
            x: coords_to_matrix(&a),
            y: coords_to_matrix(&b),
            coords: [a, b],
        })
    }

    /// Build from two matrices in m.
    pub fn from_matrices(x: &CMat5, y: &CMat5) -> Result<Self> {
        for v in [x, y] {
            let res = space_h().project(v).norm();
            if res > TOL_ALGEBRAIC * v.norm().max(1.0) {
                return Err(Error::NotInSubspace {
                    space: "m",
                    residual: res,
                });
            }
        }
        Self::from_m_coords(&matrix_to_coords(x), &matrix_to_coords(y))
    }

    /// Parse from the JSON coordinate form, validating field lengths.
    pub fn from_json(j: &PlaneJson) -> Result<Self> {
        for (field, v) in [("x", &j.x), ("y", &j.y)] {
            if v.len() != 13 {
                return Err(Error::Malformed {
                    what: "plane JSON",
                    field: field.into(),
                    problem: format!("must hold 13 coefficients, got {}", v.len()),
                });
            }
            if v.iter().any(|c| !c.is_finite()) {
                return Err(Error::Malformed {
                    what: "plane JSON",
                    field: field.into(),
                    problem: "contains non-finite coefficients".into(),
                });
            }
        }
        let xc: [f64; 13] = std::array::from_fn(|k| j.x[k]);
        let yc: [f64; 13] = std::array::from_fn(|k| j.y[k]);
        Self::from_m_coords(&xc, &yc)
    }

    /// The JSON coordinate form of the stored orthonormal pair.
    pub fn to_json(&self) -> PlaneJson {
        PlaneJson {
            x: self.coords[0].to_vec(),
            y: self.coords[1].to_vec(),
        }
    }

    /// First spanning vector (unit).
    pub fn x(&self) -> &CMat5 {
        &self.x
    }

    /// Second spanning vector (unit, orthogonal to the first).
    pub fn y(&self) -> &CMat5 {
        &self.y
    }

    /// Coefficients of the stored pair in the M-basis.
    pub fn coords(&self) -> &[[f64; 13]; 2] {
        &self.coords
    }

    /// Sectional curvature of the stored plane.
    pub fn curvature(&self) -> Result<f64> {
        sectional(&self.x, &self.y)
    }
}

/// The plane attaining the curvature maximum 29/4:
/// span{(M₁+M₇)/√2, (M₃−M₅)/√2}.
pub fn max_plane() -> TwoPlane {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let mut xc = [0.0; 13];
    xc[0] = s;
    xc[6] = s;
    let mut yc = [0.0; 13];
    yc[2] = s;
    yc[4] = -s;
    TwoPlane::from_m_coords(&xc, &yc).expect("exact coefficients")
}

/// The plane attaining the curvature minimum 4/37:
/// X = √(12/37)·((M₁+M₇)/√2 + (M₂+M₈)/√2) + √(13/37)·M₁₁,
/// Y = −√(12/37)·((M₃−M₅)/√2 − (M₄−M₆)/√2) − √(13/37)·M₁₂.
pub fn min_plane() -> TwoPlane {
    let a = (12f64 / 37.0).sqrt();
    let b = (13f64 / 37.0).sqrt();
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let mut xc = [0.0; 13];
    xc[0] = a * s;
    xc[6] = a * s;
    xc[1] = a * s;
    xc[7] = a * s;
    xc[10] = b;
    let mut yc = [0.0; 13];
    yc[2] = -a * s;
    yc[4] = a * s;
    yc[3] = a * s;
    yc[5] = -a * s;
    yc[11] = -b;
    TwoPlane::from_m_coords(&xc, &yc).expect("exact coefficients")
}

/// Verify that ξ⁻¹ carries the minimal plane onto its companion
/// combination, that the two planes have equal curvature (to 1e-12), and
/// that both equal 4/37 (to 1e-9).
pub fn xi_checks() -> Vec<Check> {
    let mut checks = Vec::new();
    let xi = match make_map(MapLabel::Xi) {
        Ok(m) => m,
        Err(e) => {
            checks.push(Check::new("xi_matrix", false, f64::NAN, e.to_string()));
            return checks;
        }
    };
    let xi_inv = xi.inverse();
    let plane = min_plane();
    let a = (12f64 / 37.0).sqrt();
    let b = (13f64 / 37.0).sqrt();
    let s = std::f64::consts::FRAC_1_SQRT_2;

    // xi^-1(X) = sqrt(12/37)((M1+M7)/sqrt2 + (M4+M6)/sqrt2) + sqrt(13/37) M9.
    let mut xc = [0.0; 13];
    xc[0] = a * s;
    xc[6] = a * s;
    xc[3] = a * s;
    xc[5] = a * s;
    xc[8] = b;
    // xi^-1(Y) = -sqrt(12/37)((M3-M5)/sqrt2 - (M2-M8)/sqrt2) + sqrt(13/37) M10.
    let mut yc = [0.0; 13];
    yc[2] = -a * s;
    yc[4] = a * s;
    yc[1] = a * s;
    yc[7] = -a * s;
    yc[9] = b;

    let ix = xi_inv.apply(plane.x());
    let iy = xi_inv.apply(plane.y());
    let res_x = (ix - coords_to_matrix(&xc)).max_abs();
    let res_y = (iy - coords_to_matrix(&yc)).max_abs();
    checks.push(Check::residual_check(
        "xi_inverse_x",
        res_x,
        TOL_ALGEBRAIC,
        "xi^-1(X) matches sqrt(12/37)((M1+M7)/sqrt2 + (M4+M6)/sqrt2) + sqrt(13/37)M9",
    ));
    checks.push(Check::residual_check(
        "xi_inverse_y",
        res_y,
        TOL_ALGEBRAIC,
        "xi^-1(Y) matches -sqrt(12/37)((M3-M5)/sqrt2 - (M2-M8)/sqrt2) + sqrt(13/37)M10",
    ));

    let k1 = sectional(plane.x(), plane.y());
    let k2 = sectional(&ix, &iy);
    match (k1, k2) {
        (Ok(k1), Ok(k2)) => {
            checks.push(Check::residual_check(
                "xi_curvature_equality",
                (k1 - k2).abs(),
                1e-12,
                "K(X,Y) = K(xi^-1 X, xi^-1 Y)",
            ));
            let target = 4.0 / 37.0;
            checks.push(Check::residual_check(
                "xi_curvature_value",
                (k1 - target).abs().max((k2 - target).abs()),
                TOL_CURVATURE,
                "both planes attain 4/37",
            ));
        }
        (k1, k2) => {
            checks.push(Check::new(
                "xi_curvature_equality",
                false,
                f64::NAN,
                format!("curvature evaluation failed: {k1:?} / {k2:?}"),
            ));
        }
    }
    checks
}

/// Precomputed quadratic form evaluating plane curvature in the coordinates
/// of a fixed orthonormal basis.
///
/// For coefficient vectors a, b the wedge w_{ij} = a_i·b_j − a_j·b_i
/// satisfies ‖w‖² = det Gram(a, b), and K·det Gram is a fixed quadratic
/// form in w built from the bracket splits of basis pairs, so
/// K = (wᵀ·G·w)/(wᵀ·w). Agrees with [`plane_curvature`] to machine
/// precision and costs O(d⁴) per evaluation with no matrix arithmetic,
/// which is what the optimizer and the bulk sampler run on.
#[derive(Clone, Debug)]
pub struct CurvatureForm {
    dim: usize,
    pairs: Vec<(usize, usize)>,
    gram: Vec<f64>,
}

impl CurvatureForm {
    /// Precompute the form for an orthonormal basis of a subspace of m.
    pub fn for_basis(basis: &[CMat5]) -> Self {
        let dim = basis.len();
        let mut pairs = Vec::with_capacity(dim * (dim - 1) / 2);
        for i in 0..dim {
            for j in (i + 1)..dim {
                pairs.push((i, j));
            }
        }
        let h = space_h();
        let m = space_m();
        // 24 split coordinates (13 of m scaled by 1/2, 11 of h) per pair;
        // the Gram matrix of these vectors is the form.
        let coords: Vec<Vec<f64>> = pairs
            .iter()
            .map(|&(i, j)| {
                let br = bracket(&basis[i], &basis[j]);
                let mut v = Vec::with_capacity(24);
                for bm in m.basis() {
                    v.push(0.5 * inner(&br, bm));
                }
                for bh in h.basis() {
                    v.push(inner(&br, bh));
                }
                v
            })
            .collect();
        let np = pairs.len();
        let mut gram = vec![0.0; np * np];
        for p in 0..np {
            for q in p..np {
                let g: f64 = coords[p].iter().zip(&coords[q]).map(|(a, b)| a * b).sum();
                gram[p * np + q] = g;
                gram[q * np + p] = g;
            }
        }
        CurvatureForm { dim, pairs, gram }
    }

    /// Basis dimension the form was built for.
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Plane curvature of span{Σa_i·B_i, Σb_i·B_i}.
    pub fn eval(&self, a: &[f64], b: &[f64]) -> Result<f64> {
        debug_assert_eq!(a.len(), self.dim);
        debug_assert_eq!(b.len(), self.dim);
        let np = self.pairs.len();
        let mut w = Vec::with_capacity(np);
        let mut wsq = 0.0;
        for &(i, j) in &self.pairs {
            let wij = a[i] * b[j] - a[j] * b[i];
            wsq += wij * wij;
            w.push(wij);
        }
        if wsq < TOL_GRAM_DET {
            return Err(Error::DegeneratePlane { det: wsq });
        }
        let mut num = 0.0;
        for p in 0..np {
            let wp = w[p];
            if wp == 0.0 {
                continue;
            }
            let row = &self.gram[p * np..(p + 1) * np];
            let dot: f64 = row.iter().zip(&w).map(|(g, wq)| g * wq).sum();
            num += wp * dot;
        }
        Ok(num / wsq)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::involution::{sigma_split, v_plus_basis};
    use crate::lie::q;
    use crate::mat::Subspace;
    use proptest::prelude::*;
    use rand::Rng;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn random_m_vector(rng: &mut ChaCha8Rng) -> CMat5 {
        let ms = heintze_basis();
        let mut out = CMat5::zero();
        for b in ms {
            out = out + *b * rng.random_range(-1.0..1.0);
        }
        out
    }

    #[test]
    fn bracket_parts_on_max_plane() {
        // Oracle: symbolic expansion gives m-part -M13 and
        // h-part -2Q13 - T with T = i diag(1,1,1,1,-4).
        let plane = max_plane();
        let (m_part, h_part) = bracket_parts(plane.x(), plane.y()).unwrap();
        let ms = heintze_basis();
        assert!((m_part + ms[12]).max_abs() < TOL_ALGEBRAIC);
        let t = CMat5::imag_diag([1.0, 1.0, 1.0, 1.0, -4.0]);
        assert!((h_part + q(1, 3) * 2.0 + t).max_abs() < TOL_ALGEBRAIC);

        // Pythagoras for the orthogonal split.
        let b = bracket(plane.x(), plane.y());
        let total = inner(&b, &b);
        let split = inner(&m_part, &m_part) + inner(&h_part, &h_part);
        assert!((total - split).abs() < TOL_ALGEBRAIC);

        // Degenerate bracket.
        let (mp, hp) = bracket_parts(plane.x(), plane.x()).unwrap();
        assert!(mp.max_abs() < 1e-14 && hp.max_abs() < 1e-14);

        // Inputs must lie in m.
        assert!(bracket_parts(&q(1, 3), plane.y()).is_err());
    }

    #[test]
    fn sectional_reproduces_29_over_4() {
        let plane = max_plane();
        let k = sectional(plane.x(), plane.y()).unwrap();
        assert!((k - 29.0 / 4.0).abs() < 1e-12);
    }

    #[test]
    fn sectional_reproduces_4_over_37() {
        let plane = min_plane();
        let k = sectional(plane.x(), plane.y()).unwrap();
        assert!((k - 4.0 / 37.0).abs() < 1e-12);
    }

    #[test]
    fn sectional_rejects_degenerate_pair() {
        let ms = heintze_basis();
        assert!(matches!(
            sectional(&ms[0], &ms[0]),
            Err(Error::NotOrthonormal { .. })
        ));
    }

    #[test]
    fn plane_curvature_examples() {
        let plane = max_plane();
        let k = plane_curvature(plane.x(), plane.y()).unwrap();
        assert!((k - 29.0 / 4.0).abs() < 1e-12);
        // Invariance under rescaling the spanning pair.
        let k2 = plane_curvature(&(*plane.x() * 2.0), &(*plane.y() * 3.0)).unwrap();
        assert!((k - k2).abs() < 1e-12);
        // Collapse to a line is rejected.
        let near = *plane.x() + *plane.y() * 1e-15;
        assert!(matches!(
            plane_curvature(plane.x(), &near),
            Err(Error::DegeneratePlane { .. })
        ));
    }

    proptest! {
        #[test]
        fn plane_curvature_is_plane_invariant(
            seed in 0u64..1000,
            a in -3.0f64..3.0, b in -3.0f64..3.0,
            c in -3.0f64..3.0, d in -3.0f64..3.0,
        ) {
            prop_assume!((a * d - b * c).abs() > 0.2);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let x = random_m_vector(&mut rng);
            let y = random_m_vector(&mut rng);
            if let Ok(k1) = plane_curvature(&x, &y) {
                let u = x * a + y * b;
                let v = x * c + y * d;
                let k2 = plane_curvature(&u, &v).unwrap();
                prop_assert!((k1 - k2).abs() < 1e-8 * k1.max(1.0));
            }
        }
    }

    #[test]
    fn xi_checks_all_pass() {
        for c in xi_checks() {
            assert!(c.pass, "{}: {:.3e}", c.check_name, c.residual);
        }
    }

    #[test]
    fn curvature_symmetry_and_isometry_invariance() {
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        let sigma = make_map(MapLabel::Sigma).unwrap();
        let xi = make_map(MapLabel::Xi).unwrap();
        for _ in 0..100 {
            let x = random_m_vector(&mut rng);
            let y = random_m_vector(&mut rng);
            let Ok(k) = plane_curvature(&x, &y) else {
                continue;
            };
            let ksym = plane_curvature(&y, &x).unwrap();
            assert!((k - ksym).abs() < 1e-12);
            for phi in [&sigma, &xi] {
                let (px, py) = (phi.apply(&x), phi.apply(&y));
                assert!(space_h().project(&px).norm() < TOL_ALGEBRAIC * px.norm().max(1.0));
                let kp = plane_curvature(&px, &py).unwrap();
                assert!((k - kp).abs() < TOL_ALGEBRAIC * k.max(1.0));
            }
        }
    }

    #[test]
    fn positivity_on_random_planes() {
        let mut rng = ChaCha8Rng::seed_from_u64(32);
        for _ in 0..2000 {
            let x = random_m_vector(&mut rng);
            let y = random_m_vector(&mut rng);
            if let Ok(k) = plane_curvature(&x, &y) {
                assert!(k > 0.0);
            }
        }
    }

    #[test]
    fn curvature_form_matches_matrix_path() {
        let m = space_m();
        let form = CurvatureForm::for_basis(m.basis());
        let mut rng = ChaCha8Rng::seed_from_u64(33);
        for _ in 0..200 {
            let a: Vec<f64> = (0..13).map(|_| rng.random_range(-1.0..1.0)).collect();
            let b: Vec<f64> = (0..13).map(|_| rng.random_range(-1.0..1.0)).collect();
            let mut x = CMat5::zero();
            let mut y = CMat5::zero();
            for (k, base) in m.basis().iter().enumerate() {
                x = x + *base * a[k];
                y = y + *base * b[k];
            }
            match (form.eval(&a, &b), plane_curvature(&x, &y)) {
                (Ok(k1), Ok(k2)) => assert!((k1 - k2).abs() < 1e-12 * k2.max(1.0)),
                (Err(_), Err(_)) => {}
                other => panic!("paths disagree: {other:?}"),
            }
        }
        // Also over the V+ sub-basis.
        let vp = v_plus_basis();
        let form = CurvatureForm::for_basis(&vp);
        let a: Vec<f64> = (0..7).map(|_| rng.random_range(-1.0..1.0)).collect();
        let b: Vec<f64> = (0..7).map(|_| rng.random_range(-1.0..1.0)).collect();
        let mut x = CMat5::zero();
        let mut y = CMat5::zero();
        for (k, base) in vp.iter().enumerate() {
            x = x + *base * a[k];
            y = y + *base * b[k];
        }
        let k1 = form.eval(&a, &b).unwrap();
        let k2 = plane_curvature(&x, &y).unwrap();
        assert!((k1 - k2).abs() < 1e-12 * k2.max(1.0));
    }

    #[test]
    fn two_plane_constructors() {
        let plane = max_plane();
        assert!((inner(plane.x(), plane.x()) - 1.0).abs() < 1e-14);
        assert!(inner(plane.x(), plane.y()).abs() < 1e-14);

        let again = TwoPlane::from_matrices(plane.x(), plane.y()).unwrap();
        assert!((*again.x() - *plane.x()).max_abs() < 1e-13);

        // Coordinates round-trip through JSON.
        let j = plane.to_json();
        let back = TwoPlane::from_json(&j).unwrap();
        assert!((*back.x() - *plane.x()).max_abs() < 1e-13);

        let bad = PlaneJson {
            x: vec![0.0; 12],
            y: vec![0.0; 13],
        };
        assert!(matches!(
            TwoPlane::from_json(&bad),
            Err(Error::Malformed { .. })
        ));

        // Vectors outside m are rejected.
        assert!(TwoPlane::from_matrices(&q(1, 3), plane.y()).is_err());
    }

    #[test]
    fn v_plus_planes_agree_with_eigensplit() {
        // The distinguished combinations live inside the computed V+.
        let split = sigma_split();
        let plane = max_plane();
        assert!(split.plus.contains(plane.x(), TOL_ALGEBRAIC));
        assert!(split.plus.contains(plane.y(), TOL_ALGEBRAIC));
        let plane = min_plane();
        let vp = Subspace::from_orthonormal(v_plus_basis().to_vec()).unwrap();
        assert!(vp.contains(plane.x(), TOL_ALGEBRAIC));
        assert!(vp.contains(plane.y(), TOL_ALGEBRAIC));
    }
}
