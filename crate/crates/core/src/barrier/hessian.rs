//! Hessian eigenvalues of the barrier and the two-plane trace bound.

use super::{BarrierError, BarrierProfile};
use crate::surfgeo::{parallel_curvatures, V3};
use nalgebra::Matrix3;

/// Eigenvalues of `Hess(g o t)` at distance `t` from a foot with principal
/// curvatures `k1 <= k2` (signed toward the query side):
///
/// ```text
/// mu_i = (2c/(1+2ct)) k_i/(1 - t k_i) = -g'(t) k_i^t   (i = 1, 2)
/// mu_3 = 4c^2/(1+2ct)^2 = g''(t)
/// ```
///
/// Under the profile contract `2 eps c <= 1`, `0 < 2t <= eps` and
/// `|k_i| <= c` the ordering `mu_1 <= mu_2 < mu_3` is automatic; the
/// function returns the values in that order without sorting, so property
/// tests can observe the ordering as a theorem rather than an artifact.
pub fn hessian_eigenvalues(
    profile: &BarrierProfile,
    t: f64,
    k1: f64,
    k2: f64,
) -> Result<(f64, f64, f64), BarrierError> {
    if !profile.in_band(t) {
        return Err(BarrierError::Contract(format!(
            "t = {t} outside the band 0 < 2t <= eps = {}",
            profile.epsilon()
        )));
    }
    let (k1t, k2t) = parallel_curvatures(k1, k2, t)?;
    let factor = -profile.g1(t); // 2c/(1+2ct) >= 0
    let mu1 = factor * k1t;
    let mu2 = factor * k2t;
    let mu3 = profile.g2(t);
    debug_assert!((mu3 - profile.g2(t)).abs() <= 1e-15 * mu3.abs().max(1e-300));
    Ok((mu1, mu2, mu3))
}

/// Trace of the restriction of the symmetric matrix `q` to the 2-plane
/// spanned by the orthonormal pair `(w1, w2)`.
///
/// For eigenvalues `mu_1 <= mu_2 <= mu_3` of `q` the result always sits in
/// `[mu_1 + mu_2, mu_2 + mu_3]`.
pub fn subspace_trace(q: &Matrix3<f64>, w1: &V3, w2: &V3) -> Result<f64, BarrierError> {
    let tol = 1e-10;
    if (w1.norm() - 1.0).abs() > tol || (w2.norm() - 1.0).abs() > tol || w1.dot(w2).abs() > tol {
        return Err(BarrierError::Contract(format!(
            "basis not orthonormal: |w1| = {}, |w2| = {}, <w1,w2> = {}",
            w1.norm(),
            w2.norm(),
            w1.dot(w2)
        )));
    }
    Ok((q * w1).dot(w1) + (q * w2).dot(w2))
}

/// Assemble the barrier Hessian as a symmetric 3x3 matrix from its
/// eigenpairs: `mu1 d1 d1^T + mu2 d2 d2^T + mu3 n n^T`.
pub fn hessian_matrix(mu: (f64, f64, f64), d1: &V3, d2: &V3, n: &V3) -> Matrix3<f64> {
    let outer = |v: &V3| v * v.transpose();
    mu.0 * outer(d1) + mu.1 * outer(d2) + mu.2 * outer(n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    #[test]
    fn plane_case() {
        let p = BarrierProfile::new(0.4, 1.0).unwrap();
        let (m1, m2, m3) = hessian_eigenvalues(&p, 0.1, 0.0, 0.0).unwrap();
        assert_eq!((m1, m2), (0.0, 0.0));
        let want = 4.0 / (1.2f64 * 1.2);
        assert!((m3 - want).abs() < 1e-15);
    }

    #[test]
    fn offset_cylinder_closed_form() {
        // c = 1, eps = 0.4, t = 0.1, (k1, k2) = (-1, 0):
        // mu1 = (2/1.2)(-1/1.1) = -50/33, mu2 = 0, mu3 = 4/1.44
        let p = BarrierProfile::new(0.4, 1.0).unwrap();
        let (m1, m2, m3) = hessian_eigenvalues(&p, 0.1, -1.0, 0.0).unwrap();
        assert!((m1 - (-50.0 / 33.0)).abs() <= 1e-12, "mu1 = {m1}");
        assert_eq!(m2, 0.0);
        assert!((m3 - 25.0 / 9.0).abs() <= 1e-12, "mu3 = {m3}");
    }

    #[test]
    fn minimal_pair_trace_identity() {
        // k1 = -k, k2 = k: mu1 + mu2 = (2c/(1+2ct)) 2 t k^2/(1 - t^2 k^2)
        let c = 0.5;
        let k = 0.5;
        let t = 0.2;
        let p = BarrierProfile::new(1.0, c).unwrap();
        let (m1, m2, _) = hessian_eigenvalues(&p, t, -k, k).unwrap();
        let want = (2.0 * c / (1.0 + 2.0 * c * t)) * 2.0 * t * k * k / (1.0 - t * t * k * k);
        assert!(
            ((m1 + m2) - want).abs() <= 1e-14,
            "mu1+mu2 = {}, want {want}",
            m1 + m2
        );
        assert!(m1 + m2 >= 0.0);
    }

    #[test]
    fn eigenvalue_identities_random() {
        // mu3 = g''(t), mu_i = -g'(t) k_i^t to relative 1e-12
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(41);
        for _ in 0..500 {
            let c = rng.gen_range(0.1..3.0);
            let eps = rng.gen_range(0.05..1.0) / (2.0 * c);
            let p = BarrierProfile::new(eps, c).unwrap();
            let t = rng.gen_range(1e-4..eps / 2.0);
            let k1 = rng.gen_range(-c..c);
            let k2 = rng.gen_range(k1..c);
            let (m1, m2, m3) = hessian_eigenvalues(&p, t, k1, k2).unwrap();
            let (k1t, k2t) = parallel_curvatures(k1, k2, t).unwrap();
            assert!((m3 - p.g2(t)).abs() <= 1e-12 * m3.abs().max(1e-300));
            assert!((m1 - (-p.g1(t)) * k1t).abs() <= 1e-12 * m1.abs().max(1e-300));
            assert!((m2 - (-p.g1(t)) * k2t).abs() <= 1e-12 * m2.abs().max(1e-300));
        }
    }

    #[test]
    fn band_contract_enforced() {
        let p = BarrierProfile::new(0.4, 1.0).unwrap();
        assert!(hessian_eigenvalues(&p, 0.0, 0.0, 0.0).is_err());
        assert!(hessian_eigenvalues(&p, 0.21, 0.0, 0.0).is_err());
        assert!(hessian_eigenvalues(&p, 0.2, 0.0, 0.0).is_ok());
    }

    #[test]
    fn subspace_trace_identity_and_coordinate_plane() {
        let q = Matrix3::identity();
        let t = subspace_trace(&q, &V3::x(), &V3::y()).unwrap();
        assert!((t - 2.0).abs() < 1e-15);
        let q = Matrix3::from_diagonal(&V3::new(-3.0, 0.5, 2.0));
        let t = subspace_trace(&q, &V3::x(), &V3::y()).unwrap();
        assert!((t - (-2.5)).abs() < 1e-15, "lower bound attained");
    }

    #[test]
    fn subspace_trace_rejects_skew_basis() {
        let q = Matrix3::identity();
        let w2 = (V3::x() + 0.5 * V3::y()).normalize();
        assert!(matches!(
            subspace_trace(&q, &V3::x(), &w2),
            Err(BarrierError::Contract(_))
        ));
    }

    #[test]
    fn subspace_trace_interlacing_random() {
        // mu1+mu2 <= trace <= mu2+mu3 against the eigendecomposition oracle
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(43);
        for _ in 0..2000 {
            let mut a = Matrix3::<f64>::zeros();
            for i in 0..3 {
                for j in 0..3 {
                    a[(i, j)] = rng.gen_range(-2.0..2.0);
                }
            }
            let q = 0.5 * (a + a.transpose());
            let mut eig: Vec<f64> = q.symmetric_eigenvalues().iter().copied().collect();
            eig.sort_by(|x, y| x.partial_cmp(y).unwrap());
            // random orthonormal pair from QR of a random matrix
            let mut b = Matrix3::<f64>::zeros();
            for i in 0..3 {
                for j in 0..3 {
                    b[(i, j)] = rng.gen_range(-1.0..1.0);
                }
            }
            let qr = b.qr();
            let om = qr.q();
            let w1 = V3::new(om[(0, 0)], om[(1, 0)], om[(2, 0)]);
            let w2 = V3::new(om[(0, 1)], om[(1, 1)], om[(2, 1)]);
            let tr = subspace_trace(&q, &w1, &w2).unwrap();
            let lo = eig[0] + eig[1];
            let hi = eig[1] + eig[2];
            assert!(
                tr >= lo - 1e-10 && tr <= hi + 1e-10,
                "trace {tr} outside [{lo}, {hi}]"
            );
        }
    }
}
