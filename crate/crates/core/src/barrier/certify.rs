//! Pointwise subharmonicity and CMC sub-equation certificates.
//!
//! A certificate compares two routes to the surface Laplacian of
//! `u = g(t(phi(q)))`:
//!
//! * intrinsic — a fourth-order finite-difference Laplace-Beltrami of `u`
//!   in the parameters of `M`, metric and Christoffels from the analytic
//!   jet;
//! * extrinsic — `Tr_W Hess F (+ <grad F, H-vector of M>)` with the Hessian
//!   assembled from the foot's parallel-surface curvatures.
//!
//! The supporting-surface relaxation enters only through the scalar
//! `mu_relax = delta / 2c`: the deformed surface itself is a proof device,
//! the checkable content is the margin inequality.

use super::hessian::{hessian_matrix, subspace_trace};
use super::{BarrierError, BarrierProfile};
use crate::surfgeo::{
    fundamental_forms, parallel_curvatures, tubular_radius, DistanceSurface, GeomError, Patch, V3,
};

#[derive(Debug, Clone)]
pub struct CertifyOptions {
    /// Barrier-sense relaxation; margins must clear `-delta`.
    pub delta: f64,
    /// Tube radius override; default derives from the sampled curvature
    /// bounds via `tubular_radius`.
    pub tube_eps: Option<f64>,
    /// Principal-curvature bound override; default is the max over the
    /// sampled feet.
    pub c_bound: Option<f64>,
    /// Finite-difference step in parameter units.
    pub fd_step: f64,
    /// Tube cap when the target surface is flat.
    pub flat_cap: f64,
}

impl Default for CertifyOptions {
    fn default() -> Self {
        CertifyOptions {
            delta: 1e-4,
            tube_eps: None,
            c_bound: None,
            fd_step: 1e-3,
            flat_cap: 1.0,
        }
    }
}

#[derive(Debug, Clone)]
pub enum SkipReason {
    OutsideTube { t: f64, eps: f64 },
    QueryFailed(GeomError),
}

/// One probe's certificate. The decisive scalar is `laplacian_margin`
/// (the worse of the intrinsic and extrinsic routes, after subtracting the
/// target right-hand side); `verdict == (laplacian_margin > -delta)`.
#[derive(Debug, Clone)]
pub struct BarrierCertificate {
    pub probe_uv: (f64, f64),
    pub point: V3,
    pub t: f64,
    pub k1: f64,
    pub k2: f64,
    pub mu1: f64,
    pub mu2: f64,
    pub mu3: f64,
    /// `mu1 + mu2`, the two-plane trace lower bound.
    pub trace_lb: f64,
    /// Intrinsic finite-difference Laplacian of `u` at the probe.
    pub intrinsic_laplacian: f64,
    /// Extrinsic route: `Tr_W Hess F (+ <grad F, H_M>)`.
    pub extrinsic_trace: f64,
    /// Target right-hand side (0 for the minimal certificate,
    /// `(2c/(1+2ct)) (inf H_N - sup |H_M|)` for CMC).
    pub rhs: f64,
    /// `min(intrinsic - rhs, extrinsic margin)`; pass iff `> -delta`.
    pub laplacian_margin: f64,
    pub delta: f64,
    /// `delta / 2c` (0 for a flat target).
    pub mu_relax: f64,
    /// Barrier value `u = g(t)` at the probe.
    pub u_value: f64,
    /// True when the query hit the cut locus (multiple feet); the margins
    /// then already reflect the worst foot.
    pub cut_locus: bool,
    /// `0 < 2t <= eps`; CMC certificates outside the band are evaluated
    /// anyway and flagged here.
    pub in_band: bool,
    pub verdict: bool,
}

#[derive(Debug, Clone)]
pub struct CertifyReport {
    pub certificates: Vec<BarrierCertificate>,
    pub skipped: Vec<((f64, f64), SkipReason)>,
    /// Curvature bound actually used.
    pub c: f64,
    /// Tube radius actually used.
    pub eps: f64,
    pub delta: f64,
    /// Parameter bounding box of the probes, `((umin, umax), (vmin, vmax))`.
    pub probe_region: ((f64, f64), (f64, f64)),
    pub pass_count: usize,
    pub min_margin: f64,
    pub all_pass: bool,
}

/// CMC extension: the sampled curvature statistics and the lambda
/// sub-equation data.
#[derive(Debug, Clone)]
pub struct CmcReport {
    pub base: CertifyReport,
    /// `inf H_N` over the sampled feet (sum convention, well-oriented normal).
    pub inf_h_n: f64,
    /// `sup |H_M|` over the probes.
    pub sup_h_m: f64,
    /// `lambda = inf H_N - sup |H_M|`.
    pub lambda: f64,
    /// Whether the comparison hypothesis `sup |H_M| <= inf H_N` held.
    pub hypothesis_ok: bool,
    /// Worst margin of the lambda sub-equation `Delta u >= lambda u`.
    pub lambda_margin_min: f64,
}

/// Threshold of the strict-inequality regime:
/// `lambda(gamma, H) = gamma H^2 / (4 (2 - gamma H))`.
pub fn cmc_lambda_threshold(gamma: f64, h: f64) -> f64 {
    gamma * h * h / (4.0 * (2.0 - gamma * h))
}

/// Fourth-order finite-difference Laplace-Beltrami of `field` on `patch`
/// at `(u, v)`; metric and Christoffel symbols come from the analytic jet.
pub fn laplace_beltrami<F>(
    patch: &dyn Patch,
    u: f64,
    v: f64,
    field: F,
    h: f64,
) -> Result<f64, BarrierError>
where
    F: Fn(f64, f64) -> Result<f64, BarrierError>,
{
    // 5x5 stencil values
    let mut vals = [[0.0f64; 5]; 5];
    for i in -2i32..=2 {
        for j in -2i32..=2 {
            vals[(i + 2) as usize][(j + 2) as usize] =
                field(u + i as f64 * h, v + j as f64 * h)?;
        }
    }
    let d1 = [1.0, -8.0, 0.0, 8.0, -1.0].map(|w| w / (12.0 * h));
    let d2 = [-1.0, 16.0, -30.0, 16.0, -1.0].map(|w| w / (12.0 * h * h));
    let mut fu = 0.0;
    let mut fv = 0.0;
    let mut fuu = 0.0;
    let mut fvv = 0.0;
    let mut fuv = 0.0;
    for k in 0..5 {
        fu += d1[k] * vals[k][2];
        fv += d1[k] * vals[2][k];
        fuu += d2[k] * vals[k][2];
        fvv += d2[k] * vals[2][k];
        for l in 0..5 {
            fuv += d1[k] * d1[l] * vals[k][l];
        }
    }

    let jet = patch.jet(u, v);
    let e = jet.pu.dot(&jet.pu);
    let f = jet.pu.dot(&jet.pv);
    let g = jet.pv.dot(&jet.pv);
    let det = e * g - f * f;
    if det <= 0.0 {
        return Err(BarrierError::Geom(GeomError::DegenerateMetric { u, v, det }));
    }
    let (iuu, iuv, ivv) = (g / det, -f / det, e / det);
    // Gamma^k_{ab} = g^{kl} <chi_ab, chi_l>
    let gamma = |ab: &V3| -> (f64, f64) {
        let a1 = ab.dot(&jet.pu);
        let a2 = ab.dot(&jet.pv);
        (iuu * a1 + iuv * a2, iuv * a1 + ivv * a2)
    };
    let (guu_u, guu_v) = gamma(&jet.puu);
    let (guv_u, guv_v) = gamma(&jet.puv);
    let (gvv_u, gvv_v) = gamma(&jet.pvv);

    Ok(iuu * (fuu - guu_u * fu - guu_v * fv)
        + 2.0 * iuv * (fuv - guv_u * fu - guv_v * fv)
        + ivv * (fvv - gvv_u * fu - gvv_v * fv))
}

enum Mode {
    Minimal,
    Cmc,
}

/// Subharmonicity certificates for a minimal `M` probing the tube of `N`.
pub fn certify_minimal(
    m: &dyn Patch,
    probes: &[(f64, f64)],
    n: &dyn DistanceSurface,
    opts: &CertifyOptions,
) -> Result<CertifyReport, BarrierError> {
    Ok(certify_core(m, probes, n, opts, Mode::Minimal)?.base)
}

/// CMC sub-equation certificates: `Delta_M u >= (2c/(1+2ct)) (inf H_N - sup |H_M|) - delta`.
///
/// Requires `N` to be well-oriented with respect to `M` (its mean curvature
/// vector at every sampled foot points toward the component containing `M`);
/// otherwise the call is refused with a diagnostic.
pub fn certify_cmc(
    m: &dyn Patch,
    probes: &[(f64, f64)],
    n: &dyn DistanceSurface,
    opts: &CertifyOptions,
) -> Result<CmcReport, BarrierError> {
    certify_core(m, probes, n, opts, Mode::Cmc)
}

fn certify_core(
    m: &dyn Patch,
    probes: &[(f64, f64)],
    n: &dyn DistanceSurface,
    opts: &CertifyOptions,
    mode: Mode,
) -> Result<CmcReport, BarrierError> {
    if probes.is_empty() {
        return Err(BarrierError::Contract("no probes supplied".into()));
    }

    // pass 1: feet, curvature bounds, mean-curvature statistics, orientation
    let mut c_sample = 0.0f64;
    let mut lambda_sq = 0.0f64;
    let mut inf_h_n = f64::INFINITY;
    let mut sup_h_m = 0.0f64;
    let mut first_pass: Vec<Option<crate::surfgeo::TubularQuery>> =
        Vec::with_capacity(probes.len());
    for &(pu, pv) in probes {
        let y = m.position(pu, pv);
        let mf = fundamental_forms(m, pu, pv)?;
        match mode {
            Mode::Minimal => {
                let scale = 1.0 + mf.k1.abs() + mf.k2.abs();
                if mf.mean.abs() > 1e-6 * scale {
                    return Err(BarrierError::Contract(format!(
                        "M is not minimal at probe ({pu}, {pv}): H = {}",
                        mf.mean
                    )));
                }
            }
            Mode::Cmc => {
                sup_h_m = sup_h_m.max(mf.mean.abs());
            }
        }
        match n.query(&y, f64::INFINITY) {
            Ok(q) => {
                for foot in std::iter::once((q.k1, q.k2)).chain(
                    q.alternates.iter().map(|a| (a.k1, a.k2)),
                ) {
                    c_sample = c_sample.max(foot.0.abs()).max(foot.1.abs());
                    let gauss = foot.0 * foot.1;
                    lambda_sq = lambda_sq.max(-gauss).max(0.0);
                }
                let h_n = q.k1 + q.k2;
                if let Mode::Cmc = mode {
                    // well-orientation: the mean curvature vector of N at the
                    // foot must point toward the side the probe lives on,
                    // i.e. its toward-query mean curvature must not be negative
                    if h_n < -1e-9 * (1.0 + c_sample) {
                        return Err(BarrierError::NotWellOriented(format!(
                            "toward-probe mean curvature {h_n} < 0 at foot of probe ({pu}, {pv})"
                        )));
                    }
                    inf_h_n = inf_h_n.min(h_n);
                }
                first_pass.push(Some(q));
            }
            Err(_) => first_pass.push(None),
        }
    }

    let c = opts.c_bound.unwrap_or(c_sample);
    let eps = opts
        .tube_eps
        .unwrap_or_else(|| tubular_radius(c, lambda_sq.sqrt(), opts.flat_cap));
    let profile = BarrierProfile::new(eps, c)?;
    let delta = opts.delta;
    let mu_relax = if c > 0.0 { delta / (2.0 * c) } else { 0.0 };
    if let Mode::Minimal = mode {
        inf_h_n = 0.0;
        sup_h_m = 0.0;
    }
    let lambda = if inf_h_n.is_finite() {
        inf_h_n - sup_h_m
    } else {
        0.0
    };

    // pass 2: margins
    let mut certificates = Vec::new();
    let mut skipped = Vec::new();
    let mut lambda_margin_min = f64::INFINITY;
    for (idx, &(pu, pv)) in probes.iter().enumerate() {
        let query = match &first_pass[idx] {
            Some(q) => q.clone(),
            None => {
                // re-query for the error detail
                let y = m.position(pu, pv);
                let err = n.query(&y, eps).unwrap_err();
                skipped.push(((pu, pv), SkipReason::QueryFailed(err)));
                continue;
            }
        };
        let t = query.t;
        let in_band = profile.in_band(t) && 2.0 * t < eps;
        if !in_band {
            if let Mode::Minimal = mode {
                skipped.push(((pu, pv), SkipReason::OutsideTube { t, eps }));
                continue;
            }
        }

        let y = m.position(pu, pv);
        let mjet = m.jet(pu, pv);
        let mforms = fundamental_forms(m, pu, pv)?;
        // orthonormal basis of T_q M
        let w1 = mjet.pu / mjet.pu.norm();
        let w2v = mjet.pv - mjet.pv.dot(&w1) * w1;
        let w2 = w2v / w2v.norm();

        let relax_term = if c > 0.0 {
            delta / (1.0 + 2.0 * c * t)
        } else {
            0.0
        };
        let rhs = match mode {
            Mode::Minimal => 0.0,
            Mode::Cmc => (2.0 * c / (1.0 + 2.0 * c * t)) * lambda,
        };

        // intrinsic Laplacian of u = g(t(phi(.)))
        let intrinsic = laplace_beltrami(
            m,
            pu,
            pv,
            |uu, vv| {
                let p = m.position(uu, vv);
                let q = n.query(&p, f64::INFINITY).map_err(BarrierError::Geom)?;
                Ok(profile.g(q.t))
            },
            opts.fd_step,
        )?;

        // extrinsic route over every foot; keep the worst margins
        let mut worst = f64::INFINITY;
        let mut main_eigen = None;
        let grad_dot_h = profile.g1(t) * mforms.mean * query.normal.dot(&mforms.normal);
        let feet: Vec<(f64, f64, f64, V3, V3, V3)> = std::iter::once((
            query.t,
            query.k1,
            query.k2,
            query.dir1,
            query.dir2,
            query.normal,
        ))
        .chain(query.alternates.iter().map(|a| {
            (a.t, a.k1, a.k2, a.dir1, a.dir2, a.normal)
        }))
        .collect();
        let mut extrinsic_trace = 0.0;
        let mut trace_lb = 0.0;
        for (ft, fk1, fk2, fd1, fd2, fnormal) in &feet {
            let (k1t, k2t) = parallel_curvatures(*fk1, *fk2, *ft)?;
            let factor = -profile.g1(*ft);
            let mu = (factor * k1t, factor * k2t, profile.g2(*ft));
            let hess = hessian_matrix(mu, fd1, fd2, fnormal);
            let trace = subspace_trace(&hess, &w1, &w2)?;
            let ext = trace + grad_dot_h;
            let ext_margin = match mode {
                Mode::Minimal => (mu.0 + mu.1) - relax_term,
                Mode::Cmc => ext - rhs,
            };
            if main_eigen.is_none() {
                main_eigen = Some(mu);
                extrinsic_trace = ext;
                trace_lb = mu.0 + mu.1;
            }
            worst = worst.min(ext_margin);
        }
        let mu = main_eigen.expect("at least the main foot");

        let intrinsic_margin = intrinsic - rhs;
        let laplacian_margin = intrinsic_margin.min(worst);
        let u_value = profile.g(t);
        lambda_margin_min = lambda_margin_min.min(intrinsic - lambda * u_value);

        certificates.push(BarrierCertificate {
            probe_uv: (pu, pv),
            point: y,
            t,
            k1: query.k1,
            k2: query.k2,
            mu1: mu.0,
            mu2: mu.1,
            mu3: mu.2,
            trace_lb,
            intrinsic_laplacian: intrinsic,
            extrinsic_trace,
            rhs,
            laplacian_margin,
            delta,
            mu_relax,
            u_value,
            cut_locus: query.multiplicity > 1,
            in_band,
            verdict: laplacian_margin > -delta,
        });
    }

    let pass_count = certificates.iter().filter(|c| c.verdict).count();
    let min_margin = certificates
        .iter()
        .map(|c| c.laplacian_margin)
        .fold(f64::INFINITY, f64::min);
    let all_pass = pass_count == certificates.len() && !certificates.is_empty();
    let region = probes.iter().fold(
        ((f64::INFINITY, f64::NEG_INFINITY), (f64::INFINITY, f64::NEG_INFINITY)),
        |((ul, uh), (vl, vh)), &(a, b)| ((ul.min(a), uh.max(a)), (vl.min(b), vh.max(b))),
    );

    Ok(CmcReport {
        base: CertifyReport {
            certificates,
            skipped,
            c,
            eps,
            delta,
            probe_region: region,
            pass_count,
            min_margin,
            all_pass,
        },
        inf_h_n: if inf_h_n.is_finite() { inf_h_n } else { 0.0 },
        sup_h_m,
        lambda,
        hypothesis_ok: lambda >= 0.0,
        lambda_margin_min,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surfgeo::{
        AnalyticSurface, CatenoidPatch, HelicoidPatch, PlanePatch, ProjectedPatch, SpherePatch,
    };

    fn grid(ur: (f64, f64), vr: (f64, f64), nu: usize, nv: usize) -> Vec<(f64, f64)> {
        let mut out = Vec::new();
        for i in 0..nu {
            for j in 0..nv {
                out.push((
                    ur.0 + (ur.1 - ur.0) * i as f64 / (nu - 1) as f64,
                    vr.0 + (vr.1 - vr.0) * j as f64 / (nv - 1) as f64,
                ));
            }
        }
        out
    }

    #[test]
    fn lambda_threshold_spot_value() {
        let v = cmc_lambda_threshold(0.1, 1.0);
        assert!((v - 0.1 / 7.6).abs() < 1e-16);
        assert!((v - 1.0 / 76.0).abs() < 1e-16);
    }

    #[test]
    fn laplacian_on_the_plane() {
        // Delta (u^2 + v^2) = 4 on the flat plane
        let plane = PlanePatch::horizontal(0.0);
        let lap = laplace_beltrami(&plane, 0.3, -0.2, |u, v| Ok(u * u + v * v), 1e-3).unwrap();
        assert!((lap - 4.0).abs() < 1e-9, "lap = {lap}");
    }

    #[test]
    fn laplacian_on_the_sphere() {
        // On the unit sphere, Delta f for f = z (ambient height) is -2 z
        // (height is a first spherical harmonic).
        let sphere = SpherePatch { radius: 1.0 };
        let (u, v) = (0.7, 1.1);
        let lap = laplace_beltrami(
            &sphere,
            u,
            v,
            |uu, vv| Ok(sphere.position(uu, vv).z),
            1e-3,
        )
        .unwrap();
        let want = -2.0 * sphere.position(u, v).z;
        assert!((lap - want).abs() < 1e-8, "lap = {lap}, want {want}");
    }

    #[test]
    fn parallel_flat_pair_has_zero_margin() {
        // M and N parallel planes: u is constant, Laplacian identically 0
        let m = PlanePatch::horizontal(0.3);
        let n = AnalyticSurface::Plane {
            origin: V3::zeros(),
            normal: V3::z(),
        };
        let opts = CertifyOptions {
            flat_cap: 1.0,
            ..Default::default()
        };
        let report = certify_minimal(&m, &grid((-1.0, 1.0), (-1.0, 1.0), 5, 5), &n, &opts).unwrap();
        assert!(report.all_pass);
        assert_eq!(report.certificates.len(), 25);
        for cert in &report.certificates {
            assert!(cert.intrinsic_laplacian.abs() <= 1e-10);
            assert!(cert.laplacian_margin.abs() <= 1e-10);
            assert_eq!(cert.rhs, 0.0);
        }
    }

    #[test]
    fn tilted_plane_certificates_pass_with_positive_interior_margin() {
        // M tilted against a flat N with a forced positive c: u = g(affine),
        // Delta u = g''(t) |grad_M t|^2 > 0 where the tilt lies in T_q M
        let tilt = 0.3f64;
        let m = PlanePatch {
            origin: V3::new(0.0, 0.0, 0.15),
            e1: V3::new((1.0f64 + tilt * tilt).sqrt().recip(), 0.0, tilt / (1.0 + tilt * tilt).sqrt()),
            e2: V3::y(),
        };
        let n = AnalyticSurface::Plane {
            origin: V3::zeros(),
            normal: V3::z(),
        };
        let opts = CertifyOptions {
            c_bound: Some(1.0),
            tube_eps: Some(0.5),
            ..Default::default()
        };
        let report = certify_minimal(&m, &grid((-0.3, 0.3), (-0.3, 0.3), 5, 5), &n, &opts).unwrap();
        assert!(report.all_pass, "min margin {}", report.min_margin);
        // 1-d calculus oracle: u(s) = g(t0 + sin(alpha) s) along the tilt,
        // Delta u = g''(t) sin^2(alpha)
        let sin2 = tilt * tilt / (1.0 + tilt * tilt);
        let profile = BarrierProfile::new(0.5, 1.0).unwrap();
        for cert in &report.certificates {
            let want = profile.g2(cert.t) * sin2;
            assert!(
                (cert.intrinsic_laplacian - want).abs() <= 1e-6 * want,
                "lap {} vs oracle {want}",
                cert.intrinsic_laplacian
            );
            assert!(cert.intrinsic_laplacian > 0.0);
        }
    }

    #[test]
    fn helicoid_probes_inside_catenoid_tube_pass() {
        let m = HelicoidPatch { pitch: 1.0 };
        let n = ProjectedPatch::from_grid(
            CatenoidPatch { waist: 1.0 },
            (-std::f64::consts::PI, std::f64::consts::PI),
            (-1.5, 1.5),
            160,
            80,
        )
        .unwrap();
        let probes = grid((-0.15, 0.15), (0.78, 0.97), 8, 8);
        let report = certify_minimal(&m, &probes, &n, &CertifyOptions::default()).unwrap();
        assert!(report.certificates.len() >= 50, "skipped too many: {}", report.skipped.len());
        assert!(report.all_pass, "min margin {}", report.min_margin);
        // intrinsic and extrinsic agree to relative 2e-4
        for cert in &report.certificates {
            let denom = cert.extrinsic_trace.abs().max(1e-3);
            assert!(
                (cert.intrinsic_laplacian - cert.extrinsic_trace).abs() <= 2e-4 * denom,
                "intrinsic {} vs extrinsic {}",
                cert.intrinsic_laplacian,
                cert.extrinsic_trace
            );
        }
    }

    #[test]
    fn probes_outside_tube_are_skipped_with_reason() {
        let m = PlanePatch::horizontal(2.0); // far from N
        let n = AnalyticSurface::Plane {
            origin: V3::zeros(),
            normal: V3::z(),
        };
        let opts = CertifyOptions {
            c_bound: Some(1.0),
            tube_eps: Some(0.5),
            ..Default::default()
        };
        let report = certify_minimal(&m, &grid((-1.0, 1.0), (-1.0, 1.0), 3, 3), &n, &opts).unwrap();
        assert!(report.certificates.is_empty());
        assert_eq!(report.skipped.len(), 9);
        assert!(matches!(
            report.skipped[0].1,
            SkipReason::OutsideTube { .. }
        ));
    }

    #[test]
    fn non_minimal_m_is_rejected() {
        let m = SpherePatch { radius: 1.0 };
        let n = AnalyticSurface::Plane {
            origin: V3::zeros(),
            normal: V3::z(),
        };
        assert!(matches!(
            certify_minimal(&m, &grid((0.5, 1.0), (1.0, 1.5), 3, 3), &n, &Default::default()),
            Err(BarrierError::Contract(_))
        ));
    }

    #[test]
    fn concentric_spheres_reproduce_rhs_closed_form() {
        // N = unit sphere, M = concentric sphere radius 0.5 inside:
        // c = 1, t = 0.5, inf H_N = 2, sup |H_M| = 4,
        // rhs = (2/(1+2*0.5))(2-4) = -2; hypothesis violated and reported
        let m = SpherePatch { radius: 0.5 };
        let n = AnalyticSurface::Sphere { radius: 1.0 };
        let probes = grid((0.2, 1.2), (1.2, 1.9), 5, 5);
        let report = certify_cmc(&m, &probes, &n, &CertifyOptions::default()).unwrap();
        assert!(!report.hypothesis_ok);
        assert!((report.inf_h_n - 2.0).abs() < 1e-10);
        assert!((report.sup_h_m - 4.0).abs() < 1e-10);
        for cert in &report.base.certificates {
            assert!((cert.rhs + 2.0).abs() <= 1e-10, "rhs = {}", cert.rhs);
            assert!(!cert.in_band); // t = 0.5 sits beyond the eps <= 1/2c band
            // u is constant on the concentric sphere: Delta u = 0 >= rhs - delta
            assert!(cert.intrinsic_laplacian.abs() < 1e-8);
            assert!(cert.verdict);
        }
    }

    #[test]
    fn minimal_disk_inside_sphere_has_positive_cmc_margin() {
        // M = flat disk near the north pole inside the unit sphere:
        // inf H_N = 2, sup |H_M| = 0, margin >= (2c/(1+2ct)) 2 - delta > 0
        let m = PlanePatch::horizontal(0.9);
        let n = AnalyticSurface::Sphere { radius: 1.0 };
        let probes = grid((-0.12, 0.12), (-0.12, 0.12), 6, 6);
        let report = certify_cmc(&m, &probes, &n, &CertifyOptions::default()).unwrap();
        assert!(report.hypothesis_ok);
        assert!((report.lambda - 2.0).abs() < 1e-10);
        assert!(report.base.all_pass);
        for cert in &report.base.certificates {
            assert!(cert.in_band);
            assert!(
                cert.laplacian_margin > 0.0,
                "margin {}",
                cert.laplacian_margin
            );
        }
    }

    #[test]
    fn badly_oriented_cmc_is_refused() {
        // M outside the unit sphere: the mean curvature vector points inward,
        // away from M
        let m = PlanePatch::horizontal(1.3);
        let n = AnalyticSurface::Sphere { radius: 1.0 };
        let probes = grid((-0.1, 0.1), (-0.1, 0.1), 3, 3);
        assert!(matches!(
            certify_cmc(&m, &probes, &n, &CertifyOptions::default()),
            Err(BarrierError::NotWellOriented(_))
        ));
    }
}
