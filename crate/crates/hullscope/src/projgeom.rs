//! Projective-space primitives: homogeneous coordinates, the Fubini–Study
//! metric, the projection π: ℂ^{n+1}∖{0} → ℙⁿ, circle-orbit lifts of sampled
//! compacts to the unit sphere, and lifting of rational discs.

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use crate::discs::{circle_nodes, DiscMode, RationalDisc};
use crate::error::{HullError, Result};

/// Orbit samples per base point when lifting a compact to the sphere.
pub const DEFAULT_ORBIT_COUNT: usize = 64;

const UNIT_NORM_TOL: f64 = 1e-12;

/// A point of ℙⁿ stored as a unit-norm homogeneous representative.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProjectivePoint {
    rep: Vec<C64>,
}

impl ProjectivePoint {
    /// Dimension n of the ambient ℙⁿ.
    pub fn ambient_dim(&self) -> usize {
        self.rep.len() - 1
    }

    pub fn rep(&self) -> &[C64] {
        &self.rep
    }

    /// Checks the unit-norm invariant.
    pub fn validate(&self) -> Result<()> {
        let norm = vec_norm(&self.rep);
        if (norm - 1.0).abs() > UNIT_NORM_TOL {
            return Err(HullError::InvalidInput(format!(
                "representative norm {norm} departs from 1 beyond {UNIT_NORM_TOL}"
            )));
        }
        Ok(())
    }
}

pub fn vec_norm(z: &[C64]) -> f64 {
    z.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
}

pub fn euclid_distance(a: &[C64], b: &[C64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).norm_sqr())
        .sum::<f64>()
        .sqrt()
}

/// Hermitian inner product ⟨a, b⟩ = Σ aᵢ conj(bᵢ).
pub fn herm_inner(a: &[C64], b: &[C64]) -> C64 {
    a.iter().zip(b).map(|(x, y)| x * y.conj()).sum()
}

/// The projection π: sends a nonzero vector to its projective point, stored
/// as the unit-norm representative z/|z|.
pub fn project(z: &[C64]) -> Result<ProjectivePoint> {
    let norm = vec_norm(z);
    if !norm.is_finite() || norm == 0.0 {
        return Err(HullError::InvalidInput(
            "cannot project the zero vector".into(),
        ));
    }
    Ok(ProjectivePoint {
        rep: z.iter().map(|c| c / norm).collect(),
    })
}

/// Geodesic Fubini–Study distance arccos |⟨x, y⟩| on unit representatives.
pub fn fs_distance(x: &ProjectivePoint, y: &ProjectivePoint) -> Result<f64> {
    if x.rep.len() != y.rep.len() {
        return Err(HullError::DimensionMismatch {
            expected: x.rep.len(),
            got: y.rep.len(),
        });
    }
    Ok(fs_distance_reps(&x.rep, &y.rep))
}

/// Same metric on raw unit-norm representatives (no dimension check).
///
/// Evaluated as arccos for well-separated points and through the
/// phase-aligned chord near coincidence, where arccos loses half the
/// significant digits.
pub fn fs_distance_reps(x: &[C64], y: &[C64]) -> f64 {
    let inner = herm_inner(x, y);
    let c = inner.norm();
    if c <= 0.5 {
        return c.min(1.0).acos();
    }
    let phase = inner / c;
    let chord_sq: f64 = x
        .iter()
        .zip(y)
        .map(|(xi, yi)| (xi - yi * phase).norm_sqr())
        .sum();
    2.0 * (0.5 * chord_sq.sqrt()).min(1.0).asin()
}

/// Mode tag for a sampled compact set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CloudMode {
    Projective,
    Affine,
}

/// A finite point cloud approximating a compact K ⊂ ℙⁿ or K ⊂ ℂⁿ.
///
/// Projective-mode points are stored as unit-norm representatives. The
/// `resolution` is the declared sampling mesh: every point of the underlying
/// compact is supposed to lie within `resolution` of some sample (Fubini–Study
/// in projective mode, Euclidean in affine mode).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SampledCompact {
    mode: CloudMode,
    points: Vec<Vec<C64>>,
    pub connected: bool,
    pub circular: bool,
    resolution: f64,
}

impl SampledCompact {
    pub fn projective(
        points: Vec<ProjectivePoint>,
        connected: bool,
        resolution: f64,
    ) -> Result<Self> {
        if points.is_empty() {
            return Err(HullError::InvalidInput("empty point cloud".into()));
        }
        let dim = points[0].rep.len();
        for p in &points {
            p.validate()?;
            if p.rep.len() != dim {
                return Err(HullError::DimensionMismatch {
                    expected: dim,
                    got: p.rep.len(),
                });
            }
        }
        Ok(SampledCompact {
            mode: CloudMode::Projective,
            points: points.into_iter().map(|p| p.rep).collect(),
            connected,
            circular: false,
            resolution,
        })
    }

    pub fn affine(
        points: Vec<Vec<C64>>,
        connected: bool,
        circular: bool,
        resolution: f64,
    ) -> Result<Self> {
        if points.is_empty() {
            return Err(HullError::InvalidInput("empty point cloud".into()));
        }
        let dim = points[0].len();
        for p in &points {
            if p.len() != dim {
                return Err(HullError::DimensionMismatch {
                    expected: dim,
                    got: p.len(),
                });
            }
            if p.iter().any(|c| !c.re.is_finite() || !c.im.is_finite()) {
                return Err(HullError::InvalidInput(
                    "affine cloud contains a non-finite point".into(),
                ));
            }
        }
        Ok(SampledCompact {
            mode: CloudMode::Affine,
            points,
            connected,
            circular,
            resolution,
        })
    }

    pub fn mode(&self) -> CloudMode {
        self.mode
    }

    /// Raw stored points (unit representatives in projective mode).
    pub fn points(&self) -> &[Vec<C64>] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn resolution(&self) -> f64 {
        self.resolution
    }

    /// Dimension n of ℙⁿ (projective mode) or of ℂⁿ (affine mode).
    pub fn ambient_dim(&self) -> usize {
        match self.mode {
            CloudMode::Projective => self.points[0].len() - 1,
            CloudMode::Affine => self.points[0].len(),
        }
    }

    /// Distance from a point to the nearest sample, in the cloud's metric.
    /// Projective mode expects a unit-norm representative.
    pub fn nearest_distance(&self, point: &[C64]) -> f64 {
        let mut best = f64::INFINITY;
        for p in &self.points {
            let d = match self.mode {
                CloudMode::Projective => fs_distance_reps(point, p),
                CloudMode::Affine => euclid_distance(point, p),
            };
            if d < best {
                best = d;
            }
        }
        best
    }

    /// Checks the stored invariants. The circularity of an affine cloud is
    /// spot-checked at θ = π/2: the rotated sample i·p must lie within the
    /// declared resolution of the cloud.
    pub fn validate(&self) -> Result<()> {
        if self.points.is_empty() {
            return Err(HullError::InvalidInput("empty point cloud".into()));
        }
        if self.mode == CloudMode::Projective {
            for p in &self.points {
                let norm = vec_norm(p);
                if (norm - 1.0).abs() > UNIT_NORM_TOL {
                    return Err(HullError::InvalidInput(format!(
                        "stored representative has norm {norm}"
                    )));
                }
            }
        }
        if self.circular && self.mode == CloudMode::Affine {
            let rot = C64::new(0.0, 1.0);
            for p in &self.points {
                let turned: Vec<C64> = p.iter().map(|c| c * rot).collect();
                let d = self.nearest_distance(&turned);
                if d > self.resolution + 1e-9 {
                    return Err(HullError::InvalidInput(format!(
                        "circular flag asserted but e^{{iπ/2}}·p is {d:.3e} from the cloud \
                         (resolution {:.3e})",
                        self.resolution
                    )));
                }
            }
        }
        Ok(())
    }
}

/// A sampling of S_K = S ∩ π⁻¹(K): for each base sample the m-th roots of
/// unity times its unit representative. B_K is the radial cone over these
/// points and is not stored.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SphereLift {
    points: Vec<Vec<C64>>,
    orbit_count: usize,
}

impl SphereLift {
    pub fn points(&self) -> &[Vec<C64>] {
        &self.points
    }

    pub fn orbit_count(&self) -> usize {
        self.orbit_count
    }

    /// Unit norms and closure under the sampled circle action.
    pub fn validate(&self) -> Result<()> {
        for p in &self.points {
            let norm = vec_norm(p);
            if (norm - 1.0).abs() > UNIT_NORM_TOL {
                return Err(HullError::InvalidInput(format!(
                    "lift point has norm {norm}"
                )));
            }
        }
        let m = self.orbit_count;
        let rot = C64::from_polar(1.0, std::f64::consts::TAU / m as f64);
        for p in &self.points {
            let turned: Vec<C64> = p.iter().map(|c| c * rot).collect();
            let found = self
                .points
                .iter()
                .any(|q| euclid_distance(&turned, q) < 1e-9);
            if !found {
                return Err(HullError::InvalidInput(
                    "lift is not closed under the sampled circle action".into(),
                ));
            }
        }
        Ok(())
    }
}

/// Samples S_K by the m-point circle orbit of each unit representative.
pub fn build_sphere_lift(k: &SampledCompact, m: usize) -> Result<SphereLift> {
    if k.mode() != CloudMode::Projective {
        return Err(HullError::InvalidInput(
            "sphere lift requires a projective-mode cloud".into(),
        ));
    }
    if m < 1 {
        return Err(HullError::InvalidInput("orbit count must be ≥ 1".into()));
    }
    let mut points = Vec::with_capacity(k.len() * m);
    for p in k.points() {
        for j in 0..m {
            let rot = C64::from_polar(1.0, std::f64::consts::TAU * j as f64 / m as f64);
            points.push(p.iter().map(|c| c * rot).collect());
        }
    }
    Ok(SphereLift {
        points,
        orbit_count: m,
    })
}

/// Lifts a projective rational disc to an analytic disc into ℂ^{n+1}∖{0}:
/// the polynomial component vector is its own lift. Fails when the
/// components share a zero on the closed unit disc, i.e. when this
/// representation is not a lift.
pub fn lift_disc(f: &RationalDisc) -> Result<RationalDisc> {
    if f.mode() != DiscMode::Projective {
        return Err(HullError::InvalidInput(
            "only projective discs are lifted".into(),
        ));
    }
    f.check_no_common_zero()?;
    RationalDisc::affine(f.components().to_vec())
}

/// The empirical bounded-lifting constant: sup over the lifted discs of
/// max_t |F(e^{it})| / |F(0)| on an m-point quadrature grid.
pub fn blp_constant(lifts: &[RationalDisc], quadrature_nodes: usize) -> Result<f64> {
    if lifts.is_empty() {
        return Err(HullError::InvalidInput(
            "bounded-lifting constant of an empty family".into(),
        ));
    }
    let nodes = circle_nodes(quadrature_nodes);
    let mut sup = 0.0_f64;
    for f in lifts {
        if f.mode() != DiscMode::Affine {
            return Err(HullError::InvalidInput(
                "bounded-lifting constant expects lifted (affine-mode) discs".into(),
            ));
        }
        f.check_nonvanishing()?;
        let center = vec_norm(&f.eval_affine(C64::new(0.0, 0.0)));
        if center <= 0.0 {
            return Err(HullError::InvalidInput("lift vanishes at the center".into()));
        }
        let boundary_max = nodes
            .iter()
            .map(|&z| vec_norm(&f.eval_affine(z)))
            .fold(0.0, f64::max);
        sup = sup.max(boundary_max / center);
    }
    Ok(sup)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cpoly::CPoly;
    use approx::assert_relative_eq;
    use rand::prelude::*;
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn random_vec(rng: &mut ChaCha8Rng, len: usize) -> Vec<C64> {
        (0..len)
            .map(|_| c(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
            .collect()
    }

    #[test]
    fn project_normalizes_and_scales() {
        let p = project(&[c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)]).unwrap();
        assert_relative_eq!(p.rep()[0].re, 1.0, epsilon = 1e-15);
        let q = project(&[c(2.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)]).unwrap();
        assert!(fs_distance(&p, &q).unwrap() < 1e-12);

        let a = project(&[c(0.0, 0.6), c(0.8, 0.0), c(0.0, 0.0)]).unwrap();
        let b = project(&[c(0.0, 3.0), c(4.0, 0.0), c(0.0, 0.0)]).unwrap();
        assert!(fs_distance(&a, &b).unwrap() < 1e-12);
    }

    #[test]
    fn project_rejects_zero() {
        assert!(project(&[c(0.0, 0.0), c(0.0, 0.0)]).is_err());
    }

    #[test]
    fn fs_distance_examples() {
        let e0 = project(&[c(1.0, 0.0), c(0.0, 0.0)]).unwrap();
        let e1 = project(&[c(0.0, 0.0), c(1.0, 0.0)]).unwrap();
        assert_relative_eq!(
            fs_distance(&e0, &e1).unwrap(),
            std::f64::consts::FRAC_PI_2,
            epsilon = 1e-14
        );
        let diag = project(&[c(1.0, 0.0), c(1.0, 0.0)]).unwrap();
        assert_relative_eq!(
            fs_distance(&e0, &diag).unwrap(),
            std::f64::consts::FRAC_PI_4,
            epsilon = 1e-14
        );
        assert_eq!(fs_distance(&e0, &e0).unwrap(), 0.0);
    }

    #[test]
    fn fs_distance_dimension_mismatch() {
        let a = project(&[c(1.0, 0.0), c(0.0, 0.0)]).unwrap();
        let b = project(&[c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)]).unwrap();
        assert!(fs_distance(&a, &b).is_err());
    }

    #[test]
    fn scale_invariance_of_projection() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let z = random_vec(&mut rng, 3);
            if vec_norm(&z) < 1e-3 {
                continue;
            }
            let lambda = c(rng.random_range(-2.0..2.0), rng.random_range(-2.0..2.0));
            if lambda.norm() < 1e-3 {
                continue;
            }
            let scaled: Vec<C64> = z.iter().map(|v| v * lambda).collect();
            let d = fs_distance(&project(&z).unwrap(), &project(&scaled).unwrap()).unwrap();
            assert!(d < 1e-10, "scale invariance broke: {d:e}");
        }
    }

    #[test]
    fn projection_is_sphere_lipschitz() {
        // fs(π(u), π(v)) ≤ (1 + 1e−9)·arccos Re⟨u,v⟩ on the unit sphere
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..10_000 {
            let n = rng.random_range(1..4usize);
            let u = project(&random_vec(&mut rng, n + 1)).unwrap();
            let v = project(&random_vec(&mut rng, n + 1)).unwrap();
            let sphere = herm_inner(u.rep(), v.rep()).re.clamp(-1.0, 1.0).acos();
            let fs = fs_distance(&u, &v).unwrap();
            assert!(
                fs <= (1.0 + 1e-9) * sphere + 1e-15,
                "fs {fs} > sphere {sphere}"
            );
        }
    }

    #[test]
    fn sphere_lift_single_point_orbit() {
        let k = SampledCompact::projective(
            vec![project(&[c(1.0, 0.0), c(0.0, 0.0)]).unwrap()],
            true,
            1e-3,
        )
        .unwrap();
        let lift = build_sphere_lift(&k, 4).unwrap();
        assert_eq!(lift.points().len(), 4);
        let expected = [c(1.0, 0.0), c(0.0, 1.0), c(-1.0, 0.0), c(0.0, -1.0)];
        for e in expected {
            let hit = lift
                .points()
                .iter()
                .any(|p| (p[0] - e).norm() < 1e-12 && p[1].norm() < 1e-12);
            assert!(hit, "orbit point {e} missing");
        }
        lift.validate().unwrap();
    }

    #[test]
    fn sphere_lift_of_circle_balances_moduli() {
        let pts: Vec<ProjectivePoint> = (0..32)
            .map(|j| {
                let th = std::f64::consts::TAU * j as f64 / 32.0;
                project(&[c(1.0, 0.0), C64::from_polar(1.0, th)]).unwrap()
            })
            .collect();
        let k = SampledCompact::projective(pts, true, 0.2).unwrap();
        let lift = build_sphere_lift(&k, 8).unwrap();
        let inv_sqrt2 = 1.0 / 2.0_f64.sqrt();
        for p in lift.points() {
            assert_relative_eq!(p[0].norm(), inv_sqrt2, epsilon = 1e-12);
            assert_relative_eq!(p[1].norm(), inv_sqrt2, epsilon = 1e-12);
        }
        // π ∘ lift lands back on K samples
        for p in lift.points() {
            let proj = project(p).unwrap();
            assert!(k.nearest_distance(proj.rep()) < 1e-9);
        }
    }

    #[test]
    fn orbit_closure_for_every_m() {
        let pts: Vec<ProjectivePoint> = (0..8)
            .map(|j| {
                let th = std::f64::consts::TAU * j as f64 / 8.0;
                project(&[c(1.0, 0.0), C64::from_polar(1.0, th)]).unwrap()
            })
            .collect();
        let k = SampledCompact::projective(pts, true, 0.8).unwrap();
        for m in 1..=9 {
            build_sphere_lift(&k, m).unwrap().validate().unwrap();
        }
    }

    #[test]
    fn lift_disc_is_representational() {
        let f = RationalDisc::projective(vec![
            CPoly::one(),
            CPoly::new(vec![c(0.0, 0.0), c(1.0, 0.0)]),
        ])
        .unwrap();
        let lifted = lift_disc(&f).unwrap();
        let at0 = lifted.eval_affine(c(0.0, 0.0));
        assert_eq!(at0[0], c(1.0, 0.0));
        assert_eq!(at0[1], c(0.0, 0.0));
    }

    #[test]
    fn lift_disc_rejects_common_zero() {
        let zeta = CPoly::new(vec![c(0.0, 0.0), c(1.0, 0.0)]);
        assert!(RationalDisc::projective(vec![zeta.clone(), zeta]).is_err());
    }

    #[test]
    fn blp_constant_examples() {
        let zeta = CPoly::new(vec![c(0.0, 0.0), c(1.0, 0.0)]);
        let one = CPoly::one();
        let f = RationalDisc::affine(vec![one.clone(), zeta.clone()]).unwrap();
        assert_relative_eq!(
            blp_constant(&[f], 256).unwrap(),
            2.0_f64.sqrt(),
            epsilon = 1e-12
        );

        let constant =
            RationalDisc::affine(vec![CPoly::constant(c(0.3, -0.4))]).unwrap();
        assert_relative_eq!(blp_constant(&[constant], 64).unwrap(), 1.0, epsilon = 1e-12);

        let half = RationalDisc::affine(vec![one, zeta.scale(c(0.5, 0.0))]).unwrap();
        assert_relative_eq!(
            blp_constant(&[half], 256).unwrap(),
            5.0_f64.sqrt() / 2.0,
            epsilon = 1e-12
        );
    }

    #[test]
    fn blp_constant_empty_errors() {
        assert!(blp_constant(&[], 64).is_err());
    }

    #[test]
    fn circular_spot_check() {
        let pts: Vec<Vec<C64>> = (0..64)
            .map(|j| {
                let th = std::f64::consts::TAU * j as f64 / 64.0;
                vec![C64::from_polar(1.0, th)]
            })
            .collect();
        let cloud = SampledCompact::affine(pts, true, true, 0.1).unwrap();
        cloud.validate().unwrap();

        // a non-circular cloud flagged circular must fail the spot check
        let bad = SampledCompact::affine(
            vec![vec![c(1.0, 0.0)], vec![c(0.9, 0.1)]],
            true,
            true,
            0.05,
        )
        .unwrap();
        assert!(bad.validate().is_err());
    }
}
