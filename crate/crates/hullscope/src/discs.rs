//! Rational analytic discs, intersection divisors with hyperplanes, finite
//! Blaschke products, the disc functional J, pole cancellation, and
//! boundary-measure / Poisson quadrature.

use num_complex::Complex64 as C64;
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::cpoly::{common_roots, CPoly};
use crate::error::{HullError, Result};
use crate::projgeom::{euclid_distance, project, vec_norm, CloudMode, SampledCompact};

/// Default number of uniform circle quadrature nodes.
pub const DEFAULT_QUADRATURE: usize = 1024;

/// Divisor points this close to the unit circle are rejected: J is unstable
/// there and boundary intersections are outside the hypotheses anyway.
pub const DELTA_BOUNDARY: f64 = 1e-6;

/// Coefficient tolerance for common-zero detection by polynomial gcd.
pub const GCD_TOL: f64 = 1e-10;

/// Root clustering tolerance for multiplicity detection.
pub const CLUSTER_TOL: f64 = 1e-8;

/// Residual tolerance for numerical pole cancellation.
pub const CANCEL_TOL: f64 = 1e-8;

/// The m-th roots of unity e^{2πik/m}, k = 0..m−1.
pub fn circle_nodes(m: usize) -> Vec<C64> {
    (0..m)
        .map(|k| C64::from_polar(1.0, std::f64::consts::TAU * k as f64 / m as f64))
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DiscMode {
    /// Components are homogeneous coordinates of a map into ℙⁿ.
    Projective,
    /// Components are coordinates of a map into ℂⁿ (optionally over a
    /// common scalar denominator with no zeros on the closed disc).
    Affine,
}

/// An analytic/meromorphic disc represented by a vector of polynomials in ζ.
///
/// Projective mode stores n+1 components with no common zero on the closed
/// unit disc, so the component vector is itself a lift to ℂ^{n+1}∖{0}.
/// Affine mode stores free components; nonvanishing is imposed separately
/// where an operation needs it. Pole cancellation produces affine discs with
/// a common denominator that has no zeros on the closed disc.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RationalDisc {
    components: Vec<CPoly>,
    denominator: Option<CPoly>,
    mode: DiscMode,
    degree_bound: usize,
}

impl RationalDisc {
    pub fn projective(components: Vec<CPoly>) -> Result<Self> {
        if components.len() < 2 {
            return Err(HullError::InvalidInput(
                "a projective disc needs at least two components".into(),
            ));
        }
        let disc = RationalDisc {
            degree_bound: max_degree(&components, None),
            components,
            denominator: None,
            mode: DiscMode::Projective,
        };
        disc.check_some_component()?;
        disc.check_no_common_zero()?;
        Ok(disc)
    }

    pub fn affine(components: Vec<CPoly>) -> Result<Self> {
        if components.is_empty() {
            return Err(HullError::InvalidInput("empty component vector".into()));
        }
        let disc = RationalDisc {
            degree_bound: max_degree(&components, None),
            components,
            denominator: None,
            mode: DiscMode::Affine,
        };
        disc.check_some_component()?;
        Ok(disc)
    }

    /// Affine disc with a common scalar denominator. The denominator must
    /// have no zeros on the closed unit disc.
    pub fn affine_rational(components: Vec<CPoly>, denominator: CPoly) -> Result<Self> {
        if components.is_empty() {
            return Err(HullError::InvalidInput("empty component vector".into()));
        }
        if denominator.is_negligible(1e-300) {
            return Err(HullError::InvalidInput("zero denominator".into()));
        }
        for r in denominator.roots() {
            if r.norm() <= 1.0 + 1e-9 {
                return Err(HullError::InvalidInput(format!(
                    "denominator vanishes at ζ = {r} inside the closed disc"
                )));
            }
        }
        let disc = RationalDisc {
            degree_bound: max_degree(&components, Some(&denominator)),
            components,
            denominator: Some(denominator),
            mode: DiscMode::Affine,
        };
        disc.check_some_component()?;
        Ok(disc)
    }

    pub fn mode(&self) -> DiscMode {
        self.mode
    }

    pub fn components(&self) -> &[CPoly] {
        &self.components
    }

    pub fn denominator(&self) -> Option<&CPoly> {
        self.denominator.as_ref()
    }

    pub fn degree_bound(&self) -> usize {
        self.degree_bound
    }

    /// Number of components.
    pub fn component_count(&self) -> usize {
        self.components.len()
    }

    fn check_some_component(&self) -> Result<()> {
        if self.components.iter().all(|c| c.is_zero()) {
            return Err(HullError::InvalidInput(
                "all disc components are identically zero".into(),
            ));
        }
        Ok(())
    }

    /// Errors when the components share a zero on the closed unit disc.
    pub fn check_no_common_zero(&self) -> Result<()> {
        for r in common_roots(&self.components, GCD_TOL) {
            if r.norm() <= 1.0 + 1e-9 {
                return Err(HullError::CommonZero { at: r });
            }
        }
        Ok(())
    }

    /// Alias with the reading used for affine-mode discs into ℂⁿ∖{0}.
    pub fn check_nonvanishing(&self) -> Result<()> {
        self.check_no_common_zero()
    }

    /// Component values (numerators only).
    pub fn eval_components(&self, z: C64) -> Vec<C64> {
        self.components.iter().map(|p| p.eval(z)).collect()
    }

    /// Value as a point of ℂⁿ (affine mode).
    pub fn eval_affine(&self, z: C64) -> Vec<C64> {
        let mut v = self.eval_components(z);
        if let Some(den) = &self.denominator {
            let d = den.eval(z);
            for c in v.iter_mut() {
                *c /= d;
            }
        }
        v
    }

    /// Value as a point of ℙⁿ (projective mode).
    pub fn eval_projective(&self, z: C64) -> Result<crate::projgeom::ProjectivePoint> {
        project(&self.eval_components(z))
    }

    /// The disc's center f(0).
    pub fn center_affine(&self) -> Vec<C64> {
        self.eval_affine(C64::new(0.0, 0.0))
    }
}

fn max_degree(components: &[CPoly], den: Option<&CPoly>) -> usize {
    components
        .iter()
        .map(|c| c.degree())
        .chain(den.map(|d| d.degree()))
        .max()
        .unwrap_or(0)
}

/// Intersection divisor: points of the open disc with multiplicities.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Divisor {
    points: Vec<(C64, u32)>,
}

impl Divisor {
    pub fn new(points: Vec<(C64, u32)>) -> Result<Self> {
        for (z, m) in &points {
            if z.norm() >= 1.0 - DELTA_BOUNDARY {
                return Err(HullError::BoundaryContact {
                    at: *z,
                    delta: DELTA_BOUNDARY,
                });
            }
            if *m < 1 {
                return Err(HullError::InvalidInput("zero multiplicity".into()));
            }
        }
        Ok(Divisor { points })
    }

    pub fn empty() -> Self {
        Divisor { points: Vec::new() }
    }

    pub fn points(&self) -> &[(C64, u32)] {
        &self.points
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn total_multiplicity(&self) -> u32 {
        self.points.iter().map(|(_, m)| m).sum()
    }

    /// J = −Σ m log|ζ|. A divisor point at the origin (within 1e−14) makes
    /// J infinite; the +∞ sentinel is a value, not an error.
    pub fn j_value(&self) -> f64 {
        let mut j = 0.0;
        for (z, m) in &self.points {
            let r = z.norm();
            if r <= 1e-14 {
                return f64::INFINITY;
            }
            j -= *m as f64 * r.ln();
        }
        j
    }
}

/// Finite Blaschke product with prescribed zeros and a unimodular rotation.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BlaschkeProduct {
    zeros: Divisor,
    rotation: C64,
}

impl BlaschkeProduct {
    pub fn zeros(&self) -> &Divisor {
        &self.zeros
    }

    pub fn rotation(&self) -> C64 {
        self.rotation
    }

    pub fn eval(&self, z: C64) -> C64 {
        let mut acc = self.rotation;
        for (a, m) in self.zeros.points() {
            let factor = (z - a) / (C64::new(1.0, 0.0) - a.conj() * z);
            for _ in 0..*m {
                acc *= factor;
            }
        }
        acc
    }

    pub fn at_zero(&self) -> C64 {
        let mut acc = self.rotation;
        for (a, m) in self.zeros.points() {
            for _ in 0..*m {
                acc *= -a;
            }
        }
        acc
    }

    /// Numerator Π (ζ − a)^m as a polynomial.
    pub fn numerator(&self) -> CPoly {
        let mut roots = Vec::new();
        for (a, m) in self.zeros.points() {
            for _ in 0..*m {
                roots.push(*a);
            }
        }
        CPoly::from_roots(&roots).scale(self.rotation)
    }

    /// Denominator Π (1 − ā ζ)^m as a polynomial.
    pub fn denominator(&self) -> CPoly {
        let mut den = CPoly::one();
        for (a, m) in self.zeros.points() {
            let factor = CPoly::new(vec![C64::new(1.0, 0.0), -a.conj()]);
            for _ in 0..*m {
                den = den.mul(&factor);
            }
        }
        den
    }

    /// |B| = 1 on the circle (1e−10 at quadrature nodes) and
    /// |B(0)| = Π |a|^m (1e−12).
    pub fn validate(&self, quadrature_nodes: usize) -> Result<()> {
        for z in circle_nodes(quadrature_nodes) {
            let err = (self.eval(z).norm() - 1.0).abs();
            if err > 1e-10 {
                return Err(HullError::InvalidInput(format!(
                    "|B| departs from 1 on the circle by {err:.3e}"
                )));
            }
        }
        let prod: f64 = self
            .zeros
            .points()
            .iter()
            .map(|(a, m)| a.norm().powi(*m as i32))
            .product();
        if (self.at_zero().norm() - prod).abs() > 1e-12 {
            return Err(HullError::InvalidInput(
                "|B(0)| does not match the product of zero moduli".into(),
            ));
        }
        Ok(())
    }
}

/// Blaschke product with the divisor's zeros and rotation 1.
pub fn blaschke_from_divisor(d: &Divisor) -> BlaschkeProduct {
    BlaschkeProduct {
        zeros: d.clone(),
        rotation: C64::new(1.0, 0.0),
    }
}

/// The scalar pairing ⟨λ, f⟩ = Σ λᵢ fᵢ of a disc with a hyperplane.
pub fn hyperplane_pairing(f: &RationalDisc, hyperplane: &[C64]) -> Result<CPoly> {
    if hyperplane.len() != f.component_count() {
        return Err(HullError::DimensionMismatch {
            expected: f.component_count(),
            got: hyperplane.len(),
        });
    }
    if hyperplane.iter().all(|c| c.norm() == 0.0) {
        return Err(HullError::InvalidInput("zero hyperplane".into()));
    }
    let mut q = CPoly::zero();
    for (lambda, comp) in hyperplane.iter().zip(f.components()) {
        q = q.add(&comp.scale(*lambda));
    }
    Ok(q)
}

/// Roots of the pairing inside the open disc, with multiplicities from root
/// clustering. Roots within `DELTA_BOUNDARY` of the unit circle are a
/// boundary-contact error; an identically-zero pairing means the disc lies
/// inside the hyperplane.
pub fn hyperplane_divisor(f: &RationalDisc, hyperplane: &[C64]) -> Result<Divisor> {
    if f.denominator().is_some() {
        return Err(HullError::InvalidInput(
            "divisor extraction expects polynomial components".into(),
        ));
    }
    let q = hyperplane_pairing(f, hyperplane)?;
    let scale = f
        .components()
        .iter()
        .map(|c| c.inf_norm())
        .fold(0.0, f64::max)
        * hyperplane.iter().map(|c| c.norm()).fold(0.0, f64::max);
    if q.is_negligible(1e-12 * scale.max(1e-300)) {
        return Err(HullError::DiscInHyperplane);
    }
    let mut inside = Vec::new();
    for (z, m) in q.clustered_roots(CLUSTER_TOL) {
        let r = z.norm();
        if (r - 1.0).abs() <= DELTA_BOUNDARY {
            return Err(HullError::BoundaryContact {
                at: z,
                delta: DELTA_BOUNDARY,
            });
        }
        if r < 1.0 {
            inside.push((z, m));
        }
    }
    Divisor::new(inside)
}

/// J(f) = −Σ m_ζ log|ζ| over the intersection divisor with the hyperplane.
pub fn j_functional(f: &RationalDisc, hyperplane: &[C64]) -> Result<f64> {
    Ok(hyperplane_divisor(f, hyperplane)?.j_value())
}

/// An affine chart ℂᵐ = ℙᵐ∖H realized by linear coordinates: the pairing
/// row λᵀ and an orthonormal completion. A point [z] off H has chart
/// coordinates (w₁ᴴz, …, w_mᴴz) / (λᵀz).
#[derive(Debug, Clone)]
pub struct AffineChart {
    hyperplane: Vec<C64>,
    complement: Vec<Vec<C64>>,
}

impl AffineChart {
    pub fn from_hyperplane(hyperplane: &[C64]) -> Result<Self> {
        let dim = hyperplane.len();
        if dim < 2 {
            return Err(HullError::InvalidInput(
                "hyperplane needs at least two coordinates".into(),
            ));
        }
        let norm = vec_norm(hyperplane);
        if norm == 0.0 {
            return Err(HullError::InvalidInput("zero hyperplane".into()));
        }
        // Householder reflection sending conj(λ̂) to a multiple of e₀; its
        // remaining columns are an orthonormal basis of {λᵀw = 0}.
        let v: Vec<C64> = hyperplane.iter().map(|c| c.conj() / norm).collect();
        let sign = if v[0].norm() > 0.0 {
            v[0] / v[0].norm()
        } else {
            C64::new(1.0, 0.0)
        };
        let alpha = -sign;
        let mut u = v.clone();
        u[0] -= alpha;
        let uu: f64 = u.iter().map(|c| c.norm_sqr()).sum();
        let mut complement = Vec::with_capacity(dim - 1);
        for i in 1..dim {
            let mut w: Vec<C64> = vec![C64::new(0.0, 0.0); dim];
            w[i] = C64::new(1.0, 0.0);
            if uu > 1e-300 {
                let factor = 2.0 * u[i].conj() / uu;
                for (wj, uj) in w.iter_mut().zip(&u) {
                    *wj -= factor * uj;
                }
            }
            complement.push(w);
        }
        Ok(AffineChart {
            hyperplane: hyperplane.to_vec(),
            complement,
        })
    }

    pub fn hyperplane(&self) -> &[C64] {
        &self.hyperplane
    }

    /// Chart dimension m (for a hyperplane in ℙᵐ).
    pub fn dim(&self) -> usize {
        self.complement.len()
    }

    pub fn pairing(&self, z: &[C64]) -> C64 {
        self.hyperplane.iter().zip(z).map(|(l, zi)| l * zi).sum()
    }

    /// Chart coordinates of a homogeneous point off the hyperplane.
    pub fn to_chart(&self, z: &[C64]) -> Vec<C64> {
        let q = self.pairing(z);
        self.complement
            .iter()
            .map(|w| {
                let num: C64 = w.iter().zip(z).map(|(wi, zi)| wi.conj() * zi).sum();
                num / q
            })
            .collect()
    }

    /// Pairing polynomial and chart-coordinate numerator polynomials of a
    /// polynomial-component disc.
    pub fn apply_to_disc(&self, f: &RationalDisc) -> Result<(CPoly, Vec<CPoly>)> {
        let q = hyperplane_pairing(f, &self.hyperplane)?;
        let coords = self
            .complement
            .iter()
            .map(|w| {
                let mut acc = CPoly::zero();
                for (wi, comp) in w.iter().zip(f.components()) {
                    acc = acc.add(&comp.scale(wi.conj()));
                }
                acc
            })
            .collect();
        Ok((q, coords))
    }
}

/// Result of Blaschke pole cancellation F = (B/B(0))·G̃.
#[derive(Debug, Clone)]
pub struct PoleCancellation {
    /// Pole-free, zero-free analytic disc into ℂᵐ∖{0} (affine mode with a
    /// common denominator).
    pub disc: RationalDisc,
    pub blaschke: BlaschkeProduct,
    pub divisor: Divisor,
    pub j: f64,
    /// Perturbation added to the chart constant terms when the input disc
    /// passed through the chart origin, if any.
    pub nudge: Option<Vec<C64>>,
}

/// Cancels the poles of G's chart realization with the Blaschke product of
/// its hyperplane divisor: F = (B/B(0))·G̃. F is analytic and zero-free on
/// the closed disc, F(0) = G̃(0), |F| = |G̃|/|B(0)| on the circle, and
/// π∘F = π∘G̃ there.
pub fn cancel_poles(
    g: &RationalDisc,
    chart: &AffineChart,
    nudge_seed: u64,
) -> Result<PoleCancellation> {
    if g.mode() != DiscMode::Projective {
        return Err(HullError::InvalidInput(
            "pole cancellation expects a projective disc".into(),
        ));
    }
    let divisor = hyperplane_divisor(g, chart.hyperplane())?;
    let (q, mut coords) = chart.apply_to_disc(g)?;
    let scale = q
        .inf_norm()
        .max(coords.iter().map(|c| c.inf_norm()).fold(0.0, f64::max));
    if q.eval(C64::new(0.0, 0.0)).norm() <= 1e-13 * scale {
        return Err(HullError::CenterOnHyperplane);
    }

    // General-position nudge: a disc through the chart origin is perturbed
    // in its constant terms and the perturbation is reported. A single
    // chart coordinate cannot be moved off an interior zero this way.
    let mut nudge = None;
    if let Some(at) = chart_origin_passage(&coords) {
        let mut rng = ChaCha8Rng::seed_from_u64(nudge_seed);
        let mut eps: Vec<C64> = (0..coords.len())
            .map(|_| {
                C64::new(
                    rng.random_range(-1.0..1.0),
                    rng.random_range(-1.0..1.0),
                )
            })
            .collect();
        let norm = vec_norm(&eps).max(1e-300);
        for e in eps.iter_mut() {
            *e = *e / norm * 1e-8 * scale.max(1.0);
        }
        for (coord, e) in coords.iter_mut().zip(&eps) {
            *coord = coord.add(&CPoly::constant(*e));
        }
        if chart_origin_passage(&coords).is_some() {
            return Err(HullError::CommonZero { at });
        }
        nudge = Some(eps);
    }

    // Deflate the pairing by its in-disc zeros; the Blaschke numerator
    // cancels them exactly.
    let mut q_def = q.clone();
    let mut worst_residual = 0.0_f64;
    for (a, m) in divisor.points() {
        for _ in 0..*m {
            let (quot, rem) = q_def.deflate(*a);
            worst_residual = worst_residual.max(rem.norm() / scale.max(1e-300));
            q_def = quot;
        }
    }
    if worst_residual > CANCEL_TOL {
        return Err(HullError::CancellationResidual {
            residual: worst_residual,
            tol: CANCEL_TOL,
        });
    }
    for r in q_def.roots() {
        if r.norm() <= 1.0 {
            return Err(HullError::CancellationResidual {
                residual: 1.0 - r.norm(),
                tol: CANCEL_TOL,
            });
        }
    }

    let blaschke = blaschke_from_divisor(&divisor);
    let b0 = blaschke.at_zero();
    let denominator = blaschke.denominator().mul(&q_def).scale(b0);
    let disc = RationalDisc::affine_rational(coords, denominator)?;
    disc.check_nonvanishing().map_err(|_| {
        HullError::CancellationResidual {
            residual: f64::NAN,
            tol: CANCEL_TOL,
        }
    })?;

    Ok(PoleCancellation {
        disc,
        j: divisor.j_value(),
        blaschke,
        divisor,
        nudge,
    })
}

fn chart_origin_passage(coords: &[CPoly]) -> Option<C64> {
    common_roots(coords, GCD_TOL)
        .into_iter()
        .find(|r| r.norm() <= 1.0 + 1e-9)
}

/// Lebesgue measure of the boundary time spent within ε of the sampled
/// compact: (2π/m)·#{k : dist(f(e^{2πik/m}), K) < ε}.
pub fn poletsky_measure(
    f: &RationalDisc,
    k: &SampledCompact,
    eps: f64,
    quadrature_nodes: usize,
) -> Result<f64> {
    if eps <= 0.0 {
        return Err(HullError::InvalidInput("ε must be positive".into()));
    }
    if quadrature_nodes < 16 {
        return Err(HullError::InvalidInput(
            "at least 16 quadrature nodes required".into(),
        ));
    }
    let matches = match (f.mode(), k.mode()) {
        (DiscMode::Projective, CloudMode::Projective) => true,
        (DiscMode::Affine, CloudMode::Affine) => true,
        _ => false,
    };
    if !matches {
        return Err(HullError::InvalidInput(
            "disc mode and cloud mode must agree".into(),
        ));
    }
    let mut count = 0usize;
    for z in circle_nodes(quadrature_nodes) {
        let d = match f.mode() {
            DiscMode::Projective => {
                let p = f.eval_projective(z)?;
                k.nearest_distance(p.rep())
            }
            DiscMode::Affine => k.nearest_distance(&f.eval_affine(z)),
        };
        if d < eps {
            count += 1;
        }
    }
    Ok(std::f64::consts::TAU * count as f64 / quadrature_nodes as f64)
}

/// Poisson functional value with the count of −∞ nodes that were dropped.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PoissonValue {
    pub value: f64,
    pub dropped: usize,
}

/// Quadrature of ∫ u(f(e^{it})) dt/2π. The field u receives the disc's
/// affine value (affine mode) or the unit-norm representative (projective
/// mode). Nodes where u = −∞ are dropped with a flag; they carry no
/// quadrature mass.
pub fn poisson_functional<F>(u: F, f: &RationalDisc, quadrature_nodes: usize) -> Result<PoissonValue>
where
    F: Fn(&[C64]) -> f64,
{
    if quadrature_nodes == 0 {
        return Err(HullError::InvalidInput("no quadrature nodes".into()));
    }
    let mut sum = 0.0;
    let mut kept = 0usize;
    let mut dropped = 0usize;
    for z in circle_nodes(quadrature_nodes) {
        let value = match f.mode() {
            DiscMode::Affine => u(&f.eval_affine(z)),
            DiscMode::Projective => u(f.eval_projective(z)?.rep()),
        };
        if value == f64::NEG_INFINITY {
            dropped += 1;
            continue;
        }
        if !value.is_finite() {
            return Err(HullError::InvalidInput(format!(
                "field evaluated to {value} on the boundary"
            )));
        }
        sum += value;
        kept += 1;
    }
    if kept == 0 {
        return Err(HullError::InvalidInput(
            "field is −∞ at every quadrature node".into(),
        ));
    }
    Ok(PoissonValue {
        value: sum / kept as f64,
        dropped,
    })
}

/// Max over quadrature nodes of the boundary distance to the sampled set.
pub fn max_boundary_distance(
    f: &RationalDisc,
    k: &SampledCompact,
    quadrature_nodes: usize,
) -> Result<f64> {
    let mut worst = 0.0_f64;
    for z in circle_nodes(quadrature_nodes) {
        let d = match (f.mode(), k.mode()) {
            (DiscMode::Projective, CloudMode::Projective) => {
                k.nearest_distance(f.eval_projective(z)?.rep())
            }
            (DiscMode::Affine, CloudMode::Affine) => k.nearest_distance(&f.eval_affine(z)),
            _ => {
                return Err(HullError::InvalidInput(
                    "disc mode and cloud mode must agree".into(),
                ))
            }
        };
        worst = worst.max(d);
    }
    Ok(worst)
}
