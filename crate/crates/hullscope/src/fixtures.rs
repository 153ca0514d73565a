//! Deterministic fixture generators: the standard curves and tori whose
//! hulls have closed-form descriptions, used as oracles throughout the test
//! suites and exposed through the CLI.

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};
use std::f64::consts::TAU;

use crate::cpoly::CPoly;
use crate::projgeom::{project, ProjectivePoint, SampledCompact};

/// A named sampled compact with any closed-form oracle values attached.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Fixture {
    pub name: String,
    pub cloud: SampledCompact,
    pub oracles: Vec<OracleEntry>,
}

/// A known value at a point, with its provenance spelled out.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct OracleEntry {
    /// Unit representative (projective fixtures) or affine coordinates.
    pub point: Vec<C64>,
    pub quantity: String,
    pub value: f64,
    pub provenance: String,
}

/// K = {[1 : e^{iθ}]} ⊂ ℙ¹. The lifted set S_K is the torus
/// {|z₀| = |z₁| = 1/√2}, whose polynomial hull is the bidisc of that
/// polyradius, so C_K([1:0]) = √2.
pub fn circle(samples: usize) -> Fixture {
    assert!(samples >= 16, "sample count below 16");
    let points: Vec<ProjectivePoint> = (0..samples)
        .map(|j| {
            let th = TAU * j as f64 / samples as f64;
            project(&[C64::new(1.0, 0.0), C64::from_polar(1.0, th)]).unwrap()
        })
        .collect();
    // adjacent samples are Δθ/2 apart in the Fubini–Study metric
    let resolution = std::f64::consts::PI / samples as f64;
    let cloud = SampledCompact::projective(points, true, resolution).unwrap();
    let x0 = project(&[C64::new(1.0, 0.0), C64::new(0.0, 0.0)]).unwrap();
    Fixture {
        name: format!("circle({samples})"),
        cloud,
        oracles: vec![
            OracleEntry {
                point: x0.rep().to_vec(),
                quantity: "best_constant".into(),
                value: 2.0_f64.sqrt(),
                provenance: "bidisc hull of the lifted circle meets the line over [1:0] in radius 1/√2".into(),
            },
            OracleEntry {
                point: x0.rep().to_vec(),
                quantity: "radius".into(),
                value: 1.0 / 2.0_f64.sqrt(),
                provenance: "reciprocal of the best constant".into(),
            },
        ],
    }
}

/// K = {[1 : e^{is} : e^{it}]} ⊂ ℙ² on an ms×mt grid. The lifted set is the
/// 3-torus of polyradius 1/√3, so C_K([1:0:0]) = √3.
pub fn torus3(ms: usize, mt: usize) -> Fixture {
    assert!(ms >= 16 && mt >= 16, "sample count below 16");
    let mut points = Vec::with_capacity(ms * mt);
    for a in 0..ms {
        for b in 0..mt {
            let s = TAU * a as f64 / ms as f64;
            let t = TAU * b as f64 / mt as f64;
            points.push(
                project(&[
                    C64::new(1.0, 0.0),
                    C64::from_polar(1.0, s),
                    C64::from_polar(1.0, t),
                ])
                .unwrap(),
            );
        }
    }
    let step = |m: usize| {
        let d = TAU / m as f64;
        ((2.0 + C64::from_polar(1.0, d)).norm() / 3.0).min(1.0).acos()
    };
    let resolution = step(ms).max(step(mt));
    let cloud = SampledCompact::projective(points, true, resolution).unwrap();
    let x0 = project(&[C64::new(1.0, 0.0), C64::new(0.0, 0.0), C64::new(0.0, 0.0)]).unwrap();
    Fixture {
        name: format!("torus3({ms}x{mt})"),
        cloud,
        oracles: vec![OracleEntry {
            point: x0.rep().to_vec(),
            quantity: "best_constant".into(),
            value: 3.0_f64.sqrt(),
            provenance: "tridisc hull of the lifted 3-torus; |z₀| = 1/√3 on the lift".into(),
        }],
    }
}

/// K = {(e^{is}, e^{it})} ⊂ ℂ², the distinguished boundary of the bidisc.
/// Circular and connected; V_K = max(log⁺|z₁|, log⁺|z₂|).
pub fn torus2(m1: usize, m2: usize) -> Fixture {
    let m1 = round_up_to_multiple(m1.max(16), 4);
    let m2 = round_up_to_multiple(m2.max(16), 4);
    let mut points = Vec::with_capacity(m1 * m2);
    for a in 0..m1 {
        for b in 0..m2 {
            let s = TAU * a as f64 / m1 as f64;
            let t = TAU * b as f64 / m2 as f64;
            points.push(vec![C64::from_polar(1.0, s), C64::from_polar(1.0, t)]);
        }
    }
    let resolution = (2.0 * (std::f64::consts::PI / m1 as f64).sin())
        .max(2.0 * (std::f64::consts::PI / m2 as f64).sin());
    let cloud = SampledCompact::affine(points, true, true, resolution).unwrap();
    Fixture {
        name: format!("torus2({m1}x{m2})"),
        cloud,
        oracles: vec![
            OracleEntry {
                point: vec![C64::new(2.0, 0.0), C64::new(0.5, 0.0)],
                quantity: "extremal".into(),
                value: 2.0_f64.ln(),
                provenance: "V = max(log⁺|z₁|, log⁺|z₂|) for the unit 2-torus".into(),
            },
            OracleEntry {
                point: vec![C64::new(0.5, 0.0), C64::new(0.5, 0.0)],
                quantity: "extremal".into(),
                value: 0.0,
                provenance: "interior of the bidisc hull".into(),
            },
        ],
    }
}

/// K = {(e^{iθ}, g(e^{iθ}))} ⊂ ℂ² for a user polynomial g.
pub fn graph_curve(samples: usize, g: &CPoly) -> Fixture {
    assert!(samples >= 16, "sample count below 16");
    let points: Vec<Vec<C64>> = (0..samples)
        .map(|j| {
            let z = C64::from_polar(1.0, TAU * j as f64 / samples as f64);
            vec![z, g.eval(z)]
        })
        .collect();
    let mut resolution = 0.0_f64;
    for j in 0..samples {
        let next = (j + 1) % samples;
        resolution = resolution.max(crate::projgeom::euclid_distance(
            &points[j],
            &points[next],
        ));
    }
    let cloud = SampledCompact::affine(points, true, false, resolution).unwrap();
    Fixture {
        name: format!("graph-curve({samples}, deg {})", g.degree()),
        cloud,
        oracles: Vec::new(),
    }
}

/// Two disjoint circular tori on the unit sphere of ℂ² at latitudes
/// π/4 ± sep/2: T(φ) = {(cos φ · e^{is}, sin φ · e^{it})}. Their union is
/// circular but disconnected, and bounds the complex annulus
/// {(z, c/z) : sin φ₂ ≤ |z| ≤ cos φ₁} with |c| = cos φ₁ sin φ₁, so interior
/// points of the annulus are in the polynomial hull even though connected
/// boundary-descent search is expected to fail there.
pub fn two_tori(m1: usize, m2: usize, sep: f64) -> Fixture {
    assert!(sep > 0.0 && sep < std::f64::consts::FRAC_PI_2, "sep out of range");
    let m1 = round_up_to_multiple(m1.max(16), 4);
    let m2 = round_up_to_multiple(m2.max(16), 4);
    let phi1 = std::f64::consts::FRAC_PI_4 - sep / 2.0;
    let phi2 = std::f64::consts::FRAC_PI_4 + sep / 2.0;
    let mut points = Vec::with_capacity(2 * m1 * m2);
    let mut resolution = 0.0_f64;
    for phi in [phi1, phi2] {
        let (a, b) = (phi.cos(), phi.sin());
        for i in 0..m1 {
            for j in 0..m2 {
                let s = TAU * i as f64 / m1 as f64;
                let t = TAU * j as f64 / m2 as f64;
                points.push(vec![
                    C64::from_polar(a, s),
                    C64::from_polar(b, t),
                ]);
            }
        }
        resolution = resolution
            .max(2.0 * a * (std::f64::consts::PI / m1 as f64).sin())
            .max(2.0 * b * (std::f64::consts::PI / m2 as f64).sin());
    }
    let cloud = SampledCompact::affine(points, false, true, resolution).unwrap();
    let c_mod = phi1.cos() * phi1.sin();
    let r_mid = (phi1.cos() * phi2.sin().max(1e-12)).sqrt();
    Fixture {
        name: format!("two-tori({m1}x{m2}, sep {sep})"),
        cloud,
        oracles: vec![OracleEntry {
            point: vec![C64::new(r_mid, 0.0), C64::new(c_mod / r_mid, 0.0)],
            quantity: "annulus_interior_point".into(),
            value: 0.0,
            provenance: "lies on the complex annulus z₂ = c/z₁ bounded by the two tori; in the \
                         polynomial hull, but boundary descent is expected to fail because K is \
                         disconnected"
                .into(),
        }],
    }
}

/// Filled annulus {r e^{iθ} : r_in ≤ r ≤ r_out} ⊂ ℂ sampled on an nr×nt
/// polar grid; the standard neighborhood fixture for envelope searches.
pub fn annulus(r_in: f64, r_out: f64, nr: usize, nt: usize) -> Fixture {
    assert!(r_in > 0.0 && r_out > r_in, "bad radii");
    assert!(nr >= 2 && nt >= 16, "grid too coarse");
    let nt = round_up_to_multiple(nt, 4);
    let mut points = Vec::with_capacity(nr * nt);
    for i in 0..nr {
        let r = r_in + (r_out - r_in) * i as f64 / (nr - 1) as f64;
        for j in 0..nt {
            points.push(vec![C64::from_polar(r, TAU * j as f64 / nt as f64)]);
        }
    }
    let radial_step = (r_out - r_in) / (nr - 1) as f64;
    let angular_step = 2.0 * r_out * (std::f64::consts::PI / nt as f64).sin();
    let cloud =
        SampledCompact::affine(points, true, true, radial_step.max(angular_step)).unwrap();
    Fixture {
        name: format!("annulus({r_in}..{r_out}, {nr}x{nt})"),
        cloud,
        oracles: vec![OracleEntry {
            point: vec![C64::new(0.0, 0.0)],
            quantity: "extremal".into(),
            value: 0.0,
            provenance: "polynomial hull of the annulus is the disc of radius r_out".into(),
        }],
    }
}

fn round_up_to_multiple(n: usize, k: usize) -> usize {
    n.div_ceil(k) * k
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn circle_lift_moduli() {
        let fx = circle(256);
        assert_eq!(fx.cloud.len(), 256);
        let lift = crate::projgeom::build_sphere_lift(&fx.cloud, 8).unwrap();
        let inv_sqrt2 = 1.0 / 2.0_f64.sqrt();
        for p in lift.points() {
            assert_relative_eq!(p[0].norm(), inv_sqrt2, epsilon = 1e-12);
            assert_relative_eq!(p[1].norm(), inv_sqrt2, epsilon = 1e-12);
        }
    }

    #[test]
    fn torus2_flags_and_size() {
        let fx = torus2(64, 64);
        assert_eq!(fx.cloud.len(), 64 * 64);
        assert!(fx.cloud.circular);
        assert!(fx.cloud.connected);
        for p in fx.cloud.points() {
            assert_relative_eq!(p[0].norm(), 1.0, epsilon = 1e-12);
            assert_relative_eq!(p[1].norm(), 1.0, epsilon = 1e-12);
        }
        fx.cloud.validate().unwrap();
    }

    #[test]
    fn two_tori_flags() {
        let fx = two_tori(16, 16, 0.5);
        assert!(fx.cloud.circular);
        assert!(!fx.cloud.connected);
        fx.cloud.validate().unwrap();
        // both tori sit on the unit sphere of ℂ²
        for p in fx.cloud.points() {
            let norm = (p[0].norm_sqr() + p[1].norm_sqr()).sqrt();
            assert_relative_eq!(norm, 1.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn annulus_is_circular() {
        let fx = annulus(1.5, 2.5, 9, 64);
        fx.cloud.validate().unwrap();
        for p in fx.cloud.points() {
            let r = p[0].norm();
            assert!(r > 1.5 - 1e-12 && r < 2.5 + 1e-12);
        }
    }

    #[test]
    fn generators_are_deterministic() {
        let a = torus3(16, 16);
        let b = torus3(16, 16);
        assert_eq!(a.cloud.points(), b.cloud.points());
    }
}
