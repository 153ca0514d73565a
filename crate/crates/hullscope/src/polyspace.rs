//! Homogeneous polynomial spaces, the Chebyshev-type solver behind the
//! best-constant function, Siciak–Zaharyuta extremal functions on affine
//! charts, and the potential-lifting formula.
//!
//! Every reported value is the re-evaluated ratio of an explicit witness
//! polynomial, so all best-constant and extremal outputs are certified lower
//! bounds of the sampled quantities.

use nalgebra::DMatrix;
use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use crate::error::{HullError, Result};
use crate::lawson;
use crate::projgeom::{CloudMode, ProjectivePoint, SampledCompact};

/// Graded-lexicographic list of all multi-indices α over n+1 variables with
/// |α| = d. Count is binomial(n+d, n).
pub fn monomial_basis(n: usize, d: usize) -> Vec<Vec<u32>> {
    assert!(n >= 1, "ambient dimension must be at least 1");
    let vars = n + 1;
    let mut out = Vec::with_capacity(binomial(n + d, n));
    let mut stack = vec![0u32; vars];
    fill_basis(&mut out, &mut stack, 0, d as u32, vars);
    out
}

fn fill_basis(out: &mut Vec<Vec<u32>>, stack: &mut Vec<u32>, pos: usize, left: u32, vars: usize) {
    if pos + 1 == vars {
        stack[pos] = left;
        out.push(stack.clone());
        return;
    }
    for e in (0..=left).rev() {
        stack[pos] = e;
        fill_basis(out, stack, pos + 1, left - e, vars);
    }
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc as usize
}

/// A homogeneous polynomial of degree d in n+1 complex variables with dense
/// coefficients aligned to `monomial_basis(n, d)`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct HomPoly {
    n: usize,
    d: usize,
    coeffs: Vec<C64>,
}

impl HomPoly {
    pub fn new(n: usize, d: usize, coeffs: Vec<C64>) -> Result<Self> {
        let expect = binomial(n + d, n);
        if coeffs.len() != expect {
            return Err(HullError::InvalidInput(format!(
                "expected {expect} coefficients for degree {d} in {} variables, got {}",
                n + 1,
                coeffs.len()
            )));
        }
        Ok(HomPoly { n, d, coeffs })
    }

    /// Builds from an explicit multi-index → coefficient map; indices must
    /// have |α| = d over n+1 entries.
    pub fn from_map(n: usize, d: usize, entries: &[(Vec<u32>, C64)]) -> Result<Self> {
        let basis = monomial_basis(n, d);
        let mut coeffs = vec![C64::new(0.0, 0.0); basis.len()];
        for (alpha, c) in entries {
            if alpha.len() != n + 1 || alpha.iter().sum::<u32>() != d as u32 {
                return Err(HullError::InvalidInput(format!(
                    "multi-index {alpha:?} is not homogeneous of degree {d} in {} variables",
                    n + 1
                )));
            }
            let pos = basis
                .iter()
                .position(|b| b == alpha)
                .expect("validated index is in the basis");
            coeffs[pos] += *c;
        }
        HomPoly::new(n, d, coeffs)
    }

    /// The single monomial z^α.
    pub fn monomial(n: usize, d: usize, alpha: &[u32]) -> Result<Self> {
        HomPoly::from_map(n, d, &[(alpha.to_vec(), C64::new(1.0, 0.0))])
    }

    pub fn ambient_dim(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.d
    }

    pub fn coeffs(&self) -> &[C64] {
        &self.coeffs
    }

    pub fn coeff(&self, alpha: &[u32]) -> Option<C64> {
        monomial_basis(self.n, self.d)
            .iter()
            .position(|b| b == alpha)
            .map(|i| self.coeffs[i])
    }

    /// Evaluation at z ∈ ℂ^{n+1} through per-coordinate power tables.
    pub fn evaluate(&self, z: &[C64]) -> C64 {
        assert_eq!(z.len(), self.n + 1, "evaluation point dimension");
        let pows = power_table(z, self.d);
        let basis = monomial_basis(self.n, self.d);
        let mut acc = C64::new(0.0, 0.0);
        for (alpha, c) in basis.iter().zip(&self.coeffs) {
            if c.norm_sqr() == 0.0 {
                continue;
            }
            let mut term = *c;
            for (i, &e) in alpha.iter().enumerate() {
                term *= pows[i][e as usize];
            }
            acc += term;
        }
        acc
    }

    /// Evaluation of the dehomogenization at w ∈ ℂⁿ, i.e. at z = (1, w).
    pub fn evaluate_affine(&self, w: &[C64]) -> C64 {
        assert_eq!(w.len(), self.n, "affine point dimension");
        let mut z = Vec::with_capacity(self.n + 1);
        z.push(C64::new(1.0, 0.0));
        z.extend_from_slice(w);
        self.evaluate(&z)
    }
}

fn power_table(z: &[C64], d: usize) -> Vec<Vec<C64>> {
    z.iter()
        .map(|&zi| {
            let mut row = Vec::with_capacity(d + 1);
            row.push(C64::new(1.0, 0.0));
            for k in 1..=d {
                let prev = row[k - 1];
                row.push(prev * zi);
            }
            row
        })
        .collect()
}

/// |P(z)|/|z|^d realized on the unit representative: the section sup-norm of
/// the degree-d section attached to P at the point x.
pub fn section_norm(p: &HomPoly, x: &ProjectivePoint) -> Result<f64> {
    if x.ambient_dim() != p.n {
        return Err(HullError::DimensionMismatch {
            expected: p.n,
            got: x.ambient_dim(),
        });
    }
    Ok(p.evaluate(x.rep()).norm())
}

/// Configuration for the Lawson solver and the finiteness classification.
#[derive(Debug, Clone, Copy, Serialize, Deserialize, PartialEq)]
#[serde(default)]
pub struct SolverConfig {
    /// Weight-iteration cap.
    pub max_iters: usize,
    /// Relative-change stopping tolerance on the max residual.
    pub tol: f64,
    /// Finiteness cap on cumulative log C / V traces.
    pub cap: f64,
    /// Relative floor on the R diagonal in the basis orthonormalization.
    pub rank_tol: f64,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            max_iters: 500,
            tol: 1e-8,
            cap: 1e3_f64.ln(),
            rank_tol: 1e-10,
        }
    }
}

#[derive(Debug, Clone, Copy, Default, Serialize, Deserialize, PartialEq, Eq)]
pub struct SolveFlags {
    pub rank_deficient: bool,
    pub non_converged: bool,
}

impl SolveFlags {
    fn from_stats(stats: &lawson::SolveStats) -> Self {
        SolveFlags {
            rank_deficient: stats.rank_deficient,
            non_converged: !stats.converged,
        }
    }

    pub fn any(&self) -> bool {
        self.rank_deficient || self.non_converged
    }
}

/// One degree's certified value with the witness that achieves it.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DegreeValue {
    pub degree: usize,
    pub value: f64,
    /// Absent only for the trivial in-sample shortcut.
    pub witness: Option<HomPoly>,
    pub flags: SolveFlags,
}

/// Per-degree best-constant values C_d(x) with the running maximum and the
/// radius estimate r = 1/C.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BestConstantTrace {
    pub x: ProjectivePoint,
    pub degrees: Vec<usize>,
    pub values: Vec<f64>,
    pub cumulative: Vec<f64>,
    pub radius: f64,
    pub witnesses: Vec<Option<HomPoly>>,
    pub flags: Vec<SolveFlags>,
}

impl BestConstantTrace {
    /// Trace invariants: values ≥ 1 − 1e−9 and nondecreasing cumulative.
    pub fn validate(&self) -> Result<()> {
        for v in &self.values {
            if *v < 1.0 - 1e-9 {
                return Err(HullError::InvalidInput(format!(
                    "best-constant value {v} below 1"
                )));
            }
        }
        for pair in self.cumulative.windows(2) {
            if pair[1] < pair[0] {
                return Err(HullError::InvalidInput(
                    "cumulative trace decreased".into(),
                ));
            }
        }
        Ok(())
    }

    pub fn cumulative_last(&self) -> f64 {
        *self.cumulative.last().expect("nonempty trace")
    }
}

/// Monotone extremal-function trace V_d(z) with finiteness classification.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ExtremalSample {
    pub z: Vec<C64>,
    pub degrees: Vec<usize>,
    /// Certified lower bounds, nondecreasing in d (running maximum of the
    /// per-degree solves; each entry keeps the witness achieving it).
    pub v_values: Vec<f64>,
    pub finite_flag: bool,
    pub cap: f64,
    pub witnesses: Vec<Option<HomPoly>>,
    pub flags: Vec<SolveFlags>,
}

impl ExtremalSample {
    pub fn last_value(&self) -> f64 {
        *self.v_values.last().expect("nonempty trace")
    }
}

/// Degree-d best-constant lower bound at x: the d-th root of the largest
/// achievable ratio |P(x̂)| / max_K |P| over homogeneous P of degree d.
///
/// The Lawson solve minimizes max_K |P| under P(x̂) = 1; the reported number
/// is always the re-evaluated ratio of the achieved witness (or of the
/// fallback witness ⟨z, x̂⟩^d when that one is better), hence a certified
/// lower bound of C_d on the sample. Query points within the sampling
/// resolution of K short-circuit to 1.
pub fn chebyshev_ratio(
    k: &SampledCompact,
    x: &ProjectivePoint,
    d: usize,
    config: &SolverConfig,
) -> Result<DegreeValue> {
    if k.mode() != CloudMode::Projective {
        return Err(HullError::InvalidInput(
            "best-constant solver requires a projective cloud".into(),
        ));
    }
    if d < 1 {
        return Err(HullError::InvalidInput("degree must be ≥ 1".into()));
    }
    let n = k.ambient_dim();
    if x.ambient_dim() != n {
        return Err(HullError::DimensionMismatch {
            expected: n,
            got: x.ambient_dim(),
        });
    }
    if k.nearest_distance(x.rep()) <= k.resolution() {
        return Ok(DegreeValue {
            degree: d,
            value: 1.0,
            witness: None,
            flags: SolveFlags::default(),
        });
    }

    let basis = monomial_basis(n, d);
    let vand = vandermonde(&basis, d, k.points());
    let at_query = eval_basis(&basis, d, x.rep());
    let sol = lawson::constrained_minimax(
        &vand,
        &at_query,
        config.max_iters,
        config.tol,
        config.rank_tol,
    );
    let mut flags = SolveFlags::from_stats(&sol.stats);

    let solver_witness = HomPoly::new(n, d, sol.coeffs)?;
    let fallback = pairing_power_witness(n, d, x.rep());
    let ratio_of = |p: &HomPoly| -> f64 {
        let num = p.evaluate(x.rep()).norm();
        let den = k
            .points()
            .iter()
            .map(|s| p.evaluate(s).norm())
            .fold(0.0, f64::max)
            .max(f64::MIN_POSITIVE);
        num / den
    };
    let solver_ratio = ratio_of(&solver_witness);
    let fallback_ratio = ratio_of(&fallback);
    let (ratio, witness) = if solver_ratio.is_finite() && solver_ratio >= fallback_ratio {
        (solver_ratio, solver_witness)
    } else {
        (fallback_ratio, fallback)
    };
    if !ratio.is_finite() {
        flags.rank_deficient = true;
    }
    Ok(DegreeValue {
        degree: d,
        value: ratio.powf(1.0 / d as f64),
        witness: Some(witness),
        flags,
    })
}

/// The feasible witness ⟨z, x̂⟩^d = (Σ conj(x̂ᵢ) zᵢ)^d: unit section norm at
/// x̂, at most 1 on the sphere, so its ratio is at least 1 on any sample.
fn pairing_power_witness(n: usize, d: usize, x_rep: &[C64]) -> HomPoly {
    let basis = monomial_basis(n, d);
    let coeffs = basis
        .iter()
        .map(|alpha| {
            let mut c = C64::new(multinomial(d as u32, alpha), 0.0);
            for (i, &e) in alpha.iter().enumerate() {
                c *= x_rep[i].conj().powu(e);
            }
            c
        })
        .collect();
    HomPoly::new(n, d, coeffs).expect("basis-aligned coefficients")
}

fn multinomial(d: u32, alpha: &[u32]) -> f64 {
    let mut acc = 1.0_f64;
    let mut left = d as usize;
    for &e in alpha {
        acc *= binomial(left, e as usize) as f64;
        left -= e as usize;
    }
    acc
}

fn vandermonde(basis: &[Vec<u32>], d: usize, points: &[Vec<C64>]) -> DMatrix<C64> {
    let m = points.len();
    let n = basis.len();
    let mut out = DMatrix::<C64>::zeros(m, n);
    for (i, p) in points.iter().enumerate() {
        let pows = power_table(p, d);
        for (j, alpha) in basis.iter().enumerate() {
            let mut term = C64::new(1.0, 0.0);
            for (coord, &e) in alpha.iter().enumerate() {
                term *= pows[coord][e as usize];
            }
            out[(i, j)] = term;
        }
    }
    out
}

fn eval_basis(basis: &[Vec<u32>], d: usize, point: &[C64]) -> Vec<C64> {
    let pows = power_table(point, d);
    basis
        .iter()
        .map(|alpha| {
            let mut term = C64::new(1.0, 0.0);
            for (coord, &e) in alpha.iter().enumerate() {
                term *= pows[coord][e as usize];
            }
            term
        })
        .collect()
}

/// Best-constant trace over d = 1..dmax with cumulative maximum and radius
/// estimate r = 1/C.
pub fn best_constant(
    k: &SampledCompact,
    x: &ProjectivePoint,
    dmax: usize,
    config: &SolverConfig,
) -> Result<BestConstantTrace> {
    if dmax < 1 {
        return Err(HullError::InvalidInput("dmax must be ≥ 1".into()));
    }
    let mut degrees = Vec::with_capacity(dmax);
    let mut values = Vec::with_capacity(dmax);
    let mut cumulative = Vec::with_capacity(dmax);
    let mut witnesses = Vec::with_capacity(dmax);
    let mut flags = Vec::with_capacity(dmax);
    let mut running = 0.0_f64;
    for d in 1..=dmax {
        let dv = chebyshev_ratio(k, x, d, config)?;
        running = running.max(dv.value);
        degrees.push(d);
        values.push(dv.value);
        cumulative.push(running);
        witnesses.push(dv.witness);
        flags.push(dv.flags);
    }
    Ok(BestConstantTrace {
        x: x.clone(),
        degrees,
        values,
        radius: 1.0 / running,
        cumulative,
        witnesses,
        flags,
    })
}

/// Siciak–Zaharyuta trace on an affine cloud:
/// V_d(z) = (1/d)·log sup{|p(z)| : deg p ≤ d, max_K |p| ≤ 1}, computed by
/// the same Lawson solver on the dehomogenized basis. The stored trace is
/// the running maximum (the per-degree families nest), each entry keeping
/// its achieving witness; `finite_flag` is the cap classification at this
/// budget.
pub fn affine_extremal(
    k: &SampledCompact,
    z: &[C64],
    dmax: usize,
    config: &SolverConfig,
) -> Result<ExtremalSample> {
    if k.mode() != CloudMode::Affine {
        return Err(HullError::InvalidInput(
            "extremal solver requires an affine cloud".into(),
        ));
    }
    if dmax < 1 {
        return Err(HullError::InvalidInput("dmax must be ≥ 1".into()));
    }
    let n = k.ambient_dim();
    if z.len() != n {
        return Err(HullError::DimensionMismatch {
            expected: n,
            got: z.len(),
        });
    }

    let mut degrees = Vec::with_capacity(dmax);
    let mut v_values = Vec::with_capacity(dmax);
    let mut witnesses: Vec<Option<HomPoly>> = Vec::with_capacity(dmax);
    let mut flags = Vec::with_capacity(dmax);
    let mut best_so_far = f64::NEG_INFINITY;
    let mut best_witness: Option<HomPoly> = None;

    for d in 1..=dmax {
        let basis = monomial_basis(n, d);
        let vand = affine_vandermonde(&basis, d, k.points());
        let at_query = eval_affine_basis(&basis, d, z);
        let sol = lawson::constrained_minimax(
            &vand,
            &at_query,
            config.max_iters,
            config.tol,
            config.rank_tol,
        );
        let flag = SolveFlags::from_stats(&sol.stats);
        let witness = HomPoly::new(n, d, sol.coeffs)?;
        let ratio_of = |p: &HomPoly| -> f64 {
            let num = p.evaluate_affine(z).norm();
            let den = k
                .points()
                .iter()
                .map(|s| p.evaluate_affine(s).norm())
                .fold(0.0, f64::max)
                .max(f64::MIN_POSITIVE);
            num / den
        };
        // p ≡ 1 (homogenized z₀^d) always achieves ratio ≥ something sane
        let constant = HomPoly::monomial(n, d, &constant_index(n, d))?;
        let solver_ratio = ratio_of(&witness);
        let constant_ratio = ratio_of(&constant);
        let (ratio, wit) = if solver_ratio.is_finite() && solver_ratio >= constant_ratio {
            (solver_ratio, witness)
        } else {
            (constant_ratio, constant)
        };
        let raw = ratio.ln() / d as f64;
        if raw > best_so_far {
            best_so_far = raw;
            best_witness = Some(wit);
        }
        degrees.push(d);
        v_values.push(best_so_far);
        witnesses.push(best_witness.clone());
        flags.push(flag);
    }

    Ok(ExtremalSample {
        z: z.to_vec(),
        degrees,
        finite_flag: *v_values.last().expect("dmax ≥ 1") <= config.cap,
        v_values,
        cap: config.cap,
        witnesses,
        flags,
    })
}

fn constant_index(n: usize, d: usize) -> Vec<u32> {
    let mut alpha = vec![0u32; n + 1];
    alpha[0] = d as u32;
    alpha
}

fn affine_vandermonde(basis: &[Vec<u32>], d: usize, points: &[Vec<C64>]) -> DMatrix<C64> {
    let m = points.len();
    let n = basis.len();
    let mut out = DMatrix::<C64>::zeros(m, n);
    for (i, p) in points.iter().enumerate() {
        let row = eval_affine_basis_with_pows(basis, &power_table(p, d));
        for (j, v) in row.into_iter().enumerate() {
            out[(i, j)] = v;
        }
    }
    out
}

fn eval_affine_basis(basis: &[Vec<u32>], d: usize, point: &[C64]) -> Vec<C64> {
    eval_affine_basis_with_pows(basis, &power_table(point, d))
}

/// Affine evaluation ignores the slack exponent α₀ (z₀ = 1).
fn eval_affine_basis_with_pows(basis: &[Vec<u32>], pows: &[Vec<C64>]) -> Vec<C64> {
    basis
        .iter()
        .map(|alpha| {
            let mut term = C64::new(1.0, 0.0);
            for (coord, &e) in alpha.iter().enumerate().skip(1) {
                term *= pows[coord - 1][e as usize];
            }
            term
        })
        .collect()
}

/// The lift ṽ(z) = log|z₀| + v(z₁/z₀, …, zₙ/z₀) of an affine potential to
/// ℂ^{n+1}; −∞ on the hyperplane z₀ = 0. Circle-invariant on spheres.
pub fn lift_potential<F>(v: F, z: &[C64]) -> f64
where
    F: Fn(&[C64]) -> f64,
{
    assert!(!z.is_empty(), "empty homogeneous vector");
    let z0 = z[0];
    if z0.norm() == 0.0 {
        return f64::NEG_INFINITY;
    }
    let affine: Vec<C64> = z[1..].iter().map(|zi| zi / z0).collect();
    z0.norm().ln() + v(&affine)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::projgeom::project;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn basis_enumeration_examples() {
        assert_eq!(
            monomial_basis(1, 2),
            vec![vec![2, 0], vec![1, 1], vec![0, 2]]
        );
        assert_eq!(
            monomial_basis(2, 1),
            vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]
        );
        assert_eq!(monomial_basis(2, 32).len(), 561);
        assert_eq!(binomial(34, 2), 561);
    }

    #[test]
    fn section_norm_examples() {
        let z0 = HomPoly::monomial(1, 1, &[1, 0]).unwrap();
        let x10 = project(&[c(1.0, 0.0), c(0.0, 0.0)]).unwrap();
        let x11 = project(&[c(1.0, 0.0), c(1.0, 0.0)]).unwrap();
        assert_relative_eq!(section_norm(&z0, &x10).unwrap(), 1.0, epsilon = 1e-14);
        assert_relative_eq!(
            section_norm(&z0, &x11).unwrap(),
            1.0 / 2.0_f64.sqrt(),
            epsilon = 1e-14
        );
        let z0z1 = HomPoly::monomial(1, 2, &[1, 1]).unwrap();
        assert_relative_eq!(section_norm(&z0z1, &x11).unwrap(), 0.5, epsilon = 1e-14);
    }

    #[test]
    fn circle_best_constant_matches_bidisc_oracle() {
        let fx = fixtures::circle(128);
        let x = project(&[c(1.0, 0.0), c(0.0, 0.0)]).unwrap();
        let config = SolverConfig::default();
        let dv = chebyshev_ratio(&fx.cloud, &x, 4, &config).unwrap();
        assert!(!dv.flags.any(), "flags: {:?}", dv.flags);
        assert_relative_eq!(dv.value, 2.0_f64.sqrt(), epsilon = 1e-4);

        let trace = best_constant(&fx.cloud, &x, 6, &config).unwrap();
        trace.validate().unwrap();
        assert_relative_eq!(trace.cumulative_last(), 2.0_f64.sqrt(), epsilon = 1e-4);
        assert_relative_eq!(trace.radius, 1.0 / 2.0_f64.sqrt(), epsilon = 1e-4);
    }

    #[test]
    fn query_in_sample_short_circuits() {
        let fx = fixtures::circle(64);
        let on_k = project(&[c(1.0, 0.0), c(1.0, 0.0)]).unwrap();
        let dv = chebyshev_ratio(&fx.cloud, &on_k, 3, &SolverConfig::default()).unwrap();
        assert_eq!(dv.value, 1.0);
        assert!(dv.witness.is_none());
    }

    #[test]
    fn single_point_cloud_flags_unbounded_ratio() {
        let k = SampledCompact::projective(
            vec![project(&[c(1.0, 0.0), c(0.0, 0.0)]).unwrap()],
            true,
            1e-6,
        )
        .unwrap();
        let x = project(&[c(0.0, 0.0), c(1.0, 0.0)]).unwrap();
        let dv = chebyshev_ratio(&k, &x, 3, &SolverConfig::default()).unwrap();
        assert!(dv.flags.rank_deficient);
        assert!(dv.value > 1e3, "expected conditioning-driven growth, got {}", dv.value);
    }

    #[test]
    fn witness_reproduces_reported_value() {
        let fx = fixtures::circle(64);
        let x = project(&[c(1.0, 0.0), c(0.3, 0.4)]).unwrap();
        let config = SolverConfig::default();
        let trace = best_constant(&fx.cloud, &x, 5, &config).unwrap();
        for (i, d) in trace.degrees.iter().enumerate() {
            let w = trace.witnesses[i].as_ref().expect("solver path");
            let num = section_norm(w, &trace.x).unwrap();
            let den = fx
                .cloud
                .points()
                .iter()
                .map(|s| w.evaluate(s).norm())
                .fold(0.0, f64::max);
            let again = (num / den).powf(1.0 / *d as f64);
            assert_relative_eq!(again, trace.values[i], max_relative = 1e-9);
        }
    }

    #[test]
    fn affine_extremal_circle_oracle() {
        // K = unit circle in ℂ: V(z) = log⁺|z|
        let pts: Vec<Vec<C64>> = (0..128)
            .map(|j| vec![C64::from_polar(1.0, std::f64::consts::TAU * j as f64 / 128.0)])
            .collect();
        let k = SampledCompact::affine(pts, true, true, 0.05).unwrap();
        let config = SolverConfig::default();

        let inside = affine_extremal(&k, &[c(0.0, 0.0)], 6, &config).unwrap();
        assert!(inside.last_value().abs() < 1e-9);
        assert!(inside.finite_flag);

        let outside = affine_extremal(&k, &[c(2.0, 0.0)], 8, &config).unwrap();
        assert_relative_eq!(outside.last_value(), 2.0_f64.ln(), epsilon = 2e-3);
        // monotone trace
        for pair in outside.v_values.windows(2) {
            assert!(pair[1] >= pair[0]);
        }
    }

    #[test]
    fn lift_potential_examples() {
        let s = 1.0 / 2.0_f64.sqrt();
        let v0 = lift_potential(|_| 0.0, &[c(s, 0.0), c(s, 0.0)]);
        assert_relative_eq!(v0, -0.5 * 2.0_f64.ln(), epsilon = 1e-14);

        let z = [
            c(1.0, 0.0) / 5.0_f64.sqrt(),
            c(2.0, 0.0) / 5.0_f64.sqrt(),
        ];
        let vlog = lift_potential(|w| w[0].norm().max(1.0).ln(), &z);
        assert_relative_eq!(
            vlog,
            -0.5 * 5.0_f64.ln() + 2.0_f64.ln(),
            epsilon = 1e-14
        );

        assert_eq!(
            lift_potential(|_| 0.0, &[c(0.0, 0.0), c(1.0, 0.0)]),
            f64::NEG_INFINITY
        );
    }

    #[test]
    fn lift_potential_circle_invariant() {
        let v = |w: &[C64]| w.iter().map(|c| c.norm()).sum::<f64>().ln();
        let z = [c(0.4, 0.3), c(-0.2, 0.9), c(0.1, 0.0)];
        let base = lift_potential(v, &z);
        for k in 1..8 {
            let rot = C64::from_polar(1.0, 0.7 * k as f64);
            let turned: Vec<C64> = z.iter().map(|zi| zi * rot).collect();
            assert_relative_eq!(lift_potential(v, &turned), base, epsilon = 1e-12);
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn homogeneity_under_scaling(
            re in -1.0f64..1.0, im in -1.0f64..1.0,
            lre in -2.0f64..2.0, lim in -2.0f64..2.0,
            seed in 0u64..1000,
        ) {
            use rand::prelude::*;
            use rand_chacha::ChaCha8Rng;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let d = rng.random_range(1..6usize);
            let n = rng.random_range(1..3usize);
            let len = binomial(n + d, n);
            let coeffs: Vec<C64> = (0..len)
                .map(|_| c(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
                .collect();
            let p = HomPoly::new(n, d, coeffs).unwrap();
            let z: Vec<C64> = (0..=n)
                .map(|i| c(re + i as f64 * 0.37, im - i as f64 * 0.21))
                .collect();
            let lambda = c(lre, lim);
            prop_assume!(lambda.norm() > 1e-3);
            let scaled: Vec<C64> = z.iter().map(|zi| zi * lambda).collect();
            let lhs = p.evaluate(&scaled);
            let rhs = lambda.powu(d as u32) * p.evaluate(&z);
            let scale = lhs.norm().max(rhs.norm()).max(1e-12);
            prop_assert!((lhs - rhs).norm() / scale < 1e-10);
        }
    }
}
