//! Univariate polynomials over ℂ with the root machinery used by disc
//! operations: companion-matrix eigenvalues with a Newton polish, root
//! clustering into multiplicities, and tolerance-based gcd for common-zero
//! detection.

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

pub type C64 = Complex64;

const ZERO: C64 = C64::new(0.0, 0.0);
const ONE: C64 = C64::new(1.0, 0.0);

/// Polynomial in one complex variable, coefficients stored low degree first.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CPoly {
    coeffs: Vec<C64>,
}

impl CPoly {
    /// Builds a polynomial from coefficients `c[0] + c[1] ζ + …`, trimming
    /// exactly-zero leading terms.
    pub fn new(mut coeffs: Vec<C64>) -> Self {
        while coeffs.len() > 1 && coeffs.last() == Some(&ZERO) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(ZERO);
        }
        CPoly { coeffs }
    }

    pub fn zero() -> Self {
        CPoly { coeffs: vec![ZERO] }
    }

    pub fn one() -> Self {
        CPoly { coeffs: vec![ONE] }
    }

    pub fn constant(c: C64) -> Self {
        CPoly { coeffs: vec![c] }
    }

    /// Monic polynomial Π (ζ − r) over the given roots.
    pub fn from_roots(roots: &[C64]) -> Self {
        let mut coeffs = vec![ONE];
        for &r in roots {
            let mut next = vec![ZERO; coeffs.len() + 1];
            for (i, &c) in coeffs.iter().enumerate() {
                next[i + 1] += c;
                next[i] -= r * c;
            }
            coeffs = next;
        }
        CPoly::new(coeffs)
    }

    pub fn coeffs(&self) -> &[C64] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| *c == ZERO)
    }

    /// Largest coefficient modulus.
    pub fn inf_norm(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// True when every coefficient is below `tol` in modulus.
    pub fn is_negligible(&self, tol: f64) -> bool {
        self.inf_norm() <= tol
    }

    pub fn eval(&self, z: C64) -> C64 {
        let mut acc = ZERO;
        for &c in self.coeffs.iter().rev() {
            acc = acc * z + c;
        }
        acc
    }

    pub fn derivative(&self) -> CPoly {
        if self.coeffs.len() == 1 {
            return CPoly::zero();
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, &c)| c * C64::new(k as f64, 0.0))
            .collect();
        CPoly::new(coeffs)
    }

    pub fn scale(&self, s: C64) -> CPoly {
        CPoly::new(self.coeffs.iter().map(|&c| c * s).collect())
    }

    pub fn add(&self, other: &CPoly) -> CPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut coeffs = vec![ZERO; n];
        for (i, &c) in self.coeffs.iter().enumerate() {
            coeffs[i] += c;
        }
        for (i, &c) in other.coeffs.iter().enumerate() {
            coeffs[i] += c;
        }
        CPoly::new(coeffs)
    }

    pub fn sub(&self, other: &CPoly) -> CPoly {
        self.add(&other.scale(-ONE))
    }

    pub fn mul(&self, other: &CPoly) -> CPoly {
        if self.is_zero() || other.is_zero() {
            return CPoly::zero();
        }
        let mut coeffs = vec![ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        CPoly::new(coeffs)
    }

    /// Synthetic division by (ζ − a): returns (quotient, remainder). The
    /// remainder equals `self.eval(a)`.
    pub fn deflate(&self, a: C64) -> (CPoly, C64) {
        let n = self.coeffs.len();
        if n == 1 {
            return (CPoly::zero(), self.coeffs[0]);
        }
        let mut q = vec![ZERO; n - 1];
        let mut acc = self.coeffs[n - 1];
        for k in (0..n - 1).rev() {
            q[k] = acc;
            acc = self.coeffs[k] + a * acc;
        }
        (CPoly::new(q), acc)
    }

    /// Long division: self = q·div + r with deg r < deg div.
    pub fn div_rem(&self, div: &CPoly) -> (CPoly, CPoly) {
        assert!(!div.is_zero(), "division by zero polynomial");
        let dd = div.degree();
        if self.degree() < dd || self.is_zero() {
            return (CPoly::zero(), self.clone());
        }
        let lead = div.coeffs[dd];
        let mut rem = self.coeffs.clone();
        let mut quo = vec![ZERO; self.degree() - dd + 1];
        for k in (dd..rem.len()).rev() {
            let factor = rem[k] / lead;
            quo[k - dd] = factor;
            for j in 0..=dd {
                rem[k - dd + j] -= factor * div.coeffs[j];
            }
            rem[k] = ZERO;
        }
        rem.truncate(dd.max(1));
        (CPoly::new(quo), CPoly::new(rem))
    }

    /// Degree after discarding leading coefficients below `tol` relative to
    /// the largest coefficient.
    pub fn effective_degree(&self, tol: f64) -> usize {
        let scale = self.inf_norm();
        if scale == 0.0 {
            return 0;
        }
        let mut d = self.coeffs.len() - 1;
        while d > 0 && self.coeffs[d].norm() <= tol * scale {
            d -= 1;
        }
        d
    }

    /// All roots via companion-matrix eigenvalues, each followed by a single
    /// Newton polish step. Leading coefficients below 1e−14 (relative) are
    /// treated as zero.
    pub fn roots(&self) -> Vec<C64> {
        let d = self.effective_degree(1e-14);
        if d == 0 {
            return Vec::new();
        }
        let lead = self.coeffs[d];
        let mut comp = DMatrix::<C64>::zeros(d, d);
        for i in 1..d {
            comp[(i, i - 1)] = ONE;
        }
        for i in 0..d {
            comp[(i, d - 1)] = -self.coeffs[i] / lead;
        }
        let tri = comp.schur().unpack().1;
        let deriv = self.derivative();
        (0..d)
            .map(|i| {
                let z = tri[(i, i)];
                let dp = deriv.eval(z);
                if dp.norm() > 1e-300 {
                    let step = self.eval(z) / dp;
                    if step.norm() < 0.5 * (1.0 + z.norm()) {
                        return z - step;
                    }
                }
                z
            })
            .collect()
    }

    /// Roots grouped into (location, multiplicity) clusters. Roots closer
    /// than `tol` merge; a cluster of size m is refined by Newton on the
    /// (m−1)-th derivative so multiple roots come back at full accuracy.
    pub fn clustered_roots(&self, tol: f64) -> Vec<(C64, u32)> {
        let raw = self.roots();
        let mut clusters: Vec<(C64, u32)> = Vec::new();
        for z in raw {
            match clusters.iter_mut().find(|(c, _)| (*c - z).norm() <= tol) {
                Some((c, m)) => {
                    // running mean keeps the centroid stable
                    let mf = *m as f64;
                    *c = (*c * C64::new(mf, 0.0) + z) / C64::new(mf + 1.0, 0.0);
                    *m += 1;
                }
                None => clusters.push((z, 1)),
            }
        }
        for (c, m) in clusters.iter_mut() {
            if *m >= 2 {
                let mut p = self.clone();
                for _ in 0..(*m - 1) {
                    p = p.derivative();
                }
                let dp = p.derivative();
                for _ in 0..3 {
                    let denom = dp.eval(*c);
                    if denom.norm() <= 1e-300 {
                        break;
                    }
                    let step = p.eval(*c) / denom;
                    if step.norm() > tol * 100.0 + 1e-6 {
                        break;
                    }
                    *c -= step;
                }
            }
        }
        clusters
    }

    /// Approximate gcd by the Euclidean remainder sequence. Remainders whose
    /// coefficients drop below `tol` (relative to the input scale) are
    /// treated as zero. The result is monic.
    pub fn gcd(&self, other: &CPoly, tol: f64) -> CPoly {
        let scale = self.inf_norm().max(other.inf_norm()).max(1.0);
        let mut a = self.clone();
        let mut b = other.clone();
        if a.is_negligible(tol * scale) {
            return b.monic();
        }
        loop {
            if b.is_negligible(tol * scale) {
                return a.monic();
            }
            let db = b.effective_degree(tol);
            if db == 0 {
                return CPoly::one();
            }
            let b_trim = CPoly::new(b.coeffs[..=db].to_vec());
            let (_, r) = a.div_rem(&b_trim);
            a = b_trim;
            b = r;
        }
    }

    /// Divides out the leading coefficient.
    pub fn monic(&self) -> CPoly {
        let d = self.effective_degree(1e-14);
        let lead = self.coeffs[d];
        if lead == ZERO {
            return CPoly::zero();
        }
        CPoly::new(self.coeffs[..=d].iter().map(|&c| c / lead).collect())
    }
}

/// Common zeros of a family of polynomials, within gcd tolerance `tol`.
pub fn common_roots(polys: &[CPoly], tol: f64) -> Vec<C64> {
    let mut g: Option<CPoly> = None;
    for p in polys {
        if p.is_zero() {
            continue;
        }
        g = Some(match g {
            None => p.monic(),
            Some(acc) => acc.gcd(p, tol),
        });
        if let Some(acc) = &g {
            if acc.degree() == 0 {
                return Vec::new();
            }
        }
    }
    match g {
        Some(acc) if acc.degree() > 0 => acc.roots(),
        _ => Vec::new(),
    }
}
