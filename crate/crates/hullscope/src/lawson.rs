//! Lawson iteratively reweighted least squares for the constrained complex
//! Chebyshev problem
//!
//!     minimize  max_i |φ(k_i)ᵀ c|   subject to   φ(x)ᵀ c = 1.
//!
//! The sampled Vandermonde matrix is orthonormalized by QR before the weight
//! iteration (raw monomials are catastrophically ill-conditioned beyond
//! d ≈ 15), the equality constraint is eliminated by a Householder change of
//! variables, and each iteration solves a weighted least-squares problem by
//! Cholesky on the Gram matrix. Rank-deficient sample sets are floored on
//! the R diagonal and flagged.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64 as C64;

#[derive(Debug, Clone, Copy, Default)]
pub struct SolveStats {
    pub rank_deficient: bool,
    pub converged: bool,
    pub iterations: usize,
    pub max_residual: f64,
}

#[derive(Debug, Clone)]
pub struct MinimaxSolution {
    /// Coefficients in the original (monomial) basis.
    pub coeffs: Vec<C64>,
    pub stats: SolveStats,
}

/// S^H S through real f64 GEMMs; nalgebra's complex product path is generic
/// and far slower.
fn gram(s: &DMatrix<C64>) -> DMatrix<C64> {
    let (m, n) = s.shape();
    let mut sr = DMatrix::<f64>::zeros(m, n);
    let mut si = DMatrix::<f64>::zeros(m, n);
    for j in 0..n {
        for i in 0..m {
            let v = s[(i, j)];
            sr[(i, j)] = v.re;
            si[(i, j)] = v.im;
        }
    }
    let rr = sr.tr_mul(&sr);
    let ii = si.tr_mul(&si);
    let ri = sr.tr_mul(&si);
    // (Sr + iSi)ᴴ(Sr + iSi) = SrᵀSr + SiᵀSi + i(SrᵀSi − SiᵀSr)
    DMatrix::from_fn(n, n, |i, j| {
        C64::new(rr[(i, j)] + ii[(i, j)], ri[(i, j)] - ri[(j, i)])
    })
}

fn adjoint_mul_vec(s: &DMatrix<C64>, v: &DVector<C64>) -> DVector<C64> {
    let (m, n) = s.shape();
    DVector::from_fn(n, |j, _| {
        let mut acc = C64::new(0.0, 0.0);
        for i in 0..m {
            acc += s[(i, j)].conj() * v[i];
        }
        acc
    })
}

pub fn constrained_minimax(
    vandermonde: &DMatrix<C64>,
    at_query: &[C64],
    max_iters: usize,
    tol: f64,
    rank_tol: f64,
) -> MinimaxSolution {
    let m_real = vandermonde.nrows();
    let n = vandermonde.ncols();
    assert_eq!(at_query.len(), n);
    let mut stats = SolveStats::default();

    // Pad with zero rows so R is square even when samples are scarce; the
    // phantom rows never carry weight or residual mass.
    let padded = if m_real < n {
        stats.rank_deficient = true;
        let mut p = DMatrix::<C64>::zeros(n, n);
        p.view_mut((0, 0), (m_real, n)).copy_from(vandermonde);
        p
    } else {
        vandermonde.clone()
    };
    let m = padded.nrows();

    let qr = padded.clone().qr();
    let mut r = qr.r();
    let max_diag = (0..n).map(|j| r[(j, j)].norm()).fold(0.0, f64::max);
    if max_diag == 0.0 {
        stats.rank_deficient = true;
        r = DMatrix::identity(n, n);
    } else {
        let floor = rank_tol * max_diag;
        for j in 0..n {
            if r[(j, j)].norm() < floor {
                r[(j, j)] = C64::new(floor, 0.0);
                stats.rank_deficient = true;
            }
        }
    }

    // Orthonormalized sample rows Q̃ = V R̃⁻¹ and constraint vector
    // ψ = R̃⁻ᵀ φ(x); transposes are plain, the pairing is bilinear.
    let r_t = r.transpose();
    let q_tilde = r_t
        .solve_lower_triangular(&padded.transpose())
        .expect("floored R is invertible")
        .transpose();
    let psi = r_t
        .solve_lower_triangular(&DVector::from_column_slice(at_query))
        .expect("floored R is invertible");

    // Householder H (Hermitian, unitary) with H·conj(ψ) = β e₀; writing
    // c̃ = Hη turns the constraint ψᵀc̃ = 1 into η₀ = 1/conj(β).
    let v: DVector<C64> = psi.map(|c| c.conj());
    let normv = v.norm();
    if normv <= 1e-300 {
        // constraint functional vanished entirely; surface the degeneracy
        stats.rank_deficient = true;
        let mut coeffs = vec![C64::new(0.0, 0.0); n];
        coeffs[0] = C64::new(1.0, 0.0);
        return MinimaxSolution { coeffs, stats };
    }
    let sign = if v[0].norm() > 0.0 {
        v[0] / v[0].norm()
    } else {
        C64::new(1.0, 0.0)
    };
    let mut beta = -sign * C64::new(normv, 0.0);
    let mut u = v.clone();
    u[0] -= beta;
    let uu: f64 = u.iter().map(|c| c.norm_sqr()).sum();
    let identity_h = uu <= 1e-300;
    if identity_h {
        beta = v[0];
    }

    let apply_h_vec = |x: &DVector<C64>| -> DVector<C64> {
        if identity_h {
            return x.clone();
        }
        let tau = 2.0 / uu;
        let dot: C64 = u.iter().zip(x.iter()).map(|(ui, xi)| ui.conj() * xi).sum();
        x - &u * (dot * tau)
    };
    // Ã = Q̃ H as a rank-one update
    let a_tilde = if identity_h {
        q_tilde
    } else {
        let tau = 2.0 / uu;
        let qu = &q_tilde * &u;
        let mut a = q_tilde;
        for j in 0..n {
            let uj = u[j].conj() * tau;
            for i in 0..m {
                let delta = qu[i] * uj;
                a[(i, j)] -= delta;
            }
        }
        a
    };

    let eta0 = C64::new(1.0, 0.0) / beta.conj();
    let b: DVector<C64> = a_tilde.column(0) * eta0;

    let residual_max = |res: &DVector<C64>| -> f64 {
        (0..m_real).map(|i| res[i].norm()).fold(0.0, f64::max)
    };

    let finish = |y: Option<&DVector<C64>>, stats: SolveStats| -> MinimaxSolution {
        let mut eta = DVector::<C64>::zeros(n);
        eta[0] = eta0;
        if let Some(y) = y {
            for j in 1..n {
                eta[j] = y[j - 1];
            }
        }
        let c_tilde = apply_h_vec(&eta);
        let coeffs = r
            .solve_upper_triangular(&c_tilde)
            .expect("floored R is invertible");
        MinimaxSolution {
            coeffs: coeffs.iter().copied().collect(),
            stats,
        }
    };

    if n == 1 {
        stats.converged = true;
        stats.max_residual = residual_max(&b);
        return finish(None, stats);
    }

    let a1 = a_tilde.columns(1, n - 1).into_owned();
    let mut weights = vec![1.0 / m_real as f64; m];
    for w in weights.iter_mut().skip(m_real) {
        *w = 0.0;
    }

    let mut best: Option<(f64, DVector<C64>)> = None;
    let mut prev_max = f64::INFINITY;
    for it in 1..=max_iters {
        stats.iterations = it;
        let mut s = a1.clone();
        let mut sb = b.clone();
        for i in 0..m {
            let sw = weights[i].sqrt();
            for j in 0..n - 1 {
                s[(i, j)] *= sw;
            }
            sb[i] *= sw;
        }
        let mut g = gram(&s);
        let rhs = -adjoint_mul_vec(&s, &sb);
        let y = match g.clone().cholesky() {
            Some(ch) => ch.solve(&rhs),
            None => {
                let jitter = 1e-14 * g.diagonal().map(|c| c.re).sum().max(1e-300);
                for j in 0..n - 1 {
                    g[(j, j)] += C64::new(jitter, 0.0);
                }
                match g.cholesky() {
                    Some(ch) => ch.solve(&rhs),
                    None => break,
                }
            }
        };
        let res = &b + &a1 * &y;
        let rmax = residual_max(&res);
        if best.as_ref().is_none_or(|(bm, _)| rmax < *bm) {
            best = Some((rmax, y));
        }
        if (rmax - prev_max).abs() <= tol * rmax.max(1e-30) {
            stats.converged = true;
            break;
        }
        prev_max = rmax;

        // Lawson's multiplicative weight update
        let mut total = 0.0;
        for i in 0..m_real {
            weights[i] *= res[i].norm().max(1e-300);
            total += weights[i];
        }
        if total <= 0.0 || !total.is_finite() {
            break;
        }
        for w in weights.iter_mut().take(m_real) {
            *w /= total;
        }
    }

    match best {
        Some((rmax, y)) => {
            stats.max_residual = rmax;
            finish(Some(&y), stats)
        }
        None => {
            stats.max_residual = residual_max(&b);
            finish(None, stats)
        }
    }
}
