use nalgebra::{Complex, DMatrix, DVector};
type C64 = Complex<f64>;

#[test]
fn nalgebra_complex_support() {
    let n = 4;
    let roots = [
        C64::new(0.5, 0.0),
        C64::new(0.0, 0.2),
        C64::new(-0.3, 0.0),
        C64::new(0.1, 0.1),
    ];
    let mut coeffs = vec![C64::new(1.0, 0.0)];
    for r in roots {
        let mut next = vec![C64::new(0.0, 0.0); coeffs.len() + 1];
        for (i, c) in coeffs.iter().enumerate() {
            next[i] += c;
            next[i + 1] -= r * c;
        }
        coeffs = next;
    }
    coeffs.reverse(); // now c[i] multiplies z^i, c[n] = 1
    let mut comp = DMatrix::<C64>::zeros(n, n);
    for i in 1..n {
        comp[(i, i - 1)] = C64::new(1.0, 0.0);
    }
    for i in 0..n {
        comp[(i, n - 1)] = -coeffs[i];
    }
    let eig = comp.clone().schur().unpack().1.diagonal();
    println!("eigen: {:?}", eig.iter().collect::<Vec<_>>());
    for r in roots {
        let best = eig.iter().map(|e| (e - r).norm()).fold(f64::MAX, f64::min);
        assert!(best < 1e-10, "root {r} missing, best {best:e}");
    }

    let m = DMatrix::<C64>::from_fn(6, 3, |i, j| C64::new((i * j + 1) as f64, i as f64 - j as f64));
    let qr = m.clone().qr();
    let (q, r) = (qr.q(), qr.r());
    assert!((&q * &r - &m).norm() < 1e-12);
    assert!((q.adjoint() * &q - DMatrix::<C64>::identity(3, 3)).norm() < 1e-12);

    let a = DMatrix::<C64>::from_fn(3, 3, |i, j| C64::new((i + j) as f64 * 0.1, (i as f64 - j as f64) * 0.2));
    let h = &a * a.adjoint() + DMatrix::<C64>::identity(3, 3);
    let rhs = DVector::<C64>::from_element(3, C64::new(1.0, 0.5));
    let x = h.clone().cholesky().expect("pd").solve(&rhs);
    assert!((&h * &x - &rhs).norm() < 1e-12);

    let rt = r.transpose();
    let b = DVector::<C64>::from_element(3, C64::new(1.0, 0.0));
    let y = rt.solve_lower_triangular(&b).expect("solve");
    assert!((&rt * &y - &b).norm() < 1e-12);
}

#[test]
#[ignore]
fn bench_torus_extremal() {
    use hullscope::fixtures;
    use hullscope::polyspace::{affine_extremal, SolverConfig};
    use num_complex::Complex64 as C64;
    for m in [24usize, 32, 48] {
        let fx = fixtures::torus2(m, m);
        let config = SolverConfig::default();
        let z = [C64::new(2.0, 0.0), C64::new(0.5, 0.0)];
        let t0 = std::time::Instant::now();
        let out = affine_extremal(&fx.cloud, &z, 20, &config).unwrap();
        let dt = t0.elapsed().as_secs_f64();
        println!(
            "m={m}: V_20(2, 1/2) = {:.8} (want {:.8}, err {:+.2e}), {dt:.1}s, flags {:?}",
            out.last_value(),
            2.0_f64.ln(),
            out.last_value() - 2.0_f64.ln(),
            out.flags.last().unwrap()
        );
    }
}
