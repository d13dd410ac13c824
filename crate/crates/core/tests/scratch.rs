use renyi_core::divergence::{q_sandwiched, q_sandwiched_reordered, Alpha};
use renyi_core::linalg::*;

#[test]
fn repro() {
    let seed = 4558957545417691853u64;
    let (d1, d2) = (3usize, 2usize);
    let alpha = Alpha::new(0.5).unwrap();
    let mut rng = seeded_rng(seed);
    let x1 = random_density_with(d1, d1, &mut rng).unwrap();
    let y1 = random_density_with(d1, d1, &mut rng).unwrap();
    let x2 = random_density_with(d2, d2, &mut rng).unwrap();
    let y2 = random_density_with(d2, d2, &mut rng).unwrap();

    let q1 = q_sandwiched(x1.matrix(), y1.matrix(), alpha).unwrap();
    let q2 = q_sandwiched(x2.matrix(), y2.matrix(), alpha).unwrap();
    let q1r = q_sandwiched_reordered(x1.matrix(), y1.matrix(), alpha).unwrap();
    let q2r = q_sandwiched_reordered(x2.matrix(), y2.matrix(), alpha).unwrap();
    let xx = kron(x1.matrix(), x2.matrix());
    let yy = kron(y1.matrix(), y2.matrix());
    let q12 = q_sandwiched(&xx, &yy, alpha).unwrap();
    let q12r = q_sandwiched_reordered(&xx, &yy, alpha).unwrap();

    eprintln!("q1  = {q1}   q1r = {q1r}");
    eprintln!("q2  = {q2}   q2r = {q2r}");
    eprintln!("q12 = {q12}  q12r = {q12r}");
    eprintln!("q1*q2 = {}", q1 * q2);
    for (name, m) in [
        ("x1", x1.matrix()),
        ("y1", y1.matrix()),
        ("x2", x2.matrix()),
        ("y2", y2.matrix()),
    ] {
        let flat: Vec<[f64; 2]> = m.iter().map(|c| [c.re, c.im]).collect();
        eprintln!("MAT {name} {} {}", m.nrows(), serde_json::to_string(&flat).unwrap());
    }
}

#[test]
fn eigs6() {
    let seed = 4558957545417691853u64;
    let mut rng = seeded_rng(seed);
    let _x1 = random_density_with(3, 3, &mut rng).unwrap();
    let y1 = random_density_with(3, 3, &mut rng).unwrap();
    let _x2 = random_density_with(2, 2, &mut rng).unwrap();
    let y2 = random_density_with(2, 2, &mut rng).unwrap();
    let yy = kron(y1.matrix(), y2.matrix());
    let mut eigs = herm_eigenvalues(&yy);
    eigs.sort_by(|a, b| a.partial_cmp(b).unwrap());
    eprintln!("RUST yy eigs: {eigs:?}");
    let spec = herm_eig_matrix(&yy);
    // Reconstruction error: V L V^dagger vs yy.
    let d = yy.nrows();
    let mut rec = CMatrix::zeros(d, d);
    for k in 0..d {
        let v = spec.eigenvectors.column(k);
        let l = spec.eigenvalues[k];
        rec += CMatrix::from_fn(d, d, |i, j| v[i] * v[j].conj() * l);
    }
    let err = (&rec - &yy).iter().map(|c| c.norm()).fold(0.0f64, f64::max);
    eprintln!("RUST reconstruction max err: {err}");
    // Orthonormality of eigenvectors.
    let g = spec.eigenvectors.adjoint() * &spec.eigenvectors;
    let mut worst = 0.0f64;
    for i in 0..d {
        for j in 0..d {
            let target = if i == j { 1.0 } else { 0.0 };
            worst = worst.max((g[(i, j)].re - target).abs().max(g[(i, j)].im.abs()));
        }
    }
    eprintln!("RUST orthonormality err: {worst}");
}

#[test]
fn nalgebra_raw() {
    let seed = 4558957545417691853u64;
    let mut rng = seeded_rng(seed);
    let _x1 = random_density_with(3, 3, &mut rng).unwrap();
    let y1 = random_density_with(3, 3, &mut rng).unwrap();
    let _x2 = random_density_with(2, 2, &mut rng).unwrap();
    let y2 = random_density_with(2, 2, &mut rng).unwrap();
    let yy = kron(y1.matrix(), y2.matrix());
    let hm = hermitize(&yy);
    let se = hm.clone().symmetric_eigen();
    for k in 0..6 {
        let v = se.eigenvectors.column(k);
        let residual = (&hm * v - v * num_complex::Complex64::new(se.eigenvalues[k], 0.0))
            .iter()
            .map(|c| c.norm())
            .fold(0.0f64, f64::max);
        eprintln!("RAW k={k} lambda={:.6e} residual={:.3e}", se.eigenvalues[k], residual);
    }
}

#[test]
fn failure_rate() {
    let mut rng = seeded_rng(99);
    let mut fails = 0usize;
    let mut total = 0usize;
    let mut worst = 0.0f64;
    for d in 2..=9usize {
        for _ in 0..300 {
            let h = random_hermitian(d, &mut rng);
            let hm = hermitize(&h);
            let se = hm.clone().symmetric_eigen();
            let mut bad = 0.0f64;
            for k in 0..d {
                let v = se.eigenvectors.column(k);
                let r = (&hm * v - v * num_complex::Complex64::new(se.eigenvalues[k], 0.0))
                    .iter()
                    .map(|c| c.norm())
                    .fold(0.0f64, f64::max);
                bad = bad.max(r);
            }
            total += 1;
            worst = worst.max(bad);
            if bad > 1e-8 {
                fails += 1;
            }
        }
    }
    eprintln!("FAILRATE random hermitian: {fails}/{total} worst={worst:.3e}");

    // Kronecker products of densities (the shape that broke).
    let mut fails = 0usize;
    let mut total = 0usize;
    let mut worst = 0.0f64;
    for (d1, d2) in [(2usize, 2usize), (2, 3), (3, 2), (3, 3)] {
        for _ in 0..300 {
            let a = random_density_with(d1, d1, &mut rng).unwrap();
            let b = random_density_with(d2, d2, &mut rng).unwrap();
            let m = kron(a.matrix(), b.matrix());
            let hm = hermitize(&m);
            let se = hm.clone().symmetric_eigen();
            let d = d1 * d2;
            let mut bad = 0.0f64;
            for k in 0..d {
                let v = se.eigenvectors.column(k);
                let r = (&hm * v - v * num_complex::Complex64::new(se.eigenvalues[k], 0.0))
                    .iter()
                    .map(|c| c.norm())
                    .fold(0.0f64, f64::max);
                bad = bad.max(r);
            }
            total += 1;
            worst = worst.max(bad);
            if bad > 1e-8 {
                fails += 1;
            }
        }
    }
    eprintln!("FAILRATE kron densities: {fails}/{total} worst={worst:.3e}");
}

fn realify(h: &CMatrix) -> nalgebra::DMatrix<f64> {
    let d = h.nrows();
    nalgebra::DMatrix::<f64>::from_fn(2 * d, 2 * d, |i, j| {
        let (bi, ii) = (i / d, i % d);
        let (bj, jj) = (j / d, j % d);
        let z = h[(ii, jj)];
        match (bi, bj) {
            (0, 0) | (1, 1) => z.re,
            (0, 1) => -z.im,
            _ => z.im,
        }
    })
}

#[test]
fn real_path_quality() {
    use num_complex::Complex64;
    let mut rng = seeded_rng(4242);
    let mut worst_total = 0.0f64;
    // Random Hermitian, kron products, and the known-bad matrix.
    let mut cases: Vec<CMatrix> = Vec::new();
    {
        let seed = 4558957545417691853u64;
        let mut r2 = seeded_rng(seed);
        let _x1 = random_density_with(3, 3, &mut r2).unwrap();
        let y1 = random_density_with(3, 3, &mut r2).unwrap();
        let _x2 = random_density_with(2, 2, &mut r2).unwrap();
        let y2 = random_density_with(2, 2, &mut r2).unwrap();
        cases.push(kron(y1.matrix(), y2.matrix()));
    }
    for d in 2..=9usize {
        for _ in 0..200 {
            cases.push(hermitize(&random_hermitian(d, &mut rng)));
        }
    }
    for _ in 0..200 {
        let a = random_density_with(3, 3, &mut rng).unwrap();
        let b = random_density_with(2, 2, &mut rng).unwrap();
        cases.push(kron(a.matrix(), b.matrix()));
    }
    // Degenerate stress: projectors and I (x) rho shapes.
    for _ in 0..200 {
        let a = random_density_with(4, 2, &mut rng).unwrap();
        cases.push(kron(&identity(2), a.matrix()));
    }
    for m in &cases {
        let d = m.nrows();
        let re = realify(m);
        let se = re.clone().symmetric_eigen();
        // Extract complex eigenvectors with Gram-Schmidt over descending order.
        let mut order: Vec<usize> = (0..2 * d).collect();
        order.sort_by(|&a, &b| se.eigenvalues[b].partial_cmp(&se.eigenvalues[a]).unwrap());
        let mut accepted: Vec<(f64, nalgebra::DVector<Complex64>)> = Vec::new();
        for &k in &order {
            if accepted.len() == d {
                break;
            }
            let col = se.eigenvectors.column(k);
            let mut v = nalgebra::DVector::<Complex64>::from_fn(d, |i, _| {
                Complex64::new(col[i], col[d + i])
            });
            for (_, u) in &accepted {
                let inner: Complex64 = u.iter().zip(v.iter()).map(|(a, b)| a.conj() * b).sum();
                v -= u * inner;
            }
            let norm = v.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
            if norm > 0.5 {
                v /= Complex64::new(norm, 0.0);
                accepted.push((se.eigenvalues[k], v));
            }
        }
        assert_eq!(accepted.len(), d, "extracted full basis");
        let mut worst = 0.0f64;
        for (l, v) in &accepted {
            let r = (m * v - v * Complex64::new(*l, 0.0))
                .iter()
                .map(|c| c.norm())
                .fold(0.0f64, f64::max);
            worst = worst.max(r);
        }
        worst_total = worst_total.max(worst);
    }
    eprintln!("REALPATH cases={} worst residual={:.3e}", cases.len(), worst_total);
}
