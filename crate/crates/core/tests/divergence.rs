//! Known-answer, oracle, and law tests for the divergence evaluators.

use num_complex::Complex64;
use renyi_core::divergence::*;
use renyi_core::linalg::*;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn diag(vals: &[f64]) -> CMatrix {
    let d = vals.len();
    CMatrix::from_fn(d, d, |i, j| {
        if i == j {
            c(vals[i], 0.0)
        } else {
            c(0.0, 0.0)
        }
    })
}

fn state(m: CMatrix) -> DensityMatrix {
    DensityMatrix::from_matrix(m).unwrap()
}

fn rand_state(d: usize, seed: u64) -> DensityMatrix {
    random_density(d, d, seed).unwrap()
}

fn alpha(v: f64) -> Alpha {
    Alpha::new(v).unwrap()
}

/// Classical oracle for commuting inputs: sum p_i^a q_i^(1-a).
fn classical_q(p: &[f64], q: &[f64], a: f64) -> f64 {
    p.iter()
        .zip(q)
        .map(|(&pi, &qi)| {
            if pi <= 0.0 {
                0.0
            } else {
                pi.powf(a) * qi.powf(1.0 - a)
            }
        })
        .sum()
}

#[test]
fn alpha_domain_and_parsing() {
    assert!(Alpha::new(0.5).is_ok());
    assert!(Alpha::new(0.99).is_ok());
    assert!(Alpha::new(30.0).is_ok());
    assert!(Alpha::new(0.3).is_err());
    assert!(Alpha::new(-2.0).is_err());
    assert!(Alpha::new(f64::NAN).is_err());
    assert!(Alpha::new(1.0).unwrap().is_one());
    assert!(Alpha::new(f64::INFINITY).unwrap().is_inf());
    assert!("inf".parse::<Alpha>().unwrap().is_inf());
    assert!("1".parse::<Alpha>().unwrap().is_one());
    assert_eq!("2.5".parse::<Alpha>().unwrap().finite(), Some(2.5));
    assert!("0.2".parse::<Alpha>().is_err());
    assert!("abc".parse::<Alpha>().is_err());
    assert_eq!(format!("{}", Alpha::INF), "inf");
}

#[test]
fn q_sandwiched_self_is_one() {
    let rho = rand_state(3, 1);
    for a in [0.5, 0.7, 1.5, 2.0, 5.0] {
        let q = q_sandwiched(rho.matrix(), rho.matrix(), alpha(a)).unwrap();
        assert!((q - 1.0).abs() < 1e-10, "alpha={a}: Q={q}");
    }
}

#[test]
fn q_sandwiched_identity_second_argument() {
    let x = diag(&[0.5, 0.5]);
    let q = q_sandwiched(&x, &identity(2), alpha(2.0)).unwrap();
    assert!((q - 0.5).abs() < 1e-12);
}

#[test]
fn q_sandwiched_commuting_matches_classical() {
    let p = [0.6, 0.3, 0.1];
    let q = [0.2, 0.5, 0.3];
    for a in [0.5, 0.8, 1.3, 2.0, 4.0] {
        let got = q_sandwiched(&diag(&p), &diag(&q), alpha(a)).unwrap();
        let want = classical_q(&p, &q, a);
        assert!(
            (got - want).abs() < 1e-12 * want.max(1.0),
            "alpha={a}: {got} vs {want}"
        );
    }
}

#[test]
fn q_sandwiched_orders_agree() {
    for seed in 0..10u64 {
        let mut rng = seeded_rng(seed);
        for &d in &[2usize, 3, 4] {
            let x = {
                let g = random_ginibre(d, d, &mut rng);
                hermitize(&(&g * g.adjoint()))
            };
            let y = random_density_with(d, d, &mut rng).unwrap();
            for a in [0.5, 0.7, 1.3, 2.0, 5.0] {
                let q1 = q_sandwiched(&x, y.matrix(), alpha(a)).unwrap();
                let q2 = q_sandwiched_reordered(&x, y.matrix(), alpha(a)).unwrap();
                let rel = (q1 - q2).abs() / q1.abs().max(1e-300);
                assert!(rel < 1e-8, "d={d} a={a} seed={seed}: {q1} vs {q2} rel {rel}");
            }
        }
    }
}

#[test]
fn kernel_violations_are_rejected() {
    let x = diag(&[0.5, 0.5]);
    let y = diag(&[1.0, 0.0]);
    for a in [0.7, 2.0] {
        assert!(q_sandwiched(&x, &y, alpha(a)).is_err(), "alpha={a}");
    }
    let rho = state(diag(&[0.5, 0.5]));
    assert!(umegaki(&rho, &y).is_err());
    assert!(d_max(&x, &y).is_err());
    assert!(q_petz(&x, &y, 1.5).is_err());
    assert!(q_geometric(&x, &y, 1.5).is_err());
    // Aligned kernels are fine.
    let x_ok = diag(&[1.0, 0.0]);
    assert!(q_sandwiched(&x_ok, &y, alpha(2.0)).is_ok());
}

#[test]
fn d_sandwiched_frozen_oracle_values() {
    // High-precision reference values for rho1 = [[0.8,0.3],[0.3,0.2]]
    // against tau = [[0.45,0.49],[0.49,0.55]].
    let (rho1, _, tau) = superadditivity_witness();
    let rho = state(rho1);
    let cases = [
        (0.5, 0.899732864080758233, 0.211314754809922476),
        (0.7, 0.884990195283726622, 0.40726237603675922),
        (2.0, 10.3288632640568024, 2.33494223487479507),
        (5.0, 266184.485140408447, 3.12298622513160487),
    ];
    for (a, q_want, d_want) in cases {
        let q = q_sandwiched(rho.matrix(), &tau, alpha(a)).unwrap();
        let d = d_sandwiched(&rho, &tau, alpha(a)).unwrap();
        assert!(
            (q - q_want).abs() < 1e-9 * q_want.max(1.0),
            "alpha={a}: Q {q} vs {q_want}"
        );
        assert!((d - d_want).abs() < 1e-10, "alpha={a}: D {d} vs {d_want}");
    }
    let u = umegaki(&rho, &tau).unwrap();
    assert!((u - 0.874056472492737567).abs() < 1e-10, "umegaki {u}");
    let dm = d_max(rho.matrix(), &tau).unwrap();
    assert!((dm - 3.45291881893865988).abs() < 1e-10, "dmax {dm}");
    let d50 = d_sandwiched(&rho, &tau, alpha(50.0)).unwrap();
    assert!((d50 - 3.42500111507509297).abs() < 1e-10, "D50 {d50}");
}

#[test]
fn d_sandwiched_self_zero_all_orders() {
    let rho = rand_state(3, 4);
    for a in [
        alpha(0.5),
        alpha(0.9),
        alpha(3.0),
        Alpha::ONE,
        Alpha::INF,
    ] {
        let d = d_sandwiched(&rho, rho.matrix(), a).unwrap();
        assert!(d.abs() < 1e-9, "alpha={a}: D={d}");
    }
}

#[test]
fn half_order_equals_minus_log_fidelity() {
    // At order 1/2 the divergence is -log F, and the pure-vs-mixed pair
    // (e_0, I/2) gives log 2.
    let pure = state(diag(&[1.0, 0.0]));
    let mixed = DensityMatrix::maximally_mixed(2);
    let d = d_sandwiched(&pure, mixed.matrix(), alpha(0.5)).unwrap();
    assert!((d - std::f64::consts::LN_2).abs() < 1e-12);
    for seed in 0..8u64 {
        let rho = rand_state(3, seed);
        let sigma = rand_state(3, seed + 100);
        let d = d_sandwiched(&rho, sigma.matrix(), alpha(0.5)).unwrap();
        let f = fidelity(&rho, &sigma).unwrap();
        assert!((d + f.ln()).abs() < 1e-9, "seed={seed}: D={d} -logF={}", -f.ln());
    }
}

#[test]
fn near_one_matches_umegaki() {
    for seed in 0..5u64 {
        let rho = rand_state(3, seed);
        let sigma = rand_state(3, seed + 50);
        let u = umegaki(&rho, sigma.matrix()).unwrap();
        let d_hi = d_sandwiched(&rho, sigma.matrix(), alpha(1.0 + 1e-6)).unwrap();
        let d_lo = d_sandwiched(&rho, sigma.matrix(), alpha(1.0 - 1e-6)).unwrap();
        assert!((d_hi - u).abs() < 1e-4, "seed={seed}: {d_hi} vs {u}");
        assert!((d_lo - u).abs() < 1e-4, "seed={seed}: {d_lo} vs {u}");
    }
}

#[test]
fn umegaki_known_answers_and_ordering() {
    let rho = rand_state(3, 9);
    assert!(umegaki(&rho, rho.matrix()).unwrap().abs() < 1e-10);
    let pure = state(diag(&[1.0, 0.0]));
    let u = umegaki(&pure, &diag(&[0.5, 0.5])).unwrap();
    assert!((u - std::f64::consts::LN_2).abs() < 1e-12);
    for seed in 20..30u64 {
        let a = rand_state(3, seed);
        let b = rand_state(3, seed + 1000);
        let u = umegaki(&a, b.matrix()).unwrap();
        let dm = d_max(a.matrix(), b.matrix()).unwrap();
        assert!(u <= dm + 1e-9, "seed={seed}: umegaki {u} > dmax {dm}");
    }
}

/// Oracle for the operator characterization of the max-divergence:
/// smallest lambda with X <= e^lambda Y, found by bisection on
/// PSD-ness of e^lambda Y - X.
fn d_max_bisection(x: &CMatrix, y: &CMatrix) -> f64 {
    let scale = |l: f64| y * Complex64::new(l.exp(), 0.0);
    let dominated = |l: f64| psd_dominates(&scale(l), x, 1e-13);
    let mut hi = 1.0f64;
    while !dominated(hi) {
        hi *= 2.0;
    }
    let mut lo = -1.0f64;
    while dominated(lo) {
        lo *= 2.0;
    }
    for _ in 0..80 {
        let mid = 0.5 * (lo + hi);
        if dominated(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    hi
}

#[test]
fn d_max_both_characterizations_agree() {
    assert!((d_max(&diag(&[1.0, 0.0]), &diag(&[0.5, 0.5])).unwrap()
        - std::f64::consts::LN_2)
        .abs()
        < 1e-12);
    for seed in 0..10u64 {
        let rho = rand_state(3, seed);
        let sigma = rand_state(3, seed + 7);
        let norm_form = d_max(rho.matrix(), sigma.matrix()).unwrap();
        let op_form = d_max_bisection(rho.matrix(), sigma.matrix());
        assert!(
            (norm_form - op_form).abs() < 1e-8,
            "seed={seed}: {norm_form} vs {op_form}"
        );
        let d50 = d_sandwiched(&rho, sigma.matrix(), alpha(50.0)).unwrap();
        assert!(d50 <= norm_form + 1e-6, "seed={seed}: D50 {d50} > dmax {norm_form}");
    }
}

#[test]
fn petz_counterexample_chain() {
    let (rho1, rho2, tau) = superadditivity_witness();
    let q1 = q_petz(&rho1, &tau, 1.5).unwrap();
    let q2 = q_petz(&rho2, &tau, 1.5).unwrap();
    let qs = q_petz(&(&rho1 + &rho2), &tau, 1.5).unwrap();
    // Frozen high-precision references.
    assert!((q1 - 2.8236416779380309).abs() < 1e-9, "q1={q1}");
    assert!((q2 - 3.2997523689173104).abs() < 1e-9, "q2={q2}");
    assert!((qs - 5.8724899130848864).abs() < 1e-9, "qs={qs}");
    assert!(q1 + q2 > 6.0);
    assert!(qs < 5.9);
}

#[test]
fn geometric_counterexample_chain() {
    let (rho1, rho2, tau) = superadditivity_witness();
    let q1 = q_geometric(&rho1, &tau, 1.5).unwrap();
    let q2 = q_geometric(&rho2, &tau, 1.5).unwrap();
    let qs = q_geometric(&(&rho1 + &rho2), &tau, 1.5).unwrap();
    assert!((q1 - 4.1356063051020358).abs() < 1e-9, "q1={q1}");
    assert!((q2 - 4.9298859617429871).abs() < 1e-9, "q2={q2}");
    assert!((qs - 5.8919194423137452).abs() < 1e-9, "qs={qs}");
    assert!(q1 + q2 > 9.0);
    assert!(qs < 6.0);
}

#[test]
fn petz_and_geometric_basics() {
    let rho = rand_state(2, 3);
    assert!((q_petz(rho.matrix(), rho.matrix(), 1.5).unwrap() - 1.0).abs() < 1e-10);
    assert!((q_geometric(rho.matrix(), rho.matrix(), 1.5).unwrap() - 1.0).abs() < 1e-10);
    assert!(q_geometric(rho.matrix(), rho.matrix(), 2.5).is_err());
    assert!(q_geometric(rho.matrix(), rho.matrix(), 0.9).is_err());
    assert!(q_petz(rho.matrix(), rho.matrix(), -1.0).is_err());
    let p = [0.7, 0.3];
    let q = [0.4, 0.6];
    for a in [0.5f64, 1.5, 2.0] {
        let want = classical_q(&p, &q, a);
        let got = q_petz(&diag(&p), &diag(&q), a).unwrap();
        assert!((got - want).abs() < 1e-12, "petz a={a}");
        if a > 1.0 {
            let gg = q_geometric(&diag(&p), &diag(&q), a).unwrap();
            assert!((gg - want).abs() < 1e-12, "geom a={a}");
        }
    }
}

#[test]
fn monotone_in_alpha() {
    for seed in 0..10u64 {
        let rho = rand_state(3, seed);
        let sigma = rand_state(3, seed + 31);
        let grid = [0.5, 0.8, 1.5, 2.0, 5.0, 20.0];
        let mut prev = f64::NEG_INFINITY;
        for a in grid {
            let d = d_sandwiched(&rho, sigma.matrix(), alpha(a)).unwrap();
            assert!(d >= prev - 1e-9, "seed={seed} alpha={a}: {d} < {prev}");
            prev = d;
        }
        let dm = d_max(rho.matrix(), sigma.matrix()).unwrap();
        assert!(prev <= dm + 1e-9);
    }
}

#[test]
fn data_processing_under_partial_trace() {
    for seed in 0..6u64 {
        let rho = PartitionedState::new(rand_state(6, seed), vec![2, 3]).unwrap();
        let sigma = PartitionedState::new(rand_state(6, seed + 77), vec![2, 3]).unwrap();
        let rho_b = rho.partial_trace(0).unwrap();
        let sigma_b = sigma.partial_trace(0).unwrap();
        for a in [alpha(0.6), alpha(1.3), alpha(2.5), Alpha::ONE, Alpha::INF] {
            let full = d_sandwiched(rho.state(), sigma.matrix(), a).unwrap();
            let red = d_sandwiched(&rho_b, sigma_b.matrix(), a).unwrap();
            assert!(red <= full + 1e-9, "seed={seed} alpha={a}: {red} > {full}");
        }
    }
}

#[test]
fn q_sub_and_superadditivity_in_first_argument() {
    for seed in 0..8u64 {
        let mut rng = seeded_rng(seed);
        let x1m = {
            let g = random_ginibre(3, 3, &mut rng);
            hermitize(&(&g * g.adjoint()))
        };
        let x2m = {
            let g = random_ginibre(3, 3, &mut rng);
            hermitize(&(&g * g.adjoint()))
        };
        let y = random_density_with(3, 3, &mut rng).unwrap();
        for a in [0.5, 0.8] {
            let sum = q_sandwiched(&(&x1m + &x2m), y.matrix(), alpha(a)).unwrap();
            let parts = q_sandwiched(&x1m, y.matrix(), alpha(a)).unwrap()
                + q_sandwiched(&x2m, y.matrix(), alpha(a)).unwrap();
            assert!(sum <= parts + 1e-9, "a={a} seed={seed}: {sum} > {parts}");
        }
        for a in [1.5, 3.0] {
            let sum = q_sandwiched(&(&x1m + &x2m), y.matrix(), alpha(a)).unwrap();
            let parts = q_sandwiched(&x1m, y.matrix(), alpha(a)).unwrap()
                + q_sandwiched(&x2m, y.matrix(), alpha(a)).unwrap();
            assert!(sum >= parts - 1e-9, "a={a} seed={seed}: {sum} < {parts}");
        }
    }
}

#[test]
fn q_joint_concavity_and_convexity() {
    for seed in 0..8u64 {
        let r1 = rand_state(3, seed);
        let r2 = rand_state(3, seed + 11);
        let s1 = rand_state(3, seed + 22);
        let s2 = rand_state(3, seed + 33);
        let lam = 0.37;
        let mix = |a: &CMatrix, b: &CMatrix| {
            a * Complex64::new(lam, 0.0) + b * Complex64::new(1.0 - lam, 0.0)
        };
        let rmix = mix(r1.matrix(), r2.matrix());
        let smix = mix(s1.matrix(), s2.matrix());
        for a in [0.5, 0.8] {
            let joint = q_sandwiched(&rmix, &smix, alpha(a)).unwrap();
            let split = lam * q_sandwiched(r1.matrix(), s1.matrix(), alpha(a)).unwrap()
                + (1.0 - lam) * q_sandwiched(r2.matrix(), s2.matrix(), alpha(a)).unwrap();
            assert!(joint >= split - 1e-9, "concavity a={a} seed={seed}");
        }
        for a in [1.5, 3.0] {
            let joint = q_sandwiched(&rmix, &smix, alpha(a)).unwrap();
            let split = lam * q_sandwiched(r1.matrix(), s1.matrix(), alpha(a)).unwrap()
                + (1.0 - lam) * q_sandwiched(r2.matrix(), s2.matrix(), alpha(a)).unwrap();
            assert!(joint <= split + 1e-9, "convexity a={a} seed={seed}");
        }
    }
}

#[test]
fn q_homogeneity() {
    let mut rng = seeded_rng(5);
    let x = {
        let g = random_ginibre(3, 3, &mut rng);
        hermitize(&(&g * g.adjoint()))
    };
    let y = random_density_with(3, 3, &mut rng).unwrap();
    for a in [0.6, 2.0, 4.0] {
        let q0 = q_sandwiched(&x, y.matrix(), alpha(a)).unwrap();
        for cval in [0.3, 2.7] {
            let qx = q_sandwiched(&(&x * Complex64::new(cval, 0.0)), y.matrix(), alpha(a)).unwrap();
            assert!(
                (qx - cval.powf(a) * q0).abs() < 1e-9 * qx.abs().max(1.0),
                "first-arg homogeneity a={a} c={cval}"
            );
            let yc = y.matrix() * Complex64::new(cval, 0.0);
            let qy = q_sandwiched(&x, &yc, alpha(a)).unwrap();
            assert!(
                (qy - cval.powf(1.0 - a) * q0).abs() < 1e-9 * qy.abs().max(1.0),
                "second-arg homogeneity a={a} c={cval}"
            );
        }
    }
}

#[test]
fn q_tensor_multiplicativity() {
    for seed in 0..6u64 {
        let r1 = rand_state(2, seed);
        let s1 = rand_state(2, seed + 5);
        let r2 = rand_state(3, seed + 10);
        let s2 = rand_state(3, seed + 15);
        let rj = kron(r1.matrix(), r2.matrix());
        let sj = kron(s1.matrix(), s2.matrix());
        for a in [0.7, 1.8] {
            let joint = q_sandwiched(&rj, &sj, alpha(a)).unwrap();
            let prod = q_sandwiched(r1.matrix(), s1.matrix(), alpha(a)).unwrap()
                * q_sandwiched(r2.matrix(), s2.matrix(), alpha(a)).unwrap();
            assert!(
                (joint - prod).abs() < 1e-9 * prod.max(1.0),
                "a={a} seed={seed}: {joint} vs {prod}"
            );
        }
    }
}

#[test]
fn entropy_helpers() {
    let mixed = DensityMatrix::maximally_mixed(4);
    assert!((von_neumann_entropy(&mixed) - 4.0f64.ln()).abs() < 1e-12);
    assert!((renyi_entropy(&mixed, 2.0).unwrap() - 4.0f64.ln()).abs() < 1e-12);
    let pure = state(diag(&[1.0, 0.0, 0.0, 0.0]));
    assert!(von_neumann_entropy(&pure).abs() < 1e-12);
    assert!(renyi_entropy(&pure, 0.5).unwrap().abs() < 1e-12);
}
