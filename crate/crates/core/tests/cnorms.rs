//! Tests for the weighted norm family: index algebra, closed-form
//! singleton reductions, agreement with an independent grid oracle,
//! duality against the divergence optimizer, witness-search convergence,
//! and the law verifier with its negative control.

use num_complex::Complex64;
use renyi_core::cnorms::{
    c_norm, c_norm_dual, c_norm_dual_outcome, dual_formula_sup, grid_c_norm_diagonal,
    verify_norm_laws, verify_norm_laws_with, DualCorruption, IndexVariant, NormIndices, PsdSet,
};
use renyi_core::divergence::Alpha;
use renyi_core::linalg::{
    kron, random_density_with, random_ginibre, random_hermitian, schatten_norm, seeded_rng,
    trace_re, CMatrix, DensityMatrix,
};
use renyi_core::variational::{d_alpha_to_set, ConvexStateSet, OptimizerConfig};

fn assert_close(got: f64, want: f64, tol: f64, what: &str) {
    assert!(
        (got - want).abs() <= tol,
        "{what}: got {got}, want {want} (tol {tol})"
    );
}

fn cfg() -> OptimizerConfig {
    OptimizerConfig::default()
}

fn light_cfg() -> OptimizerConfig {
    OptimizerConfig {
        restarts: 3,
        tolerance: 1e-9,
        ..OptimizerConfig::default()
    }
}

fn rand_psd(seed: u64, d: usize) -> CMatrix {
    let mut rng = seeded_rng(seed);
    let g = random_ginibre(d, d, &mut rng);
    let p = &g * g.adjoint();
    &p * Complex64::new(1.0 / trace_re(&p), 0.0)
}

fn rand_herm(seed: u64, d: usize) -> CMatrix {
    let mut rng = seeded_rng(seed);
    random_hermitian(d, &mut rng)
}

fn rand_state(seed: u64, d: usize) -> DensityMatrix {
    let mut rng = seeded_rng(seed);
    random_density_with(d, d, &mut rng).expect("full-rank state")
}

#[test]
fn index_pairs_validate_and_conjugate() {
    let idx = NormIndices::primal(2.0, 4.0).expect("valid pair");
    assert_eq!(idx.variant(), IndexVariant::Primal);
    assert_close(idx.r(), 4.0, 1e-12, "r of (2,4)");
    let dual = idx.dual_of();
    assert_eq!(dual.variant(), IndexVariant::Dual);
    assert_close(dual.p(), 2.0, 1e-12, "conjugate p");
    assert_close(dual.q(), 4.0 / 3.0, 1e-12, "conjugate q");
    assert_close(dual.r(), idx.r(), 0.0, "r preserved under conjugation");

    // r-consistency: 1/p - 1/q - 1/r vanishes for every valid primal pair.
    for (p, q) in [
        (1.0, 1.0),
        (1.0, 2.0),
        (1.0, f64::INFINITY),
        (1.5, 3.0),
        (2.0, 2.0),
        (2.0, f64::INFINITY),
        (3.0, 7.0),
    ] {
        let idx = NormIndices::primal(p, q).expect("valid pair");
        let inv = |v: f64| if v.is_infinite() { 0.0 } else { 1.0 / v };
        assert!(
            (inv(idx.p()) - inv(idx.q()) - inv(idx.r())).abs() <= 1e-12,
            "r-consistency failed at ({p}, {q})"
        );
        // Conjugating twice returns to the starting pair.
        let back = idx.dual_of().dual_of();
        assert_eq!(back.variant(), IndexVariant::Primal);
        assert_close(inv(back.p()), inv(idx.p()), 1e-12, "double conjugate p");
        assert_close(inv(back.q()), inv(idx.q()), 1e-12, "double conjugate q");
    }

    // Limit conjugates: 1 <-> inf.
    let edge = NormIndices::primal(1.0, f64::INFINITY).expect("valid pair");
    let de = edge.dual_of();
    assert!(de.p().is_infinite(), "conjugate of 1 is inf");
    assert_close(de.q(), 1.0, 0.0, "conjugate of inf is 1");
    assert_close(edge.r(), 1.0, 1e-12, "r of (1, inf)");

    // Order and range violations are rejected.
    assert!(NormIndices::primal(4.0, 2.0).is_err());
    assert!(NormIndices::dual(2.0, 4.0).is_err());
    assert!(NormIndices::primal(0.5, 2.0).is_err());
    assert!(NormIndices::dual(2.0, 0.0).is_err());
    assert!(NormIndices::primal(f64::NAN, 2.0).is_err());
}

#[test]
fn singleton_weights_reduce_to_schatten() {
    let d = 3usize;
    let x = rand_herm(11, d);
    let uniform = PsdSet::singleton(DensityMatrix::maximally_mixed(d));
    for (p, q) in [(1.0, 2.0), (2.0, f64::INFINITY), (1.5, 4.0)] {
        let idx = NormIndices::primal(p, q).expect("valid pair");
        let didx = idx.dual_of();
        let factor = (d as f64).powf(-1.0 / idx.r());
        let sp = schatten_norm(&x, p).expect("schatten");
        let got = c_norm(&x, &uniform, &idx, &cfg()).expect("primal");
        assert_close(got, factor * sp, 1e-10 * sp.max(1.0), "primal singleton");
        let spd = schatten_norm(&x, didx.p()).expect("schatten");
        let gotd = c_norm_dual(&x, &uniform, &didx, &cfg()).expect("dual");
        assert_close(
            gotd,
            spd / factor,
            1e-10 * spd.max(1.0),
            "dual singleton",
        );
    }

    // p = q: the weighting drops out entirely.
    let idx = NormIndices::primal(2.0, 2.0).expect("valid pair");
    let tau = rand_state(5, d);
    let set = PsdSet::singleton(tau);
    let s2 = schatten_norm(&x, 2.0).expect("schatten");
    assert_close(
        c_norm(&x, &set, &idx, &cfg()).expect("primal"),
        s2,
        1e-12 * s2,
        "r = inf primal",
    );
    assert_close(
        c_norm_dual(&x, &set, &idx.dual_of(), &cfg()).expect("dual"),
        s2,
        1e-12 * s2,
        "r = inf dual",
    );

    // Zero operand has zero norm.
    let zero = CMatrix::zeros(d, d);
    let idx = NormIndices::primal(1.0, 2.0).expect("valid pair");
    assert_close(
        c_norm(&zero, &uniform, &idx, &cfg()).expect("primal"),
        0.0,
        1e-14,
        "zero primal",
    );
    assert_close(
        c_norm_dual(&zero, &uniform, &idx.dual_of(), &cfg()).expect("dual"),
        0.0,
        1e-14,
        "zero dual",
    );
}

#[test]
fn rank_deficient_singleton_uses_pseudo_powers() {
    // tau = |0><0|: tau^s and its pseudo-inverse power are both the same
    // projector, so the weighted norm collapses to the (0,0) entry.
    let d = 2usize;
    let proj = CMatrix::from_fn(d, d, |i, j| {
        if i == 0 && j == 0 {
            Complex64::new(1.0, 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        }
    });
    let tau = DensityMatrix::from_matrix(proj).expect("projector state");
    let set = PsdSet::singleton(tau);
    let x = rand_herm(17, d);
    let want = x[(0, 0)].re.abs();
    let idx = NormIndices::primal(1.0, 2.0).expect("valid pair");
    assert_close(
        c_norm(&x, &set, &idx, &cfg()).expect("primal"),
        want,
        1e-12 * want.max(1.0),
        "projector primal",
    );
    assert_close(
        c_norm_dual(&x, &set, &idx.dual_of(), &cfg()).expect("dual"),
        want,
        1e-12 * want.max(1.0),
        "projector dual",
    );
}

#[test]
fn primal_matches_diagonal_grid_oracle() {
    // Independent check of the mirror ascent: exhaustive diagonal-simplex
    // scan plus shrinking refinement at d = 2.
    let set = PsdSet::diagonal_states(2).expect("set");
    for (seed, p, q) in [
        (23u64, 1.0, 2.0),
        (29, 2.0, f64::INFINITY),
        (31, 1.0, f64::INFINITY),
    ] {
        let idx = NormIndices::primal(p, q).expect("valid pair");
        let x = rand_herm(seed, 2);
        let got = c_norm(&x, &set, &idx, &cfg()).expect("mirror");
        let want = grid_c_norm_diagonal(&x, &idx, &cfg()).expect("grid");
        assert_close(got, want, 1e-5 * want.max(1.0), "diagonal oracle, Hermitian");
        let xp = rand_psd(seed + 1, 2);
        let got = c_norm(&xp, &set, &idx, &cfg()).expect("mirror");
        let want = grid_c_norm_diagonal(&xp, &idx, &cfg()).expect("grid");
        assert_close(got, want, 1e-5 * want.max(1.0), "diagonal oracle, PSD");
    }
}

#[test]
fn supremum_grows_with_the_weight_set() {
    // Singleton <= diagonal simplex <= full state simplex, and the dual
    // shrinks the same way.
    let idx = NormIndices::primal(1.0, 2.0).expect("valid pair");
    let didx = idx.dual_of();
    let x = rand_herm(37, 2);
    let single = PsdSet::singleton(DensityMatrix::maximally_mixed(2));
    let diag = PsdSet::diagonal_states(2).expect("set");
    let full = PsdSet::states(2).expect("set");
    let n_s = c_norm(&x, &single, &idx, &cfg()).expect("singleton");
    let n_d = c_norm(&x, &diag, &idx, &cfg()).expect("diag");
    let n_f = c_norm(&x, &full, &idx, &cfg()).expect("full");
    assert!(n_s <= n_d + 1e-9, "singleton {n_s} vs diagonal {n_d}");
    assert!(n_d <= n_f + 1e-9, "diagonal {n_d} vs full {n_f}");
    let d_s = c_norm_dual(&x, &single, &didx, &cfg()).expect("singleton");
    let d_d = c_norm_dual(&x, &diag, &didx, &cfg()).expect("diag");
    let d_f = c_norm_dual(&x, &full, &didx, &cfg()).expect("full");
    assert!(d_d <= d_s + 1e-9, "diagonal dual {d_d} vs singleton {d_s}");
    assert!(d_f <= d_d + 1e-9, "full dual {d_f} vs diagonal {d_d}");

    // The reported dual never exceeds the value at any fixed interior
    // weight (it is an infimum approached from feasible points).
    let tau = rand_state(41, 2);
    let at_tau = c_norm_dual(&x, &PsdSet::singleton(tau), &didx, &cfg()).expect("fixed");
    assert!(d_f <= at_tau + 1e-9, "dual {d_f} above fixed weight {at_tau}");
}

#[test]
fn dual_over_identity_factor_matches_divergence_optimizer() {
    // For a state rho and the dual pair (alpha, 1), the weighted dual norm
    // over weights d_A^-1 1_A (x) sigma_B reproduces the optimized
    // divergence of rho to the same trace-one weight set:
    //   (alpha/(alpha-1)) ln ||rho||-dual = min_sigma D_alpha.
    // Entirely independent code paths: Schatten-norm mirror descent on one
    // side, the divergence optimizer on the other.
    let rho = rand_state(53, 4);
    let set = PsdSet::identity_factor(2, 2).expect("set");
    let vcfg = OptimizerConfig::default();
    for a in [1.5, 2.0, 3.0] {
        let didx = NormIndices::dual(a, 1.0).expect("valid pair");
        let dual = c_norm_dual(rho.matrix(), &set, &didx, &cfg()).expect("dual norm");
        let lhs = a / (a - 1.0) * dual.ln();
        let target = ConvexStateSet::identity_simplex(2, 2).expect("set");
        let out = d_alpha_to_set(&rho, &target, Alpha::new(a).expect("alpha"), &vcfg)
            .expect("divergence");
        assert_close(lhs, out.value, 1e-6 * out.value.abs().max(1.0), "duality at alpha");
    }
}

#[test]
fn dual_formula_witness_search_converges() {
    // Random PSD directions alone drive the normalized pairing to the
    // dual value: within 5% after 1e4 directions at d = 2. The weight is
    // a fixed full-rank state so each direction is evaluated in closed
    // form; the duality being probed is the weighted Schatten pairing.
    let tau = rand_state(61, 2);
    let set = PsdSet::singleton(tau);
    let idx = NormIndices::primal(1.0, 2.0).expect("valid pair");
    let didx = idx.dual_of();
    let x = rand_psd(67, 2);
    let dual = c_norm_dual(&x, &set, &didx, &cfg()).expect("dual");
    let mut rng = seeded_rng(71);
    let mut sup = 0.0f64;
    for _ in 0..10_000 {
        let g = random_ginibre(2, 2, &mut rng);
        let y = &g * g.adjoint();
        let pairing = (&x * &y).trace().re;
        if pairing <= 0.0 {
            continue;
        }
        let ny = c_norm(&y, &set, &idx, &cfg()).expect("direction norm");
        if ny > 1e-300 {
            sup = sup.max(pairing / ny);
        }
    }
    assert!(
        sup <= dual + 1e-6 * dual.max(1.0),
        "witness sup {sup} exceeds dual {dual}"
    );
    assert!(
        sup >= 0.95 * dual,
        "1e4 random directions reached only {sup} of dual {dual}"
    );

    // Over a genuine weight set the search helper (random directions plus
    // the analytic Schatten maximizer at the best weight) also brackets
    // the dual from below.
    let set = PsdSet::diagonal_states(2).expect("set");
    let (sup, dual) = dual_formula_sup(&x, &set, &idx, 300, 73, &light_cfg()).expect("search");
    assert!(
        sup <= dual + 1e-6 * dual.max(1.0),
        "set witness sup {sup} exceeds dual {dual}"
    );
    assert!(
        sup >= 0.95 * dual,
        "witness search reached only {sup} of dual {dual}"
    );
}

#[test]
fn law_verifier_passes_honest_and_flags_corrupted() {
    let set = PsdSet::states(2).expect("set");
    let idx = NormIndices::primal(1.0, 2.0).expect("valid pair");
    let honest = verify_norm_laws(&set, &idx, 3, 97, &light_cfg()).expect("verify");
    assert!(
        honest.passed(),
        "honest laws reported violations: {:?}",
        honest.violations
    );
    assert_eq!(honest.trials, 3);
    assert_eq!(honest.checks, 18, "six checks per trial");

    let corrupted = verify_norm_laws_with(
        &set,
        &idx,
        3,
        97,
        &light_cfg(),
        DualCorruption::FlippedExponent,
    )
    .expect("verify");
    assert!(
        !corrupted.passed(),
        "flipped dual exponent must violate at least one law"
    );
    assert!(
        corrupted
            .violations
            .iter()
            .any(|v| v.contains("pairing") || v.contains("dual formula")),
        "corruption should surface in the duality laws, got {:?}",
        corrupted.violations
    );
}

#[test]
fn identity_factor_weights_stay_in_the_set() {
    // The dual minimizer over identity-factor weights is itself of
    // identity-factor form: tracing out B and comparing against the
    // maximally mixed factor detects any drift.
    let rho = rand_state(101, 4);
    let set = PsdSet::identity_factor(2, 2).expect("set");
    let didx = NormIndices::dual(2.0, 1.0).expect("valid pair");
    let (value, c) = c_norm_dual_outcome(rho.matrix(), &set, &didx, &cfg()).expect("dual");
    assert!(value.is_finite() && value > 0.0);
    assert_close(trace_re(&c), 1.0, 1e-10, "weight trace");
    // Partial trace over B must be the maximally mixed state on A.
    let mut pa = CMatrix::zeros(2, 2);
    for i in 0..2 {
        for j in 0..2 {
            let mut s = Complex64::new(0.0, 0.0);
            for k in 0..2 {
                s += c[(i * 2 + k, j * 2 + k)];
            }
            pa[(i, j)] = s;
        }
    }
    for i in 0..2 {
        for j in 0..2 {
            let want = if i == j { 0.5 } else { 0.0 };
            assert!(
                (pa[(i, j)] - Complex64::new(want, 0.0)).norm() <= 1e-10,
                "A-marginal drifted from maximally mixed at ({i},{j})"
            );
        }
    }
    // And the value is reproduced by evaluating at that weight directly.
    let tau = DensityMatrix::from_matrix(c).expect("weight is a state");
    let fixed = PsdSet::singleton(tau);
    let at_c = c_norm_dual(rho.matrix(), &fixed, &didx, &cfg()).expect("fixed");
    assert_close(at_c, value, 1e-9 * value.max(1.0), "value attained at weight");
}

#[test]
fn inputs_are_validated() {
    let set = PsdSet::states(2).expect("set");
    let idx = NormIndices::primal(1.0, 2.0).expect("valid pair");
    let didx = idx.dual_of();

    // Wrong variant on either side.
    let x = rand_herm(3, 2);
    assert!(c_norm(&x, &set, &didx, &cfg()).is_err());
    assert!(c_norm_dual(&x, &set, &idx, &cfg()).is_err());
    assert!(grid_c_norm_diagonal(&x, &didx, &cfg()).is_err());
    assert!(verify_norm_laws(&set, &didx, 1, 1, &cfg()).is_err());
    assert!(dual_formula_sup(&x, &set, &didx, 1, 1, &cfg()).is_err());

    // Shape mismatches.
    let tall = random_ginibre(3, 2, &mut seeded_rng(5));
    assert!(c_norm(&tall, &set, &idx, &cfg()).is_err());
    let x3 = rand_herm(7, 3);
    assert!(c_norm(&x3, &set, &idx, &cfg()).is_err());
    let x4 = rand_herm(9, 4);
    assert!(grid_c_norm_diagonal(&x4, &idx, &cfg()).is_err());

    // Degenerate sets and configs.
    assert!(PsdSet::states(0).is_err());
    assert!(PsdSet::diagonal_states(0).is_err());
    assert!(PsdSet::identity_factor(0, 2).is_err());
    let bad = OptimizerConfig {
        restarts: 0,
        ..OptimizerConfig::default()
    };
    assert!(c_norm(&x, &set, &idx, &bad).is_err());

    // Set accessors.
    assert_eq!(set.dim(), 2);
    let pair = PsdSet::identity_factor(2, 3).expect("set");
    assert_eq!(pair.dim(), 6);
    assert_close(
        trace_re(pair.representative().matrix()),
        1.0,
        1e-12,
        "representative trace",
    );
    let tau = DensityMatrix::maximally_mixed(4);
    let single = PsdSet::singleton(tau.clone());
    match single.kind() {
        renyi_core::cnorms::PsdSetKind::Singleton(t) => {
            assert_eq!(t.dim(), 4);
        }
        other => panic!("unexpected kind {other:?}"),
    }
    // Representative of a product set is the full product uniform state.
    let want = kron(tau.matrix(), &CMatrix::identity(1, 1));
    assert_eq!(want.nrows(), 4);
}
