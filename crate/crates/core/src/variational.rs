//! Optimized entropic quantities: minimal sandwiched divergence to a convex
//! state set, conditional entropies (variational and non-variational),
//! mutual informations, conditional mutual information, distance to the
//! separable states, and the infinite-order analogues.
//!
//! Engine notes:
//! - simplex-parametrized sets are minimized by exponentiated-gradient
//!   mirror descent on the free factor, with finite-difference gradients in
//!   the iterate's eigenbasis and Armijo backtracking; random restarts with
//!   deterministic seeding guard against local optima, lowest restart index
//!   winning ties;
//! - iterates are mixed toward the full-rank representative at weight 1e-8
//!   before every objective evaluation, so the divergence stays finite for
//!   boundary candidates; reported values are exact divergences at feasible
//!   (mixed) members, hence true upper bounds on the infimum;
//! - the separable-state distance runs away-step Frank-Wolfe over pure
//!   product atoms with an alternating power-iteration linear oracle and an
//!   analytic (divided-difference) gradient; the reported value is an upper
//!   bound with a duality-gap diagnostic;
//! - the product-state set used by the mutual information is not convex;
//!   alternating minimization over the two factors with restarts is used
//!   there, and convergence flags mean coordinate-wise stationarity only;
//! - grid oracles (exhaustive simplex scan times a unitary frame sample,
//!   then deterministic shrinking local refinement) provide independent
//!   ground truth for small factor dimensions.

use num_complex::Complex64;

use crate::divergence::{d_sandwiched, Alpha};
use crate::error::{Error, Result};
use crate::exec::map_collect;
use crate::linalg::{
    herm_eig_matrix, hermitize, identity, kernel_included, kron, partial_trace_matrix,
    power_from_spectrum, random_density_with, random_ginibre, random_hermitian, random_unitary,
    seeded_rng, trace_re, CMatrix, DensityMatrix, PartitionedState, Spectrum,
};

/// Weight of the interior mix applied before objective evaluations.
const INTERIOR_MIX: f64 = 1e-8;
/// Base finite-difference step for gradients.
const PROBE_STEP: f64 = 1e-6;
/// Smallest admissible finite-difference step (keeps mixed probes positive
/// definite even at the simplex boundary for dimensions up to 9).
const PROBE_FLOOR: f64 = 1e-9;

/// Tuning knobs for the variational engine.
#[derive(Debug, Clone)]
pub struct OptimizerConfig {
    /// Relative objective tolerance for convergence detection.
    pub tolerance: f64,
    /// Iteration cap per descent.
    pub max_iterations: usize,
    /// Number of starting points (first: uniform, second: the matching
    /// marginal of the input, rest: seeded random states).
    pub restarts: usize,
    /// Points per simplex axis in oracle mode.
    pub grid_resolution: usize,
    /// Random unitary frames sampled in oracle mode (the identity frame is
    /// always included; 0 restricts the scan to commuting candidates).
    pub unitary_samples: usize,
    /// Seed for every random draw made by the engine.
    pub seed: u64,
}

impl Default for OptimizerConfig {
    fn default() -> Self {
        OptimizerConfig {
            tolerance: 1e-9,
            max_iterations: 10_000,
            restarts: 5,
            grid_resolution: 200,
            unitary_samples: 500,
            seed: 7,
        }
    }
}

impl OptimizerConfig {
    pub(crate) fn validate(&self) -> Result<()> {
        if !(self.tolerance > 0.0) {
            return Err(Error::Domain("optimizer tolerance must be positive".into()));
        }
        if self.restarts == 0 {
            return Err(Error::Domain("optimizer needs at least one restart".into()));
        }
        if self.grid_resolution < 2 {
            return Err(Error::Domain("grid resolution must be at least 2".into()));
        }
        Ok(())
    }
}

/// Result of a variational minimization: the best value found, the feasible
/// member achieving it, and convergence diagnostics. A `false` flag means
/// the value is still a valid upper bound, just not certified stationary.
#[derive(Debug, Clone)]
pub struct OptimizerOutcome {
    /// Best objective value found (an exact divergence at `witness`).
    pub value: f64,
    /// The feasible set member achieving `value`.
    pub witness: DensityMatrix,
    /// Whether the winning run reached a stationarity criterion.
    pub converged: bool,
    /// Iterations used by the winning run.
    pub iterations: usize,
    /// Convergence diagnostic: last objective drop, or the Frank-Wolfe
    /// duality gap for the separable-hull solver.
    pub gap: f64,
}

/// Family of target sets for the minimal-divergence problem.
#[derive(Debug, Clone)]
pub enum SetKind {
    /// A single fixed state.
    Singleton(DensityMatrix),
    /// States `d_A^-1 1_A (x) sigma_B` over all `sigma_B`.
    IdentitySimplex { d_a: usize, d_b: usize },
    /// States `tau_A (x) sigma_B` over all `sigma_B`.
    FixedFactorSimplex { tau_a: DensityMatrix, d_b: usize },
    /// Product states `sigma_A (x) sigma_B`; not convex.
    ProductSimplex { d_a: usize, d_b: usize },
    /// Convex hull of the pure product states.
    SeparableHull { d_a: usize, d_b: usize },
}

/// A compact set of states to minimize divergence over, together with a
/// stored full-rank representative member (the uniform mixture for the
/// simplex and hull kinds). Every kind except `ProductSimplex` is convex.
#[derive(Debug, Clone)]
pub struct ConvexStateSet {
    kind: SetKind,
    representative: DensityMatrix,
}

fn check_dims(d_a: usize, d_b: usize) -> Result<()> {
    if d_a == 0 || d_b == 0 {
        return Err(Error::Dimension("factor dimensions must be at least 1".into()));
    }
    Ok(())
}

impl ConvexStateSet {
    /// The one-point set `{tau}`. The representative is `tau` itself, which
    /// is full rank exactly when `tau` is.
    pub fn singleton(tau: DensityMatrix) -> ConvexStateSet {
        ConvexStateSet {
            representative: tau.clone(),
            kind: SetKind::Singleton(tau),
        }
    }

    /// The set `{d_A^-1 1_A (x) sigma_B}`; representative: maximally mixed.
    pub fn identity_simplex(d_a: usize, d_b: usize) -> Result<ConvexStateSet> {
        check_dims(d_a, d_b)?;
        Ok(ConvexStateSet {
            kind: SetKind::IdentitySimplex { d_a, d_b },
            representative: DensityMatrix::maximally_mixed(d_a * d_b),
        })
    }

    /// The set `{tau_A (x) sigma_B}` for a fixed left factor; the
    /// representative `tau_A (x) 1_B / d_B` is full rank iff `tau_A` is.
    pub fn fixed_factor_simplex(tau_a: DensityMatrix, d_b: usize) -> Result<ConvexStateSet> {
        check_dims(tau_a.dim(), d_b)?;
        let unif = identity(d_b) * Complex64::new(1.0 / d_b as f64, 0.0);
        let rep = DensityMatrix::from_matrix(kron(tau_a.matrix(), &unif))?;
        Ok(ConvexStateSet {
            kind: SetKind::FixedFactorSimplex { tau_a, d_b },
            representative: rep,
        })
    }

    /// The product states `{sigma_A (x) sigma_B}`. Flagged non-convex: the
    /// convex-set optimizer rejects it, the alternating mutual-information
    /// optimizer consumes it.
    pub fn product_simplex(d_a: usize, d_b: usize) -> Result<ConvexStateSet> {
        check_dims(d_a, d_b)?;
        Ok(ConvexStateSet {
            kind: SetKind::ProductSimplex { d_a, d_b },
            representative: DensityMatrix::maximally_mixed(d_a * d_b),
        })
    }

    /// The separable states (convex hull of pure products).
    pub fn separable_hull(d_a: usize, d_b: usize) -> Result<ConvexStateSet> {
        check_dims(d_a, d_b)?;
        Ok(ConvexStateSet {
            kind: SetKind::SeparableHull { d_a, d_b },
            representative: DensityMatrix::maximally_mixed(d_a * d_b),
        })
    }

    pub fn kind(&self) -> &SetKind {
        &self.kind
    }

    /// The stored full-rank member; starting point of every optimization.
    pub fn representative(&self) -> &DensityMatrix {
        &self.representative
    }

    /// False only for the product-state set.
    pub fn is_convex(&self) -> bool {
        !matches!(self.kind, SetKind::ProductSimplex { .. })
    }

    /// Dimension of the full space the members live on.
    pub fn dim(&self) -> usize {
        self.representative.dim()
    }
}

/// Mixes toward the maximally mixed state at weight `w`.
fn mix_interior(sigma: &CMatrix, w: f64) -> CMatrix {
    let d = sigma.nrows();
    sigma * Complex64::new(1.0 - w, 0.0) + identity(d) * Complex64::new(w / d as f64, 0.0)
}

fn normalize_trace(m: &CMatrix) -> CMatrix {
    let t = trace_re(m);
    m * Complex64::new(1.0 / t, 0.0)
}

fn column(v: &CMatrix, k: usize) -> CMatrix {
    let d = v.nrows();
    CMatrix::from_fn(d, 1, |i, _| v[(i, k)])
}

/// How the optimized factor sits inside the full space.
#[derive(Clone)]
enum Embed {
    /// `sigma -> fixed (x) sigma`.
    KronLeft(CMatrix),
    /// `sigma -> sigma (x) fixed`.
    KronRight(CMatrix),
}

impl Embed {
    fn apply(&self, sigma: &CMatrix) -> CMatrix {
        match self {
            Embed::KronLeft(l) => kron(l, sigma),
            Embed::KronRight(r) => kron(sigma, r),
        }
    }
}

struct Descent {
    value: f64,
    sigma: CMatrix,
    converged: bool,
    iterations: usize,
    gap: f64,
}

/// Mirror-descent minimization of `alpha`-divergence from `rho` over one
/// embedded simplex factor.
struct SimplexMin<'a> {
    rho: &'a DensityMatrix,
    alpha: Alpha,
    embed: Embed,
    cfg: &'a OptimizerConfig,
}

impl SimplexMin<'_> {
    /// Divergence at the interior-mixed embedded candidate; the exact value
    /// at a feasible member, hence a true upper bound on the infimum.
    fn objective(&self, sigma: &CMatrix) -> Result<f64> {
        let tau = self.embed.apply(&mix_interior(sigma, INTERIOR_MIX));
        d_sandwiched(self.rho, &tau, self.alpha)
    }

    fn objective_or_inf(&self, sigma: &CMatrix) -> f64 {
        self.objective(sigma).unwrap_or(f64::INFINITY)
    }

    /// Finite-difference gradient in the eigenbasis of the current iterate,
    /// with per-direction steps clamped so every probe stays feasible.
    fn gradient(&self, sigma: &CMatrix, spec: &Spectrum) -> CMatrix {
        let d = sigma.nrows();
        let lam: Vec<f64> = spec.eigenvalues.iter().map(|&l| l.max(0.0)).collect();
        let v = &spec.eigenvectors;
        let inv_sqrt2 = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        let mut g = CMatrix::zeros(d, d);
        for i in 0..d {
            let vi = column(v, i);
            for j in i..d {
                let h = (0.5 * (lam[i] * lam[j]).sqrt()).clamp(PROBE_FLOOR, PROBE_STEP);
                let vj = column(v, j);
                let mut dirs: Vec<CMatrix> = Vec::with_capacity(2);
                if i == j {
                    dirs.push(&vi * vi.adjoint());
                } else {
                    let up = &vi * vj.adjoint();
                    let lo = &vj * vi.adjoint();
                    dirs.push((&up + &lo) * inv_sqrt2);
                    dirs.push((up * Complex64::i() - lo * Complex64::i()) * inv_sqrt2);
                }
                for e in dirs {
                    let hc = Complex64::new(h, 0.0);
                    let fp = self.objective_or_inf(&(sigma + &e * hc));
                    let fm = self.objective_or_inf(&(sigma - &e * hc));
                    if fp.is_finite() && fm.is_finite() {
                        g += e * Complex64::new((fp - fm) / (2.0 * h), 0.0);
                    }
                }
            }
        }
        hermitize(&g)
    }

    /// One exponentiated-gradient descent from `sigma0`.
    fn descend(&self, sigma0: &CMatrix) -> Result<Descent> {
        let d = sigma0.nrows();
        let mut sigma = normalize_trace(sigma0);
        let mut value = self.objective(&sigma)?;
        let mut eta = 1.0f64;
        let mut stall = 0usize;
        let mut iterations = 0usize;
        let mut converged = false;
        let mut gap = f64::INFINITY;
        while iterations < self.cfg.max_iterations {
            iterations += 1;
            let spec = herm_eig_matrix(&sigma);
            let mut grad = self.gradient(&sigma, &spec);
            // The exp-update ignores multiples of the identity; removing
            // the trace component keeps step sizes well scaled.
            let shift = Complex64::new(trace_re(&grad) / d as f64, 0.0);
            grad -= identity(d) * shift;
            if grad.norm() < 1e-13 {
                converged = true;
                gap = 0.0;
                break;
            }
            let lmax = spec.lambda_max().max(1e-300);
            let logs = spec.apply(|l| l.max(lmax * 1e-20).ln());
            let mut accepted = false;
            let mut drop = 0.0;
            for _ in 0..70 {
                let step = &logs - &grad * Complex64::new(eta, 0.0);
                let sspec = herm_eig_matrix(&step);
                let smax = sspec.lambda_max();
                let cand = normalize_trace(&sspec.apply(|s| (s - smax).exp()));
                let fc = self.objective_or_inf(&cand);
                if fc < value - 1e-14 * value.abs().max(1.0) {
                    drop = value - fc;
                    sigma = cand;
                    value = fc;
                    eta = (eta * 1.5).min(1e4);
                    accepted = true;
                    break;
                }
                eta *= 0.25;
                if eta < 1e-16 {
                    break;
                }
            }
            if !accepted {
                // No improvement along the gradient at any step size:
                // first-order stationary up to probe noise.
                converged = true;
                gap = 0.0;
                break;
            }
            gap = drop;
            if drop < self.cfg.tolerance * value.abs().max(1.0) {
                stall += 1;
                if stall >= 3 {
                    converged = true;
                    break;
                }
            } else {
                stall = 0;
            }
        }
        Ok(Descent {
            value,
            sigma,
            converged,
            iterations,
            gap,
        })
    }

    /// Best descent over the given starting points; ties keep the earliest.
    fn run(&self, inits: Vec<CMatrix>) -> Result<OptimizerOutcome> {
        let results = map_collect(inits, |s| self.descend(&s));
        let mut best: Option<Descent> = None;
        for r in results {
            let ds = r?;
            let better = match &best {
                None => true,
                Some(b) => ds.value < b.value,
            };
            if better {
                best = Some(ds);
            }
        }
        let b = best.ok_or_else(|| Error::NonConvergence("no restart finished".into()))?;
        let tau = self.embed.apply(&mix_interior(&b.sigma, INTERIOR_MIX));
        Ok(OptimizerOutcome {
            value: b.value,
            witness: DensityMatrix::from_matrix(tau)?,
            converged: b.converged,
            iterations: b.iterations,
            gap: b.gap,
        })
    }
}

/// Builds the restart list: uniform, then the warm start, then seeded
/// random full-rank states, truncated to `cfg.restarts` entries.
fn restart_points(d: usize, warm: Option<CMatrix>, cfg: &OptimizerConfig) -> Result<Vec<CMatrix>> {
    let mut inits = vec![identity(d) * Complex64::new(1.0 / d as f64, 0.0)];
    if let Some(w) = warm {
        inits.push(w);
    }
    let mut rng = seeded_rng(cfg.seed ^ 0x9e37_79b9_7f4a_7c15);
    while inits.len() < cfg.restarts {
        inits.push(random_density_with(d, d, &mut rng)?.matrix().clone());
    }
    inits.truncate(cfg.restarts.max(1));
    Ok(inits)
}

fn simplex_opt(
    rho: &DensityMatrix,
    alpha: Alpha,
    embed: Embed,
    d_opt: usize,
    warm: Option<CMatrix>,
    cfg: &OptimizerConfig,
) -> Result<OptimizerOutcome> {
    let prob = SimplexMin {
        rho,
        alpha,
        embed,
        cfg,
    };
    prob.run(restart_points(d_opt, warm, cfg)?)
}

/// Minimal sandwiched divergence from `rho` to the convex set, with the
/// achieving member as witness. Singletons evaluate directly; the simplex
/// kinds run mirror descent; the separable hull runs Frank-Wolfe. The
/// non-convex product kind is rejected (see [`mutual_info_up`]).
pub fn d_alpha_to_set(
    rho: &DensityMatrix,
    set: &ConvexStateSet,
    alpha: Alpha,
    cfg: &OptimizerConfig,
) -> Result<OptimizerOutcome> {
    cfg.validate()?;
    if rho.dim() != set.dim() {
        return Err(Error::Dimension(format!(
            "state dimension {} does not match set dimension {}",
            rho.dim(),
            set.dim()
        )));
    }
    match set.kind() {
        SetKind::Singleton(tau) => Ok(OptimizerOutcome {
            value: d_sandwiched(rho, tau.matrix(), alpha)?,
            witness: tau.clone(),
            converged: true,
            iterations: 0,
            gap: 0.0,
        }),
        SetKind::IdentitySimplex { d_a, d_b } => {
            let fixed = identity(*d_a) * Complex64::new(1.0 / *d_a as f64, 0.0);
            let warm = partial_trace_matrix(rho.matrix(), &[*d_a, *d_b], 0)?;
            simplex_opt(rho, alpha, Embed::KronLeft(fixed), *d_b, Some(warm), cfg)
        }
        SetKind::FixedFactorSimplex { tau_a, d_b } => {
            let d_a = tau_a.dim();
            let warm = partial_trace_matrix(rho.matrix(), &[d_a, *d_b], 0)?;
            simplex_opt(
                rho,
                alpha,
                Embed::KronLeft(tau_a.matrix().clone()),
                *d_b,
                Some(warm),
                cfg,
            )
        }
        SetKind::ProductSimplex { .. } => Err(Error::Domain(
            "product-state set is not convex; use the mutual-information optimizer".into(),
        )),
        SetKind::SeparableHull { d_a, d_b } => separable_min(rho, *d_a, *d_b, alpha, cfg),
    }
}

fn bipartite_dims(rho: &PartitionedState) -> Result<(usize, usize)> {
    match rho.dims() {
        [a, b] => Ok((*a, *b)),
        other => Err(Error::Dimension(format!(
            "expected a bipartition, got {} factors",
            other.len()
        ))),
    }
}

/// Optimized conditional entropy of the first factor given the second,
/// through the minimal-divergence identity at the identity simplex:
/// `log d_A` minus the divergence to `{d_A^-1 1_A (x) sigma_B}`.
pub fn cond_entropy_up(rho: &PartitionedState, alpha: Alpha) -> Result<f64> {
    cond_entropy_up_with(rho, alpha, &OptimizerConfig::default())
}

/// [`cond_entropy_up`] with explicit engine configuration.
pub fn cond_entropy_up_with(
    rho: &PartitionedState,
    alpha: Alpha,
    cfg: &OptimizerConfig,
) -> Result<f64> {
    Ok(cond_entropy_up_outcome(rho, alpha, cfg)?.value)
}

/// [`cond_entropy_up`] returning the full optimizer outcome; the `value`
/// field is the conditional entropy itself, the witness the achieving
/// second factor of the identity simplex.
pub fn cond_entropy_up_outcome(
    rho: &PartitionedState,
    alpha: Alpha,
    cfg: &OptimizerConfig,
) -> Result<OptimizerOutcome> {
    let (d_a, d_b) = bipartite_dims(rho)?;
    let set = ConvexStateSet::identity_simplex(d_a, d_b)?;
    let mut out = d_alpha_to_set(rho.state(), &set, alpha, cfg)?;
    out.value = (d_a as f64).ln() - out.value;
    Ok(out)
}

/// Non-variational conditional entropy: minus the divergence against
/// `1_A (x) rho_B` (no optimization). Never exceeds [`cond_entropy_up`].
pub fn cond_entropy_nonvar(rho: &PartitionedState, alpha: Alpha) -> Result<f64> {
    let (d_a, _) = bipartite_dims(rho)?;
    let rho_b = rho.partial_trace(0)?;
    let target = kron(&identity(d_a), rho_b.matrix());
    Ok(-d_sandwiched(rho.state(), &target, alpha)?)
}

fn clamp_tiny_negative(v: f64) -> f64 {
    if v < 0.0 && v > -1e-9 {
        0.0
    } else {
        v
    }
}

/// Optimized mutual information: double infimum of the divergence over
/// product states, by alternating minimization with restarts. Returns the
/// full outcome; see [`mutual_info_up`] for the plain value.
pub fn mutual_info_up_outcome(
    rho: &PartitionedState,
    alpha: Alpha,
    cfg: &OptimizerConfig,
) -> Result<OptimizerOutcome> {
    cfg.validate()?;
    let (d_a, d_b) = bipartite_dims(rho)?;
    let rho_a = rho.partial_trace(1)?.matrix().clone();
    let rho_b = rho.partial_trace(0)?.matrix().clone();
    let mut rng = seeded_rng(cfg.seed ^ 0x2545_f491_4f6c_dd1d);
    let mut best: Option<OptimizerOutcome> = None;
    for restart in 0..cfg.restarts {
        let (mut sa, mut sb) = if restart == 0 {
            (rho_a.clone(), rho_b.clone())
        } else {
            (
                random_density_with(d_a, d_a, &mut rng)?.matrix().clone(),
                random_density_with(d_b, d_b, &mut rng)?.matrix().clone(),
            )
        };
        let mut value = f64::INFINITY;
        let mut iterations = 0usize;
        let mut converged = false;
        let mut gap = f64::INFINITY;
        for _round in 0..50 {
            let prob_b = SimplexMin {
                rho: rho.state(),
                alpha,
                embed: Embed::KronLeft(mix_interior(&sa, INTERIOR_MIX)),
                cfg,
            };
            let db = prob_b.descend(&sb)?;
            sb = db.sigma;
            let prob_a = SimplexMin {
                rho: rho.state(),
                alpha,
                embed: Embed::KronRight(mix_interior(&sb, INTERIOR_MIX)),
                cfg,
            };
            let da = prob_a.descend(&sa)?;
            sa = da.sigma;
            iterations += db.iterations + da.iterations;
            let drop = value - da.value;
            value = da.value;
            if drop < cfg.tolerance * value.abs().max(1.0) {
                converged = true;
                gap = drop.max(0.0);
                break;
            }
        }
        let better = match &best {
            None => true,
            Some(b) => value < b.value,
        };
        if better {
            let tau = kron(&mix_interior(&sa, INTERIOR_MIX), &mix_interior(&sb, INTERIOR_MIX));
            best = Some(OptimizerOutcome {
                value: clamp_tiny_negative(value),
                witness: DensityMatrix::from_matrix(tau)?,
                converged,
                iterations,
                gap,
            });
        }
    }
    best.ok_or_else(|| Error::NonConvergence("no restart finished".into()))
}

/// Optimized mutual information (value only); nonnegative.
pub fn mutual_info_up(rho: &PartitionedState, alpha: Alpha, cfg: &OptimizerConfig) -> Result<f64> {
    Ok(mutual_info_up_outcome(rho, alpha, cfg)?.value)
}

/// Splits a tripartition (A, B, C) into the two bipartitions entering
/// conditional mutual informations: (C | B) and (C | AB).
fn cmi_parts(rho: &PartitionedState) -> Result<(PartitionedState, PartitionedState)> {
    let (d_a, d_b) = match rho.dims() {
        [a, b, _] => (*a, *b),
        other => {
            return Err(Error::Dimension(format!(
                "expected a tripartition, got {} factors",
                other.len()
            )))
        }
    };
    let bc = rho.partial_trace_partitioned(0)?;
    let cb = bc.permute_factors(&[1, 0])?;
    let cab3 = rho.permute_factors(&[2, 0, 1])?;
    let d_c = cab3.dims()[0];
    let cab = PartitionedState::new(cab3.state().clone(), vec![d_c, d_a * d_b])?;
    Ok((cb, cab))
}

/// Optimized conditional mutual information of (A, B, C): the difference
/// of optimized conditional entropies of C given B and C given AB.
pub fn cmi_up(rho: &PartitionedState, alpha: Alpha) -> Result<f64> {
    cmi_up_with(rho, alpha, &OptimizerConfig::default())
}

/// [`cmi_up`] with explicit engine configuration.
pub fn cmi_up_with(rho: &PartitionedState, alpha: Alpha, cfg: &OptimizerConfig) -> Result<f64> {
    let (cb, cab) = cmi_parts(rho)?;
    Ok(cond_entropy_up_with(&cb, alpha, cfg)? - cond_entropy_up_with(&cab, alpha, cfg)?)
}

/// [`cmi_up`] returning the value together with the two conditional
/// entropy outcomes it is the difference of: `(C | B)` first, `(C | AB)`
/// second.
pub fn cmi_up_outcomes(
    rho: &PartitionedState,
    alpha: Alpha,
    cfg: &OptimizerConfig,
) -> Result<(f64, OptimizerOutcome, OptimizerOutcome)> {
    let (cb, cab) = cmi_parts(rho)?;
    let out_cb = cond_entropy_up_outcome(&cb, alpha, cfg)?;
    let out_cab = cond_entropy_up_outcome(&cab, alpha, cfg)?;
    Ok((out_cb.value - out_cab.value, out_cb, out_cab))
}

/// Non-variational conditional mutual information: the same difference
/// with non-variational conditional entropies; no optimization involved.
pub fn cmi_nonvar(rho: &PartitionedState, alpha: Alpha) -> Result<f64> {
    let (cb, cab) = cmi_parts(rho)?;
    Ok(cond_entropy_nonvar(&cb, alpha)? - cond_entropy_nonvar(&cab, alpha)?)
}

/// Generalized mutual information: infimum of the divergence against
/// `tau_A (x) sigma_B` over `sigma_B`, for a fixed left factor whose
/// kernel must not cut into the left marginal of `rho`.
pub fn gen_mutual_info_outcome(
    rho: &PartitionedState,
    tau_a: &DensityMatrix,
    alpha: Alpha,
    cfg: &OptimizerConfig,
) -> Result<OptimizerOutcome> {
    let (d_a, d_b) = bipartite_dims(rho)?;
    if tau_a.dim() != d_a {
        return Err(Error::Dimension(format!(
            "left factor is {}-dimensional, state expects {}",
            tau_a.dim(),
            d_a
        )));
    }
    let rho_a = rho.partial_trace(1)?;
    if !kernel_included(tau_a.matrix(), rho_a.matrix()) {
        return Err(Error::Kernel(
            "fixed left factor must dominate the left marginal's support".into(),
        ));
    }
    let set = ConvexStateSet::fixed_factor_simplex(tau_a.clone(), d_b)?;
    d_alpha_to_set(rho.state(), &set, alpha, cfg)
}

/// Generalized mutual information (value only).
pub fn gen_mutual_info(
    rho: &PartitionedState,
    tau_a: &DensityMatrix,
    alpha: Alpha,
    cfg: &OptimizerConfig,
) -> Result<f64> {
    Ok(gen_mutual_info_outcome(rho, tau_a, alpha, cfg)?.value)
}

/// Infinite-order entropic quantities served by the same engine through
/// the max-divergence objective.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InfOrderQuantity {
    /// Min-conditional entropy of A given B (bipartite input).
    MinCondEntropy,
    /// Max-mutual information (bipartite input).
    MaxMutualInfo,
    /// Max-conditional mutual information (tripartite input).
    MaxCmi,
}

impl std::fmt::Display for InfOrderQuantity {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            InfOrderQuantity::MinCondEntropy => write!(f, "min-cond-entropy"),
            InfOrderQuantity::MaxMutualInfo => write!(f, "max-mutual-info"),
            InfOrderQuantity::MaxCmi => write!(f, "max-cmi"),
        }
    }
}

impl std::str::FromStr for InfOrderQuantity {
    type Err = Error;

    fn from_str(s: &str) -> Result<InfOrderQuantity> {
        match s {
            "min-cond-entropy" => Ok(InfOrderQuantity::MinCondEntropy),
            "max-mutual-info" => Ok(InfOrderQuantity::MaxMutualInfo),
            "max-cmi" => Ok(InfOrderQuantity::MaxCmi),
            other => Err(Error::Parse(format!("unknown infinite-order quantity `{other}`"))),
        }
    }
}

/// Evaluates the requested infinite-order quantity.
pub fn inf_order_quantities(
    rho: &PartitionedState,
    which: InfOrderQuantity,
    cfg: &OptimizerConfig,
) -> Result<f64> {
    match which {
        InfOrderQuantity::MinCondEntropy => cond_entropy_up_with(rho, Alpha::INF, cfg),
        InfOrderQuantity::MaxMutualInfo => mutual_info_up(rho, Alpha::INF, cfg),
        InfOrderQuantity::MaxCmi => cmi_up_with(rho, Alpha::INF, cfg),
    }
}

// ---------------------------------------------------------------------------
// Separable-hull Frank-Wolfe.
// ---------------------------------------------------------------------------

/// Divided-difference (Daleckii-Krein) adjoint: returns `B` such that
/// `tr[M d(phi(tau))[H]] = tr[B H]` for Hermitian `M` and directions `H`,
/// in terms of tau's spectrum.
fn dk_adjoint(
    spec: &Spectrum,
    m: &CMatrix,
    phi: &dyn Fn(f64) -> f64,
    dphi: &dyn Fn(f64) -> f64,
) -> CMatrix {
    let v = &spec.eigenvectors;
    let t = &spec.eigenvalues;
    let d = t.len();
    let scale = spec.lambda_max().abs().max(1e-300);
    let mt = v.adjoint() * m * v;
    let mut b = CMatrix::zeros(d, d);
    for i in 0..d {
        for j in 0..d {
            let dd = if (t[i] - t[j]).abs() > 1e-10 * scale {
                (phi(t[i]) - phi(t[j])) / (t[i] - t[j])
            } else {
                dphi(0.5 * (t[i] + t[j]))
            };
            b[(i, j)] = mt[(i, j)] * Complex64::new(dd, 0.0);
        }
    }
    hermitize(&(v * b * v.adjoint()))
}

/// Euclidean gradient of `tau -> D_alpha(rho || tau)` at a positive
/// definite `tau`.
fn divergence_gradient(rho: &CMatrix, tau: &CMatrix, alpha: Alpha) -> Result<CMatrix> {
    let spec = herm_eig_matrix(tau);
    if let Some(a) = alpha.finite() {
        let c = (1.0 - a) / (2.0 * a);
        let w = power_from_spectrum(&spec, c);
        let s = hermitize(&(&w * rho * &w));
        let sspec = herm_eig_matrix(&s);
        let cut = crate::linalg::kernel_cutoff(sspec.lambda_max());
        let q: f64 = sspec
            .eigenvalues
            .iter()
            .filter(|&&l| l > cut)
            .map(|&l| l.powf(a))
            .sum();
        if !(q > 0.0) {
            return Err(Error::Domain("gradient: vanishing trace functional".into()));
        }
        let gp = power_from_spectrum(&sspec, a - 1.0) * Complex64::new(a, 0.0);
        let m = hermitize(&(rho * &w * &gp + &gp * &w * rho));
        let b = dk_adjoint(&spec, &m, &|x| x.powf(c), &|x| c * x.powf(c - 1.0));
        Ok(b * Complex64::new(1.0 / ((a - 1.0) * q), 0.0))
    } else if alpha.is_one() {
        // Gradient of -tr[rho ln tau].
        Ok(dk_adjoint(&spec, rho, &|x| x.ln(), &|x| 1.0 / x) * Complex64::new(-1.0, 0.0))
    } else {
        // Max-divergence: log of the top eigenvalue of the sandwich.
        let w = power_from_spectrum(&spec, -0.5);
        let a_op = hermitize(&(&w * rho * &w));
        let aspec = herm_eig_matrix(&a_op);
        let lmax = aspec.lambda_max();
        if !(lmax > 0.0) {
            return Err(Error::Domain("gradient: vanishing sandwich".into()));
        }
        let v0 = column(&aspec.eigenvectors, 0);
        let proj = &v0 * v0.adjoint();
        let m = hermitize(&(rho * &w * &proj + &proj * &w * rho));
        let b = dk_adjoint(&spec, &m, &|x| x.powf(-0.5), &|x| -0.5 * x.powf(-1.5));
        Ok(b * Complex64::new(1.0 / lmax, 0.0))
    }
}

fn random_unit(d: usize, rng: &mut rand_chacha::ChaCha12Rng) -> CMatrix {
    let g = random_ginibre(d, 1, rng);
    let n = g.norm();
    g * Complex64::new(1.0 / n, 0.0)
}

/// `<a (x) b | G | a (x) b>` contraction over the left factor: returns the
/// d_B x d_B matrix `M_b[j, l] = sum_{i, k} conj(a_i) G[(i j), (k l)] a_k`.
fn contract_left(g: &CMatrix, a: &CMatrix, d_a: usize, d_b: usize) -> CMatrix {
    CMatrix::from_fn(d_b, d_b, |j, l| {
        let mut acc = Complex64::new(0.0, 0.0);
        for i in 0..d_a {
            for k in 0..d_a {
                acc += a[(i, 0)].conj() * g[(i * d_b + j, k * d_b + l)] * a[(k, 0)];
            }
        }
        acc
    })
}

fn contract_right(g: &CMatrix, b: &CMatrix, d_a: usize, d_b: usize) -> CMatrix {
    CMatrix::from_fn(d_a, d_a, |i, k| {
        let mut acc = Complex64::new(0.0, 0.0);
        for j in 0..d_b {
            for l in 0..d_b {
                acc += b[(j, 0)].conj() * g[(i * d_b + j, k * d_b + l)] * b[(l, 0)];
            }
        }
        acc
    })
}

fn min_eig_pair(m: &CMatrix) -> (CMatrix, f64) {
    let spec = herm_eig_matrix(m);
    let last = spec.eigenvalues.len() - 1;
    (column(&spec.eigenvectors, last), spec.eigenvalues[last])
}

/// Linear minimization oracle over pure product states: minimizes
/// `<a (x) b| G |a (x) b>` by alternating power iteration from many seeds
/// (plus one spectral seed from G's bottom eigenvector).
fn product_lmo(
    g: &CMatrix,
    d_a: usize,
    d_b: usize,
    seeds: usize,
    rng: &mut rand_chacha::ChaCha12Rng,
) -> (CMatrix, f64) {
    let mut starts: Vec<CMatrix> = Vec::with_capacity(seeds + 1);
    // Spectral seed: best rank-one factor of G's bottom eigenvector.
    let (bottom, _) = min_eig_pair(g);
    let w = CMatrix::from_fn(d_a, d_b, |i, j| bottom[(i * d_b + j, 0)]);
    let svd = w.svd(true, false);
    if let Some(u) = svd.u {
        starts.push(column(&u, 0));
    }
    for _ in 0..seeds {
        starts.push(random_unit(d_a, rng));
    }
    let mut best: Option<(CMatrix, CMatrix, f64)> = None;
    for mut a in starts {
        let (mut b, mut val) = min_eig_pair(&contract_left(g, &a, d_a, d_b));
        for _ in 0..30 {
            let (na, _) = min_eig_pair(&contract_right(g, &b, d_a, d_b));
            a = na;
            let (nb, nval) = min_eig_pair(&contract_left(g, &a, d_a, d_b));
            b = nb;
            let drop = val - nval;
            val = nval;
            if drop < 1e-13 * val.abs().max(1.0) {
                break;
            }
        }
        let better = match &best {
            None => true,
            Some((_, _, v)) => val < *v,
        };
        if better {
            best = Some((a, b, val));
        }
    }
    let (a, b, val) = best.expect("at least one start");
    let ab = kron(&a, &b);
    (&ab * ab.adjoint(), val)
}

/// Samples the objective along `tau + gamma dir` on a geometric grid and
/// refines the best bracket by ternary search. Returns the best
/// `(gamma, value)` found, which may be `(0, f0)` if nothing improves.
fn segment_search<F: Fn(f64) -> f64>(f: F, gamma_max: f64, f0: f64) -> (f64, f64) {
    let mut best = (0.0, f0);
    let mut g = gamma_max;
    for _ in 0..14 {
        let v = f(g);
        if v < best.1 {
            best = (g, v);
        }
        g *= 0.5;
    }
    if best.0 == 0.0 {
        return best;
    }
    let (mut lo, mut hi) = (best.0 * 0.5, (best.0 * 2.0).min(gamma_max));
    for _ in 0..30 {
        let m1 = lo + (hi - lo) / 3.0;
        let m2 = hi - (hi - lo) / 3.0;
        if f(m1) <= f(m2) {
            hi = m2;
        } else {
            lo = m1;
        }
    }
    let g = 0.5 * (lo + hi);
    let v = f(g);
    if v < best.1 {
        best = (g, v);
    }
    best
}

/// Away-step Frank-Wolfe over the separable hull. Value is the exact
/// divergence at the current (interior-mixed) separable iterate; the gap
/// field carries the last duality-gap estimate.
fn separable_min(
    rho: &DensityMatrix,
    d_a: usize,
    d_b: usize,
    alpha: Alpha,
    cfg: &OptimizerConfig,
) -> Result<OptimizerOutcome> {
    let dim = d_a * d_b;
    if rho.dim() != dim {
        return Err(Error::Dimension(format!(
            "state dimension {} does not match {d_a} x {d_b}",
            rho.dim()
        )));
    }
    if dim > 9 {
        return Err(Error::Domain(
            "separable-distance optimization is limited to total dimension 9".into(),
        ));
    }
    let tau_of = |atoms: &[(CMatrix, f64)]| {
        let mut t = CMatrix::zeros(dim, dim);
        for (m, w) in atoms {
            t += m * Complex64::new(*w, 0.0);
        }
        t
    };
    let eval = |tau: &CMatrix| -> Result<f64> {
        d_sandwiched(rho, &mix_interior(tau, INTERIOR_MIX), alpha)
    };
    // Start from the uniform mixture of the computational product basis.
    let mut atoms: Vec<(CMatrix, f64)> = Vec::with_capacity(dim);
    for i in 0..d_a {
        for j in 0..d_b {
            let mut v = CMatrix::zeros(dim, 1);
            v[(i * d_b + j, 0)] = Complex64::new(1.0, 0.0);
            atoms.push((&v * v.adjoint(), 1.0 / dim as f64));
        }
    }
    let mut tau = tau_of(&atoms);
    let mut value = eval(&tau)?;
    let mut rng = seeded_rng(cfg.seed ^ 0x853c_49e6_748f_ea9b);
    let mut gap = f64::INFINITY;
    let mut converged = false;
    let mut steps = 0usize;
    for _step in 0..200 {
        steps += 1;
        let grad = divergence_gradient(rho.matrix(), &mix_interior(&tau, INTERIOR_MIX), alpha)?;
        let (fw_atom, fw_val) = product_lmo(&grad, d_a, d_b, 50, &mut rng);
        let tau_val = trace_re(&(&grad * &tau));
        gap = tau_val - fw_val;
        if gap <= (cfg.tolerance * 1e3).max(1e-9) * value.abs().max(1.0) {
            converged = true;
            break;
        }
        // Away atom: the active atom the gradient most wants to leave.
        let (away_idx, away_val) = atoms
            .iter()
            .enumerate()
            .filter(|(_, (_, w))| *w > 0.0)
            .map(|(i, (m, _))| (i, trace_re(&(&grad * m))))
            .max_by(|x, y| x.1.partial_cmp(&y.1).expect("finite scores"))
            .expect("atom list is never empty");
        let use_away = (away_val - tau_val) > (tau_val - fw_val) && atoms.len() > 1;
        let (dir, gamma_max) = if use_away {
            let w = atoms[away_idx].1;
            ((&tau - &atoms[away_idx].0), (w / (1.0 - w)).min(1.0))
        } else {
            ((&fw_atom - &tau), 1.0)
        };
        let line = |g: f64| -> f64 {
            let cand = &tau + &dir * Complex64::new(g, 0.0);
            eval(&cand).unwrap_or(f64::INFINITY)
        };
        let (gamma, new_value) = segment_search(line, gamma_max, value);
        if gamma == 0.0 || new_value >= value - 1e-15 * value.abs().max(1.0) {
            // No progress along either direction at this gradient.
            break;
        }
        if use_away {
            for (_, w) in atoms.iter_mut() {
                *w *= 1.0 + gamma;
            }
            atoms[away_idx].1 -= gamma;
        } else {
            for (_, w) in atoms.iter_mut() {
                *w *= 1.0 - gamma;
            }
            atoms.push((fw_atom, gamma));
        }
        atoms.retain(|(_, w)| *w > 1e-14);
        let total: f64 = atoms.iter().map(|(_, w)| w).sum();
        for (_, w) in atoms.iter_mut() {
            *w /= total;
        }
        tau = tau_of(&atoms);
        value = new_value;
    }
    let mut witness = mix_interior(&tau, INTERIOR_MIX);
    // The product of marginals is always feasible; keep it when better.
    let prod = kron(
        &partial_trace_matrix(rho.matrix(), &[d_a, d_b], 1)?,
        &partial_trace_matrix(rho.matrix(), &[d_a, d_b], 0)?,
    );
    if let Ok(fprod) = d_sandwiched(rho, &prod, alpha) {
        if fprod < value {
            value = fprod;
            witness = prod;
        }
    }
    Ok(OptimizerOutcome {
        value: clamp_tiny_negative(value),
        witness: DensityMatrix::from_matrix(witness)?,
        converged,
        iterations: steps,
        gap,
    })
}

/// Minimal divergence from a bipartite state to the separable states
/// (upper bound with duality-gap diagnostic); total dimension at most 9.
pub fn sep_distance_outcome(
    rho: &PartitionedState,
    alpha: Alpha,
    cfg: &OptimizerConfig,
) -> Result<OptimizerOutcome> {
    cfg.validate()?;
    let (d_a, d_b) = bipartite_dims(rho)?;
    separable_min(rho.state(), d_a, d_b, alpha, cfg)
}

/// Separable distance (value only).
pub fn sep_distance(rho: &PartitionedState, alpha: Alpha, cfg: &OptimizerConfig) -> Result<f64> {
    Ok(sep_distance_outcome(rho, alpha, cfg)?.value)
}

// ---------------------------------------------------------------------------
// Grid oracles.
// ---------------------------------------------------------------------------

/// Simplex grid with `res` points per axis for `d` eigenvalues, row-major
/// over the free axes with the last coordinate absorbing the remainder.
fn simplex_grid(d: usize, res: usize) -> Vec<Vec<f64>> {
    match d {
        1 => vec![vec![1.0]],
        2 => (0..res)
            .map(|i| {
                let p = i as f64 / (res - 1) as f64;
                vec![p, 1.0 - p]
            })
            .collect(),
        3 => {
            let mut pts = Vec::with_capacity(res * res);
            for i in 0..res {
                let p1 = i as f64 / (res - 1) as f64;
                for j in 0..res {
                    let p2 = (1.0 - p1) * j as f64 / (res - 1) as f64;
                    pts.push(vec![p1, p2, 1.0 - p1 - p2]);
                }
            }
            pts
        }
        _ => Vec::new(),
    }
}

fn diag_state(u: &CMatrix, p: &[f64]) -> CMatrix {
    let d = p.len();
    let diag = CMatrix::from_fn(d, d, |i, j| {
        if i == j {
            Complex64::new(p[i], 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        }
    });
    hermitize(&(u * diag * u.adjoint()))
}

fn unitary_rotation(h: &CMatrix, angle: f64) -> CMatrix {
    let spec = herm_eig_matrix(h);
    let d = spec.eigenvalues.len();
    let mut scaled = spec.eigenvectors.clone();
    for (j, &l) in spec.eigenvalues.iter().enumerate() {
        let phase = Complex64::new(0.0, angle * l).exp();
        for i in 0..d {
            scaled[(i, j)] *= phase;
        }
    }
    scaled * spec.eigenvectors.adjoint()
}

/// Exhaustive scan plus deterministic shrinking refinement for one
/// embedded simplex factor of dimension at most 3. Ground truth for the
/// mirror-descent engine; structurally independent of it (no gradients).
fn grid_min_embed(
    rho: &DensityMatrix,
    alpha: Alpha,
    embed: Embed,
    d_opt: usize,
    cfg: &OptimizerConfig,
) -> Result<(f64, CMatrix)> {
    if d_opt > 3 {
        return Err(Error::Domain(
            "grid oracle supports optimized factors of dimension at most 3".into(),
        ));
    }
    let prob = SimplexMin {
        rho,
        alpha,
        embed,
        cfg,
    };
    let mut rng = seeded_rng(cfg.seed ^ 0xc4ce_b9fe_1a85_ec53);
    let mut frames = vec![identity(d_opt)];
    for _ in 0..cfg.unitary_samples {
        frames.push(random_unitary(d_opt, &mut rng));
    }
    let pts = simplex_grid(d_opt, cfg.grid_resolution);
    // Stage 1: full scan, parallel over frames.
    let scans = map_collect(frames, |u| {
        let mut local = (f64::INFINITY, 0usize);
        for (k, p) in pts.iter().enumerate() {
            let f = prob.objective_or_inf(&diag_state(&u, p));
            if f < local.0 {
                local = (f, k);
            }
        }
        (local.0, u, local.1)
    });
    let (mut value, mut u, k0) = scans
        .into_iter()
        .min_by(|x, y| x.0.partial_cmp(&y.0).expect("finite objective"))
        .ok_or_else(|| Error::NonConvergence("empty oracle scan".into()))?;
    let mut p = pts[k0].clone();
    // Stage 2: shrinking local refinement in (simplex point, frame).
    let dirs: Vec<CMatrix> = (0..6)
        .map(|_| {
            let h = random_hermitian(d_opt, &mut rng);
            let n = h.norm();
            h * Complex64::new(1.0 / n, 0.0)
        })
        .collect();
    let mut rad_p = 1.0 / (cfg.grid_resolution - 1) as f64;
    let mut rad_u = 0.1;
    for _round in 0..220 {
        let mut improved = false;
        for i in 0..d_opt {
            for sgn in [-1.0, 1.0] {
                let mut cand = p.clone();
                cand[i] = (cand[i] + sgn * rad_p).max(0.0);
                let total: f64 = cand.iter().sum();
                if total <= 0.0 {
                    continue;
                }
                for c in cand.iter_mut() {
                    *c /= total;
                }
                let f = prob.objective_or_inf(&diag_state(&u, &cand));
                if f < value {
                    value = f;
                    p = cand;
                    improved = true;
                }
            }
        }
        for h in &dirs {
            for sgn in [-1.0, 1.0] {
                let u2 = unitary_rotation(h, sgn * rad_u) * &u;
                let f = prob.objective_or_inf(&diag_state(&u2, &p));
                if f < value {
                    value = f;
                    u = u2;
                    improved = true;
                }
            }
        }
        if !improved {
            rad_p *= 0.5;
            rad_u *= 0.5;
            if rad_p < 1e-10 && rad_u < 1e-10 {
                break;
            }
        }
    }
    Ok((value, diag_state(&u, &p)))
}

/// Grid-oracle value of the minimal divergence for the identity and
/// fixed-factor simplex kinds. Independent ground truth for
/// [`d_alpha_to_set`] at optimized-factor dimension at most 3.
pub fn grid_min_simplex(
    rho: &DensityMatrix,
    set: &ConvexStateSet,
    alpha: Alpha,
    cfg: &OptimizerConfig,
) -> Result<f64> {
    cfg.validate()?;
    let (embed, d_b) = match set.kind() {
        SetKind::IdentitySimplex { d_a, d_b } => (
            Embed::KronLeft(identity(*d_a) * Complex64::new(1.0 / *d_a as f64, 0.0)),
            *d_b,
        ),
        SetKind::FixedFactorSimplex { tau_a, d_b } => {
            (Embed::KronLeft(tau_a.matrix().clone()), *d_b)
        }
        _ => {
            return Err(Error::Domain(
                "grid oracle covers the factor-simplex set kinds only".into(),
            ))
        }
    };
    if rho.dim() != set.dim() {
        return Err(Error::Dimension("state/set dimension mismatch".into()));
    }
    Ok(grid_min_embed(rho, alpha, embed, d_b, cfg)?.0)
}

/// Grid-oracle value of the optimized mutual information by alternating
/// full simplex scans over the two factors (each at most 3-dimensional).
/// Independent ground truth for [`mutual_info_up`].
pub fn grid_min_product(
    rho: &PartitionedState,
    alpha: Alpha,
    cfg: &OptimizerConfig,
) -> Result<f64> {
    cfg.validate()?;
    let (d_a, d_b) = bipartite_dims(rho)?;
    let mut sa = rho.partial_trace(1)?.matrix().clone();
    let mut value = f64::INFINITY;
    for _pass in 0..6 {
        let (_, sb) = grid_min_embed(
            rho.state(),
            alpha,
            Embed::KronLeft(mix_interior(&sa, INTERIOR_MIX)),
            d_b,
            cfg,
        )?;
        let (fa, new_sa) = grid_min_embed(
            rho.state(),
            alpha,
            Embed::KronRight(mix_interior(&sb, INTERIOR_MIX)),
            d_a,
            cfg,
        )?;
        sa = new_sa;
        let drop = value - fa;
        value = fa;
        if drop < 1e-9 * value.abs().max(1.0) {
            break;
        }
    }
    Ok(clamp_tiny_negative(value))
}
