//! Weighted operator norms over a convex set of positive weights: the
//! primal family `sup_c ||c^(1/2r) X c^(1/2r)||_p`, its dual map
//! `inf_c ||c^(-1/2r) X c^(-1/2r)||_p'`, and randomized verification of
//! the laws the family is expected to satisfy (Hoelder pairing, dual
//! formula, triangle inequalities, monotonicity).
//!
//! Conventions:
//! - index pairs are validated at construction; the derived exponent r
//!   obeys 1/r = 1/p - 1/q (primal) or 1/r = 1/q - 1/p (dual), with
//!   r = inf when p = q, in which case the weighting drops out and the
//!   plain Schatten norm is returned;
//! - the dual infimum is taken over the interior: weights are mixed with
//!   the full-rank representative on a shrinking schedule
//!   delta in {1e-2, 1e-4, 1e-6, 1e-8, 1e-10} and the minimum across the
//!   schedule is reported; the final point is evaluated at the incumbent
//!   minimizer without further descent (finite-difference probes would
//!   overshoot the interior margin there);
//! - rank-deficient singleton weights use the pseudo-inverse convention
//!   of the power helpers;
//! - optimizers are seeded mirror ascent/descent with restarts; reported
//!   suprema are lower bounds and infima are upper bounds on the truth,
//!   each attained by a feasible weight.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::exec::map_collect;
use crate::linalg::{
    herm_eig_matrix, identity, kron, mat_power_matrix, random_density_with, random_ginibre,
    random_hermitian, schatten_norm, seeded_rng, trace_re, CMatrix, DensityMatrix,
};
use crate::variational::OptimizerConfig;

/// Base finite-difference step for gradients.
const PROBE_STEP: f64 = 1e-6;
/// Smallest admissible finite-difference step.
const PROBE_FLOOR: f64 = 1e-9;
/// Interior mixing schedule for the dual infimum.
const DUAL_DELTAS: [f64; 4] = [1e-2, 1e-4, 1e-6, 1e-8];
/// Final schedule point, evaluated without descent.
const DUAL_DELTA_LAST: f64 = 1e-10;

/// Which side of the duality an index pair parametrizes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IndexVariant {
    /// Ordered pair p <= q; weight exponent +1/2r.
    Primal,
    /// Ordered pair q <= p (conjugates of a primal pair); exponent -1/2r.
    Dual,
}

/// Validated Schatten index pair (p, q) with the derived exponent r.
#[derive(Debug, Clone, Copy)]
pub struct NormIndices {
    p: f64,
    q: f64,
    r: f64,
    variant: IndexVariant,
}

fn check_index(name: &str, v: f64) -> Result<()> {
    if !(v >= 1.0) {
        return Err(Error::Domain(format!("index {name} = {v} must be >= 1")));
    }
    Ok(())
}

fn inv(p: f64) -> f64 {
    if p.is_infinite() {
        0.0
    } else {
        1.0 / p
    }
}

/// Hoelder conjugate: p/(p-1), with 1 and inf swapped.
fn conjugate(p: f64) -> f64 {
    if p.is_infinite() {
        1.0
    } else if p == 1.0 {
        f64::INFINITY
    } else {
        p / (p - 1.0)
    }
}

fn r_from(inv_r: f64) -> f64 {
    if inv_r == 0.0 {
        f64::INFINITY
    } else {
        1.0 / inv_r
    }
}

impl NormIndices {
    /// Primal pair: requires 1 <= p <= q <= inf; r from 1/r = 1/p - 1/q.
    pub fn primal(p: f64, q: f64) -> Result<NormIndices> {
        check_index("p", p)?;
        check_index("q", q)?;
        if !(p <= q) {
            return Err(Error::Domain(format!("primal indices need p <= q, got ({p}, {q})")));
        }
        Ok(NormIndices {
            p,
            q,
            r: r_from(inv(p) - inv(q)),
            variant: IndexVariant::Primal,
        })
    }

    /// Dual pair: requires 1 <= q <= p <= inf; r from 1/r = 1/q - 1/p.
    pub fn dual(p: f64, q: f64) -> Result<NormIndices> {
        check_index("p", p)?;
        check_index("q", q)?;
        if !(q <= p) {
            return Err(Error::Domain(format!("dual indices need q <= p, got ({p}, {q})")));
        }
        Ok(NormIndices {
            p,
            q,
            r: r_from(inv(q) - inv(p)),
            variant: IndexVariant::Dual,
        })
    }

    /// Conjugate pair on the other side of the duality; r is unchanged.
    pub fn dual_of(&self) -> NormIndices {
        let (p, q) = (conjugate(self.p), conjugate(self.q));
        match self.variant {
            IndexVariant::Primal => NormIndices {
                p,
                q,
                r: self.r,
                variant: IndexVariant::Dual,
            },
            IndexVariant::Dual => NormIndices {
                p,
                q,
                r: self.r,
                variant: IndexVariant::Primal,
            },
        }
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn q(&self) -> f64 {
        self.q
    }

    pub fn r(&self) -> f64 {
        self.r
    }

    pub fn variant(&self) -> IndexVariant {
        self.variant
    }

    /// Magnitude of the weight exponent, `1/(2r)`; zero when r = inf.
    fn half_inv_r(&self) -> f64 {
        if self.r.is_infinite() {
            0.0
        } else {
            0.5 / self.r
        }
    }
}

/// Weight sets the norm family ranges over. Every kind except a
/// rank-deficient singleton contains a positive definite member; the
/// stored representative is the uniform one.
#[derive(Debug, Clone)]
pub enum PsdSetKind {
    /// A single fixed weight.
    Singleton(DensityMatrix),
    /// All states of dimension d.
    StateSimplex { d: usize },
    /// All diagonal states of dimension d.
    DiagonalSimplex { d: usize },
    /// Weights `d_A^-1 1_A (x) sigma_B` (the set the conditional-entropy
    /// divergence optimizes over).
    IdentityFactorSimplex { d_a: usize, d_b: usize },
}

/// A compact convex set of PSD weights with its full-rank representative.
#[derive(Debug, Clone)]
pub struct PsdSet {
    kind: PsdSetKind,
    representative: DensityMatrix,
}

impl PsdSet {
    pub fn singleton(tau: DensityMatrix) -> PsdSet {
        PsdSet {
            representative: tau.clone(),
            kind: PsdSetKind::Singleton(tau),
        }
    }

    pub fn states(d: usize) -> Result<PsdSet> {
        if d == 0 {
            return Err(Error::Dimension("weight dimension must be at least 1".into()));
        }
        Ok(PsdSet {
            kind: PsdSetKind::StateSimplex { d },
            representative: DensityMatrix::maximally_mixed(d),
        })
    }

    pub fn diagonal_states(d: usize) -> Result<PsdSet> {
        if d == 0 {
            return Err(Error::Dimension("weight dimension must be at least 1".into()));
        }
        Ok(PsdSet {
            kind: PsdSetKind::DiagonalSimplex { d },
            representative: DensityMatrix::maximally_mixed(d),
        })
    }

    pub fn identity_factor(d_a: usize, d_b: usize) -> Result<PsdSet> {
        if d_a == 0 || d_b == 0 {
            return Err(Error::Dimension("factor dimensions must be at least 1".into()));
        }
        Ok(PsdSet {
            kind: PsdSetKind::IdentityFactorSimplex { d_a, d_b },
            representative: DensityMatrix::maximally_mixed(d_a * d_b),
        })
    }

    pub fn kind(&self) -> &PsdSetKind {
        &self.kind
    }

    pub fn representative(&self) -> &DensityMatrix {
        &self.representative
    }

    pub fn dim(&self) -> usize {
        self.representative.dim()
    }

    /// Dimension of the free optimization factor.
    fn opt_dim(&self) -> usize {
        match &self.kind {
            PsdSetKind::Singleton(t) => t.dim(),
            PsdSetKind::StateSimplex { d } | PsdSetKind::DiagonalSimplex { d } => *d,
            PsdSetKind::IdentityFactorSimplex { d_b, .. } => *d_b,
        }
    }

    fn diagonal_only(&self) -> bool {
        matches!(self.kind, PsdSetKind::DiagonalSimplex { .. })
    }

    /// Maps a free factor to the full weight.
    fn embed(&self, sigma: &CMatrix) -> CMatrix {
        match &self.kind {
            PsdSetKind::IdentityFactorSimplex { d_a, .. } => {
                kron(&(identity(*d_a) * Complex64::new(1.0 / *d_a as f64, 0.0)), sigma)
            }
            _ => sigma.clone(),
        }
    }
}

fn normalize_trace(m: &CMatrix) -> CMatrix {
    m * Complex64::new(1.0 / trace_re(m), 0.0)
}

/// `c^s X c^s` with the pseudo-inverse power convention; exponent zero is
/// treated as identity weighting (the set value is approached through
/// positive definite members).
fn weighted(x: &CMatrix, c: &CMatrix, s: f64) -> CMatrix {
    if s == 0.0 {
        return x.clone();
    }
    let w = mat_power_matrix(c, s);
    &w * x * &w
}

fn column(v: &CMatrix, k: usize) -> CMatrix {
    CMatrix::from_fn(v.nrows(), 1, |i, _| v[(i, k)])
}

/// One mirror run minimizing `score` over the state simplex (optionally
/// restricted to diagonal iterates). `score` may return non-finite values
/// off the feasible set; they are treated as rejections.
fn mirror_descend<F: Fn(&CMatrix) -> f64>(
    score: &F,
    sigma0: &CMatrix,
    diag_only: bool,
    cfg: &OptimizerConfig,
) -> (f64, CMatrix) {
    let finite = |s: &CMatrix| {
        let v = score(s);
        if v.is_finite() {
            v
        } else {
            f64::INFINITY
        }
    };
    let d = sigma0.nrows();
    let mut sigma = normalize_trace(sigma0);
    let mut value = finite(&sigma);
    let mut eta = 1.0f64;
    let mut stall = 0usize;
    let inv_sqrt2 = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    for _iter in 0..cfg.max_iterations {
        let spec = herm_eig_matrix(&sigma);
        let lam: Vec<f64> = spec.eigenvalues.iter().map(|&l| l.max(0.0)).collect();
        let v = &spec.eigenvectors;
        let mut grad = CMatrix::zeros(d, d);
        for i in 0..d {
            let vi = column(v, i);
            for j in i..d {
                if diag_only && i != j {
                    continue;
                }
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
                    let fp = finite(&(&sigma + &e * hc));
                    let fm = finite(&(&sigma - &e * hc));
                    if fp.is_finite() && fm.is_finite() {
                        grad += e * Complex64::new((fp - fm) / (2.0 * h), 0.0);
                    }
                }
            }
        }
        let shift = Complex64::new(trace_re(&grad) / d as f64, 0.0);
        grad -= identity(d) * shift;
        if grad.norm() < 1e-13 {
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
            let fc = finite(&cand);
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
            break;
        }
        if drop < cfg.tolerance * value.abs().max(1.0) {
            stall += 1;
            if stall >= 3 {
                break;
            }
        } else {
            stall = 0;
        }
    }
    (value, sigma)
}

/// Best mirror run over restart points; `maximize` flips the sign. Ties
/// keep the earliest start.
fn mirror_extremize<F: Fn(&CMatrix) -> f64 + Sync>(
    obj: &F,
    maximize: bool,
    inits: Vec<CMatrix>,
    diag_only: bool,
    cfg: &OptimizerConfig,
) -> (f64, CMatrix) {
    let sign = if maximize { -1.0 } else { 1.0 };
    let score = |s: &CMatrix| sign * obj(s);
    let runs = map_collect(inits, |s0| mirror_descend(&score, &s0, diag_only, cfg));
    let mut best: Option<(f64, CMatrix)> = None;
    for (v, s) in runs {
        let better = match &best {
            None => true,
            Some((bv, _)) => v < *bv,
        };
        if better {
            best = Some((v, s));
        }
    }
    let (v, s) = best.expect("at least one start");
    (sign * v, s)
}

/// Restart points on the free simplex: uniform first, then seeded random
/// full-rank states (their diagonals for diagonal-restricted sets).
fn restart_points(d: usize, diag_only: bool, cfg: &OptimizerConfig) -> Result<Vec<CMatrix>> {
    let mut inits = vec![identity(d) * Complex64::new(1.0 / d as f64, 0.0)];
    let mut rng = seeded_rng(cfg.seed ^ 0x1f83_d9ab_fb41_bd6b);
    while inits.len() < cfg.restarts {
        let full = random_density_with(d, d, &mut rng)?.matrix().clone();
        if diag_only {
            inits.push(CMatrix::from_fn(d, d, |i, j| {
                if i == j {
                    Complex64::new(full[(i, i)].re, 0.0)
                } else {
                    Complex64::new(0.0, 0.0)
                }
            }));
        } else {
            inits.push(full);
        }
    }
    Ok(inits)
}

fn check_operand(x: &CMatrix, set: &PsdSet) -> Result<()> {
    if x.nrows() != x.ncols() {
        return Err(Error::Dimension(format!(
            "norm operand must be square, got {}x{}",
            x.nrows(),
            x.ncols()
        )));
    }
    if x.nrows() != set.dim() {
        return Err(Error::Dimension(format!(
            "operand dimension {} does not match weight dimension {}",
            x.nrows(),
            set.dim()
        )));
    }
    Ok(())
}

/// Weighted norm: `sup_c ||c^(1/2r) X c^(1/2r)||_p` over the weight set.
/// The reported value is attained by a feasible weight, hence a lower
/// bound on the supremum.
pub fn c_norm(x: &CMatrix, set: &PsdSet, idx: &NormIndices, cfg: &OptimizerConfig) -> Result<f64> {
    if idx.variant() != IndexVariant::Primal {
        return Err(Error::Domain("weighted norm takes a primal index pair".into()));
    }
    check_operand(x, set)?;
    cfg.validate()?;
    let s = idx.half_inv_r();
    if s == 0.0 {
        return schatten_norm(x, idx.p());
    }
    if let PsdSetKind::Singleton(tau) = set.kind() {
        return schatten_norm(&weighted(x, tau.matrix(), s), idx.p());
    }
    let obj = |sigma: &CMatrix| {
        schatten_norm(&weighted(x, &set.embed(sigma), s), idx.p()).unwrap_or(f64::NAN)
    };
    let inits = restart_points(set.opt_dim(), set.diagonal_only(), cfg)?;
    let (v, _) = mirror_extremize(&obj, true, inits, set.diagonal_only(), cfg);
    Ok(v)
}

fn dual_inner(
    x: &CMatrix,
    set: &PsdSet,
    idx: &NormIndices,
    cfg: &OptimizerConfig,
    flip_exponent: bool,
) -> Result<(f64, CMatrix)> {
    if idx.variant() != IndexVariant::Dual {
        return Err(Error::Domain("dual weighted norm takes a dual index pair".into()));
    }
    check_operand(x, set)?;
    cfg.validate()?;
    let s = if flip_exponent {
        idx.half_inv_r()
    } else {
        -idx.half_inv_r()
    };
    if s == 0.0 {
        return Ok((schatten_norm(x, idx.p())?, set.representative().matrix().clone()));
    }
    if let PsdSetKind::Singleton(tau) = set.kind() {
        let v = schatten_norm(&weighted(x, tau.matrix(), s), idx.p())?;
        return Ok((v, tau.matrix().clone()));
    }
    let rep = set.representative().matrix();
    let weight_at = |sigma: &CMatrix, delta: f64| -> CMatrix {
        let c = set.embed(sigma);
        &c * Complex64::new(1.0 - delta, 0.0) + rep * Complex64::new(delta, 0.0)
    };
    let mut best: Option<(f64, CMatrix)> = None;
    let mut warm: Option<CMatrix> = None;
    for &delta in DUAL_DELTAS.iter() {
        let obj = |sigma: &CMatrix| {
            schatten_norm(&weighted(x, &weight_at(sigma, delta), s), idx.p()).unwrap_or(f64::NAN)
        };
        let inits = match &warm {
            Some(w) => vec![w.clone(), identity(set.opt_dim()) * Complex64::new(1.0 / set.opt_dim() as f64, 0.0)],
            None => restart_points(set.opt_dim(), set.diagonal_only(), cfg)?,
        };
        let (v, sigma) = mirror_extremize(&obj, false, inits, set.diagonal_only(), cfg);
        let better = match &best {
            None => true,
            Some((bv, _)) => v < *bv,
        };
        if better {
            best = Some((v, weight_at(&sigma, delta)));
        }
        warm = Some(sigma);
    }
    // Last schedule point: evaluate the incumbent without further descent.
    if let Some(w) = &warm {
        let c = weight_at(w, DUAL_DELTA_LAST);
        let v = schatten_norm(&weighted(x, &c, s), idx.p())?;
        if best.as_ref().map(|(bv, _)| v < *bv).unwrap_or(true) {
            best = Some((v, c));
        }
    }
    best.ok_or_else(|| Error::NonConvergence("dual schedule produced no value".into()))
}

/// Dual weighted norm: `inf_c ||c^(-1/2r) X c^(-1/2r)||_p` over the
/// interior of the weight set, by the shrinking mixing schedule. The
/// value is attained by a feasible interior weight, hence an upper bound
/// on the infimum.
pub fn c_norm_dual(
    x: &CMatrix,
    set: &PsdSet,
    idx: &NormIndices,
    cfg: &OptimizerConfig,
) -> Result<f64> {
    Ok(dual_inner(x, set, idx, cfg, false)?.0)
}

/// [`c_norm_dual`] together with the minimizing weight.
pub fn c_norm_dual_outcome(
    x: &CMatrix,
    set: &PsdSet,
    idx: &NormIndices,
    cfg: &OptimizerConfig,
) -> Result<(f64, CMatrix)> {
    dual_inner(x, set, idx, cfg, false)
}

/// Independent oracle for the primal norm over diagonal weights of
/// dimension at most 3: exhaustive simplex scan plus shrinking
/// coordinate refinement (no gradients).
pub fn grid_c_norm_diagonal(
    x: &CMatrix,
    idx: &NormIndices,
    cfg: &OptimizerConfig,
) -> Result<f64> {
    if idx.variant() != IndexVariant::Primal {
        return Err(Error::Domain("weighted norm takes a primal index pair".into()));
    }
    cfg.validate()?;
    let d = x.nrows();
    if d != x.ncols() || d == 0 || d > 3 {
        return Err(Error::Domain(
            "diagonal grid oracle supports square operands of dimension 1 to 3".into(),
        ));
    }
    let s = idx.half_inv_r();
    let value_at = |p: &[f64]| -> f64 {
        let c = CMatrix::from_fn(d, d, |i, j| {
            if i == j {
                Complex64::new(p[i], 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            }
        });
        schatten_norm(&weighted(x, &c, s), idx.p()).unwrap_or(f64::NEG_INFINITY)
    };
    let res = cfg.grid_resolution;
    let mut pts: Vec<Vec<f64>> = Vec::new();
    match d {
        1 => pts.push(vec![1.0]),
        2 => {
            for i in 0..res {
                let a = i as f64 / (res - 1) as f64;
                pts.push(vec![a, 1.0 - a]);
            }
        }
        _ => {
            for i in 0..res {
                let a = i as f64 / (res - 1) as f64;
                for j in 0..res {
                    let b = (1.0 - a) * j as f64 / (res - 1) as f64;
                    pts.push(vec![a, b, 1.0 - a - b]);
                }
            }
        }
    }
    let scored = map_collect(pts, |p| (value_at(&p), p));
    let (mut value, mut best) = scored
        .into_iter()
        .max_by(|a, b| a.0.partial_cmp(&b.0).expect("finite norm"))
        .ok_or_else(|| Error::NonConvergence("empty oracle scan".into()))?;
    let mut rad = 1.0 / (res - 1) as f64;
    for _round in 0..200 {
        let mut improved = false;
        for i in 0..d {
            for sgn in [-1.0, 1.0] {
                let mut cand = best.clone();
                cand[i] = (cand[i] + sgn * rad).max(0.0);
                let total: f64 = cand.iter().sum();
                if total <= 0.0 {
                    continue;
                }
                for c in cand.iter_mut() {
                    *c /= total;
                }
                let v = value_at(&cand);
                if v > value {
                    value = v;
                    best = cand;
                    improved = true;
                }
            }
        }
        if !improved {
            rad *= 0.5;
            if rad < 1e-12 {
                break;
            }
        }
    }
    Ok(value)
}

// ---------------------------------------------------------------------------
// Law verification.
// ---------------------------------------------------------------------------

/// Deliberate defect injected into the dual evaluator for negative
/// controls of the law verifier.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DualCorruption {
    /// Honest dual map.
    None,
    /// Weight exponent applied with the wrong sign.
    FlippedExponent,
}

/// Outcome of a randomized law verification run. `violations` name the
/// failing law, the trial, and the numbers involved.
#[derive(Debug, Clone)]
pub struct LawReport {
    /// Trials drawn.
    pub trials: usize,
    /// Individual law checks evaluated.
    pub checks: usize,
    /// Human-readable witnesses of violations beyond slack.
    pub violations: Vec<String>,
}

impl LawReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

impl std::fmt::Display for LawReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "{} checks over {} trials: {}",
            self.checks,
            self.trials,
            if self.passed() {
                "all laws hold".to_string()
            } else {
                format!("{} violation(s)", self.violations.len())
            }
        )
    }
}

fn random_psd(d: usize, rng: &mut rand_chacha::ChaCha12Rng) -> CMatrix {
    let g = random_ginibre(d, d, rng);
    let p = &g * g.adjoint();
    normalize_trace(&p)
}

/// Best Hoelder-pairing witness for `tr[X Y]` over PSD `Y` normalized to
/// unit primal norm: the analytic Schatten maximizer transported through
/// the weight `c_star`, plus `dirs` random PSD directions.
fn witness_sup(
    x: &CMatrix,
    set: &PsdSet,
    idx: &NormIndices,
    c_star: &CMatrix,
    dirs: usize,
    rng: &mut rand_chacha::ChaCha12Rng,
    cfg: &OptimizerConfig,
) -> Result<f64> {
    let didx = idx.dual_of();
    let s = didx.half_inv_r();
    let d = x.nrows();
    let mut candidates: Vec<CMatrix> = Vec::with_capacity(dirs + 1);
    // Analytic candidate: the Schatten-duality maximizer of the inner
    // norm at the best weight found, pulled back through that weight.
    let z = crate::linalg::hermitize(&weighted(x, c_star, -s));
    let pd = didx.p();
    let w = if pd.is_infinite() {
        let spec = herm_eig_matrix(&z);
        let v0 = column(&spec.eigenvectors, 0);
        &v0 * v0.adjoint()
    } else if pd == 1.0 {
        identity(d)
    } else {
        mat_power_matrix(&z, pd - 1.0)
    };
    candidates.push(crate::linalg::hermitize(&weighted(&w, c_star, -s)));
    for _ in 0..dirs {
        candidates.push(random_psd(d, rng));
    }
    let mut sup = 0.0f64;
    for y in candidates {
        let pairing = (x * &y).trace().re;
        if pairing <= 0.0 {
            continue;
        }
        let ny = c_norm(&y, set, idx, cfg)?;
        if ny > 1e-300 {
            sup = sup.max(pairing / ny);
        }
    }
    Ok(sup)
}

/// Lower-bound witness search for the dual formula: returns the best
/// normalized pairing found with `dirs` random directions plus the
/// analytic candidate, together with the dual norm it approximates from
/// below.
pub fn dual_formula_sup(
    x: &CMatrix,
    set: &PsdSet,
    idx: &NormIndices,
    dirs: usize,
    seed: u64,
    cfg: &OptimizerConfig,
) -> Result<(f64, f64)> {
    if idx.variant() != IndexVariant::Primal {
        return Err(Error::Domain("witness search takes the primal index pair".into()));
    }
    let (dual, c_star) = dual_inner(x, set, &idx.dual_of(), cfg, false)?;
    let mut rng = seeded_rng(seed);
    let sup = witness_sup(x, set, idx, &c_star, dirs, &mut rng, cfg)?;
    Ok((sup, dual))
}

/// Randomized verification of the norm laws at stated slack 1e-6:
/// Hoelder pairing, dual-formula witness bound, triangle inequality of
/// the primal norm on general operands and of the dual on PSD operands,
/// absolute homogeneity, and monotonicity of the dual on ordered PSD
/// pairs (slack 1e-9). Violations are reported with witnesses, never
/// asserted away.
pub fn verify_norm_laws(
    set: &PsdSet,
    idx: &NormIndices,
    trials: usize,
    seed: u64,
    cfg: &OptimizerConfig,
) -> Result<LawReport> {
    verify_norm_laws_with(set, idx, trials, seed, cfg, DualCorruption::None)
}

/// [`verify_norm_laws`] with an optional deliberate defect in the dual
/// evaluator; used as a negative control of the verifier itself.
pub fn verify_norm_laws_with(
    set: &PsdSet,
    idx: &NormIndices,
    trials: usize,
    seed: u64,
    cfg: &OptimizerConfig,
    corruption: DualCorruption,
) -> Result<LawReport> {
    if idx.variant() != IndexVariant::Primal {
        return Err(Error::Domain("law verification takes the primal index pair".into()));
    }
    let d = set.dim();
    let didx = idx.dual_of();
    let flip = corruption == DualCorruption::FlippedExponent;
    let dual_eval = |y: &CMatrix| -> Result<(f64, CMatrix)> { dual_inner(y, set, &didx, cfg, flip) };
    let mut rng = seeded_rng(seed);
    let mut violations = Vec::new();
    let mut checks = 0usize;
    let tol = 1e-6f64;
    for t in 0..trials {
        // Hoelder pairing on random Hermitian operands.
        let xh = random_hermitian(d, &mut rng);
        let yh = random_hermitian(d, &mut rng);
        let lhs = (&xh * &yh).trace().re.abs();
        let rhs = c_norm(&xh, set, idx, cfg)? * dual_eval(&yh)?.0;
        checks += 1;
        if lhs > rhs + tol * rhs.abs().max(1.0) {
            violations.push(format!(
                "trial {t}, pairing bound: |tr[X Y]| = {lhs:.9} exceeds {rhs:.9}"
            ));
        }
        // Triangle inequality and homogeneity of the primal norm on
        // general (non-Hermitian) operands.
        let ga = random_ginibre(d, d, &mut rng);
        let gb = random_ginibre(d, d, &mut rng);
        let na = c_norm(&ga, set, idx, cfg)?;
        let nb = c_norm(&gb, set, idx, cfg)?;
        let nab = c_norm(&(&ga + &gb), set, idx, cfg)?;
        checks += 1;
        if nab > na + nb + tol * (na + nb).max(1.0) {
            violations.push(format!(
                "trial {t}, triangle: ||A+B|| = {nab:.9} exceeds {:.9}",
                na + nb
            ));
        }
        let lam = Complex64::new(-1.3, 0.7);
        let nscaled = c_norm(&(&ga * lam), set, idx, cfg)?;
        checks += 1;
        if (nscaled - lam.norm() * na).abs() > tol * (1.0 + nscaled.abs()) {
            violations.push(format!(
                "trial {t}, homogeneity: ||lambda A|| = {nscaled:.9} vs {:.9}",
                lam.norm() * na
            ));
        }
        // Dual triangle and monotonicity on PSD operands.
        let pa = random_psd(d, &mut rng);
        let pb = random_psd(d, &mut rng);
        let (da, ca) = dual_eval(&pa)?;
        let db = dual_eval(&pb)?.0;
        let dab = dual_eval(&(&pa + &pb))?.0;
        checks += 1;
        if dab > da + db + tol * (da + db).max(1.0) {
            violations.push(format!(
                "trial {t}, dual triangle: ||P+Q||* = {dab:.9} exceeds {:.9}",
                da + db
            ));
        }
        checks += 1;
        if da > dab + 1e-9 {
            violations.push(format!(
                "trial {t}, dual monotonicity: ||P||* = {da:.12} exceeds ||P+Q||* = {dab:.12}"
            ));
        }
        // Dual formula: the witness sup must stay below the dual value.
        let sup = witness_sup(&pa, set, idx, &ca, 8, &mut rng, cfg)?;
        checks += 1;
        if sup > da + tol * da.abs().max(1.0) {
            violations.push(format!(
                "trial {t}, dual formula: witness sup {sup:.9} exceeds dual {da:.9}"
            ));
        }
    }
    Ok(LawReport {
        trials,
        checks,
        violations,
    })
}
