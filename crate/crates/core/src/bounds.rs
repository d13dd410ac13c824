//! Closed-form continuity-bound evaluators: the three generic bound
//! families (axiomatic, operator-space, mixed) with their alpha -> 1 and
//! alpha -> infinity limits, per-quantity instantiations, mutual-information
//! and CMI bounds, the almost-convexity error terms and coefficients used by
//! the two-input bounds, Markov-chain certificate bounds, and prior-work
//! baseline bounds for comparison sweeps.
//!
//! Conventions:
//! - all values are in nats; every formula is evaluated in log space with
//!   `ln_1p` wherever the argument has the shape `1 + x` (the inner argument
//!   is `>= 1` on every admissible domain), so bounds stay accurate near
//!   `eps = 0` and never overflow for large alpha or kappa;
//! - `eps` and `delta` are trace-distance bounds in `[0, 1]`; `kappa >= 1`
//!   is the uniform divergence bound `exp(sup D_alpha)` of the target set;
//! - the operator-space family has no finite alpha -> 1 limit: the limit
//!   evaluator returns `+inf` as a first-class sentinel (0 when `eps = 0`);
//! - the mixed family exists only for `alpha > 1`; requesting it below 1 is
//!   a domain error, while its alpha -> 1 limit is finite and exposed;
//! - pure scalar functions throughout; trivially thread-safe.

use crate::divergence::Alpha;
use crate::error::{Error, Result};
use crate::linalg::binary_entropy;

/// Proof strategy behind a generic continuity bound. The declaration order
/// is also the tie-break order used by sweep winner columns.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Approach {
    /// Sub-/superadditivity and joint convexity of the trace functional.
    Axiomatic,
    /// Dual amalgamation-norm triangle inequality.
    OperatorSpace,
    /// Norm route with an additional interpolation step; alpha > 1 only.
    Mixed,
}

impl std::fmt::Display for Approach {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Approach::Axiomatic => write!(f, "axiomatic"),
            Approach::OperatorSpace => write!(f, "operator-space"),
            Approach::Mixed => write!(f, "mixed"),
        }
    }
}

impl std::str::FromStr for Approach {
    type Err = Error;

    fn from_str(s: &str) -> Result<Approach> {
        match s {
            "axiomatic" => Ok(Approach::Axiomatic),
            "operator-space" | "opspace" => Ok(Approach::OperatorSpace),
            "mixed" => Ok(Approach::Mixed),
            other => Err(Error::Parse(format!("unknown approach `{other}`"))),
        }
    }
}

/// Which limit of the order parameter a limit formula refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Limit {
    /// alpha -> 1.
    One,
    /// alpha -> infinity.
    Inf,
}

/// Optimized quantity a generic bound is instantiated for; fixes the
/// uniform divergence bound kappa.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Quantity {
    /// Conditional entropy against `1 tensor sigma_B`; kappa = d_A^2.
    CondEntropy,
    /// Divergence with fixed second argument tau; kappa = 1/m_tau.
    FirstArg,
    /// Divergence of rho against a nearby tau; kappa = 1/m_tau.
    DivergenceBound,
    /// Minimal divergence to the separable states; kappa = min(d_A, d_B).
    SepDistance,
    /// Minimal divergence to `tau_A tensor sigma_B`; kappa = m/m_tau.
    GenMi,
}

impl std::fmt::Display for Quantity {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Quantity::CondEntropy => write!(f, "cond-entropy"),
            Quantity::FirstArg => write!(f, "first-arg"),
            Quantity::DivergenceBound => write!(f, "divergence-bound"),
            Quantity::SepDistance => write!(f, "sep-distance"),
            Quantity::GenMi => write!(f, "gen-mi"),
        }
    }
}

impl std::str::FromStr for Quantity {
    type Err = Error;

    fn from_str(s: &str) -> Result<Quantity> {
        match s {
            "cond-entropy" => Ok(Quantity::CondEntropy),
            "first-arg" => Ok(Quantity::FirstArg),
            "divergence-bound" => Ok(Quantity::DivergenceBound),
            "sep-distance" => Ok(Quantity::SepDistance),
            "gen-mi" => Ok(Quantity::GenMi),
            other => Err(Error::Parse(format!("unknown quantity `{other}`"))),
        }
    }
}

/// Non-variational quantities bounded through the almost-convexity route.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AlaffQuantity {
    /// `|H_alpha(A|B)_rho - H_alpha(A|B)_sigma| <= c(alpha, m, d_A, d_AB) sqrt(eps)`.
    CondEntropyNonVar,
    /// Conditional mutual information; twice the entropy bound at `(d_C, d_ABC)`.
    CmiNonVar,
    /// Trace functional in both arguments, `sqrt(eps)` and `sqrt(delta)` terms.
    QTwoInput,
    /// Divergence in both arguments; prefactored `QTwoInput`.
    DTwoInput,
}

/// Parameter bag for quantity-level bound evaluators. `alpha` and `eps` are
/// always required; the remaining fields are consumed per quantity and
/// reported as domain errors when missing.
#[derive(Debug, Clone)]
pub struct BoundParams {
    /// Order parameter (finite, 1, or infinity).
    pub alpha: Alpha,
    /// Trace-distance bound on the (first) argument pair, in `[0, 1]`.
    pub eps: f64,
    /// Trace-distance bound on the second argument pair (two-input only).
    pub delta: f64,
    /// Explicit uniform divergence bound, for callers that precomputed it.
    pub kappa: Option<f64>,
    /// Dimension of the first tensor factor (or the ambient space for
    /// single-space quantities).
    pub d_a: Option<usize>,
    /// Dimension of the second tensor factor.
    pub d_b: Option<usize>,
    /// Dimension of the third tensor factor.
    pub d_c: Option<usize>,
    /// Smallest non-zero eigenvalue of the fixed second argument, in `(0, 1]`.
    pub m_tau: Option<f64>,
    /// Uniform eigenvalue floor of the input states, in `(0, 1)`.
    pub m_min: Option<f64>,
    /// Free parameter of the Markov certificate proposition.
    pub cert_param: Option<f64>,
    /// Rotation parameter of the rotated recovery map.
    pub t: Option<f64>,
}

impl BoundParams {
    /// Parameter bag with only the universally required fields set.
    pub fn new(alpha: Alpha, eps: f64) -> BoundParams {
        BoundParams {
            alpha,
            eps,
            delta: 0.0,
            kappa: None,
            d_a: None,
            d_b: None,
            d_c: None,
            m_tau: None,
            m_min: None,
            cert_param: None,
            t: None,
        }
    }

    fn req_d_a(&self) -> Result<usize> {
        self.d_a
            .filter(|&d| d >= 1)
            .ok_or_else(|| Error::Domain("bound requires d_A >= 1".into()))
    }

    fn req_d_b(&self) -> Result<usize> {
        self.d_b
            .filter(|&d| d >= 1)
            .ok_or_else(|| Error::Domain("bound requires d_B >= 1".into()))
    }

    fn req_d_c(&self) -> Result<usize> {
        self.d_c
            .filter(|&d| d >= 1)
            .ok_or_else(|| Error::Domain("bound requires d_C >= 1".into()))
    }

    fn req_m_tau(&self) -> Result<f64> {
        match self.m_tau {
            Some(m) if m > 0.0 && m <= 1.0 => Ok(m),
            Some(m) => Err(Error::Domain(format!("m_tau = {m} outside (0, 1]"))),
            None => Err(Error::Domain("bound requires m_tau".into())),
        }
    }

    fn req_m_min(&self) -> Result<f64> {
        match self.m_min {
            Some(m) if m > 0.0 && m < 1.0 => Ok(m),
            Some(m) => Err(Error::Domain(format!("m_min = {m} outside (0, 1)"))),
            None => Err(Error::Domain("bound requires m_min".into())),
        }
    }
}

fn check_eps(eps: f64, name: &str) -> Result<()> {
    if !(0.0..=1.0).contains(&eps) {
        return Err(Error::Domain(format!("{name} = {eps} outside [0, 1]")));
    }
    Ok(())
}

fn check_kappa(kappa: f64) -> Result<()> {
    if !(kappa >= 1.0) || !kappa.is_finite() {
        return Err(Error::Domain(format!("kappa = {kappa} outside [1, inf)")));
    }
    Ok(())
}

/// `ln(1 + exp(big_log) - sub)` for `sub in [0, 1]`, stable when
/// `exp(big_log)` would overflow (large alpha with large kappa).
fn ln_one_plus(big_log: f64, sub: f64) -> f64 {
    if big_log > 700.0 {
        big_log + ((1.0 - sub) * (-big_log).exp()).ln_1p()
    } else {
        (big_log.exp() - sub).ln_1p()
    }
}

/// Generic continuity bound on the minimal divergence to a convex compact
/// set with uniform divergence bound `log(kappa)`, per approach. Symbolic
/// orders dispatch to [`bound_generic_limit`].
pub fn bound_generic(approach: Approach, alpha: Alpha, eps: f64, kappa: f64) -> Result<f64> {
    check_eps(eps, "eps")?;
    check_kappa(kappa)?;
    let a = match alpha.finite() {
        Some(a) => a,
        None if alpha.is_one() => return bound_generic_limit(approach, Limit::One, eps, kappa),
        None => return bound_generic_limit(approach, Limit::Inf, eps, kappa),
    };
    if approach == Approach::Mixed && a < 1.0 {
        return Err(Error::Domain(format!(
            "mixed bound requires alpha > 1, got {a}"
        )));
    }
    if eps == 0.0 {
        return Ok(0.0);
    }
    let lk = kappa.ln();
    let le = eps.ln();
    Ok(match approach {
        Approach::Axiomatic if a < 1.0 => {
            let sub = eps / (1.0 + eps).powf(1.0 - a);
            eps.ln_1p() + ln_one_plus(a * le + (1.0 - a) * lk, sub) / (1.0 - a)
        }
        Approach::Axiomatic => {
            let sub = eps.powf(a) / (1.0 + eps).powf(a - 1.0);
            eps.ln_1p() + ln_one_plus(le + (a - 1.0) * lk, sub) / (a - 1.0)
        }
        Approach::OperatorSpace if a < 1.0 => {
            ln_one_plus(a * le + (1.0 - a) * lk, 0.0) / (1.0 - a)
        }
        Approach::OperatorSpace => {
            a / (a - 1.0) * ln_one_plus(le + (a - 1.0) / a * lk, 0.0)
        }
        Approach::Mixed => {
            let sub = eps.powf((2.0 * a - 1.0) / a) / (1.0 + eps).powf((a - 1.0) / a);
            eps.ln_1p() + a / (a - 1.0) * ln_one_plus(le + (a - 1.0) / a * lk, sub)
        }
    })
}

/// Limiting form of [`bound_generic`] as the order tends to 1 or infinity.
/// The operator-space family diverges at the order-1 limit; that case
/// returns `+inf` (0 when `eps = 0`).
pub fn bound_generic_limit(approach: Approach, limit: Limit, eps: f64, kappa: f64) -> Result<f64> {
    check_eps(eps, "eps")?;
    check_kappa(kappa)?;
    Ok(match (approach, limit) {
        (Approach::Axiomatic | Approach::Mixed, Limit::One) => {
            eps * kappa.ln() + (1.0 + eps) * binary_entropy(eps / (1.0 + eps))?
        }
        (Approach::Axiomatic, Limit::Inf) => eps.ln_1p() + kappa.ln(),
        (Approach::OperatorSpace, Limit::One) => {
            if eps == 0.0 {
                0.0
            } else {
                f64::INFINITY
            }
        }
        (Approach::OperatorSpace, Limit::Inf) => (eps * kappa).ln_1p(),
        // (1 + eps)(1 + eps kappa) - eps^2 = 1 + eps (1 + kappa + eps kappa - eps)
        (Approach::Mixed, Limit::Inf) => (eps * (1.0 + kappa + eps * kappa - eps)).ln_1p(),
    })
}

fn kappa_for_quantity(quantity: Quantity, params: &BoundParams) -> Result<f64> {
    Ok(match quantity {
        Quantity::CondEntropy => {
            let d = params.req_d_a()? as f64;
            d * d
        }
        Quantity::FirstArg | Quantity::DivergenceBound => 1.0 / params.req_m_tau()?,
        Quantity::SepDistance => params.req_d_a()?.min(params.req_d_b()?) as f64,
        Quantity::GenMi => {
            params.req_d_a()?.min(params.req_d_b()?) as f64 / params.req_m_tau()?
        }
    })
}

/// Continuity bound for an optimized quantity, instantiating the generic
/// bound at the quantity's kappa. Availability per regime: for `alpha < 1`
/// the conditional entropy admits the axiomatic approach only, the other
/// quantities additionally admit the operator-space approach, and the mixed
/// approach is never available below 1; symbolic orders evaluate the
/// corresponding limit formulas (operator space at order 1 yields the
/// `+inf` sentinel).
pub fn bound_for_quantity(
    quantity: Quantity,
    approach: Approach,
    params: &BoundParams,
) -> Result<f64> {
    let kappa = kappa_for_quantity(quantity, params)?;
    if let Some(a) = params.alpha.finite() {
        if a < 1.0 {
            if approach == Approach::Mixed {
                return Err(Error::Domain(format!(
                    "mixed bound requires alpha > 1, got {a}"
                )));
            }
            if quantity == Quantity::CondEntropy && approach == Approach::OperatorSpace {
                return Err(Error::Domain(format!(
                    "cond-entropy below order 1 admits the axiomatic bound only, \
                     got operator-space at alpha = {a}"
                )));
            }
        }
    }
    bound_generic(approach, params.alpha, params.eps, kappa)
}

/// Continuity bound for the optimized mutual information (no approach
/// parameter; the proof route is fixed). Symbolic orders dispatch to
/// [`bound_mutual_info_limit`].
pub fn bound_mutual_info(alpha: Alpha, eps: f64, m: usize) -> Result<f64> {
    check_eps(eps, "eps")?;
    if m < 1 {
        return Err(Error::Domain("mutual-information bound requires m >= 1".into()));
    }
    let a = match alpha.finite() {
        Some(a) => a,
        None if alpha.is_one() => return bound_mutual_info_limit(Limit::One, eps, m),
        None => return bound_mutual_info_limit(Limit::Inf, eps, m),
    };
    if eps == 0.0 {
        return Ok(0.0);
    }
    let lm = (m as f64).ln();
    let le = eps.ln();
    let root = eps.powf(1.0 / a);
    Ok(if a < 1.0 {
        let sub = root / (1.0 + root).powf(2.0 * (1.0 - a));
        2.0 * root.ln_1p() + ln_one_plus(a * le + 2.0 * (1.0 - a) * lm, sub) / (1.0 - a)
    } else {
        let sub = eps.powf(a) / (1.0 + root).powf(2.0 * (a - 1.0));
        2.0 * root.ln_1p() + ln_one_plus(le / a + 2.0 * (a - 1.0) * lm, sub) / (a - 1.0)
    })
}

/// Limiting form of [`bound_mutual_info`]: the order-1 limit is the
/// classical-style bound `2 eps log m + 2 (1 + eps) h(eps / (1 + eps))`;
/// the infinite-order form `log(4 m^2)` is eps-independent and no longer a
/// continuity bound.
pub fn bound_mutual_info_limit(limit: Limit, eps: f64, m: usize) -> Result<f64> {
    check_eps(eps, "eps")?;
    if m < 1 {
        return Err(Error::Domain("mutual-information bound requires m >= 1".into()));
    }
    let m = m as f64;
    Ok(match limit {
        Limit::One => 2.0 * eps * m.ln() + 2.0 * (1.0 + eps) * binary_entropy(eps / (1.0 + eps))?,
        Limit::Inf => (4.0 * m * m).ln(),
    })
}

/// Continuity bound for the optimized conditional mutual information:
/// exactly twice the conditional-entropy bound, availability included.
pub fn bound_cmi(approach: Approach, alpha: Alpha, eps: f64, d_a: usize) -> Result<f64> {
    let mut params = BoundParams::new(alpha, eps);
    params.d_a = Some(d_a);
    Ok(2.0 * bound_for_quantity(Quantity::CondEntropy, approach, &params)?)
}

/// Limiting form of [`bound_cmi`]; twice the conditional-entropy limit.
pub fn bound_cmi_limit(approach: Approach, limit: Limit, eps: f64, d_a: usize) -> Result<f64> {
    if d_a < 1 {
        return Err(Error::Domain("bound requires d_A >= 1".into()));
    }
    let d = d_a as f64;
    Ok(2.0 * bound_generic_limit(approach, limit, eps, d * d)?)
}

fn finite_alpha(alpha: Alpha, context: &str) -> Result<f64> {
    alpha
        .finite()
        .ok_or_else(|| Error::Domain(format!("{context} requires a finite order, got {alpha}")))
}

fn check_floor(m: f64, name: &str) -> Result<()> {
    if !(m > 0.0 && m <= 1.0) {
        return Err(Error::Domain(format!("{name} = {m} outside (0, 1]")));
    }
    Ok(())
}

/// Almost-convexity error term `xi(alpha, p, sigma_1, sigma_2)` of the
/// trace functional under mixing with weight `p`, in terms of the smallest
/// non-zero eigenvalues `m1`, `m2` of the two second arguments. Nonnegative
/// below order 1, nonpositive above.
pub fn alaff_xi(alpha: Alpha, p: f64, m1: f64, m2: f64) -> Result<f64> {
    let a = finite_alpha(alpha, "almost-convexity error term")?;
    check_eps(p, "p")?;
    check_floor(m1, "m1")?;
    check_floor(m2, "m2")?;
    if p == 0.0 || p == 1.0 {
        return Ok(0.0);
    }
    let c1 = p + (1.0 - p) / m1;
    let c2 = p / m2 + (1.0 - p);
    Ok(if a < 1.0 {
        -1.0 + p.powf(a) * c1.powf(1.0 - a) + (1.0 - p).powf(a) * c2.powf(1.0 - a)
    } else {
        let t1 = (p - p.powf(a) * c1.powf(1.0 - a)) * m1.powf(1.0 - a);
        let t2 = ((1.0 - p) - (1.0 - p).powf(a) * c2.powf(1.0 - a)) * m2.powf(1.0 - a);
        -t1 - t2
    })
}

/// Monotone envelope of [`alaff_xi`]: the upper estimate `u_alpha(p)` below
/// order 1 (`xi <= u`), the lower estimate `v_alpha(p)` above (`xi >= v`).
pub fn alaff_uv(alpha: Alpha, p: f64, m1: f64, m2: f64) -> Result<f64> {
    let a = finite_alpha(alpha, "almost-convexity envelope")?;
    check_eps(p, "p")?;
    check_floor(m1, "m1")?;
    check_floor(m2, "m2")?;
    let scale = (1.0 - a) * p.sqrt();
    Ok(if a < 1.0 {
        scale * (((1.0 / m1).ln() + 1.0) * (1.0 / m1).powf(1.0 - a)
            + (1.0 / m2 + 1.0) * (1.0 / m2).powf(1.0 - a))
    } else {
        scale * (((1.0 / m1).ln() + 1.0) * m1.powf(1.0 - a)
            + (1.0 / m2 + 1.0) * m2.powf(1.0 - a))
    })
}

/// Coefficient `c(alpha, m, d_small, d_big)` of the `sqrt(eps)` continuity
/// bound for non-variational conditional entropies on states floored at
/// `m > 0` with `m d_big < 1`; `d_small` is the conditioned system,
/// `d_big` the full space. Carries a dedicated order-1 branch.
pub fn alaff_coefficient(alpha: Alpha, m: f64, d_small: usize, d_big: usize) -> Result<f64> {
    check_floor(m, "m")?;
    if d_small < 1 || d_big < 1 {
        return Err(Error::Domain("coefficient requires dimensions >= 1".into()));
    }
    let denom = 1.0 - m * d_big as f64;
    if denom <= 0.0 {
        return Err(Error::Domain(format!(
            "floor m = {m} times dimension {d_big} must stay below 1"
        )));
    }
    if alpha.is_inf() {
        return Err(Error::Domain(
            "non-variational coefficient requires a finite order".into(),
        ));
    }
    let d = d_small as f64;
    let c_tilde = |a: f64| {
        let base = (1.0 / m).ln() + 1.0 / m + 2.0;
        if a <= 1.0 {
            base * m.powf(a - 1.0)
        } else {
            base * m.powf(1.0 - a)
        }
    };
    Ok(match alpha.finite() {
        None => (2.0 * d.ln() + std::f64::consts::SQRT_2 * c_tilde(1.0)) / denom,
        Some(a) if a < 1.0 => {
            let pow = d.powf(2.0 * (1.0 - a));
            ((pow - 1.0) / (1.0 - a) + std::f64::consts::SQRT_2 * c_tilde(a) * pow) / denom
        }
        Some(a) => {
            ((d.powf(2.0 * (a - 1.0)) - 1.0) / (a - 1.0) + std::f64::consts::SQRT_2 * c_tilde(a))
                / denom
        }
    })
}

/// Two-input coefficient `c(alpha, m, d)` of the `sqrt(delta)` term in the
/// two-input trace-functional bound (distinct from [`alaff_coefficient`]).
fn two_input_coefficient(a: f64, m: f64, d: usize) -> Result<f64> {
    let denom = 1.0 - m * d as f64;
    if denom <= 0.0 {
        return Err(Error::Domain(format!(
            "floor m = {m} times dimension {d} must stay below 1"
        )));
    }
    let base = (1.0 / m).ln() + 1.0 / m + 2.0;
    Ok(if a < 1.0 {
        (1.0 + std::f64::consts::SQRT_2 * (1.0 - a) * base * m.powf(a - 1.0)) / denom
    } else {
        m.powf(1.0 - a) * (1.0 + std::f64::consts::SQRT_2 * (a - 1.0) * base) / denom
    })
}

/// Continuity bounds obtained through the almost-convexity route, for
/// non-variational quantities on eigenvalue-floored states. Consumes
/// `alpha`, `eps`, `m_min`, and the dimensions: `(d_a, d_b)` for
/// `CondEntropyNonVar`, `(d_a, d_b, d_c)` for `CmiNonVar`, and `d_a` as the
/// ambient dimension for the two-input bounds (with `delta` for the second
/// argument pair).
pub fn alaff_bounds(which: AlaffQuantity, params: &BoundParams) -> Result<f64> {
    check_eps(params.eps, "eps")?;
    let m = params.req_m_min()?;
    match which {
        AlaffQuantity::CondEntropyNonVar => {
            let d_a = params.req_d_a()?;
            let d_ab = d_a * params.req_d_b()?;
            Ok(alaff_coefficient(params.alpha, m, d_a, d_ab)? * params.eps.sqrt())
        }
        AlaffQuantity::CmiNonVar => {
            let d_c = params.req_d_c()?;
            let d_abc = params.req_d_a()? * params.req_d_b()? * d_c;
            Ok(2.0 * alaff_coefficient(params.alpha, m, d_c, d_abc)? * params.eps.sqrt())
        }
        AlaffQuantity::QTwoInput | AlaffQuantity::DTwoInput => {
            check_eps(params.delta, "delta")?;
            let a = finite_alpha(params.alpha, "two-input bound")?;
            let d = params.req_d_a()?;
            let c = two_input_coefficient(a, m, d)?;
            let q = if a < 1.0 {
                (1.0 + std::f64::consts::SQRT_2) * params.eps.sqrt() + 2.0 * c * params.delta.sqrt()
            } else {
                (1.0 + std::f64::consts::SQRT_2) * m.powf(1.0 - a) * params.eps.sqrt()
                    + 2.0 * c * params.delta.sqrt()
            };
            Ok(match which {
                AlaffQuantity::QTwoInput => q,
                _ if a < 1.0 => m.powf(a - 1.0) / (1.0 - a) * q,
                _ => q / (a - 1.0),
            })
        }
    }
}

/// `ln(1 + exp(x))`, stable for large `x`.
fn ln1p_exp(x: f64) -> f64 {
    if x > 700.0 {
        x + (-x).exp().ln_1p()
    } else {
        x.exp().ln_1p()
    }
}

/// Certificate bounds sandwiching the non-variational conditional mutual
/// information of a positive definite tripartite state: a lower bound from
/// the rotated-recovery trace-norm gap (at rotation `t`, with the free
/// parameter `cert_param` of the certificate) and an upper bound from the
/// plain recovery gap through the `sqrt`-type entropy bound. Both gaps are
/// unhalved trace norms. Returns `(lower, upper)`.
///
/// `cert_param` must lie in `(0, 1 - 1/(2 alpha))` below order 1 (empty at
/// exactly 1/2) and in `(0, 1/(2 alpha))` above. An exact chain (zero gaps)
/// yields `(0, 0)`.
#[allow(clippy::too_many_arguments)]
pub fn amc_certificate_bounds(
    alpha: Alpha,
    cert_param: f64,
    t: f64,
    norm_inv_rho_bc: f64,
    norm_inv_rho_abc: f64,
    petz_gap: f64,
    rotated_gap: f64,
    d_c: usize,
    d_abc: usize,
) -> Result<(f64, f64)> {
    let a = finite_alpha(alpha, "certificate")?;
    if !(norm_inv_rho_bc > 0.0) || !(norm_inv_rho_abc > 0.0) {
        return Err(Error::Domain("certificate requires positive inverse norms".into()));
    }
    if petz_gap < 0.0 || rotated_gap < 0.0 {
        return Err(Error::Domain("certificate gaps must be nonnegative".into()));
    }
    let half_inv = 1.0 / (2.0 * a);
    // In both regimes the certificate exponent is the reciprocal of the
    // distance from cert_param to its interval endpoint; it diverges as the
    // parameter approaches the endpoint and the bound degenerates to zero.
    let limit = if a < 1.0 { 1.0 - half_inv } else { half_inv };
    if !(cert_param > 0.0 && cert_param < limit) {
        return Err(Error::Domain(format!(
            "cert_param = {cert_param} outside (0, {limit}) for alpha = {a}"
        )));
    }
    let expo = 1.0 / (limit - cert_param);

    let lower = if rotated_gap == 0.0 {
        0.0
    } else {
        // The gap is damped by pi / (2 cosh(pi t)) and divided by the
        // conditioning sum: a worse-conditioned rho_BC or a larger
        // rotation weakens the certificate.
        let inner = 4.0 * norm_inv_rho_bc.sqrt()
            + (std::f64::consts::PI
                / (std::f64::consts::E
                    * cert_param
                    * (std::f64::consts::PI * (1.0 - a) / a).sin().abs()))
            .sqrt()
            + 4.0;
        let mut k =
            std::f64::consts::PI / (2.0 * (std::f64::consts::PI * t).cosh() * inner);
        if a > 1.0 {
            k *= norm_inv_rho_bc.powf((1.0 - a) / a);
        }
        let pref = if a < 1.0 { a / (1.0 - a) } else { a / (a - 1.0) };
        pref * ln1p_exp(expo * (k * rotated_gap).ln())
    };

    let upper =
        alaff_coefficient(alpha, 1.0 / norm_inv_rho_abc, d_c, d_abc)? * petz_gap.sqrt();
    Ok((lower, upper))
}

/// Prior conditional-entropy continuity bound built on superadditivity
/// (comparison baseline): below order 1 it coincides with the axiomatic
/// bound at `kappa = d_A^2`; above it is that bound at the conjugate order
/// `beta = alpha / (2 alpha - 1)` and distance `sqrt(2 eps)`.
pub fn baseline_marwah(alpha: Alpha, eps: f64, d_a: usize) -> Result<f64> {
    let a = finite_alpha(alpha, "baseline")?;
    check_eps(eps, "eps")?;
    if d_a < 1 {
        return Err(Error::Domain("baseline requires d_A >= 1".into()));
    }
    let kappa = (d_a * d_a) as f64;
    if a < 1.0 {
        return bound_generic(Approach::Axiomatic, alpha, eps, kappa);
    }
    let b = a / (2.0 * a - 1.0);
    let s = (2.0 * eps).sqrt();
    if s == 0.0 {
        return Ok(0.0);
    }
    let sub = s / (1.0 + s).powf(1.0 - b);
    Ok(s.ln_1p() + ln_one_plus(b * s.ln() + (1.0 - b) * kappa.ln(), sub) / (1.0 - b))
}

/// Prior interpolation-norm conditional-entropy bound (comparison
/// baseline), `alpha > 1` only: `alpha' log(1 + 2 eps d_A^{2/alpha'})` with
/// `alpha' = alpha / (alpha - 1)`.
pub fn baseline_beigi(alpha: Alpha, eps: f64, d_a: usize) -> Result<f64> {
    let a = finite_alpha(alpha, "baseline")?;
    check_eps(eps, "eps")?;
    if d_a < 1 {
        return Err(Error::Domain("baseline requires d_A >= 1".into()));
    }
    if a <= 1.0 {
        return Err(Error::Domain(format!(
            "interpolation-norm baseline requires alpha > 1, got {a}"
        )));
    }
    let ap = a / (a - 1.0);
    Ok(ap * (2.0 * eps * (d_a as f64).powf(2.0 / ap)).ln_1p())
}

/// Prior resource-theoretic bound on minimal divergence to a set
/// (comparison baseline), `alpha < 1` only, valid while
/// `eps <= kappa^{(alpha - 1)/alpha}`:
/// `log(1 - eps^alpha kappa^{1 - alpha}) / (alpha - 1)`.
pub fn baseline_rubboli(alpha: Alpha, eps: f64, kappa: f64) -> Result<f64> {
    let a = finite_alpha(alpha, "baseline")?;
    check_eps(eps, "eps")?;
    check_kappa(kappa)?;
    if a >= 1.0 {
        return Err(Error::Domain(format!(
            "resource-theoretic baseline requires alpha < 1, got {a}"
        )));
    }
    if eps > kappa.powf((a - 1.0) / a) {
        return Err(Error::Domain(format!(
            "resource-theoretic baseline requires eps <= kappa^((alpha-1)/alpha), \
             got eps = {eps}"
        )));
    }
    Ok((-(eps.powf(a) * kappa.powf(1.0 - a))).ln_1p() / (a - 1.0))
}
