//! Closed-form divergence evaluators on explicit operator pairs (no
//! optimization): the sandwiched Renyi family with its alpha -> 1 and
//! alpha -> infinity limits, plus the Petz and geometric families used by
//! the superadditivity counterexample.
//!
//! Conventions:
//! - all values are in nats;
//! - first arguments may be any nonzero PSD operator (homogeneity tests
//!   and the counterexample need unnormalized sums); divergences of states
//!   are nonnegative;
//! - every evaluator enforces the kernel precondition
//!   `ker(second) subseteq ker(first)` and rejects violations.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{
    herm_eig_matrix, herm_eigenvalues, hermitize, kernel_cutoff, kernel_included,
    power_from_spectrum, support_projection_matrix, trace_re, CMatrix, DensityMatrix,
};

/// Renyi order parameter: a finite value in `[1/2, 1) U (1, inf)` or one of
/// the two symbolic limits. Values outside the admissible set cannot be
/// constructed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Alpha(Repr);

#[derive(Debug, Clone, Copy, PartialEq)]
enum Repr {
    Finite(f64),
    One,
    Inf,
}

impl Alpha {
    /// Umegaki limit (alpha -> 1).
    pub const ONE: Alpha = Alpha(Repr::One);
    /// Max-divergence limit (alpha -> infinity).
    pub const INF: Alpha = Alpha(Repr::Inf);

    /// Validates and wraps a numeric order; `1.0` and `f64::INFINITY` map
    /// to the symbolic limits.
    pub fn new(value: f64) -> Result<Alpha> {
        if value == 1.0 {
            return Ok(Alpha::ONE);
        }
        if value.is_infinite() && value > 0.0 {
            return Ok(Alpha::INF);
        }
        check_finite_alpha(value)?;
        Ok(Alpha(Repr::Finite(value)))
    }

    /// Numeric value for finite orders, `None` for the symbolic limits.
    pub fn finite(self) -> Option<f64> {
        match self.0 {
            Repr::Finite(v) => Some(v),
            _ => None,
        }
    }

    pub fn is_one(self) -> bool {
        self.0 == Repr::One
    }

    pub fn is_inf(self) -> bool {
        self.0 == Repr::Inf
    }
}

impl std::fmt::Display for Alpha {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self.0 {
            Repr::Finite(v) => write!(f, "{v}"),
            Repr::One => write!(f, "1"),
            Repr::Inf => write!(f, "inf"),
        }
    }
}

impl std::str::FromStr for Alpha {
    type Err = Error;

    fn from_str(s: &str) -> Result<Alpha> {
        let t = s.trim();
        if t.eq_ignore_ascii_case("inf") || t.eq_ignore_ascii_case("infinity") {
            return Ok(Alpha::INF);
        }
        let v: f64 = t
            .parse()
            .map_err(|_| Error::Parse(format!("cannot parse alpha from {s:?}")))?;
        Alpha::new(v)
    }
}

fn check_finite_alpha(a: f64) -> Result<()> {
    if a.is_finite() && ((0.5..1.0).contains(&a) || a > 1.0) {
        Ok(())
    } else {
        Err(Error::Domain(format!(
            "alpha {a} outside [1/2, 1) U (1, inf)"
        )))
    }
}

fn ensure_kernel_included(second: &CMatrix, first: &CMatrix, what: &str) -> Result<()> {
    if kernel_included(second, first) {
        Ok(())
    } else {
        Err(Error::Kernel(format!(
            "{what}: kernel of the second argument is not contained in \
             the kernel of the first"
        )))
    }
}

fn ensure_nonzero_psd(x: &CMatrix, what: &str) -> Result<()> {
    if trace_re(x) > 0.0 {
        Ok(())
    } else {
        Err(Error::Domain(format!("{what}: first argument must be a nonzero PSD operator")))
    }
}

/// Cached second argument for repeated sandwiched-Q evaluations: the power
/// `Y^((1-alpha)/(2 alpha))` and Y's kernel projector are computed once per
/// `(Y, alpha)` and reused across many first arguments.
#[derive(Debug, Clone)]
pub struct SandwichContext {
    alpha: f64,
    w: CMatrix,
    /// `I - support(Y)`; `None` when `Y` has full rank.
    kernel_comp: Option<CMatrix>,
}

impl SandwichContext {
    pub fn new(alpha: f64, y: &CMatrix) -> Result<Self> {
        check_finite_alpha(alpha)?;
        let spec = herm_eig_matrix(y);
        let cut = kernel_cutoff(spec.lambda_max());
        let w = power_from_spectrum(&spec, (1.0 - alpha) / (2.0 * alpha));
        let min_eig = spec.eigenvalues.last().copied().unwrap_or(0.0);
        let kernel_comp = if min_eig > cut {
            None
        } else {
            let supp = spec.apply(|l| if l > cut { 1.0 } else { 0.0 });
            Some(crate::linalg::identity(y.nrows()) - supp)
        };
        Ok(Self {
            alpha,
            w,
            kernel_comp,
        })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    /// `log Q_alpha(X || Y)` evaluated stably (log-sum-exp over the
    /// sandwiched spectrum), so large orders cannot overflow.
    pub fn log_q(&self, x: &CMatrix) -> Result<f64> {
        ensure_nonzero_psd(x, "sandwiched Q")?;
        if let Some(pc) = &self.kernel_comp {
            let leak = pc * x * pc;
            let leak_norm = herm_eigenvalues(&leak)
                .iter()
                .map(|l| l.abs())
                .fold(0.0, f64::max);
            let x_norm = herm_eigenvalues(x).iter().map(|l| l.abs()).fold(0.0, f64::max);
            if leak_norm > kernel_cutoff(x_norm) {
                return Err(Error::Kernel(format!(
                    "sandwiched Q: second-argument kernel overlaps the first \
                     argument's support (leak {leak_norm:.3e})"
                )));
            }
        }
        let m = hermitize(&(&self.w * x * &self.w));
        let eigs = herm_eigenvalues(&m);
        let lmax = eigs.iter().cloned().fold(0.0f64, f64::max);
        if lmax <= 0.0 {
            return Err(Error::Domain(
                "sandwiched Q: sandwiched operator vanished (orthogonal supports)".into(),
            ));
        }
        let cut = kernel_cutoff(lmax);
        let sum: f64 = eigs
            .iter()
            .filter(|&&l| l > cut)
            .map(|&l| (l / lmax).powf(self.alpha))
            .sum();
        Ok(self.alpha * lmax.ln() + sum.ln())
    }

    /// `Q_alpha(X || Y)`; may overflow to `+inf` for extreme orders, use
    /// [`Self::log_q`] in that regime.
    pub fn q(&self, x: &CMatrix) -> Result<f64> {
        Ok(self.log_q(x)?.exp())
    }
}

/// Sandwiched Renyi trace functional
/// `Q_alpha(X || Y) = tr[(Y^((1-a)/2a) X Y^((1-a)/2a))^a]` for finite
/// orders, with the pseudo-inverse convention on Y's kernel.
pub fn q_sandwiched(x: &CMatrix, y: &CMatrix, alpha: Alpha) -> Result<f64> {
    let a = alpha
        .finite()
        .ok_or_else(|| Error::Domain("q_sandwiched requires a finite alpha".into()))?;
    SandwichContext::new(a, y)?.q(x)
}

/// Reordered form `tr[(X^(1/2) Y^((1-a)/a) X^(1/2))^a]`; agrees with
/// [`q_sandwiched`] and exists as an independent evaluation path.
pub fn q_sandwiched_reordered(x: &CMatrix, y: &CMatrix, alpha: Alpha) -> Result<f64> {
    let a = alpha
        .finite()
        .ok_or_else(|| Error::Domain("q_sandwiched requires a finite alpha".into()))?;
    ensure_nonzero_psd(x, "sandwiched Q")?;
    ensure_kernel_included(y, x, "sandwiched Q")?;
    let xs = herm_eig_matrix(x);
    let x_half = power_from_spectrum(&xs, 0.5);
    let ys = herm_eig_matrix(y);
    let y_pow = power_from_spectrum(&ys, (1.0 - a) / a);
    let m = hermitize(&(&x_half * y_pow * &x_half));
    let eigs = herm_eigenvalues(&m);
    let cut = kernel_cutoff(eigs.iter().cloned().fold(0.0, f64::max));
    Ok(eigs.iter().filter(|&&l| l > cut).map(|&l| l.powf(a)).sum())
}

/// Sandwiched Renyi divergence `(alpha-1)^-1 log Q_alpha(rho || sigma)`;
/// the symbolic orders dispatch to [`umegaki`] and [`d_max`].
pub fn d_sandwiched(rho: &DensityMatrix, sigma: &CMatrix, alpha: Alpha) -> Result<f64> {
    match alpha.0 {
        Repr::One => umegaki(rho, sigma),
        Repr::Inf => d_max(rho.matrix(), sigma),
        Repr::Finite(a) => {
            let ctx = SandwichContext::new(a, sigma)?;
            Ok(ctx.log_q(rho.matrix())? / (a - 1.0))
        }
    }
}

/// Petz Renyi trace functional `tr[X^alpha tau^(1-alpha)]`.
pub fn q_petz(x: &CMatrix, tau: &CMatrix, alpha: f64) -> Result<f64> {
    if !(alpha > 0.0) || !alpha.is_finite() {
        return Err(Error::Domain(format!("q_petz: alpha {alpha} must be positive")));
    }
    ensure_nonzero_psd(x, "Petz Q")?;
    ensure_kernel_included(tau, x, "Petz Q")?;
    let xa = crate::linalg::mat_power_matrix(x, alpha);
    let tb = crate::linalg::mat_power_matrix(tau, 1.0 - alpha);
    Ok(trace_re(&(xa * tb)))
}

/// Geometric (maximal) Renyi trace functional
/// `tr[tau^(1/2) (tau^(-1/2) X tau^(-1/2))^alpha tau^(1/2)]` for
/// `alpha in (1, 2]`.
pub fn q_geometric(x: &CMatrix, tau: &CMatrix, alpha: f64) -> Result<f64> {
    if !(alpha > 1.0 && alpha <= 2.0) {
        return Err(Error::Domain(format!(
            "q_geometric: alpha {alpha} outside (1, 2]"
        )));
    }
    ensure_nonzero_psd(x, "geometric Q")?;
    ensure_kernel_included(tau, x, "geometric Q")?;
    let tih = crate::linalg::mat_power_matrix(tau, -0.5);
    let g = hermitize(&(&tih * x * &tih));
    let ga = crate::linalg::mat_power_matrix(&g, alpha);
    Ok(trace_re(&(tau * ga)))
}

/// Umegaki relative entropy `tr[rho (log rho - log sigma)]` in nats.
pub fn umegaki(rho: &DensityMatrix, sigma: &CMatrix) -> Result<f64> {
    ensure_kernel_included(sigma, rho.matrix(), "relative entropy")?;
    let rs = herm_eig_matrix(rho.matrix());
    let cut_r = kernel_cutoff(rs.lambda_max());
    let mut value: f64 = rs
        .eigenvalues
        .iter()
        .filter(|&&l| l > cut_r)
        .map(|&l| l * l.ln())
        .sum();
    let ss = herm_eig_matrix(sigma);
    let cut_s = kernel_cutoff(ss.lambda_max());
    // log on the support; the kernel contributes nothing because the
    // kernel precondition kills rho there.
    let log_sigma = ss.apply(|l| if l > cut_s { l.ln() } else { 0.0 });
    value -= trace_re(&(rho.matrix() * log_sigma));
    Ok(value)
}

/// Max-divergence `log || Y^(-1/2) X Y^(-1/2) ||_inf`, the largest exponent
/// lambda with `X <= e^lambda Y` on Y's support.
pub fn d_max(x: &CMatrix, y: &CMatrix) -> Result<f64> {
    ensure_nonzero_psd(x, "max-divergence")?;
    ensure_kernel_included(y, x, "max-divergence")?;
    let ys = herm_eig_matrix(y);
    let y_inv_half = power_from_spectrum(&ys, -0.5);
    let m = hermitize(&(&y_inv_half * x * &y_inv_half));
    let lmax = herm_eigenvalues(&m).iter().cloned().fold(0.0f64, f64::max);
    Ok(lmax.ln())
}

/// Von Neumann entropy `-tr[rho log rho]` in nats.
pub fn von_neumann_entropy(rho: &DensityMatrix) -> f64 {
    let eigs = herm_eigenvalues(rho.matrix());
    let cut = kernel_cutoff(eigs.iter().cloned().fold(0.0, f64::max));
    -eigs
        .iter()
        .filter(|&&l| l > cut)
        .map(|&l| l * l.ln())
        .sum::<f64>()
}

/// Renyi entropy `(1-alpha)^-1 log tr[rho^alpha]` for finite orders.
pub fn renyi_entropy(rho: &DensityMatrix, alpha: f64) -> Result<f64> {
    check_finite_alpha(alpha)?;
    let eigs = herm_eigenvalues(rho.matrix());
    let cut = kernel_cutoff(eigs.iter().cloned().fold(0.0, f64::max));
    let s: f64 = eigs.iter().filter(|&&l| l > cut).map(|&l| l.powf(alpha)).sum();
    Ok(s.ln() / (1.0 - alpha))
}

/// The pair of states and the reference that witness failure of
/// superadditivity for the Petz and geometric Q families at order 3/2:
/// `(rho1, rho2, tau)`.
pub fn superadditivity_witness() -> (CMatrix, CMatrix, CMatrix) {
    let real = |rows: [[f64; 2]; 2]| {
        CMatrix::from_fn(2, 2, |i, j| Complex64::new(rows[i][j], 0.0))
    };
    (
        real([[0.8, 0.3], [0.3, 0.2]]),
        real([[0.1, 0.2], [0.2, 0.9]]),
        real([[0.45, 0.49], [0.49, 0.55]]),
    )
}

/// Support-projection helper re-exported for callers that need to check
/// operator domination `X <= c Y` directly.
pub fn psd_dominates(upper: &CMatrix, lower: &CMatrix, tol: f64) -> bool {
    let diff = upper - lower;
    let min = herm_eigenvalues(&diff).iter().cloned().fold(f64::INFINITY, f64::min);
    min >= -tol
}

/// Convenience wrapper: `I - support(X)` used by kernel diagnostics.
pub fn kernel_projector(x: &CMatrix) -> CMatrix {
    crate::linalg::identity(x.nrows()) - support_projection_matrix(x)
}
