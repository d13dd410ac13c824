//! Recovery maps for the partial trace over the last tensor factor and
//! certification of approximate Markov chains on tripartite states.
//!
//! For a reference state on `A (x) B (x) C`, the recovery map rebuilds an
//! operator on `ABC` from one on `AB` through the reference marginals:
//!
//! - plain:    `rho_BC^(1/2)    rho_B^(-1/2)    X  rho_B^(-1/2)    rho_BC^(1/2)`
//! - rotated:  `rho_BC^(1/2+it) rho_B^(-1/2-it) X  rho_B^(-1/2+it) rho_BC^(1/2-it)`
//! - universal: the rotated map averaged over `t/2` against the density
//!   `beta0(t) = (pi/2) (cosh(pi t) + 1)^(-1)`.
//!
//! The right multiplier of the rotated map is the adjoint of the left, so
//! every kind is completely positive, preserves Hermiticity, and is
//! trace-preserving on the support of the reference marginals; the plain
//! map is the rotation at `t = 0` (same code path, bit-identical).
//!
//! Certification combines the trace-norm recovery gaps with the spectral
//! data of the reference and the closed-form certificate bounds to
//! sandwich the non-variational conditional mutual information.

use num_complex::Complex64;

use crate::bounds::amc_certificate_bounds;
use crate::divergence::Alpha;
use crate::error::{Error, Result};
use crate::exec::map_collect;
use crate::linalg::{
    herm_eig_matrix, identity, kernel_cutoff, kron, schatten_norm, CMatrix, DensityMatrix,
    PartitionedState, Spectrum,
};
use crate::variational::cmi_nonvar;

/// Default quadrature half-width for the universal map; the weight mass
/// outside `[-T, T]` is below 1e-13 at `T = 10`.
pub const UNIVERSAL_HALFWIDTH: f64 = 10.0;
/// Default Gauss-Legendre node count for the universal map.
pub const UNIVERSAL_NODES: usize = 201;

/// Which recovery map to apply.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RecoveryKind {
    /// Plain recovery (the rotation at `t = 0`).
    Petz,
    /// Rotation by the given real parameter.
    Rotated(f64),
    /// Average of rotations against `beta0`, truncated to
    /// `[-halfwidth, halfwidth]` with the given Gauss-Legendre node count.
    Universal { halfwidth: f64, nodes: usize },
}

impl RecoveryKind {
    /// Universal map at the default quadrature (half-width 10, 201 nodes).
    pub fn universal() -> RecoveryKind {
        RecoveryKind::Universal {
            halfwidth: UNIVERSAL_HALFWIDTH,
            nodes: UNIVERSAL_NODES,
        }
    }

    fn validate(&self) -> Result<()> {
        match *self {
            RecoveryKind::Rotated(t) if !t.is_finite() => {
                Err(Error::Domain("rotation parameter must be finite".into()))
            }
            RecoveryKind::Universal { halfwidth, nodes } => {
                if !(halfwidth > 0.0) || !halfwidth.is_finite() {
                    return Err(Error::Domain(format!(
                        "quadrature half-width {halfwidth} must be positive and finite"
                    )));
                }
                if nodes < 3 {
                    return Err(Error::Domain(format!(
                        "quadrature needs at least 3 nodes, got {nodes}"
                    )));
                }
                Ok(())
            }
            _ => Ok(()),
        }
    }
}

/// Averaging density of the universal map: `(pi/2) (cosh(pi t) + 1)^(-1)`.
pub fn beta0(t: f64) -> f64 {
    std::f64::consts::FRAC_PI_2 / ((std::f64::consts::PI * t).cosh() + 1.0)
}

/// Gauss-Legendre nodes and weights on `[-1, 1]`, by Newton iteration on
/// the Legendre recurrence.
pub fn gauss_legendre(n: usize) -> Vec<(f64, f64)> {
    let mut out = Vec::with_capacity(n);
    for i in 1..=n {
        let mut x =
            (std::f64::consts::PI * (i as f64 - 0.25) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        out.push((x, 2.0 / ((1.0 - x * x) * dp * dp)));
    }
    out
}

/// `m^z` for Hermitian PSD `m` via its spectrum: `exp(z ln lambda)` on
/// eigenvalues above the kernel cutoff, zero below (the pseudo-inverse
/// convention extended to complex exponents).
fn complex_power(spec: &Spectrum, z: Complex64) -> CMatrix {
    let cut = kernel_cutoff(spec.lambda_max());
    let d = spec.eigenvalues.len();
    let mut scaled = spec.eigenvectors.clone();
    for (j, &l) in spec.eigenvalues.iter().enumerate() {
        let f = if l > cut {
            (z * l.ln()).exp()
        } else {
            Complex64::new(0.0, 0.0)
        };
        for i in 0..d {
            scaled[(i, j)] *= f;
        }
    }
    &scaled * spec.eigenvectors.adjoint()
}

/// Kernel projector of a PSD spectrum (eigenvalues at or below the cutoff).
fn kernel_projector(spec: &Spectrum) -> CMatrix {
    let cut = kernel_cutoff(spec.lambda_max());
    let d = spec.eigenvalues.len();
    let mut scaled = spec.eigenvectors.clone();
    for (j, &l) in spec.eigenvalues.iter().enumerate() {
        let f = if l > cut { 0.0 } else { 1.0 };
        for i in 0..d {
            scaled[(i, j)] *= Complex64::new(f, 0.0);
        }
    }
    &scaled * spec.eigenvectors.adjoint()
}

struct RecoveryData {
    d_a: usize,
    d_c: usize,
    spec_b: Spectrum,
    spec_bc: Spectrum,
}

impl RecoveryData {
    fn prepare(rho_ref: &PartitionedState) -> Result<RecoveryData> {
        let dims = rho_ref.dims();
        if dims.len() != 3 {
            return Err(Error::Dimension(format!(
                "recovery needs a tripartite reference, got {} factors",
                dims.len()
            )));
        }
        let rho_bc = rho_ref.partial_trace(0)?;
        let rho_b = rho_ref
            .partial_trace_partitioned(0)?
            .partial_trace(1)?;
        Ok(RecoveryData {
            d_a: dims[0],
            d_c: dims[2],
            spec_b: herm_eig_matrix(rho_b.matrix()),
            spec_bc: herm_eig_matrix(rho_bc.matrix()),
        })
    }

    /// Checks that `x` does not act on the kernel of the middle marginal
    /// (there the inverse weight is undefined and the map would silently
    /// discard input weight).
    fn check_support(&self, x: &CMatrix) -> Result<()> {
        let d_ab = self.d_a * self.spec_b.eigenvalues.len();
        if x.nrows() != d_ab || x.ncols() != d_ab {
            return Err(Error::Dimension(format!(
                "recovery input must be {d_ab}x{d_ab}, got {}x{}",
                x.nrows(),
                x.ncols()
            )));
        }
        let proj = kernel_projector(&self.spec_b);
        if proj.norm() == 0.0 {
            return Ok(());
        }
        let emb = kron(&identity(self.d_a), &proj);
        let scale = x.norm().max(1.0);
        if (&emb * x).norm() > 1e-9 * scale || (x * &emb).norm() > 1e-9 * scale {
            return Err(Error::Kernel(
                "recovery input overlaps the kernel of the middle marginal".into(),
            ));
        }
        Ok(())
    }

    /// One rotation: sandwiches `x` between the reference weights at
    /// complex exponent `1/2 + it` (adjoint on the right).
    fn rotate(&self, x: &CMatrix, t: f64) -> CMatrix {
        let zb = Complex64::new(-0.5, -t);
        let zbc = Complex64::new(0.5, t);
        let wb = kron(&identity(self.d_a), &complex_power(&self.spec_b, zb));
        let inner = kron(&(&wb * x * wb.adjoint()), &identity(self.d_c));
        let wbc = kron(&identity(self.d_a), &complex_power(&self.spec_bc, zbc));
        &wbc * inner * wbc.adjoint()
    }
}

/// Applies the recovery map of the given kind for the reference state
/// `rho_ref` (a tripartite `(A, B, C)` partition) to an operator `x` on
/// `AB`, returning an operator on `ABC`.
pub fn petz_recover(
    rho_ref: &PartitionedState,
    x: &CMatrix,
    kind: &RecoveryKind,
) -> Result<CMatrix> {
    kind.validate()?;
    let data = RecoveryData::prepare(rho_ref)?;
    data.check_support(x)?;
    match *kind {
        RecoveryKind::Petz => Ok(data.rotate(x, 0.0)),
        RecoveryKind::Rotated(t) => Ok(data.rotate(x, t)),
        RecoveryKind::Universal { halfwidth, nodes } => {
            let rule = gauss_legendre(nodes);
            let parts = map_collect(rule, |(node, weight)| {
                let t = node * halfwidth;
                let w = weight * halfwidth * beta0(t);
                data.rotate(x, 0.5 * t) * Complex64::new(w, 0.0)
            });
            let d = rho_ref.state().dim();
            let mut sum = CMatrix::zeros(d, d);
            for p in parts {
                sum += p;
            }
            Ok(sum)
        }
    }
}

/// Trace-norm recovery gap `||rho_ABC - R(rho_AB)||_1` (unhalved; twice
/// the trace distance when the recovered operator is a state).
pub fn markov_gap(rho: &PartitionedState, kind: &RecoveryKind) -> Result<f64> {
    let rho_ab = rho.partial_trace(2)?;
    let recovered = petz_recover(rho, rho_ab.matrix(), kind)?;
    schatten_norm(&(rho.matrix() - recovered), 1.0)
}

/// Exact-chain constructor: the first factor independent of the rest,
/// `rho_A (x) rho_BC`.
pub fn product_chain(rho_a: &DensityMatrix, rho_bc: &PartitionedState) -> Result<PartitionedState> {
    if rho_bc.dims().len() != 2 {
        return Err(Error::Dimension(format!(
            "product chain needs a bipartite tail, got {} factors",
            rho_bc.dims().len()
        )));
    }
    let m = kron(rho_a.matrix(), rho_bc.matrix());
    let dims = vec![rho_a.dim(), rho_bc.dims()[0], rho_bc.dims()[1]];
    PartitionedState::new(DensityMatrix::from_matrix(m)?, dims)
}

/// Exact-chain constructor: outer factors conditionally independent given
/// a classical middle register, `sum_b w_b rho_A^(b) (x) |b><b| (x) rho_C^(b)`.
/// Weights must be positive; they are normalized to sum to one.
pub fn classical_chain(
    weights: &[f64],
    a_blocks: &[DensityMatrix],
    c_blocks: &[DensityMatrix],
) -> Result<PartitionedState> {
    let n = weights.len();
    if n == 0 || a_blocks.len() != n || c_blocks.len() != n {
        return Err(Error::Dimension(
            "classical chain needs one weight, A-block, and C-block per branch".into(),
        ));
    }
    if weights.iter().any(|&w| !(w > 0.0)) {
        return Err(Error::Domain("branch weights must be positive".into()));
    }
    let d_a = a_blocks[0].dim();
    let d_c = c_blocks[0].dim();
    if a_blocks.iter().any(|b| b.dim() != d_a) || c_blocks.iter().any(|b| b.dim() != d_c) {
        return Err(Error::Dimension("branch blocks must share dimensions".into()));
    }
    let total: f64 = weights.iter().sum();
    let d = d_a * n * d_c;
    let mut m = CMatrix::zeros(d, d);
    for (b, &w) in weights.iter().enumerate() {
        let mut reg = CMatrix::zeros(n, n);
        reg[(b, b)] = Complex64::new(w / total, 0.0);
        m += kron(&kron(a_blocks[b].matrix(), &reg), c_blocks[b].matrix());
    }
    PartitionedState::new(DensityMatrix::from_matrix(m)?, vec![d_a, n, d_c])
}

/// Certificate sandwiching the non-variational conditional mutual
/// information of a positive definite tripartite state between the bounds
/// derived from its recovery gaps.
#[derive(Debug, Clone)]
pub struct AmcCertificate {
    /// Divergence order of the certificate.
    pub alpha: Alpha,
    /// Free parameter of the lower bound (interval depends on the order).
    pub cert_param: f64,
    /// Rotation parameter of the gap feeding the lower bound.
    pub rotation: f64,
    /// Non-variational conditional mutual information at `alpha`.
    pub cmi_value: f64,
    /// Lower bound from the rotated-recovery gap.
    pub lower_bound: f64,
    /// Upper bound from the plain recovery gap.
    pub upper_bound: f64,
    /// `||rho - R(rho_AB)||_1` for the plain recovery.
    pub petz_gap: f64,
    /// `||rho - R^t(rho_AB)||_1` for the rotation at `rotation`.
    pub rotated_gap: f64,
}

/// Certifies the approximate-Markov-chain property of a positive definite
/// tripartite state: computes both recovery gaps, the conditional mutual
/// information at `alpha`, and the certificate bounds, and verifies the
/// sandwich `lower <= cmi <= upper` within slack 1e-6. A violated sandwich
/// is a verification error carrying all three numbers.
pub fn certify_amc(
    rho: &PartitionedState,
    alpha: Alpha,
    cert_param: f64,
    t: f64,
) -> Result<AmcCertificate> {
    if rho.dims().len() != 3 {
        return Err(Error::Dimension(format!(
            "certificate needs a tripartite state, got {} factors",
            rho.dims().len()
        )));
    }
    // Eigenvalues inside the kernel band of a unit-scale spectrum count as
    // zero everywhere else in the library, so such states are not positive
    // definite here either.
    if rho.state().min_eig() <= kernel_cutoff(1.0) {
        return Err(Error::Domain(format!(
            "certificate requires a positive definite state; smallest eigenvalue {:.3e}",
            rho.state().min_eig()
        )));
    }
    let rho_bc = rho.partial_trace(0)?;
    let norm_inv_bc = 1.0 / rho_bc.min_eig();
    let norm_inv_abc = 1.0 / rho.state().min_eig();
    let petz_gap = markov_gap(rho, &RecoveryKind::Petz)?;
    let rotated_gap = markov_gap(rho, &RecoveryKind::Rotated(t))?;
    let cmi_value = cmi_nonvar(rho, alpha)?;
    let d_c = rho.dims()[2];
    let d_abc = rho.state().dim();
    let (lower_bound, upper_bound) = amc_certificate_bounds(
        alpha,
        cert_param,
        t,
        norm_inv_bc,
        norm_inv_abc,
        petz_gap,
        rotated_gap,
        d_c,
        d_abc,
    )?;
    if cmi_value < lower_bound - 1e-6 || cmi_value > upper_bound + 1e-6 {
        return Err(Error::Verification(format!(
            "certificate sandwich violated: lower {lower_bound:.12e}, \
             cmi {cmi_value:.12e}, upper {upper_bound:.12e}"
        )));
    }
    Ok(AmcCertificate {
        alpha,
        cert_param,
        rotation: t,
        cmi_value,
        lower_bound,
        upper_bound,
        petz_gap,
        rotated_gap,
    })
}
