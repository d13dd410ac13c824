//! Hermitian-matrix kernel: spectral decompositions, matrix functions,
//! norms, tensor operations, and seeded random state generation.
//!
//! Conventions:
//! - eigenvalues below `KERNEL_REL_CUTOFF * lambda_max` (or `1e-300` when
//!   `lambda_max == 0`) are exact zeros for pseudo-inverse powers, support
//!   projections, and kernel-inclusion checks;
//! - all scalars are complex `f64`; real inputs are just a special case;
//! - every operation is a pure function and safe to call concurrently.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::error::{Error, Result};

/// Dense complex matrix type used throughout the crate.
pub type CMatrix = DMatrix<Complex64>;

/// Relative eigenvalue cutoff below which spectra count as zero.
pub const KERNEL_REL_CUTOFF: f64 = 1e-12;
/// Absolute fallback cutoff used when the largest eigenvalue is zero.
pub const KERNEL_ABS_CUTOFF: f64 = 1e-300;
/// Hermiticity tolerance on entries (absolute).
pub const HERM_TOL: f64 = 1e-12;
/// Density matrices may have eigenvalues down to this (numerical PSD).
pub const DENSITY_EIG_TOL: f64 = -1e-10;
/// Density-matrix trace must be 1 within this tolerance.
pub const DENSITY_TRACE_TOL: f64 = 1e-10;

/// Effective zero threshold for a PSD spectrum with largest eigenvalue
/// `lambda_max`.
pub fn kernel_cutoff(lambda_max: f64) -> f64 {
    if lambda_max > 0.0 {
        KERNEL_REL_CUTOFF * lambda_max
    } else {
        KERNEL_ABS_CUTOFF
    }
}

/// Largest absolute deviation of `m` from its conjugate transpose.
pub fn max_asymmetry(m: &CMatrix) -> f64 {
    let d = m.nrows();
    let mut worst = 0.0f64;
    for i in 0..d {
        for j in i..d {
            let diff = (m[(i, j)] - m[(j, i)].conj()).norm();
            if diff > worst {
                worst = diff;
            }
        }
    }
    worst
}

/// Averages `m` with its conjugate transpose, removing numerical drift.
pub fn hermitize(m: &CMatrix) -> CMatrix {
    (m + m.adjoint()) * Complex64::new(0.5, 0.0)
}

/// Real part of the trace; the imaginary part of Hermitian-product traces
/// is numerical noise and is dropped.
pub fn trace_re(m: &CMatrix) -> f64 {
    m.diagonal().iter().map(|z| z.re).sum()
}

/// Complex d x d identity.
pub fn identity(d: usize) -> CMatrix {
    CMatrix::identity(d, d)
}

/// A complex Hermitian matrix with validated symmetry.
#[derive(Debug, Clone)]
pub struct HermitianMatrix {
    entries: CMatrix,
    dim: usize,
}

impl HermitianMatrix {
    /// Validates Hermiticity within [`HERM_TOL`] and wraps the matrix.
    pub fn new(entries: CMatrix) -> Result<Self> {
        if entries.nrows() != entries.ncols() {
            return Err(Error::Dimension(format!(
                "expected square matrix, got {}x{}",
                entries.nrows(),
                entries.ncols()
            )));
        }
        let asym = max_asymmetry(&entries);
        if asym > HERM_TOL {
            return Err(Error::NotHermitian {
                asymmetry: asym,
                tol: HERM_TOL,
            });
        }
        let dim = entries.nrows();
        Ok(Self {
            entries: hermitize(&entries),
            dim,
        })
    }

    /// Builds from a real symmetric matrix given in row-major order.
    pub fn from_real_rows(rows: &[&[f64]]) -> Result<Self> {
        let d = rows.len();
        let m = CMatrix::from_fn(d, d, |i, j| Complex64::new(rows[i][j], 0.0));
        Self::new(m)
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.entries
    }

    pub fn dim(&self) -> usize {
        self.dim
    }
}

/// A Hermitian PSD trace-one matrix; the canonical quantum-state carrier.
#[derive(Debug, Clone)]
pub struct DensityMatrix {
    base: HermitianMatrix,
    /// Smallest eigenvalue (cached at construction).
    min_eig: f64,
}

impl DensityMatrix {
    /// Validates PSD (eigenvalues >= -1e-10) and unit trace (within 1e-10).
    pub fn new(base: HermitianMatrix) -> Result<Self> {
        let tr = trace_re(base.matrix());
        if (tr - 1.0).abs() > DENSITY_TRACE_TOL {
            return Err(Error::NotDensity(format!(
                "trace {tr:.12} differs from 1 beyond {DENSITY_TRACE_TOL:.1e}"
            )));
        }
        let eigs = herm_eigenvalues(base.matrix());
        let min_eig = eigs.iter().cloned().fold(f64::INFINITY, f64::min);
        if min_eig < DENSITY_EIG_TOL {
            return Err(Error::NotDensity(format!(
                "smallest eigenvalue {min_eig:.3e} below {DENSITY_EIG_TOL:.1e}"
            )));
        }
        Ok(Self { base, min_eig })
    }

    /// Validates a raw complex matrix as a density matrix.
    pub fn from_matrix(entries: CMatrix) -> Result<Self> {
        Self::new(HermitianMatrix::new(entries)?)
    }

    pub fn matrix(&self) -> &CMatrix {
        self.base.matrix()
    }

    pub fn dim(&self) -> usize {
        self.base.dim()
    }

    /// Smallest eigenvalue, cached at construction.
    pub fn min_eig(&self) -> f64 {
        self.min_eig
    }

    /// Smallest eigenvalue above the kernel cutoff (the floor used for
    /// fixed-second-argument bounds).
    pub fn min_nonzero_eig(&self) -> f64 {
        let eigs = herm_eigenvalues(self.matrix());
        let lmax = eigs.iter().cloned().fold(0.0f64, f64::max);
        let cut = kernel_cutoff(lmax);
        eigs.iter()
            .cloned()
            .filter(|&l| l > cut)
            .fold(f64::INFINITY, f64::min)
    }

    /// Maximally mixed state on dimension `d`.
    pub fn maximally_mixed(d: usize) -> Self {
        let m = identity(d) * Complex64::new(1.0 / d as f64, 0.0);
        Self::from_matrix(m).expect("identity/d is a valid state")
    }
}

/// A density matrix together with its tensor-factor dimensions.
#[derive(Debug, Clone)]
pub struct PartitionedState {
    state: DensityMatrix,
    dims: Vec<usize>,
}

impl PartitionedState {
    pub fn new(state: DensityMatrix, dims: Vec<usize>) -> Result<Self> {
        let prod: usize = dims.iter().product();
        if prod != state.dim() || dims.iter().any(|&d| d == 0) {
            return Err(Error::Dimension(format!(
                "factor dims {:?} do not multiply to state dim {}",
                dims,
                state.dim()
            )));
        }
        Ok(Self { state, dims })
    }

    pub fn state(&self) -> &DensityMatrix {
        &self.state
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn matrix(&self) -> &CMatrix {
        self.state.matrix()
    }

    /// Reduced state on the remaining factors after tracing out `factor`.
    pub fn partial_trace(&self, factor: usize) -> Result<DensityMatrix> {
        let reduced = partial_trace_matrix(self.matrix(), &self.dims, factor)?;
        DensityMatrix::from_matrix(reduced)
    }

    /// Reduced `PartitionedState` after tracing out `factor` (needs at
    /// least two factors remaining to stay partitioned).
    pub fn partial_trace_partitioned(&self, factor: usize) -> Result<PartitionedState> {
        let reduced = self.partial_trace(factor)?;
        let mut dims = self.dims.clone();
        dims.remove(factor);
        PartitionedState::new(reduced, dims)
    }

    /// Reorders tensor factors: new factor `k` is old factor `perm[k]`.
    pub fn permute_factors(&self, perm: &[usize]) -> Result<PartitionedState> {
        let permuted = permute_factors_matrix(self.matrix(), &self.dims, perm)?;
        let dims: Vec<usize> = perm.iter().map(|&p| self.dims[p]).collect();
        PartitionedState::new(DensityMatrix::from_matrix(permuted)?, dims)
    }
}

/// Full spectral decomposition of a Hermitian matrix.
#[derive(Debug, Clone)]
pub struct Spectrum {
    /// Eigenvalues sorted descending.
    pub eigenvalues: Vec<f64>,
    /// Unitary matrix whose columns are the matching eigenvectors.
    pub eigenvectors: CMatrix,
}

impl Spectrum {
    /// Rebuilds `U diag(lambda) U^dagger`.
    pub fn reconstruct(&self) -> CMatrix {
        self.apply(|l| l)
    }

    /// Applies `f` to the eigenvalues and rebuilds the matrix.
    pub fn apply<F: Fn(f64) -> f64>(&self, f: F) -> CMatrix {
        let d = self.eigenvalues.len();
        let mut scaled = self.eigenvectors.clone();
        for (j, &l) in self.eigenvalues.iter().enumerate() {
            let fl = Complex64::new(f(l), 0.0);
            for i in 0..d {
                scaled[(i, j)] *= fl;
            }
        }
        let m = scaled * self.eigenvectors.adjoint();
        hermitize(&m)
    }

    /// Largest eigenvalue (0 for empty spectra).
    pub fn lambda_max(&self) -> f64 {
        self.eigenvalues.first().copied().unwrap_or(0.0)
    }
}

/// Full eigendecomposition of a Hermitian matrix, eigenvalues descending.
pub fn herm_eig(h: &HermitianMatrix) -> Spectrum {
    herm_eig_matrix(h.matrix())
}

/// Eigendecomposition of a raw matrix assumed Hermitian (drift is
/// symmetrized away first). Internal workhorse.
pub fn herm_eig_matrix(m: &CMatrix) -> Spectrum {
    let hm = hermitize(m);
    let se = hm.symmetric_eigen();
    let d = se.eigenvalues.len();
    let mut order: Vec<usize> = (0..d).collect();
    order.sort_by(|&a, &b| {
        se.eigenvalues[b]
            .partial_cmp(&se.eigenvalues[a])
            .expect("eigenvalues are finite")
    });
    let eigenvalues: Vec<f64> = order.iter().map(|&i| se.eigenvalues[i]).collect();
    let mut eigenvectors = CMatrix::zeros(d, d);
    for (newcol, &oldcol) in order.iter().enumerate() {
        eigenvectors.set_column(newcol, &se.eigenvectors.column(oldcol));
    }
    Spectrum {
        eigenvalues,
        eigenvectors,
    }
}

/// Eigenvalues only (unsorted), cheaper than a full decomposition; used in
/// optimizer hot loops.
pub fn herm_eigenvalues(m: &CMatrix) -> Vec<f64> {
    let hm = hermitize(m);
    hm.symmetric_eigenvalues().iter().cloned().collect()
}

/// Applies `lambda -> lambda^s` to the spectrum of a PSD matrix, mapping
/// eigenvalues at or below the kernel cutoff to zero (pseudo-inverse
/// convention for negative `s`).
pub fn mat_power(x: &HermitianMatrix, s: f64) -> HermitianMatrix {
    let m = mat_power_matrix(x.matrix(), s);
    HermitianMatrix::new(m).expect("spectral rebuild is Hermitian")
}

/// Raw-matrix variant of [`mat_power`].
pub fn mat_power_matrix(x: &CMatrix, s: f64) -> CMatrix {
    let spec = herm_eig_matrix(x);
    power_from_spectrum(&spec, s)
}

/// Applies the power map to an existing spectrum (reuses the eigensolve).
pub fn power_from_spectrum(spec: &Spectrum, s: f64) -> CMatrix {
    let cut = kernel_cutoff(spec.lambda_max());
    spec.apply(|l| if l > cut { l.powf(s) } else { 0.0 })
}

/// Schatten p-norm of a general matrix: `(sum_i sigma_i^p)^(1/p)` over
/// singular values; `p = inf` gives the largest singular value.
pub fn schatten_norm(x: &CMatrix, p: f64) -> Result<f64> {
    if !(p >= 1.0) {
        return Err(Error::Domain(format!("Schatten index p={p} must be >= 1")));
    }
    let svals = singular_values(x);
    Ok(schatten_of_svals(&svals, p))
}

fn schatten_of_svals(svals: &[f64], p: f64) -> f64 {
    if p.is_infinite() {
        return svals.iter().cloned().fold(0.0, f64::max);
    }
    if p == 1.0 {
        return svals.iter().sum();
    }
    // Scale out the largest value to dodge overflow for large p.
    let top = svals.iter().cloned().fold(0.0, f64::max);
    if top == 0.0 {
        return 0.0;
    }
    let sum: f64 = svals.iter().map(|s| (s / top).powf(p)).sum();
    top * sum.powf(1.0 / p)
}

/// Singular values of a general complex matrix (descending not guaranteed).
/// Hermitian inputs take the cheaper eigenvalue path.
pub fn singular_values(x: &CMatrix) -> Vec<f64> {
    if x.nrows() == x.ncols() && max_asymmetry(x) <= 1e-10 * (1.0 + inf_entry_norm(x)) {
        herm_eigenvalues(x).into_iter().map(f64::abs).collect()
    } else {
        x.clone().svd(false, false).singular_values.iter().cloned().collect()
    }
}

fn inf_entry_norm(x: &CMatrix) -> f64 {
    x.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Trace distance `(1/2) ||rho - sigma||_1`, in `[0, 1]` for states.
pub fn trace_distance(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<f64> {
    if rho.dim() != sigma.dim() {
        return Err(Error::Dimension(format!(
            "trace_distance dims {} vs {}",
            rho.dim(),
            sigma.dim()
        )));
    }
    let diff = rho.matrix() - sigma.matrix();
    let abs_sum: f64 = herm_eigenvalues(&diff).iter().map(|l| l.abs()).sum();
    Ok(0.5 * abs_sum)
}

/// Fidelity `(tr |sqrt(rho) sqrt(sigma)|)^2`, in `[0, 1]`.
pub fn fidelity(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<f64> {
    if rho.dim() != sigma.dim() {
        return Err(Error::Dimension(format!(
            "fidelity dims {} vs {}",
            rho.dim(),
            sigma.dim()
        )));
    }
    let sr = mat_power_matrix(rho.matrix(), 0.5);
    let ss = mat_power_matrix(sigma.matrix(), 0.5);
    let prod = &sr * &ss;
    let tn = schatten_norm(&prod, 1.0)?;
    Ok(tn * tn)
}

/// Partial trace of a raw matrix over `factor`, with tensor dimensions
/// `dims` (row-major Kronecker ordering).
pub fn partial_trace_matrix(m: &CMatrix, dims: &[usize], factor: usize) -> Result<CMatrix> {
    if factor >= dims.len() {
        return Err(Error::Dimension(format!(
            "factor index {factor} out of range for {} factors",
            dims.len()
        )));
    }
    let total: usize = dims.iter().product();
    if m.nrows() != total || m.ncols() != total {
        return Err(Error::Dimension(format!(
            "matrix is {}x{}, dims {:?} give {}",
            m.nrows(),
            m.ncols(),
            dims,
            total
        )));
    }
    // Index layout: i = ((pre * d_f) + f) * post + post_idx.
    let d_f = dims[factor];
    let pre: usize = dims[..factor].iter().product();
    let post: usize = dims[factor + 1..].iter().product();
    let dr = pre * post;
    let mut out = CMatrix::zeros(dr, dr);
    for a_pre in 0..pre {
        for a_post in 0..post {
            let ar = a_pre * post + a_post;
            for b_pre in 0..pre {
                for b_post in 0..post {
                    let bc = b_pre * post + b_post;
                    let mut acc = Complex64::new(0.0, 0.0);
                    for f in 0..d_f {
                        let i = (a_pre * d_f + f) * post + a_post;
                        let j = (b_pre * d_f + f) * post + b_post;
                        acc += m[(i, j)];
                    }
                    out[(ar, bc)] = acc;
                }
            }
        }
    }
    Ok(out)
}

/// Reorders tensor factors of a raw matrix: new factor `k` is old factor
/// `perm[k]`.
pub fn permute_factors_matrix(m: &CMatrix, dims: &[usize], perm: &[usize]) -> Result<CMatrix> {
    let n = dims.len();
    let mut seen = vec![false; n];
    if perm.len() != n || perm.iter().any(|&p| p >= n || std::mem::replace(&mut seen[p], true)) {
        return Err(Error::Dimension(format!(
            "invalid factor permutation {:?} for {} factors",
            perm, n
        )));
    }
    let total: usize = dims.iter().product();
    if m.nrows() != total || m.ncols() != total {
        return Err(Error::Dimension("permute: matrix/dims mismatch".into()));
    }
    // Strides of the old layout.
    let mut strides = vec![1usize; n];
    for k in (0..n.saturating_sub(1)).rev() {
        strides[k] = strides[k + 1] * dims[k + 1];
    }
    let new_dims: Vec<usize> = perm.iter().map(|&p| dims[p]).collect();
    // Maps a new flat index to the old flat index.
    let flat_map = |mut idx: usize| -> usize {
        let mut old = 0usize;
        for k in (0..n).rev() {
            let digit = idx % new_dims[k];
            idx /= new_dims[k];
            old += digit * strides[perm[k]];
        }
        old
    };
    let old_rows: Vec<usize> = (0..total).map(flat_map).collect();
    let mut out = CMatrix::zeros(total, total);
    for i in 0..total {
        for j in 0..total {
            out[(i, j)] = m[(old_rows[i], old_rows[j])];
        }
    }
    Ok(out)
}

/// Kronecker (tensor) product.
pub fn kron(a: &CMatrix, b: &CMatrix) -> CMatrix {
    a.kronecker(b)
}

/// Orthogonal projection onto the span of eigenvectors above the kernel
/// cutoff.
pub fn support_projection(x: &HermitianMatrix) -> HermitianMatrix {
    let m = support_projection_matrix(x.matrix());
    HermitianMatrix::new(m).expect("projection is Hermitian")
}

/// Raw-matrix variant of [`support_projection`].
pub fn support_projection_matrix(x: &CMatrix) -> CMatrix {
    let spec = herm_eig_matrix(x);
    let cut = kernel_cutoff(spec.lambda_max());
    spec.apply(|l| if l > cut { 1.0 } else { 0.0 })
}

/// True iff `ker(sigma)` is contained in `ker(rho)`: the complement of
/// sigma's support annihilates rho up to the kernel cutoff.
pub fn kernel_included(sigma: &CMatrix, rho: &CMatrix) -> bool {
    if sigma.nrows() != rho.nrows() {
        return false;
    }
    let d = sigma.nrows();
    let pc = identity(d) - support_projection_matrix(sigma);
    let leak = &pc * rho * &pc;
    let leak_norm = herm_eigenvalues(&leak)
        .iter()
        .map(|l| l.abs())
        .fold(0.0, f64::max);
    let rho_norm = herm_eigenvalues(rho)
        .iter()
        .map(|l| l.abs())
        .fold(0.0, f64::max);
    leak_norm <= kernel_cutoff(rho_norm).max(KERNEL_ABS_CUTOFF)
}

/// Seeded RNG used by every randomized routine in the crate.
pub fn seeded_rng(seed: u64) -> ChaCha12Rng {
    ChaCha12Rng::seed_from_u64(seed)
}

fn complex_gaussian(rng: &mut ChaCha12Rng) -> Complex64 {
    let re: f64 = StandardNormal.sample(rng);
    let im: f64 = StandardNormal.sample(rng);
    Complex64::new(re, im)
}

/// Random Ginibre matrix with independent complex standard-normal entries.
pub fn random_ginibre(d: usize, cols: usize, rng: &mut ChaCha12Rng) -> CMatrix {
    CMatrix::from_fn(d, cols, |_, _| complex_gaussian(rng))
}

/// Random Hermitian matrix (GUE-like, unnormalized).
pub fn random_hermitian(d: usize, rng: &mut ChaCha12Rng) -> CMatrix {
    let g = random_ginibre(d, d, rng);
    hermitize(&g)
}

/// Haar-ish random unitary via QR of a Ginibre matrix with phase fixing.
pub fn random_unitary(d: usize, rng: &mut ChaCha12Rng) -> CMatrix {
    let g = random_ginibre(d, d, rng);
    let qr = g.qr();
    let mut q = qr.q();
    let r = qr.r();
    // Fix the phase convention so the distribution is Haar.
    for j in 0..d {
        let rjj = r[(j, j)];
        let phase = if rjj.norm() > 0.0 {
            rjj / rjj.norm()
        } else {
            Complex64::new(1.0, 0.0)
        };
        for i in 0..d {
            q[(i, j)] *= phase;
        }
    }
    q
}

/// Reproducible random density matrix of the given rank. Draws use
/// Hilbert-Schmidt sampling: `G G^dagger / tr` for a complex Gaussian `G`
/// with `rank` columns.
pub fn random_density(d: usize, rank: usize, seed: u64) -> Result<DensityMatrix> {
    if rank == 0 || rank > d {
        return Err(Error::Domain(format!(
            "rank {rank} out of range 1..={d}"
        )));
    }
    let mut rng = seeded_rng(seed);
    random_density_with(d, rank, &mut rng)
}

/// Rng-driven variant of [`random_density`] for callers that thread one
/// generator through many draws.
pub fn random_density_with(d: usize, rank: usize, rng: &mut ChaCha12Rng) -> Result<DensityMatrix> {
    if rank == 0 || rank > d {
        return Err(Error::Domain(format!(
            "rank {rank} out of range 1..={d}"
        )));
    }
    let g = random_ginibre(d, rank, rng);
    let gg = &g * g.adjoint();
    let tr = trace_re(&gg);
    let m = gg * Complex64::new(1.0 / tr, 0.0);
    DensityMatrix::from_matrix(m)
}

/// Mixes a state toward the maximally mixed state until its smallest
/// eigenvalue reaches `floor`.
///
/// When projection is needed, the mix targets a hair above the floor and
/// re-checks: the eigenvalue estimate that sizes the mixing weight has
/// absolute error proportional to the input norm, and the pair-distance
/// walk probes very large inputs. The margin scales with the spectrum, so
/// the second pass runs on an O(1) matrix and lands safely in the cone.
fn enforce_floor(m: &CMatrix, floor: f64) -> CMatrix {
    let d = m.nrows();
    let mix_target = 1.0 / d as f64;
    let mut out = m.clone();
    for _ in 0..3 {
        let eigs = herm_eigenvalues(&out);
        let lmin = eigs.iter().cloned().fold(f64::INFINITY, f64::min);
        if lmin >= floor {
            break;
        }
        let scale = eigs.iter().fold(1.0f64, |acc, l| acc.max(l.abs()));
        let margin = 1e-12 * scale;
        // (1-w) lmin + w/d >= floor + margin.
        let w = ((floor + margin - lmin) / (mix_target - lmin)).clamp(0.0, 1.0);
        out = out * Complex64::new(1.0 - w, 0.0)
            + identity(d) * Complex64::new(w * mix_target, 0.0);
    }
    out
}

/// Draws a pair of states at exact trace distance `eps` (within 1e-9),
/// optionally with a uniform eigenvalue floor on both.
///
/// Algorithm: draw `rho` (floored if requested), pick a traceless Hermitian
/// direction, walk `sigma(c) = rho + c * direction`, project back to the
/// feasible cone by mixing toward `I/d` when needed, and bisect on `c`
/// until the distance matches.
pub fn random_pair_at_distance(
    d: usize,
    eps: f64,
    seed: u64,
    floor: Option<f64>,
) -> Result<(DensityMatrix, DensityMatrix)> {
    if !(0.0..=1.0).contains(&eps) {
        return Err(Error::Domain(format!("eps {eps} outside [0,1]")));
    }
    if let Some(m) = floor {
        if !(m >= 0.0) || m * d as f64 >= 1.0 {
            return Err(Error::Domain(format!(
                "floor {m} infeasible for dimension {d} (need m*d < 1)"
            )));
        }
        // Hard feasibility: both spectra >= m forces distance <= 1 - m*d.
        if eps > 1.0 - m * d as f64 + 1e-12 {
            return Err(Error::Domain(format!(
                "eps {eps} unreachable under floor {m} at dimension {d} \
                 (max distance is {})",
                1.0 - m * d as f64
            )));
        }
    }
    let mut rng = seeded_rng(seed);
    let floor_v = floor.unwrap_or(0.0);
    let rho_raw = random_density_with(d, d, &mut rng)?;
    let rho_m = if floor.is_some() {
        // Pre-mix per the construction note: (1 - m*d) rho + m * I.
        rho_raw.matrix() * Complex64::new(1.0 - floor_v * d as f64, 0.0)
            + identity(d) * Complex64::new(floor_v, 0.0)
    } else {
        rho_raw.matrix().clone()
    };
    let rho = DensityMatrix::from_matrix(rho_m.clone())?;
    if eps == 0.0 {
        return Ok((rho.clone(), rho));
    }

    let project = |m: &CMatrix| -> CMatrix { enforce_floor(m, floor_v) };
    let dist_at = |c: f64, delta: &CMatrix| -> Result<f64> {
        let cand = &rho_m + delta * Complex64::new(c, 0.0);
        let cand = project(&cand);
        let sigma = DensityMatrix::from_matrix(cand)?;
        trace_distance(&rho, &sigma)
    };

    for _attempt in 0..24 {
        let mut delta = random_hermitian(d, &mut rng);
        let tr = trace_re(&delta) / d as f64;
        delta -= identity(d) * Complex64::new(tr, 0.0);
        let tn: f64 = herm_eigenvalues(&delta).iter().map(|l| l.abs()).sum();
        if tn < 1e-14 {
            continue;
        }
        // Normalize so that distance ~ c while the walk stays feasible.
        delta *= Complex64::new(2.0 / tn, 0.0);

        // Expand until the (projected) distance reaches eps.
        let mut hi = eps.max(1e-6);
        let mut reached = dist_at(hi, &delta)?;
        let mut expansions = 0;
        while reached < eps && expansions < 60 {
            hi *= 2.0;
            let next = dist_at(hi, &delta)?;
            if next <= reached + 1e-9 {
                // Saturated short of eps; try a fresh direction.
                break;
            }
            reached = next;
            expansions += 1;
        }
        if reached < eps {
            continue;
        }
        let mut lo = 0.0f64;
        let mut hi_c = hi;
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi_c);
            let dm = dist_at(mid, &delta)?;
            if dm < eps {
                lo = mid;
            } else {
                hi_c = mid;
            }
            if (dist_at(hi_c, &delta)? - eps).abs() <= 1e-10 {
                break;
            }
        }
        let c_final = hi_c;
        let achieved = dist_at(c_final, &delta)?;
        if (achieved - eps).abs() <= 1e-9 {
            let cand = project(&(&rho_m + &delta * Complex64::new(c_final, 0.0)));
            let sigma = DensityMatrix::from_matrix(cand)?;
            return Ok((rho, sigma));
        }
    }
    Err(Error::Domain(format!(
        "could not realize trace distance {eps} at dimension {d} with floor {:?}",
        floor
    )))
}

/// Binary entropy in nats: `-x ln x - (1-x) ln(1-x)`, with `h(0)=h(1)=0`.
pub fn binary_entropy(x: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&x) {
        return Err(Error::Domain(format!("binary_entropy({x}) outside [0,1]")));
    }
    let term = |t: f64| if t > 0.0 { -t * t.ln() } else { 0.0 };
    Ok(term(x) + term(1.0 - x))
}
