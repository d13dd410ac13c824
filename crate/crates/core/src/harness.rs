//! Harness layer behind the command-line tool: sweep grids tabulating the
//! bound families against each other and against prior-work baselines,
//! machine-checkable verification suites with serialized counterexample
//! witnesses, the superadditivity counterexample report, and deterministic
//! CSV/JSON serialization for all of it.
//!
//! Everything here is deterministic given the inputs and a seed: random
//! draws run on counter-derived ChaCha streams, concurrent trials are
//! assembled in submission order, and floats serialize through a fixed
//! 12-significant-digit formatter with an `inf` sentinel.

use num_complex::Complex64;
use rand::Rng;
use rand_chacha::ChaCha12Rng;
use serde_json::{json, Value};

use crate::bounds::{
    alaff_bounds, alaff_uv, alaff_xi, baseline_beigi, baseline_marwah, baseline_rubboli,
    bound_cmi, bound_for_quantity, bound_generic, bound_mutual_info, AlaffQuantity, Approach,
    BoundParams, Quantity,
};
use crate::cnorms::{verify_norm_laws, NormIndices, PsdSet};
use crate::divergence::{
    d_sandwiched, q_geometric, q_petz, q_sandwiched, superadditivity_witness, Alpha,
};
use crate::error::{Error, Result};
use crate::exec::map_collect;
use crate::linalg::{
    identity, kron, partial_trace_matrix, random_density, random_density_with, random_ginibre,
    random_pair_at_distance, seeded_rng, trace_re, CMatrix, DensityMatrix, PartitionedState,
};
use crate::markov::{
    beta0, certify_amc, classical_chain, gauss_legendre, markov_gap, product_chain, RecoveryKind,
};
use crate::variational::{
    cmi_nonvar, cmi_up_with, cond_entropy_up_with, gen_mutual_info, mutual_info_up, sep_distance,
    OptimizerConfig,
};

// ---------------------------------------------------------------------------
// Float and state serialization.
// ---------------------------------------------------------------------------

/// Formats like C's `%.12g`: 12 significant digits, fixed or scientific
/// notation by magnitude, trailing zeros stripped, exponents padded to two
/// digits. Infinities print as `inf`/`-inf`.
pub fn fmt_g(v: f64) -> String {
    if v.is_nan() {
        return "nan".to_string();
    }
    if v.is_infinite() {
        return if v > 0.0 { "inf" } else { "-inf" }.to_string();
    }
    if v == 0.0 {
        return "0".to_string();
    }
    let sci = format!("{:.11e}", v);
    let (mantissa, exp) = sci.split_once('e').expect("exponential format");
    let x: i32 = exp.parse().expect("exponent digits");
    if x < -4 || x >= 12 {
        let mantissa = mantissa.trim_end_matches('0').trim_end_matches('.');
        format!("{mantissa}e{}{:02}", if x < 0 { '-' } else { '+' }, x.abs())
    } else {
        let fixed = format!("{:.*}", (11 - x) as usize, v);
        if fixed.contains('.') {
            fixed.trim_end_matches('0').trim_end_matches('.').to_string()
        } else {
            fixed
        }
    }
}

/// Serializes a complex matrix as a flat row-major array of `[re, im]`
/// pairs, the entry layout of the state file format.
pub fn matrix_to_json(m: &CMatrix) -> Value {
    let mut entries = Vec::with_capacity(m.nrows() * m.ncols());
    for i in 0..m.nrows() {
        for j in 0..m.ncols() {
            let z = m[(i, j)];
            entries.push(json!([z.re, z.im]));
        }
    }
    Value::Array(entries)
}

fn json_f64(v: &Value, what: &str) -> Result<f64> {
    v.as_f64()
        .ok_or_else(|| Error::Parse(format!("{what} must be a finite number")))
}

/// Parses a `d x d` complex matrix from a flat row-major array of
/// `[re, im]` pairs, rejecting anything malformed.
pub fn matrix_from_json(v: &Value, d: usize) -> Result<CMatrix> {
    let entries = v
        .as_array()
        .ok_or_else(|| Error::Parse("matrix must be an array of [re, im] pairs".into()))?;
    if entries.len() != d * d {
        return Err(Error::Parse(format!(
            "matrix has {} entries, expected {} for dimension {d}",
            entries.len(),
            d * d
        )));
    }
    let mut m = CMatrix::zeros(d, d);
    for (k, entry) in entries.iter().enumerate() {
        let pair = entry
            .as_array()
            .filter(|p| p.len() == 2)
            .ok_or_else(|| Error::Parse(format!("matrix entry {k} must be an [re, im] pair")))?;
        m[(k / d, k % d)] = Complex64::new(json_f64(&pair[0], "re")?, json_f64(&pair[1], "im")?);
    }
    Ok(m)
}

/// Serializes a partitioned state as `{dims, matrix}`, the same schema
/// [`state_from_json`] accepts back.
pub fn state_to_json(rho: &PartitionedState) -> Value {
    json!({
        "dims": rho.dims(),
        "matrix": matrix_to_json(rho.state().matrix()),
    })
}

/// Parses `{dims, matrix}` into a partitioned density matrix with strict
/// validation: unknown fields, malformed entries, dimension mismatches,
/// non-Hermitian data, wrong trace, and negative eigenvalues all fail.
pub fn state_from_json(v: &Value) -> Result<PartitionedState> {
    let obj = v
        .as_object()
        .ok_or_else(|| Error::Parse("state must be a JSON object".into()))?;
    for key in obj.keys() {
        if key != "dims" && key != "matrix" {
            return Err(Error::Parse(format!("unknown state field `{key}`")));
        }
    }
    let dims_v = obj
        .get("dims")
        .ok_or_else(|| Error::Parse("state needs a `dims` field".into()))?;
    let dims = dims_v
        .as_array()
        .ok_or_else(|| Error::Parse("dims must be an array".into()))?
        .iter()
        .map(|x| match x.as_u64() {
            Some(d) if d >= 1 => Ok(d as usize),
            _ => Err(Error::Parse("dims must be positive integers".into())),
        })
        .collect::<Result<Vec<usize>>>()?;
    if dims.is_empty() {
        return Err(Error::Parse("dims must be non-empty".into()));
    }
    let d: usize = dims.iter().product();
    let matrix_v = obj
        .get("matrix")
        .ok_or_else(|| Error::Parse("state needs a `matrix` field".into()))?;
    let m = matrix_from_json(matrix_v, d)?;
    PartitionedState::new(DensityMatrix::from_matrix(m)?, dims)
}

// ---------------------------------------------------------------------------
// Shared random-draw helpers.
// ---------------------------------------------------------------------------

/// Splitmix of the run seed and an item counter, so concurrent trials draw
/// from independent, order-free streams.
fn derive_seed(seed: u64, idx: u64) -> u64 {
    let mut z = seed ^ idx.wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

fn cf(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

/// Random full-rank density mixed toward the maximally mixed state so that
/// every eigenvalue is at least `floor` (requires `floor * d < 1`).
fn floored_density(d: usize, floor: f64, rng: &mut ChaCha12Rng) -> Result<DensityMatrix> {
    let raw = random_density_with(d, d, rng)?;
    let m = raw.matrix() * cf(1.0 - floor * d as f64) + identity(d) * cf(floor);
    DensityMatrix::from_matrix(m)
}

/// Random PSD cone element of order-one scale, deliberately unnormalized.
fn psd_sample(d: usize, rng: &mut ChaCha12Rng) -> CMatrix {
    let g = random_ginibre(d, d, rng);
    let m = &g * g.adjoint();
    let scale = rng.gen_range(0.5..2.0) / trace_re(&m).max(1e-12);
    m * cf(scale)
}

fn unix_now() -> u64 {
    std::time::SystemTime::now()
        .duration_since(std::time::UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0)
}

// ---------------------------------------------------------------------------
// Sweep grids.
// ---------------------------------------------------------------------------

/// What the third sweep coordinate means.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepQuantity {
    /// Conditional entropy; the coordinate is the integer dimension `d_A`.
    CondEntropy,
    /// Generic minimal divergence to a convex set; the coordinate is the
    /// uniform divergence bound `kappa` itself.
    Kappa,
}

impl std::fmt::Display for SweepQuantity {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SweepQuantity::CondEntropy => write!(f, "cond-entropy"),
            SweepQuantity::Kappa => write!(f, "kappa"),
        }
    }
}

impl std::str::FromStr for SweepQuantity {
    type Err = Error;

    fn from_str(s: &str) -> Result<SweepQuantity> {
        match s {
            "cond-entropy" => Ok(SweepQuantity::CondEntropy),
            "kappa" => Ok(SweepQuantity::Kappa),
            other => Err(Error::Parse(format!("unknown sweep quantity `{other}`"))),
        }
    }
}

/// `n` logarithmically spaced points from `lo` to `hi` inclusive.
pub fn log_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    assert!(n >= 2 && lo > 0.0 && hi > lo, "degenerate grid request");
    let (a, b) = (lo.ln(), hi.ln());
    (0..n)
        .map(|i| (a + (b - a) * i as f64 / (n - 1) as f64).exp())
        .collect()
}

/// Default order axis: 64 log-spaced points in `[1.01, 10]`.
pub fn default_alpha_grid() -> Vec<Alpha> {
    log_grid(1.01, 10.0, 64)
        .into_iter()
        .map(|v| Alpha::new(v).expect("grid stays above 1"))
        .collect()
}

/// Default distance axis: 32 log-spaced points in `[1e-4, 0.5]`.
pub fn default_eps_grid() -> Vec<f64> {
    log_grid(1e-4, 0.5, 32)
}

/// Default dimension axis for the conditional entropy.
pub fn default_dim_grid() -> Vec<f64> {
    vec![2.0, 4.0, 16.0, 256.0]
}

/// Rectangular sweep request: for every cell of `alphas x epsilons x dims`
/// the bound of each requested approach is tabulated, optionally next to
/// prior-work baseline columns, and the least finite bound wins the row.
#[derive(Debug, Clone)]
pub struct SweepGrid {
    /// Order axis.
    pub alphas: Vec<Alpha>,
    /// Trace-distance axis, each value in `[0, 1]`.
    pub epsilons: Vec<f64>,
    /// `d_A` values (integers at least 2) for the conditional entropy,
    /// `kappa` values (at least 1) for the generic quantity.
    pub dims: Vec<f64>,
    /// Meaning of `dims` and of the tabulated bound.
    pub quantity: SweepQuantity,
    /// Approaches competing for the winner column, without duplicates;
    /// column order follows this list.
    pub approaches: Vec<Approach>,
    /// Tabulate the conjugate-order prior baseline (conditional entropy).
    pub marwah: bool,
    /// Tabulate the high-order prior baseline (conditional entropy).
    pub beigi: bool,
    /// Tabulate the low-order prior baseline (applies to both quantities).
    pub rubboli: bool,
}

impl SweepGrid {
    /// The default sweep: conditional entropy over the default axes, all
    /// three approaches, no baseline columns.
    pub fn default_grid() -> SweepGrid {
        SweepGrid {
            alphas: default_alpha_grid(),
            epsilons: default_eps_grid(),
            dims: default_dim_grid(),
            quantity: SweepQuantity::CondEntropy,
            approaches: vec![Approach::Axiomatic, Approach::OperatorSpace, Approach::Mixed],
            marwah: false,
            beigi: false,
            rubboli: false,
        }
    }

    /// Structural validation run before any evaluation.
    pub fn validate(&self) -> Result<()> {
        if self.alphas.is_empty() || self.epsilons.is_empty() || self.dims.is_empty() {
            return Err(Error::Domain("sweep axes must be non-empty".into()));
        }
        if self.approaches.is_empty() {
            return Err(Error::Domain("sweep needs at least one approach".into()));
        }
        for (i, a) in self.approaches.iter().enumerate() {
            if self.approaches[..i].contains(a) {
                return Err(Error::Domain(format!("duplicate approach `{a}`")));
            }
        }
        for &e in &self.epsilons {
            if !(0.0..=1.0).contains(&e) {
                return Err(Error::Domain(format!("eps = {e} outside [0, 1]")));
            }
        }
        for &x in &self.dims {
            match self.quantity {
                SweepQuantity::CondEntropy => {
                    if x.fract() != 0.0 || x < 2.0 || x > 1e9 {
                        return Err(Error::Domain(format!(
                            "d_A = {x} must be an integer at least 2"
                        )));
                    }
                }
                SweepQuantity::Kappa => {
                    if !x.is_finite() || x < 1.0 {
                        return Err(Error::Domain(format!("kappa = {x} outside [1, inf)")));
                    }
                }
            }
        }
        if (self.marwah || self.beigi) && self.quantity != SweepQuantity::CondEntropy {
            return Err(Error::Domain(
                "marwah/beigi baselines apply to the cond-entropy sweep only".into(),
            ));
        }
        Ok(())
    }

    /// Parses a grid description from JSON text. Missing fields keep their
    /// defaults; unknown fields are rejected.
    pub fn from_json(text: &str) -> Result<SweepGrid> {
        let v: Value =
            serde_json::from_str(text).map_err(|e| Error::Parse(format!("grid file: {e}")))?;
        let obj = v
            .as_object()
            .ok_or_else(|| Error::Parse("grid must be a JSON object".into()))?;
        let mut grid = SweepGrid::default_grid();
        for (key, val) in obj {
            match key.as_str() {
                "alphas" => {
                    grid.alphas = as_list(val, "alphas")?
                        .iter()
                        .map(parse_alpha_entry)
                        .collect::<Result<_>>()?
                }
                "epsilons" => grid.epsilons = parse_f64_list(val, "epsilons")?,
                "dims" => grid.dims = parse_f64_list(val, "dims")?,
                "quantity" => {
                    grid.quantity = val
                        .as_str()
                        .ok_or_else(|| Error::Parse("quantity must be a string".into()))?
                        .parse()?
                }
                "approaches" => {
                    grid.approaches = as_list(val, "approaches")?
                        .iter()
                        .map(|x| {
                            x.as_str()
                                .ok_or_else(|| Error::Parse("approach must be a string".into()))?
                                .parse::<Approach>()
                        })
                        .collect::<Result<_>>()?
                }
                "marwah" => grid.marwah = as_bool(val, "marwah")?,
                "beigi" => grid.beigi = as_bool(val, "beigi")?,
                "rubboli" => grid.rubboli = as_bool(val, "rubboli")?,
                other => return Err(Error::Parse(format!("unknown grid field `{other}`"))),
            }
        }
        grid.validate()?;
        Ok(grid)
    }

    /// The grid as JSON, reparseable by [`SweepGrid::from_json`].
    pub fn to_json(&self) -> Value {
        json!({
            "alphas": self.alphas.iter().map(|&a| alpha_json(a)).collect::<Vec<_>>(),
            "epsilons": self.epsilons,
            "dims": self.dims,
            "quantity": self.quantity.to_string(),
            "approaches": self.approaches.iter().map(|a| a.to_string()).collect::<Vec<_>>(),
            "marwah": self.marwah,
            "beigi": self.beigi,
            "rubboli": self.rubboli,
        })
    }

    /// Baseline column names in output order.
    fn baseline_names(&self) -> Vec<&'static str> {
        let mut names = Vec::new();
        if self.marwah {
            names.push("marwah");
        }
        if self.beigi {
            names.push("beigi");
        }
        if self.rubboli {
            names.push("rubboli");
        }
        names
    }
}

fn as_list<'v>(v: &'v Value, what: &str) -> Result<&'v Vec<Value>> {
    v.as_array()
        .ok_or_else(|| Error::Parse(format!("{what} must be an array")))
}

fn as_bool(v: &Value, what: &str) -> Result<bool> {
    v.as_bool()
        .ok_or_else(|| Error::Parse(format!("{what} must be a boolean")))
}

fn parse_f64_list(v: &Value, what: &str) -> Result<Vec<f64>> {
    as_list(v, what)?
        .iter()
        .map(|x| json_f64(x, what))
        .collect()
}

fn parse_alpha_entry(v: &Value) -> Result<Alpha> {
    if let Some(f) = v.as_f64() {
        return Alpha::new(f);
    }
    if let Some(s) = v.as_str() {
        return s.parse();
    }
    Err(Error::Parse("alpha entries must be numbers or strings".into()))
}

fn alpha_json(a: Alpha) -> Value {
    match a.finite() {
        Some(v) => json!(v),
        None => Value::String(a.to_string()),
    }
}

fn alpha_field(a: Alpha) -> String {
    match a.finite() {
        Some(v) => fmt_g(v),
        None => a.to_string(),
    }
}

/// One evaluated sweep cell: coordinates, the bound per requested approach
/// (grid order), the requested baselines (marwah, beigi, rubboli order),
/// and the winning approach, if any bound is finite.
#[derive(Debug, Clone)]
pub struct SweepRow {
    /// Order coordinate.
    pub alpha: Alpha,
    /// Distance coordinate.
    pub eps: f64,
    /// Dimension or kappa coordinate.
    pub dim: f64,
    /// Bound per approach; `inf` marks a regime where the approach does
    /// not apply.
    pub values: Vec<f64>,
    /// Baseline values in `marwah, beigi, rubboli` order (requested only).
    pub baselines: Vec<f64>,
    /// Approach with the least finite bound (canonical tie-breaking).
    pub winner: Option<Approach>,
}

/// Reproducibility metadata carried by every sweep result.
#[derive(Debug, Clone)]
pub struct SweepMeta {
    /// Seed the run was requested with.
    pub seed: u64,
    /// Library version that produced the table.
    pub version: String,
    /// Unix time of the run in seconds (the only non-reproducible field).
    pub timestamp: u64,
}

/// Evaluated sweep: the grid, run metadata, and one row per cell in
/// `alpha (outer) -> eps -> dim (inner)` order.
#[derive(Debug, Clone)]
pub struct SweepResult {
    /// The request that produced the table.
    pub grid: SweepGrid,
    /// Reproducibility metadata.
    pub meta: SweepMeta,
    /// Rows in deterministic axis order.
    pub rows: Vec<SweepRow>,
}

fn approach_rank(a: Approach) -> usize {
    match a {
        Approach::Axiomatic => 0,
        Approach::OperatorSpace => 1,
        Approach::Mixed => 2,
    }
}

/// Least finite bound wins; exact ties go to the earlier approach in the
/// canonical order axiomatic < operator-space < mixed.
fn pick_winner(approaches: &[Approach], values: &[f64]) -> Option<Approach> {
    let mut best: Option<(f64, usize, Approach)> = None;
    for (&a, &v) in approaches.iter().zip(values) {
        if !v.is_finite() {
            continue;
        }
        let r = approach_rank(a);
        let better = match best {
            Some((bv, br, _)) => v < bv || (v == bv && r < br),
            None => true,
        };
        if better {
            best = Some((v, r, a));
        }
    }
    best.map(|(_, _, a)| a)
}

/// Regime-unavailable bounds enter the table as `inf` so the winner stays
/// meaningful; any other failure is a real error.
fn domain_as_inf(r: Result<f64>) -> Result<f64> {
    match r {
        Ok(v) => Ok(v),
        Err(Error::Domain(_)) => Ok(f64::INFINITY),
        Err(e) => Err(e),
    }
}

fn cell_bound(quantity: SweepQuantity, approach: Approach, alpha: Alpha, eps: f64, dim: f64) -> Result<f64> {
    match quantity {
        SweepQuantity::CondEntropy => {
            let mut params = BoundParams::new(alpha, eps);
            params.d_a = Some(dim as usize);
            bound_for_quantity(Quantity::CondEntropy, approach, &params)
        }
        SweepQuantity::Kappa => bound_generic(approach, alpha, eps, dim),
    }
}

fn sweep_cell(grid: &SweepGrid, alpha: Alpha, eps: f64, dim: f64) -> Result<SweepRow> {
    let mut values = Vec::with_capacity(grid.approaches.len());
    for &approach in &grid.approaches {
        values.push(domain_as_inf(cell_bound(grid.quantity, approach, alpha, eps, dim))?);
    }
    let mut baselines = Vec::new();
    if grid.marwah {
        baselines.push(domain_as_inf(baseline_marwah(alpha, eps, dim as usize))?);
    }
    if grid.beigi {
        baselines.push(domain_as_inf(baseline_beigi(alpha, eps, dim as usize))?);
    }
    if grid.rubboli {
        let kappa = match grid.quantity {
            SweepQuantity::CondEntropy => dim * dim,
            SweepQuantity::Kappa => dim,
        };
        baselines.push(domain_as_inf(baseline_rubboli(alpha, eps, kappa))?);
    }
    let winner = pick_winner(&grid.approaches, &values);
    Ok(SweepRow { alpha, eps, dim, values, baselines, winner })
}

/// Evaluates the grid concurrently (one task per cell, results assembled
/// in axis order) and stamps reproducibility metadata. The sweep itself
/// is formula-only; `seed` is recorded for the metadata contract.
pub fn sweep(grid: &SweepGrid, seed: u64) -> Result<SweepResult> {
    grid.validate()?;
    let mut cells = Vec::with_capacity(grid.alphas.len() * grid.epsilons.len() * grid.dims.len());
    for &alpha in &grid.alphas {
        for &eps in &grid.epsilons {
            for &dim in &grid.dims {
                cells.push((alpha, eps, dim));
            }
        }
    }
    let g = grid.clone();
    let rows = map_collect(cells, move |(alpha, eps, dim)| sweep_cell(&g, alpha, eps, dim))
        .into_iter()
        .collect::<Result<Vec<SweepRow>>>()?;
    Ok(SweepResult {
        grid: grid.clone(),
        meta: SweepMeta {
            seed,
            version: env!("CARGO_PKG_VERSION").to_string(),
            timestamp: unix_now(),
        },
        rows,
    })
}

fn winner_name(w: Option<Approach>) -> String {
    match w {
        Some(a) => a.to_string(),
        None => "none".to_string(),
    }
}

impl SweepResult {
    /// Column names in output order: coordinates, approaches, requested
    /// baselines, winner.
    pub fn columns(&self) -> Vec<String> {
        let mut cols = vec![
            "alpha".to_string(),
            "eps".to_string(),
            match self.grid.quantity {
                SweepQuantity::CondEntropy => "d_a",
                SweepQuantity::Kappa => "kappa",
            }
            .to_string(),
        ];
        cols.extend(self.grid.approaches.iter().map(|a| a.to_string()));
        cols.extend(self.grid.baseline_names().iter().map(|s| s.to_string()));
        cols.push("winner".to_string());
        cols
    }

    /// Deterministic CSV: `#`-prefixed metadata lines (seed, version,
    /// timestamp), a header, one comma-separated row per cell; floats at
    /// 12 significant digits with `inf` sentinels, LF line endings. Two
    /// runs of the same grid differ at most in the timestamp line.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("# seed: {}\n", self.meta.seed));
        out.push_str(&format!("# version: {}\n", self.meta.version));
        out.push_str(&format!("# timestamp: {}\n", self.meta.timestamp));
        out.push_str(&self.columns().join(","));
        out.push('\n');
        for row in &self.rows {
            let mut fields = vec![alpha_field(row.alpha), fmt_g(row.eps), fmt_g(row.dim)];
            fields.extend(row.values.iter().map(|&v| fmt_g(v)));
            fields.extend(row.baselines.iter().map(|&v| fmt_g(v)));
            fields.push(winner_name(row.winner));
            out.push_str(&fields.join(","));
            out.push('\n');
        }
        out
    }

    /// The same table as JSON: metadata, the grid, column names, and rows
    /// as arrays aligned with the columns (numbers where finite, strings
    /// for symbolic orders, `inf`, and the winner).
    pub fn to_json(&self) -> Value {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|row| {
                let mut cells = vec![alpha_json(row.alpha), json!(row.eps), json!(row.dim)];
                cells.extend(row.values.iter().map(|&v| finite_json(v)));
                cells.extend(row.baselines.iter().map(|&v| finite_json(v)));
                cells.push(Value::String(winner_name(row.winner)));
                Value::Array(cells)
            })
            .collect();
        json!({
            "meta": {
                "seed": self.meta.seed,
                "version": self.meta.version,
                "timestamp": self.meta.timestamp,
            },
            "grid": self.grid.to_json(),
            "columns": self.columns(),
            "rows": rows,
        })
    }

    /// Re-derives every winner from the stored values and fails if any
    /// row disagrees; a self-check for serialized tables.
    pub fn check_winners(&self) -> Result<()> {
        for (i, row) in self.rows.iter().enumerate() {
            let expect = pick_winner(&self.grid.approaches, &row.values);
            if expect != row.winner {
                return Err(Error::Verification(format!(
                    "row {i}: stored winner {} but values give {}",
                    winner_name(row.winner),
                    winner_name(expect)
                )));
            }
        }
        Ok(())
    }
}

fn finite_json(v: f64) -> Value {
    if v.is_finite() {
        json!(v)
    } else if v > 0.0 {
        Value::String("inf".to_string())
    } else {
        Value::String("-inf".to_string())
    }
}

// ---------------------------------------------------------------------------
// Superadditivity counterexample.
// ---------------------------------------------------------------------------

/// Inputs and the six trace-functional values showing that neither
/// alternative functional is superadditive in its first argument at order
/// 3/2, although the sandwiched functional is: for the shipped pair and
/// reference, the combined value drops strictly below the split sum with
/// unit margins (sum > 6 > 5.9 > combined for the spectral functional,
/// sum > 9 > 6 > combined for the geometric one).
#[derive(Debug, Clone)]
pub struct CounterexampleReport {
    /// Order the chains are evaluated at.
    pub alpha: f64,
    /// First unnormalized positive input.
    pub rho1: CMatrix,
    /// Second unnormalized positive input.
    pub rho2: CMatrix,
    /// Shared second argument.
    pub tau: CMatrix,
    /// `[Q(rho1), Q(rho2), Q(rho1 + rho2)]` for the spectral functional.
    pub petz: [f64; 3],
    /// The same three values for the geometric functional.
    pub geometric: [f64; 3],
}

impl CounterexampleReport {
    /// Split sum of the spectral functional.
    pub fn petz_sum(&self) -> f64 {
        self.petz[0] + self.petz[1]
    }

    /// Split sum of the geometric functional.
    pub fn geometric_sum(&self) -> f64 {
        self.geometric[0] + self.geometric[1]
    }

    /// Asserts the four strict comparisons exactly (no tolerance).
    pub fn verify(&self) -> Result<()> {
        let ok = self.petz_sum() > 6.0
            && self.petz[2] < 5.9
            && self.geometric_sum() > 9.0
            && self.geometric[2] < 6.0;
        if ok {
            Ok(())
        } else {
            Err(Error::Verification(format!(
                "counterexample chains failed: spectral sum {} (want > 6), combined {} \
                 (want < 5.9); geometric sum {} (want > 9), combined {} (want < 6)",
                fmt_g(self.petz_sum()),
                fmt_g(self.petz[2]),
                fmt_g(self.geometric_sum()),
                fmt_g(self.geometric[2])
            )))
        }
    }

    /// Machine-readable report: the six values, the sums, and the inputs.
    pub fn to_json(&self) -> Value {
        json!({
            "alpha": self.alpha,
            "spectral": {
                "rho1": self.petz[0],
                "rho2": self.petz[1],
                "sum": self.petz_sum(),
                "combined": self.petz[2],
            },
            "geometric": {
                "rho1": self.geometric[0],
                "rho2": self.geometric[1],
                "sum": self.geometric_sum(),
                "combined": self.geometric[2],
            },
            "inputs": {
                "rho1": matrix_to_json(&self.rho1),
                "rho2": matrix_to_json(&self.rho2),
                "tau": matrix_to_json(&self.tau),
            },
        })
    }

    /// Human-readable report at 12 significant digits, echoing the input
    /// matrices in the row-major `[re, im]` layout.
    pub fn render_text(&self) -> String {
        let mut s = String::new();
        s.push_str(&format!(
            "superadditivity counterexample at alpha = {}\n\n",
            fmt_g(self.alpha)
        ));
        s.push_str("spectral functional q_petz:\n");
        s.push_str(&format!("  Q(rho1 || tau)        = {}\n", fmt_g(self.petz[0])));
        s.push_str(&format!("  Q(rho2 || tau)        = {}\n", fmt_g(self.petz[1])));
        s.push_str(&format!("  split sum             = {}   (> 6)\n", fmt_g(self.petz_sum())));
        s.push_str(&format!("  Q(rho1 + rho2 || tau) = {}   (< 5.9)\n\n", fmt_g(self.petz[2])));
        s.push_str("geometric functional q_geometric:\n");
        s.push_str(&format!("  Q(rho1 || tau)        = {}\n", fmt_g(self.geometric[0])));
        s.push_str(&format!("  Q(rho2 || tau)        = {}\n", fmt_g(self.geometric[1])));
        s.push_str(&format!("  split sum             = {}   (> 9)\n", fmt_g(self.geometric_sum())));
        s.push_str(&format!("  Q(rho1 + rho2 || tau) = {}   (< 6)\n\n", fmt_g(self.geometric[2])));
        s.push_str("inputs (row-major [re, im]):\n");
        s.push_str(&format!("  rho1 = {}\n", compact_json(&matrix_to_json(&self.rho1))));
        s.push_str(&format!("  rho2 = {}\n", compact_json(&matrix_to_json(&self.rho2))));
        s.push_str(&format!("  tau  = {}\n", compact_json(&matrix_to_json(&self.tau))));
        s
    }
}

fn compact_json(v: &Value) -> String {
    serde_json::to_string(v).expect("serializable value")
}

/// Evaluates both alternative trace functionals at order 3/2 on the
/// shipped witness triple and verifies the strict comparison chains.
pub fn counterexample() -> Result<CounterexampleReport> {
    let (rho1, rho2, tau) = superadditivity_witness();
    let alpha = 1.5;
    let combined = &rho1 + &rho2;
    let petz = [
        q_petz(&rho1, &tau, alpha)?,
        q_petz(&rho2, &tau, alpha)?,
        q_petz(&combined, &tau, alpha)?,
    ];
    let geometric = [
        q_geometric(&rho1, &tau, alpha)?,
        q_geometric(&rho2, &tau, alpha)?,
        q_geometric(&combined, &tau, alpha)?,
    ];
    let report = CounterexampleReport { alpha, rho1, rho2, tau, petz, geometric };
    report.verify()?;
    Ok(report)
}

// ---------------------------------------------------------------------------
// Verification suites.
// ---------------------------------------------------------------------------

/// Verification suite identifiers served by [`run_suite`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    /// Structural laws of the sandwiched divergence.
    DivergenceLaws,
    /// Duality, Hoelder, triangle, and monotonicity laws of the norms.
    NormLaws,
    /// Continuity bounds hold on random pairs at exact trace distance.
    BoundValidity,
    /// Almost-convexity defect and two-input continuity bounds.
    Alaff,
    /// Recovery maps, exact chains, and approximate-chain certificates.
    Markov,
}

/// Every suite in canonical order.
pub const ALL_SUITES: [Suite; 5] = [
    Suite::DivergenceLaws,
    Suite::NormLaws,
    Suite::BoundValidity,
    Suite::Alaff,
    Suite::Markov,
];

impl std::fmt::Display for Suite {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Suite::DivergenceLaws => write!(f, "divergence-laws"),
            Suite::NormLaws => write!(f, "norm-laws"),
            Suite::BoundValidity => write!(f, "bound-validity"),
            Suite::Alaff => write!(f, "alaff"),
            Suite::Markov => write!(f, "markov"),
        }
    }
}

impl std::str::FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Suite> {
        match s {
            "divergence-laws" => Ok(Suite::DivergenceLaws),
            "norm-laws" => Ok(Suite::NormLaws),
            "bound-validity" => Ok(Suite::BoundValidity),
            "alaff" => Ok(Suite::Alaff),
            "markov" => Ok(Suite::Markov),
            other => Err(Error::Parse(format!("unknown suite `{other}`"))),
        }
    }
}

/// One failed check with a serialized witness: the inputs, the order, and
/// the two sides of the violated inequality.
#[derive(Debug, Clone)]
pub struct SuiteViolation {
    /// Which check failed.
    pub check: String,
    /// Everything needed to replay the failure.
    pub witness: Value,
}

/// Machine-checkable outcome of one verification suite run.
#[derive(Debug, Clone)]
pub struct SuiteReport {
    /// The suite that ran.
    pub suite: Suite,
    /// Seed of the run.
    pub seed: u64,
    /// Trials drawn.
    pub trials: usize,
    /// Individual checks evaluated.
    pub checks: usize,
    /// Failed checks with witnesses; empty means the suite passed.
    pub violations: Vec<SuiteViolation>,
}

impl SuiteReport {
    /// Whether every check held.
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    /// Machine-readable report.
    pub fn to_json(&self) -> Value {
        json!({
            "suite": self.suite.to_string(),
            "seed": self.seed,
            "trials": self.trials,
            "checks": self.checks,
            "passed": self.passed(),
            "violations": self
                .violations
                .iter()
                .map(|v| json!({"check": v.check, "witness": v.witness}))
                .collect::<Vec<_>>(),
        })
    }

    /// One summary line plus one line per violation.
    pub fn render_text(&self) -> String {
        let mut s = format!(
            "suite {}: {} trials, {} checks, {} violations: {}\n",
            self.suite,
            self.trials,
            self.checks,
            self.violations.len(),
            if self.passed() { "PASS" } else { "FAIL" }
        );
        for v in &self.violations {
            s.push_str(&format!("  violation [{}]: {}\n", v.check, v.witness));
        }
        s
    }
}

/// Runs per-trial closures concurrently and assembles (checks, violations)
/// in submission order, so reports are deterministic.
fn run_trials<F>(trials: usize, f: F) -> Result<(usize, Vec<SuiteViolation>)>
where
    F: Fn(usize) -> Result<(usize, Vec<SuiteViolation>)> + Send + Sync,
{
    if trials == 0 {
        return Err(Error::Domain("suite needs at least one trial".into()));
    }
    let per = map_collect((0..trials).collect::<Vec<_>>(), |i| f(i));
    let mut checks = 0;
    let mut violations = Vec::new();
    for r in per {
        let (c, mut v) = r?;
        checks += c;
        violations.append(&mut v);
    }
    Ok((checks, violations))
}

/// Runs one suite with its default configuration.
pub fn run_suite(suite: Suite, trials: usize, seed: u64) -> Result<SuiteReport> {
    match suite {
        Suite::DivergenceLaws => run_divergence_laws(trials, seed),
        Suite::NormLaws => run_norm_laws(trials, seed),
        Suite::BoundValidity => run_bound_validity(&ValidityConfig::default_run(trials, seed)),
        Suite::Alaff => run_alaff(trials, seed),
        Suite::Markov => run_markov(trials, seed),
    }
}

// ---------------------------------------------------------------------------
// Suite: divergence laws.
// ---------------------------------------------------------------------------

/// Deliberate defect injected into the law verifier; honest data then
/// violates the flipped comparison, proving the suite can fail and that
/// failures carry witnesses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum LawCorruption {
    /// Honest verification.
    #[default]
    None,
    /// The additivity-direction comparison runs backwards.
    FlippedSubadditivity,
}

const LAW_ALPHAS: [f64; 5] = [0.6, 0.75, 1.3, 2.0, 3.5];

/// Checks the structural laws of the sandwiched divergence on random
/// instances: additivity direction, joint concavity/convexity, data
/// processing under partial trace, monotonicity in the order, scaling
/// covariance, and tensor multiplicativity.
pub fn run_divergence_laws(trials: usize, seed: u64) -> Result<SuiteReport> {
    run_divergence_laws_with(trials, seed, LawCorruption::None)
}

/// [`run_divergence_laws`] with an optional injected defect.
pub fn run_divergence_laws_with(
    trials: usize,
    seed: u64,
    corruption: LawCorruption,
) -> Result<SuiteReport> {
    let (checks, violations) = run_trials(trials, |i| divergence_law_trial(seed, i, corruption))?;
    Ok(SuiteReport { suite: Suite::DivergenceLaws, seed, trials, checks, violations })
}

fn rel_slack(values: &[f64]) -> f64 {
    1e-9 * values.iter().fold(1.0f64, |m, v| m.max(v.abs()))
}

fn divergence_law_trial(
    seed: u64,
    idx: usize,
    corruption: LawCorruption,
) -> Result<(usize, Vec<SuiteViolation>)> {
    let mut rng = seeded_rng(derive_seed(seed, idx as u64));
    let d = 2 + idx % 2;
    let a_v = LAW_ALPHAS[idx % LAW_ALPHAS.len()];
    let alpha = Alpha::new(a_v)?;
    let below = a_v < 1.0;
    let mut checks = 0usize;
    let mut violations = Vec::new();

    // Law 1: additivity direction in the first argument against a shared
    // full-rank second argument: subadditive below order 1, superadditive
    // above.
    let x1 = psd_sample(d, &mut rng);
    let x2 = psd_sample(d, &mut rng);
    let y = floored_density(d, 0.02, &mut rng)?;
    let q1 = q_sandwiched(&x1, y.matrix(), alpha)?;
    let q2 = q_sandwiched(&x2, y.matrix(), alpha)?;
    let q12 = q_sandwiched(&(&x1 + &x2), y.matrix(), alpha)?;
    let slack = rel_slack(&[q1, q2, q12]);
    let fine = match (below, corruption) {
        (true, LawCorruption::None) => q12 <= q1 + q2 + slack,
        (false, LawCorruption::None) => q12 + slack >= q1 + q2,
        (true, LawCorruption::FlippedSubadditivity) => q12 >= q1 + q2 - slack,
        (false, LawCorruption::FlippedSubadditivity) => q12 - slack <= q1 + q2,
    };
    checks += 1;
    if !fine {
        violations.push(SuiteViolation {
            check: "additivity-direction".into(),
            witness: json!({
                "alpha": a_v,
                "combined": q12,
                "split_sum": q1 + q2,
                "x1": matrix_to_json(&x1),
                "x2": matrix_to_json(&x2),
                "y": matrix_to_json(y.matrix()),
            }),
        });
    }

    // Law 2: joint concavity below order 1, joint convexity above.
    let r1 = random_density_with(d, d, &mut rng)?;
    let r2 = random_density_with(d, d, &mut rng)?;
    let s1 = floored_density(d, 0.02, &mut rng)?;
    let s2 = floored_density(d, 0.02, &mut rng)?;
    let p: f64 = rng.gen_range(0.1..0.9);
    let mix_r = r1.matrix() * cf(p) + r2.matrix() * cf(1.0 - p);
    let mix_s = s1.matrix() * cf(p) + s2.matrix() * cf(1.0 - p);
    let q_mix = q_sandwiched(&mix_r, &mix_s, alpha)?;
    let q_split = p * q_sandwiched(r1.matrix(), s1.matrix(), alpha)?
        + (1.0 - p) * q_sandwiched(r2.matrix(), s2.matrix(), alpha)?;
    let slack = rel_slack(&[q_mix, q_split]);
    let fine = if below { q_mix + slack >= q_split } else { q_mix <= q_split + slack };
    checks += 1;
    if !fine {
        violations.push(SuiteViolation {
            check: "joint-curvature".into(),
            witness: json!({
                "alpha": a_v,
                "p": p,
                "mixture": q_mix,
                "split": q_split,
                "rho1": matrix_to_json(r1.matrix()),
                "rho2": matrix_to_json(r2.matrix()),
                "sigma1": matrix_to_json(s1.matrix()),
                "sigma2": matrix_to_json(s2.matrix()),
            }),
        });
    }

    // Law 3: data processing under partial trace of the second factor.
    let rho = random_density_with(2 * d, 2 * d, &mut rng)?;
    let sigma = floored_density(2 * d, 0.02, &mut rng)?;
    let full = d_sandwiched(&rho, sigma.matrix(), alpha)?;
    let rho_a = PartitionedState::new(rho.clone(), vec![2, d])?.partial_trace(1)?;
    let sigma_a = partial_trace_matrix(sigma.matrix(), &[2, d], 1)?;
    let reduced = d_sandwiched(&rho_a, &sigma_a, alpha)?;
    let slack = rel_slack(&[full, reduced]);
    checks += 1;
    if reduced > full + slack {
        violations.push(SuiteViolation {
            check: "data-processing".into(),
            witness: json!({
                "alpha": a_v,
                "full": full,
                "reduced": reduced,
                "rho": matrix_to_json(rho.matrix()),
                "sigma": matrix_to_json(sigma.matrix()),
            }),
        });
    }

    // Law 4: the divergence is nondecreasing in the order.
    let higher = Alpha::new(a_v + 0.7)?;
    let d_hi = d_sandwiched(&rho, sigma.matrix(), higher)?;
    let slack = rel_slack(&[full, d_hi]);
    checks += 1;
    if full > d_hi + slack {
        violations.push(SuiteViolation {
            check: "order-monotonicity".into(),
            witness: json!({
                "alpha_low": a_v,
                "alpha_high": a_v + 0.7,
                "d_low": full,
                "d_high": d_hi,
                "rho": matrix_to_json(rho.matrix()),
                "sigma": matrix_to_json(sigma.matrix()),
            }),
        });
    }

    // Law 5: scaling covariance, Q(c X || k Y) = c^a k^(1-a) Q(X || Y).
    let c: f64 = rng.gen_range(0.5..2.0);
    let k: f64 = rng.gen_range(0.5..2.0);
    let scaled = q_sandwiched(&(&x1 * cf(c)), &(y.matrix() * cf(k)), alpha)?;
    let expected = c.powf(a_v) * k.powf(1.0 - a_v) * q1;
    checks += 1;
    if (scaled - expected).abs() > rel_slack(&[expected]) {
        violations.push(SuiteViolation {
            check: "scaling-covariance".into(),
            witness: json!({
                "alpha": a_v,
                "c": c,
                "k": k,
                "scaled": scaled,
                "expected": expected,
                "x": matrix_to_json(&x1),
                "y": matrix_to_json(y.matrix()),
            }),
        });
    }

    // Law 6: tensor multiplicativity.
    let u1 = psd_sample(2, &mut rng);
    let u2 = psd_sample(2, &mut rng);
    let w1 = floored_density(2, 0.02, &mut rng)?;
    let w2 = floored_density(2, 0.02, &mut rng)?;
    let product = q_sandwiched(&kron(&u1, &u2), &kron(w1.matrix(), w2.matrix()), alpha)?;
    let split = q_sandwiched(&u1, w1.matrix(), alpha)? * q_sandwiched(&u2, w2.matrix(), alpha)?;
    checks += 1;
    if (product - split).abs() > rel_slack(&[product, split]) {
        violations.push(SuiteViolation {
            check: "tensor-multiplicativity".into(),
            witness: json!({
                "alpha": a_v,
                "product": product,
                "split": split,
                "x1": matrix_to_json(&u1),
                "x2": matrix_to_json(&u2),
                "y1": matrix_to_json(w1.matrix()),
                "y2": matrix_to_json(w2.matrix()),
            }),
        });
    }

    Ok((checks, violations))
}

// ---------------------------------------------------------------------------
// Suite: norm laws.
// ---------------------------------------------------------------------------

/// Delegates to the norm-family law verifier over representative reference
/// sets (a singleton, diagonal simplices at dimensions 2 and 3, and an
/// identity-factor simplex) and index pairs; `trials` is split evenly.
pub fn run_norm_laws(trials: usize, seed: u64) -> Result<SuiteReport> {
    if trials == 0 {
        return Err(Error::Domain("suite needs at least one trial".into()));
    }
    let cfg = OptimizerConfig { restarts: 2, unitary_samples: 120, ..OptimizerConfig::default() };
    let tau = random_density(2, 2, derive_seed(seed, 900))?;
    let configs: Vec<(PsdSet, NormIndices, &'static str)> = vec![
        (PsdSet::singleton(tau), NormIndices::primal(1.0, 2.0)?, "singleton d=2, (1,2)"),
        (PsdSet::diagonal_states(2)?, NormIndices::primal(2.0, 4.0)?, "diagonal d=2, (2,4)"),
        (PsdSet::diagonal_states(3)?, NormIndices::primal(1.0, 2.0)?, "diagonal d=3, (1,2)"),
        (PsdSet::identity_factor(2, 2)?, NormIndices::primal(1.0, 2.0)?, "identity-factor 2x2, (1,2)"),
    ];
    let per = trials.div_ceil(configs.len()).max(1);
    let labeled: Vec<(usize, PsdSet, NormIndices, &'static str)> = configs
        .into_iter()
        .enumerate()
        .map(|(i, (set, idx, label))| (i, set, idx, label))
        .collect();
    let outs = map_collect(labeled, |(i, set, idx, label)| {
        verify_norm_laws(&set, &idx, per, derive_seed(seed, i as u64), &cfg)
            .map(|report| (label, report))
    });
    let mut checks = 0;
    let mut trials_run = 0;
    let mut violations = Vec::new();
    for out in outs {
        let (label, report) = out?;
        checks += report.checks;
        trials_run += report.trials;
        for detail in report.violations {
            violations.push(SuiteViolation {
                check: "norm-law".into(),
                witness: json!({ "configuration": label, "detail": detail }),
            });
        }
    }
    Ok(SuiteReport { suite: Suite::NormLaws, seed, trials: trials_run, checks, violations })
}

// ---------------------------------------------------------------------------
// Suite: bound validity.
// ---------------------------------------------------------------------------

/// Quantities the bound-validity suite can target.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ValidityQuantity {
    /// Optimized conditional entropy under all applicable approaches.
    CondEntropy,
    /// Optimized mutual information under its dedicated bound.
    MutualInfo,
    /// Optimized conditional mutual information (tripartite states).
    Cmi,
    /// Divergence difference at a fixed full-rank second argument.
    FirstArg,
    /// Divergence of a state against a nearby full-rank reference.
    DivergenceBound,
    /// Minimal divergence to the separable states.
    SepDistance,
    /// Minimal divergence over products with a fixed left factor.
    GenMi,
}

impl std::fmt::Display for ValidityQuantity {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let name = match self {
            ValidityQuantity::CondEntropy => "cond-entropy",
            ValidityQuantity::MutualInfo => "mutual-info",
            ValidityQuantity::Cmi => "cmi",
            ValidityQuantity::FirstArg => "first-arg",
            ValidityQuantity::DivergenceBound => "divergence-bound",
            ValidityQuantity::SepDistance => "sep-distance",
            ValidityQuantity::GenMi => "gen-mi",
        };
        write!(f, "{name}")
    }
}

impl std::str::FromStr for ValidityQuantity {
    type Err = Error;

    fn from_str(s: &str) -> Result<ValidityQuantity> {
        match s {
            "cond-entropy" => Ok(ValidityQuantity::CondEntropy),
            "mutual-info" => Ok(ValidityQuantity::MutualInfo),
            "cmi" => Ok(ValidityQuantity::Cmi),
            "first-arg" => Ok(ValidityQuantity::FirstArg),
            "divergence-bound" => Ok(ValidityQuantity::DivergenceBound),
            "sep-distance" => Ok(ValidityQuantity::SepDistance),
            "gen-mi" => Ok(ValidityQuantity::GenMi),
            other => Err(Error::Parse(format!("unknown validity quantity `{other}`"))),
        }
    }
}

/// Bound-validity request: per `(alpha, eps)` configuration, `trials`
/// random pairs at exact trace distance `eps` are drawn and the quantity
/// difference is checked against every applicable bound.
#[derive(Debug, Clone)]
pub struct ValidityConfig {
    /// Quantity under test.
    pub quantity: ValidityQuantity,
    /// First factor dimension.
    pub d_a: usize,
    /// Second factor dimension.
    pub d_b: usize,
    /// Third factor dimension (tripartite quantities only).
    pub d_c: usize,
    /// Orders to draw at.
    pub alphas: Vec<Alpha>,
    /// Trace distances to draw at, each in `(0, 1)`.
    pub epsilons: Vec<f64>,
    /// Random pairs per `(alpha, eps)` configuration.
    pub trials: usize,
    /// Run seed.
    pub seed: u64,
    /// Also check the prior-work baselines on the same samples and the
    /// fixed new-vs-baseline dominance point (conditional entropy only).
    pub baselines: bool,
    /// Engine configuration for the optimized quantities.
    pub opt: OptimizerConfig,
}

impl ValidityConfig {
    /// Default verify run: conditional entropy on qubit pairs over a small
    /// order/distance grid, baselines included.
    pub fn default_run(trials: usize, seed: u64) -> ValidityConfig {
        ValidityConfig {
            quantity: ValidityQuantity::CondEntropy,
            d_a: 2,
            d_b: 2,
            d_c: 2,
            alphas: vec![
                Alpha::new(0.7).expect("valid order"),
                Alpha::new(1.5).expect("valid order"),
                Alpha::new(3.0).expect("valid order"),
            ],
            epsilons: vec![1e-3, 1e-2, 0.1],
            trials,
            seed,
            baselines: true,
            opt: OptimizerConfig::default(),
        }
    }

    fn validate(&self) -> Result<()> {
        if self.d_a < 2 || self.d_b < 2 || self.d_c < 1 {
            return Err(Error::Domain("validity run needs d_A, d_B >= 2".into()));
        }
        if self.alphas.is_empty() || self.epsilons.is_empty() {
            return Err(Error::Domain("validity axes must be non-empty".into()));
        }
        for &e in &self.epsilons {
            if !(e > 0.0 && e < 1.0) {
                return Err(Error::Domain(format!("eps = {e} outside (0, 1)")));
            }
        }
        if self.trials == 0 {
            return Err(Error::Domain("validity run needs at least one trial".into()));
        }
        Ok(())
    }
}

const ALL_APPROACHES: [Approach; 3] =
    [Approach::Axiomatic, Approach::OperatorSpace, Approach::Mixed];

/// Counts the check if the bound applies in this regime, records a
/// violation when the difference exceeds bound plus slack, and bubbles
/// real errors. Witness construction is deferred to violations.
fn check_bound<W>(
    checks: &mut usize,
    violations: &mut Vec<SuiteViolation>,
    name: &str,
    bound: Result<f64>,
    diff: f64,
    slack: f64,
    witness: W,
) -> Result<()>
where
    W: FnOnce(f64) -> Value,
{
    match bound {
        Ok(b) => {
            *checks += 1;
            if diff > b + slack {
                violations.push(SuiteViolation { check: name.to_string(), witness: witness(b) });
            }
            Ok(())
        }
        Err(Error::Domain(_)) => Ok(()),
        Err(e) => Err(e),
    }
}

/// Runs the bound-validity suite described by `cfg`: the prior-work
/// baselines are checked on the same samples when requested, along with
/// the fixed dominance point (the new high-order bound at distance 1e-3,
/// order 2, qubit first factor must not exceed the conjugate-order
/// baseline).
pub fn run_bound_validity(cfg: &ValidityConfig) -> Result<SuiteReport> {
    cfg.validate()?;
    let mut cells = Vec::with_capacity(cfg.alphas.len() * cfg.epsilons.len() * cfg.trials);
    for &alpha in &cfg.alphas {
        for &eps in &cfg.epsilons {
            for _ in 0..cfg.trials {
                cells.push((cells.len() as u64, alpha, eps));
            }
        }
    }
    let total = cells.len();
    let outs = map_collect(cells, |(idx, alpha, eps)| {
        validity_trial(cfg, alpha, eps, derive_seed(cfg.seed, idx))
    });
    let mut checks = 0;
    let mut violations = Vec::new();
    for out in outs {
        let (c, mut v) = out?;
        checks += c;
        violations.append(&mut v);
    }
    if cfg.baselines && cfg.quantity == ValidityQuantity::CondEntropy {
        let alpha = Alpha::new(2.0)?;
        let mut params = BoundParams::new(alpha, 1e-3);
        params.d_a = Some(2);
        let new_bound = bound_for_quantity(Quantity::CondEntropy, Approach::Axiomatic, &params)?;
        let base = baseline_marwah(alpha, 1e-3, 2)?;
        checks += 1;
        if new_bound > base {
            violations.push(SuiteViolation {
                check: "new-vs-marwah".into(),
                witness: json!({
                    "alpha": 2.0,
                    "eps": 1e-3,
                    "d_a": 2,
                    "new_bound": new_bound,
                    "baseline": base,
                }),
            });
        }
    }
    Ok(SuiteReport { suite: Suite::BoundValidity, seed: cfg.seed, trials: total, checks, violations })
}

fn validity_trial(
    cfg: &ValidityConfig,
    alpha: Alpha,
    eps: f64,
    trial_seed: u64,
) -> Result<(usize, Vec<SuiteViolation>)> {
    let slack = 1e-6 + 2.0 * cfg.opt.tolerance;
    let mut checks = 0usize;
    let mut violations = Vec::new();
    let d = cfg.d_a * cfg.d_b;
    let alpha_s = alpha.to_string();

    match cfg.quantity {
        ValidityQuantity::CondEntropy => {
            let (rho, sigma) = random_pair_at_distance(d, eps, trial_seed, None)?;
            let rp = PartitionedState::new(rho, vec![cfg.d_a, cfg.d_b])?;
            let sp = PartitionedState::new(sigma, vec![cfg.d_a, cfg.d_b])?;
            let diff = (cond_entropy_up_with(&rp, alpha, &cfg.opt)?
                - cond_entropy_up_with(&sp, alpha, &cfg.opt)?)
            .abs();
            let mut params = BoundParams::new(alpha, eps);
            params.d_a = Some(cfg.d_a);
            for approach in ALL_APPROACHES {
                check_bound(
                    &mut checks,
                    &mut violations,
                    "cond-entropy",
                    bound_for_quantity(Quantity::CondEntropy, approach, &params),
                    diff,
                    slack,
                    |b| {
                        json!({
                            "approach": approach.to_string(),
                            "alpha": alpha_s,
                            "eps": eps,
                            "difference": diff,
                            "bound": b,
                            "rho": state_to_json(&rp),
                            "sigma": state_to_json(&sp),
                        })
                    },
                )?;
            }
            if cfg.baselines {
                let marwah = baseline_marwah(alpha, eps, cfg.d_a);
                let beigi = baseline_beigi(alpha, eps, cfg.d_a);
                for (name, bound) in [("baseline-marwah", marwah), ("baseline-beigi", beigi)] {
                    check_bound(&mut checks, &mut violations, name, bound, diff, slack, |b| {
                        json!({
                            "alpha": alpha_s,
                            "eps": eps,
                            "difference": diff,
                            "bound": b,
                            "rho": state_to_json(&rp),
                            "sigma": state_to_json(&sp),
                        })
                    })?;
                }
            }
        }
        ValidityQuantity::MutualInfo => {
            let (rho, sigma) = random_pair_at_distance(d, eps, trial_seed, None)?;
            let rp = PartitionedState::new(rho, vec![cfg.d_a, cfg.d_b])?;
            let sp = PartitionedState::new(sigma, vec![cfg.d_a, cfg.d_b])?;
            let diff =
                (mutual_info_up(&rp, alpha, &cfg.opt)? - mutual_info_up(&sp, alpha, &cfg.opt)?).abs();
            check_bound(
                &mut checks,
                &mut violations,
                "mutual-info",
                bound_mutual_info(alpha, eps, cfg.d_a.min(cfg.d_b)),
                diff,
                slack,
                |b| {
                    json!({
                        "alpha": alpha_s,
                        "eps": eps,
                        "difference": diff,
                        "bound": b,
                        "rho": state_to_json(&rp),
                        "sigma": state_to_json(&sp),
                    })
                },
            )?;
        }
        ValidityQuantity::Cmi => {
            let d3 = cfg.d_a * cfg.d_b * cfg.d_c;
            let (rho, sigma) = random_pair_at_distance(d3, eps, trial_seed, None)?;
            let rp = PartitionedState::new(rho, vec![cfg.d_a, cfg.d_b, cfg.d_c])?;
            let sp = PartitionedState::new(sigma, vec![cfg.d_a, cfg.d_b, cfg.d_c])?;
            let diff = (cmi_up_with(&rp, alpha, &cfg.opt)? - cmi_up_with(&sp, alpha, &cfg.opt)?).abs();
            for approach in ALL_APPROACHES {
                check_bound(
                    &mut checks,
                    &mut violations,
                    "cmi",
                    bound_cmi(approach, alpha, eps, cfg.d_a),
                    diff,
                    slack,
                    |b| {
                        json!({
                            "approach": approach.to_string(),
                            "alpha": alpha_s,
                            "eps": eps,
                            "difference": diff,
                            "bound": b,
                            "rho": state_to_json(&rp),
                            "sigma": state_to_json(&sp),
                        })
                    },
                )?;
            }
        }
        ValidityQuantity::FirstArg => {
            let mut rng = seeded_rng(derive_seed(trial_seed, 1));
            let tau = floored_density(d, 0.05, &mut rng)?;
            let m_tau = tau.min_eig();
            let (rho, sigma) = random_pair_at_distance(d, eps, trial_seed, None)?;
            let diff = (d_sandwiched(&rho, tau.matrix(), alpha)?
                - d_sandwiched(&sigma, tau.matrix(), alpha)?)
            .abs();
            let mut params = BoundParams::new(alpha, eps);
            params.m_tau = Some(m_tau);
            for approach in ALL_APPROACHES {
                check_bound(
                    &mut checks,
                    &mut violations,
                    "first-arg",
                    bound_for_quantity(Quantity::FirstArg, approach, &params),
                    diff,
                    slack,
                    |b| {
                        json!({
                            "approach": approach.to_string(),
                            "alpha": alpha_s,
                            "eps": eps,
                            "m_tau": m_tau,
                            "difference": diff,
                            "bound": b,
                            "rho": matrix_to_json(rho.matrix()),
                            "sigma": matrix_to_json(sigma.matrix()),
                            "tau": matrix_to_json(tau.matrix()),
                        })
                    },
                )?;
            }
        }
        ValidityQuantity::DivergenceBound => {
            let (rho, tau) = random_pair_at_distance(d, eps, trial_seed, Some(0.05))?;
            let m_tau = tau.min_eig();
            let value = d_sandwiched(&rho, tau.matrix(), alpha)?;
            let mut params = BoundParams::new(alpha, eps);
            params.m_tau = Some(m_tau);
            for approach in ALL_APPROACHES {
                check_bound(
                    &mut checks,
                    &mut violations,
                    "divergence-bound",
                    bound_for_quantity(Quantity::DivergenceBound, approach, &params),
                    value,
                    slack,
                    |b| {
                        json!({
                            "approach": approach.to_string(),
                            "alpha": alpha_s,
                            "eps": eps,
                            "m_tau": m_tau,
                            "value": value,
                            "bound": b,
                            "rho": matrix_to_json(rho.matrix()),
                            "tau": matrix_to_json(tau.matrix()),
                        })
                    },
                )?;
            }
        }
        ValidityQuantity::SepDistance => {
            let (rho, sigma) = random_pair_at_distance(d, eps, trial_seed, None)?;
            let rp = PartitionedState::new(rho, vec![cfg.d_a, cfg.d_b])?;
            let sp = PartitionedState::new(sigma, vec![cfg.d_a, cfg.d_b])?;
            let diff =
                (sep_distance(&rp, alpha, &cfg.opt)? - sep_distance(&sp, alpha, &cfg.opt)?).abs();
            let mut params = BoundParams::new(alpha, eps);
            params.d_a = Some(cfg.d_a);
            params.d_b = Some(cfg.d_b);
            for approach in ALL_APPROACHES {
                check_bound(
                    &mut checks,
                    &mut violations,
                    "sep-distance",
                    bound_for_quantity(Quantity::SepDistance, approach, &params),
                    diff,
                    slack,
                    |b| {
                        json!({
                            "approach": approach.to_string(),
                            "alpha": alpha_s,
                            "eps": eps,
                            "difference": diff,
                            "bound": b,
                            "rho": state_to_json(&rp),
                            "sigma": state_to_json(&sp),
                        })
                    },
                )?;
            }
        }
        ValidityQuantity::GenMi => {
            let mut rng = seeded_rng(derive_seed(trial_seed, 1));
            let tau_a = floored_density(cfg.d_a, 0.05, &mut rng)?;
            let m_tau = tau_a.min_eig();
            let (rho, sigma) = random_pair_at_distance(d, eps, trial_seed, None)?;
            let rp = PartitionedState::new(rho, vec![cfg.d_a, cfg.d_b])?;
            let sp = PartitionedState::new(sigma, vec![cfg.d_a, cfg.d_b])?;
            let diff = (gen_mutual_info(&rp, &tau_a, alpha, &cfg.opt)?
                - gen_mutual_info(&sp, &tau_a, alpha, &cfg.opt)?)
            .abs();
            let mut params = BoundParams::new(alpha, eps);
            params.d_a = Some(cfg.d_a);
            params.d_b = Some(cfg.d_b);
            params.m_tau = Some(m_tau);
            for approach in ALL_APPROACHES {
                check_bound(
                    &mut checks,
                    &mut violations,
                    "gen-mi",
                    bound_for_quantity(Quantity::GenMi, approach, &params),
                    diff,
                    slack,
                    |b| {
                        json!({
                            "approach": approach.to_string(),
                            "alpha": alpha_s,
                            "eps": eps,
                            "m_tau": m_tau,
                            "difference": diff,
                            "bound": b,
                            "rho": state_to_json(&rp),
                            "sigma": state_to_json(&sp),
                            "tau_a": matrix_to_json(tau_a.matrix()),
                        })
                    },
                )?;
            }
        }
    }
    Ok((checks, violations))
}

// ---------------------------------------------------------------------------
// Suite: almost-convexity and two-input continuity.
// ---------------------------------------------------------------------------

const ALAFF_ALPHAS: [f64; 5] = [0.6, 0.8, 1.5, 2.5, 4.0];
const ALAFF_DIMS: [usize; 3] = [2, 3, 4];
const ALAFF_FLOORS: [f64; 2] = [0.05, 0.1];

/// Checks the almost-concavity/convexity defect formula (sign, envelope,
/// and the mixture inequality it certifies) and the two-input continuity
/// bounds on the trace functional and the divergence, over random draws
/// with spectrum floors.
pub fn run_alaff(trials: usize, seed: u64) -> Result<SuiteReport> {
    let (checks, violations) = run_trials(trials, |i| alaff_trial(seed, i))?;
    Ok(SuiteReport { suite: Suite::Alaff, seed, trials, checks, violations })
}

fn alaff_trial(seed: u64, idx: usize) -> Result<(usize, Vec<SuiteViolation>)> {
    let trial_seed = derive_seed(seed, idx as u64);
    let mut rng = seeded_rng(trial_seed);
    let d = ALAFF_DIMS[idx % ALAFF_DIMS.len()];
    let m = ALAFF_FLOORS[(idx / ALAFF_DIMS.len()) % ALAFF_FLOORS.len()];
    let a_v = ALAFF_ALPHAS[idx % ALAFF_ALPHAS.len()];
    let alpha = Alpha::new(a_v)?;
    let below = a_v < 1.0;
    let mut checks = 0usize;
    let mut violations = Vec::new();

    // Part A: defect formula on a random mixture with floored second
    // arguments.
    let r1 = random_density_with(d, d, &mut rng)?;
    let r2 = random_density_with(d, d, &mut rng)?;
    let s1 = floored_density(d, m, &mut rng)?;
    let s2 = floored_density(d, m, &mut rng)?;
    let p: f64 = rng.gen_range(0.1..0.9);
    let m1 = s1.min_eig();
    let m2 = s2.min_eig();
    let xi = alaff_xi(alpha, p, m1, m2)?;
    let uv = alaff_uv(alpha, p, m1, m2)?;
    let q1 = q_sandwiched(r1.matrix(), s1.matrix(), alpha)?;
    let q2 = q_sandwiched(r2.matrix(), s2.matrix(), alpha)?;
    let mix_r = r1.matrix() * cf(p) + r2.matrix() * cf(1.0 - p);
    let mix_s = s1.matrix() * cf(p) + s2.matrix() * cf(1.0 - p);
    let q_mix = q_sandwiched(&mix_r, &mix_s, alpha)?;
    let tiny = 1e-12 * uv.abs().max(1.0);
    let part_a_witness = |lhs: f64, rhs: f64| {
        json!({
            "alpha": a_v,
            "p": p,
            "m1": m1,
            "m2": m2,
            "xi": xi,
            "envelope": uv,
            "lhs": lhs,
            "rhs": rhs,
            "rho1": matrix_to_json(r1.matrix()),
            "rho2": matrix_to_json(r2.matrix()),
            "sigma1": matrix_to_json(s1.matrix()),
            "sigma2": matrix_to_json(s2.matrix()),
        })
    };
    checks += 1;
    let sign_ok = if below { xi >= -tiny } else { xi <= tiny };
    if !sign_ok {
        violations.push(SuiteViolation {
            check: "defect-sign".into(),
            witness: part_a_witness(xi, 0.0),
        });
    }
    checks += 1;
    let envelope_ok = if below { xi <= uv + tiny } else { xi >= uv - tiny };
    if !envelope_ok {
        violations.push(SuiteViolation {
            check: "defect-envelope".into(),
            witness: part_a_witness(xi, uv),
        });
    }
    checks += 1;
    let split = p * q1 + (1.0 - p) * q2;
    let slack = rel_slack(&[q_mix, split]);
    let mixture_ok = if below {
        q_mix <= split + xi + slack
    } else {
        q_mix + slack >= split + xi
    };
    if !mixture_ok {
        violations.push(SuiteViolation {
            check: "defect-mixture".into(),
            witness: part_a_witness(q_mix, split + xi),
        });
    }

    // Part B: two-input continuity at matched floors. The floor parameter
    // is m while the drawn second arguments sit at floor 2m, the stated
    // precondition of the bound.
    let eps = [0.01, 0.05][idx % 2];
    let delta = [0.02, 0.05][(idx / 2) % 2];
    let (t1, t2) = random_pair_at_distance(d, delta, derive_seed(trial_seed, 5), Some(2.0 * m))?;
    let (p1, p2) = random_pair_at_distance(d, eps, derive_seed(trial_seed, 6), None)?;
    let mut params = BoundParams::new(alpha, eps);
    params.delta = delta;
    params.m_min = Some(m);
    params.d_a = Some(d);
    let qa = q_sandwiched(p1.matrix(), t1.matrix(), alpha)?;
    let qb = q_sandwiched(p2.matrix(), t2.matrix(), alpha)?;
    let q_bound = alaff_bounds(AlaffQuantity::QTwoInput, &params)?;
    let part_b_witness = |diff: f64, bound: f64| {
        json!({
            "alpha": a_v,
            "eps": eps,
            "delta": delta,
            "m": m,
            "difference": diff,
            "bound": bound,
            "rho1": matrix_to_json(p1.matrix()),
            "rho2": matrix_to_json(p2.matrix()),
            "sigma1": matrix_to_json(t1.matrix()),
            "sigma2": matrix_to_json(t2.matrix()),
        })
    };
    checks += 1;
    let q_diff = (qa - qb).abs();
    if q_diff > q_bound + rel_slack(&[qa, qb]) {
        violations.push(SuiteViolation {
            check: "two-input-q".into(),
            witness: part_b_witness(q_diff, q_bound),
        });
    }
    checks += 1;
    let da = d_sandwiched(&p1, t1.matrix(), alpha)?;
    let db = d_sandwiched(&p2, t2.matrix(), alpha)?;
    let d_bound = alaff_bounds(AlaffQuantity::DTwoInput, &params)?;
    let d_diff = (da - db).abs();
    if d_diff > d_bound + rel_slack(&[da, db]) {
        violations.push(SuiteViolation {
            check: "two-input-d".into(),
            witness: part_b_witness(d_diff, d_bound),
        });
    }

    Ok((checks, violations))
}

// ---------------------------------------------------------------------------
// Suite: recovery maps and certificates.
// ---------------------------------------------------------------------------

const MARKOV_REGIMES: [(f64, f64); 3] = [(0.6, 0.1), (1.5, 0.25), (3.0, 0.1)];

/// Checks approximate-chain certificates on random positive definite
/// tripartite states across both order regimes, exactness of recovery on
/// constructed chains, and the averaging-density normalization.
pub fn run_markov(trials: usize, seed: u64) -> Result<SuiteReport> {
    let (mut checks, mut violations) = run_trials(trials, |i| markov_trial(seed, i))?;
    let (fixed_checks, mut fixed_violations) = markov_fixed_checks(seed)?;
    checks += fixed_checks;
    violations.append(&mut fixed_violations);
    Ok(SuiteReport { suite: Suite::Markov, seed, trials, checks, violations })
}

fn markov_trial(seed: u64, idx: usize) -> Result<(usize, Vec<SuiteViolation>)> {
    let mut rng = seeded_rng(derive_seed(seed, idx as u64));
    let (a_v, cert_param) = MARKOV_REGIMES[idx % MARKOV_REGIMES.len()];
    let t = [0.0, 0.5][idx % 2];
    let raw = random_density_with(8, 8, &mut rng)?;
    let mixed = raw.matrix() * cf(0.9) + identity(8) * cf(0.1 / 8.0);
    let rho = PartitionedState::new(DensityMatrix::from_matrix(mixed)?, vec![2, 2, 2])?;
    let mut checks = 0usize;
    let mut violations = Vec::new();
    match certify_amc(&rho, Alpha::new(a_v)?, cert_param, t) {
        Ok(cert) => {
            // The sandwich itself is verified inside; two consistency
            // checks on top.
            checks += 3;
            if cert.cmi_value < -1e-9 {
                violations.push(SuiteViolation {
                    check: "certificate-cmi-sign".into(),
                    witness: json!({
                        "alpha": a_v,
                        "cert_param": cert_param,
                        "t": t,
                        "cmi": cert.cmi_value,
                        "state": state_to_json(&rho),
                    }),
                });
            }
            if cert.lower_bound > cert.upper_bound + 1e-9 {
                violations.push(SuiteViolation {
                    check: "certificate-bounds-ordered".into(),
                    witness: json!({
                        "alpha": a_v,
                        "cert_param": cert_param,
                        "t": t,
                        "lower": cert.lower_bound,
                        "upper": cert.upper_bound,
                        "state": state_to_json(&rho),
                    }),
                });
            }
        }
        Err(Error::Verification(msg)) => {
            checks += 3;
            violations.push(SuiteViolation {
                check: "certificate-sandwich".into(),
                witness: json!({
                    "alpha": a_v,
                    "cert_param": cert_param,
                    "t": t,
                    "detail": msg,
                    "state": state_to_json(&rho),
                }),
            });
        }
        Err(e) => return Err(e),
    }
    Ok((checks, violations))
}

fn markov_fixed_checks(seed: u64) -> Result<(usize, Vec<SuiteViolation>)> {
    let mut rng = seeded_rng(derive_seed(seed, 0xC0FF_EE00));
    let mut checks = 0usize;
    let mut violations = Vec::new();

    let rho_a = random_density_with(2, 2, &mut rng)?;
    let bc = PartitionedState::new(random_density_with(4, 4, &mut rng)?, vec![2, 2])?;
    let product = product_chain(&rho_a, &bc)?;

    let weights = [0.3, 0.7];
    let a_blocks = [
        random_density_with(2, 2, &mut rng)?,
        random_density_with(2, 2, &mut rng)?,
    ];
    let c_blocks = [
        random_density_with(2, 2, &mut rng)?,
        random_density_with(2, 2, &mut rng)?,
    ];
    let classical = classical_chain(&weights, &a_blocks, &c_blocks)?;

    let alpha = Alpha::new(1.5)?;
    for (label, chain) in [("product", &product), ("classical", &classical)] {
        for kind in [RecoveryKind::Petz, RecoveryKind::Rotated(0.7), RecoveryKind::universal()] {
            checks += 1;
            let gap = markov_gap(chain, &kind)?;
            if gap > 1e-7 {
                violations.push(SuiteViolation {
                    check: "exact-chain-gap".into(),
                    witness: json!({
                        "chain": label,
                        "recovery": format!("{kind:?}"),
                        "gap": gap,
                        "state": state_to_json(chain),
                    }),
                });
            }
        }
        checks += 1;
        let cmi = cmi_nonvar(chain, alpha)?;
        if cmi.abs() > 1e-7 {
            violations.push(SuiteViolation {
                check: "exact-chain-cmi".into(),
                witness: json!({
                    "chain": label,
                    "alpha": 1.5,
                    "cmi": cmi,
                    "state": state_to_json(chain),
                }),
            });
        }
        checks += 1;
        let cert = certify_amc(chain, alpha, 0.2, 0.3)?;
        if cert.lower_bound > 1e-9 || cert.cmi_value.abs() > 1e-7 {
            violations.push(SuiteViolation {
                check: "exact-chain-certificate".into(),
                witness: json!({
                    "chain": label,
                    "lower": cert.lower_bound,
                    "cmi": cert.cmi_value,
                    "state": state_to_json(chain),
                }),
            });
        }
    }

    // Averaging-density normalization under the default quadrature.
    checks += 1;
    let mass: f64 = gauss_legendre(201)
        .into_iter()
        .map(|(node, weight)| weight * 10.0 * beta0(node * 10.0))
        .sum();
    if (mass - 1.0).abs() > 1e-10 {
        violations.push(SuiteViolation {
            check: "averaging-density-mass".into(),
            witness: json!({ "mass": mass }),
        });
    }

    Ok((checks, violations))
}
