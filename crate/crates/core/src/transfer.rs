//! Perfect state transfer, strong cospectrality, periodicity, sedentariness
//! and pretty-good-transfer evidence between real pure states.
//!
//! PST from `x` to `y` at `τ` means `U(τ)x = γy` for a unit `γ`; numerically
//! this is `|yᵀU(τ)x| ≥ 1 - tol`, and the phase is `yᵀU(τ)x` normalized.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::ser::{Serialize, SerializeStruct, Serializer};

use crate::error::{Error, Result};
use crate::graph::{Cluster, HamiltonianModel, RealPureState};
use crate::spectral::{support, SpectralDecomposition, Support, TransitionAmplitude};

/// Residual allowed when candidate times are exact (integer eigenvalue gaps).
pub const EXACT_TOL: f64 = 1e-9;
/// Residual allowed for times found by numeric search.
pub const NUMERIC_TOL: f64 = 1e-7;
/// Tolerance on `‖E_λx ∓ E_λy‖` for strong cospectrality.
pub const SIGN_TOL: f64 = 1e-8;
/// Periodicity ignores times below this.
pub const MIN_PERIOD: f64 = 1e-6;
/// Fidelity threshold reported as PGST evidence; an engineering choice with no
/// analytic backing.
pub const PGST_EVIDENCE_THRESHOLD: f64 = 0.9;

const PARALLEL_TOL: f64 = 1e-12;
const INTEGER_TOL: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Pst,
    Periodic,
    NotStronglyCospectral,
    PhaseMismatch,
    Inconclusive,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Pst => "PST",
            Verdict::Periodic => "periodic",
            Verdict::NotStronglyCospectral => "not-strongly-cospectral",
            Verdict::PhaseMismatch => "phase-mismatch",
            Verdict::Inconclusive => "inconclusive",
        }
    }

    pub fn is_positive(self) -> bool {
        matches!(self, Verdict::Pst | Verdict::Periodic)
    }
}

/// Signs `σ_λ` with `E_λx = σ_λ E_λy`, keyed by eigenvalue.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct SignMap {
    pub entries: Vec<(f64, i8)>,
}

impl SignMap {
    pub fn sign_of(&self, eigenvalue: f64) -> Option<i8> {
        self.entries
            .iter()
            .find(|(l, _)| (l - eigenvalue).abs() <= 1e-9 * l.abs().max(1.0))
            .map(|&(_, s)| s)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TransferCertificate {
    pub verdict: Verdict,
    /// Time of transfer; `None` when no time is being certified.
    pub tau: Option<f64>,
    pub gamma: Complex64,
    pub sign_map: SignMap,
    /// `1 - |yᵀU(τ)x|` at the reported time.
    pub residual: f64,
    pub note: Option<String>,
}

impl TransferCertificate {
    fn negative(verdict: Verdict, note: impl Into<String>) -> Self {
        Self {
            verdict,
            tau: None,
            gamma: Complex64::new(1.0, 0.0),
            sign_map: SignMap::default(),
            residual: 1.0,
            note: Some(note.into()),
        }
    }

    pub fn is_pst(&self) -> bool {
        self.verdict == Verdict::Pst
    }

    /// `arg γ / π`.
    pub fn gamma_arg_over_pi(&self) -> f64 {
        self.gamma.arg() / PI
    }
}

impl Serialize for TransferCertificate {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(serde::Serialize)]
        struct Gamma {
            re: f64,
            im: f64,
        }
        let fields = if self.note.is_some() { 7 } else { 6 };
        let mut st = s.serialize_struct("TransferCertificate", fields)?;
        st.serialize_field("verdict", self.verdict.as_str())?;
        st.serialize_field("tau", &self.tau)?;
        st.serialize_field(
            "gamma",
            &Gamma {
                re: self.gamma.re,
                im: self.gamma.im,
            },
        )?;
        st.serialize_field("gamma_arg_over_pi", &self.gamma_arg_over_pi())?;
        let signs: Vec<(f64, i8)> = self.sign_map.entries.clone();
        st.serialize_field("sign_map", &signs)?;
        st.serialize_field("residual", &self.residual)?;
        if let Some(note) = &self.note {
            st.serialize_field("note", note)?;
        }
        st.end()
    }
}

fn parallel(x: &RealPureState, y: &RealPureState) -> bool {
    x.dot(y).abs() >= 1.0 - PARALLEL_TOL
}

fn unit_phase(z: Complex64) -> Complex64 {
    if z.norm() > 0.0 {
        z / z.norm()
    } else {
        Complex64::new(1.0, 0.0)
    }
}

/// Signs `σ_λ` with `E_λx = σ_λE_λy` on every eigenvalue of `σ_x ∪ σ_y`, if
/// they exist. Fixed states are never strongly cospectral.
pub fn strong_cospectral(dec: &SpectralDecomposition, x: &RealPureState, y: &RealPureState) -> Result<Option<SignMap>> {
    if x.dim() != y.dim() {
        return Err(Error::DimensionMismatch {
            expected: x.dim(),
            got: y.dim(),
        });
    }
    if parallel(x, y) {
        return Err(Error::ParallelStates);
    }
    let sx = support(dec, x)?;
    let sy = support(dec, y)?;
    if sx.len() <= 1 || sy.len() <= 1 {
        return Ok(None);
    }
    let cx = dec.components(x)?;
    let cy = dec.components(y)?;
    let mut entries = Vec::new();
    for (k, &l) in dec.eigenvalues().iter().enumerate() {
        if !sx.contains_index(k) && !sy.contains_index(k) {
            continue;
        }
        let sign = if (&cx[k] - &cy[k]).norm() <= SIGN_TOL {
            1
        } else if (&cx[k] + &cy[k]).norm() <= SIGN_TOL {
            -1
        } else {
            return Ok(None);
        };
        entries.push((l, sign));
    }
    Ok(Some(SignMap { entries }))
}

fn support_signs(s: &Support) -> SignMap {
    SignMap {
        entries: s.entries.iter().map(|e| (e.eigenvalue, 1)).collect(),
    }
}

/// Tests `U(τ)x = γy` at a single time.
///
/// When `x` and `y` are parallel a positive result is reported as
/// [`Verdict::Periodic`] rather than PST.
pub fn check_pst_at(
    dec: &SpectralDecomposition,
    x: &RealPureState,
    y: &RealPureState,
    tau: f64,
    tol: f64,
) -> Result<TransferCertificate> {
    if !(tau > 0.0 && tau.is_finite()) {
        return Err(Error::InvalidParameter(format!("transfer time must be positive, got {tau}")));
    }
    let amp = TransitionAmplitude::new(dec, x, y)?.at(tau);
    let residual = (1.0 - amp.norm()).max(0.0);
    let mut cert = TransferCertificate {
        verdict: Verdict::Pst,
        tau: Some(tau),
        gamma: unit_phase(amp),
        sign_map: SignMap::default(),
        residual,
        note: None,
    };

    if parallel(x, y) {
        cert.sign_map = support_signs(&support(dec, x)?);
        cert.verdict = if residual <= tol {
            Verdict::Periodic
        } else {
            Verdict::PhaseMismatch
        };
        return Ok(cert);
    }

    match strong_cospectral(dec, x, y)? {
        Some(signs) => {
            cert.sign_map = signs;
            if residual > tol {
                cert.verdict = Verdict::PhaseMismatch;
            }
        }
        None if residual <= tol => {
            cert.verdict = Verdict::Inconclusive;
            cert.note = Some("fidelity within tolerance but sign test failed".into());
        }
        None => {
            cert.verdict = Verdict::NotStronglyCospectral;
            if support(dec, x)?.len() == 1 {
                cert.note = Some("fixed state".into());
            }
        }
    }
    Ok(cert)
}

/// Knobs for [`find_pst`], [`is_periodic`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SearchOptions {
    /// Search window `(0, window]`.
    pub window: f64,
    /// Grid points per period of the fastest oscillation in the numeric branch.
    pub grid_per_period: usize,
    pub exact_tol: f64,
    pub numeric_tol: f64,
}

impl Default for SearchOptions {
    fn default() -> Self {
        Self {
            window: 4.0 * PI,
            grid_per_period: 10_000,
            exact_tol: EXACT_TOL,
            numeric_tol: NUMERIC_TOL,
        }
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// If every eigenvalue differs from the first by an integer, returns the gcd of
/// those differences. All transfer times then lie in `(π/g)ℤ`.
fn integer_gap_gcd(eigenvalues: &[f64]) -> Option<u64> {
    let base = *eigenvalues.first()?;
    let mut g = 0u64;
    for &l in &eigenvalues[1..] {
        let d = l - base;
        let r = d.round();
        if (d - r).abs() > INTEGER_TOL || r.abs() > 1e12 {
            return None;
        }
        g = gcd(g, r.abs() as u64);
    }
    Some(g)
}

fn union_eigenvalues(sx: &Support, sy: &Support) -> Vec<f64> {
    let mut idx: Vec<(usize, f64)> = sx
        .entries
        .iter()
        .chain(&sy.entries)
        .map(|e| (e.index, e.eigenvalue))
        .collect();
    idx.sort_by_key(|&(i, _)| i);
    idx.dedup_by_key(|&mut (i, _)| i);
    idx.into_iter().map(|(_, l)| l).collect()
}

/// Golden-section minimization of `f` on `[a, b]` down to bracket width `tol`.
fn golden_min(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64, tol: f64) -> (f64, f64) {
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    for _ in 0..200 {
        if (b - a).abs() <= tol {
            break;
        }
        if fc <= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    if fc <= fd {
        (c, fc)
    } else {
        (d, fd)
    }
}

/// Refined local maxima of `|amp(t)|` on a uniform grid over `(start, window]`.
fn numeric_maxima(amp: &TransitionAmplitude, start: f64, window: f64, grid_per_period: usize) -> Vec<(f64, f64)> {
    let bandwidth = amp.bandwidth();
    if bandwidth <= 0.0 || window <= start {
        return Vec::new();
    }
    let step = (2.0 * PI / bandwidth) / grid_per_period.max(10) as f64;
    let points = (((window - start) / step).ceil() as usize).clamp(3, 50_000_000);
    let step = (window - start) / points as f64;
    let infid = |t: f64| 1.0 - amp.fidelity(t);

    let mut out = Vec::new();
    let mut prev = infid(start);
    let mut cur = infid(start + step);
    for i in 1..=points {
        let t = start + i as f64 * step;
        let next = if i < points { infid(t + step) } else { f64::INFINITY };
        if cur <= prev && cur <= next && cur < 1e-2 {
            let lo = t - step;
            let hi = (t + step).min(window);
            let (tau, r) = golden_min(infid, lo, hi, 1e-12);
            let (tau, r) = if r <= cur { (tau, r) } else { (t, cur) };
            out.push((tau, r));
        }
        prev = cur;
        cur = next;
    }
    out
}

fn dedup_times(mut certs: Vec<TransferCertificate>) -> Vec<TransferCertificate> {
    certs.sort_by(|a, b| a.tau.unwrap_or(0.0).total_cmp(&b.tau.unwrap_or(0.0)));
    certs.dedup_by(|b, a| match (a.tau, b.tau) {
        (Some(ta), Some(tb)) => (ta - tb).abs() < 1e-6,
        _ => false,
    });
    certs
}

/// All PST times from `x` to `y` in the search window, ascending.
///
/// Returns a single negative certificate when none exist or none are found:
/// not strongly cospectral states are rejected immediately; with integer
/// eigenvalue gaps every candidate time `πk/g` is tested exactly and a miss
/// is definitive; otherwise the infidelity is scanned and refined, and a miss
/// is only inconclusive. Parallel states are routed to [`periodic_times`].
pub fn find_pst(
    dec: &SpectralDecomposition,
    x: &RealPureState,
    y: &RealPureState,
    opts: &SearchOptions,
) -> Result<Vec<TransferCertificate>> {
    if parallel(x, y) {
        return periodic_times(dec, x, opts);
    }
    let Some(signs) = strong_cospectral(dec, x, y)? else {
        let note = if support(dec, x)?.len() == 1 {
            "fixed state"
        } else {
            "states are not strongly cospectral"
        };
        return Ok(vec![TransferCertificate::negative(Verdict::NotStronglyCospectral, note)]);
    };
    let sx = support(dec, x)?;
    let sy = support(dec, y)?;
    let eigs = union_eigenvalues(&sx, &sy);

    if let Some(g) = integer_gap_gcd(&eigs).filter(|&g| g > 0) {
        let mut found = Vec::new();
        let mut best: Option<TransferCertificate> = None;
        let mut k = 1u64;
        loop {
            let tau = PI * k as f64 / g as f64;
            if tau > opts.window * (1.0 + 1e-12) {
                break;
            }
            let cert = check_pst_at(dec, x, y, tau, opts.exact_tol)?;
            if cert.is_pst() {
                found.push(cert);
            } else if best.as_ref().is_none_or(|b| cert.residual < b.residual) {
                best = Some(cert);
            }
            k += 1;
        }
        if !found.is_empty() {
            return Ok(found);
        }
        let mut miss = best.unwrap_or_else(|| TransferCertificate::negative(Verdict::PhaseMismatch, ""));
        miss.verdict = Verdict::PhaseMismatch;
        miss.sign_map = signs;
        miss.note = Some(format!("no candidate time pi*k/{g} in window aligns the phases"));
        return Ok(vec![miss]);
    }

    let amp = TransitionAmplitude::new(dec, x, y)?;
    let mut found = Vec::new();
    let mut best: Option<(f64, f64)> = None;
    for (tau, r) in numeric_maxima(&amp, 0.0, opts.window, opts.grid_per_period) {
        if r <= opts.numeric_tol {
            let cert = check_pst_at(dec, x, y, tau, opts.numeric_tol)?;
            if cert.is_pst() {
                found.push(cert);
                continue;
            }
        }
        if best.is_none_or(|(_, br)| r < br) {
            best = Some((tau, r));
        }
    }
    if !found.is_empty() {
        return Ok(dedup_times(found));
    }
    let mut miss = match best {
        Some((tau, _)) => check_pst_at(dec, x, y, tau, opts.numeric_tol)?,
        None => TransferCertificate::negative(Verdict::Inconclusive, ""),
    };
    miss.verdict = Verdict::Inconclusive;
    miss.sign_map = signs;
    miss.note = Some("no PST found by numeric search in window".into());
    Ok(vec![miss])
}

/// Times in the window at which `x` returns to itself up to phase.
///
/// A fixed state is periodic at every time; the first grid time is reported.
pub fn periodic_times(dec: &SpectralDecomposition, x: &RealPureState, opts: &SearchOptions) -> Result<Vec<TransferCertificate>> {
    let sx = support(dec, x)?;
    if sx.len() == 1 {
        let tau = (opts.window / opts.grid_per_period.max(1) as f64).max(MIN_PERIOD);
        let lambda = sx.entries[0].eigenvalue;
        return Ok(vec![TransferCertificate {
            verdict: Verdict::Periodic,
            tau: Some(tau),
            gamma: Complex64::from_polar(1.0, tau * lambda),
            sign_map: support_signs(&sx),
            residual: 0.0,
            note: Some("fixed state: periodic at every time".into()),
        }]);
    }
    let eigs = sx.eigenvalues();
    if let Some(g) = integer_gap_gcd(&eigs).filter(|&g| g > 0) {
        let mut found = Vec::new();
        let mut k = 1u64;
        loop {
            let tau = PI * k as f64 / g as f64;
            if tau > opts.window * (1.0 + 1e-12) {
                break;
            }
            if tau >= MIN_PERIOD {
                let cert = check_pst_at(dec, x, x, tau, opts.exact_tol)?;
                if cert.verdict == Verdict::Periodic {
                    found.push(cert);
                }
            }
            k += 1;
        }
        if found.is_empty() {
            return Ok(vec![TransferCertificate::negative(
                Verdict::PhaseMismatch,
                format!("no candidate time pi*k/{g} in window returns the state"),
            )]);
        }
        return Ok(found);
    }
    let amp = TransitionAmplitude::new(dec, x, x)?;
    let mut found = Vec::new();
    for (tau, r) in numeric_maxima(&amp, 0.0, opts.window, opts.grid_per_period) {
        if tau >= MIN_PERIOD && r <= opts.numeric_tol {
            let cert = check_pst_at(dec, x, x, tau, opts.numeric_tol)?;
            if cert.verdict == Verdict::Periodic {
                found.push(cert);
            }
        }
    }
    if found.is_empty() {
        return Ok(vec![TransferCertificate::negative(
            Verdict::Inconclusive,
            "no return found by numeric search in window",
        )]);
    }
    Ok(dedup_times(found))
}

/// Smallest period `τ` in the window with its phase, if one is found.
pub fn is_periodic(dec: &SpectralDecomposition, x: &RealPureState, opts: &SearchOptions) -> Result<Option<(f64, Complex64)>> {
    Ok(periodic_times(dec, x, opts)?
        .into_iter()
        .find(|c| c.verdict == Verdict::Periodic)
        .and_then(|c| c.tau.map(|t| (t, c.gamma))))
}

/// Phase picked up by a lifted state `x̃` in `G(H)` relative to `x` in `H`:
/// `e^{iδτ·1ᵀz}`.
pub fn cluster_phase(model: HamiltonianModel, cluster: &Cluster, tau: f64) -> Complex64 {
    Complex64::from_polar(1.0, model.delta() as f64 * tau * cluster.weight_sum())
}

/// Window estimate of `inf_{t>0} |xᵀU(t)x|`.
///
/// This is a sampled minimum, so it can only over-estimate the true
/// infimum on the window; it is not a certified lower bound.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct SedentaryEstimate {
    pub window: f64,
    pub grid: usize,
    pub grid_step: f64,
    pub estimate: f64,
    pub argmin: f64,
}

pub fn sedentariness(dec: &SpectralDecomposition, x: &RealPureState, window: f64, grid: usize) -> Result<SedentaryEstimate> {
    if !(window > 0.0 && window.is_finite()) || grid == 0 {
        return Err(Error::InvalidParameter("sedentariness needs a positive window and grid".into()));
    }
    let amp = TransitionAmplitude::new(dec, x, x)?;
    let step = window / grid as f64;
    let (mut argmin, mut best) = (step, f64::INFINITY);
    for k in 1..=grid {
        let t = k as f64 * step;
        let v = amp.fidelity(t);
        if v < best {
            best = v;
            argmin = t;
        }
    }
    let lo = (argmin - step).max(step * 1e-3);
    let hi = (argmin + step).min(window);
    let (t, v) = golden_min(|t| amp.fidelity(t), lo, hi, 1e-12);
    if v < best {
        best = v;
        argmin = t;
    }
    Ok(SedentaryEstimate {
        window,
        grid,
        grid_step: step,
        estimate: best.clamp(0.0, 1.0),
        argmin,
    })
}

/// Best sampled fidelity between two states; evidence for PGST, never proof.
#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct PgstEvidence {
    pub sup_fidelity: f64,
    /// Best times found, best first (at most ten).
    pub achieving_times: Vec<f64>,
    pub t_max: f64,
    pub samples: usize,
    pub strongly_cospectral: bool,
    pub exceeds_threshold: bool,
    pub note: Option<String>,
}

/// Incremental PGST sampler. Extending the window only samples the new part
/// and keeps the best points so far, so the sup is nondecreasing in `t_max`.
#[derive(Debug, Clone)]
pub struct PgstTracker {
    amp: TransitionAmplitude,
    rng: ChaCha8Rng,
    covered: f64,
    samples: usize,
    strongly_cospectral: bool,
    /// (time, fidelity), best first.
    best: Vec<(f64, f64)>,
}

const PGST_KEEP: usize = 10;

impl PgstTracker {
    pub fn new(dec: &SpectralDecomposition, x: &RealPureState, y: &RealPureState, seed: u64) -> Result<Self> {
        let sc = if parallel(x, y) {
            false
        } else {
            strong_cospectral(dec, x, y)?.is_some()
        };
        Ok(Self {
            amp: TransitionAmplitude::new(dec, x, y)?,
            rng: ChaCha8Rng::seed_from_u64(seed),
            covered: 0.0,
            samples: 0,
            strongly_cospectral: sc,
            best: Vec::new(),
        })
    }

    fn offer(&mut self, t: f64, f: f64) {
        if self.best.len() == PGST_KEEP && f <= self.best[PGST_KEEP - 1].1 {
            return;
        }
        let pos = self.best.partition_point(|&(_, bf)| bf >= f);
        self.best.insert(pos, (t, f));
        self.best.truncate(PGST_KEEP);
    }

    /// Samples `(covered, t_max]` with `samples` points: half on a uniform
    /// grid, half one-per-stratum at random. The best points of this pass
    /// are then refined locally.
    pub fn extend(&mut self, t_max: f64, samples: usize) -> PgstEvidence {
        if t_max > self.covered && samples > 0 {
            let start = self.covered;
            let span = t_max - start;
            let uniform = samples.div_ceil(2);
            let strata = samples - uniform;
            let mut pass: Vec<(f64, f64)> = Vec::new();
            let keep = |list: &mut Vec<(f64, f64)>, t: f64, f: f64| {
                if list.len() < PGST_KEEP || f > list[list.len() - 1].1 {
                    let pos = list.partition_point(|&(_, bf)| bf >= f);
                    list.insert(pos, (t, f));
                    list.truncate(PGST_KEEP);
                }
            };
            let du = span / uniform as f64;
            for k in 1..=uniform {
                let t = start + k as f64 * du;
                keep(&mut pass, t, self.amp.fidelity(t));
            }
            if strata > 0 {
                let ds = span / strata as f64;
                for k in 0..strata {
                    let t = start + (k as f64 + self.rng.random::<f64>()) * ds;
                    if t > 0.0 {
                        keep(&mut pass, t, self.amp.fidelity(t));
                    }
                }
            }
            let h = du.max(span / samples as f64);
            for (t, f) in pass {
                let lo = (t - h).max(start.max(1e-12));
                let hi = (t + h).min(t_max);
                let (rt, rf) = golden_min(|s| -self.amp.fidelity(s), lo, hi, 1e-12);
                if -rf > f {
                    self.offer(rt, -rf);
                } else {
                    self.offer(t, f);
                }
            }
            self.covered = t_max;
            self.samples += samples;
        }
        self.evidence()
    }

    pub fn evidence(&self) -> PgstEvidence {
        let sup = self.best.first().map_or(0.0, |&(_, f)| f);
        let note = if self.strongly_cospectral {
            None
        } else {
            Some("states are not strongly cospectral; PGST is impossible".to_string())
        };
        PgstEvidence {
            sup_fidelity: sup,
            achieving_times: self.best.iter().map(|&(t, _)| t).collect(),
            t_max: self.covered,
            samples: self.samples,
            strongly_cospectral: self.strongly_cospectral,
            exceeds_threshold: sup > PGST_EVIDENCE_THRESHOLD,
            note,
        }
    }
}

/// One-shot PGST sampling over `(0, t_max]`.
pub fn pgst_evidence(
    dec: &SpectralDecomposition,
    x: &RealPureState,
    y: &RealPureState,
    t_max: f64,
    samples: usize,
    seed: u64,
) -> Result<PgstEvidence> {
    Ok(PgstTracker::new(dec, x, y, seed)?.extend(t_max, samples))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::complete_minus_matching;
    use crate::graph::{HamiltonianModel::*, WeightedGraph};
    use approx::assert_abs_diff_eq;
    use std::f64::consts::FRAC_PI_2;

    fn dec(g: &WeightedGraph, m: HamiltonianModel) -> SpectralDecomposition {
        SpectralDecomposition::of_graph(g, m).unwrap()
    }

    fn pair(n: usize, a: usize, b: usize) -> RealPureState {
        RealPureState::pair(n, a, b).unwrap()
    }

    #[test]
    fn c4_signs() {
        let d = dec(&WeightedGraph::cycle(4), Adjacency);
        let signs = strong_cospectral(&d, &pair(4, 0, 1), &pair(4, 3, 2)).unwrap().unwrap();
        assert_eq!(signs.len(), 2);
        assert_eq!(signs.sign_of(-2.0), Some(-1));
        assert_eq!(signs.sign_of(0.0), Some(1));
    }

    #[test]
    fn fixed_and_parallel() {
        let d = dec(&WeightedGraph::complete(5), Adjacency);
        assert!(strong_cospectral(&d, &pair(5, 0, 1), &pair(5, 2, 3)).unwrap().is_none());
        let x = pair(5, 0, 1);
        assert!(matches!(strong_cospectral(&d, &x, &x.negated()), Err(Error::ParallelStates)));
    }

    #[test]
    fn k4_minus_edge_laplacian_not_cospectral() {
        // missing edge {0,1}: a=0, b=1, c=2, d=3
        let g = complete_minus_matching(4, 1).unwrap();
        let d = dec(&g, Laplacian);
        assert!(strong_cospectral(&d, &pair(4, 0, 2), &pair(4, 1, 3)).unwrap().is_none());
    }

    #[test]
    fn k2_vertex_pst() {
        let d = dec(&WeightedGraph::complete(2), Adjacency);
        let e0 = RealPureState::vertex(2, 0).unwrap();
        let e1 = RealPureState::vertex(2, 1).unwrap();
        let c = check_pst_at(&d, &e0, &e1, FRAC_PI_2, EXACT_TOL).unwrap();
        assert!(c.is_pst());
        assert!((c.gamma - Complex64::i()).norm() < 1e-12);
        assert_abs_diff_eq!(c.gamma.norm(), 1.0, epsilon = 1e-12);
    }

    #[test]
    fn p3_laplacian_phase() {
        // path a - c - b stored as 0 - 1 - 2 with c = 1
        let d = dec(&WeightedGraph::path(3), Laplacian);
        let c = check_pst_at(&d, &pair(3, 0, 1), &pair(3, 2, 1), FRAC_PI_2, EXACT_TOL).unwrap();
        assert!(c.is_pst());
        assert!((c.gamma + Complex64::i()).norm() < 1e-12);
        assert_abs_diff_eq!(c.gamma_arg_over_pi(), -0.5, epsilon = 1e-12);
    }

    #[test]
    fn self_transfer_is_periodic_not_pst() {
        let d = dec(&WeightedGraph::cycle(5), Adjacency);
        let x = RealPureState::from_slice(&[0.3, -0.1, 0.5, 0.2, 0.7]).unwrap();
        let c = check_pst_at(&d, &x, &x, 1e-6, EXACT_TOL).unwrap();
        assert_eq!(c.verdict, Verdict::Periodic);
    }

    #[test]
    fn find_pst_branches() {
        let opts = SearchOptions::default();
        for m in HamiltonianModel::ALL {
            let d = dec(&WeightedGraph::cycle(4), m);
            let certs = find_pst(&d, &pair(4, 0, 1), &pair(4, 3, 2), &opts).unwrap();
            assert!(certs[0].is_pst(), "{m}");
            assert_abs_diff_eq!(certs[0].tau.unwrap(), FRAC_PI_2, epsilon = 1e-12);
            assert!(certs.iter().all(|c| c.is_pst()));

            let d = dec(&WeightedGraph::complete(5), m);
            let certs = find_pst(&d, &pair(5, 0, 1), &pair(5, 2, 3), &opts).unwrap();
            assert_eq!(certs.len(), 1);
            assert_eq!(certs[0].verdict, Verdict::NotStronglyCospectral);
            assert_eq!(certs[0].note.as_deref(), Some("fixed state"));
        }
    }

    #[test]
    fn numeric_branch_finds_irrational_pst() {
        // scaling K2 by √2 makes the gap irrational; PST at π/(2√2)
        let g = WeightedGraph::from_edges(2, [(0, 1, 2f64.sqrt())]).unwrap();
        let d = dec(&g, Adjacency);
        let e0 = RealPureState::vertex(2, 0).unwrap();
        let e1 = RealPureState::vertex(2, 1).unwrap();
        let certs = find_pst(&d, &e0, &e1, &SearchOptions::default()).unwrap();
        assert!(certs[0].is_pst());
        assert_abs_diff_eq!(certs[0].tau.unwrap(), FRAC_PI_2 / 2f64.sqrt(), epsilon = 1e-7);
        assert!(certs[0].residual <= NUMERIC_TOL);
    }

    #[test]
    fn periodicity() {
        let opts = SearchOptions::default();
        let d = dec(&WeightedGraph::complete(2), Laplacian);
        let (tau, gamma) = is_periodic(&d, &RealPureState::vertex(2, 0).unwrap(), &opts).unwrap().unwrap();
        assert_abs_diff_eq!(tau, PI, epsilon = 1e-12);
        assert!((gamma - Complex64::new(1.0, 0.0)).norm() < 1e-12);

        let d = dec(&WeightedGraph::cycle(4), Adjacency);
        let (tau, _) = is_periodic(&d, &pair(4, 0, 1), &opts).unwrap().unwrap();
        assert_abs_diff_eq!(tau, PI, epsilon = 1e-12);

        let d = dec(&WeightedGraph::complete(4), Adjacency);
        let (tau, gamma) = is_periodic(&d, &pair(4, 0, 1), &opts).unwrap().unwrap();
        assert!(tau >= MIN_PERIOD);
        assert!((gamma - Complex64::from_polar(1.0, -tau)).norm() < 1e-12);
    }

    #[test]
    fn sedentary_estimates() {
        let d = dec(&WeightedGraph::complete(2), Adjacency);
        let s = sedentariness(&d, &RealPureState::vertex(2, 0).unwrap(), PI, 1000).unwrap();
        assert!(s.estimate < 1e-9);
        assert_abs_diff_eq!(s.argmin, FRAC_PI_2, epsilon = 1e-6);

        let d = dec(&WeightedGraph::complete(5), Adjacency);
        let s = sedentariness(&d, &pair(5, 0, 1), 10.0, 500).unwrap();
        assert_abs_diff_eq!(s.estimate, 1.0, epsilon = 1e-12);

        let d = dec(&WeightedGraph::cycle(4), Adjacency);
        let s = sedentariness(&d, &pair(4, 0, 1), 3.0, 3000).unwrap();
        assert!(s.estimate <= 1e-6);
    }

    #[test]
    fn pgst_basic() {
        let d = dec(&WeightedGraph::cycle(4), Adjacency);
        let ev = pgst_evidence(&d, &pair(4, 0, 1), &pair(4, 3, 2), 10.0, 2000, 0).unwrap();
        assert!(ev.sup_fidelity > 1.0 - 1e-9);
        assert!(ev.strongly_cospectral);

        let d = dec(&WeightedGraph::complete(5), Adjacency);
        let ev = pgst_evidence(&d, &pair(5, 0, 1), &pair(5, 0, 2), 100.0, 5000, 1).unwrap();
        // |yᵀx| = 1/2 and x is an eigenvector, so the fidelity never moves
        assert_abs_diff_eq!(ev.sup_fidelity, 0.5, epsilon = 1e-12);
        assert!(!ev.strongly_cospectral);
    }

    #[test]
    fn certificate_json_shape() {
        let d = dec(&WeightedGraph::cycle(4), Adjacency);
        let c = check_pst_at(&d, &pair(4, 0, 1), &pair(4, 3, 2), FRAC_PI_2, EXACT_TOL).unwrap();
        let v: serde_json::Value = serde_json::to_value(&c).unwrap();
        assert_eq!(v["verdict"], "PST");
        assert!(v["gamma"]["re"].is_number() && v["gamma"]["im"].is_number());
        assert_eq!(v["sign_map"].as_array().unwrap().len(), 2);
        assert!(v["sign_map"][0][1].as_i64().unwrap().abs() == 1);
        assert!(v["residual"].as_f64().unwrap() <= EXACT_TOL);
    }
}
