//! Log-domain hypergeometric functions for nonnegative real arguments.
//!
//! All series here have positive terms, so summation is well conditioned;
//! the only hazard is overflow, which is avoided by carrying an explicit
//! power-of-two scale next to the running term and sum.

use crate::{Error, Result};

/// Relative size of the last retained term.
pub const SERIES_TOL: f64 = 1e-17;

/// Hard cap on the number of series terms.
pub const MAX_TERMS: usize = 100_000;

/// Above this argument `log_0f1` uses the Hankel expansion of `I_ν`.
pub const SWITCH_0F1: f64 = 1e8;

/// Above this argument `log_1f1` may use the asymptotic expansion.
pub const SWITCH_1F1: f64 = 1e4;

const LN_2: f64 = core::f64::consts::LN_2;
const LN_PI: f64 = 1.144_729_885_849_400_2;
const RESCALE_AT: f64 = 1e250;
// 2^-830, exact in binary.
const RESCALE_BY: f64 = f64::from_bits((1023 - 830) << 52);
const RESCALE_LOG: f64 = 830.0 * LN_2;

#[inline]
pub(crate) fn ln_gamma(x: f64) -> f64 {
    libm::lgamma(x)
}

/// Neumaier-compensated sum.
#[derive(Debug, Default, Clone, Copy)]
pub(crate) struct CompensatedSum {
    sum: f64,
    comp: f64,
}

impl CompensatedSum {
    pub(crate) fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub(crate) fn value(&self) -> f64 {
        self.sum + self.comp
    }

    fn scale(&mut self, f: f64) {
        self.sum *= f;
        self.comp *= f;
    }
}

/// Sum of values given by their logarithms.
#[derive(Debug, Clone, Copy)]
pub(crate) struct LogSum {
    shift: f64,
    acc: CompensatedSum,
}

impl LogSum {
    pub(crate) fn new() -> Self {
        Self {
            shift: f64::NEG_INFINITY,
            acc: CompensatedSum::default(),
        }
    }

    pub(crate) fn add_ln(&mut self, ln_term: f64) {
        if ln_term == f64::NEG_INFINITY {
            return;
        }
        if ln_term > self.shift {
            if self.shift != f64::NEG_INFINITY {
                self.acc.scale(libm::exp(self.shift - ln_term));
            }
            self.shift = ln_term;
        }
        self.acc.add(libm::exp(ln_term - self.shift));
    }

    pub(crate) fn ln(&self) -> f64 {
        self.shift + libm::log(self.acc.value())
    }

    /// Current value relative to `exp(reference)`.
    pub(crate) fn relative_to(&self, ln_reference: f64) -> f64 {
        self.acc.value() * libm::exp(self.shift - ln_reference)
    }
}

/// Sums a positive series from its term ratio `t_{m+1}/t_m = ratio(m)`,
/// starting at `t_0 = 1`. Returns the natural log of the sum.
fn log_positive_series(mut ratio: impl FnMut(f64) -> f64) -> Result<f64> {
    let mut term = 1.0;
    let mut sum = CompensatedSum::default();
    sum.add(1.0);
    let mut offset = 0.0;
    for m in 0..MAX_TERMS {
        let r = ratio(m as f64);
        term *= r;
        sum.add(term);
        if sum.value() > RESCALE_AT {
            sum.scale(RESCALE_BY);
            term *= RESCALE_BY;
            offset += RESCALE_LOG;
        }
        if r < 1.0 && term <= SERIES_TOL * sum.value() {
            return Ok(offset + libm::log(sum.value()));
        }
    }
    Err(Error::SeriesLimit(MAX_TERMS))
}

/// `log ₀F₁(; b; x)` for `b > 0`, `x ≥ 0`.
pub fn log_0f1(b: f64, x: f64) -> Result<f64> {
    if !(b > 0.0) || !b.is_finite() {
        return Err(Error::Domain("0F1 requires b > 0"));
    }
    if !(x >= 0.0) || !x.is_finite() {
        return Err(Error::Domain("0F1 requires finite x >= 0"));
    }
    if x == 0.0 {
        return Ok(0.0);
    }
    if x > SWITCH_0F1 {
        if let Some(v) = log_0f1_hankel(b, x) {
            return Ok(v);
        }
    }
    log_positive_series(|m| x / ((b + m) * (m + 1.0)))
}

/// Large-argument form via `₀F₁(;b;x) = Γ(b) x^{(1−b)/2} I_{b−1}(2√x)` and the
/// Hankel expansion of `I_ν`. `None` when the expansion does not settle.
fn log_0f1_hankel(b: f64, x: f64) -> Option<f64> {
    let nu = b - 1.0;
    let t = 2.0 * libm::sqrt(x);
    let mu = 4.0 * nu * nu;
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 1..64 {
        let kf = k as f64;
        let odd = 2.0 * kf - 1.0;
        let next = -term * (mu - odd * odd) / (kf * 8.0 * t);
        if next.abs() > term.abs() {
            return None;
        }
        term = next;
        sum += term;
        if term.abs() <= SERIES_TOL * sum.abs() {
            let ln_i = t - 0.5 * (LN_2 + LN_PI + libm::log(t)) + libm::log(sum);
            return Some(ln_gamma(b) + 0.5 * (1.0 - b) * libm::log(x) + ln_i);
        }
    }
    None
}

fn check_1f1(a: f64, b: f64, x: f64) -> Result<()> {
    if !(a > 0.0) || !(b > 0.0) || !a.is_finite() || !b.is_finite() {
        return Err(Error::Domain("1F1 requires a > 0 and b > 0"));
    }
    if !(x >= 0.0) || !x.is_finite() {
        return Err(Error::Domain("1F1 requires finite x >= 0"));
    }
    Ok(())
}

/// `log ₁F₁(a; b; x)` summed directly from the power series.
pub fn log_1f1_series(a: f64, b: f64, x: f64) -> Result<f64> {
    check_1f1(a, b, x)?;
    if x == 0.0 {
        return Ok(0.0);
    }
    log_positive_series(|m| (a + m) * x / ((b + m) * (m + 1.0)))
}

/// `log ₁F₁(a; b; x)` for `a, b > 0`, `x ≥ 0`.
///
/// Uses the power series, switching beyond [`SWITCH_1F1`] to the
/// large-argument expansion `Γ(b)/Γ(a)·eˣ·x^{a−b}·Σ (b−a)ₛ(1−a)ₛ/(s!·xˢ)`
/// when its terms fall off fast enough.
pub fn log_1f1(a: f64, b: f64, x: f64) -> Result<f64> {
    check_1f1(a, b, x)?;
    if x == 0.0 {
        return Ok(0.0);
    }
    if a == b {
        return Ok(x);
    }
    let spread = (b - a).abs().max(1.0) * (1.0 - a).abs().max(1.0);
    if x > SWITCH_1F1 && x > 64.0 * spread {
        let mut term = 1.0;
        let mut sum = 1.0;
        for s in 0..200 {
            let sf = s as f64;
            term *= (b - a + sf) * (1.0 - a + sf) / ((sf + 1.0) * x);
            sum += term;
            if term.abs() <= SERIES_TOL * sum.abs() {
                return Ok(log_1f1_asymptotic(a, b, x)? + libm::log(sum));
            }
        }
    }
    log_1f1_series(a, b, x)
}

/// Leading-order `log[Γ(b)/Γ(a) · eˣ · x^{a−b}]`.
pub fn log_1f1_asymptotic(a: f64, b: f64, x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::Domain("asymptotic 1F1 requires x > 0"));
    }
    if !(a > 0.0) || !(b > 0.0) {
        return Err(Error::Domain("1F1 requires a > 0 and b > 0"));
    }
    Ok(ln_gamma(b) - ln_gamma(a) + x + (a - b) * libm::log(x))
}

/// Upper bound on diagonals summed by [`log_humbert_psi2`].
pub const MAX_DIAGONALS: usize = 20_000;

/// `log Ψ₂(a; b, c; x, y) = log Σ_{m,n} (a)_{m+n} xᵐ yⁿ / ((b)_m (c)_n m! n!)`.
///
/// Terms are accumulated diagonal by diagonal (`d = m + n`) in the log
/// domain; summation stops once a diagonal past the peak adds less than
/// [`SERIES_TOL`] relative.
pub fn log_humbert_psi2(a: f64, b: f64, c: f64, x: f64, y: f64) -> Result<f64> {
    if !(a > 0.0 && b > 0.0 && c > 0.0) {
        return Err(Error::Domain("Psi2 requires a, b, c > 0"));
    }
    if !(x >= 0.0 && y >= 0.0) || !x.is_finite() || !y.is_finite() {
        return Err(Error::Domain("Psi2 requires finite x, y >= 0"));
    }
    let ln_x = libm::log(x);
    let ln_y = libm::log(y);
    // ln[xᵐ/((b)_m m!)] and ln[yⁿ/((c)_n n!)], extended on demand.
    let mut px: alloc::vec::Vec<f64> = alloc::vec![0.0];
    let mut py: alloc::vec::Vec<f64> = alloc::vec![0.0];
    let mut ln_poch_a = 0.0;
    let mut total = LogSum::new();
    let mut previous_diag = f64::NEG_INFINITY;

    for d in 0..MAX_DIAGONALS {
        if d > 0 {
            let k = (d - 1) as f64;
            ln_poch_a += libm::log(a + k);
            let lx = px[d - 1] + ln_x - libm::log(b + k) - libm::log(k + 1.0);
            let ly = py[d - 1] + ln_y - libm::log(c + k) - libm::log(k + 1.0);
            px.push(if x == 0.0 { f64::NEG_INFINITY } else { lx });
            py.push(if y == 0.0 { f64::NEG_INFINITY } else { ly });
        }
        let mut diag = LogSum::new();
        for m in 0..=d {
            let l = ln_poch_a + px[m] + py[d - m];
            diag.add_ln(l);
            total.add_ln(l);
        }
        let diag_ln = diag.ln();
        if diag_ln == f64::NEG_INFINITY && d > 0 {
            return Ok(total.ln());
        }
        let past_peak = diag_ln < previous_diag;
        if past_peak && diag.relative_to(total.ln()) <= SERIES_TOL {
            return Ok(total.ln());
        }
        previous_diag = diag_ln;
    }
    Err(Error::SeriesLimit(MAX_DIAGONALS))
}
