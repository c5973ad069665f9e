//! Adaptive Gauss–Kronrod (7/15) quadrature.
//!
//! Used to check closed-form integrals against brute force, so it favours
//! precision over speed.

use alloc::vec::Vec;

use crate::{Error, Result};

const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.000_000_000_000_000_000_000_000_000_000_000,
];

const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];

// Gauss weights for the odd-indexed Kronrod nodes (1, 3, 5) and the centre.
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

const MAX_INTERVALS: usize = 20_000;

/// Integral value with its estimated absolute error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub value: f64,
    pub error: f64,
}

fn gk15(f: &mut impl FnMut(f64) -> f64, a: f64, b: f64) -> Estimate {
    let centre = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(centre);
    let mut kronrod = fc * WGK[7];
    let mut gauss = fc * WG[3];
    for (j, (&x, &w)) in XGK.iter().zip(&WGK).take(7).enumerate() {
        let dx = half * x;
        let pair = f(centre - dx) + f(centre + dx);
        kronrod += w * pair;
        if j % 2 == 1 {
            gauss += WG[j / 2] * pair;
        }
    }
    Estimate {
        value: kronrod * half,
        error: ((kronrod - gauss) * half).abs(),
    }
}

/// Integrates `f` over `[a, b]` by global adaptive bisection.
///
/// Converges when the summed error estimate is below
/// `max(abs_tol, rel_tol·|I|)`.
pub fn integrate(
    mut f: impl FnMut(f64) -> f64,
    a: f64,
    b: f64,
    abs_tol: f64,
    rel_tol: f64,
) -> Result<Estimate> {
    if !(a.is_finite() && b.is_finite()) {
        return Err(Error::Domain("integration bounds must be finite"));
    }
    if a == b {
        return Ok(Estimate {
            value: 0.0,
            error: 0.0,
        });
    }
    let mut intervals: Vec<(f64, f64, Estimate)> = Vec::new();
    let first = gk15(&mut f, a, b);
    intervals.push((a, b, first));
    loop {
        let total: f64 = intervals.iter().map(|i| i.2.value).sum();
        let error: f64 = intervals.iter().map(|i| i.2.error).sum();
        if !total.is_finite() || !error.is_finite() {
            return Err(Error::Quadrature { error });
        }
        if error <= abs_tol.max(rel_tol * total.abs()) {
            return Ok(Estimate {
                value: total,
                error,
            });
        }
        if intervals.len() >= MAX_INTERVALS {
            return Err(Error::Quadrature { error });
        }
        let (worst, _) = intervals
            .iter()
            .enumerate()
            .max_by(|x, y| x.1 .2.error.total_cmp(&y.1 .2.error))
            .expect("non-empty");
        let (lo, hi, _) = intervals.swap_remove(worst);
        let mid = 0.5 * (lo + hi);
        if !(mid > lo && mid < hi) {
            // Interval exhausted at machine precision.
            return Err(Error::Quadrature { error });
        }
        intervals.push((lo, mid, gk15(&mut f, lo, mid)));
        intervals.push((mid, hi, gk15(&mut f, mid, hi)));
    }
}

fn sample_peak(f: &mut impl FnMut(f64) -> f64, lo: f64, hi: f64, peak: &mut f64) {
    for i in 0..=64 {
        let v = f(lo + (hi - lo) * i as f64 / 64.0);
        if v.is_finite() {
            *peak = peak.max(v.abs());
        }
    }
}

/// Integrates a nonnegative, eventually decaying `f` over `[0, ∞)`.
///
/// The upper limit doubles until the integrand has fallen below `1e-14` of
/// its largest sampled value and the last added chunk no longer moves the
/// total at relative `1e-15`.
pub fn integrate_to_infinity(mut f: impl FnMut(f64) -> f64, rel_tol: f64) -> Result<Estimate> {
    let mut upper = 1.0;
    let mut peak = 0.0f64;
    sample_peak(&mut f, 0.0, upper, &mut peak);
    let mut total = integrate(&mut f, 0.0, upper, 0.0, rel_tol)?;
    for _ in 0..200 {
        let next = upper * 2.0;
        sample_peak(&mut f, upper, next, &mut peak);
        let chunk = integrate(&mut f, upper, next, 0.0, rel_tol)?;
        total.value += chunk.value;
        total.error += chunk.error;
        upper = next;
        let tail = f(upper).abs();
        if tail <= 1e-14 * peak && chunk.value.abs() <= 1e-15 * total.value.abs() {
            return Ok(total);
        }
    }
    Err(Error::Quadrature { error: total.error })
}
