//! Globally adaptive Gauss–Kronrod (7/15) quadrature for vector-valued complex
//! integrands on finite intervals.

use num_complex::Complex64;
use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::{Error, Result};

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

#[derive(Debug, Clone, Copy)]
pub struct QuadOptions {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_segments: usize,
}

impl Default for QuadOptions {
    fn default() -> Self {
        QuadOptions {
            rel_tol: 1e-12,
            abs_tol: 1e-300,
            max_segments: 4000,
        }
    }
}

#[derive(Debug, Clone)]
pub struct QuadResult {
    pub values: Vec<Complex64>,
    /// Largest per-component absolute error estimate.
    pub error: f64,
    pub segments: usize,
}

struct Segment {
    a: f64,
    b: f64,
    values: Vec<Complex64>,
    errors: Vec<f64>,
    l1: Vec<f64>,
    priority: f64,
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.priority == other.priority
    }
}
impl Eq for Segment {}
impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Segment {
    fn cmp(&self, other: &Self) -> Ordering {
        self.priority.total_cmp(&other.priority)
    }
}

fn kronrod<F: FnMut(f64, &mut [Complex64])>(
    f: &mut F,
    a: f64,
    b: f64,
    dim: usize,
    buf: &mut [Complex64],
) -> (Vec<Complex64>, Vec<f64>, Vec<f64>) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let mut samples: Vec<(f64, Vec<Complex64>)> = Vec::with_capacity(15);
    let mut k = vec![Complex64::new(0.0, 0.0); dim];
    let mut g = vec![Complex64::new(0.0, 0.0); dim];
    let mut l1 = vec![0.0; dim];
    for (i, (&x, &w)) in XGK.iter().zip(WGK.iter()).enumerate() {
        let nodes: &[f64] = if x == 0.0 { &[0.0] } else { &[-1.0, 1.0] };
        for &s in nodes {
            f(c + s * h * x, buf);
            for d in 0..dim {
                k[d] += buf[d] * w;
                l1[d] += buf[d].norm() * w;
                if i % 2 == 1 {
                    g[d] += buf[d] * WG[i / 2];
                }
            }
            samples.push((w, buf.to_vec()));
        }
    }
    // QUADPACK-style scaling of |K − G| against the spread ∫|f − mean|
    let mut err = Vec::with_capacity(dim);
    for d in 0..dim {
        let mean = k[d] * 0.5;
        let asc: f64 = samples
            .iter()
            .map(|(w, v)| w * (v[d] - mean).norm())
            .sum::<f64>()
            * h.abs();
        let raw = ((k[d] - g[d]) * h).norm();
        let mut e = if asc > 0.0 && raw > 0.0 {
            asc * (200.0 * raw / asc).powf(1.5).min(1.0)
        } else {
            raw
        };
        e = e.max(50.0 * f64::EPSILON * l1[d] * h.abs());
        err.push(e);
    }
    (
        k.into_iter().map(|v| v * h).collect(),
        err,
        l1.into_iter().map(|v| v * h.abs()).collect(),
    )
}

/// Rounding floor: cancellation caps attainable accuracy at a few ulps of ∫|f|.
const ROUNDOFF: f64 = 100.0 * f64::EPSILON;

/// ∫_a^b f, where `f(x, out)` writes `dim` components. Stops when every
/// component satisfies err ≤ max(abs_tol, rel_tol·|I|, 50ε·∫|f|).
pub fn integrate<F: FnMut(f64, &mut [Complex64])>(
    mut f: F,
    a: f64,
    b: f64,
    dim: usize,
    opts: QuadOptions,
) -> Result<QuadResult> {
    if b < a {
        let mut r = integrate(f, b, a, dim, opts)?;
        r.values.iter_mut().for_each(|v| *v = -*v);
        return Ok(r);
    }
    let mut buf = vec![Complex64::new(0.0, 0.0); dim];
    let (v0, e0, l0) = kronrod(&mut f, a, b, dim, &mut buf);
    let floor = opts.abs_tol / opts.rel_tol.max(1e-300);
    let weights: Vec<f64> = v0
        .iter()
        .map(|v| 1.0 / v.norm().max(floor).max(1e-300))
        .collect();
    let prio = |errs: &[f64]| {
        errs.iter()
            .zip(weights.iter())
            .map(|(e, w)| e * w)
            .fold(0.0, f64::max)
    };
    let mut total = v0.clone();
    let mut total_err = e0.clone();
    let mut total_l1 = l0.clone();
    let mut heap = BinaryHeap::new();
    heap.push(Segment {
        a,
        b,
        priority: prio(&e0),
        values: v0,
        errors: e0,
        l1: l0,
    });
    let mut segments = 1;
    let target =
        |v: &Complex64, l1: f64| opts.abs_tol.max(opts.rel_tol * v.norm()).max(ROUNDOFF * l1);
    let converged = |tot: &[Complex64], err: &[f64], l1: &[f64]| {
        (0..tot.len()).all(|d| err[d] <= target(&tot[d], l1[d]))
    };
    let mut exhausted = false;
    loop {
        while !converged(&total, &total_err, &total_l1) {
            let Some(seg) = heap.pop() else {
                exhausted = true;
                break;
            };
            let mid = 0.5 * (seg.a + seg.b);
            if segments >= opts.max_segments || seg.priority == 0.0 {
                heap.push(seg);
                exhausted = true;
                break;
            }
            if mid <= seg.a || mid >= seg.b {
                // interval at machine resolution: freeze it
                heap.push(Segment {
                    priority: 0.0,
                    ..seg
                });
                continue;
            }
            let (vl, el, ll) = kronrod(&mut f, seg.a, mid, dim, &mut buf);
            let (vr, er, lr) = kronrod(&mut f, mid, seg.b, dim, &mut buf);
            for d in 0..dim {
                total[d] += vl[d] + vr[d] - seg.values[d];
                total_err[d] += el[d] + er[d] - seg.errors[d];
                total_l1[d] += ll[d] + lr[d] - seg.l1[d];
            }
            heap.push(Segment {
                a: seg.a,
                b: mid,
                priority: prio(&el),
                values: vl,
                errors: el,
                l1: ll,
            });
            heap.push(Segment {
                a: mid,
                b: seg.b,
                priority: prio(&er),
                values: vr,
                errors: er,
                l1: lr,
            });
            segments += 1;
        }
        // re-sum to shed accumulated rounding from the incremental updates
        let (values, errors, l1) = resum(&heap, dim);
        if exhausted || converged(&values, &errors, &l1) {
            break;
        }
        // the running totals drifted across the threshold: keep refining
        total = values;
        total_err = errors;
        total_l1 = l1;
    }
    let (values, errors, l1) = resum(&heap, dim);
    let error = errors.iter().cloned().fold(0.0, f64::max);
    if !converged(&values, &errors, &l1) {
        let target = (0..dim)
            .map(|d| target(&values[d], l1[d]))
            .fold(f64::INFINITY, f64::min);
        return Err(Error::Quadrature {
            op: "integrate",
            estimate: error,
            target,
        });
    }
    Ok(QuadResult {
        values,
        error,
        segments,
    })
}

fn resum(heap: &BinaryHeap<Segment>, dim: usize) -> (Vec<Complex64>, Vec<f64>, Vec<f64>) {
    let mut values = vec![Complex64::new(0.0, 0.0); dim];
    let mut errors = vec![0.0; dim];
    let mut l1 = vec![0.0; dim];
    for seg in heap.iter() {
        for d in 0..dim {
            values[d] += seg.values[d];
            errors[d] += seg.errors[d];
            l1[d] += seg.l1[d];
        }
    }
    (values, errors, l1)
}

/// Scalar real convenience wrapper.
pub fn integrate_real<F: FnMut(f64) -> f64>(
    mut f: F,
    a: f64,
    b: f64,
    opts: QuadOptions,
) -> Result<(f64, f64)> {
    let r = integrate(|x, out| out[0] = Complex64::new(f(x), 0.0), a, b, 1, opts)?;
    Ok((r.values[0].re, r.error))
}

/// Scalar complex convenience wrapper.
pub fn integrate_complex<F: FnMut(f64) -> Complex64>(
    mut f: F,
    a: f64,
    b: f64,
    opts: QuadOptions,
) -> Result<(Complex64, f64)> {
    let r = integrate(|x, out| out[0] = f(x), a, b, 1, opts)?;
    Ok((r.values[0], r.error))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_exact() {
        let (v, _) =
            integrate_real(|x| x.powi(6) - 2.0 * x, 0.0, 2.0, QuadOptions::default()).unwrap();
        assert!((v - (128.0 / 7.0 - 4.0)).abs() < 1e-13);
    }

    #[test]
    fn reversed_limits() {
        let (v, _) = integrate_real(|x| x.exp(), 1.0, 0.0, QuadOptions::default()).unwrap();
        assert!((v + 1f64.exp() - 1.0).abs() < 1e-13);
    }

    #[test]
    fn log_singularity() {
        let (v, _) = integrate_real(|x| x.ln(), 0.0, 1.0, QuadOptions::default()).unwrap();
        assert!((v + 1.0).abs() < 1e-11);
    }

    #[test]
    fn oscillatory() {
        let (v, _) = integrate_complex(
            |x| Complex64::new(0.0, 50.0 * x).exp(),
            0.0,
            3.0,
            QuadOptions::default(),
        )
        .unwrap();
        let exact = (Complex64::new(0.0, 150.0).exp() - 1.0) / Complex64::new(0.0, 50.0);
        assert!((v - exact).norm() < 1e-12);
    }

    #[test]
    fn reports_failure() {
        let opts = QuadOptions {
            max_segments: 3,
            ..Default::default()
        };
        assert!(integrate_real(|x| (1.0 / x).sin(), 1e-6, 1.0, opts).is_err());
    }
}
