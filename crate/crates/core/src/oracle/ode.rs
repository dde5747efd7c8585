//! Dormand–Prince 5(4) with the standard continuous extension.

use crate::error::{Error, Result};

const C: [f64; 7] = [0.0, 0.2, 0.3, 0.8, 8.0 / 9.0, 1.0, 1.0];
const A: [[f64; 6]; 7] = [
    [0.0; 6],
    [0.2, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [
        19372.0 / 6561.0,
        -25360.0 / 2187.0,
        64448.0 / 6561.0,
        -212.0 / 729.0,
        0.0,
        0.0,
    ],
    [
        9017.0 / 3168.0,
        -355.0 / 33.0,
        46732.0 / 5247.0,
        49.0 / 176.0,
        -5103.0 / 18656.0,
        0.0,
    ],
    [
        35.0 / 384.0,
        0.0,
        500.0 / 1113.0,
        125.0 / 192.0,
        -2187.0 / 6784.0,
        11.0 / 84.0,
    ],
];
const E: [f64; 7] = [
    71.0 / 57600.0,
    0.0,
    -71.0 / 16695.0,
    71.0 / 1920.0,
    -17253.0 / 339200.0,
    22.0 / 525.0,
    -1.0 / 40.0,
];
const D: [f64; 7] = [
    -12715105075.0 / 11282082432.0,
    0.0,
    87487479700.0 / 32700410799.0,
    -10690763975.0 / 1880347072.0,
    701980252875.0 / 199316789632.0,
    -1453857185.0 / 822651844.0,
    69997945.0 / 29380423.0,
];

#[derive(Debug, Clone, Copy)]
pub struct OdeOptions {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_steps: usize,
}

impl Default for OdeOptions {
    fn default() -> Self {
        OdeOptions {
            rel_tol: 1e-10,
            abs_tol: 1e-12,
            max_steps: 5_000_000,
        }
    }
}

/// States at the requested output times, plus the accumulated local error
/// estimate up to each of them.
#[derive(Debug, Clone)]
pub struct DenseSolution {
    pub t: Vec<f64>,
    pub y: Vec<Vec<f64>>,
    pub err: Vec<f64>,
    pub steps: usize,
}

struct Stepper {
    n: usize,
    k: [Vec<f64>; 7],
    tmp: Vec<f64>,
}

impl Stepper {
    fn new(n: usize) -> Self {
        Stepper {
            n,
            k: std::array::from_fn(|_| vec![0.0; n]),
            tmp: vec![0.0; n],
        }
    }

    /// One step from (t, y) with k[0] = f(t, y) already set. Writes y1 and the
    /// error vector; afterwards k[6] = f(t+h, y1).
    fn step<F: FnMut(f64, &[f64], &mut [f64])>(
        &mut self,
        f: &mut F,
        t: f64,
        y: &[f64],
        h: f64,
        y1: &mut [f64],
        err: &mut [f64],
    ) {
        for s in 1..7 {
            for i in 0..self.n {
                let mut acc = y[i];
                for (j, a) in A[s].iter().enumerate().take(s) {
                    acc += h * a * self.k[j][i];
                }
                self.tmp[i] = acc;
            }
            f(t + C[s] * h, &self.tmp, &mut self.k[s]);
        }
        // stage 7 is evaluated at the 5th-order solution (FSAL)
        y1.copy_from_slice(&self.tmp);
        for i in 0..self.n {
            let mut e = 0.0;
            for (s, ec) in E.iter().enumerate() {
                e += ec * self.k[s][i];
            }
            err[i] = h * e;
        }
    }

    fn dense(&self, y0: &[f64], y1: &[f64], h: f64, theta: f64, out: &mut [f64]) {
        for i in 0..self.n {
            let r2 = y1[i] - y0[i];
            let r3 = h * self.k[0][i] - r2;
            let r4 = r2 - h * self.k[6][i] - r3;
            let mut r5 = 0.0;
            for (s, d) in D.iter().enumerate() {
                r5 += d * self.k[s][i];
            }
            r5 *= h;
            let th1 = 1.0 - theta;
            out[i] = y0[i] + theta * (r2 + th1 * (r3 + theta * (r4 + th1 * r5)));
        }
    }
}

/// Adaptive integration from t0 with output at the sorted times `t_out ≥ t0`.
pub fn solve_dense<F: FnMut(f64, &[f64], &mut [f64])>(
    mut f: F,
    t0: f64,
    y0: &[f64],
    t_out: &[f64],
    opts: OdeOptions,
) -> Result<DenseSolution> {
    let n = y0.len();
    let mut st = Stepper::new(n);
    let mut t = t0;
    let mut y = y0.to_vec();
    let mut y1 = vec![0.0; n];
    let mut errv = vec![0.0; n];
    let mut ys = Vec::with_capacity(t_out.len());
    let mut errs = Vec::with_capacity(t_out.len());
    let mut acc_err = 0.0;
    let t_end = t_out.last().copied().unwrap_or(t0);
    let mut next = 0;
    while next < t_out.len() && t_out[next] <= t0 {
        ys.push(y.clone());
        errs.push(0.0);
        next += 1;
    }
    f(t, &y, &mut st.k[0]);
    let mut h = 1e-3_f64.min((t_end - t0).abs().max(1e-12));
    let mut steps = 0;
    while next < t_out.len() {
        if steps >= opts.max_steps {
            return Err(Error::Integration {
                op: "ode",
                at: t,
                detail: format!("step budget {} exhausted", opts.max_steps),
            });
        }
        if h < 1e-14 * t.abs().max(1.0) {
            return Err(Error::Integration {
                op: "ode",
                at: t,
                detail: format!("step size underflow (h = {h:e})"),
            });
        }
        h = h.min(t_end - t).max(0.0);
        st.step(&mut f, t, &y, h, &mut y1, &mut errv);
        steps += 1;
        let mut norm = 0.0;
        let mut abs_max: f64 = 0.0;
        for i in 0..n {
            let sc = opts.abs_tol + opts.rel_tol * y[i].abs().max(y1[i].abs());
            norm += (errv[i] / sc).powi(2);
            abs_max = abs_max.max(errv[i].abs());
        }
        let norm = (norm / n as f64).sqrt();
        if norm <= 1.0 {
            let t_new = t + h;
            while next < t_out.len() && t_out[next] <= t_new {
                let theta = (t_out[next] - t) / h;
                let mut out = vec![0.0; n];
                st.dense(&y, &y1, h, theta, &mut out);
                ys.push(out);
                errs.push(acc_err + abs_max);
                next += 1;
            }
            acc_err += abs_max;
            t = t_new;
            y.copy_from_slice(&y1);
            let k6 = st.k[6].clone();
            st.k[0].copy_from_slice(&k6);
            let fac = if norm == 0.0 {
                5.0
            } else {
                (0.9 * norm.powf(-0.2)).clamp(0.2, 5.0)
            };
            h *= fac;
        } else {
            h *= (0.9 * norm.powf(-0.2)).clamp(0.1, 1.0);
        }
    }
    Ok(DenseSolution {
        t: t_out.to_vec(),
        y: ys,
        err: errs,
        steps,
    })
}

/// Fixed-step integration to t_end in `n_steps` equal steps.
pub fn solve_fixed<F: FnMut(f64, &[f64], &mut [f64])>(
    mut f: F,
    t0: f64,
    y0: &[f64],
    t_end: f64,
    n_steps: usize,
) -> Vec<f64> {
    let n = y0.len();
    let mut st = Stepper::new(n);
    let mut y = y0.to_vec();
    let mut y1 = vec![0.0; n];
    let mut errv = vec![0.0; n];
    let h = (t_end - t0) / n_steps as f64;
    f(t0, &y, &mut st.k[0]);
    for s in 0..n_steps {
        let t = t0 + s as f64 * h;
        st.step(&mut f, t, &y, h, &mut y1, &mut errv);
        y.copy_from_slice(&y1);
        let k6 = st.k[6].clone();
        st.k[0].copy_from_slice(&k6);
    }
    y
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn harmonic_oscillator() {
        let ts: Vec<f64> = (0..=20).map(|i| i as f64 * 0.5).collect();
        let sol = solve_dense(
            |_, y, dy| {
                dy[0] = y[1];
                dy[1] = -y[0];
            },
            0.0,
            &[0.0, 1.0],
            &ts,
            OdeOptions::default(),
        )
        .unwrap();
        for (t, y) in sol.t.iter().zip(&sol.y) {
            assert!((y[0] - t.sin()).abs() < 1e-9, "t={t}");
        }
    }

    #[test]
    fn fixed_step_is_fifth_order() {
        let exact = 1f64.exp();
        let run = |n| solve_fixed(|_, y, dy| dy[0] = y[0], 0.0, &[1.0], 1.0, n)[0];
        let e1 = (run(10) - exact).abs();
        let e2 = (run(20) - exact).abs();
        let order = (e1 / e2).log2();
        assert!((order - 5.0).abs() < 0.3, "observed order {order}");
    }
}
