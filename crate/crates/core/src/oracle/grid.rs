use crate::error::{Error, Result};

/// Integration window with sample layout. `tau_start` stands in for −∞.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub tau_start: f64,
    pub tau_end: f64,
    pub n_points: usize,
    pub rel_tol: f64,
    pub abs_tol: f64,
    /// First sample; defaults to `tau_start`. Samples are uniform on
    /// [sample_from, tau_end].
    pub sample_from: Option<f64>,
}

impl GridSpec {
    pub const DEFAULT_TAU_START: f64 = -40.0;

    pub fn new(tau_end: f64, n_points: usize) -> Self {
        GridSpec {
            tau_start: Self::DEFAULT_TAU_START,
            tau_end,
            n_points,
            rel_tol: 1e-10,
            abs_tol: 1e-12,
            sample_from: None,
        }
    }

    pub fn window(tau_from: f64, tau_end: f64, n_points: usize) -> Self {
        GridSpec {
            sample_from: Some(tau_from),
            ..Self::new(tau_end, n_points)
        }
    }

    pub fn with_start(mut self, tau_start: f64) -> Self {
        self.tau_start = tau_start;
        self
    }

    pub fn with_tolerances(mut self, rel_tol: f64, abs_tol: f64) -> Self {
        self.rel_tol = rel_tol;
        self.abs_tol = abs_tol;
        self
    }

    pub fn validate(&self) -> Result<()> {
        let from = self.sample_from.unwrap_or(self.tau_start);
        let bad = |d: String| {
            Err(Error::Domain {
                op: "grid",
                detail: d,
            })
        };
        if !(self.tau_start.is_finite() && self.tau_end.is_finite() && from.is_finite()) {
            return bad("non-finite bounds".into());
        }
        if self.tau_start >= self.tau_end {
            return bad(format!(
                "τ_start = {} ≥ τ_end = {}",
                self.tau_start, self.tau_end
            ));
        }
        if from < self.tau_start || from > self.tau_end {
            return bad(format!(
                "first sample {from} outside [{}, {}]",
                self.tau_start, self.tau_end
            ));
        }
        if self.n_points < 2 {
            return bad(format!("n_points = {}", self.n_points));
        }
        if !(self.rel_tol > 0.0 && self.abs_tol > 0.0) {
            return bad("tolerances must be positive".into());
        }
        Ok(())
    }

    pub fn samples(&self) -> Vec<f64> {
        let from = self.sample_from.unwrap_or(self.tau_start);
        let n = self.n_points;
        (0..n)
            .map(|i| {
                if i + 1 == n {
                    self.tau_end
                } else {
                    from + (self.tau_end - from) * i as f64 / (n - 1) as f64
                }
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SampledCurve<V = f64> {
    pub tau: Vec<f64>,
    pub values: Vec<V>,
    pub err: Vec<f64>,
}

impl<V: Copy> SampledCurve<V> {
    pub fn len(&self) -> usize {
        self.tau.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tau.is_empty()
    }

    pub fn at(&self, i: usize) -> (f64, V, f64) {
        (self.tau[i], self.values[i], self.err[i])
    }

    /// Value at the sample nearest to `tau`.
    pub fn nearest(&self, tau: f64) -> Option<V> {
        let i = self
            .tau
            .iter()
            .enumerate()
            .min_by(|a, b| (a.1 - tau).abs().total_cmp(&(b.1 - tau).abs()))?
            .0;
        Some(self.values[i])
    }
}
