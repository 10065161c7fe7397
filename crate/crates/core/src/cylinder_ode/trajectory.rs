use crate::error::{domain, Result};
use serde::Serialize;

/// One accepted step: `y(t0 + θh) = Σ_k coef[k][i] θ^k`.
#[derive(Debug, Clone, PartialEq)]
pub struct Segment {
    pub t0: f64,
    pub h: f64,
    /// `coef[k * dim + i]`
    pub coef: Vec<f64>,
}

impl Segment {
    pub fn degree(&self, dim: usize) -> usize {
        self.coef.len() / dim - 1
    }

    pub fn eval_into(&self, t: f64, dim: usize, out: &mut [f64]) {
        let th = (t - self.t0) / self.h;
        let deg = self.degree(dim);
        for i in 0..dim {
            let mut acc = self.coef[deg * dim + i];
            for k in (0..deg).rev() {
                acc = acc * th + self.coef[k * dim + i];
            }
            out[i] = acc;
        }
    }

    /// `d/dt` of the interpolant.
    pub fn eval_dt_into(&self, t: f64, dim: usize, out: &mut [f64]) {
        let th = (t - self.t0) / self.h;
        let deg = self.degree(dim);
        for i in 0..dim {
            let mut acc = 0.0;
            for k in (1..=deg).rev() {
                acc = acc * th + k as f64 * self.coef[k * dim + i];
            }
            out[i] = acc / self.h;
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Completed,
    /// Stopped because a state entry exceeded the guard.
    BlowUp,
    /// Stopped at a requested sign change.
    Event,
    StepUnderflow,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize)]
pub struct Stats {
    pub steps: usize,
    pub rejects: usize,
    pub rhs_evals: usize,
}

/// Time series of cylinder states with per-step interpolants.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub dim: usize,
    pub t: Vec<f64>,
    pub y: Vec<Vec<f64>>,
    pub segments: Vec<Segment>,
    pub stats: Stats,
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub status: Status,
}

impl Trajectory {
    pub fn new(dim: usize, t0: f64, y0: Vec<f64>, rel_tol: f64, abs_tol: f64) -> Self {
        Self {
            dim,
            t: vec![t0],
            y: vec![y0],
            segments: Vec::new(),
            stats: Stats::default(),
            rel_tol,
            abs_tol,
            status: Status::Completed,
        }
    }

    pub fn push(&mut self, seg: Segment, t1: f64, y1: Vec<f64>) {
        self.segments.push(seg);
        self.t.push(t1);
        self.y.push(y1);
    }

    pub fn t_start(&self) -> f64 {
        self.t[0]
    }

    pub fn t_end(&self) -> f64 {
        *self.t.last().expect("trajectory has a node")
    }

    pub fn last(&self) -> &[f64] {
        self.y.last().expect("trajectory has a node")
    }

    pub fn len(&self) -> usize {
        self.t.len()
    }

    pub fn is_empty(&self) -> bool {
        self.t.is_empty()
    }

    fn forward(&self) -> bool {
        self.t_end() >= self.t_start()
    }

    pub fn contains(&self, t: f64) -> bool {
        let (a, b) = if self.forward() {
            (self.t_start(), self.t_end())
        } else {
            (self.t_end(), self.t_start())
        };
        t >= a && t <= b
    }

    /// Index of the segment whose interval holds `t`.
    pub fn segment_index(&self, t: f64) -> Option<usize> {
        if self.segments.is_empty() || !self.contains(t) {
            return None;
        }
        let fwd = self.forward();
        // number of nodes strictly "before" t in the direction of travel
        let k = self
            .t
            .partition_point(|&x| if fwd { x <= t } else { x >= t });
        Some(k.saturating_sub(1).min(self.segments.len() - 1))
    }

    /// Dense evaluation; nodes are returned verbatim.
    pub fn eval(&self, t: f64) -> Result<Vec<f64>> {
        let mut out = vec![0.0; self.dim];
        self.eval_into(t, &mut out)?;
        Ok(out)
    }

    pub fn eval_into(&self, t: f64, out: &mut [f64]) -> Result<()> {
        let Some(k) = self.segment_index(t) else {
            if self.segments.is_empty() && t == self.t_start() {
                out.copy_from_slice(&self.y[0]);
                return Ok(());
            }
            return domain(format!(
                "t = {t} outside [{}, {}]",
                self.t_start(),
                self.t_end()
            ));
        };
        if t == self.t[k] {
            out.copy_from_slice(&self.y[k]);
        } else if t == self.t[k + 1] {
            out.copy_from_slice(&self.y[k + 1]);
        } else {
            self.segments[k].eval_into(t, self.dim, out);
        }
        Ok(())
    }

    /// `d/dt` of the dense interpolant at `t`.
    pub fn eval_dt(&self, t: f64) -> Result<Vec<f64>> {
        let Some(k) = self.segment_index(t) else {
            return domain(format!(
                "t = {t} outside [{}, {}]",
                self.t_start(),
                self.t_end()
            ));
        };
        let mut out = vec![0.0; self.dim];
        self.segments[k].eval_dt_into(t, self.dim, &mut out);
        Ok(out)
    }

    /// First strict sign change of entry `idx` after the start, refined by
    /// bisection on the interpolant. Returns `None` if there is none.
    pub fn first_zero(&self, idx: usize) -> Option<f64> {
        let start = self.y[0][idx];
        for k in 0..self.segments.len() {
            let a = if k == 0 { start } else { self.y[k][idx] };
            let b = self.y[k + 1][idx];
            // skip a start that is itself a zero
            if k == 0 && a == 0.0 {
                let seg = &self.segments[0];
                let mut tmp = vec![0.0; self.dim];
                let probe = seg.t0 + 0.5 * seg.h;
                seg.eval_into(probe, self.dim, &mut tmp);
                if tmp[idx] * b < 0.0 {
                    return Some(self.bisect(0, idx, probe, self.t[1]));
                }
                continue;
            }
            if a * b < 0.0 || (b == 0.0 && a != 0.0) {
                return Some(self.bisect(k, idx, self.t[k], self.t[k + 1]));
            }
        }
        None
    }

    fn bisect(&self, k: usize, idx: usize, mut lo: f64, mut hi: f64) -> f64 {
        let seg = &self.segments[k];
        let mut tmp = vec![0.0; self.dim];
        seg.eval_into(lo, self.dim, &mut tmp);
        let flo = tmp[idx];
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if mid == lo || mid == hi {
                break;
            }
            seg.eval_into(mid, self.dim, &mut tmp);
            if (tmp[idx] > 0.0) == (flo > 0.0) && tmp[idx] != 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        0.5 * (lo + hi)
    }
}
