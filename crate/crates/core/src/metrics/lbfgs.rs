//! Limited-memory BFGS with a bisection weak-Wolfe line search.
//!
//! The line search only needs the objective to be continuously
//! differentiable, which the squared-hinge penalties used by the disc search
//! are, even though they are not twice differentiable.

use std::collections::VecDeque;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LbfgsConfig {
    pub memory: usize,
    pub max_iter: usize,
    /// Stop once `‖∇f‖_∞` falls below this.
    pub grad_tol: f64,
    /// Stop after five consecutive steps with relative decrease below this.
    pub f_tol: f64,
}

impl Default for LbfgsConfig {
    fn default() -> Self {
        Self { memory: 10, max_iter: 200, grad_tol: 1e-10, f_tol: 1e-13 }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LbfgsResult {
    pub x: Vec<f64>,
    pub f: f64,
    pub iterations: usize,
    pub evaluations: usize,
    pub converged: bool,
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Minimize `f`, which writes its gradient into the second argument and
/// returns the value.
pub fn minimize<F>(mut f: F, x0: &[f64], cfg: &LbfgsConfig) -> LbfgsResult
where
    F: FnMut(&[f64], &mut [f64]) -> f64,
{
    let n = x0.len();
    let mut x = x0.to_vec();
    let mut g = vec![0.0; n];
    let mut fx = f(&x, &mut g);
    let mut evaluations = 1;
    let mut mem: VecDeque<(Vec<f64>, Vec<f64>, f64)> = VecDeque::with_capacity(cfg.memory);
    let mut d = vec![0.0; n];
    let mut alpha = vec![0.0; cfg.memory];
    let mut stall = 0;
    let (mut xt, mut gt) = (vec![0.0; n], vec![0.0; n]);
    let (mut x_lo, mut g_lo) = (vec![0.0; n], vec![0.0; n]);

    for iter in 0..cfg.max_iter {
        if !fx.is_finite() {
            return LbfgsResult { x, f: fx, iterations: iter, evaluations, converged: false };
        }
        if g.iter().fold(0.0f64, |m, v| m.max(v.abs())) <= cfg.grad_tol {
            return LbfgsResult { x, f: fx, iterations: iter, evaluations, converged: true };
        }
        // two-loop recursion
        d.iter_mut().zip(&g).for_each(|(di, gi)| *di = -gi);
        for (i, (s, y, rho)) in mem.iter().enumerate().rev() {
            alpha[i] = rho * dot(s, &d);
            d.iter_mut().zip(y).for_each(|(di, yi)| *di -= alpha[i] * yi);
        }
        if let Some((s, y, _)) = mem.back() {
            let gamma = dot(s, y) / dot(y, y);
            d.iter_mut().for_each(|di| *di *= gamma);
        }
        for (i, (s, y, rho)) in mem.iter().enumerate() {
            let beta = rho * dot(y, &d);
            d.iter_mut().zip(s).for_each(|(di, si)| *di += (alpha[i] - beta) * si);
        }
        let mut gd = dot(&g, &d);
        if !(gd < 0.0) {
            mem.clear();
            d.iter_mut().zip(&g).for_each(|(di, gi)| *di = -gi);
            gd = dot(&g, &d);
        }
        let mut t = if mem.is_empty() { (1.0 / g.iter().fold(0.0f64, |m, v| m.max(v.abs()))).min(1.0) } else { 1.0 };
        let (mut lo, mut hi) = (0.0, f64::INFINITY);
        let mut f_lo = fx;
        let mut accepted = None;
        for _ in 0..60 {
            xt.iter_mut().zip(&x).zip(&d).for_each(|((xi, x0), di)| *xi = x0 + t * di);
            let ft = f(&xt, &mut gt);
            evaluations += 1;
            if !ft.is_finite() || ft > fx + 1e-4 * t * gd {
                hi = t;
            } else if dot(&gt, &d) < 0.9 * gd {
                lo = t;
                f_lo = ft;
                x_lo.copy_from_slice(&xt);
                g_lo.copy_from_slice(&gt);
            } else {
                accepted = Some(ft);
                break;
            }
            t = if hi.is_finite() { 0.5 * (lo + hi) } else { 2.0 * t };
            if hi.is_finite() && hi - lo <= 1e-16 * hi {
                break;
            }
        }
        let f_new = match accepted {
            Some(ft) => ft,
            None if lo > 0.0 => {
                xt.copy_from_slice(&x_lo);
                gt.copy_from_slice(&g_lo);
                f_lo
            }
            None => return LbfgsResult { x, f: fx, iterations: iter, evaluations, converged: false },
        };
        let s: Vec<f64> = xt.iter().zip(&x).map(|(a, b)| a - b).collect();
        let y: Vec<f64> = gt.iter().zip(&g).map(|(a, b)| a - b).collect();
        let sy = dot(&s, &y);
        if sy > 1e-12 * dot(&s, &s).sqrt() * dot(&y, &y).sqrt() {
            if mem.len() == cfg.memory {
                mem.pop_front();
            }
            mem.push_back((s, y, 1.0 / sy));
        }
        let decrease = fx - f_new;
        x.copy_from_slice(&xt);
        g.copy_from_slice(&gt);
        fx = f_new;
        stall = if decrease <= cfg.f_tol * fx.abs().max(1.0) { stall + 1 } else { 0 };
        if stall >= 5 {
            return LbfgsResult { x, f: fx, iterations: iter + 1, evaluations, converged: true };
        }
    }
    LbfgsResult { x, f: fx, iterations: cfg.max_iter, evaluations, converged: false }
}
