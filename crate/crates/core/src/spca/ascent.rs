//! First-order ascent over the unit box `[0, 1]^N`.

/// Projected gradient ascent settings.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AscentSettings {
    /// Trial step of the first iteration; later iterations start from a
    /// Barzilai-Borwein estimate.
    pub initial_step: f64,
    /// Backtracking factor.
    pub shrink: f64,
    /// Armijo sufficient-increase factor.
    pub armijo: f64,
    /// Stop once the projected-gradient norm falls below this.
    pub tolerance: f64,
    pub max_iterations: usize,
}

impl Default for AscentSettings {
    fn default() -> Self {
        AscentSettings {
            initial_step: 1.0,
            shrink: 0.5,
            armijo: 1e-4,
            tolerance: 1e-8,
            max_iterations: 5000,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct AscentOutcome {
    pub x: Vec<f64>,
    pub value: f64,
    pub iterations: usize,
    pub converged: bool,
}

const MIN_STEP: f64 = 1e-12;
const MAX_STEP: f64 = 1e12;

fn project_step(x: &[f64], g: &[f64], t: f64, out: &mut [f64]) {
    for ((o, xi), gi) in out.iter_mut().zip(x).zip(g) {
        *o = (xi + t * gi).clamp(0.0, 1.0);
    }
}

fn projected_gradient_norm(x: &[f64], g: &[f64]) -> f64 {
    x.iter()
        .zip(g)
        .map(|(xi, gi)| ((xi + gi).clamp(0.0, 1.0) - xi).powi(2))
        .sum::<f64>()
        .sqrt()
}

/// Maximizes `f` over the unit box starting from `x0` (projected onto the box).
///
/// `f(x, grad)` returns the value at `x` and writes the gradient into `grad`.
/// Every accepted step satisfies the Armijo condition, so the returned value
/// is never below `f(x0)`.
pub fn maximize_on_unit_box<F>(mut f: F, x0: Vec<f64>, settings: &AscentSettings) -> AscentOutcome
where
    F: FnMut(&[f64], &mut [f64]) -> f64,
{
    let n = x0.len();
    let mut x: Vec<f64> = x0.into_iter().map(|v| v.clamp(0.0, 1.0)).collect();
    let mut g = vec![0.0; n];
    let mut value = f(&x, &mut g);
    let mut trial = vec![0.0; n];
    let mut g_trial = vec![0.0; n];
    let mut step = settings.initial_step;

    for it in 0..settings.max_iterations {
        if projected_gradient_norm(&x, &g) < settings.tolerance {
            return AscentOutcome {
                x,
                value,
                iterations: it,
                converged: true,
            };
        }
        let mut t = step;
        let accepted = loop {
            project_step(&x, &g, t, &mut trial);
            let slope: f64 = g
                .iter()
                .zip(trial.iter().zip(&x))
                .map(|(gi, (a, b))| gi * (a - b))
                .sum();
            let v = f(&trial, &mut g_trial);
            if v >= value + settings.armijo * slope {
                break Some(v);
            }
            t *= settings.shrink;
            if t < MIN_STEP {
                break None;
            }
        };
        let Some(v) = accepted else {
            // No ascent along the projected gradient; only happens at a kink
            // of the clamped objective or at round-off level.
            return AscentOutcome {
                x,
                value,
                iterations: it,
                converged: false,
            };
        };

        let mut ss = 0.0;
        let mut sy = 0.0;
        for i in 0..n {
            let s = trial[i] - x[i];
            ss += s * s;
            sy += s * (g_trial[i] - g[i]);
        }
        step = if sy < 0.0 {
            (ss / -sy).clamp(MIN_STEP, MAX_STEP)
        } else {
            MAX_STEP
        };

        std::mem::swap(&mut x, &mut trial);
        std::mem::swap(&mut g, &mut g_trial);
        value = v;
    }
    let converged = projected_gradient_norm(&x, &g) < settings.tolerance;
    AscentOutcome {
        x,
        value,
        iterations: settings.max_iterations,
        converged,
    }
}

/// Projected subgradient ascent on `min(f_1, f_2)` over the unit box.
///
/// `f(x, g1, g2)` returns both values and writes both gradients. Steps are
/// normalized and shrink as `step0 / sqrt(k + 1)`; the best iterate is kept,
/// so the result is never worse than the start.
pub fn maximize_min_on_unit_box<F>(
    mut f: F,
    x0: Vec<f64>,
    iterations: usize,
    step0: f64,
) -> AscentOutcome
where
    F: FnMut(&[f64], &mut [f64], &mut [f64]) -> [f64; 2],
{
    let n = x0.len();
    let mut x: Vec<f64> = x0.into_iter().map(|v| v.clamp(0.0, 1.0)).collect();
    let mut g1 = vec![0.0; n];
    let mut g2 = vec![0.0; n];
    let mut dir = vec![0.0; n];
    let [a, b] = f(&x, &mut g1, &mut g2);
    let mut best = (a.min(b), x.clone());
    let mut done = 0;

    for k in 0..iterations {
        let [a, b] = f(&x, &mut g1, &mut g2);
        let value = a.min(b);
        if value > best.0 {
            best = (value, x.clone());
        }
        let tie = (a - b).abs() <= 1e-12 * a.abs().max(b.abs()).max(1e-300);
        for i in 0..n {
            dir[i] = if tie {
                0.5 * (g1[i] + g2[i])
            } else if a < b {
                g1[i]
            } else {
                g2[i]
            };
        }
        let norm = dir.iter().map(|d| d * d).sum::<f64>().sqrt();
        done = k + 1;
        if norm == 0.0 || !norm.is_finite() {
            break;
        }
        let t = step0 / ((k + 1) as f64).sqrt() / norm;
        for (xi, di) in x.iter_mut().zip(&dir) {
            *xi = (*xi + t * di).clamp(0.0, 1.0);
        }
    }
    let [a, b] = f(&x, &mut g1, &mut g2);
    if a.min(b) > best.0 {
        best = (a.min(b), x);
    }
    AscentOutcome {
        x: best.1,
        value: best.0,
        iterations: done,
        converged: true,
    }
}
