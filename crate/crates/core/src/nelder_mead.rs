//! Nelder-Mead simplex minimization with in-place restarts.
//!
//! Standard coefficients (reflection 1, expansion 2, contraction 1/2, shrink
//! 1/2). When the simplex collapses below `tolerance` the run rebuilds a
//! fresh simplex of the initial step around the best point and keeps going;
//! it stops once a rebuild fails to improve the best value or the evaluation
//! budget runs out. Rebuilding is what lets the method get past the creases
//! that δ-based objectives have wherever the extremal point changes edge.

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NelderMeadOptions {
    pub max_evaluations: usize,
    /// Simplex size (max coordinate distance from the best vertex) below
    /// which a cycle counts as converged.
    pub tolerance: f64,
    pub initial_step: f64,
    /// Rebuilds allowed after the first convergence.
    pub max_rebuilds: usize,
}

impl Default for NelderMeadOptions {
    fn default() -> Self {
        NelderMeadOptions {
            max_evaluations: 10_000,
            tolerance: 1e-10,
            initial_step: 0.1,
            max_rebuilds: 8,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct NelderMeadOutcome {
    pub point: Vec<f64>,
    pub value: f64,
    pub evaluations: usize,
    /// The final cycle ended on the size tolerance, not on the budget.
    pub converged: bool,
}

struct Counted<F> {
    f: F,
    evaluations: usize,
}

impl<F: FnMut(&[f64]) -> f64> Counted<F> {
    fn eval(&mut self, x: &[f64]) -> f64 {
        self.evaluations += 1;
        let v = (self.f)(x);
        if v.is_nan() {
            f64::INFINITY
        } else {
            v
        }
    }
}

pub fn minimize<F>(f: F, start: &[f64], opts: &NelderMeadOptions) -> NelderMeadOutcome
where
    F: FnMut(&[f64]) -> f64,
{
    let mut obj = Counted { f, evaluations: 0 };
    let mut best_point = start.to_vec();
    let mut best_value = obj.eval(start);
    let mut converged = false;
    for _ in 0..=opts.max_rebuilds {
        let (point, value, done) = cycle(&mut obj, &best_point, best_value, opts);
        converged = done;
        let improved = value < best_value;
        if improved {
            best_point = point;
            best_value = value;
        }
        if !done || !improved || obj.evaluations >= opts.max_evaluations {
            break;
        }
    }
    NelderMeadOutcome {
        point: best_point,
        value: best_value,
        evaluations: obj.evaluations,
        converged,
    }
}

fn cycle<F: FnMut(&[f64]) -> f64>(
    obj: &mut Counted<F>,
    start: &[f64],
    start_value: f64,
    opts: &NelderMeadOptions,
) -> (Vec<f64>, f64, bool) {
    let dim = start.len();
    if dim == 0 {
        return (Vec::new(), start_value, true);
    }
    let mut simplex: Vec<Vec<f64>> = vec![start.to_vec()];
    let mut values = vec![start_value];
    for i in 0..dim {
        let mut p = start.to_vec();
        p[i] += opts.initial_step;
        values.push(obj.eval(&p));
        simplex.push(p);
    }

    let mut order: Vec<usize> = (0..=dim).collect();
    loop {
        // Stable sort keeps the lower index first among equal values.
        order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
        let (best, worst, second) = (order[0], order[dim], order[dim - 1]);

        let size = simplex
            .iter()
            .flat_map(|p| p.iter().zip(&simplex[best]).map(|(a, b)| (a - b).abs()))
            .fold(0.0, f64::max);
        if size <= opts.tolerance {
            return (simplex[best].clone(), values[best], true);
        }
        if obj.evaluations >= opts.max_evaluations {
            return (simplex[best].clone(), values[best], false);
        }

        let mut centroid = vec![0.0; dim];
        for &i in &order[..dim] {
            for (c, x) in centroid.iter_mut().zip(&simplex[i]) {
                *c += x / dim as f64;
            }
        }
        let along = |coef: f64| -> Vec<f64> {
            centroid
                .iter()
                .zip(&simplex[worst])
                .map(|(c, w)| c + coef * (c - w))
                .collect()
        };

        let reflected = along(1.0);
        let fr = obj.eval(&reflected);
        if fr < values[best] {
            let expanded = along(2.0);
            let fe = obj.eval(&expanded);
            if fe < fr {
                simplex[worst] = expanded;
                values[worst] = fe;
            } else {
                simplex[worst] = reflected;
                values[worst] = fr;
            }
            continue;
        }
        if fr < values[second] {
            simplex[worst] = reflected;
            values[worst] = fr;
            continue;
        }
        let (contracted, limit) = if fr < values[worst] {
            (along(0.5), fr)
        } else {
            (along(-0.5), values[worst])
        };
        let fc = obj.eval(&contracted);
        if fc < limit {
            simplex[worst] = contracted;
            values[worst] = fc;
            continue;
        }
        let anchor = simplex[best].clone();
        for &i in &order[1..] {
            let p: Vec<f64> = simplex[i]
                .iter()
                .zip(&anchor)
                .map(|(x, a)| a + 0.5 * (x - a))
                .collect();
            values[i] = obj.eval(&p);
            simplex[i] = p;
        }
    }
}
