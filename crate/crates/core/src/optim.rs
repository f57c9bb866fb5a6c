//! Nelder–Mead simplex minimization.

/// Outcome of a [`nelder_mead`] run.
#[derive(Debug, Clone, PartialEq)]
pub struct Minimum {
    pub x: Vec<f64>,
    pub value: f64,
    pub evaluations: usize,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NelderMeadOptions {
    /// Edge length of the initial axis-aligned simplex.
    pub initial_step: f64,
    pub max_evaluations: usize,
    /// Stop as soon as a value `≤ target` is seen.
    pub target: f64,
    /// Stop when the spread of simplex values falls below `f_tol` and every
    /// vertex is within `x_tol` of the best one.
    pub f_tol: f64,
    pub x_tol: f64,
}

impl Default for NelderMeadOptions {
    fn default() -> Self {
        NelderMeadOptions {
            initial_step: 0.1,
            max_evaluations: 1000,
            target: f64::NEG_INFINITY,
            f_tol: 1e-14,
            x_tol: 1e-10,
        }
    }
}

/// Minimize `f` from `x0` with the standard coefficients (reflection 1,
/// expansion 2, contraction ½, shrink ½). NaN values are treated as `+∞`.
pub fn nelder_mead(
    mut f: impl FnMut(&[f64]) -> f64,
    x0: &[f64],
    opts: &NelderMeadOptions,
) -> Minimum {
    let n = x0.len();
    let mut evaluations = 0;
    let mut eval = |x: &[f64], evaluations: &mut usize| {
        *evaluations += 1;
        let v = f(x);
        if v.is_nan() {
            f64::INFINITY
        } else {
            v
        }
    };

    let f0 = eval(x0, &mut evaluations);
    if n == 0 || f0 <= opts.target || opts.max_evaluations <= 1 {
        return Minimum {
            x: x0.to_vec(),
            value: f0,
            evaluations,
        };
    }

    let mut simplex: Vec<(Vec<f64>, f64)> = Vec::with_capacity(n + 1);
    simplex.push((x0.to_vec(), f0));
    for i in 0..n {
        let mut x = x0.to_vec();
        x[i] += opts.initial_step;
        let v = eval(&x, &mut evaluations);
        simplex.push((x, v));
        if v <= opts.target {
            return Minimum {
                x: simplex[i + 1].0.clone(),
                value: v,
                evaluations,
            };
        }
    }

    let done = |s: &[(Vec<f64>, f64)], evaluations: usize| {
        evaluations >= opts.max_evaluations
            || s[0].1 <= opts.target
            || ((s[n].1 - s[0].1).abs() <= opts.f_tol
                && s[1..].iter().all(|(x, _)| {
                    x.iter().zip(&s[0].0).all(|(a, b)| (a - b).abs() <= opts.x_tol)
                }))
    };

    let (expand, contract, shrink) = (2.0, 0.5, 0.5);

    loop {
        simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
        if done(&simplex, evaluations) {
            break;
        }
        let centroid: Vec<f64> = (0..n)
            .map(|k| simplex[..n].iter().map(|(x, _)| x[k]).sum::<f64>() / n as f64)
            .collect();
        let worst = simplex[n].clone();
        let along = |coef: f64| -> Vec<f64> {
            centroid
                .iter()
                .zip(&worst.0)
                .map(|(c, w)| c + coef * (c - w))
                .collect()
        };

        let xr = along(1.0);
        let fr = eval(&xr, &mut evaluations);
        if fr < simplex[0].1 {
            let xe = along(expand);
            let fe = eval(&xe, &mut evaluations);
            simplex[n] = if fe < fr { (xe, fe) } else { (xr, fr) };
            continue;
        }
        if fr < simplex[n - 1].1 {
            simplex[n] = (xr, fr);
            continue;
        }
        let (xc, fc) = if fr < worst.1 {
            let xc = along(contract);
            let fc = eval(&xc, &mut evaluations);
            (xc, fc)
        } else {
            let xc = along(-contract);
            let fc = eval(&xc, &mut evaluations);
            (xc, fc)
        };
        if fc < worst.1.min(fr) {
            simplex[n] = (xc, fc);
            continue;
        }
        let best = simplex[0].0.clone();
        for entry in simplex.iter_mut().skip(1) {
            let x: Vec<f64> = best
                .iter()
                .zip(&entry.0)
                .map(|(b, v)| b + shrink * (v - b))
                .collect();
            let v = eval(&x, &mut evaluations);
            *entry = (x, v);
            if evaluations >= opts.max_evaluations {
                break;
            }
        }
    }
    let (x, value) = simplex.swap_remove(0);
    Minimum {
        x,
        value,
        evaluations,
    }
}
