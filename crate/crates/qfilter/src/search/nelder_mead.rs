//! Small deterministic Nelder–Mead simplex minimizer.
//!
//! The search objectives are smooth functions of at most six angles, so a
//! plain simplex with fixed coefficients is enough; there is no gradient
//! code anywhere in the crate.

/// Minimizes `f` starting from `x0`, with the initial simplex spanned by
/// `scale` along each coordinate. Runs until the budget of function
/// evaluations is spent or the simplex collapses below `f_tol` in value
/// spread. Returns the best point and its value.
pub fn minimize<F: Fn(&[f64]) -> f64>(
    f: F,
    x0: &[f64],
    scale: f64,
    max_evals: usize,
    f_tol: f64,
) -> (Vec<f64>, f64) {
    const REFLECT: f64 = 1.0;
    const EXPAND: f64 = 2.0;
    const CONTRACT: f64 = 0.5;
    const SHRINK: f64 = 0.5;

    let n = x0.len();
    let mut evals = 0usize;
    let eval = |x: &[f64], evals: &mut usize| -> f64 {
        *evals += 1;
        f(x)
    };

    // Initial simplex: x0 plus one displaced vertex per coordinate.
    let mut simplex: Vec<(Vec<f64>, f64)> = Vec::with_capacity(n + 1);
    simplex.push((x0.to_vec(), eval(x0, &mut evals)));
    for i in 0..n {
        let mut v = x0.to_vec();
        v[i] += scale;
        let fv = eval(&v, &mut evals);
        simplex.push((v, fv));
    }

    while evals < max_evals {
        simplex.sort_by(|a, b| a.1.partial_cmp(&b.1).expect("finite objective"));
        let best = simplex[0].1;
        let worst = simplex[n].1;
        if (worst - best).abs() < f_tol {
            break;
        }

        // Centroid of all but the worst vertex.
        let mut centroid = vec![0.0; n];
        for (v, _) in simplex.iter().take(n) {
            for (c, x) in centroid.iter_mut().zip(v) {
                *c += x / n as f64;
            }
        }

        let lerp = |t: f64| -> Vec<f64> {
            centroid
                .iter()
                .zip(&simplex[n].0)
                .map(|(c, w)| c + t * (c - w))
                .collect()
        };

        let reflected = lerp(REFLECT);
        let f_reflected = eval(&reflected, &mut evals);

        if f_reflected < simplex[0].1 {
            let expanded = lerp(EXPAND);
            let f_expanded = eval(&expanded, &mut evals);
            simplex[n] = if f_expanded < f_reflected {
                (expanded, f_expanded)
            } else {
                (reflected, f_reflected)
            };
        } else if f_reflected < simplex[n - 1].1 {
            simplex[n] = (reflected, f_reflected);
        } else {
            let contracted = if f_reflected < simplex[n].1 {
                lerp(CONTRACT)
            } else {
                lerp(-CONTRACT)
            };
            let f_contracted = eval(&contracted, &mut evals);
            if f_contracted < simplex[n].1.min(f_reflected) {
                simplex[n] = (contracted, f_contracted);
            } else {
                // Shrink toward the best vertex.
                let best_v = simplex[0].0.clone();
                for entry in simplex.iter_mut().skip(1) {
                    let moved: Vec<f64> = entry
                        .0
                        .iter()
                        .zip(&best_v)
                        .map(|(x, b)| b + SHRINK * (x - b))
                        .collect();
                    let fv = eval(&moved, &mut evals);
                    *entry = (moved, fv);
                }
            }
        }
    }

    simplex.sort_by(|a, b| a.1.partial_cmp(&b.1).expect("finite objective"));
    simplex.swap_remove(0)
}
