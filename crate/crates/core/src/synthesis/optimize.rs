//! Small derivative-free minimizer plus a gradient polish.

pub(crate) const DIM: usize = 6;
pub(crate) type Point = [f64; DIM];

#[derive(Debug, Clone, Copy)]
pub(crate) struct Minimum {
    pub x: Point,
    pub f: f64,
    pub iterations: usize,
}

fn lerp(a: &Point, b: &Point, t: f64) -> Point {
    std::array::from_fn(|i| a[i] + t * (b[i] - a[i]))
}

/// Nelder–Mead with the standard coefficients. Stops after `max_iter`
/// iterations, when the best value drops below `f_tol`, or when the simplex
/// spread in function value collapses.
pub(crate) fn nelder_mead<F: Fn(&Point) -> f64>(f: &F, x0: Point, step: f64, max_iter: usize, f_tol: f64) -> Minimum {
    let mut simplex: Vec<(Point, f64)> = Vec::with_capacity(DIM + 1);
    simplex.push((x0, f(&x0)));
    for i in 0..DIM {
        let mut x = x0;
        x[i] += step;
        simplex.push((x, f(&x)));
    }
    let mut it = 0;
    while it < max_iter {
        simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
        let best = simplex[0].1;
        let worst = simplex[DIM].1;
        if best <= f_tol || (worst - best).abs() <= 1e-30 {
            break;
        }
        it += 1;
        let mut centroid = [0.0; DIM];
        for (x, _) in &simplex[..DIM] {
            for i in 0..DIM {
                centroid[i] += x[i] / DIM as f64;
            }
        }
        let xw = simplex[DIM].0;
        let xr = lerp(&centroid, &xw, -1.0);
        let fr = f(&xr);
        if fr < best {
            let xe = lerp(&centroid, &xw, -2.0);
            let fe = f(&xe);
            simplex[DIM] = if fe < fr { (xe, fe) } else { (xr, fr) };
            continue;
        }
        if fr < simplex[DIM - 1].1 {
            simplex[DIM] = (xr, fr);
            continue;
        }
        let (xc, fc) = if fr < worst {
            let x = lerp(&centroid, &xr, 0.5);
            (x, f(&x))
        } else {
            let x = lerp(&centroid, &xw, 0.5);
            (x, f(&x))
        };
        if fc < worst.min(fr) {
            simplex[DIM] = (xc, fc);
            continue;
        }
        // shrink toward the best vertex
        let x0 = simplex[0].0;
        for v in simplex.iter_mut().skip(1) {
            let x = lerp(&x0, &v.0, 0.5);
            *v = (x, f(&x));
        }
    }
    simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
    Minimum { x: simplex[0].0, f: simplex[0].1, iterations: it }
}

/// Central-difference gradient descent with backtracking line search.
pub(crate) fn polish<F: Fn(&Point) -> f64>(f: &F, start: Minimum, steps: usize, f_tol: f64) -> Minimum {
    let mut x = start.x;
    let mut fx = start.f;
    let mut lr = 1.0;
    for _ in 0..steps {
        if fx <= f_tol {
            break;
        }
        let h = 1e-7;
        let g: Point = std::array::from_fn(|i| {
            let mut a = x;
            let mut b = x;
            a[i] += h;
            b[i] -= h;
            (f(&a) - f(&b)) / (2.0 * h)
        });
        let gn: f64 = g.iter().map(|v| v * v).sum();
        if gn == 0.0 || !gn.is_finite() {
            break;
        }
        let mut improved = false;
        for _ in 0..40 {
            let y: Point = std::array::from_fn(|i| x[i] - lr * g[i]);
            let fy = f(&y);
            if fy < fx - 1e-4 * lr * gn {
                x = y;
                fx = fy;
                lr *= 2.0;
                improved = true;
                break;
            }
            lr *= 0.5;
        }
        if !improved {
            break;
        }
    }
    Minimum { x, f: fx, iterations: start.iterations }
}
