//! Bracketing root finders and golden-section minimization on an interval.

/// Inverse golden ratio, `(√5 - 1) / 2`.
const INV_PHI: f64 = 0.618_033_988_749_894_9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Root {
    pub x: f64,
    pub bracket: f64,
    pub iterations: usize,
}

/// Bisection for an increasing `f` with `f(lo) <= 0 <= f(hi)`; stops once the
/// bracket is at most `tol` wide.
pub fn bisect_increasing<F: Fn(f64) -> f64>(f: F, mut lo: f64, mut hi: f64, tol: f64) -> Root {
    let mut iterations = 0;
    while hi - lo > tol && iterations < 400 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let fm = f(mid);
        if fm == 0.0 {
            return Root {
                x: mid,
                bracket: 0.0,
                iterations: iterations + 1,
            };
        }
        if fm < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        iterations += 1;
    }
    Root {
        x: 0.5 * (lo + hi),
        bracket: hi - lo,
        iterations,
    }
}

/// Newton iteration safeguarded by a bracket, for an increasing `f` with
/// `f(lo) <= 0 <= f(hi)`. `f` returns the value and the derivative.
///
/// Steps leaving the bracket fall back to bisection. Iteration stops when the
/// Newton step drops below `step_tol`, so the result is accurate to roughly
/// machine precision without certifying a bracket width.
pub fn newton_increasing<F: Fn(f64) -> (f64, f64)>(
    f: F,
    mut lo: f64,
    mut hi: f64,
    guess: f64,
    step_tol: f64,
) -> Root {
    let mut x = if guess > lo && guess < hi {
        guess
    } else {
        0.5 * (lo + hi)
    };
    let mut iterations = 0;
    while iterations < 200 {
        iterations += 1;
        let (fx, dfx) = f(x);
        if fx == 0.0 {
            return Root {
                x,
                bracket: 0.0,
                iterations,
            };
        }
        if fx < 0.0 {
            lo = x;
        } else {
            hi = x;
        }
        let newton = x - fx / dfx;
        let next = if dfx > 0.0 && dfx.is_finite() && newton > lo && newton < hi {
            newton
        } else {
            0.5 * (lo + hi)
        };
        let step = (next - x).abs();
        x = next;
        if step <= step_tol || hi - lo <= step_tol {
            break;
        }
    }
    Root {
        x,
        bracket: hi - lo,
        iterations,
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Minimum {
    pub x: f64,
    pub value: f64,
    pub bracket: f64,
    pub iterations: usize,
}

/// Golden-section search for a minimum of `f` on `[a, b]` down to bracket
/// width `tol`. Assumes `f` is unimodal on the interval.
pub fn golden_section<F: Fn(f64) -> f64>(f: F, mut a: f64, mut b: f64, tol: f64) -> Minimum {
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    let mut iterations = 0;
    while b - a > tol && iterations < 500 {
        if fc <= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d);
        }
        iterations += 1;
        if c >= d {
            break;
        }
    }
    let (x, value) = if fc <= fd { (c, fc) } else { (d, fd) };
    Minimum {
        x,
        value,
        bracket: b - a,
        iterations,
    }
}
