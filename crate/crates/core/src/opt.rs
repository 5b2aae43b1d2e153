//! One-dimensional search primitives: golden-section maximization and
//! sign-change bisection. Deterministic; no derivatives required.

use crate::scalar::{real, Real};

/// Golden-section maximization of a unimodal function on `[lo, hi]`.
///
/// Shrinks the bracket until its width is below `tol` and returns the
/// midpoint of the final bracket.
pub fn golden_max<T: Real, F: FnMut(T) -> T>(mut f: F, mut lo: T, mut hi: T, tol: T) -> T {
    let invphi: T = real(0.618_033_988_749_894_9);
    let mut c = hi - (hi - lo) * invphi;
    let mut d = lo + (hi - lo) * invphi;
    let mut fc = f(c);
    let mut fd = f(d);
    while hi - lo > tol {
        if fc > fd {
            hi = d;
            d = c;
            fd = fc;
            c = hi - (hi - lo) * invphi;
            fc = f(c);
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + (hi - lo) * invphi;
            fd = f(d);
        }
    }
    (lo + hi) / real(2.0)
}

/// Coarse grid scan followed by golden-section refinement.
///
/// Evaluates `f` at `n` equally spaced points on `[lo, hi]`, brackets the
/// best one with its neighbours, and refines. Returns `(argmax, max)`.
pub fn grid_then_golden_max<T: Real, F: FnMut(T) -> T>(
    mut f: F,
    lo: T,
    hi: T,
    n: usize,
    tol: T,
) -> (T, T) {
    debug_assert!(n >= 2);
    let span = hi - lo;
    let steps = real::<T>((n - 1) as f64);
    let mut best_k = 0usize;
    let mut best_v = T::neg_infinity();
    for k in 0..n {
        let x = lo + span * real(k as f64) / steps;
        let v = f(x);
        if v > best_v {
            best_v = v;
            best_k = k;
        }
    }
    let a = if best_k == 0 {
        lo
    } else {
        lo + span * real((best_k - 1) as f64) / steps
    };
    let b = if best_k + 1 >= n {
        hi
    } else {
        lo + span * real((best_k + 1) as f64) / steps
    };
    let x = golden_max(&mut f, a, b, tol);
    let v = f(x);
    (x, v)
}

/// Largest `x` in `[lo, hi_start * 2^k]` with `f(x) > 0`, to resolution `res`.
///
/// `f(lo)` must be positive. The upper bracket doubles until `f` turns
/// nonpositive (bailing out at `cap`), then plain bisection runs down to
/// `res`. Returns `None` when no sign change is found below `cap`.
pub fn bisect_positive_edge<T: Real, F: FnMut(T) -> T>(
    mut f: F,
    lo: T,
    hi_start: T,
    cap: T,
    res: T,
) -> Option<T> {
    debug_assert!(f(lo) > T::zero());
    let mut lo = lo;
    let mut hi = hi_start;
    while f(hi) > T::zero() {
        lo = hi;
        hi = hi * real(2.0);
        if hi > cap {
            return None;
        }
    }
    while hi - lo > res {
        let mid = (lo + hi) / real(2.0);
        if f(mid) > T::zero() {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Some((lo + hi) / real(2.0))
}
