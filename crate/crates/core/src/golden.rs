//! Derivative-free 1-D minimization.

const INV_PHI: f64 = 0.618_033_988_749_894_9;
const MAX_ITER: usize = 500;

/// Golden-section search for a minimum of a unimodal `f` on `[lo, hi]`,
/// stopping once the bracket is narrower than `tol`.
///
/// `f` may return any ordered type; exact rationals make every comparison
/// reliable down to the resolution of the probe positions. The bracket
/// endpoints are also evaluated, so a minimum sitting exactly on the boundary
/// is returned as the boundary itself.
pub fn golden_section<T, F>(mut f: F, lo: f64, hi: f64, tol: f64) -> (f64, T)
where
    T: PartialOrd,
    F: FnMut(f64) -> T,
{
    let (mut a, mut b) = if lo <= hi { (lo, hi) } else { (hi, lo) };
    let mut best = (a, f(a));
    let end = (b, f(b));
    if end.1 < best.1 {
        best = end;
    }
    if b - a <= tol {
        return best;
    }

    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    let mut iter = 0;
    while b - a > tol && iter < MAX_ITER {
        iter += 1;
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
    }
    let inner = if fc <= fd { (c, fc) } else { (d, fd) };
    if inner.1 < best.1 {
        inner
    } else {
        best
    }
}

/// Index of the smallest value, earliest on ties.
pub(crate) fn argmin<T: PartialOrd>(values: &[T]) -> Option<usize> {
    let mut best: Option<usize> = None;
    for (i, v) in values.iter().enumerate() {
        match best {
            Some(b) if *v >= values[b] => {}
            _ => best = Some(i),
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finds_interior_minimum() {
        let (x, fx) = golden_section(|x| (x + 1.0 / 3.0).powi(2), -3.0, 2.0, 1e-12);
        assert!((x + 1.0 / 3.0).abs() < 1e-10);
        assert!(fx < 1e-20);
    }

    #[test]
    fn returns_exact_boundary() {
        let (x, _) = golden_section(|x| x, 0.0, 1.0, 1e-12);
        assert_eq!(x, 0.0);
        let (x, _) = golden_section(|x| -x, 0.0, 1.0, 1e-12);
        assert_eq!(x, 1.0);
    }

    #[test]
    fn argmin_prefers_first() {
        assert_eq!(argmin(&[3, 1, 1, 2]), Some(1));
        assert_eq!(argmin::<i32>(&[]), None);
    }
}
