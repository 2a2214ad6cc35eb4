//! Small numeric helpers shared by the bound calculators and simulators.

/// Relative slack under which a real is treated as the integer it rounds to.
const SNAP: f64 = 1e-9;

/// `ceil(x)`, except that values within a relative `1e-9` of an integer are
/// snapped to it first, so `log2(8)` computed as `2.9999999999999996` or
/// `3.0000000000000004` both yield 3.
pub fn ceil_snapped(x: f64) -> f64 {
    let r = x.round();
    if (x - r).abs() <= SNAP * r.abs().max(1.0) {
        r
    } else {
        x.ceil()
    }
}

/// `log_base(x)`.
pub fn log_base(x: f64, base: f64) -> f64 {
    x.ln() / base.ln()
}

/// `max{0, log_base(x)}`.
pub fn log0(x: f64, base: f64) -> f64 {
    log_base(x, base).max(0.0)
}

/// Neumaier-compensated sum, evaluated in iteration order.
pub fn compensated_sum<I: IntoIterator<Item = f64>>(values: I) -> f64 {
    let mut sum = 0.0f64;
    let mut comp = 0.0f64;
    for v in values {
        let t = sum + v;
        if sum.abs() >= v.abs() {
            comp += (sum - t) + v;
        } else {
            comp += (v - t) + sum;
        }
        sum = t;
    }
    sum + comp
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn snapping() {
        assert_eq!(ceil_snapped(2.9999999999999996), 3.0);
        assert_eq!(ceil_snapped(3.0000000000000004), 3.0);
        assert_eq!(ceil_snapped(3.2), 4.0);
        assert_eq!(ceil_snapped(0.0), 0.0);
        assert_eq!(ceil_snapped(log_base(16.0, 4.0)), 2.0);
    }

    #[test]
    fn clamped_log() {
        assert_eq!(log0(0.5, 2.0), 0.0);
        assert!((log0(8.0, 2.0) - 3.0).abs() < 1e-15);
    }

    #[test]
    fn compensation_recovers_small_terms() {
        let v = [1e16, 1.0, -1e16];
        assert_eq!(compensated_sum(v), 1.0);
    }
}
