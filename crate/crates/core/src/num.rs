//! Float helpers that `core` does not provide.

/// `x^p` by repeated squaring. Deterministic and exact for `p <= 1`.
pub(crate) fn powi(x: f64, mut p: u32) -> f64 {
    let mut base = x;
    let mut acc = 1.0;
    while p > 0 {
        if p & 1 == 1 {
            acc *= base;
        }
        p >>= 1;
        if p > 0 {
            base *= base;
        }
    }
    acc
}

pub(crate) fn sqrt(x: f64) -> f64 {
    libm::sqrt(x)
}

/// Real `p`-th root for odd `p`, or for nonnegative `x`.
pub(crate) fn real_root(x: f64, p: u32) -> f64 {
    match p {
        1 => x,
        3 => libm::cbrt(x),
        _ => x.signum() * libm::pow(x.abs(), 1.0 / f64::from(p)),
    }
}

/// Neumaier's variant of compensated summation.
#[derive(Debug, Clone, Copy, Default)]
pub(crate) struct CompensatedSum {
    sum: f64,
    carry: f64,
}

impl CompensatedSum {
    pub(crate) fn add(&mut self, value: f64) {
        let t = self.sum + value;
        if self.sum.abs() >= value.abs() {
            self.carry += (self.sum - t) + value;
        } else {
            self.carry += (value - t) + self.sum;
        }
        self.sum = t;
    }

    pub(crate) fn total(&self) -> f64 {
        self.sum + self.carry
    }
}

pub(crate) fn max_abs(values: &[f64]) -> f64 {
    values.iter().fold(0.0, |m, v| f64::max(m, v.abs()))
}

/// Tolerance scale `max(1, max|v|)`.
pub(crate) fn scale_of(values: &[f64]) -> f64 {
    f64::max(1.0, max_abs(values))
}
