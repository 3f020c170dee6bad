//! Small numerical kernels shared by the measure and bound code.

/// Neumaier's variant of Kahan summation.
///
/// Accumulates a running compensation term so that the result is as if the
/// sum were computed in roughly twice the working precision.
#[derive(Debug, Clone, Copy, Default)]
pub struct CompensatedSum {
    sum: f64,
    compensation: f64,
}

impl CompensatedSum {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, value: f64) {
        let t = self.sum + value;
        if self.sum.abs() >= value.abs() {
            self.compensation += (self.sum - t) + value;
        } else {
            self.compensation += (value - t) + self.sum;
        }
        self.sum = t;
    }

    #[inline]
    pub fn value(&self) -> f64 {
        self.sum + self.compensation
    }
}

impl Extend<f64> for CompensatedSum {
    fn extend<I: IntoIterator<Item = f64>>(&mut self, iter: I) {
        for v in iter {
            self.add(v);
        }
    }
}

/// Compensated sum of an iterator, in iteration order.
pub fn compensated_sum<I: IntoIterator<Item = f64>>(iter: I) -> f64 {
    let mut acc = CompensatedSum::new();
    acc.extend(iter);
    acc.value()
}

/// `x^e` for `x > 0`; integer exponents with `|e| <= 4` go through repeated
/// multiplication, everything else through `powf`.
#[inline]
pub fn pow_real(x: f64, e: f64) -> f64 {
    if e.fract() == 0.0 && e.abs() <= 4.0 {
        x.powi(e as i32)
    } else {
        x.powf(e)
    }
}

/// Relative difference `|a - b| / max(|a|, |b|, floor)`.
pub fn relative_difference(a: f64, b: f64, floor: f64) -> f64 {
    let scale = a.abs().max(b.abs()).max(floor);
    if scale == 0.0 {
        0.0
    } else {
        (a - b).abs() / scale
    }
}

const SUP_GRID_POINTS: usize = 1025;
const INV_PHI: f64 = 0.618_033_988_749_894_9;

/// Supremum of `|g|` over `[lo, hi]`.
///
/// Scans a 1,025-point uniform grid, then refines the best grid cell (and its
/// neighbour) with golden-section search. Returns `|g(lo)|` when `lo == hi`.
pub fn sup_abs_on<F: Fn(f64) -> f64>(g: F, lo: f64, hi: f64) -> f64 {
    let h = |x: f64| g(x).abs();
    if hi <= lo {
        return h(lo);
    }
    let step = (hi - lo) / (SUP_GRID_POINTS - 1) as f64;
    let at = |i: usize| if i == SUP_GRID_POINTS - 1 { hi } else { lo + step * i as f64 };

    let (mut best_i, mut best) = (0, h(lo));
    for i in 1..SUP_GRID_POINTS {
        let v = h(at(i));
        if v > best {
            best = v;
            best_i = i;
        }
    }

    let mut a = at(best_i.saturating_sub(1));
    let mut b = at((best_i + 1).min(SUP_GRID_POINTS - 1));
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let (mut fc, mut fd) = (h(c), h(d));
    for _ in 0..80 {
        if fc > fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = h(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = h(d);
        }
        if (b - a).abs() <= 1e-15 * b.abs().max(1.0) {
            break;
        }
    }
    best.max(fc).max(fd)
}
