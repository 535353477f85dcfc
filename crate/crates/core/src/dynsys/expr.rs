use std::f64::consts::PI;

/// `saw_2(t) = (-1)^m (t - 4m)` for `4m - 2 ≤ t < 4m + 2`.
pub fn saw2(t: f64) -> f64 {
    let m = ((t + 2.0) / 4.0).floor();
    let r = t - 4.0 * m;
    if m.rem_euclid(2.0) == 0.0 {
        r
    } else {
        -r
    }
}

/// Closed-form piece expressions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Expr {
    Constant(f64),
    /// `p·t + q`
    Affine { p: f64, q: f64 },
    /// `c·t·(d - t)`
    Quadratic { c: f64, d: f64 },
    /// `saw_2(scale·t)`
    Sawtooth { scale: f64 },
    /// `s·sin(t) + p·t + q`
    SineAffine { s: f64, p: f64, q: f64 },
}

impl Expr {
    pub fn eval(&self, t: f64) -> f64 {
        match *self {
            Expr::Constant(c) => c,
            Expr::Affine { p, q } => p * t + q,
            Expr::Quadratic { c, d } => c * t * (d - t),
            Expr::Sawtooth { scale } => saw2(scale * t),
            Expr::SineAffine { s, p, q } => s * t.sin() + p * t + q,
        }
    }

    /// Derivative where it exists; at a sawtooth fold the right derivative.
    pub fn derivative(&self, t: f64) -> f64 {
        match *self {
            Expr::Constant(_) => 0.0,
            Expr::Affine { p, .. } => p,
            Expr::Quadratic { c, d } => c * (d - 2.0 * t),
            Expr::Sawtooth { scale } => {
                let m = ((scale * t + 2.0) / 4.0).floor();
                if m.rem_euclid(2.0) == 0.0 {
                    scale
                } else {
                    -scale
                }
            }
            Expr::SineAffine { s, p, .. } => s * t.cos() + p,
        }
    }

    /// Points of `(lo, hi)` where monotonicity changes, ascending.
    pub fn turning_points(&self, lo: f64, hi: f64) -> Vec<f64> {
        let mut out = match *self {
            Expr::Constant(_) | Expr::Affine { .. } => Vec::new(),
            Expr::Quadratic { c, d } => {
                if c != 0.0 {
                    vec![0.5 * d]
                } else {
                    Vec::new()
                }
            }
            Expr::Sawtooth { scale } => {
                if scale == 0.0 {
                    return Vec::new();
                }
                let (ua, ub) = {
                    let (a, b) = (scale * lo, scale * hi);
                    (a.min(b), a.max(b))
                };
                let m0 = ((ua - 2.0) / 4.0).ceil() as i64;
                let m1 = ((ub - 2.0) / 4.0).floor() as i64;
                (m0..=m1)
                    .map(|m| (4 * m + 2) as f64 / scale)
                    .collect()
            }
            Expr::SineAffine { s, p, .. } => {
                if s == 0.0 || (p / s).abs() > 1.0 {
                    return Vec::new();
                }
                let t0 = (-p / s).acos();
                let k0 = ((lo - t0) / (2.0 * PI)).floor() as i64 - 1;
                let k1 = ((hi + t0) / (2.0 * PI)).ceil() as i64 + 1;
                let mut v = Vec::new();
                for k in k0..=k1 {
                    let base = 2.0 * PI * k as f64;
                    v.push(base + t0);
                    if t0 != 0.0 && t0 != PI {
                        v.push(base - t0);
                    }
                }
                v
            }
        };
        out.retain(|&t| lo < t && t < hi);
        out.sort_by(f64::total_cmp);
        out.dedup();
        out
    }

    /// Solve `self(t) = y` on `[lo, hi]`, where the expression is monotone
    /// and `y` lies between the endpoint values. Result clamped to `[lo, hi]`.
    pub fn solve_monotone(&self, y: f64, lo: f64, hi: f64, tol: f64) -> f64 {
        let t = match *self {
            Expr::Constant(_) => lo,
            Expr::Affine { p, q } => (y - q) / p,
            Expr::Quadratic { c, d } => {
                let h = 0.5 * d;
                let r = (h * h - y / c).max(0.0).sqrt();
                if hi <= h {
                    h - r
                } else {
                    h + r
                }
            }
            Expr::Sawtooth { scale } => {
                let um = scale * 0.5 * (lo + hi);
                let m = ((um + 2.0) / 4.0).floor();
                let sign = if m.rem_euclid(2.0) == 0.0 { 1.0 } else { -1.0 };
                (4.0 * m + sign * y) / scale
            }
            Expr::SineAffine { .. } => self.bisect(y, lo, hi, tol),
        };
        t.clamp(lo, hi)
    }

    fn bisect(&self, y: f64, lo: f64, hi: f64, tol: f64) -> f64 {
        let increasing = self.eval(hi) >= self.eval(lo);
        let (mut a, mut b) = (lo, hi);
        for _ in 0..200 {
            if b - a <= tol {
                break;
            }
            let m = 0.5 * (a + b);
            if (self.eval(m) < y) == increasing {
                a = m;
            } else {
                b = m;
            }
        }
        0.5 * (a + b)
    }

    /// `inf |f'|` over `[lo, hi]`, zero if `f'` changes sign there.
    pub fn abs_derivative_inf(&self, lo: f64, hi: f64) -> f64 {
        let mut cands = vec![lo, hi];
        match *self {
            Expr::Constant(_) => return 0.0,
            Expr::Affine { p, .. } => return p.abs(),
            Expr::Sawtooth { scale } => {
                if self.turning_points(lo, hi).is_empty() {
                    return scale.abs();
                }
                return 0.0;
            }
            Expr::Quadratic { .. } => {}
            Expr::SineAffine { .. } => {
                // f'' = -s sin t vanishes at multiples of π.
                let k0 = (lo / PI).ceil() as i64;
                let k1 = (hi / PI).floor() as i64;
                cands.extend((k0..=k1).map(|k| k as f64 * PI));
            }
        }
        let vals: Vec<f64> = cands.iter().map(|&t| self.derivative(t)).collect();
        let pos = vals.iter().any(|&v| v > 0.0);
        let neg = vals.iter().any(|&v| v < 0.0);
        if pos && neg {
            return 0.0;
        }
        vals.iter().map(|v| v.abs()).fold(f64::INFINITY, f64::min)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn saw_values() {
        assert_eq!(saw2(0.0), 0.0);
        assert_eq!(saw2(1.5), 1.5);
        assert_eq!(saw2(3.0), 1.0);
        assert_eq!(saw2(-3.0), -1.0);
        assert_eq!(saw2(8.0), 0.0);
        assert!((saw2(2.0) - 2.0).abs() < 1e-15);
    }

    #[test]
    fn saw_is_continuous_at_folds() {
        for m in -5..5 {
            let t = 4.0 * m as f64 + 2.0;
            assert!((saw2(t - 1e-12) - saw2(t + 1e-12)).abs() < 1e-9);
        }
    }

    #[test]
    fn quadratic_turning_point() {
        let q = Expr::Quadratic { c: 16.0, d: 1.0 };
        assert_eq!(q.turning_points(0.0, 1.0), vec![0.5]);
        assert!(q.turning_points(0.0, 0.25).is_empty());
    }

    #[test]
    fn sawtooth_folds() {
        let s = Expr::Sawtooth { scale: 12.0 };
        let f = s.turning_points(-1.0, 1.0);
        let expect = [-10.0 / 12.0, -6.0 / 12.0, -2.0 / 12.0, 2.0 / 12.0, 6.0 / 12.0, 10.0 / 12.0];
        assert_eq!(f.len(), expect.len());
        for (a, b) in f.iter().zip(expect) {
            assert!((a - b).abs() < 1e-15);
        }
    }

    #[test]
    fn sine_turning_points() {
        let e = Expr::SineAffine { s: 1.0, p: 0.0, q: 0.0 };
        let t = e.turning_points(0.0, 7.0);
        assert_eq!(t.len(), 2);
        assert!((t[0] - PI / 2.0).abs() < 1e-12 && (t[1] - 1.5 * PI).abs() < 1e-12);
    }

    #[test]
    fn inverses() {
        let q = Expr::Quadratic { c: 4.0, d: 2.0 };
        assert!((q.solve_monotone(1.75, 1.5, 2.0, 1e-12) - 1.75).abs() < 1e-15);
        let s = Expr::Sawtooth { scale: 12.0 };
        let t = s.solve_monotone(1.0, 0.5, 10.0 / 12.0, 1e-12);
        assert!((s.eval(t) - 1.0).abs() < 1e-12);
        let e = Expr::SineAffine { s: 1.0, p: 0.0, q: 0.0 };
        let t = e.solve_monotone(0.5, 0.0, PI / 2.0, 1e-14);
        assert!((t - (0.5f64).asin()).abs() < 1e-13);
    }

    #[test]
    fn derivative_infima() {
        let f1 = Expr::Quadratic { c: 16.0, d: 1.0 };
        assert_eq!(f1.abs_derivative_inf(0.0, 0.25), 8.0);
        assert_eq!(f1.abs_derivative_inf(0.75, 1.0), 8.0);
        assert_eq!(f1.abs_derivative_inf(0.25, 0.75), 0.0);
        let f2 = Expr::Quadratic { c: 4.0, d: 2.0 };
        assert_eq!(f2.abs_derivative_inf(0.0, 0.5), 4.0);
        assert_eq!(f2.abs_derivative_inf(1.5, 2.0), 4.0);
    }
}
