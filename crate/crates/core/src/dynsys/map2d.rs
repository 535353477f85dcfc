use super::saw2;

/// `F(x₁, x₂) = (w₁·sin x₂ + saw_2(k₁·x₁), w₂·sin x₁ + saw_2(k₂·x₂))`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Map2D {
    pub weight: [f64; 2],
    pub scale: [f64; 2],
}

impl Map2D {
    pub fn eval(&self, x: [f64; 2]) -> [f64; 2] {
        [self.component(0, x), self.component(1, x)]
    }

    /// Component `k` (0-based).
    pub fn component(&self, k: usize, x: [f64; 2]) -> f64 {
        let other = x[1 - k];
        self.weight[k] * other.sin() + saw2(self.scale[k] * x[k])
    }
}

/// How the coupling weight depends on the step index.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum WeightRule {
    Constant(f64),
    /// `w_n = n / (n + 1)`
    IndexRatio,
}

impl WeightRule {
    pub fn at(&self, n: usize) -> f64 {
        match *self {
            WeightRule::Constant(w) => w,
            WeightRule::IndexRatio => n as f64 / (n as f64 + 1.0),
        }
    }

    /// Closed hull of `{w_n : n ≥ 0}`.
    pub fn range(&self) -> (f64, f64) {
        match *self {
            WeightRule::Constant(w) => (w, w),
            WeightRule::IndexRatio => (0.0, 1.0),
        }
    }
}

/// The sine-sawtooth family `F_n`, one weight rule shared by both
/// components.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SineSawFamily {
    pub weight: WeightRule,
    pub scale: f64,
}

impl SineSawFamily {
    pub fn map_at(&self, n: usize) -> Map2D {
        self.with_weight(self.weight.at(n))
    }

    pub fn with_weight(&self, w: f64) -> Map2D {
        Map2D {
            weight: [w, w],
            scale: [self.scale, self.scale],
        }
    }
}
