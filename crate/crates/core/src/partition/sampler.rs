use rand::Rng;

/// Exponential(λ) conditioned on `[lo, hi]`, sampled by inverting
///
/// `F(y) = (e^(−λ·lo) − e^(−λy)) / (e^(−λ·lo) − e^(−λ·hi))`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RadiusSampler {
    pub lambda: f64,
    pub lo: f64,
    pub hi: f64,
}

impl RadiusSampler {
    pub fn new(lambda: f64, lo: f64, hi: f64) -> Self {
        assert!(lambda > 0.0 && lo < hi, "need λ > 0 and lo < hi");
        RadiusSampler { lambda, lo, hi }
    }

    pub fn cdf(&self, y: f64) -> f64 {
        if y <= self.lo {
            return 0.0;
        }
        if y >= self.hi {
            return 1.0;
        }
        // Shifted to lo: (1 − e^(−λ(y−lo))) / (1 − e^(−λ(hi−lo)))
        (-self.lambda * (y - self.lo)).exp_m1() / (-self.lambda * (self.hi - self.lo)).exp_m1()
    }

    pub fn quantile(&self, u: f64) -> f64 {
        let span = self.hi - self.lo;
        let mass = (-self.lambda * span).exp_m1(); // in (−1, 0)
        let y = if mass == 0.0 {
            self.lo + u * span
        } else {
            self.lo - (u * mass).ln_1p() / self.lambda
        };
        y.clamp(self.lo, self.hi)
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        self.quantile(rng.gen::<f64>())
    }
}
