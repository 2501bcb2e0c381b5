//! Compensated accumulation and overflow-safe scaled products.
//!
//! Series terms here routinely span hundreds of orders of magnitude once the
//! geometric variable walks far out on a q-lattice, so plain f64 products
//! overflow long before the final values do. [`ScaledComplex`] keeps a complex
//! mantissa together with a binary exponent; products of q-shifted factorials
//! are accumulated in this form and only collapsed to `Complex64` at the end.

use num_complex::Complex64;

/// Kahan–Neumaier compensated accumulator for complex terms.
#[derive(Clone, Copy, Debug, Default)]
pub struct Kahan {
    sum: Complex64,
    comp: Complex64,
}

impl Kahan {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, term: Complex64) {
        self.comp.re += neumaier_step(&mut self.sum.re, term.re);
        self.comp.im += neumaier_step(&mut self.sum.im, term.im);
    }

    pub fn value(&self) -> Complex64 {
        self.sum + self.comp
    }
}

fn neumaier_step(sum: &mut f64, input: f64) -> f64 {
    let t = *sum + input;
    let corr = if sum.abs() >= input.abs() {
        (*sum - t) + input
    } else {
        (input - t) + *sum
    };
    *sum = t;
    corr
}

/// A complex number stored as `mantissa * 2^exp2`, with the mantissa kept
/// near unit magnitude. Exact zero is `{0, 0}`.
#[derive(Clone, Copy, Debug)]
pub struct ScaledComplex {
    pub mantissa: Complex64,
    pub exp2: i64,
}

impl ScaledComplex {
    pub fn one() -> Self {
        Self { mantissa: Complex64::new(1.0, 0.0), exp2: 0 }
    }

    pub fn zero() -> Self {
        Self { mantissa: Complex64::new(0.0, 0.0), exp2: 0 }
    }

    pub fn from_complex(z: Complex64) -> Self {
        let mut s = Self { mantissa: z, exp2: 0 };
        s.renormalize();
        s
    }

    pub fn is_zero(&self) -> bool {
        self.mantissa.re == 0.0 && self.mantissa.im == 0.0
    }

    fn renormalize(&mut self) {
        let n = self.mantissa.norm();
        if n == 0.0 || !n.is_finite() {
            self.exp2 = 0;
            return;
        }
        let k = n.log2().round();
        if k.abs() >= 1.0 {
            let k = k as i32;
            self.mantissa *= (-k as f64).exp2();
            self.exp2 += k as i64;
        }
    }

    pub fn mul_complex(&mut self, z: Complex64) {
        self.mantissa *= z;
        self.renormalize();
    }

    pub fn mul(mut self, other: ScaledComplex) -> ScaledComplex {
        self.mantissa *= other.mantissa;
        self.exp2 += other.exp2;
        self.renormalize();
        self
    }

    pub fn div(mut self, other: ScaledComplex) -> ScaledComplex {
        self.mantissa /= other.mantissa;
        self.exp2 -= other.exp2;
        self.renormalize();
        self
    }

    pub fn recip(self) -> ScaledComplex {
        let mut s = ScaledComplex { mantissa: self.mantissa.finv(), exp2: -self.exp2 };
        s.renormalize();
        s
    }

    /// Integer power by repeated squaring.
    pub fn powi(self, n: i64) -> ScaledComplex {
        if n == 0 {
            return ScaledComplex::one();
        }
        let mut base = if n < 0 { self.recip() } else { self };
        let mut m = n.unsigned_abs();
        let mut acc = ScaledComplex::one();
        while m > 0 {
            if m & 1 == 1 {
                acc = acc.mul(base);
            }
            base = base.mul(base);
            m >>= 1;
        }
        acc
    }

    /// Collapse to a plain complex number. Saturates to infinity/zero when the
    /// exponent leaves f64 range.
    pub fn to_complex(&self) -> Complex64 {
        if self.is_zero() {
            return Complex64::new(0.0, 0.0);
        }
        if self.exp2 > 1060 {
            return Complex64::new(f64::INFINITY, f64::INFINITY);
        }
        if self.exp2 < -1130 {
            return Complex64::new(0.0, 0.0);
        }
        self.mantissa * (self.exp2 as f64).exp2()
    }

    /// log2 of the magnitude, for loss-of-precision estimates.
    pub fn log2_abs(&self) -> f64 {
        if self.is_zero() {
            f64::NEG_INFINITY
        } else {
            self.exp2 as f64 + self.mantissa.norm().log2()
        }
    }
}
