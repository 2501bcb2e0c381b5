//! Software wide-precision arithmetic (256-bit mantissas, ~77 significant
//! digits) and brute-force series evaluators built on it.
//!
//! This is the reference path that mints golden values for the f64 kernels:
//! it shares no code with them. Products and series here are summed term by
//! term with no truncation rule beyond "keep going until terms fall below
//! the working precision", so a disagreement with the fast path points at
//! the fast path's truncation logic or rounding, not at a shared bug.
//!
//! Intended for tests and for regenerating frozen constants; not tuned for
//! speed.

use num_bigint::{BigInt, Sign};

/// Mantissa width in bits. 256 bits is about 77 decimal digits.
pub const PREC: u64 = 256;

/// An arbitrary-precision binary floating-point number `mant * 2^exp`,
/// truncated (toward zero) to [`PREC`] mantissa bits after every operation.
#[derive(Clone, Debug)]
pub struct Wide {
    mant: BigInt,
    exp: i64,
}

impl Wide {
    pub fn zero() -> Self {
        Wide { mant: BigInt::from(0), exp: 0 }
    }

    pub fn one() -> Self {
        Wide { mant: BigInt::from(1), exp: 0 }
    }

    pub fn from_i64(n: i64) -> Self {
        Wide { mant: BigInt::from(n), exp: 0 }
    }

    pub fn from_ratio(n: i64, d: i64) -> Self {
        Wide::from_i64(n).div(&Wide::from_i64(d))
    }

    pub fn from_f64(f: f64) -> Self {
        assert!(f.is_finite(), "cannot build Wide from {f}");
        if f == 0.0 {
            return Wide::zero();
        }
        let bits = f.to_bits();
        let neg = bits >> 63 == 1;
        let biased = ((bits >> 52) & 0x7ff) as i64;
        let frac = bits & ((1u64 << 52) - 1);
        let (mag, exp) = if biased == 0 {
            (frac, -1074)
        } else {
            (frac | (1u64 << 52), biased - 1075)
        };
        let mut mant = BigInt::from(mag);
        if neg {
            mant = -mant;
        }
        Wide { mant, exp }
    }

    pub fn is_zero(&self) -> bool {
        self.mant.sign() == Sign::NoSign
    }

    pub fn is_negative(&self) -> bool {
        self.mant.sign() == Sign::Minus
    }

    fn bits(&self) -> u64 {
        self.mant.magnitude().bits()
    }

    fn truncate(mut self) -> Self {
        let b = self.bits();
        if b > PREC {
            let s = (b - PREC) as i64;
            self.mant >>= s as usize;
            self.exp += s;
        }
        if self.is_zero() {
            self.exp = 0;
        }
        self
    }

    pub fn neg(&self) -> Self {
        Wide { mant: -self.mant.clone(), exp: self.exp }
    }

    pub fn abs(&self) -> Self {
        Wide { mant: self.mant.magnitude().clone().into(), exp: self.exp }
    }

    pub fn add(&self, other: &Wide) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        // Drop an addend that cannot touch the retained mantissa bits.
        let top_a = self.exp + self.bits() as i64;
        let top_b = other.exp + other.bits() as i64;
        let guard = PREC as i64 + 8;
        if top_a - top_b > guard + other.bits() as i64 {
            return self.clone();
        }
        if top_b - top_a > guard + self.bits() as i64 {
            return other.clone();
        }
        let exp = self.exp.min(other.exp);
        let a = self.mant.clone() << (self.exp - exp) as usize;
        let b = other.mant.clone() << (other.exp - exp) as usize;
        Wide { mant: a + b, exp }.truncate()
    }

    pub fn sub(&self, other: &Wide) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Wide) -> Self {
        Wide { mant: &self.mant * &other.mant, exp: self.exp + other.exp }.truncate()
    }

    pub fn div(&self, other: &Wide) -> Self {
        assert!(!other.is_zero(), "wide division by zero");
        if self.is_zero() {
            return Wide::zero();
        }
        let shift = PREC + 8 + other.bits();
        let num = self.mant.clone() << shift as usize;
        Wide { mant: num / &other.mant, exp: self.exp - other.exp - shift as i64 }.truncate()
    }

    pub fn recip(&self) -> Self {
        Wide::one().div(self)
    }

    /// Square root of a non-negative value via the integer square root of a
    /// mantissa widened to double precision.
    pub fn sqrt(&self) -> Self {
        assert!(!self.is_negative(), "wide sqrt of negative value");
        if self.is_zero() {
            return Wide::zero();
        }
        let mut mag = self.mant.magnitude().clone();
        let mut exp = self.exp;
        let target = 2 * (PREC + 8);
        let mut shift = target.saturating_sub(mag.bits());
        if (exp - shift as i64) % 2 != 0 {
            shift += 1;
        }
        mag <<= shift as usize;
        exp -= shift as i64;
        let root = mag.sqrt();
        Wide { mant: root.into(), exp: exp / 2 }.truncate()
    }

    pub fn powi(&self, n: i64) -> Self {
        if n == 0 {
            return Wide::one();
        }
        let mut base = if n < 0 { self.recip() } else { self.clone() };
        let mut m = n.unsigned_abs();
        let mut acc = Wide::one();
        while m > 0 {
            if m & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            m >>= 1;
        }
        acc
    }

    /// Compare magnitudes: true when |self| < |other|.
    pub fn abs_lt(&self, other: &Wide) -> bool {
        if self.is_zero() {
            return !other.is_zero();
        }
        if other.is_zero() {
            return false;
        }
        let top_a = self.exp + self.bits() as i64;
        let top_b = other.exp + other.bits() as i64;
        if top_a != top_b {
            return top_a < top_b;
        }
        let exp = self.exp.min(other.exp);
        let a = self.mant.magnitude().clone() << (self.exp - exp) as usize;
        let b = other.mant.magnitude().clone() << (other.exp - exp) as usize;
        a < b
    }

    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let b = self.bits();
        let (top, exp) = if b > 63 {
            let s = b - 63;
            let m = self.mant.magnitude().clone() >> s as usize;
            (m.iter_u64_digits().next().unwrap_or(0), self.exp + s as i64)
        } else {
            (self.mant.magnitude().iter_u64_digits().next().unwrap_or(0), self.exp)
        };
        let sign = if self.is_negative() { -1.0 } else { 1.0 };
        sign * top as f64 * (exp as f64).exp2()
    }

    /// Rough log2 magnitude, used only for termination thresholds.
    fn log2_abs(&self) -> i64 {
        if self.is_zero() {
            i64::MIN / 2
        } else {
            self.exp + self.bits() as i64
        }
    }
}

/// Complex number over [`Wide`].
#[derive(Clone, Debug)]
pub struct WideComplex {
    pub re: Wide,
    pub im: Wide,
}

impl WideComplex {
    pub fn zero() -> Self {
        WideComplex { re: Wide::zero(), im: Wide::zero() }
    }

    pub fn one() -> Self {
        WideComplex { re: Wide::one(), im: Wide::zero() }
    }

    pub fn real(r: Wide) -> Self {
        WideComplex { re: r, im: Wide::zero() }
    }

    pub fn from_f64(re: f64, im: f64) -> Self {
        WideComplex { re: Wide::from_f64(re), im: Wide::from_f64(im) }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn add(&self, o: &WideComplex) -> Self {
        WideComplex { re: self.re.add(&o.re), im: self.im.add(&o.im) }
    }

    pub fn sub(&self, o: &WideComplex) -> Self {
        WideComplex { re: self.re.sub(&o.re), im: self.im.sub(&o.im) }
    }

    pub fn neg(&self) -> Self {
        WideComplex { re: self.re.neg(), im: self.im.neg() }
    }

    pub fn mul(&self, o: &WideComplex) -> Self {
        WideComplex {
            re: self.re.mul(&o.re).sub(&self.im.mul(&o.im)),
            im: self.re.mul(&o.im).add(&self.im.mul(&o.re)),
        }
    }

    pub fn div(&self, o: &WideComplex) -> Self {
        let n = o.norm_sqr();
        let conj = WideComplex { re: o.re.clone(), im: o.im.neg() };
        let p = self.mul(&conj);
        WideComplex { re: p.re.div(&n), im: p.im.div(&n) }
    }

    pub fn scale(&self, s: &Wide) -> Self {
        WideComplex { re: self.re.mul(s), im: self.im.mul(s) }
    }

    pub fn norm_sqr(&self) -> Wide {
        self.re.mul(&self.re).add(&self.im.mul(&self.im))
    }

    pub fn abs(&self) -> Wide {
        self.norm_sqr().sqrt()
    }

    pub fn powi(&self, n: i64) -> Self {
        if n == 0 {
            return WideComplex::one();
        }
        let mut base = if n < 0 { WideComplex::one().div(self) } else { self.clone() };
        let mut m = n.unsigned_abs();
        let mut acc = WideComplex::one();
        while m > 0 {
            if m & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            m >>= 1;
        }
        acc
    }

    pub fn to_c64(&self) -> num_complex::Complex64 {
        num_complex::Complex64::new(self.re.to_f64(), self.im.to_f64())
    }
}

const TINY_LOG2: i64 = -(PREC as i64) - 24;

/// (a;q)_inf by direct multiplication until the running factor offset
/// a q^i drops below working precision.
pub fn wqpoch_inf(a: &WideComplex, q: &Wide) -> WideComplex {
    let mut prod = WideComplex::one();
    let mut aqi = a.clone();
    for _ in 0..200_000 {
        if aqi.re.log2_abs() <= TINY_LOG2 && aqi.im.log2_abs() <= TINY_LOG2 {
            break;
        }
        prod = prod.mul(&WideComplex::one().sub(&aqi));
        if prod.is_zero() {
            return prod;
        }
        aqi = aqi.scale(q);
    }
    prod
}

/// (a;q)_n for n >= 0.
pub fn wqpoch_finite(a: &WideComplex, q: &Wide, n: u32) -> WideComplex {
    let mut prod = WideComplex::one();
    let mut aqi = a.clone();
    for _ in 0..n {
        prod = prod.mul(&WideComplex::one().sub(&aqi));
        aqi = aqi.scale(q);
    }
    prod
}

/// (a;q)_n for any integer n.
pub fn wqpoch_int(a: &WideComplex, q: &Wide, n: i64) -> WideComplex {
    if n >= 0 {
        return wqpoch_finite(a, q, n as u32);
    }
    let mut prod = WideComplex::one();
    let mut aqj = a.clone();
    let qinv = q.recip();
    for _ in 0..(-n) {
        aqj = aqj.scale(&qinv);
        prod = prod.mul(&WideComplex::one().sub(&aqj));
    }
    WideComplex::one().div(&prod)
}

/// Product of (p;q)_inf over a parameter list.
pub fn wqpoch_prod(params: &[WideComplex], q: &Wide) -> WideComplex {
    let mut acc = WideComplex::one();
    for p in params {
        acc = acc.mul(&wqpoch_inf(p, q));
    }
    acc
}

/// theta(x) = (x;q)_inf (q/x;q)_inf.
pub fn wtheta(x: &WideComplex, q: &Wide) -> WideComplex {
    let qx = WideComplex::real(q.clone()).div(x);
    wqpoch_inf(x, q).mul(&wqpoch_inf(&qx, q))
}

/// Brute-force r+1_phi_r: terms via the ratio recurrence, summed until they
/// stay below working precision relative to the largest partial magnitude.
pub fn wphi(upper: &[WideComplex], lower: &[WideComplex], q: &Wide, z: &WideComplex) -> WideComplex {
    let one = WideComplex::one();
    let mut sum = WideComplex::one();
    let mut term = WideComplex::one();
    let mut qk = Wide::one();
    let mut scale = Wide::one();
    let mut quiet = 0;
    for k in 0..100_000u32 {
        let mut r = z.clone();
        for u in upper {
            r = r.mul(&one.sub(&u.scale(&qk)));
        }
        r = r.div(&WideComplex::real(Wide::one().sub(&qk.mul(q))));
        for l in lower {
            r = r.div(&one.sub(&l.scale(&qk)));
        }
        term = term.mul(&r);
        sum = sum.add(&term);
        qk = qk.mul(q);
        let t = term.abs();
        if scale.abs_lt(&t) {
            scale = t.clone();
        }
        let cutoff = Wide { mant: BigInt::from(1), exp: scale.log2_abs() + TINY_LOG2 };
        if t.abs_lt(&cutoff) {
            quiet += 1;
            if quiet >= 3 && k > 4 {
                break;
            }
        } else {
            quiet = 0;
        }
    }
    sum
}

/// Brute-force very-well-poised 8W7.
pub fn ww87(a: &WideComplex, bcdef: &[WideComplex; 5], q: &Wide, z: &WideComplex) -> WideComplex {
    let one = WideComplex::one();
    let mut sum = WideComplex::one();
    let mut term = WideComplex::one();
    let mut qk = Wide::one();
    let mut q2k = Wide::one();
    let q2 = q.mul(q);
    let mut scale = Wide::one();
    let mut quiet = 0;
    for k in 0..100_000u32 {
        let mut r = z.clone();
        r = r.mul(&one.sub(&a.scale(&q2k.mul(&q2))));
        if k > 0 {
            r = r.mul(&one.sub(&a.scale(&qk)));
            r = r.div(&one.sub(&a.scale(&q2k)));
        }
        for p in bcdef {
            r = r.mul(&one.sub(&p.scale(&qk)));
        }
        r = r.div(&WideComplex::real(Wide::one().sub(&qk.mul(q))));
        for p in bcdef {
            let d = WideComplex::real(q.clone()).mul(a).div(p);
            r = r.div(&one.sub(&d.scale(&qk)));
        }
        term = term.mul(&r);
        sum = sum.add(&term);
        qk = qk.mul(q);
        q2k = q2k.mul(&q2);
        let t = term.abs();
        if scale.abs_lt(&t) {
            scale = t.clone();
        }
        let cutoff = Wide { mant: BigInt::from(1), exp: scale.log2_abs() + TINY_LOG2 };
        if t.abs_lt(&cutoff) {
            quiet += 1;
            if quiet >= 3 && k > 4 {
                break;
            }
        } else {
            quiet = 0;
        }
    }
    sum
}
