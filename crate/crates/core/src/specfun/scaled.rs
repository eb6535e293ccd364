//! Power-of-two scaled floats for overflow-safe backward recurrences.
//!
//! Unnormalized Miller iterates grow past 1e300 long before the recurrence
//! reaches the orders of interest. Tracking an explicit binary exponent
//! keeps every intermediate finite without arbitrary precision.

/// A real number stored as `mantissa * 2^exponent` with |mantissa| in [1, 2).
///
/// Zero is stored canonically as (0.0, 0). Conversion back to `f64` is exact
/// whenever the value is representable.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScaledFloat {
    mantissa: f64,
    exponent: i64,
}

/// Split a finite nonzero f64 into (m, e) with |m| in [1, 2) and m * 2^e == x.
fn frexp1(x: f64) -> (f64, i64) {
    debug_assert!(x.is_finite() && x != 0.0);
    let mut x = x;
    let mut shift = 0i64;
    // Lift subnormals into the normal range first.
    if x.abs() < f64::MIN_POSITIVE {
        x *= pow2(64);
        shift = -64;
    }
    let bits = x.to_bits();
    let raw_exp = ((bits >> 52) & 0x7ff) as i64;
    let e = raw_exp - 1023;
    let m = f64::from_bits((bits & !(0x7ffu64 << 52)) | (1023u64 << 52));
    (m, e + shift)
}

/// 2^e as an f64 for e in [-1022, 1023].
fn pow2(e: i64) -> f64 {
    debug_assert!((-1022..=1023).contains(&e));
    f64::from_bits(((e + 1023) as u64) << 52)
}

impl ScaledFloat {
    pub fn zero() -> Self {
        ScaledFloat { mantissa: 0.0, exponent: 0 }
    }

    pub fn from_f64(x: f64) -> Self {
        assert!(x.is_finite(), "ScaledFloat::from_f64 requires finite input");
        if x == 0.0 {
            return Self::zero();
        }
        let (m, e) = frexp1(x);
        ScaledFloat { mantissa: m, exponent: e }
    }

    pub fn is_zero(&self) -> bool {
        self.mantissa == 0.0
    }

    pub fn mantissa(&self) -> f64 {
        self.mantissa
    }

    pub fn exponent(&self) -> i64 {
        self.exponent
    }

    /// Convert to a plain f64, saturating to 0 on underflow and
    /// +/-inf on overflow.
    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        if self.exponent > 1023 {
            return f64::INFINITY * self.mantissa.signum();
        }
        if self.exponent >= -1022 {
            return self.mantissa * pow2(self.exponent);
        }
        if self.exponent >= -1140 {
            // Two-step scaling reaches the subnormal range.
            return self.mantissa * pow2(-600) * pow2(self.exponent + 600);
        }
        0.0
    }

    pub fn mul_f64(&self, y: f64) -> Self {
        assert!(y.is_finite());
        if self.is_zero() || y == 0.0 {
            return Self::zero();
        }
        let (my, ey) = frexp1(y);
        let m = self.mantissa * my; // |m| in [1, 4)
        let (mn, en) = frexp1(m);
        ScaledFloat { mantissa: mn, exponent: self.exponent + ey + en }
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.is_zero() {
            return *other;
        }
        if other.is_zero() {
            return *self;
        }
        let (hi, lo) = if self.exponent >= other.exponent {
            (self, other)
        } else {
            (other, self)
        };
        let shift = hi.exponent - lo.exponent;
        if shift > 120 {
            return *hi; // below one ulp of hi
        }
        let m = hi.mantissa + lo.mantissa * pow2(-shift);
        if m == 0.0 {
            return Self::zero();
        }
        let (mn, en) = frexp1(m);
        ScaledFloat { mantissa: mn, exponent: hi.exponent + en }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        ScaledFloat { mantissa: -self.mantissa, exponent: self.exponent }
    }

    /// self / other as a plain f64 (finite whenever the true ratio is).
    pub fn div_to_f64(&self, other: &Self) -> f64 {
        assert!(!other.is_zero(), "ScaledFloat division by zero");
        if self.is_zero() {
            return 0.0;
        }
        let ratio = ScaledFloat {
            mantissa: self.mantissa / other.mantissa,
            exponent: self.exponent - other.exponent,
        };
        let (mn, en) = frexp1(ratio.mantissa);
        ScaledFloat { mantissa: mn, exponent: ratio.exponent + en }.to_f64()
    }
}
