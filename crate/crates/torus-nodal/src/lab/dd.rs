//! Double-double arithmetic: an unevaluated sum of two doubles giving
//! roughly 32 significant digits.
//!
//! Used by the extended-precision oracle for the implicit-curve derivative
//! checks, where fourth-order finite differences of a root function would
//! otherwise drown in f64 rounding.  Only the operations that oracle needs
//! are implemented: field arithmetic plus sine and cosine with argument
//! reduction modulo a quarter turn.

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Dd {
    pub hi: f64,
    pub lo: f64,
}

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

pub const DD_ZERO: Dd = Dd { hi: 0.0, lo: 0.0 };
pub const DD_ONE: Dd = Dd { hi: 1.0, lo: 0.0 };
/// pi/2 to double-double precision.
pub const DD_FRAC_PI_2: Dd = Dd { hi: 1.570_796_326_794_896_6, lo: 6.123_233_995_736_766e-17 };

impl Dd {
    pub fn from_f64(a: f64) -> Self {
        Dd { hi: a, lo: 0.0 }
    }

    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    pub fn neg(self) -> Self {
        Dd { hi: -self.hi, lo: -self.lo }
    }

    pub fn abs(self) -> Self {
        if self.hi < 0.0 || (self.hi == 0.0 && self.lo < 0.0) {
            self.neg()
        } else {
            self
        }
    }

    pub fn add(self, other: Self) -> Self {
        let (s1, s2) = two_sum(self.hi, other.hi);
        let (t1, t2) = two_sum(self.lo, other.lo);
        let (s1, s2) = quick_two_sum(s1, s2 + t1);
        let (hi, lo) = quick_two_sum(s1, s2 + t2);
        Dd { hi, lo }
    }

    pub fn sub(self, other: Self) -> Self {
        self.add(other.neg())
    }

    pub fn add_f64(self, other: f64) -> Self {
        self.add(Dd::from_f64(other))
    }

    pub fn mul(self, other: Self) -> Self {
        let (p1, p2) = two_prod(self.hi, other.hi);
        let p2 = p2 + self.hi * other.lo + self.lo * other.hi;
        let (hi, lo) = quick_two_sum(p1, p2);
        Dd { hi, lo }
    }

    pub fn mul_f64(self, other: f64) -> Self {
        let (p1, p2) = two_prod(self.hi, other);
        let p2 = p2 + self.lo * other;
        let (hi, lo) = quick_two_sum(p1, p2);
        Dd { hi, lo }
    }

    pub fn div(self, other: Self) -> Self {
        let q1 = self.hi / other.hi;
        let r = self.sub(other.mul_f64(q1));
        let q2 = r.hi / other.hi;
        let r = r.sub(other.mul_f64(q2));
        let q3 = r.hi / other.hi;
        Dd::from_f64(q1).add_f64(q2).add_f64(q3)
    }

    pub fn div_f64(self, other: f64) -> Self {
        self.div(Dd::from_f64(other))
    }

    /// Sine and cosine together, with reduction modulo pi/2.
    pub fn sin_cos(self) -> (Self, Self) {
        // quadrant count: exact for the argument ranges used here
        let n = (self.hi / DD_FRAC_PI_2.hi).round();
        let r = self.sub(DD_FRAC_PI_2.mul_f64(n));
        let (s, c) = taylor_sin_cos(r);
        match (n as i64).rem_euclid(4) {
            0 => (s, c),
            1 => (c, s.neg()),
            2 => (s.neg(), c.neg()),
            _ => (c.neg(), s),
        }
    }

    pub fn sin(self) -> Self {
        self.sin_cos().0
    }

    pub fn cos(self) -> Self {
        self.sin_cos().1
    }
}

/// Taylor series on `|r| <= pi/4`; terms through `r^33` push truncation well
/// below double-double resolution.
fn taylor_sin_cos(r: Dd) -> (Dd, Dd) {
    let r2 = r.mul(r);
    let mut sin = r;
    let mut term = r;
    let mut k = 1.0f64;
    for _ in 0..16 {
        term = term.mul(r2).div_f64(-((k + 1.0) * (k + 2.0)));
        sin = sin.add(term);
        k += 2.0;
    }
    let mut cos = DD_ONE;
    let mut term = DD_ONE;
    let mut k = 0.0f64;
    for _ in 0..16 {
        term = term.mul(r2).div_f64(-((k + 1.0) * (k + 2.0)));
        cos = cos.add(term);
        k += 2.0;
    }
    (sin, cos)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_against_f64() {
        let a = Dd::from_f64(1.0).div_f64(3.0);
        assert!((a.to_f64() - 1.0 / 3.0).abs() < 1e-16);
        // residual of hi alone is recovered by lo
        let err = (1.0 - (a.hi * 3.0 + a.lo * 3.0)).abs();
        assert!(err < 1e-30);
        let b = a.mul_f64(3.0);
        assert!((b.to_f64() - 1.0).abs() < 1e-30);
    }

    #[test]
    fn sin_cos_known_values() {
        for &(x, s) in &[
            (0.5f64, 0.479425538604203f64),
            (1.0, 0.8414709848078965),
            (10.0, -0.5440211108893698),
            (-3.25, 0.10819513453010837),
        ] {
            let dd = Dd::from_f64(x).sin();
            assert!((dd.to_f64() - s).abs() < 1e-15, "sin({x})");
            // pythagorean identity at dd precision
            let (si, co) = Dd::from_f64(x).sin_cos();
            let one = si.mul(si).add(co.mul(co));
            assert!((one.to_f64() - 1.0).abs() < 1e-30);
            assert!((one.sub(DD_ONE).to_f64()).abs() < 1e-30);
        }
    }

    #[test]
    fn sin_addition_formula_at_dd_precision() {
        let a = Dd::from_f64(0.3);
        let b = Dd::from_f64(0.45);
        let lhs = a.add(b).sin();
        let (sa, ca) = a.sin_cos();
        let (sb, cb) = b.sin_cos();
        let rhs = sa.mul(cb).add(ca.mul(sb));
        assert!(lhs.sub(rhs).to_f64().abs() < 1e-31);
    }
}
