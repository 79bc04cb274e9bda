//! Truncated Laurent series in one variable with complex coefficients.
//!
//! A [`Laurent`] value represents `Σ_j c_j x^{v+j} + O(x^{v+n})`, where `v` is the
//! valuation offset and `n` the number of stored coefficients. Every operation
//! tracks the order of the error term, so results never claim more accuracy than
//! their inputs carry.

use crate::params::C64;
use std::ops::{Add, Mul, Neg, Sub};

/// Truncated Laurent series `Σ_j c_j x^{val+j} + O(x^{prec})`.
#[derive(Debug, Clone, PartialEq)]
pub struct Laurent {
    val: i32,
    coeffs: Vec<C64>,
}

impl Laurent {
    /// Series with coefficients `coeffs[j]` multiplying `x^{val+j}`.
    pub fn new(val: i32, coeffs: Vec<C64>) -> Self {
        Self { val, coeffs }
    }

    /// The zero series known modulo `O(x^{prec})`.
    pub fn zero(prec: i32) -> Self {
        Self {
            val: prec,
            coeffs: Vec::new(),
        }
    }

    /// `c·x^{power} + O(x^{prec})`.
    pub fn monomial(c: C64, power: i32, prec: i32) -> Self {
        if power >= prec {
            return Self::zero(prec);
        }
        let mut coeffs = vec![C64::new(0.0, 0.0); (prec - power) as usize];
        coeffs[0] = c;
        Self { val: power, coeffs }
    }

    /// The constant `c + O(x^{prec})`.
    pub fn constant(c: C64, prec: i32) -> Self {
        Self::monomial(c, 0, prec)
    }

    /// Lowest stored power.
    pub fn val(&self) -> i32 {
        self.val
    }

    /// Order of the error term: the series is exact modulo `O(x^{prec})`.
    pub fn prec(&self) -> i32 {
        self.val + self.coeffs.len() as i32
    }

    /// Coefficient of `x^{power}`; zero below the valuation.
    ///
    /// # Panics
    /// Panics when `power ≥ prec`, since that coefficient is unknown.
    pub fn coeff(&self, power: i32) -> C64 {
        assert!(
            power < self.prec(),
            "coefficient of x^{power} requested beyond precision {}",
            self.prec()
        );
        if power < self.val {
            C64::new(0.0, 0.0)
        } else {
            self.coeffs[(power - self.val) as usize]
        }
    }

    /// Drops every term of order `≥ prec`.
    pub fn truncate(&self, prec: i32) -> Self {
        if prec >= self.prec() {
            return self.clone();
        }
        if prec <= self.val {
            return Self::zero(prec);
        }
        Self {
            val: self.val,
            coeffs: self.coeffs[..(prec - self.val) as usize].to_vec(),
        }
    }

    /// Multiplies by the scalar `c`.
    pub fn scale(&self, c: C64) -> Self {
        Self {
            val: self.val,
            coeffs: self.coeffs.iter().map(|&z| z * c).collect(),
        }
    }

    /// Multiplies by `x^{k}`.
    pub fn shift(&self, k: i32) -> Self {
        Self {
            val: self.val + k,
            coeffs: self.coeffs.clone(),
        }
    }

    /// Removes leading zero coefficients so that `coeff(val) ≠ 0` when possible.
    pub fn normalized(&self) -> Self {
        let lead = self.coeffs.iter().position(|z| *z != C64::new(0.0, 0.0));
        match lead {
            Some(j) => Self {
                val: self.val + j as i32,
                coeffs: self.coeffs[j..].to_vec(),
            },
            None => Self::zero(self.prec()),
        }
    }

    /// Multiplicative inverse. The leading coefficient must be non-zero.
    pub fn recip(&self) -> Self {
        let s = self.normalized();
        let n = s.coeffs.len();
        assert!(n > 0, "reciprocal of a series with no known non-zero term");
        let c0 = s.coeffs[0];
        let inv0 = c0.inv();
        let mut out = vec![C64::new(0.0, 0.0); n];
        out[0] = inv0;
        for j in 1..n {
            let mut acc = C64::new(0.0, 0.0);
            for i in 1..=j {
                acc += s.coeffs[i] * out[j - i];
            }
            out[j] = -acc * inv0;
        }
        Self {
            val: -s.val,
            coeffs: out,
        }
    }

    /// Formal derivative `d/dx`.
    pub fn deriv(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(j, &c)| c * f64::from(self.val + j as i32))
            .collect();
        Self {
            val: self.val - 1,
            coeffs,
        }
    }

    /// Natural logarithm of a series of the form `c₀ + O(x)` with `c₀ ≠ 0`, using the
    /// principal logarithm for `c₀`.
    ///
    /// # Panics
    /// Panics when the valuation is not zero.
    pub fn ln(&self) -> Self {
        let s = self.truncate(self.prec());
        assert!(s.val <= 0, "logarithm needs a series starting at x^0");
        let prec = s.prec();
        let n = prec.max(0) as usize;
        let a: Vec<C64> = (0..n as i32).map(|p| s.coeff(p)).collect();
        for p in s.val..0 {
            assert!(s.coeff(p) == C64::new(0.0, 0.0), "logarithm of a series with negative powers");
        }
        assert!(n > 0 && a[0] != C64::new(0.0, 0.0), "logarithm of a series vanishing at x = 0");
        let mut l = vec![C64::new(0.0, 0.0); n];
        l[0] = a[0].ln();
        for j in 1..n {
            let mut acc = a[j] * j as f64;
            for i in 1..j {
                acc -= l[i] * (i as f64) * a[j - i];
            }
            l[j] = acc / (a[0] * j as f64);
        }
        Self { val: 0, coeffs: l }
    }

    /// Evaluates the stored terms at `x`.
    pub fn eval(&self, x: C64) -> C64 {
        let mut acc = C64::new(0.0, 0.0);
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc * x.powi(self.val)
    }

    /// Stored coefficients, starting at `x^{val}`.
    pub fn coeffs(&self) -> &[C64] {
        &self.coeffs
    }
}

impl Add for &Laurent {
    type Output = Laurent;
    fn add(self, rhs: &Laurent) -> Laurent {
        let prec = self.prec().min(rhs.prec());
        let val = self.val.min(rhs.val).min(prec);
        let coeffs = (val..prec)
            .map(|p| {
                let mut z = C64::new(0.0, 0.0);
                if p >= self.val {
                    z += self.coeffs[(p - self.val) as usize];
                }
                if p >= rhs.val {
                    z += rhs.coeffs[(p - rhs.val) as usize];
                }
                z
            })
            .collect();
        Laurent { val, coeffs }
    }
}

impl Sub for &Laurent {
    type Output = Laurent;
    fn sub(self, rhs: &Laurent) -> Laurent {
        self + &(-rhs)
    }
}

impl Neg for &Laurent {
    type Output = Laurent;
    fn neg(self) -> Laurent {
        self.scale(C64::new(-1.0, 0.0))
    }
}

impl Mul for &Laurent {
    type Output = Laurent;
    fn mul(self, rhs: &Laurent) -> Laurent {
        let val = self.val + rhs.val;
        let prec = (self.val + rhs.prec()).min(rhs.val + self.prec());
        let n = (prec - val).max(0) as usize;
        let mut coeffs = vec![C64::new(0.0, 0.0); n];
        for (i, &x) in self.coeffs.iter().enumerate().take(n) {
            for (j, &y) in rhs.coeffs.iter().enumerate().take(n - i) {
                coeffs[i + j] += x * y;
            }
        }
        Laurent { val, coeffs }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Laurent {
            type Output = Laurent;
            fn $m(self, rhs: Laurent) -> Laurent {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Laurent> for Laurent {
            type Output = Laurent;
            fn $m(self, rhs: &Laurent) -> Laurent {
                (&self).$m(rhs)
            }
        }
        impl $tr<Laurent> for &Laurent {
            type Output = Laurent;
            fn $m(self, rhs: Laurent) -> Laurent {
                self.$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

/// Cauchy product of two coefficient slices, truncated to `n` terms.
pub fn convolve(a: &[C64], b: &[C64], n: usize) -> Vec<C64> {
    let mut out = vec![C64::new(0.0, 0.0); n];
    for (i, &x) in a.iter().enumerate().take(n) {
        for (j, &y) in b.iter().enumerate().take(n - i) {
            out[i + j] += x * y;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> C64 {
        C64::new(re, 0.0)
    }

    #[test]
    fn reciprocal_of_geometric_series() {
        let s = Laurent::new(0, vec![c(1.0), c(-1.0), c(0.0), c(0.0)]);
        let r = s.recip();
        for p in 0..4 {
            assert!((r.coeff(p) - c(1.0)).norm() < 1e-15);
        }
    }

    #[test]
    fn product_tracks_precision() {
        let a = Laurent::new(-1, vec![c(1.0), c(2.0), c(3.0)]);
        let b = Laurent::new(2, vec![c(1.0), c(1.0)]);
        let p = &a * &b;
        assert_eq!(p.val(), 1);
        assert_eq!(p.prec(), 3);
        assert_eq!(p.coeff(1), c(1.0));
        assert_eq!(p.coeff(2), c(3.0));
    }

    #[test]
    fn log_of_exponential_series() {
        let n = 12;
        let mut e = Vec::with_capacity(n);
        let mut f = 1.0;
        for j in 0..n {
            if j > 0 {
                f /= j as f64;
            }
            e.push(c(f));
        }
        let l = Laurent::new(0, e).ln();
        assert!(l.coeff(0).norm() < 1e-15);
        assert!((l.coeff(1) - c(1.0)).norm() < 1e-14);
        for p in 2..n as i32 {
            assert!(l.coeff(p).norm() < 1e-13);
        }
    }

    #[test]
    fn derivative_of_laurent_monomial() {
        let s = Laurent::monomial(c(2.0), -2, 3);
        let d = s.deriv();
        assert_eq!(d.val(), -3);
        assert_eq!(d.coeff(-3), c(-4.0));
    }
}
