//! Exact rational arithmetic on `i128`.
//!
//! Values stay fully reduced with a positive denominator, so derived equality
//! and hashing are structural. All operations are checked: division by zero
//! and overflow surface as [`EvalError`] instead of panicking, which matters
//! because formulas come from untrusted model output.

use std::fmt;

use super::EvalError;

/// An exact rational number. Invariants: `den > 0` and `gcd(|num|, den) == 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Rational {
    num: i128,
    den: i128,
}

fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

impl Rational {
    pub fn from_integer(n: i64) -> Self {
        Rational { num: i128::from(n), den: 1 }
    }

    /// Build `num/den`, reducing and normalizing the sign.
    pub fn new(num: i128, den: i128) -> Result<Self, EvalError> {
        if den == 0 {
            return Err(EvalError::DivisionByZero);
        }
        let sign = if (num < 0) != (den < 0) && num != 0 { -1 } else { 1 };
        let (un, ud) = (num.unsigned_abs(), den.unsigned_abs());
        let g = gcd(un, ud);
        let (un, ud) = (un / g, ud / g);
        if un > i128::MAX as u128 || ud > i128::MAX as u128 {
            return Err(EvalError::Overflow);
        }
        Ok(Rational { num: sign * un as i128, den: ud as i128 })
    }

    pub fn numerator(&self) -> i128 {
        self.num
    }

    pub fn denominator(&self) -> i128 {
        self.den
    }

    pub fn is_integer(&self) -> bool {
        self.den == 1
    }

    pub fn equals_integer(&self, n: i64) -> bool {
        self.den == 1 && self.num == i128::from(n)
    }

    pub fn checked_add(self, rhs: Self) -> Result<Self, EvalError> {
        let a = self.num.checked_mul(rhs.den).ok_or(EvalError::Overflow)?;
        let b = rhs.num.checked_mul(self.den).ok_or(EvalError::Overflow)?;
        let num = a.checked_add(b).ok_or(EvalError::Overflow)?;
        let den = self.den.checked_mul(rhs.den).ok_or(EvalError::Overflow)?;
        Rational::new(num, den)
    }

    pub fn checked_sub(self, rhs: Self) -> Result<Self, EvalError> {
        let a = self.num.checked_mul(rhs.den).ok_or(EvalError::Overflow)?;
        let b = rhs.num.checked_mul(self.den).ok_or(EvalError::Overflow)?;
        let num = a.checked_sub(b).ok_or(EvalError::Overflow)?;
        let den = self.den.checked_mul(rhs.den).ok_or(EvalError::Overflow)?;
        Rational::new(num, den)
    }

    pub fn checked_mul(self, rhs: Self) -> Result<Self, EvalError> {
        let num = self.num.checked_mul(rhs.num).ok_or(EvalError::Overflow)?;
        let den = self.den.checked_mul(rhs.den).ok_or(EvalError::Overflow)?;
        Rational::new(num, den)
    }

    pub fn checked_div(self, rhs: Self) -> Result<Self, EvalError> {
        if rhs.num == 0 {
            return Err(EvalError::DivisionByZero);
        }
        let num = self.num.checked_mul(rhs.den).ok_or(EvalError::Overflow)?;
        let den = self.den.checked_mul(rhs.num).ok_or(EvalError::Overflow)?;
        Rational::new(num, den)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}
