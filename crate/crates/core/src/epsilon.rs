//! Exact positive rationals for the approximation parameter.
//!
//! Strides and per-edge sample counts are integer formulas in epsilon, so
//! epsilon is kept as an exact fraction; `"1/4"`, `"0.25"` and `"2"` all
//! parse without rounding and produce identical candidate sets on every
//! platform.

use std::fmt;

use num_rational::Ratio;

use crate::error::Error;

/// A positive rational approximation parameter.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Epsilon(Ratio<u64>);

impl Epsilon {
    pub fn new(numerator: u64, denominator: u64) -> Result<Self, Error> {
        if numerator == 0 || denominator == 0 {
            return Err(Error::NonPositiveEpsilon);
        }
        Ok(Epsilon(Ratio::new(numerator, denominator)))
    }

    /// Parses `"p/q"`, a decimal like `"0.25"`, or an integer, exactly.
    pub fn parse(text: &str) -> Result<Self, Error> {
        let text = text.trim();
        let malformed = || Error::MalformedRational(text.to_owned());
        if let Some((num, den)) = text.split_once('/') {
            let p: u64 = num.trim().parse().map_err(|_| malformed())?;
            let q: u64 = den.trim().parse().map_err(|_| malformed())?;
            return Epsilon::new(p, q);
        }
        let (integral, fractional) = match text.split_once('.') {
            Some((i, f)) => (i, f),
            None => (text, ""),
        };
        if integral.is_empty() && fractional.is_empty() {
            return Err(malformed());
        }
        let digits_only =
            |s: &str| -> bool { !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit()) };
        if !(integral.is_empty() || digits_only(integral))
            || !(fractional.is_empty() || digits_only(fractional))
        {
            return Err(malformed());
        }
        let whole: u128 = if integral.is_empty() {
            0
        } else {
            integral.parse().map_err(|_| malformed())?
        };
        let mut numerator = whole;
        let mut denominator: u128 = 1;
        for b in fractional.bytes() {
            numerator = numerator
                .checked_mul(10)
                .and_then(|n| n.checked_add((b - b'0') as u128))
                .ok_or_else(malformed)?;
            denominator = denominator.checked_mul(10).ok_or_else(malformed)?;
        }
        let ratio = Ratio::new(numerator, denominator);
        let p = u64::try_from(*ratio.numer()).map_err(|_| malformed())?;
        let q = u64::try_from(*ratio.denom()).map_err(|_| malformed())?;
        Epsilon::new(p, q)
    }

    pub fn numerator(&self) -> u64 {
        *self.0.numer()
    }

    pub fn denominator(&self) -> u64 {
        *self.0.denom()
    }

    /// Sampling stride on an edge: `max(1, floor(epsilon * transit))`.
    pub fn stride(&self, transit: u64) -> u64 {
        let scaled = (self.numerator() as u128 * transit as u128) / self.denominator() as u128;
        (scaled as u64).max(1)
    }

    /// `ceil(1 / epsilon)`, the per-edge sample allowance.
    pub fn inverse_ceil(&self) -> u64 {
        self.denominator().div_ceil(self.numerator())
    }

    /// Whether `time <= (1 + epsilon) * reference`, evaluated in exact
    /// integer arithmetic.
    pub fn within_factor(&self, time: u64, reference: u64) -> bool {
        let lhs = time as u128 * self.denominator() as u128;
        let rhs = reference as u128 * (self.denominator() as u128 + self.numerator() as u128);
        lhs <= rhs
    }
}

impl fmt::Display for Epsilon {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denominator() == 1 {
            write!(f, "{}", self.numerator())
        } else {
            write!(f, "{}/{}", self.numerator(), self.denominator())
        }
    }
}
