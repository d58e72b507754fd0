//! A small exact rational type and axis-aligned rational boxes.
//!
//! Thresholds (the `β` of interval counts) and box bounds are kept as exact
//! rationals so that comparisons against scaled integer pairs `(q1/Q, q2/Q)`
//! are decided by cross-multiplication, never by floating point.

use crate::Error;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Div, Mul, Neg, Sub};
use core::str::FromStr;

/// A signed rational `num/den` with `den > 0`, always reduced.
///
/// Arithmetic goes through `i128` intermediates and panics if a reduced
/// result no longer fits in `i64`; the coordinates handled here (box
/// bounds, kink-line coefficients, their intersections) stay tiny.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Ratio {
    num: i64,
    den: i64,
}

impl Ratio {
    pub const ZERO: Ratio = Ratio { num: 0, den: 1 };
    pub const ONE: Ratio = Ratio { num: 1, den: 1 };

    pub fn new(num: i64, den: i64) -> Result<Self, Error> {
        if den == 0 {
            return Err(Error::ZeroModulus);
        }
        Ok(Self::reduce(num as i128, den as i128))
    }

    fn reduce(num: i128, den: i128) -> Self {
        debug_assert!(den != 0);
        let sign = if den < 0 { -1 } else { 1 };
        let g = gcd_i128(num.unsigned_abs(), den.unsigned_abs()) as i128;
        let num = sign * num / g;
        let den = sign.checked_mul(den).unwrap() / g;
        Ratio {
            num: i64::try_from(num).expect("rational numerator overflow"),
            den: i64::try_from(den).expect("rational denominator overflow"),
        }
    }

    pub fn from_int(n: i64) -> Self {
        Ratio { num: n, den: 1 }
    }

    pub fn num(self) -> i64 {
        self.num
    }

    pub fn den(self) -> i64 {
        self.den
    }

    pub fn to_f64(self) -> f64 {
        self.num as f64 / self.den as f64
    }

    pub fn is_negative(self) -> bool {
        self.num < 0
    }

    /// Compares `self` with the fraction `p/q` (`q > 0`) exactly.
    pub fn cmp_frac(self, p: u64, q: u64) -> Ordering {
        debug_assert!(q > 0);
        (self.num as i128 * q as i128).cmp(&(p as i128 * self.den as i128))
    }

    /// Midpoint of two rationals.
    pub fn midpoint(self, other: Ratio) -> Ratio {
        (self + other) / Ratio::from_int(2)
    }
}

fn gcd_i128(mut a: u128, mut b: u128) -> u128 {
    if a == 0 {
        return b.max(1);
    }
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

impl Add for Ratio {
    type Output = Ratio;
    fn add(self, rhs: Ratio) -> Ratio {
        Ratio::reduce(
            self.num as i128 * rhs.den as i128 + rhs.num as i128 * self.den as i128,
            self.den as i128 * rhs.den as i128,
        )
    }
}

impl Sub for Ratio {
    type Output = Ratio;
    fn sub(self, rhs: Ratio) -> Ratio {
        self + (-rhs)
    }
}

impl Mul for Ratio {
    type Output = Ratio;
    fn mul(self, rhs: Ratio) -> Ratio {
        Ratio::reduce(
            self.num as i128 * rhs.num as i128,
            self.den as i128 * rhs.den as i128,
        )
    }
}

impl Div for Ratio {
    type Output = Ratio;
    fn div(self, rhs: Ratio) -> Ratio {
        assert!(rhs.num != 0, "division of rational by zero");
        Ratio::reduce(
            self.num as i128 * rhs.den as i128,
            self.den as i128 * rhs.num as i128,
        )
    }
}

impl Neg for Ratio {
    type Output = Ratio;
    fn neg(self) -> Ratio {
        Ratio {
            num: -self.num,
            den: self.den,
        }
    }
}

impl PartialOrd for Ratio {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Ratio {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.num as i128 * other.den as i128).cmp(&(other.num as i128 * self.den as i128))
    }
}

impl fmt::Display for Ratio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

/// Parses `"3/4"`, `"0.25"`, or `"2"` (optionally signed) into a rational.
impl FromStr for Ratio {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let s = s.trim();
        if let Some((p, q)) = s.split_once('/') {
            let num: i64 = p
                .trim()
                .parse()
                .map_err(|_| Error::BadInterval("bad numerator"))?;
            let den: i64 = q
                .trim()
                .parse()
                .map_err(|_| Error::BadInterval("bad denominator"))?;
            return Ratio::new(num, den);
        }
        if let Some((int_part, frac_part)) = s.split_once('.') {
            let negative = int_part.starts_with('-');
            let int: i64 = if int_part.is_empty() || int_part == "-" {
                0
            } else {
                int_part
                    .parse()
                    .map_err(|_| Error::BadInterval("bad integer part"))?
            };
            if frac_part.is_empty() || !frac_part.bytes().all(|b| b.is_ascii_digit()) {
                return Err(Error::BadInterval("bad decimal fraction"));
            }
            if frac_part.len() > 15 {
                return Err(Error::BadInterval("too many decimal digits"));
            }
            let digits: i64 = frac_part
                .parse()
                .map_err(|_| Error::BadInterval("bad decimal fraction"))?;
            let scale = 10i64.pow(frac_part.len() as u32);
            let frac = Ratio::new(if negative { -digits } else { digits }, scale)?;
            return Ok(Ratio::from_int(int) + frac);
        }
        let n: i64 = s
            .parse()
            .map_err(|_| Error::BadInterval("bad rational literal"))?;
        Ok(Ratio::from_int(n))
    }
}

/// A closed axis-aligned box `[x0, x1] × [y0, y1]` with rational corners
/// inside the unit square (degenerate edges allowed).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Box2 {
    pub x0: Ratio,
    pub x1: Ratio,
    pub y0: Ratio,
    pub y1: Ratio,
}

impl Box2 {
    pub fn new(x0: Ratio, x1: Ratio, y0: Ratio, y1: Ratio) -> Result<Self, Error> {
        let zero = Ratio::ZERO;
        let one = Ratio::ONE;
        if x0 < zero || x1 > one || y0 < zero || y1 > one {
            return Err(Error::BadInterval("box must lie inside the unit square"));
        }
        if x0 > x1 || y0 > y1 {
            return Err(Error::BadInterval("box bounds must be ordered"));
        }
        Ok(Box2 { x0, x1, y0, y1 })
    }

    /// Convenience constructor from `(num, den)` integer pairs.
    pub fn from_ints(
        x0: (i64, i64),
        x1: (i64, i64),
        y0: (i64, i64),
        y1: (i64, i64),
    ) -> Result<Self, Error> {
        Box2::new(
            Ratio::new(x0.0, x0.1)?,
            Ratio::new(x1.0, x1.1)?,
            Ratio::new(y0.0, y0.1)?,
            Ratio::new(y1.0, y1.1)?,
        )
    }

    /// Exact test for `(q1/order, q2/order)` lying in the closed box.
    pub fn contains_scaled(&self, q1: u64, q2: u64, order: u64) -> bool {
        debug_assert!(order > 0);
        self.x0.cmp_frac(q1, order) != Ordering::Greater
            && self.x1.cmp_frac(q1, order) != Ordering::Less
            && self.y0.cmp_frac(q2, order) != Ordering::Greater
            && self.y1.cmp_frac(q2, order) != Ordering::Less
    }

    pub fn width(&self) -> Ratio {
        self.x1 - self.x0
    }

    pub fn height(&self) -> Ratio {
        self.y1 - self.y0
    }

    pub fn area(&self) -> f64 {
        self.width().to_f64() * self.height().to_f64()
    }

    pub fn is_degenerate(&self) -> bool {
        self.x0 == self.x1 || self.y0 == self.y1
    }

    pub fn corners(&self) -> [(Ratio, Ratio); 4] {
        [
            (self.x0, self.y0),
            (self.x1, self.y0),
            (self.x0, self.y1),
            (self.x1, self.y1),
        ]
    }

    /// Midpoints of the four edges, in the order bottom, top, left, right.
    pub fn edge_midpoints(&self) -> [(Ratio, Ratio); 4] {
        let xm = self.x0.midpoint(self.x1);
        let ym = self.y0.midpoint(self.y1);
        [(xm, self.y0), (xm, self.y1), (self.x0, ym), (self.x1, ym)]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduction_and_arithmetic() {
        assert_eq!(Ratio::new(2, 4).unwrap(), Ratio::new(1, 2).unwrap());
        assert_eq!(Ratio::new(3, -6).unwrap(), Ratio::new(-1, 2).unwrap());
        let a = Ratio::new(1, 2).unwrap();
        let b = Ratio::new(1, 3).unwrap();
        assert_eq!(a + b, Ratio::new(5, 6).unwrap());
        assert_eq!(a - b, Ratio::new(1, 6).unwrap());
        assert_eq!(a * b, Ratio::new(1, 6).unwrap());
        assert_eq!(a / b, Ratio::new(3, 2).unwrap());
        assert!(b < a);
    }

    #[test]
    fn parsing() {
        assert_eq!("0.25".parse::<Ratio>().unwrap(), Ratio::new(1, 4).unwrap());
        assert_eq!("3/4".parse::<Ratio>().unwrap(), Ratio::new(3, 4).unwrap());
        assert_eq!("1".parse::<Ratio>().unwrap(), Ratio::ONE);
        assert_eq!("-0.5".parse::<Ratio>().unwrap(), Ratio::new(-1, 2).unwrap());
        assert_eq!(".5".parse::<Ratio>().unwrap(), Ratio::new(1, 2).unwrap());
        assert!("x".parse::<Ratio>().is_err());
        assert!("1/0".parse::<Ratio>().is_err());
    }

    #[test]
    fn box_membership_is_exact() {
        let b = Box2::from_ints((1, 2), (3, 4), (1, 3), (2, 3)).unwrap();
        assert!(b.contains_scaled(50, 40, 100)); // (1/2, 2/5)
        assert!(!b.contains_scaled(75, 33, 99)); // x = 75/99 > 3/4 by a hair
        assert!(!b.contains_scaled(33, 33, 99)); // (1/3, 1/3): left of the box
    }

    #[test]
    fn box_boundaries_are_closed() {
        let b = Box2::from_ints((1, 2), (3, 4), (1, 3), (2, 3)).unwrap();
        assert!(b.contains_scaled(2, 2, 4)); // (1/2, 1/2) on the left edge
        assert!(b.contains_scaled(3, 2, 4)); // (3/4, 1/2) on the right edge
        assert!(!b.contains_scaled(1, 2, 4)); // (1/4, 1/2) left of the box
    }
}
