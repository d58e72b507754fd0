//! Reduced fractions in `(0, 1]`, modular inverses, heights, and mediants.
//!
//! The height of a reduced fraction is `h(a/q) = q + a + ā` with `ā` the
//! inverse of `a` modulo `q` in `[1, q)`; the single convention beyond that
//! is `ā = 1` when `q = 1`, which makes `h(1/1) = 3` and anchors the base
//! level `{1/1}` at order 3. For a unimodular pair `a1/q1 < a2/q2`
//! (`a2 q1 − a1 q2 = 1`) every quantity of interest — both numerators, both
//! inverses, both heights, and the mediant height — can be recovered from
//! the denominators `(q1, q2)` alone; [`UnimodularPair::formulas`] computes
//! them that way and cross-checks each value against the direct definition.

use crate::Error;
use core::cmp::Ordering;

/// Greatest common divisor by the Euclidean algorithm. `gcd(0, n) = n`.
pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Multiplicative inverse of `a` modulo `q`, normalized to `[1, q)`.
///
/// Requires `1 ≤ a ≤ q` and `gcd(a, q) = 1`. For `q = 1` the normalization
/// interval is empty and the result is `1` by convention.
pub fn inv_mod(a: u64, q: u64) -> Result<u64, Error> {
    if q == 0 {
        return Err(Error::ZeroModulus);
    }
    if a == 0 || a > q {
        return Err(Error::OutOfRange("inverse argument must lie in [1, q]"));
    }
    if q == 1 {
        return Ok(1);
    }
    // Iterative extended Euclid; the Bézout coefficient for `a` stays
    // bounded by q, so i64 is wide enough for any q < 2^62.
    let (mut r0, mut r1) = (a as i64, q as i64);
    let (mut s0, mut s1) = (1i64, 0i64);
    while r1 != 0 {
        let k = r0 / r1;
        (r0, r1) = (r1, r0 - k * r1);
        (s0, s1) = (s1, s0 - k * s1);
    }
    if r0 != 1 {
        return Err(Error::NotCoprime { a, modulus: q });
    }
    let inv = s0.rem_euclid(q as i64) as u64;
    debug_assert!(inv >= 1 && inv < q);
    debug_assert_eq!((a as u128 * inv as u128) % q as u128, 1);
    Ok(inv)
}

/// Inverse of an arbitrary residue `n ≥ 1` modulo `modulus`, reducing first.
///
/// Used for the denominator inverses `q̄2` (mod `q1`) and `q̄̄1` (mod `q2`)
/// of a unimodular pair, where the argument usually exceeds the modulus.
pub(crate) fn inv_mod_reduced(n: u64, modulus: u64) -> Result<u64, Error> {
    if modulus == 0 {
        return Err(Error::ZeroModulus);
    }
    if modulus == 1 {
        return Ok(1);
    }
    let r = n % modulus;
    if r == 0 {
        return Err(Error::NotCoprime { a: n, modulus });
    }
    inv_mod(r, modulus)
}

/// A reduced fraction `num/den` with `1 ≤ num ≤ den`, i.e. a rational in `(0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Fraction {
    num: u64,
    den: u64,
}

impl Fraction {
    /// Builds a fraction, rejecting zero, improper, or non-reduced input.
    pub fn new(num: u64, den: u64) -> Result<Self, Error> {
        if den == 0 {
            return Err(Error::ZeroModulus);
        }
        if num == 0 || num > den {
            return Err(Error::OutOfRange("fraction must lie in (0, 1]"));
        }
        if gcd(num, den) != 1 {
            return Err(Error::NotReduced { num, den });
        }
        Ok(Fraction { num, den })
    }

    /// The fraction `1/1`, the largest element of every level.
    pub const fn one() -> Self {
        Fraction { num: 1, den: 1 }
    }

    /// Constructor for already-validated values (mediants of unimodular
    /// pairs are automatically reduced and proper).
    pub(crate) fn from_raw(num: u64, den: u64) -> Self {
        debug_assert!(num >= 1 && num <= den && gcd(num, den) == 1);
        Fraction { num, den }
    }

    pub fn num(self) -> u64 {
        self.num
    }

    pub fn den(self) -> u64 {
        self.den
    }

    /// The inverse `ā` of the numerator modulo the denominator, in `[1, q)`
    /// (`1` for the fraction `1/1`).
    pub fn inv(self) -> u64 {
        inv_mod(self.num, self.den).expect("reduced fraction has an invertible numerator")
    }

    /// The height `q + a + ā`.
    pub fn height(self) -> u64 {
        self.den + self.num + self.inv()
    }

    /// Bundles the fraction with its inverse and height.
    pub fn heighted(self) -> HeightedFraction {
        let inv = self.inv();
        HeightedFraction {
            frac: self,
            inv,
            height: self.den + self.num + inv,
        }
    }

    /// The reflected fraction `1 − a/q`; `None` for `1/1`.
    pub fn complement(self) -> Option<Fraction> {
        if self.num == self.den {
            None
        } else {
            Some(Fraction {
                num: self.den - self.num,
                den: self.den,
            })
        }
    }
}

impl PartialOrd for Fraction {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Fraction {
    fn cmp(&self, other: &Self) -> Ordering {
        let lhs = self.num as u128 * other.den as u128;
        let rhs = other.num as u128 * self.den as u128;
        lhs.cmp(&rhs)
    }
}

impl core::fmt::Display for Fraction {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

/// A fraction together with its numerator inverse and height.
///
/// Invariants: `(num · inv) mod den = 1` when `den > 1`, `inv = 1` when
/// `den = 1`, and `height = den + num + inv`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HeightedFraction {
    frac: Fraction,
    inv: u64,
    height: u64,
}

impl HeightedFraction {
    pub(crate) fn from_parts(num: u64, den: u64, inv: u64, height: u64) -> Self {
        debug_assert_eq!(height, den + num + inv);
        debug_assert!(den == 1 && inv == 1 || (num as u128 * inv as u128) % den as u128 == 1);
        HeightedFraction {
            frac: Fraction::from_raw(num, den),
            inv,
            height,
        }
    }

    pub fn fraction(self) -> Fraction {
        self.frac
    }

    pub fn num(self) -> u64 {
        self.frac.num
    }

    pub fn den(self) -> u64 {
        self.frac.den
    }

    pub fn inv(self) -> u64 {
        self.inv
    }

    pub fn height(self) -> u64 {
        self.height
    }
}

/// An ordered pair of fractions `left < right` with `a2 q1 − a1 q2 = 1`.
///
/// Such pairs are exactly the candidates for adjacency in a saturated
/// level; the levels at which the pair actually is adjacent form the
/// interval returned by [`UnimodularPair::consecutive_levels`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct UnimodularPair {
    left: Fraction,
    right: Fraction,
}

impl UnimodularPair {
    pub fn new(left: Fraction, right: Fraction) -> Result<Self, Error> {
        let det = right.num as i128 * left.den as i128 - left.num as i128 * right.den as i128;
        if det != 1 {
            return Err(Error::NotUnimodular);
        }
        Ok(UnimodularPair { left, right })
    }

    pub fn left(self) -> Fraction {
        self.left
    }

    pub fn right(self) -> Fraction {
        self.right
    }

    /// The mediant `(a1+a2)/(q1+q2)`; it forms a unimodular pair with each parent.
    pub fn mediant(self) -> Fraction {
        Fraction::from_raw(
            self.left.num + self.right.num,
            self.left.den + self.right.den,
        )
    }

    /// Recovers numerators, inverses, and heights from the denominators
    /// alone and cross-checks every formula against the direct definition.
    ///
    /// # Panics
    ///
    /// Panics if any closed formula disagrees with the value computed from
    /// the definitions; that would indicate a bug, not bad input.
    pub fn formulas(self) -> PairFormulas {
        let q1 = self.left.den;
        let q2 = self.right.den;

        // Denominator inverses: q̄2 = q2^{-1} mod q1, q̄̄1 = q1^{-1} mod q2.
        let qbar2 = inv_mod_reduced(q2, q1).expect("unimodular denominators are coprime");
        let qbb1 = inv_mod_reduced(q1, q2).expect("unimodular denominators are coprime");

        let a1 = q1 - qbar2;
        let a2 = if q2 == 1 { 1 } else { qbb1 };
        assert_eq!(a1, self.left.num, "numerator formula a1 = q1 - q̄2 failed");
        assert_eq!(a2, self.right.num, "numerator formula a2 = q̄̄1 failed");

        let direct_inv_a1 = self.left.inv();
        let direct_inv_a2 = self.right.inv();
        let h1 = q1 + a1 + direct_inv_a1;
        let h2 = q2 + a2 + direct_inv_a2;

        // ā1 = (1 + ⌊q2/q1⌋) q1 − q2 and the first height expression
        // h1 = (3 + ⌊q2/q1⌋) q1 − q2 − q̄2 hold for every valid pair.
        let inv_a1 = (1 + q2 / q1) * q1 - q2;
        assert_eq!(inv_a1, direct_inv_a1, "inverse formula for ā1 failed");
        assert_eq!(
            (3 + q2 / q1) * q1 - q2 - qbar2,
            h1,
            "height formula for h1 failed"
        );

        // a1 = (q1 q̄̄1 − 1)/q2 and a2 = q2 − (q2 q̄2 − 1)/q1, with both
        // divisions exact.
        let n1 = q1 * qbb1 - 1;
        assert_eq!(n1 % q2, 0, "q1*q̄̄1 - 1 must be divisible by q2");
        assert_eq!(n1 / q2, a1, "numerator formula a1 = (q1 q̄̄1 - 1)/q2 failed");
        let n2 = q2 * qbar2 - 1;
        assert_eq!(n2 % q1, 0, "q2*q̄2 - 1 must be divisible by q1");
        assert_eq!(q2 - n2 / q1, a2, "numerator formula for a2 failed");
        assert_eq!(
            (2 + q2 / q1) * q1 - q2 + n1 / q2,
            h1,
            "second height formula for h1 failed"
        );

        // The formulas for ā̄2 and h2 presume a proper right endpoint
        // (a2 < q2); the pair (a1/q1, 1/1) keeps the direct values.
        let inv_a2;
        if q2 == 1 {
            inv_a2 = 1;
        } else {
            inv_a2 = q1 - (q1 / q2) * q2;
            assert_eq!(inv_a2, direct_inv_a2, "inverse formula for ā̄2 failed");
            let f2a = (1 - (q1 / q2) as i128) * q2 as i128 + (q1 + qbb1) as i128;
            assert_eq!(f2a, h2 as i128, "height formula for h2 failed");
            let f2b = q1 as i128 + (2 - (q1 / q2) as i128) * q2 as i128 - (n2 / q1) as i128;
            assert_eq!(f2b, h2 as i128, "second height formula for h2 failed");
        }

        // Mediant height: h(a*/q*) = 3 q1 + q2 + q̄̄1 − q̄2, valid in all
        // cases including a right endpoint of 1/1.
        let h_star = self.mediant().height();
        let f3 = (3 * q1 + q2 + qbb1) as i128 - qbar2 as i128;
        assert_eq!(f3, h_star as i128, "mediant height formula failed");
        assert!(
            h_star > h1.max(h2),
            "mediant height must exceed both endpoint heights"
        );

        PairFormulas {
            a1,
            a2,
            inv_a1,
            inv_a2,
            h1,
            h2,
            h_star,
        }
    }

    /// The closed interval of orders `Q` for which this pair is adjacent in
    /// the saturated level: `max(h1, h2) ≤ Q ≤ h* − 1`.
    pub fn consecutive_levels(self) -> (u64, u64) {
        let f = self.formulas();
        (f.h1.max(f.h2), f.h_star - 1)
    }
}

/// Numerators, inverses, and heights of a unimodular pair, plus the height
/// of its mediant, all derived from the two denominators.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PairFormulas {
    pub a1: u64,
    pub a2: u64,
    /// Inverse of `a1` modulo `q1`.
    pub inv_a1: u64,
    /// Inverse of `a2` modulo `q2`.
    pub inv_a2: u64,
    pub h1: u64,
    pub h2: u64,
    /// Height of the mediant `(a1+a2)/(q1+q2)`.
    pub h_star: u64,
}
