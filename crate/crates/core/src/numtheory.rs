//! Integer and exact rational arithmetic underlying every closed form in the
//! crate: gcd/lcm, modular inverses for the boundary rotation congruences,
//! and a reduced [`Rational`] used for rotation angles (as multiples of a
//! full turn) and Riemann–Hurwitz bookkeeping.

use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

/// Greatest common divisor of two positive integers.
pub const fn gcd(a: u64, b: u64) -> u64 {
    let (mut a, mut b) = (a, b);
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

/// Least common multiple of two positive integers.
pub const fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

/// Extended Euclid: returns `(g, x, y)` with `x*a + y*b = g = gcd(a, b)`.
///
/// The coefficients are the canonical output of the iterative algorithm;
/// callers relying on a specific Bézout pair get a deterministic one.
pub fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    let (mut r0, mut r1) = (a, b);
    let (mut x0, mut x1) = (1i64, 0i64);
    let (mut y0, mut y1) = (0i64, 1i64);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (x0, x1) = (x1, x0 - q * x1);
        (y0, y1) = (y1, y0 - q * y1);
    }
    if r0 < 0 {
        (-r0, -x0, -y0)
    } else {
        (r0, x0, y0)
    }
}

/// `a` is not invertible modulo the given modulus.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NotInvertible {
    pub a: i64,
    pub modulus: u64,
}

impl fmt::Display for NotInvertible {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} is not invertible modulo {}", self.a, self.modulus)
    }
}

#[cfg(feature = "std")]
impl std::error::Error for NotInvertible {}

/// Solves `a·s ≡ 1 (mod m)` and returns the unique `s` in `[0, m)`.
///
/// `a` may be negative; it is reduced into `[0, m)` first. For `m = 1`
/// the answer is `0`.
pub fn solve_congruence(a: i64, m: u64) -> Result<u64, NotInvertible> {
    if m == 1 {
        return Ok(0);
    }
    let mi = m as i64;
    let ar = a.rem_euclid(mi);
    let (g, x, _) = ext_gcd(ar, mi);
    if g != 1 {
        return Err(NotInvertible { a, modulus: m });
    }
    Ok(x.rem_euclid(mi) as u64)
}

/// Trial-division primality test; inputs here stay far below 64 bits.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Prime factorization as `(prime, exponent)` pairs, ascending.
pub fn factorize(mut n: u64) -> alloc::vec::Vec<(u64, u32)> {
    let mut out = alloc::vec::Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            let mut e = 0;
            while n.is_multiple_of(d) {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// An exact rational, always stored reduced with a positive denominator.
///
/// Rotation angles are carried as `Rational` multiples of a full turn, never
/// as floating angles, so orbit and rotation identities can be checked by
/// equality. Intermediate products are taken in `i128`; inputs at the scale
/// of this crate never approach the `i64` limits after reduction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Rational {
    num: i64,
    den: i64,
}

impl Rational {
    pub const ZERO: Rational = Rational { num: 0, den: 1 };
    pub const ONE: Rational = Rational { num: 1, den: 1 };

    /// Builds `num/den` reduced. Panics if `den == 0`.
    pub fn new(num: i64, den: i64) -> Rational {
        assert!(den != 0, "rational with zero denominator");
        Self::reduce128(num as i128, den as i128)
    }

    fn reduce128(num: i128, den: i128) -> Rational {
        debug_assert!(den != 0);
        let sign = if den < 0 { -1 } else { 1 };
        let gg = gcd128(num.unsigned_abs(), den.unsigned_abs());
        let n = sign as i128 * num / gg as i128;
        let d = sign as i128 * den / gg as i128;
        Rational {
            num: i64::try_from(n).expect("rational numerator overflow"),
            den: i64::try_from(d).expect("rational denominator overflow"),
        }
    }

    pub fn numer(&self) -> i64 {
        self.num
    }

    pub fn denom(&self) -> i64 {
        self.den
    }

    pub fn is_integer(&self) -> bool {
        self.den == 1
    }

    pub fn is_zero(&self) -> bool {
        self.num == 0
    }

    /// Largest integer not greater than the value.
    pub fn floor(&self) -> i64 {
        self.num.div_euclid(self.den)
    }

    /// The representative of the value mod 1 lying in `[0, 1)`.
    pub fn fract_mod1(&self) -> Rational {
        *self - Rational::from(self.floor())
    }

    pub fn as_f64(&self) -> f64 {
        self.num as f64 / self.den as f64
    }

    pub fn abs(&self) -> Rational {
        Rational {
            num: self.num.abs(),
            den: self.den,
        }
    }

    /// Multiplicative inverse; panics on zero.
    pub fn recip(&self) -> Rational {
        assert!(self.num != 0, "reciprocal of zero");
        Self::reduce128(self.den as i128, self.num as i128)
    }
}

fn gcd128(a: u128, b: u128) -> u128 {
    let (mut a, mut b) = (a, b);
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a.max(1)
}

impl From<i64> for Rational {
    fn from(n: i64) -> Rational {
        Rational { num: n, den: 1 }
    }
}

impl From<i32> for Rational {
    fn from(n: i32) -> Rational {
        Rational {
            num: n as i64,
            den: 1,
        }
    }
}

impl From<u32> for Rational {
    fn from(n: u32) -> Rational {
        Rational {
            num: n as i64,
            den: 1,
        }
    }
}

impl Add for Rational {
    type Output = Rational;
    fn add(self, rhs: Rational) -> Rational {
        Self::reduce128(
            self.num as i128 * rhs.den as i128 + rhs.num as i128 * self.den as i128,
            self.den as i128 * rhs.den as i128,
        )
    }
}

impl Sub for Rational {
    type Output = Rational;
    fn sub(self, rhs: Rational) -> Rational {
        self + (-rhs)
    }
}

impl Mul for Rational {
    type Output = Rational;
    fn mul(self, rhs: Rational) -> Rational {
        Self::reduce128(
            self.num as i128 * rhs.num as i128,
            self.den as i128 * rhs.den as i128,
        )
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational {
            num: -self.num,
            den: self.den,
        }
    }
}

impl PartialOrd for Rational {
    fn partial_cmp(&self, other: &Rational) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Rational {
    fn cmp(&self, other: &Rational) -> Ordering {
        (self.num as i128 * other.den as i128).cmp(&(other.num as i128 * self.den as i128))
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

#[cfg(feature = "serde")]
impl serde::Serialize for Rational {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        ser.collect_str(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gcd_basics() {
        assert_eq!(gcd(3, 4), 1);
        assert_eq!(gcd(6, 6), 6);
        for h in 1..=10 {
            assert_eq!(gcd(2, 2 * h + 1), 1);
        }
    }

    #[test]
    fn lcm_basics() {
        assert_eq!(lcm(2, 3), 6);
        assert_eq!(lcm(4, 4), 4);
        assert_eq!(lcm(4, 6), 12);
    }

    #[test]
    fn congruence_examples() {
        // (p,q) = (3,4) plus-variant data: a = (1+p)/d = 1, m = pq/d = 3.
        assert_eq!(solve_congruence(1, 3), Ok(1));
        assert_eq!(solve_congruence(1, 1), Ok(0));
        assert_eq!(solve_congruence(2, 3), Ok(2));
        // negative input, as produced by the minus variant
        assert_eq!(solve_congruence(-1, 4), Ok(3));
        assert!(solve_congruence(2, 4).is_err());
    }

    #[test]
    fn congruence_brute_force() {
        for m in 1..=500u64 {
            for a in [-3i64, -1, 1, 2, 7, 123] {
                let g = gcd(a.rem_euclid(m as i64) as u64, m);
                match solve_congruence(a, m) {
                    Ok(s) => {
                        assert!(s < m || m == 1);
                        assert_eq!((a.rem_euclid(m as i64) as u64 * s) % m, 1 % m);
                    }
                    Err(_) => assert_ne!(g, 1),
                }
            }
        }
    }

    #[test]
    fn ext_gcd_identity() {
        for a in 1..60i64 {
            for b in 1..60i64 {
                let (g, x, y) = ext_gcd(a, b);
                assert_eq!(x * a + y * b, g);
                assert_eq!(g as u64, gcd(a as u64, b as u64));
            }
        }
    }

    #[test]
    fn primality() {
        let primes: alloc::vec::Vec<u64> = (0..30).filter(|&n| is_prime(n)).collect();
        assert_eq!(primes, alloc::vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
        assert_eq!(factorize(360), alloc::vec![(2, 3), (3, 2), (5, 1)]);
    }

    #[test]
    fn rational_reduction_and_display() {
        let r = Rational::new(-4, -6);
        assert_eq!((r.numer(), r.denom()), (2, 3));
        let r = Rational::new(4, -6);
        assert_eq!((r.numer(), r.denom()), (-2, 3));
        assert_eq!(alloc::format!("{}", Rational::new(6, 4)), "3/2");
        assert_eq!(alloc::format!("{}", Rational::new(-8, 4)), "-2");
    }

    #[test]
    fn rational_mod1() {
        assert_eq!(Rational::new(-1, 6).fract_mod1(), Rational::new(5, 6));
        assert_eq!(Rational::new(13, 6).fract_mod1(), Rational::new(1, 6));
        assert_eq!(Rational::from(3).fract_mod1(), Rational::ZERO);
    }
}
