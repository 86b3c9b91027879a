//! Exact arithmetic in ℚ(ω), ω a primitive cube root of unity.
//!
//! Values are stored in the basis {1, ω} with ω² eagerly reduced to −1−ω,
//! so structural equality is value equality.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Arbitrary-precision rational, always reduced with a positive denominator.
pub type Rational = num_rational::BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CycError {
    #[error("division by zero in Q(w)")]
    DivisionByZero,
    #[error("cannot parse cyclotomic number {0:?}")]
    Parse(String),
}

/// The value `re + om·ω`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct CycNum {
    re: Rational,
    om: Rational,
}

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

impl CycNum {
    pub fn new(re: Rational, om: Rational) -> Self {
        CycNum { re, om }
    }

    pub fn from_ints(re: i64, om: i64) -> Self {
        CycNum::new(rat(re), rat(om))
    }

    pub fn from_rational(r: Rational) -> Self {
        CycNum::new(r, Rational::zero())
    }

    pub fn int(n: i64) -> Self {
        CycNum::from_ints(n, 0)
    }

    /// ω itself, written `q` throughout the crate.
    pub fn q() -> Self {
        CycNum::from_ints(0, 1)
    }

    pub fn re(&self) -> &Rational {
        &self.re
    }

    pub fn om(&self) -> &Rational {
        &self.om
    }

    pub fn is_rational(&self) -> bool {
        self.om.is_zero()
    }

    /// Galois conjugate ω ↦ ω²: (a + bω) ↦ (a − b) − bω.
    pub fn conj(&self) -> Self {
        CycNum::new(&self.re - &self.om, -&self.om)
    }

    /// Field norm a² − ab + b², a nonnegative rational.
    pub fn norm(&self) -> Rational {
        &self.re * &self.re - &self.re * &self.om + &self.om * &self.om
    }

    pub fn inv(&self) -> Result<Self, CycError> {
        if self.is_zero() {
            return Err(CycError::DivisionByZero);
        }
        let n = self.norm();
        let c = self.conj();
        Ok(CycNum::new(c.re / &n, c.om / n))
    }

    pub fn pow(&self, n: i64) -> Result<Self, CycError> {
        let base = if n < 0 { self.inv()? } else { self.clone() };
        let mut e = n.unsigned_abs();
        let mut acc = CycNum::one();
        let mut b = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &b;
            }
            b = &b * &b;
            e >>= 1;
        }
        Ok(acc)
    }

    /// Rendering used inside expressions: `q` notation, parenthesized when
    /// the value is not a rational multiple of 1, q or q².
    pub fn render_q(&self) -> String {
        let (a, b) = (&self.re, &self.om);
        if b.is_zero() {
            return rat_str(a);
        }
        if a.is_zero() {
            return scaled(b, "q");
        }
        if a == b {
            // r·q² = −r − r·q
            return scaled(&-a, "q2");
        }
        if b.is_negative() {
            return format!("-{}", paren(&-b, &-a));
        }
        paren(b, a)
    }
}

fn rat_str(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn scaled(r: &Rational, unit: &str) -> String {
    if r.is_one() {
        unit.to_string()
    } else if *r == -Rational::one() {
        format!("-{unit}")
    } else {
        format!("{}*{unit}", rat_str(r))
    }
}

/// `(b*q + a)` with b > 0.
fn paren(b: &Rational, a: &Rational) -> String {
    let qpart = scaled(b, "q");
    if a.is_negative() {
        format!("({qpart}-{})", rat_str(&-a))
    } else {
        format!("({qpart}+{})", rat_str(a))
    }
}

pub fn q_power(n: i64) -> CycNum {
    match n.rem_euclid(3) {
        0 => CycNum::one(),
        1 => CycNum::from_ints(0, 1),
        _ => CycNum::from_ints(-1, -1),
    }
}

pub fn cyc_mul(x: &CycNum, y: &CycNum) -> CycNum {
    x * y
}

pub fn cyc_inv(x: &CycNum) -> Result<CycNum, CycError> {
    x.inv()
}

impl Zero for CycNum {
    fn zero() -> Self {
        CycNum::default()
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.om.is_zero()
    }
}

impl One for CycNum {
    fn one() -> Self {
        CycNum::int(1)
    }
}

impl From<i64> for CycNum {
    fn from(n: i64) -> Self {
        CycNum::int(n)
    }
}

impl From<Rational> for CycNum {
    fn from(r: Rational) -> Self {
        CycNum::from_rational(r)
    }
}

impl<'a> Add<&'a CycNum> for &'a CycNum {
    type Output = CycNum;
    fn add(self, o: &CycNum) -> CycNum {
        CycNum::new(&self.re + &o.re, &self.om + &o.om)
    }
}

impl<'a> Sub<&'a CycNum> for &'a CycNum {
    type Output = CycNum;
    fn sub(self, o: &CycNum) -> CycNum {
        CycNum::new(&self.re - &o.re, &self.om - &o.om)
    }
}

impl<'a> Mul<&'a CycNum> for &'a CycNum {
    type Output = CycNum;
    fn mul(self, o: &CycNum) -> CycNum {
        // (a+bω)(c+dω) = (ac − bd) + (ad + bc − bd)ω
        if o.om.is_zero() {
            return CycNum::new(&self.re * &o.re, &self.om * &o.re);
        }
        if self.om.is_zero() {
            return CycNum::new(&self.re * &o.re, &self.re * &o.om);
        }
        let bd = &self.om * &o.om;
        CycNum::new(
            &self.re * &o.re - &bd,
            &self.re * &o.om + &self.om * &o.re - bd,
        )
    }
}

impl Neg for &CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        CycNum::new(-&self.re, -&self.om)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<CycNum> for CycNum {
            type Output = CycNum;
            fn $m(self, o: CycNum) -> CycNum {
                (&self).$m(&o)
            }
        }
        impl<'a> $tr<&'a CycNum> for CycNum {
            type Output = CycNum;
            fn $m(self, o: &CycNum) -> CycNum {
                (&self).$m(o)
            }
        }
        impl<'a> $tr<CycNum> for &'a CycNum {
            type Output = CycNum;
            fn $m(self, o: CycNum) -> CycNum {
                self.$m(&o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        -&self
    }
}

impl AddAssign<&CycNum> for CycNum {
    fn add_assign(&mut self, o: &CycNum) {
        self.re += &o.re;
        self.om += &o.om;
    }
}

impl SubAssign<&CycNum> for CycNum {
    fn sub_assign(&mut self, o: &CycNum) {
        self.re -= &o.re;
        self.om -= &o.om;
    }
}

impl MulAssign<&CycNum> for CycNum {
    fn mul_assign(&mut self, o: &CycNum) {
        *self = &*self * o;
    }
}

/// Canonical text form `a+b*w`, e.g. `0`, `3/2`, `w`, `-1-w`, `1/3-2/3*w`.
impl fmt::Display for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (a, b) = (&self.re, &self.om);
        if b.is_zero() {
            return write!(f, "{}", rat_str(a));
        }
        let wpart = scaled(&b.abs(), "w");
        if a.is_zero() {
            let sign = if b.is_negative() { "-" } else { "" };
            return write!(f, "{sign}{wpart}");
        }
        let sign = if b.is_negative() { '-' } else { '+' };
        write!(f, "{}{sign}{wpart}", rat_str(a))
    }
}

impl fmt::Debug for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Accepts signed sums of terms `r`, `r*u` or `u` where `r` is an integer or
/// `n/m` and `u` is one of `w`, `q` (both ω) or `q2` (ω²).
impl FromStr for CycNum {
    type Err = CycError;

    fn from_str(s: &str) -> Result<Self, CycError> {
        let err = || CycError::Parse(s.to_string());
        let text: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if text.is_empty() {
            return Err(err());
        }
        let mut total = CycNum::zero();
        let bytes = text.as_bytes();
        let mut i = 0;
        while i < bytes.len() {
            let mut sign = 1i64;
            if bytes[i] == b'+' || bytes[i] == b'-' {
                if bytes[i] == b'-' {
                    sign = -1;
                }
                i += 1;
            } else if i != 0 {
                return Err(err());
            }
            let start = i;
            while i < bytes.len() && bytes[i] != b'+' && bytes[i] != b'-' {
                i += 1;
            }
            let term = &text[start..i];
            let (coef, unit) = match term.split_once('*') {
                Some((c, u)) => (parse_rational(c).ok_or_else(err)?, u),
                None => match parse_rational(term) {
                    Some(r) => (r, ""),
                    None => (Rational::one(), term),
                },
            };
            let u = match unit {
                "" => CycNum::one(),
                "w" | "q" => q_power(1),
                "q2" => q_power(2),
                _ => return Err(err()),
            };
            total += &(u * CycNum::from_rational(coef * rat(sign)));
        }
        Ok(total)
    }
}

fn parse_rational(s: &str) -> Option<Rational> {
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    if n.is_empty() || !n.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    if d.is_empty() || !d.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    let n: BigInt = n.parse().ok()?;
    let d: BigInt = d.parse().ok()?;
    if d.is_zero() {
        return None;
    }
    Some(Rational::new(n, d))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(a: i64, b: i64) -> CycNum {
        CycNum::from_ints(a, b)
    }

    /// Independent oracle: multiply as polynomials in x, then reduce with x² = −1 − x.
    fn poly_mul(x: (i64, i64), y: (i64, i64)) -> (i64, i64) {
        let (a0, a1, a2) = (x.0 * y.0, x.0 * y.1 + x.1 * y.0, x.1 * y.1);
        (a0 - a2, a1 - a2)
    }

    #[test]
    fn spec_products() {
        let q = CycNum::q();
        assert_eq!(&q * &q_power(2), CycNum::one());
        let qm1 = &q - &CycNum::one();
        assert_eq!(&qm1 * &qm1, c(0, -3));
        let a = CycNum::one() - &q;
        let b = CycNum::one() - q_power(2);
        assert_eq!(a * b, CycNum::int(3));
    }

    #[test]
    fn spec_inverses() {
        assert_eq!(CycNum::one().inv().unwrap(), CycNum::one());
        assert_eq!(CycNum::q().inv().unwrap(), q_power(2));
        let x = CycNum::one() - CycNum::q();
        let expect = (CycNum::one() - q_power(2)) * CycNum::from_rational(ratio(1, 3));
        assert_eq!(x.inv().unwrap(), expect);
        assert_eq!(CycNum::zero().inv(), Err(CycError::DivisionByZero));
    }

    #[test]
    fn q_powers() {
        assert_eq!(q_power(3), CycNum::one());
        assert_eq!(q_power(-1), q_power(2));
        assert_eq!(q_power(2), c(-1, -1));
        assert!((CycNum::one() + q_power(1) + q_power(2)).is_zero());
        for n in -7..7 {
            assert_eq!(CycNum::q().pow(n).unwrap(), q_power(n));
        }
    }

    #[test]
    fn display_and_parse() {
        for (v, s) in [
            (c(0, 0), "0"),
            (c(1, 0), "1"),
            (c(0, 1), "w"),
            (c(-1, -1), "-1-w"),
            (c(2, -3), "2-3*w"),
            (CycNum::new(ratio(1, 3), ratio(-2, 3)), "1/3-2/3*w"),
        ] {
            assert_eq!(v.to_string(), s);
            assert_eq!(s.parse::<CycNum>().unwrap(), v);
        }
        assert_eq!("q2".parse::<CycNum>().unwrap(), q_power(2));
        assert_eq!("-2*q".parse::<CycNum>().unwrap(), c(0, -2));
        assert!("x".parse::<CycNum>().is_err());
        assert!("1//2".parse::<CycNum>().is_err());
    }

    #[test]
    fn render_q_forms() {
        assert_eq!(c(0, 1).render_q(), "q");
        assert_eq!(c(1, 1).render_q(), "-q2");
        assert_eq!(c(-1, 1).render_q(), "(q-1)");
        assert_eq!(c(1, -1).render_q(), "-(q-1)");
        assert_eq!(c(0, -3).render_q(), "-3*q");
    }

    fn small() -> impl Strategy<Value = CycNum> {
        (-6i64..7, 1i64..4, -6i64..7, 1i64..4)
            .prop_map(|(a, b, c, d)| CycNum::new(ratio(a, b), ratio(c, d)))
    }

    proptest! {
        #[test]
        fn mul_matches_polynomial_oracle(a in -50i64..50, b in -50i64..50, x in -50i64..50, y in -50i64..50) {
            let (r, o) = poly_mul((a, b), (x, y));
            prop_assert_eq!(c(a, b) * c(x, y), c(r, o));
        }

        #[test]
        fn field_axioms(x in small(), y in small(), z in small()) {
            prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
            prop_assert_eq!(&x * &y, &y * &x);
            prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
            prop_assert_eq!(&x * &CycNum::one(), x.clone());
            prop_assert!((&x + &(-&x)).is_zero());
            if !x.is_zero() {
                prop_assert_eq!(&x * &x.inv().unwrap(), CycNum::one());
            }
        }

        #[test]
        fn text_round_trip(x in small()) {
            prop_assert_eq!(x.to_string().parse::<CycNum>().unwrap(), x);
        }
    }
}
