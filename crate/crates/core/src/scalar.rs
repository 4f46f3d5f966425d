//! Scalar backends for the matrix and geometry kernels.
//!
//! Two backends live behind the [`Scalar`] trait: [`Rat`], an exact rational
//! built on arbitrary-precision integers, and [`Fp`], a floating value with an
//! attached relative tolerance. All sign predicates default to [`Rat`] so that
//! measure-zero boundary cases (right dihedral angles, ties between matrix
//! entries) are decided exactly; [`Fp`] exists for throughput and for
//! quantities that inherently need square roots.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num::bigint::Sign as BigSign;
use num::{BigInt, BigRational, One, Signed, Zero};
use thiserror::Error;

/// Default relative tolerance of the floating backend.
pub const DEFAULT_EPSILON: f64 = 1e-9;

/// Sign of a scalar, with ties to zero decided per backend.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseScalarError {
    #[error("empty numeric literal")]
    Empty,
    #[error("malformed numeric literal `{0}`")]
    Malformed(String),
    #[error("zero denominator in literal `{0}`")]
    ZeroDenominator(String),
}

/// Field operations plus the sign interface shared by both backends.
///
/// `sign_rel(scale)` is the single comparison primitive: the exact backend
/// ignores `scale`, the float backend treats `|x| <= eps * max(1, |scale|)`
/// as zero.
pub trait Scalar:
    Clone
    + PartialEq
    + fmt::Debug
    + fmt::Display
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + Sized
{
    fn zero() -> Self;
    fn one() -> Self;
    fn from_int(k: i64) -> Self;

    /// Sign against the value's own magnitude reference.
    fn sign(&self) -> Sign;
    /// Sign with a caller-supplied magnitude reference.
    fn sign_rel(&self, scale: &Self) -> Sign;

    /// Three-way comparison honoring the backend's tolerance.
    fn cmp_tol(&self, other: &Self) -> Ordering;

    fn to_f64(&self) -> f64;
    fn abs(&self) -> Self;

    /// Exact square root when one exists in the field (`Rat`), or the
    /// floating square root (`Fp`). `None` signals an irrational root.
    fn sqrt_exact(&self) -> Option<Self>;

    /// Parses `"3"`, `"-7/2"` or `"0.75"`.
    fn parse_literal(s: &str) -> Result<Self, ParseScalarError>;
    /// Literal form used in JSON output.
    fn to_literal(&self) -> String;

    fn is_zero(&self) -> bool {
        self.sign() == Sign::Zero
    }
    fn is_positive(&self) -> bool {
        self.sign() == Sign::Positive
    }
    fn is_negative(&self) -> bool {
        self.sign() == Sign::Negative
    }
    fn le_tol(&self, other: &Self) -> bool {
        self.cmp_tol(other) != Ordering::Greater
    }
    fn ge_tol(&self, other: &Self) -> bool {
        self.cmp_tol(other) != Ordering::Less
    }
    fn lt_tol(&self, other: &Self) -> bool {
        self.cmp_tol(other) == Ordering::Less
    }
    fn gt_tol(&self, other: &Self) -> bool {
        self.cmp_tol(other) == Ordering::Greater
    }
    fn eq_tol(&self, other: &Self) -> bool {
        self.cmp_tol(other) == Ordering::Equal
    }
}

/// Exact rational scalar.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Rat(BigRational);

impl Rat {
    pub fn new(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Rat(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn from_big(r: BigRational) -> Self {
        Rat(r)
    }

    pub fn inner(&self) -> &BigRational {
        &self.0
    }

    /// `p/q` with `q > 0`, or plain `p` for integers.
    fn literal(&self) -> String {
        if self.0.denom().is_one() {
            format!("{}", self.0.numer())
        } else {
            format!("{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.literal())
    }
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.literal())
    }
}

macro_rules! rat_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for Rat {
            type Output = Rat;
            fn $method(self, rhs: Rat) -> Rat {
                Rat((self.0).$method(rhs.0))
            }
        }
        impl<'a> $trait<&'a Rat> for &'a Rat {
            type Output = Rat;
            fn $method(self, rhs: &'a Rat) -> Rat {
                Rat((&self.0).$method(&rhs.0))
            }
        }
    };
}

rat_binop!(Add, add);
rat_binop!(Sub, sub);
rat_binop!(Mul, mul);
rat_binop!(Div, div);

impl Neg for Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat(-self.0)
    }
}

impl From<i64> for Rat {
    fn from(k: i64) -> Self {
        Rat(BigRational::from(BigInt::from(k)))
    }
}

fn sqrt_big(n: &BigInt) -> Option<BigInt> {
    if n.sign() == BigSign::Minus {
        return None;
    }
    let r = n.sqrt();
    if &(&r * &r) == n {
        Some(r)
    } else {
        None
    }
}

impl Scalar for Rat {
    fn zero() -> Self {
        Rat(BigRational::zero())
    }
    fn one() -> Self {
        Rat(BigRational::one())
    }
    fn from_int(k: i64) -> Self {
        Rat::from(k)
    }

    fn sign(&self) -> Sign {
        match self.0.numer().sign() {
            BigSign::Minus => Sign::Negative,
            BigSign::NoSign => Sign::Zero,
            BigSign::Plus => Sign::Positive,
        }
    }

    fn sign_rel(&self, _scale: &Self) -> Sign {
        self.sign()
    }

    fn cmp_tol(&self, other: &Self) -> Ordering {
        self.0.cmp(&other.0)
    }

    fn to_f64(&self) -> f64 {
        // Falls back to a division of rounded BigInts for extreme operands.
        num::ToPrimitive::to_f64(&self.0).unwrap_or(f64::NAN)
    }

    fn abs(&self) -> Self {
        Rat(self.0.abs())
    }

    fn sqrt_exact(&self) -> Option<Self> {
        let num = sqrt_big(self.0.numer())?;
        let den = sqrt_big(self.0.denom())?;
        Some(Rat(BigRational::new(num, den)))
    }

    fn parse_literal(s: &str) -> Result<Self, ParseScalarError> {
        parse_rational(s)
    }

    fn to_literal(&self) -> String {
        self.literal()
    }
}

fn parse_rational(s: &str) -> Result<Rat, ParseScalarError> {
    let t = s.trim();
    if t.is_empty() {
        return Err(ParseScalarError::Empty);
    }
    let malformed = || ParseScalarError::Malformed(s.to_string());
    if let Some((num, den)) = t.split_once('/') {
        let n: BigInt = num.trim().parse().map_err(|_| malformed())?;
        let d: BigInt = den.trim().parse().map_err(|_| malformed())?;
        if d.is_zero() {
            return Err(ParseScalarError::ZeroDenominator(s.to_string()));
        }
        return Ok(Rat(BigRational::new(n, d)));
    }
    if let Some((int, frac)) = t.split_once('.') {
        let neg = int.trim_start().starts_with('-');
        let i: BigInt = if int.is_empty() || int == "-" {
            BigInt::zero()
        } else {
            int.parse().map_err(|_| malformed())?
        };
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(malformed());
        }
        let f: BigInt = frac.parse().map_err(|_| malformed())?;
        let den = BigInt::from(10u32).pow(frac.len() as u32);
        let mag = i.abs() * &den + f;
        let signed = if neg { -mag } else { mag };
        return Ok(Rat(BigRational::new(signed, den)));
    }
    let n: BigInt = t.parse().map_err(|_| malformed())?;
    Ok(Rat(BigRational::from(n)))
}

/// Floating scalar with an attached relative tolerance.
///
/// Arithmetic propagates the larger tolerance of the operands; `zero()` and
/// `one()` carry tolerance 0 so constants inherit the other operand's band.
#[derive(Clone, Copy, PartialEq, Debug, Default)]
pub struct Fp {
    value: f64,
    eps: f64,
}

impl Fp {
    pub fn new(value: f64) -> Self {
        Fp {
            value,
            eps: DEFAULT_EPSILON,
        }
    }

    pub fn with_eps(value: f64, eps: f64) -> Self {
        Fp { value, eps }
    }

    pub fn value(&self) -> f64 {
        self.value
    }

    pub fn eps(&self) -> f64 {
        self.eps
    }

    fn lift(&self, value: f64, other: &Fp) -> Fp {
        Fp {
            value,
            eps: self.eps.max(other.eps),
        }
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl Add for Fp {
    type Output = Fp;
    fn add(self, rhs: Fp) -> Fp {
        self.lift(self.value + rhs.value, &rhs)
    }
}
impl Sub for Fp {
    type Output = Fp;
    fn sub(self, rhs: Fp) -> Fp {
        self.lift(self.value - rhs.value, &rhs)
    }
}
impl Mul for Fp {
    type Output = Fp;
    fn mul(self, rhs: Fp) -> Fp {
        self.lift(self.value * rhs.value, &rhs)
    }
}
impl Div for Fp {
    type Output = Fp;
    fn div(self, rhs: Fp) -> Fp {
        self.lift(self.value / rhs.value, &rhs)
    }
}
impl Neg for Fp {
    type Output = Fp;
    fn neg(self) -> Fp {
        Fp {
            value: -self.value,
            eps: self.eps,
        }
    }
}

impl Scalar for Fp {
    fn zero() -> Self {
        Fp { value: 0.0, eps: 0.0 }
    }
    fn one() -> Self {
        Fp { value: 1.0, eps: 0.0 }
    }
    fn from_int(k: i64) -> Self {
        Fp {
            value: k as f64,
            eps: 0.0,
        }
    }

    fn sign(&self) -> Sign {
        self.sign_rel(&Fp::one())
    }

    fn sign_rel(&self, scale: &Self) -> Sign {
        let band = self.eps.max(scale.eps) * scale.value.abs().max(1.0);
        if self.value.abs() <= band {
            Sign::Zero
        } else if self.value > 0.0 {
            Sign::Positive
        } else {
            Sign::Negative
        }
    }

    fn cmp_tol(&self, other: &Self) -> Ordering {
        let scale = Fp {
            value: self.value.abs().max(other.value.abs()),
            eps: self.eps.max(other.eps),
        };
        match (*self - *other).sign_rel(&scale) {
            Sign::Negative => Ordering::Less,
            Sign::Zero => Ordering::Equal,
            Sign::Positive => Ordering::Greater,
        }
    }

    fn to_f64(&self) -> f64 {
        self.value
    }

    fn abs(&self) -> Self {
        Fp {
            value: self.value.abs(),
            eps: self.eps,
        }
    }

    fn sqrt_exact(&self) -> Option<Self> {
        if self.value < 0.0 {
            None
        } else {
            Some(Fp {
                value: self.value.sqrt(),
                eps: self.eps,
            })
        }
    }

    fn parse_literal(s: &str) -> Result<Self, ParseScalarError> {
        let r = parse_rational(s)?;
        Ok(Fp::new(r.to_f64()))
    }

    fn to_literal(&self) -> String {
        format!("{}", self.value)
    }
}

/// Convenience constructor used all over the test suites.
pub fn rat(k: i64) -> Rat {
    Rat::from(k)
}

/// `rq(3, 4)` is 3/4.
pub fn rq(num: i64, den: i64) -> Rat {
    Rat::new(num, den)
}
