use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{CycloReal, GeomError};

pub type Rat = BigRational;

pub fn rat(p: i64, q: i64) -> Rat {
    Rat::new(BigInt::from(p), BigInt::from(q))
}

pub fn int(p: i64) -> Rat {
    Rat::from_integer(BigInt::from(p))
}

/// Exact text form: `"p"` or `"p/q"`.
pub fn format_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn parse_rat(s: &str) -> Result<Rat, GeomError> {
    let bad = || GeomError::Parse(format!("bad rational `{s}`"));
    let (p, q) = match s.split_once('/') {
        Some((p, q)) => (p, q),
        None => (s, "1"),
    };
    let p: BigInt = p.trim().parse().map_err(|_| bad())?;
    let q: BigInt = q.trim().parse().map_err(|_| bad())?;
    if q.is_zero() {
        return Err(bad());
    }
    Ok(Rat::new(p, q))
}

/// Dyadic rational nearest to `x` with denominator `2^bits`.
pub fn dyadic(x: f64, bits: u32) -> Rat {
    let scaled = (x * 2f64.powi(bits as i32)).round();
    let p = BigInt::from(scaled as i128);
    Rat::new(p, BigInt::one() << bits)
}

/// Exact ordered field operations shared by both coordinate modes.
pub trait Scalar: Clone + PartialEq + fmt::Debug + Send + Sync + 'static {
    fn plus(&self, o: &Self) -> Self;
    fn minus(&self, o: &Self) -> Self;
    fn times(&self, o: &Self) -> Self;
    fn negated(&self) -> Self;
    fn inverse(&self) -> Result<Self, GeomError>;
    /// -1, 0 or +1.
    fn sign(&self) -> i8;
    fn is_zero_exact(&self) -> bool;
    /// `f64` value and an absolute error bound.
    fn approx(&self) -> (f64, f64);
    fn zero_like(&self) -> Self;
    fn from_rat_like(&self, r: &Rat) -> Self;
    /// Exact text form.
    fn exact_string(&self) -> String;
    /// Nearby rational (exact for `Rat`).
    fn snap(&self) -> Rat;

    fn one_like(&self) -> Self {
        self.from_rat_like(&Rat::one())
    }

    fn cmp_exact(&self, o: &Self) -> std::cmp::Ordering {
        self.minus(o).sign().cmp(&0)
    }
}

impl Scalar for Rat {
    fn plus(&self, o: &Self) -> Self {
        self + o
    }
    fn minus(&self, o: &Self) -> Self {
        self - o
    }
    fn times(&self, o: &Self) -> Self {
        self * o
    }
    fn negated(&self) -> Self {
        -self
    }
    fn inverse(&self) -> Result<Self, GeomError> {
        if self.is_zero() {
            Err(GeomError::DivisionByZero)
        } else {
            Ok(self.recip())
        }
    }
    fn sign(&self) -> i8 {
        if self.is_zero() {
            0
        } else if self.is_positive() {
            1
        } else {
            -1
        }
    }
    fn is_zero_exact(&self) -> bool {
        self.is_zero()
    }
    fn approx(&self) -> (f64, f64) {
        let v = self.to_f64().unwrap_or(f64::NAN);
        (v, 4.0 * v.abs() * f64::EPSILON + f64::MIN_POSITIVE)
    }
    fn zero_like(&self) -> Self {
        Rat::zero()
    }
    fn from_rat_like(&self, r: &Rat) -> Self {
        r.clone()
    }
    fn exact_string(&self) -> String {
        format_rat(self)
    }
    fn snap(&self) -> Rat {
        self.clone()
    }
    fn cmp_exact(&self, o: &Self) -> std::cmp::Ordering {
        self.cmp(o)
    }
}

impl Scalar for CycloReal {
    fn plus(&self, o: &Self) -> Self {
        self.add(o)
    }
    fn minus(&self, o: &Self) -> Self {
        self.sub(o)
    }
    fn times(&self, o: &Self) -> Self {
        self.mul(o)
    }
    fn negated(&self) -> Self {
        self.neg()
    }
    fn inverse(&self) -> Result<Self, GeomError> {
        self.inv()
    }
    fn sign(&self) -> i8 {
        self.signum()
    }
    fn is_zero_exact(&self) -> bool {
        self.is_zero()
    }
    fn approx(&self) -> (f64, f64) {
        CycloReal::approx(self)
    }
    fn zero_like(&self) -> Self {
        CycloReal::zero(self.m())
    }
    fn from_rat_like(&self, r: &Rat) -> Self {
        CycloReal::from_rat(self.m(), r).expect("rational too large for the cyclotomic mode")
    }
    fn exact_string(&self) -> String {
        self.to_string()
    }
    fn snap(&self) -> Rat {
        dyadic(self.to_f64(), 60)
    }
}
