use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::rational::{rat, rat_to_string, Rat};

/// An element `x + y·√d` of `ℚ(√d)`, or of `ℚ` when `y = 0`.
///
/// Elements with `y = 0` carry `d = 0`, so rational values compare equal no
/// matter which quadratic field they were produced in.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadElem {
    x: Rat,
    y: Rat,
    d: i64,
}

impl QuadElem {
    pub fn new(x: Rat, y: Rat, d: i64) -> Self {
        let mut e = QuadElem { x, y, d };
        e.normalize();
        e
    }

    pub fn from_rat(x: Rat) -> Self {
        QuadElem { x, y: Rat::zero(), d: 0 }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rat(rat(n))
    }

    pub fn zero() -> Self {
        Self::from_int(0)
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    /// `√d` itself.
    pub fn sqrt_d(d: i64) -> Self {
        Self::new(Rat::zero(), Rat::one(), d)
    }

    fn normalize(&mut self) {
        if self.y.is_zero() {
            self.d = 0;
        }
    }

    pub fn x(&self) -> &Rat {
        &self.x
    }

    pub fn y(&self) -> &Rat {
        &self.y
    }

    /// Radicand, or `None` for a rational element.
    pub fn radicand(&self) -> Option<i64> {
        (self.d != 0).then_some(self.d)
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.x.is_one() && self.y.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.y.is_zero()
    }

    pub fn as_rat(&self) -> Option<&Rat> {
        self.is_rational().then_some(&self.x)
    }

    pub fn conjugate(&self) -> Self {
        QuadElem { x: self.x.clone(), y: -self.y.clone(), d: self.d }
    }

    pub fn norm(&self) -> Rat {
        &self.x * &self.x - &self.y * &self.y * rat(self.d)
    }

    pub fn trace(&self) -> Rat {
        &self.x + &self.x
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm();
        Some(QuadElem::new(&self.x / &n, -(&self.y / &n), self.d))
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = QuadElem::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Integer powers, negative exponents allowed for nonzero elements.
    pub fn powi(&self, e: i64) -> Self {
        if e >= 0 {
            self.pow(e as u32)
        } else {
            self.inv().expect("negative power of zero").pow((-e) as u32)
        }
    }

    /// Writes `self = (a + b√d)/den` with integers `a, b` and `den > 0`.
    pub fn integral_parts(&self) -> (BigInt, BigInt, BigInt) {
        let den = self.x.denom().lcm(self.y.denom());
        let a = self.x.numer() * (&den / self.x.denom());
        let b = self.y.numer() * (&den / self.y.denom());
        (a, b, den)
    }

    /// Ceiling of an upper bound on `|σ(self)|` over both real embeddings.
    pub fn abs_bound(&self) -> BigInt {
        let root = (self.d.unsigned_abs() as f64).sqrt().ceil() as i64 + 1;
        let b = self.x.abs() + self.y.abs() * rat(root);
        b.ceil().to_integer()
    }

    fn merge_d(&self, other: &Self) -> i64 {
        match (self.d, other.d) {
            (0, d) | (d, 0) => d,
            (a, b) => {
                assert_eq!(a, b, "mixing elements of Q(√{a}) and Q(√{b})");
                a
            }
        }
    }
}

impl fmt::Display for QuadElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.y.is_zero() {
            return write!(f, "{}", rat_to_string(&self.x));
        }
        let y = if self.y.is_one() {
            String::new()
        } else if (-self.y.clone()).is_one() {
            "-".to_string()
        } else {
            rat_to_string(&self.y)
        };
        if self.x.is_zero() {
            write!(f, "{y}√{}", self.d)
        } else if let Some(abs) = y.strip_prefix('-') {
            write!(f, "{} - {abs}√{}", rat_to_string(&self.x), self.d)
        } else {
            write!(f, "{} + {y}√{}", rat_to_string(&self.x), self.d)
        }
    }
}

impl<'a> Add<&'a QuadElem> for &'a QuadElem {
    type Output = QuadElem;
    fn add(self, o: &QuadElem) -> QuadElem {
        QuadElem::new(&self.x + &o.x, &self.y + &o.y, self.merge_d(o))
    }
}

impl<'a> Sub<&'a QuadElem> for &'a QuadElem {
    type Output = QuadElem;
    fn sub(self, o: &QuadElem) -> QuadElem {
        QuadElem::new(&self.x - &o.x, &self.y - &o.y, self.merge_d(o))
    }
}

impl<'a> Mul<&'a QuadElem> for &'a QuadElem {
    type Output = QuadElem;
    fn mul(self, o: &QuadElem) -> QuadElem {
        let d = self.merge_d(o);
        let x = &self.x * &o.x + &self.y * &o.y * rat(d);
        let y = &self.x * &o.y + &self.y * &o.x;
        QuadElem::new(x, y, d)
    }
}

impl<'a> Div<&'a QuadElem> for &'a QuadElem {
    type Output = QuadElem;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, o: &QuadElem) -> QuadElem {
        self * &o.inv().expect("division by zero in quadratic field")
    }
}

impl Neg for &QuadElem {
    type Output = QuadElem;
    fn neg(self) -> QuadElem {
        QuadElem { x: -self.x.clone(), y: -self.y.clone(), d: self.d }
    }
}

impl Neg for QuadElem {
    type Output = QuadElem;
    fn neg(self) -> QuadElem {
        -&self
    }
}

macro_rules! owned_binop {
    ($tr:ident, $m:ident) => {
        impl $tr<QuadElem> for QuadElem {
            type Output = QuadElem;
            fn $m(self, o: QuadElem) -> QuadElem {
                (&self).$m(&o)
            }
        }
        impl<'a> $tr<&'a QuadElem> for QuadElem {
            type Output = QuadElem;
            fn $m(self, o: &QuadElem) -> QuadElem {
                (&self).$m(o)
            }
        }
        impl<'a> $tr<QuadElem> for &'a QuadElem {
            type Output = QuadElem;
            fn $m(self, o: QuadElem) -> QuadElem {
                self.$m(&o)
            }
        }
    };
}

owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);
owned_binop!(Div, div);

impl From<i64> for QuadElem {
    fn from(n: i64) -> Self {
        QuadElem::from_int(n)
    }
}

impl From<Rat> for QuadElem {
    fn from(x: Rat) -> Self {
        QuadElem::from_rat(x)
    }
}
