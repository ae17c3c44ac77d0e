use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use super::rational::is_prime;
use super::ExactError;

/// The finite field `𝔽_p` or `𝔽_{p²} = 𝔽_p[t]/(t² − r)` with `r` the
/// smallest quadratic nonresidue mod `p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FiniteField {
    p: u64,
    degree: u8,
    nonres: u64,
}

impl FiniteField {
    /// Largest characteristic accepted; keeps every product inside `u64`.
    pub const MAX_CHAR: u64 = 1 << 31;

    pub fn prime(p: u64) -> Result<Self, ExactError> {
        if !is_prime(p) || p >= Self::MAX_CHAR {
            return Err(ExactError::NotPrime(p));
        }
        Ok(FiniteField { p, degree: 1, nonres: 0 })
    }

    pub fn quadratic(p: u64) -> Result<Self, ExactError> {
        if p == 2 {
            return Err(ExactError::Unsupported("F_4 is not realised".into()));
        }
        let base = Self::prime(p)?;
        let nonres = (2..p)
            .find(|&r| !base.elem(r).is_square())
            .expect("odd prime has a nonresidue");
        Ok(FiniteField { p, degree: 2, nonres })
    }

    pub fn with_degree(p: u64, degree: u32) -> Result<Self, ExactError> {
        match degree {
            1 => Self::prime(p),
            2 => Self::quadratic(p),
            _ => Err(ExactError::Unsupported(format!("residue degree {degree}"))),
        }
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.degree as u32
    }

    pub fn order(&self) -> u64 {
        self.p.pow(self.degree as u32)
    }

    /// The element `r` with `t² = r`; zero for prime fields.
    pub fn nonresidue(&self) -> u64 {
        self.nonres
    }

    pub fn elem(&self, c0: u64) -> FfElem {
        FfElem { field: *self, c0: c0 % self.p, c1: 0 }
    }

    pub fn from_int(&self, n: i64) -> FfElem {
        self.elem(n.rem_euclid(self.p as i64) as u64)
    }

    pub fn pair(&self, c0: u64, c1: u64) -> FfElem {
        assert!(self.degree == 2 || c1.is_multiple_of(self.p));
        FfElem { field: *self, c0: c0 % self.p, c1: c1 % self.p }
    }

    /// The adjoined root `t`.
    pub fn gen_t(&self) -> FfElem {
        self.pair(0, 1)
    }

    pub fn zero(&self) -> FfElem {
        self.elem(0)
    }

    pub fn one(&self) -> FfElem {
        self.elem(1)
    }

    pub fn elements(&self) -> impl Iterator<Item = FfElem> + '_ {
        let p = self.p;
        let deg1 = if self.degree == 2 { p } else { 1 };
        (0..deg1).flat_map(move |c1| (0..p).map(move |c0| self.pair(c0, c1)))
    }

    /// A generator of the multiplicative group, found by search.
    pub fn generator(&self) -> FfElem {
        let n = self.order() - 1;
        let factors = prime_factors(n);
        self.elements()
            .filter(|g| !g.is_zero())
            .find(|g| factors.iter().all(|&l| !g.pow(n / l).is_one()))
            .expect("finite field has a primitive element")
    }
}

pub(crate) fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut l = 2;
    while l * l <= n {
        if n.is_multiple_of(l) {
            out.push(l);
            while n.is_multiple_of(l) {
                n /= l;
            }
        }
        l += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// An element `c0 + c1·t` of a [`FiniteField`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FfElem {
    field: FiniteField,
    c0: u64,
    c1: u64,
}

impl FfElem {
    pub fn field(&self) -> FiniteField {
        self.field
    }

    pub fn coeffs(&self) -> (u64, u64) {
        (self.c0, self.c1)
    }

    pub fn is_zero(&self) -> bool {
        self.c0 == 0 && self.c1 == 0
    }

    pub fn is_one(&self) -> bool {
        self.c0 == 1 && self.c1 == 0
    }

    /// Whether this element lies in the prime subfield.
    pub fn in_prime_field(&self) -> bool {
        self.c1 == 0
    }

    pub fn pow(&self, mut e: u64) -> FfElem {
        let mut base = *self;
        let mut acc = self.field.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self) -> Option<FfElem> {
        (!self.is_zero()).then(|| self.pow(self.field.order() - 2))
    }

    /// Norm down to `𝔽_p`, returned as an integer in `0..p`.
    pub fn norm(&self) -> u64 {
        let p = self.field.p;
        if self.field.degree == 1 {
            return self.c0;
        }
        let a2 = self.c0 * self.c0 % p;
        let b2r = self.c1 * self.c1 % p * self.field.nonres % p;
        (a2 + p - b2r) % p
    }

    pub fn is_square(&self) -> bool {
        if self.is_zero() {
            return true;
        }
        let p = self.field.p;
        if p == 2 {
            return true;
        }
        let n = self.field.elem(self.norm());
        n.pow((p - 1) / 2).is_one()
    }

    /// Quadratic character: 0, 1 or −1.
    pub fn chi(&self) -> i64 {
        if self.is_zero() {
            0
        } else if self.is_square() {
            1
        } else {
            -1
        }
    }

    /// Multiplicative order of a nonzero element.
    pub fn order(&self) -> u64 {
        assert!(!self.is_zero(), "order of zero");
        let n = self.field.order() - 1;
        let mut ord = n;
        for l in prime_factors(n) {
            while ord.is_multiple_of(l) && self.pow(ord / l).is_one() {
                ord /= l;
            }
        }
        ord
    }
}

impl fmt::Display for FfElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.c1 == 0 {
            write!(f, "{}", self.c0)
        } else if self.c0 == 0 {
            write!(f, "{}t", self.c1)
        } else {
            write!(f, "{}+{}t", self.c0, self.c1)
        }
    }
}

impl Add for FfElem {
    type Output = FfElem;
    fn add(self, o: FfElem) -> FfElem {
        debug_assert_eq!(self.field, o.field);
        let p = self.field.p;
        FfElem { field: self.field, c0: (self.c0 + o.c0) % p, c1: (self.c1 + o.c1) % p }
    }
}

impl Sub for FfElem {
    type Output = FfElem;
    fn sub(self, o: FfElem) -> FfElem {
        self + (-o)
    }
}

impl Neg for FfElem {
    type Output = FfElem;
    fn neg(self) -> FfElem {
        let p = self.field.p;
        FfElem { field: self.field, c0: (p - self.c0) % p, c1: (p - self.c1) % p }
    }
}

impl Mul for FfElem {
    type Output = FfElem;
    fn mul(self, o: FfElem) -> FfElem {
        debug_assert_eq!(self.field, o.field);
        let p = self.field.p;
        let r = self.field.nonres;
        let c0 = (self.c0 * o.c0 % p + self.c1 * o.c1 % p * r % p) % p;
        let c1 = (self.c0 * o.c1 % p + self.c1 * o.c0 % p) % p;
        FfElem { field: self.field, c0, c1 }
    }
}

impl Div for FfElem {
    type Output = FfElem;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, o: FfElem) -> FfElem {
        self * o.inv().expect("division by zero in finite field")
    }
}

/// Weierstrass coefficient vector `[a1, a2, a3, a4, a6]` over a finite field.
pub type FfCurve = [FfElem; 5];

/// Discriminant of a Weierstrass model over a finite field.
pub fn ff_discriminant(a: &FfCurve) -> FfElem {
    let k = a[0].field();
    let c = |n: i64| k.from_int(n);
    let [a1, a2, a3, a4, a6] = *a;
    let b2 = a1 * a1 + c(4) * a2;
    let b4 = a1 * a3 + c(2) * a4;
    let b6 = a3 * a3 + c(4) * a6;
    let b8 = a1 * a1 * a6 + c(4) * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
    -(b2 * b2 * b8) - c(8) * b4 * b4 * b4 - c(27) * b6 * b6 + c(9) * b2 * b4 * b6
}

/// `#E(𝔽_q)` including the point at infinity, by naive enumeration.
pub fn ff_point_count(a: &FfCurve) -> Result<u64, ExactError> {
    let k = a[0].field();
    if ff_discriminant(a).is_zero() {
        return Err(ExactError::BadReduction);
    }
    let [a1, a2, a3, a4, a6] = *a;
    if k.characteristic() == 2 {
        // only q = 2 reaches here; enumerate pairs
        let mut n = 1;
        for x in k.elements() {
            for y in k.elements() {
                if y * y + a1 * x * y + a3 * y == x * x * x + a2 * x * x + a4 * x + a6 {
                    n += 1;
                }
            }
        }
        return Ok(n);
    }
    // y² + a1xy + a3y = f(x)  ⇔  (2y + a1x + a3)² = 4f(x) + (a1x + a3)²
    let c4 = k.from_int(4);
    let mut sum: i64 = 0;
    for x in k.elements() {
        let lin = a1 * x + a3;
        let rhs = c4 * (x * x * x + a2 * x * x + a4 * x + a6) + lin * lin;
        sum += rhs.chi();
    }
    Ok((k.order() as i64 + 1 + sum) as u64)
}

/// Trace of Frobenius `q + 1 − #E(𝔽_q)`.
pub fn ff_trace(a: &FfCurve) -> Result<i64, ExactError> {
    let n = ff_point_count(a)?;
    Ok(a[0].field().order() as i64 + 1 - n as i64)
}
