use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use super::ff::{FfElem, FiniteField};
use super::quad::QuadElem;
use super::rational::{is_prime, is_squarefree, mod_inverse, val_int, val_p, Rat, Val};
use super::ExactError;

/// How a rational prime decomposes in the base field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Splitting {
    /// Base field is ℚ.
    Rational,
    /// One of the two primes above a split `p`; `index` 0 uses the smaller
    /// square root of `d` mod `p`.
    Split { index: u8 },
    Inert,
    Ramified,
}

/// A prime `𝔭` of ℚ or of a real quadratic field, with enough data to
/// evaluate `v_𝔭` and the reduction map to the residue field.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PrimeSlot {
    p: u64,
    e: u32,
    f: u32,
    d: Option<i64>,
    splitting: Splitting,
    residue: FiniteField,
    /// Image of `√d` in the residue field (quadratic fields only).
    sqrt_image: Option<FfElem>,
}

impl PrimeSlot {
    /// The prime `p` of ℚ.
    pub fn rational(p: u64) -> Result<Self, ExactError> {
        Ok(PrimeSlot {
            p,
            e: 1,
            f: 1,
            d: None,
            splitting: Splitting::Rational,
            residue: FiniteField::prime(p)?,
            sqrt_image: None,
        })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn e(&self) -> u32 {
        self.e
    }

    pub fn f(&self) -> u32 {
        self.f
    }

    pub fn radicand(&self) -> Option<i64> {
        self.d
    }

    pub fn splitting(&self) -> Splitting {
        self.splitting
    }

    pub fn residue_field(&self) -> FiniteField {
        self.residue
    }

    /// Absolute norm `p^f`.
    pub fn norm(&self) -> u64 {
        self.p.pow(self.f)
    }

    pub fn label(&self) -> String {
        self.to_string()
    }

    /// An element of valuation one at this slot.
    pub fn uniformizer(&self) -> QuadElem {
        match self.splitting {
            Splitting::Ramified => QuadElem::sqrt_d(self.d.expect("ramified slot has d")),
            _ => QuadElem::from_int(self.p as i64),
        }
    }

    /// Normalised valuation `v_𝔭(x)`.
    pub fn val(&self, x: &QuadElem) -> Val {
        if x.is_zero() {
            return Val::Infinite;
        }
        if let Some(r) = x.as_rat() {
            return val_p(r, self.p).scaled(self.e as i64);
        }
        let (a, b, den) = x.integral_parts();
        let vden = val_int(&den, self.p).scaled(self.e as i64);
        let vnum = match self.splitting {
            Splitting::Rational => unreachable!("irrational element at a rational slot"),
            Splitting::Inert => val_int(&a, self.p).min(val_int(&b, self.p)),
            Splitting::Ramified => val_int(&a, self.p)
                .scaled(2)
                .min(val_int(&b, self.p).scaled(2) + 1),
            Splitting::Split { .. } => self.split_val(&a, &b),
        };
        Val::Finite(vnum.finite().expect("nonzero") - vden.finite().expect("nonzero"))
    }

    /// `v_𝔭(a + b√d)` for integers at a split slot, via the 𝔭-adic embedding.
    fn split_val(&self, a: &BigInt, b: &BigInt) -> Val {
        let k0 = val_int(a, self.p).min(val_int(b, self.p)).finite().expect("nonzero");
        let pk0 = BigInt::from(self.p).pow(k0 as u32);
        let (a, b) = (a / &pk0, b / &pk0);
        let d = BigInt::from(self.d.expect("split slot has d"));
        let norm = &a * &a - &d * &b * &b;
        let n = val_int(&norm, self.p).finite().expect("d is not a square");
        let prec = n as u32 + 1;
        let m = BigInt::from(self.p).pow(prec);
        let s = self.padic_sqrt(prec);
        let w = (&a + &b * s).mod_floor(&m);
        let vw = val_int(&w, self.p).finite().unwrap_or(prec as i64);
        Val::Finite(k0 + vw.min(n))
    }

    /// The square root of `d` in `ℤ_p` selected by this slot, mod `p^prec`.
    fn padic_sqrt(&self, prec: u32) -> BigInt {
        let p = BigInt::from(self.p);
        let d = BigInt::from(self.d.expect("split slot has d"));
        let (r0, _) = self.sqrt_image.expect("split slot has root").coeffs();
        let mut s = BigInt::from(r0);
        let mut cur = 1u32;
        while cur < prec {
            cur = (cur * 2).min(prec);
            let m = p.pow(cur);
            let num = (&s * &s - &d).mod_floor(&m);
            let inv = mod_inverse(&(BigInt::from(2) * &s), &m).expect("p odd, s unit");
            s = (&s - num * inv).mod_floor(&m);
        }
        s.mod_floor(&p.pow(prec))
    }

    /// Reduction map from 𝔭-integral elements to the residue field.
    pub fn reduce(&self, x: &QuadElem) -> Result<FfElem, ExactError> {
        if self.val(x) < 0 {
            return Err(ExactError::NotIntegral(x.to_string(), self.label()));
        }
        let k = self.residue;
        let pb = BigInt::from(self.p);
        let to_ff = |n: &BigInt| k.elem(n.mod_floor(&pb).to_u64().expect("reduced"));
        if let Some(r) = x.as_rat() {
            if val_p(r, self.p) >= 0 {
                return Ok(to_ff(&(r.numer() * mod_inverse(r.denom(), &pb).expect("unit"))));
            }
        }
        let (a, b, den) = x.integral_parts();
        let kd = val_int(&den, self.p).finite().expect("den nonzero");
        let pk = pb.pow(kd as u32);
        let den_unit = &den / &pk;
        let den_inv = to_ff(&mod_inverse(&den_unit, &pb).expect("unit part"));
        let sqrt = self.sqrt_image;
        let num = match self.splitting {
            Splitting::Split { .. } => {
                let m = pb.pow(kd as u32 + 1);
                let s = self.padic_sqrt(kd as u32 + 1);
                let w = (&a + &b * s).mod_floor(&m);
                debug_assert!((&w % &pk).is_zero());
                to_ff(&(w / &pk))
            }
            Splitting::Inert | Splitting::Ramified | Splitting::Rational => {
                // integrality forces p^kd | a and p^kd | b here
                let (a, b) = (&a / &pk, &b / &pk);
                let root = sqrt.unwrap_or_else(|| k.zero());
                to_ff(&a) + to_ff(&b) * root
            }
        };
        Ok(num * den_inv)
    }

    /// A lift of a residue-field element to the base field.
    pub fn lift(&self, r: &FfElem) -> QuadElem {
        let (c0, c1) = r.coeffs();
        let base = QuadElem::from_int(c0 as i64);
        if c1 == 0 {
            return base;
        }
        // inert: √d ↦ c·t, so t lifts to c⁻¹·√d
        let (_, c) = self.sqrt_image.expect("inert slot").coeffs();
        let pb = BigInt::from(self.p);
        let cinv = mod_inverse(&BigInt::from(c), &pb).expect("c is a unit");
        let coeff = (cinv * BigInt::from(c1)).mod_floor(&pb);
        let y = QuadElem::from_rat(Rat::from_integer(coeff));
        base + y * QuadElem::sqrt_d(self.d.expect("inert slot has d"))
    }
}

impl fmt::Display for PrimeSlot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.splitting {
            Splitting::Rational => write!(f, "{}", self.p),
            Splitting::Split { index } => {
                let r = self.sqrt_image.expect("split root").coeffs().0;
                write!(f, "{}[split {}: √{}≡{}]", self.p, index, self.d.unwrap_or(0), r)
            }
            Splitting::Inert => write!(f, "{}[inert]", self.p),
            Splitting::Ramified => write!(f, "{}[ramified]", self.p),
        }
    }
}

/// The primes of `ℚ(√d)` above an odd prime `p`.
pub fn prime_split(d: i64, p: u64) -> Result<Vec<PrimeSlot>, ExactError> {
    if d <= 1 || !is_squarefree(d) {
        return Err(ExactError::NotSquarefree(d));
    }
    if p == 2 {
        return Err(ExactError::Unsupported("primes above 2".into()));
    }
    if !is_prime(p) {
        return Err(ExactError::NotPrime(p));
    }
    let fp = FiniteField::prime(p)?;
    let dm = fp.from_int(d);
    if dm.is_zero() {
        return Ok(vec![PrimeSlot {
            p,
            e: 2,
            f: 1,
            d: Some(d),
            splitting: Splitting::Ramified,
            residue: fp,
            sqrt_image: Some(fp.zero()),
        }]);
    }
    if dm.is_square() {
        let r = (0..p).find(|&r| fp.elem(r) * fp.elem(r) == dm).expect("square root exists");
        let roots = [r.min(p - r), r.max(p - r)];
        return Ok(roots
            .iter()
            .enumerate()
            .map(|(i, &r)| PrimeSlot {
                p,
                e: 1,
                f: 1,
                d: Some(d),
                splitting: Splitting::Split { index: i as u8 },
                residue: fp,
                sqrt_image: Some(fp.elem(r)),
            })
            .collect());
    }
    let k = FiniteField::quadratic(p)?;
    // √d ↦ c·t with c² = d / r
    let ratio = dm / fp.elem(k.nonresidue());
    let c = (1..p).find(|&c| fp.elem(c) * fp.elem(c) == ratio).expect("d/r is a square");
    Ok(vec![PrimeSlot {
        p,
        e: 1,
        f: 2,
        d: Some(d),
        splitting: Splitting::Inert,
        residue: k,
        sqrt_image: Some(k.pair(0, c)),
    }])
}

/// The primes above `p` in ℚ (`d = None`) or `ℚ(√d)`.
pub fn slots_above(d: Option<i64>, p: u64) -> Result<Vec<PrimeSlot>, ExactError> {
    match d {
        None => Ok(vec![PrimeSlot::rational(p)?]),
        Some(d) => prime_split(d, p),
    }
}

/// `v_𝔭(x)` for an element of a real quadratic field.
pub fn val_frak(x: &QuadElem, slot: &PrimeSlot) -> Val {
    slot.val(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::{rat, rat_frac};

    fn q(x: i64, y: i64, d: i64) -> QuadElem {
        QuadElem::new(rat(x), rat(y), d)
    }

    #[test]
    fn splitting_examples() {
        let s = prime_split(2, 7).unwrap();
        assert_eq!(s.len(), 2);
        assert!(s.iter().all(|t| t.e() == 1 && t.f() == 1));
        let s = prime_split(2, 5).unwrap();
        assert_eq!((s.len(), s[0].e(), s[0].f()), (1, 1, 2));
        let s = prime_split(5, 5).unwrap();
        assert_eq!((s.len(), s[0].e(), s[0].splitting()), (1, 2, Splitting::Ramified));
    }

    #[test]
    fn degree_sum_is_two() {
        for d in [2, 3, 6, 7, 10] {
            for p in [3, 5, 7] {
                let total: u32 = prime_split(d, p).unwrap().iter().map(|s| s.e() * s.f()).sum();
                assert_eq!(total, 2, "d = {d}, p = {p}");
            }
        }
    }

    #[test]
    fn valuation_examples() {
        let inert3 = &prime_split(2, 3).unwrap()[0];
        assert_eq!(inert3.val(&QuadElem::from_int(3)), 1);
        let ram5 = &prime_split(5, 5).unwrap()[0];
        assert_eq!(ram5.val(&QuadElem::sqrt_d(5)), 1);
        let split7 = prime_split(2, 7).unwrap();
        let x = q(3, 1, 2);
        let mut vals: Vec<Val> = split7.iter().map(|s| s.val(&x)).collect();
        vals.sort();
        assert_eq!(vals, vec![Val::Finite(0), Val::Finite(1)]);
        // 7 = (3 + √2)(3 − √2): each slot sees exactly one factor
        for s in &split7 {
            assert_eq!(s.val(&(&x * &x.conjugate())), 1);
            assert_eq!(s.val(&x) + s.val(&x.conjugate()), Val::Finite(1));
        }
    }

    #[test]
    fn valuations_with_denominators() {
        let split7 = prime_split(2, 7).unwrap();
        let x = QuadElem::new(rat_frac(3, 7), rat_frac(1, 7), 2);
        let vals: Vec<Val> = split7.iter().map(|s| s.val(&x)).collect();
        assert!(vals.contains(&Val::Finite(0)) && vals.contains(&Val::Finite(-1)));
        let s = split7.iter().find(|s| s.val(&x) == 0).unwrap();
        // (3+√2)/7 = 1/(3−√2): its residue times that of 3 − √2 is one
        let prod = s.reduce(&x).unwrap() * s.reduce(&q(3, -1, 2)).unwrap();
        assert!(prod.is_one());
    }

    #[test]
    fn rational_integer_scales_by_e() {
        for d in [2i64, 3, 5, 7] {
            for p in [3u64, 5, 7] {
                for slot in prime_split(d, p).unwrap() {
                    let n = QuadElem::from_int(2 * 3 * 5 * 7 * 3);
                    let expect = val_p(&rat(2 * 3 * 5 * 7 * 3), p).scaled(slot.e() as i64);
                    assert_eq!(slot.val(&n), expect);
                }
            }
        }
    }

    #[test]
    fn reduction_is_a_ring_map_and_lift_inverts_it() {
        for (d, p) in [(2i64, 3u64), (2, 7), (3, 3), (5, 5), (2, 5)] {
            for slot in prime_split(d, p).unwrap() {
                let a = q(4, 3, d);
                let b = QuadElem::new(rat_frac(1, 2), rat(5), d);
                let ra = slot.reduce(&a).unwrap();
                let rb = slot.reduce(&b).unwrap();
                assert_eq!(slot.reduce(&(&a * &b)).unwrap(), ra * rb);
                assert_eq!(slot.reduce(&(&a + &b)).unwrap(), ra + rb);
                for r in slot.residue_field().elements() {
                    assert_eq!(slot.reduce(&slot.lift(&r)).unwrap(), r);
                }
                assert_eq!(slot.val(&slot.uniformizer()), 1);
            }
        }
    }

    #[test]
    fn non_integral_reduction_fails() {
        let slot = PrimeSlot::rational(5).unwrap();
        assert!(slot.reduce(&QuadElem::from_rat(rat_frac(1, 5))).is_err());
    }
}
