//! The j-maps `X₀(5) → X(1)` and `X₀(7) → X(1)` and an exact search for
//! `K`-rational points in their fibres.
//!
//! Roots of the monic integral polynomial `g(s) = D^{p+1}·(A(s/D) − j·(s/D)^p)`
//! are algebraic integers, so `2s ∈ ℤ[√d]`. Each root is found by Newton
//! lifting a simple residue root modulo an auxiliary prime `q` (inert in `K`)
//! past twice a Cauchy bound, then confirmed by exact substitution.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::exact::{is_prime, QuadElem, Rat};

use super::{legendre_symbol, GaloisError};

/// Integer polynomial, coefficients from the constant term up.
type IntPoly = Vec<BigInt>;

fn poly_mul(a: &[BigInt], b: &[BigInt]) -> IntPoly {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn quadratic(c0: i64, c1: i64) -> IntPoly {
    vec![c0.into(), c1.into(), 1.into()]
}

/// Numerator `A_p(t)` with `F_p(t) = A_p(t)/t^p`; monic of degree `p + 1`.
pub fn jmap_numerator(p: u64) -> Result<IntPoly, GaloisError> {
    match p {
        5 => {
            let q = quadratic(3125, 250);
            Ok(poly_mul(&poly_mul(&q, &q), &q))
        }
        7 => {
            let q = quadratic(2401, 245);
            Ok(poly_mul(&quadratic(49, 13), &poly_mul(&poly_mul(&q, &q), &q)))
        }
        _ => Err(GaloisError::UnsupportedPrime(p)),
    }
}

fn eval_int_poly(c: &[BigInt], t: &QuadElem) -> QuadElem {
    c.iter().rev().fold(QuadElem::zero(), |acc, ci| acc * t + QuadElem::from_rat(Rat::from_integer(ci.clone())))
}

/// `F_p(t)`, or `None` at the cusp `t = 0`.
pub fn j_map(p: u64, t: &QuadElem) -> Result<Option<QuadElem>, GaloisError> {
    let a = jmap_numerator(p)?;
    if t.is_zero() {
        return Ok(None);
    }
    Ok(Some(eval_int_poly(&a, t) / t.pow(p as u32)))
}

/// Arithmetic in `ℤ[√d]/(M)`; `d = 0` gives `ℤ/M`.
#[derive(Clone)]
struct ModRing {
    m: BigInt,
    d: BigInt,
}

type Pair = (BigInt, BigInt);

impl ModRing {
    fn norm(&self, x: Pair) -> Pair {
        (x.0.mod_floor(&self.m), x.1.mod_floor(&self.m))
    }

    fn add(&self, a: &Pair, b: &Pair) -> Pair {
        self.norm((&a.0 + &b.0, &a.1 + &b.1))
    }

    fn sub(&self, a: &Pair, b: &Pair) -> Pair {
        self.norm((&a.0 - &b.0, &a.1 - &b.1))
    }

    fn mul(&self, a: &Pair, b: &Pair) -> Pair {
        self.norm((&a.0 * &b.0 + &self.d * &a.1 * &b.1, &a.0 * &b.1 + &a.1 * &b.0))
    }

    fn inv(&self, a: &Pair) -> Option<Pair> {
        let n = (&a.0 * &a.0 - &self.d * &a.1 * &a.1).mod_floor(&self.m);
        let ni = crate::exact::mod_inverse(&n, &self.m)?;
        Some(self.norm((&a.0 * &ni, -&a.1 * &ni)))
    }

    fn eval(&self, c: &[Pair], x: &Pair) -> Pair {
        c.iter().rev().fold((BigInt::zero(), BigInt::zero()), |acc, ci| self.add(&self.mul(&acc, x), ci))
    }

    fn reduce_poly(&self, c: &[Pair]) -> Vec<Pair> {
        c.iter().map(|x| self.norm(x.clone())).collect()
    }
}

fn derivative(c: &[Pair]) -> Vec<Pair> {
    c.iter()
        .enumerate()
        .skip(1)
        .map(|(i, (x, y))| (x * BigInt::from(i), y * BigInt::from(i)))
        .collect()
}

/// Residue roots of `g` mod `q`, provided every one is simple.
fn simple_residue_roots(g: &[Pair], d: i64, q: u64) -> Option<Vec<Pair>> {
    let ring = ModRing { m: q.into(), d: d.into() };
    let g = ring.reduce_poly(g);
    let dg = ring.reduce_poly(&derivative(&g));
    let ys = if d == 0 { 0..1 } else { 0..q };
    let mut roots = Vec::new();
    for y in ys {
        for x in 0..q {
            let pt: Pair = (x.into(), y.into());
            if ring.eval(&g, &pt).0.is_zero() && ring.eval(&g, &pt).1.is_zero() {
                let dv = ring.eval(&dg, &pt);
                if dv.0.is_zero() && dv.1.is_zero() {
                    return None;
                }
                roots.push(pt);
            }
        }
    }
    Some(roots)
}

const MAX_AUX_PRIME: u64 = 5000;

fn symmetric(x: &BigInt, m: &BigInt) -> BigInt {
    let r = x.mod_floor(m);
    if &r * 2 > *m {
        r - m
    } else {
        r
    }
}

/// All `t ∈ K^×` with `F_p(t) = j`, smallest height first.
pub fn jmap_fibre(p: u64, j: &QuadElem, d: Option<i64>) -> Result<Vec<QuadElem>, GaloisError> {
    let a = jmap_numerator(p)?;
    let (ja, jb, den) = j.integral_parts();
    let deg = a.len() - 1;
    // g(s) = Σ A_i D^{deg−i} s^i − (ja + jb√d) s^p
    let mut g: Vec<Pair> = a
        .iter()
        .enumerate()
        .map(|(i, ai)| (ai * den.pow((deg - i) as u32), BigInt::zero()))
        .collect();
    let pi = p as usize;
    g[pi].0 -= &ja;
    g[pi].1 -= &jb;
    let dd = d.unwrap_or(0);

    // Cauchy bound on every conjugate of a root
    let coeff_bound = g
        .iter()
        .map(|(x, y)| QuadElem::new(Rat::from_integer(x.clone()), Rat::from_integer(y.clone()), dd).abs_bound())
        .max()
        .unwrap_or_default();
    let bound = coeff_bound + 1;

    let q = (3..MAX_AUX_PRIME)
        .filter(|&q| is_prime(q) && q != p)
        .filter(|&q| d.is_none_or(|d| legendre_symbol(d, q) == -1))
        .find_map(|q| simple_residue_roots(&g, dd, q).map(|r| (q, r)));
    let Some((q, residue_roots)) = q else {
        return Err(GaloisError::NoAuxiliaryPrime(MAX_AUX_PRIME));
    };

    let qb = BigInt::from(q);
    let target = &bound * 4;
    let mut k = 1u32;
    while qb.pow(k) <= target {
        k += 1;
    }
    let ring = ModRing { m: qb.pow(k), d: dd.into() };
    let gm = ring.reduce_poly(&g);
    let dgm = ring.reduce_poly(&derivative(&g));
    let steps = (k as f64).log2().ceil() as u32 + 1;

    let mut found = Vec::new();
    for r in residue_roots {
        let mut s = r;
        for _ in 0..steps {
            let fv = ring.eval(&gm, &s);
            let dv = ring.inv(&ring.eval(&dgm, &s)).expect("simple root stays simple");
            s = ring.sub(&s, &ring.mul(&fv, &dv));
        }
        // 2s has integer coordinates of size below 2·bound
        let x2 = symmetric(&(&s.0 * 2), &ring.m);
        let y2 = symmetric(&(&s.1 * 2), &ring.m);
        let s_exact = QuadElem::new(Rat::new(x2, 2.into()), Rat::new(y2, 2.into()), dd);
        let t = s_exact / QuadElem::from_rat(Rat::from_integer(den.clone()));
        if t.is_zero() {
            continue;
        }
        if j_map(p, &t)?.as_ref() == Some(j) {
            found.push(t);
        }
    }
    found.sort_by_key(height_key);
    found.dedup();
    Ok(found)
}

/// Orders field elements by a naive height, ties broken by display form.
fn height_key(t: &QuadElem) -> (BigInt, String) {
    let (a, b, den) = t.integral_parts();
    let h = [a.abs(), b.abs(), den].into_iter().max().unwrap_or_else(BigInt::one);
    (h, t.to_string())
}

/// `t` as an `i64` when it is a small rational integer.
pub fn small_integer(t: &QuadElem) -> Option<i64> {
    let r = t.as_rat()?;
    r.is_integer().then(|| r.to_integer().to_i64()).flatten()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, rat_frac};

    fn qi(n: i64) -> QuadElem {
        QuadElem::from_int(n)
    }

    #[test]
    fn degrees_and_values_at_one() {
        assert_eq!(jmap_numerator(5).unwrap().len(), 7);
        assert_eq!(jmap_numerator(7).unwrap().len(), 9);
        assert_eq!(j_map(5, &qi(1)).unwrap().unwrap(), qi(3376).pow(3));
        let expected = qi(63) * qi(2647).pow(3);
        assert_eq!(j_map(7, &qi(1)).unwrap().unwrap(), expected);
        assert_eq!(j_map(5, &qi(0)).unwrap(), None);
        assert!(jmap_numerator(11).is_err());
    }

    #[test]
    fn fibre_recovers_integer_and_fractional_points() {
        let j = qi(3376).pow(3);
        let fib = jmap_fibre(5, &j, None).unwrap();
        assert_eq!(fib[0], qi(1));
        for t in &fib {
            assert_eq!(j_map(5, t).unwrap().unwrap(), j);
        }

        let t = QuadElem::from_rat(rat_frac(-3, 7));
        let j = j_map(7, &t).unwrap().unwrap();
        let fib = jmap_fibre(7, &j, None).unwrap();
        assert!(fib.contains(&t));
    }

    #[test]
    fn fibre_over_quadratic_field() {
        let d = 2;
        let t = QuadElem::new(rat(1), rat(1), d);
        let j = j_map(5, &t).unwrap().unwrap();
        let fib = jmap_fibre(5, &j, Some(d)).unwrap();
        assert!(fib.contains(&t));
        // over Q the same j has no preimage
        assert!(!j.is_rational());

        let d = 5;
        let t = QuadElem::new(rat_frac(1, 2), rat_frac(1, 2), d);
        let j = j_map(7, &t).unwrap().unwrap();
        assert!(jmap_fibre(7, &j, Some(d)).unwrap().contains(&t));
    }

    #[test]
    fn empty_fibre_for_37a1() {
        // j(37a1) = 110592/37
        let j = QuadElem::from_rat(rat_frac(110592, 37));
        assert!(jmap_fibre(5, &j, None).unwrap().is_empty());
        assert!(jmap_fibre(7, &j, None).unwrap().is_empty());
    }
}
