//! Brute-force checks of the finite-group facts the decision tree relies on:
//! Borel subgroup orders, element orders in `B(𝔽_7)`, and cyclic-order
//! thresholds for the small projective images that block the lifting step.

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt;
use std::sync::OnceLock;

use num_integer::Integer;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exact::{ExactError, FfElem, FiniteField};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("no exceptional projective images recorded for p = {0}")]
    NoExceptionalImages(u64),
    #[error(transparent)]
    Exact(#[from] ExactError),
}

/// A 2×2 matrix `[[a, b], [c, d]]` over a finite field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mat2 {
    pub a: FfElem,
    pub b: FfElem,
    pub c: FfElem,
    pub d: FfElem,
}

/// An invertible [`Mat2`].
pub type GL2Elem = Mat2;

impl Mat2 {
    /// `None` if the determinant vanishes.
    pub fn invertible(a: FfElem, b: FfElem, c: FfElem, d: FfElem) -> Option<Mat2> {
        let m = Mat2 { a, b, c, d };
        (!m.det().is_zero()).then_some(m)
    }

    pub fn identity(k: FiniteField) -> Mat2 {
        Mat2::diag(k.one(), k.one())
    }

    pub fn diag(x: FfElem, y: FfElem) -> Mat2 {
        let z = x.field().zero();
        Mat2 { a: x, b: z, c: z, d: y }
    }

    pub fn from_ints(k: FiniteField, e: [i64; 4]) -> Option<Mat2> {
        let [a, b, c, d] = e.map(|n| k.from_int(n));
        Mat2::invertible(a, b, c, d)
    }

    pub fn det(&self) -> FfElem {
        self.a * self.d - self.b * self.c
    }

    pub fn mul(&self, o: &Mat2) -> Mat2 {
        Mat2 {
            a: self.a * o.a + self.b * o.c,
            b: self.a * o.b + self.b * o.d,
            c: self.c * o.a + self.d * o.c,
            d: self.c * o.b + self.d * o.d,
        }
    }

    pub fn is_scalar(&self) -> bool {
        self.b.is_zero() && self.c.is_zero() && self.a == self.d
    }

    pub fn is_identity(&self) -> bool {
        self.is_scalar() && self.a.is_one()
    }

    pub fn is_upper_triangular(&self) -> bool {
        self.c.is_zero()
    }

    /// Representative of the class modulo scalars: first nonzero entry 1.
    pub fn projective_normal_form(&self) -> Mat2 {
        let lead = [self.a, self.b, self.c, self.d]
            .into_iter()
            .find(|x| !x.is_zero())
            .expect("nonzero matrix");
        let s = lead.inv().expect("nonzero");
        Mat2 { a: self.a * s, b: self.b * s, c: self.c * s, d: self.d * s }
    }
}

impl fmt::Display for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{}, {}], [{}, {}]]", self.a, self.b, self.c, self.d)
    }
}

/// Multiplicative order, optionally modulo scalars, by repeated multiplication.
pub fn element_order(m: &GL2Elem, projective: bool) -> u64 {
    let mut acc = *m;
    let mut n = 1;
    loop {
        let done = if projective { acc.is_scalar() } else { acc.is_identity() };
        if done {
            return n;
        }
        acc = acc.mul(m);
        n += 1;
    }
}

/// Every element of `GL₂(𝔽_p)`, by determinant filter over all `p⁴` matrices.
pub fn gl2_elements(k: FiniteField) -> Vec<GL2Elem> {
    let elems: Vec<FfElem> = k.elements().collect();
    let mut out = Vec::new();
    for &a in &elems {
        for &b in &elems {
            for &c in &elems {
                for &d in &elems {
                    if let Some(m) = Mat2::invertible(a, b, c, d) {
                        out.push(m);
                    }
                }
            }
        }
    }
    out
}

/// Upper-triangular elements of `GL₂(𝔽_p)`.
pub fn borel_elements(k: FiniteField) -> Vec<GL2Elem> {
    gl2_elements(k).into_iter().filter(Mat2::is_upper_triangular).collect()
}

/// `|PGL₂(𝔽_p)|` as the number of scalar classes in `GL₂(𝔽_p)`.
pub fn pgl2_order(k: FiniteField) -> usize {
    gl2_elements(k)
        .iter()
        .map(Mat2::projective_normal_form)
        .collect::<HashSet<_>>()
        .len()
}

/// Closure of a generating set under multiplication.
pub fn generate(gens: &[GL2Elem]) -> Vec<GL2Elem> {
    let Some(first) = gens.first() else {
        return Vec::new();
    };
    let id = Mat2::identity(first.a.field());
    let mut seen: BTreeSet<GL2Elem> = BTreeSet::from([id]);
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = x.mul(g);
            if seen.insert(y) {
                queue.push_back(y);
            }
        }
    }
    seen.into_iter().collect()
}

/// A permutation of `0..n`, for concrete models of small abstract groups.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm(pub Vec<u8>);

impl Perm {
    pub fn identity(n: usize) -> Perm {
        Perm((0..n as u8).collect())
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Perm) -> Perm {
        Perm(other.0.iter().map(|&i| self.0[i as usize]).collect())
    }

    pub fn order(&self) -> u64 {
        let id = Perm::identity(self.0.len());
        let mut acc = self.clone();
        let mut n = 1;
        while acc != id {
            acc = acc.compose(self);
            n += 1;
        }
        n
    }
}

pub fn perm_closure(gens: &[Perm]) -> BTreeSet<Perm> {
    let n = gens.first().map_or(0, |g| g.0.len());
    let mut seen = BTreeSet::from([Perm::identity(n)]);
    let mut queue: VecDeque<Perm> = seen.iter().cloned().collect();
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = x.compose(g);
            if seen.insert(y.clone()) {
                queue.push_back(y);
            }
        }
    }
    seen
}

/// A named finite group realised by permutations.
#[derive(Clone, Debug)]
pub struct PermGroup {
    pub name: &'static str,
    pub elements: BTreeSet<Perm>,
}

impl PermGroup {
    pub fn max_element_order(&self) -> u64 {
        self.elements.iter().map(Perm::order).max().unwrap_or(1)
    }

    pub fn element_orders(&self) -> BTreeSet<u64> {
        self.elements.iter().map(Perm::order).collect()
    }
}

fn perm(v: &[u8]) -> Perm {
    Perm(v.to_vec())
}

/// The projective images that can occur when `ρ̄` is irreducible but becomes
/// reducible over `K(ζ_p)`: the Klein four-group for `p = 5`; `S₃` or `D₄`
/// for `p = 7`.
pub fn exceptional_images(p: u64) -> Result<Vec<PermGroup>, GroupError> {
    match p {
        5 => Ok(vec![PermGroup {
            name: "(Z/2Z)^2",
            elements: perm_closure(&[perm(&[1, 0, 3, 2]), perm(&[2, 3, 0, 1])]),
        }]),
        7 => Ok(vec![
            PermGroup { name: "S3", elements: perm_closure(&[perm(&[1, 0, 2]), perm(&[1, 2, 0])]) },
            PermGroup {
                name: "D4",
                elements: perm_closure(&[perm(&[1, 2, 3, 0]), perm(&[0, 3, 2, 1])]),
            },
        ]),
        _ => Err(GroupError::NoExceptionalImages(p)),
    }
}

/// Smallest cyclic order that embeds in none of the exceptional images.
pub fn exceptional_threshold(p: u64) -> Result<u64, GroupError> {
    let max = exceptional_images(p)?.iter().map(PermGroup::max_element_order).max().unwrap_or(1);
    Ok(max + 1)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupAuditReport {
    pub borel_order_5: usize,
    pub borel_order_7: usize,
    pub gcd_value: usize,
    /// Elements of order exactly 4 in `B(𝔽_7)`.
    pub order4_elements_in_b7: usize,
    /// Cyclic subgroups of order 4 in `B(𝔽_7)`.
    pub order4_cyclic_count_in_b7: usize,
    pub pgl_order_5: usize,
    pub pgl_order_7: usize,
    pub threshold_5: u64,
    pub threshold_7: u64,
}

impl GroupAuditReport {
    /// The constants the twist argument consumes.
    pub fn matches_expected(&self) -> bool {
        self.borel_order_5 == 4 * 4 * 5
            && self.borel_order_7 == 6 * 6 * 7
            && self.gcd_value == 4
            && self.order4_cyclic_count_in_b7 == 0
    }
}

/// Enumerates the Borel subgroups of `GL₂(𝔽_5)`, `GL₂(𝔽_7)` and the
/// exceptional images.
pub fn audit_borel() -> Result<GroupAuditReport, GroupError> {
    let f5 = FiniteField::prime(5)?;
    let f7 = FiniteField::prime(7)?;
    let b5 = borel_elements(f5);
    let b7 = borel_elements(f7);
    let order4 = b7.iter().filter(|m| element_order(m, false) == 4).count();
    Ok(GroupAuditReport {
        borel_order_5: b5.len(),
        borel_order_7: b7.len(),
        gcd_value: b5.len().gcd(&b7.len()),
        order4_elements_in_b7: order4,
        // each cyclic group of order 4 has two generators
        order4_cyclic_count_in_b7: order4 / 2,
        pgl_order_5: pgl2_order(f5),
        pgl_order_7: pgl2_order(f7),
        threshold_5: exceptional_threshold(5)?,
        threshold_7: exceptional_threshold(7)?,
    })
}

/// [`audit_borel`], computed once per process.
pub fn cached_audit() -> &'static GroupAuditReport {
    static AUDIT: OnceLock<GroupAuditReport> = OnceLock::new();
    AUDIT.get_or_init(|| audit_borel().expect("fields 5 and 7 exist"))
}

/// A subgroup of `GL₂(𝔽_5)` of order 16 whose projective image is a Klein
/// four-group, found by search over pairs of monomial matrices together with
/// the scalars.
pub fn klein_order16_witness() -> Result<Option<Vec<GL2Elem>>, GroupError> {
    let k = FiniteField::prime(5)?;
    let g = k.generator();
    let scalar = Mat2::diag(g, g);
    let monomial: Vec<GL2Elem> = gl2_elements(k)
        .into_iter()
        .filter(|m| (m.b.is_zero() && m.c.is_zero()) || (m.a.is_zero() && m.d.is_zero()))
        .filter(|m| !m.is_scalar())
        .collect();
    for (i, x) in monomial.iter().enumerate() {
        for y in &monomial[i + 1..] {
            let group = generate(&[scalar, *x, *y]);
            if group.len() != 16 {
                continue;
            }
            let image: HashSet<_> = group.iter().map(Mat2::projective_normal_form).collect();
            if image.len() == 4 && group.iter().all(|m| element_order(m, true) <= 2) {
                return Ok(Some(group));
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn audit_constants() {
        let r = audit_borel().unwrap();
        assert_eq!(r.borel_order_5, 80);
        assert_eq!(r.borel_order_7, 252);
        assert_eq!(r.gcd_value, 4);
        assert_eq!(r.order4_elements_in_b7, 0);
        assert_eq!((r.pgl_order_5, r.pgl_order_7), (120, 336));
        assert!(r.matches_expected());
    }

    #[test]
    fn thresholds() {
        assert_eq!(exceptional_threshold(5).unwrap(), 3);
        assert_eq!(exceptional_threshold(7).unwrap(), 5);
        assert!(exceptional_threshold(11).is_err());
        let imgs = exceptional_images(7).unwrap();
        let orders: Vec<_> = imgs.iter().map(|g| (g.elements.len(), g.element_orders())).collect();
        assert_eq!(orders[0], (6, BTreeSet::from([1, 2, 3])));
        assert_eq!(orders[1], (8, BTreeSet::from([1, 2, 4])));
    }

    #[test]
    fn element_order_examples() {
        let k = FiniteField::prime(7).unwrap();
        assert_eq!(element_order(&Mat2::identity(k), false), 1);
        let g = k.generator();
        assert_eq!(element_order(&Mat2::diag(g, k.one()), false), 6);
        assert_eq!(element_order(&Mat2::diag(g, g), true), 1);
        assert_eq!(element_order(&Mat2::diag(g, g), false), 6);
        let u = Mat2::from_ints(k, [1, 1, 0, 1]).unwrap();
        assert_eq!(element_order(&u, false), 7);
    }

    #[test]
    fn singular_matrix_rejected() {
        let k = FiniteField::prime(5).unwrap();
        assert!(Mat2::from_ints(k, [1, 2, 2, 4]).is_none());
    }

    #[test]
    fn klein_image_of_order_sixteen_exists() {
        let g = klein_order16_witness().unwrap().expect("witness");
        assert_eq!(g.len(), 16);
        let image: HashSet<_> = g.iter().map(Mat2::projective_normal_form).collect();
        assert_eq!(image.len(), 4);
        // Klein four-group: nothing of projective order ≥ 3
        assert!(g.iter().all(|m| element_order(m, true) < exceptional_threshold(5).unwrap()));
    }
}
