//! Arithmetic in small finite fields `F_q`, `q = p^e <= 16`, and the
//! field-reduction view of `F_{q^k}` as a `k`-dimensional `F_q`-space.
//!
//! Elements are dense indices in `0..q`. For prime fields the index is the
//! residue; for `e > 1` the index encodes the coefficients `c_0 + c_1 p + ...`
//! of the reduced polynomial `c_0 + c_1 x + ...`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest field order with a public element API.
pub const MAX_FIELD_ORDER: u32 = 16;

/// Largest extension order admitted by [`FieldReduction`].
pub const MAX_EXTENSION_ORDER: u32 = 4096;

/// An element of some `F_q`, identified by its index.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FieldElement(u8);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    pub(crate) fn from_raw(index: u8) -> Self {
        FieldElement(index)
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Returns `(p, e)` with `n = p^e`, or `None` if `n` is not a prime power.
pub fn prime_power_decomposition(n: u32) -> Option<(u32, u32)> {
    if n < 2 {
        return None;
    }
    let p = (2..=n).find(|d| n % d == 0)?;
    let mut rest = n;
    let mut e = 0;
    while rest % p == 0 {
        rest /= p;
        e += 1;
    }
    (rest == 1).then_some((p, e))
}

/// Minimal field interface used by the polynomial helpers below, so the same
/// irreducibility search runs over `F_p` (to build `F_q`) and over `F_q` (to
/// build `F_{q^k}`).
trait SmallField {
    fn order(&self) -> u32;
    fn add(&self, a: u32, b: u32) -> u32;
    fn mul(&self, a: u32, b: u32) -> u32;
    fn neg(&self, a: u32) -> u32;
}

struct PrimeField(u32);

impl SmallField for PrimeField {
    fn order(&self) -> u32 {
        self.0
    }
    fn add(&self, a: u32, b: u32) -> u32 {
        (a + b) % self.0
    }
    fn mul(&self, a: u32, b: u32) -> u32 {
        (a * b) % self.0
    }
    fn neg(&self, a: u32) -> u32 {
        (self.0 - a) % self.0
    }
}

/// Coefficients low to high; trailing zeros stripped.
type Poly = Vec<u32>;

fn trim(mut a: Poly) -> Poly {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

/// Remainder of `a` modulo the monic polynomial `m`.
fn poly_rem<F: SmallField>(f: &F, a: &[u32], m: &[u32]) -> Poly {
    let mut r = trim(a.to_vec());
    let dm = m.len() - 1;
    while r.len() > dm {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - dm;
        for (i, &c) in m.iter().enumerate() {
            let sub = f.neg(f.mul(lead, c));
            r[shift + i] = f.add(r[shift + i], sub);
        }
        r = trim(r);
    }
    r
}

fn poly_mul<F: SmallField>(f: &F, a: &[u32], b: &[u32]) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = f.add(out[i + j], f.mul(x, y));
        }
    }
    trim(out)
}

/// The monic polynomial of degree `deg` whose lower coefficients are the
/// base-`n` digits of `code`.
fn monic_from_code(code: u32, deg: usize, n: u32) -> Poly {
    let mut c = code;
    let mut out = Vec::with_capacity(deg + 1);
    for _ in 0..deg {
        out.push(c % n);
        c /= n;
    }
    out.push(1);
    out
}

fn is_irreducible<F: SmallField>(f: &F, m: &[u32]) -> bool {
    let deg = m.len() - 1;
    let n = f.order();
    for d in 1..=deg / 2 {
        for code in 0..n.pow(d as u32) {
            let div = monic_from_code(code, d, n);
            if poly_rem(f, m, &div).is_empty() {
                return false;
            }
        }
    }
    true
}

/// Smallest monic irreducible polynomial of degree `deg`, ordered by the
/// integer code `c_0 + c_1 n + ... + c_{deg-1} n^{deg-1}`.
fn smallest_irreducible<F: SmallField>(f: &F, deg: usize) -> Poly {
    let n = f.order();
    (0..n.pow(deg as u32))
        .map(|code| monic_from_code(code, deg, n))
        .find(|m| is_irreducible(f, m))
        .expect("irreducible polynomials exist in every degree")
}

/// A finite field `F_q` with precomputed addition and multiplication tables.
#[derive(Clone, PartialEq, Eq)]
pub struct FieldSpec {
    p: u32,
    e: u32,
    q: u32,
    modulus: Vec<u32>,
    add: Vec<FieldElement>,
    mul: Vec<FieldElement>,
    neg: Vec<FieldElement>,
    inv: Vec<FieldElement>,
}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldSpec")
            .field("p", &self.p)
            .field("e", &self.e)
            .field("q", &self.q)
            .field("modulus", &self.modulus)
            .finish()
    }
}

impl FieldSpec {
    /// Builds `F_q` for a prime power `2 <= q <= 16`. For `e > 1` the
    /// modulus is the smallest monic irreducible of degree `e` over `F_p`.
    pub fn new(q: u32) -> Result<Self> {
        if q > MAX_FIELD_ORDER {
            return Err(Error::OutOfRange(format!("field order {q} exceeds {MAX_FIELD_ORDER}")));
        }
        let (p, e) = prime_power_decomposition(q).ok_or(Error::NotAPrimePower(q))?;
        let prime = PrimeField(p);
        let modulus = if e == 1 {
            vec![0, 1]
        } else {
            smallest_irreducible(&prime, e as usize)
        };

        let digits = |x: u32| -> Poly {
            let mut c = x;
            (0..e)
                .map(|_| {
                    let d = c % p;
                    c /= p;
                    d
                })
                .collect()
        };
        let encode = |poly: &[u32]| -> u32 { poly.iter().rev().fold(0, |acc, &c| acc * p + c) };

        let n = q as usize;
        let mut add = vec![FieldElement::ZERO; n * n];
        let mut mul = vec![FieldElement::ZERO; n * n];
        for a in 0..q {
            let da = digits(a);
            for b in 0..q {
                let db = digits(b);
                let sum: Poly = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                let prod = if e == 1 {
                    vec![(a * b) % p]
                } else {
                    poly_rem(&prime, &poly_mul(&prime, &trim(da.clone()), &trim(db.clone())), &modulus)
                };
                add[a as usize * n + b as usize] = FieldElement(encode(&sum) as u8);
                mul[a as usize * n + b as usize] = FieldElement(encode(&prod) as u8);
            }
        }
        let mut neg = vec![FieldElement::ZERO; n];
        let mut inv = vec![FieldElement::ZERO; n];
        for a in 0..n {
            for b in 0..n {
                if add[a * n + b] == FieldElement::ZERO {
                    neg[a] = FieldElement(b as u8);
                }
                if mul[a * n + b] == FieldElement::ONE {
                    inv[a] = FieldElement(b as u8);
                }
            }
        }
        Ok(FieldSpec { p, e, q, modulus, add, mul, neg, inv })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn e(&self) -> u32 {
        self.e
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    /// Coefficients (low to high, length `e + 1`) of the defining polynomial.
    /// For prime fields this is `x`.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement::ZERO
    }

    pub fn one(&self) -> FieldElement {
        FieldElement::ONE
    }

    pub fn element(&self, index: u32) -> Result<FieldElement> {
        if index < self.q {
            Ok(FieldElement(index as u8))
        } else {
            Err(Error::OutOfRange(format!("element index {index} in F_{}", self.q)))
        }
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElement> {
        (0..self.q as u8).map(FieldElement)
    }

    #[inline]
    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add[a.index() * self.q as usize + b.index()]
    }

    #[inline]
    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.mul[a.index() * self.q as usize + b.index()]
    }

    #[inline]
    pub fn neg(&self, a: FieldElement) -> FieldElement {
        self.neg[a.index()]
    }

    #[inline]
    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    pub fn inv(&self, a: FieldElement) -> Result<FieldElement> {
        if a.is_zero() {
            Err(Error::DivisionByZero)
        } else {
            Ok(self.inv[a.index()])
        }
    }

    /// Inverse of an element the caller knows to be nonzero.
    #[inline]
    pub(crate) fn inv_nonzero(&self, a: FieldElement) -> FieldElement {
        debug_assert!(!a.is_zero());
        self.inv[a.index()]
    }

    pub fn div(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: FieldElement, mut exp: u64) -> FieldElement {
        let mut base = a;
        let mut acc = FieldElement::ONE;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Human-readable polynomial for an element, e.g. `x+1`.
    pub fn render(&self, a: FieldElement) -> String {
        if self.e == 1 {
            return a.to_string();
        }
        let mut c = a.index() as u32;
        let mut terms = Vec::new();
        for i in 0..self.e {
            let d = c % self.p;
            c /= self.p;
            if d != 0 {
                let coeff = if d == 1 && i > 0 { String::new() } else { d.to_string() };
                terms.push(match i {
                    0 => coeff,
                    1 => format!("{coeff}x"),
                    _ => format!("{coeff}x^{i}"),
                });
            }
        }
        if terms.is_empty() {
            "0".into()
        } else {
            terms.reverse();
            terms.join("+")
        }
    }
}

impl SmallField for FieldSpec {
    fn order(&self) -> u32 {
        self.q
    }
    fn add(&self, a: u32, b: u32) -> u32 {
        FieldSpec::add(self, FieldElement(a as u8), FieldElement(b as u8)).0 as u32
    }
    fn mul(&self, a: u32, b: u32) -> u32 {
        FieldSpec::mul(self, FieldElement(a as u8), FieldElement(b as u8)).0 as u32
    }
    fn neg(&self, a: u32) -> u32 {
        FieldSpec::neg(self, FieldElement(a as u8)).0 as u32
    }
}

/// Row-major square matrix over the base field.
pub type BaseMatrix = Vec<Vec<FieldElement>>;

/// `F_{q^k}` viewed as `F_q^k`: for every extension element, the `k x k`
/// matrix of multiplication by it.
///
/// Extension elements are indexed by `c_0 + c_1 q + ... + c_{k-1} q^{k-1}`
/// where `c_i` are base-field indices of the coordinates with respect to
/// `1, x, ..., x^{k-1}`. Matrices act on coordinate column vectors, so
/// `coords(a*b) = M_a * coords(b)`.
#[derive(Clone, Debug)]
pub struct FieldReduction {
    base: FieldSpec,
    k: usize,
    ext_order: u32,
    ext_modulus: Vec<FieldElement>,
    mul_matrices: Vec<BaseMatrix>,
}

impl FieldReduction {
    pub fn new(q: u32, k: usize) -> Result<Self> {
        let base = FieldSpec::new(q)?;
        if k == 0 {
            return Err(Error::OutOfRange("extension degree 0".into()));
        }
        let ext_order = (q as u64).checked_pow(k as u32).filter(|&n| n <= MAX_EXTENSION_ORDER as u64);
        let ext_order = ext_order.ok_or_else(|| {
            Error::OutOfRange(format!("extension F_{q}^{k} exceeds {MAX_EXTENSION_ORDER} elements"))
        })? as u32;

        let modulus: Poly = if k == 1 { vec![0, 1] } else { smallest_irreducible(&base, k) };
        let coords = |idx: u32| -> Poly {
            let mut c = idx;
            (0..k)
                .map(|_| {
                    let d = c % q;
                    c /= q;
                    d
                })
                .collect()
        };

        let mut mul_matrices = Vec::with_capacity(ext_order as usize);
        for a in 0..ext_order {
            let pa = trim(coords(a));
            let mut m = vec![vec![FieldElement::ZERO; k]; k];
            for j in 0..k {
                let mut xj = vec![0; j + 1];
                xj[j] = 1;
                let col = poly_rem(&base, &poly_mul(&base, &pa, &xj), &modulus);
                for (r, &c) in col.iter().enumerate() {
                    m[r][j] = FieldElement(c as u8);
                }
            }
            mul_matrices.push(m);
        }
        let ext_modulus = modulus.iter().map(|&c| FieldElement(c as u8)).collect();
        Ok(FieldReduction { base, k, ext_order, ext_modulus, mul_matrices })
    }

    pub fn base(&self) -> &FieldSpec {
        &self.base
    }

    pub fn degree(&self) -> usize {
        self.k
    }

    /// `q^k`.
    pub fn ext_order(&self) -> u32 {
        self.ext_order
    }

    /// Monic irreducible polynomial over `F_q` defining the extension.
    pub fn ext_modulus(&self) -> &[FieldElement] {
        &self.ext_modulus
    }

    pub fn mul_matrices(&self) -> &[BaseMatrix] {
        &self.mul_matrices
    }

    pub fn mul_matrix(&self, element: u32) -> &BaseMatrix {
        &self.mul_matrices[element as usize]
    }

    /// Coordinates of an extension element over the base field.
    pub fn coords(&self, element: u32) -> Vec<FieldElement> {
        let mut c = element;
        let q = self.base.q;
        (0..self.k)
            .map(|_| {
                let d = c % q;
                c /= q;
                FieldElement(d as u8)
            })
            .collect()
    }

    /// Product of two base-field matrices (helper for homomorphism checks).
    pub fn matmul(&self, a: &BaseMatrix, b: &BaseMatrix) -> BaseMatrix {
        let f = &self.base;
        let k = self.k;
        let mut out = vec![vec![FieldElement::ZERO; k]; k];
        for i in 0..k {
            for j in 0..k {
                let mut acc = FieldElement::ZERO;
                for l in 0..k {
                    acc = f.add(acc, f.mul(a[i][l], b[l][j]));
                }
                out[i][j] = acc;
            }
        }
        out
    }

    /// Product in `F_{q^k}` via the multiplication matrices.
    pub fn ext_mul(&self, a: u32, b: u32) -> u32 {
        let f = &self.base;
        let m = &self.mul_matrices[a as usize];
        let cb = self.coords(b);
        let q = f.q;
        (0..self.k).rev().fold(0u32, |acc, r| {
            let mut s = FieldElement::ZERO;
            for (j, &c) in cb.iter().enumerate() {
                s = f.add(s, f.mul(m[r][j], c));
            }
            acc * q + s.index() as u32
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_basics() {
        let f2 = FieldSpec::new(2).unwrap();
        assert_eq!((f2.p(), f2.e()), (2, 1));
        let f3 = FieldSpec::new(3).unwrap();
        let two = f3.element(2).unwrap();
        assert_eq!(f3.mul(two, two), FieldElement::ONE);
        let f5 = FieldSpec::new(5).unwrap();
        assert_eq!(f5.inv(f5.element(2).unwrap()).unwrap().index(), 3);
    }

    #[test]
    fn rejects_bad_orders() {
        assert_eq!(FieldSpec::new(6).unwrap_err(), Error::NotAPrimePower(6));
        assert_eq!(FieldSpec::new(12).unwrap_err(), Error::NotAPrimePower(12));
        assert_eq!(FieldSpec::new(1).unwrap_err(), Error::NotAPrimePower(1));
        assert!(matches!(FieldSpec::new(17), Err(Error::OutOfRange(_))));
        assert_eq!(FieldSpec::new(3).unwrap().inv(FieldElement::ZERO), Err(Error::DivisionByZero));
    }

    /// All monic quadratics over F_2, filtered by "has no root".
    #[test]
    fn f4_modulus_is_the_only_irreducible_quadratic() {
        let irreducible: Vec<[u32; 3]> = (0..4u32)
            .map(|c| [c & 1, c >> 1, 1])
            .filter(|m| (0..2u32).all(|x| (m[0] + m[1] * x + x * x) % 2 != 0))
            .collect();
        assert_eq!(irreducible, vec![[1, 1, 1]]);
        let f4 = FieldSpec::new(4).unwrap();
        assert_eq!(f4.modulus(), &[1, 1, 1]);
        assert_eq!((f4.p(), f4.e()), (2, 2));
    }

    #[test]
    fn f4_x_times_x_is_x_plus_one() {
        let f4 = FieldSpec::new(4).unwrap();
        let x = f4.element(2).unwrap();
        assert_eq!(f4.mul(x, x).index(), 3);
        assert_eq!(f4.render(f4.mul(x, x)), "x+1");
    }

    #[test]
    fn moduli_are_the_conventional_small_ones() {
        assert_eq!(FieldSpec::new(8).unwrap().modulus(), &[1, 1, 0, 1]);
        assert_eq!(FieldSpec::new(9).unwrap().modulus(), &[1, 0, 1]);
        assert_eq!(FieldSpec::new(16).unwrap().modulus(), &[1, 1, 0, 0, 1]);
    }

    #[test]
    fn field_axioms_exhaustively() {
        for q in [2, 3, 4, 5, 7, 8, 9, 11, 13, 16] {
            let f = FieldSpec::new(q).unwrap();
            let els: Vec<_> = f.elements().collect();
            for &a in &els {
                assert_eq!(f.add(a, f.zero()), a);
                assert_eq!(f.mul(a, f.one()), a);
                assert_eq!(f.add(a, f.neg(a)), f.zero());
                assert_eq!(f.pow(a, q as u64), a, "Frobenius in F_{q}");
                if !a.is_zero() {
                    assert_eq!(f.mul(a, f.inv(a).unwrap()), f.one());
                }
                for &b in &els {
                    assert_eq!(f.add(a, b), f.add(b, a));
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    for &c in &els {
                        assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                        assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                    }
                }
            }
        }
    }

    fn rank(f: &FieldSpec, m: &BaseMatrix) -> usize {
        let mut m = m.clone();
        let (rows, cols) = (m.len(), m[0].len());
        let mut r = 0;
        for c in 0..cols {
            let Some(pivot) = (r..rows).find(|&i| !m[i][c].is_zero()) else { continue };
            m.swap(r, pivot);
            let inv = f.inv(m[r][c]).unwrap();
            for i in 0..rows {
                if i != r && !m[i][c].is_zero() {
                    let factor = f.mul(m[i][c], inv);
                    for j in 0..cols {
                        m[i][j] = f.sub(m[i][j], f.mul(factor, m[r][j]));
                    }
                }
            }
            r += 1;
        }
        r
    }

    #[test]
    fn reduction_2_2_is_cyclic_of_order_three() {
        let fr = FieldReduction::new(2, 2).unwrap();
        let one = fr.mul_matrix(1).clone();
        for a in 2..4 {
            let m = fr.mul_matrix(a);
            assert_ne!(m, &one);
            let cube = fr.matmul(&fr.matmul(m, m), m);
            assert_eq!(cube, one);
        }
    }

    #[test]
    fn reduction_degree_one_is_scalar() {
        for q in [2, 3, 4, 5] {
            let fr = FieldReduction::new(q, 1).unwrap();
            for (a, m) in fr.mul_matrices().iter().enumerate() {
                assert_eq!(m, &vec![vec![FieldElement(a as u8)]]);
            }
        }
    }

    #[test]
    fn reduction_2_3_has_seven_invertible_matrices() {
        let fr = FieldReduction::new(2, 3).unwrap();
        assert_eq!(fr.mul_matrices().len(), 8);
        let invertible = fr.mul_matrices().iter().filter(|m| rank(fr.base(), m) == 3).count();
        assert_eq!(invertible, 7);
    }

    #[test]
    fn reduction_is_a_ring_homomorphism() {
        for (q, k) in [(2, 2), (2, 3), (2, 4), (2, 5), (2, 6), (3, 2), (3, 3), (4, 2), (4, 3), (8, 2)] {
            let fr = FieldReduction::new(q, k).unwrap();
            let f = fr.base();
            let n = fr.ext_order();
            assert!(fr.mul_matrix(0).iter().flatten().all(|x| x.is_zero()));
            for a in 0..n {
                for b in 0..n {
                    let ab = fr.ext_mul(a, b);
                    assert_eq!(fr.mul_matrix(ab), &fr.matmul(fr.mul_matrix(a), fr.mul_matrix(b)));
                    // additivity
                    let sum: Vec<_> = fr.coords(a).iter().zip(fr.coords(b)).map(|(&x, y)| f.add(x, y)).collect();
                    let sum_idx = sum.iter().rev().fold(0u32, |acc, c| acc * q + c.index() as u32);
                    let expect: BaseMatrix = (0..k)
                        .map(|i| (0..k).map(|j| f.add(fr.mul_matrix(a)[i][j], fr.mul_matrix(b)[i][j])).collect())
                        .collect();
                    assert_eq!(fr.mul_matrix(sum_idx), &expect);
                }
            }
            for a in 1..n {
                assert_eq!(rank(f, fr.mul_matrix(a)), k);
            }
        }
    }

    #[test]
    fn reduction_budget() {
        assert!(FieldReduction::new(2, 12).is_ok());
        assert!(matches!(FieldReduction::new(2, 13), Err(Error::OutOfRange(_))));
        assert!(matches!(FieldReduction::new(16, 4), Err(Error::OutOfRange(_))));
    }
}
