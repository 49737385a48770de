//! Table-driven arithmetic in GF(p^k) for p^k <= 1024.
//!
//! An element is stored as its integer index: the coefficients of its
//! polynomial representative in base p, lowest degree in the least
//! significant digit. The prime subfield is therefore the index range
//! `0..p`, in every extension.
//!
//! Each (p, k) has exactly one representation: the modulus is the
//! lexicographically smallest monic irreducible polynomial of degree k
//! (coefficient tuples compared low degree first), and the designated
//! primitive element is the smallest index of multiplicative order p^k - 1.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest supported field order.
pub const MAX_ORDER: usize = 1024;

/// Raw element index. Hot loops work on these directly; [`FieldElement`]
/// is the checked wrapper.
pub type Elem = u16;

#[derive(Clone)]
pub struct Field {
    p: u32,
    k: u32,
    order: usize,
    modulus: Vec<u32>,
    primitive: Elem,
    exp: Vec<Elem>,
    log: Vec<u32>,
    add: Vec<Elem>,
    neg: Vec<Elem>,
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{})", self.p, self.k)
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.k == other.k
    }
}

impl Eq for Field {}

/// JSON form of a field: `{"p":int, "k":int, "modulus":[int,...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldDescriptor {
    pub p: u32,
    pub k: u32,
    /// Monic modulus coefficients, low degree first, including the leading 1.
    #[serde(default)]
    pub modulus: Vec<u32>,
}

pub fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

// Polynomials over GF(p) as coefficient vectors, low degree first.

fn poly_trim(a: &mut Vec<u32>) {
    while a.len() > 1 && *a.last().unwrap() == 0 {
        a.pop();
    }
}

fn poly_rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    // m is monic
    let mut r = a.to_vec();
    poly_trim(&mut r);
    let dm = m.len() - 1;
    while r.len() > dm && !(r.len() == 1 && r[0] == 0) {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - dm;
        for (i, &c) in m.iter().enumerate() {
            let idx = i + shift;
            r[idx] = (r[idx] + p - (lead * c) % p) % p;
        }
        poly_trim(&mut r);
        if r.len() - 1 < dm {
            break;
        }
    }
    r
}

fn is_irreducible(m: &[u32], p: u32) -> bool {
    let k = m.len() - 1;
    if k <= 1 {
        return true;
    }
    // trial division by every monic polynomial of degree 1..=k/2
    for d in 1..=k / 2 {
        let count = (p as usize).pow(d as u32);
        for idx in 0..count {
            let mut div = Vec::with_capacity(d + 1);
            let mut t = idx;
            for _ in 0..d {
                div.push((t % p as usize) as u32);
                t /= p as usize;
            }
            div.push(1);
            let r = poly_rem(m, &div, p);
            if r.iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

/// Lexicographically smallest monic irreducible polynomial of degree `k`,
/// comparing coefficient tuples (c0, c1, ..., c_{k-1}) with c0 first.
fn smallest_irreducible(p: u32, k: u32) -> Vec<u32> {
    let k = k as usize;
    let count = (p as usize).pow(k as u32);
    for idx in 0..count {
        // c0 is the most significant digit of the enumeration counter
        let mut coeffs = vec![0u32; k + 1];
        let mut t = idx;
        for i in (0..k).rev() {
            coeffs[i] = (t % p as usize) as u32;
            t /= p as usize;
        }
        coeffs[k] = 1;
        if is_irreducible(&coeffs, p) {
            return coeffs;
        }
    }
    unreachable!("an irreducible polynomial of every degree exists")
}

fn digits(mut v: usize, p: u32, k: u32) -> Vec<u32> {
    let mut d = Vec::with_capacity(k as usize);
    for _ in 0..k {
        d.push((v % p as usize) as u32);
        v /= p as usize;
    }
    d
}

fn undigits(d: &[u32], p: u32) -> usize {
    d.iter().rev().fold(0usize, |acc, &c| acc * p as usize + c as usize)
}

fn mul_slow(a: usize, b: usize, p: u32, k: u32, modulus: &[u32]) -> usize {
    let da = digits(a, p, k);
    let db = digits(b, p, k);
    let mut prod = vec![0u32; 2 * k as usize];
    for (i, &x) in da.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in db.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    let mut r = poly_rem(&prod, modulus, p);
    r.resize(k as usize, 0);
    undigits(&r, p)
}

impl Field {
    /// Builds GF(p^k) with the canonical representation.
    pub fn make(p: u32, k: u32) -> Result<Arc<Field>> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if k == 0 {
            return Err(Error::UnsupportedField(format!("extension degree 0 over GF({p})")));
        }
        let order = (p as u64).checked_pow(k).unwrap_or(u64::MAX);
        if order > MAX_ORDER as u64 {
            return Err(Error::UnsupportedField(format!("GF({p}^{k}) exceeds the supported order {MAX_ORDER}")));
        }
        let order = order as usize;
        let modulus = smallest_irreducible(p, k);

        let mut primitive = None;
        let mut exp = Vec::new();
        for g in 1..order {
            let mut powers = Vec::with_capacity(order - 1);
            let mut cur = 1usize;
            loop {
                powers.push(cur as Elem);
                cur = mul_slow(cur, g, p, k, &modulus);
                if cur == 1 {
                    break;
                }
            }
            if powers.len() == order - 1 {
                primitive = Some(g as Elem);
                exp = powers;
                break;
            }
        }
        let primitive = primitive.expect("multiplicative group is cyclic");
        let mut log = vec![u32::MAX; order];
        for (i, &e) in exp.iter().enumerate() {
            log[e as usize] = i as u32;
        }
        // doubled so products of logs index without a reduction
        let mut exp2 = exp.clone();
        exp2.extend_from_slice(&exp);

        // characteristic 2 adds by xor and needs no table
        let mut add = vec![0 as Elem; if p == 2 { 0 } else { order * order }];
        let mut neg = vec![0 as Elem; order];
        for a in 0..order {
            let da = digits(a, p, k);
            let dn: Vec<u32> = da.iter().map(|&c| (p - c) % p).collect();
            neg[a] = undigits(&dn, p) as Elem;
            if p == 2 {
                continue;
            }
            for b in 0..order {
                let db = digits(b, p, k);
                let s: Vec<u32> = da.iter().zip(&db).map(|(&x, &y)| (x + y) % p).collect();
                add[a * order + b] = undigits(&s, p) as Elem;
            }
        }

        Ok(Arc::new(Field { p, k, order, modulus, primitive, exp: exp2, log, add, neg }))
    }

    /// Field of order `q`, which must be a prime power.
    pub fn of_order(q: u64) -> Result<Arc<Field>> {
        let (p, k) = prime_power(q).ok_or_else(|| Error::UnsupportedField(format!("{q} is not a prime power")))?;
        Field::make(p, k)
    }

    pub fn from_descriptor(d: &FieldDescriptor) -> Result<Arc<Field>> {
        let f = Field::make(d.p, d.k)?;
        if !d.modulus.is_empty() && d.modulus != f.modulus {
            return Err(Error::UnsupportedField(format!(
                "modulus {:?} for GF({}^{}) differs from the canonical {:?}",
                d.modulus, d.p, d.k, f.modulus
            )));
        }
        Ok(f)
    }

    pub fn descriptor(&self) -> FieldDescriptor {
        FieldDescriptor { p: self.p, k: self.k, modulus: self.modulus.clone() }
    }

    #[inline]
    pub fn characteristic(&self) -> u32 {
        self.p
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.k
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    #[inline]
    pub fn primitive(&self) -> Elem {
        self.primitive
    }

    /// Iterator over every element index.
    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        (0..self.order as u32).map(|e| e as Elem)
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        if self.p == 2 {
            a ^ b
        } else {
            self.add[a as usize * self.order + b as usize]
        }
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        self.neg[a as usize]
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        if a == 0 || b == 0 {
            0
        } else {
            self.exp[(self.log[a as usize] + self.log[b as usize]) as usize]
        }
    }

    /// Multiplicative inverse; panics on zero.
    #[inline]
    pub fn inv(&self, a: Elem) -> Elem {
        assert!(a != 0, "zero has no inverse");
        let l = self.log[a as usize];
        let n = (self.order - 1) as u32;
        self.exp[((n - l) % n) as usize]
    }

    #[inline]
    pub fn div(&self, a: Elem, b: Elem) -> Elem {
        self.mul(a, self.inv(b))
    }

    /// `a^e` for any nonnegative exponent (0^0 = 1).
    pub fn pow(&self, a: Elem, e: u64) -> Elem {
        if e == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let n = (self.order - 1) as u64;
        let l = (self.log[a as usize] as u64 * (e % n)) % n;
        self.exp[l as usize]
    }

    /// Discrete logarithm to the designated primitive element.
    pub fn log(&self, a: Elem) -> Option<u32> {
        (a != 0).then(|| self.log[a as usize])
    }

    /// `primitive^e`.
    pub fn exp(&self, e: u64) -> Elem {
        self.exp[(e % (self.order as u64 - 1)) as usize]
    }

    /// Multiplicative order of a nonzero element.
    pub fn mult_order(&self, a: Elem) -> u64 {
        let n = (self.order - 1) as u64;
        let l = self.log[a as usize] as u64;
        n / gcd(n, l)
    }

    /// The integer `c` (reduced mod p) as a prime-field element.
    pub fn from_int(&self, c: i64) -> Elem {
        c.rem_euclid(self.p as i64) as Elem
    }

    /// Validates that `q` is the order of a subfield; returns its degree over GF(p).
    pub fn subfield_degree(&self, q: u64) -> Result<u32> {
        match prime_power(q) {
            Some((p, j)) if p == self.p && self.k.is_multiple_of(j) => Ok(j),
            _ => Err(Error::InvalidSubfield { q, field: format!("{self:?}") }),
        }
    }

    /// `e^q` for a subfield order `q`.
    pub fn frobenius(&self, e: Elem, q: u64) -> Result<Elem> {
        self.subfield_degree(q)?;
        Ok(self.pow(e, q))
    }

    /// Relative trace to GF(q), returned inside this field.
    pub fn trace(&self, e: Elem, q: u64) -> Result<Elem> {
        let j = self.subfield_degree(q)?;
        Ok(self.trace_unchecked(e, q, (self.k / j) as usize))
    }

    #[inline]
    pub(crate) fn trace_unchecked(&self, e: Elem, q: u64, r: usize) -> Elem {
        let mut acc = 0;
        let mut cur = e;
        for _ in 0..r {
            acc = self.add(acc, cur);
            cur = self.pow(cur, q);
        }
        acc
    }

    /// True iff `e^q = e`.
    pub fn in_subfield(&self, e: Elem, q: u64) -> bool {
        self.pow(e, q) == e
    }

    pub fn is_square(&self, e: Elem) -> bool {
        if e == 0 || self.p == 2 {
            return true;
        }
        self.log[e as usize].is_multiple_of(2)
    }

    /// Square order q^2 -> q, when the order is a square.
    pub fn sqrt_order(&self) -> Option<u64> {
        self.k.is_multiple_of(2).then(|| (self.p as u64).pow(self.k / 2))
    }

    pub fn element(self: &Arc<Self>, value: Elem) -> FieldElement {
        assert!((value as usize) < self.order);
        FieldElement { field: Arc::clone(self), value }
    }
}

pub(crate) fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Decomposes `q = p^k`.
pub fn prime_power(q: u64) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2u64;
    while p * p <= q {
        if q.is_multiple_of(p) {
            break;
        }
        p += 1;
    }
    if !q.is_multiple_of(p) {
        p = q;
    }
    let mut k = 0;
    let mut t = q;
    while t.is_multiple_of(p) {
        t /= p;
        k += 1;
    }
    (t == 1).then_some((p as u32, k))
}

/// A field element bound to its field. Mixing fields is an error.
#[derive(Clone, PartialEq, Eq)]
pub struct FieldElement {
    field: Arc<Field>,
    value: Elem,
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}@{:?}", self.value, self.field)
    }
}

impl FieldElement {
    pub fn value(&self) -> Elem {
        self.value
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }

    fn same_field(&self, other: &FieldElement) -> Result<()> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(Error::FieldMismatch(format!("{:?}", self.field), format!("{:?}", other.field)))
        }
    }

    pub fn try_add(&self, other: &FieldElement) -> Result<FieldElement> {
        self.same_field(other)?;
        Ok(self.field.element(self.field.add(self.value, other.value)))
    }

    pub fn try_sub(&self, other: &FieldElement) -> Result<FieldElement> {
        self.same_field(other)?;
        Ok(self.field.element(self.field.sub(self.value, other.value)))
    }

    pub fn try_mul(&self, other: &FieldElement) -> Result<FieldElement> {
        self.same_field(other)?;
        Ok(self.field.element(self.field.mul(self.value, other.value)))
    }

    pub fn pow(&self, e: u64) -> FieldElement {
        self.field.element(self.field.pow(self.value, e))
    }

    pub fn frobenius(&self, q: u64) -> Result<FieldElement> {
        Ok(self.field.element(self.field.frobenius(self.value, q)?))
    }

    pub fn is_square(&self) -> bool {
        self.field.is_square(self.value)
    }

    /// Relative trace to GF(q), expressed in the standalone field GF(q).
    pub fn trace(&self, q: u64) -> Result<FieldElement> {
        let small = Field::of_order(q)?;
        let emb = Embedding::new(&small, &self.field)?;
        let t = self.field.trace(self.value, q)?;
        Ok(small.element(emb.preimage(t).expect("trace lies in the subfield")))
    }

    /// Canonical image in a larger field.
    pub fn embed(&self, target: &Arc<Field>) -> Result<FieldElement> {
        let emb = Embedding::new(&self.field, target)?;
        Ok(target.element(emb.apply(self.value)))
    }
}

/// Canonical embedding GF(p^m) -> GF(p^k), m | k: the small primitive
/// element goes to the smallest-index root of its minimal polynomial.
#[derive(Clone, Debug)]
pub struct Embedding {
    small: Arc<Field>,
    big: Arc<Field>,
    forward: Vec<Elem>,
    backward: Vec<Option<Elem>>,
}

impl Embedding {
    pub fn new(small: &Arc<Field>, big: &Arc<Field>) -> Result<Embedding> {
        if small.p != big.p || !big.k.is_multiple_of(small.k) {
            return Err(Error::NotASubfield { small: format!("{small:?}"), big: format!("{big:?}") });
        }
        // minimal polynomial of the small primitive element over GF(p);
        // its coefficients are prime-field indices in either field
        let g = small.primitive;
        let mut minpoly: Vec<Elem> = vec![1];
        let mut conj = g;
        loop {
            // minpoly *= (X - conj)
            let mut next = vec![0; minpoly.len() + 1];
            for (i, &c) in minpoly.iter().enumerate() {
                next[i + 1] = small.add(next[i + 1], c);
                next[i] = small.sub(next[i], small.mul(c, conj));
            }
            minpoly = next;
            conj = small.pow(conj, small.p as u64);
            if conj == g {
                break;
            }
        }
        debug_assert!(minpoly.iter().all(|&c| (c as u32) < small.p));
        let root = big
            .elements()
            .find(|&b| {
                let mut acc = 0;
                for &c in minpoly.iter().rev() {
                    acc = big.add(big.mul(acc, b), c);
                }
                acc == 0
            })
            .expect("subfield contains a root");
        let mut forward = vec![0; small.order];
        let mut backward = vec![None; big.order];
        backward[0] = Some(0);
        for e in 0..small.order - 1 {
            let s = small.exp(e as u64);
            let b = big.pow(root, e as u64);
            forward[s as usize] = b;
            backward[b as usize] = Some(s);
        }
        Ok(Embedding { small: Arc::clone(small), big: Arc::clone(big), forward, backward })
    }

    pub fn small(&self) -> &Arc<Field> {
        &self.small
    }

    pub fn big(&self) -> &Arc<Field> {
        &self.big
    }

    #[inline]
    pub fn apply(&self, e: Elem) -> Elem {
        self.forward[e as usize]
    }

    /// Small-field element mapping to `e`, if `e` lies in the image.
    #[inline]
    pub fn preimage(&self, e: Elem) -> Option<Elem> {
        self.backward[e as usize]
    }
}
