//! Univariate polynomials over a table field, coefficients low degree first.

use crate::field::{Elem, Field};

pub fn trim(mut a: Vec<Elem>) -> Vec<Elem> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

/// Degree, or None for the zero polynomial.
pub fn degree(a: &[Elem]) -> Option<usize> {
    a.iter().rposition(|&c| c != 0)
}

pub fn eval(f: &Field, a: &[Elem], x: Elem) -> Elem {
    a.iter().rev().fold(0, |acc, &c| f.add(f.mul(acc, x), c))
}

pub fn mul(f: &Field, a: &[Elem], b: &[Elem]) -> Vec<Elem> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = f.add(out[i + j], f.mul(x, y));
        }
    }
    trim(out)
}

pub fn derivative(f: &Field, a: &[Elem]) -> Vec<Elem> {
    let out = a.iter().enumerate().skip(1).map(|(i, &c)| f.mul(c, f.from_int(i as i64))).collect();
    trim(out)
}

pub fn rem(f: &Field, a: &[Elem], b: &[Elem]) -> Vec<Elem> {
    let db = degree(b).expect("division by zero polynomial");
    let inv = f.inv(b[db]);
    let mut r = trim(a.to_vec());
    while let Some(dr) = degree(&r) {
        if dr < db {
            break;
        }
        let c = f.mul(r[dr], inv);
        for (i, &bc) in b[..=db].iter().enumerate() {
            let idx = dr - db + i;
            r[idx] = f.sub(r[idx], f.mul(c, bc));
        }
        r = trim(r);
    }
    r
}

/// Monic gcd.
pub fn gcd(f: &Field, a: &[Elem], b: &[Elem]) -> Vec<Elem> {
    let mut a = trim(a.to_vec());
    let mut b = trim(b.to_vec());
    while degree(&b).is_some() {
        let r = rem(f, &a, &b);
        a = b;
        b = r;
    }
    match degree(&a) {
        None => vec![],
        Some(d) => {
            let inv = f.inv(a[d]);
            a.iter().map(|&c| f.mul(c, inv)).collect()
        }
    }
}

/// `prod (T - r)` over the given roots.
pub fn from_roots(f: &Field, roots: &[Elem]) -> Vec<Elem> {
    roots.iter().fold(vec![1], |acc, &r| mul(f, &acc, &[f.neg(r), 1]))
}
