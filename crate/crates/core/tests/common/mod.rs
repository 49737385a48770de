#![allow(dead_code)]

use std::sync::Arc;

use castleqec::code::{default_budget, InnerProduct};
use castleqec::field::Elem;
use castleqec::{CodeSequence, EvaluationSet, Field, LinearCode, Matrix, PointedCurve};
use num_bigint::BigUint;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    <ChaCha8Rng as rand::SeedableRng>::seed_from_u64(seed)
}

pub fn random_code(f: &Arc<Field>, n: usize, k: usize, rng: &mut ChaCha8Rng) -> LinearCode {
    let q = f.order() as u16;
    let rows: Vec<Vec<Elem>> = (0..k).map(|_| (0..n).map(|_| rng.gen_range(0..q)).collect()).collect();
    LinearCode::from_rows(f, n, &rows).unwrap()
}

pub fn all_subsets(n: usize, k: usize, mut visit: impl FnMut(&[usize]) -> bool) {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, visit: &mut dyn FnMut(&[usize]) -> bool) -> bool {
        if cur.len() == k {
            return visit(cur);
        }
        for j in start..n {
            cur.push(j);
            if !go(j + 1, n, k, cur, visit) {
                return false;
            }
            cur.pop();
        }
        true
    }
    go(0, n, k, &mut Vec::new(), &mut visit);
}

/// Least weight of a nonzero word of `gen`'s dual, up to `max`, found as
/// the smallest set of columns with deficient rank. Returns the weight and
/// one such word.
pub fn dual_distance_by_rank(f: &Field, gen: &Matrix, max: usize) -> Option<(usize, Vec<Elem>)> {
    let (k, n) = (gen.rows(), gen.cols());
    for s in 1..=max.min(n) {
        let mut hit = None;
        all_subsets(n, s, |cols| {
            let rows: Vec<Vec<Elem>> = (0..k).map(|i| cols.iter().map(|&j| gen[(i, j)]).collect()).collect();
            let sub = Matrix::from_rows(&rows, s);
            if sub.rank(f) < s {
                let ker = sub.kernel(f);
                let mut w = vec![0; n];
                for (t, &j) in cols.iter().enumerate() {
                    w[j] = ker[(0, t)];
                }
                hit = Some(w);
                return false;
            }
            true
        });
        if let Some(w) = hit {
            let wt = w.iter().filter(|&&e| e != 0).count();
            return Some((wt, w));
        }
    }
    None
}

/// Every vector of F^n, for tiny ambient spaces.
pub fn ambient(f: &Field, n: usize) -> impl Iterator<Item = Vec<Elem>> + '_ {
    let q = f.order() as u64;
    let total = q.pow(n as u32);
    (0..total).map(move |mut i| {
        (0..n)
            .map(|_| {
                let d = (i % q) as Elem;
                i /= q;
                d
            })
            .collect()
    })
}

fn inner(f: &Field, a: &[Elem], b: &[Elem]) -> Elem {
    a.iter().zip(b).fold(0, |acc, (&x, &y)| f.add(acc, f.mul(x, y)))
}

/// Least weight in `C^perp \ C` (Euclidean) or `C^perp_h \ C` (Hermitian)
/// by scanning the ambient space.
pub fn brute_quantum_distance(c: &LinearCode, mode: InnerProduct) -> Option<u64> {
    let f = c.field();
    let q = f.sqrt_order().unwrap_or(1);
    let gens = c.generator().row_vecs();
    let mut best: Option<u64> = None;
    for v in ambient(f, c.len()) {
        let w = v.iter().filter(|&&e| e != 0).count() as u64;
        if w == 0 || best.is_some_and(|b| w >= b) {
            continue;
        }
        let orth = gens.iter().all(|g| {
            let g2: Vec<Elem> = match mode {
                InnerProduct::Euclidean => g.clone(),
                InnerProduct::Hermitian => g.iter().map(|&e| f.pow(e, q)).collect(),
            };
            inner(f, &v, &g2) == 0
        });
        if orth && !c.contains_word(&v) {
            best = Some(w);
        }
    }
    best
}

fn binom(n: u64, k: u64) -> BigUint {
    let mut num = BigUint::from(1u32);
    let mut den = BigUint::from(1u32);
    for i in 0..k {
        num *= n - i;
        den *= i + 1;
    }
    num / den
}

/// Largest d >= 2 whose GV sum stays below `(q^(n-k+2)-1)/(q^2-1)`, else 1.
pub fn gv_dmax(n: u64, k: u64, q: u64) -> u64 {
    let lhs = (BigUint::from(q).pow((n - k + 2) as u32) - 1u32) / BigUint::from(q * q - 1);
    let mut best = 1;
    for d in 2..=n {
        let rhs: BigUint = (1..d).map(|i| BigUint::from(q * q - 1).pow((i - 1) as u32) * binom(n, i)).sum();
        if lhs > rhs {
            best = d;
        } else {
            break;
        }
    }
    best
}

/// '†', '‡' or ' ' for a triple, by the d_max reading.
pub fn gv_mark(n: u64, k: u64, d: u64, q: u64) -> char {
    if !(n > k && k >= 2 && d >= 2 && (n - k).is_multiple_of(2)) {
        return ' ';
    }
    let m = gv_dmax(n, k, q);
    match d.cmp(&m) {
        std::cmp::Ordering::Equal => '†',
        std::cmp::Ordering::Greater => '‡',
        std::cmp::Ordering::Less => ' ',
    }
}

/// Points of `F(y) = G(x)` by exhaustion, plus the point at infinity.
pub fn count_points(c: &PointedCurve) -> usize {
    let f = c.field();
    let ev = |p: &[Elem], t: Elem| p.iter().rev().fold(0, |acc, &a| f.add(f.mul(acc, t), a));
    let mut count = 1;
    for x in f.elements() {
        let gx = ev(c.g_poly(), x);
        count += f.elements().filter(|&y| ev(c.f_poly(), y) == gx).count();
    }
    count
}

pub fn field(q: u64) -> Arc<Field> {
    Field::of_order(q).unwrap()
}

pub fn sep(q: u64, fy: &[Elem], gx: &[Elem]) -> PointedCurve {
    PointedCurve::sep_variable(&field(q), fy, gx).unwrap()
}

pub fn hermitian(q: u64) -> PointedCurve {
    let mut fy = vec![0; q as usize + 1];
    fy[1] = 1;
    fy[q as usize] = 1;
    let mut gx = vec![0; q as usize + 2];
    gx[q as usize + 1] = 1;
    sep(q * q, &fy, &gx)
}

pub fn elliptic_gf4() -> PointedCurve {
    sep(4, &[0, 1, 1], &[0, 0, 0, 1])
}

/// Curves with n <= 64 across every family, with the fibration used.
pub fn small_curves() -> Vec<(PointedCurve, &'static str)> {
    vec![
        (elliptic_gf4(), "x"),
        (sep(9, &[0, 0, 1], &[0, 1, 0, 1]), "y"),
        (PointedCurve::hyperelliptic(&field(9), &[0, 1, 0, 0, 0, 1]).unwrap(), "x"),
        (sep(16, &[0, 1, 1], &[0, 0, 0, 0, 0, 1]), "x"),
        (hermitian(3), "x"),
        (hermitian(4), "x"),
        (PointedCurve::suzuki(2).unwrap(), "x"),
        (PointedCurve::norm_trace_quotient(2, 4, 3).unwrap(), "x"),
        (PointedCurve::norm_trace_quotient(2, 3, 7).unwrap(), "x"),
        (PointedCurve::norm_trace_quotient(3, 2, 2).unwrap(), "x"),
    ]
}

pub fn eval_set(c: PointedCurve, fib: &str) -> EvaluationSet {
    let c = Arc::new(c);
    let idx = c.generator_index(fib).unwrap();
    c.eval_set(idx, None).unwrap()
}

pub fn sequence(c: PointedCurve, fib: &str) -> (EvaluationSet, CodeSequence) {
    let e = eval_set(c, fib);
    let s = CodeSequence::new(&e).unwrap();
    (e, s)
}

pub fn budget() -> u64 {
    default_budget()
}

pub fn rand_elem(f: &Field, rng: &mut ChaCha8Rng) -> Elem {
    rng.gen_range(0..f.order() as Elem)
}
