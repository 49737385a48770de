//! Linear codes held as RREF generator matrices, with exact weight
//! enumeration under a budget, the MacWilliams transform, duals, star
//! products, trace codes and subfield subcodes.

use std::sync::Arc;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{Elem, Embedding, Field, FieldDescriptor};
use crate::matrix::{dot, Matrix};

/// Default cap on enumerated codewords.
pub const DEFAULT_BUDGET: u64 = 1 << 24;

/// Enumeration budget: `CASTLEQEC_BUDGET` if set to an integer, else 2^24.
pub fn default_budget() -> u64 {
    std::env::var("CASTLEQEC_BUDGET").ok().and_then(|s| s.trim().parse().ok()).unwrap_or(DEFAULT_BUDGET)
}

/// `q^k`, or None when it does not fit in a u64.
pub fn word_count(q: u64, k: usize) -> Option<u64> {
    q.checked_pow(u32::try_from(k).ok()?)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum InnerProduct {
    Euclidean,
    Hermitian,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "status", content = "value")]
pub enum MinWeight {
    Exact(u64),
    Empty,
    NotComputed,
}

impl MinWeight {
    pub fn exact(self) -> Option<u64> {
        match self {
            MinWeight::Exact(d) => Some(d),
            _ => None,
        }
    }
}

/// Result of a dependent-column search on a generator matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DualSearch {
    /// A lightest nonzero dual codeword, first nonzero entry 1, least
    /// support among those of its weight.
    Found(Vec<Elem>),
    /// No nonzero dual codeword has weight at most this.
    Clear(usize),
}

/// Weight distribution `A_0..=A_n`.
pub type WeightDistribution = Vec<BigUint>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearCode {
    field: Arc<Field>,
    n: usize,
    gen: Matrix,
}

impl LinearCode {
    pub fn from_rows(field: &Arc<Field>, n: usize, rows: &[Vec<Elem>]) -> Result<LinearCode> {
        for r in rows {
            if r.len() != n {
                return Err(Error::Dimension(format!("row of length {} in a code of length {n}", r.len())));
            }
            if r.iter().any(|&e| e as usize >= field.order()) {
                return Err(Error::Invalid(format!("element out of range for {field:?}")));
            }
        }
        Ok(LinearCode::from_matrix(field, Matrix::from_rows(rows, n)))
    }

    pub fn from_matrix(field: &Arc<Field>, mut m: Matrix) -> LinearCode {
        m.rref(field);
        LinearCode { field: Arc::clone(field), n: m.cols(), gen: m }
    }

    pub fn zero(field: &Arc<Field>, n: usize) -> LinearCode {
        LinearCode::from_matrix(field, Matrix::zeros(0, n))
    }

    pub fn full(field: &Arc<Field>, n: usize) -> LinearCode {
        LinearCode::from_matrix(field, Matrix::identity(n))
    }

    pub fn repetition(field: &Arc<Field>, n: usize) -> LinearCode {
        LinearCode::from_matrix(field, Matrix::from_rows(&[vec![1; n]], n))
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn dim(&self) -> usize {
        self.gen.rows()
    }

    pub fn generator(&self) -> &Matrix {
        &self.gen
    }

    pub fn dual(&self) -> LinearCode {
        LinearCode::from_matrix(&self.field, self.gen.kernel(&self.field))
    }

    /// Entrywise `q`-th power of every codeword.
    pub fn frobenius(&self, q: u64) -> Result<LinearCode> {
        self.field.subfield_degree(q)?;
        let f = &self.field;
        Ok(LinearCode::from_matrix(f, self.gen.map(|e| f.pow(e, q))))
    }

    fn sqrt_order(&self) -> Result<u64> {
        self.field
            .sqrt_order()
            .ok_or_else(|| Error::UnsupportedField(format!("{:?} has no Hermitian form", self.field)))
    }

    /// `(C^q)^perp` over GF(q^2).
    pub fn hermitian_dual(&self) -> Result<LinearCode> {
        let q = self.sqrt_order()?;
        Ok(self.frobenius(q)?.dual())
    }

    pub fn star(&self, x: &TwistVector) -> Result<LinearCode> {
        if x.len() != self.n || x.field() != &self.field {
            return Err(Error::Dimension("twist does not match the code".into()));
        }
        let f = &self.field;
        let mut m = self.gen.clone();
        for i in 0..m.rows() {
            for (e, &t) in m.row_mut(i).iter_mut().zip(x.entries()) {
                *e = f.mul(*e, t);
            }
        }
        Ok(LinearCode::from_matrix(f, m))
    }

    /// Reduces `v` against the RREF rows; zero iff `v` is a codeword.
    pub fn residue(&self, v: &[Elem]) -> Vec<Elem> {
        let f = &self.field;
        let mut r = v.to_vec();
        for i in 0..self.gen.rows() {
            let row = self.gen.row(i);
            let pc = row.iter().position(|&e| e != 0).unwrap();
            let c = r[pc];
            if c != 0 {
                crate::matrix::axpy(f, &mut r, row, f.neg(c));
            }
        }
        r
    }

    pub fn contains_word(&self, v: &[Elem]) -> bool {
        v.len() == self.n && self.residue(v).iter().all(|&e| e == 0)
    }

    /// True iff `other` is a subcode of `self`.
    pub fn contains(&self, other: &LinearCode) -> bool {
        other.field == self.field && other.n == self.n && (0..other.dim()).all(|i| self.contains_word(other.gen.row(i)))
    }

    pub fn is_self_orthogonal(&self, mode: InnerProduct) -> Result<bool> {
        let f = &self.field;
        let other = match mode {
            InnerProduct::Euclidean => self.gen.clone(),
            InnerProduct::Hermitian => {
                let q = self.sqrt_order()?;
                self.gen.map(|e| f.pow(e, q))
            }
        };
        Ok(self.gen.mul_transpose(&other, f).is_zero())
    }

    /// Sum of two codes of the same length.
    pub fn sum(&self, other: &LinearCode) -> LinearCode {
        let mut m = self.gen.clone();
        for i in 0..other.dim() {
            m.push_row(other.gen.row(i));
        }
        LinearCode::from_matrix(&self.field, m)
    }

    /// Same generators over a larger field.
    pub fn extend_scalars(&self, big: &Arc<Field>) -> Result<LinearCode> {
        let emb = Embedding::new(&self.field, big)?;
        Ok(LinearCode::from_matrix(big, self.gen.map(|e| emb.apply(e))))
    }

    /// Weight distribution by direct enumeration of all `q^k` codewords.
    pub fn enumerate_weights(&self) -> Vec<u64> {
        enumerate_weights(&self.field, &self.gen)
    }

    /// Weight distribution, enumerating whichever of `C`, `C^perp` is
    /// smaller; None when both exceed the budget.
    pub fn weight_distribution(&self, budget: u64) -> Option<WeightDistribution> {
        let q = self.field.order() as u64;
        let k = self.dim();
        if word_count(q, k).is_some_and(|w| w <= budget) && k <= self.n - k {
            return Some(self.enumerate_weights().into_iter().map(BigUint::from).collect());
        }
        if word_count(q, self.n - k).is_some_and(|w| w <= budget) {
            let d = self.dual();
            let w: Vec<BigUint> = d.enumerate_weights().into_iter().map(BigUint::from).collect();
            return Some(macwilliams(&w, self.n, q));
        }
        if word_count(q, k).is_some_and(|w| w <= budget) {
            return Some(self.enumerate_weights().into_iter().map(BigUint::from).collect());
        }
        None
    }

    pub fn min_weight(&self, budget: u64) -> MinWeight {
        if self.dim() == 0 {
            return MinWeight::Empty;
        }
        match self.weight_distribution(budget) {
            Some(w) => MinWeight::Exact(first_positive(&w).expect("nonzero code")),
            None => MinWeight::NotComputed,
        }
    }

    /// Minimum weight over `self \ sub`, where `sub` must be a subcode.
    pub fn relative_min_weight(&self, sub: &LinearCode, budget: u64) -> Result<MinWeight> {
        if !self.contains(sub) {
            return Err(Error::Invalid("relative weight needs nested codes".into()));
        }
        if sub.dim() == self.dim() {
            return Ok(MinWeight::Empty);
        }
        let (Some(big), Some(small)) = (self.weight_distribution(budget), sub.weight_distribution(budget)) else {
            return Ok(MinWeight::NotComputed);
        };
        Ok(MinWeight::Exact(first_excess(&big, &small).expect("strictly larger code")))
    }

    /// Lightest word of `C^perp` with weight at most `upto`, found as a
    /// minimal set of linearly dependent generator columns. None when
    /// `binom(n, upto)` exceeds the budget.
    pub fn dual_search(&self, upto: usize, budget: u64) -> Option<DualSearch> {
        let upto = upto.min(self.n);
        if binomial(self.n as u64, upto as u64) > budget as u128 {
            return None;
        }
        let k = self.dim();
        let mut flat = vec![0; self.n * k];
        for j in 0..self.n {
            for i in 0..k {
                flat[j * k + i] = self.gen[(i, j)];
            }
        }
        let best = std::sync::Mutex::new(None::<(usize, Vec<usize>)>);
        let bound = std::sync::atomic::AtomicUsize::new(upto);
        let root = ColumnDfs { f: &self.field, n: self.n, k, cols: &flat, bound: &bound, best: &best };
        (0..self.n).into_par_iter().for_each(|j| root.start(j));
        Some(match best.into_inner().unwrap() {
            None => DualSearch::Clear(upto),
            Some((_, support)) => {
                let m = Matrix::from_rows(
                    &(0..k).map(|i| support.iter().map(|&j| flat[j * k + i]).collect()).collect::<Vec<_>>(),
                    support.len(),
                );
                let dep = m.kernel(&self.field);
                let v = dep.row(0);
                let inv = self.field.inv(v[0]);
                let mut w = vec![0; self.n];
                for (&j, &c) in support.iter().zip(v) {
                    w[j] = self.field.mul(c, inv);
                }
                DualSearch::Found(w)
            }
        })
    }

    /// GF(q)-span of `tr(beta * c)` over generator rows `c` and a
    /// GF(q)-basis `beta` of this field.
    pub fn trace_code(&self, q: u64) -> Result<LinearCode> {
        let d = SubfieldDescent::new(&self.field, q)?;
        let mut rows = Vec::new();
        for i in 0..self.dim() {
            for &b in d.basis() {
                let v: Vec<Elem> = self.gen.row(i).iter().map(|&e| self.field.mul(e, b)).collect();
                rows.push(d.trace_vector(&v));
            }
        }
        LinearCode::from_rows(d.small(), self.n, &rows)
    }

    /// Codewords with all coordinates in GF(q), as a GF(q)-code. Computed
    /// by expanding parity checks over a GF(q)-basis and solving.
    pub fn subfield_subcode(&self, q: u64) -> Result<LinearCode> {
        let d = SubfieldDescent::new(&self.field, q)?;
        let h = self.dual();
        let mut checks = Matrix::zeros(0, self.n);
        for i in 0..h.dim() {
            for t in 0..d.r() {
                let row: Vec<Elem> = h.gen.row(i).iter().map(|&e| d.coords(e)[t]).collect();
                checks.push_row(&row);
            }
        }
        Ok(LinearCode::from_matrix(d.small(), checks.kernel(d.small())))
    }

    pub fn report(&self) -> CodeReport {
        CodeReport { field: self.field.descriptor(), n: self.n, k: self.dim(), generators: self.gen.row_vecs() }
    }
}

/// JSON form of a code.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeReport {
    pub field: FieldDescriptor,
    pub n: usize,
    pub k: usize,
    pub generators: Vec<Vec<Elem>>,
}

impl CodeReport {
    pub fn to_code(&self) -> Result<LinearCode> {
        let f = Field::from_descriptor(&self.field)?;
        let c = LinearCode::from_rows(&f, self.n, &self.generators)?;
        if c.dim() != self.k {
            return Err(Error::Dimension(format!("rank {} but k = {}", c.dim(), self.k)));
        }
        Ok(c)
    }
}

fn first_positive(w: &[BigUint]) -> Option<u64> {
    (1..w.len()).find(|&i| !w[i].is_zero()).map(|i| i as u64)
}

/// First weight `w >= 1` where `big[w] > small[w]`.
pub fn first_excess(big: &[BigUint], small: &[BigUint]) -> Option<u64> {
    (1..big.len()).find(|&i| big[i] > small[i]).map(|i| i as u64)
}

/// MacWilliams transform: distribution of the dual of a code over GF(q)
/// of length `n` with distribution `a`.
pub fn macwilliams(a: &[BigUint], n: usize, q: u64) -> WeightDistribution {
    let size: BigUint = a.iter().sum();
    let qb = BigInt::from(q);
    let mut acc = vec![BigInt::zero(); n + 1];
    for (i, ai) in a.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        let ai = BigInt::from(ai.clone());
        // Krawtchouk K_j(i) by the three-term recurrence
        let mut prev = BigInt::zero();
        let mut cur = BigInt::one();
        for (j, slot) in acc.iter_mut().enumerate() {
            *slot += &ai * &cur;
            if j == n {
                break;
            }
            let jj = BigInt::from(j);
            let nb = BigInt::from(n);
            let q1 = &qb - 1;
            let c1 = (&nb - &jj) * &q1 + &jj - &qb * BigInt::from(i);
            let c2 = &q1 * (&nb - &jj + 1);
            let next = (c1 * &cur - c2 * &prev) / (&jj + 1);
            prev = cur;
            cur = next;
        }
    }
    let size = BigInt::from(size);
    acc.into_iter()
        .map(|x| {
            debug_assert!((&x % &size).is_zero() && !x.is_negative());
            (x / &size).to_biguint().expect("nonnegative count")
        })
        .collect()
}

fn binomial(n: u64, k: u64) -> u128 {
    let k = k.min(n - k.min(n));
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// Depth-first search over increasing column subsets. Level `d` holds
/// every column reduced modulo the span of the `d` chosen ones, so a zero
/// column closes a dependent set.
struct ColumnDfs<'a> {
    f: &'a Field,
    n: usize,
    k: usize,
    cols: &'a [Elem],
    bound: &'a std::sync::atomic::AtomicUsize,
    best: &'a std::sync::Mutex<Option<(usize, Vec<usize>)>>,
}

impl ColumnDfs<'_> {
    fn bound(&self) -> usize {
        self.bound.load(std::sync::atomic::Ordering::Relaxed)
    }

    fn start(&self, j: usize) {
        if self.bound() == 0 {
            return;
        }
        let k = self.k;
        if self.cols[j * k..(j + 1) * k].iter().all(|&e| e == 0) {
            self.record(vec![j]);
            return;
        }
        if self.bound() < 2 {
            return;
        }
        let mut levels = vec![self.cols.to_vec()];
        let mut chosen = vec![];
        self.descend(&mut levels, &mut chosen, j);
    }

    /// Chooses column `j` at the current depth and scans the columns after it.
    fn descend(&self, levels: &mut Vec<Vec<Elem>>, chosen: &mut Vec<usize>, j: usize) {
        let (f, k) = (self.f, self.k);
        let d = chosen.len();
        if levels.len() <= d + 1 {
            levels.push(vec![0; self.n * k]);
        }
        let (lo, hi) = levels.split_at_mut(d + 1);
        let (cur, next) = (&lo[d], &mut hi[0]);
        let piv = &cur[j * k..(j + 1) * k];
        let p = piv.iter().position(|&e| e != 0).expect("nonzero pivot column");
        let inv = f.neg(f.inv(piv[p]));
        chosen.push(j);
        let mut zeros = vec![];
        for t in j + 1..self.n {
            let src = &cur[t * k..(t + 1) * k];
            let dst = &mut next[t * k..(t + 1) * k];
            let c = f.mul(src[p], inv);
            let mut nz = false;
            for i in 0..k {
                let v = f.add(src[i], f.mul(c, piv[i]));
                dst[i] = v;
                nz |= v != 0;
            }
            if !nz {
                zeros.push(t);
            }
        }
        for t in zeros {
            let mut set = chosen.clone();
            set.push(t);
            self.record(set);
        }
        if d + 3 <= self.bound() {
            for t in j + 1..self.n {
                if d + 3 > self.bound() {
                    break;
                }
                if levels[d + 1][t * k..(t + 1) * k].iter().any(|&e| e != 0) {
                    self.descend(levels, chosen, t);
                }
            }
        }
        chosen.pop();
    }

    /// Records a dependent set; its dependency may use fewer columns.
    fn record(&self, set: Vec<usize>) {
        let k = self.k;
        let m = Matrix::from_rows(
            &(0..k).map(|i| set.iter().map(|&j| self.cols[j * k + i]).collect()).collect::<Vec<_>>(),
            set.len(),
        );
        let dep = m.kernel(self.f);
        let support: Vec<usize> = set.iter().zip(dep.row(0)).filter(|(_, &c)| c != 0).map(|(&j, _)| j).collect();
        let mut best = self.best.lock().unwrap();
        if best.as_ref().is_none_or(|b| (b.0, &b.1) > (support.len(), &support)) {
            self.bound.fetch_min(support.len(), std::sync::atomic::Ordering::Relaxed);
            *best = Some((support.len(), support));
        }
    }
}

/// Enumerates every codeword via a p-ary modular Gray code over a
/// GF(p)-basis of the code, so each step adds one basis vector.
fn enumerate_weights(f: &Field, gen: &Matrix) -> Vec<u64> {
    let n = gen.cols();
    let p = f.characteristic() as u64;
    let deg = f.degree() as usize;
    let mut basis: Vec<Vec<Elem>> = Vec::with_capacity(gen.rows() * deg);
    for i in 0..gen.rows() {
        for t in 0..deg {
            let g = p.pow(t as u32) as Elem;
            basis.push(gen.row(i).iter().map(|&e| f.mul(e, g)).collect());
        }
    }
    let kk = basis.len();
    let total = p.checked_pow(kk as u32).expect("caller checks the budget");
    let mut top = 0;
    while top < kk && p.pow(top as u32) < 512 {
        top += 1;
    }
    let chunk = p.pow((kk - top) as u32);
    let chunks = total / chunk;

    let merge = |mut a: Vec<u64>, b: Vec<u64>| {
        for (x, y) in a.iter_mut().zip(b) {
            *x += y;
        }
        a
    };
    if p == 2 {
        let w = n.div_ceil(64);
        let planes: Vec<Vec<u64>> = basis.iter().map(|v| bitslice(v, deg, w)).collect();
        (0..chunks)
            .into_par_iter()
            .map(|c| gray_chunk_binary(&planes, deg, w, n, c * chunk, chunk))
            .reduce(|| vec![0; n + 1], merge)
    } else {
        let support: Vec<Vec<(usize, Elem)>> = basis
            .iter()
            .map(|v| v.iter().enumerate().filter(|(_, &e)| e != 0).map(|(i, &e)| (i, e)).collect())
            .collect();
        (0..chunks)
            .into_par_iter()
            .map(|c| gray_chunk(f, &support, n, p, c * chunk, chunk))
            .reduce(|| vec![0; n + 1], merge)
    }
}

/// Gray digits of counter `i`: `g_j = d_j - d_{j+1} mod p`.
fn gray_digits(mut i: u64, p: u64, len: usize) -> Vec<u64> {
    let mut d = Vec::with_capacity(len + 1);
    for _ in 0..len {
        d.push(i % p);
        i /= p;
    }
    d.push(0);
    (0..len).map(|j| (d[j] + p - d[j + 1]) % p).collect()
}

#[inline]
fn p_valuation(mut i: u64, p: u64) -> usize {
    let mut v = 0;
    while i.is_multiple_of(p) {
        i /= p;
        v += 1;
    }
    v
}

fn gray_chunk(f: &Field, support: &[Vec<(usize, Elem)>], n: usize, p: u64, start: u64, len: u64) -> Vec<u64> {
    let mut hist = vec![0u64; n + 1];
    let mut cur = vec![0 as Elem; n];
    let mut wt = 0usize;
    let add = |cur: &mut [Elem], wt: &mut usize, j: usize| {
        for &(pos, v) in &support[j] {
            let old = cur[pos];
            let new = f.add(old, v);
            cur[pos] = new;
            *wt = *wt + (new != 0) as usize - (old != 0) as usize;
        }
    };
    for (j, g) in gray_digits(start, p, support.len()).into_iter().enumerate() {
        for _ in 0..g {
            add(&mut cur, &mut wt, j);
        }
    }
    hist[wt] += 1;
    for i in start + 1..start + len {
        add(&mut cur, &mut wt, p_valuation(i, p));
        hist[wt] += 1;
    }
    hist
}

fn bitslice(v: &[Elem], deg: usize, w: usize) -> Vec<u64> {
    let mut planes = vec![0u64; deg * w];
    for (i, &e) in v.iter().enumerate() {
        for b in 0..deg {
            if e >> b & 1 == 1 {
                planes[b * w + i / 64] |= 1 << (i % 64);
            }
        }
    }
    planes
}

fn gray_chunk_binary(planes: &[Vec<u64>], deg: usize, w: usize, n: usize, start: u64, len: u64) -> Vec<u64> {
    let mut hist = vec![0u64; n + 1];
    let mut cur = vec![0u64; deg * w];
    let weight = |cur: &[u64]| -> usize {
        (0..w).map(|c| (0..deg).fold(0u64, |acc, b| acc | cur[b * w + c]).count_ones() as usize).sum()
    };
    for (j, g) in gray_digits(start, 2, planes.len()).into_iter().enumerate() {
        if g == 1 {
            for (c, x) in cur.iter_mut().zip(&planes[j]) {
                *c ^= x;
            }
        }
    }
    hist[weight(&cur)] += 1;
    for i in start + 1..start + len {
        let j = i.trailing_zeros() as usize;
        for (c, x) in cur.iter_mut().zip(&planes[j]) {
            *c ^= x;
        }
        hist[weight(&cur)] += 1;
    }
    hist
}

/// An all-nonzero vector acting on codes coordinatewise.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistVector {
    field: Arc<Field>,
    entries: Vec<Elem>,
}

impl TwistVector {
    pub fn new(field: &Arc<Field>, entries: Vec<Elem>) -> Result<TwistVector> {
        if let Some(i) = entries.iter().position(|&e| e == 0) {
            return Err(Error::Invalid(format!("twist entry {i} is zero")));
        }
        Ok(TwistVector { field: Arc::clone(field), entries })
    }

    pub fn ones(field: &Arc<Field>, n: usize) -> TwistVector {
        TwistVector { field: Arc::clone(field), entries: vec![1; n] }
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[Elem] {
        &self.entries
    }

    pub fn inverse(&self) -> TwistVector {
        TwistVector {
            field: Arc::clone(&self.field),
            entries: self.entries.iter().map(|&e| self.field.inv(e)).collect(),
        }
    }

    pub fn is_constant(&self) -> bool {
        self.entries.windows(2).all(|w| w[0] == w[1])
    }
}

/// Coordinates of GF(q^r) over GF(q) in the basis `1, g, ..., g^(r-1)`
/// with `g` the big field's primitive element, plus the trace.
#[derive(Clone, Debug)]
pub struct SubfieldDescent {
    emb: Embedding,
    q: u64,
    r: usize,
    basis: Vec<Elem>,
    coords: Vec<Vec<Elem>>,
}

impl SubfieldDescent {
    pub fn new(big: &Arc<Field>, q: u64) -> Result<SubfieldDescent> {
        let j = big.subfield_degree(q)?;
        let small = Field::make(big.characteristic(), j)?;
        let emb = Embedding::new(&small, big)?;
        let r = (big.degree() / j) as usize;
        let basis: Vec<Elem> = (0..r).map(|t| big.pow(big.primitive(), t as u64)).collect();
        let mut coords = vec![Vec::new(); big.order()];
        let qs = q as usize;
        for idx in 0..big.order() {
            let mut t = idx;
            let mut c = Vec::with_capacity(r);
            let mut v = 0;
            for &b in &basis {
                let s = (t % qs) as Elem;
                t /= qs;
                c.push(s);
                v = big.add(v, big.mul(emb.apply(s), b));
            }
            coords[v as usize] = c;
        }
        debug_assert!(coords.iter().all(|c| c.len() == r));
        Ok(SubfieldDescent { emb, q, r, basis, coords })
    }

    pub fn small(&self) -> &Arc<Field> {
        self.emb.small()
    }

    pub fn big(&self) -> &Arc<Field> {
        self.emb.big()
    }

    pub fn embedding(&self) -> &Embedding {
        &self.emb
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn basis(&self) -> &[Elem] {
        &self.basis
    }

    pub fn coords(&self, e: Elem) -> &[Elem] {
        &self.coords[e as usize]
    }

    /// Trace to GF(q), as a small-field index.
    pub fn trace(&self, e: Elem) -> Elem {
        let t = self.big().trace_unchecked(e, self.q, self.r);
        self.emb.preimage(t).expect("trace lies in the subfield")
    }

    pub fn trace_vector(&self, v: &[Elem]) -> Vec<Elem> {
        v.iter().map(|&e| self.trace(e)).collect()
    }
}

/// Inner product `<a, b>` on raw vectors.
pub fn inner(f: &Field, a: &[Elem], b: &[Elem]) -> Elem {
    dot(f, a, b)
}

/// Number of nonzero entries.
pub fn weight(v: &[Elem]) -> usize {
    v.iter().filter(|&&e| e != 0).count()
}

/// Converts a distribution entry to u64 when it fits.
pub fn count_u64(x: &BigUint) -> Option<u64> {
    x.to_u64()
}
