//! One-point codes C(mQ) over an evaluation set, the nested sequence
//! C_0 < C_1 < ... < C_n, duality certification with a diagonal twist,
//! Goppa and order bounds, and trace-code generators for descent.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::code::{InnerProduct, LinearCode, MinWeight, SubfieldDescent, TwistVector};
use crate::curves::{CurveFunction, EvaluationSet};
use crate::error::{Error, Result};
use crate::field::{Elem, Embedding, Field};
use crate::matrix::Matrix;

/// `m^perp = n + 2g - 2 - m`.
pub fn dual_pole_order(e: &EvaluationSet, m: i64) -> i64 {
    e.len() as i64 + 2 * e.curve().genus() as i64 - 2 - m
}

/// Goppa bound n - m + gamma_{a+1} with the floors gamma_1 = 0,
/// gamma_{a+1} >= a+1 (genus >= 1) and gamma_{a+1} = a (genus 0).
pub fn goppa_bound(n: usize, m: i64, abundance: u64, genus: u64) -> i64 {
    let base = n as i64 - m;
    match (abundance, genus) {
        (0, _) => base,
        (a, 0) => base + a as i64,
        (a, _) => base + a as i64 + 1,
    }
}

/// Order bound on d(C(mQ)^perp).
pub fn order_bound(e: &EvaluationSet, m: i64) -> u64 {
    e.curve().semigroup().order_bound(m)
}

#[derive(Clone, Debug)]
pub struct OnePointCode {
    pub m: i64,
    pub code: LinearCode,
    /// l((m-n)Q)
    pub abundance: u64,
    pub goppa: i64,
    /// Order bound for this code, taken through its dual C(m^perp Q).
    pub order: u64,
    pub exact: Option<u64>,
}

/// `C(mQ)`, the evaluations of L(mQ) at D.
pub fn ag_build(e: &EvaluationSet, m: i64) -> OnePointCode {
    let curve = e.curve();
    let s = curve.semigroup();
    let n = e.len();
    let basis = curve.function_basis(m, None);
    let code = LinearCode::from_matrix(e.field(), e.eval_matrix(&basis));
    let abundance = s.ell(m - n as i64);
    OnePointCode {
        m,
        code,
        abundance,
        goppa: goppa_bound(n, m, abundance, curve.genus()),
        order: order_bound(e, dual_pole_order(e, m)),
        exact: None,
    }
}

impl OnePointCode {
    /// Computes the exact minimum distance when the budget allows.
    pub fn with_exact(mut self, budget: u64) -> Self {
        self.exact = self.code.min_weight(budget).exact();
        self
    }

    /// Best lower bound from Goppa and order bounds, at least 1.
    pub fn lower_bound(&self) -> u64 {
        (self.goppa.max(1) as u64).max(self.order)
    }

    pub fn report(&self, curve: &str) -> Result<CodeRow> {
        let field = self.code.field();
        Ok(CodeRow {
            curve: curve.to_string(),
            n: self.code.len(),
            m: self.m,
            k: self.code.dim(),
            abundance: self.abundance,
            goppa: self.goppa,
            order: self.order,
            d_exact: self.exact,
            self_orth: SelfOrth {
                euclidean: self.code.is_self_orthogonal(InnerProduct::Euclidean)?,
                hermitian: if field.sqrt_order().is_some() {
                    Some(self.code.is_self_orthogonal(InnerProduct::Hermitian)?)
                } else {
                    None
                },
            },
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SelfOrth {
    pub euclidean: bool,
    /// Absent when the field order is not a square.
    pub hermitian: Option<bool>,
}

/// JSON report row for a one-point code.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeRow {
    pub curve: String,
    pub n: usize,
    pub m: i64,
    pub k: usize,
    pub abundance: u64,
    pub goppa: i64,
    pub order: u64,
    pub d_exact: Option<u64>,
    pub self_orth: SelfOrth,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DualityStatus {
    SelfDual,
    FormallySelfDual,
    Unverified,
}

/// The codes `C_i = C(m_i Q)` for the dimension set `M`, held as the
/// rows of one n x n matrix whose first `i` rows span `C_i`.
#[derive(Clone, Debug)]
pub struct CodeSequence {
    field: Arc<Field>,
    label: String,
    n: usize,
    genus: u64,
    m_set: Vec<u64>,
    h: Matrix,
    h_inv: Matrix,
    status: DualityStatus,
    twist: Option<TwistVector>,
    base: Option<Box<CodeSequence>>,
}

impl CodeSequence {
    /// Builds the sequence and certifies its duality.
    pub fn new(e: &EvaluationSet) -> Result<CodeSequence> {
        let curve = e.curve();
        let n = e.len();
        let s = curve.semigroup();
        let m_set = s.m_set(n as u64);
        let top = *m_set.last().unwrap() as i64;
        let basis: Vec<CurveFunction> = curve
            .function_basis(top, None)
            .into_iter()
            .filter(|f| m_set.binary_search(&f.pole_order).is_ok())
            .collect();
        let h = e.eval_matrix(&basis);
        let field = Arc::clone(e.field());
        let h_inv = h
            .inverse(&field)
            .ok_or_else(|| Error::Dimension(format!("evaluation matrix of {} is singular", curve.label())))?;
        let mut seq = CodeSequence {
            field,
            label: curve.label().to_string(),
            n,
            genus: curve.genus(),
            m_set,
            h,
            h_inv,
            status: DualityStatus::Unverified,
            twist: None,
            base: None,
        };
        let (status, twist) = seq.certify_duality();
        seq.status = status;
        seq.twist = twist;
        Ok(seq)
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn genus(&self) -> u64 {
        self.genus
    }

    pub fn m_set(&self) -> &[u64] {
        &self.m_set
    }

    pub fn matrix(&self) -> &Matrix {
        &self.h
    }

    pub fn status(&self) -> DualityStatus {
        self.status
    }

    pub fn twist(&self) -> Option<&TwistVector> {
        self.twist.as_ref()
    }

    /// The GF(q) sequence this one was scalar-extended from.
    pub fn base(&self) -> Option<&CodeSequence> {
        self.base.as_deref()
    }

    /// `C_i`, spanned by the first `i` rows.
    pub fn code(&self, i: usize) -> LinearCode {
        LinearCode::from_matrix(&self.field, self.h.top(i))
    }

    /// Index `i` with `C(mQ) = C_i`.
    pub fn index_of(&self, m: i64) -> usize {
        self.m_set.iter().filter(|&&x| x as i64 <= m).count()
    }

    /// Finds a twist x with C_i^perp = x * C_{n-i} for all i.
    ///
    /// Row 0 of H is the all-ones vector, so x spans C_{n-1}^perp; the
    /// remaining conditions are then checked on the Gram matrix.
    fn certify_duality(&self) -> (DualityStatus, Option<TwistVector>) {
        let f = &self.field;
        let n = self.n;
        let perp = self.code(n - 1).dual();
        if perp.dim() != 1 {
            return (DualityStatus::Unverified, None);
        }
        let mut x = perp.generator().row(0).to_vec();
        if x.contains(&0) {
            return (DualityStatus::Unverified, None);
        }
        let inv = f.inv(x[0]);
        for e in x.iter_mut() {
            *e = f.mul(*e, inv);
        }
        if !self.twisted_orthogonal(&x) {
            return (DualityStatus::Unverified, None);
        }
        let tw = TwistVector::new(f, x).unwrap();
        let status = if tw.is_constant() { DualityStatus::SelfDual } else { DualityStatus::FormallySelfDual };
        (status, Some(tw))
    }

    /// `sum_l H[a][l] x_l H[b][l] = 0` whenever `a + b <= n - 2` (0-based).
    fn twisted_orthogonal(&self, x: &[Elem]) -> bool {
        let f = &self.field;
        let n = self.n;
        let hx = {
            let mut m = self.h.clone();
            for a in 0..n {
                for (e, &t) in m.row_mut(a).iter_mut().zip(x) {
                    *e = f.mul(*e, t);
                }
            }
            m
        };
        (0..n).all(|a| {
            (0..n.saturating_sub(1).saturating_sub(a)).all(|b| crate::matrix::dot(f, hx.row(a), self.h.row(b)) == 0)
        })
    }

    /// Gram matrix `H * H^T` or `H * (H^q)^T`.
    fn gram(&self, mode: InnerProduct) -> Result<Matrix> {
        let f = &self.field;
        let other = match mode {
            InnerProduct::Euclidean => self.h.clone(),
            InnerProduct::Hermitian => {
                let q =
                    f.sqrt_order().ok_or_else(|| Error::UnsupportedField(format!("{f:?} has no Hermitian form")))?;
                self.h.map(|e| f.pow(e, q))
            }
        };
        Ok(self.h.mul_transpose(&other, f))
    }

    /// Largest `i` with `C_i` self-orthogonal, by matrix tests.
    pub fn self_orthogonal_index(&self, mode: InnerProduct) -> Result<usize> {
        let g = self.gram(mode)?;
        let mut i = 0;
        while i < self.n && (0..=i).all(|a| g[(a, i)] == 0 && g[(i, a)] == 0) {
            i += 1;
        }
        Ok(i)
    }

    /// Largest m in M with C(mQ) self-orthogonal, or None if only the
    /// zero code is.
    pub fn self_orthogonality_range(&self, mode: InnerProduct) -> Result<Option<u64>> {
        let i = self.self_orthogonal_index(mode)?;
        Ok((i > 0).then(|| self.m_set[i - 1]))
    }

    /// Largest m in M with `(factor) * m <= n + 2g - 2`, where factor is
    /// 2 (Euclidean) or sqrt(|F|) + 1 (Hermitian).
    pub fn closed_form_threshold(&self, mode: InnerProduct) -> Option<u64> {
        let factor = match mode {
            InnerProduct::Euclidean => 2,
            InnerProduct::Hermitian => self.field.sqrt_order()? + 1,
        };
        let cap = self.n as u64 + 2 * self.genus - 2;
        self.m_set.iter().copied().filter(|&m| factor * m <= cap).max()
    }

    /// Smallest `j` with `C_i^q` inside `C_j`, from coordinates in the
    /// basis given by the rows of H.
    pub fn q_index(&self, i: usize, q: u64) -> usize {
        let f = &self.field;
        let mut j = 0;
        for a in 0..i {
            let v: Vec<Elem> = self.h.row(a).iter().map(|&e| f.pow(e, q)).collect();
            let row = Matrix::from_rows(&[v], self.n);
            let c = row.mul(&self.h_inv, f);
            if let Some(last) = c.row(0).iter().rposition(|&e| e != 0) {
                j = j.max(last + 1);
            }
        }
        j
    }

    /// Same sequence over an extension field, remembering its origin.
    pub fn extend_scalars(&self, big: &Arc<Field>) -> Result<CodeSequence> {
        let emb = Embedding::new(&self.field, big)?;
        let h = self.h.map(|e| emb.apply(e));
        let h_inv = self.h_inv.map(|e| emb.apply(e));
        let twist = match &self.twist {
            Some(t) => Some(TwistVector::new(big, t.entries().iter().map(|&e| emb.apply(e)).collect())?),
            None => None,
        };
        Ok(CodeSequence {
            field: Arc::clone(big),
            label: self.label.clone(),
            n: self.n,
            genus: self.genus,
            m_set: self.m_set.clone(),
            h,
            h_inv,
            status: self.status,
            twist,
            base: Some(Box::new(self.clone())),
        })
    }
}

/// Generators of tr(C(mQ)) over GF(q) from the reduced set B'_m.
#[derive(Clone, Debug)]
pub struct TraceGenerators {
    pub q: u64,
    /// `(label, pole order of f or 0 for the constant, j, vector)`
    pub rows: Vec<TraceRow>,
}

#[derive(Clone, Debug)]
pub struct TraceRow {
    pub pole_order: u64,
    pub j: usize,
    pub vector: Vec<Elem>,
}

impl TraceGenerators {
    pub fn code(&self, small: &Arc<Field>, n: usize) -> LinearCode {
        let rows: Vec<Vec<Elem>> = self.rows.iter().map(|r| r.vector.clone()).collect();
        LinearCode::from_matrix(small, Matrix::from_rows(&rows, n))
    }

    /// Rows of the function with the largest pole order.
    pub fn last_block(&self) -> Vec<usize> {
        let top = self.rows.iter().map(|r| r.pole_order).max().unwrap_or(0);
        if top == 0 {
            return vec![];
        }
        (0..self.rows.len()).filter(|&i| self.rows[i].pole_order == top).collect()
    }
}

/// `{1} u {tr(alpha^j f) : f in L'_m nonconstant, j < r}` evaluated at D,
/// with L' the basis under the q-th power convention minus q-th powers.
pub fn trace_basis(e: &EvaluationSet, m: i64, q: u64) -> Result<TraceGenerators> {
    let curve = e.curve();
    if !curve.is_castle() {
        return Err(Error::NotCastle(curve.label().to_string()));
    }
    let d = SubfieldDescent::new(e.field(), q)?;
    let s = curve.semigroup();
    let mut rows = vec![TraceRow { pole_order: 0, j: 0, vector: vec![1; e.len()] }];
    for f in curve.function_basis(m, Some(q)) {
        let rho = f.pole_order;
        if rho == 0 || (rho % q == 0 && rho / q > 0 && s.contains(rho / q)) {
            continue;
        }
        let v = e.evaluate(&f);
        for (j, &b) in d.basis().iter().enumerate() {
            let w: Vec<Elem> = v.iter().map(|&x| e.field().mul(x, b)).collect();
            rows.push(TraceRow { pole_order: rho, j, vector: d.trace_vector(&w) });
        }
    }
    Ok(TraceGenerators { q, rows })
}

/// Largest m with `m * q^floor(r/2) <= n + 2g - 2 - m`.
pub fn trace_self_orthogonal_threshold(e: &EvaluationSet, q: u64) -> Result<i64> {
    let r = e.field().degree() / e.field().subfield_degree(q)?;
    let factor = q.pow(r / 2) as i64 + 1;
    let cap = dual_pole_order(e, 0);
    Ok(cap.div_euclid(factor))
}

#[derive(Clone, Debug)]
pub struct IncompleteTrace {
    pub code: LinearCode,
    pub dropped: Vec<usize>,
    pub dual_distance: MinWeight,
}

/// Drops up to r-1 generators of the last function's block, where r is
/// the trace degree, keeping the span self-orthogonal with the dual
/// distance of the full trace code. Larger removals are tried first, in
/// lexicographic order within each size; the full code is the last resort.
pub fn incomplete_trace_search(e: &EvaluationSet, m: i64, q: u64, budget: u64) -> Result<Option<IncompleteTrace>> {
    let gens = trace_basis(e, m, q)?;
    let d = SubfieldDescent::new(e.field(), q)?;
    let small = d.small();
    let full = gens.code(small, e.len());
    let target = full.dual().min_weight(budget);
    let block = gens.last_block();
    for size in (0..d.r().min(block.len() + 1)).rev() {
        if size > 0 && target.exact().is_none() {
            continue;
        }
        for subset in combinations(&block, size) {
            let rows: Vec<Vec<Elem>> =
                (0..gens.rows.len()).filter(|i| !subset.contains(i)).map(|i| gens.rows[i].vector.clone()).collect();
            let c = LinearCode::from_rows(small, e.len(), &rows)?;
            if c.is_self_orthogonal(InnerProduct::Euclidean)? && c.dual().min_weight(budget) == target {
                return Ok(Some(IncompleteTrace { code: c, dropped: subset, dual_distance: target }));
            }
        }
    }
    Ok(None)
}

fn combinations(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for (i, &x) in items.iter().enumerate() {
        for mut rest in combinations(&items[i + 1..], k - 1) {
            rest.insert(0, x);
            out.push(rest);
        }
    }
    out
}
