//! CSS quantum codes from nested and self-orthogonal classical codes,
//! constructions (A), (B) and (C) on code sequences, and the quantum
//! Gilbert-Varshamov classification.

use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::agcodes::{CodeSequence, DualityStatus};
use crate::code::{
    first_excess, macwilliams, weight, DualSearch, InnerProduct, LinearCode, MinWeight, TwistVector, WeightDistribution,
};
use crate::error::{Error, Result};
use crate::field::{Elem, Field};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    Exact,
    LowerBound,
    PaperClaimed,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Construction {
    #[serde(rename = "nested")]
    Nested,
    #[serde(rename = "euclid-CSS")]
    EuclidCss,
    #[serde(rename = "hermitian-CSS")]
    HermitianCss,
    A,
    B,
    C,
    #[serde(rename = "trace")]
    Trace,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GvStatus {
    Below,
    Meets,
    Exceeds,
    #[serde(rename = "na")]
    NotApplicable,
}

impl fmt::Display for GvStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GvStatus::Below => "below",
            GvStatus::Meets => "meets",
            GvStatus::Exceeds => "exceeds",
            GvStatus::NotApplicable => "not-applicable",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuantumParams {
    pub n: usize,
    pub k: usize,
    pub d: u64,
    pub q: u64,
    pub d_provenance: Provenance,
    pub construction: Construction,
    pub gv: GvStatus,
}

impl QuantumParams {
    pub fn new(q: u64, n: usize, k: usize, d: u64, prov: Provenance, c: Construction) -> QuantumParams {
        QuantumParams { n, k, d, q, d_provenance: prov, construction: c, gv: gv_status(n as u64, k as u64, d, q) }
    }
}

impl fmt::Display for QuantumParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = match self.gv {
            GvStatus::Meets => "†",
            GvStatus::Exceeds => "‡",
            _ => "",
        };
        let ge = if self.d_provenance == Provenance::Exact { "" } else { ">=" };
        write!(f, "[[{},{},{}{}]]_{}{}", self.n, self.k, ge, self.d, self.q, tag)
    }
}

/// Exact quantities behind a GV decision.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GvReport {
    pub status: GvStatus,
    /// Largest distance the theorem guarantees (1 when none >= 2 is).
    pub d_max: Option<u64>,
    /// `(q^(n-k+2) - 1) / (q^2 - 1)`
    pub lhs: Option<String>,
    /// `sum_{i=1}^{d-1} (q^2-1)^(i-1) C(n,i)` at the given d.
    pub rhs: Option<String>,
}

fn gv_rhs(n: u64, d: u64, q: u64) -> BigUint {
    let q21 = BigUint::from(q * q - 1);
    let mut sum = BigUint::zero();
    let mut binom = BigUint::one();
    let mut pow = BigUint::one();
    for i in 1..d {
        binom = binom * BigUint::from(n - i + 1) / BigUint::from(i);
        if i > 1 {
            pow *= &q21;
        }
        sum += &pow * &binom;
    }
    sum
}

pub fn gv_report(n: u64, k: u64, d: u64, q: u64) -> GvReport {
    if !(n > k && k >= 2 && d >= 2 && (n - k).is_multiple_of(2)) {
        return GvReport { status: GvStatus::NotApplicable, d_max: None, lhs: None, rhs: None };
    }
    let lhs = (BigUint::from(q).pow((n - k + 2) as u32) - 1u32) / BigUint::from(q * q - 1);
    let mut d_max = 1;
    let mut t = 2;
    while t <= n && lhs > gv_rhs(n, t, q) {
        d_max = t;
        t += 1;
    }
    let status = match d.cmp(&d_max) {
        std::cmp::Ordering::Less => GvStatus::Below,
        std::cmp::Ordering::Equal => GvStatus::Meets,
        std::cmp::Ordering::Greater => GvStatus::Exceeds,
    };
    GvReport { status, d_max: Some(d_max), lhs: Some(lhs.to_string()), rhs: Some(gv_rhs(n, d, q).to_string()) }
}

/// below | meets | exceeds relative to the largest GV-guaranteed distance.
pub fn gv_status(n: u64, k: u64, d: u64, q: u64) -> GvStatus {
    gv_report(n, k, d, q).status
}

fn first_positive(w: &WeightDistribution) -> Option<u64> {
    (1..w.len()).find(|&i| !w[i].is_zero()).map(|i| i as u64)
}

/// d of the CSS code from C1 <= C2: min weight over (C2 \ C1) and
/// (C1^perp \ C2^perp); for k = 0, the smaller of d(C2) and d(C1^perp).
fn nested_distance(c1: &LinearCode, c2: &LinearCode, budget: u64) -> Option<u64> {
    let q = c1.field().order() as u64;
    let n = c1.len();
    let w1 = c1.weight_distribution(budget)?;
    let w2 = c2.weight_distribution(budget)?;
    let w1p = macwilliams(&w1, n, q);
    let w2p = macwilliams(&w2, n, q);
    if c1.dim() == c2.dim() {
        return [first_positive(&w2), first_positive(&w1p)].into_iter().flatten().min();
    }
    let a = first_excess(&w2, &w1);
    let b = first_excess(&w1p, &w2p);
    [a, b].into_iter().flatten().min()
}

/// Largest `t` with `binom(n, t)` within budget.
fn search_depth(n: usize, budget: u64) -> usize {
    let mut t = 0;
    let mut c: u128 = 1;
    while t < n {
        let next = c * (n - t) as u128 / (t + 1) as u128;
        if next > budget as u128 {
            break;
        }
        c = next;
        t += 1;
    }
    t
}

/// Least weight over `C^perp \ exclude` via a dependent-column search of
/// `searched` (whose dual is `C^perp` after `lift`). Returns the value and
/// whether it is exact.
fn column_distance(
    searched: &LinearCode,
    lift: impl Fn(&[Elem]) -> Vec<Elem>,
    exclude: &LinearCode,
    budget: u64,
) -> Option<(u64, bool)> {
    let t = search_depth(searched.len(), budget);
    match searched.dual_search(t, budget)? {
        DualSearch::Found(w) => {
            let wt = weight(&w) as u64;
            Some((wt, !exclude.contains_word(&lift(&w))))
        }
        DualSearch::Clear(t) => Some((t as u64 + 1, false)),
    }
}

fn quantum_field(f: &Field, mode: InnerProduct) -> Result<u64> {
    match mode {
        InnerProduct::Euclidean => Ok(f.order() as u64),
        InnerProduct::Hermitian => {
            f.sqrt_order().ok_or_else(|| Error::UnsupportedField(format!("{f:?} has no Hermitian form")))
        }
    }
}

fn finish(q: u64, n: usize, k: usize, exact: Option<u64>, bound: Option<u64>, c: Construction) -> QuantumParams {
    match exact {
        Some(d) => QuantumParams::new(q, n, k, d, Provenance::Exact, c),
        None => QuantumParams::new(q, n, k, bound.unwrap_or(1).max(1), Provenance::LowerBound, c),
    }
}

/// Falls back to the column search when enumeration was over budget.
fn with_search(
    exact: Option<u64>,
    bound: Option<u64>,
    search: impl FnOnce() -> Option<(u64, bool)>,
) -> (Option<u64>, Option<u64>) {
    if exact.is_some() {
        return (exact, bound);
    }
    match search() {
        Some((d, true)) => (Some(d), bound),
        Some((d, false)) => (None, Some(bound.unwrap_or(1).max(d))),
        None => (None, bound),
    }
}

/// `[[n, k2 - k1, d]]_q` from C1 inside C2.
pub fn css_nested(c1: &LinearCode, c2: &LinearCode, budget: u64, bound: Option<u64>) -> Result<QuantumParams> {
    if !c2.contains(c1) {
        return Err(Error::Invalid("CSS pair is not nested".into()));
    }
    let q = c1.field().order() as u64;
    let exact = nested_distance(c1, c2, budget);
    Ok(finish(q, c1.len(), c2.dim() - c1.dim(), exact, bound, Construction::Nested))
}

/// `[[n, n - 2k, d]]_q` from a Euclidean self-orthogonal C, with d the
/// least weight in C^perp \ C.
pub fn css_self_orthogonal(c: &LinearCode, budget: u64, bound: Option<u64>) -> Result<QuantumParams> {
    self_orthogonal_css(c, InnerProduct::Euclidean, budget, bound)
}

/// `[[n, n - 2k, d]]_q` from a Hermitian self-orthogonal C over GF(q^2).
pub fn css_hermitian(c: &LinearCode, budget: u64, bound: Option<u64>) -> Result<QuantumParams> {
    self_orthogonal_css(c, InnerProduct::Hermitian, budget, bound)
}

fn self_orthogonal_css(c: &LinearCode, mode: InnerProduct, budget: u64, bound: Option<u64>) -> Result<QuantumParams> {
    let q = quantum_field(c.field(), mode)?;
    if !c.is_self_orthogonal(mode)? {
        return Err(Error::NotSelfOrthogonal(format!("[{}, {}] code", c.len(), c.dim())));
    }
    // the Hermitian dual is a Frobenius image of the Euclidean one, so
    // both share one weight distribution
    let exact = c.weight_distribution(budget).and_then(|w| {
        let wp = macwilliams(&w, c.len(), c.field().order() as u64);
        first_excess(&wp, &w).or_else(|| first_positive(&wp))
    });
    let (exact, bound) = with_search(exact, bound, || {
        let searched = match mode {
            InnerProduct::Euclidean => c.clone(),
            InnerProduct::Hermitian => c.frobenius(q).ok()?,
        };
        column_distance(&searched, |w| w.to_vec(), c, budget)
    });
    let tag = match mode {
        InnerProduct::Euclidean => Construction::EuclidCss,
        InnerProduct::Hermitian => Construction::HermitianCss,
    };
    Ok(finish(q, c.len(), c.len() - 2 * c.dim(), exact, bound, tag))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "status")]
pub enum ConstructionOutcome {
    Available(QuantumParams),
    Unavailable { reason: String },
}

impl ConstructionOutcome {
    pub fn params(&self) -> Option<&QuantumParams> {
        match self {
            ConstructionOutcome::Available(p) => Some(p),
            _ => None,
        }
    }
}

fn unavailable(reason: impl Into<String>) -> ConstructionOutcome {
    ConstructionOutcome::Unavailable { reason: reason.into() }
}

/// Lower bound on d(C_{n-i}) from the order bound through the dual
/// pole order of m_{n-i}.
pub fn sequence_bound(seq: &CodeSequence, sg: &crate::semigroup::NumericalSemigroup, i: usize) -> u64 {
    let n = seq.len();
    if i == 0 {
        return 1;
    }
    let m = seq.m_set()[n - i - 1] as i64;
    let mperp = n as i64 + 2 * seq.genus() as i64 - 2 - m;
    let goppa = crate::agcodes::goppa_bound(n, m, sg.ell(m - n as i64), seq.genus());
    sg.order_bound(mperp).max(goppa.max(1) as u64)
}

/// Construction (A): C_i over GF(q^2) of a self-dual sequence with
/// `i + q(i) <= n` gives `[[n, n - 2i, >= d(C_{n-i})]]_q`.
pub fn construction_a(
    seq: &CodeSequence,
    sg: &crate::semigroup::NumericalSemigroup,
    i: usize,
    budget: u64,
) -> Result<ConstructionOutcome> {
    let Some(q) = seq.field().sqrt_order() else {
        return Ok(unavailable("field order is not a square"));
    };
    if seq.status() != DualityStatus::SelfDual {
        return Ok(unavailable("sequence is not certified self-dual"));
    }
    if 2 * i > seq.len() {
        return Ok(unavailable(format!("2i = {} exceeds n", 2 * i)));
    }
    let qi = seq.q_index(i, q);
    if i + qi > seq.len() {
        return Ok(unavailable(format!("i + q(i) = {} exceeds n", i + qi)));
    }
    let c = seq.code(i);
    let mut p = css_hermitian(&c, budget, Some(sequence_bound(seq, sg, i)))?;
    p.construction = Construction::A;
    Ok(ConstructionOutcome::Available(p))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Variant {
    B,
    C,
}

/// `y` with `y^(q+1) = x` entrywise, for x with entries in GF(q).
pub fn twist_root(x: &TwistVector, q: u64) -> Option<TwistVector> {
    let f = x.field();
    let mut y = Vec::with_capacity(x.len());
    for &e in x.entries() {
        let l = f.log(e)? as u64;
        if !l.is_multiple_of(q + 1) {
            return None;
        }
        y.push(f.exp(l / (q + 1)));
    }
    TwistVector::new(f, y).ok()
}

/// Constructions (B) and (C) on a formally self-dual sequence over
/// GF(q^2). (B) needs twist entries in GF(q) and `i + q(i) <= n`; (C)
/// needs the sequence to be a scalar extension of a GF(q) sequence and
/// `2i <= n`.
pub fn construction_bc(
    seq: &CodeSequence,
    sg: &crate::semigroup::NumericalSemigroup,
    i: usize,
    variant: Variant,
    budget: u64,
) -> Result<ConstructionOutcome> {
    let n = seq.len();
    let Some(q) = seq.field().sqrt_order() else {
        return Ok(unavailable("field order is not a square"));
    };
    let Some(x) = seq.twist() else {
        return Ok(unavailable("no twist certified"));
    };
    if x.entries().iter().any(|&e| !seq.field().in_subfield(e, q)) {
        return Ok(unavailable("twist has entries outside GF(q)"));
    }
    let y = twist_root(x, q).expect("subfield entries have (q+1)-th roots");
    let bound = Some(sequence_bound(seq, sg, i));
    if 2 * i > n {
        return Ok(unavailable(format!("2i = {} exceeds n", 2 * i)));
    }
    match variant {
        Variant::B => {
            let qi = seq.q_index(i, q);
            if i + qi > n {
                return Ok(unavailable(format!("i + q(i) = {} exceeds n", i + qi)));
            }
            let c = seq.code(i).star(&y)?;
            let mut p = css_hermitian(&c, budget, bound)?;
            p.construction = Construction::B;
            Ok(ConstructionOutcome::Available(p))
        }
        Variant::C => {
            let Some(base) = seq.base() else {
                return Ok(unavailable("sequence is not a scalar extension"));
            };
            if base.field().order() as u64 != q {
                return Ok(unavailable("base field is not GF(q)"));
            }
            // y * C_i is Hermitian self-orthogonal and its Hermitian dual
            // is y * C_{n-i}; supports of extension codewords are unions of
            // base-field supports, so the distance is computed over GF(q)
            let ext = seq.code(i).star(&y)?;
            debug_assert!(ext.is_self_orthogonal(InnerProduct::Hermitian).unwrap());
            let lo = base.code(i);
            let hi = base.code(n - i);
            let exact = if i == 0 {
                hi.min_weight(budget).exact()
            } else if 2 * i == n {
                lo.min_weight(budget).exact()
            } else {
                match hi.relative_min_weight(&lo, budget)? {
                    MinWeight::Exact(d) => Some(d),
                    _ => None,
                }
            };
            let (exact, bound) = with_search(exact, bound, || {
                if i == 0 || 2 * i == n {
                    return None;
                }
                let f = base.field();
                let x: Vec<Elem> = base.twist().map_or(vec![1; n], |t| t.entries().to_vec());
                let lift = |w: &[Elem]| -> Vec<Elem> {
                    let there: Vec<Elem> = w.iter().zip(&x).map(|(&a, &b)| f.mul(a, b)).collect();
                    if hi.contains_word(&there) {
                        return there;
                    }
                    w.iter().zip(&x).map(|(&a, &b)| f.div(a, b)).collect()
                };
                column_distance(&lo, lift, &lo, budget)
            });
            Ok(ConstructionOutcome::Available(finish(q, n, n - 2 * i, exact, bound, Construction::C)))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gv_examples() {
        let r = gv_report(8, 6, 2, 2);
        assert_eq!(r.lhs.as_deref(), Some("5"));
        assert_eq!(r.rhs.as_deref(), Some("8"));
        assert_eq!(r.status, GvStatus::Exceeds);
        assert_eq!(gv_status(64, 62, 2, 8), GvStatus::Meets);
        assert_eq!(gv_report(64, 62, 3, 8).rhs.as_deref(), Some(&*(64 + 63 * 2016).to_string()));
        assert_eq!(gv_status(15, 13, 2, 9), GvStatus::Meets);
        assert_eq!(gv_status(15, 14, 2, 9), GvStatus::NotApplicable);
        assert_eq!(gv_status(15, 1, 7, 9), GvStatus::NotApplicable);
    }

    #[test]
    fn trivial_css() {
        let f = Field::make(2, 1).unwrap();
        let z = LinearCode::zero(&f, 3);
        let full = LinearCode::full(&f, 3);
        let p = css_nested(&z, &full, 1 << 20, None).unwrap();
        assert_eq!((p.n, p.k, p.d), (3, 3, 1));
        let p = css_nested(&full, &full, 1 << 20, None).unwrap();
        assert_eq!(p.k, 0);
        assert!(css_nested(&full, &z, 1 << 20, None).is_err());
        let p = css_self_orthogonal(&z, 1 << 20, None).unwrap();
        assert_eq!((p.n, p.k, p.d), (3, 3, 1));
    }

    #[test]
    fn twist_root_recovers() {
        let f = Field::make(3, 2).unwrap();
        let x = TwistVector::new(&f, vec![1, 2, 1, 2]).unwrap();
        let y = twist_root(&x, 3).unwrap();
        for (a, b) in y.entries().iter().zip(x.entries()) {
            assert_eq!(f.pow(*a, 4), *b);
        }
    }
}
