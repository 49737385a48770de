//! Pointed curves with a single point Q at infinity: separated-variable
//! plane models F(y) = G(x), hyperelliptic curves, Suzuki curves and
//! norm-trace quotients. Rational points are enumerated exhaustively and
//! L(inf Q) is spanned by monomials in generator functions whose pole
//! orders generate the Weierstrass semigroup at Q.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{prime_power, Elem, Field, FieldDescriptor};
use crate::matrix::Matrix;
use crate::poly;
use crate::semigroup::NumericalSemigroup;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Sep,
    Hyperodd,
    Hypereven,
    Suzuki,
    Ntq,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Generator {
    pub name: String,
    pub pole_order: u64,
}

/// Values of every generator function at an affine point; `values[0]` is
/// x and `values[1]` is y.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AffinePoint {
    pub values: Vec<Elem>,
}

impl AffinePoint {
    pub fn x(&self) -> Elem {
        self.values[0]
    }

    pub fn y(&self) -> Elem {
        self.values[1]
    }
}

/// Exponent vector over the curve's generator functions.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(ngens: usize) -> Monomial {
        Monomial(vec![0; ngens])
    }

    pub fn times(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn pow(&self, e: u32) -> Monomial {
        Monomial(self.0.iter().map(|a| a * e).collect())
    }

    pub fn pole_order(&self, gens: &[Generator]) -> u64 {
        self.0.iter().zip(gens).map(|(&e, g)| e as u64 * g.pole_order).sum()
    }
}

/// A linear combination of monomials with its pole order at Q.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveFunction {
    pub terms: Vec<(Elem, Monomial)>,
    pub pole_order: u64,
}

impl CurveFunction {
    pub fn monomial(m: Monomial, gens: &[Generator]) -> CurveFunction {
        let pole_order = m.pole_order(gens);
        CurveFunction { terms: vec![(1, m)], pole_order }
    }

    pub fn times_monomial(&self, m: &Monomial, gens: &[Generator]) -> CurveFunction {
        CurveFunction {
            terms: self.terms.iter().map(|(c, t)| (*c, t.times(m))).collect(),
            pole_order: self.pole_order + m.pole_order(gens),
        }
    }

    /// The single monomial of a monomial function.
    pub fn as_monomial(&self) -> Option<&Monomial> {
        match self.terms.as_slice() {
            [(1, m)] => Some(m),
            _ => None,
        }
    }
}

#[derive(Clone, Debug)]
pub struct PointedCurve {
    family: Family,
    label: String,
    field: Arc<Field>,
    f_poly: Vec<Elem>,
    g_poly: Vec<Elem>,
    generators: Vec<Generator>,
    semigroup: NumericalSemigroup,
    formula_genus: u64,
    points: Vec<AffinePoint>,
    suzuki_q0: Option<u64>,
}

impl PointedCurve {
    /// `F(y) = G(x)` with coprime degrees; x has pole order deg F and y
    /// has pole order deg G.
    pub fn sep_variable(field: &Arc<Field>, f: &[Elem], g: &[Elem]) -> Result<PointedCurve> {
        Self::plane(field, Family::Sep, f, g)
    }

    /// `y^2 = F(x)` in odd characteristic, `y^2 + y = F(x)` in even.
    pub fn hyperelliptic(field: &Arc<Field>, f: &[Elem]) -> Result<PointedCurve> {
        let f = poly::trim(f.to_vec());
        let d = poly::degree(&f).ok_or_else(|| Error::InvalidCurve("F is zero".into()))?;
        if d % 2 == 0 {
            return Err(Error::InvalidCurve(format!("F has even degree {d}")));
        }
        if field.characteristic() == 2 {
            Self::plane(field, Family::Hypereven, &[0, 1, 1], &f)
        } else {
            let g = poly::gcd(field, &f, &poly::derivative(field, &f));
            if poly::degree(&g) != Some(0) {
                return Err(Error::InvalidCurve("F is not squarefree".into()));
            }
            Self::plane(field, Family::Hyperodd, &[0, 0, 1], &f)
        }
    }

    /// `y^q + y = x^q0 (x^q + x)` over GF(q), q = 2 q0^2.
    pub fn suzuki(q0: u64) -> Result<PointedCurve> {
        if q0 < 2 || !q0.is_power_of_two() {
            return Err(Error::InvalidCurve(format!("q0 = {q0} is not a power of 2 above 1")));
        }
        let q = 2 * q0 * q0;
        let field = Field::of_order(q)?;
        let qs = q as usize;
        let mut f = vec![0; qs + 1];
        f[1] = 1;
        f[qs] = 1;
        let mut g = vec![0; qs + q0 as usize + 1];
        g[q0 as usize + 1] = 1;
        g[qs + q0 as usize] = 1;
        let mut c = Self::build(&field, Family::Suzuki, &f, &g, Some(q0))?;
        c.label = format!("suzuki-q0-{q0}");
        Ok(c)
    }

    /// `y^(q^(r-1)) + ... + y^q + y = x^u` over GF(q^r), u | (q^r-1)/(q-1).
    pub fn norm_trace_quotient(q: u64, r: u32, u: u64) -> Result<PointedCurve> {
        if prime_power(q).is_none() || r < 2 {
            return Err(Error::InvalidCurve(format!("need a prime power q and r >= 2, got q={q}, r={r}")));
        }
        let big = q
            .checked_pow(r)
            .filter(|&b| b <= crate::field::MAX_ORDER as u64)
            .ok_or_else(|| Error::UnsupportedField(format!("{q}^{r} is too large")))?;
        let norm = (big - 1) / (q - 1);
        if u < 2 || !norm.is_multiple_of(u) {
            return Err(Error::InvalidCurve(format!("u = {u} does not divide {norm}")));
        }
        let field = Field::of_order(big)?;
        let top = q.pow(r - 1) as usize;
        let mut f = vec![0; top + 1];
        for i in 0..r {
            f[q.pow(i) as usize] = 1;
        }
        let mut g = vec![0; u as usize + 1];
        g[u as usize] = 1;
        let mut c = Self::plane(&field, Family::Ntq, &f, &g)?;
        c.label = format!("ntq-{q}-{r}-{u}");
        Ok(c)
    }

    fn plane(field: &Arc<Field>, family: Family, f: &[Elem], g: &[Elem]) -> Result<PointedCurve> {
        Self::build(field, family, f, g, None)
    }

    fn build(
        field: &Arc<Field>,
        family: Family,
        f: &[Elem],
        g: &[Elem],
        suzuki_q0: Option<u64>,
    ) -> Result<PointedCurve> {
        let f = poly::trim(f.to_vec());
        let g = poly::trim(g.to_vec());
        if f.iter().chain(&g).any(|&c| c as usize >= field.order()) {
            return Err(Error::InvalidCurve("coefficient outside the field".into()));
        }
        let a = poly::degree(&f).unwrap_or(0) as u64;
        let b = poly::degree(&g).unwrap_or(0) as u64;
        if a < 1 || b < 1 {
            return Err(Error::InvalidCurve("F and G need positive degree".into()));
        }
        let mut generators =
            vec![Generator { name: "x".into(), pole_order: a }, Generator { name: "y".into(), pole_order: b }];
        let formula_genus = match suzuki_q0 {
            Some(q0) => {
                let q = a;
                generators.push(Generator { name: "z".into(), pole_order: q + 2 * q0 });
                generators.push(Generator { name: "w".into(), pole_order: q + 2 * q0 + 1 });
                q0 * (q - 1)
            }
            None => {
                if crate::field::gcd(a, b) != 1 {
                    return Err(Error::InvalidCurve(format!("degrees {a} and {b} are not coprime")));
                }
                (a - 1) * (b - 1) / 2
            }
        };
        let gens: Vec<u64> = generators.iter().map(|g| g.pole_order).collect();
        let semigroup = NumericalSemigroup::new(&gens)?;

        // bucket y by F(y), then solve for each x
        let mut buckets: Vec<Vec<Elem>> = vec![Vec::new(); field.order()];
        for y in field.elements() {
            buckets[poly::eval(field, &f, y) as usize].push(y);
        }
        let mut points = Vec::new();
        for x in field.elements() {
            for &y in &buckets[poly::eval(field, &g, x) as usize] {
                let mut values = vec![x, y];
                if let Some(q0) = suzuki_q0 {
                    let z = field.sub(field.pow(x, 2 * q0 + 1), field.pow(y, 2 * q0));
                    let w = field.sub(field.mul(x, field.pow(y, 2 * q0)), field.pow(z, 2 * q0));
                    values.push(z);
                    values.push(w);
                }
                points.push(AffinePoint { values });
            }
        }
        let label = format!("{:?}-{:?}", family, field).to_lowercase();
        Ok(PointedCurve {
            family,
            label,
            field: Arc::clone(field),
            f_poly: f,
            g_poly: g,
            generators,
            semigroup,
            formula_genus,
            points,
            suzuki_q0,
        })
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }

    /// F, the polynomial in y.
    pub fn f_poly(&self) -> &[Elem] {
        &self.f_poly
    }

    /// G, the polynomial in x.
    pub fn g_poly(&self) -> &[Elem] {
        &self.g_poly
    }

    pub fn suzuki_q0(&self) -> Option<u64> {
        self.suzuki_q0
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g.name == name)
    }

    pub fn semigroup(&self) -> &NumericalSemigroup {
        &self.semigroup
    }

    pub fn genus(&self) -> u64 {
        self.semigroup.genus()
    }

    /// Genus from the family formula, computed independently of S(Q).
    pub fn formula_genus(&self) -> u64 {
        self.formula_genus
    }

    pub fn affine_points(&self) -> &[AffinePoint] {
        &self.points
    }

    /// Rational points including Q.
    pub fn point_count(&self) -> usize {
        self.points.len() + 1
    }

    /// Symmetric S(Q) and exactly q*rho_2 + 1 rational points.
    pub fn is_castle(&self) -> bool {
        self.semigroup.is_symmetric()
            && self.point_count() as u64 == self.field.order() as u64 * self.semigroup.rho2() + 1
    }

    pub fn eval_monomial(&self, m: &Monomial, p: &AffinePoint) -> Elem {
        let f = &self.field;
        m.0.iter().zip(&p.values).fold(1, |acc, (&e, &v)| if e == 0 { acc } else { f.mul(acc, f.pow(v, e as u64)) })
    }

    pub fn eval_function(&self, h: &CurveFunction, p: &AffinePoint) -> Elem {
        let f = &self.field;
        h.terms.iter().fold(0, |acc, (c, m)| f.add(acc, f.mul(*c, self.eval_monomial(m, p))))
    }

    /// Lexicographically largest exponent vector (highest power of the
    /// first generator first) with pole order `s`.
    pub fn lex_monomial(&self, s: u64) -> Option<Monomial> {
        fn go(gens: &[Generator], s: u64, out: &mut Vec<u32>) -> bool {
            let Some((g, rest)) = gens.split_first() else {
                return s == 0;
            };
            let mut e = s / g.pole_order;
            loop {
                out.push(e as u32);
                if go(rest, s - e * g.pole_order, out) {
                    return true;
                }
                out.pop();
                if e == 0 {
                    return false;
                }
                e -= 1;
            }
        }
        let mut out = Vec::with_capacity(self.generators.len());
        go(&self.generators, s, &mut out).then_some(Monomial(out))
    }

    /// One monomial per semigroup element up to `m`, in increasing pole
    /// order. With `power_q`, an element `q*t` with `t` a nonzero element
    /// reuses `f_t^q`.
    pub fn function_basis(&self, m: i64, power_q: Option<u64>) -> Vec<CurveFunction> {
        let mut chosen: BTreeMap<u64, Monomial> = BTreeMap::new();
        let mut out = Vec::new();
        if m < 0 {
            return out;
        }
        for s in 0..=m as u64 {
            if !self.semigroup.contains(s) {
                continue;
            }
            let mono = match power_q {
                Some(q) if s > 0 && s % q == 0 && chosen.contains_key(&(s / q)) && s / q > 0 => {
                    chosen[&(s / q)].pow(q as u32)
                }
                _ => self.lex_monomial(s).expect("generators span the semigroup"),
            };
            chosen.insert(s, mono.clone());
            out.push(CurveFunction::monomial(mono, &self.generators));
        }
        out
    }

    /// Evaluation set over the fibration given by generator `fibration`.
    /// Without `u`, every value whose fiber is totally split is used.
    pub fn eval_set(self: &Arc<Self>, fibration: usize, u: Option<&[Elem]>) -> Result<EvaluationSet> {
        EvaluationSet::new(self, fibration, u)
    }

    pub fn report(&self) -> CurveReport {
        CurveReport {
            curve: self.label.clone(),
            family: self.family,
            field: self.field.descriptor(),
            genus: self.genus(),
            points: self.point_count(),
            semigroup: self.semigroup.report(),
            castle: self.is_castle(),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CurveReport {
    pub curve: String,
    pub family: Family,
    pub field: FieldDescriptor,
    pub genus: u64,
    pub points: usize,
    pub semigroup: crate::semigroup::SemigroupReport,
    pub castle: bool,
}

/// D = sum of the points in the totally split fibers of f over U.
#[derive(Clone, Debug)]
pub struct EvaluationSet {
    curve: Arc<PointedCurve>,
    fibration: usize,
    u: Vec<Elem>,
    fiber: usize,
    points: Vec<AffinePoint>,
    phi: CurveFunction,
}

impl EvaluationSet {
    fn new(curve: &Arc<PointedCurve>, fibration: usize, u: Option<&[Elem]>) -> Result<EvaluationSet> {
        let gen = curve
            .generators
            .get(fibration)
            .ok_or_else(|| Error::NoFibration(format!("no generator with index {fibration}")))?;
        let fiber = gen.pole_order as usize;
        let f = &curve.field;
        let mut fibers: BTreeMap<Elem, Vec<AffinePoint>> = BTreeMap::new();
        for p in &curve.points {
            fibers.entry(p.values[fibration]).or_default().push(p.clone());
        }
        let u: Vec<Elem> = match u {
            Some(u) => {
                let mut u = u.to_vec();
                u.sort_unstable();
                u.dedup();
                for &a in &u {
                    let size = fibers.get(&a).map_or(0, |v| v.len());
                    if a as usize >= f.order() || size != fiber {
                        return Err(Error::NoFibration(format!(
                            "fiber of {} over {a} has {size} points, expected {fiber}",
                            gen.name
                        )));
                    }
                }
                u
            }
            None => fibers.iter().filter(|(_, v)| v.len() == fiber).map(|(&a, _)| a).collect(),
        };
        if u.is_empty() {
            return Err(Error::NoFibration(format!("{} has no totally split fiber", gen.name)));
        }
        let mut points = Vec::with_capacity(u.len() * fiber);
        for a in &u {
            let mut fib = fibers[a].clone();
            // order by the remaining coordinates, x before y
            fib.sort_by(|p, q| p.values.cmp(&q.values));
            points.extend(fib);
        }
        let coeffs = poly::from_roots(f, &u);
        let terms = coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(j, &c)| {
                let mut e = vec![0; curve.generators.len()];
                e[fibration] = j as u32;
                (c, Monomial(e))
            })
            .collect();
        let phi = CurveFunction { terms, pole_order: (u.len() * fiber) as u64 };
        Ok(EvaluationSet { curve: Arc::clone(curve), fibration, u, fiber, points, phi })
    }

    pub fn curve(&self) -> &Arc<PointedCurve> {
        &self.curve
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.curve.field
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn fibration(&self) -> usize {
        self.fibration
    }

    pub fn u(&self) -> &[Elem] {
        &self.u
    }

    pub fn fiber_size(&self) -> usize {
        self.fiber
    }

    pub fn points(&self) -> &[AffinePoint] {
        &self.points
    }

    /// `prod_{a in U} (f - a)`; its zeros are exactly D.
    pub fn phi(&self) -> &CurveFunction {
        &self.phi
    }

    /// Every affine point is used.
    pub fn is_complete(&self) -> bool {
        self.points.len() == self.curve.points.len()
    }

    pub fn evaluate(&self, h: &CurveFunction) -> Vec<Elem> {
        self.points.iter().map(|p| self.curve.eval_function(h, p)).collect()
    }

    pub fn eval_matrix(&self, basis: &[CurveFunction]) -> Matrix {
        let rows: Vec<Vec<Elem>> = basis.iter().map(|h| self.evaluate(h)).collect();
        Matrix::from_rows(&rows, self.len())
    }

    /// `{phi * f : f in the basis of L((m-n)Q)}`.
    pub fn kernel_basis(&self, m: i64) -> Result<Vec<CurveFunction>> {
        if !self.curve.is_castle() {
            return Err(Error::NotCastle(self.curve.label.clone()));
        }
        let gens = &self.curve.generators;
        Ok(self
            .curve
            .function_basis(m - self.len() as i64, None)
            .iter()
            .map(|f| self.phi.times_monomial(f.as_monomial().unwrap(), gens))
            .collect())
    }
}

/// JSON curve description consumed by the CLI.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CurveSpec {
    pub family: Family,
    #[serde(default)]
    pub field: Option<FieldDescriptor>,
    #[serde(default)]
    pub params: serde_json::Value,
    #[serde(default)]
    pub name: Option<String>,
}

#[derive(Deserialize)]
struct SepParams {
    #[serde(rename = "F")]
    f: Vec<Elem>,
    #[serde(rename = "G")]
    g: Vec<Elem>,
}

#[derive(Deserialize)]
struct HyperParams {
    #[serde(rename = "F")]
    f: Vec<Elem>,
}

#[derive(Deserialize)]
struct SuzukiParams {
    q0: u64,
}

#[derive(Deserialize)]
struct NtqParams {
    q: u64,
    r: u32,
    u: u64,
}

#[derive(Deserialize, Default)]
struct EvalParams {
    #[serde(default)]
    fibration: Option<String>,
    #[serde(default, rename = "U")]
    u: Option<Vec<Elem>>,
}

impl CurveSpec {
    pub fn from_json(s: &str) -> Result<CurveSpec> {
        Ok(serde_json::from_str(s)?)
    }

    fn field(&self) -> Result<Arc<Field>> {
        let d = self.field.as_ref().ok_or_else(|| Error::Invalid("curve spec needs a field".into()))?;
        Field::from_descriptor(d)
    }

    pub fn curve(&self) -> Result<PointedCurve> {
        let p = self.params.clone();
        let c = match self.family {
            Family::Sep => {
                let sp: SepParams = serde_json::from_value(p)?;
                PointedCurve::sep_variable(&self.field()?, &sp.f, &sp.g)?
            }
            Family::Hyperodd | Family::Hypereven => {
                let hp: HyperParams = serde_json::from_value(p)?;
                let f = self.field()?;
                let even = f.characteristic() == 2;
                if even != (self.family == Family::Hypereven) {
                    return Err(Error::InvalidCurve(format!(
                        "{:?} does not match the characteristic of {f:?}",
                        self.family
                    )));
                }
                PointedCurve::hyperelliptic(&f, &hp.f)?
            }
            Family::Suzuki => {
                let sp: SuzukiParams = serde_json::from_value(p)?;
                let c = PointedCurve::suzuki(sp.q0)?;
                if let Some(d) = &self.field {
                    Field::from_descriptor(d)?;
                    if d.p != 2 || 2u64.pow(d.k) != c.field.order() as u64 {
                        return Err(Error::InvalidCurve("Suzuki field must be GF(2 q0^2)".into()));
                    }
                }
                c
            }
            Family::Ntq => {
                let np: NtqParams = serde_json::from_value(p)?;
                PointedCurve::norm_trace_quotient(np.q, np.r, np.u)?
            }
        };
        Ok(match &self.name {
            Some(n) => c.with_label(n.clone()),
            None => c,
        })
    }

    /// Curve plus the evaluation set named by the optional `fibration`
    /// (generator name, default x) and `U` params.
    pub fn build(&self) -> Result<EvaluationSet> {
        let curve = Arc::new(self.curve()?);
        let ep: EvalParams = serde_json::from_value(self.params.clone()).unwrap_or_default();
        let name = ep.fibration.as_deref().unwrap_or("x");
        let idx = curve.generator_index(name).ok_or_else(|| Error::NoFibration(format!("unknown function {name}")))?;
        curve.eval_set(idx, ep.u.as_deref())
    }
}
