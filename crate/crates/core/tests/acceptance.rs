//! One PASS/FAIL line per acceptance criterion. Criteria listed in
//! `KNOWN_FAILURES` fail on the published numbers themselves; the binary
//! exits nonzero only when the outcome differs from that list.

mod common;

use std::collections::BTreeSet;
use std::sync::Arc;
use std::time::{Duration, Instant};

use castleqec::agcodes::{ag_build, dual_pole_order, incomplete_trace_search, trace_basis};
use castleqec::quantum::{css_nested, css_self_orthogonal, gv_status, Provenance};
use castleqec::repro::{run_target, target, Verdict};
use castleqec::{CodeSequence, Elem, Field, GvStatus, InnerProduct, LinearCode, PointedCurve, TwistVector};
use common::*;

/// Semigroup of the Suzuki curve is <8,10,12,13> (genus 14), and the
/// [[32,26,3]]_8 triple meets rather than exceeds the GV bound.
const KNOWN_FAILURES: [u32; 3] = [2, 5, 8];

type Outcome = Result<String, String>;
type Criterion = (u32, fn() -> Outcome, Duration);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn mark(s: GvStatus) -> char {
    match s {
        GvStatus::Meets => '†',
        GvStatus::Exceeds => '‡',
        _ => ' ',
    }
}

/// Runs a repro target, returning the failing rows and checks as text.
fn target_failures(name: &str) -> Result<Vec<String>, String> {
    let t = target(name).map_err(|e| e.to_string())?;
    let rep = run_target(&t, budget()).map_err(|e| e.to_string())?;
    let mut bad = Vec::new();
    for c in rep.checks.iter().filter(|c| !c.pass) {
        bad.push(format!("{}: {:?} got {}", c.curve, c.check, c.actual));
    }
    for r in rep.rows.iter().filter(|r| !r.verdict.ok()) {
        bad.push(format!("{}: {} got {} ({:?}) {}", r.curve, r.expected, r.computed_text, r.verdict, r.note));
    }
    Ok(bad)
}

fn require_target(name: &str) -> Result<(), String> {
    let bad = target_failures(name)?;
    ensure(bad.is_empty(), || bad.join("; "))
}

/// Light dual word of C_i found by column ranks, moved by the twist into
/// C_{n-i}; returns its weight if it lands outside C_i.
fn c_witness(seq: &CodeSequence, i: usize, max: usize) -> Option<u64> {
    let f = seq.field().clone();
    let lo = seq.code(i);
    let hi = seq.code(seq.len() - i);
    let x = seq.twist()?;
    let (w, word) = dual_distance_by_rank(&f, lo.generator(), max)?;
    let mul: Vec<Elem> = word.iter().zip(x.entries()).map(|(&a, &b)| f.mul(a, b)).collect();
    let div: Vec<Elem> = word.iter().zip(x.entries()).map(|(&a, &b)| f.div(a, b)).collect();
    let moved = if hi.contains_word(&mul) { mul } else { div };
    (hi.contains_word(&moved) && !lo.contains_word(&moved)).then_some(w as u64)
}

fn criterion_1() -> Outcome {
    let (e, seq) = sequence(elliptic_gf4(), "x");
    let n = e.len() as i64;
    let cap = n + 2 * e.curve().genus() as i64 - 2;
    let mut checked = 0;
    for &m in seq.m_set() {
        let m = m as i64;
        if m > cap {
            continue;
        }
        let lhs = ag_build(&e, m).code.dual();
        let rhs = ag_build(&e, 8 - m).code;
        ensure(lhs == rhs, || format!("C({m}Q)^perp != C({}Q)", 8 - m))?;
        checked += 1;
    }
    let c1 = seq.code(1);
    let d = brute_quantum_distance(&c1, InnerProduct::Hermitian).ok_or("no quantum word")?;
    ensure(d == 2, || format!("brute force distance {d}"))?;
    ensure(gv_mark(8, 6, 2, 2) == '‡', || "reference GV tag".into())?;
    require_target("elliptic-gf4")?;
    Ok(format!("[[8,6,2]]_2‡ exact, self-dual at {checked} pole orders"))
}

fn criterion_2() -> Outcome {
    let suzuki = PointedCurve::suzuki(2).map_err(|e| e.to_string())?;
    let gens = suzuki.semigroup().generators().to_vec();
    let (_, seq) = sequence(suzuki, "x");
    let mut found = Vec::new();
    for (i, d) in [(5usize, 3u64), (6, 4)] {
        let w = c_witness(&seq, i, 6).ok_or_else(|| format!("no witness at i={i}"))?;
        ensure(w >= d, || format!("i={i}: column ranks give {w} < {d}"))?;
        found.push(format!("i={i}:{w}"));
    }
    ensure(gv_mark(64, 62, 2, 8) == '†' && gv_mark(64, 52, 4, 8) == '†', || "reference GV tags".into())?;
    let bad = target_failures("suzuki8")?;
    ensure(bad.is_empty(), || format!("{} (S generated by {gens:?})", bad.join("; ")))?;
    Ok(format!("seven rows bounded, rank oracle {}", found.join(" ")))
}

fn criterion_3() -> Outcome {
    let (_, seq) = sequence(sep(9, &[0, 0, 1], &[0, 1, 0, 1]), "y");
    for (i, d, tag) in [(1usize, 2u64, '†'), (4, 4, '†'), (5, 5, '†'), (6, 6, '†'), (7, 7, ' ')] {
        let w = c_witness(&seq, i, 15).ok_or_else(|| format!("no witness at i={i}"))?;
        ensure(w == d, || format!("i={i}: rank oracle {w}, expected {d}"))?;
        let k = 15 - 2 * i as u64;
        ensure(gv_mark(15, k, d, 9) == tag, || format!("reference tag for [[15,{k},{d}]]"))?;
    }
    require_target("elliptic-gf9")?;
    Ok("five rows exact, tags recomputed".into())
}

fn criterion_4() -> Outcome {
    let mut rows = Vec::new();
    for (q, u, fy, gx) in [(2u64, 3u64, vec![0, 1, 1], vec![0, 0, 0, 1]), (4, 5, vec![0, 1, 1], vec![0, 0, 0, 0, 0, 1])]
    {
        let (_, seq) = sequence(sep(q * q, &fy, &gx), "x");
        let scan = seq.self_orthogonality_range(InnerProduct::Hermitian).map_err(|e| e.to_string())?;
        let formula = seq.m_set().iter().copied().filter(|&m| (q + 1) * m <= 2 * q * q + u - 3).max();
        ensure(scan == formula, || format!("q={q} u={u}: scan {scan:?}, formula {formula:?}"))?;
        rows.push(format!("q={q}:m<={}", scan.unwrap_or(0)));
    }
    let (_, seq) = sequence(elliptic_gf4(), "x");
    ensure(brute_quantum_distance(&seq.code(1), InnerProduct::Hermitian) == Some(2), || {
        "brute force [[8,6,2]]".into()
    })?;
    require_target("hyper-even")?;
    Ok(format!("thresholds {}", rows.join(" ")))
}

fn criterion_5() -> Outcome {
    let (_, seq) = sequence(PointedCurve::norm_trace_quotient(2, 4, 3).map_err(|e| e.to_string())?, "x");
    let scan = seq.self_orthogonality_range(InnerProduct::Hermitian).map_err(|e| e.to_string())?;
    ensure(scan == Some(8), || format!("Hermitian range {scan:?}"))?;
    let (_, seq) = sequence(PointedCurve::norm_trace_quotient(2, 3, 7).map_err(|e| e.to_string())?, "x");
    let scan = seq.self_orthogonality_range(InnerProduct::Euclidean).map_err(|e| e.to_string())?;
    ensure(scan == Some(24), || format!("Euclidean range {scan:?}"))?;
    let f8 = field(8);
    for (i, d) in [(2usize, 2usize), (3, 3), (7, 4)] {
        let c = seq.code(i);
        let (w, word) = dual_distance_by_rank(&f8, c.generator(), 5).ok_or("no dual word")?;
        ensure(w == d && !c.contains_word(&word), || format!("i={i}: rank oracle {w}"))?;
    }
    let tags = [(32, 28, 2, '†'), (32, 26, 3, '‡')];
    let off: Vec<String> = tags
        .iter()
        .filter(|&&(n, k, d, t)| gv_mark(n, k, d, 8) != t)
        .map(|&(n, k, d, t)| format!("[[{n},{k},{d}]]_8{t} recomputes as '{}'", gv_mark(n, k, d, 8)))
        .collect();
    let bad = target_failures("normtrace")?;
    ensure(bad.is_empty() && off.is_empty(), || [bad, off].concat().join("; "))?;
    Ok("ranges and distances exact".into())
}

fn criterion_6() -> Outcome {
    let (e, _) = sequence(PointedCurve::suzuki(2).map_err(|e| e.to_string())?, "x");
    let f2 = field(2);
    let s = e.curve().semigroup().clone();
    for m in (0..=31i64).filter(|&m| s.contains(m as u64)) {
        let c = trace_basis(&e, m, 2).map_err(|e| e.to_string())?.code(&f2, 64);
        let so = c.is_self_orthogonal(InnerProduct::Euclidean).map_err(|e| e.to_string())?;
        ensure(so == (m <= 30), || format!("trace at m={m} self-orthogonal: {so}"))?;
        if m == 30 {
            ensure(c.dim() == 32 && c.dual() == c, || "trace at 30 not self-dual of dim 32".into())?;
        }
    }
    for (m, d) in [(0i64, 2usize), (10, 4)] {
        let c = trace_basis(&e, m, 2).map_err(|e| e.to_string())?.code(&f2, 64);
        let (w, word) = dual_distance_by_rank(&f2, c.generator(), d).ok_or("no dual word")?;
        ensure(w == d && !c.contains_word(&word), || format!("m={m}: rank oracle {w}"))?;
    }
    let (e4, _) = sequence(elliptic_gf4(), "x");
    let t = incomplete_trace_search(&e4, 3, 2, budget()).map_err(|e| e.to_string())?.ok_or("no incomplete trace")?;
    ensure(t.code.dim() == 4 && t.code.dual() == t.code, || "incomplete trace is not a self-dual [8,4]".into())?;
    let min = ambient(&f2, 8)
        .filter(|v| v.iter().any(|&a| a != 0) && t.code.contains_word(v))
        .map(|v| v.iter().filter(|&&a| a != 0).count())
        .min();
    ensure(min == Some(4), || format!("[8,4] minimum weight {min:?}"))?;
    for (q, m) in [(3u64, 4i64), (4, 5)] {
        let (e, _) = sequence(hermitian(q), "x");
        let t = incomplete_trace_search(&e, m, q, budget()).map_err(|e| e.to_string())?.ok_or("no incomplete trace")?;
        let (w, word) = dual_distance_by_rank(&field(q), t.code.generator(), 3).ok_or("no dual word")?;
        ensure(w == 3 && !t.code.contains_word(&word), || format!("q={q}: rank oracle {w}"))?;
    }
    require_target("hermitian-trace")?;
    Ok("trace range 30, [8,4] self-dual, incomplete traces exact".into())
}

fn criterion_7() -> Outcome {
    let mut notes = Vec::new();
    for name in ["maximal-q9", "maximal-q8", "maximal-2-6"] {
        let t = target(name).map_err(|e| e.to_string())?;
        let rep = run_target(&t, budget()).map_err(|e| e.to_string())?;
        for r in &rep.rows {
            let p = r.computed.as_ref().ok_or_else(|| format!("{name}: {} unavailable", r.expected))?;
            ensure(p.d >= 2, || format!("{name}: {} bound {}", r.expected, p.d))?;
            if r.verdict == Verdict::BoundGap || r.verdict == Verdict::DimensionOnly {
                notes.push(format!("bound-gap {} at {}", r.expected, r.computed_text));
            }
        }
        ensure(rep.passed(), || {
            let bad: Vec<_> = rep.rows.iter().filter(|r| !r.verdict.ok()).map(|r| r.expected.clone()).collect();
            format!("{name}: {}", bad.join(", "))
        })?;
    }
    if notes.is_empty() {
        Ok("all rows reach the listed distance".into())
    } else {
        Ok(notes.join("; "))
    }
}

/// Every tagged triple of the published example lists, in order.
const TAGGED: &[(u64, u64, u64, u64, char)] = &[
    (64, 62, 2, 8, '†'),
    (64, 52, 4, 8, '†'),
    (8, 6, 2, 2, '‡'),
    (32, 30, 2, 4, '‡'),
    (32, 24, 4, 4, '‡'),
    (128, 126, 2, 8, '‡'),
    (128, 116, 4, 8, '†'),
    (128, 112, 6, 8, '‡'),
    (128, 108, 8, 8, '‡'),
    (15, 13, 2, 9, '†'),
    (15, 7, 4, 9, '†'),
    (15, 5, 5, 9, '†'),
    (15, 3, 6, 9, '†'),
    (32, 30, 2, 4, '‡'),
    (32, 24, 3, 4, '†'),
    (32, 28, 2, 8, '†'),
    (32, 26, 3, 8, '‡'),
    (8, 6, 2, 2, '‡'),
    (64, 54, 3, 4, '†'),
    (64, 52, 4, 4, '†'),
    (176, 150, 8, 8, '†'),
    (176, 146, 9, 8, '†'),
    (243, 241, 2, 9, '‡'),
    (243, 233, 3, 9, '†'),
    (256, 254, 2, 8, '‡'),
    (256, 248, 3, 8, '†'),
    (128, 126, 2, 8, '‡'),
    (128, 116, 4, 8, '†'),
    (128, 112, 6, 8, '‡'),
    (128, 108, 8, 8, '‡'),
    (64, 62, 2, 2, '‡'),
    (64, 50, 4, 2, '‡'),
    (64, 50, 4, 2, '‡'),
    (512, 492, 4, 2, '‡'),
    (27, 19, 3, 3, '†'),
    (729, 715, 3, 3, '†'),
    (64, 56, 3, 4, '†'),
    (125, 117, 3, 5, '†'),
    (343, 335, 3, 7, '†'),
    (512, 504, 3, 8, '†'),
    (729, 721, 3, 9, '†'),
    (32, 20, 4, 2, '‡'),
    (128, 112, 4, 2, '‡'),
];

/// Untagged published triples: must classify as below the bound.
const UNTAGGED: &[(u64, u64, u64, u64)] = &[
    (64, 54, 3, 8),
    (64, 42, 5, 8),
    (64, 40, 6, 8),
    (64, 38, 7, 8),
    (64, 36, 8, 8),
    (32, 18, 4, 8),
    (176, 162, 3, 8),
    (176, 156, 5, 8),
    (176, 154, 6, 8),
    (243, 219, 6, 9),
    (256, 238, 4, 8),
    (256, 224, 8, 8),
];

fn criterion_8() -> Outcome {
    let mut off = Vec::new();
    for &(n, k, d, q, tag) in TAGGED {
        let got = mark(gv_status(n, k, d, q));
        let reference = gv_mark(n, k, d, q);
        if got != reference {
            return Err(format!("[[{n},{k},{d}]]_{q}: classifier '{got}' vs reference '{reference}'"));
        }
        if got != tag {
            off.push(format!("[[{n},{k},{d}]]_{q}{tag} recomputes as '{got}'"));
        }
    }
    for &(n, k, d, q) in UNTAGGED {
        let got = mark(gv_status(n, k, d, q));
        if got != ' ' {
            off.push(format!("untagged [[{n},{k},{d}]]_{q} recomputes as '{got}'"));
        }
    }
    ensure(off.is_empty(), || off.join("; "))?;
    Ok(format!("{} tagged triples", TAGGED.len()))
}

fn criterion_9() -> Outcome {
    let mut r = rng(9);
    let mut total = 0;
    for (big, small) in [(4u64, 2u64), (8, 2), (9, 3), (16, 2), (16, 4)] {
        let f = field(big);
        for _ in 0..100 {
            let n = r_usize(&mut r, 2, 12);
            let k = r_usize(&mut r, 0, n);
            let c = random_code(&f, n, k, &mut r);
            let lhs = c.subfield_subcode(small).map_err(|e| e.to_string())?.dual();
            let rhs = c.dual().trace_code(small).map_err(|e| e.to_string())?;
            ensure(lhs == rhs, || format!("Delsarte fails over GF({big}) to GF({small})"))?;
            total += 1;
        }
    }
    for (c, fib) in small_curves() {
        let label = c.label().to_string();
        let sg = c.semigroup().clone();
        let gaps = (0..sg.conductor()).filter(|&t| !sg.contains(t)).count() as u64;
        ensure(c.genus() == gaps, || format!("{label}: genus {} vs {gaps} gaps", c.genus()))?;
        if c.is_castle() {
            let rho2 = (1..).find(|&t| sg.contains(t)).unwrap();
            ensure(c.point_count() as u64 == c.field().order() as u64 * rho2 + 1, || format!("{label}: Castle count"))?;
        }
        let (e, seq) = sequence(c, fib);
        let x = seq.twist().ok_or_else(|| format!("{label}: no twist"))?.clone();
        for &m in seq.m_set() {
            let m = m as i64;
            let mp = dual_pole_order(&e, m);
            if mp < 0 {
                continue;
            }
            let dual = ag_build(&e, m).code.dual();
            let other = ag_build(&e, mp).code;
            let ok = dual == other.star(&x).map_err(|e| e.to_string())?
                || dual == other.star(&x.inverse()).map_err(|e| e.to_string())?;
            ensure(ok, || format!("{label}: duality at m={m}"))?;
        }
    }
    for q in [2u64, 3, 4, 5, 8, 9] {
        let f = field(q);
        for _ in 0..100 {
            let n = r_usize(&mut r, 2, 10);
            let k = r_usize(&mut r, 0, n.min(6));
            let c = random_code(&f, n, k, &mut r);
            star_invariance(&f, &c, &mut r)?;
            let hull = c.sum(&c.dual()).dual();
            let a = css_self_orthogonal(&hull, u64::MAX, None).map_err(|e| e.to_string())?;
            let b = css_nested(&hull, &hull.dual(), u64::MAX, None).map_err(|e| e.to_string())?;
            ensure((a.n, a.k, a.d) == (b.n, b.k, b.d) && a.d_provenance == Provenance::Exact, || {
                format!("css mismatch over GF({q}): {a} vs {b}")
            })?;
        }
    }
    Ok(format!("{total} Delsarte checks, {} curves", small_curves().len()))
}

fn r_usize(r: &mut rand_chacha::ChaCha8Rng, lo: usize, hi: usize) -> usize {
    use rand::Rng;
    r.gen_range(lo..=hi)
}

fn star_invariance(f: &Arc<Field>, c: &LinearCode, r: &mut rand_chacha::ChaCha8Rng) -> Result<(), String> {
    let q = f.order() as Elem;
    let x: Vec<Elem> = (0..c.len()).map(|_| 1 + rand_elem(f, r) % (q - 1)).collect();
    let x = TwistVector::new(f, x).map_err(|e| e.to_string())?;
    let s = c.star(&x).map_err(|e| e.to_string())?;
    ensure(s.enumerate_weights() == c.enumerate_weights(), || "star changed the weights".into())
}

fn main() {
    let criteria: [Criterion; 9] = [
        (1, criterion_1, Duration::from_secs(1)),
        (2, criterion_2, Duration::from_secs(120)),
        (3, criterion_3, Duration::from_secs(120)),
        (4, criterion_4, Duration::from_secs(60)),
        (5, criterion_5, Duration::from_secs(180)),
        (6, criterion_6, Duration::from_secs(180)),
        (7, criterion_7, Duration::from_secs(300)),
        (8, criterion_8, Duration::from_secs(5)),
        (9, criterion_9, Duration::from_secs(300)),
    ];
    let only: Option<u32> = std::env::args().skip(1).find_map(|a| a.parse().ok());
    let mut failed = BTreeSet::new();
    for (id, run, limit) in criteria {
        if only.is_some_and(|o| o != id) {
            continue;
        }
        let start = Instant::now();
        let mut out = run();
        let took = start.elapsed();
        if out.is_ok() && took > limit {
            out = Err(format!("took {took:.1?}, limit {limit:?}"));
        }
        match out {
            Ok(msg) => println!("criterion {id}: PASS ({took:.2?}) {msg}"),
            Err(msg) => {
                failed.insert(id);
                println!("criterion {id}: FAIL ({took:.2?}) {msg}");
            }
        }
    }
    let expected: BTreeSet<u32> = KNOWN_FAILURES.iter().copied().filter(|&k| only.is_none_or(|o| o == k)).collect();
    if failed != expected {
        println!("unexpected outcome: failed {failed:?}, known {expected:?}");
        std::process::exit(1);
    }
    println!("outcome matches the known list {expected:?}");
}
