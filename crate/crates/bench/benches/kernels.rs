use castleqec::agcodes::{ag_build, trace_basis};
use castleqec::quantum::gv_report;
use castleqec::{Field, InnerProduct};
use castleqec_bench::{norm_trace, suzuki};
use criterion::{black_box, criterion_group, criterion_main, Criterion};

fn field_ops(c: &mut Criterion) {
    let f = Field::make(2, 6).unwrap();
    c.bench_function("gf64_mul_all_pairs", |b| {
        b.iter(|| {
            let mut acc = 0u16;
            for x in 0..64u16 {
                for y in 0..64u16 {
                    acc ^= f.mul(black_box(x), black_box(y));
                }
            }
            acc
        })
    });
}

fn codes(c: &mut Criterion) {
    let (e, seq) = norm_trace();
    c.bench_function("ag_build_ntq237_m24", |b| b.iter(|| ag_build(&e, black_box(24))));
    let c5 = seq.code(5);
    c.bench_function("weights_ntq237_k5", |b| b.iter(|| c5.enumerate_weights()));
    let c7 = seq.code(7);
    c.bench_function("dual_search_ntq237_i7", |b| b.iter(|| c7.dual_search(black_box(4), u64::MAX)));
    c.bench_function("self_orth_index_ntq237", |b| {
        b.iter(|| seq.self_orthogonal_index(InnerProduct::Euclidean).unwrap())
    });
}

fn suzuki_kernels(c: &mut Criterion) {
    let (e, seq) = suzuki();
    c.bench_function("suzuki_sequence", |b| b.iter(|| castleqec::CodeSequence::new(&e).unwrap()));
    let c5 = seq.code(5);
    c.bench_function("dual_search_suzuki_i5", |b| b.iter(|| c5.dual_search(black_box(4), u64::MAX)));
    c.bench_function("trace_basis_suzuki_m10", |b| b.iter(|| trace_basis(&e, black_box(10), 2).unwrap()));
}

fn gv(c: &mut Criterion) {
    c.bench_function("gv_729_715_3", |b| b.iter(|| gv_report(black_box(729), 715, 3, 3)));
}

criterion_group! {
    name = benches;
    config = Criterion::default().sample_size(20);
    targets = field_ops, codes, suzuki_kernels, gv
}
criterion_main!(benches);
