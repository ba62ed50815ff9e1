mod common;

use common::*;
use extrainv::oracle::{brute_decomposition_check, brute_dimensions, brute_invariance_set, brute_span_membership, SpanBasis};
use extrainv::{
    cutoff, dft, dim_function, fiber_membership, idft, invariance_set, is_invariant_rank, is_invariant_subspace,
    periodized_character, refine_context, subgroups_between, translate, Complex64, FiberContext, Signal,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn span_combination<R: Rng>(rng: &mut R, basis: &SpanBasis, g: &extrainv::Group) -> Signal {
    let mut v = vec![Complex64::new(0.0, 0.0); g.order()];
    for col in basis.columns() {
        let c = Complex64::new(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
        for (a, b) in v.iter_mut().zip(col) {
            *a += c * b;
        }
    }
    Signal::new(g, v).unwrap()
}

#[test]
fn fiber_membership_matches_dense_membership() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let groups = test_groups();
    let mut members = 0;
    for _ in 0..200 {
        let inst = random_instance(&mut rng, &groups);
        let ctx = FiberContext::new(&inst.group, &inst.h).unwrap();
        let basis = SpanBasis::new(&inst.group, &inst.h, &inst.family).unwrap();
        let x = inst.group.element_at(rng.gen_range(0..inst.group.order()));
        let candidates = [
            span_combination(&mut rng, &basis, &inst.group),
            idft(&random_spectrum(&mut rng, &inst.group)),
            translate(&inst.family[0], &x).unwrap(),
        ];
        for g in candidates {
            let fiber = fiber_membership(&ctx, &inst.family, &g, TOL).unwrap().member;
            let dense = brute_span_membership(&basis, &g, TOL).unwrap();
            assert_eq!(fiber, dense);
            members += fiber as usize;
        }
    }
    // both outcomes must actually occur
    assert!(members > 200 && members < 600, "members = {members}");
}

#[test]
fn criteria_agree_with_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let groups = test_groups();
    let mut invariant = 0;
    for _ in 0..200 {
        let inst = random_instance(&mut rng, &groups);
        let base = FiberContext::new(&inst.group, &inst.h).unwrap();
        let ictx = refine_context(&base, &inst.m).unwrap();
        let rank = is_invariant_rank(&ictx, &inst.family, TOL).unwrap();
        let sub = is_invariant_subspace(&ictx, &inst.family, TOL).unwrap();
        let brute = brute_decomposition_check(&inst.group, &inst.h, &inst.m, &inst.family, TOL).unwrap();
        let (dim_s, dim_sum) = brute_dimensions(&inst.group, &inst.h, &inst.m, &inst.family, TOL).unwrap();
        assert_eq!(rank.verdict, sub.verdict);
        assert_eq!(rank.verdict, brute);
        assert!(dim_s <= dim_sum);
        assert_eq!(brute, dim_s == dim_sum);

        let total: usize = rank.per_omega.iter().map(|r| r.rank_total).sum();
        assert_eq!(total, dim_s, "dim S equals the integrated dimension function");

        let set = invariance_set(&base, &inst.family, TOL).unwrap();
        let brute_set = brute_invariance_set(&inst.group, &inst.h, &inst.family, TOL).unwrap();
        assert_eq!(set, brute_set);
        assert!(inst.h.is_subgroup_of(&set));
        assert_eq!(rank.verdict, inst.m.is_subgroup_of(&set));
        invariant += rank.verdict as usize;
    }
    assert!(invariant > 0 && invariant < 200);
}

#[test]
fn invariance_set_is_the_largest_invariant_subgroup() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let groups = test_groups();
    for _ in 0..60 {
        let inst = random_instance(&mut rng, &groups);
        let base = FiberContext::new(&inst.group, &inst.h).unwrap();
        let set = invariance_set(&base, &inst.family, TOL).unwrap();
        for m in subgroups_between(&inst.group, &inst.h) {
            let ictx = refine_context(&base, &m).unwrap();
            let verdict = is_invariant_rank(&ictx, &inst.family, TOL).unwrap().verdict;
            assert_eq!(verdict, m.is_subgroup_of(&set));
        }
    }
}

#[test]
fn invariant_spaces_split_into_blocks() {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    let groups = test_groups();
    let mut checked = 0;
    while checked < 60 {
        let inst = random_instance(&mut rng, &groups);
        let base = FiberContext::new(&inst.group, &inst.h).unwrap();
        let set = invariance_set(&base, &inst.family, TOL).unwrap();
        // analyse against the invariance set itself so the verdict is true
        let ictx = refine_context(&base, &set).unwrap();
        let report = is_invariant_rank(&ictx, &inst.family, TOL).unwrap();
        assert!(report.verdict);
        checked += 1;

        let sigmas = ictx.sigmas();
        let dims = dim_function(&base, &inst.family, TOL).unwrap();
        for (row, (_, d)) in report.per_omega.iter().zip(&dims) {
            assert_eq!(row.rank_total, *d);
        }
        for f in &inst.family {
            let parts: Vec<Signal> = sigmas.iter().map(|s| cutoff(&ictx, f, s).unwrap()).collect();
            let mut sum = vec![Complex64::new(0.0, 0.0); f.values().len()];
            for p in &parts {
                for (a, b) in sum.iter_mut().zip(p.values()) {
                    *a += b;
                }
                assert!(fiber_membership(&base, &inst.family, p, TOL).unwrap().member);
            }
            let err = sum.iter().zip(f.values()).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
            assert!(err <= 1e-10 * f.max_abs().max(1.0));
            for i in 0..parts.len() {
                for j in i + 1..parts.len() {
                    assert!(parts[i].inner(&parts[j]).norm() <= 1e-12 * f.norm_sqr().max(1.0));
                }
            }
            // l_m times a block cut-off stays in S for every m in M
            for (p, sigma) in sigmas.iter().enumerate() {
                let cut = dft(&parts[p]);
                for m in set.elements() {
                    let l = periodized_character(&ictx, &m, sigma).unwrap();
                    let moved = idft(&cut.multiply(&l).unwrap());
                    assert!(fiber_membership(&base, &inst.family, &moved, TOL).unwrap().member);
                    for gamma in ictx.block_indices(p) {
                        let ch = inst.group.character(&m, &inst.group.element_at(gamma));
                        assert!((l[gamma] - ch).norm() <= 1e-12);
                    }
                }
            }
        }
    }
}
