mod common;

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::One;
use rand::Rng;
use shiftlab_core::beta::{
    continuum_navigator, enumerate_expansions_of_one, greedy_switch_frequency, komornik_loreti_constant,
    lazy_expansion, max_zero_run, max_zero_run_bound, sgap_from_expansion, spec_construction_lazy,
    univoque_check, BetaContext, UnivoqueStatus,
};
use shiftlab_core::blocks::{
    build_sft_automaton, count_blocks_sgap, enumerate_blocks_sgap, even_shift_automaton, follower_count,
    sgap_count_table, Word, DEFAULT_SUBSET_BUDGET,
};
use shiftlab_core::entropy::{entropy_bounds_from_counts, entropy_slope_diagnostic, solve_sgap_entropy};
use shiftlab_core::numeric::{log2_big, rational_to_f64};
use shiftlab_core::props::{
    almost_spec_balance_bound, balanced_estimate, bsm_estimate, gibbs_diagnostics, gibbs_diagnostics_with_band,
};
use shiftlab_core::sgap::{members_up_to, SGapSpec};
use shiftlab_core::Error;

fn spec(s: &str) -> SGapSpec {
    s.parse().unwrap()
}

fn word(s: &str) -> Word {
    s.parse().unwrap()
}

#[test]
fn members_and_classification() {
    assert_eq!(members_up_to(&spec("co{0}"), 4), vec![1, 2, 3, 4]);
    assert_eq!(members_up_to(&spec("{0,2,5}"), 3), vec![0, 2]);
    assert_eq!(members_up_to(&spec("ep:pre=;pat=0,1"), 6), vec![1, 3, 5]);

    let c = spec("{0,2,5}").classify();
    assert!(c.is_sft && c.is_mixing && c.has_specification);
    assert_eq!((c.gap_sup, c.gcd_value), (Some(3), 1));
    let c = spec("ep:pre=;pat=0,1").classify();
    assert!(c.is_almost_specified && !c.is_mixing && !c.has_specification);
    assert_eq!((c.gap_sup, c.gcd_value), (Some(2), 2));
    let c = SGapSpec::naturals().classify();
    assert!(c.is_sft && c.has_specification);
    assert_eq!(c.gap_sup, Some(1));
    assert!(spec("co{3}").classify().is_sft);
}

#[test]
fn members_match_characteristic_bits() {
    for s in common::corpus() {
        let listed = members_up_to(&s, 10_000);
        let direct: Vec<u64> = (0..=10_000).filter(|&n| s.contains(n)).collect();
        assert_eq!(listed, direct, "{s}");
    }
}

#[test]
fn block_count_examples() {
    assert_eq!(count_blocks_sgap(&spec("{0}"), 9), BigUint::one());
    assert_eq!(count_blocks_sgap(&SGapSpec::naturals(), 9), BigUint::from(512u32));
    let words: Vec<String> = enumerate_blocks_sgap(&spec("{1}"), 3).unwrap().iter().map(|w| w.to_string()).collect();
    assert_eq!(words, ["010", "101"]);
    let words: Vec<String> = enumerate_blocks_sgap(&spec("{1}"), 2).unwrap().iter().map(|w| w.to_string()).collect();
    assert_eq!(words, ["01", "10"]);
    assert_eq!(enumerate_blocks_sgap(&spec("{0}"), 1).unwrap(), vec![word("1")]);
    assert_eq!(enumerate_blocks_sgap(&SGapSpec::naturals(), 2).unwrap().len(), 4);
    assert!(matches!(enumerate_blocks_sgap(&SGapSpec::naturals(), 23), Err(Error::SizeGuard { .. })));
}

#[test]
fn follower_examples() {
    assert_eq!(follower_count(&spec("{2}"), &word("100"), 1).unwrap(), BigUint::one());
    assert_eq!(follower_count(&SGapSpec::naturals(), &word("0110"), 7).unwrap(), BigUint::from(128u32));
    let doubling = spec("{0,1,2,4,8,16,32}");
    let mut w = vec![1u8];
    w.extend([0; 17]);
    assert_eq!(follower_count(&doubling, &Word(w), 8).unwrap(), BigUint::one());
    assert!(matches!(follower_count(&spec("{2}"), &word("101"), 1), Err(Error::Inadmissible(_))));
}

#[test]
fn corpus_counts_against_brute_force() {
    for s in common::corpus() {
        for n in 0..=14 {
            let brute = enumerate_blocks_sgap(&s, n).unwrap().len();
            assert_eq!(count_blocks_sgap(&s, n), BigUint::from(brute), "{s}, n={n}");
        }
    }
}

#[test]
fn corpus_counts_decompose_over_prefixes() {
    for s in common::corpus() {
        for m in 1..=8 {
            let prefixes = enumerate_blocks_sgap(&s, m).unwrap();
            for n in 1..=16 - m {
                let total: BigUint = prefixes.iter().map(|w| follower_count(&s, w, n).unwrap()).sum();
                assert_eq!(total, count_blocks_sgap(&s, m + n), "{s}, m={m}, n={n}");
            }
        }
    }
}

#[test]
fn even_shift_matches_brute_force() {
    let table = even_shift_automaton().count_table(16, DEFAULT_SUBSET_BUDGET).unwrap();
    for n in 1..=16usize {
        let brute = (0u32..1 << n)
            .filter(|&code| {
                let bits: Vec<u8> = (0..n).rev().map(|i| ((code >> i) & 1) as u8).collect();
                let ones: Vec<usize> = (0..n).filter(|&i| bits[i] == 1).collect();
                ones.windows(2).all(|w| (w[1] - w[0] - 1) % 2 == 0)
            })
            .count();
        assert_eq!(table.count(n), Some(&BigUint::from(brute)), "n={n}");
    }
}

#[test]
fn empty_shift_is_reported() {
    let forbidden: Vec<String> = ["00", "01", "10", "11"].iter().map(|s| s.to_string()).collect();
    assert_eq!(build_sft_automaton(&['0', '1'], &forbidden).unwrap_err(), Error::EmptyShift);
}

#[test]
fn entropy_examples() {
    let full = sgap_count_table(&SGapSpec::naturals(), 8);
    assert_eq!(entropy_bounds_from_counts(&full, 1.0, 8).unwrap(), (1.0, 1.0));

    let phi = (1.0 + 5f64.sqrt()) / 2.0;
    let even = even_shift_automaton().count_table(10, DEFAULT_SUBSET_BUDGET).unwrap();
    let (lo, hi) = entropy_bounds_from_counts(&even, 4.0, 10).unwrap();
    assert!((hi - lo - 0.2).abs() < 1e-12);
    assert!(lo <= phi.log2() && phi.log2() <= hi);

    let golden = spec("co{0}");
    let table = sgap_count_table(&golden, 32);
    let k = rational_to_f64(&bsm_estimate(&table, 16).unwrap().k_estimate.unwrap());
    let (lo, hi) = entropy_bounds_from_counts(&table, k, 16).unwrap();
    let h = solve_sgap_entropy(&golden, 1e-12).unwrap().entropy;
    assert!(lo <= h && h <= hi && (h - 0.69424).abs() < 1e-5);

    let slopes = entropy_slope_diagnostic(&even, 10).unwrap();
    assert!(slopes.windows(2).all(|w| w[1].1 <= w[0].1 + 1e-12));
    assert!(slopes.iter().all(|&(_, v)| v >= phi.log2()));

    let s = spec("{0,2,5}");
    let h = solve_sgap_entropy(&s, 1e-12).unwrap().entropy;
    let slopes = entropy_slope_diagnostic(&sgap_count_table(&s, 20), 20).unwrap();
    assert!(slopes.iter().all(|&(_, v)| v >= h - 1e-12));
}

/// `log₂|B_n|/n − h` for `1 ≤ n ≤ 18`, each checked to be nonnegative.
fn slope_excess(s: &SGapSpec, table: &shiftlab_core::blocks::BlockCountTable) -> Vec<f64> {
    let h = solve_sgap_entropy(s, 1e-12).unwrap().entropy_log2;
    (1..=18)
        .map(|n| {
            let excess = log2_big(table.count(n).unwrap()) / n as f64 - h;
            assert!(excess >= -1e-9, "{s}, n={n}: {excess}");
            excess
        })
        .collect()
}

#[test]
fn corpus_entropy_sandwich() {
    // K = 1/B for the balance bound B of an almost specified shift
    for s in common::corpus() {
        let table = sgap_count_table(&s, 18);
        let log_k = -rational_to_f64(&almost_spec_balance_bound(&s).unwrap()).log2();
        for (i, excess) in slope_excess(&s, &table).into_iter().enumerate() {
            assert!(excess <= log_k / (i + 1) as f64 + 1e-9, "{s}, n={}", i + 1);
        }
    }
}

#[test]
fn windowed_k_understates_the_constant() {
    // sup over m, n ≤ 18 is not yet the supremum for doubling gaps
    let s = spec("{0,1,2,4,8,16,32}");
    let table = sgap_count_table(&s, 36);
    let k = rational_to_f64(&bsm_estimate(&table, 18).unwrap().k_estimate.unwrap());
    let excess = slope_excess(&s, &table);
    assert!(excess[16] > k.log2() / 17.0);
    for s in ["co{0}", "{0,1}", "{0,2,5}", "ep:pre=;pat=0,1"] {
        let s = spec(s);
        let table = sgap_count_table(&s, 36);
        let k = rational_to_f64(&bsm_estimate(&table, 18).unwrap().k_estimate.unwrap());
        for (i, excess) in slope_excess(&s, &table).into_iter().enumerate() {
            assert!(excess <= k.log2() / (i + 1) as f64 + 1e-9, "{s}, n={}", i + 1);
        }
    }
}

#[test]
fn growing_the_set_raises_entropy() {
    let nested = ["{0}", "{0,3}", "{0,3,4}", "{0,2,3,4}", "{0,1,2,3,4}"];
    let lambdas: Vec<f64> = nested.iter().map(|s| solve_sgap_entropy(&spec(s), 1e-12).unwrap().lambda).collect();
    assert!(lambdas.windows(2).all(|w| w[0] < w[1]), "{lambdas:?}");
}

#[test]
fn balance_of_golden_shift_meets_bound() {
    let golden = spec("co{0}");
    let b = balanced_estimate(&golden, 20, 16).unwrap().b_estimate.unwrap();
    assert!(b >= almost_spec_balance_bound(&golden).unwrap());
}

#[test]
fn corpus_balance_dominates_bsm_constant() {
    // |B_{m+n}| = Σ_{|ω|=m} |B_{ω,n}| ≥ B·|B_m|·|B_n|
    for s in common::corpus() {
        let b = balanced_estimate(&s, 10, 10).unwrap().b_estimate.unwrap();
        let k = bsm_estimate(&sgap_count_table(&s, 20), 10).unwrap().k_estimate.unwrap();
        assert!(k * &b <= BigRational::one(), "{s}");
    }
}

#[test]
fn gibbs_band_for_golden_shift() {
    let golden = spec("co{0}");
    let h = solve_sgap_entropy(&golden, 1e-13).unwrap().entropy_log2;
    let short = gibbs_diagnostics(&golden, h, 14).unwrap();
    let long = gibbs_diagnostics(&golden, h, 28).unwrap();
    assert!(short.ratios.iter().all(|&(_, r)| r > 0.0 && r <= 1.0 + 1e-12));
    assert!(long.ratio_min >= 0.99 * short.ratio_min && long.ratio_max <= 1.0 + 1e-12);
    assert_eq!(short.violations, 0);
    assert!(short.cells.iter().all(|c| c.mu > 0.0 && c.mu <= 1.0));
}

#[test]
fn doubling_gaps_break_every_bounded_gap_band() {
    let depth = 16;
    let (mut lo, mut hi) = (f64::INFINITY, 0.0f64);
    for s in common::corpus() {
        if s.connector_length().is_some_and(|n| n <= 6) {
            let h = solve_sgap_entropy(&s, 1e-12).unwrap().entropy_log2;
            let g = gibbs_diagnostics(&s, h, depth).unwrap();
            lo = lo.min(g.scaled_min);
            hi = hi.max(g.scaled_max);
        }
    }
    let doubling = spec("{0,1,2,4,8,16,32}");
    let h = solve_sgap_entropy(&doubling, 1e-12).unwrap().entropy_log2;
    let g = gibbs_diagnostics_with_band(&doubling, h, depth, Some((lo, hi))).unwrap();
    assert!(g.violations > 0, "band [{lo}, {hi}]");
}

#[test]
fn cor_2_5_lazy_zero_runs() {
    let ctx = BetaContext::new(1.5).unwrap();
    let p = lazy_expansion(0.3, &ctx, 200).unwrap();
    let floor = ctx.lazy_floor();
    let entry = p.orbit.iter().position(|&y| y > floor).unwrap();
    let bound = max_zero_run_bound(floor, &ctx).unwrap() as usize;
    assert!(max_zero_run(&p.digits.symbols()[entry..]) <= bound);
    // the whole word stays above its smallest orbit point
    let low = p.orbit.iter().copied().fold(f64::INFINITY, f64::min);
    assert!(p.max_zero_run() < max_zero_run_bound(low * (1.0 - 1e-9), &ctx).unwrap() as usize);
}

#[test]
fn komornik_loreti_base_is_univoque_to_depth() {
    let kl = komornik_loreti_constant(1e-12).unwrap().lambda;
    let ctx = BetaContext::new(kl).unwrap().with_lambda_uncertainty(1e-12);
    assert!(!matches!(univoque_check(&ctx, 40), UnivoqueStatus::BranchAt(_)));
    let e = enumerate_expansions_of_one(&ctx, 30, 64).unwrap();
    assert_eq!(e.leaves.len(), 1);
    assert!(e.leaves[0].branch_flags.iter().all(|f| !matches!(f, shiftlab_core::beta::BranchFlag::Switch)));
    assert_eq!(greedy_switch_frequency(&ctx, 30).frequency, 0.0);
    // below λ_KL the orbit of 1 must branch
    assert!(matches!(univoque_check(&BetaContext::new(1.3).unwrap(), 40), UnivoqueStatus::BranchAt(_)));
}

#[test]
fn lazy_construction_yields_specification() {
    let ctx = BetaContext::new(1.8).unwrap();
    let p = spec_construction_lazy(&ctx, 50).unwrap();
    let bound = max_zero_run_bound(ctx.lazy_floor(), &ctx).unwrap() as usize;
    assert!(p.max_zero_run() <= bound);
    let s = sgap_from_expansion(&p.digit_sequence()).unwrap();
    assert!(s.classify().has_specification);
    let lambda = solve_sgap_entropy(&s, 1e-12).unwrap().lambda;
    assert!((lambda - 1.8).abs() < 1e-9);
}

#[test]
fn navigator_bounds_zero_runs_for_random_choices() {
    let mut rng = common::rng(43);
    for _ in 0..200 {
        let lambda = rng.gen_range(1.05..1.6);
        let ctx = BetaContext::new(lambda).unwrap();
        let choices: Vec<u8> = (0..200).map(|_| rng.gen_range(0..=1)).collect();
        let run = continuum_navigator(&ctx, &choices, 120).unwrap();
        let d = run.prefix.digits.symbols();
        assert!(d.windows(2).any(|w| w == [1, 1]));
        let delta = ctx.lambda * run.trap.0 - 1.0;
        let bound = max_zero_run_bound(delta, &ctx).unwrap() as usize;
        let entry = run.entry_index.expect("trap reached");
        assert!(max_zero_run(&d[entry..]) < bound, "λ={lambda}");
        let k = run.prefix.len() as i32;
        assert!((run.prefix.residual() - run.prefix.orbit_point() * lambda.powi(-k)).abs() < 1e-10);
    }
}
