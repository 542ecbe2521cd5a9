use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use fold1d::fold::{crimp, find_crimpable_sequences, monocrimp, reduce, ReducedPattern};
use fold1d::forest::shuffled::{reduce_shuffled, PairOrder};
use fold1d::pattern::{generate_random_with, parse_pattern, serialize_pattern, Strategy as Gen};
use fold1d::{
    check_layering, dfs_foldable, folded_state, is_flat_foldable, CreasePattern, Mv, MvAssignment, MvPattern,
    OracleBudget,
};

fn small_pattern(max_creases: usize, max_len: i64) -> impl Strategy<Value = MvPattern> {
    (prop::collection::vec(1..=max_len, 1..=max_creases + 1), any::<u64>()).prop_map(|(lens, mask)| {
        let c = CreasePattern::from_intervals(0, &lens).unwrap();
        let n = c.num_creases();
        MvPattern::new(c, MvAssignment::from_mask(n, mask)).unwrap()
    })
}

fn foldable_pattern() -> impl Strategy<Value = MvPattern> {
    (1usize..40, any::<u64>(), any::<bool>()).prop_map(|(n, seed, rejection)| {
        let s = if rejection && n <= 20 { Gen::Rejection } else { Gen::InverseCrimp };
        generate_random_with(n, seed, s).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn engine_matches_oracle_up_to_ten(p in small_pattern(10, 4)) {
        let oracle = dfs_foldable(&p, &OracleBudget::default()).unwrap();
        prop_assert_eq!(is_flat_foldable(&p).is_foldable(), oracle);
    }

    #[test]
    fn engine_matches_oracle_up_to_fourteen(p in small_pattern(14, 3)) {
        let oracle = dfs_foldable(&p, &OracleBudget::default()).unwrap();
        prop_assert_eq!(is_flat_foldable(&p).is_foldable(), oracle);
    }

    #[test]
    fn folded_layering_is_valid(p in foldable_pattern()) {
        let s = folded_state(&p).unwrap();
        prop_assert!(check_layering(&s));
        prop_assert!(s.preserves_lengths(&p.pattern));
        prop_assert!(s.agrees_with(&p.mv));
    }

    #[test]
    fn crimp_counts_differ_by_parity(p in foldable_pattern()) {
        for c in reduce(&p).unwrap().crimps {
            let m = c.labels.iter().filter(|&&l| l == Mv::M).count();
            let v = c.labels.len() - m;
            prop_assert_eq!(m.abs_diff(v), c.labels.len() % 2);
        }
    }

    #[test]
    fn monocrimp_shrinks_sequence_by_two(p in foldable_pattern()) {
        // Every first-round crimpable sequence of length >= 4 stays crimpable
        // with two fewer creases after one monocrimp; fused intervals never
        // shrink below a flank (checked inside `monocrimp`).
        let r = ReducedPattern::new(&p.pattern);
        for seq in find_crimpable_sequences(&r) {
            if seq.len() < 4 {
                continue;
            }
            let pair = seq.creases.windows(2).find(|w| p.label(w[0]) != p.label(w[1])).unwrap();
            let next = monocrimp(&r, &p.mv, (pair[0], pair[1])).unwrap();
            let rest: Vec<_> = seq.creases.iter().copied().filter(|c| *c != pair[0] && *c != pair[1]).collect();
            prop_assert!(find_crimpable_sequences(&next).iter().any(|s| s.creases == rest));
        }
    }

    #[test]
    fn pair_order_inside_a_crimp_is_irrelevant(p in foldable_pattern(), seed in any::<u64>()) {
        use rand::Rng;
        let r = ReducedPattern::new(&p.pattern);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for seq in find_crimpable_sequences(&r) {
            let (a, sa) = crimp(&r, &p.mv, &seq).unwrap();
            let (b, sb) = fold1d::fold::crimp_with(&r, &p.mv, &seq, |pairs| rng.gen_range(0..pairs.len())).unwrap();
            prop_assert_eq!(a.intervals(), b.intervals());
            let pos = |q: &ReducedPattern, s: Option<usize>| s.map(|s| q.creases().iter().find(|c| c.0 == s).unwrap().1);
            prop_assert_eq!(pos(&a, sa), pos(&b, sb));
        }
    }

    #[test]
    fn global_crimp_order_is_irrelevant(p in foldable_pattern(), seed in any::<u64>()) {
        let scan = reduce(&p).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let other = reduce_shuffled(&p, PairOrder::Leftmost, &mut rng).unwrap().reduction;
        let key = |r: &fold1d::fold::Reduction| {
            let mut v: Vec<_> = r.crimps.iter().map(|c| (c.creases.clone(), c.interval_distance, c.survivor)).collect();
            v.sort();
            v
        };
        prop_assert_eq!(key(&scan), key(&other));
        prop_assert_eq!(&scan.end_creases, &other.end_creases);
        prop_assert_eq!(&scan.end_intervals, &other.end_intervals);
    }

    #[test]
    fn adjacent_gaps_agree_across_orders(p in foldable_pattern(), seed in any::<u64>()) {
        // With arbitrary pair choices survivors can move, but the gap
        // multiset of every crimp and of the end sequence cannot.
        let scan = reduce(&p).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let other = reduce_shuffled(&p, PairOrder::Random, &mut rng).unwrap().reduction;
        let gaps = |r: &fold1d::fold::Reduction| {
            let mut v: Vec<_> = r.crimps.iter().map(|c| (c.creases.len(), c.interval_distance)).collect();
            v.sort();
            v
        };
        prop_assert_eq!(gaps(&scan), gaps(&other));
        prop_assert_eq!(scan.end_intervals, other.end_intervals);
    }

    #[test]
    fn text_round_trip(p in small_pattern(12, 9)) {
        let back = parse_pattern(&serialize_pattern(&p)).unwrap().into_full().unwrap();
        prop_assert_eq!(&back, &p);
        let json = parse_pattern(&p.to_json()).unwrap().into_full().unwrap();
        prop_assert_eq!(json, p.clone());
        let lens = p.pattern.intervals().into_vec();
        prop_assert!(lens.iter().all(|&l| l > 0));
        prop_assert_eq!(lens.iter().sum::<i64>(), p.pattern.total_length());
    }
}

#[test]
fn generated_patterns_pass_the_oracle() {
    let b = OracleBudget::default();
    for seed in 0..200 {
        for (n, s) in [(9, Gen::InverseCrimp), (9, Gen::Rejection), (14, Gen::Auto)] {
            let p = generate_random_with(n, seed, s).unwrap();
            assert_eq!(p.num_creases(), n);
            assert!(is_flat_foldable(&p).is_foldable(), "seed {seed}: {}", p.mv);
            assert!(dfs_foldable(&p, &b).unwrap(), "seed {seed}: {}", p.mv);
        }
    }
}

#[test]
fn large_generated_patterns_fold() {
    for seed in 0..20 {
        let p = generate_random_with(5_000, seed, Gen::InverseCrimp).unwrap();
        let s = folded_state(&p).unwrap();
        assert!(check_layering(&s) && s.preserves_lengths(&p.pattern));
    }
}

#[test]
fn exhaustive_eight_crease_sweeps() {
    let b = OracleBudget::default();
    for lens in [[4i64, 1, 1, 2, 2, 3, 2, 2, 3], [2, 1, 1, 1, 1, 1, 1, 1, 2], [1, 2, 2, 2, 2, 2, 2, 2, 1]] {
        let c = CreasePattern::from_intervals(0, &lens).unwrap();
        for mask in 0..256 {
            let p = MvPattern::new(c.clone(), MvAssignment::from_mask(8, mask)).unwrap();
            let d = is_flat_foldable(&p);
            assert_eq!(d.is_foldable(), dfs_foldable(&p, &b).unwrap(), "{lens:?} {}", p.mv);
            if let Some(stuck) = d.certificate() {
                assert!(stuck.remaining.len() >= 2);
                assert!(stuck.remaining.windows(2).all(|w| p.label(w[0]) == p.label(w[1])));
            }
        }
    }
}
