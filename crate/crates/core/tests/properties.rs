mod common;

use proptest::prelude::*;

use common::{coverage, modular, oracle};
use subtour_core::bench::Algorithm;
use subtour_core::graph::{is_tour, EdgeId, EdgeSet};
use subtour_core::matching::reduce_set;
use subtour_core::rng::Rng;

fn random_subset(m: usize, rng: &mut Rng, p: f64) -> EdgeSet {
    EdgeSet::from_ids(m, (0..m).filter(|_| rng.uniform() < p).map(EdgeId::from))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn coverage_is_monotone_submodular(n in 3usize..9, seed in any::<u64>(), directed in any::<bool>()) {
        let (inst, f) = coverage(n, directed, seed);
        let m = inst.edge_count();
        let mut rng = Rng::new(seed ^ 1);
        for _ in 0..20 {
            let b = random_subset(m, &mut rng, 0.5);
            let a = b.intersection(&random_subset(m, &mut rng, 0.5));
            let e = EdgeId::from(rng.below(m as u64) as usize);
            if b.contains(e) {
                continue;
            }
            let gain_a = f.value_with(&a, e) - f.value(&a);
            let gain_b = f.value_with(&b, e) - f.value(&b);
            prop_assert!(gain_b >= 0.0);
            prop_assert!(gain_a >= gain_b);
        }
    }

    #[test]
    fn singleton_sum_bounds_coverage(n in 3usize..9, seed in any::<u64>()) {
        let (inst, f) = coverage(n, false, seed);
        let mut rng = Rng::new(seed);
        let empty = inst.empty_set();
        for _ in 0..10 {
            let s = random_subset(inst.edge_count(), &mut rng, 0.4);
            let surrogate: f64 = s.iter().map(|e| f.value_with(&empty, e)).sum();
            prop_assert!(surrogate >= f.value(&s));
        }
    }

    #[test]
    fn every_algorithm_returns_a_tour(n in 3usize..11, seed in any::<u64>(), directed in any::<bool>(), cov in any::<bool>()) {
        let (inst, f) = if cov { coverage(n, directed, seed) } else { modular(n, directed, seed) };
        for alg in Algorithm::ALL {
            let r = subtour_core::bench::solve(alg, &inst, &f, seed).unwrap();
            prop_assert!(is_tour(&inst, &r.solution));
            prop_assert_eq!(r.value, f.value(&r.solution));
        }
    }

    #[test]
    fn reduce_set_keeps_its_share_on_arbitrary_parts(n in 4usize..10, seed in any::<u64>(), k in 1usize..6) {
        let (inst, f) = coverage(n, false, seed);
        let mut ids: Vec<EdgeId> = inst.edges().collect();
        let mut rng = Rng::new(seed);
        rng.shuffle(&mut ids);
        let size = (ids.len() / k).clamp(2, 6);
        let parts: Vec<Vec<EdgeId>> = ids.chunks(size).filter(|c| c.len() >= 2).take(k).map(<[EdgeId]>::to_vec).collect();
        let s = EdgeSet::from_ids(inst.edge_count(), parts.iter().flatten().copied());
        let o = reduce_set(&oracle(&f), &s, &parts).unwrap();
        prop_assert_eq!(o.removed.len(), parts.len());
        prop_assert!(o.holds(1e-9));
    }
}
