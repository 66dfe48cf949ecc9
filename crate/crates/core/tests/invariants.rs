mod common;

use common::invariant_violations;
use perimeter_guard::{Boundary, Instance, Tolerance};
use proptest::prelude::*;

fn length(integral: bool) -> BoxedStrategy<f64> {
    if integral {
        (1u8..=5).prop_map(f64::from).boxed()
    } else {
        (0.2f64..5.0).boxed()
    }
}

fn boundary() -> impl Strategy<Value = Boundary> {
    (1usize..=5, any::<bool>(), any::<bool>()).prop_flat_map(|(q, integral, closed)| {
        let gaps = if q == 1 && closed { 0 } else { q };
        (
            prop::collection::vec(length(integral), q),
            prop::collection::vec(length(integral), gaps),
        )
            .prop_map(|(s, g)| Boundary::from_lengths(&s, &g).unwrap())
    })
}

fn instance() -> impl Strategy<Value = Instance> {
    (1usize..=3)
        .prop_flat_map(|m| (prop::collection::vec(boundary(), m), m as u64..=12))
        .prop_map(|(bs, n)| Instance::new(bs, n).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn optimal_solutions_are_well_formed(inst in instance()) {
        let v = invariant_violations(&inst, Tolerance::default());
        prop_assert!(v.is_empty(), "{:?}", v);
    }

    #[test]
    fn bounds_scale_with_lengths(b in boundary(), n in 1u64..20, c in 0.1f64..10.0) {
        let (lo, hi) = perimeter_guard::bounds(&b, n).unwrap();
        let s: Vec<f64> = b.segments().iter().map(|v| v * c).collect();
        let g: Vec<f64> = b.gaps().iter().map(|v| v * c).collect();
        let (slo, shi) = perimeter_guard::bounds(&Boundary::from_lengths(&s, &g).unwrap(), n).unwrap();
        prop_assert!(common::rel_close(slo, c * lo, 1e-12) && common::rel_close(shi, c * hi, 1e-12));
        prop_assert!(lo <= hi);
    }
}

#[test]
fn generated_instances_validate() {
    use perimeter_guard::generate::{generate_instance, GenParams};
    for seed in 0..1000 {
        let doc = generate_instance(GenParams { regions: 1 + (seed % 3) as usize, components: 1 + (seed % 5) as usize, robots: 8, seed })
            .unwrap();
        let inst = doc.to_instance().unwrap_or_else(|e| panic!("seed {seed}: {e}"));
        assert!(inst.regions() >= 1);
    }
}
