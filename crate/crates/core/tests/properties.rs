use std::sync::OnceLock;

use num_rational::BigRational;
use proptest::prelude::*;

use coincidence::graphkit::{self, Digraph};
use coincidence::overlap::{self, OverlapClass};
use coincidence::tiling::SuspensionTiling;
use coincidence::{AlgebraicReal, Substitution};

fn tribonacci() -> &'static SuspensionTiling {
    static T: OnceLock<SuspensionTiling> = OnceLock::new();
    T.get_or_init(|| SuspensionTiling::new(Substitution::from_one_based(&[&[1, 2], &[1, 3], &[1]]).unwrap()).unwrap())
}

fn tribonacci_classes() -> &'static [OverlapClass] {
    static C: OnceLock<Vec<OverlapClass>> = OnceLock::new();
    C.get_or_init(|| overlap::all_overlap_classes(tribonacci(), overlap::DEFAULT_CLASS_CAP).unwrap().into_iter().collect())
}

fn element() -> impl Strategy<Value = AlgebraicReal> {
    prop::collection::vec((-60i64..=60, 1i64..=9), 3).prop_map(|c| {
        let coords: Vec<BigRational> = c.into_iter().map(|(n, d)| BigRational::new(n.into(), d.into())).collect();
        tribonacci().field().from_coords(&coords).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn subtraction_and_division_invert(a in element(), b in element()) {
        prop_assert_eq!(&(&a + &b) - &b, a.clone());
        if !b.is_zero() {
            prop_assert_eq!(&(&a * &b).checked_div(&b).unwrap(), &a);
        }
    }

    #[test]
    fn order_matches_floats_when_separated(a in element(), b in element()) {
        let (x, y) = (a.to_f64(), b.to_f64());
        if (x - y).abs() > 1e-9 {
            prop_assert_eq!(a < b, x < y);
        }
        prop_assert_eq!((-&a).sign(), match a.sign() {
            coincidence::Signum::Positive => coincidence::Signum::Negative,
            coincidence::Signum::Negative => coincidence::Signum::Positive,
            z => z,
        });
    }

    #[test]
    fn inflation_respects_swapping(idx in 0usize..121) {
        let t = tribonacci();
        let all = tribonacci_classes();
        let c = &all[idx % all.len()];
        let lv = t.level(1).unwrap();
        let mut fwd: Vec<OverlapClass> = overlap::inflate_class(t, &lv, c).into_iter().map(|p| p.class.swapped()).collect();
        let mut back: Vec<OverlapClass> = overlap::inflate_class(t, &lv, &c.swapped()).into_iter().map(|p| p.class).collect();
        fwd.sort();
        back.sort();
        prop_assert_eq!(fwd, back);
        prop_assert!(all.binary_search(&c.swapped()).is_ok());
    }

    #[test]
    fn sccs_partition_vertices(n in 1usize..14, raw in prop::collection::vec((0usize..14, 0usize..14), 0..40)) {
        let pairs: Vec<(usize, usize)> = raw.into_iter().map(|(a, b)| (a % n, b % n)).collect();
        let g = Digraph::from_pairs(n, &pairs).unwrap();
        let s = graphkit::scc(&g);
        let mut seen: Vec<usize> = s.components.iter().flatten().copied().collect();
        seen.sort();
        prop_assert_eq!(seen, (0..n).collect::<Vec<_>>());
        for &(a, b, _) in g.edges() {
            // condensation edges point towards sinks, which come first
            prop_assert!(s.component_of[a] >= s.component_of[b]);
        }
    }

    #[test]
    fn matrix_of_power_is_power_of_matrix(n in 1u32..5) {
        let s = Substitution::from_one_based(&[&[1, 1, 2], &[1, 3], &[2]]).unwrap();
        prop_assert_eq!(s.power(n, 1 << 16).unwrap().matrix(), s.matrix().pow(n));
    }
}
