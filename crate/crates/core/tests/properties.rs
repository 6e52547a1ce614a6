use std::sync::OnceLock;

use anbimod::shiftrules::graph_decomposition;
use anbimod::tensor::decompose_by_splitting;
use anbimod::{
    decompose, enumerate, rule_product, tensor, Catalog, Endo, GeneratorName, IndecLabel, Side,
};
use proptest::prelude::*;

fn catalog(n: usize) -> &'static Catalog {
    static CATS: OnceLock<Vec<Catalog>> = OnceLock::new();
    &CATS.get_or_init(|| (1..=6).map(|n| enumerate(n).unwrap()).collect())[n - 1]
}

/// `(n, a, b, c)` with `a, b, c` catalog indices.
fn triple(max_n: usize) -> impl Strategy<Value = (usize, usize, usize, usize)> {
    (2..=max_n).prop_flat_map(|n| {
        let size = catalog(n).len();
        (Just(n), 0..size, 0..size, 0..size)
    })
}

fn within(inner: &[usize], outer: &[usize]) -> bool {
    inner.iter().all(|x| outer.contains(x))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn hom_is_additive((n, a, b, c) in triple(4)) {
        let cat = catalog(n);
        let (x, y, z) = (cat.realization(a), cat.realization(b), cat.realization(c));
        let xy = x.direct_sum(y).unwrap();
        prop_assert_eq!(xy.hom_dim(z).unwrap(), x.hom_dim(z).unwrap() + y.hom_dim(z).unwrap());
        prop_assert_eq!(z.hom_dim(&xy).unwrap(), z.hom_dim(x).unwrap() + z.hom_dim(y).unwrap());
        for f in x.hom_space(y).unwrap().basis {
            prop_assert!(x.is_homomorphism(y, &f));
        }
    }

    #[test]
    fn hom_basis_is_closed_under_combination((n, a, b, _c) in triple(4)) {
        let cat = catalog(n);
        let (x, y) = (cat.realization(a), cat.realization(b));
        let basis = x.hom_space(y).unwrap().basis;
        if basis.len() >= 2 {
            let two = anbimod::linalg::Q::from_integer(2);
            let sum: Vec<_> = basis[0].iter().zip(&basis[1]).map(|(f, g)| f.add(&g.scale(two))).collect();
            prop_assert!(x.is_homomorphism(y, &sum));
        }
    }

    #[test]
    fn involution_is_an_anti_automorphism((n, a, b, _c) in triple(4)) {
        let cat = catalog(n);
        let (x, y) = (cat.realization(a), cat.realization(b));
        prop_assert_eq!(&x.involution().involution(), x);
        prop_assert_eq!(cat.identify(&x.involution()).unwrap(), cat.involution(cat.label(a)).unwrap());
        let lhs = decompose(&tensor(x, y).unwrap().involution(), cat).unwrap();
        let rhs = decompose(&tensor(&y.involution(), &x.involution()).unwrap(), cat).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn constructions_validate((n, a, b, _c) in triple(4)) {
        let cat = catalog(n);
        let (x, y) = (cat.realization(a), cat.realization(b));
        prop_assert!(x.validate());
        prop_assert!(tensor(x, y).unwrap().validate());
        prop_assert!(x.direct_sum(y).unwrap().validate());
        for side in [Side::Left, Side::Right] {
            for endo in [Endo::Phi, Endo::Psi] {
                prop_assert!(x.twist(side, endo).validate());
            }
        }
        prop_assert!(x.left_hom_to_a().validate());
    }

    #[test]
    fn tensor_is_associative((n, a, b, c) in triple(4)) {
        let cat = catalog(n);
        let (x, y, z) = (cat.realization(a), cat.realization(b), cat.realization(c));
        let left = tensor(&tensor(x, y).unwrap(), z).unwrap();
        let right = tensor(x, &tensor(y, z).unwrap()).unwrap();
        prop_assert_eq!(left.graded_dims(), right.graded_dims());
        prop_assert_eq!(decompose(&left, cat).unwrap(), decompose(&right, cat).unwrap());
    }

    #[test]
    fn decomposition_is_additive((n, a, b, c) in triple(4)) {
        let cat = catalog(n);
        let (x, y, z) = (cat.realization(a), cat.realization(b), cat.realization(c));
        let xy = tensor(x, y).unwrap();
        let mut want = decompose(&xy, cat).unwrap();
        want.merge(&decompose(z, cat).unwrap());
        let sum = xy.direct_sum(z).unwrap();
        prop_assert_eq!(&decompose(&sum, cat).unwrap(), &want);
        prop_assert_eq!(&decompose_by_splitting(&sum, cat).unwrap(), &want);
        prop_assert_eq!(want.total_dim(), sum.dim());
    }

    #[test]
    fn products_shrink_supports((n, a, b, _c) in triple(5)) {
        let cat = catalog(n);
        let (x, y) = (cat.realization(a), cat.realization(b));
        let p = tensor(x, y).unwrap();
        prop_assert!(within(&p.lsupp(), &x.lsupp()));
        prop_assert!(within(&p.rsupp(), &y.rsupp()));
    }

    #[test]
    fn shift_rules_match_products_at_six(k in 0..311usize, g in 0..3usize, left in any::<bool>()) {
        let n = 6;
        let cat = catalog(n);
        let l = cat.label(k);
        let gen = GeneratorName::ALL[g];
        prop_assume!(gen == GeneratorName::W21 || !l.is_ksplit());
        let gl = gen.label(n).unwrap();
        let (a, b) = if left { (gl, l) } else { (l, gl) };
        let side = if left { Side::Left } else { Side::Right };
        let rule = graph_decomposition(&gen.apply(cat.graph(k), side).unwrap(), cat).unwrap();
        let oracle = decompose(&tensor(cat.realize(a).unwrap(), cat.realize(b).unwrap()).unwrap(), cat).unwrap();
        prop_assert_eq!(&rule, &oracle);
        prop_assert_eq!(rule_product(a, b, cat).unwrap(), Some(oracle));
    }

    #[test]
    fn labels_round_trip(n in 1..=6usize, k in 0..311usize) {
        let cat = catalog(n);
        let l = cat.label(k % cat.len());
        let parsed: IndecLabel = l.to_string().parse().unwrap();
        prop_assert_eq!(parsed, l);
        prop_assert_eq!(cat.index_of(l).unwrap(), k % cat.len());
    }
}
