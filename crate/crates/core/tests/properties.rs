use std::collections::BTreeSet;

use fqprog::structure::{spanning_set_identity, strong_dim_oracle};
use fqprog::{
    decompose, entropic_distance, verify_decomposition, BiPoly, BiPolySet, Field, OracleLimits, Poly, PolySet,
    Subspace, Var,
};
use proptest::prelude::*;

fn field_strategy() -> impl Strategy<Value = Field> {
    prop_oneof![
        Just(Field::prime(2).unwrap()),
        Just(Field::prime(3).unwrap()),
        Just(Field::new(2, 2, None).unwrap()),
        Just(Field::prime(5).unwrap()),
    ]
}

fn poly_in(f: Field, max_len: usize) -> impl Strategy<Value = Poly> {
    let q = f.order();
    prop::collection::vec(0..q, 0..=max_len).prop_map(move |mut c| {
        while c.last() == Some(&0) {
            c.pop();
        }
        Poly::new(&f, c).unwrap()
    })
}

fn generators(max_gens: usize, max_len: usize) -> impl Strategy<Value = (Field, Vec<Poly>)> {
    field_strategy().prop_flat_map(move |f| {
        let g = prop::collection::vec(poly_in(f.clone(), max_len), 0..=max_gens);
        (Just(f), g)
    })
}

fn set_pair(max_size: usize, max_len: usize) -> impl Strategy<Value = (PolySet, PolySet)> {
    field_strategy().prop_flat_map(move |f| {
        let elems = || prop::collection::vec(poly_in(f.clone(), max_len), 1..=max_size);
        let f2 = f.clone();
        (elems(), elems()).prop_map(move |(a, b)| {
            (PolySet::from_polys(&f2, a).unwrap(), PolySet::from_polys(&f2, b).unwrap())
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn span_is_idempotent_and_echelon((f, gens) in generators(6, 7)) {
        let v = Subspace::span(&f, &gens).unwrap();
        let again = Subspace::span(&f, v.basis()).unwrap();
        prop_assert_eq!(&again, &v);
        let degs = v.degrees();
        prop_assert!(degs.windows(2).all(|w| w[0] < w[1]));
        prop_assert!(v.basis().iter().all(|b| b.is_monic()));
        for g in &gens {
            prop_assert!(v.contains(g).unwrap());
        }
    }

    #[test]
    fn span_size_matches_enumeration((f, gens) in generators(3, 5)) {
        let v = Subspace::span(&f, &gens).unwrap();
        // every F_q-combination of the raw generators, collected independently
        let q = f.order();
        let mut seen = BTreeSet::new();
        let combos = (q as usize).pow(gens.len() as u32);
        for mut idx in 0..combos {
            let mut acc = Poly::zero(&f);
            for g in &gens {
                acc = &acc + &g.scale((idx % q as usize) as u32);
                idx /= q as usize;
            }
            seen.insert(acc);
        }
        prop_assert_eq!(Some(seen.len() as u128), v.cardinality());
    }

    #[test]
    fn weak_dim_bounds((f, gens) in generators(6, 8)) {
        let v = Subspace::span(&f, &gens).unwrap();
        let w = v.weak_dim();
        prop_assert!(w <= v.dim());
        prop_assert_eq!(w == 0, v.is_zero());
    }

    #[test]
    fn weak_dim_grows_along_echelon_prefixes((f, gens) in generators(7, 9)) {
        let v = Subspace::span(&f, &gens).unwrap();
        for s in 0..v.dim() {
            let (lo, hi) = (v.prefix(s).weak_dim(), v.prefix(s + 1).weak_dim());
            prop_assert!(lo <= hi && hi <= lo + 1);
        }
    }

    #[test]
    fn decomposition_is_verified((f, gens) in generators(7, 10)) {
        let v = Subspace::span(&f, &gens).unwrap();
        let d = decompose(&v).unwrap();
        prop_assert_eq!(d.rank(), v.weak_dim());
        prop_assert_eq!(d.total_length(), v.dim());
        let r = verify_decomposition(&v, &d).unwrap();
        prop_assert!(r.passed(), "{:?}", r);
        prop_assert!(spanning_set_identity(&v, &d));
        prop_assert_eq!(decompose(&v).unwrap(), d);
    }

    #[test]
    fn strong_oracle_agrees((f, gens) in generators(3, 4)) {
        let v = Subspace::span(&f, &gens).unwrap();
        let limits = OracleLimits { max_elements: 4096, max_nodes: 200_000 };
        if let Ok(k) = strong_dim_oracle(&v, &limits) {
            prop_assert_eq!(k, v.weak_dim());
        }
    }

    #[test]
    fn sumset_basics((a, b) in set_pair(12, 5)) {
        let ab = a.sumset(&b).unwrap();
        prop_assert_eq!(&ab, &b.sumset(&a).unwrap());
        prop_assert!(ab.len() >= a.len().max(b.len()));
        prop_assert!(ab.len() <= a.len() * b.len());
    }

    #[test]
    fn plunnecke_spot_check((a, _b) in set_pair(8, 4)) {
        // |3A| ≤ K^3 |A| with K = |A+A|/|A|, cleared of denominators
        let n = a.len() as u128;
        let two = a.sumset(&a).unwrap().len() as u128;
        let three = a.iterated_sumset(3, 1 << 20).unwrap().len() as u128;
        prop_assert!(three * n * n <= two * two * two);
    }

    #[test]
    fn cover_contract((a, b) in set_pair(16, 5)) {
        let x = a.ruzsa_cover(&b).unwrap();
        prop_assert!(x.is_subset(&b));
        let diff = a.difference_set(&a).unwrap();
        for y in &b {
            prop_assert!(x.iter().any(|xx| diff.contains(&(y - xx))));
        }
        prop_assert!(x.len() * a.len() <= a.sumset(&b).unwrap().len());
    }

    #[test]
    fn entropic_distance_properties((a, b) in set_pair(10, 4), (c, _) in set_pair(10, 4)) {
        prop_assume!(a.field() == c.field());
        let dab = entropic_distance(&a, &b).unwrap();
        let dbc = entropic_distance(&b, &c).unwrap();
        let dac = entropic_distance(&a, &c).unwrap();
        prop_assert!(dab >= -1e-9);
        prop_assert!(dac <= dab + dbc + 1e-9);
        let daa = entropic_distance(&a, &a).unwrap();
        let q = a.field().order() as f64;
        let k = a.sumset(&a).unwrap().len() as f64 / a.len() as f64;
        prop_assert!(daa <= k.ln() / q.ln() + 1e-9);
    }

    #[test]
    fn bipoly_dilates_do_not_shrink(
        terms in prop::collection::vec(prop::collection::vec((0usize..3, 0usize..3, 0u32..3), 0..4), 1..8)
    ) {
        let f = Field::prime(3).unwrap();
        let elems = terms.into_iter().map(|t| BiPoly::from_terms(&f, t).unwrap());
        let a = BiPolySet::from_elems(&f, elems).unwrap();
        for v in [Var::T, Var::U] {
            prop_assert!(a.dilate_sum(v).unwrap().len() >= a.len());
        }
    }
}
