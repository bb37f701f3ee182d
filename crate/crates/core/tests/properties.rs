use std::collections::BTreeMap;

use gensub::category::{natural_transformations, yoneda_check, CategoryPresentation, FunctorInstance};
use gensub::construct::{copy_transform, flip_transform, unlabel};
use gensub::corpus::corpus_table;
use gensub::erasure::{canonical_instantiation, erase};
use gensub::poset::flatten_by;
use gensub::randgen::{random_tokens, random_type};
use gensub::{parse_class_table, parse_type, Decider, Digraph, Error, Poset, Provenance, SourceText, TypeTerm, ValidatedClassTable};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn table(name: &str) -> ValidatedClassTable {
    corpus_table(name).unwrap().load().unwrap()
}

fn types(t: &ValidatedClassTable, seed: u64, n: usize, depth: usize) -> Vec<TypeTerm> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n).filter_map(|_| random_type(&mut rng, t, depth)).collect()
}

fn poset_strategy() -> impl Strategy<Value = Poset<u32>> {
    (1usize..=8)
        .prop_flat_map(|n| (Just(n), proptest::collection::vec(any::<bool>(), n * (n - 1) / 2)))
        .prop_map(|(n, bits)| {
            let mut pairs = Vec::new();
            let mut k = 0;
            for i in 0..n as u32 {
                for j in i + 1..n as u32 {
                    if bits[k] {
                        pairs.push((i, j));
                    }
                    k += 1;
                }
            }
            Poset::from_pairs(0..n as u32, pairs).unwrap()
        })
}

const TABLES: [&str; 4] = ["sample", "fbounded", "bounded", "boxes"];

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn render_parse_round_trip(seed in any::<u64>(), which in 0usize..4) {
        let t = table(TABLES[which]);
        for ty in types(&t, seed, 8, 3) {
            let back = parse_type(&SourceText::inline(ty.to_string()), &t).unwrap();
            prop_assert_eq!(t.canonical(&back), t.canonical(&ty));
        }
    }

    #[test]
    fn canonical_form_is_idempotent_and_equivalent(seed in any::<u64>(), which in 0usize..4) {
        let t = table(TABLES[which]);
        let d = Decider::new(&t);
        for ty in types(&t, seed, 8, 3) {
            let c = t.canonical(&ty);
            prop_assert_eq!(t.canonical(&c), c.clone());
            prop_assert!(d.is_subtype(&ty, &c) && d.is_subtype(&c, &ty), "{} vs {}", ty, c);
        }
    }

    #[test]
    fn subtyping_is_a_preorder(seed in any::<u64>(), which in 0usize..4) {
        let t = table(TABLES[which]);
        let d = Decider::new(&t);
        let v = types(&t, seed, 6, 2);
        for a in &v {
            prop_assert!(d.is_subtype(a, a));
            for b in &v {
                for c in &v {
                    if d.is_subtype(a, b) && d.is_subtype(b, c) {
                        prop_assert!(d.is_subtype(a, c), "{} <: {} <: {}", a, b, c);
                    }
                }
            }
        }
    }

    #[test]
    fn galois_biconditional_beyond_the_construction(seed in any::<u64>(), which in 0usize..4) {
        let t = table(TABLES[which]);
        let d = Decider::new(&t);
        let classes: Vec<String> = t.subclass_poset().nodes().to_vec();
        for a in types(&t, seed, 8, 3) {
            for b in &classes {
                let left = t.is_subclass(&erase(&a).unwrap(), b);
                let right = d.is_subtype(&a, &canonical_instantiation(&t, b).unwrap());
                prop_assert_eq!(left, right, "{} / {}", a, b);
            }
            let closed = canonical_instantiation(&t, &erase(&a).unwrap()).unwrap();
            prop_assert!(d.is_subtype(&a, &closed));
        }
    }

    #[test]
    fn erasure_is_monotone(seed in any::<u64>(), which in 0usize..4) {
        let t = table(TABLES[which]);
        let d = Decider::new(&t);
        let v = types(&t, seed, 10, 2);
        for s in &v {
            for u in &v {
                if d.is_subtype(s, u) {
                    prop_assert!(t.is_subclass(&erase(s).unwrap(), &erase(u).unwrap()));
                }
            }
        }
    }

    #[test]
    fn copy_is_identity(p in poset_strategy()) {
        let q = unlabel(&copy_transform(&p));
        prop_assert_eq!(q.strict_pairs(), p.strict_pairs());
        prop_assert_eq!(q, p);
    }

    #[test]
    fn flip_twice_is_copy(p in poset_strategy()) {
        let once = flip_transform(&p);
        prop_assert_eq!(once.relation_size(), p.relation_size());
        prop_assert_eq!(unlabel(&unlabel(&flip_transform(&once))), p);
    }

    #[test]
    fn flatten_is_idempotent(p in poset_strategy(), k in 1u32..4) {
        let mut g = Digraph::new();
        for (i, j) in p.hasse() {
            g.add_edge(p.nodes()[i], p.nodes()[j], Provenance::Copy);
        }
        for &x in p.nodes() {
            g.add_node(x);
        }
        let block = |x: &u32| x - x % k;
        let once = flatten_by(&g, block).unwrap();
        let twice = flatten_by(&once.to_digraph(), block).unwrap();
        prop_assert_eq!(twice.strict_pairs(), once.strict_pairs());
        prop_assert_eq!(twice, once);
    }

    #[test]
    fn class_table_parser_only_reports_syntax_errors(seed in any::<u64>(), len in 0usize..40) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let s = random_tokens(&mut rng, len);
        match parse_class_table(&SourceText::inline(s.clone())) {
            Ok(_) => {}
            Err(Error::Syntax { line, col, .. }) => prop_assert!(line >= 1 && col >= 1),
            Err(e) => prop_assert!(false, "{:?} gave {}", s, e),
        }
    }

    #[test]
    fn type_parser_never_panics(seed in any::<u64>(), len in 0usize..20) {
        let t = table("sample");
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let s = random_tokens(&mut rng, len);
        if let Err(e) = parse_type(&SourceText::inline(s), &t) {
            prop_assert_eq!(e.kind(), gensub::ErrorKind::Input);
        }
    }

    #[test]
    fn yoneda_on_random_functors(sizes in proptest::collection::vec(0usize..=4, 3), seeds in proptest::collection::vec(any::<u8>(), 16)) {
        // free chain A -> B -> C plus a shortcut A -> C
        let cat = CategoryPresentation::new(
            ["A", "B", "C"],
            [("f", "A", "B"), ("g", "B", "C"), ("h", "A", "C")],
            [],
            4,
        ).unwrap();
        let objs = ["A", "B", "C"];
        let mut sizes = sizes;
        // a function into an empty set needs an empty domain
        if sizes[1] == 0 { sizes[0] = 0; }
        if sizes[2] == 0 { sizes[0] = 0; sizes[1] = 0; }
        let set = |o: usize| (0..sizes[o]).map(|i| format!("{}{i}", objs[o])).collect::<Vec<_>>();
        let object_map: BTreeMap<String, Vec<String>> = (0..3).map(|o| (objs[o].to_string(), set(o))).collect();
        let mut k = 0;
        let mut pick = |n: usize| { k += 1; seeds[k % seeds.len()] as usize % n };
        let mut arrow_map = BTreeMap::new();
        for (name, s, d) in [("f", 0, 1), ("g", 1, 2), ("h", 0, 2)] {
            let m: BTreeMap<String, String> = set(s).into_iter().map(|e| (e, set(d)[pick(sizes[d])].clone())).collect();
            arrow_map.insert(name.to_string(), m);
        }
        let f = FunctorInstance::new(object_map, arrow_map).unwrap();
        f.check_functoriality(&cat).unwrap();
        for c in objs {
            let r = yoneda_check(&cat, &f, c).unwrap();
            prop_assert!(r.holds(), "{}", r);
            prop_assert_eq!(r.nat_count, f.set(c).len());
        }
        let rep = cat.representable("A").unwrap();
        for a in natural_transformations(&cat, &rep, &f, 100_000).unwrap() {
            prop_assert!(a.is_natural(&cat, &rep, &f).unwrap());
        }
    }
}
