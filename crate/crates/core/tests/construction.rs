use gensub::construct::{merge_transform, ArgumentPosets};
use gensub::corpus::{corpus_table, CORPUS};
use gensub::decider::Decider;
use gensub::oracle::{compare_with_oracle, universe};
use gensub::{construct, jsm_step, load_class_table, parse_type, ConstructOptions, SourceText, TypeTerm, ValidatedClassTable};

fn tbl(src: &str) -> ValidatedClassTable {
    load_class_table(&SourceText::inline(src)).unwrap()
}

fn ty(t: &ValidatedClassTable, s: &str) -> TypeTerm {
    t.canonical(&parse_type(&SourceText::inline(s), t).unwrap())
}

#[test]
fn alist_depth_one_matches_independent_enumeration() {
    let t = corpus_table("alist").unwrap().load().unwrap();
    let oracle = universe(&t, 1, &Decider::new(&t)).unwrap();
    assert_eq!(oracle.len(), 8);
    let g = construct(&t, 1, &ConstructOptions::default()).unwrap();
    assert_eq!(g.last().nodes(), oracle.as_slice());
}

#[test]
fn every_corpus_table_agrees_with_the_oracle() {
    for c in CORPUS {
        let t = c.load().unwrap();
        let g = construct(&t, c.max_depth, &ConstructOptions::default()).unwrap();
        for (d, level) in g.levels.iter().enumerate() {
            let r = compare_with_oracle(&t, level, d, None).unwrap();
            assert!(r.agrees(), "{} depth {d}: {r:?}", c.name);
            level.check_partial_order().unwrap();
            if d > 0 {
                assert!(g.levels[d - 1].is_induced_suborder_of(level));
            }
        }
    }
}

#[test]
fn linked_list_below_list_wildcard() {
    let t = corpus_table("sample").unwrap().load().unwrap();
    let g = construct(&t, 1, &ConstructOptions::default()).unwrap();
    let top = ty(&t, "List<? extends Object>");
    for arg in ["String", "Integer", "Number", "Object", "? extends Number", "? super Integer", "?"] {
        assert!(g.last().leq(&ty(&t, &format!("LinkedList<{arg}>")), &top), "{arg}");
    }
}

#[test]
fn frame_of_sample_table() {
    let t = corpus_table("sample").unwrap().load().unwrap();
    let g = construct(&t, 0, &ConstructOptions::default()).unwrap();
    let names: Vec<String> = g.last().nodes().iter().map(|n| n.to_string()).collect();
    assert_eq!(names.len(), 5);
    for n in ["Null", "Object", "Number", "Integer", "String"] {
        assert!(names.contains(&n.to_string()));
    }
    assert!(g.last().leq(&ty(&t, "Integer"), &ty(&t, "Number")));
    assert!(!g.last().leq(&ty(&t, "String"), &ty(&t, "Number")));
}

#[test]
fn list_instances_at_depth_two_repeat_the_merge_of_depth_one() {
    let t = tbl("class List<T>");
    let g = construct(&t, 2, &ConstructOptions::default()).unwrap();
    let (s1, s2) = (&g.levels[1], &g.levels[2]);
    // every type of the previous level shows up inside some argument
    for x in s1.nodes().iter().filter(|x| !x.is_null()) {
        let used = s2
            .nodes()
            .iter()
            .any(|n| n.args().iter().any(|a| &a.lower == x || &a.upper == x));
        assert!(used, "{x}");
    }
    let lists = s2.restrict(|n| n.head() == Some("List"));
    let merged = merge_transform(&t, "List", &[ArgumentPosets::from_base(s1)]).unwrap();
    assert_eq!(lists, merged);
    assert_eq!(lists.strict_pairs(), merged.strict_pairs());
}

#[test]
fn steps_are_deterministic() {
    let t = corpus_table("sample").unwrap().load().unwrap();
    let a = construct(&t, 2, &ConstructOptions::default()).unwrap();
    let b = construct(&t, 2, &ConstructOptions::default()).unwrap();
    assert_eq!(a.last(), b.last());
    let again = jsm_step(&t, &a.levels[1], &ConstructOptions::default()).unwrap();
    assert_eq!(&again, a.last());
}
