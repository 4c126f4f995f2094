use trellis_core::classes::{iterated_join, ElementClass};
use trellis_core::enumerate::{enumerate, is_maximal, order_diagram, EnumerateOptions};
use trellis_core::fixtures;
use trellis_core::interior::{lambda, range, validate_interior, UnaryMap};
use trellis_core::relation::{validate_psoset, Psoset, PsosetError, Violation};
use trellis_core::tnorm::{self, check_on, condition4_violation, pointwise_leq, t_coatom, t_drastic, t_z};
use trellis_core::trellis::{check_skala_axioms, induced_order, infimum};
use trellis_core::{classify, BinaryOpTable, ElementSet, Trellis};

fn load(name: &str) -> (Psoset, trellis_core::document::PsosetDocument) {
    let doc = fixtures::load(name);
    (doc.psoset().unwrap(), doc)
}

fn trellis(name: &str) -> Trellis {
    Trellis::new(load(name).0).unwrap()
}

fn ix(p: &Psoset, name: &str) -> usize {
    p.index_of(name).unwrap()
}

fn set(p: &Psoset, names: &str) -> ElementSet {
    p.parse_set(names).unwrap()
}

fn names(n: usize) -> Vec<String> {
    (0..n).map(|i| i.to_string()).collect()
}

#[test]
fn table1_psoset() {
    let (p, _) = load("table1");
    assert_eq!(p.top(), None);
    // a lies below everything in the table, so the unbounded carrier still has a bottom.
    assert_eq!(p.bottom(), Some(ix(&p, "a")));
    assert!(load("table1_bounded").0.is_bounded());

    let (b, d, e, f) = (ix(&p, "b"), ix(&p, "d"), ix(&p, "e"), ix(&p, "f"));
    assert!(p.reachable(b, e) && !p.leq(b, e));
    assert!(p.reachable(e, d));
    assert!(p.reachable(f, f));
    assert_eq!(p.down_set(d), set(&p, "a b c d f"));

    let def = set(&p, "d e f");
    assert_eq!(p.restricted_reachable(def, d, f), Ok(true));
    assert_eq!(p.restricted_reachable(set(&p, "b e"), b, e), Ok(false));
    assert_eq!(p.restricted_reachable(set(&p, "d"), d, d), Ok(true));
    assert_eq!(p.is_cycle(def), Ok(true));
    let abd = set(&p, "a b d");
    assert_eq!(p.is_pseudo_chain(abd), Ok(true));
    assert_eq!(p.is_cycle(abd), Ok(false));
    assert_eq!(p.maximal_cycles(), vec![def]);
}

#[test]
fn psoset_validation() {
    let id: Vec<Vec<bool>> = (0..3).map(|i| (0..3).map(|j| i == j).collect()).collect();
    let p = validate_psoset(&id, &names(3)).unwrap();
    assert!(p.bottom().is_none() && p.top().is_none());
    assert!(p.maximal_cycles().is_empty());
    assert!(p.is_pseudo_chain(ElementSet::singleton(1)).unwrap());

    let full = vec![vec![true; 2]; 2];
    match validate_psoset(&full, &names(2)) {
        Err(PsosetError::Invalid(v)) => assert_eq!(v, vec![Violation::NotAntisymmetric(0, 1)]),
        other => panic!("unexpected {other:?}"),
    }
    let irreflexive = vec![vec![false, true], vec![false, true]];
    assert!(matches!(validate_psoset(&irreflexive, &names(2)), Err(PsosetError::Invalid(_))));
}

#[test]
fn bounds_and_co_atoms() {
    let (p, _) = load("chain5");
    assert_eq!(p.co_atoms().unwrap(), set(&p, "c"));
    assert_eq!(p.down_set(ix(&p, "0")), set(&p, "0"));
    assert_eq!(p.up_set(ix(&p, "1")), set(&p, "1"));
    let (q, _) = load("nogreatest7");
    assert_eq!(q.co_atoms().unwrap(), set(&q, "d e"));
    let two = Psoset::from_pairs(&["0", "1"], &[("0", "1")]).unwrap();
    assert_eq!(two.co_atoms().unwrap(), ElementSet::singleton(0));
}

#[test]
fn hasse_diagrams() {
    let (p, _) = load("chain5");
    let h = p.hasse();
    let pairs = |s: &[(&str, &str)]| s.iter().map(|&(x, y)| (ix(&p, x), ix(&p, y))).collect();
    assert_eq!(h.cover_edges, pairs(&[("0", "a"), ("a", "b"), ("b", "c"), ("c", "1")]));
    assert_eq!(h.dashed_pairs, pairs(&[("a", "c")]));
    assert!(h.back_edges.is_empty());

    let (q, _) = load("cycle8");
    assert!(q.hasse().back_edges.contains(&(ix(&q, "f"), ix(&q, "b"))));
}

#[test]
fn meets_and_trellis_structure() {
    let (p, _) = load("chain5");
    assert_eq!(infimum(&p, set(&p, "a c")), Ok(Some(ix(&p, "0"))));
    assert_eq!(infimum(&p, set(&p, "b")), Ok(Some(ix(&p, "b"))));
    let t = Trellis::new(p.clone()).unwrap();
    assert!(!t.is_lattice());
    assert!(t.is_modular());
    assert_eq!(induced_order(t.meet_table(), t.join_table()).unwrap(), p.matrix());

    let (q, _) = load("cycle8");
    assert_eq!(infimum(&q, set(&q, "e f")), Ok(Some(ix(&q, "e"))));
    let tq = Trellis::new(q.clone()).unwrap();
    assert_eq!(induced_order(tq.meet_table(), tq.join_table()).unwrap(), q.matrix());
    let (x, y, z) = tq.modularity_violation().expect("cycle8 is not modular");
    let cycle = set(&q, "b c e f");
    assert!(cycle.contains(x) && cycle.contains(y) && cycle.contains(z));

    let bounded = trellis("table1_bounded");
    assert!(!bounded.psoset().maximal_cycles().is_empty());
    assert!(check_skala_axioms(bounded.meet_table(), bounded.join_table()).passed());

    assert!(trellis("modular8").is_modular());
    assert_eq!(trellis("modular8").modular_implication_check(), Ok(true));
    assert_eq!(trellis("modular7").modular_implication_check(), Ok(true));
}

#[test]
fn skala_axioms_catch_a_broken_meet() {
    let t = trellis("chain5");
    let mut meet = t.meet_table().clone();
    meet.set(1, 2, 0);
    assert!(!check_skala_axioms(&meet, t.join_table()).passed());
    let min = BinaryOpTable::from_fn(3, |x, y| x.min(y));
    let max = BinaryOpTable::from_fn(3, |x, y| x.max(y));
    assert!(check_skala_axioms(&min, &max).passed());
}

#[test]
fn sub_trellis_tests() {
    let t = trellis("interior7");
    let p = t.psoset().clone();
    assert!(t.is_sub_lattice(set(&p, "0 b c d e 1")));
    assert!(t.is_sub_trellis(p.carrier()));
    let m = trellis("modular7");
    let q = m.psoset().clone();
    let a = set(&q, "0 a c d e 1");
    assert!(!m.is_meet_sub_trellis(a));
    assert_eq!(m.meet(ix(&q, "c"), ix(&q, "d")), ix(&q, "b"));
}

#[test]
fn element_classes_on_fixtures() {
    let chain = trellis("chain5");
    let p = chain.psoset().clone();
    let cl = classify(&chain);
    assert_eq!(cl.subset(ElementClass::RightTransitive), set(&p, "0 b c 1"));
    for class in [ElementClass::Distributive, ElementClass::Associative, ElementClass::Transitive] {
        assert_eq!(cl.subset(class), set(&p, "0 1"));
    }
    let q = trellis("interior7");
    assert_eq!(classify(&q).subset(ElementClass::RightTransitive), set(q.psoset(), "0 b c d e 1"));
    let c8 = trellis("cycle8");
    assert_eq!(classify(&c8).subset(ElementClass::RightTransitive), set(c8.psoset(), "0 a d 1"));
    let m7 = trellis("modular7");
    assert_eq!(classify(&m7).subset(ElementClass::RightTransitive), set(m7.psoset(), "0 a c d e 1"));

    let lattice = Trellis::new(Psoset::from_pairs(&["0", "m", "1"], &[("0", "m"), ("0", "1"), ("m", "1")]).unwrap()).unwrap();
    let cl = classify(&lattice);
    for class in ElementClass::ALL {
        assert_eq!(cl.subset(class), lattice.psoset().carrier(), "{class}");
    }
}

#[test]
fn iterated_joins() {
    let t = trellis("interior7");
    assert_eq!(iterated_join(&t, set(t.psoset(), "b c")), Ok(ix(t.psoset(), "c")));
    assert_eq!(iterated_join(&t, set(t.psoset(), "e")), Ok(ix(t.psoset(), "e")));
    let c = trellis("cycle8");
    assert_eq!(iterated_join(&c, set(c.psoset(), "a d")), Ok(ix(c.psoset(), "d")));
}

#[test]
fn interior_operators() {
    let (p, doc) = load("interior7");
    let t = Trellis::new(p.clone()).unwrap();
    let lam = doc.map("lambda_rtr").unwrap();
    assert!(validate_interior(&t, lam).is_interior());
    assert!(validate_interior(&t, &UnaryMap::identity(7)).is_interior());
    assert!(validate_interior(&t, &UnaryMap::constant(7, 0)).is_interior());
    assert_eq!(range(&t, lam), Ok(set(&p, "0 b c d e 1")));
    assert_eq!(range(&t, &UnaryMap::identity(7)), Ok(p.carrier()));

    let computed = lambda(&t, set(&p, "0 b c d e 1")).unwrap();
    assert_eq!(&computed, lam);
    assert_eq!(computed.apply(ix(&p, "a")), 0);
    assert_eq!(lambda(&t, ElementSet::singleton(0)).unwrap(), UnaryMap::constant(7, 0));

    let (q, qdoc) = load("cycle8");
    let tq = Trellis::new(q.clone()).unwrap();
    let lq = lambda(&tq, set(&q, "0 a d 1")).unwrap();
    assert_eq!(&lq, qdoc.map("lambda_rtr").unwrap());
    assert_eq!(lq.render(&q), "0 a a a d a a 1");
    assert_eq!(range(&tq, &lq), Ok(set(&q, "0 a d 1")));
}

#[test]
fn drastic_zero_and_co_atom_tnorms() {
    let (p, doc) = load("chain5");
    let t = Trellis::new(p.clone()).unwrap();
    let td = t_drastic(&p).unwrap();
    assert_eq!(t_z(&t).unwrap(), td);
    for x in 0..5 {
        assert_eq!(td.get(x, 4), x);
        assert_eq!(td.get(4, x), x);
        for y in 0..4 {
            if x < 4 {
                assert_eq!(td.get(x, y), 0);
            }
        }
    }
    let tc = t_coatom(&p, ix(&p, "c")).unwrap();
    assert!(check_on(&t, &tc).is_tnorm());
    assert_eq!(tc.get(3, 3), 3);
    assert!(t_coatom(&p, ix(&p, "b")).is_err());
    // The co-atom table sits between T3 and T5 in the lattice of six.
    assert!(pointwise_leq(&p, doc.op("T3").unwrap(), &tc).unwrap());
    assert!(!pointwise_leq(&p, &tc, doc.op("T4").unwrap()).unwrap());
    assert!(!pointwise_leq(&p, doc.op("T4").unwrap(), &tc).unwrap());
    assert!(pointwise_leq(&p, &tc, &tc).unwrap());

    let (q, _) = load("nogreatest7");
    let tq = Trellis::new(q.clone()).unwrap();
    assert!(check_on(&tq, &t_coatom(&q, ix(&q, "d")).unwrap()).is_tnorm());
}

#[test]
fn zero_tnorm_on_modular_trellises() {
    let (p, doc) = load("modular8");
    let t = Trellis::new(p.clone()).unwrap();
    assert_eq!(condition4_violation(&t), Ok(None));
    let tz = t_z(&t).unwrap();
    assert_eq!(&tz, doc.op("TZ").unwrap());
    assert_eq!(tz.get(ix(&p, "e"), ix(&p, "f")), ix(&p, "d"));
    assert_eq!(tz.get(ix(&p, "a"), ix(&p, "c")), 0);

    let m = trellis("modular7");
    assert!(condition4_violation(&m).unwrap().is_some());
    assert!(!check_on(&m, &t_z(&m).unwrap()).increasing.holds());

    let two = Trellis::new(Psoset::from_pairs(&["0", "1"], &[("0", "1")]).unwrap()).unwrap();
    assert_eq!(&t_z(&two).unwrap(), two.meet_table());
}

#[test]
fn interior_constructions() {
    let (p, doc) = load("interior7");
    let t = Trellis::new(p.clone()).unwrap();
    let rtr = set(&p, "0 b c d e 1");
    let ve = tnorm::v_scaled(&t, rtr, ix(&p, "e")).unwrap();
    let tve = tnorm::t_lambda(&t, rtr, &ve).unwrap();
    assert_eq!(&tve, doc.op("TVe").unwrap());
    assert_eq!(tve.get(ix(&p, "d"), ix(&p, "d")), ix(&p, "c"));
    assert_eq!(tve.get(ix(&p, "e"), ix(&p, "e")), ix(&p, "e"));

    // Local indices on X^rtr = {0, b, c, d, e, 1}: d is 3, e is 4, c is 2.
    let vc = tnorm::v_scaled(&t, rtr, ix(&p, "c")).unwrap();
    assert_eq!(vc.get(3, 4), 2);
    let v_top = tnorm::v_scaled(&t, rtr, ix(&p, "1")).unwrap();
    let sub = p.induced(rtr);
    assert_eq!(Some(v_top), t.meet_table().restrict(&sub));
    let v_bottom = tnorm::v_scaled(&t, rtr, 0).unwrap();
    for x in 0..5 {
        for y in 0..5 {
            assert_eq!(v_bottom.get(x, y), 0);
        }
    }

    let meet_version = tnorm::t_lambda_meet(&t, rtr).unwrap();
    let greatest = doc.op("greatest").unwrap();
    let (a, e) = (ix(&p, "a"), ix(&p, "e"));
    assert_eq!(meet_version.diff(greatest), vec![(a, e), (e, a)]);
    assert_eq!(meet_version.get(a, e), 0);
    assert_eq!(greatest.get(a, e), a);

    let (q, qdoc) = load("cycle8");
    let tq = Trellis::new(q.clone()).unwrap();
    assert_eq!(&tnorm::t_lambda_meet(&tq, set(&q, "0 a d 1")).unwrap(), qdoc.op("Trtr").unwrap());
}

#[test]
fn interior_construction_special_cases() {
    let (p, _) = load("nogreatest7");
    let t = Trellis::new(p.clone()).unwrap();
    let d = ix(&p, "d");
    assert_eq!(tnorm::t_lambda_meet(&t, set(&p, "0 d")).unwrap(), t_coatom(&p, d).unwrap());
    assert_eq!(tnorm::t_lambda_meet(&t, set(&p, "0 1")).unwrap(), t_drastic(&p).unwrap());

    let lattice = Trellis::new(
        Psoset::from_pairs(
            &["0", "x", "y", "1"],
            &[("0", "x"), ("0", "y"), ("0", "1"), ("x", "1"), ("y", "1")],
        )
        .unwrap(),
    )
    .unwrap();
    let all = lattice.psoset().carrier();
    assert_eq!(&tnorm::t_lambda_meet(&lattice, all).unwrap(), lattice.meet_table());
    let id = UnaryMap::identity(4);
    assert_eq!(&tnorm::t_interior_meet(&lattice, &id).unwrap(), lattice.meet_table());
}

#[test]
fn tnorm_flags() {
    let (p, doc) = load("chain5");
    let t = Trellis::new(p.clone()).unwrap();
    let r = check_on(&t, doc.op("F").unwrap());
    assert!(r.left_increasing.holds() && r.right_increasing.holds() && !r.increasing.holds());
    assert!(!check_on(&t, t.meet_table()).increasing.holds());

    let lattice = Trellis::new(Psoset::from_pairs(&["0", "m", "1"], &[("0", "m"), ("0", "1"), ("m", "1")]).unwrap()).unwrap();
    let r = check_on(&lattice, lattice.meet_table());
    assert!(r.entries().iter().filter(|(name, _)| *name != "disjunctive").all(|(_, f)| f.holds()));
}

#[test]
fn enumeration_on_fixtures() {
    let opts = EnumerateOptions::default();
    let (p, doc) = load("chain5");
    let r = enumerate(&p, &opts).unwrap();
    assert_eq!(r.count(), 6);
    let t6 = doc.op("T6").unwrap();
    assert_eq!(r.greatest_table(), Some(t6));
    assert!(is_maximal(&p, t6, &opts).unwrap());
    let td = t_drastic(&p).unwrap();
    assert!(r.tnorms.iter().all(|u| pointwise_leq(&p, &td, u).unwrap()));

    let two = Psoset::from_pairs(&["0", "1"], &[("0", "1")]).unwrap();
    let r2 = enumerate(&two, &opts).unwrap();
    assert_eq!(r2.count(), 1);
    assert!(is_maximal(&two, &r2.tnorms[0], &opts).unwrap());
    assert!(order_diagram(&two, &r2).cover_edges.is_empty());

    let (q, qdoc) = load("nogreatest7");
    let rq = enumerate(&q, &opts).unwrap();
    let t1 = qdoc.op("T1").unwrap();
    let t2 = qdoc.op("T2").unwrap();
    assert!(is_maximal(&q, t1, &opts).unwrap());
    assert!(is_maximal(&q, t2, &opts).unwrap());
    assert_eq!(rq.greatest, None);
    let h = order_diagram(&q, &rq);
    let tops: Vec<usize> = (0..rq.count()).filter(|&i| !h.cover_edges.iter().any(|&(x, _)| x == i)).collect();
    assert_eq!(tops, vec![rq.position(t2).unwrap(), rq.position(t1).unwrap()]);
    assert!(trellis_core::enumerate::order_psoset(&q, &rq).is_err());
}

#[test]
fn enumeration_limits() {
    let (p, _) = load("modular7");
    let limited = enumerate(&p, &EnumerateOptions { limit: Some(5), ..EnumerateOptions::default() });
    match limited {
        Err(trellis_core::enumerate::EnumerationError::LimitReached(r)) => {
            assert_eq!(r.count(), 5);
            assert!(!r.complete);
        }
        other => panic!("unexpected {other:?}"),
    }
    let capped = enumerate(&p, &EnumerateOptions { cap: 6, ..EnumerateOptions::default() });
    assert!(matches!(capped, Err(trellis_core::enumerate::EnumerationError::CarrierTooLarge { n: 7, cap: 6 })));
    let (unbounded, _) = load("table1");
    assert!(enumerate(&unbounded, &EnumerateOptions::default()).is_err());

    let serial = enumerate(&p, &EnumerateOptions { parallel: false, ..EnumerateOptions::default() }).unwrap();
    let parallel = enumerate(&p, &EnumerateOptions::default()).unwrap();
    assert_eq!(serial.tnorms, parallel.tnorms);
    assert_eq!(serial.stats.leaves, parallel.stats.leaves);
}

#[test]
fn search_visits_fewer_nodes_than_candidate_tables() {
    for name in ["chain5", "cycle8", "modular7", "nogreatest7", "table1_bounded"] {
        let (p, _) = load(name);
        let r = enumerate(&p, &EnumerateOptions::default()).unwrap();
        let nodes = r.stats.nodes as u128;
        assert!(nodes < trellis_core::oracle::table_count(p.len()), "{name}: {nodes} nodes");
    }
}
