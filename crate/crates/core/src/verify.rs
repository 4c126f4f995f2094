//! Reproduction checks over the built-in fixtures and seeded random trellises.
//!
//! Every check returns an [`Outcome`] instead of panicking, so the same code backs the
//! `acceptance` test target and the command line.

use std::collections::{BTreeSet, HashMap};

use rand::seq::SliceRandom;
use rand::Rng;

use crate::classes::{classify, ElementClass};
use crate::document::PsosetDocument;
use crate::enumerate::{enumerate, order_diagram, EnumerateOptions};
use crate::fixtures;
use crate::interior::{lambda, validate_interior};
use crate::oracle::brute_force_tnorms;
use crate::random;
use crate::relation::{validate_psoset, Psoset};
use crate::set::ElementSet;
use crate::table::BinaryOpTable;
use crate::tnorm::{self, check_on, condition4, t_coatom, t_drastic, Witness};
use crate::trellis::Trellis;

pub const DEFAULT_SEED: u64 = 0x007e_1115;

/// Random trellises inspected by the property suite.
pub const PROPERTY_SAMPLES: usize = 500;

/// Random bounded psosets compared against the brute-force oracle, on top of the
/// exhaustive list of shapes with three inner elements.
pub const ORACLE_SAMPLES: usize = 200;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub id: u8,
    pub title: &'static str,
    pub passed: bool,
    /// Failures, or a short summary of what was checked.
    pub detail: String,
}

#[derive(Default)]
struct Checks {
    failures: Vec<String>,
    notes: Vec<String>,
}

impl Checks {
    fn expect(&mut self, ok: bool, what: impl FnOnce() -> String) {
        if !ok {
            self.failures.push(what());
        }
    }

    fn eq<T: PartialEq + std::fmt::Debug>(&mut self, what: &str, found: T, expected: T) {
        if found != expected {
            self.failures.push(format!("{what}: expected {expected:?}, found {found:?}"));
        }
    }

    fn note(&mut self, s: impl Into<String>) {
        self.notes.push(s.into());
    }

    fn finish(self, id: u8, title: &'static str) -> Outcome {
        let passed = self.failures.is_empty();
        let detail = if passed { self.notes.join("; ") } else { self.failures.join("; ") };
        Outcome { id, title, passed, detail }
    }
}

struct Fixture {
    doc: PsosetDocument,
    p: Psoset,
}

impl Fixture {
    fn load(name: &str) -> Fixture {
        let doc = fixtures::load(name);
        let p = doc.psoset().unwrap_or_else(|e| panic!("fixture {name}: {e}"));
        Fixture { doc, p }
    }

    fn trellis(&self) -> Trellis {
        Trellis::new(self.p.clone()).expect("fixture is a trellis")
    }

    fn op(&self, label: &str) -> &BinaryOpTable {
        self.doc.op(label).unwrap_or_else(|| panic!("fixture op {label}"))
    }

    fn subset(&self, label: &str) -> ElementSet {
        self.doc.subset(label).unwrap_or_else(|| panic!("fixture subset {label}"))
    }

    fn at(&self, name: &str) -> usize {
        self.p.index_of(name).expect("element name")
    }

    fn witness(&self, w: Option<Witness>) -> Option<String> {
        w.map(|w| w.render(&self.p))
    }
}

fn cycles(p: &Psoset) -> Vec<String> {
    p.maximal_cycles().iter().map(|c| p.fmt_set(*c)).collect()
}

/// Compares an operation with a reference table, reporting differing cells by name.
fn same_table(c: &mut Checks, f: &Fixture, what: &str, found: &BinaryOpTable, expected: &BinaryOpTable) {
    let diff = found.diff(expected);
    c.expect(diff.is_empty(), || {
        let cells: Vec<String> = diff.iter().take(4).map(|&(x, y)| format!("({},{})", f.p.name(x), f.p.name(y))).collect();
        format!("{what} differs in {} cells, e.g. {}", diff.len(), cells.join(" "))
    });
}

pub fn fixture_cycles() -> Outcome {
    let mut c = Checks::default();
    let t1 = Fixture::load("table1");
    c.eq("table1 maximal cycles", cycles(&t1.p), vec!["{d, e, f}".to_string()]);
    c.expect(t1.p.leq(t1.at("b"), t1.at("d")) && t1.p.leq(t1.at("d"), t1.at("e")) && !t1.p.leq(t1.at("b"), t1.at("e")), || {
        "table1 should have b ⊴ d ⊴ e with b ⋬ e".into()
    });
    let cy = Fixture::load("cycle8");
    c.eq("cycle8 maximal cycles", cycles(&cy.p), vec!["{b, c, e, f}".to_string()]);
    c.expect(cy.trellis().len() == 8, || "cycle8 is a trellis".into());
    let back: Vec<(usize, usize)> = cy.p.hasse().back_edges.into_iter().collect();
    c.eq("cycle8 back edges", back, vec![(cy.at("f"), cy.at("b"))]);
    c.note("table1 cycle {d, e, f}; cycle8 cycle {b, c, e, f} with back edge f→b");
    c.finish(1, "pseudo-order fixtures and their maximal cycles")
}

pub fn increasing_witnesses() -> Outcome {
    let mut c = Checks::default();
    let f = Fixture::load("chain5");
    let t = f.trellis();
    let h = f.p.hasse();
    c.eq("chain5 cover count", h.cover_edges.len(), 4);
    c.eq("chain5 dashed pairs", h.dashed_pairs.iter().copied().collect::<Vec<_>>(), vec![(f.at("a"), f.at("c"))]);

    let meet = check_on(&t, t.meet_table());
    // b ⊴ c while b∧a = a ⋬ 0 = c∧a.
    c.eq("meet left witness", f.witness(meet.left_increasing.witness()), Some("(b, c, a)".into()));
    c.eq("meet right witness", f.witness(meet.right_increasing.witness()), Some("(b, c, a)".into()));
    c.eq("meet value b∧a", t.meet(f.at("b"), f.at("a")), f.at("a"));
    c.eq("meet value c∧a", t.meet(f.at("c"), f.at("a")), f.at("0"));

    let op = f.op("F");
    let r = check_on(&t, op);
    c.expect(r.left_increasing.holds(), || "F should be left-increasing".into());
    c.expect(r.right_increasing.holds(), || "F should be right-increasing".into());
    // a ⊴ 1, b ⊴ c while F(a,b) = a ⋬ c = F(1,c).
    c.eq("F increasing witness", f.witness(r.increasing.witness()), Some("(a, 1, b, c)".into()));
    c.eq("F(a,b)", op.get(f.at("a"), f.at("b")), f.at("a"));
    c.eq("F(1,c)", op.get(f.at("1"), f.at("c")), f.at("c"));
    c.note("meet fails at (b, c, a); F fails increasingness at (a, 1, b, c)");
    c.finish(2, "one-sided increasingness of the meet and of F")
}

pub fn zero_tnorm() -> Outcome {
    let mut c = Checks::default();
    let f = Fixture::load("modular8");
    let t = f.trellis();
    c.expect(t.is_modular(), || "modular8 should be modular".into());
    c.eq("modular8 zero t-norm condition", condition4(&t).ok(), Some(true));
    match tnorm::t_z(&t) {
        Ok(tz) => {
            let top = f.at("1");
            let inner = (0..t.len()).filter(|&x| x != top).count();
            c.eq("inner cells", inner * inner, 49);
            same_table(&mut c, &f, "T_Z", &tz, f.op("TZ"));
            c.expect(check_on(&t, &tz).is_tnorm(), || "T_Z on modular8 should be a t-norm".into());
        }
        Err(e) => c.expect(false, || format!("T_Z on modular8: {e}")),
    }

    let g = Fixture::load("modular7");
    let t = g.trellis();
    c.expect(t.is_modular(), || "modular7 should be modular".into());
    c.eq("modular7 zero t-norm condition", condition4(&t).ok(), Some(false));
    match tnorm::t_z(&t) {
        Ok(tz) => {
            let r = check_on(&t, &tz);
            c.expect(!r.increasing.holds(), || "T_Z on modular7 should not be increasing".into());
            // b ⊴ c while T_Z(b,e) = a ⋬ 0 = T_Z(c,e).
            c.eq("modular7 T_Z witness", g.witness(r.increasing.witness()), Some("(b, c, e, e)".into()));
        }
        Err(e) => c.expect(false, || format!("T_Z on modular7: {e}")),
    }
    c.note("modular8 T_Z matches 49 inner cells; modular7 T_Z fails at (b, c, e, e)");
    c.finish(3, "the zero t-norm and its condition")
}

pub fn six_tnorms() -> Outcome {
    let mut c = Checks::default();
    let f = Fixture::load("chain5");
    let r = match enumerate(&f.p, &EnumerateOptions::default()) {
        Ok(r) => r,
        Err(e) => {
            c.expect(false, || format!("enumeration: {e}"));
            return c.finish(4, "all t-norms on the five-element trellis");
        }
    };
    c.eq("t-norm count", r.count(), 6);
    let expected = [
        t_drastic(&f.p).expect("bounded"),
        t_coatom(&f.p, f.at("c")).expect("c is a co-atom"),
        f.op("T3").clone(),
        f.op("T4").clone(),
        f.op("T5").clone(),
        f.op("T6").clone(),
    ];
    let pos: Vec<Option<usize>> = expected.iter().map(|t| r.position(t)).collect();
    c.expect(pos.iter().all(Option::is_some), || format!("reference tables missing from the enumeration: {pos:?}"));
    let pos: Vec<usize> = pos.into_iter().flatten().collect();
    if pos.len() == 6 {
        c.eq("greatest", r.greatest, Some(pos[5]));
        let expected: BTreeSet<(usize, usize)> = [(1, 3), (3, 2), (3, 4), (2, 5), (4, 6), (5, 6)]
            .iter()
            .map(|&(a, b)| (pos[a - 1], pos[b - 1]))
            .collect();
        let h = order_diagram(&f.p, &r);
        c.eq("order diagram covers", h.cover_edges, expected);
        c.expect(h.dashed_pairs.is_empty() && h.back_edges.is_empty(), || "t-norm order should be a lattice".into());
    }
    c.note(format!("6 t-norms, greatest T6, {} search nodes", r.stats.nodes));
    c.finish(4, "all t-norms on the five-element trellis")
}

pub fn no_greatest() -> Outcome {
    let mut c = Checks::default();
    let f = Fixture::load("nogreatest7");
    let r = match enumerate(&f.p, &EnumerateOptions::default()) {
        Ok(r) => r,
        Err(e) => {
            c.expect(false, || format!("enumeration: {e}"));
            return c.finish(5, "maximal t-norms without a greatest one");
        }
    };
    for label in ["T1", "T2"] {
        match r.position(f.op(label)) {
            Some(i) => c.expect(r.maximal.contains(&i), || format!("{label} should be maximal")),
            None => c.expect(false, || format!("{label} is not among the enumerated t-norms")),
        }
    }
    c.eq("greatest", r.greatest, None);

    let (a, d, e) = (f.at("a"), f.at("d"), f.at("e"));
    let mut bumped = f.op("T1").clone();
    bumped.set(a, e, a);
    bumped.set(e, a, a);
    let left = bumped.get(a, bumped.get(e, d));
    let right = bumped.get(bumped.get(a, e), d);
    c.expect(left != right, || "raising T1(a,e) to a should break associativity on (a, e, d)".into());
    // No t-norm above T1 takes the value a at (a, e).
    let t1 = f.op("T1");
    let above: Vec<&BinaryOpTable> = r
        .tnorms
        .iter()
        .filter(|u| tnorm::pointwise_leq(&f.p, t1, u).unwrap_or(false))
        .collect();
    c.expect(above.iter().all(|u| u.get(a, e) != a), || "a t-norm above T1 has T(a,e) = a".into());
    c.note(format!("{} t-norms, {} maximal, no greatest", r.count(), r.maximal.len()));
    c.finish(5, "maximal t-norms without a greatest one")
}

/// Relation matrix of `p` with the bottom first, the top last and the inner elements kept in
/// their order. Returns the matrix and the carrier index at each new position.
fn normal_form(p: &Psoset) -> Option<(Vec<Vec<bool>>, Vec<usize>)> {
    let (bottom, top) = p.bounds().ok()?;
    if bottom == top {
        return None;
    }
    let mut order = vec![bottom];
    order.extend((0..p.len()).filter(|&x| x != bottom && x != top));
    order.push(top);
    let rel = order.iter().map(|&x| order.iter().map(|&y| p.leq(x, y)).collect()).collect();
    Some((rel, order))
}

fn oracle_tnorms(p: &Psoset, cache: &mut HashMap<Vec<Vec<bool>>, Vec<BinaryOpTable>>) -> Vec<BinaryOpTable> {
    let Some((rel, order)) = normal_form(p) else {
        return brute_force_tnorms(p);
    };
    let shaped = cache.entry(rel.clone()).or_insert_with(|| {
        let names: Vec<String> = (0..rel.len()).map(|i| i.to_string()).collect();
        brute_force_tnorms(&validate_psoset(&rel, &names).expect("normal form of a pseudo-order"))
    });
    let n = p.len();
    let mut pos = vec![0; n];
    for (i, &x) in order.iter().enumerate() {
        pos[x] = i;
    }
    let mut out: Vec<BinaryOpTable> = shaped
        .iter()
        .map(|s| BinaryOpTable::from_fn(n, |x, y| order[s.get(pos[x], pos[y])]))
        .collect();
    out.sort();
    out
}

/// Every pseudo-order on `k` inner elements, bounded by a fresh bottom and top.
fn all_bounded_shapes(k: usize) -> Vec<Psoset> {
    let pairs: Vec<(usize, usize)> = (0..k).flat_map(|x| (x + 1..k).map(move |y| (x, y))).collect();
    let n = k + 2;
    let names: Vec<String> = std::iter::once("0".to_string())
        .chain((0..k).map(|i| ((b'a' + i as u8) as char).to_string()))
        .chain(std::iter::once("1".to_string()))
        .collect();
    let mut out = Vec::new();
    for code in 0..3usize.pow(pairs.len() as u32) {
        let mut rel = vec![vec![false; n]; n];
        for x in 0..n {
            rel[x][x] = true;
            rel[0][x] = true;
            rel[x][n - 1] = true;
        }
        let mut c = code;
        for &(x, y) in &pairs {
            match c % 3 {
                0 => rel[x + 1][y + 1] = true,
                1 => rel[y + 1][x + 1] = true,
                _ => {}
            }
            c /= 3;
        }
        out.push(validate_psoset(&rel, &names).expect("bounded pseudo-order"));
    }
    out
}

pub fn oracle_agreement(seed: u64) -> Outcome {
    let mut c = Checks::default();
    let mut rng = random::rng(seed);
    let mut corpus: Vec<Psoset> = (0..=3).flat_map(all_bounded_shapes).collect();
    let exhaustive = corpus.len();
    for _ in 0..ORACLE_SAMPLES {
        let inner = rng.gen_range(0..=3);
        corpus.push(random::bounded_psoset(&mut rng, inner));
    }
    let mut cache = HashMap::new();
    let opts = EnumerateOptions { parallel: false, ..EnumerateOptions::default() };
    let mut total = 0;
    for (i, p) in corpus.iter().enumerate() {
        let expected = oracle_tnorms(p, &mut cache);
        match enumerate(p, &opts) {
            Ok(r) => {
                total += r.count();
                c.expect(r.tnorms == expected, || {
                    format!("instance {i} ({} elements): search found {}, oracle {}", p.len(), r.count(), expected.len())
                });
                c.expect(r.stats.leaf_rejects == 0, || format!("instance {i}: {} leaf rejects", r.stats.leaf_rejects));
            }
            Err(e) => c.expect(false, || format!("instance {i}: {e}")),
        }
    }
    c.expect(total > 0, || "corpus produced no t-norms".into());
    c.note(format!(
        "{} psosets ({exhaustive} exhaustive shapes + {ORACLE_SAMPLES} seeded), {} oracle runs, {total} t-norms",
        corpus.len(),
        cache.len()
    ));
    c.finish(6, "pruned search agrees with the brute-force oracle")
}

pub fn interior_tables() -> Outcome {
    let mut c = Checks::default();
    let f = Fixture::load("interior7");
    let t = f.trellis();
    let rtr = classify(&t).subset(ElementClass::RightTransitive);
    c.eq("X^rtr", f.p.fmt_set(rtr), f.p.fmt_set(f.subset("rtr")));
    match lambda(&t, rtr) {
        Ok(m) => {
            c.eq("λ_rtr", m.render(&f.p), f.doc.map("lambda_rtr").expect("fixture map").render(&f.p));
            c.expect(validate_interior(&t, &m).is_interior(), || "λ_rtr should be an interior operator".into());
        }
        Err(e) => c.expect(false, || format!("λ_rtr: {e}")),
    }
    for a in ["b", "c", "d", "e"] {
        let label = format!("TV{a}");
        let built = tnorm::v_scaled(&t, rtr, f.at(a)).and_then(|v| tnorm::t_lambda(&t, rtr, &v));
        match built {
            Ok(op) => same_table(&mut c, &f, &label, &op, f.op(&label)),
            Err(e) => c.expect(false, || format!("{label}: {e}")),
        }
    }
    let g = f.op("greatest");
    c.expect(check_on(&t, g).is_tnorm(), || "reference greatest table should be a t-norm".into());
    match enumerate(&f.p, &EnumerateOptions::default()) {
        Ok(r) => c.eq("enumerated greatest", r.greatest_table(), Some(g)),
        Err(e) => c.expect(false, || format!("enumeration: {e}")),
    }
    c.note("λ_rtr, four scaled constructions and the greatest t-norm match");
    c.finish(7, "interior-operator constructions on the seven-element trellis")
}

pub fn cycle_tables() -> Outcome {
    let mut c = Checks::default();
    let f = Fixture::load("cycle8");
    let t = f.trellis();
    let rtr = classify(&t).subset(ElementClass::RightTransitive);
    c.eq("X^rtr", f.p.fmt_set(rtr), f.p.fmt_set(f.subset("rtr")));
    match lambda(&t, rtr) {
        Ok(m) => c.eq("λ_rtr", m.render(&f.p), f.doc.map("lambda_rtr").expect("fixture map").render(&f.p)),
        Err(e) => c.expect(false, || format!("λ_rtr: {e}")),
    }
    match tnorm::t_lambda_meet(&t, rtr) {
        Ok(op) => {
            same_table(&mut c, &f, "T^[rtr]", &op, f.op("Trtr"));
            c.expect(check_on(&t, &op).is_tnorm(), || "T^[rtr] should be a t-norm".into());
        }
        Err(e) => c.expect(false, || format!("T^[rtr]: {e}")),
    }
    c.note("λ_rtr and T^[rtr] match on the trellis with a cycle");
    c.finish(8, "λ and T^[rtr] on the trellis with a cycle")
}

pub fn non_subtrellis_counterexample() -> Outcome {
    let mut c = Checks::default();
    let f = Fixture::load("modular7");
    let t = f.trellis();
    let rtr = classify(&t).subset(ElementClass::RightTransitive);
    c.eq("X^rtr", f.p.fmt_set(rtr), "{0, a, c, d, e, 1}".to_string());
    c.expect(!t.is_meet_sub_trellis(rtr), || "X^rtr should not be a ∧-sub-trellis".into());
    let (cc, d) = (f.at("c"), f.at("d"));
    c.eq("meet-closure witness", t.meet_closure_witness(rtr), Some((cc, d)));
    c.eq("c∧d", t.meet(cc, d), f.at("b"));
    c.expect(tnorm::t_lambda_meet(&t, rtr).is_err(), || "checked T^[rtr] should refuse the subset".into());
    match tnorm::t_lambda_meet_unchecked(&t, rtr) {
        Ok(op) => {
            same_table(&mut c, &f, "unchecked T^[rtr]", &op, f.op("Trtr"));
            let r = check_on(&t, &op);
            c.expect(!r.increasing.holds(), || "unchecked T^[rtr] should not be increasing".into());
            // c ⊴ e, d ⊴ e, T(c,d) = b ⋬ e = T(e,e).
            c.eq("increasing witness", f.witness(r.increasing.witness()), Some("(c, e, d, e)".into()));
        }
        Err(e) => c.expect(false, || format!("unchecked T^[rtr]: {e}")),
    }
    c.note("X^rtr leaves at c∧d = b; T^[rtr] fails at (c, e, d, e)");
    c.finish(9, "T^[rtr] when X^rtr is not a sub-trellis")
}

#[derive(Debug, Default, Clone, Copy)]
struct PropertyCounts {
    trellises: usize,
    proper: usize,
    modular_or_chain: usize,
    pseudo_chains: usize,
    subsets: usize,
    constructions: usize,
}

fn subsets_of(s: ElementSet, keep: usize) -> Vec<ElementSet> {
    let rest: Vec<usize> = s.iter().filter(|&x| x != keep).collect();
    (0..1usize << rest.len())
        .map(|mask| {
            let mut a = ElementSet::singleton(keep);
            for (i, &x) in rest.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    a.insert(x);
                }
            }
            a
        })
        .collect()
}

fn trellis_properties<R: Rng>(rng: &mut R, t: &Trellis, c: &mut Checks, k: &mut PropertyCounts, label: &str) {
    use ElementClass::*;
    let p = t.psoset();
    let cl = classify(t);
    let x = |class| cl.subset(class);
    let sub = |a: ElementClass, b: ElementClass| x(a).is_subset(x(b));

    for (a, b) in [
        (Distributive, Associative),
        (Associative, MeetAssociative),
        (MeetAssociative, Transitive),
        (Transitive, RightTransitive),
        (Associative, JoinAssociative),
        (JoinAssociative, Transitive),
        (Transitive, LeftTransitive),
    ] {
        c.expect(sub(a, b), || format!("{label}: X^{a} ⊄ X^{b}"));
    }

    c.expect(t.is_meet_sub_trellis(x(LeftTransitive)), || format!("{label}: X^ltr not ∧-closed"));
    c.expect(t.is_join_sub_trellis(x(RightTransitive)), || format!("{label}: X^rtr not ∨-closed"));
    c.expect(t.is_meet_sub_trellis(x(MeetAssociative)), || format!("{label}: X^meet-ass not ∧-closed"));
    c.expect(t.is_join_sub_trellis(x(JoinAssociative)), || format!("{label}: X^join-ass not ∨-closed"));

    let rtr = x(RightTransitive);
    let ltr = x(LeftTransitive);
    for a in rtr {
        for b in rtr {
            for d in rtr {
                c.expect(t.join(a, t.join(b, d)) == t.join(t.join(a, b), d), || format!("{label}: ∨ not associative on X^rtr"));
            }
        }
    }
    for a in ltr {
        for b in ltr {
            for d in ltr {
                c.expect(t.meet(a, t.meet(b, d)) == t.meet(t.meet(a, b), d), || format!("{label}: ∧ not associative on X^ltr"));
            }
        }
    }

    let chain = p.is_pseudo_chain(p.carrier()).unwrap_or(false);
    if t.is_modular() || chain {
        k.modular_or_chain += 1;
        let eqs = [x(Associative), x(MeetAssociative), x(JoinAssociative), x(Transitive)];
        c.expect(eqs.iter().all(|&s| s == eqs[0]), || format!("{label}: ass/meet-ass/join-ass/tr differ"));
    }

    let transitive = p.is_transitive();
    for (name, op) in [("∧", t.meet_table()), ("∨", t.join_table())] {
        let r = check_on(t, op);
        // The t-norm report tests increasingness against ⊴ on both arguments.
        let inc = tnorm::increasing_witness(p, op).is_none();
        c.expect(inc == transitive && r.associative.holds() == transitive, || {
            format!("{label}: {name} increasing={inc}, associative={}, transitive={transitive}", r.associative.holds())
        });
    }
    if !t.is_lattice() {
        k.proper += 1;
    }

    let Ok((bottom, _)) = t.bounds() else { return };
    let t_rtr = tnorm::t_lambda_meet(t, rtr).ok();
    if chain {
        k.pseudo_chains += 1;
        c.expect(t_rtr.is_some(), || format!("{label}: X^rtr of a pseudo-chain should give T^[rtr]"));
    }
    for a in subsets_of(rtr, bottom) {
        if chain {
            match (tnorm::t_lambda_meet(t, a), &t_rtr) {
                (Ok(op), Some(top_op)) => {
                    c.expect(check_on(t, &op).is_tnorm(), || format!("{label}: T^[A] on a pseudo-chain is not a t-norm"));
                    c.expect(tnorm::pointwise_leq(p, &op, top_op).unwrap_or(false), || format!("{label}: T^[A] ⋬ T^[rtr]"));
                }
                (Err(e), _) => c.expect(false, || format!("{label}: T^[A] on a pseudo-chain: {e}")),
                _ => {}
            }
        }
        if !t.is_sub_trellis(a) {
            continue;
        }
        k.subsets += 1;
        let m = match lambda(t, a) {
            Ok(m) => m,
            Err(e) => {
                c.expect(false, || format!("{label}: λ_A: {e}"));
                continue;
            }
        };
        c.expect(validate_interior(t, &m).is_interior(), || format!("{label}: λ_A is not interior"));
        c.expect(m.image() == a, || format!("{label}: range of λ_A is not A"));

        match tnorm::t_interior_meet(t, &m) {
            Ok(op) => {
                let r = check_on(t, &op);
                c.expect(r.is_tnorm(), || format!("{label}: T^I is not a t-norm"));
                c.expect(r.meet_preserving.holds(), || format!("{label}: T^I is not meet-preserving"));
            }
            Err(e) => c.expect(false, || format!("{label}: T^I: {e}")),
        }

        let range = p.induced(a);
        let vs = match enumerate(&range.psoset, &EnumerateOptions { parallel: false, ..EnumerateOptions::default() }) {
            Ok(r) => r.tnorms,
            Err(e) => {
                c.expect(false, || format!("{label}: t-norms on the range: {e}"));
                continue;
            }
        };
        for v in vs.choose_multiple(rng, 4) {
            k.constructions += 1;
            match tnorm::t_interior(t, &m, v) {
                Ok(op) => c.expect(check_on(t, &op).is_tnorm(), || format!("{label}: T^(I,V) is not a t-norm")),
                Err(e) => c.expect(false, || format!("{label}: T^(I,V): {e}")),
            }
        }
    }
}

pub fn property_suites(seed: u64) -> Outcome {
    let mut c = Checks::default();
    let mut rng = random::rng(seed);
    let mut k = PropertyCounts::default();
    for i in 0..PROPERTY_SAMPLES {
        let t = random::bounded_trellis(&mut rng, 7);
        k.trellises += 1;
        trellis_properties(&mut rng, &t, &mut c, &mut k, &format!("sample {i}"));
        if c.failures.len() > 20 {
            break;
        }
    }
    c.expect(k.proper > 0 && k.modular_or_chain > 0 && k.pseudo_chains > 0, || format!("sample lacks variety: {k:?}"));
    c.note(format!(
        "seed {seed}: {} trellises ({} proper, {} modular or pseudo-chain, {} pseudo-chains), {} sub-trellises of X^rtr, {} T^(I,V) checks",
        k.trellises, k.proper, k.modular_or_chain, k.pseudo_chains, k.subsets, k.constructions
    ));
    c.finish(10, "structural properties on random trellises")
}

/// Every check, in order.
pub fn run_all(seed: u64) -> Vec<Outcome> {
    vec![
        fixture_cycles(),
        increasing_witnesses(),
        zero_tnorm(),
        six_tnorms(),
        no_greatest(),
        oracle_agreement(seed),
        interior_tables(),
        cycle_tables(),
        non_subtrellis_counterexample(),
        property_suites(seed),
    ]
}

impl Outcome {
    pub fn line(&self) -> String {
        let status = if self.passed { "PASS" } else { "FAIL" };
        format!("{status} {:>2} {}: {}", self.id, self.title, self.detail)
    }
}
