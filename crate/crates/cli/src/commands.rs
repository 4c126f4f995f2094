use std::fs;
use std::path::Path;

use serde_json::{json, Map, Value};
use trellis_core::classes::ElementClass;
use trellis_core::document::{parse, PsosetDocument};
use trellis_core::dot::export_dot;
use trellis_core::enumerate::{enumerate, order_diagram, EnumerateOptions, EnumerationError, EnumerationResult};
use trellis_core::interior::{lambda, validate_interior, UnaryMap};
use trellis_core::trellis::{check_skala_axioms, induced_order, structure_kind};
use trellis_core::verify::{run_all, DEFAULT_SEED};
use trellis_core::{check_on, classify, tnorm, BinaryOpTable, ElementSet, HasseDiagram, Psoset, PsosetError, Trellis};

use crate::report::{names_of, table_json, table_lines, tnorm_report, Failure, Report};
use crate::{Cli, Command};

pub fn run(cli: &Cli) -> Result<Report, Failure> {
    match &cli.command {
        Command::Validate { file } => validate(cli, file),
        Command::Classify { file } => classify_cmd(cli, file),
        Command::Structure { file } => structure(cli, file),
        Command::Construct { file, method, unchecked } => construct(cli, file, method, *unchecked),
        Command::Enumerate { file, limit, cap } => enumerate_cmd(cli, file, *limit, *cap),
        Command::VerifyPaper => verify_paper(cli),
    }
}

fn load(path: &Path) -> Result<PsosetDocument, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
    parse(&text).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

fn load_psoset(path: &Path) -> Result<(PsosetDocument, Psoset), Failure> {
    let doc = load(path)?;
    let p = doc.psoset().map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
    Ok((doc, p))
}

fn need_trellis(p: &Psoset) -> Result<Trellis, Failure> {
    Trellis::new(p.clone()).map_err(|e| Failure::precondition(named(p, &e.to_string())))
}

/// Error texts from the core name elements by index; this swaps in the element names where
/// an error mentions them.
fn named(p: &Psoset, message: &str) -> String {
    let mut out = String::new();
    let mut digits = String::new();
    let flush = |digits: &mut String, out: &mut String| {
        if !digits.is_empty() {
            match digits.parse::<usize>() {
                Ok(i) if i < p.len() => out.push_str(p.name(i)),
                _ => out.push_str(digits),
            }
            digits.clear();
        }
    };
    for ch in message.chars() {
        if ch.is_ascii_digit() {
            digits.push(ch);
        } else {
            flush(&mut digits, &mut out);
            out.push(ch);
        }
    }
    flush(&mut digits, &mut out);
    out
}

fn write_dot(cli: &Cli, diagram: &HasseDiagram, names: &[String]) -> Result<(), Failure> {
    if let Some(path) = &cli.dot {
        fs::write(path, export_dot(diagram, names)).map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
    }
    Ok(())
}

fn set_text(p: &Psoset, s: ElementSet) -> String {
    p.fmt_set(s)
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn validate(cli: &Cli, file: &Path) -> Result<Report, Failure> {
    let doc = load(file)?;
    let mut rep = Report::new("validate");
    let p = match doc.psoset() {
        Ok(p) => p,
        Err(PsosetError::Invalid(vs)) => {
            rep.line("pseudo-order  no");
            let list: Vec<String> = vs
                .iter()
                .map(|v| {
                    let text = v.to_string();
                    rep.line(format!("  {}", named_violation(&doc.names, &text)));
                    named_violation(&doc.names, &text)
                })
                .collect();
            rep.set("pseudo_order", json!({ "valid": false, "violations": list }));
            rep.violations = true;
            return Ok(rep);
        }
        Err(e) => return Err(Failure::input(format!("{}: {e}", file.display()))),
    };
    rep.line("pseudo-order  yes");
    rep.set("pseudo_order", json!({ "valid": true }));
    rep.set("elements", json!(p.names()));
    write_dot(cli, &p.hasse(), p.names())?;

    let kind = structure_kind(&p);
    rep.line(format!("trellis       {}", yes(kind.is_trellis)));
    rep.line(format!("lattice       {}", yes(kind.is_lattice)));
    let mut problems = Vec::new();
    let trellis = Trellis::new(p.clone()).ok();
    if let Some(t) = &trellis {
        let skala = check_skala_axioms(t.meet_table(), t.join_table());
        if !skala.passed() {
            problems.push(format!("derived tables fail the trellis axioms: {:?}", skala.violations));
        }
    }
    for (label, given) in [("meet", &doc.meet), ("join", &doc.join)] {
        let Some(given) = given else { continue };
        let derived = trellis.as_ref().map(|t| if label == "meet" { t.meet_table() } else { t.join_table() });
        match derived {
            None => problems.push(format!("a {label} table is given but the carrier is not a trellis")),
            Some(d) => {
                for (x, y) in d.diff(given) {
                    problems.push(format!(
                        "{label}({}, {}) is {} in the file, derived {}",
                        p.name(x),
                        p.name(y),
                        p.name(given.get(x, y)),
                        p.name(d.get(x, y))
                    ));
                }
            }
        }
    }
    if let (Some(m), Some(j)) = (&doc.meet, &doc.join) {
        let skala = check_skala_axioms(m, j);
        if !skala.passed() {
            problems.push(format!("given tables fail the trellis axioms ({} violations)", skala.violations.len()));
        } else if induced_order(m, j).ok().as_deref() != Some(&p.matrix()[..]) {
            problems.push("given tables induce a different order".into());
        }
    }
    rep.line(format!("tables        {}", if problems.is_empty() { "consistent" } else { "inconsistent" }));
    for pr in &problems {
        rep.line(format!("  {pr}"));
    }
    rep.violations = !problems.is_empty();
    rep.set("is_trellis", json!(kind.is_trellis));
    rep.set("is_lattice", json!(kind.is_lattice));
    rep.set("table_problems", json!(problems));

    let mut subsets = Map::new();
    for (label, s) in &doc.subsets {
        rep.line(format!("subset {label} = {}", set_text(&p, *s)));
        subsets.insert(label.clone(), names_of(&p, *s));
    }
    rep.set("subsets", Value::Object(subsets));
    if let Some(t) = &trellis {
        let mut maps = Map::new();
        for (label, m) in &doc.maps {
            let r = validate_interior(t, m);
            rep.line(format!("map {label}: interior operator {}", yes(r.is_interior())));
            maps.insert(label.clone(), json!({ "interior": r.is_interior(), "values": m.render(&p).split(' ').collect::<Vec<_>>() }));
        }
        rep.set("maps", Value::Object(maps));
        let mut ops = Map::new();
        for (label, op) in &doc.ops {
            let r = check_on(t, op);
            rep.line(format!("op {label}: t-norm {}", yes(r.is_tnorm())));
            ops.insert(label.clone(), json!({ "is_tnorm": r.is_tnorm() }));
        }
        rep.set("ops", Value::Object(ops));
    }
    Ok(rep)
}

fn named_violation(names: &[String], text: &str) -> String {
    let mut out = String::new();
    let mut digits = String::new();
    for ch in text.chars().chain(std::iter::once(' ')) {
        if ch.is_ascii_digit() {
            digits.push(ch);
            continue;
        }
        if !digits.is_empty() {
            match digits.parse::<usize>().ok().and_then(|i| names.get(i)) {
                Some(n) => out.push_str(n),
                None => out.push_str(&digits),
            }
            digits.clear();
        }
        out.push(ch);
    }
    out.pop();
    out
}

fn classify_cmd(cli: &Cli, file: &Path) -> Result<Report, Failure> {
    let (_, p) = load_psoset(file)?;
    let t = need_trellis(&p)?;
    write_dot(cli, &p.hasse(), p.names())?;
    let cl = classify(&t);
    let mut rep = Report::new("classify");
    let width = p.names().iter().map(String::len).max().unwrap_or(1).max(7);
    let header: Vec<String> = ElementClass::ALL.iter().map(|c| format!("{:>10}", c.label())).collect();
    rep.line(format!("{:<width$}{}", "element", header.join("")));
    let mut rows = Vec::new();
    for (x, f) in cl.flags.iter().enumerate() {
        let cells: Vec<String> = ElementClass::ALL.iter().map(|&c| format!("{:>10}", if f.has(c) { "x" } else { "." })).collect();
        rep.line(format!("{:<width$}{}", p.name(x), cells.join("")));
        let classes: Vec<&str> = ElementClass::ALL.iter().filter(|&&c| f.has(c)).map(|c| c.label()).collect();
        rows.push(json!({
            "name": p.name(x),
            "classes": classes,
            "meet_dis": f.meet_dis,
            "join_dis": f.join_dis,
        }));
    }
    let mut subsets = Map::new();
    for c in ElementClass::ALL {
        let s = cl.subset(c);
        rep.line(format!("X^{} = {}", c.label(), set_text(&p, s)));
        subsets.insert(c.label().to_string(), names_of(&p, s));
    }
    rep.set("elements", json!(rows));
    rep.set("subsets", Value::Object(subsets));
    Ok(rep)
}

fn structure(cli: &Cli, file: &Path) -> Result<Report, Failure> {
    let (_, p) = load_psoset(file)?;
    write_dot(cli, &p.hasse(), p.names())?;
    let mut rep = Report::new("structure");
    let kind = structure_kind(&p);
    for (name, v) in [
        ("meet_semi_trellis", kind.is_meet_semi_trellis),
        ("join_semi_trellis", kind.is_join_semi_trellis),
        ("trellis", kind.is_trellis),
        ("lattice", kind.is_lattice),
        ("modular", kind.is_modular),
        ("bounded", kind.is_bounded),
    ] {
        rep.line(format!("{name:<20} {}", yes(v)));
    }
    rep.set(
        "kind",
        json!({
            "meet_semi_trellis": kind.is_meet_semi_trellis,
            "join_semi_trellis": kind.is_join_semi_trellis,
            "trellis": kind.is_trellis,
            "lattice": kind.is_lattice,
            "modular": kind.is_modular,
            "bounded": kind.is_bounded,
        }),
    );
    let names = |xs: &[usize]| xs.iter().map(|&x| p.name(x).to_string()).collect::<Vec<_>>();
    let tv = p.transitivity_violation().map(|(x, y, z)| names(&[x, y, z]));
    if let Some(w) = &tv {
        rep.line(format!("intransitive         {} ⊴ {} ⊴ {}", w[0], w[1], w[2]));
    }
    rep.set("transitivity_violation", json!(tv));

    let cycles = p.maximal_cycles();
    let cyc_text: Vec<String> = cycles.iter().map(|c| set_text(&p, *c)).collect();
    rep.line(format!("maximal cycles       {}", if cyc_text.is_empty() { "none".into() } else { cyc_text.join(" ") }));
    rep.set("maximal_cycles", json!(cycles.iter().map(|c| names_of(&p, *c)).collect::<Vec<_>>()));
    if let Ok(c) = p.co_atoms() {
        rep.line(format!("co-atoms             {}", set_text(&p, c)));
        rep.set("co_atoms", names_of(&p, c));
    }
    let h = p.hasse();
    let pairs = |s: &std::collections::BTreeSet<(usize, usize)>| s.iter().map(|&(x, y)| names(&[x, y])).collect::<Vec<_>>();
    rep.set(
        "diagram",
        json!({ "covers": pairs(&h.cover_edges), "dashed": pairs(&h.dashed_pairs), "back": pairs(&h.back_edges) }),
    );

    if let Ok(t) = Trellis::new(p.clone()) {
        let mv = t.modularity_violation().map(|(x, y, z)| names(&[x, y, z]));
        if let Some(w) = &mv {
            rep.line(format!("non-modular triple   ({})", w.join(", ")));
        }
        rep.set("modularity_violation", json!(mv));
        if p.is_bounded() {
            let c4 = tnorm::condition4_violation(&t).map_err(|e| Failure::precondition(e.to_string()))?;
            let w = c4.map(|w| w.elements().into_iter().map(|x| p.name(x).to_string()).collect::<Vec<_>>());
            match &w {
                None => rep.line("zero t-norm cond.    yes"),
                Some(w) => rep.line(format!("zero t-norm cond.    no ({})", w.join(", "))),
            }
            rep.set("zero_tnorm_condition", json!({ "holds": w.is_none(), "witness": w }));
            if let Ok(b) = t.modular_implication_check() {
                rep.line(format!("modular implication  {}", yes(b)));
                rep.set("modular_implication", json!(b));
            }
        }
    }
    Ok(rep)
}

enum Method {
    Drastic,
    Zero,
    CoAtom(String),
    Lambda { subset: String, v: Option<String> },
    Interior { map: String, v: Option<String> },
}

fn parse_method(text: &str) -> Result<Method, Failure> {
    let bad = || Failure::input(format!("unknown method `{text}`"));
    let parts: Vec<&str> = text.split(':').collect();
    let v_of = |rest: &[&str]| -> Result<Option<String>, Failure> {
        match rest {
            [] => Ok(None),
            [v] => v.strip_prefix("V=").filter(|s| !s.is_empty()).map(|s| Some(s.to_string())).ok_or_else(bad),
            _ => Err(bad()),
        }
    };
    match parts.as_slice() {
        ["drastic"] => Ok(Method::Drastic),
        ["z"] => Ok(Method::Zero),
        ["coatom", e] if !e.is_empty() => Ok(Method::CoAtom(e.to_string())),
        ["lambda", s, rest @ ..] if !s.is_empty() => Ok(Method::Lambda { subset: s.to_string(), v: v_of(rest)? }),
        ["interior", m, rest @ ..] if !m.is_empty() => Ok(Method::Interior { map: m.to_string(), v: v_of(rest)? }),
        _ => Err(bad()),
    }
}

/// A named subset of the document, or one of the element classes.
fn subset_by_label(doc: &PsosetDocument, t: &Trellis, label: &str) -> Result<ElementSet, Failure> {
    if let Some(s) = doc.subset(label) {
        return Ok(s);
    }
    match label.parse::<ElementClass>() {
        Ok(c) => Ok(classify(t).subset(c)),
        Err(_) => Err(Failure::input(format!("no subset named `{label}`"))),
    }
}

fn op_by_label<'a>(doc: &'a PsosetDocument, label: &str) -> Result<&'a BinaryOpTable, Failure> {
    doc.op(label).ok_or_else(|| Failure::input(format!("no op named `{label}`")))
}

/// The document's `V`, cut down to the range of `m`.
fn local_v(t: &Trellis, m: &UnaryMap, v: &BinaryOpTable) -> Result<BinaryOpTable, Failure> {
    let sub = t.psoset().induced(m.image());
    v.restrict(&sub).ok_or_else(|| Failure::precondition("V leaves the range of the interior operator"))
}

fn construct(cli: &Cli, file: &Path, method_text: &str, unchecked: bool) -> Result<Report, Failure> {
    let method = parse_method(method_text)?;
    let (doc, p) = load_psoset(file)?;
    write_dot(cli, &p.hasse(), p.names())?;
    let pre = |e: tnorm::TnormError| Failure::precondition(named(&p, &e.to_string()));
    if unchecked && !matches!(method, Method::Lambda { .. } | Method::Interior { .. }) {
        return Err(Failure::input("--unchecked applies to lambda and interior methods only"));
    }
    let op = match &method {
        Method::Drastic => tnorm::t_drastic(&p).map_err(pre)?,
        Method::CoAtom(e) => {
            let i = p.index_of(e).ok_or_else(|| Failure::input(format!("unknown element `{e}`")))?;
            tnorm::t_coatom(&p, i).map_err(pre)?
        }
        Method::Zero => tnorm::t_z(&need_trellis(&p)?).map_err(pre)?,
        Method::Lambda { subset, v } => {
            let t = need_trellis(&p)?;
            let a = subset_by_label(&doc, &t, subset)?;
            let v = v.as_deref().map(|l| op_by_label(&doc, l)).transpose()?;
            match (unchecked, v) {
                (false, None) => tnorm::t_lambda_meet(&t, a).map_err(pre)?,
                (true, None) => tnorm::t_lambda_meet_unchecked(&t, a).map_err(pre)?,
                (false, Some(v)) => {
                    let m = lambda(&t, a).map_err(|e| pre(e.into()))?;
                    tnorm::t_lambda(&t, a, &local_v(&t, &m, v)?).map_err(pre)?
                }
                (true, Some(v)) => {
                    let m = lambda(&t, a).map_err(|e| pre(e.into()))?;
                    tnorm::t_interior_unchecked(&t, &m, |x, y| v.get(x, y)).map_err(pre)?
                }
            }
        }
        Method::Interior { map, v } => {
            let t = need_trellis(&p)?;
            let m = doc.map(map).ok_or_else(|| Failure::input(format!("no map named `{map}`")))?;
            let v = v.as_deref().map(|l| op_by_label(&doc, l)).transpose()?;
            match (unchecked, v) {
                (false, None) => tnorm::t_interior_meet(&t, m).map_err(pre)?,
                (false, Some(v)) => tnorm::t_interior(&t, m, &local_v(&t, m, v)?).map_err(pre)?,
                (true, None) => tnorm::t_interior_unchecked(&t, m, |x, y| t.meet(x, y)).map_err(pre)?,
                (true, Some(v)) => tnorm::t_interior_unchecked(&t, m, |x, y| v.get(x, y)).map_err(pre)?,
            }
        }
    };
    let report = match Trellis::new(p.clone()) {
        Ok(t) => check_on(&t, &op),
        Err(_) => tnorm::check(&p, &op),
    };
    let mut rep = Report::new("construct");
    rep.line(format!("method {method_text}"));
    rep.line("table");
    for l in table_lines(&p, &op) {
        rep.line(l);
    }
    rep.line("check");
    let flags = tnorm_report(&mut rep, &p, &report);
    rep.set("method", json!(method_text));
    rep.set("unchecked", json!(unchecked));
    rep.set("elements", json!(p.names()));
    rep.set("table", table_json(&p, &op));
    rep.set("check", flags);
    rep.violations = !report.is_tnorm();
    Ok(rep)
}

fn enumeration_report(cli: &Cli, p: &Psoset, r: &EnumerationResult, rep: &mut Report) -> Result<(), Failure> {
    let label = |i: usize| format!("T{}", i + 1);
    rep.line(format!("t-norms {}{}", r.count(), if r.complete { "" } else { " (stopped at the limit)" }));
    let mut tables = Vec::new();
    for (i, t) in r.tnorms.iter().enumerate() {
        rep.line(label(i));
        for l in table_lines(p, t) {
            rep.line(l);
        }
        tables.push(json!({ "name": label(i), "table": table_json(p, t) }));
    }
    let maximal: Vec<String> = r.maximal.iter().map(|&i| label(i)).collect();
    rep.line(format!("maximal {}", maximal.join(" ")));
    rep.line(format!("greatest {}", r.greatest.map_or("none".to_string(), label)));
    let h = order_diagram(p, r);
    let names: Vec<String> = (0..r.count()).map(label).collect();
    let pairs = |s: &std::collections::BTreeSet<(usize, usize)>| s.iter().map(|&(x, y)| [label(x), label(y)]).collect::<Vec<_>>();
    let covers: Vec<String> = h.cover_edges.iter().map(|&(x, y)| format!("{}<{}", label(x), label(y))).collect();
    rep.line(format!("covers {}", covers.join(" ")));
    if !h.dashed_pairs.is_empty() {
        let dashed: Vec<String> = h.dashed_pairs.iter().map(|&(x, y)| format!("{}~{}", label(x), label(y))).collect();
        rep.line(format!("dashed {}", dashed.join(" ")));
    }
    let s = r.stats;
    rep.line(format!(
        "search nodes={} monotonicity_prunes={} associativity_prunes={} leaves={} leaf_rejects={}",
        s.nodes, s.monotonicity_prunes, s.associativity_prunes, s.leaves, s.leaf_rejects
    ));
    rep.set("elements", json!(p.names()));
    rep.set("count", json!(r.count()));
    rep.set("complete", json!(r.complete));
    rep.set("tnorms", json!(tables));
    rep.set("maximal", json!(maximal));
    rep.set("greatest", json!(r.greatest.map(label)));
    rep.set(
        "order",
        json!({ "covers": pairs(&h.cover_edges), "dashed": pairs(&h.dashed_pairs), "back": pairs(&h.back_edges) }),
    );
    rep.set(
        "stats",
        json!({
            "nodes": s.nodes,
            "monotonicity_prunes": s.monotonicity_prunes,
            "associativity_prunes": s.associativity_prunes,
            "leaves": s.leaves,
            "leaf_rejects": s.leaf_rejects,
        }),
    );
    write_dot(cli, &h, &names)
}

fn enumerate_cmd(cli: &Cli, file: &Path, limit: Option<usize>, cap: usize) -> Result<Report, Failure> {
    let (_, p) = load_psoset(file)?;
    let opts = EnumerateOptions { limit, cap, ..EnumerateOptions::default() };
    let mut rep = Report::new("enumerate");
    match enumerate(&p, &opts) {
        Ok(r) => enumeration_report(cli, &p, &r, &mut rep)?,
        Err(EnumerationError::LimitReached(r)) => {
            enumeration_report(cli, &p, &r, &mut rep)?;
            rep.failure = Some(Failure::limit(format!("stopped after {} t-norms", r.count())));
        }
        Err(e @ EnumerationError::CarrierTooLarge { .. }) => return Err(Failure::limit(e.to_string())),
        Err(e) => return Err(Failure::precondition(e.to_string())),
    }
    Ok(rep)
}

fn verify_paper(cli: &Cli) -> Result<Report, Failure> {
    if cli.dot.is_some() {
        return Err(Failure::input("verify-paper does not draw a diagram"));
    }
    let seed = cli.seed.unwrap_or(DEFAULT_SEED);
    let outcomes = run_all(seed);
    let mut rep = Report::new("verify-paper");
    let mut items = Vec::new();
    for o in &outcomes {
        rep.line(o.line());
        items.push(json!({ "id": o.id, "title": o.title, "passed": o.passed, "detail": o.detail }));
    }
    let failed = outcomes.iter().filter(|o| !o.passed).count();
    rep.line(format!("{} passed, {failed} failed", outcomes.len() - failed));
    rep.set("seed", json!(seed));
    rep.set("criteria", json!(items));
    rep.violations = failed > 0;
    Ok(rep)
}
