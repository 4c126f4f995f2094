use trellis_core::dot::export_dot;
use trellis_core::fixtures;

#[test]
fn five_element_trellis_has_four_covers_and_one_dashed_pair() {
    let p = fixtures::load("chain5").psoset().unwrap();
    let dot = export_dot(&p.hasse(), p.names());
    assert_eq!(dot.matches("[dir=none];").count(), 4);
    assert_eq!(dot.matches("style=dashed").count(), 1);
    assert!(dot.contains("\"a\" -> \"c\" [dir=none, style=dashed, constraint=false];"));
    assert!(dot.starts_with("digraph psoset {\n  rankdir=BT;"));
    assert!(dot.ends_with("}\n"));
}

#[test]
fn cycle_fixture_draws_the_closing_arrow() {
    let p = fixtures::load("cycle8").psoset().unwrap();
    let dot = export_dot(&p.hasse(), p.names());
    assert!(dot.contains("\"f\" -> \"b\" [constraint=false];"));
    assert_eq!(dot.matches("[constraint=false];").count(), 1);
}

#[test]
fn output_is_stable() {
    for (name, _) in fixtures::ALL {
        let p = fixtures::load(name).psoset().unwrap();
        assert_eq!(export_dot(&p.hasse(), p.names()), export_dot(&p.hasse(), p.names()), "{name}");
    }
}
