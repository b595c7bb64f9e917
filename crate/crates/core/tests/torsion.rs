mod common;

use std::path::PathBuf;

use binuc_core::binuclear::{build_ni_order, ni_join, ni_meet, pop_down, pop_up, NiBound};
use binuc_core::generate::{fig1, fig2, weak_order};
use binuc_core::lattice::{FinLattice, Interval, LatticeJson};
use binuc_core::suite::{run_on_tors, Suite, SuiteOptions, Verdict};
use binuc_core::torsion::{
    bricks_and_kappa, cw_partition, enumerate_presilting, enumerate_tors, fss_cover_check,
    gen_linear_an, gen_type_a, load_algebra, Subcat, TorsData,
};
use common::Raw;

fn fixture(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "fixtures", name]
        .iter()
        .collect();
    std::fs::read_to_string(&p).unwrap_or_else(|e| panic!("{}: {e}", p.display()))
}

fn tors(n: usize, word: &str) -> TorsData {
    enumerate_tors(&gen_type_a(n, word).unwrap()).unwrap()
}

#[test]
fn shipped_algebra_fixtures_match_generator() {
    for (file, n, word) in [
        ("a1.json", 1, ""),
        ("a2.json", 2, "<"),
        ("a3.json", 3, "<<"),
        ("a3_zigzag.json", 3, "><"),
    ] {
        let loaded = load_algebra(&fixture(file)).unwrap();
        assert_eq!(
            loaded.to_json(),
            gen_type_a(n, word).unwrap().to_json(),
            "{file}"
        );
    }
}

#[test]
fn shipped_lattice_fixtures_match_generator() {
    for (file, l) in [
        ("fig1.json", fig1().unwrap()),
        ("fig2.json", fig2().unwrap()),
        ("weak_order3.json", weak_order(3).unwrap()),
    ] {
        let json: LatticeJson = serde_json::from_str(&fixture(file)).unwrap();
        assert_eq!(json, l.to_json(), "{file}");
        assert_eq!(json.to_lattice().unwrap().len(), l.len());
    }
}

#[test]
fn fig1_pop_values() {
    let l = fig1().unwrap();
    let (bot, top, y) = (l.bottom(), l.top(), l.id("y").unwrap());
    assert_eq!(pop_down(&l, bot, top).unwrap(), bot);
    assert_eq!(pop_up(&l, bot, top).unwrap(), y);
}

#[test]
fn fig2_missing_meet_and_dual_missing_join() {
    let l = fig2().unwrap();
    let id = |s: &str| l.id(s).unwrap();
    assert_eq!(l.meet2(id("g"), id("h")), id("i"));
    assert_eq!(pop_up(&l, id("i"), id("c")).unwrap(), id("f"));
    let bp = build_ni_order(&l);
    let ga = Interval::new(id("g"), id("a"));
    let hb = Interval::new(id("h"), id("b"));
    assert_eq!(
        ni_meet(&bp, ga, hb).unwrap(),
        NiBound::Missing {
            candidate: Interval::new(id("i"), id("f")),
            witness: Some(Interval::new(id("bot"), id("c"))),
        }
    );
    let d: FinLattice = l.dual();
    let dbp = build_ni_order(&d);
    let r = ni_join(
        &dbp,
        Interval::new(id("a"), id("g")),
        Interval::new(id("b"), id("h")),
    )
    .unwrap();
    assert!(matches!(r, NiBound::Missing { .. }));
    // and brute force agrees
    let raw = Raw::of(&d);
    let carrier = raw.binuclear();
    assert_eq!(
        raw.ni_lub(&carrier, (id("a").0, id("g").0), (id("b").0, id("h").0)),
        None
    );
}

#[test]
fn a2_join_of_comparable_points() {
    let spec = gen_linear_an(2).unwrap();
    let td = enumerate_tors(&spec).unwrap();
    let l = td.lattice();
    let s2 = spec.find("M[2,2]").unwrap();
    let p2 = spec.find("M[1,2]").unwrap();
    let t2 = td.element(Subcat::from_ids([s2, p2])).unwrap();
    let r = ni_join(td.binuc(), Interval::point(l.bottom()), Interval::point(t2)).unwrap();
    assert_eq!(r.value(), Some(Interval::point(t2)));
}

#[test]
fn a2_binuclear_table() {
    let spec = gen_linear_an(2).unwrap();
    let td = enumerate_tors(&spec).unwrap();
    let l = td.lattice();
    let id = |ids: &[&str]| {
        td.element(Subcat::from_ids(ids.iter().map(|s| spec.find(s).unwrap())))
            .unwrap()
    };
    let (z, one) = (l.bottom(), l.top());
    let s = id(&["M[1,1]"]);
    let t1 = id(&["M[2,2]"]);
    let t2 = id(&["M[1,2]", "M[2,2]"]);
    let mut want = vec![
        Interval::point(z),
        Interval::point(s),
        Interval::point(t1),
        Interval::point(t2),
        Interval::point(one),
        Interval::new(z, s),
        Interval::new(z, t1),
        Interval::new(t1, t2),
        Interval::new(s, one),
        Interval::new(t2, one),
        Interval::new(z, one),
    ];
    want.sort();
    assert_eq!(td.binuc().intervals(), &want[..]);
    assert_eq!(td.binuc().covers().len(), 14);
}

#[test]
fn zigzag_a3_heart_blocks() {
    let td = tors(3, "><");
    let spec = td.spec();
    let p1 = spec.projective_cover(0).unwrap();
    assert_eq!(spec.indec(p1).id, "M[1,2]");
    let cw = cw_partition(&td);
    assert!(cw.passed(), "{:?}", cw.failures);
    let block = cw.block(Subcat::single(p1)).unwrap();
    assert_eq!(block.intervals.len(), 3);
    assert!(block.is_chain);
    let empty = cw.block(Subcat::EMPTY).unwrap();
    assert_eq!(empty.intervals.len(), 14);
    // the empty-heart block is ordered like tors itself
    for &a in &empty.intervals {
        for &b in &empty.intervals {
            assert_eq!(td.binuc().leq(a, b), td.lattice().leq(a.lo, b.lo));
        }
    }
}

#[test]
fn cover_classification_all_orientations() {
    for n in 1..=4 {
        for mask in 0..1u32 << (n - 1) {
            let word: String = (0..n - 1)
                .map(|k| if mask >> k & 1 == 1 { '>' } else { '<' })
                .collect();
            let td = tors(n, &word);
            let e = enumerate_presilting(&td).unwrap();
            let r = fss_cover_check(&td, &e).unwrap();
            assert!(r.passed(), "A{n}({word}): {:?}", r.failures);
            assert_eq!(r.covers, td.binuc().covers().len());
        }
    }
}

#[test]
fn heart_partition_and_bricks_a4() {
    let td = tors(4, "<<<");
    assert_eq!(td.len(), 42);
    assert_eq!(td.binuc().len(), 197);
    let cw = cw_partition(&td);
    assert!(cw.passed(), "{:?}", cw.failures);
    let b = bricks_and_kappa(&td).unwrap();
    assert_eq!(b.bricks.len(), 10);
    assert_eq!(b.cover_labels.len(), td.lattice().covers().len());
}

#[test]
fn full_suite_on_small_algebras() {
    let opts = SuiteOptions {
        theta_samples: 100,
        ..SuiteOptions::default()
    };
    for (n, word) in [(1, ""), (2, "<"), (2, ">"), (3, "<<"), (3, "><"), (3, "<>")] {
        let out = run_on_tors(&tors(n, word), Suite::All, &opts);
        for c in &out.checks {
            assert_eq!(
                c.verdict,
                Verdict::Pass,
                "A{n}({word}) {}: {:?}",
                c.name,
                c.witness
            );
        }
    }
}

#[test]
fn orientation_does_not_change_counts() {
    for word in ["<<", "><", "<>", ">>"] {
        let td = tors(3, word);
        assert_eq!(td.len(), 14, "{word}");
        assert_eq!(td.binuc().len(), 45, "{word}");
    }
}
