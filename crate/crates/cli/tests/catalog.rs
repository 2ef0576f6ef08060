//! Catalog entries against brute-force scans, and file export.

use std::collections::BTreeSet;

use bolkit::catalog::{self, BuildContext, LOOP_IDS, TWISTED_IDS};
use bolkit::io::{load_cayley, save_cayley};
use bolkit_core::loopcore::check_properties;
use bolkit_core::twisted::is_two_divisible;
use bolkit_core::{FiniteLoop, Limits};

fn bol_scan(l: &FiniteLoop) -> bool {
    let n = l.order();
    (0..n).all(|x| {
        (0..n).all(|y| (0..n).all(|z| l.mul(l.mul(x, l.mul(y, x)), z) == l.mul(x, l.mul(y, l.mul(x, z)))))
    })
}

#[test]
fn ids_are_unique_and_entries_are_loops() {
    let ids: BTreeSet<&str> = LOOP_IDS.iter().copied().collect();
    assert_eq!(ids.len(), LOOP_IDS.len());
    let entries = catalog::loops(&BuildContext::default()).unwrap();
    assert_eq!(entries.len(), LOOP_IDS.len());
    for e in &entries {
        let l = &e.loop_;
        let p = check_properties(l);
        assert!(p.is_loop, "{}", e.id);
        assert_eq!(p.left_bol, bol_scan(l), "{}", e.id);
        assert!((0..l.order()).all(|x| l.mul(0, x) == x && l.mul(x, 0) == x), "{}", e.id);
    }
}

#[test]
fn expected_orders() {
    let ctx = BuildContext::default();
    for (id, n) in
        [("Z1", 1), ("Heis27", 27), ("b15", 15), ("b21", 21), ("bol15", 15), ("bol8-6", 8), ("Z7:Z3", 21)]
    {
        assert_eq!(catalog::entry(id, &ctx).unwrap().loop_.order(), n, "{id}");
    }
}

/// The identity and the three transpositions: every other member is an
/// involution, so none of the 2-divisibility conditions holds.
#[test]
fn transpositions_of_s3() {
    let t = catalog::twisted_fixture("S3/involutions", &Limits::default()).unwrap().twisted;
    let g = t.ambient();
    assert_eq!(t.len(), 4);
    assert!(t.members().iter().filter(|&&x| x != 0).all(|&x| g.element_order(x) == 2));
    let div = is_two_divisible(&t).unwrap();
    assert!(!div.divisible && !div.all_orders_odd && !div.no_involution);
}

#[test]
fn twisted_fixture_sizes() {
    let limits = Limits::default();
    let sizes: Vec<(String, usize, usize)> = catalog::twisted_fixtures(&limits)
        .unwrap()
        .into_iter()
        .map(|f| (f.id, f.twisted.len(), f.twisted.ambient().order()))
        .collect();
    assert_eq!(sizes.len(), TWISTED_IDS.len());
    let find = |id: &str| sizes.iter().find(|s| s.0 == id).map(|s| (s.1, s.2)).unwrap();
    assert_eq!(find("F5^2:Z3/B(swap)"), (15, 75));
    assert_eq!(find("F7^2:Z3/B(swap)"), (21, 147));
    assert_eq!(find("Z7:Z3/whole"), (21, 21));
}

#[test]
fn saved_entries_load_unchanged() {
    let dir = tempfile::tempdir().unwrap();
    let ctx = BuildContext::default();
    for id in ["bol15", "bol8-1", "Q8"] {
        let l = catalog::entry(id, &ctx).unwrap().loop_;
        let path = dir.path().join(format!("{id}.cayley"));
        let path = path.to_str().unwrap();
        save_cayley(&l, path).unwrap();
        assert_eq!(load_cayley(path).unwrap(), l);
        let resolved = catalog::resolve_loop(path, &ctx).unwrap();
        assert_eq!(resolved.loop_, l);
    }
}
