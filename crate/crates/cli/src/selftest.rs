use kitelink::construct::{find_kite, FindOptions, Stage};
use kitelink::fans::{terminal_fan, vertex_connectivity};
use kitelink::graph::{verify_kite, verify_kite_raw, Graph, RootQuadruple};
use kitelink::harness::gen_complete_minus_matching;
use kitelink::linkage::two_linkage;
use kitelink::oracle::{is_kite_linked, SearchBudget};

fn roots(a: [usize; 4]) -> RootQuadruple {
    RootQuadruple::try_from(a).expect("distinct roots")
}

fn kites_everywhere(g: &Graph) -> bool {
    let opts = FindOptions { shortcut: false, ..FindOptions::default() };
    [[0, 1, 2, 3], [3, 2, 1, 0], [1, 0, 4, 7], [6, 7, 5, 2]].into_iter().all(|a| {
        let r = roots(a);
        matches!(find_kite(g, &r, &opts), Ok(out) if out.stage != Stage::Fallback && verify_kite(g, &r, &out.kite).is_ok())
    })
}

type Check<'a> = (&'static str, Box<dyn Fn() -> bool + 'a>);

/// Runs every check, reports each through `log`, and returns how many failed.
pub fn run(log: impl Fn(String)) -> usize {
    let k8 = Graph::complete(8);
    let k9m = gen_complete_minus_matching(9, 4).expect("valid parameters");
    let checks: Vec<Check> = vec![
        ("connectivity of K8 is 7", Box::new(|| vertex_connectivity(&k8).map(|c| c.k) == Ok(7))),
        ("connectivity of K9 minus a 4-matching is 7", Box::new(|| vertex_connectivity(&k9m).map(|c| c.k) == Ok(7))),
        ("terminal fan in K8", Box::new(|| {
            let r = roots([0, 1, 2, 3]);
            terminal_fan(&k8, &r).is_some_and(|tf| tf.validate(&k8, &r).is_ok())
        })),
        ("crossing terminals on C4 cannot be linked", Box::new(|| two_linkage(&Graph::cycle(4), 0, 2, 1, 3) == Ok(None))),
        ("constructed kites in K8", Box::new(|| kites_everywhere(&k8))),
        ("constructed kites in K9 minus a 4-matching", Box::new(|| kites_everywhere(&k9m))),
        ("C5 is not kite-linked", Box::new(|| {
            is_kite_linked(&Graph::cycle(5), SearchBudget::default()).is_ok_and(|v| !v.linked)
        })),
        ("verifier rejects a pendant through the cycle", Box::new(|| {
            verify_kite_raw(&k8, &roots([0, 1, 2, 3]), &[0, 1, 2], &[1, 2, 3]).is_err()
        })),
    ];
    let mut failed = 0;
    for (name, check) in checks {
        let ok = check();
        failed += usize::from(!ok);
        log(format!("{} {name}", if ok { "ok  " } else { "FAIL" }));
    }
    failed
}
