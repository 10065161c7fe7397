use bilap_core::coefficients::ledger::{
    audit, build_ledger, ledger_csv, sigma_vote, Verdict, DISCOVERED, DOCUMENTED,
};
use bilap_core::coefficients::symbol::Sigma;
use bilap_core::rational::qi;
use bilap_core::verify::{run, CheckStatus, Suite, VerifyConfig};

#[test]
fn vote_chooses_the_logarithmic_orientation() {
    let v = sigma_vote();
    assert_eq!(v.chosen, Sigma::Minus);
    assert!(v.minus > v.plus);
    assert_eq!(
        v.anchors.iter().filter(|a| a.1.is_some()).count(),
        v.plus + v.minus
    );
}

#[test]
fn every_documented_inconsistency_is_flagged() {
    let (_, entries) = build_ledger().unwrap();
    let a = audit(&entries);
    assert!(
        a.missing_documented.is_empty(),
        "{:?}",
        a.missing_documented
    );
    assert!(a.all_known(), "{:?}", a.unknown);
    for d in DOCUMENTED {
        assert!(
            entries
                .iter()
                .any(|e| e.symbol == *d && e.verdict != Verdict::Match),
            "{d}"
        );
    }
    // the catalogued findings are all present too
    for d in DISCOVERED {
        assert!(a.undocumented.iter().any(|u| u == d), "{d}");
    }
}

#[test]
fn locations_are_plain_descriptions() {
    let (_, entries) = build_ledger().unwrap();
    for e in &entries {
        assert!(!e.location.is_empty());
        let l = e.location.to_lowercase();
        for bad in [
            "eq.",
            "eqn",
            "section",
            "§",
            "arxiv",
            "spec",
            "paper",
            "[derived]",
        ] {
            assert!(!l.contains(bad), "{}: {}", e.symbol, e.location);
        }
        // no numbered references such as (3.12)
        let b = l.as_bytes();
        let numbered = b.windows(4).any(|w| {
            w[0] == b'(' && w[1].is_ascii_digit() && w[2] == b'.' && w[3].is_ascii_digit()
        });
        assert!(!numbered, "{}: {}", e.symbol, e.location);
    }
}

#[test]
fn ledger_csv_round_trips() {
    let (_, entries) = build_ledger().unwrap();
    let text = ledger_csv(&entries);
    let mut r = csv::Reader::from_reader(text.as_bytes());
    assert_eq!(
        r.headers().unwrap().iter().collect::<Vec<_>>(),
        ["symbol", "location", "printed", "oracle", "verdict", "note"]
    );
    let rows: Vec<csv::StringRecord> = r.records().map(|x| x.unwrap()).collect();
    assert_eq!(rows.len(), entries.len());
    for (row, e) in rows.iter().zip(&entries) {
        assert_eq!(&row[0], e.symbol);
        assert_eq!(&row[4], e.verdict.label());
    }
}

#[test]
fn pinned_pohozaev_suite_passes() {
    let cfg = VerifyConfig {
        n: Some(5),
        s: Some(qi(7)),
        ..VerifyConfig::default()
    };
    let report = run(&[Suite::Pohozaev], &cfg).unwrap();
    assert!(report.ok(), "{:?}", report.failures());
    assert!(report.checks.iter().any(|c| c.status == CheckStatus::Pass));
    assert!(report.checks.iter().all(|c| c.suite == Suite::Pohozaev));
}

#[test]
fn suite_names_parse() {
    for s in Suite::ALL {
        assert_eq!(Suite::parse(s.name()), Some(s));
    }
    assert_eq!(Suite::parse("delaunay"), Some(Suite::Shooting));
    assert_eq!(Suite::parse("nonsense"), None);
}
