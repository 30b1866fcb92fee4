//! Acceptance suite: one PASS/FAIL line per criterion.

use fqt_forms::verify::{run_criterion, Suite, CRITERIA, KNOWN_GAPS};

fn main() {
    let mut unexpected = Vec::new();
    for &(id, _) in CRITERIA.iter() {
        let r = run_criterion(id, Suite::All, 1);
        let known = KNOWN_GAPS.contains(&id);
        let note = match (r.pass, known) {
            (false, true) => "  [known gap, see decision ledger]",
            (true, true) => "  [listed as a known gap but passed]",
            _ => "",
        };
        println!("{}{note}", r.line());
        // a known gap still has to fail only in the documented way
        let as_documented = id != 6 || (r.detail.contains("exact ψ identity holds") && r.detail.contains("tails from k≥δ+2 hold"));
        if !r.pass && (!known || !as_documented) {
            unexpected.push(id);
        }
    }
    if !unexpected.is_empty() {
        eprintln!("unexpected failures: {unexpected:?}");
        std::process::exit(1);
    }
}
