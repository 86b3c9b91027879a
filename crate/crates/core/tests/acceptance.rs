//! Acceptance run: one PASS/FAIL line per criterion.
//!
//! Criteria listed in `KNOWN_FAILURES` are ones the computation shows cannot
//! hold as stated.  They still print FAIL with the reason; the process exits
//! non-zero only when some other criterion fails, or a known one starts
//! passing (so the list gets revisited).

use std::time::Instant;

use gradedq::diffcalc::{coaction, differential, forms, partials, structure};
use gradedq::hopf;
use gradedq::repcheck;
use gradedq::report::{Report, Status};
use gradedq::rewrite::{standard_ruleset, CalculusConfig, RuleSet};
use gradedq::suites::{coefficient_mutations, first_failing_suite, run_suite, verify_confluence, verify_relations, SUITES};

const KNOWN_FAILURES: [u32; 2] = [2, 8];

struct Outcome {
    pass: bool,
    detail: String,
}

fn points() -> [RuleSet; 2] {
    [CalculusConfig::standard(), CalculusConfig::alternate()].map(|c| standard_ruleset(c).expect("rule set builds"))
}

fn summarize(reps: &[Report]) -> Outcome {
    let mut bad = Vec::new();
    let mut errata = 0;
    for r in reps {
        errata += r.summary.erratum;
        for e in r.failures() {
            bad.push(format!("{} [{}] {}: {}", r.suite, format!("P1={}, P2={}", r.config.p1, r.config.p2), e.id, e.residual));
        }
    }
    let checks: usize = reps.iter().map(|r| r.entries.len()).sum();
    Outcome {
        pass: bad.is_empty(),
        detail: if bad.is_empty() {
            format!("{checks} checks, {errata} errata reported")
        } else {
            format!("{} of {checks} checks fail; first: {}", bad.len(), bad[0])
        },
    }
}

fn c1() -> Outcome {
    let [rs, _] = points();
    summarize(&[verify_relations(&rs)])
}

fn c2() -> Outcome {
    summarize(&points().map(|rs| verify_confluence(&rs)))
}

fn c3() -> Outcome {
    let [rs, _] = points();
    summarize(&[hopf::verify_hopf_axioms(3, &rs), hopf::verify_delta_homomorphism(&rs)])
}

fn c4() -> Outcome {
    let [rs, _] = points();
    summarize(&[differential::verify_d_axioms(4, &rs)])
}

fn c5() -> Outcome {
    let reps: Vec<Report> = points()
        .iter()
        .flat_map(|rs| [coaction::verify_covariance(rs), coaction::verify_coinvariance(rs)])
        .collect();
    summarize(&reps)
}

fn c6() -> Outcome {
    let reps: Vec<Report> = points()
        .iter()
        .flat_map(|rs| [structure::verify_structure_homomorphisms(2, rs), structure::verify_f_and_chi(rs)])
        .collect();
    summarize(&reps)
}

fn c7() -> Outcome {
    let [rs, _] = points();
    summarize(&[forms::verify_form_relations(&rs)])
}

fn c8() -> Outcome {
    let [rs, _] = points();
    let rep = partials::verify_partial_calculus(3, &rs);
    let mut out = summarize(std::slice::from_ref(&rep));
    // The six operator identities must hold as printed; a registered
    // correction is reported but does not satisfy this criterion.
    let printed: Vec<&str> = rep
        .entries
        .iter()
        .filter(|e| e.cite == "partial-exchange" && e.status == Status::Erratum)
        .map(|e| e.id.as_str())
        .collect();
    if !printed.is_empty() {
        out.pass = false;
        out.detail = format!("{}; identities failing as printed: {}", out.detail, printed.join(", "));
    }
    out
}

fn c9() -> Outcome {
    summarize(&points().map(|rs| repcheck::verify_representations(rs.config())))
}

fn c10() -> Outcome {
    let [rs, _] = points();
    let muts = coefficient_mutations(&rs, 24);
    let mut missed = Vec::new();
    let mut structural = 0;
    for m in &muts {
        if first_failing_suite(2, &m.rules).is_none() {
            missed.push(m.description.clone());
        }
        // caught without the suite that compares rules to their own tables
        let other = SUITES[1..]
            .iter()
            .any(|s| run_suite(s, 2, &m.rules).map(|r| !r.passed()).unwrap_or(false));
        if other {
            structural += 1;
        }
    }
    Outcome {
        pass: muts.len() >= 20 && missed.is_empty(),
        detail: format!(
            "{} mutations, {} undetected, {structural} detected by suites other than relations{}",
            muts.len(),
            missed.len(),
            missed.first().map(|d| format!("; first missed: {d}")).unwrap_or_default()
        ),
    }
}

fn main() {
    let criteria: [(u32, &str, fn() -> Outcome); 10] = [
        (1, "relation soundness", c1),
        (2, "local confluence at both parameter points", c2),
        (3, "Hopf axioms", c3),
        (4, "differential axioms", c4),
        (5, "covariance and coinvariance", c5),
        (6, "structure matrices", c6),
        (7, "form relations", c7),
        (8, "partial derivatives", c8),
        (9, "representations", c9),
        (10, "mutation sensitivity", c10),
    ];
    let mut unexpected = Vec::new();
    for (n, name, f) in criteria {
        let t = Instant::now();
        let o = f();
        let tag = if o.pass { "PASS" } else { "FAIL" };
        println!("{tag} {n:>2} {name} ({:.2?}): {}", t.elapsed(), o.detail);
        if o.pass == KNOWN_FAILURES.contains(&n) {
            unexpected.push(n);
        }
    }
    if !unexpected.is_empty() {
        eprintln!("criteria with unexpected outcome: {unexpected:?}");
        std::process::exit(1);
    }
}
