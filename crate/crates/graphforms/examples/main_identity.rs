//! The central identity `alpha = det[C|P] / 2^l * phi`, verified exactly on
//! the bundled corpus and a seeded random sample.
//!
//! ```bash
//! cargo run --example main_identity
//! ```

use graphforms::corpus;
use graphforms::forms::verify_main_identity;
use graphforms::suite::{random_graphs, SuiteOptions};

fn main() {
    for (name, g) in corpus::bundled() {
        let report = verify_main_identity(&g, &g.default_basis());
        println!("{name}: {}", if report.passed() { "pass" } else { "FAIL" });
        for check in &report.checks {
            if !check.detail.is_empty() {
                println!("    {}: {}", check.name, check.detail);
            }
        }
        assert!(report.passed());
    }

    let opts = SuiteOptions {
        seed: 0,
        count: 9,
        max_edges: 9,
    };
    for (k, g) in random_graphs(&opts).iter().enumerate() {
        let report = verify_main_identity(g, &g.default_basis());
        println!(
            "random {k} (loops {}, edges {}): {}",
            g.loop_number(),
            g.num_edges(),
            if report.passed() { "pass" } else { "FAIL" }
        );
        assert!(report.passed());
    }
}
