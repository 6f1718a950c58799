//! Dipole graphs: the closed-form Pfaffian form and its numeric integral,
//! which is exactly 1 for every dipole.
//!
//! ```bash
//! cargo run --release --example dipole_integral
//! ```

use graphforms::forms::{dipole_phi, dipole_report};
use graphforms::integrate::{integrate_dipole, IntegrationConfig, Scheme};

fn main() {
    for i in [1, 2] {
        println!("dipole with {} edges:", 2 * i + 1);
        println!("  phi = {}", dipole_phi(i));
        let report = dipole_report(i);
        assert!(report.passed(), "{}", report.render_text());
        println!("  closed form agrees with the general routes");

        let config = if i == 1 {
            IntegrationConfig::quadrature()
        } else {
            IntegrationConfig::monte_carlo()
        };
        let est = integrate_dipole(i, &config).unwrap();
        let scheme = match config.scheme {
            Scheme::Quadrature => "quadrature",
            Scheme::MonteCarlo => "monte-carlo",
        };
        println!(
            "  integral ({scheme}) = {:.6} +- {:.2e}  (exact value 1)",
            est.value, est.error
        );
    }
}
