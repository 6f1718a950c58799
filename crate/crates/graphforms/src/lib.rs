//! Exact computer algebra for graph matrices, Symanzik and Dodgson
//! polynomials, and the Pfaffian and topological differential forms of a
//! connected multigraph.
//!
//! Everything is computed over exact rationals; every headline quantity has
//! at least two independent computation routes that the verification suites
//! compare term by term. Start with the runnable examples:
//!
//! ```bash
//! cargo run --example symanzik_routes
//! cargo run --example main_identity
//! ```
//!
//! The `graphforms` binary exposes the same functionality as subcommands
//! (`symanzik`, `dodgson`, `laplacians`, `alpha`, `phi`, `verify`, `dipole`,
//! `subdivide`).

// index-based loops and `% 2` parity tests read better in this codebase
#![allow(clippy::needless_range_loop, clippy::manual_is_multiple_of)]

pub mod corpus;
pub mod exterior;
pub mod form;
pub mod forms;
pub mod graph;
pub mod identities;
pub mod integrate;
pub mod matrix;
pub mod oracle;
pub mod poly;
pub mod polynomials;
pub mod report;
pub mod ring;
pub mod suite;

pub use form::FormExpression;
pub use graph::{CycleBasis, EdgeSet, Graph};
pub use matrix::Matrix;
pub use poly::MultiPoly;

#[cfg(test)]
mod concurrency {
    // all values are immutable after construction; reports and caches may be
    // shared across threads freely
    fn assert_send_sync<T: Send + Sync>() {}

    #[test]
    fn core_types_are_send_and_sync() {
        assert_send_sync::<crate::Graph>();
        assert_send_sync::<crate::CycleBasis>();
        assert_send_sync::<crate::MultiPoly>();
        assert_send_sync::<crate::FormExpression>();
        assert_send_sync::<crate::Matrix<num_bigint::BigInt>>();
        assert_send_sync::<crate::polynomials::DodgsonCache>();
        assert_send_sync::<crate::report::FormReport>();
    }
}
