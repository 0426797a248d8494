//! Bistellar (Pachner) moves and elementary shellings on pure abstract
//! simplicial complexes, with an exploration layer for random walks,
//! flip-graph enumeration, and bistellar simplification at desk scale.
//!
//! The building blocks:
//!
//! - [`Simplex`] / [`Complex`]: pure complexes stored by facets, with
//!   star/link/face queries, invariants (f-vector, Euler characteristic,
//!   orientability, pseudomanifold and manifold checks), and generators.
//! - [`moves`]: move admissibility, enumeration, application, inverses,
//!   and the factorization through stellar subdivision and weld.
//! - [`shellings`]: elementary shellings on pseudomanifolds with
//!   boundary; every application carries a verified witness that it
//!   induces a Pachner move on the boundary complex.
//! - [`explore`]: seeded random walks, flip graphs up to isomorphism with
//!   connectivity certificates, and a simplification heuristic.
//! - [`io`] / [`trace`]: deterministic file formats and replayable traces.
//!
//! ```
//! use pachner::{generate, moves};
//!
//! let sphere = generate::sphere(2); // ∂Δ³
//! let sites = moves::enumerate_moves(&sphere);
//! assert_eq!(sites.len(), 4); // one facet subdivision per facet
//! let bigger = moves::apply_move(&sphere, &sites[0]).unwrap();
//! assert_eq!(bigger.euler_characteristic(), 2);
//! ```

pub mod complex;
pub mod explore;
pub mod generate;
pub mod io;
pub mod iso;
pub mod moves;
pub mod shellings;
pub mod simplex;
pub mod trace;

pub use complex::{Complex, ComplexError, FVector};
pub use iso::{are_isomorphic, IsoMap};
pub use moves::{MoveError, MoveSite};
pub use shellings::{BoundaryMoveWitness, ShellingError, ShellingSite};
pub use simplex::{Simplex, VertexId};
pub use trace::{Trace, TraceStep};
