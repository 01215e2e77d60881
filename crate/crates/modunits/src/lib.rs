//! Deciding which elliptic curves over Q are parametrized by modular
//! units supported in rational torsion.
//!
//! For a curve E of conductor N with modular parametrization
//! phi_E : X_1(N) -> E (0-cusp to origin), the library computes the set
//! S_E of rational torsion points whose full preimage under phi_E
//! consists of cusps, by combining:
//!
//! - exact arithmetic on Weierstrass models and rational torsion
//!   ([`elliptic`]),
//! - L-series coefficients and numerical evaluation of the newform f_E
//!   and its antiderivative ([`lseries`]),
//! - cusp combinatorics of X_0(N) and X_1(N) ([`modcurve`]),
//! - numerical period integrals of omega_f = 2 pi i f(z) dz along paths
//!   to cusps, diamond-operator periods, ramification orders and the
//!   ramification-count bookkeeping that decides membership in S_E
//!   ([`paramflow`]),
//! - Cremona-format database ingestion, batch reports and a disk cache
//!   for coefficients ([`dataio`]).
//!
//! The criterion: E is parametrized by modular units supported in
//! rational torsion when #S_E >= 3 and some difference of two points of
//! S_E has order >= 3. The batch driver reproduces the known table of
//! all such curves of small conductor, and `modcurve::finiteness_screen`
//! expresses the degree inequality showing only finitely many curves can
//! qualify at all.

pub mod arith;
pub mod config;
pub mod dataio;
pub mod elliptic;
pub mod error;
pub mod lseries;
pub mod modcurve;
pub mod numeric;
pub mod paramflow;

pub use config::Config;
pub use error::{Error, Result};
