//! Complex special functions: log-gamma, Riemann zeta (Euler–Maclaurin),
//! upper incomplete gamma, ₁F₂, and the Meijer G^{1,1}_{3,1} shape.

pub mod gamma;
pub mod hyp1f2;
pub mod incgamma;
pub mod meijer;
pub mod zeta;

pub use gamma::{gamma_ratio_recip, log_gamma, log_gamma_unchecked, recip_gamma};
pub use hyp1f2::{hyp_1f2, Precision, SeriesValue};
pub use incgamma::{upper_incomplete_gamma, upper_incomplete_gamma_cx};
pub use meijer::{meijer_contour, meijer_g_1f2, MeijerParams, OscExpansion, QuadratureConfig};
pub use zeta::{zeta, zeta_real, zeta_tail};
