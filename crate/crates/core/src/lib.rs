//! Time-resolved two-photon interference of filtered Gaussian pulses.
//!
//! Two single-photon pulses enter the ports `a` and `b` of a beam splitter.
//! The outputs `c` and `d` each pass a frequency filter, modelled as a
//! Gaussian convolution in time, before reaching a detector. The crate
//! computes the coincidence density at detection times `(tau_c, tau_d)` and
//! its integrals over both times, over one time, or over a detection window,
//! in closed form ([`coincidence`]) and by direct quadrature ([`oracle`]).
//!
//! [`scenario`] sweeps these quantities over parameter grids and backs the
//! `homsim` command-line tool.

pub mod coincidence;
pub mod error;
pub mod fock;
pub mod oracle;
pub mod pulse;
pub mod quadrature;
pub mod scenario;
pub mod special;

pub use coincidence::{
    hom_probability, joint_probability, marginal_probability, no_interference_marginal,
    no_interference_probability, windowed_probability, CoincidenceQuery, DetectionWindow,
};
pub use error::{Error, Result};
pub use fock::{coincidence_amplitude_11, expand_output, FockInput, OutputTerm};
pub use pulse::{
    convolve_filter_pulse, envelope_eval, validate_splitter, BeamSplitter, Detector, ExperimentGeometry,
    GaussianEnvelope, Source,
};
pub use quadrature::{integrate_1d, QuadratureResult, QuadratureSpec};
pub use special::erf;
