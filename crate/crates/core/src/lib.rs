//! Trend extraction by intrinsic time decomposition (ITD).
//!
//! A series is split into a hierarchy of baselines and rotations
//! ([`itd::decompose`]); a selection criterion ([`criteria`]) picks the
//! baseline that serves as the series' tendency. The Hodrick-Prescott filter
//! ([`hp`]) and DFT moduli ([`spectra`]) are provided for comparison, along
//! with seeded synthetic signals, CSV/SVG I/O and a command-line front end.

pub mod batch;
pub mod cli;
pub mod criteria;
pub mod dataio;
pub mod error;
pub mod hp;
pub mod itd;
pub mod series;
pub mod signals;
pub mod spectra;

pub use criteria::{select_tendency, tendency, Criterion, CriterionTrace, TendencyParams, TendencySplit};
pub use error::{Error, ErrorClass, Result};
pub use hp::{hp_trend, HpResult};
pub use itd::{decompose, reconstruct, BoundaryPolicy, ItdDecomposition};
pub use series::TimeSeries;
