//! Exact orbifold quantum cohomology of weighted projective spaces and the
//! matching Frobenius data of the Landau-Ginzburg mirror.
//!
//! ```
//! use orbimirror::wdvv::reconstruct;
//! use orbimirror::{Rational, Weights};
//!
//! let w: Weights = "1,1,1".parse()?;
//! let potential = reconstruct(&w, 8)?;
//! assert_eq!(potential.get(&[0, 0, 8])?, Rational::from_integer(12.into()));
//! # Ok::<(), orbimirror::Error>(())
//! ```

pub mod aside;
pub mod bside;
pub mod error;
pub mod frobenius;
pub mod matrix;
pub mod rational;
pub mod report;
pub mod spectral;
pub mod wdvv;

pub use aside::{CohClass, GwStatus, GwValue, OrbifoldCohomology, ScaledClass};
pub use bside::{GradedProduct, LandauGinzburg, OmegaClass, WeightMonomial};
pub use error::{Error, Result};
pub use frobenius::{CorrespondenceReport, FrobeniusData};
pub use matrix::Matrix;
pub use rational::Rational;
pub use report::{Check, CheckReport};
pub use spectral::{
    build_spectrum, multi_index_sequence, sector, verify_spectral_identities, MultiIndexSequence, Sector,
    SpectrumTable, Weights,
};
pub use wdvv::{EulerField, InitialData, PotentialCoefficients};
