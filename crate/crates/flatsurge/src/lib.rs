//! Flat-geometry toolkit for translation surfaces.
//!
//! The crate builds triangulated translation surfaces, enumerates and
//! classifies their saddle connections, performs the zero-opening, moving,
//! pinching surgeries and their inverses, samples strata under the natural
//! period-coordinate measure, and runs length-statistics experiments that
//! compare closed saddle-connection counts with Poisson laws.
//!
//! Start with [`fixtures`] for concrete surfaces, [`geodesy`] for
//! enumeration and counting, [`surgery`] for the collapse pipeline and
//! [`experiment`] for the batch harness. Each major capability has a
//! runnable example under `examples/`.

pub mod chart;
pub mod error;
pub mod experiment;
pub mod fixtures;
pub mod geodesy;
pub mod geom;
pub mod io;
pub mod isometry;
pub mod mesh;
pub mod sampler;
pub mod stats;
pub mod surface;
pub mod surgery;
pub mod svg;

pub use error::{ChartError, EnumerateError, SampleError, StatsError, SurfaceError, SurgeryError};
pub use geom::Vec2;
pub use surface::{ConePoint, Stratum, TranslationSurface};
