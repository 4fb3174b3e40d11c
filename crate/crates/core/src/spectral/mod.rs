//! Nonnegative-matrix spectral machinery: Perron roots and vectors, the
//! spectral norm, the clique/rest moment series and the extremal cubic.

mod cubic;
mod matrix;
mod norm;
mod perron;
mod series;

pub use cubic::{dsharp_cubic_root, DsharpCubic};
pub use matrix::Matrix;
pub use norm::spectral_norm;
pub use perron::{perron_irreducible, spectral_radius, SpectralOptions, SpectralResult};
pub use series::{clique_series_root, SeriesEquation, SeriesSolution, SeriesValue};
