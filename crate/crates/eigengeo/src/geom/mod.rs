//! Discretized immersed submanifolds and their metric-measure views.

pub mod generators;
pub mod io;
pub mod mesh;
pub mod mm;

pub use generators::ShapeSpec;
pub use io::{load_complex, MeshFormat};
pub use mesh::{Cells, ImmersedComplex, Region};
pub use mm::{to_mm_space, MetricKind, MetricMeasureSpace};
