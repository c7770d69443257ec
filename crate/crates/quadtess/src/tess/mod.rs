pub mod curves;
pub mod edges;
pub mod model;
pub mod panels;
pub mod raster;
pub mod tiling;
pub use curves::{Linearizer, Skeleton};
pub use model::{EdgeFlags, FundamentalModel, ModelCell, EDGE_TOL};
pub use tiling::{Located, Side, Tessellation};
pub use panels::{convex_diameter, panel_diameter, DepthStat, PanelGeometry, TileSketch};
pub use edges::{sample_addresses, EdgeCheck, EdgeKind, EdgeProbe, EdgeReport};
pub use raster::{PixelClass, Raster, Viewport};
