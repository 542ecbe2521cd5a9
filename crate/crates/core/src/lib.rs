//! Flat folding of one-dimensional mountain-valley crease patterns.
//!
//! * [`pattern`]: crease patterns, assignments, the file format, generators.
//! * [`fold`]: crimps, end folds, the linear-time foldability decision and
//!   folded geometry.
//! * [`forest`]: the crimp forest built by the left-to-right scan.
//! * [`forcing`]: minimum forcing sets and assignment reconstruction.
//! * [`oracle`]: exhaustive search used to check all of the above.
//!
//! Coordinates are exact signed integers. Everything is generic over the
//! [`Coord`] type and defaults to `i64`; the aliases below name the other
//! widths.
//!
//! ```
//! use fold1d::{forcing_set, is_flat_foldable, MvPattern};
//!
//! let p = MvPattern::from_parts(vec![0, 3, 4, 7], "MV").unwrap();
//! assert!(is_flat_foldable(&p).is_foldable());
//! assert_eq!(forcing_set(&p).unwrap().creases, vec![1]);
//! ```

pub mod fold;
pub mod forcing;
pub mod forest;
pub mod oracle;
pub mod pattern;
pub mod scalar;

pub use fold::{check_layering, folded_state, is_flat_foldable, FoldDecision, FoldError, FoldOp, FoldedState};
pub use forcing::{forcing_set, reconstruct_mv, verify_forcing, ForcingSet};
pub use forest::{build_crimp_forest, export_forest, forest_isomorphic, CrimpForest, ExportFormat};
pub use oracle::{dfs_foldable, is_forcing, minimum_forcing_size, OracleBudget};
pub use pattern::{
    parse_pattern, CreaseId, CreasePattern, Mv, MvAssignment, MvPattern, PartialMvAssignment, PartialMvPattern,
};
pub use scalar::Coord;

/// 32-bit coordinates.
pub type CreasePattern32 = CreasePattern<i32>;
pub type MvPattern32 = MvPattern<i32>;
/// 128-bit coordinates, for lengths beyond 64 bits.
pub type CreasePattern128 = CreasePattern<i128>;
pub type MvPattern128 = MvPattern<i128>;
