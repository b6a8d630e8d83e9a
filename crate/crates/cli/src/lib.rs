//! Analyses behind the `bposit` command: decimals-of-accuracy sweeps,
//! golden-zone and fovea statistics, pattern inspection, differential
//! fuzzing and circuit reports.

pub mod accuracy;
pub mod codec;
pub mod error;
pub mod fuzz;
pub mod inspect;
pub mod report;
pub mod sweep;
pub mod zones;

pub use accuracy::{ceiling, decimal_accuracy, decimal_accuracy_with, decimals_between, AccuracySample};
pub use codec::AnyCodec;
pub use error::{AnalysisError, Result};
pub use fuzz::{fuzz, FuzzCheck, FuzzReport};
pub use inspect::{convert, inspect, table, Conversion, Inspection, TableRow};
pub use sweep::{accuracy_sweep, format_curve, sweep_csv, BinadeStats, Stat, SweepConfig};
pub use zones::{golden_zone_stats, ZoneReport};
