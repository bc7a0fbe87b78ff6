//! Command-line frontend: configuration, sweeps, CSV/SVG output, estimates
//! and oracle validation.

mod app;
mod config;
mod estimate;
mod svg;
mod sweep;
mod validate;

pub use app::{exit_code, run, EXIT_CONFIG, EXIT_OK, EXIT_POLE, EXIT_VALIDATION};
pub use config::{parse_vector, Axis, ConfigMap, ModelKind, Spacing, SweepConfig, KEYS};
pub use estimate::{estimate_beta, estimate_delta_n};
pub use svg::render_svg;
pub use sweep::{run_sweep, SweepResult, SweepRow, CSV_HEADER};
pub use validate::{run_validation, Check, Family, ValidateOptions, ValidationReport};
