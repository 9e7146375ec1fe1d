//! Network configuration files, the bundled example models and CSV output.

mod builtin;
mod config;
mod table;

pub use builtin::{builtin_model, BUILTIN_MODELS};
pub use config::{
    parse_config, serialize_config, EnergyUnit, ParsedConfig, Sweep, WAVENUMBER_TO_RAD_PER_PS,
};
pub use table::{format_value, write_table, ResultTable};
