//! File formats, SVG rendering, and the `patrol` command line on top of
//! [`patrol_core`].

pub mod cli;
pub mod error;
pub mod gen;
pub mod instance;
pub mod report;
pub mod svg;

pub use cli::run;
pub use error::CliError;
pub use instance::{GraphFile, Instance, InstanceFile};
pub use report::{round12, SolutionReport, TourReport, TspChoice};
pub use svg::render_svg;
