use std::path::PathBuf;

use crate::outcome::{CliError, CliResult};

/// Smallest enumeration budget that leaves room for `S_5` images
/// (120 elements, doubled for closure checks).
pub const MIN_ENUM_CAP: usize = 240;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, clap::ValueEnum)]
pub enum OutputFormat {
    #[default]
    Text,
    Json,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunConfig {
    pub max_vertices: usize,
    pub radius: usize,
    pub enum_cap: usize,
    pub format: OutputFormat,
    pub inputs: Vec<PathBuf>,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            max_vertices: 3,
            radius: epicox::reconstruction::DEFAULT_RADIUS,
            enum_cap: epicox::coxeter::DEFAULT_ENUM_CAP,
            format: OutputFormat::Text,
            inputs: Vec::new(),
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> CliResult<()> {
        if self.enum_cap < MIN_ENUM_CAP {
            return Err(CliError::input(format!(
                "enumeration cap {} is below {MIN_ENUM_CAP}; G(L4) alone has 120 elements",
                self.enum_cap
            )));
        }
        Ok(())
    }

    pub fn reconstructor(&self) -> epicox::reconstruction::Reconstructor {
        epicox::reconstruction::Reconstructor::new(self.radius, self.enum_cap)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cap_below_minimum_is_rejected() {
        let config = RunConfig { enum_cap: 100, ..RunConfig::default() };
        let err = config.validate().unwrap_err();
        assert_eq!(err.status, crate::ExitStatus::Input);
        assert!(RunConfig::default().validate().is_ok());
        assert!(RunConfig { enum_cap: 240, ..RunConfig::default() }.validate().is_ok());
    }
}
