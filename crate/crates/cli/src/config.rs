use blowup_core::limits::Limits;
use blowup_core::resolve::DEFAULT_MAX_STEPS;
use blowup_core::MonomialOrder;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OutputMode {
    Text,
    Json,
}

/// Everything a run needs besides the problem file. Defaults are the
/// library's: saturation cap 64, 200000 S-pairs, degree 64, 32 steps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunConfig {
    pub order: Option<MonomialOrder>,
    pub saturation_cap: usize,
    pub gb_pair_cap: usize,
    pub gb_degree_cap: u32,
    pub max_steps: usize,
    pub output: OutputMode,
    /// Text output only: one line per blow up.
    pub summary: bool,
    pub verbosity: u8,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            order: None,
            saturation_cap: Limits::DEFAULT.saturation_cap,
            gb_pair_cap: Limits::DEFAULT.gb_pair_cap,
            gb_degree_cap: Limits::DEFAULT.gb_degree_cap,
            max_steps: DEFAULT_MAX_STEPS,
            output: OutputMode::Text,
            summary: false,
            verbosity: 0,
        }
    }
}

impl RunConfig {
    pub fn limits(&self) -> Limits {
        Limits { saturation_cap: self.saturation_cap, gb_pair_cap: self.gb_pair_cap, gb_degree_cap: self.gb_degree_cap }
    }

    pub fn validate(&self) -> Result<(), String> {
        if self.saturation_cap == 0 || self.gb_pair_cap == 0 || self.gb_degree_cap == 0 || self.max_steps == 0 {
            return Err("caps and --max-steps must be positive".into());
        }
        Ok(())
    }
}
