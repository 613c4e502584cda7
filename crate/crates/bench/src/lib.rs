//! Shared fixtures for the benchmarks.

use qecmem_core::{Alphas, ChannelParams};

/// A representative operating point: moderate noise with some memory.
pub fn operating_point() -> ChannelParams {
    ChannelParams::symmetric(0.04, 0.1).expect("valid parameters")
}

/// The same point under dephasing-biased noise.
pub fn biased_operating_point() -> ChannelParams {
    ChannelParams::new(0.04, 0.1, Alphas::DEPHASING_BIASED).expect("valid parameters")
}
