//! Working precision of floating outputs.

use serde::{Deserialize, Serialize};

use crate::error::{HeunError, Result};

/// Mantissa width of the floating path. Only IEEE double (53 bits) is
/// implemented; wider requests are refused rather than silently degraded.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct WorkingPrecision {
    bits: u32,
}

impl Default for WorkingPrecision {
    fn default() -> Self {
        Self { bits: 53 }
    }
}

impl WorkingPrecision {
    pub fn new(bits: u32) -> Result<Self> {
        match bits {
            53 => Ok(Self { bits }),
            _ => Err(HeunError::Precision { bits }),
        }
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    /// Unit roundoff `2^-bits`.
    pub fn unit_roundoff(&self) -> f64 {
        (-(self.bits as f64)).exp2()
    }
}
