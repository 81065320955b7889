use serde::{Deserialize, Serialize};

/// Keyboard/mouse zone and monitor placement for a computer workstation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WorkstationGuidelines {
    /// Depth of the normal reach zone on the table (mm).
    pub keyboard_zone_depth: f64,
    /// Length of the normal reach zone on the table (mm).
    pub keyboard_zone_length: f64,
    /// Eye-to-screen distance (mm).
    pub monitor_distance: [f64; 2],
    /// Viewing angle below horizontal (degrees).
    pub viewing_angle: [f64; 2],
}

pub const GUIDELINES: WorkstationGuidelines = WorkstationGuidelines {
    keyboard_zone_depth: 394.0,
    keyboard_zone_length: 1194.0,
    monitor_distance: [500.0, 1000.0],
    viewing_angle: [15.0, 20.0],
};

pub fn workstation_guidelines() -> WorkstationGuidelines {
    GUIDELINES
}
