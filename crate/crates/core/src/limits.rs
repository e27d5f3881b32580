use crate::cycles::DEFAULT_CYCLE_CAP;
use crate::graph::DEFAULT_PATH_CAP;
use crate::ideals::DEFAULT_VERTEX_CAP;

/// Enumeration caps. Exceeding one is an error, never a truncation.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Largest vertex count for exhaustive lattice enumeration.
    pub vertices: usize,
    /// Largest number of paths materialised for one power graph.
    pub paths: usize,
    /// Largest number of simple cycles enumerated.
    pub cycles: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Self {
            vertices: DEFAULT_VERTEX_CAP,
            paths: DEFAULT_PATH_CAP,
            cycles: DEFAULT_CYCLE_CAP,
        }
    }
}
