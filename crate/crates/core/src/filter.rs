use num_complex::Complex64;

use crate::error::Result;

/// Online filter consuming one `(regressor, desired)` pair per call.
pub trait AdaptiveFilter {
    /// Output for `z` under the current state. Does not mutate.
    fn predict(&self, z: &[Complex64]) -> Result<Complex64>;

    /// Runs one adaptation step and returns the a-priori error `d - predict(z)`.
    fn update(&mut self, z: &[Complex64], d: Complex64) -> Result<Complex64>;

    /// Number of stored centers for dictionary-based filters.
    fn dictionary_len(&self) -> Option<usize> {
        None
    }
}
