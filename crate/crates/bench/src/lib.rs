//! Shared fixtures for the criterion benches.

use kloostlab::{AngleWindow, SampleSet, Window};

/// `X = Y = ceil(m^0.6)`, `Z = 0`, the configuration used for the variance
/// envelope runs.
pub fn envelope_config(m: u64) -> (SampleSet, Window) {
    let side = (m as f64).powf(0.6).ceil() as u64;
    (
        SampleSet::full(side).expect("positive bound"),
        Window::new(0, side.min(m), m).expect("valid window"),
    )
}

pub fn central_window() -> AngleWindow {
    AngleWindow::new(
        std::f64::consts::FRAC_PI_4,
        3.0 * std::f64::consts::FRAC_PI_4,
    )
    .expect("valid window")
}
