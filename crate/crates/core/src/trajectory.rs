//! Polar embedding of an information series.
//!
//! Each state `Q(t)` maps to a radius `r = norm(Q)` and a declination
//! `theta`, the angle between `Q` and the all-ones vector. A zero state maps
//! to `(0, 0)`.

use std::io::Write;

use serde::Serialize;

use crate::commsim::{InfoSeries, InfoState};

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct TrajectoryPoint {
    pub t: usize,
    pub r: f64,
    pub theta: f64,
}

/// `(r, theta)` for one state.
pub fn polar_point(state: &InfoState) -> (f64, f64) {
    let sq: u128 = state.q.iter().map(|&x| (x as u128) * (x as u128)).sum();
    if sq == 0 {
        return (0.0, 0.0);
    }
    let sum: u128 = state.q.iter().map(|&x| x as u128).sum();
    let n = state.len() as f64;
    // cos = sum / (sqrt(n) * r) = sum / sqrt(n * r^2); the single sqrt keeps
    // states proportional to all-ones at exactly theta = 0.
    let cos = sum as f64 / (n * sq as f64).sqrt();
    ((sq as f64).sqrt(), cos.clamp(-1.0, 1.0).acos())
}

pub fn trajectory(series: &InfoSeries) -> Vec<TrajectoryPoint> {
    series
        .states
        .iter()
        .enumerate()
        .map(|(t, s)| {
            let (r, theta) = polar_point(s);
            TrajectoryPoint { t, r, theta }
        })
        .collect()
}

/// CSV with header `t,r,theta`; values printed with 17 significant digits
/// so the file round-trips exactly.
pub fn write_csv<W: Write>(mut w: W, points: &[TrajectoryPoint]) -> std::io::Result<()> {
    writeln!(w, "t,r,theta")?;
    for p in points {
        writeln!(w, "{},{:?},{:?}", p.t, p.r, p.theta)?;
    }
    Ok(())
}
