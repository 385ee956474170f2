//! Region-size schedules for the recursive oracle.

use std::fmt;
use std::str::FromStr;

use log::info;

use crate::error::{Error, Result};

/// Default leaf threshold: recursion stops at regions of at most 4 vertices.
pub const DEFAULT_LEAF: usize = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ScheduleMode {
    /// r_1 = n^(1/3 + eps), then r_i / r_(i+1) = r_1^eps.
    Geometric,
    /// r_1 = n^(1/3), then r_i^3 / r_(i+1) = n^(2/3 + eps).
    Aggressive,
}

impl fmt::Display for ScheduleMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ScheduleMode::Geometric => "geometric",
            ScheduleMode::Aggressive => "aggressive",
        })
    }
}

impl FromStr for ScheduleMode {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "geometric" => Ok(ScheduleMode::Geometric),
            "aggressive" => Ok(ScheduleMode::Aggressive),
            other => Err(format!("unknown schedule mode `{other}`")),
        }
    }
}

/// Strictly decreasing region sizes r_1 > ... > r_k; the last level is the
/// leaf threshold.
#[derive(Clone, Debug, PartialEq)]
pub struct ParameterSchedule {
    pub epsilon: f64,
    pub mode: ScheduleMode,
    pub leaf: usize,
    pub levels: Vec<usize>,
}

impl ParameterSchedule {
    /// Number of levels below the root.
    pub fn depth(&self) -> usize {
        self.levels.len()
    }
}

pub fn make_schedule(n: usize, epsilon: f64, mode: ScheduleMode, leaf: usize) -> Result<ParameterSchedule> {
    if !(epsilon > 0.0 && epsilon <= 1.0) {
        return Err(Error::EpsilonOutOfRange(epsilon));
    }
    if leaf < 2 {
        return Err(Error::InvalidLeafThreshold(leaf));
    }
    let nf = n as f64;
    let mut levels = Vec::new();
    if n > leaf {
        let mut r = match mode {
            ScheduleMode::Geometric => {
                let eps = epsilon.min(0.5);
                if eps < epsilon {
                    info!("geometric schedule: epsilon {epsilon} clamped to {eps} so that r_1 < n");
                }
                let r1 = nf.powf(1.0 / 3.0 + eps).ceil() as usize;
                let ratio = (r1 as f64).powf(eps);
                let mut r = r1.min(n);
                while r > leaf {
                    levels.push(r);
                    let next = (r as f64 / ratio).ceil() as usize;
                    r = next.min(r - 1);
                }
                r
            }
            ScheduleMode::Aggressive => {
                let denom = nf.powf(2.0 / 3.0 + epsilon);
                let mut r = (nf.cbrt().ceil() as usize).min(n);
                while r > leaf {
                    levels.push(r);
                    let rf = r as f64;
                    let next = (rf * rf * rf / denom).ceil() as usize;
                    r = next.min(r - 1);
                }
                r
            }
        };
        if r < leaf {
            info!("schedule: last level {r} clamped up to the leaf threshold {leaf}");
            r = leaf;
        }
        levels.push(r);
    }
    Ok(ParameterSchedule {
        epsilon,
        mode,
        leaf,
        levels,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn aggressive_second_level() {
        let n: usize = 1_000_000;
        let eps = 0.1;
        let s = make_schedule(n, eps, ScheduleMode::Aggressive, 4).unwrap();
        let r1 = (n as f64).cbrt().ceil() as usize;
        assert_eq!(s.levels[0], r1);
        let r2 = ((r1 as f64).powi(3) / (n as f64).powf(2.0 / 3.0 + eps)).ceil() as usize;
        assert_eq!(s.levels[1], r2);
        assert_eq!(*s.levels.last().unwrap(), 4);
    }

    #[test]
    fn geometric_clamps_large_epsilon() {
        let s = make_schedule(4096, 1.0, ScheduleMode::Geometric, 4).unwrap();
        assert!(s.levels[0] < 4096);
        assert_eq!(s.levels[0], (4096f64).powf(1.0 / 3.0 + 0.5).ceil() as usize);
        assert_eq!(*s.levels.last().unwrap(), 4);
    }

    #[test]
    fn geometric_depth_grows_as_epsilon_shrinks() {
        let a = make_schedule(100_000, 0.5, ScheduleMode::Geometric, 4).unwrap();
        let b = make_schedule(100_000, 0.05, ScheduleMode::Geometric, 4).unwrap();
        assert!(b.depth() > a.depth());
    }

    #[test]
    fn schedules_strictly_decrease() {
        for n in [100, 300, 1000, 4096, 10_000, 31_623, 100_000] {
            for eps in [0.05, 0.1, 0.25, 0.5, 0.75, 1.0] {
                for mode in [ScheduleMode::Geometric, ScheduleMode::Aggressive] {
                    let s = make_schedule(n, eps, mode, 4).unwrap();
                    assert!(s.levels.windows(2).all(|w| w[0] > w[1]), "{n} {eps} {mode}: {:?}", s.levels);
                    assert!(s.levels[0] <= n);
                    assert_eq!(*s.levels.last().unwrap(), 4);
                }
            }
        }
    }

    #[test]
    fn small_graphs_get_empty_schedule() {
        assert!(make_schedule(4, 0.5, ScheduleMode::Aggressive, 4).unwrap().levels.is_empty());
        assert_eq!(make_schedule(5, 0.5, ScheduleMode::Aggressive, 4).unwrap().levels, vec![4]);
    }

    #[test]
    fn rejects_bad_parameters() {
        for eps in [0.0, -0.5, 1.5, f64::NAN] {
            assert!(matches!(
                make_schedule(100, eps, ScheduleMode::Geometric, 4),
                Err(Error::EpsilonOutOfRange(_))
            ));
        }
        assert!(matches!(
            make_schedule(100, 0.5, ScheduleMode::Geometric, 1),
            Err(Error::InvalidLeafThreshold(1))
        ));
    }
}
