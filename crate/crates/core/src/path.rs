//! Paths in the punctured plane: line segments and circular arcs with a
//! declared clearance from the punctures.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::Float;

use crate::error::{Error, Result};
use crate::{c64, C64};

/// One path piece, parametrized over t ∈ [0,1].
#[derive(Debug, Clone, Copy)]
pub enum Segment {
    Line { start: C64, end: C64 },
    /// Angles in radians; traversal from theta_start to theta_end
    /// (counterclockwise when theta_end > theta_start).
    Arc { center: C64, radius: f64, theta_start: f64, theta_end: f64 },
}

impl Segment {
    pub fn start(&self) -> C64 {
        self.point(0.0)
    }

    pub fn end(&self) -> C64 {
        self.point(1.0)
    }

    pub fn point(&self, t: f64) -> C64 {
        match *self {
            Segment::Line { start, end } => start + (end - start) * c64(t, 0.0),
            Segment::Arc { center, radius, theta_start, theta_end } => {
                let th = theta_start + t * (theta_end - theta_start);
                center + c64(radius * th.cos(), radius * th.sin())
            }
        }
    }

    /// dz/dt at parameter t.
    pub fn velocity(&self, t: f64) -> C64 {
        match *self {
            Segment::Line { start, end } => end - start,
            Segment::Arc { center: _, radius, theta_start, theta_end } => {
                let dth = theta_end - theta_start;
                let th = theta_start + t * dth;
                c64(-radius * th.sin() * dth, radius * th.cos() * dth)
            }
        }
    }

    pub fn length(&self) -> f64 {
        match *self {
            Segment::Line { start, end } => (end - start).norm(),
            Segment::Arc { radius, theta_start, theta_end, .. } => {
                radius * (theta_end - theta_start).abs()
            }
        }
    }

    /// Distance from the segment to a point (exact for lines, sampled on arcs).
    pub fn distance_to(&self, q: C64) -> f64 {
        match *self {
            Segment::Line { start, end } => {
                let d = end - start;
                let len2 = d.norm_sqr();
                if len2 == 0.0 {
                    return (q - start).norm();
                }
                let t = ((q - start) * d.conj()).re / len2;
                let t = t.clamp(0.0, 1.0);
                (q - (start + d * c64(t, 0.0))).norm()
            }
            Segment::Arc { .. } => {
                let mut best = f64::INFINITY;
                for k in 0..=64 {
                    let t = k as f64 / 64.0;
                    best = best.min((self.point(t) - q).norm());
                }
                best
            }
        }
    }
}

/// Connected chain of segments with a minimum clearance from punctures.
#[derive(Debug, Clone)]
pub struct PathSpec {
    segments: Vec<Segment>,
    min_clearance: f64,
}

impl PathSpec {
    pub fn new(segments: Vec<Segment>, min_clearance: f64) -> Result<Self> {
        if segments.is_empty() {
            return Err(Error::Invalid(alloc::string::String::from("empty path")));
        }
        for w in segments.windows(2) {
            let gap = (w[0].end() - w[1].start()).norm();
            let scale = 1.0 + w[0].end().norm();
            if gap > 1e-9 * scale {
                return Err(Error::DisconnectedPath);
            }
        }
        Ok(PathSpec { segments, min_clearance })
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }

    pub fn min_clearance(&self) -> f64 {
        self.min_clearance
    }

    pub fn start(&self) -> C64 {
        self.segments[0].start()
    }

    pub fn end(&self) -> C64 {
        self.segments[self.segments.len() - 1].end()
    }

    pub fn total_length(&self) -> f64 {
        self.segments.iter().map(|s| s.length()).sum()
    }

    pub fn closure_gap(&self) -> f64 {
        (self.end() - self.start()).norm()
    }

    pub fn is_closed(&self) -> bool {
        self.closure_gap() <= 1e-9 * (1.0 + self.start().norm())
    }

    /// Errors when any puncture comes closer than the declared clearance.
    pub fn validate_clearance(&self, punctures: &[C64]) -> Result<()> {
        for &p in punctures {
            for seg in &self.segments {
                let d = seg.distance_to(p);
                if d < self.min_clearance {
                    return Err(Error::ClearanceViolation {
                        distance: d,
                        clearance: self.min_clearance,
                    });
                }
            }
        }
        Ok(())
    }

    /// Single straight segment.
    pub fn line(from: C64, to: C64, min_clearance: f64) -> Result<Self> {
        PathSpec::new(vec![Segment::Line { start: from, end: to }], min_clearance)
    }

    /// Full circle split into four arcs, starting at `base_angle`,
    /// counterclockwise when `ccw`.
    pub fn circle(
        center: C64,
        radius: f64,
        base_angle: f64,
        ccw: bool,
        clearance: f64,
    ) -> Result<Self> {
        let sweep =
            if ccw { core::f64::consts::FRAC_PI_2 } else { -core::f64::consts::FRAC_PI_2 };
        let segments = (0..4)
            .map(|k| Segment::Arc {
                center,
                radius,
                theta_start: base_angle + k as f64 * sweep,
                theta_end: base_angle + (k + 1) as f64 * sweep,
            })
            .collect();
        PathSpec::new(segments, clearance)
    }

    /// Loop based at `base`: straight spur to the nearest circle point,
    /// counterclockwise circle (four arcs), spur back.
    pub fn loop_around(center: C64, radius: f64, base: C64, clearance: f64) -> Result<Self> {
        let dir = base - center;
        if dir.norm() <= radius {
            return Err(Error::Invalid(alloc::string::String::from(
                "base point must lie outside the loop circle",
            )));
        }
        let base_angle = dir.im.atan2(dir.re);
        let entry = center + dir * c64(radius / dir.norm(), 0.0);
        let mut segments = vec![Segment::Line { start: base, end: entry }];
        let circle = PathSpec::circle(center, radius, base_angle, true, clearance)?;
        segments.extend_from_slice(circle.segments());
        segments.push(Segment::Line { start: entry, end: base });
        PathSpec::new(segments, clearance)
    }

    /// Concatenates paths sharing endpoints.
    pub fn concat(paths: &[&PathSpec]) -> Result<Self> {
        let mut segments = Vec::new();
        let mut clearance = f64::INFINITY;
        for p in paths {
            segments.extend_from_slice(&p.segments);
            clearance = clearance.min(p.min_clearance);
        }
        PathSpec::new(segments, clearance)
    }

    /// Polyline through the listed points.
    pub fn polyline(points: &[C64], clearance: f64) -> Result<Self> {
        if points.len() < 2 {
            return Err(Error::Invalid(alloc::string::String::from(
                "polyline needs two points",
            )));
        }
        let segments =
            points.windows(2).map(|w| Segment::Line { start: w[0], end: w[1] }).collect();
        PathSpec::new(segments, clearance)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn circle_is_closed_and_clears_center() {
        let c = PathSpec::circle(c64(0.0, 0.0), 1.0, 0.0, true, 0.5).unwrap();
        assert!(c.is_closed());
        assert!((c.total_length() - 2.0 * core::f64::consts::PI).abs() < 1e-12);
        c.validate_clearance(&[c64(0.0, 0.0)]).unwrap();
        assert!(matches!(
            c.validate_clearance(&[c64(0.9, 0.0)]),
            Err(Error::ClearanceViolation { .. })
        ));
    }

    #[test]
    fn disconnected_segments_rejected() {
        let segs = vec![
            Segment::Line { start: c64(0.0, 0.0), end: c64(1.0, 0.0) },
            Segment::Line { start: c64(2.0, 0.0), end: c64(3.0, 0.0) },
        ];
        assert!(matches!(PathSpec::new(segs, 0.1), Err(Error::DisconnectedPath)));
    }

    #[test]
    fn loop_around_starts_and_ends_at_base() {
        let l = PathSpec::loop_around(c64(0.0, 0.0), 0.4, c64(0.5, 0.0), 0.1).unwrap();
        assert!(l.is_closed());
        assert!((l.start() - c64(0.5, 0.0)).norm() < 1e-12);
        l.validate_clearance(&[c64(0.0, 0.0)]).unwrap();
    }

    #[test]
    fn line_distance_is_exact() {
        let seg = Segment::Line { start: c64(0.0, 0.0), end: c64(2.0, 0.0) };
        assert!((seg.distance_to(c64(1.0, 1.5)) - 1.5).abs() < 1e-14);
        assert!((seg.distance_to(c64(-1.0, 0.0)) - 1.0).abs() < 1e-14);
    }
}
