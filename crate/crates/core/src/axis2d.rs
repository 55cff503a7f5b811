//! Proper colorings for axis-parallel segments (4 colors) and axis-parallel
//! rays (as many colors as there are ray orientations, 2 at minimum).

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::geom::{Axis, Color, Coloring, Instance, Interval, Orientation, Ray, Segment};
use crate::intervals::color_interval_family;
use crate::rational::Rational;

/// Segments sharing an axis and supporting line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LineGroup {
    pub axis: Axis,
    pub line: Rational,
    pub members: Vec<usize>,
}

/// Partitions segments by `(axis, line)`; horizontal groups first, lines ascending.
pub fn line_groups(segments: &[Segment]) -> Vec<LineGroup> {
    let mut groups: BTreeMap<(Axis, &Rational), Vec<usize>> = BTreeMap::new();
    for (i, s) in segments.iter().enumerate() {
        groups.entry((s.axis, &s.line)).or_default().push(i);
    }
    groups
        .into_iter()
        .map(|((axis, line), members)| LineGroup {
            axis,
            line: line.clone(),
            members,
        })
        .collect()
}

/// Colors each line group as an interval family; horizontal groups use
/// {1, 2} and vertical groups {3, 4}.
pub fn color_segment_family(segments: &[Segment]) -> Result<Vec<Color>> {
    let mut colors = vec![0; segments.len()];
    for group in line_groups(segments) {
        let along: Vec<Interval> = group
            .members
            .iter()
            .map(|&i| Interval {
                a: segments[i].lo.clone(),
                b: segments[i].hi.clone(),
            })
            .collect();
        let offset = match group.axis {
            Axis::Horizontal => 0,
            Axis::Vertical => 2,
        };
        for (&i, c) in group.members.iter().zip(color_interval_family(&along)?) {
            colors[i] = c + offset;
        }
    }
    Ok(colors)
}

pub fn color_segments(instance: &Instance) -> Result<Coloring> {
    let segments = instance.segments()?;
    Coloring::new(color_segment_family(&segments)?, 4)
}

/// Which ray orientations occur in an input.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RayTypeProfile {
    pub orientations: BTreeSet<Orientation>,
}

impl RayTypeProfile {
    pub fn of(rays: &[Ray]) -> Self {
        RayTypeProfile {
            orientations: rays.iter().map(|r| r.orientation).collect(),
        }
    }

    /// Number of distinct orientations.
    pub fn kind(&self) -> usize {
        self.orientations.len()
    }
}

/// For every `(orientation, line)` the ray with the extremal apex, which
/// contains every other ray on that line with that orientation. Duplicate
/// apexes resolve to the lowest index.
pub fn dominating_rays(rays: &[Ray]) -> BTreeSet<usize> {
    let mut best: BTreeMap<(Orientation, &Rational), usize> = BTreeMap::new();
    for (i, r) in rays.iter().enumerate() {
        best.entry((r.orientation, r.line()))
            .and_modify(|cur| {
                let c = &rays[*cur];
                let better = match r.orientation {
                    Orientation::Right | Orientation::Up => r.start() < c.start(),
                    Orientation::Left | Orientation::Down => r.start() > c.start(),
                };
                if better {
                    *cur = i;
                }
            })
            .or_insert(i);
    }
    best.into_values().collect()
}

/// Rays cut to segments at the boundary of a box exceeding every apex by one unit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClippedRays {
    pub segments: Vec<Segment>,
    /// `[x_min, x_max, y_min, y_max]` of the clipping box.
    pub bounds: [Rational; 4],
    /// `segment_of[ray] = segment index`.
    pub segment_of: Vec<usize>,
}

pub fn clip_rays_to_box(rays: &[Ray]) -> Result<ClippedRays> {
    if rays.is_empty() {
        return Err(Error::EmptyInput("ray list"));
    }
    let one = Rational::one();
    let x_min = rays.iter().map(|r| &r.x).min().unwrap() - &one;
    let x_max = rays.iter().map(|r| &r.x).max().unwrap() + &one;
    let y_min = rays.iter().map(|r| &r.y).min().unwrap() - &one;
    let y_max = rays.iter().map(|r| &r.y).max().unwrap() + &one;
    let segments = rays
        .iter()
        .map(|r| {
            let (x, y) = (r.x.clone(), r.y.clone());
            match r.orientation {
                Orientation::Right => Segment::horizontal(y, x, x_max.clone()),
                Orientation::Left => Segment::horizontal(y, x_min.clone(), x),
                Orientation::Up => Segment::vertical(x, y, y_max.clone()),
                Orientation::Down => Segment::vertical(x, y_min.clone(), y),
            }
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ClippedRays {
        segment_of: (0..rays.len()).collect(),
        segments,
        bounds: [x_min, x_max, y_min, y_max],
    })
}

/// Two orientation classes: dominators of the first get 1 and the rest 2,
/// dominators of the second get 2 and the rest 1.
fn color_two_classes(
    rays: &[Ray],
    dominating: &BTreeSet<usize>,
    first: Orientation,
    second: Orientation,
    colors: &mut [Color],
) {
    for (i, r) in rays.iter().enumerate() {
        let dom = dominating.contains(&i);
        if r.orientation == first {
            colors[i] = if dom { 1 } else { 2 };
        } else if r.orientation == second {
            colors[i] = if dom { 2 } else { 1 };
        }
    }
}

/// Proper coloring of a ray family with `max(2, type)` colors.
pub fn color_ray_family(rays: &[Ray]) -> Result<Coloring> {
    if rays.is_empty() {
        return Err(Error::EmptyInput("ray list"));
    }
    let profile = RayTypeProfile::of(rays);
    let present: Vec<Orientation> = profile.orientations.iter().copied().collect();
    let dominating = dominating_rays(rays);
    let mut colors = vec![0; rays.len()];
    match profile.kind() {
        1 => {
            for (i, c) in colors.iter_mut().enumerate() {
                *c = if dominating.contains(&i) { 1 } else { 2 };
            }
            Coloring::new(colors, 2)
        }
        2 => {
            color_two_classes(rays, &dominating, present[0], present[1], &mut colors);
            Coloring::new(colors, 2)
        }
        3 => {
            // The pair sharing an axis plays the two-class role; a vertical pair
            // is the 90 degree rotation of the horizontal case.
            let has = |o| profile.orientations.contains(&o);
            let (first, second) = if has(Orientation::Right) && has(Orientation::Left) {
                (Orientation::Right, Orientation::Left)
            } else {
                (Orientation::Up, Orientation::Down)
            };
            color_two_classes(rays, &dominating, first, second, &mut colors);
            for (i, r) in rays.iter().enumerate() {
                if r.orientation != first && r.orientation != second {
                    colors[i] = if dominating.contains(&i) { 3 } else { 1 };
                }
            }
            Coloring::new(colors, 3)
        }
        _ => {
            let clipped = clip_rays_to_box(rays)?;
            let seg_colors = color_segment_family(&clipped.segments)?;
            let colors = clipped.segment_of.iter().map(|&s| seg_colors[s]).collect();
            Coloring::new(colors, 4)
        }
    }
}

pub fn color_rays(instance: &Instance) -> Result<Coloring> {
    color_ray_family(&instance.rays()?)
}
