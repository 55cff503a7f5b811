//! Proper colorings of hypergraphs induced by simple geometric objects, and
//! the high-weight residual covers that follow from them.

pub mod axis2d;
pub mod document;
pub mod error;
pub mod extraction;
pub mod generators;
pub mod geom;
pub mod intervals;
pub mod octants;
pub mod oracle;
pub mod rational;
mod search;

pub use error::{Error, Result};
pub use geom::{
    contains, depth, total_weight, Axis, Color, Coloring, GeomObject, IndexSet, Instance, Interval,
    ObjectClass, Octant, Orientation, PlaneTriangle, Point, Ray, Segment,
};
pub use rational::Rational;

/// Proper coloring of `H(instance)` by the colorer for its class; `cap`
/// bounds the octant colorer's exact search.
pub fn color_instance(instance: &Instance, cap: Option<usize>) -> Result<Coloring> {
    match instance.class() {
        ObjectClass::Intervals => intervals::color_intervals(instance),
        ObjectClass::Segments => axis2d::color_segments(instance),
        ObjectClass::Rays => axis2d::color_rays(instance),
        ObjectClass::Octants => {
            octants::color_octants_capped(instance, cap.unwrap_or(octants::DEFAULT_OCTANT_CAP))
        }
    }
}
