//! Geometric objects with exact membership, plus instances and colorings.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::Rational;

pub type IndexSet = BTreeSet<usize>;
pub type Color = u32;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ObjectClass {
    Intervals,
    Segments,
    Rays,
    Octants,
}

impl ObjectClass {
    pub fn dim(self) -> usize {
        match self {
            ObjectClass::Intervals => 1,
            ObjectClass::Segments | ObjectClass::Rays => 2,
            ObjectClass::Octants => 3,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            ObjectClass::Intervals => "intervals",
            ObjectClass::Segments => "segments",
            ObjectClass::Rays => "rays",
            ObjectClass::Octants => "octants",
        }
    }
}

impl fmt::Display for ObjectClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for ObjectClass {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "intervals" => Ok(ObjectClass::Intervals),
            "segments" => Ok(ObjectClass::Segments),
            "rays" => Ok(ObjectClass::Rays),
            "octants" => Ok(ObjectClass::Octants),
            _ => Err(Error::Parse(format!("unknown class {s:?}"))),
        }
    }
}

/// A point of R^d with exact coordinates.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Point(pub Vec<Rational>);

impl Point {
    pub fn new(coords: Vec<Rational>) -> Self {
        Point(coords)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coord(&self, axis: usize) -> &Rational {
        &self.0[axis]
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str(")")
    }
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Closed interval `[a, b]` with `a < b`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Interval {
    pub a: Rational,
    pub b: Rational,
}

impl Interval {
    pub fn new(a: Rational, b: Rational) -> Result<Self> {
        if a >= b {
            return Err(Error::InvalidObject {
                index: 0,
                reason: format!("interval [{a}, {b}] is degenerate or reversed"),
            });
        }
        Ok(Interval { a, b })
    }

    pub fn contains_value(&self, x: &Rational) -> bool {
        &self.a <= x && x <= &self.b
    }

    /// Non-strict containment of the closed range `[lo, hi]`.
    pub fn contains_range(&self, lo: &Rational, hi: &Rational) -> bool {
        self.a <= *lo && *hi <= self.b
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Axis {
    Horizontal,
    Vertical,
}

/// Closed axis-parallel segment. `line` is the shared y of a horizontal
/// segment or the shared x of a vertical one; `[lo, hi]` runs along the axis.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Segment {
    pub axis: Axis,
    pub line: Rational,
    pub lo: Rational,
    pub hi: Rational,
}

impl Segment {
    pub fn new(axis: Axis, line: Rational, lo: Rational, hi: Rational) -> Result<Self> {
        if lo >= hi {
            return Err(Error::InvalidObject {
                index: 0,
                reason: format!("segment extent [{lo}, {hi}] is degenerate or reversed"),
            });
        }
        Ok(Segment { axis, line, lo, hi })
    }

    pub fn horizontal(y: Rational, x0: Rational, x1: Rational) -> Result<Self> {
        Segment::new(Axis::Horizontal, y, x0, x1)
    }

    pub fn vertical(x: Rational, y0: Rational, y1: Rational) -> Result<Self> {
        Segment::new(Axis::Vertical, x, y0, y1)
    }

    pub fn contains_xy(&self, x: &Rational, y: &Rational) -> bool {
        let (along, across) = match self.axis {
            Axis::Horizontal => (x, y),
            Axis::Vertical => (y, x),
        };
        across == &self.line && &self.lo <= along && along <= &self.hi
    }
}

/// Ray direction: 1 = +x, 2 = -x, 3 = +y, 4 = -y.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Orientation {
    Right = 1,
    Left = 2,
    Up = 3,
    Down = 4,
}

impl Orientation {
    pub const ALL: [Orientation; 4] = [
        Orientation::Right,
        Orientation::Left,
        Orientation::Up,
        Orientation::Down,
    ];

    pub fn code(self) -> u8 {
        self as u8
    }

    pub fn from_code(code: u8) -> Option<Self> {
        match code {
            1 => Some(Orientation::Right),
            2 => Some(Orientation::Left),
            3 => Some(Orientation::Up),
            4 => Some(Orientation::Down),
            _ => None,
        }
    }

    pub fn axis(self) -> Axis {
        match self {
            Orientation::Right | Orientation::Left => Axis::Horizontal,
            Orientation::Up | Orientation::Down => Axis::Vertical,
        }
    }
}

/// Closed axis-parallel ray starting at `apex`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Ray {
    pub orientation: Orientation,
    pub x: Rational,
    pub y: Rational,
}

impl Ray {
    pub fn new(orientation: Orientation, x: Rational, y: Rational) -> Self {
        Ray { orientation, x, y }
    }

    /// Coordinate of the supporting line (y for horizontal rays, x for vertical).
    pub fn line(&self) -> &Rational {
        match self.orientation.axis() {
            Axis::Horizontal => &self.y,
            Axis::Vertical => &self.x,
        }
    }

    /// Apex coordinate along the ray's axis.
    pub fn start(&self) -> &Rational {
        match self.orientation.axis() {
            Axis::Horizontal => &self.x,
            Axis::Vertical => &self.y,
        }
    }

    pub fn contains_xy(&self, x: &Rational, y: &Rational) -> bool {
        match self.orientation {
            Orientation::Right => y == &self.y && x >= &self.x,
            Orientation::Left => y == &self.y && x <= &self.x,
            Orientation::Up => x == &self.x && y >= &self.y,
            Orientation::Down => x == &self.x && y <= &self.y,
        }
    }
}

/// Octant `{x >= apex[0], y >= apex[1], z >= apex[2]}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Octant {
    pub apex: [Rational; 3],
}

impl Octant {
    pub fn new(a: Rational, b: Rational, c: Rational) -> Self {
        Octant { apex: [a, b, c] }
    }

    pub fn contains_xyz(&self, p: &[Rational]) -> bool {
        self.apex.iter().zip(p).all(|(lo, v)| v >= lo)
    }

    /// True when `self` contains `other`, i.e. `other`'s apex is coordinatewise >= ours.
    pub fn dominates(&self, other: &Octant) -> bool {
        self.apex.iter().zip(&other.apex).all(|(a, b)| b >= a)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum GeomObject {
    Interval(Interval),
    Segment(Segment),
    Ray(Ray),
    Octant(Octant),
}

impl GeomObject {
    pub fn class(&self) -> ObjectClass {
        match self {
            GeomObject::Interval(_) => ObjectClass::Intervals,
            GeomObject::Segment(_) => ObjectClass::Segments,
            GeomObject::Ray(_) => ObjectClass::Rays,
            GeomObject::Octant(_) => ObjectClass::Octants,
        }
    }

    fn validate(&self) -> std::result::Result<(), String> {
        match self {
            GeomObject::Interval(i) if i.a >= i.b => {
                Err(format!("interval [{}, {}] needs a < b", i.a, i.b))
            }
            GeomObject::Segment(s) if s.lo >= s.hi => {
                Err(format!("segment extent [{}, {}] needs lo < hi", s.lo, s.hi))
            }
            _ => Ok(()),
        }
    }
}

/// Closed range along one axis; `None` bounds are infinite.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxisRange {
    pub lo: Option<Rational>,
    pub hi: Option<Rational>,
}

impl AxisRange {
    fn closed(lo: &Rational, hi: &Rational) -> Self {
        AxisRange {
            lo: Some(lo.clone()),
            hi: Some(hi.clone()),
        }
    }

    fn at(v: &Rational) -> Self {
        AxisRange::closed(v, v)
    }

    pub fn contains(&self, v: &Rational) -> bool {
        self.lo.as_ref().is_none_or(|lo| lo <= v) && self.hi.as_ref().is_none_or(|hi| v <= hi)
    }
}

impl GeomObject {
    /// Projection of the object onto `axis`. Every supported object is the
    /// product of its per-axis ranges.
    pub fn axis_range(&self, axis: usize) -> AxisRange {
        match (self, axis) {
            (GeomObject::Interval(i), 0) => AxisRange::closed(&i.a, &i.b),
            (GeomObject::Segment(s), _) => {
                let along = matches!(
                    (s.axis, axis),
                    (Axis::Horizontal, 0) | (Axis::Vertical, 1)
                );
                if along {
                    AxisRange::closed(&s.lo, &s.hi)
                } else {
                    AxisRange::at(&s.line)
                }
            }
            (GeomObject::Ray(r), _) => {
                let along = matches!(
                    (r.orientation.axis(), axis),
                    (Axis::Horizontal, 0) | (Axis::Vertical, 1)
                );
                if !along {
                    return AxisRange::at(r.line());
                }
                match r.orientation {
                    Orientation::Right | Orientation::Up => AxisRange {
                        lo: Some(r.start().clone()),
                        hi: None,
                    },
                    Orientation::Left | Orientation::Down => AxisRange {
                        lo: None,
                        hi: Some(r.start().clone()),
                    },
                }
            }
            (GeomObject::Octant(o), a) if a < 3 => AxisRange {
                lo: Some(o.apex[a].clone()),
                hi: None,
            },
            _ => panic!("axis {axis} out of range for {}", self.class()),
        }
    }

    /// Every finite coordinate the object mentions along `axis`.
    pub fn axis_events(&self, axis: usize) -> Vec<Rational> {
        let r = self.axis_range(axis);
        let mut v: Vec<Rational> = r.lo.into_iter().chain(r.hi).collect();
        v.dedup();
        v
    }
}

/// Right triangle `{u >= a, v >= b, u + v <= s}` in plane coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PlaneTriangle {
    pub a: Rational,
    pub b: Rational,
    pub s: Rational,
}

impl PlaneTriangle {
    pub fn new(a: Rational, b: Rational, s: Rational) -> Self {
        PlaneTriangle { a, b, s }
    }

    pub fn contains_uv(&self, u: &Rational, v: &Rational) -> bool {
        u >= &self.a && v >= &self.b && (u + v) <= self.s
    }

    pub fn is_nonempty(&self) -> bool {
        &self.a + &self.b <= self.s
    }

    pub fn intersects(&self, other: &PlaneTriangle) -> bool {
        Rational::max_of(&self.a, &other.a) + Rational::max_of(&self.b, &other.b)
            <= *Rational::min_of(&self.s, &other.s)
    }

    pub fn contains_triangle(&self, other: &PlaneTriangle) -> bool {
        other.is_nonempty() && other.a >= self.a && other.b >= self.b && other.s <= self.s
    }
}

/// Exact closed-set membership of `p` in `object`.
pub fn contains(object: &GeomObject, p: &Point) -> Result<bool> {
    let dim = object.class().dim();
    if p.dim() != dim {
        return Err(Error::DimensionMismatch {
            point: p.clone(),
            expected: dim,
            found: p.dim(),
        });
    }
    let c = &p.0;
    Ok(match object {
        GeomObject::Interval(i) => i.contains_value(&c[0]),
        GeomObject::Segment(s) => s.contains_xy(&c[0], &c[1]),
        GeomObject::Ray(r) => r.contains_xy(&c[0], &c[1]),
        GeomObject::Octant(o) => o.contains_xyz(c),
    })
}

/// A same-class object family with positive weights and target points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    class: ObjectClass,
    objects: Vec<GeomObject>,
    weights: Vec<Rational>,
    points: Vec<Point>,
    meta: BTreeMap<String, String>,
}

impl Instance {
    pub fn new(
        class: ObjectClass,
        objects: Vec<GeomObject>,
        weights: Vec<Rational>,
        points: Vec<Point>,
    ) -> Result<Self> {
        if weights.len() != objects.len() {
            return Err(Error::WeightCount {
                expected: objects.len(),
                found: weights.len(),
            });
        }
        for (index, o) in objects.iter().enumerate() {
            if o.class() != class {
                return Err(Error::ClassMismatch {
                    expected: class,
                    found: o.class(),
                });
            }
            o.validate()
                .map_err(|reason| Error::InvalidObject { index, reason })?;
        }
        for (index, w) in weights.iter().enumerate() {
            if !w.is_positive() {
                return Err(Error::NonPositiveWeight {
                    index,
                    weight: w.to_string(),
                });
            }
        }
        for p in &points {
            if p.dim() != class.dim() {
                return Err(Error::DimensionMismatch {
                    point: p.clone(),
                    expected: class.dim(),
                    found: p.dim(),
                });
            }
        }
        Ok(Instance {
            class,
            objects,
            weights,
            points,
            meta: BTreeMap::new(),
        })
    }

    /// Unit weights for every object.
    pub fn unit(class: ObjectClass, objects: Vec<GeomObject>, points: Vec<Point>) -> Result<Self> {
        let weights = vec![Rational::one(); objects.len()];
        Instance::new(class, objects, weights, points)
    }

    pub fn with_meta(mut self, key: &str, value: impl ToString) -> Self {
        self.meta.insert(key.to_string(), value.to_string());
        self
    }

    pub fn with_points(mut self, points: Vec<Point>) -> Result<Self> {
        for p in &points {
            if p.dim() != self.class.dim() {
                return Err(Error::DimensionMismatch {
                    point: p.clone(),
                    expected: self.class.dim(),
                    found: p.dim(),
                });
            }
        }
        self.points = points;
        Ok(self)
    }

    pub fn class(&self) -> ObjectClass {
        self.class
    }

    pub fn objects(&self) -> &[GeomObject] {
        &self.objects
    }

    pub fn weights(&self) -> &[Rational] {
        &self.weights
    }

    pub fn weight(&self, index: usize) -> &Rational {
        &self.weights[index]
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn meta(&self) -> &BTreeMap<String, String> {
        &self.meta
    }

    pub fn len(&self) -> usize {
        self.objects.len()
    }

    pub fn is_empty(&self) -> bool {
        self.objects.is_empty()
    }

    pub fn all_indices(&self) -> IndexSet {
        (0..self.len()).collect()
    }

    pub fn total(&self) -> Rational {
        self.weights.iter().sum()
    }

    fn expect_class(&self, class: ObjectClass) -> Result<()> {
        if self.class != class {
            return Err(Error::ClassMismatch {
                expected: class,
                found: self.class,
            });
        }
        Ok(())
    }

    pub fn intervals(&self) -> Result<Vec<Interval>> {
        self.expect_class(ObjectClass::Intervals)?;
        Ok(self
            .objects
            .iter()
            .filter_map(|o| match o {
                GeomObject::Interval(i) => Some(i.clone()),
                _ => None,
            })
            .collect())
    }

    pub fn segments(&self) -> Result<Vec<Segment>> {
        self.expect_class(ObjectClass::Segments)?;
        Ok(self
            .objects
            .iter()
            .filter_map(|o| match o {
                GeomObject::Segment(s) => Some(s.clone()),
                _ => None,
            })
            .collect())
    }

    pub fn rays(&self) -> Result<Vec<Ray>> {
        self.expect_class(ObjectClass::Rays)?;
        Ok(self
            .objects
            .iter()
            .filter_map(|o| match o {
                GeomObject::Ray(r) => Some(r.clone()),
                _ => None,
            })
            .collect())
    }

    pub fn octants(&self) -> Result<Vec<Octant>> {
        self.expect_class(ObjectClass::Octants)?;
        Ok(self
            .objects
            .iter()
            .filter_map(|o| match o {
                GeomObject::Octant(o) => Some(o.clone()),
                _ => None,
            })
            .collect())
    }
}

/// Sum of weights over `subset`.
pub fn total_weight(instance: &Instance, subset: &IndexSet) -> Result<Rational> {
    let mut sum = Rational::zero();
    for &i in subset {
        let w = instance.weights.get(i).ok_or(Error::UnknownIndex(i))?;
        sum += w;
    }
    Ok(sum)
}

/// Number and set of objects containing `p`.
pub fn depth(instance: &Instance, p: &Point) -> Result<(usize, IndexSet)> {
    let mut set = IndexSet::new();
    for (i, o) in instance.objects.iter().enumerate() {
        if contains(o, p)? {
            set.insert(i);
        }
    }
    Ok((set.len(), set))
}

/// A total map from object index to a color in `1..=kappa`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Coloring {
    pub kappa: Color,
    pub colors: Vec<Color>,
}

impl Coloring {
    pub fn new(colors: Vec<Color>, kappa: Color) -> Result<Self> {
        let c = Coloring { kappa, colors };
        c.validate()?;
        Ok(c)
    }

    pub fn validate(&self) -> Result<()> {
        for (index, &color) in self.colors.iter().enumerate() {
            if color == 0 || color > self.kappa {
                return Err(Error::ColorOutOfRange {
                    index,
                    color,
                    kappa: self.kappa,
                });
            }
        }
        Ok(())
    }

    pub fn check_total(&self, instance: &Instance) -> Result<()> {
        if self.colors.len() != instance.len() {
            return Err(Error::ColoringSize {
                expected: instance.len(),
                found: self.colors.len(),
            });
        }
        self.validate()
    }

    pub fn color(&self, index: usize) -> Color {
        self.colors[index]
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    /// Number of distinct colors actually assigned.
    pub fn used(&self) -> usize {
        self.colors.iter().collect::<BTreeSet<_>>().len()
    }

    pub fn class_of(&self, color: Color) -> IndexSet {
        self.colors
            .iter()
            .enumerate()
            .filter(|(_, &c)| c == color)
            .map(|(i, _)| i)
            .collect()
    }
}

/// Builds a point from integer coordinates.
pub fn pt(coords: &[i64]) -> Point {
    Point(coords.iter().map(|&c| Rational::from_integer(c)).collect())
}
