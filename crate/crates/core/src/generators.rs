//! Tight lower-bound instances and seeded random instances.

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::{
    depth, GeomObject, Instance, Interval, ObjectClass, Octant, Orientation, PlaneTriangle, Point,
    Ray, Segment,
};
use crate::oracle::{enumerate_hyperedges, enumerate_triangle_hyperedges};
use crate::rational::{q, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GeneratorKind {
    IntervalPair,
    Kbox,
    KboxRays,
    Rayfan,
    Octant4,
    Random,
}

impl GeneratorKind {
    pub fn name(self) -> &'static str {
        match self {
            GeneratorKind::IntervalPair => "interval-pair",
            GeneratorKind::Kbox => "kbox",
            GeneratorKind::KboxRays => "kbox-rays",
            GeneratorKind::Rayfan => "rayfan",
            GeneratorKind::Octant4 => "octant4",
            GeneratorKind::Random => "random",
        }
    }
}

impl fmt::Display for GeneratorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for GeneratorKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        [
            GeneratorKind::IntervalPair,
            GeneratorKind::Kbox,
            GeneratorKind::KboxRays,
            GeneratorKind::Rayfan,
            GeneratorKind::Octant4,
            GeneratorKind::Random,
        ]
        .into_iter()
        .find(|k| k.name() == s)
        .ok_or_else(|| Error::Parse(format!("unknown generator kind {s:?}")))
    }
}

/// Everything needed to reproduce a generated instance.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorSpec {
    pub kind: GeneratorKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub class: Option<ObjectClass>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
}

impl GeneratorSpec {
    pub fn new(kind: GeneratorKind) -> Self {
        GeneratorSpec {
            kind,
            k: None,
            seed: None,
            class: None,
            n: None,
        }
    }
}

fn need<T>(value: Option<T>, what: &str, kind: GeneratorKind) -> Result<T> {
    value.ok_or_else(|| Error::InvalidParameter(format!("generator {kind} needs {what}")))
}

pub fn generate(spec: &GeneratorSpec) -> Result<Instance> {
    match spec.kind {
        GeneratorKind::IntervalPair => gen_interval_pair(),
        GeneratorKind::Kbox => gen_kbox(need(spec.k, "k", spec.kind)?),
        GeneratorKind::KboxRays => gen_kbox_rays(need(spec.k, "k", spec.kind)?),
        GeneratorKind::Rayfan => gen_rayfan(need(spec.k, "k", spec.kind)?),
        GeneratorKind::Octant4 => gen_octant4(),
        GeneratorKind::Random => gen_random(
            need(spec.class, "a class", spec.kind)?,
            need(spec.n, "n", spec.kind)?,
            spec.seed.unwrap_or(0),
        ),
    }
}

fn r(n: i64) -> Rational {
    Rational::from_integer(n)
}

fn check(ok: bool, what: impl FnOnce() -> String) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::invariant(format!("generator self-check failed: {}", what())))
    }
}

/// Asserts every target point has depth exactly `d`, or at least `d` when
/// `exact` is false.
fn check_depths(instance: &Instance, d: usize, exact: bool) -> Result<()> {
    for (i, p) in instance.points().iter().enumerate() {
        let (got, _) = depth(instance, p)?;
        check(if exact { got == d } else { got >= d }, || {
            format!("point #{i} {p} has depth {got}")
        })?;
    }
    Ok(())
}

pub fn gen_interval_pair() -> Result<Instance> {
    let objects = vec![
        GeomObject::Interval(Interval::new(r(0), r(2))?),
        GeomObject::Interval(Interval::new(r(1), r(3))?),
    ];
    let inst = Instance::unit(ObjectClass::Intervals, objects, vec![Point::new(vec![q(3, 2)])])?
        .with_meta("generator", "interval-pair");
    check_depths(&inst, 2, true)?;
    Ok(inst)
}

/// Row (and column) `i` of a k-box splits at `cut(i) + 1/2`.
fn kbox_cut(k: u32, i: u32) -> Rational {
    let cut = (i / 2 + 1).min(k - 1) as i64;
    &r(cut) + &q(1, 2)
}

/// One k-box piece: a segment on `line` from `lo` to `hi` along `axis`, which
/// becomes a ray of `orientation` from the meeting point `apex`.
struct KboxPiece {
    segment: Segment,
    orientation: Orientation,
    apex: (Rational, Rational),
}

struct Kbox {
    pieces: Vec<KboxPiece>,
    points: Vec<Point>,
}

/// `k` copies of the box along the diagonal. In each copy, row `i` at
/// `y = i` is split into a left and a right segment meeting at
/// `x = cut(i)`, column `j` at `x = j` into a lower and an upper one meeting
/// at `y = cut(j)`, and the box spans `[0, k+1]` in both axes. Cuts sit on
/// half-integers, so every crossing lies in exactly one piece of its row
/// and one of its column.
fn kbox_layout(k: u32) -> Result<Kbox> {
    if k < 2 {
        return Err(Error::InvalidParameter(format!("k-box needs k >= 2, got {k}")));
    }
    let size = k as i64 + 1;
    let mut pieces = Vec::new();
    let mut points = Vec::new();
    for t in 0..k as i64 {
        let o = r(t * (size + 1));
        let at = |v: &Rational| &o + v;
        for i in 1..=k {
            let y = at(&r(i as i64));
            let c = at(&kbox_cut(k, i));
            pieces.push(KboxPiece {
                segment: Segment::horizontal(y.clone(), o.clone(), c.clone())?,
                orientation: Orientation::Left,
                apex: (c.clone(), y.clone()),
            });
            pieces.push(KboxPiece {
                segment: Segment::horizontal(y.clone(), c.clone(), at(&r(size)))?,
                orientation: Orientation::Right,
                apex: (c.clone(), y.clone()),
            });
            points.push(Point::new(vec![c, y]));
        }
        for j in 1..=k {
            let x = at(&r(j as i64));
            let c = at(&kbox_cut(k, j));
            pieces.push(KboxPiece {
                segment: Segment::vertical(x.clone(), o.clone(), c.clone())?,
                orientation: Orientation::Down,
                apex: (x.clone(), c.clone()),
            });
            pieces.push(KboxPiece {
                segment: Segment::vertical(x.clone(), c.clone(), at(&r(size)))?,
                orientation: Orientation::Up,
                apex: (x.clone(), c.clone()),
            });
            points.push(Point::new(vec![x, c]));
        }
        for i in 1..=k as i64 {
            for j in 1..=k as i64 {
                points.push(Point::new(vec![at(&r(j)), at(&r(i))]));
            }
        }
    }
    Ok(Kbox { pieces, points })
}

pub fn gen_kbox(k: u32) -> Result<Instance> {
    let layout = kbox_layout(k)?;
    let objects = layout
        .pieces
        .into_iter()
        .map(|p| GeomObject::Segment(p.segment))
        .collect();
    let inst = Instance::unit(ObjectClass::Segments, objects, layout.points)?
        .with_meta("generator", "kbox")
        .with_meta("k", k);
    let m = 4 * (k as usize).pow(2);
    check(inst.len() == m, || format!("{} segments, expected {m}", inst.len()))?;
    check_depths(&inst, 2, true)?;
    Ok(inst)
}

pub fn gen_kbox_rays(k: u32) -> Result<Instance> {
    let layout = kbox_layout(k)?;
    let objects = layout
        .pieces
        .into_iter()
        .map(|p| GeomObject::Ray(Ray::new(p.orientation, p.apex.0, p.apex.1)))
        .collect();
    let inst = Instance::unit(ObjectClass::Rays, objects, layout.points)?
        .with_meta("generator", "kbox-rays")
        .with_meta("k", k);
    check_depths(&inst, 2, false)?;
    Ok(inst)
}

/// Up rays at `x = 1..k` from `y = 0`, and on each row `y = i` a left and a
/// right ray touching at `x = i + 1/2`.
pub fn gen_rayfan(k: u32) -> Result<Instance> {
    if k < 1 {
        return Err(Error::InvalidParameter("ray fan needs k >= 1".into()));
    }
    let k = k as i64;
    let mut objects = Vec::new();
    let mut points = Vec::new();
    for j in 1..=k {
        objects.push(GeomObject::Ray(Ray::new(Orientation::Up, r(j), r(0))));
    }
    for i in 1..=k {
        let x = &r(i) + &q(1, 2);
        objects.push(GeomObject::Ray(Ray::new(Orientation::Left, x.clone(), r(i))));
        objects.push(GeomObject::Ray(Ray::new(Orientation::Right, x.clone(), r(i))));
        points.push(Point::new(vec![x, r(i)]));
        for j in 1..=k {
            points.push(Point::new(vec![r(j), r(i)]));
        }
    }
    let inst = Instance::unit(ObjectClass::Rays, objects, points)?
        .with_meta("generator", "rayfan")
        .with_meta("k", k);
    check_depths(&inst, 2, true)?;

    let rays = inst.rays()?;
    let ku = k as usize;
    for i in 1..=ku {
        let left = &rays[ku + 2 * (i - 1)];
        let right = &rays[ku + 2 * (i - 1) + 1];
        for j in 1..=ku {
            let up = &rays[j - 1];
            let x = up.line();
            let meets_left = left.contains_xy(x, left.line());
            let meets_right = right.contains_xy(x, right.line());
            check(meets_left == (j <= i) && meets_right == (j > i), || {
                format!("row {i} and vertical {j} meet wrongly")
            })?;
        }
    }
    Ok(inst)
}

/// Four projected triangles `(a, b, s)` every two of which share a cell
/// covered by exactly those two, found by `search_octant4`.
const OCTANT4_TRIANGLES: [(i64, i64, i64); 4] = [(2, 5, 14), (6, 0, 13), (3, 3, 10), (2, 2, 9)];
const OCTANT4_PLANE: i64 = 14;

pub fn gen_octant4() -> Result<Instance> {
    let triangles: Vec<PlaneTriangle> = OCTANT4_TRIANGLES
        .iter()
        .map(|&(a, b, s)| PlaneTriangle::new(r(a), r(b), r(s)))
        .collect();
    let inst = octant4_from_triangles(&triangles, &r(OCTANT4_PLANE))?
        .ok_or_else(|| Error::invariant("frozen octant coordinates lost a pair cell"))?;
    check_depths(&inst, 2, true)?;
    Ok(inst.with_meta("generator", "octant4"))
}

/// Lifts triangles on the plane `x + y + z = plane` to octants, with one
/// target point per pair cell; `None` unless all six pairs have such a cell.
fn octant4_from_triangles(triangles: &[PlaneTriangle], plane: &Rational) -> Result<Option<Instance>> {
    let edges = enumerate_triangle_hyperedges(triangles, 4)?;
    let mut points = Vec::new();
    for i in 0..4 {
        for j in i + 1..4 {
            let Some(w) = edges.witness(&[i, j]) else {
                return Ok(None);
            };
            let (u, v) = (&w.0[0], &w.0[1]);
            points.push(Point::new(vec![u.clone(), v.clone(), plane - u - v]));
        }
    }
    let objects = triangles
        .iter()
        .map(|t| GeomObject::Octant(Octant::new(t.a.clone(), t.b.clone(), plane - &t.s)))
        .collect();
    let inst = Instance::unit(ObjectClass::Octants, objects, points)?;
    for (i, p) in inst.points().iter().enumerate() {
        if depth(&inst, p)?.0 != 2 {
            return Err(Error::invariant(format!("lifted point #{i} {p} is not of depth 2")));
        }
    }
    Ok(Some(inst))
}

/// Random search over small integer triangles for four whose six pairs all
/// own a depth-2 cell; returns the lifted octant instance.
pub fn search_octant4(seed: u64, tries: usize) -> Result<Option<Instance>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..tries {
        let triangles: Vec<PlaneTriangle> = (0..4)
            .map(|_| {
                let a = rng.gen_range(0..8);
                let b = rng.gen_range(0..8);
                let s = a + b + rng.gen_range(1..12);
                PlaneTriangle::new(r(a), r(b), r(s))
            })
            .collect();
        let plane = triangles.iter().map(|t| t.s.clone()).max().unwrap();
        if let Some(inst) = octant4_from_triangles(&triangles, &plane)? {
            return Ok(Some(inst.with_meta("generator", "octant4-search").with_meta("seed", seed)));
        }
    }
    Ok(None)
}

fn random_weight(rng: &mut ChaCha8Rng) -> Rational {
    q(rng.gen_range(1..=9), rng.gen_range(1..=4))
}

fn random_ray(rng: &mut ChaCha8Rng, orientations: &[Orientation]) -> Ray {
    let o = *orientations.choose(rng).expect("at least one orientation");
    Ray::new(o, r(rng.gen_range(0..=6)), r(rng.gen_range(0..=6)))
}

fn random_object(class: ObjectClass, rng: &mut ChaCha8Rng, orientations: &[Orientation]) -> Result<GeomObject> {
    Ok(match class {
        ObjectClass::Intervals => {
            let a = rng.gen_range(0..=10);
            GeomObject::Interval(Interval::new(r(a), r(a + rng.gen_range(1..=5)))?)
        }
        ObjectClass::Segments => {
            let line = r(rng.gen_range(0..=6));
            let lo = rng.gen_range(0..=6);
            let hi = r(lo + rng.gen_range(1..=4));
            let s = if rng.gen_bool(0.5) {
                Segment::horizontal(line, r(lo), hi)?
            } else {
                Segment::vertical(line, r(lo), hi)?
            };
            GeomObject::Segment(s)
        }
        ObjectClass::Rays => GeomObject::Ray(random_ray(rng, orientations)),
        ObjectClass::Octants => GeomObject::Octant(Octant::new(
            r(rng.gen_range(0..=4)),
            r(rng.gen_range(0..=4)),
            r(rng.gen_range(0..=4)),
        )),
    })
}

/// Instance whose targets are one witness per hyperedge, so that every
/// target has depth at least 2.
fn with_hyperedge_targets(
    class: ObjectClass,
    objects: Vec<GeomObject>,
    weights: Vec<Rational>,
) -> Result<Instance> {
    let bare = Instance::new(class, objects, weights, vec![])?;
    let points = enumerate_hyperedges(&bare)?
        .iter()
        .map(|(_, p)| p.clone())
        .collect();
    let inst = bare.with_points(points)?;
    check_depths(&inst, 2, false)?;
    Ok(inst)
}

/// Seeded random instance drawn with ChaCha8 on small integer coordinates,
/// so that coordinates collide often. Rays first draw how many distinct
/// orientations to use, which spreads instances over all four types.
pub fn gen_random(class: ObjectClass, n: usize, seed: u64) -> Result<Instance> {
    if n == 0 {
        return Err(Error::InvalidParameter("random instance needs n >= 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut orientations = Orientation::ALL.to_vec();
    orientations.shuffle(&mut rng);
    orientations.truncate(rng.gen_range(1..=4));
    let mut objects = Vec::with_capacity(n);
    let mut weights = Vec::with_capacity(n);
    for _ in 0..n {
        objects.push(random_object(class, &mut rng, &orientations)?);
        weights.push(random_weight(&mut rng));
    }
    Ok(with_hyperedge_targets(class, objects, weights)?
        .with_meta("generator", "random")
        .with_meta("seed", seed))
}

/// Random rays restricted to the given orientations, every one of which is
/// used at least once when `n` allows.
pub fn gen_random_rays(n: usize, seed: u64, orientations: &[Orientation]) -> Result<Instance> {
    if n == 0 || orientations.is_empty() {
        return Err(Error::InvalidParameter("random rays need n >= 1 and an orientation".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut objects = Vec::with_capacity(n);
    let mut weights = Vec::with_capacity(n);
    for i in 0..n {
        let mut ray = random_ray(&mut rng, orientations);
        if let Some(&o) = orientations.get(i) {
            ray.orientation = o;
        }
        objects.push(GeomObject::Ray(ray));
        weights.push(random_weight(&mut rng));
    }
    Ok(with_hyperedge_targets(ObjectClass::Rays, objects, weights)?
        .with_meta("generator", "random-rays")
        .with_meta("seed", seed))
}
