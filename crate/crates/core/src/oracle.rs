//! Brute-force ground truth for induced hypergraphs.
//!
//! Every object class here has cell boundaries on axis-parallel lines (plane
//! triangles add one diagonal direction), so the covering set is constant
//! between consecutive event coordinates. Evaluating depth at every event and
//! at every midpoint between consecutive events therefore visits every cell of
//! the arrangement. This module only relies on the membership predicates in
//! [`crate::geom`].

use std::collections::{BTreeMap, BTreeSet, HashMap};

use crate::error::{Error, Result};
use crate::geom::{contains, depth, Coloring, Color, IndexSet, Instance, PlaneTriangle, Point};
use crate::rational::Rational;

pub const DEFAULT_ORACLE_CAP: usize = 60;

/// Distinct covering sets of size >= 2, each with one witness point.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct HyperedgeSet {
    edges: BTreeMap<Vec<usize>, Point>,
}

impl HyperedgeSet {
    fn insert(&mut self, edge: Vec<usize>, witness: impl FnOnce() -> Point) {
        if edge.len() >= 2 && !self.edges.contains_key(&edge) {
            self.edges.insert(edge, witness());
        }
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn contains(&self, edge: &[usize]) -> bool {
        self.edges.contains_key(edge)
    }

    pub fn witness(&self, edge: &[usize]) -> Option<&Point> {
        self.edges.get(edge)
    }

    /// Edges in lexicographic order, paired with their witness.
    pub fn iter(&self) -> impl Iterator<Item = (&Vec<usize>, &Point)> {
        self.edges.iter()
    }

    pub fn edges(&self) -> impl Iterator<Item = &Vec<usize>> {
        self.edges.keys()
    }

    pub fn edge_set(&self) -> BTreeSet<Vec<usize>> {
        self.edges.keys().cloned().collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Proper,
    Monochromatic {
        edge: Vec<usize>,
        color: Color,
        witness: Point,
    },
}

impl Verdict {
    pub fn is_proper(&self) -> bool {
        matches!(self, Verdict::Proper)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CoverVerdict {
    Covered,
    Uncovered { index: usize, point: Point },
}

impl CoverVerdict {
    pub fn is_covered(&self) -> bool {
        matches!(self, CoverVerdict::Covered)
    }
}

/// Sorted distinct values plus the midpoint of every consecutive pair.
fn with_midpoints(mut values: Vec<Rational>) -> Vec<Rational> {
    values.sort();
    values.dedup();
    let mids: Vec<Rational> = values.windows(2).map(|w| w[0].midpoint(&w[1])).collect();
    values.extend(mids);
    values.sort();
    values
}

#[derive(Clone)]
struct Bits(Vec<u64>);

impl Bits {
    fn empty(n: usize) -> Self {
        Bits(vec![0; n.div_ceil(64).max(1)])
    }

    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    fn and_assign(&mut self, other: &Bits) {
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            *a &= b;
        }
    }

    fn count(&self) -> u32 {
        self.0.iter().map(|w| w.count_ones()).sum()
    }

    fn indices(&self) -> Vec<usize> {
        let mut out = Vec::new();
        for (wi, &w) in self.0.iter().enumerate() {
            let mut w = w;
            while w != 0 {
                let b = w.trailing_zeros() as usize;
                out.push(wi * 64 + b);
                w &= w - 1;
            }
        }
        out
    }
}

fn check_cap(what: &'static str, size: usize, cap: usize) -> Result<()> {
    if size > cap {
        return Err(Error::SizeCap { what, size, cap });
    }
    Ok(())
}

/// Hyperedges of `H(instance)` using the default size cap.
pub fn enumerate_hyperedges(instance: &Instance) -> Result<HyperedgeSet> {
    enumerate_hyperedges_capped(instance, DEFAULT_ORACLE_CAP)
}

pub fn enumerate_hyperedges_capped(instance: &Instance, cap: usize) -> Result<HyperedgeSet> {
    check_cap("oracle object count", instance.len(), cap)?;
    let n = instance.len();
    let dim = instance.class().dim();
    let objects = instance.objects();

    // Candidate coordinates per axis are the events with their midpoints plus
    // one value beyond each end, so unbounded objects (rays, octants) are
    // sampled outside every apex.
    let candidates: Vec<Vec<Rational>> = (0..dim)
        .map(|axis| {
            let events: Vec<Rational> = objects.iter().flat_map(|o| o.axis_events(axis)).collect();
            let mut c = with_midpoints(events);
            if let (Some(first), Some(last)) = (c.first().cloned(), c.last().cloned()) {
                c.insert(0, first - Rational::one());
                c.push(last + Rational::one());
            }
            c
        })
        .collect();

    // table[axis][k] = objects whose projection on `axis` holds candidates[axis][k]
    let tables: Vec<Vec<Bits>> = candidates
        .iter()
        .enumerate()
        .map(|(axis, values)| {
            let ranges: Vec<_> = objects.iter().map(|o| o.axis_range(axis)).collect();
            values
                .iter()
                .map(|v| {
                    let mut bits = Bits::empty(n);
                    for (i, r) in ranges.iter().enumerate() {
                        if r.contains(v) {
                            bits.set(i);
                        }
                    }
                    bits
                })
                .collect()
        })
        .collect();

    let mut seen: HashMap<Vec<u64>, Vec<usize>> = HashMap::new();
    let mut order: Vec<Vec<u64>> = Vec::new();
    let mut odometer = vec![0usize; dim];
    if candidates.iter().any(|c| c.is_empty()) {
        return Ok(HyperedgeSet::default());
    }
    'outer: loop {
        let mut bits = tables[0][odometer[0]].clone();
        for axis in 1..dim {
            bits.and_assign(&tables[axis][odometer[axis]]);
        }
        if bits.count() >= 2 && !seen.contains_key(&bits.0) {
            seen.insert(bits.0.clone(), odometer.clone());
            order.push(bits.0.clone());
        }
        // advance the last axis fastest so witnesses come out in lexicographic order
        let mut axis = dim;
        loop {
            if axis == 0 {
                break 'outer;
            }
            axis -= 1;
            odometer[axis] += 1;
            if odometer[axis] < candidates[axis].len() {
                break;
            }
            odometer[axis] = 0;
        }
    }

    let mut out = HyperedgeSet::default();
    for key in order {
        let at = &seen[&key];
        let edge = Bits(key).indices();
        out.insert(edge, || {
            Point((0..dim).map(|axis| candidates[axis][at[axis]].clone()).collect())
        });
    }
    Ok(out)
}

/// Hyperedges of the hypergraph induced by plane triangles, witnessed as `(u, v)`.
///
/// Cell boundaries are horizontal (`v = b`), vertical (`u = a`) or diagonal
/// (`u + v = s`) lines. Combinatorics only change at `v = b_i` or where a
/// diagonal crosses a vertical edge, `v = s_i - a_j`; each horizontal slice
/// reduces to closed 1D intervals `[a_i, s_i - v]`.
pub fn enumerate_triangle_hyperedges(triangles: &[PlaneTriangle], cap: usize) -> Result<HyperedgeSet> {
    check_cap("oracle triangle count", triangles.len(), cap)?;
    let mut critical: Vec<Rational> = triangles.iter().map(|t| t.b.clone()).collect();
    for t in triangles {
        for u in triangles {
            critical.push(&t.s - &u.a);
        }
    }
    let slices = with_midpoints(critical);
    let mut out = HyperedgeSet::default();
    for v in &slices {
        let active: Vec<(usize, Rational, Rational)> = triangles
            .iter()
            .enumerate()
            .filter(|(_, t)| &t.b <= v && t.a <= &t.s - v)
            .map(|(i, t)| (i, t.a.clone(), &t.s - v))
            .collect();
        if active.len() < 2 {
            continue;
        }
        let ends: Vec<Rational> = active
            .iter()
            .flat_map(|(_, lo, hi)| [lo.clone(), hi.clone()])
            .collect();
        for u in with_midpoints(ends) {
            let edge: Vec<usize> = active
                .iter()
                .filter(|(_, lo, hi)| lo <= &u && &u <= hi)
                .map(|(i, _, _)| *i)
                .collect();
            out.insert(edge, || Point(vec![u.clone(), v.clone()]));
        }
    }
    Ok(out)
}

/// Lowest common denominator of every finite coordinate in `instance`.
fn coordinate_lcm(values: &[Rational]) -> num_bigint::BigInt {
    use num_integer::Integer;
    values
        .iter()
        .fold(num_bigint::BigInt::from(1), |acc, v| acc.lcm(v.denom()))
}

fn dense_axis(values: &[Rational]) -> Vec<Rational> {
    if values.is_empty() {
        return Vec::new();
    }
    let lcm = coordinate_lcm(values);
    let step = Rational::from(num_rational::BigRational::new(1.into(), lcm * 4));
    let lo = values.iter().min().unwrap().clone() - Rational::one();
    let hi = values.iter().max().unwrap().clone() + Rational::one();
    let mut out = Vec::new();
    let mut x = lo;
    while x <= hi {
        out.push(x.clone());
        x += &step;
    }
    out
}

/// Hyperedges found by evaluating depth on a uniform grid spanning the
/// bounding box with one unit of padding, at a quarter of the finest
/// coordinate resolution. Used to cross-check [`enumerate_hyperedges`].
pub fn dense_hyperedges(instance: &Instance) -> Result<HyperedgeSet> {
    let dim = instance.class().dim();
    let axes: Vec<Vec<Rational>> = (0..dim)
        .map(|axis| {
            let coords: Vec<Rational> = instance
                .objects()
                .iter()
                .flat_map(|o| o.axis_events(axis))
                .collect();
            dense_axis(&coords)
        })
        .collect();
    let mut out = HyperedgeSet::default();
    if axes.iter().any(|a| a.is_empty()) {
        return Ok(out);
    }
    let mut idx = vec![0usize; dim];
    loop {
        let p = Point((0..dim).map(|a| axes[a][idx[a]].clone()).collect());
        let (_, set) = depth(instance, &p)?;
        out.insert(set.into_iter().collect(), || p.clone());
        let mut axis = dim;
        loop {
            if axis == 0 {
                return Ok(out);
            }
            axis -= 1;
            idx[axis] += 1;
            if idx[axis] < axes[axis].len() {
                break;
            }
            idx[axis] = 0;
        }
    }
}

/// Dense-grid counterpart of [`enumerate_triangle_hyperedges`].
pub fn dense_triangle_hyperedges(triangles: &[PlaneTriangle]) -> HyperedgeSet {
    let mut out = HyperedgeSet::default();
    if triangles.is_empty() {
        return out;
    }
    let mut all: Vec<Rational> = Vec::new();
    for t in triangles {
        all.extend([t.a.clone(), t.b.clone(), t.s.clone()]);
    }
    let us = dense_axis(&all);
    for v in &us {
        for u in &us {
            let edge: Vec<usize> = triangles
                .iter()
                .enumerate()
                .filter(|(_, t)| t.contains_uv(u, v))
                .map(|(i, _)| i)
                .collect();
            out.insert(edge, || Point(vec![u.clone(), v.clone()]));
        }
    }
    out
}

/// Checks that no hyperedge of `edges` is monochromatic under `colors`.
pub fn check_proper_edges(edges: &HyperedgeSet, colors: &[Color]) -> Verdict {
    for (edge, witness) in edges.iter() {
        let first = colors[edge[0]];
        if edge.iter().all(|&i| colors[i] == first) {
            return Verdict::Monochromatic {
                edge: edge.clone(),
                color: first,
                witness: witness.clone(),
            };
        }
    }
    Verdict::Proper
}

pub fn check_proper(instance: &Instance, coloring: &Coloring) -> Result<Verdict> {
    check_proper_capped(instance, coloring, DEFAULT_ORACLE_CAP)
}

pub fn check_proper_capped(instance: &Instance, coloring: &Coloring, cap: usize) -> Result<Verdict> {
    coloring.check_total(instance)?;
    let edges = enumerate_hyperedges_capped(instance, cap)?;
    Ok(check_proper_edges(&edges, &coloring.colors))
}

/// Whether every target point lies in some object of `subset`.
pub fn check_cover(instance: &Instance, subset: &IndexSet) -> Result<CoverVerdict> {
    if let Some(&bad) = subset.iter().find(|&&i| i >= instance.len()) {
        return Err(Error::UnknownIndex(bad));
    }
    for (index, p) in instance.points().iter().enumerate() {
        let mut covered = false;
        for &i in subset {
            if contains(&instance.objects()[i], p)? {
                covered = true;
                break;
            }
        }
        if !covered {
            return Ok(CoverVerdict::Uncovered {
                index,
                point: p.clone(),
            });
        }
    }
    Ok(CoverVerdict::Covered)
}
