//! Proper 2-coloring of the hypergraph induced by closed intervals.
//!
//! Each connected component of the union is spanned by a greedy chain of key
//! intervals in which only consecutive keys meet. Keys are colored along the
//! chain, and every other interval takes the color opposite to the key (or
//! key overlap) it sits in or straddles.

use crate::error::{Error, Result};
use crate::geom::{Color, Coloring, Instance, Interval};
use crate::rational::Rational;

/// Greedy chain of key intervals spanning one connected component.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KeyChain {
    pub component: Vec<usize>,
    pub keys: Vec<usize>,
}

impl KeyChain {
    /// Closed overlap `[a_{j+1}, b_j]` of keys `j` and `j + 1`.
    pub fn overlap<'a>(&self, intervals: &'a [Interval], j: usize) -> (&'a Rational, &'a Rational) {
        let cur = &intervals[self.keys[j]];
        let next = &intervals[self.keys[j + 1]];
        (&next.a, &cur.b)
    }
}

/// Groups intervals linked by chains of pairwise-intersecting (touching
/// counts) intervals. Components come out ordered by their left end, each
/// listing indices in increasing order.
pub fn connected_components(intervals: &[Interval]) -> Vec<Vec<usize>> {
    let mut order: Vec<usize> = (0..intervals.len()).collect();
    order.sort_by(|&i, &j| intervals[i].a.cmp(&intervals[j].a).then(i.cmp(&j)));
    let mut out: Vec<Vec<usize>> = Vec::new();
    let mut reach: Option<&Rational> = None;
    for i in order {
        let iv = &intervals[i];
        match reach {
            Some(r) if &iv.a <= r => {
                out.last_mut().expect("open component").push(i);
                if &iv.b > r {
                    reach = Some(&iv.b);
                }
            }
            _ => {
                out.push(vec![i]);
                reach = Some(&iv.b);
            }
        }
    }
    for c in &mut out {
        c.sort_unstable();
    }
    out
}

/// Builds the key chain of a connected component.
///
/// Start: minimum `a`, then longest, then lowest index. Successor: starts in
/// the current key, ends strictly after it, maximizes `b`; ties go to the
/// smaller `a`, then the lower index.
pub fn build_key_chain(intervals: &[Interval], component: &[usize]) -> Result<KeyChain> {
    let first = *component
        .iter()
        .min_by(|&&i, &&j| {
            let (x, y) = (&intervals[i], &intervals[j]);
            x.a.cmp(&y.a).then(y.b.cmp(&x.b)).then(i.cmp(&j))
        })
        .ok_or(Error::EmptyInput("interval component"))?;
    let mut keys = vec![first];
    loop {
        let cur = &intervals[*keys.last().unwrap()];
        let next = component
            .iter()
            .copied()
            .filter(|&i| {
                let c = &intervals[i];
                cur.contains_value(&c.a) && c.b > cur.b
            })
            .min_by(|&i, &j| {
                let (x, y) = (&intervals[i], &intervals[j]);
                y.b.cmp(&x.b).then(x.a.cmp(&y.a)).then(i.cmp(&j))
            });
        match next {
            Some(i) => keys.push(i),
            None => break,
        }
    }
    let chain = KeyChain {
        component: component.to_vec(),
        keys,
    };
    check_chain(intervals, &chain)?;
    Ok(chain)
}

fn check_chain(intervals: &[Interval], chain: &KeyChain) -> Result<()> {
    let keys = &chain.keys;
    for j in 0..keys.len() {
        for l in j + 2..keys.len() {
            let (x, y) = (&intervals[keys[j]], &intervals[keys[l]]);
            if x.a <= y.b && y.a <= x.b {
                return Err(Error::invariant(format!(
                    "non-consecutive keys #{} and #{} intersect",
                    keys[j], keys[l]
                )));
            }
        }
    }
    let lo = chain.component.iter().map(|&i| &intervals[i].a).min().unwrap();
    let hi = chain.component.iter().map(|&i| &intervals[i].b).max().unwrap();
    let first = &intervals[keys[0]];
    let last = &intervals[*keys.last().unwrap()];
    let gapless = keys
        .windows(2)
        .all(|w| intervals[w[1]].a <= intervals[w[0]].b);
    if &first.a != lo || &last.b != hi || !gapless {
        return Err(Error::invariant(
            "key intervals do not span their component",
        ));
    }
    Ok(())
}

fn other(c: Color) -> Color {
    3 - c
}

/// Colors one component in place with colors 1 and 2.
fn color_component(intervals: &[Interval], chain: &KeyChain, colors: &mut [Color]) -> Result<()> {
    let keys = &chain.keys;
    let is_key = |i: usize| keys.contains(&i);
    let non_keys: Vec<usize> = chain
        .component
        .iter()
        .copied()
        .filter(|&i| !is_key(i))
        .collect();

    colors[keys[0]] = 1;
    for j in 0..keys.len() - 1 {
        let (lo, hi) = chain.overlap(intervals, j);
        let witnessed = non_keys
            .iter()
            .any(|&i| intervals[i].contains_range(lo, hi));
        let prev = colors[keys[j]];
        colors[keys[j + 1]] = if witnessed { prev } else { other(prev) };
    }

    for &i in &non_keys {
        let iv = &intervals[i];
        let inside_overlap = (0..keys.len() - 1).find(|&j| {
            let (lo, hi) = chain.overlap(intervals, j);
            lo <= &iv.a && &iv.b <= hi
        });
        if let Some(j) = inside_overlap {
            // Both neighbouring keys already cover this interval. It may be the
            // only witness that made keys j and j+1 share a color, so it takes
            // the other color.
            colors[i] = other(colors[keys[j]]);
            continue;
        }
        if let Some(&k) = keys.iter().find(|&&k| intervals[k].contains_range(&iv.a, &iv.b)) {
            colors[i] = other(colors[k]);
            continue;
        }
        let straddled: Vec<usize> = (0..keys.len() - 1)
            .filter(|&j| {
                let (lo, hi) = chain.overlap(intervals, j);
                iv.contains_range(lo, hi)
            })
            .collect();
        match straddled.as_slice() {
            [j] => colors[i] = other(colors[keys[*j]]),
            _ => {
                return Err(Error::invariant(format!(
                    "interval #{i} [{}, {}] lies in no key and contains {} key overlaps",
                    iv.a,
                    iv.b,
                    straddled.len()
                )))
            }
        }
    }
    Ok(())
}

/// Proper coloring of a bare interval family with colors in {1, 2}.
pub fn color_interval_family(intervals: &[Interval]) -> Result<Vec<Color>> {
    let mut colors = vec![0; intervals.len()];
    for component in connected_components(intervals) {
        let chain = build_key_chain(intervals, &component)?;
        color_component(intervals, &chain, &mut colors)?;
    }
    Ok(colors)
}

/// Proper 2-coloring of `H(instance)` for an interval instance.
pub fn color_intervals(instance: &Instance) -> Result<Coloring> {
    let intervals = instance.intervals()?;
    Coloring::new(color_interval_family(&intervals)?, 2)
}
