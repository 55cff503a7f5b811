//! Residual covers from proper colorings, and exact solvers that bound what
//! any cover or coloring can achieve on small instances.

use std::collections::{BTreeSet, HashMap};

use crate::error::{Error, Result};
use crate::geom::{depth, total_weight, Color, Coloring, IndexSet, Instance};
use crate::oracle::{check_cover, enumerate_hyperedges_capped, CoverVerdict, DEFAULT_ORACLE_CAP};
use crate::rational::Rational;
use crate::search::find_proper_coloring;

pub const DEFAULT_COVER_CAP: usize = 40;
pub const DEFAULT_CHROMATIC_CAP: usize = 20;

/// A cover `sol` together with the color class left out of it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtractionResult {
    pub sol: IndexSet,
    pub extracted: IndexSet,
    pub color: Color,
    pub extracted_weight: Rational,
    pub total_weight: Rational,
    /// `total_weight / extracted_weight`.
    pub ratio: Rational,
    pub kappa: Color,
}

/// Drops the heaviest color class of a proper coloring; what remains covers
/// every target point because each of them lies in at least two objects of
/// different colors.
pub fn extract(instance: &Instance, coloring: &Coloring) -> Result<ExtractionResult> {
    coloring.check_total(instance)?;
    if instance.is_empty() {
        return Err(Error::EmptyInput("instance"));
    }
    for (index, p) in instance.points().iter().enumerate() {
        let (d, _) = depth(instance, p)?;
        if d < 2 {
            return Err(Error::DepthPrecondition {
                index,
                point: p.clone(),
                depth: d,
            });
        }
    }

    let mut best: Option<(Color, IndexSet, Rational)> = None;
    for color in 1..=coloring.kappa {
        let class = coloring.class_of(color);
        let w = total_weight(instance, &class)?;
        if best.as_ref().is_none_or(|(_, _, bw)| &w > bw) {
            best = Some((color, class, w));
        }
    }
    let (color, extracted, extracted_weight) = best.expect("kappa is at least 1");
    let sol: IndexSet = instance.all_indices().difference(&extracted).copied().collect();

    if let CoverVerdict::Uncovered { point, .. } = check_cover(instance, &sol)? {
        return Err(Error::ImproperColoring { witness: point });
    }
    let total = instance.total();
    if &extracted_weight * Rational::from_integer(coloring.kappa as i64) < total {
        return Err(Error::invariant(format!(
            "heaviest class weighs {extracted_weight}, below {total}/{}",
            coloring.kappa
        )));
    }
    Ok(ExtractionResult {
        ratio: &total / &extracted_weight,
        sol,
        extracted,
        color,
        extracted_weight,
        total_weight: total,
        kappa: coloring.kappa,
    })
}

/// Which exact search `exact_min_cover_with` runs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoverMethod {
    /// Vertex cover when every remaining point has exactly two coverers,
    /// branching otherwise.
    Auto,
    /// Weighted vertex cover on the conflict graph; fails unless every point
    /// has depth exactly 2.
    VertexCover,
    /// Branching on the uncovered point with the fewest coverers.
    Branching,
}

/// Minimum-weight subset of objects covering every target point.
pub fn exact_min_cover(instance: &Instance) -> Result<(IndexSet, Rational)> {
    exact_min_cover_with(instance, DEFAULT_COVER_CAP, CoverMethod::Auto)
}

pub fn exact_min_cover_with(
    instance: &Instance,
    cap: usize,
    method: CoverMethod,
) -> Result<(IndexSet, Rational)> {
    if instance.len() > cap {
        return Err(Error::SizeCap {
            what: "exact min cover",
            size: instance.len(),
            cap,
        });
    }
    let mut sets: Vec<Vec<usize>> = Vec::new();
    for (index, p) in instance.points().iter().enumerate() {
        let (d, coverers) = depth(instance, p)?;
        if d == 0 {
            return Err(Error::Uncoverable {
                index,
                point: p.clone(),
            });
        }
        if method == CoverMethod::VertexCover && d != 2 {
            return Err(Error::InvalidParameter(format!(
                "vertex cover needs depth exactly 2, point #{index} {p} has depth {d}"
            )));
        }
        sets.push(coverers.into_iter().collect());
    }

    let mut chosen = IndexSet::new();
    for s in &sets {
        if let [only] = s.as_slice() {
            chosen.insert(*only);
        }
    }
    sets.retain(|s| !s.iter().any(|i| chosen.contains(i)));
    let sets = drop_supersets(sets);

    for component in set_components(instance.len(), &sets) {
        let local: Vec<&Vec<usize>> = component.iter().map(|&s| &sets[s]).collect();
        let pairs_only = local.iter().all(|s| s.len() == 2);
        let picked = match method {
            CoverMethod::VertexCover => vertex_cover(instance, &local),
            CoverMethod::Auto if pairs_only => vertex_cover(instance, &local),
            _ => branching_cover(instance, &local),
        };
        chosen.extend(picked);
    }
    let weight = total_weight(instance, &chosen)?;
    if !check_cover(instance, &chosen)?.is_covered() {
        return Err(Error::invariant("exact cover search returned a non-cover"));
    }
    Ok((chosen, weight))
}

/// Distinct coverer sets with every proper superset removed; covering the
/// smaller set covers the larger one.
fn drop_supersets(mut sets: Vec<Vec<usize>>) -> Vec<Vec<usize>> {
    sets.sort_by(|a, b| a.len().cmp(&b.len()).then(a.cmp(b)));
    sets.dedup();
    let mut kept: Vec<Vec<usize>> = Vec::new();
    for s in sets {
        let implied = kept
            .iter()
            .any(|k| k.iter().all(|i| s.binary_search(i).is_ok()));
        if !implied {
            kept.push(s);
        }
    }
    kept
}

/// Groups set indices whose sets are linked through shared objects.
fn set_components(n: usize, sets: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        let mut y = x;
        while p[y] != r {
            let next = p[y];
            p[y] = r;
            y = next;
        }
        r
    }
    for s in sets {
        for w in s.windows(2) {
            let (a, b) = (find(&mut parent, w[0]), find(&mut parent, w[1]));
            parent[a] = b;
        }
    }
    let mut groups: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
    for (si, s) in sets.iter().enumerate() {
        let root = find(&mut parent, s[0]);
        groups.entry(root).or_default().push(si);
    }
    groups.into_values().collect()
}

struct VertexCoverSearch<'a> {
    weights: Vec<&'a Rational>,
    adj: Vec<BTreeSet<usize>>,
    best: Option<(Vec<usize>, Rational)>,
}

impl VertexCoverSearch<'_> {
    /// Sum of `min(w(u), w(v))` over a greedy set of disjoint remaining
    /// edges; every cover pays at least this much.
    fn lower_bound(&self, removed: &[bool]) -> Rational {
        let mut used = vec![false; removed.len()];
        let mut lb = Rational::zero();
        for u in 0..self.adj.len() {
            if removed[u] || used[u] {
                continue;
            }
            if let Some(&v) = self.adj[u].iter().find(|&&v| !removed[v] && !used[v]) {
                used[u] = true;
                used[v] = true;
                lb += Rational::min_of(self.weights[u], self.weights[v]);
            }
        }
        lb
    }

    fn run(&mut self, removed: &mut Vec<bool>, taken: &mut Vec<usize>, cost: Rational) {
        if let Some((_, best)) = &self.best {
            if &(&cost + self.lower_bound(removed)) >= best {
                return;
            }
        }
        let live_degree = |v: usize, removed: &[bool]| self.adj[v].iter().filter(|&&w| !removed[w]).count();
        let pivot = (0..self.adj.len())
            .filter(|&v| !removed[v])
            .map(|v| (live_degree(v, removed), v))
            .filter(|&(d, _)| d > 0)
            .max_by(|a, b| a.0.cmp(&b.0).then(b.1.cmp(&a.1)));
        let Some((_, v)) = pivot else {
            self.best = Some((taken.clone(), cost));
            return;
        };

        removed[v] = true;
        taken.push(v);
        self.run(removed, taken, &cost + self.weights[v]);
        taken.pop();

        // leaving v out forces all of its live neighbours in
        let nbrs: Vec<usize> = self.adj[v].iter().copied().filter(|&w| !removed[w]).collect();
        let mut extra = Rational::zero();
        for &w in &nbrs {
            removed[w] = true;
            taken.push(w);
            extra += self.weights[w];
        }
        self.run(removed, taken, &cost + extra);
        for &w in &nbrs {
            removed[w] = false;
            taken.pop();
        }
        removed[v] = false;
    }
}

fn vertex_cover(instance: &Instance, sets: &[&Vec<usize>]) -> Vec<usize> {
    let vertices: Vec<usize> = sets
        .iter()
        .flat_map(|s| s.iter().copied())
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let local = |g: usize| vertices.binary_search(&g).unwrap();
    let mut adj = vec![BTreeSet::new(); vertices.len()];
    for s in sets {
        let (u, v) = (local(s[0]), local(s[1]));
        adj[u].insert(v);
        adj[v].insert(u);
    }
    let mut search = VertexCoverSearch {
        weights: vertices.iter().map(|&g| instance.weight(g)).collect(),
        adj,
        best: None,
    };
    search.run(&mut vec![false; vertices.len()], &mut Vec::new(), Rational::zero());
    let (taken, _) = search.best.expect("taking every vertex is a cover");
    taken.into_iter().map(|l| vertices[l]).collect()
}

type Mask = Vec<u64>;

struct BranchSearch<'a> {
    objects: Vec<usize>,
    weights: Vec<&'a Rational>,
    /// Points covered by each local object.
    covers: Vec<Mask>,
    /// Local coverers of each point.
    coverers: Vec<Vec<usize>>,
    memo: HashMap<Mask, Rational>,
    best: Option<(Vec<usize>, Rational)>,
}

fn mask_has(m: &Mask, i: usize) -> bool {
    m[i / 64] >> (i % 64) & 1 == 1
}

fn mask_count_and(a: &Mask, b: &Mask) -> u32 {
    a.iter().zip(b).map(|(x, y)| (x & y).count_ones()).sum()
}

impl BranchSearch<'_> {
    fn run(&mut self, uncovered: Mask, taken: &mut Vec<usize>, cost: Rational) {
        let open: Vec<usize> = (0..self.coverers.len()).filter(|&p| mask_has(&uncovered, p)).collect();
        if open.is_empty() {
            if self.best.as_ref().is_none_or(|(_, b)| &cost < b) {
                self.best = Some((taken.clone(), cost));
            }
            return;
        }
        if let Some(seen) = self.memo.get(&uncovered) {
            if seen <= &cost {
                return;
            }
        }
        self.memo.insert(uncovered.clone(), cost.clone());
        if let Some((_, best)) = &self.best {
            let lb = open
                .iter()
                .map(|&p| {
                    self.coverers[p]
                        .iter()
                        .map(|&o| self.weights[o])
                        .min()
                        .unwrap()
                })
                .max()
                .unwrap();
            if &(&cost + lb) >= best {
                return;
            }
        }

        let p = *open
            .iter()
            .min_by_key(|&&p| (self.coverers[p].len(), p))
            .unwrap();
        let mut options: Vec<(Rational, usize)> = self.coverers[p]
            .iter()
            .map(|&o| {
                let gain = mask_count_and(&self.covers[o], &uncovered) as i64;
                (self.weights[o] / &Rational::from_integer(gain), o)
            })
            .collect();
        options.sort();
        for (_, o) in options {
            let next: Mask = uncovered
                .iter()
                .zip(&self.covers[o])
                .map(|(u, c)| u & !c)
                .collect();
            taken.push(o);
            self.run(next, taken, &cost + self.weights[o]);
            taken.pop();
        }
    }
}

fn branching_cover(instance: &Instance, sets: &[&Vec<usize>]) -> Vec<usize> {
    let objects: Vec<usize> = sets
        .iter()
        .flat_map(|s| s.iter().copied())
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let words = sets.len().div_ceil(64).max(1);
    let mut covers = vec![vec![0u64; words]; objects.len()];
    let mut coverers = Vec::with_capacity(sets.len());
    for (p, s) in sets.iter().enumerate() {
        let locals: Vec<usize> = s.iter().map(|g| objects.binary_search(g).unwrap()).collect();
        for &o in &locals {
            covers[o][p / 64] |= 1 << (p % 64);
        }
        coverers.push(locals);
    }
    let mut all = vec![0u64; words];
    for p in 0..sets.len() {
        all[p / 64] |= 1 << (p % 64);
    }
    let mut search = BranchSearch {
        weights: objects.iter().map(|&g| instance.weight(g)).collect(),
        objects,
        covers,
        coverers,
        memo: HashMap::new(),
        best: None,
    };
    search.run(all, &mut Vec::new(), Rational::zero());
    let (taken, _) = search.best.expect("taking every object is a cover");
    taken.into_iter().map(|l| search.objects[l]).collect()
}

/// Smallest `alpha` with `W(O \ sol) >= W(O) / alpha` for some cover `sol`.
pub fn exact_extraction_number(instance: &Instance) -> Result<Rational> {
    exact_extraction_number_capped(instance, DEFAULT_COVER_CAP)
}

pub fn exact_extraction_number_capped(instance: &Instance, cap: usize) -> Result<Rational> {
    if instance.is_empty() {
        return Err(Error::EmptyInput("instance"));
    }
    let (_, cover) = exact_min_cover_with(instance, cap, CoverMethod::Auto)?;
    let total = instance.total();
    let left = &total - &cover;
    if left.is_zero() {
        return Err(Error::Unbounded);
    }
    Ok(&total / &left)
}

/// Chromatic number of `H(instance)`.
pub fn exact_chromatic(instance: &Instance) -> Result<Color> {
    exact_chromatic_capped(instance, DEFAULT_CHROMATIC_CAP)
}

pub fn exact_chromatic_capped(instance: &Instance, cap: usize) -> Result<Color> {
    if instance.len() > cap {
        return Err(Error::SizeCap {
            what: "exact chromatic number",
            size: instance.len(),
            cap,
        });
    }
    let n = instance.len();
    if n == 0 {
        return Ok(0);
    }
    let edges: Vec<Vec<usize>> = enumerate_hyperedges_capped(instance, DEFAULT_ORACLE_CAP.max(cap))?
        .edges()
        .cloned()
        .collect();
    for k in 1..=n as Color {
        if find_proper_coloring(n, &edges, k).is_some() {
            return Ok(k);
        }
    }
    Err(Error::invariant("no proper coloring with one color per object"))
}

/// Size of a largest set of pairwise non-adjacent vertices, by exhaustive
/// branching (take the first live vertex, or drop it).
pub fn max_independent_set(n: usize, pairs: &[(usize, usize)]) -> IndexSet {
    let mut adj = vec![0u128; n];
    assert!(n <= 128, "independent set search is limited to 128 vertices");
    for &(u, v) in pairs {
        adj[u] |= 1 << v;
        adj[v] |= 1 << u;
    }
    fn go(adj: &[u128], live: u128, cur: u128, best: &mut u128) {
        if cur.count_ones() + live.count_ones() <= best.count_ones() {
            return;
        }
        if live == 0 {
            *best = cur;
            return;
        }
        let v = live.trailing_zeros() as usize;
        go(adj, live & !(1 << v) & !adj[v], cur | 1 << v, best);
        go(adj, live & !(1 << v), cur, best);
    }
    let live = if n == 128 { u128::MAX } else { (1u128 << n) - 1 };
    let mut best = 0u128;
    go(&adj, live, 0, &mut best);
    (0..n).filter(|&v| best >> v & 1 == 1).collect()
}
