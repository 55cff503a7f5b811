//! 4-coloring of octants `{x >= a, y >= b, z >= c}`.
//!
//! Dominated octants are set aside. The remaining ones are cut by a plane
//! `x + y + z = c_max` chosen so that every pair meets inside it; in the plane
//! coordinates `(u, v) = (x, y)` each cut is the right triangle
//! `{u >= a, v >= b, u + v <= c_max - c}`, all homothetic with one
//! orientation. The triangles are 4-colored, and each dominated octant takes
//! the lowest color its dominator does not use.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::geom::{Color, Coloring, Instance, Octant, PlaneTriangle, Point};
use crate::oracle::{check_proper_edges, enumerate_hyperedges_capped, enumerate_triangle_hyperedges, Verdict};
use crate::rational::Rational;
use crate::search::{degeneracy_order, find_proper_coloring, is_proper, pair_graph};

pub const DEFAULT_OCTANT_CAP: usize = 40;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DominationDag {
    /// Octants not contained in any other octant (lowest index among duplicates).
    pub nondominated: Vec<usize>,
    /// Lowest-index nondominated octant containing each dominated one.
    pub dominator_of: BTreeMap<usize, usize>,
}

/// `outer` strictly dominates `inner`; equal apexes resolve by index.
fn strictly_dominates(octants: &[Octant], outer: usize, inner: usize) -> bool {
    outer != inner
        && octants[outer].dominates(&octants[inner])
        && (octants[outer].apex != octants[inner].apex || outer < inner)
}

/// Pairwise domination; quadratic in the number of octants.
pub fn compute_domination(octants: &[Octant]) -> Result<DominationDag> {
    if octants.is_empty() {
        return Err(Error::EmptyInput("octant list"));
    }
    let n = octants.len();
    let nondominated: Vec<usize> = (0..n)
        .filter(|&i| !(0..n).any(|j| strictly_dominates(octants, j, i)))
        .collect();
    let mut dominator_of = BTreeMap::new();
    for i in 0..n {
        if nondominated.binary_search(&i).is_ok() {
            continue;
        }
        let d = nondominated
            .iter()
            .copied()
            .find(|&j| strictly_dominates(octants, j, i))
            .ok_or_else(|| Error::invariant(format!("octant #{i} has no nondominated dominator")))?;
        dominator_of.insert(i, d);
    }
    Ok(DominationDag {
        nondominated,
        dominator_of,
    })
}

/// Largest apex-sum of a pairwise intersection among `members`; a lone
/// octant gets its own apex sum plus one.
pub fn compute_cmax(octants: &[Octant], members: &[usize]) -> Result<Rational> {
    match members {
        [] => Err(Error::EmptyInput("nondominated octants")),
        [i] => {
            let [a, b, c] = &octants[*i].apex;
            Ok(a + b + c + Rational::one())
        }
        _ => {
            let mut best: Option<Rational> = None;
            for (k, &i) in members.iter().enumerate() {
                for &j in &members[k + 1..] {
                    let (p, q) = (&octants[i].apex, &octants[j].apex);
                    let cij: Rational = (0..3).map(|t| Rational::max_of(&p[t], &q[t]).clone()).sum();
                    if best.as_ref().is_none_or(|b| &cij > b) {
                        best = Some(cij);
                    }
                }
            }
            Ok(best.unwrap())
        }
    }
}

/// Cuts of `members` by the plane `x + y + z = cmax`, in member order.
pub fn project(octants: &[Octant], members: &[usize], cmax: &Rational) -> Result<Vec<PlaneTriangle>> {
    members
        .iter()
        .map(|&i| {
            let [a, b, c] = &octants[i].apex;
            let t = PlaneTriangle::new(a.clone(), b.clone(), cmax - c);
            if !t.is_nonempty() {
                return Err(Error::invariant(format!(
                    "octant #{i} misses the plane x+y+z = {cmax}"
                )));
            }
            Ok(t)
        })
        .collect()
}

fn check_projection(triangles: &[PlaneTriangle]) -> Result<()> {
    for (i, t) in triangles.iter().enumerate() {
        for (j, o) in triangles.iter().enumerate() {
            if i == j {
                continue;
            }
            if !t.intersects(o) {
                return Err(Error::invariant(format!("projected triangles {i} and {j} are disjoint")));
            }
            if t.contains_triangle(o) {
                return Err(Error::invariant(format!("projected triangle {i} contains {j}")));
            }
        }
    }
    Ok(())
}

/// Proper coloring with at most 4 colors of the hypergraph of `edges` on `n`
/// vertices: greedy along a degeneracy order of the size-2 edges (the
/// Delaunay graph), then exact backtracking if that is not proper.
pub fn color_hypergraph4(n: usize, edges: &[Vec<usize>]) -> Result<Vec<Color>> {
    let adj = pair_graph(n, edges);
    let mut greedy = vec![0; n];
    for v in degeneracy_order(&adj) {
        let mut c = 1;
        while adj[v].iter().any(|&w| greedy[w] == c) {
            c += 1;
        }
        greedy[v] = c;
    }
    if greedy.iter().all(|&c| c <= 4) && is_proper(edges, &greedy) {
        return Ok(greedy);
    }
    find_proper_coloring(n, edges, 4).ok_or(Error::NoFourColoring { size: n })
}

/// Proper coloring with at most 4 colors of the hypergraph induced by `triangles`.
pub fn color_triangles(triangles: &[PlaneTriangle], cap: usize) -> Result<Vec<Color>> {
    if triangles.len() > cap {
        return Err(Error::SizeCap {
            what: "triangle coloring",
            size: triangles.len(),
            cap,
        });
    }
    let edges: Vec<Vec<usize>> = enumerate_triangle_hyperedges(triangles, cap)?
        .edges()
        .cloned()
        .collect();
    color_hypergraph4(triangles.len(), &edges)
}

/// Intermediate products of the octant pipeline, for inspection and reports.
#[derive(Debug, Clone)]
pub struct OctantPipeline {
    pub domination: DominationDag,
    pub cmax: Rational,
    pub triangles: Vec<PlaneTriangle>,
    pub triangle_colors: Vec<Color>,
    pub coloring: Coloring,
}

/// Runs the full pipeline without the final check on the octant hypergraph.
pub fn octant_pipeline(octants: &[Octant], cap: usize) -> Result<OctantPipeline> {
    if octants.len() > cap {
        return Err(Error::SizeCap {
            what: "octant coloring",
            size: octants.len(),
            cap,
        });
    }
    let domination = compute_domination(octants)?;
    let members = &domination.nondominated;
    let cmax = compute_cmax(octants, members)?;
    let triangles = project(octants, members, &cmax)?;
    check_projection(&triangles)?;
    let triangle_colors = color_triangles(&triangles, cap)?;

    let coloring = lift(octants.len(), &domination, &triangle_colors)?;
    Ok(OctantPipeline {
        domination,
        cmax,
        triangles,
        triangle_colors,
        coloring,
    })
}

/// Outcome of [`color_octants_detailed`].
#[derive(Debug, Clone)]
pub struct OctantColoring {
    pub coloring: Coloring,
    pub pipeline: OctantPipeline,
    /// The hyperedge and witness the projected coloring left monochromatic,
    /// in which case the nondominated octants were recolored against their
    /// own hyperedges.
    pub projection_failure: Option<(Vec<usize>, Point)>,
}

pub fn color_octants(instance: &Instance) -> Result<Coloring> {
    color_octants_capped(instance, DEFAULT_OCTANT_CAP)
}

pub fn color_octants_capped(instance: &Instance, cap: usize) -> Result<Coloring> {
    Ok(color_octants_detailed(instance, cap)?.coloring)
}

fn lift(n: usize, domination: &DominationDag, member_colors: &[Color]) -> Result<Coloring> {
    let mut colors = vec![0; n];
    for (&i, &c) in domination.nondominated.iter().zip(member_colors) {
        colors[i] = c;
    }
    for (&i, &d) in &domination.dominator_of {
        colors[i] = if colors[d] == 1 { 2 } else { 1 };
    }
    Coloring::new(colors, 4)
}

/// Projection pipeline followed by a brute-force check on the octants.
///
/// The plane only sees covering sets that occur on it, while a pair of
/// nondominated octants can meet far above it with no point of the plane
/// covered by exactly that pair. When the check finds such a monochromatic
/// edge, the nondominated octants are recolored with the same 4-coloring
/// search, constrained by every covering set the octants realize in space.
/// Dominated octants always share their edges with their dominator, so this
/// recoloring lifts to a proper coloring. The failure is kept in the result.
pub fn color_octants_detailed(instance: &Instance, cap: usize) -> Result<OctantColoring> {
    let octants = instance.octants()?;
    let pipeline = octant_pipeline(&octants, cap)?;
    let space_edges = enumerate_hyperedges_capped(instance, cap.max(octants.len()))?;
    let first_failure = match check_proper_edges(&space_edges, &pipeline.coloring.colors) {
        Verdict::Proper => {
            return Ok(OctantColoring {
                coloring: pipeline.coloring.clone(),
                pipeline,
                projection_failure: None,
            })
        }
        Verdict::Monochromatic { edge, witness, .. } => (edge, witness),
    };

    let members = &pipeline.domination.nondominated;
    let mut local = vec![usize::MAX; octants.len()];
    for (k, &i) in members.iter().enumerate() {
        local[i] = k;
    }
    let mut member_edges: Vec<Vec<usize>> = space_edges
        .edges()
        .map(|e| e.iter().filter(|&&i| local[i] != usize::MAX).map(|&i| local[i]).collect::<Vec<_>>())
        .filter(|e| e.len() >= 2)
        .collect();
    member_edges.sort();
    member_edges.dedup();
    let member_colors = color_hypergraph4(members.len(), &member_edges)?;
    let coloring = lift(octants.len(), &pipeline.domination, &member_colors)?;
    match check_proper_edges(&space_edges, &coloring.colors) {
        Verdict::Proper => Ok(OctantColoring {
            coloring,
            pipeline,
            projection_failure: Some(first_failure),
        }),
        Verdict::Monochromatic { edge, color, witness } => Err(Error::AlgorithmInvariant {
            message: format!("octants {edge:?} all received color {color}"),
            witness: Some(witness),
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::{GeomObject, ObjectClass};
    use crate::oracle::{check_proper, dense_triangle_hyperedges};
    use proptest::prelude::*;

    fn oct(a: i64, b: i64, c: i64) -> Octant {
        Octant::new(a.into(), b.into(), c.into())
    }

    fn instance(octs: Vec<Octant>) -> Instance {
        Instance::unit(ObjectClass::Octants, octs.into_iter().map(GeomObject::Octant).collect(), vec![]).unwrap()
    }

    #[test]
    fn domination_examples() {
        let d = compute_domination(&[oct(0, 0, 0), oct(1, 1, 1)]).unwrap();
        assert_eq!(d.nondominated, vec![0]);
        assert_eq!(d.dominator_of, BTreeMap::from([(1, 0)]));
        let d = compute_domination(&[oct(0, 1, 0), oct(1, 0, 0)]).unwrap();
        assert_eq!(d.nondominated, vec![0, 1]);
        let d = compute_domination(&[oct(0, 0, 0), oct(0, 0, 0)]).unwrap();
        assert_eq!(d.nondominated, vec![0]);
        assert_eq!(d.dominator_of, BTreeMap::from([(1, 0)]));
        assert!(compute_domination(&[]).is_err());
    }

    #[test]
    fn cmax_examples() {
        let o = [oct(0, 1, 0), oct(1, 0, 0)];
        assert_eq!(compute_cmax(&o, &[0, 1]).unwrap(), Rational::from_integer(2));
        assert_eq!(compute_cmax(&[oct(0, 0, 0)], &[0]).unwrap(), Rational::one());
        let three = [oct(0, 1, 2), oct(2, 0, 1), oct(1, 2, 0)];
        let cmax = compute_cmax(&three, &[0, 1, 2]).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                let s: Rational = (0..3)
                    .map(|t| Rational::max_of(&three[i].apex[t], &three[j].apex[t]).clone())
                    .sum();
                assert!(s <= cmax);
            }
        }
    }

    #[test]
    fn projection_examples() {
        let t = project(&[oct(0, 0, 0)], &[0], &Rational::from_integer(3)).unwrap();
        assert_eq!(t, vec![PlaneTriangle::new(0.into(), 0.into(), 3.into())]);
        let o = [oct(0, 1, 0), oct(1, 0, 0)];
        let t = project(&o, &[0, 1], &Rational::from_integer(2)).unwrap();
        assert!(t[0].is_nonempty() && t[1].is_nonempty() && t[0].intersects(&t[1]));
        assert!(project(&[oct(5, 5, 5)], &[0], &Rational::from_integer(3)).is_err());
    }

    #[test]
    fn single_triangle_gets_color_one() {
        let t = [PlaneTriangle::new(0.into(), 0.into(), 1.into())];
        assert_eq!(color_triangles(&t, 40).unwrap(), vec![1]);
    }

    #[test]
    fn dominated_pair_differs() {
        let inst = instance(vec![oct(0, 0, 0), oct(1, 1, 1)]);
        let c = color_octants(&inst).unwrap();
        assert_ne!(c.color(0), c.color(1));
    }

    #[test]
    fn four_pairwise_cells_need_four_colors() {
        let t: Vec<PlaneTriangle> = [(2, 5, 14), (6, 0, 13), (3, 3, 10), (2, 2, 9)]
            .iter()
            .map(|&(a, b, s)| PlaneTriangle::new(a.into(), b.into(), s.into()))
            .collect();
        let colors = color_triangles(&t, 40).unwrap();
        let mut sorted = colors.clone();
        sorted.sort();
        assert_eq!(sorted, vec![1, 2, 3, 4]);
        let edges = dense_triangle_hyperedges(&t);
        assert!(check_proper_edges(&edges, &colors).is_proper());
    }

    #[test]
    fn backtracking_handles_odd_hyperedges() {
        // greedy gives 0,1 -> {1,2}, 2 -> 3, 3 -> 1 and {0,3,4} ends up
        // monochromatic unless the search reassigns
        let edges = vec![vec![0, 1], vec![1, 2], vec![0, 2], vec![2, 3], vec![0, 3, 4], vec![1, 4]];
        let c = color_hypergraph4(5, &edges).unwrap();
        for e in &edges {
            assert!(e.iter().any(|&i| c[i] != c[e[0]]), "{e:?} monochromatic in {c:?}");
        }
        assert!(c.iter().all(|&x| (1..=4).contains(&x)));
    }

    #[test]
    fn projection_misses_a_spatial_pair() {
        let inst = instance(vec![oct(4, 0, 0), oct(3, 0, 3), oct(0, 3, 1), oct(0, 1, 2), oct(0, 4, 0), oct(1, 1, 0)]);
        let out = color_octants_detailed(&inst, 40).unwrap();
        let (edge, witness) = out.projection_failure.clone().expect("projection alone is not proper here");
        assert_eq!(crate::geom::depth(&inst, &witness).unwrap().1.into_iter().collect::<Vec<_>>(), edge);
        assert!(!check_proper(&inst, &out.pipeline.coloring).unwrap().is_proper());
        assert!(check_proper(&inst, &out.coloring).unwrap().is_proper());
    }

    #[test]
    fn size_cap() {
        let octs: Vec<Octant> = (0..41).map(|i| oct(i, -i, 0)).collect();
        assert!(matches!(
            color_octants(&instance(octs)),
            Err(Error::SizeCap { size: 41, cap: 40, .. })
        ));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]

        #[test]
        fn pipeline_invariants(apexes in prop::collection::vec(prop::array::uniform3(0i64..5), 1..16)) {
            let octs: Vec<Octant> = apexes.iter().map(|a| oct(a[0], a[1], a[2])).collect();
            let dag = compute_domination(&octs).unwrap();
            for &i in &dag.nondominated {
                prop_assert!(!(0..octs.len()).any(|j| j != i && octs[j].dominates(&octs[i]) && octs[j].apex != octs[i].apex));
            }
            for i in 0..octs.len() {
                prop_assert!(dag.nondominated.contains(&i) || dag.dominator_of.contains_key(&i));
            }
            let inst = instance(octs);
            let c = color_octants(&inst).unwrap();
            prop_assert!(c.used() <= 4);
            prop_assert!(check_proper(&inst, &c).unwrap().is_proper());
        }
    }
}
