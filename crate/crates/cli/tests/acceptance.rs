//! Acceptance criteria, one line per criterion. Runs as a plain binary so the
//! lines print regardless of test output capture; exits non-zero if any
//! criterion fails.

use std::collections::BTreeSet;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use serde_json::Value;

use geoextract_core::axis2d::{clip_rays_to_box, RayTypeProfile};
use geoextract_core::extraction::{exact_extraction_number, exact_min_cover, extract, max_independent_set};
use geoextract_core::generators::{
    gen_kbox, gen_octant4, gen_random, gen_random_rays, gen_rayfan,
};
use geoextract_core::octants::color_octants_detailed;
use geoextract_core::oracle::{check_cover, check_proper, dense_hyperedges, enumerate_hyperedges};
use geoextract_core::rational::q;
use geoextract_core::{
    color_instance, depth, GeomObject, Instance, ObjectClass, Orientation, Rational,
};

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn r(n: i64) -> Rational {
    Rational::from_integer(n)
}

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

const CLASSES: [ObjectClass; 4] = [
    ObjectClass::Intervals,
    ObjectClass::Segments,
    ObjectClass::Rays,
    ObjectClass::Octants,
];

fn cli_json(args: &[&str]) -> Result<Value, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_geoextract"))
        .args(args)
        .output()
        .map_err(err)?;
    if !out.status.success() {
        return Err(format!("{args:?}: {}", String::from_utf8_lossy(&out.stderr)));
    }
    serde_json::from_slice(&out.stdout).map_err(err)
}

fn interval_pair() -> Outcome {
    let dir = tempfile::tempdir().map_err(err)?;
    let path = dir.path().join("pair.json");
    let path = path.to_str().unwrap();
    cli_json(&["gen", "--kind", "interval-pair", "--out", path])?;
    let bounds = cli_json(&["bounds", path])?;
    let alpha = &bounds["payload"]["extraction_number"];
    ensure!(*alpha == 2, "bounds reports extraction number {alpha}");
    let ext = cli_json(&["extract", path])?;
    let ratio = &ext["payload"]["ratio"];
    ensure!(*ratio == 2, "extract ratio {ratio}");
    Ok("extraction number 2, extract ratio 2".into())
}

fn rayfan_bounds() -> Outcome {
    for k in 2..=5i64 {
        let inst = gen_rayfan(k as u32).map_err(err)?;
        let (cover, w) = exact_min_cover(&inst).map_err(err)?;
        ensure!(cover.len() as i64 == 2 * k - 1 && w == r(2 * k - 1), "k={k}: cover {cover:?} weight {w}");
        let alpha = exact_extraction_number(&inst).map_err(err)?;
        ensure!(alpha == q(3 * k, k + 1), "k={k}: extraction number {alpha}");
    }
    Ok("k=2..5 cover 2k-1, extraction number 3k/(k+1) (k=4: 12/5)".into())
}

fn intersection_pairs(inst: &Instance) -> Result<Vec<(usize, usize)>, String> {
    let mut pairs = BTreeSet::new();
    for e in enumerate_hyperedges(inst).map_err(err)?.edges() {
        for a in 0..e.len() {
            for b in a + 1..e.len() {
                pairs.insert((e[a], e[b]));
            }
        }
    }
    Ok(pairs.into_iter().collect())
}

fn rayfan_independence() -> Outcome {
    for k in 1..=5usize {
        let inst = gen_rayfan(k as u32).map_err(err)?;
        let mis = max_independent_set(inst.len(), &intersection_pairs(&inst)?);
        ensure!(mis.len() == k + 1, "k={k}: independence number {}", mis.len());
    }
    Ok("k=1..5 independence number k+1".into())
}

fn octant_tightness() -> Outcome {
    let inst = gen_octant4().map_err(err)?;
    let (cover, _) = exact_min_cover(&inst).map_err(err)?;
    ensure!(cover.len() == 3, "min cover {cover:?}");
    let alpha = exact_extraction_number(&inst).map_err(err)?;
    ensure!(alpha == r(4), "extraction number {alpha}");
    let out = color_octants_detailed(&inst, 40).map_err(err)?;
    ensure!(out.projection_failure.is_none(), "projection needed repair");
    ensure!(out.coloring.kappa == 4 && out.coloring.used() == 4, "coloring {:?}", out.coloring);
    ensure!(check_proper(&inst, &out.coloring).map_err(err)?.is_proper(), "coloring not proper");
    Ok("min cover 3, extraction number 4, proper 4-coloring".into())
}

fn kbox() -> Outcome {
    let mut alphas = Vec::new();
    for k in 2..=3u32 {
        let inst = gen_kbox(k).map_err(err)?;
        let m = 4 * (k as usize).pow(2);
        ensure!(inst.len() == m, "k={k}: {} segments", inst.len());
        for p in inst.points() {
            let d = depth(&inst, p).map_err(err)?.0;
            ensure!(d == 2, "k={k}: point {p} depth {d}");
        }
        let c = color_instance(&inst, None).map_err(err)?;
        ensure!(c.used() <= 4, "k={k}: {} colors", c.used());
        ensure!(check_proper(&inst, &c).map_err(err)?.is_proper(), "k={k}: coloring not proper");
        let e = extract(&inst, &c).map_err(err)?;
        ensure!(e.extracted_weight >= r(m as i64 / 4), "k={k}: removed {}", e.extracted_weight);
        alphas.push(exact_extraction_number(&inst).map_err(err)?);
    }
    ensure!(alphas == vec![r(2), q(12, 5)], "extraction numbers {alphas:?}");
    ensure!(alphas[1] > alphas[0], "not increasing");
    Ok("m=4k^2, depths 2, proper <=4 colors, removed >= m/4, extraction number 2 < 12/5".into())
}

fn color_cap(inst: &Instance) -> Result<usize, String> {
    Ok(match inst.class() {
        ObjectClass::Intervals => 2,
        ObjectClass::Segments | ObjectClass::Octants => 4,
        ObjectClass::Rays => RayTypeProfile::of(&inst.rays().map_err(err)?).kind().max(2),
    })
}

fn property_suites() -> Outcome {
    let mut count = 0;
    for class in CLASSES {
        let max_n = if class == ObjectClass::Octants { 10 } else { 12 };
        for seed in 0..200u64 {
            let n = 1 + seed as usize % max_n;
            let inst = gen_random(class, n, seed).map_err(err)?;
            let tag = format!("{class} n={n} seed={seed}");
            let c = color_instance(&inst, None).map_err(|e| format!("{tag}: {e}"))?;
            ensure!(check_proper(&inst, &c).map_err(err)?.is_proper(), "{tag}: not proper");
            let cap = color_cap(&inst)?;
            ensure!(c.kappa as usize <= cap && c.used() <= cap, "{tag}: kappa {} above {cap}", c.kappa);
            let e = extract(&inst, &c).map_err(|e| format!("{tag}: {e}"))?;
            ensure!(
                &e.extracted_weight * r(c.kappa as i64) >= e.total_weight,
                "{tag}: removed {} of {}",
                e.extracted_weight,
                e.total_weight
            );
            ensure!(check_cover(&inst, &e.sol).map_err(err)?.is_covered(), "{tag}: sol not a cover");
            count += 1;
        }
    }
    Ok(format!("{count} instances proper, within color caps, removed >= W/kappa, sol covers"))
}

fn oracle_self_check() -> Outcome {
    let mut count = 0;
    for class in CLASSES {
        for seed in 0..100u64 {
            let n = 1 + seed as usize % 8;
            let inst = gen_random(class, n, 10_000 + seed).map_err(err)?;
            let grid = enumerate_hyperedges(&inst).map_err(err)?.edge_set();
            let dense = dense_hyperedges(&inst).map_err(err)?.edge_set();
            ensure!(grid == dense, "{class} n={n} seed={}: event grid and dense grid differ", 10_000 + seed);
            count += 1;
        }
    }
    Ok(format!("{count} instances, event grid equals dense grid"))
}

fn clipping() -> Outcome {
    let mut count = 0;
    for seed in 0..120u64 {
        let n = 4 + seed as usize % 9;
        let inst = gen_random_rays(n, 20_000 + seed, &Orientation::ALL).map_err(err)?;
        let rays = inst.rays().map_err(err)?;
        ensure!(RayTypeProfile::of(&rays).kind() == 4, "seed {seed}: not type 4");
        let clipped = clip_rays_to_box(&rays).map_err(err)?;
        let mut segs = vec![None; rays.len()];
        for (ray, &s) in clipped.segment_of.iter().enumerate() {
            segs[ray] = Some(GeomObject::Segment(clipped.segments[s].clone()));
        }
        let seg_inst = Instance::unit(ObjectClass::Segments, segs.into_iter().map(Option::unwrap).collect(), vec![])
            .map_err(err)?;
        let a = enumerate_hyperedges(&inst).map_err(err)?.edge_set();
        let b = enumerate_hyperedges(&seg_inst).map_err(err)?.edge_set();
        ensure!(a == b, "seed {seed}: ray and clipped hyperedges differ");
        count += 1;
    }
    Ok(format!("{count} type-4 instances, ray and clipped hyperedges equal"))
}

struct Criterion {
    number: u32,
    name: &'static str,
    limit: Duration,
    run: fn() -> Outcome,
}

fn main() -> ExitCode {
    let criteria = [
        Criterion { number: 1, name: "tight interval pair", limit: Duration::from_secs(1), run: interval_pair },
        Criterion { number: 2, name: "ray fan cover and extraction", limit: Duration::from_secs(10), run: rayfan_bounds },
        Criterion { number: 3, name: "ray fan independence", limit: Duration::from_secs(10), run: rayfan_independence },
        Criterion { number: 4, name: "octant tightness", limit: Duration::from_secs(5), run: octant_tightness },
        Criterion { number: 5, name: "k-box", limit: Duration::from_secs(60), run: kbox },
        Criterion { number: 6, name: "property suites", limit: Duration::from_secs(120), run: property_suites },
        Criterion { number: 7, name: "oracle self-validation", limit: Duration::from_secs(60), run: oracle_self_check },
        Criterion { number: 8, name: "clipping equivalence", limit: Duration::from_secs(30), run: clipping },
    ];
    let mut failed = 0;
    for c in &criteria {
        let start = Instant::now();
        let outcome = (c.run)();
        let took = start.elapsed();
        let outcome = match outcome {
            Ok(detail) if took > c.limit => Err(format!("{detail}, but took {took:.2?} (limit {:?})", c.limit)),
            other => other,
        };
        match outcome {
            Ok(detail) => println!("criterion {} {}: PASS ({took:.2?}) {detail}", c.number, c.name),
            Err(why) => {
                failed += 1;
                println!("criterion {} {}: FAIL ({took:.2?}) {why}", c.number, c.name);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
