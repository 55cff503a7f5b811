//! JSON instance documents.
//!
//! ```json
//! {
//!   "class": "rays",
//!   "objects": [{"orientation": 1, "apex": [0, "1/2"]}],
//!   "weights": [1],
//!   "points": [[3, "1/2"]]
//! }
//! ```
//!
//! Numbers are integers or `"p/q"` strings. `weights` defaults to all ones.
//! Unknown fields are rejected.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::geom::{Axis, Coloring, GeomObject, Instance, Interval, ObjectClass, Octant, Orientation, Point, Ray, Segment};
use crate::rational::Rational;

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct InstanceDoc {
    class: ObjectClass,
    objects: Vec<Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    weights: Option<Vec<Rational>>,
    #[serde(default)]
    points: Vec<Point>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    meta: BTreeMap<String, String>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct IntervalRec {
    a: Rational,
    b: Rational,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SegmentRec {
    axis: Axis,
    line: Rational,
    lo: Rational,
    hi: Rational,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RayRec {
    orientation: u8,
    apex: [Rational; 2],
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct OctantRec {
    apex: [Rational; 3],
}

fn parse_err(index: usize, e: impl std::fmt::Display) -> Error {
    Error::Parse(format!("object #{index}: {e}"))
}

fn object_from_value(class: ObjectClass, index: usize, v: Value) -> Result<GeomObject> {
    Ok(match class {
        ObjectClass::Intervals => {
            let r: IntervalRec = serde_json::from_value(v).map_err(|e| parse_err(index, e))?;
            GeomObject::Interval(Interval { a: r.a, b: r.b })
        }
        ObjectClass::Segments => {
            let r: SegmentRec = serde_json::from_value(v).map_err(|e| parse_err(index, e))?;
            GeomObject::Segment(Segment {
                axis: r.axis,
                line: r.line,
                lo: r.lo,
                hi: r.hi,
            })
        }
        ObjectClass::Rays => {
            let r: RayRec = serde_json::from_value(v).map_err(|e| parse_err(index, e))?;
            let orientation = Orientation::from_code(r.orientation).ok_or_else(|| {
                parse_err(index, format!("orientation {} is not in 1..=4", r.orientation))
            })?;
            let [x, y] = r.apex;
            GeomObject::Ray(Ray::new(orientation, x, y))
        }
        ObjectClass::Octants => {
            let r: OctantRec = serde_json::from_value(v).map_err(|e| parse_err(index, e))?;
            GeomObject::Octant(Octant { apex: r.apex })
        }
    })
}

fn object_to_value(o: &GeomObject) -> Value {
    let v = match o {
        GeomObject::Interval(i) => serde_json::to_value(IntervalRec {
            a: i.a.clone(),
            b: i.b.clone(),
        }),
        GeomObject::Segment(s) => serde_json::to_value(SegmentRec {
            axis: s.axis,
            line: s.line.clone(),
            lo: s.lo.clone(),
            hi: s.hi.clone(),
        }),
        GeomObject::Ray(r) => serde_json::to_value(RayRec {
            orientation: r.orientation.code(),
            apex: [r.x.clone(), r.y.clone()],
        }),
        GeomObject::Octant(o) => serde_json::to_value(OctantRec {
            apex: o.apex.clone(),
        }),
    };
    v.expect("object records always serialize")
}

/// Parses and validates an instance document.
pub fn parse_instance(text: &str) -> Result<Instance> {
    let doc: InstanceDoc = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    let objects = doc
        .objects
        .into_iter()
        .enumerate()
        .map(|(i, v)| object_from_value(doc.class, i, v))
        .collect::<Result<Vec<_>>>()?;
    let weights = doc
        .weights
        .unwrap_or_else(|| vec![Rational::one(); objects.len()]);
    let mut inst = Instance::new(doc.class, objects, weights, doc.points)?;
    for (k, v) in doc.meta {
        inst = inst.with_meta(&k, v);
    }
    Ok(inst)
}

fn to_doc(instance: &Instance, with_meta: bool) -> InstanceDoc {
    InstanceDoc {
        class: instance.class(),
        objects: instance.objects().iter().map(object_to_value).collect(),
        weights: Some(instance.weights().to_vec()),
        points: instance.points().to_vec(),
        meta: if with_meta {
            instance.meta().clone()
        } else {
            BTreeMap::new()
        },
    }
}

/// Pretty-printed document, including metadata.
pub fn write_instance(instance: &Instance) -> String {
    serde_json::to_string_pretty(&to_doc(instance, true)).expect("instance documents serialize")
}

/// Compact form without metadata and with explicit weights; equal instances
/// produce byte-identical output.
pub fn canonical_instance(instance: &Instance) -> String {
    serde_json::to_string(&to_doc(instance, false)).expect("instance documents serialize")
}

/// Parses a coloring document `{"kappa": k, "colors": [...]}`.
pub fn parse_coloring(text: &str) -> Result<Coloring> {
    let c: Coloring = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    c.validate()?;
    Ok(c)
}

pub fn write_coloring(coloring: &Coloring) -> String {
    serde_json::to_string_pretty(coloring).expect("colorings serialize")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    #[test]
    fn parses_every_class() {
        let iv = parse_instance(r#"{"class":"intervals","objects":[{"a":0,"b":"5/2"}],"points":[["1/2"]]}"#)
            .unwrap();
        assert_eq!(iv.len(), 1);
        assert_eq!(iv.weights(), &[Rational::one()]);
        assert_eq!(iv.points()[0], Point(vec![q(1, 2)]));

        let seg = parse_instance(
            r#"{"class":"segments","objects":[{"axis":"vertical","line":1,"lo":-1,"hi":2}],"weights":["3/4"]}"#,
        )
        .unwrap();
        assert_eq!(seg.weight(0), &q(3, 4));

        let ray = parse_instance(r#"{"class":"rays","objects":[{"orientation":4,"apex":[0,0]}]}"#).unwrap();
        assert_eq!(ray.rays().unwrap()[0].orientation, Orientation::Down);

        let oct = parse_instance(r#"{"class":"octants","objects":[{"apex":[0,1,"-2/3"]}],"points":[[1,1,1]]}"#)
            .unwrap();
        assert_eq!(oct.octants().unwrap()[0].apex[2], q(-2, 3));
    }

    #[test]
    fn rejects_unknown_fields() {
        assert!(parse_instance(r#"{"class":"intervals","objects":[],"extra":1}"#).is_err());
        assert!(parse_instance(r#"{"class":"intervals","objects":[{"a":0,"b":1,"c":2}]}"#).is_err());
    }

    #[test]
    fn rejects_bad_records() {
        assert!(parse_instance(r#"{"class":"intervals","objects":[{"a":1,"b":1}]}"#).is_err());
        assert!(parse_instance(r#"{"class":"rays","objects":[{"orientation":5,"apex":[0,0]}]}"#).is_err());
        assert!(parse_instance(r#"{"class":"octants","objects":[{"apex":[0,0]}]}"#).is_err());
        assert!(parse_instance(r#"{"class":"intervals","objects":[{"a":0,"b":1}],"weights":[0]}"#).is_err());
        assert!(parse_instance(r#"{"class":"intervals","objects":[{"a":0.5,"b":1}]}"#).is_err());
        assert!(parse_instance(r#"{"class":"intervals","objects":[{"a":0,"b":1}],"points":[[0,1]]}"#).is_err());
    }

    #[test]
    fn write_then_parse_is_identity() {
        let text = r#"{"class":"rays","objects":[{"orientation":1,"apex":[0,"1/2"]},{"orientation":3,"apex":[2,-1]}],"weights":[1,"2/3"],"points":[[2,"1/2"]],"meta":{"seed":"4"}}"#;
        let inst = parse_instance(text).unwrap();
        let again = parse_instance(&write_instance(&inst)).unwrap();
        assert_eq!(inst, again);
        assert_eq!(canonical_instance(&inst), canonical_instance(&again));
    }

    #[test]
    fn coloring_documents() {
        let c = parse_coloring(r#"{"kappa":2,"colors":[1,2,2]}"#).unwrap();
        assert_eq!(parse_coloring(&write_coloring(&c)).unwrap(), c);
        assert!(parse_coloring(r#"{"kappa":2,"colors":[3]}"#).is_err());
        assert!(parse_coloring(r#"{"kappa":2,"colors":[1],"x":0}"#).is_err());
    }
}
