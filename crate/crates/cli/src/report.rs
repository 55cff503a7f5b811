use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use geoextract_core::document::canonical_instance;
use geoextract_core::generators::GeneratorSpec;
use geoextract_core::{Color, Coloring, Instance, Point, Rational};

/// Machine-readable result of one command.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Report {
    pub command: String,
    pub instance_digest: String,
    pub payload: Payload,
    pub timings: Timings,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Timings {
    pub parse_ms: f64,
    pub compute_ms: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Payload {
    Coloring {
        coloring: Coloring,
        colors_used: usize,
        colorer: String,
        /// Extraction number the colorer certifies, `None` when no bound is
        /// claimed for this input (rays of a single orientation).
        guarantee: Option<Color>,
        /// Whether the oracle confirmed properness; `None` above its size cap.
        verified: Option<bool>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        projection_failure: Option<ProjectionFailure>,
    },
    Extraction {
        sol: Vec<usize>,
        extracted: Vec<usize>,
        color: Color,
        kappa: Color,
        extracted_weight: Rational,
        total_weight: Rational,
        ratio: Rational,
        coloring_source: String,
    },
    Bounds {
        min_cover: Vec<usize>,
        min_cover_weight: Rational,
        total_weight: Rational,
        /// `None` when the only covers take every object.
        extraction_number: Option<Rational>,
        /// `None` when the instance is above the chromatic search cap.
        chromatic: Option<Color>,
    },
    Verdict(Verdict),
    Generated {
        generator: GeneratorSpec,
        objects: usize,
        points: usize,
    },
    Rendered {
        objects: usize,
        targets: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProjectionFailure {
    pub edge: Vec<usize>,
    pub witness: Point,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Verdict {
    Proper,
    Monochromatic {
        edge: Vec<usize>,
        color: Color,
        witness: Point,
    },
    Covered,
    Uncovered {
        index: usize,
        point: Point,
    },
}

/// Hex SHA-256 of the canonical instance document.
pub fn instance_digest(instance: &Instance) -> String {
    let hash = Sha256::digest(canonical_instance(instance).as_bytes());
    hash.iter().map(|b| format!("{b:02x}")).collect()
}
