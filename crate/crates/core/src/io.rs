//! JSON documents, CSV point clouds and the bundled datasets.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::covering::{CoverEntry, Covering, GraphBox, Mode, RangeBounds, ReferenceTable, Rhombus};
use crate::error::{Error, Result};
use crate::model::{build_system, FifSystem, InterpolationData, Point};

pub const FORMAT_VERSION: u32 = 1;

fn default_version() -> u32 {
    FORMAT_VERSION
}

/// Interpolation input: `{"x": [...], "y": [...], "d": [...], "name": "..."}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InputDocument {
    #[serde(default = "default_version")]
    pub format_version: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub x: Vec<f64>,
    pub y: Vec<f64>,
    pub d: Vec<f64>,
}

impl InputDocument {
    pub fn data(&self) -> Result<InterpolationData> {
        InterpolationData::new(self.x.clone(), self.y.clone(), self.d.clone())
    }

    pub fn system(&self) -> Result<FifSystem> {
        self.data().map(build_system)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("input documents always serialize")
    }
}

fn from_json<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::MalformedDocument {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })
}

fn check_version(found: u32) -> Result<()> {
    if found == FORMAT_VERSION {
        Ok(())
    } else {
        Err(Error::malformed(format!(
            "unsupported format_version {found} (expected {FORMAT_VERSION})"
        )))
    }
}

/// Parses and validates an input document.
pub fn parse_input(text: &str) -> Result<InputDocument> {
    let doc: InputDocument = from_json(text)?;
    check_version(doc.format_version)?;
    doc.data()?;
    Ok(doc)
}

pub fn parse_reference(text: &str) -> Result<ReferenceTable> {
    let table: ReferenceTable = from_json(text)?;
    check_version(table.format_version)?;
    Ok(table)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RhombusRecord {
    /// 1-based letters.
    pub word: Vec<usize>,
    pub center: [f64; 2],
    pub radius: f64,
    pub lipschitz: f64,
    pub vertices: [[f64; 2]; 4],
}

/// Serialized form of a [`Covering`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoveringDocument {
    pub format_version: u32,
    pub mode: Mode,
    pub n_maps: usize,
    pub depth: usize,
    pub theta: f64,
    pub big_m: f64,
    pub bounds: RangeBounds,
    #[serde(rename = "box")]
    pub graph_box: GraphBox,
    #[serde(default)]
    pub deviations: Vec<String>,
    pub rhombi: Vec<RhombusRecord>,
}

impl CoveringDocument {
    pub fn from_covering(c: &Covering) -> Self {
        let rhombi = c
            .entries()
            .iter()
            .enumerate()
            .map(|(i, e)| RhombusRecord {
                word: c.word(i).letters().to_vec(),
                center: [e.rhombus.center.x, e.rhombus.center.y],
                radius: e.rhombus.radius,
                lipschitz: e.lipschitz,
                vertices: e.rhombus.vertices().map(|v| [v.x, v.y]),
            })
            .collect();
        CoveringDocument {
            format_version: FORMAT_VERSION,
            mode: c.mode(),
            n_maps: c.n_maps(),
            depth: c.depth(),
            theta: c.theta(),
            big_m: c.big_m(),
            bounds: c.bounds(),
            graph_box: c.graph_box(),
            deviations: c.deviations().iter().map(|s| s.to_string()).collect(),
            rhombi,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("covering documents always serialize")
    }

    pub fn parse(text: &str) -> Result<Self> {
        let doc: CoveringDocument = from_json(text)?;
        check_version(doc.format_version)?;
        Ok(doc)
    }

    /// Rebuilds the covering, checking every structural invariant on the way.
    pub fn into_covering(self) -> Result<Covering> {
        let bad = |msg: String| Err(Error::malformed(msg));
        let expected = u32::try_from(self.depth)
            .ok()
            .and_then(|m| self.n_maps.checked_pow(m));
        if expected != Some(self.rhombi.len()) {
            return bad(format!(
                "{} rhombi for n = {}, depth = {}",
                self.rhombi.len(),
                self.n_maps,
                self.depth
            ));
        }
        if !(self.theta > 0.0 && self.theta.is_finite()) {
            return bad(format!("theta must be positive, got {}", self.theta));
        }
        let mut entries = Vec::with_capacity(self.rhombi.len());
        for (i, rec) in self.rhombi.iter().enumerate() {
            let word = crate::analysis::Word::new(rec.word.clone(), self.n_maps)?;
            if word.depth() != self.depth || word.index(self.n_maps) != i {
                return bad(format!("rhombus {i} has word {word} out of lexicographic order"));
            }
            if !rec.radius.is_finite() || rec.radius < 0.0 || (self.big_m > 0.0 && rec.radius <= 0.0) {
                return bad(format!("rhombus {i} has invalid radius {}", rec.radius));
            }
            let rhombus = Rhombus::new(Point::new(rec.center[0], rec.center[1]), rec.radius, self.theta);
            for (v, stored) in rhombus.vertices().iter().zip(&rec.vertices) {
                if !close(v.x, stored[0]) || !close(v.y, stored[1]) {
                    return bad(format!("rhombus {i} vertices disagree with center and radius"));
                }
            }
            entries.push(CoverEntry {
                rhombus,
                lipschitz: rec.lipschitz,
            });
        }
        let covering = Covering::from_parts(
            self.n_maps,
            self.depth,
            self.mode,
            self.theta,
            self.big_m,
            entries,
            (self.graph_box.x_min, self.graph_box.x_max),
        );
        let b = covering.bounds();
        if !close(b.lower, self.bounds.lower) || !close(b.upper, self.bounds.upper) {
            return bad("stored bounds disagree with the rhombi".into());
        }
        Ok(covering)
    }
}

fn close(a: f64, b: f64) -> bool {
    (a - b).abs() <= 1e-12 * a.abs().max(b.abs()).max(1.0)
}

/// `x,y` header then one point per line, 17 significant digits.
pub fn sample_to_csv(points: &[Point]) -> String {
    let mut out = String::with_capacity(48 * points.len() + 4);
    out.push_str("x,y\n");
    for p in points {
        let _ = writeln!(out, "{:.16e},{:.16e}", p.x, p.y);
    }
    out
}

pub fn parse_sample_csv(text: &str) -> Result<Vec<Point>> {
    let mut lines = text.lines().enumerate();
    match lines.next() {
        Some((_, header)) if header.trim() == "x,y" => {}
        _ => return Err(Error::malformed("missing `x,y` header")),
    }
    lines
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, line)| {
            let err = |column| Error::MalformedDocument {
                line: i + 1,
                column,
                message: format!("expected two numbers, got `{line}`"),
            };
            let (x, y) = line.split_once(',').ok_or_else(|| err(1))?;
            let x: f64 = x.trim().parse().map_err(|_| err(1))?;
            let y: f64 = y.trim().parse().map_err(|_| err(x.to_string().len() + 2))?;
            Ok(Point::new(x, y))
        })
        .collect()
}

/// One line per rhombus: word, center, radius, Lipschitz constant.
pub fn covering_to_csv(c: &Covering) -> String {
    let mut out = String::from("word,u,v,radius,lipschitz\n");
    for (i, e) in c.entries().iter().enumerate() {
        let _ = writeln!(
            out,
            "{},{:.16e},{:.16e},{:.16e},{:.16e}",
            c.word(i),
            e.rhombus.center.x,
            e.rhombus.center.y,
            e.rhombus.radius,
            e.lipschitz
        );
    }
    out
}

/// The three reference datasets shipped with the crate and their published range tables.
pub mod datasets {
    use super::*;

    const INPUTS: [&str; 3] = [
        include_str!("../data/framework1.json"),
        include_str!("../data/framework2.json"),
        include_str!("../data/framework3.json"),
    ];

    const REFERENCES: [&str; 3] = [
        include_str!("../data/framework1.reference.json"),
        include_str!("../data/framework2.reference.json"),
        include_str!("../data/framework3.reference.json"),
    ];

    /// Dataset `i` in `1..=3`.
    pub fn framework(i: usize) -> InputDocument {
        parse_input(INPUTS[i - 1]).expect("bundled dataset is valid")
    }

    pub fn reference(i: usize) -> ReferenceTable {
        parse_reference(REFERENCES[i - 1]).expect("bundled reference is valid")
    }

    pub fn system(i: usize) -> FifSystem {
        framework(i).system().expect("bundled dataset is valid")
    }
}
