//! JSON map documents.
//!
//! ```json
//! {"version": 1,
//!  "params": {"gamma": 1.0, "delta": 1.0, "lambda": 0.0},
//!  "s_coeffs": [[0, 0], [1, 0]],
//!  "t_coeffs": [],
//!  "meta": {"source": "hand-written"}}
//! ```
//!
//! `params` and `meta` are optional; an empty `t_coeffs` means `t ≡ 0`. The
//! shorter coefficient list is zero-padded to the longer one on load. Numbers
//! are written with 17 significant digits.

use std::collections::BTreeMap;
use std::fs::File;
use std::io::{self, BufReader, BufWriter, Read, Write};
use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use serde_json::ser::{Formatter, PrettyFormatter};

use crate::harmonic::{ClassParams, HarmonicMap};
use crate::series::TruncatedSeries;
use crate::{Error, Result};

pub const DOCUMENT_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ParamsDocument {
    pub gamma: f64,
    pub delta: f64,
    pub lambda: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapDocument {
    pub version: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub params: Option<ParamsDocument>,
    pub s_coeffs: Vec<[f64; 2]>,
    pub t_coeffs: Vec<[f64; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub meta: Option<BTreeMap<String, String>>,
}

/// A validated document.
#[derive(Debug, Clone, PartialEq)]
pub struct LoadedMap {
    pub map: HarmonicMap,
    pub params: Option<ClassParams>,
    pub meta: Option<BTreeMap<String, String>>,
}

fn to_series(coeffs: &[[f64; 2]], field: &str) -> Result<TruncatedSeries> {
    if let Some(i) = coeffs
        .iter()
        .position(|c| !(c[0].is_finite() && c[1].is_finite()))
    {
        return Err(Error::Schema {
            path: format!("{field}[{i}]"),
            message: "coefficient must be finite".into(),
        });
    }
    let values: Vec<Complex64> = coeffs.iter().map(|c| Complex64::new(c[0], c[1])).collect();
    if values.is_empty() {
        Ok(TruncatedSeries::zeros(1))
    } else {
        TruncatedSeries::new(values)
    }
}

fn from_series(s: &TruncatedSeries) -> Vec<[f64; 2]> {
    s.coeffs().iter().map(|c| [c.re, c.im]).collect()
}

impl MapDocument {
    pub fn validate(&self) -> Result<LoadedMap> {
        if self.version != DOCUMENT_VERSION {
            return Err(Error::Schema {
                path: "version".into(),
                message: format!(
                    "unsupported version {}, expected {DOCUMENT_VERSION}",
                    self.version
                ),
            });
        }
        if self.s_coeffs.len() < 2 {
            return Err(Error::Schema {
                path: "s_coeffs".into(),
                message: "needs at least the coefficients of 1 and z".into(),
            });
        }
        let params = self
            .params
            .map(|p| ClassParams::new(p.gamma, p.delta, p.lambda))
            .transpose()?;
        let s = to_series(&self.s_coeffs, "s_coeffs")?;
        let t = to_series(&self.t_coeffs, "t_coeffs")?;
        Ok(LoadedMap {
            map: HarmonicMap::new(s, t)?,
            params,
            meta: self.meta.clone(),
        })
    }

    pub fn from_map(
        map: &HarmonicMap,
        params: Option<&ClassParams>,
        meta: Option<BTreeMap<String, String>>,
    ) -> Self {
        Self {
            version: DOCUMENT_VERSION,
            params: params.map(|p| ParamsDocument {
                gamma: p.gamma(),
                delta: p.delta(),
                lambda: p.lambda(),
            }),
            s_coeffs: from_series(map.s()),
            t_coeffs: from_series(map.t()),
            meta,
        }
    }
}

impl LoadedMap {
    pub fn to_document(&self) -> MapDocument {
        MapDocument::from_map(&self.map, self.params.as_ref(), self.meta.clone())
    }
}

/// Parses a document, reporting schema errors with the offending field path.
pub fn parse_document<R: Read>(reader: R) -> Result<MapDocument> {
    let mut de = serde_json::Deserializer::from_reader(reader);
    serde_path_to_error::deserialize(&mut de).map_err(|err| {
        let path = err.path().to_string();
        Error::Schema {
            path,
            message: err.into_inner().to_string(),
        }
    })
}

pub fn load_map_from_reader<R: Read>(reader: R) -> Result<LoadedMap> {
    parse_document(reader)?.validate()
}

pub fn load_map(path: &Path) -> Result<LoadedMap> {
    let file = File::open(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    load_map_from_reader(BufReader::new(file))
}

/// Pretty JSON with every float written as `{:.16e}`.
#[derive(Default)]
pub struct SignificantDigits<'a> {
    inner: PrettyFormatter<'a>,
}

impl Formatter for SignificantDigits<'_> {
    fn write_f64<W: ?Sized + Write>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        if value.is_finite() {
            write!(writer, "{value:.16e}")
        } else {
            writer.write_all(b"null")
        }
    }

    fn write_f32<W: ?Sized + Write>(&mut self, writer: &mut W, value: f32) -> io::Result<()> {
        self.write_f64(writer, f64::from(value))
    }

    fn begin_array<W: ?Sized + Write>(&mut self, writer: &mut W) -> io::Result<()> {
        self.inner.begin_array(writer)
    }

    fn end_array<W: ?Sized + Write>(&mut self, writer: &mut W) -> io::Result<()> {
        self.inner.end_array(writer)
    }

    fn begin_array_value<W: ?Sized + Write>(
        &mut self,
        writer: &mut W,
        first: bool,
    ) -> io::Result<()> {
        self.inner.begin_array_value(writer, first)
    }

    fn end_array_value<W: ?Sized + Write>(&mut self, writer: &mut W) -> io::Result<()> {
        self.inner.end_array_value(writer)
    }

    fn begin_object<W: ?Sized + Write>(&mut self, writer: &mut W) -> io::Result<()> {
        self.inner.begin_object(writer)
    }

    fn end_object<W: ?Sized + Write>(&mut self, writer: &mut W) -> io::Result<()> {
        self.inner.end_object(writer)
    }

    fn begin_object_key<W: ?Sized + Write>(
        &mut self,
        writer: &mut W,
        first: bool,
    ) -> io::Result<()> {
        self.inner.begin_object_key(writer, first)
    }

    fn begin_object_value<W: ?Sized + Write>(&mut self, writer: &mut W) -> io::Result<()> {
        self.inner.begin_object_value(writer)
    }

    fn end_object_value<W: ?Sized + Write>(&mut self, writer: &mut W) -> io::Result<()> {
        self.inner.end_object_value(writer)
    }
}

/// Serializes any value with [`SignificantDigits`].
pub fn to_json_string<T: Serialize + ?Sized>(value: &T) -> String {
    let mut out = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut out, SignificantDigits::default());
    value
        .serialize(&mut ser)
        .expect("serializing to memory cannot fail");
    String::from_utf8(out).expect("serde_json writes UTF-8")
}

pub fn write_document<W: Write>(doc: &MapDocument, mut writer: W) -> io::Result<()> {
    writer.write_all(to_json_string(doc).as_bytes())?;
    writer.write_all(b"\n")
}

pub fn save_document(doc: &MapDocument, path: &Path) -> Result<()> {
    let io_err = |source| Error::Io {
        path: path.to_path_buf(),
        source,
    };
    let file = File::create(path).map_err(io_err)?;
    let mut writer = BufWriter::new(file);
    write_document(doc, &mut writer).map_err(io_err)?;
    writer.flush().map_err(io_err)
}
