//! Exact JSON encodings: cell points (entry list or row-major matrix of
//! scalar strings), monomial exponent maps, chart points, and the datum
//! dump. Scalars always travel as strings, never floats.

use crate::cell::{CellError, CellPoint, MinimalSchubertDatum};
use crate::charts::ChartPoint;
use crate::field::{FieldError, FieldSpec, Value};
use crate::peaks::beta_pair_table;
use crate::sections::BetaMonomial;
use crate::stability::SemistabilityReport;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value as Json};
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum JsonError {
    #[error("invalid JSON: {0}")]
    Syntax(String),
    #[error("point must carry exactly one of `entries` or `matrix`")]
    EntriesOrMatrix,
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Cell(#[from] CellError),
}

#[derive(Serialize, Deserialize)]
struct EntryDto {
    i: usize,
    j: usize,
    value: String,
}

#[derive(Serialize, Deserialize)]
struct PointDto {
    r: usize,
    q: usize,
    field: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    entries: Option<Vec<EntryDto>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    matrix: Option<Vec<Vec<String>>>,
}

/// Serializes a point with its full entry list (zeros included).
pub fn point_to_json(p: &CellPoint) -> Json {
    let entries: Vec<EntryDto> = p
        .entries()
        .iter()
        .map(|(&(i, j), v)| EntryDto {
            i,
            j,
            value: v.render(),
        })
        .collect();
    serde_json::to_value(PointDto {
        r: p.r(),
        q: p.q(),
        field: p.field().to_string(),
        entries: Some(entries),
        matrix: None,
    })
    .expect("point serialization cannot fail")
}

/// The row-major matrix form with exact scalar strings.
pub fn point_matrix_json(p: &CellPoint) -> Json {
    let rows: Vec<Vec<String>> = p
        .to_matrix()
        .into_iter()
        .map(|row| row.into_iter().map(|v| v.render()).collect())
        .collect();
    serde_json::to_value(PointDto {
        r: p.r(),
        q: p.q(),
        field: p.field().to_string(),
        entries: None,
        matrix: Some(rows),
    })
    .expect("point serialization cannot fail")
}

/// Parses a point from either encoding. Entries not mentioned are zero.
pub fn point_from_str(text: &str) -> Result<CellPoint, JsonError> {
    let dto: PointDto = serde_json::from_str(text).map_err(|e| JsonError::Syntax(e.to_string()))?;
    let field = FieldSpec::parse(&dto.field)?;
    let datum = MinimalSchubertDatum::shared(dto.r, dto.q)?;
    match (dto.entries, dto.matrix) {
        (Some(entries), None) => {
            let parsed: Result<Vec<_>, JsonError> = entries
                .into_iter()
                .map(|e| Ok(((e.i, e.j), Value::parse(field, &e.value)?)))
                .collect();
            Ok(CellPoint::with_entries(datum, field, parsed?)?)
        }
        (None, Some(rows)) => {
            let parsed: Result<Vec<Vec<Value>>, JsonError> = rows
                .iter()
                .map(|row| {
                    row.iter()
                        .map(|s| Value::parse(field, s).map_err(JsonError::from))
                        .collect()
                })
                .collect();
            Ok(CellPoint::from_matrix(datum, field, &parsed?)?)
        }
        _ => Err(JsonError::EntriesOrMatrix),
    }
}

pub fn monomial_to_json(m: &BetaMonomial) -> Json {
    let exponents: Vec<Json> = m
        .exponents()
        .iter()
        .map(|(&(i, j), &e)| json!({"i": i, "j": j, "e": e}))
        .collect();
    json!({"exponents": exponents, "degree": m.degree()})
}

/// Chart point: the embedded base point (or null over a trivial base) plus
/// fiber components as exact scalar strings.
pub fn chart_point_to_json(c: &ChartPoint) -> Json {
    let fiber: Vec<String> = c.fiber.comps().iter().map(Value::render).collect();
    json!({
        "base": c.base.as_ref().map(point_to_json),
        "fiber": fiber,
    })
}

pub fn semistability_report_to_json(report: &SemistabilityReport) -> Json {
    let columns: Vec<Json> = report
        .columns
        .iter()
        .map(|c| json!({"j": c.column, "witness": c.witness}))
        .collect();
    json!({"semistable": report.semistable, "columns": columns})
}

/// Everything derivable from (r, q): word, one-line data, column sets,
/// interval roots with their epsilon-coordinates, and the peak pairing
/// table.
pub fn datum_dump_json(datum: &Arc<MinimalSchubertDatum>) -> Json {
    let betas: Vec<Json> = datum
        .betas()
        .iter()
        .map(|(&(i, j), beta)| {
            let eps: Vec<String> = beta.coords().iter().map(|c| c.to_string()).collect();
            json!({"i": i, "j": j, "eps": eps})
        })
        .collect();
    let pair_table: Vec<Json> = beta_pair_table(datum)
        .iter()
        .map(|(&(i, j), pairings)| {
            let row: Vec<String> = pairings.iter().map(|p| p.to_string()).collect();
            json!({"i": i, "j": j, "pairings": row})
        })
        .collect();
    let c_sets: Vec<&[usize]> = (1..=datum.r()).map(|j| datum.c_set(j)).collect();
    json!({
        "r": datum.r(),
        "q": datum.q(),
        "n": datum.n(),
        "word": datum.word().letters(),
        "one_line": datum.minimal_rep(),
        "permutation": datum.one_line().images(),
        "c_sets": c_sets,
        "betas": betas,
        "peak_pairing_table": pair_table,
        "cell_dimension": datum.cell_dimension(),
    })
}
