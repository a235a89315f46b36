//! Chart functions over the quotient of the one-lower datum: the b-products
//! along descent sequences, their transition ratios and cocycle laws, the
//! chart map to (base, fiber) pairs, its inverse, the block-diagonal
//! transition description, and the dimension bookkeeping of the resulting
//! tower of projective bundles.

use crate::cell::{CellError, CellPoint, MinimalSchubertDatum};
use crate::field::{FieldSpec, Value};
use crate::peaks::{d_index, e_sequence, PeakError, WitnessTuple};
use crate::sample;
use crate::stability::{is_semistable, orbit_solve, OrbitOutcome, StabilityError};
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ChartError {
    #[error("point lies outside the chart: coordinate ({i},{j}) vanishes")]
    OutsideChart { i: usize, j: usize },
    #[error("point is not semistable (column {column} vanishes)")]
    NotSemistable { column: usize },
    #[error("witness tuple covers {got} columns, chart needs {expected}")]
    WitnessLength { got: usize, expected: usize },
    #[error("level {j} out of range 0..={max}")]
    LevelOutOfRange { j: usize, max: usize },
    #[error("fiber has {got} components, expected {expected}")]
    FiberLength { got: usize, expected: usize },
    #[error("fiber is identically zero")]
    ZeroFiber,
    #[error("base point required for a tower of height at least 2")]
    MissingBase,
    #[error("base point lives on ({r},{q}), expected ({er},{eq})")]
    BaseMismatch {
        r: usize,
        q: usize,
        er: usize,
        eq: usize,
    },
    #[error("field mismatch: {left} vs {right}")]
    FieldMismatch { left: String, right: String },
    #[error(transparent)]
    Cell(#[from] CellError),
    #[error(transparent)]
    Peak(#[from] PeakError),
    #[error(transparent)]
    Stability(#[from] StabilityError),
}

/// Homogeneous fiber coordinates, aligned with the last column index set of
/// the top datum.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiberVector {
    field: FieldSpec,
    comps: Vec<Value>,
}

impl FiberVector {
    pub fn new(field: FieldSpec, comps: Vec<Value>) -> Result<Self, ChartError> {
        for c in &comps {
            if c.spec() != field {
                return Err(ChartError::FieldMismatch {
                    left: c.spec().to_string(),
                    right: field.to_string(),
                });
            }
        }
        Ok(FiberVector { field, comps })
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn comps(&self) -> &[Value] {
        &self.comps
    }

    pub fn len(&self) -> usize {
        self.comps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.comps.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(Value::is_zero)
    }

    /// Equality up to a global nonzero scalar.
    pub fn projectively_equal(&self, other: &FiberVector) -> bool {
        if self.field != other.field || self.len() != other.len() {
            return false;
        }
        let Some(k0) = self.comps.iter().position(|c| !c.is_zero()) else {
            return other.is_zero();
        };
        if other.comps[k0].is_zero() {
            return false;
        }
        let scale = other.comps[k0].div(&self.comps[k0]).expect("nonzero");
        self.comps
            .iter()
            .zip(&other.comps)
            .all(|(a, b)| scale.mul(a) == *b)
    }
}

/// A chart image: a chosen orbit representative on the one-lower datum (none
/// when the tower has height 1) and homogeneous fiber coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChartPoint {
    pub base: Option<CellPoint>,
    pub fiber: FiberVector,
}

/// The chart function of level j: the product of the coordinates of `y`
/// along the descent sequence of the j-th witness. Level 0 is the constant
/// 1; a vanishing factor means `y` is outside the chart.
pub fn b_value(witness: &WitnessTuple, j: usize, y: &CellPoint) -> Result<Value, ChartError> {
    if j == 0 {
        return Ok(Value::one(y.field()));
    }
    if j > witness.m() {
        return Err(ChartError::LevelOutOfRange {
            j,
            max: witness.m(),
        });
    }
    let seq = e_sequence(witness, j, y.q())?;
    let mut acc = Value::one(y.field());
    for k in 0..seq.steps() {
        let col = seq.values()[k];
        let i = witness.index(col);
        let factor = y.get(i, col)?;
        if factor.is_zero() {
            return Err(ChartError::OutsideChart { i, j: col });
        }
        acc = acc.mul(factor);
    }
    Ok(acc)
}

/// The transition ratio between two charts at level j, defined on the
/// overlap; constant on orbits of the acting torus.
pub fn transition(
    j1: &WitnessTuple,
    j2: &WitnessTuple,
    j: usize,
    y: &CellPoint,
) -> Result<Value, ChartError> {
    let a = b_value(j1, j, y)?;
    let b = b_value(j2, j, y)?;
    Ok(a.div(&b).expect("chart values are nonzero"))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CocycleReport {
    pub level: usize,
    pub samples: u64,
    pub seed: u64,
    pub passed: bool,
    /// Sample index and law violated, for the first failure.
    pub failure: Option<(u64, String)>,
}

/// Samples points in the triple chart overlap and checks the identity,
/// inverse and triple-product laws of the transition ratios exactly.
#[allow(clippy::too_many_arguments)]
pub fn cocycle_check(
    datum: &Arc<MinimalSchubertDatum>,
    j1: &WitnessTuple,
    j2: &WitnessTuple,
    j3: &WitnessTuple,
    level: usize,
    samples: u64,
    seed: u64,
    field: FieldSpec,
) -> Result<CocycleReport, ChartError> {
    let mut required: Vec<(usize, usize)> = Vec::new();
    for t in [j1, j2, j3] {
        for l in 1..=t.m() {
            let key = (t.index(l), l);
            if !required.contains(&key) {
                required.push(key);
            }
        }
    }
    let mut failure = None;
    for s in 0..samples {
        let mut rng = sample::sample_rng(seed, s);
        let y = sample::sample_point(datum, field, &required, &mut rng);
        let one = Value::one(field);

        let t12 = transition(j1, j2, level, &y)?;
        let t23 = transition(j2, j3, level, &y)?;
        let t13 = transition(j1, j3, level, &y)?;
        if t12.mul(&t23) != t13 {
            failure = Some((s, "triple product".to_string()));
            break;
        }
        let t21 = transition(j2, j1, level, &y)?;
        if t12.mul(&t21) != one {
            failure = Some((s, "inverse".to_string()));
            break;
        }
        if transition(j1, j1, level, &y)? != one {
            failure = Some((s, "identity".to_string()));
            break;
        }
    }
    Ok(CocycleReport {
        level,
        samples,
        seed,
        passed: failure.is_none(),
        failure,
    })
}

/// Sends a semistable point of the chart to its (base representative,
/// fiber) pair: the base is the column-dropped point, and the fiber
/// component at k is the level-(p-1) chart value times the last-column
/// coordinate, where p is the block of k.
pub fn chart_map(witness: &WitnessTuple, x: &CellPoint) -> Result<ChartPoint, ChartError> {
    let datum = x.datum();
    let (r, q) = (datum.r(), datum.q());
    if witness.m() + 1 != r {
        return Err(ChartError::WitnessLength {
            got: witness.m(),
            expected: r - 1,
        });
    }
    if let Some(column) = is_semistable(x).failing_column() {
        return Err(ChartError::NotSemistable { column });
    }
    for l in 1..=witness.m() {
        let i = witness.index(l);
        if x.get(i, l)?.is_zero() {
            return Err(ChartError::OutsideChart { i, j: l });
        }
    }
    let base = if r >= 2 { Some(x.restrict()?) } else { None };
    let mut comps = Vec::with_capacity(datum.c_set(r).len());
    for &k in datum.c_set(r) {
        let p = d_index(k, r, q)?;
        let scale = match &base {
            Some(b) => b_value(witness, p - 1, b)?,
            None => Value::one(x.field()),
        };
        comps.push(scale.mul(x.get(k, r)?));
    }
    let fiber = FiberVector::new(x.field(), comps)?;
    debug_assert!(!fiber.is_zero(), "semistable points have nonzero fiber");
    Ok(ChartPoint { base, fiber })
}

/// Reconstructs a cell point from chart data: columns below r are copied
/// from the base, and the last column divides each fiber component by the
/// chart value of its block.
pub fn chart_inverse(
    top: &Arc<MinimalSchubertDatum>,
    witness: &WitnessTuple,
    base: Option<&CellPoint>,
    fiber: &FiberVector,
) -> Result<CellPoint, ChartError> {
    let (r, q) = (top.r(), top.q());
    if witness.m() + 1 != r {
        return Err(ChartError::WitnessLength {
            got: witness.m(),
            expected: r - 1,
        });
    }
    if fiber.len() != top.c_set(r).len() {
        return Err(ChartError::FiberLength {
            got: fiber.len(),
            expected: top.c_set(r).len(),
        });
    }
    if fiber.is_zero() {
        return Err(ChartError::ZeroFiber);
    }
    let mut entries: Vec<((usize, usize), Value)> = Vec::new();
    if r >= 2 {
        let base = base.ok_or(ChartError::MissingBase)?;
        if base.r() != r - 1 || base.q() != q {
            return Err(ChartError::BaseMismatch {
                r: base.r(),
                q: base.q(),
                er: r - 1,
                eq: q,
            });
        }
        if base.field() != fiber.field() {
            return Err(ChartError::FieldMismatch {
                left: base.field().to_string(),
                right: fiber.field().to_string(),
            });
        }
        for (&key, v) in base.entries() {
            entries.push((key, v.clone()));
        }
        for (idx, &k) in top.c_set(r).iter().enumerate() {
            let p = d_index(k, r, q)?;
            let b = b_value(witness, p - 1, base)?;
            entries.push((
                (k, r),
                fiber.comps()[idx].div(&b).expect("chart value nonzero"),
            ));
        }
    } else {
        if base.is_some() {
            return Err(ChartError::BaseMismatch {
                r: 0,
                q,
                er: 0,
                eq: q,
            });
        }
        for (idx, &k) in top.c_set(1).iter().enumerate() {
            entries.push(((k, 1), fiber.comps()[idx].clone()));
        }
    }
    Ok(CellPoint::with_entries(
        Arc::clone(top),
        fiber.field(),
        entries,
    )?)
}

/// Whether two chart images represent the same quotient point: bases in the
/// same orbit of the smaller torus and fibers equal projectively.
pub fn chart_points_agree(a: &ChartPoint, b: &ChartPoint) -> Result<bool, ChartError> {
    let bases_agree = match (&a.base, &b.base) {
        (None, None) => true,
        (Some(x), Some(y)) => matches!(orbit_solve(x, y)?, OrbitOutcome::Equivalent(_)),
        _ => false,
    };
    Ok(bases_agree && a.fiber.projectively_equal(&b.fiber))
}

/// One diagonal block of the transition automorphism between two charts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransitionBlock {
    /// Block position p = 1..=r.
    pub block: usize,
    /// The scalar multiplying this block: the level-(p-1) transition ratio.
    pub scalar: Value,
    /// Last-column indices k whose fiber components the block scales.
    pub members: Vec<usize>,
}

/// The block-diagonal transition description between two charts over a base
/// point: block 1 scales the first-block components (q of them) by 1, block
/// p >= 2 scales its q-1 components by the level-(p-1) transition ratio.
pub fn transition_matrix(
    top: &Arc<MinimalSchubertDatum>,
    j1: &WitnessTuple,
    j2: &WitnessTuple,
    y: &CellPoint,
) -> Result<Vec<TransitionBlock>, ChartError> {
    let (r, q) = (top.r(), top.q());
    if witness_len_err(j1, r).is_some() {
        return Err(witness_len_err(j1, r).unwrap());
    }
    if let Some(e) = witness_len_err(j2, r) {
        return Err(e);
    }
    if y.r() + 1 != r || y.q() != q {
        return Err(ChartError::BaseMismatch {
            r: y.r(),
            q: y.q(),
            er: r - 1,
            eq: q,
        });
    }
    let mut blocks = Vec::with_capacity(r);
    for p in 1..=r {
        let scalar = transition(j1, j2, p - 1, y)?;
        let members: Vec<usize> = top
            .c_set(r)
            .iter()
            .copied()
            .filter(|&k| d_index(k, r, q).expect("k in C_r") == p)
            .collect();
        blocks.push(TransitionBlock {
            block: p,
            scalar,
            members,
        });
    }
    Ok(blocks)
}

fn witness_len_err(w: &WitnessTuple, r: usize) -> Option<ChartError> {
    (w.m() + 1 != r).then(|| ChartError::WitnessLength {
        got: w.m(),
        expected: r - 1,
    })
}

/// Applies the block scalars to a fiber vector (components aligned with the
/// last column index set of `top`).
pub fn apply_transition_blocks(
    top: &MinimalSchubertDatum,
    blocks: &[TransitionBlock],
    fiber: &FiberVector,
) -> Result<FiberVector, ChartError> {
    let c_r = top.c_set(top.r());
    if fiber.len() != c_r.len() {
        return Err(ChartError::FiberLength {
            got: fiber.len(),
            expected: c_r.len(),
        });
    }
    let mut comps = fiber.comps().to_vec();
    for block in blocks {
        for &k in &block.members {
            let idx = c_r.iter().position(|&c| c == k).expect("member of C_r");
            comps[idx] = block.scalar.mul(&comps[idx]);
        }
    }
    FiberVector::new(fiber.field(), comps)
}

/// Dimensions of the tower stages: stage 0 is a point and each stage k adds
/// a fiber of projective dimension k(q-1). Cross-checked in the suites
/// against word length minus the number of columns.
pub fn tower_dimensions(r: usize, q: usize) -> Result<Vec<usize>, CellError> {
    if q < 2 {
        return Err(CellError::QTooSmall(q));
    }
    let mut dims = vec![0usize];
    for k in 1..=r {
        dims.push(dims[k - 1] + k * (q - 1));
    }
    Ok(dims)
}
