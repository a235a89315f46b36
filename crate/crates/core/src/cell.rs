//! The minimal Schubert datum for parameters (r, q) with n = rq + 1: the
//! reduced word, its one-line permutation, the column index sets C_j, the
//! interval roots beta_{i,j}, and the sparse coordinate chart of the open
//! cell.

use crate::field::{FieldSpec, Value};
use crate::lattice::{LatticeError, Permutation, ReducedWord, WeightVector};
use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CellError {
    #[error("q must be at least 2 (got {0})")]
    QTooSmall(usize),
    #[error("r must be at least 1 (got {0})")]
    RTooSmall(usize),
    #[error("index ({i},{j}) is not a cell coordinate")]
    NotACoordinate { i: usize, j: usize },
    #[error("duplicate entry for ({i},{j})")]
    DuplicateEntry { i: usize, j: usize },
    #[error("entry ({i},{j}) has field {got}, expected {expected}")]
    FieldMismatch {
        i: usize,
        j: usize,
        got: String,
        expected: String,
    },
    #[error("matrix is {rows}x{cols}, expected {n}x{r}")]
    MatrixShape {
        rows: usize,
        cols: usize,
        n: usize,
        r: usize,
    },
    #[error("matrix entry ({i},{j}) must be {expected} in this chart")]
    PatternViolation {
        i: usize,
        j: usize,
        expected: &'static str,
    },
    #[error("cannot restrict a single-column cell")]
    RestrictRankOne,
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

/// Immutable description of the minimal-dimensional Schubert datum: all
/// fields are derived from (r, q) and validated eagerly at construction.
#[derive(Debug)]
pub struct MinimalSchubertDatum {
    r: usize,
    q: usize,
    n: usize,
    word: ReducedWord,
    one_line: Permutation,
    c_sets: Vec<Vec<usize>>,
    betas: BTreeMap<(usize, usize), WeightVector>,
}

impl PartialEq for MinimalSchubertDatum {
    fn eq(&self, other: &Self) -> bool {
        self.r == other.r && self.q == other.q
    }
}
impl Eq for MinimalSchubertDatum {}

impl MinimalSchubertDatum {
    /// Builds and validates the datum. The composition convention is pinned
    /// here: the block word must produce the one-line representative
    /// `(q+1, 2q+1, ..., rq+1)` or construction aborts.
    pub fn build(r: usize, q: usize) -> Result<Self, CellError> {
        if q < 2 {
            return Err(CellError::QTooSmall(q));
        }
        if r < 1 {
            return Err(CellError::RTooSmall(r));
        }
        let n = r * q + 1;

        let mut letters = Vec::new();
        for j in 1..=r {
            for l in (j..=j * q).rev() {
                letters.push(l);
            }
        }
        let word = ReducedWord::new(n, letters)?;
        let one_line = word.to_permutation();

        // Mandatory self-check of the composition convention.
        for j in 1..=r {
            assert_eq!(
                one_line.image(j),
                j * q + 1,
                "one-line convention broken at column {j}"
            );
        }
        assert!(
            one_line.is_minimal_rep(r),
            "word does not give a minimal coset representative"
        );
        assert_eq!(one_line.length(), word.len(), "block word is not reduced");

        let mut c_sets = Vec::with_capacity(r);
        for j in 1..=r {
            let pinned: Vec<usize> = (1..=j).map(|k| k * q + 1).collect();
            let set: Vec<usize> = (1..=j * q + 1).filter(|i| !pinned.contains(i)).collect();
            c_sets.push(set);
        }

        let mut betas = BTreeMap::new();
        for (jm1, set) in c_sets.iter().enumerate() {
            let j = jm1 + 1;
            for &i in set {
                let mut beta = WeightVector::zero(n);
                for k in i..=j * q {
                    beta = beta.add(&WeightVector::simple_root(k, n)?)?;
                }
                betas.insert((i, j), beta);
            }
        }

        // The interval roots must be exactly the inversion set of the
        // one-line permutation.
        let inversions = one_line.inversion_roots();
        assert_eq!(inversions.len(), betas.len(), "inversion count mismatch");
        for beta in betas.values() {
            assert!(inversions.contains(beta), "beta missing from inversion set");
        }

        Ok(MinimalSchubertDatum {
            r,
            q,
            n,
            word,
            one_line,
            c_sets,
            betas,
        })
    }

    /// Cached shared datum for (r, q); read-through, values immutable.
    pub fn shared(r: usize, q: usize) -> Result<Arc<Self>, CellError> {
        type DatumCache = Mutex<HashMap<(usize, usize), Arc<MinimalSchubertDatum>>>;
        static CACHE: OnceLock<DatumCache> = OnceLock::new();
        let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
        if let Some(d) = cache.lock().unwrap().get(&(r, q)) {
            return Ok(Arc::clone(d));
        }
        let built = Arc::new(Self::build(r, q)?);
        let mut guard = cache.lock().unwrap();
        Ok(Arc::clone(guard.entry((r, q)).or_insert(built)))
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn word(&self) -> &ReducedWord {
        &self.word
    }

    pub fn one_line(&self) -> &Permutation {
        &self.one_line
    }

    /// Minimal representative tuple `(w(1), ..., w(r)) = (q+1, ..., rq+1)`.
    pub fn minimal_rep(&self) -> Vec<usize> {
        (1..=self.r).map(|j| self.one_line.image(j)).collect()
    }

    /// The column index set C_j.
    pub fn c_set(&self, j: usize) -> &[usize] {
        &self.c_sets[j - 1]
    }

    pub fn contains(&self, i: usize, j: usize) -> bool {
        j >= 1 && j <= self.r && self.c_sets[j - 1].contains(&i)
    }

    pub fn beta(&self, i: usize, j: usize) -> Result<&WeightVector, CellError> {
        self.betas
            .get(&(i, j))
            .ok_or(CellError::NotACoordinate { i, j })
    }

    pub fn betas(&self) -> &BTreeMap<(usize, usize), WeightVector> {
        &self.betas
    }

    /// All cell coordinates, column-major: (i, j) for j = 1..=r, i in C_j.
    pub fn coordinate_keys(&self) -> Vec<(usize, usize)> {
        let mut keys = Vec::new();
        for j in 1..=self.r {
            for &i in self.c_set(j) {
                keys.push((i, j));
            }
        }
        keys
    }

    /// Cell dimension = sum of the column sizes = length of the word.
    pub fn cell_dimension(&self) -> usize {
        self.c_sets.iter().map(|s| s.len()).sum()
    }
}

/// A point of the open cell in its sparse coordinates: one exact scalar per
/// (i, j) with i in C_j. Immutable after construction.
#[derive(Debug, Clone)]
pub struct CellPoint {
    datum: Arc<MinimalSchubertDatum>,
    field: FieldSpec,
    entries: BTreeMap<(usize, usize), Value>,
}

impl PartialEq for CellPoint {
    fn eq(&self, other: &Self) -> bool {
        self.datum == other.datum && self.field == other.field && self.entries == other.entries
    }
}
impl Eq for CellPoint {}

impl CellPoint {
    pub fn zero(datum: Arc<MinimalSchubertDatum>, field: FieldSpec) -> Self {
        let entries = datum
            .coordinate_keys()
            .into_iter()
            .map(|k| (k, Value::zero(field)))
            .collect();
        CellPoint {
            datum,
            field,
            entries,
        }
    }

    /// Builds a point from the given entries; coordinates not mentioned are
    /// zero. Rejects invalid keys, duplicates and mixed fields.
    pub fn with_entries(
        datum: Arc<MinimalSchubertDatum>,
        field: FieldSpec,
        entries: impl IntoIterator<Item = ((usize, usize), Value)>,
    ) -> Result<Self, CellError> {
        let mut point = CellPoint::zero(datum, field);
        let mut seen = BTreeMap::new();
        for ((i, j), v) in entries {
            if !point.datum.contains(i, j) {
                return Err(CellError::NotACoordinate { i, j });
            }
            if seen.insert((i, j), ()).is_some() {
                return Err(CellError::DuplicateEntry { i, j });
            }
            if v.spec() != field {
                return Err(CellError::FieldMismatch {
                    i,
                    j,
                    got: v.spec().to_string(),
                    expected: field.to_string(),
                });
            }
            point.entries.insert((i, j), v);
        }
        Ok(point)
    }

    pub fn datum(&self) -> &Arc<MinimalSchubertDatum> {
        &self.datum
    }

    pub fn r(&self) -> usize {
        self.datum.r()
    }

    pub fn q(&self) -> usize {
        self.datum.q()
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn get(&self, i: usize, j: usize) -> Result<&Value, CellError> {
        self.entries
            .get(&(i, j))
            .ok_or(CellError::NotACoordinate { i, j })
    }

    pub fn entries(&self) -> &BTreeMap<(usize, usize), Value> {
        &self.entries
    }

    /// Returns a copy with a single coordinate replaced; construction-time
    /// validation applies.
    pub fn with_value(&self, i: usize, j: usize, v: Value) -> Result<Self, CellError> {
        if !self.datum.contains(i, j) {
            return Err(CellError::NotACoordinate { i, j });
        }
        if v.spec() != self.field {
            return Err(CellError::FieldMismatch {
                i,
                j,
                got: v.spec().to_string(),
                expected: self.field.to_string(),
            });
        }
        let mut entries = self.entries.clone();
        entries.insert((i, j), v);
        Ok(CellPoint {
            datum: Arc::clone(&self.datum),
            field: self.field,
            entries,
        })
    }

    /// The n-by-r matrix form of the chart: row jq+1 of column j carries the
    /// pinned 1, rows kq+1 (k != j) and rows beyond jq+1 are 0, free rows
    /// carry the stored coordinates. Exists for I/O and display only.
    pub fn to_matrix(&self) -> Vec<Vec<Value>> {
        let (n, r, q) = (self.datum.n(), self.datum.r(), self.datum.q());
        let mut rows = vec![vec![Value::zero(self.field); r]; n];
        for j in 1..=r {
            rows[j * q][j - 1] = Value::one(self.field);
            for &i in self.datum.c_set(j) {
                rows[i - 1][j - 1] = self.entries[&(i, j)].clone();
            }
        }
        rows
    }

    /// Inverse of `to_matrix`: checks the pinned/zero pattern exactly and
    /// extracts the free coordinates, reporting the first offending entry.
    pub fn from_matrix(
        datum: Arc<MinimalSchubertDatum>,
        field: FieldSpec,
        rows: &[Vec<Value>],
    ) -> Result<Self, CellError> {
        let (n, r, q) = (datum.n(), datum.r(), datum.q());
        if rows.len() != n || rows.iter().any(|row| row.len() != r) {
            return Err(CellError::MatrixShape {
                rows: rows.len(),
                cols: rows.first().map_or(0, |row| row.len()),
                n,
                r,
            });
        }
        let mut entries = Vec::new();
        for j in 1..=r {
            for i in 1..=n {
                let v = &rows[i - 1][j - 1];
                if v.spec() != field {
                    return Err(CellError::FieldMismatch {
                        i,
                        j,
                        got: v.spec().to_string(),
                        expected: field.to_string(),
                    });
                }
                if datum.contains(i, j) {
                    entries.push(((i, j), v.clone()));
                } else if i == j * q + 1 {
                    if !v.is_one() {
                        return Err(CellError::PatternViolation {
                            i,
                            j,
                            expected: "1",
                        });
                    }
                } else if !v.is_zero() {
                    return Err(CellError::PatternViolation {
                        i,
                        j,
                        expected: "0",
                    });
                }
            }
        }
        CellPoint::with_entries(datum, field, entries)
    }

    /// Drops the last column, keeping the coordinates of columns 1..r-1
    /// identically; the result lives on the (r-1, q) datum.
    pub fn restrict(&self) -> Result<CellPoint, CellError> {
        let r = self.datum.r();
        if r < 2 {
            return Err(CellError::RestrictRankOne);
        }
        let sub = MinimalSchubertDatum::shared(r - 1, self.datum.q())?;
        let entries = self
            .entries
            .iter()
            .filter(|((_, j), _)| *j < r)
            .map(|(&k, v)| (k, v.clone()));
        CellPoint::with_entries(sub, self.field, entries)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn v(x: i64) -> Value {
        Value::from_i64(FieldSpec::Rational, x)
    }

    #[test]
    fn datum_examples() {
        let d = MinimalSchubertDatum::build(3, 3).unwrap();
        assert_eq!(d.n(), 10);
        assert_eq!(d.minimal_rep(), vec![4, 7, 10]);
        assert_eq!(d.c_set(3), &[1, 2, 3, 5, 6, 8, 9]);

        let d = MinimalSchubertDatum::build(2, 2).unwrap();
        assert_eq!(d.c_set(1), &[1, 2]);
        assert_eq!(d.c_set(2), &[1, 2, 4]);

        let d = MinimalSchubertDatum::build(1, 5).unwrap();
        assert_eq!(d.c_set(1), &[1, 2, 3, 4, 5]);
        assert_eq!(d.word().letters(), &[5, 4, 3, 2, 1]);

        assert_eq!(
            MinimalSchubertDatum::build(3, 1).unwrap_err(),
            CellError::QTooSmall(1)
        );
        assert_eq!(
            MinimalSchubertDatum::build(0, 3).unwrap_err(),
            CellError::RTooSmall(0)
        );
    }

    #[test]
    fn beta_examples() {
        let d22 = MinimalSchubertDatum::build(2, 2).unwrap();
        let a4 = WeightVector::simple_root(4, 5).unwrap();
        assert_eq!(d22.beta(4, 2).unwrap(), &a4);

        // Sum over k = 1..=4 for (1,2) in the (2,2) datum.
        let full: WeightVector = (1..=4).fold(WeightVector::zero(5), |acc, k| {
            acc.add(&WeightVector::simple_root(k, 5).unwrap()).unwrap()
        });
        assert_eq!(d22.beta(1, 2).unwrap(), &full);
        assert!(d22.beta(3, 2).is_err());

        let d33 = MinimalSchubertDatum::build(3, 3).unwrap();
        let expect = WeightVector::simple_root(5, 10)
            .unwrap()
            .add(&WeightVector::simple_root(6, 10).unwrap())
            .unwrap();
        assert_eq!(d33.beta(5, 2).unwrap(), &expect);
    }

    #[test]
    fn beta_support_matches_coweight_pairing() {
        let d = MinimalSchubertDatum::build(3, 3).unwrap();
        for ((i, j), beta) in d.betas() {
            for l in 1..d.n() {
                let pair = beta.coweight_pair(l).unwrap();
                let inside = *i <= l && l <= j * d.q();
                assert_eq!(
                    pair,
                    num::BigRational::from_integer(num::BigInt::from(inside as i64))
                );
            }
        }
    }

    #[test]
    fn cell_dimension_formula() {
        let d = MinimalSchubertDatum::build(3, 3).unwrap();
        assert_eq!(d.cell_dimension(), 15);
        for r in 1..=4usize {
            for q in 2..=4usize {
                let d = MinimalSchubertDatum::build(r, q).unwrap();
                let expected: usize = (1..=r).map(|j| j * q - j + 1).sum();
                assert_eq!(d.cell_dimension(), expected);
                assert_eq!(d.word().len(), expected);
            }
        }
    }

    #[test]
    fn matrix_of_zero_point_has_only_pinned_ones() {
        let d = MinimalSchubertDatum::shared(3, 3).unwrap();
        let p = CellPoint::zero(Arc::clone(&d), FieldSpec::Rational);
        let m = p.to_matrix();
        for (row, cols) in m.iter().enumerate() {
            for (col, value) in cols.iter().enumerate() {
                let expected = if row + 1 == (col + 1) * 3 + 1 {
                    v(1)
                } else {
                    v(0)
                };
                assert_eq!(*value, expected, "at ({},{})", row + 1, col + 1);
            }
        }
    }

    #[test]
    fn single_column_matrix() {
        let d = MinimalSchubertDatum::shared(1, 2).unwrap();
        let p = CellPoint::with_entries(
            Arc::clone(&d),
            FieldSpec::Rational,
            [((1, 1), v(5)), ((2, 1), v(7))],
        )
        .unwrap();
        let m = p.to_matrix();
        assert_eq!(m, vec![vec![v(5)], vec![v(7)], vec![v(1)]]);
    }

    #[test]
    fn from_matrix_reports_offending_entry() {
        let d = MinimalSchubertDatum::shared(2, 2).unwrap();
        let p = CellPoint::zero(Arc::clone(&d), FieldSpec::Rational);
        let mut m = p.to_matrix();
        m[4][0] = v(9); // row 5 of column 1 must stay zero
        let err = CellPoint::from_matrix(Arc::clone(&d), FieldSpec::Rational, &m).unwrap_err();
        assert_eq!(
            err,
            CellError::PatternViolation {
                i: 5,
                j: 1,
                expected: "0"
            }
        );

        let mut m2 = p.to_matrix();
        m2[2][0] = v(4); // row 3 = q+1 is the pinned 1 of column 1
        let err = CellPoint::from_matrix(Arc::clone(&d), FieldSpec::Rational, &m2).unwrap_err();
        assert_eq!(
            err,
            CellError::PatternViolation {
                i: 3,
                j: 1,
                expected: "1"
            }
        );
    }

    #[test]
    fn restrict_keeps_low_columns() {
        let d = MinimalSchubertDatum::shared(3, 3).unwrap();
        let mut entries = Vec::new();
        for (k, key) in d.coordinate_keys().into_iter().enumerate() {
            entries.push((key, v(k as i64 + 1)));
        }
        let p = CellPoint::with_entries(Arc::clone(&d), FieldSpec::Rational, entries).unwrap();
        let restricted = p.restrict().unwrap();
        assert_eq!(restricted.r(), 2);
        for (&(i, j), value) in restricted.entries() {
            assert_eq!(value, p.get(i, j).unwrap());
        }
        // Dropping two columns in two steps.
        let twice = restricted.restrict().unwrap();
        assert_eq!(twice.r(), 1);
        assert_eq!(twice.entries().len(), 3);
        assert!(twice.restrict().is_err());
    }

    prop_compose! {
        fn arb_point(r: usize, q: usize)
            (values in prop::collection::vec(-20i64..=20, MinimalSchubertDatum::build(r, q).unwrap().cell_dimension()))
        -> CellPoint {
            let d = MinimalSchubertDatum::shared(r, q).unwrap();
            let keys = d.coordinate_keys();
            let entries = keys.into_iter().zip(values.into_iter().map(v));
            CellPoint::with_entries(d, FieldSpec::Rational, entries).unwrap()
        }
    }

    proptest! {
        #[test]
        fn matrix_roundtrip(p in arb_point(3, 2)) {
            let m = p.to_matrix();
            let back = CellPoint::from_matrix(Arc::clone(p.datum()), FieldSpec::Rational, &m).unwrap();
            prop_assert_eq!(back, p);
        }
    }
}
