//! Semistability of cell points for the peak subtorus, the torus action on
//! cell coordinates, the orbit-equivalence decision procedure, and the
//! lattice certificate for stabilizer triviality.

use crate::cell::{CellError, CellPoint, MinimalSchubertDatum};
use crate::field::{FieldSpec, Value};
use crate::lattice::{LatticeError, Permutation, WeightVector};
use crate::peaks::{d_index, PeakError, WitnessTuple};
use crate::snf::all_invariant_factors_one;
use num::bigint::BigInt;
use num::rational::BigRational;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum StabilityError {
    #[error("torus component {index} is zero")]
    ZeroTorusComponent { index: usize },
    #[error("torus has {got} components, point has {expected} columns")]
    TorusRankMismatch { got: usize, expected: usize },
    #[error("points live on different cells: ({r1},{q1}) vs ({r2},{q2})")]
    DatumMismatch {
        r1: usize,
        q1: usize,
        r2: usize,
        q2: usize,
    },
    #[error("field mismatch: {left} vs {right}")]
    FieldMismatch { left: String, right: String },
    #[error("point is not semistable (column {column} vanishes)")]
    NotSemistable { column: usize },
    #[error("witness tuple has {got} columns, datum needs {expected}")]
    WitnessLength { got: usize, expected: usize },
    #[error(transparent)]
    Cell(#[from] CellError),
    #[error(transparent)]
    Peak(#[from] PeakError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

/// An element of the peak subtorus, given by one nonzero scalar per peak.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TorusElement {
    field: FieldSpec,
    comps: Vec<Value>,
}

impl TorusElement {
    pub fn new(field: FieldSpec, comps: Vec<Value>) -> Result<Self, StabilityError> {
        for (k, c) in comps.iter().enumerate() {
            if c.spec() != field {
                return Err(StabilityError::FieldMismatch {
                    left: c.spec().to_string(),
                    right: field.to_string(),
                });
            }
            if c.is_zero() {
                return Err(StabilityError::ZeroTorusComponent { index: k + 1 });
            }
        }
        Ok(TorusElement { field, comps })
    }

    pub fn identity(r: usize, field: FieldSpec) -> Self {
        TorusElement {
            field,
            comps: vec![Value::one(field); r],
        }
    }

    pub fn r(&self) -> usize {
        self.comps.len()
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    /// Component t_l, 1-based.
    pub fn component(&self, l: usize) -> &Value {
        &self.comps[l - 1]
    }

    pub fn components(&self) -> &[Value] {
        &self.comps
    }

    /// The character value of the interval root at (i, j): the product of
    /// the components over the support interval [d(i,j), j] of the pairing
    /// table.
    pub fn character_at(&self, i: usize, j: usize, q: usize) -> Result<Value, StabilityError> {
        let d = d_index(i, j, q)?;
        let mut acc = Value::one(self.field);
        for l in d..=j {
            acc = acc.mul(self.component(l));
        }
        Ok(acc)
    }
}

/// The Hilbert-Mumford value at a torus-fixed cell along the fundamental
/// one-parameter subgroup lambda_j: minus the pairing of the Weyl image
/// of the character. Negative sign comes from the left-action convention,
/// adopted globally.
pub fn hm_pairing(
    w: &Permutation,
    chi: &WeightVector,
    j: usize,
) -> Result<BigRational, LatticeError> {
    Ok(-w.apply(chi)?.coweight_pair(j)?)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColumnWitness {
    pub column: usize,
    /// Smallest row index with a nonzero coordinate, if any.
    pub witness: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SemistabilityReport {
    pub semistable: bool,
    pub columns: Vec<ColumnWitness>,
}

impl SemistabilityReport {
    pub fn failing_column(&self) -> Option<usize> {
        self.columns
            .iter()
            .find(|c| c.witness.is_none())
            .map(|c| c.column)
    }
}

/// A point is semistable exactly when every column has a nonzero coordinate.
pub fn is_semistable(p: &CellPoint) -> SemistabilityReport {
    let datum = p.datum();
    let mut columns = Vec::with_capacity(datum.r());
    for j in 1..=datum.r() {
        let witness = datum
            .c_set(j)
            .iter()
            .copied()
            .find(|&i| !p.get(i, j).expect("datum key").is_zero());
        columns.push(ColumnWitness { column: j, witness });
    }
    let semistable = columns.iter().all(|c| c.witness.is_some());
    SemistabilityReport {
        semistable,
        columns,
    }
}

/// Acts on a point coordinatewise: each a_{i,j} is scaled by the character
/// value of its interval root.
pub fn torus_act(t: &TorusElement, p: &CellPoint) -> Result<CellPoint, StabilityError> {
    if t.r() != p.r() {
        return Err(StabilityError::TorusRankMismatch {
            got: t.r(),
            expected: p.r(),
        });
    }
    if t.field() != p.field() {
        return Err(StabilityError::FieldMismatch {
            left: t.field().to_string(),
            right: p.field().to_string(),
        });
    }
    let q = p.q();
    let entries: Result<Vec<_>, StabilityError> = p
        .entries()
        .iter()
        .map(|(&(i, j), v)| Ok(((i, j), t.character_at(i, j, q)?.mul(v))))
        .collect();
    Ok(CellPoint::with_entries(
        p.datum().clone(),
        p.field(),
        entries?,
    )?)
}

/// Outcome of the orbit-equivalence decision.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OrbitOutcome {
    /// The unique torus element carrying the first point to the second.
    Equivalent(TorusElement),
    /// Zero patterns differ at (i, j): not in the same orbit.
    ZeroPatternMismatch { i: usize, j: usize },
    /// Patterns agree but the coordinate ratios are inconsistent at (i, j).
    RatioMismatch { i: usize, j: usize },
}

/// Decides whether two semistable points lie in the same orbit of the peak
/// subtorus, returning the connecting element when they do.
///
/// Per column the largest-index nonzero coordinate is taken as witness (any
/// witness works; the support intervals make the system unitriangular), the
/// components are solved column by column, then every coordinate is checked.
pub fn orbit_solve(a: &CellPoint, b: &CellPoint) -> Result<OrbitOutcome, StabilityError> {
    if a.r() != b.r() || a.q() != b.q() {
        return Err(StabilityError::DatumMismatch {
            r1: a.r(),
            q1: a.q(),
            r2: b.r(),
            q2: b.q(),
        });
    }
    if a.field() != b.field() {
        return Err(StabilityError::FieldMismatch {
            left: a.field().to_string(),
            right: b.field().to_string(),
        });
    }
    for report in [is_semistable(a), is_semistable(b)] {
        if let Some(column) = report.failing_column() {
            return Err(StabilityError::NotSemistable { column });
        }
    }

    let datum = a.datum();
    let (r, q) = (datum.r(), datum.q());
    for &(i, j) in datum.coordinate_keys().iter() {
        if a.get(i, j)?.is_zero() != b.get(i, j)?.is_zero() {
            return Ok(OrbitOutcome::ZeroPatternMismatch { i, j });
        }
    }

    let mut comps: Vec<Value> = Vec::with_capacity(r);
    for j in 1..=r {
        let witness = datum
            .c_set(j)
            .iter()
            .copied()
            .rev()
            .find(|&i| !a.get(i, j).expect("datum key").is_zero())
            .expect("semistable column has a witness");
        let ratio = b
            .get(witness, j)?
            .div(a.get(witness, j)?)
            .expect("witness nonzero");
        // ratio = t_d * ... * t_j with d = d(witness, j); the earlier
        // components are already known.
        let d = d_index(witness, j, q)?;
        let mut known = Value::one(a.field());
        for l in d..j {
            known = known.mul(&comps[l - 1]);
        }
        comps.push(ratio.div(&known).expect("torus components are nonzero"));
    }
    let t = TorusElement::new(a.field(), comps)?;

    for &(i, j) in datum.coordinate_keys().iter() {
        let av = a.get(i, j)?;
        if av.is_zero() {
            continue;
        }
        if &t.character_at(i, j, q)?.mul(av) != b.get(i, j)? {
            return Ok(OrbitOutcome::RatioMismatch { i, j });
        }
    }
    Ok(OrbitOutcome::Equivalent(t))
}

/// Certifies that the stabilizer of any point with the given nonzero
/// witnesses is trivial: the interval roots of the witnesses together with
/// the off-peak simple roots must span the full root lattice, i.e. their
/// coefficient matrix has all Smith invariant factors equal to 1.
pub fn stabilizer_trivial(
    witness: &WitnessTuple,
    datum: &MinimalSchubertDatum,
) -> Result<bool, StabilityError> {
    let (r, q, n) = (datum.r(), datum.q(), datum.n());
    if witness.m() != r {
        return Err(StabilityError::WitnessLength {
            got: witness.m(),
            expected: r,
        });
    }
    let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(n - 1);
    for j in 1..=r {
        let beta = datum.beta(witness.index(j), j)?;
        rows.push(beta.alpha_coords().expect("interval roots are integral"));
    }
    for k in 1..n {
        if k % q == 0 && k / q <= r {
            continue; // peak positions are excluded
        }
        let mut row = vec![BigInt::from(0); n - 1];
        row[k - 1] = BigInt::from(1);
        rows.push(row);
    }
    debug_assert_eq!(rows.len(), n - 1);
    Ok(all_invariant_factors_one(&rows))
}

/// The floor identity floor(jqr / n) = j - 1 with n = rq + 1, for every
/// column; the arithmetic fact behind minimality of the datum.
pub fn minimality_floor_check(r: usize, q: usize) -> bool {
    let n = r * q + 1;
    (1..=r).all(|j| (j * q * r) / n == j - 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sample;
    use proptest::prelude::*;
    use std::sync::Arc;

    fn rat(x: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(x))
    }

    fn v(x: i64) -> Value {
        Value::from_i64(FieldSpec::Rational, x)
    }

    fn datum(r: usize, q: usize) -> Arc<MinimalSchubertDatum> {
        MinimalSchubertDatum::shared(r, q).unwrap()
    }

    #[test]
    fn hm_pairing_at_identity_is_negative() {
        let chi = WeightVector::fundamental_weight(3, 10)
            .unwrap()
            .scale_int(10);
        let id = Permutation::identity(10);
        for j in 1..10 {
            assert!(hm_pairing(&id, &chi, j).unwrap() < rat(0), "j={j}");
        }
    }

    #[test]
    fn hm_pairing_closed_form_instances() {
        let d = datum(3, 3);
        let chi = WeightVector::fundamental_weight(3, 10)
            .unwrap()
            .scale_int(10);
        let got: Vec<BigRational> = (1..=3)
            .map(|i| hm_pairing(d.one_line(), &chi, 3 * i).unwrap())
            .collect();
        assert_eq!(got, vec![rat(9), rat(8), rat(7)]);

        let d = datum(2, 2);
        let chi = WeightVector::fundamental_weight(2, 5).unwrap().scale_int(5);
        let got: Vec<BigRational> = (1..=2)
            .map(|i| hm_pairing(d.one_line(), &chi, 2 * i).unwrap())
            .collect();
        assert_eq!(got, vec![rat(4), rat(3)]);
    }

    #[test]
    fn semistability_examples() {
        let d = datum(3, 3);
        let p = CellPoint::with_entries(
            Arc::clone(&d),
            FieldSpec::Rational,
            [((1, 1), v(2)), ((5, 2), v(3)), ((8, 3), v(4))],
        )
        .unwrap();
        let report = is_semistable(&p);
        assert!(report.semistable);
        assert_eq!(report.columns[1].witness, Some(5));

        let zero = CellPoint::zero(Arc::clone(&d), FieldSpec::Rational);
        let report = is_semistable(&zero);
        assert!(!report.semistable);
        assert_eq!(report.failing_column(), Some(1));

        let d1 = datum(1, 2);
        let p = CellPoint::with_entries(d1, FieldSpec::Rational, [((2, 1), v(3))]).unwrap();
        assert!(is_semistable(&p).semistable);
    }

    #[test]
    fn torus_act_identity_and_exponents() {
        let d = datum(2, 2);
        let p = CellPoint::with_entries(
            Arc::clone(&d),
            FieldSpec::Rational,
            [((1, 1), v(1)), ((4, 2), v(5)), ((1, 2), v(7))],
        )
        .unwrap();
        let id = TorusElement::identity(2, FieldSpec::Rational);
        assert_eq!(torus_act(&id, &p).unwrap(), p);

        let t = TorusElement::new(FieldSpec::Rational, vec![v(2), v(3)]).unwrap();
        let tp = torus_act(&t, &p).unwrap();
        assert_eq!(tp.get(4, 2).unwrap(), &v(15)); // support {2}: scale 3
        assert_eq!(tp.get(1, 2).unwrap(), &v(42)); // support {1,2}: scale 6
        assert_eq!(tp.get(1, 1).unwrap(), &v(2));
    }

    #[test]
    fn torus_element_rejects_zero_components() {
        let err = TorusElement::new(FieldSpec::Rational, vec![v(2), v(0)]).unwrap_err();
        assert_eq!(err, StabilityError::ZeroTorusComponent { index: 2 });
    }

    #[test]
    fn orbit_solve_roundtrip_and_self() {
        let d = datum(2, 2);
        for stream in 0..50u64 {
            let mut rng = sample::sample_rng(11, stream);
            let p = sample::sample_semistable_point(&d, FieldSpec::Rational, &mut rng);
            let t = sample::sample_torus(2, FieldSpec::Rational, &mut rng);
            let tp = torus_act(&t, &p).unwrap();
            match orbit_solve(&p, &tp).unwrap() {
                OrbitOutcome::Equivalent(got) => assert_eq!(got, t),
                other => panic!("expected equivalence, got {other:?}"),
            }
            match orbit_solve(&p, &p).unwrap() {
                OrbitOutcome::Equivalent(got) => {
                    assert_eq!(got, TorusElement::identity(2, FieldSpec::Rational))
                }
                other => panic!("expected identity, got {other:?}"),
            }
        }
    }

    #[test]
    fn orbit_solve_detects_broken_ratios_and_patterns() {
        let d = datum(2, 2);
        let a = CellPoint::with_entries(
            Arc::clone(&d),
            FieldSpec::Rational,
            [((1, 1), v(2)), ((2, 1), v(3)), ((1, 2), v(5))],
        )
        .unwrap();
        // Scale column 1 consistently except at one coordinate.
        let t = TorusElement::new(FieldSpec::Rational, vec![v(4), v(9)]).unwrap();
        let mut b = torus_act(&t, &a).unwrap();
        b = b.with_value(1, 1, v(1)).unwrap();
        assert_eq!(
            orbit_solve(&a, &b).unwrap(),
            OrbitOutcome::RatioMismatch { i: 1, j: 1 }
        );

        let c = a.with_value(2, 1, v(0)).unwrap();
        assert_eq!(
            orbit_solve(&a, &c).unwrap(),
            OrbitOutcome::ZeroPatternMismatch { i: 2, j: 1 }
        );

        let zero = CellPoint::zero(Arc::clone(&d), FieldSpec::Rational);
        assert_eq!(
            orbit_solve(&a, &zero).unwrap_err(),
            StabilityError::NotSemistable { column: 1 }
        );
    }

    #[test]
    fn stabilizer_certificate_small_cases() {
        let d1 = datum(1, 2);
        for &i in d1.c_set(1) {
            let t = WitnessTuple::new(&d1, vec![i]).unwrap();
            assert!(stabilizer_trivial(&t, &d1).unwrap());
        }

        let d22 = datum(2, 2);
        let tuples = crate::peaks::all_witness_tuples(&d22, 2);
        assert_eq!(tuples.len(), 6);
        for t in tuples {
            assert!(
                stabilizer_trivial(&t, &d22).unwrap(),
                "tuple {:?}",
                t.indices()
            );
        }
    }

    #[test]
    fn floor_identity_grid() {
        assert!(minimality_floor_check(3, 3));
        for q in 2..=12usize {
            assert!(minimality_floor_check(1, q));
        }
        for r in 1..=12usize {
            for q in 2..=12usize {
                assert!(minimality_floor_check(r, q), "r={r} q={q}");
            }
        }
    }

    proptest! {
        #[test]
        fn torus_action_preserves_zero_patterns(seed in 0u64..500) {
            let d = datum(2, 3);
            let mut rng = sample::sample_rng(7, seed);
            let p = sample::sample_point(&d, FieldSpec::Rational, &[], &mut rng);
            let t = sample::sample_torus(2, FieldSpec::Rational, &mut rng);
            let tp = torus_act(&t, &p).unwrap();
            for (&(i, j), value) in p.entries() {
                prop_assert_eq!(value.is_zero(), tp.get(i, j).unwrap().is_zero());
            }
        }

        #[test]
        fn semistability_is_torus_invariant(seed in 0u64..200) {
            let d = datum(3, 2);
            let mut rng = sample::sample_rng(13, seed);
            let p = sample::sample_point(&d, FieldSpec::Rational, &[], &mut rng);
            let t = sample::sample_torus(3, FieldSpec::Rational, &mut rng);
            let tp = torus_act(&t, &p).unwrap();
            prop_assert_eq!(is_semistable(&p).semistable, is_semistable(&tp).semistable);
        }
    }
}
