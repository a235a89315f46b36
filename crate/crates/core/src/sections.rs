//! Monomials in the cell coordinate functions that realize invariant
//! sections: the chain construction, the degree-(n-r) monomial, the
//! degree-one correction monomials, and their product whose weight pairings
//! certify invariance under the peak subtorus.

use crate::cell::{CellError, CellPoint, MinimalSchubertDatum};
use crate::field::Value;
use crate::lattice::WeightVector;
use crate::peaks::{PeakError, WitnessTuple};
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SectionError {
    #[error("column {j} out of range 1..={max}")]
    ColumnOutOfRange { j: usize, max: usize },
    #[error("witness tuple covers {got} columns, need {expected}")]
    WitnessLength { got: usize, expected: usize },
    #[error("factor repeats column {j}: cannot group into one degree-1 section")]
    RepeatedColumn { j: usize },
    #[error("field mismatch between monomial evaluation point and scalars")]
    FieldMismatch,
    #[error(transparent)]
    Cell(#[from] CellError),
    #[error(transparent)]
    Peak(#[from] PeakError),
}

/// A monomial in the coordinate functions X_{beta_{i,j}}, built from
/// degree-1 factors (each grouping variables with pairwise distinct columns)
/// raised to powers. The declared degree records how many degree-1 sections
/// it represents.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BetaMonomial {
    exponents: BTreeMap<(usize, usize), u64>,
    degree: u64,
}

impl BetaMonomial {
    pub fn unit() -> Self {
        BetaMonomial {
            exponents: BTreeMap::new(),
            degree: 0,
        }
    }

    /// Builds the product of `factors`, each a set of cell coordinates with
    /// pairwise distinct columns raised to a power. The column-distinctness
    /// requirement is what makes each factor the restriction of a single
    /// degree-1 section.
    pub fn from_factors(
        datum: &MinimalSchubertDatum,
        factors: &[(Vec<(usize, usize)>, u64)],
    ) -> Result<Self, SectionError> {
        let mut exponents: BTreeMap<(usize, usize), u64> = BTreeMap::new();
        let mut degree = 0u64;
        for (vars, power) in factors {
            let mut cols = Vec::new();
            for &(i, j) in vars {
                datum.beta(i, j)?;
                if cols.contains(&j) {
                    return Err(SectionError::RepeatedColumn { j });
                }
                cols.push(j);
                if *power > 0 {
                    *exponents.entry((i, j)).or_insert(0) += power;
                }
            }
            degree += power;
        }
        Ok(BetaMonomial { exponents, degree })
    }

    pub fn exponents(&self) -> &BTreeMap<(usize, usize), u64> {
        &self.exponents
    }

    pub fn degree(&self) -> u64 {
        self.degree
    }

    pub fn mul(&self, other: &BetaMonomial) -> BetaMonomial {
        let mut exponents = self.exponents.clone();
        for (&k, &e) in &other.exponents {
            *exponents.entry(k).or_insert(0) += e;
        }
        BetaMonomial {
            exponents,
            degree: self.degree + other.degree,
        }
    }

    /// The weight of the monomial as a function on the cell: minus the
    /// exponent-weighted sum of its interval roots.
    pub fn weight(&self, datum: &MinimalSchubertDatum) -> Result<WeightVector, SectionError> {
        let mut acc = WeightVector::zero(datum.n());
        for (&(i, j), &e) in &self.exponents {
            let term = datum.beta(i, j)?.scale_int(e as i64);
            acc = acc.add(&term).expect("rank fixed by datum");
        }
        Ok(acc.neg())
    }
}

/// The decreasing column chain from `start` down to 1: k_1 is the least k
/// with i_start <= kq, and each later k is the least one catching the
/// witness of the column just below the previous block.
pub fn chain(witness: &WitnessTuple, start: usize, q: usize) -> Result<Vec<usize>, SectionError> {
    if start < 1 || start > witness.m() {
        return Err(SectionError::ColumnOutOfRange {
            j: start,
            max: witness.m(),
        });
    }
    let least = |i: usize| i.div_ceil(q).max(1);
    let mut cols = vec![least(witness.index(start))];
    loop {
        let k = *cols.last().unwrap();
        if k == 1 {
            break;
        }
        let next = least(witness.index(k - 1));
        assert!(next < k, "chain failed to decrease");
        cols.push(next);
    }
    Ok(cols)
}

fn chain_columns(
    witness: &WitnessTuple,
    start: usize,
    q: usize,
) -> Result<Vec<usize>, SectionError> {
    let ks = chain(witness, start, q)?;
    let mut cols = vec![start];
    cols.extend(ks[..ks.len() - 1].iter().map(|k| k - 1));
    Ok(cols)
}

/// The degree-(n-r) monomial attached to a full witness tuple: one degree-1
/// factor collecting the witness variables along the chain from column r,
/// raised to the power n-r. Its weight pairs to -(n-r) with every peak.
pub fn monomial_mr(
    witness: &WitnessTuple,
    datum: &MinimalSchubertDatum,
) -> Result<BetaMonomial, SectionError> {
    let r = datum.r();
    if witness.m() != r {
        return Err(SectionError::WitnessLength {
            got: witness.m(),
            expected: r,
        });
    }
    let cols = chain_columns(witness, r, datum.q())?;
    let vars: Vec<(usize, usize)> = cols.into_iter().map(|c| (witness.index(c), c)).collect();
    BetaMonomial::from_factors(datum, &[(vars, (datum.n() - r) as u64)])
}

/// The degree-1 correction monomial at level j < r: the chain product from
/// column j. Its weight pairs to -1 with the first j peaks and 0 beyond.
pub fn monomial_mprime(
    witness: &WitnessTuple,
    j: usize,
    datum: &MinimalSchubertDatum,
) -> Result<BetaMonomial, SectionError> {
    if j < 1 || j >= datum.r() {
        return Err(SectionError::ColumnOutOfRange {
            j,
            max: datum.r().saturating_sub(1),
        });
    }
    let cols = chain_columns(witness, j, datum.q())?;
    let vars: Vec<(usize, usize)> = cols.into_iter().map(|c| (witness.index(c), c)).collect();
    BetaMonomial::from_factors(datum, &[(vars, 1)])
}

/// The full invariant monomial: the degree-(n-r) piece times the corrections
/// at every level below r. Its weight pairs to -(n-j) with the j-th peak,
/// which cancels the weight of the extremal coordinate exactly.
pub fn assemble_invariant(
    witness: &WitnessTuple,
    datum: &MinimalSchubertDatum,
) -> Result<BetaMonomial, SectionError> {
    let mut m = monomial_mr(witness, datum)?;
    for j in 1..datum.r() {
        m = m.mul(&monomial_mprime(witness, j, datum)?);
    }
    Ok(m)
}

/// Evaluates the monomial at a cell point: the product of the coordinates
/// raised to their exponents. The empty monomial evaluates to 1.
pub fn evaluate(m: &BetaMonomial, p: &CellPoint) -> Result<Value, SectionError> {
    let mut acc = Value::one(p.field());
    for (&(i, j), &e) in m.exponents() {
        acc = acc.mul(&p.get(i, j)?.pow(e));
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;
    use crate::peaks::{all_witness_tuples, gamma_sum};
    use crate::sample;
    use crate::stability::torus_act;
    use num::bigint::BigInt;
    use num::rational::BigRational;
    use std::sync::Arc;

    fn rat(x: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(x))
    }

    fn datum(r: usize, q: usize) -> Arc<MinimalSchubertDatum> {
        MinimalSchubertDatum::shared(r, q).unwrap()
    }

    #[test]
    fn chain_examples() {
        let d = datum(2, 2);
        let j14 = WitnessTuple::new(&d, vec![1, 4]).unwrap();
        assert_eq!(chain(&j14, 2, 2).unwrap(), vec![2, 1]);

        let j11 = WitnessTuple::new(&d, vec![1, 1]).unwrap();
        assert_eq!(chain(&j11, 2, 2).unwrap(), vec![1]);

        // Any start whose witness lies in the first block chains to [1].
        let d33 = datum(3, 3);
        for t in all_witness_tuples(&d33, 3) {
            for start in 1..=3 {
                if t.index(start) <= 3 {
                    assert_eq!(chain(&t, start, 3).unwrap(), vec![1]);
                }
                let ks = chain(&t, start, 3).unwrap();
                assert_eq!(*ks.last().unwrap(), 1);
                assert!(ks.windows(2).all(|w| w[1] < w[0]));
            }
        }
    }

    #[test]
    fn mr_examples() {
        let d = datum(2, 2);
        let j14 = WitnessTuple::new(&d, vec![1, 4]).unwrap();
        let m = monomial_mr(&j14, &d).unwrap();
        assert_eq!(m.degree(), 3);
        assert_eq!(m.exponents()[&(4, 2)], 3);
        assert_eq!(m.exponents()[&(1, 1)], 3);
        let w = m.weight(&d).unwrap();
        assert_eq!(w.coweight_pair(2).unwrap(), rat(-3));
        assert_eq!(w.coweight_pair(4).unwrap(), rat(-3));

        let j11 = WitnessTuple::new(&d, vec![1, 1]).unwrap();
        let m = monomial_mr(&j11, &d).unwrap();
        assert_eq!(m.exponents().len(), 1);
        assert_eq!(m.exponents()[&(1, 2)], 3);

        let d1 = datum(1, 2);
        for &i in d1.c_set(1) {
            let t = WitnessTuple::new(&d1, vec![i]).unwrap();
            let m = monomial_mr(&t, &d1).unwrap();
            assert_eq!(m.exponents()[&(i, 1)], 2);
            assert_eq!(m.weight(&d1).unwrap().coweight_pair(2).unwrap(), rat(-2));
        }
    }

    #[test]
    fn mr_weight_constant_across_peaks() {
        for r in 1..=3usize {
            for q in 2..=3usize {
                let d = datum(r, q);
                let n = d.n() as i64;
                for t in all_witness_tuples(&d, r) {
                    let w = monomial_mr(&t, &d).unwrap().weight(&d).unwrap();
                    for j in 1..=r {
                        assert_eq!(
                            w.coweight_pair(j * q).unwrap(),
                            rat(-(n - r as i64)),
                            "r={r} q={q} t={:?} j={j}",
                            t.indices()
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn mprime_examples_and_step_contract() {
        let d = datum(3, 3);
        let t = WitnessTuple::new(&d, vec![1, 5, 8]).unwrap();
        let m = monomial_mprime(&t, 2, &d).unwrap();
        assert_eq!(m.degree(), 1);
        assert_eq!(m.exponents()[&(5, 2)], 1);
        assert_eq!(m.exponents()[&(1, 1)], 1);
        let w = m.weight(&d).unwrap();
        let pairs: Vec<BigRational> = (1..=3).map(|l| w.coweight_pair(3 * l).unwrap()).collect();
        assert_eq!(pairs, vec![rat(-1), rat(-1), rat(0)]);

        // Level-1 monomial is the single witness variable of column 1.
        for r in 2..=3usize {
            for q in 2..=3usize {
                let d = datum(r, q);
                for t in all_witness_tuples(&d, r) {
                    let m = monomial_mprime(&t, 1, &d).unwrap();
                    assert_eq!(m.exponents().len(), 1);
                    assert_eq!(m.exponents()[&(t.index(1), 1)], 1);
                    for j in 1..r {
                        let w = monomial_mprime(&t, j, &d).unwrap().weight(&d).unwrap();
                        for l in 1..=r {
                            let expect = if l <= j { rat(-1) } else { rat(0) };
                            assert_eq!(w.coweight_pair(l * q).unwrap(), expect);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn mprime_weight_is_negative_gamma_sum() {
        // Two independent routes to the same lattice vector: the chain
        // construction against the descent-sequence sum.
        for r in 1..=3usize {
            for q in 2..=3usize {
                let d = datum(r, q);
                for t in all_witness_tuples(&d, r) {
                    for j in 1..r {
                        let w = monomial_mprime(&t, j, &d).unwrap().weight(&d).unwrap();
                        let g = gamma_sum(&t, j, &d).unwrap();
                        assert_eq!(w, g.neg(), "r={r} q={q} t={:?} j={j}", t.indices());
                    }
                }
            }
        }
    }

    #[test]
    fn assembled_weight_certificate() {
        let d = datum(2, 2);
        let t = WitnessTuple::new(&d, vec![1, 4]).unwrap();
        let w = assemble_invariant(&t, &d).unwrap().weight(&d).unwrap();
        assert_eq!(w.coweight_pair(2).unwrap(), rat(-4));
        assert_eq!(w.coweight_pair(4).unwrap(), rat(-3));

        let d1 = datum(1, 2);
        let t = WitnessTuple::new(&d1, vec![2]).unwrap();
        let w = assemble_invariant(&t, &d1).unwrap().weight(&d1).unwrap();
        assert_eq!(w.coweight_pair(2).unwrap(), rat(-2));

        for r in 1..=3usize {
            for q in 2..=3usize {
                let d = datum(r, q);
                let n = d.n() as i64;
                for t in all_witness_tuples(&d, r) {
                    let w = assemble_invariant(&t, &d).unwrap().weight(&d).unwrap();
                    for j in 1..=r {
                        assert_eq!(
                            w.coweight_pair(j * q).unwrap() + rat(n - j as i64),
                            rat(0),
                            "r={r} q={q} t={:?} j={j}",
                            t.indices()
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn evaluation_basics() {
        let d = datum(2, 2);
        let p =
            sample::sample_semistable_point(&d, FieldSpec::Rational, &mut sample::sample_rng(3, 0));
        assert!(evaluate(&BetaMonomial::unit(), &p).unwrap().is_one());

        // Nonvanishing on points whose witness entries are nonzero.
        for stream in 0..30u64 {
            let mut rng = sample::sample_rng(17, stream);
            for t in all_witness_tuples(&d, 2) {
                let required: Vec<(usize, usize)> = (1..=2).map(|j| (t.index(j), j)).collect();
                let p = sample::sample_point(&d, FieldSpec::Rational, &required, &mut rng);
                let m = assemble_invariant(&t, &d).unwrap();
                assert!(!evaluate(&m, &p).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn evaluation_equivariance_under_torus() {
        // M(t.x) = (prod_j t_j^{n-j}) M(x) for the assembled invariant.
        for (r, q) in [(1usize, 2usize), (2, 2), (2, 3), (3, 2)] {
            let d = datum(r, q);
            let n = d.n() as u64;
            for stream in 0..20u64 {
                let mut rng = sample::sample_rng(23, stream);
                let p = sample::sample_semistable_point(&d, FieldSpec::Rational, &mut rng);
                let t = sample::sample_torus(r, FieldSpec::Rational, &mut rng);
                for wt in all_witness_tuples(&d, r).into_iter().take(4) {
                    let m = assemble_invariant(&wt, &d).unwrap();
                    let lhs = evaluate(&m, &torus_act(&t, &p).unwrap()).unwrap();
                    let mut scale = Value::one(FieldSpec::Rational);
                    for j in 1..=r {
                        scale = scale.mul(&t.component(j).pow(n - j as u64));
                    }
                    assert_eq!(lhs, scale.mul(&evaluate(&m, &p).unwrap()));
                }
            }
        }
    }

    #[test]
    fn factor_validation_rejects_repeated_columns() {
        let d = datum(2, 2);
        let err = BetaMonomial::from_factors(&d, &[(vec![(1, 1), (2, 1)], 1)]).unwrap_err();
        assert_eq!(err, SectionError::RepeatedColumn { j: 1 });
        assert!(BetaMonomial::from_factors(&d, &[(vec![(1, 1), (4, 2)], 2)]).is_ok());
        assert!(BetaMonomial::from_factors(&d, &[(vec![(3, 1)], 1)]).is_err());
    }
}
