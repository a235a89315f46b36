//! The block partition of the column index sets, the block index d, the
//! descent recursion e^k it generates, and the gamma sums whose pairings
//! drive every invariance statement downstream.
//!
//! Naming: `beta` always means an interval root of a datum (the smaller
//! datum reuses the same name for its own columns), while `gamma_sum` is
//! reserved for the sum of interval roots along a descent sequence. The two
//! are kept apart everywhere even where informal usage overloads one letter
//! for both.

use crate::cell::MinimalSchubertDatum;
use crate::lattice::WeightVector;
use num::rational::BigRational;
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PeakError {
    #[error("index {i} is not in C_{j} for q={q}")]
    NotInColumn { i: usize, j: usize, q: usize },
    #[error("column {j} out of range 1..={max}")]
    ColumnOutOfRange { j: usize, max: usize },
    #[error("witness tuple {indices:?} invalid at column {j}")]
    BadWitness { indices: Vec<usize>, j: usize },
}

/// The unique block index p with (i, j) in J_{p,j}, located by interval
/// membership: J_{1,j} covers 1..=q and J_{p,j} covers (p-1)q+2..=pq.
pub fn d_index(i: usize, j: usize, q: usize) -> Result<usize, PeakError> {
    if j >= 1 && i >= 1 && i <= q {
        return Ok(1);
    }
    for p in 2..=j {
        if (p - 1) * q + 2 <= i && i <= p * q {
            return Ok(p);
        }
    }
    Err(PeakError::NotInColumn { i, j, q })
}

/// A choice of one column index per column: i_j in C_j for j = 1..=m.
/// Indexes the affine charts and the descent recursion.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct WitnessTuple {
    indices: Vec<usize>,
}

impl WitnessTuple {
    /// Validates i_j in C_j against the datum; m may be any length up to r.
    pub fn new(datum: &MinimalSchubertDatum, indices: Vec<usize>) -> Result<Self, PeakError> {
        if indices.len() > datum.r() {
            return Err(PeakError::ColumnOutOfRange {
                j: indices.len(),
                max: datum.r(),
            });
        }
        for (jm1, &i) in indices.iter().enumerate() {
            if !datum.contains(i, jm1 + 1) {
                return Err(PeakError::BadWitness {
                    indices: indices.clone(),
                    j: jm1 + 1,
                });
            }
        }
        Ok(WitnessTuple { indices })
    }

    pub fn empty() -> Self {
        WitnessTuple {
            indices: Vec::new(),
        }
    }

    pub fn m(&self) -> usize {
        self.indices.len()
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    /// The witness for column j (1-based).
    pub fn index(&self, j: usize) -> usize {
        self.indices[j - 1]
    }

    /// The prefix (i_1, ..., i_j); j = 0 gives the empty tuple.
    pub fn prefix(&self, j: usize) -> WitnessTuple {
        WitnessTuple {
            indices: self.indices[..j].to_vec(),
        }
    }
}

/// The values e^0 > e^1 > ... > e^m = 0 of the descent recursion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ESequence {
    values: Vec<usize>,
}

impl ESequence {
    pub fn values(&self) -> &[usize] {
        &self.values
    }

    /// The number of steps m (values has length m + 1).
    pub fn steps(&self) -> usize {
        self.values.len() - 1
    }
}

/// Iterates e^0 = j, e^k = d(i_{e^{k-1}}, e^{k-1}) - 1 until the value 0 is
/// reached. Strict decrease guarantees termination.
pub fn e_sequence(witness: &WitnessTuple, j: usize, q: usize) -> Result<ESequence, PeakError> {
    if j < 1 || j > witness.m() {
        return Err(PeakError::ColumnOutOfRange {
            j,
            max: witness.m(),
        });
    }
    let mut values = vec![j];
    loop {
        let cur = *values.last().unwrap();
        if cur == 0 {
            break;
        }
        let next = d_index(witness.index(cur), cur, q)? - 1;
        assert!(next < cur, "descent recursion failed to decrease");
        values.push(next);
    }
    Ok(ESequence { values })
}

/// The root gamma_j attached to a witness tuple: the sum of the interval
/// roots beta_{i_{e^k}, e^k} along the descent sequence, excluding the final
/// zero step. Its pairing with lambda_{lq} is 1 for l <= j and 0 beyond.
pub fn gamma_sum(
    witness: &WitnessTuple,
    j: usize,
    datum: &MinimalSchubertDatum,
) -> Result<WeightVector, PeakError> {
    let seq = e_sequence(witness, j, datum.q())?;
    let mut acc = WeightVector::zero(datum.n());
    for k in 0..seq.steps() {
        let col = seq.values()[k];
        let i = witness.index(col);
        let beta = datum.beta(i, col).map_err(|_| PeakError::NotInColumn {
            i,
            j: col,
            q: datum.q(),
        })?;
        acc = acc.add(beta).expect("rank fixed by datum");
    }
    Ok(acc)
}

/// The pairing table <beta_{i,j}, lambda_{lq}> for all cell coordinates and
/// l = 1..=r, computed from the lattice partial sums.
pub fn beta_pair_table(datum: &MinimalSchubertDatum) -> BTreeMap<(usize, usize), Vec<BigRational>> {
    let mut table = BTreeMap::new();
    for (&(i, j), beta) in datum.betas() {
        let pairings = (1..=datum.r())
            .map(|l| beta.coweight_pair(l * datum.q()).expect("lq < n"))
            .collect();
        table.insert((i, j), pairings);
    }
    table
}

/// All witness tuples over the first `m` columns of the datum.
pub fn all_witness_tuples(datum: &MinimalSchubertDatum, m: usize) -> Vec<WitnessTuple> {
    let mut out = vec![WitnessTuple::empty()];
    for j in 1..=m {
        let mut next = Vec::with_capacity(out.len() * datum.c_set(j).len());
        for t in &out {
            for &i in datum.c_set(j) {
                let mut indices = t.indices.clone();
                indices.push(i);
                next.push(WitnessTuple { indices });
            }
        }
        out = next;
    }
    out
}
