//! Type-A root and weight lattice arithmetic in sum-zero rational
//! epsilon-coordinates, together with the Weyl group acting by coordinate
//! permutation.
//!
//! Working in epsilon-coordinates makes the pairing with the fundamental
//! one-parameter subgroup `lambda_j` a partial sum of the first `j`
//! coordinates, which keeps every pairing we need exact: integral on the
//! root lattice, rational on weights.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::Zero;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LatticeError {
    #[error("index {index} out of range 1..={max}")]
    IndexOutOfRange { index: usize, max: usize },
    #[error("rank mismatch: {left} vs {right}")]
    RankMismatch { left: usize, right: usize },
    #[error("coordinates of length {got}, expected {expected}")]
    BadLength { got: usize, expected: usize },
    #[error("coordinates do not sum to zero")]
    NotSumZero,
    #[error("images {0:?} are not a bijection of 1..=n")]
    NotBijective(Vec<usize>),
    #[error("letter {letter} out of range 1..={max}")]
    LetterOutOfRange { letter: usize, max: usize },
}

fn rat(x: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

/// A rational vector in the sum-zero hyperplane of the epsilon-coordinate
/// space for SL(n); houses roots, fundamental weights and their Weyl images.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightVector {
    coords: Vec<BigRational>,
}

impl WeightVector {
    /// Builds a weight from explicit coordinates, checking the sum-zero
    /// normalization.
    pub fn new(n: usize, coords: Vec<BigRational>) -> Result<Self, LatticeError> {
        if coords.len() != n {
            return Err(LatticeError::BadLength {
                got: coords.len(),
                expected: n,
            });
        }
        let sum: BigRational = coords.iter().sum();
        if !sum.is_zero() {
            return Err(LatticeError::NotSumZero);
        }
        Ok(WeightVector { coords })
    }

    pub fn zero(n: usize) -> Self {
        WeightVector {
            coords: vec![BigRational::zero(); n],
        }
    }

    /// The simple root `alpha_i = eps_i - eps_{i+1}`.
    pub fn simple_root(i: usize, n: usize) -> Result<Self, LatticeError> {
        if i < 1 || i > n.saturating_sub(1) {
            return Err(LatticeError::IndexOutOfRange {
                index: i,
                max: n.saturating_sub(1),
            });
        }
        let mut coords = vec![BigRational::zero(); n];
        coords[i - 1] = rat(1);
        coords[i] = rat(-1);
        Ok(WeightVector { coords })
    }

    /// The fundamental weight `omega_r`: `1 - r/n` at the first r positions
    /// and `-r/n` elsewhere, so the partial sums realize the duality
    /// `<omega_r, alpha_j> = delta_{r,j}`.
    pub fn fundamental_weight(r: usize, n: usize) -> Result<Self, LatticeError> {
        if r < 1 || r > n.saturating_sub(1) {
            return Err(LatticeError::IndexOutOfRange {
                index: r,
                max: n.saturating_sub(1),
            });
        }
        let frac = BigRational::new(BigInt::from(r as i64), BigInt::from(n as i64));
        let coords = (0..n)
            .map(|k| if k < r { rat(1) - &frac } else { -frac.clone() })
            .collect();
        Ok(WeightVector { coords })
    }

    pub fn n(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[BigRational] {
        &self.coords
    }

    pub fn add(&self, other: &WeightVector) -> Result<WeightVector, LatticeError> {
        if self.n() != other.n() {
            return Err(LatticeError::RankMismatch {
                left: self.n(),
                right: other.n(),
            });
        }
        let coords = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| a + b)
            .collect();
        Ok(WeightVector { coords })
    }

    pub fn sub(&self, other: &WeightVector) -> Result<WeightVector, LatticeError> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> WeightVector {
        WeightVector {
            coords: self.coords.iter().map(|c| -c).collect(),
        }
    }

    pub fn scale_int(&self, k: i64) -> WeightVector {
        let k = rat(k);
        WeightVector {
            coords: self.coords.iter().map(|c| c * &k).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    /// Pairing with the fundamental one-parameter subgroup `lambda_j`: the
    /// partial sum of the first `j` coordinates. On the root lattice this is
    /// the coefficient of `alpha_j`.
    pub fn coweight_pair(&self, j: usize) -> Result<BigRational, LatticeError> {
        let n = self.n();
        if j < 1 || j > n.saturating_sub(1) {
            return Err(LatticeError::IndexOutOfRange {
                index: j,
                max: n.saturating_sub(1),
            });
        }
        Ok(self.coords[..j].iter().sum())
    }

    /// Coefficients in the simple-root basis, provided they are all integral
    /// (i.e. the vector lies in the root lattice).
    pub fn alpha_coords(&self) -> Option<Vec<BigInt>> {
        let n = self.n();
        let mut out = Vec::with_capacity(n - 1);
        let mut partial = BigRational::zero();
        for k in 0..n.saturating_sub(1) {
            partial += &self.coords[k];
            if !partial.is_integer() {
                return None;
            }
            out.push(partial.to_integer());
        }
        Some(out)
    }

    pub fn is_root_lattice(&self) -> bool {
        self.alpha_coords().is_some()
    }
}

impl fmt::Display for WeightVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, c) in self.coords.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// A Weyl element in one-line notation: `images[k-1] = w(k)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self, LatticeError> {
        let n = images.len();
        let mut seen = vec![false; n + 1];
        for &v in &images {
            if v < 1 || v > n || seen[v] {
                return Err(LatticeError::NotBijective(images.clone()));
            }
            seen[v] = true;
        }
        Ok(Permutation { images })
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (1..=n).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// `w(k)`, 1-based.
    pub fn image(&self, k: usize) -> usize {
        self.images[k - 1]
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.n()];
        for (k, &v) in self.images.iter().enumerate() {
            images[v - 1] = k + 1;
        }
        Permutation { images }
    }

    /// Composition `(self ∘ other)(k) = self(other(k))`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation, LatticeError> {
        if self.n() != other.n() {
            return Err(LatticeError::RankMismatch {
                left: self.n(),
                right: other.n(),
            });
        }
        let images = (1..=self.n()).map(|k| self.image(other.image(k))).collect();
        Ok(Permutation { images })
    }

    /// Coxeter length = number of inversions of the one-line word.
    pub fn length(&self) -> usize {
        let mut count = 0;
        for a in 0..self.n() {
            for b in a + 1..self.n() {
                if self.images[a] > self.images[b] {
                    count += 1;
                }
            }
        }
        count
    }

    /// Whether `w` is the minimal coset representative for the maximal
    /// parabolic at position `r`: ascending on `1..=r` and on `r+1..=n`.
    pub fn is_minimal_rep(&self, r: usize) -> bool {
        let asc = |s: &[usize]| s.windows(2).all(|w| w[0] < w[1]);
        r <= self.n() && asc(&self.images[..r]) && asc(&self.images[r..])
    }

    /// Weyl action on a weight: the output coordinate at position `w(k)` is
    /// the input coordinate at position `k`.
    pub fn apply(&self, mu: &WeightVector) -> Result<WeightVector, LatticeError> {
        if self.n() != mu.n() {
            return Err(LatticeError::RankMismatch {
                left: self.n(),
                right: mu.n(),
            });
        }
        let mut coords = vec![BigRational::zero(); mu.n()];
        for k in 1..=self.n() {
            coords[self.image(k) - 1] = mu.coords[k - 1].clone();
        }
        Ok(WeightVector { coords })
    }

    /// The positive roots sent to negative roots by `w^{-1}`: all
    /// `eps_a - eps_b` with `a < b` and `w^{-1}(a) > w^{-1}(b)`. Cardinality
    /// equals the length of `w`.
    pub fn inversion_roots(&self) -> Vec<WeightVector> {
        let winv = self.inverse();
        let n = self.n();
        let mut roots = Vec::new();
        for a in 1..=n {
            for b in a + 1..=n {
                if winv.image(a) > winv.image(b) {
                    let mut coords = vec![BigRational::zero(); n];
                    coords[a - 1] = rat(1);
                    coords[b - 1] = rat(-1);
                    roots.push(WeightVector { coords });
                }
            }
        }
        roots
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({})",
            self.images
                .iter()
                .map(|v| v.to_string())
                .collect::<Vec<_>>()
                .join(",")
        )
    }
}

/// A word in the simple reflections `s_1 .. s_{n-1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReducedWord {
    n: usize,
    letters: Vec<usize>,
}

impl ReducedWord {
    pub fn new(n: usize, letters: Vec<usize>) -> Result<Self, LatticeError> {
        for &l in &letters {
            if l < 1 || l > n.saturating_sub(1) {
                return Err(LatticeError::LetterOutOfRange {
                    letter: l,
                    max: n.saturating_sub(1),
                });
            }
        }
        Ok(ReducedWord { n, letters })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn letters(&self) -> &[usize] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Product of the adjacent transpositions, leftmost letter applied last.
    /// Processing the letters left to right therefore right-multiplies, i.e.
    /// swaps positions `l, l+1` of the one-line word.
    pub fn to_permutation(&self) -> Permutation {
        let mut images: Vec<usize> = (1..=self.n).collect();
        for &l in &self.letters {
            images.swap(l - 1, l);
        }
        Permutation { images }
    }

    /// Reduced iff the induced permutation has length equal to word length.
    pub fn is_reduced(&self) -> bool {
        self.to_permutation().length() == self.len()
    }
}

pub fn word_to_permutation(word: &ReducedWord) -> Permutation {
    word.to_permutation()
}
