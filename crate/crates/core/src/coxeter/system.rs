//! Word problem, lengths, descents and finite parabolic subgroups via the
//! geometric representation.
//!
//! The simple reflection `s_i` acts on root coordinates by
//! `s_i(alpha_j) = alpha_j + c(i, j) alpha_i` with `c = 0, 1, 2` for labels
//! `2, 3, inf`, and preserves the doubled form `B(i, i) = 2`,
//! `B(i, j) = -c(i, j)`. The representation is faithful, so two words name
//! the same element exactly when their matrices agree.

use indexmap::IndexSet;
use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::element::determinant;
use super::{CoxeterMatrix, GeneratorSubset, GroupElement, RootSign, Word};
use crate::error::{Error, Result};

/// Default element budget for parabolic enumeration.
pub const DEFAULT_ENUM_CAP: usize = 10_000;

/// Upper bound on descent-stripping steps before an input is declared
/// invalid.
const MAX_REDUCTION_STEPS: usize = 1 << 20;

/// A Coxeter matrix together with its realized generators.
#[derive(Clone, Debug)]
pub struct CoxeterSystem {
    matrix: CoxeterMatrix,
    /// Row-major `c(i, j)`; the diagonal is unused.
    coeffs: Vec<i64>,
    generators: Vec<GroupElement>,
}

impl CoxeterSystem {
    pub fn new(matrix: CoxeterMatrix) -> Self {
        let n = matrix.rank();
        let mut coeffs = vec![0i64; n * n];
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    coeffs[i * n + j] = matrix.label(i, j).reflection_coefficient();
                }
            }
        }
        let generators =
            (0..n).map(|i| GroupElement::identity(n).mul_reflection_right(i, &coeffs[i * n..(i + 1) * n])).collect();
        Self { matrix, coeffs, generators }
    }

    pub fn matrix(&self) -> &CoxeterMatrix {
        &self.matrix
    }

    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement::identity(self.rank())
    }

    fn coeff_row(&self, i: usize) -> &[i64] {
        let n = self.rank();
        &self.coeffs[i * n..(i + 1) * n]
    }

    fn check_index(&self, i: usize) -> Result<()> {
        if i < self.rank() {
            Ok(())
        } else {
            Err(Error::GeneratorOutOfRange { index: i, rank: self.rank() })
        }
    }

    fn check_subset(&self, subset: &GeneratorSubset) -> Result<()> {
        match subset.max() {
            Some(i) => self.check_index(i),
            None => Ok(()),
        }
    }

    pub fn simple_reflection(&self, i: usize) -> Result<&GroupElement> {
        self.check_index(i)?;
        Ok(&self.generators[i])
    }

    /// The doubled Gram matrix, row-major.
    pub fn form(&self) -> Vec<i64> {
        let n = self.rank();
        (0..n * n).map(|k| if k / n == k % n { 2 } else { -self.coeffs[k] }).collect()
    }

    /// `w * s_i` in O(rank^2).
    pub fn mul_generator(&self, w: &GroupElement, i: usize) -> GroupElement {
        w.mul_reflection_right(i, self.coeff_row(i))
    }

    /// `s_i * w` in O(rank).
    pub fn generator_mul(&self, i: usize, w: &GroupElement) -> GroupElement {
        w.mul_reflection_left(i, self.coeff_row(i))
    }

    pub fn evaluate(&self, word: &Word) -> Result<GroupElement> {
        let mut w = self.identity();
        for &i in word.letters() {
            self.check_index(i)?;
            w = self.mul_generator(&w, i);
        }
        Ok(w)
    }

    pub fn multiply(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        a * b
    }

    pub fn invert(&self, w: &GroupElement) -> Result<GroupElement> {
        self.evaluate(&self.reduced_word(w)?.reversed())
    }

    /// `a b a^-1 b^-1`.
    pub fn commutator(&self, a: &GroupElement, b: &GroupElement) -> Result<GroupElement> {
        Ok(&(&(a * b) * &self.invert(a)?) * &self.invert(b)?)
    }

    /// Right descent: `l(w s_i) < l(w)`, equivalently `w . alpha_i < 0`.
    pub fn is_descent(&self, w: &GroupElement, i: usize) -> Result<bool> {
        self.check_index(i)?;
        match w.column_sign(i) {
            RootSign::Positive => Ok(false),
            RootSign::Negative => Ok(true),
            sign => Err(Error::NotAGroupElement(format!("image of simple root {i} has sign pattern {sign:?}"))),
        }
    }

    pub fn descents(&self, w: &GroupElement) -> Result<GeneratorSubset> {
        let mut set = GeneratorSubset::new();
        for i in 0..self.rank() {
            if self.is_descent(w, i)? {
                set.insert(i);
            }
        }
        Ok(set)
    }

    /// A reduced expression, found by stripping the lowest-index right
    /// descent until the identity is reached.
    pub fn reduced_word(&self, w: &GroupElement) -> Result<Word> {
        if w.rank() != self.rank() {
            return Err(Error::SizeMismatch { expected: self.rank(), found: w.rank() });
        }
        let mut current = w.clone();
        let mut letters = Vec::new();
        while !current.is_identity() {
            if letters.len() >= MAX_REDUCTION_STEPS {
                return Err(Error::NotAGroupElement("descent stripping did not terminate".into()));
            }
            let mut descent = None;
            for i in 0..self.rank() {
                if self.is_descent(&current, i)? {
                    descent = Some(i);
                    break;
                }
            }
            let i = descent.ok_or_else(|| Error::NotAGroupElement("non-identity matrix without a descent".into()))?;
            current = self.mul_generator(&current, i);
            letters.push(i);
        }
        letters.reverse();
        Ok(Word::new(letters))
    }

    pub fn length(&self, w: &GroupElement) -> Result<usize> {
        Ok(self.reduced_word(w)?.len())
    }

    /// Leading principal minors of the doubled Gram matrix restricted to
    /// `subset` (in ascending index order).
    pub fn leading_minors(&self, subset: &GeneratorSubset) -> Vec<BigInt> {
        let idx: Vec<usize> = subset.iter().collect();
        let n = self.rank();
        let form = self.form();
        (1..=idx.len())
            .map(|k| {
                let block = idx[..k]
                    .iter()
                    .map(|&i| idx[..k].iter().map(|&j| BigInt::from(form[i * n + j])).collect())
                    .collect();
                determinant(block)
            })
            .collect()
    }

    /// Whether `<subset>` is finite: the restricted form is positive definite
    /// (Sylvester's criterion on exact integer minors).
    pub fn is_spherical(&self, subset: &GeneratorSubset) -> bool {
        let idx: Vec<usize> = subset.iter().collect();
        let n = self.rank();
        let form = self.form();
        (1..=idx.len()).all(|k| {
            let block =
                idx[..k].iter().map(|&i| idx[..k].iter().map(|&j| BigInt::from(form[i * n + j])).collect()).collect();
            determinant(block).is_positive()
        })
    }

    /// The longest element of a finite `<subset>`, reached by multiplying by
    /// the lowest-index non-descent of `subset` until none is left.
    pub fn longest_element(&self, subset: &GeneratorSubset) -> Result<GroupElement> {
        self.check_subset(subset)?;
        if !self.is_spherical(subset) {
            return Err(Error::NotSpherical);
        }
        let mut w = self.identity();
        loop {
            let mut ascent = None;
            for i in subset.iter() {
                if !self.is_descent(&w, i)? {
                    ascent = Some(i);
                    break;
                }
            }
            match ascent {
                Some(i) => w = self.mul_generator(&w, i),
                None => return Ok(w),
            }
        }
    }

    /// All elements of `<subset>` by breadth-first closure, identity first
    /// and in nondecreasing length. Fails once more than `cap` elements have
    /// been found.
    pub fn enumerate_parabolic(&self, subset: &GeneratorSubset, cap: usize) -> Result<IndexSet<GroupElement>> {
        self.check_subset(subset)?;
        let gens: Vec<usize> = subset.iter().collect();
        let mut elements = IndexSet::new();
        elements.insert(self.identity());
        let mut next = 0;
        while next < elements.len() {
            let w = elements[next].clone();
            next += 1;
            for &i in &gens {
                if elements.insert(self.mul_generator(&w, i)) && elements.len() > cap {
                    return Err(Error::CapExceeded { cap });
                }
            }
        }
        if elements.len() > cap {
            return Err(Error::CapExceeded { cap });
        }
        Ok(elements)
    }

    /// Closure of arbitrary elements under multiplication (they are assumed
    /// to generate a finite group).
    pub fn close(&self, generators: &[GroupElement], cap: usize) -> Result<IndexSet<GroupElement>> {
        let mut elements = IndexSet::new();
        elements.insert(self.identity());
        let mut next = 0;
        while next < elements.len() {
            let w = elements[next].clone();
            next += 1;
            for g in generators {
                if elements.insert(&w * g) && elements.len() > cap {
                    return Err(Error::CapExceeded { cap });
                }
            }
        }
        if elements.len() > cap {
            return Err(Error::CapExceeded { cap });
        }
        Ok(elements)
    }

    /// Elements of word length at most `radius` in the generators of
    /// `subset`, grouped by exact length.
    pub fn ball(&self, subset: &GeneratorSubset, radius: usize) -> Result<Vec<Vec<GroupElement>>> {
        self.check_subset(subset)?;
        let gens: Vec<usize> = subset.iter().collect();
        let mut seen = std::collections::HashSet::new();
        seen.insert(self.identity());
        let mut spheres = vec![vec![self.identity()]];
        for _ in 0..radius {
            let mut sphere = Vec::new();
            for w in spheres.last().unwrap() {
                for &i in &gens {
                    let v = self.mul_generator(w, i);
                    if seen.insert(v.clone()) {
                        sphere.push(v);
                    }
                }
            }
            if sphere.is_empty() {
                break;
            }
            spheres.push(sphere);
        }
        Ok(spheres)
    }

    /// `w^T B w == B`.
    pub fn preserves_form(&self, w: &GroupElement) -> bool {
        let n = self.rank();
        if w.rank() != n {
            return false;
        }
        let form = self.form();
        let m = w.to_big();
        for a in 0..n {
            for b in 0..n {
                let mut acc = BigInt::zero();
                for i in 0..n {
                    if m[i * n + a].is_zero() {
                        continue;
                    }
                    for j in 0..n {
                        let f = form[i * n + j];
                        if f != 0 {
                            acc += &m[i * n + a] * BigInt::from(f) * &m[j * n + b];
                        }
                    }
                }
                if acc != BigInt::from(form[a * n + b]) {
                    return false;
                }
            }
        }
        true
    }

    /// Every image of a simple root is a positive or negative root vector.
    pub fn is_sign_coherent(&self, w: &GroupElement) -> bool {
        (0..w.rank()).all(|i| matches!(w.column_sign(i), RootSign::Positive | RootSign::Negative))
    }
}
