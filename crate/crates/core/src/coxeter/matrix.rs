use std::fmt;

use serde::{Deserialize, Serialize};

use super::GeneratorSubset;
use crate::error::{Error, Result};

/// A Coxeter label `m(s, t)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Label {
    Finite(u32),
    Infinity,
}

impl Label {
    /// The exponent of the relator `(st)^m`, if there is one.
    pub fn order(self) -> Option<u32> {
        match self {
            Label::Finite(m) => Some(m),
            Label::Infinity => None,
        }
    }

    /// `2 cos(pi / m)` for the supported off-diagonal labels. This is the
    /// coefficient of `alpha_s` in `s . alpha_t`, and minus the doubled form.
    pub(crate) fn reflection_coefficient(self) -> i64 {
        match self {
            Label::Finite(2) => 0,
            Label::Finite(3) => 1,
            Label::Infinity => 2,
            Label::Finite(m) => unreachable!("label {m} is rejected at construction"),
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Finite(m) => write!(f, "{m}"),
            Label::Infinity => f.write_str("inf"),
        }
    }
}

/// Symmetric Coxeter matrix with labels in `{1, 2, 3, inf}` and `1` exactly on
/// the diagonal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CoxeterMatrix {
    rank: usize,
    labels: Vec<Label>,
    names: Vec<String>,
}

impl CoxeterMatrix {
    /// All off-diagonal labels `inf`: the free Coxeter group on `names`.
    pub fn free(names: Vec<String>) -> Self {
        let rank = names.len();
        let mut labels = vec![Label::Infinity; rank * rank];
        for i in 0..rank {
            labels[i * rank + i] = Label::Finite(1);
        }
        Self { rank, labels, names }
    }

    /// Builds a matrix from a label function evaluated on `i < j`.
    pub fn from_fn<F>(names: Vec<String>, mut label: F) -> Result<Self>
    where
        F: FnMut(usize, usize) -> Label,
    {
        let mut matrix = Self::free(names);
        for i in 0..matrix.rank {
            for j in (i + 1)..matrix.rank {
                matrix.set(i, j, label(i, j))?;
            }
        }
        Ok(matrix)
    }

    /// Generators named `s_1, ..., s_n`.
    pub fn default_names(rank: usize) -> Vec<String> {
        (1..=rank).map(|i| format!("s_{i}")).collect()
    }

    pub fn set(&mut self, i: usize, j: usize, label: Label) -> Result<()> {
        for index in [i, j] {
            if index >= self.rank {
                return Err(Error::GeneratorOutOfRange { index, rank: self.rank });
            }
        }
        match (i == j, label) {
            (true, Label::Finite(1)) => {}
            (true, _) => return Err(Error::InvalidMatrix(format!("diagonal label at {i} must be 1, got {label}"))),
            (false, Label::Finite(1)) => {
                return Err(Error::InvalidMatrix(format!("label 1 between distinct generators {i} and {j}")))
            }
            (false, Label::Finite(m)) if m != 2 && m != 3 => return Err(Error::UnsupportedLabel { i, j, label: m }),
            (false, _) => {}
        }
        self.labels[i * self.rank + j] = label;
        self.labels[j * self.rank + i] = label;
        Ok(())
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn label(&self, i: usize, j: usize) -> Label {
        self.labels[i * self.rank + j]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// The matrix induced on `subset`, with generators renumbered in
    /// ascending order. Also returns the original index of each new
    /// generator.
    pub fn restrict(&self, subset: &GeneratorSubset) -> (CoxeterMatrix, Vec<usize>) {
        let keep: Vec<usize> = subset.iter().collect();
        let names = keep.iter().map(|&i| self.names[i].clone()).collect();
        let mut restricted = Self::free(names);
        for (a, &i) in keep.iter().enumerate() {
            for (b, &j) in keep.iter().enumerate() {
                restricted.labels[a * keep.len() + b] = self.label(i, j);
            }
        }
        (restricted, keep)
    }

    pub fn to_json(&self) -> CoxeterMatrixJson {
        let mut labels = Vec::new();
        for i in 0..self.rank {
            for j in (i + 1)..self.rank {
                if let Label::Finite(m) = self.label(i, j) {
                    labels.push((i, j, m));
                }
            }
        }
        CoxeterMatrixJson { n: self.rank, labels, names: self.names.clone() }
    }

    pub fn from_json(json: &CoxeterMatrixJson) -> Result<Self> {
        if json.names.len() != json.n {
            return Err(Error::SizeMismatch { expected: json.n, found: json.names.len() });
        }
        let mut matrix = Self::free(json.names.clone());
        for &(i, j, m) in &json.labels {
            if i == j {
                return Err(Error::InvalidMatrix(format!("label listed on the diagonal at {i}")));
            }
            matrix.set(i, j, Label::Finite(m))?;
        }
        Ok(matrix)
    }
}

/// Wire form: finite off-diagonal labels as `(i, j, m)` with `i < j`; absent
/// pairs carry `inf`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoxeterMatrixJson {
    pub n: usize,
    pub labels: Vec<(usize, usize, u32)>,
    pub names: Vec<String>,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_labels() {
        let mut m = CoxeterMatrix::free(CoxeterMatrix::default_names(3));
        assert!(matches!(m.set(0, 1, Label::Finite(4)), Err(Error::UnsupportedLabel { label: 4, .. })));
        assert!(m.set(0, 1, Label::Finite(1)).is_err());
        assert!(m.set(1, 1, Label::Finite(2)).is_err());
        assert!(m.set(0, 3, Label::Finite(2)).is_err());
        m.set(0, 1, Label::Finite(3)).unwrap();
        assert_eq!(m.label(1, 0), Label::Finite(3));
    }

    #[test]
    fn json_roundtrip_and_absent_means_infinity() {
        let mut m = CoxeterMatrix::free(CoxeterMatrix::default_names(3));
        m.set(0, 1, Label::Finite(3)).unwrap();
        m.set(1, 2, Label::Finite(2)).unwrap();
        let json = m.to_json();
        assert_eq!(json.labels, vec![(0, 1, 3), (1, 2, 2)]);
        let text = serde_json::to_string(&json).unwrap();
        let back = CoxeterMatrix::from_json(&serde_json::from_str(&text).unwrap()).unwrap();
        assert_eq!(back, m);
        assert_eq!(back.label(0, 2), Label::Infinity);
    }

    #[test]
    fn restriction_renumbers() {
        let m = CoxeterMatrix::from_fn(CoxeterMatrix::default_names(4), |i, j| {
            if j == i + 1 {
                Label::Finite(3)
            } else {
                Label::Finite(2)
            }
        })
        .unwrap();
        let (r, keep) = m.restrict(&GeneratorSubset::from_indices([1, 2, 3]));
        assert_eq!(keep, vec![1, 2, 3]);
        assert_eq!(r.names(), &["s_2", "s_3", "s_4"]);
        assert_eq!(r.label(0, 1), Label::Finite(3));
        assert_eq!(r.label(0, 2), Label::Finite(2));
    }
}
