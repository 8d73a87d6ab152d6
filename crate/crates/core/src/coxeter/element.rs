//! Exact integer matrices acting on simple-root coordinates.
//!
//! Entries are kept as `i64` while they fit and promoted to `BigInt` on
//! overflow, so equality is always exact. The representation is canonical: a
//! matrix is stored big only if some entry does not fit in `i64`.

use std::fmt;
use std::ops::Mul;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

#[derive(Clone, PartialEq, Eq, Hash)]
enum Entries {
    Small(Vec<i64>),
    Big(Vec<BigInt>),
}

/// An element of a Coxeter group in its geometric representation. Column `j`
/// holds the coordinates of the image of the simple root `alpha_j`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GroupElement {
    rank: usize,
    entries: Entries,
}

/// Sign pattern of a vector of root coordinates.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RootSign {
    Positive,
    Negative,
    Mixed,
    Zero,
}

impl GroupElement {
    pub fn identity(rank: usize) -> Self {
        let mut entries = vec![0i64; rank * rank];
        for i in 0..rank {
            entries[i * rank + i] = 1;
        }
        Self { rank, entries: Entries::Small(entries) }
    }

    /// Row-major construction. No group-membership check is made; use
    /// `CoxeterSystem::preserves_form` for that.
    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let rank = rows.len();
        assert!(rows.iter().all(|r| r.len() == rank), "matrix must be square");
        Self { rank, entries: Entries::Small(rows.concat()) }
    }

    pub(crate) fn from_big(rank: usize, big: Vec<BigInt>) -> Self {
        let small: Option<Vec<i64>> = big.iter().map(|x| x.to_i64()).collect();
        let entries = match small {
            Some(small) => Entries::Small(small),
            None => Entries::Big(big),
        };
        Self { rank, entries }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn entry(&self, row: usize, col: usize) -> BigInt {
        match &self.entries {
            Entries::Small(e) => BigInt::from(e[row * self.rank + col]),
            Entries::Big(e) => e[row * self.rank + col].clone(),
        }
    }

    pub(crate) fn to_big(&self) -> Vec<BigInt> {
        match &self.entries {
            Entries::Small(e) => e.iter().map(|&x| BigInt::from(x)).collect(),
            Entries::Big(e) => e.clone(),
        }
    }

    pub fn is_identity(&self) -> bool {
        let n = self.rank;
        match &self.entries {
            Entries::Small(e) => e.iter().enumerate().all(|(k, &x)| x == i64::from(k / n == k % n)),
            Entries::Big(_) => false,
        }
    }

    /// Sign pattern of column `col`, i.e. of the root `w . alpha_col`.
    pub fn column_sign(&self, col: usize) -> RootSign {
        let n = self.rank;
        let (mut pos, mut neg) = (false, false);
        match &self.entries {
            Entries::Small(e) => {
                for r in 0..n {
                    let x = e[r * n + col];
                    pos |= x > 0;
                    neg |= x < 0;
                }
            }
            Entries::Big(e) => {
                for r in 0..n {
                    let x = &e[r * n + col];
                    pos |= x.is_positive();
                    neg |= x.is_negative();
                }
            }
        }
        match (pos, neg) {
            (true, false) => RootSign::Positive,
            (false, true) => RootSign::Negative,
            (true, true) => RootSign::Mixed,
            (false, false) => RootSign::Zero,
        }
    }

    /// `self * s_i`, where column `j` of `s_i` is `e_j + coeffs[j] e_i` for
    /// `j != i` and `-e_i` for `j == i`.
    pub(crate) fn mul_reflection_right(&self, i: usize, coeffs: &[i64]) -> Self {
        let n = self.rank;
        if let Entries::Small(e) = &self.entries {
            let mut out = e.clone();
            let mut ok = true;
            'outer: for r in 0..n {
                let mi = e[r * n + i];
                for j in 0..n {
                    let value = if j == i {
                        mi.checked_neg()
                    } else if coeffs[j] == 0 {
                        continue;
                    } else {
                        coeffs[j].checked_mul(mi).and_then(|t| t.checked_add(e[r * n + j]))
                    };
                    match value {
                        Some(v) => out[r * n + j] = v,
                        None => {
                            ok = false;
                            break 'outer;
                        }
                    }
                }
            }
            if ok {
                return Self { rank: n, entries: Entries::Small(out) };
            }
        }
        let e = self.to_big();
        let mut out = e.clone();
        for r in 0..n {
            let mi = &e[r * n + i];
            for j in 0..n {
                if j == i {
                    out[r * n + j] = -mi;
                } else if coeffs[j] != 0 {
                    out[r * n + j] = &e[r * n + j] + BigInt::from(coeffs[j]) * mi;
                }
            }
        }
        Self::from_big(n, out)
    }

    /// `s_i * self`: only row `i` changes.
    pub(crate) fn mul_reflection_left(&self, i: usize, coeffs: &[i64]) -> Self {
        let n = self.rank;
        if let Entries::Small(e) = &self.entries {
            let mut out = e.clone();
            let mut ok = true;
            for c in 0..n {
                let mut acc = Some(-(e[i * n + c] as i128));
                for (j, &k) in coeffs.iter().enumerate() {
                    if j != i && k != 0 {
                        acc = acc.and_then(|a| a.checked_add(k as i128 * e[j * n + c] as i128));
                    }
                }
                match acc.and_then(|a| i64::try_from(a).ok()) {
                    Some(v) => out[i * n + c] = v,
                    None => {
                        ok = false;
                        break;
                    }
                }
            }
            if ok {
                return Self { rank: n, entries: Entries::Small(out) };
            }
        }
        let e = self.to_big();
        let mut out = e.clone();
        for c in 0..n {
            let mut acc = -&e[i * n + c];
            for (j, &k) in coeffs.iter().enumerate() {
                if j != i && k != 0 {
                    acc += BigInt::from(k) * &e[j * n + c];
                }
            }
            out[i * n + c] = acc;
        }
        Self::from_big(n, out)
    }

    fn small_product_column(a: &[i64], b: &[i64], n: usize, col: usize, out: &mut [i64]) -> bool {
        for r in 0..n {
            let mut acc: i128 = 0;
            for k in 0..n {
                let t = a[r * n + k] as i128 * b[k * n + col] as i128;
                match acc.checked_add(t) {
                    Some(v) => acc = v,
                    None => return false,
                }
            }
            match i64::try_from(acc) {
                Ok(v) => out[r] = v,
                Err(_) => return false,
            }
        }
        true
    }

    /// Whether `self * other == other * self`, comparing one column at a time
    /// so that most non-commuting pairs are rejected early.
    pub fn commutes_with(&self, other: &Self) -> bool {
        assert_eq!(self.rank, other.rank, "rank mismatch");
        let n = self.rank;
        if let (Entries::Small(a), Entries::Small(b)) = (&self.entries, &other.entries) {
            let mut left = vec![0i64; n];
            let mut right = vec![0i64; n];
            for col in 0..n {
                if !Self::small_product_column(a, b, n, col, &mut left)
                    || !Self::small_product_column(b, a, n, col, &mut right)
                {
                    return self * other == other * self;
                }
                if left != right {
                    return false;
                }
            }
            return true;
        }
        self * other == other * self
    }

    pub fn pow(&self, k: usize) -> Self {
        let mut acc = Self::identity(self.rank);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Rows as `BigInt`s; mainly for display and serialization.
    pub fn rows(&self) -> Vec<Vec<BigInt>> {
        let e = self.to_big();
        e.chunks(self.rank.max(1)).take(self.rank).map(|r| r.to_vec()).collect()
    }
}

impl Mul for &GroupElement {
    type Output = GroupElement;

    fn mul(self, other: &GroupElement) -> GroupElement {
        assert_eq!(self.rank, other.rank, "rank mismatch");
        let n = self.rank;
        if let (Entries::Small(a), Entries::Small(b)) = (&self.entries, &other.entries) {
            let mut out = vec![0i64; n * n];
            let mut column = vec![0i64; n];
            let mut ok = true;
            for col in 0..n {
                if !GroupElement::small_product_column(a, b, n, col, &mut column) {
                    ok = false;
                    break;
                }
                for r in 0..n {
                    out[r * n + col] = column[r];
                }
            }
            if ok {
                return GroupElement { rank: n, entries: Entries::Small(out) };
            }
        }
        let (a, b) = (self.to_big(), other.to_big());
        let mut out = vec![BigInt::zero(); n * n];
        for r in 0..n {
            for k in 0..n {
                let x = &a[r * n + k];
                if x.is_zero() {
                    continue;
                }
                for c in 0..n {
                    out[r * n + c] += x * &b[k * n + c];
                }
            }
        }
        GroupElement::from_big(n, out)
    }
}

impl Mul for GroupElement {
    type Output = GroupElement;

    fn mul(self, other: GroupElement) -> GroupElement {
        &self * &other
    }
}

impl fmt::Debug for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> =
            self.rows().iter().map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")).collect();
        write!(f, "[{}]", rows.join("; "))
    }
}

/// Exact determinant by fraction-free (Bareiss) elimination with row pivoting.
pub(crate) fn determinant(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match ((k + 1)..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in (k + 1)..n {
            for j in (k + 1)..n {
                let v = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
                m[i][j] = v;
            }
        }
        prev = m[k][k].clone();
    }
    sign * m[n - 1][n - 1].clone()
}
