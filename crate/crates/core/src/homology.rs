//! Exact integer linear algebra and cellular homology.
//!
//! Everything in this module works over arbitrary-precision integers; no
//! floating point is involved anywhere. Homology is computed from the
//! boundary matrices of a [`QuotientComplex`](crate::quotient::QuotientComplex)
//! via Smith normal form, and reported as Betti ranks plus torsion
//! coefficients in divisibility-chain form.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::quotient::QuotientComplex;

/// Marker describing the algorithmic behavior of this module; feeds the
/// survey store version tag so stale caches never mask a change here.
pub const BEHAVIOR_MARKER: &str = "homology:snf-minpivot-divchain/v1";

#[derive(Debug, Error)]
pub enum HomologyError {
    #[error("chain complex is inconsistent: boundary squared is nonzero at degree {degree}")]
    InconsistentComplex { degree: usize },
}

/// Dense matrix with arbitrary-precision integer entries.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    /// Builds a matrix from dense rows. Panics if the rows are ragged.
    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut m = IntMatrix::zeros(r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged rows");
            for (j, &v) in row.iter().enumerate() {
                m.data[i * c + j] = BigInt::from(v);
            }
        }
        m
    }

    /// Builds a matrix from (row, col, value) triplets, summing duplicates.
    pub fn from_triplets(rows: usize, cols: usize, triplets: &[(usize, usize, i64)]) -> Self {
        let mut m = IntMatrix::zeros(rows, cols);
        for &(r, c, v) in triplets {
            assert!(r < rows && c < cols, "triplet out of range");
            m.data[r * cols + c] += v;
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &BigInt {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: impl Into<BigInt>) {
        self.data[r * self.cols + c] = value.into();
    }

    pub fn column(&self, c: usize) -> Vec<BigInt> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.rows.min(self.cols))
            .map(|i| self.get(i, i).clone())
            .collect()
    }

    pub fn mul(&self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch");
        let mut out = IntMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        out.data[i * rhs.cols + j] += a * b;
                    }
                }
            }
        }
        out
    }

    /// Nonzero entries of column `c` as (row, value) pairs, for callers that
    /// walk the matrix sparsely.
    pub fn sparse_column(&self, c: usize) -> Vec<(usize, BigInt)> {
        (0..self.rows)
            .filter_map(|r| {
                let v = self.get(r, c);
                (!v.is_zero()).then(|| (r, v.clone()))
            })
            .collect()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for r in 0..self.rows {
            self.data.swap(r * self.cols + a, r * self.cols + b);
        }
    }

    fn negate_row(&mut self, r: usize) {
        for c in 0..self.cols {
            let i = r * self.cols + c;
            if !self.data[i].is_zero() {
                let v = -std::mem::take(&mut self.data[i]);
                self.data[i] = v;
            }
        }
    }

    /// row[dst] -= factor * row[src], starting at `from_col`.
    fn row_submul(&mut self, dst: usize, src: usize, factor: &BigInt, from_col: usize) {
        if factor.is_zero() {
            return;
        }
        let cols = self.cols;
        let (dst_row, src_row): (&mut [BigInt], &[BigInt]) = if dst < src {
            let (lo, hi) = self.data.split_at_mut(src * cols);
            (&mut lo[dst * cols..(dst + 1) * cols], &hi[..cols])
        } else {
            let (lo, hi) = self.data.split_at_mut(dst * cols);
            (&mut hi[..cols], &lo[src * cols..(src + 1) * cols])
        };
        for c in from_col..cols {
            if !src_row[c].is_zero() {
                dst_row[c] -= factor * &src_row[c];
            }
        }
    }

    /// col[dst] -= factor * col[src], starting at `from_row`.
    fn col_submul(&mut self, dst: usize, src: usize, factor: &BigInt, from_row: usize) {
        if factor.is_zero() {
            return;
        }
        for r in from_row..self.rows {
            let s = r * self.cols + src;
            if !self.data[s].is_zero() {
                let t = factor * &self.data[s];
                self.data[r * self.cols + dst] -= t;
            }
        }
    }

    /// row[dst] += row[src], starting at `from_col`.
    fn row_add(&mut self, dst: usize, src: usize, from_col: usize) {
        let cols = self.cols;
        let (dst_row, src_row): (&mut [BigInt], &[BigInt]) = if dst < src {
            let (lo, hi) = self.data.split_at_mut(src * cols);
            (&mut lo[dst * cols..(dst + 1) * cols], &hi[..cols])
        } else {
            let (lo, hi) = self.data.split_at_mut(dst * cols);
            (&mut hi[..cols], &lo[src * cols..(src + 1) * cols])
        };
        for c in from_col..cols {
            if !src_row[c].is_zero() {
                dst_row[c] += &src_row[c];
            }
        }
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|c| self.get(r, c).to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Result of a Smith normal form computation.
///
/// `d` is diagonal with nonnegative entries, nonzero entries first, each
/// dividing the next. When transforms are retained, `u * a * v == d` with
/// `u`, `v` unimodular.
#[derive(Clone, Debug)]
pub struct SnfResult {
    pub d: IntMatrix,
    pub u: Option<IntMatrix>,
    pub v: Option<IntMatrix>,
    pub rank: usize,
}

impl SnfResult {
    /// Diagonal entries strictly greater than one, in divisibility-chain order.
    pub fn torsion(&self) -> Vec<BigInt> {
        self.d
            .diagonal()
            .into_iter()
            .filter(|d| d > &BigInt::one())
            .collect()
    }
}

fn min_pivot(m: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(BigInt, usize, usize)> = None;
    for i in t..m.rows() {
        for j in t..m.cols() {
            let e = m.get(i, j);
            if e.is_zero() {
                continue;
            }
            let a = e.abs();
            if a.is_one() {
                return Some((i, j));
            }
            match &best {
                Some((b, _, _)) if *b <= a => {}
                _ => best = Some((a, i, j)),
            }
        }
    }
    best.map(|(_, i, j)| (i, j))
}

fn first_nondivisible(m: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let d = m.get(t, t).clone();
    for i in t + 1..m.rows() {
        for j in t + 1..m.cols() {
            if !(m.get(i, j) % &d).is_zero() {
                return Some((i, j));
            }
        }
    }
    None
}

/// Smith normal form by unimodular row and column operations.
///
/// Pivots are chosen by smallest nonzero absolute value, row-major order
/// breaking ties; this keeps intermediate entry growth down on the boundary
/// matrices this crate produces. Deterministic for a given input.
pub fn smith_normal_form(a: &IntMatrix, keep_transforms: bool) -> SnfResult {
    let mut m = a.clone();
    let rows = m.rows();
    let cols = m.cols();
    let mut u = keep_transforms.then(|| IntMatrix::identity(rows));
    let mut v = keep_transforms.then(|| IntMatrix::identity(cols));
    let lim = rows.min(cols);

    let mut t = 0;
    while t < lim {
        let Some((pi, pj)) = min_pivot(&m, t) else {
            break;
        };
        m.swap_rows(t, pi);
        if let Some(u) = u.as_mut() {
            u.swap_rows(t, pi);
        }
        m.swap_cols(t, pj);
        if let Some(v) = v.as_mut() {
            v.swap_cols(t, pj);
        }

        'reduce: loop {
            // Clear column t with row operations.
            let mut i = t + 1;
            while i < rows {
                if m.get(i, t).is_zero() {
                    i += 1;
                    continue;
                }
                let q = m.get(i, t) / m.get(t, t);
                m.row_submul(i, t, &q, t);
                if let Some(u) = u.as_mut() {
                    u.row_submul(i, t, &q, 0);
                }
                if !m.get(i, t).is_zero() {
                    // Remainder is smaller than the pivot; promote it.
                    m.swap_rows(t, i);
                    if let Some(u) = u.as_mut() {
                        u.swap_rows(t, i);
                    }
                    continue 'reduce;
                }
                i += 1;
            }
            // Clear row t with column operations. Column t stays clear: the
            // entries below the pivot are already zero.
            let mut j = t + 1;
            while j < cols {
                if m.get(t, j).is_zero() {
                    j += 1;
                    continue;
                }
                let q = m.get(t, j) / m.get(t, t);
                m.col_submul(j, t, &q, t);
                if let Some(v) = v.as_mut() {
                    v.col_submul(j, t, &q, 0);
                }
                if !m.get(t, j).is_zero() {
                    m.swap_cols(t, j);
                    if let Some(v) = v.as_mut() {
                        v.swap_cols(t, j);
                    }
                    continue 'reduce;
                }
                j += 1;
            }
            // Divisibility: the pivot must divide every remaining entry.
            if let Some((i, _)) = first_nondivisible(&m, t) {
                m.row_add(t, i, t);
                if let Some(u) = u.as_mut() {
                    u.row_add(t, i, 0);
                }
                continue 'reduce;
            }
            break;
        }

        if m.get(t, t).is_negative() {
            m.negate_row(t);
            if let Some(u) = u.as_mut() {
                u.negate_row(t);
            }
        }
        t += 1;
    }

    let rank = (0..lim).take_while(|&i| !m.get(i, i).is_zero()).count();
    SnfResult { d: m, u, v, rank }
}

/// A finitely generated abelian group: free rank plus torsion coefficients
/// in divisibility-chain form (each entry > 1 and dividing the next).
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct AbelianGroup {
    pub rank: usize,
    #[serde(with = "serde_bigints")]
    pub torsion: Vec<BigInt>,
}

impl AbelianGroup {
    pub fn trivial() -> Self {
        AbelianGroup {
            rank: 0,
            torsion: Vec::new(),
        }
    }

    pub fn free(rank: usize) -> Self {
        AbelianGroup {
            rank,
            torsion: Vec::new(),
        }
    }

    pub fn cyclic(order: u64) -> Self {
        assert!(order >= 2);
        AbelianGroup {
            rank: 0,
            torsion: vec![BigInt::from(order)],
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }

    /// Minimal number of generators: rank plus the torsion chain length.
    pub fn generator_count(&self) -> usize {
        self.rank + self.torsion.len()
    }

    pub fn text(&self) -> String {
        if self.is_trivial() {
            return "0".to_string();
        }
        let mut parts = Vec::new();
        match self.rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        for t in &self.torsion {
            parts.push(format!("Z/{t}"));
        }
        parts.join("+")
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.text())
    }
}

/// Integral homology of a complex, one abelian group per degree 0..=n.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct HomologyProfile {
    pub betti: Vec<usize>,
    #[serde(with = "serde_torsion")]
    pub torsion: Vec<Vec<BigInt>>,
}

impl HomologyProfile {
    /// Top degree covered by the profile.
    pub fn dim(&self) -> usize {
        self.betti.len().saturating_sub(1)
    }

    pub fn group(&self, d: usize) -> AbelianGroup {
        AbelianGroup {
            rank: self.betti.get(d).copied().unwrap_or(0),
            torsion: self.torsion.get(d).cloned().unwrap_or_default(),
        }
    }

    /// Canonical one-line text form, e.g. `H0=Z H1=0 H2=0 H3=Z`.
    pub fn text(&self) -> String {
        (0..self.betti.len())
            .map(|d| format!("H{d}={}", self.group(d).text()))
            .collect::<Vec<_>>()
            .join(" ")
    }
}

impl fmt::Display for HomologyProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.text())
    }
}

/// Integral cellular homology of a quotient complex.
///
/// `betti_d = |cells_d| - rank ∂_d - rank ∂_{d+1}`; the torsion of degree d
/// is read off the Smith normal form of `∂_{d+1}`.
pub fn homology(qc: &QuotientComplex) -> Result<HomologyProfile, HomologyError> {
    qc.verify_consistency()
        .map_err(|degree| HomologyError::InconsistentComplex { degree })?;
    let n = qc.dim();
    // snfs[d - 1] is the normal form of ∂_d.
    let snfs: Vec<SnfResult> = (1..=n)
        .map(|d| smith_normal_form(qc.boundary(d), false))
        .collect();
    let rank = |d: usize| -> usize {
        if d == 0 || d > n {
            0
        } else {
            snfs[d - 1].rank
        }
    };
    let mut betti = Vec::with_capacity(n + 1);
    let mut torsion = Vec::with_capacity(n + 1);
    for d in 0..=n {
        let cells = qc.cell_count(d);
        let b = cells
            .checked_sub(rank(d) + rank(d + 1))
            .expect("rank exceeds cell count in a consistent complex");
        betti.push(b);
        torsion.push(if d < n { snfs[d].torsion() } else { Vec::new() });
    }
    Ok(HomologyProfile { betti, torsion })
}

/// True iff the profile is (Z, 0, ..., 0, Z) with no torsion anywhere.
pub fn is_sphere_profile(h: &HomologyProfile, n: usize) -> bool {
    if h.betti.len() != n + 1 {
        return false;
    }
    if h.torsion.iter().any(|t| !t.is_empty()) {
        return false;
    }
    (0..=n).all(|d| {
        let expect = usize::from(d == 0 || d == n);
        h.betti[d] == expect
    })
}

/// Outcome of a Poincaré duality compatibility check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PdVerdict {
    Pass,
    /// The profile is not even a candidate (disconnected, no fundamental
    /// class, or torsion in the top degree). Distinct from a duality failure.
    NotACandidate { reason: String },
    Fail { degree: usize, reason: String },
}

impl PdVerdict {
    pub fn passed(&self) -> bool {
        matches!(self, PdVerdict::Pass)
    }
}

impl fmt::Display for PdVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PdVerdict::Pass => write!(f, "pass"),
            PdVerdict::NotACandidate { reason } => write!(f, "not a candidate: {reason}"),
            PdVerdict::Fail { degree, reason } => write!(f, "fail at degree {degree}: {reason}"),
        }
    }
}

/// Checks the Betti-number symmetry `betti_d == betti_{n-d}` an oriented
/// closed connected n-manifold's homology must satisfy; with `check_torsion`
/// also `torsion(d) == torsion(n-d-1)`. Reports the first violation.
pub fn pd_compatible(h: &HomologyProfile, n: usize, check_torsion: bool) -> PdVerdict {
    if h.betti.len() != n + 1 {
        return PdVerdict::NotACandidate {
            reason: format!("profile covers degrees 0..{} but n = {n}", h.dim()),
        };
    }
    if h.betti[0] != 1 {
        return PdVerdict::NotACandidate {
            reason: format!("betti_0 = {} (not connected)", h.betti[0]),
        };
    }
    if h.betti[n] != 1 {
        return PdVerdict::NotACandidate {
            reason: format!("betti_{n} = {} (no fundamental class)", h.betti[n]),
        };
    }
    if !h.torsion[n].is_empty() {
        return PdVerdict::NotACandidate {
            reason: format!("torsion in top degree {n}"),
        };
    }
    for d in 0..=n {
        if h.betti[d] != h.betti[n - d] {
            return PdVerdict::Fail {
                degree: d,
                reason: format!("betti_{d} = {} != betti_{} = {}", h.betti[d], n - d, h.betti[n - d]),
            };
        }
    }
    if check_torsion {
        for d in 0..n {
            if h.torsion[d] != h.torsion[n - d - 1] {
                return PdVerdict::Fail {
                    degree: d,
                    reason: format!("torsion({d}) differs from torsion({})", n - d - 1),
                };
            }
        }
    }
    PdVerdict::Pass
}

/// True iff `ext` looks like the double unreduced suspension of `base`:
/// degree 0 is Z, degrees 1 and 2 are trivial, and degree j+2 of `ext`
/// matches degree j of `base` for every j >= 1.
pub fn suspension_shift_check(base: &HomologyProfile, ext: &HomologyProfile) -> bool {
    if ext.betti.len() != base.betti.len() + 2 {
        return false;
    }
    if ext.group(0) != AbelianGroup::free(1) {
        return false;
    }
    if !ext.group(1).is_trivial() || !ext.group(2).is_trivial() {
        return false;
    }
    (1..base.betti.len()).all(|j| ext.group(j + 2) == base.group(j))
}

/// Minimal generator count of `H_d`: Betti rank plus torsion chain length.
pub fn generation_rank(h: &HomologyProfile, d: usize) -> usize {
    h.group(d).generator_count()
}

pub(crate) mod serde_bigints {
    use num_bigint::BigInt;
    use serde::de::Error;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(BigInt::to_string))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
        let raw: Vec<String> = Vec::deserialize(d)?;
        raw.iter()
            .map(|s| s.parse::<BigInt>().map_err(D::Error::custom))
            .collect()
    }
}

pub(crate) mod serde_torsion {
    use num_bigint::BigInt;
    use serde::de::Error;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &[Vec<BigInt>], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(
            v.iter()
                .map(|row| row.iter().map(BigInt::to_string).collect::<Vec<_>>()),
        )
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Vec<BigInt>>, D::Error> {
        let raw: Vec<Vec<String>> = Vec::deserialize(d)?;
        raw.iter()
            .map(|row| {
                row.iter()
                    .map(|s| s.parse::<BigInt>().map_err(D::Error::custom))
                    .collect()
            })
            .collect()
    }
}
