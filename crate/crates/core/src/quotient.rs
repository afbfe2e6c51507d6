//! Quotient complexes of matching systems.
//!
//! The model space of a matching system is the disjoint union of its
//! simplices with facets glued according to the pairing. Every gluing is the
//! unique order-preserving vertex bijection between two facets, and the
//! closure under induced sub-face identifications is computed by a union-find
//! with a work queue. Because all generators match vertices by rank, any
//! composite identification of a face with itself is the identity, so class
//! membership alone determines the cellular chain complex.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use num_traits::{Signed, ToPrimitive, Zero};
use serde_json::json;
use thiserror::Error;

use crate::homology::IntMatrix;
use crate::matchings::{validate_system, Matching, MatchingSystem, ValidationReport};

/// Marker describing the algorithmic behavior of this module; feeds the
/// survey store version tag.
pub const BEHAVIOR_MARKER: &str = "quotient:union-find-rank-closure/lex-rep/v1";

#[derive(Debug, Error)]
pub enum QuotientError {
    #[error("invalid matching system: {0}")]
    InvalidSystem(ValidationReport),
    #[error("dimension {n} is too small; this construction needs n >= 3")]
    DimensionTooSmall { n: usize },
    #[error("front-face degree k = {k} must be odd and within 1..={max}")]
    BadFrontFaceDegree { k: usize, max: usize },
    #[error("front-face boundary of [0..{upper}] is not ±[0..{lower}]: column {column:?}")]
    FrontFaceViolation {
        upper: usize,
        lower: usize,
        column: Vec<(usize, i64)>,
    },
}

/// A face of one of the disjoint simplices: a nonempty, strictly increasing
/// vertex subset of {0..n}.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Face {
    pub simplex: usize,
    pub vertices: Vec<usize>,
}

impl Face {
    pub fn new(simplex: usize, vertices: Vec<usize>) -> Self {
        debug_assert!(!vertices.is_empty());
        debug_assert!(vertices.windows(2).all(|w| w[0] < w[1]));
        Face { simplex, vertices }
    }

    pub fn dim(&self) -> usize {
        self.vertices.len() - 1
    }

    /// The face with the r-th smallest vertex removed.
    pub fn facet(&self, r: usize) -> Face {
        let mut vertices = self.vertices.clone();
        vertices.remove(r);
        Face {
            simplex: self.simplex,
            vertices,
        }
    }

    fn mask(&self) -> u32 {
        self.vertices.iter().fold(0u32, |m, &v| m | (1 << v))
    }

    fn from_mask(simplex: usize, mask: u32) -> Face {
        let vertices = (0..32).filter(|&v| mask & (1 << v) != 0).collect();
        Face { simplex, vertices }
    }
}

impl fmt::Display for Face {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verts = self
            .vertices
            .iter()
            .map(|v| v.to_string())
            .collect::<Vec<_>>()
            .join(",");
        write!(f, "{}:[{}]", self.simplex, verts)
    }
}

/// An equivalence class of faces; `representative` is the lexicographically
/// smallest member.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FaceClass {
    pub representative: Face,
    pub dim: usize,
}

struct UnionFind {
    parent: Vec<usize>,
    rank: Vec<u8>,
}

impl UnionFind {
    fn new(size: usize) -> Self {
        UnionFind {
            parent: (0..size).collect(),
            rank: vec![0; size],
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns false when the two elements were already equivalent.
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (hi, lo) = if self.rank[ra] >= self.rank[rb] {
            (ra, rb)
        } else {
            (rb, ra)
        };
        self.parent[lo] = hi;
        if self.rank[ra] == self.rank[rb] {
            self.rank[hi] += 1;
        }
        true
    }
}

/// The semi-simplicial quotient of a matching system, with integer boundary
/// matrices per dimension. Immutable once built.
pub struct QuotientComplex {
    n: usize,
    k: usize,
    cells: Vec<Vec<FaceClass>>,
    members: Vec<Vec<Vec<Face>>>,
    /// boundary[d] maps d-chains to (d-1)-chains; boundary[0] has zero rows.
    boundary: Vec<IntMatrix>,
    lookup: HashMap<Face, (usize, usize)>,
    component_of: Vec<Vec<usize>>,
    component_count: usize,
}

impl QuotientComplex {
    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn simplex_count(&self) -> usize {
        self.k
    }

    pub fn cells(&self, d: usize) -> &[FaceClass] {
        &self.cells[d]
    }

    pub fn cell_count(&self, d: usize) -> usize {
        self.cells.get(d).map_or(0, Vec::len)
    }

    pub fn members(&self, d: usize, idx: usize) -> &[Face] {
        &self.members[d][idx]
    }

    pub fn boundary(&self, d: usize) -> &IntMatrix {
        &self.boundary[d]
    }

    /// Class of a face, as (dimension, cell index).
    pub fn class_of(&self, face: &Face) -> Option<(usize, usize)> {
        self.lookup.get(face).copied()
    }

    pub fn component_of(&self, d: usize, idx: usize) -> usize {
        self.component_of[d][idx]
    }

    pub fn component_count(&self) -> usize {
        self.component_count
    }

    /// Boundary column of the class containing `member`, recomputed from that
    /// member face instead of the stored representative. Agrees with the
    /// matrix column for every member.
    pub fn boundary_column_from(&self, member: &Face) -> Option<Vec<(usize, i64)>> {
        let (d, _) = self.class_of(member)?;
        if d == 0 {
            return Some(Vec::new());
        }
        let mut acc: HashMap<usize, i64> = HashMap::new();
        for r in 0..=d {
            let (fd, idx) = self.class_of(&member.facet(r))?;
            debug_assert_eq!(fd, d - 1);
            let sign = if r % 2 == 0 { 1 } else { -1 };
            *acc.entry(idx).or_insert(0) += sign;
        }
        let mut out: Vec<(usize, i64)> = acc.into_iter().filter(|&(_, v)| v != 0).collect();
        out.sort();
        Some(out)
    }

    /// Checks boundary-of-boundary = 0; returns the offending degree on failure.
    pub fn verify_consistency(&self) -> Result<(), usize> {
        for d in 2..=self.n {
            let upper = &self.boundary[d];
            let lower = &self.boundary[d - 1];
            for c in 0..upper.cols() {
                let mut acc: HashMap<usize, i64> = HashMap::new();
                for (mid, a) in upper.sparse_column(c) {
                    let a = a.to_i64().expect("small boundary coefficient");
                    for (row, b) in lower.sparse_column(mid) {
                        let b = b.to_i64().expect("small boundary coefficient");
                        *acc.entry(row).or_insert(0) += a * b;
                    }
                }
                if acc.values().any(|&v| v != 0) {
                    return Err(d);
                }
            }
        }
        Ok(())
    }

    /// True iff the signed sum of top cells is a cellular cycle. Holds for
    /// every complex built from a valid system.
    pub fn cycle_class_check(&self, sys: &MatchingSystem) -> bool {
        if sys.k() != self.k || sys.n() != self.n {
            return false;
        }
        let n = self.n;
        let mut chain = vec![0i64; self.cell_count(n)];
        for (i, sign) in sys.coeffs().iter().enumerate() {
            let full: Vec<usize> = (0..=n).collect();
            let Some((d, idx)) = self.class_of(&Face::new(i, full)) else {
                return false;
            };
            debug_assert_eq!(d, n);
            chain[idx] += sign.as_i64();
        }
        let bnd = &self.boundary[n];
        for r in 0..bnd.rows() {
            let mut sum = 0i64;
            for (c, &coeff) in chain.iter().enumerate() {
                if coeff != 0 {
                    let e = bnd.get(r, c);
                    if !e.is_zero() {
                        sum += coeff * e.to_i64().expect("small boundary coefficient");
                    }
                }
            }
            if sum != 0 {
                return false;
            }
        }
        true
    }

    /// Splits the complex along connectivity of the face-incidence graph.
    /// Components are ordered by their smallest representative face.
    pub fn components(&self) -> Vec<QuotientComplex> {
        (0..self.component_count)
            .map(|comp| self.restrict_to_component(comp))
            .collect()
    }

    fn restrict_to_component(&self, comp: usize) -> QuotientComplex {
        let n = self.n;
        // Old index -> new index per dimension.
        let mut keep: Vec<Vec<usize>> = Vec::with_capacity(n + 1);
        let mut renumber: Vec<HashMap<usize, usize>> = Vec::with_capacity(n + 1);
        for d in 0..=n {
            let kept: Vec<usize> = (0..self.cell_count(d))
                .filter(|&i| self.component_of[d][i] == comp)
                .collect();
            let map = kept.iter().enumerate().map(|(new, &old)| (old, new)).collect();
            keep.push(kept);
            renumber.push(map);
        }
        let cells: Vec<Vec<FaceClass>> = (0..=n)
            .map(|d| keep[d].iter().map(|&i| self.cells[d][i].clone()).collect())
            .collect();
        let members: Vec<Vec<Vec<Face>>> = (0..=n)
            .map(|d| keep[d].iter().map(|&i| self.members[d][i].clone()).collect())
            .collect();
        let mut boundary = Vec::with_capacity(n + 1);
        boundary.push(IntMatrix::zeros(0, cells[0].len()));
        for d in 1..=n {
            let mut triplets = Vec::new();
            for (new_c, &old_c) in keep[d].iter().enumerate() {
                for (old_r, v) in self.boundary[d].sparse_column(old_c) {
                    let new_r = renumber[d - 1][&old_r];
                    triplets.push((new_r, new_c, v.to_i64().expect("small boundary coefficient")));
                }
            }
            boundary.push(IntMatrix::from_triplets(
                cells[d - 1].len(),
                cells[d].len(),
                &triplets,
            ));
        }
        let mut lookup = HashMap::new();
        for (d, per_dim) in members.iter().enumerate() {
            for (idx, faces) in per_dim.iter().enumerate() {
                for face in faces {
                    lookup.insert(face.clone(), (d, idx));
                }
            }
        }
        let component_of = (0..=n).map(|d| vec![0; cells[d].len()]).collect();
        let simplices: std::collections::HashSet<usize> = cells[n]
            .iter()
            .map(|c| c.representative.simplex)
            .collect();
        QuotientComplex {
            n,
            k: simplices.len(),
            cells,
            members,
            boundary,
            lookup,
            component_of,
            component_count: 1,
        }
    }

    /// JSON dump of the complex: cells as face strings per dimension,
    /// boundary matrices as sparse (row, col, value) triplets, and the
    /// component id of every cell.
    pub fn dump_json(&self) -> serde_json::Value {
        let cells: Vec<Vec<String>> = self
            .cells
            .iter()
            .map(|per_dim| {
                per_dim
                    .iter()
                    .map(|c| c.representative.to_string())
                    .collect()
            })
            .collect();
        let boundary: Vec<Vec<(usize, usize, i64)>> = (0..=self.n)
            .map(|d| {
                let m = &self.boundary[d];
                let mut triplets = Vec::new();
                for c in 0..m.cols() {
                    for (r, v) in m.sparse_column(c) {
                        triplets.push((r, c, v.to_i64().expect("small boundary coefficient")));
                    }
                }
                triplets
            })
            .collect();
        json!({
            "n": self.n,
            "k": self.k,
            "cells": cells,
            "boundary": boundary,
            "components": self.component_of,
        })
    }
}

/// Builds the quotient complex of a valid matching system.
pub fn build_quotient(sys: &MatchingSystem) -> Result<QuotientComplex, QuotientError> {
    let report = validate_system(sys);
    if !report.is_valid() {
        return Err(QuotientError::InvalidSystem(report));
    }
    let n = sys.n();
    let k = sys.k();
    let per = (1usize << (n + 1)) - 1;
    let full: u32 = ((1u64 << (n + 1)) - 1) as u32;
    let total = k * per;
    let id_of = |simplex: usize, mask: u32| simplex * per + (mask as usize - 1);
    let decode = |id: usize| (id / per, (id % per + 1) as u32);

    // Closure of the facet identifications under induced sub-face gluing.
    let mut uf = UnionFind::new(total);
    let mut queue: VecDeque<(usize, usize)> = VecDeque::new();
    for &(a, b) in sys.pairing() {
        let ma = full & !(1 << a.face);
        let mb = full & !(1 << b.face);
        queue.push_back((id_of(a.simplex, ma), id_of(b.simplex, mb)));
    }
    while let Some((fa, fb)) = queue.pop_front() {
        if !uf.union(fa, fb) {
            continue;
        }
        let (sa, ma) = decode(fa);
        let (sb, mb) = decode(fb);
        let size = ma.count_ones();
        debug_assert_eq!(size, mb.count_ones());
        if size >= 2 {
            let bits_a: Vec<u32> = (0..32).filter(|&v| ma & (1 << v) != 0).collect();
            let bits_b: Vec<u32> = (0..32).filter(|&v| mb & (1 << v) != 0).collect();
            for r in 0..size as usize {
                let sub_a = ma & !(1 << bits_a[r]);
                let sub_b = mb & !(1 << bits_b[r]);
                queue.push_back((id_of(sa, sub_a), id_of(sb, sub_b)));
            }
        }
    }

    // Group faces into classes per dimension, representatives lex-smallest.
    let mut groups: HashMap<usize, Vec<usize>> = HashMap::new();
    for id in 0..total {
        groups.entry(uf.find(id)).or_default().push(id);
    }
    let mut per_dim: Vec<Vec<(Face, Vec<Face>)>> = (0..=n).map(|_| Vec::new()).collect();
    for ids in groups.into_values() {
        let mut faces: Vec<Face> = ids
            .iter()
            .map(|&id| {
                let (s, m) = decode(id);
                Face::from_mask(s, m)
            })
            .collect();
        faces.sort();
        let rep = faces[0].clone();
        per_dim[rep.dim()].push((rep, faces));
    }
    for classes in per_dim.iter_mut() {
        classes.sort_by(|a, b| a.0.cmp(&b.0));
    }

    let cells: Vec<Vec<FaceClass>> = per_dim
        .iter()
        .map(|classes| {
            classes
                .iter()
                .map(|(rep, _)| FaceClass {
                    representative: rep.clone(),
                    dim: rep.dim(),
                })
                .collect()
        })
        .collect();
    let members: Vec<Vec<Vec<Face>>> = per_dim
        .into_iter()
        .map(|classes| classes.into_iter().map(|(_, faces)| faces).collect())
        .collect();
    let mut lookup = HashMap::new();
    for (d, per) in members.iter().enumerate() {
        for (idx, faces) in per.iter().enumerate() {
            for face in faces {
                lookup.insert(face.clone(), (d, idx));
            }
        }
    }

    // Top simplices are never identified with each other.
    debug_assert_eq!(cells[n].len(), k);

    // Cellular boundary matrices from class representatives.
    let mut boundary = Vec::with_capacity(n + 1);
    boundary.push(IntMatrix::zeros(0, cells[0].len()));
    for d in 1..=n {
        let mut triplets = Vec::new();
        for (c, class) in cells[d].iter().enumerate() {
            for r in 0..=d {
                let facet = class.representative.facet(r);
                let (fd, row) = lookup[&facet];
                debug_assert_eq!(fd, d - 1);
                let sign = if r % 2 == 0 { 1 } else { -1 };
                triplets.push((row, c, sign));
            }
        }
        boundary.push(IntMatrix::from_triplets(
            cells[d - 1].len(),
            cells[d].len(),
            &triplets,
        ));
    }

    // Connected components of the face-incidence graph.
    let offsets: Vec<usize> = cells
        .iter()
        .scan(0usize, |acc, per| {
            let start = *acc;
            *acc += per.len();
            Some(start)
        })
        .collect();
    let class_total: usize = cells.iter().map(Vec::len).sum();
    let mut comp_uf = UnionFind::new(class_total);
    for d in 1..=n {
        for (idx, class) in cells[d].iter().enumerate() {
            for r in 0..=d {
                let (fd, fi) = lookup[&class.representative.facet(r)];
                comp_uf.union(offsets[d] + idx, offsets[fd] + fi);
            }
        }
    }
    // Order components by their smallest representative face.
    let mut root_min: HashMap<usize, Face> = HashMap::new();
    for (d, per) in cells.iter().enumerate() {
        for (idx, class) in per.iter().enumerate() {
            let root = comp_uf.find(offsets[d] + idx);
            let entry = root_min.entry(root).or_insert_with(|| class.representative.clone());
            if class.representative < *entry {
                *entry = class.representative.clone();
            }
        }
    }
    let mut roots: Vec<(Face, usize)> = root_min.into_iter().map(|(r, f)| (f, r)).collect();
    roots.sort();
    let comp_id: HashMap<usize, usize> = roots
        .iter()
        .enumerate()
        .map(|(i, &(_, root))| (root, i))
        .collect();
    let component_count = roots.len();
    let mut component_of: Vec<Vec<usize>> = Vec::with_capacity(n + 1);
    for (d, per) in cells.iter().enumerate() {
        component_of.push(
            (0..per.len())
                .map(|idx| comp_id[&comp_uf.find(offsets[d] + idx)])
                .collect(),
        );
    }

    let qc = QuotientComplex {
        n,
        k,
        cells,
        members,
        boundary,
        lookup,
        component_of,
        component_count,
    };
    qc.verify_consistency()
        .expect("boundary squared vanishes for order-preserving gluings");
    Ok(qc)
}

/// The partition of {0..n} by the vertex identifications a single-simplex
/// matching induces: j ~ k whenever some matched pair (J, K) brackets both.
/// Classes come out as intervals; returned sorted by minimum.
pub fn vertex_equivalence(m: &Matching) -> Vec<Vec<usize>> {
    let n = m.n();
    let mut uf = UnionFind::new(n + 1);
    for (even, odd) in m.pairs() {
        let (lo, hi) = if even < odd { (even, odd) } else { (odd, even) };
        for v in lo..hi {
            uf.union(v, v + 1);
        }
    }
    let mut classes: HashMap<usize, Vec<usize>> = HashMap::new();
    for v in 0..=n {
        classes.entry(uf.find(v)).or_default().push(v);
    }
    let mut out: Vec<Vec<usize>> = classes.into_values().collect();
    for class in out.iter_mut() {
        class.sort();
    }
    out.sort_by_key(|class| class[0]);
    out
}

/// Edges [j, j+1] for every j that is maximal in its vertex-identification
/// class (and below n); their 1-cells form a spanning tree of the quotient
/// 1-skeleton.
pub fn spanning_tree_edges(m: &Matching) -> Result<Vec<[usize; 2]>, QuotientError> {
    let n = m.n();
    if n < 3 {
        return Err(QuotientError::DimensionTooSmall { n });
    }
    let mut edges = Vec::new();
    for class in vertex_equivalence(m) {
        let mx = *class.last().expect("classes are nonempty");
        if mx < n {
            edges.push([mx, mx + 1]);
        }
    }
    edges.sort();
    Ok(edges)
}

/// Outcome of the front-face boundary identity in the quotient complex:
/// the boundary of the front (k+1)-face class equals `sign` times the front
/// k-face class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrontFaceReport {
    pub degree: usize,
    pub sign: i64,
    /// Even indices j <= k+1 whose partner also lands within 0..=k+1.
    pub matched_evens: Vec<usize>,
    /// Their partners.
    pub matched_odds: Vec<usize>,
    /// Indices of 0..=k+1 outside the matched pairs.
    pub unmatched: Vec<usize>,
}

/// Computes the boundary of the front (k+1)-face [0..k+1] in the quotient of
/// a single-simplex matching and checks it is ±1 times the front k-face
/// [0..k]. Fails loudly otherwise.
pub fn front_face_boundary(m: &Matching, k: usize) -> Result<FrontFaceReport, QuotientError> {
    let n = m.n();
    if k % 2 == 0 || k < 1 || k >= n {
        return Err(QuotientError::BadFrontFaceDegree { k, max: n - 1 });
    }
    let qc = build_quotient(&m.to_system())?;
    let upper = Face::new(0, (0..=k + 1).collect());
    let lower = Face::new(0, (0..=k).collect());
    let (ud, uc) = qc.class_of(&upper).expect("front face exists");
    debug_assert_eq!(ud, k + 1);
    let (ld, lc) = qc.class_of(&lower).expect("front face exists");
    debug_assert_eq!(ld, k);

    let column: Vec<(usize, i64)> = qc
        .boundary(k + 1)
        .sparse_column(uc)
        .into_iter()
        .map(|(r, v)| (r, v.to_i64().expect("small boundary coefficient")))
        .collect();
    let ok = column.len() == 1 && column[0].0 == lc && column[0].1.abs() == 1;
    if !ok {
        return Err(QuotientError::FrontFaceViolation {
            upper: k + 1,
            lower: k,
            column,
        });
    }

    let mut matched_evens = Vec::new();
    let mut matched_odds = Vec::new();
    for j in (0..=k + 1).step_by(2) {
        let image = m.apply(j).expect("even index within domain");
        if image <= k {
            matched_evens.push(j);
            matched_odds.push(image);
        }
    }
    let unmatched = (0..=k + 1)
        .filter(|v| !matched_evens.contains(v) && !matched_odds.contains(v))
        .collect();
    Ok(FrontFaceReport {
        degree: k,
        sign: column[0].1.signum(),
        matched_evens,
        matched_odds,
        unmatched,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matchings::{catalog, enumerate_single, enumerate_two_simplex, Sign, SignType, Slot};

    fn exotic3() -> Matching {
        Matching::new(3, &[(0, 3), (2, 1)]).unwrap()
    }

    fn exotic5() -> Matching {
        Matching::new(5, &[(0, 3), (2, 5), (4, 1)]).unwrap()
    }

    #[test]
    fn circle_from_the_one_matching() {
        let m = Matching::standard(1).unwrap();
        let qc = build_quotient(&m.to_system()).unwrap();
        assert_eq!(qc.cell_count(0), 1);
        assert_eq!(qc.cell_count(1), 1);
        assert_eq!(qc.component_count(), 1);
    }

    #[test]
    fn exotic3_cell_structure_and_boundary() {
        let qc = build_quotient(&exotic3().to_system()).unwrap();
        let reps2: Vec<Vec<usize>> = qc
            .cells(2)
            .iter()
            .map(|c| c.representative.vertices.clone())
            .collect();
        assert_eq!(reps2, vec![vec![0, 1, 2], vec![0, 1, 3]]);
        let reps1: Vec<Vec<usize>> = qc
            .cells(1)
            .iter()
            .map(|c| c.representative.vertices.clone())
            .collect();
        assert_eq!(reps1, vec![vec![0, 1], vec![0, 3]]);
        assert_eq!(qc.cell_count(0), 1);

        let d2 = qc.boundary(2);
        let entries: Vec<i64> = (0..2)
            .flat_map(|r| (0..2).map(move |c| (r, c)))
            .map(|(r, c)| d2.get(r, c).to_i64().unwrap())
            .collect();
        assert_eq!(entries, vec![1, 2, 0, -1]);
    }

    #[test]
    fn disconnected_system_splits() {
        // Both simplices glued internally by the standard matching.
        let mut pairing = Vec::new();
        for i in 0..2 {
            pairing.push((Slot::new(i, 0), Slot::new(i, 1)));
            pairing.push((Slot::new(i, 2), Slot::new(i, 3)));
        }
        let sys = MatchingSystem::new(3, vec![Sign::Plus, Sign::Plus], pairing).unwrap();
        let qc = build_quotient(&sys).unwrap();
        assert_eq!(qc.component_count(), 2);
        let comps = qc.components();
        assert_eq!(comps.len(), 2);
        for comp in &comps {
            assert_eq!(comp.component_count(), 1);
            assert_eq!(comp.cell_count(3), 1);
            assert!(comp.verify_consistency().is_ok());
        }
        // The single-simplex model of the same matching has the same cells.
        let single = build_quotient(&Matching::standard(3).unwrap().to_system()).unwrap();
        for d in 0..=3 {
            assert_eq!(comps[0].cell_count(d), single.cell_count(d));
        }
    }

    #[test]
    fn exotic5_is_connected() {
        let qc = build_quotient(&exotic5().to_system()).unwrap();
        assert_eq!(qc.component_count(), 1);
        assert_eq!(qc.cell_count(0), 1);
    }

    #[test]
    fn cycle_class_holds_for_valid_systems() {
        for n in [1usize, 3, 5] {
            for m in enumerate_single(n).unwrap() {
                let sys = m.to_system();
                let qc = build_quotient(&sys).unwrap();
                assert!(qc.cycle_class_check(&sys));
            }
        }
        for name in ["s1xs-odd-3", "s1xs-even-4"] {
            let sys = catalog(name).unwrap();
            let qc = build_quotient(&sys).unwrap();
            assert!(qc.cycle_class_check(&sys));
        }
    }

    #[test]
    fn invalid_systems_are_rejected() {
        let sys = MatchingSystem::new(
            2,
            vec![Sign::Plus],
            vec![(Slot::new(0, 0), Slot::new(0, 1))],
        )
        .unwrap();
        assert!(matches!(
            build_quotient(&sys),
            Err(QuotientError::InvalidSystem(_))
        ));
    }

    #[test]
    fn vertex_equivalence_examples() {
        let m = Matching::standard(3).unwrap();
        assert_eq!(vertex_equivalence(&m), vec![vec![0, 1], vec![2, 3]]);

        assert_eq!(vertex_equivalence(&exotic3()), vec![vec![0, 1, 2, 3]]);
        assert_eq!(vertex_equivalence(&exotic5()), vec![vec![0, 1, 2, 3, 4, 5]]);
    }

    #[test]
    fn vertex_equivalence_matches_zero_cells() {
        for n in [3usize, 5] {
            for m in enumerate_single(n).unwrap() {
                let partition = vertex_equivalence(&m);
                let qc = build_quotient(&m.to_system()).unwrap();
                assert_eq!(partition.len(), qc.cell_count(0));
                for class in &partition {
                    let indices: std::collections::HashSet<usize> = class
                        .iter()
                        .map(|&v| qc.class_of(&Face::new(0, vec![v])).unwrap().1)
                        .collect();
                    assert_eq!(indices.len(), 1);
                }
            }
        }
    }

    #[test]
    fn spanning_tree_examples() {
        assert_eq!(spanning_tree_edges(&exotic3()).unwrap(), Vec::<[usize; 2]>::new());
        assert_eq!(
            spanning_tree_edges(&Matching::standard(3).unwrap()).unwrap(),
            vec![[1, 2]]
        );
        assert_eq!(spanning_tree_edges(&exotic5()).unwrap(), Vec::<[usize; 2]>::new());
        assert!(spanning_tree_edges(&Matching::standard(1).unwrap()).is_err());
    }

    #[test]
    fn spanning_tree_is_a_tree_in_the_quotient() {
        for n in [3usize, 5, 7] {
            for m in enumerate_single(n).unwrap() {
                let qc = build_quotient(&m.to_system()).unwrap();
                let tree = spanning_tree_edges(&m).unwrap();
                assert_eq!(tree.len(), qc.cell_count(0) - 1);
                // Edge classes are pairwise distinct and connect all 0-cells.
                let mut edge_classes = std::collections::HashSet::new();
                let mut uf = UnionFind::new(qc.cell_count(0));
                let mut merges = 0;
                for [a, b] in &tree {
                    let (_, e) = qc.class_of(&Face::new(0, vec![*a, *b])).unwrap();
                    assert!(edge_classes.insert(e), "repeated edge class");
                    let (_, ca) = qc.class_of(&Face::new(0, vec![*a])).unwrap();
                    let (_, cb) = qc.class_of(&Face::new(0, vec![*b])).unwrap();
                    if uf.union(ca, cb) {
                        merges += 1;
                    }
                }
                assert_eq!(merges, qc.cell_count(0) - 1, "edges do not form a tree");
            }
        }
    }

    #[test]
    fn front_face_identity() {
        let report = front_face_boundary(&exotic5(), 1).unwrap();
        assert_eq!(report.sign.abs(), 1);
        assert_eq!(report.matched_evens, Vec::<usize>::new());
        assert_eq!(report.unmatched, vec![0, 1, 2]);

        let report = front_face_boundary(&exotic5(), 3).unwrap();
        assert_eq!(report.sign.abs(), 1);

        let report = front_face_boundary(&Matching::standard(3).unwrap(), 1).unwrap();
        assert_eq!(report.matched_evens, vec![0]);
        assert_eq!(report.matched_odds, vec![1]);
        assert_eq!(report.unmatched, vec![2]);

        assert!(front_face_boundary(&exotic5(), 2).is_err());
        assert!(front_face_boundary(&exotic5(), 5).is_err());
    }

    #[test]
    fn boundary_columns_are_representative_independent() {
        let systems = vec![
            exotic3().to_system(),
            exotic5().to_system(),
            enumerate_two_simplex(3, SignType::Same).unwrap().next().unwrap(),
        ];
        for sys in systems {
            let qc = build_quotient(&sys).unwrap();
            for d in 1..=qc.dim() {
                for idx in 0..qc.cell_count(d) {
                    let expected: Vec<(usize, i64)> = qc
                        .boundary(d)
                        .sparse_column(idx)
                        .into_iter()
                        .map(|(r, v)| (r, v.to_i64().unwrap()))
                        .collect();
                    for member in qc.members(d, idx) {
                        assert_eq!(
                            qc.boundary_column_from(member).unwrap(),
                            expected,
                            "column differs for member {member} of cell ({d}, {idx})"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn dump_json_shape() {
        let qc = build_quotient(&exotic3().to_system()).unwrap();
        let dump = qc.dump_json();
        assert_eq!(dump["n"], 3);
        assert_eq!(dump["k"], 1);
        assert_eq!(dump["cells"].as_array().unwrap().len(), 4);
        assert_eq!(dump["cells"][0][0], "0:[0]");
        assert!(dump["boundary"][2].as_array().unwrap().len() >= 3);
    }
}
