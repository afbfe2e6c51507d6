//! Fundamental group presentations from quotient 2-skeletons.
//!
//! Generators are the 1-cells outside a breadth-first spanning tree; every
//! 2-cell with representative vertices a < b < c contributes the relator
//! w([b,c]) w([a,b]) w([a,c])^-1, where tree edges read as the empty word.
//! Tietze moves plus abelianization are enough to certify the trivial and
//! cyclic verdicts the surveys need.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::homology::{smith_normal_form, AbelianGroup, IntMatrix};
use crate::quotient::{Face, QuotientComplex};

/// Marker describing the algorithmic behavior of this module; feeds the
/// survey store version tag.
pub const BEHAVIOR_MARKER: &str = "pi1:bfs-tree-tietze/v1";

/// Default number of Tietze moves before simplification gives up.
pub const DEFAULT_MOVE_BUDGET: usize = 10_000;

#[derive(Debug, Error)]
pub enum Pi1Error {
    #[error("presentation requires a connected complex, got {components} components")]
    Disconnected { components: usize },
}

/// A word in the generators: nonzero letters, |letter| - 1 indexes the
/// generator, the sign marks inversion.
pub type Word = Vec<i32>;

fn free_reduce(word: &[i32]) -> Word {
    let mut out: Word = Vec::with_capacity(word.len());
    for &letter in word {
        debug_assert!(letter != 0);
        if out.last().is_some_and(|&last| last == -letter) {
            out.pop();
        } else {
            out.push(letter);
        }
    }
    out
}

fn cyclic_reduce(word: &[i32]) -> Word {
    let mut w = free_reduce(word);
    while w.len() >= 2 && w[0] == -*w.last().unwrap() {
        w.remove(0);
        w.pop();
        w = free_reduce(&w);
    }
    w
}

fn invert(word: &[i32]) -> Word {
    word.iter().rev().map(|&l| -l).collect()
}

/// Canonical form of a relator up to cyclic rotation and inversion.
fn cyclic_canonical(word: &[i32]) -> Word {
    let w = cyclic_reduce(word);
    if w.is_empty() {
        return w;
    }
    let mut best: Option<Word> = None;
    for candidate in [w.clone(), invert(&w)] {
        for shift in 0..candidate.len() {
            let mut rotated = candidate[shift..].to_vec();
            rotated.extend_from_slice(&candidate[..shift]);
            if best.as_ref().is_none_or(|b| rotated < *b) {
                best = Some(rotated);
            }
        }
    }
    best.unwrap()
}

/// A finitely presented group.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Presentation {
    pub generators: Vec<String>,
    pub relators: Vec<Word>,
}

impl Presentation {
    /// Builds a presentation, freely reducing every relator. Panics if a
    /// relator references a generator that does not exist.
    pub fn new(generators: Vec<String>, relators: Vec<Word>) -> Self {
        let count = generators.len() as i32;
        let relators = relators
            .into_iter()
            .map(|w| {
                assert!(w.iter().all(|&l| l != 0 && l.abs() <= count));
                free_reduce(&w)
            })
            .collect();
        Presentation {
            generators,
            relators,
        }
    }

    pub fn generator_count(&self) -> usize {
        self.generators.len()
    }

    fn letter_text(&self, letter: i32) -> String {
        let symbol = &self.generators[(letter.abs() - 1) as usize];
        if letter > 0 {
            symbol.clone()
        } else {
            symbol.to_uppercase()
        }
    }

    /// Canonical text form: `gens: a,b; rels: a b A B, a a a`
    /// (uppercase marks an inverse letter).
    pub fn text(&self) -> String {
        let gens = self.generators.join(",");
        let rels = self
            .relators
            .iter()
            .map(|w| {
                w.iter()
                    .map(|&l| self.letter_text(l))
                    .collect::<Vec<_>>()
                    .join(" ")
            })
            .collect::<Vec<_>>()
            .join(", ");
        let gens_part = if gens.is_empty() {
            "gens:".to_string()
        } else {
            format!("gens: {gens}")
        };
        let rels_part = if rels.is_empty() {
            "rels:".to_string()
        } else {
            format!("rels: {rels}")
        };
        format!("{gens_part}; {rels_part}")
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.text())
    }
}

/// Deterministic generator symbol: a..z, then aa, ab, ...
fn symbol(index: usize) -> String {
    let mut n = index + 1;
    let mut out = Vec::new();
    while n > 0 {
        n -= 1;
        out.push(b'a' + (n % 26) as u8);
        n /= 26;
    }
    out.reverse();
    String::from_utf8(out).expect("ascii")
}

/// Reads a presentation of the fundamental group off the 2-skeleton of a
/// connected quotient complex. The spanning tree is grown breadth-first from
/// the 0-cell of the smallest vertex, scanning 1-cells in cell order; its
/// edges read as empty words, so the tree relations are built in.
pub fn presentation(qc: &QuotientComplex) -> Result<Presentation, Pi1Error> {
    if qc.component_count() != 1 {
        return Err(Pi1Error::Disconnected {
            components: qc.component_count(),
        });
    }
    let vertex_count = qc.cell_count(0);
    let edge_count = qc.cell_count(1);
    let endpoint = |edge: usize| -> (usize, usize) {
        let rep = &qc.cells(1)[edge].representative;
        let a = qc
            .class_of(&Face::new(rep.simplex, vec![rep.vertices[0]]))
            .expect("endpoint class")
            .1;
        let b = qc
            .class_of(&Face::new(rep.simplex, vec![rep.vertices[1]]))
            .expect("endpoint class")
            .1;
        (a, b)
    };

    // Breadth-first spanning tree from the basepoint (cell 0 holds the
    // lexicographically smallest vertex).
    let mut in_tree = vec![false; edge_count];
    let mut visited = vec![false; vertex_count];
    let mut queue = std::collections::VecDeque::from([0usize]);
    visited[0] = true;
    while let Some(v) = queue.pop_front() {
        for edge in 0..edge_count {
            let (a, b) = endpoint(edge);
            let next = if a == v && !visited[b] {
                b
            } else if b == v && !visited[a] {
                a
            } else {
                continue;
            };
            in_tree[edge] = true;
            visited[next] = true;
            queue.push_back(next);
        }
    }
    debug_assert!(visited.iter().all(|&v| v), "complex is connected");

    let mut generator_of = vec![0i32; edge_count];
    let mut generators = Vec::new();
    for edge in 0..edge_count {
        if !in_tree[edge] {
            generators.push(symbol(generators.len()));
            generator_of[edge] = generators.len() as i32;
        }
    }

    let letter = |edge: usize, inverse: bool| -> Option<i32> {
        let g = generator_of[edge];
        (g != 0).then(|| if inverse { -g } else { g })
    };
    let mut relators = Vec::new();
    for class in qc.cells(2) {
        let rep = &class.representative;
        let (a, b, c) = (rep.vertices[0], rep.vertices[1], rep.vertices[2]);
        let edge = |u: usize, v: usize| -> usize {
            qc.class_of(&Face::new(rep.simplex, vec![u, v]))
                .expect("edge class")
                .1
        };
        let mut word = Vec::new();
        word.extend(letter(edge(b, c), false));
        word.extend(letter(edge(a, b), false));
        word.extend(letter(edge(a, c), true));
        let word = free_reduce(&word);
        if !word.is_empty() {
            relators.push(word);
        }
    }
    Ok(Presentation::new(generators, relators))
}

/// Applies Tietze moves until nothing changes or the budget runs out:
/// free/cyclic reduction, empty-relator removal, relator deduplication up to
/// rotation and inversion, and elimination of generators that occur exactly
/// once in some relator. The result presents an isomorphic group.
pub fn tietze_simplify(p: &Presentation, move_budget: usize) -> Presentation {
    let mut generators = p.generators.clone();
    let mut relators = p.relators.clone();
    let mut moves = 0usize;

    loop {
        let mut changed = false;

        // Reduce and drop empties.
        let mut reduced: Vec<Word> = Vec::with_capacity(relators.len());
        for w in &relators {
            if moves >= move_budget {
                return Presentation::new(generators, relators);
            }
            let r = cyclic_reduce(w);
            if r != *w {
                moves += 1;
                changed = true;
            }
            if !r.is_empty() {
                reduced.push(r);
            } else if !w.is_empty() {
                moves += 1;
                changed = true;
            }
        }
        relators = reduced;

        // Deduplicate up to rotation and inversion, keeping first occurrences.
        let mut seen = std::collections::HashSet::new();
        let mut unique = Vec::with_capacity(relators.len());
        for w in &relators {
            if seen.insert(cyclic_canonical(w)) {
                unique.push(w.clone());
            } else {
                moves += 1;
                changed = true;
            }
            if moves >= move_budget {
                relators = unique;
                return Presentation::new(generators, relators);
            }
        }
        relators = unique;

        // Eliminate a generator that occurs exactly once in some relator.
        // Deterministic choice: shortest relator first (ties by index), then
        // the earliest single-occurrence position inside it.
        let mut candidate: Option<(usize, usize)> = None; // (relator, position)
        let mut order: Vec<usize> = (0..relators.len()).collect();
        order.sort_by_key(|&i| (relators[i].len(), i));
        'search: for &ri in &order {
            for (pos, &l) in relators[ri].iter().enumerate() {
                let occurrences = relators[ri]
                    .iter()
                    .filter(|&&x| x.abs() == l.abs())
                    .count();
                if occurrences == 1 {
                    candidate = Some((ri, pos));
                    break 'search;
                }
            }
        }
        if let Some((ri, pos)) = candidate {
            if moves >= move_budget {
                return Presentation::new(generators, relators);
            }
            moves += 1;
            changed = true;
            let relator = relators.remove(ri);
            let letter = relator[pos];
            let gen = letter.abs();
            // relator = u g^s v  =>  g^s = u^-1 v^-1.
            let u = &relator[..pos];
            let v = &relator[pos + 1..];
            let mut expr = invert(u);
            expr.extend(invert(v));
            if letter < 0 {
                expr = invert(&expr);
            }
            let expr = free_reduce(&expr);
            relators = relators
                .iter()
                .map(|w| {
                    let mut out = Vec::with_capacity(w.len());
                    for &l in w {
                        if l == gen {
                            out.extend_from_slice(&expr);
                        } else if l == -gen {
                            out.extend(invert(&expr));
                        } else {
                            out.push(l);
                        }
                    }
                    free_reduce(&out)
                })
                .collect();
            // Renumber letters above the removed generator.
            generators.remove((gen - 1) as usize);
            for w in relators.iter_mut() {
                for l in w.iter_mut() {
                    if l.abs() > gen {
                        *l -= l.signum();
                    }
                }
            }
        }

        if !changed {
            return Presentation::new(generators, relators);
        }
    }
}

/// Classification of a finitely presented group as far as this crate decides it.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum GroupKind {
    Trivial,
    InfiniteCyclic,
    FiniteCyclic { order: u64 },
    Undetermined,
}

impl GroupKind {
    /// True unless the classification gave up. Trivial counts as cyclic.
    pub fn is_cyclic(&self) -> bool {
        !matches!(self, GroupKind::Undetermined)
    }
}

impl fmt::Display for GroupKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupKind::Trivial => write!(f, "1"),
            GroupKind::InfiniteCyclic => write!(f, "Z"),
            GroupKind::FiniteCyclic { order } => write!(f, "Z/{order}"),
            GroupKind::Undetermined => write!(f, "undetermined"),
        }
    }
}

/// A classification together with the abelianization it was cross-checked
/// against.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct GroupVerdict {
    #[serde(flatten)]
    pub kind: GroupKind,
    pub abelianization: AbelianGroup,
}

/// Abelianization from the Smith normal form of the generator-by-relator
/// exponent-sum matrix.
pub fn abelianization(p: &Presentation) -> AbelianGroup {
    let gens = p.generator_count();
    let rels = p.relators.len();
    let mut m = IntMatrix::zeros(gens, rels);
    for (j, w) in p.relators.iter().enumerate() {
        for &l in w {
            let i = (l.abs() - 1) as usize;
            let current = m.get(i, j).clone();
            m.set(i, j, current + l.signum());
        }
    }
    let snf = smith_normal_form(&m, false);
    AbelianGroup {
        rank: gens - snf.rank,
        torsion: snf.torsion(),
    }
}

/// Classifies with the default move budget.
pub fn classify(p: &Presentation) -> GroupVerdict {
    classify_with_budget(p, DEFAULT_MOVE_BUDGET)
}

/// Simplifies, then reads the verdict: no generators is trivial, one free
/// generator is Z, one generator with relators is Z/gcd of the exponent
/// sums, anything else is undetermined. The abelianization is always
/// computed and must agree with a determined verdict.
pub fn classify_with_budget(p: &Presentation, move_budget: usize) -> GroupVerdict {
    let simplified = tietze_simplify(p, move_budget);
    let ab = abelianization(p);
    let kind = match simplified.generator_count() {
        0 => GroupKind::Trivial,
        1 => {
            if simplified.relators.is_empty() {
                GroupKind::InfiniteCyclic
            } else {
                let g = simplified
                    .relators
                    .iter()
                    .map(|w| w.iter().map(|&l| i64::from(l.signum())).sum::<i64>().unsigned_abs())
                    .fold(0u64, gcd);
                match g {
                    0 => GroupKind::InfiniteCyclic,
                    1 => GroupKind::Trivial,
                    order => GroupKind::FiniteCyclic { order },
                }
            }
        }
        _ => GroupKind::Undetermined,
    };
    let expected = match &kind {
        GroupKind::Trivial => Some(AbelianGroup::trivial()),
        GroupKind::InfiniteCyclic => Some(AbelianGroup::free(1)),
        GroupKind::FiniteCyclic { order } => Some(AbelianGroup::cyclic(*order)),
        GroupKind::Undetermined => None,
    };
    if let Some(expected) = expected {
        assert_eq!(
            expected, ab,
            "verdict {kind} contradicts abelianization {ab} for {p}"
        );
    }
    GroupVerdict {
        kind,
        abelianization: ab,
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}
