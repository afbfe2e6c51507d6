//! Matchings and signed matching systems.
//!
//! An n-matching (n odd) is a bijection from the even face indices
//! `{0, 2, ..., n-1}` of the standard n-simplex onto the odd ones
//! `{1, 3, ..., n}`; it records how the facets of a single simplex cancel in
//! a singular cycle. A [`MatchingSystem`] generalizes this to several
//! simplices carrying coefficients in {+1, -1}, with a perfect pairing of all
//! facet slots in which every pair cancels in the boundary.

use std::collections::HashSet;
use std::fmt;

use itertools::Itertools;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MatchingError {
    #[error("dimension must be a positive odd integer, got {0}")]
    EvenDimension(usize),
    #[error("dimension must be positive")]
    ZeroDimension,
    #[error("invalid matching pairs: {0}")]
    InvalidPairs(String),
    #[error("facet slot ({0}, {1}) out of range for {2} simplices of dimension {3}")]
    SlotOutOfRange(usize, usize, usize, usize),
    #[error("a matching system needs at least one simplex")]
    EmptySystem,
    #[error("positive and negative facet slot sets have sizes {positive} and {negative}; no perfect cancelling pairing exists")]
    UnbalancedSigns { positive: usize, negative: usize },
    #[error("unknown catalog name {0:?}")]
    UnknownCatalogName(String),
}

/// Coefficient sign of one simplex in a matching system.
#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn as_i64(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }
}

/// One facet slot: face `face` of simplex number `simplex`.
#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Slot {
    pub simplex: usize,
    pub face: usize,
}

impl Slot {
    pub fn new(simplex: usize, face: usize) -> Self {
        Slot { simplex, face }
    }
}

impl fmt::Display for Slot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.simplex, self.face)
    }
}

/// A single-simplex matching: a bijection from even to odd face indices.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Matching {
    n: usize,
    /// image[i] = pi(2 * i)
    image: Vec<usize>,
}

impl Matching {
    /// Builds a matching from explicit (even, odd) pairs, in any order.
    pub fn new(n: usize, pairs: &[(usize, usize)]) -> Result<Self, MatchingError> {
        check_odd_dimension(n)?;
        let count = (n + 1) / 2;
        if pairs.len() != count {
            return Err(MatchingError::InvalidPairs(format!(
                "expected {count} pairs, got {}",
                pairs.len()
            )));
        }
        let mut image = vec![usize::MAX; count];
        for &(even, odd) in pairs {
            if even % 2 != 0 || even >= n {
                return Err(MatchingError::InvalidPairs(format!(
                    "{even} is not an even face index below {n}"
                )));
            }
            if odd % 2 != 1 || odd > n {
                return Err(MatchingError::InvalidPairs(format!(
                    "{odd} is not an odd face index of a {n}-simplex"
                )));
            }
            if image[even / 2] != usize::MAX {
                return Err(MatchingError::InvalidPairs(format!("{even} mapped twice")));
            }
            image[even / 2] = odd;
        }
        let mut seen = vec![false; count];
        for &odd in &image {
            let slot = (odd - 1) / 2;
            if seen[slot] {
                return Err(MatchingError::InvalidPairs(format!("{odd} hit twice")));
            }
            seen[slot] = true;
        }
        Ok(Matching { n, image })
    }

    /// Builds a matching from its image tuple (pi(0), pi(2), ...).
    pub fn from_image(n: usize, image: Vec<usize>) -> Result<Self, MatchingError> {
        let pairs: Vec<(usize, usize)> = image.iter().enumerate().map(|(i, &o)| (2 * i, o)).collect();
        Matching::new(n, &pairs)
    }

    /// The matching 0 -> 1, 2 -> 3, ..., n-1 -> n, whose model space is the
    /// n-sphere.
    pub fn standard(n: usize) -> Result<Self, MatchingError> {
        check_odd_dimension(n)?;
        Ok(Matching {
            n,
            image: (0..(n + 1) / 2).map(|i| 2 * i + 1).collect(),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn image(&self) -> &[usize] {
        &self.image
    }

    /// pi(even), if `even` is in the domain.
    pub fn apply(&self, even: usize) -> Option<usize> {
        if even % 2 == 0 && even < self.n {
            Some(self.image[even / 2])
        } else {
            None
        }
    }

    /// (even, odd) pairs with even indices ascending.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        self.image.iter().enumerate().map(|(i, &o)| (2 * i, o)).collect()
    }

    /// Extends to dimension n + 2 by sending n+1 to n+2. The model space of
    /// the extension is the double unreduced suspension of the original one.
    pub fn trivial_extension(&self) -> Matching {
        let mut image = self.image.clone();
        image.push(self.n + 2);
        Matching {
            n: self.n + 2,
            image,
        }
    }

    /// Wraps the matching as a one-simplex system with coefficient +1.
    pub fn to_system(&self) -> MatchingSystem {
        let pairing = self
            .pairs()
            .into_iter()
            .map(|(e, o)| (Slot::new(0, e), Slot::new(0, o)))
            .collect();
        MatchingSystem::new(self.n, vec![Sign::Plus], pairing).expect("matching is a valid system")
    }

    /// Canonical text form, e.g. `M:n=3;pi=0:3,2:1`.
    pub fn descriptor(&self) -> String {
        let body = self
            .pairs()
            .iter()
            .map(|(e, o)| format!("{e}:{o}"))
            .join(",");
        format!("M:n={};pi={}", self.n, body)
    }
}

impl fmt::Display for Matching {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.descriptor())
    }
}

fn check_odd_dimension(n: usize) -> Result<(), MatchingError> {
    if n == 0 {
        return Err(MatchingError::ZeroDimension);
    }
    if n % 2 == 0 {
        return Err(MatchingError::EvenDimension(n));
    }
    Ok(())
}

/// Several n-simplices with coefficients in {+1, -1} and a pairing of their
/// facet slots. The pairing is stored normalized: each pair with its smaller
/// slot first, pairs sorted lexicographically.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct MatchingSystem {
    n: usize,
    coeffs: Vec<Sign>,
    pairing: Vec<(Slot, Slot)>,
}

impl MatchingSystem {
    pub fn new(
        n: usize,
        coeffs: Vec<Sign>,
        pairing: Vec<(Slot, Slot)>,
    ) -> Result<Self, MatchingError> {
        if n == 0 {
            return Err(MatchingError::ZeroDimension);
        }
        if coeffs.is_empty() {
            return Err(MatchingError::EmptySystem);
        }
        let k = coeffs.len();
        let mut normalized: Vec<(Slot, Slot)> = Vec::with_capacity(pairing.len());
        for (a, b) in pairing {
            for s in [a, b] {
                if s.simplex >= k || s.face > n {
                    return Err(MatchingError::SlotOutOfRange(s.simplex, s.face, k, n));
                }
            }
            if a == b {
                return Err(MatchingError::InvalidPairs(format!("slot {a} paired with itself")));
            }
            normalized.push(if a < b { (a, b) } else { (b, a) });
        }
        normalized.sort();
        if normalized.windows(2).any(|w| w[0] == w[1]) {
            return Err(MatchingError::InvalidPairs("duplicate pair".to_string()));
        }
        Ok(MatchingSystem {
            n,
            coeffs,
            pairing: normalized,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of simplices.
    pub fn k(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[Sign] {
        &self.coeffs
    }

    pub fn pairing(&self) -> &[(Slot, Slot)] {
        &self.pairing
    }

    /// Sign with which slot (i, j) occurs in the boundary: eps_i * (-1)^j.
    pub fn slot_sign(&self, slot: Slot) -> i64 {
        let face_sign = if slot.face % 2 == 0 { 1 } else { -1 };
        self.coeffs[slot.simplex].as_i64() * face_sign
    }

    /// Recovers the single-simplex matching when the system is one simplex
    /// with coefficient +1 and an even-to-odd facet bijection.
    pub fn as_single(&self) -> Option<Matching> {
        if self.coeffs != [Sign::Plus] {
            return None;
        }
        let mut pairs = Vec::with_capacity(self.pairing.len());
        for &(a, b) in &self.pairing {
            let (even, odd) = match (a.face % 2, b.face % 2) {
                (0, 1) => (a.face, b.face),
                (1, 0) => (b.face, a.face),
                _ => return None,
            };
            pairs.push((even, odd));
        }
        Matching::new(self.n, &pairs).ok()
    }

    /// Canonical text form: the `M:` form for single matchings, otherwise
    /// `S:n=..;eps=..;pairs=(i,j)-(i',j');...`.
    pub fn descriptor(&self) -> String {
        if let Some(m) = self.as_single() {
            return m.descriptor();
        }
        let eps: String = self.coeffs.iter().map(|s| s.as_char()).collect();
        let pairs = self
            .pairing
            .iter()
            .map(|(a, b)| format!("{a}-{b}"))
            .join(";");
        format!("S:n={};eps={};pairs={}", self.n, eps, pairs)
    }
}

impl fmt::Display for MatchingSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.descriptor())
    }
}

/// A single violated validity condition of a matching system.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Violation {
    /// Slot appears in no pair.
    UnpairedSlot(Slot),
    /// Slot appears in more than one pair.
    DuplicateSlot(Slot),
    /// Pair whose two slots do not cancel in the boundary.
    NonCancellingPair(Slot, Slot),
    /// k * (n + 1) facet slots cannot be perfectly paired when odd.
    OddSlotCount { total: usize },
    /// In even dimension the total absolute coefficient weight must be even.
    OddWeightEvenDimension { n: usize, weight: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::UnpairedSlot(s) => write!(f, "slot {s} is unpaired"),
            Violation::DuplicateSlot(s) => write!(f, "slot {s} occurs in more than one pair"),
            Violation::NonCancellingPair(a, b) => {
                write!(f, "pair {a}-{b} does not cancel in the boundary")
            }
            Violation::OddSlotCount { total } => {
                write!(f, "{total} facet slots cannot be perfectly paired")
            }
            Violation::OddWeightEvenDimension { n, weight } => write!(
                f,
                "total weight {weight} is odd; cycles in even dimension {n} have even weight"
            ),
        }
    }
}

/// Parity bookkeeping for even-dimensional systems.
#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub struct ParityFact {
    /// Total absolute coefficient sum (= number of simplices here).
    pub weight: usize,
    pub even: bool,
}

/// Structured validity report for a matching system.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
    /// Present exactly when the dimension is even.
    pub parity: Option<ParityFact>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_valid() {
            write!(f, "valid")
        } else {
            let list = self.violations.iter().map(|v| v.to_string()).join("; ");
            write!(f, "invalid: {list}")
        }
    }
}

/// Checks that the pairing is perfect and sign-cancelling, and reports the
/// even-dimension parity fact. Invalid systems yield a list of violations
/// rather than an error.
pub fn validate_system(sys: &MatchingSystem) -> ValidationReport {
    let n = sys.n();
    let k = sys.k();
    let total = k * (n + 1);
    let mut violations = Vec::new();

    if total % 2 != 0 {
        violations.push(Violation::OddSlotCount { total });
    }
    if n % 2 == 0 && k % 2 != 0 {
        violations.push(Violation::OddWeightEvenDimension { n, weight: k });
    }

    let mut count = vec![0usize; total];
    let index = |s: Slot| s.simplex * (n + 1) + s.face;
    for &(a, b) in sys.pairing() {
        count[index(a)] += 1;
        count[index(b)] += 1;
        if sys.slot_sign(a) != -sys.slot_sign(b) {
            violations.push(Violation::NonCancellingPair(a, b));
        }
    }
    for simplex in 0..k {
        for face in 0..=n {
            let s = Slot::new(simplex, face);
            match count[index(s)] {
                0 => violations.push(Violation::UnpairedSlot(s)),
                1 => {}
                _ => violations.push(Violation::DuplicateSlot(s)),
            }
        }
    }

    let parity = (n % 2 == 0).then_some(ParityFact {
        weight: k,
        even: k % 2 == 0,
    });
    ValidationReport { violations, parity }
}

/// All n-matchings, ordered lexicographically by image tuple
/// (pi(0), pi(2), ..., pi(n-1)). There are ((n+1)/2)! of them.
pub fn enumerate_single(
    n: usize,
) -> Result<impl Iterator<Item = Matching> + Clone, MatchingError> {
    check_odd_dimension(n)?;
    let odds: Vec<usize> = (1..=n).step_by(2).collect();
    let count = odds.len();
    Ok(odds
        .into_iter()
        .permutations(count)
        .map(move |image| Matching { n, image }))
}

/// Relative sign of the two simplices in a two-simplex cycle.
#[derive(Copy, Clone, PartialEq, Eq, Hash, Debug)]
pub enum SignType {
    Same,
    Opposite,
}

impl fmt::Display for SignType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SignType::Same => write!(f, "same"),
            SignType::Opposite => write!(f, "opp"),
        }
    }
}

/// All two-simplex matching systems of the given sign type, in lexicographic
/// order of the image tuple over the sorted positive slots.
///
/// For odd n both coefficient patterns admit perfect cancelling pairings.
/// For even n only mixed coefficients do, so both sign types enumerate that
/// one family; for n = 6 this is the full 7! = 5040 sweep.
pub fn enumerate_two_simplex(
    n: usize,
    sign: SignType,
) -> Result<impl Iterator<Item = MatchingSystem> + Clone, MatchingError> {
    if n == 0 {
        return Err(MatchingError::ZeroDimension);
    }
    let coeffs = if n % 2 == 1 {
        match sign {
            SignType::Same => vec![Sign::Plus, Sign::Plus],
            SignType::Opposite => vec![Sign::Plus, Sign::Minus],
        }
    } else {
        vec![Sign::Plus, Sign::Minus]
    };
    let probe = MatchingSystem {
        n,
        coeffs: coeffs.clone(),
        pairing: Vec::new(),
    };
    let mut positive = Vec::new();
    let mut negative = Vec::new();
    for simplex in 0..coeffs.len() {
        for face in 0..=n {
            let s = Slot::new(simplex, face);
            if probe.slot_sign(s) > 0 {
                positive.push(s);
            } else {
                negative.push(s);
            }
        }
    }
    if positive.len() != negative.len() {
        return Err(MatchingError::UnbalancedSigns {
            positive: positive.len(),
            negative: negative.len(),
        });
    }
    let count = negative.len();
    Ok(negative
        .into_iter()
        .permutations(count)
        .map(move |image| {
            let pairing = positive.iter().copied().zip(image).collect();
            MatchingSystem::new(n, coeffs.clone(), pairing).expect("slots are in range")
        }))
}

/// One named system of the built-in catalog.
#[derive(Copy, Clone, Debug)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub summary: &'static str,
}

/// Names understood by [`catalog`].
pub fn catalog_entries() -> Vec<CatalogEntry> {
    vec![
        CatalogEntry {
            name: "dim3-exotic",
            summary: "single 3-simplex, 0->3 2->1; sphere homology without the standard gluing",
        },
        CatalogEntry {
            name: "dim5-exotic",
            summary: "single 5-simplex, 0->3 2->5 4->1; homology breaks Betti symmetry",
        },
        CatalogEntry {
            name: "standard-<n>",
            summary: "single simplex, 0->1 2->3 ...; model space is the n-sphere (n odd)",
        },
        CatalogEntry {
            name: "s1xs-odd-<n>",
            summary: "two simplices +/-, 0<->n inside each simplex, j<->j' across; models a product-of-spheres cycle (n odd)",
        },
        CatalogEntry {
            name: "s1xs-even-<n>",
            summary: "two simplices +/-, 0<->n' and n<->0' across, j<->j' across; models a product-of-spheres cycle (n even)",
        },
    ]
}

/// Looks up a named matching system.
pub fn catalog(name: &str) -> Result<MatchingSystem, MatchingError> {
    let unknown = || MatchingError::UnknownCatalogName(name.to_string());
    match name {
        "dim3-exotic" => return Ok(Matching::new(3, &[(0, 3), (2, 1)])?.to_system()),
        "dim5-exotic" => return Ok(Matching::new(5, &[(0, 3), (2, 5), (4, 1)])?.to_system()),
        _ => {}
    }
    if let Some(rest) = name.strip_prefix("standard-") {
        let n: usize = rest.parse().map_err(|_| unknown())?;
        return Ok(Matching::standard(n)?.to_system());
    }
    if let Some(rest) = name.strip_prefix("s1xs-odd-") {
        let n: usize = rest.parse().map_err(|_| unknown())?;
        if n < 3 || n % 2 == 0 {
            return Err(unknown());
        }
        let mut pairing = vec![
            (Slot::new(0, 0), Slot::new(0, n)),
            (Slot::new(1, 0), Slot::new(1, n)),
        ];
        pairing.extend((1..n).map(|j| (Slot::new(0, j), Slot::new(1, j))));
        return MatchingSystem::new(n, vec![Sign::Plus, Sign::Minus], pairing);
    }
    if let Some(rest) = name.strip_prefix("s1xs-even-") {
        let n: usize = rest.parse().map_err(|_| unknown())?;
        if n < 2 || n % 2 == 1 {
            return Err(unknown());
        }
        let mut pairing = vec![
            (Slot::new(0, 0), Slot::new(1, n)),
            (Slot::new(0, n), Slot::new(1, 0)),
        ];
        pairing.extend((1..n).map(|j| (Slot::new(0, j), Slot::new(1, j))));
        return MatchingSystem::new(n, vec![Sign::Plus, Sign::Minus], pairing);
    }
    Err(unknown())
}

/// Parsed form of a descriptor: either a bare matching or a general system.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Described {
    Single(Matching),
    System(MatchingSystem),
}

impl Described {
    pub fn into_system(self) -> MatchingSystem {
        match self {
            Described::Single(m) => m.to_system(),
            Described::System(s) => s,
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DescriptorError {
    #[error("descriptor must start with \"M:\" or \"S:\"")]
    UnknownForm,
    #[error("malformed descriptor: {0}")]
    Malformed(String),
    #[error("descriptor names an impossible object: {0}")]
    Invalid(#[from] MatchingError),
}

fn expect_prefix<'a>(s: &'a str, prefix: &str) -> Result<&'a str, DescriptorError> {
    s.strip_prefix(prefix)
        .ok_or_else(|| DescriptorError::Malformed(format!("expected {prefix:?}")))
}

fn parse_usize(s: &str) -> Result<usize, DescriptorError> {
    s.parse()
        .map_err(|_| DescriptorError::Malformed(format!("bad integer {s:?}")))
}

/// Parses the canonical text grammar. `parse_descriptor(render(x)) == x` for
/// every descriptor this crate renders.
pub fn parse_descriptor(text: &str) -> Result<Described, DescriptorError> {
    if let Some(rest) = text.strip_prefix("M:") {
        let rest = expect_prefix(rest, "n=")?;
        let (n_str, rest) = rest
            .split_once(';')
            .ok_or_else(|| DescriptorError::Malformed("missing \";pi=\"".to_string()))?;
        let n = parse_usize(n_str)?;
        let body = expect_prefix(rest, "pi=")?;
        let mut pairs = Vec::new();
        for item in body.split(',') {
            let (e, o) = item
                .split_once(':')
                .ok_or_else(|| DescriptorError::Malformed(format!("bad pair {item:?}")))?;
            pairs.push((parse_usize(e)?, parse_usize(o)?));
        }
        return Ok(Described::Single(Matching::new(n, &pairs)?));
    }
    if let Some(rest) = text.strip_prefix("S:") {
        let rest = expect_prefix(rest, "n=")?;
        let (n_str, rest) = rest
            .split_once(';')
            .ok_or_else(|| DescriptorError::Malformed("missing \";eps=\"".to_string()))?;
        let n = parse_usize(n_str)?;
        let rest = expect_prefix(rest, "eps=")?;
        let (eps_str, rest) = rest
            .split_once(';')
            .ok_or_else(|| DescriptorError::Malformed("missing \";pairs=\"".to_string()))?;
        let mut coeffs = Vec::new();
        for ch in eps_str.chars() {
            coeffs.push(match ch {
                '+' => Sign::Plus,
                '-' => Sign::Minus,
                other => return Err(DescriptorError::Malformed(format!("bad sign {other:?}"))),
            });
        }
        let body = expect_prefix(rest, "pairs=")?;
        let mut pairing = Vec::new();
        if !body.is_empty() {
            for item in body.split(';') {
                let (a, b) = item
                    .split_once('-')
                    .ok_or_else(|| DescriptorError::Malformed(format!("bad pair {item:?}")))?;
                pairing.push((parse_slot(a)?, parse_slot(b)?));
            }
        }
        return Ok(Described::System(MatchingSystem::new(n, coeffs, pairing)?));
    }
    Err(DescriptorError::UnknownForm)
}

fn parse_slot(s: &str) -> Result<Slot, DescriptorError> {
    let inner = s
        .strip_prefix('(')
        .and_then(|s| s.strip_suffix(')'))
        .ok_or_else(|| DescriptorError::Malformed(format!("bad slot {s:?}")))?;
    let (i, j) = inner
        .split_once(',')
        .ok_or_else(|| DescriptorError::Malformed(format!("bad slot {s:?}")))?;
    Ok(Slot::new(parse_usize(i)?, parse_usize(j)?))
}

/// Deterministic descriptor; with `dedup_symmetry` set, the lexicographic
/// minimum over all relabelings of simplices with equal coefficients, so
/// that swapping interchangeable simplices yields the same text.
pub fn canonical_descriptor(sys: &MatchingSystem, dedup_symmetry: bool) -> String {
    if !dedup_symmetry {
        return sys.descriptor();
    }
    let k = sys.k();
    (0..k)
        .permutations(k)
        .filter(|perm| (0..k).all(|i| sys.coeffs()[perm[i]] == sys.coeffs()[i]))
        .map(|perm| {
            // perm[new] = old; relabel slot by the inverse.
            let mut new_of_old = vec![0usize; k];
            for (new, &old) in perm.iter().enumerate() {
                new_of_old[old] = new;
            }
            let pairing = sys
                .pairing()
                .iter()
                .map(|&(a, b)| {
                    (
                        Slot::new(new_of_old[a.simplex], a.face),
                        Slot::new(new_of_old[b.simplex], b.face),
                    )
                })
                .collect();
            MatchingSystem::new(sys.n(), sys.coeffs().to_vec(), pairing)
                .expect("relabeling preserves ranges")
                .descriptor()
        })
        .min()
        .expect("identity relabeling always present")
}

/// Drops systems whose symmetry-canonical descriptor has been seen before,
/// preserving the original order.
pub fn dedup_by_symmetry<I: IntoIterator<Item = MatchingSystem>>(systems: I) -> Vec<MatchingSystem> {
    let mut seen = HashSet::new();
    systems
        .into_iter()
        .filter(|sys| seen.insert(canonical_descriptor(sys, true)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn enumeration_counts_and_order() {
        let ms: Vec<Matching> = enumerate_single(1).unwrap().collect();
        assert_eq!(ms.len(), 1);
        assert_eq!(ms[0].pairs(), vec![(0, 1)]);

        let ms: Vec<Matching> = enumerate_single(3).unwrap().collect();
        assert_eq!(ms.len(), 2);
        assert_eq!(ms[0].image(), &[1, 3]);
        assert_eq!(ms[1].image(), &[3, 1]);

        assert_eq!(enumerate_single(5).unwrap().count(), 6);
        assert_eq!(enumerate_single(7).unwrap().count(), 24);
    }

    #[test]
    fn enumeration_rejects_bad_dimension() {
        assert!(matches!(enumerate_single(0), Err(MatchingError::ZeroDimension)));
        assert!(matches!(enumerate_single(4), Err(MatchingError::EvenDimension(4))));
    }

    #[test]
    fn enumerated_matchings_validate_up_to_nine() {
        for n in [1usize, 3, 5, 7, 9] {
            let expected: usize = (1..=(n + 1) / 2).product();
            let mut count = 0;
            for m in enumerate_single(n).unwrap() {
                assert!(validate_system(&m.to_system()).is_valid());
                count += 1;
            }
            assert_eq!(count, expected);
        }
    }

    #[test]
    fn two_simplex_universes() {
        let same: Vec<MatchingSystem> = enumerate_two_simplex(3, SignType::Same).unwrap().collect();
        assert_eq!(same.len(), 24);
        assert!(same.iter().all(|s| validate_system(s).is_valid()));
        // Domain of the bijection: the positive slots.
        let positives: Vec<Slot> = (0..2)
            .flat_map(|i| [Slot::new(i, 0), Slot::new(i, 2)])
            .collect();
        for s in &same {
            for p in &positives {
                assert!(s.pairing().iter().any(|(a, b)| a == p || b == p));
            }
        }

        let opp: Vec<MatchingSystem> =
            enumerate_two_simplex(3, SignType::Opposite).unwrap().collect();
        assert_eq!(opp.len(), 24);
        assert!(opp.iter().all(|s| validate_system(s).is_valid()));
        let first = &opp[0];
        assert_eq!(first.coeffs(), &[Sign::Plus, Sign::Minus]);
        assert!(first.pairing().iter().all(|&(a, b)| {
            first.slot_sign(a) == -first.slot_sign(b)
        }));
    }

    #[test]
    fn dimension_six_sweep_size() {
        assert_eq!(enumerate_two_simplex(6, SignType::Same).unwrap().count(), 5040);
    }

    #[test]
    fn trivial_extension_examples() {
        let m = Matching::new(1, &[(0, 1)]).unwrap();
        assert_eq!(m.trivial_extension().pairs(), vec![(0, 1), (2, 3)]);

        let m = Matching::new(3, &[(0, 3), (2, 1)]).unwrap();
        assert_eq!(m.trivial_extension().pairs(), vec![(0, 3), (2, 1), (4, 5)]);

        assert_eq!(
            Matching::standard(3).unwrap().trivial_extension(),
            Matching::standard(5).unwrap()
        );
    }

    #[test]
    fn trivial_extension_preserves_validity() {
        for m in enumerate_single(5).unwrap() {
            let ext = m.trivial_extension();
            assert_eq!(ext.n(), m.n() + 2);
            assert!(validate_system(&ext.to_system()).is_valid());
        }
    }

    #[test]
    fn standard_matchings() {
        assert_eq!(Matching::standard(1).unwrap().pairs(), vec![(0, 1)]);
        assert_eq!(Matching::standard(3).unwrap().pairs(), vec![(0, 1), (2, 3)]);
        assert_eq!(
            Matching::standard(7).unwrap().pairs(),
            vec![(0, 1), (2, 3), (4, 5), (6, 7)]
        );
        assert!(Matching::standard(4).is_err());
    }

    #[test]
    fn validate_covers_the_examples() {
        let good = Matching::new(3, &[(0, 3), (2, 1)]).unwrap().to_system();
        assert!(validate_system(&good).is_valid());

        // A single even-dimensional simplex: 3 slots, no perfect pairing.
        let bad = MatchingSystem::new(
            2,
            vec![Sign::Plus],
            vec![(Slot::new(0, 0), Slot::new(0, 1))],
        )
        .unwrap();
        let report = validate_system(&bad);
        assert!(!report.is_valid());
        assert!(report
            .violations
            .contains(&Violation::OddSlotCount { total: 3 }));
        assert!(report
            .violations
            .contains(&Violation::UnpairedSlot(Slot::new(0, 2))));
        assert!(report
            .violations
            .contains(&Violation::OddWeightEvenDimension { n: 2, weight: 1 }));
        assert_eq!(
            report.parity,
            Some(ParityFact {
                weight: 1,
                even: false
            })
        );
    }

    /// All perfect pairings of the given slots, brute force.
    fn all_perfect_pairings(slots: &[Slot]) -> Vec<Vec<(Slot, Slot)>> {
        if slots.is_empty() {
            return vec![Vec::new()];
        }
        let first = slots[0];
        let mut out = Vec::new();
        for i in 1..slots.len() {
            let partner = slots[i];
            let rest: Vec<Slot> = slots[1..]
                .iter()
                .copied()
                .filter(|s| *s != partner)
                .collect();
            for mut tail in all_perfect_pairings(&rest) {
                tail.insert(0, (first, partner));
                out.push(tail);
            }
        }
        out
    }

    #[test]
    fn two_simplices_same_sign_even_dimension_never_valid() {
        // n = 2, eps = (+1, +1): exhaust all 15 perfect pairings of 6 slots.
        let slots: Vec<Slot> = (0..2)
            .flat_map(|i| (0..=2).map(move |j| Slot::new(i, j)))
            .collect();
        let pairings = all_perfect_pairings(&slots);
        assert_eq!(pairings.len(), 15);
        for pairing in pairings {
            let sys = MatchingSystem::new(2, vec![Sign::Plus, Sign::Plus], pairing).unwrap();
            assert!(!validate_system(&sys).is_valid());
        }
    }

    #[test]
    fn no_valid_single_simplex_in_even_dimension() {
        // Slot counts 3 and 5 are odd, so no perfect pairing exists at all.
        for n in [2usize, 4] {
            let slots: Vec<Slot> = (0..=n).map(|j| Slot::new(0, j)).collect();
            assert!(all_perfect_pairings(&slots).is_empty());
        }
    }

    #[test]
    fn catalog_systems() {
        let five = catalog("dim5-exotic").unwrap();
        assert_eq!(
            five.as_single().unwrap().pairs(),
            vec![(0, 3), (2, 5), (4, 1)]
        );

        let even4 = catalog("s1xs-even-4").unwrap();
        assert!(even4
            .pairing()
            .contains(&(Slot::new(0, 0), Slot::new(1, 4))));
        assert!(even4
            .pairing()
            .contains(&(Slot::new(0, 4), Slot::new(1, 0))));
        assert!(validate_system(&even4).is_valid());

        let std3 = catalog("standard-3").unwrap();
        assert_eq!(std3.as_single().unwrap(), Matching::standard(3).unwrap());

        let odd5 = catalog("s1xs-odd-5").unwrap();
        assert!(odd5
            .pairing()
            .contains(&(Slot::new(0, 0), Slot::new(0, 5))));
        assert!(validate_system(&odd5).is_valid());

        assert!(catalog("nonsense").is_err());
        assert!(catalog("s1xs-even-3").is_err());
        assert!(catalog("standard-2").is_err());
    }

    #[test]
    fn descriptor_grammar_is_exact() {
        let m = Matching::new(3, &[(0, 3), (2, 1)]).unwrap();
        assert_eq!(m.descriptor(), "M:n=3;pi=0:3,2:1");
        assert_eq!(canonical_descriptor(&m.to_system(), false), "M:n=3;pi=0:3,2:1");

        let sys = MatchingSystem::new(
            1,
            vec![Sign::Plus, Sign::Minus],
            vec![
                (Slot::new(0, 0), Slot::new(0, 1)),
                (Slot::new(1, 1), Slot::new(1, 0)),
            ],
        )
        .unwrap();
        assert_eq!(
            sys.descriptor(),
            "S:n=1;eps=+-;pairs=(0,0)-(0,1);(1,0)-(1,1)"
        );
    }

    #[test]
    fn descriptor_round_trip() {
        for n in [1usize, 3, 5] {
            for m in enumerate_single(n).unwrap() {
                let parsed = parse_descriptor(&m.descriptor()).unwrap();
                assert_eq!(parsed, Described::Single(m));
            }
        }
        for sys in enumerate_two_simplex(3, SignType::Same).unwrap().take(8) {
            let parsed = parse_descriptor(&sys.descriptor()).unwrap();
            assert_eq!(parsed, Described::System(sys));
        }
        for name in ["dim3-exotic", "s1xs-odd-3", "s1xs-even-4"] {
            let sys = catalog(name).unwrap();
            assert_eq!(parse_descriptor(&sys.descriptor()).unwrap().into_system(), sys);
        }
    }

    #[test]
    fn descriptor_rejects_garbage() {
        for bad in [
            "",
            "X:n=3",
            "M:n=3;pi=0:2,2:1",
            "M:n=3;pi=0:1",
            "M:n=4;pi=0:1,2:3",
            "S:n=3;eps=+?;pairs=",
            "S:n=3;eps=+;pairs=(0,9)-(0,1)",
        ] {
            assert!(parse_descriptor(bad).is_err(), "accepted {bad:?}");
        }
    }

    #[test]
    fn symmetry_dedup_collapses_swaps() {
        let sys = enumerate_two_simplex(3, SignType::Same)
            .unwrap()
            .next()
            .unwrap();
        // Swap the two simplices by hand.
        let swapped_pairs = sys
            .pairing()
            .iter()
            .map(|&(a, b)| {
                (
                    Slot::new(1 - a.simplex, a.face),
                    Slot::new(1 - b.simplex, b.face),
                )
            })
            .collect();
        let swapped = MatchingSystem::new(3, sys.coeffs().to_vec(), swapped_pairs).unwrap();
        assert_ne!(
            canonical_descriptor(&sys, false),
            canonical_descriptor(&swapped, false)
        );
        assert_eq!(
            canonical_descriptor(&sys, true),
            canonical_descriptor(&swapped, true)
        );

        // Opposite signs: no relabeling allowed, canonical form is the plain one.
        let opp = enumerate_two_simplex(3, SignType::Opposite)
            .unwrap()
            .next()
            .unwrap();
        assert_eq!(canonical_descriptor(&opp, true), opp.descriptor());
    }

    #[test]
    fn dedup_filters_enumeration() {
        let all: Vec<MatchingSystem> =
            enumerate_two_simplex(3, SignType::Same).unwrap().collect();
        let deduped = dedup_by_symmetry(all.clone());
        assert!(deduped.len() < all.len());
        assert!(deduped.len() * 2 >= all.len());
    }
}
