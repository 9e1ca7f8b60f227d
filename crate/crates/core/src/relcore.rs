//! Finite equivalence relations, maps between their ground sets, and the
//! five-property classification of such maps.
//!
//! Elements of a ground set are the indices `0..ground_size`; classes are the
//! indices `0..num_classes`. Everything downstream only looks at class sizes,
//! so [`SizeProfile`] is the isomorphism invariant used for comparisons.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RelError {
    #[error("class index {class} is used but class {missing} is empty")]
    EmptyClass { class: usize, missing: usize },
    #[error("map has domain size {got}, expected {expected}")]
    DomainMismatch { expected: usize, got: usize },
    #[error("element {element} maps to {target}, outside a ground set of size {ground}")]
    TargetOutOfRange { element: usize, target: usize, ground: usize },
    #[error("not a homomorphism: {x} and {x_prime} are equivalent but {fx} and {fx_prime} are not")]
    NotAHomomorphism { x: usize, x_prime: usize, fx: usize, fx_prime: usize },
    #[error("class size threshold must be at least 1")]
    ZeroKappa,
    #[error("class sizes must be positive")]
    ZeroClassSize,
    #[error("parse error at position {position}: unexpected {token:?} ({expected})")]
    Parse { position: usize, token: String, expected: &'static str },
}

/// An equivalence relation on `{0, .., ground_size - 1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FiniteEqRel {
    class_of: Vec<usize>,
    num_classes: usize,
}

impl FiniteEqRel {
    /// Builds a relation from a total class assignment. Class indices must
    /// form a contiguous range starting at zero.
    pub fn from_class_of(class_of: Vec<usize>) -> Result<Self, RelError> {
        let num_classes = class_of.iter().map(|&c| c + 1).max().unwrap_or(0);
        let mut seen = vec![false; num_classes];
        for &c in &class_of {
            seen[c] = true;
        }
        if let Some(missing) = seen.iter().position(|s| !s) {
            return Err(RelError::EmptyClass { class: num_classes - 1, missing });
        }
        Ok(Self { class_of, num_classes })
    }

    /// Deterministic expansion of a profile: classes laid out in
    /// nondecreasing size, elements numbered consecutively.
    pub fn from_profile(profile: &SizeProfile) -> Self {
        let mut class_of = Vec::with_capacity(profile.ground_size());
        let mut class = 0;
        for (&size, &count) in &profile.counts {
            for _ in 0..count {
                class_of.extend(std::iter::repeat_n(class, size));
                class += 1;
            }
        }
        Self { class_of, num_classes: class }
    }

    pub fn ground_size(&self) -> usize {
        self.class_of.len()
    }

    pub fn num_classes(&self) -> usize {
        self.num_classes
    }

    pub fn class_of(&self, element: usize) -> usize {
        self.class_of[element]
    }

    pub fn equivalent(&self, x: usize, y: usize) -> bool {
        self.class_of[x] == self.class_of[y]
    }

    /// Members of each class, in increasing element order.
    pub fn classes(&self) -> Vec<Vec<usize>> {
        let mut classes = vec![Vec::new(); self.num_classes];
        for (x, &c) in self.class_of.iter().enumerate() {
            classes[c].push(x);
        }
        classes
    }

    pub fn class_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0; self.num_classes];
        for &c in &self.class_of {
            sizes[c] += 1;
        }
        sizes
    }
}

/// Number of classes of each size. Absent sizes have count zero.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SizeProfile {
    counts: BTreeMap<usize, usize>,
}

/// The three class counts at a threshold: `n_κ`, `n_≤κ`, `n_≥κ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ProfileCounts {
    pub eq: usize,
    pub leq: usize,
    pub geq: usize,
}

impl SizeProfile {
    pub fn empty() -> Self {
        Self::default()
    }

    /// Builds a profile from a list of class sizes, in any order.
    pub fn from_class_sizes(sizes: impl IntoIterator<Item = usize>) -> Result<Self, RelError> {
        let mut counts = BTreeMap::new();
        for s in sizes {
            if s == 0 {
                return Err(RelError::ZeroClassSize);
            }
            *counts.entry(s).or_insert(0) += 1;
        }
        Ok(Self { counts })
    }

    /// `n[k-1]` classes of size `k`, the `<n1,n2,...>` encoding.
    pub fn from_compact(counts_by_size: &[usize]) -> Self {
        let counts = counts_by_size.iter().enumerate().filter(|(_, &n)| n > 0).map(|(i, &n)| (i + 1, n)).collect();
        Self { counts }
    }

    pub fn counts(&self) -> &BTreeMap<usize, usize> {
        &self.counts
    }

    pub fn count_of_size(&self, size: usize) -> usize {
        self.counts.get(&size).copied().unwrap_or(0)
    }

    pub fn num_classes(&self) -> usize {
        self.counts.values().sum()
    }

    pub fn ground_size(&self) -> usize {
        self.counts.iter().map(|(s, n)| s * n).sum()
    }

    pub fn max_size(&self) -> usize {
        self.counts.keys().next_back().copied().unwrap_or(0)
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    /// Class sizes in nondecreasing order.
    pub fn sizes_ascending(&self) -> Vec<usize> {
        self.counts.iter().flat_map(|(&s, &n)| std::iter::repeat_n(s, n)).collect()
    }

    pub fn sizes_descending(&self) -> Vec<usize> {
        let mut v = self.sizes_ascending();
        v.reverse();
        v
    }

    /// Profile with one more class of the given size.
    pub fn with_class(&self, size: usize) -> Self {
        let mut counts = self.counts.clone();
        *counts.entry(size).or_insert(0) += 1;
        Self { counts }
    }

    /// The compact vector `<n1,...,nm>` with `m` the largest class size.
    pub fn to_compact(&self) -> Vec<usize> {
        (1..=self.max_size()).map(|k| self.count_of_size(k)).collect()
    }
}

/// Counts of classes of size exactly, at most, and at least `kappa`.
pub fn profile_counts(profile: &SizeProfile, kappa: usize) -> Result<ProfileCounts, RelError> {
    if kappa == 0 {
        return Err(RelError::ZeroKappa);
    }
    let mut c = ProfileCounts { eq: 0, leq: 0, geq: 0 };
    for (&s, &n) in &profile.counts {
        if s == kappa {
            c.eq += n;
        }
        if s <= kappa {
            c.leq += n;
        }
        if s >= kappa {
            c.geq += n;
        }
    }
    Ok(c)
}

pub fn canonical_profile(rel: &FiniteEqRel) -> SizeProfile {
    SizeProfile::from_class_sizes(rel.class_sizes()).expect("classes are nonempty")
}

impl fmt::Display for SizeProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.to_compact().iter().map(usize::to_string).collect();
        write!(f, "<{}>", parts.join(","))
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ClassListJson {
    classes: Vec<usize>,
}

impl FromStr for SizeProfile {
    type Err = RelError;

    /// Accepts either `<n1,n2,...>` or `{"classes":[s1,s2,...]}`.
    fn from_str(input: &str) -> Result<Self, Self::Err> {
        let lead = input.len() - input.trim_start().len();
        let trimmed = input.trim();
        if trimmed.starts_with('{') {
            let parsed: ClassListJson = serde_json::from_str(trimmed).map_err(|e| RelError::Parse {
                position: lead + e.column().saturating_sub(1),
                token: e.to_string(),
                expected: "a JSON object {\"classes\":[...]}",
            })?;
            return Self::from_class_sizes(parsed.classes);
        }
        parse_compact(input)
    }
}

fn parse_compact(input: &str) -> Result<SizeProfile, RelError> {
    let chars: Vec<(usize, char)> = input.char_indices().collect();
    let mut i = 0;
    let skip_ws = |i: &mut usize| {
        while *i < chars.len() && chars[*i].1.is_whitespace() {
            *i += 1;
        }
    };
    let err = |i: usize, expected: &'static str| {
        let (position, token) = match chars.get(i) {
            Some(&(p, c)) => (p, c.to_string()),
            None => (input.len(), "end of input".to_string()),
        };
        RelError::Parse { position, token, expected }
    };
    skip_ws(&mut i);
    if chars.get(i).map(|c| c.1) != Some('<') {
        return Err(err(i, "'<' or '{'"));
    }
    i += 1;
    let mut counts = Vec::new();
    skip_ws(&mut i);
    if chars.get(i).map(|c| c.1) == Some('>') {
        i += 1;
    } else {
        loop {
            skip_ws(&mut i);
            let start = i;
            while i < chars.len() && chars[i].1.is_ascii_digit() {
                i += 1;
            }
            if start == i {
                return Err(err(i, "a class count"));
            }
            let digits: String = chars[start..i].iter().map(|c| c.1).collect();
            let n = digits.parse::<usize>().map_err(|_| err(start, "a count that fits in usize"))?;
            counts.push(n);
            skip_ws(&mut i);
            match chars.get(i).map(|c| c.1) {
                Some(',') => i += 1,
                Some('>') => {
                    i += 1;
                    break;
                }
                _ => return Err(err(i, "',' or '>'")),
            }
        }
    }
    skip_ws(&mut i);
    if i < chars.len() {
        return Err(err(i, "end of input"));
    }
    Ok(SizeProfile::from_compact(&counts))
}

/// A total function from a domain ground set into a codomain ground set.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MapWitness {
    target: Vec<usize>,
}

impl MapWitness {
    pub fn new(target: Vec<usize>) -> Self {
        Self { target }
    }

    pub fn domain_size(&self) -> usize {
        self.target.len()
    }

    pub fn apply(&self, x: usize) -> usize {
        self.target[x]
    }

    pub fn targets(&self) -> &[usize] {
        &self.target
    }
}

impl FromStr for MapWitness {
    type Err = RelError;

    /// Comma-separated targets, optionally in brackets: `0,2,2` or `[0,2,2]`.
    fn from_str(input: &str) -> Result<Self, Self::Err> {
        let trimmed = input.trim();
        let body = trimmed.strip_prefix('[').and_then(|s| s.strip_suffix(']')).unwrap_or(trimmed);
        let offset = input.find(body).unwrap_or(0);
        if body.trim().is_empty() {
            return Ok(Self::new(Vec::new()));
        }
        let mut target = Vec::new();
        let mut pos = offset;
        for piece in body.split(',') {
            let t = piece.trim();
            let n = t.parse::<usize>().map_err(|_| RelError::Parse {
                position: pos + piece.find(t).unwrap_or(0),
                token: t.to_string(),
                expected: "a target element index",
            })?;
            target.push(n);
            pos += piece.len() + 1;
        }
        Ok(Self::new(target))
    }
}

/// The five properties of a homomorphism `φ` and its induced class map `φ̃`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PropertyFlags {
    /// `φ` is one-to-one.
    pub inj: bool,
    /// `φ` is onto.
    pub surj: bool,
    /// `φ̃` is one-to-one.
    pub class_inj: bool,
    /// `φ̃` is onto.
    pub class_surj: bool,
    /// The range of `φ` is a union of codomain classes.
    pub range_invariant: bool,
}

impl PropertyFlags {
    pub fn bits(self) -> u8 {
        (self.inj as u8)
            | (self.surj as u8) << 1
            | (self.class_inj as u8) << 2
            | (self.class_surj as u8) << 3
            | (self.range_invariant as u8) << 4
    }

    pub fn from_bits(bits: u8) -> Self {
        Self {
            inj: bits & 1 != 0,
            surj: bits & 2 != 0,
            class_inj: bits & 4 != 0,
            class_surj: bits & 8 != 0,
            range_invariant: bits & 16 != 0,
        }
    }

    /// `φ` onto iff `φ̃` onto and the range is invariant.
    pub fn is_consistent(self) -> bool {
        self.surj == (self.class_surj && self.range_invariant)
    }

    pub fn all() -> Self {
        Self::from_bits(0b11111)
    }

    /// Whether every flag set in `required` is also set here.
    pub fn contains(self, required: Self) -> bool {
        self.bits() & required.bits() == required.bits()
    }
}

impl fmt::Display for PropertyFlags {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mark = |b: bool| if b { 'T' } else { 'F' };
        write!(
            f,
            "(i){} (ii){} (iii){} (iv){} (v){}",
            mark(self.inj),
            mark(self.surj),
            mark(self.class_inj),
            mark(self.class_surj),
            mark(self.range_invariant)
        )
    }
}

/// Which way a directed statement about a pair `(E, F)` points.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Orientation {
    /// From `E` to `F`.
    Forward,
    /// From `F` to `E`.
    Backward,
}

impl Orientation {
    pub fn flipped(self) -> Self {
        match self {
            Orientation::Forward => Orientation::Backward,
            Orientation::Backward => Orientation::Forward,
        }
    }

    /// Orders a pair so the statement reads source-to-target.
    pub fn orient<'a, T: ?Sized>(self, e: &'a T, f: &'a T) -> (&'a T, &'a T) {
        match self {
            Orientation::Forward => (e, f),
            Orientation::Backward => (f, e),
        }
    }
}

/// The eight kinds of reduction, each a required subset of [`PropertyFlags`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ReductionKind {
    Reduction,
    Embedding,
    SurjectiveReduction,
    Isomorphism,
    InvariantReduction,
    FullReduction,
    InvariantEmbedding,
    FullEmbedding,
}

impl ReductionKind {
    pub const ALL: [ReductionKind; 8] = [
        ReductionKind::Reduction,
        ReductionKind::Embedding,
        ReductionKind::SurjectiveReduction,
        ReductionKind::Isomorphism,
        ReductionKind::InvariantReduction,
        ReductionKind::FullReduction,
        ReductionKind::InvariantEmbedding,
        ReductionKind::FullEmbedding,
    ];

    pub fn required_flags(self) -> PropertyFlags {
        let mut f = PropertyFlags { class_inj: true, ..Default::default() };
        match self {
            ReductionKind::Reduction => {}
            ReductionKind::Embedding => f.inj = true,
            ReductionKind::SurjectiveReduction => {
                f.surj = true;
                f.class_surj = true;
                f.range_invariant = true;
            }
            ReductionKind::Isomorphism => f = PropertyFlags::all(),
            ReductionKind::InvariantReduction => f.range_invariant = true,
            ReductionKind::FullReduction => f.class_surj = true,
            ReductionKind::InvariantEmbedding => {
                f.inj = true;
                f.range_invariant = true;
            }
            ReductionKind::FullEmbedding => {
                f.inj = true;
                f.class_surj = true;
            }
        }
        f
    }

    /// Keyboard-safe name, also accepted by [`FromStr`].
    pub fn alias(self) -> &'static str {
        match self {
            ReductionKind::Reduction => "reduction",
            ReductionKind::Embedding => "embedding",
            ReductionKind::SurjectiveReduction => "surjective-reduction",
            ReductionKind::Isomorphism => "isomorphism",
            ReductionKind::InvariantReduction => "invariant-reduction",
            ReductionKind::FullReduction => "full-reduction",
            ReductionKind::InvariantEmbedding => "invariant-embedding",
            ReductionKind::FullEmbedding => "full-embedding",
        }
    }

    /// Relation symbol for `E ? F`.
    pub fn symbol(self) -> &'static str {
        match self {
            ReductionKind::Reduction => "≤",
            ReductionKind::Embedding => "⊑",
            ReductionKind::SurjectiveReduction => "≼",
            ReductionKind::Isomorphism => "≅",
            ReductionKind::InvariantReduction => "≤ⁱ",
            ReductionKind::FullReduction => "≤ᶠ",
            ReductionKind::InvariantEmbedding => "⊑ⁱ",
            ReductionKind::FullEmbedding => "⊑ᶠ",
        }
    }

    /// Symbol of the symmetric ("bi-") version of the relation.
    pub fn bi_symbol(self) -> &'static str {
        match self {
            ReductionKind::Reduction => "∼",
            ReductionKind::Embedding => "≈",
            ReductionKind::SurjectiveReduction => "≼≽",
            ReductionKind::Isomorphism => "≅",
            ReductionKind::InvariantReduction => "∼ⁱ",
            ReductionKind::FullReduction => "∼ᶠ",
            ReductionKind::InvariantEmbedding => "≈ⁱ",
            ReductionKind::FullEmbedding => "≈ᶠ",
        }
    }

    /// Whether the induced class map must be a bijection.
    pub fn class_bijective(self) -> bool {
        self.required_flags().class_surj
    }
}

impl fmt::Display for ReductionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.alias())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown reduction kind {0:?}")]
pub struct UnknownKind(pub String);

impl FromStr for ReductionKind {
    type Err = UnknownKind;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let norm = s.trim().to_ascii_lowercase().replace('_', "-");
        let kind = match norm.as_str() {
            "reduction" | "red" => ReductionKind::Reduction,
            "embedding" | "emb" => ReductionKind::Embedding,
            "surjective-reduction" | "surjective" | "surj" => ReductionKind::SurjectiveReduction,
            "isomorphism" | "iso" => ReductionKind::Isomorphism,
            "invariant-reduction" | "inv-reduction" | "inv-red" => ReductionKind::InvariantReduction,
            "full-reduction" | "full-red" => ReductionKind::FullReduction,
            "invariant-embedding" | "inv-embedding" | "inv-emb" => ReductionKind::InvariantEmbedding,
            "full-embedding" | "full-emb" => ReductionKind::FullEmbedding,
            _ => return Err(UnknownKind(s.to_string())),
        };
        Ok(kind)
    }
}

pub fn kind_satisfied(kind: ReductionKind, flags: PropertyFlags) -> bool {
    flags.contains(kind.required_flags())
}

/// Classifies `phi` as a map from `E`'s ground set to `F`'s.
pub fn classify_map(e: &FiniteEqRel, f: &FiniteEqRel, phi: &MapWitness) -> Result<PropertyFlags, RelError> {
    if phi.domain_size() != e.ground_size() {
        return Err(RelError::DomainMismatch { expected: e.ground_size(), got: phi.domain_size() });
    }
    if let Some((x, &t)) = phi.targets().iter().enumerate().find(|(_, &t)| t >= f.ground_size()) {
        return Err(RelError::TargetOutOfRange { element: x, target: t, ground: f.ground_size() });
    }
    // Induced class map; a second, different value for the same E-class
    // means phi splits that class.
    let mut induced: Vec<Option<(usize, usize)>> = vec![None; e.num_classes()];
    for x in 0..e.ground_size() {
        let fx = phi.apply(x);
        let slot = &mut induced[e.class_of(x)];
        match *slot {
            None => *slot = Some((x, fx)),
            Some((x0, fx0)) => {
                if !f.equivalent(fx0, fx) {
                    return Err(RelError::NotAHomomorphism { x: x0, x_prime: x, fx: fx0, fx_prime: fx });
                }
            }
        }
    }
    let class_map: Vec<usize> = induced.iter().map(|slot| f.class_of(slot.expect("classes are nonempty").1)).collect();

    let mut hit = vec![false; f.ground_size()];
    let mut inj = true;
    for &t in phi.targets() {
        if std::mem::replace(&mut hit[t], true) {
            inj = false;
        }
    }
    let surj = hit.iter().all(|&h| h);

    let mut class_hit = vec![false; f.num_classes()];
    let mut class_inj = true;
    for &c in &class_map {
        if std::mem::replace(&mut class_hit[c], true) {
            class_inj = false;
        }
    }
    let class_surj = class_hit.iter().all(|&h| h);
    let range_invariant = (0..f.ground_size()).all(|y| hit[y] || !class_hit[f.class_of(y)]);

    Ok(PropertyFlags { inj, surj, class_inj, class_surj, range_invariant })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn rel(classes: &[usize]) -> FiniteEqRel {
        FiniteEqRel::from_class_of(classes.to_vec()).unwrap()
    }

    fn prof(s: &str) -> SizeProfile {
        s.parse().unwrap()
    }

    #[test]
    fn canonical_profile_examples() {
        assert!(canonical_profile(&rel(&[])).is_empty());
        let p = canonical_profile(&FiniteEqRel::from_profile(&prof("<1,0,1>")));
        assert_eq!(p.counts().iter().map(|(&a, &b)| (a, b)).collect::<Vec<_>>(), vec![(1, 1), (3, 1)]);
        let q = canonical_profile(&rel(&[0, 0, 1]));
        assert_eq!(q, SizeProfile::from_class_sizes([2, 1]).unwrap());
    }

    #[test]
    fn profile_counts_examples() {
        let p = prof("<1,0,1>");
        assert_eq!(profile_counts(&p, 3).unwrap(), ProfileCounts { eq: 1, leq: 2, geq: 1 });
        assert_eq!(profile_counts(&p, 2).unwrap(), ProfileCounts { eq: 0, leq: 1, geq: 1 });
        assert_eq!(profile_counts(&prof("<0,2>"), 1).unwrap(), ProfileCounts { eq: 0, leq: 0, geq: 2 });
        assert_eq!(profile_counts(&p, 0), Err(RelError::ZeroKappa));
    }

    #[test]
    fn classify_examples() {
        let two = rel(&[0, 1]);
        let one = rel(&[0, 0]);
        let id = MapWitness::new(vec![0, 1]);
        assert_eq!(classify_map(&two, &two, &id).unwrap(), PropertyFlags::all());
        let flags = classify_map(&two, &one, &id).unwrap();
        assert_eq!(
            flags,
            PropertyFlags { inj: true, surj: true, class_inj: false, class_surj: true, range_invariant: true }
        );
        assert!(matches!(classify_map(&one, &two, &id), Err(RelError::NotAHomomorphism { .. })));
    }

    #[test]
    fn classify_rejects_malformed_maps() {
        let two = rel(&[0, 1]);
        assert!(matches!(classify_map(&two, &two, &MapWitness::new(vec![0])), Err(RelError::DomainMismatch { .. })));
        assert!(matches!(
            classify_map(&two, &two, &MapWitness::new(vec![0, 2])),
            Err(RelError::TargetOutOfRange { .. })
        ));
    }

    #[test]
    fn empty_relation_maps() {
        let empty = rel(&[]);
        let flags = classify_map(&empty, &empty, &MapWitness::new(vec![])).unwrap();
        assert_eq!(flags, PropertyFlags::all());
        let flags = classify_map(&empty, &rel(&[0]), &MapWitness::new(vec![])).unwrap();
        assert!(flags.inj && flags.class_inj && flags.range_invariant);
        assert!(!flags.surj && !flags.class_surj);
    }

    #[test]
    fn kind_satisfied_examples() {
        let only_iii = PropertyFlags { class_inj: true, ..Default::default() };
        assert!(kind_satisfied(ReductionKind::Reduction, only_iii));
        let no_ii = PropertyFlags { surj: false, ..PropertyFlags::all() };
        assert!(!kind_satisfied(ReductionKind::SurjectiveReduction, no_ii));
        assert!(kind_satisfied(ReductionKind::FullEmbedding, PropertyFlags::all()));
        for k in ReductionKind::ALL {
            assert!(kind_satisfied(k, PropertyFlags::all()));
            assert!(k.required_flags().class_inj);
        }
    }

    #[test]
    fn malformed_relations_rejected() {
        assert!(matches!(FiniteEqRel::from_class_of(vec![0, 2]), Err(RelError::EmptyClass { missing: 1, .. })));
        assert_eq!(FiniteEqRel::from_class_of(vec![]).unwrap().num_classes(), 0);
    }

    #[test]
    fn parse_compact_and_json() {
        assert_eq!(prof("<1,0,1>"), prof(r#"{"classes":[3,1]}"#));
        assert_eq!(prof("<>"), SizeProfile::empty());
        assert_eq!(prof(" < 0 , 2 > "), SizeProfile::from_class_sizes([2, 2]).unwrap());
        assert_eq!(prof("<0,0>"), SizeProfile::empty());
        match "<1,x>".parse::<SizeProfile>() {
            Err(RelError::Parse { position, token, .. }) => {
                assert_eq!(position, 3);
                assert_eq!(token, "x");
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!("<1,2".parse::<SizeProfile>(), Err(RelError::Parse { position: 4, .. })));
        assert!(r#"{"classes":[0]}"#.parse::<SizeProfile>().is_err());
        assert!("[1,2]".parse::<SizeProfile>().is_err());
    }

    #[test]
    fn parse_map() {
        assert_eq!("0, 2,1".parse::<MapWitness>().unwrap().targets(), &[0, 2, 1]);
        assert_eq!("[3]".parse::<MapWitness>().unwrap().targets(), &[3]);
        assert!(matches!("0,a".parse::<MapWitness>(), Err(RelError::Parse { position: 2, .. })));
    }

    #[test]
    fn kind_aliases_round_trip() {
        for k in ReductionKind::ALL {
            assert_eq!(k.alias().parse::<ReductionKind>().unwrap(), k);
        }
        assert_eq!("inv-embedding".parse::<ReductionKind>().unwrap(), ReductionKind::InvariantEmbedding);
        assert!("bogus".parse::<ReductionKind>().is_err());
    }

    fn arb_class_of() -> impl Strategy<Value = Vec<usize>> {
        proptest::collection::vec(0usize..5, 0..8).prop_map(|raw| {
            // relabel to a contiguous range
            let mut seen = Vec::new();
            raw.iter()
                .map(|c| match seen.iter().position(|s| s == c) {
                    Some(i) => i,
                    None => {
                        seen.push(*c);
                        seen.len() - 1
                    }
                })
                .collect()
        })
    }

    proptest! {
        #[test]
        fn surj_iff_class_surj_and_invariant(e in arb_class_of(), f in arb_class_of(), seed in any::<u64>()) {
            let e = FiniteEqRel::from_class_of(e).unwrap();
            let f = FiniteEqRel::from_class_of(f).unwrap();
            prop_assume!(f.ground_size() > 0);
            let mut s = seed;
            let target = (0..e.ground_size()).map(|_| {
                s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                (s >> 33) as usize % f.ground_size()
            }).collect();
            if let Ok(flags) = classify_map(&e, &f, &MapWitness::new(target)) {
                prop_assert!(flags.is_consistent());
            }
        }

        #[test]
        fn profile_invariant_under_relabeling(classes in arb_class_of(), rot in 0usize..8) {
            let e = FiniteEqRel::from_class_of(classes.clone()).unwrap();
            let k = e.num_classes().max(1);
            let relabeled: Vec<usize> = classes.iter().map(|c| (c + rot) % k).collect();
            let mut permuted = relabeled.clone();
            let len = permuted.len().max(1);
            permuted.rotate_left(rot % len);
            let g = FiniteEqRel::from_class_of(permuted).unwrap();
            prop_assert_eq!(canonical_profile(&e), canonical_profile(&g));
        }

        #[test]
        fn leq_plus_geq_next_is_total(sizes in proptest::collection::vec(1usize..6, 0..8), kappa in 1usize..8) {
            let p = SizeProfile::from_class_sizes(sizes).unwrap();
            let a = profile_counts(&p, kappa).unwrap();
            let b = profile_counts(&p, kappa + 1).unwrap();
            prop_assert_eq!(a.leq + b.geq, p.num_classes());
        }

        #[test]
        fn compact_display_reparses(sizes in proptest::collection::vec(1usize..6, 0..8)) {
            let p = SizeProfile::from_class_sizes(sizes).unwrap();
            prop_assert_eq!(p.to_string().parse::<SizeProfile>().unwrap(), p.clone());
            prop_assert_eq!(canonical_profile(&FiniteEqRel::from_profile(&p)), p);
        }
    }
}
