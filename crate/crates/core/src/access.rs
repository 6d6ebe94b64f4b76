//! Participants, access structures and the monotone closure transform.
//!
//! Subsets of participants are bitmasks over the canonical (sorted by id)
//! participant order, so an instance supports at most 64 participants.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub const MAX_PARTICIPANTS: usize = 64;

/// Default ceiling on the size of a monotone closure.
pub const DEFAULT_CLOSURE_CAP: usize = 1 << 20;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Participant(String);

impl Participant {
    pub fn id(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Participant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for Participant {
    fn from(s: &str) -> Self {
        Participant(s.to_owned())
    }
}

/// A set of participants, as a bitmask over the canonical order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Coalition(u64);

impl Coalition {
    pub const EMPTY: Coalition = Coalition(0);

    pub fn from_bits(bits: u64) -> Self {
        Coalition(bits)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn contains(self, index: usize) -> bool {
        index < 64 && self.0 & (1 << index) != 0
    }

    pub fn with(self, index: usize) -> Self {
        Coalition(self.0 | (1 << index))
    }

    pub fn is_subset_of(self, other: Coalition) -> bool {
        self.0 & !other.0 == 0
    }

    /// Indices of members in ascending order.
    pub fn members(self) -> impl Iterator<Item = usize> {
        let bits = self.0;
        (0..64).filter(move |i| bits & (1u64 << i) != 0)
    }
}

/// The JSON form of an access structure.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AccessStructureFile {
    pub participants: Vec<String>,
    pub authorized_sets: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    NoParticipants,
    TooManyParticipants(usize),
    EmptyParticipantId,
    DuplicateParticipant(String),
    EmptyStructure,
    EmptyAuthorizedSet { index: usize },
    UnknownParticipant { index: usize, id: String },
    DuplicateSet { index: usize, first: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NoParticipants => write!(f, "no participants"),
            Violation::TooManyParticipants(n) => {
                write!(f, "{n} participants exceeds the limit of {MAX_PARTICIPANTS}")
            }
            Violation::EmptyParticipantId => write!(f, "participant id is empty"),
            Violation::DuplicateParticipant(id) => write!(f, "participant {id:?} listed twice"),
            Violation::EmptyStructure => write!(
                f,
                "empty access structure: a degree-0 public polynomial would publish the secret"
            ),
            Violation::EmptyAuthorizedSet { index } => {
                write!(f, "authorized set #{index} is empty")
            }
            Violation::UnknownParticipant { index, id } => {
                write!(f, "authorized set #{index} names unknown participant {id:?}")
            }
            Violation::DuplicateSet { index, first } => {
                write!(f, "authorized set #{index} duplicates set #{first}")
            }
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_valid() {
            return write!(f, "valid");
        }
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AccessError {
    #[error("invalid access structure: {0}")]
    Invalid(ValidationReport),
    #[error("closure too large: more than {cap} authorized sets")]
    ClosureTooLarge { cap: usize },
    #[error("unknown participant {0:?}")]
    UnknownParticipant(String),
}

/// Checks a raw access structure description and lists every problem found.
pub fn validate(file: &AccessStructureFile) -> ValidationReport {
    validate_parts(file).0
}

fn validate_parts(file: &AccessStructureFile) -> (ValidationReport, Vec<Participant>, Vec<Coalition>) {
    let mut violations = Vec::new();
    let mut ids: Vec<&str> = file.participants.iter().map(String::as_str).collect();
    ids.sort_unstable();
    if ids.is_empty() {
        violations.push(Violation::NoParticipants);
    }
    if ids.len() > MAX_PARTICIPANTS {
        violations.push(Violation::TooManyParticipants(ids.len()));
    }
    if ids.iter().any(|id| id.is_empty()) {
        violations.push(Violation::EmptyParticipantId);
    }
    for w in ids.windows(2) {
        if w[0] == w[1] {
            violations.push(Violation::DuplicateParticipant(w[0].to_owned()));
        }
    }
    ids.dedup();
    let index: HashMap<&str, usize> = ids.iter().enumerate().map(|(i, id)| (*id, i)).collect();

    if file.authorized_sets.is_empty() {
        violations.push(Violation::EmptyStructure);
    }
    let mut seen: HashMap<u64, usize> = HashMap::new();
    let mut sets = Vec::new();
    for (i, set) in file.authorized_sets.iter().enumerate() {
        if set.is_empty() {
            violations.push(Violation::EmptyAuthorizedSet { index: i });
            continue;
        }
        let mut mask = Coalition::EMPTY;
        let mut known = true;
        for id in set {
            match index.get(id.as_str()) {
                Some(&j) if j < MAX_PARTICIPANTS => mask = mask.with(j),
                _ => {
                    violations.push(Violation::UnknownParticipant {
                        index: i,
                        id: id.clone(),
                    });
                    known = false;
                }
            }
        }
        if !known {
            continue;
        }
        if let Some(&first) = seen.get(&mask.bits()) {
            violations.push(Violation::DuplicateSet { index: i, first });
            continue;
        }
        seen.insert(mask.bits(), i);
        sets.push(mask);
    }
    sets.sort_unstable();
    let participants = ids.into_iter().map(Participant::from).collect();
    (ValidationReport { violations }, participants, sets)
}

/// A validated access structure γ over a participant universe.
///
/// Authorized sets are kept in ascending bitmask order; that order fixes the
/// root order of the public polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AccessStructure {
    participants: Vec<Participant>,
    sets: Vec<Coalition>,
}

impl AccessStructure {
    pub fn from_file(file: &AccessStructureFile) -> Result<Self, AccessError> {
        let (report, participants, sets) = validate_parts(file);
        if !report.is_valid() {
            return Err(AccessError::Invalid(report));
        }
        Ok(AccessStructure { participants, sets })
    }

    pub fn new<P, S, I>(participants: P, sets: S) -> Result<Self, AccessError>
    where
        P: IntoIterator,
        P::Item: Into<String>,
        S: IntoIterator<Item = I>,
        I: IntoIterator,
        I::Item: Into<String>,
    {
        Self::from_file(&AccessStructureFile {
            participants: participants.into_iter().map(Into::into).collect(),
            authorized_sets: sets
                .into_iter()
                .map(|s| s.into_iter().map(Into::into).collect())
                .collect(),
        })
    }

    /// Builds from bitmasks over `participants` (which are sorted here).
    pub fn from_masks<P>(participants: P, masks: &[u64]) -> Result<Self, AccessError>
    where
        P: IntoIterator,
        P::Item: Into<String>,
    {
        let mut ids: Vec<String> = participants.into_iter().map(Into::into).collect();
        ids.sort();
        let sets = masks
            .iter()
            .map(|&m| {
                Coalition(m)
                    .members()
                    .map(|i| ids.get(i).cloned().unwrap_or_default())
                    .collect()
            })
            .collect();
        Self::from_file(&AccessStructureFile {
            participants: ids,
            authorized_sets: sets,
        })
    }

    pub fn to_file(&self) -> AccessStructureFile {
        AccessStructureFile {
            participants: self.participants.iter().map(|p| p.0.clone()).collect(),
            authorized_sets: self.sets.iter().map(|&s| self.member_ids(s)).collect(),
        }
    }

    pub fn participants(&self) -> &[Participant] {
        &self.participants
    }

    pub fn n(&self) -> usize {
        self.participants.len()
    }

    /// Number of authorized sets, i.e. the degree of the public polynomial.
    pub fn k(&self) -> usize {
        self.sets.len()
    }

    pub fn authorized_sets(&self) -> &[Coalition] {
        &self.sets
    }

    pub fn is_authorized(&self, c: Coalition) -> bool {
        self.sets.binary_search(&c).is_ok()
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.participants.binary_search_by(|p| p.id().cmp(id)).ok()
    }

    pub fn coalition<'a, I>(&self, ids: I) -> Result<Coalition, AccessError>
    where
        I: IntoIterator<Item = &'a str>,
    {
        ids.into_iter().try_fold(Coalition::EMPTY, |c, id| {
            self.index_of(id)
                .map(|i| c.with(i))
                .ok_or_else(|| AccessError::UnknownParticipant(id.to_owned()))
        })
    }

    pub fn member_ids(&self, c: Coalition) -> Vec<String> {
        c.members()
            .filter_map(|i| self.participants.get(i))
            .map(|p| p.0.clone())
            .collect()
    }

    /// Bitmask with every participant set.
    pub fn universe(&self) -> Coalition {
        match self.n() {
            64 => Coalition(u64::MAX),
            n => Coalition((1u64 << n) - 1),
        }
    }

    /// A′ = A ∪ {strict supersets of members of A}, capped at
    /// [`DEFAULT_CLOSURE_CAP`] sets.
    pub fn monotone_closure(&self) -> Result<AccessStructure, AccessError> {
        self.monotone_closure_with_cap(DEFAULT_CLOSURE_CAP)
    }

    pub fn monotone_closure_with_cap(&self, cap: usize) -> Result<AccessStructure, AccessError> {
        let n = self.n();
        let mut closed: BTreeSet<u64> = BTreeSet::new();
        let mut frontier: Vec<u64> = Vec::new();
        for s in &self.sets {
            if closed.insert(s.0) {
                frontier.push(s.0);
            }
        }
        if closed.len() > cap {
            return Err(AccessError::ClosureTooLarge { cap });
        }
        // every superset is reachable by adding one member at a time
        while let Some(s) = frontier.pop() {
            for i in 0..n {
                let bit = 1u64 << i;
                if s & bit == 0 && closed.insert(s | bit) {
                    if closed.len() > cap {
                        return Err(AccessError::ClosureTooLarge { cap });
                    }
                    frontier.push(s | bit);
                }
            }
        }
        Ok(AccessStructure {
            participants: self.participants.clone(),
            sets: closed.into_iter().map(Coalition).collect(),
        })
    }

    pub fn is_superset_closed(&self) -> bool {
        let n = self.n();
        self.sets.iter().all(|s| {
            (0..n).all(|i| s.contains(i) || self.is_authorized(s.with(i)))
        })
    }

    pub fn closure_growth_report(&self) -> Result<GrowthReport, AccessError> {
        self.closure_growth_report_with_cap(DEFAULT_CLOSURE_CAP)
    }

    pub fn closure_growth_report_with_cap(&self, cap: usize) -> Result<GrowthReport, AccessError> {
        let closed = self.monotone_closure_with_cap(cap)?;
        let n = self.n();
        let k = self.k();
        let union_bound = self
            .sets
            .iter()
            .map(|s| 2f64.powi((n - s.len()) as i32))
            .sum();
        Ok(GrowthReport {
            k_before: k,
            k_after: closed.k(),
            n,
            growth_estimate: k as f64 * 2f64.powi(n as i32 - k as i32),
            union_bound,
        })
    }
}

/// Size accounting for the monotone closure.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GrowthReport {
    pub k_before: usize,
    pub k_after: usize,
    pub n: usize,
    /// The asymptotic ceiling k·2^(n−k), evaluated without constants.
    pub growth_estimate: f64,
    /// Σ 2^(n−|s|) over authorized sets s: an exact upper bound on k_after.
    pub union_bound: f64,
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn abc(sets: &[&[&str]]) -> AccessStructure {
        AccessStructure::new(["A", "B", "C"], sets.iter().map(|s| s.iter().copied())).unwrap()
    }

    fn raw(participants: &[&str], sets: &[&[&str]]) -> AccessStructureFile {
        AccessStructureFile {
            participants: participants.iter().map(|s| s.to_string()).collect(),
            authorized_sets: sets
                .iter()
                .map(|s| s.iter().map(|x| x.to_string()).collect())
                .collect(),
        }
    }

    #[test]
    fn validation_examples() {
        assert!(validate(&raw(&["A", "B", "C"], &[&["A", "B"], &["B", "C"]])).is_valid());
        assert_eq!(
            validate(&raw(&["A", "B", "C"], &[&[]])).violations,
            vec![Violation::EmptyAuthorizedSet { index: 0 }]
        );
        let report = validate(&raw(&["A", "B", "C"], &[]));
        assert_eq!(report.violations, vec![Violation::EmptyStructure]);
        assert!(report.to_string().contains("empty access structure"));
    }

    #[test]
    fn validation_reports_every_violation() {
        let report = validate(&raw(
            &["B", "A", "A", ""],
            &[&["A", "Z"], &["A", "B"], &["B", "A"], &[]],
        ));
        assert_eq!(
            report.violations,
            vec![
                Violation::EmptyParticipantId,
                Violation::DuplicateParticipant("A".into()),
                Violation::UnknownParticipant { index: 0, id: "Z".into() },
                Violation::DuplicateSet { index: 2, first: 1 },
                Violation::EmptyAuthorizedSet { index: 3 },
            ]
        );
        assert!(matches!(
            AccessStructure::from_file(&raw(&["A"], &[])),
            Err(AccessError::Invalid(_))
        ));
    }

    #[test]
    fn canonical_order_is_sorted() {
        let s = AccessStructure::new(["C", "A", "B"], [vec!["C", "B"], vec!["B", "A"]]).unwrap();
        let file = s.to_file();
        assert_eq!(file.participants, ["A", "B", "C"]);
        assert_eq!(file.authorized_sets, [vec!["A", "B"], vec!["B", "C"]]);
        assert_eq!(s.authorized_sets(), &[Coalition(0b011), Coalition(0b110)]);
    }

    #[test]
    fn closure_examples() {
        let closed = abc(&[&["A", "B"]]).monotone_closure().unwrap();
        assert_eq!(
            closed.to_file().authorized_sets,
            [vec!["A", "B"], vec!["A", "B", "C"]]
        );
        let full = abc(&[&["A", "B", "C"]]);
        assert_eq!(full.monotone_closure().unwrap(), full);
    }

    #[test]
    fn growth_report_examples() {
        let r = abc(&[&["A", "B"]]).closure_growth_report().unwrap();
        assert_eq!((r.k_before, r.k_after, r.n), (1, 2, 3));
        let single = AccessStructure::new(["A"], [["A"]]).unwrap();
        let r = single.closure_growth_report().unwrap();
        assert_eq!((r.k_before, r.k_after, r.n), (1, 1, 1));
        let r = abc(&[&["A"], &["B"]]).closure_growth_report().unwrap();
        assert_eq!((r.k_before, r.k_after, r.n), (2, 6, 3));
        assert!(r.k_after as f64 <= r.union_bound);
    }

    #[test]
    fn closure_cap_is_enforced() {
        let ids: Vec<String> = (0..24).map(|i| format!("P{i:02}")).collect();
        let s = AccessStructure::new(ids.iter().cloned(), [vec![ids[0].clone()]]).unwrap();
        assert_eq!(
            s.monotone_closure_with_cap(1000),
            Err(AccessError::ClosureTooLarge { cap: 1000 })
        );
        // 2^23 supersets of {P00} exceeds the default cap
        assert_eq!(
            s.monotone_closure(),
            Err(AccessError::ClosureTooLarge { cap: DEFAULT_CLOSURE_CAP })
        );
    }

    #[test]
    fn sixty_four_participants_supported() {
        let ids: Vec<String> = (0..64).map(|i| format!("P{i:02}")).collect();
        let s = AccessStructure::new(ids.iter().cloned(), [ids.clone()]).unwrap();
        assert_eq!(s.universe().bits(), u64::MAX);
        assert_eq!(s.monotone_closure().unwrap().k(), 1);
        let too_many: Vec<String> = (0..65).map(|i| format!("P{i:02}")).collect();
        assert!(AccessStructure::new(too_many.iter().cloned(), [vec!["P00"]]).is_err());
    }

    // Definition-level closure: every subset of the universe that contains
    // some authorized set.
    fn brute_closure(s: &AccessStructure) -> Vec<Coalition> {
        (1u64..1 << s.n())
            .map(Coalition)
            .filter(|t| s.authorized_sets().iter().any(|a| a.is_subset_of(*t)))
            .collect()
    }

    fn arb_structure() -> impl Strategy<Value = AccessStructure> {
        (1usize..=8).prop_flat_map(|n| {
            prop::collection::btree_set(1u64..(1 << n), 1..6).prop_map(move |masks| {
                let ids: Vec<String> = (0..n).map(|i| format!("p{i}")).collect();
                let masks: Vec<u64> = masks.into_iter().collect();
                AccessStructure::from_masks(ids, &masks).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn closure_matches_definition(s in arb_structure()) {
            let closed = s.monotone_closure().unwrap();
            prop_assert_eq!(closed.authorized_sets(), &brute_closure(&s)[..]);
            prop_assert!(closed.is_superset_closed());
            prop_assert_eq!(closed.monotone_closure().unwrap(), closed.clone());
            for a in s.authorized_sets() {
                prop_assert!(closed.is_authorized(*a));
            }
        }

        #[test]
        fn file_round_trip(s in arb_structure()) {
            let json = serde_json::to_string(&s.to_file()).unwrap();
            let back: AccessStructureFile = serde_json::from_str(&json).unwrap();
            prop_assert_eq!(AccessStructure::from_file(&back).unwrap(), s);
        }
    }
}
