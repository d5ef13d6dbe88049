use serde::{Deserialize, Serialize};

use super::enumerate::{count_up_to, walk_evaluated};
use super::{probe_order, GroupOps, TupleSpec, Word, WordError};

/// Powers probed before an element is recorded as having infinite order.
pub const ORDER_PROBE_BOUND: u64 = 24;

/// Default cap on the number of words `free_up_to` will evaluate.
pub const DEFAULT_WORD_CAP: u128 = 20_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FreenessStatus {
    /// No nonempty reduced-on-tuple word of length `≤ L` is trivial.
    FreeUpTo(usize),
    /// The first trivial word in length-lexicographic order.
    Relation(Word),
}

/// Bounded evidence about freeness of a tuple. `FreeUpTo` is a necessary condition only.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreenessCertificate {
    pub tuple_id: String,
    pub length_bound: usize,
    pub spec: TupleSpec,
    pub status: FreenessStatus,
}

#[derive(Serialize, Deserialize)]
struct CertificateJson {
    tuple_id: String,
    #[serde(rename = "L")]
    length_bound: usize,
    orders: Vec<u64>,
    status: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    relation: Option<Word>,
}

impl Serialize for FreenessCertificate {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let (status, relation) = match &self.status {
            FreenessStatus::FreeUpTo(_) => ("free_up_to", None),
            FreenessStatus::Relation(w) => ("relation", Some(w.clone())),
        };
        CertificateJson {
            tuple_id: self.tuple_id.clone(),
            length_bound: self.length_bound,
            orders: self.spec.orders.clone(),
            status: status.to_string(),
            relation,
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for FreenessCertificate {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw = CertificateJson::deserialize(deserializer)?;
        let status = match (raw.status.as_str(), raw.relation) {
            ("free_up_to", None) => FreenessStatus::FreeUpTo(raw.length_bound),
            ("relation", Some(w)) => FreenessStatus::Relation(w),
            (s, _) => return Err(serde::de::Error::custom(format!("bad certificate status {s:?}"))),
        };
        Ok(FreenessCertificate {
            tuple_id: raw.tuple_id,
            length_bound: raw.length_bound,
            spec: TupleSpec { orders: raw.orders },
            status,
        })
    }
}

impl FreenessCertificate {
    pub fn is_free(&self) -> bool {
        matches!(self.status, FreenessStatus::FreeUpTo(_))
    }

    pub fn relation(&self) -> Option<&Word> {
        match &self.status {
            FreenessStatus::Relation(w) => Some(w),
            FreenessStatus::FreeUpTo(_) => None,
        }
    }
}

/// Options for [`free_up_to`].
#[derive(Clone, Debug)]
pub struct FreenessOptions {
    pub tuple_id: String,
    /// Element orders; probed up to [`ORDER_PROBE_BOUND`] when absent.
    pub orders: Option<TupleSpec>,
    pub word_cap: u128,
}

impl Default for FreenessOptions {
    fn default() -> Self {
        FreenessOptions { tuple_id: "tuple".into(), orders: None, word_cap: DEFAULT_WORD_CAP }
    }
}

/// Evaluates every word of length `≤ length_bound` reduced on the tuple and reports the
/// first one (shortest, then lexicographically first) that evaluates to the identity.
pub fn free_up_to<G: GroupOps>(
    group: &G,
    tuple: &[G::Elem],
    length_bound: usize,
    options: &FreenessOptions,
) -> Result<FreenessCertificate, WordError> {
    if length_bound == 0 {
        return Err(WordError::ZeroLength);
    }
    let spec = match &options.orders {
        Some(s) if s.len() != tuple.len() => {
            return Err(WordError::VariableOutOfRange { var: tuple.len(), tuple_len: s.len() })
        }
        Some(s) => s.clone(),
        None => TupleSpec { orders: tuple.iter().map(|g| probe_order(group, g, ORDER_PROBE_BOUND)).collect() },
    };
    let count = count_up_to(&spec, length_bound);
    if count > options.word_cap {
        return Err(WordError::Budget { words: count, cap: options.word_cap });
    }
    // preorder visits each length in lexicographic order, so the first hit at a given
    // length is the best at that length; after a hit only shorter words can improve it
    let mut best: Option<Word> = None;
    let mut limit = length_bound;
    walk_evaluated(group, tuple, &spec, length_bound, |letters, value| {
        if letters.len() > limit {
            return false;
        }
        if group.is_identity(value) {
            if best.as_ref().is_none_or(|b| letters.len() < b.len()) {
                best = Some(Word::reduce(letters.iter().copied()));
                limit = letters.len().saturating_sub(1);
            }
            return false;
        }
        letters.len() < limit
    });
    let status = match best {
        Some(w) => FreenessStatus::Relation(w),
        None => FreenessStatus::FreeUpTo(length_bound),
    };
    Ok(FreenessCertificate { tuple_id: options.tuple_id.clone(), length_bound, spec, status })
}
