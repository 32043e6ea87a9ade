//! Integer invariants tagged with how far they can be trusted.

use std::fmt;

/// How a value read off a truncated model relates to the untruncated ring.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Status {
    /// Backed by a Nakayama certificate: the truncation does not affect the value.
    Exact,
    /// The same value was obtained at two truncation orders.
    TwoLevelStable,
    Uncertified,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Exact => "exact",
            Status::TwoLevelStable => "two-level-stable",
            Status::Uncertified => "uncertified",
        }
    }

    /// The weaker of two statuses.
    pub fn meet(self, other: Status) -> Status {
        self.max(other)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Value {
    Finite(u64),
    /// The quantity is not finite (e.g. the length of a non-m-primary quotient).
    Infinite,
    /// Not settled within the searched range; the true value is at least this.
    AtLeast(u64),
}

impl Value {
    pub fn finite(self) -> Option<u64> {
        match self {
            Value::Finite(v) => Some(v),
            _ => None,
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Finite(v) => write!(f, "{v}"),
            Value::Infinite => write!(f, "not finite"),
            Value::AtLeast(v) => write!(f, ">={v}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Flag {
    /// Two-level protocol run with a zero gap.
    WeakCertificate,
    /// Computed over a finite window; a lower bound for the true invariant.
    WindowLowerBound,
    /// Degenerate input (unit element, colon by zero).
    Degenerate,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CertifiedValue {
    pub value: Value,
    pub status: Status,
    /// Raw value observed at each truncation order used.
    pub readings: Vec<(usize, Value)>,
    pub flags: Vec<Flag>,
}

impl CertifiedValue {
    pub fn exact(value: u64, order: usize) -> Self {
        Self {
            value: Value::Finite(value),
            status: Status::Exact,
            readings: vec![(order, Value::Finite(value))],
            flags: Vec::new(),
        }
    }

    pub fn uncertified(value: Value, readings: Vec<(usize, Value)>) -> Self {
        Self {
            value,
            status: Status::Uncertified,
            readings,
            flags: Vec::new(),
        }
    }

    /// Two-level protocol: the value at the first level, certified only when
    /// every level agrees. A single level or a zero gap is flagged as weak.
    pub fn from_levels(readings: Vec<(usize, Value)>) -> Self {
        let value = readings[0].1;
        let stable = readings.iter().all(|(_, v)| *v == value);
        let mut flags = Vec::new();
        let distinct: std::collections::BTreeSet<usize> = readings.iter().map(|(l, _)| *l).collect();
        if distinct.len() < 2 {
            flags.push(Flag::WeakCertificate);
        }
        Self {
            value,
            status: if stable {
                Status::TwoLevelStable
            } else {
                Status::Uncertified
            },
            readings,
            flags,
        }
    }

    pub fn with_flag(mut self, flag: Flag) -> Self {
        if !self.flags.contains(&flag) {
            self.flags.push(flag);
        }
        self
    }

    pub fn finite(&self) -> Option<u64> {
        self.value.finite()
    }

    pub fn is_certified(&self) -> bool {
        self.status != Status::Uncertified
    }

    pub fn has_flag(&self, flag: Flag) -> bool {
        self.flags.contains(&flag)
    }

    pub fn levels(&self) -> Vec<usize> {
        self.readings.iter().map(|(l, _)| *l).collect()
    }

    /// Certified finite value, if any.
    pub fn certified_finite(&self) -> Option<u64> {
        if self.is_certified() {
            self.finite()
        } else {
            None
        }
    }
}

impl fmt::Display for CertifiedValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let levels: Vec<String> = self.readings.iter().map(|(l, v)| format!("{v}@{l}")).collect();
        write!(f, "{} [{}; {}]", self.value, self.status.as_str(), levels.join(","))
    }
}
