//! The dependency-type lattice.
//!
//! The five lineage relationship kinds form a chain ordered by strength:
//!
//! ```text
//! FlowsFrom < DependsOn < DerivedFrom < ValueOf < SameAs
//! ```
//!
//! Composition along a chain of program blocks keeps the weakest link, so
//! [`compose`] is the meet of the chain (its minimum). `SameAs` is the
//! identity of composition and `FlowsFrom` absorbs everything.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

/// One of the five ordered lineage relationship kinds.
///
/// The derived `Ord` follows declaration order, which is the strength order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum DependencyType {
    /// The input only triggers the invocation; no control or data dependence.
    FlowsFrom,
    /// Control dependence without data dependence.
    DependsOn,
    /// Output values are computed from input values.
    DerivedFrom,
    /// Output is a value copy of the input under a fresh identity.
    ValueOf,
    /// Output items are the very items received as input.
    SameAs,
}

impl DependencyType {
    /// All kinds, weakest first.
    pub const ALL: [DependencyType; 5] = [
        DependencyType::FlowsFrom,
        DependencyType::DependsOn,
        DependencyType::DerivedFrom,
        DependencyType::ValueOf,
        DependencyType::SameAs,
    ];

    pub const WEAKEST: DependencyType = DependencyType::FlowsFrom;
    pub const STRONGEST: DependencyType = DependencyType::SameAs;

    /// Position in the strength order, `FlowsFrom = 0` through `SameAs = 4`.
    pub fn rank(self) -> u8 {
        self as u8
    }

    pub fn from_rank(rank: u8) -> Option<DependencyType> {
        Self::ALL.get(rank as usize).copied()
    }

    pub fn name(self) -> &'static str {
        match self {
            DependencyType::FlowsFrom => "FlowsFrom",
            DependencyType::DependsOn => "DependsOn",
            DependencyType::DerivedFrom => "DerivedFrom",
            DependencyType::ValueOf => "ValueOf",
            DependencyType::SameAs => "SameAs",
        }
    }

    /// `self ⪯ other`.
    pub fn is_weaker_or_equal(self, other: DependencyType) -> bool {
        weaker(self, other)
    }

    /// Weakest-link composition with `other`.
    pub fn compose(self, other: DependencyType) -> DependencyType {
        compose(self, other)
    }
}

impl fmt::Display for DependencyType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(self.name())
    }
}

/// True iff `t1 ⪯ t2` (reflexive).
pub fn weaker(t1: DependencyType, t2: DependencyType) -> bool {
    t1.rank() <= t2.rank()
}

/// The weaker of the two types.
pub fn compose(t1: DependencyType, t2: DependencyType) -> DependencyType {
    if weaker(t1, t2) {
        t1
    } else {
        t2
    }
}

/// What a user may assert about an (input, output) pair: a dependency type,
/// or that the two edges are not connected by any dataflow path at all.
///
/// `NotFlowsFrom` is outside the lattice. It takes part in no comparison and
/// no composition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum AssertionType {
    Dependency(DependencyType),
    NotFlowsFrom,
}

impl AssertionType {
    /// Every name accepted by [`FromStr`], in canonical order.
    pub const NAMES: [&'static str; 6] = [
        "FlowsFrom",
        "DependsOn",
        "DerivedFrom",
        "ValueOf",
        "SameAs",
        "NotFlowsFrom",
    ];

    pub fn dependency(self) -> Option<DependencyType> {
        match self {
            AssertionType::Dependency(t) => Some(t),
            AssertionType::NotFlowsFrom => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            AssertionType::Dependency(t) => t.name(),
            AssertionType::NotFlowsFrom => "NotFlowsFrom",
        }
    }
}

impl From<DependencyType> for AssertionType {
    fn from(t: DependencyType) -> Self {
        AssertionType::Dependency(t)
    }
}

impl fmt::Display for AssertionType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown dependency type '{0}'")]
pub struct UnknownTypeName(pub String);

impl FromStr for AssertionType {
    type Err = UnknownTypeName;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s == "NotFlowsFrom" {
            return Ok(AssertionType::NotFlowsFrom);
        }
        s.parse().map(AssertionType::Dependency)
    }
}

impl FromStr for DependencyType {
    type Err = UnknownTypeName;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        DependencyType::ALL
            .into_iter()
            .find(|t| t.name() == s)
            .ok_or_else(|| UnknownTypeName(s.to_string()))
    }
}
