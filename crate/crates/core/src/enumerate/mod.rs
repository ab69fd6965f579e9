//! Vertex slice sequences: direction generators, sweep-based reports, the
//! exhaustive partition oracle and connectivity gap certificates.

mod certificate;
mod directions;
mod oracle;
mod sweep;

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{Hyperplane, RVector};
use crate::polytope::VPolytope;
use crate::slicer::cv;

pub use certificate::{gap_certificate, CertificateOutcome, GapCertificate, PairPaths};
pub use directions::{
    facet_normal_directions, positive_grid_directions, subset_normal_directions, DirectionSet,
    DEFAULT_SUBSET_BUDGET,
};
pub use oracle::{partition_oracle, OracleCaps, OracleResult, PartitionCounts};
pub use sweep::{hypercube_grid_sweep, vss_by_sweep, GridSweep, DEFAULT_MAX_BOUND};

/// Where directions come from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum DirectionGenerator {
    /// Normals of vertex-spanned hyperplanes; with `pairs`, also sums and
    /// differences of two such normals.
    SubsetNormals {
        budget: usize,
        #[serde(default = "yes")]
        pairs: bool,
    },
    /// Hypercubes only. `bound: None` grows the grid until two consecutive
    /// bounds realize the same set (up to `max_bound`).
    PositiveGrid {
        bound: Option<usize>,
        max_bound: usize,
    },
    FacetNormals,
    ExplicitList {
        directions: Vec<RVector>,
    },
}

impl DirectionGenerator {
    pub fn subset_normals() -> Self {
        DirectionGenerator::SubsetNormals {
            budget: DEFAULT_SUBSET_BUDGET,
            pairs: true,
        }
    }

    pub fn grid_stabilized() -> Self {
        DirectionGenerator::PositiveGrid {
            bound: None,
            max_bound: DEFAULT_MAX_BOUND,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            DirectionGenerator::SubsetNormals { .. } => "subset-normals",
            DirectionGenerator::PositiveGrid { .. } => "positive-grid",
            DirectionGenerator::FacetNormals => "facet-normals",
            DirectionGenerator::ExplicitList { .. } => "explicit-list",
        }
    }
}

fn yes() -> bool {
    true
}

/// Which polytope a report belongs to.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolytopeRef {
    pub name: String,
    pub hash: String,
}

impl PolytopeRef {
    pub fn of(p: &VPolytope) -> Self {
        PolytopeRef {
            name: p.name().to_string(),
            hash: p.content_hash(),
        }
    }
}

/// How a report's counts were produced.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    /// `subset-normals`, `positive-grid`, `facet-normals`, `explicit-list` or `oracle`.
    pub kind: String,
    /// Directions swept (0 for the oracle).
    pub directions: usize,
    pub truncated: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub budget: Option<usize>,
    /// Grid bound used; for stabilized runs the smallest bound `B` with
    /// `realized(B) == realized(B + 1)`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bound: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub stabilized: Option<bool>,
    /// Sign vectors visited by the oracle.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sign_vectors: Option<usize>,
}

impl Provenance {
    pub(crate) fn new(kind: &str, directions: usize) -> Self {
        Provenance {
            kind: kind.to_string(),
            directions,
            truncated: false,
            budget: None,
            bound: None,
            stabilized: None,
            sign_vectors: None,
        }
    }
}

/// Realized slice counts of a polytope with a replayable witness for each.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VSSReport {
    pub polytope: PolytopeRef,
    pub realized: BTreeSet<usize>,
    pub nu: usize,
    pub gaps: BTreeSet<usize>,
    pub witnesses: BTreeMap<usize, Hyperplane>,
    pub generator: Provenance,
    /// True only for oracle reports.
    pub exhaustive: bool,
}

impl VSSReport {
    pub fn new(
        p: &VPolytope,
        witnesses: BTreeMap<usize, Hyperplane>,
        generator: Provenance,
        exhaustive: bool,
    ) -> Self {
        let realized: BTreeSet<usize> = witnesses.keys().copied().collect();
        let nu = realized.last().copied().unwrap_or(0);
        let gaps = gaps_of(&realized);
        VSSReport {
            polytope: PolytopeRef::of(p),
            realized,
            nu,
            gaps,
            witnesses,
            generator,
            exhaustive,
        }
    }

    /// Checks the report's invariants and replays every witness against `p`.
    pub fn replay(&self, p: &VPolytope) -> Result<()> {
        if self.polytope.hash != p.content_hash() {
            return Err(Error::InvalidInput(format!(
                "report belongs to {} ({}), not this polytope",
                self.polytope.name, self.polytope.hash
            )));
        }
        let keys: BTreeSet<usize> = self.witnesses.keys().copied().collect();
        if keys != self.realized
            || self.realized.last().copied().unwrap_or(0) != self.nu
            || self.gaps != gaps_of(&self.realized)
        {
            return Err(Error::InvalidInput("report fields are inconsistent".into()));
        }
        for (&count, h) in &self.witnesses {
            let got = cv(p, h)?;
            if got != count {
                return Err(Error::InvalidInput(format!(
                    "witness {h:?} for {count} replays to {got}"
                )));
            }
        }
        Ok(())
    }

    /// `(count, direction, offset)` rows for CSV export.
    pub fn witness_rows(&self) -> Vec<(usize, String, String)> {
        self.witnesses
            .iter()
            .map(|(&c, h)| (c, h.normal().to_string(), h.offset().to_string()))
            .collect()
    }
}

fn gaps_of(realized: &BTreeSet<usize>) -> BTreeSet<usize> {
    let nu = realized.last().copied().unwrap_or(0);
    (1..=nu).filter(|m| !realized.contains(m)).collect()
}

/// `[nu] \ realized` for a report.
pub fn gaps(report: &VSSReport) -> BTreeSet<usize> {
    gaps_of(&report.realized)
}
