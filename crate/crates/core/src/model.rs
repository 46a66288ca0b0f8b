//! City-instance data model: demand blocks, amenity sites, and the
//! block-to-site distance matrix.
//!
//! Instances are immutable after construction and safe to share read-only
//! across parallel workers.

use std::fmt;

use crate::error::{Error, Result};

/// WGS84 position in degrees.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Coord {
    pub lat: f64,
    pub lon: f64,
}

/// A demand point: the smallest population unit of the city.
#[derive(Debug, Clone, PartialEq)]
pub struct Block {
    pub id: String,
    /// People living in the block. Zero-population blocks are retained so
    /// row indices stay stable for reporting; they carry weight 0 in every sum.
    pub population: f64,
    pub coord: Option<Coord>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SiteKind {
    /// An amenity that is already open; it stays open in every plan.
    Existing,
    /// A potential location for a new amenity.
    Candidate,
}

impl fmt::Display for SiteKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SiteKind::Existing => write!(f, "existing"),
            SiteKind::Candidate => write!(f, "candidate"),
        }
    }
}

/// An amenity location, existing or candidate.
#[derive(Debug, Clone, PartialEq)]
pub struct Site {
    pub id: String,
    pub kind: SiteKind,
    pub coord: Option<Coord>,
}

/// Dense row-major |blocks| x |sites| matrix of distances in meters.
#[derive(Debug, Clone, PartialEq)]
pub struct DistanceMatrix {
    entries: Vec<f64>,
    rows: usize,
    cols: usize,
}

impl DistanceMatrix {
    /// Builds a matrix from row-major entries. Shape must match exactly;
    /// entry values are checked by [`validate`], not here.
    pub fn new(rows: usize, cols: usize, entries: Vec<f64>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::Parse {
                location: "distance matrix".into(),
                message: format!(
                    "expected {} entries for a {}x{} matrix, got {}",
                    rows * cols,
                    rows,
                    cols,
                    entries.len()
                ),
            });
        }
        Ok(Self { entries, rows, cols })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, block: usize, site: usize) -> f64 {
        self.entries[block * self.cols + site]
    }

    #[inline]
    pub fn row(&self, block: usize) -> &[f64] {
        &self.entries[block * self.cols..(block + 1) * self.cols]
    }
}

/// How the distance matrix was obtained. Haversine matrices are a
/// crow-flies approximation of network distance and are flagged as such.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DistanceSource {
    /// Distances supplied by the caller (e.g. a routing engine export).
    Provided,
    /// Great-circle approximation built from coordinates at load time.
    Haversine,
    /// Planar Euclidean distances of a synthetic grid city.
    PlanarGrid,
}

/// A city: blocks, sites, and the distance matrix tying them together.
#[derive(Debug, Clone)]
pub struct Instance {
    pub name: String,
    pub blocks: Vec<Block>,
    pub sites: Vec<Site>,
    pub distances: DistanceMatrix,
    pub distance_source: DistanceSource,
}

impl Instance {
    pub fn new(
        name: impl Into<String>,
        blocks: Vec<Block>,
        sites: Vec<Site>,
        distances: DistanceMatrix,
    ) -> Self {
        Self {
            name: name.into(),
            blocks,
            sites,
            distances,
            distance_source: DistanceSource::Provided,
        }
    }

    /// Indices of existing sites, in site order.
    pub fn existing_sites(&self) -> Vec<usize> {
        self.site_indices(SiteKind::Existing)
    }

    /// Indices of candidate sites, in site order.
    pub fn candidate_sites(&self) -> Vec<usize> {
        self.site_indices(SiteKind::Candidate)
    }

    fn site_indices(&self, kind: SiteKind) -> Vec<usize> {
        self.sites
            .iter()
            .enumerate()
            .filter(|(_, s)| s.kind == kind)
            .map(|(i, _)| i)
            .collect()
    }

    pub fn populations(&self) -> Vec<f64> {
        self.blocks.iter().map(|b| b.population).collect()
    }

    pub fn total_population(&self) -> f64 {
        self.blocks.iter().map(|b| b.population).sum()
    }

    /// Validates and returns the instance, for use at ingestion boundaries.
    pub fn into_validated(self) -> Result<Self> {
        let report = validate(&self);
        if report.passed() {
            Ok(self)
        } else {
            Err(Error::Validation(report))
        }
    }
}

/// A single invariant violation found by [`validate`].
#[derive(Debug, Clone, PartialEq)]
pub enum Violation {
    DimensionMismatch { rows: usize, cols: usize, blocks: usize, sites: usize },
    NegativePopulation { block_id: String },
    NonFinitePopulation { block_id: String },
    ZeroTotalPopulation,
    DuplicateBlockId { id: String },
    DuplicateSiteId { id: String },
    NoSites,
    NonFiniteDistance { block_id: String, site_id: String },
    NegativeDistance { block_id: String, site_id: String },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::DimensionMismatch { rows, cols, blocks, sites } => write!(
                f,
                "dimension mismatch: matrix is {rows}x{cols} but instance has {blocks} blocks and {sites} sites"
            ),
            Violation::NegativePopulation { block_id } => {
                write!(f, "negative population in block '{block_id}'")
            }
            Violation::NonFinitePopulation { block_id } => {
                write!(f, "non-finite population in block '{block_id}'")
            }
            Violation::ZeroTotalPopulation => write!(f, "zero total population"),
            Violation::DuplicateBlockId { id } => write!(f, "duplicate block id '{id}'"),
            Violation::DuplicateSiteId { id } => write!(f, "duplicate site id '{id}'"),
            Violation::NoSites => write!(f, "instance has no sites"),
            Violation::NonFiniteDistance { block_id, site_id } => {
                write!(f, "non-finite distance for block '{block_id}', site '{site_id}'")
            }
            Violation::NegativeDistance { block_id, site_id } => {
                write!(f, "negative distance for block '{block_id}', site '{site_id}'")
            }
        }
    }
}

/// Outcome of [`validate`]: empty means the instance passed.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return write!(f, "pass");
        }
        let msgs: Vec<String> = self.violations.iter().map(|v| v.to_string()).collect();
        write!(f, "{}", msgs.join("; "))
    }
}

/// Checks every structural invariant of an instance. Side-effect free and
/// idempotent; an instance failing validation is rejected by every
/// downstream operation.
pub fn validate(instance: &Instance) -> ValidationReport {
    let mut violations = Vec::new();

    let blocks = instance.blocks.len();
    let sites = instance.sites.len();
    if instance.distances.rows() != blocks || instance.distances.cols() != sites {
        violations.push(Violation::DimensionMismatch {
            rows: instance.distances.rows(),
            cols: instance.distances.cols(),
            blocks,
            sites,
        });
    }

    if sites == 0 {
        violations.push(Violation::NoSites);
    }

    let mut seen_blocks = std::collections::BTreeSet::new();
    for block in &instance.blocks {
        if !block.population.is_finite() {
            violations.push(Violation::NonFinitePopulation { block_id: block.id.clone() });
        } else if block.population < 0.0 {
            violations.push(Violation::NegativePopulation { block_id: block.id.clone() });
        }
        if !seen_blocks.insert(block.id.as_str()) {
            violations.push(Violation::DuplicateBlockId { id: block.id.clone() });
        }
    }

    let total: f64 = instance
        .blocks
        .iter()
        .map(|b| b.population)
        .filter(|p| p.is_finite() && *p > 0.0)
        .sum();
    if total <= 0.0 {
        violations.push(Violation::ZeroTotalPopulation);
    }

    // Site ids must be unique across both kinds.
    let mut seen_sites = std::collections::BTreeSet::new();
    for site in &instance.sites {
        if !seen_sites.insert(site.id.as_str()) {
            violations.push(Violation::DuplicateSiteId { id: site.id.clone() });
        }
    }

    if instance.distances.rows() == blocks && instance.distances.cols() == sites {
        for (r, block) in instance.blocks.iter().enumerate() {
            for (s, site) in instance.sites.iter().enumerate() {
                let d = instance.distances.get(r, s);
                if !d.is_finite() {
                    violations.push(Violation::NonFiniteDistance {
                        block_id: block.id.clone(),
                        site_id: site.id.clone(),
                    });
                } else if d < 0.0 {
                    violations.push(Violation::NegativeDistance {
                        block_id: block.id.clone(),
                        site_id: site.id.clone(),
                    });
                }
            }
        }
    }

    ValidationReport { violations }
}

/// Per-block distance to the nearest existing site, in meters.
///
/// When the instance has no existing sites (a greenfield city), falls back
/// to the nearest candidate site; these baseline values are only used to
/// calibrate the aversion scale. Ties break toward the lowest site index.
pub fn baseline_distances(instance: &Instance) -> Vec<f64> {
    let existing = instance.existing_sites();
    let subset = if existing.is_empty() { instance.candidate_sites() } else { existing };
    min_over_sites(instance, &subset)
}

/// Row-wise minimum of the distance matrix over a site-index subset.
pub(crate) fn min_over_sites(instance: &Instance, sites: &[usize]) -> Vec<f64> {
    (0..instance.blocks.len())
        .map(|r| {
            let row = instance.distances.row(r);
            let mut best = f64::INFINITY;
            for &s in sites {
                if row[s] < best {
                    best = row[s];
                }
            }
            best
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn fixture_t1() -> Instance {
        crate::testkit::fixture_t1()
    }

    #[test]
    fn well_formed_fixture_passes() {
        let report = validate(&fixture_t1());
        assert!(report.passed(), "unexpected violations: {report}");
    }

    #[test]
    fn zero_total_population_is_flagged() {
        let mut inst = fixture_t1();
        for b in &mut inst.blocks {
            b.population = 0.0;
        }
        let report = validate(&inst);
        assert!(report.violations.contains(&Violation::ZeroTotalPopulation));
    }

    #[test]
    fn dimension_mismatch_is_flagged() {
        let mut inst = fixture_t1();
        inst.blocks.pop();
        let report = validate(&inst);
        assert!(matches!(report.violations[0], Violation::DimensionMismatch { .. }));
    }

    #[test]
    fn duplicate_ids_and_bad_values_are_flagged() {
        let mut inst = fixture_t1();
        inst.blocks[1].id = inst.blocks[0].id.clone();
        inst.sites[2].id = inst.sites[0].id.clone();
        inst.blocks[2].population = -4.0;
        let report = validate(&inst);
        assert!(report.violations.iter().any(|v| matches!(v, Violation::DuplicateBlockId { .. })));
        assert!(report.violations.iter().any(|v| matches!(v, Violation::DuplicateSiteId { .. })));
        assert!(report
            .violations
            .iter()
            .any(|v| matches!(v, Violation::NegativePopulation { .. })));
    }

    #[test]
    fn non_finite_distance_is_flagged() {
        let inst = fixture_t1();
        let mut entries: Vec<f64> = (0..3).flat_map(|r| inst.distances.row(r).to_vec()).collect();
        entries[4] = f64::NAN;
        let bad = Instance::new(
            "bad",
            inst.blocks.clone(),
            inst.sites.clone(),
            DistanceMatrix::new(3, 3, entries).unwrap(),
        );
        let report = validate(&bad);
        assert!(report.violations.iter().any(|v| matches!(v, Violation::NonFiniteDistance { .. })));
    }

    #[test]
    fn validate_is_idempotent() {
        let inst = fixture_t1();
        assert_eq!(validate(&inst), validate(&inst));
    }

    #[test]
    fn baseline_uses_existing_sites() {
        // T1: existing = {s1}; its column is [200, 600, 900].
        let inst = fixture_t1();
        assert_eq!(baseline_distances(&inst), vec![200.0, 600.0, 900.0]);
    }

    #[test]
    fn baseline_minimum_over_two_existing() {
        let mut inst = fixture_t1();
        inst.sites[1].kind = SiteKind::Existing; // now existing = {s1, s2}
        assert_eq!(baseline_distances(&inst), vec![200.0, 300.0, 700.0]);
    }

    #[test]
    fn baseline_falls_back_to_candidates_when_greenfield() {
        let mut inst = fixture_t1();
        inst.sites[0].kind = SiteKind::Candidate; // no existing sites left
        assert_eq!(baseline_distances(&inst), vec![200.0, 300.0, 100.0]);
    }

    #[test]
    fn baseline_is_elementwise_lower_bound() {
        let inst = fixture_t1();
        let base = baseline_distances(&inst);
        for (r, &b) in base.iter().enumerate() {
            for &s in &inst.existing_sites() {
                assert!(b <= inst.distances.get(r, s));
            }
        }
    }
}
