//! Census of `Ψ` over all conical pairs of a given degree.
//!
//! Pairs are processed in chunks of the deterministic pair stream. Each chunk
//! is mapped in parallel, then its records are appended to the output file and
//! folded into the multiset in stream order. After every chunk a checkpoint
//! holding the processed prefix and the partial multiset is written
//! atomically, so an interrupted run can resume exactly where it stopped.

use std::collections::BTreeMap;
use std::fs::{self, File, OpenOptions};
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::enumerate::{conical_polygons, pair_indices, EnumError};
use crate::geom::{hull, Point, Polygon};
use crate::newton::PolytopePair;
use crate::ptype::{mv_identity_sides, pair_edges, polyhedral_type, DeltaFunctional, PsiError};

pub const DEFAULT_MAX_DEGREE: u32 = 5;
pub const DEFAULT_SPOT_RATE: f64 = 0.01;
/// Test polytopes drawn per spot-checked pair.
pub const SPOT_SAMPLES: usize = 10;
const CHUNK: usize = 2048;
const CHECKPOINT_VERSION: u32 = 1;

pub type Psi = [u64; 12];

/// Counts published for the same census: conical polygons, pairs, distinct `Ψ`.
pub fn reference_counts(degree: u32) -> Option<ReferenceCounts> {
    let (conical_polygons, pairs_total, distinct_psi) = match degree {
        1 => (0, 0, Some(0)),
        2 => (1, 1, None),
        3 => (68, 2346, Some(26)),
        4 => (899, 404_550, Some(3217)),
        5 => (6795, 23_089_410, None),
        _ => return None,
    };
    Some(ReferenceCounts {
        conical_polygons,
        pairs_total,
        distinct_psi,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReferenceCounts {
    pub conical_polygons: u64,
    pub pairs_total: u64,
    pub distinct_psi: Option<u64>,
}

#[derive(Debug, Error)]
pub enum CensusError {
    #[error("degree must be at least 1")]
    ZeroDegree,
    #[error("degree {degree} exceeds the cap {cap}; raise it explicitly to go further")]
    DegreeTooLarge { degree: u32, cap: u32 },
    #[error("jobs must be at least 1")]
    ZeroJobs,
    #[error("spot-check rate must lie in [0, 1], got {0}")]
    BadSpotRate(f64),
    #[error("checkpoint {path} is unreadable or corrupt: {reason}")]
    CorruptCheckpoint { path: PathBuf, reason: String },
    #[error("checkpoint {path} was written with different options ({field}: {found} vs {expected})")]
    CheckpointMismatch {
        path: PathBuf,
        field: &'static str,
        found: String,
        expected: String,
    },
    #[error("pair {index} ({pair}): {source}")]
    Inconsistency {
        index: u64,
        pair: String,
        source: PsiError,
    },
    #[error(transparent)]
    Enum(#[from] EnumError),
    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("thread pool: {0}")]
    Pool(String),
}

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> CensusError + '_ {
    move |source| CensusError::Io {
        path: path.to_path_buf(),
        source,
    }
}

#[derive(Clone, Debug)]
pub struct CensusOptions {
    pub degree: u32,
    pub jobs: usize,
    pub checkpoint: Option<PathBuf>,
    pub out: Option<PathBuf>,
    /// Fraction of pairs whose `Δ` is re-checked against the mixed-volume identity.
    pub spot_rate: f64,
    pub seed: u64,
    /// Record inconsistent pairs and carry on instead of stopping at the first one.
    pub keep_going: bool,
    pub max_degree: u32,
    /// Stop once at least this many pairs are processed (simulates an interruption).
    pub stop_after: Option<u64>,
}

impl CensusOptions {
    pub fn new(degree: u32) -> Self {
        Self {
            degree,
            jobs: 1,
            checkpoint: None,
            out: None,
            spot_rate: DEFAULT_SPOT_RATE,
            seed: 0,
            keep_going: false,
            max_degree: DEFAULT_MAX_DEGREE,
            stop_after: None,
        }
    }

    fn validate(&self) -> Result<(), CensusError> {
        if self.degree == 0 {
            return Err(CensusError::ZeroDegree);
        }
        if self.degree > self.max_degree {
            return Err(CensusError::DegreeTooLarge {
                degree: self.degree,
                cap: self.max_degree,
            });
        }
        if self.jobs == 0 {
            return Err(CensusError::ZeroJobs);
        }
        if !(0.0..=1.0).contains(&self.spot_rate) {
            return Err(CensusError::BadSpotRate(self.spot_rate));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusRecord {
    pub pair_index: u64,
    #[serde(rename = "A1")]
    pub a1: Polygon,
    #[serde(rename = "A2")]
    pub a2: Polygon,
    pub psi: Option<Psi>,
    pub flags: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PsiCount {
    pub psi: Psi,
    pub count: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusSummary {
    pub degree: u32,
    pub conical_polygons: u64,
    pub pairs_total: u64,
    pub pairs_degenerate: u64,
    pub pairs_inconsistent: u64,
    pub distinct_psi: u64,
    pub psi_multiset: Vec<PsiCount>,
    pub reference: Option<ReferenceCounts>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CensusReport {
    pub summary: CensusSummary,
    /// Pairs processed so far; less than `summary.pairs_total` after an interruption.
    pub processed: u64,
    pub complete: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
struct Tally {
    multiset: BTreeMap<Psi, u64>,
    degenerate: u64,
    inconsistent: u64,
}

impl Tally {
    fn add(&mut self, record: &CensusRecord) {
        match (&record.psi, record.flags.iter().any(|f| f.starts_with("degenerate"))) {
            (Some(p), _) => *self.multiset.entry(*p).or_default() += 1,
            (None, true) => self.degenerate += 1,
            (None, false) => self.inconsistent += 1,
        }
    }
}

#[derive(Serialize, Deserialize)]
struct Checkpoint {
    version: u32,
    degree: u32,
    spot_rate: f64,
    seed: u64,
    processed: u64,
    out_bytes: Option<u64>,
    degenerate: u64,
    inconsistent: u64,
    multiset: Vec<PsiCount>,
}

impl Checkpoint {
    fn load(path: &Path) -> Result<Self, CensusError> {
        let corrupt = |reason: String| CensusError::CorruptCheckpoint {
            path: path.to_path_buf(),
            reason,
        };
        let text = fs::read_to_string(path).map_err(|e| corrupt(e.to_string()))?;
        let cp: Checkpoint = serde_json::from_str(&text).map_err(|e| corrupt(e.to_string()))?;
        if cp.version != CHECKPOINT_VERSION {
            return Err(corrupt(format!("unsupported version {}", cp.version)));
        }
        Ok(cp)
    }

    fn check(&self, path: &Path, opts: &CensusOptions) -> Result<(), CensusError> {
        let mismatch = |field, found: String, expected: String| {
            Err(CensusError::CheckpointMismatch {
                path: path.to_path_buf(),
                field,
                found,
                expected,
            })
        };
        if self.degree != opts.degree {
            return mismatch("degree", self.degree.to_string(), opts.degree.to_string());
        }
        if self.spot_rate != opts.spot_rate {
            return mismatch("spot rate", self.spot_rate.to_string(), opts.spot_rate.to_string());
        }
        if self.seed != opts.seed {
            return mismatch("seed", self.seed.to_string(), opts.seed.to_string());
        }
        if self.out_bytes.is_some() != opts.out.is_some() {
            return mismatch(
                "record output",
                self.out_bytes.is_some().to_string(),
                opts.out.is_some().to_string(),
            );
        }
        Ok(())
    }

    /// Serialized to a sibling temporary file, then renamed over the target.
    fn store(&self, path: &Path) -> Result<(), CensusError> {
        let tmp = path.with_extension("tmp");
        let text = serde_json::to_string(self).expect("checkpoint serializes");
        fs::write(&tmp, text).map_err(io_err(&tmp))?;
        fs::rename(&tmp, path).map_err(io_err(path))
    }
}

fn to_counts(multiset: &BTreeMap<Psi, u64>) -> Vec<PsiCount> {
    multiset
        .iter()
        .map(|(&psi, &count)| PsiCount { psi, count })
        .collect()
}

/// A random lattice polygon with coordinates in `[0, 6]`.
pub fn random_test_polytope<R: Rng>(rng: &mut R) -> Polygon {
    let n = rng.gen_range(1..=5);
    let pts: Vec<Point> = (0..n)
        .map(|_| Point::int(rng.gen_range(0..=6), rng.gen_range(0..=6)))
        .collect();
    hull(pts).expect("non-empty")
}

fn pair_rng(seed: u64, index: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ index.wrapping_mul(0x9E37_79B9_7F4A_7C15))
}

/// `Ψ` of one pair, with the mixed-volume identity re-checked on `SPOT_SAMPLES`
/// random test polytopes when the pair is sampled.
pub fn census_record(
    index: u64,
    pair: &PolytopePair,
    spot_rate: f64,
    seed: u64,
) -> Result<CensusRecord, PsiError> {
    let t = polyhedral_type(pair)?;
    let mut flags = Vec::new();
    if let Some(d) = t.degenerate {
        flags.push(format!("degenerate:{d}"));
    }
    let mut rng = pair_rng(seed, index);
    if let (Some(delta), Some(sd)) = (&t.delta, &t.sigma_data) {
        if spot_rate > 0.0 && rng.gen_bool(spot_rate) {
            let f = DeltaFunctional::new(pair, sd, &pair_edges(pair));
            for _ in 0..SPOT_SAMPLES {
                let pi = random_test_polytope(&mut rng);
                let (lhs, rhs) = mv_identity_sides(&f, delta, &pi)?;
                if lhs != rhs {
                    return Err(PsiError::Inconsistency(format!(
                        "MV(Δ, Π) = {lhs} but MV(Σ, Lft(Π)) − T_A(Π) = {rhs} for Π = {pi}"
                    )));
                }
            }
        }
    }
    Ok(CensusRecord {
        pair_index: index,
        a1: pair.a1().clone(),
        a2: pair.a2().clone(),
        psi: t.psi,
        flags,
    })
}

pub fn census(opts: &CensusOptions) -> Result<CensusReport, CensusError> {
    opts.validate()?;
    let polys = conical_polygons(opts.degree)?;
    let pairs: Vec<(usize, usize)> = pair_indices(polys.len()).collect();
    let total = pairs.len() as u64;

    let mut tally = Tally::default();
    let mut processed = 0u64;
    let mut out_bytes = None;
    if let Some(path) = &opts.checkpoint {
        if path.exists() {
            let cp = Checkpoint::load(path)?;
            cp.check(path, opts)?;
            processed = cp.processed.min(total);
            tally.degenerate = cp.degenerate;
            tally.inconsistent = cp.inconsistent;
            tally.multiset = cp.multiset.into_iter().map(|c| (c.psi, c.count)).collect();
            out_bytes = cp.out_bytes;
        }
    }

    let mut out = match &opts.out {
        Some(path) => {
            let file = match out_bytes {
                Some(len) => {
                    // Drop records written after the last checkpoint.
                    let f = OpenOptions::new().write(true).open(path).map_err(io_err(path))?;
                    f.set_len(len).map_err(io_err(path))?;
                    drop(f);
                    OpenOptions::new().append(true).open(path).map_err(io_err(path))?
                }
                None => File::create(path).map_err(io_err(path))?,
            };
            Some((path.clone(), BufWriter::new(file), out_bytes.unwrap_or(0)))
        }
        None => None,
    };

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(opts.jobs)
        .build()
        .map_err(|e| CensusError::Pool(e.to_string()))?;

    while processed < total {
        if opts.stop_after.is_some_and(|s| processed >= s) {
            break;
        }
        let start = processed as usize;
        let end = (start + CHUNK).min(pairs.len());
        let results: Vec<(u64, Result<CensusRecord, PsiError>)> = pool.install(|| {
            pairs[start..end]
                .par_iter()
                .enumerate()
                .map(|(k, &(i, j))| {
                    let index = (start + k) as u64;
                    let pair = PolytopePair::new(polys[i].clone(), polys[j].clone())
                        .expect("conical polygons lie in the quadrant");
                    (index, census_record(index, &pair, opts.spot_rate, opts.seed))
                })
                .collect()
        });
        for (index, result) in results {
            let record = match result {
                Ok(r) => r,
                Err(e) => {
                    let (i, j) = pairs[index as usize];
                    if !opts.keep_going {
                        return Err(CensusError::Inconsistency {
                            index,
                            pair: format!("{} / {}", polys[i], polys[j]),
                            source: e,
                        });
                    }
                    CensusRecord {
                        pair_index: index,
                        a1: polys[i].clone(),
                        a2: polys[j].clone(),
                        psi: None,
                        flags: vec![format!("inconsistency:{e}")],
                    }
                }
            };
            tally.add(&record);
            if let Some((path, w, bytes)) = out.as_mut() {
                let line = serde_json::to_string(&record).expect("record serializes");
                writeln!(w, "{line}").map_err(io_err(path))?;
                *bytes += line.len() as u64 + 1;
            }
        }
        processed = end as u64;
        if let Some((path, w, _)) = out.as_mut() {
            w.flush().map_err(io_err(path))?;
        }
        if let Some(path) = &opts.checkpoint {
            Checkpoint {
                version: CHECKPOINT_VERSION,
                degree: opts.degree,
                spot_rate: opts.spot_rate,
                seed: opts.seed,
                processed,
                out_bytes: out.as_ref().map(|o| o.2),
                degenerate: tally.degenerate,
                inconsistent: tally.inconsistent,
                multiset: to_counts(&tally.multiset),
            }
            .store(path)?;
        }
    }

    Ok(CensusReport {
        summary: CensusSummary {
            degree: opts.degree,
            conical_polygons: polys.len() as u64,
            pairs_total: total,
            pairs_degenerate: tally.degenerate,
            pairs_inconsistent: tally.inconsistent,
            distinct_psi: tally.multiset.len() as u64,
            psi_multiset: to_counts(&tally.multiset),
            reference: reference_counts(opts.degree),
        },
        processed,
        complete: processed == total,
    })
}

/// Continues the run recorded in `checkpoint` with the options stored there.
pub fn resume(checkpoint: &Path, jobs: usize, out: Option<PathBuf>) -> Result<CensusReport, CensusError> {
    let cp = Checkpoint::load(checkpoint)?;
    let opts = CensusOptions {
        degree: cp.degree,
        jobs,
        checkpoint: Some(checkpoint.to_path_buf()),
        out,
        spot_rate: cp.spot_rate,
        seed: cp.seed,
        keep_going: false,
        max_degree: cp.degree.max(DEFAULT_MAX_DEGREE),
        stop_after: None,
    };
    census(&opts)
}
