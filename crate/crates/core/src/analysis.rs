//! End-to-end analysis of one substitution and its serializable report.

use std::time::Instant;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numberfield::AlgebraicReal;
use crate::overlap::{self, Certificate, OverlapGraph, SeedingOptions, StableGraph};
use crate::strongcoin::{self, GroupG, MscContext, MscReport, PairOutcome, PairResult, Witness};
use crate::substitution::Substitution;
use crate::tiling::{ControlPoints, SuspensionTiling};

#[derive(Clone, Debug)]
pub struct AnalysisOptions {
    /// Initial seeding radius; `8 · max ℓ_i` when absent.
    pub radius: Option<BigRational>,
    pub cap_classes: usize,
    pub cap_maps: u128,
    pub k_max: u32,
    /// Level of the strong-coincidence check; computed from the overlap
    /// graph when absent.
    pub level: Option<u32>,
    pub witness: bool,
}

impl Default for AnalysisOptions {
    fn default() -> Self {
        AnalysisOptions {
            radius: None,
            cap_classes: overlap::DEFAULT_CLASS_CAP,
            cap_maps: strongcoin::DEFAULT_MAP_CAP,
            k_max: strongcoin::DEFAULT_KMAX,
            level: None,
            witness: true,
        }
    }
}

/// Element of ℚ(β) as rational coordinates in `1, β, …, β^{d−1}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Exact(pub Vec<String>);

impl Exact {
    pub fn of(x: &AlgebraicReal) -> Self {
        Exact(x.coords().iter().map(ToString::to_string).collect())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Gates {
    pub primitive: bool,
    pub pisot: bool,
    /// Irreducibility of the characteristic polynomial (informational).
    pub irreducible: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldReport {
    /// Integer coefficients, constant term first.
    pub min_poly: Vec<String>,
    pub min_poly_text: String,
    /// Rational interval isolating β.
    pub beta_interval: (String, String),
    pub lengths: Vec<Exact>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassReport {
    pub u: usize,
    pub v: usize,
    pub t: Exact,
    pub label: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SccSummary {
    pub vertices: Vec<String>,
    pub perron_is_beta_power: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OverlapReport {
    pub holds: bool,
    pub level: u32,
    pub radius: Exact,
    pub doublings: u32,
    pub vertices: Vec<ClassReport>,
    pub edge_count: usize,
    /// Shortest distance to a coincidence per vertex, when the verdict holds.
    pub distances: Option<Vec<usize>>,
    /// Labels of the vertices that cannot reach a coincidence.
    pub stuck: Option<Vec<String>>,
    pub coincidence_free_sccs: Vec<SccSummary>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairReport {
    pub i: usize,
    pub j: usize,
    /// `"coincide"` or `"fails"`.
    pub status: String,
    #[serde(rename = "L")]
    pub level: Option<u32>,
    /// Size of the exhausted class set for a failure.
    pub exhausted: Option<usize>,
}

impl PairReport {
    pub fn of(p: &PairResult) -> Self {
        match &p.outcome {
            PairOutcome::Coincide { level, .. } => PairReport {
                i: p.i + 1,
                j: p.j + 1,
                status: "coincide".into(),
                level: Some(*level),
                exhausted: None,
            },
            PairOutcome::Fails { classes } => PairReport {
                i: p.i + 1,
                j: p.j + 1,
                status: "fails".into(),
                level: None,
                exhausted: Some(classes.len()),
            },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TileMapSummary {
    /// 1-based subtile index per color.
    pub choice: Vec<usize>,
    pub control_points: Vec<Exact>,
    pub admissible: bool,
    pub in_group: bool,
    /// `K` used for each cross-color membership test, `None` when absent.
    pub membership_k: Vec<Option<u32>>,
    /// Empty when the family was filtered out.
    pub pairs: Vec<PairReport>,
}

impl TileMapSummary {
    fn of(cp: &ControlPoints, memberships: &[((usize, usize), Option<u32>)], in_group: bool, pairs: &[PairResult]) -> Self {
        TileMapSummary {
            choice: cp.tile_map.choice.iter().map(|k| k + 1).collect(),
            control_points: cp.c.iter().map(Exact::of).collect(),
            admissible: cp.admissible,
            in_group,
            membership_k: memberships.iter().map(|(_, k)| *k).collect(),
            pairs: pairs.iter().map(PairReport::of).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MscSummary {
    pub level: u32,
    pub holds: bool,
    pub vacuous: bool,
    pub quantified_over: String,
    pub maps: Vec<TileMapSummary>,
}

impl MscSummary {
    pub fn of(r: &MscReport) -> Self {
        MscSummary {
            level: r.n,
            holds: r.holds,
            vacuous: r.vacuous,
            quantified_over: format!("control points generated by tile maps of the level-{} inflation", r.n),
            maps: r
                .maps
                .iter()
                .map(|m| {
                    let pairs = m.strong.as_ref().map(|s| s.pairs.as_slice()).unwrap_or(&[]);
                    TileMapSummary::of(&m.control_points, &m.memberships, m.in_group, pairs)
                })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessReport {
    pub class: String,
    pub level: u32,
    pub family: TileMapSummary,
    /// 1-based colors of the pair without strong coincidence.
    pub failing_pair: (usize, usize),
    pub verified: bool,
}

impl WitnessReport {
    pub fn of(w: &Witness) -> Self {
        WitnessReport {
            class: w.class.to_string(),
            level: w.tile_map.level,
            family: TileMapSummary::of(&w.control_points, &w.memberships, w.in_group, std::slice::from_ref(&w.pair)),
            failing_pair: (w.failing_pair.0 + 1, w.failing_pair.1 + 1),
            verified: w.control_points.admissible && w.in_group && !w.pair.succeeded(),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Timings {
    pub gates_ms: u64,
    pub overlap_ms: u64,
    pub msc_ms: u64,
    pub witness_ms: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub name: String,
    /// Rules as 1-based letter words.
    pub rules: Vec<Vec<usize>>,
    pub gates: Gates,
    pub field: FieldReport,
    pub overlap: OverlapReport,
    pub msc: MscSummary,
    /// Overlap coincidence and multiple strong coincidence agree.
    pub agreement: bool,
    pub witness: Option<WitnessReport>,
    pub witness_error: Option<String>,
    /// Column coincidence, for constant-length substitutions.
    pub dekking: Option<bool>,
    pub timings: Timings,
}

/// Everything computed along the way, for callers that need more than the
/// report.
pub struct Analysis {
    pub tiling: SuspensionTiling,
    pub stable: StableGraph,
    pub group: GroupG,
    pub msc: MscReport,
    pub witness: Option<Witness>,
    pub report: AnalysisReport,
}

fn ms(since: Instant) -> u64 {
    since.elapsed().as_millis() as u64
}

/// Gates, then the overlap graph and its verdict, then multiple strong
/// coincidence at the computed level, then a witness when overlap
/// coincidence fails.
pub fn analyze(name: &str, subst: &Substitution, opts: &AnalysisOptions) -> Result<Analysis> {
    let clock = Instant::now();
    let primitive = subst.is_primitive();
    if !primitive {
        return Err(Error::NotPrimitive);
    }
    let irreducible = subst.is_irreducible();
    let tiling = SuspensionTiling::new(subst.clone())?;
    let gates = Gates { primitive, pisot: true, irreducible };
    let field = field_report(&tiling);
    let gates_ms = ms(clock);

    let clock = Instant::now();
    let stable = stable_graph(&tiling, opts)?;
    let g = &stable.graph;
    let verdict = overlap::overlap_coincidence(g)?;
    let overlap = overlap_report(&tiling, &stable, &verdict.certificate, verdict.holds);
    let overlap_ms = ms(clock);

    let clock = Instant::now();
    let n = opts.level.unwrap_or_else(|| strongcoin::compute_level_n(g));
    let patch = tiling.central_patch(&stable.radius)?;
    let group = GroupG::from_patch(&tiling, &patch, opts.k_max);
    let ctx = MscContext { tiling: &tiling, group: &group, patch: &patch, class_cap: opts.cap_classes, map_cap: opts.cap_maps };
    let msc = strongcoin::multiple_strong_coincidence(&ctx, n)?;
    let msc_ms = ms(clock);

    let clock = Instant::now();
    let mut witness = None;
    let mut witness_error = None;
    if !verdict.holds && opts.witness {
        let n0 = strongcoin::compute_level_n(g);
        match strongcoin::stuck_sccs(g).first() {
            Some(scc) => match strongcoin::extract_witness(&ctx, g, scc, n0) {
                Ok(w) => witness = Some(w),
                Err(e) if e.is_cap() => return Err(e),
                Err(e) => witness_error = Some(e.to_string()),
            },
            None => witness_error = Some("no coincidence-free component".into()),
        }
    }
    let witness_ms = ms(clock);

    let dekking = subst.constant_length().map(|_| subst.dekking_column_check()).transpose()?;
    let report = AnalysisReport {
        name: name.to_string(),
        rules: subst.rules().iter().map(|r| r.iter().map(|a| a + 1).collect()).collect(),
        gates,
        field,
        agreement: verdict.holds == msc.holds,
        overlap,
        msc: MscSummary::of(&msc),
        witness: witness.as_ref().map(WitnessReport::of),
        witness_error,
        dekking,
        timings: Timings { gates_ms, overlap_ms, msc_ms, witness_ms },
    };
    Ok(Analysis { tiling, stable, group, msc, witness, report })
}

/// The overlap graph under the radius-doubling rule of the options.
pub fn stable_graph(tiling: &SuspensionTiling, opts: &AnalysisOptions) -> Result<StableGraph> {
    let seeding = SeedingOptions {
        radius: opts.radius.clone().map(|r| tiling.field().from_rational(r)),
        level: 1,
        cap: opts.cap_classes,
        ..SeedingOptions::default()
    };
    overlap::stable_overlap_graph(tiling, &seeding)
}

fn field_report(tiling: &SuspensionTiling) -> FieldReport {
    let f = tiling.field();
    let iv = f.beta_interval();
    FieldReport {
        min_poly: f.min_poly().iter().map(ToString::to_string).collect(),
        min_poly_text: f.min_poly_ref().to_string(),
        beta_interval: (iv.lo.to_string(), iv.hi.to_string()),
        lengths: tiling.lengths().iter().map(Exact::of).collect(),
    }
}

fn overlap_report(tiling: &SuspensionTiling, stable: &StableGraph, cert: &Certificate, holds: bool) -> OverlapReport {
    let g: &OverlapGraph = &stable.graph;
    let label = |i: usize| g.vertices[i].to_string();
    let (distances, stuck) = match cert {
        Certificate::Distances(d) => (Some(d.clone()), None),
        Certificate::Stuck(s) => (None, Some(s.iter().map(|&i| label(i)).collect())),
    };
    OverlapReport {
        holds,
        level: g.level,
        radius: Exact::of(&stable.radius),
        doublings: stable.doublings,
        vertices: g
            .vertices
            .iter()
            .map(|c| ClassReport { u: c.u + 1, v: c.v + 1, t: Exact::of(&c.t), label: c.to_string() })
            .collect(),
        edge_count: g.graph.edges().len(),
        distances,
        stuck,
        coincidence_free_sccs: overlap::expansive_sccs(g, tiling.beta())
            .into_iter()
            .map(|s| SccSummary {
                vertices: s.vertices.iter().map(|&i| label(i)).collect(),
                perron_is_beta_power: s.perron_is_beta_power,
            })
            .collect(),
    }
}
