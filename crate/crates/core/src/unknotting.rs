//! Unknotting-number bounds for torus-covering links.
//!
//! The upper bound comes from the chart shape: a chart made of free edges
//! presents an unknotted link, and a chart without white vertices becomes
//! one after adding `m − 1` free edges. The lower bound counts dihedral
//! colorings: each 1-handle identifies two arcs of the classical braid,
//! which divides the count by at most `p`, and a trivial knot has exactly
//! `p` colorings.

use std::collections::{BTreeSet, HashSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::braid::BraidWord;
use crate::chart::{ChartClass, ChartError, TorusCoveringChart};
use crate::quandle::{self, check_cap, ArcPosition, ColoringError, Quandle, QuandleError};

#[derive(Debug, Error)]
pub enum UnknottingError {
    #[error(transparent)]
    Chart(#[from] ChartError),
    #[error(transparent)]
    Coloring(#[from] ColoringError),
    #[error(transparent)]
    Quandle(#[from] QuandleError),
    #[error("the coloring lower bound is only defined for knots; this chart has {0} components")]
    NotAKnot(usize),
    #[error("invariant `Φ is a power of p`: got Φ = {phi} for p = {p}")]
    NotPowerOf { phi: u64, p: u64 },
    #[error("invariant `spun reduction`: chart count Φ = {chart} but cl(β) has {classical} colorings")]
    ReductionMismatch { chart: u64, classical: u64 },
    #[error("invariant `lower <= upper`: lower bound {lower} exceeds upper bound {upper}")]
    Inconsistent { lower: u32, upper: u32 },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundsReport {
    pub lower: u32,
    pub upper: Option<u32>,
    pub exact: Option<u32>,
    /// Φ over `R_3`: vectors fixed by both boundary braid actions.
    pub coloring_count: u64,
    pub notes: Vec<String>,
}

impl BoundsReport {
    pub fn is_consistent(&self) -> bool {
        let ordered = self.upper.is_none_or(|u| self.lower <= u);
        let exact_ok = match (self.upper, self.exact) {
            (Some(u), Some(x)) => u == self.lower && x == u,
            (Some(u), None) => u != self.lower,
            (None, x) => x.is_none(),
        };
        ordered && exact_ok
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports always serialize")
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }
}

/// How Φ is evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum CountMethod {
    /// Brute force while `p^m` is under the enumeration cap, linear beyond.
    #[default]
    Auto,
    BruteForce,
    /// Kernel dimension over `Z/p`; `p` must be prime.
    Linear,
}

/// Φ for a vertex-free chart: `R_p` colorings fixed by both boundary actions.
pub fn chart_coloring_count(chart: &TorusCoveringChart, p: u64) -> Result<u64, UnknottingError> {
    chart_coloring_count_using(chart, p, CountMethod::Auto)
}

pub fn chart_coloring_count_using(
    chart: &TorusCoveringChart,
    p: u64,
    method: CountMethod,
) -> Result<u64, UnknottingError> {
    let words = [chart.v_braid(), chart.h_braid()];
    let brute = match method {
        CountMethod::Auto => check_cap(p as usize, chart.degree()).is_ok(),
        CountMethod::BruteForce => true,
        CountMethod::Linear => false,
    };
    if brute {
        let q = Quandle::dihedral(p)?;
        Ok(q.common_fixed_vectors(&words)?.len() as u64)
    } else {
        Ok(quandle::dihedral_common_fixed_count(p, &words)?)
    }
}

fn classical_count(beta: &BraidWord, p: u64, method: CountMethod) -> Result<u64, UnknottingError> {
    let brute = match method {
        CountMethod::Auto => check_cap(p as usize, beta.degree()).is_ok(),
        CountMethod::BruteForce => true,
        CountMethod::Linear => false,
    };
    if brute {
        Ok(Quandle::dihedral(p)?.coloring_count(beta)?)
    } else {
        Ok(quandle::dihedral_coloring_count_fast(p, beta)?)
    }
}

/// Exact `log_p(phi)`, or an error when `phi` is not a power of `p`.
fn log_exact(phi: u64, p: u64) -> Result<u32, UnknottingError> {
    let mut k = 0;
    let mut x = phi;
    while x > 1 && x.is_multiple_of(p) {
        x /= p;
        k += 1;
    }
    if x != 1 {
        return Err(UnknottingError::NotPowerOf { phi, p });
    }
    Ok(k)
}

/// `log_p(Φ) − 1` for a vertex-free chart describing a knot.
pub fn coloring_lower_bound(chart: &TorusCoveringChart, p: u64) -> Result<u32, UnknottingError> {
    coloring_lower_bound_using(chart, p, CountMethod::Auto)
}

pub fn coloring_lower_bound_using(
    chart: &TorusCoveringChart,
    p: u64,
    method: CountMethod,
) -> Result<u32, UnknottingError> {
    let components = chart.component_count()?;
    if components != 1 {
        return Err(UnknottingError::NotAKnot(components));
    }
    let phi = chart_coloring_count_using(chart, p, method)?;
    let k = log_exact(phi, p)?;
    if k == 0 {
        // constant colorings always survive
        return Err(UnknottingError::NotPowerOf { phi, p });
    }
    Ok(k - 1)
}

pub fn free_edge_upper_bound(chart: &TorusCoveringChart) -> Option<u32> {
    match chart.classify() {
        ChartClass::UnknottedPresentation => Some(0),
        ChartClass::VertexFree | ChartClass::OnlyFreeEdgesAndLoops => Some(chart.degree() as u32 - 1),
        ChartClass::General => None,
    }
}

/// Whether the horizontal boundary braid is `e`, `β` or `β⁻¹` in `B_m`,
/// the shapes for which Φ reduces to the colorings of `cl(β)`.
pub fn is_spun_shape(chart: &TorusCoveringChart) -> bool {
    let v = chart.v_braid();
    let h = chart.h_braid().left_canonical_form();
    h.is_identity() || h == v.left_canonical_form() || h == v.invert().left_canonical_form()
}

const BOUND_INEQUALITIES: &str = "turned-link relations (not computed): u(τ(S)) <= u_F(S), u(S) <= u_F(τ(S)), \
     u_F(S) = u_F(τ(S)), where u_F counts the free edges needed to unknot the chart";

pub fn unknotting_bounds(chart: &TorusCoveringChart) -> Result<BoundsReport, UnknottingError> {
    unknotting_bounds_using(chart, CountMethod::Auto)
}

pub fn unknotting_bounds_using(
    chart: &TorusCoveringChart,
    method: CountMethod,
) -> Result<BoundsReport, UnknottingError> {
    const P: u64 = 3;
    let mut notes = Vec::new();
    let class = chart.classify();
    let upper = free_edge_upper_bound(chart);
    notes.push(match upper {
        Some(0) => format!("upper 0: chart is {class}, a union of free edges presents an unknotted link"),
        Some(u) => format!("upper {u}: chart is {class}; adding m-1 = {u} free edges unknots it"),
        None => format!("no upper bound: chart is {class} (white vertices present)"),
    });

    let coloring_count = chart_coloring_count_using(chart, P, method)?;
    let lower = if chart.has_vertices() {
        notes.push("lower 0: the coloring bound needs a chart without vertices".into());
        0
    } else if chart.component_count()? != 1 {
        notes.push(format!(
            "lower 0: the coloring bound is knot-only, chart has {} components",
            chart.component_count()?
        ));
        0
    } else if is_spun_shape(chart) {
        let classical = classical_count(chart.v_braid(), P, method)?;
        if classical != coloring_count {
            return Err(UnknottingError::ReductionMismatch { chart: coloring_count, classical });
        }
        let lower = coloring_lower_bound_using(chart, P, method)?;
        notes.push(format!(
            "lower {lower}: Φ = {coloring_count} = 3^{} tri-colorings of cl(Γ^v); each 1-handle divides Φ by at most 3 and a trivial knot has 3",
            lower + 1
        ));
        lower
    } else {
        notes.push(format!(
            "lower 0: heuristic Φ = {coloring_count}; the coloring bound is only certified for spun and turned spun charts"
        ));
        0
    };

    if let Some(u) = upper {
        if lower > u {
            return Err(UnknottingError::Inconsistent { lower, upper: u });
        }
    }
    notes.push(BOUND_INEQUALITIES.into());
    let exact = upper.filter(|&u| u == lower);
    Ok(BoundsReport { lower, upper, exact, coloring_count, notes })
}

/// One 1-handle: the two identified arc positions and the surviving count.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurgeryOutcome {
    pub first: (usize, usize),
    pub second: (usize, usize),
    pub count: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurgeryExperiment {
    pub phi: u64,
    pub order: u64,
    pub outcomes: Vec<SurgeryOutcome>,
}

impl SurgeryExperiment {
    /// Every count is `Φ` or `Φ/p`.
    pub fn dichotomy_holds(&self) -> bool {
        self.outcomes.iter().all(|o| o.count == self.phi || o.count * self.order == self.phi)
    }

    pub fn distinct_counts(&self) -> BTreeSet<u64> {
        self.outcomes.iter().map(|o| o.count).collect()
    }
}

/// Colorings of a closed braid sampled at every arc position.
///
/// Positions are grouped by the diagram arc they lie on: at a crossing the
/// over-strand keeps its arc and the under-strand starts a new one, so two
/// positions on one arc always carry the same color.
#[derive(Debug, Clone)]
pub struct ArcColumns {
    pub positions: Vec<ArcPosition>,
    /// `class_of[i]` is the arc through `positions[i]`.
    pub class_of: Vec<usize>,
    pub arcs: usize,
    /// Row-major `phi × arcs`: the arc colors of each coloring.
    rows: Vec<u8>,
    pub phi: u64,
}

impl ArcColumns {
    /// Closed-braid grid positions: levels `0..k` (level `k` is level 0).
    #[allow(clippy::needless_range_loop)]
    pub fn build(q: &Quandle, w: &BraidWord) -> Result<Self, ColoringError> {
        check_cap(q.order(), w.degree())?;
        assert!(q.order() <= 256, "arc columns store colors as bytes");
        let m = w.degree();
        let letters = w.letters();
        let levels = letters.len().max(1);

        // arc ids per position; letter i creates a fresh arc at level i+1
        let mut current: Vec<usize> = (0..m).collect();
        let mut class_of = Vec::with_capacity(levels * m);
        let mut positions = Vec::with_capacity(levels * m);
        let mut fresh_slot = Vec::with_capacity(levels);
        let mut arcs = m;
        for level in 0..levels {
            for (j, &arc) in current.iter().enumerate() {
                positions.push(ArcPosition::new(level, j + 1));
                class_of.push(arc);
            }
            if level + 1 < levels {
                let l = letters[level];
                let i = l.index - 1;
                if l.inverse {
                    current[i + 1] = current[i];
                    current[i] = arcs;
                    fresh_slot.push(i);
                } else {
                    current[i] = current[i + 1];
                    current[i + 1] = arcs;
                    fresh_slot.push(i + 1);
                }
                arcs += 1;
            }
        }

        let mut fixed = Vec::new();
        let mut cur = vec![0usize; m];
        quandle::for_each_vector(q.order(), m, |start| {
            cur.copy_from_slice(start);
            for &l in letters {
                q.apply_letter(l, &mut cur);
            }
            if cur == start {
                fixed.extend_from_slice(start);
            }
        })?;

        let phi = fixed.len() / m;
        let mut rows = Vec::with_capacity(phi * arcs);
        for start in fixed.chunks_exact(m) {
            cur.copy_from_slice(start);
            rows.extend(start.iter().map(|&c| c as u8));
            for (level, &slot) in fresh_slot.iter().enumerate() {
                q.apply_letter(letters[level], &mut cur);
                rows.push(cur[slot] as u8);
            }
        }
        Ok(ArcColumns { positions, class_of, arcs, rows, phi: phi as u64 })
    }

    /// Colorings on which the two arcs agree.
    pub fn agreement(&self, a: usize, b: usize) -> u64 {
        if a == b {
            return self.phi;
        }
        self.rows.chunks_exact(self.arcs).filter(|r| r[a] == r[b]).count() as u64
    }

    /// The colors arc `a` takes, one per coloring.
    pub fn column(&self, a: usize) -> Vec<u8> {
        self.rows.chunks_exact(self.arcs).map(|r| r[a]).collect()
    }

    /// Counts over all distinct position pairs, without listing them.
    pub fn distinct_pair_counts(&self) -> BTreeSet<u64> {
        let mut out = BTreeSet::new();
        if self.arcs < self.positions.len() {
            out.insert(self.phi);
        }
        for a in 0..self.arcs {
            for b in a + 1..self.arcs {
                out.insert(self.agreement(a, b));
            }
        }
        out
    }
}

/// Adds one 1-handle at every unordered pair of arc positions of the
/// closed braid and records the constrained `R_p` count.
pub fn handle_surgery_experiment(w: &BraidWord, p: u64) -> Result<SurgeryExperiment, UnknottingError> {
    let q = Quandle::dihedral(p)?;
    let cols = ArcColumns::build(&q, w)?;
    let n = cols.positions.len();
    let mut outcomes = Vec::with_capacity(n * n.saturating_sub(1) / 2);
    for i in 0..n {
        for j in i + 1..n {
            let (a, b) = (cols.positions[i], cols.positions[j]);
            outcomes.push(SurgeryOutcome {
                first: (a.level, a.strand),
                second: (b.level, b.strand),
                count: cols.agreement(cols.class_of[i], cols.class_of[j]),
            });
        }
    }
    Ok(SurgeryExperiment { phi: cols.phi, order: p, outcomes })
}

/// Fewest arc identifications that bring the `q`-coloring count of the
/// closure down to `|X|` (the count of a trivial knot), searched
/// exhaustively up to `max_depth`.
pub fn minimum_handles_to_trivial(
    q: &Quandle,
    w: &BraidWord,
    max_depth: usize,
) -> Result<Option<usize>, ColoringError> {
    let cols = ArcColumns::build(q, w)?;
    let target = q.order() as u64;
    let phi = cols.phi as usize;
    let words = phi.div_ceil(64);
    let all: Vec<u64> =
        (0..words).map(|i| if (i + 1) * 64 <= phi { u64::MAX } else { (1u64 << (phi - i * 64)) - 1 }).collect();
    let popcount = |s: &[u64]| s.iter().map(|x| x.count_ones() as u64).sum::<u64>();

    let columns: Vec<Vec<u8>> = (0..cols.arcs).map(|a| cols.column(a)).collect();
    let mut masks = Vec::new();
    for a in 0..cols.arcs {
        for b in a + 1..cols.arcs {
            let mut m = vec![0u64; words];
            for (t, (x, y)) in columns[a].iter().zip(&columns[b]).enumerate() {
                if x == y {
                    m[t / 64] |= 1 << (t % 64);
                }
            }
            masks.push(m);
        }
    }

    let mut frontier: HashSet<Vec<u64>> = HashSet::from([all]);
    for depth in 0..=max_depth {
        if frontier.iter().any(|s| popcount(s) <= target) {
            return Ok(Some(depth));
        }
        let mut next = HashSet::new();
        for s in &frontier {
            for m in &masks {
                let t: Vec<u64> = s.iter().zip(m).map(|(x, y)| x & y).collect();
                if t != *s {
                    next.insert(t);
                }
            }
        }
        frontier = next;
    }
    Ok(None)
}
