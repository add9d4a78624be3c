//! Torus-covering charts stored abstractly: degree, the two boundary braids
//! and decoration counts. No planar embedding is kept.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::braid::{BraidError, BraidWord};
use crate::perm::orbit_count;

#[derive(Debug, Error)]
pub enum ChartError {
    #[error(transparent)]
    Braid(#[from] BraidError),
    #[error("invariant `boundary degree`: v_braid has degree {v}, h_braid has degree {h}, chart degree is {chart}")]
    DegreeMismatch { chart: usize, v: usize, h: usize },
    #[error("invariant `label range`: {kind} label {label} is outside 1..={max}")]
    LabelOutOfRange { kind: &'static str, label: usize, max: usize },
    #[error("invariant `boundary braids commute`: Γ^v = {v} and Γ^h = {h} do not commute and the chart has no black vertices")]
    NonCommuting { v: String, h: String },
    #[error("invariant `free edge endpoints`: {free_edges} free edges need at least {} black vertices, got {black}", 2 * .free_edges)]
    TooFewBlackVertices { free_edges: usize, black: usize },
    #[error("turning is only defined here for charts without vertices (black = {black}, white = {white})")]
    HasVertices { black: usize, white: usize },
    #[error("gluing matrix has determinant {0}, not ±1")]
    NotUnimodular(i64),
    #[error("invalid chart document: {0}")]
    Document(#[from] serde_json::Error),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TorusCoveringChart {
    degree: usize,
    v_braid: BraidWord,
    h_braid: BraidWord,
    free_edges: Vec<usize>,
    loops: Vec<usize>,
    black_vertices: usize,
    white_vertices: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ChartClass {
    UnknottedPresentation,
    VertexFree,
    OnlyFreeEdgesAndLoops,
    General,
}

impl fmt::Display for ChartClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ChartClass::UnknottedPresentation => "unknotted_presentation",
            ChartClass::VertexFree => "vertex_free",
            ChartClass::OnlyFreeEdgesAndLoops => "only_free_edges_and_loops",
            ChartClass::General => "general",
        })
    }
}

impl TorusCoveringChart {
    pub fn new(
        degree: usize,
        v_braid: BraidWord,
        h_braid: BraidWord,
        free_edges: Vec<usize>,
        loops: Vec<usize>,
        black_vertices: usize,
        white_vertices: usize,
    ) -> Result<Self, ChartError> {
        if degree == 0 {
            return Err(BraidError::ZeroDegree(0).into());
        }
        if v_braid.degree() != degree || h_braid.degree() != degree {
            return Err(ChartError::DegreeMismatch { chart: degree, v: v_braid.degree(), h: h_braid.degree() });
        }
        for (kind, labels) in [("free edge", &free_edges), ("loop", &loops)] {
            if let Some(&label) = labels.iter().find(|&&l| l == 0 || l >= degree) {
                return Err(ChartError::LabelOutOfRange { kind, label, max: degree - 1 });
            }
        }
        if black_vertices < 2 * free_edges.len() {
            return Err(ChartError::TooFewBlackVertices { free_edges: free_edges.len(), black: black_vertices });
        }
        if black_vertices == 0 && !v_braid.commutes_with(&h_braid)? {
            return Err(ChartError::NonCommuting { v: v_braid.to_string(), h: h_braid.to_string() });
        }
        Ok(TorusCoveringChart { degree, v_braid, h_braid, free_edges, loops, black_vertices, white_vertices })
    }

    /// Vertex-free chart with the given boundary braids.
    pub fn from_braids(v_braid: BraidWord, h_braid: BraidWord) -> Result<Self, ChartError> {
        Self::new(v_braid.degree(), v_braid, h_braid, Vec::new(), Vec::new(), 0, 0)
    }

    /// Spun `T²`-link of `cl(β)`: boundary braids `(β, e)`.
    pub fn spun(beta: &BraidWord) -> Self {
        let e = BraidWord::identity(beta.degree()).expect("degree of an existing word is positive");
        Self::trusted(beta.clone(), e)
    }

    /// Turned spun `T²`-link of `cl(β)`: boundary braids `(β, β)`.
    pub fn turned_spun(beta: &BraidWord) -> Self {
        Self::trusted(beta.clone(), beta.clone())
    }

    /// The `(β, β⁻¹)` presentation of the turned spun link.
    pub fn turned_spun_inverse(beta: &BraidWord) -> Self {
        Self::trusted(beta.clone(), beta.invert())
    }

    /// Symmetry-spun chart: boundary braids `(β², β)`.
    pub fn symmetry_spun(beta: &BraidWord) -> Self {
        Self::trusted(beta.pow(2), beta.clone())
    }

    // The pair is a pair of powers of one braid, so commutation holds.
    fn trusted(v_braid: BraidWord, h_braid: BraidWord) -> Self {
        TorusCoveringChart {
            degree: v_braid.degree(),
            v_braid,
            h_braid,
            free_edges: Vec::new(),
            loops: Vec::new(),
            black_vertices: 0,
            white_vertices: 0,
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn v_braid(&self) -> &BraidWord {
        &self.v_braid
    }

    pub fn h_braid(&self) -> &BraidWord {
        &self.h_braid
    }

    pub fn free_edges(&self) -> &[usize] {
        &self.free_edges
    }

    pub fn loops(&self) -> &[usize] {
        &self.loops
    }

    pub fn black_vertices(&self) -> usize {
        self.black_vertices
    }

    pub fn white_vertices(&self) -> usize {
        self.white_vertices
    }

    pub fn has_vertices(&self) -> bool {
        self.black_vertices > 0 || self.white_vertices > 0
    }

    /// Boundary braids `(v, h) ↦ (v, h·v)`. Loops are carried over unchanged.
    pub fn turn(&self) -> Result<Self, ChartError> {
        self.require_vertex_free()?;
        let h = self.h_braid.concat(&self.v_braid)?;
        Ok(TorusCoveringChart { h_braid: h, ..self.clone() })
    }

    /// Orbits of `⟨perm(v), perm(h)⟩` on the `m` sheets.
    pub fn component_count(&self) -> Result<usize, ChartError> {
        self.require_vertex_free()?;
        Ok(orbit_count(self.degree, &[self.v_braid.permutation(), self.h_braid.permutation()]))
    }

    pub fn classify(&self) -> ChartClass {
        if self.boundary_is_trivial()
            && self.loops.is_empty()
            && self.white_vertices == 0
            && self.black_vertices == 2 * self.free_edges.len()
        {
            ChartClass::UnknottedPresentation
        } else if !self.has_vertices() && self.free_edges.is_empty() && self.loops.is_empty() {
            ChartClass::VertexFree
        } else if self.white_vertices == 0 {
            ChartClass::OnlyFreeEdgesAndLoops
        } else {
            ChartClass::General
        }
    }

    fn boundary_is_trivial(&self) -> bool {
        self.v_braid.left_canonical_form().is_identity() && self.h_braid.left_canonical_form().is_identity()
    }

    fn require_vertex_free(&self) -> Result<(), ChartError> {
        if self.has_vertices() {
            return Err(ChartError::HasVertices { black: self.black_vertices, white: self.white_vertices });
        }
        Ok(())
    }

    pub fn to_document(&self) -> ChartDocument {
        ChartDocument {
            degree: self.degree,
            v_braid: self.v_braid.to_string(),
            h_braid: self.h_braid.to_string(),
            free_edges: self.free_edges.clone(),
            loops: self.loops.clone(),
            black_vertices: self.black_vertices,
            white_vertices: self.white_vertices,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_document()).expect("chart documents always serialize")
    }

    pub fn from_json(text: &str) -> Result<Self, ChartError> {
        let doc: ChartDocument = serde_json::from_str(text)?;
        doc.into_chart()
    }
}

impl fmt::Display for TorusCoveringChart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "degree {}: Γ^v = {}, Γ^h = {}, free edges {:?}, loops {:?}, black {}, white {}",
            self.degree,
            self.v_braid,
            self.h_braid,
            self.free_edges,
            self.loops,
            self.black_vertices,
            self.white_vertices
        )
    }
}

/// On-disk chart format (JSON).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChartDocument {
    pub degree: usize,
    pub v_braid: String,
    pub h_braid: String,
    #[serde(default)]
    pub free_edges: Vec<usize>,
    #[serde(default)]
    pub loops: Vec<usize>,
    #[serde(default)]
    pub black_vertices: usize,
    #[serde(default)]
    pub white_vertices: usize,
}

impl ChartDocument {
    pub fn into_chart(self) -> Result<TorusCoveringChart, ChartError> {
        let v = BraidWord::parse(&self.v_braid, self.degree)?;
        let h = BraidWord::parse(&self.h_braid, self.degree)?;
        TorusCoveringChart::new(
            self.degree,
            v,
            h,
            self.free_edges,
            self.loops,
            self.black_vertices,
            self.white_vertices,
        )
    }
}

/// An element of `GL(3, Z)` acting on the basis `(l, s, r)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GluingMatrix(pub [[i64; 3]; 3]);

impl GluingMatrix {
    pub const IDENTITY: GluingMatrix = GluingMatrix([[1, 0, 0], [0, 1, 0], [0, 0, 1]]);

    /// The regluing used to build turned torus-covering links.
    pub const TURNING: GluingMatrix = GluingMatrix([[1, 0, 0], [0, 1, 1], [0, 0, 1]]);

    pub fn new(rows: [[i64; 3]; 3]) -> Result<Self, ChartError> {
        let m = GluingMatrix(rows);
        match m.determinant() {
            1 | -1 => Ok(m),
            d => Err(ChartError::NotUnimodular(d)),
        }
    }

    pub fn determinant(&self) -> i64 {
        let a = &self.0;
        a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0])
            + a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0])
    }

    pub fn mul(&self, other: &GluingMatrix) -> GluingMatrix {
        let mut out = [[0i64; 3]; 3];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                *cell = (0..3).map(|k| self.0[i][k] * other.0[k][j]).sum();
            }
        }
        GluingMatrix(out)
    }

    pub fn pow(&self, k: u32) -> GluingMatrix {
        (0..k).fold(Self::IDENTITY, |acc, _| acc.mul(self))
    }

    /// Inverse via the adjugate; exact since the determinant is ±1.
    pub fn inverse(&self) -> Result<GluingMatrix, ChartError> {
        let d = self.determinant();
        if d.abs() != 1 {
            return Err(ChartError::NotUnimodular(d));
        }
        let a = &self.0;
        let cof = |r: usize, c: usize| {
            let rs: Vec<usize> = (0..3).filter(|&x| x != r).collect();
            let cs: Vec<usize> = (0..3).filter(|&x| x != c).collect();
            let minor = a[rs[0]][cs[0]] * a[rs[1]][cs[1]] - a[rs[0]][cs[1]] * a[rs[1]][cs[0]];
            if (r + c).is_multiple_of(2) {
                minor
            } else {
                -minor
            }
        };
        let mut inv = [[0i64; 3]; 3];
        for (i, row) in inv.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                *cell = cof(j, i) * d;
            }
        }
        Ok(GluingMatrix(inv))
    }

    /// Whether the regluing extends over the complement: first row `(±1, 0, 0)`,
    /// lower-right block `(α γ; β δ)` unimodular with `α + β + γ + δ` even.
    pub fn is_extendable(&self) -> Result<bool, ChartError> {
        let d = self.determinant();
        if d.abs() != 1 {
            return Err(ChartError::NotUnimodular(d));
        }
        let a = &self.0;
        if a[0][0].abs() != 1 || a[0][1] != 0 || a[0][2] != 0 {
            return Ok(false);
        }
        let (alpha, gamma, beta, delta) = (a[1][1], a[1][2], a[2][1], a[2][2]);
        let block_det = alpha * delta - gamma * beta;
        Ok(block_det.abs() == 1 && (alpha + beta + gamma + delta).rem_euclid(2) == 0)
    }
}

pub fn is_extendable(m: &GluingMatrix) -> Result<bool, ChartError> {
    m.is_extendable()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(deg: usize, gens: &[i64]) -> BraidWord {
        BraidWord::from_signed(deg, gens).unwrap()
    }

    #[test]
    fn new_chart_examples() {
        let spun = TorusCoveringChart::new(2, w(2, &[1, 1, 1]), w(2, &[]), vec![], vec![], 0, 0).unwrap();
        assert_eq!(spun, TorusCoveringChart::spun(&w(2, &[1, 1, 1])));

        let err = TorusCoveringChart::new(3, w(3, &[1]), w(3, &[2]), vec![], vec![], 0, 0).unwrap_err();
        assert!(matches!(err, ChartError::NonCommuting { .. }));
        assert!(err.to_string().contains("boundary braids commute"));

        assert!(TorusCoveringChart::new(2, w(2, &[]), w(2, &[]), vec![1], vec![], 2, 0).is_ok());
    }

    #[test]
    fn new_chart_errors() {
        let e3 = w(3, &[]);
        assert!(matches!(
            TorusCoveringChart::new(2, e3.clone(), w(2, &[]), vec![], vec![], 0, 0),
            Err(ChartError::DegreeMismatch { .. })
        ));
        assert!(matches!(
            TorusCoveringChart::new(3, e3.clone(), e3.clone(), vec![3], vec![], 2, 0),
            Err(ChartError::LabelOutOfRange { label: 3, .. })
        ));
        assert!(matches!(
            TorusCoveringChart::new(3, e3.clone(), e3.clone(), vec![], vec![0], 0, 0),
            Err(ChartError::LabelOutOfRange { kind: "loop", .. })
        ));
        assert!(matches!(
            TorusCoveringChart::new(3, e3.clone(), e3, vec![1, 2], vec![], 3, 0),
            Err(ChartError::TooFewBlackVertices { .. })
        ));
        // black vertices lift the commutation requirement
        assert!(TorusCoveringChart::new(3, w(3, &[1]), w(3, &[2]), vec![], vec![], 1, 0).is_ok());
    }

    #[test]
    fn constructors() {
        let b = w(2, &[1, 1, 1]);
        let ts = TorusCoveringChart::turned_spun(&b);
        assert_eq!((ts.v_braid(), ts.h_braid()), (&b, &b));
        let sym = TorusCoveringChart::symmetry_spun(&w(2, &[1]));
        assert_eq!(sym.v_braid(), &w(2, &[1, 1]));
        assert_eq!(sym.h_braid(), &w(2, &[1]));
        assert_eq!(TorusCoveringChart::symmetry_spun(&b).v_braid(), &w(2, &[1; 6]));
        let chain = BraidWord::cubed_chain(2);
        assert_eq!(TorusCoveringChart::spun(&chain).degree(), 3);
        let inv = TorusCoveringChart::turned_spun_inverse(&b);
        assert_eq!(inv.h_braid(), &w(2, &[-1, -1, -1]));
    }

    #[test]
    fn turn_examples() {
        let b = w(2, &[1, 1, 1]);
        assert_eq!(TorusCoveringChart::spun(&b).turn().unwrap(), TorusCoveringChart::turned_spun(&b));
        let e = TorusCoveringChart::spun(&w(2, &[]));
        assert_eq!(e.turn().unwrap(), e);
        let t = TorusCoveringChart::symmetry_spun(&b).turn().unwrap();
        assert_eq!(t.h_braid(), &w(2, &[1; 9]));
        assert!(t.v_braid().commutes_with(t.h_braid()).unwrap());

        let with_edge = TorusCoveringChart::new(2, w(2, &[]), w(2, &[]), vec![1], vec![], 2, 0).unwrap();
        assert!(matches!(with_edge.turn(), Err(ChartError::HasVertices { .. })));
    }

    #[test]
    fn matrix_gate() {
        assert!(GluingMatrix::IDENTITY.is_extendable().unwrap());
        assert!(!GluingMatrix::TURNING.is_extendable().unwrap());
        let tau2 = GluingMatrix::TURNING.pow(2);
        assert_eq!(tau2, GluingMatrix([[1, 0, 0], [0, 1, 2], [0, 0, 1]]));
        assert!(tau2.is_extendable().unwrap());
        assert!(matches!(
            GluingMatrix([[2, 0, 0], [0, 1, 0], [0, 0, 1]]).is_extendable(),
            Err(ChartError::NotUnimodular(2))
        ));
        assert!(GluingMatrix::new([[1, 1, 0], [0, 1, 0], [0, 0, 1]]).is_ok());
        // first row must be (±1, 0, 0)
        assert!(!GluingMatrix([[1, 1, 0], [0, 1, 0], [0, 0, 1]]).is_extendable().unwrap());
        assert!(GluingMatrix([[-1, 0, 0], [5, 0, 1], [3, 1, 0]]).is_extendable().unwrap());
    }

    #[test]
    fn inverse_matrix() {
        let m = GluingMatrix([[1, 0, 0], [4, 2, 1], [-3, 1, 1]]);
        assert_eq!(m.mul(&m.inverse().unwrap()), GluingMatrix::IDENTITY);
    }

    #[test]
    fn components() {
        assert_eq!(TorusCoveringChart::spun(&w(2, &[1, 1, 1])).component_count().unwrap(), 1);
        assert_eq!(TorusCoveringChart::spun(&w(4, &[])).component_count().unwrap(), 4);
        for n in 1..6 {
            let c = TorusCoveringChart::spun(&BraidWord::cubed_chain(n));
            assert_eq!(c.component_count().unwrap(), 1);
        }
        // σ₁ and σ₃ in B_4 generate two orbits {1,2}, {3,4}
        let c = TorusCoveringChart::from_braids(w(4, &[1]), w(4, &[3])).unwrap();
        assert_eq!(c.component_count().unwrap(), 2);
    }

    #[test]
    fn classification() {
        let free = TorusCoveringChart::new(2, w(2, &[]), w(2, &[]), vec![1], vec![], 2, 0).unwrap();
        assert_eq!(free.classify(), ChartClass::UnknottedPresentation);
        assert_eq!(TorusCoveringChart::spun(&w(2, &[1, 1, 1])).classify(), ChartClass::VertexFree);
        let loops = TorusCoveringChart::new(3, w(3, &[]), w(3, &[]), vec![], vec![1], 0, 0).unwrap();
        assert_eq!(loops.classify(), ChartClass::OnlyFreeEdgesAndLoops);
        let white = TorusCoveringChart::new(3, w(3, &[]), w(3, &[]), vec![], vec![], 0, 1).unwrap();
        assert_eq!(white.classify(), ChartClass::General);
        // σ₁σ₁⁻¹ is the trivial braid
        let trivial = TorusCoveringChart::from_braids(w(2, &[1, -1]), w(2, &[])).unwrap();
        assert_eq!(trivial.classify(), ChartClass::UnknottedPresentation);
    }

    #[test]
    fn document_roundtrip_and_validation() {
        let c = TorusCoveringChart::new(3, w(3, &[1, 1, 1, 2, 2, 2]), w(3, &[]), vec![2], vec![1], 2, 0).unwrap();
        let back = TorusCoveringChart::from_json(&c.to_json()).unwrap();
        assert_eq!(back, c);

        let bad = r#"{"degree": 3, "v_braid": "s1", "h_braid": "s2"}"#;
        assert!(matches!(TorusCoveringChart::from_json(bad), Err(ChartError::NonCommuting { .. })));
        let unknown = r#"{"degree": 2, "v_braid": "e", "h_braid": "e", "colour": 1}"#;
        assert!(matches!(TorusCoveringChart::from_json(unknown), Err(ChartError::Document(_))));
    }
}
