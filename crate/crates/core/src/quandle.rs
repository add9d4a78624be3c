//! Finite quandles and colorings of closed braids.
//!
//! Strand colors are propagated down the braid one letter at a time:
//! `σ_i` sends `(c_i, c_{i+1})` to `(c_{i+1}, c_i * c_{i+1})` and `σ_i⁻¹`
//! sends `(c_i, c_{i+1})` to `(c_{i+1} *̄ c_i, c_i)`, where `*̄` undoes the
//! right translation. A coloring of the closure is a level-0 vector that
//! returns to itself at the bottom.

use std::fmt;

use thiserror::Error;

use crate::braid::{BraidWord, Letter};
use crate::gfp::{is_prime, ModMatrix};

/// Largest `|X|^m` the brute-force enumerators will visit.
pub const ENUMERATION_CAP: u64 = 100_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QuandleError {
    #[error("quandle table is not square: row {row} has {len} entries, expected {order}")]
    NonSquare { row: usize, len: usize, order: usize },
    #[error("quandle table entry {value} at ({a}, {b}) is outside 0..{order}")]
    EntryOutOfRange { a: usize, b: usize, value: usize, order: usize },
    #[error("quandle table is empty")]
    Empty,
    #[error("quandle axioms violated: {}", .0.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; "))]
    Axioms(Vec<AxiomViolation>),
    #[error("dihedral quandle needs p >= 3, got {0}")]
    DihedralOrder(u64),
    #[error("the kernel-dimension fast path needs a prime modulus, got {0}")]
    NotPrime(u64),
    #[error("cannot parse quandle table: {0}")]
    Parse(String),
    #[error("coloring count {p}^{exponent} does not fit in 64 bits")]
    CountOverflow { p: u64, exponent: u32 },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ColoringError {
    #[error("color vector has length {got}, braid has {expected} strands")]
    LengthMismatch { expected: usize, got: usize },
    #[error("color {0} is not an element of the quandle")]
    ColorOutOfRange(usize),
    #[error("brute-force enumeration cap exceeded: {order}^{strands} > {ENUMERATION_CAP}")]
    CapExceeded { order: usize, strands: usize },
    #[error("arc position (level {level}, strand {strand}) is outside the {levels}x{strands} grid")]
    PositionOutOfRange { level: usize, strand: usize, levels: usize, strands: usize },
}

/// A failed instance of one of the three quandle axioms.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AxiomViolation {
    /// `a * a != a`.
    Idempotence { a: usize },
    /// `x ↦ x * b` is not a bijection; `a` has no unique preimage.
    RightInvertibility { a: usize, b: usize },
    /// `(a*b)*c != (a*c)*(b*c)`.
    SelfDistributivity { a: usize, b: usize, c: usize },
}

impl fmt::Display for AxiomViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            AxiomViolation::Idempotence { a } => write!(f, "axiom (i) idempotence fails at a={a}"),
            AxiomViolation::RightInvertibility { a, b } => {
                write!(f, "axiom (ii) right invertibility fails: no unique c with c*{b}={a}")
            }
            AxiomViolation::SelfDistributivity { a, b, c } => {
                write!(f, "axiom (iii) self-distributivity fails at a={a}, b={b}, c={c}")
            }
        }
    }
}

/// Checks all three axioms; an empty list means `table` is a quandle.
#[allow(clippy::needless_range_loop)]
pub fn validate_quandle(table: &[Vec<usize>]) -> Result<Vec<AxiomViolation>, QuandleError> {
    let n = table.len();
    check_shape(table)?;
    let mut out = Vec::new();
    for a in 0..n {
        if table[a][a] != a {
            out.push(AxiomViolation::Idempotence { a });
        }
    }
    for b in 0..n {
        let mut hits = vec![0usize; n];
        for row in table {
            hits[row[b]] += 1;
        }
        for (a, &h) in hits.iter().enumerate() {
            if h != 1 {
                out.push(AxiomViolation::RightInvertibility { a, b });
            }
        }
    }
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                if table[table[a][b]][c] != table[table[a][c]][table[b][c]] {
                    out.push(AxiomViolation::SelfDistributivity { a, b, c });
                }
            }
        }
    }
    Ok(out)
}

fn check_shape(table: &[Vec<usize>]) -> Result<(), QuandleError> {
    let n = table.len();
    if n == 0 {
        return Err(QuandleError::Empty);
    }
    for (row, r) in table.iter().enumerate() {
        if r.len() != n {
            return Err(QuandleError::NonSquare { row, len: r.len(), order: n });
        }
        if let Some((b, &value)) = r.iter().enumerate().find(|(_, &v)| v >= n) {
            return Err(QuandleError::EntryOutOfRange { a: row, b, value, order: n });
        }
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Quandle {
    order: usize,
    table: Vec<usize>,
    inverse: Vec<usize>,
    /// `Some(p)` for the dihedral quandle `R_p`.
    dihedral: Option<u64>,
}

impl Quandle {
    pub fn from_table(table: Vec<Vec<usize>>) -> Result<Self, QuandleError> {
        let violations = validate_quandle(&table)?;
        if !violations.is_empty() {
            return Err(QuandleError::Axioms(violations));
        }
        let order = table.len();
        let flat: Vec<usize> = table.into_iter().flatten().collect();
        let mut inverse = vec![0; order * order];
        for a in 0..order {
            for b in 0..order {
                inverse[flat[a * order + b] * order + b] = a;
            }
        }
        Ok(Quandle { order, table: flat, inverse, dihedral: None })
    }

    /// `R_p`: `Z/p` with `a * b = 2b − a`.
    pub fn dihedral(p: u64) -> Result<Self, QuandleError> {
        if p < 3 {
            return Err(QuandleError::DihedralOrder(p));
        }
        let n = p as usize;
        let table = (0..n).map(|a| (0..n).map(|b| (2 * b + n - a) % n).collect()).collect();
        let mut q = Self::from_table(table)?;
        q.dihedral = Some(p);
        Ok(q)
    }

    /// `a * b = a`.
    pub fn trivial(order: usize) -> Result<Self, QuandleError> {
        Self::from_table((0..order).map(|a| vec![a; order]).collect())
    }

    /// First line the order `n`, then `n` rows of `n` integers.
    pub fn parse(text: &str) -> Result<Self, QuandleError> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
        let header = lines.next().ok_or_else(|| QuandleError::Parse("missing order line".into()))?;
        let order: usize = header.parse().map_err(|_| QuandleError::Parse(format!("bad order line {header:?}")))?;
        let mut table = Vec::with_capacity(order);
        for line in lines {
            let row = line
                .split_whitespace()
                .map(|t| t.parse::<usize>())
                .collect::<Result<Vec<_>, _>>()
                .map_err(|e| QuandleError::Parse(format!("row {}: {e}", table.len())))?;
            table.push(row);
        }
        if table.len() != order {
            return Err(QuandleError::Parse(format!("expected {order} rows, found {}", table.len())));
        }
        Self::from_table(table)
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("{}\n", self.order);
        for a in 0..self.order {
            let row: Vec<String> = (0..self.order).map(|b| self.op(a, b).to_string()).collect();
            s.push_str(&row.join(" "));
            s.push('\n');
        }
        s
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn dihedral_modulus(&self) -> Option<u64> {
        self.dihedral
    }

    #[inline]
    pub fn op(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b]
    }

    /// The unique `c` with `c * b = a`.
    #[inline]
    pub fn inv_op(&self, a: usize, b: usize) -> usize {
        self.inverse[a * self.order + b]
    }

    #[inline]
    pub fn apply_letter(&self, letter: Letter, colors: &mut [usize]) {
        let i = letter.index - 1;
        let (a, b) = (colors[i], colors[i + 1]);
        if letter.inverse {
            colors[i] = self.inv_op(b, a);
            colors[i + 1] = a;
        } else {
            colors[i] = b;
            colors[i + 1] = self.op(a, b);
        }
    }

    pub fn crossing_action(&self, word: &BraidWord, colors: &[usize]) -> Result<Vec<usize>, ColoringError> {
        self.check_vector(word, colors)?;
        let mut c = colors.to_vec();
        for &l in word.letters() {
            self.apply_letter(l, &mut c);
        }
        Ok(c)
    }

    fn check_vector(&self, word: &BraidWord, colors: &[usize]) -> Result<(), ColoringError> {
        if colors.len() != word.degree() {
            return Err(ColoringError::LengthMismatch { expected: word.degree(), got: colors.len() });
        }
        if let Some(&bad) = colors.iter().find(|&&c| c >= self.order) {
            return Err(ColoringError::ColorOutOfRange(bad));
        }
        Ok(())
    }

    /// Number of colorings of the closure of `word`.
    pub fn coloring_count(&self, word: &BraidWord) -> Result<u64, ColoringError> {
        let mut count = 0;
        let mut scratch = vec![0; word.degree()];
        for_each_vector(self.order, word.degree(), |start| {
            scratch.copy_from_slice(start);
            for &l in word.letters() {
                self.apply_letter(l, &mut scratch);
            }
            if scratch == start {
                count += 1;
            }
        })?;
        Ok(count)
    }

    /// Level-0 vectors fixed by every word in `words` (all of one degree).
    pub fn common_fixed_vectors(&self, words: &[&BraidWord]) -> Result<Vec<Vec<usize>>, ColoringError> {
        let m = words.first().map_or(0, |w| w.degree());
        let mut out = Vec::new();
        let mut scratch = vec![0; m];
        for_each_vector(self.order, m, |start| {
            let fixed = words.iter().all(|w| {
                scratch.copy_from_slice(start);
                for &l in w.letters() {
                    self.apply_letter(l, &mut scratch);
                }
                scratch == start
            });
            if fixed {
                out.push(start.to_vec());
            }
        })?;
        Ok(out)
    }
}

/// Visits every vector of `{0..order}^len` in lexicographic order.
pub fn for_each_vector(order: usize, len: usize, mut f: impl FnMut(&[usize])) -> Result<(), ColoringError> {
    check_cap(order, len)?;
    let mut v = vec![0usize; len];
    loop {
        f(&v);
        let mut j = len;
        loop {
            if j == 0 {
                return Ok(());
            }
            j -= 1;
            v[j] += 1;
            if v[j] < order {
                break;
            }
            v[j] = 0;
        }
    }
}

pub fn check_cap(order: usize, strands: usize) -> Result<u64, ColoringError> {
    let mut total: u64 = 1;
    for _ in 0..strands {
        total = total.saturating_mul(order as u64);
        if total > ENUMERATION_CAP {
            return Err(ColoringError::CapExceeded { order, strands });
        }
    }
    Ok(total)
}

pub fn dihedral(p: u64) -> Result<Quandle, QuandleError> {
    Quandle::dihedral(p)
}

pub fn coloring_count(q: &Quandle, word: &BraidWord) -> Result<u64, ColoringError> {
    q.coloring_count(word)
}

/// Matrix over `Z/p` of the `R_p` crossing action of `word`.
pub fn dihedral_action_matrix(p: u64, word: &BraidWord) -> ModMatrix {
    let m = word.degree();
    let mut mat = ModMatrix::identity(p, m);
    for l in word.letters() {
        let i = l.index - 1;
        for c in 0..m {
            let (a, b) = (mat.get(i, c), mat.get(i + 1, c));
            if l.inverse {
                mat.set(i, c, 2 * a + p - b);
                mat.set(i + 1, c, a);
            } else {
                mat.set(i, c, b);
                mat.set(i + 1, c, 2 * b + p - a);
            }
        }
    }
    mat
}

/// `R_p` coloring count as `p^dim ker(M − I)`, `p` prime.
pub fn dihedral_coloring_count_fast(p: u64, word: &BraidWord) -> Result<u64, QuandleError> {
    dihedral_common_fixed_count(p, &[word])
}

/// `R_p` count of vectors fixed by every word at once, `p` prime.
pub fn dihedral_common_fixed_count(p: u64, words: &[&BraidWord]) -> Result<u64, QuandleError> {
    let exponent = dihedral_fixed_dimension(p, words)?;
    p.checked_pow(exponent).ok_or(QuandleError::CountOverflow { p, exponent })
}

/// Dimension over `Z/p` of the space of vectors fixed by every word.
pub fn dihedral_fixed_dimension(p: u64, words: &[&BraidWord]) -> Result<u32, QuandleError> {
    if p < 3 {
        return Err(QuandleError::DihedralOrder(p));
    }
    if !is_prime(p) {
        return Err(QuandleError::NotPrime(p));
    }
    let m = words.first().map_or(0, |w| w.degree());
    let stacked = words
        .iter()
        .map(|w| dihedral_action_matrix(p, w).minus_identity())
        .reduce(|acc, x| acc.stack(&x))
        .unwrap_or_else(|| ModMatrix::zeros(p, 0, m));
    Ok(stacked.kernel_dim() as u32)
}

/// A point on the braid diagram: strand `strand` (1-based) just below the
/// first `level` letters. Level `k` is glued back to level 0 by the closure.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ArcPosition {
    pub level: usize,
    pub strand: usize,
}

impl ArcPosition {
    pub fn new(level: usize, strand: usize) -> Self {
        ArcPosition { level, strand }
    }
}

impl fmt::Display for ArcPosition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.level, self.strand)
    }
}

/// Colorings of a closed braid with extra arc-equality constraints.
#[derive(Debug, Clone)]
pub struct ColoringSystem {
    quandle: Quandle,
    word: BraidWord,
    constraints: Vec<(ArcPosition, ArcPosition)>,
}

impl ColoringSystem {
    pub fn new(quandle: Quandle, word: BraidWord) -> Self {
        ColoringSystem { quandle, word, constraints: Vec::new() }
    }

    pub fn with_constraints(
        quandle: Quandle,
        word: BraidWord,
        constraints: Vec<(ArcPosition, ArcPosition)>,
    ) -> Result<Self, ColoringError> {
        let mut sys = Self::new(quandle, word);
        for (a, b) in constraints {
            sys.add_constraint(a, b)?;
        }
        Ok(sys)
    }

    pub fn add_constraint(&mut self, a: ArcPosition, b: ArcPosition) -> Result<(), ColoringError> {
        self.check_position(a)?;
        self.check_position(b)?;
        self.constraints.push((a, b));
        Ok(())
    }

    pub fn constraints(&self) -> &[(ArcPosition, ArcPosition)] {
        &self.constraints
    }

    pub fn word(&self) -> &BraidWord {
        &self.word
    }

    pub fn quandle(&self) -> &Quandle {
        &self.quandle
    }

    fn check_position(&self, pos: ArcPosition) -> Result<(), ColoringError> {
        let (levels, strands) = (self.word.len() + 1, self.word.degree());
        if pos.level >= levels || pos.strand == 0 || pos.strand > strands {
            return Err(ColoringError::PositionOutOfRange { level: pos.level, strand: pos.strand, levels, strands });
        }
        Ok(())
    }

    /// Colorings of the closure that also satisfy every constraint.
    pub fn count(&self) -> Result<u64, ColoringError> {
        let m = self.word.degree();
        let k = self.word.len();
        let mut grid = vec![0usize; (k + 1) * m];
        let mut count = 0;
        for_each_vector(self.quandle.order(), m, |start| {
            grid[..m].copy_from_slice(start);
            for (lvl, &l) in self.word.letters().iter().enumerate() {
                let (done, rest) = grid.split_at_mut((lvl + 1) * m);
                let next = &mut rest[..m];
                next.copy_from_slice(&done[lvl * m..]);
                self.quandle.apply_letter(l, next);
            }
            if grid[k * m..] != grid[..m] {
                return;
            }
            let at = |p: ArcPosition| grid[p.level * m + p.strand - 1];
            if self.constraints.iter().all(|&(a, b)| at(a) == at(b)) {
                count += 1;
            }
        })?;
        Ok(count)
    }
}

pub fn constrained_count(sys: &ColoringSystem) -> Result<u64, ColoringError> {
    sys.count()
}
