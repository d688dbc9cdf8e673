//! Finite algebras given by explicit operation tables.
//!
//! Every model in the workbench is a [`FiniteAlgebra`]: a carrier `{0..n-1}`
//! with display labels, up to four binary tables (meet, join, multiplication,
//! implication), two unary tables (negation, exponential) and four constants.
//! The partial order is never stored separately; it is read off the meet
//! table (`a <= b` iff `a /\ b = a`).

mod elemset;
pub mod format;
mod iso;
mod profile;

pub use elemset::ElemSet;
pub use iso::{canonical_form, canonical_key, is_isomorphic};
pub use profile::{check_profile, CheckReport, Profile, Violation};

use std::fmt;

use thiserror::Error;

/// Index of a carrier element.
pub type Elem = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("algebra must have at least one element")]
    Empty,
    #[error("expected {expected} labels, found {found}")]
    LabelCount { expected: usize, found: usize },
    #[error("invalid element label {0:?}")]
    BadLabel(String),
    #[error("duplicate element label {0:?}")]
    DuplicateLabel(String),
    #[error("{table} table has {found} cells, expected {expected}")]
    TableShape {
        table: &'static str,
        expected: usize,
        found: usize,
    },
    #[error("{table} table entry {value} out of range for size {size}")]
    EntryOutOfRange {
        table: &'static str,
        value: Elem,
        size: usize,
    },
    #[error("constant {name} = {value} out of range for size {size}")]
    ConstantOutOfRange {
        name: &'static str,
        value: Elem,
        size: usize,
    },
    #[error("meet and join induce different orders at ({0}, {1})")]
    InconsistentOrder(Elem, Elem),
    #[error("NOT-A-SEMILATTICE: meet fails {law} at {witness:?}")]
    NotASemilattice {
        law: &'static str,
        witness: Vec<Elem>,
    },
    #[error("MISSING-TABLE: {0}")]
    MissingTable(&'static str),
    #[error("MISSING-CONSTANT: {0}")]
    MissingConstant(&'static str),
    #[error("NO-RESIDUAL at ({0}, {1})")]
    NoResidual(Elem, Elem),
    #[error("SIGNATURE-MISMATCH: {0}")]
    SignatureMismatch(String),
}

/// The binary operations an algebra may carry.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BinOp {
    Meet,
    Join,
    Mult,
    Imp,
}

impl BinOp {
    pub const ALL: [BinOp; 4] = [BinOp::Meet, BinOp::Join, BinOp::Mult, BinOp::Imp];

    pub fn name(self) -> &'static str {
        match self {
            BinOp::Meet => "meet",
            BinOp::Join => "join",
            BinOp::Mult => "mult",
            BinOp::Imp => "imp",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum UnOp {
    Neg,
    Bang,
}

impl UnOp {
    pub const ALL: [UnOp; 2] = [UnOp::Neg, UnOp::Bang];

    pub fn name(self) -> &'static str {
        match self {
            UnOp::Neg => "neg",
            UnOp::Bang => "bang",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ConstKind {
    One,
    Zero,
    Top,
    Bot,
}

impl ConstKind {
    pub const ALL: [ConstKind; 4] = [ConstKind::One, ConstKind::Zero, ConstKind::Top, ConstKind::Bot];

    pub fn name(self) -> &'static str {
        match self {
            ConstKind::One => "one",
            ConstKind::Zero => "zero",
            ConstKind::Top => "top",
            ConstKind::Bot => "bot",
        }
    }
}

/// A square operation table, row = left argument.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Table {
    n: usize,
    cells: Vec<Elem>,
}

impl Table {
    pub fn new(n: usize, cells: Vec<Elem>) -> Self {
        assert_eq!(cells.len(), n * n, "table must have n*n cells");
        Table { n, cells }
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(Elem, Elem) -> Elem) -> Self {
        let mut cells = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                cells.push(f(a, b));
            }
        }
        Table { n, cells }
    }

    pub fn from_rows(rows: &[Vec<Elem>]) -> Self {
        let n = rows.len();
        let cells: Vec<Elem> = rows.iter().flatten().copied().collect();
        Table::new(n, cells)
    }

    #[inline]
    pub fn get(&self, a: Elem, b: Elem) -> Elem {
        self.cells[a * self.n + b]
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn cells(&self) -> &[Elem] {
        &self.cells
    }

    pub fn row(&self, a: Elem) -> &[Elem] {
        &self.cells[a * self.n..(a + 1) * self.n]
    }
}

/// The partial order read off a meet table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Order {
    n: usize,
    leq: Vec<bool>,
}

impl Order {
    pub fn from_relation(n: usize, leq: Vec<bool>) -> Self {
        assert_eq!(leq.len(), n * n);
        Order { n, leq }
    }

    #[inline]
    pub fn leq(&self, a: Elem, b: Elem) -> bool {
        self.leq[a * self.n + b]
    }

    pub fn size(&self) -> usize {
        self.n
    }

    /// All pairs `(a, b)` with `a <= b`, in lexicographic order.
    pub fn pairs(&self) -> Vec<(Elem, Elem)> {
        let mut out = Vec::new();
        for a in 0..self.n {
            for b in 0..self.n {
                if self.leq(a, b) {
                    out.push((a, b));
                }
            }
        }
        out
    }

    pub fn down_set(&self, a: Elem) -> ElemSet {
        ElemSet::from_iter((0..self.n).filter(|&b| self.leq(b, a)))
    }

    pub fn up_set(&self, a: Elem) -> ElemSet {
        ElemSet::from_iter((0..self.n).filter(|&b| self.leq(a, b)))
    }

    /// Greatest element of `set`, if it has one.
    pub fn max_of(&self, set: impl IntoIterator<Item = Elem>) -> Option<Elem> {
        let items: Vec<Elem> = set.into_iter().collect();
        items
            .iter()
            .copied()
            .find(|&m| items.iter().all(|&x| self.leq(x, m)))
    }

    pub fn bottom(&self) -> Option<Elem> {
        (0..self.n).find(|&b| (0..self.n).all(|x| self.leq(b, x)))
    }

    pub fn top(&self) -> Option<Elem> {
        (0..self.n).find(|&t| (0..self.n).all(|x| self.leq(x, t)))
    }
}

/// Returns the order `{(a, b) : a /\ b = a}` after checking that meet is a
/// semilattice operation.
pub fn order_from_meet(alg: &FiniteAlgebra) -> Result<Order, AlgebraError> {
    let meet = alg.table(BinOp::Meet)?;
    semilattice_order(meet)
}

pub(crate) fn semilattice_order(meet: &Table) -> Result<Order, AlgebraError> {
    let n = meet.size();
    for a in 0..n {
        if meet.get(a, a) != a {
            return Err(AlgebraError::NotASemilattice {
                law: "idempotence",
                witness: vec![a],
            });
        }
    }
    for a in 0..n {
        for b in 0..n {
            if meet.get(a, b) != meet.get(b, a) {
                return Err(AlgebraError::NotASemilattice {
                    law: "commutativity",
                    witness: vec![a, b],
                });
            }
        }
    }
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                if meet.get(meet.get(a, b), c) != meet.get(a, meet.get(b, c)) {
                    return Err(AlgebraError::NotASemilattice {
                        law: "associativity",
                        witness: vec![a, b, c],
                    });
                }
            }
        }
    }
    let leq = (0..n * n).map(|i| meet.get(i / n, i % n) == i / n).collect();
    Ok(Order { n, leq })
}

/// A finite algebra in the signature `(/\, \/, *, ->, ~, !, 1, 0, T, F)`,
/// any subset of which may be present.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FiniteAlgebra {
    name: String,
    labels: Vec<String>,
    meet: Option<Table>,
    join: Option<Table>,
    mult: Option<Table>,
    imp: Option<Table>,
    neg: Option<Vec<Elem>>,
    bang: Option<Vec<Elem>>,
    one: Option<Elem>,
    zero: Option<Elem>,
    top: Option<Elem>,
    bot: Option<Elem>,
}

impl FiniteAlgebra {
    pub fn builder(name: impl Into<String>, labels: Vec<String>) -> AlgebraBuilder {
        AlgebraBuilder {
            alg: FiniteAlgebra {
                name: name.into(),
                labels,
                meet: None,
                join: None,
                mult: None,
                imp: None,
                neg: None,
                bang: None,
                one: None,
                zero: None,
                top: None,
                bot: None,
            },
        }
    }

    /// Builder with labels `e0 .. e{n-1}`.
    pub fn builder_sized(name: impl Into<String>, n: usize) -> AlgebraBuilder {
        Self::builder(name, default_labels(n))
    }

    pub fn to_builder(&self) -> AlgebraBuilder {
        AlgebraBuilder { alg: self.clone() }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn size(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, a: Elem) -> &str {
        &self.labels[a]
    }

    pub fn index_of(&self, label: &str) -> Option<Elem> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn elements(&self) -> std::ops::Range<Elem> {
        0..self.size()
    }

    pub fn binary(&self, op: BinOp) -> Option<&Table> {
        match op {
            BinOp::Meet => self.meet.as_ref(),
            BinOp::Join => self.join.as_ref(),
            BinOp::Mult => self.mult.as_ref(),
            BinOp::Imp => self.imp.as_ref(),
        }
    }

    pub fn unary(&self, op: UnOp) -> Option<&[Elem]> {
        match op {
            UnOp::Neg => self.neg.as_deref(),
            UnOp::Bang => self.bang.as_deref(),
        }
    }

    pub fn constant(&self, c: ConstKind) -> Option<Elem> {
        match c {
            ConstKind::One => self.one,
            ConstKind::Zero => self.zero,
            ConstKind::Top => self.top,
            ConstKind::Bot => self.bot,
        }
    }

    pub fn table(&self, op: BinOp) -> Result<&Table, AlgebraError> {
        self.binary(op).ok_or(AlgebraError::MissingTable(op.name()))
    }

    pub fn unary_table(&self, op: UnOp) -> Result<&[Elem], AlgebraError> {
        self.unary(op).ok_or(AlgebraError::MissingTable(op.name()))
    }

    pub fn require(&self, c: ConstKind) -> Result<Elem, AlgebraError> {
        self.constant(c).ok_or(AlgebraError::MissingConstant(c.name()))
    }

    pub fn meet(&self, a: Elem, b: Elem) -> Elem {
        self.meet.as_ref().expect("meet table").get(a, b)
    }

    pub fn join(&self, a: Elem, b: Elem) -> Elem {
        self.join.as_ref().expect("join table").get(a, b)
    }

    pub fn mult(&self, a: Elem, b: Elem) -> Elem {
        self.mult.as_ref().expect("mult table").get(a, b)
    }

    pub fn imp(&self, a: Elem, b: Elem) -> Elem {
        self.imp.as_ref().expect("imp table").get(a, b)
    }

    pub fn neg(&self, a: Elem) -> Elem {
        self.neg.as_ref().expect("neg table")[a]
    }

    pub fn bang(&self, a: Elem) -> Elem {
        self.bang.as_ref().expect("bang table")[a]
    }

    /// `a <= b` in the meet order. Panics without a meet table.
    pub fn leq(&self, a: Elem, b: Elem) -> bool {
        self.meet(a, b) == a
    }

    /// Names of the tables and constants present, in a fixed order.
    pub fn signature(&self) -> Vec<&'static str> {
        let mut sig = Vec::new();
        for op in BinOp::ALL {
            if self.binary(op).is_some() {
                sig.push(op.name());
            }
        }
        for op in UnOp::ALL {
            if self.unary(op).is_some() {
                sig.push(op.name());
            }
        }
        for c in ConstKind::ALL {
            if self.constant(c).is_some() {
                sig.push(c.name());
            }
        }
        sig
    }

    /// Fills in tables that are definable from the ones present: `imp` as
    /// the residual of `mult` and `neg` as `x -> 0`. Definitions that do not
    /// exist (no residual) are skipped.
    pub fn with_derived(&self) -> FiniteAlgebra {
        let mut out = self.clone();
        if out.imp.is_none() && out.mult.is_some() && out.meet.is_some() {
            if let Ok(imp) = residual_from_mult(&out) {
                out.imp = Some(imp);
            }
        }
        if out.neg.is_none() && out.imp.is_some() && out.zero.is_some() {
            if let Ok(neg) = neg_from_zero(&out) {
                out.neg = Some(neg);
            }
        }
        out
    }

    /// Copy of `self` with only the listed tables and constants kept.
    pub fn reduct(&self, keep: &[&str]) -> FiniteAlgebra {
        let k = |s: &str| keep.contains(&s);
        let mut out = self.clone();
        if !k("meet") {
            out.meet = None;
        }
        if !k("join") {
            out.join = None;
        }
        if !k("mult") {
            out.mult = None;
        }
        if !k("imp") {
            out.imp = None;
        }
        if !k("neg") {
            out.neg = None;
        }
        if !k("bang") {
            out.bang = None;
        }
        if !k("one") {
            out.one = None;
        }
        if !k("zero") {
            out.zero = None;
        }
        if !k("top") {
            out.top = None;
        }
        if !k("bot") {
            out.bot = None;
        }
        out
    }

    pub fn renamed(&self, name: impl Into<String>) -> FiniteAlgebra {
        let mut out = self.clone();
        out.name = name.into();
        out
    }

    /// Applies the bijection `sigma` (old index -> new index) to every table,
    /// carrying labels along.
    pub fn permuted(&self, sigma: &[Elem]) -> FiniteAlgebra {
        let n = self.size();
        assert_eq!(sigma.len(), n);
        let mut inv = vec![0; n];
        for (old, &new) in sigma.iter().enumerate() {
            inv[new] = old;
        }
        let tab = |t: &Option<Table>| {
            t.as_ref()
                .map(|t| Table::from_fn(n, |a, b| sigma[t.get(inv[a], inv[b])]))
        };
        let un = |u: &Option<Vec<Elem>>| {
            u.as_ref()
                .map(|u| (0..n).map(|a| sigma[u[inv[a]]]).collect::<Vec<_>>())
        };
        FiniteAlgebra {
            name: self.name.clone(),
            labels: (0..n).map(|a| self.labels[inv[a]].clone()).collect(),
            meet: tab(&self.meet),
            join: tab(&self.join),
            mult: tab(&self.mult),
            imp: tab(&self.imp),
            neg: un(&self.neg),
            bang: un(&self.bang),
            one: self.one.map(|c| sigma[c]),
            zero: self.zero.map(|c| sigma[c]),
            top: self.top.map(|c| sigma[c]),
            bot: self.bot.map(|c| sigma[c]),
        }
    }

    /// Direct product; both factors must have the same signature. Labels
    /// are `x.y`.
    pub fn product(&self, other: &FiniteAlgebra) -> Result<FiniteAlgebra, AlgebraError> {
        if self.signature() != other.signature() {
            return Err(AlgebraError::SignatureMismatch(format!(
                "{:?} vs {:?}",
                self.signature(),
                other.signature()
            )));
        }
        let m = other.size();
        let n = self.size() * m;
        let pair = |i: Elem| (i / m, i % m);
        let enc = |a: Elem, b: Elem| a * m + b;
        let labels = (0..n)
            .map(|i| {
                let (a, b) = pair(i);
                format!("{}.{}", self.labels[a], other.labels[b])
            })
            .collect();
        let mut builder = FiniteAlgebra::builder(format!("{}x{}", self.name, other.name), labels);
        for op in BinOp::ALL {
            if let (Some(s), Some(o)) = (self.binary(op), other.binary(op)) {
                builder = builder.binary(
                    op,
                    Table::from_fn(n, |x, y| {
                        let (a1, b1) = pair(x);
                        let (a2, b2) = pair(y);
                        enc(s.get(a1, a2), o.get(b1, b2))
                    }),
                );
            }
        }
        for op in UnOp::ALL {
            if let (Some(s), Some(o)) = (self.unary(op), other.unary(op)) {
                builder = builder.unary(
                    op,
                    (0..n)
                        .map(|x| {
                            let (a, b) = pair(x);
                            enc(s[a], o[b])
                        })
                        .collect(),
                );
            }
        }
        for c in ConstKind::ALL {
            if let (Some(s), Some(o)) = (self.constant(c), other.constant(c)) {
                builder = builder.constant(c, enc(s, o));
            }
        }
        builder.build()
    }
}

impl fmt::Display for FiniteAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format::print_algebra(self))
    }
}

pub fn default_labels(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("e{i}")).collect()
}

#[derive(Debug, Clone)]
pub struct AlgebraBuilder {
    alg: FiniteAlgebra,
}

impl AlgebraBuilder {
    pub fn binary(mut self, op: BinOp, table: Table) -> Self {
        let slot = match op {
            BinOp::Meet => &mut self.alg.meet,
            BinOp::Join => &mut self.alg.join,
            BinOp::Mult => &mut self.alg.mult,
            BinOp::Imp => &mut self.alg.imp,
        };
        *slot = Some(table);
        self
    }

    pub fn without(mut self, op: BinOp) -> Self {
        match op {
            BinOp::Meet => self.alg.meet = None,
            BinOp::Join => self.alg.join = None,
            BinOp::Mult => self.alg.mult = None,
            BinOp::Imp => self.alg.imp = None,
        }
        self
    }

    pub fn unary(mut self, op: UnOp, table: Vec<Elem>) -> Self {
        match op {
            UnOp::Neg => self.alg.neg = Some(table),
            UnOp::Bang => self.alg.bang = Some(table),
        }
        self
    }

    pub fn without_unary(mut self, op: UnOp) -> Self {
        match op {
            UnOp::Neg => self.alg.neg = None,
            UnOp::Bang => self.alg.bang = None,
        }
        self
    }

    pub fn constant(mut self, c: ConstKind, value: Elem) -> Self {
        match c {
            ConstKind::One => self.alg.one = Some(value),
            ConstKind::Zero => self.alg.zero = Some(value),
            ConstKind::Top => self.alg.top = Some(value),
            ConstKind::Bot => self.alg.bot = Some(value),
        }
        self
    }

    pub fn name(mut self, name: impl Into<String>) -> Self {
        self.alg.name = name.into();
        self
    }

    pub fn build(self) -> Result<FiniteAlgebra, AlgebraError> {
        let alg = self.alg;
        let n = alg.labels.len();
        if n == 0 {
            return Err(AlgebraError::Empty);
        }
        for (i, l) in alg.labels.iter().enumerate() {
            if l.is_empty() || l.chars().any(|c| c.is_whitespace() || c == '#') {
                return Err(AlgebraError::BadLabel(l.clone()));
            }
            if alg.labels[..i].contains(l) {
                return Err(AlgebraError::DuplicateLabel(l.clone()));
            }
        }
        for op in BinOp::ALL {
            if let Some(t) = alg.binary(op) {
                if t.size() != n {
                    return Err(AlgebraError::TableShape {
                        table: op.name(),
                        expected: n * n,
                        found: t.cells.len(),
                    });
                }
                if let Some(&v) = t.cells.iter().find(|&&v| v >= n) {
                    return Err(AlgebraError::EntryOutOfRange {
                        table: op.name(),
                        value: v,
                        size: n,
                    });
                }
            }
        }
        for op in UnOp::ALL {
            if let Some(u) = alg.unary(op) {
                if u.len() != n {
                    return Err(AlgebraError::TableShape {
                        table: op.name(),
                        expected: n,
                        found: u.len(),
                    });
                }
                if let Some(&v) = u.iter().find(|&&v| v >= n) {
                    return Err(AlgebraError::EntryOutOfRange {
                        table: op.name(),
                        value: v,
                        size: n,
                    });
                }
            }
        }
        for c in ConstKind::ALL {
            if let Some(v) = alg.constant(c) {
                if v >= n {
                    return Err(AlgebraError::ConstantOutOfRange {
                        name: c.name(),
                        value: v,
                        size: n,
                    });
                }
            }
        }
        if let (Some(m), Some(j)) = (&alg.meet, &alg.join) {
            for a in 0..n {
                for b in 0..n {
                    if (m.get(a, b) == a) != (j.get(a, b) == b) {
                        return Err(AlgebraError::InconsistentOrder(a, b));
                    }
                }
            }
        }
        Ok(alg)
    }
}

/// `imp[a][b] = max{c : a*c <= b}`, failing where that maximum does not exist.
pub fn residual_from_mult(alg: &FiniteAlgebra) -> Result<Table, AlgebraError> {
    let order = order_from_meet(alg)?;
    let mult = alg.table(BinOp::Mult)?;
    residual_of(mult, &order)
}

pub(crate) fn residual_of(mult: &Table, order: &Order) -> Result<Table, AlgebraError> {
    let n = mult.size();
    let mut cells = Vec::with_capacity(n * n);
    for a in 0..n {
        for b in 0..n {
            let r = order
                .max_of((0..n).filter(|&c| order.leq(mult.get(a, c), b)))
                .ok_or(AlgebraError::NoResidual(a, b))?;
            cells.push(r);
        }
    }
    Ok(Table::new(n, cells))
}

/// `neg[a] = a -> 0`.
pub fn neg_from_zero(alg: &FiniteAlgebra) -> Result<Vec<Elem>, AlgebraError> {
    let imp = alg.table(BinOp::Imp)?;
    let zero = alg.require(ConstKind::Zero)?;
    Ok(alg.elements().map(|a| imp.get(a, zero)).collect())
}
