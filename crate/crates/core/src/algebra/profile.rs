//! Axiom profiles and the exhaustive profile checker.
//!
//! A profile is a stack of layers; each layer is a list of named conditions
//! that are evaluated over every tuple of elements in lexicographic order.
//! Layers run in order and checking stops after the first layer that has a
//! violation, so a report always names the weakest broken layer.

use std::fmt;
use std::str::FromStr;

use super::{residual_of, AlgebraError, BinOp, ConstKind, Elem, FiniteAlgebra, Order, Table, UnOp};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Profile {
    PosetLattice,
    Gs,
    Gl,
    VL7,
    Crl,
    Girard,
    BoundedGirard,
    Girale,
    BoundedGirale,
    Lr,
    Heyting,
}

impl Profile {
    pub const ALL: [Profile; 11] = [
        Profile::PosetLattice,
        Profile::Gs,
        Profile::Gl,
        Profile::VL7,
        Profile::Crl,
        Profile::Girard,
        Profile::BoundedGirard,
        Profile::Girale,
        Profile::BoundedGirale,
        Profile::Lr,
        Profile::Heyting,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Profile::PosetLattice => "POSET-LATTICE",
            Profile::Gs => "GS",
            Profile::Gl => "GL",
            Profile::VL7 => "V-L7",
            Profile::Crl => "CRL",
            Profile::Girard => "GIRARD",
            Profile::BoundedGirard => "BOUNDED-GIRARD",
            Profile::Girale => "GIRALE",
            Profile::BoundedGirale => "BOUNDED-GIRALE",
            Profile::Lr => "LR",
            Profile::Heyting => "HEYTING",
        }
    }

    fn layers(self) -> &'static [Layer] {
        use Layer::*;
        match self {
            Profile::PosetLattice => &[Semilattice, Lattice],
            Profile::Gs => &[Semilattice, Gs],
            Profile::Gl => &[Semilattice, Lattice, Gs, Gl],
            Profile::VL7 => &[Semilattice, Gs, L7],
            Profile::Crl => &[Semilattice, Lattice, Monoid, Residuation],
            Profile::Girard => &[Semilattice, Lattice, Monoid, Residuation, Girard],
            Profile::BoundedGirard => &[Semilattice, Lattice, Monoid, Residuation, Girard, Bounded],
            Profile::Girale => &[Semilattice, Lattice, Monoid, Residuation, Girard, Girale],
            Profile::BoundedGirale => &[
                Semilattice,
                Lattice,
                Monoid,
                Residuation,
                Girard,
                Bounded,
                Girale,
            ],
            Profile::Lr => &[Semilattice, Lattice, Lr],
            Profile::Heyting => &[Semilattice, Lattice, Heyting],
        }
    }

    /// Tables and constants that must be present before checking.
    pub fn requirements(self) -> (Vec<BinOp>, Vec<UnOp>, Vec<ConstKind>) {
        let mut bins = Vec::new();
        let mut uns = Vec::new();
        let mut consts = Vec::new();
        for layer in self.layers() {
            let (b, u, c) = layer.requires();
            for x in b {
                if !bins.contains(x) {
                    bins.push(*x);
                }
            }
            for x in u {
                if !uns.contains(x) {
                    uns.push(*x);
                }
            }
            for x in c {
                if !consts.contains(x) {
                    consts.push(*x);
                }
            }
        }
        bins.sort();
        uns.sort();
        consts.sort();
        (bins, uns, consts)
    }
}

impl fmt::Display for Profile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Profile {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let norm = s.trim().to_ascii_uppercase().replace('_', "-");
        let p = match norm.as_str() {
            "POSET-LATTICE" | "LATTICE" => Profile::PosetLattice,
            "GS" => Profile::Gs,
            "GL" => Profile::Gl,
            "V-L7" | "VL7" | "L7" => Profile::VL7,
            "CRL" => Profile::Crl,
            "GIRARD" => Profile::Girard,
            "BOUNDED-GIRARD" => Profile::BoundedGirard,
            "GIRALE" => Profile::Girale,
            "BOUNDED-GIRALE" => Profile::BoundedGirale,
            "LR" => Profile::Lr,
            "HEYTING" => Profile::Heyting,
            _ => return Err(format!("unknown profile {s:?}")),
        };
        Ok(p)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub condition: String,
    pub witness: Vec<Elem>,
    pub detail: Option<String>,
}

/// Outcome of a check: passes iff there are no violations.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CheckReport {
    pub failed_layer: Option<String>,
    pub violations: Vec<Violation>,
}

impl CheckReport {
    pub fn pass() -> Self {
        CheckReport::default()
    }

    pub fn is_pass(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn push(&mut self, condition: impl Into<String>, witness: Vec<Elem>, detail: Option<String>) {
        self.violations.push(Violation {
            condition: condition.into(),
            witness,
            detail,
        });
    }

    pub fn first(&self, condition: &str) -> Option<&Violation> {
        self.violations.iter().find(|v| v.condition == condition)
    }

    pub fn merge(&mut self, other: CheckReport) {
        if self.failed_layer.is_none() {
            self.failed_layer = other.failed_layer;
        }
        self.violations.extend(other.violations);
    }

    /// Human-readable rendering; witnesses are printed with `alg`'s labels
    /// when given.
    pub fn render(&self, alg: Option<&FiniteAlgebra>) -> String {
        let mut out = String::new();
        if self.is_pass() {
            out.push_str("pass\n");
            return out;
        }
        match &self.failed_layer {
            Some(l) => out.push_str(&format!("fail ({l})\n")),
            None => out.push_str("fail\n"),
        }
        for v in &self.violations {
            let w: Vec<String> = v
                .witness
                .iter()
                .map(|&e| match alg {
                    Some(a) if e < a.size() => a.label(e).to_string(),
                    _ => e.to_string(),
                })
                .collect();
            out.push_str(&format!("  {} ({})", v.condition, w.join(", ")));
            if let Some(d) = &v.detail {
                out.push_str(&format!(": {d}"));
            }
            out.push('\n');
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Layer {
    Semilattice,
    Lattice,
    Gs,
    Gl,
    L7,
    Monoid,
    Residuation,
    Girard,
    Bounded,
    Girale,
    Lr,
    Heyting,
}

type Pred = fn(&Ctx, &[Elem]) -> bool;

impl Layer {
    fn name(self) -> &'static str {
        match self {
            Layer::Semilattice => "semilattice",
            Layer::Lattice => "lattice",
            Layer::Gs => "girard-semilattice",
            Layer::Gl => "girard-lattice",
            Layer::L7 => "l7",
            Layer::Monoid => "monoid",
            Layer::Residuation => "residuation",
            Layer::Girard => "girard",
            Layer::Bounded => "bounded",
            Layer::Girale => "girale",
            Layer::Lr => "lr",
            Layer::Heyting => "heyting",
        }
    }

    fn requires(self) -> (&'static [BinOp], &'static [UnOp], &'static [ConstKind]) {
        use BinOp::*;
        match self {
            Layer::Semilattice => (&[Meet], &[], &[]),
            Layer::Lattice => (&[Join], &[], &[]),
            Layer::Gs | Layer::L7 => (&[Imp], &[], &[ConstKind::One]),
            Layer::Gl => (&[Imp, Join], &[], &[]),
            Layer::Monoid => (&[Mult], &[], &[ConstKind::One]),
            Layer::Residuation => (&[Mult, Imp], &[], &[]),
            Layer::Girard => (&[Imp], &[], &[ConstKind::Zero]),
            Layer::Bounded => (&[], &[], &[ConstKind::Top]),
            Layer::Girale => (&[Mult], &[UnOp::Bang], &[ConstKind::One]),
            Layer::Lr => (&[Imp], &[UnOp::Neg], &[]),
            Layer::Heyting => (&[Imp], &[], &[ConstKind::One]),
        }
    }

    fn conditions(self) -> &'static [(&'static str, usize, Pred)] {
        match self {
            Layer::Semilattice => &[
                ("meet-idempotent", 1, |c, t| c.m(t[0], t[0]) == t[0]),
                ("meet-commutative", 2, |c, t| c.m(t[0], t[1]) == c.m(t[1], t[0])),
                ("meet-associative", 3, |c, t| {
                    c.m(c.m(t[0], t[1]), t[2]) == c.m(t[0], c.m(t[1], t[2]))
                }),
            ],
            Layer::Lattice => &[
                ("join-idempotent", 1, |c, t| c.j(t[0], t[0]) == t[0]),
                ("join-commutative", 2, |c, t| c.j(t[0], t[1]) == c.j(t[1], t[0])),
                ("join-associative", 3, |c, t| {
                    c.j(c.j(t[0], t[1]), t[2]) == c.j(t[0], c.j(t[1], t[2]))
                }),
                ("absorption-meet", 2, |c, t| c.m(t[0], c.j(t[0], t[1])) == t[0]),
                ("absorption-join", 2, |c, t| c.j(t[0], c.m(t[0], t[1])) == t[0]),
            ],
            Layer::Gs => &[
                ("L1", 1, |c, t| c.i(c.one(), t[0]) == t[0]),
                ("L2", 1, |c, t| c.le(c.one(), c.i(t[0], t[0]))),
                ("L3", 3, l3),
                ("L4", 3, l4),
                ("L5", 3, l5),
                ("L6", 2, |c, t| {
                    let (a, b) = (t[0], t[1]);
                    !(c.le(c.one(), c.i(a, b)) && c.le(c.one(), c.i(b, a))) || a == b
                }),
            ],
            Layer::Gl => &[("GL-join", 3, |c, t| {
                let (a, b, x) = (t[0], t[1], t[2]);
                c.m(c.i(a, x), c.i(b, x)) == c.i(c.j(a, b), x)
            })],
            Layer::L7 => &[("L7", 2, |c, t| {
                let (x, y) = (t[0], t[1]);
                c.le(x, c.i(c.m(c.i(x, y), c.one()), y))
            })],
            Layer::Monoid => &[
                ("mult-commutative", 2, |c, t| c.x(t[0], t[1]) == c.x(t[1], t[0])),
                ("mult-associative", 3, |c, t| {
                    c.x(c.x(t[0], t[1]), t[2]) == c.x(t[0], c.x(t[1], t[2]))
                }),
                ("mult-unit", 1, |c, t| c.x(c.one(), t[0]) == t[0]),
            ],
            Layer::Residuation => &[
                ("imp-mismatch", 2, |c, t| match &c.residual {
                    Some(r) => r.get(t[0], t[1]) == c.i(t[0], t[1]),
                    None => true,
                }),
                ("residuation", 3, |c, t| {
                    let (a, b, x) = (t[0], t[1], t[2]);
                    c.le(c.x(a, b), x) == c.le(a, c.i(b, x))
                }),
            ],
            Layer::Girard => &[
                ("zero-involutive", 1, |c, t| {
                    let z = c.zero();
                    c.i(c.i(t[0], z), z) == t[0]
                }),
                ("neg-definition", 1, |c, t| match c.neg {
                    Some(n) => n[t[0]] == c.i(t[0], c.zero()),
                    None => true,
                }),
            ],
            Layer::Bounded => &[
                ("top-bound", 1, |c, t| c.le(t[0], c.top())),
                ("bot-definition", 0, |c, _| match c.bot {
                    Some(b) => c.zero.is_none_or(|z| b == c.i(c.top(), z)),
                    None => true,
                }),
            ],
            Layer::Girale => &[
                ("G1", 0, |c, _| c.b(c.one()) == c.one()),
                ("G2", 1, |c, t| c.le(c.b(t[0]), c.m(t[0], c.one()))),
                ("G3", 2, |c, t| {
                    let (a, b) = (t[0], t[1]);
                    c.x(c.b(a), c.b(b)) == c.b(c.m(a, b))
                }),
                ("G4", 1, |c, t| c.b(c.b(t[0])) == c.b(t[0])),
            ],
            Layer::Lr => &[
                ("neg-involutive", 1, |c, t| c.n(c.n(t[0])) == t[0]),
                ("neg-antitone", 2, |c, t| {
                    let (a, b) = (t[0], t[1]);
                    !c.le(a, b) || c.le(c.n(b), c.n(a))
                }),
                ("L3", 3, l3),
                ("L4", 3, l4),
                ("L5", 3, l5),
                ("LR", 3, |c, t| {
                    let (x, y, z) = (t[0], t[1], t[2]);
                    c.le(c.i(c.m(c.i(x, x), c.i(y, y)), z), z)
                }),
            ],
            Layer::Heyting => &[
                ("integral", 1, |c, t| c.le(t[0], c.one())),
                ("mult-is-meet", 2, |c, t| match c.mult {
                    Some(x) => x.get(t[0], t[1]) == c.m(t[0], t[1]),
                    None => true,
                }),
                ("heyting-residuation", 3, |c, t| {
                    let (a, b, x) = (t[0], t[1], t[2]);
                    c.le(c.m(a, b), x) == c.le(a, c.i(b, x))
                }),
            ],
        }
    }
}

fn l3(c: &Ctx, t: &[Elem]) -> bool {
    let (a, b, x) = (t[0], t[1], t[2]);
    c.m(c.i(a, b), c.i(a, x)) == c.i(a, c.m(b, x))
}

fn l4(c: &Ctx, t: &[Elem]) -> bool {
    let (a, b, x) = (t[0], t[1], t[2]);
    c.le(c.i(a, b), c.i(c.i(x, a), c.i(x, b)))
}

fn l5(c: &Ctx, t: &[Elem]) -> bool {
    let (a, b, x) = (t[0], t[1], t[2]);
    c.le(c.i(a, c.i(b, x)), c.i(b, c.i(a, x)))
}

struct Ctx<'a> {
    meet: &'a Table,
    join: Option<&'a Table>,
    mult: Option<&'a Table>,
    imp: Option<&'a Table>,
    neg: Option<&'a [Elem]>,
    bang: Option<&'a [Elem]>,
    one: Option<Elem>,
    zero: Option<Elem>,
    top: Option<Elem>,
    bot: Option<Elem>,
    residual: Option<Table>,
}

impl Ctx<'_> {
    #[inline]
    fn m(&self, a: Elem, b: Elem) -> Elem {
        self.meet.get(a, b)
    }
    #[inline]
    fn j(&self, a: Elem, b: Elem) -> Elem {
        self.join.unwrap().get(a, b)
    }
    #[inline]
    fn x(&self, a: Elem, b: Elem) -> Elem {
        self.mult.unwrap().get(a, b)
    }
    #[inline]
    fn i(&self, a: Elem, b: Elem) -> Elem {
        self.imp.unwrap().get(a, b)
    }
    #[inline]
    fn n(&self, a: Elem) -> Elem {
        self.neg.unwrap()[a]
    }
    #[inline]
    fn b(&self, a: Elem) -> Elem {
        self.bang.unwrap()[a]
    }
    #[inline]
    fn le(&self, a: Elem, b: Elem) -> bool {
        self.meet.get(a, b) == a
    }
    fn one(&self) -> Elem {
        self.one.unwrap()
    }
    fn zero(&self) -> Elem {
        self.zero.unwrap()
    }
    fn top(&self) -> Elem {
        self.top.unwrap()
    }
}

/// First tuple in lexicographic order on which `pred` fails.
pub(crate) fn first_failure(
    n: usize,
    arity: usize,
    mut pred: impl FnMut(&[Elem]) -> bool,
) -> Option<Vec<Elem>> {
    let mut t = vec![0; arity];
    loop {
        if !pred(&t) {
            return Some(t);
        }
        let mut k = arity;
        loop {
            if k == 0 {
                return None;
            }
            k -= 1;
            t[k] += 1;
            if t[k] < n {
                break;
            }
            t[k] = 0;
        }
    }
}

/// Evaluates every condition of `profile` over all element tuples.
///
/// Fails with MISSING-TABLE / MISSING-CONSTANT when the algebra lacks
/// something the profile mentions. Each violated condition is reported once,
/// with its lexicographically first witness.
pub fn check_profile(alg: &FiniteAlgebra, profile: Profile) -> Result<CheckReport, AlgebraError> {
    let (bins, uns, consts) = profile.requirements();
    for op in bins {
        alg.table(op)?;
    }
    for op in uns {
        alg.unary_table(op)?;
    }
    for c in consts {
        alg.require(c)?;
    }
    let n = alg.size();
    let mut ctx = Ctx {
        meet: alg.table(BinOp::Meet)?,
        join: alg.binary(BinOp::Join),
        mult: alg.binary(BinOp::Mult),
        imp: alg.binary(BinOp::Imp),
        neg: alg.unary(UnOp::Neg),
        bang: alg.unary(UnOp::Bang),
        one: alg.constant(ConstKind::One),
        zero: alg.constant(ConstKind::Zero),
        top: alg.constant(ConstKind::Top),
        bot: alg.constant(ConstKind::Bot),
        residual: None,
    };
    let mut report = CheckReport::pass();
    for &layer in profile.layers() {
        if layer == Layer::Residuation {
            let order = Order::from_relation(n, (0..n * n).map(|i| ctx.le(i / n, i % n)).collect());
            match residual_of(ctx.mult.unwrap(), &order) {
                Ok(r) => ctx.residual = Some(r),
                Err(AlgebraError::NoResidual(a, b)) => {
                    report.push("no-residual", vec![a, b], None);
                }
                Err(e) => return Err(e),
            }
        }
        for &(id, arity, pred) in layer.conditions() {
            if let Some(w) = first_failure(n, arity, |t| pred(&ctx, t)) {
                report.push(id, w, None);
            }
        }
        if !report.is_pass() {
            report.failed_layer = Some(layer.name().to_string());
            break;
        }
    }
    Ok(report)
}
