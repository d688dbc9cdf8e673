use std::collections::BTreeSet;
use std::fmt;

/// Logical constants. `T` and `F` are the additive top and bottom.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Constant {
    One,
    Zero,
    Top,
    Bot,
}

impl Constant {
    pub fn symbol(self) -> &'static str {
        match self {
            Constant::One => "1",
            Constant::Zero => "0",
            Constant::Top => "T",
            Constant::Bot => "F",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Formula {
    Var(String),
    Const(Constant),
    Neg(Box<Formula>),
    Bang(Box<Formula>),
    Quest(Box<Formula>),
    Mult(Box<Formula>, Box<Formula>),
    Par(Box<Formula>, Box<Formula>),
    Imp(Box<Formula>, Box<Formula>),
    Meet(Box<Formula>, Box<Formula>),
    Join(Box<Formula>, Box<Formula>),
}

/// Connective tags, used for fragment bookkeeping.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Connective {
    One,
    Zero,
    Top,
    Bot,
    Neg,
    Bang,
    Quest,
    Mult,
    Par,
    Imp,
    Meet,
    Join,
}

impl Formula {
    pub fn var(name: impl Into<String>) -> Self {
        Formula::Var(name.into())
    }
    pub fn one() -> Self {
        Formula::Const(Constant::One)
    }
    pub fn zero() -> Self {
        Formula::Const(Constant::Zero)
    }
    pub fn neg(f: Formula) -> Self {
        Formula::Neg(Box::new(f))
    }
    pub fn bang(f: Formula) -> Self {
        Formula::Bang(Box::new(f))
    }
    pub fn quest(f: Formula) -> Self {
        Formula::Quest(Box::new(f))
    }
    pub fn mult(a: Formula, b: Formula) -> Self {
        Formula::Mult(Box::new(a), Box::new(b))
    }
    pub fn par(a: Formula, b: Formula) -> Self {
        Formula::Par(Box::new(a), Box::new(b))
    }
    pub fn imp(a: Formula, b: Formula) -> Self {
        Formula::Imp(Box::new(a), Box::new(b))
    }
    pub fn meet(a: Formula, b: Formula) -> Self {
        Formula::Meet(Box::new(a), Box::new(b))
    }
    pub fn join(a: Formula, b: Formula) -> Self {
        Formula::Join(Box::new(a), Box::new(b))
    }

    /// Variables in lexicographic order.
    pub fn vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    pub(crate) fn collect_vars(&self, out: &mut BTreeSet<String>) {
        match self {
            Formula::Var(v) => {
                out.insert(v.clone());
            }
            Formula::Const(_) => {}
            Formula::Neg(a) | Formula::Bang(a) | Formula::Quest(a) => a.collect_vars(out),
            Formula::Mult(a, b)
            | Formula::Par(a, b)
            | Formula::Imp(a, b)
            | Formula::Meet(a, b)
            | Formula::Join(a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
        }
    }

    pub fn connectives(&self) -> BTreeSet<Connective> {
        let mut out = BTreeSet::new();
        self.collect_connectives(&mut out);
        out
    }

    fn collect_connectives(&self, out: &mut BTreeSet<Connective>) {
        let c = match self {
            Formula::Var(_) => return,
            Formula::Const(Constant::One) => Connective::One,
            Formula::Const(Constant::Zero) => Connective::Zero,
            Formula::Const(Constant::Top) => Connective::Top,
            Formula::Const(Constant::Bot) => Connective::Bot,
            Formula::Neg(_) => Connective::Neg,
            Formula::Bang(_) => Connective::Bang,
            Formula::Quest(_) => Connective::Quest,
            Formula::Mult(..) => Connective::Mult,
            Formula::Par(..) => Connective::Par,
            Formula::Imp(..) => Connective::Imp,
            Formula::Meet(..) => Connective::Meet,
            Formula::Join(..) => Connective::Join,
        };
        out.insert(c);
        match self {
            Formula::Neg(a) | Formula::Bang(a) | Formula::Quest(a) => a.collect_connectives(out),
            Formula::Mult(a, b)
            | Formula::Par(a, b)
            | Formula::Imp(a, b)
            | Formula::Meet(a, b)
            | Formula::Join(a, b) => {
                a.collect_connectives(out);
                b.collect_connectives(out);
            }
            _ => {}
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            Formula::Var(_) | Formula::Const(_) => 0,
            Formula::Neg(a) | Formula::Bang(a) | Formula::Quest(a) => 1 + a.depth(),
            Formula::Mult(a, b)
            | Formula::Par(a, b)
            | Formula::Imp(a, b)
            | Formula::Meet(a, b)
            | Formula::Join(a, b) => 1 + a.depth().max(b.depth()),
        }
    }

    /// Rewrites the defined connectives away: `p + q` becomes `~p -> q` and
    /// `?p` becomes `~!~p`.
    pub fn expand_defined(&self) -> Formula {
        match self {
            Formula::Var(_) | Formula::Const(_) => self.clone(),
            Formula::Neg(a) => Formula::neg(a.expand_defined()),
            Formula::Bang(a) => Formula::bang(a.expand_defined()),
            Formula::Quest(a) => Formula::neg(Formula::bang(Formula::neg(a.expand_defined()))),
            Formula::Par(a, b) => Formula::imp(Formula::neg(a.expand_defined()), b.expand_defined()),
            Formula::Mult(a, b) => Formula::mult(a.expand_defined(), b.expand_defined()),
            Formula::Imp(a, b) => Formula::imp(a.expand_defined(), b.expand_defined()),
            Formula::Meet(a, b) => Formula::meet(a.expand_defined(), b.expand_defined()),
            Formula::Join(a, b) => Formula::join(a.expand_defined(), b.expand_defined()),
        }
    }

    /// Simultaneous substitution of formulas for variables.
    pub fn substitute(&self, sub: &impl Fn(&str) -> Option<Formula>) -> Formula {
        match self {
            Formula::Var(v) => sub(v).unwrap_or_else(|| self.clone()),
            Formula::Const(_) => self.clone(),
            Formula::Neg(a) => Formula::neg(a.substitute(sub)),
            Formula::Bang(a) => Formula::bang(a.substitute(sub)),
            Formula::Quest(a) => Formula::quest(a.substitute(sub)),
            Formula::Mult(a, b) => Formula::mult(a.substitute(sub), b.substitute(sub)),
            Formula::Par(a, b) => Formula::par(a.substitute(sub), b.substitute(sub)),
            Formula::Imp(a, b) => Formula::imp(a.substitute(sub), b.substitute(sub)),
            Formula::Meet(a, b) => Formula::meet(a.substitute(sub), b.substitute(sub)),
            Formula::Join(a, b) => Formula::join(a.substitute(sub), b.substitute(sub)),
        }
    }

    // Binding strength, loosest first: -> (right), +, \/, /\, *, prefix.
    fn precedence(&self) -> u8 {
        match self {
            Formula::Imp(..) => 1,
            Formula::Par(..) => 2,
            Formula::Join(..) => 3,
            Formula::Meet(..) => 4,
            Formula::Mult(..) => 5,
            Formula::Neg(_) | Formula::Bang(_) | Formula::Quest(_) => 6,
            Formula::Var(_) | Formula::Const(_) => 7,
        }
    }

    fn write_at(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        if self.precedence() < min {
            f.write_str("(")?;
            self.write_at(f, 0)?;
            return f.write_str(")");
        }
        match self {
            Formula::Var(v) => f.write_str(v),
            Formula::Const(c) => f.write_str(c.symbol()),
            Formula::Neg(a) => {
                f.write_str("~")?;
                a.write_at(f, 6)
            }
            Formula::Bang(a) => {
                f.write_str("!")?;
                a.write_at(f, 6)
            }
            Formula::Quest(a) => {
                f.write_str("?")?;
                a.write_at(f, 6)
            }
            Formula::Imp(a, b) => {
                a.write_at(f, 2)?;
                f.write_str(" -> ")?;
                b.write_at(f, 1)
            }
            Formula::Par(a, b) => infix(f, a, b, " + ", 2),
            Formula::Join(a, b) => infix(f, a, b, " \\/ ", 3),
            Formula::Meet(a, b) => infix(f, a, b, " /\\ ", 4),
            Formula::Mult(a, b) => infix(f, a, b, " * ", 5),
        }
    }
}

fn infix(f: &mut fmt::Formatter<'_>, a: &Formula, b: &Formula, op: &str, p: u8) -> fmt::Result {
    a.write_at(f, p)?;
    f.write_str(op)?;
    b.write_at(f, p + 1)
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_at(f, 0)
    }
}

/// `lhs = rhs`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Equation {
    pub lhs: Formula,
    pub rhs: Formula,
}

impl Equation {
    pub fn new(lhs: Formula, rhs: Formula) -> Self {
        Equation { lhs, rhs }
    }

    pub fn vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.lhs.collect_vars(&mut out);
        self.rhs.collect_vars(&mut out);
        out
    }
}

impl fmt::Display for Equation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = {}", self.lhs, self.rhs)
    }
}

/// `e1 & ... & ek => e`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Quasiequation {
    pub premises: Vec<Equation>,
    pub conclusion: Equation,
}

impl Quasiequation {
    pub fn vars(&self) -> BTreeSet<String> {
        let mut out = self.conclusion.vars();
        for p in &self.premises {
            out.extend(p.vars());
        }
        out
    }
}

impl fmt::Display for Quasiequation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, p) in self.premises.iter().enumerate() {
            if i > 0 {
                f.write_str(" & ")?;
            }
            write!(f, "{p}")?;
        }
        if !self.premises.is_empty() {
            f.write_str(" => ")?;
        }
        write!(f, "{}", self.conclusion)
    }
}

/// `f /\ 1 = 1`: a formula holds iff it is designated.
pub fn tau(f: &Formula) -> Equation {
    Equation::new(Formula::meet(f.clone(), Formula::one()), Formula::one())
}

/// `(lhs -> rhs, rhs -> lhs)`: the two formulas whose joint validity
/// expresses the equation.
pub fn rho(e: &Equation) -> (Formula, Formula) {
    (
        Formula::imp(e.lhs.clone(), e.rhs.clone()),
        Formula::imp(e.rhs.clone(), e.lhs.clone()),
    )
}
