//! Exhaustive enumeration of small models modulo isomorphism, and
//! countermodel search.
//!
//! Lattice-based profiles start from one lattice per isomorphism class and
//! fill the remaining tables by backtracking: multiplications for the
//! residuated profiles (implication is then the residual), implication rows
//! for GS, GL, V-L7 and LR. Girard algebras add each involutive zero, and
//! girales add the modality induced by each relatively complete Heyting
//! subset. Labelled results are deduplicated by canonical key and re-checked
//! against the profile before they are returned.

mod imp;
mod lattice;
mod mult;

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use thiserror::Error;

use crate::algebra::{
    canonical_form, canonical_key, check_profile, residual_of, AlgebraError, BinOp, ConstKind, Elem, FiniteAlgebra,
    Order, Profile, Table, UnOp,
};
use crate::constructions::{induce_modality, rc_heyting_subsets, ConstructionError};
use crate::syntax::{first_counterexample, Assignment, EvalError, Goal};

use lattice::Shape;

/// Largest size searched for profiles built on lattices.
pub const LATTICE_SIZE_CAP: usize = 6;
/// Largest size searched for profiles built on meet-semilattices.
pub const SEMILATTICE_SIZE_CAP: usize = 5;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("SIZE-LIMIT: {profile} search is capped at size {cap}, got {size}")]
    SizeLimit { profile: Profile, size: usize, cap: usize },
    #[error("empty size range {min}..={max}")]
    EmptyRange { min: usize, max: usize },
    #[error("countermodel search needs a goal")]
    NoGoal,
    #[error("frozen structure: {0}")]
    Frozen(String),
    #[error(transparent)]
    Eval(#[from] EvalError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Construction(#[from] ConstructionError),
}

/// What to search for.
#[derive(Debug, Clone)]
pub struct SearchSpec {
    pub profile: Profile,
    pub min_size: usize,
    pub max_size: usize,
    /// Goal to falsify (used by `find_countermodel`).
    pub goal: Option<Goal>,
    /// A partial algebra whose tables and constants every model must share
    /// literally. It must include `meet`, which fixes the labelling, and
    /// restricts the search to its own size.
    pub frozen: Option<FiniteAlgebra>,
}

impl SearchSpec {
    /// Sizes `1..=max_size`.
    pub fn up_to(profile: Profile, max_size: usize) -> Self {
        SearchSpec {
            profile,
            min_size: 1,
            max_size,
            goal: None,
            frozen: None,
        }
    }

    pub fn exactly(profile: Profile, size: usize) -> Self {
        SearchSpec {
            min_size: size,
            ..SearchSpec::up_to(profile, size)
        }
    }

    pub fn with_goal(mut self, goal: Goal) -> Self {
        self.goal = Some(goal);
        self
    }

    pub fn with_frozen(mut self, frozen: FiniteAlgebra) -> Self {
        self.frozen = Some(frozen);
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Counterexample {
    /// Index into `SearchResult::models`.
    pub index: usize,
    pub assignment: Assignment,
}

#[derive(Debug, Clone)]
pub struct SearchResult {
    pub profile: Profile,
    /// Canonical forms, ordered by canonical key (so by size first).
    pub models: Vec<FiniteAlgebra>,
    /// `(size, number of models of that size)` for every size searched.
    pub counts: Vec<(usize, usize)>,
    /// Every size in the requested range was searched completely.
    pub exhausted: bool,
    pub counterexample: Option<Counterexample>,
    pub elapsed: Duration,
}

impl SearchResult {
    pub fn count(&self) -> usize {
        self.models.len()
    }

    pub fn counterexample_model(&self) -> Option<&FiniteAlgebra> {
        self.counterexample.as_ref().map(|c| &self.models[c.index])
    }
}

/// Size cap for a profile.
pub fn size_cap(profile: Profile) -> usize {
    match profile {
        Profile::Gs | Profile::VL7 => SEMILATTICE_SIZE_CAP,
        _ => LATTICE_SIZE_CAP,
    }
}

fn needs_lattice(profile: Profile) -> bool {
    !matches!(profile, Profile::Gs | Profile::VL7)
}

fn check_range(spec: &SearchSpec) -> Result<(usize, usize), SearchError> {
    let (mut lo, mut hi) = (spec.min_size.max(1), spec.max_size);
    if let Some(f) = &spec.frozen {
        if !(lo..=hi).contains(&f.size()) {
            return Err(SearchError::Frozen(format!("size {} is outside {lo}..={hi}", f.size())));
        }
        if f.binary(BinOp::Meet).is_none() {
            return Err(SearchError::Frozen("meet must be given".into()));
        }
        (lo, hi) = (f.size(), f.size());
    }
    if lo > hi {
        return Err(SearchError::EmptyRange { min: lo, max: hi });
    }
    let cap = size_cap(spec.profile);
    if hi > cap {
        return Err(SearchError::SizeLimit {
            profile: spec.profile,
            size: hi,
            cap,
        });
    }
    Ok((lo, hi))
}

/// Every model of `spec.profile` with size in range, modulo isomorphism.
pub fn enumerate_models(spec: &SearchSpec) -> Result<SearchResult, SearchError> {
    let start = Instant::now();
    let (lo, hi) = check_range(spec)?;
    let mut models = Vec::new();
    let mut counts = Vec::new();
    for n in lo..=hi {
        let found = models_of_size(spec.profile, n, spec.frozen.as_ref())?;
        counts.push((n, found.len()));
        models.extend(found);
    }
    Ok(SearchResult {
        profile: spec.profile,
        models,
        counts,
        exhausted: true,
        counterexample: None,
        elapsed: start.elapsed(),
    })
}

/// The first model, in canonical order, that falsifies `spec.goal`. Sizes
/// are searched in increasing order and the search stops after the first
/// size that yields one.
pub fn find_countermodel(spec: &SearchSpec) -> Result<SearchResult, SearchError> {
    let start = Instant::now();
    let goal = spec.goal.as_ref().ok_or(SearchError::NoGoal)?;
    let (lo, hi) = check_range(spec)?;
    let mut models = Vec::new();
    let mut counts = Vec::new();
    for n in lo..=hi {
        let found = models_of_size(spec.profile, n, spec.frozen.as_ref())?;
        counts.push((n, found.len()));
        let offset = models.len();
        models.extend(found);
        for (i, m) in models.iter().enumerate().skip(offset) {
            if let Some(assignment) = first_counterexample(m, goal)? {
                return Ok(SearchResult {
                    profile: spec.profile,
                    models,
                    counts,
                    exhausted: n == hi,
                    counterexample: Some(Counterexample { index: i, assignment }),
                    elapsed: start.elapsed(),
                });
            }
        }
    }
    Ok(SearchResult {
        profile: spec.profile,
        models,
        counts,
        exhausted: true,
        counterexample: None,
        elapsed: start.elapsed(),
    })
}

/// Collects labelled models and keeps one canonical form per class.
struct Sink<'a> {
    profile: Profile,
    frozen: Option<&'a FiniteAlgebra>,
    seen: BTreeMap<Vec<u16>, FiniteAlgebra>,
}

impl Sink<'_> {
    fn push(&mut self, alg: FiniteAlgebra) -> Result<(), SearchError> {
        if let Some(f) = self.frozen {
            if !agrees(&alg, f)? {
                return Ok(());
            }
        }
        if !check_profile(&alg, self.profile)?.is_pass() {
            return Ok(());
        }
        let key = canonical_key(&alg);
        self.seen.entry(key).or_insert_with(|| canonical_form(&alg));
        Ok(())
    }
}

/// Whether every table and constant of `frozen` appears unchanged in `alg`.
fn agrees(alg: &FiniteAlgebra, frozen: &FiniteAlgebra) -> Result<bool, SearchError> {
    let missing = |what: &str| SearchError::Frozen(format!("{what} is not part of the searched signature"));
    for op in BinOp::ALL {
        if let Some(t) = frozen.binary(op) {
            if alg.binary(op).ok_or_else(|| missing(op.name()))? != t {
                return Ok(false);
            }
        }
    }
    for op in UnOp::ALL {
        if let Some(u) = frozen.unary(op) {
            if alg.unary(op).ok_or_else(|| missing(op.name()))? != u {
                return Ok(false);
            }
        }
    }
    for c in ConstKind::ALL {
        if let Some(v) = frozen.constant(c) {
            if alg.constant(c).ok_or_else(|| missing(c.name()))? != v {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn order_of(shape: &Shape) -> Order {
    let n = shape.size();
    Order::from_relation(n, (0..n * n).map(|i| shape.leq(i / n, i % n)).collect())
}

fn shapes_for(profile: Profile, n: usize, frozen: Option<&FiniteAlgebra>) -> Result<Vec<Shape>, SearchError> {
    let lattice = needs_lattice(profile);
    let Some(f) = frozen else {
        return Ok(lattice::shapes(n, lattice));
    };
    let order = crate::algebra::order_from_meet(f)?;
    let mut shape = Shape::from_algebra(f).expect("meet checked");
    if lattice && shape.join.is_none() {
        let lub = |a: Elem, b: Elem| {
            let ups: Vec<Elem> = (0..n).filter(|&c| order.leq(a, c) && order.leq(b, c)).collect();
            ups.iter().copied().find(|&c| ups.iter().all(|&d| order.leq(c, d)))
        };
        if (0..n).any(|a| (0..n).any(|b| lub(a, b).is_none())) {
            return Err(SearchError::Frozen("meet does not define a lattice".into()));
        }
        let join = Table::from_fn(n, |a, b| lub(a, b).unwrap());
        shape.join = Some(join);
    }
    Ok(vec![shape])
}

/// All models of `profile` of size `n` modulo isomorphism, as canonical
/// forms in canonical order.
pub fn models_of_size(profile: Profile, n: usize, frozen: Option<&FiniteAlgebra>) -> Result<Vec<FiniteAlgebra>, SearchError> {
    let cap = size_cap(profile);
    if n > cap {
        return Err(SearchError::SizeLimit { profile, size: n, cap });
    }
    let mut sink = Sink {
        profile,
        frozen,
        seen: BTreeMap::new(),
    };
    for shape in shapes_for(profile, n, frozen)? {
        emit_on_shape(profile, &shape, frozen, &mut sink)?;
    }
    Ok(sink
        .seen
        .into_values()
        .enumerate()
        .map(|(i, m)| m.renamed(format!("{}-{n}-{}", profile.name(), i + 1)))
        .collect())
}

fn base_builder(shape: &Shape) -> crate::algebra::AlgebraBuilder {
    let mut b = FiniteAlgebra::builder_sized("model", shape.size()).binary(BinOp::Meet, shape.meet.clone());
    if let Some(j) = &shape.join {
        b = b.binary(BinOp::Join, j.clone());
    }
    b
}

fn emit_on_shape(profile: Profile, shape: &Shape, frozen: Option<&FiniteAlgebra>, sink: &mut Sink) -> Result<(), SearchError> {
    let n = shape.size();
    let frozen_imp = frozen.and_then(|f| f.binary(BinOp::Imp));
    let mut err: Option<SearchError> = None;
    match profile {
        Profile::PosetLattice => sink.push(base_builder(shape).build()?)?,
        Profile::Gs | Profile::VL7 | Profile::Gl => {
            let mut conds = vec![imp::L4, imp::L5, imp::L6];
            match profile {
                Profile::VL7 => conds.push(imp::L7),
                Profile::Gl => conds.push(imp::GL_JOIN),
                _ => {}
            }
            for one in 0..n {
                imp::for_each_imp(shape, Some(one), &conds, frozen_imp, &mut |t| {
                    if err.is_some() {
                        return;
                    }
                    let alg = base_builder(shape).binary(BinOp::Imp, t).constant(ConstKind::One, one).build();
                    if let Err(e) = alg.map_err(SearchError::from).and_then(|a| sink.push(a)) {
                        err = Some(e);
                    }
                });
            }
        }
        Profile::Lr => {
            let negs = involutions(shape);
            let mut imps = Vec::new();
            imp::for_each_imp(shape, None, &[imp::L4, imp::L5, imp::LR], frozen_imp, &mut |t| imps.push(t));
            for t in &imps {
                for neg in &negs {
                    let alg = base_builder(shape).binary(BinOp::Imp, t.clone()).unary(UnOp::Neg, neg.clone()).build()?;
                    sink.push(alg)?;
                }
            }
        }
        Profile::Heyting => {
            if lattice::distributive(shape) {
                let imp = residual_of(&shape.meet, &order_of(shape))?;
                let top = shape.top().expect("lattice");
                sink.push(base_builder(shape).binary(BinOp::Imp, imp).constant(ConstKind::One, top).build()?)?;
            }
        }
        Profile::Crl
        | Profile::Girard
        | Profile::BoundedGirard
        | Profile::Girale
        | Profile::BoundedGirale => {
            let order = order_of(shape);
            let frozen_mult = frozen.and_then(|f| f.binary(BinOp::Mult));
            for one in 0..n {
                let mut crls = Vec::new();
                mult::for_each_mult(shape, one, frozen_mult, &mut |m| crls.push(m));
                for m in crls {
                    let Ok(imp) = residual_of(&m, &order) else { continue };
                    let crl = base_builder(shape)
                        .binary(BinOp::Mult, m)
                        .binary(BinOp::Imp, imp)
                        .constant(ConstKind::One, one)
                        .build()?;
                    extend_crl(profile, shape, crl, sink)?;
                }
            }
        }
    }
    match err {
        Some(e) => Err(e),
        None => Ok(()),
    }
}

fn extend_crl(profile: Profile, shape: &Shape, crl: FiniteAlgebra, sink: &mut Sink) -> Result<(), SearchError> {
    if profile == Profile::Crl {
        return sink.push(crl);
    }
    let bounded = matches!(profile, Profile::BoundedGirard | Profile::BoundedGirale);
    let girale = matches!(profile, Profile::Girale | Profile::BoundedGirale);
    for zero in crl.elements() {
        if !crl.elements().all(|x| crl.imp(crl.imp(x, zero), zero) == x) {
            continue;
        }
        let neg: Vec<Elem> = crl.elements().map(|x| crl.imp(x, zero)).collect();
        let mut b = crl.to_builder().constant(ConstKind::Zero, zero).unary(UnOp::Neg, neg.clone());
        if bounded {
            let top = shape.top().expect("lattice");
            b = b.constant(ConstKind::Top, top).constant(ConstKind::Bot, neg[top]);
        }
        let girard = b.build()?;
        if !girale {
            sink.push(girard)?;
            continue;
        }
        for h in rc_heyting_subsets(&girard)? {
            sink.push(induce_modality(&girard, h)?)?;
        }
    }
    Ok(())
}

/// Order-reversing involutions of a lattice.
fn involutions(shape: &Shape) -> Vec<Vec<Elem>> {
    let n = shape.size();
    let mut out = Vec::new();
    let mut f = vec![0; n];
    loop {
        let ok = (0..n).all(|a| f[f[a]] == a)
            && (0..n).all(|a| (0..n).all(|b| !shape.leq(a, b) || shape.leq(f[b], f[a])));
        if ok {
            out.push(f.clone());
        }
        let mut k = n;
        loop {
            if k == 0 {
                return out;
            }
            k -= 1;
            f[k] += 1;
            if f[k] < n {
                break;
            }
            f[k] = 0;
        }
    }
}
