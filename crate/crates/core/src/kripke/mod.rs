//! Finite classical Kripke models and their evaluator.
//!
//! A model is a finite poset of worlds with monotone domains, a monotone
//! atomic strong-refutation table, and a monotone (upward-closed) set of
//! exploding worlds. Three relations are evaluated over it:
//!
//! * *strong refutation* `w : A |-s` — structural, connective-directed
//!   evidence against `A`: a conjunction is strongly refuted when one
//!   conjunct is refuted, a disjunction when both disjuncts are, an
//!   implication when the antecedent is forced and the consequent
//!   refuted, a universal when some domain element's instance is
//!   refuted, an existential when every instance is refuted at every
//!   future world; `_|_` always, `T` never.
//! * *forcing* `w :|- A` — every future world strongly refuting `A` is
//!   exploding.
//! * *refutation* `w : A |-` — every future world forcing `A` is
//!   exploding.
//!
//! The three layers are stratified: refutation consults forcing at the
//! same formula, forcing consults strong refutation at the same formula,
//! and strong refutation descends into strict subformulae, so the
//! mutual recursion is well founded over a finite poset. The evaluator
//! memoises `(world, formula, relation)` triples.
//!
//! The induced intuitionistic forcing (atoms read through non-strong
//! forcing, `_|_` forced exactly at exploding worlds) is also provided;
//! it matches classical forcing through the double-negation translation.

mod audit;
mod file;
pub mod gen;

pub use audit::{audit, soundness_check, AuditReport, ClauseResult, SoundnessReport};
pub use file::{parse_model, print_model};

use std::cell::RefCell;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use crate::syntax::{Formula, Ident, Term};

/// A ground atom over element identifiers.
pub type GroundAtom = (Ident, Vec<Ident>);

/// A finite classical Kripke model.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteModel {
    names: Vec<Ident>,
    /// `leq[i][j]` iff world i ≤ world j.
    leq: Vec<Vec<bool>>,
    dom: Vec<BTreeSet<Ident>>,
    srefutes_atoms: BTreeSet<(usize, GroundAtom)>,
    exploding: Vec<bool>,
}

/// A named violation of the model invariants.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ModelViolation {
    NoWorlds,
    NotPoset(String),
    DomNotMonotone { lo: Ident, hi: Ident },
    AtomNotMonotone { atom: String, lo: Ident, hi: Ident },
    AtomArgsOutsideDom { atom: String, world: Ident },
    ExplodingNotUpwardClosed { lo: Ident, hi: Ident },
    UnknownWorld(Ident),
    UnknownElement { element: Ident, world: Ident },
    DuplicateWorld(Ident),
}

impl fmt::Display for ModelViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModelViolation::NoWorlds => write!(f, "model has no worlds"),
            ModelViolation::NotPoset(detail) => write!(f, "order is not a poset: {detail}"),
            ModelViolation::DomNotMonotone { lo, hi } => {
                write!(f, "domain not monotone between {lo} and {hi}")
            }
            ModelViolation::AtomNotMonotone { atom, lo, hi } => {
                write!(f, "atom {atom} not monotone between {lo} and {hi}")
            }
            ModelViolation::AtomArgsOutsideDom { atom, world } => {
                write!(f, "atom {atom} uses elements outside dom({world})")
            }
            ModelViolation::ExplodingNotUpwardClosed { lo, hi } => {
                write!(f, "exploding not upward closed between {lo} and {hi}")
            }
            ModelViolation::UnknownWorld(w) => write!(f, "unknown world {w}"),
            ModelViolation::UnknownElement { element, world } => {
                write!(f, "element {element} not in dom({world})")
            }
            ModelViolation::DuplicateWorld(w) => write!(f, "duplicate world {w}"),
        }
    }
}

impl std::error::Error for ModelViolation {}

impl FiniteModel {
    /// Assemble a model from named parts. The order relation is taken
    /// as given (no closure); `validate` is run before returning.
    pub fn new(
        names: Vec<Ident>,
        leq_pairs: &[(Ident, Ident)],
        dom: Vec<(Ident, Vec<Ident>)>,
        srefutes: Vec<(Ident, GroundAtom)>,
        exploding: Vec<Ident>,
    ) -> Result<FiniteModel, ModelViolation> {
        let (model, _) = Self::assemble(names, leq_pairs, dom, srefutes, exploding, false)?;
        model.validate()?;
        Ok(model)
    }

    /// Like [`FiniteModel::new`] but applies the reflexive-transitive
    /// closure to the order first, returning the pairs the closure
    /// added. This is what the model file loader uses.
    pub fn new_closed(
        names: Vec<Ident>,
        leq_pairs: &[(Ident, Ident)],
        dom: Vec<(Ident, Vec<Ident>)>,
        srefutes: Vec<(Ident, GroundAtom)>,
        exploding: Vec<Ident>,
    ) -> Result<(FiniteModel, Vec<(Ident, Ident)>), ModelViolation> {
        let (model, added) = Self::assemble(names, leq_pairs, dom, srefutes, exploding, true)?;
        model.validate()?;
        Ok((model, added))
    }

    fn assemble(
        names: Vec<Ident>,
        leq_pairs: &[(Ident, Ident)],
        dom: Vec<(Ident, Vec<Ident>)>,
        srefutes: Vec<(Ident, GroundAtom)>,
        exploding: Vec<Ident>,
        close: bool,
    ) -> Result<(FiniteModel, Vec<(Ident, Ident)>), ModelViolation> {
        let mut index: BTreeMap<Ident, usize> = BTreeMap::new();
        for (i, n) in names.iter().enumerate() {
            if index.insert(n.clone(), i).is_some() {
                return Err(ModelViolation::DuplicateWorld(n.clone()));
            }
        }
        let n = names.len();
        let look = |w: &Ident| -> Result<usize, ModelViolation> {
            index
                .get(w)
                .copied()
                .ok_or_else(|| ModelViolation::UnknownWorld(w.clone()))
        };
        let mut leq = vec![vec![false; n]; n];
        for (a, b) in leq_pairs {
            leq[look(a)?][look(b)?] = true;
        }
        let mut added = Vec::new();
        if close {
            for i in 0..n {
                if !leq[i][i] {
                    leq[i][i] = true;
                    added.push((names[i].clone(), names[i].clone()));
                }
            }
            // Floyd-Warshall style transitive closure.
            for k in 0..n {
                for i in 0..n {
                    if leq[i][k] {
                        for j in 0..n {
                            if leq[k][j] && !leq[i][j] {
                                leq[i][j] = true;
                                added.push((names[i].clone(), names[j].clone()));
                            }
                        }
                    }
                }
            }
        }
        let mut dom_sets = vec![BTreeSet::new(); n];
        for (w, elems) in dom {
            let i = look(&w)?;
            dom_sets[i].extend(elems);
        }
        let mut atoms = BTreeSet::new();
        for (w, atom) in srefutes {
            atoms.insert((look(&w)?, atom));
        }
        let mut expl = vec![false; n];
        for w in &exploding {
            expl[look(w)?] = true;
        }
        Ok((
            FiniteModel {
                names,
                leq,
                dom: dom_sets,
                srefutes_atoms: atoms,
                exploding: expl,
            },
            added,
        ))
    }

    /// Check every model invariant, naming the first violation found.
    pub fn validate(&self) -> Result<(), ModelViolation> {
        let n = self.names.len();
        if n == 0 {
            return Err(ModelViolation::NoWorlds);
        }
        for i in 0..n {
            if !self.leq[i][i] {
                return Err(ModelViolation::NotPoset(format!(
                    "{} is not below itself",
                    self.names[i]
                )));
            }
        }
        for i in 0..n {
            for j in 0..n {
                if i != j && self.leq[i][j] && self.leq[j][i] {
                    return Err(ModelViolation::NotPoset(format!(
                        "{} and {} are below each other",
                        self.names[i], self.names[j]
                    )));
                }
                for k in 0..n {
                    if self.leq[i][j] && self.leq[j][k] && !self.leq[i][k] {
                        return Err(ModelViolation::NotPoset(format!(
                            "{} <= {} <= {} but not {} <= {}",
                            self.names[i], self.names[j], self.names[k], self.names[i],
                            self.names[k]
                        )));
                    }
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                if self.leq[i][j] && !self.dom[i].is_subset(&self.dom[j]) {
                    return Err(ModelViolation::DomNotMonotone {
                        lo: self.names[i].clone(),
                        hi: self.names[j].clone(),
                    });
                }
            }
        }
        for (w, atom) in &self.srefutes_atoms {
            if !atom.1.iter().all(|e| self.dom[*w].contains(e)) {
                return Err(ModelViolation::AtomArgsOutsideDom {
                    atom: display_atom(atom),
                    world: self.names[*w].clone(),
                });
            }
            for j in 0..n {
                if self.leq[*w][j] && !self.srefutes_atoms.contains(&(j, atom.clone())) {
                    return Err(ModelViolation::AtomNotMonotone {
                        atom: display_atom(atom),
                        lo: self.names[*w].clone(),
                        hi: self.names[j].clone(),
                    });
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                if self.exploding[i] && self.leq[i][j] && !self.exploding[j] {
                    return Err(ModelViolation::ExplodingNotUpwardClosed {
                        lo: self.names[i].clone(),
                        hi: self.names[j].clone(),
                    });
                }
            }
        }
        Ok(())
    }

    pub fn world_count(&self) -> usize {
        self.names.len()
    }

    pub fn world_names(&self) -> &[Ident] {
        &self.names
    }

    pub fn world_index(&self, name: &str) -> Result<usize, ModelViolation> {
        self.names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| ModelViolation::UnknownWorld(name.to_string()))
    }

    pub fn leq_idx(&self, a: usize, b: usize) -> bool {
        self.leq[a][b]
    }

    pub fn dom_idx(&self, w: usize) -> &BTreeSet<Ident> {
        &self.dom[w]
    }

    pub fn exploding_idx(&self, w: usize) -> bool {
        self.exploding[w]
    }

    pub fn srefutes_atom_idx(&self, w: usize, atom: &GroundAtom) -> bool {
        self.srefutes_atoms.contains(&(w, atom.clone()))
    }

    /// All elements occurring in any world's domain.
    pub fn all_elements(&self) -> BTreeSet<Ident> {
        let mut out = BTreeSet::new();
        for d in &self.dom {
            out.extend(d.iter().cloned());
        }
        out
    }

    pub fn atoms(&self) -> impl Iterator<Item = &(usize, GroundAtom)> {
        self.srefutes_atoms.iter()
    }

    /// Worlds above `w`, `w` included.
    pub fn cone(&self, w: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.names.len()).filter(move |j| self.leq[w][*j])
    }
}

fn display_atom(atom: &GroundAtom) -> String {
    let (pred, args) = atom;
    if args.is_empty() {
        pred.clone()
    } else {
        format!("{}({})", pred, args.join(", "))
    }
}

/// Errors raised when a query formula does not fit the model.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EvalError {
    UnknownWorld(Ident),
    NotASentence { var: Ident },
    ElementOutsideDomain { element: Ident, world: Ident },
    /// Finite models interpret no function symbols; atom arguments must
    /// be element constants.
    FunctionTerm { term: String },
}

impl fmt::Display for EvalError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EvalError::UnknownWorld(w) => write!(f, "unknown world {w}"),
            EvalError::NotASentence { var } => {
                write!(f, "formula has a free variable {var}")
            }
            EvalError::ElementOutsideDomain { element, world } => {
                write!(f, "element {element} is not in dom({world})")
            }
            EvalError::FunctionTerm { term } => {
                write!(f, "function term {term} cannot denote a model element")
            }
        }
    }
}

impl std::error::Error for EvalError {}

/// Which relation a memo entry caches.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
enum Rel {
    SRefutes,
    Forces,
    Refutes,
    IForces,
}

/// Memoising evaluator for one model. Queries are independent; a fresh
/// evaluator can be created per query or shared for a batch.
pub struct Evaluator<'m> {
    model: &'m FiniteModel,
    memo: RefCell<HashMap<(usize, Formula, Rel), bool>>,
}

impl<'m> Evaluator<'m> {
    pub fn new(model: &'m FiniteModel) -> Evaluator<'m> {
        Evaluator {
            model,
            memo: RefCell::new(HashMap::new()),
        }
    }

    pub fn model(&self) -> &FiniteModel {
        self.model
    }

    /// Strong refutation at a named world.
    pub fn srefutes(&self, world: &str, f: &Formula) -> Result<bool, EvalError> {
        let w = self.world(world)?;
        self.check_query(w, f)?;
        Ok(self.srefutes_idx(w, f))
    }

    /// Forcing at a named world.
    pub fn forces(&self, world: &str, f: &Formula) -> Result<bool, EvalError> {
        let w = self.world(world)?;
        self.check_query(w, f)?;
        Ok(self.forces_idx(w, f))
    }

    /// Refutation at a named world.
    pub fn refutes(&self, world: &str, f: &Formula) -> Result<bool, EvalError> {
        let w = self.world(world)?;
        self.check_query(w, f)?;
        Ok(self.refutes_idx(w, f))
    }

    /// Intuitionistic forcing in the induced model.
    pub fn forces_intuitionistic(&self, world: &str, f: &Formula) -> Result<bool, EvalError> {
        let w = self.world(world)?;
        self.check_query(w, f)?;
        Ok(self.iforces_idx(w, f))
    }

    fn world(&self, name: &str) -> Result<usize, EvalError> {
        self.model
            .world_index(name)
            .map_err(|_| EvalError::UnknownWorld(name.to_string()))
    }

    /// Entry validation: the formula must be a sentence whose elements
    /// all lie in `dom(w)` and whose atom arguments are constants.
    fn check_query(&self, w: usize, f: &Formula) -> Result<(), EvalError> {
        if let Some(var) = f.free_vars().into_iter().next() {
            return Err(EvalError::NotASentence { var });
        }
        let mut err = None;
        visit_atom_terms(f, &mut |t| {
            if err.is_some() {
                return;
            }
            match t {
                Term::Const(e) => {
                    if !self.model.dom[w].contains(e) {
                        err = Some(EvalError::ElementOutsideDomain {
                            element: e.clone(),
                            world: self.model.names[w].clone(),
                        });
                    }
                }
                Term::Var(_) => {} // bound variable, instantiated during evaluation
                Term::App(..) => {
                    err = Some(EvalError::FunctionTerm {
                        term: crate::syntax::print_term(t),
                    });
                }
            }
        });
        match err {
            Some(e) => Err(e),
            None => Ok(()),
        }
    }

    pub(crate) fn srefutes_idx(&self, w: usize, f: &Formula) -> bool {
        let key = (w, f.alpha_canon(), Rel::SRefutes);
        if let Some(&v) = self.memo.borrow().get(&key) {
            return v;
        }
        let v = match f {
            Formula::Atom(p, args) => {
                let atom = (
                    p.clone(),
                    args.iter()
                        .map(|t| match t {
                            Term::Const(e) => e.clone(),
                            other => panic!(
                                "ground atom argument must be an element constant, found {other:?}"
                            ),
                        })
                        .collect(),
                );
                self.model.srefutes_atom_idx(w, &atom)
            }
            Formula::Bot => true,
            Formula::Top => false,
            Formula::And(a, b) => self.refutes_idx(w, a) || self.refutes_idx(w, b),
            Formula::Or(a, b) => self.refutes_idx(w, a) && self.refutes_idx(w, b),
            Formula::Imp(a, b) => self.forces_idx(w, a) && self.refutes_idx(w, b),
            Formula::Forall(x, body) => self
                .model
                .dom[w]
                .iter()
                .any(|d| self.refutes_idx(w, &body.subst_var(x, &Term::Const(d.clone())))),
            Formula::Exists(x, body) => self.model.cone(w).all(|w2| {
                self.model.dom[w2]
                    .iter()
                    .all(|d| self.refutes_idx(w2, &body.subst_var(x, &Term::Const(d.clone()))))
            }),
        };
        self.memo.borrow_mut().insert(key, v);
        v
    }

    pub(crate) fn forces_idx(&self, w: usize, f: &Formula) -> bool {
        let key = (w, f.alpha_canon(), Rel::Forces);
        if let Some(&v) = self.memo.borrow().get(&key) {
            return v;
        }
        let v = self
            .model
            .cone(w)
            .all(|w2| !self.srefutes_idx(w2, f) || self.model.exploding[w2]);
        self.memo.borrow_mut().insert(key, v);
        v
    }

    pub(crate) fn refutes_idx(&self, w: usize, f: &Formula) -> bool {
        let key = (w, f.alpha_canon(), Rel::Refutes);
        if let Some(&v) = self.memo.borrow().get(&key) {
            return v;
        }
        let v = self
            .model
            .cone(w)
            .all(|w2| !self.forces_idx(w2, f) || self.model.exploding[w2]);
        self.memo.borrow_mut().insert(key, v);
        v
    }

    pub(crate) fn iforces_idx(&self, w: usize, f: &Formula) -> bool {
        let key = (w, f.alpha_canon(), Rel::IForces);
        if let Some(&v) = self.memo.borrow().get(&key) {
            return v;
        }
        let v = match f {
            Formula::Atom(..) => self.forces_idx(w, f),
            Formula::Top => true,
            Formula::Bot => self.model.exploding[w],
            Formula::And(a, b) => self.iforces_idx(w, a) && self.iforces_idx(w, b),
            Formula::Or(a, b) => self.iforces_idx(w, a) || self.iforces_idx(w, b),
            Formula::Imp(a, b) => self
                .model
                .cone(w)
                .all(|w2| !self.iforces_idx(w2, a) || self.iforces_idx(w2, b)),
            Formula::Forall(x, body) => self.model.cone(w).all(|w2| {
                self.model.dom[w2]
                    .iter()
                    .all(|d| self.iforces_idx(w2, &body.subst_var(x, &Term::Const(d.clone()))))
            }),
            Formula::Exists(x, body) => self.model.dom[w]
                .iter()
                .any(|d| self.iforces_idx(w, &body.subst_var(x, &Term::Const(d.clone())))),
        };
        self.memo.borrow_mut().insert(key, v);
        v
    }

    /// Elements of `f` all lie in `dom(w)`?
    pub(crate) fn elements_fit(&self, w: usize, f: &Formula) -> bool {
        f.consts().iter().all(|e| self.model.dom[w].contains(e))
    }
}

fn visit_atom_terms(f: &Formula, visit: &mut impl FnMut(&Term)) {
    fn visit_term(t: &Term, visit: &mut impl FnMut(&Term)) {
        visit(t);
        if let Term::App(_, args) = t {
            for a in args {
                visit_term(a, visit);
            }
        }
    }
    match f {
        Formula::Atom(_, args) => {
            for t in args {
                visit_term(t, visit);
            }
        }
        Formula::Top | Formula::Bot => {}
        Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) => {
            visit_atom_terms(a, visit);
            visit_atom_terms(b, visit);
        }
        Formula::Forall(_, body) | Formula::Exists(_, body) => visit_atom_terms(body, visit),
    }
}

#[cfg(test)]
mod tests;
