//! Seeded random generation of models and formulae for audits and
//! property tests.
//!
//! Models are built so the invariants hold by construction: the order is
//! sampled over an index-increasing edge set and transitively closed,
//! domains and atom tables are closed upward, and the exploding set is
//! closed upward. Audit failures on generated models therefore point at
//! the evaluator, not the generator.

use rand::Rng;

use super::FiniteModel;
use crate::syntax::{Formula, Ident, Term};

/// Predicate signature shared by the generators: two propositional
/// letters, one unary and one binary predicate.
pub const PREDS: [(&str, usize); 4] = [("X", 0), ("Y", 0), ("P", 1), ("Q", 2)];

#[derive(Debug, Clone)]
pub struct ModelGenConfig {
    pub max_worlds: usize,
    pub max_elements: usize,
    pub edge_prob: f64,
    pub atom_prob: f64,
    pub exploding_prob: f64,
}

impl Default for ModelGenConfig {
    fn default() -> Self {
        ModelGenConfig {
            max_worlds: 4,
            max_elements: 3,
            edge_prob: 0.4,
            atom_prob: 0.3,
            exploding_prob: 0.15,
        }
    }
}

/// Sample a valid model: a random poset of at most `max_worlds` worlds
/// over at most `max_elements` elements.
pub fn random_model(rng: &mut impl Rng, cfg: &ModelGenConfig) -> FiniteModel {
    let n = rng.gen_range(1..=cfg.max_worlds);
    let names: Vec<Ident> = (0..n).map(|i| format!("w{i}")).collect();
    let elements: Vec<Ident> = (0..cfg.max_elements).map(|i| format!("e{i}")).collect();

    // Order: edges only from lower to higher index, then closed.
    let mut leq = vec![vec![false; n]; n];
    for (i, row) in leq.iter_mut().enumerate() {
        row[i] = true;
        for cell in row.iter_mut().skip(i + 1) {
            if rng.gen_bool(cfg.edge_prob) {
                *cell = true;
            }
        }
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if leq[i][k] && leq[k][j] {
                    leq[i][j] = true;
                }
            }
        }
    }

    // Domains: nonempty base per world, closed upward along leq.
    let mut dom: Vec<Vec<Ident>> = Vec::with_capacity(n);
    for _ in 0..n {
        let size = rng.gen_range(1..=cfg.max_elements);
        let mut base: Vec<Ident> = elements.clone();
        while base.len() > size {
            let idx = rng.gen_range(0..base.len());
            base.remove(idx);
        }
        dom.push(base);
    }
    for j in 0..n {
        for i in 0..n {
            if i != j && leq[i][j] {
                let lower = dom[i].clone();
                for e in lower {
                    if !dom[j].contains(&e) {
                        dom[j].push(e);
                    }
                }
            }
        }
    }

    // Atom table: sample, then close upward.
    let mut atoms: Vec<(usize, (Ident, Vec<Ident>))> = Vec::new();
    for (w, d) in dom.iter().enumerate() {
        for (pred, arity) in PREDS {
            for args in tuples(d, arity) {
                if rng.gen_bool(cfg.atom_prob) {
                    atoms.push((w, (pred.to_string(), args)));
                }
            }
        }
    }
    let mut closed_atoms = atoms.clone();
    for (w, atom) in atoms {
        for (j, _) in leq[w].iter().enumerate().filter(|(_, up)| **up) {
            if !closed_atoms.contains(&(j, atom.clone())) {
                closed_atoms.push((j, atom.clone()));
            }
        }
    }

    // Exploding: sample, close upward.
    let mut exploding = vec![false; n];
    for (w, e) in exploding.iter_mut().enumerate() {
        let _ = w;
        *e = rng.gen_bool(cfg.exploding_prob);
    }
    for i in 0..n {
        if exploding[i] {
            for j in 0..n {
                if leq[i][j] {
                    exploding[j] = true;
                }
            }
        }
    }

    let mut leq_pairs: Vec<(Ident, Ident)> = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if leq[i][j] {
                leq_pairs.push((names[i].clone(), names[j].clone()));
            }
        }
    }
    let dom_named: Vec<(Ident, Vec<Ident>)> = names
        .iter()
        .cloned()
        .zip(dom.iter().cloned())
        .collect();
    let srefutes: Vec<(Ident, (Ident, Vec<Ident>))> = closed_atoms
        .into_iter()
        .map(|(w, atom)| (names[w].clone(), atom))
        .collect();
    let exploding_named: Vec<Ident> = (0..n)
        .filter(|w| exploding[*w])
        .map(|w| names[w].clone())
        .collect();

    FiniteModel::new(names, &leq_pairs, dom_named, srefutes, exploding_named)
        .expect("generated model must satisfy the invariants")
}

fn tuples(dom: &[Ident], arity: usize) -> Vec<Vec<Ident>> {
    if arity == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for rest in tuples(dom, arity - 1) {
        for e in dom {
            let mut t = rest.clone();
            t.push(e.clone());
            out.push(t);
        }
    }
    out
}

#[derive(Debug, Clone)]
pub struct FormulaGenConfig {
    pub max_depth: usize,
    /// Remaining quantifier nesting allowance.
    pub max_quant_depth: usize,
    /// Ground terms usable as atom arguments (model elements or
    /// declared constants).
    pub elements: Vec<Ident>,
}

impl FormulaGenConfig {
    pub fn ground(max_depth: usize, elements: Vec<Ident>) -> Self {
        FormulaGenConfig {
            max_depth,
            max_quant_depth: max_depth.min(2),
            elements,
        }
    }
}

/// Sample a sentence: propositional connectives at every depth,
/// quantifiers while the quantifier budget lasts, atoms over bound
/// variables and the configured ground terms.
pub fn random_sentence(rng: &mut impl Rng, cfg: &FormulaGenConfig) -> Formula {
    gen_formula(rng, cfg.max_depth, cfg.max_quant_depth, &cfg.elements, &mut Vec::new())
}

fn gen_formula(
    rng: &mut impl Rng,
    depth: usize,
    quant: usize,
    elements: &[Ident],
    bound: &mut Vec<Ident>,
) -> Formula {
    if depth == 0 {
        return gen_atom(rng, elements, bound);
    }
    let can_quant = quant > 0;
    let choice = rng.gen_range(0..if can_quant { 10 } else { 8 });
    match choice {
        0 | 1 => gen_atom(rng, elements, bound),
        2 | 3 => Formula::and(
            gen_formula(rng, depth - 1, quant, elements, bound),
            gen_formula(rng, depth - 1, quant, elements, bound),
        ),
        4 | 5 => Formula::or(
            gen_formula(rng, depth - 1, quant, elements, bound),
            gen_formula(rng, depth - 1, quant, elements, bound),
        ),
        6 | 7 => Formula::imp(
            gen_formula(rng, depth - 1, quant, elements, bound),
            gen_formula(rng, depth - 1, quant, elements, bound),
        ),
        _ => {
            let var = format!("v{}", bound.len());
            bound.push(var.clone());
            let body = gen_formula(rng, depth - 1, quant - 1, elements, bound);
            bound.pop();
            if rng.gen_bool(0.5) {
                Formula::Forall(var, Box::new(body))
            } else {
                Formula::Exists(var, Box::new(body))
            }
        }
    }
}

fn gen_atom(rng: &mut impl Rng, elements: &[Ident], bound: &[Ident]) -> Formula {
    // small chance of a constant truth value
    match rng.gen_range(0..10) {
        0 => return Formula::Top,
        1 => return Formula::Bot,
        _ => {}
    }
    let mut terms: Vec<Term> = Vec::new();
    terms.extend(bound.iter().map(|v| Term::Var(v.clone())));
    terms.extend(elements.iter().map(|e| Term::Const(e.clone())));
    let usable: Vec<&(&str, usize)> = PREDS
        .iter()
        .filter(|(_, arity)| *arity == 0 || !terms.is_empty())
        .collect();
    let (pred, arity) = usable[rng.gen_range(0..usable.len())];
    let args = (0..*arity)
        .map(|_| terms[rng.gen_range(0..terms.len())].clone())
        .collect();
    Formula::Atom(pred.to_string(), args)
}
