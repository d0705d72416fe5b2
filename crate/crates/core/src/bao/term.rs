//! Terms over the cylindric / polyadic signature and their evaluation in a
//! complex algebra.
//!
//! All structures handled here are finite, so the complex algebra is the whole
//! powerset of atoms and there is no separate term algebra to build.

use std::collections::BTreeSet;
use std::fmt;

use crate::atomset::AtomSet;
use crate::bao::element::Element;
use crate::bao::structure::CaAtomStructure;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Term {
    Zero,
    One,
    Var(usize),
    Complement(Box<Term>),
    Meet(Box<Term>, Box<Term>),
    Join(Box<Term>, Box<Term>),
    Cyl(usize, Box<Term>),
    Diag(usize, usize),
    /// `s_i^j x = c_i(x . d_ij)`.
    SubstRepl(usize, usize, Box<Term>),
    /// `s_[i,j] x`, needs transpositions.
    SubstTransp(usize, usize, Box<Term>),
    /// `_k s(i, j) x`, swapping `i` and `j` through the spare index `k`;
    /// expands to `s_k^i s_i^j s_j^k x` (innermost substitution applied first).
    SwapMacro { spare: usize, i: usize, j: usize, arg: Box<Term> },
    /// `c_i^d x = -c_i -x`.
    DualCyl(usize, Box<Term>),
}

/// Shorthand constructors.
impl Term {
    pub fn var(k: usize) -> Term {
        Term::Var(k)
    }
    pub fn not(t: Term) -> Term {
        Term::Complement(Box::new(t))
    }
    pub fn meet(a: Term, b: Term) -> Term {
        Term::Meet(Box::new(a), Box::new(b))
    }
    pub fn join(a: Term, b: Term) -> Term {
        Term::Join(Box::new(a), Box::new(b))
    }
    pub fn cyl(i: usize, t: Term) -> Term {
        Term::Cyl(i, Box::new(t))
    }
    pub fn diag(i: usize, j: usize) -> Term {
        Term::Diag(i, j)
    }
    pub fn subst(i: usize, j: usize, t: Term) -> Term {
        Term::SubstRepl(i, j, Box::new(t))
    }
    pub fn transp(i: usize, j: usize, t: Term) -> Term {
        Term::SubstTransp(i, j, Box::new(t))
    }
    pub fn swap(spare: usize, i: usize, j: usize, t: Term) -> Term {
        Term::SwapMacro {
            spare,
            i,
            j,
            arg: Box::new(t),
        }
    }
    pub fn dual_cyl(i: usize, t: Term) -> Term {
        Term::DualCyl(i, Box::new(t))
    }

    /// The chain of replacement substitutions a swap macro stands for.
    pub fn expand_swap(spare: usize, i: usize, j: usize, t: Term) -> Term {
        Term::subst(spare, i, Term::subst(i, j, Term::subst(j, spare, t)))
    }

    pub fn variables(&self) -> BTreeSet<usize> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut BTreeSet<usize>) {
        match self {
            Term::Zero | Term::One | Term::Diag(..) => {}
            Term::Var(k) => {
                out.insert(*k);
            }
            Term::Complement(t)
            | Term::Cyl(_, t)
            | Term::SubstRepl(_, _, t)
            | Term::SubstTransp(_, _, t)
            | Term::DualCyl(_, t)
            | Term::SwapMacro { arg: t, .. } => t.collect_vars(out),
            Term::Meet(a, b) | Term::Join(a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
        }
    }

    /// Checks indices against `dim` and transposition availability.
    pub fn validate(&self, dim: usize, polyadic: bool) -> Result<()> {
        let idx = |i: usize| -> Result<()> {
            if i < dim {
                Ok(())
            } else {
                Err(Error::IndexOutOfRange { index: i, bound: dim })
            }
        };
        match self {
            Term::Zero | Term::One | Term::Var(_) => Ok(()),
            Term::Diag(i, j) => idx(*i).and(idx(*j)),
            Term::Complement(t) => t.validate(dim, polyadic),
            Term::Meet(a, b) | Term::Join(a, b) => {
                a.validate(dim, polyadic)?;
                b.validate(dim, polyadic)
            }
            Term::Cyl(i, t) | Term::DualCyl(i, t) => {
                idx(*i)?;
                t.validate(dim, polyadic)
            }
            Term::SubstRepl(i, j, t) => {
                idx(*i)?;
                idx(*j)?;
                t.validate(dim, polyadic)
            }
            Term::SubstTransp(i, j, t) => {
                idx(*i)?;
                idx(*j)?;
                if !polyadic {
                    return Err(Error::NoTranspositions);
                }
                t.validate(dim, polyadic)
            }
            Term::SwapMacro { spare, i, j, arg } => {
                idx(*spare)?;
                idx(*i)?;
                idx(*j)?;
                arg.validate(dim, polyadic)
            }
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Zero => write!(f, "0"),
            Term::One => write!(f, "1"),
            Term::Var(k) => write!(f, "x{k}"),
            Term::Complement(t) => write!(f, "-({t})"),
            Term::Meet(a, b) => write!(f, "({a} . {b})"),
            Term::Join(a, b) => write!(f, "({a} + {b})"),
            Term::Cyl(i, t) => write!(f, "c{i}({t})"),
            Term::Diag(i, j) => write!(f, "d{i}{j}"),
            Term::SubstRepl(i, j, t) => write!(f, "s{i}^{j}({t})"),
            Term::SubstTransp(i, j, t) => write!(f, "s[{i},{j}]({t})"),
            Term::SwapMacro { spare, i, j, arg } => write!(f, "{spare}s({i},{j})({arg})"),
            Term::DualCyl(i, t) => write!(f, "c{i}d({t})"),
        }
    }
}

/// Evaluates `t` with variable `k` bound to `env[k]`.
pub fn eval_term(s: &CaAtomStructure, t: &Term, env: &[Element]) -> Result<Element> {
    t.validate(s.dim(), s.has_transpositions())?;
    for v in t.variables() {
        let x = env.get(v).ok_or(Error::UnboundVariable(v))?;
        s.owns(x)?;
    }
    let sets: Vec<AtomSet> = env.iter().map(|e| e.members().clone()).collect();
    Ok(Element::new_unchecked(s.id(), eval_sets(s, t, &sets)))
}

/// Raw evaluation; the term must already be validated and all variables bound.
pub(crate) fn eval_sets(s: &CaAtomStructure, t: &Term, env: &[AtomSet]) -> AtomSet {
    let n = s.atom_count();
    match t {
        Term::Zero => AtomSet::empty(n),
        Term::One => AtomSet::full(n),
        Term::Var(k) => env[*k].clone(),
        Term::Complement(a) => eval_sets(s, a, env).complement(),
        Term::Meet(a, b) => eval_sets(s, a, env).intersection(&eval_sets(s, b, env)),
        Term::Join(a, b) => eval_sets(s, a, env).union(&eval_sets(s, b, env)),
        Term::Cyl(i, a) => s.cyl_raw(*i, &eval_sets(s, a, env)),
        Term::Diag(i, j) => s.diag_set(*i, *j).clone(),
        Term::SubstRepl(i, j, a) => s.subst_repl_raw(*i, *j, &eval_sets(s, a, env)),
        Term::SubstTransp(i, j, a) => s
            .transp_raw(*i, *j, &eval_sets(s, a, env))
            .expect("validated polyadic term"),
        Term::SwapMacro { spare, i, j, arg } => {
            let x = eval_sets(s, arg, env);
            let x = s.subst_repl_raw(*j, *spare, &x);
            let x = s.subst_repl_raw(*i, *j, &x);
            s.subst_repl_raw(*spare, *i, &x)
        }
        Term::DualCyl(i, a) => s.cyl_raw(*i, &eval_sets(s, a, env).complement()).complement(),
    }
}

/// Evaluator over 64-bit masks for structures with at most 64 atoms.
///
/// With at most 16 atoms every unary operator is tabulated over all
/// 2^atoms subsets, which is what makes exhaustive equation checking cheap.
pub(crate) struct MaskAlgebra {
    n: usize,
    dim: usize,
    full: u64,
    // per index: image mask of each single atom
    cyl_img: Vec<Vec<u64>>,
    diag: Vec<u64>,
    // per ordered pair (i, j): permutation images, when polyadic
    transp_img: Option<Vec<Vec<u64>>>,
    cyl_table: Option<Vec<Vec<u64>>>,
}

impl MaskAlgebra {
    pub(crate) const TABLE_LIMIT: usize = 16;

    pub(crate) fn new(s: &CaAtomStructure) -> Option<Self> {
        let n = s.atom_count();
        if n > 64 {
            return None;
        }
        let dim = s.dim();
        let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        let cyl_img: Vec<Vec<u64>> = (0..dim)
            .map(|i| {
                (0..n)
                    .map(|b| s.cyl_raw(i, &AtomSet::singleton(n, b)).to_mask())
                    .collect()
            })
            .collect();
        let diag = (0..dim * dim)
            .map(|k| s.diag_set(k / dim, k % dim).to_mask())
            .collect();
        let transp_img = s.has_transpositions().then(|| {
            (0..dim * dim)
                .map(|k| {
                    let p = s.transposition(k / dim, k % dim).expect("polyadic");
                    (0..n).map(|b| 1u64 << p[b]).collect()
                })
                .collect()
        });
        let cyl_table = (n <= Self::TABLE_LIMIT).then(|| {
            cyl_img
                .iter()
                .map(|img| {
                    let mut table = vec![0u64; 1 << n];
                    for x in 1usize..(1 << n) {
                        let low = x.trailing_zeros() as usize;
                        table[x] = table[x & (x - 1)] | img[low];
                    }
                    table
                })
                .collect()
        });
        Some(MaskAlgebra {
            n,
            dim,
            full,
            cyl_img,
            diag,
            transp_img,
            cyl_table,
        })
    }

    pub(crate) fn atoms(&self) -> usize {
        self.n
    }

    pub(crate) fn full(&self) -> u64 {
        self.full
    }

    fn image(img: &[u64], mut x: u64) -> u64 {
        let mut out = 0;
        while x != 0 {
            out |= img[x.trailing_zeros() as usize];
            x &= x - 1;
        }
        out
    }

    pub(crate) fn cyl(&self, i: usize, x: u64) -> u64 {
        match &self.cyl_table {
            Some(t) => t[i][x as usize],
            None => Self::image(&self.cyl_img[i], x),
        }
    }

    fn subst(&self, i: usize, j: usize, x: u64) -> u64 {
        if i == j {
            x
        } else {
            self.cyl(i, x & self.diag[i * self.dim + j])
        }
    }

    pub(crate) fn eval(&self, t: &Term, env: &[u64]) -> u64 {
        match t {
            Term::Zero => 0,
            Term::One => self.full,
            Term::Var(k) => env[*k],
            Term::Complement(a) => !self.eval(a, env) & self.full,
            Term::Meet(a, b) => self.eval(a, env) & self.eval(b, env),
            Term::Join(a, b) => self.eval(a, env) | self.eval(b, env),
            Term::Cyl(i, a) => self.cyl(*i, self.eval(a, env)),
            Term::Diag(i, j) => self.diag[i * self.dim + j],
            Term::SubstRepl(i, j, a) => self.subst(*i, *j, self.eval(a, env)),
            Term::SubstTransp(i, j, a) => {
                let img = &self.transp_img.as_ref().expect("validated polyadic term")[i * self.dim + j];
                Self::image(img, self.eval(a, env))
            }
            Term::SwapMacro { spare, i, j, arg } => {
                let x = self.eval(arg, env);
                let x = self.subst(*j, *spare, x);
                let x = self.subst(*i, *j, x);
                self.subst(*spare, *i, x)
            }
            Term::DualCyl(i, a) => !self.cyl(*i, !self.eval(a, env) & self.full) & self.full,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::set_algebra::full_set_algebra;
    use proptest::prelude::*;

    fn cs3() -> CaAtomStructure {
        full_set_algebra(3, 2).unwrap()
    }

    fn tuple_index(s: &CaAtomStructure, t: &str) -> usize {
        s.labels().iter().position(|l| l == t).unwrap()
    }

    #[test]
    fn variable_and_boolean_laws() {
        let s = cs3();
        let x = s.element([1, 4, 6]).unwrap();
        let env = [x.clone()];
        assert_eq!(eval_term(&s, &Term::var(0), &env).unwrap(), x);
        let contradiction = Term::meet(Term::var(0), Term::not(Term::var(0)));
        assert!(eval_term(&s, &contradiction, &env).unwrap().is_empty());
    }

    #[test]
    fn unbound_variable_and_bad_index_are_errors() {
        let s = cs3();
        assert!(matches!(eval_term(&s, &Term::var(1), &[s.zero()]), Err(Error::UnboundVariable(1))));
        assert!(matches!(
            eval_term(&s, &Term::cyl(3, Term::One), &[]),
            Err(Error::IndexOutOfRange { index: 3, bound: 3 })
        ));
        let plain = s.without_transpositions();
        assert!(matches!(
            eval_term(&plain, &Term::transp(0, 1, Term::One), &[]),
            Err(Error::NoTranspositions)
        ));
    }

    #[test]
    fn approximate_witness_matches_hand_composition() {
        // s_0^1 c_1 x . s_1^0 c_0 x composed from primitive calls
        let s = cs3();
        let x = s.element([tuple_index(&s, "(0,1,0)")]).unwrap();
        let t = crate::bao::witness::approximate_unary();
        let via_term = eval_term(&s, &t, std::slice::from_ref(&x)).unwrap();
        let left = s.subst_repl(0, 1, &s.cyl(1, &x).unwrap()).unwrap();
        let right = s.subst_repl(1, 0, &s.cyl(0, &x).unwrap()).unwrap();
        assert_eq!(via_term, left.meet(&right).unwrap());
        // the approximate witness of a single point is the swapped point
        assert_eq!(via_term.to_vec(), vec![tuple_index(&s, "(1,0,0)")]);
    }

    #[test]
    fn mask_and_set_evaluators_agree_on_fixed_terms() {
        let s = full_set_algebra(3, 2).unwrap();
        let m = MaskAlgebra::new(&s).unwrap();
        let terms = [
            crate::bao::witness::approximate_unary(),
            Term::swap(2, 0, 1, Term::var(0)),
            Term::transp(0, 2, Term::dual_cyl(1, Term::var(0))),
        ];
        for t in &terms {
            for x in 0u64..256 {
                let set = AtomSet::from_mask(8, x);
                assert_eq!(eval_sets(&s, t, &[set]).to_mask(), m.eval(t, &[x]));
            }
        }
    }

    fn arb_term(dim: usize) -> impl Strategy<Value = Term> {
        let leaf = prop_oneof![
            Just(Term::Zero),
            Just(Term::One),
            Just(Term::Var(0)),
            Just(Term::Var(1)),
            (0..dim, 0..dim).prop_map(|(i, j)| Term::Diag(i, j)),
        ];
        leaf.prop_recursive(4, 24, 2, move |inner| {
            prop_oneof![
                inner.clone().prop_map(Term::not),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| Term::meet(a, b)),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| Term::join(a, b)),
                (0..dim, inner.clone()).prop_map(|(i, t)| Term::cyl(i, t)),
                (0..dim, 0..dim, inner.clone()).prop_map(|(i, j, t)| Term::subst(i, j, t)),
                (0..dim, 0..dim, inner.clone()).prop_map(|(i, j, t)| Term::transp(i, j, t)),
                (0..dim, inner.clone()).prop_map(|(i, t)| Term::dual_cyl(i, t)),
            ]
        })
    }

    proptest! {
        #[test]
        fn mask_evaluator_matches_set_evaluator(t in arb_term(3), x in 0u64..256, y in 0u64..256) {
            let s = full_set_algebra(3, 2).unwrap();
            let m = MaskAlgebra::new(&s).unwrap();
            let env = [AtomSet::from_mask(8, x), AtomSet::from_mask(8, y)];
            prop_assert_eq!(eval_sets(&s, &t, &env).to_mask(), m.eval(&t, &[x, y]));
        }
    }
}
