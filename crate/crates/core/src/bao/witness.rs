//! The approximate swap terms and the genuine swap terms used to separate
//! polyadic from cylindric equational theories.
//!
//! Substitutions here are written with [`Term::subst`], whose first index is
//! the replaced coordinate.

use crate::bao::term::Term;

fn x() -> Term {
    Term::var(0)
}

fn y() -> Term {
    Term::var(1)
}

/// `s_0^1 c_1 x . s_1^0 c_0 x`: approximates the transposition of coordinates
/// 0 and 1 in any dimension.
pub fn approximate_unary() -> Term {
    Term::meet(
        Term::subst(0, 1, Term::cyl(1, x())),
        Term::subst(1, 0, Term::cyl(0, x())),
    )
}

/// The genuine swap of 0 and 1 through the spare coordinate 3.
pub fn swap_unary() -> Term {
    Term::swap(3, 0, 1, x())
}

/// Binary approximation `c_1(c_0 x . s_0^1 c_1 y) . c_1 x . c_0 y`.
pub fn approximate_binary() -> Term {
    Term::meet(
        Term::meet(
            Term::cyl(1, Term::meet(Term::cyl(0, x()), Term::subst(0, 1, Term::cyl(1, y())))),
            Term::cyl(1, x()),
        ),
        Term::cyl(0, y()),
    )
}

/// Binary swap `c_3(s_1^3 c_3 x . s_0^3 c_3 y)` using the spare coordinate 3.
pub fn swap_binary() -> Term {
    Term::cyl(
        3,
        Term::meet(
            Term::subst(1, 3, Term::cyl(3, x())),
            Term::subst(0, 3, Term::cyl(3, y())),
        ),
    )
}

/// `(swap, approximation)` pairs checked as `swap <= approximation`.
pub fn inequality_pairs() -> Vec<(&'static str, Term, Term)> {
    vec![
        ("unary", swap_unary(), approximate_unary()),
        ("binary", swap_binary(), approximate_binary()),
    ]
}
