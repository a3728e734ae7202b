#![allow(dead_code)]

use polyharm::expr::{AtomSet, Monomial, Var};
use polyharm::{Expr, GaussianRational};
use proptest::prelude::*;

pub fn coefficient() -> impl Strategy<Value = GaussianRational> {
    (-6i64..=6, 1i64..=4, -2i64..=2).prop_map(|(n, d, im)| {
        GaussianRational::new(polyharm::Rational::new(n, d), polyharm::Rational::integer(im))
    })
}

fn monomial(vars: &'static [Var], max_pow: u32, exp: bool) -> impl Strategy<Value = Monomial> {
    (prop::collection::vec(0..=max_pow, vars.len()), -3i32..=3).prop_map(move |(pows, w)| {
        let mut m = Monomial::one();
        for (v, k) in vars.iter().zip(pows) {
            m.pows[v.index()] = k;
        }
        if exp {
            m.exp = w;
        }
        m
    })
}

fn expr_over(atoms: AtomSet, vars: &'static [Var], max_pow: u32, exp: bool, terms: usize) -> impl Strategy<Value = Expr> {
    prop::collection::vec((coefficient(), monomial(vars, max_pow, exp)), 0..=terms)
        .prop_map(move |ts| Expr::from_terms(atoms, ts).expect("monomials lie in the algebra"))
}

pub fn sol_expr() -> impl Strategy<Value = Expr> {
    expr_over(AtomSet::sol(), &[Var::X, Var::Y, Var::T], 3, true, 4)
}

pub fn xyt_expr() -> impl Strategy<Value = Expr> {
    expr_over(AtomSet::xyt(), &[Var::X, Var::Y, Var::T], 3, false, 4)
}

pub fn conformal_poly(atoms: AtomSet) -> impl Strategy<Value = Expr> {
    expr_over(atoms, &[Var::Z, Var::Zb, Var::T], 2, false, 4)
}

/// `p(z, zb, t) + L·q(t)`: the general shape of the conformal-times-line
/// algebra.
pub fn conformal_expr(atoms: AtomSet) -> impl Strategy<Value = Expr> {
    (
        conformal_poly(atoms),
        expr_over(atoms, &[Var::T], 3, false, 2),
    )
        .prop_map(move |(p, q)| p.add(&Expr::log(atoms).unwrap().mul(&q).unwrap()).unwrap())
}

pub fn t_poly(atoms: AtomSet) -> impl Strategy<Value = Expr> {
    expr_over(atoms, &[Var::T], 4, false, 3)
}

pub fn disc_expr(atoms: AtomSet) -> impl Strategy<Value = Expr> {
    (expr_over(atoms, &[Var::Z, Var::Zb], 3, false, 4), coefficient())
        .prop_map(move |(p, c)| p.add(&Expr::log(atoms).unwrap().scale(&c)).unwrap())
}
