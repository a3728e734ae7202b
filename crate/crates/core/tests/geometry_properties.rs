mod common;

use common::*;
use polyharm::geometry::{product, product_tension_binomial, Geometry};
use polyharm::oracle::{cross_validate, OracleConfig};
use polyharm::{AtomSet, Convention, Expr, GaussianRational};
use proptest::prelude::*;

fn product_rule_holds(g: &Geometry, f: &Expr, h: &Expr) -> bool {
    let lhs = g.tension(&f.mul(h).unwrap()).unwrap();
    let rhs = g
        .tension(f)
        .unwrap()
        .mul(h)
        .unwrap()
        .add(&g.conformality(f, h).unwrap().scale_int(2))
        .unwrap()
        .add(&f.mul(&g.tension(h).unwrap()).unwrap())
        .unwrap();
    lhs == rhs
}

fn h2r() -> AtomSet {
    Geometry::h2xr(Convention::Metric).atoms()
}

fn s2r() -> AtomSet {
    Geometry::s2pxr(Convention::Metric).atoms()
}

fn conventions() -> impl Strategy<Value = Convention> {
    prop_oneof![Just(Convention::Metric), Just(Convention::Printed)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn product_rule_sol(f in sol_expr(), h in sol_expr()) {
        prop_assert!(product_rule_holds(&Geometry::sol(), &f, &h));
    }

    #[test]
    fn product_rule_nil_sl2(f in xyt_expr(), h in xyt_expr()) {
        prop_assert!(product_rule_holds(&Geometry::nil(), &f, &h));
        prop_assert!(product_rule_holds(&Geometry::sl2(), &f, &h));
    }

    #[test]
    fn product_rule_h2xr(conv in conventions(), f in conformal_poly(h2r()), h in conformal_poly(h2r()),
                         l in conformal_expr(h2r()), q in t_poly(h2r())) {
        let g = Geometry::h2xr(conv);
        prop_assert!(product_rule_holds(&g, &f, &h));
        prop_assert!(product_rule_holds(&g, &l, &q));
    }

    #[test]
    fn product_rule_s2pxr(conv in conventions(), f in conformal_poly(s2r()), h in conformal_poly(s2r()),
                          l in conformal_expr(s2r()), q in t_poly(s2r())) {
        let g = Geometry::s2pxr(conv);
        prop_assert!(product_rule_holds(&g, &f, &h));
        prop_assert!(product_rule_holds(&g, &l, &q));
    }

    #[test]
    fn tension_is_linear(f in sol_expr(), h in sol_expr(), a in coefficient(), b in coefficient()) {
        let g = Geometry::sol();
        let lhs = g.tension(&f.scale(&a).add(&h.scale(&b)).unwrap()).unwrap();
        let rhs = g.tension(&f).unwrap().scale(&a).add(&g.tension(&h).unwrap().scale(&b)).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn conformality_is_symmetric_bilinear(f in xyt_expr(), h in xyt_expr(), k in xyt_expr(), a in coefficient()) {
        for g in [Geometry::nil(), Geometry::sl2()] {
            prop_assert_eq!(g.conformality(&f, &h).unwrap(), g.conformality(&h, &f).unwrap());
            let lhs = g.conformality(&f.scale(&a).add(&k).unwrap(), &h).unwrap();
            let rhs = g.conformality(&f, &h).unwrap().scale(&a).add(&g.conformality(&k, &h).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
            prop_assert!(g.conformality(&f, &Expr::one(f.atoms())).unwrap().is_zero());
        }
    }

    #[test]
    fn conformal_conformality_is_symmetric(f in conformal_poly(Geometry::h2xr(Convention::Metric).atoms()),
                                           h in conformal_poly(Geometry::h2xr(Convention::Metric).atoms())) {
        let g = Geometry::h2xr(Convention::Metric);
        prop_assert_eq!(g.conformality(&f, &h).unwrap(), g.conformality(&h, &f).unwrap());
    }

    #[test]
    fn convention_scales_disc_part(f in disc_expr(Geometry::hyperbolic_disc(Convention::Metric).atoms()),
                                   p in t_poly(Geometry::h2xr(Convention::Metric).atoms())) {
        let metric = Geometry::hyperbolic_disc(Convention::Metric);
        let printed = Geometry::hyperbolic_disc(Convention::Printed);
        prop_assert_eq!(printed.tension(&f).unwrap(), metric.tension(&f).unwrap().scale_int(4));
        // On the product the line part is unaffected.
        let m = Geometry::h2xr(Convention::Metric);
        let pr = Geometry::h2xr(Convention::Printed);
        let fp = f.embed(m.atoms()).unwrap().add(&p).unwrap();
        let diff = pr.tension(&fp).unwrap().sub(&m.tension(&fp).unwrap()).unwrap();
        let disc_part = metric.tension(&f).unwrap().embed(m.atoms()).unwrap().scale_int(3);
        prop_assert_eq!(diff, disc_part);
    }

    #[test]
    fn cross_factor_conformality_vanishes(f in disc_expr(Geometry::hyperbolic_disc(Convention::Metric).atoms()),
                                          q in t_poly(polyharm::AtomSet::line(polyharm::Var::T))) {
        let prod = product(&Geometry::hyperbolic_disc(Convention::Metric), &Geometry::line()).unwrap();
        let k = prod.combined.conformality(&prod.embed_first(&f).unwrap(), &prod.embed_second(&q).unwrap()).unwrap();
        prop_assert!(k.is_zero());
    }

    #[test]
    fn binomial_lemma(f in disc_expr(Geometry::hyperbolic_disc(Convention::Metric).atoms()),
                      q in t_poly(polyharm::AtomSet::line(polyharm::Var::T)),
                      r in t_poly(polyharm::AtomSet::line(polyharm::Var::T)),
                      conv in conventions()) {
        let line = Geometry::line();
        let disc = Geometry::hyperbolic_disc(conv);
        for (prod, f1) in [(product(&disc, &line).unwrap(), &f), (product(&line, &line).unwrap(), &r)] {
            let chain = prod.combined.iterated_tension(&prod.separable(f1, &q).unwrap(), 4).unwrap();
            for n in 1..=4 {
                prop_assert_eq!(&chain[n as usize], &product_tension_binomial(&prod, f1, &q, n).unwrap());
            }
        }
    }
}

#[test]
fn appendix_orders_agree_across_conventions() {
    for conv in [Convention::Metric, Convention::Printed] {
        let h2 = Geometry::hyperbolic_disc(conv);
        let s2 = Geometry::punctured_sphere(conv);
        assert_eq!(h2.classify(&h2.parse("-log1m").unwrap(), 8).unwrap().order.proper(), Some(2));
        assert_eq!(s2.classify(&s2.parse("log1p").unwrap(), 8).unwrap().order.proper(), Some(2));
        let tau = h2.tension(&h2.parse("-log1m").unwrap()).unwrap();
        assert_eq!(tau.as_constant(), Some(GaussianRational::integer(conv.factor())));
        let tau = s2.tension(&s2.parse("log1p").unwrap()).unwrap();
        assert_eq!(tau.as_constant(), Some(GaussianRational::integer(conv.factor())));
    }
}

#[test]
fn symbolic_matches_oracle_on_every_geometry() {
    let cfg = OracleConfig { samples: 25, ..OracleConfig::default() };
    let cases = [
        ("sol", "x^3*y*E(2) - t^2*x"),
        ("nil", "x^2*y*t - y^3 + x*t^2"),
        ("sl2", "x*y^2*t - t^3 + x^2"),
        ("h2", "z^2*zb - 3*log1m"),
        ("s2p", "z*zb^2 + log1p"),
        ("h2xr", "z*zb*t^2 - log1m*t"),
        ("s2pxr", "zb^2*t + 2*log1p*t^2"),
        ("line", "t^4"),
        ("product:linexline", "t^2*s^3"),
        ("product:h2xline", "z^2*zb*t - log1m"),
    ];
    for (id, src) in cases {
        let g = Geometry::by_id(id, Convention::Metric).unwrap();
        let f = g.parse(src).unwrap();
        let report = cross_validate(&g, &f, &cfg).unwrap();
        assert!(report.passed, "{id}: {src}: {report:?}");
    }
}
