use polyharm::oracle::{fd_tension, OracleConfig};
use polyharm::{Convention, Geometry};

/// Plain central differences converge at second order: halving the step
/// divides the error by about four. Quadratic inputs are differentiated
/// exactly by the stencil, so the test uses quartic powers.
#[test]
fn central_differences_are_second_order() {
    let cases = [
        ("sol", "x^4*y^4*t^4", vec![0.4, -0.3, 0.5]),
        ("nil", "x^4*y^4*t^4", vec![0.4, -0.3, 0.5]),
        ("h2", "z^4*zb^4", vec![0.3, 0.2]),
    ];
    for (id, src, p) in cases {
        let g = Geometry::by_id(id, Convention::Metric).unwrap();
        let f = g.parse(src).unwrap();
        let exact = g.evaluate(&g.tension(&f).unwrap(), &p).unwrap();
        let err = |h: f64| {
            let cfg = OracleConfig { step: h, levels: 1, ..OracleConfig::default() };
            (fd_tension(&g, |q| g.evaluate(&f, q), &p, &cfg).unwrap() - exact).norm()
        };
        let (e1, e2) = (err(0.02), err(0.01));
        let ratio = e1 / e2;
        assert!((3.5..4.5).contains(&ratio), "{id}: ratio {ratio} ({e1:e}, {e2:e})");

        let refined = OracleConfig { step: 0.02, levels: 2, ..OracleConfig::default() };
        let r = (fd_tension(&g, |q| g.evaluate(&f, q), &p, &refined).unwrap() - exact).norm();
        assert!(r < e2 / 10.0, "{id}: Richardson {r:e} vs {e2:e}");
    }
}
