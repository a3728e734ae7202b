use polyharm::families::{self, build_family, Axis, FamilyArgs, FAMILIES};
use polyharm::{Convention, Geometry, GaussianRational as C, Order};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn every_family_meets_its_claimed_order() {
    let mut rng = ChaCha8Rng::seed_from_u64(20);
    for d in FAMILIES.iter().filter(|d| d.id != "product.generic") {
        let mut checked = 0;
        while checked < 50 {
            let conv = if checked % 2 == 0 { Convention::Metric } else { Convention::Printed };
            let args = d.random_args(&mut rng, conv);
            let m = match d.build(&args) {
                Ok(m) => m,
                Err(polyharm::Error::Usage(_)) => continue,
                Err(e) => panic!("{}: {e}", d.id),
            };
            let rep = m.geometry.classify(&m.expr, 8).unwrap();
            assert_eq!(rep.order, m.claimed, "{}: {}", d.id, m.expr);
            checked += 1;
        }
    }
}

#[test]
fn generic_product_family() {
    let args = FamilyArgs {
        product: Some("h2xline".into()),
        f1: Some("z".into()),
        f2: Some("t^3".into()),
        ..FamilyArgs::default()
    };
    let m = build_family("product.generic", &args).unwrap();
    assert_eq!(m.claimed, Order::Proper(2));
    assert_eq!(m.geometry.classify(&m.expr, 8).unwrap().order, Order::Proper(2));

    let one = FamilyArgs { f1: Some("1".into()), f2: Some("t^5".into()), ..args.clone() };
    assert_eq!(build_family("product.generic", &one).unwrap().claimed, Order::Proper(3));

    // Biharmonic first factor is rejected; the direct product has order 3.
    let bad = FamilyArgs { f1: Some("-log1m".into()), f2: Some("t^2".into()), ..args };
    assert!(matches!(build_family("product.generic", &bad), Err(polyharm::Error::Usage(_))));
    let g = Geometry::by_id("product:h2xline", Convention::Metric).unwrap();
    let f = g.parse("-log1m*t^2").unwrap();
    assert_eq!(g.classify(&f, 8).unwrap().order, Order::Proper(3));
}

#[test]
fn axis_families_extend_beyond_seven() {
    let sol = Geometry::sol();
    for n in 2..=12 {
        let fx = families::sol_harmonic_axis_family(n, Axis::X).unwrap();
        let fy = families::sol_harmonic_axis_family(n, Axis::Y).unwrap();
        assert!(sol.tension(&fx).unwrap().is_zero(), "n = {n}");
        assert!(sol.tension(&fy).unwrap().is_zero(), "n = {n}");
        assert_eq!(fx.mirror_xy(), fy);
    }
}

#[test]
fn tower_index_shift() {
    let sol = Geometry::sol();
    let a = [1, -2, 3, 1].map(C::integer);
    let b = [2, 0, -1, 1].map(C::integer);
    for r in 1..=5 {
        let f = families::sol_tower(r, &a, &b).unwrap();
        assert_eq!(sol.classify(&f, 8).unwrap().order, Order::Proper(r));
    }
    for r in 1..=4 {
        let f = families::sol_tower_unshifted(r, &a, &b).unwrap();
        assert_eq!(sol.classify(&f, 8).unwrap().order, Order::Proper(r + 1));
    }
    let f = families::sol_tower_unshifted(0, &a, &b).unwrap();
    assert_eq!(sol.classify(&f, 8).unwrap().order, Order::Proper(1));
}

#[test]
fn cancellation_examples() {
    let nil = Geometry::nil();
    let mut b: [C; 12] = std::array::from_fn(|_| C::zero());
    b[0] = C::one();
    b[1] = -C::one();
    let f = families::nil_biharmonic12(&b).unwrap();
    assert!(nil.tension(&f).unwrap().is_zero());
    assert!(families::nil_f2_degenerate(&b));

    let sl2 = Geometry::sl2();
    let b = [2, 0, 0, 1, 0, 0].map(C::integer);
    let f = families::sl2_biharmonic6(&b).unwrap();
    assert!(sl2.tension(&f).unwrap().is_zero());
    assert!(families::sl2_f2_degenerate(&b));
}

#[test]
fn separable_examples() {
    for conv in [Convention::Metric, Convention::Printed] {
        let g = Geometry::h2xr(conv);
        let f = families::conformal_separable(
            families::Surface::HyperbolicDisc,
            conv,
            &[C::zero(), C::one()],
            &[],
            &[0, 1, 0, 0].map(C::integer),
        )
        .unwrap();
        // p = t is harmonic, so is the product.
        assert_eq!(g.classify(&f, 8).unwrap().order, Order::Proper(1));
    }
}
