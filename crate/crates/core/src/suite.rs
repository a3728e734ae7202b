//! Regression suite over the published identities, and the randomized check
//! of the product binomial formula.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::expr::{AtomSet, Monomial, Var};
use crate::families::{self, Axis, Surface, C};
use crate::geometry::{product, product_tension_binomial, Convention, Geometry, Order, ProductGeometry};
use crate::numeric::ExactMatrix;
use crate::oracle::{self, OracleConfig};
use crate::Expr;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Outcome {
    Pass,
    Fail,
    /// A known, documented disagreement (the scaled conformal operator
    /// against the metric-derived oracle).
    ExpectedMismatch,
    /// The identity needs a higher order than the configured bound.
    ExceedsBound,
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteEntry {
    pub anchor: String,
    pub convention: Option<Convention>,
    pub outcome: Outcome,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub entries: Vec<SuiteEntry>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.entries.iter().all(|e| e.outcome != Outcome::Fail)
    }

    pub fn failures(&self) -> impl Iterator<Item = &SuiteEntry> {
        self.entries.iter().filter(|e| e.outcome == Outcome::Fail)
    }

    pub fn count(&self, outcome: Outcome) -> usize {
        self.entries.iter().filter(|e| e.outcome == outcome).count()
    }
}

#[derive(Debug, Clone)]
pub struct SuiteOptions {
    pub conventions: Vec<Convention>,
    pub r_max: u32,
    pub seed: u64,
    pub lemma_trials: usize,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions {
            conventions: vec![Convention::Metric, Convention::Printed],
            r_max: crate::geometry::DEFAULT_R_MAX,
            seed: 0x5eed,
            lemma_trials: 20,
        }
    }
}

struct Suite {
    r_max: u32,
    entries: Vec<SuiteEntry>,
}

impl Suite {
    fn push(&mut self, anchor: &str, convention: Option<Convention>, outcome: Outcome, detail: String) {
        self.entries.push(SuiteEntry { anchor: anchor.to_string(), convention, outcome, detail });
    }

    fn holds(&mut self, anchor: &str, convention: Option<Convention>, check: Result<(bool, String)>) {
        let (outcome, detail) = match check {
            Ok((true, d)) => (Outcome::Pass, d),
            Ok((false, d)) => (Outcome::Fail, d),
            Err(e) => (Outcome::Fail, format!("error: {e}")),
        };
        self.push(anchor, convention, outcome, detail);
    }

    fn equal(&mut self, anchor: &str, convention: Option<Convention>, lhs: Result<Expr>, rhs: Result<Expr>) {
        let check = lhs.and_then(|l| {
            let r = rhs?;
            let d = if l == r { format!("{l}") } else { format!("{l} != {r}") };
            Ok((l == r, d))
        });
        self.holds(anchor, convention, check);
    }

    fn order(&mut self, anchor: &str, g: &Geometry, f: Result<Expr>, expected: u32) {
        let conv = g.has_conformal_factor().then(|| g.convention());
        if expected > self.r_max {
            self.push(anchor, conv, Outcome::ExceedsBound, format!("order {expected} > r_max {}", self.r_max));
            return;
        }
        let check = f.and_then(|f| {
            let rep = g.classify(&f, self.r_max)?;
            Ok((rep.order == Order::Proper(expected), format!("order {}", rep.order)))
        });
        self.holds(anchor, conv, check);
    }
}

fn rows_match_up_to_scaling(m: &ExactMatrix, printed: &[&[i64]]) -> bool {
    let ours: Vec<_> = m.row_vecs().into_iter().filter_map(|r| families::primitive_integer_form(&r)).collect();
    let theirs: Vec<_> = printed
        .iter()
        .filter_map(|r| families::primitive_integer_form(&r.iter().map(|&v| C::integer(v)).collect::<Vec<_>>()))
        .collect();
    ours.len() == theirs.len() && theirs.iter().all(|r| ours.contains(r))
}

fn sol_identities(s: &mut Suite) {
    let sol = Geometry::sol();
    let p = |src: &str| sol.parse(src);

    let printed = [
        (2, "2*x^2 - E(-2)"),
        (3, "2*x^3 - 3*x*E(-2)"),
        (4, "8*x^4 - 24*x^2*E(-2) + 3*E(-4)"),
        (5, "8*x^5 - 40*x^3*E(-2) + 15*x*E(-4)"),
        (6, "16*x^6 - 120*x^4*E(-2) + 90*x^2*E(-4) - 5*E(-6)"),
        (7, "16*x^7 - 168*x^5*E(-2) + 210*x^3*E(-4) - 35*x*E(-6)"),
    ];
    for (n, text) in printed {
        let anchor = format!("sol.axis.x.n{n}");
        s.equal(&anchor, None, families::sol_harmonic_axis_family(n, Axis::X), p(text));
        s.equal(&format!("{anchor}.harmonic"), None, p(text).and_then(|f| sol.tension(&f)), Ok(Expr::zero(sol.atoms())));
    }
    s.equal("sol.axis.y.n2", None, families::sol_harmonic_axis_family(2, Axis::Y), p("2*y^2 - E(2)"));

    let matrices: [(&str, &[&[i64]]); 2] = [
        ("x^2, x*E(-1), E(-2)", &[&[2, 0, 1], &[0, 1, 0]]),
        ("x^3, x^2*E(-1), x*E(-2), E(-3)", &[&[9, 0, 2, 0], &[0, 2, 0, 3], &[0, 0, 1, 0]]),
    ];
    for (i, (terms, printed)) in matrices.iter().enumerate() {
        let check = families::AnsatzSystem::from_text(&sol, terms, 1).map(|sys| {
            let ok = rows_match_up_to_scaling(sys.matrix(), printed);
            (ok, format!("{}", sys.primitive_rows()))
        });
        s.holds(&format!("sol.ansatz.n{}.matrix", i + 2), None, check);
    }
    let kernel = families::AnsatzSystem::from_text(&sol, "x^4, x^3*E(-1), x^2*E(-2), x*E(-3), E(-4)", 1)
        .and_then(|sys| sys.generate_kernel())
        .and_then(|k| match k.as_slice() {
            [f] => Ok(families::primitive_expr(f)),
            _ => Err(Error::Consistency(format!("kernel dimension {}", k.len()))),
        });
    s.equal("sol.ansatz.n4.kernel", None, kernel, p("8*x^4 - 24*x^2*E(-2) + 3*E(-4)"));

    let one = C::one();
    let zero = C::zero();
    let mixed = families::sol_mixed_harmonic(2, &one, &one, &one, &one, &one, &one);
    s.equal("sol.mixed.n2.all-ones", None, mixed.clone(), p("(1+y)*(2*x^2 - E(-2)) + (1+x)*(2*y^2 - E(2))"));
    s.equal("sol.mixed.n2.harmonic", None, mixed.and_then(|f| sol.tension(&f)), Ok(Expr::zero(sol.atoms())));
    let (a, b) = (C::integer(3), C::ratio(-1, 2));
    s.equal(
        "sol.mixed.n3.constant-weights",
        None,
        families::sol_mixed_harmonic(3, &a, &b, &one, &zero, &one, &zero),
        p("3*(2*x^3 - 3*x*E(-2)) - 1/2*(2*y^3 - 3*y*E(2))"),
    );

    for (params, expected) in [([1, 0, 1, 0], "-8"), ([0, 1, 0, 1], "-72*x*y"), ([2, -1, 3, 5], "-8*(2 - 3*x)*(3 + 15*y)")] {
        let [a2, a3, b2, b3] = params.map(C::integer);
        let anchor = format!("sol.h2h3.tension.{}", params.map(|v| v.to_string()).join(","));
        let f = families::sol_h2h3(&a2, &a3, &b2, &b3);
        s.equal(&anchor, None, f.clone().and_then(|f| sol.tension(&f)), p(expected));
        s.order(&format!("{anchor}.order"), &sol, f, 2);
    }
    let kappa = families::sol_h2h3_factors(&C::integer(2), &C::integer(-1), &C::integer(3), &C::integer(5))
        .and_then(|(h2, h3)| sol.conformality(&h2, &h3));
    s.equal("sol.h2h3.conformality", None, kappa, p("-4*(2 - 3*x)*(3 + 15*y)"));

    for r in 1..=4u32 {
        let check = p("1 + 2*x - 3*y + 5*x*y").and_then(|f1| {
            let tr = Expr::var(sol.atoms(), Var::T)?.pow(r)?;
            let k = sol.conformality(&tr, &f1)?;
            Ok((k.is_zero(), format!("{k}")))
        });
        s.holds(&format!("sol.tower.conformality-t^{r}"), None, check);
    }
    for r in 1..=3u32 {
        let f1 = p("1 + 2*x - 3*y + 5*x*y");
        let lhs = f1.clone().and_then(|f1| {
            let t = Expr::var(sol.atoms(), Var::T)?;
            sol.tension(&t.pow(2 * r)?.mul(&f1)?)
        });
        let rhs = f1.and_then(|f1| {
            let t = Expr::var(sol.atoms(), Var::T)?;
            Ok(t.pow(2 * r - 2)?.mul(&f1)?.scale_int((2 * r * (2 * r - 1)) as i64))
        });
        s.equal(&format!("sol.tower.tension-step.r{r}"), None, lhs, rhs);
    }
    let a = [1, 2, -1, 3].map(C::integer);
    let b = [0, 1, 1, -2].map(C::integer);
    for r in 1..=5 {
        s.order(&format!("sol.tower.order.r{r}"), &sol, families::sol_tower(r, &a, &b), r);
    }
}

fn nil_sl2_identities(s: &mut Suite) {
    let nil = Geometry::nil();
    let b: [C; 12] = std::array::from_fn(|i| C::integer(i as i64 + 1));
    let expansion = "2*b1 + 2*b2 + 2*b3*x + 6*b4*x + 2*b5*y + 2*b6*t + 2*b7*x + 6*b8*y + 6*b9*x*y + 6*b10*x*y + 2*b11*(t + 2*x*y) + 6*b12*x*t";
    let mut text = expansion.to_string();
    for i in (1..=12).rev() {
        text = text.replace(&format!("b{i}"), &format!("{}", i));
    }
    let f2 = families::nil_biharmonic12(&b);
    s.equal("nil.f2.tension-expansion", None, f2.clone().and_then(|f| nil.tension(&f)), nil.parse(&text));
    s.order("nil.f2.all-ones.order", &nil, families::nil_biharmonic12(&std::array::from_fn(|_| C::one())), 2);
    s.order("nil.f2.order", &nil, f2, 2);
    let unit = |k: usize| -> [C; 12] { std::array::from_fn(|i| if i == k { C::one() } else { C::zero() }) };
    s.equal("nil.f2.b11", None, families::nil_biharmonic12(&unit(10)).and_then(|f| nil.tension(&f)), nil.parse("2*(t + 2*x*y)"));
    s.equal("nil.f2.b12", None, families::nil_biharmonic12(&unit(11)).and_then(|f| nil.tension(&f)), nil.parse("6*x*t"));
    s.equal("nil.f2.b12.expr", None, families::nil_biharmonic12(&unit(11)), nil.parse("x^3*t"));
    let f1 = families::nil_harmonic(&[C::one(), C::one()], &[], &[]);
    s.equal("nil.f1.t-part", None, f1.clone(), nil.parse("t + x*t"));
    s.order("nil.f1.harmonic", &nil, f1, 1);

    let sl2 = Geometry::sl2();
    let b: [C; 6] = std::array::from_fn(|i| C::integer(i as i64 + 1));
    let f2 = families::sl2_biharmonic6(&b);
    s.equal(
        "sl2.f2.tension-expansion",
        None,
        f2.clone().and_then(|f| sl2.tension(&f)),
        sl2.parse("-2*1*y + 4*2 + 4*3*(x - y*t) + 4*4*y + 12*5*t + 12*6*y*t"),
    );
    s.order("sl2.f2.order", &sl2, f2, 2);
    let unit = |k: usize| -> [C; 6] { std::array::from_fn(|i| if i == k { C::one() } else { C::zero() }) };
    s.equal("sl2.f2.b3", None, families::sl2_biharmonic6(&unit(2)).and_then(|f| sl2.tension(&f)), sl2.parse("4*(x - y*t)"));
    s.equal("sl2.f2.b2", None, families::sl2_biharmonic6(&unit(1)).and_then(|f| sl2.tension(&f)), sl2.parse("4"));
    let f1 = families::sl2_harmonic(&[C::zero(), C::one()], &[], &[]);
    s.equal("sl2.f1.t-part", None, f1.clone(), sl2.parse("y*t"));
    s.order("sl2.f1.harmonic", &sl2, f1, 1);
}

fn conformal_identities(s: &mut Suite, conv: Convention) {
    let c = Some(conv);
    let factor = conv.factor();
    let h2 = Geometry::hyperbolic_disc(conv);
    let s2 = Geometry::punctured_sphere(conv);

    let (_, f) = families::log_biharmonic(Surface::HyperbolicDisc, conv, None).expect("static family");
    s.equal("h2.log.tension", c, h2.tension(&f), Ok(Expr::constant(h2.atoms(), C::integer(factor))));
    s.order("h2.log.order", &h2, Ok(f), 2);
    let (_, f) = families::log_biharmonic(Surface::PuncturedSphere, conv, None).expect("static family");
    let check = s2.tension(&f).map(|t| (t.as_constant().is_some_and(|k| !k.is_zero()), format!("{t}")));
    s.holds("s2p.log.tension-constant", c, check);
    s.order("s2p.log.order", &s2, Ok(f), 2);

    let h2xr = Geometry::h2xr(conv);
    let s2xr = Geometry::s2pxr(conv);
    let t = |g: &Geometry| Expr::var(g.atoms(), Var::T);
    let f = families::log_biharmonic(Surface::HyperbolicDisc, conv, Some(&[C::zero(), C::one()])).map(|(_, f)| f);
    s.equal("h2xr.log-times-t.tension", c, f.clone().and_then(|f| h2xr.tension(&f)), t(&h2xr).map(|t| t.scale_int(factor)));
    s.order("h2xr.log-times-t.order", &h2xr, f, 2);

    for (surface, g, prefix) in [(Surface::HyperbolicDisc, &h2xr, "h2xr"), (Surface::PuncturedSphere, &s2xr, "s2pxr")] {
        let cubic = [0, 0, 0, 1].map(C::integer);
        let f = families::conformal_separable(surface, conv, &[C::zero(), C::one()], &[], &cubic);
        s.equal(&format!("{prefix}.separable.z-t^3"), c, f.and_then(|f| g.tension(&f)), g.parse("6*z*t"));
        let f = families::conformal_separable(surface, conv, &[C::zero(), C::zero(), C::one()], &[C::zero(), C::one()], &[0, 0, 1, 0].map(C::integer));
        s.order(&format!("{prefix}.separable.order"), g, f, 2);
        let f = families::log_biharmonic(surface, conv, Some(&[C::integer(2), C::integer(-3)])).map(|(_, f)| f);
        s.order(&format!("{prefix}.log-times-linear.order"), g, f, 2);
    }

    let line = Geometry::line().with_convention(conv);
    let prod = product(&h2, &line).expect("disjoint factors");
    let f = (|| families::product_r_harmonic(&prod, &h2.parse("z")?, &line.parse("t^3")?))();
    s.order("product.h2-line.harmonic-times-biharmonic", &prod.combined, f, 2);

    let check = (|| {
        let prod = product(&h2, &line)?;
        let f1 = h2.parse("-log1m")?;
        let f2 = line.parse("t^2")?;
        remark_holds(&prod, &f1, &f2)
    })();
    s.holds("product.h2-line.biharmonic-squared", c, check);

    let check = (|| {
        let prod = product(&h2, &line)?;
        let mut ok = true;
        for src in ["z^2*zb*t^3 - log1m*t^2", "3*z*zb + t^4", "zb^3*t - 2*log1m"] {
            let f = h2xr.parse(src)?;
            ok &= h2xr.tension(&f)? == prod.combined.tension(&f.embed(prod.combined.atoms())?)?;
        }
        Ok((ok, "h2 x line agrees with h2xr".into()))
    })();
    s.holds("product.h2-line.matches-h2xr", c, check);
}

/// Checks `τ²(f1 f2) = 2 τf1 τf2 ≠ 0` and `τ³(f1 f2) = 0` for biharmonic
/// factors.
fn remark_holds(prod: &ProductGeometry, f1: &Expr, f2: &Expr) -> Result<(bool, String)> {
    let f = prod.separable(f1, f2)?;
    let chain = prod.combined.iterated_tension(&f, 3)?;
    let cross = prod
        .embed_first(&prod.first.tension(f1)?)?
        .mul(&prod.embed_second(&prod.second.tension(f2)?)?)?
        .scale_int(2);
    let ok = chain[2] == cross && !cross.is_zero() && chain[3].is_zero();
    Ok((ok, format!("tau^2 = {}", chain[2])))
}

fn oracle_sentinels(s: &mut Suite, conventions: &[Convention], seed: u64) {
    let cfg = OracleConfig { samples: 20, seed, ..OracleConfig::default() };
    let sol = Geometry::sol();
    let check = sol
        .parse("2*x^2 - E(-2)")
        .and_then(|f| oracle::cross_validate(&sol, &f, &cfg))
        .map(|r| (r.passed, format!("max rel {:.2e}", r.max_rel)));
    s.holds("oracle.sol.axis-n2", None, check);

    for &conv in conventions {
        let h2 = Geometry::hyperbolic_disc(conv);
        let ratios = h2.parse("-log1m").and_then(|f| oracle::operator_ratios(&h2, &f, &cfg));
        let expected = conv.factor() as f64;
        let (outcome, detail) = match ratios {
            Ok(rs) => {
                let worst = rs.iter().map(|r| (r.re - expected).abs() + r.im.abs()).fold(0.0, f64::max);
                let detail = format!("symbolic/fd = {expected} (max deviation {worst:.1e})");
                match (worst <= 1e-4, conv) {
                    (true, Convention::Metric) => (Outcome::Pass, detail),
                    (true, Convention::Printed) => (Outcome::ExpectedMismatch, detail),
                    (false, _) => (Outcome::Fail, detail),
                }
            }
            Err(e) => (Outcome::Fail, format!("error: {e}")),
        };
        s.push("oracle.h2.log-sentinel", Some(conv), outcome, detail);
    }
}

/// Runs every published identity under the requested conventions.
pub fn run_suite(opts: &SuiteOptions) -> SuiteReport {
    let mut s = Suite { r_max: opts.r_max.max(1), entries: Vec::new() };
    sol_identities(&mut s);
    nil_sl2_identities(&mut s);
    for &conv in &opts.conventions {
        conformal_identities(&mut s, conv);
        let check = lemma_check(3, opts.lemma_trials, opts.seed, conv).map(|r| (r.passed(), r.summary()));
        s.holds("product.binomial-expansion", Some(conv), check);
    }
    oracle_sentinels(&mut s, &opts.conventions, opts.seed);
    SuiteReport { entries: s.entries }
}

#[derive(Debug, Clone, Serialize)]
pub struct LemmaWitness {
    pub product: String,
    pub f1: String,
    pub f2: String,
    pub n: u32,
    pub direct: String,
    pub expansion: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct LemmaReport {
    pub n: u32,
    pub trials: usize,
    pub checks: usize,
    pub remark_checks: usize,
    pub counterexamples: Vec<LemmaWitness>,
}

impl LemmaReport {
    pub fn passed(&self) -> bool {
        self.counterexamples.is_empty()
    }

    pub fn summary(&self) -> String {
        format!(
            "{} binomial checks up to n = {}, {} biharmonic-product checks, {} counterexamples",
            self.checks,
            self.n,
            self.remark_checks,
            self.counterexamples.len()
        )
    }
}

fn small<R: Rng>(rng: &mut R) -> C {
    C::ratio(rng.gen_range(-5..=5), rng.gen_range(1..=3))
}

fn nonzero<R: Rng>(rng: &mut R) -> C {
    loop {
        let c = small(rng);
        if !c.is_zero() {
            return c;
        }
    }
}

fn random_poly<R: Rng>(rng: &mut R, atoms: AtomSet, vars: &[Var], degree: u32, terms: usize) -> Result<Expr> {
    let mut f = Expr::zero(atoms);
    for _ in 0..terms {
        let mut m = Monomial::one();
        for &v in vars {
            m.pows[v.index()] = rng.gen_range(0..=degree);
        }
        f = f.add(&Expr::term(atoms, small(rng), m)?)?;
    }
    Ok(f)
}

/// A random function on the disc: a polynomial in `z, zb` plus a multiple of
/// the log atom.
fn random_disc_function<R: Rng>(rng: &mut R, h2: &Geometry) -> Result<Expr> {
    let p = random_poly(rng, h2.atoms(), &[Var::Z, Var::Zb], 2, 3)?;
    p.add(&Expr::log(h2.atoms())?.scale(&small(rng)))
}

fn random_line_function<R: Rng>(rng: &mut R, line: &Geometry) -> Result<Expr> {
    random_poly(rng, line.atoms(), &[Var::T], 6, 3)
}

/// Random separable pairs on `H² × ℝ` and `ℝ × ℝ`: compares the direct
/// `τ^k(f1 f2)` with the binomial expansion for `k = 1..=n`, and checks the
/// biharmonic-times-biharmonic product.
pub fn lemma_check(n: u32, trials: usize, seed: u64, convention: Convention) -> Result<LemmaReport> {
    if n == 0 || n > 4 {
        return Err(Error::Usage("lemma check supports 1 <= n <= 4".into()));
    }
    if trials == 0 {
        return Err(Error::Usage("at least one trial is required".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let h2 = Geometry::hyperbolic_disc(convention);
    let line = Geometry::line().with_convention(convention);
    let products = [product(&h2, &line)?, product(&line, &line)?];
    let mut report = LemmaReport { n, trials, checks: 0, remark_checks: 0, counterexamples: Vec::new() };

    for trial in 0..trials {
        let prod = &products[trial % 2];
        let f1 = if trial % 2 == 0 { random_disc_function(&mut rng, &h2)? } else { random_line_function(&mut rng, &line)? };
        let f2 = random_line_function(&mut rng, &line)?;
        let f = prod.separable(&f1, &f2)?;
        let chain = prod.combined.iterated_tension(&f, n)?;
        for k in 1..=n {
            let expansion = product_tension_binomial(prod, &f1, &f2, k)?;
            report.checks += 1;
            if chain[k as usize] != expansion {
                report.counterexamples.push(LemmaWitness {
                    product: prod.combined.id().to_string(),
                    f1: f1.to_string(),
                    f2: f2.to_string(),
                    n: k,
                    direct: chain[k as usize].to_string(),
                    expansion: expansion.to_string(),
                });
            }
        }

        // Proper biharmonic factors: `a·(-log1m) + harmonic` on the disc, a
        // polynomial with a quadratic or cubic part on the line.
        let g1 = if trial % 2 == 0 {
            let harmonic = h2.parse("z^2 + zb")?.scale(&small(&mut rng));
            Expr::log(h2.atoms())?.scale(&nonzero(&mut rng)).add(&harmonic)?
        } else {
            random_biharmonic_line(&mut rng, &line)?
        };
        let g2 = random_biharmonic_line(&mut rng, &line)?;
        report.remark_checks += 1;
        let (ok, _) = remark_holds(prod, &g1, &g2)?;
        if !ok {
            let g = prod.separable(&g1, &g2)?;
            let chain = prod.combined.iterated_tension(&g, 2)?;
            report.counterexamples.push(LemmaWitness {
                product: prod.combined.id().to_string(),
                f1: g1.to_string(),
                f2: g2.to_string(),
                n: 2,
                direct: chain[2].to_string(),
                expansion: "2*tau(f1)*tau(f2), tau^3 = 0".into(),
            });
        }
    }
    Ok(report)
}

fn random_biharmonic_line<R: Rng>(rng: &mut R, line: &Geometry) -> Result<Expr> {
    let t = Expr::var(line.atoms(), Var::T)?;
    let mut f = t.pow(2)?.scale(&nonzero(rng));
    if rng.gen_bool(0.5) {
        f = f.add(&t.pow(3)?.scale(&small(rng)))?;
    }
    f.add(&t.scale(&small(rng)))?.add(&Expr::constant(line.atoms(), small(rng)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_passes_under_both_conventions() {
        let report = run_suite(&SuiteOptions { lemma_trials: 4, ..SuiteOptions::default() });
        let failures: Vec<_> = report.failures().collect();
        assert!(failures.is_empty(), "{failures:#?}");
        assert_eq!(report.count(Outcome::ExpectedMismatch), 1);
    }

    #[test]
    fn low_bound_reports_exceeding_entries() {
        let report = run_suite(&SuiteOptions {
            conventions: vec![Convention::Metric],
            r_max: 1,
            lemma_trials: 2,
            ..SuiteOptions::default()
        });
        assert!(report.passed(), "{:#?}", report.failures().collect::<Vec<_>>());
        assert!(report.entries.iter().any(|e| e.anchor == "sol.tower.order.r3" && e.outcome == Outcome::ExceedsBound));
    }

    #[test]
    fn lemma_small_run() {
        let r = lemma_check(2, 6, 7, Convention::Metric).unwrap();
        assert!(r.passed(), "{:?}", r.counterexamples);
        assert_eq!(r.checks, 12);
        assert!(lemma_check(5, 1, 0, Convention::Metric).is_err());
    }
}
