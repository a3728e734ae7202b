//! Stable family identifiers, their parameter layout and claimed orders.

use rand::Rng;

use super::*;
use crate::expr::parse;

/// Inputs shared by all family constructors. Unused fields are ignored.
#[derive(Debug, Clone, Default)]
pub struct FamilyArgs {
    pub params: Vec<C>,
    pub n: Option<u32>,
    pub r: Option<u32>,
    pub axis: Option<Axis>,
    pub hol: Vec<C>,
    pub antihol: Vec<C>,
    pub convention: Convention,
    /// Product geometry id (`h2xline`, ...) for `product.generic`.
    pub product: Option<String>,
    pub f1: Option<String>,
    pub f2: Option<String>,
}

impl FamilyArgs {
    /// Parameter `i`, defaulting to zero past the end of the list.
    pub fn param(&self, i: usize) -> C {
        self.params.get(i).cloned().unwrap_or_else(C::zero)
    }

    fn fixed<const N: usize>(&self) -> [C; N] {
        std::array::from_fn(|i| self.param(i))
    }
}

/// Parses `1,-2,3/4,(1+i),2i` into exact literals.
pub fn parse_literals(text: &str) -> Result<Vec<C>> {
    if text.trim().is_empty() {
        return Ok(Vec::new());
    }
    text.split(',')
        .map(|s| {
            let e = parse(s.trim(), AtomSet::polynomial(&[]))?;
            e.as_constant()
                .ok_or_else(|| Error::Usage(format!("parameter '{s}' is not a constant")))
        })
        .collect()
}

#[derive(Debug, Clone)]
pub struct FamilyMember {
    pub family: &'static str,
    pub geometry: Geometry,
    pub expr: Expr,
    pub claimed: Order,
    /// False on the measure-zero parameter sets where a cancellation drops
    /// the order below the generic one; `claimed` then reports the lower order.
    pub admissible: bool,
}

pub struct FamilyDescriptor {
    pub id: &'static str,
    pub geometry: &'static str,
    pub params: &'static [&'static str],
    pub summary: &'static str,
    build: fn(&FamilyArgs) -> Result<FamilyMember>,
}

impl FamilyDescriptor {
    pub fn build(&self, args: &FamilyArgs) -> Result<FamilyMember> {
        if args.params.len() > self.params.len() {
            return Err(Error::Usage(format!(
                "{} takes at most {} parameters, got {}",
                self.id,
                self.params.len(),
                args.params.len()
            )));
        }
        (self.build)(args)
    }

    /// Random small rational parameters (and list lengths, degrees) for
    /// property checks.
    pub fn random_args<R: Rng>(&self, rng: &mut R, convention: Convention) -> FamilyArgs {
        let lit = |rng: &mut R| C::ratio(rng.gen_range(-9..=9), rng.gen_range(1..=4));
        let params = (0..self.params.len()).map(|_| lit(rng)).collect();
        let hol_len = rng.gen_range(0..=4);
        let hol = (0..hol_len).map(|_| lit(rng)).collect();
        let antihol_len = rng.gen_range(0..=4);
        let antihol = (0..antihol_len).map(|_| lit(rng)).collect();
        FamilyArgs {
            params,
            n: Some(rng.gen_range(2..=7)),
            r: Some(rng.gen_range(1..=4)),
            axis: Some(if rng.gen_bool(0.5) { Axis::X } else { Axis::Y }),
            hol,
            antihol,
            convention,
            ..FamilyArgs::default()
        }
    }
}

fn member(family: &'static str, geometry: Geometry, expr: Expr, order: u32, admissible: bool) -> FamilyMember {
    FamilyMember { family, geometry, expr, claimed: Order::Proper(order), admissible }
}

/// Linear forms whose joint vanishing makes `τ` of the twelve-term Nil
/// family zero.
pub fn nil_f2_degenerate(b: &[C; 12]) -> bool {
    let two = |c: &C| c.scale(&2.into());
    let six = |c: &C| c.scale(&6.into());
    let forms = [
        two(&b[0]) + two(&b[1]),
        two(&b[2]) + six(&b[3]) + two(&b[6]),
        two(&b[4]) + six(&b[7]),
        two(&b[5]) + two(&b[10]),
        six(&b[8]) + six(&b[9]) + two(&b[10]).scale(&2.into()),
        six(&b[11]),
    ];
    forms.iter().all(C::is_zero)
}

/// Vanishing of `τ` for the six-term SL2~ family.
pub fn sl2_f2_degenerate(b: &[C; 6]) -> bool {
    b[1].is_zero() && b[2].is_zero() && b[4].is_zero() && b[5].is_zero() && b[3].scale(&2.into()) == b[0]
}

fn sol_tower_family(a: &FamilyArgs) -> Result<FamilyMember> {
    let p: [C; 8] = a.fixed();
    let r = a.r.unwrap_or(1);
    let f = sol_tower(r, &[p[0].clone(), p[1].clone(), p[2].clone(), p[3].clone()], &[
        p[4].clone(),
        p[5].clone(),
        p[6].clone(),
        p[7].clone(),
    ])?;
    Ok(member("sol.tower", Geometry::sol(), f, r, true))
}

fn sol_axis_family(a: &FamilyArgs) -> Result<FamilyMember> {
    let f = sol_harmonic_axis_family(a.n.unwrap_or(2), a.axis.unwrap_or(Axis::X))?;
    Ok(member("sol.axis", Geometry::sol(), f, 1, true))
}

fn sol_mixed_family(a: &FamilyArgs) -> Result<FamilyMember> {
    let p: [C; 6] = a.fixed();
    let f = sol_mixed_harmonic(a.n.unwrap_or(2).clamp(2, 3), &p[0], &p[1], &p[2], &p[3], &p[4], &p[5])?;
    Ok(member("sol.mixed", Geometry::sol(), f, 1, true))
}

fn sol_h2h3_family(a: &FamilyArgs) -> Result<FamilyMember> {
    let p: [C; 4] = a.fixed();
    let f = sol_h2h3(&p[0], &p[1], &p[2], &p[3])?;
    Ok(member("sol.h2h3", Geometry::sol(), f, 2, true))
}

fn nil_f1_family(a: &FamilyArgs) -> Result<FamilyMember> {
    let f = nil_harmonic(&a.fixed(), &a.hol, &a.antihol)?;
    let ok = !f.is_zero();
    Ok(FamilyMember { claimed: if ok { Order::Proper(1) } else { Order::Zero }, ..member("nil.f1", Geometry::nil(), f, 1, ok) })
}

fn nil_f2_family(a: &FamilyArgs) -> Result<FamilyMember> {
    let b: [C; 12] = a.fixed();
    let f = nil_biharmonic12(&b)?;
    let degenerate = nil_f2_degenerate(&b);
    Ok(member("nil.f2", Geometry::nil(), f, if degenerate { 1 } else { 2 }, !degenerate))
}

fn sl2_f1_family(a: &FamilyArgs) -> Result<FamilyMember> {
    let f = sl2_harmonic(&a.fixed(), &a.hol, &a.antihol)?;
    let ok = !f.is_zero();
    Ok(FamilyMember { claimed: if ok { Order::Proper(1) } else { Order::Zero }, ..member("sl2.f1", Geometry::sl2(), f, 1, ok) })
}

fn sl2_f2_family(a: &FamilyArgs) -> Result<FamilyMember> {
    let b: [C; 6] = a.fixed();
    let f = sl2_biharmonic6(&b)?;
    let degenerate = sl2_f2_degenerate(&b);
    Ok(member("sl2.f2", Geometry::sl2(), f, if degenerate { 1 } else { 2 }, !degenerate))
}

fn separable(id: &'static str, surface: Surface, a: &FamilyArgs) -> Result<FamilyMember> {
    let p: [C; 4] = a.fixed();
    let f = conformal_separable(surface, a.convention, &a.hol, &a.antihol, &p)?;
    let g = surface.times_line(a.convention);
    if f.is_zero() {
        return Ok(FamilyMember { claimed: Order::Zero, ..member(id, g, f, 0, false) });
    }
    let biharmonic = !(p[2].is_zero() && p[3].is_zero());
    Ok(member(id, g, f, if biharmonic { 2 } else { 1 }, biharmonic))
}

fn logxp(id: &'static str, surface: Surface, a: &FamilyArgs) -> Result<FamilyMember> {
    let (g, f) = log_biharmonic(surface, a.convention, Some(&a.fixed()))?;
    Ok(member(id, g, f, 2, true))
}

fn product_generic(a: &FamilyArgs) -> Result<FamilyMember> {
    let spec = a.product.as_deref().unwrap_or("h2xline");
    let prod = ProductGeometry::by_id(spec, a.convention)?;
    let need = |s: &Option<String>, name: &str| {
        s.clone().ok_or_else(|| Error::Usage(format!("product.generic needs --{name}")))
    };
    let f1 = prod.first.parse(&need(&a.f1, "f1")?)?;
    let f2 = prod.second.parse(&need(&a.f2, "f2")?)?;
    let r = prod
        .second
        .classify(&f2, DEFAULT_R_MAX)?
        .order
        .proper()
        .ok_or_else(|| Error::Usage("second factor has no finite order".into()))?;
    let f = product_r_harmonic(&prod, &f1, &f2)?;
    Ok(member("product.generic", prod.combined, f, r, true))
}

pub static FAMILIES: &[FamilyDescriptor] = &[
    FamilyDescriptor {
        id: "sol.tower",
        geometry: "sol",
        params: &["a1", "a2", "a3", "a4", "b1", "b2", "b3", "b4"],
        summary: "t^(2r-2) (a1 + a2 x + a3 y + a4 xy) + t^(2r-1) (b1 + b2 x + b3 y + b4 xy); order r",
        build: sol_tower_family,
    },
    FamilyDescriptor {
        id: "sol.axis",
        geometry: "sol",
        params: &[],
        summary: "degree-n harmonic polynomial in x (or y) and E(-2) (or E(2)); uses -n and --axis",
        build: sol_axis_family,
    },
    FamilyDescriptor {
        id: "sol.mixed",
        geometry: "sol",
        params: &["a", "b", "alpha", "beta", "gamma", "delta"],
        summary: "a (alpha + beta y) f_nx + b (gamma + delta x) f_ny for n = 2, 3; harmonic",
        build: sol_mixed_family,
    },
    FamilyDescriptor {
        id: "sol.h2h3",
        geometry: "sol",
        params: &["a2", "a3", "b2", "b3"],
        summary: "product of an x-axis and a y-axis harmonic function; biharmonic",
        build: sol_h2h3_family,
    },
    FamilyDescriptor {
        id: "nil.f1",
        geometry: "nil",
        params: &["a1", "a2"],
        summary: "h1(x+iy) + h2(x-iy) + a1 t + a2 xt; harmonic",
        build: nil_f1_family,
    },
    FamilyDescriptor {
        id: "nil.f2",
        geometry: "nil",
        params: &["b1", "b2", "b3", "b4", "b5", "b6", "b7", "b8", "b9", "b10", "b11", "b12"],
        summary: "twelve-term cubic family; biharmonic",
        build: nil_f2_family,
    },
    FamilyDescriptor {
        id: "sl2.f1",
        geometry: "sl2",
        params: &["a1", "a2"],
        summary: "h1(x+iy) + h2(x-iy) + a1 t + a2 yt; harmonic",
        build: sl2_f1_family,
    },
    FamilyDescriptor {
        id: "sl2.f2",
        geometry: "sl2",
        params: &["b1", "b2", "b3", "b4", "b5", "b6"],
        summary: "b1 xt + b2 t^2 + b3 xt^2 + b4 yt^2 + b5 t^3 + b6 yt^3; biharmonic",
        build: sl2_f2_family,
    },
    FamilyDescriptor {
        id: "h2r.separable",
        geometry: "h2xr",
        params: &["b0", "b1", "b2", "b3"],
        summary: "(f(z) + g(zb)) (b0 + b1 t + b2 t^2 + b3 t^3); biharmonic when (b2, b3) != 0",
        build: |a| separable("h2r.separable", Surface::HyperbolicDisc, a),
    },
    FamilyDescriptor {
        id: "h2r.logxp",
        geometry: "h2xr",
        params: &["a0", "a1"],
        summary: "-log(1 - z zb) (a0 + a1 t); biharmonic",
        build: |a| logxp("h2r.logxp", Surface::HyperbolicDisc, a),
    },
    FamilyDescriptor {
        id: "s2r.separable",
        geometry: "s2pxr",
        params: &["b0", "b1", "b2", "b3"],
        summary: "(f(z) + g(zb)) (b0 + b1 t + b2 t^2 + b3 t^3); biharmonic when (b2, b3) != 0",
        build: |a| separable("s2r.separable", Surface::PuncturedSphere, a),
    },
    FamilyDescriptor {
        id: "s2r.logxp",
        geometry: "s2pxr",
        params: &["a0", "a1"],
        summary: "log(1 + z zb) (a0 + a1 t); biharmonic",
        build: |a| logxp("s2r.logxp", Surface::PuncturedSphere, a),
    },
    FamilyDescriptor {
        id: "product.generic",
        geometry: "product",
        params: &[],
        summary: "f1 f2 with f1 harmonic and f2 r-harmonic on the factors; uses --product, --f1, --f2",
        build: product_generic,
    },
];

pub fn family(id: &str) -> Result<&'static FamilyDescriptor> {
    FAMILIES
        .iter()
        .find(|d| d.id == id)
        .ok_or_else(|| Error::Usage(format!("unknown family '{id}'")))
}

pub fn build_family(id: &str, args: &FamilyArgs) -> Result<FamilyMember> {
    family(id)?.build(args)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn args(params: &str) -> FamilyArgs {
        FamilyArgs { params: parse_literals(params).unwrap(), ..FamilyArgs::default() }
    }

    #[test]
    fn literal_lists() {
        let v = parse_literals("1, -2, 3/4, (1+i), 2i").unwrap();
        assert_eq!(v.len(), 5);
        assert_eq!(v[2], C::ratio(3, 4));
        assert_eq!(v[4], C::new(0.into(), 2.into()));
        assert!(parse_literals("x").is_err());
        assert!(parse_literals("").unwrap().is_empty());
    }

    #[test]
    fn nil_f2_last_parameter() {
        let m = build_family("nil.f2", &args("0,0,0,0,0,0,0,0,0,0,0,1")).unwrap();
        assert_eq!(m.expr, Geometry::nil().parse("x^3*t").unwrap());
        assert_eq!(m.claimed, Order::Proper(2));
    }

    #[test]
    fn cancellation_predicates() {
        assert!(!build_family("nil.f2", &args("1,-1")).unwrap().admissible);
        assert!(!build_family("sl2.f2", &args("2,0,0,1")).unwrap().admissible);
        assert!(build_family("sl2.f2", &args("0,0,1")).unwrap().admissible);
    }

    #[test]
    fn too_many_parameters() {
        assert!(matches!(build_family("sol.h2h3", &args("1,1,1,1,1")), Err(Error::Usage(_))));
        assert!(matches!(build_family("nope", &args("1")), Err(Error::Usage(_))));
    }

    #[test]
    fn ids_are_unique() {
        let mut ids: Vec<_> = FAMILIES.iter().map(|d| d.id).collect();
        ids.sort();
        ids.dedup();
        assert_eq!(ids.len(), 13);
    }
}
