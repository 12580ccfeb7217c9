//! Built-in acceptance suite.
//!
//! Each check recomputes its values from scratch and compares them exactly
//! with frozen expectations or with an independent route. A fault can be
//! injected into one named check to confirm that it is able to fail.

use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use scattering::analysis::{
    euler_form, euler_series, gw_coefficients, semistable_exists, slope_one_conjecture_series,
    DimensionVector, Framing,
};
use scattering::permissible::{
    classify, classify_all, permissibility_oracle, r_eval, reflection_r, t1, t2, witness_k_bound,
};
use scattering::series::{int, ratio};
use scattering::vertex::{symplectic_check, wall_to_automorphism};
use scattering::{
    factorize, ordered_product, verify_factorization, Classification, Direction, Rational,
    ScatteringDiagram, Series, UniSeries, VertexAutomorphism, Wall,
};

type Outcome = Result<(), String>;

/// Multiplicities with a list of directions.
type Table = ((u32, u32), &'static [(i64, i64)]);

/// Runtime context; carries the optional injected fault.
pub struct Context {
    fault: bool,
}

impl Context {
    /// Adds 1 to the `z` coefficient of an observed series when the fault is on.
    fn observe(&self, f: UniSeries) -> UniSeries {
        if !self.fault || f.order() == 0 {
            return f;
        }
        let mut c = f.coeffs().to_vec();
        c[1] += int(1);
        UniSeries::new(c, f.order())
    }

    /// Flips an observed predicate when the fault is on.
    fn observe_bool(&self, b: bool) -> bool {
        b ^ self.fault
    }
}

pub struct Check {
    pub criterion: u32,
    pub name: &'static str,
    pub summary: &'static str,
    pub budget: Option<Duration>,
    run: fn(&Context) -> Outcome,
}

pub struct Report {
    pub criterion: u32,
    pub name: &'static str,
    pub summary: &'static str,
    pub elapsed: Duration,
    pub outcome: Outcome,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.outcome.is_ok()
    }

    pub fn line(&self) -> String {
        let status = if self.passed() { "PASS" } else { "FAIL" };
        let mut s = format!(
            "{status} [{:>2}] {:<28} {:>9.3}s  {}",
            self.criterion,
            self.name,
            self.elapsed.as_secs_f64(),
            self.summary
        );
        if let Err(e) = &self.outcome {
            s.push_str("\n       ");
            s.push_str(e);
        }
        s
    }
}

pub fn checks() -> Vec<Check> {
    let secs = Duration::from_secs;
    vec![
        Check {
            criterion: 1,
            name: "unit-multiplicities",
            summary: "l=(1,1), N=8: one wall (1,1) with 1+z",
            budget: Some(secs(1)),
            run: unit_multiplicities,
        },
        Check {
            criterion: 2,
            name: "two-two-family",
            summary: "l=(2,2), N=12: 1/(1-z)^4 on (1,1), (1+z)^2 on (k,k+1),(k+1,k), nothing else",
            budget: Some(secs(30)),
            run: two_two_family,
        },
        Check {
            criterion: 3,
            name: "three-three-slope-one",
            summary: "l=(3,3), N=10: slope-one series to z^5, (1+z)^3 on (3,1),(1,3)",
            budget: None,
            run: three_three_slope_one,
        },
        Check {
            criterion: 4,
            name: "two-three-log-coefficients",
            summary: "l=(2,3), N=10: c^1..c^3 = 6, 9/2, 20/3; Catalan^6 on (1,1)",
            budget: None,
            run: two_three_log_coefficients,
        },
        Check {
            criterion: 5,
            name: "quiver-euler-characteristics",
            summary: "m=2 framed series; integrality for m<=3, N=12",
            budget: None,
            run: quiver_euler_characteristics,
        },
        Check {
            criterion: 6,
            name: "permissible-tables",
            summary: "finite tables, discrete orbits and cone for (2,2),(3,3),(2,3)",
            budget: None,
            run: permissible_tables,
        },
        Check {
            criterion: 7,
            name: "oracle-cross-validation",
            summary: "partition inequality agrees with classification, a+b<=20",
            budget: Some(secs(120)),
            run: oracle_cross_validation,
        },
        Check {
            criterion: 8,
            name: "reflection-symmetry",
            summary: "f_v = f_T(v) for T1, T2 (and R) at l=(2,2),(3,3), N=12",
            budget: None,
            run: reflection_symmetry,
        },
        Check {
            criterion: 9,
            name: "reversed-polynomial",
            summary: "f_v = g_T1(v) and f_v = h_T2(v) for reversed polynomials, N=10",
            budget: None,
            run: reversed_polynomial,
        },
        Check {
            criterion: 10,
            name: "property-suites",
            summary: "randomized algebraic and combinatorial identities, 200+ cases each",
            budget: None,
            run: property_suites,
        },
    ]
}

/// Runs the checks whose name contains `filter`, injecting a fault into the
/// check named exactly `fault`.
pub fn run(filter: Option<&str>, fault: Option<&str>) -> Vec<Report> {
    checks()
        .into_iter()
        .filter(|c| filter.is_none_or(|f| c.name.contains(f)))
        .map(|c| {
            let ctx = Context {
                fault: fault == Some(c.name),
            };
            let start = Instant::now();
            let mut outcome = (c.run)(&ctx);
            let elapsed = start.elapsed();
            if let (Ok(()), Some(budget)) = (&outcome, c.budget) {
                if elapsed > budget {
                    outcome = Err(format!("took {elapsed:?}, budget {budget:?}"));
                }
            }
            Report {
                criterion: c.criterion,
                name: c.name,
                summary: c.summary,
                elapsed,
                outcome,
            }
        })
        .collect()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err(e: scattering::Error) -> String {
    e.to_string()
}

fn binomial_power(l: u32, order: u32) -> UniSeries {
    UniSeries::from_ints(&[1, 1], order)
        .pow_i64(i64::from(l))
        .expect("unit")
}

fn expect_series(got: &UniSeries, want: &UniSeries, what: &str) -> Outcome {
    ensure(got == want, || {
        format!("{what}: got {got}, expected {want}")
    })
}

fn unit_multiplicities(ctx: &Context) -> Outcome {
    let d = ScatteringDiagram::kronecker(1, 1, 8).map_err(err)?;
    let dirs: Vec<String> = d.walls().map(|w| w.direction().to_string()).collect();
    ensure(dirs == ["(1,1)"], || {
        format!("walls {dirs:?}, expected [(1,1)]")
    })?;
    let f = ctx.observe(d.wall_function(1, 1).map_err(err)?);
    expect_series(&f, &UniSeries::from_ints(&[1, 1], 4), "f_(1,1)")
}

fn two_two_family(ctx: &Context) -> Outcome {
    let n = 12;
    let d = ScatteringDiagram::kronecker(2, 2, n).map_err(err)?;
    let f11 = ctx.observe(d.wall_function(1, 1).map_err(err)?);
    let want = UniSeries::from_ints(&[1, -1], 6).pow_i64(-4).map_err(err)?;
    expect_series(&f11, &want, "f_(1,1)")?;
    let mut expected = vec![(1, 1)];
    for k in 1i64.. {
        if 2 * k + 1 > i64::from(n) {
            break;
        }
        for (a, b) in [(k, k + 1), (k + 1, k)] {
            expected.push((a, b));
            let f = d.wall_function(a, b).map_err(err)?;
            expect_series(&f, &binomial_power(2, f.order()), &format!("f_({a},{b})"))?;
        }
    }
    let mut got: Vec<(i64, i64)> = d
        .walls()
        .map(|w| (w.direction().a(), w.direction().b()))
        .collect();
    got.sort();
    expected.sort();
    ensure(got == expected, || {
        format!("walls {got:?}, expected {expected:?}")
    })
}

fn three_three_slope_one(ctx: &Context) -> Outcome {
    let d = ScatteringDiagram::kronecker(3, 3, 10).map_err(err)?;
    let f = ctx.observe(d.wall_function(1, 1).map_err(err)?);
    let frozen = UniSeries::from_ints(&[1, 9, 72, 570, 4554, 36855], 5);
    expect_series(&f, &frozen, "f_(1,1)")?;
    let closed = slope_one_conjecture_series(3, 3, 5).map_err(err)?;
    expect_series(&f, &closed, "f_(1,1) against (C(4k,k)/(3k+1))^9")?;
    for (a, b) in [(3, 1), (1, 3)] {
        let f = d.wall_function(a, b).map_err(err)?;
        ensure(f.order() >= 2, || {
            format!("f_({a},{b}) only to z^{}", f.order())
        })?;
        expect_series(&f, &binomial_power(3, f.order()), &format!("f_({a},{b})"))?;
    }
    Ok(())
}

fn two_three_log_coefficients(ctx: &Context) -> Outcome {
    let d = ScatteringDiagram::kronecker(2, 3, 10).map_err(err)?;
    let f = ctx.observe(d.wall_function(1, 1).map_err(err)?);
    let c = gw_coefficients(&f, 1, 1).map_err(err)?;
    for (k, want) in [(1, int(6)), (2, ratio(9, 2)), (3, ratio(20, 3))] {
        let got = c.get(k).cloned();
        ensure(got.as_ref() == Some(&want), || {
            format!("c^{k} = {got:?}, expected {want}")
        })?;
    }
    let catalan6 = UniSeries::from_ints(&[1, 6, 27, 110, 429, 1638], 5);
    expect_series(&f, &catalan6, "f_(1,1)")?;
    let closed = slope_one_conjecture_series(2, 3, 5).map_err(err)?;
    expect_series(&f, &closed, "f_(1,1) against Catalan^6")
}

fn quiver_euler_characteristics(ctx: &Context) -> Outcome {
    let d = ScatteringDiagram::kronecker(2, 2, 12).map_err(err)?;
    let b11 = ctx.observe(
        euler_series(&d, 1, 1, Framing::Back)
            .map_err(err)?
            .series()
            .clone(),
    );
    for k in 1..=5u32 {
        let want = int(i64::from(k) + 1);
        ensure(*b11.coeff(k) == want, || {
            format!("chi_B({k},{k}) = {}, expected {want}", b11.coeff(k))
        })?;
    }
    let b12 = euler_series(&d, 1, 2, Framing::Back).map_err(err)?;
    let f12 = euler_series(&d, 1, 2, Framing::Front).map_err(err)?;
    expect_series(b12.series(), &UniSeries::from_ints(&[1, 1], 4), "B_(1,2)")?;
    expect_series(
        f12.series(),
        &UniSeries::from_ints(&[1, 2, 1], 4),
        "F_(1,2)",
    )?;
    let mut walls = 0;
    for m in 1..=3u32 {
        let d = ScatteringDiagram::kronecker(m, m, 12).map_err(err)?;
        for w in d.walls() {
            let (a, b) = (w.direction().a(), w.direction().b());
            for framing in [Framing::Back, Framing::Front] {
                let s = euler_series(&d, a, b, framing).map_err(err)?;
                ensure(s.all_integral(), || {
                    format!("m={m} ({a},{b}) {framing:?}: non-integral {}", s.series())
                })?;
                let back = s.wall_function().map_err(err)?;
                expect_series(
                    &back,
                    w.function(),
                    &format!("m={m} ({a},{b}) {framing:?} round trip"),
                )?;
            }
            walls += 1;
        }
    }
    ensure(walls > 30, || format!("only {walls} walls examined"))
}

fn permissible_tables(ctx: &Context) -> Outcome {
    let tables: [Table; 5] = [
        ((1, 1), &[(1, 1)]),
        ((1, 2), &[(1, 2), (1, 1)]),
        ((2, 1), &[(1, 1), (2, 1)]),
        ((1, 3), &[(1, 3), (2, 3), (1, 1), (1, 2)]),
        ((3, 1), &[(1, 1), (2, 1), (3, 1), (3, 2)]),
    ];
    for ((l1, l2), want) in tables {
        let mut got: Vec<(i64, i64)> = classify_all(l1, l2, 20)
            .map_err(err)?
            .into_iter()
            .filter(|(_, c)| ctx.observe_bool(c.is_permissible()))
            .map(|(d, _)| (d.a(), d.b()))
            .collect();
        let mut want = want.to_vec();
        got.sort();
        want.sort();
        ensure(got == want, || {
            format!("P({l1},{l2}) = {got:?}, expected {want:?}")
        })?;
    }

    let discrete: [Table; 3] = [
        ((2, 2), &[(1, 2), (2, 3), (3, 4), (2, 1), (3, 2), (4, 3)]),
        ((3, 3), &[(1, 3), (3, 8), (8, 21), (3, 1), (8, 3), (21, 8)]),
        (
            (2, 3),
            &[
                (2, 1),
                (5, 3),
                (8, 5),
                (19, 12),
                (1, 3),
                (2, 5),
                (5, 12),
                (8, 19),
            ],
        ),
    ];
    for ((l1, l2), dirs) in discrete {
        for &(a, b) in dirs {
            let c = classify(l1, l2, a, b).map_err(err)?;
            ensure(c.is_discrete(), || {
                format!("({a},{b}) for ({l1},{l2}) classified {c}")
            })?;
        }
    }

    // cone: b/a strictly between the roots iff l1 (2b - l2 a)^2 < l2 a^2 (l1 l2 - 4)
    for (l1, l2) in [(2u32, 2u32), (3, 3), (2, 3)] {
        let (p, q) = (i64::from(l1), i64::from(l2));
        for (d, c) in classify_all(l1, l2, 20).map_err(err)? {
            let (a, b) = (d.a(), d.b());
            let lhs = p * (2 * b - q * a).pow(2);
            let rhs = q * a * a * (p * q - 4);
            let want_interior = lhs < rhs;
            let want_boundary = lhs == rhs;
            ensure(
                (c == Classification::ConeInterior) == want_interior
                    && (c == Classification::ConeBoundary) == want_boundary,
                || format!("({a},{b}) for ({l1},{l2}) classified {c}"),
            )?;
            if l1 == 2 && l2 == 2 {
                let staircase = (a - b).abs() == 1 || (a, b) == (1, 1);
                ensure(c.is_permissible() == staircase, || {
                    format!("({a},{b}) for (2,2) classified {c}")
                })?;
            }
        }
    }

    // nonzero walls sit exactly on permissible rays (both ways for l1 = l2)
    for (l1, l2) in [(2u32, 2u32), (3, 3), (2, 3)] {
        let n = 12;
        let d = ScatteringDiagram::kronecker(l1, l2, n).map_err(err)?;
        for (dir, c) in classify_all(l1, l2, n).map_err(err)? {
            let nontrivial = !d.wall_function(dir.a(), dir.b()).map_err(err)?.is_one();
            ensure(!nontrivial || c.is_permissible(), || {
                format!("wall on non-permissible {dir} for ({l1},{l2})")
            })?;
            ensure(l1 != l2 || !c.is_permissible() || nontrivial, || {
                format!("permissible {dir} for ({l1},{l2}) carries no wall at N={n}")
            })?;
        }
    }
    Ok(())
}

fn oracle_cross_validation(ctx: &Context) -> Outcome {
    let mut checked = 0;
    for (l1, l2) in [(1, 1), (1, 2), (1, 3), (2, 2), (2, 3), (3, 3), (1, 4)] {
        for (d, c) in classify_all(l1, l2, 20).map_err(err)? {
            let (a, b) = (d.a(), d.b());
            let witness = match witness_k_bound(l1, l2, a, b).map_err(err)? {
                Some(k) => permissibility_oracle(l1, l2, a, b, k).map_err(err)?,
                None => None,
            };
            let found = ctx.observe_bool(witness.is_some());
            ensure(found == c.is_permissible(), || {
                format!("({l1},{l2}) {d}: classified {c}, oracle witness {witness:?}")
            })?;
            if let Some(w) = &witness {
                ensure(w.genus_margin(a as u64, b as u64) >= 0, || {
                    format!("bad witness {w:?}")
                })?;
            }
            checked += 1;
        }
    }
    ensure(checked > 700, || format!("only {checked} vectors checked"))
}

fn reflection_symmetry(ctx: &Context) -> Outcome {
    let n = 12;
    for m in [2u32, 3] {
        let d = ScatteringDiagram::kronecker(m, m, n).map_err(err)?;
        let mut nontrivial_pairs = 0;
        for (dir, _) in classify_all(m, m, n).map_err(err)? {
            let (a, b) = (dir.a(), dir.b());
            let f = ctx.observe(d.wall_function(a, b).map_err(err)?);
            for (x, y) in [t1(m, a, b), t2(m, a, b), reflection_r(m, a, b)] {
                if x <= 0 || y <= 0 || x + y > i64::from(n) {
                    continue;
                }
                let g = d.wall_function(x, y).map_err(err)?;
                ensure(f.agrees_with(&g), || {
                    format!("m={m}: f_({a},{b}) = {f} but f_({x},{y}) = {g}")
                })?;
                if !g.is_one() {
                    nontrivial_pairs += 1;
                }
            }
        }
        ensure(nontrivial_pairs >= 10, || {
            format!("m={m}: only {nontrivial_pairs} nontrivial pairs")
        })?;
    }
    Ok(())
}

fn ints(v: &[i64]) -> Vec<Rational> {
    v.iter().map(|&c| int(c)).collect()
}

fn reversed(p: &[Rational]) -> Vec<Rational> {
    let mut r = p.to_vec();
    let l = r.len() - 1;
    r[1..l].reverse();
    r
}

fn reversed_polynomial(ctx: &Context) -> Outcome {
    let n = 10;
    let square = ints(&[1, 2, 1]);
    let firsts = [ints(&[1, 2, 1]), ints(&[1, 3, 1]), ints(&[1, 2, 3, 1])];
    let mut compared = 0;
    for p1 in &firsts {
        let l1 = (p1.len() - 1) as u32;
        let f = ScatteringDiagram::polynomial(p1, &square, n).map_err(err)?;
        let g = ScatteringDiagram::polynomial(&reversed(p1), &square, n).map_err(err)?;
        for w in f.walls() {
            let (x, y) = t1(l1, w.direction().a(), w.direction().b());
            if x > 0 && y > 0 && x + y <= i64::from(n) {
                let fv = ctx.observe(w.function().clone());
                let gv = g.wall_function(x, y).map_err(err)?;
                ensure(fv.agrees_with(&gv), || {
                    format!("p1={p1:?}: f_{} = {fv}, g_({x},{y}) = {gv}", w.direction())
                })?;
                compared += 1;
            }
        }
    }
    let cubic = ints(&[1, 2, 3, 1]);
    let f = ScatteringDiagram::polynomial(&square, &cubic, n).map_err(err)?;
    let h = ScatteringDiagram::polynomial(&square, &reversed(&cubic), n).map_err(err)?;
    for w in f.walls() {
        let (x, y) = t2(3, w.direction().a(), w.direction().b());
        if x > 0 && y > 0 && x + y <= i64::from(n) {
            let hv = h.wall_function(x, y).map_err(err)?;
            ensure(w.function().agrees_with(&hv), || {
                format!("f_{} = {}, h_({x},{y}) = {hv}", w.direction(), w.function())
            })?;
            compared += 1;
        }
    }
    ensure(compared >= 12, || {
        format!("only {compared} overlaps compared")
    })
}

const CASES: usize = 200;
const SEED: u64 = 20_261_015;

fn random_rational(rng: &mut ChaCha8Rng) -> Rational {
    ratio(rng.gen_range(-6..=6), rng.gen_range(1..=3))
}

fn random_series(rng: &mut ChaCha8Rng, order: u32) -> Series {
    let n = rng.gen_range(0..8);
    Series::from_terms(
        order,
        (0..n).map(|_| {
            let x = rng.gen_range(0..=order);
            let y = rng.gen_range(0..=order - x);
            ((x, y), random_rational(rng))
        }),
    )
}

fn random_unit(rng: &mut ChaCha8Rng, order: u32) -> Series {
    let s = random_series(rng, order);
    let c = s.constant_term();
    s.sub(&Series::constant(c - int(1), order))
        .expect("same order")
}

fn random_direction(rng: &mut ChaCha8Rng, max_degree: i64) -> Direction {
    loop {
        let a = rng.gen_range(1..max_degree);
        let b = rng.gen_range(1..=max_degree - a);
        if let Ok(d) = Direction::new(a, b) {
            return d;
        }
    }
}

fn random_wall(rng: &mut ChaCha8Rng, order: u32) -> Wall {
    let d = random_direction(rng, i64::from(order));
    let mut coeffs = vec![int(1)];
    for _ in 0..rng.gen_range(1..4) {
        coeffs.push(random_rational(rng));
    }
    Wall::new(d, UniSeries::new(coeffs, order / d.degree())).expect("unit constant term")
}

fn random_automorphism(rng: &mut ChaCha8Rng, order: u32) -> VertexAutomorphism {
    let walls: Vec<Wall> = (0..rng.gen_range(1..4))
        .map(|_| random_wall(rng, order))
        .collect();
    ordered_product(walls.iter(), order)
}

fn suite(
    name: &str,
    rng: &mut ChaCha8Rng,
    mut case: impl FnMut(&mut ChaCha8Rng) -> Outcome,
) -> Outcome {
    for i in 0..CASES {
        case(rng).map_err(|e| format!("{name}, case {i}: {e}"))?;
    }
    Ok(())
}

fn property_suites(ctx: &Context) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let rng = &mut rng;
    let e = |r: scattering::Result<Series>| r.map_err(err);

    suite("series ring axioms", rng, |rng| {
        let (a, b, c) = (
            random_series(rng, 5),
            random_series(rng, 5),
            random_series(rng, 5),
        );
        ensure(e(a.add(&b))? == e(b.add(&a))?, || {
            "addition not commutative".into()
        })?;
        ensure(e(a.mul(&b))? == e(b.mul(&a))?, || {
            "multiplication not commutative".into()
        })?;
        ensure(
            e(e(a.mul(&b))?.mul(&c))? == e(a.mul(&e(b.mul(&c))?))?,
            || "multiplication not associative".into(),
        )?;
        ensure(
            e(a.mul(&e(b.add(&c))?))? == e(e(a.mul(&b))?.add(&e(a.mul(&c))?))?,
            || "not distributive".into(),
        )?;
        ensure(e(a.add(&a.neg()))?.is_zero(), || {
            "no additive inverse".into()
        })?;
        let u = random_unit(rng, 5);
        ensure(e(u.mul(&e(u.invert_unit())?))?.is_one(), || {
            "unit inverse".into()
        })
    })?;

    suite("group laws", rng, |rng| {
        let (f, g, h) = (
            random_automorphism(rng, 6),
            random_automorphism(rng, 6),
            random_automorphism(rng, 6),
        );
        let c = |x: &VertexAutomorphism, y: &VertexAutomorphism| {
            VertexAutomorphism::compose(x, y).map_err(err)
        };
        ensure(c(&c(&f, &g)?, &h)? == c(&f, &c(&g, &h)?)?, || {
            "composition not associative".into()
        })?;
        ensure(c(&f, &f.inverse())?.is_identity(), || {
            "right inverse".into()
        })?;
        ensure(c(&f.inverse(), &f)?.is_identity(), || "left inverse".into())?;
        let s = random_series(rng, 6);
        ensure(
            c(&f, &g)?.apply(&s).map_err(err)?
                == f.apply(&g.apply(&s).map_err(err)?).map_err(err)?,
            || "action is not a homomorphism".into(),
        )
    })?;

    suite("factorization round trip", rng, |rng| {
        let order = 7;
        let mut walls: Vec<Wall> = (0..rng.gen_range(1..5))
            .map(|_| random_wall(rng, order))
            .collect();
        walls.shuffle(rng);
        let shuffled = ordered_product(walls.iter(), order);
        let d = factorize(&shuffled, order).map_err(err)?;
        ensure(verify_factorization(&d, &shuffled), || {
            "product mismatch".into()
        })?;
        // distinct walls in slope order are recovered exactly
        walls.sort_by(|x, y| y.direction().cmp_slope(x.direction()));
        walls.dedup_by(|x, y| x.direction() == y.direction());
        walls.retain(|w| !w.function().is_one());
        let sorted = ordered_product(walls.iter(), order);
        let got: Vec<Wall> = factorize(&sorted, order)
            .map_err(err)?
            .walls()
            .cloned()
            .collect();
        ensure(got == walls, || "recovered walls differ".into())
    })?;

    suite("truncation coherence", rng, |rng| {
        let (a, b, s) = (
            random_unit(rng, 6),
            random_unit(rng, 6),
            random_series(rng, 6),
        );
        let k = rng.gen_range(0..6);
        let t = |x: &Series| x.truncate(k);
        ensure(t(&e(a.mul(&b))?) == e(t(&a).mul(&t(&b)))?, || {
            "product".into()
        })?;
        ensure(t(&e(a.invert_unit())?) == e(t(&a).invert_unit())?, || {
            "inverse".into()
        })?;
        ensure(
            t(&e(s.substitute(&a, &b))?) == e(t(&s).substitute(&t(&a), &t(&b)))?,
            || "substitution".into(),
        )?;
        let half = ratio(1, 2);
        ensure(
            t(&e(a.pow_rational(&half))?) == e(t(&a).pow_rational(&half))?,
            || "rational power".into(),
        )
    })?;

    suite("symplectic identity per wall", rng, |rng| {
        let w = random_wall(rng, 8);
        ensure(symplectic_check(&w, 8), || {
            format!("wall {} fails", w.direction())
        })?;
        let t = wall_to_automorphism(&w, 8).map_err(err)?;
        ensure(ctx.observe_bool(t.is_symplectic()), || {
            format!("automorphism of {} fails", w.direction())
        })
    })?;

    suite("quadratic-form identity", rng, |rng| {
        let m = rng.gen_range(1..=6u32);
        let (a, b) = (rng.gen_range(1..80i64), rng.gen_range(0..80i64));
        let v = DimensionVector::new(a as u64, b as u64).map_err(err)?;
        let form = Rational::from_integer(euler_form(v, v, m).into()) / int(i64::from(m));
        ensure(r_eval(m, m, a, b) == form, || format!("m={m} ({a},{b})"))
    })?;

    let grid: Vec<(u32, i64, i64)> = (1..=4u32)
        .flat_map(|m| (2..=20i64).flat_map(move |s| (1..s).map(move |a| (m, a, s - a))))
        .filter(|&(_, a, b)| Direction::new(a, b).is_ok())
        .collect();
    for (i, &(m, a, b)) in grid.iter().enumerate() {
        let v = DimensionVector::new(a as u64, b as u64).map_err(err)?;
        let semistable = semistable_exists(v, m).map_err(err)?;
        let permissible = classify(m, m, a, b).map_err(err)?.is_permissible();
        ensure(semistable == permissible, || {
            format!("semistability vs permissibility, case {i}: m={m} ({a},{b})")
        })?;
    }
    ensure(grid.len() >= CASES, || {
        format!("grid has only {} cases", grid.len())
    })
}
