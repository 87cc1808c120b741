//! The acceptance criteria as runnable checks.
//!
//! Each criterion produces a list of [`Case`]s; suites group criteria and
//! assemble them into a [`VerificationReport`] in a fixed order, whatever
//! order the criteria finished in.

use std::f64::consts::PI;
use std::time::{Duration, Instant};

use ncfourier_core::fourier::{
    class_shells, convolve_momentum, convolve_position, duflo_class_shells, fourier_coeff_class,
    inverse_series_nostar, lattice_coefficients, momentum_pairing, parseval_gap, position_pairing, Domain,
    MomentumFunction, MomentumRepr, PositionFunction,
};
use ncfourier_core::groups::{character, character_radial, exp_map, make_group, spin_rep, GroupKind, SpinLabel};
use ncfourier_core::lie::{
    bch, bch_closed_su2, jacobian_closed, jacobian_determinant, jacobian_sqrt, BchStrategy, GroupSpec,
    JacobianStrategy,
};
use ncfourier_core::poisson::{poisson_generic, poisson_rhs_su2, PoissonCase};
use ncfourier_core::quadrature::QuadratureSpec;
use ncfourier_core::starprod::{planewave_eval, PlaneWaveSum, Scheme};
use ncfourier_core::waves::{branch_average, invariant_wave_reduced, Averaging};
use ncfourier_core::{AlgebraVector, Complex64, MomentumVector};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::report::{Case, Meta, QuadratureMeta, Timing, VerificationReport, SCHEMA_VERSION};

pub const DEFAULT_SEED: u64 = 20_240_917;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Suite {
    All,
    Core,
    Su2,
    Duflo,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::All => "all",
            Suite::Core => "core",
            Suite::Su2 => "su2",
            Suite::Duflo => "duflo",
        }
    }

    pub fn criteria(self) -> Vec<&'static Criterion> {
        let numbers: &[u8] = match self {
            Suite::All => &[1, 2, 3, 4, 5, 6, 7, 8, 9, 10],
            Suite::Core => &[3, 4, 5, 7, 8, 10],
            Suite::Su2 => &[1, 2, 6],
            Suite::Duflo => &[9],
        };
        numbers.iter().map(|&n| criterion(n).expect("suite lists known criteria")).collect()
    }
}

/// Inputs shared by every criterion.
#[derive(Debug, Clone)]
pub struct Context {
    pub quad: QuadratureSpec,
    pub seed: u64,
}

impl Default for Context {
    fn default() -> Self {
        Self { quad: QuadratureSpec::default(), seed: DEFAULT_SEED }
    }
}

impl Context {
    /// A generator private to one criterion, so results do not depend on
    /// which other criteria ran.
    fn rng(&self, criterion: u8) -> StdRng {
        StdRng::seed_from_u64(self.seed ^ (u64::from(criterion) << 56))
    }
}

pub struct Criterion {
    pub number: u8,
    pub title: &'static str,
    pub runtime_limit: Option<Duration>,
    run: fn(&Context) -> Vec<Case>,
}

impl Criterion {
    pub fn run(&self, ctx: &Context) -> CriterionOutcome {
        let start = Instant::now();
        let cases = (self.run)(ctx);
        CriterionOutcome { number: self.number, title: self.title, runtime_limit: self.runtime_limit, cases, elapsed: start.elapsed() }
    }
}

#[derive(Debug, Clone)]
pub struct CriterionOutcome {
    pub number: u8,
    pub title: &'static str,
    pub runtime_limit: Option<Duration>,
    pub cases: Vec<Case>,
    pub elapsed: Duration,
}

impl CriterionOutcome {
    pub fn cases_passed(&self) -> bool {
        !self.cases.is_empty() && self.cases.iter().all(|c| c.passed)
    }

    pub fn within_time(&self) -> bool {
        self.runtime_limit.map_or(true, |limit| self.elapsed <= limit)
    }
}

const fn secs(s: u64) -> Option<Duration> {
    Some(Duration::from_secs(s))
}

static CRITERIA: [Criterion; 10] = [
    Criterion { number: 1, title: "SU(2) character coefficients on shells", runtime_limit: secs(5), run: character_coefficients },
    Criterion { number: 2, title: "SU(2) character round trip", runtime_limit: secs(30), run: character_round_trip },
    Criterion { number: 3, title: "BCH consistency", runtime_limit: secs(10), run: bch_consistency },
    Criterion { number: 4, title: "Haar Jacobian modes", runtime_limit: None, run: jacobian_modes },
    Criterion { number: 5, title: "commutative Poisson summation", runtime_limit: secs(5), run: abelian_poisson },
    Criterion { number: 6, title: "SU(2) Poisson summation", runtime_limit: secs(300), run: su2_poisson },
    Criterion { number: 7, title: "Parseval identity", runtime_limit: None, run: parseval },
    Criterion { number: 8, title: "convolution theorems", runtime_limit: None, run: convolution },
    Criterion { number: 9, title: "Duflo ordering", runtime_limit: None, run: duflo },
    Criterion { number: 10, title: "localization of branch averages", runtime_limit: secs(10), run: localization },
];

pub fn criterion(number: u8) -> Option<&'static Criterion> {
    CRITERIA.iter().find(|c| c.number == number)
}

/// Runs `criteria`, concurrently when `parallel`, returning outcomes in the
/// order given.
pub fn run_criteria(criteria: &[&'static Criterion], ctx: &Context, parallel: bool) -> Vec<CriterionOutcome> {
    if !parallel {
        return criteria.iter().map(|c| c.run(ctx)).collect();
    }
    std::thread::scope(|s| {
        let handles: Vec<_> = criteria.iter().map(|c| s.spawn(move || c.run(ctx))).collect();
        handles.into_iter().map(|h| h.join().expect("criterion thread panicked")).collect()
    })
}

pub fn build_report(suite: Suite, ctx: &Context, outcomes: &[CriterionOutcome], with_timings: bool) -> VerificationReport {
    VerificationReport {
        version: SCHEMA_VERSION,
        suite: suite.name().into(),
        cases: outcomes.iter().flat_map(|o| o.cases.iter().cloned()).collect(),
        meta: Meta {
            quadrature: QuadratureMeta::from(&ctx.quad),
            seed: ctx.seed,
            timings: with_timings.then(|| {
                outcomes
                    .iter()
                    .map(|o| Timing { criterion: format!("c{:02}", o.number), wall_time_ms: o.elapsed.as_millis() as u64 })
                    .collect()
            }),
        },
    }
}

pub fn run_suite(suite: Suite, ctx: &Context, parallel: bool, with_timings: bool) -> (VerificationReport, Vec<CriterionOutcome>) {
    let outcomes = run_criteria(&suite.criteria(), ctx, parallel);
    (build_report(suite, ctx, &outcomes, with_timings), outcomes)
}

fn su2() -> GroupSpec {
    make_group(GroupKind::Su2)
}

fn in_ball(rng: &mut StdRng, radius: f64) -> AlgebraVector {
    loop {
        let v: [f64; 3] = [rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)];
        let n2 = v.iter().map(|c| c * c).sum::<f64>();
        if n2 <= 1.0 && n2 > 1e-12 {
            return AlgebraVector::new(v.iter().map(|c| c * radius).collect::<Vec<_>>());
        }
    }
}

fn unit_direction(rng: &mut StdRng) -> AlgebraVector {
    let v = in_ball(rng, 1.0);
    v.scale(1.0 / v.norm())
}

fn max_entry(a: &AlgebraVector, b: &AlgebraVector) -> f64 {
    a.coords().iter().zip(b.coords()).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

/// Collapses many residuals into one case: the worst one is reported.
struct Worst {
    residual: f64,
    expected: f64,
    computed: f64,
    error: Option<String>,
}

impl Worst {
    fn new() -> Self {
        Self { residual: 0.0, expected: 0.0, computed: 0.0, error: None }
    }

    fn add(&mut self, expected: f64, computed: f64, residual: f64) {
        // NaN is sticky: once seen it is the worst
        if !self.residual.is_nan() && !(residual <= self.residual) {
            *self = Self { residual, expected, computed, error: self.error.take() };
        }
    }

    fn fail(&mut self, err: impl std::fmt::Display) {
        self.error.get_or_insert_with(|| err.to_string());
    }

    fn case(self, id: &str, reference: &str, tol: f64) -> Case {
        match self.error {
            Some(e) => Case::errored(id, reference, tol, &e),
            None => Case::new(id, reference, self.expected, self.computed, self.residual, tol),
        }
    }
}

fn character_coefficients(ctx: &Context) -> Vec<Case> {
    let g = su2();
    let mut cases = Vec::new();
    for two_lambda in [0u32, 2, 4] {
        let chi = match PositionFunction::character(&g, SpinLabel::new(two_lambda)) {
            Ok(f) => f,
            Err(e) => return vec![Case::errored("c01", "character construction", 1e-8, &e)],
        };
        let lo = f64::from(two_lambda);
        let inside = (0..12).map(|i| lo + 2.0 * (i as f64 + 0.5) / 12.0);
        let below = (0..two_lambda * 3).map(|i| (f64::from(i) + 0.5) / 3.0);
        let above = (0..6).map(|i| lo + 2.0 + (i as f64 + 0.5) * 4.0 / 6.0);
        for (region, points) in [
            ("inside", inside.collect::<Vec<_>>()),
            ("below", below.collect()),
            ("above", above.collect()),
        ] {
            for (i, p) in points.into_iter().enumerate() {
                let id = format!("c01.chi{two_lambda}.{region}.{i:02}");
                let on_shell = region == "inside";
                let reference = if on_shell {
                    "character coefficient equals pi^2/|p| on its shell"
                } else {
                    "character coefficient vanishes off its shell"
                };
                cases.push(match fourier_coeff_class(&chi, p, &ctx.quad) {
                    Ok(v) if on_shell => {
                        let want = PI * PI / p;
                        Case::new(id, reference, want, v.re, (v - want).norm() / want, 1e-8)
                    }
                    Ok(v) => Case::new(id, reference, 0.0, v.re, v.norm(), 1e-8),
                    Err(e) => Case::errored(id, reference, 1e-8, &e),
                });
            }
        }
    }
    cases
}

fn character_round_trip(ctx: &Context) -> Vec<Case> {
    let g = su2();
    let lam = SpinLabel::new(2);
    let shells = MomentumFunction::character_shells(lam);
    let mut rng = ctx.rng(2);
    let reference = "series inverse of the closed-form shells rebuilds chi_1";
    (0..20)
        .map(|i| {
            let r = (i as f64 + 0.5) * PI / 20.0;
            let x = unit_direction(&mut rng).scale(r);
            let id = format!("c02.r{i:02}");
            let want = character_radial(lam, r);
            match inverse_series_nostar(&shells, &x, Scheme::Symmetric, &g, &ctx.quad) {
                Ok(v) => Case::new(id, reference, want, v.re, (v - want).norm() / want.abs().max(1.0), 1e-4),
                Err(e) => Case::errored(id, reference, 1e-4, &e),
            }
        })
        .collect()
}

fn bch_consistency(ctx: &Context) -> Vec<Case> {
    let g = su2();
    let mut rng = ctx.rng(3);
    let pairs: Vec<(AlgebraVector, AlgebraVector)> =
        (0..1000).map(|_| (in_ball(&mut rng, PI), in_ball(&mut rng, PI))).collect();
    let mut cases = Vec::new();
    for two_lambda in 1..=4u32 {
        let lam = SpinLabel::new(two_lambda);
        let mut worst = Worst::new();
        for (x, y) in &pairs {
            let check = || -> ncfourier_core::Result<f64> {
                let z = bch(&g, x, y)?;
                let lhs = spin_rep(lam, &z)?;
                let rhs = spin_rep(lam, x)?.matmul(&spin_rep(lam, y)?);
                Ok(lhs.max_abs_diff(&rhs))
            };
            match check() {
                Ok(d) => worst.add(0.0, d, d),
                Err(e) => worst.fail(e),
            }
        }
        cases.push(worst.case(
            &format!("c03.rep.chi{two_lambda}"),
            "spin representation of the composed element equals the matrix product",
            1e-10,
        ));
    }
    let series = match g.with_bch(BchStrategy::series()) {
        Ok(s) => s,
        Err(e) => {
            cases.push(Case::errored("c03.series", "order-6 series group", 1e-10, &e));
            return cases;
        }
    };
    let mut worst = Worst::new();
    let mut n = 0;
    while n < 1000 {
        let x = in_ball(&mut rng, 0.5);
        let y = in_ball(&mut rng, 0.5);
        if x.norm() + y.norm() > 0.5 {
            continue;
        }
        n += 1;
        match (bch(&series, &x, &y), bch_closed_su2(&x, &y)) {
            (Ok(a), Ok(b)) => {
                let d = max_entry(&a, &b);
                worst.add(0.0, d, d);
            }
            (Err(e), _) | (_, Err(e)) => worst.fail(e),
        }
    }
    cases.push(worst.case(
        "c03.series",
        "order-6 BCH series matches the closed form for |X|+|Y| <= 0.5",
        1e-10,
    ));
    cases
}

fn jacobian_modes(ctx: &Context) -> Vec<Case> {
    let g = su2();
    let det_group = match g.with_jacobian(JacobianStrategy::Determinant) {
        Ok(d) => d,
        Err(e) => return vec![Case::errored("c04", "determinant-mode group", 1e-12, &e)],
    };
    let mut rng = ctx.rng(4);
    let mut agree = Worst::new();
    let mut even = Worst::new();
    for _ in 0..1000 {
        let x = in_ball(&mut rng, 2.0 * PI);
        let neg = -&x;
        match (
            jacobian_determinant(&det_group, &x),
            jacobian_closed(&g, &x),
            jacobian_determinant(&det_group, &neg),
            jacobian_closed(&g, &neg),
        ) {
            (Ok(d), Ok(c), Ok(dn), Ok(cn)) => {
                agree.add(c, d, (d - c).abs());
                even.add(d, dn, (d - dn).abs());
                even.add(c, cn, (c - cn).abs());
            }
            (Err(e), ..) | (_, Err(e), ..) | (.., Err(e), _) | (.., Err(e)) => {
                agree.fail(&e);
                even.fail(e);
            }
        }
    }
    let zero = AlgebraVector::zeros(3);
    let mut cases = vec![
        agree.case("c04.modes", "determinant and closed-form Jacobians agree", 1e-12),
        even.case("c04.even", "Jacobian is even, J(-X) = J(X)", 1e-12),
    ];
    for (id, value) in [
        ("c04.origin.closed", jacobian_closed(&g, &zero)),
        ("c04.origin.determinant", jacobian_determinant(&det_group, &zero)),
    ] {
        cases.push(match value {
            Ok(v) => Case::absolute(id, "Jacobian equals one at the origin", 1.0, v, 0.0),
            Err(e) => Case::errored(id, "Jacobian equals one at the origin", 0.0, &e),
        });
    }
    cases
}

fn poisson_case(kind: GroupKind, sigma: f64, x: Vec<f64>, quad: &QuadratureSpec) -> ncfourier_core::Result<PoissonCase> {
    let g = make_group(kind);
    let psi = PositionFunction::gaussian(&g, sigma, Domain::WholeAlgebra)?;
    PoissonCase::new(psi, AlgebraVector::new(x), quad.clone())
}

fn abelian_poisson(ctx: &Context) -> Vec<Case> {
    let mut cases = Vec::new();
    let reference = "periodized Gaussian equals its Fourier series";
    for sigma in [0.5, 1.0, 2.0] {
        for i in 0..20 {
            let x = -PI + 2.0 * PI * (i as f64 + 0.5) / 20.0;
            let id = format!("c05.u1.s{sigma}.x{i:02}");
            cases.push(match poisson_case(GroupKind::U1, sigma, vec![x], &ctx.quad).and_then(|c| poisson_generic(&c)) {
                Ok(out) => Case::new(id, reference, out.lhs.re, out.rhs.re, out.residual, 1e-10),
                Err(e) => Case::errored(id, reference, 1e-10, &e),
            });
        }
    }
    let id = "c05.torus2.s0.8";
    let reference = "periodized product Gaussian on the 2-torus equals its Fourier series";
    cases.push(match poisson_case(GroupKind::Torus(2), 0.8, vec![0.4, -1.9], &ctx.quad).and_then(|c| poisson_generic(&c)) {
        Ok(out) => Case::new(id, reference, out.lhs.re, out.rhs.re, out.residual, 1e-10),
        Err(e) => Case::errored(id, reference, 1e-10, &e),
    });
    cases
}

fn su2_poisson(ctx: &Context) -> Vec<Case> {
    let mut rng = ctx.rng(6);
    let mut cases = Vec::new();
    let reference = "SU(2) Poisson summation, relative residual";
    for sigma in [0.4, 0.6, 0.8] {
        for (i, r) in [0.3, 0.9, 1.5, 2.2, 2.8].into_iter().enumerate() {
            // strictly inside the open interval
            let r = if i == 0 { r + 0.01 } else if i == 4 { r - 0.01 } else { r };
            let x = unit_direction(&mut rng).scale(r);
            let id = format!("c06.s{sigma}.r{r}");
            cases.push(match poisson_case(GroupKind::Su2, sigma, x.into_coords(), &ctx.quad).and_then(|c| poisson_generic(&c)) {
                Ok(out) => Case::new(id, reference, out.lhs.re, out.rhs.re, out.residual / out.lhs.norm(), 1e-3),
                Err(e) => Case::errored(id, reference, 1e-3, &e),
            });
        }
    }
    let reference = "single-branch limit returns the function";
    for r in [0.5, 1.0] {
        let id = format!("c06.single.r{r}");
        let x = unit_direction(&mut rng).scale(r);
        let run = || -> ncfourier_core::Result<(Complex64, Complex64)> {
            let c = poisson_case(GroupKind::Su2, 0.4, x.coords().to_vec(), &ctx.quad)?;
            Ok((c.psi.eval(&x), poisson_rhs_su2(&c)?))
        };
        cases.push(match run() {
            Ok((psi, rhs)) => Case::new(id, reference, psi.re, rhs.re, (rhs - psi).norm() / psi.norm(), 1e-3),
            Err(e) => Case::errored(id, reference, 1e-3, &e),
        });
    }
    cases
}

fn random_trig(g: &GroupSpec, rng: &mut StdRng, degree: i64) -> ncfourier_core::Result<PositionFunction> {
    let terms = (-degree..=degree)
        .map(|n| (vec![n], Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))))
        .collect();
    PositionFunction::trig_polynomial(g, terms)
}

fn parseval(ctx: &Context) -> Vec<Case> {
    let u1 = make_group(GroupKind::U1);
    let mut rng = ctx.rng(7);
    let mut cases = Vec::new();
    for degree in 1..=8 {
        let id = format!("c07.u1.deg{degree}");
        let reference = "Parseval identity for trigonometric polynomials";
        let gap = random_trig(&u1, &mut rng, degree)
            .and_then(|phi| Ok((phi, random_trig(&u1, &mut rng, degree)?)))
            .and_then(|(phi, psi)| parseval_gap(&phi, &psi, &ctx.quad));
        cases.push(match gap {
            Ok(gap) => Case::new(id, reference, 0.0, gap, gap, 1e-12),
            Err(e) => Case::errored(id, reference, 1e-12, &e),
        });
    }
    let g = su2();
    let volume = 2.0 * PI * PI;
    for a in [0u32, 2, 4] {
        for b in [0u32, 2, 4] {
            let want = if a == b { volume } else { 0.0 };
            let run = || -> ncfourier_core::Result<(Complex64, Complex64)> {
                let chi_a = PositionFunction::character(&g, SpinLabel::new(a))?;
                let chi_b = PositionFunction::character(&g, SpinLabel::new(b))?;
                let pos = position_pairing(&chi_a, &chi_b, &ctx.quad)?;
                let j_max = (ctx.quad.radial_order / 2) as u64;
                let mom = momentum_pairing(&class_shells(&chi_a, j_max, &ctx.quad)?, &class_shells(&chi_b, j_max, &ctx.quad)?)?;
                Ok((pos, mom))
            };
            let pos_id = format!("c07.chi{a}.chi{b}.position");
            let mom_id = format!("c07.chi{a}.chi{b}.momentum");
            match run() {
                Ok((pos, mom)) => {
                    cases.push(Case::new(pos_id, "character orthogonality under Haar measure", want, pos.re, (pos - want).norm() / volume, 1e-6));
                    cases.push(Case::new(mom_id, "character orthogonality in momentum space", want, mom.re, (mom - want).norm() / volume, 1e-6));
                }
                Err(e) => {
                    cases.push(Case::errored(pos_id, "character orthogonality under Haar measure", 1e-6, &e));
                    cases.push(Case::errored(mom_id, "character orthogonality in momentum space", 1e-6, &e));
                }
            }
        }
    }
    cases
}

fn convolution(ctx: &Context) -> Vec<Case> {
    let mut cases = Vec::new();
    cases.extend(u1_convolution(ctx));
    let g = su2();
    let mut rng = ctx.rng(8);
    let points: Vec<AlgebraVector> = (0..10).map(|_| in_ball(&mut rng, 2.8)).collect();
    let reference = "character convolution is diagonal with weight 2 pi^2 / (2 lambda + 1)";
    for a in [0u32, 2, 4] {
        for b in [0u32, 2, 4] {
            let chars = PositionFunction::character(&g, SpinLabel::new(a))
                .and_then(|ca| Ok((ca, PositionFunction::character(&g, SpinLabel::new(b))?)));
            let (chi_a, chi_b) = match chars {
                Ok(c) => c,
                Err(e) => {
                    cases.push(Case::errored(format!("c08.chi{a}.chi{b}"), reference, 1e-4, &e));
                    continue;
                }
            };
            for (i, x) in points.iter().enumerate() {
                let id = format!("c08.chi{a}.chi{b}.x{i}");
                let want = if a == b {
                    2.0 * PI * PI / f64::from(a + 1) * character(SpinLabel::new(a), x)
                } else {
                    0.0
                };
                let got = exp_map(&g, x).and_then(|at| convolve_position(&chi_a, &chi_b, &at, &ctx.quad));
                cases.push(match got {
                    Ok(v) => Case::new(id, reference, want, v.re, (v - want).norm() / want.abs().max(1.0), 1e-4),
                    Err(e) => Case::errored(id, reference, 1e-4, &e),
                });
            }
        }
    }
    cases
}

fn u1_convolution(ctx: &Context) -> Vec<Case> {
    let g = make_group(GroupKind::U1);
    let mut rng = ctx.rng(80);
    let mut run = || -> ncfourier_core::Result<(f64, f64)> {
        let phi = random_trig(&g, &mut rng, 3)?;
        let psi = random_trig(&g, &mut rng, 4)?;
        let cphi = lattice_coefficients(&phi, 8, &ctx.quad)?;
        let cpsi = lattice_coefficients(&psi, 8, &ctx.quad)?;
        let conv = convolve_momentum(&cphi, &cpsi)?;
        let (MomentumRepr::Lattice(a), MomentumRepr::Lattice(b)) = (&cphi.repr, &cpsi.repr) else {
            return Err(ncfourier_core::Error::RepresentationUnsupported);
        };
        let product = a.iter().zip(b).map(|((k, x), (_, y))| (k.clone(), x * y)).collect();
        let product = MomentumFunction::new(MomentumRepr::Lattice(product), cphi.normalization);
        let (mut pointwise, mut convolved) = (0.0f64, 0.0f64);
        for i in 0..10 {
            let x = AlgebraVector::new(vec![-3.0 + 0.6 * i as f64]);
            let series = inverse_series_nostar(&conv, &x, Scheme::Symmetric, &g, &ctx.quad)?;
            pointwise = pointwise.max((series - phi.eval(&x) * psi.eval(&x)).norm());
            let direct = convolve_position(&phi, &psi, &exp_map(&g, &x)?, &ctx.quad)?;
            let modes = inverse_series_nostar(&product, &x, Scheme::Symmetric, &g, &ctx.quad)?;
            convolved = convolved.max((direct - modes).norm());
        }
        Ok((pointwise, convolved))
    };
    let (a, b) = ("pointwise product has the convolved coefficients", "convolution has the multiplied coefficients");
    match run() {
        Ok((p, c)) => vec![
            Case::new("c08.u1.product", a, 0.0, p, p, 1e-10),
            Case::new("c08.u1.convolution", b, 0.0, c, c, 1e-10),
        ],
        Err(e) => vec![Case::errored("c08.u1.product", a, 1e-10, &e), Case::errored("c08.u1.convolution", b, 1e-10, &e)],
    }
}

fn duflo(ctx: &Context) -> Vec<Case> {
    let g = su2();
    let lam = SpinLabel::new(2);
    let mut rng = ctx.rng(9);
    let mut cases = Vec::new();
    let reference = "Duflo and symmetric series inverses rebuild the same chi_1";
    let shells = PositionFunction::character(&g, lam).and_then(|chi| duflo_class_shells(&chi, 8, &ctx.quad));
    match shells {
        Ok(duf) => {
            let sym = MomentumFunction::character_shells(lam);
            for i in 0..20 {
                let r = (i as f64 + 0.5) * PI / 20.0;
                let x = unit_direction(&mut rng).scale(r);
                let id = format!("c09.inverse.r{i:02}");
                let both = inverse_series_nostar(&sym, &x, Scheme::Symmetric, &g, &ctx.quad)
                    .and_then(|a| Ok((a, inverse_series_nostar(&duf, &x, Scheme::Duflo, &g, &ctx.quad)?)));
                cases.push(match both {
                    Ok((a, b)) => Case::new(id, reference, a.re, b.re, (a - b).norm() / a.norm().max(1.0), 1e-4),
                    Err(e) => Case::errored(id, reference, 1e-4, &e),
                });
            }
        }
        Err(e) => cases.push(Case::errored("c09.inverse", reference, 1e-4, &e)),
    }
    let reference = "Duflo plane wave equals the symmetric one divided by J^(1/2)";
    for i in 0..20 {
        let x = in_ball(&mut rng, 3.0);
        let p = MomentumVector::new(in_ball(&mut rng, 5.0).into_coords());
        let c = Complex64::new(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
        let id = format!("c09.wave.{i:02}");
        let run = || -> ncfourier_core::Result<(Complex64, Complex64)> {
            let sym = PlaneWaveSum::single(&g, Scheme::Symmetric, c, x.clone())?;
            let duf = sym.with_scheme(Scheme::Duflo);
            let s = jacobian_sqrt(&g, &x)?;
            Ok((planewave_eval(&sym, &p)? * (1.0 / s), planewave_eval(&duf, &p)?))
        };
        cases.push(match run() {
            Ok((want, got)) => Case::new(id, reference, want.re, got.re, (got - want).norm(), 0.0),
            Err(e) => Case::errored(id, reference, 0.0, &e),
        });
    }
    cases
}

/// 64 fixed momenta whose projection on the unit vector `u` has fractional
/// part in `[0.1, 0.9]`.
fn off_support(u: &[f64]) -> Vec<MomentumVector> {
    (0..64)
        .map(|i| {
            let t = i as f64;
            let raw: Vec<f64> = match u.len() {
                1 => vec![3.0 * (0.37 * t).sin()],
                _ => vec![(0.37 * t).sin() * 3.0, (0.53 * t + 1.0).cos() * 3.0, (0.71 * t + 2.0).sin() * 3.0],
            };
            let along: f64 = raw.iter().zip(u).map(|(a, b)| a * b).sum();
            let target = along.floor() + 0.1 + 0.8 * ((0.29 * t).sin() * 0.5 + 0.5);
            MomentumVector::new(raw.iter().zip(u).map(|(a, b)| a + (target - along) * b).collect::<Vec<_>>())
        })
        .collect()
}

fn localization(_ctx: &Context) -> Vec<Case> {
    let mut cases = Vec::new();
    for (name, kind, x, windows) in [
        ("su2", GroupKind::Su2, vec![0.4, -0.8, 1.1], vec![8i64, 16, 32, 64, 128]),
        ("u1", GroupKind::U1, vec![0.9], vec![8, 16, 32, 64]),
    ] {
        let g = make_group(kind);
        let x = AlgebraVector::new(x);
        let u: Vec<f64> = x.coords().iter().map(|c| c / x.norm()).collect();
        let ps = off_support(&u);
        let rms = |n: i64| -> ncfourier_core::Result<f64> {
            let mut total = 0.0;
            for p in &ps {
                total += branch_average(&g, &x, p, n, Averaging::Cesaro)?.norm_sqr();
            }
            Ok((total / ps.len() as f64).sqrt())
        };
        let reference = "off-support Cesaro average halves when the window doubles, within a factor 2";
        let values: Vec<_> = windows.iter().map(|&n| rms(n)).collect();
        for (i, pair) in values.windows(2).enumerate() {
            let id = format!("c10.{name}.off.n{}", windows[i + 1]);
            cases.push(match pair {
                [Ok(a), Ok(b)] => {
                    let ratio = b / a;
                    Case::new(id, reference, 0.5, ratio, (ratio / 0.5).log2().abs(), 1.0)
                }
                [Err(e), _] | [_, Err(e)] => Case::errored(id, reference, 1.0, e),
                _ => unreachable!(),
            });
        }
        let reference = "on-support Cesaro average equals the invariant plane wave";
        let shift = if u.len() == 3 { 2.0 } else { 3.0 };
        // a momentum on the plane <p, u> = shift, off the axis when there is room
        let mut on: Vec<f64> = u.iter().map(|c| c * shift).collect();
        if on.len() == 3 {
            let t = [u[1], -u[0], 0.0];
            let tn = (t[0] * t[0] + t[1] * t[1]).sqrt();
            on.iter_mut().zip(t).for_each(|(o, ti)| *o += 0.3 * ti / tn);
        }
        let on = MomentumVector::new(on);
        let want = invariant_wave_reduced(&g, &x, &on, Scheme::Symmetric);
        for n in [windows[0], windows[windows.len() - 1]] {
            let id = format!("c10.{name}.on.n{n}");
            cases.push(match (want.as_ref(), branch_average(&g, &x, &on, n, Averaging::Cesaro).as_ref()) {
                (Ok(w), Ok(v)) => Case::new(id, reference, w.re, v.re, (v - w).norm(), 1e-12),
                (Err(e), _) | (_, Err(e)) => Case::errored(id, reference, 1e-12, e),
            });
        }
    }
    cases
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suites_partition_the_criteria() {
        let mut all: Vec<u8> = [Suite::Core, Suite::Su2, Suite::Duflo]
            .iter()
            .flat_map(|s| s.criteria().into_iter().map(|c| c.number))
            .collect();
        all.sort_unstable();
        assert_eq!(all, (1..=10).collect::<Vec<_>>());
        assert_eq!(Suite::All.criteria().len(), 10);
    }

    #[test]
    fn case_ids_are_unique() {
        let ctx = Context::default();
        let outcomes = run_criteria(&[criterion(4).unwrap(), criterion(9).unwrap(), criterion(10).unwrap()], &ctx, true);
        let mut ids: Vec<&str> = outcomes.iter().flat_map(|o| o.cases.iter().map(|c| c.id.as_str())).collect();
        let n = ids.len();
        ids.sort_unstable();
        ids.dedup();
        assert_eq!(ids.len(), n);
    }

    #[test]
    fn worst_keeps_the_largest_and_nan() {
        let mut w = Worst::new();
        w.add(0.0, 1.0, 1.0);
        w.add(0.0, 3.0, 3.0);
        w.add(0.0, 2.0, 2.0);
        assert_eq!(w.residual, 3.0);
        w.add(0.0, f64::NAN, f64::NAN);
        assert!(w.residual.is_nan());
        assert!(!w.case("x", "y", 1.0).passed);
    }
}
