//! Seeded property suites over random catalog expressions.
//!
//! Each suite checks a group of identities on randomly drawn (f, x) cases
//! and reports, per property, the worst residual seen against its
//! tolerance. Residuals are relative, |a − b| / max(1, |b|), unless a
//! property says otherwise.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::essence::{essence, essence_derivative_identity_check, essence_numeric, DEFAULT_H_MIN};
use crate::eulermac::euler_maclaurin_sum;
use crate::expr::{BasisFunction, CatalogExpr, CatalogTerm};
use crate::fracsum::{frac_sum, frac_sum_series, frac_sum_taylor};
use crate::numeric::{distance_to_nonpositive_integers, expm1, real, rel_residual, EULER_GAMMA, I, ONE, ZERO};
use crate::regularize::hash_sum;
use crate::specfun::{bernoulli, ln_gamma, zeta_int, Convention};

/// Minimum distance kept between evaluation points and singularities.
const CLEARANCE: f64 = 0.05;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    Constant,
    Polynomial,
    InverseMonomial,
    Exponential,
    ExpTimesX,
    Logarithm,
}

pub const ALL_FAMILIES: [Family; 6] = [
    Family::Constant,
    Family::Polynomial,
    Family::InverseMonomial,
    Family::Exponential,
    Family::ExpTimesX,
    Family::Logarithm,
];

/// Deterministic source of random complex numbers and catalog expressions.
pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Self {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        self.rng.random_range(lo..=hi)
    }

    pub fn index(&mut self, n: usize) -> usize {
        self.rng.random_range(0..n)
    }

    pub fn complex(&mut self, re: (f64, f64), im: (f64, f64)) -> Complex64 {
        Complex64::new(self.uniform(re.0, re.1), self.uniform(im.0, im.1))
    }

    pub fn coeff(&mut self) -> Complex64 {
        self.complex((-2.0, 2.0), (-2.0, 2.0))
    }

    /// Exponent for the exponential families, kept away from e^z = 1.
    pub fn exponent(&mut self, re: (f64, f64)) -> Complex64 {
        loop {
            let z = self.complex(re, (-3.0, 3.0));
            if expm1(z).norm() > 0.25 {
                return z;
            }
        }
    }

    pub fn basis_term(&mut self, family: Family) -> CatalogTerm {
        let c = self.coeff();
        match family {
            Family::Constant => CatalogTerm::new(c, BasisFunction::Constant, ZERO),
            Family::Polynomial => {
                let a = self.rng.random_range(1..=4);
                let s = self.complex((-1.0, 1.0), (-1.0, 1.0));
                CatalogTerm::new(c, BasisFunction::Monomial(a), s)
            }
            Family::InverseMonomial => {
                let a = self.rng.random_range(1..=3);
                let s = self.complex((0.0, 1.5), (-1.0, 1.0));
                CatalogTerm::new(c, BasisFunction::InverseMonomial(a), s)
            }
            Family::Exponential => CatalogTerm::new(c, BasisFunction::Exponential(self.exponent((-1.0, 0.3))), ZERO),
            Family::ExpTimesX => CatalogTerm::new(c, BasisFunction::ExpTimesX(self.exponent((-1.0, 0.3))), ZERO),
            Family::Logarithm => {
                let s = self.complex((0.2, 1.5), (-1.0, 1.0));
                CatalogTerm::new(c, BasisFunction::Logarithm, s)
            }
        }
    }

    /// A sum of 1 to `max_terms` terms drawn from `families`.
    pub fn catalog(&mut self, families: &[Family], max_terms: usize) -> CatalogExpr {
        loop {
            let n = self.rng.random_range(1..=max_terms);
            let terms: Vec<_> = (0..n)
                .map(|_| {
                    let f = families[self.index(families.len())];
                    self.basis_term(f)
                })
                .collect();
            let e = CatalogExpr::from_terms(terms);
            if !e.is_zero() {
                return e;
            }
        }
    }

    /// Terms that decay at +∞: inverse powers and exponentials with Re z < 0.
    pub fn decaying_catalog(&mut self, max_terms: usize) -> CatalogExpr {
        let n = self.rng.random_range(1..=max_terms);
        let terms: Vec<_> = (0..n)
            .map(|_| {
                let c = self.coeff();
                match self.index(3) {
                    0 => self.basis_term(Family::InverseMonomial),
                    1 => CatalogTerm::new(c, BasisFunction::Exponential(self.exponent((-1.5, -0.3))), ZERO),
                    _ => CatalogTerm::new(c, BasisFunction::ExpTimesX(self.exponent((-1.5, -0.3))), ZERO),
                }
            })
            .collect();
        CatalogExpr::from_terms(terms)
    }

    /// Polynomial of exact degree `degree` with random complex coefficients.
    pub fn polynomial(&mut self, degree: u32) -> CatalogExpr {
        let terms = (0..=degree).map(|j| {
            let basis = if j == 0 { BasisFunction::Constant } else { BasisFunction::Monomial(j) };
            CatalogTerm::new(self.complex((-1.0, 1.0), (-1.0, 1.0)), basis, ZERO)
        });
        CatalogExpr::from_terms(terms)
    }

    /// A point in the box such that every `p + offset` stays clear of the
    /// singularities of `e` and of its closed-form sums.
    pub fn clear_point(&mut self, e: &CatalogExpr, re: (f64, f64), im: (f64, f64), offsets: &[Complex64]) -> Complex64 {
        loop {
            let p = self.complex(re, im);
            if offsets.iter().all(|&o| is_clear(e, p + o)) {
                return p;
            }
        }
    }
}

/// Whether `t` is a safe bound or evaluation point for every singular term
/// of `e`, as the argument t + shift and as t + shift + 1.
pub fn is_clear(e: &CatalogExpr, t: Complex64) -> bool {
    e.terms().iter().all(|term| {
        let w = t + term.shift;
        match term.basis {
            BasisFunction::InverseMonomial(_) => {
                distance_to_nonpositive_integers(w) >= CLEARANCE && distance_to_nonpositive_integers(w + 1.0) >= CLEARANCE
            }
            BasisFunction::Logarithm => {
                let off_cut = |v: Complex64| v.re > CLEARANCE || v.im.abs() >= CLEARANCE;
                off_cut(w) && off_cut(w + 1.0)
            }
            _ => true,
        }
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Axioms,
    Table1,
    EulerMaclaurin,
    Oracles,
    Essence,
    DerivativeIdentity,
    ZetaGamma,
    Trig,
    Regularize,
}

impl Suite {
    pub const ALL: [Suite; 9] = [
        Suite::Axioms,
        Suite::Table1,
        Suite::EulerMaclaurin,
        Suite::Oracles,
        Suite::Essence,
        Suite::DerivativeIdentity,
        Suite::ZetaGamma,
        Suite::Trig,
        Suite::Regularize,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Axioms => "axioms",
            Suite::Table1 => "table1",
            Suite::EulerMaclaurin => "euler-maclaurin",
            Suite::Oracles => "oracles",
            Suite::Essence => "essence",
            Suite::DerivativeIdentity => "derivative-identity",
            Suite::ZetaGamma => "zeta-gamma",
            Suite::Trig => "trig",
            Suite::Regularize => "regularize",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        Suite::ALL.into_iter().find(|suite| suite.name() == s).ok_or_else(|| {
            let names: Vec<_> = Suite::ALL.iter().map(|s| s.name()).collect();
            format!("unknown suite `{s}` (expected one of: {})", names.join(", "))
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PropertyOutcome {
    pub name: &'static str,
    pub cases: usize,
    pub worst: f64,
    pub tolerance: f64,
    /// Description of the case with the worst residual.
    pub worst_case: Option<String>,
}

impl PropertyOutcome {
    pub fn passed(&self) -> bool {
        self.cases > 0 && self.worst <= self.tolerance
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteReport {
    pub suite: Suite,
    pub seed: u64,
    pub properties: Vec<PropertyOutcome>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.properties.iter().all(PropertyOutcome::passed)
    }

    pub fn property(&self, name: &str) -> Option<&PropertyOutcome> {
        self.properties.iter().find(|p| p.name == name)
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "suite {} (seed {})", self.suite, self.seed)?;
        for p in &self.properties {
            let status = if p.passed() { "PASS" } else { "FAIL" };
            writeln!(
                f,
                "  {status}  {:<34} cases {:>6}  worst {:.3e}  tol {:.0e}",
                p.name, p.cases, p.worst, p.tolerance
            )?;
            if !p.passed() {
                if let Some(case) = &p.worst_case {
                    writeln!(f, "        worst case: {case}")?;
                }
            }
        }
        write!(f, "{}", if self.passed() { "PASS" } else { "FAIL" })
    }
}

struct Tally {
    outcome: PropertyOutcome,
}

impl Tally {
    fn new(name: &'static str, tolerance: f64) -> Self {
        Self {
            outcome: PropertyOutcome {
                name,
                cases: 0,
                worst: 0.0,
                tolerance,
                worst_case: None,
            },
        }
    }

    /// Records one case; engine errors count as an infinite residual.
    fn record(&mut self, residual: Result<f64>, describe: impl FnOnce() -> String) {
        let o = &mut self.outcome;
        o.cases += 1;
        let (r, note) = match residual {
            Ok(r) if r.is_nan() => (f64::INFINITY, "NaN residual".to_string()),
            Ok(r) => (r, String::new()),
            Err(err) => (f64::INFINITY, err.to_string()),
        };
        if r > o.worst || o.worst_case.is_none() {
            o.worst = o.worst.max(r);
            o.worst_case = Some(if note.is_empty() { describe() } else { format!("{}: {note}", describe()) });
        }
    }

    fn finish(self) -> PropertyOutcome {
        self.outcome
    }
}

pub fn run_suite(suite: Suite, seed: u64, count: usize) -> SuiteReport {
    let mut s = Sampler::new(seed);
    let properties = match suite {
        Suite::Axioms => axioms(&mut s, count),
        Suite::Table1 => table1(),
        Suite::EulerMaclaurin => euler_maclaurin(&mut s, count),
        Suite::Oracles => oracles(&mut s, count),
        Suite::Essence => essence_suite(&mut s, count),
        Suite::DerivativeIdentity => derivative_identity(&mut s, count),
        Suite::ZetaGamma => zeta_gamma(&mut s, count),
        Suite::Trig => trig(&mut s, count),
        Suite::Regularize => regularize(&mut s, count),
    };
    SuiteReport { suite, seed, properties }
}

fn sum(e: &CatalogExpr, x: Complex64, y: Complex64) -> Result<Complex64> {
    frac_sum(e, x, y).map(|r| r.value)
}

const BOX_RE: (f64, f64) = (-2.5, 2.5);
const BOX_IM: (f64, f64) = (-1.5, 1.5);

fn axioms(s: &mut Sampler, count: usize) -> Vec<PropertyOutcome> {
    let mut a1 = Tally::new("A1 continued summation", 1e-9);
    let mut a2 = Tally::new("A2 translation invariance", 1e-9);
    let mut a3 = Tally::new("A3 linearity", 1e-9);
    let mut a4 = Tally::new("A4 consistency", 1e-10);
    let mut empty = Tally::new("empty sum", 1e-9);
    let mut interp = Tally::new("interpolation of classical sums", 1e-9);
    let mut opposite = Tally::new("opposite sum", 1e-9);
    let (m1, p1) = (real(-1.0), real(1.0));

    for _ in 0..count {
        let f = s.catalog(&ALL_FAMILIES, 3);
        let x = s.clear_point(&f, BOX_RE, BOX_IM, &[m1, ZERO]);
        let y = s.clear_point(&f, BOX_RE, BOX_IM, &[ZERO, p1]);
        let z = s.clear_point(&f, BOX_RE, BOX_IM, &[ZERO]);
        a1.record(
            (|| Ok(rel_residual(sum(&f, x, y)? + sum(&f, y + 1.0, z)?, sum(&f, x, z)?)))(),
            || format!("f = {f}, x = {x}, y = {y}, z = {z}"),
        );

        let shift = s.complex((-1.0, 1.0), (-1.0, 1.0));
        let g = f.translate(shift);
        let (u, v) = (
            s.clear_point(&g, BOX_RE, BOX_IM, &[m1, ZERO]),
            s.clear_point(&g, BOX_RE, BOX_IM, &[ZERO]),
        );
        a2.record(
            (|| Ok(rel_residual(sum(&f, u + shift, v + shift)?, sum(&g, u, v)?)))(),
            || format!("f = {f}, s = {shift}, x = {u}, y = {v}"),
        );

        let h = s.catalog(&ALL_FAMILIES, 3);
        let (lambda, mu) = (s.coeff(), s.coeff());
        let combo = f.scale(lambda) + h.scale(mu);
        let (p, q) = (
            s.clear_point(&combo, BOX_RE, BOX_IM, &[m1, ZERO]),
            s.clear_point(&combo, BOX_RE, BOX_IM, &[ZERO]),
        );
        a3.record(
            (|| Ok(rel_residual(sum(&combo, p, q)?, lambda * sum(&f, p, q)? + mu * sum(&h, p, q)?)))(),
            || format!("f = {f}, g = {h}, λ = {lambda}, μ = {mu}, x = {p}, y = {q}"),
        );

        let w = s.clear_point(&f, BOX_RE, BOX_IM, &[m1, ZERO]);
        a4.record((|| Ok(rel_residual(sum(&f, w, w)?, f.evaluate(w))))(), || format!("f = {f}, x = {w}"));
        empty.record((|| Ok(sum(&f, w, w - 1.0)?.norm()))(), || format!("f = {f}, x = {w}"));

        let n = 1 + s.index(200);
        let classical: Complex64 = (1..=n).map(|k| f.evaluate(real(k as f64))).sum();
        interp.record(
            (|| Ok(rel_residual(sum(&f, ONE, real(n as f64))?, classical)))(),
            || format!("f = {f}, n = {n}"),
        );

        let t = loop {
            let t = s.clear_point(&f, BOX_RE, BOX_IM, &[ZERO]);
            if is_clear(&f, -t) && is_clear(&f.translate(-t), t) {
                break t;
            }
        };
        opposite.record(
            (|| Ok(rel_residual(sum(&f, ONE, -t)?, -sum(&f.translate(-t), ONE, t)?)))(),
            || format!("f = {f}, x = {t}"),
        );
    }
    [a1, a2, a3, a4, empty, interp, opposite].into_iter().map(Tally::finish).collect()
}

/// Table 1 rows as (label, function, expected essence).
pub fn table1_rows() -> Vec<(String, CatalogExpr, Complex64)> {
    let mut rows = Vec::new();
    let c = Complex64::new(2.0, -1.0);
    rows.push(("x ↦ z".to_string(), CatalogExpr::constant(c), c));
    for a in (-6i64..=6).filter(|&a| a != 0) {
        let f = if a > 0 {
            CatalogExpr::monomial(a as u32)
        } else {
            CatalogExpr::inverse_monomial((-a) as u32)
        };
        let want = -(a as f64) * zeta_int(1 - a).expect("ζ at integers other than 1");
        rows.push((format!("x ↦ x^{a}"), f, real(want)));
    }
    for z in [I * std::f64::consts::PI, Complex64::new(-1.0, 0.5), real(0.7)] {
        let u = z.exp();
        rows.push((format!("x ↦ e^{{zx}}, z = {z}"), CatalogExpr::exponential(z), z * u / (u - 1.0)));
        rows.push((
            format!("x ↦ e^{{zx}}x, z = {z}"),
            CatalogExpr::exp_times_x(z),
            u / (u - 1.0) * (1.0 - z / (u - 1.0)),
        ));
    }
    rows.push(("x ↦ ln x".to_string(), CatalogExpr::logarithm(), real(-EULER_GAMMA)));
    rows.push(("x ↦ 1/(x(x+1))".to_string(), CatalogExpr::reciprocal_consecutive(ZERO), ONE));
    rows
}

fn table1() -> Vec<PropertyOutcome> {
    let mut closed = Tally::new("closed-form essence", 1e-10);
    let mut numeric = Tally::new("numeric-limit essence", 1e-6);
    for (label, f, want) in table1_rows() {
        closed.record(essence(&f).map(|r| rel_residual(r.value, want)), || label.clone());
        numeric.record(
            essence_numeric(&f, DEFAULT_H_MIN).map(|r| rel_residual(r.value, want)),
            || label.clone(),
        );
    }
    vec![closed.finish(), numeric.finish()]
}

/// Points per random polynomial in the Euler–Maclaurin suite.
pub const EULER_MACLAURIN_POINTS: usize = 100;

fn euler_maclaurin(s: &mut Sampler, count: usize) -> Vec<PropertyOutcome> {
    let mut complex_x = Tally::new("Euler–Maclaurin = fractional sum", 1e-9);
    let mut integer_x = Tally::new("Euler–Maclaurin = classical loop", 1e-9);
    for _ in 0..count {
        let degree = s.index(11) as u32;
        let p = s.polynomial(degree);
        for _ in 0..EULER_MACLAURIN_POINTS {
            let x = s.complex((-2.0, 2.0), (-2.0, 2.0));
            complex_x.record(
                (|| Ok(rel_residual(euler_maclaurin_sum(&p, x)?, sum(&p, ONE, x)?)))(),
                || format!("p = {p}, x = {x}"),
            );
        }
        let n = 1 + s.index(50);
        let classical: Complex64 = (1..=n).map(|k| p.evaluate(real(k as f64))).sum();
        integer_x.record(
            euler_maclaurin_sum(&p, real(n as f64)).map(|v| rel_residual(v, classical)),
            || format!("p = {p}, n = {n}"),
        );
    }
    vec![complex_x.finish(), integer_x.finish()]
}

fn oracles(s: &mut Sampler, count: usize) -> Vec<PropertyOutcome> {
    let mut series = Tally::new("closed form = series engine", 1e-8);
    let mut taylor = Tally::new("closed form = Taylor engine", 1e-8);
    for _ in 0..count {
        let f = s.decaying_catalog(3);
        let x = s.clear_point(&f, BOX_RE, BOX_IM, &[ZERO]);
        series.record(
            (|| {
                let got = frac_sum_series(&f, x, 1e-10, 1_000_000)?;
                Ok(rel_residual(got.value, sum(&f, ONE, x)?) - got.err_estimate)
            })(),
            || format!("f = {f}, x = {x}"),
        );

        let g = loop {
            let g = s.catalog(&[Family::Constant, Family::Polynomial, Family::Exponential, Family::ExpTimesX], 3);
            let small = g.terms().iter().all(|t| match t.basis {
                BasisFunction::Exponential(z) | BasisFunction::ExpTimesX(z) => z.norm() <= 1.5,
                _ => true,
            });
            if small {
                break g;
            }
        };
        let y = loop {
            let y = s.complex((-2.0, 2.0), (-2.0, 2.0));
            if y.norm() <= 2.0 {
                break y;
            }
        };
        taylor.record(
            (|| Ok(rel_residual(frac_sum_taylor(&g, y, 80)?.value, sum(&g, ONE, y)?)))(),
            || format!("f = {g}, x = {y}"),
        );
    }
    vec![series.finish(), taylor.finish()]
}

/// Finite-difference step in the shift variable of Theorem 5's y-derivative.
const SHIFT_STEP: f64 = 1.0 / 131_072.0;

fn essence_suite(s: &mut Sampler, count: usize) -> Vec<PropertyOutcome> {
    let mut linear = Tally::new("linearity", 1e-10);
    let mut bernoulli_sweep = Tally::new("ess(x^a) = B_a, a = 0..12", 1e-12);
    let mut table_row = Tally::new("ess(x^a) = −aζ(1−a), 0 < |a| ≤ 6", 1e-10);
    let mut shift_derivative = Tally::new("d/dy ess(f_y) at 0 = ess(f′)", 1e-6);

    for _ in 0..count {
        let f = s.catalog(&ALL_FAMILIES, 3);
        let g = s.catalog(&ALL_FAMILIES, 3);
        let (lambda, mu) = (s.coeff(), s.coeff());
        linear.record(
            (|| {
                let lhs = essence(&(f.scale(lambda) + g.scale(mu)))?.value;
                Ok(rel_residual(lhs, lambda * essence(&f)?.value + mu * essence(&g)?.value))
            })(),
            || format!("f = {f}, g = {g}, λ = {lambda}, μ = {mu}"),
        );

        let h = s.catalog(&[Family::Constant, Family::Polynomial, Family::Exponential, Family::ExpTimesX], 3);
        shift_derivative.record(
            (|| {
                let plus = essence(&h.translate(real(SHIFT_STEP)))?.value;
                let minus = essence(&h.translate(real(-SHIFT_STEP)))?.value;
                let slope = (plus - minus) / (2.0 * SHIFT_STEP);
                Ok(rel_residual(slope, essence(&h.differentiate())?.value))
            })(),
            || format!("f = {h}"),
        );
    }

    for a in 0..=12u32 {
        let f = if a == 0 { CatalogExpr::constant(ONE) } else { CatalogExpr::monomial(a) };
        bernoulli_sweep.record(
            (|| {
                let exact = bernoulli(a as usize, Convention::Plus)?;
                let want = exact.to_f64().unwrap_or(f64::NAN);
                Ok((essence(&f)?.value - want).norm())
            })(),
            || format!("a = {a}"),
        );
    }
    for a in (-6i64..=6).filter(|&a| a != 0) {
        let f = if a > 0 {
            CatalogExpr::monomial(a as u32)
        } else {
            CatalogExpr::inverse_monomial((-a) as u32)
        };
        table_row.record(
            (|| Ok(rel_residual(essence(&f)?.value, real(-(a as f64) * zeta_int(1 - a)?))))(),
            || format!("a = {a}"),
        );
    }
    [linear, bernoulli_sweep, table_row, shift_derivative].into_iter().map(Tally::finish).collect()
}

fn derivative_identity(s: &mut Sampler, count: usize) -> Vec<PropertyOutcome> {
    let families = [
        ("derivative identity, polynomial", Family::Polynomial),
        ("derivative identity, exponential", Family::Exponential),
        ("derivative identity, exp·x", Family::ExpTimesX),
        ("derivative identity, inverse monomial", Family::InverseMonomial),
    ];
    families
        .into_iter()
        .map(|(name, family)| {
            let mut tally = Tally::new(name, 1e-6);
            for _ in 0..count {
                let f = s.catalog(&[family], 2);
                let x = s.clear_point(&f, BOX_RE, BOX_IM, &[real(-0.01), ZERO, real(0.01)]);
                tally.record(essence_derivative_identity_check(&f, x), || format!("f = {f}, x = {x}"));
            }
            tally.finish()
        })
        .collect()
}

/// −γx + Σ_{k=2}^{40} ζ(k)(−x)^k/k
pub fn ln_gamma_series(x: Complex64) -> Result<Complex64> {
    let mut total = -EULER_GAMMA * x;
    let mut power = -x;
    for k in 2..=40i64 {
        power *= -x;
        total += power * zeta_int(k)? / k as f64;
    }
    Ok(total)
}

fn zeta_gamma(s: &mut Sampler, count: usize) -> Vec<PropertyOutcome> {
    let mut tally = Tally::new("lnΓ(x+1) = zeta series", 1e-9);
    for _ in 0..count {
        let x = loop {
            let x = s.complex((-0.5, 0.5), (-0.5, 0.5));
            if x.norm() <= 0.5 {
                break x;
            }
        };
        tally.record(
            (|| Ok((ln_gamma(x + 1.0)? - ln_gamma_series(x)?).norm()))(),
            || format!("x = {x}"),
        );
    }
    vec![tally.finish()]
}

/// Random x with 1/x at least 0.05 away from every integer.
pub fn prop501_point(s: &mut Sampler) -> Complex64 {
    loop {
        let x = s.complex((-4.0, 4.0), (-2.0, 2.0));
        let w = x.inv();
        if x.norm() >= 0.5 && (w - real(w.re.round())).norm() >= 0.05 {
            return x;
        }
    }
}

fn trig(s: &mut Sampler, count: usize) -> Vec<PropertyOutcome> {
    let mut prop = Tally::new("Σ cos(2πk/x)k = x/2", 1e-8);
    let mut cos_pi = Tally::new("Σ cos(πk)k closed form", 1e-9);
    let mut sin_pi = Tally::new("Σ sin(πk)k closed form", 1e-9);
    let pi = std::f64::consts::PI;
    for _ in 0..count {
        let x = prop501_point(s);
        let f = CatalogExpr::cos_times_x(2.0 * pi / x);
        prop.record(sum(&f, ONE, x).map(|v| rel_residual(v, x / 2.0)), || format!("x = {x}"));

        let y = s.complex((-3.0, 3.0), (-2.0, 2.0));
        let (c, sn) = ((pi * y).cos(), (pi * y).sin());
        cos_pi.record(
            sum(&CatalogExpr::cos_times_x(real(pi)), ONE, y).map(|v| rel_residual(v, c * y / 2.0 + c / 4.0 - 0.25)),
            || format!("x = {y}"),
        );
        sin_pi.record(
            sum(&CatalogExpr::sin_times_x(real(pi)), ONE, y).map(|v| rel_residual(v, sn * y / 2.0 + sn / 4.0)),
            || format!("x = {y}"),
        );
    }
    [prop, cos_pi, sin_pi].into_iter().map(Tally::finish).collect()
}

/// The four classical #-sums: k, 1/k, (−1)^{k+1}, (−1)^{k+1}k.
pub fn regularization_quartet() -> [(&'static str, CatalogExpr, Complex64); 4] {
    let z = I * std::f64::consts::PI;
    [
        ("#Σ k = −1/12", CatalogExpr::monomial(1), real(-1.0 / 12.0)),
        ("#Σ 1/k = γ", CatalogExpr::inverse_monomial(1), real(EULER_GAMMA)),
        ("#Σ (−1)^{k+1} = 1/2", -CatalogExpr::exponential(z), real(0.5)),
        ("#Σ (−1)^{k+1}k = 1/4", -CatalogExpr::exp_times_x(z), real(0.25)),
    ]
}

fn regularize(s: &mut Sampler, count: usize) -> Vec<PropertyOutcome> {
    let mut quartet = Tally::new("classical #-sums", 1e-10);
    let mut linear = Tally::new("linearity", 1e-10);
    let mut zeta = Tally::new("#Σ k^a = ζ(−a), a = 1..8", 1e-10);
    for (label, f, want) in regularization_quartet() {
        quartet.record(hash_sum(&f).map(|r| (r.value - want).norm()), || label.to_string());
    }
    let primitive_families = [
        Family::Constant,
        Family::Polynomial,
        Family::InverseMonomial,
        Family::Exponential,
        Family::ExpTimesX,
    ];
    for _ in 0..count {
        let f = s.catalog(&primitive_families, 3);
        let g = s.catalog(&primitive_families, 3);
        let (lambda, mu) = (s.coeff(), s.coeff());
        linear.record(
            (|| {
                let lhs = hash_sum(&(f.scale(lambda) + g.scale(mu)))?.value;
                Ok(rel_residual(lhs, lambda * hash_sum(&f)?.value + mu * hash_sum(&g)?.value))
            })(),
            || format!("f = {f}, g = {g}, λ = {lambda}, μ = {mu}"),
        );
    }
    for a in 1..=8u32 {
        zeta.record(
            (|| Ok(rel_residual(hash_sum(&CatalogExpr::monomial(a))?.value, real(zeta_int(-(a as i64))?))))(),
            || format!("a = {a}"),
        );
    }
    [quartet, linear, zeta].into_iter().map(Tally::finish).collect()
}
