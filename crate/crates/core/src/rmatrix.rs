//! R-matrices with rational parameters and sampled checks of the rational
//! identities they satisfy.
//!
//! An identity between operator-valued rational functions becomes a
//! polynomial identity after clearing denominators. Each check evaluates
//! both sides exactly at `degree_bound + 1` rational points off the poles.
//! Points come from a seeded generator, so a run is reproducible from its seed.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::{format_rational, int, Rational};
use crate::fusion::{e_operator, f_operator_general, FusionConfig};
use crate::shapes::{Partition, SkewShape, StandardTableau};
use crate::symalg::Permutation;
use crate::tensorop::{p_op, perm_op, q_op, BilinearForm};
use crate::Operator;

/// Seed used when none is given.
pub const DEFAULT_SEED: u64 = 20_240_917;

/// `R_ij(x, y) = 1 - P_ij/(x - y)`.
pub fn r_op(i: usize, j: usize, x: &Rational, y: &Rational, n_dim: usize, slots: usize) -> Result<Operator> {
    let d = x - y;
    if d.is_zero() {
        return Err(Error::SampleAtPole(format!("R({x}, {y})")));
    }
    let p: Operator = p_op(i, j, n_dim, slots)?;
    Ok(&Operator::identity(n_dim, slots) - &p.scale(&(Rational::one() / d)))
}

/// `R̃_ij(x, y) = 1 + Q_ij/(x + y)`.
pub fn rtilde_op(i: usize, j: usize, x: &Rational, y: &Rational, form: &BilinearForm, slots: usize) -> Result<Operator> {
    let d = x + y;
    if d.is_zero() {
        return Err(Error::SampleAtPole(format!("R̃({x}, {y})")));
    }
    let q = q_op(i, j, form, slots)?;
    Ok(&Operator::identity(form.dim(), slots) + &q.scale(&(Rational::one() / d)))
}

/// `R̄_ij(x, y) = 1 - Q_ij/(x + y + L)`.
pub fn rbar_op(i: usize, j: usize, x: &Rational, y: &Rational, form: &BilinearForm, l: usize, slots: usize) -> Result<Operator> {
    let d = x + y + int(l as i64);
    if d.is_zero() {
        return Err(Error::SampleAtPole(format!("R̄({x}, {y})")));
    }
    let q = q_op(i, j, form, slots)?;
    Ok(&Operator::identity(form.dim(), slots) - &q.scale(&(Rational::one() / d)))
}

/// Where sample points come from.
#[derive(Clone, Debug, PartialEq)]
pub enum Sampling {
    /// `degree_bound + 1` pseudo-random points from this seed, avoiding poles.
    Seeded(u64),
    /// Exactly these points; a point on a pole is an error.
    Points(Vec<Vec<Rational>>),
}

impl Default for Sampling {
    fn default() -> Self {
        Sampling::Seeded(DEFAULT_SEED)
    }
}

/// Outcome of a sampled identity check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityCheck {
    pub name: String,
    pub paper_ref: String,
    pub degree_bound: usize,
    pub samples: Vec<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub verdict: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

/// Random rational with small numerator and denominator.
fn random_rational(rng: &mut ChaCha8Rng) -> Rational {
    Rational::new(rng.gen_range(-40i64..=40).into(), rng.gen_range(1i64..=7).into())
}

fn draw_points(seed: u64, arity: usize, count: usize, on_pole: &dyn Fn(&[Rational]) -> bool) -> Vec<Vec<Rational>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out: Vec<Vec<Rational>> = Vec::with_capacity(count);
    while out.len() < count {
        let p: Vec<Rational> = (0..arity).map(|_| random_rational(&mut rng)).collect();
        if !on_pole(&p) && !out.contains(&p) {
            out.push(p);
        }
    }
    out
}

struct Spec<'a> {
    name: &'a str,
    reference: &'a str,
    degree_bound: usize,
    arity: usize,
}

fn run(
    spec: Spec<'_>,
    sampling: &Sampling,
    on_pole: impl Fn(&[Rational]) -> bool,
    sides: impl Fn(&[Rational]) -> Result<(Operator, Operator)>,
) -> Result<IdentityCheck> {
    let (points, seed) = match sampling {
        Sampling::Seeded(seed) => (draw_points(*seed, spec.arity, spec.degree_bound + 1, &on_pole), Some(*seed)),
        Sampling::Points(pts) => {
            for p in pts {
                if p.len() != spec.arity {
                    return Err(Error::InvalidConfig(format!("{} needs {} parameters per sample", spec.name, spec.arity)));
                }
                if on_pole(p) {
                    return Err(Error::SampleAtPole(fmt_point(p)));
                }
            }
            (pts.clone(), None)
        }
    };
    let mut verdict = true;
    let mut witness = None;
    for p in &points {
        let (lhs, rhs) = sides(p)?;
        if lhs != rhs {
            verdict = false;
            witness.get_or_insert_with(|| format!("sides differ at {}", fmt_point(p)));
        }
    }
    Ok(IdentityCheck {
        name: spec.name.into(),
        paper_ref: spec.reference.into(),
        degree_bound: spec.degree_bound,
        samples: points.iter().map(|p| p.iter().map(format_rational).collect()).collect(),
        seed,
        verdict,
        witness,
    })
}

fn fmt_point(p: &[Rational]) -> String {
    let parts: Vec<String> = p.iter().map(format_rational).collect();
    format!("({})", parts.join(", "))
}

fn product(factors: impl IntoIterator<Item = Result<Operator>>, n_dim: usize, slots: usize) -> Result<Operator> {
    let mut acc = Operator::identity(n_dim, slots);
    for f in factors {
        acc = &acc * &f?;
    }
    Ok(acc)
}

/// The three-slot relations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum YangBaxter {
    /// `R_12 R_13 R_23 = R_23 R_13 R_12`.
    Yb35,
    /// `R̃_13 R̃_12 R_23 = R_23 R̃_12 R̃_13`.
    Tilde37,
    /// `R̄_12 R̄_13 R_23 = R_23 R̄_13 R̄_12`.
    Bar38,
    /// `R̃_12 R_13 R̄_23 = R̄_23 R_13 R̃_12`.
    Mixed385,
}

impl YangBaxter {
    pub const ALL: [YangBaxter; 4] = [YangBaxter::Yb35, YangBaxter::Tilde37, YangBaxter::Bar38, YangBaxter::Mixed385];

    pub fn name(self) -> &'static str {
        match self {
            YangBaxter::Yb35 => "YB35",
            YangBaxter::Tilde37 => "tilde37",
            YangBaxter::Bar38 => "bar38",
            YangBaxter::Mixed385 => "mixed385",
        }
    }
}

impl fmt::Display for YangBaxter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for YangBaxter {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        YangBaxter::ALL
            .into_iter()
            .find(|y| y.name().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| Error::Parse(format!("unknown relation {s:?}")))
    }
}

/// Pole test for parameters entering as differences and as sums (with and without `L`).
fn generic_pole(l: usize) -> impl Fn(&[Rational]) -> bool {
    move |p: &[Rational]| {
        let l = int(l as i64);
        p.iter().enumerate().any(|(i, a)| {
            p.iter().skip(i + 1).any(|b| {
                let s = a + b;
                a == b || s.is_zero() || (&s + &l).is_zero()
            })
        })
    }
}

/// One of the three-slot relations on `(ℂ^N)^⊗3` with `L = N`, at `(x, y, z)`.
pub fn check_yang_baxter_family(which: YangBaxter, form: &BilinearForm, sampling: &Sampling) -> Result<IdentityCheck> {
    let (n, l) = (form.dim(), form.dim());
    let name = format!("yang_baxter_{which}");
    let spec = Spec { name: &name, reference: "three-slot relation for the R-matrix family", degree_bound: 3, arity: 3 };
    run(spec, sampling, generic_pole(l), |p| {
        let (x, y, z) = (&p[0], &p[1], &p[2]);
        let r = |i, j, a: &Rational, b: &Rational| r_op(i, j, a, b, n, 3);
        let rt = |i, j, a: &Rational, b: &Rational| rtilde_op(i, j, a, b, form, 3);
        let rb = |i, j, a: &Rational, b: &Rational| rbar_op(i, j, a, b, form, l, 3);
        let (lhs, rhs) = match which {
            YangBaxter::Yb35 => (
                [r(1, 2, x, y), r(1, 3, x, z), r(2, 3, y, z)],
                [r(2, 3, y, z), r(1, 3, x, z), r(1, 2, x, y)],
            ),
            YangBaxter::Tilde37 => (
                [rt(1, 3, x, z), rt(1, 2, x, y), r(2, 3, y, z)],
                [r(2, 3, y, z), rt(1, 2, x, y), rt(1, 3, x, z)],
            ),
            YangBaxter::Bar38 => (
                [rb(1, 2, x, y), rb(1, 3, x, z), r(2, 3, y, z)],
                [r(2, 3, y, z), rb(1, 3, x, z), rb(1, 2, x, y)],
            ),
            YangBaxter::Mixed385 => (
                [rt(1, 2, x, y), r(1, 3, x, z), rb(2, 3, y, z)],
                [rb(2, 3, y, z), r(1, 3, x, z), rt(1, 2, x, y)],
            ),
        };
        Ok((product(lhs, n, 3)?, product(rhs, n, 3)?))
    })
}

/// Two-slot relations: `R_12(x,y) R_21(y,x) = 1 - 1/(x-y)²`, `R̃_12 R̄_12 = 1`,
/// and the symmetry `R̃_12(x,y) = R̃_21(y,x)`, `R̄_12(x,y) = R̄_21(y,x)`.
pub fn check_unitarity(form: &BilinearForm, sampling: &Sampling) -> Result<Vec<IdentityCheck>> {
    let (n, l) = (form.dim(), form.dim());
    let one = Operator::identity(n, 2);
    let unitarity = run(
        Spec { name: "unitarity_r", reference: "R(x,y)R(y,x) is scalar", degree_bound: 2, arity: 2 },
        sampling,
        generic_pole(l),
        |p| {
            let (x, y) = (&p[0], &p[1]);
            let lhs = &r_op(1, 2, x, y, n, 2)? * &r_op(2, 1, y, x, n, 2)?;
            let d = x - y;
            Ok((lhs, one.scale(&(Rational::one() - Rational::one() / (&d * &d)))))
        },
    )?;
    let inverse = run(
        Spec { name: "unitarity_tilde_bar", reference: "R̃ and R̄ are mutually inverse", degree_bound: 2, arity: 2 },
        sampling,
        generic_pole(l),
        |p| {
            let (x, y) = (&p[0], &p[1]);
            Ok((&rtilde_op(1, 2, x, y, form, 2)? * &rbar_op(1, 2, x, y, form, l, 2)?, one.clone()))
        },
    )?;
    let symmetry = run(
        Spec { name: "symmetry_tilde_bar", reference: "R̃ and R̄ symmetric under slot and parameter swap", degree_bound: 1, arity: 2 },
        sampling,
        generic_pole(l),
        |p| {
            let (x, y) = (&p[0], &p[1]);
            let lhs = &rtilde_op(1, 2, x, y, form, 2)? + &rbar_op(1, 2, x, y, form, l, 2)?;
            let rhs = &rtilde_op(2, 1, y, x, form, 2)? + &rbar_op(2, 1, y, x, form, l, 2)?;
            Ok((lhs, rhs))
        },
    )?;
    Ok(vec![unitarity, inverse, symmetry])
}

fn differs_from_all(x: &Rational, params: &[Rational]) -> bool {
    params.iter().all(|z| z != x)
}

/// `R_12(x,y) T_1(x) T_2(y) = T_2(y) T_1(x) R_12(x,y)` with
/// `T_a(x) = R_{a,3}(x,z_1)…R_{a,n+2}(x,z_n)` on `(ℂ^N)^⊗(n+2)`.
pub fn check_rtt(z: &[Rational], n_dim: usize, sampling: &Sampling) -> Result<IdentityCheck> {
    let n = z.len();
    let slots = n + 2;
    let t = |a: usize, x: &Rational| product((0..n).map(|k| r_op(a, k + 3, x, &z[k], n_dim, slots)), n_dim, slots);
    let spec = Spec { name: "rtt", reference: "RTT relation on a tensor product of evaluation modules", degree_bound: 2 * n + 1, arity: 2 };
    run(
        spec,
        sampling,
        |p| p[0] == p[1] || !differs_from_all(&p[0], z) || !differs_from_all(&p[1], z),
        |p| {
            let (x, y) = (&p[0], &p[1]);
            let r = r_op(1, 2, x, y, n_dim, slots)?;
            let (t1, t2) = (t(1, x)?, t(2, y)?);
            Ok((&(&r * &t1) * &t2, &(&t2 * &t1) * &r))
        },
    )
}

/// `R_12(x,z_1)…R_{1,n+1}(x,z_n)·(1⊗E_Ω P_0) = (1⊗E_Ω P_0)·R_12(x,z_n)…R_{1,n+1}(x,z_1)`
/// with `z_k = c_k + z` and `P_0` reversing the order of the tensor factors.
pub fn check_intertwiner_e(tableau: &StandardTableau, n_dim: usize, z: &Rational, sampling: &Sampling) -> Result<IdentityCheck> {
    let n = tableau.n();
    let slots = n + 1;
    let zs: Vec<Rational> = tableau.contents().into_iter().map(|c| int(c) + z).collect();
    let e = e_operator(tableau, n_dim)?;
    let p0: Operator = perm_op(&Permutation::reversal(n), n_dim);
    let ep0 = (&e * &p0).lift(slots, &(2..=slots).collect::<Vec<_>>())?;
    let spec = Spec { name: "intertwiner_e", reference: "E P_0 intertwines the evaluation module products", degree_bound: n, arity: 1 };
    run(
        spec,
        sampling,
        |p| !differs_from_all(&p[0], &zs),
        |p| {
            let x = &p[0];
            let lhs = product((0..n).map(|k| r_op(1, k + 2, x, &zs[k], n_dim, slots)), n_dim, slots)?;
            let rhs = product((0..n).map(|k| r_op(1, k + 2, x, &zs[n - 1 - k], n_dim, slots)), n_dim, slots)?;
            Ok((&lhs * &ep0, &ep0 * &rhs))
        },
    )
}

/// `R̃_{1,n+1}(x,d_n)…R̃_12(x,d_1) R_12(x,d_1)…R_{1,n+1}(x,d_n)`.
fn twisted_product(x: &Rational, d: &[Rational], form: &BilinearForm, slots: usize, first: usize) -> Result<Operator> {
    let n = d.len();
    let n_dim = form.dim();
    let tilde = (0..n).rev().map(|k| rtilde_op(first, slots - n + k + 1, x, &d[k], form, slots));
    let plain = (0..n).map(|k| r_op(first, slots - n + k + 1, x, &d[k], n_dim, slots));
    product(tilde.chain(plain), n_dim, slots)
}

/// The same factors in the opposite order: `R_{1,n+1}…R_12 R̃_12…R̃_{1,n+1}`.
fn twisted_product_reversed(x: &Rational, d: &[Rational], form: &BilinearForm, slots: usize, first: usize) -> Result<Operator> {
    let n = d.len();
    let n_dim = form.dim();
    let plain = (0..n).rev().map(|k| r_op(first, slots - n + k + 1, x, &d[k], n_dim, slots));
    let tilde = (0..n).map(|k| rtilde_op(first, slots - n + k + 1, x, &d[k], form, slots));
    product(plain.chain(tilde), n_dim, slots)
}

fn avoids_plus_minus(x: &Rational, d: &[Rational]) -> bool {
    d.iter().all(|v| v != x && !(v + x).is_zero())
}

/// `R̃…R̃ R…R · F = F · R…R R̃…R̃` with parameters `d_k = c_k + M/2 ∓ ½`
/// and `F = F_Ω(M)` in slots `2..n+1`.
pub fn check_intertwiner_f(cfg: &FusionConfig, sampling: &Sampling) -> Result<IdentityCheck> {
    let n = cfg.slots();
    let slots = n + 1;
    let d = cfg.d_params();
    let f = f_operator_general(cfg)?.lift(slots, &(2..=slots).collect::<Vec<_>>())?;
    let form = cfg.form();
    let spec = Spec { name: "intertwiner_f", reference: "F intertwines the twisted module products", degree_bound: 2 * n, arity: 1 };
    run(
        spec,
        sampling,
        |p| !avoids_plus_minus(&p[0], &d),
        |p| {
            let x = &p[0];
            let lhs = &twisted_product(x, &d, form, slots, 1)? * &f;
            let rhs = &f * &twisted_product_reversed(x, &d, form, slots, 1)?;
            Ok((lhs, rhs))
        },
    )
}

/// The reflection equation
/// `R_12(x,y) S_1(x) R̃_12(x,y) S_2(y) = S_2(y) R̃_12(x,y) S_1(x) R_12(x,y)`
/// for `S_a(x) = R̃_{a,n+2}(x,z_n)…R̃_{a,3}(x,z_1) R_{a,3}(x,z_1)…R_{a,n+2}(x,z_n)`.
/// For `n = 1` also compares `R̃_12(x,z)R_12(x,z)` with `R_12(x,z)R̃_12(x,z)`.
pub fn check_reflection_image(z: &[Rational], form: &BilinearForm, sampling: &Sampling) -> Result<Vec<IdentityCheck>> {
    let n = z.len();
    if n > 2 {
        return Err(Error::SizeLimitExceeded { size: n, limit: 2 });
    }
    let n_dim = form.dim();
    let slots = n + 2;
    let spec = Spec { name: "reflection", reference: "reflection equation for the twisted product image", degree_bound: 4 * n + 2, arity: 2 };
    let on_pole = |p: &[Rational]| {
        let (x, y) = (&p[0], &p[1]);
        x == y || (x + y).is_zero() || !avoids_plus_minus(x, z) || !avoids_plus_minus(y, z)
    };
    let mut out = vec![run(spec, sampling, on_pole, |p| {
        let (x, y) = (&p[0], &p[1]);
        let s1 = twisted_product(x, z, form, slots, 1)?;
        let s2 = twisted_product(y, z, form, slots, 2)?;
        let r = r_op(1, 2, x, y, n_dim, slots)?;
        let rt = rtilde_op(1, 2, x, y, form, slots)?;
        let lhs = &(&(&r * &s1) * &rt) * &s2;
        let rhs = &(&(&s2 * &rt) * &s1) * &r;
        Ok((lhs, rhs))
    })?];
    if n == 1 {
        let spec = Spec { name: "reflection_images_agree", reference: "two twisted realizations agree for one factor", degree_bound: 2, arity: 1 };
        out.push(run(
            spec,
            &single_parameter(sampling),
            |p| !avoids_plus_minus(&p[0], z),
            |p| {
                let x = &p[0];
                Ok((twisted_product(x, z, form, 2, 1)?, twisted_product_reversed(x, z, form, 2, 1)?))
            },
        )?);
    }
    Ok(out)
}

/// First coordinate of each point, for a follow-up check in fewer variables.
fn single_parameter(sampling: &Sampling) -> Sampling {
    match sampling {
        Sampling::Seeded(s) => Sampling::Seeded(*s),
        Sampling::Points(pts) => Sampling::Points(pts.iter().map(|p| vec![p[0].clone()]).collect()),
    }
}

/// `g_μ(x) = Π_k (x - μ_k + k)(x + k - 1) / ((x - μ_k + k - 1)(x + k))`.
pub fn g_mu(mu: &Partition, x: &Rational) -> Result<Rational> {
    let mut acc = Rational::one();
    for k in 1..=mu.len() {
        let (mk, k) = (int(mu.part(k) as i64), int(k as i64));
        let den = (x - &mk + &k - int(1)) * (x + &k);
        if den.is_zero() {
            return Err(Error::SampleAtPole(format!("g_{mu}({x})")));
        }
        acc *= (x - &mk + &k) * (x + &k - int(1)) / den;
    }
    Ok(acc)
}

/// `h(x) = Π_k ((x - c_k)² - 1)/(x - c_k)²` over the contents of a tableau.
pub fn h_of(tableau: &StandardTableau, x: &Rational) -> Result<Rational> {
    let mut acc = Rational::one();
    for c in tableau.contents() {
        let d = x - int(c);
        if d.is_zero() {
            return Err(Error::SampleAtPole(format!("h({x})")));
        }
        let d2 = &d * &d;
        acc *= (&d2 - int(1)) / d2;
    }
    Ok(acc)
}

/// `g_μ(x)·h(x) = 1`, with `h` taken from both the row and the column tableau of `μ`.
pub fn check_lemma44(mu: &Partition, sampling: &Sampling) -> Result<IdentityCheck> {
    let shape = SkewShape::straight(mu.clone());
    let (tr, tc) = (StandardTableau::row_tableau(&shape), StandardTableau::column_tableau(&shape));
    // zeros of the denominators of g and h
    let mut poles: Vec<Rational> = Vec::new();
    for k in 1..=mu.len() {
        poles.push(int(mu.part(k) as i64 - k as i64 + 1));
        poles.push(int(-(k as i64)));
    }
    poles.extend(tr.contents().into_iter().map(int));
    let degree_bound = (2 * mu.size()).max(4);
    let name = format!("lemma44_{}", mu.parts().iter().map(|p| p.to_string()).collect::<Vec<_>>().join("_"));
    let spec = Spec { name: &name, reference: "g_mu(x) h(x) = 1", degree_bound, arity: 1 };
    run(
        spec,
        sampling,
        |p| poles.contains(&p[0]),
        |p| {
            let x = &p[0];
            let (g, hr, hc) = (g_mu(mu, x)?, h_of(&tr, x)?, h_of(&tc, x)?);
            let one = Operator::identity(1, 0);
            // equal scalars become equal 1x1 operators
            let ok = (&g * &hr).is_one() && hr == hc;
            Ok((one.clone(), if ok { one } else { Operator::zero(1, 0) }))
        },
    )
}

/// `R_12(x,c_1)…R_{1,l+1}(x,c_l)·(1⊗E_Λ) = (1 - Σ_k P_{1,k+1}/x)·(1⊗E_Λ)`.
pub fn check_prop25_lifted(tableau: &StandardTableau, n_dim: usize, sampling: &Sampling) -> Result<IdentityCheck> {
    let l = tableau.n();
    let slots = l + 1;
    let c: Vec<Rational> = tableau.contents().into_iter().map(int).collect();
    let e = e_operator(tableau, n_dim)?.lift(slots, &(2..=slots).collect::<Vec<_>>())?;
    let spec = Spec { name: "jucys_murphy_e", reference: "fused R-matrix product on E is linear in 1/x", degree_bound: l, arity: 1 };
    run(
        spec,
        sampling,
        |p| p[0].is_zero() || !differs_from_all(&p[0], &c),
        |p| {
            let x = &p[0];
            let lhs = product((0..l).map(|k| r_op(1, k + 2, x, &c[k], n_dim, slots)), n_dim, slots)?;
            let mut sum = Operator::identity(n_dim, slots);
            for k in 2..=slots {
                let p_op_k: Operator = p_op(1, k, n_dim, slots)?;
                sum = &sum - &p_op_k.scale(&(Rational::one() / x));
            }
            Ok((&lhs * &e, &sum * &e))
        },
    )
}

/// For `M = 0` and a non-skew tableau:
/// `R̃…R̃ R…R·(1⊗F_Λ) = (1 - (x ± ½)^{-1} Σ_k (P_{1,k+1} - Q_{1,k+1}))·(1⊗F_Λ)`.
pub fn check_lemma54(cfg: &FusionConfig, sampling: &Sampling) -> Result<IdentityCheck> {
    if cfg.m() != 0 || cfg.tableau().shape().is_skew() {
        return Err(Error::NotApplicable("needs M = 0 and a non-skew shape".into()));
    }
    let l = cfg.slots();
    let slots = l + 1;
    let n_dim = cfg.n_dim();
    let d = cfg.d_params();
    let form = cfg.form();
    let f = f_operator_general(cfg)?.lift(slots, &(2..=slots).collect::<Vec<_>>())?;
    let shift = -cfg.base_point();
    let spec = Spec { name: "twisted_jucys_murphy_f", reference: "twisted fused product on F is linear in 1/(x ± 1/2)", degree_bound: 2 * l, arity: 1 };
    run(
        spec,
        sampling,
        |p| !avoids_plus_minus(&p[0], &d) || (&p[0] + &shift).is_zero(),
        |p| {
            let x = &p[0];
            let lhs = &twisted_product(x, &d, form, slots, 1)? * &f;
            let inv = Rational::one() / (x + &shift);
            let mut sum = Operator::identity(n_dim, slots);
            for k in 2..=slots {
                let pk: Operator = p_op(1, k, n_dim, slots)?;
                let term = &pk - &q_op(1, k, form, slots)?;
                sum = &sum - &term.scale(&inv);
            }
            Ok((lhs, &sum * &f))
        },
    )
}
