//! The operators `E_Ω` and `F_Ω(M)` on `(ℂ^N)^⊗n`, their closed forms, and
//! checks of the properties they are known to have.
//!
//! `F_Ω(M)` is the value at `t_1 = ... = t_n = ∓½` (upper sign for symmetric
//! forms) of the ordered product of `1 - Q_kl/(c_k + c_l + t_k + t_l + N + M)`
//! over pairs `k < l`, followed on the right by the product of
//! `1 - P_kl/(c_k - c_l + t_k - t_l)`, with the `t` tied along columns
//! (symmetric) or rows (alternating). The value is taken along the line
//! `t_k = ∓½ + g_k·ε`, `g_k` the column or row of `k`.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::exactnum::series::{singular_count, EpsilonProduct};
use crate::exactnum::{format_rational, int, rat, Polynomial, Rational, RationalFunction};
use crate::shapes::{validate_label, Group, StandardTableau};
use crate::symalg::{self, constraint_group, ConstraintMode};
use crate::tensorop::linalg::{self, SubspaceBasis};
use crate::tensorop::{act, p_op, q_op, traceless_basis, BilinearForm, FormKind, SparseOperator};
use crate::Operator;

/// Everything that determines `F_Ω(M)`.
#[derive(Clone, Debug, PartialEq)]
pub struct FusionConfig {
    tableau: StandardTableau,
    m: usize,
    form: BilinearForm,
}

fn group_of(kind: FormKind) -> Group {
    match kind {
        FormKind::Symmetric => Group::O,
        FormKind::Alternating => Group::Sp,
    }
}

impl FusionConfig {
    /// Standard form of the given kind on `ℂ^N`. Requires `λ` to label a
    /// representation of `G_{N+M}` and `μ` one of `G_M`.
    pub fn new(tableau: StandardTableau, kind: FormKind, n_dim: usize, m: usize) -> Result<Self> {
        Self::with_form(tableau, BilinearForm::standard(kind, n_dim)?, m)
    }

    pub fn with_form(tableau: StandardTableau, form: BilinearForm, m: usize) -> Result<Self> {
        let cfg = Self::unrestricted(tableau, form, m)?;
        let group = group_of(cfg.kind());
        let shape = cfg.tableau.shape();
        if !validate_label(shape.lambda(), group, cfg.n_dim() + m)? {
            return Err(Error::InvalidConfig(format!("{} does not label a representation of {group:?}_{}", shape.lambda(), cfg.n_dim() + m)));
        }
        let mu = shape.mu();
        if !mu.is_empty() && (m == 0 || !validate_label(mu, group, m)?) {
            return Err(Error::InvalidConfig(format!("{mu} does not label a representation of {group:?}_{m}")));
        }
        Ok(cfg)
    }

    /// Only the parity conditions; the label conditions are not imposed.
    pub fn unrestricted(tableau: StandardTableau, form: BilinearForm, m: usize) -> Result<Self> {
        if form.kind() == FormKind::Alternating && m % 2 == 1 {
            return Err(Error::Parity(m));
        }
        Ok(FusionConfig { tableau, m, form })
    }

    pub fn tableau(&self) -> &StandardTableau {
        &self.tableau
    }

    pub fn n_dim(&self) -> usize {
        self.form.dim()
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn form(&self) -> &BilinearForm {
        &self.form
    }

    pub fn kind(&self) -> FormKind {
        self.form.kind()
    }

    /// Number of tensor factors.
    pub fn slots(&self) -> usize {
        self.tableau.n()
    }

    /// Column constraints for symmetric forms, row constraints for alternating.
    pub fn constraint_mode(&self) -> ConstraintMode {
        match self.kind() {
            FormKind::Symmetric => ConstraintMode::Column,
            FormKind::Alternating => ConstraintMode::Row,
        }
    }

    /// `-½` for symmetric forms, `+½` for alternating.
    pub fn base_point(&self) -> Rational {
        rat(-self.kind().sign(), 2)
    }

    /// `d_k = c_k + M/2 ∓ ½`.
    pub fn d_params(&self) -> Vec<Rational> {
        self.tableau
            .contents()
            .into_iter()
            .map(|c| int(c) + rat(self.m as i64, 2) + self.base_point())
            .collect()
    }

    fn check_size(&self) -> Result<()> {
        check_dim(self.n_dim(), self.slots())
    }
}

/// Cap on `N^n`, from `FUSION_MAX_DIM` (default 4096).
pub fn max_dim() -> usize {
    std::env::var("FUSION_MAX_DIM").ok().and_then(|v| v.parse().ok()).unwrap_or(4096)
}

pub(crate) fn check_dim(n_dim: usize, slots: usize) -> Result<()> {
    let limit = max_dim();
    let size = n_dim.checked_pow(slots as u32).unwrap_or(usize::MAX);
    if size > limit {
        return Err(Error::SizeLimitExceeded { size, limit });
    }
    Ok(())
}

impl fmt::Display for FusionConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} N={} M={} tableau [{}]", self.kind(), self.n_dim(), self.m, self.tableau)
    }
}

/// `E_Ω`, the operator of the fusion value `e_Ω` on `(ℂ^N)^⊗n`.
pub fn e_operator(tableau: &StandardTableau, n_dim: usize) -> Result<Operator> {
    check_dim(n_dim, tableau.n())?;
    Ok(act(&symalg::fusion_e(tableau, ConstraintMode::Row)?, n_dim))
}

/// `(a, b)` of the `Q_kl` denominator `a + b·ε` on the line.
fn q_denominator(cfg: &FusionConfig, k: usize, l: usize) -> (Rational, Rational) {
    let t = &cfg.tableau;
    let mode = cfg.constraint_mode();
    let a = int(t.content(k) + t.content(l) + (cfg.n_dim() + cfg.m) as i64) + cfg.base_point() * int(2);
    let b = int(constraint_group(t, k, mode) + constraint_group(t, l, mode));
    (a, b)
}

/// `F_Ω(M)` from the full product, evaluated as a limit along the line.
pub fn f_operator_general(cfg: &FusionConfig) -> Result<Operator> {
    cfg.check_size()?;
    let (n_dim, n) = (cfg.n_dim(), cfg.slots());
    let pairs = symalg::ordered_pairs(n);
    let q_factors: Vec<_> = pairs
        .iter()
        .map(|&(k, l)| {
            let (a, b) = q_denominator(cfg, k, l);
            Ok((q_op(k, l, cfg.form(), n)?, a, b))
        })
        .collect::<Result<_>>()?;
    let k_q = singular_count(q_factors.iter().map(|(_, a, b)| (a, b)))?;
    let p_series = symalg::fusion_series(cfg.tableau(), cfg.constraint_mode(), None)?;
    let k_p = p_series.order();
    let cap = k_q + k_p;
    let mut q_series = EpsilonProduct::new(Operator::identity(n_dim, n), cap);
    for (q, a, b) in &q_factors {
        q_series.mul_factor(q, a, b)?;
    }
    let p_series = symalg::fusion_series(cfg.tableau(), cfg.constraint_mode(), Some(cap))?;
    q_series.mul_product(&p_series.map(|e| act(e, n_dim))).limit()
}

/// Independent route for [`f_operator_general`]: multiply all factors with
/// rational-function entries, then evaluate each entry at `ε = 0`.
pub fn f_operator_general_rf(cfg: &FusionConfig) -> Result<Operator> {
    cfg.check_size()?;
    let (n_dim, n) = (cfg.n_dim(), cfg.slots());
    let mode = cfg.constraint_mode();
    let one = SparseOperator::<RationalFunction>::identity(n_dim, n);
    let factor = |x: &Operator, a: Rational, b: Rational| -> Result<SparseOperator<RationalFunction>> {
        let inv = RationalFunction::from_poly(Polynomial::linear(a, b)).inverse()?;
        Ok(&one - &x.map(|v| RationalFunction::constant(v.clone()) * inv.clone()))
    };
    let mut acc = one.clone();
    for (k, l) in symalg::ordered_pairs(n) {
        let (a, b) = q_denominator(cfg, k, l);
        acc = &acc * &factor(&q_op(k, l, cfg.form(), n)?, a, b)?;
    }
    for (k, l) in symalg::ordered_pairs(n) {
        let (a, b) = symalg::pair_denominator(cfg.tableau(), k, l, mode);
        acc = &acc * &factor(&p_op(k, l, n_dim, n)?, a, b)?;
    }
    let entries = acc
        .triplets()
        .into_iter()
        .map(|(r, c, v)| Ok((r, c, v.eval_at_zero()?)))
        .collect::<Result<Vec<_>>>()?;
    Ok(Operator::from_triplets(n_dim, n, entries))
}

/// Shortcut formulas: a product of `Q`-factors with constant denominators, times `E_Ω`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ClosedFormula {
    /// Symmetric form, column tableau, pairs in different columns.
    ColO,
    /// Alternating form, row tableau, pairs in different rows.
    RowSp,
    /// Alternating form, `M = 0`, any non-skew tableau.
    AnySp,
    /// Symmetric form, `M = 0`, any non-skew tableau, `2λ'_1 ≤ N`.
    AnySo,
    /// Either form, `2λ'_1 ≤ N + M`: every factor is regular.
    RegularCase,
}

impl ClosedFormula {
    pub const ALL: [ClosedFormula; 5] = [
        ClosedFormula::ColO,
        ClosedFormula::RowSp,
        ClosedFormula::AnySp,
        ClosedFormula::AnySo,
        ClosedFormula::RegularCase,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ClosedFormula::ColO => "col_O",
            ClosedFormula::RowSp => "row_Sp",
            ClosedFormula::AnySp => "any_Sp",
            ClosedFormula::AnySo => "any_SO",
            ClosedFormula::RegularCase => "regular_case",
        }
    }

    /// Whether the formula applies to `cfg`, with the reason when it does not.
    pub fn applicability(self, cfg: &FusionConfig) -> std::result::Result<(), String> {
        let t = cfg.tableau();
        let kind = cfg.kind();
        let skew = t.shape().is_skew();
        let first_col = t.shape().lambda().first_column();
        let need = |ok: bool, why: &str| if ok { Ok(()) } else { Err(why.to_string()) };
        match self {
            ClosedFormula::ColO => {
                need(kind == FormKind::Symmetric, "needs a symmetric form")?;
                need(t.is_column_tableau(), "needs the column tableau")
            }
            ClosedFormula::RowSp => {
                need(kind == FormKind::Alternating, "needs an alternating form")?;
                need(t.is_row_tableau(), "needs the row tableau")
            }
            ClosedFormula::AnySp => {
                need(kind == FormKind::Alternating, "needs an alternating form")?;
                need(cfg.m() == 0 && !skew, "needs M = 0 and a non-skew shape")
            }
            ClosedFormula::AnySo => {
                need(kind == FormKind::Symmetric, "needs a symmetric form")?;
                need(cfg.m() == 0 && !skew, "needs M = 0 and a non-skew shape")?;
                need(2 * first_col <= cfg.n_dim(), "needs 2λ'_1 ≤ N")
            }
            ClosedFormula::RegularCase => need(2 * first_col <= cfg.n_dim() + cfg.m(), "needs 2λ'_1 ≤ N + M"),
        }
    }

    fn includes_pair(self, t: &StandardTableau, k: usize, l: usize) -> bool {
        match self {
            ClosedFormula::ColO => t.col_of(k) != t.col_of(l),
            ClosedFormula::RowSp => t.row_of(k) != t.row_of(l),
            _ => true,
        }
    }
}

impl fmt::Display for ClosedFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ClosedFormula {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        ClosedFormula::ALL
            .into_iter()
            .find(|f| f.name().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| Error::Parse(format!("unknown formula {s:?}")))
    }
}

/// `F_Ω(M)` from a shortcut formula. Every factor has denominator
/// `c_k + c_l + N + M ∓ 1`.
pub fn f_operator_closed(cfg: &FusionConfig, formula: ClosedFormula) -> Result<Operator> {
    formula.applicability(cfg).map_err(|why| Error::NotApplicable(format!("{formula}: {why}")))?;
    cfg.check_size()?;
    let (t, n_dim, n) = (cfg.tableau(), cfg.n_dim(), cfg.slots());
    let shift = (n_dim + cfg.m()) as i64 - cfg.kind().sign();
    let mut acc = Operator::identity(n_dim, n);
    for (k, l) in symalg::ordered_pairs(n) {
        if !formula.includes_pair(t, k, l) {
            continue;
        }
        let den = t.content(k) + t.content(l) + shift;
        if den == 0 {
            return Err(Error::PoleAtLimit(format!("{formula}: zero denominator at pair ({k},{l})")));
        }
        let q = q_op(k, l, cfg.form(), n)?;
        acc = &acc - &(&acc * &q).scale(&rat(1, den));
    }
    Ok(&acc * &e_operator(t, n_dim)?)
}

/// `A·A = scalar·A`.
pub fn verify_scaled_idempotent(a: &Operator, scalar: &Rational) -> bool {
    (a * a) == a.scale(scalar)
}

/// `F·E = scalar·F` and `E·F = scalar·F`.
pub fn verify_divisibility(f: &Operator, e: &Operator, scalar: &Rational) -> bool {
    let sf = f.scale(scalar);
    (f * e) == sf && (e * f) == sf
}

/// `σ` with `E² = σ·E`, if there is one.
pub fn measure_sigma(e: &Operator) -> Option<Rational> {
    let (r, c, v) = e.triplets().into_iter().next()?;
    let e2 = e * e;
    let sigma = e2.get(r, c) / v;
    (e2 == e.scale(&sigma)).then_some(sigma)
}

/// Divisibility as subspace relations: `F = E·X` iff `im F ⊆ im E`, and
/// `F = Y·E` iff `ker E ⊆ ker F`.
pub fn verify_divisibility_subspaces(f: &Operator, e: &Operator) -> Result<(bool, bool)> {
    let left = linalg::image_basis(e).contains_subspace(&linalg::image_basis(f))?;
    let right = linalg::kernel_basis(f).contains_subspace(&linalg::kernel_basis(e))?;
    Ok((left, right))
}

/// Outcome of comparing the image of `F_Λ` with the traceless part of the image of `E_Λ`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TracelessReport {
    pub rank_f: usize,
    pub rank_e: usize,
    pub intersection_dim: usize,
    pub images_equal: bool,
    pub contractions_vanish: bool,
    pub agrees_on_traceless: bool,
}

impl TracelessReport {
    pub fn pass(&self) -> bool {
        self.images_equal && self.contractions_vanish && self.agrees_on_traceless
    }
}

/// For `M = 0` and a non-skew tableau: `im F_Λ = im E_Λ ∩ traceless`,
/// `Q_kl F_Λ = 0` for all `k < l`, and `F_Λ v = E_Λ v` on traceless `v`.
pub fn verify_prop33(cfg: &FusionConfig) -> Result<TracelessReport> {
    if cfg.m() != 0 || cfg.tableau().shape().is_skew() {
        return Err(Error::NotApplicable("needs M = 0 and a non-skew shape".into()));
    }
    let n = cfg.slots();
    let f = f_operator_general(cfg)?;
    let e = e_operator(cfg.tableau(), cfg.n_dim())?;
    let traceless = traceless_basis(cfg.form(), n)?;
    let (im_f, im_e) = (linalg::image_basis(&f), linalg::image_basis(&e));
    let meet = linalg::intersect(&im_e, &traceless)?;
    let mut contractions_vanish = true;
    for (k, l) in symalg::ordered_pairs(n) {
        contractions_vanish &= (&q_op(k, l, cfg.form(), n)? * &f).is_zero();
    }
    let agrees_on_traceless = traceless.vectors().iter().all(|v| f.apply(v) == e.apply(v));
    Ok(TracelessReport {
        rank_f: im_f.dim(),
        rank_e: im_e.dim(),
        intersection_dim: meet.dim(),
        images_equal: linalg::subspace_equal(&im_f, &meet)?,
        contractions_vanish,
        agrees_on_traceless,
    })
}

/// `P_{k,k+1} R_{k+1,k}(c_{k+1}, c_k) F_Λ = F_{s_kΛ} R_{k,k+1}(c_k, c_{k+1}) P_{k,k+1}`
/// for `M = 0`, with `R_ij(x, y) = 1 - P_ij/(x - y)`.
pub fn verify_corollary32(cfg: &FusionConfig, k: usize) -> Result<bool> {
    let t = cfg.tableau();
    if cfg.m() != 0 || t.shape().is_skew() {
        return Err(Error::NotApplicable("needs M = 0 and a non-skew shape".into()));
    }
    let swapped = t.swap(k).ok_or(Error::NonStandardNeighbor(k))?;
    let (n_dim, n) = (cfg.n_dim(), cfg.slots());
    let other = FusionConfig::unrestricted(swapped, cfg.form().clone(), 0)?;
    let p: Operator = p_op(k, k + 1, n_dim, n)?;
    let one = Operator::identity(n_dim, n);
    let diff = int(t.content(k + 1) - t.content(k));
    // R_{k+1,k}(c_{k+1}, c_k) and R_{k,k+1}(c_k, c_{k+1}); P_{k+1,k} = P_{k,k+1}
    let r_left = &one - &p.scale(&(Rational::one() / &diff));
    let r_right = &one + &p.scale(&(Rational::one() / &diff));
    let lhs = &(&p * &r_left) * &f_operator_general(cfg)?;
    let rhs = &(&f_operator_general(&other)? * &r_right) * &p;
    Ok(lhs == rhs)
}

/// Outcome of the restriction check for `F_Λ` on `ℂ^{N+M}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ThetaReport {
    pub traceless_dim: usize,
    pub columns_checked: usize,
    pub pass: bool,
}

/// Sandwich `F_Λ` on `(ℂ^{N+M})^⊗l` between the projectors onto
/// `(ℂ^M)^⊗m_0 ⊗ (ℂ^N)^⊗n` and compare with `(E_Υ restricted) ⊗ F_Ω(M)`,
/// where `Υ` holds `1..m` and `Ω` the rest of `Λ`. The form on `ℂ^{N+M}` is
/// the orthogonal sum with the `ℂ^N` coordinates first.
pub fn verify_theta_factorization(lambda_t: &StandardTableau, m: usize, n_dim: usize, m_dim: usize, kind: FormKind) -> Result<ThetaReport> {
    const SIZE_LIMIT: usize = 1000;
    if lambda_t.shape().is_skew() {
        return Err(Error::SkewShape(lambda_t.shape().to_string()));
    }
    let l = lambda_t.n();
    let big = n_dim + m_dim;
    let size = big.checked_pow(l as u32).unwrap_or(usize::MAX);
    if size > SIZE_LIMIT {
        return Err(Error::SizeLimitExceeded { size, limit: SIZE_LIMIT });
    }
    if kind == FormKind::Alternating && (n_dim % 2 == 1 || m_dim % 2 == 1) {
        return Err(Error::NotApplicable(format!("alternating forms need even N and M, got {n_dim} and {m_dim}")));
    }
    if m >= l {
        return Err(Error::Index(format!("m = {m} must be below l = {l}")));
    }
    let (upsilon, omega) = lambda_t.split(m)?;
    let mu = upsilon.shape().lambda();
    if m > 0 && (m_dim == 0 || !validate_label(mu, group_of(kind), m_dim)?) {
        return Err(Error::NotApplicable(format!("{mu} does not label a representation of {:?}_{m_dim}", group_of(kind))));
    }
    let form_n = BilinearForm::standard(kind, n_dim)?;
    let n = l - m;

    // F_Λ on the big space
    let sum_form = if m_dim == 0 { form_n.clone() } else { form_n.direct_sum(&BilinearForm::standard(kind, m_dim)?)? };
    let f_big = f_operator_general(&FusionConfig::unrestricted(lambda_t.clone(), sum_form, 0)?)?;

    // factors of the right-hand side
    let f_omega = f_operator_general(&FusionConfig::unrestricted(omega, form_n, m_dim)?)?;
    let (h, traceless, e_up) = if m == 0 {
        (None, vec![vec![(0, Rational::one())]], Operator::identity(1, 0))
    } else {
        let form_m = BilinearForm::standard(kind, m_dim)?;
        let h = TracelessProjector::new(&form_m, m)?;
        let basis = h.traceless.vectors().to_vec();
        (Some(h), basis, act(&symalg::e_tableau(&upsilon)?, m_dim))
    };

    let small_n = n_dim.pow(n as u32);
    let small_m = m_dim.pow(m as u32);
    // position in the big space of (a in (ℂ^M)^⊗m, b in (ℂ^N)^⊗n)
    let embed = |a: usize, b: usize| -> usize {
        let mut idx: Vec<usize> = crate::tensorop::decode(a, m_dim.max(1), m).into_iter().map(|i| i + n_dim).collect();
        idx.extend(crate::tensorop::decode(b, n_dim, n));
        crate::tensorop::encode(&idx, big)
    };
    let mut back = std::collections::HashMap::new();
    for a in 0..small_m {
        for b in 0..small_n {
            back.insert(embed(a, b), (a, b));
        }
    }

    let mut pass = true;
    let mut columns = 0;
    for tau in &traceless {
        let e_tau = e_up.apply(tau);
        for b in 0..small_n {
            columns += 1;
            let input: Vec<(usize, Rational)> = {
                let mut v: Vec<_> = tau.iter().map(|(a, x)| (embed(*a, b), x.clone())).collect();
                v.sort_by_key(|e| e.0);
                v
            };
            let image = f_big.apply(&input);
            // component projection, then H_m ⊗ 1 slice by slice
            let mut slices: std::collections::BTreeMap<usize, Vec<(usize, Rational)>> = Default::default();
            for (pos, x) in image {
                if let Some(&(a, bb)) = back.get(&pos) {
                    slices.entry(bb).or_default().push((a, x));
                }
            }
            let mut lhs: Vec<(usize, Rational)> = Vec::new();
            for (bb, mut slice) in slices {
                slice.sort_by_key(|e| e.0);
                let projected = match &h {
                    Some(h) => h.apply(&slice),
                    None => slice,
                };
                lhs.extend(projected.into_iter().map(|(a, x)| (a * small_n + bb, x)));
            }
            lhs.sort_by_key(|e| e.0);
            let f_col = f_omega.apply(&[(b, Rational::one())]);
            let mut rhs: Vec<(usize, Rational)> = Vec::new();
            for (a, x) in &e_tau {
                for (bb, y) in &f_col {
                    rhs.push((a * small_n + bb, x * y));
                }
            }
            rhs.sort_by_key(|e| e.0);
            if lhs != rhs {
                pass = false;
            }
        }
    }
    Ok(ThetaReport { traceless_dim: traceless.len(), columns_checked: columns, pass })
}

/// The projector onto traceless tensors along the span of the images of the `Q_ij`.
struct TracelessProjector {
    traceless: SubspaceBasis,
    /// inverse of the matrix whose columns are the traceless basis followed
    /// by a basis of the complement
    inverse: Vec<Vec<Rational>>,
    ambient: usize,
}

impl TracelessProjector {
    fn new(form: &BilinearForm, slots: usize) -> Result<Self> {
        let traceless = traceless_basis(form, slots)?;
        let ambient = form.dim().pow(slots as u32);
        let mut columns: Vec<Vec<(usize, Rational)>> = Vec::new();
        for (k, l) in symalg::ordered_pairs(slots) {
            columns.extend(linalg::image_basis(&q_op(k, l, form, slots)?).vectors().iter().cloned());
        }
        let complement = SubspaceBasis::from_vectors(ambient, columns);
        if traceless.dim() + complement.dim() != ambient {
            return Err(Error::NotApplicable("traceless tensors have no invariant complement here".into()));
        }
        let basis: Vec<Vec<Rational>> = traceless.dense_vectors().into_iter().chain(complement.dense_vectors()).collect();
        let matrix: Vec<Vec<Rational>> = (0..ambient).map(|i| basis.iter().map(|v| v[i].clone()).collect()).collect();
        let inverse = linalg::dense_inverse(&matrix)
            .ok_or_else(|| Error::NotApplicable("traceless tensors meet the contraction images".into()))?;
        Ok(TracelessProjector { traceless, inverse, ambient })
    }

    fn apply(&self, v: &[(usize, Rational)]) -> Vec<(usize, Rational)> {
        let dense = linalg::to_dense(v, self.ambient);
        let mut out = vec![Rational::zero(); self.ambient];
        for (i, basis_vec) in self.traceless.vectors().iter().enumerate() {
            let coord: Rational = self.inverse[i].iter().zip(&dense).map(|(a, b)| a * b).sum();
            if coord.is_zero() {
                continue;
            }
            for (j, x) in basis_vec {
                out[*j] += &coord * x;
            }
        }
        linalg::to_sparse(&out)
    }
}

/// Result of one named check inside a certificate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    pub paper_ref: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

/// Checks run on one `F_Ω(M)`, with a digest of the operator.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FusionCertificate {
    pub config: String,
    pub operator_hash: String,
    pub checks: Vec<CheckResult>,
}

/// SHA-256 of the operator's triplet list.
pub fn operator_hash(a: &Operator) -> String {
    let mut hasher = Sha256::new();
    for (r, c, v) in a.triplets() {
        hasher.update(format!("{r} {c} {}\n", format_rational(&v)));
    }
    format!("{:x}", hasher.finalize())
}

impl FusionCertificate {
    pub fn pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

fn check(name: &str, reference: &str, pass: bool, witness: Option<String>) -> CheckResult {
    CheckResult { name: name.into(), paper_ref: reference.into(), pass, witness: if pass { None } else { witness } }
}

/// Run every applicable property check on `F_Ω(M)` for `cfg`.
pub fn certify(cfg: &FusionConfig) -> Result<FusionCertificate> {
    let f = f_operator_general(cfg)?;
    let e = e_operator(cfg.tableau(), cfg.n_dim())?;
    let shape = cfg.tableau().shape();
    let mut checks = Vec::new();
    let (rank_f, rank_e) = (linalg::rank(&f), linalg::rank(&e));
    checks.push(check("rank_bound", "dim W ≤ dim V", rank_f <= rank_e, Some(format!("rank F = {rank_f}, rank E = {rank_e}"))));
    let (left, right) = verify_divisibility_subspaces(&f, &e)?;
    checks.push(check("divisibility", "F divisible on both sides by E", left && right, Some(format!("left {left}, right {right}"))));
    if !shape.is_skew() {
        let scalar = symalg::idempotency_scalar(shape.lambda());
        checks.push(check("idempotency_e", "E² = (l!/dim U)·E", verify_scaled_idempotent(&e, &scalar), None));
        if cfg.m() == 0 {
            checks.push(check("idempotency_f", "F² = (l!/dim U)·F", verify_scaled_idempotent(&f, &scalar), None));
            let report = verify_prop33(cfg)?;
            checks.push(check("traceless_image", "image of F is the traceless part of the image of E", report.pass(), Some(format!("{report:?}"))));
        }
    }
    for formula in ClosedFormula::ALL {
        if formula.applicability(cfg).is_ok() {
            let closed = f_operator_closed(cfg, formula)?;
            checks.push(check(&format!("closed_{formula}"), "closed formula agrees with the fusion value", closed == f, None));
        }
    }
    checks.sort_by(|a, b| a.name.cmp(&b.name));
    Ok(FusionCertificate { config: cfg.to_string(), operator_hash: operator_hash(&f), checks })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::shapes::SkewShape;

    fn row(l: &str) -> StandardTableau {
        StandardTableau::row_tableau(&SkewShape::straight(l.parse().unwrap()))
    }

    fn col(l: &str) -> StandardTableau {
        StandardTableau::column_tableau(&SkewShape::straight(l.parse().unwrap()))
    }

    fn cfg(t: StandardTableau, kind: FormKind, n: usize, m: usize) -> FusionConfig {
        FusionConfig::new(t, kind, n, m).unwrap()
    }

    fn sym_form(n: usize) -> BilinearForm {
        BilinearForm::standard(FormKind::Symmetric, n).unwrap()
    }

    #[test]
    fn e_operator_examples() {
        let e2 = e_operator(&row("2"), 2).unwrap();
        assert_eq!(e2, &Operator::identity(2, 2) + &p_op(1, 2, 2, 2).unwrap());
        assert_eq!(linalg::rank(&e2), 3);
        assert_eq!(linalg::rank(&e_operator(&row("1,1"), 2).unwrap()), 1);
        let skew = StandardTableau::row_tableau(&"2,1/1".parse().unwrap());
        let e = e_operator(&skew, 2).unwrap();
        let expected = &Operator::identity(2, 2) - &p_op::<Rational>(1, 2, 2, 2).unwrap().scale(&rat(1, 2));
        assert_eq!(e, expected);
        assert_eq!(linalg::rank(&e), 4);
    }

    #[test]
    fn f_operator_examples() {
        let o3 = cfg(row("2"), FormKind::Symmetric, 3, 0);
        let f = f_operator_general(&o3).unwrap();
        let q = q_op(1, 2, &sym_form(3), 2).unwrap();
        let expected = &(&Operator::identity(3, 2) + &p_op(1, 2, 3, 2).unwrap()) - &q.scale(&rat(2, 3));
        assert_eq!(f, expected);
        assert!((&q * &f).is_zero());
        assert_eq!(linalg::rank(&f), 5);
        assert_eq!(f_operator_general_rf(&o3).unwrap(), f);

        let sp2 = cfg(row("2"), FormKind::Alternating, 2, 0);
        let f = f_operator_general(&sp2).unwrap();
        assert_eq!(f, e_operator(&row("2"), 2).unwrap());
        assert_eq!(linalg::rank(&f), 3);

        let o2 = cfg(row("1,1"), FormKind::Symmetric, 2, 0);
        let f = f_operator_general(&o2).unwrap();
        assert_eq!(f, e_operator(&row("1,1"), 2).unwrap());
        assert_eq!(linalg::rank(&f), 1);
    }

    #[test]
    fn closed_formula_examples() {
        let o3 = cfg(row("2"), FormKind::Symmetric, 3, 0);
        let general = f_operator_general(&o3).unwrap();
        assert_eq!(f_operator_closed(&o3, ClosedFormula::ColO).unwrap(), general);
        assert_eq!(f_operator_closed(&o3, ClosedFormula::RegularCase).unwrap(), general);
        let sp2 = cfg(row("2"), FormKind::Alternating, 2, 0);
        assert_eq!(f_operator_closed(&sp2, ClosedFormula::RowSp).unwrap(), f_operator_general(&sp2).unwrap());
        let o2 = cfg(col("1,1"), FormKind::Symmetric, 2, 0);
        assert_eq!(f_operator_closed(&o2, ClosedFormula::ColO).unwrap(), e_operator(&col("1,1"), 2).unwrap());
        let o3_21 = cfg(row("2,1"), FormKind::Symmetric, 3, 0);
        assert!(matches!(f_operator_closed(&o3_21, ClosedFormula::ColO), Err(Error::NotApplicable(_))));
    }

    #[test]
    fn idempotency_and_divisibility() {
        let o3 = cfg(row("2"), FormKind::Symmetric, 3, 0);
        let f = f_operator_general(&o3).unwrap();
        let e = e_operator(&row("2"), 3).unwrap();
        assert!(verify_scaled_idempotent(&f, &int(2)));
        assert!(verify_divisibility(&f, &e, &int(2)));
        let e21 = e_operator(&row("2,1"), 2).unwrap();
        assert!(verify_scaled_idempotent(&e21, &int(3)));
        assert_eq!(measure_sigma(&e21), Some(int(3)));
    }

    #[test]
    fn traceless_image_examples() {
        let r = verify_prop33(&cfg(row("2"), FormKind::Symmetric, 3, 0)).unwrap();
        assert!(r.pass());
        assert_eq!((r.rank_f, r.intersection_dim), (5, 5));
        let r = verify_prop33(&cfg(row("1,1"), FormKind::Symmetric, 2, 0)).unwrap();
        assert!(r.pass());
        assert_eq!(r.rank_f, 1);
        let r = verify_prop33(&cfg(row("1"), FormKind::Alternating, 2, 0)).unwrap();
        assert!(r.pass());
        assert_eq!(r.rank_f, 2);
    }

    #[test]
    fn exchange_relation_examples() {
        let t = row("2,1");
        assert!(verify_corollary32(&cfg(t.clone(), FormKind::Symmetric, 3, 0), 2).unwrap());
        let sp = FusionConfig::unrestricted(t.clone(), BilinearForm::standard(FormKind::Alternating, 2).unwrap(), 0).unwrap();
        assert!(verify_corollary32(&sp, 2).unwrap());
        let o2 = FusionConfig::unrestricted(row("2,2"), sym_form(2), 0).unwrap();
        assert!(verify_corollary32(&o2, 2).unwrap());
        assert_eq!(verify_corollary32(&cfg(t, FormKind::Symmetric, 3, 0), 1), Err(Error::NonStandardNeighbor(1)));
    }

    #[test]
    fn theta_factorization_small() {
        assert!(verify_theta_factorization(&row("2"), 1, 2, 1, FormKind::Symmetric).unwrap().pass);
        assert!(verify_theta_factorization(&row("2"), 0, 2, 1, FormKind::Symmetric).unwrap().pass);
        assert!(matches!(
            verify_theta_factorization(&row("1,1"), 1, 2, 1, FormKind::Alternating),
            Err(Error::NotApplicable(_))
        ));
    }

    #[test]
    fn config_validation() {
        assert_eq!(FusionConfig::new(row("2"), FormKind::Alternating, 3, 0), Err(Error::Parity(3)));
        assert_eq!(FusionConfig::new(row("2"), FormKind::Alternating, 2, 1), Err(Error::Parity(1)));
        assert!(matches!(FusionConfig::new(row("1,1"), FormKind::Alternating, 2, 0), Err(Error::InvalidConfig(_))));
        let c = cfg(row("1,1"), FormKind::Symmetric, 2, 0);
        assert_eq!(c.d_params(), vec![rat(-1, 2), rat(-3, 2)]);
        let c = cfg(row("2"), FormKind::Alternating, 2, 0);
        assert_eq!(c.d_params(), vec![rat(1, 2), rat(3, 2)]);
    }

    #[test]
    fn certificate_is_deterministic() {
        let c = cfg(row("2"), FormKind::Symmetric, 3, 0);
        let a = certify(&c).unwrap();
        assert!(a.pass(), "{a:?}");
        assert_eq!(a, certify(&c).unwrap());
    }
}
