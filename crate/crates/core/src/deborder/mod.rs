//! Conversion of a border decomposition into an exact weighted Waring
//! decomposition by induction on the number of summands.

mod bound;
mod dense;
mod local;

pub use bound::{rank_bound, rank_bound_f64};
pub use dense::{dense_decompose, multiply_by_power};
pub use local::{extract_local_structure, partition_into_local, split_and_group, CellTable, LocalPart};

use std::fmt;

use num_bigint::BigInt;
use num_traits::One;
use rand_chacha::ChaCha8Rng;
use rand::SeedableRng;

use crate::algebra::{factorial, HomoPoly, LinearForm, Rational};
use crate::decomposition::{
    essential_reduce, is_local, normalize_border, verify_border, verify_waring, BorderDecomposition,
    BorderVerdict, WaringDecomposition,
};
use crate::diagonalize::{derivative_along, diagonalize, DiagonalizedDecomposition};
use crate::error::{Error, Lemma, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeborderConfig {
    pub seed: u64,
    /// Parts with at most this many summands go straight to the dense solve.
    pub base_threshold: usize,
    /// Normalize and re-diagonalize after every single derivative.
    pub strengthened: bool,
    /// Size of the `Y` block; `⌊10√r⌋` when unset.
    pub y_size: Option<usize>,
}

impl Default for DeborderConfig {
    fn default() -> Self {
        DeborderConfig {
            seed: 0,
            base_threshold: 4,
            strengthened: false,
            y_size: None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Case {
    Local,
    Nonlocal,
    Base,
}

impl Case {
    pub fn tag(self) -> &'static str {
        match self {
            Case::Local => "LOCAL",
            Case::Nonlocal => "NONLOCAL",
            Case::Base => "BASE",
        }
    }
}

impl fmt::Display for Case {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

/// One step of the recursion. `i` is the 1-based variable `z_i` and `k` the
/// power split off when the step belongs to a `(i, k)` cell.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceRecord {
    pub case: Case,
    pub r: usize,
    pub d: u32,
    pub i: Option<usize>,
    pub k: Option<u32>,
    pub depth: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeborderReport {
    pub input_rank: usize,
    pub achieved_rank: usize,
    pub rank_bound: BigInt,
    pub trace: Vec<TraceRecord>,
    pub verified: bool,
}

impl DeborderReport {
    pub fn count(&self, case: Case) -> usize {
        self.trace.iter().filter(|t| t.case == case).count()
    }
}

struct Ctx<'a> {
    config: &'a DeborderConfig,
    rng: ChaCha8Rng,
    trace: Vec<TraceRecord>,
    cell: Option<(usize, u32)>,
}

impl Ctx<'_> {
    fn record(&mut self, case: Case, r: usize, d: u32, depth: usize) {
        let (i, k) = match self.cell.take() {
            Some((i, k)) => (Some(i + 1), Some(k)),
            None => (None, None),
        };
        self.trace.push(TraceRecord {
            case,
            r,
            d,
            i,
            k,
            depth,
        });
    }
}

/// Exact weighted Waring decomposition of `f` from a border decomposition.
pub fn deborder(
    f: &HomoPoly<Rational>,
    b: &BorderDecomposition,
    config: &DeborderConfig,
) -> Result<(WaringDecomposition, DeborderReport)> {
    if f.is_zero() {
        return Err(Error::InvalidArgument("target is zero".into()));
    }
    check_input(f, b, None)?;
    let mut ctx = Ctx {
        config,
        rng: ChaCha8Rng::seed_from_u64(config.seed),
        trace: Vec::new(),
        cell: None,
    };
    let w = solve(f, b, &mut ctx, 0)?.compress();
    if !verify_waring(&w, f)? {
        return Err(Error::VerificationFailed(
            "output does not reproduce the target".into(),
        ));
    }
    let r = b.rank();
    let bound = rank_bound(f.degree(), r as u32);
    if r >= 2 && BigInt::from(w.rank()) > bound {
        return Err(Error::AssertionViolation(format!(
            "rank {} exceeds the bound {bound}",
            w.rank()
        )));
    }
    let report = DeborderReport {
        input_rank: r,
        achieved_rank: w.rank(),
        rank_bound: bound,
        trace: ctx.trace,
        verified: true,
    };
    Ok((w, report))
}

fn check_input(f: &HomoPoly<Rational>, b: &BorderDecomposition, lemma: Option<Lemma>) -> Result<()> {
    let verdict = verify_border(b, f)?;
    if verdict.is_verified() {
        return Ok(());
    }
    let witness = match &verdict {
        BorderVerdict::Pole { monomial, order } => format!("pole of order {order} at {monomial}"),
        BorderVerdict::Mismatch { monomial } => format!("limit differs at {monomial}"),
        _ => unreachable!(),
    };
    Err(match lemma {
        Some(l) => Error::lemma(l, "certificate does not converge to its target", Some(witness)),
        None => Error::VerificationFailed(witness),
    })
}

/// Runs `inner` on the target and decomposition restricted to their
/// essential variables and maps the result back.
fn with_essential<F>(
    f: &HomoPoly<Rational>,
    b: &BorderDecomposition,
    ctx: &mut Ctx,
    depth: usize,
    inner: F,
) -> Result<WaringDecomposition>
where
    F: FnOnce(&HomoPoly<Rational>, &BorderDecomposition, &mut Ctx) -> Result<WaringDecomposition>,
{
    let n = f.nvars();
    let d = f.degree();
    if d == 0 {
        let c = f.coeff(&crate::algebra::Monomial::one(n));
        let mut w = WaringDecomposition::empty(n, 0);
        w.push(c, LinearForm::var(n, 0));
        return Ok(w);
    }
    let b = normalize_border(b)?;
    let red = essential_reduce(f, &b)?;
    let (pf, pb) = red.project()?;
    let pb = normalize_border(&pb)?;
    let w = if red.essential == 1 {
        ctx.record(Case::Base, pb.rank(), d, depth);
        let c = pf.coeff(&crate::algebra::Monomial::var_power(1, 0, d));
        let mut w = WaringDecomposition::empty(1, d);
        w.push(c, LinearForm::var(1, 0));
        w
    } else {
        inner(&pf, &pb, ctx)?
    };
    let back = red.change.inverse()?;
    w.pad(n).transform(&back)
}

fn solve(
    f: &HomoPoly<Rational>,
    b: &BorderDecomposition,
    ctx: &mut Ctx,
    depth: usize,
) -> Result<WaringDecomposition> {
    with_essential(f, b, ctx, depth, |pf, pb, ctx| {
        let d = pf.degree();
        let r = pb.rank();
        if u64::from(d) + 1 >= r as u64 {
            let parts = partition_into_local(pb, pf)?;
            let mut w = WaringDecomposition::empty(pf.nvars(), d);
            for part in parts {
                let cell = ctx.cell;
                let piece = with_essential(&part.limit, &part.border, ctx, depth, |lf, lb, ctx| {
                    pipeline(lf, lb, true, ctx, depth)
                })?;
                ctx.cell = cell.filter(|_| false);
                w.extend(piece);
            }
            Ok(w)
        } else {
            pipeline(pf, pb, false, ctx, depth)
        }
    })
}

/// Diagonalize, split off the `Y`-part and the `(i, k)` cells, recurse.
fn pipeline(
    f: &HomoPoly<Rational>,
    b: &BorderDecomposition,
    local: bool,
    ctx: &mut Ctx,
    depth: usize,
) -> Result<WaringDecomposition> {
    let d = f.degree();
    let n = f.nvars();
    let diag = diagonalize(b, f)?;
    let r = diag.rank();
    ctx.record(if local { Case::Local } else { Case::Nonlocal }, r, d, depth);
    let big_f = &diag.target;
    let x1 = LinearForm::var(n, 0);
    let (e, g) = if local {
        if is_local(&diag.border).as_ref() != Some(&x1) {
            return Err(Error::lemma(
                Lemma::LocalPartition,
                "part is not local after diagonalization",
                None,
            ));
        }
        let g = extract_local_structure(big_f, &x1, r, d)?;
        (d + 1 - r as u32, g)
    } else {
        (0, big_f.clone())
    };
    let ysize = ctx
        .config
        .y_size
        .unwrap_or_else(|| (100 * r).isqrt())
        .max(1);
    let mut w = WaringDecomposition::empty(n, d);
    if r <= ctx.config.base_threshold || n <= ysize {
        w.extend(base_case(&g, &x1, e, ctx, depth + 1)?);
    } else {
        let (f0, table) = split_and_group(&g, ysize);
        if !f0.is_zero() {
            w.extend(base_case(&f0, &x1, e, ctx, depth + 1)?);
        }
        for ((zi, k), gik) in table {
            let z = LinearForm::var(n, zi);
            let h = gik.mul_var_power(0, e);
            let wh = if gik.degree() == 0 {
                ctx.cell = Some((zi, k));
                ctx.record(Case::Base, 1, e, depth + 1);
                let mut wh = WaringDecomposition::empty(n, e);
                wh.push(gik.coeff(&crate::algebra::Monomial::one(n)), x1.clone());
                wh
            } else {
                let cert = cell_certificate(&diag, zi, k, ctx.config.strengthened)?;
                check_input(&h, &cert, Some(Lemma::DerivativeCertificate))?;
                ctx.cell = Some((zi, k));
                let wh = solve(&h, &cert, ctx, depth + 1)?;
                ctx.cell = None;
                wh
            };
            w.extend(multiply_by_power(&wh, &z, k)?);
        }
    }
    let back = diag.change.a0().inverse()?;
    w.compress().transform(&back)
}

/// Certificate for `x₁^e g_{i,k}`: the `k`-th derivative in `z_i`, restricted
/// to `z_1 = … = z_i = 0` and divided by `k!`.
fn cell_certificate(
    diag: &DiagonalizedDecomposition,
    zi: usize,
    k: u32,
    strengthened: bool,
) -> Result<BorderDecomposition> {
    let cert = if strengthened {
        let mut cert = diag.border.clone();
        let mut lim = diag.target.clone();
        for _ in 0..k {
            cert = derivative_along(&cert, &lim, zi, 1)?;
            lim = lim.differentiate(zi, 1)?;
            cert = normalize_border(&cert)?;
            diagonalize(&cert, &lim)?;
        }
        cert
    } else {
        derivative_along(&diag.border, &diag.target, zi, k)?
    };
    let first_z: Vec<usize> = (0..=zi).filter(|&v| v != 0).collect();
    let cert = cert.restrict_zero(&first_z);
    let inv = Rational::one() / Rational::from_integer(factorial(k));
    Ok(cert.scale_weights(&crate::algebra::EpsScalar::constant(inv)))
}

fn base_case(
    g: &HomoPoly<Rational>,
    x1: &LinearForm<Rational>,
    e: u32,
    ctx: &mut Ctx,
    depth: usize,
) -> Result<WaringDecomposition> {
    let r = g.degree() as usize + 1;
    ctx.record(Case::Base, r, g.degree() + e, depth);
    let w = dense::dense_decompose_with(g, &mut ctx.rng)?;
    multiply_by_power(&w, x1, e)
}
