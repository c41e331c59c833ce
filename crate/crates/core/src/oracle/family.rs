use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::One;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{binomial, falling_factorial, EpsPoly, EpsScalar, HomoPoly, LinearForm, Monomial, Rational};
use crate::decomposition::{
    border_limit, verify_border, verify_waring, BorderDecomposition, Decomposition, Summand,
    WaringDecomposition,
};
use crate::deborder::multiply_by_power;
use crate::error::{Error, Result};

const MAX_DRAWS: usize = 64;
const HEIGHT: i64 = 9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    Tangent,
    Osculating,
    Multibase,
    Random,
}

impl Family {
    pub fn tag(self) -> &'static str {
        match self {
            Family::Tangent => "tangent",
            Family::Osculating => "osculating",
            Family::Multibase => "multibase",
            Family::Random => "random",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "tangent" => Ok(Family::Tangent),
            "osculating" => Ok(Family::Osculating),
            "multibase" => Ok(Family::Multibase),
            "random" => Ok(Family::Random),
            _ => Err(Error::InvalidArgument(format!("unknown family `{s}`"))),
        }
    }
}

/// Parameters of a generated border decomposition. `j` is the osculation
/// order, `rank` the number of summands of a random instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilySpec {
    pub family: Family,
    pub d: u32,
    pub j: u32,
    pub seed: u64,
    pub nvars: usize,
    pub rank: Option<usize>,
}

impl Default for FamilySpec {
    fn default() -> Self {
        FamilySpec {
            family: Family::Tangent,
            d: 3,
            j: 1,
            seed: 0,
            nvars: 2,
            rank: None,
        }
    }
}

impl FamilySpec {
    pub fn new(family: Family, d: u32) -> Self {
        FamilySpec {
            family,
            d,
            ..FamilySpec::default()
        }
    }

    fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidArgument(m));
        match self.family {
            Family::Tangent | Family::Multibase if self.d < 2 => bad(format!("{} needs d >= 2", self.family)),
            Family::Osculating if self.j < 1 || self.j > self.d => {
                bad(format!("osculating needs 1 <= j <= d, got j = {}", self.j))
            }
            Family::Random if self.d < 1 || self.nvars < 1 => bad("random needs d >= 1 and nvars >= 1".into()),
            Family::Random if self.rank == Some(0) => bad("random needs rank >= 1".into()),
            _ => Ok(()),
        }
    }
}

fn eps_form(coefs: Vec<EpsScalar>, nvars: usize) -> LinearForm<EpsScalar> {
    LinearForm::new(coefs).expect("nonzero form").pad(nvars)
}

fn q(c: i64) -> EpsScalar {
    EpsScalar::constant(Rational::from_integer(c.into()))
}

/// A border decomposition from a known family together with its limit.
pub fn gen_family(spec: &FamilySpec) -> Result<(HomoPoly<Rational>, BorderDecomposition)> {
    spec.validate()?;
    let d = spec.d;
    let b = match spec.family {
        Family::Tangent => {
            let n = spec.nvars.max(2);
            let w = EpsScalar::eps_monomial(Rational::new(BigInt::one(), d.into()), -1);
            Decomposition::new(
                n,
                d,
                vec![
                    Summand::new(w.clone(), eps_form(vec![q(1), EpsScalar::eps()], n)),
                    Summand::new(-w, eps_form(vec![q(1)], n)),
                ],
            )?
        }
        Family::Osculating => {
            let n = spec.nvars.max(2);
            let j = spec.j;
            let scale = Rational::new(BigInt::one(), falling_factorial(d, j));
            let summands = (0..=j)
                .rev()
                .map(|i| {
                    let sign = if (j - i).is_multiple_of(2) { 1 } else { -1 };
                    let c = &scale * Rational::from_integer(binomial(j.into(), i.into()) * sign);
                    let w = EpsScalar::eps_monomial(c, -i64::from(j));
                    let form = eps_form(vec![q(1), EpsScalar::eps_monomial(Rational::from_integer(i.into()), 1)], n);
                    Summand::new(w, form)
                })
                .collect();
            Decomposition::new(n, d, summands)?
        }
        Family::Multibase => {
            // variables x, y, u, v
            let n = spec.nvars.max(4);
            let w = EpsScalar::eps_monomial(Rational::one(), -1);
            let e = EpsScalar::eps();
            Decomposition::new(
                n,
                d,
                vec![
                    Summand::new(w.clone(), eps_form(vec![q(1), q(0), e.clone(), q(0)], n)),
                    Summand::new(-w.clone(), eps_form(vec![q(1)], n)),
                    Summand::new(w.clone(), eps_form(vec![q(0), q(1), q(0), e], n)),
                    Summand::new(-w, eps_form(vec![q(0), q(1)], n)),
                ],
            )?
        }
        Family::Random => return gen_random(spec),
    };
    let f = border_limit(&b)?;
    Ok((f, b))
}

fn small_rational<R: Rng>(rng: &mut R) -> Rational {
    let mut num = 0;
    while num == 0 {
        num = rng.gen_range(-HEIGHT..=HEIGHT);
    }
    Rational::new(num.into(), rng.gen_range(1..=HEIGHT).into())
}

fn int_vector<R: Rng>(rng: &mut R, n: usize) -> Vec<i64> {
    (0..n).map(|_| rng.gen_range(-HEIGHT..=HEIGHT)).collect()
}

/// Groups of up to three summands sharing a base `b`, with forms
/// `b + εt·u + ε²t²·w` at distinct nodes `t ∈ {-1, 0, 1}` and weights given
/// by the divided difference over those nodes, so every group converges.
fn gen_random(spec: &FamilySpec) -> Result<(HomoPoly<Rational>, BorderDecomposition)> {
    let n = spec.nvars;
    let d = spec.d;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    for _ in 0..MAX_DRAWS {
        let r = spec.rank.unwrap_or_else(|| rng.gen_range(1..=5));
        let mut summands = Vec::with_capacity(r);
        let mut left = r;
        while left > 0 {
            let m = rng.gen_range(1..=left.min(3));
            left -= m;
            let mut base = int_vector(&mut rng, n);
            while base.iter().all(|&c| c == 0) {
                base = int_vector(&mut rng, n);
            }
            let u = int_vector(&mut rng, n);
            let w = int_vector(&mut rng, n);
            let mut nodes = vec![-1i64, 0, 1];
            nodes.shuffle(&mut rng);
            nodes.truncate(m);
            let scale = small_rational(&mut rng);
            for (a, &t) in nodes.iter().enumerate() {
                let denom: i64 = nodes
                    .iter()
                    .enumerate()
                    .filter(|&(k, _)| k != a)
                    .map(|(_, &s)| t - s)
                    .product();
                let weight = EpsScalar::eps_monomial(
                    &scale / Rational::from_integer(denom.into()),
                    -(m as i64 - 1),
                );
                let coefs: Vec<EpsScalar> = (0..n)
                    .map(|v| {
                        let p = EpsPoly::from_coeffs(&[
                            Rational::from_integer(base[v].into()),
                            Rational::from_integer((t * u[v]).into()),
                            Rational::from_integer((t * t * w[v]).into()),
                        ]);
                        EpsScalar::from_poly(p)
                    })
                    .collect();
                summands.push(Summand::new(weight, LinearForm::new(coefs)?));
            }
        }
        let b = Decomposition::new(n, d, summands)?;
        let f = match border_limit(&b) {
            Ok(f) if !f.is_zero() => f,
            Ok(_) | Err(Error::DegenerateSum) | Err(Error::PoleAtZero { .. }) => continue,
            Err(e) => return Err(e),
        };
        if verify_border(&b, &f)?.is_verified() {
            return Ok((f, b));
        }
    }
    Err(Error::RetryLimit(format!(
        "no convergent random instance after {MAX_DRAWS} draws"
    )))
}

/// Decomposition of a monomial by multiplying in one variable power at a time.
pub fn monomial_upper(m: &Monomial) -> Result<WaringDecomposition> {
    let n = m.nvars();
    if n == 0 {
        return Err(Error::InvalidArgument("monomial has no variables".into()));
    }
    let mut vars = (0..n).filter(|&v| m.exps()[v] > 0);
    let first = vars.next().unwrap_or(0);
    let mut w = WaringDecomposition::new(
        n,
        m.exps()[first],
        vec![Summand::new(Rational::one(), LinearForm::var(n, first))],
    )?;
    for v in vars {
        w = multiply_by_power(&w, &LinearForm::var(n, v), m.exps()[v])?;
    }
    let target = HomoPoly::monomial(m.exps(), Rational::one());
    if !verify_waring(&w, &target)? {
        return Err(Error::AssertionViolation("monomial decomposition does not verify".into()));
    }
    Ok(w)
}
