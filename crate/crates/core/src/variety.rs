//! Complete intersections in projective space and their numerical invariants.
//!
//! `X ⊂ P^n` is cut out by hypersurfaces of degrees `d_1..d_m`. Everything is
//! computed from the hyperplane class `h`: the Chern classes of the virtual
//! bundle `-T_X = Σ O(d_i) - (n+1) O(1) + O` are the coefficients of
//! `∏(1 + d_i h) / (1 + h)^{n+1}`, and `deg h^{dim X} = ∏ d_i`.
//!
//! `χ(O_X)` is available by two independent routes: the residue of
//! `∏(1 - e^{-d_i z}) / (1 - e^{-z})^{n+1}` at `z = 0`, and the signed sum of
//! characteristic numbers over factorial products. Characteristic numbers are
//! likewise computed twice, through power sums and through Chern classes.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, OnceLock, RwLock};

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{divides, factorial, int, is_prime, rat_from_int, to_integer, todd_number, Integer, Rational};
use crate::error::{Error, Result};
use crate::series::{reduced_exp_series, todd_series, PowerSeries};
use crate::symfun::{self, Basis, Partition};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawCompleteIntersection", into = "RawCompleteIntersection")]
pub struct CompleteIntersection {
    ambient_dim: u32,
    degrees: Vec<u32>,
    point_index: Integer,
}

#[derive(Serialize, Deserialize)]
struct RawCompleteIntersection {
    #[serde(with = "crate::decimal")]
    ambient_dim: u32,
    #[serde(with = "crate::decimal::seq")]
    degrees: Vec<u32>,
    #[serde(with = "crate::decimal")]
    point_index: Integer,
}

impl TryFrom<RawCompleteIntersection> for CompleteIntersection {
    type Error = Error;

    fn try_from(raw: RawCompleteIntersection) -> Result<Self> {
        CompleteIntersection::new(raw.ambient_dim, raw.degrees, Some(raw.point_index))
    }
}

impl From<CompleteIntersection> for RawCompleteIntersection {
    fn from(x: CompleteIntersection) -> Self {
        RawCompleteIntersection {
            ambient_dim: x.ambient_dim,
            degrees: x.degrees,
            point_index: x.point_index,
        }
    }
}

impl CompleteIntersection {
    /// Validates the data. The point index `n_X` defaults to `∏ d_i` and must
    /// divide it: a generic linear section is a zero-cycle of that degree.
    pub fn new(ambient_dim: u32, mut degrees: Vec<u32>, point_index: Option<Integer>) -> Result<Self> {
        if degrees.contains(&0) {
            return Err(Error::InvalidVariety("degrees must be positive".into()));
        }
        if degrees.len() as u32 >= ambient_dim {
            return Err(Error::InvalidVariety(format!(
                "{} hypersurfaces in P^{ambient_dim} leave no positive-dimensional variety",
                degrees.len()
            )));
        }
        degrees.sort_unstable();
        let product = degrees.iter().fold(Integer::one(), |acc, &d| acc * d);
        let point_index = match point_index {
            None => product,
            Some(nx) => {
                if !nx.is_positive() {
                    return Err(Error::InvalidVariety("point index must be positive".into()));
                }
                if !divides(&nx, &product) {
                    return Err(Error::InvalidVariety(format!(
                        "point index {nx} does not divide the degree product {product}"
                    )));
                }
                nx
            }
        };
        Ok(CompleteIntersection {
            ambient_dim,
            degrees,
            point_index,
        })
    }

    /// `P^n` itself.
    pub fn projective_space(n: u32) -> Result<Self> {
        Self::new(n, Vec::new(), None)
    }

    pub fn hypersurface(n: u32, degree: u32, point_index: Option<Integer>) -> Result<Self> {
        Self::new(n, vec![degree], point_index)
    }

    pub fn ambient_dim(&self) -> u32 {
        self.ambient_dim
    }

    /// Degrees in increasing order.
    pub fn degrees(&self) -> &[u32] {
        &self.degrees
    }

    pub fn num_equations(&self) -> u32 {
        self.degrees.len() as u32
    }

    pub fn dim(&self) -> u32 {
        self.ambient_dim - self.num_equations()
    }

    /// `∏ d_i`, the degree of `h^{dim X}`.
    pub fn degree_product(&self) -> Integer {
        self.degrees.iter().fold(Integer::one(), |acc, &d| acc * d)
    }

    pub fn point_index(&self) -> &Integer {
        &self.point_index
    }

    pub fn has_default_point_index(&self) -> bool {
        self.point_index == self.degree_product()
    }

    pub fn with_point_index(&self, point_index: Integer) -> Result<Self> {
        Self::new(self.ambient_dim, self.degrees.clone(), Some(point_index))
    }
}

impl fmt::Display for CompleteIntersection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "X(")?;
        for (i, d) in self.degrees.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{d}")?;
        }
        write!(f, ") ⊂ P^{}", self.ambient_dim)
    }
}

/// Every complete intersection with `1 <= dim X <= max_dim`, at most `max_m`
/// equations and degrees in `1..=max_degree`, at the default point index.
pub fn complete_intersections_up_to(max_dim: u32, max_m: u32, max_degree: u32) -> Vec<CompleteIntersection> {
    fn multisets(len: u32, min: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if len == 0 {
            out.push(cur.clone());
            return;
        }
        for d in min..=max {
            cur.push(d);
            multisets(len - 1, d, max, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    for dim in 1..=max_dim {
        for m in 0..=max_m {
            let mut degs = Vec::new();
            multisets(m, 1, max_degree, &mut Vec::new(), &mut degs);
            for ds in degs {
                out.push(CompleteIntersection::new(dim + m, ds, None).expect("valid by construction"));
            }
        }
    }
    out
}

/// `χ(O_X)` as the residue at `z = 0` of `∏(1 - e^{-d_i z}) / (1 - e^{-z})^{n+1}`.
///
/// The integrand is `z^{m-n-1}` times the unit series
/// `∏ (1 - e^{-d_i z})/z · (z / (1 - e^{-z}))^{n+1}`, so the residue is the
/// coefficient of `z^{dim X}` in the unit part.
pub fn euler_char_residue(x: &CompleteIntersection) -> Result<Integer> {
    let order = x.dim() as usize;
    let mut unit = todd_series(order).pow(x.ambient_dim() as i64 + 1)?;
    for &d in x.degrees() {
        unit = unit.mul(&reduced_exp_series(d as u64, order)?)?;
    }
    let c = unit.coefficient(order)?;
    to_integer(c).ok_or_else(|| Error::InternalInconsistency(format!("residue for {x} is not an integer: {c}")))
}

/// Chern classes of `-T_X` as multiples of powers of `h`:
/// `∏(1 + d_i h) · (1 + h)^{-(n+1)}` truncated at `h^{dim X}`.
pub fn chern_class_coeffs(x: &CompleteIntersection) -> PowerSeries {
    let order = x.dim() as usize;
    let linear = |d: u32| {
        let mut c = vec![Rational::zero(); order + 1];
        c[0] = Rational::one();
        if order >= 1 {
            c[1] = rat_from_int(int(d as i64));
        }
        PowerSeries::from_coeffs(c).expect("nonempty")
    };
    let mut total = linear(1)
        .pow(-(x.ambient_dim() as i64 + 1))
        .expect("1 + h is invertible");
    for &d in x.degrees() {
        total = total.mul(&linear(d)).expect("equal orders");
    }
    total
}

/// The scalar `s_k` with `p_k(-T_X) = s_k h^k`, i.e. `Σ d_i^k - (n+1)`.
///
/// Power sums are additive, `p_k(O(d)) = (d h)^k`, and the trivial summand
/// contributes nothing for `k >= 1`.
pub fn power_sums(x: &CompleteIntersection, k: u32) -> Integer {
    let sum: Integer = x
        .degrees()
        .iter()
        .map(|&d| num_traits::pow(int(d as i64), k as usize))
        .sum();
    sum - (x.ambient_dim() as i64 + 1)
}

fn check_degree(x: &CompleteIntersection, alpha: &Partition) -> Result<()> {
    if alpha.degree() != x.dim() {
        return Err(Error::DegreeMismatch {
            expected: x.dim(),
            got: alpha.degree(),
        });
    }
    Ok(())
}

fn scale_to_degree(x: &CompleteIntersection, alpha: &Partition, scalar: Rational, route: &str) -> Result<Integer> {
    let value = scalar * rat_from_int(x.degree_product());
    to_integer(&value)
        .ok_or_else(|| Error::InternalInconsistency(format!("c_{alpha}({x}) via {route} is not an integer: {value}")))
}

/// `c_α = deg m_α(roots of -T_X)`, through the power-sum expansion of `m_α`.
pub fn char_number(x: &CompleteIntersection, alpha: &Partition) -> Result<Integer> {
    check_degree(x, alpha)?;
    let q = symfun::monomial_in_basis(alpha, Basis::PowerSum);
    let p_values: BTreeMap<u32, Rational> = (1..=x.dim()).map(|k| (k, rat_from_int(power_sums(x, k)))).collect();
    let scalar = symfun::evaluate_in_powersums(&q, &p_values)?;
    scale_to_degree(x, alpha, scalar, "power sums")
}

/// `c_α` through the elementary expansion of `m_α` and the Chern classes of `-T_X`.
pub fn char_number_via_chern_classes(x: &CompleteIntersection, alpha: &Partition) -> Result<Integer> {
    check_degree(x, alpha)?;
    let q = symfun::monomial_in_basis(alpha, Basis::Elementary);
    let chern = chern_class_coeffs(x);
    let e_values: BTreeMap<u32, Rational> = (1..=x.dim()).map(|k| (k, chern.coeffs()[k as usize].clone())).collect();
    let scalar = symfun::evaluate_in_elementary(&q, &e_values)?;
    scale_to_degree(x, alpha, scalar, "Chern classes")
}

/// All characteristic numbers `c_α`, `|α| = dim X`, of one variety.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharNumberTable {
    pub variety: CompleteIntersection,
    #[serde(with = "crate::decimal::map")]
    pub entries: BTreeMap<Partition, Integer>,
}

type TableKey = (u32, Vec<u32>);
type TableCache = RwLock<HashMap<TableKey, Arc<BTreeMap<Partition, Integer>>>>;

fn table_cache() -> &'static TableCache {
    static CACHE: OnceLock<TableCache> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

fn compute_entries(x: &CompleteIntersection) -> Result<BTreeMap<Partition, Integer>> {
    let product = x.degree_product();
    let mut entries = BTreeMap::new();
    for alpha in symfun::partitions_of(x.dim()) {
        let a = char_number(x, &alpha)?;
        let b = char_number_via_chern_classes(x, &alpha)?;
        if a != b {
            return Err(Error::InternalInconsistency(format!(
                "c_{alpha}({x}): power-sum route {a} != Chern-class route {b}"
            )));
        }
        if !divides(&product, &a) {
            return Err(Error::InternalInconsistency(format!(
                "c_{alpha}({x}) = {a} is not divisible by {product}"
            )));
        }
        entries.insert(alpha, a);
    }
    Ok(entries)
}

impl CharNumberTable {
    /// Computes every `c_α` by both routes, failing if they ever disagree.
    /// Tables are memoized per multidegree.
    pub fn compute(x: &CompleteIntersection) -> Result<Self> {
        let key = (x.ambient_dim(), x.degrees().to_vec());
        let cached = table_cache().read().expect("cache lock").get(&key).cloned();
        let entries = match cached {
            Some(e) => e,
            None => {
                let computed = Arc::new(compute_entries(x)?);
                let mut cache = table_cache().write().expect("cache lock");
                Arc::clone(cache.entry(key).or_insert(computed))
            }
        };
        Ok(CharNumberTable {
            variety: x.clone(),
            entries: (*entries).clone(),
        })
    }

    pub fn get(&self, alpha: &Partition) -> Result<&Integer> {
        self.entries.get(alpha).ok_or(Error::DegreeMismatch {
            expected: self.variety.dim(),
            got: alpha.degree(),
        })
    }
}

/// `∏ (α_i + 1)!`.
pub fn factorial_product(alpha: &Partition) -> Integer {
    alpha
        .parts()
        .iter()
        .fold(Integer::one(), |acc, &a| acc * factorial(a as u64 + 1))
}

/// `χ(O_X) = (-1)^d Σ_{|α|=d} c_α / ∏(α_i + 1)!`.
pub fn euler_char_from_table(table: &CharNumberTable) -> Result<Integer> {
    let d = table.variety.dim();
    let mut sum = Rational::zero();
    for (alpha, c) in &table.entries {
        sum += Rational::new(c.clone(), factorial_product(alpha));
    }
    if d % 2 == 1 {
        sum = -sum;
    }
    to_integer(&sum).ok_or_else(|| {
        Error::InternalInconsistency(format!(
            "characteristic-number sum for {} is not an integer: {sum}",
            table.variety
        ))
    })
}

pub fn euler_char_via_charnumbers(x: &CompleteIntersection) -> Result<Integer> {
    euler_char_from_table(&CharNumberTable::compute(x)?)
}

/// `χ(O_X)` checked by both routes.
pub fn euler_char(x: &CompleteIntersection) -> Result<Integer> {
    let residue = euler_char_residue(x)?;
    let via_table = euler_char_via_charnumbers(x)?;
    if residue != via_table {
        return Err(Error::InternalInconsistency(format!(
            "χ({x}): residue {residue} != characteristic numbers {via_table}"
        )));
    }
    Ok(residue)
}

/// `χ` and dimension of `X × P^a`; `χ` is multiplicative and `χ(P^a) = 1`.
pub fn euler_char_times_projective_space(x: &CompleteIntersection, a: u32) -> Result<(Integer, u32)> {
    Ok((euler_char(x)?, x.dim() + a))
}

fn check_prime(p: u32) -> Result<()> {
    if !is_prime(p as u64) {
        return Err(Error::InvalidOperand(format!("{p} is not prime")));
    }
    Ok(())
}

/// `c_α / p` for `α ∈ Λ_p`, which is always an integer.
pub fn char_number_over_p(table: &CharNumberTable, alpha: &Partition, p: u32) -> Result<Integer> {
    check_prime(p)?;
    if !symfun::in_lambda_p(alpha, p) {
        return Err(Error::InvalidOperand(format!("{alpha} is not in Λ_{p}")));
    }
    let c = table.get(alpha)?;
    if !divides(&int(p as i64), c) {
        return Err(Error::InternalInconsistency(format!(
            "c_{alpha}({}) = {c} is not divisible by {p}",
            table.variety
        )));
    }
    Ok(c / p)
}

/// The Rost number `η_p = c_{(p-1,...,p-1)} / p`; needs `(p - 1) | dim X`.
pub fn rost_number(x: &CompleteIntersection, p: u32) -> Result<Integer> {
    check_prime(p)?;
    let d = x.dim();
    if !d.is_multiple_of(p - 1) {
        return Err(Error::NotApplicable(format!(
            "η_{p} needs p - 1 = {} to divide dim X = {d}",
            p - 1
        )));
    }
    let alpha = Partition::new(vec![p - 1; (d / (p - 1)) as usize])?;
    char_number_over_p(&CharNumberTable::compute(x)?, &alpha, p)
}

/// Weights `τ_{d-1} / ∏(α_i + 1)!` of `c_α` in `u_p`, for `α ∈ Λ_p`, `|α| = d`.
pub fn u_p_weights(d: u32, p: u32) -> Result<Vec<(Partition, Rational)>> {
    if d == 0 {
        return Err(Error::InvalidOperand("u_p needs d >= 1".into()));
    }
    let tau = todd_number(d - 1);
    Ok(symfun::lambda_p_partitions(d, p)?
        .into_iter()
        .map(|alpha| {
            let w = Rational::new(tau.clone(), factorial_product(&alpha));
            (alpha, w)
        })
        .collect())
}

/// Integer coefficients `n_α = p τ_{d-1} / ∏(α_i + 1)!` with `u_p = Σ n_α c_α / p`.
/// Each `n_α` is an integer prime to `p`.
pub fn u_p_coefficients(d: u32, p: u32) -> Result<Vec<(Partition, Integer)>> {
    u_p_weights(d, p)?
        .into_iter()
        .map(|(alpha, w)| {
            let n = w * rat_from_int(int(p as i64));
            match to_integer(&n) {
                Some(n) if !divides(&int(p as i64), &n) => Ok((alpha, n)),
                _ => Err(Error::InternalInconsistency(format!(
                    "n_{alpha} = {n} is not an integer prime to {p}"
                ))),
            }
        })
        .collect()
}

pub fn u_p_from_table(table: &CharNumberTable, p: u32) -> Result<Integer> {
    let mut total = Integer::zero();
    for (alpha, n) in u_p_coefficients(table.variety.dim(), p)? {
        total += n * char_number_over_p(table, &alpha, p)?;
    }
    Ok(total)
}

/// `u_p = Σ_{α ∈ Λ_p, |α| = d} τ_{d-1} / ∏(α_i + 1)! · c_α`.
pub fn u_p(x: &CompleteIntersection, p: u32) -> Result<Integer> {
    u_p_from_table(&CharNumberTable::compute(x)?, p)
}
