//! Partitions and exact transitions between symmetric function bases.
//!
//! Characteristic numbers are indexed by partitions and evaluate the
//! monomial symmetric function `m_α` on Chern roots. Since only elementary
//! symmetric functions (Chern classes) or power sums (additive on virtual
//! bundles) are directly available, `m_α` has to be rewritten in one of those
//! bases.
//!
//! Transition coefficients are obtained by brute force: every basis element
//! of degree `d` is expanded as an explicit polynomial in `d` variables, the
//! coefficients at the sorted exponent vectors form a square matrix against
//! the monomial basis, and that matrix is inverted exactly. Degree-`d`
//! symmetric polynomials are already linearly independent in `d` variables,
//! so the result is the stable transition.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, OnceLock, RwLock};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{is_prime, Rational};
use crate::error::{Error, Result};

/// A partition in weakly increasing normal form `0 < a_1 <= ... <= a_r`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Partition(Vec<u32>);

impl Partition {
    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    /// Normalizes `parts` into weakly increasing order. Zero parts are rejected.
    pub fn new(mut parts: Vec<u32>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::InvalidOperand("partition parts must be positive".into()));
        }
        parts.sort_unstable();
        Ok(Partition(parts))
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    /// Exponent vector of the leading monomial: parts in decreasing order,
    /// zero-padded to `num_vars`.
    fn exponent_vector(&self, num_vars: usize) -> Vec<u8> {
        let mut v: Vec<u8> = self.0.iter().rev().map(|&a| a as u8).collect();
        v.resize(num_vars, 0);
        v
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, a) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{a}")?;
        }
        f.write_str(")")
    }
}

/// Parses `"1,2,3"`, `"(3,1)"` or `"()"`.
impl FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let inner = s.trim().trim_start_matches('(').trim_end_matches(')').trim();
        if inner.is_empty() {
            return Ok(Partition::empty());
        }
        let parts = inner
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::InvalidOperand(format!("bad partition part {t:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Partition::new(parts)
    }
}

impl Serialize for Partition {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

fn partitions_from_parts(d: u32, allowed: &[u32]) -> Vec<Partition> {
    fn go(rest: u32, allowed: &[u32], current: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if rest == 0 {
            out.push(Partition(current.clone()));
            return;
        }
        for (i, &a) in allowed.iter().enumerate() {
            if a > rest {
                break;
            }
            current.push(a);
            go(rest - a, &allowed[i..], current, out);
            current.pop();
        }
    }
    let mut out = Vec::new();
    go(d, allowed, &mut Vec::new(), &mut out);
    out
}

/// All partitions of `d` in lexicographic order of their increasing part lists.
pub fn partitions_of(d: u32) -> Vec<Partition> {
    let allowed: Vec<u32> = (1..=d).collect();
    partitions_from_parts(d, &allowed)
}

/// `true` iff `n = p^i - 1` for some `i >= 1`.
pub fn is_lambda_part(n: u32, p: u32) -> bool {
    let mut q = n as u64 + 1;
    if q < p as u64 {
        return false;
    }
    while q.is_multiple_of(p as u64) {
        q /= p as u64;
    }
    q == 1
}

/// Partitions of `d` whose parts all have the form `p^i - 1`, `i >= 1`.
pub fn lambda_p_partitions(d: u32, p: u32) -> Result<Vec<Partition>> {
    if !is_prime(p as u64) {
        return Err(Error::InvalidOperand(format!("{p} is not prime")));
    }
    let mut allowed = Vec::new();
    let mut pk = p as u64;
    while pk - 1 <= d as u64 {
        allowed.push((pk - 1) as u32);
        pk *= p as u64;
    }
    Ok(partitions_from_parts(d, &allowed))
}

pub fn in_lambda_p(alpha: &Partition, p: u32) -> bool {
    alpha.parts().iter().all(|&a| is_lambda_part(a, p))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Basis {
    Monomial,
    Elementary,
    PowerSum,
}

/// A homogeneous symmetric function written in one of the three bases.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymPoly {
    basis: Basis,
    degree: u32,
    terms: BTreeMap<Partition, Rational>,
}

impl SymPoly {
    pub fn new(basis: Basis, degree: u32, terms: BTreeMap<Partition, Rational>) -> Result<Self> {
        if let Some(bad) = terms.keys().find(|k| k.degree() != degree) {
            return Err(Error::DegreeMismatch {
                expected: degree,
                got: bad.degree(),
            });
        }
        let terms = terms.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        Ok(SymPoly { basis, degree, terms })
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn terms(&self) -> &BTreeMap<Partition, Rational> {
        &self.terms
    }

    pub fn coefficient(&self, lambda: &Partition) -> Rational {
        self.terms.get(lambda).cloned().unwrap_or_else(Rational::zero)
    }

    /// `sum_λ c_λ prod_i v(λ_i)`, where `v(k)` is the value of the `k`-th
    /// generator of this polynomial's basis.
    pub fn evaluate(&self, value: impl Fn(u32) -> Option<Rational>) -> Result<Rational> {
        let mut total = Rational::zero();
        for (lambda, c) in &self.terms {
            let mut term = c.clone();
            for &k in lambda.parts() {
                let v =
                    value(k).ok_or_else(|| Error::InvalidOperand(format!("no value supplied for generator {k}")))?;
                term *= v;
            }
            total += term;
        }
        Ok(total)
    }

    /// Expands into an explicit polynomial in `num_vars` variables.
    pub fn to_exponent_polynomial(&self, num_vars: usize) -> ExponentPolynomial {
        let mut out = ExponentPolynomial::zero(num_vars);
        for (lambda, c) in &self.terms {
            let b = basis_element(self.basis, lambda, num_vars);
            out = out.add(&b.scale(c));
        }
        out
    }
}

/// Evaluates a power-sum expansion at the given `p_k` values.
pub fn evaluate_in_powersums(q: &SymPoly, p_values: &BTreeMap<u32, Rational>) -> Result<Rational> {
    if q.basis != Basis::PowerSum {
        return Err(Error::InvalidOperand("expected a power-sum expansion".into()));
    }
    q.evaluate(|k| p_values.get(&k).cloned())
}

/// Evaluates an elementary expansion at the given `e_k` values.
pub fn evaluate_in_elementary(q: &SymPoly, e_values: &BTreeMap<u32, Rational>) -> Result<Rational> {
    if q.basis != Basis::Elementary {
        return Err(Error::InvalidOperand("expected an elementary expansion".into()));
    }
    q.evaluate(|k| e_values.get(&k).cloned())
}

/// Newton's identities: power sums `p_1..=p_n` from `e_1..=e_n`
/// (`elementary[k-1] = e_k`, and `e_k = 0` past the end of the slice).
pub fn newton_powersums_from_elementary(elementary: &[Rational], n: usize) -> Vec<Rational> {
    let e = |k: usize| elementary.get(k - 1).cloned().unwrap_or_else(Rational::zero);
    let mut p: Vec<Rational> = Vec::with_capacity(n);
    for k in 1..=n {
        let mut acc = Rational::zero();
        for i in 1..k {
            let t = e(i) * &p[k - i - 1];
            if i % 2 == 1 {
                acc += t;
            } else {
                acc -= t;
            }
        }
        let last = e(k) * Rational::from_integer((k as i64).into());
        if k % 2 == 1 {
            acc += last;
        } else {
            acc -= last;
        }
        p.push(acc);
    }
    p
}

/// Sparse polynomial in a fixed number of variables, keyed by exponent vector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExponentPolynomial {
    num_vars: usize,
    terms: HashMap<Vec<u8>, Rational>,
}

impl ExponentPolynomial {
    pub fn zero(num_vars: usize) -> Self {
        ExponentPolynomial {
            num_vars,
            terms: HashMap::new(),
        }
    }

    pub fn one(num_vars: usize) -> Self {
        let mut p = Self::zero(num_vars);
        p.terms.insert(vec![0; num_vars], Rational::one());
        p
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, exponents: &[u8]) -> Rational {
        self.terms.get(exponents).cloned().unwrap_or_else(Rational::zero)
    }

    fn insert_add(&mut self, exps: Vec<u8>, c: Rational) {
        use std::collections::hash_map::Entry;
        match self.terms.entry(exps) {
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
            Entry::Vacant(v) => {
                if !c.is_zero() {
                    v.insert(c);
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.num_vars, other.num_vars);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.insert_add(e.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, k: &Rational) -> Self {
        let mut out = Self::zero(self.num_vars);
        if k.is_zero() {
            return out;
        }
        out.terms = self.terms.iter().map(|(e, c)| (e.clone(), c * k)).collect();
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.num_vars, other.num_vars);
        let mut out = Self::zero(self.num_vars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e: Vec<u8> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.insert_add(e, ca * cb);
            }
        }
        out
    }

    /// `e_k(x_1..x_n)`.
    pub fn elementary(k: usize, num_vars: usize) -> Self {
        let mut out = Self::zero(num_vars);
        if k > num_vars {
            return out;
        }
        let mut idx: Vec<usize> = (0..k).collect();
        loop {
            let mut e = vec![0u8; num_vars];
            for &i in &idx {
                e[i] = 1;
            }
            out.terms.insert(e, Rational::one());
            // next k-subset in lexicographic order
            let mut i = k;
            while i > 0 && idx[i - 1] == num_vars - k + i - 1 {
                i -= 1;
            }
            if i == 0 {
                return out;
            }
            idx[i - 1] += 1;
            for j in i..k {
                idx[j] = idx[j - 1] + 1;
            }
        }
    }

    /// `p_k = x_1^k + ... + x_n^k`.
    pub fn power_sum(k: usize, num_vars: usize) -> Self {
        let mut out = Self::zero(num_vars);
        for i in 0..num_vars {
            let mut e = vec![0u8; num_vars];
            e[i] = k as u8;
            out.insert_add(e, Rational::one());
        }
        out
    }

    /// `m_α`: every distinct rearrangement of the padded exponent vector once.
    pub fn monomial_symmetric(alpha: &Partition, num_vars: usize) -> Self {
        let mut out = Self::zero(num_vars);
        if alpha.len() > num_vars {
            return out;
        }
        let mut e = alpha.exponent_vector(num_vars);
        e.sort_unstable();
        loop {
            out.terms.insert(e.clone(), Rational::one());
            if !next_permutation(&mut e) {
                return out;
            }
        }
    }
}

fn next_permutation(v: &mut [u8]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

fn basis_element(basis: Basis, lambda: &Partition, num_vars: usize) -> ExponentPolynomial {
    match basis {
        Basis::Monomial => ExponentPolynomial::monomial_symmetric(lambda, num_vars),
        Basis::Elementary => lambda
            .parts()
            .iter()
            .fold(ExponentPolynomial::one(num_vars), |acc, &k| {
                acc.mul(&ExponentPolynomial::elementary(k as usize, num_vars))
            }),
        Basis::PowerSum => lambda
            .parts()
            .iter()
            .fold(ExponentPolynomial::one(num_vars), |acc, &k| {
                acc.mul(&ExponentPolynomial::power_sum(k as usize, num_vars))
            }),
    }
}

/// Exact inverse of a square matrix over Q by Gauss–Jordan elimination.
fn invert_matrix(mut a: Vec<Vec<Rational>>) -> Option<Vec<Vec<Rational>>> {
    let n = a.len();
    let mut inv: Vec<Vec<Rational>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { Rational::one() } else { Rational::zero() })
                .collect()
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        inv.swap(col, pivot);
        let scale = a[col][col].recip();
        for j in 0..n {
            a[col][j] *= &scale;
            inv[col][j] *= &scale;
        }
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col].clone();
            for j in 0..n {
                let t = &f * &a[col][j];
                a[r][j] -= t;
                let t = &f * &inv[col][j];
                inv[r][j] -= t;
            }
        }
    }
    Some(inv)
}

type Transition = BTreeMap<Partition, SymPoly>;
type TransitionCache = RwLock<HashMap<(u32, Basis), Arc<Transition>>>;

fn transition_cache() -> &'static TransitionCache {
    static CACHE: OnceLock<TransitionCache> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

fn compute_transition(d: u32, target: Basis) -> Transition {
    let parts = partitions_of(d);
    if d == 0 {
        let mut terms = BTreeMap::new();
        terms.insert(Partition::empty(), Rational::one());
        let poly = SymPoly::new(target, 0, terms).expect("degree 0");
        return BTreeMap::from([(Partition::empty(), poly)]);
    }
    let n = d as usize;
    // matrix[μ][λ] = coefficient of m_μ in the target basis element b_λ
    let columns: Vec<ExponentPolynomial> = parts.iter().map(|l| basis_element(target, l, n)).collect();
    let matrix: Vec<Vec<Rational>> = parts
        .iter()
        .map(|mu| {
            let e = mu.exponent_vector(n);
            columns.iter().map(|b| b.coefficient(&e)).collect()
        })
        .collect();
    let inv = invert_matrix(matrix).expect("basis transition matrix is invertible");
    // m_α = sum_λ inv[λ][α] b_λ
    parts
        .iter()
        .enumerate()
        .map(|(ai, alpha)| {
            let terms = parts
                .iter()
                .enumerate()
                .map(|(li, lambda)| (lambda.clone(), inv[li][ai].clone()))
                .collect();
            (alpha.clone(), SymPoly::new(target, d, terms).expect("degrees match"))
        })
        .collect()
}

fn transition(d: u32, target: Basis) -> Arc<Transition> {
    if let Some(t) = transition_cache().read().expect("cache lock").get(&(d, target)) {
        return Arc::clone(t);
    }
    let computed = Arc::new(compute_transition(d, target));
    let mut cache = transition_cache().write().expect("cache lock");
    Arc::clone(cache.entry((d, target)).or_insert(computed))
}

/// The monomial symmetric function `m_α` expanded in `target`.
pub fn monomial_in_basis(alpha: &Partition, target: Basis) -> SymPoly {
    let d = alpha.degree();
    if target == Basis::Monomial {
        let terms = BTreeMap::from([(alpha.clone(), Rational::one())]);
        return SymPoly::new(Basis::Monomial, d, terms).expect("degree matches");
    }
    transition(d, target)
        .get(alpha)
        .cloned()
        .expect("every partition of d has a transition row")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    fn part(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn partition_normal_form() {
        assert_eq!(part("3,1,2").parts(), &[1, 2, 3]);
        assert_eq!(part("(1,2)").to_string(), "(1,2)");
        assert_eq!(part("()"), Partition::empty());
        assert_eq!(Partition::empty().degree(), 0);
        assert!(Partition::new(vec![0, 1]).is_err());
        assert!("1,x".parse::<Partition>().is_err());
    }

    #[test]
    fn enumerate_partitions() {
        let p3: Vec<String> = partitions_of(3).iter().map(|p| p.to_string()).collect();
        assert_eq!(p3, ["(1,1,1)", "(1,2)", "(3)"]);
        assert_eq!(partitions_of(0), vec![Partition::empty()]);
        let counts: Vec<usize> = (0..=12).map(|d| partitions_of(d).len()).collect();
        assert_eq!(counts, [1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42, 56, 77]);
    }

    #[test]
    fn lambda_families() {
        assert_eq!(lambda_p_partitions(3, 2).unwrap(), vec![part("1,1,1"), part("3")]);
        assert_eq!(lambda_p_partitions(2, 3).unwrap(), vec![part("2")]);
        assert_eq!(
            lambda_p_partitions(5, 2).unwrap(),
            vec![part("1,1,1,1,1"), part("1,1,3")]
        );
        assert!(lambda_p_partitions(2, 5).unwrap().is_empty());
        assert!(matches!(lambda_p_partitions(3, 4), Err(Error::InvalidOperand(_))));
        assert!(is_lambda_part(7, 2) && is_lambda_part(8, 3) && !is_lambda_part(5, 2));
        assert!(!is_lambda_part(0, 2));
    }

    #[test]
    fn elementary_polynomials() {
        let e2 = ExponentPolynomial::elementary(2, 3);
        assert_eq!(e2.num_terms(), 3);
        assert_eq!(e2.coefficient(&[1, 1, 0]), rat(1, 1));
        assert_eq!(ExponentPolynomial::elementary(4, 3).num_terms(), 0);
        assert_eq!(ExponentPolynomial::elementary(0, 3), ExponentPolynomial::one(3));
        assert_eq!(ExponentPolynomial::monomial_symmetric(&part("1,2"), 3).num_terms(), 6);
        assert_eq!(ExponentPolynomial::monomial_symmetric(&part("1,1"), 3).num_terms(), 3);
    }

    #[test]
    fn small_transitions() {
        let ones = monomial_in_basis(&part("1,1,1,1"), Basis::Elementary);
        assert_eq!(ones.terms().len(), 1);
        assert_eq!(ones.coefficient(&part("4")), rat(1, 1));

        assert_eq!(
            monomial_in_basis(&part("1"), Basis::PowerSum).coefficient(&part("1")),
            rat(1, 1)
        );

        // m_(1,1) = (p_1^2 - p_2) / 2; with x = y = 1 this is 1.
        let m11 = monomial_in_basis(&part("1,1"), Basis::PowerSum);
        assert_eq!(m11.coefficient(&part("1,1")), rat(1, 2));
        assert_eq!(m11.coefficient(&part("2")), rat(-1, 2));
        let pv = BTreeMap::from([(1, rat(2, 1)), (2, rat(2, 1))]);
        assert_eq!(evaluate_in_powersums(&m11, &pv).unwrap(), rat(1, 1));

        // m_(2) = p_2 and m_(2) = e_1^2 - 2 e_2
        let m2 = monomial_in_basis(&part("2"), Basis::PowerSum);
        assert_eq!(m2.terms().len(), 1);
        let m2e = monomial_in_basis(&part("2"), Basis::Elementary);
        assert_eq!(m2e.coefficient(&part("1,1")), rat(1, 1));
        assert_eq!(m2e.coefficient(&part("2")), rat(-2, 1));
    }

    #[test]
    fn empty_partition_is_one() {
        for b in [Basis::Elementary, Basis::PowerSum, Basis::Monomial] {
            let q = monomial_in_basis(&Partition::empty(), b);
            assert_eq!(q.coefficient(&Partition::empty()), rat(1, 1));
            assert_eq!(q.evaluate(|_| None).unwrap(), rat(1, 1));
        }
    }

    #[test]
    fn evaluation_contract() {
        let q = SymPoly::new(Basis::PowerSum, 2, BTreeMap::from([(part("1,1"), rat(1, 1))])).unwrap();
        assert_eq!(
            evaluate_in_powersums(&q, &BTreeMap::from([(1, rat(3, 1))])).unwrap(),
            rat(9, 1)
        );
        assert!(matches!(
            evaluate_in_powersums(&q, &BTreeMap::new()),
            Err(Error::InvalidOperand(_))
        ));
        let empty = SymPoly::new(Basis::PowerSum, 2, BTreeMap::new()).unwrap();
        assert_eq!(evaluate_in_powersums(&empty, &BTreeMap::new()).unwrap(), rat(0, 1));
        assert!(evaluate_in_elementary(&q, &BTreeMap::new()).is_err());
        assert!(SymPoly::new(Basis::PowerSum, 3, BTreeMap::from([(part("1"), rat(1, 1))])).is_err());
    }

    #[test]
    fn newton_identities() {
        // x = 1, y = 2: e = (3, 2); p = (3, 5, 9)
        let p = newton_powersums_from_elementary(&[rat(3, 1), rat(2, 1)], 3);
        assert_eq!(p, vec![rat(3, 1), rat(5, 1), rat(9, 1)]);
    }
}
