//! Degree-formula congruences and incompressibility criteria.
//!
//! Every criterion here is a sufficient condition for incompressibility. A
//! criterion that does not fire proves nothing either way, so verdicts are
//! three-valued: [`Verdict::IncompressibleProven`], [`Verdict::NotDecided`]
//! and [`Verdict::NotApplicable`].

use std::collections::BTreeMap;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{binomial, divides, int, is_prime, primes_up_to, todd_number, Integer};
use crate::error::{Error, Result};
use crate::symfun::{self, Partition};
use crate::variety::{self, CharNumberTable, CompleteIntersection};

/// Data of a hypothetical rational map `f: Y ⇢ X`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MapHypothesis {
    #[serde(with = "crate::decimal")]
    pub chi_y: Integer,
    #[serde(with = "crate::decimal")]
    pub dim_y: u32,
    #[serde(with = "crate::decimal")]
    pub chi_x: Integer,
    #[serde(with = "crate::decimal")]
    pub n_x: Integer,
    /// `[k(Y) : k(X)]` for dominant maps, `0` otherwise.
    #[serde(with = "crate::decimal")]
    pub deg_f: Integer,
}

impl MapHypothesis {
    pub fn new(chi_y: Integer, dim_y: u32, chi_x: Integer, n_x: Integer, deg_f: Integer) -> Result<Self> {
        if dim_y == 0 {
            return Err(Error::InvalidOperand("dim Y must be positive".into()));
        }
        if !n_x.is_positive() {
            return Err(Error::InvalidOperand("n_X must be positive".into()));
        }
        if deg_f.is_negative() {
            return Err(Error::InvalidOperand("deg f must be non-negative".into()));
        }
        Ok(MapHypothesis {
            chi_y,
            dim_y,
            chi_x,
            n_x,
            deg_f,
        })
    }
}

/// `χ(O_Y) τ_{dim Y - 1} ≡ deg f · χ(O_X) τ_{dim Y - 1} (mod n_X)`.
///
/// A `false` result certifies that no rational map with this data exists.
pub fn dfr_congruence_holds(h: &MapHypothesis) -> bool {
    let tau = todd_number(h.dim_y - 1);
    let diff = (&h.chi_y - &h.deg_f * &h.chi_x) * tau;
    divides(&h.n_x, &diff)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    IncompressibleProven,
    NotDecided,
    NotApplicable,
}

impl Verdict {
    fn from_fired(fired: bool) -> Self {
        if fired {
            Verdict::IncompressibleProven
        } else {
            Verdict::NotDecided
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::IncompressibleProven => "incompressible-proven",
            Verdict::NotDecided => "not-decided",
            Verdict::NotApplicable => "not-applicable",
        }
    }
}

/// Outcome of both parts of the point-index corollary for one variety.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorollaryCheck {
    #[serde(with = "crate::decimal")]
    pub chi: Integer,
    #[serde(with = "crate::decimal")]
    pub dim: u32,
    #[serde(with = "crate::decimal")]
    pub n_x: Integer,
    #[serde(with = "crate::decimal")]
    pub tau_dim: Integer,
    #[serde(with = "crate::decimal")]
    pub tau_dim_minus_1: Integer,
    /// `n_X | χ τ_{dim X}`; always true for a genuine point index.
    pub sanity_i: bool,
    /// `n_X ∤ χ τ_{dim X - 1}`.
    pub incompressible_by_ii: bool,
}

/// The corollary for arbitrary `χ`, `dim X >= 1` and `n_X`, e.g. literature data.
pub fn corollary_from_data(chi: Integer, dim: u32, n_x: Integer) -> CorollaryCheck {
    let tau_dim = todd_number(dim);
    let tau_dim_minus_1 = todd_number(dim.saturating_sub(1));
    let sanity_i = divides(&n_x, &(&chi * &tau_dim));
    let incompressible_by_ii = !divides(&n_x, &(&chi * &tau_dim_minus_1));
    CorollaryCheck {
        chi,
        dim,
        n_x,
        tau_dim,
        tau_dim_minus_1,
        sanity_i,
        incompressible_by_ii,
    }
}

pub fn corollary_check(x: &CompleteIntersection) -> Result<CorollaryCheck> {
    let check = corollary_from_data(variety::euler_char(x)?, x.dim(), x.point_index().clone());
    if !check.sanity_i {
        return Err(Error::InconsistentPointIndex(format!(
            "n_X = {} does not divide χ·τ_{} = {}",
            check.n_x,
            check.dim,
            &check.chi * &check.tau_dim
        )));
    }
    Ok(check)
}

/// Rationally connected varieties have `χ = 1`, so they are incompressible
/// as soon as `n_X ∤ τ_{dim X - 1}`.
pub fn rationally_connected_incompressible(dim: u32, n_x: &Integer) -> bool {
    corollary_from_data(Integer::one(), dim, n_x.clone()).incompressible_by_ii
}

/// For `dim X = p - 1`: incompressible if `p ∤ m_p` and `p ∤ ∏ d_i / n_X`,
/// where `m_p` counts the degrees divisible by `p`. `None` when `dim X + 1 != p`.
pub fn myex_criterion(x: &CompleteIntersection, p: u32) -> Option<bool> {
    if !is_prime(p as u64) || x.dim() + 1 != p {
        return None;
    }
    let (m_p, quotient) = myex_data(x, p);
    Some(m_p % p != 0 && !divides(&int(p as i64), &quotient))
}

fn myex_data(x: &CompleteIntersection, p: u32) -> (u32, Integer) {
    let m_p = x.degrees().iter().filter(|&&d| d % p == 0).count() as u32;
    (m_p, x.degree_product() / x.point_index())
}

/// The classical congruence `c_α(Y)/p ≡ deg f · c_α(X)/p (mod n_X)` for `α ∈ Λ_p`.
pub fn rost_congruence_holds(
    c_y: &Integer,
    c_x: &Integer,
    alpha: &Partition,
    p: u32,
    deg_f: &Integer,
    n_x: &Integer,
) -> Result<bool> {
    let (y, x) = (lambda_quotient(c_y, alpha, p)?, lambda_quotient(c_x, alpha, p)?);
    Ok(divides(n_x, &(y - deg_f * x)))
}

/// `n_X ∤ c_α(X)/p`, which makes `X` incompressible.
pub fn rost_incompressible(c_x: &Integer, alpha: &Partition, p: u32, n_x: &Integer) -> Result<bool> {
    Ok(!divides(n_x, &lambda_quotient(c_x, alpha, p)?))
}

fn lambda_quotient(c: &Integer, alpha: &Partition, p: u32) -> Result<Integer> {
    if !is_prime(p as u64) || !symfun::in_lambda_p(alpha, p) {
        return Err(Error::InvalidOperand(format!("{alpha} is not in Λ_{p}")));
    }
    let p = int(p as i64);
    if !divides(&p, c) {
        return Err(Error::InvalidOperand(format!("{c} is not divisible by {p}")));
    }
    Ok(c / p)
}

/// `n ∤ χ τ_{d-1}` and `∃ p: n ∤ u_p`, the two sides of the `u_p` equivalence.
pub fn u_p_equivalence(table: &CharNumberTable, chi: &Integer, n: &Integer) -> Result<(bool, bool)> {
    let d = table.variety.dim();
    let lhs = !divides(n, &(chi * todd_number(d - 1)));
    let mut rhs = false;
    for p in primes_up_to(d as u64 + 1) {
        if !divides(n, &variety::u_p_from_table(table, p as u32)?) {
            rhs = true;
        }
    }
    Ok((lhs, rhs))
}

/// Exact parity data behind the 3-fold condition, at `n_X = ∏ d_i`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cond3Check {
    #[serde(with = "crate::decimal")]
    pub m: u32,
    #[serde(with = "crate::decimal")]
    pub sigma1: Integer,
    #[serde(with = "crate::decimal")]
    pub sigma2: Integer,
    #[serde(with = "crate::decimal")]
    pub sigma3: Integer,
    /// `C_(3) = c_(3) / n_X`.
    #[serde(with = "crate::decimal")]
    pub c3: Integer,
    /// `C_(1,1,1) = c_(1,1,1) / n_X`.
    #[serde(with = "crate::decimal")]
    pub c111: Integer,
    /// `C_(1,1,1)` even or `C_(3)` even, from the exact numbers.
    pub predicate: bool,
    /// The four-case `m mod 4` classification in `σ_1`, `σ_2`.
    pub table_case: bool,
    /// Parity classification including the `σ_3` term.
    pub parity_case: bool,
}

impl Cond3Check {
    pub fn table_agrees(&self) -> bool {
        self.predicate == self.table_case
    }
}

fn is_even(n: &Integer) -> bool {
    divides(&int(2), n)
}

/// The four cases: `m = 4k`; `m = 4k+2`, `σ_1` even; `m = 4k+1`, `σ_1` or
/// `σ_2` odd; `m = 4k-1`, `σ_1` odd or `σ_2` even.
pub fn cond3_table(m: u32, sigma1: &Integer, sigma2: &Integer) -> bool {
    match m % 4 {
        0 => true,
        2 => is_even(sigma1),
        1 => !is_even(sigma1) || !is_even(sigma2),
        _ => !is_even(sigma1) || is_even(sigma2),
    }
}

/// Parity class from `C_(1,1,1) = σ_3 - (m+4)σ_2 + C(m+5,2)σ_1 - C(m+6,3)` and
/// `C_(3) ≡ σ_1 + m (mod 2)`.
pub fn cond3_parity_class(m: u32, sigma1: &Integer, sigma2: &Integer, sigma3: &Integer) -> bool {
    let m = m as i64;
    let c111 = sigma3 - sigma2 * (m + 4) + sigma1 * binomial(m + 5, 2) - binomial(m + 6, 3);
    let c3 = sigma1 + m;
    is_even(&c111) || is_even(&c3)
}

fn elementary_in_degrees(degrees: &[u32], k: usize) -> Integer {
    let mut e = vec![Integer::zero(); k + 1];
    e[0] = Integer::one();
    for &d in degrees {
        for j in (1..=k).rev() {
            let t = &e[j - 1] * d;
            e[j] += t;
        }
    }
    e[k].clone()
}

pub fn cond3_check(x: &CompleteIntersection) -> Result<Cond3Check> {
    if x.dim() != 3 {
        return Err(Error::NotApplicable(format!("{x} is not a 3-fold")));
    }
    if !x.has_default_point_index() {
        return Err(Error::NotApplicable(
            "the 3-fold parity table assumes n_X = ∏ d_i".into(),
        ));
    }
    let table = CharNumberTable::compute(x)?;
    let n_x = x.point_index();
    let c3 = table.get(&Partition::new(vec![3])?)? / n_x;
    let c111 = table.get(&Partition::new(vec![1, 1, 1])?)? / n_x;
    let m = x.num_equations();
    let sigma1 = elementary_in_degrees(x.degrees(), 1);
    let sigma2 = elementary_in_degrees(x.degrees(), 2);
    let sigma3 = elementary_in_degrees(x.degrees(), 3);
    let predicate = is_even(&c3) || is_even(&c111);
    Ok(Cond3Check {
        m,
        table_case: cond3_table(m, &sigma1, &sigma2),
        parity_case: cond3_parity_class(m, &sigma1, &sigma2, &sigma3),
        sigma1,
        sigma2,
        sigma3,
        c3,
        c111,
        predicate,
    })
}

/// One criterion's verdict and the exact integers that decided it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CriterionOutcome {
    pub criterion: String,
    pub verdict: Verdict,
    #[serde(with = "crate::decimal::map")]
    pub evidence: BTreeMap<String, Integer>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimeData {
    #[serde(with = "crate::decimal::option")]
    pub eta_p: Option<Integer>,
    #[serde(with = "crate::decimal")]
    pub u_p: Integer,
    /// Fires when some `α ∈ Λ_p` has `n_X ∤ c_α / p`.
    pub rost_verdict: Verdict,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IncompressibilityReport {
    pub variety: CompleteIntersection,
    #[serde(with = "crate::decimal")]
    pub dim: u32,
    #[serde(with = "crate::decimal")]
    pub chi: Integer,
    #[serde(with = "crate::decimal")]
    pub tau_d: Integer,
    #[serde(with = "crate::decimal")]
    pub tau_d_minus_1: Integer,
    pub char_numbers: CharNumberTable,
    pub per_prime: BTreeMap<u32, PrimeData>,
    pub sanity_i: bool,
    pub cond3: Option<Cond3Check>,
    pub verdicts: Vec<CriterionOutcome>,
    pub overall: Verdict,
}

impl IncompressibilityReport {
    pub fn verdict(&self, criterion: &str) -> Option<Verdict> {
        self.verdicts
            .iter()
            .find(|v| v.criterion == criterion)
            .map(|v| v.verdict)
    }

    pub fn corollary_ii_verdict(&self) -> Verdict {
        self.verdict("corollary-ii").expect("always reported")
    }

    /// The prime-dimension criterion for `p = dim X + 1`, when `p` is prime.
    pub fn myex_verdict(&self) -> Option<bool> {
        self.verdict(&format!("prime-dimension(p={})", self.dim + 1))
            .map(|v| v == Verdict::IncompressibleProven)
    }
}

fn evidence<const N: usize>(items: [(&str, Integer); N]) -> BTreeMap<String, Integer> {
    items.into_iter().map(|(k, v)| (k.to_string(), v)).collect()
}

pub fn build_report(x: &CompleteIntersection) -> Result<IncompressibilityReport> {
    let cor = corollary_check(x)?;
    let table = CharNumberTable::compute(x)?;
    let d = x.dim();
    let n_x = x.point_index().clone();
    let mut verdicts = Vec::new();

    verdicts.push(CriterionOutcome {
        criterion: "corollary-ii".into(),
        verdict: Verdict::from_fired(cor.incompressible_by_ii),
        evidence: evidence([
            ("chi", cor.chi.clone()),
            ("tau_dim_minus_1", cor.tau_dim_minus_1.clone()),
            ("n_x", n_x.clone()),
        ]),
    });

    let p = d + 1;
    let name = format!("prime-dimension(p={p})");
    match myex_criterion(x, p) {
        Some(fired) => {
            let (m_p, quotient) = myex_data(x, p);
            verdicts.push(CriterionOutcome {
                criterion: name,
                verdict: Verdict::from_fired(fired),
                evidence: evidence([("m_p", int(m_p as i64)), ("degree_product_over_n_x", quotient)]),
            });
        }
        None => verdicts.push(CriterionOutcome {
            criterion: name,
            verdict: Verdict::NotApplicable,
            evidence: BTreeMap::new(),
        }),
    }

    let mut per_prime = BTreeMap::new();
    for p in primes_up_to(d as u64 + 1) {
        let p = p as u32;
        let eta_p = match variety::rost_number(x, p) {
            Ok(eta) => Some(eta),
            Err(Error::NotApplicable(_)) => None,
            Err(e) => return Err(e),
        };
        let mut rost_fired = None;
        for alpha in symfun::lambda_p_partitions(d, p)? {
            let quotient = variety::char_number_over_p(&table, &alpha, p)?;
            if !divides(&n_x, &quotient) {
                rost_fired = Some((alpha, quotient));
                break;
            }
        }
        let rost_verdict = Verdict::from_fired(rost_fired.is_some());
        verdicts.push(CriterionOutcome {
            criterion: format!("rost-degree(p={p})"),
            verdict: rost_verdict,
            evidence: match &rost_fired {
                Some((alpha, q)) => {
                    let mut ev = evidence([("n_x", n_x.clone())]);
                    ev.insert(format!("c_{alpha}_over_p"), q.clone());
                    ev
                }
                None => evidence([("n_x", n_x.clone())]),
            },
        });
        per_prime.insert(
            p,
            PrimeData {
                eta_p,
                u_p: variety::u_p_from_table(&table, p)?,
                rost_verdict,
            },
        );
    }

    let cond3 = (d == 3 && x.has_default_point_index())
        .then(|| cond3_check(x))
        .transpose()?;

    let overall = Verdict::from_fired(verdicts.iter().any(|v| v.verdict == Verdict::IncompressibleProven));
    Ok(IncompressibilityReport {
        variety: x.clone(),
        dim: d,
        chi: cor.chi,
        tau_d: cor.tau_dim,
        tau_d_minus_1: cor.tau_dim_minus_1,
        char_numbers: table,
        per_prime,
        sanity_i: cor.sanity_i,
        cond3,
        verdicts,
        overall,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ci(n: u32, degrees: &[u32], nx: Option<i64>) -> CompleteIntersection {
        CompleteIntersection::new(n, degrees.to_vec(), nx.map(int)).unwrap()
    }

    fn hyp(chi_y: i64, dim_y: u32, chi_x: i64, deg_f: i64, n_x: i64) -> MapHypothesis {
        MapHypothesis::new(int(chi_y), dim_y, int(chi_x), int(n_x), int(deg_f)).unwrap()
    }

    #[test]
    fn dfr_congruence() {
        assert!(dfr_congruence_holds(&hyp(5, 3, 5, 1, 7)));
        assert!(dfr_congruence_holds(&hyp(1, 2, 1, 1, 12)));
        // curves: τ_0 = 1
        assert!(!dfr_congruence_holds(&hyp(0, 1, 1, 1, 3)));
        assert!(dfr_congruence_holds(&hyp(4, 1, 1, 1, 3)));
        // surfaces: factor τ_1 = 2
        assert!(dfr_congruence_holds(&hyp(0, 2, 1, 1, 2)));
        assert!(!dfr_congruence_holds(&hyp(0, 2, 1, 1, 4)));
        assert!(dfr_congruence_holds(&hyp(0, 2, 1, 0, 5)));
        assert!(MapHypothesis::new(int(0), 0, int(0), int(1), int(1)).is_err());
        assert!(MapHypothesis::new(int(0), 1, int(0), int(0), int(1)).is_err());
        assert!(MapHypothesis::new(int(0), 1, int(0), int(1), int(-1)).is_err());
    }

    #[test]
    fn corollary_cases() {
        let conic = corollary_check(&ci(2, &[2], Some(2))).unwrap();
        assert!(conic.sanity_i && conic.incompressible_by_ii);
        let p3 = corollary_check(&ci(3, &[], Some(1))).unwrap();
        assert!(p3.sanity_i && !p3.incompressible_by_ii);
        let k3 = corollary_check(&ci(3, &[4], Some(4))).unwrap();
        assert_eq!(k3.chi, int(2));
        assert!(k3.sanity_i && !k3.incompressible_by_ii);
        for dim in 1..6 {
            for n in 1..50 {
                assert_eq!(
                    rationally_connected_incompressible(dim, &int(n)),
                    !divides(&int(n), &todd_number(dim - 1))
                );
            }
        }
        // inconsistent data surfaces as sanity_i = false
        assert!(!corollary_from_data(int(1), 1, int(3)).sanity_i);
    }

    #[test]
    fn prime_dimension_criterion() {
        assert_eq!(myex_criterion(&ci(2, &[2], Some(2)), 2), Some(true));
        assert_eq!(myex_criterion(&ci(5, &[5], Some(5)), 5), Some(true));
        assert_eq!(myex_criterion(&ci(3, &[3], None), 5), None);
        assert_eq!(myex_criterion(&ci(2, &[2], Some(1)), 2), Some(false));
        assert_eq!(myex_criterion(&ci(2, &[4], Some(4)), 2), Some(true));
        assert_eq!(myex_criterion(&ci(3, &[2, 2], None), 2), Some(false));
    }

    #[test]
    fn rost_congruence() {
        let a = Partition::new(vec![1]).unwrap();
        assert!(rost_congruence_holds(&int(-2), &int(-2), &a, 2, &int(1), &int(2)).unwrap());
        assert!(!rost_congruence_holds(&int(0), &int(-2), &a, 2, &int(1), &int(2)).unwrap());
        assert!(rost_incompressible(&int(-2), &a, 2, &int(2)).unwrap());
        let bad = Partition::new(vec![2]).unwrap();
        assert!(rost_congruence_holds(&int(6), &int(6), &bad, 2, &int(1), &int(2)).is_err());
        assert!(rost_incompressible(&int(3), &a, 2, &int(2)).is_err());
    }

    #[test]
    fn curves_classical_matches_dfr() {
        // χ = -η_2, so the congruences coincide up to sign
        for d in 1..=6u32 {
            for nx in [1u32, 2, 3, d] {
                if d % nx != 0 {
                    continue;
                }
                let x = ci(2, &[d], Some(nx as i64));
                let chi = variety::euler_char(&x).unwrap();
                let eta = variety::rost_number(&x, 2).unwrap();
                assert_eq!(chi, -eta.clone());
                let c = CharNumberTable::compute(&x).unwrap();
                let c1 = c.get(&Partition::new(vec![1]).unwrap()).unwrap().clone();
                let a = Partition::new(vec![1]).unwrap();
                assert_eq!(
                    rost_incompressible(&c1, &a, 2, x.point_index()).unwrap(),
                    corollary_check(&x).unwrap().incompressible_by_ii
                );
            }
        }
    }

    #[test]
    fn cond3_cases() {
        let x = ci(4, &[2], None);
        let c = cond3_check(&x).unwrap();
        assert_eq!((c.c3.clone(), c.c111.clone()), (int(3), int(-5)));
        assert!(!c.predicate && !c.table_case && !c.parity_case);
        let x = ci(5, &[2, 2], None);
        let c = cond3_check(&x).unwrap();
        assert!(c.table_case && c.predicate);
        assert!(cond3_table(4, &int(5), &int(9)));
        assert!(matches!(cond3_check(&ci(3, &[2], None)), Err(Error::NotApplicable(_))));
        assert!(matches!(
            cond3_check(&ci(4, &[2], Some(1))),
            Err(Error::NotApplicable(_))
        ));
        // the same quadric 3-fold as a 4-equation intersection: the table says
        // true, the exact numbers say false
        let c = cond3_check(&ci(7, &[1, 1, 1, 2], None)).unwrap();
        assert_eq!((c.c3.clone(), c.c111.clone()), (int(3), int(-5)));
        assert!(!c.predicate && c.table_case && !c.parity_case);
    }

    #[test]
    fn reports() {
        let r = build_report(&ci(2, &[2], Some(2))).unwrap();
        assert_eq!(r.corollary_ii_verdict(), Verdict::IncompressibleProven);
        assert_eq!(r.myex_verdict(), Some(true));
        assert_eq!(r.overall, Verdict::IncompressibleProven);
        assert_eq!(r.per_prime[&2].eta_p, Some(int(-1)));

        let r = build_report(&ci(3, &[], Some(1))).unwrap();
        assert!(r.sanity_i);
        assert_eq!(r.overall, Verdict::NotDecided);
        assert!(r.verdicts.iter().all(|v| v.verdict != Verdict::IncompressibleProven));

        let r = build_report(&ci(3, &[4], Some(4))).unwrap();
        assert_eq!(r.chi, int(2));
        assert_eq!(r.tau_d_minus_1, int(2));
        assert!(r.sanity_i);
        assert_eq!(r.corollary_ii_verdict(), Verdict::NotDecided);
        assert_eq!(r.overall, Verdict::NotDecided);
        assert_eq!(r.myex_verdict(), Some(false));
        assert_eq!(r.per_prime[&3].u_p, int(16));
        assert_eq!(r.per_prime[&2].u_p, int(-12));

        let r = build_report(&ci(4, &[3], None)).unwrap();
        assert!(r.cond3.is_some());
        assert_eq!(r.verdict("prime-dimension(p=4)"), Some(Verdict::NotApplicable));
    }

    #[test]
    fn report_json_round_trip() {
        let r = build_report(&ci(5, &[2, 3], Some(3))).unwrap();
        let s = serde_json::to_string(&r).unwrap();
        let back: IncompressibilityReport = serde_json::from_str(&s).unwrap();
        assert_eq!(back, r);
    }
}
