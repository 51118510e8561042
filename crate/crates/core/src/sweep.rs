//! Exhaustive invariant checks over a box of complete intersections.
//!
//! Each check walks every variety from
//! [`complete_intersections_up_to`](crate::variety::complete_intersections_up_to)
//! and counts the cases where a proven identity fails. All checks are exact.

use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::arith::{
    divides, divisors, factorial_valuation, int, primes_up_to, rat, rat_from_int, todd_number, Integer, Rational,
};
use crate::criteria;
use crate::error::Result;
use crate::symfun::{self, Partition};
use crate::variety::{self, complete_intersections_up_to, CharNumberTable, CompleteIntersection};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepConfig {
    #[serde(with = "crate::decimal")]
    pub max_dim: u32,
    #[serde(with = "crate::decimal")]
    pub max_degree: u32,
    #[serde(with = "crate::decimal")]
    pub max_m: u32,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            max_dim: 5,
            max_degree: 5,
            max_m: 3,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckResult {
    /// Short stable identifier.
    pub id: String,
    pub name: String,
    #[serde(with = "crate::decimal")]
    pub cases: u64,
    #[serde(with = "crate::decimal")]
    pub failures: u64,
    /// First failing case, if any.
    pub example: Option<String>,
}

impl CheckResult {
    fn new(id: &str, name: &str) -> Self {
        CheckResult {
            id: id.to_string(),
            name: name.to_string(),
            cases: 0,
            failures: 0,
            example: None,
        }
    }

    fn record(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures += 1;
            if self.example.is_none() {
                self.example = Some(describe());
            }
        }
    }

    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

fn closed_form_chi(table: &CharNumberTable) -> Option<Rational> {
    let c = |s: &str| -> Rational {
        let alpha: Partition = s.parse().expect("literal partition");
        rat_from_int(table.entries[&alpha].clone())
    };
    match table.variety.dim() {
        1 => Some(rat(-1, 2) * c("1")),
        2 => Some(rat(1, 4) * c("1,1") + rat(1, 6) * c("2")),
        3 => Some(rat(-1, 8) * c("1,1,1") - rat(1, 12) * c("1,2") - rat(1, 24) * c("3")),
        _ => None,
    }
}

/// Runs every check and returns one row per invariant.
pub fn run(config: &SweepConfig) -> Result<Vec<CheckResult>> {
    let varieties = complete_intersections_up_to(config.max_dim, config.max_m, config.max_degree);

    let mut chi_routes = CheckResult::new("chi-routes", "chi: residue = characteristic-number sum");
    let mut closed_forms = CheckResult::new("closed-forms", "chi: curve/surface/3-fold closed forms");
    let mut product_divides = CheckResult::new("product-divides", "prod d_i | c_alpha");
    let mut lambda_div = CheckResult::new("lambda-divides", "p | c_alpha for alpha in Lambda_p");
    let mut corollary_i = CheckResult::new("corollary-i", "corollary i): n_X | chi * tau_dim");
    let mut up_equiv = CheckResult::new("u-p-equivalence", "n !| chi*tau_(d-1) <=> exists p: n !| u_p");
    let mut myex_implies = CheckResult::new(
        "prime-dimension-implies-ii",
        "prime-dimension criterion => corollary ii)",
    );
    let mut cond3 = CheckResult::new("cond3-table", "3-fold parity predicate = m mod 4 table");

    for x in &varieties {
        // both characteristic-number routes are compared inside compute()
        let table = CharNumberTable::compute(x)?;
        let residue = variety::euler_char_residue(x)?;
        let via_table = variety::euler_char_from_table(&table)?;
        chi_routes.record(residue == via_table, || format!("{x}: {residue} vs {via_table}"));

        if let Some(q) = closed_form_chi(&table) {
            closed_forms.record(q == rat_from_int(residue.clone()), || format!("{x}: {q}"));
        }

        let product = x.degree_product();
        for (alpha, c) in &table.entries {
            product_divides.record(divides(&product, c), || format!("{x}: c_{alpha} = {c}"));
            for p in primes_up_to(x.dim() as u64 + 1) {
                if symfun::in_lambda_p(alpha, p as u32) {
                    lambda_div.record(divides(&int(p as i64), c), || format!("{x}: p={p}, c_{alpha} = {c}"));
                }
            }
        }

        corollary_i.record(divides(x.point_index(), &(&residue * todd_number(x.dim()))), || {
            format!("{x}: chi = {residue}")
        });

        let product_u64 = product.to_u64().unwrap_or(u64::MAX);
        for n in divisors(product_u64) {
            let n = Integer::from(n);
            let (lhs, rhs) = criteria::u_p_equivalence(&table, &residue, &n)?;
            up_equiv.record(lhs == rhs, || format!("{x}, n = {n}: {lhs} vs {rhs}"));

            let with_n = x.with_point_index(n.clone())?;
            if let Some(true) = criteria::myex_criterion(&with_n, x.dim() + 1) {
                let ii = criteria::corollary_from_data(residue.clone(), x.dim(), n.clone());
                myex_implies.record(ii.incompressible_by_ii, || format!("{x}, n_X = {n}"));
            }
        }

        if x.dim() == 3 {
            let c = criteria::cond3_check(x)?;
            cond3.record(c.table_agrees(), || {
                format!("{x}: C_(3) = {}, C_(1,1,1) = {}", c.c3, c.c111)
            });
        }
    }

    Ok(vec![
        chi_routes,
        closed_forms,
        product_divides,
        lambda_div,
        corollary_i,
        up_equiv,
        myex_implies,
        cond3,
        valuation_inequality(12, 13),
    ])
}

/// `v_p(τ_{d-1}) + 1 >= v_p(∏(α_i+1)!)` for every partition of `d`, with
/// equality exactly on `Λ_p`.
pub fn valuation_inequality(max_d: u32, max_p: u64) -> CheckResult {
    let mut check = CheckResult::new(
        "valuation-inequality",
        "v_p(tau_(d-1)) + 1 >= v_p(prod (a_i+1)!), equality iff Lambda_p",
    );
    for d in 1..=max_d {
        for p in primes_up_to(max_p) {
            let lhs = (d as u64 - 1) / (p - 1) + 1;
            for alpha in symfun::partitions_of(d) {
                let rhs: u64 = alpha
                    .parts()
                    .iter()
                    .map(|&a| factorial_valuation(a as u64 + 1, p))
                    .sum();
                let in_lambda = symfun::in_lambda_p(&alpha, p as u32);
                check.record(lhs >= rhs && (lhs == rhs) == in_lambda, || {
                    format!("d={d}, p={p}, alpha={alpha}: {lhs} vs {rhs}")
                });
            }
        }
    }
    check
}

/// Whether `p^r ∤ χ(O_Y) τ_{p-2}` for the degree-`p^r` hypersurface `Y ⊂ P^p`
/// with `n_Y = p^r`.
pub fn prime_power_hypersurface_obstructed(p: u32, r: u32) -> Result<(CompleteIntersection, Integer, bool)> {
    let degree = p.pow(r);
    let y = CompleteIntersection::hypersurface(p, degree, Some(Integer::from(degree)))?;
    let chi = variety::euler_char(&y)?;
    let value = &chi * todd_number(p - 2);
    let obstructed = !divides(y.point_index(), &value);
    Ok((y, chi, obstructed))
}
