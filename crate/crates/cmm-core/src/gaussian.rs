//! The weight-lattice Gaussian gamma = sum_{lambda in P} e^lambda
//! q^{lambda^2} (the theta function of P), its exact pairing against
//! finite elements, truncated series forms, and the q-series identities
//! built on it.
//!
//! The pairing int f * gamma dx = sum_lambda f_lambda q^{lambda^2} is a
//! finite sum because f has finite support, so Gaussian-weighted inner
//! products are computed *exactly*; truncation only ever enters when an
//! identity equates two infinite series, and then both sides are compared
//! up to a stated, guaranteed-complete q-order.

use crate::algebra::{q_dimension, weyl_character, WeightPoly};
use crate::error::Error;
use crate::laurent::{qbracket, rat, rat_int, LaurentQ, QExp};
use crate::report::{IdentityId, ReportParams, ReportValue, VerificationReport};
use crate::roots::{RootSystem, Weight};
use num_rational::BigRational;
use num_traits::{One, Signed};
use std::time::Instant;

/// int f * gamma dx, exactly. Errors when the support of f leaves the
/// weight lattice (the Gaussian is only summed over P).
pub fn gaussian_pairing(f: &WeightPoly) -> Result<LaurentQ, Error> {
    let mut acc = LaurentQ::zero();
    for (w, c) in f.terms() {
        if !w.is_in_weight_lattice() {
            return Err(Error::HalfWeightSupport);
        }
        acc = &acc + &c.mul_monomial(&BigRational::one(), &w.norm());
    }
    Ok(acc)
}

/// The Gaussian truncated to lattice weights with norm <= `order`.
#[derive(Debug, Clone)]
pub struct TruncatedGaussian {
    pub n: usize,
    pub order: BigRational,
    pub terms: WeightPoly,
}

/// Sum of e^lambda q^{lambda^2} over the norm ball of radius N.
pub fn gaussian_truncated(n: usize, order: &BigRational) -> TruncatedGaussian {
    assert!(!order.is_negative(), "truncation order must be nonnegative");
    let rs = RootSystem::new(n);
    let mut terms = WeightPoly::zero();
    for w in rs.weights_in_ball(order) {
        let norm = w.norm();
        terms.insert_add(w, &LaurentQ::q_pow(norm));
    }
    TruncatedGaussian { n, order: order.clone(), terms }
}

fn fmt_order(o: &BigRational) -> String {
    if o.denom().is_one() {
        o.numer().to_string()
    } else {
        format!("{}/{}", o.numer(), o.denom())
    }
}

fn fund_label(rs: &RootSystem, w: &Weight) -> String {
    rs.fundamental_coeffs(w)
        .iter()
        .map(|c| c.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

/// maxdeg(dim_q L_nu) = (nu, 2 rho), read off the hook-style product;
/// used to bound which dominant weights can contribute below a given
/// q-order.
pub fn dim_q_maxdeg(nu: &Weight) -> QExp {
    let rs = RootSystem::new(nu.rank());
    nu.inner(&rs.rho().scale(&rat_int(2)))
}

/// Coefficient-of-e^mu check for the Gaussian expansion
///
///   gamma = (prod_{alpha>0}(1 - q^{2(alpha,rho)}))
///           * sum_{nu in P_+} q^{(nu, nu+2rho)} (dim_q L_nu) chi_nu
///
/// truncated to q-exponents <= N. A dominant nu contributes below order
/// N only when (nu, nu+2rho) - maxdeg(dim_q L_nu) = (nu, nu) <= N.
pub fn prop1_coefficient_check(
    n: usize,
    mu: &Weight,
    order: &BigRational,
) -> VerificationReport {
    assert!(!order.is_negative());
    let start = Instant::now();
    let rs = RootSystem::new(n);

    let lhs = if mu.norm() <= *order && mu.is_in_weight_lattice() {
        LaurentQ::q_pow(mu.norm())
    } else {
        LaurentQ::zero()
    };

    let mut prefactor = LaurentQ::one();
    for alpha in rs.pos_roots() {
        let e = alpha.inner(rs.rho()) * rat_int(2);
        prefactor = &prefactor * &(&LaurentQ::one() - &LaurentQ::q_pow(e));
    }

    let two_rho = rs.rho().scale(&rat_int(2));
    let mut sum = LaurentQ::zero();
    for nu in rs.weights_in_ball(order) {
        if !nu.is_dominant() {
            continue;
        }
        let casimir = nu.inner(&(&nu + &two_rho));
        if &casimir - dim_q_maxdeg(&nu) > *order {
            continue;
        }
        let chi = weyl_character(&nu).expect("dominant lattice weight");
        let c = chi.coeff(mu);
        if c.is_zero() {
            continue;
        }
        let term = &q_dimension(&nu).mul_monomial(&BigRational::one(), &casimir) * &c;
        sum = &sum + &term;
    }
    let rhs = (&prefactor * &sum).truncate_above(order);
    let lhs = lhs.truncate_above(order);

    let params = ReportParams {
        n: Some(n),
        k: None,
        lambda: None,
        mu: Some(mu_label(&rs, mu)),
        order: Some(fmt_order(order)),
    };
    VerificationReport::new(
        IdentityId::Prop1,
        params,
        ReportValue::Laurent(lhs),
        ReportValue::Laurent(rhs),
        start.elapsed(),
    )
}

/// Labels for report parameters; non-lattice weights fall back to raw
/// coordinates.
fn mu_label(rs: &RootSystem, mu: &Weight) -> String {
    if mu.is_in_weight_lattice() {
        fund_label(rs, mu)
    } else {
        mu.to_string()
    }
}

/// Full weight string x^m + x^{m-2} + ... + x^{-m} of the (m+1)-dimensional
/// rank-2 representation, with x = e^{omega_1}.
fn a1_weight_string(omega1: &Weight, m: i64) -> WeightPoly {
    let mut out = WeightPoly::zero();
    let mut j = -m;
    while j <= m {
        out.insert_add(omega1.scale(&rat_int(j)), &LaurentQ::one());
        j += 2;
    }
    out
}

/// The rank-2 instance of the Gaussian expansion, stated as
///
///   sum_{m>=0} q^{m(m+2)/2} [m+1] (x^m + x^{m-2} + ... + x^{-m})
///     = (1/(1-q^2)) sum_{l in Z} x^l q^{l^2/2}
///
/// with x = e^{omega_1}. Both sides are built with the (1-q^2)
/// denominator cleared and compared coefficient-by-coefficient up to
/// q-order N. The m-term has minimal q-exponent m^2/2, so only finitely
/// many terms reach below any order.
pub fn verify_eq5(order: &BigRational) -> VerificationReport {
    assert!(!order.is_negative());
    let start = Instant::now();
    let rs = RootSystem::new(2);
    let omega1 = rs.fundamental_weights()[0].clone();

    let one_minus_q2 = &LaurentQ::one() - &LaurentQ::q_pow(rat_int(2));
    let mut lhs = WeightPoly::zero();
    let mut m = 0i64;
    while rat(m * m, 2) <= *order {
        let string = a1_weight_string(&omega1, m);
        let coeff = &qbracket(m + 1)
            .mul_monomial(&BigRational::one(), &rat(m * (m + 2), 2))
            * &one_minus_q2;
        lhs = &lhs + &string.scale(&coeff);
        m += 1;
    }
    let lhs = lhs.truncate_q_above(order);

    let mut rhs = WeightPoly::zero();
    let mut l = 0i64;
    while rat(l * l, 2) <= *order {
        for s in if l == 0 { vec![0] } else { vec![l, -l] } {
            rhs.insert_add(omega1.scale(&rat_int(s)), &LaurentQ::q_pow(rat(l * l, 2)));
        }
        l += 1;
    }

    let params = ReportParams {
        n: Some(2),
        k: None,
        lambda: None,
        mu: None,
        order: Some(fmt_order(order)),
    };
    VerificationReport::new(
        IdentityId::Eq5,
        params,
        ReportValue::Series(lhs),
        ReportValue::Series(rhs),
        start.elapsed(),
    )
}

/// Formal evaluation identity of the Gaussian:
///
///   gamma(q^{2(lambda+rho)}) = q^{-(lambda, lambda+2rho)} gamma(q^{2rho}).
///
/// Both sides are q-series obtained from the ball truncation of gamma at
/// radius N. Weights outside the ball shift exponents by at most the
/// Cauchy-Schwarz bound, so the sides are guaranteed complete up to
///
///   N_min = min(N/2 - 2(lambda+rho)^2, N/2 - 2 rho^2 - (lambda, lambda+2rho)),
///
/// which is the comparison order recorded in the report.
pub fn gaussian_eval_property(lam: &Weight, order: &BigRational) -> VerificationReport {
    assert!(lam.is_dominant() && lam.is_in_weight_lattice());
    assert!(!order.is_negative());
    let start = Instant::now();
    let n = lam.rank();
    let rs = RootSystem::new(n);
    let rho = rs.rho();
    let shift = lam.inner(&(lam + &rho.scale(&rat_int(2))));

    let gauss = gaussian_truncated(n, order);
    let lhs_series = gauss.terms.eval(&(lam + rho), &rat_int(2));
    let rhs_series = gauss
        .terms
        .eval(rho, &rat_int(2))
        .mul_monomial(&BigRational::one(), &-shift.clone());

    let lhs_complete = order / rat_int(2) - (lam + rho).norm() * rat_int(2);
    let rhs_complete = order / rat_int(2) - rho.norm() * rat_int(2) - &shift;
    let n_min = lhs_complete.min(rhs_complete);

    let lhs = lhs_series.truncate_above(&n_min);
    let rhs = rhs_series.truncate_above(&n_min);

    let params = ReportParams {
        n: Some(n),
        k: None,
        lambda: Some(fund_label(&rs, lam)),
        mu: None,
        order: Some(fmt_order(&n_min)),
    };
    VerificationReport::new(
        IdentityId::GaussEval,
        params,
        ReportValue::Laurent(lhs),
        ReportValue::Laurent(rhs),
        start.elapsed(),
    )
}

/// Smallest ball radius N whose `gaussian_eval_property` comparison order
/// is at least `target`.
pub fn ball_order_for_guaranteed(lam: &Weight, target: &BigRational) -> BigRational {
    let rs = RootSystem::new(lam.rank());
    let rho = rs.rho();
    let shift = lam.inner(&(lam + &rho.scale(&rat_int(2))));
    let a = (target + (lam + rho).norm() * rat_int(2)) * rat_int(2);
    let b = (target + rho.norm() * rat_int(2) + shift) * rat_int(2);
    a.max(b)
}
