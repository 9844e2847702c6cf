//! Exact verification of the Cherednik-Macdonald-Mehta identity in both
//! closed forms, the character-expansion corollary, and the lambda/mu
//! symmetry of the right-hand side.
//!
//! The left-hand side is the Gaussian-weighted inner product
//!
//!   LHS = (1/|W|) int delta_k bar(delta_k) P_lambda bar(P_mu) gamma dx
//!       = (1/|W|) int delta  bar(delta)  phi_lambda bar(phi_mu) gamma dx
//!
//! (both forms are computed and must agree). The two closed forms are
//!
//!   RHS1 = q^{lambda^2 + (mu, mu+2k rho)} P_mu(q^{-2(lambda+k rho)})
//!          * q^{-2k(k-1)|R_+|} prod_{alpha>0} prod_{i=0}^{k-1}
//!            (1 - q^{2(alpha, lambda+k rho) + 2i})
//!
//!   RHS8 = q^{(lambda+k rho)^2 + (mu+k rho)^2} phi_mu(q^{-2(lambda+k rho)})
//!          * (prod_{alpha>0}(1 - q^{2(alpha, rho)})) q^{-2 rho^2}
//!          * ||P_lambda||^2 dim_q L_{lambda+(k-1) rho}
//!
//! All three are rational functions of q compared by cross-multiplication;
//! nothing here has a tolerance.

use crate::algebra::{
    char_expand, delta_k, q_dimension, weyl_character, weyl_denominator, WeightPoly,
};
use crate::laurent::{rat, rat_int, rational_eq, LaurentQ, RationalQ};
use crate::macdonald::{macdonald_poly, norm_direct, norm_formula, phi};
use crate::report::{IdentityId, ReportParams, ReportValue, VerificationReport};
use crate::roots::{star, RootSystem, Weight};
use num_rational::BigRational;
use num_traits::One;
use rayon::prelude::*;
use std::collections::BTreeMap;
use std::time::Instant;

/// One instance of the identity: rank parameter n, deformation k >= 1,
/// and a pair of dominant lattice weights.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct CmmInstance {
    pub n: usize,
    pub k: i64,
    pub lam: Weight,
    pub mu: Weight,
}

impl CmmInstance {
    pub fn new(n: usize, k: i64, lam: Weight, mu: Weight) -> Self {
        assert!(k >= 1, "k must be a positive integer");
        assert!(lam.rank() == n && mu.rank() == n);
        assert!(lam.is_dominant() && lam.is_in_weight_lattice());
        assert!(mu.is_dominant() && mu.is_in_weight_lattice());
        CmmInstance { n, k, lam, mu }
    }

    pub fn params(&self) -> ReportParams {
        let rs = RootSystem::new(self.n);
        ReportParams {
            n: Some(self.n),
            k: Some(self.k),
            lambda: Some(fund_label(&rs, &self.lam)),
            mu: Some(fund_label(&rs, &self.mu)),
            order: None,
        }
    }
}

fn fund_label(rs: &RootSystem, w: &Weight) -> String {
    rs.fundamental_coeffs(w)
        .iter()
        .map(|c| c.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

fn w_order(n: usize) -> i64 {
    (1..=n as i64).product()
}

/// sum over the support of kernel * v of the Gaussian weight:
/// int kernel * v * gamma dx without materializing the product.
fn pair_with_gaussian(kernel: &WeightPoly, v: &WeightPoly) -> LaurentQ {
    let mut acc = LaurentQ::zero();
    for (t, ct) in kernel.terms() {
        for (u, cu) in v.terms() {
            let w = t + u;
            debug_assert!(w.is_in_weight_lattice());
            acc = &acc + &(ct * cu).mul_monomial(&BigRational::one(), &w.norm());
        }
    }
    acc
}

/// The Gaussian-weighted inner product, computed independently through
/// the delta_k kernel on P_lambda bar(P_mu) and through the Weyl kernel
/// on phi_lambda bar(phi_mu); an internal mismatch is a hard error.
pub fn cmm_lhs(inst: &CmmInstance) -> RationalQ {
    let CmmInstance { n, k, lam, mu } = inst;
    let pl = macdonald_poly(lam, *k);
    let pm = macdonald_poly(mu, *k);
    let v = pl.num() * &pm.num().bar();
    let den = &pl.den().clone() * pm.den();
    let scale = rat(1, w_order(*n));

    let dk = delta_k(*n, *k).expect("k validated");
    let kernel_k = &dk * &dk.bar();
    let first = RationalQ::new(pair_with_gaussian(&kernel_k, &v).scale(&scale), den.clone());

    let phi0 = crate::macdonald::phi_zero(*n, *k);
    let d = weyl_denominator(*n);
    let kernel_1 = &d * &d.bar();
    let v_phi = &(&phi0 * &phi0.bar()) * &v;
    let second = RationalQ::new(pair_with_gaussian(&kernel_1, &v_phi).scale(&scale), den);

    assert!(
        rational_eq(&first, &second),
        "internal mismatch between the delta_k and phi forms of the left-hand side"
    );
    first.reduced()
}

/// First closed form of the right-hand side.
pub fn cmm_rhs_eq1(inst: &CmmInstance) -> RationalQ {
    let CmmInstance { n, k, lam, mu } = inst;
    let rs = RootSystem::new(*n);
    let lam_kr = lam + &rs.rho().scale(&rat_int(*k));
    let two_k_rho = rs.rho().scale(&rat_int(2 * *k));

    let expo = lam.norm() + mu.inner(&(mu + &two_k_rho))
        - rat_int(2 * *k * (*k - 1) * rs.num_pos_roots() as i64);
    let mut prod = LaurentQ::q_pow(expo);
    for alpha in rs.pos_roots() {
        let base = alpha.inner(&lam_kr) * rat_int(2);
        for i in 0..*k {
            let factor = &LaurentQ::one() - &LaurentQ::q_pow(&base + rat_int(2 * i));
            prod = &prod * &factor;
        }
    }
    let eval = macdonald_poly(mu, *k).eval(&lam_kr, &rat_int(-2));
    &RationalQ::from_laurent(prod) * &eval
}

/// Second closed form of the right-hand side. The closed-form norm
/// product is asserted to agree with the direct constant-term norm.
pub fn cmm_rhs_eq8(inst: &CmmInstance) -> RationalQ {
    let CmmInstance { n, k, lam, mu } = inst;
    let rs = RootSystem::new(*n);
    let k_rho = rs.rho().scale(&rat_int(*k));
    let lam_kr = lam + &k_rho;
    let mu_kr = mu + &k_rho;

    let expo = lam_kr.norm() + mu_kr.norm() - rs.rho().norm() * rat_int(2);
    let mut scalar = LaurentQ::q_pow(expo);
    for alpha in rs.pos_roots() {
        let e = alpha.inner(rs.rho()) * rat_int(2);
        scalar = &scalar * &(&LaurentQ::one() - &LaurentQ::q_pow(e));
    }
    let dim = q_dimension(&(lam + &rs.rho().scale(&rat_int(*k - 1))));
    scalar = &scalar * &dim;

    let norm = norm_direct(lam, *k);
    assert!(
        rational_eq(&norm, &norm_formula(lam, *k)),
        "norm product disagrees with the direct norm"
    );
    let eval = phi(mu, *k).eval(&lam_kr, &rat_int(-2));
    &(&RationalQ::from_laurent(scalar) * &eval) * &norm
}

/// Full joint check: LHS = RHS1 = RHS8 under cross-multiplication; the
/// report carries all three values (RHS8 as the auxiliary one).
pub fn verify_cmm(inst: &CmmInstance) -> VerificationReport {
    let start = Instant::now();
    let lhs = cmm_lhs(inst);
    let rhs1 = cmm_rhs_eq1(inst);
    let rhs8 = cmm_rhs_eq8(inst);
    VerificationReport::new(
        IdentityId::Eq1,
        inst.params(),
        ReportValue::Rational(lhs),
        ReportValue::Rational(rhs1),
        start.elapsed(),
    )
    .with_alt(ReportValue::Rational(rhs8))
}

/// LHS against the first closed form only.
pub fn verify_eq1(inst: &CmmInstance) -> VerificationReport {
    let start = Instant::now();
    let lhs = cmm_lhs(inst);
    let rhs = cmm_rhs_eq1(inst);
    VerificationReport::new(
        IdentityId::Eq1,
        inst.params(),
        ReportValue::Rational(lhs),
        ReportValue::Rational(rhs),
        start.elapsed(),
    )
}

/// LHS against the second closed form only.
pub fn verify_eq8(inst: &CmmInstance) -> VerificationReport {
    let start = Instant::now();
    let lhs = cmm_lhs(inst);
    let rhs = cmm_rhs_eq8(inst);
    VerificationReport::new(
        IdentityId::Eq8,
        inst.params(),
        ReportValue::Rational(lhs),
        ReportValue::Rational(rhs),
        start.elapsed(),
    )
}

/// Character-expansion corollary: for a finitely supported coefficient
/// map a on dominant weights,
///
///   (1/|W|) int delta bar(delta) phi_lam bar(phi_mu) (sum_nu a_nu chi_nu) dx
///     = sum_nu a_{nu*} C^nu_{lam,mu}
///
/// where the C^nu are the character-basis coefficients of
/// phi_lam bar(phi_mu) and nu* = -w_0(nu).
pub fn verify_eq7(
    lam: &Weight,
    mu: &Weight,
    k: i64,
    a: &BTreeMap<Weight, LaurentQ>,
) -> VerificationReport {
    let start = Instant::now();
    let n = lam.rank();
    let rs = RootSystem::new(n);
    let fl = phi(lam, k);
    let fm = phi(mu, k);
    let den = &fl.den * &fm.den;
    let v = &fl.num * &fm.num.bar();

    let mut a_poly = WeightPoly::zero();
    for (nu, c) in a {
        assert!(nu.is_dominant() && nu.is_in_weight_lattice());
        a_poly = &a_poly + &weyl_character(nu).expect("dominant lattice weight").scale(c);
    }
    let d = weyl_denominator(n);
    let ka = &(&d * &d.bar()) * &a_poly;
    let mut ct = LaurentQ::zero();
    for (u, cu) in v.terms() {
        let kc = ka.coeff(&-u);
        if !kc.is_zero() {
            ct = &ct + &(cu * &kc);
        }
    }
    let lhs = RationalQ::new(ct.scale(&rat(1, w_order(n))), den.clone());

    let coeffs = char_expand(&v).expect("phi products are W-invariant lattice elements");
    let mut rhs_num = LaurentQ::zero();
    for (nu, c_nu) in &coeffs {
        if let Some(a_val) = a.get(&star(nu)) {
            rhs_num = &rhs_num + &(c_nu * a_val);
        }
    }
    let rhs = RationalQ::new(rhs_num, den);

    let params = ReportParams {
        n: Some(n),
        k: Some(k),
        lambda: Some(fund_label(&rs, lam)),
        mu: Some(fund_label(&rs, mu)),
        order: None,
    };
    VerificationReport::new(
        IdentityId::Eq7,
        params,
        ReportValue::Rational(lhs),
        ReportValue::Rational(rhs),
        start.elapsed(),
    )
}

/// The right-hand side is symmetric in (lambda, mu).
pub fn verify_symmetry(inst: &CmmInstance) -> VerificationReport {
    let start = Instant::now();
    let swapped = CmmInstance::new(inst.n, inst.k, inst.mu.clone(), inst.lam.clone());
    let lhs = cmm_rhs_eq8(inst);
    let rhs = cmm_rhs_eq8(&swapped);
    VerificationReport::new(
        IdentityId::Symmetry,
        inst.params(),
        ReportValue::Rational(lhs),
        ReportValue::Rational(rhs),
        start.elapsed(),
    )
}

/// Direct norm against the closed-form product.
pub fn verify_norm(n: usize, k: i64, lam: &Weight) -> VerificationReport {
    let start = Instant::now();
    assert_eq!(lam.rank(), n);
    let rs = RootSystem::new(n);
    let lhs = norm_direct(lam, k);
    let rhs = norm_formula(lam, k);
    let params = ReportParams {
        n: Some(n),
        k: Some(k),
        lambda: Some(fund_label(&rs, lam)),
        mu: None,
        order: None,
    };
    VerificationReport::new(
        IdentityId::Norm,
        params,
        ReportValue::Rational(lhs),
        ReportValue::Rational(rhs),
        start.elapsed(),
    )
}

/// All dominant weights with fundamental coefficients in 0..=max_coeff.
pub fn dominant_grid(n: usize, max_coeff: i64) -> Vec<Weight> {
    let rs = RootSystem::new(n);
    let m = n - 1;
    let mut out = Vec::new();
    let mut coeffs = vec![0i64; m];
    'outer: loop {
        out.push(rs.from_fundamental(&coeffs).expect("nonnegative"));
        for i in 0..m {
            if coeffs[i] < max_coeff {
                coeffs[i] += 1;
                continue 'outer;
            }
            coeffs[i] = 0;
        }
        break;
    }
    out.sort();
    out
}

/// The default verification grid: n=2 with k in {1,2,3} and coefficients
/// up to 3, n=3 with k in {1,2} and coefficients up to 2. Instances are
/// sorted by parameters so aggregation order is deterministic.
pub fn default_cmm_instances() -> Vec<CmmInstance> {
    let mut out = Vec::new();
    out.extend(cmm_instances_for(2, &[1, 2, 3], 3));
    out.extend(cmm_instances_for(3, &[1, 2], 2));
    out.sort();
    out
}

/// Grid of instances for one rank: all ordered pairs of dominant weights
/// with fundamental coefficients up to `max_coeff`, for each listed k.
pub fn cmm_instances_for(n: usize, ks: &[i64], max_coeff: i64) -> Vec<CmmInstance> {
    let grid = dominant_grid(n, max_coeff);
    let mut out = Vec::new();
    for &k in ks {
        for lam in &grid {
            for mu in &grid {
                out.push(CmmInstance::new(n, k, lam.clone(), mu.clone()));
            }
        }
    }
    out.sort();
    out
}

/// Runs one verifier over a slice of instances in parallel, preserving
/// input order in the output.
pub fn run_parallel<T, F>(items: &[T], f: F) -> Vec<VerificationReport>
where
    T: Sync,
    F: Fn(&T) -> VerificationReport + Sync + Send,
{
    items.par_iter().map(f).collect()
}

fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9e3779b97f4a7c15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
    z ^ (z >> 31)
}

/// Deterministic pseudo-random coefficient maps for the corollary check:
/// up to three dominant support weights with small monomial coefficients
/// c * q^e, c in [-3,3] \ {0}, e in [-2,2]. The same (n, count, seed)
/// always produces the same maps.
pub fn seeded_coefficient_maps(
    n: usize,
    count: usize,
    seed: u64,
) -> Vec<BTreeMap<Weight, LaurentQ>> {
    let rs = RootSystem::new(n);
    let candidates: Vec<Weight> = rs
        .weights_in_ball(&rat_int(6))
        .into_iter()
        .filter(|w| w.is_dominant())
        .collect();
    let mut state = seed;
    let mut out = Vec::with_capacity(count);
    for _ in 0..count {
        let mut map = BTreeMap::new();
        let support = 1 + (splitmix64(&mut state) % 3) as usize;
        for _ in 0..support {
            let idx = (splitmix64(&mut state) % candidates.len() as u64) as usize;
            let c = 1 + (splitmix64(&mut state) % 3) as i64;
            let c = if splitmix64(&mut state) % 2 == 0 { c } else { -c };
            let e = (splitmix64(&mut state) % 5) as i64 - 2;
            map.insert(
                candidates[idx].clone(),
                LaurentQ::monomial(rat_int(c), rat_int(e)),
            );
        }
        out.push(map);
    }
    out
}
