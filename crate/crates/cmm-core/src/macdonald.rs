//! Macdonald's inner product, Macdonald polynomials at parameters
//! (q^2, t = q^{2k}), the generalized characters phi_lambda, and both
//! routes to the norm ||P_lambda||^2.
//!
//! The inner product is the constant-term functional
//!
//!   <f, g>_k = (1/|W|) int delta_k bar(delta_k) f bar(g) dx
//!
//! and P_lambda is the unique element m_lambda + sum_{mu < lambda} c_mu
//! m_mu orthogonal to every m_mu with mu strictly below lambda in
//! dominance. The coefficients are obtained from a fraction-free
//! (Bareiss) elimination over `LaurentQ`, which keeps all intermediate
//! arithmetic in the polynomial ring; the solution is stored with one
//! cleared common denominator. k = 1 degenerates to Weyl characters.
//!
//! phi_0 = delta_k/delta as a finite product, phi_lambda = phi_0 *
//! P_lambda, and the norm identity
//!
//!   ||P_lambda||^2 = prod_{alpha>0} prod_{i=1}^{k-1}
//!       (1 - q^{-2(alpha, lambda+k rho) - 2i}) / (1 - q^{-2(alpha, lambda+k rho) + 2i})
//!
//! is checked against the direct constant-term value on every grid the
//! verifier runs.

use crate::algebra::{delta_k, monomial_symmetric, weyl_denominator, WeightPoly};
use crate::laurent::{laurent_gcd, rat, rat_int, LaurentQ, RationalQ};
use crate::roots::{display_cmp, RootSystem, Weight};
use num_rational::BigRational;
use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::sync::{Mutex, OnceLock};

/// Constant term of kernel * f * bar(g) without materializing the
/// product: sum over f_a g_b kernel_{b-a}.
fn kernel_const_term(kernel: &WeightPoly, f: &WeightPoly, g: &WeightPoly) -> LaurentQ {
    let mut acc = LaurentQ::zero();
    for (a, ca) in f.terms() {
        for (b, cb) in g.terms() {
            let kc = kernel.coeff(&(b - a));
            if kc.is_zero() {
                continue;
            }
            acc = &acc + &(&(ca * cb) * &kc);
        }
    }
    acc
}

/// Macdonald's inner product <f, g>_k for plain lattice elements.
pub fn inner_product_k(f: &WeightPoly, g: &WeightPoly, n: usize, k: i64) -> LaurentQ {
    assert!(k >= 1, "inner product needs k >= 1");
    let dk = delta_k(n, k).expect("k validated");
    let kernel = &dk * &dk.bar();
    let w_order: i64 = (1..=n as i64).product();
    kernel_const_term(&kernel, f, g).scale(&rat(1, w_order))
}

/// A W-invariant element with a cleared common denominator:
/// num/den where num is an integral `WeightPoly` and den a `LaurentQ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalWeightPoly {
    pub num: WeightPoly,
    pub den: LaurentQ,
}

impl RationalWeightPoly {
    pub fn eval(&self, at: &Weight, scale: &BigRational) -> RationalQ {
        RationalQ::new(self.num.eval(at, scale), self.den.clone())
    }
}

/// A Macdonald polynomial P_lambda at parameter k, stored both as a map
/// of m-basis coefficients (numerators over one common denominator) and
/// as the expanded exponential-basis numerator.
#[derive(Debug, Clone)]
pub struct MacdonaldPoly {
    lam: Weight,
    k: i64,
    /// dominant mu -> numerator coefficient of m_mu; the entry at lambda
    /// equals `den`, i.e. the m_lambda coefficient is exactly 1.
    m_coeffs: BTreeMap<Weight, LaurentQ>,
    den: LaurentQ,
    num: WeightPoly,
}

impl MacdonaldPoly {
    pub fn lam(&self) -> &Weight {
        &self.lam
    }

    pub fn k(&self) -> i64 {
        self.k
    }

    pub fn den(&self) -> &LaurentQ {
        &self.den
    }

    /// Expanded numerator: den * P_lambda as a weight polynomial.
    pub fn num(&self) -> &WeightPoly {
        &self.num
    }

    pub fn m_coeffs(&self) -> &BTreeMap<Weight, LaurentQ> {
        &self.m_coeffs
    }

    /// Coefficient of m_mu as a rational function.
    pub fn coefficient(&self, mu: &Weight) -> RationalQ {
        RationalQ::new(
            self.m_coeffs.get(mu).cloned().unwrap_or_else(LaurentQ::zero),
            self.den.clone(),
        )
    }

    /// P_lambda(q^{scale * at}).
    pub fn eval(&self, at: &Weight, scale: &BigRational) -> RationalQ {
        RationalQ::new(self.num.eval(at, scale), self.den.clone())
    }

    pub fn as_rational_poly(&self) -> RationalWeightPoly {
        RationalWeightPoly { num: self.num.clone(), den: self.den.clone() }
    }

    /// `P[a] = m[a] + (c)*m[b] + ...` with m-labels in fundamental
    /// coefficients and lower terms in display order.
    pub fn render_m_basis(&self, rs: &RootSystem) -> String {
        let label = |w: &Weight| -> String {
            let cs = rs.fundamental_coeffs(w);
            cs.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",")
        };
        let mut s = format!("P[{}] = m[{}]", label(&self.lam), label(&self.lam));
        let mut lower: Vec<&Weight> = self.m_coeffs.keys().filter(|w| **w != self.lam).collect();
        lower.sort_by(|a, b| display_cmp(a, b));
        for mu in lower {
            let c = self.coefficient(mu);
            let _ = write!(s, " + ({})*m[{}]", c, label(mu));
        }
        s
    }

    /// Exponential-basis rendering `(num)/(den)`, collapsing to the plain
    /// polynomial when the denominator is 1.
    pub fn render_e_basis(&self) -> String {
        if self.den == LaurentQ::one() {
            format!("{}", self.num)
        } else {
            format!("({})/({})", self.num, self.den)
        }
    }
}

fn cache() -> &'static Mutex<BTreeMap<(usize, i64, Weight), MacdonaldPoly>> {
    static CACHE: OnceLock<Mutex<BTreeMap<(usize, i64, Weight), MacdonaldPoly>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(BTreeMap::new()))
}

/// The Macdonald polynomial P_lambda for dominant lattice lambda and
/// k >= 1, memoized behind a thread-safe cache.
pub fn macdonald_poly(lam: &Weight, k: i64) -> MacdonaldPoly {
    assert!(k >= 1, "Macdonald polynomials need k >= 1");
    assert!(lam.is_dominant() && lam.is_in_weight_lattice());
    let key = (lam.rank(), k, lam.clone());
    if let Some(p) = cache().lock().unwrap().get(&key) {
        return p.clone();
    }
    let p = solve_macdonald(lam, k, false);
    cache().lock().unwrap().insert(key, p.clone());
    p
}

/// Gram-Schmidt as a fraction-free linear solve. `reverse` flips the
/// enumeration order of unknowns; the solution must not depend on it.
pub(crate) fn solve_macdonald(lam: &Weight, k: i64, reverse: bool) -> MacdonaldPoly {
    let n = lam.rank();
    let rs = RootSystem::new(n);
    let mut lower: Vec<Weight> = rs
        .lower_dominant_weights(lam)
        .into_iter()
        .filter(|mu| mu != lam)
        .collect();
    if reverse {
        lower.reverse();
    }

    let dk = delta_k(n, k).expect("k validated");
    let kernel = &dk * &dk.bar();
    let mono: Vec<WeightPoly> = lower.iter().map(monomial_symmetric).collect();
    let mono_lam = monomial_symmetric(lam);

    let m = lower.len();
    let mut m_coeffs = BTreeMap::new();
    let den;
    if m == 0 {
        den = LaurentQ::one();
        m_coeffs.insert(lam.clone(), LaurentQ::one());
    } else {
        // G c = b with G[i][j] = <m_{mu_j}, m_{mu_i}>, b[i] = -<m_lam, m_{mu_i}>
        let gram: Vec<Vec<LaurentQ>> = (0..m)
            .map(|i| {
                (0..m)
                    .map(|j| kernel_const_term(&kernel, &mono[j], &mono[i]))
                    .collect()
            })
            .collect();
        let rhs: Vec<LaurentQ> = (0..m)
            .map(|i| -&kernel_const_term(&kernel, &mono_lam, &mono[i]))
            .collect();

        let det = bareiss_det(gram.clone());
        assert!(!det.is_zero(), "singular Gram matrix in Macdonald construction");
        let mut nums: Vec<LaurentQ> = Vec::with_capacity(m);
        for j in 0..m {
            let mut replaced = gram.clone();
            for (i, row) in replaced.iter_mut().enumerate() {
                row[j] = rhs[i].clone();
            }
            nums.push(bareiss_det(replaced));
        }

        // reduce the common fraction by the polynomial gcd of everything
        let mut g = det.clone();
        for c in nums.iter().filter(|c| !c.is_zero()) {
            g = laurent_gcd(&g, c);
        }
        let det_red = det.div_exact(&g);
        // normalize the denominator's lowest term to 1*q^0
        let e0 = det_red.min_exp().unwrap().clone();
        let c0 = det_red.coeff(&e0);
        let unit_c = c0.recip();
        let unit_e = -e0;
        den = det_red.mul_monomial(&unit_c, &unit_e);
        for (mu, c) in lower.iter().zip(nums.iter()) {
            if !c.is_zero() {
                m_coeffs.insert(
                    mu.clone(),
                    c.div_exact(&g).mul_monomial(&unit_c, &unit_e),
                );
            }
        }
        m_coeffs.insert(lam.clone(), den.clone());
    }

    let mut num = WeightPoly::zero();
    for (mu, c) in m_coeffs.iter() {
        num = &num + &monomial_symmetric(mu).scale(c);
    }
    debug_assert_eq!(num.coeff(lam), den, "m_lambda coefficient must be 1");
    MacdonaldPoly { lam: lam.clone(), k, m_coeffs, den, num }
}

/// Fraction-free determinant (one-step Bareiss) over the integral domain
/// `LaurentQ`. Row pivoting with sign tracking handles zero pivots.
fn bareiss_det(mut m: Vec<Vec<LaurentQ>>) -> LaurentQ {
    let n = m.len();
    if n == 0 {
        return LaurentQ::one();
    }
    let mut sign = 1i64;
    let mut prev = LaurentQ::one();
    for k in 0..n {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    sign = -sign;
                }
                None => return LaurentQ::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = &(&m[k][k] * &m[i][j]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = t.div_exact(&prev);
            }
            m[i][k] = LaurentQ::zero();
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if sign == 1 {
        det
    } else {
        -&det
    }
}

/// phi_0 = prod_{alpha>0} prod_{i=1}^{k-1}(e^{alpha/2} - q^{-2i} e^{-alpha/2});
/// equals delta_k/delta, asserted by exact multiplication.
pub fn phi_zero(n: usize, k: i64) -> WeightPoly {
    assert!(k >= 1);
    let rs = RootSystem::new(n);
    let half = rat(1, 2);
    let mut prod = WeightPoly::one(n);
    for alpha in rs.pos_roots() {
        let h = alpha.scale(&half);
        for i in 1..k {
            let factor = &WeightPoly::exponential(h.clone())
                - &WeightPoly::term(-&h, LaurentQ::q_pow(rat_int(-2 * i)));
            prod = &prod * &factor;
        }
    }
    let check = &prod * &weyl_denominator(n);
    assert_eq!(check, delta_k(n, k).expect("k validated"), "phi_0 * delta != delta_k");
    prod
}

/// Generalized character phi_lambda = phi_0 * P_lambda.
pub fn phi(lam: &Weight, k: i64) -> RationalWeightPoly {
    let p = macdonald_poly(lam, k);
    let phi0 = phi_zero(lam.rank(), k);
    RationalWeightPoly { num: &phi0 * p.num(), den: p.den().clone() }
}

/// ||P_lambda||^2 = <P_lambda, P_lambda>_k by direct constant term.
pub fn norm_direct(lam: &Weight, k: i64) -> RationalQ {
    let n = lam.rank();
    let p = macdonald_poly(lam, k);
    let dk = delta_k(n, k).expect("k validated");
    let kernel = &dk * &dk.bar();
    let w_order: i64 = (1..=n as i64).product();
    let ct = kernel_const_term(&kernel, p.num(), p.num()).scale(&rat(1, w_order));
    RationalQ::new(ct, &p.den().clone() * p.den()).reduced()
}

/// The closed-form norm product. Each denominator factor is nonzero
/// because (alpha, lambda + k rho) >= k > i for i <= k-1; asserted.
pub fn norm_formula(lam: &Weight, k: i64) -> RationalQ {
    assert!(k >= 1);
    let rs = RootSystem::new(lam.rank());
    let shift = lam + &rs.rho().scale(&rat_int(k));
    let mut num = LaurentQ::one();
    let mut den = LaurentQ::one();
    for alpha in rs.pos_roots() {
        let m = alpha.inner(&shift);
        for i in 1..k {
            assert!(m > rat_int(i), "vanishing factor in norm formula");
            let fnum = &LaurentQ::one() - &LaurentQ::q_pow(&(-rat_int(2) * &m) - rat_int(2 * i));
            let fden = &LaurentQ::one() - &LaurentQ::q_pow(&(-rat_int(2) * &m) + rat_int(2 * i));
            num = &num * &fnum;
            den = &den * &fden;
        }
    }
    RationalQ::new(num, den)
}
