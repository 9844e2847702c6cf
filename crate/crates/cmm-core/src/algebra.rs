//! The group algebra C_q[P] of the weight lattice (extended by
//! half-weights): sparse polynomials in formal exponentials e^mu with
//! `LaurentQ` coefficients, and the classical objects built from it.
//!
//! The key constructions are
//!
//!   delta   = prod_{alpha > 0} (e^{alpha/2} - e^{-alpha/2})      (Weyl denominator)
//!   delta_k = prod_{alpha > 0} prod_{i=0}^{k-1} (e^{alpha/2} - q^{-2i} e^{-alpha/2})
//!   chi_nu  = (sum_w (-1)^{|w|} e^{w(nu+rho)}) / delta           (Weyl character)
//!   dim_q L_nu = chi_nu(q^{2rho})                                 (quantum dimension)
//!   m_mu    = sum over the W-orbit of mu of e^nu                  (monomial symmetric)
//!
//! together with the constant-term functional (coefficient of e^0), the
//! bar involution e^mu -> e^{-mu} (fixing q), evaluation e^mu(q^lam) =
//! q^{(mu,lam)}, and expansion of W-invariant elements in the character
//! basis.
//!
//! Exact division by delta is performed by leading-term elimination under
//! the lexicographic order on epsilon-coordinates, which is translation
//! invariant, so the elimination enumerates exactly the terms of the
//! quotient; a nonzero remainder is a hard internal error.

use crate::error::Error;
use crate::laurent::{qbracket, rat_int, LaurentQ, QExp};
use crate::roots::{
    display_cmp, signed_orbit, weyl_orbit, RootSystem, SignedOrbit,
    Weight,
};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Sparse element of the group algebra: finite map Weight -> LaurentQ.
/// No stored coefficient is zero, so map equality is semantic equality.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct WeightPoly {
    terms: BTreeMap<Weight, LaurentQ>,
}

impl WeightPoly {
    pub fn zero() -> Self {
        WeightPoly { terms: BTreeMap::new() }
    }

    /// The multiplicative unit e^0 of rank n.
    pub fn one(n: usize) -> Self {
        Self::exponential(Weight::zero(n))
    }

    /// e^w.
    pub fn exponential(w: Weight) -> Self {
        Self::term(w, LaurentQ::one())
    }

    pub fn term(w: Weight, c: LaurentQ) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(w, c);
        }
        WeightPoly { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, w: &Weight) -> LaurentQ {
        self.terms.get(w).cloned().unwrap_or_else(LaurentQ::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Weight, &LaurentQ)> {
        self.terms.iter()
    }

    pub fn rank(&self) -> Option<usize> {
        self.terms.keys().next().map(|w| w.rank())
    }

    pub(crate) fn insert_add(&mut self, w: Weight, c: &LaurentQ) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(w) {
            Entry::Vacant(v) => {
                v.insert(c.clone());
            }
            Entry::Occupied(mut o) => {
                let sum = &*o.get() + c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    /// Coefficient of e^0: the constant-term functional, i.e. the
    /// integral with int e^mu dx = delta_{mu,0}.
    pub fn const_term(&self) -> LaurentQ {
        match self.rank() {
            None => LaurentQ::zero(),
            Some(n) => self.coeff(&Weight::zero(n)),
        }
    }

    /// Bar involution: weights negated, coefficients unchanged (q is
    /// fixed by bar).
    pub fn bar(&self) -> Self {
        WeightPoly {
            terms: self.terms.iter().map(|(w, c)| (-w, c.clone())).collect(),
        }
    }

    /// Substitute e^nu -> q^{scale*(nu, at)} and sum.
    pub fn eval(&self, at: &Weight, scale: &BigRational) -> LaurentQ {
        let mut out = LaurentQ::zero();
        for (w, c) in self.terms.iter() {
            let e: QExp = w.inner(at) * scale;
            for (ce, cc) in c.terms() {
                out.insert_add(ce + &e, cc);
            }
        }
        out
    }

    pub fn scale(&self, c: &LaurentQ) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut out = Self::zero();
        for (w, a) in self.terms.iter() {
            out.insert_add(w.clone(), &(a * c));
        }
        out
    }

    pub fn scale_rat(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        WeightPoly {
            terms: self.terms.iter().map(|(w, a)| (w.clone(), a.scale(c))).collect(),
        }
    }

    /// Multiply by the single term c * e^shift.
    pub fn mul_term(&self, shift: &Weight, c: &LaurentQ) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut out = Self::zero();
        for (w, a) in self.terms.iter() {
            out.insert_add(w + shift, &(a * c));
        }
        out
    }

    /// Truncate every coefficient to q-exponents <= bound, dropping
    /// emptied terms.
    pub fn truncate_q_above(&self, bound: &QExp) -> Self {
        let mut out = Self::zero();
        for (w, a) in self.terms.iter() {
            out.insert_add(w.clone(), &a.truncate_above(bound));
        }
        out
    }

    pub fn permuted(&self, perm: &[usize]) -> Self {
        let mut out = Self::zero();
        for (w, a) in self.terms.iter() {
            out.insert_add(w.permuted(perm), a);
        }
        out
    }

    /// True when every W-orbit meets the support with one common
    /// coefficient.
    pub fn is_w_invariant(&self) -> bool {
        for (w, c) in self.terms.iter() {
            for u in weyl_orbit(w) {
                if self.coeff(&u) != *c {
                    return false;
                }
            }
        }
        true
    }

    /// Exact division by `d` via leading-term elimination under the lex
    /// order on coordinates. Panics when the division is not exact.
    pub fn div_exact(&self, d: &WeightPoly) -> WeightPoly {
        assert!(!d.is_zero(), "division by the zero weight polynomial");
        if self.is_zero() {
            return WeightPoly::zero();
        }
        let (d_lead_w, d_lead_c) = d.terms.iter().next_back().unwrap();
        let d_lead_w = d_lead_w.clone();
        let d_lead_c = d_lead_c.clone();
        let mut rem = self.clone();
        let mut quot = WeightPoly::zero();
        let mut steps = 0usize;
        while let Some((r_w, r_c)) = rem.terms.iter().next_back().map(|(w, c)| (w.clone(), c.clone())) {
            steps += 1;
            assert!(steps <= 1_000_000, "weight polynomial division did not converge");
            let t_w = &r_w - &d_lead_w;
            let t_c = r_c.div_exact(&d_lead_c);
            quot.insert_add(t_w.clone(), &t_c);
            for (w, c) in d.terms.iter() {
                rem.insert_add(w + &t_w, &-&(c * &t_c));
            }
        }
        quot
    }
}

impl Add for &WeightPoly {
    type Output = WeightPoly;
    fn add(self, rhs: &WeightPoly) -> WeightPoly {
        let mut out = self.clone();
        for (w, c) in rhs.terms.iter() {
            out.insert_add(w.clone(), c);
        }
        out
    }
}

impl Sub for &WeightPoly {
    type Output = WeightPoly;
    fn sub(self, rhs: &WeightPoly) -> WeightPoly {
        let mut out = self.clone();
        for (w, c) in rhs.terms.iter() {
            out.insert_add(w.clone(), &-c);
        }
        out
    }
}

impl Neg for &WeightPoly {
    type Output = WeightPoly;
    fn neg(self) -> WeightPoly {
        WeightPoly {
            terms: self.terms.iter().map(|(w, c)| (w.clone(), -c)).collect(),
        }
    }
}

impl Mul for &WeightPoly {
    type Output = WeightPoly;
    fn mul(self, rhs: &WeightPoly) -> WeightPoly {
        let mut out = WeightPoly::zero();
        let (small, large) = if self.num_terms() <= rhs.num_terms() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        for (w1, c1) in small.terms.iter() {
            for (w2, c2) in large.terms.iter() {
                out.insert_add(w1 + w2, &(c1 * c2));
            }
        }
        out
    }
}

/// Canonical text form: terms sorted by decreasing (nu, nu) and
/// lex-descending coordinates within equal norm, each rendered
/// `(<LaurentQ>)*e[coords]` with the `(1)*` prefix elided.
impl fmt::Display for WeightPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut ws: Vec<&Weight> = self.terms.keys().collect();
        ws.sort_by(|a, b| display_cmp(a, b));
        for (i, w) in ws.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            let c = &self.terms[*w];
            if *c == LaurentQ::one() {
                write!(f, "e{}", w)?;
            } else {
                write!(f, "({})*e{}", c, w)?;
            }
        }
        Ok(())
    }
}

/// The alternating orbit sum sum_w (-1)^{|w|} e^{w(mu)}; zero when mu has
/// a repeated coordinate.
pub fn alternant(mu: &Weight) -> WeightPoly {
    match signed_orbit(mu) {
        SignedOrbit::Degenerate => WeightPoly::zero(),
        SignedOrbit::Terms(terms) => {
            let mut out = WeightPoly::zero();
            for (w, s) in terms {
                out.insert_add(w, &LaurentQ::from_int(s));
            }
            out
        }
    }
}

/// The Weyl denominator delta = prod_{alpha>0}(e^{alpha/2} - e^{-alpha/2}).
/// The product and alternant forms are both computed and asserted equal.
pub fn weyl_denominator(n: usize) -> WeightPoly {
    let rs = RootSystem::new(n);
    let half = crate::laurent::rat(1, 2);
    let mut prod = WeightPoly::one(n);
    for alpha in rs.pos_roots() {
        let h = alpha.scale(&half);
        let factor = &WeightPoly::exponential(h.clone()) - &WeightPoly::exponential(-&h);
        prod = &prod * &factor;
    }
    let alt = alternant(rs.rho());
    assert_eq!(prod, alt, "Weyl denominator product/alternant mismatch");
    prod
}

/// delta_k = prod_{alpha>0} prod_{i=0}^{k-1}(e^{alpha/2} - q^{-2i} e^{-alpha/2}),
/// the q-deformed k-th power of the Weyl denominator. All weights of the
/// result lie in P even though the factors use half-weights.
pub fn delta_k(n: usize, k: i64) -> Result<WeightPoly, Error> {
    if k < 1 {
        return Err(Error::InvalidK(k));
    }
    let rs = RootSystem::new(n);
    let half = crate::laurent::rat(1, 2);
    let mut prod = WeightPoly::one(n);
    for alpha in rs.pos_roots() {
        let h = alpha.scale(&half);
        for i in 0..k {
            let factor = &WeightPoly::exponential(h.clone())
                - &WeightPoly::term(-&h, LaurentQ::q_pow(rat_int(-2 * i)));
            prod = &prod * &factor;
        }
    }
    assert!(
        prod.terms.keys().all(|w| w.is_in_weight_lattice()),
        "delta_k has support outside the weight lattice"
    );
    Ok(prod)
}

/// Weyl character chi_nu for any lattice weight nu: the exact quotient
/// alternant(nu+rho)/delta, zero when nu+rho lies on a wall. Satisfies
/// chi_{w.nu} = (-1)^{|w|} chi_nu for the shifted action.
///
/// The division is memoized by the dominant representative of nu+rho;
/// the construction is pure, so the cache cannot change results.
pub fn weyl_character(nu: &Weight) -> Result<WeightPoly, Error> {
    if !nu.is_in_weight_lattice() {
        return Err(Error::NotInWeightLattice);
    }
    let n = nu.rank();
    let rs = RootSystem::new(n);
    let shifted = nu + rs.rho();
    if shifted.has_repeated_coords() {
        return Ok(WeightPoly::zero());
    }
    // Sort to the dominant chamber, tracking the permutation parity.
    let sign = sort_parity(&shifted);
    let chi = chi_from_dominant_shift(&shifted.dominant_rep());
    Ok(if sign == 1 { chi } else { -&chi })
}

fn chi_from_dominant_shift(dom_shift: &Weight) -> WeightPoly {
    use std::sync::{Mutex, OnceLock};
    static CACHE: OnceLock<Mutex<std::collections::BTreeMap<Weight, WeightPoly>>> =
        OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(std::collections::BTreeMap::new()));
    if let Some(chi) = cache.lock().unwrap().get(dom_shift) {
        return chi.clone();
    }
    let chi = alternant(dom_shift).div_exact(&weyl_denominator(dom_shift.rank()));
    cache.lock().unwrap().insert(dom_shift.clone(), chi.clone());
    chi
}

/// Parity of the permutation sorting `w` into decreasing order; `w` must
/// have distinct coordinates.
fn sort_parity(w: &Weight) -> i64 {
    let coords = w.coords();
    let mut inversions = 0usize;
    for i in 0..coords.len() {
        for j in (i + 1)..coords.len() {
            if coords[i] < coords[j] {
                inversions += 1;
            }
        }
    }
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Quantum dimension dim_q L_nu = chi_nu(q^{2 rho}).
pub fn q_dimension(nu: &Weight) -> LaurentQ {
    assert!(nu.is_dominant(), "quantum dimension of a non-dominant weight");
    let rs = RootSystem::new(nu.rank());
    let chi = weyl_character(nu).expect("dominant weight is in the lattice");
    chi.eval(rs.rho(), &rat_int(2))
}

/// Quantum dimension via the hook-style product
/// prod_{alpha>0} [ (nu+rho, alpha) ] / [ (rho, alpha) ],
/// an independent route kept for cross-checking the evaluation form.
pub fn q_dimension_bracket(nu: &Weight) -> LaurentQ {
    assert!(nu.is_dominant());
    let rs = RootSystem::new(nu.rank());
    let shifted = nu + rs.rho();
    let mut num = LaurentQ::one();
    let mut den = LaurentQ::one();
    for alpha in rs.pos_roots() {
        num = &num * &qbracket(to_i64(&shifted.inner(alpha)));
        den = &den * &qbracket(to_i64(&rs.rho().inner(alpha)));
    }
    num.div_exact(&den)
}

fn to_i64(r: &BigRational) -> i64 {
    assert!(r.denom().is_one(), "expected an integer pairing, got {}", r);
    r.numer().to_i64().expect("pairing fits i64")
}

/// Monomial symmetric element m_mu = sum over the W-orbit of mu of e^nu.
pub fn monomial_symmetric(mu: &Weight) -> WeightPoly {
    assert!(mu.is_dominant() && mu.is_in_weight_lattice());
    let mut out = WeightPoly::zero();
    for w in weyl_orbit(mu) {
        out.insert_add(w, &LaurentQ::one());
    }
    out
}

/// Expand a W-invariant lattice element in the Weyl character basis:
/// returns the finite map nu -> c_nu with f = sum c_nu chi_nu. Works by
/// repeatedly subtracting c * chi_nu for the maximal remaining orbit;
/// each step removes one orbit and introduces only strictly smaller
/// norms, so the loop terminates.
pub fn char_expand(f: &WeightPoly) -> Result<BTreeMap<Weight, LaurentQ>, Error> {
    if f.terms.keys().any(|w| !w.is_in_weight_lattice()) {
        return Err(Error::NotInWeightLattice);
    }
    if !f.is_w_invariant() {
        return Err(Error::NotWInvariant);
    }
    let mut rem = f.clone();
    let mut out = BTreeMap::new();
    while !rem.is_zero() {
        let nu = rem
            .terms
            .keys()
            .max_by(|a, b| display_cmp(b, a))
            .unwrap()
            .clone();
        debug_assert!(nu.is_dominant());
        let c = rem.coeff(&nu);
        let chi = weyl_character(&nu).expect("lattice weight");
        rem = &rem - &chi.scale(&c);
        out.insert(nu, c);
    }
    Ok(out)
}

/// Reconstruct sum c_nu chi_nu from an expansion map.
pub fn char_combine(coeffs: &BTreeMap<Weight, LaurentQ>) -> WeightPoly {
    let mut out = WeightPoly::zero();
    for (nu, c) in coeffs {
        let chi = weyl_character(nu).expect("lattice weight");
        out = &out + &chi.scale(c);
    }
    out
}
