//! Combinatorics of the root system A_{n-1} in epsilon-coordinates.
//!
//! Weights are zero-sum vectors of n rationals; the weight lattice P is
//! cut out by the congruence "all coordinate differences are integers".
//! In these coordinates the invariant form is the plain dot product, the
//! Weyl group W = S_n permutes coordinates, positive roots are e_i - e_j
//! (i < j) with (alpha, alpha) = 2, and rho is their half-sum.

use crate::error::Error;
use crate::laurent::{rat, rat_int};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::collections::BTreeSet;
use std::fmt;
use std::ops::{Add, Neg, Sub};

/// A point of the A_{n-1} weight space: n rational epsilon-coordinates
/// summing to zero. Derived `Ord` is lexicographic on coordinates and is
/// the internal total order used for maps; display/processing orders are
/// built on top of it.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Weight {
    coords: Vec<BigRational>,
}

impl Weight {
    pub fn new(coords: Vec<BigRational>) -> Self {
        assert!(coords.len() >= 2, "weights need rank n >= 2");
        let sum: BigRational = coords.iter().sum();
        assert!(sum.is_zero(), "weight coordinates must sum to zero");
        Weight { coords }
    }

    pub fn zero(n: usize) -> Self {
        Weight { coords: vec![BigRational::zero(); n] }
    }

    pub fn rank(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[BigRational] {
        &self.coords
    }

    /// Standard dot product of epsilon-coordinates.
    pub fn inner(&self, other: &Weight) -> BigRational {
        assert_eq!(self.rank(), other.rank(), "rank mismatch in inner product");
        self.coords
            .iter()
            .zip(other.coords.iter())
            .map(|(a, b)| a * b)
            .sum()
    }

    /// (lambda, lambda).
    pub fn norm(&self) -> BigRational {
        self.inner(self)
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    /// Membership in the weight lattice P: pairwise coordinate
    /// differences are integers.
    pub fn is_in_weight_lattice(&self) -> bool {
        let first = &self.coords[0];
        self.coords[1..].iter().all(|c| (c - first).denom().is_one())
    }

    /// Membership in P/2 (differences in Z/2); intermediate products with
    /// e^{alpha/2} factors live here.
    pub fn is_in_half_lattice(&self) -> bool {
        let first = &self.coords[0];
        let two = BigInt::from(2);
        self.coords[1..]
            .iter()
            .all(|c| ((c - first) * BigRational::from_integer(two.clone())).denom().is_one())
    }

    /// Weakly decreasing coordinates.
    pub fn is_dominant(&self) -> bool {
        self.coords.windows(2).all(|w| w[0] >= w[1])
    }

    pub fn has_repeated_coords(&self) -> bool {
        let mut sorted = self.coords.clone();
        sorted.sort();
        sorted.windows(2).any(|w| w[0] == w[1])
    }

    /// Coordinates sorted decreasingly: the dominant representative of
    /// the W-orbit.
    pub fn dominant_rep(&self) -> Weight {
        let mut coords = self.coords.clone();
        coords.sort_by(|a, b| b.cmp(a));
        Weight { coords }
    }

    pub fn permuted(&self, perm: &[usize]) -> Weight {
        Weight {
            coords: perm.iter().map(|&i| self.coords[i].clone()).collect(),
        }
    }

    pub fn scale(&self, c: &BigRational) -> Weight {
        Weight {
            coords: self.coords.iter().map(|x| x * c).collect(),
        }
    }
}

impl Add for &Weight {
    type Output = Weight;
    fn add(self, rhs: &Weight) -> Weight {
        assert_eq!(self.rank(), rhs.rank(), "rank mismatch in weight sum");
        Weight {
            coords: self
                .coords
                .iter()
                .zip(rhs.coords.iter())
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &Weight {
    type Output = Weight;
    fn sub(self, rhs: &Weight) -> Weight {
        assert_eq!(self.rank(), rhs.rank(), "rank mismatch in weight difference");
        Weight {
            coords: self
                .coords
                .iter()
                .zip(rhs.coords.iter())
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl Neg for &Weight {
    type Output = Weight;
    fn neg(self) -> Weight {
        Weight {
            coords: self.coords.iter().map(|a| -a).collect(),
        }
    }
}

fn fmt_coord(r: &BigRational) -> String {
    if r.denom().is_one() {
        format!("{}", r.numer())
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// `[p1,p2/r2,...]`: reduced rational coordinates, `/1` elided.
impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", fmt_coord(c))?;
        }
        write!(f, "]")
    }
}

/// Display/processing order: decreasing norm, lex-descending within equal
/// norm. The first element under this order in a W-invariant support is
/// the dominant representative of a maximal orbit.
pub fn display_cmp(a: &Weight, b: &Weight) -> std::cmp::Ordering {
    b.norm().cmp(&a.norm()).then_with(|| b.coords.cmp(&a.coords))
}

/// Enumeration order for weight lists: increasing norm, lex-ascending.
pub fn enumeration_cmp(a: &Weight, b: &Weight) -> std::cmp::Ordering {
    a.norm().cmp(&b.norm()).then_with(|| a.coords.cmp(&b.coords))
}

/// The A_{n-1} root system data: positive roots, rho, fundamental weights.
#[derive(Debug, Clone)]
pub struct RootSystem {
    n: usize,
    pos_roots: Vec<Weight>,
    rho: Weight,
    fundamental: Vec<Weight>,
}

impl RootSystem {
    pub fn new(n: usize) -> Self {
        assert!(n >= 2, "A_{{n-1}} needs n >= 2");
        let mut pos_roots = Vec::new();
        for i in 0..n {
            for j in (i + 1)..n {
                let mut coords = vec![BigRational::zero(); n];
                coords[i] = BigRational::one();
                coords[j] = -BigRational::one();
                pos_roots.push(Weight::new(coords));
            }
        }
        let half = rat(1, 2);
        let mut rho = Weight::zero(n);
        for alpha in &pos_roots {
            rho = &rho + &alpha.scale(&half);
        }
        // omega_i = e_1 + ... + e_i - (i/n)(e_1 + ... + e_n)
        let mut fundamental = Vec::new();
        for i in 1..n {
            let frac = rat(i as i64, n as i64);
            let coords = (0..n)
                .map(|j| if j < i { BigRational::one() - &frac } else { -frac.clone() })
                .collect();
            fundamental.push(Weight::new(coords));
        }
        debug_assert!(pos_roots.iter().all(|a| a.norm() == rat_int(2)));
        debug_assert_eq!(pos_roots.len(), n * (n - 1) / 2);
        RootSystem { n, pos_roots, rho, fundamental }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn pos_roots(&self) -> &[Weight] {
        &self.pos_roots
    }

    pub fn rho(&self) -> &Weight {
        &self.rho
    }

    pub fn num_pos_roots(&self) -> usize {
        self.pos_roots.len()
    }

    pub fn fundamental_weights(&self) -> &[Weight] {
        &self.fundamental
    }

    /// alpha_i = e_i - e_{i+1}.
    pub fn simple_roots(&self) -> Vec<Weight> {
        (0..self.n - 1)
            .map(|i| {
                let mut coords = vec![BigRational::zero(); self.n];
                coords[i] = BigRational::one();
                coords[i + 1] = -BigRational::one();
                Weight::new(coords)
            })
            .collect()
    }

    /// Dominant weight sum(a_i * omega_i) from nonnegative fundamental
    /// coefficients.
    pub fn from_fundamental(&self, coeffs: &[i64]) -> Result<Weight, Error> {
        assert_eq!(coeffs.len(), self.n - 1, "expected n-1 fundamental coefficients");
        if let Some(&bad) = coeffs.iter().find(|&&a| a < 0) {
            return Err(Error::NegativeCoefficient(bad));
        }
        Ok(self.weight_from_coeffs(coeffs))
    }

    fn weight_from_coeffs(&self, coeffs: &[i64]) -> Weight {
        let mut w = Weight::zero(self.n);
        for (a, omega) in coeffs.iter().zip(self.fundamental.iter()) {
            w = &w + &omega.scale(&rat_int(*a));
        }
        w
    }

    /// Fundamental coefficients a_i = (lambda, alpha_i) of a lattice
    /// weight; integers whenever lambda is in P.
    pub fn fundamental_coeffs(&self, lam: &Weight) -> Vec<BigInt> {
        assert_eq!(lam.rank(), self.n);
        (0..self.n - 1)
            .map(|i| {
                let d = &lam.coords[i] - &lam.coords[i + 1];
                assert!(d.denom().is_one(), "weight not in the weight lattice");
                d.numer().clone()
            })
            .collect()
    }

    /// Gram matrix of the fundamental weights: G_ij = min(i,j) - ij/n
    /// (1-based i, j).
    fn gram(&self) -> Vec<Vec<BigRational>> {
        let n = self.n as i64;
        (1..self.n as i64)
            .map(|i| {
                (1..self.n as i64)
                    .map(|j| rat_int(i.min(j)) - rat(i * j, n))
                    .collect()
            })
            .collect()
    }

    /// All lattice weights with (lambda, lambda) <= r, complete and
    /// duplicate-free, sorted by increasing (norm, lex).
    ///
    /// Enumerates fundamental-coefficient vectors in the conservative box
    /// |a_i| <= ceil(2*sqrt(r)) (from lambda_min(G) >= 1/4, a Gershgorin
    /// bound on the Cartan matrix G^{-1}) and filters by the exact norm
    /// a^T G a.
    pub fn weights_in_ball(&self, r: &BigRational) -> Vec<Weight> {
        assert!(!r.is_negative(), "ball radius must be nonnegative");
        let bound = ceil_sqrt(&(r * rat_int(4)));
        let g = self.gram();
        let m = self.n - 1;
        let mut out = Vec::new();
        let mut a = vec![-(bound as i64); m];
        'outer: loop {
            let norm = quad_form(&g, &a);
            if norm <= *r {
                out.push(self.weight_from_coeffs(&a));
            }
            for i in 0..m {
                if a[i] < bound as i64 {
                    a[i] += 1;
                    continue 'outer;
                }
                a[i] = -(bound as i64);
            }
            break;
        }
        out.sort_by(enumeration_cmp);
        out
    }

    /// All dominant lattice weights mu <= lambda in dominance order,
    /// sorted by increasing (norm, lex). Enumerates mu = lambda - sum
    /// c_i alpha_i over nonnegative integer c with sum(c_i) <= (lambda,
    /// rho), which bounds every dominant mu below lambda.
    pub fn lower_dominant_weights(&self, lam: &Weight) -> Vec<Weight> {
        assert!(lam.is_dominant() && lam.is_in_weight_lattice());
        let budget = lam
            .inner(&self.rho)
            .floor()
            .to_integer()
            .to_i64()
            .expect("dominance budget fits i64");
        let simples = self.simple_roots();
        let mut out = Vec::new();
        let mut c = vec![0i64; simples.len()];
        self.enum_lower(lam, &simples, budget, 0, &mut c, &mut out);
        out.sort_by(enumeration_cmp);
        out.dedup();
        out
    }

    fn enum_lower(
        &self,
        lam: &Weight,
        simples: &[Weight],
        budget: i64,
        idx: usize,
        c: &mut Vec<i64>,
        out: &mut Vec<Weight>,
    ) {
        if idx == simples.len() {
            let mut mu = lam.clone();
            for (k, alpha) in c.iter().zip(simples.iter()) {
                mu = &mu - &alpha.scale(&rat_int(*k));
            }
            if mu.is_dominant() {
                out.push(mu);
            }
            return;
        }
        let used: i64 = c[..idx].iter().sum();
        for v in 0..=(budget - used) {
            c[idx] = v;
            self.enum_lower(lam, simples, budget, idx + 1, c, out);
        }
        c[idx] = 0;
    }
}

/// Smallest nonnegative integer b with b^2 >= x.
fn ceil_sqrt(x: &BigRational) -> u64 {
    if x.is_negative() || x.is_zero() {
        return 0;
    }
    let c = x.ceil().to_integer();
    let mut b = c.sqrt();
    while &b * &b < c {
        b += 1;
    }
    let mut b = b.to_u64().expect("ball bound fits u64");
    // adjust against the exact rational
    while BigRational::from_integer(BigInt::from(b)) * BigRational::from_integer(BigInt::from(b)) < *x {
        b += 1;
    }
    b
}

fn quad_form(g: &[Vec<BigRational>], a: &[i64]) -> BigRational {
    let mut acc = BigRational::zero();
    for (i, ai) in a.iter().enumerate() {
        if *ai == 0 {
            continue;
        }
        for (j, aj) in a.iter().enumerate() {
            if *aj == 0 {
                continue;
            }
            acc += &g[i][j] * rat_int(ai * aj);
        }
    }
    acc
}

/// Visits every permutation of 0..n with its sign, via Heap's algorithm.
pub(crate) fn for_each_signed_permutation<F: FnMut(&[usize], i64)>(n: usize, mut f: F) {
    let mut perm: Vec<usize> = (0..n).collect();
    let mut c = vec![0usize; n];
    let mut sign = 1i64;
    f(&perm, sign);
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(c[i], i);
            }
            sign = -sign;
            f(&perm, sign);
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
}

/// The set of coordinate permutations of `lam`, deduplicated and sorted.
pub fn weyl_orbit(lam: &Weight) -> Vec<Weight> {
    let mut set = BTreeSet::new();
    for_each_signed_permutation(lam.rank(), |perm, _| {
        set.insert(lam.permuted(perm));
    });
    set.into_iter().collect()
}

/// Result of a signed Weyl orbit: degenerate when the weight has a
/// repeated coordinate (the alternating sum is identically zero).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SignedOrbit {
    Degenerate,
    Terms(Vec<(Weight, i64)>),
}

/// All pairs (w(lam), (-1)^{|w|}) over w in W, or the degenerate marker
/// when lam lies on a wall.
pub fn signed_orbit(lam: &Weight) -> SignedOrbit {
    if lam.has_repeated_coords() {
        return SignedOrbit::Degenerate;
    }
    let mut terms = Vec::new();
    for_each_signed_permutation(lam.rank(), |perm, sign| {
        terms.push((lam.permuted(perm), sign));
    });
    SignedOrbit::Terms(terms)
}

/// nu* = -w_0(nu): the dominant representative of -nu.
pub fn star(nu: &Weight) -> Weight {
    assert!(nu.is_dominant(), "star is defined on dominant weights");
    (-nu).dominant_rep()
}

/// Dominance order on dominant lattice weights of a common root-lattice
/// coset: mu <= lam iff all partial sums of the coordinates of lam - mu
/// are nonnegative. Errors when lam - mu is not in the root lattice.
pub fn dominance_le(mu: &Weight, lam: &Weight) -> Result<bool, Error> {
    assert!(mu.is_dominant() && lam.is_dominant());
    let diff = lam - mu;
    if diff.coords().iter().any(|c| !c.denom().is_one()) {
        return Err(Error::CosetMismatch);
    }
    let mut partial = BigRational::zero();
    for c in diff.coords() {
        partial += c;
        if partial.is_negative() {
            return Ok(false);
        }
    }
    Ok(true)
}
