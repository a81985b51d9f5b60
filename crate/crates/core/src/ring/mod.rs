//! Finite commutative rings as explicit operation tables, built as direct
//! products of local factors.

mod ideal;
mod local;
mod parse;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use ideal::{
    enumerate_ideals, is_prime_ideal, principal_ideal, Ideal, IdealLattice, LatticeDocument,
};
pub use parse::{parse_ring_spec, prime_power};

/// Default element-count cap for [`build_ring`].
pub const DEFAULT_ORDER_CAP: usize = 4096;

/// Upper limit for any configured cap; elements are stored as `u16`.
pub const MAX_ORDER_CAP: usize = u16::MAX as usize + 1;

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PrimePower {
    pub p: u64,
    pub k: u32,
}

impl PrimePower {
    pub fn value(self) -> u64 {
        self.p.pow(self.k)
    }
}

/// One local factor of a ring descriptor.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum LocalRingSpec {
    /// `Z/p^k`
    ZMod(PrimePower),
    /// `GF(p^k)`, `k <= 4`
    GaloisField(PrimePower),
    /// `GF(q)[t]/(t^k)`
    ChainRing(PrimePower, u32),
    /// `GF(q)[x,y]/(x^2, y^2)`
    BiNil(PrimePower),
    /// `Z4[x]/(x^2, 2x)`
    FourNil,
}

impl LocalRingSpec {
    pub fn is_field(&self) -> bool {
        match *self {
            LocalRingSpec::GaloisField(_) => true,
            LocalRingSpec::ZMod(q) => q.k == 1,
            LocalRingSpec::ChainRing(_, k) => k == 1,
            LocalRingSpec::BiNil(_) | LocalRingSpec::FourNil => false,
        }
    }
}

impl fmt::Display for LocalRingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            LocalRingSpec::ZMod(q) => write!(f, "Z/{}", q.value()),
            LocalRingSpec::GaloisField(q) => write!(f, "GF({})", q.value()),
            LocalRingSpec::ChainRing(q, k) => write!(f, "GF({})[t]/t^{k}", q.value()),
            LocalRingSpec::BiNil(q) => write!(f, "GF({})[x,y]/(x2,y2)", q.value()),
            LocalRingSpec::FourNil => f.write_str("Z4[x]/(x2,2x)"),
        }
    }
}

/// Parsed ring expression: an ordered list of local factors.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RingDescriptor {
    pub factors: Vec<LocalRingSpec>,
}

impl RingDescriptor {
    pub fn order(&self) -> u64 {
        self.factors
            .iter()
            .fold(1u64, |acc, f| acc.saturating_mul(local::local_order(f)))
    }

    /// Descriptor consisting of factor `i` alone.
    pub fn factor(&self, i: usize) -> RingDescriptor {
        RingDescriptor { factors: vec![self.factors[i]] }
    }
}

impl fmt::Display for RingDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, l) in self.factors.iter().enumerate() {
            if i > 0 {
                f.write_str(" x ")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

/// A finite commutative ring with unity given by full operation tables.
///
/// Elements are indices `0..order`; index 0 is zero. For a product ring the
/// index is the mixed-radix number whose digit `i` (least significant first)
/// is the element of factor `i`.
#[derive(Clone, Debug)]
pub struct FiniteRing {
    descriptor: RingDescriptor,
    order: usize,
    add: Vec<u16>,
    mul: Vec<u16>,
    neg: Vec<u16>,
    one: usize,
    labels: Vec<String>,
    factor_orders: Vec<usize>,
}

impl FiniteRing {
    pub fn descriptor(&self) -> &RingDescriptor {
        &self.descriptor
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn zero(&self) -> usize {
        0
    }

    pub fn one(&self) -> usize {
        self.one
    }

    #[inline]
    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add[a * self.order + b] as usize
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.order + b] as usize
    }

    #[inline]
    pub fn neg(&self, a: usize) -> usize {
        self.neg[a] as usize
    }

    pub fn label(&self, a: usize) -> &str {
        &self.labels[a]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn factor_arity(&self) -> usize {
        self.factor_orders.len()
    }

    pub fn factor_orders(&self) -> &[usize] {
        &self.factor_orders
    }

    /// Component of `a` in each direct factor.
    pub fn factor_projection(&self, a: usize) -> Vec<usize> {
        let mut rest = a;
        self.factor_orders
            .iter()
            .map(|&n| {
                let d = rest % n;
                rest /= n;
                d
            })
            .collect()
    }

    /// Inverse of [`FiniteRing::factor_projection`].
    pub fn from_components(&self, comps: &[usize]) -> usize {
        comps
            .iter()
            .zip(&self.factor_orders)
            .rev()
            .fold(0, |acc, (&c, &n)| acc * n + c)
    }

    /// Finds the first element index whose label is `label`.
    pub fn element(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Exhaustively checks the ring axioms. Cubic in the order.
    pub fn validate(&self) -> std::result::Result<(), String> {
        let n = self.order;
        if n > 1 && self.one == 0 {
            return Err("one equals zero".into());
        }
        for a in 0..n {
            if self.add(a, 0) != a {
                return Err(format!("0 is not an additive identity for {a}"));
            }
            if self.mul(a, self.one) != a {
                return Err(format!("1 is not a multiplicative identity for {a}"));
            }
            if self.add(a, self.neg(a)) != 0 {
                return Err(format!("{a} has no additive inverse"));
            }
            for b in 0..n {
                if self.add(a, b) != self.add(b, a) {
                    return Err(format!("addition not commutative at ({a},{b})"));
                }
                if self.mul(a, b) != self.mul(b, a) {
                    return Err(format!("multiplication not commutative at ({a},{b})"));
                }
                for c in 0..n {
                    if self.add(self.add(a, b), c) != self.add(a, self.add(b, c)) {
                        return Err(format!("addition not associative at ({a},{b},{c})"));
                    }
                    if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)) {
                        return Err(format!("multiplication not associative at ({a},{b},{c})"));
                    }
                    if self.mul(a, self.add(b, c)) != self.add(self.mul(a, b), self.mul(a, c)) {
                        return Err(format!("distributivity fails at ({a},{b},{c})"));
                    }
                }
            }
        }
        Ok(())
    }
}

pub fn build_ring(d: &RingDescriptor) -> Result<FiniteRing> {
    build_ring_with_cap(d, DEFAULT_ORDER_CAP)
}

pub fn build_ring_with_cap(d: &RingDescriptor, cap: usize) -> Result<FiniteRing> {
    let cap = cap.min(MAX_ORDER_CAP);
    let order = d.order();
    if order > cap as u64 {
        return Err(Error::OrderCap { order, cap });
    }
    let factors: Vec<local::LocalTables> = d.factors.iter().map(local::local_tables).collect();
    let order = order as usize;
    let factor_orders: Vec<usize> = factors.iter().map(|t| t.order).collect();

    let split = |mut a: usize| -> Vec<usize> {
        factor_orders
            .iter()
            .map(|&n| {
                let c = a % n;
                a /= n;
                c
            })
            .collect()
    };
    let join = |cs: &[usize]| -> usize {
        cs.iter().zip(&factor_orders).rev().fold(0, |acc, (&c, &n)| acc * n + c)
    };
    let comps: Vec<Vec<usize>> = (0..order).map(split).collect();

    let mut add = vec![0u16; order * order];
    let mut mul = vec![0u16; order * order];
    let mut buf_a = vec![0usize; factors.len()];
    let mut buf_m = vec![0usize; factors.len()];
    for a in 0..order {
        for b in 0..order {
            for (i, t) in factors.iter().enumerate() {
                let (x, y) = (comps[a][i], comps[b][i]);
                buf_a[i] = t.add[x * t.order + y] as usize;
                buf_m[i] = t.mul[x * t.order + y] as usize;
            }
            add[a * order + b] = join(&buf_a) as u16;
            mul[a * order + b] = join(&buf_m) as u16;
        }
    }
    let mut neg = vec![0u16; order];
    for a in 0..order {
        neg[a] = (0..order).find(|&b| add[a * order + b] == 0).expect("additive inverse") as u16;
    }
    let one = join(&factors.iter().map(|t| t.one).collect::<Vec<_>>());
    let labels = comps
        .iter()
        .map(|cs| {
            if factors.len() == 1 {
                factors[0].labels[cs[0]].clone()
            } else {
                let parts: Vec<&str> =
                    cs.iter().zip(&factors).map(|(&c, t)| t.labels[c].as_str()).collect();
                format!("({})", parts.join(","))
            }
        })
        .collect();
    Ok(FiniteRing { descriptor: d.clone(), order, add, mul, neg, one, labels, factor_orders })
}

/// One direct factor built as a ring in its own right, with its lattice.
#[derive(Clone, Debug)]
pub struct Factor {
    pub ring: FiniteRing,
    pub lattice: IdealLattice,
}

impl Factor {
    pub fn spec(&self) -> &LocalRingSpec {
        &self.ring.descriptor().factors[0]
    }

    pub fn is_field(&self) -> bool {
        self.lattice.len() == 2
    }
}

/// Builds every factor of `r` separately.
pub fn factor_rings(r: &FiniteRing) -> Result<Vec<Factor>> {
    (0..r.factor_arity())
        .map(|i| {
            let ring = build_ring_with_cap(&r.descriptor().factor(i), MAX_ORDER_CAP)?;
            let lattice = enumerate_ideals(&ring);
            Ok(Factor { ring, lattice })
        })
        .collect()
}

/// Writes `ideal` as a product of factor ideals, returning the factor
/// lattice index in each coordinate, or `None` if it is not such a product.
pub fn decompose_ideal(r: &FiniteRing, ideal: &Ideal, factors: &[Factor]) -> Option<Vec<usize>> {
    let mut proj: Vec<crate::bitset::BitSet> =
        r.factor_orders().iter().map(|&n| crate::bitset::BitSet::new(n)).collect();
    for a in ideal.elements() {
        for (i, c) in r.factor_projection(a).into_iter().enumerate() {
            proj[i].insert(c);
        }
    }
    let product: usize = proj.iter().map(|p| p.count()).product();
    if product != ideal.size() {
        return None;
    }
    proj.iter().zip(factors).map(|(p, f)| f.lattice.index_of(p)).collect()
}
