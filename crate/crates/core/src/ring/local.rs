//! Element tables for the supported local ring families.

use super::{LocalRingSpec, PrimePower};

/// Addition and multiplication tables of one local factor. Element 0 is
/// always the zero element.
#[derive(Clone, Debug)]
pub(crate) struct LocalTables {
    pub order: usize,
    pub add: Vec<u16>,
    pub mul: Vec<u16>,
    pub one: usize,
    pub labels: Vec<String>,
}

/// `GF(p^k)` as polynomials over `Z/p` modulo a fixed irreducible.
///
/// Element index `i` encodes the coefficients of `1, a, a^2, ...` as the
/// base-`p` digits of `i`.
#[derive(Clone, Debug)]
pub(crate) struct GaloisField {
    pub tables: LocalTables,
}

fn digits(mut i: usize, base: usize, len: usize) -> Vec<usize> {
    (0..len)
        .map(|_| {
            let d = i % base;
            i /= base;
            d
        })
        .collect()
}

fn undigits(ds: &[usize], base: usize) -> usize {
    ds.iter().rev().fold(0, |acc, &d| acc * base + d)
}

/// Remainder of `num` modulo the monic polynomial `den`, coefficients mod `p`
/// (ascending powers).
fn poly_rem(num: &[usize], den: &[usize], p: usize) -> Vec<usize> {
    let mut r = num.to_vec();
    let dd = den.len() - 1;
    while r.len() > dd {
        let lead = r.pop().unwrap();
        if lead != 0 {
            let shift = r.len() - dd;
            for (i, &c) in den[..dd].iter().enumerate() {
                r[shift + i] = (r[shift + i] + p - lead * c % p) % p;
            }
        }
    }
    r
}

fn is_irreducible(f: &[usize], p: usize) -> bool {
    let deg = f.len() - 1;
    for d in 1..=deg / 2 {
        // every monic polynomial of degree d
        for low in 0..p.pow(d as u32) {
            let mut g = digits(low, p, d);
            g.push(1);
            if poly_rem(f, &g, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

/// Smallest monic irreducible of degree `k` over `Z/p`, ordered by the
/// base-`p` value of its lower coefficients.
pub(crate) fn conway_like_modulus(p: usize, k: usize) -> Vec<usize> {
    if k == 1 {
        return vec![0, 1];
    }
    for low in 0..p.pow(k as u32) {
        let mut f = digits(low, p, k);
        f.push(1);
        if f[0] != 0 && is_irreducible(&f, p) {
            return f;
        }
    }
    unreachable!("an irreducible polynomial of every degree exists")
}

fn term_label(coef: &str, mono: &str) -> String {
    match (coef, mono) {
        (c, "") | (c, "1") => c.to_string(),
        ("1", m) => m.to_string(),
        (c, m) if c.contains('+') => format!("({c}){m}"),
        (c, m) => format!("{c}{m}"),
    }
}

fn poly_label(coefs: &[String], monos: &[String]) -> String {
    let terms: Vec<String> = coefs
        .iter()
        .zip(monos)
        .filter(|(c, _)| c.as_str() != "0")
        .map(|(c, m)| term_label(c, m))
        .collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join("+")
    }
}

impl GaloisField {
    pub fn new(q: PrimePower) -> Self {
        let p = q.p as usize;
        let k = q.k as usize;
        let order = q.value() as usize;
        let modulus = conway_like_modulus(p, k);
        let digs: Vec<Vec<usize>> = (0..order).map(|i| digits(i, p, k)).collect();
        let mut add = vec![0u16; order * order];
        let mut mul = vec![0u16; order * order];
        for a in 0..order {
            for b in 0..order {
                let s: Vec<usize> = digs[a].iter().zip(&digs[b]).map(|(x, y)| (x + y) % p).collect();
                add[a * order + b] = undigits(&s, p) as u16;
                let mut prod = vec![0usize; 2 * k - 1];
                for (i, &x) in digs[a].iter().enumerate() {
                    for (j, &y) in digs[b].iter().enumerate() {
                        prod[i + j] = (prod[i + j] + x * y) % p;
                    }
                }
                let r = if k == 1 { prod } else { poly_rem(&prod, &modulus, p) };
                mul[a * order + b] = undigits(&r, p) as u16;
            }
        }
        let monos: Vec<String> = (0..k)
            .map(|i| match i {
                0 => String::new(),
                1 => "a".into(),
                _ => format!("a^{i}"),
            })
            .collect();
        let labels = digs
            .iter()
            .map(|ds| {
                let coefs: Vec<String> = ds.iter().map(|d| d.to_string()).collect();
                poly_label(&coefs, &monos)
            })
            .collect();
        GaloisField { tables: LocalTables { order, add, mul, one: 1, labels } }
    }
}

/// Commutative algebra over `GF(q)` with a monomial basis whose products are
/// either another basis monomial or zero.
struct MonomialAlgebra<'a> {
    field: &'a GaloisField,
    names: Vec<String>,
    /// `mono_mul[i][j]` is the basis index of `m_i * m_j`, if nonzero.
    mono_mul: Vec<Vec<Option<usize>>>,
}

impl MonomialAlgebra<'_> {
    fn tables(&self) -> LocalTables {
        let f = &self.field.tables;
        let q = f.order;
        let dim = self.names.len();
        let order = q.pow(dim as u32);
        let digs: Vec<Vec<usize>> = (0..order).map(|i| digits(i, q, dim)).collect();
        let fadd = |a: usize, b: usize| f.add[a * q + b] as usize;
        let fmul = |a: usize, b: usize| f.mul[a * q + b] as usize;

        let mut add = vec![0u16; order * order];
        for a in 0..order {
            for b in 0..order {
                let s: Vec<usize> = digs[a].iter().zip(&digs[b]).map(|(&x, &y)| fadd(x, y)).collect();
                add[a * order + b] = undigits(&s, q) as u16;
            }
        }
        // basis monomial i times element b, and scalar c times element b
        let mut shift = vec![0usize; dim * order];
        let mut scale = vec![0usize; q * order];
        for b in 0..order {
            for i in 0..dim {
                let mut r = vec![0usize; dim];
                for (j, &c) in digs[b].iter().enumerate() {
                    if let Some(l) = self.mono_mul[i][j] {
                        r[l] = fadd(r[l], c);
                    }
                }
                shift[i * order + b] = undigits(&r, q);
            }
            for c in 0..q {
                let r: Vec<usize> = digs[b].iter().map(|&d| fmul(c, d)).collect();
                scale[c * order + b] = undigits(&r, q);
            }
        }
        let mut mul = vec![0u16; order * order];
        for a in 0..order {
            for b in 0..order {
                let mut acc = 0usize;
                for (i, &c) in digs[a].iter().enumerate() {
                    if c != 0 {
                        let term = scale[c * order + shift[i * order + b]];
                        acc = add[acc * order + term] as usize;
                    }
                }
                mul[a * order + b] = acc as u16;
            }
        }
        let labels = digs
            .iter()
            .map(|ds| {
                let coefs: Vec<String> = ds.iter().map(|&d| f.labels[d].clone()).collect();
                poly_label(&coefs, &self.names)
            })
            .collect();
        LocalTables { order, add, mul, one: 1, labels }
    }
}

fn zmod(n: usize) -> LocalTables {
    let mut add = vec![0u16; n * n];
    let mut mul = vec![0u16; n * n];
    for a in 0..n {
        for b in 0..n {
            add[a * n + b] = ((a + b) % n) as u16;
            mul[a * n + b] = (a * b % n) as u16;
        }
    }
    let one = if n == 1 { 0 } else { 1 };
    LocalTables { order: n, add, mul, one, labels: (0..n).map(|i| i.to_string()).collect() }
}

/// `Z4[x]/(x^2, 2x)`: element `a + b*x` with `a` in `Z/4`, `b` in `Z/2` is
/// stored at index `a + 4b`.
fn four_nil() -> LocalTables {
    let n = 8;
    let split = |i: usize| (i % 4, i / 4);
    let mut add = vec![0u16; n * n];
    let mut mul = vec![0u16; n * n];
    for i in 0..n {
        for j in 0..n {
            let ((a1, b1), (a2, b2)) = (split(i), split(j));
            add[i * n + j] = ((a1 + a2) % 4 + 4 * ((b1 + b2) % 2)) as u16;
            mul[i * n + j] = ((a1 * a2) % 4 + 4 * ((a1 * b2 + a2 * b1) % 2)) as u16;
        }
    }
    let labels = (0..n)
        .map(|i| {
            let (a, b) = split(i);
            match (a, b) {
                (a, 0) => a.to_string(),
                (0, _) => "x".into(),
                (a, _) => format!("{a}+x"),
            }
        })
        .collect();
    LocalTables { order: n, add, mul, one: 1, labels }
}

pub(crate) fn local_tables(spec: &LocalRingSpec) -> LocalTables {
    match *spec {
        LocalRingSpec::ZMod(q) => zmod(q.value() as usize),
        LocalRingSpec::GaloisField(q) => GaloisField::new(q).tables,
        LocalRingSpec::ChainRing(q, k) => {
            let field = GaloisField::new(q);
            let k = k as usize;
            let names = (0..k)
                .map(|i| match i {
                    0 => String::new(),
                    1 => "t".into(),
                    _ => format!("t^{i}"),
                })
                .collect();
            let mono_mul = (0..k)
                .map(|i| (0..k).map(|j| (i + j < k).then_some(i + j)).collect())
                .collect();
            MonomialAlgebra { field: &field, names, mono_mul }.tables()
        }
        LocalRingSpec::BiNil(q) => {
            let field = GaloisField::new(q);
            // basis 1, x, y, xy encoded as exponent bitmasks 0b00, 0b01, 0b10, 0b11
            let names = ["", "x", "y", "xy"].map(String::from).to_vec();
            let mono_mul = (0..4)
                .map(|i: usize| (0..4).map(|j: usize| (i & j == 0).then_some(i | j)).collect())
                .collect();
            MonomialAlgebra { field: &field, names, mono_mul }.tables()
        }
        LocalRingSpec::FourNil => four_nil(),
    }
}

/// Element count of a local factor without building its tables.
pub(crate) fn local_order(spec: &LocalRingSpec) -> u64 {
    match *spec {
        LocalRingSpec::ZMod(q) | LocalRingSpec::GaloisField(q) => q.value(),
        LocalRingSpec::ChainRing(q, k) => q.value().saturating_pow(k),
        LocalRingSpec::BiNil(q) => q.value().saturating_pow(4),
        LocalRingSpec::FourNil => 8,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn moduli_are_irreducible() {
        assert_eq!(conway_like_modulus(2, 2), vec![1, 1, 1]);
        assert_eq!(conway_like_modulus(2, 3), vec![1, 1, 0, 1]);
        assert_eq!(conway_like_modulus(3, 2), vec![1, 0, 1]);
        assert_eq!(conway_like_modulus(2, 4), vec![1, 1, 0, 0, 1]);
    }

    #[test]
    fn gf4_has_inverses() {
        let f = GaloisField::new(PrimePower { p: 2, k: 2 });
        let t = &f.tables;
        for a in 1..4 {
            assert!((1..4).any(|b| t.mul[a * 4 + b] == 1), "no inverse for {a}");
        }
        assert_eq!(t.labels, vec!["0", "1", "a", "1+a"]);
    }

    #[test]
    fn binil_products() {
        let t = local_tables(&LocalRingSpec::BiNil(PrimePower { p: 2, k: 1 }));
        let n = t.order;
        // x = 2, y = 4, xy = 8 in base-2 digit encoding
        assert_eq!(t.mul[2 * n + 2], 0);
        assert_eq!(t.mul[4 * n + 4], 0);
        assert_eq!(t.mul[2 * n + 4], 8);
        assert_eq!(t.labels[2 + 4 + 8], "x+y+xy");
    }

    #[test]
    fn four_nil_relations() {
        let t = four_nil();
        let x = 4;
        assert_eq!(t.mul[x * 8 + x], 0);
        assert_eq!(t.mul[2 * 8 + x], 0);
        assert_eq!(t.mul[2 * 8 + 2], 0);
        assert_eq!(t.labels[6], "2+x");
    }
}
