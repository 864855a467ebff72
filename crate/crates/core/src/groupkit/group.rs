//! Cayley-table groups, automorphisms and subgroups.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::polycore::Poly;

pub const DEFAULT_ORDER_CAP: usize = 5000;
/// Orders up to this value get exhaustive axiom checks.
pub const FULL_CHECK_ORDER: usize = 512;
const SPOT_CHECKS: usize = 20_000;

/// Element index inside a [`FiniteGroup`].
pub type Elem = u16;

#[derive(Clone, Debug)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<Elem>,
    identity: Elem,
    inverses: Vec<Elem>,
    labels: Option<Vec<String>>,
}

fn is_permutation(row: impl Iterator<Item = Elem>, n: usize) -> bool {
    let mut seen = vec![false; n];
    for x in row {
        let x = x as usize;
        if x >= n || seen[x] {
            return false;
        }
        seen[x] = true;
    }
    true
}

impl FiniteGroup {
    /// Validates a row-major multiplication table: `table[a * n + b] = a b`.
    pub fn from_table(order: usize, table: Vec<Elem>, labels: Option<Vec<String>>, cap: usize) -> Result<Self> {
        if order == 0 {
            return Err(Error::Group("empty group".into()));
        }
        if order > cap || order > Elem::MAX as usize {
            return Err(Error::Group(format!("order {order} exceeds cap {cap}")));
        }
        if table.len() != order * order {
            return Err(Error::Group("table size does not match order".into()));
        }
        if labels.as_ref().is_some_and(|l| l.len() != order) {
            return Err(Error::Group("label count does not match order".into()));
        }
        let n = order;
        for a in 0..n {
            if !is_permutation(table[a * n..(a + 1) * n].iter().copied(), n)
                || !is_permutation((0..n).map(|b| table[b * n + a]), n)
            {
                return Err(Error::Group("table is not a Latin square".into()));
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|a| table[e * n + a] as usize == a && table[a * n + e] as usize == a))
            .ok_or_else(|| Error::Group("no identity element".into()))? as Elem;
        let inverses: Vec<Elem> = (0..n)
            .map(|a| {
                (0..n)
                    .find(|&b| table[a * n + b] == identity)
                    .expect("Latin square row contains identity") as Elem
            })
            .collect();
        let g = FiniteGroup {
            order,
            table,
            identity,
            inverses,
            labels,
        };
        if !g.associative() {
            return Err(Error::Group("table is not associative".into()));
        }
        Ok(g)
    }

    fn associative(&self) -> bool {
        let n = self.order;
        let check = |a: usize, b: usize, c: usize| {
            let (a, b, c) = (a as Elem, b as Elem, c as Elem);
            self.mul(self.mul(a, b), c) == self.mul(a, self.mul(b, c))
        };
        if n <= FULL_CHECK_ORDER {
            (0..n).all(|a| (0..n).all(|b| (0..n).all(|c| check(a, b, c))))
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(n as u64);
            (0..SPOT_CHECKS).all(|_| check(rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n)))
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> Elem {
        self.identity
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn label(&self, g: Elem) -> String {
        match &self.labels {
            Some(l) => l[g as usize].clone(),
            None => g.to_string(),
        }
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        (0..self.order).map(|g| g as Elem)
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.table[a as usize * self.order + b as usize]
    }

    #[inline]
    pub fn inv(&self, a: Elem) -> Elem {
        self.inverses[a as usize]
    }

    /// `a^-1 b^-1 a b`.
    pub fn commutator(&self, a: Elem, b: Elem) -> Elem {
        self.mul(self.mul(self.inv(a), self.inv(b)), self.mul(a, b))
    }

    pub fn pow(&self, g: Elem, e: i64) -> Elem {
        let mut base = if e < 0 { self.inv(g) } else { g };
        let mut e = e.unsigned_abs();
        let mut acc = self.identity;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// `g^e` for arbitrary integer `e`, reduced modulo the group order.
    pub fn pow_big(&self, g: Elem, e: &BigInt) -> Elem {
        let r = e.mod_floor(&BigInt::from(self.order));
        self.pow(g, r.to_i64().expect("reduced exponent"))
    }

    pub fn element_order(&self, g: Elem) -> usize {
        let mut x = g;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(x, g);
            k += 1;
        }
        k
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order as Elem;
        (0..n).all(|a| (a + 1..n).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Least `e >= 1` with `g^e = 1` for all `g`.
    pub fn exponent(&self) -> usize {
        self.elements().map(|g| self.element_order(g)).fold(1, |a, b| a.lcm(&b))
    }
}

/// A validated automorphism given as an index map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Automorphism {
    map: Vec<Elem>,
    order: usize,
}

impl Automorphism {
    pub fn new(g: &FiniteGroup, map: Vec<Elem>) -> Result<Self> {
        let n = g.order();
        if map.len() != n || !is_permutation(map.iter().copied(), n) {
            return Err(Error::Group("automorphism is not a bijection".into()));
        }
        let hom = |a: Elem, b: Elem| map[g.mul(a, b) as usize] == g.mul(map[a as usize], map[b as usize]);
        let ok = if n <= FULL_CHECK_ORDER {
            g.elements().all(|a| g.elements().all(|b| hom(a, b)))
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(0xa070 ^ n as u64);
            (0..SPOT_CHECKS).all(|_| hom(rng.gen_range(0..n) as Elem, rng.gen_range(0..n) as Elem))
        };
        if !ok {
            return Err(Error::Group("map is not multiplicative".into()));
        }
        let order = permutation_order(&map);
        Ok(Automorphism { map, order })
    }

    pub fn identity(g: &FiniteGroup) -> Self {
        Automorphism {
            map: g.elements().collect(),
            order: 1,
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn map(&self) -> &[Elem] {
        &self.map
    }

    #[inline]
    pub fn apply(&self, g: Elem) -> Elem {
        self.map[g as usize]
    }

    pub fn pow(&self, e: usize) -> Automorphism {
        let e = e % self.order;
        let map: Vec<Elem> = (0..self.map.len() as Elem)
            .map(|g| (0..e).fold(g, |x, _| self.apply(x)))
            .collect();
        let order = permutation_order(&map);
        Automorphism { map, order }
    }
}

fn permutation_order(map: &[Elem]) -> usize {
    let mut seen = vec![false; map.len()];
    let mut order = 1usize;
    for start in 0..map.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            x = map[x] as usize;
            len += 1;
        }
        order = order.lcm(&len);
    }
    order
}

/// Sorted member set of a subgroup.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Subgroup {
    members: Vec<Elem>,
}

impl Subgroup {
    pub fn trivial(g: &FiniteGroup) -> Self {
        Subgroup {
            members: vec![g.identity()],
        }
    }

    pub fn whole(g: &FiniteGroup) -> Self {
        Subgroup {
            members: g.elements().collect(),
        }
    }

    pub(crate) fn from_mask(mask: &[bool]) -> Self {
        Subgroup {
            members: (0..mask.len()).filter(|&i| mask[i]).map(|i| i as Elem).collect(),
        }
    }

    pub fn members(&self) -> &[Elem] {
        &self.members
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.members.len() == 1
    }

    pub fn contains(&self, g: Elem) -> bool {
        self.members.binary_search(&g).is_ok()
    }

    pub fn is_subset(&self, other: &Subgroup) -> bool {
        self.members.iter().all(|&g| other.contains(g))
    }

    pub fn is_normal_in(&self, g: &FiniteGroup) -> bool {
        g.elements()
            .all(|x| self.members.iter().all(|&h| self.contains(g.mul(g.mul(g.inv(x), h), x))))
    }

    pub fn is_invariant_under(&self, alpha: &Automorphism) -> bool {
        self.members.iter().all(|&h| self.contains(alpha.apply(h)))
    }
}

/// `α(g) = g` only for the identity.
pub fn is_fixed_point_free(g: &FiniteGroup, alpha: &Automorphism) -> bool {
    g.elements().all(|x| x == g.identity() || alpha.apply(x) != x)
}

/// Whether `g -> g^-1 α(g)` is a bijection.
pub fn twist_is_bijective(g: &FiniteGroup, alpha: &Automorphism) -> bool {
    is_permutation(g.elements().map(|x| g.mul(g.inv(x), alpha.apply(x))), g.order())
}

/// `∏_i α^i(x)^(a_i)`, factors in index order.
pub fn evaluate_word(g: &FiniteGroup, powers: &[Automorphism], f: &Poly, x: Elem) -> Elem {
    let mut acc = g.identity();
    for (i, a) in f.coeffs().iter().enumerate() {
        let y = powers[i].apply(x);
        acc = g.mul(acc, g.pow_big(y, a));
    }
    acc
}

pub(crate) fn powers_of(g: &FiniteGroup, alpha: &Automorphism, count: usize) -> Vec<Automorphism> {
    let mut out = vec![Automorphism::identity(g)];
    for i in 1..count {
        let map = out[i - 1].map.iter().map(|&x| alpha.apply(x)).collect::<Vec<_>>();
        let order = permutation_order(&map);
        out.push(Automorphism { map, order });
    }
    out.truncate(count);
    out
}

/// Whether `f` is an ordered identity of `α`.
pub fn ordered_identity_holds(g: &FiniteGroup, alpha: &Automorphism, f: &Poly) -> bool {
    identity_holds_modulo(g, alpha, f, &Subgroup::whole(g), &Subgroup::trivial(g))
}

/// Whether the word of `f` maps every element of `h` into normal `n`.
pub fn identity_holds_modulo(g: &FiniteGroup, alpha: &Automorphism, f: &Poly, h: &Subgroup, n: &Subgroup) -> bool {
    if f.is_zero() {
        return true;
    }
    let powers = powers_of(g, alpha, f.coeffs().len());
    h.members().iter().all(|&x| n.contains(evaluate_word(g, &powers, f, x)))
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn cyclic(n: usize) -> FiniteGroup {
        let table = (0..n * n).map(|i| ((i / n + i % n) % n) as Elem).collect();
        FiniteGroup::from_table(n, table, None, DEFAULT_ORDER_CAP).unwrap()
    }

    #[test]
    fn validates_tables() {
        let g = cyclic(6);
        assert_eq!(g.identity(), 0);
        assert_eq!(g.inv(2), 4);
        assert_eq!(g.exponent(), 6);
        assert!(g.is_abelian());
        let bad = vec![0, 1, 1, 0, 0, 0, 1, 1, 1];
        assert!(FiniteGroup::from_table(3, bad, None, 10).is_err());
        assert!(FiniteGroup::from_table(6, cyclic(6).table, None, 5).is_err());
    }

    #[test]
    fn automorphism_checks() {
        let g = cyclic(7);
        let doubling: Vec<Elem> = (0..7).map(|x| (2 * x % 7) as Elem).collect();
        let a = Automorphism::new(&g, doubling).unwrap();
        assert_eq!(a.order(), 3);
        assert!(is_fixed_point_free(&g, &a));
        assert!(twist_is_bijective(&g, &a));
        assert_eq!(a.pow(2).apply(1), 4);
        let id = Automorphism::identity(&g);
        assert!(!is_fixed_point_free(&g, &id) && !twist_is_bijective(&g, &id));
        let shift: Vec<Elem> = (0..7).map(|x| ((x + 1) % 7) as Elem).collect();
        assert!(Automorphism::new(&g, shift).is_err());

        let t = cyclic(1);
        assert!(twist_is_bijective(&t, &Automorphism::identity(&t)));
        let z3 = cyclic(3);
        let inversion = Automorphism::new(&z3, vec![0, 2, 1]).unwrap();
        assert!(is_fixed_point_free(&z3, &inversion));
    }

    #[test]
    fn identities_on_cyclic_groups() {
        let g = cyclic(6);
        let id = Automorphism::identity(&g);
        assert!(ordered_identity_holds(&g, &id, &Poly::from_i64s(&[12])));
        assert!(!ordered_identity_holds(&g, &id, &Poly::from_i64s(&[3])));
        let z7 = cyclic(7);
        let a = Automorphism::new(&z7, (0..7).map(|x| (2 * x % 7) as Elem).collect()).unwrap();
        assert!(ordered_identity_holds(&z7, &a, &Poly::from_i64s(&[-1, 0, 0, 1])));
        assert!(ordered_identity_holds(&z7, &a, &Poly::from_i64s(&[-2, 1])));
        assert!(!ordered_identity_holds(&z7, &a, &Poly::from_i64s(&[-1, 1])));
    }
}
