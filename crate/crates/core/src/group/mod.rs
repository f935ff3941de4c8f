//! Finite groups stored as Cayley tables.
//!
//! Elements are the indices `0..n` and index `0` is always the identity.
//! Every constructor validates the full group axioms before returning, so a
//! [`FiniteGroup`] value is known to be a group.

mod census;
mod morphism;
mod perm;
mod subgroup;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use census::{abelian_invariants, census, census_of_order, describe, identify, lookup, CensusEntry, CENSUS_CAP, GROUP_COUNTS};
pub use morphism::{
    are_isomorphic, automorphism_group, extend_homomorphism, holomorph, is_regular, left_regular,
    right_regular, Isomorphism,
};
pub(crate) use morphism::search_isomorphisms as morphism_search;
pub use perm::{PermGroup, Permutation};
pub use subgroup::{
    characteristic_subgroups, conjugacy_classes, is_normal, normal_subgroups, subgroups, Subgroup,
};

/// A finite group given by its multiplication table.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "GroupJson", into = "GroupJson")]
pub struct FiniteGroup {
    order: usize,
    table: Vec<usize>,
    inv: Vec<usize>,
    label: String,
}

/// On-disk form of a group: `{ "order": n, "label": str, "table": [[int]] }`.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupJson {
    pub order: usize,
    pub label: String,
    pub table: Vec<Vec<usize>>,
}

impl TryFrom<GroupJson> for FiniteGroup {
    type Error = Error;

    fn try_from(json: GroupJson) -> Result<Self> {
        if json.table.len() != json.order {
            return Err(Error::OrderMismatch {
                left: json.order,
                right: json.table.len(),
            });
        }
        FiniteGroup::from_table(json.label, json.table)
    }
}

impl From<FiniteGroup> for GroupJson {
    fn from(g: FiniteGroup) -> Self {
        GroupJson {
            order: g.order,
            table: g.rows(),
            label: g.label,
        }
    }
}

impl FiniteGroup {
    /// Builds a group from an explicit table, checking closure, identity,
    /// associativity and inverses.
    pub fn from_table(label: impl Into<String>, table: Vec<Vec<usize>>) -> Result<Self> {
        let n = table.len();
        if n == 0 {
            return Err(Error::EmptyGroup);
        }
        let mut flat = Vec::with_capacity(n * n);
        for (row, entries) in table.iter().enumerate() {
            if entries.len() != n {
                return Err(Error::NotSquare {
                    row,
                    expected: n,
                    found: entries.len(),
                });
            }
            for (col, &value) in entries.iter().enumerate() {
                if value >= n {
                    return Err(Error::EntryOutOfRange {
                        row,
                        col,
                        value,
                        order: n,
                    });
                }
            }
            flat.extend_from_slice(entries);
        }
        Self::from_flat(label.into(), n, flat)
    }

    /// Builds a group of order `n` whose product is given by `mul`.
    pub(crate) fn from_fn(
        label: impl Into<String>,
        n: usize,
        mut mul: impl FnMut(usize, usize) -> usize,
    ) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyGroup);
        }
        let mut flat = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                let value = mul(a, b);
                if value >= n {
                    return Err(Error::EntryOutOfRange {
                        row: a,
                        col: b,
                        value,
                        order: n,
                    });
                }
                flat.push(value);
            }
        }
        Self::from_flat(label.into(), n, flat)
    }

    fn from_flat(label: String, n: usize, table: Vec<usize>) -> Result<Self> {
        let at = |a: usize, b: usize| table[a * n + b];
        for a in 0..n {
            if at(0, a) != a || at(a, 0) != a {
                return Err(Error::IdentityNotZero(a));
            }
        }
        let mut inv = vec![usize::MAX; n];
        for a in 0..n {
            match (0..n).find(|&b| at(a, b) == 0) {
                Some(b) if at(b, a) == 0 => inv[a] = b,
                _ => return Err(Error::MissingInverse(a)),
            }
        }
        for a in 0..n {
            for b in 0..n {
                let ab = at(a, b);
                for c in 0..n {
                    if at(ab, c) != at(a, at(b, c)) {
                        return Err(Error::NotAssociative { a, b, c });
                    }
                }
            }
        }
        Ok(FiniteGroup {
            order: n,
            table,
            inv,
            label,
        })
    }

    /// Cyclic group `Cn` with `i * j = (i + j) mod n`.
    pub fn cyclic(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParameter("cyclic group of order 0".into()));
        }
        Self::from_fn(format!("C{n}"), n, |a, b| (a + b) % n)
    }

    /// Direct sum of cyclic groups of the given orders. The index of
    /// `(x_0, x_1, ..)` is the mixed-radix number with `x_0` least significant.
    pub fn abelian(factors: &[usize]) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::InvalidParameter("empty factor list".into()));
        }
        if let Some(&bad) = factors.iter().find(|&&f| f < 2) {
            return Err(Error::InvalidParameter(format!(
                "cyclic factor {bad} is smaller than 2"
            )));
        }
        let n: usize = factors.iter().product();
        let label = factors
            .iter()
            .map(|f| format!("C{f}"))
            .collect::<Vec<_>>()
            .join("x");
        let digits = |mut x: usize| {
            factors
                .iter()
                .map(|&f| {
                    let d = x % f;
                    x /= f;
                    d
                })
                .collect::<Vec<_>>()
        };
        Self::from_fn(label, n, |a, b| {
            let (da, db) = (digits(a), digits(b));
            let mut index = 0;
            for k in (0..factors.len()).rev() {
                index = index * factors[k] + (da[k] + db[k]) % factors[k];
            }
            index
        })
    }

    /// Dihedral group of order `n` (so `D8` has 8 elements). `D2 = C2` and
    /// `D4 = C2xC2`. Element `r^i s^j` has index `i + (n/2) j`.
    pub fn dihedral(n: usize) -> Result<Self> {
        if n == 0 || n % 2 != 0 {
            return Err(Error::InvalidParameter(format!(
                "dihedral order must be even and positive, got {n}"
            )));
        }
        let m = n / 2;
        let label = match n {
            2 => "C2".to_string(),
            4 => "C2xC2".to_string(),
            _ => format!("D{n}"),
        };
        // r^i s^j * r^k s^l = r^(i + (-1)^j k) s^(j + l)
        Self::from_fn(label, n, |a, b| {
            let (i, j) = (a % m, a / m);
            let (k, l) = (b % m, b / m);
            let rot = if j == 0 { (i + k) % m } else { (i + m - k) % m };
            rot + m * ((j + l) % 2)
        })
    }

    /// Quaternion group on `sigma^i tau^j` (index `i + 4j`) with
    /// `sigma^4 = 1`, `sigma^2 = tau^2` and `tau sigma tau^-1 = sigma^-1`.
    pub fn quaternion8() -> Self {
        Self::from_fn("Q8", 8, |a, b| {
            let (i, j) = ((a % 4) as i64, (a / 4) as i64);
            let (r, s) = ((b % 4) as i64, (b / 4) as i64);
            let sign = if j == 0 { 1 } else { -1 };
            q8_index(i + sign * r, j + s)
        })
        .expect("quaternion table is a group")
    }

    /// Semidirect product `N x| H` on pairs `(d, x)` (index `d + |N| x`) with
    /// `(d, x)(d', x') = (d action[x](d'), x x')`.
    ///
    /// `action[x]` must be an automorphism of `n_grp` and `x -> action[x]` a
    /// homomorphism; both are checked.
    pub fn semidirect_product(
        n_grp: &FiniteGroup,
        h_grp: &FiniteGroup,
        action: &[Vec<usize>],
    ) -> Result<Self> {
        let (nn, nh) = (n_grp.order(), h_grp.order());
        if action.len() != nh {
            return Err(Error::InvalidParameter(format!(
                "action has {} entries for a group of order {nh}",
                action.len()
            )));
        }
        for (x, map) in action.iter().enumerate() {
            if !n_grp.is_automorphism(map) {
                return Err(Error::InvalidParameter(format!(
                    "action of element {x} is not an automorphism"
                )));
            }
        }
        for x in 0..nh {
            for y in 0..nh {
                let xy = h_grp.mul(x, y);
                if (0..nn).any(|d| action[xy][d] != action[x][action[y][d]]) {
                    return Err(Error::InvalidParameter(format!(
                        "action is not a homomorphism at ({x}, {y})"
                    )));
                }
            }
        }
        let label = format!("{}:{}", n_grp.label(), h_grp.label());
        Self::from_fn(label, nn * nh, |a, b| {
            let (d, x) = (a % nn, a / nn);
            let (e, y) = (b % nn, b / nn);
            n_grp.mul(d, action[x][e]) + nn * h_grp.mul(x, y)
        })
    }

    /// Direct product on pairs `(i, j)` with index `i + |a| j`.
    pub fn direct_product(a: &FiniteGroup, b: &FiniteGroup) -> Self {
        let na = a.order();
        let label = format!("{}x{}", a.label(), b.label());
        Self::from_fn(label, na * b.order(), |x, y| {
            a.mul(x % na, y % na) + na * b.mul(x / na, y / na)
        })
        .expect("direct product of groups is a group")
    }

    /// The opposite group, `a *op b = b * a`.
    pub fn opposite(&self) -> Self {
        let n = self.order;
        let mut table = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                table[a * n + b] = self.mul(b, a);
            }
        }
        FiniteGroup {
            order: n,
            table,
            inv: self.inv.clone(),
            label: format!("{}^op", self.label),
        }
    }

    /// Relabels elements: the result has `map[x] * map[y] = map[x * y]`.
    /// `map` must be a bijection fixing 0.
    pub fn transport(&self, map: &[usize], label: impl Into<String>) -> Result<Self> {
        let n = self.order;
        Permutation::new(map.to_vec())?;
        if map.len() != n || map[0] != 0 {
            return Err(Error::InvalidParameter(
                "transport map must fix the identity".into(),
            ));
        }
        let mut table = vec![0; n * n];
        let mut inv = vec![0; n];
        for a in 0..n {
            inv[map[a]] = map[self.inv[a]];
            for b in 0..n {
                table[map[a] * n + map[b]] = map[self.mul(a, b)];
            }
        }
        Ok(FiniteGroup {
            order: n,
            table,
            inv,
            label: label.into(),
        })
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a]
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// Row-major copy of the table.
    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.table.chunks(self.order).map(<[usize]>::to_vec).collect()
    }

    pub(crate) fn flat_table(&self) -> &[usize] {
        &self.table
    }

    pub fn inverses(&self) -> &[usize] {
        &self.inv
    }

    /// Least `k >= 1` with `a^k = 1`.
    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn element_orders(&self) -> Vec<usize> {
        (0..self.order).map(|a| self.element_order(a)).collect()
    }

    pub fn power(&self, a: usize, k: usize) -> usize {
        (0..k).fold(0, |acc, _| self.mul(acc, a))
    }

    pub fn exponent(&self) -> usize {
        self.element_orders().into_iter().fold(1, lcm)
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (0..a).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn is_cyclic(&self) -> bool {
        (0..self.order).any(|a| self.element_order(a) == self.order)
    }

    pub fn center(&self) -> Vec<usize> {
        (0..self.order)
            .filter(|&a| (0..self.order).all(|b| self.mul(a, b) == self.mul(b, a)))
            .collect()
    }

    /// The subgroup generated by `gens`, as a sorted element list.
    pub fn closure(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.order];
        seen[0] = true;
        let mut members = vec![0];
        let mut i = 0;
        while i < members.len() {
            let x = members[i];
            for &g in gens {
                let y = self.mul(x, g);
                if !seen[y] {
                    seen[y] = true;
                    members.push(y);
                }
            }
            i += 1;
        }
        members.sort_unstable();
        members
    }

    /// A small generating set, chosen greedily: repeatedly add the element of
    /// largest order (least index on ties) outside the current closure.
    pub fn generating_set(&self) -> Vec<usize> {
        let orders = self.element_orders();
        let mut candidates: Vec<usize> = (1..self.order).collect();
        candidates.sort_by_key(|&a| (std::cmp::Reverse(orders[a]), a));
        let mut gens = Vec::new();
        let mut span = vec![0];
        for a in candidates {
            if span.len() == self.order {
                break;
            }
            if span.binary_search(&a).is_err() {
                gens.push(a);
                span = self.closure(&gens);
            }
        }
        gens
    }

    /// True iff `map` is a bijective endomorphism.
    pub fn is_automorphism(&self, map: &[usize]) -> bool {
        let n = self.order;
        if map.len() != n || Permutation::new(map.to_vec()).is_err() {
            return false;
        }
        (0..n).all(|a| (0..n).all(|b| map[self.mul(a, b)] == self.mul(map[a], map[b])))
    }

    /// True iff `members` is closed under product and inverse and contains 0.
    pub fn is_subgroup(&self, members: &[usize]) -> bool {
        let mut inside = vec![false; self.order];
        for &m in members {
            if m >= self.order {
                return false;
            }
            inside[m] = true;
        }
        inside[0]
            && members.iter().all(|&a| {
                inside[self.inv(a)] && members.iter().all(|&b| inside[self.mul(a, b)])
            })
    }
}

/// Index of `sigma^i tau^j` in [`FiniteGroup::quaternion8`] for arbitrary
/// integer exponents.
pub fn q8_index(i: i64, j: i64) -> usize {
    // tau^2 = sigma^2, so sigma^i tau^j = sigma^(i + j - (j mod 2)) tau^(j mod 2)
    let jr = j.rem_euclid(2);
    let i = (i + j - jr).rem_euclid(4);
    (i + 4 * jr) as usize
}

pub(crate) fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub(crate) fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

/// Distinct prime divisors in increasing order.
pub fn prime_divisors(mut n: usize) -> Vec<usize> {
    let mut primes = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            primes.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        primes.push(n);
    }
    primes
}

pub fn is_prime(n: usize) -> bool {
    n >= 2 && prime_divisors(n) == [n]
}
