//! Finite groups given by Cayley tables.
//!
//! Elements are indices `0..order`. A [`FiniteGroup`] can only be obtained
//! through a constructor that checks closure, associativity, identity and
//! inverses, so every value downstream is a genuine group.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

/// Element index inside its owning group.
pub type Element = usize;

/// Largest order accepted by any constructor. Construction runs an
/// `O(n^3)` associativity scan.
pub const MAX_GROUP_ORDER: usize = 512;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("invalid order: {0}")]
    InvalidOrder(String),
    #[error("table row {row} has {len} entries, expected {order}")]
    RaggedTable {
        row: usize,
        len: usize,
        order: usize,
    },
    #[error("table entry ({a}, {b}) = {value} is outside 0..{order}")]
    NotClosed {
        a: Element,
        b: Element,
        value: usize,
        order: usize,
    },
    #[error("operation is not associative at ({a}, {b}, {c})")]
    NotAssociative { a: Element, b: Element, c: Element },
    #[error("table has no two-sided identity")]
    NoIdentity,
    #[error("element {0} has no two-sided inverse")]
    NoInverse(Element),
    #[error("element {element} is outside 0..{order}")]
    InvalidElement { element: usize, order: usize },
    #[error("subset member {member} is outside 0..{order}")]
    InvalidSubset { member: usize, order: usize },
    #[error("subset belongs to a group of order {subset}, not {group}")]
    SubsetOwner { subset: usize, group: usize },
    #[error("invalid map: {0}")]
    InvalidMap(String),
    #[error("group order {order} exceeds the enumeration cap {cap}")]
    ResourceLimit { order: usize, cap: usize },
    #[error("unknown group {0:?}")]
    UnknownGroup(String),
}

#[derive(Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    name: String,
    order: usize,
    table: Vec<Element>,
    identity: Element,
    inverses: Vec<Element>,
}

impl FiniteGroup {
    /// Validates a Cayley table and derives identity and inverses.
    pub fn from_table(name: impl Into<String>, rows: &[Vec<usize>]) -> Result<Self, GroupError> {
        let order = rows.len();
        if order == 0 {
            return Err(GroupError::InvalidOrder("empty table".into()));
        }
        if order > MAX_GROUP_ORDER {
            return Err(GroupError::InvalidOrder(format!(
                "{order} exceeds the maximum of {MAX_GROUP_ORDER}"
            )));
        }
        let mut table = Vec::with_capacity(order * order);
        for (a, row) in rows.iter().enumerate() {
            if row.len() != order {
                return Err(GroupError::RaggedTable {
                    row: a,
                    len: row.len(),
                    order,
                });
            }
            for (b, &value) in row.iter().enumerate() {
                if value >= order {
                    return Err(GroupError::NotClosed { a, b, value, order });
                }
                table.push(value);
            }
        }
        Self::from_flat(name.into(), order, table)
    }

    fn from_flat(name: String, order: usize, table: Vec<Element>) -> Result<Self, GroupError> {
        debug_assert_eq!(table.len(), order * order);
        let at = |a: usize, b: usize| table[a * order + b];

        let identity = (0..order)
            .find(|&e| (0..order).all(|a| at(e, a) == a && at(a, e) == a))
            .ok_or(GroupError::NoIdentity)?;

        let mut inverses = Vec::with_capacity(order);
        for a in 0..order {
            let inv = (0..order)
                .find(|&b| at(a, b) == identity && at(b, a) == identity)
                .ok_or(GroupError::NoInverse(a))?;
            inverses.push(inv);
        }

        for a in 0..order {
            for b in 0..order {
                let ab = at(a, b);
                for c in 0..order {
                    if at(ab, c) != at(a, at(b, c)) {
                        return Err(GroupError::NotAssociative { a, b, c });
                    }
                }
            }
        }

        Ok(FiniteGroup {
            name,
            order,
            table,
            identity,
            inverses,
        })
    }

    fn from_fn(
        name: String,
        order: usize,
        op: impl Fn(usize, usize) -> usize,
    ) -> Result<Self, GroupError> {
        let mut table = Vec::with_capacity(order * order);
        for a in 0..order {
            for b in 0..order {
                table.push(op(a, b));
            }
        }
        Self::from_flat(name, order, table)
    }

    /// The cyclic group `Z_n` under addition mod `n`.
    pub fn cyclic(n: usize) -> Result<Self, GroupError> {
        if n == 0 || n > MAX_GROUP_ORDER {
            return Err(GroupError::InvalidOrder(format!("Z{n}")));
        }
        Self::from_fn(format!("Z{n}"), n, |a, b| (a + b) % n)
    }

    /// The dihedral group of order `2n`. Element `j*n + i` is `r^i s^j`.
    pub fn dihedral(n: usize) -> Result<Self, GroupError> {
        if n < 2 || 2 * n > MAX_GROUP_ORDER {
            return Err(GroupError::InvalidOrder(format!("D{n}")));
        }
        Self::from_fn(format!("D{n}"), 2 * n, |a, b| {
            let (i, j) = (a % n, a / n);
            let (k, l) = (b % n, b / n);
            // r^i s^j r^k s^l = r^(i ± k) s^(j+l)
            let rot = if j == 0 { (i + k) % n } else { (i + n - k) % n };
            ((j + l) % 2) * n + rot
        })
    }

    /// The symmetric group on `n ≤ 5` points. Permutations are listed in
    /// lexicographic order (identity first) and composed right to left:
    /// `op(p, q)(x) = p(q(x))`.
    pub fn symmetric(n: usize) -> Result<Self, GroupError> {
        if !(1..=5).contains(&n) {
            return Err(GroupError::InvalidOrder(format!("S{n}: need 1 <= n <= 5")));
        }
        let perms = permutations(n);
        let index: HashMap<&[u8], usize> = perms
            .iter()
            .enumerate()
            .map(|(i, p)| (p.as_slice(), i))
            .collect();
        Self::from_fn(format!("S{n}"), perms.len(), |a, b| {
            let (p, q) = (&perms[a], &perms[b]);
            let composed: Vec<u8> = (0..n).map(|x| p[q[x] as usize]).collect();
            index[composed.as_slice()]
        })
    }

    /// The Klein four-group `Z2 × Z2` under its own name.
    pub fn klein_four() -> Self {
        let mut g = Self::product(&Self::cyclic(2).unwrap(), &Self::cyclic(2).unwrap())
            .expect("Z2xZ2 is a group");
        g.name = "V4".into();
        g
    }

    /// Direct product. The pair `(g, h)` is encoded as `g * |H| + h`.
    pub fn product(left: &FiniteGroup, right: &FiniteGroup) -> Result<Self, GroupError> {
        let order = left.order * right.order;
        if order > MAX_GROUP_ORDER {
            return Err(GroupError::InvalidOrder(format!(
                "{}x{} has order {order}, maximum is {MAX_GROUP_ORDER}",
                left.name, right.name
            )));
        }
        let m = right.order;
        Self::from_fn(format!("{}x{}", left.name, right.name), order, |a, b| {
            left.op(a / m, b / m) * m + right.op(a % m, b % m)
        })
    }

    /// Resolves a registry name: `Zn`, `Dn`, `Sn`, `V4` (also `K4`,
    /// `Klein4`), and `x`-separated products such as `Z2xZ4`.
    pub fn named(name: &str) -> Result<Self, GroupError> {
        let unknown = || GroupError::UnknownGroup(name.to_string());
        let trimmed = name.trim();
        if trimmed.contains('x') {
            let mut parts = trimmed.split('x');
            let first = parts.next().ok_or_else(unknown)?;
            let mut acc = Self::named(first).map_err(|_| unknown())?;
            for part in parts {
                let next = Self::named(part).map_err(|_| unknown())?;
                acc = Self::product(&acc, &next)?;
            }
            return Ok(acc);
        }
        match trimmed {
            "V4" | "K4" | "Klein4" => return Ok(Self::klein_four()),
            _ => {}
        }
        let mut chars = trimmed.chars();
        let family = chars.next().ok_or_else(unknown)?;
        let n: usize = chars.as_str().parse().map_err(|_| unknown())?;
        match family {
            'Z' => Self::cyclic(n),
            'D' => Self::dihedral(n),
            'S' => Self::symmetric(n),
            _ => Err(unknown()),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> Element {
        self.identity
    }

    #[inline]
    pub fn op(&self, a: Element, b: Element) -> Element {
        self.table[a * self.order + b]
    }

    #[inline]
    pub fn inverse(&self, a: Element) -> Element {
        self.inverses[a]
    }

    /// `a⁻¹ g a`
    #[inline]
    pub fn conjugate(&self, g: Element, a: Element) -> Element {
        self.op(self.op(self.inverse(a), g), a)
    }

    pub fn elements(&self) -> std::ops::Range<Element> {
        0..self.order
    }

    pub fn check_element(&self, element: usize) -> Result<Element, GroupError> {
        if element < self.order {
            Ok(element)
        } else {
            Err(GroupError::InvalidElement {
                element,
                order: self.order,
            })
        }
    }

    /// Cayley table as nested rows, for serialization.
    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.table
            .chunks(self.order)
            .map(<[usize]>::to_vec)
            .collect()
    }

    /// First pair `(a, b)` with `ab != ba`, if any.
    pub fn non_commuting_pair(&self) -> Option<(Element, Element)> {
        self.elements()
            .flat_map(|a| (a + 1..self.order).map(move |b| (a, b)))
            .find(|&(a, b)| self.op(a, b) != self.op(b, a))
    }

    pub fn is_abelian(&self) -> bool {
        self.non_commuting_pair().is_none()
    }

    pub fn element_order(&self, a: Element) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != self.identity {
            x = self.op(x, a);
            k += 1;
        }
        k
    }

    /// Sorted multiset of element orders.
    pub fn order_census(&self) -> Vec<usize> {
        let mut orders: Vec<usize> = self.elements().map(|a| self.element_order(a)).collect();
        orders.sort_unstable();
        orders
    }

    /// Same order and identical Cayley table, regardless of name.
    pub fn same_table(&self, other: &FiniteGroup) -> bool {
        self.order == other.order && self.table == other.table
    }

    pub fn into_shared(self) -> Arc<FiniteGroup> {
        Arc::new(self)
    }
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteGroup")
            .field("name", &self.name)
            .field("order", &self.order)
            .finish_non_exhaustive()
    }
}

/// Registry names shipped with the CLI.
pub fn registry_names() -> Vec<String> {
    let mut names: Vec<String> = (1..=12).map(|n| format!("Z{n}")).collect();
    names.extend((3..=6).map(|n| format!("D{n}")));
    names.extend(["S3", "S4", "V4", "Z2xZ4"].map(String::from));
    names
}

fn permutations(n: usize) -> Vec<Vec<u8>> {
    fn go(prefix: &mut Vec<u8>, used: &mut [bool], out: &mut Vec<Vec<u8>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for x in 0..used.len() {
            if !used[x] {
                used[x] = true;
                prefix.push(x as u8);
                go(prefix, used, out);
                prefix.pop();
                used[x] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::with_capacity(n), &mut vec![false; n], &mut out);
    out
}
