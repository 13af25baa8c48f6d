//! Finite groups given by multiplication tables, their subgroups, and finite G-sets.
//!
//! Elements are the indices `0..order`. Every constructor places the identity
//! at index 0 and enumerates elements in a fixed canonical order, so matrices
//! built downstream are reproducible.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;
use std::sync::Arc;

use num_integer::Integer;

use crate::error::{Error, Result};

/// Largest order for which table construction runs the exhaustive associativity scan.
const ASSOCIATIVITY_SCAN_LIMIT: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupSpec {
    Cyclic(u64),
    Product(Vec<GroupSpec>),
    /// `(Z/modulus)^× / subgroup`; an empty subgroup list means `{1}`.
    Cyclotomic { modulus: u64, subgroup: Vec<u64> },
    /// Dihedral group of order `2n`.
    Dihedral(u64),
    /// Quaternion group of order 8.
    Quaternion,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupLabel {
    Cyclic(u64),
    Product(Vec<GroupLabel>),
    Cyclotomic { modulus: u64, subgroup: Vec<u64> },
    Dihedral(u64),
    Quaternion,
    Subgroup,
    Table,
}

#[derive(Clone)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<usize>,
    identity: usize,
    inverse: Vec<usize>,
    label: GroupLabel,
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteGroup").field("order", &self.order).field("label", &self.label).finish()
    }
}

impl FiniteGroup {
    /// Validates a multiplication table (`table[g * order + h] = g·h`).
    pub fn from_table(order: usize, table: Vec<usize>, label: GroupLabel) -> Result<FiniteGroup> {
        if order == 0 {
            return Err(Error::InvalidGroup("empty group".into()));
        }
        if table.len() != order * order || table.iter().any(|&x| x >= order) {
            return Err(Error::InvalidGroup("malformed multiplication table".into()));
        }
        let identity = (0..order)
            .find(|&e| (0..order).all(|g| table[e * order + g] == g && table[g * order + e] == g))
            .ok_or_else(|| Error::InvalidGroup("no identity element".into()))?;
        let mut inverse = vec![0; order];
        for g in 0..order {
            inverse[g] = (0..order)
                .find(|&h| table[g * order + h] == identity && table[h * order + g] == identity)
                .ok_or_else(|| Error::InvalidGroup(format!("element {g} has no inverse")))?;
        }
        if order <= ASSOCIATIVITY_SCAN_LIMIT {
            for a in 0..order {
                for b in 0..order {
                    let ab = table[a * order + b];
                    for c in 0..order {
                        if table[ab * order + c] != table[a * order + table[b * order + c]] {
                            return Err(Error::InvalidGroup(format!("not associative at ({a},{b},{c})")));
                        }
                    }
                }
            }
        }
        Ok(FiniteGroup { order, table, identity, inverse, label })
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn identity(&self) -> usize {
        self.identity
    }

    #[inline]
    pub fn mul(&self, g: usize, h: usize) -> usize {
        self.table[g * self.order + h]
    }

    #[inline]
    pub fn inv(&self, g: usize) -> usize {
        self.inverse[g]
    }

    pub fn label(&self) -> &GroupLabel {
        &self.label
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    /// Same underlying table; labels are ignored.
    pub fn same_table(&self, other: &FiniteGroup) -> bool {
        self.order == other.order && self.table == other.table
    }

    pub fn power(&self, g: usize, k: usize) -> usize {
        (0..k).fold(self.identity, |acc, _| self.mul(acc, g))
    }

    pub fn element_order(&self, g: usize) -> usize {
        let mut x = g;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(x, g);
            k += 1;
        }
        k
    }

    pub fn exponent(&self) -> usize {
        self.elements().map(|g| self.element_order(g)).fold(1, |a, b| a.lcm(&b))
    }

    pub fn is_abelian(&self) -> bool {
        self.elements().all(|g| self.elements().all(|h| self.mul(g, h) == self.mul(h, g)))
    }

    pub fn is_cyclic(&self) -> bool {
        self.elements().any(|g| self.element_order(g) == self.order)
    }

    /// Closure of a set of elements under multiplication (a subgroup, since the group is finite).
    pub fn generated(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.order];
        seen[self.identity] = true;
        let mut queue = VecDeque::from([self.identity]);
        let mut out = vec![self.identity];
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.mul(x, g);
                if !seen[y] {
                    seen[y] = true;
                    out.push(y);
                    queue.push_back(y);
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// A generating set chosen greedily in element order.
    pub fn generators(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut span = vec![self.identity];
        for g in self.elements() {
            if span.binary_search(&g).is_err() {
                gens.push(g);
                span = self.generated(&gens);
            }
            if span.len() == self.order {
                break;
            }
        }
        gens
    }

    /// Every distinct cyclic subgroup `<g>`, sorted by (order, elements).
    pub fn cyclic_subgroups(self: &Arc<Self>) -> Vec<Subgroup> {
        let mut sets: BTreeSet<(usize, Vec<usize>)> = BTreeSet::new();
        for g in self.elements() {
            let s = self.generated(&[g]);
            sets.insert((s.len(), s));
        }
        sets.into_iter().map(|(_, s)| Subgroup::new_unchecked(self.clone(), s)).collect()
    }

    /// All subgroups, sorted by (order, elements). Every subgroup is a join of cyclic ones.
    pub fn subgroups(self: &Arc<Self>) -> Vec<Subgroup> {
        let cyclic: Vec<Vec<usize>> = self.elements().map(|g| self.generated(&[g])).collect();
        let mut found: BTreeSet<Vec<usize>> = cyclic.iter().cloned().collect();
        let mut frontier: Vec<Vec<usize>> = found.iter().cloned().collect();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for s in &frontier {
                for c in &cyclic {
                    if c.iter().all(|x| s.binary_search(x).is_ok()) {
                        continue;
                    }
                    let mut gens = s.clone();
                    gens.extend_from_slice(c);
                    let joined = self.generated(&gens);
                    if found.insert(joined.clone()) {
                        next.push(joined);
                    }
                }
            }
            frontier = next;
        }
        let mut all: Vec<(usize, Vec<usize>)> = found.into_iter().map(|s| (s.len(), s)).collect();
        all.sort();
        all.into_iter().map(|(_, s)| Subgroup::new_unchecked(self.clone(), s)).collect()
    }

    pub fn whole(self: &Arc<Self>) -> Subgroup {
        Subgroup::new_unchecked(self.clone(), self.elements().collect())
    }

    pub fn trivial_subgroup(self: &Arc<Self>) -> Subgroup {
        Subgroup::new_unchecked(self.clone(), vec![self.identity])
    }
}

/// Builds a group from a constructor descriptor.
pub fn make_group(spec: &GroupSpec) -> Result<FiniteGroup> {
    match spec {
        GroupSpec::Cyclic(n) => cyclic(*n),
        GroupSpec::Product(factors) => {
            let groups = factors.iter().map(make_group).collect::<Result<Vec<_>>>()?;
            Ok(direct_product(&groups))
        }
        GroupSpec::Cyclotomic { modulus, subgroup } => Ok(CyclotomicQuotient::new(*modulus, subgroup)?.group),
        GroupSpec::Dihedral(n) => dihedral(*n),
        GroupSpec::Quaternion => Ok(quaternion()),
    }
}

pub fn cyclic(n: u64) -> Result<FiniteGroup> {
    if n == 0 {
        return Err(Error::InvalidGroup("cyclic group of order 0".into()));
    }
    let n = n as usize;
    let table = (0..n * n).map(|k| (k / n + k % n) % n).collect();
    FiniteGroup::from_table(n, table, GroupLabel::Cyclic(n as u64))
}

/// Direct product with lexicographic element order (first factor most significant).
pub fn direct_product(factors: &[FiniteGroup]) -> FiniteGroup {
    let order: usize = factors.iter().map(FiniteGroup::order).product();
    let decompose = |mut x: usize| -> Vec<usize> {
        let mut digits = vec![0; factors.len()];
        for (i, f) in factors.iter().enumerate().rev() {
            digits[i] = x % f.order();
            x /= f.order();
        }
        digits
    };
    let mut table = Vec::with_capacity(order * order);
    for a in 0..order {
        let da = decompose(a);
        for b in 0..order {
            let db = decompose(b);
            let mut idx = 0;
            for (i, f) in factors.iter().enumerate() {
                idx = idx * f.order() + f.mul(da[i], db[i]);
            }
            table.push(idx);
        }
    }
    let label = GroupLabel::Product(factors.iter().map(|f| f.label.clone()).collect());
    FiniteGroup::from_table(order, table, label).expect("product of groups is a group")
}

/// Dihedral group of order `2n`: index `i` is `r^i`, index `n + i` is `s r^i`.
pub fn dihedral(n: u64) -> Result<FiniteGroup> {
    if n == 0 {
        return Err(Error::InvalidGroup("dihedral group needs n >= 1".into()));
    }
    let n = n as usize;
    let order = 2 * n;
    let mut table = Vec::with_capacity(order * order);
    for a in 0..order {
        let (sa, ia) = (a / n, a % n);
        for b in 0..order {
            let (sb, ib) = (b / n, b % n);
            // s^sa r^ia s^sb r^ib = s^(sa+sb) r^(±ia + ib)
            let i = if sb == 1 { (n - ia + ib) % n } else { (ia + ib) % n };
            table.push(((sa + sb) % 2) * n + i);
        }
    }
    FiniteGroup::from_table(order, table, GroupLabel::Dihedral(n as u64))
}

/// Quaternion group; elements in order `1, -1, i, -i, j, -j, k, -k`.
pub fn quaternion() -> FiniteGroup {
    // unit index u in {0:1, 1:i, 2:j, 3:k} with sign bit
    const PROD: [[(usize, bool); 4]; 4] = [
        [(0, false), (1, false), (2, false), (3, false)],
        [(1, false), (0, true), (3, false), (2, true)],
        [(2, false), (3, true), (0, true), (1, false)],
        [(3, false), (2, false), (1, true), (0, true)],
    ];
    let mut table = Vec::with_capacity(64);
    for a in 0..8 {
        for b in 0..8 {
            let (u, neg) = PROD[a / 2][b / 2];
            let sign = (a % 2 == 1) ^ (b % 2 == 1) ^ neg;
            table.push(2 * u + sign as usize);
        }
    }
    FiniteGroup::from_table(8, table, GroupLabel::Quaternion).expect("quaternion table")
}

/// `(Z/n)^× / H` with elements ordered by their least unit representative.
#[derive(Clone, Debug)]
pub struct CyclotomicQuotient {
    pub modulus: u64,
    /// `H` as a sorted list of residues.
    pub subgroup: Vec<u64>,
    /// Least representative of each coset, increasing; `reps[0]` is the class of 1.
    pub reps: Vec<u64>,
    /// Coset index of each residue mod n (`None` for non-units).
    pub index_of: Vec<Option<usize>>,
    pub group: FiniteGroup,
}

pub fn units_mod(n: u64) -> Vec<u64> {
    (0..n).filter(|&a| a.gcd(&n) == 1).collect()
}

impl CyclotomicQuotient {
    pub fn new(modulus: u64, subgroup: &[u64]) -> Result<CyclotomicQuotient> {
        if modulus == 0 {
            return Err(Error::InvalidGroup("cyclotomic modulus must be positive".into()));
        }
        if modulus > 1 << 20 {
            return Err(Error::InvalidGroup(format!("modulus {modulus} too large")));
        }
        let n = modulus;
        let one = 1 % n;
        let mut h: Vec<u64> = subgroup.iter().map(|&x| x % n).collect();
        h.push(one);
        h.sort_unstable();
        h.dedup();
        for &x in &h {
            if x.gcd(&n) != 1 {
                return Err(Error::InvalidGroup(format!("{x} is not a unit mod {n}")));
            }
        }
        for &a in &h {
            for &b in &h {
                if h.binary_search(&(a * b % n)).is_err() {
                    return Err(Error::InvalidGroup(format!("subgroup not closed: {a}*{b} mod {n}")));
                }
            }
        }
        let units = units_mod(n);
        let mut index_of: Vec<Option<usize>> = vec![None; n as usize];
        let mut reps = Vec::new();
        for &u in &units {
            if index_of[u as usize].is_some() {
                continue;
            }
            let idx = reps.len();
            reps.push(u);
            for &x in &h {
                index_of[(u * x % n) as usize] = Some(idx);
            }
        }
        let order = reps.len();
        let mut table = Vec::with_capacity(order * order);
        for &a in &reps {
            for &b in &reps {
                table.push(index_of[(a * b % n) as usize].expect("product of units is a unit"));
            }
        }
        let group = FiniteGroup::from_table(
            order,
            table,
            GroupLabel::Cyclotomic { modulus: n, subgroup: h.clone() },
        )?;
        Ok(CyclotomicQuotient { modulus: n, subgroup: h, reps, index_of, group })
    }

    /// Class of a residue, if it is a unit.
    pub fn class_of(&self, a: u64) -> Option<usize> {
        self.index_of[(a % self.modulus) as usize]
    }
}

#[derive(Clone)]
pub struct Subgroup {
    parent: Arc<FiniteGroup>,
    elements: Vec<usize>,
    as_group: Arc<FiniteGroup>,
}

impl fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subgroup{:?}", self.elements)
    }
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.parent.same_table(&other.parent) && self.elements == other.elements
    }
}

impl Eq for Subgroup {}

impl Subgroup {
    /// Validates closure; elements may be given in any order.
    pub fn new(parent: Arc<FiniteGroup>, elements: &[usize]) -> Result<Subgroup> {
        let mut el: Vec<usize> = elements.to_vec();
        el.sort_unstable();
        el.dedup();
        if el.iter().any(|&x| x >= parent.order()) {
            return Err(Error::NotASubgroup("element out of range".into()));
        }
        if el.binary_search(&parent.identity()).is_err() {
            return Err(Error::NotASubgroup("missing identity".into()));
        }
        for &a in &el {
            if el.binary_search(&parent.inv(a)).is_err() {
                return Err(Error::NotASubgroup(format!("missing inverse of {a}")));
            }
            for &b in &el {
                if el.binary_search(&parent.mul(a, b)).is_err() {
                    return Err(Error::NotASubgroup(format!("not closed at ({a},{b})")));
                }
            }
        }
        Ok(Subgroup::new_unchecked(parent, el))
    }

    fn new_unchecked(parent: Arc<FiniteGroup>, elements: Vec<usize>) -> Subgroup {
        let k = elements.len();
        let local = |x: usize| elements.binary_search(&x).expect("closed");
        let mut table = Vec::with_capacity(k * k);
        for &a in &elements {
            for &b in &elements {
                table.push(local(parent.mul(a, b)));
            }
        }
        let as_group = if k == parent.order() {
            parent.clone()
        } else {
            Arc::new(FiniteGroup::from_table(k, table, GroupLabel::Subgroup).expect("subgroup of a group"))
        };
        Subgroup { parent, elements, as_group }
    }

    pub fn parent(&self) -> &Arc<FiniteGroup> {
        &self.parent
    }

    /// Sorted parent indices; local index `i` corresponds to `elements()[i]`.
    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn index(&self) -> usize {
        self.parent.order() / self.order()
    }

    pub fn contains(&self, g: usize) -> bool {
        self.elements.binary_search(&g).is_ok()
    }

    pub fn is_whole(&self) -> bool {
        self.order() == self.parent.order()
    }

    /// The subgroup as a group in its own right, elements in local order.
    pub fn as_group(&self) -> &Arc<FiniteGroup> {
        &self.as_group
    }

    pub fn local_index(&self, g: usize) -> Option<usize> {
        self.elements.binary_search(&g).ok()
    }

    /// Least element of each left coset `gH`, in increasing order.
    pub fn left_coset_representatives(&self) -> Vec<usize> {
        let mut seen = vec![false; self.parent.order()];
        let mut reps = Vec::new();
        for g in self.parent.elements() {
            if seen[g] {
                continue;
            }
            reps.push(g);
            for &h in &self.elements {
                seen[self.parent.mul(g, h)] = true;
            }
        }
        reps
    }
}

#[derive(Clone)]
pub struct FiniteGSet {
    group: Arc<FiniteGroup>,
    size: usize,
    action: Vec<Vec<usize>>,
}

impl fmt::Debug for FiniteGSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteGSet").field("size", &self.size).field("action", &self.action).finish()
    }
}

#[derive(Clone, Debug)]
pub struct Orbit {
    pub points: Vec<usize>,
    /// Stabilizer of the least point in the orbit.
    pub stabilizer: Subgroup,
}

impl FiniteGSet {
    pub fn new(group: Arc<FiniteGroup>, action: Vec<Vec<usize>>) -> Result<FiniteGSet> {
        if action.len() != group.order() {
            return Err(Error::InvalidGSet("one permutation per group element expected".into()));
        }
        let size = action[0].len();
        for perm in &action {
            if perm.len() != size {
                return Err(Error::InvalidGSet("permutations of different sizes".into()));
            }
            let mut seen = vec![false; size];
            for &x in perm {
                if x >= size || std::mem::replace(&mut seen[x], true) {
                    return Err(Error::InvalidGSet("not a permutation".into()));
                }
            }
        }
        if action[group.identity()].iter().enumerate().any(|(i, &x)| i != x) {
            return Err(Error::InvalidGSet("identity does not act trivially".into()));
        }
        for g in group.elements() {
            for h in group.elements() {
                let gh = group.mul(g, h);
                if (0..size).any(|x| action[g][action[h][x]] != action[gh][x]) {
                    return Err(Error::InvalidGSet(format!("not an action at ({g},{h})")));
                }
            }
        }
        Ok(FiniteGSet { group, size, action })
    }

    pub fn trivial(group: Arc<FiniteGroup>, size: usize) -> FiniteGSet {
        let action = vec![(0..size).collect(); group.order()];
        FiniteGSet { group, size, action }
    }

    /// Left multiplication of the group on itself.
    pub fn regular(group: Arc<FiniteGroup>) -> FiniteGSet {
        let action = group.elements().map(|g| group.elements().map(|x| group.mul(g, x)).collect()).collect();
        let size = group.order();
        FiniteGSet { group, size, action }
    }

    /// Left multiplication on the left cosets `G/H`, indexed by their least representatives.
    pub fn cosets(h: &Subgroup) -> FiniteGSet {
        let group = h.parent().clone();
        let reps = h.left_coset_representatives();
        let mut coset_of = vec![0; group.order()];
        for (i, &r) in reps.iter().enumerate() {
            for &x in h.elements() {
                coset_of[group.mul(r, x)] = i;
            }
        }
        let action = group
            .elements()
            .map(|g| reps.iter().map(|&r| coset_of[group.mul(g, r)]).collect())
            .collect();
        FiniteGSet { group, size: reps.len(), action }
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn size(&self) -> usize {
        self.size
    }

    #[inline]
    pub fn act(&self, g: usize, x: usize) -> usize {
        self.action[g][x]
    }

    pub fn orbits(&self) -> Vec<Orbit> {
        let mut seen = vec![false; self.size];
        let mut out = Vec::new();
        for start in 0..self.size {
            if seen[start] {
                continue;
            }
            let mut points: Vec<usize> = self.group.elements().map(|g| self.act(g, start)).collect();
            points.sort_unstable();
            points.dedup();
            for &p in &points {
                seen[p] = true;
            }
            let stab: Vec<usize> = self.group.elements().filter(|&g| self.act(g, start) == start).collect();
            let stabilizer = Subgroup::new_unchecked(self.group.clone(), stab);
            out.push(Orbit { points, stabilizer });
        }
        out
    }
}
