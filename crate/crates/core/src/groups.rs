//! Concrete finite groups as Cayley tables.
//!
//! Groups are extensional: an order-`n` group is an `n x n` multiplication
//! table over element indices, an inverse table and display labels. Element
//! `0` is always the identity, and orderings are fixed at construction so
//! all downstream output is reproducible. Constructors cover cyclic,
//! dihedral and symmetric groups plus direct products, reachable through
//! the descriptor grammar parsed by [`FiniteGroup::from_spec`]:
//!
//! ```text
//! spec := "cyclic:" n | "dihedral:" m | "sym:" m | "product:" spec "," spec
//! ```
//!
//! `product:` takes the whole comma list as an iterated product (the
//! operation is associative up to isomorphism, so no nesting is needed).

use std::collections::BTreeSet;
use std::fmt;

use crate::bits::Bitset;

/// Symmetric groups are capped at S5 and any constructed order at 10000,
/// which keeps Cayley tables and exhaustive scans at desk scale.
pub const MAX_ORDER: usize = 10_000;
pub const MAX_SYM_DEGREE: usize = 5;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupError {
    UnknownDescriptor(String),
    InvalidParameter(String),
    SymDegreeTooLarge(usize),
    OrderTooLarge(usize),
}

impl fmt::Display for GroupError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupError::UnknownDescriptor(s) => write!(f, "unknown group descriptor: {s:?}"),
            GroupError::InvalidParameter(s) => write!(f, "invalid group parameter: {s}"),
            GroupError::SymDegreeTooLarge(m) => {
                write!(
                    f,
                    "sym:{m} exceeds the S{MAX_SYM_DEGREE} cap (order {})",
                    factorial(MAX_SYM_DEGREE)
                )
            }
            GroupError::OrderTooLarge(n) => {
                write!(f, "group order {n} exceeds the cap {MAX_ORDER}")
            }
        }
    }
}

impl std::error::Error for GroupError {}

fn factorial(n: usize) -> usize {
    (1..=n).product()
}

/// A finite group of order `n` with identity at index 0.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FiniteGroup {
    kind: String,
    n: usize,
    identity: usize,
    mul: Vec<u32>, // flat n*n, row-major: mul[i*n + j] = index of g_i * g_j
    inv: Vec<u32>,
    labels: Vec<String>,
}

impl FiniteGroup {
    /// Parses a group descriptor. See the module docs for the grammar.
    pub fn from_spec(spec: &str) -> Result<FiniteGroup, GroupError> {
        let spec = spec.trim();
        if let Some(rest) = spec.strip_prefix("product:") {
            let mut parts = Vec::new();
            for raw in rest.split(',') {
                let mut atom = raw.trim();
                // Iterated product is associative, so nested "product:" prefixes flatten away.
                while let Some(inner) = atom.strip_prefix("product:") {
                    atom = inner.trim();
                }
                if atom.is_empty() {
                    return Err(GroupError::UnknownDescriptor(spec.to_string()));
                }
                parts.push(Self::from_atomic(atom)?);
            }
            if parts.is_empty() {
                return Err(GroupError::UnknownDescriptor(spec.to_string()));
            }
            let mut acc = parts.remove(0);
            for g in parts {
                acc = FiniteGroup::product(&acc, &g)?;
            }
            Ok(acc)
        } else {
            Self::from_atomic(spec)
        }
    }

    fn from_atomic(spec: &str) -> Result<FiniteGroup, GroupError> {
        let Some((head, tail)) = spec.split_once(':') else {
            return Err(GroupError::UnknownDescriptor(spec.to_string()));
        };
        let arg: usize = tail
            .parse()
            .map_err(|_| GroupError::UnknownDescriptor(spec.to_string()))?;
        match head {
            "cyclic" => FiniteGroup::cyclic(arg),
            "dihedral" => FiniteGroup::dihedral(arg),
            "sym" => FiniteGroup::symmetric(arg),
            _ => Err(GroupError::UnknownDescriptor(spec.to_string())),
        }
    }

    /// Z_n with element `i` being `g^i`; `mul[i][j] = (i + j) mod n`.
    pub fn cyclic(n: usize) -> Result<FiniteGroup, GroupError> {
        if n == 0 {
            return Err(GroupError::InvalidParameter("cyclic:n needs n >= 1".into()));
        }
        if n > MAX_ORDER {
            return Err(GroupError::OrderTooLarge(n));
        }
        let mut mul = vec![0u32; n * n];
        for i in 0..n {
            for j in 0..n {
                mul[i * n + j] = ((i + j) % n) as u32;
            }
        }
        let inv = (0..n).map(|i| ((n - i) % n) as u32).collect();
        let labels = (0..n).map(|i| format!("g^{i}")).collect();
        Ok(Self::assemble(format!("cyclic:{n}"), n, mul, inv, labels))
    }

    /// Dihedral group of order `2m`: rotations `r^i` at indices `0..m`,
    /// reflections `r^i*s` at indices `m..2m`.
    pub fn dihedral(m: usize) -> Result<FiniteGroup, GroupError> {
        if m < 2 {
            return Err(GroupError::InvalidParameter(
                "dihedral:m needs m >= 2".into(),
            ));
        }
        let n = 2 * m;
        if n > MAX_ORDER {
            return Err(GroupError::OrderTooLarge(n));
        }
        // Element f*m + i encodes r^i s^f with s r s = r^-1.
        let idx = |i: usize, f: usize| (f * m + i) as u32;
        let mut mul = vec![0u32; n * n];
        for f in 0..2 {
            for i in 0..m {
                for g in 0..2 {
                    for j in 0..m {
                        let rot = if f == 0 { (i + j) % m } else { (i + m - j) % m };
                        mul[(f * m + i) * n + (g * m + j)] = idx(rot, f ^ g);
                    }
                }
            }
        }
        let mut inv = vec![0u32; n];
        for i in 0..m {
            inv[i] = idx((m - i) % m, 0);
            inv[m + i] = idx(i, 1);
        }
        let labels = (0..n)
            .map(|k| {
                let (i, f) = (k % m, k / m);
                match (i, f) {
                    (0, 0) => "e".to_string(),
                    (1, 0) => "r".to_string(),
                    (_, 0) => format!("r^{i}"),
                    (0, _) => "s".to_string(),
                    (1, _) => "r*s".to_string(),
                    _ => format!("r^{i}*s"),
                }
            })
            .collect();
        Ok(Self::assemble(format!("dihedral:{m}"), n, mul, inv, labels))
    }

    /// S_m in cycle-type order: the identity first, then elements sorted by
    /// (number of moved points, canonical cycle decomposition). For m = 3
    /// this is (1),(12),(13),(23),(123),(132).
    pub fn symmetric(m: usize) -> Result<FiniteGroup, GroupError> {
        if m == 0 {
            return Err(GroupError::InvalidParameter("sym:m needs m >= 1".into()));
        }
        if m > MAX_SYM_DEGREE {
            return Err(GroupError::SymDegreeTooLarge(m));
        }
        let mut perms = all_permutations(m);
        perms.sort_by_key(|p| perm_sort_key(p));
        let n = perms.len();
        let index_of = |p: &[usize]| perms.iter().position(|q| q == p).unwrap() as u32;
        let mut mul = vec![0u32; n * n];
        for (i, p) in perms.iter().enumerate() {
            for (j, q) in perms.iter().enumerate() {
                // Composition applies q first: (p∘q)(x) = p[q[x]].
                let comp: Vec<usize> = (0..m).map(|x| p[q[x]]).collect();
                mul[i * n + j] = index_of(&comp);
            }
        }
        let mut inv = vec![0u32; n];
        for (i, p) in perms.iter().enumerate() {
            let mut pinv = vec![0usize; m];
            for (x, &px) in p.iter().enumerate() {
                pinv[px] = x;
            }
            inv[i] = index_of(&pinv);
        }
        let labels = perms.iter().map(|p| cycle_label(p)).collect();
        Ok(Self::assemble(format!("sym:{m}"), n, mul, inv, labels))
    }

    /// Direct product; element `(a, b)` sits at index `a * |B| + b`.
    pub fn product(a: &FiniteGroup, b: &FiniteGroup) -> Result<FiniteGroup, GroupError> {
        let n =
            a.n.checked_mul(b.n)
                .filter(|&n| n <= MAX_ORDER)
                .ok_or(GroupError::OrderTooLarge(a.n.saturating_mul(b.n)))?;
        let idx = |x: usize, y: usize| (x * b.n + y) as u32;
        let mut mul = vec![0u32; n * n];
        for x1 in 0..a.n {
            for y1 in 0..b.n {
                for x2 in 0..a.n {
                    for y2 in 0..b.n {
                        mul[(x1 * b.n + y1) * n + (x2 * b.n + y2)] =
                            idx(a.mul(x1, x2), b.mul(y1, y2));
                    }
                }
            }
        }
        let mut inv = vec![0u32; n];
        let mut labels = Vec::with_capacity(n);
        for x in 0..a.n {
            for y in 0..b.n {
                inv[x * b.n + y] = idx(a.inverse(x), b.inverse(y));
                labels.push(format!("({},{})", a.labels[x], b.labels[y]));
            }
        }
        // flatten nested product kinds so descriptors round-trip
        let flat = |k: &str| k.strip_prefix("product:").unwrap_or(k).to_string();
        let kind = format!("product:{},{}", flat(&a.kind), flat(&b.kind));
        Ok(Self::assemble(kind, n, mul, inv, labels))
    }

    fn assemble(kind: String, n: usize, mul: Vec<u32>, inv: Vec<u32>, labels: Vec<String>) -> Self {
        let g = FiniteGroup {
            kind,
            n,
            identity: 0,
            mul,
            inv,
            labels,
        };
        g.check_group_axioms();
        g
    }

    /// Construction self-check: identity and inverse laws always; Latin
    /// square and associativity in full for n <= 32, sampled above.
    fn check_group_axioms(&self) {
        let n = self.n;
        for i in 0..n {
            assert_eq!(
                self.mul(0, i),
                i,
                "{}: identity row broken at {i}",
                self.kind
            );
            assert_eq!(
                self.mul(i, 0),
                i,
                "{}: identity column broken at {i}",
                self.kind
            );
            assert_eq!(
                self.mul(i, self.inverse(i)),
                0,
                "{}: inverse broken at {i}",
                self.kind
            );
        }
        if n <= 32 {
            for i in 0..n {
                let mut row = vec![false; n];
                let mut col = vec![false; n];
                for j in 0..n {
                    row[self.mul(i, j)] = true;
                    col[self.mul(j, i)] = true;
                }
                assert!(
                    row.iter().all(|&b| b),
                    "{}: row {i} not a permutation",
                    self.kind
                );
                assert!(
                    col.iter().all(|&b| b),
                    "{}: column {i} not a permutation",
                    self.kind
                );
            }
            for i in 0..n {
                for j in 0..n {
                    for k in 0..n {
                        assert_eq!(
                            self.mul(self.mul(i, j), k),
                            self.mul(i, self.mul(j, k)),
                            "{}: associativity broken at ({i},{j},{k})",
                            self.kind
                        );
                    }
                }
            }
        } else {
            let mut rng = 0x9e37_79b9_7f4a_7c15u64 ^ n as u64;
            let mut next = move || {
                rng ^= rng << 13;
                rng ^= rng >> 7;
                rng ^= rng << 17;
                (rng % n as u64) as usize
            };
            for _ in 0..512 {
                let (i, j, k) = (next(), next(), next());
                assert_eq!(
                    self.mul(self.mul(i, j), k),
                    self.mul(i, self.mul(j, k)),
                    "{}: associativity broken at ({i},{j},{k})",
                    self.kind
                );
            }
            for _ in 0..64 {
                let i = next();
                let mut row = vec![false; n];
                for j in 0..n {
                    row[self.mul(i, j)] = true;
                }
                assert!(
                    row.iter().all(|&b| b),
                    "{}: row {i} not a permutation",
                    self.kind
                );
            }
        }
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn kind(&self) -> &str {
        &self.kind
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    #[inline]
    pub fn mul(&self, i: usize, j: usize) -> usize {
        self.mul[i * self.n + j] as usize
    }

    #[inline]
    pub fn inverse(&self, i: usize) -> usize {
        self.inv[i] as usize
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Smallest k >= 1 with g_i^k = identity.
    pub fn element_order(&self, i: usize) -> usize {
        assert!(
            i < self.n,
            "element index {i} out of range (order {})",
            self.n
        );
        let mut acc = i;
        let mut k = 1;
        while acc != self.identity {
            acc = self.mul(acc, i);
            k += 1;
        }
        k
    }

    /// Elements of order exactly 2.
    pub fn involutions(&self) -> Subset<'_> {
        let mut members = Bitset::empty(self.n);
        for i in 0..self.n {
            if i != self.identity && self.mul(i, i) == self.identity {
                members.insert(i);
            }
        }
        Subset {
            group: self,
            members,
        }
    }

    /// True when the element ordering realizes Z_n with index = exponent,
    /// i.e. `mul[i][j] = (i + j) mod n`.
    pub fn is_standard_cyclic(&self) -> bool {
        self.n == 1 || (0..self.n).all(|j| self.mul(1, j) == (j + 1) % self.n)
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.n).all(|i| (i..self.n).all(|j| self.mul(i, j) == self.mul(j, i)))
    }

    /// Every subgroup, found by closing generator sets one element at a
    /// time. Exhaustive and meant for desk-scale groups.
    pub fn subgroups(&self) -> Vec<Subset<'_>> {
        let trivial = self.closure_of(&[self.identity]);
        let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
        seen.insert(trivial.to_indices());
        let mut frontier = vec![trivial];
        while let Some(h) = frontier.pop() {
            for x in 0..self.n {
                if h.contains(x) {
                    continue;
                }
                let mut gens = h.to_indices();
                gens.push(x);
                let k = self.closure_of(&gens);
                if seen.insert(k.to_indices()) {
                    frontier.push(k);
                }
            }
        }
        let mut subs: Vec<Subset<'_>> = seen
            .into_iter()
            .map(|idx| Subset::from_indices(self, idx))
            .collect();
        subs.sort_by_key(|s| (s.len(), s.members.clone()));
        subs
    }

    fn closure_of(&self, gens: &[usize]) -> Bitset {
        let mut set = Bitset::from_indices(self.n, gens.iter().copied());
        set.insert(self.identity);
        let mut work: Vec<usize> = set.to_indices();
        while let Some(a) = work.pop() {
            for b in set.to_indices() {
                for p in [self.mul(a, b), self.mul(b, a)] {
                    if !set.contains(p) {
                        set.insert(p);
                        work.push(p);
                    }
                }
            }
        }
        set
    }
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteGroup({}, order {})", self.kind, self.n)
    }
}

/// Checks that two values reference the same group; table equality is the
/// fallback for independently constructed copies.
pub(crate) fn assert_same_group(a: &FiniteGroup, b: &FiniteGroup) {
    assert!(
        std::ptr::eq(a, b) || a == b,
        "group mismatch: {} vs {}",
        a.kind,
        b.kind
    );
}

/// A subset of a group's elements.
#[derive(Clone, PartialEq, Eq)]
pub struct Subset<'g> {
    group: &'g FiniteGroup,
    members: Bitset,
}

impl<'g> Subset<'g> {
    pub fn new(group: &'g FiniteGroup, members: Bitset) -> Self {
        assert_eq!(
            members.len(),
            group.order(),
            "bitset length must equal group order"
        );
        Subset { group, members }
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(group: &'g FiniteGroup, indices: I) -> Self {
        Subset {
            group,
            members: Bitset::from_indices(group.order(), indices),
        }
    }

    pub fn group(&self) -> &'g FiniteGroup {
        self.group
    }

    pub fn members(&self) -> &Bitset {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.count()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.members.contains(i)
    }

    pub fn to_indices(&self) -> Vec<usize> {
        self.members.to_indices()
    }

    /// Nonempty, closed under the group product and under inverses.
    pub fn is_subgroup(&self) -> bool {
        if self.is_empty() {
            return false;
        }
        let idx = self.to_indices();
        idx.iter().all(|&i| self.contains(self.group.inverse(i)))
            && idx
                .iter()
                .all(|&i| idx.iter().all(|&j| self.contains(self.group.mul(i, j))))
    }

    /// The right cosets `Mg`, pairwise disjoint with union the whole group.
    /// The first coset is the subgroup itself; the rest are ordered by their
    /// smallest element index. Panics if `self` is not a subgroup.
    pub fn coset_decomposition(&self) -> Vec<Subset<'g>> {
        assert!(self.is_subgroup(), "coset decomposition needs a subgroup");
        let n = self.group.order();
        let mut covered = Bitset::empty(n);
        let mut cosets = Vec::with_capacity(n / self.len());
        for rep in 0..n {
            if covered.contains(rep) {
                continue;
            }
            let mut coset = Bitset::empty(n);
            for m in self.members.iter() {
                let x = self.group.mul(m, rep);
                coset.insert(x);
                covered.insert(x);
            }
            cosets.push(Subset {
                group: self.group,
                members: coset,
            });
        }
        cosets
    }
}

impl fmt::Debug for Subset<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.members)
    }
}

fn all_permutations(m: usize) -> Vec<Vec<usize>> {
    fn rec(m: usize, cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if cur.len() == m {
            out.push(cur.clone());
            return;
        }
        for x in 0..m {
            if !used[x] {
                used[x] = true;
                cur.push(x);
                rec(m, cur, used, out);
                cur.pop();
                used[x] = false;
            }
        }
    }
    let mut out = Vec::with_capacity(factorial(m));
    rec(m, &mut Vec::new(), &mut vec![false; m], &mut out);
    out
}

/// Cycle decomposition with each cycle led by its smallest point and cycles
/// ordered by leading point; fixed points omitted.
fn cycles_of(p: &[usize]) -> Vec<Vec<usize>> {
    let m = p.len();
    let mut seen = vec![false; m];
    let mut cycles = Vec::new();
    for start in 0..m {
        if seen[start] || p[start] == start {
            seen[start] = true;
            continue;
        }
        let mut cycle = vec![start];
        seen[start] = true;
        let mut x = p[start];
        while x != start {
            seen[x] = true;
            cycle.push(x);
            x = p[x];
        }
        cycles.push(cycle);
    }
    cycles
}

fn perm_sort_key(p: &[usize]) -> (usize, Vec<Vec<usize>>) {
    let moved = p.iter().enumerate().filter(|&(i, &pi)| i != pi).count();
    (moved, cycles_of(p))
}

/// One-based cycle notation: "(1)" for the identity, "(12)(34)" style otherwise.
fn cycle_label(p: &[usize]) -> String {
    let cycles = cycles_of(p);
    if cycles.is_empty() {
        return "(1)".to_string();
    }
    cycles
        .iter()
        .map(|c| {
            let body: String = c.iter().map(|x| (x + 1).to_string()).collect();
            format!("({body})")
        })
        .collect()
}
