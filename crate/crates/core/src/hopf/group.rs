use std::collections::{BTreeSet, VecDeque};

use crate::error::{Error, Result};

/// A finite group given by its Cayley table; `table[a][b]` is the index of `a·b`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupTable {
    table: Vec<Vec<usize>>,
    identity: usize,
}

impl GroupTable {
    pub fn new(table: Vec<Vec<usize>>) -> Result<Self> {
        let n = table.len();
        if n == 0 {
            return Err(Error::GroupTable("empty table".into()));
        }
        if table.iter().any(|row| row.len() != n || row.iter().any(|&x| x >= n)) {
            return Err(Error::GroupTable("table is not an n x n array of indices below n".into()));
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|a| table[e][a] == a && table[a][e] == a))
            .ok_or_else(|| Error::GroupTable("no identity element".into()))?;
        for a in 0..n {
            if !(0..n).any(|b| table[a][b] == identity) {
                return Err(Error::GroupTable(format!("element {a} has no inverse")));
            }
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(Error::GroupTable(format!("not associative at ({a}, {b}, {c})")));
                    }
                }
            }
        }
        Ok(GroupTable { table, identity })
    }

    pub fn cyclic(n: usize) -> Self {
        let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        GroupTable { table, identity: 0 }
    }

    /// Permutations of three letters in lexicographic order, composed as maps.
    pub fn s3() -> Self {
        let perms: Vec<[usize; 3]> = vec![[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
        let index = |p: [usize; 3]| perms.iter().position(|q| *q == p).expect("closed under composition");
        let table = perms
            .iter()
            .map(|s| perms.iter().map(|t| index([s[t[0]], s[t[1]], s[t[2]]])).collect())
            .collect();
        GroupTable { table, identity: 0 }
    }

    /// Direct product; the pair `(a, b)` has index `a · |other| + b`.
    pub fn product(&self, other: &GroupTable) -> GroupTable {
        let m = other.order();
        let n = self.order() * m;
        let table = (0..n)
            .map(|x| (0..n).map(|y| self.op(x / m, y / m) * m + other.op(x % m, y % m)).collect())
            .collect();
        GroupTable {
            table,
            identity: self.identity * m + other.identity,
        }
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn op(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inverse(&self, a: usize) -> usize {
        (0..self.order()).find(|&b| self.op(a, b) == self.identity).expect("validated group")
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order();
        (0..n).all(|a| (0..n).all(|b| self.op(a, b) == self.op(b, a)))
    }

    /// Subgroup generated by a set of elements.
    pub fn generated(&self, gens: &[usize]) -> BTreeSet<usize> {
        let mut seen = BTreeSet::from([self.identity]);
        let mut queue = VecDeque::from([self.identity]);
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.op(x, g);
                if seen.insert(y) {
                    queue.push_back(y);
                }
            }
        }
        seen
    }

    /// A generating list chosen greedily in index order.
    pub fn generators(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut span = self.generated(&gens);
        for g in 0..self.order() {
            if !span.contains(&g) {
                gens.push(g);
                span = self.generated(&gens);
            }
        }
        gens
    }

    pub fn subgroups(&self) -> Vec<BTreeSet<usize>> {
        let mut found = vec![self.generated(&[])];
        let mut i = 0;
        while i < found.len() {
            let h: Vec<usize> = found[i].iter().copied().collect();
            for g in 0..self.order() {
                if found[i].contains(&g) {
                    continue;
                }
                let mut gens = h.clone();
                gens.push(g);
                let k = self.generated(&gens);
                if !found.contains(&k) {
                    found.push(k);
                }
            }
            i += 1;
        }
        found.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        found
    }

    /// All homomorphisms `self → target`, as image lists.
    pub fn homomorphisms(&self, target: &GroupTable) -> Vec<Vec<usize>> {
        let gens = self.generators();
        let mut out = Vec::new();
        let mut images = vec![0; gens.len()];
        self.extend_homs(target, &gens, 0, &mut images, &mut out);
        out
    }

    fn extend_homs(&self, target: &GroupTable, gens: &[usize], depth: usize, images: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if depth == gens.len() {
            if let Some(h) = self.hom_from_generators(target, gens, images) {
                out.push(h);
            }
            return;
        }
        for y in 0..target.order() {
            images[depth] = y;
            self.extend_homs(target, gens, depth + 1, images, out);
        }
    }

    fn hom_from_generators(&self, target: &GroupTable, gens: &[usize], images: &[usize]) -> Option<Vec<usize>> {
        let n = self.order();
        let mut map = vec![usize::MAX; n];
        map[self.identity] = target.identity;
        let mut queue = VecDeque::from([self.identity]);
        while let Some(x) = queue.pop_front() {
            for (&g, &y) in gens.iter().zip(images) {
                let xg = self.op(x, g);
                let img = target.op(map[x], y);
                if map[xg] == usize::MAX {
                    map[xg] = img;
                    queue.push_back(xg);
                } else if map[xg] != img {
                    return None;
                }
            }
        }
        let ok = (0..n).all(|a| (0..n).all(|b| map[self.op(a, b)] == target.op(map[a], map[b])));
        ok.then_some(map)
    }

    /// Relabels elements so that `perm[old] = new`.
    pub fn relabel(&self, perm: &[usize]) -> GroupTable {
        let n = self.order();
        let mut table = vec![vec![0; n]; n];
        for a in 0..n {
            for b in 0..n {
                table[perm[a]][perm[b]] = perm[self.op(a, b)];
            }
        }
        GroupTable {
            table,
            identity: perm[self.identity],
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation() {
        assert!(GroupTable::new(vec![vec![0, 1], vec![1, 0]]).is_ok());
        assert!(GroupTable::new(vec![vec![0, 1], vec![1, 1]]).is_err());
        assert!(GroupTable::new(GroupTable::s3().table().to_vec()).is_ok());
        assert!(!GroupTable::s3().is_abelian());
    }

    #[test]
    fn homomorphism_counts() {
        let z4 = GroupTable::cyclic(4);
        let z2 = GroupTable::cyclic(2);
        assert_eq!(z4.homomorphisms(&z2).len(), 2);
        assert_eq!(z2.homomorphisms(&z4).len(), 2);
        assert_eq!(z2.product(&z2).homomorphisms(&z2).len(), 4);
        assert_eq!(GroupTable::s3().homomorphisms(&z2).len(), 2);
    }

    #[test]
    fn subgroup_lattice() {
        assert_eq!(GroupTable::cyclic(4).subgroups().len(), 3);
        assert_eq!(GroupTable::cyclic(2).product(&GroupTable::cyclic(2)).subgroups().len(), 5);
        assert_eq!(GroupTable::s3().subgroups().len(), 6);
    }
}
