//! Labelled rooted trees and forests, their statistics, the Prüfer codec
//! and the tree-to-parking-function maps.

use std::collections::VecDeque;

use crate::error::{ParkError, Result};
use crate::parking::circular_rotation;

/// Forest on vertices `0..roots+m`. Vertices `0..roots` are the roots;
/// `parent[j]` is the parent of non-root vertex `roots + j`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Forest {
    roots: usize,
    parent: Vec<usize>,
}

/// A tree on `{0, ..., n}` rooted at 0; `parent[i-1]` is the parent of `i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RootedTree(Forest);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct TreeStats {
    pub inv: usize,
    pub nld: usize,
    pub ldr: usize,
    /// Childless vertices, roots included.
    pub lev: usize,
    /// Children of the roots.
    pub deg0: usize,
    pub edes: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TreeStat {
    Inv,
    Nld,
    Ldr,
    Lev,
    /// Leaves beyond one per component, `lev - roots`.
    ExtraLeaves,
    Deg0,
    Edes,
}

impl TreeStats {
    pub fn get(&self, s: TreeStat, roots: usize) -> usize {
        match s {
            TreeStat::Inv => self.inv,
            TreeStat::Nld => self.nld,
            TreeStat::Ldr => self.ldr,
            TreeStat::Lev => self.lev,
            TreeStat::ExtraLeaves => self.lev - roots,
            TreeStat::Deg0 => self.deg0,
            TreeStat::Edes => self.edes,
        }
    }
}

impl Forest {
    pub fn new(roots: usize, parent: Vec<usize>) -> Result<Self> {
        if roots == 0 {
            return Err(ParkError::Invalid("a forest needs a root".into()));
        }
        let f = Forest { roots, parent };
        let total = f.vertex_count();
        for (j, &p) in f.parent.iter().enumerate() {
            if p >= total || p == roots + j {
                return Err(ParkError::Invalid(format!(
                    "bad parent {p} for vertex {}",
                    roots + j
                )));
            }
        }
        if !f.acyclic() {
            return Err(ParkError::Invalid("parent map has a cycle".into()));
        }
        Ok(f)
    }

    pub fn roots(&self) -> usize {
        self.roots
    }

    pub fn parents(&self) -> &[usize] {
        &self.parent
    }

    pub fn vertex_count(&self) -> usize {
        self.roots + self.parent.len()
    }

    /// Parent of a non-root vertex.
    pub fn parent_of(&self, v: usize) -> Option<usize> {
        v.checked_sub(self.roots).map(|j| self.parent[j])
    }

    fn acyclic(&self) -> bool {
        // 0 unknown, 1 on the current path, 2 reaches a root.
        let total = self.vertex_count();
        let mut state = vec![0u8; total];
        state[..self.roots].fill(2);
        for start in self.roots..total {
            let mut path = Vec::new();
            let mut v = start;
            while state[v] == 0 {
                state[v] = 1;
                path.push(v);
                v = self.parent[v - self.roots];
            }
            if state[v] == 1 {
                return false;
            }
            for u in path {
                state[u] = 2;
            }
        }
        true
    }

    /// Children lists in increasing label order.
    pub fn children(&self) -> Vec<Vec<usize>> {
        let mut ch = vec![Vec::new(); self.vertex_count()];
        for (j, &p) in self.parent.iter().enumerate() {
            ch[p].push(self.roots + j);
        }
        ch
    }

    pub fn stats(&self) -> TreeStats {
        let total = self.vertex_count();
        let ch = self.children();
        let mut s = TreeStats {
            lev: ch.iter().filter(|c| c.is_empty()).count(),
            deg0: ch[..self.roots].iter().map(Vec::len).sum(),
            ..TreeStats::default()
        };
        for v in self.roots..total {
            let p = self.parent[v - self.roots];
            if p >= self.roots && p > v {
                s.edes += 1;
            }
            let mut a = p;
            while a >= self.roots {
                if a > v {
                    s.inv += 1;
                }
                a = self.parent[a - self.roots];
            }
        }
        // Subtree minima, children before parents.
        let mut min: Vec<usize> = (0..total).collect();
        for v in self.post_order(&ch) {
            if let Some(p) = self.parent_of(v) {
                min[p] = min[p].min(min[v]);
            }
        }
        s.ldr = (self.roots..total).filter(|&v| min[v] == v).count();
        s.nld = self.parent.len() - s.ldr;
        s
    }

    fn post_order(&self, ch: &[Vec<usize>]) -> Vec<usize> {
        let mut order = Vec::with_capacity(self.vertex_count());
        let mut stack: Vec<usize> = (0..self.roots).collect();
        while let Some(v) = stack.pop() {
            order.push(v);
            stack.extend(&ch[v]);
        }
        order.reverse();
        order
    }
}

impl RootedTree {
    pub fn new(parent: Vec<usize>) -> Result<Self> {
        Forest::new(1, parent).map(RootedTree)
    }

    /// Number of non-root vertices.
    pub fn n(&self) -> usize {
        self.0.parent.len()
    }

    pub fn parents(&self) -> &[usize] {
        &self.0.parent
    }

    pub fn as_forest(&self) -> &Forest {
        &self.0
    }

    pub fn stats(&self) -> TreeStats {
        self.0.stats()
    }

    fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.n() + 1];
        for (j, &p) in self.0.parent.iter().enumerate() {
            adj[p].push(j + 1);
            adj[j + 1].push(p);
        }
        adj
    }

    fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut adj = vec![Vec::new(); n + 1];
        for &(a, b) in edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        let mut parent = vec![usize::MAX; n];
        let mut seen = vec![false; n + 1];
        seen[0] = true;
        let mut queue = VecDeque::from([0]);
        while let Some(v) = queue.pop_front() {
            for &u in &adj[v] {
                if !seen[u] {
                    seen[u] = true;
                    parent[u - 1] = v;
                    queue.push_back(u);
                }
            }
        }
        RootedTree::new(parent)
    }
}

/// Prüfer code of length `n-1`: strip the largest leaf (never the root)
/// and record its neighbour, then reverse the recorded sequence.
pub fn prufer_encode(t: &RootedTree) -> Vec<usize> {
    let n = t.n();
    if n == 0 {
        return Vec::new();
    }
    let adj = t.adjacency();
    let mut deg: Vec<usize> = adj.iter().map(Vec::len).collect();
    let mut removed = vec![false; n + 1];
    let mut code = Vec::with_capacity(n - 1);
    for _ in 0..n - 1 {
        let leaf = (1..=n)
            .rev()
            .find(|&v| !removed[v] && deg[v] == 1)
            .expect("a tree with two or more vertices has a non-root leaf");
        removed[leaf] = true;
        let nb = adj[leaf]
            .iter()
            .copied()
            .find(|&u| !removed[u])
            .expect("a leaf keeps one neighbour");
        deg[nb] -= 1;
        code.push(nb);
    }
    code.reverse();
    code
}

pub fn prufer_decode(code: &[usize], n: usize) -> Result<RootedTree> {
    if n == 0 {
        return if code.is_empty() {
            RootedTree::new(Vec::new())
        } else {
            Err(ParkError::Invalid("a lone root has an empty code".into()))
        };
    }
    if code.len() != n - 1 {
        return Err(ParkError::Invalid(format!(
            "code length {} but a tree on {} vertices needs {}",
            code.len(),
            n + 1,
            n - 1
        )));
    }
    if let Some(&c) = code.iter().find(|&&c| c > n) {
        return Err(ParkError::Invalid(format!("code entry {c} exceeds {n}")));
    }
    let mut deg = vec![1usize; n + 1];
    for &c in code {
        deg[c] += 1;
    }
    let mut removed = vec![false; n + 1];
    let mut edges = Vec::with_capacity(n);
    for &c in code.iter().rev() {
        let leaf = (1..=n)
            .rev()
            .find(|&v| !removed[v] && deg[v] == 1)
            .ok_or_else(|| ParkError::Invalid("code does not describe a tree".into()))?;
        removed[leaf] = true;
        deg[c] -= 1;
        edges.push((leaf, c));
    }
    let last = (1..=n)
        .find(|&v| !removed[v])
        .ok_or_else(|| ParkError::Invalid("code does not describe a tree".into()))?;
    edges.push((0, last));
    RootedTree::from_edges(n, &edges)
}

/// Prepend 0 to the code, read 0 as spot `n+1` on a circle and return the
/// unique rotation that parks.
pub fn prufer_to_pf_circular(code: &[usize]) -> Vec<usize> {
    let n = code.len() + 1;
    let circ: Vec<usize> = std::iter::once(0)
        .chain(code.iter().copied())
        .map(|c| if c == 0 { n + 1 } else { c })
        .collect();
    circular_rotation(&circ)
}

/// Breadth-first search from the root, children in increasing order; car
/// `i` prefers `1 + rank(parent(i))` with the root at rank 0.
pub fn tree_to_pf_bfs(t: &RootedTree) -> Vec<usize> {
    let ch = t.0.children();
    let mut rank = vec![0usize; t.n() + 1];
    let mut next = 0;
    let mut queue = VecDeque::from([0]);
    while let Some(v) = queue.pop_front() {
        rank[v] = next;
        next += 1;
        queue.extend(&ch[v]);
    }
    t.parents().iter().map(|&p| 1 + rank[p]).collect()
}

/// All `(n+1)^(n-1)` trees on `{0..n}`, in Prüfer-code order.
pub fn enumerate_trees(n: usize) -> impl Iterator<Item = RootedTree> {
    let len = n.saturating_sub(1);
    let total = if n == 0 { 1 } else { (n + 1).pow(len as u32) };
    (0..total).map(move |mut idx| {
        let mut code = vec![0; len];
        for c in code.iter_mut().rev() {
            *c = idx % (n + 1);
            idx /= n + 1;
        }
        prufer_decode(&code, n).expect("every code decodes")
    })
}

/// All forests on `0..roots+m` rooted at `0..roots`, by brute force over
/// parent maps.
pub fn enumerate_forests(roots: usize, m: usize) -> impl Iterator<Item = Forest> {
    let total_v = roots + m;
    let count = total_v.pow(m as u32);
    (0..count).filter_map(move |mut idx| {
        let mut parent = vec![0; m];
        for p in parent.iter_mut().rev() {
            *p = idx % total_v;
            idx /= total_v;
        }
        Forest::new(roots, parent).ok()
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parking::is_parking_function;
    use proptest::prelude::*;

    #[test]
    fn path_and_star() {
        let path = RootedTree::new(vec![0, 1, 2, 3]).unwrap();
        let s = path.stats();
        assert_eq!((s.inv, s.nld, s.lev, s.deg0, s.edes), (0, 0, 1, 1, 0));
        let star = RootedTree::new(vec![0, 0, 0]).unwrap();
        let s = star.stats();
        assert_eq!((s.inv, s.nld, s.lev, s.deg0, s.edes), (0, 0, 3, 3, 0));
        assert_eq!(prufer_encode(&star), vec![0, 0]);
        assert_eq!(tree_to_pf_bfs(&star), vec![1, 1, 1]);
    }

    #[test]
    fn path_0132() {
        let t = prufer_decode(&[1, 3], 3).unwrap();
        assert_eq!(t.parents(), &[0, 3, 1]);
        let s = t.stats();
        assert_eq!(s.deg0, 1);
        // 3 sits above 2; vertex 3's subtree {3, 2} has minimum 2.
        assert_eq!((s.inv, s.edes, s.ldr, s.nld), (1, 1, 2, 1));
        assert_eq!(prufer_to_pf_circular(&[1, 3]), vec![2, 3, 1]);
        assert_eq!(tree_to_pf_bfs(&t), vec![1, 3, 2]);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(RootedTree::new(vec![2, 1]).is_err());
        assert!(RootedTree::new(vec![1]).is_err());
        assert!(prufer_decode(&[0], 3).is_err());
        assert!(prufer_decode(&[5, 0], 3).is_err());
        assert!(Forest::new(0, vec![]).is_err());
    }

    #[test]
    fn counts() {
        assert_eq!(enumerate_trees(0).count(), 1);
        assert_eq!(enumerate_trees(1).count(), 1);
        assert_eq!(enumerate_trees(3).count(), 16);
        assert_eq!(enumerate_trees(5).count(), 1296);
        // (n-m+1)(n+1)^(m-1) forests for m non-roots among n+1 vertices.
        for (roots, m) in [(1usize, 3usize), (2, 2), (3, 1), (2, 3), (4, 0)] {
            let n = roots + m - 1;
            let expect = roots * (n + 1).pow(m.saturating_sub(1) as u32);
            let expect = if m == 0 { 1 } else { expect };
            assert_eq!(enumerate_forests(roots, m).count(), expect, "{roots},{m}");
        }
    }

    #[test]
    fn codec_is_a_bijection() {
        for n in 1..=5 {
            let mut seen = std::collections::HashSet::new();
            for t in enumerate_trees(n) {
                let code = prufer_encode(&t);
                assert_eq!(prufer_decode(&code, n).unwrap(), t);
                assert!(seen.insert(t.parents().to_vec()));
                let zeros = code.iter().filter(|&&c| c == 0).count();
                assert_eq!(t.stats().deg0, zeros + 1);
            }
        }
    }

    #[test]
    fn maps_land_in_parking_functions() {
        for n in 1..=5 {
            for t in enumerate_trees(n) {
                let code = prufer_encode(&t);
                let circ = prufer_to_pf_circular(&code);
                assert!(is_parking_function(&circ));
                let zeros = code.iter().filter(|&&c| c == 0).count();
                assert_eq!(circ.iter().filter(|&&a| a == circ[0]).count(), zeros + 1);
                let bfs = tree_to_pf_bfs(&t);
                assert!(is_parking_function(&bfs));
                assert_eq!(bfs.iter().filter(|&&a| a == 1).count(), t.stats().deg0);
            }
        }
    }

    proptest! {
        #[test]
        fn leaders_and_nonleaders_partition(code in prop::collection::vec(0usize..=6, 5)) {
            let t = prufer_decode(&code, 6).unwrap();
            let s = t.stats();
            prop_assert_eq!(s.ldr + s.nld, 6);
            prop_assert!(s.edes <= s.inv);
            prop_assert_eq!(prufer_encode(&t), code);
        }
    }
}
