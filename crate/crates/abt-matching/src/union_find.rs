//! Union-find with a designated representative per set.
//!
//! Union is by size with path compression. The internal root is an
//! implementation detail; `find` returns the representative chosen by the
//! caller at union time.

#[derive(Debug, Clone)]
pub struct UnionFind {
    parent: Vec<u32>,
    size: Vec<u32>,
    /// `rep[r]` for internal roots `r`.
    rep: Vec<u32>,
    pub ops: u64,
}

impl UnionFind {
    pub fn new(n: usize) -> UnionFind {
        UnionFind {
            parent: (0..n as u32).collect(),
            size: vec![1; n],
            rep: (0..n as u32).collect(),
            ops: 0,
        }
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }

    fn root(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.parent[r] as usize != r {
            r = self.parent[r] as usize;
            self.ops += 1;
        }
        let mut c = x;
        while self.parent[c] as usize != r {
            let next = self.parent[c] as usize;
            self.parent[c] = r as u32;
            c = next;
        }
        r
    }

    /// Representative of the set containing `x`.
    pub fn find(&mut self, x: usize) -> usize {
        self.ops += 1;
        let r = self.root(x);
        self.rep[r] as usize
    }

    /// Merges the sets of `a` and `b`; `rep` becomes the representative.
    pub fn union(&mut self, a: usize, b: usize, rep: usize) {
        self.ops += 1;
        let ra = self.root(a);
        let rb = self.root(b);
        if ra == rb {
            self.rep[ra] = rep as u32;
            return;
        }
        let (big, small) = if self.size[ra] >= self.size[rb] {
            (ra, rb)
        } else {
            (rb, ra)
        };
        self.parent[small] = big as u32;
        self.size[big] += self.size[small];
        self.rep[big] = rep as u32;
    }

    pub fn same(&mut self, a: usize, b: usize) -> bool {
        self.root(a) == self.root(b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn representative_is_callers_choice() {
        let mut uf = UnionFind::new(6);
        uf.union(0, 1, 1);
        uf.union(2, 3, 2);
        uf.union(1, 3, 3);
        for v in 0..4 {
            assert_eq!(uf.find(v), 3);
        }
        assert_eq!(uf.find(4), 4);
        assert!(!uf.same(4, 5));
    }
}
