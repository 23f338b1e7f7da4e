/// Union-find with union by size and no path compression, so that unions
/// can be undone in LIFO order.
#[derive(Debug, Clone)]
pub(crate) struct RollbackUf {
    parent: Vec<u32>,
    size: Vec<u32>,
    history: Vec<u32>,
    classes: usize,
}

impl RollbackUf {
    pub fn new(n: usize) -> Self {
        RollbackUf {
            parent: (0..n as u32).collect(),
            size: vec![1; n],
            history: Vec::with_capacity(n),
            classes: n,
        }
    }

    #[inline]
    pub fn find(&self, mut x: usize) -> usize {
        while self.parent[x] as usize != x {
            x = self.parent[x] as usize;
        }
        x
    }

    /// Returns `true` if two classes were merged.
    #[inline]
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        if self.size[ra] < self.size[rb] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb] = ra as u32;
        self.size[ra] += self.size[rb];
        self.history.push(rb as u32);
        self.classes -= 1;
        true
    }

    pub fn checkpoint(&self) -> usize {
        self.history.len()
    }

    pub fn rollback(&mut self, checkpoint: usize) {
        while self.history.len() > checkpoint {
            let child = self.history.pop().unwrap() as usize;
            let root = self.parent[child] as usize;
            self.size[root] -= self.size[child];
            self.parent[child] = child as u32;
            self.classes += 1;
        }
    }

    pub fn classes(&self) -> usize {
        self.classes
    }
}

/// Plain union-find with path halving.
#[derive(Debug, Clone)]
pub(crate) struct Uf {
    parent: Vec<usize>,
}

impl Uf {
    pub fn new(n: usize) -> Self {
        Uf {
            parent: (0..n).collect(),
        }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra] = rb;
        true
    }
}
