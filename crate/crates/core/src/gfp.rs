//! Dense matrices over `Z/p` for the dihedral fast path.

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModMatrix {
    p: u64,
    rows: usize,
    cols: usize,
    data: Vec<u64>,
}

impl ModMatrix {
    pub fn zeros(p: u64, rows: usize, cols: usize) -> Self {
        ModMatrix { p, rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(p: u64, n: usize) -> Self {
        let mut m = Self::zeros(p, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> u64 {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: u64) {
        self.data[r * self.cols + c] = v % self.p;
    }

    pub fn row(&self, r: usize) -> &[u64] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn mul_vec(&self, v: &[u64]) -> Vec<u64> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows).map(|r| self.row(r).iter().zip(v).fold(0, |acc, (a, b)| (acc + a * b) % self.p)).collect()
    }

    /// `self − I`.
    pub fn minus_identity(&self) -> Self {
        assert_eq!(self.rows, self.cols);
        let mut m = self.clone();
        for i in 0..self.rows {
            let v = (m.get(i, i) + self.p - 1) % self.p;
            m.set(i, i, v);
        }
        m
    }

    /// Rows of `self` followed by rows of `other`.
    pub fn stack(&self, other: &ModMatrix) -> Self {
        assert_eq!(self.cols, other.cols);
        assert_eq!(self.p, other.p);
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        ModMatrix { p: self.p, rows: self.rows + other.rows, cols: self.cols, data }
    }

    /// Rank by Gaussian elimination; `p` must be prime.
    pub fn rank(&self) -> usize {
        let p = self.p;
        let mut a = self.data.clone();
        let cols = self.cols;
        let mut rank = 0;
        for c in 0..cols {
            let Some(pivot) = (rank..self.rows).find(|&r| a[r * cols + c] != 0) else {
                continue;
            };
            for k in 0..cols {
                a.swap(pivot * cols + k, rank * cols + k);
            }
            let inv = mod_inverse(a[rank * cols + c], p);
            for k in 0..cols {
                a[rank * cols + k] = a[rank * cols + k] * inv % p;
            }
            for r in 0..self.rows {
                let f = a[r * cols + c];
                if r == rank || f == 0 {
                    continue;
                }
                for k in 0..cols {
                    a[r * cols + k] = (a[r * cols + k] + p * p - f * a[rank * cols + k]) % p;
                }
            }
            rank += 1;
        }
        rank
    }

    pub fn kernel_dim(&self) -> usize {
        self.cols - self.rank()
    }
}

fn mod_inverse(x: u64, p: u64) -> u64 {
    mod_pow(x, p - 2, p)
}

fn mod_pow(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_small() {
        let mut m = ModMatrix::zeros(3, 2, 2);
        m.set(0, 0, 1);
        m.set(0, 1, 2);
        m.set(1, 0, 2);
        m.set(1, 1, 1); // second row = 2 * first row mod 3
        assert_eq!(m.rank(), 1);
        assert_eq!(ModMatrix::identity(5, 4).rank(), 4);
        assert_eq!(ModMatrix::identity(5, 4).minus_identity().kernel_dim(), 4);
    }

    #[test]
    fn primes() {
        let ps: Vec<u64> = (0..20).filter(|&n| is_prime(n)).collect();
        assert_eq!(ps, vec![2, 3, 5, 7, 11, 13, 17, 19]);
    }
}
