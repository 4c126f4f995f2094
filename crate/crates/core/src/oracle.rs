//! Unpruned reference enumeration, written directly from the t-norm definition.
//!
//! Nothing here uses the search engine or the structural helpers of the rest of the crate;
//! the relation is read as a plain boolean matrix.

use crate::relation::Psoset;
use crate::table::BinaryOpTable;

/// The t-norm axioms, checked literally on a boolean relation matrix.
pub fn is_tnorm_naive(rel: &[Vec<bool>], top: usize, t: &[Vec<usize>]) -> bool {
    let n = rel.len();
    for x in 0..n {
        if t[x][top] != x {
            return false;
        }
        for y in 0..n {
            if t[x][y] != t[y][x] {
                return false;
            }
        }
    }
    for x in 0..n {
        for y in 0..n {
            if !rel[x][y] {
                continue;
            }
            for z in 0..n {
                for w in 0..n {
                    if rel[z][w] && !rel[t[x][z]][t[y][w]] {
                        return false;
                    }
                }
            }
        }
    }
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                if t[x][t[y][z]] != t[t[x][y]][z] {
                    return false;
                }
            }
        }
    }
    true
}

fn top_of(rel: &[Vec<bool>]) -> Option<usize> {
    (0..rel.len()).find(|&x| (0..rel.len()).all(|y| rel[y][x]))
}

/// Number of tables the oracle inspects: one value per unordered pair of non-top elements.
pub fn table_count(n: usize) -> u128 {
    if n == 0 {
        return 1;
    }
    let free = (n - 1) * n / 2;
    (n as u128).pow(free as u32)
}

/// Every commutative table with neutral top that satisfies the t-norm axioms, sorted.
pub fn brute_force_tnorms(p: &Psoset) -> Vec<BinaryOpTable> {
    let rel = p.matrix();
    let n = rel.len();
    let Some(top) = top_of(&rel) else {
        return Vec::new();
    };
    let free: Vec<usize> = (0..n).filter(|&x| x != top).collect();
    let mut pairs = Vec::new();
    for (i, &x) in free.iter().enumerate() {
        for &y in &free[i..] {
            pairs.push((x, y));
        }
    }
    let mut t = vec![vec![0usize; n]; n];
    for x in 0..n {
        t[x][top] = x;
        t[top][x] = x;
    }
    let mut digits = vec![0usize; pairs.len()];
    let mut out = Vec::new();
    loop {
        for (&(x, y), &v) in pairs.iter().zip(&digits) {
            t[x][y] = v;
            t[y][x] = v;
        }
        if is_tnorm_naive(&rel, top, &t) {
            out.push(BinaryOpTable::from_rows(&t).expect("square table"));
        }
        // Odometer step.
        let mut i = 0;
        loop {
            if i == digits.len() {
                out.sort();
                return out;
            }
            digits[i] += 1;
            if digits[i] < n {
                break;
            }
            digits[i] = 0;
            i += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tiny_carriers() {
        let one = Psoset::from_pairs(&["0"], &[]).unwrap();
        assert_eq!(brute_force_tnorms(&one).len(), 1);
        let two = Psoset::from_pairs(&["0", "1"], &[("0", "1")]).unwrap();
        assert_eq!(brute_force_tnorms(&two).len(), 1);
        let three = Psoset::from_pairs(&["0", "m", "1"], &[("0", "m"), ("0", "1"), ("m", "1")]).unwrap();
        // Chain 0 < m < 1: drastic and minimum.
        assert_eq!(brute_force_tnorms(&three).len(), 2);
        assert_eq!(table_count(3), 27);
    }
}
