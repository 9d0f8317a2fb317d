//! Imaginary octonions and the seven-dimensional cross product.
//!
//! Units are numbered `e1..e7` and stored at indices `0..6`. The whole
//! multiplication table is generated from [`FANO_TRIPLES`]: for each triple
//! `(a, b, c)` we have `e_a e_b = e_c` together with its cyclic shifts, and
//! the opposite order picks up a sign.

/// Oriented lines of the Fano plane. Contains `e1e2 = e3`, `e1e4 = e5`,
/// `e2e4 = e6`, `e3e4 = e7`.
pub const FANO_TRIPLES: [[usize; 3]; 7] = [
    [1, 2, 3],
    [1, 4, 5],
    [2, 4, 6],
    [3, 4, 7],
    [1, 7, 6],
    [2, 5, 7],
    [3, 6, 5],
];

/// Product of two distinct imaginary units as `(sign, index)` with indices `1..=7`.
pub fn unit_product(a: usize, b: usize) -> (f64, usize) {
    assert!(a != b && (1..=7).contains(&a) && (1..=7).contains(&b));
    for t in FANO_TRIPLES {
        for s in 0..3 {
            let (x, y, z) = (t[s], t[(s + 1) % 3], t[(s + 2) % 3]);
            if (x, y) == (a, b) {
                return (1.0, z);
            }
            if (x, y) == (b, a) {
                return (-1.0, z);
            }
        }
    }
    unreachable!("every pair of distinct units lies on a Fano line")
}

/// `u × v = Im(u v)` on `R^7`.
pub fn cross(u: &[f64], v: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; 7];
    for a in 0..7 {
        if u[a] == 0.0 {
            continue;
        }
        for b in 0..7 {
            if a == b || v[b] == 0.0 {
                continue;
            }
            let (s, c) = unit_product(a + 1, b + 1);
            out[c - 1] += s * u[a] * v[b];
        }
    }
    out
}

/// Full octonion product on `R^8` with the real unit at index 0.
pub fn multiply(x: &[f64], y: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; 8];
    for a in 0..8 {
        for b in 0..8 {
            let c = x[a] * y[b];
            if c == 0.0 {
                continue;
            }
            match (a, b) {
                (0, _) => out[b] += c,
                (_, 0) => out[a] += c,
                _ if a == b => out[0] -= c,
                _ => {
                    let (s, k) = unit_product(a, b);
                    out[k] += s * c;
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn anchor_products() {
        assert_eq!(unit_product(1, 2), (1.0, 3));
        assert_eq!(unit_product(1, 4), (1.0, 5));
        assert_eq!(unit_product(2, 4), (1.0, 6));
        assert_eq!(unit_product(3, 4), (1.0, 7));
        assert_eq!(unit_product(4, 3), (-1.0, 7));
    }

    #[test]
    fn each_pair_on_exactly_one_line() {
        for a in 1..=7 {
            for b in a + 1..=7 {
                let n = FANO_TRIPLES
                    .iter()
                    .filter(|t| t.contains(&a) && t.contains(&b))
                    .count();
                assert_eq!(n, 1);
            }
        }
    }
}
