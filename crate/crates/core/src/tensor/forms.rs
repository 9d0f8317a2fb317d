use super::Tensor3;

/// Strictly increasing multi-indices of length `k` in `0..dim`, in lexicographic order.
pub fn multi_indices(dim: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, dim: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..dim {
            cur.push(i);
            rec(i + 1, dim, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k <= dim {
        rec(0, dim, k, &mut Vec::with_capacity(k), &mut out);
    }
    out
}

// Sign of the permutation that sorts `idx`, or 0 if an index repeats.
fn sort_sign(idx: &mut [usize]) -> f64 {
    let mut sign = 1.0;
    for i in 1..idx.len() {
        let mut j = i;
        while j > 0 && idx[j - 1] > idx[j] {
            idx.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
        if j > 0 && idx[j - 1] == idx[j] {
            return 0.0;
        }
    }
    if idx.windows(2).any(|w| w[0] == w[1]) {
        return 0.0;
    }
    sign
}

/// A constant-coefficient `k`-form on `R^dim`, stored on increasing multi-indices.
#[derive(Clone, Debug, PartialEq)]
pub struct ExteriorForm {
    dim: usize,
    degree: usize,
    indices: Vec<Vec<usize>>,
    coeffs: Vec<f64>,
}

impl ExteriorForm {
    pub fn zeros(dim: usize, degree: usize) -> Self {
        let indices = multi_indices(dim, degree);
        let coeffs = vec![0.0; indices.len()];
        Self {
            dim,
            degree,
            indices,
            coeffs,
        }
    }

    /// Coefficients in the order of [`multi_indices`].
    pub fn from_coefficients(dim: usize, degree: usize, coeffs: Vec<f64>) -> Self {
        let indices = multi_indices(dim, degree);
        assert_eq!(
            indices.len(),
            coeffs.len(),
            "coefficient count for a {degree}-form"
        );
        Self {
            dim,
            degree,
            indices,
            coeffs,
        }
    }

    /// The basis form `e^{i_1} ∧ … ∧ e^{i_k}` (indices in any order, with sign).
    pub fn basis(dim: usize, idx: &[usize]) -> Self {
        let mut f = Self::zeros(dim, idx.len());
        f.add_component(idx, 1.0);
        f
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn coefficients(&self) -> &[f64] {
        &self.coeffs
    }

    fn position(&self, sorted: &[usize]) -> usize {
        self.indices
            .binary_search_by(|m| m.as_slice().cmp(sorted))
            .expect("valid multi-index")
    }

    /// Value on basis vectors `e_{idx[0]}, …`, in any order.
    pub fn component(&self, idx: &[usize]) -> f64 {
        let mut s = idx.to_vec();
        let sign = sort_sign(&mut s);
        if sign == 0.0 {
            return 0.0;
        }
        sign * self.coeffs[self.position(&s)]
    }

    /// Adds `value` to the component on `idx` (any order).
    pub fn add_component(&mut self, idx: &[usize], value: f64) {
        let mut s = idx.to_vec();
        let sign = sort_sign(&mut s);
        if sign != 0.0 {
            let p = self.position(&s);
            self.coeffs[p] += sign * value;
        }
    }

    /// `φ(v_1, …, v_k)` for arbitrary vectors.
    pub fn eval(&self, vectors: &[Vec<f64>]) -> f64 {
        assert_eq!(vectors.len(), self.degree);
        let mut total = 0.0;
        for (m, &c) in self.indices.iter().zip(&self.coeffs) {
            if c == 0.0 {
                continue;
            }
            let minor = super::Matrix::from_fn(self.degree, self.degree, |r, s| vectors[s][m[r]]);
            total += c * determinant(&minor);
        }
        total
    }

    pub fn scaled(&self, s: f64) -> Self {
        let mut f = self.clone();
        f.coeffs.iter_mut().for_each(|c| *c *= s);
        f
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.dim, self.degree), (other.dim, other.degree));
        let mut f = self.clone();
        f.coeffs
            .iter_mut()
            .zip(&other.coeffs)
            .for_each(|(a, b)| *a += b);
        f
    }

    pub fn max_abs(&self) -> f64 {
        super::vector::max_abs(&self.coeffs)
    }

    pub fn wedge(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim);
        let mut out = Self::zeros(self.dim, self.degree + other.degree);
        for (a, &ca) in self.indices.iter().zip(&self.coeffs) {
            if ca == 0.0 {
                continue;
            }
            for (b, &cb) in other.indices.iter().zip(&other.coeffs) {
                if cb == 0.0 {
                    continue;
                }
                let joined: Vec<usize> = a.iter().chain(b).copied().collect();
                out.add_component(&joined, ca * cb);
            }
        }
        out
    }

    /// Hodge star for the Euclidean metric and orientation `e_0 ∧ … ∧ e_{n-1}`.
    pub fn hodge_star(&self) -> Self {
        let n = self.dim;
        let mut out = Self::zeros(n, n - self.degree);
        for (m, &c) in self.indices.iter().zip(&self.coeffs) {
            if c == 0.0 {
                continue;
            }
            let comp: Vec<usize> = (0..n).filter(|i| !m.contains(i)).collect();
            let mut full: Vec<usize> = m.iter().chain(&comp).copied().collect();
            let sign = sort_sign(&mut full);
            out.add_component(&comp, sign * c);
        }
        out
    }

    /// Chevalley–Eilenberg differential for the Lie algebra with structure
    /// constants `c[(i, j, k)]`, meaning `[e_i, e_j] = Σ_k c_ijk e_k`:
    /// `dφ(X_0,…,X_p) = Σ_{a<b} (−1)^{a+b} φ([X_a, X_b], X_0, …, X̂_a, …, X̂_b, …)`.
    pub fn differential(&self, c: &Tensor3) -> Self {
        assert_eq!(c.dim(), self.dim);
        let p = self.degree;
        let mut out = Self::zeros(self.dim, p + 1);
        for (pos, j) in out.indices.clone().iter().enumerate() {
            let mut v = 0.0;
            for a in 0..=p {
                for b in a + 1..=p {
                    let sign = if (a + b) % 2 == 0 { 1.0 } else { -1.0 };
                    let rest: Vec<usize> = (0..=p)
                        .filter(|&t| t != a && t != b)
                        .map(|t| j[t])
                        .collect();
                    let bracket = c.slot(j[a], j[b]);
                    for (k, &ck) in bracket.iter().enumerate() {
                        if ck == 0.0 {
                            continue;
                        }
                        let mut idx = Vec::with_capacity(p);
                        idx.push(k);
                        idx.extend_from_slice(&rest);
                        v += sign * ck * self.component(&idx);
                    }
                }
            }
            out.coeffs[pos] = v;
        }
        out
    }
}

fn determinant(m: &super::Matrix) -> f64 {
    let n = m.rows();
    match n {
        0 => 1.0,
        1 => m[(0, 0)],
        2 => m[(0, 0)] * m[(1, 1)] - m[(0, 1)] * m[(1, 0)],
        _ => {
            let mut a = m.clone();
            let mut det = 1.0;
            for col in 0..n {
                let piv = (col..n)
                    .max_by(|&i, &j| a[(i, col)].abs().total_cmp(&a[(j, col)].abs()))
                    .unwrap();
                if a[(piv, col)] == 0.0 {
                    return 0.0;
                }
                if piv != col {
                    for k in 0..n {
                        let t = a[(col, k)];
                        a[(col, k)] = a[(piv, k)];
                        a[(piv, k)] = t;
                    }
                    det = -det;
                }
                det *= a[(col, col)];
                for i in col + 1..n {
                    let f = a[(i, col)] / a[(col, col)];
                    for k in col..n {
                        a[(i, k)] -= f * a[(col, k)];
                    }
                }
            }
            det
        }
    }
}
