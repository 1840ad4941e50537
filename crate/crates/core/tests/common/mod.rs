//! Test-side oracle: Jordan-Wigner matrices built from scratch.
//!
//! Nothing here calls into the library's dense module. Row and column
//! indices are occupation bitmasks (bit `i-1` is orbital `i`), and
//! `c*_i |A⟩ = (−1)^{#{j∈A : j<i}} |A∪{i}⟩`.

#![allow(dead_code, clippy::needless_range_loop)]

use hsbasis::{Complex, DenseOperator, OperatorPoly, Scalar};

#[derive(Clone, Debug, PartialEq)]
pub struct Mat<T> {
    pub n: usize,
    pub dim: usize,
    pub d: Vec<Complex<T>>,
}

fn zero<T: Scalar>() -> Complex<T> {
    Complex::new(T::zero(), T::zero())
}

fn one<T: Scalar>() -> Complex<T> {
    Complex::new(T::one(), T::zero())
}

impl<T: Scalar> Mat<T> {
    pub fn zeros(n: usize) -> Self {
        let dim = 1 << n;
        Mat {
            n,
            dim,
            d: vec![zero(); dim * dim],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for r in 0..m.dim {
            m.d[r * m.dim + r] = one();
        }
        m
    }

    pub fn at(&self, r: usize, c: usize) -> Complex<T> {
        self.d[r * self.dim + c]
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut out = Self::zeros(self.n);
        for r in 0..self.dim {
            for k in 0..self.dim {
                let x = self.at(r, k);
                if x == zero() {
                    continue;
                }
                for c in 0..self.dim {
                    out.d[r * self.dim + c] = out.d[r * self.dim + c] + x * o.at(k, c);
                }
            }
        }
        out
    }

    pub fn adjoint(&self) -> Self {
        let mut out = Self::zeros(self.n);
        for r in 0..self.dim {
            for c in 0..self.dim {
                out.d[c * self.dim + r] = self.at(r, c).conj();
            }
        }
        out
    }

    pub fn add(&self, o: &Self) -> Self {
        let d = self.d.iter().zip(&o.d).map(|(x, y)| *x + *y).collect();
        Mat {
            n: self.n,
            dim: self.dim,
            d,
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        let d = self.d.iter().zip(&o.d).map(|(x, y)| *x - *y).collect();
        Mat {
            n: self.n,
            dim: self.dim,
            d,
        }
    }

    pub fn scale(&self, s: Complex<T>) -> Self {
        Mat {
            n: self.n,
            dim: self.dim,
            d: self.d.iter().map(|x| *x * s).collect(),
        }
    }

    pub fn trace(&self) -> Complex<T> {
        (0..self.dim).fold(zero(), |acc, r| acc + self.at(r, r))
    }

    /// `tr(X* Y)`.
    pub fn hs(&self, o: &Self) -> Complex<T> {
        self.d
            .iter()
            .zip(&o.d)
            .fold(zero(), |acc, (x, y)| acc + x.conj() * *y)
    }

    pub fn anticommutator(&self, o: &Self) -> Self {
        self.mul(o).add(&o.mul(self))
    }

    pub fn to_f64(&self) -> Mat<f64> {
        let d = self
            .d
            .iter()
            .map(|x| Complex::new(x.re.to_f64().unwrap(), x.im.to_f64().unwrap()))
            .collect();
        Mat {
            n: self.n,
            dim: self.dim,
            d,
        }
    }
}

impl Mat<f64> {
    pub fn max_diff(&self, o: &Self) -> f64 {
        self.d
            .iter()
            .zip(&o.d)
            .map(|(x, y)| (x - y).norm())
            .fold(0.0, f64::max)
    }

    pub fn max_diff_lib(&self, o: &DenseOperator<f64>) -> f64 {
        assert_eq!(self.n, o.n());
        self.d
            .iter()
            .zip(o.data())
            .map(|(x, y)| (x - y).norm())
            .fold(0.0, f64::max)
    }

    pub fn from_lib(x: &DenseOperator<f64>) -> Self {
        Mat {
            n: x.n(),
            dim: x.dim(),
            d: x.data().to_vec(),
        }
    }

    pub fn hs_norm(&self) -> f64 {
        self.d.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt()
    }
}

/// `c*_i`, 1-based.
pub fn create<T: Scalar>(i: usize, n: usize) -> Mat<T> {
    assert!((1..=n).contains(&i));
    let bit = 1usize << (i - 1);
    let mut m = Mat::zeros(n);
    for a in 0..m.dim {
        if a & bit == 0 {
            let below = (a & (bit - 1)).count_ones();
            let v = if below.is_multiple_of(2) {
                one()
            } else {
                -one::<T>()
            };
            m.d[(a | bit) * m.dim + a] = v;
        }
    }
    m
}

pub fn annihilate<T: Scalar>(i: usize, n: usize) -> Mat<T> {
    create::<T>(i, n).adjoint()
}

/// `c*_{a_1} ⋯ c*_{a_k}` with `a_1 < ⋯ < a_k`.
pub fn creation_string<T: Scalar>(mask: u32, n: usize) -> Mat<T> {
    (1..=n)
        .filter(|i| mask >> (i - 1) & 1 == 1)
        .fold(Mat::identity(n), |acc, i| acc.mul(&create(i, n)))
}

/// `c*_A c_B` with `c_B = (c*_B)*`.
pub fn mono<T: Scalar>(a: u32, b: u32, n: usize) -> Mat<T> {
    creation_string::<T>(a, n).mul(&creation_string::<T>(b, n).adjoint())
}

/// `n_K = c*_K c_K`, computed as a product of occupation projectors.
pub fn occupation<T: Scalar>(k: u32, n: usize) -> Mat<T> {
    (1..=n)
        .filter(|i| k >> (i - 1) & 1 == 1)
        .fold(Mat::identity(n), |acc, i| {
            acc.mul(&create(i, n).mul(&annihilate(i, n)))
        })
}

pub fn number<T: Scalar>(n: usize) -> Mat<T> {
    (1..=n).fold(Mat::zeros(n), |acc, i| {
        acc.add(&create(i, n).mul(&annihilate(i, n)))
    })
}

/// `a_{2k−1} = i(c*_k − c_k)`, `a_{2k} = c*_k + c_k`.
pub fn majorana<T: Scalar>(j: usize, n: usize) -> Mat<T> {
    let k = j.div_ceil(2);
    let (cs, c) = (create::<T>(k, n), annihilate::<T>(k, n));
    if j % 2 == 1 {
        cs.sub(&c).scale(Complex::new(T::zero(), T::one()))
    } else {
        cs.add(&c)
    }
}

pub fn poly_mat<T: Scalar>(p: &OperatorPoly<T>) -> Mat<T> {
    p.terms().fold(Mat::zeros(p.n()), |acc, (a, b, c)| {
        acc.add(&mono::<T>(a.bits(), b.bits(), p.n()).scale(c))
    })
}

/// Numerical rank by Gaussian elimination with partial pivoting.
pub fn rank(rows: &[Vec<Complex<f64>>], tol: f64) -> usize {
    let mut m: Vec<Vec<Complex<f64>>> = rows.to_vec();
    let cols = m.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).max_by(|&x, &y| m[x][c].norm().total_cmp(&m[y][c].norm()))
        else {
            break;
        };
        if m[p][c].norm() <= tol {
            continue;
        }
        m.swap(r, p);
        let pivot = m[r][c];
        for x in r + 1..m.len() {
            let f = m[x][c] / pivot;
            if f.norm() == 0.0 {
                continue;
            }
            for y in c..cols {
                let v = m[r][y];
                m[x][y] -= f * v;
            }
        }
        r += 1;
    }
    r
}

pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

/// `Σ_{l≤k} C(2n, 2l)`.
pub fn kbody_count(n: usize, k: usize) -> u64 {
    (0..=k as u64).map(|l| binomial(2 * n as u64, 2 * l)).sum()
}

/// Orthonormal frame (modified Gram-Schmidt) for the span of the oracle
/// monomials `c*_A c_B` with `|A|+|B|` even and at most `2k`.
pub fn kbody_frame(n: usize, k: usize) -> Vec<Mat<f64>> {
    let mut frame: Vec<Mat<f64>> = Vec::new();
    for a in 0..1u32 << n {
        for b in 0..1u32 << n {
            let deg = (a.count_ones() + b.count_ones()) as usize;
            if deg % 2 == 1 || deg > 2 * k {
                continue;
            }
            let mut v = mono::<f64>(a, b, n);
            for q in &frame {
                let c = q.hs(&v);
                v = v.sub(&q.scale(c));
            }
            let norm = v.hs_norm();
            assert!(norm > 1e-9, "oracle monomials are linearly independent");
            frame.push(v.scale(Complex::new(1.0 / norm, 0.0)));
        }
    }
    frame
}

/// `Σ_q ⟨q, X⟩ q`.
pub fn project(frame: &[Mat<f64>], x: &Mat<f64>) -> Mat<f64> {
    frame
        .iter()
        .fold(Mat::zeros(x.n), |acc, q| acc.add(&q.scale(q.hs(x))))
}
