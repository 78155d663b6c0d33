//! Central finite-difference stencils and the jets they produce.

use crate::taylor::Taylor;

/// Formal accuracy of every stencil in this module.
pub const STENCIL_ACCURACY: usize = 4;

/// Half-width of the central stencil for an `order`-th derivative.
pub fn half_width(order: usize) -> usize {
    if order == 0 {
        0
    } else {
        (order - 1) / 2 + STENCIL_ACCURACY / 2
    }
}

/// Fornberg weights for derivatives `0..=max_order` at `x = 0` on `nodes`.
///
/// `weights[m][k]` multiplies `f(nodes[k])` in the `m`-th derivative.
pub fn fornberg(nodes: &[f64], max_order: usize) -> Vec<Vec<f64>> {
    let n = nodes.len();
    let mut c = vec![vec![0.0; n]; max_order + 1];
    c[0][0] = 1.0;
    let mut c1 = 1.0;
    let mut c4 = nodes[0];
    for i in 1..n {
        let mn = i.min(max_order);
        let mut c2 = 1.0;
        let c5 = c4;
        c4 = nodes[i];
        for j in 0..i {
            let c3 = nodes[i] - nodes[j];
            c2 *= c3;
            if j == i - 1 {
                for k in (1..=mn).rev() {
                    c[k][i] = c1 * (k as f64 * c[k - 1][i - 1] - c5 * c[k][i - 1]) / c2;
                }
                c[0][i] = -c1 * c5 * c[0][i - 1] / c2;
            }
            for k in (1..=mn).rev() {
                c[k][j] = (c4 * c[k][j] - k as f64 * c[k - 1][j]) / c3;
            }
            c[0][j] *= c4 / c3;
        }
        c1 = c2;
    }
    c
}

/// Weights of the central `order`-th derivative over offsets `-n..=n`
/// (unit spacing), where `n` is the global half-width.
fn central_weights(order: usize, n: usize) -> Vec<f64> {
    let w = half_width(order);
    let nodes: Vec<f64> = (-(w as i64)..=(w as i64)).map(|k| k as f64).collect();
    let local = fornberg(&nodes, order);
    let mut out = vec![0.0; 2 * n + 1];
    for (k, wt) in local[order].iter().enumerate() {
        out[n - w + k] = *wt;
    }
    out
}

/// Builds degree-`deg` jets of a vector-valued point function by tensor
/// central differences with step `h`. The function is sampled on a
/// `(2N+1)²` lattice once.
pub fn jets_from_samples<const K: usize>(
    deg: usize,
    h: f64,
    mut sample: impl FnMut(f64, f64) -> [f64; K],
) -> [Taylor; K] {
    let n = (0..=deg).map(half_width).max().unwrap_or(0);
    let side = 2 * n + 1;
    let mut grid = vec![[0.0; K]; side * side];
    for a in 0..side {
        for b in 0..side {
            let du = (a as f64 - n as f64) * h;
            let dv = (b as f64 - n as f64) * h;
            grid[a * side + b] = sample(du, dv);
        }
    }
    let weights: Vec<Vec<f64>> = (0..=deg).map(|m| central_weights(m, n)).collect();
    let mut partials = vec![vec![[0.0; K]; deg + 1]; deg + 1];
    for i in 0..=deg {
        for j in 0..=(deg - i) {
            let scale = h.powi((i + j) as i32);
            let mut acc = [0.0; K];
            for a in 0..side {
                let wa = weights[i][a];
                if wa == 0.0 {
                    continue;
                }
                for b in 0..side {
                    let wb = weights[j][b];
                    if wb == 0.0 {
                        continue;
                    }
                    let s = &grid[a * side + b];
                    for k in 0..K {
                        acc[k] += wa * wb * s[k];
                    }
                }
            }
            for k in 0..K {
                partials[i][j][k] = acc[k] / scale;
            }
        }
    }
    std::array::from_fn(|k| Taylor::from_partials(deg, |i, j| partials[i][j][k]))
}

/// Single-output convenience wrapper.
pub fn jet_from_samples(deg: usize, h: f64, mut sample: impl FnMut(f64, f64) -> f64) -> Taylor {
    let [t] = jets_from_samples::<1>(deg, h, |du, dv| [sample(du, dv)]);
    t
}
