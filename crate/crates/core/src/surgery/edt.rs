//! Exact squared Euclidean distance transform (Felzenszwalb–Huttenlocher),
//! applied separably along each grid axis.

const INF: f64 = 1e30;

fn transform_1d(f: &[f64], d: &mut [f64], v: &mut [usize], z: &mut [f64]) {
    let n = f.len();
    let mut k = 0;
    v[0] = 0;
    z[0] = -INF;
    z[1] = INF;
    for q in 1..n {
        loop {
            let p = v[k];
            let s = ((f[q] + (q * q) as f64) - (f[p] + (p * p) as f64)) / (2.0 * q as f64 - 2.0 * p as f64);
            if s <= z[k] && k > 0 {
                k -= 1;
                continue;
            }
            if s <= z[k] {
                // k == 0: replace the only parabola.
                v[0] = q;
                z[0] = -INF;
                z[1] = INF;
                break;
            }
            k += 1;
            v[k] = q;
            z[k] = s;
            z[k + 1] = INF;
            break;
        }
    }
    k = 0;
    for q in 0..n {
        while z[k + 1] < q as f64 {
            k += 1;
        }
        let p = v[k];
        d[q] = (q as f64 - p as f64).powi(2) + f[p];
    }
}

/// Squared distance (in grid steps) from every grid point to the nearest
/// `true` entry of `mask`; `INF`-like values when the mask is empty.
pub fn squared_distance(mask: &[bool], dims: &[usize]) -> Vec<f64> {
    let mut g: Vec<f64> = mask.iter().map(|&b| if b { 0.0 } else { INF }).collect();
    let n = dims.len();
    let mut strides = vec![1usize; n];
    for k in (0..n.saturating_sub(1)).rev() {
        strides[k] = strides[k + 1] * dims[k + 1];
    }
    let total: usize = dims.iter().product();
    for axis in 0..n {
        let len = dims[axis];
        let stride = strides[axis];
        let mut f = vec![0.0; len];
        let mut d = vec![0.0; len];
        let mut v = vec![0usize; len];
        let mut z = vec![0.0; len + 1];
        for start in 0..total {
            if !(start / stride).is_multiple_of(len) {
                continue;
            }
            for i in 0..len {
                f[i] = g[start + i * stride];
            }
            transform_1d(&f, &mut d, &mut v, &mut z);
            for i in 0..len {
                g[start + i * stride] = d[i];
            }
        }
    }
    g
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matches_brute_force() {
        let dims = [7usize, 9];
        let mut mask = vec![false; 63];
        for &i in &[3usize, 40, 58] {
            mask[i] = true;
        }
        let d = squared_distance(&mask, &dims);
        for i in 0..63 {
            let (a, b) = (i / 9, i % 9);
            let brute = (0..63)
                .filter(|&j| mask[j])
                .map(|j| ((j / 9) as f64 - a as f64).powi(2) + ((j % 9) as f64 - b as f64).powi(2))
                .fold(f64::INFINITY, f64::min);
            assert_eq!(d[i], brute, "{i}");
        }
    }

    #[test]
    fn one_dimensional() {
        let d = squared_distance(&[false, false, true, false, false, false], &[6]);
        assert_eq!(d, vec![4.0, 1.0, 0.0, 1.0, 4.0, 9.0]);
    }
}
