//! Integer lattices `Z^k` in sup-norm shells.
//!
//! The canonical summation order used by every lattice kernel is: shell 0,
//! then shells `s = 1, 2, ...`; inside a shell each half-lattice
//! representative `m` is immediately followed by `-m`. A representative has
//! its last nonzero coordinate positive.

/// `(-1)^{m_1 + ... + m_l}`.
#[inline]
pub fn sign_character(m: &[i64], l: usize) -> f64 {
    let s: i64 = m[..l].iter().map(|v| v.abs()).sum();
    if s % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

#[inline]
fn is_representative(m: &[i64]) -> bool {
    m.iter().rev().find(|v| **v != 0).is_some_and(|v| *v > 0)
}

/// Calls `f` on every half-lattice representative of sup-norm exactly `s >= 1`,
/// in canonical order. Points are generated on the fly.
///
/// Shell `s` is split by the first coordinate `i` with `|m_i| = s`: earlier
/// coordinates range over `-(s-1)..=s-1`, later ones over `-s..=s`.
pub fn visit_half_shell<F: FnMut(&[i64])>(k: usize, s: i64, mut f: F) {
    assert!(s >= 1 && k >= 1);
    let mut m = vec![0i64; k];
    let mut lo = vec![0i64; k];
    let mut hi = vec![0i64; k];
    for i in 0..k {
        for &edge in &[s, -s] {
            // the last coordinate can only be a representative at +s
            if i == k - 1 && edge < 0 {
                continue;
            }
            for j in 0..k {
                if j < i {
                    lo[j] = -(s - 1);
                    hi[j] = s - 1;
                } else if j == i {
                    lo[j] = edge;
                    hi[j] = edge;
                } else {
                    lo[j] = -s;
                    hi[j] = s;
                }
                m[j] = lo[j];
            }
            'odo: loop {
                if is_representative(&m) {
                    f(&m);
                }
                for j in (0..k).rev() {
                    if m[j] < hi[j] {
                        m[j] += 1;
                        continue 'odo;
                    }
                    m[j] = lo[j];
                }
                break;
            }
        }
    }
}

/// All points of `Z^k` with sup-norm at most `radius`, grouped by shell.
/// Within each shell `m` and `-m` are adjacent.
pub fn enumerate_shells(k: usize, radius: usize) -> Vec<Vec<Vec<i64>>> {
    let mut shells = vec![vec![vec![0i64; k]]];
    for s in 1..=radius as i64 {
        let mut shell = Vec::new();
        visit_half_shell(k, s, |m| {
            shell.push(m.to_vec());
            shell.push(m.iter().map(|v| -v).collect());
        });
        shells.push(shell);
    }
    shells
}

/// Representatives of `(Z^r \ {0}) / {±1}` with sup-norm at most `radius`,
/// ordered by shell then canonical order.
pub fn half_lattice(r: usize, radius: usize) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    for s in 1..=radius as i64 {
        visit_half_shell(r, s, |m| out.push(m.to_vec()));
    }
    out
}
