//! Combinatorics of the simplex category.
//!
//! A monotone map `[m] → [n]` is stored as its value vector of length
//! `m + 1`. A surjection `[n] ↠ [k]` is equally described by its collapse
//! set `{t : θ(t) = θ(t+1)}`; a degeneracy word `s_{i₁}⋯s_{i_r}` in
//! descending normal form applied to a `k`-simplex corresponds to the
//! surjection whose collapse set is `{i₁, …, i_r}`.

/// Coface `δ_i: [n−1] → [n]`, skipping `i`.
pub fn coface(n: usize, i: usize) -> Vec<usize> {
    (0..n).map(|t| if t < i { t } else { t + 1 }).collect()
}

/// Codegeneracy `σ_j: [n+1] → [n]`, hitting `j` twice.
pub fn codegeneracy(n: usize, j: usize) -> Vec<usize> {
    (0..=n + 1).map(|t| if t <= j { t } else { t - 1 }).collect()
}

/// `f ∘ g` for value vectors.
pub fn compose(f: &[usize], g: &[usize]) -> Vec<usize> {
    g.iter().map(|&t| f[t]).collect()
}

pub fn is_monotone(f: &[usize]) -> bool {
    f.windows(2).all(|w| w[0] <= w[1])
}

/// Unique factorization `f = ε ∘ τ` of a monotone map with `τ` surjective
/// onto `[q]` and `ε: [q] ↪ [target]` injective. Returns `(τ, ε)`.
pub fn epi_mono(f: &[usize]) -> (Vec<usize>, Vec<usize>) {
    let mut image: Vec<usize> = Vec::new();
    let mut epi = Vec::with_capacity(f.len());
    for &v in f {
        if image.last() != Some(&v) {
            image.push(v);
        }
        epi.push(image.len() - 1);
    }
    (epi, image)
}

/// Surjection `[n] ↠ [n − |c|]` with collapse set `c`.
pub fn surjection_from_collapse(n: usize, collapse: &[usize]) -> Vec<usize> {
    let mut out = Vec::with_capacity(n + 1);
    let mut v = 0;
    for t in 0..=n {
        if t > 0 && !collapse.contains(&(t - 1)) {
            v += 1;
        }
        out.push(v);
    }
    out
}

/// Collapse set of a surjection, ascending.
pub fn collapse_set(s: &[usize]) -> Vec<usize> {
    (0..s.len().saturating_sub(1)).filter(|&t| s[t] == s[t + 1]).collect()
}

/// Collapse set as a descending degeneracy word.
pub fn word_of(s: &[usize]) -> Vec<usize> {
    let mut w = collapse_set(s);
    w.reverse();
    w
}

/// Given a surjection `θ` whose collapse set contains `c`, the unique `θ'`
/// with `θ = θ' ∘ ρ`, where `ρ` is the surjection collapsing `c`.
pub fn factor_through_collapse(theta: &[usize], c: &[usize]) -> Vec<usize> {
    let n = theta.len() - 1;
    let rho = surjection_from_collapse(n, c);
    let mut out = vec![0; n + 1 - c.len()];
    for (t, &v) in rho.iter().enumerate() {
        out[v] = theta[t];
    }
    out
}

/// Indices of `[target]` missed by an injection, ascending.
pub fn missed(e: &[usize], target: usize) -> Vec<usize> {
    (0..=target).filter(|v| !e.contains(v)).collect()
}

/// All surjections `[n] ↠ [k]`, in lexicographic order of value vectors.
pub fn surjections(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k > n {
        return Vec::new();
    }
    // a surjection is determined by its collapse set, an (n−k)-subset of 0..n;
    // lexicographic order on value vectors is reverse-lexicographic on
    // the "step" positions, so sort explicitly
    let mut out: Vec<Vec<usize>> = subsets(n, n - k).iter().map(|c| surjection_from_collapse(n, c)).collect();
    out.sort();
    out
}

/// All `size`-element subsets of `0..n`, each ascending, in lexicographic
/// order.
pub fn subsets(n: usize, size: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, size: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == size {
            out.push(cur.clone());
            return;
        }
        for t in start..n {
            if n - t < size - cur.len() {
                break;
            }
            cur.push(t);
            go(t + 1, n, size, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if size <= n {
        go(0, n, size, &mut Vec::new(), &mut out);
    }
    out
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factorization_recomposes() {
        let f = vec![0, 0, 2, 2, 3];
        let (t, e) = epi_mono(&f);
        assert_eq!(t, vec![0, 0, 1, 1, 2]);
        assert_eq!(e, vec![0, 2, 3]);
        assert_eq!(compose(&e, &t), f);
        assert_eq!(missed(&e, 3), vec![1]);
    }

    #[test]
    fn collapse_round_trip() {
        for n in 0..5 {
            for size in 0..=n {
                for c in subsets(n, size) {
                    let s = surjection_from_collapse(n, &c);
                    assert_eq!(collapse_set(&s), c);
                    assert_eq!(*s.last().unwrap(), n - size);
                }
            }
        }
    }

    #[test]
    fn collapse_factorization() {
        let theta = surjection_from_collapse(4, &[0, 2, 3]);
        let c = [2];
        let rest = factor_through_collapse(&theta, &c);
        assert_eq!(compose(&rest, &surjection_from_collapse(4, &c)), theta);
        assert_eq!(collapse_set(&rest), vec![0, 2]);
    }

    #[test]
    fn surjection_counts() {
        assert_eq!(surjections(2, 1), vec![vec![0, 0, 1], vec![0, 1, 1]]);
        for n in 0..6 {
            for k in 0..=n {
                assert_eq!(surjections(n, k).len(), binomial(n, k));
            }
        }
    }

    #[test]
    fn cosimplicial_identity() {
        // σ_j δ_j = id
        for n in 1..5 {
            for j in 0..n {
                let c = compose(&codegeneracy(n - 1, j), &coface(n, j));
                assert_eq!(c, (0..n).collect::<Vec<_>>());
            }
        }
    }
}
