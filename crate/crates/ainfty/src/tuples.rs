//! Enumeration helpers.

/// All tuples of length `k` over `0..b`, in lexicographic order.
pub(crate) fn all_tuples(b: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..k {
        out = out
            .into_iter()
            .flat_map(|t| {
                (0..b).map(move |i| {
                    let mut u = t.clone();
                    u.push(i);
                    u
                })
            })
            .collect();
    }
    out
}

/// Ordered ways to write `n` as a sum of `parts` nonnegative integers.
pub(crate) fn weak_compositions(n: usize, parts: usize) -> Vec<Vec<usize>> {
    if parts == 0 {
        return if n == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    for first in 0..=n {
        for mut rest in weak_compositions(n - first, parts - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts() {
        assert_eq!(all_tuples(3, 4).len(), 81);
        assert_eq!(all_tuples(0, 0), vec![Vec::<usize>::new()]);
        assert!(all_tuples(0, 2).is_empty());
        // C(n + p − 1, p − 1)
        assert_eq!(weak_compositions(4, 3).len(), 15);
        assert_eq!(weak_compositions(0, 0).len(), 1);
        assert!(weak_compositions(2, 0).is_empty());
        assert!(weak_compositions(5, 3).iter().all(|c| c.iter().sum::<usize>() == 5));
    }
}
