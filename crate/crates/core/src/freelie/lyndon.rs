//! Lyndon words over the alphabet `0..k`.

/// All Lyndon words of length `1..=max_len`, in lexicographic order
/// (Duval's generation algorithm).
pub fn lyndon_words(k: usize, max_len: usize) -> Vec<Vec<u8>> {
    assert!(k <= u8::MAX as usize + 1);
    let mut out = Vec::new();
    if k == 0 || max_len == 0 {
        return out;
    }
    let top = (k - 1) as u8;
    let mut w: Vec<u8> = vec![0];
    loop {
        out.push(w.clone());
        let m = w.len();
        while w.len() < max_len {
            let c = w[w.len() - m];
            w.push(c);
        }
        while w.last() == Some(&top) {
            w.pop();
        }
        match w.last_mut() {
            Some(last) => *last += 1,
            None => break,
        }
    }
    out
}

/// True iff `w` is strictly smaller than each of its proper rotations.
pub fn is_lyndon(w: &[u8]) -> bool {
    if w.is_empty() {
        return false;
    }
    (1..w.len()).all(|i| {
        let rot: Vec<u8> = w[i..].iter().chain(&w[..i]).copied().collect();
        w < rot.as_slice()
    })
}

/// Standard factorization `w = u·v` of a Lyndon word of length ≥ 2, where
/// `v` is the longest proper Lyndon suffix. Returns the split point.
pub fn standard_split(w: &[u8]) -> usize {
    debug_assert!(w.len() >= 2);
    (1..w.len())
        .find(|&i| is_lyndon(&w[i..]))
        .expect("a single letter is always a Lyndon suffix")
}

/// Number of Lyndon words of length `n` over `k` letters (Witt's formula);
/// saturates at `u128::MAX`.
pub fn necklace_count(k: u128, n: u32) -> u128 {
    let mut total: i128 = 0;
    for d in 1..=n {
        if !n.is_multiple_of(d) {
            continue;
        }
        let mu = mobius(d);
        if mu == 0 {
            continue;
        }
        let Some(p) = k.checked_pow(n / d) else {
            return u128::MAX;
        };
        let Ok(p) = i128::try_from(p) else {
            return u128::MAX;
        };
        total += mu as i128 * p;
    }
    (total / n as i128) as u128
}

fn mobius(mut n: u32) -> i32 {
    let mut result = 1;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            result = -result;
        }
        p += 1;
    }
    if n > 1 {
        result = -result;
    }
    result
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_alphabet() {
        let w = lyndon_words(2, 3);
        let expect: Vec<Vec<u8>> = vec![
            vec![0],
            vec![0, 0, 1],
            vec![0, 1],
            vec![0, 1, 1],
            vec![1],
        ];
        assert_eq!(w, expect);
    }

    #[test]
    fn witt_counts() {
        assert_eq!(necklace_count(2, 5), 6);
        assert_eq!(necklace_count(4, 6), 670);
        assert_eq!(necklace_count(6, 6), 7735);
        assert_eq!(necklace_count(1, 3), 0);
    }

    #[test]
    fn standard_factorization() {
        // 0 01 1 -> (001, 1)?  longest proper Lyndon suffix of 0011 is 011
        assert_eq!(standard_split(&[0, 0, 1, 1]), 1);
        assert_eq!(standard_split(&[0, 1, 0, 1, 1]), 2);
        assert_eq!(standard_split(&[0, 1]), 1);
    }
}
