//! Lexicographic indexing of `n`-tuples over `0..base`.

/// `base^n`, or `None` on overflow.
pub fn tuple_count(base: usize, n: usize) -> Option<u128> {
    (base as u128).checked_pow(n.try_into().ok()?)
}

/// Index of a tuple in lexicographic order; the first coordinate is most significant.
pub fn tuple_index(tuple: &[u32], base: usize) -> usize {
    tuple.iter().fold(0, |acc, &x| acc * base + x as usize)
}

pub fn tuple_from_index(mut index: usize, base: usize, n: usize) -> Vec<u32> {
    let mut out = vec![0u32; n];
    for slot in out.iter_mut().rev() {
        *slot = (index % base) as u32;
        index /= base;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        for i in 0..125 {
            let t = tuple_from_index(i, 5, 3);
            assert_eq!(tuple_index(&t, 5), i);
        }
        assert_eq!(tuple_from_index(7, 3, 2), vec![2, 1]);
        assert_eq!(tuple_count(10, 6), Some(1_000_000));
    }
}
