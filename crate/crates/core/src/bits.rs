//! Fixed-length packed bit vector. Bit `i` lives in word `i / 64` at position `i % 64`.

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PackedBits {
    len: usize,
    words: Vec<u64>,
}

impl PackedBits {
    pub fn zeros(len: usize) -> Self {
        PackedBits {
            len,
            words: vec![0; len.div_ceil(64)],
        }
    }

    pub fn ones(len: usize) -> Self {
        let mut bits = PackedBits {
            len,
            words: vec![u64::MAX; len.div_ceil(64)],
        };
        bits.clear_tail();
        bits
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn words(&self) -> &[u64] {
        &self.words
    }

    #[inline]
    pub(crate) fn words_mut(&mut self) -> &mut [u64] {
        &mut self.words
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        (self.words[i >> 6] >> (i & 63)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        debug_assert!(i < self.len);
        let mask = 1u64 << (i & 63);
        if value {
            self.words[i >> 6] |= mask;
        } else {
            self.words[i >> 6] &= !mask;
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize) {
        debug_assert!(i < self.len);
        self.words[i >> 6] ^= 1u64 << (i & 63);
    }

    pub fn xor_assign(&mut self, other: &PackedBits) {
        assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= *b;
        }
    }

    pub fn count_ones(&self) -> u64 {
        self.words.iter().map(|w| u64::from(w.count_ones())).sum()
    }

    pub fn any(&self) -> bool {
        self.words.iter().any(|&w| w != 0)
    }

    /// Indices of set bits, increasing.
    pub fn iter_ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let tz = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some((wi << 6) | tz)
                }
            })
        })
    }

    fn clear_tail(&mut self) {
        let rem = self.len & 63;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }
}

impl FromIterator<bool> for PackedBits {
    fn from_iter<I: IntoIterator<Item = bool>>(iter: I) -> Self {
        let mut words = Vec::new();
        let mut len = 0;
        for b in iter {
            if len & 63 == 0 {
                words.push(0);
            }
            if b {
                *words.last_mut().unwrap() |= 1u64 << (len & 63);
            }
            len += 1;
        }
        PackedBits { len, words }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ones_clears_the_tail() {
        let b = PackedBits::ones(70);
        assert_eq!(b.count_ones(), 70);
        assert_eq!(b.words()[1], (1 << 6) - 1);
    }

    #[test]
    fn iter_ones_is_sorted_and_complete() {
        let mut b = PackedBits::zeros(200);
        for i in [0, 5, 63, 64, 127, 199] {
            b.set(i, true);
        }
        assert_eq!(b.iter_ones().collect::<Vec<_>>(), vec![0, 5, 63, 64, 127, 199]);
        b.flip(5);
        assert!(!b.get(5));
        assert_eq!(b.count_ones(), 5);
    }

    #[test]
    fn from_iter_round_trips() {
        let pattern: Vec<bool> = (0..130).map(|i| i % 3 == 0).collect();
        let b: PackedBits = pattern.iter().copied().collect();
        assert_eq!(b.len(), 130);
        assert!((0..130).all(|i| b.get(i) == pattern[i]));
    }
}
