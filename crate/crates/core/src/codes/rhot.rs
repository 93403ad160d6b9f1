use serde::{Deserialize, Serialize};

/// Sparse binary vector in `F_2^B`, `B = sum N_i`, split into one block per site.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RHotVector {
    pub total_bits: u64,
    /// Ascending indices of the set bits.
    pub set_bits: Vec<u64>,
    pub block_offsets: Vec<u64>,
}

impl RHotVector {
    /// Sets bit `offset_i + v_i` in each block; `anti` returns the complement.
    pub fn from_sites(site_sizes: &[u32], values: &[u32], anti: bool) -> Self {
        debug_assert_eq!(site_sizes.len(), values.len());
        let mut block_offsets = Vec::with_capacity(site_sizes.len());
        let mut set_bits = Vec::new();
        let mut offset = 0u64;
        for (&size, &v) in site_sizes.iter().zip(values) {
            block_offsets.push(offset);
            let hot = offset + v as u64;
            if anti {
                set_bits.extend((offset..offset + size as u64).filter(|&b| b != hot));
            } else {
                set_bits.push(hot);
            }
            offset += size as u64;
        }
        Self {
            total_bits: offset,
            set_bits,
            block_offsets,
        }
    }

    pub fn weight(&self) -> usize {
        self.set_bits.len()
    }

    /// Number of bits set in both vectors.
    pub fn common(&self, other: &RHotVector) -> usize {
        let (mut i, mut j, mut n) = (0, 0, 0);
        while i < self.set_bits.len() && j < other.set_bits.len() {
            match self.set_bits[i].cmp(&other.set_bits[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    n += 1;
                    i += 1;
                    j += 1;
                }
            }
        }
        n
    }

    pub fn hamming(&self, other: &RHotVector) -> usize {
        self.weight() + other.weight() - 2 * self.common(other)
    }

    /// Dense 0/1 string, bit 0 first.
    pub fn bit_string(&self) -> String {
        let mut s = vec![b'0'; self.total_bits as usize];
        for &b in &self.set_bits {
            s[b as usize] = b'1';
        }
        String::from_utf8(s).expect("ascii")
    }

    pub fn to_dense(&self) -> Vec<bool> {
        let mut v = vec![false; self.total_bits as usize];
        for &b in &self.set_bits {
            v[b as usize] = true;
        }
        v
    }
}
