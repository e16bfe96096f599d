//! Byte streams to base-field digits and back, `floor(log2 q)` bits per digit.

pub fn bits_per_symbol(q: usize) -> usize {
    (usize::BITS - 1 - q.leading_zeros()) as usize
}

/// Packs `bytes` little-endian bit-first into `count` digits of `bits` bits,
/// zero-padding the tail.
pub fn pack(bytes: &[u8], bits: usize, count: usize) -> Vec<u8> {
    assert!((1..=8).contains(&bits));
    assert!(bytes.len() * 8 <= count * bits, "digits too few for the payload");
    let bit = |i: usize| -> u8 {
        bytes.get(i / 8).map_or(0, |b| (b >> (i % 8)) & 1)
    };
    (0..count)
        .map(|d| (0..bits).fold(0u8, |acc, j| acc | (bit(d * bits + j) << j)))
        .collect()
}

/// Inverse of [`pack`], returning the first `len` bytes.
pub fn unpack(digits: &[u8], bits: usize, len: usize) -> Vec<u8> {
    let mut out = vec![0u8; len];
    for i in 0..len * 8 {
        let (d, j) = (i / bits, i % bits);
        let b = digits.get(d).map_or(0, |x| (x >> j) & 1);
        out[i / 8] |= b << (i % 8);
    }
    out
}

/// Number of stripes of `digits_per_stripe` digits needed for `len` bytes.
pub fn stripes_for(len: usize, bits: usize, digits_per_stripe: usize) -> usize {
    let per = digits_per_stripe * bits;
    (len * 8).div_ceil(per).max(1)
}
