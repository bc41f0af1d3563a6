//! Vertex sets as `u64` bitmasks (desk-scale graphs, at most 64 vertices).

pub type VertexSet = u64;

pub const MAX_MASK_VERTICES: usize = 64;

#[inline]
pub fn bit(v: usize) -> VertexSet {
    1u64 << v
}

#[inline]
pub fn contains(set: VertexSet, v: usize) -> bool {
    set >> v & 1 == 1
}

/// Iterates the members of `set` in increasing order.
pub fn members(set: VertexSet) -> impl Iterator<Item = usize> {
    let mut rest = set;
    std::iter::from_fn(move || {
        if rest == 0 {
            None
        } else {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            Some(v)
        }
    })
}

pub fn from_vertices<I: IntoIterator<Item = usize>>(vs: I) -> VertexSet {
    vs.into_iter().fold(0, |acc, v| acc | bit(v))
}

pub fn to_vec(set: VertexSet) -> Vec<usize> {
    members(set).collect()
}

/// Mask of the first `n` vertices.
pub fn full(n: usize) -> VertexSet {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn members_in_order() {
        let s = from_vertices([5, 0, 63, 17]);
        assert_eq!(to_vec(s), vec![0, 5, 17, 63]);
        assert!(contains(s, 63));
        assert!(!contains(s, 1));
        assert_eq!(full(64), u64::MAX);
        assert_eq!(full(3), 0b111);
    }
}
