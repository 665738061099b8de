//! Small helpers on sorted vertex slices shared by the solvers.

pub(crate) fn contains(key: &[usize], x: usize) -> bool {
    key.binary_search(&x).is_ok()
}

pub(crate) fn disjoint(a: &[usize], b: &[usize]) -> bool {
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => return false,
        }
    }
    true
}

/// Key with u and v taken out and z put in.
pub(crate) fn map_forward(key: &[usize], u: usize, v: usize, z: usize) -> Vec<usize> {
    let mut out: Vec<usize> = key.iter().copied().filter(|&x| x != u && x != v).collect();
    out.push(z);
    out.sort_unstable();
    out
}

pub(crate) fn merge_sorted(a: &[usize], b: &[usize]) -> Vec<usize> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        if a[i] <= b[j] {
            out.push(a[i]);
            i += 1;
        } else {
            out.push(b[j]);
            j += 1;
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}
