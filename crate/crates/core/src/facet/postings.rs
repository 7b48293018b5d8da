/// Sorted, duplicate-free document positions.
pub(crate) type Postings = Vec<u32>;

pub(crate) fn intersect(a: &[u32], b: &[u32]) -> Postings {
    let (mut i, mut j) = (0, 0);
    let mut out = Vec::with_capacity(a.len().min(b.len()));
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out
}

/// Union of posting lists drawn from a single-valued facet (so the inputs are disjoint).
pub(crate) fn union_disjoint<'a>(lists: impl IntoIterator<Item = &'a Postings>) -> Postings {
    let mut out: Postings = lists.into_iter().flatten().copied().collect();
    out.sort_unstable();
    out
}
