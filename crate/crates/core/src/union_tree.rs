use crate::error::{Error, Result};
use crate::sequence::ContractionSequence;

/// Rooted binary tree of a full contraction sequence.
///
/// Leaves are the original vertices `0..n`; the internal node of step `i` is
/// the merged vertex `n + i - 1`, with the step's first vertex as left child.
/// Leaves are relabeled by their left-to-right order, which makes the leaf
/// set of every node a contiguous interval of positions.
#[derive(Debug, Clone)]
pub struct OrderedUnionTree {
    base_n: usize,
    children: Vec<(usize, usize)>,
    /// original id -> position in `0..n`
    pos_of: Vec<usize>,
    /// position -> original id
    orig_at: Vec<usize>,
    /// node id -> (lo, hi) positions, inclusive
    interval: Vec<(usize, usize)>,
}

/// Build the tree for a full sequence. The graph's edges play no role here;
/// only the merge structure does.
pub fn build_union_tree(seq: &ContractionSequence) -> Result<OrderedUnionTree> {
    let n = seq.base_n();
    if n == 0 {
        return Err(Error::InvalidInput("empty vertex set".into()));
    }
    seq.require_full("build_union_tree")?;
    let node_count = 2 * n - 1;
    let mut children = vec![(usize::MAX, usize::MAX); seq.len()];
    let mut used = vec![false; node_count];
    for (i, &(u, v)) in seq.steps().iter().enumerate() {
        for x in [u, v] {
            if x >= node_count || x >= n + i {
                return Err(Error::MalformedSequence {
                    step: i + 1,
                    reason: format!("vertex {x} does not exist yet"),
                });
            }
            if used[x] {
                return Err(Error::MalformedSequence {
                    step: i + 1,
                    reason: format!("vertex {x} was already contracted"),
                });
            }
            used[x] = true;
        }
        if u == v {
            return Err(Error::MalformedSequence {
                step: i + 1,
                reason: "self contraction".into(),
            });
        }
        children[i] = (u, v);
    }

    let root = node_count - 1;
    let mut pos_of = vec![usize::MAX; n];
    let mut orig_at = vec![usize::MAX; n];
    let mut interval = vec![(usize::MAX, usize::MAX); node_count];

    // Iterative DFS; sequences are often combs, so recursion would overflow.
    let mut next_pos = 0usize;
    let mut stack: Vec<(usize, bool)> = vec![(root, false)];
    let mut lo_stack: Vec<usize> = Vec::new();
    while let Some((node, done)) = stack.pop() {
        if done {
            let lo = lo_stack.pop().expect("interval open");
            interval[node] = (lo, next_pos - 1);
            continue;
        }
        if node < n {
            pos_of[node] = next_pos;
            orig_at[next_pos] = node;
            interval[node] = (next_pos, next_pos);
            next_pos += 1;
        } else {
            lo_stack.push(next_pos);
            stack.push((node, true));
            let (l, r) = children[node - n];
            stack.push((r, false));
            stack.push((l, false));
        }
    }
    debug_assert_eq!(next_pos, n);

    Ok(OrderedUnionTree {
        base_n: n,
        children,
        pos_of,
        orig_at,
        interval,
    })
}

impl OrderedUnionTree {
    pub fn base_n(&self) -> usize {
        self.base_n
    }

    pub fn root(&self) -> usize {
        2 * self.base_n - 2
    }

    pub fn is_leaf(&self, node: usize) -> bool {
        node < self.base_n
    }

    pub fn node_count(&self) -> usize {
        2 * self.base_n - 1
    }

    /// Children `(left, right)` of an internal node.
    pub fn children(&self, node: usize) -> Result<(usize, usize)> {
        if node < self.base_n || node >= self.node_count() {
            return Err(Error::InvalidInput(format!("node {node} is not internal")));
        }
        Ok(self.children[node - self.base_n])
    }

    /// Internal node created by 1-based step `i`.
    pub fn step_node(&self, i: usize) -> Result<usize> {
        if i == 0 || i > self.children.len() {
            return Err(Error::StepOutOfRange {
                index: i,
                len: self.children.len(),
            });
        }
        Ok(self.base_n + i - 1)
    }

    /// Position of an original vertex in the left-to-right leaf order.
    pub fn position_of(&self, orig: usize) -> Result<usize> {
        self.pos_of
            .get(orig)
            .copied()
            .ok_or(Error::UnknownVertex(orig))
    }

    pub fn original_at(&self, pos: usize) -> Result<usize> {
        self.orig_at
            .get(pos)
            .copied()
            .ok_or(Error::InvalidInput(format!("position {pos} out of range")))
    }

    /// The permutation original id -> position.
    pub fn permutation(&self) -> &[usize] {
        &self.pos_of
    }

    /// Inclusive position interval covered by a node's leaves.
    pub fn interval(&self, node: usize) -> Result<(usize, usize)> {
        if node >= self.node_count() {
            return Err(Error::UnknownVertex(node));
        }
        Ok(self.interval[node])
    }

    /// Original vertices below a node, sorted by position.
    pub fn part(&self, node: usize) -> Result<Vec<usize>> {
        let (lo, hi) = self.interval(node)?;
        Ok(self.orig_at[lo..=hi].to_vec())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_edge_tree() {
        let seq = ContractionSequence::from_steps(2, vec![(0, 1)]);
        let t = build_union_tree(&seq).unwrap();
        assert_eq!(t.root(), 2);
        assert_eq!(t.children(2).unwrap(), (0, 1));
        assert_eq!(t.part(2).unwrap(), vec![0, 1]);
    }

    #[test]
    fn left_comb_of_path() {
        let seq = ContractionSequence::from_steps(4, vec![(0, 1), (4, 2), (5, 3)]);
        let t = build_union_tree(&seq).unwrap();
        assert_eq!(t.step_node(1).unwrap(), 4);
        assert_eq!(t.part(4).unwrap(), vec![0, 1]);
        assert_eq!(t.part(5).unwrap(), vec![0, 1, 2]);
        assert_eq!(t.part(6).unwrap(), vec![0, 1, 2, 3]);
        assert_eq!(t.permutation(), &[0, 1, 2, 3]);
    }

    #[test]
    fn nine_leaf_tree_intervals() {
        // Tree whose internal nodes cover, in creation order, the leaf sets
        // {1,2}, {0,1,2}, {3,4}, {6,7}, {5,6,7}, {3..7}, {3..8}, {0..8}.
        let steps = vec![
            (1, 2),
            (0, 9),
            (3, 4),
            (6, 7),
            (5, 12),
            (11, 13),
            (14, 8),
            (10, 15),
        ];
        let seq = ContractionSequence::from_steps(9, steps);
        let t = build_union_tree(&seq).unwrap();
        assert_eq!(t.permutation(), &[0, 1, 2, 3, 4, 5, 6, 7, 8]);
        let expected = [
            (9, (1, 2)),
            (10, (0, 2)),
            (11, (3, 4)),
            (12, (6, 7)),
            (13, (5, 7)),
            (14, (3, 7)),
            (15, (3, 8)),
            (16, (0, 8)),
        ];
        for (node, iv) in expected {
            assert_eq!(t.interval(node).unwrap(), iv, "node {node}");
        }
    }

    #[test]
    fn order_depends_on_child_order() {
        // Contracting (1, 0) puts 1 to the left of 0.
        let seq = ContractionSequence::from_steps(3, vec![(1, 0), (3, 2)]);
        let t = build_union_tree(&seq).unwrap();
        assert_eq!(t.position_of(1).unwrap(), 0);
        assert_eq!(t.position_of(0).unwrap(), 1);
        assert_eq!(t.position_of(2).unwrap(), 2);
        assert_eq!(t.original_at(0).unwrap(), 1);
    }

    #[test]
    fn rejects_partial_and_reused_ids() {
        let seq = ContractionSequence::from_steps(4, vec![(0, 1)]);
        assert!(matches!(
            build_union_tree(&seq),
            Err(Error::PartialSequence { .. })
        ));
        let seq = ContractionSequence::from_steps(3, vec![(0, 1), (0, 2)]);
        assert!(matches!(
            build_union_tree(&seq),
            Err(Error::MalformedSequence { step: 2, .. })
        ));
    }

    #[test]
    fn single_vertex_tree() {
        let seq = ContractionSequence::new(1);
        let t = build_union_tree(&seq).unwrap();
        assert_eq!(t.root(), 0);
        assert_eq!(t.part(0).unwrap(), vec![0]);
    }
}
