//! Brauer tree counts by canonical forms of plane trees.

use std::collections::BTreeSet;

/// A plane tree: neighbours of every vertex in counter-clockwise order.
#[derive(Debug, Clone)]
struct PlaneTree {
    rotation: Vec<Vec<usize>>,
}

impl PlaneTree {
    /// Tree of a Dyck word (`true` = step down to a new child).
    fn from_dyck(word: &[bool]) -> Self {
        let mut rotation = vec![Vec::new()];
        let mut stack = vec![0usize];
        for &down in word {
            let top = *stack.last().expect("balanced word");
            if down {
                let child = rotation.len();
                rotation.push(vec![top]);
                rotation[top].push(child);
                stack.push(child);
            } else {
                stack.pop();
            }
        }
        PlaneTree { rotation }
    }

    fn vertices(&self) -> usize {
        self.rotation.len()
    }

    /// Dyck encoding rooted at `v`, starting with its `start`-th neighbour.
    fn encode(&self, v: usize, start: usize) -> Vec<bool> {
        let mut out = Vec::with_capacity(2 * (self.vertices() - 1));
        let nb = &self.rotation[v];
        for k in 0..nb.len() {
            self.encode_branch(nb[(start + k) % nb.len()], v, &mut out);
        }
        out
    }

    fn encode_branch(&self, v: usize, parent: usize, out: &mut Vec<bool>) {
        out.push(true);
        let nb = &self.rotation[v];
        let at = nb.iter().position(|&w| w == parent).expect("parent is a neighbour");
        for k in 1..nb.len() {
            self.encode_branch(nb[(at + k) % nb.len()], v, out);
        }
        out.push(false);
    }

    fn rooted_form(&self, v: usize) -> Vec<bool> {
        (0..self.rotation[v].len().max(1)).map(|s| self.encode(v, s)).min().unwrap_or_default()
    }

    fn canonical(&self) -> Vec<bool> {
        (0..self.vertices()).map(|v| self.rooted_form(v)).min().unwrap_or_default()
    }
}

fn dyck_words(edges: usize) -> Vec<Vec<bool>> {
    fn go(open: usize, close: usize, cur: &mut Vec<bool>, out: &mut Vec<Vec<bool>>) {
        if open == 0 && close == 0 {
            out.push(cur.clone());
            return;
        }
        if open > 0 {
            cur.push(true);
            go(open - 1, close + 1, cur, out);
            cur.pop();
        }
        if close > 0 {
            cur.push(false);
            go(open, close - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(edges, 0, &mut Vec::new(), &mut out);
    out
}

fn trees(edges: usize) -> impl Iterator<Item = PlaneTree> {
    dyck_words(edges).into_iter().map(|w| PlaneTree::from_dyck(&w))
}

/// Number of Brauer trees with `edges` edges and exceptional multiplicity
/// `multiplicity`: plane trees up to isomorphism, with one marked vertex
/// when the multiplicity exceeds 1.
pub fn count_brauer_trees(edges: usize, multiplicity: usize) -> usize {
    assert!(edges >= 1 && multiplicity >= 1, "edges and multiplicity must be positive");
    let forms: BTreeSet<Vec<bool>> = if multiplicity == 1 {
        trees(edges).map(|t| t.canonical()).collect()
    } else {
        trees(edges).flat_map(|t| (0..t.vertices()).map(move |v| t.rooted_form(v)).collect::<Vec<_>>()).collect()
    };
    forms.len()
}

/// Brauer trees of multiplicity 1 with a chosen extremal vertex (a leaf).
pub fn count_brauer_trees_marked_leaf(edges: usize) -> usize {
    assert!(edges >= 1, "edges must be positive");
    let forms: BTreeSet<Vec<bool>> = trees(edges).flat_map(|t| (0..t.vertices()).filter(|&v| t.rotation[v].len() == 1).map(|v| t.rooted_form(v)).collect::<Vec<_>>()).collect();
    forms.len()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn plane_tree_counts() {
        // unrooted plane trees by edge count
        let expected = [1, 1, 2, 3, 6, 14, 34];
        for (d, &c) in expected.iter().enumerate() {
            assert_eq!(count_brauer_trees(d + 1, 1), c, "d = {}", d + 1);
        }
    }

    #[test]
    fn single_tree_cases() {
        for m in 1..=5 {
            assert_eq!(count_brauer_trees(1, m), 1);
        }
        assert_eq!(count_brauer_trees(2, 1), 1);
        assert_eq!(count_brauer_trees(2, 2), 2);
        assert_eq!(count_brauer_trees(2, 7), 2);
    }

    #[test]
    fn marked_leaf() {
        assert_eq!(count_brauer_trees_marked_leaf(1), 1);
        assert_eq!(count_brauer_trees_marked_leaf(2), 1);
        assert_eq!(count_brauer_trees_marked_leaf(3), 2);
    }
}
