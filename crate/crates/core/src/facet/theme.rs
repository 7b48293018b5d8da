use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

/// Hierarchical theme classification with per-node photo counts.
///
/// Serializes as `{"children": [{"name", "count", "children"}, ...]}`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThemeTree {
    #[serde(rename = "children")]
    pub roots: Vec<ThemeNode>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThemeNode {
    pub name: String,
    pub count: usize,
    pub children: Vec<ThemeNode>,
}

/// Name-only trie of every theme path in the archive; children kept sorted by name.
#[derive(Debug, Clone, Default)]
pub(crate) struct ThemeSkeleton {
    children: BTreeMap<String, ThemeSkeleton>,
}

impl ThemeSkeleton {
    pub(crate) fn insert(&mut self, path: &[String]) {
        let mut node = self;
        for name in path {
            node = node.children.entry(name.clone()).or_default();
        }
    }

    /// Materializes the tree, reading each node's count from `counts` keyed by
    /// the `/`-joined node path. Missing keys count as zero.
    pub(crate) fn with_counts(&self, counts: &BTreeMap<String, usize>) -> ThemeTree {
        fn build(
            skeleton: &ThemeSkeleton,
            prefix: &str,
            counts: &BTreeMap<String, usize>,
        ) -> Vec<ThemeNode> {
            skeleton
                .children
                .iter()
                .map(|(name, child)| {
                    let path = if prefix.is_empty() {
                        name.clone()
                    } else {
                        format!("{prefix}/{name}")
                    };
                    ThemeNode {
                        name: name.clone(),
                        count: counts.get(&path).copied().unwrap_or(0),
                        children: build(child, &path, counts),
                    }
                })
                .collect()
        }
        ThemeTree { roots: build(self, "", counts) }
    }
}

impl ThemeTree {
    /// Depth-first visit of every node with its full path.
    pub fn walk(&self, mut visit: impl FnMut(&[&str], &ThemeNode)) {
        fn go<'a>(
            nodes: &'a [ThemeNode],
            path: &mut Vec<&'a str>,
            visit: &mut impl FnMut(&[&str], &ThemeNode),
        ) {
            for node in nodes {
                path.push(&node.name);
                visit(path, node);
                go(&node.children, path, visit);
                path.pop();
            }
        }
        go(&self.roots, &mut Vec::new(), &mut visit);
    }

    pub fn node_count(&self) -> usize {
        let mut n = 0;
        self.walk(|_, _| n += 1);
        n
    }
}
