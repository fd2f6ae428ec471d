//! Unsupervised sense induction for an ambiguous form: collect its
//! occurrence contexts, build a lexical cooccurrence graph over them,
//! cluster the graph into sense regions, name each cluster after its
//! best-connected member and assign every context to a sense.

use std::collections::{BTreeMap, BTreeSet};

use crate::corpus::Corpus;
use crate::error::{Error, Result};

/// One occurrence window of the target form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Context {
    pub doc_id: String,
    /// Token index of the target occurrence within its document.
    pub offset: usize,
    /// Window tokens, target included, truncated at document edges.
    pub tokens: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContextSet {
    pub target: String,
    pub width: usize,
    pub contexts: Vec<Context>,
}

/// One context per occurrence of the form, +/-width tokens, no padding.
pub fn extract_contexts(corpus: &Corpus, form: &str, width: usize) -> Result<ContextSet> {
    let mut contexts = Vec::new();
    for doc in &corpus.documents {
        for (i, tok) in doc.tokens.iter().enumerate() {
            if tok != form {
                continue;
            }
            let lo = i.saturating_sub(width);
            let hi = (i + width + 1).min(doc.tokens.len());
            contexts.push(Context {
                doc_id: doc.id.clone(),
                offset: i,
                tokens: doc.tokens[lo..hi].to_vec(),
            });
        }
    }
    if contexts.is_empty() {
        return Err(Error::AbsentForm(form.to_string()));
    }
    Ok(ContextSet {
        target: form.to_string(),
        width,
        contexts,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct GraphConfig {
    /// A term must appear in at least this many contexts to become a node.
    pub min_node_freq: u64,
    /// An edge survives only with at least this many shared contexts.
    pub min_edge_weight: u64,
    /// Fraction of the top corpus-frequency vocabulary excluded, so
    /// function words do not bridge senses.
    pub stop_ratio: f64,
    /// Within a component, edges lighter than this fraction of the
    /// component's heaviest edge are pruned before re-splitting.
    pub split_ratio: f64,
}

impl Default for GraphConfig {
    fn default() -> Self {
        GraphConfig {
            min_node_freq: 2,
            min_edge_weight: 2,
            stop_ratio: 0.01,
            split_ratio: 0.25,
        }
    }
}

/// Weighted undirected term graph around the target form. Edge weight is
/// the number of contexts where both terms appear.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CooccurrenceGraph {
    pub root: String,
    /// node term -> number of contexts containing it
    pub nodes: BTreeMap<String, u64>,
    /// edges keyed (a, b) with a < b
    pub edges: BTreeMap<(String, String), u64>,
}

impl CooccurrenceGraph {
    pub fn edge(&self, a: &str, b: &str) -> u64 {
        let key = if a < b { (a.to_string(), b.to_string()) } else { (b.to_string(), a.to_string()) };
        self.edges.get(&key).copied().unwrap_or(0)
    }
}

fn stop_terms(corpus: &Corpus, stop_ratio: f64) -> BTreeSet<String> {
    if stop_ratio <= 0.0 {
        return BTreeSet::new();
    }
    let mut by_freq: Vec<(&String, u64)> = corpus
        .unigrams()
        .counts
        .iter()
        .map(|(t, &f)| (t, f))
        .collect();
    by_freq.sort_by(|a, b| b.1.cmp(&a.1).then(a.0.cmp(b.0)));
    let n_stop = (stop_ratio * by_freq.len() as f64).ceil() as usize;
    by_freq
        .into_iter()
        .take(n_stop)
        .map(|(t, _)| t.clone())
        .collect()
}

pub fn build_graph(
    contexts: &ContextSet,
    corpus: &Corpus,
    cfg: &GraphConfig,
) -> Result<CooccurrenceGraph> {
    if contexts.contexts.len() < 2 {
        return Err(Error::TooFewContexts {
            need: 2,
            got: contexts.contexts.len(),
        });
    }
    let stops = stop_terms(corpus, cfg.stop_ratio);
    // distinct terms per context
    let context_terms: Vec<BTreeSet<&String>> = contexts
        .contexts
        .iter()
        .map(|c| c.tokens.iter().collect())
        .collect();
    let mut node_freq: BTreeMap<String, u64> = BTreeMap::new();
    for terms in &context_terms {
        for &t in terms {
            *node_freq.entry(t.clone()).or_insert(0) += 1;
        }
    }
    let nodes: BTreeMap<String, u64> = node_freq
        .into_iter()
        .filter(|(t, f)| {
            *f >= cfg.min_node_freq && t != &contexts.target && !stops.contains(t)
        })
        .collect();
    if nodes.is_empty() {
        return Err(Error::EmptyGraph(format!(
            "{} contexts, min_node_freq={}, stop_ratio={}",
            contexts.contexts.len(),
            cfg.min_node_freq,
            cfg.stop_ratio
        )));
    }
    let mut edges: BTreeMap<(String, String), u64> = BTreeMap::new();
    for terms in &context_terms {
        let kept: Vec<&String> = terms
            .iter()
            .copied()
            .filter(|t| nodes.contains_key(*t))
            .collect();
        for (i, a) in kept.iter().enumerate() {
            for b in &kept[i + 1..] {
                let key = if a < b {
                    ((*a).clone(), (*b).clone())
                } else {
                    ((*b).clone(), (*a).clone())
                };
                *edges.entry(key).or_insert(0) += 1;
            }
        }
    }
    edges.retain(|_, w| *w >= cfg.min_edge_weight);
    Ok(CooccurrenceGraph {
        root: contexts.target.clone(),
        nodes,
        edges,
    })
}

/// One induced sense: a set of graph terms plus the contexts assigned to it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SenseCluster {
    pub id: usize,
    pub label: String,
    pub members: BTreeSet<String>,
    /// Indices into the originating `ContextSet`.
    pub contexts: Vec<usize>,
}

fn components(
    nodes: &BTreeSet<String>,
    edges: &BTreeMap<(String, String), u64>,
) -> Vec<BTreeSet<String>> {
    let mut adjacency: BTreeMap<&String, Vec<&String>> = BTreeMap::new();
    for (a, b) in edges.keys() {
        adjacency.entry(a).or_default().push(b);
        adjacency.entry(b).or_default().push(a);
    }
    let mut seen: BTreeSet<&String> = BTreeSet::new();
    let mut result = Vec::new();
    for start in nodes {
        if seen.contains(start) {
            continue;
        }
        let mut component = BTreeSet::new();
        let mut stack = vec![start];
        while let Some(n) = stack.pop() {
            if !seen.insert(n) {
                continue;
            }
            component.insert(n.clone());
            if let Some(neigh) = adjacency.get(n) {
                for &m in neigh {
                    if !seen.contains(m) && nodes.contains(m) {
                        stack.push(m);
                    }
                }
            }
        }
        result.push(component);
    }
    result
}

/// Partition the graph (root removed) into sense clusters: connected
/// components, then one pass of weak-edge pruning inside each component,
/// then singleton absorption into the cluster they connect to most
/// strongly. Leftover singletons are dropped as noise.
pub fn cluster_graph(graph: &CooccurrenceGraph, cfg: &GraphConfig) -> Vec<SenseCluster> {
    let node_set: BTreeSet<String> = graph.nodes.keys().cloned().collect();
    let mut final_groups: Vec<BTreeSet<String>> = Vec::new();
    let mut singletons: Vec<String> = Vec::new();
    for component in components(&node_set, &graph.edges) {
        if component.len() == 1 {
            singletons.extend(component);
            continue;
        }
        let internal: BTreeMap<(String, String), u64> = graph
            .edges
            .iter()
            .filter(|((a, b), _)| component.contains(a) && component.contains(b))
            .map(|(k, &w)| (k.clone(), w))
            .collect();
        let w_max = internal.values().copied().max().unwrap_or(0);
        let cut = (cfg.split_ratio * w_max as f64).floor() as u64;
        let strong: BTreeMap<(String, String), u64> = internal
            .iter()
            .filter(|(_, &w)| w > cut)
            .map(|(k, &w)| (k.clone(), w))
            .collect();
        for sub in components(&component, &strong) {
            if sub.len() == 1 {
                singletons.extend(sub);
            } else {
                final_groups.push(sub);
            }
        }
    }
    // absorb singletons into the group with the largest total edge weight
    for term in singletons {
        let mut best: Option<(usize, u64)> = None;
        for (gi, group) in final_groups.iter().enumerate() {
            let weight: u64 = group.iter().map(|m| graph.edge(&term, m)).sum();
            if weight > 0 && best.map(|(_, w)| weight > w).unwrap_or(true) {
                best = Some((gi, weight));
            }
        }
        if let Some((gi, _)) = best {
            final_groups[gi].insert(term);
        }
        // no connection anywhere: dropped as noise
    }
    // deterministic order: larger clusters first, then by smallest member
    final_groups.sort_by(|a, b| {
        b.len()
            .cmp(&a.len())
            .then_with(|| a.iter().next().cmp(&b.iter().next()))
    });
    final_groups
        .into_iter()
        .enumerate()
        .map(|(i, members)| {
            let label = pick_label(&members, graph);
            SenseCluster {
                id: i + 1,
                label,
                members,
                contexts: Vec::new(),
            }
        })
        .collect()
}

/// The member with the highest intra-cluster incident edge weight; ties go
/// to the higher context frequency, then the lexicographically smaller term.
pub fn label_cluster(members: &BTreeSet<String>, graph: &CooccurrenceGraph) -> String {
    pick_label(members, graph)
}

fn pick_label(members: &BTreeSet<String>, graph: &CooccurrenceGraph) -> String {
    members
        .iter()
        .map(|m| {
            let weight: u64 = members
                .iter()
                .filter(|o| o.as_str() != m.as_str())
                .map(|o| graph.edge(m, o))
                .sum();
            let freq = graph.nodes.get(m).copied().unwrap_or(0);
            (m, weight, freq)
        })
        .max_by(|a, b| {
            a.1.cmp(&b.1)
                .then(a.2.cmp(&b.2))
                .then_with(|| b.0.cmp(a.0)) // smaller term wins ties
        })
        .map(|(m, _, _)| m.clone())
        .unwrap_or_default()
}

/// Assign each context to the cluster sharing the most distinct terms with
/// it; no overlap anywhere means unassigned. Ties go to the lower cluster id.
pub fn assign_contexts(
    contexts: &ContextSet,
    clusters: &[SenseCluster],
) -> Vec<Option<usize>> {
    contexts
        .contexts
        .iter()
        .map(|c| {
            let terms: BTreeSet<&String> = c.tokens.iter().collect();
            let mut best: Option<(usize, usize)> = None; // (cluster id, overlap)
            for cluster in clusters {
                let overlap = terms
                    .iter()
                    .filter(|t| cluster.members.contains(t.as_str()))
                    .count();
                if overlap > 0 && best.map(|(_, o)| overlap > o).unwrap_or(true) {
                    best = Some((cluster.id, overlap));
                }
            }
            best.map(|(id, _)| id)
        })
        .collect()
}

/// Full pipeline: contexts, graph, clusters with their contexts filled in,
/// and the per-context assignment.
pub struct SenseInduction {
    pub contexts: ContextSet,
    pub graph: CooccurrenceGraph,
    pub clusters: Vec<SenseCluster>,
    pub assignments: Vec<Option<usize>>,
}

pub fn induce_senses(
    corpus: &Corpus,
    form: &str,
    width: usize,
    cfg: &GraphConfig,
) -> Result<SenseInduction> {
    let contexts = extract_contexts(corpus, form, width)?;
    let graph = build_graph(&contexts, corpus, cfg)?;
    let mut clusters = cluster_graph(&graph, cfg);
    let assignments = assign_contexts(&contexts, &clusters);
    for (ci, assigned) in assignments.iter().enumerate() {
        if let Some(id) = assigned {
            if let Some(cluster) = clusters.iter_mut().find(|c| c.id == *id) {
                cluster.contexts.push(ci);
            }
        }
    }
    Ok(SenseInduction {
        contexts,
        graph,
        clusters,
        assignments,
    })
}
