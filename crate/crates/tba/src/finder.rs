//! Exhaustive enumeration of all algebras satisfying the axioms on a small
//! carrier, with unit propagation on the middle-nesting axiom and optional
//! isomorphism deduplication.
//!
//! The carrier is `0..n` with the constants pinned at indices 0 and 1. Three
//! of the four axioms fix cells outright and are applied up front; the
//! remaining axiom acts as the propagated constraint during the
//! depth-first search over the free cells.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use thiserror::Error;

use crate::classify::{classify, ClassificationReport};
use crate::laws::axiom_suite;
use crate::model::{canonical_names, PointedTernaryAlgebra};

#[derive(Debug, Error)]
pub enum FinderError {
    #[error("carrier size {0} is below the minimum of 2")]
    TooSmall(usize),
    #[error("carrier size {n} exceeds the configured maximum {max}")]
    OverLimit { n: usize, max: usize },
    #[error("search budget exceeded after {} nodes", stats.nodes)]
    BudgetExceeded { stats: SearchStats },
    #[error("iso_classes requires models of equal size")]
    SizeMismatch,
}

#[derive(Debug, Clone)]
pub struct SearchOptions {
    pub up_to_iso: bool,
    pub classify_each: bool,
    /// Largest permitted carrier; enumeration cost grows steeply with size.
    pub max_size: usize,
    pub max_nodes: Option<u64>,
    pub time_budget: Option<Duration>,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            up_to_iso: false,
            classify_each: false,
            max_size: 5,
            max_nodes: None,
            time_budget: None,
        }
    }
}

/// Deterministic search counters (wall time excluded).
#[derive(Debug, Clone, Copy, Default)]
pub struct SearchStats {
    pub nodes: u64,
    pub propagated: u64,
    pub conflicts: u64,
    pub solutions_raw: u64,
}

#[derive(Debug, Clone)]
pub struct EnumerationResult {
    pub size: usize,
    /// Number of distinct tables satisfying the axioms with the constants
    /// pinned at indices 0 and 1.
    pub raw_count: u64,
    /// With `up_to_iso`: one canonical representative per isomorphism
    /// class, in lexicographic table order. Otherwise all raw models in
    /// lexicographic table order.
    pub models: Vec<PointedTernaryAlgebra>,
    /// Classification reports aligned with `models` when requested.
    pub classifications: Option<Vec<ClassificationReport>>,
    pub stats: SearchStats,
    pub elapsed: Duration,
}

/// Partial table during search: `None` cells are still free.
#[derive(Debug, Clone)]
pub struct SearchState {
    n: usize,
    cells: Vec<Option<usize>>,
}

impl SearchState {
    #[inline]
    fn index(&self, a: usize, b: usize, c: usize) -> usize {
        (a * self.n + b) * self.n + c
    }

    #[inline]
    fn get(&self, a: usize, b: usize, c: usize) -> Option<usize> {
        self.cells[self.index(a, b, c)]
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn free_cell_count(&self) -> usize {
        self.cells.iter().filter(|c| c.is_none()).count()
    }

    fn free_cells(&self) -> Vec<usize> {
        (0..self.cells.len())
            .filter(|&i| self.cells[i].is_none())
            .collect()
    }

    fn into_model(self) -> PointedTernaryAlgebra {
        let table: Vec<usize> = self
            .cells
            .into_iter()
            .map(|c| c.expect("complete table"))
            .collect();
        PointedTernaryAlgebra::new(canonical_names(self.n), 0, 1, table)
            .expect("search states are well-formed")
    }
}

/// Seeds the table with every cell forced directly by an axiom: middle 0
/// selects the left argument, middle 1 the right, diagonal triples return
/// their endpoint, and `p(0,m,1) = m`. The rest stay free.
pub fn preassign(n: usize) -> Result<SearchState, FinderError> {
    if n < 2 {
        return Err(FinderError::TooSmall(n));
    }
    let mut cells = vec![None; n * n * n];
    let index = |a: usize, b: usize, c: usize| (a * n + b) * n + c;
    for a in 0..n {
        for c in 0..n {
            cells[index(a, 0, c)] = Some(a);
            cells[index(a, 1, c)] = Some(c);
        }
    }
    for b in 0..n {
        for a in 0..n {
            cells[index(a, b, a)] = Some(a);
        }
        cells[index(0, b, 1)] = Some(b);
    }
    Ok(SearchState { n, cells })
}

struct Conflict;

/// Runs the middle-nesting constraint to a fixpoint: every instance with
/// both sides determined is checked, and an instance determined up to
/// exactly its final lookup forces that cell.
fn propagate(st: &mut SearchState, stats: &mut SearchStats) -> Result<(), Conflict> {
    let n = st.n;
    loop {
        let mut changed = false;
        for a in 0..n {
            for b1 in 0..n {
                for b2 in 0..n {
                    for b3 in 0..n {
                        for c in 0..n {
                            let inner = st.get(b1, b2, b3);
                            let left = st.get(a, b1, c);
                            let right = st.get(a, b3, c);
                            let lhs = inner.and_then(|m| st.get(a, m, c));
                            let rhs = match (left, right) {
                                (Some(u), Some(w)) => st.get(u, b2, w),
                                _ => None,
                            };
                            match (lhs, rhs) {
                                (Some(l), Some(r)) => {
                                    if l != r {
                                        stats.conflicts += 1;
                                        return Err(Conflict);
                                    }
                                }
                                (Some(l), None) => {
                                    if let (Some(u), Some(w)) = (left, right) {
                                        let i = st.index(u, b2, w);
                                        st.cells[i] = Some(l);
                                        stats.propagated += 1;
                                        changed = true;
                                    }
                                }
                                (None, Some(r)) => {
                                    if let Some(m) = inner {
                                        let i = st.index(a, m, c);
                                        st.cells[i] = Some(r);
                                        stats.propagated += 1;
                                        changed = true;
                                    }
                                }
                                (None, None) => {}
                            }
                        }
                    }
                }
            }
        }
        if !changed {
            return Ok(());
        }
    }
}

struct SearchContext<'a> {
    options: &'a SearchOptions,
    started: Instant,
    stats: SearchStats,
    solutions: Vec<PointedTernaryAlgebra>,
}

impl SearchContext<'_> {
    fn check_budget(&self) -> Result<(), FinderError> {
        if let Some(max) = self.options.max_nodes {
            if self.stats.nodes > max {
                return Err(FinderError::BudgetExceeded { stats: self.stats });
            }
        }
        if let Some(budget) = self.options.time_budget {
            if self.started.elapsed() > budget {
                return Err(FinderError::BudgetExceeded { stats: self.stats });
            }
        }
        Ok(())
    }
}

fn dfs(st: &SearchState, ctx: &mut SearchContext) -> Result<(), FinderError> {
    ctx.stats.nodes += 1;
    ctx.check_budget()?;

    let free = st.free_cells();
    if free.is_empty() {
        let model = st.clone().into_model();
        // safety net: completed tables are re-verified against all axioms
        if axiom_suite(&model).all_passed() {
            ctx.stats.solutions_raw += 1;
            ctx.solutions.push(model);
        }
        return Ok(());
    }

    // most-constrained-cell-first: fewest surviving values wins, ties going
    // to the lexicographically first cell
    let mut best: Option<(usize, Vec<SearchState>)> = None;
    for &cell in &free {
        let mut children = Vec::new();
        for value in 0..st.n {
            let mut child = st.clone();
            child.cells[cell] = Some(value);
            if propagate(&mut child, &mut ctx.stats).is_ok() {
                children.push(child);
            }
        }
        if children.is_empty() {
            return Ok(());
        }
        let better = best
            .as_ref()
            .is_none_or(|(count, _)| children.len() < *count);
        if better {
            let count = children.len();
            best = Some((count, children));
            if count == 1 {
                break;
            }
        }
    }
    let (_, children) = best.expect("free cells imply at least one candidate");
    for child in children {
        dfs(&child, ctx)?;
    }
    Ok(())
}

/// Enumerates every table satisfying the axioms on a carrier of size `n`
/// with the constants at indices 0 and 1, depth-first with unit propagation,
/// optionally deduplicated up to constant-fixing isomorphism.
pub fn enumerate(n: usize, options: &SearchOptions) -> Result<EnumerationResult, FinderError> {
    if n > options.max_size {
        return Err(FinderError::OverLimit {
            n,
            max: options.max_size,
        });
    }
    let started = Instant::now();
    let mut ctx = SearchContext {
        options,
        started,
        stats: SearchStats::default(),
        solutions: Vec::new(),
    };
    let mut root = preassign(n)?;
    if propagate(&mut root, &mut ctx.stats).is_ok() {
        dfs(&root, &mut ctx)?;
    }

    let mut models: Vec<PointedTernaryAlgebra>;
    if options.up_to_iso {
        let mut classes: BTreeMap<Vec<usize>, PointedTernaryAlgebra> = BTreeMap::new();
        for m in &ctx.solutions {
            let canonical = m.canonical_form();
            classes.entry(canonical.table().to_vec()).or_insert(canonical);
        }
        models = classes.into_values().collect();
    } else {
        models = ctx.solutions.clone();
        models.sort_by(|a, b| a.table().cmp(b.table()));
    }
    let classifications = options
        .classify_each
        .then(|| models.iter().map(classify).collect());

    Ok(EnumerationResult {
        size: n,
        raw_count: ctx.stats.solutions_raw,
        models,
        classifications,
        stats: ctx.stats,
        elapsed: started.elapsed(),
    })
}

/// One isomorphism class: its canonical representative plus the indices of
/// the input models belonging to it.
#[derive(Debug, Clone)]
pub struct IsoClass {
    pub canonical: PointedTernaryAlgebra,
    pub members: Vec<usize>,
}

/// Partitions models of equal size into isomorphism classes by canonical
/// form, ordered by canonical table.
pub fn iso_classes(models: &[PointedTernaryAlgebra]) -> Result<Vec<IsoClass>, FinderError> {
    if let Some(first) = models.first() {
        if models.iter().any(|m| m.size() != first.size()) {
            return Err(FinderError::SizeMismatch);
        }
    }
    let mut classes: BTreeMap<Vec<usize>, IsoClass> = BTreeMap::new();
    for (i, m) in models.iter().enumerate() {
        let canonical = m.canonical_form();
        classes
            .entry(canonical.table().to_vec())
            .or_insert_with(|| IsoClass {
                canonical,
                members: Vec::new(),
            })
            .members
            .push(i);
    }
    Ok(classes.into_values().collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::catalog_model;
    use crate::model::Relabeling;

    #[test]
    fn preassign_free_cell_counts() {
        assert!(matches!(preassign(1), Err(FinderError::TooSmall(1))));
        assert_eq!(preassign(2).unwrap().free_cell_count(), 0);
        assert_eq!(preassign(3).unwrap().free_cell_count(), 5);
        assert_eq!(preassign(4).unwrap().free_cell_count(), 22);
    }

    #[test]
    fn size_two_has_exactly_one_model() {
        let result = enumerate(2, &SearchOptions::default()).unwrap();
        assert_eq!(result.raw_count, 1);
        assert_eq!(result.models.len(), 1);
        // middle 0 selects the left argument, middle 1 the right
        assert_eq!(result.models[0].table(), &[0, 0, 0, 1, 1, 1, 0, 1]);
    }

    #[test]
    fn size_limit_is_enforced() {
        let options = SearchOptions {
            max_size: 3,
            ..Default::default()
        };
        assert!(matches!(
            enumerate(4, &options),
            Err(FinderError::OverLimit { n: 4, max: 3 })
        ));
    }

    #[test]
    fn node_budget_aborts_the_search() {
        let options = SearchOptions {
            max_nodes: Some(1),
            ..Default::default()
        };
        assert!(matches!(
            enumerate(4, &options),
            Err(FinderError::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn every_emitted_model_passes_the_axioms() {
        for n in 2..=4 {
            let result = enumerate(n, &SearchOptions::default()).unwrap();
            for m in &result.models {
                assert!(axiom_suite(m).all_passed());
            }
        }
    }

    #[test]
    fn raw_solution_set_is_closed_under_relabelings() {
        let result = enumerate(4, &SearchOptions::default()).unwrap();
        let tables: std::collections::BTreeSet<Vec<usize>> = result
            .models
            .iter()
            .map(|m| m.table().to_vec())
            .collect();
        assert_eq!(tables.len() as u64, result.raw_count);
        let swap = Relabeling::transposition(4, 2, 3).unwrap();
        for m in &result.models {
            let relabeled = m.relabel(&swap).unwrap();
            assert!(tables.contains(relabeled.table()));
        }
    }

    #[test]
    fn up_to_iso_counts_are_consistent_with_raw() {
        let raw = enumerate(4, &SearchOptions::default()).unwrap();
        let iso = enumerate(
            4,
            &SearchOptions {
                up_to_iso: true,
                ..Default::default()
            },
        )
        .unwrap();
        assert_eq!(raw.raw_count, iso.raw_count);
        let classes = iso_classes(&raw.models).unwrap();
        assert_eq!(classes.len(), iso.models.len());
        let orbit_total: usize = classes.iter().map(|c| c.members.len()).sum();
        assert_eq!(orbit_total as u64, raw.raw_count);
        // with two non-constant elements every orbit has size 1 or 2
        assert!(classes.iter().all(|c| c.members.len() <= 2));
    }

    #[test]
    fn enumeration_contains_the_catalog_four_element_models() {
        let result = enumerate(
            4,
            &SearchOptions {
                up_to_iso: true,
                ..Default::default()
            },
        )
        .unwrap();
        for name in ["gf2^2", "gf4", "dualnum2", "n4paper"] {
            let canonical = catalog_model(name).unwrap().canonical_form();
            assert!(
                result.models.iter().any(|m| m == &canonical),
                "{name} missing from enumeration"
            );
        }
    }

    #[test]
    fn iso_classes_edge_cases() {
        assert!(iso_classes(&[]).unwrap().is_empty());

        let n4 = catalog_model("n4paper").unwrap();
        let swap = Relabeling::transposition(4, 1, 2).unwrap();
        let relabeled = n4.relabel(&swap).unwrap();
        let classes = iso_classes(&[n4.clone(), relabeled]).unwrap();
        assert_eq!(classes.len(), 1);
        assert_eq!(classes[0].members, vec![0, 1]);

        let gf4 = catalog_model("gf4").unwrap();
        let dn = catalog_model("dualnum2").unwrap();
        assert_eq!(iso_classes(&[gf4, dn]).unwrap().len(), 2);

        let gf2 = catalog_model("gf2").unwrap();
        assert!(matches!(
            iso_classes(&[n4, gf2]),
            Err(FinderError::SizeMismatch)
        ));
    }
}
