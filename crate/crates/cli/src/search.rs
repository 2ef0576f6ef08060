//! Exhaustive search for left Bol loops of small order.
//!
//! Tables are filled one row (left translation) at a time. After every
//! assignment the Bol relation `L(a·(b·a)) = L(a)L(b)L(a)` and the left
//! inverse property `L(a⁻¹) = L(a)⁻¹` are propagated: they force whole rows,
//! so most of the tree is cut before it is entered. Each complete table is
//! reduced to a canonical form and the distinct forms are returned.

use std::collections::BTreeSet;
use std::time::Instant;

use bolkit_core::loopcore::left_bol_counterexample;
use bolkit_core::FiniteLoop;

use crate::error::CliError;

/// Largest order the search accepts; rows are stored as bit masks.
pub const MAX_ORDER: usize = 12;

#[derive(Clone, Debug)]
pub struct SearchOutcome {
    pub order: usize,
    /// Complete normalized tables visited, before isomorphism reduction.
    pub tables: usize,
    /// One canonical representative per isomorphism class, sorted by table.
    pub classes: Vec<FiniteLoop>,
}

impl SearchOutcome {
    pub fn nonassociative(&self) -> impl Iterator<Item = &FiniteLoop> {
        self.classes.iter().filter(|l| !l.is_associative())
    }
}

type Row = Vec<usize>;

struct Search {
    n: usize,
    deadline: Option<Instant>,
    timeout_secs: u64,
    steps: u64,
    tables: usize,
    found: BTreeSet<Vec<usize>>,
}

#[derive(Clone)]
struct State {
    rows: Vec<Option<Row>>,
    /// Values already used in each column.
    columns: Vec<u64>,
}

impl State {
    fn fits(&self, row: &Row) -> bool {
        row.iter().enumerate().all(|(j, &v)| self.columns[j] & (1 << v) == 0)
    }

    fn place(&mut self, x: usize, row: Row) {
        for (j, &v) in row.iter().enumerate() {
            self.columns[j] |= 1 << v;
        }
        self.rows[x] = Some(row);
    }

    /// Assigns `row` to `x`, or checks agreement if `x` already has a row.
    fn require(&mut self, x: usize, row: Row, changed: &mut bool) -> bool {
        match &self.rows[x] {
            Some(existing) => *existing == row,
            None => {
                if !self.fits(&row) {
                    return false;
                }
                self.place(x, row);
                *changed = true;
                true
            }
        }
    }

    /// Closes the assignment under the Bol relation and the left inverse
    /// property. False on contradiction.
    fn propagate(&mut self) -> bool {
        let n = self.rows.len();
        loop {
            let mut changed = false;
            for a in 0..n {
                let Some(ra) = self.rows[a].clone() else { continue };
                if let Some(inv) = ra.iter().position(|&v| v == 0) {
                    let mut inverse = vec![0; n];
                    for (u, &v) in ra.iter().enumerate() {
                        inverse[v] = u;
                    }
                    if !self.require(inv, inverse, &mut changed) {
                        return false;
                    }
                }
                for b in 0..n {
                    let Some(rb) = self.rows[b].clone() else { continue };
                    let c = ra[rb[a]];
                    let composed: Row = (0..n).map(|u| ra[rb[ra[u]]]).collect();
                    if !self.require(c, composed, &mut changed) {
                        return false;
                    }
                }
            }
            if !changed {
                return true;
            }
        }
    }
}

impl Search {
    fn tick(&mut self) -> Result<(), CliError> {
        self.steps += 1;
        if self.steps.is_multiple_of(4096) {
            if let Some(deadline) = self.deadline {
                if Instant::now() > deadline {
                    return Err(CliError::Timeout(self.timeout_secs));
                }
            }
        }
        Ok(())
    }

    fn descend(&mut self, state: State) -> Result<(), CliError> {
        self.tick()?;
        let Some(x) = state.rows.iter().position(Option::is_none) else {
            self.record(&state);
            return Ok(());
        };
        let mut row = vec![0; self.n];
        row[0] = x;
        self.fill_row(&state, x, 1, 1 << x, &mut row)
    }

    /// Enumerates rows for `x` column by column; `used` holds the values
    /// already placed in this row.
    fn fill_row(
        &mut self,
        state: &State,
        x: usize,
        j: usize,
        used: u64,
        row: &mut Row,
    ) -> Result<(), CliError> {
        if j == self.n {
            let mut next = state.clone();
            next.place(x, row.clone());
            if next.propagate() {
                self.descend(next)?;
            }
            return Ok(());
        }
        let free = !used & !state.columns[j] & ((1u64 << self.n) - 1);
        for v in 0..self.n {
            if free & (1 << v) != 0 {
                row[j] = v;
                self.fill_row(state, x, j + 1, used | (1 << v), row)?;
            }
        }
        Ok(())
    }

    fn record(&mut self, state: &State) {
        let table: Vec<usize> = state.rows.iter().flat_map(|r| r.clone().expect("complete")).collect();
        self.tables += 1;
        let l = FiniteLoop::from_table(self.n, table).expect("search keeps rows and columns Latin");
        self.found.insert(canonical_table(&l));
    }
}

/// All left Bol loops of order `n` up to isomorphism. Every representative
/// is re-checked with the direct `n³` scan.
pub fn exhaustive_bol(n: usize, timeout_secs: Option<u64>) -> Result<SearchOutcome, CliError> {
    if n == 0 || n > MAX_ORDER {
        return Err(CliError::Spec(format!("exhaustive search supports orders 1..={MAX_ORDER}, got {n}")));
    }
    let mut search = Search {
        n,
        deadline: timeout_secs.map(|s| Instant::now() + std::time::Duration::from_secs(s)),
        timeout_secs: timeout_secs.unwrap_or(0),
        steps: 0,
        tables: 0,
        found: BTreeSet::new(),
    };
    let mut state = State { rows: vec![None; n], columns: vec![0; n] };
    state.place(0, (0..n).collect());
    if state.propagate() {
        search.descend(state)?;
    }
    let classes = search
        .found
        .into_iter()
        .map(|t| FiniteLoop::from_table(n, t).expect("canonical tables are loops"))
        .collect::<Vec<_>>();
    for l in &classes {
        if let Some((x, y, z)) = left_bol_counterexample(l) {
            return Err(CliError::Spec(format!(
                "search produced a non-Bol table (x, y, z) = ({x}, {y}, {z})"
            )));
        }
    }
    Ok(SearchOutcome { order: n, tables: search.tables, classes })
}

/// Lexicographically least relabeled table over the labelings produced by
/// closing generator sequences breadth-first. The family of labelings is
/// defined by the multiplication alone, so isomorphic loops get equal
/// forms.
pub fn canonical_table(l: &FiniteLoop) -> Vec<usize> {
    let n = l.order();
    let mut best: Option<Vec<usize>> = None;
    let mut labels = vec![0];
    let mut label_of = vec![usize::MAX; n];
    label_of[0] = 0;
    extend_labeling(l, &mut labels, &mut label_of, &mut best);
    best.expect("at least one labeling")
}

fn close(l: &FiniteLoop, labels: &mut Vec<usize>, label_of: &mut [usize]) {
    loop {
        let len = labels.len();
        for i in 0..len {
            for j in 0..len {
                let p = l.mul(labels[i], labels[j]);
                if label_of[p] == usize::MAX {
                    label_of[p] = labels.len();
                    labels.push(p);
                }
            }
        }
        if labels.len() == len {
            return;
        }
    }
}

fn extend_labeling(
    l: &FiniteLoop,
    labels: &mut Vec<usize>,
    label_of: &mut [usize],
    best: &mut Option<Vec<usize>>,
) {
    let n = l.order();
    let before = labels.len();
    close(l, labels, label_of);
    let closed = labels.len();
    if closed == n {
        let table: Vec<usize> = (0..n * n).map(|k| label_of[l.mul(labels[k / n], labels[k % n])]).collect();
        if best.as_ref().is_none_or(|b| table < *b) {
            *best = Some(table);
        }
    } else {
        for g in 0..n {
            if label_of[g] == usize::MAX {
                label_of[g] = closed;
                labels.push(g);
                extend_labeling(l, labels, label_of, best);
                truncate(labels, label_of, closed);
            }
        }
    }
    truncate(labels, label_of, before);
}

fn truncate(labels: &mut Vec<usize>, label_of: &mut [usize], len: usize) {
    for &e in &labels[len..] {
        label_of[e] = usize::MAX;
    }
    labels.truncate(len);
}

#[cfg(test)]
mod tests {
    use super::*;
    use bolkit_core::loopcore::check_properties;

    #[test]
    fn canonical_form_is_relabeling_invariant() {
        let z6 = FiniteLoop::cyclic(6);
        let perm = bolkit_core::Permutation::from_images(vec![0, 3, 5, 1, 2, 4]).unwrap();
        let relabeled = z6.relabel(&perm).unwrap();
        assert_ne!(relabeled, z6);
        assert_eq!(canonical_table(&relabeled), canonical_table(&z6));
        let s3 = FiniteLoop::from_rows(&[
            vec![0, 1, 2, 3, 4, 5],
            vec![1, 2, 0, 4, 5, 3],
            vec![2, 0, 1, 5, 3, 4],
            vec![3, 5, 4, 0, 2, 1],
            vec![4, 3, 5, 1, 0, 2],
            vec![5, 4, 3, 2, 1, 0],
        ])
        .unwrap();
        assert!(s3.is_associative());
        assert_ne!(canonical_table(&s3), canonical_table(&z6));
    }

    #[test]
    fn small_orders_are_groups() {
        for (n, classes) in [(1, 1), (2, 1), (3, 1), (4, 2), (5, 1)] {
            let out = exhaustive_bol(n, None).unwrap();
            assert_eq!(out.classes.len(), classes, "order {n}");
            assert!(out.classes.iter().all(|l| check_properties(l).is_group));
        }
    }

    #[test]
    fn order_six_gives_the_two_groups() {
        let out = exhaustive_bol(6, None).unwrap();
        assert_eq!(out.classes.len(), 2);
        assert_eq!(out.nonassociative().count(), 0);
    }

    #[test]
    fn order_eight() {
        let start = Instant::now();
        let out = exhaustive_bol(8, None).unwrap();
        println!("{} tables, {} classes, {:?}", out.tables, out.classes.len(), start.elapsed());
        assert!(out.nonassociative().count() >= 1);
    }
}
