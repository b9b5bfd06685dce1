//! Successive-shortest-path min-cost flow on the task/machine bipartite
//! graph, exact at desk scale.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::{Error, Result};
use crate::instances::TimeMatrix;

#[derive(PartialEq)]
struct HeapItem {
    dist: f64,
    node: usize,
}

impl Eq for HeapItem {}

impl Ord for HeapItem {
    fn cmp(&self, other: &Self) -> Ordering {
        // min-heap on dist; inputs are validated non-NaN
        other
            .dist
            .partial_cmp(&self.dist)
            .unwrap()
            .then_with(|| other.node.cmp(&self.node))
    }
}

impl PartialOrd for HeapItem {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

struct Network {
    adj: Vec<Vec<usize>>,
    to: Vec<usize>,
    cap: Vec<i64>,
    cost: Vec<f64>,
}

impl Network {
    fn new(nodes: usize) -> Self {
        Network {
            adj: vec![Vec::new(); nodes],
            to: Vec::new(),
            cap: Vec::new(),
            cost: Vec::new(),
        }
    }

    fn add_edge(&mut self, u: usize, v: usize, cap: i64, cost: f64) -> usize {
        let id = self.to.len();
        self.adj[u].push(id);
        self.to.push(v);
        self.cap.push(cap);
        self.cost.push(cost);
        self.adj[v].push(id + 1);
        self.to.push(u);
        self.cap.push(0);
        self.cost.push(-cost);
        id
    }

    /// Push `units` of flow from s to t, one shortest augmenting path at a
    /// time, maintaining Johnson potentials so Dijkstra sees nonnegative
    /// reduced costs. All original edge costs are nonnegative, so the
    /// initial zero potential is valid.
    fn solve(&mut self, s: usize, t: usize, units: usize) -> Option<()> {
        let nodes = self.adj.len();
        let mut potential = vec![0.0f64; nodes];
        for _ in 0..units {
            let mut dist = vec![f64::INFINITY; nodes];
            let mut parent_edge = vec![usize::MAX; nodes];
            dist[s] = 0.0;
            let mut heap = BinaryHeap::new();
            heap.push(HeapItem { dist: 0.0, node: s });
            while let Some(HeapItem { dist: du, node: u }) = heap.pop() {
                if du > dist[u] {
                    continue;
                }
                for &e in &self.adj[u] {
                    if self.cap[e] <= 0 {
                        continue;
                    }
                    let v = self.to[e];
                    let nd = du + self.cost[e] + potential[u] - potential[v];
                    if nd < dist[v] {
                        dist[v] = nd;
                        parent_edge[v] = e;
                        heap.push(HeapItem { dist: nd, node: v });
                    }
                }
            }
            if parent_edge[t] == usize::MAX {
                return None;
            }
            for v in 0..nodes {
                if dist[v].is_finite() {
                    potential[v] += dist[v];
                }
            }
            let mut v = t;
            while v != s {
                let e = parent_edge[v];
                self.cap[e] -= 1;
                self.cap[e ^ 1] += 1;
                v = self.to[e ^ 1];
            }
        }
        Some(())
    }
}

/// Exact minimum-cost assignment of `tasks` (column indices of `t`) to
/// machines with per-machine capacities `caps`. `noise[i * tasks + pos]`,
/// when given, is added to each edge cost before solving; the returned
/// total is always the sum of the original costs.
pub(crate) fn assign_min_cost(
    t: &TimeMatrix,
    tasks: &[usize],
    caps: &[usize],
    noise: Option<&[f64]>,
) -> Result<(Vec<usize>, f64)> {
    let n = t.machines();
    assert_eq!(caps.len(), n);
    let k = tasks.len();
    if k == 0 {
        return Ok((Vec::new(), 0.0));
    }
    let total_cap: usize = caps.iter().sum();
    if total_cap < k {
        return Err(Error::InfeasibleCapacity {
            n,
            m: k,
            cap: caps.iter().copied().max().unwrap_or(0),
        });
    }

    // nodes: source, k task nodes, n machine nodes, sink
    let source = 0;
    let task0 = 1;
    let mach0 = 1 + k;
    let sink = 1 + k + n;
    let mut net = Network::new(sink + 1);
    let mut task_edges = vec![Vec::with_capacity(n); k];
    for (pos, &j) in tasks.iter().enumerate() {
        net.add_edge(source, task0 + pos, 1, 0.0);
        for i in 0..n {
            let c = t.time(i, j);
            if !c.is_finite() {
                return Err(Error::ShapeMismatch(format!(
                    "non-finite cost for machine {i}, task {j}"
                )));
            }
            let c = c + noise.map_or(0.0, |nz| nz[i * k + pos]);
            let e = net.add_edge(task0 + pos, mach0 + i, 1, c);
            task_edges[pos].push(e);
        }
    }
    for (i, &cap) in caps.iter().enumerate() {
        net.add_edge(mach0 + i, sink, cap as i64, 0.0);
    }

    net.solve(source, sink, k).ok_or(Error::InfeasibleCapacity {
        n,
        m: k,
        cap: caps.iter().copied().max().unwrap_or(0),
    })?;

    let mut assignment = vec![usize::MAX; k];
    let mut total = 0.0;
    for (pos, &j) in tasks.iter().enumerate() {
        for (i, &e) in task_edges[pos].iter().enumerate() {
            if net.cap[e] == 0 {
                assignment[pos] = i;
                total += t.time(i, j);
                break;
            }
        }
        debug_assert!(assignment[pos] != usize::MAX);
    }
    Ok((assignment, total))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn matrix(rows: Vec<Vec<f64>>) -> TimeMatrix {
        TimeMatrix::from_rows(rows).unwrap()
    }

    #[test]
    fn unconstrained_reduces_to_column_minima() {
        let t = matrix(vec![vec![1.0, 5.0, 2.0], vec![4.0, 1.0, 3.0]]);
        let (a, total) = assign_min_cost(&t, &[0, 1, 2], &[3, 3], None).unwrap();
        assert_eq!(a, vec![0, 1, 0]);
        assert_relative_eq!(total, 4.0);
    }

    #[test]
    fn capacity_forces_split() {
        let t = matrix(vec![vec![0.0, 0.0], vec![5.0, 5.0]]);
        let (a, total) = assign_min_cost(&t, &[0, 1], &[1, 1], None).unwrap();
        assert_eq!(a.iter().filter(|&&i| i == 0).count(), 1);
        assert_relative_eq!(total, 5.0);
    }

    #[test]
    fn respects_capacities_and_cost() {
        let t = matrix(vec![vec![1.0, 1.0, 1.0, 1.0], vec![2.0, 2.0, 2.0, 2.0]]);
        let (a, total) = assign_min_cost(&t, &[0, 1, 2, 3], &[2, 2], None).unwrap();
        assert_eq!(a.iter().filter(|&&i| i == 0).count(), 2);
        assert_relative_eq!(total, 6.0);
    }

    #[test]
    fn infeasible_capacity_errors() {
        let t = matrix(vec![vec![1.0, 1.0, 1.0], vec![1.0, 1.0, 1.0]]);
        assert!(matches!(
            assign_min_cost(&t, &[0, 1, 2], &[1, 1], None),
            Err(Error::InfeasibleCapacity { .. })
        ));
    }

    #[test]
    fn rerouting_through_residual_edges() {
        // Greedy per-task argmin fails here; the optimum needs a swap.
        let t = matrix(vec![vec![1.0, 2.0], vec![1.1, 10.0]]);
        let (a, total) = assign_min_cost(&t, &[0, 1], &[1, 1], None).unwrap();
        assert_eq!(a, vec![1, 0]);
        assert_relative_eq!(total, 3.1);
    }
}
