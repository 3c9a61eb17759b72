//! Random circular arc graphs: construction and structural statistics.
//!
//! Vertex `j` of the graph holds the arc `[θ_{2j}, θ_{2j+1}]` built from
//! consecutive observations (0-based), and two vertices are adjacent when
//! their arcs intersect. Only the degree vector and edge count are stored;
//! with the edge probability at 5/6 an adjacency structure for large `n`
//! would dwarf the degrees without being needed by the tests.

use crate::angle::AngleSeries;
use crate::arc::Arc;
use crate::error::{Error, Result};
use rayon::prelude::*;
use serde::Serialize;

/// Pairwise sweeps shorter than this run sequentially; the parallel path
/// produces identical results (degree counts are exact integers).
const PARALLEL_MIN_VERTICES: usize = 256;

/// A random circular arc graph: arcs, degree vector, edge count.
#[derive(Clone, Debug)]
pub struct Rcag {
    arcs: Vec<Arc>,
    degrees: Vec<u32>,
    edge_count: u64,
}

/// Summary statistics of a graph.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct GraphStats {
    pub edge_count: u64,
    pub min_degree: u32,
    pub max_degree: u32,
    pub connected: bool,
}

impl Rcag {
    /// Builds the graph for a series of even length `m = 2n`, consuming the
    /// observations in their given order.
    pub fn from_series(series: &AngleSeries) -> Result<Rcag> {
        let m = series.len();
        if m % 2 != 0 || m < 4 {
            return Err(Error::invalid(format!(
                "series length must be even and >= 4, got {m}"
            )));
        }
        let arcs: Vec<Arc> = series
            .values()
            .chunks_exact(2)
            .map(|pair| Arc::new(pair[0], pair[1]))
            .collect();
        Ok(Rcag::from_arcs(arcs))
    }

    /// Builds the graph over an explicit arc set.
    pub fn from_arcs(arcs: Vec<Arc>) -> Rcag {
        let n = arcs.len();
        let degree_of = |i: usize| -> u32 {
            let mut d = 0u32;
            for j in 0..n {
                if j != i && arcs[i].intersects(&arcs[j]) {
                    d += 1;
                }
            }
            d
        };
        let degrees: Vec<u32> = if n >= PARALLEL_MIN_VERTICES {
            (0..n).into_par_iter().map(degree_of).collect()
        } else {
            (0..n).map(degree_of).collect()
        };
        let edge_count = degrees.iter().map(|&d| u64::from(d)).sum::<u64>() / 2;
        Rcag {
            arcs,
            degrees,
            edge_count,
        }
    }

    pub fn n(&self) -> usize {
        self.arcs.len()
    }

    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    pub fn degrees(&self) -> &[u32] {
        &self.degrees
    }

    pub fn edge_count(&self) -> u64 {
        self.edge_count
    }

    /// Exact edge count, degree extremes, and connectedness.
    pub fn stats(&self) -> GraphStats {
        GraphStats {
            edge_count: self.edge_count,
            min_degree: self.degrees.iter().copied().min().unwrap_or(0),
            max_degree: self.degrees.iter().copied().max().unwrap_or(0),
            connected: self.is_connected(),
        }
    }

    /// Breadth-first reachability with edges tested on the fly, so no
    /// adjacency structure is ever materialized.
    fn is_connected(&self) -> bool {
        let n = self.arcs.len();
        if n <= 1 {
            return true;
        }
        let mut visited = vec![false; n];
        let mut queue = std::collections::VecDeque::new();
        visited[0] = true;
        queue.push_back(0usize);
        let mut seen = 1usize;
        while let Some(i) = queue.pop_front() {
            for j in 0..n {
                if !visited[j] && self.arcs[i].intersects(&self.arcs[j]) {
                    visited[j] = true;
                    seen += 1;
                    queue.push_back(j);
                }
            }
        }
        seen == n
    }
}
