//! Indexed power-sum monomials of bounded degree with a multiplication table.

use std::collections::HashMap;

use symkit::{enumerate_partitions, Partition};

const NONE: u32 = u32::MAX;

/// All partitions of degree at most `max_degree`, ordered by degree and then
/// lexicographically, together with the table of products `p_a p_b = p_c`.
#[derive(Debug)]
pub struct PartitionBasis {
    max_degree: usize,
    parts: Vec<Partition>,
    degrees: Vec<usize>,
    index: HashMap<Partition, usize>,
    table: Vec<u32>,
}

impl PartitionBasis {
    pub fn new(max_degree: usize) -> Self {
        let mut parts = Vec::new();
        for n in 0..=max_degree {
            let mut level = enumerate_partitions(n);
            level.sort();
            parts.extend(level);
        }
        let degrees: Vec<usize> = parts.iter().map(Partition::size).collect();
        let index: HashMap<Partition, usize> = parts
            .iter()
            .enumerate()
            .map(|(i, p)| (p.clone(), i))
            .collect();
        let len = parts.len();
        let mut table = vec![NONE; len * len];
        for a in 0..len {
            for b in 0..len {
                if degrees[a] + degrees[b] <= max_degree {
                    let c = index[&parts[a].union(&parts[b])];
                    table[a * len + b] = c as u32;
                }
            }
        }
        PartitionBasis {
            max_degree,
            parts,
            degrees,
            index,
            table,
        }
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn partition(&self, i: usize) -> &Partition {
        &self.parts[i]
    }

    pub fn degree(&self, i: usize) -> usize {
        self.degrees[i]
    }

    pub fn index_of(&self, mu: &Partition) -> Option<usize> {
        self.index.get(mu).copied()
    }

    /// Index of `p_a p_b`, or `None` when its degree exceeds the cap.
    #[inline]
    pub fn product(&self, a: usize, b: usize) -> Option<usize> {
        let c = self.table[a * self.parts.len() + b];
        (c != NONE).then_some(c as usize)
    }
}
