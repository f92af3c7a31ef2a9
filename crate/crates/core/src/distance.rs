//! Distances between labellings of the same framework.

use crate::af::{ArgumentationFramework, Label, Labelling};
use crate::error::{Error, Result};

/// Non-negative distance between two labellings.
pub type DistanceValue = u64;

/// Per-argument cost of every label change, `cost[arg][from][to]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightTable {
    costs: Vec<[[u64; 3]; 3]>,
}

impl WeightTable {
    fn hamming_row() -> [[u64; 3]; 3] {
        let mut row = [[1; 3]; 3];
        for (i, r) in row.iter_mut().enumerate() {
            r[i] = 0;
        }
        row
    }

    /// The table equivalent to Hamming distance over `len` arguments.
    pub fn hamming(len: usize) -> Self {
        WeightTable {
            costs: vec![Self::hamming_row(); len],
        }
    }

    /// Builds a table from explicit rows. Every diagonal entry must be 0.
    pub fn from_rows(costs: Vec<[[u64; 3]; 3]>) -> Result<Self> {
        for (arg, row) in costs.iter().enumerate() {
            for label in Label::ALL {
                if row[label.index()][label.index()] != 0 {
                    return Err(Error::InvalidArgument(format!(
                        "weight for argument #{arg} keeping label {label} must be 0"
                    )));
                }
            }
        }
        Ok(WeightTable { costs })
    }

    /// Starts from Hamming costs and overrides the given
    /// `(argument, from, to, weight)` entries.
    pub fn from_entries<I>(len: usize, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, Label, Label, u64)>,
    {
        let mut costs = vec![Self::hamming_row(); len];
        for (arg, from, to, weight) in entries {
            let row = costs.get_mut(arg).ok_or_else(|| {
                Error::InvalidArgument(format!("argument #{arg} does not belong to the framework"))
            })?;
            if from == to && weight != 0 {
                return Err(Error::InvalidArgument(format!(
                    "weight for argument #{arg} keeping label {from} must be 0, got {weight}"
                )));
            }
            row[from.index()][to.index()] = weight;
        }
        Ok(WeightTable { costs })
    }

    pub fn len(&self) -> usize {
        self.costs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.costs.is_empty()
    }

    pub fn weight(&self, arg: usize, from: Label, to: Label) -> u64 {
        self.costs[arg][from.index()][to.index()]
    }

    /// `(argument, from, to)` triples with a zero off-diagonal cost.
    pub fn zero_changes(&self) -> Vec<(usize, Label, Label)> {
        let mut zeros = Vec::new();
        for (arg, row) in self.costs.iter().enumerate() {
            for from in Label::ALL {
                for to in Label::ALL {
                    if from != to && row[from.index()][to.index()] == 0 {
                        zeros.push((arg, from, to));
                    }
                }
            }
        }
        zeros
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub enum DistanceMeasure {
    /// Number of arguments with a different label.
    #[default]
    Hamming,
    /// Sum of per-argument label-change costs.
    Weighted(WeightTable),
}

impl DistanceMeasure {
    pub fn check(&self, af: &ArgumentationFramework) -> Result<()> {
        match self {
            DistanceMeasure::Hamming => Ok(()),
            DistanceMeasure::Weighted(t) if t.len() == af.len() => Ok(()),
            DistanceMeasure::Weighted(t) => Err(Error::IncompleteWeightTable(format!(
                "table covers {} arguments, framework has {}",
                t.len(),
                af.len()
            ))),
        }
    }
}

/// Distance between two labellings of the same framework.
pub fn distance(m: &DistanceMeasure, l1: &Labelling, l2: &Labelling) -> Result<DistanceValue> {
    if l1.len() != l2.len() {
        return Err(Error::FrameworkMismatch {
            expected: l1.len(),
            found: l2.len(),
        });
    }
    let pairs = l1.labels().iter().zip(l2.labels());
    match m {
        DistanceMeasure::Hamming => Ok(pairs.filter(|(a, b)| a != b).count() as u64),
        DistanceMeasure::Weighted(table) => {
            if table.len() != l1.len() {
                return Err(Error::IncompleteWeightTable(format!(
                    "table covers {} arguments, labellings have {}",
                    table.len(),
                    l1.len()
                )));
            }
            Ok(pairs
                .enumerate()
                .map(|(arg, (&a, &b))| table.weight(arg, a, b))
                .sum())
        }
    }
}

/// Changes between two decided labels cost 2, changes involving `und`
/// cost 1.
pub fn double_weight_measure(af: &ArgumentationFramework) -> DistanceMeasure {
    let mut row = [[0u64; 3]; 3];
    for from in Label::ALL {
        for to in Label::ALL {
            row[from.index()][to.index()] = if from == to {
                0
            } else if from == Label::Und || to == Label::Und {
                1
            } else {
                2
            };
        }
    }
    DistanceMeasure::Weighted(WeightTable { costs: vec![row; af.len()] })
}
