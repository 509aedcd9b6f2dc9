//! Finite sets of arc classes with their intersection matrix.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{domain, input, Result};
use crate::geometry::intersection_number;
use crate::model::{ArcClass, Surface};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArcSystem {
    surface: Surface,
    classes: Vec<ArcClass>,
    matrix: Vec<Vec<usize>>,
}

impl ArcSystem {
    /// Computes all pairwise intersection numbers. Classes must share the
    /// surface and be realizable; repeated classes are kept so that
    /// verification can report them.
    pub fn new(surface: Surface, classes: Vec<ArcClass>) -> Result<ArcSystem> {
        for c in &classes {
            if c.surface() != surface {
                return input(format!("class {c} lives on {} punctures, expected {}", c.surface().n(), surface.n()));
            }
            if !c.is_realizable() {
                return domain(format!("class {c} has no simple representative"));
            }
        }
        let m = classes.len();
        let upper: Vec<Vec<usize>> = (0..m)
            .into_par_iter()
            .map(|i| {
                (i + 1..m)
                    .map(|j| intersection_number(&classes[i], &classes[j]).expect("checked classes"))
                    .collect()
            })
            .collect();
        let mut matrix = vec![vec![0; m]; m];
        for i in 0..m {
            for (d, &x) in upper[i].iter().enumerate() {
                matrix[i][i + 1 + d] = x;
                matrix[i + 1 + d][i] = x;
            }
        }
        Ok(ArcSystem { surface, classes, matrix })
    }

    /// Builds a system from a precomputed matrix (rows indexed like `classes`).
    pub(crate) fn with_matrix(surface: Surface, classes: Vec<ArcClass>, matrix: Vec<Vec<usize>>) -> ArcSystem {
        ArcSystem { surface, classes, matrix }
    }

    pub fn surface(&self) -> Surface {
        self.surface
    }

    pub fn classes(&self) -> &[ArcClass] {
        &self.classes
    }

    pub fn matrix(&self) -> &[Vec<usize>] {
        &self.matrix
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn intersection(&self, i: usize, j: usize) -> usize {
        self.matrix[i][j]
    }

    pub fn max_intersection(&self) -> usize {
        self.matrix.iter().flatten().copied().max().unwrap_or(0)
    }

    pub fn to_document(&self) -> SystemDocument {
        SystemDocument { n: self.surface.n(), arcs: self.classes.clone() }
    }

    pub fn from_document(doc: SystemDocument) -> Result<ArcSystem> {
        let surface = Surface::new(doc.n)?;
        ArcSystem::new(surface, doc.arcs)
    }
}

/// Text form of a system: `{"n": 5, "arcs": [{"n":5,"side":"U","seq":[2,0,3]}, ...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SystemDocument {
    pub n: usize,
    pub arcs: Vec<ArcClass>,
}
