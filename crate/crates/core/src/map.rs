//! Set maps between vertex sets.
//!
//! A `VertexMap` is a total function on vertices and is *not* required to
//! preserve edges: vertices of an exponential graph are arbitrary set maps,
//! and only the looped ones are genuine morphisms.

use std::fmt;
use std::sync::Arc;

use crate::graph::Graph;
use crate::{Error, Result};

/// A total map V(source) -> V(target), stored as image indices in source
/// vertex order. Equality is pointwise over that order.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct VertexMap {
    source: Arc<Graph>,
    target: Arc<Graph>,
    images: Vec<usize>,
}

impl fmt::Debug for VertexMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "VertexMap[")?;
        for (v, &img) in self.images.iter().enumerate() {
            if v > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}->{}", self.source.name(v), self.target.name(img))?;
        }
        write!(f, "]")
    }
}

impl fmt::Display for VertexMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (v, &img) in self.images.iter().enumerate() {
            if v > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", self.target.name(img))?;
        }
        Ok(())
    }
}

impl VertexMap {
    pub fn new(
        source: impl Into<Arc<Graph>>,
        target: impl Into<Arc<Graph>>,
        images: Vec<usize>,
    ) -> Result<VertexMap> {
        let source = source.into();
        let target = target.into();
        if images.len() != source.vertex_count() {
            return Err(Error::InvalidMap(format!(
                "expected {} images, got {}",
                source.vertex_count(),
                images.len()
            )));
        }
        if let Some(&bad) = images.iter().find(|&&i| i >= target.vertex_count()) {
            return Err(Error::InvalidMap(format!(
                "image index {bad} out of range for target with {} vertices",
                target.vertex_count()
            )));
        }
        Ok(VertexMap {
            source,
            target,
            images,
        })
    }

    /// Build from (source vertex, image vertex) name pairs. Every source
    /// vertex must be assigned exactly once and every name must be declared.
    pub fn from_pairs(
        source: impl Into<Arc<Graph>>,
        target: impl Into<Arc<Graph>>,
        pairs: &[(&str, &str)],
    ) -> Result<VertexMap> {
        let source = source.into();
        let target = target.into();
        let mut images = vec![usize::MAX; source.vertex_count()];
        for (v, img) in pairs {
            let vi = source
                .index_of(v)
                .ok_or_else(|| Error::InvalidMap(format!("'{v}' is not a source vertex")))?;
            let ii = target
                .index_of(img)
                .ok_or_else(|| Error::InvalidMap(format!("'{img}' is not a target vertex")))?;
            if images[vi] != usize::MAX {
                return Err(Error::InvalidMap(format!("'{v}' assigned twice")));
            }
            images[vi] = ii;
        }
        if let Some(v) = images.iter().position(|&i| i == usize::MAX) {
            return Err(Error::InvalidMap(format!(
                "'{}' has no image",
                source.name(v)
            )));
        }
        Ok(VertexMap {
            source,
            target,
            images,
        })
    }

    pub fn identity(g: impl Into<Arc<Graph>>) -> VertexMap {
        let g = g.into();
        let images = (0..g.vertex_count()).collect();
        VertexMap {
            source: g.clone(),
            target: g,
            images,
        }
    }

    pub fn constant(
        source: impl Into<Arc<Graph>>,
        target: impl Into<Arc<Graph>>,
        image: usize,
    ) -> Result<VertexMap> {
        let source = source.into();
        let n = source.vertex_count();
        VertexMap::new(source, target, vec![image; n])
    }

    pub fn source(&self) -> &Arc<Graph> {
        &self.source
    }

    pub fn target(&self) -> &Arc<Graph> {
        &self.target
    }

    pub fn apply(&self, v: usize) -> usize {
        self.images[v]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn image_name(&self, v: usize) -> &str {
        self.target.name(self.images[v])
    }

    /// True iff every source edge (loops included) maps to a target edge.
    pub fn is_morphism(&self) -> bool {
        self.source
            .edges()
            .all(|(u, v)| self.target.is_adjacent(self.images[u], self.images[v]))
    }

    pub fn is_identity(&self) -> bool {
        self.source == self.target && self.images.iter().enumerate().all(|(v, &i)| v == i)
    }

    /// `then` after `self`: for self: G -> H and then: H -> K this is the
    /// composite G -> K.
    pub fn compose(&self, then: &VertexMap) -> Result<VertexMap> {
        if self.target != then.source {
            return Err(Error::GraphMismatch(
                "compose: target of the first map differs from source of the second".to_string(),
            ));
        }
        Ok(VertexMap {
            source: self.source.clone(),
            target: then.target.clone(),
            images: self.images.iter().map(|&v| then.images[v]).collect(),
        })
    }

    /// The vertices where the two maps disagree.
    pub fn difference(&self, other: &VertexMap) -> Vec<usize> {
        self.images
            .iter()
            .zip(&other.images)
            .enumerate()
            .filter(|(_, (a, b))| a != b)
            .map(|(v, _)| v)
            .collect()
    }

    pub fn same_hom_set(&self, other: &VertexMap) -> bool {
        self.source == other.source && self.target == other.target
    }
}
