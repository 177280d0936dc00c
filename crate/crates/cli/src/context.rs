use setoperads::closure::{dims_with, ClosureConfig, DimensionTable};
use setoperads::presentations::CatalogEntry;

use crate::cache::DimsCache;

/// Knobs shared by every report.
#[derive(Clone, Debug)]
pub struct Settings {
    /// Highest arity computed by closure.
    pub max_arity: usize,
    /// Highest arity for the exact linear algebra.
    pub linear_arity: usize,
    /// Series order for expressions and graded series.
    pub order: usize,
    /// Extend computed prefixes with printed reference coefficients.
    pub paper_tail: bool,
    pub closure: ClosureConfig,
    pub cache: Option<DimsCache>,
}

impl Default for Settings {
    fn default() -> Self {
        Settings {
            max_arity: 7,
            linear_arity: 6,
            order: setoperads::series::DEFAULT_ORDER,
            paper_tail: true,
            closure: ClosureConfig::default(),
            cache: None,
        }
    }
}

impl Settings {
    /// Closure dimensions of a catalog entry up to `max_arity`.
    pub fn dims(&self, e: &CatalogEntry) -> setoperads::Result<Vec<u64>> {
        self.dims_to(e, self.max_arity)
    }

    pub fn dims_to(&self, e: &CatalogEntry, n: usize) -> setoperads::Result<Vec<u64>> {
        let key = e.congruence.key().to_string();
        if let Some(cached) = self.cache.as_ref().and_then(|c| c.load(&key, e.symmetrize)) {
            if cached.len() >= n {
                return Ok(cached[..n].to_vec());
            }
        }
        let DimensionTable { entries, .. } =
            dims_with(&e.congruence, n, e.symmetrize, &self.closure)?;
        if let Some(c) = &self.cache {
            // a failed write only costs a recomputation later
            let _ = c.store(&key, e.symmetrize, &entries);
        }
        Ok(entries)
    }
}
