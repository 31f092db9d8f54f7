//! Process-wide memo tables.
//!
//! Each table is a `spin::RwLock<BTreeMap>`: lookups take a shared lock,
//! inserts an exclusive one. Two threads racing on the same key may both
//! compute it; they store identical canonical values, so either wins.

use alloc::collections::BTreeMap;
use core::sync::atomic::{AtomicU64, Ordering};

use spin::RwLock;

pub struct Memo<K, V> {
    map: RwLock<BTreeMap<K, V>>,
}

static HITS: AtomicU64 = AtomicU64::new(0);
static MISSES: AtomicU64 = AtomicU64::new(0);

impl<K: Ord, V: Clone> Memo<K, V> {
    pub const fn new() -> Self {
        Memo { map: RwLock::new(BTreeMap::new()) }
    }

    pub fn get(&self, key: &K) -> Option<V> {
        let v = self.map.read().get(key).cloned();
        if v.is_some() {
            HITS.fetch_add(1, Ordering::Relaxed);
        } else {
            MISSES.fetch_add(1, Ordering::Relaxed);
        }
        v
    }

    pub fn insert(&self, key: K, value: V) {
        self.map.write().insert(key, value);
    }

    pub fn get_or_insert_with<F: FnOnce() -> V>(&self, key: K, f: F) -> V {
        if let Some(v) = self.get(&key) {
            return v;
        }
        let v = f();
        self.insert(key, v.clone());
        v
    }

    pub fn get_or_try_insert_with<E, F: FnOnce() -> Result<V, E>>(&self, key: K, f: F) -> Result<V, E> {
        if let Some(v) = self.get(&key) {
            return Ok(v);
        }
        let v = f()?;
        self.insert(key, v.clone());
        Ok(v)
    }

    pub fn clear(&self) {
        self.map.write().clear();
    }

    pub fn len(&self) -> usize {
        self.map.read().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

impl<K: Ord, V: Clone> Default for Memo<K, V> {
    fn default() -> Self {
        Self::new()
    }
}

/// Cumulative lookup counters across every memo table.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct CacheStats {
    pub hits: u64,
    pub misses: u64,
}

pub fn cache_stats() -> CacheStats {
    CacheStats { hits: HITS.load(Ordering::Relaxed), misses: MISSES.load(Ordering::Relaxed) }
}

/// Empty every memo table (characters, Weingarten values, orthogonal systems).
pub fn clear_caches() {
    crate::combinatorics::clear_caches();
    crate::weingarten::clear_caches();
}
