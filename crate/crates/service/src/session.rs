//! In-memory session store with LRU eviction, idle expiry and per-session
//! memoization of the expensive computations.

use std::collections::{HashMap, HashSet, VecDeque};
use std::sync::{Arc, Mutex};
use std::time::{Duration, Instant};

use tokio::sync::OnceCell;
use uuid::Uuid;

use arglayer_core::explain::explain_target;
use arglayer_core::grounded::grounded;
use arglayer_core::semantics::enumerate;
use arglayer_core::{
    CancelToken, CandidateMode, Explanation, Framework, GroundedResult, SearchBounds, Semantics,
    SolutionSet,
};

use crate::error::ApiError;

/// How many evicted ids are remembered for answering 410 instead of 404.
const TOMBSTONES: usize = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ExplainKey {
    pub semantics: Semantics,
    pub index: usize,
    pub mode: CandidateMode,
    pub bounds: SearchBounds,
}

#[derive(Default)]
struct Cache {
    grounded: OnceCell<Arc<GroundedResult>>,
    solutions: Mutex<HashMap<Semantics, Arc<OnceCell<Arc<SolutionSet>>>>>,
    explanations: Mutex<HashMap<ExplainKey, Arc<OnceCell<Arc<Explanation>>>>>,
}

/// Cancels the token when the owning future is dropped, e.g. because the
/// client went away.
pub struct CancelOnDrop(pub CancelToken);

impl Drop for CancelOnDrop {
    fn drop(&mut self) {
        self.0.cancel();
    }
}

pub struct Session {
    pub id: Uuid,
    pub framework: Framework,
    pub created_at: Instant,
    cache: Option<Cache>,
}

async fn blocking<T: Send + 'static>(
    f: impl FnOnce() -> T + Send + 'static,
) -> Result<T, ApiError> {
    tokio::task::spawn_blocking(f)
        .await
        .map_err(|e| ApiError::internal(format!("worker failed: {e}")))
}

fn cell<K: std::hash::Hash + Eq, V>(
    map: &Mutex<HashMap<K, Arc<OnceCell<V>>>>,
    key: K,
) -> Arc<OnceCell<V>> {
    map.lock().unwrap().entry(key).or_default().clone()
}

impl Session {
    pub fn new(framework: Framework, cache: bool) -> Self {
        Session {
            id: Uuid::new_v4(),
            framework,
            created_at: Instant::now(),
            cache: cache.then(Cache::default),
        }
    }

    pub async fn grounded(self: &Arc<Self>) -> Result<Arc<GroundedResult>, ApiError> {
        let compute = || {
            let s = self.clone();
            async move { blocking(move || Arc::new(grounded(&s.framework))).await }
        };
        match &self.cache {
            Some(c) => c.grounded.get_or_try_init(compute).await.cloned(),
            None => compute().await,
        }
    }

    pub async fn solutions(
        self: &Arc<Self>,
        semantics: Semantics,
    ) -> Result<Arc<SolutionSet>, ApiError> {
        let compute = || {
            let s = self.clone();
            async move { blocking(move || Arc::new(enumerate(&s.framework, semantics))).await }
        };
        match &self.cache {
            Some(c) => cell(&c.solutions, semantics)
                .get_or_try_init(compute)
                .await
                .cloned(),
            None => compute().await,
        }
    }

    /// Explanation of one solution. Dropping the returned future cancels a
    /// running search; cancelled searches are not cached.
    pub async fn explanation(
        self: &Arc<Self>,
        key: ExplainKey,
    ) -> Result<Arc<Explanation>, ApiError> {
        let compute = || {
            let s = self.clone();
            async move {
                let target = s.solutions(key.semantics).await?.get(key.index)?.clone();
                let base = s.grounded().await?;
                let token = CancelToken::new();
                let _guard = CancelOnDrop(token.clone());
                let result = blocking(move || {
                    explain_target(
                        &s.framework,
                        &base,
                        &target,
                        key.index,
                        key.mode,
                        key.bounds,
                        &token,
                    )
                })
                .await?;
                Ok(Arc::new(result?))
            }
        };
        match &self.cache {
            Some(c) => cell(&c.explanations, key)
                .get_or_try_init(compute)
                .await
                .cloned(),
            None => compute().await,
        }
    }
}

pub enum Lookup {
    Found(Arc<Session>),
    /// Existed once but was evicted or expired.
    Gone,
    Missing,
}

struct Slot {
    session: Arc<Session>,
    last_used: Instant,
    tick: u64,
}

#[derive(Default)]
struct Inner {
    live: HashMap<Uuid, Slot>,
    tombstones: HashSet<Uuid>,
    tombstone_order: VecDeque<Uuid>,
    tick: u64,
}

impl Inner {
    fn bury(&mut self, id: Uuid) {
        self.live.remove(&id);
        if self.tombstones.insert(id) {
            self.tombstone_order.push_back(id);
            if self.tombstone_order.len() > TOMBSTONES {
                let old = self.tombstone_order.pop_front().unwrap();
                self.tombstones.remove(&old);
            }
        }
    }
}

/// Sessions keyed by id. Idle sessions expire after `ttl`; beyond
/// `capacity` the least recently used one is evicted.
pub struct SessionStore {
    capacity: usize,
    ttl: Duration,
    cache: bool,
    inner: Mutex<Inner>,
}

impl SessionStore {
    pub fn new(capacity: usize, ttl: Duration, cache: bool) -> Self {
        SessionStore {
            capacity: capacity.max(1),
            ttl,
            cache,
            inner: Mutex::new(Inner::default()),
        }
    }

    pub fn insert(&self, framework: Framework) -> Arc<Session> {
        let session = Arc::new(Session::new(framework, self.cache));
        let now = Instant::now();
        let mut inner = self.inner.lock().unwrap();
        self.expire(&mut inner, now);
        while inner.live.len() >= self.capacity {
            let lru = *inner
                .live
                .iter()
                .min_by_key(|(_, slot)| slot.tick)
                .map(|(id, _)| id)
                .unwrap();
            inner.bury(lru);
        }
        inner.tick += 1;
        let tick = inner.tick;
        inner.live.insert(
            session.id,
            Slot {
                session: session.clone(),
                last_used: now,
                tick,
            },
        );
        session
    }

    pub fn get(&self, id: &str) -> Lookup {
        let Ok(id) = Uuid::parse_str(id) else {
            return Lookup::Missing;
        };
        let now = Instant::now();
        let mut inner = self.inner.lock().unwrap();
        self.expire(&mut inner, now);
        inner.tick += 1;
        let tick = inner.tick;
        if let Some(slot) = inner.live.get_mut(&id) {
            slot.last_used = now;
            slot.tick = tick;
            return Lookup::Found(slot.session.clone());
        }
        if inner.tombstones.contains(&id) {
            Lookup::Gone
        } else {
            Lookup::Missing
        }
    }

    pub fn len(&self) -> usize {
        self.inner.lock().unwrap().live.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn expire(&self, inner: &mut Inner, now: Instant) {
        let stale: Vec<Uuid> = inner
            .live
            .iter()
            .filter(|(_, slot)| now.duration_since(slot.last_used) > self.ttl)
            .map(|(id, _)| *id)
            .collect();
        for id in stale {
            inner.bury(id);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn af() -> Framework {
        Framework::from_names(["m", "o"], [("m", "o"), ("o", "m")]).unwrap()
    }

    fn found(l: Lookup) -> bool {
        matches!(l, Lookup::Found(_))
    }

    #[test]
    fn least_recently_used_is_evicted() {
        let store = SessionStore::new(2, Duration::from_secs(3600), true);
        let a = store.insert(af()).id.to_string();
        let b = store.insert(af()).id.to_string();
        assert!(found(store.get(&a)));
        let c = store.insert(af()).id.to_string();
        assert!(found(store.get(&a)));
        assert!(matches!(store.get(&b), Lookup::Gone));
        assert!(found(store.get(&c)));
        assert!(matches!(store.get("not-a-uuid"), Lookup::Missing));
        assert!(matches!(
            store.get(&Uuid::new_v4().to_string()),
            Lookup::Missing
        ));
    }

    #[test]
    fn idle_sessions_expire() {
        let store = SessionStore::new(10, Duration::from_millis(20), true);
        let a = store.insert(af()).id.to_string();
        std::thread::sleep(Duration::from_millis(40));
        assert!(matches!(store.get(&a), Lookup::Gone));
        assert!(store.is_empty());
    }

    #[test]
    fn dropping_the_guard_cancels() {
        let token = CancelToken::new();
        drop(CancelOnDrop(token.clone()));
        assert!(token.is_cancelled());
    }

    #[tokio::test]
    async fn cached_and_uncached_sessions_agree() {
        let key = ExplainKey {
            semantics: Semantics::Stable,
            index: 1,
            mode: CandidateMode::Failing,
            bounds: SearchBounds::default(),
        };
        let cached = Arc::new(Session::new(af(), true));
        let plain = Arc::new(Session::new(af(), false));
        assert_eq!(
            cached.explanation(key).await.unwrap(),
            plain.explanation(key).await.unwrap()
        );
        let first = cached.explanation(key).await.unwrap();
        let second = cached.explanation(key).await.unwrap();
        assert!(Arc::ptr_eq(&first, &second));
        assert!(!Arc::ptr_eq(
            &plain.grounded().await.unwrap(),
            &plain.grounded().await.unwrap()
        ));
    }
}
