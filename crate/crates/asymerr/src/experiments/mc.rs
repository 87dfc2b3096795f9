//! Replicas are cut into fixed chunks. Chunk `k` draws from its own stream
//! seeded with `seed + k`, so results do not depend on the thread count.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::thread;

use asymerr_core::numeric::RandomSource;

/// Replicas per chunk.
pub const CHUNK: u64 = 10_000;

/// Runs `f(rng, count)` once per chunk on all available cores and returns
/// the per-chunk results in chunk order.
pub fn run_chunks<A, F>(seed: u64, replicas: u64, f: F) -> Vec<A>
where
    A: Send,
    F: Fn(&mut RandomSource, u64) -> A + Sync,
{
    let chunks = replicas.div_ceil(CHUNK) as usize;
    let count = |k: usize| CHUNK.min(replicas - k as u64 * CHUNK);
    let workers = thread::available_parallelism().map_or(1, |n| n.get()).min(chunks.max(1));
    let next = AtomicUsize::new(0);
    let slots: Mutex<Vec<Option<A>>> = Mutex::new((0..chunks).map(|_| None).collect());
    thread::scope(|s| {
        for _ in 0..workers {
            s.spawn(|| loop {
                let k = next.fetch_add(1, Ordering::Relaxed);
                if k >= chunks {
                    break;
                }
                let mut rng = RandomSource::new(seed.wrapping_add(k as u64));
                let a = f(&mut rng, count(k));
                slots.lock().unwrap()[k] = Some(a);
            });
        }
    });
    slots.into_inner().unwrap().into_iter().map(|a| a.expect("every chunk ran")).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chunk_sizes_and_order() {
        let out = run_chunks(9, 25_000, |rng, n| (n, rng.next_uniform()));
        assert_eq!(out.iter().map(|x| x.0).collect::<Vec<_>>(), vec![10_000, 10_000, 5_000]);
        let again = run_chunks(9, 25_000, |rng, n| (n, rng.next_uniform()));
        assert_eq!(out, again);
        assert_eq!(out[1].1, RandomSource::new(10).next_uniform());
    }
}
