use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Subfunction, VectorMkLandscape};
use crate::error::{Error, Result};

fn check_params(n: usize, k: usize, d: usize, q: u32) -> Result<()> {
    if n <= k {
        return Err(Error::input(format!("need N > K, got N={n}, K={k}")));
    }
    if d == 0 {
        return Err(Error::input("need d >= 1"));
    }
    if q < 2 {
        return Err(Error::input(format!("need q >= 2, got {q}")));
    }
    if k + 1 > super::MAX_K {
        return Err(Error::input(format!("K + 1 must be <= {}", super::MAX_K)));
    }
    Ok(())
}

fn random_table(len: usize, q: u32, rng: &mut ChaCha8Rng) -> Vec<u32> {
    (0..len).map(|_| rng.random_range(0..q)).collect()
}

/// Adjacent MNKq landscape: `m_i = N` for every objective and subfunction
/// `l` reads variables `l, l+1, ..., l+K` (indices wrap modulo `N`), with
/// table entries drawn uniformly from `[0, q)`.
///
/// Identical arguments always produce a bit-identical instance.
pub fn generate_adjacent_mnk(
    n: usize,
    k: usize,
    d: usize,
    q: u32,
    seed: u64,
) -> Result<VectorMkLandscape> {
    check_params(n, k, d, q)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut subs = Vec::with_capacity(n * d);
    for i in 0..d {
        for l in 0..n {
            let mask: Vec<u32> = (0..=k).map(|j| ((l + j) % n) as u32).collect();
            subs.push(Subfunction::new(i, mask, random_table(1 << (k + 1), q, &mut rng)));
        }
    }
    VectorMkLandscape::new(n, d, k + 1, q, subs)
}

/// Random-neighbourhood MNKq landscape: subfunction `l` reads variable `l`
/// plus `K` distinct others chosen uniformly. The number of subfunctions a
/// variable appears in is not bounded by a constant here.
pub fn generate_random_mnk(
    n: usize,
    k: usize,
    d: usize,
    q: u32,
    seed: u64,
) -> Result<VectorMkLandscape> {
    check_params(n, k, d, q)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut subs = Vec::with_capacity(n * d);
    for i in 0..d {
        for l in 0..n {
            let mut mask = vec![l as u32];
            mask.extend(
                sample(&mut rng, n - 1, k)
                    .into_iter()
                    .map(|j| if j >= l { j + 1 } else { j } as u32),
            );
            subs.push(Subfunction::new(i, mask, random_table(1 << (k + 1), q, &mut rng)));
        }
    }
    VectorMkLandscape::new(n, d, k + 1, q, subs)
}
