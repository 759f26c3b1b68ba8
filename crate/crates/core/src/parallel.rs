use rayon::prelude::*;

/// Fills an `h x w` row-major buffer, one row per task.
///
/// Each row is computed independently, so the result does not depend on
/// the number of worker threads.
pub(crate) fn fill_rows<T, F>(h: usize, w: usize, f: F) -> Vec<T>
where
    T: Default + Clone + Send,
    F: Fn(usize, &mut [T]) + Sync + Send,
{
    let mut out = vec![T::default(); h * w];
    if w == 0 {
        return out;
    }
    out.par_chunks_mut(w)
        .enumerate()
        .for_each(|(y, row)| f(y, row));
    out
}

/// Like [`fill_rows`], filling two parallel buffers at once.
pub(crate) fn fill_rows2<A, B, F>(h: usize, w: usize, f: F) -> (Vec<A>, Vec<B>)
where
    A: Default + Clone + Send,
    B: Default + Clone + Send,
    F: Fn(usize, &mut [A], &mut [B]) + Sync + Send,
{
    let mut a = vec![A::default(); h * w];
    let mut b = vec![B::default(); h * w];
    if w == 0 {
        return (a, b);
    }
    a.par_chunks_mut(w)
        .zip(b.par_chunks_mut(w))
        .enumerate()
        .for_each(|(y, (ra, rb))| f(y, ra, rb));
    (a, b)
}
