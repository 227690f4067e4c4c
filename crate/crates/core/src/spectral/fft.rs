//! Multi-dimensional FFT over row-major grids, normalized so that forward
//! coefficients are `(1/N) Σ f(x_k) e^{-2πi n·x_k}`.

use std::cell::RefCell;
use std::sync::Arc;

use rayon::prelude::*;
use rustfft::num_complex::Complex64;
use rustfft::{Fft, FftDirection, FftPlanner};

use super::grid::TorusGrid;

thread_local! {
    static PLANNER: RefCell<FftPlanner<f64>> = RefCell::new(FftPlanner::new());
}

fn plan(len: usize, direction: FftDirection) -> Arc<dyn Fft<f64>> {
    PLANNER.with(|p| p.borrow_mut().plan_fft(len, direction))
}

const PARALLEL_THRESHOLD: usize = 1 << 14;

fn transform_axis(data: &mut [Complex64], grid: &TorusGrid, axis: usize, direction: FftDirection) {
    let n = grid.n_per_axis();
    let dim = grid.dim();
    let stride = n.pow((dim - 1 - axis) as u32);
    let block = n * stride;
    let parallel = data.len() >= PARALLEL_THRESHOLD;

    let run_block = |chunk: &mut [Complex64]| {
        let fft = plan(n, direction);
        let mut scratch = vec![Complex64::default(); fft.get_inplace_scratch_len()];
        if stride == 1 {
            fft.process_with_scratch(chunk, &mut scratch);
            return;
        }
        let mut line = vec![Complex64::default(); n];
        for inner in 0..stride {
            for (k, v) in line.iter_mut().enumerate() {
                *v = chunk[inner + k * stride];
            }
            fft.process_with_scratch(&mut line, &mut scratch);
            for (k, v) in line.iter().enumerate() {
                chunk[inner + k * stride] = *v;
            }
        }
    };

    if parallel && data.len() / block > 1 {
        data.par_chunks_mut(block).for_each(run_block);
    } else {
        data.chunks_mut(block).for_each(run_block);
    }
}

/// Samples to normalized coefficients, in place.
pub fn forward(data: &mut [Complex64], grid: &TorusGrid) {
    debug_assert_eq!(data.len(), grid.len());
    for axis in 0..grid.dim() {
        transform_axis(data, grid, axis, FftDirection::Forward);
    }
    let scale = 1.0 / data.len() as f64;
    for v in data.iter_mut() {
        *v *= scale;
    }
}

/// Normalized coefficients to samples, in place.
pub fn inverse(data: &mut [Complex64], grid: &TorusGrid) {
    debug_assert_eq!(data.len(), grid.len());
    for axis in 0..grid.dim() {
        transform_axis(data, grid, axis, FftDirection::Inverse);
    }
}
