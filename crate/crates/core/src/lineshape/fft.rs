//! In-place iterative radix-2 FFT. Single-threaded, fixed operation order.

use num_complex::Complex64;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    /// Σ x_j e^{−2πi jk/n}
    Forward,
    /// Σ x_j e^{+2πi jk/n}, unnormalized.
    Inverse,
}

/// Transforms `data` in place. Panics unless the length is a power of two.
pub fn fft_in_place(data: &mut [Complex64], direction: Direction) {
    let n = data.len();
    assert!(n.is_power_of_two(), "FFT length must be a power of two");
    if n < 2 {
        return;
    }
    let bits = n.trailing_zeros();
    for i in 0..n {
        let j = i.reverse_bits() >> (usize::BITS - bits);
        if j > i {
            data.swap(i, j);
        }
    }
    let sign = match direction {
        Direction::Forward => -1.0,
        Direction::Inverse => 1.0,
    };
    let mut len = 2;
    while len <= n {
        let half = len / 2;
        let angle = sign * 2.0 * core::f64::consts::PI / len as f64;
        for k in 0..half {
            // Twiddles from sin/cos directly; recurrences drift for large n.
            let theta = angle * k as f64;
            let w = Complex64::new(libm::cos(theta), libm::sin(theta));
            let mut start = 0;
            while start < n {
                let a = data[start + k];
                let b = data[start + k + half] * w;
                data[start + k] = a + b;
                data[start + k + half] = a - b;
                start += len;
            }
        }
        len <<= 1;
    }
}
