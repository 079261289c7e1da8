#pragma once

#include <complex>
#include <cstddef>

namespace mf::fft {

enum class Direction { Forward, Backward };

/// In-place unnormalized DFT of `howmany` lines of length n.
/// Element k of line m sits at data[m*dist + k*stride].
/// Forward uses e^{-2πi jk/n}, Backward e^{+2πi jk/n}.
void transform(std::complex<double>* data, int n, int howmany, int stride, int dist,
               Direction dir);

/// Convenience for a single contiguous line.
inline void transform(std::complex<double>* data, int n, Direction dir) {
    transform(data, n, 1, 1, n, dir);
}

/// Signed frequency index of bin k for an n-point transform, in [-n/2, n/2).
inline int signed_bin(int k, int n) { return k < n / 2 ? k : k - n; }

}  // namespace mf::fft
