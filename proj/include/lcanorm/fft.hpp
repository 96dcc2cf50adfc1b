/// \file
/// Discrete Fourier transforms on finite products of cyclic groups, backed by
/// FFTW. Plans use FFTW_ESTIMATE so results do not depend on timing.

#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include <fftw3.h>

#include "lcanorm/group.hpp"

namespace lcanorm::fft {

/// Unnormalized row-major DFT over a product of cyclic orders:
/// A_k = sum_x a_x exp(-+2 pi i <k, x / n>), the sign flipped when inverse.
inline void transform_nd(std::span<Complex> data, const std::vector<Coord>& orders, bool inverse = false) {
  if (data.size() <= 1) return;
  std::vector<int> dims(orders.begin(), orders.end());
  auto* io = reinterpret_cast<fftw_complex*>(data.data());
  fftw_plan plan = fftw_plan_dft(static_cast<int>(dims.size()), dims.data(), io, io,
                                 inverse ? FFTW_BACKWARD : FFTW_FORWARD, FFTW_ESTIMATE);
  if (plan == nullptr) throw Error("FFTW could not create a plan");
  fftw_execute(plan);
  fftw_destroy_plan(plan);
}

inline void transform(std::span<Complex> a, bool inverse = false) {
  transform_nd(a, {static_cast<Coord>(a.size())}, inverse);
}

/// Cyclic convolution (a * b)(x) = sum_y a(x - y) b(y) on the product group.
inline std::vector<Complex> cyclic_convolve(std::vector<Complex> a, std::vector<Complex> b,
                                            const std::vector<Coord>& orders) {
  transform_nd(a, orders, false);
  transform_nd(b, orders, false);
  for (std::size_t k = 0; k < a.size(); ++k) a[k] *= b[k];
  transform_nd(a, orders, true);
  const auto scale = static_cast<double>(a.size());
  for (auto& v : a) v /= scale;
  return a;
}

}  // namespace lcanorm::fft
