#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "caw/error.hpp"

namespace caw {

/// Output of one level of the lifting transform.
///
/// `approx` is the even lane after the update step, `detail` the odd lane
/// after the predict step. Both have ceil(original_len / 2) entries; when
/// the input had odd length it was padded by repeating its last sample.
struct SubbandPair {
  std::vector<double> approx;
  std::vector<double> detail;
  std::size_t original_len = 0;
  bool padded = false;
};

namespace detail {

inline void require_finite(std::span<const double> values, const char* what) {
  for (double v : values) {
    if (!std::isfinite(v)) throw Error(Errc::non_finite, std::string(what) + " contains a non-finite value");
  }
}

}  // namespace detail

// Split, predict, update. Boundaries replicate the nearest lane value
// (even[N] = even[N-1], odd[-1] = odd[0]) so linear ramps keep zero detail
// up to the last coefficient.
inline SubbandPair forward_lwt(std::span<const double> signal) {
  if (signal.size() < 2) {
    throw Error(Errc::invalid_argument, "lifting needs at least two samples");
  }
  detail::require_finite(signal, "signal");

  const std::size_t half = (signal.size() + 1) / 2;
  SubbandPair out;
  out.original_len = signal.size();
  out.padded = signal.size() % 2 != 0;
  out.approx.resize(half);
  out.detail.resize(half);

  for (std::size_t i = 0; i < half; ++i) {
    out.approx[i] = signal[2 * i];
    out.detail[i] = 2 * i + 1 < signal.size() ? signal[2 * i + 1] : signal.back();
  }

  auto& even = out.approx;
  auto& odd = out.detail;
  for (std::size_t i = 0; i < half; ++i) {
    const double right = i + 1 < half ? even[i + 1] : even[i];
    odd[i] -= 0.5 * (even[i] + right);
  }
  for (std::size_t i = 0; i < half; ++i) {
    const double left = i > 0 ? odd[i - 1] : odd[0];
    even[i] += 0.25 * (left + odd[i]);
  }
  return out;
}

// Undo update, undo predict, merge; result is truncated to original_len.
inline std::vector<double> inverse_lwt(const SubbandPair& bands) {
  if (bands.approx.size() != bands.detail.size()) {
    throw Error(Errc::length_mismatch, "approximation and detail lengths differ");
  }
  if (bands.approx.empty()) {
    throw Error(Errc::invalid_argument, "empty subbands");
  }
  const std::size_t half = bands.approx.size();
  if (bands.original_len > 2 * half || bands.original_len + 1 < 2 * half) {
    throw Error(Errc::length_mismatch, "original length does not match subband length");
  }
  detail::require_finite(bands.approx, "approximation band");
  detail::require_finite(bands.detail, "detail band");

  std::vector<double> even = bands.approx;
  std::vector<double> odd = bands.detail;
  for (std::size_t i = 0; i < half; ++i) {
    const double left = i > 0 ? odd[i - 1] : odd[0];
    even[i] -= 0.25 * (left + odd[i]);
  }
  for (std::size_t i = 0; i < half; ++i) {
    const double right = i + 1 < half ? even[i + 1] : even[i];
    odd[i] += 0.5 * (even[i] + right);
  }

  std::vector<double> out(2 * half);
  for (std::size_t i = 0; i < half; ++i) {
    out[2 * i] = even[i];
    out[2 * i + 1] = odd[i];
  }
  out.resize(bands.original_len);
  return out;
}

}  // namespace caw
