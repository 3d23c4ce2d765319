#pragma once

// Batch evaluation over a grid of (a, b) parameters and initial points.
//
// Each cell is independent.  `sweep_parallel` / `verify_parallel` spread
// cells over OpenMP threads; `sweep_serial` / `verify_serial` are the
// single-threaded reference kernels they are tested against.  Output is
// always in grid order (a-index, b-index, point-index).

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "twolocus/gamete_state.hpp"
#include "twolocus/scalar.hpp"
#include "twolocus/trajectory.hpp"

namespace twolocus {

/// Inclusive `min:max:count` grid; count = 1 means the single value min.
template <Scalar T>
struct GridSpec {
  T min{}, max{};
  std::size_t count = 1;

  std::vector<T> values() const {
    std::vector<T> out;
    out.reserve(count);
    if (count == 1) {
      out.push_back(min);
      return out;
    }
    const T span = max - min;
    for (std::size_t i = 0; i < count; ++i) {
      if (i + 1 == count) {
        out.push_back(max);
      } else {
        out.push_back(T(min + span * T(static_cast<long>(i)) / T(static_cast<long>(count - 1))));
      }
    }
    return out;
  }
};

template <Scalar T>
struct SweepCell {
  std::size_t a_index = 0, b_index = 0, point_index = 0;
  RecombinationParams<T> params;
  GameteState<T> point;
};

template <Scalar T>
std::vector<SweepCell<T>> make_cells(const std::vector<T>& a_values, const std::vector<T>& b_values,
                                     const std::vector<GameteState<T>>& points) {
  std::vector<SweepCell<T>> cells;
  cells.reserve(a_values.size() * b_values.size() * points.size());
  for (std::size_t ia = 0; ia < a_values.size(); ++ia) {
    for (std::size_t ib = 0; ib < b_values.size(); ++ib) {
      for (std::size_t ip = 0; ip < points.size(); ++ip) {
        cells.push_back({ia, ib, ip, make_params(a_values[ia], b_values[ib]), points[ip]});
      }
    }
  }
  return cells;
}

enum class CellStatus { Ok, NotConverged, Failed };

template <Scalar T>
struct SweepRecord {
  T a{}, b{};
  T x0{}, y0{}, u0{}, v0{};
  T alpha{}, lambda2{};
  std::size_t steps_taken = 0;
  T x_lim{}, y_lim{}, u_lim{}, v_lim{};
  T oracle_gap{};
  T d0{};
  CellStatus status = CellStatus::Ok;
  std::string error;

  bool operator==(const SweepRecord&) const = default;
};

template <Scalar T>
struct VerifyRecord {
  SweepRecord<T> cell;
  bool limit_ok = false, decay_ok = false, alpha_ok = false, fixed_ok = false;

  bool passed() const {
    return cell.status == CellStatus::Ok && limit_ok && decay_ok && alpha_ok && fixed_ok;
  }
  bool operator==(const VerifyRecord&) const = default;
};

template <Scalar T>
struct BatchOptions {
  StopCriterion<T> criterion{};
  Tolerance<T> tolerance{};
  RecordPolicy recording{};
};

template <Scalar T>
SweepRecord<T> evaluate_sweep_cell(const SweepCell<T>& cell, const BatchOptions<T>& opts);

template <Scalar T>
VerifyRecord<T> evaluate_verify_cell(const SweepCell<T>& cell, const BatchOptions<T>& opts);

template <Scalar T>
std::vector<SweepRecord<T>> sweep_serial(const std::vector<SweepCell<T>>& cells,
                                         const BatchOptions<T>& opts);

template <Scalar T>
std::vector<SweepRecord<T>> sweep_parallel(const std::vector<SweepCell<T>>& cells,
                                           const BatchOptions<T>& opts,
                                           std::optional<int> threads = std::nullopt);

template <Scalar T>
std::vector<VerifyRecord<T>> verify_serial(const std::vector<SweepCell<T>>& cells,
                                           const BatchOptions<T>& opts);

template <Scalar T>
std::vector<VerifyRecord<T>> verify_parallel(const std::vector<SweepCell<T>>& cells,
                                             const BatchOptions<T>& opts,
                                             std::optional<int> threads = std::nullopt);

/// Threads OpenMP would use for a parallel region (1 without OpenMP).
int available_threads();

}  // namespace twolocus
