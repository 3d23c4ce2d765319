#pragma once

// Orbit computation, convergence detection, contraction-rate estimation and
// cross-validation of iterated orbits against the closed-form oracles.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "twolocus/error.hpp"
#include "twolocus/evolution_operator.hpp"
#include "twolocus/gamete_state.hpp"
#include "twolocus/scalar.hpp"
#include "twolocus/slice_reduction.hpp"

namespace twolocus {

template <Scalar T>
struct StopCriterion {
  T eps = ScalarTraits<T>::default_convergence();
  std::size_t max_steps = 10'000;

  void check() const {
    if (!(T(0) < eps) || max_steps < 1) {
      throw Error(ErrorKind::UsageError, "stop criterion needs eps > 0 and max_steps >= 1");
    }
  }
};

/// How much of an orbit is kept.  Once `cap` states are held the record is
/// thinned to every other state and the stride doubles.
struct RecordPolicy {
  std::size_t cap = 10'000;
  std::size_t stride = 1;
};

template <Scalar T>
struct Trajectory {
  RecombinationParams<T> params;
  std::vector<GameteState<T>> states;
  std::vector<T> d_values;
  /// Generation number of each recorded state.
  std::vector<std::size_t> steps;

  std::size_t size() const { return states.size(); }
  std::size_t stride() const { return steps.size() < 2 ? 1 : steps[1] - steps[0]; }
};

namespace detail {

template <Scalar T>
class OrbitRecorder {
 public:
  OrbitRecorder(const RecombinationParams<T>& p, RecordPolicy policy)
      : policy_(policy), stride_(policy.stride == 0 ? 1 : policy.stride) {
    if (policy_.cap < 2) policy_.cap = 2;
    orbit_.params = p;
  }

  void record(std::size_t step, const GameteState<T>& s) {
    if (step % stride_ != 0) return;
    if (orbit_.states.size() == policy_.cap) thin();
    if (step % stride_ != 0) return;
    orbit_.states.push_back(s);
    orbit_.d_values.push_back(linkage_disequilibrium(s));
    orbit_.steps.push_back(step);
  }

  Trajectory<T> finish() && { return std::move(orbit_); }

 private:
  void thin() {
    std::size_t kept = 0;
    for (std::size_t i = 0; i < orbit_.states.size(); i += 2, ++kept) {
      orbit_.states[kept] = std::move(orbit_.states[i]);
      orbit_.d_values[kept] = std::move(orbit_.d_values[i]);
      orbit_.steps[kept] = orbit_.steps[i];
    }
    orbit_.states.resize(kept);
    orbit_.d_values.resize(kept);
    orbit_.steps.resize(kept);
    stride_ *= 2;
  }

  RecordPolicy policy_;
  std::size_t stride_;
  Trajectory<T> orbit_;
};

}  // namespace detail

/// The orbit t_0, ..., t_n with t_{k+1} = W(t_k).
template <Scalar T>
Trajectory<T> iterate(const GameteState<T>& s, const RecombinationParams<T>& p, std::size_t n,
                      RecordPolicy policy = {}) {
  detail::OrbitRecorder<T> rec(p, policy);
  GameteState<T> cur = s;
  rec.record(0, cur);
  for (std::size_t k = 1; k <= n; ++k) {
    cur = step_additive(cur, p);
    rec.record(k, cur);
  }
  return std::move(rec).finish();
}

/// Geometric-mean ratio of successive max-norm differences over the usable
/// tail of the orbit.  The first 3 generations are discarded, as are
/// differences below 100 machine epsilon (floating backend).  An orbit that
/// comes to rest right after one resolvable move has rate 0.
template <Scalar T>
double estimate_rate(const Trajectory<T>& t) {
  if (t.size() < 2) throw Error(ErrorKind::RateUndefined, "orbit has fewer than two states");
  const double floor =
      ScalarTraits<T>::exact ? 0.0 : 100.0 * std::numeric_limits<double>::epsilon();
  const std::size_t stride = t.stride();

  std::vector<double> diffs;
  diffs.reserve(t.size() - 1);
  for (std::size_t k = 0; k + 1 < t.size(); ++k) {
    diffs.push_back(to_double(max_norm_distance(t.states[k + 1], t.states[k])));
  }
  if (std::none_of(diffs.begin(), diffs.end(), [floor](double d) { return d > floor; })) {
    throw Error(ErrorKind::RateUndefined, "orbit does not move (fixed point)");
  }

  auto usable_run = [&](std::size_t first_step) -> std::pair<std::size_t, std::size_t> {
    std::size_t begin = 0;
    while (begin < diffs.size() && (t.steps[begin] < first_step || !(diffs[begin] > floor))) {
      ++begin;
    }
    std::size_t end = begin;
    while (end < diffs.size() && diffs[end] > floor) ++end;
    return {begin, end};
  };
  auto [begin, end] = usable_run(3);
  if (end - begin < 2) std::tie(begin, end) = usable_run(0);
  if (end - begin < 2) {
    // A single move followed by rest: the orbit reached its limit in one
    // generation.
    for (std::size_t k = 0; k + 1 < diffs.size(); ++k) {
      if (diffs[k] > floor && !(diffs[k + 1] > floor)) return 0.0;
    }
    throw Error(ErrorKind::RateUndefined, "orbit too short for a ratio estimate");
  }
  const double generations = static_cast<double>((end - 1 - begin) * stride);
  return std::pow(diffs[end - 1] / diffs[begin], 1.0 / generations);
}

template <Scalar T>
struct ConvergenceReport {
  GameteState<T> initial;
  GameteState<T> final_state;
  std::size_t steps_taken = 0;
  bool converged = false;
  GameteState<T> oracle_state;
  T oracle_gap{};
  std::optional<double> estimated_rate;
  T theoretical_rate{};
  Trajectory<T> trajectory;
};

/// Iterates W until the orbit settles.  Stopping uses successive differences
/// only: with diff_n = |t_n - t_{n-1}| and rho = diff_n / diff_{n-1}, stop
/// once diff_n <= eps and the geometric tail bound diff_n rho / (1 - rho)
/// <= eps, or diff_n = 0.  Never consults the closed-form limit.
template <Scalar T>
ConvergenceReport<T> run_to_convergence(const GameteState<T>& s, const RecombinationParams<T>& p,
                                        const StopCriterion<T>& crit = {},
                                        RecordPolicy policy = {},
                                        const Tolerance<T>& tol = {}) {
  crit.check();
  ConvergenceReport<T> report;
  report.initial = s;
  report.theoretical_rate = eigenvalues(alpha_of(s), p).lambda2;
  report.oracle_state = predicted_limit(s, p, tol);

  detail::OrbitRecorder<T> rec(p, policy);
  rec.record(0, s);
  GameteState<T> cur = s;
  if (p.is_identity()) {
    report.converged = true;
  } else {
    std::optional<T> prev_diff;
    for (std::size_t step = 1; step <= crit.max_steps; ++step) {
      GameteState<T> next = step_additive(cur, p);
      T diff = max_norm_distance(next, cur);
      cur = std::move(next);
      rec.record(step, cur);
      report.steps_taken = step;
      if (diff == T(0)) {
        report.converged = true;
        break;
      }
      if (!(crit.eps < diff) && prev_diff && T(0) < *prev_diff) {
        const T rho = diff / *prev_diff;
        if (rho < T(1) && !(crit.eps * (T(1) - rho) < diff * rho)) {
          report.converged = true;
          break;
        }
      }
      prev_diff = std::move(diff);
    }
  }
  report.final_state = cur;
  report.oracle_gap = max_norm_distance(report.final_state, report.oracle_state);
  report.trajectory = std::move(rec).finish();
  if (p.is_identity()) {
    report.estimated_rate = std::nullopt;
  } else {
    try {
      report.estimated_rate = estimate_rate(report.trajectory);
    } catch (const Error&) {
      report.estimated_rate = std::nullopt;
    }
  }
  return report;
}

template <Scalar T>
struct VerificationReport {
  ConvergenceReport<T> run;
  /// (i) iterated limit within eps of the closed-form limit.
  bool limit_ok = false;
  /// (ii) D_k = lambda2^k D_0 for every recorded k.
  bool decay_ok = false;
  /// (iii) alpha = x + y constant along the orbit.
  bool alpha_ok = false;
  /// (iv) final state is a fixed point at the convergence scale.
  bool fixed_ok = false;
  T worst_decay_error{};
  T worst_alpha_drift{};

  bool passed() const { return limit_ok && decay_ok && alpha_ok && fixed_ok; }
};

/// Checks a finished run against the closed-form structure.  Membership
/// comparisons use tol.eps_membership (zero, i.e. exact, in rational mode);
/// the limit and fixed-point checks work at the convergence scale crit.eps,
/// plus eps_membership rounding slack.
template <Scalar T>
VerificationReport<T> check_against_oracle(ConvergenceReport<T> run, const RecombinationParams<T>& p,
                                           const StopCriterion<T>& crit = {},
                                           const Tolerance<T>& tol = {}) {
  VerificationReport<T> out;
  out.run = std::move(run);
  const T scale_eps = crit.eps + tol.eps_membership;
  out.limit_ok = out.run.converged && !(scale_eps < out.run.oracle_gap);

  const Trajectory<T>& orbit = out.run.trajectory;
  const T lambda2 = out.run.theoretical_rate;
  const T d0 = orbit.d_values.front();
  const T alpha0 = alpha_of(orbit.states.front());
  out.worst_decay_error = T(0);
  out.worst_alpha_drift = T(0);
  for (std::size_t k = 0; k < orbit.size(); ++k) {
    const T expected = ScalarTraits<T>::pow(lambda2, static_cast<unsigned>(orbit.steps[k])) * d0;
    out.worst_decay_error =
        max_of(out.worst_decay_error, abs_value(T(orbit.d_values[k] - expected)));
    out.worst_alpha_drift =
        max_of(out.worst_alpha_drift, abs_value(T(alpha_of(orbit.states[k]) - alpha0)));
  }
  out.decay_ok = !(tol.eps_membership < out.worst_decay_error);
  out.alpha_ok = !(tol.eps_membership < out.worst_alpha_drift);
  out.fixed_ok = is_fixed_point(out.run.final_state, p, Tolerance<T>::with_membership(scale_eps));
  return out;
}

/// Runs the orbit of s to convergence and checks it against the oracles.
/// Throws MaxStepsExceeded if the orbit does not settle.
template <Scalar T>
VerificationReport<T> verify_against_oracle(const GameteState<T>& s,
                                            const RecombinationParams<T>& p,
                                            const StopCriterion<T>& crit = {},
                                            RecordPolicy policy = {},
                                            const Tolerance<T>& tol = {}) {
  ConvergenceReport<T> run = run_to_convergence(s, p, crit, policy, tol);
  if (!run.converged) {
    throw Error(ErrorKind::MaxStepsExceeded,
                "orbit of " + format_state(s) + " did not settle within " +
                    std::to_string(crit.max_steps) + " steps");
  }
  return check_against_oracle(std::move(run), p, crit, tol);
}

}  // namespace twolocus
