#include "twolocus/sweep.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

#include <exception>
#include <string>

namespace twolocus {
namespace {

template <Scalar T>
SweepRecord<T> seed_record(const SweepCell<T>& cell) {
  SweepRecord<T> r;
  r.a = cell.params.a;
  r.b = cell.params.b;
  r.x0 = cell.point.x;
  r.y0 = cell.point.y;
  r.u0 = cell.point.u;
  r.v0 = cell.point.v;
  r.alpha = alpha_of(cell.point);
  r.lambda2 = eigenvalues(r.alpha, cell.params).lambda2;
  r.d0 = linkage_disequilibrium(cell.point);
  return r;
}

template <Scalar T>
void fill_from_run(SweepRecord<T>& r, const ConvergenceReport<T>& run) {
  r.steps_taken = run.steps_taken;
  r.x_lim = run.final_state.x;
  r.y_lim = run.final_state.y;
  r.u_lim = run.final_state.u;
  r.v_lim = run.final_state.v;
  r.oracle_gap = run.oracle_gap;
  r.status = run.converged ? CellStatus::Ok : CellStatus::NotConverged;
}

void set_thread_count(std::optional<int> threads) {
#ifdef _OPENMP
  if (threads && *threads > 0) omp_set_num_threads(*threads);
#else
  (void)threads;
#endif
}

}  // namespace

int available_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

template <Scalar T>
SweepRecord<T> evaluate_sweep_cell(const SweepCell<T>& cell, const BatchOptions<T>& opts) {
  SweepRecord<T> r = seed_record(cell);
  try {
    fill_from_run(r, run_to_convergence(cell.point, cell.params, opts.criterion, opts.recording,
                                        opts.tolerance));
  } catch (const std::exception& e) {
    r.status = CellStatus::Failed;
    r.error = e.what();
  }
  return r;
}

template <Scalar T>
VerifyRecord<T> evaluate_verify_cell(const SweepCell<T>& cell, const BatchOptions<T>& opts) {
  VerifyRecord<T> r;
  r.cell = seed_record(cell);
  try {
    ConvergenceReport<T> run = run_to_convergence(cell.point, cell.params, opts.criterion,
                                                  opts.recording, opts.tolerance);
    fill_from_run(r.cell, run);
    if (!run.converged) {
      r.cell.error = "did not settle within " + std::to_string(opts.criterion.max_steps) + " steps";
      return r;
    }
    const VerificationReport<T> report =
        check_against_oracle(std::move(run), cell.params, opts.criterion, opts.tolerance);
    r.limit_ok = report.limit_ok;
    r.decay_ok = report.decay_ok;
    r.alpha_ok = report.alpha_ok;
    r.fixed_ok = report.fixed_ok;
  } catch (const std::exception& e) {
    r.cell.status = CellStatus::Failed;
    r.cell.error = e.what();
  }
  return r;
}

template <Scalar T>
std::vector<SweepRecord<T>> sweep_serial(const std::vector<SweepCell<T>>& cells,
                                         const BatchOptions<T>& opts) {
  std::vector<SweepRecord<T>> out;
  out.reserve(cells.size());
  for (const auto& cell : cells) out.push_back(evaluate_sweep_cell(cell, opts));
  return out;
}

template <Scalar T>
std::vector<SweepRecord<T>> sweep_parallel(const std::vector<SweepCell<T>>& cells,
                                           const BatchOptions<T>& opts,
                                           std::optional<int> threads) {
  set_thread_count(threads);
  std::vector<SweepRecord<T>> out(cells.size());
  const long n = static_cast<long>(cells.size());
  // Cells differ widely in orbit length; dynamic scheduling balances them.
#pragma omp parallel for schedule(dynamic, 1)
  for (long i = 0; i < n; ++i) {
    out[static_cast<std::size_t>(i)] = evaluate_sweep_cell(cells[static_cast<std::size_t>(i)], opts);
  }
  return out;
}

template <Scalar T>
std::vector<VerifyRecord<T>> verify_serial(const std::vector<SweepCell<T>>& cells,
                                           const BatchOptions<T>& opts) {
  std::vector<VerifyRecord<T>> out;
  out.reserve(cells.size());
  for (const auto& cell : cells) out.push_back(evaluate_verify_cell(cell, opts));
  return out;
}

template <Scalar T>
std::vector<VerifyRecord<T>> verify_parallel(const std::vector<SweepCell<T>>& cells,
                                             const BatchOptions<T>& opts,
                                             std::optional<int> threads) {
  set_thread_count(threads);
  std::vector<VerifyRecord<T>> out(cells.size());
  const long n = static_cast<long>(cells.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (long i = 0; i < n; ++i) {
    out[static_cast<std::size_t>(i)] = evaluate_verify_cell(cells[static_cast<std::size_t>(i)], opts);
  }
  return out;
}

#define TWOLOCUS_INSTANTIATE_SWEEP(T)                                                           \
  template SweepRecord<T> evaluate_sweep_cell<T>(const SweepCell<T>&, const BatchOptions<T>&);  \
  template VerifyRecord<T> evaluate_verify_cell<T>(const SweepCell<T>&, const BatchOptions<T>&); \
  template std::vector<SweepRecord<T>> sweep_serial<T>(const std::vector<SweepCell<T>>&,        \
                                                       const BatchOptions<T>&);                 \
  template std::vector<SweepRecord<T>> sweep_parallel<T>(                                       \
      const std::vector<SweepCell<T>>&, const BatchOptions<T>&, std::optional<int>);            \
  template std::vector<VerifyRecord<T>> verify_serial<T>(const std::vector<SweepCell<T>>&,      \
                                                         const BatchOptions<T>&);               \
  template std::vector<VerifyRecord<T>> verify_parallel<T>(                                     \
      const std::vector<SweepCell<T>>&, const BatchOptions<T>&, std::optional<int>);

TWOLOCUS_INSTANTIATE_SWEEP(double)
TWOLOCUS_INSTANTIATE_SWEEP(Rational)

#undef TWOLOCUS_INSTANTIATE_SWEEP

}  // namespace twolocus
