#include "twolocus/lab/execute.hpp"

#include <algorithm>
#include <ostream>

#include "twolocus/error.hpp"
#include "twolocus/evolution_operator.hpp"
#include "twolocus/gamete_state.hpp"
#include "twolocus/lab/grid.hpp"
#include "twolocus/slice_reduction.hpp"
#include "twolocus/sweep.hpp"
#include "twolocus/trajectory.hpp"

namespace twolocus::lab {
namespace {

std::vector<Column> columns(std::initializer_list<const char*> names) {
  std::vector<Column> out;
  for (const char* n : names) out.push_back({n, n});
  return out;
}

const std::vector<Column>& sweep_columns() {
  static const std::vector<Column> cols = [] {
    auto c = columns({"a", "b", "x0", "y0", "u0", "v0", "alpha", "lambda2", "steps", "x_lim",
                      "y_lim", "u_lim", "v_lim", "oracle_gap", "d0"});
    c[8].json_name = "steps_taken";
    return c;
  }();
  return cols;
}

const std::vector<Column>& verify_columns() {
  static const std::vector<Column> cols = [] {
    auto c = columns({"a", "b", "x0", "y0", "u0", "v0", "alpha", "lambda2", "steps",
                      "oracle_gap", "d0", "limit_ok", "decay_ok", "alpha_ok", "fixed_ok",
                      "passed"});
    c[8].json_name = "steps_taken";
    return c;
  }();
  return cols;
}

template <Scalar T>
struct Inputs {
  std::vector<GameteState<T>> points;
  RecombinationParams<T> params;
  BatchOptions<T> batch;
};

template <Scalar T>
Inputs<T> prepare(const RunConfig& config) {
  Inputs<T> in;
  for (const auto& p : config.points) in.points.push_back(parse_state<T>(p));
  in.params = make_params(parse_scalar<T>(config.a), parse_scalar<T>(config.b));
  if (config.eps) in.batch.criterion.eps = parse_scalar<T>(*config.eps);
  if (config.max_steps) {
    in.batch.criterion.max_steps = *config.max_steps;
  } else if (ScalarTraits<T>::exact) {
    in.batch.criterion.max_steps = kRationalStepCap;
  }
  return in;
}

template <Scalar T>
std::vector<Cell> state_cells(const GameteState<T>& s) {
  return {s.x, s.y, s.u, s.v};
}

template <Scalar T>
std::vector<T> grid_values(const std::optional<std::string>& grid, const std::string& single) {
  if (grid) return parse_grid<T>(*grid).values();
  return {parse_scalar<T>(single)};
}

template <Scalar T>
std::vector<Cell> sweep_cells(const SweepRecord<T>& r) {
  return {r.a,     r.b,     r.x0,          r.y0,    r.u0,    r.v0,    r.alpha,      r.lambda2,
          r.steps_taken,    r.x_lim,       r.y_lim, r.u_lim, r.v_lim, r.oracle_gap, r.d0};
}

template <Scalar T>
void note_cell_status(RunResult& result, const SweepRecord<T>& r) {
  if (r.status == CellStatus::Ok) return;
  const std::string where = "cell a=" + format_scalar(r.a) + " b=" + format_scalar(r.b) +
                            " point=" + format_scalar(r.x0) + "," + format_scalar(r.y0) + "," +
                            format_scalar(r.u0) + "," + format_scalar(r.v0);
  result.diagnostics.push_back(where + ": " + r.error);
  const int code = r.status == CellStatus::NotConverged ? kExitMaxSteps : kExitInternal;
  if (result.exit_code == kExitOk || code == kExitMaxSteps) result.exit_code = code;
}

template <Scalar T>
RunResult run_step(const RunConfig& config) {
  const Inputs<T> in = prepare<T>(config);
  RunResult result;
  result.table.columns = columns({"x", "y", "u", "v"});
  for (const auto& s : in.points) result.table.rows.push_back(state_cells(step_additive(s, in.params)));
  return result;
}

template <Scalar T>
RunResult run_trajectory(const RunConfig& config) {
  const Inputs<T> in = prepare<T>(config);
  if (in.points.size() != 1) {
    throw Error(ErrorKind::UsageError, "trajectory mode takes exactly one --point");
  }
  RunResult result;
  result.table.columns = columns({"n", "x", "y", "u", "v", "D"});
  Trajectory<T> orbit;
  if (config.steps) {
    RecordPolicy policy;
    policy.cap = std::max(policy.cap, *config.steps + 1);
    orbit = iterate(in.points.front(), in.params, *config.steps, policy);
  } else {
    ConvergenceReport<T> run =
        run_to_convergence(in.points.front(), in.params, in.batch.criterion, in.batch.recording,
                           in.batch.tolerance);
    if (!run.converged) {
      result.exit_code = kExitMaxSteps;
      result.diagnostics.push_back("orbit did not settle within " +
                                   std::to_string(in.batch.criterion.max_steps) + " steps");
    }
    orbit = std::move(run.trajectory);
  }
  for (std::size_t k = 0; k < orbit.size(); ++k) {
    std::vector<Cell> row{orbit.steps[k]};
    for (auto& c : state_cells(orbit.states[k])) row.push_back(std::move(c));
    row.emplace_back(orbit.d_values[k]);
    result.table.rows.push_back(std::move(row));
  }
  return result;
}

template <Scalar T>
RunResult run_limit(const RunConfig& config) {
  const Inputs<T> in = prepare<T>(config);
  RunResult result;
  result.table.columns = columns({"x_lim", "y_lim", "u_lim", "v_lim", "alpha", "lambda2"});
  for (const auto& s : in.points) {
    std::vector<Cell> row = state_cells(predicted_limit(s, in.params, in.batch.tolerance));
    const T alpha = alpha_of(s);
    row.emplace_back(alpha);
    row.emplace_back(eigenvalues(alpha, in.params).lambda2);
    result.table.rows.push_back(std::move(row));
  }
  return result;
}

template <Scalar T>
std::vector<SweepCell<T>> grid_cells(const RunConfig& config, const Inputs<T>& in) {
  return make_cells(grid_values<T>(config.a_grid, config.a), grid_values<T>(config.b_grid, config.b),
                    in.points);
}

template <Scalar T>
RunResult run_sweep(const RunConfig& config) {
  const Inputs<T> in = prepare<T>(config);
  RunResult result;
  result.table.columns = sweep_columns();
  for (const auto& r : sweep_parallel(grid_cells(config, in), in.batch, config.threads)) {
    note_cell_status(result, r);
    result.table.rows.push_back(sweep_cells(r));
  }
  return result;
}

template <Scalar T>
RunResult run_verify(const RunConfig& config) {
  const Inputs<T> in = prepare<T>(config);
  RunResult result;
  result.table.columns = verify_columns();
  std::size_t passed = 0;
  std::size_t total = 0;
  bool any_check_failed = false;
  for (const auto& r : verify_parallel(grid_cells(config, in), in.batch, config.threads)) {
    ++total;
    note_cell_status(result, r.cell);
    if (r.passed()) {
      ++passed;
    } else if (r.cell.status == CellStatus::Ok) {
      any_check_failed = true;
    }
    const SweepRecord<T>& c = r.cell;
    result.table.rows.push_back({c.a, c.b, c.x0, c.y0, c.u0, c.v0, c.alpha, c.lambda2,
                                 c.steps_taken, c.oracle_gap, c.d0, r.limit_ok, r.decay_ok,
                                 r.alpha_ok, r.fixed_ok, r.passed()});
  }
  if (any_check_failed && result.exit_code == kExitOk) result.exit_code = kExitVerifyFailed;
  result.diagnostics.push_back("verify: " + std::to_string(passed) + "/" + std::to_string(total) +
                               " cells passed");
  return result;
}

template <Scalar T>
RunResult dispatch(const RunConfig& config) {
  switch (config.mode) {
    case Mode::Step: return run_step<T>(config);
    case Mode::Trajectory: return run_trajectory<T>(config);
    case Mode::Limit: return run_limit<T>(config);
    case Mode::Sweep: return run_sweep<T>(config);
    case Mode::Verify: return run_verify<T>(config);
  }
  throw Error(ErrorKind::UsageError, "unknown mode");
}

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::UsageError:
    case ErrorKind::NotOnSimplex:
    case ErrorKind::NegativeCoordinate:
    case ErrorKind::InvalidParams: return kExitUsage;
    case ErrorKind::IoError: return kExitIo;
    case ErrorKind::MaxStepsExceeded: return kExitMaxSteps;
    default: return kExitInternal;
  }
}

}  // namespace

RunResult execute(const RunConfig& config) {
  if (config.arithmetic == Arithmetic::Rational) return dispatch<Rational>(config);
  return dispatch<double>(config);
}

std::string render(const Table& table, Format format) {
  return format == Format::Json ? to_json(table) : to_csv(table);
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  try {
    const RunConfig config = load_config(args);
    if (config.help) {
      out << *config.help;
      return kExitOk;
    }
    RunResult result = execute(config);
    const std::string text = render(result.table, config.output_format);
    if (config.output_path) {
      write_file(*config.output_path, text);
    } else {
      out << text;
    }
    for (const auto& line : result.diagnostics) err << line << '\n';
    return result.exit_code;
  } catch (const Error& e) {
    err << "twolocus: " << e.what() << '\n';
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    err << "twolocus: internal error: " << e.what() << '\n';
    return kExitInternal;
  }
}

}  // namespace twolocus::lab
