#include "twolocus/lab/config.hpp"

#include <cctype>
#include <fstream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "twolocus/error.hpp"
#include "twolocus/gamete_state.hpp"
#include "twolocus/lab/grid.hpp"
#include "twolocus/scalar.hpp"

namespace twolocus::lab {
namespace {

[[noreturn]] void usage(const std::string& message) { throw Error(ErrorKind::UsageError, message); }

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

Mode parse_mode(std::string_view text) {
  if (text == "step") return Mode::Step;
  if (text == "trajectory") return Mode::Trajectory;
  if (text == "limit") return Mode::Limit;
  if (text == "sweep") return Mode::Sweep;
  if (text == "verify") return Mode::Verify;
  usage("unknown mode '" + std::string(text) +
        "' (expected step, trajectory, limit, sweep or verify)");
}

Arithmetic parse_arithmetic(std::string_view text) {
  if (text == "rational") return Arithmetic::Rational;
  if (text == "floating") return Arithmetic::Floating;
  usage("unknown arithmetic '" + std::string(text) + "' (expected rational or floating)");
}

Format parse_format(std::string_view text) {
  if (text == "csv") return Format::Csv;
  if (text == "json") return Format::Json;
  usage("unknown format '" + std::string(text) + "' (expected csv or json)");
}

template <typename Int>
Int parse_count(std::string_view key, std::string_view text) {
  std::string s(trim(text));
  std::size_t used = 0;
  long long value = 0;
  try {
    value = std::stoll(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != s.size() || value < 0) {
    usage("'" + std::string(key) + "' needs a non-negative integer, got '" + s + "'");
  }
  return static_cast<Int>(value);
}

std::vector<std::string> split_points(std::string_view text) {
  std::vector<std::string> out;
  while (true) {
    auto semi = text.find(';');
    std::string_view item = trim(text.substr(0, semi));
    if (!item.empty()) out.emplace_back(item);
    if (semi == std::string_view::npos) break;
    text.remove_prefix(semi + 1);
  }
  return out;
}

template <Scalar T>
void check_numbers(const RunConfig& c) {
  for (const auto& p : c.points) {
    try {
      (void)parse_state<T>(p);
    } catch (const Error& e) {
      usage("bad --point '" + p + "': " + e.what());
    }
  }
  try {
    (void)make_params(parse_scalar<T>(c.a), parse_scalar<T>(c.b));
  } catch (const Error& e) {
    usage(std::string("bad --a/--b: ") + e.what());
  }
  if (c.a_grid) (void)parse_grid<T>(*c.a_grid);
  if (c.b_grid) (void)parse_grid<T>(*c.b_grid);
  if (c.eps) {
    T eps = parse_scalar<T>(*c.eps);
    if (!(T(0) < eps)) usage("--eps must be positive");
  }
}

}  // namespace

std::string_view to_string(Mode mode) {
  switch (mode) {
    case Mode::Step: return "step";
    case Mode::Trajectory: return "trajectory";
    case Mode::Limit: return "limit";
    case Mode::Sweep: return "sweep";
    case Mode::Verify: return "verify";
  }
  return "step";
}

std::string_view to_string(Arithmetic arithmetic) {
  return arithmetic == Arithmetic::Rational ? "rational" : "floating";
}

std::string_view to_string(Format format) { return format == Format::Csv ? "csv" : "json"; }

RunConfig apply_config_text(RunConfig base, std::string_view text, std::string_view origin) {
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  bool points_from_file = false;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view = trim(line);
    if (view.empty() || view.front() == '#') continue;
    const auto eq = view.find('=');
    if (eq == std::string_view::npos) {
      usage(std::string(origin) + ":" + std::to_string(line_no) + ": expected 'key = value'");
    }
    const std::string key(trim(view.substr(0, eq)));
    std::string_view value = trim(view.substr(eq + 1));
    if (value.size() >= 2 && value.front() == '"' && value.back() == '"') {
      value = value.substr(1, value.size() - 2);
    }
    if (key == "mode") {
      base.mode = parse_mode(value);
    } else if (key == "point" || key == "points") {
      if (!points_from_file) base.points.clear();
      points_from_file = true;
      for (auto& p : split_points(value)) base.points.push_back(std::move(p));
    } else if (key == "a") {
      base.a = value;
    } else if (key == "b") {
      base.b = value;
    } else if (key == "a_grid") {
      base.a_grid = std::string(value);
    } else if (key == "b_grid") {
      base.b_grid = std::string(value);
    } else if (key == "eps") {
      base.eps = std::string(value);
    } else if (key == "max_steps") {
      base.max_steps = parse_count<std::size_t>(key, value);
    } else if (key == "steps") {
      base.steps = parse_count<std::size_t>(key, value);
    } else if (key == "arithmetic") {
      base.arithmetic = parse_arithmetic(value);
    } else if (key == "output_path") {
      base.output_path = std::string(value);
    } else if (key == "output_format") {
      base.output_format = parse_format(value);
    } else if (key == "threads") {
      base.threads = parse_count<int>(key, value);
    } else {
      usage(std::string(origin) + ":" + std::to_string(line_no) + ": unknown key '" + key + "'");
    }
  }
  return base;
}

void check_config(const RunConfig& config) {
  if (config.points.empty()) usage("at least one --point is required");
  if (config.max_steps && *config.max_steps < 1) usage("--max-steps must be at least 1");
  if (config.arithmetic == Arithmetic::Rational) {
    check_numbers<Rational>(config);
  } else {
    check_numbers<double>(config);
  }
}

RunConfig load_config(const std::vector<std::string>& args) {
  CLI::App app{"Two-locus gamete-frequency dynamics: step, orbit, limit, sweep, verify",
               "twolocus"};
  app.allow_windows_style_options(false);

  std::string mode_text;
  std::vector<std::string> points;
  std::string a, b, a_grid, b_grid, eps, arithmetic, format, out, config_path;
  std::size_t max_steps = 0, steps = 0;
  int threads = 0;

  app.add_option("mode", mode_text, "step | trajectory | limit | sweep | verify");
  app.add_option("--point", points,
                 "initial state x,y,u,v (decimals or p/q); repeat for several points")
      ->allow_extra_args(false);
  app.add_option("--a", a, "recombination parameter a in [0,1] (default 0.5)");
  app.add_option("--b", b, "recombination parameter b in [0,1] (default 0.5)");
  app.add_option("--a-grid", a_grid, "sweep/verify grid over a: min:max:count");
  app.add_option("--b-grid", b_grid, "sweep/verify grid over b: min:max:count");
  app.add_option("--eps", eps, "convergence threshold (default 1e-10)");
  app.add_option("--max-steps", max_steps,
                 "iteration cap (default 10000; 200 in rational mode)");
  app.add_option("--steps", steps, "trajectory mode: iterate exactly this many steps");
  app.add_option("--arithmetic", arithmetic, "rational | floating (default floating)");
  app.add_option("--format", format, "csv | json (default csv)");
  app.add_option("--out", out, "output file (default: standard output)");
  app.add_option("--config", config_path, "flat key = value file with RunConfig fields");
  app.add_option("--threads", threads, "OpenMP threads for sweep/verify");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    RunConfig help;
    help.help = app.help();
    return help;
  } catch (const CLI::ParseError& e) {
    usage(e.what());
  }

  RunConfig config;
  if (app.count("--config") != 0) {
    std::ifstream in(config_path);
    if (!in) usage("cannot read config file '" + config_path + "'");
    std::stringstream buffer;
    buffer << in.rdbuf();
    config = apply_config_text(std::move(config), buffer.str(), config_path);
  }

  if (app.count("mode") != 0) config.mode = parse_mode(mode_text);
  else if (app.count("--config") == 0) usage("missing mode (step, trajectory, limit, sweep or verify)");
  if (app.count("--point") != 0) {
    config.points.clear();
    for (const auto& p : points) {
      for (auto& item : split_points(p)) config.points.push_back(std::move(item));
    }
  }
  if (app.count("--a") != 0) config.a = a;
  if (app.count("--b") != 0) config.b = b;
  if (app.count("--a-grid") != 0) config.a_grid = a_grid;
  if (app.count("--b-grid") != 0) config.b_grid = b_grid;
  if (app.count("--eps") != 0) config.eps = eps;
  if (app.count("--max-steps") != 0) config.max_steps = max_steps;
  if (app.count("--steps") != 0) config.steps = steps;
  if (app.count("--arithmetic") != 0) config.arithmetic = parse_arithmetic(arithmetic);
  if (app.count("--format") != 0) config.output_format = parse_format(format);
  if (app.count("--out") != 0) config.output_path = out;
  if (app.count("--threads") != 0) config.threads = threads;

  check_config(config);
  return config;
}

}  // namespace twolocus::lab
