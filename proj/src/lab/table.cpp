#include "twolocus/lab/table.hpp"

#include <fstream>

#include "json.hpp"
#include "twolocus/error.hpp"

namespace twolocus::lab {
namespace {

std::string csv_field(const Cell& cell) {
  struct Visitor {
    std::string operator()(double v) const { return format_scalar(v); }
    std::string operator()(const Rational& v) const { return format_scalar(v); }
    std::string operator()(std::size_t v) const { return std::to_string(v); }
    std::string operator()(bool v) const { return v ? "true" : "false"; }
    std::string operator()(const std::string& v) const {
      if (v.find_first_of(",\"\n") == std::string::npos) return v;
      std::string quoted = "\"";
      for (char c : v) {
        if (c == '"') quoted.push_back('"');
        quoted.push_back(c);
      }
      quoted.push_back('"');
      return quoted;
    }
  };
  return std::visit(Visitor{}, cell);
}

nlohmann::ordered_json json_value(const Cell& cell) {
  struct Visitor {
    nlohmann::ordered_json operator()(double v) const { return v; }
    nlohmann::ordered_json operator()(const Rational& v) const { return format_scalar(v); }
    nlohmann::ordered_json operator()(std::size_t v) const { return v; }
    nlohmann::ordered_json operator()(bool v) const { return v; }
    nlohmann::ordered_json operator()(const std::string& v) const { return v; }
  };
  return std::visit(Visitor{}, cell);
}

}  // namespace

std::string to_csv(const Table& table) {
  std::string out;
  for (std::size_t c = 0; c < table.columns.size(); ++c) {
    if (c != 0) out.push_back(',');
    out += table.columns[c].csv_name;
  }
  out.push_back('\n');
  for (const auto& row : table.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c != 0) out.push_back(',');
      out += csv_field(row[c]);
    }
    out.push_back('\n');
  }
  return out;
}

std::string to_json(const Table& table) {
  auto records = nlohmann::ordered_json::array();
  for (const auto& row : table.rows) {
    nlohmann::ordered_json obj = nlohmann::ordered_json::object();
    for (std::size_t c = 0; c < row.size(); ++c) {
      obj[table.columns[c].json_name] = json_value(row[c]);
    }
    records.push_back(std::move(obj));
  }
  return records.dump(2) + "\n";
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::IoError, "cannot open '" + path + "' for writing");
  out << contents;
  out.flush();
  if (!out) throw Error(ErrorKind::IoError, "failed writing '" + path + "'");
}

}  // namespace twolocus::lab
