#include "ginvkit/matrix_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace ginv::io {

using nlohmann::json;

namespace {

Index dimension(const json& doc, const char* key) {
  if (!doc.contains(key)) throw FormatError(key, "missing");
  const json& v = doc.at(key);
  if (!v.is_number_integer() || v.get<long long>() < 0) {
    throw FormatError(key, "expected a nonnegative integer");
  }
  return static_cast<Index>(v.get<long long>());
}

std::string entry_field(Index i, Index j) {
  return "data[" + std::to_string(i) + "][" + std::to_string(j) + "]";
}

double finite_number(const json& v, const std::string& field) {
  if (!v.is_number()) throw FormatError(field, "expected a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) throw FormatError(field, "not finite");
  return x;
}

json optional_bool(const std::optional<bool>& b) { return b ? json(*b) : json(nullptr); }

json trace_json(const Trace& trace) {
  json out = json::array();
  for (const auto& entry : trace) out.push_back({{"name", entry.name}, {"matrix", to_json(entry.value)}});
  return out;
}

json checks_json(const std::vector<Check>& checks) {
  json out = json::array();
  for (const auto& c : checks) out.push_back(to_json(c));
  return out;
}

}  // namespace

json to_json(const CMatrix& m) {
  json data = json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Index j = 0; j < m.cols(); ++j) row.push_back({m(i, j).real(), m(i, j).imag()});
    data.push_back(std::move(row));
  }
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"data", std::move(data)}};
}

CMatrix from_json(const json& doc) {
  if (!doc.is_object()) throw FormatError("document", "expected an object");
  const Index rows = dimension(doc, "rows");
  const Index cols = dimension(doc, "cols");
  if (!doc.contains("data")) throw FormatError("data", "missing");
  const json& data = doc.at("data");
  if (!data.is_array() || static_cast<Index>(data.size()) != rows) {
    throw FormatError("data", "expected " + std::to_string(rows) + " rows");
  }
  CMatrix m(rows, cols);
  for (Index i = 0; i < rows; ++i) {
    const json& row = data[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Index>(row.size()) != cols) {
      throw FormatError("data[" + std::to_string(i) + "]",
                        "expected " + std::to_string(cols) + " entries");
    }
    for (Index j = 0; j < cols; ++j) {
      const json& e = row[static_cast<std::size_t>(j)];
      const std::string field = entry_field(i, j);
      if (!e.is_array() || e.size() != 2) throw FormatError(field, "expected a [re, im] pair");
      m(i, j) = Complex(finite_number(e[0], field + "[0]"), finite_number(e[1], field + "[1]"));
    }
  }
  return m;
}

CMatrix read_matrix(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw FormatError("document", std::string("invalid JSON: ") + e.what());
  }
  return from_json(doc);
}

void write_matrix(const std::filesystem::path& path, const CMatrix& m) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << to_json(m).dump() << '\n';
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

json to_json(const Check& c) {
  json j = {{"name", c.name},          {"residual", c.residual}, {"scale", c.scale},
            {"pass", c.pass},          {"evaluated", c.evaluated}};
  if (!c.note.empty()) j["note"] = c.note;
  return j;
}

json to_json(const AxiomCheck& c) {
  return {{"xax_minus_x", c.xax_minus_x},
          {"ax_minus_xa", c.ax_minus_xa},
          {"a2x_minus_a", c.a2x_minus_a},
          {"verdict", c.verdict}};
}

json to_json(const SumGinvReport& r) {
  json j;
  j["theorem"] = std::string(tag(r.theorem));
  j["hypotheses"] = checks_json(r.hypotheses);
  j["conditions"] = checks_json(r.conditions);
  j["applicable"] = r.applicable;
  j["decision"] = optional_bool(r.decision);
  j["inverse"] = r.inverse ? to_json(*r.inverse) : json(nullptr);
  j["inverse_check"] = r.inverse_check ? to_json(*r.inverse_check) : json(nullptr);
  j["trace"] = trace_json(r.trace);
  j["oracle_exists"] = optional_bool(r.oracle_exists);
  j["oracle_match"] = optional_bool(r.oracle_match);
  j["notes"] = r.notes;
  return j;
}

json to_json(const AutoSumReport& r) {
  json reports = json::array();
  for (const auto& rep : r.reports) reports.push_back(to_json(rep));
  return {{"theorem", "auto"},
          {"reports", std::move(reports)},
          {"oracle_exists", r.oracle.exists},
          {"produced", r.produced},
          {"consensus", r.consensus}};
}

json to_json(const BlockGinvReport& r) {
  json j;
  j["theorem"] = std::string(tag(r.theorem));
  if (r.variant != 0) j["variant"] = r.variant;
  j["hypotheses"] = checks_json(r.hypotheses);
  j["conditions"] = checks_json(r.conditions);
  j["applicable"] = r.applicable;
  j["decision"] = optional_bool(r.decision);
  j["M"] = to_json(r.M);
  j["P"] = to_json(r.P);
  j["Q"] = to_json(r.Q);
  j["inverse"] = r.inverse ? to_json(*r.inverse) : json(nullptr);
  j["inverse_check"] = r.inverse_check ? to_json(*r.inverse_check) : json(nullptr);
  j["trace"] = trace_json(r.trace);
  j["oracle_exists"] = optional_bool(r.oracle_exists);
  j["oracle_match"] = optional_bool(r.oracle_match);
  j["notes"] = r.notes;
  return j;
}

json to_json(const AutoBlockReport& r) {
  json reports = json::array();
  for (const auto& rep : r.reports) reports.push_back(to_json(rep));
  return {{"theorem", "auto"},
          {"reports", std::move(reports)},
          {"oracle_exists", r.oracle.exists},
          {"produced", r.produced},
          {"consensus", r.consensus}};
}

}  // namespace ginv::io
