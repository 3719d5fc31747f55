#include "rspfl/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace rspfl {

using nlohmann::json;

std::string format_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

namespace {

void append_array(std::ostream& os, const std::vector<double>& v) {
  os << '[';
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) os << ',';
    os << format_double(v[i]);
  }
  os << ']';
}

std::vector<double> positive_array(const json& j, const char* field) {
  if (!j.is_array() || j.empty())
    throw IoError(std::string("field '") + field +
                  "' must be a nonempty array");
  std::vector<double> out;
  out.reserve(j.size());
  for (const auto& x : j) {
    if (!x.is_number())
      throw IoError(std::string("field '") + field + "' has a non-number");
    double v = x.get<double>();
    if (!(v > 0.0) || !std::isfinite(v))
      throw IoError(std::string("field '") + field +
                    "' has a nonpositive or nonfinite entry");
    out.push_back(v);
  }
  return out;
}

}  // namespace

std::string edge_weights_to_json(const EdgeWeights& ew) {
  std::ostringstream os;
  os << "{\"n\":" << ew.n << ",\"weights\":";
  append_array(os, ew.w);
  os << '}';
  return os.str();
}

EdgeWeights edge_weights_from_json(const json& j) {
  if (!j.contains("n") || !j["n"].is_number_integer())
    throw IoError("field 'n' missing or not an integer");
  EdgeWeights ew;
  ew.n = j["n"].get<int>();
  if (ew.n < 2) throw IoError("field 'n' must be >= 2");
  ew.w = positive_array(j.at("weights"), "weights");
  if (ew.w.size() != EdgeWeights::edge_count(ew.n))
    throw IoError("field 'weights': expected " +
                  std::to_string(EdgeWeights::edge_count(ew.n)) +
                  " entries, got " + std::to_string(ew.w.size()));
  return ew;
}

std::string instance_to_json(const Instance& inst, const EdgeWeights* ew) {
  std::ostringstream os;
  os << "{\"n\":" << inst.n() << ",\"costs\":";
  append_array(os, inst.costs.f);
  if (ew) {
    os << ",\"weights\":";
    append_array(os, ew->w);
  } else {
    os << ",\"distances\":[";
    for (int u = 0; u < inst.n(); ++u) {
      if (u) os << ',';
      os << '[';
      for (int v = 0; v < inst.n(); ++v) {
        if (v) os << ',';
        os << format_double(inst.metric.at(u, v));
      }
      os << ']';
    }
    os << ']';
  }
  os << '}';
  return os.str();
}

Instance instance_from_json(const json& j) {
  if (!j.is_object()) throw IoError("instance must be a JSON object");
  if (!j.contains("n") || !j["n"].is_number_integer())
    throw IoError("field 'n' missing or not an integer");
  const int n = j["n"].get<int>();
  if (n < 2) throw IoError("field 'n' must be >= 2");
  if (!j.contains("costs")) throw IoError("field 'costs' missing");
  std::vector<double> costs = positive_array(j["costs"], "costs");
  if (static_cast<int>(costs.size()) != n)
    throw IoError("field 'costs': expected " + std::to_string(n) +
                  " entries, got " + std::to_string(costs.size()));

  Metric m;
  if (j.contains("weights")) {
    EdgeWeights ew = edge_weights_from_json(j);
    m = build_metric(ew);
  } else if (j.contains("distances")) {
    const auto& rows = j["distances"];
    if (!rows.is_array() || static_cast<int>(rows.size()) != n)
      throw IoError("field 'distances' must be an n x n array");
    m.n = n;
    m.d.assign(static_cast<std::size_t>(n) * n, 0.0);
    for (int u = 0; u < n; ++u) {
      const auto& row = rows[u];
      if (!row.is_array() || static_cast<int>(row.size()) != n)
        throw IoError("field 'distances' row " + std::to_string(u + 1) +
                      " must have n entries");
      for (int v = 0; v < n; ++v) {
        if (!row[v].is_number())
          throw IoError("field 'distances' has a non-number entry");
        double d = row[v].get<double>();
        if (!(d >= 0.0) || !std::isfinite(d))
          throw IoError("field 'distances' has a negative or nonfinite entry");
        m.at(u, v) = d;
      }
    }
    for (int u = 0; u < n; ++u)
      if (m.at(u, u) != 0.0)
        throw IoError("field 'distances': nonzero diagonal at row " +
                      std::to_string(u + 1));
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v)
        if (m.at(u, v) != m.at(v, u))
          throw IoError("field 'distances': asymmetry at (" +
                        std::to_string(u + 1) + "," + std::to_string(v + 1) +
                        ")");
  } else {
    throw IoError("instance needs either 'weights' or 'distances'");
  }
  return make_instance(std::move(m), costs);
}

Instance read_instance(std::istream& in) {
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw IoError(std::string("malformed JSON: ") + e.what());
  }
  return instance_from_json(j);
}

Instance read_instance_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "'");
  return read_instance(in);
}

void write_instance_file(const std::string& path, const Instance& inst,
                         const EdgeWeights* ew) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write '" + path + "'");
  out << instance_to_json(inst, ew) << '\n';
}

std::string solution_to_json(const Solution& sol) {
  std::ostringstream os;
  os << "{\"open\":[";
  for (std::size_t i = 0; i < sol.open.size(); ++i) {
    if (i) os << ',';
    os << sol.open[i] + 1;
  }
  os << "],\"opening_cost\":" << format_double(sol.opening_cost)
     << ",\"connection_cost\":" << format_double(sol.connection_cost)
     << ",\"total\":" << format_double(sol.total) << '}';
  return os.str();
}

json ks_result_to_json(const KsResult& r) {
  json j;
  j["statistic"] = r.statistic;
  j["threshold"] = r.threshold;
  j["pass"] = r.pass;
  j["n"] = r.n_b == 0 ? json(r.n_a) : json({r.n_a, r.n_b});
  return j;
}

}  // namespace rspfl
