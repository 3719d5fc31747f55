#ifndef RSPFL_IO_HPP_
#define RSPFL_IO_HPP_

#include <iosfwd>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "rspfl/flp.hpp"
#include "rspfl/stochastics.hpp"

namespace rspfl {

// Malformed or inconsistent input files. The message names the offending
// field so the CLI can surface a useful diagnostic.
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Decimal with 17 significant digits (exact double round trip).
std::string format_double(double x);

// EdgeWeights JSON: {"n": int, "weights": [w_12, w_13, ...]} in (u<v)
// lexicographic order.
std::string edge_weights_to_json(const EdgeWeights& ew);
EdgeWeights edge_weights_from_json(const nlohmann::json& j);

// Instance JSON: {"n", "costs", and either "weights" or "distances"}.
std::string instance_to_json(const Instance& inst, const EdgeWeights* ew);
Instance instance_from_json(const nlohmann::json& j);
Instance read_instance(std::istream& in);
Instance read_instance_file(const std::string& path);
void write_instance_file(const std::string& path, const Instance& inst,
                         const EdgeWeights* ew);

// Solution JSON uses 1-based vertex ids.
std::string solution_to_json(const Solution& sol);

nlohmann::json ks_result_to_json(const KsResult& r);

}  // namespace rspfl

#endif  // RSPFL_IO_HPP_
