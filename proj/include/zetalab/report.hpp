#pragma once

// Versioned JSON documents for every front-end command.
//
// Each document has the shape
//   { "schema": 1, "command": ..., "config": {...}, "constants": {...},
//     "rows": [ {flat record}, ... ], ..., "timing": {"seconds": ...} }
// "rows" is what the CSV writer emits, one line per record.

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "zetalab/functionals.hpp"

namespace zetalab {

class Context;

namespace report {

inline constexpr int kSchemaVersion = 1;

using nlohmann::json;

/// Throws InvalidArgument when schema, command, config, constants or rows
/// are missing or of the wrong type.
void validate_document(const json& doc);

/// Header line plus one line per row; constants go first as "# key=value".
std::string to_csv(const json& doc);

json to_json(const sone::ArgTrace& t);
json to_json(const sone::SelbergConstant& c);
json to_json(const ladders::LadderSequence& s);
json to_json(const ladders::PartitionReport& p);
json to_json(const functionals::ResolvedSpec& r);
json to_json(const functionals::Evaluation& e);
json to_json(const functionals::ConvergenceReport& r);
json to_json(const functionals::FermatReport& r);
json to_json(const fermat::FermatRational& q);

json zeta_mean(Context& ctx, double sigma, const std::vector<double>& Ts);
json s1_mean(Context& ctx, int l, const std::vector<double>& Ts);
json ladder(Context& ctx, double T, int k);
json coupling(Context& ctx, ladders::CouplingKind kind, double sigma, int l, double T);
json functional(Context& ctx, const functionals::FunctionalSpec& spec, double x, const std::vector<double>& schedule);
json fermat_scan(Context& ctx, long h_max, int n_min, int n_max,
                 const std::optional<functionals::FunctionalSpec>& spec, const std::vector<double>& schedule);
json dirichlet_mean(Context& ctx, const std::string& series, double sigma0, const std::vector<double>& Ts);

json cache_list(const std::string& dir);
/// Recomputes one randomly chosen checkpoint gap and compares within 2 tol.
json cache_verify(Context& ctx, const std::string& file, unsigned seed);
json cache_drop(const std::string& dir, const std::string& file);

}  // namespace report
}  // namespace zetalab
