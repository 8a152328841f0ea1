#pragma once

#include <json.hpp>

#include "qreduce/codes.hpp"
#include "qreduce/decode.hpp"
#include "qreduce/noise.hpp"
#include "qreduce/opi.hpp"
#include "qreduce/qsim.hpp"
#include "qreduce/thresholds.hpp"

namespace qreduce {

using Json = nlohmann::ordered_json;

Json to_json(const Matrix& m);
Json to_json(const FieldVector& v);
Json to_json(const ErrorProfile& profile);
Json to_json(const DecoderReport& report);
Json to_json(const ReductionOutcome& outcome);
Json to_json(const BoundReport& report);
Json to_json(const ThresholdRow& row);
Json to_json(const OPIInstance& instance);
Json to_json(const OPISolution& solution);
Json to_json(const ICCInstance& icc);

/// {q, n, tau, sets}; sets may hold one entry (shared by all coordinates) or n.
ErrorProfile profile_from_json(const Json& j);
/// {q, k, tau, sets, x, seed}; the result is validated.
OPIInstance opi_instance_from_json(const Json& j);
/// {coeffs, count}; count is optional.
OPISolution opi_solution_from_json(const Json& j);

/// Parses text, rethrowing nlohmann errors as std::invalid_argument with the
/// byte offset of the failure.
Json parse_json(const std::string& text, const std::string& source = "input");

}  // namespace qreduce
