#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "ostrowski/equidist.hpp"
#include "ostrowski/expsum.hpp"

namespace ostrowski {

using Json = nlohmann::ordered_json;

// Counts and other integers that can outgrow a double are written as decimal strings.
Json to_json(const JointCountReport& r);
Json to_json(const ExpSumSeries& s);
Json to_json(const DecaySeries& s);
Json to_json(const SpectrumL& s);
Json to_json(const MismatchResult& r);
Json to_json(const DeltaFit& f);

JointCountReport joint_count_report_from_json(const Json& j);
ExpSumSeries exp_sum_series_from_json(const Json& j);
DeltaFit delta_fit_from_json(const Json& j);

/// One CSV record with RFC-4180 quoting, terminated by CRLF.
std::string csv_row(const std::vector<std::string>& fields);

/// Shortest decimal form that reads back to the same double.
std::string format_double(double x);

std::string to_csv(const JointCountReport& r);
std::string to_csv(const ExpSumSeries& s);  // columns N, re, im, modulus, normalized
std::string to_csv(const DecaySeries& s);
std::string to_csv(const SpectrumL& s);
std::string to_csv(const DeltaFit& f);

}  // namespace ostrowski
