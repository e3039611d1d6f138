#include "ostrowski/report.hpp"

#include <charconv>
#include <cmath>
#include <stdexcept>

namespace ostrowski {
namespace {

std::string u64_str(std::uint64_t v) { return std::to_string(v); }

std::uint64_t u64_from(const Json& j) {
  if (j.is_string()) {
    const auto v = to_u64(parse_bigint(j.get<std::string>()));
    if (!v) throw std::invalid_argument("count out of range: " + j.get<std::string>());
    return *v;
  }
  return j.get<std::uint64_t>();
}

// JSON has no NaN or infinity; non-finite values become null.
Json num(double x) { return std::isfinite(x) ? Json(x) : Json(nullptr); }

Json complex_json(std::complex<double> z) { return Json{{"re", num(z.real())}, {"im", num(z.imag())}}; }

std::complex<double> complex_from(const Json& j) { return {j.at("re").get<double>(), j.at("im").get<double>()}; }

}  // namespace

std::string format_double(double x) {
  if (!std::isfinite(x)) return std::isnan(x) ? "nan" : (x > 0 ? "inf" : "-inf");
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

Json to_json(const JointCountReport& r) {
  Json counts = Json::array();
  for (const auto& row : r.counts) {
    Json jr = Json::array();
    for (std::uint64_t c : row) jr.push_back(u64_str(c));
    counts.push_back(std::move(jr));
  }
  return Json{{"N", u64_str(r.N)},
              {"m1", r.m1},
              {"b1", r.b1},
              {"m2", r.m2},
              {"b2", r.b2},
              {"counts", std::move(counts)},
              {"expected", num(r.expected)},
              {"max_rel_dev", num(r.max_rel_dev)},
              {"mean_rel_dev", num(r.mean_rel_dev)},
              {"gcd_b1_m1_is_1", r.gcd1},
              {"gcd_b2_m2_is_1", r.gcd2}};
}

JointCountReport joint_count_report_from_json(const Json& j) {
  JointCountReport r;
  r.N = u64_from(j.at("N"));
  r.m1 = j.at("m1").get<std::int64_t>();
  r.b1 = j.at("b1").get<std::uint64_t>();
  r.m2 = j.at("m2").get<std::int64_t>();
  r.b2 = j.at("b2").get<std::uint64_t>();
  for (const auto& row : j.at("counts")) {
    std::vector<std::uint64_t> out;
    for (const auto& c : row) out.push_back(u64_from(c));
    r.counts.push_back(std::move(out));
  }
  r.expected = j.at("expected").get<double>();
  r.max_rel_dev = j.at("max_rel_dev").get<double>();
  r.mean_rel_dev = j.at("mean_rel_dev").get<double>();
  r.gcd1 = j.at("gcd_b1_m1_is_1").get<bool>();
  r.gcd2 = j.at("gcd_b2_m2_is_1").get<bool>();
  return r;
}

Json to_json(const ExpSumSeries& s) {
  Json pts = Json::array();
  for (const ExpSumPoint& p : s.points) {
    pts.push_back(Json{{"N", u64_str(p.N)},
                       {"re", num(p.value.real())},
                       {"im", num(p.value.imag())},
                       {"modulus", num(p.modulus)},
                       {"normalized", num(p.normalized)}});
  }
  return Json{{"m1", s.m1}, {"m2", s.m2}, {"theta", num(s.theta)}, {"beta", num(s.beta)}, {"points", std::move(pts)}};
}

ExpSumSeries exp_sum_series_from_json(const Json& j) {
  ExpSumSeries s;
  s.m1 = j.at("m1").get<std::int64_t>();
  s.m2 = j.at("m2").get<std::int64_t>();
  s.theta = j.at("theta").get<double>();
  s.beta = j.at("beta").get<double>();
  for (const auto& p : j.at("points")) {
    ExpSumPoint pt;
    pt.N = u64_from(p.at("N"));
    pt.value = {p.at("re").get<double>(), p.at("im").get<double>()};
    pt.modulus = p.at("modulus").get<double>();
    pt.normalized = p.at("normalized").get<double>();
    s.points.push_back(pt);
  }
  return s;
}

Json to_json(const DecaySeries& s) {
  Json pts = Json::array();
  for (const DecayPoint& p : s.points) pts.push_back(Json{{"k", p.k}, {"q_k", u64_str(p.q_k)}, {"D", num(p.D)}});
  return Json{{"m", s.m},
              {"gamma", num(s.gamma)},
              {"theta", num(s.theta)},
              {"hypothesis_holds", s.hypothesis_holds},
              {"slope", num(s.slope)},
              {"points", std::move(pts)}};
}

Json to_json(const SpectrumL& s) {
  Json coeffs = Json::array();
  for (const auto& z : s.L) coeffs.push_back(complex_json(z));
  return Json{{"k", s.k},     {"v", s.v}, {"theta", num(s.theta)}, {"n_start", u64_str(s.start)},
              {"Q", u64_str(s.Q)}, {"L", std::move(coeffs)}};
}

Json to_json(const MismatchResult& r) {
  return Json{{"N", u64_str(r.N)},           {"k", r.k},
              {"r", u64_str(r.r)},           {"count", u64_str(r.count)},
              {"bound_num", r.bound_num.str()}, {"bound_den", r.bound_den.str()},
              {"bound", num(r.bound())},     {"holds", r.holds}};
}

Json to_json(const DeltaFit& f) {
  Json grid = Json::array(), err = Json::array();
  for (auto N : f.grid) grid.push_back(u64_str(N));
  for (double e : f.err) err.push_back(num(e));
  Json j{{"mode", to_string(f.mode)},
         {"grid", std::move(grid)},
         {"err", std::move(err)},
         {"delta_hat", f.delta_hat ? num(*f.delta_hat) : Json(nullptr)},
         {"residual", num(f.residual)},
         {"hypothesis_holds", f.hypothesis_holds ? Json(*f.hypothesis_holds) : Json(nullptr)},
         {"theta_nonintegral", f.theta_nonintegral ? Json(*f.theta_nonintegral) : Json(nullptr)}};
  Json sums = Json::array();
  for (const auto& z : f.sums) sums.push_back(complex_json(z));
  j["sums"] = std::move(sums);
  Json reports = Json::array();
  for (const auto& r : f.reports) reports.push_back(to_json(r));
  j["reports"] = std::move(reports);
  return j;
}

DeltaFit delta_fit_from_json(const Json& j) {
  DeltaFit f;
  f.mode = parse_scan_mode(j.at("mode").get<std::string>());
  for (const auto& N : j.at("grid")) f.grid.push_back(u64_from(N));
  for (const auto& e : j.at("err")) f.err.push_back(e.get<double>());
  if (!j.at("delta_hat").is_null()) f.delta_hat = j.at("delta_hat").get<double>();
  f.residual = j.at("residual").get<double>();
  if (!j.at("hypothesis_holds").is_null()) f.hypothesis_holds = j.at("hypothesis_holds").get<bool>();
  if (!j.at("theta_nonintegral").is_null()) f.theta_nonintegral = j.at("theta_nonintegral").get<bool>();
  for (const auto& z : j.at("sums")) f.sums.push_back(complex_from(z));
  for (const auto& r : j.at("reports")) f.reports.push_back(joint_count_report_from_json(r));
  return f;
}

std::string csv_row(const std::vector<std::string>& fields) {
  std::string out;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i != 0) out += ',';
    const std::string& f = fields[i];
    if (f.find_first_of(",\"\r\n") == std::string::npos) {
      out += f;
      continue;
    }
    out += '"';
    for (char c : f) {
      if (c == '"') out += '"';
      out += c;
    }
    out += '"';
  }
  out += "\r\n";
  return out;
}

std::string to_csv(const JointCountReport& r) {
  std::string out = csv_row({"N", "m1", "b1", "m2", "b2", "a1", "a2", "count", "expected", "rel_dev"});
  const double scale = static_cast<double>(r.b1 * r.b2) / static_cast<double>(r.N == 0 ? 1 : r.N);
  for (std::uint64_t a1 = 0; a1 < r.counts.size(); ++a1) {
    for (std::uint64_t a2 = 0; a2 < r.counts[a1].size(); ++a2) {
      const std::uint64_t c = r.counts[a1][a2];
      out += csv_row({u64_str(r.N), std::to_string(r.m1), u64_str(r.b1), std::to_string(r.m2), u64_str(r.b2),
                      u64_str(a1), u64_str(a2), u64_str(c), format_double(r.expected),
                      format_double(static_cast<double>(c) * scale - 1.0)});
    }
  }
  return out;
}

std::string to_csv(const ExpSumSeries& s) {
  std::string out = csv_row({"N", "re", "im", "modulus", "normalized"});
  for (const ExpSumPoint& p : s.points) {
    out += csv_row({u64_str(p.N), format_double(p.value.real()), format_double(p.value.imag()),
                    format_double(p.modulus), format_double(p.normalized)});
  }
  return out;
}

std::string to_csv(const DecaySeries& s) {
  std::string out = csv_row({"k", "q_k", "D"});
  for (const DecayPoint& p : s.points) out += csv_row({std::to_string(p.k), u64_str(p.q_k), format_double(p.D)});
  return out;
}

std::string to_csv(const SpectrumL& s) {
  std::string out = csv_row({"l", "re", "im", "abs"});
  for (std::size_t l = 0; l < s.L.size(); ++l) {
    out += csv_row({std::to_string(l), format_double(s.L[l].real()), format_double(s.L[l].imag()),
                    format_double(std::abs(s.L[l]))});
  }
  return out;
}

std::string to_csv(const DeltaFit& f) {
  std::string out = csv_row({"N", "err", "re", "im"});
  for (std::size_t i = 0; i < f.grid.size(); ++i) {
    const bool has_sum = i < f.sums.size();
    out += csv_row({u64_str(f.grid[i]), format_double(f.err[i]), has_sum ? format_double(f.sums[i].real()) : "",
                    has_sum ? format_double(f.sums[i].imag()) : ""});
  }
  return out;
}

}  // namespace ostrowski
