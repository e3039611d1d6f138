#include "ostrowski/cli.hpp"

#include <algorithm>
#include <cmath>
#include <ctime>
#include <fstream>
#include <iostream>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>

#include "ostrowski/equidist.hpp"
#include "ostrowski/expsum.hpp"
#include "ostrowski/lemmas.hpp"
#include "ostrowski/odometer.hpp"
#include "ostrowski/report.hpp"

namespace ostrowski::cli {
namespace {

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Accepts plain decimal integers and the shorthand "<digits>e<digits>" (1e6).
std::uint64_t parse_count(const std::string& text, const std::string& what) {
  const auto fail = [&]() -> std::uint64_t {
    throw UsageError(what + " expects a nonnegative integer, got '" + text + "'");
  };
  const auto e = text.find_first_of("eE");
  const std::string mant = text.substr(0, e);
  if (mant.empty() || !std::all_of(mant.begin(), mant.end(), ::isdigit)) return fail();
  BigInt v = parse_bigint(mant);
  if (e != std::string::npos) {
    const std::string ex = text.substr(e + 1);
    if (ex.empty() || ex.size() > 2 || !std::all_of(ex.begin(), ex.end(), ::isdigit)) return fail();
    v *= boost::multiprecision::pow(BigInt(10), std::stoi(ex));
  }
  const auto r = to_u64(v);
  if (!r) throw UsageError(what + " does not fit in 64 bits: '" + text + "'");
  return *r;
}

std::vector<std::uint64_t> parse_grid(const std::vector<std::string>& items) {
  std::vector<std::uint64_t> grid;
  for (const auto& s : items) grid.push_back(parse_count(s, "--grid"));
  return grid;
}

struct Frequency {
  double value = 0;
  std::optional<Rational> exact;
  std::string text;
};

struct Global {
  std::string format = "text";
  std::string output;
  unsigned threads = 1;
  std::uint64_t seed = 0;
  bool real = false;
};

class Frequencies {
 public:
  Frequencies(const Global& g, std::ostream& err) : g_(g), err_(err) {}

  Frequency parse(const std::string& text, const std::string& flag) {
    Frequency f;
    f.text = text;
    try {
      f.exact = parse_rational(text);
      f.value = to_double(*f.exact);
      return f;
    } catch (const std::invalid_argument&) {
    }
    if (!g_.real) throw UsageError(flag + " expects a rational p/q (pass --real to accept decimals), got '" + text + "'");
    std::size_t used = 0;
    try {
      f.value = std::stod(text, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != text.size() || !std::isfinite(f.value)) throw UsageError(flag + " is not a number: '" + text + "'");
    if (!warned_) err_ << "warning: --real given; hypotheses unchecked\n";
    warned_ = true;
    return f;
  }

 private:
  const Global& g_;
  std::ostream& err_;
  bool warned_ = false;
};

Json optional_bool(const std::optional<bool>& b) { return b ? Json(*b) : Json(nullptr); }

struct Outcome {
  Json result;
  std::string text;
  std::string csv;
  std::vector<std::string> failures;  // violated invariants; nonempty means exit 1
};

std::string timestamp() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

Json collect_config(const CLI::App& sub, const Global& g) {
  Json config = Json::object();
  for (const CLI::Option* opt : sub.get_options()) {
    std::string name = opt->get_name(false, true);
    if (name.empty() || name == "--help") continue;
    name.erase(0, name.find_first_not_of('-'));
    if (opt->count() > 0) {
      const auto& res = opt->results();
      if (opt->get_type_size() == 0) {
        config[name] = true;
      } else if (res.size() == 1 && opt->get_items_expected_max() <= 1) {
        config[name] = res.front();
      } else {
        config[name] = res;
      }
    } else if (!opt->get_default_str().empty()) {
      config[name] = opt->get_default_str();
    }
  }
  config["format"] = g.format;
  config["threads"] = std::to_string(g.threads);
  config["real"] = g.real;
  return config;
}

// ---- subcommands ----

struct DigitsArgs {
  std::int64_t m = 0;
  std::string n, digits;
  std::optional<std::size_t> k;
};

Outcome cmd_digits(const DigitsArgs& a) {
  const OstrowskiSystem sys(a.m);
  Outcome o;
  DigitString ds;
  BigInt n;
  if (!a.digits.empty()) {
    std::vector<Digit> raw;
    try {
      raw = parse_digits(a.digits);
    } catch (const std::exception& e) {
      throw UsageError(std::string("--digits: ") + e.what());
    }
    const ValidationReport rep = validate(raw, sys.params());
    if (!rep.ok) throw UsageError("--digits is not admissible: " + rep.describe());
    ds = DigitString::from_raw(raw, sys.params());
    n = value_of(ds, sys);
  } else {
    n = parse_bigint(a.n);
    if (n < 0) throw UsageError("--n must be nonnegative");
    ds = digits_of(n, sys);
  }
  if (value_of(ds, sys) != n) o.failures.push_back("value_of(digits_of(n)) != n");
  if (!validate(ds.digits(), sys.params()).ok) o.failures.push_back("expansion is not admissible");

  std::uint64_t s = 0;
  Json digits = Json::array();
  for (Digit d : ds.digits()) {
    s += d;
    digits.push_back(d);
  }
  o.result = Json{{"m", a.m}, {"n", n.str()}, {"digits", std::move(digits)}, {"digit_sum", std::to_string(s)}};
  std::ostringstream text;
  text << serialize_digits(ds.digits()) << "\nS=" << s << "\n";
  if (a.k) {
    const std::uint64_t sk = digit_sum_trunc(n, sys, *a.k);
    o.result["k"] = *a.k;
    o.result["digit_sum_below_k"] = std::to_string(sk);
    text << "S_" << *a.k << "=" << sk << "\n";
  }
  if (!a.digits.empty()) text << "n=" << n.str() << "\n";
  o.text = text.str();

  o.csv = csv_row({"i", "digit", "q_i"});
  for (std::size_t i = 0; i < ds.size(); ++i) o.csv += csv_row({std::to_string(i), std::to_string(ds[i]), sys.q(i).str()});
  return o;
}

Outcome cmd_convergents(std::int64_t m, std::size_t K) {
  const AlphaParams params = make_alpha(m);
  const ConvergentTable t = convergents(params, K);
  const double rate = fitted_growth_rate(t);
  const double predicted = std::log(params.phi.to_double()) / 2.0;

  Outcome o;
  Json q = Json::array(), p = Json::array(), a = Json::array();
  std::ostringstream text;
  text << "i a_i p_i q_i\n";
  o.csv = csv_row({"i", "a_i", "p_i", "q_i"});
  for (std::size_t i = 0; i <= K; ++i) {
    const std::int64_t ai = i == 0 ? 0 : params.partial_quotient(i);
    q.push_back(t.q[i].str());
    p.push_back(t.p[i].str());
    a.push_back(ai);
    text << i << ' ' << ai << ' ' << t.p[i] << ' ' << t.q[i] << '\n';
    o.csv += csv_row({std::to_string(i), std::to_string(ai), t.p[i].str(), t.q[i].str()});
    if (i + 1 <= K && t.p[i + 1] * t.q[i] - t.p[i] * t.q[i + 1] != (i % 2 == 0 ? 1 : -1)) {
      o.failures.push_back("determinant identity fails at i = " + std::to_string(i));
    }
  }
  text << "growth_rate=" << format_double(rate) << " (log(phi)/2=" << format_double(predicted) << ")\n";
  o.text = text.str();
  o.result = Json{{"m", m},          {"K", K},
                  {"alpha", params.alpha.str()},
                  {"phi", params.phi.str()},
                  {"partial_quotients", std::move(a)},
                  {"p", std::move(p)},
                  {"q", std::move(q)},
                  {"growth_rate", rate},
                  {"predicted_rate", predicted}};
  return o;
}

struct CountArgs {
  std::int64_t m1 = 2, m2 = 3;
  std::uint64_t b1 = 0, b2 = 0;
  std::string n;
  std::optional<std::uint64_t> a1, a2;
};

Outcome cmd_count(const CountArgs& a, const Global& g, const Budget& budget) {
  if (a.b1 == 0 || a.b2 == 0) throw UsageError("--b1 and --b2 must be positive");
  if ((a.a1 && *a.a1 >= a.b1) || (a.a2 && *a.a2 >= a.b2)) throw UsageError("--a1/--a2 must be below --b1/--b2");
  if (a.a1.has_value() != a.a2.has_value()) throw UsageError("--a1 and --a2 go together");
  const std::uint64_t N = parse_count(a.n, "--n");
  const OstrowskiSystem s1(a.m1), s2(a.m2);
  const JointCountReport r = joint_counts(N, s1, a.b1, s2, a.b2, g.threads, budget);

  Outcome o;
  o.result = to_json(r);
  o.csv = to_csv(r);
  std::uint64_t total = 0;
  std::ostringstream text;
  for (const auto& row : r.counts) {
    for (std::size_t j = 0; j < row.size(); ++j) text << (j ? " " : "") << row[j];
    text << '\n';
    total = std::accumulate(row.begin(), row.end(), total);
  }
  if (total != N) o.failures.push_back("count matrix sums to " + std::to_string(total) + ", not N");
  text << "N=" << N << " expected=" << format_double(r.expected) << " max_rel_dev=" << format_double(r.max_rel_dev)
       << "\ngcd(b1,m1)=1: " << (r.gcd1 ? "yes" : "no") << "  gcd(b2,m2)=1: " << (r.gcd2 ? "yes" : "no") << '\n';
  if (a.a1) {
    const std::uint64_t c = r.counts[*a.a1][*a.a2];
    o.result["cell"] = Json{{"a1", *a.a1}, {"a2", *a.a2}, {"count", std::to_string(c)}};
    text << "C(" << *a.a1 << "," << *a.a2 << ")=" << c << '\n';
  }
  o.text = text.str();
  return o;
}

struct ExpSumArgs {
  std::int64_t m1 = 2, m2 = 3;
  std::string theta, beta, n;
  std::vector<std::string> grid;
};

Outcome cmd_expsum(const ExpSumArgs& a, const Global& g, Frequencies& freq, const Budget& budget) {
  const Frequency theta = freq.parse(a.theta, "--theta"), beta = freq.parse(a.beta, "--beta");
  std::vector<std::uint64_t> grid;
  if (!a.n.empty()) grid.push_back(parse_count(a.n, "--n"));
  for (auto N : parse_grid(a.grid)) grid.push_back(N);
  if (grid.empty()) throw UsageError("expsum needs --n or --grid");
  const OstrowskiSystem s1(a.m1), s2(a.m2);
  const ExpSumSeries series = joint_exp_series(grid, theta.value, beta.value, s1, s2, g.threads, budget);

  Outcome o;
  o.result = to_json(series);
  o.result["theta_exact"] = theta.exact ? Json(to_string(*theta.exact)) : Json(nullptr);
  o.result["beta_exact"] = beta.exact ? Json(to_string(*beta.exact)) : Json(nullptr);
  std::optional<bool> hyp;
  if (beta.exact) hyp = !is_integer(*beta.exact * Rational(a.m2));
  o.result["hypothesis_holds"] = optional_bool(hyp);
  o.csv = to_csv(series);
  std::ostringstream text;
  for (const auto& p : series.points) {
    text << "N=" << p.N << " S=" << format_double(p.value.real()) << (p.value.imag() < 0 ? "" : "+")
         << format_double(p.value.imag()) << "i |S|/N=" << format_double(p.normalized) << '\n';
  }
  if (hyp && !*hyp) text << "note: m2*beta is an integer; the decay hypothesis fails\n";
  o.text = text.str();
  return o;
}

struct DecayArgs {
  std::int64_t m = 2;
  std::string gamma = "1/3", theta = "3/10";
  std::size_t kmax = 20, kmin = 6;
};

Outcome cmd_decay(const DecayArgs& a, Frequencies& freq, const Budget& budget) {
  if (a.kmin < 1 || a.kmin > a.kmax) throw UsageError("need 1 <= --kmin <= --k");
  const Frequency gamma = freq.parse(a.gamma, "--gamma"), theta = freq.parse(a.theta, "--theta");
  const OstrowskiSystem sys(a.m);
  DecaySeries s = single_decay(sys, gamma.value, theta.value, a.kmax, a.kmin, budget);
  if (gamma.exact) s.hypothesis_holds = !is_integer(*gamma.exact * Rational(a.m));

  Outcome o;
  o.result = to_json(s);
  o.csv = to_csv(s);
  std::ostringstream text;
  for (const auto& p : s.points) text << "k=" << p.k << " q_k=" << p.q_k << " D=" << format_double(p.D) << '\n';
  text << "slope=" << format_double(s.slope) << (s.hypothesis_holds ? "" : "\nnote: m*gamma is an integer") << '\n';
  o.text = text.str();
  return o;
}

struct DftArgs {
  std::int64_t m = 2;
  std::size_t k = 0, v = 0;
  std::string theta;
};

Outcome cmd_dft(const DftArgs& a, Frequencies& freq, const Budget& budget) {
  if (a.k < 2) throw UsageError("--k must be at least 2");
  const Frequency theta = freq.parse(a.theta, "--theta");
  const OstrowskiSystem sys(a.m);
  const SpectrumL s = dft_window(sys, a.k, a.v, theta.value, budget);

  // The expansion must reproduce the block on the extended range [0, Q + q_{k-1}).
  const std::uint64_t extended = s.Q + *sys.q_u64(a.k - 1);
  double max_err = 0;
  Odometer odo(sys, s.start);
  for (std::uint64_t u = 0; u < extended; ++u, odo.next()) {
    const auto direct = unit(theta.value * static_cast<double>(odo.digit_sum_below(a.k)));
    max_err = std::max(max_err, std::abs(reconstruct(s, u) - direct));
  }
  double energy = 0;
  for (const auto& z : s.L) energy += std::norm(z);
  const double parseval_err = std::abs(energy - 1.0);

  Outcome o;
  o.result = to_json(s);
  o.result["extended_range"] = std::to_string(extended);
  o.result["max_reconstruction_error"] = max_err;
  o.result["parseval_error"] = parseval_err;
  if (max_err >= 1e-9) o.failures.push_back("reconstruction error " + format_double(max_err) + " >= 1e-9");
  if (parseval_err >= 1e-9) o.failures.push_back("Parseval error " + format_double(parseval_err) + " >= 1e-9");
  o.csv = to_csv(s);
  std::ostringstream text;
  text << "n_start=" << s.start << " Q=" << s.Q << '\n';
  for (std::size_t l = 0; l < s.L.size(); ++l) {
    text << "L(" << l << ")=" << format_double(s.L[l].real()) << (s.L[l].imag() < 0 ? "" : "+")
         << format_double(s.L[l].imag()) << "i\n";
  }
  text << "max_reconstruction_error=" << format_double(max_err) << " parseval_error=" << format_double(parseval_err)
       << '\n';
  o.text = text.str();
  return o;
}

struct ScanArgs {
  std::string mode = "theorem";
  std::int64_t m1 = 2, m2 = 3;
  std::string theta = "1/3", beta = "1/2";
  std::uint64_t b1 = 3, b2 = 2;
  std::vector<std::string> grid{"1e3", "1e4", "1e5", "1e6"};
};

Outcome cmd_scan(const ScanArgs& a, const Global& g, Frequencies& freq, const Budget& budget) {
  ScanConfig c;
  try {
    c.mode = parse_scan_mode(a.mode);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  c.m1 = a.m1;
  c.m2 = a.m2;
  c.grid = parse_grid(a.grid);
  c.threads = g.threads;
  if (c.mode == ScanMode::theorem) {
    const Frequency theta = freq.parse(a.theta, "--theta"), beta = freq.parse(a.beta, "--beta");
    c.theta = theta.value;
    c.beta = beta.value;
    c.theta_exact = theta.exact;
    c.beta_exact = beta.exact;
  } else {
    if (a.b1 == 0 || a.b2 == 0) throw UsageError("--b1 and --b2 must be positive");
    c.b1 = a.b1;
    c.b2 = a.b2;
  }
  const DeltaFit f = delta_scan(c, budget);

  Outcome o;
  o.result = to_json(f);
  o.csv = to_csv(f);
  for (const auto& r : f.reports) {
    std::uint64_t total = 0;
    for (const auto& row : r.counts) total = std::accumulate(row.begin(), row.end(), total);
    if (total != r.N) o.failures.push_back("count matrix for N=" + std::to_string(r.N) + " does not sum to N");
  }
  std::ostringstream text;
  for (std::size_t i = 0; i < f.grid.size(); ++i) text << "N=" << f.grid[i] << " err=" << format_double(f.err[i]) << '\n';
  text << "delta_hat=" << (f.delta_hat ? format_double(*f.delta_hat) : "undefined")
       << " residual=" << format_double(f.residual) << '\n';
  if (f.hypothesis_holds && !*f.hypothesis_holds) text << "note: hypotheses do not hold for this configuration\n";
  o.text = text.str();
  return o;
}

struct LemmaArgs {
  std::string lemma = "all";
  std::uint64_t samples = 1000;
  std::uint64_t R = 50, len = 500, fejer_R = 100;
  std::int64_t m = 2, m2 = 3;
  std::uint64_t H = 1000, n = 10000, r = 3;
  std::size_t k = 6;
  double K = 1e4;
  double t = 0;
};

Outcome cmd_lemmas(const LemmaArgs& a, const Global& g) {
  static const std::vector<std::string> kinds{"fejer", "vdc", "minnorm", "schmidt", "mismatch"};
  if (a.lemma != "all" && std::find(kinds.begin(), kinds.end(), a.lemma) == kinds.end()) {
    throw UsageError("--lemma must be one of all, fejer, vdc, minnorm, schmidt, mismatch");
  }
  if (a.R < 1 || a.len < 1 || a.fejer_R < 1) throw UsageError("--R, --fejer-R and --len must be positive");
  const auto want = [&](const std::string& k) { return a.lemma == "all" || a.lemma == k; };
  std::mt19937_64 rng(g.seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  Outcome o;
  o.result = Json::object();
  std::ostringstream text;

  if (want("fejer")) {
    double worst = 0;
    for (std::uint64_t i = 0; i < a.samples; ++i) {
      const double x = unif(rng);
      const std::uint64_t R = 1 + rng() % a.fejer_R;
      const FejerCheck f = fejer_check(x, R);
      worst = std::max(worst, std::abs(f.lhs - std::complex<double>(f.rhs, 0)));
    }
    const bool ok = worst <= 1e-8;
    if (!ok) o.failures.push_back("Fejer identity off by " + format_double(worst));
    o.result["fejer"] = Json{{"samples", a.samples}, {"max_abs_error", worst}, {"tolerance", 1e-8}, {"holds", ok}};
    text << "fejer: samples=" << a.samples << " max_abs_error=" << format_double(worst) << '\n';
  }
  if (want("vdc")) {
    std::uint64_t violations = 0;
    std::vector<std::complex<double>> seq;
    for (std::uint64_t i = 0; i < a.samples; ++i) {
      seq.resize(1 + rng() % a.len);
      for (auto& z : seq) z = {2 * unif(rng) - 1, 2 * unif(rng) - 1};
      const std::uint64_t R = 1 + rng() % a.R;
      if (!weyl_vdc_check(seq, R).holds) ++violations;
    }
    if (violations != 0) o.failures.push_back(std::to_string(violations) + " van der Corput violations");
    o.result["vdc"] = Json{{"samples", a.samples}, {"violations", std::to_string(violations)}};
    text << "vdc: samples=" << a.samples << " violations=" << violations << '\n';
  }
  if (want("minnorm")) {
    if (a.n < 2) throw UsageError("minnorm needs --n >= 2");
    const MinNormSum s = min_norm_sum(make_alpha(a.m), a.t, 1, static_cast<std::int64_t>(a.n), a.K);
    o.result["minnorm"] = Json{{"m", a.m},           {"t", a.t},        {"interval", Json{1, a.n}},
                               {"K", a.K},           {"lhs", s.lhs},    {"sqrt_k_len", s.sqrt_k_len},
                               {"k_log_len", s.k_log_len}, {"ratio", s.ratio}};
    text << "minnorm: lhs=" << format_double(s.lhs) << " ratio=" << format_double(s.ratio) << '\n';
  }
  if (want("schmidt")) {
    if (a.m == a.m2) throw UsageError("schmidt needs --m != --m2");
    const SchmidtMargin s = schmidt_margin(make_alpha(a.m), make_alpha(a.m2), a.H);
    const bool ok = s.margin > 0;
    if (!ok) o.failures.push_back("Schmidt margin is not positive");
    o.result["schmidt"] = Json{{"m1", a.m},         {"m2", a.m2},           {"H", a.H},
                               {"epsilon", s.epsilon}, {"margin", s.margin}, {"h2", s.h2},
                               {"h4", s.h4},        {"distance", s.distance}, {"error_bound", s.error_bound}};
    text << "schmidt: margin=" << format_double(s.margin) << " at (h2,h4)=(" << s.h2 << "," << s.h4 << ")\n";
  }
  if (want("mismatch")) {
    if (a.k < 2) throw UsageError("mismatch needs --k >= 2");
    const MismatchResult r = mismatch_count(OstrowskiSystem(a.m), a.n, a.k, a.r);
    if (!r.holds) o.failures.push_back("mismatch count exceeds N r / q_{k-1}");
    o.result["mismatch"] = to_json(r);
    text << "mismatch: count=" << r.count << " bound=" << format_double(r.bound()) << '\n';
  }
  o.text = text.str();
  return o;
}

struct VerifyArgs {
  std::vector<std::int64_t> m{1, 2, 3, 5};
  std::string n = "10000";
  std::size_t K = 200;
};

Outcome cmd_verify(const VerifyArgs& a, const Budget& budget) {
  const std::uint64_t limit = parse_count(a.n, "--n");
  if (limit > budget.max_n) throw BudgetExceeded("max_n", "N = " + std::to_string(limit), budget.max_n);
  Outcome o;
  Json checks = Json::array();
  std::ostringstream text;
  const auto record = [&](std::int64_t m, const std::string& name, std::uint64_t failures) {
    checks.push_back(Json{{"m", m}, {"check", name}, {"failures", std::to_string(failures)}});
    text << "m=" << m << ' ' << name << ": " << (failures == 0 ? "ok" : std::to_string(failures) + " failures") << '\n';
    if (failures != 0) o.failures.push_back(name + " for m = " + std::to_string(m));
  };
  for (std::int64_t m : a.m) {
    if (m < 1) throw UsageError("--m values must be positive");
    const OstrowskiSystem sys(m);
    std::uint64_t round_trip = 0, admissible = 0, prefix = 0, odometer = 0;
    Odometer odo(sys, std::uint64_t{0});
    for (std::uint64_t n = 0; n < limit; ++n, odo.next()) {
      const DigitString d = digits_of(n, sys);
      if (value_of(d, sys) != n) ++round_trip;
      if (!validate(d.digits(), sys.params()).ok) ++admissible;
      BigInt partial = 0;
      for (std::size_t j = 0; j < d.size(); ++j) {
        partial += BigInt(d[j]) * sys.q(j);
        if (partial >= sys.q(j + 1)) {
          ++prefix;
          break;
        }
      }
      const auto od = odo.digits();
      if (!std::equal(od.begin(), od.end(), d.digits().begin(), d.digits().end())) ++odometer;
    }
    record(m, "round_trip", round_trip);
    record(m, "admissible", admissible);
    record(m, "prefix_sum", prefix);
    record(m, "odometer_matches_greedy", odometer);

    const AlphaParams params = make_alpha(m);
    const ConvergentTable t = convergents(params, std::max<std::size_t>(a.K, 21));
    std::uint64_t det = 0;
    for (std::size_t i = 0; i < a.K; ++i) {
      if (t.p[i + 1] * t.q[i] - t.p[i] * t.q[i + 1] != (i % 2 == 0 ? 1 : -1)) ++det;
    }
    record(m, "determinant", det);
    std::uint64_t norm = 0;
    for (std::size_t k = 2; k <= 20; ++k) {
      const BZero b = b_zero(params, k);
      const Surd total = b.b1 * t.q[k - 1] + b.b2 * (t.q[k] - t.q[k - 1]);
      if (!(total == Surd::integer(1, params.d))) ++norm;
    }
    record(m, "b_zero_normalization", norm);
  }
  o.result = Json{{"n_limit", std::to_string(limit)}, {"K", a.K}, {"checks", std::move(checks)}};
  o.text = text.str();
  return o;
}

int emit(const Outcome& o, const std::string& command, const CLI::App& sub, const Global& g, std::ostream& out,
         std::ostream& err) {
  std::string payload;
  if (g.format == "json") {
    const Json env{{"command", command},
                   {"config", collect_config(sub, g)},
                   {"seed", std::to_string(g.seed)},
                   {"generated_at", timestamp()},
                   {"status", o.failures.empty() ? "ok" : "invariant_failure"},
                   {"result", o.result}};
    payload = env.dump(2) + "\n";
  } else if (g.format == "csv") {
    if (o.csv.empty()) throw UsageError("--format csv is not available for " + command);
    payload = o.csv;
  } else {
    payload = o.text;
  }
  if (g.output.empty()) {
    out << payload;
  } else {
    std::ofstream file(g.output, std::ios::binary);
    if (!file || !(file << payload)) throw UsageError("cannot write --output " + g.output);
  }
  for (const auto& f : o.failures) err << "invariant failure: " << f << '\n';
  return o.failures.empty() ? kExitOk : kExitInvariant;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Ostrowski numeration for alpha = [0; 1, m, 1, m, ...]: digits, exponential sums, joint counts.",
               "ostrowski"};
  app.require_subcommand(1);
  app.fallthrough();

  Global g;
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"text", "json", "csv"}))->capture_default_str();
  app.add_option("--output", g.output, "Write the report to this file instead of stdout");
  app.add_option("--threads", g.threads, "Worker threads (results do not depend on it)")
      ->check(CLI::Range(1u, 1024u))
      ->capture_default_str();
  app.add_option("--seed", g.seed, "Random seed, recorded in every report")->capture_default_str();
  app.add_flag("--real", g.real, "Accept decimal frequencies (hypotheses unchecked)");

  DigitsArgs da;
  auto* digits = app.add_subcommand("digits", "Ostrowski expansion of n, or the value of a digit string");
  digits->add_option("--m", da.m, "Parameter m >= 1")->required()->check(CLI::PositiveNumber);
  auto* dn = digits->add_option("--n", da.n, "Integer to expand");
  auto* dd = digits->add_option("--digits", da.digits, "Digits, least significant first (e.g. 0,2,0,2)");
  dn->excludes(dd);
  digits->add_option("--k", da.k, "Also print the digit sum below index k");

  std::int64_t cm = 0;
  std::size_t cK = 9;
  auto* conv = app.add_subcommand("convergents", "Convergent denominators q_0..q_K and growth rate");
  conv->add_option("--m", cm, "Parameter m >= 1")->required()->check(CLI::PositiveNumber);
  conv->add_option("--K", cK, "Largest index")->check(CLI::Range(std::size_t{1}, std::size_t{100000}))->capture_default_str();

  CountArgs ca;
  auto* count = app.add_subcommand("count", "Joint residue counts of (S_1 mod b1, S_2 mod b2) over n < N");
  count->add_option("--m1", ca.m1)->check(CLI::PositiveNumber)->capture_default_str();
  count->add_option("--m2", ca.m2)->check(CLI::PositiveNumber)->capture_default_str();
  count->add_option("--b1", ca.b1)->required();
  count->add_option("--b2", ca.b2)->required();
  count->add_option("--n", ca.n, "N (integers or 1e6 shorthand)")->required();
  count->add_option("--a1", ca.a1, "Report this residue cell");
  count->add_option("--a2", ca.a2);

  ExpSumArgs ea;
  auto* expsum = app.add_subcommand("expsum", "Joint exponential sums sum_{n<N} e(theta S_1(n) + beta S_2(n))");
  expsum->add_option("--m1", ea.m1)->check(CLI::PositiveNumber)->capture_default_str();
  expsum->add_option("--m2", ea.m2)->check(CLI::PositiveNumber)->capture_default_str();
  expsum->add_option("--theta", ea.theta, "Rational p/q")->required();
  expsum->add_option("--beta", ea.beta, "Rational p/q")->required();
  auto* en = expsum->add_option("--n", ea.n);
  expsum->add_option("--grid", ea.grid, "Comma-separated N values")->delimiter(',')->excludes(en);

  DecayArgs dea;
  auto* decay = app.add_subcommand("decay", "Single-system decay D_k of normalized sums over [0, q_k)");
  decay->add_option("--m", dea.m)->check(CLI::PositiveNumber)->capture_default_str();
  decay->add_option("--gamma", dea.gamma)->capture_default_str();
  decay->add_option("--theta", dea.theta)->capture_default_str();
  decay->add_option("--k", dea.kmax, "Largest k")->capture_default_str();
  decay->add_option("--kmin", dea.kmin)->capture_default_str();

  DftArgs fa;
  auto* dft = app.add_subcommand("dft", "Fourier coefficients of one V block, with reconstruction check");
  dft->add_option("--m", fa.m)->check(CLI::PositiveNumber)->capture_default_str();
  dft->add_option("--k", fa.k)->required();
  dft->add_option("--v", fa.v)->required()->check(CLI::PositiveNumber);
  dft->add_option("--theta", fa.theta, "Rational p/q")->required();

  ScanArgs sa;
  auto* scan = app.add_subcommand("scan", "Error series over an N grid and fitted exponent delta_hat");
  scan->add_option("--mode", sa.mode, "theorem | corollary")->capture_default_str();
  scan->add_option("--m1", sa.m1)->check(CLI::PositiveNumber)->capture_default_str();
  scan->add_option("--m2", sa.m2)->check(CLI::PositiveNumber)->capture_default_str();
  scan->add_option("--theta", sa.theta)->capture_default_str();
  scan->add_option("--beta", sa.beta)->capture_default_str();
  scan->add_option("--b1", sa.b1)->capture_default_str();
  scan->add_option("--b2", sa.b2)->capture_default_str();
  scan->add_option("--grid", sa.grid)->delimiter(',')->capture_default_str();

  LemmaArgs la;
  auto* lemmas = app.add_subcommand("lemmas", "Numerical checks of the auxiliary inequalities");
  lemmas->add_option("--lemma", la.lemma, "all | fejer | vdc | minnorm | schmidt | mismatch")->capture_default_str();
  lemmas->add_option("--samples", la.samples, "Random cases for fejer and vdc")->capture_default_str();
  lemmas->add_option("--fejer-R", la.fejer_R, "Largest R for fejer")->capture_default_str();
  lemmas->add_option("--R", la.R, "Largest R for vdc")->capture_default_str();
  lemmas->add_option("--len", la.len, "Longest sequence for vdc")->capture_default_str();
  lemmas->add_option("--m", la.m)->check(CLI::PositiveNumber)->capture_default_str();
  lemmas->add_option("--m2", la.m2, "Second system for schmidt")->check(CLI::PositiveNumber)->capture_default_str();
  lemmas->add_option("--H", la.H)->check(CLI::PositiveNumber)->capture_default_str();
  lemmas->add_option("--n", la.n, "N for mismatch, interval end for minnorm")->capture_default_str();
  lemmas->add_option("--k", la.k)->capture_default_str();
  lemmas->add_option("--r", la.r)->capture_default_str();
  lemmas->add_option("--K", la.K, "Cap inside min(K, ||.||^-2)")->capture_default_str();
  lemmas->add_option("--t", la.t, "Shift for minnorm")->capture_default_str();

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "Representation and exact-identity invariants");
  verify->add_option("--m", va.m, "Comma-separated m values")->delimiter(',')->capture_default_str();
  verify->add_option("--n", va.n, "Check every n below this")->capture_default_str();
  verify->add_option("--K", va.K, "Determinant identity up to this index")->capture_default_str();

  const auto usage = [&](const std::string& message) {
    err << "error: " << message << "\n\n";
    const auto subs = app.get_subcommands();
    err << (subs.empty() ? app.help() : subs.front()->help());
    return kExitUsage;
  };

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    const auto subs = app.get_subcommands();
    out << (subs.empty() ? app.help() : subs.front()->help());
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    return usage(e.what());
  }

  const Budget budget = Budget::from_env();
  Frequencies freq(g, err);
  CLI::App* sub = app.get_subcommands().front();
  const std::string name = sub->get_name();
  try {
    Outcome o;
    if (name == "digits") {
      if (da.n.empty() && da.digits.empty()) return usage("digits needs --n or --digits");
      o = cmd_digits(da);
    } else if (name == "convergents") {
      o = cmd_convergents(cm, cK);
    } else if (name == "count") {
      o = cmd_count(ca, g, budget);
    } else if (name == "expsum") {
      o = cmd_expsum(ea, g, freq, budget);
    } else if (name == "decay") {
      o = cmd_decay(dea, freq, budget);
    } else if (name == "dft") {
      o = cmd_dft(fa, freq, budget);
    } else if (name == "scan") {
      o = cmd_scan(sa, g, freq, budget);
    } else if (name == "lemmas") {
      o = cmd_lemmas(la, g);
    } else {
      o = cmd_verify(va, budget);
    }
    return emit(o, name, *sub, g, out, err);
  } catch (const BudgetExceeded& e) {
    err << "error: " << e.what() << '\n';
    if (std::string(e.what()).find("max_n") != std::string::npos) err << "(OSTROWSKI_BUDGET raises max_n)\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    return usage(e.what());
  } catch (const std::exception& e) {
    err << "invariant failure: " << e.what() << '\n';
    return kExitInvariant;
  }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv{"ostrowski"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace ostrowski::cli
