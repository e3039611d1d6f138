#include "ostrowski/digits.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "ostrowski/odometer.hpp"

namespace ostrowski {
namespace {

// Enough indices for q_K to exceed 2^256.
std::size_t default_table_size(const AlphaParams& params) {
  const double log_phi = std::log(params.phi.to_double());
  return static_cast<std::size_t>(std::ceil(2.0 * 256.0 * std::log(2.0) / log_phi)) + 4;
}

void trim(std::vector<Digit>& eps) {
  while (!eps.empty() && eps.back() == 0) eps.pop_back();
}

void check_admissible(const std::vector<Digit>& eps, const AlphaParams& params) {
  const ValidationReport report = validate(eps, params);
  if (!report.ok) throw std::logic_error("digits_of produced an inadmissible string: " + report.describe());
}

}  // namespace

OstrowskiSystem::OstrowskiSystem(std::int64_t m) : OstrowskiSystem(make_alpha(m)) {}

OstrowskiSystem::OstrowskiSystem(AlphaParams params)
    : table_(convergents(params, default_table_size(params))) {
  for (const BigInt& q : table_.q) {
    const auto v = to_u64(q);
    if (!v) break;
    q64_.push_back(*v);
  }
}

BigInt OstrowskiSystem::q(std::size_t i) const {
  if (i <= table_.max_index()) return table_.q[i];
  return convergents(table_.params, i).q[i];
}

std::optional<std::uint64_t> OstrowskiSystem::q_u64(std::size_t i) const {
  if (i < q64_.size()) return q64_[i];
  return std::nullopt;
}

DigitString::DigitString(std::vector<Digit> eps) : eps_(std::move(eps)) { trim(eps_); }

DigitString DigitString::from_raw(std::vector<Digit> eps, const AlphaParams& params) {
  const ValidationReport report = validate(eps, params);
  if (!report.ok) throw std::invalid_argument("inadmissible digit string: " + report.describe());
  return DigitString(std::move(eps));
}

std::string ValidationReport::describe() const {
  std::ostringstream os;
  switch (violation) {
    case Violation::none: return "admissible";
    case Violation::lowest_digit_nonzero: os << "digit 0 must be 0"; break;
    case Violation::digit_exceeds_quotient: os << "digit " << index << " exceeds its partial quotient"; break;
    case Violation::markov: os << "digit " << index << " is at its cap but digit " << index - 1 << " is nonzero"; break;
  }
  return os.str();
}

ValidationReport validate(std::span<const Digit> eps, const AlphaParams& params) {
  for (std::size_t i = 0; i < eps.size(); ++i) {
    if (i == 0) {
      if (eps[0] != 0) return {false, Violation::lowest_digit_nonzero, 0};
      continue;
    }
    const Digit cap = params.digit_cap(i);
    if (eps[i] > cap) return {false, Violation::digit_exceeds_quotient, i};
    if (eps[i] == cap && eps[i - 1] != 0) return {false, Violation::markov, i};
  }
  return {};
}

DigitString digits_of(std::uint64_t n, const OstrowskiSystem& sys) {
  std::size_t top = 1;
  while (true) {
    const auto next = sys.q_u64(top + 1);
    if (!next || *next > n) break;
    ++top;
  }
  std::vector<Digit> eps(top + 1, 0);
  std::uint64_t rem = n;
  for (std::size_t i = top; i >= 1; --i) {
    const std::uint64_t qi = *sys.q_u64(i);
    const std::uint64_t e = std::min<std::uint64_t>(rem / qi, sys.digit_cap(i));
    eps[i] = static_cast<Digit>(e);
    rem -= e * qi;
  }
  if (rem != 0) throw std::logic_error("digits_of: greedy expansion left a remainder");
  check_admissible(eps, sys.params());
  return DigitString(std::move(eps));
}

DigitString digits_of(const BigInt& n, const OstrowskiSystem& sys) {
  if (n < 0) throw std::invalid_argument("digits_of: n must be nonnegative");
  if (const auto small = to_u64(n)) return digits_of(*small, sys);

  const ConvergentTable* table = &sys.table();
  std::optional<ConvergentTable> extended;
  if (table->q.back() <= n) {
    std::size_t K = table->max_index();
    do {
      K *= 2;
      extended = convergents(sys.params(), K);
    } while (extended->q.back() <= n);
    table = &*extended;
  }
  std::size_t top = 1;
  while (table->q[top + 1] <= n) ++top;

  std::vector<Digit> eps(top + 1, 0);
  BigInt rem = n;
  for (std::size_t i = top; i >= 1; --i) {
    const BigInt e = std::min<BigInt>(rem / table->q[i], BigInt(sys.digit_cap(i)));
    eps[i] = static_cast<Digit>(e);
    rem -= e * table->q[i];
  }
  if (rem != 0) throw std::logic_error("digits_of: greedy expansion left a remainder");
  check_admissible(eps, sys.params());
  return DigitString(std::move(eps));
}

BigInt value_of(const DigitString& digits, const OstrowskiSystem& sys) {
  BigInt v = 0;
  const auto eps = digits.digits();
  for (std::size_t i = 0; i < eps.size(); ++i) {
    if (eps[i] != 0) v += sys.q(i) * eps[i];
  }
  return v;
}

BigInt value_of(std::span<const Digit> eps, const OstrowskiSystem& sys) {
  return value_of(DigitString::from_raw({eps.begin(), eps.end()}, sys.params()), sys);
}

std::uint64_t digit_sum(const BigInt& n, const OstrowskiSystem& sys) {
  return digit_sum_trunc(n, sys, std::numeric_limits<std::size_t>::max());
}

std::uint64_t digit_sum_trunc(const BigInt& n, const OstrowskiSystem& sys, std::size_t k) {
  const DigitString ds = digits_of(n, sys);
  std::uint64_t s = 0;
  const auto eps = ds.digits();
  for (std::size_t i = 0; i < eps.size() && i < k; ++i) s += eps[i];
  return s;
}

BigInt truncate(const BigInt& n, const OstrowskiSystem& sys, std::size_t k) {
  const DigitString ds = digits_of(n, sys);
  BigInt t = 0;
  const auto eps = ds.digits();
  for (std::size_t i = 0; i < eps.size() && i < k; ++i) {
    if (eps[i] != 0) t += sys.q(i) * eps[i];
  }
  return t;
}

std::string serialize_digits(std::span<const Digit> eps) {
  if (eps.empty()) return "0";
  std::string out;
  for (std::size_t i = 0; i < eps.size(); ++i) {
    if (i != 0) out += ',';
    out += std::to_string(eps[i]);
  }
  return out;
}

std::vector<Digit> parse_digits(const std::string& text) {
  std::vector<Digit> eps;
  std::stringstream ss(text);
  std::string field;
  while (std::getline(ss, field, ',')) {
    const auto first = field.find_first_not_of(" \t");
    const auto last = field.find_last_not_of(" \t");
    if (first == std::string::npos) throw std::invalid_argument("empty digit in '" + text + "'");
    field = field.substr(first, last - first + 1);
    if (field.find_first_not_of("0123456789") != std::string::npos)
      throw std::invalid_argument("bad digit '" + field + "'");
    const unsigned long v = std::stoul(field);
    if (v > std::numeric_limits<Digit>::max()) throw std::invalid_argument("digit out of range: " + field);
    eps.push_back(static_cast<Digit>(v));
  }
  if (eps.empty()) throw std::invalid_argument("no digits in '" + text + "'");
  return eps;
}

VSequence v_sequence(const OstrowskiSystem& sys, std::size_t k, std::size_t count) {
  if (k < 2) throw std::invalid_argument("v_sequence: k must be >= 2");
  VSequence seq;
  seq.k = k;
  if (count == 0) return seq;
  std::vector<Digit> eps;
  seq.n.emplace_back(0);
  while (seq.n.size() < count) {
    advance_digits(eps, sys.params(), k);
    BigInt v = 0;
    for (std::size_t i = k; i < eps.size(); ++i) {
      if (eps[i] != 0) v += sys.q(i) * eps[i];
    }
    seq.gap.push_back(v - seq.n.back());
    seq.n.push_back(std::move(v));
  }
  return seq;
}

}  // namespace ostrowski
