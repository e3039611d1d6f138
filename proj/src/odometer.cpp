#include "ostrowski/odometer.hpp"

#include <algorithm>

namespace ostrowski {

std::int64_t advance_digits(std::vector<Digit>& eps, const AlphaParams& params, std::size_t lowest) {
  auto at = [&eps](std::size_t i) -> Digit { return i < eps.size() ? eps[i] : 0; };
  std::size_t i = std::max<std::size_t>(lowest, 1);
  while (!(at(i) < params.digit_cap(i) && at(i + 1) != params.digit_cap(i + 1))) ++i;

  std::int64_t delta = 1;
  for (std::size_t j = lowest; j < i && j < eps.size(); ++j) {
    delta -= eps[j];
    eps[j] = 0;
  }
  if (i >= eps.size()) eps.resize(i + 1, 0);
  ++eps[i];
  return delta;
}

Odometer::Odometer(const OstrowskiSystem& sys, const BigInt& start) : params_(&sys.params()), n_(start) {
  const DigitString ds = digits_of(start, sys);
  eps_.assign(ds.digits().begin(), ds.digits().end());
  top_ = eps_.size();
  // next() starts probing at index 1, so even zero needs indices 1 and 2 present.
  eps_.resize(std::max<std::size_t>(top_, 1) + 2, 0);
  for (Digit e : eps_) sum_ += e;
}

Odometer::Odometer(const OstrowskiSystem& sys, std::uint64_t start) : Odometer(sys, BigInt(start)) {}

void Odometer::next() {
  const AlphaParams& p = *params_;
  std::size_t i = 1;
  // eps_ always holds at least two zero digits past top_, so i + 1 stays in range.
  while (!(eps_[i] < p.digit_cap(i) && eps_[i + 1] != p.digit_cap(i + 1))) ++i;
  for (std::size_t j = 1; j < i; ++j) {
    sum_ -= eps_[j];
    eps_[j] = 0;
  }
  ++eps_[i];
  ++sum_;
  if (i >= top_) {
    top_ = i + 1;
    if (eps_.size() < top_ + 2) eps_.resize(top_ + 2, 0);
  }
  ++n_;
}

std::uint64_t Odometer::digit_sum_below(std::size_t k) const {
  std::uint64_t s = 0;
  for (std::size_t i = 0; i < k && i < top_; ++i) s += eps_[i];
  return s;
}

}  // namespace ostrowski
