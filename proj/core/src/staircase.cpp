#include "sweeplab/staircase.hpp"

#include <algorithm>
#include <stdexcept>

namespace sweeplab {

Staircase::Staircase(std::vector<Rational> breaks, std::vector<Rational> values)
    : breaks_(std::move(breaks)), values_(std::move(values)) {
  if (values_.empty() || breaks_.size() != values_.size() + 1)
    throw std::invalid_argument("Staircase: need k+1 breaks for k pieces");
  if (breaks_.front() != 0 || breaks_.back() != 1)
    throw std::invalid_argument("Staircase: domain must be exactly [0,1]");
  for (std::size_t i = 1; i < breaks_.size(); ++i)
    if (!(breaks_[i - 1] < breaks_[i]))
      throw std::invalid_argument("Staircase: breaks must be strictly increasing");
}

Staircase Staircase::constant(const Rational& c) {
  return Staircase({Rational(0), Rational(1)}, {c});
}

std::size_t Staircase::piece_index(const Rational& x) const {
  if (x < 0 || x > 1) throw std::invalid_argument("Staircase: x outside [0,1]");
  auto it = std::upper_bound(breaks_.begin(), breaks_.end(), x);
  std::size_t i = static_cast<std::size_t>(it - breaks_.begin());
  if (i == breaks_.size()) return values_.size() - 1;  // x == 1
  return i - 1;
}

const Rational& Staircase::value_at(const Rational& x) const {
  return values_[piece_index(x)];
}

}  // namespace sweeplab
