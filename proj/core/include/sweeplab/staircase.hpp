#pragma once

#include <cstddef>
#include <vector>

#include "sweeplab/rational.hpp"

namespace sweeplab {

// Simple function on [0,1]. Piece i (1-based) is [breaks[i-1], breaks[i])
// with value values[i-1]; x = 1 takes the last piece's value, so every sample
// point (x, value_at(x)) lies on the graph.
class Staircase {
 public:
  Staircase(std::vector<Rational> breaks, std::vector<Rational> values);

  static Staircase constant(const Rational& c);

  const std::vector<Rational>& breaks() const { return breaks_; }
  const std::vector<Rational>& values() const { return values_; }
  std::size_t pieces() const { return values_.size(); }

  // Index of the piece whose interval contains x. Requires 0 <= x <= 1.
  std::size_t piece_index(const Rational& x) const;
  const Rational& value_at(const Rational& x) const;

  bool operator==(const Staircase& o) const {
    return breaks_ == o.breaks_ && values_ == o.values_;
  }

 private:
  std::vector<Rational> breaks_;
  std::vector<Rational> values_;
};

}  // namespace sweeplab
