#ifndef COMPLAB_WEIGHTS_HPP_
#define COMPLAB_WEIGHTS_HPP_

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "complab/geometry.hpp"
#include "complab/rng.hpp"

namespace complab {

// Closed lattice rectangle [x_lo,x_hi] x [y_lo,y_hi].
struct Rect {
  int x_lo = 0, x_hi = 0, y_lo = 0, y_hi = 0;

  bool contains(int x, int y) const { return x >= x_lo && x <= x_hi && y >= y_lo && y <= y_hi; }
  long long width() const { return static_cast<long long>(x_hi) - x_lo + 1; }
  long long height() const { return static_cast<long long>(y_hi) - y_lo + 1; }
  long long area() const { return width() * height(); }
};

// Stored i.i.d. Exp(1) weights over a box.
struct WeightField {
  Rect box;
  std::vector<double> values;  // row-major: y outer ascending, x inner ascending

  double at(int x, int y) const {
    if (!box.contains(x, y)) throw std::out_of_range("weight field does not cover the requested site");
    return values[static_cast<size_t>(y - box.y_lo) * static_cast<size_t>(box.width()) +
                  static_cast<size_t>(x - box.x_lo)];
  }
};

// Fills the box row by row (y ascending, then x ascending) with Exp(1) draws.
WeightField sample_weights(const Rect& box, Rng& rng);

// Random-access weight source: either a stored field or hash-addressed draws
// keyed by a stream seed. Both give the same site an identical value on every
// call, so sweep order never matters.
class WeightSource {
 public:
  static WeightSource stored(const WeightField& field) {
    WeightSource s;
    s.field_ = &field;
    return s;
  }
  static WeightSource hashed(std::uint64_t key) {
    WeightSource s;
    s.key_ = key;
    return s;
  }

  double operator()(int x, int y) const {
    return field_ ? field_->at(x, y) : hashed_exp1(key_, x, y);
  }

 private:
  const WeightField* field_ = nullptr;
  std::uint64_t key_ = 0;
};

}  // namespace complab

#endif  // COMPLAB_WEIGHTS_HPP_
