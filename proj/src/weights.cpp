#include "complab/weights.hpp"

namespace complab {

WeightField sample_weights(const Rect& box, Rng& rng) {
  if (box.x_hi < box.x_lo || box.y_hi < box.y_lo)
    throw std::invalid_argument("weight box must be non-empty");
  WeightField field;
  field.box = box;
  field.values.reserve(static_cast<size_t>(box.area()));
  for (int y = box.y_lo; y <= box.y_hi; ++y)
    for (int x = box.x_lo; x <= box.x_hi; ++x) field.values.push_back(rng.exp1());
  return field;
}

}  // namespace complab
