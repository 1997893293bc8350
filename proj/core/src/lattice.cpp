#include "brw/lattice.hpp"

#include <limits>
#include <stdexcept>

namespace brw {

LatticeWindow::LatticeWindow(int dimension, int side, BoundaryPolicy policy)
    : d_(dimension), side_(side), policy_(policy) {
  if (d_ < 1) throw std::invalid_argument("lattice dimension must be >= 1");
  if (side_ < 3) throw std::invalid_argument("lattice side must be >= 3");
  low_ = -(side_ / 2);

  size_ = 1;
  strides_.assign(static_cast<std::size_t>(d_), 1);
  for (int axis = d_ - 1; axis >= 0; --axis) {
    strides_[static_cast<std::size_t>(axis)] = size_;
    if (size_ > std::numeric_limits<std::int64_t>::max() / side_)
      throw std::invalid_argument("lattice window too large: side^d overflows");
    size_ *= side_;
  }

  origin_index_ = 0;
  for (int axis = 0; axis < d_; ++axis)
    origin_index_ += static_cast<std::int64_t>(-low_) *
                     strides_[static_cast<std::size_t>(axis)];
}

bool LatticeWindow::contains(const LatticePoint& p) const {
  if (static_cast<int>(p.size()) != d_) return false;
  for (std::int32_t c : p)
    if (c < low_ || c > high()) return false;
  return true;
}

std::int64_t LatticeWindow::index(const LatticePoint& p) const {
  if (static_cast<int>(p.size()) != d_)
    throw std::domain_error("point dimension does not match window");
  std::int64_t idx = 0;
  for (int axis = 0; axis < d_; ++axis) {
    std::int32_t c = p[static_cast<std::size_t>(axis)];
    if (c < low_ || c > high())
      throw std::domain_error("point outside lattice window");
    idx += static_cast<std::int64_t>(c - low_) *
           strides_[static_cast<std::size_t>(axis)];
  }
  return idx;
}

LatticePoint LatticeWindow::unindex(std::int64_t idx) const {
  if (idx < 0 || idx >= size_)
    throw std::domain_error("lattice index out of range");
  LatticePoint p(static_cast<std::size_t>(d_));
  for (int axis = 0; axis < d_; ++axis) {
    std::int64_t s = strides_[static_cast<std::size_t>(axis)];
    p[static_cast<std::size_t>(axis)] = static_cast<std::int32_t>(idx / s) + low_;
    idx %= s;
  }
  return p;
}

std::int64_t LatticeWindow::neighbor_index(std::int64_t idx, int axis,
                                           int dir) const {
  std::int64_t s = strides_[static_cast<std::size_t>(axis)];
  std::int64_t coord = (idx / s) % side_;
  coord += dir;
  if (coord < 0 || coord >= side_) return -1;
  return idx + dir * s;
}

std::string LatticeWindow::describe() const {
  return "Z^" + std::to_string(d_) + " window, side " + std::to_string(side_) +
         ", coords [" + std::to_string(low_) + "," + std::to_string(high()) +
         "]";
}

std::vector<LatticePoint> neighbors(const LatticePoint& p,
                                    const LatticeWindow& w) {
  if (!w.contains(p)) throw std::domain_error("point outside lattice window");
  std::vector<LatticePoint> out;
  out.reserve(static_cast<std::size_t>(2 * w.dimension()));
  for (int axis = 0; axis < w.dimension(); ++axis) {
    for (int dir : {-1, +1}) {
      LatticePoint q = p;
      q[static_cast<std::size_t>(axis)] += dir;
      out.push_back(std::move(q));
    }
  }
  return out;
}

}  // namespace brw
