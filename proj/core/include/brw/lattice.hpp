#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace brw {

using LatticePoint = std::vector<std::int32_t>;

enum class BoundaryPolicy {
  // A move off the window aborts the trajectory with BoundaryExit status.
  Error,
  // The moving particle is killed; the trajectory is flagged but continues.
  KillWithFlag,
};

// Finite cubic window of Z^d, centered so the origin is (approximately)
// in the middle: coordinates run over [-side/2, side-1-side/2] per axis.
// Points are indexed row-major into [0, side^d).
class LatticeWindow {
 public:
  LatticeWindow(int dimension, int side,
                BoundaryPolicy policy = BoundaryPolicy::Error);

  int dimension() const noexcept { return d_; }
  int side() const noexcept { return side_; }
  BoundaryPolicy boundary_policy() const noexcept { return policy_; }
  std::int64_t size() const noexcept { return size_; }

  // Low corner per axis (same for every axis): -floor(side/2).
  std::int32_t low() const noexcept { return low_; }
  std::int32_t high() const noexcept { return low_ + side_ - 1; }

  bool contains(const LatticePoint& p) const;

  // Row-major index; throws std::domain_error for points outside the window.
  std::int64_t index(const LatticePoint& p) const;
  LatticePoint unindex(std::int64_t idx) const;
  std::int64_t origin_index() const noexcept { return origin_index_; }

  // Index-space neighbor along one axis: returns -1 if the step leaves the
  // window. axis in [0,d), dir is +1 or -1. Hot path for the engine.
  std::int64_t neighbor_index(std::int64_t idx, int axis, int dir) const;

  std::string describe() const;

 private:
  int d_;
  int side_;
  BoundaryPolicy policy_;
  std::int32_t low_;
  std::int64_t size_;
  std::int64_t origin_index_;
  std::vector<std::int64_t> strides_;  // strides_[axis], row-major
};

// All 2d lattice neighbors of p (L1 distance 1), including points outside
// the window; boundary handling is the caller's job via the window policy.
std::vector<LatticePoint> neighbors(const LatticePoint& p,
                                    const LatticeWindow& w);

}  // namespace brw
