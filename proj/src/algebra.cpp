#include "locind/algebra.hpp"

#include <random>

namespace locind {

AlgPtr FiniteAlgebra::matrix_algebra(int k, const std::string& label) {
  require(k >= 1, "matrix algebra needs a positive size");
  auto a = std::make_shared<FiniteAlgebra>();
  a->block_sizes = {k};
  a->label = label.empty() ? ("M" + std::to_string(k)) : label;
  a->validate();
  return a;
}

AlgPtr FiniteAlgebra::direct_sum(const std::vector<int>& ks,
                                 const std::string& label) {
  require(!ks.empty(), "direct sum needs at least one block");
  auto a = std::make_shared<FiniteAlgebra>();
  a->block_sizes = ks;
  if (label.empty()) {
    std::string s;
    for (size_t i = 0; i < ks.size(); ++i) {
      if (i) s += "+";
      s += "M" + std::to_string(ks[i]);
    }
    a->label = s;
  } else {
    a->label = label;
  }
  a->validate();
  return a;
}

AlgPtr FiniteAlgebra::kernel_algebra(SpacePtr space, int fiber_dim) {
  require(space != nullptr, "kernel algebra needs a space");
  require(fiber_dim >= 1, "kernel algebra needs a positive fiber dimension");
  auto a = std::make_shared<FiniteAlgebra>();
  a->block_sizes = {fiber_dim * space->n_points};
  a->fiber_dim = fiber_dim;
  a->label = "kernels(" + space->label + ")";
  a->space = std::move(space);
  a->validate();
  return a;
}

AlgPtr FiniteAlgebra::matrix_over(const AlgPtr& base, int k) {
  require(base != nullptr, "matrix_over needs a base algebra");
  require(k >= 1, "matrix_over needs a positive size");
  auto a = std::make_shared<FiniteAlgebra>();
  for (int kb : base->block_sizes) a->block_sizes.push_back(k * kb);
  a->space = base->space;
  a->fiber_dim = k * base->fiber_dim;
  a->label = "M" + std::to_string(k) + "(" + base->label + ")";
  a->validate();
  return a;
}

void FiniteAlgebra::validate() const {
  require(!block_sizes.empty(), "algebra needs at least one block");
  for (int k : block_sizes) require(k >= 1, "block sizes must be positive");
  if (space != nullptr) {
    require(fiber_dim >= 1, "fiber dimension must be positive");
    for (int k : block_sizes)
      require(k % space->n_points == 0,
              "block sizes must be a multiple of the point count");
  }
  // spot-check associativity of unit multiplication
  std::mt19937_64 rng(7);
  auto units = unit_basis();
  std::uniform_int_distribution<size_t> pick(0, units.size() - 1);
  auto mul = [&](const AlgebraUnit& x, const AlgebraUnit& y)
      -> std::pair<bool, AlgebraUnit> {
    if (x.block != y.block || x.col != y.row) return {false, {}};
    return {true, AlgebraUnit{x.block, x.row, y.col}};
  };
  for (int t = 0; t < 16; ++t) {
    AlgebraUnit x = units[pick(rng)], y = units[pick(rng)], z = units[pick(rng)];
    auto xy = mul(x, y);
    auto lhs = xy.first ? mul(xy.second, z) : std::pair<bool, AlgebraUnit>{false, {}};
    auto yz = mul(y, z);
    auto rhs = yz.first ? mul(x, yz.second) : std::pair<bool, AlgebraUnit>{false, {}};
    check_internal(lhs.first == rhs.first &&
                       (!lhs.first || lhs.second == rhs.second),
                   "unit multiplication must be associative");
  }
}

}  // namespace locind
