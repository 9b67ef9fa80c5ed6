#pragma once

#include <cstdint>
#include <optional>
#include <vector>

namespace z2f {

// Sparse linear algebra over GF(2). Rows are sorted index lists; xor-merge
// keeps elimination cheap on incidence-like systems.
class GF2System {
  public:
    explicit GF2System(int n_vars) : n_vars_(n_vars) {}

    // add equation: sum of vars == rhs (mod 2); vars need not be sorted
    void add_equation(std::vector<int> vars, int rhs);
    // pin a single variable to a value
    void pin(int var, int value) { add_equation({var}, value); }

    int n_vars() const { return n_vars_; }

    // One solution, or nullopt if inconsistent. Free variables are set to 0.
    std::optional<std::vector<uint8_t>> solve() const;

  private:
    int n_vars_;
    std::vector<std::pair<std::vector<int>, int>> eqs_;
};

}  // namespace z2f
