#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/rational.hpp>
#include <map>
#include <set>
#include <vector>

namespace z2f {

using BigInt = boost::multiprecision::cpp_int;
using Rat = boost::rational<BigInt>;

inline double rat_to_double(const Rat& r) {
    return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}

// Sparse integer matrix, row maps plus column occupancy index. Entries are
// arbitrary-precision so eliminations never overflow.
class SparseZ {
  public:
    SparseZ(int rows, int cols) : nrows_(rows), ncols_(cols), rows_(rows), cols_(cols) {}

    int rows() const { return nrows_; }
    int cols() const { return ncols_; }

    void set(int i, int j, const BigInt& v);
    void add(int i, int j, const BigInt& v);
    BigInt get(int i, int j) const;
    const std::map<int, BigInt>& row(int i) const { return rows_[i]; }
    const std::set<int>& col(int j) const { return cols_[j]; }
    long long nnz() const;

    // row_i += f * row_k
    void axpy_row(int i, int k, const BigInt& f);
    // col_j += f * col_k
    void axpy_col(int j, int k, const BigInt& f);

  private:
    int nrows_, ncols_;
    std::vector<std::map<int, BigInt>> rows_;
    std::vector<std::set<int>> cols_;
};

struct SmithSummary {
    int rank = 0;
    std::vector<BigInt> factors;  // invariant factors > 1, divisibility chain order
};

// Diagonalize by integer row/column operations; returns rank and the
// nontrivial invariant factors. Destroys A.
SmithSummary smith_invariants(SparseZ A);

// Integer basis of ker(A) (right kernel), content-reduced per vector.
// Vectors are sparse (index, value) lists; count = cols - rank.
std::vector<std::vector<std::pair<int, BigInt>>> integer_kernel(SparseZ A);

// Dense Smith normal form with unimodular transforms U*A*V = S, for the
// small pairing matrices in cocycle extraction.
struct DenseSmith {
    std::vector<std::vector<BigInt>> S, U, V;
    int rank = 0;
};
DenseSmith smith_with_transforms(std::vector<std::vector<BigInt>> A);

// Determinant by Bareiss elimination (small dense matrices).
BigInt determinant(std::vector<std::vector<BigInt>> A);

}  // namespace z2f
