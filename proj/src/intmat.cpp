#include "z2f/intmat.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>

namespace z2f {

void SparseZ::set(int i, int j, const BigInt& v) {
    auto it = rows_[i].find(j);
    if (v == 0) {
        if (it != rows_[i].end()) {
            rows_[i].erase(it);
            cols_[j].erase(i);
        }
        return;
    }
    if (it == rows_[i].end()) {
        rows_[i].emplace(j, v);
        cols_[j].insert(i);
    } else {
        it->second = v;
    }
}

void SparseZ::add(int i, int j, const BigInt& v) {
    if (v == 0) return;
    auto it = rows_[i].find(j);
    if (it == rows_[i].end()) {
        rows_[i].emplace(j, v);
        cols_[j].insert(i);
    } else {
        it->second += v;
        if (it->second == 0) {
            rows_[i].erase(it);
            cols_[j].erase(i);
        }
    }
}

BigInt SparseZ::get(int i, int j) const {
    auto it = rows_[i].find(j);
    return it == rows_[i].end() ? BigInt(0) : it->second;
}

long long SparseZ::nnz() const {
    long long n = 0;
    for (const auto& r : rows_) n += (long long)r.size();
    return n;
}

void SparseZ::axpy_row(int i, int k, const BigInt& f) {
    if (f == 0) return;
    std::vector<std::pair<int, BigInt>> updates(rows_[k].begin(), rows_[k].end());
    for (auto& [j, v] : updates) add(i, j, f * v);
}

void SparseZ::axpy_col(int j, int k, const BigInt& f) {
    if (f == 0) return;
    std::vector<int> rows_k(cols_[k].begin(), cols_[k].end());
    for (int i : rows_k) add(i, j, f * get(i, k));
}

namespace {

// Pivot choice: smallest magnitude first (units preferred), then Markowitz
// fill estimate, then position for determinism. Scans the sparsest rows only.
struct Pivot {
    int i = -1, j = -1;
};

Pivot choose_pivot(const SparseZ& A, const std::vector<char>& row_done,
                   const std::vector<char>& col_done) {
    Pivot best;
    BigInt best_mag = 0;
    long long best_cost = 0;
    std::vector<std::pair<size_t, int>> cand;
    for (int i = 0; i < A.rows(); ++i) {
        if (row_done[i] || A.row(i).empty()) continue;
        size_t live = 0;
        for (const auto& [j, v] : A.row(i))
            if (!col_done[j]) ++live;
        if (live) cand.push_back({live, i});
    }
    std::sort(cand.begin(), cand.end());
    int inspected = 0;
    for (auto& [sz, i] : cand) {
        if (best.i >= 0 && best_mag == 1 && inspected >= 24) break;
        ++inspected;
        for (const auto& [j, v] : A.row(i)) {
            if (col_done[j]) continue;
            BigInt mag = abs(v);
            long long cost = (long long)(sz - 1) * (long long)(A.col(j).size() - 1);
            bool better = false;
            if (best.i < 0)
                better = true;
            else if (mag != best_mag)
                better = mag < best_mag;
            else
                better = cost < best_cost;
            if (better) {
                best = {i, j};
                best_mag = mag;
                best_cost = cost;
            }
        }
    }
    return best;
}

// Reduce the diagonal multiset to a divisibility chain; the invariant
// factors of a diagonal matrix follow from pairwise gcd/lcm exchanges.
std::vector<BigInt> divisibility_chain(std::vector<BigInt> d) {
    for (auto& x : d) x = abs(x);
    bool changed = true;
    while (changed) {
        changed = false;
        for (size_t a = 0; a < d.size(); ++a)
            for (size_t b = a + 1; b < d.size(); ++b) {
                if (d[a] == 0 || d[b] == 0) continue;
                if (d[b] % d[a] == 0) continue;
                BigInt g = gcd(d[a], d[b]);
                BigInt l = d[a] / g * d[b];
                d[a] = g;
                d[b] = l;
                changed = true;
            }
        std::sort(d.begin(), d.end());
    }
    return d;
}

}  // namespace

SmithSummary smith_invariants(SparseZ A) {
    std::vector<char> row_done(A.rows(), 0), col_done(A.cols(), 0);
    std::vector<BigInt> diag;
    for (;;) {
        Pivot p = choose_pivot(A, row_done, col_done);
        if (p.i < 0) break;
        // Euclidean sweeps until the pivot divides its whole row and column.
        for (;;) {
            BigInt pv = A.get(p.i, p.j);
            assert(pv != 0);
            bool reduced = false;
            std::vector<int> col_rows(A.col(p.j).begin(), A.col(p.j).end());
            for (int k : col_rows) {
                if (k == p.i || row_done[k]) continue;
                BigInt v = A.get(k, p.j);
                BigInt q = v / pv;
                if (q != 0) A.axpy_row(k, p.i, -q);
                if (A.get(k, p.j) != 0) {
                    // remainder smaller than pivot: swap roles
                    p.i = k;
                    reduced = true;
                    break;
                }
            }
            if (reduced) continue;
            pv = A.get(p.i, p.j);
            std::vector<std::pair<int, BigInt>> row_ents(A.row(p.i).begin(), A.row(p.i).end());
            for (auto& [j, v] : row_ents) {
                if (j == p.j || col_done[j]) continue;
                BigInt q = v / pv;
                if (q != 0) A.axpy_col(j, p.j, -q);
                if (A.get(p.i, j) != 0) {
                    p.j = j;
                    reduced = true;
                    break;
                }
            }
            if (!reduced) break;
        }
        diag.push_back(A.get(p.i, p.j));
        row_done[p.i] = 1;
        col_done[p.j] = 1;
        // clear the pivot row/col entries so later scans skip them
        std::vector<int> col_rows(A.col(p.j).begin(), A.col(p.j).end());
        for (int k : col_rows)
            if (k != p.i) A.set(k, p.j, 0);
        std::vector<std::pair<int, BigInt>> row_ents(A.row(p.i).begin(), A.row(p.i).end());
        for (auto& [j, v] : row_ents)
            if (j != p.j) A.set(p.i, j, 0);
    }
    SmithSummary out;
    out.rank = (int)diag.size();
    for (auto& f : divisibility_chain(diag))
        if (f > 1) out.factors.push_back(f);
    return out;
}

std::vector<std::vector<std::pair<int, BigInt>>> integer_kernel(SparseZ A) {
    // Row echelon by row operations only (columns stay meaningful), then
    // back-substitute one kernel vector per free column.
    int m = A.rows(), n = A.cols();
    std::vector<char> row_done(m, 0), col_done(n, 0);
    std::vector<std::pair<int, int>> pivots;  // (row, col) in elimination order
    for (;;) {
        Pivot p = choose_pivot(A, row_done, col_done);
        if (p.i < 0) break;
        // Euclidean reduction within the column until exact division works.
        for (;;) {
            BigInt pv = A.get(p.i, p.j);
            bool again = false;
            std::vector<int> col_rows(A.col(p.j).begin(), A.col(p.j).end());
            for (int k : col_rows) {
                if (k == p.i || row_done[k]) continue;
                BigInt q = A.get(k, p.j) / pv;
                if (q != 0) A.axpy_row(k, p.i, -q);
                if (A.get(k, p.j) != 0) {
                    p.i = k;
                    again = true;
                    break;
                }
            }
            if (!again) break;
        }
        pivots.push_back({p.i, p.j});
        row_done[p.i] = 1;
        col_done[p.j] = 1;
    }
    std::vector<std::vector<std::pair<int, BigInt>>> kernel;
    std::vector<int> pivot_col_of_row(m, -1);
    for (auto& [ri, cj] : pivots) pivot_col_of_row[ri] = cj;
    for (int f = 0; f < n; ++f) {
        if (col_done[f]) continue;
        // solve A x = 0 with x_f = 1, x on pivot columns via the echelon rows
        std::map<int, Rat> x;
        x[f] = Rat(1);
        for (auto it = pivots.rbegin(); it != pivots.rend(); ++it) {
            auto [ri, cj] = *it;
            Rat acc(0);
            for (const auto& [j, v] : A.row(ri)) {
                if (j == cj) continue;
                auto xi = x.find(j);
                if (xi != x.end()) acc += Rat(v) * xi->second;
            }
            if (acc != Rat(0)) x[cj] = -acc / Rat(A.get(ri, cj));
        }
        BigInt denom = 1;
        for (auto& [j, v] : x) denom = denom / gcd(denom, v.denominator()) * v.denominator();
        BigInt content = 0;
        std::vector<std::pair<int, BigInt>> vec;
        for (auto& [j, v] : x) {
            BigInt iv = v.numerator() * (denom / v.denominator());
            if (iv != 0) {
                vec.push_back({j, iv});
                content = gcd(content, abs(iv));
            }
        }
        if (content > 1)
            for (auto& [j, iv] : vec) iv /= content;
        kernel.push_back(std::move(vec));
    }
    return kernel;
}

DenseSmith smith_with_transforms(std::vector<std::vector<BigInt>> A) {
    int m = (int)A.size();
    int n = m ? (int)A[0].size() : 0;
    DenseSmith out;
    out.U.assign(m, std::vector<BigInt>(m, 0));
    out.V.assign(n, std::vector<BigInt>(n, 0));
    for (int i = 0; i < m; ++i) out.U[i][i] = 1;
    for (int j = 0; j < n; ++j) out.V[j][j] = 1;
    auto row_op = [&](int a, int b, const BigInt& f) {  // row a += f*row b
        for (int j = 0; j < n; ++j) A[a][j] += f * A[b][j];
        for (int j = 0; j < m; ++j) out.U[a][j] += f * out.U[b][j];
    };
    auto col_op = [&](int a, int b, const BigInt& f) {  // col a += f*col b
        for (int i = 0; i < m; ++i) A[i][a] += f * A[i][b];
        for (int i = 0; i < n; ++i) out.V[i][a] += f * out.V[i][b];
    };
    auto row_swap = [&](int a, int b) {
        std::swap(A[a], A[b]);
        std::swap(out.U[a], out.U[b]);
    };
    auto col_swap = [&](int a, int b) {
        for (int i = 0; i < m; ++i) std::swap(A[i][a], A[i][b]);
        for (int i = 0; i < n; ++i) std::swap(out.V[i][a], out.V[i][b]);
    };
    int k = 0;
    while (k < m && k < n) {
        int pi = -1, pj = -1;
        BigInt best = 0;
        for (int i = k; i < m; ++i)
            for (int j = k; j < n; ++j) {
                if (A[i][j] == 0) continue;
                BigInt mag = abs(A[i][j]);
                if (pi < 0 || mag < best) {
                    pi = i;
                    pj = j;
                    best = mag;
                }
            }
        if (pi < 0) break;
        row_swap(k, pi);
        col_swap(k, pj);
        for (;;) {
            bool again = false;
            for (int i = k + 1; i < m; ++i) {
                if (A[i][k] == 0) continue;
                BigInt q = A[i][k] / A[k][k];
                if (q != 0) row_op(i, k, -q);
                if (A[i][k] != 0) {
                    row_swap(k, i);
                    again = true;
                    break;
                }
            }
            if (again) continue;
            for (int j = k + 1; j < n; ++j) {
                if (A[k][j] == 0) continue;
                BigInt q = A[k][j] / A[k][k];
                if (q != 0) col_op(j, k, -q);
                if (A[k][j] != 0) {
                    col_swap(k, j);
                    again = true;
                    break;
                }
            }
            if (!again) break;
        }
        // divisibility over the remaining block
        bool fixed = true;
        for (int i = k + 1; i < m && fixed; ++i)
            for (int j = k + 1; j < n && fixed; ++j)
                if (A[i][j] % A[k][k] != 0) {
                    row_op(k, i, 1);
                    fixed = false;
                }
        if (!fixed) continue;
        if (A[k][k] < 0) {
            for (int j = 0; j < n; ++j) A[k][j] = -A[k][j];
            for (int j = 0; j < m; ++j) out.U[k][j] = -out.U[k][j];
        }
        ++k;
    }
    out.rank = k;
    out.S = std::move(A);
    return out;
}

BigInt determinant(std::vector<std::vector<BigInt>> A) {
    int n = (int)A.size();
    BigInt prev = 1;
    int sign = 1;
    for (int k = 0; k < n - 1; ++k) {
        if (A[k][k] == 0) {
            int s = -1;
            for (int i = k + 1; i < n; ++i)
                if (A[i][k] != 0) {
                    s = i;
                    break;
                }
            if (s < 0) return 0;
            std::swap(A[k], A[s]);
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < n; ++j)
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) / prev;
        prev = A[k][k];
    }
    return n ? BigInt(sign) * A[n - 1][n - 1] : BigInt(1);
}

}  // namespace z2f
