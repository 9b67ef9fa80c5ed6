#include "z2f/gf2.hpp"

#include <algorithm>

namespace z2f {

void GF2System::add_equation(std::vector<int> vars, int rhs) {
    std::sort(vars.begin(), vars.end());
    // duplicated variables cancel mod 2
    std::vector<int> clean;
    for (size_t i = 0; i < vars.size();) {
        size_t j = i;
        while (j < vars.size() && vars[j] == vars[i]) ++j;
        if ((j - i) % 2) clean.push_back(vars[i]);
        i = j;
    }
    eqs_.push_back({std::move(clean), rhs & 1});
}

namespace {
// xor-merge of sorted index lists
std::vector<int> xor_rows(const std::vector<int>& a, const std::vector<int>& b) {
    std::vector<int> out;
    out.reserve(a.size() + b.size());
    size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        if (j == b.size() || (i < a.size() && a[i] < b[j]))
            out.push_back(a[i++]);
        else if (i == a.size() || b[j] < a[i])
            out.push_back(b[j++]);
        else
            ++i, ++j;
    }
    return out;
}
}  // namespace

std::optional<std::vector<uint8_t>> GF2System::solve() const {
    std::vector<std::vector<int>> rows;
    std::vector<int> rhs;
    for (auto& [v, r] : eqs_) {
        rows.push_back(v);
        rhs.push_back(r);
    }
    std::vector<int> pivot_row_of_var(n_vars_, -1);
    std::vector<int> pivot_var_of_row(rows.size(), -1);
    // forward elimination, shortest rows first for low fill
    std::vector<int> order(rows.size());
    for (size_t i = 0; i < rows.size(); ++i) order[i] = (int)i;
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return rows[a].size() < rows[b].size(); });
    for (int oi : order) {
        auto& row = rows[oi];
        int r = rhs[oi];
        for (;;) {
            int piv = -1;
            for (int v : row)
                if (pivot_row_of_var[v] >= 0) {
                    piv = v;
                    break;
                }
            if (piv < 0) break;
            int k = pivot_row_of_var[piv];
            row = xor_rows(row, rows[k]);
            r ^= rhs[k];
        }
        rhs[oi] = r;
        if (row.empty()) {
            if (r) return std::nullopt;
            continue;
        }
        pivot_row_of_var[row.front()] = oi;
        pivot_var_of_row[oi] = row.front();
    }
    // back substitution (free vars = 0)
    std::vector<uint8_t> x(n_vars_, 0);
    // process pivots in decreasing variable order
    std::vector<int> piv_vars;
    for (int v = 0; v < n_vars_; ++v)
        if (pivot_row_of_var[v] >= 0) piv_vars.push_back(v);
    for (auto it = piv_vars.rbegin(); it != piv_vars.rend(); ++it) {
        int v = *it;
        int k = pivot_row_of_var[v];
        int acc = rhs[k];
        for (int w : rows[k])
            if (w != v) acc ^= x[w];
        x[v] = (uint8_t)(acc & 1);
    }
    return x;
}

}  // namespace z2f
