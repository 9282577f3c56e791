#include "statecycle/linalg.hpp"

namespace statecycle {

namespace {

template <class F>
int rank_over(const std::vector<std::vector<std::pair<int, int>>>& rows, int cols) {
    // Sparse rows first keeps fill-in down.
    std::vector<std::size_t> order(rows.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return rows[a].size() < rows[b].size(); });
    EchelonBasis<F> basis(cols);
    for (std::size_t i : order) {
        basis.insert(to_field<F>(rows[i]));
        if (basis.rank() == cols) break;
    }
    return basis.rank();
}

}  // namespace

RankResult matrix_rank(const std::vector<std::vector<std::pair<int, int>>>& rows, int cols, Arithmetic mode) {
    if (rows.empty() || cols == 0) return {0, false};
    if (mode == Arithmetic::exact) return {rank_over<RationalField>(rows, cols), true};
    int r1 = rank_over<ModP1>(rows, cols);
    int r2 = rank_over<ModP2>(rows, cols);
    if (r1 == r2) return {r1, false};
    return {rank_over<RationalField>(rows, cols), true};
}

}  // namespace statecycle
