#ifndef STATECYCLE_LINALG_HPP
#define STATECYCLE_LINALG_HPP

#include <algorithm>
#include <cstdint>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace statecycle {

// Prime fields for the modular fast path.
template <std::uint32_t P>
struct ModPField {
    using value_type = std::uint32_t;

    static value_type from_int(long long x) {
        long long r = x % static_cast<long long>(P);
        return static_cast<value_type>(r < 0 ? r + P : r);
    }
    static bool is_zero(value_type a) { return a == 0; }
    static value_type sub_mul(value_type a, value_type f, value_type b) {
        // a - f*b mod P
        std::uint64_t fb = static_cast<std::uint64_t>(f) * b % P;
        return static_cast<value_type>((a + P - fb) % P);
    }
    static value_type mul(value_type a, value_type b) { return static_cast<value_type>(static_cast<std::uint64_t>(a) * b % P); }
    static value_type inv(value_type a) {
        std::uint64_t result = 1, base = a, e = P - 2;
        while (e) {
            if (e & 1U) result = result * base % P;
            base = base * base % P;
            e >>= 1U;
        }
        return static_cast<value_type>(result);
    }
};

using ModP1 = ModPField<2147483647U>;
using ModP2 = ModPField<2147483629U>;

struct RationalField {
    using value_type = mpq_class;

    static value_type from_int(long long x) { return mpq_class(static_cast<long>(x)); }
    static bool is_zero(const value_type& a) { return sgn(a) == 0; }
    static value_type sub_mul(const value_type& a, const value_type& f, const value_type& b) { return a - f * b; }
    static value_type mul(const value_type& a, const value_type& b) { return a * b; }
    static value_type inv(const value_type& a) { return 1 / a; }
};

// Sparse vector: (index, value) pairs, indices strictly increasing.
template <class F>
using SparseVector = std::vector<std::pair<int, typename F::value_type>>;

template <class F>
SparseVector<F> to_field(const std::vector<std::pair<int, int>>& v) {
    SparseVector<F> out;
    out.reserve(v.size());
    for (const auto& [i, x] : v) {
        auto val = F::from_int(x);
        if (!F::is_zero(val)) out.emplace_back(i, std::move(val));
    }
    return out;
}

// Row echelon basis of a growing subspace of F^dim. Rows are stored by
// leading index with leading coefficient 1.
template <class F>
class EchelonBasis {
public:
    explicit EchelonBasis(int dim) : rows_(static_cast<std::size_t>(dim)) {}

    int dim() const noexcept { return static_cast<int>(rows_.size()); }
    int rank() const noexcept { return rank_; }

    // Adds v to the span; returns true when v was independent.
    bool insert(SparseVector<F> v) {
        reduce(v);
        if (v.empty()) return false;
        auto inv = F::inv(v.front().second);
        for (auto& e : v) e.second = F::mul(e.second, inv);
        rows_[static_cast<std::size_t>(v.front().first)] = std::move(v);
        ++rank_;
        return true;
    }

    bool contains(SparseVector<F> v) const {
        reduce(v);
        return v.empty();
    }

private:
    // Leading-term elimination until the lead has no pivot row.
    void reduce(SparseVector<F>& v) const {
        SparseVector<F> scratch;
        while (!v.empty()) {
            const auto& row = rows_[static_cast<std::size_t>(v.front().first)];
            if (row.empty()) return;
            auto f = v.front().second;
            scratch.clear();
            std::size_t i = 0, j = 0;
            while (i < v.size() || j < row.size()) {
                if (j == row.size() || (i < v.size() && v[i].first < row[j].first)) {
                    scratch.push_back(std::move(v[i++]));
                } else if (i == v.size() || row[j].first < v[i].first) {
                    scratch.emplace_back(row[j].first, F::sub_mul(F::from_int(0), f, row[j].second));
                    ++j;
                } else {
                    auto x = F::sub_mul(v[i].second, f, row[j].second);
                    if (!F::is_zero(x)) scratch.emplace_back(v[i].first, std::move(x));
                    ++i;
                    ++j;
                }
            }
            std::swap(v, scratch);
        }
    }

    std::vector<SparseVector<F>> rows_;
    int rank_ = 0;
};

enum class Arithmetic {
    exact,    // rational elimination throughout
    modular,  // two primes; rational recount when they disagree
};

// Rank of the matrix whose rows are `rows` (columns 0..cols-1, integer entries).
struct RankResult {
    int rank = 0;
    bool rational_used = false;
};

RankResult matrix_rank(const std::vector<std::vector<std::pair<int, int>>>& rows, int cols, Arithmetic mode);

}  // namespace statecycle

#endif  // STATECYCLE_LINALG_HPP
