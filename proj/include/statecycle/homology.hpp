#ifndef STATECYCLE_HOMOLOGY_HPP
#define STATECYCLE_HOMOLOGY_HPP

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "statecycle/diagram.hpp"
#include "statecycle/linalg.hpp"
#include "statecycle/resolution.hpp"

namespace statecycle {

// Laurent polynomial: exponent -> nonzero coefficient.
using LaurentPoly = std::map<int, long long>;

LaurentPoly poly_mul(const LaurentPoly& a, const LaurentPoly& b);
LaurentPoly poly_add(const LaurentPoly& a, const LaurentPoly& b);
// Substitutes x -> x^-1.
LaurentPoly poly_invert(const LaurentPoly& p);
std::string to_string(const LaurentPoly& p, const std::string& var = "q");
nlohmann::json poly_to_json(const LaurentPoly& p);

// A chain generator: smoothing bits (bit i = crossing i) and v- bits per loop.
struct Generator {
    std::uint32_t smoothing = 0;
    std::uint32_t marks = 0;

    friend bool operator==(const Generator&, const Generator&) = default;
    friend auto operator<=>(const Generator&, const Generator&) = default;
};

struct HomologyOptions {
    int max_crossings = 16;
    // Bytes; 0 selects STATECYCLE_MAX_MEM or the built-in default.
    std::size_t max_memory = 0;
    // Height window [min_height, max_height]; max_height < 0 means n.
    int min_height = 0;
    int max_height = -1;
};

// Memory cap in bytes: STATECYCLE_MAX_MEM when set, else 3 GiB.
std::size_t memory_limit();

// The cube of resolutions, restricted to a window of heights, with generators
// bucketed by (t, q). Crossing i's edge maps carry the sign
// (-1)^(number of 1-smoothed crossings with index < i).
class CubeComplex {
public:
    const Diagram& diagram() const noexcept { return diagram_; }
    SignCounts signs() const noexcept { return signs_; }
    int min_height() const noexcept { return min_height_; }
    int max_height() const noexcept { return max_height_; }
    bool is_full() const noexcept { return min_height_ == 0 && max_height_ == diagram_.crossing_count(); }

    std::size_t generator_count() const noexcept { return generator_count_; }
    std::size_t state_count() const noexcept { return masks_.size(); }

    // Occupied buckets in ascending (t, q) order.
    std::vector<Bigrading> buckets() const;
    int bucket_size(Bigrading b) const;
    // Generators of a bucket in index order.
    std::vector<Generator> generators(Bigrading b) const;

    bool contains(Generator g) const;
    Bigrading grading_of(Generator g) const;
    int index_of(Generator g) const;  // position inside its bucket
    int loop_count(std::uint32_t smoothing) const;

    // d(g) as (target, coefficient) pairs, targets sorted. Edges leaving the
    // window are dropped.
    std::vector<std::pair<Generator, int>> differential(Generator g) const;

    Generator generator_of(const EnhancedState& a) const;
    EnhancedState enhanced_state(Generator g) const;

    // d(d(g)) == 0 for every generator whose two-step image stays in the window.
    bool check_d_squared() const;

    friend CubeComplex build_complex(const Diagram& d, const HomologyOptions& options);

private:
    int state_of(std::uint32_t mask) const;
    int height_of(int state) const;
    int q_of(int state, int minus) const;

    Diagram diagram_;
    SignCounts signs_;
    int min_height_ = 0;
    int max_height_ = 0;
    std::size_t generator_count_ = 0;

    std::vector<std::uint32_t> masks_;
    std::unordered_map<std::uint32_t, int> state_index_;
    std::vector<std::uint8_t> loops_;
    // arc -> loop, (arc_count + 1) entries per state
    std::vector<std::uint8_t> arc_loop_;
    // smallest arc of each loop, offsets into rep_arc_ per state
    std::vector<std::uint32_t> rep_start_;
    std::vector<std::uint8_t> rep_arc_;
    // bucket offset of the block of markings with m minus loops
    std::vector<std::uint32_t> block_start_;
    std::vector<std::int64_t> block_offset_;
    std::map<std::pair<int, int>, int> bucket_sizes_;  // (t, q)
};

CubeComplex build_complex(const Diagram& d, const HomologyOptions& options = {});
CubeComplex build_complex(const Diagram& d, int max_crossings);

// Estimated peak bytes for a complex; the guard compares this to the cap.
std::size_t estimate_memory(const Diagram& d, int min_height, int max_height);

struct HomologyTable {
    std::map<std::pair<int, int>, long long> ranks;  // (t, q) -> rank, nonzero only
    int t_min = 0;                                   // exact columns t_min..t_max
    int t_max = 0;
    bool complete = true;

    long long rank(int t, int q) const;
    std::set<int> delta_values() const;
    int width() const { return static_cast<int>(delta_values().size()); }
    long long total_rank() const;
};

HomologyTable homology_ranks(const CubeComplex& c, Arithmetic mode = Arithmetic::exact);

// Sum over t of (-1)^t rank * q^q.
LaurentPoly euler_characteristic(const HomologyTable& h);

// Exact membership of a cycle in the image of the incoming differential.
// Bases are cached per bucket.
class BoundaryOracle {
public:
    explicit BoundaryOracle(const CubeComplex& c) : complex_(&c) {}

    // `chain` must sit in one bucket; throws NotACycle when d(chain) != 0.
    bool is_boundary(const std::vector<std::pair<Generator, long long>>& chain);
    bool is_boundary(const EnhancedState& a);

private:
    const EchelonBasis<RationalField>& image_basis(Bigrading b);

    const CubeComplex* complex_;
    std::map<std::pair<int, int>, std::unique_ptr<EchelonBasis<RationalField>>> cache_;
};

bool is_boundary(const EnhancedState& a, const CubeComplex& c);

// Kauffman bracket <D> in the variable A, from a state sum.
LaurentPoly bracket_polynomial(const Diagram& d, int max_crossings = 20);
// Unnormalised Jones polynomial in q (unknot: q + q^-1), from the bracket.
LaurentPoly jones_bracket(const Diagram& d, int max_crossings = 20);

nlohmann::json to_json(const HomologyTable& h);
// Rows are q descending, columns t ascending; blank cells for zero rank.
std::string to_table(const HomologyTable& h);

}  // namespace statecycle

#endif  // STATECYCLE_HOMOLOGY_HPP
