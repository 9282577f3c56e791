#ifndef STATECYCLE_FAMILIES_HPP
#define STATECYCLE_FAMILIES_HPP

#include <array>
#include <optional>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "statecycle/diagram.hpp"
#include "statecycle/planar_map.hpp"
#include "statecycle/resolution.hpp"

namespace statecycle {

// One junction: an arc of the base and an arc of the block, to be joined by
// a band of positive half twists. Both arcs must border a common face of
// their diagrams, and the two block arcs must lie on one loop of the
// block's all-1 state.
struct RegionSite {
    int base_arc = 0;
    int block_arc = 0;

    friend bool operator==(const RegionSite&, const RegionSite&) = default;
};

struct EntwineSpec {
    Diagram base;
    Diagram block;
    std::array<RegionSite, 2> regions{};
    int copies = 0;
    std::array<int, 2> twists{2, 3};
    bool expand = false;  // widen every twist region of base and block first
};

struct BlockParams {
    int crossings = 0;  // m
    int s0 = 0;         // loops of the all-0 state
    int s1 = 0;         // loops of the all-1 state
};

struct FamilyKnot {
    Diagram diagram;
    int copies = 0;
    // Half-open crossing index ranges.
    std::pair<int, int> base_span;
    std::vector<std::pair<int, int>> block_spans;
    std::vector<std::pair<int, int>> junction_spans;
    // An arc label on each copy's junction loop (the block loop banded to the base).
    std::vector<int> junction_arcs;
    BlockParams block;
};

FamilyKnot entwine(const EntwineSpec& spec);

// First k copies 1-smoothed, everything else 0-smoothed; 0-tracing loops v-,
// the rest v+. Throws OutOfRange unless 0 <= k <= copies.
EnhancedState alpha_k(const FamilyKnot& fk, int k);

// delta of alpha_0, then + (m + 2 - s0 - s1) per 1-smoothed copy. Throws
// SeparationViolated when that step is not positive.
std::vector<int> predicted_deltas(const FamilyKnot& fk);

// Sites for the bundled 8_21 base and 10_152 block.
std::array<RegionSite, 2> bundled_sites();
EntwineSpec bundled_family(int copies, bool expand = false);

// First site pair (in a fixed search order) for which entwining one to
// `max_copies` copies succeeds and yields a knot.
std::optional<std::array<RegionSite, 2>> find_sites(const Diagram& base, const Diagram& block, int max_copies = 2);

// Twist regions: crossings grouped by chains of bigon faces, each sorted.
std::vector<std::vector<int>> twist_regions(const Diagram& d);

// Adds same-handed half twists, two at a time, until every twist region has
// at least `min_crossings` crossings (6 or 7 for the default, by parity).
Diagram expand_twists(const Diagram& d, int min_crossings = 6);
// Map-level form that keeps edge origins, so arc sites survive expansion.
PlanarMap expand_twists(const PlanarMap& m, int min_crossings = 6);

nlohmann::json manifest(const FamilyKnot& fk);

}  // namespace statecycle

#endif  // STATECYCLE_FAMILIES_HPP
