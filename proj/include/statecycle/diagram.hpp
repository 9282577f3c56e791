#ifndef STATECYCLE_DIAGRAM_HPP
#define STATECYCLE_DIAGRAM_HPP

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

namespace statecycle {

enum class Sign : std::int8_t { negative = -1, positive = 1 };

// A PD crossing X[a,b,c,d]. `arcs[0]` is the incoming under-strand and the
// remaining labels follow counterclockwise, so the under-strand runs
// arcs[0] -> arcs[2] and the over-strand joins arcs[1] and arcs[3].
struct Crossing {
    std::array<int, 4> arcs{};
    Sign sign = Sign::positive;

    friend bool operator==(const Crossing&, const Crossing&) = default;
};

// A crossing endpoint: position 0..3 in the counterclockwise order above.
struct Slot {
    int crossing = -1;
    int position = -1;

    int index() const noexcept { return 4 * crossing + position; }
    friend bool operator==(const Slot&, const Slot&) = default;
};

struct SignCounts {
    int n_plus = 0;
    int n_minus = 0;
};

// Oriented link diagram in PD form. Immutable once built; the only way to
// obtain one is through the validating factories below, so every instance
// satisfies: each label 1..arc_count occurs exactly twice, every component
// carries a consistent orientation, and crossing signs agree with it.
//
// The crossingless diagram (default constructed) is the one-loop unknot.
class Diagram {
public:
    Diagram() = default;

    // Validates labels, infers orientation and computes signs. The sign
    // stored in the input crossings is ignored.
    static Diagram from_pd(std::vector<std::array<int, 4>> crossings, std::string name = {});

    std::span<const Crossing> crossings() const noexcept { return crossings_; }
    const Crossing& crossing(int i) const { return crossings_.at(static_cast<std::size_t>(i)); }
    int crossing_count() const noexcept { return static_cast<int>(crossings_.size()); }
    int arc_count() const noexcept { return arc_count_; }

    // Arc labels of each link component in orientation order. The
    // crossingless unknot reports a single component with no arcs.
    const std::vector<std::vector<int>>& components() const noexcept { return components_; }
    int component_count() const noexcept { return static_cast<int>(components_.size()); }
    int component_of_arc(int arc) const { return arc_component_.at(static_cast<std::size_t>(arc)); }

    // Endpoints of an arc: where it leaves a crossing and where it enters one.
    Slot tail(int arc) const { return tails_.at(static_cast<std::size_t>(arc)); }
    Slot head(int arc) const { return heads_.at(static_cast<std::size_t>(arc)); }
    int arc_at(Slot s) const { return crossing(s.crossing).arcs[static_cast<std::size_t>(s.position)]; }
    bool is_outgoing(Slot s) const { return tail(arc_at(s)) == s; }

    const std::string& name() const noexcept { return name_; }
    Diagram renamed(std::string name) const;

    // Structural equality: same crossings in the same order (names ignored).
    friend bool operator==(const Diagram& a, const Diagram& b) {
        return a.crossings_ == b.crossings_ && a.arc_count_ == b.arc_count_;
    }

private:
    std::vector<Crossing> crossings_;
    int arc_count_ = 0;
    std::vector<std::vector<int>> components_{{}};
    std::vector<int> arc_component_;
    std::vector<Slot> tails_;
    std::vector<Slot> heads_;
    std::string name_;
};

// Parses whitespace/comma separated `X[a,b,c,d]` tokens, optionally wrapped
// in `PD[...]`. Empty input yields the crossingless unknot.
Diagram parse_pd(std::string_view text, std::string name = {});

// Accepts either an array of 4-tuples or an object with a "crossings" array.
Diagram parse_pd_json(const nlohmann::json& j, std::string name = {});

std::string to_pd(const Diagram& d);
nlohmann::json to_json(const Diagram& d);

SignCounts crossing_signs(const Diagram& d);

// Flips every crossing; orientation and arc labels are kept.
Diagram mirror(const Diagram& d);

// Closure of a braid word on `strands` strands; generator i > 0 is the
// positive crossing sigma_i, -i its inverse. Every strand must be touched
// by some generator.
Diagram braid_closure(int strands, std::span<const int> word, std::string name = {});

// Relabels arcs 1..2n consecutively along each oriented component.
Diagram canonical(const Diagram& d);

}  // namespace statecycle

#endif  // STATECYCLE_DIAGRAM_HPP
