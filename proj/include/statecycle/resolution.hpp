#ifndef STATECYCLE_RESOLUTION_HPP
#define STATECYCLE_RESOLUTION_HPP

#include <compare>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "statecycle/diagram.hpp"

namespace statecycle {

// Choice of 0- or 1-smoothing per crossing. At X[a,b,c,d] the 0-smoothing
// joins a-b and c-d, the 1-smoothing joins a-d and b-c; positive crossings
// are 0-smoothed by the oriented resolution.
class Smoothing {
public:
    Smoothing() = default;
    explicit Smoothing(int crossings, bool bit = false) : bits_(static_cast<std::size_t>(crossings), bit ? 1 : 0) {}

    static Smoothing all0(int crossings) { return Smoothing(crossings, false); }
    static Smoothing all1(int crossings) { return Smoothing(crossings, true); }
    // Bit i of `mask` is crossing i.
    static Smoothing from_mask(int crossings, std::uint64_t mask);
    // One '0'/'1' character per crossing, crossing 0 first.
    static Smoothing parse(std::string_view bits);

    int size() const noexcept { return static_cast<int>(bits_.size()); }
    bool operator[](int i) const { return bits_.at(static_cast<std::size_t>(i)) != 0; }
    void set(int i, bool bit) { bits_.at(static_cast<std::size_t>(i)) = bit ? 1 : 0; }
    Smoothing flipped(int i) const;

    // h(sigma): number of 1-smoothings.
    int height() const noexcept;
    std::string to_string() const;
    std::uint64_t mask() const;  // requires size() <= 64

    friend auto operator<=>(const Smoothing&, const Smoothing&) = default;

private:
    std::vector<std::uint8_t> bits_;
};

enum class TraceKind { merge, pinch };

// Shadow of a smoothed crossing. A mergetrace joins two distinct loops, a
// pinchtrace joins a loop to itself (loop_a == loop_b).
struct Trace {
    int crossing = 0;
    bool bit = false;
    int loop_a = 0;
    int loop_b = 0;

    TraceKind kind() const noexcept { return loop_a == loop_b ? TraceKind::pinch : TraceKind::merge; }
    bool touches(int loop) const noexcept { return loop_a == loop || loop_b == loop; }
};

// A traced state: loops numbered by their smallest arc label.
class State {
public:
    const Smoothing& smoothing() const noexcept { return smoothing_; }
    int loop_count() const noexcept { return static_cast<int>(loops_.size()); }
    // Arc labels of each loop, ascending.
    const std::vector<std::vector<int>>& loops() const noexcept { return loops_; }
    int loop_of_arc(int arc) const { return arc_loop_.at(static_cast<std::size_t>(arc)); }
    std::span<const Trace> traces() const noexcept { return traces_; }
    const Trace& trace(int crossing) const { return traces_.at(static_cast<std::size_t>(crossing)); }

    friend State resolve(const Diagram& d, const Smoothing& s);

private:
    Smoothing smoothing_;
    std::vector<std::vector<int>> loops_;
    std::vector<int> arc_loop_;
    std::vector<Trace> traces_;
};

State resolve(const Diagram& d, const Smoothing& s);

// Number of loops only; the hot path of the cube and bracket code.
int count_loops(const Diagram& d, std::uint64_t mask);

Smoothing seifert_smoothing(const Diagram& d);

enum class Mark : std::uint8_t { plus = 0, minus = 1 };

// Generator of the chain complex: a traced state with v+/v- on each loop.
class EnhancedState {
public:
    EnhancedState(std::shared_ptr<const State> state, std::vector<Mark> marks);
    EnhancedState(State state, std::vector<Mark> marks);

    const State& state() const noexcept { return *state_; }
    std::shared_ptr<const State> shared_state() const noexcept { return state_; }
    std::span<const Mark> marks() const noexcept { return marks_; }
    Mark mark(int loop) const { return marks_.at(static_cast<std::size_t>(loop)); }
    int plus_count() const noexcept;
    int minus_count() const noexcept;
    // '0' for v+, '1' for v-, loop 0 first.
    std::string marks_string() const;
    // Bit i set when loop i is v-; requires at most 64 loops.
    std::uint64_t marks_mask() const;

    friend bool operator==(const EnhancedState& a, const EnhancedState& b) {
        return a.state_->smoothing() == b.state_->smoothing() && a.marks_ == b.marks_;
    }

private:
    std::shared_ptr<const State> state_;
    std::vector<Mark> marks_;
};

std::vector<Mark> parse_marks(std::string_view bits);
std::vector<Mark> marks_from_mask(int loops, std::uint64_t mask);

struct Bigrading {
    int t = 0;
    int q = 0;

    int delta() const noexcept { return 2 * t - q; }
    friend bool operator==(const Bigrading&, const Bigrading&) = default;
};

// t = h - n_minus,  q = #v+ - #v- + h + n_plus - 2 n_minus.
Bigrading bigrading(const EnhancedState& a, const Diagram& d);
Bigrading bigrading(int height, int plus, int minus, const SignCounts& signs);

// All 2^loops markings; marking k puts v- on loop i iff bit i of k is set.
std::vector<EnhancedState> enumerate_enhancements(const State& s);

nlohmann::json to_json(const State& s);

}  // namespace statecycle

#endif  // STATECYCLE_RESOLUTION_HPP
