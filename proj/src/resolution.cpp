#include "statecycle/resolution.hpp"

#include <algorithm>
#include <bit>
#include <numeric>

#include "statecycle/error.hpp"

namespace statecycle {

namespace {

class UnionFind {
public:
    explicit UnionFind(int n) : parent_(static_cast<std::size_t>(n)) { std::iota(parent_.begin(), parent_.end(), 0); }

    int find(int x) {
        while (parent_[static_cast<std::size_t>(x)] != x) {
            parent_[static_cast<std::size_t>(x)] = parent_[static_cast<std::size_t>(parent_[static_cast<std::size_t>(x)])];
            x = parent_[static_cast<std::size_t>(x)];
        }
        return x;
    }
    bool unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        parent_[static_cast<std::size_t>(a)] = b;
        return true;
    }

private:
    std::vector<int> parent_;
};

// Nodes 0..arc_count are arcs; every smoothing arc joins two of them.
void smooth_crossing(UnionFind& uf, const Crossing& x, bool bit) {
    const auto& a = x.arcs;
    if (!bit) {
        uf.unite(a[0], a[1]);
        uf.unite(a[2], a[3]);
    } else {
        uf.unite(a[0], a[3]);
        uf.unite(a[1], a[2]);
    }
}

}  // namespace

Smoothing Smoothing::from_mask(int crossings, std::uint64_t mask) {
    if (crossings > 64) throw LengthMismatch("bit masks cover at most 64 crossings");
    Smoothing s(crossings);
    for (int i = 0; i < crossings; ++i) s.bits_[static_cast<std::size_t>(i)] = (mask >> i) & 1U;
    return s;
}

Smoothing Smoothing::parse(std::string_view bits) {
    Smoothing s(static_cast<int>(bits.size()));
    for (std::size_t i = 0; i < bits.size(); ++i) {
        if (bits[i] != '0' && bits[i] != '1') throw MalformedToken("smoothing must be a 0/1 string");
        s.bits_[i] = bits[i] == '1' ? 1 : 0;
    }
    return s;
}

Smoothing Smoothing::flipped(int i) const {
    Smoothing s = *this;
    s.set(i, !(*this)[i]);
    return s;
}

int Smoothing::height() const noexcept {
    return static_cast<int>(std::count(bits_.begin(), bits_.end(), std::uint8_t{1}));
}

std::string Smoothing::to_string() const {
    std::string out;
    out.reserve(bits_.size());
    for (auto b : bits_) out.push_back(b ? '1' : '0');
    return out;
}

std::uint64_t Smoothing::mask() const {
    if (bits_.size() > 64) throw LengthMismatch("smoothing longer than 64 crossings has no mask");
    std::uint64_t m = 0;
    for (std::size_t i = 0; i < bits_.size(); ++i) {
        if (bits_[i]) m |= std::uint64_t{1} << i;
    }
    return m;
}

State resolve(const Diagram& d, const Smoothing& s) {
    if (s.size() != d.crossing_count()) {
        throw LengthMismatch("smoothing has " + std::to_string(s.size()) + " bits for " +
                             std::to_string(d.crossing_count()) + " crossings");
    }
    State st;
    st.smoothing_ = s;
    if (d.crossing_count() == 0) {
        st.loops_.emplace_back();
        return st;
    }
    int n_arcs = d.arc_count();
    UnionFind uf(n_arcs + 1);
    for (int c = 0; c < d.crossing_count(); ++c) smooth_crossing(uf, d.crossing(c), s[c]);

    // Loops are indexed by their smallest arc, so scanning arcs upward
    // discovers them in index order.
    std::vector<int> root_loop(static_cast<std::size_t>(n_arcs) + 1, -1);
    st.arc_loop_.assign(static_cast<std::size_t>(n_arcs) + 1, -1);
    for (int arc = 1; arc <= n_arcs; ++arc) {
        int r = uf.find(arc);
        int& loop = root_loop[static_cast<std::size_t>(r)];
        if (loop < 0) {
            loop = static_cast<int>(st.loops_.size());
            st.loops_.emplace_back();
        }
        st.loops_[static_cast<std::size_t>(loop)].push_back(arc);
        st.arc_loop_[static_cast<std::size_t>(arc)] = loop;
    }
    st.traces_.reserve(static_cast<std::size_t>(d.crossing_count()));
    for (int c = 0; c < d.crossing_count(); ++c) {
        const auto& a = d.crossing(c).arcs;
        bool bit = s[c];
        // The trace spans the two smoothing arcs: the one through a, and
        // the one through c (0-smoothing) or b (1-smoothing).
        int first = st.arc_loop_[static_cast<std::size_t>(a[0])];
        int second = st.arc_loop_[static_cast<std::size_t>(bit ? a[1] : a[2])];
        st.traces_.push_back({c, bit, std::min(first, second), std::max(first, second)});
    }
    return st;
}

int count_loops(const Diagram& d, std::uint64_t mask) {
    if (d.crossing_count() == 0) return 1;
    UnionFind uf(d.arc_count() + 1);
    int loops = d.arc_count();
    for (int c = 0; c < d.crossing_count(); ++c) {
        const auto& a = d.crossing(c).arcs;
        if (((mask >> c) & 1U) == 0) {
            loops -= uf.unite(a[0], a[1]);
            loops -= uf.unite(a[2], a[3]);
        } else {
            loops -= uf.unite(a[0], a[3]);
            loops -= uf.unite(a[1], a[2]);
        }
    }
    return loops;
}

Smoothing seifert_smoothing(const Diagram& d) {
    Smoothing s(d.crossing_count());
    for (int c = 0; c < d.crossing_count(); ++c) s.set(c, d.crossing(c).sign == Sign::negative);
    return s;
}

EnhancedState::EnhancedState(std::shared_ptr<const State> state, std::vector<Mark> marks)
    : state_(std::move(state)), marks_(std::move(marks)) {
    if (static_cast<int>(marks_.size()) != state_->loop_count()) {
        throw LengthMismatch("got " + std::to_string(marks_.size()) + " marks for " +
                             std::to_string(state_->loop_count()) + " loops");
    }
}

EnhancedState::EnhancedState(State state, std::vector<Mark> marks)
    : EnhancedState(std::make_shared<const State>(std::move(state)), std::move(marks)) {}

int EnhancedState::minus_count() const noexcept {
    return static_cast<int>(std::count(marks_.begin(), marks_.end(), Mark::minus));
}

int EnhancedState::plus_count() const noexcept { return static_cast<int>(marks_.size()) - minus_count(); }

std::string EnhancedState::marks_string() const {
    std::string out;
    for (Mark m : marks_) out.push_back(m == Mark::minus ? '1' : '0');
    return out;
}

std::uint64_t EnhancedState::marks_mask() const {
    if (marks_.size() > 64) throw LengthMismatch("more than 64 loops");
    std::uint64_t m = 0;
    for (std::size_t i = 0; i < marks_.size(); ++i) {
        if (marks_[i] == Mark::minus) m |= std::uint64_t{1} << i;
    }
    return m;
}

std::vector<Mark> parse_marks(std::string_view bits) {
    std::vector<Mark> marks;
    for (char c : bits) {
        if (c != '0' && c != '1') throw MalformedToken("marks must be a 0/1 string (1 = v-)");
        marks.push_back(c == '1' ? Mark::minus : Mark::plus);
    }
    return marks;
}

std::vector<Mark> marks_from_mask(int loops, std::uint64_t mask) {
    std::vector<Mark> marks(static_cast<std::size_t>(loops), Mark::plus);
    for (int i = 0; i < loops; ++i) {
        if ((mask >> i) & 1U) marks[static_cast<std::size_t>(i)] = Mark::minus;
    }
    return marks;
}

Bigrading bigrading(int height, int plus, int minus, const SignCounts& signs) {
    return {height - signs.n_minus, plus - minus + height + signs.n_plus - 2 * signs.n_minus};
}

Bigrading bigrading(const EnhancedState& a, const Diagram& d) {
    return bigrading(a.state().smoothing().height(), a.plus_count(), a.minus_count(), crossing_signs(d));
}

std::vector<EnhancedState> enumerate_enhancements(const State& s) {
    if (s.loop_count() > 24) throw TooLarge("refusing to enumerate 2^" + std::to_string(s.loop_count()) + " markings");
    auto shared = std::make_shared<const State>(s);
    std::vector<EnhancedState> out;
    std::uint64_t total = std::uint64_t{1} << s.loop_count();
    out.reserve(total);
    for (std::uint64_t k = 0; k < total; ++k) out.emplace_back(shared, marks_from_mask(s.loop_count(), k));
    return out;
}

nlohmann::json to_json(const State& s) {
    nlohmann::json traces = nlohmann::json::array();
    for (const auto& t : s.traces()) {
        traces.push_back({{"crossing", t.crossing},
                          {"bit", t.bit ? 1 : 0},
                          {"loops", {t.loop_a, t.loop_b}},
                          {"kind", t.kind() == TraceKind::merge ? "merge" : "pinch"}});
    }
    return {{"schema", "statecycle.state/1"},
            {"smoothing", s.smoothing().to_string()},
            {"loops", s.loops()},
            {"traces", traces}};
}

}  // namespace statecycle
