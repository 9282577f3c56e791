#include "statecycle/diagram.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <map>
#include <sstream>

#include "statecycle/error.hpp"
#include "statecycle/planar_map.hpp"

namespace statecycle {

namespace {

int through(int position) { return (position + 2) % 4; }

// Orientation of the slots of one component, found by walking it once.
struct Walk {
    std::vector<int> arcs;         // in walk order
    std::vector<Slot> departures;  // slot each arc leaves from, in walk order
};

}  // namespace

Diagram Diagram::renamed(std::string name) const {
    Diagram copy = *this;
    copy.name_ = std::move(name);
    return copy;
}

Diagram Diagram::from_pd(std::vector<std::array<int, 4>> raw, std::string name) {
    Diagram d;
    d.name_ = std::move(name);
    if (raw.empty()) return d;

    int max_label = 0;
    for (const auto& x : raw) {
        for (int a : x) {
            if (a <= 0) throw MalformedToken("arc labels must be positive, got " + std::to_string(a));
            max_label = std::max(max_label, a);
        }
    }
    std::vector<std::vector<Slot>> ends(static_cast<std::size_t>(max_label) + 1);
    for (int c = 0; c < static_cast<int>(raw.size()); ++c) {
        for (int p = 0; p < 4; ++p) ends[static_cast<std::size_t>(raw[c][p])].push_back({c, p});
    }
    std::vector<int> bad;
    for (int a = 1; a <= max_label; ++a) {
        if (ends[static_cast<std::size_t>(a)].size() != 2) bad.push_back(a);
    }
    if (!bad.empty()) {
        std::string msg = "labels not appearing exactly twice:";
        for (int a : bad) msg += " " + std::to_string(a);
        throw ArcCountMismatch(msg);
    }

    d.arc_count_ = max_label;
    d.crossings_.resize(raw.size());
    for (std::size_t c = 0; c < raw.size(); ++c) d.crossings_[c].arcs = raw[c];

    auto other_end = [&](int arc, Slot s) {
        const auto& e = ends[static_cast<std::size_t>(arc)];
        return e[0] == s ? e[1] : e[0];
    };

    d.tails_.assign(static_cast<std::size_t>(max_label) + 1, Slot{});
    d.heads_.assign(static_cast<std::size_t>(max_label) + 1, Slot{});
    d.arc_component_.assign(static_cast<std::size_t>(max_label) + 1, -1);
    d.components_.clear();

    for (int start = 1; start <= max_label; ++start) {
        if (d.arc_component_[static_cast<std::size_t>(start)] >= 0) continue;

        // Walk the component once from `start`, leaving through its first end.
        Walk walk;
        int forward_votes = 0;
        int backward_votes = 0;
        Slot from = ends[static_cast<std::size_t>(start)][0];
        int arc = start;
        for (;;) {
            walk.arcs.push_back(arc);
            walk.departures.push_back(from);
            Slot to = other_end(arc, from);
            // Under-strand runs position 0 -> 2: arriving at 0 or leaving 2 is forward.
            if (to.position == 0 || from.position == 2) ++forward_votes;
            if (to.position == 2 || from.position == 0) ++backward_votes;
            Slot next{to.crossing, through(to.position)};
            int next_arc = d.crossings_[static_cast<std::size_t>(next.crossing)].arcs[static_cast<std::size_t>(next.position)];
            from = next;
            arc = next_arc;
            if (arc == start && from == walk.departures.front()) break;
            if (walk.arcs.size() > static_cast<std::size_t>(2 * max_label)) {
                throw OrientationConflict("component walk did not close");
            }
        }
        if (forward_votes > 0 && backward_votes > 0) {
            throw OrientationConflict("under-strands disagree on the direction of the component through arc " +
                                      std::to_string(start));
        }
        bool reverse = backward_votes > 0;
        if (forward_votes == 0 && backward_votes == 0 && walk.arcs.size() > 1) {
            // Over-only component: go from its lowest label towards the
            // smaller of its two neighbours.
            auto lowest = std::min_element(walk.arcs.begin(), walk.arcs.end()) - walk.arcs.begin();
            std::size_t n = walk.arcs.size();
            int succ = walk.arcs[(static_cast<std::size_t>(lowest) + 1) % n];
            int pred = walk.arcs[(static_cast<std::size_t>(lowest) + n - 1) % n];
            reverse = pred < succ;
        }

        int comp = static_cast<int>(d.components_.size());
        std::vector<int> order;
        std::size_t n = walk.arcs.size();
        for (std::size_t i = 0; i < n; ++i) {
            int a = walk.arcs[i];
            Slot dep = walk.departures[i];
            Slot arr = other_end(a, dep);
            if (reverse) std::swap(dep, arr);
            d.tails_[static_cast<std::size_t>(a)] = dep;
            d.heads_[static_cast<std::size_t>(a)] = arr;
            d.arc_component_[static_cast<std::size_t>(a)] = comp;
        }
        // Store the component starting from its lowest label, in orientation order.
        order = walk.arcs;
        if (reverse) std::reverse(order.begin(), order.end());
        std::rotate(order.begin(), std::min_element(order.begin(), order.end()), order.end());
        d.components_.push_back(std::move(order));
    }

    for (int c = 0; c < d.crossing_count(); ++c) {
        auto& x = d.crossings_[static_cast<std::size_t>(c)];
        if (!(d.heads_[static_cast<std::size_t>(x.arcs[0])] == Slot{c, 0}) ||
            !(d.tails_[static_cast<std::size_t>(x.arcs[2])] == Slot{c, 2})) {
            throw OrientationConflict("crossing " + std::to_string(c) +
                                      ": first label is not the incoming under-strand");
        }
        // Over-strand d -> b is positive.
        x.sign = d.tails_[static_cast<std::size_t>(x.arcs[1])] == Slot{c, 1} ? Sign::positive : Sign::negative;
    }
    return d;
}

Diagram parse_pd(std::string_view text, std::string name) {
    std::vector<std::array<int, 4>> crossings;
    std::size_t i = 0;
    auto skip_separators = [&] {
        while (i < text.size() && (std::isspace(static_cast<unsigned char>(text[i])) || text[i] == ',')) ++i;
    };
    skip_separators();
    bool wrapped = false;
    if (text.substr(i, 3) == "PD[") {
        wrapped = true;
        i += 3;
    }
    for (;;) {
        skip_separators();
        if (i >= text.size()) break;
        if (wrapped && text[i] == ']') {
            ++i;
            skip_separators();
            if (i != text.size()) throw MalformedToken("trailing text after PD[...]");
            wrapped = false;
            break;
        }
        std::size_t token_start = i;
        auto fail = [&](const std::string& why) {
            std::size_t end = text.find_first_of(" \t\n", token_start);
            throw MalformedToken("'" + std::string(text.substr(token_start, end - token_start)) + "': " + why);
        };
        if (text.substr(i, 2) != "X[") fail("expected X[a,b,c,d]");
        i += 2;
        std::array<int, 4> arcs{};
        for (int k = 0; k < 4; ++k) {
            while (i < text.size() && text[i] == ' ') ++i;
            int value = 0;
            auto [ptr, ec] = std::from_chars(text.data() + i, text.data() + text.size(), value);
            if (ec != std::errc{}) fail("expected an integer label");
            i = static_cast<std::size_t>(ptr - text.data());
            if (value <= 0) fail("labels must be positive");
            arcs[static_cast<std::size_t>(k)] = value;
            while (i < text.size() && text[i] == ' ') ++i;
            char expected = k < 3 ? ',' : ']';
            if (i >= text.size() || text[i] != expected) fail(std::string("expected '") + expected + "'");
            ++i;
        }
        crossings.push_back(arcs);
    }
    if (wrapped) throw MalformedToken("unterminated PD[");
    return Diagram::from_pd(std::move(crossings), std::move(name));
}

Diagram parse_pd_json(const nlohmann::json& j, std::string name) {
    const nlohmann::json* list = &j;
    if (j.is_object()) {
        if (!j.contains("crossings")) throw MalformedToken("JSON object without a \"crossings\" field");
        list = &j.at("crossings");
        if (name.empty() && j.contains("name") && j.at("name").is_string()) name = j.at("name").get<std::string>();
    }
    if (!list->is_array()) throw MalformedToken("expected an array of 4-tuples");
    std::vector<std::array<int, 4>> crossings;
    for (const auto& x : *list) {
        if (!x.is_array() || x.size() != 4) throw MalformedToken("crossing " + x.dump() + " is not a 4-tuple");
        std::array<int, 4> arcs{};
        for (std::size_t k = 0; k < 4; ++k) {
            if (!x[k].is_number_integer()) throw MalformedToken("non-integer label in " + x.dump());
            arcs[k] = x[k].get<int>();
        }
        crossings.push_back(arcs);
    }
    return Diagram::from_pd(std::move(crossings), std::move(name));
}

std::string to_pd(const Diagram& d) {
    std::ostringstream out;
    bool first = true;
    for (const auto& x : d.crossings()) {
        if (!first) out << ' ';
        first = false;
        out << "X[" << x.arcs[0] << ',' << x.arcs[1] << ',' << x.arcs[2] << ',' << x.arcs[3] << ']';
    }
    return out.str();
}

nlohmann::json to_json(const Diagram& d) {
    nlohmann::json crossings = nlohmann::json::array();
    for (const auto& x : d.crossings()) crossings.push_back(x.arcs);
    auto signs = crossing_signs(d);
    return {
        {"schema", "statecycle.diagram/1"},
        {"name", d.name()},
        {"crossings", crossings},
        {"arc_count", d.arc_count()},
        {"n_plus", signs.n_plus},
        {"n_minus", signs.n_minus},
        {"components", d.component_count()},
    };
}

SignCounts crossing_signs(const Diagram& d) {
    SignCounts counts;
    for (const auto& x : d.crossings()) {
        if (x.sign == Sign::positive) {
            ++counts.n_plus;
        } else {
            ++counts.n_minus;
        }
    }
    return counts;
}

Diagram mirror(const Diagram& d) {
    std::vector<std::array<int, 4>> flipped;
    flipped.reserve(d.crossings().size());
    for (const auto& x : d.crossings()) {
        const auto& a = x.arcs;
        // The old over-strand becomes the under-strand; start from its incoming end.
        if (x.sign == Sign::positive) {
            flipped.push_back({a[3], a[0], a[1], a[2]});
        } else {
            flipped.push_back({a[1], a[2], a[3], a[0]});
        }
    }
    return Diagram::from_pd(std::move(flipped), d.name());
}

Diagram braid_closure(int strands, std::span<const int> word, std::string name) {
    if (strands < 1) throw MalformedToken("braid needs at least one strand");
    if (word.empty()) {
        if (strands == 1) return Diagram().renamed(std::move(name));
        throw MalformedToken("empty braid word on several strands gives a split unlink");
    }
    std::vector<int> current(static_cast<std::size_t>(strands));
    for (int k = 0; k < strands; ++k) current[static_cast<std::size_t>(k)] = k;
    int next_label = strands;
    std::vector<std::array<int, 4>> raw;
    for (int g : word) {
        int i = std::abs(g) - 1;
        if (g == 0 || i + 1 >= strands) throw MalformedToken("generator " + std::to_string(g) + " out of range");
        int left = current[static_cast<std::size_t>(i)];
        int right = current[static_cast<std::size_t>(i) + 1];
        int nw = next_label++;
        int ne = next_label++;
        // Strands run upward; positions counterclockwise from the incoming under-strand.
        if (g > 0) {
            raw.push_back({right, ne, nw, left});  // left strand passes over to the right
        } else {
            raw.push_back({left, right, ne, nw});  // right strand passes over to the left
        }
        current[static_cast<std::size_t>(i)] = nw;
        current[static_cast<std::size_t>(i) + 1] = ne;
    }
    std::map<int, int> close;
    for (int k = 0; k < strands; ++k) {
        if (current[static_cast<std::size_t>(k)] == k) {
            throw MalformedToken("strand " + std::to_string(k + 1) + " never crosses another strand");
        }
        close[current[static_cast<std::size_t>(k)]] = k;
    }
    std::map<int, int> compact;
    for (auto& x : raw) {
        for (int& a : x) {
            if (auto it = close.find(a); it != close.end()) a = it->second;
            compact.emplace(a, 0);
        }
    }
    int label = 0;
    for (auto& [key, value] : compact) value = ++label;
    for (auto& x : raw) {
        for (int& a : x) a = compact[a];
    }
    return canonical(Diagram::from_pd(std::move(raw), std::move(name)));
}

Diagram canonical(const Diagram& d) {
    if (d.crossing_count() == 0) return d;
    return PlanarMap(d).to_diagram(d.name());
}

}  // namespace statecycle
