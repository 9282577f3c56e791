#include "statecycle/planar_map.hpp"

#include <algorithm>
#include <numeric>

#include "statecycle/error.hpp"

namespace statecycle {

PlanarMap::PlanarMap(const Diagram& d) {
    for (int c = 0; c < d.crossing_count(); ++c) add_crossing();
    for (int arc = 1; arc <= d.arc_count(); ++arc) {
        link(d.tail(arc).index(), d.head(arc).index(), arc);
    }
}

int PlanarMap::add_crossing() {
    int c = crossing_count();
    mate_.insert(mate_.end(), 4, -1);
    outgoing_.insert(outgoing_.end(), 4, 0);
    origin_.insert(origin_.end(), 4, 0);
    return c;
}

int PlanarMap::append(const PlanarMap& other, int origin_offset) {
    int first = crossing_count();
    int shift = slot_count();
    for (int s = 0; s < other.slot_count(); ++s) {
        mate_.push_back(other.mate(s) < 0 ? -1 : other.mate(s) + shift);
        outgoing_.push_back(other.outgoing(s) ? 1 : 0);
        origin_.push_back(other.origin(s) + origin_offset);
    }
    return first;
}

void PlanarMap::link(int from, int to, int origin) {
    mate_.at(static_cast<std::size_t>(from)) = to;
    mate_.at(static_cast<std::size_t>(to)) = from;
    outgoing_[static_cast<std::size_t>(from)] = 1;
    outgoing_[static_cast<std::size_t>(to)] = 0;
    origin_[static_cast<std::size_t>(from)] = origin;
    origin_[static_cast<std::size_t>(to)] = origin;
}

int PlanarMap::edge_tail(int origin) const {
    int found = -1;
    for (int s = 0; s < slot_count(); ++s) {
        if (origin_[static_cast<std::size_t>(s)] == origin && outgoing(s)) {
            if (found >= 0) throw InvalidRegion("arc " + std::to_string(origin) + " has been split");
            found = s;
        }
    }
    if (found < 0) throw InvalidRegion("no arc labelled " + std::to_string(origin));
    return found;
}

void PlanarMap::reverse_piece(int slot) {
    std::vector<char> seen(static_cast<std::size_t>(crossing_count()), 0);
    std::vector<int> stack{crossing_of(slot)};
    seen[static_cast<std::size_t>(crossing_of(slot))] = 1;
    while (!stack.empty()) {
        int c = stack.back();
        stack.pop_back();
        for (int p = 0; p < 4; ++p) {
            int s = slot_of(c, p);
            outgoing_[static_cast<std::size_t>(s)] = outgoing_[static_cast<std::size_t>(s)] ? 0 : 1;
            int other = crossing_of(mate(s));
            if (!seen[static_cast<std::size_t>(other)]) {
                seen[static_cast<std::size_t>(other)] = 1;
                stack.push_back(other);
            }
        }
    }
}

std::vector<std::vector<int>> PlanarMap::faces() const {
    std::vector<char> used(static_cast<std::size_t>(slot_count()), 0);
    std::vector<std::vector<int>> result;
    for (int start = 0; start < slot_count(); ++start) {
        if (used[static_cast<std::size_t>(start)]) continue;
        std::vector<int> face;
        int dart = start;
        while (!used[static_cast<std::size_t>(dart)]) {
            used[static_cast<std::size_t>(dart)] = 1;
            face.push_back(dart);
            int arrive = mate(dart);
            // Turning left at the next crossing: the clockwise neighbour.
            dart = slot_of(crossing_of(arrive), (position_of(arrive) + 3) % 4);
        }
        result.push_back(std::move(face));
    }
    return result;
}

int PlanarMap::piece_count() const {
    int n = crossing_count();
    std::vector<int> parent(static_cast<std::size_t>(n));
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[static_cast<std::size_t>(x)] != x) {
            parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
            x = parent[static_cast<std::size_t>(x)];
        }
        return x;
    };
    int pieces = n;
    for (int s = 0; s < slot_count(); ++s) {
        int a = find(crossing_of(s));
        int b = find(crossing_of(mate(s)));
        if (a != b) {
            parent[static_cast<std::size_t>(a)] = b;
            --pieces;
        }
    }
    return pieces;
}

bool PlanarMap::is_planar() const {
    int v = crossing_count();
    if (v == 0) return true;
    int e = 2 * v;
    int f = static_cast<int>(faces().size());
    return v - e + f == 1 + piece_count();
}

Diagram PlanarMap::to_diagram(std::string name, std::vector<int>* slot_labels) const {
    for (int s = 0; s < slot_count(); ++s) {
        if (mate(s) < 0) throw InvalidRegion("unconnected slot " + std::to_string(s));
    }
    for (int c = 0; c < crossing_count(); ++c) {
        bool under_ok = outgoing(slot_of(c, 0)) != outgoing(slot_of(c, 2));
        bool over_ok = outgoing(slot_of(c, 1)) != outgoing(slot_of(c, 3));
        if (!under_ok || !over_ok) {
            throw OrientationConflict("edges through crossing " + std::to_string(c) + " are not coherently directed");
        }
    }
    // Label edges by walking components in orientation order.
    std::vector<int> label(static_cast<std::size_t>(slot_count()), 0);
    int next = 0;
    for (int s = 0; s < slot_count(); ++s) {
        if (label[static_cast<std::size_t>(s)] != 0) continue;
        int dart = outgoing(s) ? s : mate(s);
        while (label[static_cast<std::size_t>(dart)] == 0) {
            ++next;
            label[static_cast<std::size_t>(dart)] = next;
            int arrive = mate(dart);
            label[static_cast<std::size_t>(arrive)] = next;
            dart = slot_of(crossing_of(arrive), (position_of(arrive) + 2) % 4);
        }
    }
    if (slot_labels) *slot_labels = label;
    std::vector<std::array<int, 4>> raw;
    raw.reserve(static_cast<std::size_t>(crossing_count()));
    for (int c = 0; c < crossing_count(); ++c) {
        int first = outgoing(slot_of(c, 0)) ? 2 : 0;
        std::array<int, 4> arcs{};
        for (int k = 0; k < 4; ++k) arcs[static_cast<std::size_t>(k)] = label[static_cast<std::size_t>(slot_of(c, (first + k) % 4))];
        raw.push_back(arcs);
    }
    return Diagram::from_pd(std::move(raw), std::move(name));
}

int face_index_of_dart(const std::vector<std::vector<int>>& faces, int slot) {
    for (std::size_t f = 0; f < faces.size(); ++f) {
        if (std::find(faces[f].begin(), faces[f].end(), slot) != faces[f].end()) return static_cast<int>(f);
    }
    return -1;
}

}  // namespace statecycle
