#ifndef STATECYCLE_PLANAR_MAP_HPP
#define STATECYCLE_PLANAR_MAP_HPP

#include <string>
#include <vector>

#include "statecycle/diagram.hpp"

namespace statecycle {

// Mutable 4-valent map used for diagram surgery (twists, kinks, gluing)
// and for face traversal. Slots are numbered 4*crossing + position with
// positions counterclockwise; the under-strand always occupies positions
// 0 and 2. Each edge joins two slots, is directed, and remembers the arc
// label it descends from so callers can follow arcs through surgery.
class PlanarMap {
public:
    PlanarMap() = default;
    explicit PlanarMap(const Diagram& d);

    int crossing_count() const noexcept { return static_cast<int>(mate_.size() / 4); }
    int slot_count() const noexcept { return static_cast<int>(mate_.size()); }

    int add_crossing();
    // Disjoint union; the other map's crossings follow ours and its edge
    // origins are shifted by `origin_offset`. Returns the first new crossing.
    int append(const PlanarMap& other, int origin_offset);
    // Directed edge from -> to (from leaves its crossing, to enters one).
    void link(int from, int to, int origin);

    int mate(int slot) const { return mate_.at(static_cast<std::size_t>(slot)); }
    bool outgoing(int slot) const { return outgoing_.at(static_cast<std::size_t>(slot)) != 0; }
    int origin(int slot) const { return origin_.at(static_cast<std::size_t>(slot)); }

    // Outgoing slot of the (unique) edge with the given origin label; throws
    // InvalidRegion when the label has been split or never existed.
    int edge_tail(int origin) const;

    // Reverses every edge in the connected piece containing `slot`.
    void reverse_piece(int slot);

    // Faces as cycles of darts. A dart is a slot s read as "leave the
    // crossing through s"; the face lies on the left of every dart.
    std::vector<std::vector<int>> faces() const;
    // Number of connected pieces of the underlying 4-valent graph.
    int piece_count() const;
    // Euler check V - E + F = 1 + pieces.
    bool is_planar() const;

    // Rebuilds a validated diagram, relabelling arcs consecutively along
    // each component in the direction of the edges.
    // When `slot_labels` is given it receives the new arc label of every slot.
    Diagram to_diagram(std::string name = {}, std::vector<int>* slot_labels = nullptr) const;

    static int slot_of(int crossing, int position) noexcept { return 4 * crossing + position; }
    static int crossing_of(int slot) noexcept { return slot / 4; }
    static int position_of(int slot) noexcept { return slot % 4; }

private:
    std::vector<int> mate_;
    std::vector<char> outgoing_;
    std::vector<int> origin_;
};

// Face containing the dart that leaves through `slot`, as an index into
// faces(); helper used by gluing code.
int face_index_of_dart(const std::vector<std::vector<int>>& faces, int slot);

}  // namespace statecycle

#endif  // STATECYCLE_PLANAR_MAP_HPP
