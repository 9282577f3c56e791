#include "statecycle/families.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "statecycle/builtin.hpp"
#include "statecycle/error.hpp"
#include "statecycle/stategraph.hpp"
#include "statecycle/statecycle.hpp"

namespace statecycle {

namespace {

using Faces = std::vector<std::vector<int>>;

constexpr int kCopyOriginStride = 100000;

// Darts of `face` running along edges with the given origin, provided the
// edge borders the face on one side only.
std::vector<int> darts_with_origin(const PlanarMap& m, const std::vector<int>& face, int origin) {
    std::vector<int> out;
    for (int d : face) {
        if (m.origin(d) != origin) continue;
        bool both_sides = std::find(face.begin(), face.end(), m.mate(d)) != face.end();
        if (!both_sides) out.push_back(d);
    }
    return out;
}

// A dart running forward along its edge has the face on the edge's left.
bool forward(const PlanarMap& m, int dart) { return m.outgoing(dart); }

// Joins two edges that face each other across a common face with k positive
// half twists. `left_dart` runs backward along its edge (face on the edge's
// right), `right_dart` forward. Twist crossings use positions
// 0 = SE under-in, 1 = NE over-out, 2 = NW under-out, 3 = SW over-in.
std::pair<int, int> band(PlanarMap& m, int left_dart, int right_dart, int k) {
    int lt = m.outgoing(left_dart) ? left_dart : m.mate(left_dart);
    int lh = m.mate(lt);
    int rt = m.outgoing(right_dart) ? right_dart : m.mate(right_dart);
    int rh = m.mate(rt);
    int lo = m.origin(lt), ro = m.origin(rt);
    int first = m.crossing_count();
    for (int j = 0; j < k; ++j) m.add_crossing();
    auto slot = [](int c, int p) { return PlanarMap::slot_of(c, p); };
    m.link(lt, slot(first, 3), lo);
    m.link(rt, slot(first, 0), ro);
    for (int j = first; j + 1 < first + k; ++j) {
        m.link(slot(j, 2), slot(j + 1, 3), 0);
        m.link(slot(j, 1), slot(j + 1, 0), 0);
    }
    m.link(slot(first + k - 1, 2), lh, lo);
    m.link(slot(first + k - 1, 1), rh, ro);
    return {first, first + k};
}

std::pair<int, int> band_between(PlanarMap& m, int dart_a, int dart_b, int k) {
    bool fa = forward(m, dart_a), fb = forward(m, dart_b);
    if (fa == fb) throw InvalidRegion("junction arcs are antiparallel across their common face");
    return fa ? band(m, dart_b, dart_a, k) : band(m, dart_a, dart_b, k);
}

struct FacePick {
    int dart_1 = -1;
    int dart_2 = -1;
};

std::vector<FacePick> face_picks(const PlanarMap& m, const Faces& faces, int origin_1, int origin_2) {
    std::vector<FacePick> out;
    for (const auto& face : faces) {
        auto d1 = darts_with_origin(m, face, origin_1);
        auto d2 = darts_with_origin(m, face, origin_2);
        for (int x : d1) {
            for (int y : d2) {
                if (x != y && x != m.mate(y)) out.push_back({x, y});
            }
        }
    }
    return out;
}

BlockParams block_params(const Diagram& block) {
    int m = block.crossing_count();
    return {m, resolve(block, Smoothing::all0(m)).loop_count(), resolve(block, Smoothing::all1(m)).loop_count()};
}

// Inserts crossing Y against side (i, i+1) of X so that X and Y bound a
// bigon and over/under alternates along both strands. Returns Y; its free
// side is (i+2, i+3).
int insert_twist(PlanarMap& m, int x, int i) {
    int y = m.add_crossing();
    auto slot = [](int c, int p) { return PlanarMap::slot_of(c, ((p % 4) + 4) % 4); };
    int xs[2] = {slot(x, i), slot(x, i + 1)};
    int near[2] = {slot(y, i + 1), slot(y, i)};
    int far[2] = {slot(y, i + 3), slot(y, i + 2)};
    int mates[2] = {m.mate(xs[0]), m.mate(xs[1])};
    if (mates[0] == xs[1]) throw InvalidRegion("cannot twist against a kink loop");
    bool out[2] = {m.outgoing(xs[0]), m.outgoing(xs[1])};
    int origin[2] = {m.origin(xs[0]), m.origin(xs[1])};
    for (int k = 0; k < 2; ++k) {
        if (out[k]) {
            m.link(xs[k], near[k], origin[k]);
            m.link(far[k], mates[k], origin[k]);
        } else {
            m.link(mates[k], far[k], origin[k]);
            m.link(near[k], xs[k], origin[k]);
        }
    }
    return y;
}

std::vector<std::vector<int>> regions_of(const PlanarMap& m) {
    int n = m.crossing_count();
    std::vector<int> parent(static_cast<std::size_t>(n));
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int v) {
        while (parent[static_cast<std::size_t>(v)] != v) v = parent[static_cast<std::size_t>(v)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(v)])];
        return v;
    };
    for (const auto& face : m.faces()) {
        if (face.size() != 2) continue;
        int a = PlanarMap::crossing_of(face[0]), b = PlanarMap::crossing_of(face[1]);
        if (a != b) parent[static_cast<std::size_t>(find(a))] = find(b);
    }
    std::map<int, std::vector<int>> groups;
    for (int c = 0; c < n; ++c) groups[find(c)].push_back(c);
    std::vector<std::vector<int>> out;
    for (auto& [root, g] : groups) out.push_back(std::move(g));
    std::sort(out.begin(), out.end());
    return out;
}

// Side of X on a bigon, if any: dart s in a bigon face gives side (s, s+1).
std::optional<int> bigon_side(const PlanarMap& m, int x) {
    for (const auto& face : m.faces()) {
        if (face.size() != 2) continue;
        if (PlanarMap::crossing_of(face[0]) == PlanarMap::crossing_of(face[1])) continue;
        for (int d : face) {
            if (PlanarMap::crossing_of(d) == x) return PlanarMap::position_of(d);
        }
    }
    return std::nullopt;
}

int free_side(const PlanarMap& m, int x) {
    for (int i = 0; i < 4; ++i) {
        if (m.mate(PlanarMap::slot_of(x, i)) != PlanarMap::slot_of(x, (i + 1) % 4) &&
            m.mate(PlanarMap::slot_of(x, (i + 1) % 4)) != PlanarMap::slot_of(x, i)) {
            return i;
        }
    }
    throw InvalidRegion("crossing " + std::to_string(x) + " has no side to twist against");
}

}  // namespace

std::vector<std::vector<int>> twist_regions(const Diagram& d) {
    if (d.crossing_count() == 0) return {};
    return regions_of(PlanarMap(d));
}

PlanarMap expand_twists(const PlanarMap& input, int min_crossings) {
    PlanarMap m = input;
    if (min_crossings < 1) throw OutOfRange("min_crossings must be positive");
    for (const auto& region : regions_of(input)) {
        int size = static_cast<int>(region.size());
        if (size >= min_crossings) continue;
        int target = (size % 2 == min_crossings % 2) ? min_crossings : min_crossings + 1;
        int x = region.front();
        auto side = bigon_side(m, x);
        int i = side ? *side : free_side(m, x);
        for (int added = size; added < target; added += 2) {
            int y = insert_twist(m, x, i);
            insert_twist(m, y, i + 2);
        }
    }
    return m;
}

Diagram expand_twists(const Diagram& d, int min_crossings) {
    if (d.crossing_count() == 0) return d;
    return expand_twists(PlanarMap(d), min_crossings).to_diagram(d.name());
}

FamilyKnot entwine(const EntwineSpec& spec) {
    if (spec.copies < 0) throw OutOfRange("copies must be nonnegative");
    if (spec.twists[0] < 1 || spec.twists[1] < 1) throw InvalidRegion("twist counts must be at least 1");
    for (const auto& r : spec.regions) {
        if (r.base_arc < 1 || r.base_arc > spec.base.arc_count()) throw InvalidRegion("base arc " + std::to_string(r.base_arc) + " does not exist");
        if (r.block_arc < 1 || r.block_arc > spec.block.arc_count()) throw InvalidRegion("block arc " + std::to_string(r.block_arc) + " does not exist");
    }
    if (spec.regions[0].base_arc == spec.regions[1].base_arc || spec.regions[0].block_arc == spec.regions[1].block_arc) {
        throw InvalidRegion("the two regions must use distinct arcs");
    }

    FamilyKnot fk;
    fk.copies = spec.copies;
    PlanarMap m(spec.base);
    PlanarMap block_map(spec.block);
    if (spec.expand) {
        m = expand_twists(m);
        block_map = expand_twists(block_map);
    }
    fk.base_span = {0, m.crossing_count()};
    fk.block = block_params(spec.expand ? block_map.to_diagram() : spec.block);
    if (spec.copies == 0) {
        fk.diagram = spec.expand ? m.to_diagram(spec.base.name()) : spec.base;
        return fk;
    }

    const auto& [r1, r2] = spec.regions;
    Faces block_faces = block_map.faces();
    auto block_picks = face_picks(block_map, block_faces, r1.block_arc, r2.block_arc);
    if (block_picks.empty()) throw InvalidRegion("block arcs do not border a common face");
    std::vector<int> junction_slots;

    for (int copy = 0; copy < spec.copies; ++copy) {
        int offset = kCopyOriginStride * (copy + 1);
        auto base_picks = face_picks(m, m.faces(), r1.base_arc, r2.base_arc);
        std::optional<std::pair<FacePick, FacePick>> chosen;
        bool reverse = false;
        for (const auto& bp : base_picks) {
            for (const auto& kp : block_picks) {
                bool p1 = forward(m, bp.dart_1) != forward(block_map, kp.dart_1);
                bool p2 = forward(m, bp.dart_2) != forward(block_map, kp.dart_2);
                if (p1 == p2) {
                    chosen = {bp, kp};
                    reverse = !p1;
                    break;
                }
            }
            if (chosen) break;
        }
        if (!chosen) throw InvalidRegion("no common face lets both junctions run parallel");
        int first = m.append(block_map, offset);
        int shift = 4 * first;
        if (reverse) m.reverse_piece(shift);
        int block_end = m.crossing_count();
        auto [bp, kp] = *chosen;
        auto j1 = band_between(m, bp.dart_1, kp.dart_1 + shift, spec.twists[0]);
        auto j2 = band_between(m, bp.dart_2, kp.dart_2 + shift, spec.twists[1]);
        fk.block_spans.emplace_back(first, block_end);
        fk.junction_spans.emplace_back(j1.first, j2.second);
        junction_slots.push_back(kp.dart_1 + shift);
    }
    if (!m.is_planar()) throw InvalidRegion("entwined diagram is not planar");
    std::vector<int> labels;
    std::string name = spec.base.name() + "+" + std::to_string(spec.copies) + "x" + spec.block.name();
    fk.diagram = m.to_diagram(name, &labels);
    for (int s : junction_slots) fk.junction_arcs.push_back(labels[static_cast<std::size_t>(s)]);
    return fk;
}

EnhancedState alpha_k(const FamilyKnot& fk, int k) {
    if (k < 0 || k > fk.copies) throw OutOfRange("k = " + std::to_string(k) + " outside 0.." + std::to_string(fk.copies));
    Smoothing s(fk.diagram.crossing_count());
    for (int j = 0; j < k; ++j) {
        for (int c = fk.block_spans[static_cast<std::size_t>(j)].first; c < fk.block_spans[static_cast<std::size_t>(j)].second; ++c) s.set(c, true);
    }
    State st = resolve(fk.diagram, s);
    LoopRoles roles = loop_roles(st);
    std::vector<Mark> marks(static_cast<std::size_t>(st.loop_count()), Mark::plus);
    for (int l = 0; l < st.loop_count(); ++l) {
        if (roles.zero_tracing[static_cast<std::size_t>(l)]) marks[static_cast<std::size_t>(l)] = Mark::minus;
    }
    return EnhancedState(std::move(st), std::move(marks));
}

std::vector<int> predicted_deltas(const FamilyKnot& fk) {
    int gap = fk.block.crossings + 2 - fk.block.s0 - fk.block.s1;
    if (gap <= 0) {
        throw SeparationViolated("block has s0 + s1 = " + std::to_string(fk.block.s0 + fk.block.s1) + " >= m + 2 = " +
                                 std::to_string(fk.block.crossings + 2));
    }
    int delta0 = bigrading(alpha_k(fk, 0), fk.diagram).delta();
    std::vector<int> out;
    for (int k = 0; k <= fk.copies; ++k) {
        int predicted = delta0 + k * gap;
        int actual = bigrading(alpha_k(fk, k), fk.diagram).delta();
        if (predicted != actual) {
            throw Error("InternalError", "alpha_" + std::to_string(k) + " has delta " + std::to_string(actual) +
                                             ", predicted " + std::to_string(predicted));
        }
        out.push_back(predicted);
    }
    return out;
}

std::array<RegionSite, 2> bundled_sites() { return {RegionSite{1, 1}, RegionSite{9, 19}}; }

EntwineSpec bundled_family(int copies, bool expand) {
    EntwineSpec spec;
    spec.base = builtin("8_21_plus_adequate");
    spec.block = builtin("10_152_negative");
    spec.regions = bundled_sites();
    spec.copies = copies;
    spec.expand = expand;
    return spec;
}

std::optional<std::array<RegionSite, 2>> find_sites(const Diagram& base, const Diagram& block, int max_copies) {
    int m = block.crossing_count();
    State all1 = resolve(block, Smoothing::all1(m));
    PlanarMap bm(base), km(block);
    std::set<std::pair<int, int>> base_pairs, block_pairs;
    for (int a1 = 1; a1 <= base.arc_count(); ++a1) {
        for (int a2 = 1; a2 <= base.arc_count(); ++a2) {
            if (a1 != a2 && !face_picks(bm, bm.faces(), a1, a2).empty()) base_pairs.insert({a1, a2});
        }
    }
    for (int b1 = 1; b1 <= block.arc_count(); ++b1) {
        for (int b2 = 1; b2 <= block.arc_count(); ++b2) {
            if (b1 == b2 || all1.loop_of_arc(b1) != all1.loop_of_arc(b2)) continue;
            if (!face_picks(km, km.faces(), b1, b2).empty()) block_pairs.insert({b1, b2});
        }
    }
    for (const auto& [a1, a2] : base_pairs) {
        for (const auto& [b1, b2] : block_pairs) {
            EntwineSpec spec;
            spec.base = base;
            spec.block = block;
            spec.regions = {RegionSite{a1, b1}, RegionSite{a2, b2}};
            bool ok = true;
            for (int n = 1; n <= max_copies && ok; ++n) {
                spec.copies = n;
                try {
                    FamilyKnot fk = entwine(spec);
                    ok = fk.diagram.component_count() == 1;
                    for (int k = 0; k <= n && ok; ++k) {
                        EnhancedState a = alpha_k(fk, k);
                        ok = is_state_cycle(a) && certify(a, fk.diagram).has_value();
                    }
                } catch (const Error&) {
                    ok = false;
                }
            }
            if (ok) return std::array<RegionSite, 2>{RegionSite{a1, b1}, RegionSite{a2, b2}};
        }
    }
    return std::nullopt;
}

nlohmann::json manifest(const FamilyKnot& fk) {
    SignCounts sc = crossing_signs(fk.diagram);
    nlohmann::json alphas = nlohmann::json::array();
    for (int k = 0; k <= fk.copies; ++k) {
        Bigrading b = bigrading(alpha_k(fk, k), fk.diagram);
        alphas.push_back({{"k", k}, {"t", b.t}, {"q", b.q}, {"delta", b.delta()}});
    }
    auto deltas = predicted_deltas(fk);
    std::set<int> distinct(deltas.begin(), deltas.end());
    nlohmann::json spans = nlohmann::json::array();
    for (std::size_t j = 0; j < fk.block_spans.size(); ++j) {
        spans.push_back({{"block", {fk.block_spans[j].first, fk.block_spans[j].second}},
                         {"junction", {fk.junction_spans[j].first, fk.junction_spans[j].second}},
                         {"junction_arc", fk.junction_arcs[j]}});
    }
    return {{"schema", "statecycle.family/1"},
            {"n", fk.copies},
            {"crossings", fk.diagram.crossing_count()},
            {"n_plus", sc.n_plus},
            {"n_minus", sc.n_minus},
            {"alpha_bigradings", alphas},
            {"predicted_deltas", deltas},
            {"predicted_width_lower_bound", static_cast<int>(distinct.size())},
            {"copies", spans},
            {"pd", to_pd(fk.diagram)}};
}

}  // namespace statecycle
