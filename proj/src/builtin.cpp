#include "statecycle/builtin.hpp"

#include <array>
#include <functional>

#include "statecycle/error.hpp"
#include "statecycle/families.hpp"

namespace statecycle {

namespace {

struct Recipe {
    BuiltinEntry entry;
    std::function<Diagram()> make;
};

Diagram from_braid(int strands, std::initializer_list<int> word, const char* name) {
    std::vector<int> w(word);
    return braid_closure(strands, w, name);
}

const std::vector<Recipe>& recipes() {
    static const std::vector<Recipe> table = [] {
        std::vector<Recipe> r;
        r.push_back({{"unknot0", "crossingless unknot", {0, 0, 1, true, true}}, [] { return Diagram().renamed("unknot0"); }});
        r.push_back({{"kink", "one-crossing Reidemeister I kink", {1, 0, 1, true, false}},
                     [] { return parse_pd("X[1,1,2,2]", "kink"); }});
        r.push_back({{"trefoil_negative", "closure of the 2-braid s1^-3", {0, 3, 1, true, true}},
                     [] { return from_braid(2, {-1, -1, -1}, "trefoil_negative"); }});
        r.push_back({{"trefoil_positive", "closure of the 2-braid s1^3", {3, 0, 1, true, true}},
                     [] { return from_braid(2, {1, 1, 1}, "trefoil_positive"); }});
        r.push_back({{"figure8", "standard alternating figure-eight diagram", {2, 2, 1, true, true}},
                     [] { return parse_pd("X[4,2,5,1] X[8,6,1,5] X[6,3,7,4] X[2,7,3,8]", "figure8"); }});
        r.push_back({{"6_3", "alternating diagram of 6_3", {3, 3, 1, true, true}},
                     [] { return parse_pd("X[4,2,5,1] X[8,4,9,3] X[12,9,1,10] X[10,5,11,6] X[6,11,7,12] X[2,8,3,7]", "6_3"); }});
        r.push_back({{"solomon_mirror", "mirror of Solomon's link: closure of s1^4", {4, 0, 2, true, true}},
                     [] { return from_braid(2, {1, 1, 1, 1}, "solomon_mirror"); }});
        r.push_back({{"8_21_plus_adequate", "+ adequate 3-braid diagram of 8_21", {2, 6, 1, true, false}},
                     [] { return from_braid(3, {-1, -1, -1, -2, 1, 1, -2, -2}, "8_21_plus_adequate"); }});
        r.push_back({{"10_152_negative", "adequate negative nonalternating 3-braid diagram of 10_152", {0, 10, 1, true, true}},
                     [] { return from_braid(3, {-1, -1, -1, -2, -2, -1, -1, -2, -2, -2}, "10_152_negative"); }});
        r.push_back({{"9_42", "4-braid diagram of 9_42 with four Seifert circles", {5, 4, 1, true, false}},
                     [] { return from_braid(4, {1, 1, 2, 1, -3, -2, 1, -2, -3}, "9_42"); }});
        r.push_back({{"K1", "8_21_plus_adequate entwined with one copy of 10_152_negative", {7, 16, 1, true, false}},
                     [] { return entwine(bundled_family(1)).diagram.renamed("K1"); }});
        return r;
    }();
    return table;
}

}  // namespace

const std::vector<BuiltinEntry>& builtin_entries() {
    static const std::vector<BuiltinEntry> entries = [] {
        std::vector<BuiltinEntry> e;
        for (const auto& r : recipes()) e.push_back(r.entry);
        return e;
    }();
    return entries;
}

const BuiltinEntry& builtin_entry(std::string_view name) {
    for (const auto& r : recipes()) {
        if (r.entry.name == name) return r.entry;
    }
    throw UnknownName("no bundled diagram named '" + std::string(name) + "'");
}

Diagram builtin(std::string_view name) {
    for (const auto& r : recipes()) {
        if (r.entry.name == name) return r.make();
    }
    throw UnknownName("no bundled diagram named '" + std::string(name) + "'");
}

}  // namespace statecycle
