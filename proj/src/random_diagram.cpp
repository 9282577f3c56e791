#include "statecycle/random_diagram.hpp"

#include <algorithm>
#include <array>
#include <optional>
#include <vector>

#include "statecycle/error.hpp"

namespace statecycle {

namespace {

struct Point {
    long long x = 0;
    long long y = 0;
};

long long cross(Point o, Point a, Point b) { return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x); }

int sign(long long v) { return (v > 0) - (v < 0); }

// Position of a crossing along segment i as the fraction num/den of its length.
struct Passage {
    long long num = 0;
    long long den = 1;
    int crossing = 0;
    bool under = false;
};

bool less_param(const Passage& a, const Passage& b) { return a.num * b.den < b.num * a.den; }
bool same_param(const Passage& a, const Passage& b) { return a.num * b.den == b.num * a.den; }

std::optional<Diagram> try_polygon(const std::vector<Point>& p, std::mt19937_64& rng, const RandomDiagramOptions& o) {
    int n = static_cast<int>(p.size());
    auto at = [&](int i) { return p[static_cast<std::size_t>(((i % n) + n) % n)]; };
    for (int i = 0; i < n; ++i) {
        if (cross(at(i), at(i + 1), at(i + 2)) == 0) return std::nullopt;
    }
    struct Hit {
        int under_seg, over_seg;
        Point under_dir, over_dir;
    };
    std::vector<Hit> hits;
    std::vector<std::vector<Passage>> along(static_cast<std::size_t>(n));
    std::bernoulli_distribution coin(0.5);
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            if (j == i + 1 || (i == 0 && j == n - 1)) continue;
            Point a = at(i), b = at(i + 1), c = at(j), d = at(j + 1);
            long long d1 = cross(a, b, c), d2 = cross(a, b, d), d3 = cross(c, d, a), d4 = cross(c, d, b);
            if (d1 == 0 || d2 == 0 || d3 == 0 || d4 == 0) return std::nullopt;
            if (sign(d1) == sign(d2) || sign(d3) == sign(d4)) continue;
            int id = static_cast<int>(hits.size());
            if (id >= o.max_crossings) return std::nullopt;
            Point u{b.x - a.x, b.y - a.y}, v{d.x - c.x, d.y - c.y};
            long long den = u.x * v.y - u.y * v.x;
            long long ti = (c.x - a.x) * v.y - (c.y - a.y) * v.x;
            long long tj = (c.x - a.x) * u.y - (c.y - a.y) * u.x;
            if (den < 0) {
                den = -den;
                ti = -ti;
                tj = -tj;
            }
            bool i_under = coin(rng);
            hits.push_back(i_under ? Hit{i, j, u, v} : Hit{j, i, v, u});
            along[static_cast<std::size_t>(i)].push_back({ti, den, id, i_under});
            along[static_cast<std::size_t>(j)].push_back({tj, den, id, !i_under});
        }
    }
    if (static_cast<int>(hits.size()) < o.min_crossings) return std::nullopt;
    int total = 2 * static_cast<int>(hits.size());
    // Edge k of the traversal ends at passage k and the next edge leaves it.
    std::vector<int> under_in(hits.size()), over_in(hits.size());
    int passage = 0;
    for (auto& seg : along) {
        std::sort(seg.begin(), seg.end(), less_param);
        for (std::size_t k = 1; k < seg.size(); ++k) {
            if (same_param(seg[k - 1], seg[k])) return std::nullopt;
        }
        for (const auto& ps : seg) {
            ++passage;
            (ps.under ? under_in : over_in)[static_cast<std::size_t>(ps.crossing)] = passage;
        }
    }
    auto next = [&](int arc) { return arc % total + 1; };
    std::vector<std::array<int, 4>> pd;
    for (std::size_t c = 0; c < hits.size(); ++c) {
        int a = under_in[c], oi = over_in[c];
        long long turn = hits[c].under_dir.x * hits[c].over_dir.y - hits[c].under_dir.y * hits[c].over_dir.x;
        if (turn > 0) {
            pd.push_back({a, oi, next(a), next(oi)});
        } else {
            pd.push_back({a, next(oi), next(a), oi});
        }
    }
    return Diagram::from_pd(std::move(pd));
}

}  // namespace

Diagram random_diagram(std::mt19937_64& rng, const RandomDiagramOptions& options) {
    if (options.min_crossings < 1 || options.max_crossings < options.min_crossings || options.grid < 2 ||
        options.min_vertices < 3 || options.max_vertices < options.min_vertices) {
        throw OutOfRange("invalid random diagram options");
    }
    std::uniform_int_distribution<int> coord(0, options.grid);
    std::uniform_int_distribution<int> vertices(options.min_vertices, options.max_vertices);
    for (int attempt = 0; attempt < 100000; ++attempt) {
        std::vector<Point> poly(static_cast<std::size_t>(vertices(rng)));
        for (auto& pt : poly) pt = {coord(rng), coord(rng)};
        if (auto d = try_polygon(poly, rng, options)) return *d;
    }
    throw OutOfRange("no admissible polygon found");
}

Diagram random_diagram(std::uint64_t seed, const RandomDiagramOptions& options) {
    std::mt19937_64 rng(seed);
    return random_diagram(rng, options);
}

}  // namespace statecycle
