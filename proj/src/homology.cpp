#include "statecycle/homology.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cstdlib>
#include <iomanip>
#include <numeric>
#include <sstream>

#include "statecycle/error.hpp"

namespace statecycle {

namespace {

constexpr int kMaxBits = 31;

const std::array<std::array<std::int64_t, 33>, 33>& binomials() {
    static const auto table = [] {
        std::array<std::array<std::int64_t, 33>, 33> c{};
        for (int n = 0; n <= 32; ++n) {
            c[n][0] = 1;
            for (int k = 1; k <= n; ++k) c[n][k] = c[n - 1][k - 1] + (k <= n - 1 ? c[n - 1][k] : 0);
        }
        return c;
    }();
    return table;
}

std::int64_t choose(int n, int k) {
    if (k < 0 || k > n) return 0;
    return binomials()[static_cast<std::size_t>(n)][static_cast<std::size_t>(k)];
}

// Position of an m-bit mask among all m-bit masks in increasing order.
std::int64_t colex_rank(std::uint32_t bits) {
    std::int64_t r = 0;
    int i = 0;
    while (bits) {
        int pos = std::countr_zero(bits);
        r += choose(pos, i + 1);
        ++i;
        bits &= bits - 1;
    }
    return r;
}

// Next integer with the same popcount (Gosper).
std::uint64_t next_same_popcount(std::uint64_t v) {
    std::uint64_t c = v & (~v + 1);
    std::uint64_t r = v + c;
    return (((r ^ v) >> 2) / c) | r;
}

template <class Fn>
void for_each_mask(int bits, int ones, Fn&& fn) {
    if (ones == 0) {
        fn(std::uint64_t{0});
        return;
    }
    std::uint64_t limit = std::uint64_t{1} << bits;
    for (std::uint64_t v = (std::uint64_t{1} << ones) - 1; v < limit; v = next_same_popcount(v)) fn(v);
}

struct LoopLabels {
    int loops = 0;
    std::vector<std::uint8_t> arc_loop;  // arc_count + 1 entries
    std::vector<std::uint8_t> rep;       // smallest arc per loop
};

LoopLabels label_loops(const Diagram& d, std::uint32_t mask) {
    LoopLabels out;
    int arcs = d.arc_count();
    out.arc_loop.assign(static_cast<std::size_t>(arcs) + 1, 0);
    if (d.crossing_count() == 0) {
        out.loops = 1;
        out.rep.push_back(0);
        return out;
    }
    std::vector<int> parent(static_cast<std::size_t>(arcs) + 1);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[static_cast<std::size_t>(x)] != x) {
            parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
            x = parent[static_cast<std::size_t>(x)];
        }
        return x;
    };
    auto unite = [&](int a, int b) { parent[static_cast<std::size_t>(find(a))] = find(b); };
    for (int c = 0; c < d.crossing_count(); ++c) {
        const auto& a = d.crossing(c).arcs;
        if (((mask >> c) & 1U) == 0) {
            unite(a[0], a[1]);
            unite(a[2], a[3]);
        } else {
            unite(a[0], a[3]);
            unite(a[1], a[2]);
        }
    }
    std::vector<int> root_loop(static_cast<std::size_t>(arcs) + 1, -1);
    for (int arc = 1; arc <= arcs; ++arc) {
        int& l = root_loop[static_cast<std::size_t>(find(arc))];
        if (l < 0) {
            l = out.loops++;
            out.rep.push_back(static_cast<std::uint8_t>(arc));
        }
        out.arc_loop[static_cast<std::size_t>(arc)] = static_cast<std::uint8_t>(l);
    }
    return out;
}

void check_window(const Diagram& d, int& lo, int& hi) {
    int n = d.crossing_count();
    if (hi < 0) hi = n;
    if (lo < 0 || lo > hi || hi > n) {
        throw OutOfRange("height window [" + std::to_string(lo) + ", " + std::to_string(hi) + "] outside 0.." + std::to_string(n));
    }
}

}  // namespace

LaurentPoly poly_mul(const LaurentPoly& a, const LaurentPoly& b) {
    LaurentPoly out;
    for (const auto& [ea, ca] : a) {
        for (const auto& [eb, cb] : b) out[ea + eb] += ca * cb;
    }
    std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
    return out;
}

LaurentPoly poly_add(const LaurentPoly& a, const LaurentPoly& b) {
    LaurentPoly out = a;
    for (const auto& [e, c] : b) out[e] += c;
    std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
    return out;
}

LaurentPoly poly_invert(const LaurentPoly& p) {
    LaurentPoly out;
    for (const auto& [e, c] : p) out[-e] = c;
    return out;
}

std::string to_string(const LaurentPoly& p, const std::string& var) {
    if (p.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    for (auto it = p.rbegin(); it != p.rend(); ++it) {
        auto [e, c] = *it;
        if (!first) out << (c < 0 ? " - " : " + ");
        else if (c < 0) out << "-";
        long long mag = c < 0 ? -c : c;
        if (mag != 1 || e == 0) out << mag;
        if (e != 0) {
            out << var;
            if (e != 1) out << "^" << e;
        }
        first = false;
    }
    return out.str();
}

nlohmann::json poly_to_json(const LaurentPoly& p) {
    nlohmann::json j = nlohmann::json::object();
    for (const auto& [e, c] : p) j[std::to_string(e)] = c;
    return j;
}

std::size_t memory_limit() {
    if (const char* env = std::getenv("STATECYCLE_MAX_MEM")) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(env, &end, 10);
        if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
    }
    return std::size_t{3} << 30;
}

std::size_t estimate_memory(const Diagram& d, int min_height, int max_height) {
    check_window(d, min_height, max_height);
    int n = d.crossing_count();
    SignCounts sc = crossing_signs(d);
    std::size_t states = 0;
    std::size_t table_bytes = 0;
    std::map<std::pair<int, int>, std::int64_t> sizes;
    for (int h = min_height; h <= max_height; ++h) {
        for_each_mask(n, h, [&](std::uint64_t mask) {
            int loops = count_loops(d, mask);
            ++states;
            table_bytes += static_cast<std::size_t>(d.arc_count() + 1) + 13 * static_cast<std::size_t>(loops + 1) + 48;
            for (int m = 0; m <= loops; ++m) sizes[{h, loops - 2 * m + h + sc.n_plus - 2 * sc.n_minus}] += choose(loops, m);
        });
    }
    std::int64_t peak = 0;
    for (const auto& [key, size] : sizes) peak = std::max(peak, size);
    // One bucket's rows in rational form, with room for fill-in.
    std::size_t matrix_bytes = static_cast<std::size_t>(peak) * static_cast<std::size_t>(std::max(n, 1)) * 2 * 48 * 2;
    (void)states;
    return table_bytes + matrix_bytes;
}

CubeComplex build_complex(const Diagram& d, int max_crossings) {
    HomologyOptions o;
    o.max_crossings = max_crossings;
    return build_complex(d, o);
}

CubeComplex build_complex(const Diagram& d, const HomologyOptions& options) {
    int n = d.crossing_count();
    if (n > options.max_crossings) {
        throw TooLarge(std::to_string(n) + " crossings exceeds the cap of " + std::to_string(options.max_crossings));
    }
    if (n > kMaxBits) throw TooLarge("cube complexes support at most 31 crossings");
    int lo = options.min_height, hi = options.max_height;
    check_window(d, lo, hi);
    std::size_t limit = options.max_memory ? options.max_memory : memory_limit();
    std::size_t need = estimate_memory(d, lo, hi);
    if (need > limit) {
        throw TooLarge("estimated " + std::to_string(need >> 20) + " MiB exceeds the memory cap of " +
                       std::to_string(limit >> 20) + " MiB");
    }

    CubeComplex c;
    c.diagram_ = d;
    c.signs_ = crossing_signs(d);
    c.min_height_ = lo;
    c.max_height_ = hi;
    for (int h = lo; h <= hi; ++h) {
        for_each_mask(n, h, [&](std::uint64_t m) {
            auto mask = static_cast<std::uint32_t>(m);
            LoopLabels ll = label_loops(d, mask);
            int s = static_cast<int>(c.masks_.size());
            c.masks_.push_back(mask);
            c.state_index_.emplace(mask, s);
            c.loops_.push_back(static_cast<std::uint8_t>(ll.loops));
            c.arc_loop_.insert(c.arc_loop_.end(), ll.arc_loop.begin(), ll.arc_loop.end());
            c.rep_start_.push_back(static_cast<std::uint32_t>(c.rep_arc_.size()));
            c.rep_arc_.insert(c.rep_arc_.end(), ll.rep.begin(), ll.rep.end());
            c.block_start_.push_back(static_cast<std::uint32_t>(c.block_offset_.size()));
            for (int minus = 0; minus <= ll.loops; ++minus) {
                int& size = c.bucket_sizes_[{h - c.signs_.n_minus, c.q_of(s, minus)}];
                c.block_offset_.push_back(size);
                size += static_cast<int>(choose(ll.loops, minus));
            }
            c.generator_count_ += std::size_t{1} << ll.loops;
        });
    }
#ifndef NDEBUG
    if (!c.check_d_squared()) throw Error("InternalError", "d o d != 0");
#endif
    return c;
}

int CubeComplex::state_of(std::uint32_t mask) const {
    auto it = state_index_.find(mask);
    if (it == state_index_.end()) throw OutOfRange("smoothing outside the complex window");
    return it->second;
}

int CubeComplex::height_of(int state) const { return std::popcount(masks_[static_cast<std::size_t>(state)]); }

int CubeComplex::q_of(int state, int minus) const {
    int loops = loops_[static_cast<std::size_t>(state)];
    return loops - 2 * minus + height_of(state) + signs_.n_plus - 2 * signs_.n_minus;
}

std::vector<Bigrading> CubeComplex::buckets() const {
    std::vector<Bigrading> out;
    for (const auto& [key, size] : bucket_sizes_) {
        if (size > 0) out.push_back({key.first, key.second});
    }
    return out;
}

int CubeComplex::bucket_size(Bigrading b) const {
    auto it = bucket_sizes_.find({b.t, b.q});
    return it == bucket_sizes_.end() ? 0 : it->second;
}

std::vector<Generator> CubeComplex::generators(Bigrading b) const {
    std::vector<Generator> out;
    int h = b.t + signs_.n_minus;
    if (h < min_height_ || h > max_height_) return out;
    for (std::size_t s = 0; s < masks_.size(); ++s) {
        if (height_of(static_cast<int>(s)) != h) continue;
        int loops = loops_[s];
        int j = b.q - h - signs_.n_plus + 2 * signs_.n_minus;
        if ((loops - j) % 2 != 0) continue;
        int minus = (loops - j) / 2;
        if (minus < 0 || minus > loops) continue;
        for_each_mask(loops, minus, [&](std::uint64_t marks) { out.push_back({masks_[s], static_cast<std::uint32_t>(marks)}); });
    }
    return out;
}

bool CubeComplex::contains(Generator g) const {
    auto it = state_index_.find(g.smoothing);
    if (it == state_index_.end()) return false;
    return g.marks < (std::uint64_t{1} << loops_[static_cast<std::size_t>(it->second)]);
}

int CubeComplex::loop_count(std::uint32_t smoothing) const { return loops_[static_cast<std::size_t>(state_of(smoothing))]; }

Bigrading CubeComplex::grading_of(Generator g) const {
    int s = state_of(g.smoothing);
    return {height_of(s) - signs_.n_minus, q_of(s, std::popcount(g.marks))};
}

int CubeComplex::index_of(Generator g) const {
    if (!contains(g)) throw OutOfRange("generator outside the complex");
    int s = state_of(g.smoothing);
    auto base = block_offset_[block_start_[static_cast<std::size_t>(s)] + static_cast<std::size_t>(std::popcount(g.marks))];
    return static_cast<int>(base + colex_rank(g.marks));
}

std::vector<std::pair<Generator, int>> CubeComplex::differential(Generator g) const {
    std::vector<std::pair<Generator, int>> out;
    int s = state_of(g.smoothing);
    if (height_of(s) + 1 > max_height_) return out;
    int arcs1 = diagram_.arc_count() + 1;
    const std::uint8_t* al_s = &arc_loop_[static_cast<std::size_t>(s) * static_cast<std::size_t>(arcs1)];
    const std::uint8_t* rep_s = &rep_arc_[rep_start_[static_cast<std::size_t>(s)]];
    int loops_s = loops_[static_cast<std::size_t>(s)];
    for (int c = 0; c < diagram_.crossing_count(); ++c) {
        std::uint32_t bit = std::uint32_t{1} << c;
        if (g.smoothing & bit) continue;
        std::uint32_t target = g.smoothing | bit;
        int t = state_of(target);
        const std::uint8_t* al_t = &arc_loop_[static_cast<std::size_t>(t) * static_cast<std::size_t>(arcs1)];
        int sign = (std::popcount(g.smoothing & (bit - 1)) % 2) ? -1 : 1;
        const auto& a = diagram_.crossing(c).arcs;
        int la = al_s[a[0]], lb = al_s[a[2]];
        std::uint32_t ta = std::uint32_t{1} << al_t[a[0]];
        std::uint32_t tb = std::uint32_t{1} << al_t[a[1]];
        std::uint32_t base = 0;
        for (int l = 0; l < loops_s; ++l) {
            if (l == la || l == lb) continue;
            if ((g.marks >> l) & 1U) base |= std::uint32_t{1} << al_t[rep_s[l]];
        }
        bool xa = (g.marks >> la) & 1U;
        bool xb = (g.marks >> lb) & 1U;
        if (la != lb) {
            // m(v+ v+) = v+, m(v+ v-) = v-, m(v- v-) = 0
            if (xa && xb) continue;
            out.push_back({{target, base | ((xa || xb) ? ta : 0U)}, sign});
        } else if (xa) {
            // delta(v-) = v- v-
            out.push_back({{target, base | ta | tb}, sign});
        } else {
            // delta(v+) = v+ v- + v- v+
            out.push_back({{target, base | tb}, sign});
            out.push_back({{target, base | ta}, sign});
        }
    }
    std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
    return out;
}

Generator CubeComplex::generator_of(const EnhancedState& a) const {
    auto mask = static_cast<std::uint32_t>(a.state().smoothing().mask());
    return {mask, static_cast<std::uint32_t>(a.marks_mask())};
}

EnhancedState CubeComplex::enhanced_state(Generator g) const {
    State st = resolve(diagram_, Smoothing::from_mask(diagram_.crossing_count(), g.smoothing));
    return EnhancedState(std::move(st), marks_from_mask(loop_count(g.smoothing), g.marks));
}

bool CubeComplex::check_d_squared() const {
    for (std::size_t s = 0; s < masks_.size(); ++s) {
        if (height_of(static_cast<int>(s)) + 2 > max_height_) continue;
        std::uint32_t total = std::uint32_t{1} << loops_[s];
        for (std::uint32_t marks = 0; marks < total; ++marks) {
            std::map<Generator, long long> dd;
            for (const auto& [mid, c1] : differential({masks_[s], marks})) {
                for (const auto& [end, c2] : differential(mid)) dd[end] += static_cast<long long>(c1) * c2;
            }
            for (const auto& [g, coef] : dd) {
                if (coef != 0) return false;
            }
        }
    }
    return true;
}

long long HomologyTable::rank(int t, int q) const {
    auto it = ranks.find({t, q});
    return it == ranks.end() ? 0 : it->second;
}

std::set<int> HomologyTable::delta_values() const {
    std::set<int> out;
    for (const auto& [key, r] : ranks) out.insert(2 * key.first - key.second);
    return out;
}

long long HomologyTable::total_rank() const {
    long long total = 0;
    for (const auto& [key, r] : ranks) total += r;
    return total;
}

HomologyTable homology_ranks(const CubeComplex& c, Arithmetic mode) {
    int n = c.diagram().crossing_count();
    int nm = c.signs().n_minus;
    int lo = c.min_height(), hi = c.max_height();
    std::set<int> qs;
    for (const auto& b : c.buckets()) qs.insert(b.q);

    HomologyTable table;
    int first = lo == 0 ? 0 : lo + 1;
    int last = hi == n ? n : hi - 1;
    table.t_min = first - nm;
    table.t_max = last - nm;
    table.complete = c.is_full();

    for (int q : qs) {
        // rank of d leaving height h, for h in [lo, hi]
        std::map<int, int> rank_out;
        for (int h = lo; h < hi; ++h) {
            Bigrading src{h - nm, q}, dst{h + 1 - nm, q};
            int cols = c.bucket_size(dst);
            if (c.bucket_size(src) == 0 || cols == 0) continue;
            std::vector<std::vector<std::pair<int, int>>> rows;
            for (const auto& g : c.generators(src)) {
                std::vector<std::pair<int, int>> row;
                for (const auto& [target, coef] : c.differential(g)) row.emplace_back(c.index_of(target), coef);
                std::sort(row.begin(), row.end());
                if (!row.empty()) rows.push_back(std::move(row));
            }
            rank_out[h] = matrix_rank(rows, cols, mode).rank;
        }
        for (int h = first; h <= last; ++h) {
            int dim = c.bucket_size({h - nm, q});
            if (dim == 0) continue;
            long long r = dim - rank_out[h] - (h > lo ? rank_out[h - 1] : 0);
            if (r != 0) table.ranks[{h - nm, q}] = r;
        }
    }
    return table;
}

LaurentPoly euler_characteristic(const HomologyTable& h) {
    LaurentPoly out;
    for (const auto& [key, r] : h.ranks) out[key.second] += (key.first % 2 == 0 ? r : -r);
    std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
    return out;
}

const EchelonBasis<RationalField>& BoundaryOracle::image_basis(Bigrading b) {
    auto key = std::make_pair(b.t, b.q);
    auto it = cache_.find(key);
    if (it != cache_.end()) return *it->second;
    const CubeComplex& c = *complex_;
    int h = b.t + c.signs().n_minus;
    if (h - 1 < c.min_height() && h > 0) throw OutOfRange("incoming differential lies outside the complex window");
    auto basis = std::make_unique<EchelonBasis<RationalField>>(c.bucket_size(b));
    for (const auto& g : c.generators({b.t - 1, b.q})) {
        std::vector<std::pair<int, int>> row;
        for (const auto& [target, coef] : c.differential(g)) row.emplace_back(c.index_of(target), coef);
        std::sort(row.begin(), row.end());
        basis->insert(to_field<RationalField>(row));
    }
    return *cache_.emplace(key, std::move(basis)).first->second;
}

bool BoundaryOracle::is_boundary(const std::vector<std::pair<Generator, long long>>& chain) {
    const CubeComplex& c = *complex_;
    std::map<int, long long> coords;
    std::optional<Bigrading> bucket;
    for (const auto& [g, coef] : chain) {
        Bigrading b = c.grading_of(g);
        if (bucket && !(*bucket == b)) throw OutOfRange("chain spans several gradings");
        bucket = b;
        coords[c.index_of(g)] += coef;
    }
    if (!bucket) return true;
    int h = bucket->t + c.signs().n_minus;
    if (h == c.max_height() && h < c.diagram().crossing_count()) {
        throw OutOfRange("cannot test the cycle condition at the top of the window");
    }
    std::map<Generator, long long> image;
    for (const auto& [g, coef] : chain) {
        for (const auto& [target, sign] : c.differential(g)) image[target] += coef * sign;
    }
    for (const auto& [g, coef] : image) {
        if (coef != 0) throw NotACycle("chain has nonzero differential");
    }
    SparseVector<RationalField> v;
    for (const auto& [i, coef] : coords) {
        if (coef != 0) v.emplace_back(i, mpq_class(static_cast<long>(coef)));
    }
    if (v.empty()) return true;
    return image_basis(*bucket).contains(std::move(v));
}

bool BoundaryOracle::is_boundary(const EnhancedState& a) {
    return is_boundary({{complex_->generator_of(a), 1}});
}

bool is_boundary(const EnhancedState& a, const CubeComplex& c) {
    BoundaryOracle oracle(c);
    return oracle.is_boundary(a);
}

LaurentPoly bracket_polynomial(const Diagram& d, int max_crossings) {
    int n = d.crossing_count();
    if (n > max_crossings) {
        throw TooLarge(std::to_string(n) + " crossings exceeds the bracket cap of " + std::to_string(max_crossings));
    }
    if (n > 40) throw TooLarge("state sums support at most 40 crossings");
    // counts[h][loops]
    std::vector<std::vector<long long>> counts(static_cast<std::size_t>(n) + 1,
                                               std::vector<long long>(static_cast<std::size_t>(2 * n + 3), 0));
    std::uint64_t total = std::uint64_t{1} << n;
    for (std::uint64_t mask = 0; mask < total; ++mask) {
        ++counts[static_cast<std::size_t>(std::popcount(mask))][static_cast<std::size_t>(count_loops(d, mask))];
    }
    // <D> = sum A^(#0 - #1) (-A^2 - A^-2)^(loops - 1)
    const LaurentPoly loop_value{{-2, -1}, {2, -1}};
    std::vector<LaurentPoly> powers{{{0, 1}}};
    LaurentPoly out;
    for (int h = 0; h <= n; ++h) {
        for (std::size_t loops = 1; loops < counts[static_cast<std::size_t>(h)].size(); ++loops) {
            long long k = counts[static_cast<std::size_t>(h)][loops];
            if (k == 0) continue;
            while (powers.size() < loops) powers.push_back(poly_mul(powers.back(), loop_value));
            out = poly_add(out, poly_mul(powers[loops - 1], {{n - 2 * h, k}}));
        }
    }
    return out;
}

LaurentPoly jones_bracket(const Diagram& d, int max_crossings) {
    int n = d.crossing_count();
    SignCounts sc = crossing_signs(d);
    // A^-n <D> has even exponents only; A^2 = -q^-1 turns it into
    // sum (-q)^h (q + q^-1)^(loops - 1).
    LaurentPoly in_q;
    for (const auto& [e, c] : bracket_polynomial(d, max_crossings)) {
        int k = (e - n) / 2;
        in_q[-k] += (k % 2 == 0) ? c : -c;
    }
    LaurentPoly out = poly_mul(in_q, {{1, 1}, {-1, 1}});
    long long sign = sc.n_minus % 2 == 0 ? 1 : -1;
    return poly_mul(out, {{sc.n_plus - 2 * sc.n_minus, sign}});
}

nlohmann::json to_json(const HomologyTable& h) {
    nlohmann::json ranks = nlohmann::json::array();
    for (const auto& [key, r] : h.ranks) ranks.push_back({{"t", key.first}, {"q", key.second}, {"rank", r}});
    auto deltas = h.delta_values();
    return {{"schema", "statecycle.homology/1"},
            {"ranks", ranks},
            {"width", h.width()},
            {"delta_values", std::vector<int>(deltas.begin(), deltas.end())},
            {"t_range", {h.t_min, h.t_max}},
            {"complete", h.complete}};
}

std::string to_table(const HomologyTable& h) {
    std::ostringstream out;
    if (h.ranks.empty()) {
        out << "(zero)\n";
        return out.str();
    }
    int q_lo = h.ranks.begin()->first.second, q_hi = q_lo;
    for (const auto& [key, r] : h.ranks) {
        q_lo = std::min(q_lo, key.second);
        q_hi = std::max(q_hi, key.second);
    }
    const int w = 5;
    out << std::setw(w) << "q\\t";
    for (int t = h.t_min; t <= h.t_max; ++t) out << std::setw(w) << t;
    out << "\n";
    for (int q = q_hi; q >= q_lo; --q) {
        bool any_parity = false;
        for (const auto& [key, r] : h.ranks) any_parity = any_parity || ((key.second - q) % 2 == 0);
        if (!any_parity) continue;
        out << std::setw(w) << q;
        for (int t = h.t_min; t <= h.t_max; ++t) {
            long long r = h.rank(t, q);
            if (r) out << std::setw(w) << r;
            else out << std::setw(w) << "";
        }
        out << "\n";
    }
    return out.str();
}

}  // namespace statecycle
