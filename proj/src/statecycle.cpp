#include "statecycle/statecycle.hpp"

#include <algorithm>
#include <set>

#include "statecycle/error.hpp"

namespace statecycle {

namespace {

nlohmann::json coloring_json(const std::map<int, int>& coloring) {
    nlohmann::json j = nlohmann::json::object();
    for (const auto& [loop, sign] : coloring) j[std::to_string(loop)] = sign;
    return j;
}

std::optional<std::map<int, int>> coloring_from_json(const nlohmann::json& j) {
    if (!j.is_object()) return std::nullopt;
    std::map<int, int> out;
    for (const auto& [key, value] : j.items()) {
        if (!value.is_number_integer()) return std::nullopt;
        out[std::stoi(key)] = value.get<int>();
    }
    return out;
}

bool all_marked(const EnhancedState& a, Mark m) {
    return std::all_of(a.marks().begin(), a.marks().end(), [m](Mark x) { return x == m; });
}

bool all_bits(const Smoothing& s, bool bit) {
    for (int i = 0; i < s.size(); ++i) {
        if (s[i] != bit) return false;
    }
    return true;
}

std::vector<int> minus_loops(const EnhancedState& a, const std::vector<int>& among) {
    std::vector<int> out;
    for (int l : among) {
        if (a.mark(l) == Mark::minus) out.push_back(l);
    }
    return out;
}

Certificate make(Theorem th, const EnhancedState& a, const Diagram& d, nlohmann::json evidence) {
    return {th, a.state().smoothing(), std::vector<Mark>(a.marks().begin(), a.marks().end()), bigrading(a, d),
            std::move(evidence)};
}

std::optional<Certificate> even_all1(const EnhancedState& a, const Diagram& d) {
    const State& st = a.state();
    if (!all_bits(st.smoothing(), true) || a.minus_count() != 1) return std::nullopt;
    TraceGraph g = build_graph(st, GraphKind::full);
    if (components(g).size() != 1) return std::nullopt;
    EvennessReport r = evenness(g);
    if (!r.even) return std::nullopt;
    int minus = minus_loops(a, g.vertices()).front();
    return make(Theorem::even_all1, a, d, {{"coloring", coloring_json(*r.coloring)}, {"minus_loop", minus}, {"connected", true}});
}

std::optional<Certificate> one_even_isolated(const EnhancedState& a, const Diagram& d) {
    TraceGraph lambda = build_graph(a.state(), GraphKind::one_tracing);
    nlohmann::json comps = nlohmann::json::array();
    for (const auto& comp : components(lambda)) {
        EvennessReport r = evenness(induced(lambda, comp));
        if (!r.even) return std::nullopt;
        auto minus = minus_loops(a, comp);
        if (minus.size() > 1) return std::nullopt;
        comps.push_back({{"loops", comp}, {"coloring", coloring_json(*r.coloring)}, {"minus_loops", minus}});
    }
    return make(Theorem::one_even_one_isolated, a, d, {{"lambda1_components", comps}});
}

}  // namespace

const char* to_string(Restriction r) {
    switch (r) {
        case Restriction::S1: return "S1";
        case Restriction::S2: return "S2";
        case Restriction::L1: return "L1";
        case Restriction::L2: return "L2";
        case Restriction::L3: return "L3";
        case Restriction::L4: return "L4";
    }
    return "?";
}

const char* to_string(Theorem t) {
    switch (t) {
        case Theorem::all0_adequate: return "ALL0_ADEQUATE";
        case Theorem::all1_adequate: return "ALL1_ADEQUATE";
        case Theorem::even_all1: return "EVEN_ALL1";
        case Theorem::one_even_one_isolated: return "ONE_EVEN_ONE_ISOLATED";
    }
    return "?";
}

bool is_state_cycle(const EnhancedState& a) {
    const State& st = a.state();
    for (const auto& t : st.traces()) {
        if (t.bit) continue;
        if (t.kind() == TraceKind::pinch) return false;
        if (a.mark(t.loop_a) != Mark::minus || a.mark(t.loop_b) != Mark::minus) return false;
    }
    return true;
}

ClassificationVerdict classify(const EnhancedState& a) {
    const State& st = a.state();
    LoopRoles roles = loop_roles(st);
    std::set<Restriction> found;

    for (const auto& t : st.traces()) {
        if (t.kind() != TraceKind::pinch) continue;
        if (!t.bit) found.insert(Restriction::S1);
        else if (roles.in_one_block(t.loop_a)) found.insert(Restriction::S2);
    }
    for (int l = 0; l < st.loop_count(); ++l) {
        if (roles.zero_tracing[static_cast<std::size_t>(l)] && a.mark(l) != Mark::minus) found.insert(Restriction::L1);
    }
    // Pairs of distinct loops joined directly by traces, all of them 1-traces.
    std::map<std::pair<int, int>, bool> only_one_traces;
    for (const auto& t : st.traces()) {
        if (t.kind() != TraceKind::merge) continue;
        auto key = std::make_pair(t.loop_a, t.loop_b);
        auto it = only_one_traces.find(key);
        if (it == only_one_traces.end()) only_one_traces[key] = t.bit;
        else it->second = it->second && t.bit;
    }
    for (const auto& [pair, only_one] : only_one_traces) {
        if (only_one && a.mark(pair.first) == Mark::minus && a.mark(pair.second) == Mark::minus) {
            found.insert(Restriction::L2);
        }
    }
    TraceGraph block = build_graph(st, GraphKind::one_block);
    for (const auto& comp : components(block)) {
        bool even = evenness(induced(block, comp)).even;
        auto minus = minus_loops(a, comp);
        if (!even && !minus.empty()) found.insert(Restriction::L3);
        if (even && minus.size() > 1) found.insert(Restriction::L4);
    }
    ClassificationVerdict v;
    v.violations.assign(found.begin(), found.end());
    v.pass = v.violations.empty();
    return v;
}

bool one_even(const EnhancedState& a) { return evenness(build_graph(a.state(), GraphKind::one_tracing)).even; }

bool one_isolated(const EnhancedState& a) {
    TraceGraph lambda = build_graph(a.state(), GraphKind::one_tracing);
    for (const auto& comp : components(lambda)) {
        if (minus_loops(a, comp).size() > 1) return false;
    }
    return true;
}

std::optional<Certificate> certify(const EnhancedState& a, const Diagram& d) {
    if (!is_state_cycle(a)) throw NotACycle("enhanced state " + a.state().smoothing().to_string() + "/" + a.marks_string() + " is not a state cycle");
    const State& st = a.state();
    const Smoothing& s = st.smoothing();
    if (all_bits(s, false) && all_marked(a, Mark::minus) && state_flags(st).adequate) {
        return make(Theorem::all0_adequate, a, d, {{"state_adequate", true}});
    }
    if (all_bits(s, true) && all_marked(a, Mark::plus) && state_flags(st).adequate) {
        return make(Theorem::all1_adequate, a, d, {{"state_adequate", true}});
    }
    if (auto c = even_all1(a, d)) return c;
    return one_even_isolated(a, d);
}

bool check_certificate(const Certificate& c, const Diagram& d) {
    if (c.smoothing.size() != d.crossing_count()) return false;
    State st = resolve(d, c.smoothing);
    if (static_cast<int>(c.marks.size()) != st.loop_count()) return false;
    EnhancedState a(std::move(st), c.marks);
    if (!is_state_cycle(a) || !(bigrading(a, d) == c.bigrading)) return false;
    const State& s = a.state();
    const auto& ev = c.evidence;
    switch (c.theorem) {
        case Theorem::all0_adequate:
            return all_bits(s.smoothing(), false) && all_marked(a, Mark::minus) && state_flags(s).adequate;
        case Theorem::all1_adequate:
            return all_bits(s.smoothing(), true) && all_marked(a, Mark::plus) && state_flags(s).adequate;
        case Theorem::even_all1: {
            if (!all_bits(s.smoothing(), true) || a.minus_count() != 1) return false;
            if (!ev.contains("minus_loop") || !ev.contains("coloring")) return false;
            int minus = ev["minus_loop"].get<int>();
            if (minus < 0 || minus >= s.loop_count() || a.mark(minus) != Mark::minus) return false;
            TraceGraph g = build_graph(s, GraphKind::full);
            if (components(g).size() != 1) return false;
            EvennessReport r;
            r.coloring = coloring_from_json(ev["coloring"]);
            return r.coloring && verify_report(g, r);
        }
        case Theorem::one_even_one_isolated: {
            if (!ev.contains("lambda1_components")) return false;
            TraceGraph lambda = build_graph(s, GraphKind::one_tracing);
            auto comps = components(lambda);
            const auto& listed = ev["lambda1_components"];
            if (!listed.is_array() || listed.size() != comps.size()) return false;
            for (std::size_t i = 0; i < comps.size(); ++i) {
                if (listed[i]["loops"].get<std::vector<int>>() != comps[i]) return false;
                EvennessReport r;
                r.coloring = coloring_from_json(listed[i]["coloring"]);
                if (!r.coloring || !verify_report(induced(lambda, comps[i]), r)) return false;
                if (minus_loops(a, comps[i]).size() > 1) return false;
            }
            return true;
        }
    }
    return false;
}

std::vector<EnhancedState> state_cycles(const State& st) {
    if (!state_flags(st).zero_merging) return {};
    LoopRoles roles = loop_roles(st);
    std::vector<int> free;
    std::vector<Mark> base(static_cast<std::size_t>(st.loop_count()), Mark::plus);
    for (int l = 0; l < st.loop_count(); ++l) {
        if (roles.zero_tracing[static_cast<std::size_t>(l)]) base[static_cast<std::size_t>(l)] = Mark::minus;
        else free.push_back(l);
    }
    if (free.size() > 24) throw TooLarge(std::to_string(free.size()) + " unconstrained loops");
    auto shared = std::make_shared<const State>(st);
    std::vector<EnhancedState> out;
    std::uint64_t total = std::uint64_t{1} << free.size();
    for (std::uint64_t k = 0; k < total; ++k) {
        std::vector<Mark> marks = base;
        for (std::size_t i = 0; i < free.size(); ++i) {
            if ((k >> i) & 1U) marks[static_cast<std::size_t>(free[i])] = Mark::minus;
        }
        out.emplace_back(shared, std::move(marks));
    }
    return out;
}

std::vector<CertifiedCycle> certify_auto(const Diagram& d, const Smoothing& s) {
    // Markings come in binary order, so the first even all-1 hit carries
    // the lowest v- loop.
    std::vector<CertifiedCycle> out;
    int even_all1_at = -1;
    for (auto& a : state_cycles(resolve(d, s))) {
        auto c = certify(a, d);
        if (!c) continue;
        if (c->theorem == Theorem::even_all1) {
            int minus = c->evidence["minus_loop"].get<int>();
            if (even_all1_at >= 0) {
                out[static_cast<std::size_t>(even_all1_at)].certificate.evidence["equivalent_minus_loops"].push_back(minus);
                continue;
            }
            c->evidence["equivalent_minus_loops"] = nlohmann::json::array({minus});
            even_all1_at = static_cast<int>(out.size());
        }
        out.push_back({std::move(a), std::move(*c)});
    }
    return out;
}

std::vector<CertifiedCycle> enumerate_certified(const Diagram& d, std::uint64_t budget) {
    int n = d.crossing_count();
    std::vector<CertifiedCycle> out;
    std::set<Smoothing> visited;
    std::set<std::pair<Smoothing, std::string>> keys;
    auto visit = [&](const Smoothing& s) {
        if (visited.size() >= budget || !visited.insert(s).second) return;
        for (auto& a : state_cycles(resolve(d, s))) {
            if (!classify(a).pass) continue;
            auto c = certify(a, d);
            if (!c) continue;
            if (!keys.insert({s, a.marks_string()}).second) continue;
            out.push_back({std::move(a), std::move(*c)});
        }
    };
    visit(Smoothing::all0(n));
    visit(Smoothing::all1(n));
    visit(seifert_smoothing(d));
    if (n < 63) {
        std::uint64_t total = std::uint64_t{1} << n;
        for (std::uint64_t k = 0; k < total && visited.size() < budget; ++k) {
            // Crossing 0 is the leading character of the bitstring.
            Smoothing s(n);
            for (int i = 0; i < n; ++i) s.set(i, (k >> (n - 1 - i)) & 1U);
            visit(s);
        }
    }
    return out;
}

int width_lower_bound(std::span<const Certificate> certs) {
    std::set<int> deltas;
    for (const auto& c : certs) deltas.insert(c.bigrading.delta());
    return static_cast<int>(deltas.size());
}

nlohmann::json to_json(const Certificate& c) {
    std::string marks;
    for (Mark m : c.marks) marks.push_back(m == Mark::minus ? '1' : '0');
    return {{"schema", "statecycle.certificate/1"},
            {"theorem", to_string(c.theorem)},
            {"smoothing", c.smoothing.to_string()},
            {"marks", marks},
            {"t", c.bigrading.t},
            {"q", c.bigrading.q},
            {"delta", c.bigrading.delta()},
            {"evidence", c.evidence}};
}

nlohmann::json to_json(const ClassificationVerdict& v) {
    nlohmann::json violations = nlohmann::json::array();
    for (auto r : v.violations) violations.push_back(to_string(r));
    return {{"schema", "statecycle.classification/1"}, {"pass", v.pass}, {"violations", violations}};
}

}  // namespace statecycle
