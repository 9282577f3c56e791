#include <cstdint>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "statecycle/builtin.hpp"
#include "statecycle/diagram.hpp"
#include "statecycle/error.hpp"
#include "statecycle/families.hpp"
#include "statecycle/homology.hpp"
#include "statecycle/random_diagram.hpp"
#include "statecycle/resolution.hpp"
#include "statecycle/statecycle.hpp"
#include "statecycle/stategraph.hpp"

using namespace statecycle;
using nlohmann::json;

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Input {
    std::string pd;
    std::string file;
    std::string builtin_name;
};

void add_input(CLI::App* sub, Input& in) {
    auto* g = sub->add_option_group("input", "diagram source");
    g->add_option("--pd", in.pd, "PD text, e.g. \"X[1,5,2,4] X[3,1,4,6] X[5,3,6,2]\"");
    g->add_option("--file", in.file, "file with PD text or diagram JSON");
    g->add_option("--builtin", in.builtin_name, "bundled diagram name");
    g->require_option(1);
}

Diagram load(const Input& in) {
    if (!in.builtin_name.empty()) return builtin(in.builtin_name);
    if (!in.pd.empty()) return parse_pd(in.pd);
    std::ifstream f(in.file);
    if (!f) throw UsageError("cannot open " + in.file);
    std::stringstream ss;
    ss << f.rdbuf();
    std::string text = ss.str();
    auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '{') {
        json j;
        try {
            j = json::parse(text);
        } catch (const json::exception& e) {
            throw MalformedToken(std::string("invalid JSON: ") + e.what());
        }
        return parse_pd_json(j);
    }
    return parse_pd(text, in.file);
}

Smoothing smoothing_for(const Diagram& d, const std::string& spec) {
    int n = d.crossing_count();
    if (spec == "all0") return Smoothing::all0(n);
    if (spec == "all1") return Smoothing::all1(n);
    if (spec == "seifert") return seifert_smoothing(d);
    Smoothing s = Smoothing::parse(spec);
    if (s.size() != n) {
        throw LengthMismatch("smoothing has " + std::to_string(s.size()) + " bits, diagram has " + std::to_string(n) + " crossings");
    }
    return s;
}

void emit(const json& j) { std::cout << j.dump(2) << '\n'; }

json certificates_json(const std::vector<CertifiedCycle>& cycles) {
    json out = json::array();
    for (const auto& c : cycles) out.push_back(to_json(c.certificate));
    return out;
}

struct SelftestStats {
    int checks = 0;
    int failures = 0;
};

void expect(SelftestStats& s, bool ok, const std::string& what) {
    ++s.checks;
    if (!ok) {
        ++s.failures;
        std::cout << "FAIL " << what << '\n';
    }
}

void selftest_diagram(SelftestStats& s, const Diagram& d, const std::string& label, std::uint64_t budget) {
    CubeComplex c = build_complex(d, 12);
    expect(s, c.check_d_squared(), label + ": d o d = 0");
    HomologyTable h = homology_ranks(c);
    expect(s, euler_characteristic(h) == jones_bracket(d), label + ": Euler characteristic equals Jones");
    expect(s, state_flags(resolve(d, seifert_smoothing(d))).even, label + ": Seifert state is even");
    BoundaryOracle oracle(c);
    for (const auto& cc : enumerate_certified(d, budget)) {
        std::string tag = label + ": " + to_string(cc.certificate.theorem) + " at " + cc.certificate.smoothing.to_string();
        expect(s, check_certificate(cc.certificate, d), tag + " evidence");
        bool cycle = true;
        for (const auto& [g, coef] : c.differential(c.generator_of(cc.cycle))) cycle = cycle && coef == 0;
        expect(s, cycle, tag + " is a cycle");
        expect(s, !oracle.is_boundary(cc.cycle), tag + " is not a boundary");
    }
}

int run(int argc, char** argv) {
    CLI::App app{"Certify nontrivial Khovanov homology classes from state cycles"};
    app.require_subcommand(1);
    Input in;

    auto* parse = app.add_subcommand("parse", "parse a diagram and print it as JSON");
    add_input(parse, in);

    std::string smoothing = "seifert";
    auto* resolve_cmd = app.add_subcommand("resolve", "resolve a diagram at a smoothing");
    add_input(resolve_cmd, in);
    resolve_cmd->add_option("--smoothing", smoothing, "bits, all0, all1 or seifert")->required();

    auto* flags = app.add_subcommand("flags", "state graph flags and evenness report");
    add_input(flags, in);
    flags->add_option("--smoothing", smoothing, "bits, all0, all1 or seifert")->capture_default_str();

    std::string marks = "auto";
    auto* certify_cmd = app.add_subcommand("certify", "certify state cycles on one state");
    add_input(certify_cmd, in);
    certify_cmd->add_option("--smoothing", smoothing, "bits, all0, all1 or seifert")->capture_default_str();
    certify_cmd->add_option("--marks", marks, "v- bits per loop (1 = v-), or auto")->capture_default_str();

    std::uint64_t budget = 4096;
    auto* enumerate = app.add_subcommand("enumerate", "certify cycles across many states");
    add_input(enumerate, in);
    enumerate->add_option("--budget", budget, "number of distinct states to visit")->check(CLI::PositiveNumber)->capture_default_str();

    int max_crossings = 16;
    std::string format = "json";
    std::string arithmetic = "exact";
    int min_height = 0, max_height = -1;
    auto* homology = app.add_subcommand("homology", "rational Khovanov homology ranks");
    add_input(homology, in);
    homology->add_option("--max-crossings", max_crossings, "refuse larger diagrams")->check(CLI::PositiveNumber)->capture_default_str();
    homology->add_option("--format", format, "json or table")->check(CLI::IsMember({"json", "table"}))->capture_default_str();
    homology->add_option("--arithmetic", arithmetic, "exact or modular")->check(CLI::IsMember({"exact", "modular"}))->capture_default_str();
    homology->add_option("--min-height", min_height, "lowest cube height kept")->check(CLI::NonNegativeNumber);
    homology->add_option("--max-height", max_height, "highest cube height kept")->check(CLI::NonNegativeNumber);

    auto* jones = app.add_subcommand("jones", "unnormalised Jones polynomial from the Kauffman bracket");
    add_input(jones, in);

    std::string base_name, block_name;
    int copies = 1;
    bool expand = false;
    auto* family = app.add_subcommand("family", "entwine block copies into a base knot");
    family->add_option("--base", base_name, "bundled base diagram")->required();
    family->add_option("--block", block_name, "bundled block diagram")->required();
    family->add_option("--copies", copies, "number of block copies")->check(CLI::NonNegativeNumber)->required();
    family->add_flag("--expand-twists", expand, "widen every twist region first");

    std::uint64_t seed = 1;
    int random_count = 20;
    std::uint64_t selftest_budget = 256;
    auto* selftest = app.add_subcommand("selftest", "check certificates against the homology oracle");
    selftest->add_option("--seed", seed, "seed for random diagrams")->capture_default_str();
    selftest->add_option("--random", random_count, "random diagrams to include")->check(CLI::NonNegativeNumber)->capture_default_str();
    selftest->add_option("--budget", selftest_budget, "states visited per diagram")->check(CLI::PositiveNumber)->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    if (*parse) {
        emit(to_json(load(in)));
    } else if (*resolve_cmd) {
        Diagram d = load(in);
        emit(to_json(resolve(d, smoothing_for(d, smoothing))));
    } else if (*flags) {
        Diagram d = load(in);
        State st = resolve(d, smoothing_for(d, smoothing));
        json j = to_json(state_flags(st));
        j["evenness"] = to_json(evenness(build_graph(st, GraphKind::full)));
        emit(j);
    } else if (*certify_cmd) {
        Diagram d = load(in);
        Smoothing s = smoothing_for(d, smoothing);
        json out = {{"schema", "statecycle.certify/1"}, {"smoothing", s.to_string()}};
        if (marks == "auto") {
            out["certificates"] = certificates_json(certify_auto(d, s));
        } else {
            EnhancedState a(resolve(d, s), parse_marks(marks));
            auto cert = certify(a, d);
            out["certificates"] = cert ? json::array({to_json(*cert)}) : json::array();
            if (!cert) {
                Bigrading b = bigrading(a, d);
                out["status"] = "unknown";
                out["bigrading"] = {{"t", b.t}, {"q", b.q}, {"delta", b.delta()}};
            }
        }
        emit(out);
    } else if (*enumerate) {
        Diagram d = load(in);
        auto cycles = enumerate_certified(d, budget);
        std::vector<Certificate> certs;
        for (const auto& c : cycles) certs.push_back(c.certificate);
        emit({{"schema", "statecycle.enumerate/1"},
              {"budget", budget},
              {"certificates", certificates_json(cycles)},
              {"width_lower_bound", width_lower_bound(certs)}});
    } else if (*homology) {
        Diagram d = load(in);
        HomologyOptions opt;
        opt.max_crossings = max_crossings;
        opt.min_height = min_height;
        opt.max_height = max_height;
        CubeComplex c = build_complex(d, opt);
        HomologyTable h = homology_ranks(c, arithmetic == "exact" ? Arithmetic::exact : Arithmetic::modular);
        if (format == "table") {
            std::cout << to_table(h);
        } else {
            emit(to_json(h));
        }
    } else if (*jones) {
        Diagram d = load(in);
        LaurentPoly p = jones_bracket(d);
        emit({{"schema", "statecycle.jones/1"}, {"coefficients", poly_to_json(p)}, {"text", to_string(p)}});
    } else if (*family) {
        EntwineSpec spec;
        spec.base = builtin(base_name);
        spec.block = builtin(block_name);
        spec.copies = copies;
        spec.expand = expand;
        if (base_name == "8_21_plus_adequate" && block_name == "10_152_negative") {
            spec.regions = bundled_sites();
        } else {
            auto sites = find_sites(spec.base, spec.block);
            if (!sites) throw InvalidRegion("no junction sites found for " + base_name + " and " + block_name);
            spec.regions = *sites;
        }
        emit(manifest(entwine(spec)));
    } else if (*selftest) {
        SelftestStats stats;
        for (const auto& e : builtin_entries()) {
            Diagram d = builtin(e.name);
            if (d.crossing_count() > 12) continue;
            selftest_diagram(stats, d, e.name, selftest_budget);
        }
        std::mt19937_64 rng(seed);
        RandomDiagramOptions ro;
        ro.max_crossings = 8;
        for (int i = 0; i < random_count; ++i) {
            selftest_diagram(stats, random_diagram(rng, ro), "random#" + std::to_string(i), selftest_budget);
        }
        std::cout << (stats.failures == 0 ? "PASS" : "FAIL") << ' ' << stats.checks - stats.failures << '/' << stats.checks
                  << " checks\n";
        return stats.failures == 0 ? 0 : 1;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const UsageError& e) {
        std::cerr << e.what() << '\n';
        return 2;
    } catch (const Error& e) {
        std::cout << json{{"schema", "statecycle.error/1"}, {"error", e.kind()}, {"message", e.what()}}.dump(2) << '\n';
        return 1;
    }
}
