#ifndef STATECYCLE_STATECYCLE_HPP
#define STATECYCLE_STATECYCLE_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "statecycle/resolution.hpp"
#include "statecycle/stategraph.hpp"

namespace statecycle {

// Restrictions a nontrivial state cycle must satisfy.
//   S1  the state is 0-merging
//   S2  no 1-pinchtrace touches a loop of the 1-block
//   L1  0-tracing loops are marked v-
//   L2  no two v- loops are joined by 1-traces alone
//   L3  loops of an odd 1-block component are marked v+
//   L4  an even 1-block component has at most one v- loop
enum class Restriction { S1, S2, L1, L2, L3, L4 };

const char* to_string(Restriction r);

struct ClassificationVerdict {
    bool pass = true;
    std::vector<Restriction> violations;
};

enum class Theorem { all0_adequate, all1_adequate, even_all1, one_even_one_isolated };

const char* to_string(Theorem t);

struct Certificate {
    Theorem theorem = Theorem::all0_adequate;
    Smoothing smoothing;
    std::vector<Mark> marks;
    Bigrading bigrading;
    nlohmann::json evidence;
};

struct CertifiedCycle {
    EnhancedState cycle;
    Certificate certificate;
};

// Local criterion: the state is 0-merging and every 0-tracing loop is v-.
bool is_state_cycle(const EnhancedState& a);

ClassificationVerdict classify(const EnhancedState& a);

bool one_even(const EnhancedState& a);
bool one_isolated(const EnhancedState& a);

// Certificate for one of the four recognised shapes, tried in the order
// all-0 adequate, all-1 adequate, even all-1 with one v-, 1-even and
// 1-isolated. std::nullopt means "unknown", never "trivial".
// Throws NotACycle when `a` is not a state cycle.
std::optional<Certificate> certify(const EnhancedState& a, const Diagram& d);

// Re-checks a certificate's evidence against a fresh resolution of `d`.
bool check_certificate(const Certificate& c, const Diagram& d);

// Every state cycle on `st`: 0-tracing loops forced to v-, the remaining
// loops run through all markings in binary order. Empty when `st` is not
// 0-merging.
std::vector<EnhancedState> state_cycles(const State& st);

// Certified cycles on one state. Even all-1 certificates that differ only
// in the choice of v- loop are reported once, for the lowest loop, with
// the alternatives listed under evidence.equivalent_minus_loops.
std::vector<CertifiedCycle> certify_auto(const Diagram& d, const Smoothing& s);

// Visits all-0, all-1, the Seifert smoothing, then every smoothing in
// lexicographic bitstring order, stopping after `budget` distinct states.
std::vector<CertifiedCycle> enumerate_certified(const Diagram& d, std::uint64_t budget);

// Number of distinct delta gradings among the certificates.
int width_lower_bound(std::span<const Certificate> certs);

nlohmann::json to_json(const Certificate& c);
nlohmann::json to_json(const ClassificationVerdict& v);

}  // namespace statecycle

#endif  // STATECYCLE_STATECYCLE_HPP
