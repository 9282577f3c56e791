#ifndef STATECYCLE_BUILTIN_HPP
#define STATECYCLE_BUILTIN_HPP

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "statecycle/diagram.hpp"

namespace statecycle {

// Properties each bundled diagram is claimed to have; the test suite
// recomputes all of them.
struct BuiltinClaims {
    int n_plus = 0;
    int n_minus = 0;
    int components = 1;
    std::optional<bool> plus_adequate;
    std::optional<bool> minus_adequate;
};

struct BuiltinEntry {
    std::string name;
    std::string description;
    BuiltinClaims claims;
};

const std::vector<BuiltinEntry>& builtin_entries();

// Throws UnknownName for names not in the table.
Diagram builtin(std::string_view name);
const BuiltinEntry& builtin_entry(std::string_view name);

}  // namespace statecycle

#endif  // STATECYCLE_BUILTIN_HPP
