#pragma once

// Finite-domain model finder for the emitted SMT-LIB2 subset: enumerates
// assignments over the per-constant ranges stated by the domain assertions
// and evaluates the remaining assertions directly. Test-scale only.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>

namespace triff {

struct SmtModel {
  std::map<std::string, long long> values;
};

// Returns the first model in declaration-order enumeration, or nullopt when
// no assignment satisfies every assertion. Throws when a constant has no
// recognizable domain assertion or the product of the domain sizes exceeds
// max_assignments.
std::optional<SmtModel> smt_find_model(std::string_view smtlib_text,
                                       std::uint64_t max_assignments = std::uint64_t{1} << 20);

// get-model style rendering understood by the decoder.
std::string render_smt_model(const SmtModel& model);

}  // namespace triff
