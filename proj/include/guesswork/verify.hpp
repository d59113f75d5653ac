#pragma once

#include <string>
#include <vector>

#include "guesswork/emit.hpp"

namespace guesswork {

/// Self-check suites. Every row is deterministic: random inputs come from
/// fixed-seed generators and the oracle grid is enumerated in canonical
/// order regardless of thread count.
std::vector<VerifyRow> verify_derivatives();

// theorem/corollary orderings on random sources, the uniform closed-form
// rate, and the grid searches showing the orderings break without the SEC
std::vector<VerifyRow> verify_theorems();

// type-class engine vs. explicit enumeration at small sizes
std::vector<VerifyRow> verify_oracle();

// name: "derivatives" | "theorems" | "oracle" | "all"
std::vector<VerifyRow> verify_suite(const std::string& name);

}  // namespace guesswork
