#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace lovelock {

struct CheckResult {
	std::string name;
	bool pass = false;
	std::string detail;
};

/// seeded, deterministic battery of the engine's algebraic invariants;
/// every failure message names the violated invariant
std::vector<CheckResult> run_identity_suite(uint64_t seed);

bool all_pass(const std::vector<CheckResult> &results);

} // namespace lovelock
