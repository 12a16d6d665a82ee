#pragma once

// The acceptance suite: ten named end-to-end checks, each reporting a
// pass/fail line with timing. Used by the selftest command and by ctest.

#include <optional>
#include <string>
#include <vector>

namespace fgk3 {

enum class AcceptanceProfile
{
	standard, ///< full caps
	tiny,     ///< reduced degrees, for smoke runs
};

struct AcceptanceOptions
{
	AcceptanceProfile profile = AcceptanceProfile::standard;
	/// Names to run; empty runs everything.
	std::vector<std::string> only;
	/// Golden rational certificate; without it check 9 is structural only.
	std::optional<std::string> golden_path;
	int jobs = 1;
};

struct CheckResult
{
	int id = 0;
	std::string name;
	bool passed = false;
	std::string detail;
	double seconds = 0;
};

/// In order: fermat-dichotomy, stienstra-closed-form, fgl-axioms,
/// pseries-routes, elliptic-oracle, ideal-chain, coordinate-independence,
/// landweber-scenarios, rational-certificate, height-bound.
std::vector<std::string> acceptance_check_names();

/// Throws std::invalid_argument for an unknown name in `only`.
std::vector<CheckResult> run_acceptance(const AcceptanceOptions &opts);

/// "[PASS]  1 fermat-dichotomy  (0.12 s)  detail".
std::string format_check(const CheckResult &r);

} // namespace fgk3
