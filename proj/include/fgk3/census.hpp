#pragma once

// Height census over (quartic, prime) cells, run on a small thread pool and
// emitted as CSV, JSON or a text table.

#include "fgk3/k3brauer.hpp"

#include <optional>
#include <tuple>
#include <string>
#include <vector>

namespace fgk3 {

struct CensusConfig
{
	std::vector<QuarticForm> quartics;
	std::vector<long> primes;
	/// Unset: kDefaultHeightBudget(p).
	std::optional<int> h_max;
	/// Raised to p^{h_max} + 1 when smaller (with a notice).
	std::optional<int> cap;
	int jobs = 1;
};

/// h_max used when none is given: 2 for p <= 7, 1 above (keeps caps below 50).
int default_height_budget(long p);

struct HeightRow
{
	std::string quartic;
	long p = 0;
	/// "finite", "at_least" or "non_integral".
	std::string verdict;
	int h = 0;
	std::optional<long> first_nonzero_degree;
	long beta_p_mod_p = 0;
	bool ordinary = false;
	int cap = 0;
	double wall_ms = 0;
	std::string detail;

	bool operator<(const HeightRow &o) const { return std::tie(quartic, p) < std::tie(o.quartic, o.p); }
};

struct CensusResult
{
	std::vector<HeightRow> rows; ///< sorted by (quartic, prime)
	std::vector<std::string> notices;
	bool any_non_integral() const;
};

/// Evaluates one cell at `cap`; NonIntegral becomes a non_integral row.
HeightRow height_cell(const QuarticForm &f, const PrimeP &p, int cap);

/// Throws std::invalid_argument for p = 2, non-primes and h_max < 1.
CensusResult run_census(const CensusConfig &config);

inline constexpr const char *kCensusSchema = "fgk3.height-census/1";
inline constexpr const char *kCensusCsvHeader = "quartic,p,verdict,h,first_nonzero_degree,beta_p_mod_p,ordinary,wall_ms";

struct CensusFormat
{
	/// Off: no generated_at field and wall_ms printed as "-".
	bool timestamp = true;
};

std::string census_csv(const CensusResult &r, const CensusFormat &fmt = {});
std::string census_json(const CensusResult &r, const CensusFormat &fmt = {});
std::string census_text(const CensusResult &r, const CensusFormat &fmt = {});

} // namespace fgk3
