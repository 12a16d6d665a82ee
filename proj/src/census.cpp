#include "fgk3/census.hpp"
#include "fgk3/certificate_json.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <sstream>
#include <thread>

namespace fgk3 {

int default_height_budget(long p) { return p <= 7 ? 2 : 1; }

bool CensusResult::any_non_integral() const
{
	return std::any_of(rows.begin(), rows.end(), [](const HeightRow &r) { return r.verdict == "non_integral"; });
}

HeightRow height_cell(const QuarticForm &f, const PrimeP &p, int cap)
{
	auto start = std::chrono::steady_clock::now();
	HeightRow row;
	row.quartic = f.name().empty() ? f.str() : f.name();
	row.p = p.value();
	row.cap = cap;
	try
	{
		auto h = brauer_height_at_cap(f, p, cap);
		row.verdict = h.is_finite() ? "finite" : "at_least";
		row.h = h.h;
		row.first_nonzero_degree = h.first_nonzero_degree;
	}
	catch (const NonIntegral &e)
	{
		row.verdict = "non_integral";
		row.h = 0;
		row.detail = e.what();
	}
	Integer beta = stienstra_beta(f, static_cast<int>(p.value()));
	Integer r = beta % p.integer();
	if (r < 0)
		r += p.integer();
	row.beta_p_mod_p = r.get_si();
	row.ordinary = row.beta_p_mod_p != 0;
	row.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
	return row;
}

CensusResult run_census(const CensusConfig &config)
{
	if (config.h_max && *config.h_max < 1)
		throw std::invalid_argument("h_max must be >= 1");
	struct Cell
	{
		const QuarticForm *f;
		PrimeP p;
		int cap;
	};
	CensusResult result;
	std::vector<Cell> cells;
	for (long q : config.primes)
	{
		PrimeP p(q);
		int h_max = config.h_max.value_or(default_height_budget(q));
		int need = static_cast<int>(ipow(q, h_max)) + 1;
		int cap = need;
		if (config.cap)
		{
			cap = std::max(*config.cap, need);
			if (*config.cap < need)
				result.notices.push_back("cap raised from " + std::to_string(*config.cap) + " to " +
				                         std::to_string(need) + " for p = " + std::to_string(q) +
				                         " (needs p^h_max + 1 with h_max = " + std::to_string(h_max) + ")");
		}
		for (const auto &f : config.quartics)
			cells.push_back({&f, p, cap});
	}

	std::vector<std::optional<HeightRow>> rows(cells.size());
	std::vector<std::exception_ptr> errors(cells.size());
	std::atomic<std::size_t> next{0};
	auto worker = [&] {
		for (std::size_t i; (i = next.fetch_add(1)) < cells.size();)
		{
			try
			{
				rows[i] = height_cell(*cells[i].f, cells[i].p, cells[i].cap);
			}
			catch (...)
			{
				errors[i] = std::current_exception();
			}
		}
	};
	int jobs = std::max(1, std::min<int>(config.jobs, static_cast<int>(cells.size())));
	if (jobs == 1)
		worker();
	else
	{
		std::vector<std::jthread> pool;
		for (int j = 0; j < jobs; ++j)
			pool.emplace_back(worker);
	}
	for (auto &e : errors)
		if (e)
			std::rethrow_exception(e);
	for (auto &r : rows)
		result.rows.push_back(std::move(*r));
	std::stable_sort(result.rows.begin(), result.rows.end());
	return result;
}

namespace {

std::string wall(const HeightRow &r, const CensusFormat &fmt)
{
	if (!fmt.timestamp)
		return "-";
	char buf[32];
	std::snprintf(buf, sizeof buf, "%.1f", r.wall_ms);
	return buf;
}

std::string degree(const HeightRow &r) { return r.first_nonzero_degree ? std::to_string(*r.first_nonzero_degree) : ""; }

std::string csv_field(const std::string &s)
{
	if (s.find_first_of(",\"\n") == std::string::npos)
		return s;
	std::string out = "\"";
	for (char c : s)
		out += c == '"' ? std::string("\"\"") : std::string(1, c);
	return out + "\"";
}

} // namespace

std::string census_csv(const CensusResult &r, const CensusFormat &fmt)
{
	std::ostringstream out;
	out << kCensusCsvHeader << "\n";
	for (const auto &row : r.rows)
		out << csv_field(row.quartic) << ',' << row.p << ',' << row.verdict << ',' << row.h << ',' << degree(row) << ','
		    << row.beta_p_mod_p << ',' << (row.ordinary ? "true" : "false") << ',' << wall(row, fmt) << "\n";
	return out.str();
}

std::string census_json(const CensusResult &r, const CensusFormat &fmt)
{
	Json j;
	j["schema"] = kCensusSchema;
	j["tool_version"] = tool_version();
	if (fmt.timestamp)
		j["generated_at"] = utc_timestamp();
	Json rows = Json::array();
	for (const auto &row : r.rows)
	{
		Json o;
		o["quartic"] = row.quartic;
		o["p"] = row.p;
		o["verdict"] = row.verdict;
		o["h"] = row.h;
		o["first_nonzero_degree"] = row.first_nonzero_degree ? Json(*row.first_nonzero_degree) : Json(nullptr);
		o["beta_p_mod_p"] = row.beta_p_mod_p;
		o["ordinary"] = row.ordinary;
		o["cap"] = row.cap;
		o["wall_ms"] = fmt.timestamp ? Json(row.wall_ms) : Json(nullptr);
		if (!row.detail.empty())
			o["detail"] = row.detail;
		rows.push_back(o);
	}
	j["rows"] = rows;
	j["notices"] = r.notices;
	return j.dump(2) + "\n";
}

std::string census_text(const CensusResult &r, const CensusFormat &fmt)
{
	std::ostringstream out;
	char line[256];
	std::snprintf(line, sizeof line, "%-12s %4s  %-13s %6s %8s  %-8s %9s\n", "quartic", "p", "height", "deg",
	              "beta_p", "ordinary", "ms");
	out << line;
	for (const auto &row : r.rows)
	{
		std::string h = row.verdict == "non_integral" ? "non-integral" : row.verdict + "(" + std::to_string(row.h) + ")";
		std::snprintf(line, sizeof line, "%-12s %4ld  %-13s %6s %8ld  %-8s %9s\n", row.quartic.c_str(), row.p,
		              h.c_str(), degree(row).c_str(), row.beta_p_mod_p, row.ordinary ? "yes" : "no",
		              wall(row, fmt).c_str());
		out << line;
	}
	return out.str();
}

} // namespace fgk3
