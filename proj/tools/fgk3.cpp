// fgk3: heights of formal Brauer groups, Landweber checks and K3 spectrum
// certificates from the command line.
//
// Exit codes: 0 success, 1 usage error, 2 integrality abort,
// 3 certification refused.

#include "fgk3/acceptance.hpp"
#include "fgk3/census.hpp"
#include "fgk3/certificate_json.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

using namespace fgk3;

namespace {

enum Exit
{
	ok = 0,
	usage = 1,
	integrality = 2,
	refused = 3,
};

struct Common
{
	std::vector<std::string> quartics;
	std::string primes;
	std::optional<int> h_max;
	std::optional<int> cap;
	std::string format = "text";
	int jobs = 0;
	std::string out;
	bool no_timestamp = false;
};

std::vector<long> parse_primes(const std::string &list)
{
	std::vector<long> out;
	std::stringstream ss(list);
	for (std::string item; std::getline(ss, item, ',');)
	{
		if (item.empty())
			continue;
		std::size_t used = 0;
		long v = 0;
		try
		{
			v = std::stol(item, &used);
		}
		catch (const std::exception &)
		{
			used = 0;
		}
		if (used != item.size())
			throw std::invalid_argument("not a prime: '" + item + "'");
		PrimeP{v}; // rejects 2 and composites with a reason
		out.push_back(v);
	}
	if (out.empty())
		throw std::invalid_argument("--primes needs at least one prime");
	return out;
}

void emit(const std::string &text, const std::string &path)
{
	if (path.empty())
	{
		std::cout << text;
		return;
	}
	std::ofstream f(path);
	if (!f)
		throw std::invalid_argument("cannot write " + path);
	f << text;
}

int jobs_or_default(int jobs)
{
	if (jobs > 0)
		return jobs;
	return std::max(1u, std::thread::hardware_concurrency());
}

int cmd_height(const Common &c)
{
	CensusConfig cfg;
	auto names = c.quartics.empty() ? std::vector<std::string>{"fermat"} : c.quartics;
	for (const auto &n : names)
	{
		if (n == "all")
			for (const auto &b : builtin_quartic_names())
				cfg.quartics.push_back(builtin_quartic(b));
		else
			cfg.quartics.push_back(QuarticForm::load(n));
	}
	cfg.primes = parse_primes(c.primes);
	cfg.h_max = c.h_max;
	cfg.cap = c.cap;
	cfg.jobs = jobs_or_default(c.jobs);
	auto result = run_census(cfg);
	for (const auto &n : result.notices)
		std::cerr << "notice: " << n << "\n";
	CensusFormat fmt{.timestamp = !c.no_timestamp};
	if (c.format == "csv")
		emit(census_csv(result, fmt), c.out);
	else if (c.format == "json")
		emit(census_json(result, fmt), c.out);
	else
		emit(census_text(result, fmt), c.out);
	for (const auto &row : result.rows)
		if (row.verdict == "non_integral")
			std::cerr << "integrality abort: " << row.quartic << " at p = " << row.p << ": " << row.detail << "\n";
	return result.any_non_integral() ? integrality : ok;
}

std::string report_text(const LandweberReport &r)
{
	std::ostringstream out;
	out << "ring:      " << r.ring << "\n";
	out << "p-series:  to degree " << r.series_cap << " (h_max " << r.h_max << ")\n";
	out << "closed-fibre height: " << r.closed_fibre_height.str() << "\n";
	for (std::size_t n = 0; n < r.verdicts.size(); ++n)
	{
		const auto &v = r.verdicts[n];
		out << "  v_" << n << " = " << r.chain.v[n].str() << "  ->  " << to_string(v.status);
		if (v.witness)
			out << " (witness " << v.witness->str() << ")";
		out << "  " << v.reason << "\n";
	}
	out << "verdict:   " << to_string(r.verdict);
	if (r.stabilization)
		out << " (v_" << *r.stabilization << " a unit)";
	out << "\n  " << r.reason << "\n";
	for (const auto &n : r.notes)
		out << "note: " << n << "\n";
	return out.str();
}

struct LandweberArgs
{
	std::string scenario;
	std::string ring = "zp";
	std::string law;
	std::string v;
	std::optional<long> p;
};

LandweberReport build_report(const Common &c, const LandweberArgs &a)
{
	if (!a.p)
		throw CLI::ValidationError("--p", "required");
	PrimeP p(*a.p);
	int h_max = c.h_max.value_or(default_height_budget(p.value()));
	int ring_cap = c.cap.value_or(12);
	if (!a.scenario.empty())
		return run_scenario(a.scenario, p, h_max, ring_cap);

	auto R = load_ring(a.ring, p.value(), ring_cap);
	int cap = static_cast<int>(ipow(p.value(), h_max));
	if (!c.quartics.empty())
	{
		if (!a.law.empty())
			throw CLI::ValidationError("--law", "give either --law or --quartic");
		auto l = stienstra_log(QuarticForm::load(c.quartics.front()), cap);
		return landweber_check(R, l.log, h_max);
	}
	if (a.law == "multiplicative")
		return landweber_check(R, multiplicative_log(RationalField{}, cap), h_max);
	if (a.law == "additive")
		return landweber_check(R, additive_log(RationalField{}, cap), h_max);
	if (a.law == "hazewinkel" || (a.law.empty() && !a.v.empty()))
	{
		if (a.v.empty())
			throw CLI::ValidationError("--v", "hazewinkel needs --v, e.g. --v t,1");
		std::vector<TruncPoly> v;
		std::stringstream ss(a.v);
		for (std::string item; std::getline(ss, item, ',');)
			v.push_back(R.element(item));
		return landweber_check(R, hazewinkel_log(v, p, cap, R.poly_ring()), h_max);
	}
	throw CLI::ValidationError("--law", "expected multiplicative, additive or hazewinkel (or --quartic / --scenario)");
}

int cmd_landweber(const Common &c, const LandweberArgs &a)
{
	auto rep = build_report(c, a);
	if (c.format == "json")
		emit(report_to_json(rep, {.timestamp = !c.no_timestamp}).dump(2) + "\n", c.out);
	else
		emit(report_text(rep), c.out);
	return ok;
}

struct CertifyArgs
{
	bool rational = false;
	std::string ring;
	std::optional<long> p;
};

int cmd_certify(const Common &c, const CertifyArgs &a)
{
	auto f = QuarticForm::load(c.quartics.empty() ? "fermat" : c.quartics.front());
	JsonOptions opts{.timestamp = !c.no_timestamp};
	if (a.rational == !a.ring.empty())
		throw CLI::ValidationError("certify", "give exactly one of --rational and --ring");
	if (a.rational)
	{
		emit(certificate_to_json(rational_certificate(f), opts).dump(2) + "\n", c.out);
		return ok;
	}
	if (!a.p)
		throw CLI::ValidationError("--p", "required with --ring");
	auto R = load_ring(a.ring, a.p, c.cap.value_or(12));
	int h_max = c.h_max.value_or(default_height_budget(R.p.value()));
	try
	{
		auto cert = certify_k3_spectrum(R, f, h_max);
		emit(certificate_to_json(cert, opts).dump(2) + "\n", c.out);
		return ok;
	}
	catch (const CertificationRefused &e)
	{
		std::cerr << e.what() << "\n" << report_to_json(e.report(), opts).dump(2) << "\n";
		return refused;
	}
}

struct SelftestArgs
{
	std::vector<std::string> only;
	std::string caps = "default";
	std::string golden;
};

int cmd_selftest(const Common &c, const SelftestArgs &a)
{
	AcceptanceOptions opts;
	opts.profile = a.caps == "tiny" ? AcceptanceProfile::tiny : AcceptanceProfile::standard;
	for (const auto &item : a.only)
	{
		std::stringstream ss(item);
		for (std::string name; std::getline(ss, name, ',');)
			opts.only.push_back(name);
	}
	if (!a.golden.empty())
		opts.golden_path = a.golden;
	opts.jobs = jobs_or_default(c.jobs);
	auto results = run_acceptance(opts);
	int failed = 0;
	double total = 0;
	for (const auto &r : results)
	{
		std::cout << format_check(r) << "\n";
		failed += r.passed ? 0 : 1;
		total += r.seconds;
	}
	std::printf("%zu checks, %d failed, %.2f s\n", results.size(), failed, total);
	return failed ? usage : ok;
}

void add_common(CLI::App *sub, Common &c, bool primes)
{
	sub->add_option("--quartic", c.quartics,
	                "Quartic: built-in name (fermat, diag-1112, diag-1123, dwork-1, mixed-1, or 'all') or a file "
	                "of lines 'e0 e1 e2 e3 coeff'");
	if (primes)
		sub->add_option("--primes", c.primes, "Comma-separated odd primes")->required();
	sub->add_option("--hmax", c.h_max, "Largest height to decide (default 2 for p <= 7, 1 above)")
	    ->check(CLI::PositiveNumber);
	sub->add_option("--cap", c.cap, "Degree cap override")->check(CLI::PositiveNumber);
	sub->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"json", "csv", "text"}));
	sub->add_option("--jobs", c.jobs, "Worker threads (default: hardware concurrency)");
	sub->add_option("--out", c.out, "Write output to this file instead of stdout");
	sub->add_flag("--no-timestamp", c.no_timestamp, "Omit the timestamp and wall times (byte-stable output)");
}

} // namespace

int main(int argc, char **argv)
{
	CLI::App app{"Formal Brauer groups of quartic K3 surfaces: heights, Landweber exactness, certificates"};
	app.set_version_flag("--version", tool_version());
	app.require_subcommand(1);

	Common common;
	auto *height_cmd = app.add_subcommand("height", "Height census over quartics and primes");
	add_common(height_cmd, common, true);
	height_cmd->footer(std::string("CSV columns: ") + kCensusCsvHeader +
	                   "\n  verdict is finite, at_least or non_integral; h is the height (or the bound for "
	                   "at_least);\n  first_nonzero_degree is p^h for finite rows and empty otherwise; wall_ms is '-' "
	                   "with --no-timestamp.\nExit 2 if any cell hits a non-integral coefficient.");

	LandweberArgs lw;
	auto *lw_cmd = app.add_subcommand("landweber", "Check Landweber exactness over a presented local ring");
	add_common(lw_cmd, common, false);
	lw_cmd->add_option("--scenario", lw.scenario, "Built-in scenario")
	    ->check(CLI::IsMember(builtin_scenarios()));
	lw_cmd->add_option("--ring", lw.ring,
	                   "'zp' or a JSON file {\"p\", \"parameters\", \"cap\", \"relations\", \"torsion_free\"}");
	lw_cmd->add_option("--law", lw.law, "multiplicative, additive or hazewinkel");
	lw_cmd->add_option("--v", lw.v, "Hazewinkel generators v_1,v_2,... in the ring parameters");
	lw_cmd->add_option("--p", lw.p, "The prime")->required();
	lw_cmd->footer("--cap sets the truncation degree of the ring presentation (default 12).");

	CertifyArgs cert;
	auto *cert_cmd = app.add_subcommand("certify", "Emit a K3 spectrum certificate as JSON");
	add_common(cert_cmd, common, false);
	cert_cmd->add_flag("--rational", cert.rational, "Certify over Q");
	cert_cmd->add_option("--ring", cert.ring, "'zp' or a ring presentation JSON file");
	cert_cmd->add_option("--p", cert.p, "The prime (with --ring)");
	cert_cmd->footer("Exit 3 when certification is refused; the Landweber report goes to stderr.");

	SelftestArgs st;
	auto *st_cmd = app.add_subcommand("selftest", "Run the acceptance suite");
	st_cmd->add_option("--only", st.only, "Run only these checks (comma-separated or repeated)");
	st_cmd->add_option("--caps", st.caps, "Degree profile")->check(CLI::IsMember({"default", "tiny"}));
	st_cmd->add_option("--golden", st.golden, "Golden rational certificate for check 9");
	st_cmd->add_option("--jobs", common.jobs, "Worker threads for the census check");

	try
	{
		app.parse(argc, argv);
	}
	catch (const CLI::ParseError &e)
	{
		int rc = app.exit(e);
		return rc == 0 ? ok : usage;
	}

	try
	{
		if (*height_cmd)
			return cmd_height(common);
		if (*lw_cmd)
			return cmd_landweber(common, lw);
		if (*cert_cmd)
			return cmd_certify(common, cert);
		if (*st_cmd)
			return cmd_selftest(common, st);
	}
	catch (const NonIntegral &e)
	{
		std::cerr << "integrality abort: " << e.what() << "\n";
		return integrality;
	}
	catch (const CLI::ParseError &e)
	{
		std::cerr << "error: " << e.what() << "\n";
		return usage;
	}
	catch (const std::invalid_argument &e)
	{
		std::cerr << "error: " << e.what() << "\n";
		return usage;
	}
	catch (const std::exception &e)
	{
		std::cerr << "error: " << e.what() << "\n";
		return usage;
	}
	return usage;
}
