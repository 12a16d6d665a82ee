#include "fgk3/acceptance.hpp"
#include "fgk3/census.hpp"
#include "fgk3/certificate_json.hpp"

#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <thread>

namespace fgk3 {

namespace {

struct Outcome
{
	bool ok = true;
	std::ostringstream detail;

	void expect(bool cond, const std::string &what)
	{
		if (!cond)
		{
			if (!ok)
				detail << "; ";
			ok = false;
			detail << what;
		}
	}
};

bool tiny(const AcceptanceOptions &o) { return o.profile == AcceptanceProfile::tiny; }

Weierstrass curve_x3_plus_x() { return {0, 0, 0, 1, 0}; }
Weierstrass curve_x3_plus_1() { return {0, 0, 0, 0, 1}; }

PolyRing t_ring() { return {{"t"}, 12}; }

Logarithm<PolyRing> hazewinkel_t1(const PrimeP &p, int cap)
{
	auto R = t_ring();
	return hazewinkel_log({R.variable(0), R.one()}, p, cap, R);
}

void fermat_dichotomy(const AcceptanceOptions &o, Outcome &out)
{
	auto f = QuarticForm::fermat();
	std::vector<long> ordinary = tiny(o) ? std::vector<long>{5} : std::vector<long>{5, 13, 17};
	std::vector<long> supersingular = tiny(o) ? std::vector<long>{3} : std::vector<long>{3, 7, 11};
	for (long q : ordinary)
	{
		auto h = brauer_height(f, PrimeP(q), 2);
		out.expect(h == HeightResult::finite(1, q), "p=" + std::to_string(q) + " gave " + h.str());
	}
	for (long q : supersingular)
	{
		auto h = brauer_height(f, PrimeP(q), 2);
		out.expect(h == HeightResult::at_least(2), "p=" + std::to_string(q) + " gave " + h.str());
	}
	if (!tiny(o))
	{
		auto h = brauer_height_at_cap(f, PrimeP(3), 28);
		out.expect(h == HeightResult::at_least(3), "p=3 at cap 28 gave " + h.str());
	}
	out.detail << (out.ok ? "p=1 mod 4 finite(1), p=3 mod 4 at_least" : "");
}

void stienstra_closed_form(const AcceptanceOptions &o, Outcome &out)
{
	int cap = tiny(o) ? 9 : 17;
	auto l = stienstra_log(QuarticForm::fermat(), cap, StienstraMethod::expansion);
	for (int m = 1; m <= cap; ++m)
	{
		Rational expect = 0;
		if ((m - 1) % 4 == 0)
		{
			int n = (m - 1) / 4;
			Integer fn = factorial(n);
			expect = make_rational(factorial(4 * n), fn * fn * fn * fn * (4 * n + 1));
		}
		out.expect(l.log.coefficient(m) == expect, "degree " + std::to_string(m) + ": " +
		                                               to_string(l.log.coefficient(m)) + " vs " + to_string(expect));
	}
	if (out.ok)
		out.detail << "expansion matches (4n)!/(n!)^4/(4n+1) through degree " << cap;
}

void fgl_axioms(const AcceptanceOptions &o, Outcome &out)
{
	const int cap = tiny(o) ? 8 : 12;
	const PrimeP p3(3), p5(5);
	auto check = [&](const std::string &name, const AxiomReport &r) {
		out.expect(r.ok(), name + " fails: " + (r.unit ? "" : "unit ") + (r.commutative ? "" : "commutative ") +
		                       (r.associative ? "" : "associative"));
	};
	check("additive", check_axioms(standard_law(StandardKind::additive, RationalField{}, cap)));
	check("multiplicative", check_axioms(standard_law(StandardKind::multiplicative, RationalField{}, cap)));
	check("fermat p=5", check_axioms(fgl_from_log(fermat_log(cap).log, cap, p5)));
	check("y^2=x^3+x", check_axioms(elliptic_fgl(curve_x3_plus_x(), cap).law));
	check("y^2=x^3+1", check_axioms(elliptic_fgl(curve_x3_plus_1(), cap).law));
	check("hazewinkel p=3", check_axioms(fgl_from_log(hazewinkel_t1(p3, cap), cap, p3)));
	if (out.ok)
		out.detail << "6 laws satisfy unit/commutativity/associativity to degree " << cap;
}

template <CoefficientRing Ring>
void compare_routes(const std::string &name, const Logarithm<Ring> &l, const PrimeP &p, int cap, Outcome &out)
{
	auto law = fgl_from_log(l, cap);
	auto via_log = p_series(l, p, cap);
	auto via_law = p_series(law, p, cap);
	out.expect(via_log.series == via_law.series, name + " p=" + std::to_string(p.value()) + ": routes differ");
}

void pseries_routes(const AcceptanceOptions &, Outcome &out)
{
	for (long q : {3L, 5L})
	{
		PrimeP p(q);
		int cap = static_cast<int>(q) + 3;
		compare_routes("multiplicative", multiplicative_log(RationalField{}, cap), p, cap, out);
		compare_routes("hazewinkel", hazewinkel_t1(p, cap), p, cap, out);
	}
	if (out.ok)
		out.detail << "iterate and logarithm agree to degree p+3 for p=3,5";
}

void elliptic_oracle(const AcceptanceOptions &o, Outcome &out)
{
	std::vector<long> primes = tiny(o) ? std::vector<long>{5, 7} : std::vector<long>{5, 7, 11, 13};
	int compared = 0;
	for (const auto &E : {curve_x3_plus_x(), curve_x3_plus_1()})
		for (long q : primes)
		{
			PrimeP p(q);
			if (discriminant(E) % p.integer() == 0)
				continue;
			int cap = static_cast<int>(q * q);
			auto h = height(reduce(p_series(elliptic_log(E, cap), p, cap)), 2);
			bool ord = elliptic_ss_oracle(E, p) == Reduction::ordinary;
			auto expect = ord ? HeightResult::finite(1, q) : HeightResult::finite(2, q * q);
			out.expect(h == expect, E.str() + " p=" + std::to_string(q) + ": height " + h.str() + ", a_p=" +
			                            std::to_string(elliptic_trace(E, p)));
			++compared;
		}
	if (out.ok)
		out.detail << compared << " (curve, prime) pairs match the point count";
}

template <CoefficientRing Ring>
void chain_recursion(const std::string &name, const PSeries<Ring> &ps, const std::vector<std::string> &vars, Outcome &out)
{
	auto chain = landweber_chain(ps, 2);
	auto R = PolyRing{vars, 12};
	for (int n = 0; n <= 2; ++n)
	{
		std::vector<TruncPoly> lhs, rhs;
		for (const auto &g : chain.generators[n + 1])
			lhs.push_back(as_poly(g, R));
		for (const auto &g : chain.generators[n])
			rhs.push_back(as_poly(g, R));
		rhs.push_back(as_poly(chain.v[n], R));
		bool eq = ideals_equal(LocalIdeal(ps.p, vars, 12, lhs), LocalIdeal(ps.p, vars, 12, rhs));
		out.expect(eq, name + " p=" + std::to_string(ps.p.value()) + ": I_" + std::to_string(n + 1) +
		                   " != I_" + std::to_string(n) + " + (v_" + std::to_string(n) + ")");
	}
}

void ideal_chain(const AcceptanceOptions &o, Outcome &out)
{
	std::vector<long> primes = tiny(o) ? std::vector<long>{3} : std::vector<long>{3, 5};
	for (long q : primes)
	{
		PrimeP p(q);
		int cap = static_cast<int>(q * q);
		chain_recursion("multiplicative", p_series(multiplicative_log(RationalField{}, cap), p, cap), {}, out);
		chain_recursion("hazewinkel", p_series(hazewinkel_t1(p, cap), p, cap), {"t"}, out);
	}
	if (out.ok)
		out.detail << "I_{n+1} = I_n + (v_n) for n <= 2";
}

void coordinate_independence(const AcceptanceOptions &o, Outcome &out)
{
	const PrimeP p(3);
	const int cap = 9;
	auto law = standard_law(StandardKind::multiplicative, RationalField{}, cap);
	auto base_ps = p_series(law, p, cap);
	auto base_h = height(reduce(base_ps), 2);
	auto base_chain = landweber_chain(base_ps, 2);

	std::mt19937 rng(20241015);
	std::uniform_int_distribution<int> coeff(-4, 4);
	std::uniform_int_distribution<int> lead(1, 2);
	int trials = tiny(o) ? 2 : 5;
	for (int k = 0; k < trials; ++k)
	{
		// unit series u(T) = c T + ..., c prime to 3
		Series1<RationalField> u(RationalField{}, cap);
		u.set(1, Rational(lead(rng)));
		for (int d = 2; d <= cap; ++d)
			u.set(d, Rational(coeff(rng)));
		auto conj = conjugate(law, u);
		require_integral(conj.series(), p, "conjugated law");
		auto ps = p_series(conj, p, cap);
		auto h = height(reduce(ps), 2);
		out.expect(h == base_h, "trial " + std::to_string(k) + ": height " + h.str() + " vs " + base_h.str());
		auto chain = landweber_chain(ps, 2);
		auto as_polys = [](const std::vector<Rational> &xs) {
			std::vector<TruncPoly> out;
			for (const auto &x : xs)
				out.push_back(TruncPoly({}, 12, x));
			return out;
		};
		bool eq = ideals_equal(LocalIdeal(p, {}, 12, as_polys(chain.generators[2])),
		                       LocalIdeal(p, {}, 12, as_polys(base_chain.generators[2])));
		out.expect(eq, "trial " + std::to_string(k) + ": I_{3,2} differs");
	}
	if (out.ok)
		out.detail << trials << " reparameterizations keep " << base_h.str() << " and I_{3,2}";
}

std::string statuses(const LandweberReport &r)
{
	std::string s;
	for (const auto &v : r.verdicts)
		s += (s.empty() ? "" : ",") + to_string(v.status);
	return s;
}

void landweber_scenarios(const AcceptanceOptions &, Outcome &out)
{
	using S = RegularityVerdict::Status;
	const PrimeP p3(3);

	auto mult = run_scenario("zp-multiplicative", p3, 1);
	out.expect(mult.exact() && mult.verdicts.size() == 2 && mult.verdicts[1].status == S::unit,
	           "zp-multiplicative: " + to_string(mult.verdict) + " [" + statuses(mult) + "]");

	auto haz = run_scenario("hazewinkel-t1", p3, 2);
	bool shape = haz.verdicts.size() == 3 && haz.verdicts[0].status == S::regular &&
	             haz.verdicts[1].status == S::regular && haz.verdicts[2].status == S::unit;
	out.expect(haz.exact() && shape, "hazewinkel-t1: " + to_string(haz.verdict) + " [" + statuses(haz) + "]");

	auto tors = run_scenario("torsion", p3, 1);
	bool witness = !tors.verdicts.empty() && tors.verdicts[0].status == S::zerodivisor && tors.verdicts[0].witness &&
	               tors.verdicts[0].witness->constant_term() == 3;
	out.expect(tors.verdict == LandweberReport::Verdict::not_exact && witness,
	           "torsion: " + to_string(tors.verdict) + " [" + statuses(tors) + "]");
	if (out.ok)
		out.detail << "zp-mult exact [" << statuses(mult) << "], hazewinkel-t1 exact [" << statuses(haz)
		           << "], torsion not_exact (witness 3)";
}

void rational_cert(const AcceptanceOptions &o, Outcome &out)
{
	auto cert = rational_certificate(QuarticForm::fermat());
	out.expect(cert.rational_case && !cert.report, "not marked as the rational case");
	auto additive = standard_law(StandardKind::additive, RationalField{}, cert.law.cap());
	out.expect(cert.law.series() == additive.series(), "law is not additive");
	for (int n = -3; n <= 3; ++n)
		out.expect(cert.homotopy.rank(2 * n) == 1 && cert.homotopy.rank(2 * n + 1) == 0,
		           "pi_" + std::to_string(2 * n) + " not of rank 1");
	out.expect(cert.homotopy.periodic(), "homotopy shadow not periodic");
	out.expect(cert.iso.normalization == "Serre duality", "iso normalization is " + cert.iso.normalization);

	Json j = certificate_to_json(cert, {.timestamp = false});
	j.erase("tool_version");
	if (o.golden_path)
	{
		std::ifstream in(*o.golden_path);
		if (!in)
		{
			out.expect(false, "cannot read golden file " + *o.golden_path);
			return;
		}
		Json golden = Json::parse(in);
		golden.erase("tool_version");
		out.expect(j == golden, "certificate differs from golden file");
	}
	if (out.ok)
		out.detail << "additive law, rank-1 even groups for |n| <= 3, Serre duality"
		           << (o.golden_path ? ", matches golden" : " (no golden file given)");
}

void height_bound(const AcceptanceOptions &o, Outcome &out)
{
	CensusConfig cfg;
	for (const auto &name : builtin_quartic_names())
		cfg.quartics.push_back(builtin_quartic(name));
	cfg.primes = tiny(o) ? std::vector<long>{3, 5} : std::vector<long>{3, 5, 7, 11, 13};
	cfg.jobs = o.jobs;
	auto r = run_census(cfg);
	int finite = 0, at_least = 0, bad = 0;
	for (const auto &row : r.rows)
	{
		if (row.verdict == "finite")
		{
			++finite;
			out.expect(row.h <= 10, row.quartic + " p=" + std::to_string(row.p) + " finite(" +
			                            std::to_string(row.h) + ")");
		}
		else if (row.verdict == "at_least")
			++at_least;
		else
			++bad;
	}
	out.detail << r.rows.size() << " cells: " << finite << " finite, " << at_least << " at_least, " << bad
	           << " non-integral; none finite above 10";
}

struct Check
{
	const char *name;
	std::function<void(const AcceptanceOptions &, Outcome &)> run;
};

const std::vector<Check> &checks()
{
	static const std::vector<Check> all{
	    {"fermat-dichotomy", fermat_dichotomy},
	    {"stienstra-closed-form", stienstra_closed_form},
	    {"fgl-axioms", fgl_axioms},
	    {"pseries-routes", pseries_routes},
	    {"elliptic-oracle", elliptic_oracle},
	    {"ideal-chain", ideal_chain},
	    {"coordinate-independence", coordinate_independence},
	    {"landweber-scenarios", landweber_scenarios},
	    {"rational-certificate", rational_cert},
	    {"height-bound", height_bound},
	};
	return all;
}

} // namespace

std::vector<std::string> acceptance_check_names()
{
	std::vector<std::string> out;
	for (const auto &c : checks())
		out.push_back(c.name);
	return out;
}

std::vector<CheckResult> run_acceptance(const AcceptanceOptions &opts)
{
	auto names = acceptance_check_names();
	for (const auto &n : opts.only)
		if (std::find(names.begin(), names.end(), n) == names.end())
			throw std::invalid_argument("unknown check '" + n + "'");
	std::vector<CheckResult> results;
	int id = 0;
	for (const auto &c : checks())
	{
		++id;
		if (!opts.only.empty() && std::find(opts.only.begin(), opts.only.end(), c.name) == opts.only.end())
			continue;
		Outcome out;
		auto start = std::chrono::steady_clock::now();
		try
		{
			c.run(opts, out);
		}
		catch (const std::exception &e)
		{
			out.expect(false, std::string("exception: ") + e.what());
		}
		double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
		results.push_back({id, c.name, out.ok, out.detail.str(), secs});
	}
	return results;
}

std::string format_check(const CheckResult &r)
{
	char buf[96];
	std::snprintf(buf, sizeof buf, "[%s] %2d %-24s (%.2f s)  ", r.passed ? "PASS" : "FAIL", r.id, r.name.c_str(),
	              r.seconds);
	return buf + r.detail;
}

} // namespace fgk3
