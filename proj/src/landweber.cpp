#include "fgk3/landweber.hpp"

#include <algorithm>

namespace fgk3 {

RingPresentation RingPresentation::zp(PrimeP p, int cap) { return {p, {}, cap, {}, true}; }

RingPresentation RingPresentation::polynomial(PrimeP p, std::vector<std::string> parameters, int cap)
{
	return {p, std::move(parameters), cap, {}, true};
}

RingPresentation RingPresentation::torsion(PrimeP p, int exponent, int cap)
{
	Integer pk;
	mpz_pow_ui(pk.get_mpz_t(), p.integer().get_mpz_t(), static_cast<unsigned long>(exponent));
	return {p, {}, cap, {TruncPoly({}, cap, Rational(pk))}, false};
}

std::string RingPresentation::describe() const
{
	std::string s = "Z_(" + std::to_string(p.value()) + ")";
	if (!parameters.empty())
	{
		s += "[";
		for (std::size_t i = 0; i < parameters.size(); ++i)
			s += (i ? "," : "") + parameters[i];
		s += "]";
	}
	if (!relations.empty())
	{
		s += "/(";
		for (std::size_t i = 0; i < relations.size(); ++i)
			s += (i ? ", " : "") + relations[i].str();
		s += ")";
	}
	if (!parameters.empty())
		s += " mod deg>" + std::to_string(cap);
	return s;
}

std::string to_string(RegularityVerdict::Status s)
{
	switch (s)
	{
	case RegularityVerdict::Status::regular:
		return "regular";
	case RegularityVerdict::Status::zerodivisor:
		return "zerodivisor";
	case RegularityVerdict::Status::unit:
		return "unit";
	case RegularityVerdict::Status::unknown:
		return "unknown";
	}
	return "?";
}

std::string to_string(LandweberReport::Verdict v)
{
	switch (v)
	{
	case LandweberReport::Verdict::exact:
		return "exact";
	case LandweberReport::Verdict::not_exact:
		return "not_exact";
	case LandweberReport::Verdict::inconclusive:
		return "inconclusive";
	}
	return "?";
}

namespace {

long mod_p(const Rational &x, long p)
{
	Integer P(p), num(x.get_num()), den(x.get_den()), inv;
	mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), P.get_mpz_t());
	Integer r = num * inv % P;
	if (r < 0)
		r += P;
	return r.get_si();
}

/// Coefficients of t_1..t_k mod p.
std::vector<long> linear_part_mod_p(const TruncPoly &f, long p)
{
	std::size_t k = f.variables().size();
	std::vector<long> out(k, 0);
	for (std::size_t i = 0; i < k; ++i)
	{
		Exponents e(k, 0);
		e[i] = 1;
		out[i] = mod_p(f.coefficient(e), p);
	}
	return out;
}

std::size_t rank_mod_p(std::vector<std::vector<long>> rows, long p)
{
	std::size_t rank = 0;
	std::size_t ncols = rows.empty() ? 0 : rows[0].size();
	for (std::size_t col = 0; col < ncols && rank < rows.size(); ++col)
	{
		std::size_t piv = rank;
		while (piv < rows.size() && rows[piv][col] % p == 0)
			++piv;
		if (piv == rows.size())
			continue;
		std::swap(rows[piv], rows[rank]);
		long inv = 1;
		for (long a = rows[rank][col] % p; inv < p && (a * inv) % p != 1; ++inv)
			;
		for (std::size_t r = 0; r < rows.size(); ++r)
		{
			if (r == rank || rows[r][col] % p == 0)
				continue;
			long factor = rows[r][col] * inv % p;
			for (std::size_t j = 0; j < ncols; ++j)
				rows[r][j] = ((rows[r][j] - factor * rows[rank][j]) % p + p) % p;
		}
		++rank;
	}
	return rank;
}

int max_degree(const TruncPoly &f)
{
	int d = 0;
	for (const auto &[e, c] : f.terms())
	{
		int s = 0;
		for (int x : e)
			s += x;
		d = std::max(d, s);
	}
	return d;
}

/// Searches w = p^a * monomial with w not in I and e*w in I. Only products
/// that the truncation computes exactly are accepted.
std::optional<TruncPoly> find_zerodivisor_witness(const RingPresentation &R, const LocalIdeal &I, const TruncPoly &e)
{
	const int budget = R.cap / 2;
	const int edeg = max_degree(e);
	Integer pa = 1;
	for (int a = 0; a <= 6; ++a, pa *= R.p.value())
		for (const auto &m : monomials_up_to(R.parameters.size(), budget))
		{
			int mdeg = 0;
			for (int x : m)
				mdeg += x;
			if (mdeg + edeg > R.cap)
				continue;
			auto w = TruncPoly::monomial(R.parameters, R.cap, m, Rational(pa));
			if (I.contains(w))
				continue;
			if (I.contains(e * w))
				return w;
		}
	return std::nullopt;
}

} // namespace

std::vector<RegularityVerdict> check_regular_sequence(const RingPresentation &R, const std::vector<TruncPoly> &elems)
{
	for (const auto &e : elems)
	{
		if (e.variables() != R.parameters || e.cap() != R.cap)
			throw std::invalid_argument("element " + e.str() + " is not expressed in " + R.describe());
		if (e.valuation(R.p) < Valuation(0))
			throw std::invalid_argument("element " + e.str() + " is not " + std::to_string(R.p.value()) +
			                            "-integral, so not in " + R.describe());
	}
	const long p = R.p.value();
	std::vector<RegularityVerdict> out;
	std::vector<TruncPoly> earlier;
	// linear parts of the elements certified by the regular-parameter shape
	std::vector<std::vector<long>> parameter_rows;
	bool parameter_shape_intact = R.relation_free();

	for (std::size_t k = 0; k < elems.size(); ++k)
	{
		const TruncPoly &e = elems[k];
		auto gens = R.relations;
		gens.insert(gens.end(), earlier.begin(), earlier.end());
		LocalIdeal I(R.p, R.parameters, R.cap, gens);

		auto verdict = [&]() -> RegularityVerdict {
			if (I.is_whole_ring())
				return RegularityVerdict::unknown("quotient by the earlier elements is already the zero ring");
			if (I.plus({e}).is_whole_ring())
				return RegularityVerdict::unit("unit modulo the earlier elements");
			if (I.contains(e))
				return RegularityVerdict::zerodivisor(R.constant(1), "lies in the ideal of the earlier elements, so kills 1 in the quotient");

			if (parameter_shape_intact && k == 0)
				return RegularityVerdict::regular("nonzero element of a torsion-free domain (no relations)");
			if (parameter_shape_intact)
			{
				// R/p is a regular local ring with parameters t_i; elements whose
				// linear parts mod p stay independent extend a regular system
				// of parameters
				bool p_first = LocalIdeal(R.p, R.parameters, R.cap, {elems[0]}).contains(R.constant(p)) &&
				               LocalIdeal(R.p, R.parameters, R.cap, {R.constant(p)}).contains(elems[0]);
				if (p_first && mod_p(e.constant_term(), p) == 0)
				{
					auto rows = parameter_rows;
					rows.push_back(linear_part_mod_p(e, p));
					if (rank_mod_p(rows, p) == rows.size())
					{
						parameter_rows = std::move(rows);
						return RegularityVerdict::regular("linear part mod p is independent of the earlier parameters");
					}
				}
			}
			if (auto w = find_zerodivisor_witness(R, I, e))
				return RegularityVerdict::zerodivisor(*w, "annihilates " + w->str() + " modulo the earlier elements");
			return RegularityVerdict::unknown("no supported shape applies and no annihilated element was found up to degree " +
			                                  std::to_string(R.cap / 2));
		}();
		if (verdict.status != RegularityVerdict::Status::regular)
			parameter_shape_intact = false;
		out.push_back(std::move(verdict));
		earlier.push_back(e);
	}
	return out;
}

namespace {

LandweberReport assemble_report(const RingPresentation &R, const PSeries<PolyRing> &ps, int h_max)
{
	require_integral(ps.series, R.p, "p-series over " + R.describe());
	auto closed = height(reduce(closed_fibre(ps)), h_max);
	auto chain = landweber_chain(ps, h_max);

	LandweberReport rep{
	    .p = R.p.value(),
	    .ring = R.describe(),
	    .series_cap = ps.cap(),
	    .h_max = h_max,
	    .chain = chain,
	    .verdicts = {},
	    .stabilization = std::nullopt,
	    .closed_fibre_height = closed,
	    .verdict = LandweberReport::Verdict::inconclusive,
	    .reason = {},
	    .notes = {"primes q != " + std::to_string(R.p.value()) +
	              " are invertible in the presentation, so q-regularity holds automatically"},
	};

	auto verdicts = check_regular_sequence(R, chain.v);
	for (std::size_t n = 0; n < verdicts.size(); ++n)
	{
		auto status = verdicts[n].status;
		rep.verdicts.push_back(verdicts[n]);
		if (status == RegularityVerdict::Status::unit)
		{
			rep.stabilization = static_cast<int>(n);
			break;
		}
		if (status != RegularityVerdict::Status::regular)
			break;
	}

	const auto &last = rep.verdicts.back();
	const std::string vn = "v_" + std::to_string(rep.verdicts.size() - 1);
	switch (last.status)
	{
	case RegularityVerdict::Status::unit:
		rep.verdict = LandweberReport::Verdict::exact;
		rep.reason = "(v_0, ..., " + vn + ") is regular with " + vn + " a unit";
		if (closed.is_finite() && closed.h != *rep.stabilization)
			throw std::logic_error("unit index " + std::to_string(*rep.stabilization) +
			                       " disagrees with closed-fibre height " + std::to_string(closed.h));
		break;
	case RegularityVerdict::Status::zerodivisor:
		rep.verdict = LandweberReport::Verdict::not_exact;
		rep.reason = vn + " is a zerodivisor: " + last.reason;
		if (!closed.is_finite())
			rep.reason = "closed-fibre height exceeds h_max = " + std::to_string(h_max) + "; " + rep.reason;
		break;
	case RegularityVerdict::Status::unknown:
		rep.verdict = LandweberReport::Verdict::inconclusive;
		rep.reason = vn + ": " + last.reason;
		break;
	case RegularityVerdict::Status::regular:
		rep.verdict = LandweberReport::Verdict::inconclusive;
		rep.reason = "no unit among v_0..v_" + std::to_string(h_max) + ": closed-fibre height exceeds h_max = " +
		             std::to_string(h_max) + " (the height of the closed fibre must be finite)";
		break;
	}
	return rep;
}

int series_cap_for(const PrimeP &p, int h_max)
{
	if (h_max < 1)
		throw std::invalid_argument("h_max must be >= 1");
	return static_cast<int>(ipow(p.value(), h_max));
}

void check_ring_matches(const RingPresentation &R, const PolyRing &ring)
{
	if (!(R.poly_ring() == ring))
		throw std::invalid_argument("law coefficients live in " + ring.describe() + ", not in " + R.describe());
}

} // namespace

LandweberReport landweber_check(const RingPresentation &R, const Logarithm<PolyRing> &l, int h_max)
{
	check_ring_matches(R, l.ring());
	int cap = series_cap_for(R.p, h_max);
	return assemble_report(R, p_series(l, R.p, cap), h_max);
}

LandweberReport landweber_check(const RingPresentation &R, const Logarithm<RationalField> &l, int h_max)
{
	// constant coefficients: work over Q and lift afterwards
	int cap = series_cap_for(R.p, h_max);
	auto ps = p_series(l, R.p, cap);
	return assemble_report(R, {R.p, lift(ps.series, R.poly_ring())}, h_max);
}

LandweberReport landweber_check(const RingPresentation &R, const FormalGroupLaw<PolyRing> &law, int h_max)
{
	check_ring_matches(R, law.ring());
	int cap = series_cap_for(R.p, h_max);
	return assemble_report(R, p_series(law, R.p, cap), h_max);
}

LandweberReport landweber_check(const RingPresentation &R, const FormalGroupLaw<RationalField> &law, int h_max)
{
	int cap = series_cap_for(R.p, h_max);
	auto ps = p_series(law, R.p, cap);
	return assemble_report(R, {R.p, lift(ps.series, R.poly_ring())}, h_max);
}

std::vector<std::string> builtin_scenarios() { return {"zp-multiplicative", "zp-additive", "hazewinkel-t1", "torsion"}; }

LandweberReport run_scenario(const std::string &name, const PrimeP &p, int h_max, int cap)
{
	int series_cap = series_cap_for(p, h_max);
	if (name == "zp-multiplicative")
		return landweber_check(RingPresentation::zp(p, cap), multiplicative_log(RationalField{}, series_cap), h_max);
	if (name == "zp-additive")
		return landweber_check(RingPresentation::zp(p, cap), additive_log(RationalField{}, series_cap), h_max);
	if (name == "torsion")
		return landweber_check(RingPresentation::torsion(p, 2, cap), multiplicative_log(RationalField{}, series_cap),
		                       h_max);
	if (name == "hazewinkel-t1")
	{
		auto R = RingPresentation::polynomial(p, {"t"}, cap);
		auto ring = R.poly_ring();
		auto l = hazewinkel_log({ring.variable(0), ring.one()}, p, series_cap, ring);
		return landweber_check(R, l, h_max);
	}
	throw std::invalid_argument("unknown scenario '" + name + "'");
}

std::string HomotopyShadow::generator(int degree) const
{
	if (degree % 2 != 0)
		return {};
	int n = degree / 2;
	if (n == 0)
		return "1";
	return n == 1 ? "u" : "u^" + std::to_string(n);
}

bool HomotopyShadow::periodic() const
{
	for (int a = min_n; a <= max_n; ++a)
		for (int b = min_n; b <= max_n; ++b)
		{
			if (a + b < min_n || a + b > max_n)
				continue;
			int d = product_degree(2 * a, 2 * b);
			if (rank(d) != 1 || generator(d) != generator(2 * (a + b)))
				return false;
		}
	return true;
}

K3SpectrumCertificate certify_k3_spectrum(const RingPresentation &R, const QuarticForm &f, int h_max)
{
	int cap = series_cap_for(R.p, h_max);
	auto bl = stienstra_log(f, std::max(cap, kCertificateLawCap));
	auto law = fgl_from_log(bl.log, std::min(kCertificateLawCap, bl.log.cap()), R.p, "formal Brauer group of " +
	                        (f.name().empty() ? f.str() : f.name()));
	fgl_from_log(bl.log, brauer_law_check_cap(R.p, cap), R.p);
	auto l = Logarithm<RationalField>(truncate(bl.log.series(), cap));
	auto report = landweber_check(R, l, h_max);
	if (!report.exact())
		throw CertificationRefused(report, report.reason);
	return {
	    .ring = R,
	    .base = R.describe(),
	    .surface = f,
	    .law = law,
	    .iso = {"identity",
	            "Stienstra coordinate",
	            "Gamma_E is identified with the formal Brauer group through the coordinate of its Stienstra "
	            "logarithm"},
	    .homotopy = {"R = " + R.describe()},
	    .report = report,
	    .rational_case = false,
	};
}

K3SpectrumCertificate rational_certificate(const QuarticForm &f)
{
	bool smooth = false;
	for (long q : {3L, 5L, 7L, 11L, 13L})
	{
		PrimeP P(q);
		bool all_divisible = std::all_of(f.terms().begin(), f.terms().end(),
		                                 [&](const auto &t) { return Integer(t.second % P.integer()) == 0; });
		if (!all_divisible && smooth_check_fp(f, P))
		{
			smooth = true;
			break;
		}
	}
	if (!smooth)
		throw SmoothnessCheckFailed("quartic " + f.str() + " is singular modulo every prime 3..13; no smooth model");
	auto law = standard_law(StandardKind::additive, RationalField{}, kCertificateLawCap);
	return {
	    .ring = std::nullopt,
	    .base = "Q",
	    .surface = f,
	    .law = law,
	    .iso = {"identity", "Serre duality",
	            "the unique isomorphism whose induced map on Lie algebras is Serre duality"},
	    .homotopy = {"Q"},
	    .report = std::nullopt,
	    .rational_case = true,
	};
}

} // namespace fgk3
