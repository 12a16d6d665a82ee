#include "support.hpp"

#include "fgk3/ideal.hpp"

#include <doctest.h>

using namespace fgk3;
using namespace testing_support;

namespace {

using S1 = Series1<RationalField>;
const RationalField Q;

S1 log1p(int cap)
{
	S1 s(Q, cap);
	for (int d = 1; d <= cap; ++d)
		s.set(d, make_rational(d % 2 ? 1 : -1, d));
	return s;
}

Weierstrass curve(long A, long B) { return {0, 0, 0, A, B}; }

PolyRing t_ring() { return {{"t"}, 12}; }

Logarithm<PolyRing> hazewinkel_t1(const PrimeP &p, int cap)
{
	auto R = t_ring();
	return hazewinkel_log({R.variable(0), R.one()}, p, cap, R);
}

template <class Ring>
std::vector<TruncPoly> polys(const std::vector<typename Ring::value_type> &xs, const PolyRing &R)
{
	std::vector<TruncPoly> out;
	for (const auto &x : xs)
		out.push_back(as_poly(x, R));
	return out;
}

} // namespace

TEST_CASE("standard laws")
{
	auto add = standard_law(StandardKind::additive, Q, 5);
	CHECK(add.series().terms().size() == 2);
	CHECK(add.coefficient(1, 0) == 1);
	CHECK(add.coefficient(0, 1) == 1);

	ResidueField F7{ResidueRing(PrimeP(7), 1)};
	auto mult = standard_law(StandardKind::multiplicative, F7, 5);
	CHECK(mult.series().terms().size() == 3);
	CHECK(mult.coefficient(1, 1) == 1);
	CHECK(check_axioms(standard_law(StandardKind::multiplicative, Q, 10)).ok());
}

TEST_CASE("fgl_from_log examples")
{
	auto mult = fgl_from_log(Logarithm<RationalField>(log1p(10)), 10);
	CHECK(mult.series() == standard_law(StandardKind::multiplicative, Q, 10).series());
	auto add = fgl_from_log(additive_log(Q, 10), 10);
	CHECK(add.series() == standard_law(StandardKind::additive, Q, 10).series());

	// Fermat logarithm T + 24/5 T^5 + ...: every law coefficient is 5-integral to degree 6
	S1 l(Q, 6);
	l.set(1, 1);
	l.set(5, make_rational(24, 5));
	auto F = fgl_from_log(Logarithm<RationalField>(l), 6);
	for (const auto &[m, c] : F.series().terms())
		CHECK(val_p(c, PrimeP(5)) >= Valuation(0));
	CHECK_NOTHROW(fgl_from_log(Logarithm<RationalField>(l), 6, PrimeP(5)));
	// ...while at 3 the 24/5 is harmless but 1/5-type terms would not be; 1/3 T^3 is not 3-integral
	S1 bad(Q, 4);
	bad.set(1, 1);
	bad.set(3, make_rational(1, 9));
	CHECK_THROWS_AS(fgl_from_log(Logarithm<RationalField>(bad), 4, PrimeP(3)), NonIntegral);
	CHECK_THROWS_AS(fgl_from_log(Logarithm<RationalField>(l), 8), std::invalid_argument);
}

TEST_CASE("logarithm validation")
{
	CHECK_THROWS_AS(Logarithm<RationalField>(series_of({1, 1}, 3)), std::invalid_argument);
	CHECK_THROWS_AS(Logarithm<RationalField>(series_of({0, 2}, 3)), std::invalid_argument);
}

TEST_CASE("log_from_fgl examples and roundtrip")
{
	CHECK(log_from_fgl(standard_law(StandardKind::additive, Q, 8), 8).series() == S1::identity(Q, 8));
	auto l = log_from_fgl(standard_law(StandardKind::multiplicative, Q, 4), 4);
	CHECK(l.series() == series_of({0, 1, make_rational(-1, 2), make_rational(1, 3), make_rational(-1, 4)}, 4));

	for (int k = 0; k < 20; ++k)
	{
		auto s = random_unit_series(8, 5);
		s.set(1, 1);
		Logarithm<RationalField> lg(s);
		CHECK(log_from_fgl(fgl_from_log(lg, 8), 8) == lg);
	}
}

TEST_CASE("p-series examples")
{
	auto ps = p_series(multiplicative_log(Q, 6), PrimeP(3), 6);
	CHECK(ps.series == series_of({0, 3, 3, 1}, 6));
	CHECK(ps.a(0) == 3);
	CHECK(ps.a(2) == 1);
	for (long p : {3L, 7L})
		CHECK(p_series(additive_log(Q, 10), PrimeP(p), 10).series == series_of({0, Rational(p)}, 10));

	// Fermat logarithm at 5: first nonzero coefficient mod 5 sits at T^5
	S1 l(Q, 26);
	for (int n = 0; 4 * n + 1 <= 26; ++n)
	{
		Integer fn = naive_factorial(n);
		l.set(4 * n + 1, make_rational(naive_factorial(4 * n), fn * fn * fn * fn * (4 * n + 1)));
	}
	auto red = reduce(p_series(Logarithm<RationalField>(l), PrimeP(5), 26));
	CHECK(red.series.order() == 5);
}

TEST_CASE("heights")
{
	auto mult3 = reduce(p_series(multiplicative_log(Q, 9), PrimeP(3), 9));
	CHECK(height(mult3) == HeightResult::finite(1, 3));
	auto add = reduce(p_series(additive_log(Q, 27), PrimeP(3), 27));
	CHECK(height(add, 3) == HeightResult::at_least(3));
	CHECK(height(add).str() == "at_least(3)");
	CHECK(height(mult3).str() == "finite(1)");

	auto E = curve(1, 0);
	auto h7 = height(reduce(p_series(elliptic_log(E, 49), PrimeP(7), 49)), 2);
	CHECK(h7 == HeightResult::finite(2, 49));

	// a first nonzero term outside the powers of p is a logic error
	ResidueField F3{ResidueRing(PrimeP(3), 1)};
	Series1<ResidueField> odd(F3, 9);
	odd.set(2, 1);
	CHECK_THROWS_AS(height(PSeries<ResidueField>{PrimeP(3), odd}, 2), FirstNonzeroNotPPower);
	CHECK(floor_log(28, 3) == 3);
	CHECK(floor_log(26, 3) == 2);
}

TEST_CASE("property: multiplicative height is 1, additive is at least h_max")
{
	for (long p : {3L, 5L, 7L, 11L, 13L})
	{
		// log(1+T) is dense, so only the small primes go to degree p^2
		int hm = p <= 5 ? 2 : 1;
		int cap = static_cast<int>(ipow(p, hm));
		CHECK(height(reduce(p_series(multiplicative_log(Q, cap), PrimeP(p), cap)), hm) == HeightResult::finite(1, p));
		for (int h = 1; h <= hm; ++h)
			CHECK(height(reduce(p_series(additive_log(Q, cap), PrimeP(p), cap)), h) == HeightResult::at_least(h));
	}
}

TEST_CASE("landweber chain examples")
{
	auto chain = landweber_chain(p_series(multiplicative_log(Q, 9), PrimeP(3), 9), 2);
	REQUIRE(chain.generators.size() == 4);
	CHECK(chain.generators[0].empty());
	CHECK(chain.generators[1] == std::vector<Rational>{3});
	CHECK(chain.generators[2].size() == 3);
	CHECK(chain.generators[3].size() == 9);
	CHECK(chain.v[1] == 1);

	auto add = landweber_chain(p_series(additive_log(Q, 25), PrimeP(5), 25), 2);
	CHECK(add.v[0] == 5);
	CHECK(add.v[1] == 0);
	CHECK(add.v[2] == 0);
	CHECK_THROWS_AS(landweber_chain(p_series(additive_log(Q, 8), PrimeP(3), 8), 2), std::invalid_argument);
}

TEST_CASE("hazewinkel logarithms")
{
	auto R = t_ring();
	auto m = hazewinkel_coefficients({R.variable(0), R.one()}, PrimeP(3), 9, R);
	REQUIRE(m.size() == 3);
	CHECK(m[0] == R.one());
	CHECK(m[1] == TruncPoly::parse("1/3*t", {"t"}, 12));
	// m_2 = (m_0 v_2 + m_1 v_1^3) / 3 by hand
	CHECK(m[2] == TruncPoly::parse("1/3 + 1/9*t^4", {"t"}, 12));

	auto l1 = hazewinkel_log({R.one()}, PrimeP(5), 25, R);
	auto ps = p_series(l1, PrimeP(5), 25);
	CHECK(landweber_chain(ps, 1).v[1].constant_term() != 0);
	CHECK(val_p(landweber_chain(ps, 1).v[1].constant_term() - 1, PrimeP(5)) >= Valuation(1));

	auto empty = hazewinkel_log({}, PrimeP(3), 9, R);
	CHECK(empty.series() == Series1<PolyRing>::identity(R, 9));
}

TEST_CASE("property: hazewinkel consistency for v = (t, 1)")
{
	for (long p : {3L, 5L})
	{
		PrimeP P(p);
		int cap = static_cast<int>(p * p);
		auto chain = landweber_chain(p_series(hazewinkel_t1(P, cap), P, cap), 2);
		auto R = t_ring();
		auto pt = R.constant(p);
		auto t = R.variable(0);
		CHECK(LocalIdeal(P, {"t"}, 12, {pt}).contains(chain.v[1] - t));
		CHECK(LocalIdeal(P, {"t"}, 12, {pt, t, chain.v[2]}).is_whole_ring());
		CHECK_FALSE(LocalIdeal(P, {"t"}, 12, {pt, t}).is_whole_ring());
	}
}

TEST_CASE("elliptic laws")
{
	auto E = curve(1, 0);
	auto law = elliptic_fgl(E, 10);
	CHECK(law.log.coefficient(1) == 1);
	CHECK(law.log.coefficient(5) == make_rational(2, 5));
	for (int d = 2; d <= 4; ++d)
		CHECK(law.log.coefficient(d) == 0);
	for (long p : {5L, 7L})
		CHECK_NOTHROW(require_integral(law.law.series(), PrimeP(p), "elliptic law"));

	for (auto W : {curve(1, 0), curve(0, 1), Weierstrass{1, 0, 1, -1, 0}})
	{
		auto F = elliptic_fgl(W, 10).law;
		// F(X, 0) = X and F(0, Y) = Y
		for (int i = 1; i <= 10; ++i)
		{
			CHECK(F.coefficient(i, 0) == (i == 1 ? 1 : 0));
			CHECK(F.coefficient(0, i) == (i == 1 ? 1 : 0));
		}
		CHECK(check_axioms(F).ok());
	}
}

TEST_CASE("elliptic oracle examples")
{
	CHECK(elliptic_ss_oracle(curve(0, 1), PrimeP(5)) == Reduction::supersingular);
	CHECK(elliptic_ss_oracle(curve(1, 0), PrimeP(5)) == Reduction::ordinary);
	CHECK(elliptic_ss_oracle(curve(1, 0), PrimeP(7)) == Reduction::supersingular);
	CHECK(elliptic_trace(curve(1, 0), PrimeP(5)) == 2);
	CHECK(elliptic_trace(curve(1, 0), PrimeP(7)) == 0);
	CHECK_THROWS(elliptic_trace(curve(0, 0), PrimeP(5)));
}

TEST_CASE("property: elliptic heights match point counts")
{
	int pairs = 0;
	for (auto [A, B] : {std::pair{1L, 0L}, std::pair{0L, 1L}, std::pair{2L, 3L}})
		for (long p : {5L, 7L, 11L, 13L})
		{
			auto E = curve(A, B);
			if (discriminant(E) % p == 0)
				continue;
			long ap = trace_by_character_sum(A, B, p);
			CHECK(elliptic_trace(E, PrimeP(p)) == ap);
			int cap = static_cast<int>(p * p);
			auto h = height(reduce(p_series(elliptic_log(E, cap), PrimeP(p), cap)), 2);
			REQUIRE(h.is_finite());
			CHECK(h.h == (ap % p != 0 ? 1 : 2));
			++pairs;
		}
	CHECK(pairs >= 6);
}

TEST_CASE("property: FGL axioms hold at cap 12 for every constructor")
{
	CHECK(check_axioms(standard_law(StandardKind::additive, Q, 12)).ok());
	CHECK(check_axioms(standard_law(StandardKind::multiplicative, Q, 12)).ok());
	CHECK(check_axioms(fgl_from_log(hazewinkel_t1(PrimeP(3), 12), 12, PrimeP(3))).ok());
	CHECK(check_axioms(elliptic_fgl(curve(0, 1), 12).law).ok());
	for (int k = 0; k < 3; ++k)
	{
		auto s = random_unit_series(12, 4);
		s.set(1, 1);
		CHECK(check_axioms(fgl_from_log(Logarithm<RationalField>(s), 12)).ok());
	}
	// a series that is not a group law
	auto X = SeriesN<RationalField>::variable(Q, 2, 4, 0), Y = SeriesN<RationalField>::variable(Q, 2, 4, 1);
	FormalGroupLaw<RationalField> bogus(X + Y + X * X * Y, "bogus");
	auto rep = check_axioms(bogus);
	CHECK(rep.unit);
	CHECK_FALSE(rep.commutative);
}

TEST_CASE("property: the two p-series routes agree")
{
	for (long p : {3L, 5L})
	{
		PrimeP P(p);
		int cap = static_cast<int>(p) + 3;
		auto mult = multiplicative_log(Q, cap);
		CHECK(p_series(mult, P, cap).series == p_series(fgl_from_log(mult, cap), P, cap).series);
		auto haz = hazewinkel_t1(P, cap);
		CHECK(p_series(haz, P, cap).series == p_series(fgl_from_log(haz, cap), P, cap).series);
		auto ell = elliptic_fgl(curve(1, 0), cap);
		CHECK(p_series(ell.log, P, cap).series == p_series(ell.law, P, cap).series);
	}
}

TEST_CASE("property: first nonzero degree of [p] mod p is a power of p")
{
	auto is_power = [](long d, long p) {
		while (d % p == 0)
			d /= p;
		return d == 1;
	};
	for (long p : {3L, 5L, 7L})
	{
		int cap = static_cast<int>(p * p);
		std::vector<Logarithm<RationalField>> logs{multiplicative_log(Q, cap), elliptic_log(curve(1, 0), cap),
		                                           elliptic_log(curve(0, 1), cap)};
		for (const auto &l : logs)
		{
			auto red = reduce(p_series(l, PrimeP(p), cap));
			if (red.series.order() > 0)
				CHECK(is_power(red.series.order(), p));
		}
	}
}

TEST_CASE("property: chain recursion I_{n+1} = I_n + (v_n)")
{
	for (long p : {3L, 5L})
	{
		PrimeP P(p);
		int cap = static_cast<int>(p * p);
		auto R = t_ring();
		auto check = [&](const auto &chain) {
			using Ring = std::conditional_t<std::is_same_v<std::decay_t<decltype(chain.v[0])>, Rational>, RationalField,
			                                PolyRing>;
			for (int n = 0; n <= 2; ++n)
			{
				auto lhs = polys<Ring>(chain.generators[n + 1], R);
				auto rhs = polys<Ring>(chain.generators[n], R);
				rhs.push_back(as_poly(chain.v[n], R));
				CHECK(ideals_equal(LocalIdeal(P, {"t"}, 12, lhs), LocalIdeal(P, {"t"}, 12, rhs)));
			}
		};
		check(landweber_chain(p_series(multiplicative_log(Q, cap), P, cap), 2));
		check(landweber_chain(p_series(hazewinkel_t1(P, cap), P, cap), 2));
		check(landweber_chain(p_series(elliptic_log(curve(1, 0), cap), P, cap), 2));
	}
}

TEST_CASE("property: coordinate independence under random unit reparameterization")
{
	for (long p : {3L, 5L})
	{
		PrimeP P(p);
		int cap = static_cast<int>(p * p) > 12 ? 12 : static_cast<int>(p * p);
		int hm = floor_log(cap, p);
		for (const auto &law : {standard_law(StandardKind::multiplicative, Q, cap), elliptic_fgl(curve(1, 0), cap).law})
		{
			auto base = p_series(law, P, cap);
			for (int k = 0; k < 5; ++k)
			{
				Series1<RationalField> u(Q, cap);
				u.set(1, Rational(uniform(1, p - 1)));
				for (int d = 2; d <= cap; ++d)
					u.set(d, Rational(uniform(-3, 3)));
				auto conj = conjugate(law, u);
				CHECK(check_axioms(conj).ok());
				auto ps = p_series(conj, P, cap);
				CHECK(height(reduce(ps), hm) == height(reduce(base), hm));
				auto c1 = landweber_chain(ps, hm), c0 = landweber_chain(base, hm);
				for (int n = 1; n <= hm; ++n)
				{
					std::vector<TruncPoly> g1, g0;
					for (const auto &x : c1.generators[n])
						g1.push_back(TruncPoly({}, 12, x));
					for (const auto &x : c0.generators[n])
						g0.push_back(TruncPoly({}, 12, x));
					CHECK(ideals_equal(LocalIdeal(P, {}, 12, g1), LocalIdeal(P, {}, 12, g0)));
				}
			}
		}
	}
}
