#include "support.hpp"

#include <doctest.h>

using namespace fgk3;
using namespace testing_support;

namespace {

using S1 = Series1<RationalField>;
using S2 = SeriesN<RationalField>;
const RationalField Q;

S1 T(int cap) { return S1::identity(Q, cap); }
S1 c(int cap, Rational x) { return S1::constant(Q, cap, x); }

S1 log1p(int cap)
{
	S1 s(Q, cap);
	for (int d = 1; d <= cap; ++d)
		s.set(d, make_rational(d % 2 ? 1 : -1, d));
	return s;
}

} // namespace

TEST_CASE("series multiplication examples")
{
	CHECK(T(3) * T(3) == series_of({0, 0, 1}, 3));
	CHECK((c(3, 1) + T(3)) * series_of({1, -1, 1, -1}, 3) == c(3, 1));

	auto X = S2::variable(Q, 2, 2, 0), Y = S2::variable(Q, 2, 2, 1);
	auto sq = (X + Y) * (X + Y);
	CHECK(sq.coefficient(2, 0) == 1);
	CHECK(sq.coefficient(1, 1) == 2);
	CHECK(sq.coefficient(0, 2) == 1);
	CHECK(sq.terms().size() == 3);
}

TEST_CASE("composition examples")
{
	auto a = series_of({0, 1, 1}, 5);
	CHECK(compose(a, T(5)) == a);

	auto X = S2::variable(Q, 2, 6, 0), Y = S2::variable(Q, 2, 6, 1);
	CHECK(compose(T(6), X + Y) == X + Y);

	CHECK(compose(series_of({0, 0, 1}, 3), series_of({0, 1, 1}, 3)) == series_of({0, 0, 1, 2}, 3));
	CHECK_THROWS_AS(compose(T(3), series_of({1, 1}, 3)), std::invalid_argument);
}

TEST_CASE("reversion examples")
{
	CHECK(reversion(T(6)) == T(6));
	CHECK(reversion(log1p(4)) == series_of({0, 1, make_rational(1, 2), make_rational(1, 6), make_rational(1, 24)}, 4));
	CHECK(reversion(series_of({0, 1, 1}, 3)) == series_of({0, 1, -1, 2}, 3));
	CHECK_THROWS(reversion(series_of({0, 0, 1}, 3)));
	CHECK_THROWS(reversion(series_of({1, 1}, 3)));
}

TEST_CASE("reversion agrees with a degreewise solve")
{
	// solve a(b(T)) = T one coefficient at a time with dense arithmetic
	for (int k = 0; k < 10; ++k)
	{
		const int cap = 8;
		auto a = random_unit_series(cap);
		auto da = dense(a);
		std::vector<Rational> b(cap + 1, 0);
		b[1] = 1 / da[1];
		for (int d = 2; d <= cap; ++d)
		{
			auto cur = dense_compose(da, b, cap);
			b[d] = -cur[d] / da[1];
		}
		CHECK(dense(reversion(a)) == b);
	}
}

TEST_CASE("calculus examples")
{
	S1 lp(Q, 9);
	for (int n = 0; 4 * n <= 9; ++n)
	{
		Integer fn = naive_factorial(n);
		lp.set(4 * n, make_rational(naive_factorial(4 * n), fn * fn * fn * fn));
	}
	auto l = integrate(lp);
	CHECK(l.cap() == 10);
	CHECK(l.coefficient(1) == 1);
	CHECK(l.coefficient(5) == make_rational(24, 5));
	CHECK(l.coefficient(9) == 280);
	CHECK(derive(series_of({0, 0, 0, 1}, 3)) == series_of({0, 0, 3}, 2));
	CHECK(derive_integrate(derive_integrate(lp, CalculusMode::integrate), CalculusMode::derive) == lp);
}

TEST_CASE("integration fails loudly where the ring cannot divide")
{
	ResidueField F{ResidueRing(PrimeP(3), 1)};
	auto s = Series1<ResidueField>::constant(F, 4, 1);
	s.set(2, 1); // integrating T^2 divides by 3
	CHECK_THROWS_AS(integrate(s), DivisionFailure);
	CHECK_THROWS_AS(inverse(series_of({0, 1}, 3)), DivisionFailure);
}

TEST_CASE("property: derive inverts integrate on random series")
{
	for (int k = 0; k < 30; ++k)
	{
		auto a = random_unit_series(9) + c(9, random_rational());
		CHECK(derive(integrate(a)) == a);
	}
}

TEST_CASE("property: multiplication is associative and commutative")
{
	for (int k = 0; k < 30; ++k)
	{
		auto a = random_unit_series(10) + c(10, random_rational());
		auto b = random_unit_series(10);
		auto d = random_unit_series(10) + c(10, 1);
		CHECK(a * b == b * a);
		CHECK((a * b) * d == a * (b * d));
	}
	auto X = S2::variable(Q, 2, 8, 0), Y = S2::variable(Q, 2, 8, 1);
	auto f = X + scale(X * Y, Rational(3)) + Y * Y, g = Y - X * X * Y, h = X * Y + scale(Y, Rational(2));
	CHECK(f * g == g * f);
	CHECK((f * g) * h == f * (g * h));
}

TEST_CASE("property: composition is associative")
{
	for (int k = 0; k < 15; ++k)
	{
		auto a = random_unit_series(8), b = random_unit_series(8), d = random_unit_series(8);
		CHECK(compose(compose(a, b), d) == compose(a, compose(b, d)));
	}
}

TEST_CASE("property: reversion roundtrip on 50 random series")
{
	for (int k = 0; k < 50; ++k)
	{
		int cap = static_cast<int>(uniform(2, 12));
		auto a = random_unit_series(cap);
		auto r = reversion(a);
		CHECK(compose(a, r) == T(cap));
		CHECK(compose(r, a) == T(cap));
	}
}

TEST_CASE("property: truncation coherence")
{
	for (int k = 0; k < 20; ++k)
	{
		const int N = 12, M = static_cast<int>(uniform(1, 11));
		auto a = random_unit_series(N), b = random_unit_series(N);
		auto ca = truncate(a, M), cb = truncate(b, M);
		CHECK(truncate(a * b, M) == ca * cb);
		CHECK(truncate(a + b, M) == ca + cb);
		CHECK(truncate(compose(a, b), M) == compose(ca, cb));
		CHECK(truncate(reversion(a), M) == reversion(ca));
		CHECK(truncate(inverse(a + c(N, 1)), M) == inverse(ca + c(M, 1)));
		CHECK(truncate(integrate(a), M + 1) == integrate(ca));
	}
	CHECK_THROWS(truncate(T(3), 5));
}
