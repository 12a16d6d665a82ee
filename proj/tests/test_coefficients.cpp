#include "support.hpp"

#include <doctest.h>

using namespace fgk3;
using namespace testing_support;

TEST_CASE("val_p examples")
{
	CHECK(val_p(make_rational(24, 5), PrimeP(5)) == Valuation(-1));
	CHECK(val_p(Rational(0), PrimeP(7)).is_infinite());
	CHECK(val_p(Integer(2520), PrimeP(3)) == Valuation(trial_valuation(2520, 3)));
	CHECK(val_p(Integer(2520), PrimeP(3)) == Valuation(2));
	CHECK(val_p(make_rational(-18, 25), PrimeP(3)) == Valuation(2));
	CHECK(val_p(make_rational(-18, 25), PrimeP(5)) == Valuation(-2));
	CHECK(is_p_integral(make_rational(7, 10), PrimeP(3)));
	CHECK_FALSE(is_p_integral(make_rational(7, 15), PrimeP(3)));
}

TEST_CASE("primes: 2 and composites are rejected")
{
	CHECK_THROWS_WITH_AS(PrimeP(2), doctest::Contains("characteristic 2"), std::invalid_argument);
	CHECK_THROWS_AS(PrimeP(9), std::invalid_argument);
	CHECK_THROWS_AS(PrimeP(1), std::invalid_argument);
	CHECK_THROWS_AS(PrimeP(-3), std::invalid_argument);
	CHECK(PrimeP(101).value() == 101);
}

TEST_CASE("multinomial examples")
{
	std::vector<long> ones{1, 1, 1, 1}, twos{2, 2, 2, 2}, zeros{0, 0, 0, 0};
	CHECK(multinomial(4, ones) == 24);
	CHECK(multinomial(8, twos) == 2520);
	CHECK(multinomial(0, zeros) == 1);
	std::vector<long> bad{1, 2};
	CHECK_THROWS_AS(multinomial(4, bad), std::invalid_argument);
	std::vector<long> neg{5, -1};
	CHECK_THROWS_AS(multinomial(4, neg), std::invalid_argument);
}

TEST_CASE("multinomial matches brute-force expansion of (x1+...+xr)^n")
{
	for (std::size_t r = 1; r <= 4; ++r)
	{
		// expand (x1 + ... + xr)^n term by term
		std::map<std::vector<long>, Integer> poly{{std::vector<long>(r, 0), 1}};
		for (long n = 1; n <= 10; ++n)
		{
			std::map<std::vector<long>, Integer> next;
			for (const auto &[e, c] : poly)
				for (std::size_t i = 0; i < r; ++i)
				{
					auto e2 = e;
					++e2[i];
					next[e2] += c;
				}
			poly = std::move(next);
			for (const auto &[e, c] : poly)
				CHECK(multinomial(n, e) == c);
		}
	}
}

TEST_CASE("reduce_mod examples")
{
	CHECK(reduce_mod(make_rational(24, 5), ResidueRing(PrimeP(3), 2)) == 3);
	CHECK(reduce_mod(Rational(1), ResidueRing(PrimeP(7), 1)) == 1);
	CHECK_THROWS_AS(reduce_mod(make_rational(1, 5), ResidueRing(PrimeP(5), 1)), NonIntegral);
	CHECK(reduce_mod(Rational(-1), ResidueRing(PrimeP(5), 2)) == 24);
	CHECK(ResidueRing(PrimeP(3), 2).describe() == "Z/3^2");
}

TEST_CASE("reduce_mod agrees with a residue search")
{
	for (long p : {3L, 5L, 7L})
		for (int M : {1, 2, 3})
		{
			ResidueRing R(PrimeP(p), M);
			long mod = 1;
			for (int i = 0; i < M; ++i)
				mod *= p;
			for (int k = 0; k < 40; ++k)
			{
				Rational x = random_rational(50);
				if (!is_p_integral(x, PrimeP(p)))
				{
					CHECK_THROWS_AS(R.reduce(x), NonIntegral);
					continue;
				}
				long num = Integer(x.get_num()).get_si(), den = Integer(x.get_den()).get_si();
				long found = -1;
				for (long r = 0; r < mod; ++r)
					if ((((r * den - num) % mod) + mod) % mod == 0)
						found = r;
				CHECK(R.reduce(x) == found);
			}
		}
}

TEST_CASE("property: rational arithmetic is exact")
{
	for (int k = 0; k < 200; ++k)
	{
		Rational a = random_rational(1000), b = random_nonzero_rational(1000);
		CHECK((a + b) - b == a);
		CHECK((a * b) / b == a);
	}
}

TEST_CASE("property: valuation is multiplicative and ultrametric")
{
	for (long p : {3L, 5L, 7L})
	{
		PrimeP P(p);
		for (int k = 0; k < 200; ++k)
		{
			Rational x = random_nonzero_rational(400), y = random_nonzero_rational(400);
			CHECK(val_p(x * y, P).value() == val_p(x, P).value() + val_p(y, P).value());
			CHECK(val_p(x + y, P) >= std::min(val_p(x, P), val_p(y, P)));
		}
	}
}

TEST_CASE("property: reduction mod p^M is a ring homomorphism")
{
	for (long p : {3L, 5L, 11L})
		for (int M : {1, 3})
		{
			ResidueRing R(PrimeP(p), M);
			for (int k = 0; k < 100; ++k)
			{
				Rational x = random_rational(60), y = random_rational(60);
				if (!is_p_integral(x, PrimeP(p)) || !is_p_integral(y, PrimeP(p)))
					continue;
				CHECK(R.reduce(x * y) == R.mul(R.reduce(x), R.reduce(y)));
				CHECK(R.reduce(x + y) == R.add(R.reduce(x), R.reduce(y)));
			}
		}
}

TEST_CASE("trunc_poly_arith examples")
{
	std::vector<std::string> t{"t"};
	auto x = TruncPoly::variable(t, 2, 0);
	CHECK(trunc_poly_arith(x, x, PolyOp::mul) == TruncPoly::monomial(t, 2, {2}));
	auto one = TruncPoly(t, 2, 1);
	CHECK(trunc_poly_arith(one + x, one - x, PolyOp::mul) == one - TruncPoly::monomial(t, 2, {2}));

	std::vector<std::string> t12{"t1", "t2"};
	auto a = TruncPoly::variable(t12, 2, 0), b = TruncPoly::variable(t12, 2, 1);
	auto sq = trunc_poly_arith(a + b, a + b, PolyOp::mul);
	CHECK(sq.coefficient({2, 0}) == 1);
	CHECK(sq.coefficient({1, 1}) == 2);
	CHECK(sq.coefficient({0, 2}) == 1);
	CHECK(sq.terms().size() == 3);
}

TEST_CASE("truncated polynomials: truncation, parsing and errors")
{
	std::vector<std::string> t{"t"};
	auto x = TruncPoly::variable(t, 2, 0);
	auto cube = x * x * x;
	CHECK(cube.is_zero());
	CHECK(cube.truncated_terms() > 0);

	auto p = TruncPoly::parse("3*t^2*s - 1/2*t + 7", {"t", "s"}, 4);
	CHECK(p.coefficient({2, 1}) == 3);
	CHECK(p.coefficient({1, 0}) == make_rational(-1, 2));
	CHECK(p.constant_term() == 7);
	CHECK(p.valuation(PrimeP(3)) == Valuation(0));
	CHECK(TruncPoly::parse("1/9*t^2", t, 4).valuation(PrimeP(3)) == Valuation(-2));
	CHECK_THROWS_AS(TruncPoly::parse("u + 1", t, 4), std::invalid_argument);

	auto other = TruncPoly::variable({"s"}, 2, 0);
	CHECK_THROWS_AS(trunc_poly_arith(x, other, PolyOp::add), std::invalid_argument);
	CHECK_THROWS_AS(trunc_poly_arith(x, TruncPoly::variable(t, 3, 0), PolyOp::mul), std::invalid_argument);
}

TEST_CASE("property: truncated multiplication agrees with untruncated then truncated")
{
	std::vector<std::string> v{"a", "b"};
	for (int k = 0; k < 30; ++k)
	{
		TruncPoly f(v, 10), g(v, 10);
		for (int i = 0; i < 5; ++i)
		{
			f.add_term({static_cast<int>(uniform(0, 3)), static_cast<int>(uniform(0, 3))}, random_rational(9));
			g.add_term({static_cast<int>(uniform(0, 3)), static_cast<int>(uniform(0, 3))}, random_rational(9));
		}
		CHECK((f * g).truncated(5) == f.truncated(5) * g.truncated(5));
	}
}
