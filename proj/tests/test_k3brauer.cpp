#include "support.hpp"

#include "fgk3/k3brauer.hpp"

#include <doctest.h>

#include <cstdio>
#include <fstream>

using namespace fgk3;
using namespace testing_support;

namespace {

using Mono = std::array<int, 4>;

/// Coefficient of (T0 T1 T2 T3)^{m-1} in f^{m-1}, by full dense expansion.
Integer brute_beta(const QuarticForm &f, int m)
{
	std::map<Mono, Integer> power{{Mono{0, 0, 0, 0}, 1}};
	for (int k = 0; k < m - 1; ++k)
	{
		std::map<Mono, Integer> next;
		for (const auto &[e, c] : power)
			for (const auto &[g, d] : f.terms())
				next[{e[0] + g[0], e[1] + g[1], e[2] + g[2], e[3] + g[3]}] += c * d;
		power = std::move(next);
	}
	auto it = power.find({m - 1, m - 1, m - 1, m - 1});
	return it == power.end() ? Integer(0) : it->second;
}

Rational fermat_closed_form(int m)
{
	if ((m - 1) % 4)
		return 0;
	int n = (m - 1) / 4;
	Integer fn = naive_factorial(n);
	return make_rational(naive_factorial(4 * n), fn * fn * fn * fn * m);
}

QuarticForm diagonal(long a, long b, long c, long d)
{
	return QuarticForm({{{4, 0, 0, 0}, a}, {{0, 4, 0, 0}, b}, {{0, 0, 4, 0}, c}, {{0, 0, 0, 4}, d}});
}

} // namespace

TEST_CASE("fermat logarithm examples")
{
	auto l = fermat_log(13).log;
	CHECK(l.coefficient(5) == make_rational(24, 5));
	CHECK(l.coefficient(9) == 280);
	CHECK(l.coefficient(3) == 0);
	for (int m = 1; m <= 13; ++m)
		CHECK(l.coefficient(m) == fermat_closed_form(m));
}

TEST_CASE("stienstra betas against a dense expansion oracle")
{
	auto f = QuarticForm::fermat();
	for (int m = 1; m <= 9; ++m)
		CHECK(stienstra_beta(f, m, StienstraMethod::expansion) == brute_beta(f, m));
	CHECK(stienstra_beta(f, 9) == 2520);
	CHECK(stienstra_beta(f, 3) == 0);
	for (const auto &name : builtin_quartic_names())
	{
		auto g = builtin_quartic(name);
		CHECK(stienstra_beta(g, 1) == 1);
		for (int m = 2; m <= 7; ++m)
			CHECK(stienstra_beta(g, m) == brute_beta(g, m));
	}
}

TEST_CASE("property: closed form and extraction agree to degree 17")
{
	auto f = QuarticForm::fermat();
	auto a = stienstra_log(f, 17, StienstraMethod::expansion).log;
	auto b = fermat_log(17).log;
	CHECK(a == b);
	for (int m = 1; m <= 17; ++m)
		CHECK(a.coefficient(m) == fermat_closed_form(m));
	auto d = diagonal(1, 2, 3, 5);
	CHECK(stienstra_log(d, 17, StienstraMethod::expansion).log == stienstra_log(d, 17).log);
}

TEST_CASE("property: betas of diagonal quartics vanish off m = 1 mod 4")
{
	for (int k = 0; k < 4; ++k)
	{
		auto f = diagonal(uniform(1, 6), uniform(1, 6), uniform(1, 6), uniform(1, 6));
		auto betas = stienstra_betas(f, 17);
		for (int m = 1; m <= 17; ++m)
			if ((m - 1) % 4)
				CHECK(betas[m] == 0);
			else
				CHECK(betas[m] != 0);
	}
}

TEST_CASE("brauer heights")
{
	auto f = QuarticForm::fermat();
	CHECK(brauer_height(f, PrimeP(5), 1) == HeightResult::finite(1, 5));
	CHECK(brauer_height(f, PrimeP(3), 2) == HeightResult::at_least(2));
	CHECK(brauer_height(f, PrimeP(13), 1) == HeightResult::finite(1, 13));
	CHECK(brauer_height_at_cap(f, PrimeP(3), 28) == HeightResult::at_least(3));
	CHECK_THROWS_AS(brauer_height(f, PrimeP(3), 0), std::invalid_argument);
	CHECK_THROWS_AS(brauer_height(diagonal(3, 3, 3, 3), PrimeP(3), 1), std::invalid_argument);
}

TEST_CASE("ordinarity criterion")
{
	auto f = QuarticForm::fermat();
	CHECK(ordinarity_criterion(f, PrimeP(5)));
	CHECK_FALSE(ordinarity_criterion(f, PrimeP(3)));
	Integer b13 = naive_factorial(12) / (naive_factorial(3) * naive_factorial(3) * naive_factorial(3) * naive_factorial(3));
	CHECK(b13 == 369600);
	CHECK(stienstra_beta(f, 13) == b13);
	CHECK(ordinarity_criterion(f, PrimeP(13)));
}

TEST_CASE("property: ordinarity agrees with height one")
{
	auto f = QuarticForm::fermat();
	for (long p : {3L, 5L, 7L, 11L, 13L})
		CHECK(ordinarity_criterion(f, PrimeP(p)) == brauer_height(f, PrimeP(p), 1).is_finite());
	int tested = 0;
	while (tested < 3)
	{
		auto g = diagonal(uniform(1, 9), uniform(1, 9), uniform(1, 9), uniform(1, 9));
		for (long p : {3L, 5L})
		{
			if (!smooth_check_fp(g, PrimeP(p)))
				continue;
			CHECK(ordinarity_criterion(g, PrimeP(p)) == brauer_height(g, PrimeP(p), 1).is_finite());
		}
		++tested;
	}
}

TEST_CASE("smoothness spot check")
{
	CHECK(smooth_check_fp(QuarticForm::fermat(), PrimeP(5)));
	CHECK_FALSE(smooth_check_fp(QuarticForm({{{4, 0, 0, 0}, 1}}), PrimeP(3)));
	CHECK_THROWS_AS(smooth_check_fp(QuarticForm::fermat(), PrimeP(2)), std::invalid_argument);
	CHECK_THROWS_AS(smooth_check_fp(QuarticForm::fermat(), PrimeP(17)), std::invalid_argument);
}

TEST_CASE("quartic parsing and validation")
{
	auto f = QuarticForm::parse("# fermat\n4 0 0 0 1\n0 4 0 0 1\n\n0 0 4 0 1\n0 0 0 4 1\n");
	CHECK(f == QuarticForm::fermat());
	CHECK(QuarticForm::parse(f.to_text()) == f);
	CHECK_THROWS_AS(QuarticForm::parse("3 0 0 0 1\n"), std::invalid_argument);
	CHECK_THROWS_AS(QuarticForm::parse("4 0 0 0\n"), std::invalid_argument);
	CHECK_THROWS_AS(QuarticForm::parse("4 0 0 0 0\n"), std::invalid_argument);
	CHECK_THROWS_AS(QuarticForm::parse("4 0 0 0 x\n"), std::invalid_argument);
	CHECK(QuarticForm::load("fermat") == QuarticForm::fermat());
	CHECK_THROWS_AS(QuarticForm::load("/nonexistent/quartic.txt"), std::invalid_argument);

	const char *path = "quartic_roundtrip_test.txt";
	{
		std::ofstream out(path);
		out << builtin_quartic("mixed-1").to_text();
	}
	CHECK(QuarticForm::load(path) == builtin_quartic("mixed-1"));
	std::remove(path);
	CHECK(QuarticForm::fermat().is_diagonal());
	CHECK_FALSE(builtin_quartic("dwork-1").is_diagonal());
}

TEST_CASE("property: height bound on the built-in quartics")
{
	for (const auto &name : builtin_quartic_names())
		for (long p : {3L, 5L, 7L})
		{
			auto h = brauer_height(builtin_quartic(name), PrimeP(p), 1);
			if (h.is_finite())
				CHECK(h.h <= 10);
		}
}
