#include "fgk3/fgl.hpp"

namespace fgk3 {

Series1<ResidueField> reduce_series(const Series1<RationalField> &s, const ResidueRing &ring)
{
	ResidueField F{ring};
	Series1<ResidueField> r(F, s.cap());
	for (const auto &[d, c] : s.terms())
	{
		if (!is_p_integral(c, ring.prime()))
			throw NonIntegral(c, ring.prime(), d, "reduction mod " + ring.describe());
		r.set(d, ring.reduce(c));
	}
	return r;
}

PSeries<ResidueField> reduce(const PSeries<RationalField> &ps, int precision)
{
	return {ps.p, reduce_series(ps.series, ResidueRing(ps.p, precision))};
}

Series1<RationalField> closed_fibre(const Series1<PolyRing> &s)
{
	Series1<RationalField> r(RationalField{}, s.cap());
	for (const auto &[d, c] : s.terms())
		r.set(d, c.constant_term());
	return r;
}

PSeries<RationalField> closed_fibre(const PSeries<PolyRing> &ps) { return {ps.p, closed_fibre(ps.series)}; }

Series1<PolyRing> lift(const Series1<RationalField> &s, const PolyRing &R)
{
	Series1<PolyRing> r(R, s.cap());
	for (const auto &[d, c] : s.terms())
		r.set(d, R.constant(c));
	return r;
}

Logarithm<PolyRing> lift(const Logarithm<RationalField> &l, const PolyRing &R)
{
	return Logarithm<PolyRing>(lift(l.series(), R));
}

std::string HeightResult::str() const
{
	return (kind == Kind::finite ? "finite(" : "at_least(") + std::to_string(h) + ")";
}

long ipow(long base, int e)
{
	long r = 1;
	for (int i = 0; i < e; ++i)
		r *= base;
	return r;
}

int floor_log(long n, long p)
{
	if (n < 1)
		throw std::invalid_argument("floor_log of a non-positive number");
	int h = 0;
	for (long q = p; q <= n; q *= p)
		++h;
	return h;
}

HeightResult height(const PSeries<ResidueField> &ps, int h_max)
{
	if (h_max < 1)
		throw std::invalid_argument("h_max must be >= 1");
	const long p = ps.p.value();
	const long top = ipow(p, h_max);
	if (ps.cap() < top)
		throw std::invalid_argument("height: cap " + std::to_string(ps.cap()) + " is below p^h_max = " +
		                            std::to_string(top));
	const Integer P(p);
	for (const auto &[d, c] : ps.series.terms())
	{
		if (d > top)
			break;
		if (Integer(c % P) == 0)
			continue;
		long q = 1;
		int h = 0;
		while (q < d)
			q *= p, ++h;
		if (q != d)
			throw FirstNonzeroNotPPower("first nonzero coefficient of [p](T) mod p sits in degree " +
			                            std::to_string(d) + ", which is not a power of " + std::to_string(p));
		return HeightResult::finite(h, d);
	}
	return HeightResult::at_least(h_max);
}

HeightResult height(const PSeries<ResidueField> &ps) { return height(ps, floor_log(ps.cap(), ps.p.value())); }

std::vector<TruncPoly> hazewinkel_coefficients(const std::vector<TruncPoly> &v, const PrimeP &p, int cap,
                                               const PolyRing &R)
{
	const long P = p.value();
	const Rational inv_p = make_rational(1, P);
	std::vector<TruncPoly> m{R.one()};
	for (int n = 1; ipow(P, n) <= cap; ++n)
	{
		TruncPoly acc = R.zero();
		for (int i = 0; i < n; ++i)
		{
			std::size_t j = static_cast<std::size_t>(n - i); // v_j, 1-based
			if (j > v.size())
				continue;
			acc += m[static_cast<std::size_t>(i)] * v[j - 1].pow(static_cast<unsigned long>(ipow(P, i)));
		}
		m.push_back(acc * inv_p);
	}
	return m;
}

Logarithm<PolyRing> hazewinkel_log(const std::vector<TruncPoly> &v, const PrimeP &p, int cap, const PolyRing &R)
{
	for (const auto &x : v)
		if (!(PolyRing{x.variables(), x.cap()} == R))
			throw std::invalid_argument("hazewinkel_log: v-element not in " + R.describe());
	auto m = hazewinkel_coefficients(v, p, cap, R);
	Series1<PolyRing> s(R, cap);
	for (std::size_t n = 0; n < m.size(); ++n)
		s.set(static_cast<int>(ipow(p.value(), static_cast<int>(n))), m[n]);
	return Logarithm<PolyRing>(s);
}

std::string Weierstrass::str() const
{
	return "[" + a1.get_str() + "," + a2.get_str() + "," + a3.get_str() + "," + a4.get_str() + "," + a6.get_str() +
	       "]";
}

Integer discriminant(const Weierstrass &E)
{
	Integer b2 = E.a1 * E.a1 + 4 * E.a2;
	Integer b4 = 2 * E.a4 + E.a1 * E.a3;
	Integer b6 = E.a3 * E.a3 + 4 * E.a6;
	Integer b8 = E.a1 * E.a1 * E.a6 + 4 * E.a2 * E.a6 - E.a1 * E.a3 * E.a4 + E.a2 * E.a3 * E.a3 - E.a4 * E.a4;
	return -b2 * b2 * b8 - 8 * b4 * b4 * b4 - 27 * b6 * b6 + 9 * b2 * b4 * b6;
}

Logarithm<RationalField> elliptic_log(const Weierstrass &E, int log_cap)
{
	if (discriminant(E) == 0)
		throw std::invalid_argument("singular Weierstrass equation " + E.str());
	if (log_cap < 1)
		throw std::invalid_argument("elliptic_log: cap must be >= 1");
	using S = Series1<RationalField>;
	const RationalField Q;
	const int wcap = log_cap + 2;
	auto z = S::identity(Q, wcap);
	auto z2 = z * z;
	auto z3 = z2 * z;
	auto c = [&](const Integer &a) { return Rational(a); };

	// w = z^3 + a1 z w + a2 z^2 w + a3 w^2 + a4 z w^2 + a6 w^3, solved by Newton
	auto G = [&](const S &w) {
		auto w2 = w * w;
		return w - z3 - scale(z * w, c(E.a1)) - scale(z2 * w, c(E.a2)) - scale(w2, c(E.a3)) -
		       scale(z * w2, c(E.a4)) - scale(w2 * w, c(E.a6));
	};
	auto dG = [&](const S &w) {
		auto one = S::constant(Q, wcap, 1);
		return one - scale(z, c(E.a1)) - scale(z2, c(E.a2)) - scale(w, c(2 * E.a3)) - scale(z * w, c(2 * E.a4)) -
		       scale(w * w, c(3 * E.a6));
	};
	S w = z3;
	for (int iter = 0;; ++iter)
	{
		auto g = G(w);
		if (g.is_zero())
			break;
		w = w - g * inverse(dG(w));
		if (iter > 64)
			throw std::logic_error("elliptic expansion did not converge");
	}

	// W = w / z^3 = 1 + ...
	const int ocap = log_cap - 1;
	S W(Q, ocap);
	for (const auto &[d, x] : w.terms())
		W.set(d - 3, x);
	auto zW = S::identity(Q, ocap) * with_cap(derive(W), ocap);
	auto zv = S::identity(Q, ocap);
	auto num = scale(W, Rational(2)) + zW;
	auto den = scale(W, Rational(2)) - scale(zv * W, c(E.a1)) - scale(power(zv, 3) * W * W, c(E.a3));
	auto omega = num * inverse(den);
	return Logarithm<RationalField>(integrate(omega));
}

EllipticLaw elliptic_fgl(const Weierstrass &E, int law_cap, int log_cap)
{
	auto l = elliptic_log(E, std::max(law_cap, log_cap));
	auto F = fgl_from_log(l, law_cap, std::nullopt, "elliptic " + E.str());
	return {std::move(F), std::move(l)};
}

EllipticLaw elliptic_fgl(const Weierstrass &E, int cap) { return elliptic_fgl(E, cap, cap); }

long elliptic_trace(const Weierstrass &E, const PrimeP &prime)
{
	const long p = prime.value();
	const Integer P(p);
	if (Integer(discriminant(E) % P) == 0)
		throw std::invalid_argument("bad reduction of " + E.str() + " at p = " + std::to_string(p));
	auto m = [&](const Integer &a) {
		Integer r = a % P;
		if (r < 0)
			r += P;
		return r.get_si();
	};
	const long a1 = m(E.a1), a2 = m(E.a2), a3 = m(E.a3), a4 = m(E.a4), a6 = m(E.a6);
	long count = 1; // point at infinity
	for (long x = 0; x < p; ++x)
	{
		long rhs = (((x * x % p) * x + a2 * (x * x % p) + a4 * x + a6) % p + p) % p;
		for (long y = 0; y < p; ++y)
		{
			long lhs = (y * y + a1 * x % p * y + a3 * y) % p;
			if (lhs == rhs)
				++count;
		}
	}
	return p + 1 - count;
}

Reduction elliptic_ss_oracle(const Weierstrass &E, const PrimeP &p)
{
	return elliptic_trace(E, p) % p.value() == 0 ? Reduction::supersingular : Reduction::ordinary;
}

} // namespace fgk3
