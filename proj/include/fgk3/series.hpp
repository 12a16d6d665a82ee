#pragma once

// Truncated power series in one variable (Series1) and in several variables
// with a single total-degree cap (SeriesN; Series2 is the bivariate case).

#include "fgk3/rings.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>

namespace fgk3 {

template <CoefficientRing Ring>
class Series1
{
  public:
	using Elem = typename Ring::value_type;

	Series1(Ring ring, int cap) : ring_(std::move(ring)), cap_(cap)
	{
		if (cap < 0)
			throw std::invalid_argument("negative series cap");
	}

	/// The series T.
	static Series1 identity(Ring ring, int cap)
	{
		Series1 s(std::move(ring), cap);
		s.set(1, s.ring_.one());
		return s;
	}
	static Series1 constant(Ring ring, int cap, const Elem &c)
	{
		Series1 s(std::move(ring), cap);
		s.set(0, c);
		return s;
	}

	const Ring &ring() const { return ring_; }
	int cap() const { return cap_; }
	const std::map<int, Elem> &terms() const { return terms_; }

	Elem coefficient(int d) const
	{
		auto it = terms_.find(d);
		return it == terms_.end() ? ring_.zero() : it->second;
	}
	Elem operator[](int d) const { return coefficient(d); }

	/// Coefficients above the cap are silently dropped.
	void set(int d, const Elem &c)
	{
		if (d < 0)
			throw std::invalid_argument("negative series degree");
		if (d > cap_)
			return;
		if (ring_.is_zero(c))
			terms_.erase(d);
		else
			terms_.insert_or_assign(d, c);
	}
	void add_to(int d, const Elem &c)
	{
		if (d > cap_ || ring_.is_zero(c))
			return;
		auto it = terms_.find(d);
		if (it == terms_.end())
			terms_.emplace(d, c);
		else
		{
			it->second = ring_.add(it->second, c);
			if (ring_.is_zero(it->second))
				terms_.erase(it);
		}
	}

	bool is_zero() const { return terms_.empty(); }
	/// Lowest degree with a nonzero coefficient, -1 for the zero series.
	int order() const { return terms_.empty() ? -1 : terms_.begin()->first; }
	int degree() const { return terms_.empty() ? -1 : terms_.rbegin()->first; }

	Series1 constant_like(const Elem &c) const { return constant(ring_, cap_, c); }

	bool operator==(const Series1 &o) const { return ring_ == o.ring_ && cap_ == o.cap_ && terms_ == o.terms_; }

	std::string str(const std::string &var = "T") const
	{
		if (terms_.empty())
			return "0";
		std::ostringstream out;
		bool first = true;
		for (const auto &[d, c] : terms_)
		{
			if (!first)
				out << " + ";
			first = false;
			std::string cs = ring_.str(c);
			bool wrap = cs.find_first_of("+ ") != std::string::npos;
			if (d == 0)
				out << cs;
			else
			{
				if (cs != "1")
					out << (wrap ? "(" + cs + ")" : cs) << "*";
				out << var;
				if (d > 1)
					out << "^" << d;
			}
		}
		return out.str();
	}

  private:
	Ring ring_;
	int cap_;
	std::map<int, Elem> terms_;
};

namespace detail {

template <class S>
void check_same(const S &a, const S &b, const char *op)
{
	if (!(a.ring() == b.ring()))
		throw std::invalid_argument(std::string(op) + ": coefficient rings differ (" + a.ring().describe() + " vs " +
		                            b.ring().describe() + ")");
	if (a.cap() != b.cap())
		throw std::invalid_argument(std::string(op) + ": caps differ (" + std::to_string(a.cap()) + " vs " +
		                            std::to_string(b.cap()) + ")");
}

} // namespace detail

template <CoefficientRing Ring>
Series1<Ring> operator+(const Series1<Ring> &a, const Series1<Ring> &b)
{
	detail::check_same(a, b, "add");
	Series1<Ring> r = a;
	for (const auto &[d, c] : b.terms())
		r.add_to(d, c);
	return r;
}

template <CoefficientRing Ring>
Series1<Ring> operator-(const Series1<Ring> &a)
{
	Series1<Ring> r(a.ring(), a.cap());
	for (const auto &[d, c] : a.terms())
		r.set(d, a.ring().neg(c));
	return r;
}

template <CoefficientRing Ring>
Series1<Ring> operator-(const Series1<Ring> &a, const Series1<Ring> &b)
{
	return a + (-b);
}

template <CoefficientRing Ring>
Series1<Ring> scale(const Series1<Ring> &a, const typename Ring::value_type &c)
{
	Series1<Ring> r(a.ring(), a.cap());
	for (const auto &[d, x] : a.terms())
		r.set(d, a.ring().mul(c, x));
	return r;
}

template <CoefficientRing Ring>
Series1<Ring> operator*(const Series1<Ring> &a, const Series1<Ring> &b)
{
	detail::check_same(a, b, "mul");
	const Ring &R = a.ring();
	Series1<Ring> r(R, a.cap());
	int cap = a.cap();
	for (const auto &[da, ca] : a.terms())
	{
		if (da > cap)
			break;
		for (const auto &[db, cb] : b.terms())
		{
			if (da + db > cap)
				break;
			r.add_to(da + db, R.mul(ca, cb));
		}
	}
	return r;
}

/// Re-truncates at a smaller (or equal) cap.
template <CoefficientRing Ring>
Series1<Ring> truncate(const Series1<Ring> &a, int cap)
{
	if (cap > a.cap())
		throw std::invalid_argument("truncate: cannot raise the cap");
	Series1<Ring> r(a.ring(), cap);
	for (const auto &[d, c] : a.terms())
	{
		if (d > cap)
			break;
		r.set(d, c);
	}
	return r;
}

/// Same coefficients, larger cap. The caller vouches the extra degrees are zero.
template <CoefficientRing Ring>
Series1<Ring> with_cap(const Series1<Ring> &a, int cap)
{
	Series1<Ring> r(a.ring(), cap);
	for (const auto &[d, c] : a.terms())
		r.set(d, c);
	return r;
}

template <CoefficientRing Ring>
Series1<Ring> power(const Series1<Ring> &a, unsigned long n)
{
	Series1<Ring> r = a.constant_like(a.ring().one());
	Series1<Ring> base = a;
	while (n > 0)
	{
		if (n & 1)
			r = r * base;
		n >>= 1;
		if (n > 0)
			base = base * base;
	}
	return r;
}

/// Multiplicative inverse; needs a unit constant term.
template <CoefficientRing Ring>
Series1<Ring> inverse(const Series1<Ring> &a)
{
	const Ring &R = a.ring();
	auto inv0 = R.inverse(a.coefficient(0));
	if (!inv0)
		throw DivisionFailure("series inverse: constant term " + R.str(a.coefficient(0)) + " is not a unit in " +
		                      R.describe());
	std::vector<typename Ring::value_type> b;
	b.reserve(static_cast<std::size_t>(a.cap()) + 1);
	b.push_back(*inv0);
	Series1<Ring> r(R, a.cap());
	r.set(0, *inv0);
	for (int n = 1; n <= a.cap(); ++n)
	{
		auto acc = R.zero();
		for (const auto &[k, ak] : a.terms())
		{
			if (k == 0)
				continue;
			if (k > n)
				break;
			if (!R.is_zero(b[static_cast<std::size_t>(n - k)]))
				acc = R.add(acc, R.mul(ak, b[static_cast<std::size_t>(n - k)]));
		}
		b.push_back(R.neg(R.mul(*inv0, acc)));
		r.set(n, b.back());
	}
	return r;
}

/// Termwise derivative. The result has cap one less than the input.
template <CoefficientRing Ring>
Series1<Ring> derive(const Series1<Ring> &a)
{
	Series1<Ring> r(a.ring(), std::max(0, a.cap() - 1));
	for (const auto &[d, c] : a.terms())
		if (d > 0)
			r.set(d - 1, a.ring().mul(a.ring().from_integer(d), c));
	return r;
}

/// Termwise antiderivative with zero constant term; the cap grows by one.
/// Throws DivisionFailure when a degree is not invertible in the ring.
template <CoefficientRing Ring>
Series1<Ring> integrate(const Series1<Ring> &a)
{
	Series1<Ring> r(a.ring(), a.cap() + 1);
	for (const auto &[d, c] : a.terms())
	{
		auto q = a.ring().divide(c, Integer(d + 1));
		if (!q)
			throw DivisionFailure("integrate: cannot divide " + a.ring().str(c) + " by " + std::to_string(d + 1) +
			                      " in " + a.ring().describe());
		r.set(d + 1, *q);
	}
	return r;
}

enum class CalculusMode { derive, integrate };

template <CoefficientRing Ring>
Series1<Ring> derive_integrate(const Series1<Ring> &a, CalculusMode mode)
{
	return mode == CalculusMode::derive ? derive(a) : integrate(a);
}

// ---------------------------------------------------------------------------
// Multivariate series, up to four variables, with a single total-degree cap.
// Monomials are packed 16 bits per variable.

using PackedMonomial = std::uint64_t;

inline int packed_exponent(PackedMonomial m, std::size_t var) { return static_cast<int>((m >> (16 * var)) & 0xffff); }
inline PackedMonomial pack_exponent(std::size_t var, int e) { return static_cast<PackedMonomial>(e) << (16 * var); }
inline int packed_degree(PackedMonomial m)
{
	return packed_exponent(m, 0) + packed_exponent(m, 1) + packed_exponent(m, 2) + packed_exponent(m, 3);
}

template <CoefficientRing Ring>
class SeriesN
{
  public:
	using Elem = typename Ring::value_type;

	SeriesN(Ring ring, std::size_t nvars, int cap) : ring_(std::move(ring)), nvars_(nvars), cap_(cap)
	{
		if (nvars == 0 || nvars > 4)
			throw std::invalid_argument("SeriesN supports 1..4 variables");
		if (cap < 0 || cap > 0xfff)
			throw std::invalid_argument("series cap out of range");
	}

	static SeriesN variable(Ring ring, std::size_t nvars, int cap, std::size_t var)
	{
		SeriesN s(std::move(ring), nvars, cap);
		s.add_to(pack_exponent(var, 1), s.ring_.one());
		return s;
	}

	const Ring &ring() const { return ring_; }
	std::size_t nvars() const { return nvars_; }
	int cap() const { return cap_; }
	const std::map<PackedMonomial, Elem> &terms() const { return terms_; }

	Elem coefficient(std::array<int, 4> e) const
	{
		PackedMonomial m = 0;
		for (std::size_t i = 0; i < 4; ++i)
			m |= pack_exponent(i, e[i]);
		auto it = terms_.find(m);
		return it == terms_.end() ? ring_.zero() : it->second;
	}
	Elem coefficient(int i, int j) const { return coefficient({i, j, 0, 0}); }

	void add_to(PackedMonomial m, const Elem &c)
	{
		if (packed_degree(m) > cap_ || ring_.is_zero(c))
			return;
		auto it = terms_.find(m);
		if (it == terms_.end())
			terms_.emplace(m, c);
		else
		{
			it->second = ring_.add(it->second, c);
			if (ring_.is_zero(it->second))
				terms_.erase(it);
		}
	}
	void add_term(std::array<int, 4> e, const Elem &c)
	{
		PackedMonomial m = 0;
		for (std::size_t i = 0; i < 4; ++i)
		{
			if (e[i] < 0 || (i >= nvars_ && e[i] != 0))
				throw std::invalid_argument("bad exponent vector");
			m |= pack_exponent(i, e[i]);
		}
		add_to(m, c);
	}

	bool is_zero() const { return terms_.empty(); }
	SeriesN constant_like(const Elem &c) const
	{
		SeriesN s(ring_, nvars_, cap_);
		s.add_to(0, c);
		return s;
	}
	Elem constant_term() const
	{
		auto it = terms_.find(0);
		return it == terms_.end() ? ring_.zero() : it->second;
	}

	bool operator==(const SeriesN &o) const
	{
		return ring_ == o.ring_ && nvars_ == o.nvars_ && cap_ == o.cap_ && terms_ == o.terms_;
	}

	std::string str(const std::array<const char *, 4> &names = {"X", "Y", "Z", "W"}) const
	{
		if (terms_.empty())
			return "0";
		std::vector<std::pair<PackedMonomial, Elem>> sorted(terms_.begin(), terms_.end());
		std::stable_sort(sorted.begin(), sorted.end(), [](const auto &x, const auto &y) {
			int dx = packed_degree(x.first), dy = packed_degree(y.first);
			return dx != dy ? dx < dy : x.first > y.first;
		});
		std::ostringstream out;
		bool first = true;
		for (const auto &[m, c] : sorted)
		{
			if (!first)
				out << " + ";
			first = false;
			std::string cs = ring_.str(c);
			bool wrap = cs.find_first_of("+ ") != std::string::npos;
			bool need_star = false;
			if (m == 0 || cs != "1")
			{
				out << (wrap ? "(" + cs + ")" : cs);
				need_star = true;
			}
			for (std::size_t v = 0; v < nvars_; ++v)
			{
				int e = packed_exponent(m, v);
				if (e == 0)
					continue;
				if (need_star)
					out << "*";
				out << names[v];
				if (e > 1)
					out << "^" << e;
				need_star = true;
			}
		}
		return out.str();
	}

  private:
	Ring ring_;
	std::size_t nvars_;
	int cap_;
	std::map<PackedMonomial, Elem> terms_;
};

template <CoefficientRing Ring>
using Series2 = SeriesN<Ring>;

template <CoefficientRing Ring>
SeriesN<Ring> operator+(const SeriesN<Ring> &a, const SeriesN<Ring> &b)
{
	detail::check_same(a, b, "add");
	if (a.nvars() != b.nvars())
		throw std::invalid_argument("add: variable counts differ");
	SeriesN<Ring> r = a;
	for (const auto &[m, c] : b.terms())
		r.add_to(m, c);
	return r;
}

template <CoefficientRing Ring>
SeriesN<Ring> operator-(const SeriesN<Ring> &a, const SeriesN<Ring> &b)
{
	detail::check_same(a, b, "sub");
	SeriesN<Ring> r = a;
	for (const auto &[m, c] : b.terms())
		r.add_to(m, a.ring().neg(c));
	return r;
}

template <CoefficientRing Ring>
SeriesN<Ring> scale(const SeriesN<Ring> &a, const typename Ring::value_type &c)
{
	SeriesN<Ring> r(a.ring(), a.nvars(), a.cap());
	for (const auto &[m, x] : a.terms())
		r.add_to(m, a.ring().mul(c, x));
	return r;
}

template <CoefficientRing Ring>
SeriesN<Ring> operator*(const SeriesN<Ring> &a, const SeriesN<Ring> &b)
{
	detail::check_same(a, b, "mul");
	if (a.nvars() != b.nvars())
		throw std::invalid_argument("mul: variable counts differ");
	const Ring &R = a.ring();
	SeriesN<Ring> r(R, a.nvars(), a.cap());
	// bucket b by degree so truncation prunes whole blocks
	std::vector<std::vector<std::pair<PackedMonomial, const typename Ring::value_type *>>> by_degree(
	    static_cast<std::size_t>(a.cap()) + 1);
	for (const auto &[m, c] : b.terms())
		by_degree[static_cast<std::size_t>(packed_degree(m))].emplace_back(m, &c);
	for (const auto &[ma, ca] : a.terms())
	{
		int da = packed_degree(ma);
		for (int db = 0; da + db <= a.cap(); ++db)
			for (const auto &[mb, cb] : by_degree[static_cast<std::size_t>(db)])
				r.add_to(ma + mb, R.mul(ca, *cb));
	}
	return r;
}

template <CoefficientRing Ring>
SeriesN<Ring> truncate(const SeriesN<Ring> &a, int cap)
{
	if (cap > a.cap())
		throw std::invalid_argument("truncate: cannot raise the cap");
	SeriesN<Ring> r(a.ring(), a.nvars(), cap);
	for (const auto &[m, c] : a.terms())
		r.add_to(m, c);
	return r;
}

namespace detail {

template <class Ring>
typename Ring::value_type constant_term_of(const Series1<Ring> &s)
{
	return s.coefficient(0);
}
template <class Ring>
typename Ring::value_type constant_term_of(const SeriesN<Ring> &s)
{
	return s.constant_term();
}
template <class Ring>
int cap_of(const Series1<Ring> &s)
{
	return s.cap();
}
template <class Ring>
int cap_of(const SeriesN<Ring> &s)
{
	return s.cap();
}
template <class Ring>
Series1<Ring> recap(const Series1<Ring> &s, int cap)
{
	return cap < s.cap() ? truncate(s, cap) : s;
}
template <class Ring>
SeriesN<Ring> recap(const SeriesN<Ring> &s, int cap)
{
	return cap < s.cap() ? truncate(s, cap) : s;
}

} // namespace detail

/// outer(inner), with `inner` a Series1 or SeriesN over the same ring with
/// zero constant term. The result is exact in every degree up to
/// min(outer cap, inner cap).
template <CoefficientRing Ring, class Inner>
Inner compose(const Series1<Ring> &outer, const Inner &inner_in)
{
	if (!(outer.ring() == inner_in.ring()))
		throw std::invalid_argument("compose: coefficient rings differ");
	const Ring &R = outer.ring();
	if (!R.is_zero(detail::constant_term_of(inner_in)))
		throw std::invalid_argument("compose: inner series has nonzero constant term " +
		                            R.str(detail::constant_term_of(inner_in)));
	int cap = std::min(outer.cap(), detail::cap_of(inner_in));
	Inner inner = detail::recap(inner_in, cap);
	Inner result = inner.constant_like(R.zero());
	if (outer.is_zero())
		return result;

	// walk the sparse outer in increasing degree, stepping the power of inner
	// by the gap between consecutive exponents
	std::map<int, Inner> gap_powers;
	auto gap_power = [&](int g) -> const Inner & {
		auto it = gap_powers.find(g);
		if (it != gap_powers.end())
			return it->second;
		Inner p = inner.constant_like(R.one());
		Inner base = inner;
		for (int n = g; n > 0; n >>= 1)
		{
			if (n & 1)
				p = p * base;
			if (n > 1)
				base = base * base;
		}
		return gap_powers.emplace(g, std::move(p)).first->second;
	};

	Inner pw = inner.constant_like(R.one());
	int at = 0;
	for (const auto &[d, c] : outer.terms())
	{
		if (d > cap)
			break;
		if (d > at)
		{
			pw = pw * gap_power(d - at);
			at = d;
		}
		if (pw.is_zero())
			break;
		result = result + scale(pw, c);
	}
	return result;
}

/// Compositional inverse of a = a1*T + ..., a1 a unit. Newton iteration
/// b <- b - (a(b) - T) / a'(b), exact up to the cap.
template <CoefficientRing Ring>
Series1<Ring> reversion(const Series1<Ring> &a)
{
	const Ring &R = a.ring();
	if (!R.is_zero(a.coefficient(0)))
		throw std::invalid_argument("reversion: nonzero constant term");
	auto inv1 = R.inverse(a.coefficient(1));
	if (!inv1)
		throw DivisionFailure("reversion: linear coefficient " + R.str(a.coefficient(1)) + " is not a unit in " +
		                      R.describe());
	const int cap = a.cap();
	const auto T = Series1<Ring>::identity(R, cap);
	Series1<Ring> b = scale(T, *inv1);
	Series1<Ring> da = with_cap(derive(a), cap);
	for (int correct = 2; ; correct *= 2)
	{
		Series1<Ring> err = compose(a, b) - T;
		if (err.is_zero())
			return b;
		b = b - err * inverse(compose(da, b));
		if (correct > 2 * cap + 4)
			throw std::logic_error("reversion did not converge");
	}
}

/// F(x, y) for a bivariate F and two series x, y of the same shape
/// (both Series1 or both SeriesN) with zero constant terms.
template <CoefficientRing Ring, class S>
S evaluate2(const SeriesN<Ring> &F, const S &x, const S &y)
{
	if (F.nvars() != 2)
		throw std::invalid_argument("evaluate2: expected a bivariate series");
	const Ring &R = F.ring();
	if (!R.is_zero(detail::constant_term_of(x)) || !R.is_zero(detail::constant_term_of(y)))
		throw std::invalid_argument("evaluate2: arguments need zero constant term");
	int cap = std::min({F.cap(), detail::cap_of(x), detail::cap_of(y)});
	S X = detail::recap(x, cap), Y = detail::recap(y, cap);

	// rows[i] = sum_j c_ij y^j, then Horner in x
	std::vector<S> ypow{Y.constant_like(R.one())};
	std::map<int, S> rows;
	for (const auto &[m, c] : F.terms())
	{
		int i = packed_exponent(m, 0), j = packed_exponent(m, 1);
		if (i + j > cap)
			continue;
		while (static_cast<int>(ypow.size()) <= j)
			ypow.push_back(ypow.back() * Y);
		auto it = rows.find(i);
		if (it == rows.end())
			it = rows.emplace(i, Y.constant_like(R.zero())).first;
		it->second = it->second + scale(ypow[static_cast<std::size_t>(j)], c);
	}
	S acc = X.constant_like(R.zero());
	if (rows.empty())
		return acc;
	int top = rows.rbegin()->first;
	for (int i = top; i >= 0; --i)
	{
		acc = acc * X;
		auto it = rows.find(i);
		if (it != rows.end())
			acc = acc + it->second;
	}
	return acc;
}

} // namespace fgk3
