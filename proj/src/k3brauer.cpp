#include "fgk3/k3brauer.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <sstream>
#include <unordered_map>

namespace fgk3 {

QuarticForm::QuarticForm(std::map<Exponent4, Integer> terms, std::string name) : name_(std::move(name))
{
	for (auto &[e, c] : terms)
	{
		if (std::any_of(e.begin(), e.end(), [](int x) { return x < 0; }) ||
		    std::accumulate(e.begin(), e.end(), 0) != 4)
			throw std::invalid_argument("quartic term exponents must be non-negative and sum to 4");
		if (c != 0)
			terms_.emplace(e, std::move(c));
	}
	if (terms_.empty())
		throw std::invalid_argument("quartic form is identically zero");
}

QuarticForm QuarticForm::fermat()
{
	return QuarticForm({{{4, 0, 0, 0}, 1}, {{0, 4, 0, 0}, 1}, {{0, 0, 4, 0}, 1}, {{0, 0, 0, 4}, 1}}, "fermat");
}

QuarticForm QuarticForm::parse(const std::string &text, std::string name)
{
	std::map<Exponent4, Integer> terms;
	std::istringstream in(text);
	std::string line;
	int lineno = 0;
	while (std::getline(in, line))
	{
		++lineno;
		if (auto hash = line.find('#'); hash != std::string::npos)
			line.resize(hash);
		std::istringstream ls(line);
		std::vector<std::string> tok;
		for (std::string t; ls >> t;)
			tok.push_back(t);
		if (tok.empty())
			continue;
		if (tok.size() != 5)
			throw std::invalid_argument("quartic line " + std::to_string(lineno) + ": expected `e0 e1 e2 e3 coeff`");
		Exponent4 e{};
		try
		{
			for (std::size_t i = 0; i < 4; ++i)
			{
				std::size_t used = 0;
				e[i] = std::stoi(tok[i], &used);
				if (used != tok[i].size())
					throw std::invalid_argument("trailing characters");
			}
			if (std::accumulate(e.begin(), e.end(), 0) != 4)
				throw std::invalid_argument("exponents do not sum to 4");
			terms[e] += Integer(tok[4]);
		}
		catch (const std::exception &err)
		{
			throw std::invalid_argument("quartic line " + std::to_string(lineno) + ": " + err.what());
		}
	}
	return QuarticForm(std::move(terms), std::move(name));
}

QuarticForm QuarticForm::load(const std::string &name_or_path)
{
	auto names = builtin_quartic_names();
	if (std::find(names.begin(), names.end(), name_or_path) != names.end())
		return builtin_quartic(name_or_path);
	std::ifstream in(name_or_path);
	if (!in)
		throw std::invalid_argument("unknown quartic '" + name_or_path + "' (not a built-in name or readable file)");
	std::stringstream buf;
	buf << in.rdbuf();
	std::string stem = name_or_path;
	if (auto slash = stem.find_last_of('/'); slash != std::string::npos)
		stem = stem.substr(slash + 1);
	if (auto dot = stem.find_last_of('.'); dot != std::string::npos && dot > 0)
		stem.resize(dot);
	return parse(buf.str(), stem);
}

bool QuarticForm::is_diagonal() const
{
	return std::all_of(terms_.begin(), terms_.end(), [](const auto &t) {
		return std::count(t.first.begin(), t.first.end(), 4) == 1;
	});
}

std::array<Integer, 4> QuarticForm::diagonal_coefficients() const
{
	std::array<Integer, 4> out{0, 0, 0, 0};
	for (std::size_t i = 0; i < 4; ++i)
	{
		Exponent4 e{};
		e[i] = 4;
		if (auto it = terms_.find(e); it != terms_.end())
			out[i] = it->second;
	}
	return out;
}

namespace {

long mod(const Integer &x, long p)
{
	Integer r = x % p;
	if (r < 0)
		r += p;
	return r.get_si();
}

long pow_mod(long b, int e, long p)
{
	long r = 1;
	for (int i = 0; i < e; ++i)
		r = r * b % p;
	return r;
}

} // namespace

long QuarticForm::evaluate_mod(const std::array<long, 4> &x, long p) const
{
	long acc = 0;
	for (const auto &[e, c] : terms_)
	{
		long t = mod(c, p);
		for (std::size_t i = 0; i < 4; ++i)
			t = t * pow_mod(x[i], e[i], p) % p;
		acc = (acc + t) % p;
	}
	return acc;
}

long QuarticForm::partial_mod(std::size_t var, const std::array<long, 4> &x, long p) const
{
	long acc = 0;
	for (const auto &[e, c] : terms_)
	{
		if (e[var] == 0)
			continue;
		long t = mod(c * e[var], p);
		for (std::size_t i = 0; i < 4; ++i)
			t = t * pow_mod(x[i], i == var ? e[i] - 1 : e[i], p) % p;
		acc = (acc + t) % p;
	}
	return acc;
}

std::string QuarticForm::str() const
{
	std::ostringstream out;
	bool first = true;
	for (auto it = terms_.rbegin(); it != terms_.rend(); ++it)
	{
		const auto &[e, c] = *it;
		Integer a = abs(c);
		out << (first ? (c < 0 ? "-" : "") : (c < 0 ? " - " : " + "));
		first = false;
		bool star = false;
		if (a != 1)
			out << a.get_str(), star = true;
		for (std::size_t i = 0; i < 4; ++i)
		{
			if (e[i] == 0)
				continue;
			out << (star ? "*" : "") << "T" << i;
			if (e[i] > 1)
				out << "^" << e[i];
			star = true;
		}
	}
	return out.str();
}

std::string QuarticForm::to_text() const
{
	std::ostringstream out;
	for (const auto &[e, c] : terms_)
		out << e[0] << ' ' << e[1] << ' ' << e[2] << ' ' << e[3] << ' ' << c.get_str() << '\n';
	return out.str();
}

std::vector<std::string> builtin_quartic_names()
{
	return {"fermat", "diag-1112", "diag-1123", "dwork-1", "mixed-1"};
}

QuarticForm builtin_quartic(const std::string &name)
{
	auto diag = [&](long a, long b, long c, long d) {
		return QuarticForm({{{4, 0, 0, 0}, a}, {{0, 4, 0, 0}, b}, {{0, 0, 4, 0}, c}, {{0, 0, 0, 4}, d}}, name);
	};
	if (name == "fermat")
		return QuarticForm::fermat();
	if (name == "diag-1112")
		return diag(1, 1, 1, 2);
	if (name == "diag-1123")
		return diag(1, 1, 2, 3);
	if (name == "dwork-1")
		return QuarticForm(
		    {{{4, 0, 0, 0}, 1}, {{0, 4, 0, 0}, 1}, {{0, 0, 4, 0}, 1}, {{0, 0, 0, 4}, 1}, {{1, 1, 1, 1}, 1}}, name);
	if (name == "mixed-1")
		return QuarticForm({{{4, 0, 0, 0}, 1},
		                    {{0, 4, 0, 0}, 1},
		                    {{0, 0, 4, 0}, 1},
		                    {{0, 0, 0, 4}, 1},
		                    {{2, 2, 0, 0}, 1},
		                    {{0, 0, 2, 2}, 1},
		                    {{1, 1, 1, 1}, 2}},
		                   name);
	throw std::invalid_argument("no built-in quartic named '" + name + "'");
}

// ---------------------------------------------------------------------------
// Stienstra coefficients

namespace {

using Packed = std::uint64_t;

Packed pack(const Exponent4 &e)
{
	return static_cast<Packed>(e[0]) | static_cast<Packed>(e[1]) << 16 | static_cast<Packed>(e[2]) << 32 |
	       static_cast<Packed>(e[3]) << 48;
}

bool within_box(Packed m, int bound)
{
	for (int i = 0; i < 4; ++i)
		if (static_cast<int>((m >> (16 * i)) & 0xffff) > bound)
			return false;
	return true;
}

/// beta_m = coefficient of x^{(m-1,...,m-1)} in f^{m-1}, by repeated sparse
/// multiplication. Only monomials inside the box [0, cap-1]^4 can still reach
/// a diagonal target, so everything else is dropped.
std::vector<Integer> betas_by_expansion(const QuarticForm &f, int cap)
{
	std::vector<Integer> beta(static_cast<std::size_t>(cap) + 1, 0);
	if (cap >= 1)
		beta[1] = 1;
	const int bound = cap - 1;
	std::vector<std::pair<Packed, Integer>> fterms;
	for (const auto &[e, c] : f.terms())
		fterms.emplace_back(pack(e), c);

	std::unordered_map<Packed, Integer> power{{0, Integer(1)}};
	for (int k = 1; k <= bound; ++k)
	{
		std::unordered_map<Packed, Integer> next;
		next.reserve(power.size() * 2);
		for (const auto &[m, c] : power)
			for (const auto &[fm, fc] : fterms)
			{
				Packed s = m + fm;
				if (!within_box(s, bound))
					continue;
				auto [it, inserted] = next.try_emplace(s, c * fc);
				if (!inserted)
					it->second += c * fc;
			}
		std::erase_if(next, [](const auto &kv) { return kv.second == 0; });
		power = std::move(next);
		auto it = power.find(pack({k, k, k, k}));
		if (it != power.end())
			beta[static_cast<std::size_t>(k) + 1] = it->second;
	}
	return beta;
}

/// For a diagonal quartic sum c_i T_i^4 only m = 4n + 1 survives, with
/// beta = (4n)!/(n!)^4 * prod c_i^n.
std::vector<Integer> betas_diagonal(const QuarticForm &f, int cap)
{
	std::vector<Integer> beta(static_cast<std::size_t>(cap) + 1, 0);
	auto c = f.diagonal_coefficients();
	Integer prod = c[0] * c[1] * c[2] * c[3];
	Integer prod_pow = 1;
	for (int n = 0; 4 * n + 1 <= cap; ++n)
	{
		long parts[4] = {n, n, n, n};
		beta[static_cast<std::size_t>(4 * n + 1)] = multinomial(4L * n, parts) * prod_pow;
		prod_pow *= prod;
	}
	return beta;
}

} // namespace

std::vector<Integer> stienstra_betas(const QuarticForm &f, int cap, StienstraMethod method)
{
	if (cap < 1)
		throw std::invalid_argument("stienstra: cap must be >= 1");
	if (method == StienstraMethod::automatic && f.is_diagonal())
		return betas_diagonal(f, cap);
	return betas_by_expansion(f, cap);
}

namespace {

Logarithm<RationalField> log_from_betas(const std::vector<Integer> &beta, int cap)
{
	Series1<RationalField> s(RationalField{}, cap);
	for (int m = 1; m <= cap; ++m)
		if (beta[static_cast<std::size_t>(m)] != 0)
			s.set(m, make_rational(beta[static_cast<std::size_t>(m)], m));
	return Logarithm<RationalField>(s);
}

} // namespace

BrauerLog stienstra_log(const QuarticForm &f, int cap, StienstraMethod method)
{
	auto beta = stienstra_betas(f, cap, method);
	return {log_from_betas(beta, cap), f, std::move(beta)};
}

Integer stienstra_beta(const QuarticForm &f, int m, StienstraMethod method)
{
	if (m < 1)
		throw std::invalid_argument("stienstra_beta: m must be >= 1");
	return stienstra_betas(f, m, method)[static_cast<std::size_t>(m)];
}

BrauerLog fermat_log(int cap)
{
	if (cap < 1)
		throw std::invalid_argument("fermat_log: cap must be >= 1");
	std::vector<Integer> beta(static_cast<std::size_t>(cap) + 1, 0);
	for (int n = 0; 4 * n + 1 <= cap; ++n)
		beta[static_cast<std::size_t>(4 * n + 1)] = factorial(4L * n) / (factorial(n) * factorial(n) * factorial(n) *
		                                                                  factorial(n));
	return {log_from_betas(beta, cap), QuarticForm::fermat(), std::move(beta)};
}

int brauer_law_check_cap(const PrimeP &p, int cap) { return std::min<int>(cap, static_cast<int>(p.value()) + 1); }

HeightResult brauer_height_at_cap(const QuarticForm &f, const PrimeP &p, int cap)
{
	if (cap < p.value())
		throw std::invalid_argument("cap " + std::to_string(cap) + " is below p = " + std::to_string(p.value()) +
		                            ": not even height 1 is decidable");
	if (std::all_of(f.terms().begin(), f.terms().end(),
	                [&](const auto &t) { return Integer(t.second % p.integer()) == 0; }))
		throw std::invalid_argument("every coefficient of the quartic is divisible by p = " +
		                            std::to_string(p.value()));
	auto bl = stienstra_log(f, cap);
	fgl_from_log(bl.log, brauer_law_check_cap(p, cap), p, "formal Brauer group law");
	auto ps = p_series(bl.log, p, cap);
	return height(reduce(ps), floor_log(cap, p.value()));
}

HeightResult brauer_height(const QuarticForm &f, const PrimeP &p, int h_max)
{
	if (h_max < 1)
		throw std::invalid_argument("h_max must be >= 1");
	return brauer_height_at_cap(f, p, static_cast<int>(ipow(p.value(), h_max)) + 1);
}

bool ordinarity_criterion(const QuarticForm &f, const PrimeP &p)
{
	Integer beta = stienstra_beta(f, static_cast<int>(p.value()));
	return Integer(beta % p.integer()) != 0;
}

bool smooth_check_fp(const QuarticForm &f, const PrimeP &prime)
{
	const long p = prime.value();
	if (p > kSmoothCheckMaxPrime)
		throw std::invalid_argument("smooth_check_fp: p = " + std::to_string(p) +
		                            " exceeds the point enumeration budget (p <= 13)");
	// projective points: first nonzero coordinate normalised to 1
	for (std::size_t lead = 0; lead < 4; ++lead)
	{
		std::size_t free = 3 - lead;
		long total = ipow(p, static_cast<int>(free));
		for (long code = 0; code < total; ++code)
		{
			std::array<long, 4> x{0, 0, 0, 0};
			x[lead] = 1;
			long c = code;
			for (std::size_t i = lead + 1; i < 4; ++i, c /= p)
				x[i] = c % p;
			if (f.evaluate_mod(x, p) != 0)
				continue;
			bool singular = true;
			for (std::size_t v = 0; v < 4 && singular; ++v)
				singular = f.partial_mod(v, x, p) == 0;
			if (singular)
				return false;
		}
	}
	return true;
}

} // namespace fgk3
