#include "fgk3/ideal.hpp"

#include <algorithm>
#include <map>

namespace fgk3 {

LocalIdeal::LocalIdeal(PrimeP p, std::vector<std::string> variables, int cap, std::vector<TruncPoly> generators)
    : p_(p), vars_(std::move(variables)), cap_(cap), generators_(std::move(generators)),
      monomials_(monomials_up_to(vars_.size(), cap_))
{
	for (std::size_t i = 0; i < monomials_.size(); ++i)
		column_of_.emplace(monomials_[i], i);
	std::vector<std::vector<Rational>> pool;
	for (const auto &g : generators_)
	{
		if (g.variables() != vars_ || g.cap() != cap_)
			throw std::invalid_argument("ideal generator " + g.str() + " lives in a different ring");
		if (g.valuation(p_) < Valuation(0))
			throw NonIntegral(g.constant_term(), p_, -1, "ideal generator " + g.str());
		for (const auto &m : monomials_)
		{
			auto prod = TruncPoly::monomial(vars_, cap_, m) * g;
			if (!prod.is_zero())
				pool.push_back(to_vector(prod));
		}
	}

	for (std::size_t col = 0; col < monomials_.size() && !pool.empty(); ++col)
	{
		std::size_t best = pool.size();
		Valuation best_v = Valuation::infinity();
		for (std::size_t r = 0; r < pool.size(); ++r)
		{
			if (pool[r][col] == 0)
				continue;
			auto v = val_p(pool[r][col], p_);
			if (best == pool.size() || v < best_v)
				best = r, best_v = v;
		}
		if (best == pool.size())
			continue;
		std::vector<Rational> pivot = std::move(pool[best]);
		pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(best));
		std::vector<std::vector<Rational>> next;
		next.reserve(pool.size());
		for (auto &row : pool)
		{
			if (row[col] != 0)
			{
				Rational q = row[col] / pivot[col];
				for (std::size_t j = col; j < row.size(); ++j)
					if (pivot[j] != 0)
						row[j] -= q * pivot[j];
			}
			if (std::any_of(row.begin(), row.end(), [](const Rational &x) { return x != 0; }))
				next.push_back(std::move(row));
		}
		pool = std::move(next);
		echelon_.push_back({col, std::move(pivot)});
	}
}

std::vector<Rational> LocalIdeal::to_vector(const TruncPoly &f) const
{
	std::vector<Rational> out(monomials_.size());
	for (const auto &[e, c] : f.terms())
		out[column_of_.at(e)] = c;
	return out;
}

bool LocalIdeal::contains(const TruncPoly &f) const
{
	if (f.variables() != vars_ || f.cap() != cap_)
		throw std::invalid_argument("element " + f.str() + " lives in a different ring");
	if (f.valuation(p_) < Valuation(0))
		return false; // not even an element of the local ring
	auto x = to_vector(f);
	std::size_t k = 0;
	for (std::size_t col = 0; col < x.size(); ++col)
	{
		while (k < echelon_.size() && echelon_[k].column < col)
			++k;
		if (x[col] == 0)
			continue;
		if (k == echelon_.size() || echelon_[k].column != col)
			return false;
		const auto &row = echelon_[k].row;
		Rational q = x[col] / row[col];
		if (val_p(q, p_) < Valuation(0))
			return false;
		for (std::size_t j = col; j < x.size(); ++j)
			if (row[j] != 0)
				x[j] -= q * row[j];
	}
	return true;
}

bool LocalIdeal::contains_all(const std::vector<TruncPoly> &fs) const
{
	return std::all_of(fs.begin(), fs.end(), [&](const TruncPoly &f) { return contains(f); });
}

bool LocalIdeal::is_whole_ring() const { return contains(TruncPoly(vars_, cap_, 1)); }

LocalIdeal LocalIdeal::plus(const std::vector<TruncPoly> &more) const
{
	auto gens = generators_;
	gens.insert(gens.end(), more.begin(), more.end());
	return LocalIdeal(p_, vars_, cap_, std::move(gens));
}

bool ideals_equal(const LocalIdeal &a, const LocalIdeal &b) { return a.contains(b) && b.contains(a); }

} // namespace fgk3
