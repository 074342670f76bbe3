#pragma once

#include "moddiag/error.hpp"
#include "moddiag/morphism.hpp"
#include "moddiag/rational.hpp"
#include "moddiag/tensor.hpp"

#include <map>
#include <optional>
#include <vector>

namespace moddiag {

/// Formal rational combination of diagonal symbols Δ^(J) on Xⁿ, J ⊆ {1..n}
/// stored as bitmasks (the empty set is the point-tuple symbol). The symbols
/// are treated as linearly independent, so formal vanishing is sufficient but
/// not necessary for vanishing in a realization.
class FormalDiagonalSum
{
  public:
	explicit FormalDiagonalSum(int n) : n_(n)
	{
		if (n < 0 || n > 30)
			throw ParameterError("formal diagonal sums support 0 <= n <= 30");
	}

	int power() const { return n_; }
	const std::map<unsigned, Rational> &terms() const { return terms_; }
	bool is_zero() const { return terms_.empty(); }

	void add(unsigned subset, const Rational &c)
	{
		if (subset >= (1u << n_))
			throw ParameterError("subset outside {1..n}");
		if (c == 0)
			return;
		auto [it, inserted] = terms_.try_emplace(subset, c);
		if (!inserted)
		{
			it->second += c;
			if (it->second == 0)
				terms_.erase(it);
		}
	}

	friend bool operator==(const FormalDiagonalSum &a, const FormalDiagonalSum &b)
	{
		return a.n_ == b.n_ && a.terms_ == b.terms_;
	}

  private:
	int n_;
	std::map<unsigned, Rational> terms_;
};

/// The inclusion–exclusion expansion of Γⁿ: coefficient (−1)^{n−|J|} on every
/// nonempty J.
inline FormalDiagonalSum formal_gamma(int n)
{
	if (n < 1)
		throw ParameterError("formal gamma needs n >= 1");
	FormalDiagonalSum s(n);
	for (unsigned mask = 1; mask < (1u << n); ++mask)
	{
		int size = __builtin_popcount(mask);
		s.add(mask, Rational((n - size) % 2 ? -1 : 1));
	}
	return s;
}

/// Image of a formal sum under the projection dropping one coordinate
/// (0-based). A symbol not using the dropped slot is relabeled; a symbol
/// using it among others contracts; a singleton at the dropped slot
/// collapses — to zero for positive-dimensional models, to the point symbol
/// for d = 0.
inline FormalDiagonalSum formal_projection_pushforward(const FormalDiagonalSum &s,
                                                       int drop_index, bool d_positive)
{
	int n = s.power();
	if (drop_index < 0 || drop_index >= n)
		throw ParameterError("drop index out of range");
	FormalDiagonalSum out(n - 1);
	unsigned bit = 1u << drop_index;
	unsigned low = bit - 1;
	for (const auto &[mask, c] : s.terms())
	{
		unsigned removed = mask & ~bit;
		if (mask == bit && d_positive)
			continue; // dimension collapse
		unsigned relabeled = (removed & low) | ((removed & ~low & ~bit) >> 1);
		out.add(relabeled, c);
	}
	return out;
}

/// Image under δ⁽ⁿ⁾: symbols not involving the last slot are unchanged;
/// symbols involving it extend by the new slot (Ĵ = J ∪ {n+1}).
inline FormalDiagonalSum formal_delta_pushforward(const FormalDiagonalSum &s)
{
	int n = s.power();
	if (n < 1)
		throw ParameterError("delta pushforward needs n >= 1");
	FormalDiagonalSum out(n + 1);
	unsigned last = 1u << (n - 1);
	for (const auto &[mask, c] : s.terms())
		out.add((mask & last) ? (mask | (last << 1)) : mask, c);
	return out;
}

/// min over the support of n−|J|: the formal filtration level. Bottom
/// (nullopt) for the zero sum.
inline std::optional<int> formal_level(const FormalDiagonalSum &s)
{
	if (s.is_zero())
		return std::nullopt;
	int best = s.power();
	for (const auto &[mask, c] : s.terms())
		best = std::min(best, s.power() - __builtin_popcount(mask));
	return best;
}

/// Evaluation in a model: Δ^(J) ↦ (φ_J∘Δ)_*[X]; the empty symbol is the
/// point tuple.
inline TensorClass realize(const FormalDiagonalSum &s, const ModelPtr &model)
{
	int n = s.power();
	TensorClass out(model, n);
	TensorClass unit1 = TensorClass::fundamental(model, 1);
	for (const auto &[mask, c] : s.terms())
	{
		if (mask == 0)
		{
			out.add(TensorClass::point_tuple(model, n), c);
			continue;
		}
		std::vector<int> J;
		for (int j = 0; j < n; ++j)
			if (mask & (1u << j))
				J.push_back(j);
		out.add(PowerMorphism::subset_diagonal(model, n, J).pushforward(unit1), c);
	}
	return out;
}

/// Closed form for the existence of a weight tuple in {1..2g}ⁿ of total
/// weight 2g: possible exactly when n ≤ 2g.
inline bool weight_support_nonempty(int n, int g)
{
	if (g < 1 || n < 1)
		throw ParameterError("weight support needs g >= 1 and n >= 1");
	return n <= 2 * g;
}

/// Exhaustive search with partial-sum pruning, the oracle for the closed form.
inline bool weight_support_by_enumeration(int n, int g)
{
	if (g < 1 || n < 1)
		throw ParameterError("weight support needs g >= 1 and n >= 1");
	int target = 2 * g;
	// entries in 1..2g summing to target; prune on remaining bounds
	std::vector<int> entry(static_cast<std::size_t>(n), 0);
	auto rec = [&](auto &&self, int pos, int sum) -> bool {
		if (pos == n)
			return sum == target;
		int rest = n - pos - 1;
		for (int v = 1; v <= target; ++v)
		{
			int after = target - sum - v;
			if (after < rest || after > rest * target)
				continue;
			entry[static_cast<std::size_t>(pos)] = v;
			if (self(self, pos + 1, sum + v))
				return true;
		}
		return false;
	};
	return rec(rec, 0, 0);
}

/// Enumerates sequences (m₀..m_{2d}) with Σm_j = d+e, m₀ = m_{2d} = 0,
/// m_{2d−1} ≤ 2e and Σ j·m_j = 2d(d+e−1), and returns the unique solution.
inline std::vector<int> unique_extremal_sequence(int d, int e)
{
	if (d < 1 || e < 0 || e > d)
		throw ParameterError("extremal sequence needs d >= 1 and 0 <= e <= d");
	int len = 2 * d + 1;
	int total = d + e;
	int degree = 2 * d * (d + e - 1);
	std::vector<std::vector<int>> found;
	std::vector<int> m(static_cast<std::size_t>(len), 0);
	auto rec = [&](auto &&self, int j, int sum, int deg) -> void {
		if (j == len)
		{
			if (sum == total && deg == degree)
				found.push_back(m);
			return;
		}
		int max_here = total - sum;
		if (j == 0 || j == len - 1)
			max_here = 0;
		if (j == len - 2)
			max_here = std::min(max_here, 2 * e);
		for (int v = 0; v <= max_here; ++v)
		{
			if (deg + j * v > degree)
				break;
			m[static_cast<std::size_t>(j)] = v;
			self(self, j + 1, sum + v, deg + j * v);
			m[static_cast<std::size_t>(j)] = 0;
		}
	};
	rec(rec, 0, 0, 0);
	if (found.size() != 1)
		throw Error("extremal sequence is not unique: found " +
		            std::to_string(found.size()) + " solutions for d=" + std::to_string(d) +
		            ", e=" + std::to_string(e));
	return found[0];
}

/// Stirling numbers of the second kind, S(i,n) = n·S(i−1,n) + S(i−1,n−1).
inline Integer stirling(int i, int n)
{
	if (i < 0 || n < 0)
		throw ParameterError("stirling needs nonnegative arguments");
	if (n > i)
		return 0;
	std::vector<Integer> row(static_cast<std::size_t>(n) + 1, Integer(0));
	row[0] = 1; // S(0,0)
	for (int ii = 1; ii <= i; ++ii)
	{
		for (int nn = std::min(ii, n); nn >= 1; --nn)
			row[static_cast<std::size_t>(nn)] =
			    Integer(nn) * row[static_cast<std::size_t>(nn)] +
			    row[static_cast<std::size_t>(nn) - 1];
		row[0] = 0; // S(ii, 0) = 0 from here on
	}
	return row[static_cast<std::size_t>(n)];
}

/// Brute-force partition count via restricted growth strings, the oracle for
/// the recurrence.
inline Integer stirling_by_enumeration(int i, int n)
{
	if (i < 0 || n < 0)
		throw ParameterError("stirling needs nonnegative arguments");
	if (i == 0)
		return n == 0 ? 1 : 0;
	if (i > 14)
		throw ResourceError("partition enumeration capped at 14 elements");
	Integer count = 0;
	std::vector<int> block(static_cast<std::size_t>(i), 0);
	auto rec = [&](auto &&self, int pos, int used) -> void {
		if (pos == i)
		{
			if (used == n)
				++count;
			return;
		}
		for (int b = 0; b <= used && b < n; ++b)
		{
			block[static_cast<std::size_t>(pos)] = b;
			self(self, pos + 1, std::max(used, b + 1));
		}
	};
	rec(rec, 0, 0);
	return count;
}

struct StirlingVector {
	int n = 0;
	int g = 0;
	std::vector<Rational> coeffs; // n!·S(i,n) for i = 2..g+1

	bool all_zero() const
	{
		for (const auto &c : coeffs)
			if (c != 0)
				return false;
		return true;
	}
};

/// The curve expansion coefficients n!·S(i,n) for i = 2..g+1; the zero vector
/// exactly when n > g+1.
inline StirlingVector curve_coefficients(int n, int g)
{
	if (g < 1 || n < 0)
		throw ParameterError("curve coefficients need g >= 1 and n >= 0");
	StirlingVector v;
	v.n = n;
	v.g = g;
	Integer fact = 1;
	for (int k = 2; k <= n; ++k)
		fact *= k;
	for (int i = 2; i <= g + 1; ++i)
		v.coeffs.push_back(Rational(fact * stirling(i, n)));
	return v;
}

/// Expansion of (π₊ + T)^{⊗N} with N = 2n−2 over subsets J ⊆ {1..N}
/// (π₊ on J, T elsewhere). Each subset appears once.
struct BasePointBinomial {
	int n = 0;
	int factors = 0;                // 2n−2
	std::vector<unsigned> subsets;  // every J, coefficient +1

	Integer count_with_cardinality(int k) const
	{
		Integer c = 0;
		for (unsigned m : subsets)
			if (__builtin_popcount(m) == k)
				++c;
		return c;
	}

	/// Setting T = 0 keeps only J = {1..N}: the π₊^{⊗N} term.
	std::vector<unsigned> specialize_t_zero() const
	{
		std::vector<unsigned> out;
		unsigned full = factors == 0 ? 0u : (1u << factors) - 1;
		for (unsigned m : subsets)
			if (m == full)
				out.push_back(m);
		return out;
	}
};

inline BasePointBinomial base_point_binomial(int n)
{
	if (n < 2)
		throw ParameterError("base-point expansion needs n >= 2");
	int N = 2 * n - 2;
	if (N > 24)
		throw ResourceError("base-point expansion capped at 2n-2 <= 24 factors");
	BasePointBinomial b;
	b.n = n;
	b.factors = N;
	for (unsigned m = 0; m < (1u << N); ++m)
		b.subsets.push_back(m);
	return b;
}

} // namespace moddiag
