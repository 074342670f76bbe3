#pragma once

#include "moddiag/error.hpp"
#include "moddiag/model.hpp"

#include <map>
#include <vector>

namespace moddiag {

/// A sparse exact-rational class on Xⁿ: a map from n-tuples of basis indices
/// to nonzero coefficients, kept in lexicographic order so equality is
/// structural. n = 0 classes are scalars (one empty tuple).
class TensorClass
{
  public:
	using Tuple = std::vector<int>;
	using TermMap = std::map<Tuple, Rational>;

	TensorClass(ModelPtr model, int power) : model_(std::move(model)), power_(power)
	{
		if (!model_)
			throw ParameterError("tensor class needs a model");
		if (power_ < 0)
			throw ParameterError("tensor class power must be >= 0");
	}

	static TensorClass scalar(ModelPtr model, Rational value)
	{
		TensorClass t(std::move(model), 0);
		if (value != 0)
			t.terms_[{}] = std::move(value);
		return t;
	}

	static TensorClass basis(ModelPtr model, Tuple tuple, Rational coeff = Rational(1))
	{
		TensorClass t(std::move(model), static_cast<int>(tuple.size()));
		for (int i : tuple)
			if (i < 0 || i >= t.model_->size())
				throw ParameterError("basis index out of range");
		if (coeff != 0)
			t.terms_[std::move(tuple)] = std::move(coeff);
		return t;
	}

	/// Tensor power of a single-factor sparse element placed in every slot.
	static TensorClass power_of(ModelPtr model, const SparseVec &v, int n)
	{
		TensorClass t(model, n);
		t.terms_[{}] = 1;
		for (int s = 0; s < n; ++s)
		{
			TermMap next;
			for (const auto &[tuple, c] : t.terms_)
				for (const auto &[i, vc] : v)
				{
					Tuple nt = tuple;
					nt.push_back(i);
					next[std::move(nt)] = c * vc;
				}
			t.terms_ = std::move(next);
		}
		return t;
	}

	/// The fundamental class [Xⁿ].
	static TensorClass fundamental(ModelPtr model, int n)
	{
		const SparseVec &u = model->unit();
		return power_of(std::move(model), u, n);
	}

	/// The class of the point tuple (a,…,a).
	static TensorClass point_tuple(ModelPtr model, int n)
	{
		const SparseVec &p = model->point_class();
		return power_of(std::move(model), p, n);
	}

	const ModelPtr &model() const { return model_; }
	int power() const { return power_; }
	const TermMap &terms() const { return terms_; }
	bool is_zero() const { return terms_.empty(); }
	std::size_t term_count() const { return terms_.size(); }

	void add_term(const Tuple &tuple, const Rational &coeff)
	{
		if (coeff == 0)
			return;
		auto [it, inserted] = terms_.try_emplace(tuple, coeff);
		if (!inserted)
		{
			it->second += coeff;
			if (it->second == 0)
				terms_.erase(it);
		}
	}

	TensorClass &add(const TensorClass &other, const Rational &scale = Rational(1))
	{
		require_same_shape(other);
		if (scale == 0)
			return *this;
		for (const auto &[tuple, c] : other.terms_)
			add_term(tuple, scale * c);
		return *this;
	}

	TensorClass &operator+=(const TensorClass &o) { return add(o); }
	TensorClass &operator-=(const TensorClass &o) { return add(o, Rational(-1)); }
	TensorClass &operator*=(const Rational &s)
	{
		if (s == 0)
			terms_.clear();
		else
			for (auto &[tuple, c] : terms_)
				c *= s;
		return *this;
	}

	friend TensorClass operator+(TensorClass a, const TensorClass &b) { return a += b; }
	friend TensorClass operator-(TensorClass a, const TensorClass &b) { return a -= b; }
	friend TensorClass operator*(const Rational &s, TensorClass a) { return a *= s; }
	friend TensorClass operator-(TensorClass a) { return a *= Rational(-1); }

	friend bool operator==(const TensorClass &a, const TensorClass &b)
	{
		return a.model_ == b.model_ && a.power_ == b.power_ && a.terms_ == b.terms_;
	}

	int slot_degree(const Tuple &t, int slot) const { return model_->degree(t[static_cast<std::size_t>(slot)]); }

	int total_degree(const Tuple &t) const
	{
		int d = 0;
		for (int i : t)
			d += model_->degree(i);
		return d;
	}

	/// Graded product on the n-fold tensor algebra with the Koszul sign
	/// (x₁⊗…⊗xₙ)(y₁⊗…⊗yₙ) = (−1)^{Σ_{i<j}|y_i||x_j|} x₁y₁⊗…⊗xₙyₙ.
	friend TensorClass multiply(const TensorClass &x, const TensorClass &y)
	{
		x.require_same_shape(y);
		const Model &m = *x.model_;
		TensorClass out(x.model_, x.power_);
		for (const auto &[s, cs] : x.terms_)
		{
			// suffix parity of x-tuple for the sign scan
			std::vector<int> odd_suffix(static_cast<std::size_t>(x.power_) + 1, 0);
			for (int i = x.power_ - 1; i >= 0; --i)
				odd_suffix[static_cast<std::size_t>(i)] =
				    odd_suffix[static_cast<std::size_t>(i) + 1] +
				    (m.odd(s[static_cast<std::size_t>(i)]) ? 1 : 0);
			for (const auto &[t, ct] : y.terms_)
			{
				int sign_exp = 0;
				for (int i = 0; i < x.power_; ++i)
					if (m.odd(t[static_cast<std::size_t>(i)]))
						sign_exp += odd_suffix[static_cast<std::size_t>(i) + 1];
				Rational c = cs * ct;
				if (sign_exp % 2)
					c = -c;
				// expand slotwise products
				std::vector<std::pair<Tuple, Rational>> partial{{Tuple{}, std::move(c)}};
				for (int i = 0; i < x.power_ && !partial.empty(); ++i)
				{
					const SparseVec &p = m.product(s[static_cast<std::size_t>(i)],
					                               t[static_cast<std::size_t>(i)]);
					std::vector<std::pair<Tuple, Rational>> next;
					next.reserve(partial.size() * p.size());
					for (auto &[tp, pc] : partial)
						for (const auto &[k, kc] : p)
						{
							Tuple nt = tp;
							nt.push_back(k);
							next.emplace_back(std::move(nt), pc * kc);
						}
					partial = std::move(next);
				}
				for (auto &[tuple, coeff] : partial)
					out.add_term(tuple, coeff);
			}
		}
		return out;
	}

	/// Degree map: trace of the top-degree part, the product of factor traces
	/// on each pure tensor (every factor must sit in degree 2d).
	Rational integrate() const
	{
		const Model &m = *model_;
		int top = m.top_degree();
		Rational total = 0;
		for (const auto &[tuple, c] : terms_)
		{
			Rational f = c;
			for (int i : tuple)
			{
				if (m.degree(i) != top)
				{
					f = 0;
					break;
				}
				f *= m.trace(i);
			}
			total += f;
		}
		return total;
	}

	/// ⟨x, y⟩ = ∫ x·y on Xⁿ, computed termwise through the Gram pairing.
	friend Rational pairing(const TensorClass &x, const TensorClass &y)
	{
		x.require_same_shape(y);
		const Model &m = *x.model_;
		Rational total = 0;
		for (const auto &[s, cs] : x.terms_)
			for (const auto &[t, ct] : y.terms_)
			{
				Rational f = cs * ct;
				int sign_exp = 0, odd_seen = 0;
				for (int i = x.power_ - 1; i >= 0 && f != 0; --i)
				{
					const Rational &g = m.gram(s[static_cast<std::size_t>(i)],
					                           t[static_cast<std::size_t>(i)]);
					if (g == 0)
					{
						f = 0;
						break;
					}
					// Koszul sign Σ_{i<j}|t_i||s_j|: t_i odd counts odd s_j, j>i
					if (m.odd(t[static_cast<std::size_t>(i)]))
						sign_exp += odd_seen;
					if (m.odd(s[static_cast<std::size_t>(i)]))
						++odd_seen;
					f *= g;
				}
				if (sign_exp % 2)
					f = -f;
				total += f;
			}
		return total;
	}

	void require_same_shape(const TensorClass &o) const
	{
		if (model_ != o.model_)
			throw ShapeError("tensor classes live on different models");
		if (power_ != o.power_)
			throw ShapeError("tensor classes live on different powers (" +
			                 std::to_string(power_) + " vs " + std::to_string(o.power_) + ")");
	}

  private:
	ModelPtr model_;
	int power_;
	TermMap terms_;
};

} // namespace moddiag
