#pragma once

#include "moddiag/rational.hpp"

#include <string>
#include <vector>

namespace moddiag {

/// Dense univariate polynomial over the rationals. Coefficient of t^i at c[i];
/// trailing zeros are trimmed so the zero polynomial has an empty vector.
class Poly
{
  public:
	Poly() = default;
	explicit Poly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }
	static Poly constant(Rational v) { return Poly(std::vector<Rational>{std::move(v)}); }
	static Poly variable() { return Poly({Rational(0), Rational(1)}); }

	bool is_zero() const { return c_.empty(); }
	int degree() const { return static_cast<int>(c_.size()) - 1; }
	const std::vector<Rational> &coeffs() const { return c_; }
	Rational coeff(std::size_t i) const { return i < c_.size() ? c_[i] : Rational(0); }

	Rational eval(const Rational &x) const
	{
		Rational r = 0;
		for (auto it = c_.rbegin(); it != c_.rend(); ++it)
			r = r * x + *it;
		return r;
	}

	friend Poly operator+(const Poly &a, const Poly &b)
	{
		std::vector<Rational> r(std::max(a.c_.size(), b.c_.size()), Rational(0));
		for (std::size_t i = 0; i < a.c_.size(); ++i)
			r[i] += a.c_[i];
		for (std::size_t i = 0; i < b.c_.size(); ++i)
			r[i] += b.c_[i];
		return Poly(std::move(r));
	}
	friend Poly operator-(const Poly &a, const Poly &b)
	{
		std::vector<Rational> r(std::max(a.c_.size(), b.c_.size()), Rational(0));
		for (std::size_t i = 0; i < a.c_.size(); ++i)
			r[i] += a.c_[i];
		for (std::size_t i = 0; i < b.c_.size(); ++i)
			r[i] -= b.c_[i];
		return Poly(std::move(r));
	}
	friend Poly operator*(const Poly &a, const Poly &b)
	{
		if (a.is_zero() || b.is_zero())
			return {};
		std::vector<Rational> r(a.c_.size() + b.c_.size() - 1, Rational(0));
		for (std::size_t i = 0; i < a.c_.size(); ++i)
			for (std::size_t j = 0; j < b.c_.size(); ++j)
				r[i + j] += a.c_[i] * b.c_[j];
		return Poly(std::move(r));
	}
	friend Poly operator*(const Rational &s, const Poly &a)
	{
		std::vector<Rational> r = a.c_;
		for (auto &x : r)
			x *= s;
		return Poly(std::move(r));
	}
	friend bool operator==(const Poly &a, const Poly &b) { return a.c_ == b.c_; }

	/// Readable form in the named variable, e.g. "-2*s - 2".
	std::string str(const std::string &var = "s") const
	{
		if (is_zero())
			return "0";
		std::string out;
		for (int i = degree(); i >= 0; --i)
		{
			const Rational &v = c_[i];
			if (v == 0)
				continue;
			if (!out.empty())
				out += v < 0 ? " - " : " + ";
			else if (v < 0)
				out += "-";
			Rational a = abs(v);
			if (a != 1 || i == 0)
				out += format_rational(a);
			if (i > 0)
			{
				if (a != 1)
					out += "*";
				out += var;
				if (i > 1)
					out += "^" + std::to_string(i);
			}
		}
		return out;
	}

  private:
	std::vector<Rational> c_;
	void trim()
	{
		while (!c_.empty() && c_.back() == 0)
			c_.pop_back();
	}
};

} // namespace moddiag
