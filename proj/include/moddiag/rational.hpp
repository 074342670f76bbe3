#pragma once

#include "moddiag/error.hpp"

#include <boost/multiprecision/cpp_int.hpp>
#include <string>
#include <string_view>

namespace moddiag {

// All arithmetic in the library is exact. Rational values are kept in lowest
// terms with positive denominator (boost canonicalizes on every operation).
using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// num/den as an exact rational. Avoids the two-argument number constructor,
/// which rejects perfectly fine inputs on the boost version we build against.
inline Rational make_rational(Integer num, Integer den = 1)
{
	if (den == 0)
		throw ParameterError("rational with zero denominator");
	return Rational(std::move(num)) / Rational(std::move(den));
}

/// Parses "p" or "p/q" with optional sign. Exact, no floats.
inline Rational parse_rational(std::string_view s)
{
	auto bad = [&] { return ParameterError("malformed rational '" + std::string(s) + "'"); };
	if (s.empty())
		throw bad();
	auto check_int = [&](std::string_view t) {
		if (t.empty())
			throw bad();
		std::size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0;
		if (i == t.size())
			throw bad();
		for (; i < t.size(); ++i)
			if (t[i] < '0' || t[i] > '9')
				throw bad();
	};
	auto slash = s.find('/');
	if (slash == std::string_view::npos)
	{
		check_int(s);
		return Rational(Integer(std::string(s)));
	}
	std::string_view num = s.substr(0, slash), den = s.substr(slash + 1);
	check_int(num);
	check_int(den);
	Integer d{std::string(den)};
	if (d == 0)
		throw bad();
	return Rational(Integer(std::string(num))) / Rational(d);
}

/// Canonical exact string: "p" for integers, "p/q" otherwise.
inline std::string format_rational(const Rational &r)
{
	std::string s = numerator(r).str();
	if (denominator(r) != 1)
		s += "/" + denominator(r).str();
	return s;
}

inline Rational rational_pow(const Rational &base, int exp)
{
	if (exp < 0)
	{
		if (base == 0)
			throw ParameterError("zero to a negative power");
		return 1 / rational_pow(base, -exp);
	}
	Rational r = 1, b = base;
	while (exp > 0)
	{
		if (exp & 1)
			r *= b;
		b *= b;
		exp >>= 1;
	}
	return r;
}

inline Integer integer_pow(Integer base, int exp)
{
	Integer r = 1;
	while (exp > 0)
	{
		if (exp & 1)
			r *= base;
		base *= base;
		exp >>= 1;
	}
	return r;
}

} // namespace moddiag
