#pragma once

#include <stdexcept>
#include <string>

namespace moddiag {

struct Error : std::runtime_error {
	using std::runtime_error::runtime_error;
};

/// Invalid construction parameters (bad genus, unknown basis id, ...).
struct ParameterError : Error {
	using Error::Error;
};

/// Operands do not fit together (power or model mismatch).
struct ShapeError : Error {
	using Error::Error;
};

/// A model does not satisfy the algebra laws an operation relies on.
struct ModelError : Error {
	using Error::Error;
};

/// Desk-scale guardrail: the dense-term bound of a computation exceeds the cap.
struct ResourceError : Error {
	using Error::Error;
};

struct IoError : Error {
	using Error::Error;
};

namespace config {

/// Dense-term upper bound (dim H)^n an operation may touch before refusing.
/// Read during computation; set it once up front (not thread-safe to mutate
/// concurrently with running operations).
inline std::size_t &term_cap()
{
	static std::size_t cap = 10'000'000;
	return cap;
}

} // namespace config

/// dim^power with saturation, for guardrail checks. Integer-only.
inline std::size_t dense_term_bound(std::size_t dim, int power)
{
	std::size_t r = 1;
	for (int i = 0; i < power; ++i)
	{
		if (dim != 0 && r > config::term_cap() / dim + 1)
			return SIZE_MAX;
		r *= dim;
	}
	return r;
}

inline void check_term_budget(std::size_t dim, int power, const char *what)
{
	if (dense_term_bound(dim, power) > config::term_cap())
		throw ResourceError(std::string(what) +
		                    ": dense-term bound exceeds the configured cap of " +
		                    std::to_string(config::term_cap()) + " terms");
}

} // namespace moddiag
