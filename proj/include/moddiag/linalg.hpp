#pragma once

#include "moddiag/rational.hpp"

#include <optional>
#include <vector>

namespace moddiag {

/// Dense matrix over the rationals, row major. Only used at desk scale
/// (Gram blocks, Vandermonde systems), so plain Gaussian elimination is fine.
using Matrix = std::vector<std::vector<Rational>>;

inline Matrix identity_matrix(std::size_t n)
{
	Matrix m(n, std::vector<Rational>(n, Rational(0)));
	for (std::size_t i = 0; i < n; ++i)
		m[i][i] = 1;
	return m;
}

/// Exact inverse; nullopt when singular.
inline std::optional<Matrix> invert(Matrix a)
{
	std::size_t n = a.size();
	Matrix inv = identity_matrix(n);
	for (std::size_t col = 0; col < n; ++col)
	{
		std::size_t pivot = col;
		while (pivot < n && a[pivot][col] == 0)
			++pivot;
		if (pivot == n)
			return std::nullopt;
		std::swap(a[pivot], a[col]);
		std::swap(inv[pivot], inv[col]);
		Rational p = a[col][col];
		for (std::size_t j = 0; j < n; ++j)
		{
			a[col][j] /= p;
			inv[col][j] /= p;
		}
		for (std::size_t row = 0; row < n; ++row)
		{
			if (row == col || a[row][col] == 0)
				continue;
			Rational f = a[row][col];
			for (std::size_t j = 0; j < n; ++j)
			{
				a[row][j] -= f * a[col][j];
				inv[row][j] -= f * inv[col][j];
			}
		}
	}
	return inv;
}

/// Solves a·x = b; nullopt when there is no solution or it is not unique.
inline std::optional<std::vector<Rational>> solve_unique(Matrix a, std::vector<Rational> b)
{
	std::size_t rows = a.size();
	std::size_t cols = rows == 0 ? 0 : a[0].size();
	std::vector<std::size_t> pivot_col;
	std::size_t r = 0;
	for (std::size_t c = 0; c < cols && r < rows; ++c)
	{
		std::size_t p = r;
		while (p < rows && a[p][c] == 0)
			++p;
		if (p == rows)
			continue;
		std::swap(a[p], a[r]);
		std::swap(b[p], b[r]);
		Rational d = a[r][c];
		for (std::size_t j = c; j < cols; ++j)
			a[r][j] /= d;
		b[r] /= d;
		for (std::size_t i = 0; i < rows; ++i)
		{
			if (i == r || a[i][c] == 0)
				continue;
			Rational f = a[i][c];
			for (std::size_t j = c; j < cols; ++j)
				a[i][j] -= f * a[r][j];
			b[i] -= f * b[r];
		}
		pivot_col.push_back(c);
		++r;
	}
	for (std::size_t i = r; i < rows; ++i)
		if (b[i] != 0)
			return std::nullopt; // inconsistent
	if (pivot_col.size() != cols)
		return std::nullopt; // underdetermined
	std::vector<Rational> x(cols, Rational(0));
	for (std::size_t i = 0; i < pivot_col.size(); ++i)
		x[pivot_col[i]] = b[i];
	return x;
}

/// Exact integer determinant via Bareiss fraction-free elimination.
inline Integer bareiss_determinant(std::vector<std::vector<Integer>> a)
{
	std::size_t n = a.size();
	if (n == 0)
		return 1;
	Integer prev = 1;
	int sign = 1;
	for (std::size_t k = 0; k + 1 < n; ++k)
	{
		if (a[k][k] == 0)
		{
			std::size_t p = k + 1;
			while (p < n && a[p][k] == 0)
				++p;
			if (p == n)
				return 0;
			std::swap(a[p], a[k]);
			sign = -sign;
		}
		for (std::size_t i = k + 1; i < n; ++i)
			for (std::size_t j = k + 1; j < n; ++j)
				a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
		prev = a[k][k];
	}
	return sign > 0 ? a[n - 1][n - 1] : -a[n - 1][n - 1];
}

inline std::size_t matrix_rank(Matrix a)
{
	std::size_t rows = a.size();
	std::size_t cols = rows == 0 ? 0 : a[0].size();
	std::size_t r = 0;
	for (std::size_t c = 0; c < cols && r < rows; ++c)
	{
		std::size_t p = r;
		while (p < rows && a[p][c] == 0)
			++p;
		if (p == rows)
			continue;
		std::swap(a[p], a[r]);
		for (std::size_t i = 0; i < rows; ++i)
		{
			if (i == r || a[i][c] == 0)
				continue;
			Rational f = a[i][c] / a[r][c];
			for (std::size_t j = c; j < cols; ++j)
				a[i][j] -= f * a[r][j];
		}
		++r;
	}
	return r;
}

} // namespace moddiag
