#pragma once

#include "moddiag/error.hpp"
#include "moddiag/gamma.hpp"
#include "moddiag/linalg.hpp"
#include "moddiag/model.hpp"
#include "moddiag/morphism.hpp"
#include "moddiag/polynomial.hpp"
#include "moddiag/tensor.hpp"

#include <optional>
#include <string>
#include <vector>

namespace moddiag {

/// Formal rational combination of the classes V_r on X^m, r = 0..m.
/// Comparisons may fold through the symmetry V_{m−r} = V_r; iteration under
/// the insertion operator keeps coefficients unfolded so the transfer
/// coefficients stay literal.
struct VrVector {
	int m = 0;
	std::vector<Rational> coeffs; // index r = 0..m

	explicit VrVector(int m_) : m(m_), coeffs(static_cast<std::size_t>(m_) + 1, Rational(0))
	{
		if (m_ < 0)
			throw ParameterError("VrVector needs m >= 0");
	}

	static VrVector unit(int r, int m)
	{
		if (r < 0 || r > m)
			throw ParameterError("V_r index out of range");
		VrVector v(m);
		v.coeffs[static_cast<std::size_t>(r)] = 1;
		return v;
	}

	VrVector &add(const VrVector &o, const Rational &scale = Rational(1))
	{
		if (o.m != m)
			throw ShapeError("VrVector power mismatch");
		for (std::size_t r = 0; r < coeffs.size(); ++r)
			coeffs[r] += scale * o.coeffs[r];
		return *this;
	}

	VrVector &operator*=(const Rational &s)
	{
		for (auto &c : coeffs)
			c *= s;
		return *this;
	}

	/// Coefficients folded onto r ≤ ⌊m/2⌋ through V_{m−r} = V_r.
	std::vector<Rational> folded() const
	{
		std::vector<Rational> out(static_cast<std::size_t>(m / 2) + 1, Rational(0));
		for (int r = 0; r <= m; ++r)
			out[static_cast<std::size_t>(std::min(r, m - r))] +=
			    coeffs[static_cast<std::size_t>(r)];
		return out;
	}

	friend bool operator==(const VrVector &a, const VrVector &b)
	{
		return a.m == b.m && a.coeffs == b.coeffs;
	}

	static bool equal_folded(const VrVector &a, const VrVector &b)
	{
		return a.m == b.m && a.folded() == b.folded();
	}
};

/// A double cover f: X → Y in realization: X carries the involution, and the
/// pullback embedding identifies A(Y) with the σ-invariants, normalized so
/// that ∫_X f*(β) = 2 ∫_Y β.
struct CoverModel {
	ModelPtr cover_space;   // X, with involution
	ModelPtr base;          // Y
	ModelMorphism quotient; // f: X → Y, given by its pullback

	CoverModel(ModelPtr x, ModelPtr y, ModelMorphism f)
	    : cover_space(std::move(x)), base(std::move(y)), quotient(std::move(f))
	{
		if (!cover_space->has_involution())
			throw ParameterError("a cover model needs an involution on the cover space");
		if (quotient.source() != cover_space || quotient.target() != base)
			throw ParameterError("quotient morphism does not match the cover models");
		// the base point is involution-invariant by construction
		if (cover_space->involution().apply(cover_space->point_class()) !=
		    cover_space->point_class())
			throw ParameterError("the involution must fix the point class");
	}
};

/// Curve model cover: X = curve(g) with σ fixing the first h symplectic pairs
/// and negating the rest; Y = curve(h); pullback a_i ↦ a_i, b_i ↦ 2b_i,
/// pt ↦ 2pt. Purely algebraic — no geometric realizability (Riemann–Hurwitz)
/// is implied or checked.
inline CoverModel build_curve_cover(int g, int h)
{
	if (h < 0 || g < h)
		throw ParameterError("curve cover needs g >= h >= 0");
	ModelData xd = Model::curve(g)->data();
	std::vector<SparseVec> sigma;
	for (std::size_t i = 0; i < xd.basis.size(); ++i)
	{
		const std::string &id = xd.basis[i].id;
		bool flip = false;
		if ((id[0] == 'a' || id[0] == 'b') && id.size() > 1)
			flip = std::stoi(id.substr(1)) > h;
		sigma.push_back({{static_cast<int>(i), Rational(flip ? -1 : 1)}});
	}
	xd.involution = std::move(sigma);
	xd.name = "curve_g" + std::to_string(g) + "_cover_h" + std::to_string(h);
	ModelPtr x = Model::create(std::move(xd));
	ModelPtr y = Model::curve(h);
	std::vector<SparseVec> pull;
	for (int t = 0; t < y->size(); ++t)
	{
		const std::string &id = y->id(t);
		int xi = x->index_checked(id);
		Rational scale = (id == "pt" || id[0] == 'b') ? Rational(2) : Rational(1);
		pull.push_back({{xi, scale}});
	}
	return CoverModel(x, y, ModelMorphism(x, y, std::move(pull)));
}

/// f_*f* = 2·id on A(Y) and f*f_* = id + σ* on A(X), on every basis class.
inline bool cover_identities_ok(const CoverModel &cover)
{
	const ModelMorphism &f = cover.quotient;
	for (int t = 0; t < cover.base->size(); ++t)
	{
		SparseVec lhs = f.pushforward1(f.pullback1({{t, Rational(1)}}));
		if (lhs != SparseVec{{t, Rational(2)}})
			return false;
	}
	const Endo &sigma = cover.cover_space->involution();
	for (int s = 0; s < cover.cover_space->size(); ++s)
	{
		SparseVec lhs = f.pullback1(f.pushforward1({{s, Rational(1)}}));
		SparseVec rhs{{s, Rational(1)}};
		sv_add_scaled(rhs, sigma.apply(s), Rational(1));
		if (lhs != rhs)
			return false;
	}
	return true;
}

/// [Z_J] = ζ_{J,*}[X] on X^m (J ⊆ {0..m−1}, 0-based).
inline TensorClass z_class(const CoverModel &cover, const std::vector<int> &J, int m)
{
	return PowerMorphism::twisted_diagonal(cover.cover_space, m, J)
	    .pushforward(TensorClass::fundamental(cover.cover_space, 1));
}

/// V_r = Σ_{|J|=r} [Z_J], numerically.
inline TensorClass v_class_numeric(const CoverModel &cover, int r, int m)
{
	if (r < 0 || r > m)
		throw ParameterError("V_r needs 0 <= r <= m");
	TensorClass total(cover.cover_space, m);
	std::vector<int> idx(static_cast<std::size_t>(r));
	for (int i = 0; i < r; ++i)
		idx[static_cast<std::size_t>(i)] = i;
	while (true)
	{
		total += z_class(cover, idx, m);
		if (r == 0)
			break;
		int i = r - 1;
		while (i >= 0 && idx[static_cast<std::size_t>(i)] == m - r + i)
			--i;
		if (i < 0)
			break;
		++idx[static_cast<std::size_t>(i)];
		for (int j = i + 1; j < r; ++j)
			idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
	}
	return total;
}

inline VrVector v_symbol(int r, int m) { return VrVector::unit(r, m); }

/// Transfer rule of the insertion operator Φ on the V-symbols:
/// Φ_*(V_r) = r(m+1−r)·V_r + (r+1)(m−r)·V_{r+1}.
inline VrVector phi_symbolic(const VrVector &v)
{
	int m = v.m;
	VrVector out(m + 1);
	for (int r = 0; r <= m; ++r)
	{
		const Rational &c = v.coeffs[static_cast<std::size_t>(r)];
		if (c == 0)
			continue;
		out.coeffs[static_cast<std::size_t>(r)] += c * Rational(r * (m + 1 - r));
		out.coeffs[static_cast<std::size_t>(r) + 1] += c * Rational((r + 1) * (m - r));
	}
	return out;
}

/// Set-level enumeration of Φ on V_r: every J with |J| = r and every (i,j)
/// composed as maps, the image subset counted exactly. Verifies the counts
/// are uniform within each image cardinality before aggregating.
inline VrVector phi_brute_force(int m, int r)
{
	if (m < 1 || r < 0 || r > m)
		throw ParameterError("phi enumeration needs m >= 1 and 0 <= r <= m");
	if (m > 16)
		throw ResourceError("phi enumeration capped at m <= 16");
	std::vector<long long> count(1u << (m + 1), 0);
	for (unsigned mask = 0; mask < (1u << m); ++mask)
	{
		if (__builtin_popcount(mask) != r)
			continue;
		for (int i = 0; i < m; ++i)
			for (int j = 0; j <= m; ++j)
			{
				// image of φ_{i,j} ∘ ζ_J: slot k<j keeps J_k, slot j is
				// σ∘(σ on i∈J), slots k>j shift
				unsigned low = (1u << j) - 1;
				unsigned image = (mask & low) | ((mask & ~low) << 1);
				bool twisted = (mask & (1u << i)) == 0; // σ·σ = id when i ∈ J
				if (twisted)
					image |= 1u << j;
				++count[image];
			}
	}
	VrVector out(m + 1);
	std::vector<std::optional<long long>> per_size(static_cast<std::size_t>(m) + 2);
	for (unsigned k = 0; k < (1u << (m + 1)); ++k)
	{
		int size = __builtin_popcount(k);
		auto &expected = per_size[static_cast<std::size_t>(size)];
		if (!expected)
			expected = count[k];
		else if (*expected != count[k])
			throw Error("phi image counts are not uniform at |K| = " + std::to_string(size));
	}
	for (int size = 0; size <= m + 1; ++size)
		if (per_size[static_cast<std::size_t>(size)])
			out.coeffs[static_cast<std::size_t>(size)] =
			    Rational(*per_size[static_cast<std::size_t>(size)]);
	return out;
}

/// Φ_*(α) = Σ_{i,j} φ_{i,j,*}(α) on actual classes.
inline TensorClass phi_numeric(const CoverModel &cover, const TensorClass &alpha)
{
	if (alpha.model() != cover.cover_space)
		throw ShapeError("phi acts on classes of the cover space");
	int m = alpha.power();
	if (m < 1)
		throw ShapeError("phi needs a positive power");
	TensorClass total(cover.cover_space, m + 1);
	for (int i = 0; i < m; ++i)
		for (int j = 0; j <= m; ++j)
			total += PowerMorphism::twisted_insertion(cover.cover_space, m, i, j)
			             .pushforward(alpha);
	return total;
}

namespace detail {

// polynomials in x whose coefficients are polynomials in s
using XPoly = std::vector<Poly>;

inline void xp_trim(XPoly &a)
{
	while (!a.empty() && a.back().is_zero())
		a.pop_back();
}

inline XPoly xp_add(const XPoly &a, const XPoly &b)
{
	XPoly r(std::max(a.size(), b.size()));
	for (std::size_t i = 0; i < a.size(); ++i)
		r[i] = r[i] + a[i];
	for (std::size_t i = 0; i < b.size(); ++i)
		r[i] = r[i] + b[i];
	xp_trim(r);
	return r;
}

inline XPoly xp_sub(const XPoly &a, const XPoly &b)
{
	XPoly r(std::max(a.size(), b.size()));
	for (std::size_t i = 0; i < a.size(); ++i)
		r[i] = r[i] + a[i];
	for (std::size_t i = 0; i < b.size(); ++i)
		r[i] = r[i] - b[i];
	xp_trim(r);
	return r;
}

inline XPoly xp_mul(const XPoly &a, const XPoly &b)
{
	if (a.empty() || b.empty())
		return {};
	XPoly r(a.size() + b.size() - 1);
	for (std::size_t i = 0; i < a.size(); ++i)
		for (std::size_t j = 0; j < b.size(); ++j)
			r[i + j] = r[i + j] + a[i] * b[j];
	xp_trim(r);
	return r;
}

inline XPoly xp_pow(XPoly base, int e)
{
	XPoly r{Poly::constant(1)};
	while (e > 0)
	{
		if (e & 1)
			r = xp_mul(r, base);
		base = xp_mul(base, base);
		e >>= 1;
	}
	return r;
}

} // namespace detail

/// Rewrites x^m(y−1)^m + (x−1)^m y^m, with y = s−x, as
/// 2(xy)^m + Σ_{j<m} c_j(s)·(xy)^j and returns c_0..c_{m−1}. The remainder of
/// the rewrite is checked to vanish identically, and the identity is
/// re-checked on deterministic rational sample points.
inline std::vector<Poly> lemma54_reduction(int m)
{
	using namespace detail;
	if (m < 1)
		throw ParameterError("reduction needs m >= 1");
	Poly s = Poly::variable();
	XPoly x{Poly(), Poly::constant(1)};              // x
	XPoly y{s, Poly::constant(-1)};                  // s − x
	XPoly xm1 = xp_sub(x, XPoly{Poly::constant(1)}); // x − 1
	XPoly ym1 = xp_sub(y, XPoly{Poly::constant(1)}); // y − 1
	XPoly lhs = xp_add(xp_mul(xp_pow(x, m), xp_pow(ym1, m)),
	                   xp_mul(xp_pow(xm1, m), xp_pow(y, m)));
	XPoly p = xp_mul(x, y); // xy = sx − x², leading x-coefficient −1
	std::vector<Poly> c(static_cast<std::size_t>(m) + 1);
	XPoly rem = lhs;
	for (int k = m; k >= 0; --k)
	{
		Poly ck;
		if (rem.size() > static_cast<std::size_t>(2 * k))
		{
			ck = rem[static_cast<std::size_t>(2 * k)];
			if (k % 2)
				ck = Rational(-1) * ck; // leading coefficient of (xy)^k is (−1)^k
		}
		c[static_cast<std::size_t>(k)] = ck;
		if (!ck.is_zero())
			rem = xp_sub(rem, xp_mul(XPoly{ck}, xp_pow(p, k)));
	}
	if (!rem.empty())
		throw Error("reduction left a nonzero remainder; the polynomial is not symmetric");
	if (!(c[static_cast<std::size_t>(m)] == Poly::constant(2)))
		throw Error("reduction leading coefficient is not 2");
	// deterministic sample-point check of the rewritten identity
	unsigned long state = 0x2545F491u;
	auto next_rat = [&state]() {
		state = state * 48271 % 0x7fffffff;
		long num = static_cast<long>(state % 41) - 20;
		state = state * 48271 % 0x7fffffff;
		long den = 1 + static_cast<long>(state % 7);
		return Rational(num) / Rational(den);
	};
	for (int trial = 0; trial < 50; ++trial)
	{
		Rational xv = next_rat(), sv = next_rat();
		Rational yv = sv - xv;
		Rational lhs_v = rational_pow(xv, m) * rational_pow(yv - 1, m) +
		                 rational_pow(xv - 1, m) * rational_pow(yv, m);
		Rational rhs_v = 2 * rational_pow(xv * yv, m);
		for (int j = 0; j < m; ++j)
			rhs_v += c[static_cast<std::size_t>(j)].eval(sv) * rational_pow(xv * yv, j);
		if (lhs_v != rhs_v)
			throw Error("reduction identity fails at a sample point");
	}
	c.pop_back();
	return c;
}

struct VandermondeCertificate {
	bool ok = false;
	std::vector<Integer> values; // r(2n−1−r), r = 0..n−1
	Integer determinant;         // det of ((values_r)^j), exact
};

/// Distinctness of the node values r(2n−1−r) and exact invertibility of the
/// power matrix over the rationals.
inline VandermondeCertificate vandermonde_certificate(int n)
{
	if (n < 1)
		throw ParameterError("certificate needs n >= 1");
	VandermondeCertificate cert;
	for (int r = 0; r < n; ++r)
		cert.values.push_back(Integer(r) * (2 * n - 1 - r));
	bool distinct = true;
	for (int r = 0; r + 1 < n; ++r)
		if (cert.values[static_cast<std::size_t>(r)] >=
		    cert.values[static_cast<std::size_t>(r) + 1])
			distinct = false;
	std::vector<std::vector<Integer>> mat(static_cast<std::size_t>(n),
	                                      std::vector<Integer>(static_cast<std::size_t>(n)));
	for (int r = 0; r < n; ++r)
		for (int j = 0; j < n; ++j)
			mat[static_cast<std::size_t>(r)][static_cast<std::size_t>(j)] =
			    integer_pow(cert.values[static_cast<std::size_t>(r)], j);
	cert.determinant = bareiss_determinant(std::move(mat));
	cert.ok = distinct && cert.determinant != 0;
	return cert;
}

struct ScenarioReport {
	int n = 0;
	bool base_vanishing = false;     // Γ^N(Y) = 0 for N = n..2n−1
	bool pullback_identity = false;  // f*[Δ_Y^(N)] = ½ Σ V_r for those N
	bool congruences_in_fil1 = false; // numeric Σ (r(N−r))^j V_r lie in Fil¹
	bool replay_ok = false;          // symbolic induction + Vandermonde solve
	bool cover_vanishing = false;    // Γ^{2n−1}(X) = 0, numerically
	std::vector<Rational> solution;  // coefficients expressing V₀ in the S_j
	std::string failure;

	bool ok() const
	{
		return base_vanishing && pullback_identity && congruences_in_fil1 &&
		       replay_ok && cover_vanishing;
	}
};

namespace detail {

inline VrVector closed_power_sum(int j, int N)
{
	VrVector v(N);
	for (int r = 0; r <= N; ++r)
		v.coeffs[static_cast<std::size_t>(r)] =
		    Rational(integer_pow(Integer(r) * (N - r), j));
	return v;
}

} // namespace detail

/// Replays the inductive derivation of the congruences
/// S_j = Σ_r (r(N−r))^j V_r mod Fil¹ at each power N ≤ 2n−1, checking the
/// transfer algebra exactly, then solves the folded Vandermonde system that
/// expresses V₀ in the S_j at power 2n−1.
inline bool replay_cover_induction(int n, std::vector<Rational> *solution_out,
                                   std::string *failure)
{
	using detail::closed_power_sum;
	for (int N = n + 1; N <= 2 * n - 1; ++N)
		for (int j = 1; j <= N - n; ++j)
		{
			VrVector w = phi_symbolic(closed_power_sum(j - 1, N - 1));
			VrVector derived = w;
			if (j >= 2)
			{
				std::vector<Poly> cs = lemma54_reduction(j - 1);
				for (int u = 1; u <= j - 1; ++u)
					derived.add(closed_power_sum(u, N),
					            -cs[static_cast<std::size_t>(u) - 1].eval(Rational(N)));
			}
			derived *= Rational(1) / 2;
			if (!(derived == closed_power_sum(j, N)))
			{
				if (failure)
					*failure = "transfer identity fails at N=" + std::to_string(N) +
					           ", j=" + std::to_string(j);
				return false;
			}
		}
	// folded system at power 2n−1: Σ_j y_j · 2(v_r)^j = δ_{r,0}
	int rows = n;
	Matrix a(static_cast<std::size_t>(rows), std::vector<Rational>(static_cast<std::size_t>(rows)));
	std::vector<Rational> rhs(static_cast<std::size_t>(rows), Rational(0));
	rhs[0] = 1;
	for (int j = 0; j < rows; ++j)
	{
		std::vector<Rational> folded = closed_power_sum(j, 2 * n - 1).folded();
		for (int r = 0; r < rows; ++r)
			a[static_cast<std::size_t>(r)][static_cast<std::size_t>(j)] =
			    folded[static_cast<std::size_t>(r)];
	}
	auto sol = solve_unique(a, rhs);
	if (!sol)
	{
		if (failure)
			*failure = "folded Vandermonde system is singular";
		return false;
	}
	if (solution_out)
		*solution_out = *sol;
	return true;
}

/// End-to-end scenario: Γⁿ(Y) = 0 (checked, with stability up to 2n−1),
/// the half-sum pullback identity, the symbolic replay, and the numeric
/// vanishing Γ^{2n−1}(X) = 0.
inline ScenarioReport double_cover_scenario(const CoverModel &cover, int n)
{
	if (n < 2)
		throw ParameterError("cover scenario needs n >= 2");
	ScenarioReport rep;
	rep.n = n;
	rep.base_vanishing = true;
	for (int N = n; N <= 2 * n - 1 && rep.base_vanishing; ++N)
		if (!modified_diagonal(cover.base, N).is_zero)
		{
			rep.base_vanishing = false;
			rep.failure = "precondition fails: the base diagonal does not vanish at n=" +
			              std::to_string(N);
		}
	if (!rep.base_vanishing)
		return rep;
	rep.pullback_identity = true;
	for (int N = n; N <= 2 * n - 1 && rep.pullback_identity; ++N)
	{
		TensorClass delta_y =
		    PowerMorphism::diagonal(cover.base, N)
		        .pushforward(TensorClass::fundamental(cover.base, 1));
		TensorClass pulled = cover.quotient.pullback(delta_y);
		TensorClass half_sum(cover.cover_space, N);
		for (int r = 0; r <= N; ++r)
			half_sum += v_class_numeric(cover, r, N);
		half_sum *= Rational(1) / 2;
		if (!(pulled == half_sum))
		{
			rep.pullback_identity = false;
			rep.failure = "pullback of the base diagonal is not the half V-sum at n=" +
			              std::to_string(N);
		}
	}
	if (!rep.pullback_identity)
		return rep;
	// the congruence classes themselves, realized at power 2n−1
	{
		int N = 2 * n - 1;
		std::vector<TensorClass> vr;
		for (int r = 0; r <= N; ++r)
			vr.push_back(v_class_numeric(cover, r, N));
		rep.congruences_in_fil1 = true;
		for (int j = 0; j < n && rep.congruences_in_fil1; ++j)
		{
			TensorClass s(cover.cover_space, N);
			for (int r = 0; r <= N; ++r)
				s.add(vr[static_cast<std::size_t>(r)],
				      Rational(integer_pow(Integer(r) * (N - r), j)));
			auto level = filtration_level(s);
			if (level.has_value() && *level < 1)
			{
				rep.congruences_in_fil1 = false;
				rep.failure = "numeric congruence escapes Fil^1 at j=" + std::to_string(j);
			}
		}
	}
	if (!rep.congruences_in_fil1)
		return rep;
	rep.replay_ok = replay_cover_induction(n, &rep.solution, &rep.failure);
	if (!rep.replay_ok)
		return rep;
	rep.cover_vanishing = modified_diagonal(cover.cover_space, 2 * n - 1).is_zero;
	if (!rep.cover_vanishing)
		rep.failure = "the cover diagonal does not vanish at 2n-1";
	return rep;
}

} // namespace moddiag
