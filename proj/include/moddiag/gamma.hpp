#pragma once

#include "moddiag/correspondence.hpp"
#include "moddiag/error.hpp"
#include "moddiag/model.hpp"
#include "moddiag/morphism.hpp"
#include "moddiag/projectors.hpp"
#include "moddiag/tensor.hpp"

#include <optional>
#include <set>
#include <vector>

namespace moddiag {

enum class GammaRoute { Projector, Expansion };

inline const char *to_string(GammaRoute r)
{
	return r == GammaRoute::Projector ? "projector" : "expansion";
}

struct GammaResult {
	ModelPtr model;
	int n = 0;
	TensorClass input;  // class on X the map was applied to
	TensorClass result; // class on Xⁿ
	bool is_zero = true;
	GammaRoute route = GammaRoute::Projector;
};

/// γⁿ(α) = π₊^{⊗n} ∘ Δ⁽ⁿ⁾_*(α).
inline GammaResult gamma_map(const ModelPtr &model, const TensorClass &alpha, int n)
{
	if (n < 1)
		throw ParameterError("gamma map needs n >= 1");
	if (alpha.model() != model || alpha.power() != 1)
		throw ShapeError("gamma map input must be a class on X itself");
	check_term_budget(static_cast<std::size_t>(model->size()), n, "gamma map");
	TensorClass pushed = PowerMorphism::diagonal(model, n).pushforward(alpha);
	TensorClass res = apply_projector_all_slots(pushed, ProjectorKind::PiPlus);
	return GammaResult{model, n, alpha, res, res.is_zero(), GammaRoute::Projector};
}

/// Γⁿ(X,a) along the projector route.
inline GammaResult modified_diagonal(const ModelPtr &model, int n)
{
	return gamma_map(model, TensorClass::fundamental(model, 1), n);
}

/// Γⁿ(X,a) by inclusion–exclusion over the partial diagonals:
/// Σ_{∅≠J} (−1)^{n−|J|} (φ_J∘Δ)_*[X]. Zero map for d = 0, where the
/// alternating sum does not apply.
inline GammaResult expansion_gamma(const ModelPtr &model, int n)
{
	if (n < 1)
		throw ParameterError("expansion route needs n >= 1");
	TensorClass input = TensorClass::fundamental(model, 1);
	if (model->dimension() == 0)
		return GammaResult{model, n, input, TensorClass(model, n), true,
		                   GammaRoute::Expansion};
	check_term_budget(static_cast<std::size_t>(model->size()), n, "expansion gamma");
	TensorClass total(model, n);
	for (unsigned mask = 1; mask < (1u << n); ++mask)
	{
		std::vector<int> J;
		for (int j = 0; j < n; ++j)
			if (mask & (1u << j))
				J.push_back(j);
		TensorClass term = PowerMorphism::subset_diagonal(model, n, J).pushforward(input);
		int sign = (n - static_cast<int>(J.size())) % 2 ? -1 : 1;
		total.add(term, Rational(sign));
	}
	return GammaResult{model, n, input, total, total.is_zero(), GammaRoute::Expansion};
}

/// Whether π₊^{⊗n}∘Δ_* and π⋆^{⊗n}∘Δ_* agree on every basis class.
inline bool pi_star_equivalence(const ModelPtr &model, int n)
{
	if (n < 1)
		throw ParameterError("pi-star comparison needs n >= 1");
	if (model->dimension() == 0)
		throw ParameterError("pi-star comparison needs d > 0");
	PowerMorphism diag = PowerMorphism::diagonal(model, n);
	for (int i = 0; i < model->size(); ++i)
	{
		TensorClass alpha = TensorClass::basis(model, {i});
		TensorClass pushed = diag.pushforward(alpha);
		if (apply_projector_all_slots(pushed, ProjectorKind::PiPlus) !=
		    apply_projector_all_slots(pushed, ProjectorKind::PiStar))
			return false;
	}
	return true;
}

/// The numeric inequality from the degree count 2d(n−1) > 2e + 2nd − 2n,
/// which simplifies to n > d + e.
inline bool degree_criterion(int n, int d, int e)
{
	if (d < 1 || e < 0 || e > d)
		throw ParameterError("degree criterion needs d >= 1 and 0 <= e <= d");
	return 2 * d * (n - 1) > 2 * e + 2 * n * d - 2 * n;
}

/// Albanese image dimension in the realization: half the largest i for which
/// some i-fold product of degree-1 basis classes is nonzero.
inline int albanese_image_dim(const ModelPtr &model)
{
	if (auto e = model->albanese_override())
		return *e;
	const Model &m = *model;
	const std::vector<int> &deg1 = m.basis_of_degree(1);
	if (deg1.empty())
		return 0;
	int max_i = 0;
	std::set<SparseVec> level{m.unit()};
	for (int i = 1; i <= m.top_degree(); ++i)
	{
		std::set<SparseVec> next;
		for (const SparseVec &v : level)
			for (int g : deg1)
			{
				SparseVec p = m.multiply(SparseVec{{g, Rational(1)}}, v);
				if (!p.empty())
					next.insert(std::move(p));
			}
		if (next.empty())
			break;
		max_i = i;
		level = std::move(next);
	}
	if (max_i % 2 != 0)
		throw ModelError("model " + m.name() +
		                 ": maximal nonzero symmetric power of degree-1 classes is odd (" +
		                 std::to_string(max_i) + "), not of the form 2e");
	return max_i / 2;
}

/// Smallest n ≤ n_max with Γⁿ = 0, verified monotone up to n_max;
/// nullopt when no vanishing occurs in range.
inline std::optional<int> vanishing_threshold(const ModelPtr &model, int n_max)
{
	if (n_max < 2)
		throw ParameterError("threshold search needs n_max >= 2");
	std::optional<int> first;
	for (int n = 1; n <= n_max; ++n)
	{
		bool zero = modified_diagonal(model, n).is_zero;
		if (zero && !first)
			first = n;
		if (!zero && first)
			throw Error("vanishing of the modified diagonal is not monotone on " +
			            model->name() + ": zero at n=" + std::to_string(*first) +
			            " but nonzero at n=" + std::to_string(n));
	}
	return first;
}

/// Σ_{∅≠K⊆{1..m}} (−1)^{|K|} γⁿ(Δ^{(K),*}(ξ)) for ξ on X^m of positive degree.
/// Vanishes whenever Γ^{m+n} does.
inline TensorClass gamma_correspondence_identity(const ModelPtr &model, int m, int n,
                                                 const TensorClass &xi)
{
	if (m < 1 || n < 1)
		throw ParameterError("correspondence identity needs m, n >= 1");
	if (xi.model() != model || xi.power() != m)
		throw ShapeError("xi must live on X^m");
	for (const auto &[t, c] : xi.terms())
		if (xi.total_degree(t) == 0)
			throw ParameterError("xi must have no degree-0 component");
	TensorClass total(model, n);
	for (unsigned mask = 1; mask < (1u << m); ++mask)
	{
		std::vector<int> K;
		for (int j = 0; j < m; ++j)
			if (mask & (1u << j))
				K.push_back(j);
		TensorClass restricted =
		    PowerMorphism::subset_diagonal(model, m, K).pullback(xi);
		int sign = K.size() % 2 ? -1 : 1;
		total.add(gamma_map(model, restricted, n).result, Rational(sign));
	}
	return total;
}

struct ProductScenarioResult {
	bool skipped = false;           // a factor has dimension zero
	bool preconditions_met = false; // Γ^m(X) = 0 and Γ^n(Y) = 0
	bool vanishes = false;          // Γ^{m+n−1}(X×Y) = 0
};

/// Checks Γ^m(X) = 0 ∧ Γ^n(Y) = 0 ⇒ Γ^{m+n−1}(X×Y) = 0 in the realization.
inline ProductScenarioResult product_scenario(const ModelPtr &mx, const ModelPtr &my, int m,
                                              int n)
{
	ProductScenarioResult r;
	if (mx->dimension() == 0 || my->dimension() == 0)
	{
		r.skipped = true;
		return r;
	}
	r.preconditions_met =
	    modified_diagonal(mx, m).is_zero && modified_diagonal(my, n).is_zero;
	if (!r.preconditions_met)
		return r;
	ModelPtr prod = Model::product(mx, my);
	r.vanishes = modified_diagonal(prod, m + n - 1).is_zero;
	return r;
}

struct PushforwardCompatibility {
	bool naturality = true;      // γⁿ∘f_* = f^{⊗n}_*∘γⁿ on all basis classes
	bool degree_applicable = false;
	Rational degree;             // N = ∫_X f*(pt_Y), when applicable
	bool degree_identity = true; // N·Γⁿ(Y) = f^{⊗n}_*(Γⁿ(X))
};

/// Compatibilities of γⁿ with a pointed morphism: naturality on every basis
/// class, and the degree-N identity on fundamental classes when f has one.
inline PushforwardCompatibility pushforward_compatibility(const ModelMorphism &f, int n)
{
	if (!f.is_pointed())
		throw ParameterError("pushforward compatibility needs a pointed morphism");
	PushforwardCompatibility out;
	const ModelPtr &x = f.source(), &y = f.target();
	for (int i = 0; i < x->size(); ++i)
	{
		TensorClass alpha = TensorClass::basis(x, {i});
		TensorClass lhs = gamma_map(y, f.pushforward(alpha), n).result;
		TensorClass rhs = f.pushforward(gamma_map(x, alpha, n).result);
		if (lhs != rhs)
		{
			out.naturality = false;
			break;
		}
	}
	out.degree = f.degree();
	out.degree_applicable = x->dimension() == y->dimension() && out.degree != 0;
	if (out.degree_applicable)
	{
		TensorClass lhs = modified_diagonal(y, n).result;
		lhs *= out.degree;
		TensorClass rhs = f.pushforward(modified_diagonal(x, n).result);
		out.degree_identity = lhs == rhs;
	}
	return out;
}

} // namespace moddiag
