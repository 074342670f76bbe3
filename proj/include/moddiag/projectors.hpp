#pragma once

#include "moddiag/correspondence.hpp"
#include "moddiag/error.hpp"
#include "moddiag/model.hpp"
#include "moddiag/tensor.hpp"

#include <optional>
#include <vector>

namespace moddiag {

enum class ProjectorKind { Pi0, PiPlus, PiStar, Pi2d };

inline const char *to_string(ProjectorKind k)
{
	switch (k)
	{
	case ProjectorKind::Pi0:
		return "pi0";
	case ProjectorKind::PiPlus:
		return "pi+";
	case ProjectorKind::PiStar:
		return "pi*";
	default:
		return "pi2d";
	}
}

namespace detail {

inline TensorClass outer_product2(const ModelPtr &model, const SparseVec &x, const SparseVec &y)
{
	TensorClass out(model, 2);
	for (const auto &[i, a] : x)
		for (const auto &[j, b] : y)
		{
			TensorClass::Tuple t{i, j};
			out.add_term(t, a * b);
		}
	return out;
}

} // namespace detail

/// Kernels on X²: π₀ = [X×{a}], π₂d = [{a}×X], π₊ = Δ − π₀,
/// π⋆ = Δ − π₀ − π₂d. The refined kinds need d > 0.
inline Correspondence projector(const ModelPtr &model, ProjectorKind kind)
{
	if ((kind == ProjectorKind::PiStar || kind == ProjectorKind::Pi2d) &&
	    model->dimension() == 0)
		throw ParameterError("pi* and pi2d need a model of positive dimension");
	switch (kind)
	{
	case ProjectorKind::Pi0:
		return Correspondence(1, 1,
		                      detail::outer_product2(model, model->unit(), model->point_class()));
	case ProjectorKind::Pi2d:
		return Correspondence(1, 1,
		                      detail::outer_product2(model, model->point_class(), model->unit()));
	case ProjectorKind::PiPlus:
		return Correspondence(
		    1, 1,
		    diagonal_class(model) -
		        detail::outer_product2(model, model->unit(), model->point_class()));
	default:
		return Correspondence(
		    1, 1,
		    diagonal_class(model) -
		        detail::outer_product2(model, model->unit(), model->point_class()) -
		        detail::outer_product2(model, model->point_class(), model->unit()));
	}
}

/// Slot action of a projector on a basis element. All four projectors are
/// degree-preserving, so applying them slotwise needs no Koszul signs.
inline SparseVec projector_slot_image(const Model &m, ProjectorKind kind, int i)
{
	switch (kind)
	{
	case ProjectorKind::Pi0:
		return sv_scaled(m.point_class(), m.trace(i));
	case ProjectorKind::Pi2d:
		return sv_scaled(m.unit(), m.unit_coeff(i));
	case ProjectorKind::PiPlus: {
		SparseVec r{{i, Rational(1)}};
		sv_add_scaled(r, m.point_class(), -m.trace(i));
		return r;
	}
	default: {
		SparseVec r{{i, Rational(1)}};
		sv_add_scaled(r, m.point_class(), -m.trace(i));
		sv_add_scaled(r, m.unit(), -m.unit_coeff(i));
		return r;
	}
	}
}

/// Applies the given projector to every listed slot (other slots untouched).
inline TensorClass apply_projector_slots(const TensorClass &alpha, ProjectorKind kind,
                                         const std::vector<int> &slots)
{
	const Model &m = *alpha.model();
	std::vector<bool> marked(static_cast<std::size_t>(alpha.power()), false);
	for (int s : slots)
	{
		if (s < 0 || s >= alpha.power())
			throw ShapeError("projector slot out of range");
		marked[static_cast<std::size_t>(s)] = true;
	}
	TensorClass out(alpha.model(), alpha.power());
	for (const auto &[t, c] : alpha.terms())
	{
		std::vector<std::pair<TensorClass::Tuple, Rational>> partial{{{}, c}};
		for (int s = 0; s < alpha.power(); ++s)
		{
			int bi = t[static_cast<std::size_t>(s)];
			SparseVec img = marked[static_cast<std::size_t>(s)]
			                    ? projector_slot_image(m, kind, bi)
			                    : SparseVec{{bi, Rational(1)}};
			std::vector<std::pair<TensorClass::Tuple, Rational>> next;
			next.reserve(partial.size() * img.size());
			for (auto &[tp, pc] : partial)
				for (const auto &[k, kc] : img)
				{
					auto nt = tp;
					nt.push_back(k);
					next.emplace_back(std::move(nt), pc * kc);
				}
			partial = std::move(next);
		}
		for (auto &[tuple, coeff] : partial)
			out.add_term(tuple, coeff);
	}
	return out;
}

inline TensorClass apply_projector_all_slots(const TensorClass &alpha, ProjectorKind kind)
{
	std::vector<int> all(static_cast<std::size_t>(alpha.power()));
	for (int i = 0; i < alpha.power(); ++i)
		all[static_cast<std::size_t>(i)] = i;
	return apply_projector_slots(alpha, kind, all);
}

/// Künneth component: π₊ on the J-slots, π₀ elsewhere (0-based slots).
inline TensorClass kunneth_component(const TensorClass &alpha, const std::vector<int> &J)
{
	std::vector<bool> in(static_cast<std::size_t>(alpha.power()), false);
	for (int s : J)
	{
		if (s < 0 || s >= alpha.power())
			throw ShapeError("Künneth subset slot out of range");
		in[static_cast<std::size_t>(s)] = true;
	}
	std::vector<int> plus, zero;
	for (int s = 0; s < alpha.power(); ++s)
		(in[static_cast<std::size_t>(s)] ? plus : zero).push_back(s);
	return apply_projector_slots(apply_projector_slots(alpha, ProjectorKind::PiPlus, plus),
	                             ProjectorKind::Pi0, zero);
}

/// Sum of the Künneth components with |J| = m (the ⟨m⟩-grading).
inline TensorClass grading_component(const TensorClass &alpha, int m)
{
	int n = alpha.power();
	if (m < 0 || m > n)
		throw ShapeError("grading index must lie in 0..n");
	TensorClass out(alpha.model(), n);
	// iterate subsets of size m
	std::vector<int> idx(static_cast<std::size_t>(m));
	for (int i = 0; i < m; ++i)
		idx[static_cast<std::size_t>(i)] = i;
	if (m == 0)
		return kunneth_component(alpha, {});
	while (true)
	{
		out += kunneth_component(alpha, idx);
		int i = m - 1;
		while (i >= 0 && idx[static_cast<std::size_t>(i)] == n - m + i)
			--i;
		if (i < 0)
			break;
		++idx[static_cast<std::size_t>(i)];
		for (int j = i + 1; j < m; ++j)
			idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
	}
	return out;
}

/// The largest r with every ⟨m⟩-component of α vanishing for m > n−r;
/// nullopt ("bottom") for the zero class, which lies in every Fil^r.
inline std::optional<int> filtration_level(const TensorClass &alpha)
{
	if (alpha.is_zero())
		return std::nullopt;
	int n = alpha.power();
	for (int m = n; m >= 0; --m)
		if (!grading_component(alpha, m).is_zero())
			return n - m;
	return std::nullopt; // unreachable for nonzero classes
}

/// The kernel of ⊗_j π_{kind_j} on X^{2n}, materialized by multiplying the
/// slot-pair pullbacks of the X² kernels. Desk scale only; the slotwise route
/// above is the general path, and the two must agree where both run.
inline Correspondence tensor_projector_kernel(const ModelPtr &model,
                                              const std::vector<ProjectorKind> &kinds)
{
	int n = static_cast<int>(kinds.size());
	check_term_budget(static_cast<std::size_t>(model->size()), 2 * n,
	                  "tensor projector kernel");
	TensorClass kernel = TensorClass::fundamental(model, 2 * n);
	for (int j = 0; j < n; ++j)
	{
		PowerMorphism sel = PowerMorphism::projection(model, 2 * n, {j, n + j});
		kernel = multiply(kernel, sel.pullback(projector(model, kinds[static_cast<std::size_t>(j)]).kernel()));
	}
	return Correspondence(n, n, std::move(kernel));
}

} // namespace moddiag
