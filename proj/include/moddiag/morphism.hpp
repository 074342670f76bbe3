#pragma once

#include "moddiag/error.hpp"
#include "moddiag/model.hpp"
#include "moddiag/tensor.hpp"

#include <vector>

namespace moddiag {

/// One target coordinate of a power morphism: either reads a source
/// coordinate through a twist (an automorphism of the model), or is pinned to
/// the base point.
struct Coordinate {
	static constexpr int kBasepoint = -1;
	int source = kBasepoint; // 0-based source slot, or kBasepoint
	Endo twist;              // identity for base-point coordinates

	static Coordinate basepoint() { return Coordinate{}; }
	static Coordinate read(int source, Endo twist = Endo::identity())
	{
		Coordinate c;
		c.source = source;
		c.twist = std::move(twist);
		return c;
	}
	bool is_basepoint() const { return source == kBasepoint; }
};

/// A map X^m → X^n assembled from coordinate selection, base-point insertion
/// and automorphism twists. Closed under composition; this family houses the
/// projections, the diagonals Δ⁽ⁿ⁾ and δ⁽ⁿ⁾, the partial-diagonal embeddings,
/// the twisted diagonals ζ_J and the maps φ_{i,j}.
class PowerMorphism
{
  public:
	PowerMorphism(ModelPtr model, int source_power, std::vector<Coordinate> coords)
	    : model_(std::move(model)), source_power_(source_power), coords_(std::move(coords))
	{
		if (!model_)
			throw ParameterError("power morphism needs a model");
		if (source_power_ < 0)
			throw ParameterError("negative source power");
		for (const auto &c : coords_)
			if (!c.is_basepoint() && (c.source < 0 || c.source >= source_power_))
				throw ParameterError("power morphism coordinate out of range");
	}

	static PowerMorphism identity(ModelPtr model, int m)
	{
		std::vector<Coordinate> cs;
		for (int j = 0; j < m; ++j)
			cs.push_back(Coordinate::read(j));
		return PowerMorphism(std::move(model), m, std::move(cs));
	}

	/// Projection X^m → X^k selecting the given source slots in order.
	static PowerMorphism projection(ModelPtr model, int m, const std::vector<int> &keep)
	{
		std::vector<Coordinate> cs;
		for (int s : keep)
			cs.push_back(Coordinate::read(s));
		return PowerMorphism(std::move(model), m, std::move(cs));
	}

	/// Δ⁽ⁿ⁾: X → Xⁿ.
	static PowerMorphism diagonal(ModelPtr model, int n)
	{
		std::vector<Coordinate> cs(static_cast<std::size_t>(n), Coordinate::read(0));
		return PowerMorphism(std::move(model), 1, std::move(cs));
	}

	/// φ_J ∘ Δ: X → Xⁿ, the small diagonal of X^J with the remaining
	/// coordinates pinned to the base point. J holds 0-based slots.
	static PowerMorphism subset_diagonal(ModelPtr model, int n, const std::vector<int> &J)
	{
		std::vector<Coordinate> cs(static_cast<std::size_t>(n), Coordinate::basepoint());
		for (int j : J)
			cs[static_cast<std::size_t>(j)] = Coordinate::read(0);
		return PowerMorphism(std::move(model), 1, std::move(cs));
	}

	/// δ⁽ⁿ⁾: Xⁿ → Xⁿ⁺¹ duplicating the last coordinate.
	static PowerMorphism duplicate_last(ModelPtr model, int n)
	{
		if (n < 1)
			throw ParameterError("duplicate_last needs n >= 1");
		std::vector<Coordinate> cs;
		for (int j = 0; j < n; ++j)
			cs.push_back(Coordinate::read(j));
		cs.push_back(Coordinate::read(n - 1));
		return PowerMorphism(std::move(model), n, std::move(cs));
	}

	/// ζ_J: X → X^m with the involution on the J coordinates (0-based).
	static PowerMorphism twisted_diagonal(ModelPtr model, int m, const std::vector<int> &J)
	{
		Endo sigma = model->involution();
		std::vector<Coordinate> cs(static_cast<std::size_t>(m), Coordinate::read(0));
		for (int j : J)
			cs[static_cast<std::size_t>(j)] = Coordinate::read(0, sigma);
		return PowerMorphism(std::move(model), 1, std::move(cs));
	}

	/// φ_{i,j}: X^m → X^{m+1}, inserting σ(x_i) before slot j (both 0-based,
	/// j in 0..m).
	static PowerMorphism twisted_insertion(ModelPtr model, int m, int i, int j)
	{
		if (i < 0 || i >= m || j < 0 || j > m)
			throw ParameterError("twisted insertion indices out of range");
		Endo sigma = model->involution();
		std::vector<Coordinate> cs;
		for (int k = 0; k < j; ++k)
			cs.push_back(Coordinate::read(k));
		cs.push_back(Coordinate::read(i, sigma));
		for (int k = j; k < m; ++k)
			cs.push_back(Coordinate::read(k));
		return PowerMorphism(std::move(model), m, std::move(cs));
	}

	/// The same automorphism applied to every slot of X^m.
	static PowerMorphism all_slots(ModelPtr model, int m, const Endo &twist)
	{
		std::vector<Coordinate> cs;
		for (int j = 0; j < m; ++j)
			cs.push_back(Coordinate::read(j, twist));
		return PowerMorphism(std::move(model), m, std::move(cs));
	}

	/// x ↦ (x, f(x)): X^m → X^{m+n}; its pushforward of [X^m] is the graph
	/// kernel of f.
	PowerMorphism graph_embedding() const
	{
		std::vector<Coordinate> cs;
		for (int j = 0; j < source_power_; ++j)
			cs.push_back(Coordinate::read(j));
		for (const auto &c : coords_)
			cs.push_back(c);
		return PowerMorphism(model_, source_power_, std::move(cs));
	}

	const ModelPtr &model() const { return model_; }
	int source_power() const { return source_power_; }
	int target_power() const { return static_cast<int>(coords_.size()); }
	const std::vector<Coordinate> &coords() const { return coords_; }

	/// outer ∘ inner as maps (inner runs first).
	friend PowerMorphism compose(const PowerMorphism &outer, const PowerMorphism &inner)
	{
		if (outer.model_ != inner.model_)
			throw ShapeError("composing morphisms over different models");
		if (outer.source_power_ != inner.target_power())
			throw ShapeError("composing morphisms with mismatched powers");
		std::vector<Coordinate> cs;
		for (const auto &oc : outer.coords_)
		{
			if (oc.is_basepoint())
			{
				cs.push_back(Coordinate::basepoint());
				continue;
			}
			const Coordinate &ic = inner.coords_[static_cast<std::size_t>(oc.source)];
			if (ic.is_basepoint())
				// the composite coordinate is the constant w(a); its class
				// action is still evaluation at the base point
				cs.push_back(Coordinate::basepoint());
			else
				cs.push_back(Coordinate::read(ic.source, Endo::compose_map(oc.twist, ic.twist)));
		}
		return PowerMorphism(outer.model_, inner.source_power_, std::move(cs));
	}

	/// f*(β): contravariant action on classes. Factors land in their source
	/// slots (multiplied there in target order), base-point coordinates
	/// contract against the unit coefficient, and reordering odd factors
	/// produces Koszul signs.
	TensorClass pullback(const TensorClass &beta) const
	{
		if (beta.model() != model_)
			throw ShapeError("pullback: class lives on a different model");
		if (beta.power() != target_power())
			throw ShapeError("pullback: class power " + std::to_string(beta.power()) +
			                 " does not match target power " + std::to_string(target_power()));
		const Model &m = *model_;
		int n = target_power();
		TensorClass out(model_, source_power_);
		for (const auto &[t, c0] : beta.terms())
		{
			Rational c = c0;
			// base-point contraction and reorder sign in one scan
			int sign_exp = 0;
			std::vector<int> seen_sources; // sources of odd read factors so far
			bool dead = false;
			for (int j = 0; j < n && !dead; ++j)
			{
				int bi = t[static_cast<std::size_t>(j)];
				const Coordinate &coord = coords_[static_cast<std::size_t>(j)];
				if (coord.is_basepoint())
				{
					if (m.odd(bi))
					{
						dead = true; // odd classes have no unit component
						break;
					}
					c *= m.unit_coeff(bi);
					if (c == 0)
						dead = true;
					continue;
				}
				if (m.odd(bi))
				{
					for (int s : seen_sources)
						if (s > coord.source)
							++sign_exp;
					seen_sources.push_back(coord.source);
				}
			}
			if (dead || c == 0)
				continue;
			if (sign_exp % 2)
				c = -c;
			// per-slot factor chains, multiplied in target order
			std::vector<SparseVec> slot(static_cast<std::size_t>(source_power_), m.unit());
			bool zero = false;
			for (int j = 0; j < n && !zero; ++j)
			{
				const Coordinate &coord = coords_[static_cast<std::size_t>(j)];
				if (coord.is_basepoint())
					continue;
				SparseVec f = coord.twist.apply(t[static_cast<std::size_t>(j)]);
				auto &dst = slot[static_cast<std::size_t>(coord.source)];
				dst = m.multiply(dst, f);
				if (dst.empty())
					zero = true;
			}
			if (zero)
				continue;
			// assemble the outer product
			std::vector<std::pair<TensorClass::Tuple, Rational>> partial{{{}, c}};
			for (int i = 0; i < source_power_; ++i)
			{
				std::vector<std::pair<TensorClass::Tuple, Rational>> next;
				next.reserve(partial.size() * slot[static_cast<std::size_t>(i)].size());
				for (auto &[tp, pc] : partial)
					for (const auto &[k, kc] : slot[static_cast<std::size_t>(i)])
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

	/// f_*(α), the pairing-adjoint of pullback: the unique class with
	/// ⟨f_*α, β⟩ = ⟨α, f*β⟩ for all β, solved against the dual basis of the
	/// target power. Candidate coefficients are enumerated per degree slice,
	/// which keeps the scan sparse.
	TensorClass pushforward(const TensorClass &alpha) const
	{
		if (alpha.model() != model_)
			throw ShapeError("pushforward: class lives on a different model");
		if (alpha.power() != source_power_)
			throw ShapeError("pushforward: class power " + std::to_string(alpha.power()) +
			                 " does not match source power " + std::to_string(source_power_));
		const Model &m = *model_;
		check_term_budget(static_cast<std::size_t>(m.size()), target_power(), "pushforward");
		if (is_selection())
			return pushforward_selection(alpha);
		int n = target_power();
		int top = m.top_degree();
		std::vector<std::vector<int>> reads(static_cast<std::size_t>(source_power_));
		std::vector<int> read_count(static_cast<std::size_t>(source_power_), 0);
		for (int j = 0; j < n; ++j)
			if (!coords_[static_cast<std::size_t>(j)].is_basepoint())
			{
				reads[static_cast<std::size_t>(coords_[static_cast<std::size_t>(j)].source)]
				    .push_back(j);
				++read_count[static_cast<std::size_t>(
				    coords_[static_cast<std::size_t>(j)].source)];
			}

		TensorClass out(model_, n);
		for (const auto &[s, c] : alpha.terms())
		{
			// unread source slots must carry top degree, else ⟨e_S, f*(·)⟩ = 0
			bool dead = false;
			std::vector<int> required(static_cast<std::size_t>(source_power_), 0);
			for (int i = 0; i < source_power_ && !dead; ++i)
			{
				int deg = m.degree(s[static_cast<std::size_t>(i)]);
				if (read_count[static_cast<std::size_t>(i)] == 0)
				{
					if (deg != top)
						dead = true;
				}
				else
					required[static_cast<std::size_t>(i)] =
					    top * (read_count[static_cast<std::size_t>(i)] - 1) + deg;
			}
			if (dead)
				continue;

			// DFS over target slots with per-source degree budgets
			TensorClass::Tuple tuple(static_cast<std::size_t>(n), 0);
			std::vector<int> used(static_cast<std::size_t>(source_power_), 0);
			std::vector<int> remaining = read_count;
			TensorClass alpha_term = TensorClass::basis(model_, s, c);
			enumerate(alpha_term, tuple, 0, used, remaining, required, out);
		}
		return out;
	}

	friend bool operator==(const PowerMorphism &a, const PowerMorphism &b)
	{
		if (a.model_ != b.model_ || a.source_power_ != b.source_power_ ||
		    a.coords_.size() != b.coords_.size())
			return false;
		for (std::size_t j = 0; j < a.coords_.size(); ++j)
		{
			const auto &ca = a.coords_[j], &cb = b.coords_[j];
			if (ca.source != cb.source || !(ca.twist == cb.twist))
				return false;
		}
		return true;
	}

  private:
	/// Untwisted injective slot selections (projections and permutations).
	bool is_selection() const
	{
		std::vector<bool> seen(static_cast<std::size_t>(source_power_), false);
		for (const auto &c : coords_)
		{
			if (c.is_basepoint() || !c.twist.is_identity())
				return false;
			if (seen[static_cast<std::size_t>(c.source)])
				return false;
			seen[static_cast<std::size_t>(c.source)] = true;
		}
		return true;
	}

	/// Selection pushforward in closed form: unread slots integrate out
	/// (nonzero only in the top degree, which is even, so they carry no
	/// sign), read slots permute with the Koszul sign of reordering the odd
	/// factors. Agrees with the adjunction solve; it just skips the scan.
	TensorClass pushforward_selection(const TensorClass &alpha) const
	{
		const Model &m = *model_;
		int n = target_power();
		int top = m.top_degree();
		std::vector<bool> read(static_cast<std::size_t>(source_power_), false);
		for (const auto &c : coords_)
			read[static_cast<std::size_t>(c.source)] = true;
		TensorClass out(model_, n);
		for (const auto &[s, c0] : alpha.terms())
		{
			Rational c = c0;
			bool dead = false;
			for (int i = 0; i < source_power_ && !dead; ++i)
			{
				if (read[static_cast<std::size_t>(i)])
					continue;
				int bi = s[static_cast<std::size_t>(i)];
				if (m.degree(bi) != top)
					dead = true;
				else
					c *= m.trace(bi);
			}
			if (dead || c == 0)
				continue;
			TensorClass::Tuple t(static_cast<std::size_t>(n));
			int sign_exp = 0;
			for (int j = 0; j < n; ++j)
				t[static_cast<std::size_t>(j)] =
				    s[static_cast<std::size_t>(coords_[static_cast<std::size_t>(j)].source)];
			for (int j = 0; j < n; ++j)
			{
				if (!m.odd(t[static_cast<std::size_t>(j)]))
					continue;
				for (int j2 = j + 1; j2 < n; ++j2)
					if (m.odd(t[static_cast<std::size_t>(j2)]) &&
					    coords_[static_cast<std::size_t>(j)].source >
					        coords_[static_cast<std::size_t>(j2)].source)
						++sign_exp;
			}
			if (sign_exp % 2)
				c = -c;
			out.add_term(t, c);
		}
		return out;
	}

	void enumerate(const TensorClass &alpha_term, TensorClass::Tuple &tuple, int j,
	               std::vector<int> &used, std::vector<int> &remaining,
	               const std::vector<int> &required, TensorClass &out) const
	{
		const Model &m = *model_;
		int n = target_power();
		if (j == n)
		{
			TensorClass eta = dual_tuple(tuple);
			Rational q = pairing(alpha_term, pullback(eta));
			if (q != 0)
				out.add_term(tuple, q);
			return;
		}
		const Coordinate &coord = coords_[static_cast<std::size_t>(j)];
		if (coord.is_basepoint())
		{
			for (int t : m.point_support())
			{
				tuple[static_cast<std::size_t>(j)] = t;
				enumerate(alpha_term, tuple, j + 1, used, remaining, required, out);
			}
			return;
		}
		std::size_t i = static_cast<std::size_t>(coord.source);
		int top = m.top_degree();
		int rest = remaining[i] - 1;
		for (int deg = 0; deg <= top; ++deg)
		{
			int after = required[i] - used[i] - deg;
			if (after < 0 || after > top * rest)
				continue;
			for (int t : m.basis_of_degree(deg))
			{
				tuple[static_cast<std::size_t>(j)] = t;
				used[i] += deg;
				remaining[i] = rest;
				enumerate(alpha_term, tuple, j + 1, used, remaining, required, out);
				used[i] -= deg;
				remaining[i] = rest + 1;
			}
		}
	}

	/// Dual basis element of a pure target tuple: ε_T · η_{T₁}⊗…⊗η_{Tₙ} with
	/// ε_T the Koszul sign of pairing the odd slots.
	TensorClass dual_tuple(const TensorClass::Tuple &t) const
	{
		const Model &m = *model_;
		int oddc = 0;
		for (int i : t)
			if (m.odd(i))
				++oddc;
		// ε = (−1)^{C(odd,2)}
		int exp = (oddc * (oddc - 1) / 2) % 2;
		std::vector<std::pair<TensorClass::Tuple, Rational>> partial{
		    {{}, Rational(exp ? -1 : 1)}};
		for (int i : t)
		{
			const SparseVec &d = m.dual(i);
			std::vector<std::pair<TensorClass::Tuple, Rational>> next;
			next.reserve(partial.size() * d.size());
			for (auto &[tp, pc] : partial)
				for (const auto &[k, kc] : d)
				{
					auto nt = tp;
					nt.push_back(k);
					next.emplace_back(std::move(nt), pc * kc);
				}
			partial = std::move(next);
		}
		TensorClass res(model_, static_cast<int>(t.size()));
		for (auto &[tuple, coeff] : partial)
			res.add_term(tuple, coeff);
		return res;
	}

	ModelPtr model_;
	int source_power_;
	std::vector<Coordinate> coords_;
};

/// A pointed morphism between different models, given by its pullback algebra
/// map; pushforward is the pairing adjoint, computed once per basis element.
/// Power versions act slotwise (both directions shift degrees evenly, so no
/// Koszul signs appear).
class ModelMorphism
{
  public:
	ModelMorphism(ModelPtr source, ModelPtr target, std::vector<SparseVec> pullback_images)
	    : source_(std::move(source)), target_(std::move(target)),
	      pull_(std::move(pullback_images))
	{
		if (!source_ || !target_)
			throw ParameterError("model morphism needs both models");
		if (static_cast<int>(pull_.size()) != target_->size())
			throw ParameterError("pullback image table size mismatch");
		compute_pushforward();
	}

	static ModelMorphism identity(ModelPtr m)
	{
		std::vector<SparseVec> img;
		for (int i = 0; i < m->size(); ++i)
			img.push_back({{i, Rational(1)}});
		return ModelMorphism(m, m, std::move(img));
	}

	/// Projection of a product model onto one factor (0 = first, 1 = second).
	static ModelMorphism projection(ModelPtr prod, int which)
	{
		if (prod->kind() != ModelKind::Product)
			throw ParameterError("projection needs a product model");
		ModelPtr target = which == 0 ? prod->factor_a() : prod->factor_b();
		ModelPtr other = which == 0 ? prod->factor_b() : prod->factor_a();
		int ou = other->unit()[0].first;
		Rational oc = other->unit()[0].second;
		std::vector<SparseVec> img;
		for (int t = 0; t < target->size(); ++t)
		{
			int pi = which == 0 ? prod->pair_index(t, ou) : prod->pair_index(ou, t);
			img.push_back({{pi, oc}});
		}
		return ModelMorphism(prod, std::move(target), std::move(img));
	}

	const ModelPtr &source() const { return source_; }
	const ModelPtr &target() const { return target_; }

	SparseVec pullback1(const SparseVec &beta) const
	{
		SparseVec r;
		for (auto &[i, c] : beta)
			sv_add_scaled(r, pull_[static_cast<std::size_t>(i)], c);
		return r;
	}

	SparseVec pushforward1(const SparseVec &alpha) const
	{
		SparseVec r;
		for (auto &[i, c] : alpha)
			sv_add_scaled(r, push_[static_cast<std::size_t>(i)], c);
		return r;
	}

	TensorClass pullback(const TensorClass &beta) const
	{
		if (beta.model() != target_)
			throw ShapeError("model-morphism pullback: wrong model");
		return map_slotwise(beta, source_, pull_);
	}

	TensorClass pushforward(const TensorClass &alpha) const
	{
		if (alpha.model() != source_)
			throw ShapeError("model-morphism pushforward: wrong model");
		return map_slotwise(alpha, target_, push_);
	}

	/// ∫_X f*(pt_Y): the degree of f when the dimensions agree (zero means
	/// not generically finite).
	Rational degree() const
	{
		SparseVec p = pullback1(target_->point_class());
		Rational r = 0;
		for (auto &[i, c] : p)
			r += c * source_->trace(i);
		return r;
	}

	bool is_pointed() const
	{
		return pushforward1(source_->point_class()) == target_->point_class();
	}

	/// f* is a unital algebra map (checked on all basis pairs).
	bool pullback_is_algebra_map() const
	{
		if (pullback1(target_->unit()) != source_->unit())
			return false;
		for (int i = 0; i < target_->size(); ++i)
			for (int j = 0; j < target_->size(); ++j)
			{
				SparseVec lhs = pullback1(target_->product(i, j));
				SparseVec rhs = source_->multiply(pull_[static_cast<std::size_t>(i)],
				                                  pull_[static_cast<std::size_t>(j)]);
				if (lhs != rhs)
					return false;
			}
		return true;
	}

  private:
	void compute_pushforward()
	{
		// f_*(e_s) = Σ_t ⟨e_s, f*(η_t)⟩_X · e_t
		push_.assign(static_cast<std::size_t>(source_->size()), {});
		for (int s = 0; s < source_->size(); ++s)
		{
			SparseVec img;
			for (int t = 0; t < target_->size(); ++t)
			{
				SparseVec pulled = pullback1(target_->dual(t));
				Rational q = 0;
				for (auto &[k, c] : pulled)
					q += c * source_->gram(s, k);
				if (q != 0)
					img.emplace_back(t, q);
			}
			sv_normalize(img);
			push_[static_cast<std::size_t>(s)] = std::move(img);
		}
	}

	static TensorClass map_slotwise(const TensorClass &x, const ModelPtr &out_model,
	                                const std::vector<SparseVec> &table)
	{
		TensorClass out(out_model, x.power());
		for (const auto &[t, c] : x.terms())
		{
			std::vector<std::pair<TensorClass::Tuple, Rational>> partial{{{}, c}};
			for (int i : t)
			{
				const SparseVec &img = table[static_cast<std::size_t>(i)];
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

	ModelPtr source_, target_;
	std::vector<SparseVec> pull_, push_;
};

} // namespace moddiag
