#pragma once

#include "moddiag/error.hpp"
#include "moddiag/linalg.hpp"
#include "moddiag/rational.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace moddiag {

/// Sparse algebra element: (basis index, coefficient) pairs, strictly
/// increasing indices, no zero coefficients. The canonical form makes
/// equality structural.
using SparseVec = std::vector<std::pair<int, Rational>>;

inline void sv_normalize(SparseVec &v)
{
	std::sort(v.begin(), v.end(), [](auto &a, auto &b) { return a.first < b.first; });
	SparseVec out;
	out.reserve(v.size());
	for (auto &[i, c] : v)
	{
		if (!out.empty() && out.back().first == i)
			out.back().second += c;
		else
			out.emplace_back(i, c);
	}
	out.erase(std::remove_if(out.begin(), out.end(), [](auto &p) { return p.second == 0; }),
	          out.end());
	v = std::move(out);
}

inline void sv_add_scaled(SparseVec &dst, const SparseVec &src, const Rational &scale)
{
	if (scale == 0 || src.empty())
		return;
	SparseVec merged;
	merged.reserve(dst.size() + src.size());
	std::size_t i = 0, j = 0;
	while (i < dst.size() || j < src.size())
	{
		if (j == src.size() || (i < dst.size() && dst[i].first < src[j].first))
			merged.push_back(dst[i++]);
		else if (i == dst.size() || src[j].first < dst[i].first)
			merged.emplace_back(src[j].first, scale * src[j].second), ++j;
		else
		{
			Rational c = dst[i].second + scale * src[j].second;
			if (c != 0)
				merged.emplace_back(dst[i].first, std::move(c));
			++i, ++j;
		}
	}
	dst = std::move(merged);
}

inline SparseVec sv_scaled(const SparseVec &v, const Rational &s)
{
	if (s == 0)
		return {};
	SparseVec r = v;
	for (auto &[i, c] : r)
		c *= s;
	return r;
}

inline Rational sv_coeff(const SparseVec &v, int index)
{
	auto it = std::lower_bound(v.begin(), v.end(), index,
	                           [](const auto &p, int k) { return p.first < k; });
	return (it != v.end() && it->first == index) ? it->second : Rational(0);
}

struct BasisElement {
	std::string id;
	int degree = 0;
};

enum class ModelKind { Point, Curve, Abelian, K3Surface, Product, Custom };

inline const char *to_string(ModelKind k)
{
	switch (k)
	{
	case ModelKind::Point:
		return "point";
	case ModelKind::Curve:
		return "curve";
	case ModelKind::Abelian:
		return "abelian";
	case ModelKind::K3Surface:
		return "k3surface";
	case ModelKind::Product:
		return "product";
	default:
		return "custom";
	}
}

class Model;

/// Raw model description. Products may be given for one ordering of a basis
/// pair only; the missing mirror entry is completed with the Koszul sign.
struct ModelData {
	std::string name;
	ModelKind kind = ModelKind::Custom;
	int dimension = 0; // d, so the top cohomological degree is 2d
	std::vector<BasisElement> basis;
	std::map<std::pair<int, int>, SparseVec> products;
	std::map<int, Rational> trace;
	std::optional<std::vector<SparseVec>> involution; // image of each basis element
	std::optional<int> albanese_e;
	int abelian_genus = 0; // meaningful for kind == Abelian
	std::shared_ptr<const Model> factor_a, factor_b; // meaningful for kind == Product
};

/// A degree-preserving linear endomorphism of a model, stored by its action
/// on classes (the pullback matrix when the endo comes from a map of the
/// variety). Copies are cheap; the image table is shared.
class Endo
{
  public:
	Endo() = default;

	static Endo identity() { return Endo(); }

	static Endo from_images(std::vector<SparseVec> images)
	{
		Endo e;
		e.img_ = std::make_shared<const std::vector<SparseVec>>(std::move(images));
		return e;
	}

	bool is_identity() const { return img_ == nullptr; }

	SparseVec apply(int i) const
	{
		if (!img_)
			return {{i, Rational(1)}};
		return (*img_)[static_cast<std::size_t>(i)];
	}

	SparseVec apply(const SparseVec &v) const
	{
		if (!img_)
			return v;
		SparseVec r;
		for (auto &[i, c] : v)
			sv_add_scaled(r, (*img_)[static_cast<std::size_t>(i)], c);
		return r;
	}

	/// Matrix of the composite map outer∘inner acting on classes. Class
	/// actions are pullbacks, which compose contravariantly, so the stored
	/// matrix is inner's applied after outer's.
	static Endo compose_map(const Endo &outer, const Endo &inner)
	{
		if (outer.is_identity())
			return inner;
		if (inner.is_identity())
			return outer;
		std::vector<SparseVec> images;
		images.reserve(outer.img_->size());
		for (const auto &col : *outer.img_)
			images.push_back(inner.apply(col));
		return from_images(std::move(images));
	}

	friend bool operator==(const Endo &a, const Endo &b)
	{
		if (a.is_identity() && b.is_identity())
			return true;
		if (a.is_identity())
			return b.acts_as_identity();
		if (b.is_identity())
			return a.acts_as_identity();
		return *a.img_ == *b.img_;
	}

	bool acts_as_identity() const
	{
		if (!img_)
			return true;
		for (std::size_t i = 0; i < img_->size(); ++i)
			if ((*img_)[i] != SparseVec{{static_cast<int>(i), Rational(1)}})
				return false;
		return true;
	}

  private:
	std::shared_ptr<const std::vector<SparseVec>> img_; // null means identity
};

struct Violation {
	std::string check;
	std::string detail;
};

/// A pointed graded Frobenius-algebra realization of a variety: ordered
/// homogeneous basis, super-commutative product table, trace supported in the
/// top degree, and derived data (Gram duals, unit, point class) computed
/// eagerly so instances are immutable and freely shareable across threads.
///
/// Construction succeeds on algebraically broken data (so validate() can
/// report the laws that fail); operations needing derived data throw
/// ModelError when it could not be computed.
class Model : public std::enable_shared_from_this<Model>
{
  public:
	static std::shared_ptr<const Model> create(ModelData data)
	{
		return std::shared_ptr<const Model>(new Model(std::move(data)));
	}

	static std::shared_ptr<const Model> point();
	static std::shared_ptr<const Model> curve(int genus);
	static std::shared_ptr<const Model> abelian(int genus);
	static std::shared_ptr<const Model> k3(int rho);
	static std::shared_ptr<const Model> product(std::shared_ptr<const Model> a,
	                                            std::shared_ptr<const Model> b);

	const std::string &name() const { return data_.name; }
	ModelKind kind() const { return data_.kind; }
	int dimension() const { return data_.dimension; }
	int top_degree() const { return 2 * data_.dimension; }
	int size() const { return static_cast<int>(data_.basis.size()); }
	int degree(int i) const { return data_.basis[static_cast<std::size_t>(i)].degree; }
	bool odd(int i) const { return degree(i) % 2 != 0; }
	const std::string &id(int i) const { return data_.basis[static_cast<std::size_t>(i)].id; }
	int abelian_genus() const { return data_.abelian_genus; }
	std::optional<int> albanese_override() const { return data_.albanese_e; }

	int index(const std::string &id) const
	{
		auto it = index_.find(id);
		return it == index_.end() ? -1 : it->second;
	}

	int index_checked(const std::string &id) const
	{
		int i = index(id);
		if (i < 0)
			throw ParameterError("unknown basis id '" + id + "' in model " + name());
		return i;
	}

	const SparseVec &product(int i, int j) const
	{
		return table_[static_cast<std::size_t>(i) * data_.basis.size() +
		              static_cast<std::size_t>(j)];
	}

	/// Product of two sparse elements.
	SparseVec multiply(const SparseVec &x, const SparseVec &y) const
	{
		SparseVec r;
		for (auto &[i, a] : x)
			for (auto &[j, b] : y)
				sv_add_scaled(r, product(i, j), a * b);
		return r;
	}

	const Rational &trace(int i) const { return trace_[static_cast<std::size_t>(i)]; }

	Rational trace(const SparseVec &v) const
	{
		Rational r = 0;
		for (auto &[i, c] : v)
			r += c * trace_[static_cast<std::size_t>(i)];
		return r;
	}

	/// τ(e_i · e_j), the Gram pairing.
	const Rational &gram(int i, int j) const
	{
		return gram_[static_cast<std::size_t>(i) * data_.basis.size() +
		             static_cast<std::size_t>(j)];
	}

	const std::vector<int> &basis_of_degree(int deg) const
	{
		static const std::vector<int> empty;
		if (deg < 0 || deg > top_degree())
			return empty;
		return by_degree_[static_cast<std::size_t>(deg)];
	}

	bool has_involution() const { return static_cast<bool>(involution_); }

	const Endo &involution() const
	{
		if (!involution_)
			throw ModelError("model " + name() + " has no involution");
		return *involution_;
	}

	/// Degree-1 generators scaled by k (so degree-j classes scale by k^j);
	/// the class action of multiplication by k on an abelian model.
	Endo mult_endo(Integer k) const
	{
		if (data_.kind != ModelKind::Abelian)
			throw ParameterError("mult(k) twists exist on abelian models only");
		std::vector<SparseVec> images;
		images.reserve(data_.basis.size());
		for (int i = 0; i < size(); ++i)
			images.push_back({{i, Rational(integer_pow(k, degree(i)))}});
		return Endo::from_images(std::move(images));
	}

	bool pairing_ok() const { return pairing_ok_; }

	/// Right dual basis: ⟨e_s, dual(i)⟩ = δ_{si}.
	const SparseVec &dual(int i) const
	{
		require_pairing();
		return dual_[static_cast<std::size_t>(i)];
	}

	bool unit_ok() const { return unit_ok_; }

	const SparseVec &unit() const
	{
		if (!unit_ok_)
			throw ModelError("model " + name() + " has no (unique, rank-one) unit");
		return unit_;
	}

	/// Scalar λ with the degree-0 part of v equal to λ·unit.
	Rational unit_coeff(const SparseVec &v) const
	{
		if (!unit_ok_)
			throw ModelError("model " + name() + " has no (unique, rank-one) unit");
		Rational r = 0;
		for (auto &[i, c] : v)
			r += c * unit_coeff_[static_cast<std::size_t>(i)];
		return r;
	}

	Rational unit_coeff(int i) const
	{
		if (!unit_ok_)
			throw ModelError("model " + name() + " has no (unique, rank-one) unit");
		return unit_coeff_[static_cast<std::size_t>(i)];
	}

	bool point_ok() const { return point_ok_; }

	/// The canonical trace-1 top-degree class.
	const SparseVec &point_class() const
	{
		if (!point_ok_)
			throw ModelError("model " + name() + " has no canonical point class");
		return point_;
	}

	/// Basis indices whose dual has a nonzero unit coefficient. These are the
	/// only indices a base-point coordinate can produce under pushforward.
	const std::vector<int> &point_support() const
	{
		require_pairing();
		return point_support_;
	}

	const ModelData &data() const { return data_; }

	// product-model bookkeeping
	const std::shared_ptr<const Model> &factor_a() const { return data_.factor_a; }
	const std::shared_ptr<const Model> &factor_b() const { return data_.factor_b; }
	int pair_index(int ia, int ib) const
	{
		return ia * data_.factor_b->size() + ib;
	}
	std::pair<int, int> split_index(int i) const
	{
		int nb = data_.factor_b->size();
		return {i / nb, i % nb};
	}

  private:
	explicit Model(ModelData data) : data_(std::move(data))
	{
		check_structure();
		complete_products();
		build_table();
		compute_gram();
		compute_duals();
		compute_unit();
		compute_point();
	}

	void require_pairing() const
	{
		if (!pairing_ok_)
			throw ModelError("model " + name() + " has a degenerate trace pairing");
	}

	void check_structure()
	{
		if (data_.dimension < 0)
			throw ParameterError("negative dimension");
		int n = static_cast<int>(data_.basis.size());
		if (n == 0)
			throw ParameterError("empty basis");
		for (int i = 0; i < n; ++i)
		{
			const auto &b = data_.basis[static_cast<std::size_t>(i)];
			if (b.degree < 0 || b.degree > 2 * data_.dimension)
				throw ParameterError("basis element '" + b.id + "' has degree out of range");
			if (!index_.emplace(b.id, i).second)
				throw ParameterError("duplicate basis id '" + b.id + "'");
		}
		auto check_index = [&](int i) {
			if (i < 0 || i >= n)
				throw ParameterError("basis index out of range in model data");
		};
		for (auto &[key, vec] : data_.products)
		{
			check_index(key.first);
			check_index(key.second);
			for (auto &[i, c] : vec)
				check_index(i);
		}
		for (auto &[i, c] : data_.trace)
			check_index(i);
		if (data_.involution && static_cast<int>(data_.involution->size()) != n)
			throw ParameterError("involution table size mismatch");
		by_degree_.assign(static_cast<std::size_t>(2 * data_.dimension) + 1, {});
		for (int i = 0; i < n; ++i)
			by_degree_[static_cast<std::size_t>(degree(i))].push_back(i);
		if (data_.involution)
			involution_ = Endo::from_images(*data_.involution);
	}

	void complete_products()
	{
		for (auto &[key, vec] : data_.products)
			sv_normalize(vec);
		std::map<std::pair<int, int>, SparseVec> completed = data_.products;
		for (const auto &[key, vec] : data_.products)
		{
			auto mirror = std::make_pair(key.second, key.first);
			if (completed.count(mirror))
				continue;
			int sign = (odd(key.first) && odd(key.second)) ? -1 : 1;
			completed[mirror] = sv_scaled(vec, Rational(sign));
		}
		data_.products = std::move(completed);
	}

	void build_table()
	{
		std::size_t n = data_.basis.size();
		table_.assign(n * n, {});
		for (const auto &[key, vec] : data_.products)
			table_[static_cast<std::size_t>(key.first) * n +
			       static_cast<std::size_t>(key.second)] = vec;
		trace_.assign(n, Rational(0));
		for (const auto &[i, c] : data_.trace)
			trace_[static_cast<std::size_t>(i)] = c;
	}

	void compute_gram()
	{
		std::size_t n = data_.basis.size();
		gram_.assign(n * n, Rational(0));
		for (std::size_t i = 0; i < n; ++i)
			for (std::size_t j = 0; j < n; ++j)
				gram_[i * n + j] = trace(table_[i * n + j]);
	}

	// Per complementary-degree block: dual(i) = Σ_s M[i][s]·e_s with
	// Σ_s gram(t,s)·M[i][s] = δ_{ti}, i.e. M = (Gᵀ)⁻¹ restricted to the block.
	void compute_duals()
	{
		std::size_t n = data_.basis.size();
		dual_.assign(n, {});
		pairing_ok_ = true;
		int top = top_degree();
		for (int deg = 0; 2 * deg <= top; ++deg)
		{
			const auto &rows = basis_of_degree(deg);
			const auto &cols = basis_of_degree(top - deg);
			if (rows.size() != cols.size())
			{
				pairing_ok_ = false;
				continue;
			}
			if (rows.empty())
				continue;
			std::size_t k = rows.size();
			Matrix g(k, std::vector<Rational>(k));
			for (std::size_t a = 0; a < k; ++a)
				for (std::size_t b = 0; b < k; ++b)
					g[a][b] = gram(rows[a], cols[b]);
			auto inv = invert(g); // inv = G⁻¹ for this block
			if (!inv)
			{
				pairing_ok_ = false;
				continue;
			}
			// dual(rows[a]) lives in the complementary degree:
			// ⟨rows[t], Σ_b M_ab·cols[b]⟩ = Σ_b G_tb·M_ab = δ_ta  ⇒  M = (Gᵀ)⁻¹.
			for (std::size_t a = 0; a < k; ++a)
			{
				SparseVec d;
				for (std::size_t b = 0; b < k; ++b)
				{
					const Rational &v = (*inv)[b][a]; // (Gᵀ)⁻¹[a][b] = G⁻¹[b][a]
					if (v != 0)
						d.emplace_back(cols[b], v);
				}
				sv_normalize(d);
				dual_[static_cast<std::size_t>(rows[a])] = std::move(d);
			}
			if (2 * deg != top)
			{
				// complementary block: ⟨cols[t], Σ_b N_ab·rows[b]⟩ = δ_ta
				Matrix h(k, std::vector<Rational>(k));
				for (std::size_t a = 0; a < k; ++a)
					for (std::size_t b = 0; b < k; ++b)
						h[a][b] = gram(cols[a], rows[b]);
				auto hinv = invert(h);
				if (!hinv)
				{
					pairing_ok_ = false;
					continue;
				}
				for (std::size_t a = 0; a < k; ++a)
				{
					SparseVec d;
					for (std::size_t b = 0; b < k; ++b)
					{
						const Rational &v = (*hinv)[b][a];
						if (v != 0)
							d.emplace_back(rows[b], v);
					}
					sv_normalize(d);
					dual_[static_cast<std::size_t>(cols[a])] = std::move(d);
				}
			}
		}
	}

	// Solve u·e_j = e_j for all j among degree-0 combinations; requires the
	// degree-0 part to be one-dimensional (connected realization).
	void compute_unit()
	{
		unit_ok_ = false;
		const auto &deg0 = basis_of_degree(0);
		if (deg0.size() != 1)
			return;
		std::size_t n = data_.basis.size();
		int u = deg0[0];
		// u acts invertibly-as-identity iff c·(e_u·e_j) = e_j has a solution c.
		const SparseVec &ue = product(u, u);
		Rational cu = sv_coeff(ue, u);
		if (cu == 0)
			return;
		Rational c = 1 / cu; // candidate unit = c·e_u
		for (std::size_t j = 0; j < n; ++j)
		{
			SparseVec lhs = sv_scaled(product(u, static_cast<int>(j)), c);
			SparseVec rhs{{static_cast<int>(j), Rational(1)}};
			if (lhs != rhs)
				return;
		}
		unit_ = {{u, c}};
		unit_coeff_.assign(n, Rational(0));
		unit_coeff_[static_cast<std::size_t>(u)] = cu; // e_u = cu·unit
		unit_ok_ = true;
	}

	void compute_point()
	{
		point_ok_ = false;
		point_support_.clear();
		const auto &top = basis_of_degree(top_degree());
		if (top.size() != 1 || !unit_ok_)
			return;
		int t = top[0];
		const Rational &tr = trace_[static_cast<std::size_t>(t)];
		if (tr == 0)
			return;
		point_ = {{t, 1 / tr}};
		point_ok_ = true;
		if (pairing_ok_)
			for (int i = 0; i < size(); ++i)
			{
				Rational uc = 0;
				for (auto &[j, c] : dual_[static_cast<std::size_t>(i)])
					uc += c * unit_coeff_[static_cast<std::size_t>(j)];
				if (uc != 0)
					point_support_.push_back(i);
			}
	}

	ModelData data_;
	std::map<std::string, int> index_;
	std::vector<std::vector<int>> by_degree_;
	std::vector<SparseVec> table_; // dense (i,j) -> product expansion
	std::vector<Rational> trace_;
	std::vector<Rational> gram_;
	std::vector<SparseVec> dual_;
	SparseVec unit_;
	std::vector<Rational> unit_coeff_;
	SparseVec point_;
	std::vector<int> point_support_;
	std::optional<Endo> involution_;
	bool pairing_ok_ = false;
	bool unit_ok_ = false;
	bool point_ok_ = false;
};

using ModelPtr = std::shared_ptr<const Model>;

inline ModelPtr Model::point()
{
	ModelData d;
	d.name = "point";
	d.kind = ModelKind::Point;
	d.dimension = 0;
	d.basis = {{"1", 0}};
	d.products[{0, 0}] = {{0, Rational(1)}};
	d.trace[0] = 1;
	return create(std::move(d));
}

inline ModelPtr Model::curve(int genus)
{
	if (genus < 0)
		throw ParameterError("curve genus must be >= 0");
	ModelData d;
	d.name = "curve_g" + std::to_string(genus);
	d.kind = ModelKind::Curve;
	d.dimension = 1;
	d.basis.push_back({"1", 0});
	for (int i = 1; i <= genus; ++i)
		d.basis.push_back({"a" + std::to_string(i), 1});
	for (int i = 1; i <= genus; ++i)
		d.basis.push_back({"b" + std::to_string(i), 1});
	d.basis.push_back({"pt", 2});
	int pt = static_cast<int>(d.basis.size()) - 1;
	for (int i = 0; i <= pt; ++i)
	{
		d.products[{0, i}] = {{i, Rational(1)}};
		if (i != 0)
			d.products[{i, 0}] = {{i, Rational(1)}};
	}
	for (int i = 1; i <= genus; ++i)
	{
		int a = i, b = genus + i;
		d.products[{a, b}] = {{pt, Rational(1)}};
		d.products[{b, a}] = {{pt, Rational(-1)}};
	}
	d.trace[pt] = 1;
	return create(std::move(d));
}

inline ModelPtr Model::abelian(int genus)
{
	if (genus < 1)
		throw ParameterError("abelian genus must be >= 1");
	int g2 = 2 * genus;
	if (g2 > 20)
		throw ParameterError("abelian genus too large for desk scale");
	ModelData d;
	d.name = "abelian_g" + std::to_string(genus);
	d.kind = ModelKind::Abelian;
	d.dimension = genus;
	d.abelian_genus = genus;
	// basis indexed by subsets of the 2g degree-1 generators, sorted by
	// (popcount, mask) so degrees are grouped
	std::vector<unsigned> masks;
	for (unsigned m = 0; m < (1u << g2); ++m)
		masks.push_back(m);
	std::stable_sort(masks.begin(), masks.end(), [](unsigned a, unsigned b) {
		int pa = __builtin_popcount(a), pb = __builtin_popcount(b);
		return pa != pb ? pa < pb : a < b;
	});
	std::map<unsigned, int> of_mask;
	for (std::size_t k = 0; k < masks.size(); ++k)
	{
		unsigned m = masks[k];
		std::string id;
		if (m == 0)
			id = "1";
		else
			for (int i = 0; i < g2; ++i)
				if (m & (1u << i))
					id += (id.empty() ? "" : "^") + std::string("x") + std::to_string(i + 1);
		d.basis.push_back({id, __builtin_popcount(m)});
		of_mask[m] = static_cast<int>(k);
	}
	auto merge_sign = [&](unsigned s, unsigned t) {
		// sign of sorting the concatenation (s generators, then t generators)
		int inv = 0;
		for (int i = 0; i < g2; ++i)
			if (t & (1u << i))
				inv += __builtin_popcount(s >> (i + 1));
		return inv % 2 == 0 ? 1 : -1;
	};
	for (unsigned s = 0; s < (1u << g2); ++s)
		for (unsigned t = 0; t < (1u << g2); ++t)
		{
			if (s & t)
				continue;
			d.products[{of_mask[s], of_mask[t]}] = {
			    {of_mask[s | t], Rational(merge_sign(s, t))}};
		}
	d.trace[of_mask[(1u << g2) - 1]] = 1;
	return create(std::move(d));
}

inline ModelPtr Model::k3(int rho)
{
	if (rho < 1)
		throw ParameterError("k3 middle rank must be >= 1");
	ModelData d;
	d.name = "k3_rho" + std::to_string(rho);
	d.kind = ModelKind::K3Surface;
	d.dimension = 2;
	d.basis.push_back({"1", 0});
	for (int i = 1; i <= rho; ++i)
		d.basis.push_back({"u" + std::to_string(i), 2});
	d.basis.push_back({"pt", 4});
	int pt = rho + 1;
	for (int i = 0; i <= pt; ++i)
	{
		d.products[{0, i}] = {{i, Rational(1)}};
		if (i != 0)
			d.products[{i, 0}] = {{i, Rational(1)}};
	}
	for (int i = 1; i <= rho; ++i)
		d.products[{i, i}] = {{pt, Rational(1)}}; // diagonal (+1) middle pairing
	d.trace[pt] = 1;
	return create(std::move(d));
}

inline ModelPtr Model::product(ModelPtr a, ModelPtr b)
{
	if (!a || !b)
		throw ParameterError("product of null models");
	ModelData d;
	d.name = "product(" + a->name() + "," + b->name() + ")";
	d.kind = ModelKind::Product;
	d.dimension = a->dimension() + b->dimension();
	d.factor_a = a;
	d.factor_b = b;
	int na = a->size(), nb = b->size();
	for (int ia = 0; ia < na; ++ia)
		for (int ib = 0; ib < nb; ++ib)
			d.basis.push_back({a->id(ia) + "|" + b->id(ib), a->degree(ia) + b->degree(ib)});
	auto pair_index = [&](int ia, int ib) { return ia * nb + ib; };
	// (x⊗y)(x'⊗y') = (-1)^{|y||x'|} xx' ⊗ yy'
	for (int ia = 0; ia < na; ++ia)
		for (int ib = 0; ib < nb; ++ib)
			for (int ja = 0; ja < na; ++ja)
				for (int jb = 0; jb < nb; ++jb)
				{
					const SparseVec &pa = a->product(ia, ja);
					if (pa.empty())
						continue;
					const SparseVec &pb = b->product(ib, jb);
					if (pb.empty())
						continue;
					int sign = (b->odd(ib) && a->odd(ja)) ? -1 : 1;
					SparseVec out;
					for (auto &[ka, ca] : pa)
						for (auto &[kb, cb] : pb)
							out.emplace_back(pair_index(ka, kb), Rational(sign) * ca * cb);
					sv_normalize(out);
					if (!out.empty())
						d.products[{pair_index(ia, ib), pair_index(ja, jb)}] = std::move(out);
				}
	for (int ia = 0; ia < na; ++ia)
		for (int ib = 0; ib < nb; ++ib)
		{
			Rational t = a->trace(ia) * b->trace(ib);
			if (t != 0)
				d.trace[pair_index(ia, ib)] = t;
		}
	if (a->has_involution() && b->has_involution())
	{
		std::vector<SparseVec> inv(static_cast<std::size_t>(na * nb));
		for (int ia = 0; ia < na; ++ia)
			for (int ib = 0; ib < nb; ++ib)
			{
				SparseVec va = a->involution().apply(ia);
				SparseVec vb = b->involution().apply(ib);
				SparseVec out;
				for (auto &[ka, ca] : va)
					for (auto &[kb, cb] : vb)
						out.emplace_back(pair_index(ka, kb), ca * cb);
				sv_normalize(out);
				inv[static_cast<std::size_t>(pair_index(ia, ib))] = std::move(out);
			}
		d.involution = std::move(inv);
	}
	if (a->albanese_override() || b->albanese_override())
	{
		int ea = a->albanese_override().value_or(-1);
		int eb = b->albanese_override().value_or(-1);
		if (ea >= 0 && eb >= 0)
			d.albanese_e = ea + eb;
	}
	return create(std::move(d));
}

inline std::shared_ptr<const Model> build_builtin_model(const std::string &kind,
                                                        const std::vector<int> &params)
{
	auto want = [&](std::size_t n) {
		if (params.size() != n)
			throw ParameterError("builtin '" + kind + "' takes " + std::to_string(n) +
			                     " parameter(s)");
	};
	if (kind == "point")
	{
		want(0);
		return Model::point();
	}
	if (kind == "curve")
	{
		want(1);
		return Model::curve(params[0]);
	}
	if (kind == "abelian")
	{
		want(1);
		return Model::abelian(params[0]);
	}
	if (kind == "k3surface" || kind == "k3")
	{
		want(1);
		return Model::k3(params[0]);
	}
	throw ParameterError("unknown builtin model kind '" + kind + "'");
}

/// Checks every algebra law the engine relies on; an empty list means the
/// model is valid. Violations are data, not errors.
inline std::vector<Violation> validate(const Model &m)
{
	std::vector<Violation> out;
	int n = m.size();
	int top = m.top_degree();

	// product degrees are additive (and silently truncated above 2d)
	for (int i = 0; i < n; ++i)
		for (int j = 0; j < n; ++j)
			for (auto &[k, c] : m.product(i, j))
				if (m.degree(k) != m.degree(i) + m.degree(j))
					out.push_back({"graded-product", "product " + m.id(i) + "*" + m.id(j) +
					                                     " hits wrong degree at " + m.id(k)});

	// super-commutativity on all pairs
	for (int i = 0; i < n; ++i)
		for (int j = i; j < n; ++j)
		{
			int sign = (m.odd(i) && m.odd(j)) ? -1 : 1;
			if (m.product(j, i) != sv_scaled(m.product(i, j), Rational(sign)))
			{
				out.push_back({"super-commutativity",
				               m.id(i) + "," + m.id(j) + " violate the Koszul sign law"});
			}
		}

	// associativity; skip inner loops when both routes are forced zero
	for (int i = 0; i < n; ++i)
		for (int j = 0; j < n; ++j)
		{
			const SparseVec &ij = m.product(i, j);
			for (int k = 0; k < n; ++k)
			{
				const SparseVec &jk = m.product(j, k);
				if (ij.empty() && jk.empty())
					continue;
				SparseVec left;
				for (auto &[t, c] : ij)
					sv_add_scaled(left, m.product(t, k), c);
				SparseVec right;
				for (auto &[t, c] : jk)
					sv_add_scaled(right, m.product(i, t), c);
				if (left != right)
					out.push_back({"associativity", "(" + m.id(i) + "*" + m.id(j) + ")*" +
					                                    m.id(k) + " != " + m.id(i) + "*(" +
					                                    m.id(j) + "*" + m.id(k) + ")"});
			}
		}

	if (!m.unit_ok())
		out.push_back({"unit", "no one-dimensional degree-0 unit"});

	for (int i = 0; i < n; ++i)
		if (m.trace(i) != 0 && m.degree(i) != top)
			out.push_back({"trace-support", "trace nonzero on " + m.id(i) +
			                                    " outside degree " + std::to_string(top)});

	if (!m.pairing_ok())
		out.push_back({"perfect-pairing", "the Gram pairing is degenerate"});

	if (!m.point_ok())
		out.push_back({"point-class", "no rank-one top degree with nonzero trace"});

	if (m.has_involution())
	{
		const Endo &s = m.involution();
		for (int i = 0; i < n; ++i)
		{
			for (auto &[j, c] : s.apply(i))
				if (m.degree(j) != m.degree(i))
					out.push_back({"involution-degree",
					               "involution moves " + m.id(i) + " across degrees"});
			SparseVec twice = s.apply(s.apply(i));
			if (twice != SparseVec{{i, Rational(1)}})
				out.push_back({"involution-order", "involution squared is not the identity at " +
				                                       m.id(i)});
			if (m.trace(s.apply(i)) != m.trace(i))
				out.push_back({"involution-trace", "involution does not preserve the trace at " +
				                                       m.id(i)});
		}
		for (int i = 0; i < n; ++i)
			for (int j = 0; j < n; ++j)
			{
				SparseVec lhs = s.apply(m.product(i, j));
				SparseVec rhs = m.multiply(s.apply(i), s.apply(j));
				if (lhs != rhs)
					out.push_back({"involution-product",
					               "involution fails multiplicativity on " + m.id(i) + "," +
					                   m.id(j)});
			}
		if (m.point_ok() && s.apply(m.point_class()) != m.point_class())
			out.push_back({"involution-point", "involution moves the point class"});
	}

	if (m.albanese_override() && (*m.albanese_override() < 0 ||
	                              *m.albanese_override() > m.dimension()))
		out.push_back({"albanese-range", "albanese override outside 0..d"});

	return out;
}

} // namespace moddiag
