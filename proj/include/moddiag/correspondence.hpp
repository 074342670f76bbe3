#pragma once

#include "moddiag/error.hpp"
#include "moddiag/model.hpp"
#include "moddiag/morphism.hpp"
#include "moddiag/tensor.hpp"

#include <vector>

namespace moddiag {

/// The class on X² acting as the identity correspondence: Σ_j η_j ⊗ e_j with
/// {η_j} the right dual basis of the trace pairing. All other signs in the
/// engine are forced from this element through adjunction.
inline TensorClass diagonal_class(const ModelPtr &model)
{
	if (!model->pairing_ok())
		throw ModelError("diagonal class needs a perfect pairing on " + model->name());
	TensorClass out(model, 2);
	for (int j = 0; j < model->size(); ++j)
		for (const auto &[i, c] : model->dual(j))
		{
			TensorClass::Tuple t{i, j};
			out.add_term(t, c);
		}
	return out;
}

/// A correspondence from X^m to X^n: a kernel class on X^{m+n} (source slots
/// first) acting by pull–multiply–push through the two projections.
class Correspondence
{
  public:
	Correspondence(int source_power, int target_power, TensorClass kernel)
	    : source_power_(source_power), target_power_(target_power), kernel_(std::move(kernel))
	{
		if (kernel_.power() != source_power_ + target_power_)
			throw ShapeError("correspondence kernel power must be m+n");
	}

	static Correspondence identity(ModelPtr model, int m)
	{
		PowerMorphism d = PowerMorphism::identity(model, m).graph_embedding();
		return Correspondence(m, m, d.pushforward(TensorClass::fundamental(model, m)));
	}

	/// Kernel of the graph of a power morphism.
	static Correspondence graph(const PowerMorphism &f)
	{
		TensorClass k = f.graph_embedding().pushforward(
		    TensorClass::fundamental(f.model(), f.source_power()));
		return Correspondence(f.source_power(), f.target_power(), std::move(k));
	}

	const ModelPtr &model() const { return kernel_.model(); }
	int source_power() const { return source_power_; }
	int target_power() const { return target_power_; }
	const TensorClass &kernel() const { return kernel_; }

	/// p_{target,*}( p_source^*(α) · kernel ).
	TensorClass apply(const TensorClass &alpha) const
	{
		if (alpha.model() != model())
			throw ShapeError("correspondence applied to a class on another model");
		if (alpha.power() != source_power_)
			throw ShapeError("correspondence applied to a class of the wrong power");
		int m = source_power_, n = target_power_;
		std::vector<int> src(static_cast<std::size_t>(m));
		std::vector<int> tgt(static_cast<std::size_t>(n));
		for (int i = 0; i < m; ++i)
			src[static_cast<std::size_t>(i)] = i;
		for (int i = 0; i < n; ++i)
			tgt[static_cast<std::size_t>(i)] = m + i;
		PowerMorphism ps = PowerMorphism::projection(model(), m + n, src);
		PowerMorphism pt = PowerMorphism::projection(model(), m + n, tgt);
		return pt.pushforward(multiply(ps.pullback(alpha), kernel_));
	}

	friend bool operator==(const Correspondence &a, const Correspondence &b)
	{
		return a.source_power_ == b.source_power_ && a.target_power_ == b.target_power_ &&
		       a.kernel_ == b.kernel_;
	}

	Correspondence operator+(const Correspondence &o) const
	{
		return Correspondence(source_power_, target_power_, kernel_ + o.kernel_);
	}
	Correspondence operator-(const Correspondence &o) const
	{
		return Correspondence(source_power_, target_power_, kernel_ - o.kernel_);
	}

  private:
	int source_power_, target_power_;
	TensorClass kernel_;
};

/// pr_{XZ,*}( pr_XY^*(θ) · pr_YZ^*(ξ) ) on the triple power.
inline Correspondence compose_correspondences(const Correspondence &theta,
                                              const Correspondence &xi)
{
	if (theta.model() != xi.model())
		throw ShapeError("composing correspondences over different models");
	if (theta.target_power() != xi.source_power())
		throw ShapeError("composing correspondences with mismatched middle powers");
	const ModelPtr &model = theta.model();
	int a = theta.source_power(), b = theta.target_power(), c = xi.target_power();
	check_term_budget(static_cast<std::size_t>(model->size()), a + b + c,
	                  "correspondence composition");
	std::vector<int> xy, yz, xz;
	for (int i = 0; i < a + b; ++i)
		xy.push_back(i);
	for (int i = a; i < a + b + c; ++i)
		yz.push_back(i);
	for (int i = 0; i < a; ++i)
		xz.push_back(i);
	for (int i = a + b; i < a + b + c; ++i)
		xz.push_back(i);
	PowerMorphism pxy = PowerMorphism::projection(model, a + b + c, xy);
	PowerMorphism pyz = PowerMorphism::projection(model, a + b + c, yz);
	PowerMorphism pxz = PowerMorphism::projection(model, a + b + c, xz);
	TensorClass prod = multiply(pxy.pullback(theta.kernel()), pyz.pullback(xi.kernel()));
	return Correspondence(a, c, pxz.pushforward(prod));
}

} // namespace moddiag
