// Computes modified diagonals of a few builtin models and prints the smallest
// power at which they vanish, next to the dimension count d + e + 1.

#include "moddiag/moddiag.hpp"

#include <cstdio>

using namespace moddiag;

int main()
{
	for (const ModelPtr &m :
	     {Model::curve(0), Model::curve(1), Model::curve(2), Model::abelian(2), Model::k3(4),
	      Model::product(Model::curve(1), Model::curve(1))})
	{
		auto t = vanishing_threshold(m, 5);
		int e = albanese_image_dim(m);
		std::printf("%-34s d=%d e=%d  threshold=%s  d+e+1=%d\n", m->name().c_str(),
		            m->dimension(), e, t ? std::to_string(*t).c_str() : "none",
		            m->dimension() + e + 1);
	}
	// a nonzero example, written out
	ModelPtr elliptic = Model::curve(1);
	GammaResult g2 = modified_diagonal(elliptic, 2);
	std::printf("\nGamma^2 on %s:\n%s\n", elliptic->name().c_str(),
	            class_to_json(g2.result).dump(2).c_str());
	return 0;
}
