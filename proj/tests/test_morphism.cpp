#include "moddiag/correspondence.hpp"
#include "moddiag/double_cover.hpp"
#include "moddiag/model.hpp"
#include "moddiag/morphism.hpp"
#include "moddiag/tensor.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <random>

using namespace moddiag;

namespace {

TensorClass random_class(const ModelPtr &m, int power, std::mt19937 &rng, int terms = 3)
{
	TensorClass t(m, power);
	std::uniform_int_distribution<int> basis(0, m->size() - 1);
	std::uniform_int_distribution<int> coeff(-3, 3);
	for (int k = 0; k < terms; ++k)
	{
		TensorClass::Tuple tuple;
		for (int i = 0; i < power; ++i)
			tuple.push_back(basis(rng));
		t.add_term(tuple, Rational(coeff(rng)));
	}
	return t;
}

PowerMorphism random_morphism(const ModelPtr &m, int source, int target, std::mt19937 &rng)
{
	std::uniform_int_distribution<int> pick(0, source + (m->has_involution() ? 2 : 1) - 1);
	std::vector<Coordinate> cs;
	for (int j = 0; j < target; ++j)
	{
		int p = pick(rng);
		if (p < source)
			cs.push_back(Coordinate::read(p));
		else if (p == source)
			cs.push_back(Coordinate::basepoint());
		else
			cs.push_back(Coordinate::read(std::uniform_int_distribution<int>(0, source - 1)(rng),
			                              m->involution()));
	}
	return PowerMorphism(m, source, std::move(cs));
}

} // namespace

TEST_CASE("projection pullback tensors with the unit")
{
	ModelPtr e = Model::curve(1);
	PowerMorphism p1 = PowerMorphism::projection(e, 2, {0});
	for (int i = 0; i < e->size(); ++i)
		CHECK(p1.pullback(TensorClass::basis(e, {i})) == TensorClass::basis(e, {i, 0}));
}

TEST_CASE("diagonal pullback is the product")
{
	std::mt19937 rng(11);
	for (const ModelPtr &m : {Model::curve(2), Model::k3(2)})
	{
		PowerMorphism diag = PowerMorphism::diagonal(m, 2);
		for (int trial = 0; trial < 6; ++trial)
		{
			TensorClass x = random_class(m, 1, rng);
			TensorClass y = random_class(m, 1, rng);
			// build x⊗y on X²
			TensorClass xy(m, 2);
			for (const auto &[s, cs] : x.terms())
				for (const auto &[t, ct] : y.terms())
					xy.add_term({s[0], t[0]}, cs * ct);
			CHECK(diag.pullback(xy) == multiply(x, y));
		}
	}
}

TEST_CASE("projection pushforward integrates the dropped slot")
{
	ModelPtr e = Model::curve(1);
	int pt = e->index_checked("pt");
	PowerMorphism p2 = PowerMorphism::projection(e, 2, {1});
	for (int i = 0; i < e->size(); ++i)
	{
		TensorClass in = TensorClass::basis(e, {pt, i});
		CHECK(p2.pushforward(in) == TensorClass::basis(e, {i}));
		// non-top first factor dies
		TensorClass in2 = TensorClass::basis(e, {0, i});
		CHECK(p2.pushforward(in2).is_zero());
	}
}

TEST_CASE("diagonal pushforward of the fundamental class is the diagonal class")
{
	for (const ModelPtr &m : {Model::point(), Model::curve(0), Model::curve(1), Model::curve(2),
	                          Model::abelian(1), Model::k3(2),
	                          Model::product(Model::curve(1), Model::curve(1))})
	{
		CAPTURE(m->name());
		TensorClass pushed =
		    PowerMorphism::diagonal(m, 2).pushforward(TensorClass::fundamental(m, 1));
		CHECK(pushed == diagonal_class(m));
	}
}

TEST_CASE("elliptic diagonal class has the signed symplectic terms")
{
	ModelPtr e = Model::curve(1);
	int a = e->index_checked("a1"), b = e->index_checked("b1");
	int pt = e->index_checked("pt");
	TensorClass expected(e, 2);
	expected.add_term({0, pt}, Rational(1));
	expected.add_term({pt, 0}, Rational(1));
	expected.add_term({a, b}, Rational(-1));
	expected.add_term({b, a}, Rational(1));
	CHECK(diagonal_class(e) == expected);
}

TEST_CASE("base-point inclusion pushes 1 to the point class")
{
	for (const ModelPtr &m : {Model::curve(1), Model::k3(2)})
	{
		PowerMorphism incl(m, 0, {Coordinate::basepoint()});
		TensorClass one = TensorClass::scalar(m, Rational(1));
		TensorClass pushed = incl.pushforward(one);
		TensorClass expected(m, 1);
		for (auto &[i, c] : m->point_class())
			expected.add_term({i}, c);
		CHECK(pushed == expected);
		// pullback through the point evaluates the degree-0 part, so it
		// kills every positive-degree class, the point class included
		CHECK(incl.pullback(expected).is_zero());
		CHECK(incl.pullback(TensorClass::fundamental(m, 1)) == one);
	}
}

TEST_CASE("adjunction holds exactly for assorted morphisms")
{
	std::mt19937 rng(20240518);
	ModelPtr c2 = build_curve_cover(2, 1).cover_space; // genus 2 with involution
	for (const ModelPtr &m : {Model::curve(1), c2, Model::k3(2)})
		for (int source = 1; source <= 3; ++source)
			for (int target = 1; target <= 3; ++target)
				for (int trial = 0; trial < 4; ++trial)
				{
					PowerMorphism f = random_morphism(m, source, target, rng);
					TensorClass alpha = random_class(m, source, rng);
					TensorClass beta = random_class(m, target, rng);
					CHECK(pairing(f.pushforward(alpha), beta) ==
					      pairing(alpha, f.pullback(beta)));
				}
}

TEST_CASE("pullback and pushforward are functorial")
{
	std::mt19937 rng(4242);
	ModelPtr m = build_curve_cover(2, 0).cover_space;
	for (int trial = 0; trial < 12; ++trial)
	{
		int a = 1 + trial % 3, b = 1 + (trial / 3) % 3, c = 1 + (trial / 9) % 3;
		PowerMorphism g = random_morphism(m, a, b, rng);
		PowerMorphism f = random_morphism(m, b, c, rng);
		PowerMorphism fg = compose(f, g);
		TensorClass beta = random_class(m, c, rng);
		CHECK(fg.pullback(beta) == g.pullback(f.pullback(beta)));
		TensorClass alpha = random_class(m, a, rng);
		CHECK(fg.pushforward(alpha) == f.pushforward(g.pushforward(alpha)));
	}
}

TEST_CASE("projection formula")
{
	std::mt19937 rng(31337);
	ModelPtr m = build_curve_cover(1, 0).cover_space;
	std::vector<PowerMorphism> morphisms;
	morphisms.push_back(PowerMorphism::projection(m, 2, {0}));
	morphisms.push_back(PowerMorphism::projection(m, 3, {2, 0}));
	morphisms.push_back(PowerMorphism::diagonal(m, 2));
	morphisms.push_back(PowerMorphism::diagonal(m, 3));
	morphisms.push_back(PowerMorphism::twisted_diagonal(m, 2, {1}));
	morphisms.push_back(PowerMorphism::twisted_diagonal(m, 3, {0, 2}));
	for (const PowerMorphism &f : morphisms)
		for (int trial = 0; trial < 5; ++trial)
		{
			TensorClass alpha = random_class(m, f.source_power(), rng);
			TensorClass beta = random_class(m, f.target_power(), rng);
			CHECK(f.pushforward(multiply(alpha, f.pullback(beta))) ==
			      multiply(f.pushforward(alpha), beta));
		}
}

TEST_CASE("twisted diagonal pullback applies the involution coordinatewise")
{
	CoverModel cover = build_curve_cover(1, 0);
	ModelPtr x = cover.cover_space;
	const Endo &sigma = x->involution();
	PowerMorphism zeta = PowerMorphism::twisted_diagonal(x, 2, {0});
	std::mt19937 rng(5);
	for (int trial = 0; trial < 8; ++trial)
	{
		TensorClass xy = random_class(x, 2, rng);
		// ζ_{{1}}^*(u⊗v) = σ(u)·v
		TensorClass expected(x, 1);
		for (const auto &[t, c] : xy.terms())
		{
			SparseVec su = sigma.apply(t[0]);
			SparseVec prod = x->multiply(su, {{t[1], Rational(1)}});
			for (auto &[k, kc] : prod)
				expected.add_term({k}, c * kc);
		}
		CHECK(zeta.pullback(xy) == expected);
	}
}

TEST_CASE("graph correspondence acts like the morphism")
{
	std::mt19937 rng(777);
	ModelPtr m = build_curve_cover(1, 0).cover_space;
	for (int trial = 0; trial < 8; ++trial)
	{
		int a = 1 + trial % 2, b = 1 + (trial / 2) % 2;
		PowerMorphism f = random_morphism(m, a, b, rng);
		Correspondence gf = Correspondence::graph(f);
		TensorClass alpha = random_class(m, a, rng);
		CHECK(gf.apply(alpha) == f.pushforward(alpha));
	}
}

TEST_CASE("graph composition matches morphism composition")
{
	ModelPtr e = Model::curve(1);
	std::mt19937 rng(123);
	for (int trial = 0; trial < 6; ++trial)
	{
		int a = 1 + trial % 2, b = 1 + (trial / 2) % 2, c = 1 + (trial / 4) % 2;
		PowerMorphism g = random_morphism(e, a, b, rng);
		PowerMorphism f = random_morphism(e, b, c, rng);
		// diagrammatic composition: graph(g);graph(f) = graph(f∘g)
		CHECK(compose_correspondences(Correspondence::graph(g), Correspondence::graph(f)) ==
		      Correspondence::graph(compose(f, g)));
	}
}

TEST_CASE("graph of the involution acts as the involution")
{
	ModelPtr x = build_curve_cover(2, 1).cover_space;
	PowerMorphism sig = PowerMorphism::all_slots(x, 1, x->involution());
	Correspondence gs = Correspondence::graph(sig);
	for (int i = 0; i < x->size(); ++i)
	{
		TensorClass alpha = TensorClass::basis(x, {i});
		TensorClass expected(x, 1);
		for (auto &[k, c] : x->involution().apply(i))
			expected.add_term({k}, c);
		CHECK(gs.apply(alpha) == expected);
	}
}

TEST_CASE("multiplication twists scale pushforwards by k^(2g-j)")
{
	ModelPtr a1 = Model::abelian(1);
	int g2 = 2; // 2g for g = 1
	for (int k : {2, 3})
	{
		Endo mult = a1->mult_endo(k);
		PowerMorphism f = PowerMorphism::all_slots(a1, 1, mult);
		for (int i = 0; i < a1->size(); ++i)
		{
			TensorClass alpha = TensorClass::basis(a1, {i});
			TensorClass expected = Rational(integer_pow(k, g2 - a1->degree(i))) * alpha;
			CHECK(f.pushforward(alpha) == expected);
		}
		// the point class is fixed, the fundamental class scales by k^{2g}
		TensorClass pt(a1, 1);
		for (auto &[i, c] : a1->point_class())
			pt.add_term({i}, c);
		CHECK(f.pushforward(pt) == pt);
		CHECK(f.pushforward(TensorClass::fundamental(a1, 1)) ==
		      Rational(integer_pow(k, g2)) * TensorClass::fundamental(a1, 1));
	}
}

TEST_CASE("multiplication twists scale small diagonals by k^2g")
{
	ModelPtr a1 = Model::abelian(1);
	for (int n : {2, 3})
		for (int k : {2, 3})
		{
			TensorClass delta = PowerMorphism::diagonal(a1, n).pushforward(
			    TensorClass::fundamental(a1, 1));
			PowerMorphism f = PowerMorphism::all_slots(a1, n, a1->mult_endo(k));
			CHECK(f.pushforward(delta) == Rational(integer_pow(k, 2)) * delta);
		}
}

TEST_CASE("morphism composition collapses twisted base points")
{
	ModelPtr x = build_curve_cover(1, 0).cover_space;
	// f: X → X², x ↦ (σx, a); g = pr₂: X² → X; g∘f is constant a
	PowerMorphism f(x, 1,
	                {Coordinate::read(0, x->involution()), Coordinate::basepoint()});
	PowerMorphism g = PowerMorphism::projection(x, 2, {1});
	PowerMorphism gf = compose(g, f);
	CHECK(gf.coords()[0].is_basepoint());
	// and σ∘σ = id
	PowerMorphism s = PowerMorphism::all_slots(x, 1, x->involution());
	CHECK(compose(s, s) == PowerMorphism::identity(x, 1));
}

TEST_CASE("model morphism projection satisfies the push-pull identities")
{
	ModelPtr e = Model::curve(1);
	ModelPtr ee = Model::product(e, e);
	ModelMorphism p = ModelMorphism::projection(ee, 1);
	CHECK(p.is_pointed());
	CHECK(p.pullback_is_algebra_map());
	CHECK(p.degree() == 0); // positive-dimensional fibers
	// p_*(x⊗y) = τ(x)·y
	for (int ix = 0; ix < e->size(); ++ix)
		for (int iy = 0; iy < e->size(); ++iy)
		{
			TensorClass in(ee, 1);
			in.add_term({ee->pair_index(ix, iy)}, Rational(1));
			TensorClass expected(e, 1);
			expected.add_term({iy}, e->trace(ix));
			CHECK(p.pushforward(in) == expected);
		}
	std::mt19937 rng(55);
	for (int trial = 0; trial < 6; ++trial)
	{
		TensorClass alpha = random_class(ee, 2, rng);
		TensorClass beta = random_class(e, 2, rng);
		CHECK(pairing(p.pushforward(alpha), beta) == pairing(alpha, p.pullback(beta)));
	}
}

TEST_CASE("selection pushforward equals the adjunction scan")
{
	// the same selection built with explicit identity-image twists takes the
	// generic dual-basis route; both paths must agree exactly
	std::mt19937 rng(161803);
	ModelPtr m = Model::curve(2);
	std::vector<SparseVec> id_images;
	for (int i = 0; i < m->size(); ++i)
		id_images.push_back({{i, Rational(1)}});
	Endo explicit_id = Endo::from_images(id_images);
	for (int trial = 0; trial < 20; ++trial)
	{
		int source = 1 + trial % 3;
		std::vector<int> order;
		for (int i = 0; i < source; ++i)
			order.push_back(i);
		std::shuffle(order.begin(), order.end(), rng);
		int target = 1 + std::uniform_int_distribution<int>(0, source - 1)(rng);
		std::vector<Coordinate> fast, slow;
		for (int j = 0; j < target; ++j)
		{
			fast.push_back(Coordinate::read(order[static_cast<std::size_t>(j)]));
			slow.push_back(
			    Coordinate::read(order[static_cast<std::size_t>(j)], explicit_id));
		}
		PowerMorphism f_fast(m, source, fast);
		PowerMorphism f_slow(m, source, slow);
		TensorClass alpha = random_class(m, source, rng);
		CHECK(f_fast.pushforward(alpha) == f_slow.pushforward(alpha));
	}
}

TEST_CASE("pushforward refuses shapes that do not fit")
{
	ModelPtr e = Model::curve(1);
	PowerMorphism diag = PowerMorphism::diagonal(e, 2);
	CHECK_THROWS_AS(diag.pushforward(TensorClass(e, 2)), ShapeError);
	CHECK_THROWS_AS(diag.pullback(TensorClass(e, 1)), ShapeError);
	CHECK_THROWS_AS(diag.pullback(TensorClass(Model::curve(2), 2)), ShapeError);
}

TEST_CASE("term budget guardrail")
{
	std::size_t saved = config::term_cap();
	config::term_cap() = 100;
	ModelPtr a2 = Model::abelian(2);
	CHECK_THROWS_AS(PowerMorphism::diagonal(a2, 3).pushforward(TensorClass::fundamental(a2, 1)),
	                ResourceError);
	config::term_cap() = saved;
}
