#include "moddiag/double_cover.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <random>

using namespace moddiag;

TEST_CASE("curve cover construction and the two push-pull identities")
{
	for (auto [g, h] : {std::pair{1, 0}, std::pair{2, 0}, std::pair{2, 1}, std::pair{3, 1}})
	{
		CAPTURE(g, h);
		CoverModel cover = build_curve_cover(g, h);
		CHECK(validate(*cover.cover_space).empty());
		CHECK(validate(*cover.base).empty());
		CHECK(cover.quotient.pullback_is_algebra_map());
		CHECK(cover.quotient.is_pointed());
		CHECK(cover.quotient.degree() == 2);
		CHECK(cover_identities_ok(cover));
	}
	CHECK_THROWS_AS(build_curve_cover(1, 2), ParameterError);
}

TEST_CASE("sigma fixes the point class")
{
	CoverModel cover = build_curve_cover(2, 1);
	const Endo &sigma = cover.cover_space->involution();
	CHECK(sigma.apply(cover.cover_space->point_class()) == cover.cover_space->point_class());
}

TEST_CASE("Z classes: empty and full subsets give the small diagonal")
{
	CoverModel cover = build_curve_cover(2, 1);
	for (int m = 1; m <= 3; ++m)
	{
		TensorClass delta = PowerMorphism::diagonal(cover.cover_space, m)
		                        .pushforward(TensorClass::fundamental(cover.cover_space, 1));
		std::vector<int> full;
		for (int i = 0; i < m; ++i)
			full.push_back(i);
		CHECK(z_class(cover, {}, m) == delta);
		CHECK(z_class(cover, full, m) == delta);
	}
	// m = 1: the twisted class is the fundamental class again
	TensorClass z1 = z_class(cover, {0}, 1);
	CHECK(z1 == TensorClass::fundamental(cover.cover_space, 1));
}

TEST_CASE("Z classes agree on complementary subsets")
{
	CoverModel cover = build_curve_cover(2, 0);
	CHECK(z_class(cover, {0}, 2) == z_class(cover, {1}, 2));
	CHECK(z_class(cover, {0, 1}, 3) == z_class(cover, {2}, 3));
	CHECK(z_class(cover, {1}, 3) == z_class(cover, {0, 2}, 3));
}

TEST_CASE("V classes fold and sum to the pulled-back diagonal")
{
	CoverModel cover = build_curve_cover(2, 1);
	for (int m = 1; m <= 3; ++m)
	{
		for (int r = 0; r <= m; ++r)
			CHECK(v_class_numeric(cover, r, m) == v_class_numeric(cover, m - r, m));
		TensorClass delta_y = PowerMorphism::diagonal(cover.base, m)
		                          .pushforward(TensorClass::fundamental(cover.base, 1));
		TensorClass lhs = cover.quotient.pullback(delta_y);
		TensorClass rhs(cover.cover_space, m);
		for (int r = 0; r <= m; ++r)
			rhs += v_class_numeric(cover, r, m);
		rhs *= make_rational(1, 2);
		CHECK(lhs == rhs);
	}
	CHECK(v_class_numeric(cover, 0, 2) ==
	      PowerMorphism::diagonal(cover.cover_space, 2)
	          .pushforward(TensorClass::fundamental(cover.cover_space, 1)));
}

TEST_CASE("symbolic transfer rule instances")
{
	// m=1, r=0: Φ(V₀) = V₁
	VrVector v0 = phi_symbolic(v_symbol(0, 1));
	CHECK(v0.coeffs == std::vector<Rational>{0, 1, 0});
	// m=2, r=0: Φ(V₀) = 2V₁
	VrVector v1 = phi_symbolic(v_symbol(0, 2));
	CHECK(v1.coeffs == std::vector<Rational>{0, 2, 0, 0});
	// m=2, r=1: Φ(V₁) = 2V₁ + 2V₂
	VrVector v2 = phi_symbolic(v_symbol(1, 2));
	CHECK(v2.coeffs == std::vector<Rational>{0, 2, 2, 0});
	// m=3, r=1: coefficients r(m+1−r) = 3 and (r+1)(m−r) = 4
	VrVector v3 = phi_symbolic(v_symbol(1, 3));
	CHECK(v3.coeffs == std::vector<Rational>{0, 3, 4, 0, 0});
}

TEST_CASE("brute-force enumeration equals the symbolic rule")
{
	for (int m = 1; m <= 6; ++m)
		for (int r = 0; r <= m; ++r)
		{
			CAPTURE(m, r);
			CHECK(phi_brute_force(m, r) == phi_symbolic(v_symbol(r, m)));
		}
}

TEST_CASE("numeric phi agrees with the symbolic transfer through V classes")
{
	for (auto [g, h] : {std::pair{1, 0}, std::pair{2, 1}})
	{
		CoverModel cover = build_curve_cover(g, h);
		for (int m = 1; m <= 2; ++m)
			for (int r = 0; r <= m; ++r)
			{
				TensorClass lhs = phi_numeric(cover, v_class_numeric(cover, r, m));
				VrVector sym = phi_symbolic(v_symbol(r, m));
				TensorClass rhs(cover.cover_space, m + 1);
				for (int s = 0; s <= m + 1; ++s)
					if (sym.coeffs[static_cast<std::size_t>(s)] != 0)
						rhs.add(v_class_numeric(cover, s, m + 1),
						        sym.coeffs[static_cast<std::size_t>(s)]);
				CHECK(lhs == rhs);
			}
	}
}

TEST_CASE("phi is linear")
{
	CoverModel cover = build_curve_cover(1, 0);
	std::mt19937 rng(2024);
	std::uniform_int_distribution<int> basis(0, cover.cover_space->size() - 1);
	TensorClass a(cover.cover_space, 2), b(cover.cover_space, 2);
	for (int k = 0; k < 3; ++k)
	{
		a.add_term({basis(rng), basis(rng)}, Rational(k + 1));
		b.add_term({basis(rng), basis(rng)}, Rational(2 - k));
	}
	TensorClass sum = a;
	sum.add(b, Rational(3));
	TensorClass lhs = phi_numeric(cover, sum);
	TensorClass rhs = phi_numeric(cover, a);
	rhs.add(phi_numeric(cover, b), Rational(3));
	CHECK(lhs == rhs);
}

TEST_CASE("reduction polynomials for small m")
{
	// m=1: c₀ = −s
	auto c1 = lemma54_reduction(1);
	REQUIRE(c1.size() == 1);
	CHECK(c1[0] == Poly({Rational(0), Rational(-1)}));
	// m=2: c₀ = s², c₁ = −2s−2
	auto c2 = lemma54_reduction(2);
	REQUIRE(c2.size() == 2);
	CHECK(c2[0] == Poly({Rational(0), Rational(0), Rational(1)}));
	CHECK(c2[1] == Poly({Rational(-2), Rational(-2)}));
	// larger instances verify themselves internally
	for (int m = 3; m <= 8; ++m)
		CHECK_NOTHROW(lemma54_reduction(m));
}

TEST_CASE("vandermonde certificates")
{
	VandermondeCertificate c2 = vandermonde_certificate(2);
	CHECK(c2.ok);
	CHECK(c2.values == std::vector<Integer>{0, 2});
	VandermondeCertificate c3 = vandermonde_certificate(3);
	CHECK(c3.ok);
	CHECK(c3.values == std::vector<Integer>{0, 4, 6});
	CHECK(c3.determinant != 0);
	// r ↦ r(2n−1−r) strictly increasing on 0..n−1 for all n ≤ 50
	for (int n = 1; n <= 50; ++n)
	{
		VandermondeCertificate c = vandermonde_certificate(n);
		CHECK(c.ok);
		for (std::size_t i = 0; i + 1 < c.values.size(); ++i)
			CHECK(c.values[i] < c.values[i + 1]);
	}
	// determinant matches the difference-product form on small sizes
	for (int n = 1; n <= 8; ++n)
	{
		VandermondeCertificate c = vandermonde_certificate(n);
		Integer prod = 1;
		for (std::size_t i = 0; i < c.values.size(); ++i)
			for (std::size_t j = i + 1; j < c.values.size(); ++j)
				prod *= c.values[j] - c.values[i];
		CHECK(c.determinant == prod);
	}
}

TEST_CASE("folding")
{
	VrVector v(4);
	v.coeffs = {Rational(1), Rational(2), Rational(3), Rational(4), Rational(5)};
	CHECK(v.folded() == std::vector<Rational>{6, 6, 3});
	VrVector w(3);
	w.coeffs = {Rational(1), Rational(0), Rational(0), Rational(-1)};
	CHECK(VrVector::equal_folded(w, VrVector(3)));
}

TEST_CASE("cover scenarios end to end")
{
	struct Job {
		int g, h, n;
	};
	for (const Job &job : {Job{1, 0, 2}, Job{2, 0, 2}, Job{2, 1, 3}, Job{3, 1, 3}})
	{
		CAPTURE(job.g, job.h, job.n);
		CoverModel cover = build_curve_cover(job.g, job.h);
		ScenarioReport rep = double_cover_scenario(cover, job.n);
		CHECK(rep.base_vanishing);
		CHECK(rep.pullback_identity);
		CHECK(rep.congruences_in_fil1);
		CHECK(rep.replay_ok);
		CHECK(rep.cover_vanishing);
		CHECK(rep.ok());
	}
}

TEST_CASE("scenario reports an unmet precondition")
{
	// genus-2 base: Γ³(Y) ≠ 0 fails the n = 3 precondition for a (3,2) cover
	CoverModel cover = build_curve_cover(3, 2);
	ScenarioReport rep = double_cover_scenario(cover, 2);
	CHECK_FALSE(rep.base_vanishing);
	CHECK_FALSE(rep.ok());
	CHECK_FALSE(rep.failure.empty());
}

TEST_CASE("replay works standalone")
{
	for (int n = 2; n <= 5; ++n)
	{
		std::vector<Rational> sol;
		std::string why;
		CHECK(replay_cover_induction(n, &sol, &why));
		CHECK(sol.size() == static_cast<std::size_t>(n));
	}
}
