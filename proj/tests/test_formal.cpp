#include "moddiag/formal.hpp"
#include "moddiag/gamma.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace moddiag;

TEST_CASE("formal gamma coefficients")
{
	FormalDiagonalSum g2 = formal_gamma(2);
	CHECK(g2.terms().at(0b11) == 1);
	CHECK(g2.terms().at(0b01) == -1);
	CHECK(g2.terms().at(0b10) == -1);
	CHECK(g2.terms().size() == 3);
	FormalDiagonalSum g3 = formal_gamma(3);
	CHECK(g3.terms().at(0b111) == 1);
	for (unsigned pair : {0b011u, 0b101u, 0b110u})
		CHECK(g3.terms().at(pair) == -1);
	for (unsigned single : {0b001u, 0b010u, 0b100u})
		CHECK(g3.terms().at(single) == 1);
}

TEST_CASE("realizing the formal gamma reproduces the expansion route")
{
	for (const ModelPtr &m : {Model::curve(1), Model::curve(2), Model::k3(2)})
		for (int n = 1; n <= 3; ++n)
		{
			CAPTURE(m->name(), n);
			CHECK(realize(formal_gamma(n), m) == expansion_gamma(m, n).result);
		}
}

TEST_CASE("projection pushforward rules")
{
	FormalDiagonalSum s(3);
	s.add(0b111, Rational(1));
	// drop the middle coordinate: {1,2,3} ↦ {1,2}
	FormalDiagonalSum dropped = formal_projection_pushforward(s, 1, true);
	CHECK(dropped.terms().size() == 1);
	CHECK(dropped.terms().at(0b11) == 1);
	// a singleton at the dropped slot dies for d > 0 ...
	FormalDiagonalSum single(2);
	single.add(0b10, Rational(5));
	CHECK(formal_projection_pushforward(single, 1, true).is_zero());
	// ... and lands on the point symbol for d = 0
	FormalDiagonalSum collapsed = formal_projection_pushforward(single, 1, false);
	CHECK(collapsed.terms().at(0) == 5);
}

TEST_CASE("projection pushforward commutes with realization")
{
	for (const ModelPtr &m : {Model::curve(1), Model::curve(2)})
		for (int n = 2; n <= 4; ++n)
			for (int drop = 0; drop < n; ++drop)
			{
				FormalDiagonalSum s = formal_gamma(n);
				s.add(0, make_rational(1, 2)); // include a point-symbol term
				TensorClass via_formal =
				    realize(formal_projection_pushforward(s, drop, m->dimension() > 0), m);
				std::vector<int> keep;
				for (int i = 0; i < n; ++i)
					if (i != drop)
						keep.push_back(i);
				TensorClass via_numeric =
				    PowerMorphism::projection(m, n, keep).pushforward(realize(s, m));
				CHECK(via_formal == via_numeric);
			}
	// the d = 0 collapse rule matches the point model
	ModelPtr pt = Model::point();
	FormalDiagonalSum s(2);
	s.add(0b10, Rational(1));
	s.add(0b11, Rational(2));
	TensorClass via_formal = realize(formal_projection_pushforward(s, 1, false), pt);
	TensorClass via_numeric =
	    PowerMorphism::projection(pt, 2, {0}).pushforward(realize(s, pt));
	CHECK(via_formal == via_numeric);
}

TEST_CASE("delta pushforward rules and filtration monotonicity")
{
	FormalDiagonalSum s(3);
	s.add(0b111, Rational(1)); // {1,2,3} ↦ {1,2,3,4}
	s.add(0b011, Rational(2)); // {1,2} ↦ {1,2}
	FormalDiagonalSum pushed = formal_delta_pushforward(s);
	CHECK(pushed.terms().at(0b1111) == 1);
	CHECK(pushed.terms().at(0b0011) == 2);
	CHECK(formal_level(s) == 0);
	CHECK(formal_level(pushed) == 0);
	FormalDiagonalSum low(3);
	low.add(0b001, Rational(1));
	CHECK(formal_level(low) == 2);
	CHECK(formal_level(formal_delta_pushforward(low)) == 3);
	CHECK_FALSE(formal_level(FormalDiagonalSum(3)).has_value());
}

TEST_CASE("delta pushforward commutes with realization")
{
	for (const ModelPtr &m : {Model::curve(1), Model::curve(2)})
		for (int n = 1; n <= 3; ++n)
		{
			FormalDiagonalSum s = formal_gamma(n);
			TensorClass via_formal = realize(formal_delta_pushforward(s), m);
			TensorClass via_numeric =
			    PowerMorphism::duplicate_last(m, n).pushforward(realize(s, m));
			CHECK(via_formal == via_numeric);
		}
}

TEST_CASE("weight support: enumeration equals the closed form")
{
	for (int g = 1; g <= 10; ++g)
		for (int n = 1; n <= 25; ++n)
		{
			CAPTURE(n, g);
			bool closed = weight_support_nonempty(n, g);
			CHECK(closed == (n <= 2 * g));
			CHECK(closed == weight_support_by_enumeration(n, g));
		}
	CHECK(weight_support_nonempty(2, 1));
	CHECK_FALSE(weight_support_nonempty(3, 1));
	CHECK(weight_support_nonempty(4, 2));
}

TEST_CASE("unique extremal sequences")
{
	CHECK(unique_extremal_sequence(1, 1) == std::vector<int>{0, 2, 0});
	CHECK(unique_extremal_sequence(2, 0) == std::vector<int>{0, 0, 2, 0, 0});
	CHECK(unique_extremal_sequence(2, 1) == std::vector<int>{0, 0, 1, 2, 0});
	// the closed form (0,…,0,d−e,2e,0) in general; (1,0) is degenerate
	// because d−e would land on the excluded slot m₀
	for (int d = 1; d <= 4; ++d)
		for (int e = 0; e <= d; ++e)
		{
			if (d == 1 && e == 0)
				continue;
			std::vector<int> expected(static_cast<std::size_t>(2 * d) + 1, 0);
			expected[static_cast<std::size_t>(2 * d - 2)] = d - e;
			expected[static_cast<std::size_t>(2 * d - 1)] = 2 * e;
			CHECK(unique_extremal_sequence(d, e) == expected);
		}
	CHECK_THROWS_AS(unique_extremal_sequence(1, 0), Error);
}

TEST_CASE("stirling numbers")
{
	CHECK(stirling(3, 2) == 3);
	CHECK(stirling(4, 2) == 7);
	CHECK(stirling(5, 2) == 15);
	CHECK(stirling(0, 0) == 1);
	CHECK(stirling(4, 0) == 0);
	CHECK(stirling(4, 5) == 0);
	for (int i = 0; i <= 8; ++i)
		for (int n = 0; n <= i; ++n)
		{
			CAPTURE(i, n);
			CHECK(stirling(i, n) == stirling_by_enumeration(i, n));
		}
	for (int i = 1; i <= 12; ++i)
		for (int n = 1; n <= i; ++n)
			CHECK(stirling(i, n) ==
			      Integer(n) * stirling(i - 1, n) + stirling(i - 1, n - 1));
}

TEST_CASE("curve coefficient vectors")
{
	StirlingVector v = curve_coefficients(2, 3);
	CHECK(v.coeffs == std::vector<Rational>{2, 6, 14});
	for (int g = 1; g <= 6; ++g)
		for (int n = 2; n <= 10; ++n)
		{
			CAPTURE(n, g);
			CHECK(curve_coefficients(n, g).all_zero() == (n > g + 1));
		}
}

TEST_CASE("base-point binomial expansion")
{
	BasePointBinomial b = base_point_binomial(2);
	CHECK(b.factors == 2);
	CHECK(b.subsets.size() == 4);
	for (int n = 2; n <= 5; ++n)
	{
		BasePointBinomial e = base_point_binomial(n);
		int N = 2 * n - 2;
		Integer total = 0;
		for (int k = 0; k <= N; ++k)
		{
			Integer binom = 1;
			for (int i = 0; i < k; ++i)
				binom = binom * (N - i) / (i + 1);
			CHECK(e.count_with_cardinality(k) == binom);
			total += binom;
		}
		CHECK(Integer(e.subsets.size()) == total);
		auto pi_plus_only = e.specialize_t_zero();
		CHECK(pi_plus_only.size() == 1);
		CHECK(pi_plus_only[0] == (1u << N) - 1);
	}
}
