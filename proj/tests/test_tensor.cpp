#include "moddiag/model.hpp"
#include "moddiag/tensor.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <random>

using namespace moddiag;

namespace {

TensorClass random_class(const ModelPtr &m, int power, std::mt19937 &rng, int terms = 4)
{
	TensorClass t(m, power);
	std::uniform_int_distribution<int> basis(0, m->size() - 1);
	std::uniform_int_distribution<int> coeff(-3, 3);
	std::uniform_int_distribution<int> den(1, 3);
	for (int k = 0; k < terms; ++k)
	{
		TensorClass::Tuple tuple;
		for (int i = 0; i < power; ++i)
			tuple.push_back(basis(rng));
		t.add_term(tuple, make_rational(coeff(rng), den(rng)));
	}
	return t;
}

} // namespace

TEST_CASE("products on the elliptic model")
{
	ModelPtr e = Model::curve(1);
	int a = e->index_checked("a1"), b = e->index_checked("b1");
	int pt = e->index_checked("pt");
	TensorClass ab = multiply(TensorClass::basis(e, {a}), TensorClass::basis(e, {b}));
	CHECK(ab == TensorClass::basis(e, {pt}));
	TensorClass ba = multiply(TensorClass::basis(e, {b}), TensorClass::basis(e, {a}));
	CHECK(ba == TensorClass::basis(e, {pt}, Rational(-1)));
	// Koszul sign on the square: (1⊗a)·(a⊗1) = −a⊗a
	TensorClass lhs = multiply(TensorClass::basis(e, {0, a}), TensorClass::basis(e, {a, 0}));
	CHECK(lhs == TensorClass::basis(e, {a, a}, Rational(-1)));
}

TEST_CASE("integrate")
{
	ModelPtr e = Model::curve(1);
	int pt = e->index_checked("pt");
	CHECK(TensorClass::basis(e, {pt}).integrate() == 1);
	CHECK(TensorClass::fundamental(e, 1).integrate() == 0);
	CHECK(TensorClass::basis(e, {pt, pt}).integrate() == 1);
	CHECK(TensorClass::basis(e, {pt, 0}).integrate() == 0);
	CHECK(TensorClass::point_tuple(e, 3).integrate() == 1);
	// d = 0: the fundamental class of the point model integrates to 1
	CHECK(TensorClass::fundamental(Model::point(), 1).integrate() == 1);
}

TEST_CASE("multiply is associative and unital on random classes")
{
	std::mt19937 rng(20240517);
	for (const ModelPtr &m : {Model::curve(1), Model::curve(2), Model::abelian(1)})
		for (int power = 1; power <= 3; ++power)
			for (int trial = 0; trial < 8; ++trial)
			{
				TensorClass x = random_class(m, power, rng);
				TensorClass y = random_class(m, power, rng);
				TensorClass z = random_class(m, power, rng);
				CHECK(multiply(multiply(x, y), z) == multiply(x, multiply(y, z)));
				CHECK(multiply(TensorClass::fundamental(m, power), x) == x);
				CHECK(multiply(x, TensorClass::fundamental(m, power)) == x);
			}
}

TEST_CASE("multiply is exhaustively associative on curve basis triples")
{
	for (const ModelPtr &m : {Model::curve(1), Model::curve(2)})
		for (int i = 0; i < m->size(); ++i)
			for (int j = 0; j < m->size(); ++j)
				for (int k = 0; k < m->size(); ++k)
				{
					TensorClass x = TensorClass::basis(m, {i});
					TensorClass y = TensorClass::basis(m, {j});
					TensorClass z = TensorClass::basis(m, {k});
					CHECK(multiply(multiply(x, y), z) == multiply(x, multiply(y, z)));
				}
}

TEST_CASE("graded commutativity of the tensor algebra")
{
	std::mt19937 rng(7);
	ModelPtr m = Model::curve(2);
	for (int trial = 0; trial < 12; ++trial)
	{
		// on homogeneous pure tensors x·y = (−1)^{|x||y|} y·x
		std::uniform_int_distribution<int> basis(0, m->size() - 1);
		TensorClass::Tuple s, t;
		for (int i = 0; i < 2; ++i)
		{
			s.push_back(basis(rng));
			t.push_back(basis(rng));
		}
		TensorClass x = TensorClass::basis(m, s);
		TensorClass y = TensorClass::basis(m, t);
		int dx = x.total_degree(s), dy = x.total_degree(t);
		Rational sign((dx % 2) && (dy % 2) ? -1 : 1);
		CHECK(multiply(x, y) == sign * multiply(y, x));
	}
}

TEST_CASE("pairing agrees with integrate-of-product")
{
	std::mt19937 rng(99);
	for (const ModelPtr &m : {Model::curve(2), Model::abelian(1), Model::k3(2)})
		for (int power = 1; power <= 3; ++power)
			for (int trial = 0; trial < 6; ++trial)
			{
				TensorClass x = random_class(m, power, rng);
				TensorClass y = random_class(m, power, rng);
				CHECK(pairing(x, y) == multiply(x, y).integrate());
			}
}

TEST_CASE("shape errors")
{
	ModelPtr e = Model::curve(1);
	TensorClass x(e, 2), y(e, 3);
	CHECK_THROWS_AS(multiply(x, y), ShapeError);
	TensorClass z(Model::curve(2), 2);
	CHECK_THROWS_AS(x.add(z), ShapeError);
}

TEST_CASE("scalar classes on the zeroth power")
{
	ModelPtr e = Model::curve(1);
	TensorClass s = TensorClass::scalar(e, make_rational(3, 2));
	CHECK(s.power() == 0);
	CHECK(s.integrate() == make_rational(3, 2));
	CHECK(multiply(s, s).integrate() == make_rational(9, 4));
}
