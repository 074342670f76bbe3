#include "moddiag/model_io.hpp"
#include "moddiag/suites.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace moddiag;

TEST_CASE("model JSON round trip reproduces the builtin")
{
	for (const ModelPtr &m : {Model::curve(1), Model::k3(2), Model::abelian(1)})
	{
		ModelPtr loaded = model_from_json(model_to_json(*m));
		REQUIRE(loaded->size() == m->size());
		CHECK(validate(*loaded).empty());
		for (int i = 0; i < m->size(); ++i)
		{
			CHECK(loaded->id(i) == m->id(i));
			CHECK(loaded->degree(i) == m->degree(i));
			CHECK(loaded->trace(i) == m->trace(i));
			for (int j = 0; j < m->size(); ++j)
				CHECK(loaded->product(i, j) == m->product(i, j));
		}
	}
}

TEST_CASE("hand-written elliptic model file equals the builtin")
{
	// one product orientation given; the mirror completes by the sign law
	Json j = Json::parse(R"({
	  "name": "elliptic-by-hand",
	  "dimension": 1,
	  "basis": [
	    {"id": "1", "degree": 0},
	    {"id": "a1", "degree": 1},
	    {"id": "b1", "degree": 1},
	    {"id": "pt", "degree": 2}
	  ],
	  "products": [
	    ["1", "1", [["1", "1"]]],
	    ["1", "a1", [["a1", "1"]]],
	    ["1", "b1", [["b1", "1"]]],
	    ["1", "pt", [["pt", "1"]]],
	    ["a1", "b1", [["pt", "1"]]]
	  ],
	  "trace": [["pt", "1"]]
	})");
	ModelPtr loaded = model_from_json(j);
	CHECK(validate(*loaded).empty());
	ModelPtr builtin = Model::curve(1);
	for (int i = 0; i < builtin->size(); ++i)
		for (int k = 0; k < builtin->size(); ++k)
			CHECK(loaded->product(i, k) == builtin->product(i, k));
	// Koszul completion: b1·a1 = −pt was not written
	CHECK(loaded->product(2, 1) == SparseVec{{3, Rational(-1)}});
}

TEST_CASE("model files with broken data validate with violations")
{
	Json j = Json::parse(R"({
	  "name": "broken",
	  "dimension": 1,
	  "basis": [{"id": "1", "degree": 0}, {"id": "pt", "degree": 2}],
	  "products": [
	    ["1", "1", [["1", "1"]]],
	    ["1", "pt", [["pt", "1"]]]
	  ],
	  "trace": [["1", "1"], ["pt", "1"]]
	})");
	ModelPtr loaded = model_from_json(j);
	auto violations = validate(*loaded);
	bool trace_support = false;
	for (const auto &v : violations)
		trace_support = trace_support || v.check == "trace-support";
	CHECK(trace_support);
}

TEST_CASE("malformed files raise io errors")
{
	CHECK_THROWS_AS(model_from_json(Json::parse("[1,2,3]")), IoError);
	CHECK_THROWS_AS(model_from_json(Json::parse(R"({"name":"x"})")), IoError);
	CHECK_THROWS_AS(load_model_file("/nonexistent/path.json"), IoError);
}

TEST_CASE("class serialization round trip")
{
	ModelPtr e = Model::curve(1);
	TensorClass t(e, 2);
	t.add_term({1, 2}, make_rational(-3, 4));
	t.add_term({0, 3}, Rational(2));
	Json j = class_to_json(t);
	TensorClass back = class_from_json(j, e);
	CHECK(back == t);
}

TEST_CASE("model spec strings")
{
	CHECK(parse_model_spec("point")->dimension() == 0);
	CHECK(parse_model_spec("curve:g=2")->size() == 6);
	CHECK(parse_model_spec("abelian:g=1")->size() == 4);
	CHECK(parse_model_spec("k3:rho=4")->size() == 6);
	CHECK(parse_model_spec("product:curve:g=1,curve:g=1")->size() == 16);
	CHECK(parse_model_spec("cover:g=2,h=1")->has_involution());
	CHECK_THROWS_AS(parse_model_spec("torus:g=1"), ParameterError);
	CHECK_THROWS_AS(parse_model_spec("curve:h=1"), ParameterError);
	CoverModel cover = parse_cover_spec("cover:g=2,h=1");
	CHECK(cover.base->name() == "curve_g1");
}

TEST_CASE("suite reports are deterministic and well formed")
{
	SuiteReport a = run_suite("stirling", {});
	SuiteReport b = run_suite("stirling", {});
	CHECK(a.all_passed());
	CHECK(strip_wall_time(report_to_json(a)).dump() ==
	      strip_wall_time(report_to_json(b)).dump());
	CHECK_THROWS_AS(run_suite("no-such-suite", {}), ParameterError);
}

TEST_CASE("suite parameters narrow the work")
{
	SuiteReport small = run_suite("abelian", {{"maxG", "3"}, {"maxN", "6"}});
	CHECK(small.all_passed());
	bool found = false;
	for (const auto &c : small.checks)
		found = found || c.id == "weight-support:g<=3,n<=6";
	CHECK(found);
}
