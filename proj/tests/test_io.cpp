#include "fixtures.hpp"
#include "frozen.hpp"
#include "pqc/bundle.hpp"
#include <doctest.h>
#include <filesystem>
#include <fstream>

using namespace pqc;
using io::json;

namespace {

Padic parse(const std::string &text, Ctx c, std::optional<Padic> chi = std::nullopt)
{
	json j = json::parse(text);
	return io::read_padic(io::root(j, "inline"), c, chi);
}

std::string error_text(const std::function<void()> &f)
{
	try
	{
		f();
	}
	catch (const Error &e)
	{
		return e.message();
	}
	return "";
}

std::string temp_file(const std::string &name, const std::string &text)
{
	auto p = std::filesystem::temp_directory_path() / name;
	std::ofstream(p) << text;
	return p.string();
}

} // namespace

TEST_SUITE("io")
{
	TEST_CASE("scalar forms")
	{
		Ctx c{3, 20};
		CHECK(parse("5", c) == Padic(c, 5));
		CHECK(parse("\"-2/9\"", c) == Padic::rational(c, mpq_class(-2, 9)));
		CHECK(parse(R"({"log": 2, "coeff": "5/2"})", c).residue(19) == (Padic::rational(c, mpq_class(5, 2)) * Padic(c, mpz_class(frozen::log3_2))).residue(19));
		Padic chi = Padic(c, 7);
		CHECK(parse(R"({"chi": "5/4"})", c, chi) == Padic::rational(c, mpq_class(35, 4)));
		CHECK_THROWS_AS(parse(R"({"chi": 1})", c), Error);
		CHECK_THROWS_AS(parse("\"1/0\"", c), Error);
		CHECK_THROWS_AS(parse("true", c), Error);
	}

	TEST_CASE("p-adic records round trip")
	{
		Ctx c{5, 12};
		for (Padic x : {Padic(c, 0), Padic(c, 17), Padic::rational(c, mpq_class(-3, 25)), Padic::zero(c, 4), Padic(c, 250).with_abs_prec(6)})
		{
			json j = io::write_padic(x);
			Padic y = io::read_padic(io::root(j, "inline"), c);
			CHECK(y == x);
			CHECK(y.abs_prec() == x.abs_prec());
			CHECK(y.ord_lb() == x.ord_lb());
		}
	}

	TEST_CASE("series round trip")
	{
		Ctx c{7, 10};
		Series s(c, 2, 4, 6);
		s.add_term({1, 0}, Padic(c, 3));
		s.add_term({2, 1}, Padic::rational(c, mpq_class(1, 7)));
		json j = io::write_series(s);
		Series t = io::read_series(io::root(j, "inline"), c);
		CHECK(t.tail_bound() == 6);
		CHECK(t.trunc_order() == 4);
		CHECK(t.coeff({1, 0}) == Padic(c, 3));
		CHECK(t.coeff({2, 1}) == Padic::rational(c, mpq_class(1, 7)));
	}

	TEST_CASE("syntax errors carry line and column")
	{
		std::string f = fixtures::path("systems/malformed.json");
		std::string msg = error_text([&] { io::load_file(f); });
		CHECK(msg.rfind(f + ":4:", 0) == 0);
		CHECK(msg.find(": error: ") != std::string::npos);
	}

	TEST_CASE("schema errors carry a pointer")
	{
		std::string f = temp_file("pqc_schema.json", R"({"p": 5, "components": [{"num_vars": 1, "trunc_order": 2, "terms": [{"exps": [0], "coeff": "x"}]}]})");
		json doc = io::load_file(f);
		std::string msg = error_text([&] { io::read_system(io::root(doc, f), {5, 10}); });
		CHECK(msg.find("/components/0/terms/0/coeff") != std::string::npos);
	}

	TEST_CASE("bundles validate the prime and precision")
	{
		std::string dir = fixtures::path("bundles/");
		CHECK_THROWS_AS(load_bundle(dir + "wetherell.json", 3), Error);
		json doc = io::load_file(dir + "empty_pairs.json");
		doc["p"] = 9;
		doc["field"] = fixtures::path("fields/q_i.json");
		CHECK_THROWS_AS(load_bundle(temp_file("pqc_bad_prime.json", doc.dump())), Error);
	}

	TEST_CASE("an empty pair list gives an empty report")
	{
		Bundle b = load_bundle(fixtures::path("bundles/empty_pairs.json"));
		json out = run_pairs(b);
		CHECK(out["pairs"].empty());
		CHECK(out["summary"]["pairs"] == 0);
	}

	TEST_CASE("inconsistent local heights stop the run")
	{
		Bundle b = load_bundle(fixtures::path("bundles/wetherell_inconsistent.json"));
		try
		{
			run_pairs(b);
			FAIL("expected a validation error");
		}
		catch (const Error &e)
		{
			CHECK(e.code() == Err::ValidationFailed);
		}
	}

	TEST_CASE("the Wetherell run lists the eight pairs and is repeatable")
	{
		Bundle b = load_bundle(fixtures::path("bundles/wetherell.json"));
		json a = run_pairs(b);
		CHECK(a["pairs"].size() == 8);
		CHECK(a["pairs"][0]["label"] == "(inf+,inf+)");
		CHECK(a.dump() == run_pairs(load_bundle(fixtures::path("bundles/wetherell.json"))).dump());
	}

	TEST_CASE("missing local data is reported")
	{
		json doc = io::load_file(fixtures::path("bundles/wetherell.json"));
		doc["primes"][0].erase("hQ");
		doc["field"] = fixtures::path("fields/q_sqrt34.json");
		Bundle b = load_bundle(temp_file("pqc_missing_hq.json", doc.dump()));
		try
		{
			bundle_tset(b, "cyclotomic", 1);
			FAIL("expected missing data");
		}
		catch (const Error &e)
		{
			CHECK(e.code() == Err::MissingPrimeData);
		}
	}
}
