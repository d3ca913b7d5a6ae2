#include "checks.hpp"
#include "frozen.hpp"
#include <doctest.h>
#include <random>

using namespace pqc;

namespace {

Series poly(Ctx c, int nvars, int trunc, std::vector<std::pair<Exps, long>> terms, int tail = Padic::kInf)
{
	Series s(c, nvars, trunc, tail);
	for (auto &[e, v] : terms)
		s.add_term(e, Padic(c, v));
	return s;
}

SearchConfig depth(int n)
{
	SearchConfig cfg;
	cfg.depth = n;
	return cfg;
}

} // namespace

TEST_SUITE("hensel")
{
	TEST_CASE("lift of an exact root")
	{
		Ctx c{5, 20};
		auto sys = make_system({poly(c, 1, 3, {{{2}, 1}, {{0}, -1}})});
		RootReport r = newton_lift(sys, {Padic(c, 1)});
		CHECK(r.status == RootStatus::Certified);
		CHECK(r.radius == 0);
		CHECK(r.approximation[0] == Padic(c, 1));
	}

	TEST_CASE("lift to the square root of -1")
	{
		Ctx c{5, 20};
		auto sys = make_system({poly(c, 1, 3, {{{2}, 1}, {{0}, 1}})});
		RootReport r = newton_lift(sys, {Padic(c, 2)});
		Padic a = r.approximation[0];
		CHECK(a * a == Padic(c, -1));
		CHECK(r.certified == 20);
		CHECK(a.residue(20) == mpz_class(frozen::sqrt5_m1));
		CHECK(checks::newton_violations(r) == 0);
	}

	TEST_CASE("convergence bound against a known root")
	{
		// x^2 - 2 over Z_7 from a start with delta = 0 and a start needing delta > 0
		Ctx c{7, 20};
		Padic root = Padic(c, mpz_class(frozen::sqrt7_2));
		auto sys = make_system({poly(c, 1, 3, {{{2}, 1}, {{0}, -2}})});
		RootReport r = newton_lift(sys, {Padic(c, 3)});
		REQUIRE(r.iterates.size() >= 2);
		for (size_t N = 1; N <= r.iterates.size(); ++N)
		{
			long long bound = r.radius + (1LL << (N - 1)) * (r.start_ord - 2 * r.radius);
			CHECK((root - r.iterates[N - 1][0]).ord_lb() >= std::min<long long>(bound, 20));
		}

		// 7 x^2 - 14 has the same root with det J of valuation 1
		Ctx d{7, 30};
		auto scaled = make_system({poly(d, 1, 3, {{{2}, 7}, {{0}, -14}})});
		RootReport s = newton_lift(scaled, {Padic(d, mpz_class(frozen::sqrt7_2) % 2401)});
		CHECK(s.radius == 1);
		CHECK(checks::newton_violations(s) == 0);
		CHECK(s.approximation[0] == root);
	}

	TEST_CASE("lift refuses starts outside the hypothesis")
	{
		Ctx c{5, 20};
		auto sys = make_system({poly(c, 1, 3, {{{2}, 1}, {{0}, 1}})});
		CHECK_THROWS_AS(newton_lift(sys, {Padic(c, 1)}), Error);
		auto flat = make_system({poly(c, 1, 3, {{{2}, 1}})});
		CHECK_THROWS_AS(newton_lift(flat, {Padic(c, 0)}), Error);
	}

	TEST_CASE("roots mod p")
	{
		Ctx c{3, 10};
		auto sys = make_system({poly(c, 2, 2, {{{1, 0}, 1}}), poly(c, 2, 2, {{{0, 1}, 1}})});
		CHECK(enumerate_roots_modp(sys) == std::vector<Residue>{{0, 0}});
		auto none = make_system({poly(c, 2, 2, {{{0, 0}, 1}, {{1, 0}, 3}}), poly(c, 2, 2, {{{0, 0}, 2}})});
		CHECK(enumerate_roots_modp(none).empty());
	}

	TEST_CASE("brute force examples")
	{
		Ctx c{3, 10};
		auto lin = make_system({poly(c, 1, 2, {{{1}, 1}})});
		CHECK(brute_force_roots(lin, 2) == std::vector<Residue>{{0}});
		auto sq = make_system({poly(c, 1, 3, {{{2}, 1}, {{0}, -1}})});
		CHECK(brute_force_roots(sq, 3) == std::vector<Residue>{{1}, {26}});
		CHECK_THROWS_AS(brute_force_roots(sq, 3, 5), Error);
	}

	TEST_CASE("brute force agrees with plain integer evaluation")
	{
		std::mt19937_64 rng(33);
		for (int t = 0; t < 60; ++t)
		{
			long p = std::vector<long>{3, 5, 7}[rng() % 3];
			int m = 1 + (int)(rng() % 2);
			int n = 1 + (int)(rng() % (m == 1 ? 4 : 2));
			auto is = gen::random_system(rng, p, m, 3);
			auto sys = gen::to_series(is, 12);
			std::set<oracle::Point> got;
			for (auto &r : brute_force_roots(sys, n))
				got.insert(checks::as_point(r));
			CHECK(got == oracle::roots(is.polys, m, p, n));
		}
	}

	TEST_CASE("a single certified root")
	{
		Ctx c{5, 20};
		auto sys = make_system({poly(c, 2, 2, {{{1, 0}, 1}, {{0, 0}, -1}}), poly(c, 2, 2, {{{0, 1}, 1}, {{0, 0}, -2}})});
		auto reps = solve_system(sys, depth(4));
		REQUIRE(reps.size() == 1);
		CHECK(reps[0].status == RootStatus::Certified);
		CHECK(reps[0].residue == Residue{1, 2});
		CHECK(reps[0].approximation[0] == Padic(c, 1));
	}

	TEST_CASE("non-isolated roots end as residual classes")
	{
		Ctx c{3, 20};
		auto sys = make_system({poly(c, 2, 3, {{{2, 0}, 1}, {{0, 2}, -1}}), poly(c, 2, 3, {{{1, 0}, 1}, {{0, 1}, -1}})});
		auto reps = solve_system(sys, depth(3));
		REQUIRE(!reps.empty());
		for (auto &r : reps)
			CHECK(r.status == RootStatus::ResidualModPn);
		// the diagonal mod 27
		CHECK(reps.size() == 27);
		CHECK(checks::reported(reps) == oracle::roots({{{{{2, 0}, 1}, {{0, 2}, -1}}}, {{{{1, 0}, 1}, {{0, 1}, -1}}}}, 2, 3, 3));
	}

	TEST_CASE("the tail must reach the target depth")
	{
		Ctx c{5, 20};
		auto sys = make_system({poly(c, 1, 3, {{{2}, 1}, {{0}, 1}}, 3)});
		CHECK_THROWS_AS(solve_system(sys, depth(4)), Error);
		CHECK_NOTHROW(solve_system(sys, depth(3)));
	}

	TEST_CASE("budget exhaustion raises")
	{
		Ctx c{5, 20};
		auto sys = make_system({poly(c, 2, 3, {{{2, 0}, 1}, {{0, 2}, -1}}), poly(c, 2, 3, {{{1, 0}, 1}, {{0, 1}, -1}})});
		SearchConfig cfg = depth(4);
		cfg.budget = 50;
		CHECK_THROWS_AS(solve_system(sys, cfg), Error);
	}

	TEST_CASE("schedules give the same roots")
	{
		std::mt19937_64 rng(8);
		for (int t = 0; t < 40; ++t)
		{
			long p = std::vector<long>{3, 5}[rng() % 2];
			auto is = gen::random_system(rng, p, 1, 3);
			auto sys = gen::to_series(is, 20);
			SearchConfig a = depth(5), b = depth(5), d = depth(5);
			b.first_fallback = 1;
			d.first_fallback = 2;
			d.schedule = {4, 5};
			auto ra = checks::reported(solve_system(sys, a));
			CHECK(ra == checks::reported(solve_system(sys, b)));
			CHECK(ra == checks::reported(solve_system(sys, d)));
			CHECK(ra == oracle::roots(is.polys, 1, p, 5));
		}
	}

	TEST_CASE("bad schedules are rejected")
	{
		Ctx c{5, 20};
		auto sys = make_system({poly(c, 1, 3, {{{2}, 1}, {{0}, 1}})});
		SearchConfig cfg = depth(4);
		cfg.schedule = {2, 2};
		CHECK_THROWS_AS(solve_system(sys, cfg), Error);
		cfg.schedule = {9};
		CHECK_THROWS_AS(solve_system(sys, cfg), Error);
	}

	TEST_CASE("output order is lexicographic and repeatable")
	{
		std::mt19937_64 rng(4);
		for (int t = 0; t < 20; ++t)
		{
			auto is = gen::random_system(rng, 5, 2, 2);
			auto sys = gen::to_series(is, 16);
			auto a = solve_system(sys, depth(2)), b = solve_system(sys, depth(2));
			REQUIRE(a.size() == b.size());
			for (size_t i = 0; i < a.size(); ++i)
			{
				CHECK(a[i].residue == b[i].residue);
				if (i)
					CHECK(a[i - 1].residue <= a[i].residue);
			}
		}
	}

	TEST_CASE("certified roots are separated beyond their radii")
	{
		std::mt19937_64 rng(19);
		for (int t = 0; t < 60; ++t)
		{
			long p = std::vector<long>{3, 5, 7}[rng() % 3];
			int m = 1 + (int)(rng() % 2);
			auto sys = gen::to_series(gen::random_system(rng, p, m, 3), 20);
			auto reps = solve_system(sys, depth(3));
			for (size_t i = 0; i < reps.size(); ++i)
				for (size_t j = i + 1; j < reps.size(); ++j)
				{
					auto &a = reps[i], &b = reps[j];
					if (a.status != RootStatus::Certified || b.status != RootStatus::Certified)
						continue;
					int o = Padic::kInf;
					for (int k = 0; k < m; ++k)
						o = std::min(o, (a.approximation[k] - b.approximation[k]).ord_lb());
					CHECK(o <= std::max(a.radius, b.radius));
				}
			for (auto &r : reps)
				if (r.status == RootStatus::Certified)
					for (auto &v : evaluate(sys, r.approximation))
						CHECK(v.ord_lb() >= r.certified);
		}
	}
}
