#include "oracle.hpp"
#include "pqc/mseries.hpp"
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

bool same(const Series &a, const Series &b)
{
	Series d = a - b;
	for (auto &[e, v] : d.terms())
		if (!v.is_zero())
			return false;
	return true;
}

} // namespace

TEST_SUITE("mseries")
{
	TEST_CASE("evaluation examples")
	{
		Ctx c{5, 12};
		Series s = poly(c, 2, 3, {{{2, 0}, 1}, {{0, 1}, -1}});
		CHECK(evaluate(s, {Padic::zero(c), Padic::zero(c)}).is_zero());
		Series u = poly(c, 2, 3, {{{0, 0}, 1}, {{1, 1}, 1}});
		CHECK(evaluate(u, {Padic(c, 5), Padic(c, 5)}) == Padic(c, 26));
	}

	TEST_CASE("evaluation matches exact rational evaluation")
	{
		std::mt19937_64 rng(5);
		std::uniform_int_distribution<long> coef(-200, 200), pt(0, 10000);
		for (long p : {3L, 5L, 7L})
		{
			Ctx c{p, 15};
			for (int t = 0; t < 50; ++t)
			{
				pqc::gen::IntPoly f;
				for (int i = 0; i < 5; ++i)
					for (int j = 0; i + j < 5; ++j)
						f.terms.push_back({{i, j}, coef(rng)});
				Series s = pqc::gen::to_series(f, c, 2, 5);
				std::vector<mpz_class> x{p * pt(rng), p * pt(rng)};
				mpz_class M = oracle::modulus(p, 15);
				Padic v = evaluate(s, {Padic(c, x[0]), Padic(c, x[1])});
				mpz_class want = oracle::eval_mod(f, x, M);
				CHECK((v - Padic(c, want)).ord_lb() >= 15);
			}
		}
	}

	TEST_CASE("the tail caps the certified precision")
	{
		Ctx c{3, 20};
		Series s = poly(c, 1, 2, {{{0}, 1}, {{1}, 1}}, 4);
		Padic v = evaluate(s, {Padic(c, 3)});
		CHECK(v.abs_prec() == 4);
		s.set_tail_bound(0);
		CHECK_THROWS_AS(evaluate(s, {Padic(c, 3)}), Error);
	}

	TEST_CASE("non-integral points are refused")
	{
		Ctx c{3, 10};
		Series s = poly(c, 1, 2, {{{1}, 1}});
		CHECK_THROWS_AS(evaluate(s, {Padic::rational(c, mpq_class(1, 3))}), Error);
	}

	TEST_CASE("terms at the truncation order are refused")
	{
		Ctx c{3, 10};
		Series s(c, 2, 3);
		CHECK_THROWS_AS(s.add_term({2, 1}, Padic(c, 1)), Error);
	}

	TEST_CASE("jacobian")
	{
		Ctx c{5, 10};
		Series f1 = poly(c, 2, 3, {{{2, 0}, 1}, {{0, 1}, -1}});
		Series f2 = poly(c, 2, 3, {{{1, 0}, 1}, {{0, 1}, 1}});
		auto J = jacobian(make_system({f1, f2}));
		CHECK(same(J[0][0], poly(c, 2, 3, {{{1, 0}, 2}})));
		CHECK(same(J[0][1], poly(c, 2, 3, {{{0, 0}, -1}})));
		CHECK(same(J[1][0], poly(c, 2, 3, {{{0, 0}, 1}})));
		CHECK(same(J[1][1], poly(c, 2, 3, {{{0, 0}, 1}})));

		Series k = poly(c, 2, 3, {{{0, 0}, 7}});
		for (auto &row : jacobian(make_system({k, k})))
			for (auto &d : row)
				CHECK(d.min_coeff_ord() >= Padic::kInf);
	}

	TEST_CASE("derivative matches symbolic differentiation")
	{
		std::mt19937_64 rng(9);
		std::uniform_int_distribution<long> coef(-50, 50);
		Ctx c{7, 12};
		for (int t = 0; t < 40; ++t)
		{
			std::map<Exps, long> f;
			for (int i = 0; i < 5; ++i)
				for (int j = 0; i + j < 5; ++j)
					f[{i, j}] = coef(rng);
			Series s(c, 2, 5);
			for (auto &[e, v] : f)
				s.add_term(e, Padic(c, v));
			for (int var = 0; var < 2; ++var)
			{
				Series d = derivative(s, var);
				for (auto &[e, v] : f)
				{
					if (e[var] == 0)
						continue;
					Exps down = e;
					--down[var];
					CHECK(d.coeff(down) == Padic(c, v * e[var]));
				}
			}
		}
	}

	TEST_CASE("rescale examples")
	{
		Ctx c{3, 12};
		auto a = rescale_and_normalize(make_system({poly(c, 1, 3, {{{1}, 1}})}));
		CHECK(a.scale_exponents == std::vector<int>{1});
		CHECK(a.components[0].coeff({1}) == Padic(c, 1));

		auto b = rescale_and_normalize(make_system({poly(c, 1, 3, {{{0}, 3}, {{2}, 1}})}));
		CHECK(b.scale_exponents == std::vector<int>{1});
		CHECK(b.components[0].coeff({0}) == Padic(c, 1));
		CHECK(b.components[0].coeff({2}) == Padic(c, 3));
		CHECK(b.normalized);

		CHECK_THROWS_AS(rescale_and_normalize(make_system({Series(c, 1, 3)})), Error);
	}

	TEST_CASE("rescaled systems have minimum coefficient valuation zero")
	{
		std::mt19937_64 rng(12);
		for (int t = 0; t < 50; ++t)
		{
			long p = std::vector<long>{3, 5, 7}[rng() % 3];
			auto is = pqc::gen::random_system(rng, p, 2, 3);
			auto sys = rescale_and_normalize(pqc::gen::to_series(is, 16));
			for (auto &s : sys.components)
				CHECK(s.min_coeff_ord() == 0);
		}
	}

	TEST_CASE("symmetric factoring examples")
	{
		Ctx c{5, 10};
		auto q = symmetric_factor(poly(c, 2, 3, {{{2, 0}, 1}, {{0, 2}, -1}}), SymMode::EvenPair);
		CHECK(same(q.quotient, poly(c, 2, 1, {{{0, 0}, 1}})));

		auto r = symmetric_factor(poly(c, 2, 4, {{{3, 0}, 1}, {{0, 3}, -1}}), SymMode::AntiDiagonal);
		CHECK(same(r.quotient, poly(c, 2, 3, {{{2, 0}, 1}, {{1, 1}, 1}, {{0, 2}, 1}})));

		CHECK_THROWS_AS(symmetric_factor(poly(c, 2, 3, {{{2, 0}, 1}, {{0, 2}, -2}}), SymMode::EvenPair), Error);
		CHECK_THROWS_AS(symmetric_factor(poly(c, 2, 3, {{{2, 0}, 1}, {{0, 2}, -1}, {{1, 0}, 1}}), SymMode::EvenPair), Error);
		CHECK_THROWS_AS(symmetric_factor(poly(c, 2, 3, {{{1, 0}, 1}, {{0, 1}, 2}}), SymMode::AntiDiagonal), Error);
	}

	TEST_CASE("even factoring re-multiplies to the input")
	{
		std::mt19937_64 rng(21);
		std::uniform_int_distribution<long> coef(-40, 40);
		Ctx c{7, 14};
		Series d1 = poly(c, 2, 9, {{{2, 0}, 1}, {{0, 2}, -1}});
		for (int t = 0; t < 40; ++t)
		{
			std::vector<std::pair<Exps, long>> terms{{{0, 0}, coef(rng)}};
			for (int i = 1; i <= 3; ++i)
			{
				long ci = coef(rng);
				terms.push_back({{2 * i, 0}, ci});
				terms.push_back({{0, 2 * i}, -ci});
			}
			Series s = poly(c, 2, 9, terms);
			auto f = symmetric_factor(s, SymMode::EvenPair);
			Series back = d1 * f.quotient + Series::constant(c, 2, 9, s.constant_term());
			CHECK(same(back, s));
		}
	}

	TEST_CASE("restriction to the diagonals and even series")
	{
		Ctx c{5, 10};
		Series s = poly(c, 2, 4, {{{2, 0}, 1}, {{1, 1}, 3}, {{0, 2}, 2}, {{0, 0}, 4}});
		Series plus = restrict_to_line(s, 1), minus = restrict_to_line(s, -1);
		CHECK(plus.coeff({2}) == Padic(c, 6));
		CHECK(minus.coeff({2}) == Padic(c, 0));
		CHECK(is_even(plus));
		Series G = in_square(plus);
		CHECK(G.coeff({1}) == Padic(c, 6));
		CHECK(G.coeff({0}) == Padic(c, 4));
		CHECK_FALSE(is_even(restrict_to_line(poly(c, 2, 4, {{{1, 0}, 1}}), 1)));
		CHECK_THROWS_AS(in_square(restrict_to_line(poly(c, 2, 4, {{{1, 0}, 1}}), 1)), Error);
	}
}
