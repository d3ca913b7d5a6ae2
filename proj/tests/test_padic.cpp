#include "frozen.hpp"
#include "oracle.hpp"
#include "pqc/padic.hpp"
#include <doctest.h>
#include <random>

using namespace pqc;

namespace {

mpz_class res(const Padic &x, int k) { return x.residue(k); }

mpq_class random_rational(std::mt19937_64 &rng, long p, bool unit = false)
{
	std::uniform_int_distribution<long> num(-500, 500), den(1, 60);
	for (;;)
	{
		mpq_class q(num(rng), den(rng));
		q.canonicalize();
		if (q == 0)
			continue;
		if (unit && (q.get_num() % p == 0 || q.get_den() % p == 0))
			continue;
		return q;
	}
}

} // namespace

TEST_SUITE("padic")
{
	TEST_CASE("construction and valuation")
	{
		Ctx c{5, 10};
		Padic x(c, 75);
		CHECK(x.val() == 2);
		CHECK(x.unit() == 3);
		CHECK(x.rel_prec() == 10);
		CHECK(x.abs_prec() == 12);
		CHECK(Padic::rational(c, mpq_class(1, 25)).val() == -2);
		CHECK(Padic(c, 0).is_exact_zero());
		CHECK(ord_p(mpz_class(250), 5) == 3);
	}

	TEST_CASE("digits of -1")
	{
		Ctx c{3, 6};
		auto d = Padic(c, -1).digits();
		CHECK(d == std::vector<long>{2, 2, 2, 2, 2, 2});
	}

	TEST_CASE("mixed primes are rejected")
	{
		CHECK_THROWS_AS(Padic({3, 5}, 1) + Padic({5, 5}, 1), Error);
	}

	TEST_CASE("division by a zero raises")
	{
		Ctx c{7, 8};
		CHECK_THROWS_AS(Padic(c, 1) / Padic::zero(c), Error);
	}

	TEST_CASE("cancellation loses relative precision")
	{
		Ctx c{3, 10};
		Padic a(c, 1), b = Padic(c, 1) + Padic(c, 3 * 3 * 3 * 3);
		Padic d = b - a;
		CHECK(d.val() == 4);
		CHECK(d.abs_prec() == 10);
		CHECK(d.rel_prec() == 6);
	}

	TEST_CASE("ring operations agree with exact rationals")
	{
		std::mt19937_64 rng(101);
		for (long p : {3L, 5L, 7L, 11L})
		{
			Ctx c{p, 16};
			for (int i = 0; i < 200; ++i)
			{
				mpq_class a = random_rational(rng, p), b = random_rational(rng, p);
				Padic A = Padic::rational(c, a), B = Padic::rational(c, b);
				CHECK(A + B == Padic::rational(c, a + b));
				CHECK(A * B == Padic::rational(c, a * b));
				CHECK(A - B == Padic::rational(c, a - b));
				CHECK(A / B == Padic::rational(c, a / b));
				// the representative is a p-adic approximation of a to its precision
				Padic back = Padic::rational(c, A.to_rational());
				CHECK((back - A).ord_lb() >= A.abs_prec());
			}
		}
	}

	TEST_CASE("log matches the series oracle")
	{
		Ctx c3{3, 20}, c5{5, 20}, c7{7, 20};
		CHECK(res(padic_log(Padic(c3, 2)), 20) == mpz_class(frozen::log3_2));
		CHECK(res(padic_log(Padic(c5, 2)), 20) == mpz_class(frozen::log5_2));
		CHECK(res(padic_log(Padic(c7, 3)), 20) == mpz_class(frozen::log7_3));
		CHECK(res(padic_log(Padic::rational(c5, mpq_class(1, 3))), 20) == mpz_class(frozen::log5_third));
	}

	TEST_CASE("log is a homomorphism on random units")
	{
		std::mt19937_64 rng(7);
		for (long p : {3L, 5L, 13L})
		{
			Ctx c{p, 14};
			for (int i = 0; i < 60; ++i)
			{
				mpq_class a = random_rational(rng, p, true), b = random_rational(rng, p, true);
				Padic la = padic_log(Padic::rational(c, a)), lb = padic_log(Padic::rational(c, b));
				CHECK(padic_log(Padic::rational(c, a * b)) == la + lb);
				CHECK(res(la, 12) == oracle::log_unit(a, p, 12));
			}
		}
	}

	TEST_CASE("log of p is the declared branch")
	{
		Ctx c{5, 12};
		Padic branch(c, 35);
		CHECK(padic_log(Padic(c, 5), branch) == branch);
		CHECK(padic_log(Padic(c, 50), branch) == Padic(c, 2) * branch + padic_log(Padic(c, 2)));
		CHECK(padic_log(Padic(c, 5)).is_zero());
	}

	TEST_CASE("log of zero raises")
	{
		Ctx c{5, 12};
		CHECK_THROWS_AS(padic_log(Padic::zero(c)), Error);
	}

	TEST_CASE("Teichmueller lifts are roots of unity")
	{
		Ctx c{7, 15};
		for (long a = 1; a < 7; ++a)
		{
			Padic w = teichmueller(Padic(c, a));
			CHECK(w.pow(6) == Padic(c, 1));
			CHECK(w.residue(1) == a);
		}
	}

	TEST_CASE("square roots")
	{
		Ctx c5{5, 20}, c7{7, 20};
		auto r = padic_sqrt(Padic(c5, -1));
		REQUIRE(r);
		CHECK(r->residue(20) == mpz_class(frozen::sqrt5_m1));
		auto s = padic_sqrt(Padic(c7, 2));
		REQUIRE(s);
		CHECK(s->residue(20) == mpz_class(frozen::sqrt7_2));
		CHECK_FALSE(padic_sqrt(Padic(c5, 2)));
		CHECK_FALSE(padic_sqrt(Padic(c5, 5)));
		auto t = padic_sqrt(Padic(c5, 25 * 4));
		REQUIRE(t);
		CHECK(t->val() == 1);
		CHECK(*t * *t == Padic(c5, 100));
	}

	TEST_CASE("square roots square back")
	{
		std::mt19937_64 rng(3);
		for (long p : {3L, 7L, 11L})
		{
			Ctx c{p, 18};
			for (int i = 0; i < 100; ++i)
			{
				mpq_class a = random_rational(rng, p);
				Padic A = Padic::rational(c, a * a);
				auto r = padic_sqrt(A);
				REQUIRE(r);
				CHECK(*r * *r == A);
				CHECK((*r == Padic::rational(c, a) || *r == -Padic::rational(c, a)));
			}
		}
	}

	TEST_CASE("linear algebra")
	{
		Ctx c{5, 12};
		auto P = [&](long n) { return Padic(c, n); };
		PMat a{{P(1), P(2)}, {P(3), P(4)}};
		CHECK(det(a) == P(-2));
		auto x = solve(a, {P(5), P(6)});
		REQUIRE(x);
		CHECK((*x)[0] == P(-4));
		CHECK((*x)[1] == Padic::rational(c, mpq_class(9, 2)));

		PMat sing{{P(1), P(2)}, {P(2), P(4)}};
		CHECK(det(sing).is_zero());
		CHECK_FALSE(solve(sing, {P(1), P(1)}));
		auto ns = null_space(sing);
		REQUIRE(ns.size() == 1);
		CHECK(ns[0][0] == P(1));
		CHECK(ns[0][1] == Padic::rational(c, mpq_class(-1, 2)));
	}

	TEST_CASE("solve agrees with exact rational elimination")
	{
		std::mt19937_64 rng(17);
		std::uniform_int_distribution<long> d(-30, 30);
		Ctx c{7, 20};
		for (int t = 0; t < 100; ++t)
		{
			int n = 1 + (int)(rng() % 4);
			PMat A(n, PVec(n));
			PVec b(n);
			for (int i = 0; i < n; ++i)
			{
				for (int j = 0; j < n; ++j)
					A[i][j] = Padic(c, d(rng));
				b[i] = Padic(c, d(rng));
			}
			auto x = solve(A, b);
			if (!x)
			{
				CHECK(det(A).is_zero());
				continue;
			}
			for (int i = 0; i < n; ++i)
			{
				Padic s = Padic::zero(c);
				for (int j = 0; j < n; ++j)
					s += A[i][j] * (*x)[j];
				CHECK(s == b[i]);
			}
		}
	}
}
