#include "pqc/icc.hpp"

namespace pqc {

QuadElt conj(const QuadElt &x) { return {x.a, -x.b}; }

QuadElt mul(const QuadElt &x, const QuadElt &y, long d)
{
	return {x.a * y.a + x.b * y.b * d, x.a * y.b + x.b * y.a};
}

mpq_class norm(const QuadElt &x, long d) { return x.a * x.a - x.b * x.b * d; }

QuadElt inverse(const QuadElt &x, long d)
{
	mpq_class n = norm(x, d);
	if (n == 0)
		throw Error(Err::DivisionByZero, "inverse of zero in a quadratic field");
	return {x.a / n, -x.b / n};
}

QuadElt power(const QuadElt &x, long n, long d)
{
	QuadElt base = n < 0 ? inverse(x, d) : x;
	QuadElt r{1, 0};
	for (long i = 0; i < (n < 0 ? -n : n); ++i)
		r = mul(r, base, d);
	return r;
}

const char *label_name(CharLabel l)
{
	switch (l)
	{
	case CharLabel::Cyclotomic: return "cyclotomic";
	case CharLabel::Anticyclotomic: return "anticyclotomic";
	default: return "custom";
	}
}

namespace {

bool squarefree(long d)
{
	long n = d < 0 ? -d : d;
	for (long f = 2; f * f <= n; ++f)
		if (n % (f * f) == 0)
			return false;
	return true;
}

// -1 inert, 0 ramified, 1 split
int splitting(long d, long q)
{
	if (q == 2)
	{
		long r = ((d % 8) + 8) % 8;
		return r == 1 ? 1 : r == 5 ? -1 : 0;
	}
	mpz_class dd = d;
	mpz_class qq = q;
	return mpz_legendre(dd.get_mpz_t(), qq.get_mpz_t());
}

mpz_class ipow(long q, long e)
{
	mpz_class r;
	mpz_ui_pow_ui(r.get_mpz_t(), q, e);
	return r;
}

QuadElt torsion_generator(long d)
{
	if (d == -1)
		return {0, 1};
	if (d == -3)
		return {mpq_class(1, 2), mpq_class(1, 2)};
	return {-1, 0};
}

} // namespace

QuadraticFieldData make_field(long d, int class_number, std::optional<QuadElt> fund_unit, std::vector<PrimeIdealData> primes)
{
	if (d == 0 || d == 1 || !squarefree(d))
		throw Error(Err::InvalidInput, "d must be squarefree and different from 0 and 1");
	if (class_number < 1)
		throw Error(Err::InvalidInput, "class number must be positive");
	QuadraticFieldData K;
	K.d = d;
	K.class_number = class_number;
	if (d > 0)
	{
		if (!fund_unit)
			throw Error(Err::InvalidInput, "real quadratic field needs a fundamental unit");
		mpq_class n = norm(*fund_unit, d);
		if (n != 1 && n != -1)
			throw Error(Err::InvalidInput, "fundamental unit must have norm +1 or -1");
		K.fund_unit = fund_unit;
		K.r1 = 2;
		K.r2 = 0;
	}
	else
	{
		K.r1 = 0;
		K.r2 = 1;
	}
	K.torsion_order = d == -1 ? 4 : d == -3 ? 6 : 2;
	for (auto &q : primes)
	{
		int s = splitting(d, q.q);
		PrimeTag expect = s == 1 ? PrimeTag::Split : s == -1 ? PrimeTag::Inert : PrimeTag::Ramified;
		if (expect != q.tag)
			throw Error(Err::InvalidInput, "prime " + std::to_string(q.q) + " has the wrong splitting tag");
		mpq_class n = abs(norm(q.xi, d));
		if (n != mpq_class(ipow(q.q, (long)q.residue_degree() * class_number)))
			throw Error(Err::InvalidInput, "generator for prime " + std::to_string(q.q) + " has norm " + n.get_str());
	}
	K.primes = std::move(primes);
	return K;
}

Padic SplitPrimeContext::embed(const QuadElt &x, int place) const
{
	if (x.a == 0 || x.b == 0)
	{
		Padic a = Padic::rational(ctx, x.a), b = Padic::rational(ctx, x.b);
		return place == 1 ? a + b * sqrt_d : a - b * sqrt_d;
	}
	// a + b sqrt(d) can cancel up to ord N(x) - 2 min(ord a, ord b) digits, so
	// evaluate with a longer sqrt(d) and cap back to the working precision
	long p = ctx.p;
	auto ord = [p](const mpq_class &q) { return ord_p(q.get_num(), p) - ord_p(q.get_den(), p); };
	mpq_class n = x.a * x.a - mpq_class(d) * x.b * x.b;
	int loss = std::max(0, ord(n) - 2 * std::min(ord(x.a), ord(x.b)));
	Ctx wide{p, ctx.prec + loss};
	Padic r = *padic_sqrt(Padic(wide, d));
	if ((r - sqrt_d).ord_lb() < ctx.prec)
		r = -r;
	Padic a = Padic::rational(wide, x.a), b = Padic::rational(wide, x.b);
	Padic v = place == 1 ? a + b * r : a - b * r;
	return Padic::rational(ctx, v.to_rational()).with_abs_prec(v.abs_prec());
}

SplitPrimeContext split_context(const QuadraticFieldData &K, Ctx c)
{
	if (splitting(K.d, c.p) != 1)
		throw Error(Err::NotSplit, std::to_string(c.p) + " does not split in Q(sqrt(" + std::to_string(K.d) + "))");
	auto r = padic_sqrt(Padic(c, K.d));
	if (!r)
		throw Error(Err::NotSplit, "no square root of d");
	return {c, *r, K.d};
}

IdeleClassCharacter make_character(Padic c1, Padic c2, CharLabel label, const QuadraticFieldData &K, const SplitPrimeContext &ctx)
{
	IdeleClassCharacter chi{c1, c2, Padic::zero(ctx.ctx), Padic::zero(ctx.ctx), label};
	for (auto &q : K.primes)
	{
		if (q.q != ctx.ctx.p)
			continue;
		Padic s[2] = {ctx.embed(q.xi, 1), ctx.embed(q.xi, 2)};
		if (s[0].is_zero() || s[1].is_zero() || (s[0].val() > 0) == (s[1].val() > 0))
			throw Error(Err::InvalidInput, "generator above p must vanish at exactly one place");
		int j0 = s[0].val() > 0 ? 0 : 1;
		Padic e(ctx.ctx, (long)s[j0].val());
		Padic A = padic_log(s[j0]);
		Padic B = padic_log(s[1 - j0]);
		Padic c[2] = {c1, c2};
		Padic *br[2] = {&chi.branch1, &chi.branch2};
		if (!c[j0].is_zero())
			*br[j0] = -(c[j0] * A + c[1 - j0] * B) / (c[j0] * e);
		if (!c[1 - j0].is_zero())
			*br[1 - j0] = -(c[1 - j0] * A + c[j0] * B) / (c[1 - j0] * e);
		break;
	}
	return chi;
}

IdeleClassCharacter cyclotomic_character(const QuadraticFieldData &K, const SplitPrimeContext &ctx)
{
	return make_character(Padic(ctx.ctx, 1L), Padic(ctx.ctx, 1L), CharLabel::Cyclotomic, K, ctx);
}

IdeleClassCharacter anticyclotomic_character(const QuadraticFieldData &K, const SplitPrimeContext &ctx)
{
	if (K.d > 0)
		throw Error(Err::NotImaginary, "anticyclotomic character needs an imaginary quadratic field");
	if (splitting(K.d, ctx.ctx.p) != 1)
		throw Error(Err::NotSplit, "p does not split");
	return make_character(Padic(ctx.ctx, 1L), Padic(ctx.ctx, -1L), CharLabel::Anticyclotomic, K, ctx);
}

Padic unit_equation_residual(const IdeleClassCharacter &chi, const QuadraticFieldData &K, const SplitPrimeContext &ctx)
{
	QuadElt u = K.fund_unit ? *K.fund_unit : torsion_generator(K.d);
	return chi.c1 * padic_log(ctx.embed(u, 1), chi.branch1) + chi.c2 * padic_log(ctx.embed(u, 2), chi.branch2);
}

std::vector<IdeleClassCharacter> character_space_basis(const QuadraticFieldData &K, const SplitPrimeContext &ctx)
{
	Ctx c = ctx.ctx;
	std::vector<IdeleClassCharacter> basis;
	if (K.d < 0)
	{
		basis.push_back(cyclotomic_character(K, ctx));
		basis.push_back(anticyclotomic_character(K, ctx));
	}
	else
	{
		Padic L1 = padic_log(ctx.embed(*K.fund_unit, 1));
		Padic L2 = padic_log(ctx.embed(*K.fund_unit, 2));
		if (L1.is_zero() && L2.is_zero())
			throw Error(Err::PrecisionExhausted, "log of the fundamental unit vanishes at both places to working precision");
		if ((L1 + L2).is_zero())
			basis.push_back(cyclotomic_character(K, ctx));
		else if (L2.is_zero())
			basis.push_back(make_character(Padic::zero(c), Padic(c, 1L), CharLabel::Custom, K, ctx));
		else
			basis.push_back(make_character(Padic(c, 1L), -L1 / L2, CharLabel::Custom, K, ctx));
	}
	for (auto &chi : basis)
	{
		Padic res = unit_equation_residual(chi, K, ctx);
		if (!res.is_zero())
			throw Error(Err::PrecisionExhausted, "basis character fails the unit equation");
	}
	return basis;
}

Padic local_value_away_from_p(const IdeleClassCharacter &chi, const PrimeIdealData &q, const QuadraticFieldData &K, const SplitPrimeContext &ctx)
{
	if (q.q % ctx.ctx.p == 0)
		throw Error(Err::DividesP, "prime " + std::to_string(q.q) + " lies above p");
	Padic s = chi.c1 * padic_log(ctx.embed(q.xi, 1), chi.branch1) + chi.c2 * padic_log(ctx.embed(q.xi, 2), chi.branch2);
	return -s / Padic(ctx.ctx, (long)K.class_number);
}

Padic verify_principal_vanishing(const IdeleClassCharacter &chi, const std::vector<std::pair<PrimeIdealData, int>> &factorization, const QuadElt &beta, const QuadraticFieldData &K, const SplitPrimeContext &ctx)
{
	mpq_class expect = 1;
	for (auto &[q, e] : factorization)
	{
		mpq_class f(ipow(q.q, q.residue_degree()));
		for (int i = 0; i < (e < 0 ? -e : e); ++i)
		{
			if (e < 0)
				expect /= f;
			else
				expect *= f;
		}
	}
	if (abs(norm(beta, K.d)) != expect)
		throw Error(Err::InconsistentFactorization, "norm of beta is " + mpq_class(norm(beta, K.d)).get_str() + ", factorization gives " + expect.get_str());
	Padic r = chi.c1 * padic_log(ctx.embed(beta, 1), chi.branch1) + chi.c2 * padic_log(ctx.embed(beta, 2), chi.branch2);
	for (auto &[q, e] : factorization)
		if (q.q != ctx.ctx.p)
			r = r + Padic(ctx.ctx, (long)e) * local_value_away_from_p(chi, q, K, ctx);
	return r;
}

} // namespace pqc
