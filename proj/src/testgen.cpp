#include "pqc/testgen.hpp"
#include <algorithm>

namespace pqc::gen {

int IntPoly::degree() const
{
	int d = 0;
	for (auto &[e, c] : terms)
		d = std::max(d, pqc::degree(e));
	return d;
}

namespace {

std::vector<Exps> monomials(int nvars, int maxdeg)
{
	std::vector<Exps> out;
	Exps e(nvars, 0);
	for (;;)
	{
		if (pqc::degree(e) <= maxdeg)
			out.push_back(e);
		int i = nvars - 1;
		while (i >= 0 && ++e[i] > maxdeg)
			e[i--] = 0;
		if (i < 0)
			break;
	}
	return out;
}

long eval(const IntPoly &f, const std::vector<long> &x)
{
	long s = 0;
	for (auto &[e, c] : f.terms)
	{
		long t = c;
		for (size_t i = 0; i < e.size(); ++i)
			for (int k = 0; k < e[i]; ++k)
				t *= x[i];
		s += t;
	}
	return s;
}

long uniform(std::mt19937_64 &rng, long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }

void add_constant(IntPoly &f, int nvars, long c)
{
	Exps zero(nvars, 0);
	for (auto &[e, v] : f.terms)
		if (e == zero)
		{
			v += c;
			return;
		}
	f.terms.push_back({zero, c});
}

} // namespace

IntSystem random_system(std::mt19937_64 &rng, long p, int m, int maxdeg)
{
	IntSystem s;
	s.p = p;
	s.nvars = m;
	auto mons = monomials(m, maxdeg);
	for (int i = 0; i < m; ++i)
	{
		IntPoly f;
		while (f.terms.empty())
			for (auto &e : mons)
				if (uniform(rng, 0, 9) < 6)
				{
					long c = uniform(rng, -p * p, p * p);
					if (c)
						f.terms.push_back({e, c});
				}
		s.polys.push_back(f);
	}
	if (uniform(rng, 0, 1))
	{
		std::vector<long> x0(m);
		for (auto &v : x0)
			v = uniform(rng, 0, p * p * p - 1);
		for (auto &f : s.polys)
			add_constant(f, m, -eval(f, x0));
	}
	return s;
}

Series to_series(const IntPoly &f, Ctx c, int nvars, int trunc_order)
{
	Series s(c, nvars, trunc_order);
	for (auto &[e, v] : f.terms)
		s.add_term(e, Padic(c, v));
	return s;
}

SeriesSystem to_series(const IntSystem &s, int prec)
{
	Ctx c{s.p, prec};
	int trunc = 1;
	for (auto &f : s.polys)
		trunc = std::max(trunc, f.degree() + 1);
	std::vector<Series> comps;
	for (auto &f : s.polys)
		comps.push_back(to_series(f, c, s.nvars, trunc));
	return make_system(comps);
}

EvenPairInstance random_even_pair(std::mt19937_64 &rng, long p)
{
	EvenPairInstance e;
	e.p = p;
	bool even = uniform(rng, 0, 1);
	for (auto &m : monomials(2, even ? 4 : 3))
	{
		if (even && pqc::degree(m) % 2)
			continue;
		if (uniform(rng, 0, 9) < 6 || pqc::degree(m) == 0)
		{
			long c = uniform(rng, -p * p, p * p);
			if (c)
				e.value.terms.push_back({m, c});
		}
	}

	// even cofactor c0 + a t1^2 + b t1 t2 + c t2^2, a unit wherever t1 = +-t2 mod p
	for (;;)
	{
		long c0 = uniform(rng, 1, p - 1) + p * uniform(rng, -p, p);
		long a = uniform(rng, -p, p), b = uniform(rng, -p, p), c = uniform(rng, -p, p);
		bool ok = true;
		for (long t = 0; t < p && ok; ++t)
			for (long s : {1L, -1L})
				ok = ok && ((c0 + (a + s * b + c) * t * t) % p + p) % p != 0;
		if (!ok)
			continue;
		IntPoly q;
		q.terms = {{{0, 0}, c0}, {{2, 0}, a}, {{1, 1}, b}, {{0, 2}, c}};
		std::erase_if(q.terms, [](auto &t) { return t.second == 0; });
		e.cofactor = q;
		break;
	}
	std::map<Exps, long> prod;
	for (auto &[m, c] : e.cofactor.terms)
	{
		prod[{m[0] + 2, m[1]}] += c;
		prod[{m[0], m[1] + 2}] -= c;
	}
	for (auto &[m, c] : prod)
		if (c)
			e.constraint.terms.push_back({m, c});

	long c0 = 0;
	for (auto &[m, c] : e.value.terms)
		if (m == Exps{0, 0})
			c0 = c;
	int count = (int)uniform(rng, 1, 3);
	while ((int)e.targets.size() < count)
	{
		long w = uniform(rng, -p * p, p * p);
		if (((c0 - w) % p + p) % p != 0 && std::find(e.targets.begin(), e.targets.end(), w) == e.targets.end())
			e.targets.push_back(w);
	}
	return e;
}

RhoSystem to_rho(const EvenPairInstance &e, int prec)
{
	Ctx c{e.p, prec};
	int trunc = std::max(e.value.degree(), e.constraint.degree()) + 1;
	RhoSystem r;
	r.label = "even-pair";
	r.symmetry = Symmetry::EvenPair;
	r.series = {to_series(e.value, c, 2, trunc), to_series(e.constraint, c, 2, trunc)};
	TSet T;
	for (long w : e.targets)
		T.push_back(Padic(c, w));
	r.targets = {T, {Padic::zero(c)}};
	return r;
}

} // namespace pqc::gen
