#include "pqc/mseries.hpp"
#include <algorithm>
#include <numeric>

namespace pqc {

namespace {

int sat_add(int a, int b)
{
	if (a >= Padic::kInf || b >= Padic::kInf)
		return Padic::kInf;
	return a + b;
}

void check_compatible(const Series &a, const Series &b)
{
	if (a.ctx().p != b.ctx().p)
		throw Error(Err::DifferentPrimes, "series over different primes");
	if (a.num_vars() != b.num_vars())
		throw Error(Err::InvalidInput, "series in different numbers of variables");
}

} // namespace

int degree(const Exps &e) { return std::accumulate(e.begin(), e.end(), 0); }

Series::Series(Ctx c, int num_vars, int trunc_order, int tail_bound)
    : ctx_(c), nvars_(num_vars), trunc_(trunc_order), tail_(tail_bound)
{
	if (num_vars < 1)
		throw Error(Err::InvalidInput, "series needs at least one variable");
	if (trunc_order < 0)
		throw Error(Err::InvalidInput, "negative truncation order");
}

Series Series::constant(Ctx c, int num_vars, int trunc_order, const Padic &v)
{
	Series s(c, num_vars, trunc_order);
	if (trunc_order > 0)
		s.add_term(Exps(num_vars, 0), v);
	else if (!v.is_exact_zero())
		s.tail_ = v.ord_lb();
	return s;
}

Series Series::variable(Ctx c, int num_vars, int trunc_order, int j)
{
	Series s(c, num_vars, trunc_order);
	Exps e(num_vars, 0);
	e[j] = 1;
	if (trunc_order > 1)
		s.add_term(e, Padic(c, 1L));
	else
		s.tail_ = 0;
	return s;
}

void Series::add_term(const Exps &e, const Padic &c)
{
	if ((int)e.size() != nvars_)
		throw Error(Err::InvalidInput, "exponent tuple has wrong length");
	for (int x : e)
		if (x < 0)
			throw Error(Err::InvalidInput, "negative exponent");
	if (degree(e) >= trunc_)
		throw Error(Err::InvalidInput, "term of degree " + std::to_string(degree(e)) + " at truncation order " + std::to_string(trunc_));
	if (c.p() != ctx_.p)
		throw Error(Err::DifferentPrimes, "coefficient over a different prime");
	auto it = terms_.find(e);
	Padic v = it == terms_.end() ? c : it->second + c;
	if (v.is_exact_zero())
	{
		if (it != terms_.end())
			terms_.erase(it);
		return;
	}
	terms_[e] = v;
}

Padic Series::coeff(const Exps &e) const
{
	auto it = terms_.find(e);
	return it == terms_.end() ? Padic::zero(ctx_) : it->second;
}

int Series::min_coeff_ord() const
{
	int m = Padic::kInf;
	for (auto &[e, c] : terms_)
		m = std::min(m, c.ord_lb());
	return m;
}

bool Series::all_integral() const
{
	for (auto &[e, c] : terms_)
		if (c.ord_lb() < 0)
			return false;
	return true;
}

Series operator+(const Series &a, const Series &b)
{
	check_compatible(a, b);
	int trunc = std::min(a.trunc_, b.trunc_);
	Series r(a.ctx_, a.nvars_, trunc, std::min(a.tail_, b.tail_));
	for (const Series *s : {&a, &b})
		for (auto &[e, c] : s->terms_)
		{
			if (degree(e) < trunc)
				r.add_term(e, c);
			else
				r.tail_ = std::min(r.tail_, c.ord_lb());
		}
	return r;
}

Series operator-(const Series &a, const Series &b) { return a + Padic(b.ctx(), -1L) * b; }

Series operator*(const Padic &k, const Series &s)
{
	Series r(s.ctx_, s.nvars_, s.trunc_, sat_add(s.tail_, k.ord_lb()));
	if (k.is_exact_zero())
		return r;
	for (auto &[e, c] : s.terms_)
		r.add_term(e, k * c);
	return r;
}

Series operator*(const Series &a, const Series &b)
{
	check_compatible(a, b);
	int trunc = std::min(a.trunc_, b.trunc_);
	int lba = std::min(a.min_coeff_ord(), a.tail_);
	int lbb = std::min(b.min_coeff_ord(), b.tail_);
	Series r(a.ctx_, a.nvars_, trunc, std::min(sat_add(a.tail_, lbb), sat_add(b.tail_, lba)));
	for (auto &[ea, ca] : a.terms_)
		for (auto &[eb, cb] : b.terms_)
		{
			Exps e(ea.size());
			for (size_t i = 0; i < e.size(); ++i)
				e[i] = ea[i] + eb[i];
			Padic c = ca * cb;
			if (degree(e) < trunc)
				r.add_term(e, c);
			else
				r.tail_ = std::min(r.tail_, c.ord_lb());
		}
	return r;
}

Padic evaluate(const Series &s, const PVec &point)
{
	if ((int)point.size() != s.num_vars())
		throw Error(Err::InvalidInput, "point has wrong dimension");
	for (auto &x : point)
		if (x.ord_lb() < 0)
			throw Error(Err::InvalidInput, "evaluation point must be integral");
	if (s.tail_bound() < 1)
		throw Error(Err::UncertifiedTail, "tail bound " + std::to_string(s.tail_bound()));
	Ctx c = s.ctx();
	std::vector<PVec> powers(point.size());
	Padic sum = Padic::zero(c);
	for (auto &[e, coef] : s.terms())
	{
		Padic t = coef;
		for (size_t i = 0; i < e.size(); ++i)
		{
			auto &pw = powers[i];
			if (pw.empty())
				pw.push_back(Padic(c, 1L));
			while ((int)pw.size() <= e[i])
				pw.push_back(pw.back() * point[i]);
			if (e[i])
				t = t * pw[e[i]];
		}
		sum = sum + t;
	}
	return sum.with_abs_prec(s.tail_bound());
}

Series derivative(const Series &s, int j)
{
	Series r(s.ctx(), s.num_vars(), std::max(0, s.trunc_order() - 1), s.tail_bound());
	for (auto &[e, c] : s.terms())
	{
		if (e[j] == 0)
			continue;
		Exps d = e;
		d[j] -= 1;
		r.add_term(d, Padic(s.ctx(), (long)e[j]) * c);
	}
	return r;
}

int SeriesSystem::tail_bound() const
{
	int t = Padic::kInf;
	for (auto &s : components)
		t = std::min(t, s.tail_bound());
	return t;
}

SeriesSystem make_system(std::vector<Series> comps)
{
	if (comps.empty())
		throw Error(Err::InvalidInput, "empty system");
	for (auto &s : comps)
		check_compatible(s, comps[0]);
	SeriesSystem sys;
	sys.components = std::move(comps);
	sys.scale_exponents.assign(sys.components.size(), 0);
	bool integral = true;
	int m = Padic::kInf;
	for (auto &s : sys.components)
	{
		integral = integral && s.all_integral();
		for (auto &[e, c] : s.terms())
			if (!c.is_zero())
				m = std::min(m, c.val());
	}
	sys.normalized = integral && m == 0;
	return sys;
}

PVec evaluate(const SeriesSystem &sys, const PVec &point)
{
	PVec out;
	for (auto &s : sys.components)
		out.push_back(evaluate(s, point));
	return out;
}

std::vector<std::vector<Series>> jacobian(const SeriesSystem &sys)
{
	std::vector<std::vector<Series>> j;
	for (auto &s : sys.components)
	{
		std::vector<Series> row;
		for (int v = 0; v < s.num_vars(); ++v)
			row.push_back(derivative(s, v));
		j.push_back(row);
	}
	return j;
}

SeriesSystem rescale_and_normalize(const SeriesSystem &raw)
{
	SeriesSystem out;
	Ctx c = raw.ctx();
	for (auto &s : raw.components)
	{
		int e = Padic::kInf;
		for (auto &[ex, coef] : s.terms())
			if (!coef.is_zero())
				e = std::min(e, coef.val() + degree(ex));
		if (e == Padic::kInf)
			throw Error(Err::AllCoefficientsZero, "component has no nonzero coefficient");
		int tail = s.tail_bound() >= Padic::kInf ? Padic::kInf : s.tail_bound() + s.trunc_order() - e;
		Series r(c, s.num_vars(), s.trunc_order(), tail);
		for (auto &[ex, coef] : s.terms())
		{
			Padic scaled = coef * Padic::from_parts(c, degree(ex) - e, mpz_class(1), c.prec);
			r.add_term(ex, scaled);
		}
		out.components.push_back(r);
		out.scale_exponents.push_back(e);
	}
	out.normalized = true;
	return out;
}

namespace {

// divide by (t1^shift - t2^shift) for shift 1 or 2, working down in t1-degree
Series divide_out(const Series &s, int shift)
{
	std::map<Exps, Padic> rem(s.terms().begin(), s.terms().end());
	Series q(s.ctx(), 2, std::max(0, s.trunc_order() - shift), s.tail_bound());
	while (!rem.empty())
	{
		auto it = std::prev(rem.end());
		if ((*it).first[0] < shift)
			break;
		Exps e = it->first;
		Padic c = it->second;
		rem.erase(it);
		q.add_term({e[0] - shift, e[1]}, c);
		Exps lower{e[0] - shift, e[1] + shift};
		auto jt = rem.find(lower);
		Padic v = jt == rem.end() ? c : jt->second + c;
		if (v.is_exact_zero())
		{
			if (jt != rem.end())
				rem.erase(jt);
		}
		else
			rem[lower] = v;
	}
	for (auto &[e, c] : rem)
		if (!c.is_zero())
			throw Error(Err::NotSymmetric, "nonzero remainder at exponent (" + std::to_string(e[0]) + "," + std::to_string(e[1]) + ")");
	return q;
}

} // namespace

Factored symmetric_factor(const Series &s, SymMode mode)
{
	if (s.num_vars() != 2)
		throw Error(Err::InvalidInput, "symmetric factoring needs two variables");
	if (mode == SymMode::AntiDiagonal)
		return {mode, divide_out(s, 1)};
	Series shifted = s - Series::constant(s.ctx(), 2, s.trunc_order(), s.constant_term());
	for (auto &[e, c] : shifted.terms())
		if (degree(e) % 2 && !c.is_zero())
			throw Error(Err::NotSymmetric, "odd-degree term breaks the (t1,t2) -> (-t1,-t2) symmetry");
	return {mode, divide_out(shifted, 2)};
}

Series restrict_to_line(const Series &s, int sign)
{
	if (s.num_vars() != 2)
		throw Error(Err::InvalidInput, "restriction needs two variables");
	Series r(s.ctx(), 1, s.trunc_order(), s.tail_bound());
	for (auto &[e, c] : s.terms())
		r.add_term({e[0] + e[1]}, (sign < 0 && e[1] % 2) ? -c : c);
	return r;
}

bool is_even(const Series &g)
{
	for (auto &[e, c] : g.terms())
		if (degree(e) % 2 && !c.is_zero())
			return false;
	return true;
}

Series in_square(const Series &g)
{
	if (g.num_vars() != 1 || !is_even(g))
		throw Error(Err::NotSymmetric, "series is not even in one variable");
	int tail = g.tail_bound();
	for (auto &[e, c] : g.terms())
		if (e[0] % 2)
			tail = std::min(tail, c.abs_prec());
	Series r(g.ctx(), 1, (g.trunc_order() + 1) / 2, tail);
	for (auto &[e, c] : g.terms())
		if (e[0] % 2 == 0)
			r.add_term({e[0] / 2}, c);
	return r;
}

} // namespace pqc
