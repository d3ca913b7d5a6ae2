#include "pqc/hensel.hpp"
#include <algorithm>
#include <cstdint>
#include <functional>
#include <set>

namespace pqc {

const char *status_name(RootStatus s)
{
	return s == RootStatus::Certified ? "Certified" : "ResidualModPn";
}

void Budget::spend(long long n)
{
	if (n < 0 || used_ > limit_ - n)
		throw Error(Err::BudgetExceeded, "naive search needs more than " + std::to_string(limit_) + " evaluations");
	used_ += n;
}

namespace {

using u64 = std::uint64_t;

u64 mulmod(u64 a, u64 b, u64 m) { return (u64)((unsigned __int128)a * b % m); }
mpz_class mulmod(const mpz_class &a, const mpz_class &b, const mpz_class &m) { return a * b % m; }
u64 addmod(u64 a, u64 b, u64 m) { return (a + b) % m; }
mpz_class addmod(const mpz_class &a, const mpz_class &b, const mpz_class &m) { return (a + b) % m; }
u64 to_int(const mpz_class &x, u64 *) { return x.get_ui(); }
mpz_class to_int(const mpz_class &x, mpz_class *) { return x; }
mpz_class to_mpz(u64 x) { return mpz_class((unsigned long)x); }
mpz_class to_mpz(const mpz_class &x) { return x; }

// integer image of an integral system modulo M = p^k
template <class Int>
struct ModSystem
{
	struct Term
	{
		Int c;
		Exps e;
	};
	Int m;
	int nvars = 0;
	int maxdeg = 0;
	std::vector<std::vector<Term>> comps;

	ModSystem(const SeriesSystem &sys, int k)
	{
		m = to_int(ppow(sys.ctx().p, k), (Int *)nullptr);
		nvars = sys.num_vars();
		for (auto &s : sys.components)
		{
			std::vector<Term> ts;
			for (auto &[e, c] : s.terms())
			{
				mpz_class r = c.residue(k);
				if (r != 0)
					ts.push_back({to_int(r, (Int *)nullptr), e});
				for (int x : e)
					maxdeg = std::max(maxdeg, x);
			}
			comps.push_back(ts);
		}
	}

	bool is_root(const std::vector<Int> &x) const
	{
		std::vector<std::vector<Int>> pw(nvars);
		for (int i = 0; i < nvars; ++i)
		{
			pw[i].push_back(Int(1) % m);
			for (int d = 1; d <= maxdeg; ++d)
				pw[i].push_back(mulmod(pw[i].back(), x[i], m));
		}
		for (auto &ts : comps)
		{
			Int acc = 0;
			for (auto &t : ts)
			{
				Int v = t.c;
				for (int i = 0; i < nvars; ++i)
					if (t.e[i])
						v = mulmod(v, pw[i][t.e[i]], m);
				acc = addmod(acc, v, m);
			}
			if (acc != 0)
				return false;
		}
		return true;
	}
};

template <class Int>
std::vector<Residue> scan(const SeriesSystem &sys, const Residue &base, int from, int k)
{
	ModSystem<Int> ms(sys, k);
	long p = sys.ctx().p;
	int m = sys.num_vars();
	Int step = to_int(ppow(p, from), (Int *)nullptr);
	Int span = to_int(ppow(p, k - from), (Int *)nullptr);
	std::vector<Int> b(m), y(m, Int(0)), x(m);
	for (int i = 0; i < m; ++i)
		b[i] = to_int(base[i], (Int *)nullptr);
	std::vector<Residue> out;
	for (;;)
	{
		for (int i = 0; i < m; ++i)
			x[i] = (b[i] + step * y[i]) % ms.m;
		if (ms.is_root(x))
		{
			Residue r;
			for (auto &v : x)
				r.push_back(to_mpz(v));
			out.push_back(r);
		}
		int i = m - 1;
		while (i >= 0 && ++y[i] == span)
			y[i--] = 0;
		if (i < 0)
			break;
	}
	std::sort(out.begin(), out.end());
	return out;
}

void require_integral(const SeriesSystem &sys)
{
	if (sys.components.empty())
		throw Error(Err::InvalidInput, "empty system");
	if ((int)sys.components.size() != sys.num_vars())
		throw Error(Err::InvalidInput, "root finding needs as many equations as variables");
	for (auto &s : sys.components)
		if (!s.all_integral())
			throw Error(Err::InvalidInput, "system is not normalized: a coefficient is not integral");
}

long long count_points(long p, int digits, int m, long long cap)
{
	long long n = 1;
	for (int i = 0; i < digits * m; ++i)
	{
		if (n > cap / p)
			return cap + 1;
		n *= p;
	}
	return n;
}

PVec to_point(Ctx c, const Residue &r)
{
	PVec x;
	for (auto &v : r)
		x.push_back(Padic(c, v));
	return x;
}

PMat eval_jacobian(const std::vector<std::vector<Series>> &jac, const PVec &x)
{
	PMat out;
	for (auto &row : jac)
	{
		PVec r;
		for (auto &s : row)
			r.push_back(evaluate(s, x));
		out.push_back(r);
	}
	return out;
}

int vec_ord(const PVec &v)
{
	int o = Padic::kInf;
	for (auto &x : v)
		o = std::min(o, x.ord_lb());
	return o;
}

int converge_bound(int delta, int h, int n)
{
	long long b = h - 2 * delta;
	for (int i = 1; i < n && b < Padic::kInf; ++i)
		b *= 2;
	return (int)std::min<long long>(Padic::kInf, delta + b);
}

} // namespace

std::vector<Residue> naive_lift(const SeriesSystem &sys, const Residue &base, int from, int k, Budget &budget)
{
	long p = sys.ctx().p;
	budget.spend(count_points(p, k - from, sys.num_vars(), 1LL << 62));
	if (ppow(p, k) < mpz_class(1UL << 62))
		return scan<u64>(sys, base, from, k);
	return scan<mpz_class>(sys, base, from, k);
}

std::vector<Residue> brute_force_roots(const SeriesSystem &sys, int depth, long long budget)
{
	require_integral(sys);
	if (depth < 1)
		throw Error(Err::InvalidInput, "depth must be positive");
	Budget b(budget);
	return naive_lift(sys, Residue(sys.num_vars(), 0), 0, depth, b);
}

std::vector<Residue> enumerate_roots_modp(const SeriesSystem &sys) { return brute_force_roots(sys, 1); }

RootReport newton_lift(const SeriesSystem &sys, const PVec &start, int max_steps)
{
	require_integral(sys);
	Ctx c = sys.ctx();
	auto jac = jacobian(sys);
	int target = std::min(c.prec, sys.tail_bound());

	PVec x;
	for (auto &v : start)
		x.push_back(v.lift_exact());
	PVec fx = evaluate(sys, x);
	PMat jx = eval_jacobian(jac, x);
	Padic d = det(jx);
	if (d.is_zero())
		throw Error(Err::SingularJacobian, "Jacobian determinant vanishes at working precision");
	int delta = d.val();
	int h = vec_ord(fx);
	if (h <= 2 * delta)
		throw Error(Err::HypothesisFails, "ord f(a) = " + std::to_string(h) + " is not above 2 ord det J(a) = " + std::to_string(2 * delta));

	RootReport rep;
	rep.radius = delta;
	rep.start_ord = h;
	rep.iterates.push_back(x);
	for (int n = 1; converge_bound(delta, h, n) < target; ++n)
	{
		if (n > max_steps)
			throw Error(Err::MaxStepsExceeded, "Newton iteration did not reach the target precision");
		auto step = solve(jx, fx);
		if (!step)
			throw Error(Err::SingularJacobian, "Jacobian lost rank during iteration");
		for (size_t i = 0; i < x.size(); ++i)
			x[i] = (x[i] - (*step)[i]).lift_exact();
		fx = evaluate(sys, x);
		jx = eval_jacobian(jac, x);
		rep.iterates.push_back(x);
	}

	// a posteriori: the root sits within p^(ord f(x) - ord det J(x)) of x
	Padic dx = det(jx);
	if (dx.is_zero() || dx.val() != delta)
		throw Error(Err::SingularJacobian, "Jacobian determinant changed along the iteration");
	int cert = std::min(vec_ord(fx), target) - delta;
	if (cert < 1)
		throw Error(Err::PrecisionExhausted, "no certified digit after lifting");
	for (auto &v : x)
		rep.approximation.push_back(v.with_abs_prec(cert));
	rep.certified = cert;
	rep.status = RootStatus::Certified;
	return rep;
}

std::vector<RootReport> solve_system(const SeriesSystem &sys, const SearchConfig &cfg)
{
	require_integral(sys);
	Ctx c = sys.ctx();
	int n = cfg.depth;
	if (n < 1)
		throw Error(Err::InvalidInput, "target depth must be positive");
	if (sys.tail_bound() < n)
		throw Error(Err::TailTooShallow, "tail bound " + std::to_string(sys.tail_bound()) + " below target depth " + std::to_string(n));
	if (n > c.prec)
		throw Error(Err::PrecisionExhausted, "target depth exceeds working precision");
	int r = std::min(cfg.first_fallback, n);
	if (r < 1)
		throw Error(Err::InvalidInput, "first fallback depth must be positive");
	for (size_t i = 0; i < cfg.schedule.size(); ++i)
		if (cfg.schedule[i] <= (i ? cfg.schedule[i - 1] : r) || cfg.schedule[i] > n)
			throw Error(Err::InvalidInput, "refinement schedule must increase strictly and stay within the target depth");

	auto next_depth = [&](int s) {
		if (s < r)
			return r;
		for (int d : cfg.schedule)
			if (d > s)
				return d;
		return std::min(2 * s, n);
	};

	auto jac = jacobian(sys);
	Budget budget(cfg.budget);
	std::vector<RootReport> out;

	std::function<void(const Residue &, int, int)> explore = [&](const Residue &base, int from, int s) {
		auto cands = naive_lift(sys, base, from, s, budget);
		std::vector<bool> removed(cands.size(), false);
		for (size_t i = 0; i < cands.size(); ++i)
		{
			if (removed[i])
				continue;
			PVec x = to_point(c, cands[i]);
			Padic d = det(eval_jacobian(jac, x));
			int delta = std::min(d.ord_lb(), s);
			if (2 * delta < s)
			{
				RootReport rep = newton_lift(sys, x, cfg.max_newton_steps);
				int k = std::min(n, rep.certified);
				for (auto &v : rep.approximation)
					rep.residue.push_back(v.residue(k));
				rep.depth = k;
				int b = std::min(rep.radius + 1, k);
				Residue centre;
				for (auto &v : rep.approximation)
					centre.push_back(v.residue(b));
				rep.ball = naive_lift(sys, centre, b, k, budget);
				out.push_back(rep);
				for (size_t j = i + 1; j < cands.size(); ++j)
				{
					int o = Padic::kInf;
					for (size_t t = 0; t < cands[j].size(); ++t)
						o = std::min(o, ord_p(cands[j][t] - cands[i][t], c.p));
					if (o > delta)
						removed[j] = true;
				}
			}
			else if (s == n)
			{
				RootReport rep;
				rep.status = RootStatus::ResidualModPn;
				rep.approximation = x;
				for (auto &v : rep.approximation)
					v = v.with_abs_prec(n);
				rep.certified = n;
				rep.radius = delta;
				rep.residue = cands[i];
				rep.depth = n;
				out.push_back(rep);
			}
			else
				explore(cands[i], s, next_depth(s));
		}
	};
	explore(Residue(sys.num_vars(), 0), 0, 1);

	std::stable_sort(out.begin(), out.end(), [](const RootReport &a, const RootReport &b) { return a.residue < b.residue; });
	return out;
}

} // namespace pqc
