#include "pqc/qc.hpp"
#include <algorithm>
#include <set>

namespace pqc {

Padic AlphaCoefficients::at(int i, int j) const
{
	if (i > j)
		std::swap(i, j);
	auto it = alpha.find({i, j});
	if (it == alpha.end())
		throw Error(Err::InvalidInput, "no alpha coefficient for (" + std::to_string(i) + "," + std::to_string(j) + ")");
	return it->second;
}

Padic g_value(const FunctionalMatrix &F, int i, int j, int k, int l)
{
	Ctx c = F.at(0).at(0).ctx();
	return (F[k][i] * F[l][j] + F[k][j] * F[l][i]) / Padic(c, 2L);
}

namespace {

void check_matrix(const PMat &m, size_t rows, size_t cols, const char *what)
{
	if (m.size() != rows)
		throw Error(Err::InvalidInput, std::string(what) + " has the wrong number of rows");
	for (auto &r : m)
		if (r.size() != cols)
			throw Error(Err::InvalidInput, std::string(what) + " has a row of the wrong length");
}

std::vector<std::pair<int, int>> upper_pairs(int n)
{
	std::vector<std::pair<int, int>> out;
	for (int i = 0; i < n; ++i)
		for (int j = i; j < n; ++j)
			out.push_back({i, j});
	return out;
}

} // namespace

AlphaCoefficients solve_alpha(const FunctionalMatrix &F, const HeightTable &H)
{
	if (F.empty() || F[0].empty())
		throw Error(Err::InvalidInput, "empty functional matrix");
	int r = (int)F.size();
	int s = (int)F[0].size();
	check_matrix(F, r, s, "functional matrix");
	check_matrix(H, r, r, "height table");
	if (r != s)
		throw Error(Err::SingularSystem, std::to_string(r) + " generators against " + std::to_string(s) + " functionals: the alpha system is not square");
	for (int k = 0; k < r; ++k)
		for (int l = k + 1; l < r; ++l)
			if (H[k][l] != H[l][k])
				throw Error(Err::InvalidInput, "height table is not symmetric");

	auto rows = upper_pairs(r);
	auto cols = upper_pairs(s);
	PMat A;
	PVec b;
	for (auto [k, l] : rows)
	{
		PVec row;
		for (auto [i, j] : cols)
			row.push_back(g_value(F, i, j, k, l));
		A.push_back(row);
		b.push_back(H[k][l]);
	}
	auto x = solve(A, b);
	if (!x)
		throw Error(Err::SingularSystem, "the functionals do not determine the height pairing");
	AlphaCoefficients out;
	out.num_functionals = s;
	for (size_t t = 0; t < cols.size(); ++t)
	{
		if ((*x)[t].rel_prec() < 1 && !(*x)[t].is_zero())
			throw Error(Err::PrecisionExhausted, "alpha coefficient lost all precision");
		out.alpha[cols[t]] = (*x)[t];
	}
	return out;
}

HeightTable evaluate_heights(const FunctionalMatrix &F, const AlphaCoefficients &alpha)
{
	int r = (int)F.size();
	Ctx c = F.at(0).at(0).ctx();
	HeightTable H(r, PVec(r, Padic::zero(c)));
	for (int k = 0; k < r; ++k)
		for (int l = 0; l < r; ++l)
		{
			Padic sum = Padic::zero(c);
			for (auto &[ij, a] : alpha.alpha)
				sum = sum + a * g_value(F, ij.first, ij.second, k, l);
			H[k][l] = sum;
		}
	return H;
}

std::vector<PVec> relation_functions(const FunctionalMatrix &F)
{
	if (F.empty())
		throw Error(Err::InvalidInput, "empty functional matrix");
	return null_space(F);
}

TSet dedup(const TSet &values, int guard)
{
	TSet out;
	for (auto &v : values)
	{
		bool seen = false;
		for (auto &w : out)
			if ((v - w).ord_lb() >= std::min(v.cap(), w.cap()) - guard)
			{
				seen = true;
				break;
			}
		if (!seen)
			out.push_back(v);
	}
	return out;
}

bool same_tset(const TSet &a, const TSet &b, int digits)
{
	auto contained = [&](const TSet &x, const TSet &y) {
		for (auto &u : x)
		{
			bool found = false;
			for (auto &v : y)
				found = found || (u - v).ord_lb() >= digits;
			if (!found)
				return false;
		}
		return true;
	};
	return contained(a, b) && contained(b, a);
}

TSet assemble_tset_hyperelliptic(const std::vector<LocalHeightValueSet> &tables, Ctx c, int guard)
{
	TSet T{Padic::zero(c)};
	for (auto &t : tables)
	{
		if (t.values.empty())
			throw Error(Err::MissingPrimeData, "no local height values at " + t.label);
		TSet next;
		for (auto &x : T)
			for (auto &w : t.values)
				next.push_back(x - w);
		T = dedup(next, guard);
	}
	return T;
}

TSet local_tset_bielliptic(const BiellipticPrimeData &d, int k, Ctx c, int guard)
{
	if (k != 1 && k != 2)
		throw Error(Err::InvalidInput, "curve index must be 1 or 2");
	if (!d.bad1 && !d.bad2)
		return {Padic::zero(c)};
	if (!d.chi || !d.hQ1 || !d.hQ2 || d.W1.empty() || d.W2.empty())
		throw Error(Err::MissingPrimeData, "incomplete local data at " + d.label);
	if (d.a0_ord < 0)
		throw Error(Err::InvalidInput, "negative valuation of a0 at " + d.label);
	const auto &Wk = k == 1 ? d.W1 : d.W2;
	const auto &Wo = k == 1 ? d.W2 : d.W1;
	Padic hk = k == 1 ? *d.hQ1 : *d.hQ2;
	Padic ho = k == 1 ? *d.hQ2 : *d.hQ1;
	Padic two(c, 2L);
	Padic chi = *d.chi;

	TSet vals;
	// phi_k(z) at infinity
	vals.push_back(two * (hk - ho));
	// both x-coordinates integral
	for (auto &u : Wk)
		for (auto &v : Wo)
			for (int n = 0; n <= d.a0_ord; ++n)
				vals.push_back(two * (u + hk - Padic(c, (long)n) * chi - v));
	// x(phi_k(z)) not integral
	for (auto &v : Wo)
		vals.push_back(two * (hk - v));
	// x(phi_{3-k}(z)) not integral
	for (auto &u : Wk)
		vals.push_back(two * (u + hk - Padic(c, (long)d.a0_ord) * chi));
	return dedup(vals, guard);
}

TSet assemble_tset_bielliptic(const std::vector<BiellipticPrimeData> &primes, int k, Ctx c, int guard)
{
	TSet T{Padic::zero(c)};
	for (auto &d : primes)
	{
		TSet local = local_tset_bielliptic(d, k, c, guard);
		TSet next;
		for (auto &x : T)
			for (auto &w : local)
				next.push_back(x + w);
		T = dedup(next, guard);
	}
	return T;
}

const char *symmetry_name(Symmetry s)
{
	switch (s)
	{
	case Symmetry::EvenPair: return "even_pair";
	case Symmetry::AntiDiagonal: return "anti_diagonal";
	default: return "none";
	}
}

RhoSystem build_rho_system(const AlphaCoefficients &alpha, const std::vector<Series> &tau, const std::vector<Series> &f, const PVec &trace, const TSet &T, const std::vector<PVec> &relations)
{
	if (tau.empty() || tau.size() != trace.size())
		throw Error(Err::InvalidInput, "need one tau expansion per trace coefficient");
	if ((int)f.size() != alpha.num_functionals)
		throw Error(Err::InvalidInput, "need one f expansion per functional");
	if (T.empty())
		throw Error(Err::InvalidInput, "empty target set");
	const Series &ref = tau[0];
	auto check = [&](const Series &s) {
		if (s.ctx().p != ref.ctx().p || s.num_vars() != ref.num_vars() || s.trunc_order() != ref.trunc_order())
			throw Error(Err::IncompatibleTruncation, "expansions differ in prime, variables or truncation order");
	};
	for (auto &s : tau)
		check(s);
	for (auto &s : f)
		check(s);

	Ctx c = ref.ctx();
	Series rho(c, ref.num_vars(), ref.trunc_order());
	for (size_t j = 0; j < tau.size(); ++j)
		rho = rho + trace[j] * tau[j];
	for (auto &[ij, a] : alpha.alpha)
		rho = rho - a * (f[ij.first] * f[ij.second]);

	RhoSystem sys;
	sys.series.push_back(rho);
	sys.targets.push_back(T);
	for (auto &lambda : relations)
	{
		if (lambda.size() != f.size())
			throw Error(Err::InvalidInput, "relation vector has the wrong length");
		Series rel(c, ref.num_vars(), ref.trunc_order());
		for (size_t i = 0; i < f.size(); ++i)
			rel = rel + lambda[i] * f[i];
		sys.series.push_back(rel);
		sys.targets.push_back({Padic::zero(c)});
	}
	return sys;
}

Padic quasi_parallelogram_residual(const Series &hPR, const Series &hPmR, const Series &hP, const Series &hR, const Series &chi_term)
{
	Ctx c = hP.ctx();
	Padic two(c, 2L);
	Series d = hPR + hPmR - two * hP - two * hR + two * chi_term;
	Padic worst = Padic::zero(c);
	for (auto &[e, coef] : d.terms())
		if (coef.ord_lb() < worst.ord_lb())
			worst = coef;
	if (d.tail_bound() < worst.ord_lb())
		worst = worst.with_abs_prec(d.tail_bound());
	return worst;
}

bool report_covers(const RootReport &r, const Residue &x, long p)
{
	if (x.size() != r.approximation.size())
		return false;
	int k = r.status == RootStatus::Certified ? std::min(r.radius + 1, r.depth) : r.depth;
	const mpz_class &m = ppow(p, k);
	for (size_t i = 0; i < x.size(); ++i)
	{
		mpz_class a = r.status == RootStatus::Certified ? r.approximation[i].residue(k) : mpz_class(r.residue[i] % m);
		mpz_class b = x[i] % m;
		if (b < 0)
			b += m;
		if (a != b)
			return false;
	}
	return true;
}

namespace {

Series minus_const(const Series &s, const Padic &w)
{
	return s - Series::constant(s.ctx(), s.num_vars(), s.trunc_order(), w);
}

void require_normalized(const Series &s, const std::string &label)
{
	if (!s.all_integral())
		throw Error(Err::InvalidInput, "series of pair " + label + " is not normalized");
}

mpz_class negate_mod(const mpz_class &t, const mpz_class &m)
{
	mpz_class r = (m - t) % m;
	return r;
}

RootReport line_report(const RootReport &t, int sign, long p, const std::string &branch)
{
	RootReport r = t;
	Padic a = t.approximation[0];
	r.approximation = {a, sign > 0 ? a : -a};
	const mpz_class &m = ppow(p, t.depth);
	r.residue = {t.residue[0], sign > 0 ? t.residue[0] : negate_mod(t.residue[0], m)};
	for (auto &it : r.iterates)
		it = {it[0], sign > 0 ? it[0] : -it[0]};
	r.branch = branch;
	return r;
}

// solutions of t^2 = u0 mod p^n, built one digit at a time
std::vector<mpz_class> sqrt_mod_pn(const mpz_class &u0, long p, int n, Budget &budget)
{
	std::vector<mpz_class> cur{0};
	for (int j = 0; j < n; ++j)
	{
		budget.spend((long long)cur.size() * p);
		const mpz_class &step = ppow(p, j);
		const mpz_class &m = ppow(p, j + 1);
		mpz_class target = u0 % m;
		std::vector<mpz_class> next;
		for (auto &s : cur)
			for (long d = 0; d < p; ++d)
			{
				mpz_class t = s + step * d;
				if ((t * t - target) % m == 0)
					next.push_back(t);
			}
		cur = std::move(next);
	}
	std::sort(cur.begin(), cur.end());
	return cur;
}

RootReport residual_t(const Series &g, const mpz_class &t, int n)
{
	Ctx c = g.ctx();
	RootReport r;
	r.status = RootStatus::ResidualModPn;
	r.approximation = {Padic(c, t).with_abs_prec(n)};
	r.certified = n;
	r.residue = {t};
	r.depth = n;
	Padic d = evaluate(derivative(g, 0), {Padic(c, t)});
	r.radius = std::min(d.ord_lb(), n);
	return r;
}

// roots of a one-variable g in t; for even g the solve runs in u = t^2
std::vector<RootReport> solve_line(const Series &g, const SearchConfig &cfg)
{
	SeriesSystem gsys = make_system({g});
	if (!is_even(g) || g.terms().empty())
		return solve_system(gsys, cfg);

	Ctx c = g.ctx();
	long p = c.p;
	int n = cfg.depth;
	SeriesSystem usys = make_system({in_square(g)});
	auto ureps = solve_system(usys, cfg);
	Budget budget(cfg.budget);
	std::vector<RootReport> out;
	std::set<mpz_class> residual_seen;
	auto add_residual = [&](const mpz_class &t) {
		if (residual_seen.insert(t).second)
			out.push_back(residual_t(g, t, n));
	};

	for (auto &u : ureps)
	{
		if (u.status == RootStatus::ResidualModPn)
		{
			for (auto &t : sqrt_mod_pn(u.residue[0], p, n, budget))
				add_residual(t);
			continue;
		}
		const Padic &us = u.approximation[0];
		int du = u.radius;
		int v = us.ord_lb();
		if (v <= du)
		{
			// t^2 in the ball of u forces ord t = v/2 and t near one of the two roots
			if (v % 2)
				continue;
			auto s = padic_sqrt(us);
			if (!s)
				continue;
			int k = v / 2;
			for (int sign : {1, -1})
			{
				RootReport r;
				r.status = RootStatus::Certified;
				r.certified = u.certified - k;
				r.approximation = {(sign > 0 ? *s : -*s).with_abs_prec(r.certified)};
				r.radius = du - k;
				r.depth = std::min(n, r.certified);
				r.residue = {r.approximation[0].residue(r.depth)};
				r.start_ord = u.start_ord;
				out.push_back(r);
			}
		}
		else
		{
			// the ball of u contains 0; the matching t are those with 2 ord t > du
			int m = std::min(n, du / 2 + 1);
			for (auto &t : naive_lift(gsys, Residue{0}, m, n, budget))
				add_residual(t[0]);
		}
	}
	std::stable_sort(out.begin(), out.end(), [](const RootReport &a, const RootReport &b) { return a.residue < b.residue; });
	return out;
}

std::string target_label(const std::vector<int> &idx)
{
	std::string s = "T[";
	for (size_t i = 0; i < idx.size(); ++i)
		s += (i ? "," : "") + std::to_string(idx[i]);
	return s + "]";
}

} // namespace

std::vector<RootReport> solve_residue_pair(const RhoSystem &sys, const SearchConfig &cfg)
{
	if (sys.series.empty())
		throw Error(Err::InvalidInput, "pair " + sys.label + " has no series");
	if (sys.targets.size() != sys.series.size())
		throw Error(Err::InvalidInput, "pair " + sys.label + " needs one target set per series");
	for (auto &t : sys.targets)
		if (t.empty())
			throw Error(Err::InvalidInput, "pair " + sys.label + " has an empty target set");
	for (auto &s : sys.series)
		require_normalized(s, sys.label);
	Ctx c = sys.series[0].ctx();
	long p = c.p;
	std::vector<RootReport> out;

	if (sys.symmetry == Symmetry::None)
	{
		std::vector<std::vector<int>> labels;
		std::vector<PVec> combos;
		if (sys.joint_targets)
		{
			for (size_t i = 0; i < sys.joint_targets->size(); ++i)
			{
				if ((*sys.joint_targets)[i].size() != sys.series.size())
					throw Error(Err::InvalidInput, "joint target of the wrong length in pair " + sys.label);
				combos.push_back((*sys.joint_targets)[i]);
				labels.push_back({(int)i});
			}
		}
		else
		{
			std::vector<int> idx(sys.series.size(), 0);
			for (;;)
			{
				PVec w;
				for (size_t i = 0; i < idx.size(); ++i)
					w.push_back(sys.targets[i][idx[i]]);
				combos.push_back(w);
				labels.push_back(idx);
				int i = (int)idx.size() - 1;
				while (i >= 0 && ++idx[i] == (int)sys.targets[i].size())
					idx[i--] = 0;
				if (i < 0)
					break;
			}
		}
		for (size_t t = 0; t < combos.size(); ++t)
		{
			std::vector<Series> comps;
			for (size_t i = 0; i < sys.series.size(); ++i)
				comps.push_back(minus_const(sys.series[i], combos[t][i]));
			for (auto &r : solve_system(make_system(comps), cfg))
			{
				r.branch = target_label(labels[t]);
				out.push_back(r);
			}
		}
		return out;
	}

	if (sys.series.size() != 2 || sys.series[0].num_vars() != 2)
		throw Error(Err::InvalidInput, "symmetric pair " + sys.label + " needs two series in two variables");
	for (auto &w : sys.targets[1])
		if (!w.is_zero())
			throw Error(Err::InvalidInput, "the factored constraint of pair " + sys.label + " must have target 0");
	if (sys.joint_targets)
		throw Error(Err::InvalidInput, "joint targets apply only to pairs without symmetry");
	const Series &value = sys.series[0];
	const Series &constraint = sys.series[1];
	if (!constraint.constant_term().is_zero())
		throw Error(Err::NotSymmetric, "constraint of pair " + sys.label + " does not vanish at the origin");
	SymMode mode = sys.symmetry == Symmetry::EvenPair ? SymMode::EvenPair : SymMode::AntiDiagonal;
	Series cofactor = symmetric_factor(constraint, mode).quotient;

	for (size_t t = 0; t < sys.targets[0].size(); ++t)
	{
		std::string tl = target_label({(int)t});
		Series g = minus_const(value, sys.targets[0][t]);
		size_t first = out.size();
		std::vector<int> signs{1};
		if (mode == SymMode::EvenPair)
			signs.push_back(-1);
		for (int sign : signs)
		{
			std::string b = tl + (sign > 0 ? " diagonal" : " antidiagonal");
			for (auto &r : solve_line(restrict_to_line(g, sign), cfg))
				out.push_back(line_report(r, sign, p, b));
		}
		for (auto &r : solve_system(make_system({cofactor, g}), cfg))
		{
			r.branch = tl + " cofactor";
			out.push_back(r);
		}
		// balls are taken against the unfactored system so that they can be
		// compared with a search over (value, constraint) directly
		SeriesSystem whole = make_system({g, constraint});
		Budget budget(cfg.budget);
		for (size_t i = first; i < out.size(); ++i)
		{
			RootReport &r = out[i];
			if (r.status != RootStatus::Certified)
				continue;
			int b = std::min(r.radius + 1, r.depth);
			Residue centre;
			for (auto &v : r.approximation)
				centre.push_back(v.residue(b));
			r.ball = naive_lift(whole, centre, b, r.depth, budget);
		}
	}
	return out;
}

} // namespace pqc
