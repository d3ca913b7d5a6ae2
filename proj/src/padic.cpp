#include "pqc/padic.hpp"
#include <algorithm>
#include <map>

namespace pqc {

const mpz_class &ppow(long p, int k)
{
	thread_local std::map<long, std::vector<mpz_class>> cache;
	auto &v = cache[p];
	if (v.empty())
		v.push_back(1);
	while ((int)v.size() <= k)
		v.push_back(v.back() * p);
	return v[k];
}

int ord_p(const mpz_class &n, long p)
{
	if (n == 0)
		return Padic::kInf;
	mpz_class m = n;
	int e = 0;
	while (mpz_divisible_ui_p(m.get_mpz_t(), p))
	{
		mpz_divexact_ui(m.get_mpz_t(), m.get_mpz_t(), p);
		++e;
	}
	return e;
}

namespace {

mpz_class mod(const mpz_class &a, const mpz_class &m)
{
	mpz_class r;
	mpz_mod(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
	return r;
}

mpz_class inverse(const mpz_class &a, const mpz_class &m)
{
	mpz_class r;
	if (!mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()))
		throw Error(Err::DivisionByZero, "unit not invertible");
	return r;
}

// strip the p-part of a nonzero integer
mpz_class strip(const mpz_class &n, long p, int &e)
{
	mpz_class m = n;
	e = 0;
	while (mpz_divisible_ui_p(m.get_mpz_t(), p))
	{
		mpz_divexact_ui(m.get_mpz_t(), m.get_mpz_t(), p);
		++e;
	}
	return m;
}

void check_same(const Padic &a, const Padic &b)
{
	if (a.p() != b.p())
		throw Error(Err::DifferentPrimes, std::to_string(a.p()) + " vs " + std::to_string(b.p()));
}

int sat_add(int a, int b)
{
	if (a >= Padic::kInf || b >= Padic::kInf)
		return Padic::kInf;
	return a + b;
}

} // namespace

Padic::Padic(Ctx c, long n) : Padic(c, mpz_class(n)) {}

Padic::Padic(Ctx c, const mpz_class &n)
{
	if (c.p < 3 || c.p % 2 == 0)
		throw Error(Err::InvalidInput, "p must be an odd prime");
	if (c.prec < 1)
		throw Error(Err::InvalidInput, "precision must be positive");
	p_ = c.p;
	cap_ = c.prec;
	if (n == 0)
		return;
	int e;
	mpz_class u = strip(n, p_, e);
	v_ = e;
	abs_ = e + cap_;
	u_ = mod(u, ppow(p_, cap_));
}

Padic Padic::rational(Ctx c, const mpq_class &q)
{
	if (q.get_den() == 1)
		return Padic(c, q.get_num());
	if (q == 0)
		return zero(c);
	int en, ed;
	mpz_class un = strip(q.get_num(), c.p, en);
	mpz_class ud = strip(q.get_den(), c.p, ed);
	const mpz_class &m = ppow(c.p, c.prec);
	return from_parts(c, en - ed, mod(un * inverse(ud, m), m), c.prec);
}

Padic Padic::zero(Ctx c, int abs_prec)
{
	Padic z(c, 0L);
	z.abs_ = abs_prec;
	return z;
}

Padic Padic::from_parts(Ctx c, int v, const mpz_class &unit, int rel_prec)
{
	if (rel_prec < 1)
		throw Error(Err::PrecisionExhausted, "element with no certified digit");
	Padic r(c, 0L);
	int ng = std::min(rel_prec, c.prec);
	mpz_class u = mod(unit, ppow(c.p, ng));
	if (mpz_divisible_ui_p(u.get_mpz_t(), c.p))
		throw Error(Err::InvalidInput, "unit part divisible by p");
	r.v_ = v;
	r.abs_ = v + ng;
	r.u_ = u;
	return r;
}

mpz_class Padic::residue(int k) const
{
	if (ord_lb() < 0)
		throw Error(Err::InvalidInput, "residue of a non-integral element");
	if (k > abs_)
		throw Error(Err::PrecisionExhausted, "residue beyond certified precision");
	if (is_zero() || v_ >= k)
		return 0;
	return mod(u_ * ppow(p_, v_), ppow(p_, k));
}

mpq_class Padic::to_rational() const
{
	if (is_zero())
		return 0;
	mpq_class r(u_);
	if (v_ >= 0)
		r *= ppow(p_, v_);
	else
		r /= ppow(p_, -v_);
	return r;
}

Padic Padic::lift_exact() const
{
	if (is_zero())
		return zero(ctx());
	return from_parts(ctx(), v_, u_, cap_);
}

Padic Padic::with_abs_prec(int k) const
{
	if (k >= abs_)
		return *this;
	if (is_zero() || v_ >= k)
		return zero(ctx(), k);
	Padic r = *this;
	r.abs_ = k;
	r.u_ = mod(u_, ppow(p_, k - v_));
	return r;
}

std::vector<long> Padic::digits() const
{
	std::vector<long> d;
	if (is_zero())
		return d;
	mpz_class u = u_;
	for (int i = 0; i < abs_ - v_; ++i)
	{
		d.push_back(mpz_fdiv_ui(u.get_mpz_t(), p_));
		mpz_fdiv_q_ui(u.get_mpz_t(), u.get_mpz_t(), p_);
	}
	return d;
}

std::string Padic::str() const
{
	std::string prec = abs_ >= kInf ? "exact" : "O(" + std::to_string(p_) + "^" + std::to_string(abs_) + ")";
	if (is_zero())
		return "0 + " + prec;
	return u_.get_str() + "*" + std::to_string(p_) + "^" + std::to_string(v_) + " + " + prec;
}

Padic Padic::operator-() const
{
	if (is_zero())
		return *this;
	Padic r = *this;
	r.u_ = ppow(p_, abs_ - v_) - u_;
	return r;
}

Padic Padic::pow(long n) const
{
	if (n == 0)
		return Padic(ctx(), 1L);
	if (n < 0)
		return Padic(ctx(), 1L) / pow(-n);
	if (is_zero())
		return is_exact_zero() ? *this : zero(ctx(), abs_ >= 0 ? abs_ * (int)n : abs_);
	Padic r = *this;
	r.v_ = v_ * (int)n;
	r.abs_ = r.v_ + (abs_ - v_);
	mpz_powm_ui(r.u_.get_mpz_t(), u_.get_mpz_t(), n, ppow(p_, abs_ - v_).get_mpz_t());
	return r;
}

Padic operator+(const Padic &a, const Padic &b)
{
	check_same(a, b);
	if (a.is_exact_zero())
		return b;
	if (b.is_exact_zero())
		return a;
	Ctx c{a.p_, std::min(a.cap_, b.cap_)};
	int A = std::min(a.abs_, b.abs_);
	int vm = std::min(a.ord_lb(), b.ord_lb());
	if (vm >= A)
		return Padic::zero(c, A);
	mpz_class s = 0;
	for (const Padic *x : {&a, &b})
		if (!x->is_zero() && x->v_ < A)
			s += x->u_ * ppow(c.p, x->v_ - vm);
	s = mod(s, ppow(c.p, A - vm));
	if (s == 0)
		return Padic::zero(c, A);
	int w;
	mpz_class u = strip(s, c.p, w);
	Padic r(c, 0L);
	r.v_ = vm + w;
	int ng = std::min(A - r.v_, c.prec);
	r.abs_ = r.v_ + ng;
	r.u_ = mod(u, ppow(c.p, ng));
	return r;
}

Padic operator-(const Padic &a, const Padic &b) { return a + (-b); }

Padic operator*(const Padic &a, const Padic &b)
{
	check_same(a, b);
	Ctx c{a.p_, std::min(a.cap_, b.cap_)};
	if (a.is_exact_zero() || b.is_exact_zero())
		return Padic::zero(c);
	if (a.is_zero() || b.is_zero())
		return Padic::zero(c, sat_add(a.ord_lb(), b.ord_lb()));
	int ng = std::min(a.abs_ - a.v_, b.abs_ - b.v_);
	Padic r(c, 0L);
	r.v_ = a.v_ + b.v_;
	r.abs_ = r.v_ + ng;
	r.u_ = mod(a.u_ * b.u_, ppow(c.p, ng));
	return r;
}

Padic operator/(const Padic &a, const Padic &b)
{
	check_same(a, b);
	if (b.is_zero())
		throw Error(Err::DivisionByZero, "divisor is zero at certified precision");
	Ctx c{a.p_, std::min(a.cap_, b.cap_)};
	if (a.is_exact_zero())
		return Padic::zero(c);
	if (a.is_zero())
		return Padic::zero(c, a.abs_ - b.v_);
	int ng = std::min(a.abs_ - a.v_, b.abs_ - b.v_);
	const mpz_class &m = ppow(c.p, ng);
	Padic r(c, 0L);
	r.v_ = a.v_ - b.v_;
	r.abs_ = r.v_ + ng;
	r.u_ = mod(a.u_ * inverse(b.u_, m), m);
	return r;
}

bool operator==(const Padic &a, const Padic &b) { return (a - b).is_zero(); }

Padic teichmueller(const Padic &u)
{
	if (u.is_zero() || u.val() != 0)
		throw Error(Err::NotAUnit, "teichmueller needs a unit");
	const mpz_class &m = ppow(u.p(), u.cap());
	mpz_class x = u.residue(1);
	for (;;)
	{
		mpz_class y;
		mpz_powm_ui(y.get_mpz_t(), x.get_mpz_t(), u.p(), m.get_mpz_t());
		if (y == x)
			break;
		x = y;
	}
	return Padic::from_parts(u.ctx(), 0, x, u.cap());
}

namespace {

// least M with k*e - floor(log_p k) >= n for every k > M
int log_terms(int e, int n, long p)
{
	int k = 1;
	for (;; ++k)
	{
		int fl = 0;
		for (long q = p; q <= k; q *= p)
			++fl;
		if ((long)k * e - fl >= n)
			return k - 1;
	}
}

} // namespace

Padic padic_log(const Padic &u, const Padic &branch)
{
	if (u.is_zero())
		throw Error(Err::ZeroArgument, "log of zero");
	Ctx c = u.ctx();
	int n = u.rel_prec();
	Padic unit = Padic::from_parts(c, 0, u.unit(), n);
	Padic u1 = unit / teichmueller(unit);
	Padic z = u1 - Padic(c, 1L);
	Padic sum = Padic::zero(c, n);
	if (!z.is_zero())
	{
		int m = log_terms(z.val(), n, c.p);
		Padic zk = z;
		for (int k = 1; k <= m; ++k)
		{
			Padic term = zk / Padic(c, (long)k);
			sum = (k % 2) ? sum + term : sum - term;
			zk = zk * z;
		}
		sum = sum.with_abs_prec(n);
	}
	if (u.val() == 0)
		return sum;
	return sum + Padic(c, (long)u.val()) * branch;
}

Padic padic_log(const Padic &u) { return padic_log(u, Padic::zero(u.ctx())); }

std::optional<Padic> padic_sqrt(const Padic &a)
{
	if (a.is_zero())
		throw Error(Err::ZeroArgument, "sqrt of zero");
	if (a.val() % 2 != 0)
		return std::nullopt;
	long p = a.p();
	mpz_class a0 = a.unit() % p;
	if (mpz_legendre(a0.get_mpz_t(), mpz_class(p).get_mpz_t()) != 1)
		return std::nullopt;
	if (p > 100'000'000)
		throw Error(Err::InvalidInput, "square root search limited to small primes");
	long r0 = 1;
	long target = a0.get_si();
	while ((r0 * r0) % p != target)
		++r0;
	r0 = std::min(r0, p - r0);
	int n = a.rel_prec();
	mpz_class x = r0;
	for (int k = 1; k < n;)
	{
		k = std::min(2 * k, n);
		const mpz_class &m = ppow(p, k);
		x = mod((x + a.unit() * inverse(x, m)) * inverse(mpz_class(2), m), m);
	}
	return Padic::from_parts(a.ctx(), a.val() / 2, x, n);
}

Padic det(const PMat &a)
{
	size_t n = a.size();
	if (n == 0)
		throw Error(Err::InvalidInput, "empty matrix");
	if (n == 1)
		return a[0][0];
	Ctx c = a[0][0].ctx();
	Padic r = Padic::zero(c);
	for (size_t j = 0; j < n; ++j)
	{
		PMat minor;
		for (size_t i = 1; i < n; ++i)
		{
			PVec row;
			for (size_t k = 0; k < n; ++k)
				if (k != j)
					row.push_back(a[i][k]);
			minor.push_back(row);
		}
		Padic t = a[0][j] * det(minor);
		r = (j % 2) ? r - t : r + t;
	}
	return r;
}

namespace {

// row-reduce in place, choosing the smallest-valuation pivot per column
std::vector<size_t> reduce(PMat &a, PVec *b)
{
	size_t rows = a.size(), cols = rows ? a[0].size() : 0;
	std::vector<size_t> piv;
	size_t r = 0;
	for (size_t col = 0; col < cols && r < rows; ++col)
	{
		size_t best = rows;
		for (size_t i = r; i < rows; ++i)
			if (!a[i][col].is_zero() && (best == rows || a[i][col].val() < a[best][col].val()))
				best = i;
		if (best == rows)
			continue;
		std::swap(a[r], a[best]);
		if (b)
			std::swap((*b)[r], (*b)[best]);
		Padic inv = Padic(a[r][col].ctx(), 1L) / a[r][col];
		for (auto &x : a[r])
			x = x * inv;
		if (b)
			(*b)[r] = (*b)[r] * inv;
		for (size_t i = 0; i < rows; ++i)
		{
			if (i == r || a[i][col].is_exact_zero())
				continue;
			Padic f = a[i][col];
			for (size_t k = 0; k < cols; ++k)
				a[i][k] = a[i][k] - f * a[r][k];
			if (b)
				(*b)[i] = (*b)[i] - f * (*b)[r];
		}
		piv.push_back(col);
		++r;
	}
	return piv;
}

} // namespace

std::optional<PVec> solve(PMat a, PVec b)
{
	size_t n = a.size();
	auto piv = reduce(a, &b);
	if (piv.size() < n)
		return std::nullopt;
	return b;
}

std::vector<PVec> null_space(const PMat &a0)
{
	PMat a = a0;
	auto piv = reduce(a, nullptr);
	size_t cols = a.empty() ? 0 : a[0].size();
	std::vector<PVec> out;
	Ctx c = a0[0][0].ctx();
	for (size_t f = 0; f < cols; ++f)
	{
		if (std::find(piv.begin(), piv.end(), f) != piv.end())
			continue;
		PVec v(cols, Padic::zero(c));
		v[f] = Padic(c, 1L);
		for (size_t i = 0; i < piv.size(); ++i)
			v[piv[i]] = -a[i][f];
		size_t lead = 0;
		while (v[lead].is_zero())
			++lead;
		Padic s = Padic(c, 1L) / v[lead];
		for (auto &x : v)
			x = x * s;
		out.push_back(v);
	}
	return out;
}

} // namespace pqc
