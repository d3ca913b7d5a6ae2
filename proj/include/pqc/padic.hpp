#pragma once

#include "pqc/error.hpp"
#include <climits>
#include <gmpxx.h>
#include <optional>
#include <string>
#include <vector>

namespace pqc {

// p and the working precision N_work; every element built from a Ctx carries
// at most N_work relative digits.
struct Ctx
{
	long p = 0;
	int prec = 0;
};

// p^k, cached per prime. Not thread-safe across primes being added
// concurrently; the cache is thread_local.
const mpz_class &ppow(long p, int k);

// exponent of p in n (n != 0)
int ord_p(const mpz_class &n, long p);

class Padic
{
  public:
	static constexpr int kInf = INT_MAX / 4;

	Padic() = default;
	Padic(Ctx c, long n);
	Padic(Ctx c, const mpz_class &n);
	static Padic rational(Ctx c, const mpq_class &q);
	static Padic zero(Ctx c, int abs_prec = kInf);
	// p^v * unit, unit coprime to p, known to rel_prec digits
	static Padic from_parts(Ctx c, int v, const mpz_class &unit, int rel_prec);

	long p() const { return p_; }
	int cap() const { return cap_; }
	Ctx ctx() const { return {p_, cap_}; }

	bool is_zero() const { return v_ == kInf; }
	bool is_exact_zero() const { return v_ == kInf && abs_ == kInf; }
	int val() const { return v_; }
	// lower bound for the valuation; the absolute precision for a zero
	int ord_lb() const { return is_zero() ? abs_ : v_; }
	int rel_prec() const { return is_zero() ? 0 : abs_ - v_; }
	int abs_prec() const { return abs_; }
	const mpz_class &unit() const { return u_; }

	// representative in [0, p^k); needs ord_lb() >= 0 and k <= abs_prec()
	mpz_class residue(int k) const;
	// the stored representative as an exact rational
	mpq_class to_rational() const;
	// the same representative, re-read as a constant at full capped precision
	Padic lift_exact() const;
	Padic with_abs_prec(int k) const;
	std::vector<long> digits() const;
	std::string str() const;

	Padic operator-() const;
	Padic pow(long n) const;

	friend Padic operator+(const Padic &a, const Padic &b);
	friend Padic operator-(const Padic &a, const Padic &b);
	friend Padic operator*(const Padic &a, const Padic &b);
	friend Padic operator/(const Padic &a, const Padic &b);
	// agreement modulo the smaller certified modulus
	friend bool operator==(const Padic &a, const Padic &b);
	friend bool operator!=(const Padic &a, const Padic &b) { return !(a == b); }

	Padic &operator+=(const Padic &b) { return *this = *this + b; }
	Padic &operator-=(const Padic &b) { return *this = *this - b; }
	Padic &operator*=(const Padic &b) { return *this = *this * b; }

  private:
	long p_ = 0;
	int cap_ = 0;
	int v_ = kInf;
	int abs_ = kInf;
	mpz_class u_ = 0;
};

// The declared value of log(p); 0 is the Iwasawa branch.
Padic padic_log(const Padic &u, const Padic &branch);
Padic padic_log(const Padic &u);
Padic teichmueller(const Padic &u);
// root with least unit residue mod p; nullopt when no square root exists
std::optional<Padic> padic_sqrt(const Padic &a);

using PVec = std::vector<Padic>;
using PMat = std::vector<PVec>;

Padic det(const PMat &a);
// nullopt when a pivot vanishes at working precision
std::optional<PVec> solve(PMat a, PVec b);
// basis of {x : a x = 0}; each vector has its first nonzero entry equal to 1
std::vector<PVec> null_space(const PMat &a);

} // namespace pqc
