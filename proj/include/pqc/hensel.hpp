#pragma once

#include "pqc/mseries.hpp"
#include <string>
#include <vector>

namespace pqc {

enum class RootStatus
{
	Certified,
	ResidualModPn
};

using Residue = std::vector<mpz_class>;

struct RootReport
{
	PVec approximation;
	// the approximation agrees with the root modulo p^certified
	int certified = 0;
	// certified: the root is the only one with ord(root - approximation) > radius.
	// residual: min(ord det J, depth) at the residue
	int radius = 0;
	RootStatus status = RootStatus::Certified;
	// approximation reduced mod p^depth; for a residual report the class
	// x = residue mod p^depth
	Residue residue;
	int depth = 0;
	// certified: every residue mod p^depth inside the uniqueness ball that solves
	// the system mod p^depth (the residue itself among them)
	std::vector<Residue> ball;
	// Newton iterates a_1, a_2, ... and ord f(a_1), kept for auditing the
	// convergence bound
	std::vector<PVec> iterates;
	int start_ord = 0;
	std::string branch;
};

struct SearchConfig
{
	int depth = 4;
	int first_fallback = 3;
	// refinement depths after first_fallback; empty means doubling
	std::vector<int> schedule;
	int max_newton_steps = 64;
	long long budget = 10'000'000;
};

class Budget
{
  public:
	explicit Budget(long long limit) : limit_(limit) {}
	void spend(long long n);
	long long used() const { return used_; }

  private:
	long long limit_;
	long long used_ = 0;
};

RootReport newton_lift(const SeriesSystem &sys, const PVec &start, int max_steps = 64);
std::vector<Residue> enumerate_roots_modp(const SeriesSystem &sys);
std::vector<Residue> brute_force_roots(const SeriesSystem &sys, int depth, long long budget = 10'000'000);
std::vector<RootReport> solve_system(const SeriesSystem &sys, const SearchConfig &cfg);

// residues mod p^k of x with x = base mod p^from and f(x) = 0 mod p^k
std::vector<Residue> naive_lift(const SeriesSystem &sys, const Residue &base, int from, int k, Budget &budget);

const char *status_name(RootStatus s);

} // namespace pqc
