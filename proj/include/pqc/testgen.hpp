#pragma once

#include "pqc/qc.hpp"
#include <random>

namespace pqc::gen {

// polynomial with integer coefficients
struct IntPoly
{
	std::vector<std::pair<Exps, long>> terms;
	int degree() const;
};

struct IntSystem
{
	long p = 0;
	int nvars = 0;
	std::vector<IntPoly> polys;
};

// m equations of degree <= maxdeg in m variables; about half of the systems get
// a planted root
IntSystem random_system(std::mt19937_64 &rng, long p, int m, int maxdeg);

Series to_series(const IntPoly &f, Ctx c, int nvars, int trunc_order);
SeriesSystem to_series(const IntSystem &s, int prec);

// value = rho_b, constraint = (t1^2 - t2^2) q with q a unit along both
// diagonals mod p, and rho_b(0,0) - w a unit for every target w
struct EvenPairInstance
{
	long p = 0;
	IntPoly value, constraint, cofactor;
	std::vector<long> targets;
};

EvenPairInstance random_even_pair(std::mt19937_64 &rng, long p);
RhoSystem to_rho(const EvenPairInstance &e, int prec);

} // namespace pqc::gen
