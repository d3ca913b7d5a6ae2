#pragma once

#include "pqc/json_io.hpp"
#include <random>
#include <string>

namespace fixtures {

inline std::string path(const std::string &rel) { return std::string(PQC_FIXTURES) + "/" + rel; }

inline pqc::QuadraticFieldData field(const std::string &name)
{
	std::string f = path("fields/" + name + ".json");
	auto doc = pqc::io::load_file(f);
	return pqc::io::read_field(pqc::io::root(doc, f));
}

struct Principal
{
	pqc::QuadElt beta;
	std::vector<std::pair<pqc::PrimeIdealData, int>> factorization;
};

// beta = unit^k * torsion * prod xi_i^(e_i) over the listed primes, with the
// ideal factorization that follows from xi_i generating the h-th power
inline Principal random_principal(const pqc::QuadraticFieldData &K, std::mt19937_64 &rng)
{
	std::uniform_int_distribution<int> e(-2, 2);
	Principal out;
	out.beta = {1, 0};
	for (auto &q : K.primes)
	{
		int k = e(rng);
		if (k == 0)
			continue;
		out.beta = pqc::mul(out.beta, pqc::power(q.xi, k, K.d), K.d);
		out.factorization.push_back({q, k * K.class_number});
	}
	if (K.fund_unit)
		out.beta = pqc::mul(out.beta, pqc::power(*K.fund_unit, e(rng), K.d), K.d);
	if (rng() % 2)
		out.beta = pqc::mul(out.beta, {-1, 0}, K.d);
	if (K.d == -1 && rng() % 2)
		out.beta = pqc::mul(out.beta, {0, 1}, K.d);
	return out;
}

} // namespace fixtures
