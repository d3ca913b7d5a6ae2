#pragma once

#include "pqc/padic.hpp"
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace pqc {

// a + b sqrt(d)
struct QuadElt
{
	mpq_class a = 0, b = 0;
};

QuadElt conj(const QuadElt &x);
QuadElt inverse(const QuadElt &x, long d);
QuadElt mul(const QuadElt &x, const QuadElt &y, long d);
QuadElt power(const QuadElt &x, long n, long d);
mpq_class norm(const QuadElt &x, long d);

enum class PrimeTag
{
	Split,
	Inert,
	Ramified
};

struct PrimeIdealData
{
	long q = 0;
	// generator of the h_K-th power of the prime
	QuadElt xi;
	PrimeTag tag = PrimeTag::Split;
	std::string label;
	int residue_degree() const { return tag == PrimeTag::Inert ? 2 : 1; }
};

struct QuadraticFieldData
{
	long d = 0;
	int class_number = 1;
	std::optional<QuadElt> fund_unit;
	int r1 = 0, r2 = 0;
	int torsion_order = 2;
	std::vector<PrimeIdealData> primes;
};

// validates the invariants and fills signature and torsion order
QuadraticFieldData make_field(long d, int class_number, std::optional<QuadElt> fund_unit, std::vector<PrimeIdealData> primes);

struct SplitPrimeContext
{
	Ctx ctx;
	// least-residue square root of d; place 1 sends sqrt(d) here, place 2 to its negative
	Padic sqrt_d;
	long d = 0;
	Padic embed(const QuadElt &x, int place) const;
};

SplitPrimeContext split_context(const QuadraticFieldData &K, Ctx c);

enum class CharLabel
{
	Cyclotomic,
	Anticyclotomic,
	Custom
};

const char *label_name(CharLabel l);

struct IdeleClassCharacter
{
	Padic c1, c2;
	// declared log(p) at each place above p
	Padic branch1, branch2;
	CharLabel label = CharLabel::Custom;
};

// trace vector (c1, c2); branch constants are fixed from a generator above p
// when the field data lists one, and left at 0 otherwise
IdeleClassCharacter make_character(Padic c1, Padic c2, CharLabel label, const QuadraticFieldData &K, const SplitPrimeContext &ctx);

std::vector<IdeleClassCharacter> character_space_basis(const QuadraticFieldData &K, const SplitPrimeContext &ctx);
IdeleClassCharacter anticyclotomic_character(const QuadraticFieldData &K, const SplitPrimeContext &ctx);
IdeleClassCharacter cyclotomic_character(const QuadraticFieldData &K, const SplitPrimeContext &ctx);

// c1 log s1(e) + c2 log s2(e) for the fundamental unit (or a torsion generator)
Padic unit_equation_residual(const IdeleClassCharacter &chi, const QuadraticFieldData &K, const SplitPrimeContext &ctx);

// chi at a uniformizer of the prime q, q not above p
Padic local_value_away_from_p(const IdeleClassCharacter &chi, const PrimeIdealData &q, const QuadraticFieldData &K, const SplitPrimeContext &ctx);

// sum over all places of chi(beta); zero for a valid character
Padic verify_principal_vanishing(const IdeleClassCharacter &chi, const std::vector<std::pair<PrimeIdealData, int>> &factorization, const QuadElt &beta, const QuadraticFieldData &K, const SplitPrimeContext &ctx);

} // namespace pqc
