#pragma once

#include "pqc/hensel.hpp"
#include "pqc/icc.hpp"
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace pqc {

// rows: generators D_1..D_r, columns: functionals f_0..f_{s-1}
using FunctionalMatrix = PMat;
// symmetric r x r table of h(D_k, D_l) for one character
using HeightTable = PMat;

struct AlphaCoefficients
{
	int num_functionals = 0;
	// keyed by (i, j) with i <= j
	std::map<std::pair<int, int>, Padic> alpha;
	Padic at(int i, int j) const;
};

// g_ij(D_k, D_l) = (f_i(D_k) f_j(D_l) + f_j(D_k) f_i(D_l)) / 2
Padic g_value(const FunctionalMatrix &F, int i, int j, int k, int l);

AlphaCoefficients solve_alpha(const FunctionalMatrix &F, const HeightTable &H);
// the table sum_{i<=j} alpha_ij g_ij(D_k, D_l)
HeightTable evaluate_heights(const FunctionalMatrix &F, const AlphaCoefficients &alpha);

// coefficient vectors lambda with sum_i lambda_i f_i(D_k) = 0 for every k
std::vector<PVec> relation_functions(const FunctionalMatrix &F);

using TSet = std::vector<Padic>;

// keeps the first of any values agreeing modulo p^(N_work - guard)
TSet dedup(const TSet &values, int guard = 2);
bool same_tset(const TSet &a, const TSet &b, int digits);

struct LocalHeightValueSet
{
	std::string label;
	long q = 0;
	std::vector<Padic> values;
	std::string provenance;
};

// T = { -sum_q w_q : w_q in W_q }
TSet assemble_tset_hyperelliptic(const std::vector<LocalHeightValueSet> &tables, Ctx c, int guard = 2);

// Everything the bielliptic case split needs at one prime q not above p.
struct BiellipticPrimeData
{
	std::string label;
	long q = 0;
	// local heights on integral points of E_1 and E_2
	std::vector<Padic> W1, W2;
	std::optional<Padic> chi;
	int a0_ord = 0;
	bool bad1 = false, bad2 = false;
	std::optional<Padic> hQ1, hQ2;
	std::string provenance;
};

// possible values of w_q for curve index k (1 or 2)
TSet local_tset_bielliptic(const BiellipticPrimeData &d, int k, Ctx c, int guard = 2);
TSet assemble_tset_bielliptic(const std::vector<BiellipticPrimeData> &primes, int k, Ctx c, int guard = 2);

enum class Symmetry
{
	None,
	EvenPair,
	AntiDiagonal
};

const char *symmetry_name(Symmetry s);

// series[i] must take a value in targets[i] at every global point of the pair.
// For EvenPair and AntiDiagonal the layout is fixed: series[0] is the value
// function and series[1] the constraint that factors through t1^2 - t2^2
// (or t1 - t2) and vanishes at the origin.
struct RhoSystem
{
	std::string label;
	std::vector<Series> series;
	std::vector<TSet> targets;
	// replaces the product of targets when present
	std::optional<std::vector<PVec>> joint_targets;
	Symmetry symmetry = Symmetry::None;
	// tag of the log branch the tau expansions were computed with; carried, not checked
	std::string branch;
};

// rho = sum_j c_j tau_j - sum_{i<=j} alpha_ij f_i f_j, plus sum_i lambda_i f_i
// for every supplied relation
RhoSystem build_rho_system(const AlphaCoefficients &alpha, const std::vector<Series> &tau, const std::vector<Series> &f, const PVec &trace, const TSet &T, const std::vector<PVec> &relations = {});

// coefficient of least valuation in h(P+R) + h(P-R) - 2h(P) - 2h(R) + 2 chi
Padic quasi_parallelogram_residual(const Series &hPR, const Series &hPmR, const Series &hP, const Series &hR, const Series &chi_term);

std::vector<RootReport> solve_residue_pair(const RhoSystem &sys, const SearchConfig &cfg);

// whether x lies in the region a report speaks for: the uniqueness ball of a
// certified root, or the residue class of a residual one
bool report_covers(const RootReport &r, const Residue &x, long p);

} // namespace pqc
