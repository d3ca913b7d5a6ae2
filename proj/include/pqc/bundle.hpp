#pragma once

#include "pqc/json_io.hpp"
#include <filesystem>
#include <map>
#include <string>

namespace pqc {

// A problem bundle: field data, per-prime local height tables, optional
// functional and height matrices, consistency checks and residue pairs.
struct Bundle
{
	io::json doc;
	std::string file;
	std::filesystem::path dir;
	std::string name;
	Ctx ctx;
	int guard = 2;
	QuadraticFieldData field;
	SplitPrimeContext split;
	std::map<std::string, IdeleClassCharacter> characters;
	// "bielliptic" or "hyperelliptic"
	std::string model;
	SearchConfig search;

	io::Node node() const { return io::root(doc, file); }
};

Bundle load_bundle(const std::filesystem::path &path, std::optional<int> prec = std::nullopt);

// Verdict of a report filter: a value computed from the report's point that
// must agree with one of the allowed values to the given number of digits.
struct ReportFilter
{
	std::string name;
	Series value;
	std::vector<Padic> allowed;
	int digits = 1;
};

enum class Verdict
{
	Pass,
	Fail,
	Undecided
};

const char *verdict_name(Verdict v);
Verdict apply_filter(const ReportFilter &f, const RootReport &r);

std::vector<BiellipticPrimeData> bielliptic_data(const Bundle &b, const IdeleClassCharacter &chi);
std::vector<LocalHeightValueSet> hyperelliptic_data(const Bundle &b, const IdeleClassCharacter &chi);
// T for curve index k (ignored for hyperelliptic bundles)
TSet bundle_tset(const Bundle &b, const std::string &character, int k);

io::json run_alphas(const Bundle &b);
io::json run_tsets(const Bundle &b);
// validates the quasi-parallelogram checks, then solves every residue pair
io::json run_pairs(const Bundle &b);

} // namespace pqc
