#pragma once

#include "pqc/qc.hpp"
#include <filesystem>
#include <json.hpp>
#include <string>

namespace pqc::io {

using json = nlohmann::json;

// Parses a file; syntax errors become "<file>:<line>:<col>: error: ...".
json load_file(const std::filesystem::path &path);

// A json value together with its JSON pointer, for schema diagnostics.
struct Node
{
	const json *j;
	std::string file;
	std::string where;

	Node at(const std::string &key) const;
	Node at(size_t i) const;
	bool has(const std::string &key) const;
	size_t size() const;
	bool is_null() const { return j->is_null(); }
	[[noreturn]] void fail(const std::string &msg) const;

	long as_long() const;
	int as_int() const { return (int)as_long(); }
	bool as_bool() const;
	std::string as_string() const;
	mpq_class as_rational() const;
};

Node root(const json &j, const std::string &file);

// scalar forms: integer, "a/b" string, {"p","v","digits","certified"},
// {"log": n, "coeff": r} for r log(n), and {"chi": r} for r times chi_q(pi_q)
// when a local value is supplied
Padic read_padic(const Node &n, Ctx c, const std::optional<Padic> &chi = std::nullopt);
json write_padic(const Padic &x);

Series read_series(const Node &n, Ctx c);
json write_series(const Series &s);
// {"components": [...], "rescale": bool}
SeriesSystem read_system(const Node &n, Ctx c);

QuadElt read_quad(const Node &n);
QuadraticFieldData read_field(const Node &n);

json write_report(const RootReport &r);
json write_character(const IdeleClassCharacter &chi);
json write_tset(const TSet &t);

// Reads p from a file that carries one (series, system or bundle).
long read_prime(const Node &n);

} // namespace pqc::io
