#include "pqc/bundle.hpp"
#include "pqc/testgen.hpp"
#include <CLI11.hpp>
#include <fmt/core.h>
#include <fstream>
#include <set>

using namespace pqc;
using io::json;

namespace {

int exit_code(Err e)
{
	switch (e)
	{
	case Err::PrecisionExhausted:
	case Err::UncertifiedTail:
	case Err::TailTooShallow:
	case Err::MaxStepsExceeded:
		return 2;
	case Err::BudgetExceeded:
		return 3;
	default:
		return 1;
	}
}

void emit(const json &j, const std::string &out)
{
	std::string text = j.dump(2) + "\n";
	if (out.empty())
	{
		fmt::print("{}", text);
		return;
	}
	std::ofstream f(out);
	if (!f)
		throw Error(Err::InvalidInput, out + ": error: cannot write output");
	f << text;
}

void check_manifest(long p, int prec)
{
	if (p < 3 || p % 2 == 0 || mpz_probab_prime_p(mpz_class(p).get_mpz_t(), 30) == 0)
		throw Error(Err::InvalidInput, fmt::format("error: p = {} is not an odd prime", p));
	if (prec < 4)
		throw Error(Err::InvalidInput, fmt::format("error: working precision {} must be at least 4", prec));
}

json icc_basis(const std::string &field, long p, int prec)
{
	check_manifest(p, prec);
	json doc = io::load_file(field);
	QuadraticFieldData K = io::read_field(io::root(doc, field));
	SplitPrimeContext sc = split_context(K, {p, prec});
	auto basis = character_space_basis(K, sc);
	json out;
	out["d"] = K.d;
	out["p"] = p;
	out["prec"] = prec;
	out["dimension"] = basis.size();
	out["characters"] = json::array();
	for (auto &chi : basis)
	{
		json c = io::write_character(chi);
		c["unit_residual"] = io::write_padic(unit_equation_residual(chi, K, sc));
		out["characters"].push_back(c);
	}
	return out;
}

json hensel_solve(const std::string &file, std::optional<long> p, int prec, const SearchConfig &cfg)
{
	json doc = io::load_file(file);
	io::Node n = io::root(doc, file);
	long fp = io::read_prime(n);
	if (p && *p != fp)
		n.at("p").fail(fmt::format("system is over p = {}, but --p {} was given", fp, *p));
	check_manifest(fp, prec);
	SeriesSystem sys = io::read_system(n, {fp, prec});
	auto reports = solve_system(sys, cfg);
	json out;
	out["p"] = fp;
	out["prec"] = prec;
	out["depth"] = cfg.depth;
	out["reports"] = json::array();
	for (auto &r : reports)
		out["reports"].push_back(io::write_report(r));
	return out;
}

// random systems checked against brute force: the residues the reports speak
// for (residual classes and certified balls) must be exactly the brute-force roots
json selftest(unsigned long seed, int count, long long budget)
{
	std::mt19937_64 rng(seed);
	int bad = 0;
	json cases = json::array();
	for (int i = 0; i < count; ++i)
	{
		long p = std::vector<long>{3, 5, 7}[rng() % 3];
		int m = 1 + (int)(rng() % 2);
		int n = 1 + (int)(rng() % (m == 1 ? 5 : 3));
		auto is = gen::random_system(rng, p, m, 3);
		SeriesSystem sys = gen::to_series(is, 20);
		SearchConfig cfg;
		cfg.depth = n;
		cfg.budget = budget;
		auto reports = solve_system(sys, cfg);
		auto roots = brute_force_roots(sys, n, budget);
		std::set<Residue> found;
		bool ok = true;
		for (auto &r : reports)
		{
			ok = ok && r.depth == n;
			if (r.status == RootStatus::ResidualModPn)
				found.insert(r.residue);
			else
				found.insert(r.ball.begin(), r.ball.end());
		}
		ok = ok && found == std::set<Residue>(roots.begin(), roots.end());
		bad += !ok;
		cases.push_back({{"p", p}, {"m", m}, {"depth", n}, {"roots", roots.size()}, {"reports", reports.size()}, {"ok", ok}});
	}
	return {{"seed", seed}, {"count", count}, {"failures", bad}, {"cases", cases}};
}

} // namespace

int main(int argc, char **argv)
{
	CLI::App app{"p-adic quadratic Chabauty toolkit"};
	app.require_subcommand(1);
	std::string out;
	int prec = 20;
	std::optional<int> prec_flag;
	std::optional<long> pflag;
	SearchConfig cfg;
	std::vector<int> schedule;

	auto *icc = app.add_subcommand("icc", "idele class characters");
	icc->require_subcommand(1);
	auto *basis = icc->add_subcommand("basis", "basis of the character space for a split prime");
	std::string field;
	long p = 0;
	basis->add_option("--field", field, "field fixture")->required()->check(CLI::ExistingFile);
	basis->add_option("--p", p, "split prime")->required();
	basis->add_option("--prec", prec, "working precision");
	basis->add_option("--out", out, "output file");

	auto *hensel = app.add_subcommand("hensel", "root finding");
	hensel->require_subcommand(1);
	auto *solve = hensel->add_subcommand("solve", "solve a series system");
	std::string sysfile;
	solve->add_option("system", sysfile, "system file")->required()->check(CLI::ExistingFile);
	solve->add_option("--p", pflag, "expected prime");
	solve->add_option("--prec", prec, "working precision");
	solve->add_option("--depth", cfg.depth, "target depth n");
	solve->add_option("--first-fallback", cfg.first_fallback, "first refinement depth r");
	solve->add_option("--schedule", schedule, "refinement depths after r");
	solve->add_option("--budget", cfg.budget, "naive search budget");
	solve->add_option("--out", out, "output file");

	auto *qc = app.add_subcommand("qc", "quadratic Chabauty bundles");
	qc->require_subcommand(1);
	std::string bundle;
	std::optional<int> depth;
	std::optional<long long> budget;
	auto bundle_cmd = [&](const char *name, const char *desc) {
		auto *c = qc->add_subcommand(name, desc);
		c->add_option("bundle", bundle, "problem bundle")->required()->check(CLI::ExistingFile);
		c->add_option("--prec", prec_flag, "working precision (overrides the bundle)");
		c->add_option("--out", out, "output file");
		return c;
	};
	auto *alphas = bundle_cmd("alphas", "solve for the height coefficients");
	auto *tsets = bundle_cmd("tsets", "assemble the target sets");
	auto *run = bundle_cmd("run", "solve every residue pair");
	run->add_option("--depth", depth, "target depth n");
	run->add_option("--budget", budget, "naive search budget");

	auto *self = app.add_subcommand("selftest", "random systems against brute force");
	unsigned long seed = 1;
	int count = 50;
	self->add_option("--seed", seed, "generator seed");
	self->add_option("--count", count, "number of systems");
	self->add_option("--budget", cfg.budget, "naive search budget");
	self->add_option("--out", out, "output file");

	try
	{
		app.parse(argc, argv);
	}
	catch (const CLI::ParseError &e)
	{
		int rc = app.exit(e);
		return rc == 0 ? 0 : 1;
	}

	try
	{
		cfg.schedule = schedule;
		if (basis->parsed())
			emit(icc_basis(field, p, prec), out);
		else if (solve->parsed())
			emit(hensel_solve(sysfile, pflag, prec, cfg), out);
		else if (self->parsed())
		{
			json r = selftest(seed, count, cfg.budget);
			emit(r, out);
			return r["failures"].get<int>() ? 1 : 0;
		}
		else
		{
			Bundle b = load_bundle(bundle, prec_flag);
			if (depth)
				b.search.depth = *depth;
			if (budget)
				b.search.budget = *budget;
			if (alphas->parsed())
				emit(run_alphas(b), out);
			else if (tsets->parsed())
				emit(run_tsets(b), out);
			else if (run->parsed())
				emit(run_pairs(b), out);
		}
	}
	catch (const Error &e)
	{
		std::string msg = e.message();
		if (msg.find("error: ") == std::string::npos)
			msg = "error: " + msg;
		fmt::print(stderr, "{} [{}]\n", msg, err_name(e.code()));
		return exit_code(e.code());
	}
	catch (const std::exception &e)
	{
		fmt::print(stderr, "error: {}\n", e.what());
		return 1;
	}
	return 0;
}
