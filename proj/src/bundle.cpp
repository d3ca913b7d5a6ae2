#include "pqc/bundle.hpp"

namespace pqc {

using io::json;
using io::Node;

namespace {

const PrimeIdealData &prime_by_label(const Bundle &b, const Node &n)
{
	std::string label = n.as_string();
	for (auto &q : b.field.primes)
		if (q.label == label)
			return q;
	n.fail("no prime labelled \"" + label + "\" in the field data");
}

const IdeleClassCharacter &character_by_name(const Bundle &b, const Node &n)
{
	std::string s = n.as_string();
	auto it = b.characters.find(s);
	if (it == b.characters.end())
		n.fail("character \"" + s + "\" is not selected in this bundle");
	return it->second;
}

std::vector<Padic> read_values(const Node &n, Ctx c, const std::optional<Padic> &chi)
{
	std::vector<Padic> out;
	for (size_t i = 0; i < n.size(); ++i)
		out.push_back(io::read_padic(n.at(i), c, chi));
	return out;
}

Series series_or_file(const Bundle &b, const Node &n, std::vector<json> &keep)
{
	if (n.j->is_string())
	{
		auto path = b.dir / n.as_string();
		keep.push_back(io::load_file(path));
		return io::read_series(io::root(keep.back(), path.string()), b.ctx);
	}
	return io::read_series(n, b.ctx);
}

SearchConfig read_search(const Node &n)
{
	SearchConfig cfg;
	if (n.has("depth"))
		cfg.depth = n.at("depth").as_int();
	if (n.has("first_fallback"))
		cfg.first_fallback = n.at("first_fallback").as_int();
	if (n.has("budget"))
		cfg.budget = n.at("budget").as_long();
	if (n.has("max_newton_steps"))
		cfg.max_newton_steps = n.at("max_newton_steps").as_int();
	if (n.has("schedule"))
		for (size_t i = 0; i < n.at("schedule").size(); ++i)
			cfg.schedule.push_back(n.at("schedule").at(i).as_int());
	return cfg;
}

PMat read_matrix(const Node &n, Ctx c)
{
	PMat m;
	for (size_t i = 0; i < n.size(); ++i)
	{
		Node row = n.at(i);
		PVec r;
		for (size_t j = 0; j < row.size(); ++j)
			r.push_back(io::read_padic(row.at(j), c));
		m.push_back(r);
	}
	return m;
}

json write_matrix(const PMat &m)
{
	json a = json::array();
	for (auto &row : m)
	{
		json r = json::array();
		for (auto &x : row)
			r.push_back(io::write_padic(x));
		a.push_back(r);
	}
	return a;
}

std::vector<int> curve_indices(const Bundle &b)
{
	return b.model == "bielliptic" ? std::vector<int>{1, 2} : std::vector<int>{1};
}

} // namespace

Bundle load_bundle(const std::filesystem::path &path, std::optional<int> prec)
{
	Bundle b;
	b.doc = io::load_file(path);
	b.file = path.string();
	b.dir = path.parent_path();
	Node n = b.node();
	b.name = n.has("name") ? n.at("name").as_string() : path.stem().string();
	long p = n.at("p").as_long();
	int N = prec ? *prec : n.at("prec").as_int();
	if (p < 3 || p % 2 == 0 || mpz_probab_prime_p(mpz_class(p).get_mpz_t(), 30) == 0)
		n.at("p").fail("p must be an odd prime");
	if (N < 4)
		n.fail("working precision must be at least 4");
	b.ctx = {p, N};
	if (n.has("guard"))
		b.guard = n.at("guard").as_int();

	Node fn = n.at("field");
	auto fpath = b.dir / fn.as_string();
	json fdoc = io::load_file(fpath);
	b.field = io::read_field(io::root(fdoc, fpath.string()));
	b.split = split_context(b.field, b.ctx);

	Node cs = n.at("characters");
	for (size_t i = 0; i < cs.size(); ++i)
	{
		std::string s = cs.at(i).as_string();
		if (s == "cyclotomic")
			b.characters.emplace(s, cyclotomic_character(b.field, b.split));
		else if (s == "anticyclotomic")
			b.characters.emplace(s, anticyclotomic_character(b.field, b.split));
		else
			cs.at(i).fail("unknown character \"" + s + "\"");
	}
	b.model = n.at("model").as_string();
	if (b.model != "bielliptic" && b.model != "hyperelliptic")
		n.at("model").fail("model must be bielliptic or hyperelliptic");
	if (n.has("search"))
		b.search = read_search(n.at("search"));
	return b;
}

const char *verdict_name(Verdict v)
{
	switch (v)
	{
	case Verdict::Pass: return "pass";
	case Verdict::Fail: return "fail";
	default: return "undecided";
	}
}

Verdict apply_filter(const ReportFilter &f, const RootReport &r)
{
	PVec x = r.approximation;
	if (r.status == RootStatus::ResidualModPn)
		for (auto &v : x)
			v = v.with_abs_prec(r.depth);
	Padic val = evaluate(f.value, x);
	Verdict out = Verdict::Fail;
	for (auto &a : f.allowed)
	{
		Padic d = val - a;
		if (d.ord_lb() >= f.digits)
			return Verdict::Pass;
		if (d.is_zero())
			out = Verdict::Undecided;
	}
	return out;
}

std::vector<BiellipticPrimeData> bielliptic_data(const Bundle &b, const IdeleClassCharacter &chi)
{
	std::vector<BiellipticPrimeData> out;
	Node ps = b.node().at("primes");
	for (size_t i = 0; i < ps.size(); ++i)
	{
		Node q = ps.at(i);
		BiellipticPrimeData d;
		const PrimeIdealData &pd = prime_by_label(b, q.at("label"));
		d.label = pd.label;
		d.q = pd.q;
		d.chi = local_value_away_from_p(chi, pd, b.field, b.split);
		d.a0_ord = q.at("a0_valuation").as_int();
		Node red = q.at("reduction");
		if (red.size() != 2)
			red.fail("expected reduction data for both curves");
		d.bad1 = red.at(0).at("bad").as_bool();
		d.bad2 = red.at(1).at("bad").as_bool();
		for (int k = 0; k < 2; ++k)
		{
			Node rk = red.at(k);
			if (rk.has("kodaira"))
				d.provenance += (k ? ", " : "") + std::string("E") + std::to_string(k + 1) + ": " + rk.at("kodaira").as_string() + " c=" + std::to_string(rk.at("tamagawa").as_long());
		}
		if (q.has("W"))
		{
			Node W = q.at("W");
			if (W.size() != 2)
				W.fail("expected value sets for both curves");
			d.W1 = read_values(W.at(0), b.ctx, d.chi);
			d.W2 = read_values(W.at(1), b.ctx, d.chi);
		}
		if (q.has("hQ"))
		{
			Node h = q.at("hQ");
			if (h.size() != 2)
				h.fail("expected local heights of both Q_k");
			d.hQ1 = io::read_padic(h.at(0), b.ctx, d.chi);
			d.hQ2 = io::read_padic(h.at(1), b.ctx, d.chi);
		}
		out.push_back(d);
	}
	return out;
}

std::vector<LocalHeightValueSet> hyperelliptic_data(const Bundle &b, const IdeleClassCharacter &chi)
{
	std::vector<LocalHeightValueSet> out;
	Node ps = b.node().at("w_tables");
	for (size_t i = 0; i < ps.size(); ++i)
	{
		Node q = ps.at(i);
		const PrimeIdealData &pd = prime_by_label(b, q.at("label"));
		Padic c = local_value_away_from_p(chi, pd, b.field, b.split);
		LocalHeightValueSet t;
		t.label = pd.label;
		t.q = pd.q;
		t.values = read_values(q.at("values"), b.ctx, c);
		if (q.has("kodaira"))
			t.provenance = q.at("kodaira").as_string() + " c=" + std::to_string(q.at("tamagawa").as_long());
		out.push_back(t);
	}
	return out;
}

TSet bundle_tset(const Bundle &b, const std::string &character, int k)
{
	auto it = b.characters.find(character);
	if (it == b.characters.end())
		throw Error(Err::InvalidInput, b.file + ": error: character \"" + character + "\" is not selected");
	if (b.model == "bielliptic")
		return assemble_tset_bielliptic(bielliptic_data(b, it->second), k, b.ctx, b.guard);
	return assemble_tset_hyperelliptic(hyperelliptic_data(b, it->second), b.ctx, b.guard);
}

json run_alphas(const Bundle &b)
{
	Node n = b.node();
	PMat F = read_matrix(n.at("functional_matrix"), b.ctx);
	json out;
	out["bundle"] = b.name;
	out["p"] = b.ctx.p;
	out["prec"] = b.ctx.prec;
	out["relations"] = json::array();
	for (auto &v : relation_functions(F))
	{
		json r = json::array();
		for (auto &x : v)
			r.push_back(io::write_padic(x));
		out["relations"].push_back(r);
	}
	out["alphas"] = json::object();
	if (!n.has("height_tables"))
		return out;
	Node ht = n.at("height_tables");
	for (auto &[name, chi] : b.characters)
	{
		if (!ht.has(name))
			continue;
		PMat H = read_matrix(ht.at(name), b.ctx);
		AlphaCoefficients a = solve_alpha(F, H);
		json arr = json::array();
		for (auto &[ij, v] : a.alpha)
			arr.push_back({{"i", ij.first}, {"j", ij.second}, {"alpha", io::write_padic(v)}});
		out["alphas"][name] = arr;
		out["reconstructed"][name] = write_matrix(evaluate_heights(F, a));
	}
	return out;
}

json run_tsets(const Bundle &b)
{
	json out;
	out["bundle"] = b.name;
	out["p"] = b.ctx.p;
	out["prec"] = b.ctx.prec;
	out["tsets"] = json::object();
	for (auto &[name, chi] : b.characters)
		for (int k : curve_indices(b))
			out["tsets"][name][std::to_string(k)] = io::write_tset(bundle_tset(b, name, k));
	return out;
}

json run_pairs(const Bundle &b)
{
	Node n = b.node();
	std::vector<json> keep;
	json out = run_tsets(b);

	out["checks"] = json::array();
	if (n.has("quasi_parallelogram"))
	{
		Node qs = n.at("quasi_parallelogram");
		for (size_t i = 0; i < qs.size(); ++i)
		{
			Node q = qs.at(i);
			Padic r = quasi_parallelogram_residual(series_or_file(b, q.at("h_P_plus_R"), keep), series_or_file(b, q.at("h_P_minus_R"), keep), series_or_file(b, q.at("h_P"), keep), series_or_file(b, q.at("h_R"), keep), series_or_file(b, q.at("chi_term"), keep));
			std::string label = q.at("label").as_string();
			if (!r.is_zero())
				throw Error(Err::ValidationFailed, b.file + ": error: quasi-parallelogram check \"" + label + "\" fails: residual of valuation " + std::to_string(r.val()));
			out["checks"].push_back({{"label", label}, {"residual", io::write_padic(r)}});
		}
	}

	json pairs = json::array();
	int certified = 0, residual = 0, recovered = 0, unexplained = 0, filtered = 0;
	Node rp = n.at("residue_pairs");
	for (size_t i = 0; i < rp.size(); ++i)
	{
		Node pn = rp.at(i);
		RhoSystem sys;
		sys.label = pn.at("label").as_string();
		int k = pn.has("k") ? pn.at("k").as_int() : 1;
		if (k != 1 && k != 2)
			pn.at("k").fail("curve index must be 1 or 2");
		std::string chname = pn.at("character").as_string();
		character_by_name(b, pn.at("character"));
		std::string sym = pn.has("symmetry") ? pn.at("symmetry").as_string() : "none";
		if (sym == "none")
			sys.symmetry = Symmetry::None;
		else if (sym == "even_pair")
			sys.symmetry = Symmetry::EvenPair;
		else if (sym == "anti_diagonal")
			sys.symmetry = Symmetry::AntiDiagonal;
		else
			pn.at("symmetry").fail("symmetry must be none, even_pair or anti_diagonal");
		if (pn.has("branch"))
			sys.branch = pn.at("branch").as_string();

		Node sn = pn.at("series");
		for (size_t j = 0; j < sn.size(); ++j)
			sys.series.push_back(series_or_file(b, sn.at(j), keep));
		if (sys.series.empty())
			sn.fail("a residue pair needs at least one series");
		TSet T = pn.has("T_override") ? read_values(pn.at("T_override"), b.ctx, std::nullopt) : bundle_tset(b, chname, k);
		sys.targets.push_back(T);
		for (size_t j = 1; j < sys.series.size(); ++j)
			sys.targets.push_back({Padic::zero(b.ctx)});
		if (pn.has("joint_T"))
		{
			Node jt = pn.at("joint_T");
			std::vector<PVec> joint;
			for (size_t j = 0; j < jt.size(); ++j)
				joint.push_back(read_values(jt.at(j), b.ctx, std::nullopt));
			sys.joint_targets = joint;
		}

		SearchConfig cfg = pn.has("search") ? read_search(pn.at("search")) : b.search;
		auto reports = solve_residue_pair(sys, cfg);

		std::vector<ReportFilter> filters;
		if (pn.has("filters"))
		{
			Node fs = pn.at("filters");
			for (size_t j = 0; j < fs.size(); ++j)
			{
				Node f = fs.at(j);
				filters.push_back({f.at("name").as_string(), series_or_file(b, f.at("series"), keep), read_values(f.at("allowed"), b.ctx, std::nullopt), f.at("digits").as_int()});
			}
		}
		std::vector<PVec> known;
		if (pn.has("known_points"))
		{
			Node kp = pn.at("known_points");
			for (size_t j = 0; j < kp.size(); ++j)
				known.push_back(read_values(kp.at(j), b.ctx, std::nullopt));
		}

		json row;
		row["label"] = sys.label;
		row["k"] = k;
		row["character"] = chname;
		row["symmetry"] = symmetry_name(sys.symmetry);
		row["branch_tag"] = sys.branch;
		row["equivalent_pairs"] = json::array();
		if (pn.has("equivalent_pairs"))
			for (size_t j = 0; j < pn.at("equivalent_pairs").size(); ++j)
				row["equivalent_pairs"].push_back(pn.at("equivalent_pairs").at(j).as_string());
		row["T"] = io::write_tset(T);
		row["reports"] = json::array();
		for (auto &r : reports)
		{
			json jr = io::write_report(r);
			(r.status == RootStatus::Certified ? certified : residual)++;
			bool rejected = false;
			jr["filters"] = json::object();
			for (auto &f : filters)
			{
				Verdict v = apply_filter(f, r);
				rejected = rejected || v == Verdict::Fail;
				jr["filters"][f.name] = verdict_name(v);
			}
			filtered += rejected;
			json hits = json::array();
			for (size_t j = 0; j < known.size(); ++j)
			{
				if (known[j].size() != r.approximation.size())
					continue;
				Residue x;
				bool ok = true;
				for (auto &v : known[j])
				{
					if (v.ord_lb() < 0 || v.abs_prec() < r.depth)
					{
						ok = false;
						break;
					}
					x.push_back(v.residue(r.depth));
				}
				if (ok && report_covers(r, x, b.ctx.p))
					hits.push_back(j);
			}
			jr["known_points"] = hits;
			if (hits.empty())
				unexplained += !rejected;
			else
				++recovered;
			row["reports"].push_back(jr);
		}
		pairs.push_back(row);
	}
	out["pairs"] = pairs;
	out["summary"] = {{"pairs", pairs.size()}, {"certified", certified}, {"residual", residual}, {"recovered", recovered}, {"filtered_out", filtered}, {"unexplained", unexplained}};
	return out;
}

} // namespace pqc
