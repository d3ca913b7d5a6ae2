#include "pqc/json_io.hpp"
#include <fstream>
#include <sstream>

namespace pqc::io {

json load_file(const std::filesystem::path &path)
{
	std::ifstream in(path);
	if (!in)
		throw Error(Err::InvalidInput, path.string() + ": error: cannot open file");
	std::stringstream ss;
	ss << in.rdbuf();
	std::string text = ss.str();
	try
	{
		return json::parse(text);
	}
	catch (const json::parse_error &e)
	{
		size_t line = 1, col = 1;
		size_t end = std::min<size_t>(e.byte ? e.byte - 1 : 0, text.size());
		for (size_t i = 0; i < end; ++i)
		{
			if (text[i] == '\n')
			{
				++line;
				col = 1;
			}
			else
				++col;
		}
		std::string msg = e.what();
		if (auto k = msg.find("] "); k != std::string::npos)
			msg = msg.substr(k + 2);
		if (msg.rfind("parse error at line", 0) == 0)
			if (auto k = msg.find(": "); k != std::string::npos)
				msg = msg.substr(k + 2);
		throw Error(Err::InvalidInput, path.string() + ":" + std::to_string(line) + ":" + std::to_string(col) + ": error: " + msg);
	}
}

Node root(const json &j, const std::string &file) { return {&j, file, ""}; }

void Node::fail(const std::string &msg) const
{
	throw Error(Err::InvalidInput, file + ": error: at " + (where.empty() ? "/" : where) + ": " + msg);
}

Node Node::at(const std::string &key) const
{
	if (!j->is_object())
		fail("expected an object");
	auto it = j->find(key);
	if (it == j->end())
		fail("missing key \"" + key + "\"");
	return {&*it, file, where + "/" + key};
}

Node Node::at(size_t i) const
{
	if (!j->is_array())
		fail("expected an array");
	if (i >= j->size())
		fail("index " + std::to_string(i) + " out of range");
	return {&(*j)[i], file, where + "/" + std::to_string(i)};
}

bool Node::has(const std::string &key) const { return j->is_object() && j->contains(key); }

size_t Node::size() const
{
	if (!j->is_array())
		fail("expected an array");
	return j->size();
}

long Node::as_long() const
{
	if (!j->is_number_integer())
		fail("expected an integer");
	return j->get<long>();
}

bool Node::as_bool() const
{
	if (!j->is_boolean())
		fail("expected true or false");
	return j->get<bool>();
}

std::string Node::as_string() const
{
	if (!j->is_string())
		fail("expected a string");
	return j->get<std::string>();
}

mpq_class Node::as_rational() const
{
	if (j->is_number_integer())
		return mpq_class(mpz_class(std::to_string(j->get<long>())));
	if (!j->is_string())
		fail("expected an integer or a rational string");
	try
	{
		mpq_class q(j->get<std::string>());
		if (q.get_den() == 0)
			fail("zero denominator");
		q.canonicalize();
		return q;
	}
	catch (const std::invalid_argument &)
	{
		fail("not a rational number: \"" + j->get<std::string>() + "\"");
	}
}

namespace {

void check_prime(const Node &n, Ctx c)
{
	if (n.has("p") && n.at("p").as_long() != c.p)
		n.at("p").fail("prime " + std::to_string(n.at("p").as_long()) + " does not match the working prime " + std::to_string(c.p));
}

int read_prec_field(const Node &n)
{
	if (n.is_null())
		return Padic::kInf;
	int v = n.as_int();
	if (v < 0 || v >= Padic::kInf)
		n.fail("precision out of range");
	return v;
}

} // namespace

Padic read_padic(const Node &n, Ctx c, const std::optional<Padic> &chi)
{
	const json &j = *n.j;
	if (j.is_number_integer() || j.is_string())
		return Padic::rational(c, n.as_rational());
	if (!j.is_object())
		n.fail("expected a p-adic number");
	if (n.has("log"))
	{
		mpq_class r = n.has("coeff") ? n.at("coeff").as_rational() : mpq_class(1);
		mpq_class arg = n.at("log").as_rational();
		if (arg <= 0)
			n.at("log").fail("logarithm of a non-positive rational");
		return Padic::rational(c, r) * padic_log(Padic::rational(c, arg));
	}
	if (n.has("chi"))
	{
		if (!chi)
			n.fail("a multiple of chi_q(pi_q) needs a prime with field data");
		return Padic::rational(c, n.at("chi").as_rational()) * *chi;
	}
	check_prime(n, c);
	int cert = n.has("certified") ? read_prec_field(n.at("certified")) : Padic::kInf;
	Node vn = n.at("v");
	if (vn.is_null())
		return Padic::zero(c, cert);
	int v = vn.as_int();
	Node dn = n.at("digits");
	if (dn.size() == 0)
		dn.fail("a nonzero value needs at least one digit");
	mpz_class u = 0;
	for (size_t i = dn.size(); i-- > 0;)
	{
		long d = dn.at(i).as_long();
		if (d < 0 || d >= c.p)
			dn.at(i).fail("digit outside [0, p)");
		u = u * c.p + d;
	}
	if (dn.at(0).as_long() == 0)
		dn.at(0).fail("leading digit must be nonzero; shift v instead");
	int rel = cert >= Padic::kInf ? (int)dn.size() : cert - v;
	if (rel < (int)dn.size())
		n.fail("more digits than the certified precision allows");
	return Padic::from_parts(c, v, u, std::min(rel, c.prec));
}

json write_padic(const Padic &x)
{
	json j;
	j["p"] = x.p();
	if (x.is_zero())
	{
		j["v"] = nullptr;
		j["digits"] = json::array();
	}
	else
	{
		j["v"] = x.val();
		j["digits"] = x.digits();
	}
	if (x.abs_prec() >= Padic::kInf)
		j["certified"] = nullptr;
	else
		j["certified"] = x.abs_prec();
	return j;
}

Series read_series(const Node &n, Ctx c)
{
	check_prime(n, c);
	int nv = n.at("num_vars").as_int();
	int trunc = n.at("trunc_order").as_int();
	int tail = n.has("tail_val_bound") ? read_prec_field(n.at("tail_val_bound")) : Padic::kInf;
	if (nv < 1)
		n.at("num_vars").fail("need at least one variable");
	if (trunc < 0)
		n.at("trunc_order").fail("negative truncation order");
	Series s(c, nv, trunc, tail);
	Node terms = n.at("terms");
	for (size_t i = 0; i < terms.size(); ++i)
	{
		Node t = terms.at(i);
		Node en = t.at("exps");
		if ((int)en.size() != nv)
			en.fail("expected " + std::to_string(nv) + " exponents");
		Exps e;
		for (size_t k = 0; k < en.size(); ++k)
		{
			int x = en.at(k).as_int();
			if (x < 0)
				en.at(k).fail("negative exponent");
			e.push_back(x);
		}
		if (degree(e) >= trunc)
			en.fail("term degree " + std::to_string(degree(e)) + " is not below the truncation order");
		s.add_term(e, read_padic(t.at("coeff"), c));
	}
	return s;
}

json write_series(const Series &s)
{
	json j;
	j["p"] = s.ctx().p;
	j["num_vars"] = s.num_vars();
	j["trunc_order"] = s.trunc_order();
	if (s.tail_bound() >= Padic::kInf)
		j["tail_val_bound"] = nullptr;
	else
		j["tail_val_bound"] = s.tail_bound();
	j["terms"] = json::array();
	for (auto &[e, c] : s.terms())
		j["terms"].push_back({{"exps", e}, {"coeff", write_padic(c)}});
	return j;
}

SeriesSystem read_system(const Node &n, Ctx c)
{
	check_prime(n, c);
	Node comps = n.at("components");
	std::vector<Series> v;
	for (size_t i = 0; i < comps.size(); ++i)
		v.push_back(read_series(comps.at(i), c));
	if (v.empty())
		comps.fail("a system needs at least one component");
	for (size_t i = 1; i < v.size(); ++i)
		if (v[i].num_vars() != v[0].num_vars())
			comps.at(i).fail("components differ in the number of variables");
	SeriesSystem sys = make_system(std::move(v));
	if (n.has("rescale") && n.at("rescale").as_bool())
		sys = rescale_and_normalize(sys);
	return sys;
}

QuadElt read_quad(const Node &n)
{
	if (n.size() != 2)
		n.fail("expected [a, b] for a + b sqrt(d)");
	return {n.at(0).as_rational(), n.at(1).as_rational()};
}

QuadraticFieldData read_field(const Node &n)
{
	long d = n.at("d").as_long();
	int h = n.at("class_number").as_int();
	std::optional<QuadElt> fu;
	if (n.has("fundamental_unit") && !n.at("fundamental_unit").is_null())
		fu = read_quad(n.at("fundamental_unit"));
	std::vector<PrimeIdealData> primes;
	Node ps = n.at("primes");
	for (size_t i = 0; i < ps.size(); ++i)
	{
		Node q = ps.at(i);
		PrimeIdealData pd;
		pd.q = q.at("q").as_long();
		pd.label = q.at("label").as_string();
		pd.xi = read_quad(q.at("generator"));
		std::string tag = q.at("tag").as_string();
		if (tag == "split")
			pd.tag = PrimeTag::Split;
		else if (tag == "inert")
			pd.tag = PrimeTag::Inert;
		else if (tag == "ramified")
			pd.tag = PrimeTag::Ramified;
		else
			q.at("tag").fail("tag must be split, inert or ramified");
		primes.push_back(pd);
	}
	try
	{
		return make_field(d, h, fu, primes);
	}
	catch (const Error &e)
	{
		n.fail(e.what());
	}
}

json write_report(const RootReport &r)
{
	json j;
	j["status"] = status_name(r.status);
	j["branch"] = r.branch;
	j["approximation"] = json::array();
	for (auto &x : r.approximation)
		j["approximation"].push_back(write_padic(x));
	j["certified"] = r.certified;
	j["radius"] = r.radius;
	j["depth"] = r.depth;
	j["residue"] = json::array();
	for (auto &x : r.residue)
		j["residue"].push_back(x.get_str());
	if (r.ball.size() > 1)
	{
		j["ball"] = json::array();
		for (auto &b : r.ball)
		{
			json v = json::array();
			for (auto &x : b)
				v.push_back(x.get_str());
			j["ball"].push_back(v);
		}
	}
	j["newton_steps"] = r.iterates.empty() ? 0 : (int)r.iterates.size() - 1;
	return j;
}

json write_character(const IdeleClassCharacter &chi)
{
	return {{"label", label_name(chi.label)},
	        {"trace", {write_padic(chi.c1), write_padic(chi.c2)}},
	        {"branch", {write_padic(chi.branch1), write_padic(chi.branch2)}}};
}

json write_tset(const TSet &t)
{
	json a = json::array();
	for (auto &x : t)
		a.push_back(write_padic(x));
	return a;
}

long read_prime(const Node &n) { return n.at("p").as_long(); }

} // namespace pqc::io
