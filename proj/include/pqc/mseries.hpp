#pragma once

#include "pqc/padic.hpp"
#include <map>
#include <vector>

namespace pqc {

using Exps = std::vector<int>;

// Power series in num_vars variables truncated at total degree trunc_order.
// tail_bound is a lower bound for the valuation of every omitted coefficient,
// hence of the omitted part at any point with integral coordinates.
class Series
{
  public:
	Series() = default;
	Series(Ctx c, int num_vars, int trunc_order, int tail_bound = Padic::kInf);
	static Series constant(Ctx c, int num_vars, int trunc_order, const Padic &v);
	static Series variable(Ctx c, int num_vars, int trunc_order, int j);

	Ctx ctx() const { return ctx_; }
	int num_vars() const { return nvars_; }
	int trunc_order() const { return trunc_; }
	int tail_bound() const { return tail_; }
	void set_tail_bound(int t) { tail_ = t; }
	const std::map<Exps, Padic> &terms() const { return terms_; }

	// adds into an existing coefficient; degree must be below trunc_order
	void add_term(const Exps &e, const Padic &c);
	Padic coeff(const Exps &e) const;
	Padic constant_term() const { return coeff(Exps(nvars_, 0)); }
	// min valuation over stored coefficients (zeros count with their precision)
	int min_coeff_ord() const;
	bool all_integral() const;

	friend Series operator+(const Series &a, const Series &b);
	friend Series operator-(const Series &a, const Series &b);
	friend Series operator*(const Series &a, const Series &b);
	friend Series operator*(const Padic &k, const Series &s);

  private:
	Ctx ctx_;
	int nvars_ = 0;
	int trunc_ = 0;
	int tail_ = Padic::kInf;
	std::map<Exps, Padic> terms_;
};

int degree(const Exps &e);

Padic evaluate(const Series &s, const PVec &point);
Series derivative(const Series &s, int j);

struct SeriesSystem
{
	std::vector<Series> components;
	bool normalized = false;
	// per component: the power of p divided out by rescale_and_normalize
	std::vector<int> scale_exponents;

	int num_vars() const { return components.empty() ? 0 : components[0].num_vars(); }
	Ctx ctx() const { return components.at(0).ctx(); }
	// smallest tail bound among the components
	int tail_bound() const;
};

// checks shapes and sets the normalized flag from the coefficients
SeriesSystem make_system(std::vector<Series> comps);

PVec evaluate(const SeriesSystem &sys, const PVec &point);
std::vector<std::vector<Series>> jacobian(const SeriesSystem &sys);
SeriesSystem rescale_and_normalize(const SeriesSystem &raw);

enum class SymMode
{
	EvenPair,
	AntiDiagonal
};

struct Factored
{
	SymMode kind;
	Series quotient;
};

// EvenPair: s - s(0,0) = (t1^2 - t2^2) q.  AntiDiagonal: s = (t1 - t2) q.
Factored symmetric_factor(const Series &s, SymMode mode);

// restriction to the line t2 = sign * t1, as a series in one variable
Series restrict_to_line(const Series &s, int sign);
// for g with only even-degree terms, the series G with g(t) = G(t^2)
bool is_even(const Series &g);
Series in_square(const Series &g);

} // namespace pqc
