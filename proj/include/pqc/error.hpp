#pragma once

#include <stdexcept>
#include <string>

namespace pqc {

enum class Err
{
	DifferentPrimes,
	DivisionByZero,
	PrecisionExhausted,
	ZeroArgument,
	NotAUnit,
	UncertifiedTail,
	AllCoefficientsZero,
	NotSymmetric,
	HypothesisFails,
	SingularJacobian,
	MaxStepsExceeded,
	TailTooShallow,
	BudgetExceeded,
	NotImaginary,
	NotSplit,
	DividesP,
	InconsistentFactorization,
	SingularSystem,
	MissingPrimeData,
	IncompatibleTruncation,
	InvalidInput,
	ValidationFailed,
};

const char *err_name(Err e);

class Error : public std::runtime_error
{
  public:
	Error(Err code, const std::string &what)
	    : std::runtime_error(std::string(err_name(code)) + ": " + what),
	      code_(code), msg_(what)
	{}
	Err code() const { return code_; }
	// the message without the error name
	const std::string &message() const { return msg_; }

  private:
	Err code_;
	std::string msg_;
};

} // namespace pqc
