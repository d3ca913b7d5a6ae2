#include "pqc/error.hpp"

namespace pqc {

const char *err_name(Err e)
{
	switch (e)
	{
	case Err::DifferentPrimes: return "DifferentPrimes";
	case Err::DivisionByZero: return "DivisionByZero";
	case Err::PrecisionExhausted: return "PrecisionExhausted";
	case Err::ZeroArgument: return "ZeroArgument";
	case Err::NotAUnit: return "NotAUnit";
	case Err::UncertifiedTail: return "UncertifiedTail";
	case Err::AllCoefficientsZero: return "AllCoefficientsZero";
	case Err::NotSymmetric: return "NotSymmetric";
	case Err::HypothesisFails: return "HypothesisFails";
	case Err::SingularJacobian: return "SingularJacobian";
	case Err::MaxStepsExceeded: return "MaxStepsExceeded";
	case Err::TailTooShallow: return "TailTooShallow";
	case Err::BudgetExceeded: return "BudgetExceeded";
	case Err::NotImaginary: return "NotImaginary";
	case Err::NotSplit: return "NotSplit";
	case Err::DividesP: return "DividesP";
	case Err::InconsistentFactorization: return "InconsistentFactorization";
	case Err::SingularSystem: return "SingularSystem";
	case Err::MissingPrimeData: return "MissingPrimeData";
	case Err::IncompatibleTruncation: return "IncompatibleTruncation";
	case Err::InvalidInput: return "InvalidInput";
	case Err::ValidationFailed: return "ValidationFailed";
	}
	return "Unknown";
}

} // namespace pqc
