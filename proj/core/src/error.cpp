#include "circuitforge/error.hpp"

namespace circuitforge {

std::string_view to_string(Errc code) noexcept {
  switch (code) {
    case Errc::UnbalancedTransaction: return "UnbalancedTransaction";
    case Errc::UnknownAccount: return "UnknownAccount";
    case Errc::DuplicateAccount: return "DuplicateAccount";
    case Errc::CurrencyMismatch: return "CurrencyMismatch";
    case Errc::DuplicateLoan: return "DuplicateLoan";
    case Errc::NonPositivePrincipal: return "NonPositivePrincipal";
    case Errc::UnknownLoan: return "UnknownLoan";
    case Errc::LoanClosed: return "LoanClosed";
    case Errc::InsufficientBorrowerFunds: return "InsufficientBorrowerFunds";
    case Errc::Overpayment: return "Overpayment";
    case Errc::PolicyViolation: return "PolicyViolation";
    case Errc::WrongLoanKind: return "WrongLoanKind";
    case Errc::Overwrite: return "Overwrite";
    case Errc::UnknownSector: return "UnknownSector";
    case Errc::InvalidAmount: return "InvalidAmount";
    case Errc::InvalidPolicy: return "InvalidPolicy";
    case Errc::EmptyDataset: return "EmptyDataset";
    case Errc::InvalidRecord: return "InvalidRecord";
    case Errc::AllZero: return "AllZero";
    case Errc::Unsatisfiable: return "Unsatisfiable";
    case Errc::NonPositiveCapital: return "NonPositiveCapital";
    case Errc::NoBracket: return "NoBracket";
    case Errc::NoOverlap: return "NoOverlap";
    case Errc::NonPositiveMaturity: return "NonPositiveMaturity";
    case Errc::DivisionByZeroDate: return "DivisionByZeroDate";
    case Errc::DateMismatch: return "DateMismatch";
    case Errc::CycleDetected: return "CycleDetected";
    case Errc::InvalidConfig: return "InvalidConfig";
    case Errc::MalformedHeader: return "MalformedHeader";
    case Errc::UnparsableRow: return "UnparsableRow";
    case Errc::EmptySeries: return "EmptySeries";
    case Errc::IoFailure: return "IoFailure";
    case Errc::ParseError: return "ParseError";
    case Errc::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

bool is_environmental(Errc code) noexcept { return code == Errc::IoFailure; }

}  // namespace circuitforge
