#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace circuitforge {

enum class Errc {
  // ledger
  UnbalancedTransaction,
  UnknownAccount,
  DuplicateAccount,
  CurrencyMismatch,
  DuplicateLoan,
  NonPositivePrincipal,
  UnknownLoan,
  LoanClosed,
  InsufficientBorrowerFunds,
  Overpayment,
  PolicyViolation,
  WrongLoanKind,
  Overwrite,
  UnknownSector,
  InvalidAmount,
  InvalidPolicy,
  // medici
  EmptyDataset,
  InvalidRecord,
  AllZero,
  Unsatisfiable,
  NonPositiveCapital,
  NoBracket,
  // policy
  NoOverlap,
  NonPositiveMaturity,
  DivisionByZeroDate,
  DateMismatch,
  CycleDetected,
  InvalidConfig,
  // dataio
  MalformedHeader,
  UnparsableRow,
  EmptySeries,
  IoFailure,
  // shared
  ParseError,
  InvalidArgument,
};

std::string_view to_string(Errc code) noexcept;

/// True for failures caused by the environment (files, permissions) rather
/// than by the content of the input.
bool is_environmental(Errc code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace circuitforge
